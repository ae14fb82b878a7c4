use serde::Serialize;

use meandro::models::{meander_curve, MeanderModel, QLogModel};
use meandro::series_engine::{evaluate_sum, TermSequence};
use meandro::stack_geometry::Membership;
use meandro::C64;

#[derive(Debug, Serialize)]
pub struct RaySample {
    pub t: f64,
    pub re: f64,
    pub im: f64,
    /// `null` when the point is flagged.
    pub value: Option<(f64, f64)>,
    pub tail_bound: Option<f64>,
    pub terms: usize,
    pub flag: Option<&'static str>,
}

/// `S` of the q-logarithm (`shift` 0 or 1) along `t e^(i theta)`,
/// `t = 0, t_step, ..., t_max`.
#[allow(clippy::too_many_arguments)]
pub fn ray(
    x: f64,
    shift: u32,
    c: f64,
    alpha: f64,
    lambda: f64,
    theta: f64,
    t_max: f64,
    t_step: f64,
    tol: f64,
) -> Result<Vec<RaySample>, String> {
    if !(t_step > 0.0) || !(t_max >= 0.0) {
        return Err("t_step must be positive and t_max non-negative".into());
    }
    let model = QLogModel::with_shift(C64::new(x, 0.0), shift, c, alpha, lambda)
        .map_err(|e| e.to_string())?;
    let count = (t_max / t_step + 1e-9).floor() as usize;
    Ok((0..=count)
        .map(|i| {
            let t = i as f64 * t_step;
            let z = C64::from_polar(t, theta);
            match evaluate_sum(&model, z, tol) {
                Ok(r) => RaySample {
                    t,
                    re: z.re,
                    im: z.im,
                    value: Some((r.value.re, r.value.im)),
                    tail_bound: Some(r.tail_bound),
                    terms: r.terms_used,
                    flag: None,
                },
                Err(e) => RaySample {
                    t,
                    re: z.re,
                    im: z.im,
                    value: None,
                    tail_bound: None,
                    terms: 0,
                    flag: Some(e.kind()),
                },
            }
        })
        .collect())
}

#[derive(Debug, Serialize)]
pub struct CurveSample {
    pub x: f64,
    pub roots: Vec<f64>,
}

/// Real roots of the order-`n` meander truncation for `steps` values of `x`
/// in `[x_min, x_max]`.
pub fn curve(n: usize, x_min: f64, x_max: f64, steps: usize) -> Result<Vec<CurveSample>, String> {
    if n == 0 || n > 60 {
        return Err(format!("order {n} outside 1..=60"));
    }
    let steps = steps.clamp(2, 2000);
    let xs: Vec<f64> = (0..steps)
        .map(|i| x_min + (x_max - x_min) * i as f64 / (steps - 1) as f64)
        .collect();
    Ok(meander_curve(n, &xs)
        .into_iter()
        .map(|p| CurveSample {
            x: p.x,
            roots: p.roots,
        })
        .collect())
}

/// Residual-set membership of a `width x height` pixel grid over
/// `[re_min, re_max] x [im_min, im_max]`, row-major from the top row:
/// 0 inside, 1 removed, 2 undecided past `cutoff` sheets.
#[allow(clippy::too_many_arguments)]
pub fn residual_image(
    meander: bool,
    c: f64,
    alpha: f64,
    lambda: f64,
    width: usize,
    height: usize,
    re: (f64, f64),
    im: (f64, f64),
    cutoff: usize,
) -> Result<Vec<u8>, String> {
    if width == 0 || height == 0 || width * height > 1 << 20 {
        return Err("image must have between 1 and 2^20 pixels".into());
    }
    let x = C64::new(0.5, 0.0);
    let perf = if meander {
        MeanderModel::new(x, c, alpha, lambda)
            .map_err(|e| e.to_string())?
            .perforation()
            .clone()
    } else {
        QLogModel::new(x, c, alpha, lambda)
            .map_err(|e| e.to_string())?
            .perforation()
            .clone()
    };
    let mut out = Vec::with_capacity(width * height);
    for j in 0..height {
        let y = im.1 - (im.1 - im.0) * (j as f64 + 0.5) / height as f64;
        for i in 0..width {
            let xr = re.0 + (re.1 - re.0) * (i as f64 + 0.5) / width as f64;
            out.push(
                match perf.residual_membership(C64::new(xr, y), cutoff, 1.0) {
                    Membership::In => 0,
                    Membership::Out { .. } => 1,
                    Membership::Unknown { .. } => 2,
                },
            );
        }
    }
    Ok(out)
}
