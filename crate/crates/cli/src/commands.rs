use rayon::prelude::*;

use meandro::gevrey_asymptotics::{divergence_diagnostic, gevrey_fit, smallest_term_order};
use meandro::models::meander_curve;
use meandro::polar_decomposition::{fiber_polar_sum, polar_part, AnnulusSpec};
use meandro::ramified_covering::inclusion_check;
use meandro::series_engine::{
    evaluate_sum, taylor_jet, taylor_truncation, SumResult, TermSequence,
};
use meandro::stack_geometry::Membership;
use meandro::{Error, C64};

use crate::config::{build_model, build_perforation, load_perforation};
use crate::table::Cell;
use crate::{Cli, CliError, Command, Report, Table};

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Eval {
            z,
            ray,
            angle,
            t_max,
            t_step,
        } => {
            let mut points = z.clone();
            if *ray {
                if !(*t_step > 0.0) {
                    return Err(CliError::Config("--t-step must be positive".into()));
                }
                let count = (t_max / t_step + 1e-9).floor() as usize;
                points.extend((0..=count).map(|i| C64::from_polar(i as f64 * t_step, *angle)));
            }
            if points.is_empty() {
                return Err(CliError::Config("eval needs --z or --ray".into()));
            }
            let model = model(cli)?;
            Ok(eval(model.seq(), &points, cli.tol))
        }
        Command::Jet { z0, order } => {
            let model = model(cli)?;
            let jet = taylor_jet(model.seq(), *z0, *order, cli.tol)?;
            let mut t = Table::new(&["k", "a_re", "a_im", "tail_bound"]);
            for (k, (a, tail)) in jet
                .coefficients
                .iter()
                .zip(&jet.coefficient_tails)
                .enumerate()
            {
                t.push(vec![k.into(), a.re.into(), a.im.into(), (*tail).into()]);
            }
            Ok(Report {
                table: t,
                flagged: 0,
            })
        }
        Command::Polar { omega, z, sheet } => {
            let model = model(cli)?;
            let seq = model.seq();
            match sheet {
                Some(n) => polar_coefficients(seq, *omega, *n),
                None => {
                    if z.is_empty() {
                        return Err(CliError::Config("polar needs --z or --sheet".into()));
                    }
                    let rows: Vec<_> = z
                        .par_iter()
                        .map(|&p| (p, fiber_polar_sum(seq, *omega, p, cli.tol)))
                        .collect();
                    Ok(sum_table(&["z_re", "z_im", "P_re", "P_im"], rows))
                }
            }
        }
        Command::Gevrey {
            z0,
            order,
            window,
            z,
        } => {
            let model = model(cli)?;
            gevrey(model.seq(), *z0, *order, *window, z, cli.tol)
        }
        Command::Curve { n, x_range, steps } => {
            let (lo, hi) = *x_range;
            let steps = (*steps).max(2);
            let xs: Vec<f64> = (0..steps)
                .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
                .collect();
            let chunks: Vec<_> = xs.par_chunks(16).map(|c| meander_curve(*n, c)).collect();
            let mut t = Table::new(&["x", "branch", "root"]);
            for pt in chunks.into_iter().flatten() {
                for (b, r) in pt.roots.iter().enumerate() {
                    t.push(vec![pt.x.into(), b.into(), (*r).into()]);
                }
            }
            Ok(Report {
                table: t,
                flagged: 0,
            })
        }
        Command::Residual {
            re_range,
            im_range,
            nx,
            ny,
            margin,
        } => {
            let cfg = load_perforation(cli.config.as_deref(), cli.model)?;
            let perf = build_perforation(&cfg)?;
            let (nx, ny) = ((*nx).max(1), (*ny).max(1));
            let axis = |(lo, hi): (f64, f64), n: usize, i: usize| {
                if n == 1 {
                    lo
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            };
            let grid: Vec<C64> = (0..ny)
                .flat_map(|j| {
                    (0..nx).map(move |i| C64::new(axis(*re_range, nx, i), axis(*im_range, ny, j)))
                })
                .collect();
            let rows: Vec<_> = grid
                .par_iter()
                .map(|&z| (z, perf.residual_membership(z, cli.cutoff, *margin)))
                .collect();
            let mut t = Table::new(&["z_re", "z_im", "status", "sheet"]);
            for (z, m) in rows {
                let (status, sheet) = match m {
                    Membership::In => ("in", 0),
                    Membership::Out { sheet, .. } => ("out", sheet),
                    Membership::Unknown { verified_to } => ("unknown", verified_to),
                };
                t.push(vec![z.re.into(), z.im.into(), status.into(), sheet.into()]);
            }
            Ok(Report {
                table: t,
                flagged: 0,
            })
        }
        Command::Covering {
            alpha,
            r,
            modulus,
            arg,
            angles,
        } => {
            let cells: Vec<(f64, C64)> = r
                .iter()
                .flat_map(|&r| modulus.iter().map(move |&m| (r, C64::from_polar(m, *arg))))
                .collect();
            let rows: Vec<_> = cells
                .par_iter()
                .map(|&(r, w)| (r, w, inclusion_check(w, r, *alpha, *angles)))
                .collect();
            let mut t = Table::new(&[
                "alpha",
                "r",
                "omega_re",
                "omega_im",
                "s",
                "rho",
                "inner_margin",
                "outer_margin",
                "status",
            ]);
            let mut flagged = 0;
            for (r, w, res) in rows {
                let mut row = vec![(*alpha as usize).into(), r.into(), w.re.into(), w.im.into()];
                match res {
                    Ok(rep) => {
                        flagged += usize::from(!rep.passed);
                        row.extend([
                            rep.s.into(),
                            rep.rho.into(),
                            rep.inner_margin.into(),
                            rep.outer_margin.into(),
                            if rep.passed { "pass" } else { "fail" }.into(),
                        ]);
                    }
                    Err(Error::HypothesisViolated(_)) => {
                        flagged += 1;
                        row.extend([
                            f64::NAN.into(),
                            f64::NAN.into(),
                            f64::NAN.into(),
                            f64::NAN.into(),
                        ]);
                        row.push("hypothesis_violated".into());
                    }
                    Err(e) => return Err(e.into()),
                }
                t.push(row);
            }
            Ok(Report { table: t, flagged })
        }
    }
}

fn model(cli: &Cli) -> Result<crate::Model, CliError> {
    let cfg = load_perforation(cli.config.as_deref(), cli.model)?;
    build_model(cli.model, cli.x, &cfg)
}

fn eval(seq: &dyn TermSequence, points: &[C64], tol: f64) -> Report {
    let rows: Vec<_> = points
        .par_iter()
        .map(|&z| (z, evaluate_sum(seq, z, tol)))
        .collect();
    sum_table(&["z_re", "z_im", "S_re", "S_im"], rows)
}

/// Rows of `<head>,tail_bound,terms_used,status`; errors are flagged rows with
/// `NaN` values and the error kind as status.
fn sum_table(head: &[&str; 4], rows: Vec<(C64, meandro::Result<SumResult>)>) -> Report {
    let mut cols = head.to_vec();
    cols.extend(["tail_bound", "terms_used", "status"]);
    let mut t = Table::new(&cols);
    let mut flagged = 0;
    for (z, res) in rows {
        let row: Vec<Cell> = match res {
            Ok(r) => vec![
                z.re.into(),
                z.im.into(),
                r.value.re.into(),
                r.value.im.into(),
                r.tail_bound.into(),
                r.terms_used.into(),
                if r.certified { "ok" } else { "uncertified" }.into(),
            ],
            Err(e) => {
                flagged += 1;
                vec![
                    z.re.into(),
                    z.im.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    0usize.into(),
                    e.kind().into(),
                ]
            }
        };
        t.push(row);
    }
    Report { table: t, flagged }
}

fn polar_coefficients(seq: &dyn TermSequence, omega: C64, n: usize) -> Result<Report, CliError> {
    let perf = seq.perforation();
    let r = perf.radius.value(n).ok_or(Error::DiophantineRequired)?;
    let ann = AnnulusSpec::new(omega, r, perf.radius.lambda)?;
    let polar = polar_part(|z| seq.term(n, z), &ann)?;
    let mut t = Table::new(&["j", "c_re", "c_im"]);
    for (j, c) in polar.coefficients.iter().enumerate() {
        t.push(vec![(-(j as i32) - 1).into(), c.re.into(), c.im.into()]);
    }
    Ok(Report {
        table: t,
        flagged: 0,
    })
}

fn gevrey(
    seq: &dyn TermSequence,
    z0: C64,
    order: usize,
    window: Option<(f64, f64)>,
    z: &[C64],
    tol: f64,
) -> Result<Report, CliError> {
    let jet = taylor_jet(seq, z0, order, tol)?;
    let window = window
        .map(|(a, b)| (a.max(0.0) as usize, b.max(0.0) as usize))
        .unwrap_or((order.min(5), order));
    let fit = gevrey_fit(&jet.coefficients, window)?;
    let div = divergence_diagnostic(&jet.coefficients)?;
    let summary: Vec<Cell> = vec![
        fit.c.into(),
        fit.alpha.into(),
        fit.prefactor.into(),
        fit.r2.into(),
        div.radius_estimate.into(),
        match div.verdict {
            meandro::gevrey_asymptotics::Verdict::ConvergentLike => "convergent_like",
            meandro::gevrey_asymptotics::Verdict::DivergentLike => "divergent_like",
        }
        .into(),
    ];
    let mut cols = vec![
        "c",
        "alpha",
        "prefactor",
        "r2",
        "radius_estimate",
        "verdict",
    ];
    if z.is_empty() {
        let mut t = Table::new(&cols);
        t.push(summary);
        return Ok(Report {
            table: t,
            flagged: 0,
        });
    }
    cols.extend(["z_re", "z_im", "order", "T_re", "T_im", "ln_remainder"]);
    let mut t = Table::new(&cols);
    let rows: Vec<_> = z
        .par_iter()
        .map(|&p| -> Result<Vec<Cell>, CliError> {
            let m = smallest_term_order(fit.c, fit.alpha, (p - z0).norm())?;
            let tr = taylor_truncation(seq, z0, p, m, 1e-6)?;
            let mut row = summary.clone();
            row.extend([
                p.re.into(),
                p.im.into(),
                m.into(),
                tr.polynomial.re.into(),
                tr.polynomial.im.into(),
                tr.remainder.ln_abs().into(),
            ]);
            Ok(row)
        })
        .collect();
    for row in rows {
        t.push(row?);
    }
    Ok(Report {
        table: t,
        flagged: 0,
    })
}
