use nalgebra::DMatrix;
use serde::Serialize;

use crate::C64;

/// Real roots `z` of `z = sum_{k=1}^n x^k / (1 + k z)` for one value of `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub roots: Vec<f64>,
}

fn poly_mul_linear(p: &[f64], a: f64) -> Vec<f64> {
    // p(z) * (1 + a z)
    let mut out = vec![0.0; p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i] += c;
        out[i + 1] += a * c;
    }
    out
}

/// Ascending coefficients of
/// `z prod_k (1 + k z) - sum_k x^k prod_{j != k} (1 + j z)`, degree `n + 1`.
pub fn meander_polynomial(n: usize, x: f64) -> Vec<f64> {
    let mut lhs = vec![0.0, 1.0];
    for k in 1..=n {
        lhs = poly_mul_linear(&lhs, k as f64);
    }
    for k in 1..=n {
        let mut p = vec![1.0];
        for j in (1..=n).filter(|&j| j != k) {
            p = poly_mul_linear(&p, j as f64);
        }
        let xk = x.powi(k as i32);
        for (i, c) in p.iter().enumerate() {
            lhs[i] -= xk * c;
        }
    }
    lhs
}

fn horner(p: &[f64], z: C64) -> (C64, C64) {
    let mut v = C64::new(0.0, 0.0);
    let mut d = C64::new(0.0, 0.0);
    for c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Parlett-Reinsch balancing with radix 2.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in (0..n).filter(|&j| j != i) {
                c += m[(j, i)].abs();
                r += m[(i, j)].abs();
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let (mut c2, r2) = (c, r);
            while c2 < r2 / 2.0 {
                c2 *= 4.0;
                f *= 2.0;
            }
            let mut r3 = r2;
            while c2 >= r3 * 2.0 {
                c2 /= 4.0;
                r3 *= 4.0;
                f /= 2.0;
            }
            let c_scaled = c * f;
            let r_scaled = r / f;
            if (c_scaled + r_scaled) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// All complex roots of a real polynomial (ascending coefficients) from the
/// eigenvalues of its balanced companion matrix, polished by Newton steps.
pub fn polynomial_roots(p: &[f64]) -> Vec<C64> {
    let mut p = p.to_vec();
    while p.len() > 1 && *p.last().unwrap() == 0.0 {
        p.pop();
    }
    let deg = p.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = p[deg];
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -p[i] / lead;
    }
    balance(&mut m);
    m.complex_eigenvalues()
        .iter()
        .map(|&z| {
            let mut z = z;
            for _ in 0..8 {
                let (v, d) = horner(&p, z);
                if d.norm() == 0.0 {
                    break;
                }
                let step = v / d;
                z -= step;
                if step.norm() <= 1e-16 * (1.0 + z.norm()) {
                    break;
                }
            }
            z
        })
        .collect()
}

/// Real roots, sorted, of the cleared meander truncation for every `x`.
pub fn meander_curve(n: usize, x_values: &[f64]) -> Vec<CurvePoint> {
    x_values
        .iter()
        .map(|&x| {
            let mut roots: Vec<f64> = polynomial_roots(&meander_polynomial(n.max(1), x))
                .into_iter()
                .filter(|z| z.im.abs() < 1e-9)
                .map(|z| z.re)
                .collect();
            roots.sort_by(f64::total_cmp);
            CurvePoint { x, roots }
        })
        .collect()
}

/// `z - sum_{k=1}^n x^k / (1 + k z)`.
pub fn meander_residual(n: usize, x: f64, z: f64) -> f64 {
    z - (1..=n)
        .map(|k| x.powi(k as i32) / (1.0 + k as f64 * z))
        .sum::<f64>()
}
