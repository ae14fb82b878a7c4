use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Coefficients of the Eulerian polynomial `E_j`, ascending, from
/// `A(n, k) = (k + 1) A(n-1, k) + (n - k) A(n-1, k-1)`.
///
/// They satisfy `sum_{n>=1} n^j x^n = x E_j(x) / (1 - x)^(j+1)`.
pub fn eulerian_polynomial(j: usize) -> Result<Vec<BigUint>> {
    if j == 0 {
        return Err(Error::InvalidParameter(
            "Eulerian index must be positive".into(),
        ));
    }
    let mut row = vec![BigUint::from(1u32)];
    for n in 2..=j {
        let mut next = vec![BigUint::zero(); n];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += &row[k] * BigUint::from(k + 1);
            }
            if k >= 1 {
                *slot += &row[k - 1] * BigUint::from(n - k);
            }
        }
        row = next;
    }
    Ok(row)
}

/// `x E_j(x) / (1 - x)^(j+1)`, i.e. `sum_{n>=1} n^j x^n`, for `|x| < 1`.
pub fn eulerian_generating(j: usize, x: f64) -> Result<f64> {
    let coeffs = eulerian_polynomial(j)?;
    let e = coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, a| acc * x + a.to_f64().unwrap_or(f64::INFINITY));
    Ok(x * e / (1.0 - x).powi(j as i32 + 1))
}

/// Taylor coefficient `a_j = (-1)^j sum_{n>=1} n^j x^n` of the meander sum at 0.
pub fn meander_jet_closed_form(j: usize, x: f64) -> f64 {
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    if j == 0 {
        return x / (1.0 - x);
    }
    sign * eulerian_generating(j, x).unwrap()
}
