use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numeric::factorial;
use crate::{Error, Result, C64};

/// `pi_k(z) = prod_{j=1}^{k+1} (1 - j z)`.
pub fn pi_k(k: usize, z: C64) -> C64 {
    (1..=k + 1).map(|j| 1.0 - j as f64 * z).product()
}

pub fn pi_k_rational(k: usize, z: &BigRational) -> BigRational {
    (1..=k + 1).fold(BigRational::one(), |acc, j| {
        acc * (BigRational::one() - BigRational::from_integer(BigInt::from(j)) * z)
    })
}

/// Integer coefficients of `prod_{j=lo}^{hi} (1 - j z)`, ascending powers.
fn linear_product(lo: usize, hi: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for j in lo..=hi {
        let mut next = vec![BigInt::zero(); p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            next[i] += a;
            next[i + 1] -= a * BigInt::from(j);
        }
        p = next;
    }
    p
}

/// Integer coefficients of `pi_k`, ascending powers.
pub fn pi_k_polynomial(k: usize) -> Vec<BigInt> {
    linear_product(1, k + 1)
}

fn factorial_big(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn signed(k: usize, v: BigInt) -> BigInt {
    if k.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// `(-1)^k k! z^k / pi_k(z)` in exact arithmetic.
pub fn pik_term_rational(k: usize, z: &BigRational) -> BigRational {
    let num =
        BigRational::from_integer(signed(k, factorial_big(k))) * num_traits::pow(z.clone(), k);
    num / pi_k_rational(k, z)
}

/// `1 - sum_{k<=n} (-1)^k k! z^k / pi_k(z)`, summed term by term.
pub fn pik_remainder_rational(n: usize, z: &BigRational) -> BigRational {
    (0..=n).fold(BigRational::one(), |acc, k| acc - pik_term_rational(k, z))
}

/// Closed form `(-1)^(n+1) (n+1)! z^(n+1) / pi_n(z)` of the partial-sum
/// remainder. Note the denominator `pi_n = prod_{j=1}^{n+1} (1 - j z)`.
pub fn pik_remainder_closed_rational(n: usize, z: &BigRational) -> BigRational {
    let num = BigRational::from_integer(signed(n + 1, factorial_big(n + 1)))
        * num_traits::pow(z.clone(), n + 1);
    num / pi_k_rational(n, z)
}

/// Checks the remainder identity as a polynomial identity over the integers:
/// `pi_n - sum_{k<=n} (-1)^k k! z^k prod_{j=k+2}^{n+1} (1 - j z)
///  = (-1)^(n+1) (n+1)! z^(n+1)`.
pub fn pik_polynomial_identity(n: usize) -> bool {
    let mut lhs = pi_k_polynomial(n);
    lhs.resize(n + 2, BigInt::zero());
    for k in 0..=n {
        let coeff = signed(k, factorial_big(k));
        for (i, a) in linear_product(k + 2, n + 1).into_iter().enumerate() {
            lhs[i + k] -= &coeff * a;
        }
    }
    let mut rhs = vec![BigInt::zero(); n + 2];
    rhs[n + 1] = signed(n + 1, factorial_big(n + 1));
    lhs == rhs
}

/// Coefficients `a_0..a_n` making `c + sum_k a_k z^k / (1 - z/eps_k)` vanish
/// to order `n` at the origin: `a_0 = -c`, `a_m = -sum_{k<m} a_k eps_k^(k-m)`.
pub fn zero_sum_coefficients(c: C64, poles: &[C64], n: usize) -> Result<Vec<C64>> {
    check_poles(poles.iter().map(|e| e.norm() == 0.0), n)?;
    let mut a = Vec::with_capacity(n + 1);
    a.push(-c);
    for m in 1..=n {
        let b: C64 = (0..m)
            .map(|k| a[k] * poles[k].powi(k as i32 - m as i32))
            .sum();
        a.push(-b);
    }
    Ok(a)
}

pub fn zero_sum_coefficients_rational(
    c: &BigRational,
    poles: &[BigRational],
    n: usize,
) -> Result<Vec<BigRational>> {
    check_poles(poles.iter().map(|e| e.is_zero()), n)?;
    let mut a: Vec<BigRational> = vec![-c.clone()];
    for m in 1..=n {
        let b = (0..m).fold(BigRational::zero(), |acc, k| {
            acc + &a[k] * num_traits::pow(poles[k].recip(), m - k)
        });
        a.push(-b);
    }
    Ok(a)
}

fn check_poles(zero: impl Iterator<Item = bool>, n: usize) -> Result<()> {
    let mut count = 0;
    for (index, z) in zero.enumerate().take(n + 1) {
        if z {
            return Err(Error::ZeroPole { index });
        }
        count += 1;
    }
    if count < n + 1 {
        return Err(Error::InsufficientData {
            needed: n + 1,
            got: count,
        });
    }
    Ok(())
}

/// Exact Taylor coefficients at 0, through `order`, of
/// `c + sum_{k<=n} a_k z^k / (1 - z/eps_k)`.
pub fn zero_sum_jet_rational(
    c: &BigRational,
    coefficients: &[BigRational],
    poles: &[BigRational],
    order: usize,
) -> Vec<BigRational> {
    (0..=order)
        .map(|m| {
            let mut b = if m == 0 {
                c.clone()
            } else {
                BigRational::zero()
            };
            for k in 0..coefficients.len().min(m + 1) {
                b += &coefficients[k] * num_traits::pow(poles[k].recip(), m - k);
            }
            b
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroSumVariant {
    /// Terms `(-1)^k k! z^k / pi_k(z)`, summing formally to 1.
    PiK,
    /// `c` followed by `a_k z^k / (1 - z/eps_k)`, summing formally to 0.
    General {
        c: C64,
        poles: Vec<C64>,
        coefficients: Vec<C64>,
    },
}

/// Rational expansions whose formal Taylor series at the origin is a constant,
/// although every partial sum has poles accumulating there.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSumModel {
    pub variant: ZeroSumVariant,
}

impl ZeroSumModel {
    pub fn pi_k() -> Self {
        ZeroSumModel {
            variant: ZeroSumVariant::PiK,
        }
    }

    /// Builds `a_0..a_{len-1}` for the given poles.
    pub fn general(c: C64, poles: Vec<C64>) -> Result<Self> {
        if poles.is_empty() {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        let coefficients = zero_sum_coefficients(c, &poles, poles.len() - 1)?;
        Ok(ZeroSumModel {
            variant: ZeroSumVariant::General {
                c,
                poles,
                coefficients,
            },
        })
    }

    /// Number of available terms; `None` when unbounded.
    pub fn len(&self) -> Option<usize> {
        match &self.variant {
            ZeroSumVariant::PiK => None,
            ZeroSumVariant::General { coefficients, .. } => Some(coefficients.len()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn term(&self, k: usize, z: C64) -> C64 {
        match &self.variant {
            ZeroSumVariant::PiK => {
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * factorial(k) * z.powi(k as i32) / pi_k(k, z)
            }
            ZeroSumVariant::General {
                poles,
                coefficients,
                ..
            } => coefficients[k] * z.powi(k as i32) / (1.0 - z / poles[k]),
        }
    }

    /// Partial sum through term `n`, including the constant `c` for the
    /// general variant.
    pub fn partial_sum(&self, n: usize, z: C64) -> C64 {
        let base = match &self.variant {
            ZeroSumVariant::PiK => C64::new(0.0, 0.0),
            ZeroSumVariant::General { c, .. } => *c,
        };
        (0..=n).fold(base, |acc, k| acc + self.term(k, z))
    }

    /// Taylor coefficients at 0, through `order`, of the partial sum through
    /// term `n`, from the geometric expansions of the denominators.
    pub fn partial_jet(&self, n: usize, order: usize) -> Vec<C64> {
        let mut jet = vec![C64::new(0.0, 0.0); order + 1];
        match &self.variant {
            ZeroSumVariant::PiK => {
                for k in 0..=n.min(order) {
                    // 1/pi_k = sum_m h_m(1, ..., k+1) z^m
                    let mut h = vec![0.0; order + 1 - k];
                    h[0] = 1.0;
                    for j in 1..=k + 1 {
                        for m in 1..h.len() {
                            h[m] += j as f64 * h[m - 1];
                        }
                    }
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    let scale = sign * factorial(k);
                    for (m, hm) in h.iter().enumerate() {
                        jet[k + m] += scale * hm;
                    }
                }
            }
            ZeroSumVariant::General {
                c,
                poles,
                coefficients,
            } => {
                jet[0] += c;
                for k in 0..=n.min(order).min(coefficients.len() - 1) {
                    for (m, slot) in jet.iter_mut().enumerate().skip(k) {
                        *slot += coefficients[k] * poles[k].powi(k as i32 - m as i32);
                    }
                }
            }
        }
        jet
    }

    /// Taylor jet of the formal limit: `(1, 0, ..., 0)` for `PiK`, all zeros
    /// for the general construction.
    pub fn limit_jet(&self, order: usize) -> Vec<C64> {
        let mut jet = vec![C64::new(0.0, 0.0); order + 1];
        if self.variant == ZeroSumVariant::PiK {
            jet[0] = C64::new(1.0, 0.0);
        }
        jet
    }
}

/// `true` when every entry is exactly zero.
pub fn all_zero(values: &[BigRational]) -> bool {
    values.iter().all(|v| v.is_zero())
}

/// Largest absolute value among rationals, as `f64`.
pub fn max_abs(values: &[BigRational]) -> f64 {
    use num_traits::ToPrimitive;
    values
        .iter()
        .map(|v| v.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}
