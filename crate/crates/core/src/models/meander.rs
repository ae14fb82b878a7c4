use super::validate_x;
use crate::numeric::{factorial, Envelope, MeanderCert};
use crate::series_engine::{SimplePole, TermSequence};
use crate::stack_geometry::Perforation;
use crate::{Result, C64};

/// Poincaré meander `f_n(z) = x^n / (1 + n z)`, `n >= 1`, on the perforation
/// removing `D(-1/n, c/n^alpha)`.
///
/// On the perforated sheet `|1 + n z| >= n r_n`, so
/// `|f_n| <= |x|^n n^(alpha-1) / c` exactly.
#[derive(Debug, Clone)]
pub struct MeanderModel {
    pub x: C64,
    perforation: Perforation,
}

impl MeanderModel {
    pub fn new(x: C64, c: f64, alpha: f64, lambda: f64) -> Result<Self> {
        validate_x(x)?;
        Ok(MeanderModel {
            x,
            perforation: Perforation::meander(c, alpha, lambda)?,
        })
    }

    /// `A` with `norm_bound(n) <= A rho^n` for the given `rho` in `(|x|, 1)`.
    pub fn meander_cert_at(&self, rho: f64) -> Option<MeanderCert> {
        self.envelope()?.meander_cert(rho)
    }
}

impl TermSequence for MeanderModel {
    fn perforation(&self) -> &Perforation {
        &self.perforation
    }

    fn term(&self, n: usize, z: C64) -> C64 {
        self.x.powi(n as i32) / (1.0 + n as f64 * z)
    }

    fn derivative(&self, n: usize, k: usize, z: C64) -> C64 {
        let nf = n as f64;
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        self.x.powi(n as i32) * sign * nf.powi(k as i32) * factorial(k)
            / (1.0 + nf * z).powi(k as i32 + 1)
    }

    fn norm_bound(&self, n: usize) -> f64 {
        let (c, alpha) = self.perforation.radius.diophantine_params().unwrap();
        self.x.norm().powi(n as i32) * (n as f64).powf(alpha - 1.0) / c
    }

    fn envelope(&self) -> Option<Envelope> {
        let (c, alpha) = self.perforation.radius.diophantine_params()?;
        Some(Envelope::new(1.0 / c, alpha - 1.0, self.x.norm()))
    }

    fn simple_poles(&self, n: usize) -> Option<Vec<SimplePole>> {
        let nf = n as f64;
        Some(vec![SimplePole {
            residue: self.x.powi(n as i32) / nf,
            pole: C64::new(-1.0 / nf, 0.0),
        }])
    }
}
