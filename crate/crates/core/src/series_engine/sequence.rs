use crate::numeric::{factorial, Envelope, MeanderCert};
use crate::stack_geometry::Perforation;
use crate::C64;

/// One simple pole `residue / (z - pole)` of a per-sheet partial-fraction form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplePole {
    pub residue: C64,
    pub pole: C64,
}

/// A sequence of rational terms `f_n`, one per sheet of the stacked space,
/// together with the perforation it is summed on and bounds on its norms.
///
/// `norm_bound(n)` must dominate `sup |f_n|` over the perforated sheet
/// `V(r)_n`; summation tails and Cauchy-estimate tails are derived from it
/// through [`TermSequence::envelope`] or [`TermSequence::meander_cert`].
pub trait TermSequence: Sync {
    fn perforation(&self) -> &Perforation;

    fn first_sheet(&self) -> usize {
        1
    }

    fn term(&self, n: usize, z: C64) -> C64;

    /// Closed-form `k`-th derivative of `f_n` at `z`.
    fn derivative(&self, n: usize, k: usize, z: C64) -> C64;

    fn poles(&self, n: usize) -> Vec<C64> {
        self.perforation().poles.poles(n)
    }

    /// Certified upper bound for `sup |f_n|` on the perforated sheet.
    fn norm_bound(&self, n: usize) -> f64;

    /// `norm_bound(n) <= K n^p q^n` for every sheet, when known.
    fn envelope(&self) -> Option<Envelope>;

    /// `norm_bound(n) <= A rho^n`. Derived from the envelope with
    /// `rho = sqrt(q)` unless a model supplies its own.
    fn meander_cert(&self) -> Option<MeanderCert> {
        let env = self.envelope()?;
        env.meander_cert(env.ratio.sqrt())
    }

    /// Partial-fraction form `f_n(z) = sum residue / (z - pole)`, when every
    /// pole of the sheet is simple and there is no polynomial part.
    fn simple_poles(&self, _n: usize) -> Option<Vec<SimplePole>> {
        None
    }

    /// Residue of `f_n` at `pole`, when `pole` is one of its simple poles.
    fn residue_at(&self, n: usize, pole: C64) -> Option<C64> {
        let tol = 1e-12 * (1.0 + pole.norm());
        self.simple_poles(n)?
            .into_iter()
            .find(|sp| (sp.pole - pole).norm() <= tol)
            .map(|sp| sp.residue)
    }
}

/// `d^k/dz^k sum residue / (z - pole) = sum residue (-1)^k k! / (z - pole)^(k+1)`.
pub fn simple_pole_derivative(poles: &[SimplePole], k: usize, z: C64) -> C64 {
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let kf = factorial(k);
    poles
        .iter()
        .map(|sp| sp.residue * sign * kf / (z - sp.pole).powi(k as i32 + 1))
        .sum()
}

impl<T: TermSequence + ?Sized> TermSequence for &T {
    fn perforation(&self) -> &Perforation {
        (**self).perforation()
    }
    fn first_sheet(&self) -> usize {
        (**self).first_sheet()
    }
    fn term(&self, n: usize, z: C64) -> C64 {
        (**self).term(n, z)
    }
    fn derivative(&self, n: usize, k: usize, z: C64) -> C64 {
        (**self).derivative(n, k, z)
    }
    fn poles(&self, n: usize) -> Vec<C64> {
        (**self).poles(n)
    }
    fn norm_bound(&self, n: usize) -> f64 {
        (**self).norm_bound(n)
    }
    fn envelope(&self) -> Option<Envelope> {
        (**self).envelope()
    }
    fn meander_cert(&self) -> Option<MeanderCert> {
        (**self).meander_cert()
    }
    fn simple_poles(&self, n: usize) -> Option<Vec<SimplePole>> {
        (**self).simple_poles(n)
    }
    fn residue_at(&self, n: usize, pole: C64) -> Option<C64> {
        (**self).residue_at(n, pole)
    }
}
