//! Parameter space `(n, q)`, the stability gap and the Bernstein admissibility
//! logic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas;

/// A dimension `n >= 2` together with a stability exponent `q >= 0`.
///
/// `q = 0` is admitted as the continuous extension of the open range
/// `(0, sqrt(2/n))`. Operations that evaluate a closure constant additionally
/// require `q < sqrt(2/n)`, i.e. a positive [`stability_gap`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub n: u32,
    pub q: f64,
}

impl ParamPoint {
    pub fn new(n: u32, q: f64) -> Result<Self> {
        check_dimension(n)?;
        if !q.is_finite() || q < 0.0 {
            return Err(Error::domain(format!("q must be finite and >= 0, got {q}")));
        }
        Ok(ParamPoint { n, q })
    }

    /// Like [`ParamPoint::new`] but also requires a positive stability gap.
    pub fn admissible(n: u32, q: f64) -> Result<Self> {
        let p = Self::new(n, q)?;
        p.require_gap()?;
        Ok(p)
    }

    /// Returns the stability gap, or a domain error when it is not positive.
    pub fn require_gap(&self) -> Result<f64> {
        let a = stability_gap(*self);
        if a > 0.0 {
            Ok(a)
        } else {
            Err(Error::domain(format!(
                "q = {} >= sqrt(2/{}) = {} (stability gap {:e} <= 0)",
                self.q,
                self.n,
                q_upper(self.n),
                a
            )))
        }
    }
}

pub(crate) fn check_dimension(n: u32) -> Result<()> {
    if n < 2 {
        Err(Error::domain(format!("dimension must be >= 2, got {n}")))
    } else {
        Ok(())
    }
}

/// `sqrt(2/n)`, the supremum of admissible stability exponents.
pub fn q_upper(n: u32) -> f64 {
    (2.0 / n as f64).sqrt()
}

/// An interval of stability exponents with explicit openness flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QInterval {
    pub lower: f64,
    pub upper: f64,
    pub lower_open: bool,
    pub upper_open: bool,
    pub empty: bool,
}

impl QInterval {
    pub fn open(lower: f64, upper: f64) -> Self {
        if lower < upper {
            QInterval { lower, upper, lower_open: true, upper_open: true, empty: false }
        } else {
            Self::empty()
        }
    }

    pub fn closed(lower: f64, upper: f64) -> Self {
        if lower <= upper {
            QInterval { lower, upper, lower_open: false, upper_open: false, empty: false }
        } else {
            Self::empty()
        }
    }

    pub fn empty() -> Self {
        QInterval {
            lower: f64::NAN,
            upper: f64::NAN,
            lower_open: true,
            upper_open: true,
            empty: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn contains(&self, q: f64) -> bool {
        if self.empty {
            return false;
        }
        let above = if self.lower_open { q > self.lower } else { q >= self.lower };
        let below = if self.upper_open { q < self.upper } else { q <= self.upper };
        above && below
    }

    pub fn width(&self) -> f64 {
        if self.empty {
            0.0
        } else {
            self.upper - self.lower
        }
    }
}

impl std::fmt::Display for QInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.empty {
            return write!(f, "empty");
        }
        let l = if self.lower_open { '(' } else { '[' };
        let r = if self.upper_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lower, self.upper)
    }
}

/// Scalar coefficients of the CMC Simons-type inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructuralCoefficients {
    /// Coefficient of the cubic term, `n(n-2)/sqrt(n(n-1))`.
    pub alpha: f64,
    /// Cubic-trace bound `(n-2)/sqrt(n(n-1))`.
    pub okumura: f64,
    /// Refined Kato factor `1 + 2/n`.
    pub kato: f64,
}

/// `A(n,q) = 2/n - q^2`.
///
/// Both `2/n` and `q^2` are carried with their rounding errors so that the
/// result is accurate to a few ulp of itself even when the two terms nearly
/// cancel. Every constant blows up like a power of `1/A`, so this matters
/// close to `q = sqrt(2/n)`.
pub fn stability_gap(p: ParamPoint) -> f64 {
    let n = p.n as f64;
    let two_over_n = 2.0 / n;
    let two_over_n_err = (-two_over_n).mul_add(n, 2.0) / n;
    let sq = p.q * p.q;
    let sq_err = p.q.mul_add(p.q, -sq);
    (two_over_n - sq) + (two_over_n_err - sq_err)
}

pub fn quadratic_aux(q: f64) -> f64 {
    formulas::quadratic_aux(q)
}

/// `D(n,q) = 1 + 2(1+q)/A + 8(1+q)B(q)/A^2`.
pub fn d_factor(p: ParamPoint) -> Result<f64> {
    let a = p.require_gap()?;
    Ok(formulas::d_factor(p.q, a))
}

pub fn structural_coefficients(n: u32) -> Result<StructuralCoefficients> {
    check_dimension(n)?;
    let nf = n as f64;
    let okumura = (nf - 2.0) / (nf * (nf - 1.0)).sqrt();
    Ok(StructuralCoefficients { alpha: nf * okumura, okumura, kato: 1.0 + 2.0 / nf })
}

/// The open interval `(0, sqrt(2/n))`.
pub fn admissible_q_domain(n: u32) -> Result<QInterval> {
    check_dimension(n)?;
    Ok(QInterval::open(0.0, q_upper(n)))
}

/// Exponents for which the decay argument closes:
/// `max(0, (n-4)/2) < q < sqrt(2/n)`.
pub fn bernstein_range(n: u32) -> Result<QInterval> {
    check_dimension(n)?;
    let lower = ((n as f64 - 4.0) / 2.0).max(0.0);
    Ok(QInterval::open(lower, q_upper(n)))
}

/// `n - 4 - 2q`; negative exactly when the decay argument closes.
pub fn decay_exponent(p: ParamPoint) -> f64 {
    p.n as f64 - 4.0 - 2.0 * p.q
}
