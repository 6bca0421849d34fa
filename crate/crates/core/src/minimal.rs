//! Closure constants for stable minimal hypersurfaces.
//!
//! Both closures start from the shared gradient constant `C1`. The Young
//! route produces `C3` and then `C_Y = 2^(1+q) q^q / (1+q)^(1+q) * C3^(1+q)`;
//! the Hölder route produces `C3H` and then `C_H = C3H^(1+q)`.

use serde::{Deserialize, Serialize};

use crate::domain::{check_dimension, q_upper, ParamPoint, QInterval};
use crate::error::{Error, Result};
use crate::formulas;

/// Relative distance from `sqrt(2/n)` at which the crossover scan stops.
pub const CROSSOVER_BOUNDARY_MARGIN: f64 = 1e-6;
/// Number of scan cells used to bracket the crossover.
pub const CROSSOVER_SCAN_CELLS: usize = 1 << 14;
/// Width of the bracket returned by [`crossover_q`].
pub const CROSSOVER_TOL: f64 = 1e-9;

/// Every minimal-case constant at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantBundle {
    pub point: ParamPoint,
    #[serde(rename = "A")]
    pub gap: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C3")]
    pub c3: f64,
    #[serde(rename = "CY")]
    pub c_young: f64,
    #[serde(rename = "C3H")]
    pub c3_holder: f64,
    #[serde(rename = "CH")]
    pub c_holder: f64,
    /// `C_H / C_Y`.
    pub ratio: f64,
    /// `(C_H / C_Y)^(1/(1+q))`.
    pub ratio_root: f64,
}

impl ConstantBundle {
    pub fn new(p: ParamPoint) -> Result<Self> {
        let gap = p.require_gap()?;
        let q = p.q;
        let c3 = formulas::c3_young(q, gap);
        let c3_holder = formulas::c3_holder(q, gap);
        let c_young = young_closure(q, c3);
        let c_holder = c3_holder.powf(1.0 + q);
        Ok(ConstantBundle {
            point: p,
            gap,
            c1: formulas::c1(q, gap),
            c3,
            c_young,
            c3_holder,
            c_holder,
            ratio: c_holder / c_young,
            ratio_root: ratio_root_with_gap(q, gap),
        })
    }
}

/// `q^q`, continuously extended by `0^0 = 1`.
pub fn self_power(q: f64) -> f64 {
    if q == 0.0 {
        1.0
    } else if q < 1e-300 {
        (q * q.ln()).exp()
    } else {
        q.powf(q)
    }
}

/// `q^(q/(1+q))`, continuously extended by 1 at `q = 0`.
pub fn root_self_power(q: f64) -> f64 {
    if q == 0.0 {
        1.0
    } else if q < 1e-300 {
        (q * q.ln() / (1.0 + q)).exp()
    } else {
        q.powf(q / (1.0 + q))
    }
}

/// `2^(1+q) q^q / (1+q)^(1+q) * c3^(1+q)`, grouped as
/// `(2 c3 / (1+q))^(1+q) * q^q` to save a rounding.
fn young_closure(q: f64, c3: f64) -> f64 {
    let t = 1.0 + q;
    (2.0 * c3 / t).powf(t) * self_power(q)
}

/// Shared gradient constant `C1 = 2/A + 8(q^2+2q+2)/A^2`.
pub fn c1_shared(p: ParamPoint) -> Result<f64> {
    Ok(formulas::c1(p.q, p.require_gap()?))
}

/// Young pre-closure constant `C3 = (2+q)((1+q)C1 + 1)`.
pub fn c3_young(p: ParamPoint) -> Result<f64> {
    Ok(formulas::c3_young(p.q, p.require_gap()?))
}

/// Classical Young closure constant `C_Y`.
pub fn c_young(p: ParamPoint) -> Result<f64> {
    Ok(young_closure(p.q, c3_young(p)?))
}

/// Hölder pre-closure constant `C3H = 2(1+q)^2((1+q)^2 C1 + 1)`.
pub fn c3_holder(p: ParamPoint) -> Result<f64> {
    Ok(formulas::c3_holder(p.q, p.require_gap()?))
}

/// Terminal Hölder closure constant `C_H = C3H^(1+q)`.
pub fn c_holder(p: ParamPoint) -> Result<f64> {
    Ok(c3_holder(p)?.powf(1.0 + p.q))
}

fn ratio_root_with_gap(q: f64, gap: f64) -> f64 {
    let d = formulas::d_factor(q, gap);
    let t = 1.0 + q;
    t * t * t / (root_self_power(q) * (2.0 + q)) * (1.0 + q * ((d - 1.0) / d))
}

/// `(C_H / C_Y)^(1/(1+q))` through the closed form
/// `(1+q)^3 / (q^(q/(1+q)) (2+q)) * (1 + q (D-1)/D)`.
pub fn ratio_root(p: ParamPoint) -> Result<f64> {
    Ok(ratio_root_with_gap(p.q, p.require_gap()?))
}

fn check_unit_open(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("q must lie in (0, 1), got {q}")))
    }
}

/// `f(q) = (1+q)^4 / (q^(q/(1+q)) (2+q))`, the upper bound of [`ratio_root`].
pub fn f_bound(q: f64) -> Result<f64> {
    check_unit_open(q)?;
    let t = 1.0 + q;
    Ok((t * t) * (t * t) / (root_self_power(q) * (2.0 + q)))
}

/// `ln f(q)`.
pub fn g_log(q: f64) -> Result<f64> {
    check_unit_open(q)?;
    Ok(4.0 * q.ln_1p() - (2.0 + q).ln() - q / (1.0 + q) * q.ln())
}

/// `d/dq ln f(q)`.
pub fn g_prime(q: f64) -> Result<f64> {
    check_unit_open(q)?;
    let t = 1.0 + q;
    Ok(4.0 / t - 1.0 / (2.0 + q) - q.ln() / (t * t) - 1.0 / t)
}

/// `C_Y - C_H`; positive where the Hölder closure wins.
fn young_minus_holder(n: u32, q: f64) -> Result<f64> {
    let b = ConstantBundle::new(ParamPoint::new(n, q)?)?;
    Ok(b.c_young - b.c_holder)
}

/// Brackets the smallest `q > 1/8` at which `C_H = C_Y`.
///
/// The range `(1/8, sqrt(2/n) (1 - CROSSOVER_BOUNDARY_MARGIN)]` is scanned on
/// [`CROSSOVER_SCAN_CELLS`] uniform cells; the first grid point where
/// `C_Y - C_H <= 0` fixes the cell, which is then bisected down to
/// [`CROSSOVER_TOL`]. Returns an empty interval when no sign change is found
/// or when `sqrt(2/n) <= 1/8`.
pub fn crossover_q(n: u32) -> Result<QInterval> {
    check_dimension(n)?;
    let lo = 0.125;
    let hi = q_upper(n) * (1.0 - CROSSOVER_BOUNDARY_MARGIN);
    if hi <= lo {
        return Ok(QInterval::empty());
    }
    let cells = CROSSOVER_SCAN_CELLS as f64;
    let grid = |k: usize| if k == CROSSOVER_SCAN_CELLS { hi } else { lo + k as f64 * (hi - lo) / cells };

    let mut prev = grid(0);
    if young_minus_holder(n, prev)? <= 0.0 {
        return Ok(QInterval::closed(prev, prev));
    }
    for k in 1..=CROSSOVER_SCAN_CELLS {
        let q = grid(k);
        if young_minus_holder(n, q)? <= 0.0 {
            let (mut a, mut b) = (prev, q);
            while b - a > CROSSOVER_TOL {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if young_minus_holder(n, m)? <= 0.0 {
                    b = m;
                } else {
                    a = m;
                }
            }
            return Ok(QInterval::closed(a, b));
        }
        prev = q;
    }
    Ok(QInterval::empty())
}
