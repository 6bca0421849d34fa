//! Constants of the constant-mean-curvature extension and the local estimate
//! below the mean-curvature scale.

use serde::{Deserialize, Serialize};

use crate::domain::ParamPoint;
use crate::error::{Error, Result};
use crate::formulas;

/// A geodesic ball of radius `r` around which the local estimate is applied,
/// with interior fraction `theta` and signed mean curvature `h`.
///
/// `r` and `1/|h|` must be expressed in the same length unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmcScale {
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub theta: f64,
}

impl CmcScale {
    pub fn new(h: f64, r: f64, theta: f64) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::domain(format!("mean curvature must be finite, got {h}")));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::domain(format!("radius must be positive and finite, got {r}")));
        }
        check_theta(theta)?;
        Ok(CmcScale { h, r, theta })
    }

    /// `(1 - theta) R`, the width of the cutoff transition.
    pub fn transition_width(&self) -> f64 {
        (1.0 - self.theta) * self.r
    }

    /// `|H| (1 - theta) R`.
    pub fn scale_product(&self) -> f64 {
        self.h.abs() * self.transition_width()
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("theta must lie in (0, 1), got {theta}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `|H| (1 - theta) R <= 1`: the curvature term is absorbed and the
    /// estimate takes the minimal-surface form.
    MinimalLike,
    CurvatureDominated,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::MinimalLike => "MinimalLike",
            Regime::CurvatureDominated => "CurvatureDominated",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmcConstantBundle {
    pub point: ParamPoint,
    pub delta: f64,
    #[serde(rename = "C0")]
    pub c0: f64,
    #[serde(rename = "B0")]
    pub b0: f64,
    #[serde(rename = "B0_raw")]
    pub b0_raw: f64,
    pub a: f64,
    pub b: f64,
    /// `2(1+q)^2 B0 - n` before the positive part.
    pub b_raw: f64,
    #[serde(rename = "calC1")]
    pub cal_c1: f64,
    #[serde(rename = "calC2")]
    pub cal_c2: f64,
}

impl CmcConstantBundle {
    pub fn new(p: ParamPoint) -> Result<Self> {
        let gap = p.require_gap()?;
        let q = p.q;
        let c0 = formulas::c0_cmc(q, gap);
        let b0_raw = formulas::b0_raw(p.n, q, gap);
        let b0 = b0_raw.max(0.0);
        let a = formulas::closure_a(q, c0);
        let b_raw = formulas::closure_b_raw(p.n, q, b0);
        let b = b_raw.max(0.0);
        let (cal_c1, cal_c2) = cal_pair(q, a, b);
        Ok(CmcConstantBundle {
            point: p,
            delta: formulas::delta(q, gap),
            c0,
            b0,
            b0_raw,
            a,
            b,
            b_raw,
            cal_c1,
            cal_c2,
        })
    }
}

/// `2^q a^(1+q)` and `2^q b^(1+q)`.
pub(crate) fn cal_pair(q: f64, a: f64, b: f64) -> (f64, f64) {
    let two_q = 2f64.powf(q);
    let c2 = if b == 0.0 { 0.0 } else { two_q * b.powf(1.0 + q) };
    (two_q * a.powf(1.0 + q), c2)
}

/// `delta = A / (4(1+q)^2)`.
pub fn delta_param(p: ParamPoint) -> Result<f64> {
    Ok(formulas::delta(p.q, p.require_gap()?))
}

/// CMC gradient constant `C0`.
pub fn c0_cmc(p: ParamPoint) -> Result<f64> {
    Ok(formulas::c0_cmc(p.q, p.require_gap()?))
}

/// Mean-curvature coefficient of the gradient estimate before clamping.
pub fn b0_raw(p: ParamPoint) -> Result<f64> {
    Ok(formulas::b0_raw(p.n, p.q, p.require_gap()?))
}

/// `B0 = max(0, b0_raw)`.
pub fn b0_cmc(p: ParamPoint) -> Result<f64> {
    Ok(b0_raw(p)?.max(0.0))
}

/// `a = 2(1+q)^2 (C0 + 1)` and `b = max(0, 2(1+q)^2 B0 - n)`.
pub fn closure_coefficients(p: ParamPoint) -> Result<(f64, f64)> {
    let b = CmcConstantBundle::new(p)?;
    Ok((b.a, b.b))
}

/// `(calC1, calC2) = (2^q a^(1+q), 2^q b^(1+q))`.
pub fn cal_constants(p: ParamPoint) -> Result<(f64, f64)> {
    let b = CmcConstantBundle::new(p)?;
    Ok((b.cal_c1, b.cal_c2))
}

/// Coefficients of the local `L^(4+2q)` estimate on a ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalEstimate {
    /// `calC1 / ((1-theta) R)^(2+2q)`.
    pub gradient_coefficient: f64,
    /// `calC2 |H|^(2+2q)`.
    pub curvature_coefficient: f64,
    /// `(calC1 + calC2) / ((1-theta) R)^(2+2q)`; bounds the sum of the two
    /// coefficients whenever the regime is [`Regime::MinimalLike`].
    pub combined_small_scale: f64,
    pub regime: Regime,
}

pub fn local_estimate(p: ParamPoint, s: CmcScale) -> Result<LocalEstimate> {
    let s = CmcScale::new(s.h, s.r, s.theta)?;
    let bundle = CmcConstantBundle::new(p)?;
    let e = 2.0 + 2.0 * p.q;
    let width_pow = s.transition_width().powf(e);
    let curvature_coefficient =
        if s.h == 0.0 || bundle.cal_c2 == 0.0 { 0.0 } else { bundle.cal_c2 * s.h.abs().powf(e) };
    let regime =
        if s.scale_product() <= 1.0 { Regime::MinimalLike } else { Regime::CurvatureDominated };
    Ok(LocalEstimate {
        gradient_coefficient: bundle.cal_c1 / width_pow,
        curvature_coefficient,
        combined_small_scale: (bundle.cal_c1 + bundle.cal_c2) / width_pow,
        regime,
    })
}

/// Largest radius with `|H| (1 - theta) R <= 1`; infinite when `H = 0`.
pub fn threshold_radius(h: f64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if h == 0.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(1.0 / (h.abs() * (1.0 - theta)))
    }
}
