//! Outward-rounded interval arithmetic over binary64.
//!
//! The four basic operations and `sqrt` are rounded in the proper direction
//! exactly: the rounding error of the round-to-nearest result is recovered
//! with an error-free transformation (TwoSum, FMA residuals) and the bound is
//! stepped one ulp outward only when the result was inexact on the wrong side.
//! `exp` and `ln` come from the platform libm, whose results are not correctly
//! rounded, so their endpoints are pushed [`TRANSCENDENTAL_ULPS`] ulp outward.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Outward inflation applied to each endpoint of `exp` and `ln`.
pub const TRANSCENDENTAL_ULPS: u32 = 4;

/// Below this magnitude FMA residuals may underflow; bounds are widened
/// unconditionally instead.
const TINY: f64 = 1e-290;

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const ENTIRE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    /// # Panics
    /// If `lo > hi` or either bound is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval::new(self.lo, m), Interval::new(m, self.hi))
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi < 0.0
    }

    pub fn exp(self) -> Interval {
        let lo = widen_down(self.lo.exp(), TRANSCENDENTAL_ULPS).max(0.0);
        let hi = widen_up(self.hi.exp(), TRANSCENDENTAL_ULPS);
        Interval { lo, hi }
    }

    pub fn ln(self) -> Result<Interval> {
        if !(self.lo > 0.0) {
            return Err(Error::domain(format!("ln of interval {self} reaching 0")));
        }
        Ok(Interval {
            lo: widen_down(self.lo.ln(), TRANSCENDENTAL_ULPS),
            hi: widen_up(self.hi.ln(), TRANSCENDENTAL_ULPS),
        })
    }

    pub fn sqrt(self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(Error::domain(format!("sqrt of interval {self} with negative part")));
        }
        Ok(Interval { lo: sqrt_down(self.lo), hi: sqrt_up(self.hi) })
    }

    /// `self^exponent` for a strictly positive base, as `exp(exponent * ln(self))`.
    pub fn powf(self, exponent: Interval) -> Result<Interval> {
        Ok((exponent * self.ln()?).exp())
    }

    /// Integer power of a non-negative interval by repeated multiplication.
    pub fn powi_nonneg(self, k: u32) -> Interval {
        debug_assert!(self.lo >= 0.0);
        let mut acc = Interval::point(1.0);
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }

    /// Enclosure of `x ln x` over a non-negative interval, using the
    /// continuous extension `0 ln 0 = 0`.
    ///
    /// `x ln x` decreases on `[0, 1/e]` and increases afterwards, with minimum
    /// `-1/e`, so the range is read off the endpoints.
    pub fn xlogx(self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(Error::domain(format!("x ln x of interval {self} with negative part")));
        }
        let inv_e = (-1.0f64).exp();
        let at = |x: f64| -> Interval {
            if x == 0.0 {
                Interval::point(0.0)
            } else {
                Interval::point(x) * Interval::point(x).ln().expect("x > 0")
            }
        };
        let left = at(self.lo);
        let right = at(self.hi);
        // The computed 1/e may sit on either side of the true minimizer; treat
        // any interval reaching within an ulp of it as containing it.
        let reaches_min = self.lo <= inv_e.next_up() && self.hi >= inv_e.next_down();
        let lo = if reaches_min {
            widen_down(-inv_e, TRANSCENDENTAL_ULPS).min(left.lo).min(right.lo)
        } else if self.hi < inv_e {
            right.lo
        } else {
            left.lo
        };
        Ok(Interval { lo, hi: left.hi.max(right.hi) })
    }

    /// `x^x` with `0^0 = 1`.
    pub fn self_power(self) -> Result<Interval> {
        Ok(self.xlogx()?.exp())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

fn widen_down(x: f64, ulps: u32) -> f64 {
    (0..ulps).fold(x, |v, _| v.next_down())
}

fn widen_up(x: f64, ulps: u32) -> f64 {
    (0..ulps).fold(x, |v, _| v.next_up())
}

/// Rounds `approx` down given the sign of `exact - approx`.
fn settle_down(approx: f64, residual: f64) -> f64 {
    if !approx.is_finite() {
        return if approx == f64::INFINITY { f64::MAX } else { approx };
    }
    if approx.abs() < TINY || !residual.is_finite() || residual < 0.0 {
        approx.next_down()
    } else {
        approx
    }
}

fn settle_up(approx: f64, residual: f64) -> f64 {
    if !approx.is_finite() {
        return if approx == f64::NEG_INFINITY { f64::MIN } else { approx };
    }
    if approx.abs() < TINY || !residual.is_finite() || residual > 0.0 {
        approx.next_up()
    } else {
        approx
    }
}

fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    settle_down(s, two_sum_err(a, b, s))
}

fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    settle_up(s, two_sum_err(a, b, s))
}

fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    settle_down(p, a.mul_add(b, -p))
}

fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    settle_up(p, a.mul_add(b, -p))
}

/// Sign-carrying residual of `a / b - r`, scaled by `b`.
fn div_residual(a: f64, b: f64, r: f64) -> f64 {
    let rem = (-r).mul_add(b, a);
    if b > 0.0 {
        rem
    } else {
        -rem
    }
}

fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let r = a / b;
    settle_down(r, div_residual(a, b, r))
}

fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let r = a / b;
    settle_up(r, div_residual(a, b, r))
}

fn sqrt_down(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let r = x.sqrt();
    settle_down(r, (-r).mul_add(r, x)).max(0.0)
}

fn sqrt_up(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let r = x.sqrt();
    settle_up(r, (-r).mul_add(r, x))
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval { lo: add_down(self.lo, rhs.lo), hi: add_up(self.hi, rhs.hi) }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let pairs = [(self.lo, rhs.lo), (self.lo, rhs.hi), (self.hi, rhs.lo), (self.hi, rhs.hi)];
        let lo = pairs.iter().map(|&(a, b)| mul_down(a, b)).fold(f64::INFINITY, f64::min);
        let hi = pairs.iter().map(|&(a, b)| mul_up(a, b)).fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Division by an interval containing zero yields [`Interval::ENTIRE`].
    fn div(self, rhs: Interval) -> Interval {
        if rhs.contains(0.0) {
            return Interval::ENTIRE;
        }
        let pairs = [(self.lo, rhs.lo), (self.lo, rhs.hi), (self.hi, rhs.lo), (self.hi, rhs.hi)];
        let lo = pairs.iter().map(|&(a, b)| div_down(a, b)).fold(f64::INFINITY, f64::min);
        let hi = pairs.iter().map(|&(a, b)| div_up(a, b)).fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }
}

impl Scalar for Interval {
    fn from_i64(v: i64) -> Self {
        let x = v as f64;
        debug_assert_eq!(x as i64, v, "integer constant not exactly representable");
        Interval::point(x)
    }

    fn square(&self) -> Self {
        if self.lo >= 0.0 {
            Interval { lo: mul_down(self.lo, self.lo), hi: mul_up(self.hi, self.hi) }
        } else if self.hi <= 0.0 {
            Interval { lo: mul_down(self.hi, self.hi), hi: mul_up(self.lo, self.lo) }
        } else {
            let m = self.lo.abs().max(self.hi);
            Interval { lo: 0.0, hi: mul_up(m, m) }
        }
    }
}
