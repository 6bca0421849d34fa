//! Minimal field abstraction shared by the closed-form formulas.
//!
//! The rational parts of every constant (everything except the fractional
//! powers) are written once in [`crate::formulas`] against this trait and then
//! evaluated in binary64, in outward-rounded interval arithmetic, or in any
//! exact field a caller supplies.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}
