//! Field-generic closed forms.
//!
//! Every function here is a rational expression in `q`, the stability gap
//! `a = 2/n - q^2` and (where relevant) the free absorption parameters. The
//! gap is passed in rather than recomputed so that each arithmetic can supply
//! its own accurate version of it (a compensated binary64 value, an exact
//! rational, or an outward-rounded enclosure).
//!
//! Nothing here checks domains; the typed wrappers in [`crate::minimal`],
//! [`crate::cmc`] and [`crate::optimize`] do.

use crate::scalar::Scalar;

fn k<T: Scalar>(v: i64) -> T {
    T::from_i64(v)
}

/// `2/n - q^2`, evaluated naively in `T`.
pub fn gap<T: Scalar>(n: u32, q: T) -> T {
    k::<T>(2) / k(n as i64) - q.square()
}

/// `q^2 + 2q + 2`.
pub fn quadratic_aux<T: Scalar>(q: T) -> T {
    q.square() + k::<T>(2) * q + k(2)
}

/// `1 + 2(1+q)/a + 8(1+q)B(q)/a^2`.
pub fn d_factor<T: Scalar>(q: T, a: T) -> T {
    let one_q = k::<T>(1) + q.clone();
    k::<T>(1)
        + k::<T>(2) * one_q.clone() / a.clone()
        + k::<T>(8) * one_q * quadratic_aux(q) / a.square()
}

/// Shared gradient constant `2/a + 8B(q)/a^2`.
pub fn c1<T: Scalar>(q: T, a: T) -> T {
    k::<T>(2) / a.clone() + k::<T>(8) * quadratic_aux(q) / a.square()
}

/// Young pre-closure constant `(2+q)((1+q)C1 + 1)`.
pub fn c3_young<T: Scalar>(q: T, a: T) -> T {
    let c1 = c1(q.clone(), a);
    (k::<T>(2) + q.clone()) * ((k::<T>(1) + q) * c1 + k(1))
}

/// Hölder pre-closure constant `2(1+q)^2((1+q)^2 C1 + 1)`.
pub fn c3_holder<T: Scalar>(q: T, a: T) -> T {
    let c1 = c1(q.clone(), a);
    let sq = (k::<T>(1) + q).square();
    k::<T>(2) * sq.clone() * (sq * c1 + k(1))
}

/// `a / (4(1+q)^2)`.
pub fn delta<T: Scalar>(q: T, a: T) -> T {
    a / (k::<T>(4) * (k::<T>(1) + q).square())
}

/// CMC gradient constant `4(1+d)(1+q)^2/a + 16(1+q)^2[1 + (1+d)^2(1+q)^2]/a^2`
/// with `d = delta(q, a)`.
pub fn c0_cmc<T: Scalar>(q: T, a: T) -> T {
    let sq = (k::<T>(1) + q.clone()).square();
    let one_d = k::<T>(1) + delta(q, a.clone());
    k::<T>(4) * one_d.clone() * sq.clone() / a.clone()
        + k::<T>(16) * sq.clone() * (k::<T>(1) + one_d.square() * sq) / a.square()
}

/// Mean-curvature coefficient before taking the positive part:
/// `4n(n-2)^2(1+q)^2/((n-1)a^2) - 8n/a - n/(1+q)^2`.
pub fn b0_raw<T: Scalar>(n: u32, q: T, a: T) -> T {
    let n = n as i64;
    let sq = (k::<T>(1) + q).square();
    k::<T>(4 * n * (n - 2) * (n - 2)) * sq.clone() / (k::<T>(n - 1) * a.square())
        - k::<T>(8 * n) / a
        - k::<T>(n) / sq
}

/// `2(1+q)^2 (C0 + 1)`.
pub fn closure_a<T: Scalar>(q: T, c0: T) -> T {
    k::<T>(2) * (k::<T>(1) + q).square() * (c0 + k(1))
}

/// `2(1+q)^2 B0 - n`, before the positive part.
pub fn closure_b_raw<T: Scalar>(n: u32, q: T, b0: T) -> T {
    k::<T>(2) * (k::<T>(1) + q).square() * b0 - k(n as i64)
}

/// Gradient constant for free Young parameters:
/// `(1/e1 + 1 + (1+q)^2/e2) / (a - e1 - e2)`.
pub fn c1_general<T: Scalar>(q: T, a: T, eps1: T, eps2: T) -> T {
    let sq = (k::<T>(1) + q).square();
    (k::<T>(1) / eps1.clone() + k(1) + sq / eps2.clone()) / (a - eps1 - eps2)
}

/// `((1+q)^2 + (1+q)e3) C1 + 1 + (1+q)/e3`.
pub fn c3_general<T: Scalar>(q: T, c1: T, eps3: T) -> T {
    let one_q = k::<T>(1) + q;
    (one_q.square() + one_q.clone() * eps3.clone()) * c1 + k(1) + one_q / eps3
}

/// Outcome of the three-parameter CMC absorption system.
#[derive(Debug, Clone, PartialEq)]
pub struct CmcSystem<T> {
    /// Surviving coefficient of the gradient integral.
    pub left: T,
    pub c0: T,
    pub b0_raw: T,
}

/// Solves the CMC absorption system for free `(e1, e2, e3)`.
///
/// `left = 2/n + 2q + 1 - e1 - (1+e3)(1+q)^2(1+e2)` is evaluated in the
/// equivalent form `a - e1 - (1+q)^2(e2 + e3 + e2 e3)`.
pub fn cmc_general<T: Scalar>(n: u32, q: T, a: T, eps1: T, eps2: T, eps3: T) -> CmcSystem<T> {
    let ni = n as i64;
    let sq = (k::<T>(1) + q).square();
    let left = a
        - eps1.clone()
        - sq.clone() * (eps2.clone() + eps3.clone() + eps2.clone() * eps3.clone());
    let c0 = (sq.clone() / eps1
        + (k::<T>(1) + eps3.clone()) * sq * (k::<T>(1) + k::<T>(1) / eps2))
        / left.clone();
    let b0_raw = (k::<T>(ni * (ni - 2) * (ni - 2)) / (k::<T>(4 * (ni - 1)) * eps3.clone())
        - k(2 * ni)
        - k::<T>(ni) * eps3)
        / left.clone();
    CmcSystem { left, c0, b0_raw }
}

/// The parameter choice that produces the closed-form CMC constants:
/// `e1 = a/4`, `e3 = delta`, `e2 = a/(4(1+delta)(1+q)^2)`.
pub fn cmc_canonical_eps<T: Scalar>(q: T, a: T) -> (T, T, T) {
    let d = delta(q.clone(), a.clone());
    let sq = (k::<T>(1) + q).square();
    let e1 = a.clone() / k(4);
    let e2 = a / (k::<T>(4) * (k::<T>(1) + d.clone()) * sq);
    (e1, e2, d)
}
