//! Extended-precision cross-check of the binary64 constants.
//!
//! The reference values are computed with 192-bit binary floating point
//! (about 57 decimal digits) from the expanded formulas rather than the
//! grouped forms used in [`crate::minimal`]: `C_Y` keeps its four separate
//! factors and `ratio_root` is the `(1+q)`-th root of the quotient
//! `C_H / C_Y`, so the two paths share no intermediate algebra.

use astro_float::{BigFloat, Consts, RoundingMode};
use serde::{Deserialize, Serialize};

use crate::cmc::CmcConstantBundle;
use crate::domain::{q_upper, ParamPoint};
use crate::error::{Error, Result};
use crate::minimal::{f_bound, ConstantBundle};

pub const PRECISION_BITS: usize = 192;
/// Tolerance on the relative deviation at regular points.
pub const REGULAR_TOL: f64 = 1e-12;
/// Tolerance at points with gap below [`NEAR_BOUNDARY_GAP`].
pub const NEAR_BOUNDARY_TOL: f64 = 1e-9;
pub const NEAR_BOUNDARY_GAP: f64 = 1e-6;

struct Hp {
    cc: Consts,
}

const RM: RoundingMode = RoundingMode::ToEven;
const P: usize = PRECISION_BITS;

impl Hp {
    fn new() -> Self {
        Hp { cc: Consts::new().expect("astro-float constant cache") }
    }

    fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, P)
    }

    fn i(&self, x: i64) -> BigFloat {
        BigFloat::from_i64(x, P)
    }

    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, P, RM)
    }

    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, P, RM)
    }

    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, P, RM)
    }

    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, P, RM)
    }

    /// `base^e` with `0^e = 0` for `e > 0` and `0^0 = 1`.
    fn pow(&mut self, base: &BigFloat, e: &BigFloat) -> BigFloat {
        if base.is_zero() {
            return if e.is_zero() { self.i(1) } else { self.i(0) };
        }
        base.pow(e, P, RM, &mut self.cc)
    }

    fn to_f64(x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        x.to_string().parse::<f64>().unwrap_or(f64::NAN)
    }
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDeviation {
    pub field: String,
    pub value: f64,
    pub reference: f64,
    /// `|value - reference| / scale`; `scale` is `|reference|` except for
    /// fields formed by cancellation, where it is the size of the cancelling
    /// terms.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCheck {
    pub point: ParamPoint,
    pub gap: f64,
    pub near_boundary: bool,
    pub fields: Vec<FieldDeviation>,
}

impl PointCheck {
    pub fn max_deviation(&self) -> f64 {
        self.fields.iter().map(|f| f.deviation).fold(0.0, f64::max)
    }

    pub fn tolerance(&self) -> f64 {
        if self.near_boundary {
            NEAR_BOUNDARY_TOL
        } else {
            REGULAR_TOL
        }
    }
}

/// Reference values (as `f64`) together with the cancellation scales.
struct Reference {
    values: Vec<(&'static str, f64, f64)>,
}

fn reference(p: ParamPoint) -> Reference {
    let mut hp = Hp::new();
    let n = p.n as i64;
    let q = hp.f(p.q);
    let one = hp.i(1);
    let two = hp.i(2);
    let t = hp.add(&one, &q);
    let t2 = hp.mul(&t, &t);
    let a = hp.sub(&hp.div(&two, &hp.i(n)), &hp.mul(&q, &q));
    let a2 = hp.mul(&a, &a);
    let b_aux = hp.add(&hp.add(&hp.mul(&q, &q), &hp.mul(&two, &q)), &two);

    let c1 = hp.add(&hp.div(&two, &a), &hp.div(&hp.mul(&hp.i(8), &b_aux), &a2));
    let c3 = hp.mul(&hp.add(&two, &q), &hp.add(&hp.mul(&t, &c1), &one));
    let qq = hp.pow(&q, &q);
    let two_t = hp.pow(&two, &t);
    let t_t = hp.pow(&t, &t);
    let c3_t = hp.pow(&c3, &t);
    let cy = hp.mul(&hp.div(&hp.mul(&two_t, &qq), &t_t), &c3_t);
    let c3h = hp.mul(&hp.mul(&two, &t2), &hp.add(&hp.mul(&t2, &c1), &one));
    let ch = hp.pow(&c3h, &t);
    let ratio = hp.div(&ch, &cy);
    let ratio_root = hp.pow(&ratio, &hp.div(&one, &t));

    let four = hp.i(4);
    let delta = hp.div(&a, &hp.mul(&four, &t2));
    let one_d = hp.add(&one, &delta);
    let c0 = hp.add(
        &hp.div(&hp.mul(&hp.mul(&four, &one_d), &t2), &a),
        &hp.div(
            &hp.mul(&hp.mul(&hp.i(16), &t2), &hp.add(&one, &hp.mul(&hp.mul(&one_d, &one_d), &t2))),
            &a2,
        ),
    );
    let term1 = hp.div(&hp.mul(&hp.i(4 * n * (n - 2) * (n - 2)), &t2), &hp.mul(&hp.i(n - 1), &a2));
    let term2 = hp.div(&hp.i(8 * n), &a);
    let term3 = hp.div(&hp.i(n), &t2);
    let b0_raw = hp.sub(&hp.sub(&term1, &term2), &term3);
    let b0_scale = hp.add(&hp.add(&term1, &term2), &term3);
    let b0 = if b0_raw.is_positive() { b0_raw.clone() } else { hp.i(0) };
    let cl_a = hp.mul(&hp.mul(&two, &t2), &hp.add(&c0, &one));
    let two_t2_b0 = hp.mul(&hp.mul(&two, &t2), &b0);
    let b_raw = hp.sub(&two_t2_b0, &hp.i(n));
    let b_scale = hp.add(&hp.mul(&hp.mul(&two, &t2), &b0_scale), &hp.i(n));
    let b = if b_raw.is_positive() { b_raw.clone() } else { hp.i(0) };
    let two_q = hp.pow(&two, &q);
    let a_t = hp.pow(&cl_a, &t);
    let b_t = hp.pow(&b, &t);
    let b_scale_t = hp.pow(&b_scale, &t);
    let cal1 = hp.mul(&two_q, &a_t);
    let cal2 = hp.mul(&two_q, &b_t);
    let cal2_scale = hp.mul(&two_q, &b_scale_t);

    let v = Hp::to_f64;
    let mut values = vec![
        ("A", v(&a), 0.0),
        ("C1", v(&c1), 0.0),
        ("C3", v(&c3), 0.0),
        ("CY", v(&cy), 0.0),
        ("C3H", v(&c3h), 0.0),
        ("CH", v(&ch), 0.0),
        ("ratio", v(&ratio), 0.0),
        ("ratio_root", v(&ratio_root), 0.0),
    ];
    if p.q > 0.0 && p.q < 1.0 {
        let root = hp.pow(&q, &hp.div(&q, &t));
        let f = hp.div(&hp.mul(&t2, &t2), &hp.mul(&root, &hp.add(&two, &q)));
        values.push(("f_bound", v(&f), 0.0));
    }
    values.extend([
        ("delta", v(&delta), 0.0),
        ("C0", v(&c0), 0.0),
        ("B0_raw", v(&b0_raw), v(&b0_scale)),
        ("B0", v(&b0), v(&b0_scale)),
        ("a", v(&cl_a), 0.0),
        ("b", v(&b), v(&b_scale)),
        ("calC1", v(&cal1), 0.0),
        ("calC2", v(&cal2), v(&cal2_scale)),
    ]);
    Reference { values }
}

/// Compares every binary64 bundle field at `p` with the reference.
pub fn check_point(p: ParamPoint) -> Result<PointCheck> {
    let m = ConstantBundle::new(p)?;
    let c = CmcConstantBundle::new(p)?;
    let r = reference(p);
    let mut fields = Vec::with_capacity(r.values.len());
    for (name, reference, scale) in r.values {
        let value = match name {
            "A" => m.gap,
            "C1" => m.c1,
            "C3" => m.c3,
            "CY" => m.c_young,
            "C3H" => m.c3_holder,
            "CH" => m.c_holder,
            "ratio" => m.ratio,
            "ratio_root" => m.ratio_root,
            "f_bound" => f_bound(p.q)?,
            "delta" => c.delta,
            "C0" => c.c0,
            "B0_raw" => c.b0_raw,
            "B0" => c.b0,
            "a" => c.a,
            "b" => c.b,
            "calC1" => c.cal_c1,
            "calC2" => c.cal_c2,
            _ => unreachable!("unknown oracle field {name}"),
        };
        let denom = reference.abs().max(scale.abs());
        let diff = (value - reference).abs();
        let deviation = if diff == 0.0 { 0.0 } else { diff / denom };
        fields.push(FieldDeviation { field: name.to_string(), value, reference, deviation });
    }
    Ok(PointCheck { point: p, gap: m.gap, near_boundary: m.gap < NEAR_BOUNDARY_GAP, fields })
}

/// Grid of points for [`oracle_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleGrid {
    pub n_values: Vec<u32>,
    /// Regular points per dimension, spread over `[0, 0.999 sqrt(2/n)]`.
    pub q_steps: usize,
    /// Extra points `sqrt(2/n)(1 - 10^-k)` for these `k`, all with gap
    /// below [`NEAR_BOUNDARY_GAP`] for the default dimensions.
    pub boundary_exponents: Vec<i32>,
}

impl Default for OracleGrid {
    fn default() -> Self {
        OracleGrid { n_values: (2..=12).collect(), q_steps: 41, boundary_exponents: (8..=12).collect() }
    }
}

impl OracleGrid {
    pub fn points(&self) -> Vec<ParamPoint> {
        let mut pts = Vec::new();
        for &n in &self.n_values {
            let top = 0.999 * q_upper(n);
            for k in 0..self.q_steps {
                let q = if self.q_steps == 1 { 0.0 } else { top * k as f64 / (self.q_steps - 1) as f64 };
                if let Ok(p) = ParamPoint::admissible(n, q) {
                    pts.push(p);
                }
            }
            for &e in &self.boundary_exponents {
                let q = q_upper(n) * (1.0 - 10f64.powi(-e));
                if let Ok(p) = ParamPoint::admissible(n, q) {
                    pts.push(p);
                }
            }
        }
        pts
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub points: Vec<PointCheck>,
    pub max_regular: f64,
    pub max_near_boundary: f64,
    pub regular_count: usize,
    pub near_boundary_count: usize,
    pub pass: bool,
}

impl OracleReport {
    /// The point and field with the largest deviation relative to its
    /// tolerance.
    pub fn worst(&self) -> Option<(&PointCheck, &FieldDeviation)> {
        self.points
            .iter()
            .flat_map(|p| p.fields.iter().map(move |f| (p, f)))
            .max_by(|a, b| (a.1.deviation / a.0.tolerance()).total_cmp(&(b.1.deviation / b.0.tolerance())))
    }
}

/// Runs [`check_point`] over the grid.
pub fn oracle_check(grid: &OracleGrid) -> Result<OracleReport> {
    use rayon::prelude::*;
    let pts = grid.points();
    if pts.is_empty() {
        return Err(Error::Precondition("oracle grid has no admissible points".into()));
    }
    let points: Vec<PointCheck> = pts.par_iter().map(|&p| check_point(p)).collect::<Result<_>>()?;
    let (mut max_regular, mut max_near_boundary) = (0.0f64, 0.0f64);
    let (mut regular_count, mut near_boundary_count) = (0, 0);
    for pc in &points {
        if pc.near_boundary {
            near_boundary_count += 1;
            max_near_boundary = max_near_boundary.max(pc.max_deviation());
        } else {
            regular_count += 1;
            max_regular = max_regular.max(pc.max_deviation());
        }
    }
    let pass = max_regular < REGULAR_TOL && max_near_boundary < NEAR_BOUNDARY_TOL;
    Ok(OracleReport { points, max_regular, max_near_boundary, regular_count, near_boundary_count, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_spot_values() {
        let pc = check_point(ParamPoint::new(3, 0.0).unwrap()).unwrap();
        let get = |name: &str| pc.fields.iter().find(|f| f.field == name).unwrap().reference;
        assert_eq!(get("C1"), 39.0);
        assert_eq!(get("C3"), 80.0);
        assert_eq!(get("CY"), 160.0);
        assert_eq!(get("CH"), 80.0);
        assert_eq!(get("C0"), 92.0);
        assert_eq!(get("calC1"), 186.0);
    }

    #[test]
    fn frozen_extended_values() {
        let pc = check_point(ParamPoint::new(5, 0.55).unwrap()).unwrap();
        let c1 = pc.fields.iter().find(|f| f.field == "C1").unwrap().reference;
        assert!((c1 - 2883.892176199868507).abs() / c1 < 1e-15);
        let pc = check_point(ParamPoint::new(10, 0.1).unwrap()).unwrap();
        let b = pc.fields.iter().find(|f| f.field == "B0_raw").unwrap().reference;
        assert!((b - 9104.69337036952247).abs() / b < 1e-15);
    }

    #[test]
    fn default_grid_agrees() {
        let r = oracle_check(&OracleGrid::default()).unwrap();
        assert!(r.near_boundary_count > 0 && r.regular_count > 0);
        let (p, f) = r.worst().unwrap();
        assert!(r.pass, "worst {} at n={} q={}: {:e}", f.field, p.point.n, p.point.q, f.deviation);
    }

    #[test]
    fn empty_grid_is_an_error() {
        let g = OracleGrid { n_values: vec![], q_steps: 5, boundary_exponents: vec![] };
        assert!(oracle_check(&g).is_err());
    }
}
