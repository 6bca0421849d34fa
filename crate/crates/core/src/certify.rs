//! Sign certificates over parameter boxes.
//!
//! A box is a finite set of dimensions together with a closed `q` interval.
//! [`certify_positive`] encloses a registered function over the box with
//! [`Interval`] arithmetic and bisects in `q` until every leaf is strictly
//! positive, a point with a certified negative value turns up, or the depth
//! budget runs out. Dimensions are never subdivided; each one is handled
//! independently and the per-dimension results are combined in order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas;
use crate::interval::Interval;
use crate::scalar::Scalar;

pub const DEFAULT_MAX_DEPTH: u32 = 40;
/// Default lower end of `q` for claims that involve `ln q`.
pub const DEFAULT_Q_MIN: f64 = 1e-3;
/// Hard cap on boxes examined per dimension.
pub const MAX_BOXES: usize = 1 << 20;
/// Unresolved boxes listed in a certificate's diagnostics.
const MAX_DIAGNOSTICS: usize = 16;

/// Registered scalar functions of `(n, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClaimFn {
    /// Stability gap `2/n - q^2`.
    Gap,
    /// Derivative of `ln f`.
    GPrime,
    /// `f(q) = (1+q)^4 / (q^(q/(1+q)) (2+q))`.
    FBound,
    /// The constant 1.
    One,
    CYoung,
    CHolder,
    RatioRoot,
}

impl ClaimFn {
    pub const ALL: [ClaimFn; 7] = [
        ClaimFn::Gap,
        ClaimFn::GPrime,
        ClaimFn::FBound,
        ClaimFn::One,
        ClaimFn::CYoung,
        ClaimFn::CHolder,
        ClaimFn::RatioRoot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimFn::Gap => "A",
            ClaimFn::GPrime => "g'",
            ClaimFn::FBound => "f",
            ClaimFn::One => "1",
            ClaimFn::CYoung => "CY",
            ClaimFn::CHolder => "CH",
            ClaimFn::RatioRoot => "ratio_root",
        }
    }

    pub fn depends_on_n(self) -> bool {
        matches!(self, ClaimFn::Gap | ClaimFn::CYoung | ClaimFn::CHolder | ClaimFn::RatioRoot)
    }

    /// Enclosure of the function over `{n} x q`.
    ///
    /// Functions built on the closure constants fail with a domain error when
    /// the gap enclosure reaches 0; `g'` fails when `q` reaches 0, and `f`
    /// when `q` leaves `[0, 1)`.
    pub fn enclose(self, n: u32, q: Interval) -> Result<Interval> {
        if q.lo < 0.0 {
            return Err(Error::domain(format!("q interval {q} has a negative part")));
        }
        match self {
            ClaimFn::Gap => Ok(gap(n, q)),
            ClaimFn::One => Ok(Interval::point(1.0)),
            ClaimFn::GPrime => g_prime(q),
            ClaimFn::FBound => f_bound(q),
            ClaimFn::CYoung => {
                let a = positive_gap(n, q)?;
                let t = one() + q;
                let c3 = formulas::c3_young(q, a);
                Ok((Interval::point(2.0) * c3 / t).powf(t)? * q.self_power()?)
            }
            ClaimFn::CHolder => {
                let a = positive_gap(n, q)?;
                formulas::c3_holder(q, a).powf(one() + q)
            }
            ClaimFn::RatioRoot => {
                let a = positive_gap(n, q)?;
                let t = one() + q;
                let d = formulas::d_factor(q, a);
                let root = (q.xlogx()? / t).exp();
                Ok(t.powi_nonneg(3) / (root * (Interval::point(2.0) + q))
                    * (one() + q * (one() - one() / d)))
            }
        }
    }
}

fn one() -> Interval {
    Interval::point(1.0)
}

fn gap(n: u32, q: Interval) -> Interval {
    formulas::gap(n, q)
}

fn positive_gap(n: u32, q: Interval) -> Result<Interval> {
    let a = gap(n, q);
    if a.lo > 0.0 {
        Ok(a)
    } else {
        Err(Error::domain(format!("gap enclosure {a} reaches 0 for n = {n}, q in {q}")))
    }
}

fn f_bound(q: Interval) -> Result<Interval> {
    if !(q.hi < 1.0) {
        return Err(Error::domain(format!("f needs q in [0, 1), got {q}")));
    }
    let t = one() + q;
    let root = (q.xlogx()? / t).exp();
    Ok(t.square().square() / (root * (Interval::point(2.0) + q)))
}

fn g_prime(q: Interval) -> Result<Interval> {
    if !(q.lo > 0.0 && q.hi < 1.0) {
        return Err(Error::domain(format!("g' needs q in (0, 1), got {q}")));
    }
    let t = one() + q;
    // 4/(1+q) - 1/(1+q) folded into 3/(1+q).
    Ok(Interval::point(3.0) / t - one() / (Interval::point(2.0) + q) - q.ln()? / t.square())
}

/// A registered function or the difference of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    Single(ClaimFn),
    /// `first - second`.
    Difference(ClaimFn, ClaimFn),
}

impl Objective {
    pub fn depends_on_n(self) -> bool {
        match self {
            Objective::Single(f) => f.depends_on_n(),
            Objective::Difference(a, b) => a.depends_on_n() || b.depends_on_n(),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Single(g) => write!(f, "{}", g.name()),
            Objective::Difference(a, b) => write!(f, "{} - {}", a.name(), b.name()),
        }
    }
}

/// Sound enclosure of `obj` over `{n} x q`.
pub fn interval_eval(obj: Objective, n: u32, q: Interval) -> Result<Interval> {
    match obj {
        Objective::Single(f) => f.enclose(n, q),
        Objective::Difference(a, b) => Ok(a.enclose(n, q)? - b.enclose(n, q)?),
    }
}

/// Named claims, each a strict positivity statement about an [`Objective`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    /// `C_H < C_Y`.
    HolderBeatsYoung,
    /// `A > 0`.
    GapPositive,
    /// `g' > 0`, i.e. `f` strictly increasing.
    FMonotone,
    /// `f < 1`.
    FBelowOne,
    /// `ratio_root < f`.
    RatioBelowF,
}

impl Claim {
    pub const ALL: [Claim; 5] = [
        Claim::HolderBeatsYoung,
        Claim::GapPositive,
        Claim::FMonotone,
        Claim::FBelowOne,
        Claim::RatioBelowF,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::HolderBeatsYoung => "holder-beats-young",
            Claim::GapPositive => "gap-positive",
            Claim::FMonotone => "f-monotone",
            Claim::FBelowOne => "f-below-one",
            Claim::RatioBelowF => "ratio-below-f",
        }
    }

    /// The function whose strict positivity is the claim.
    pub fn objective(self) -> Objective {
        match self {
            Claim::HolderBeatsYoung => Objective::Difference(ClaimFn::CYoung, ClaimFn::CHolder),
            Claim::GapPositive => Objective::Single(ClaimFn::Gap),
            Claim::FMonotone => Objective::Single(ClaimFn::GPrime),
            Claim::FBelowOne => Objective::Difference(ClaimFn::One, ClaimFn::FBound),
            Claim::RatioBelowF => Objective::Difference(ClaimFn::FBound, ClaimFn::RatioRoot),
        }
    }

    pub fn certify(self, bx: &ParamBox, max_depth: u32) -> Certificate {
        let mut cert = certify_positive(self.objective(), bx, max_depth);
        cert.claim = self.id().to_string();
        cert
    }
}

impl FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown claim '{s}'")))
    }
}

/// A finite dimension set times a closed `q` interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamBox {
    pub n_values: Vec<u32>,
    pub q: Interval,
}

impl ParamBox {
    pub fn new(n_values: Vec<u32>, q: Interval) -> Self {
        ParamBox { n_values, q }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Proven,
    Disproven,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proven => "Proven",
            Status::Disproven => "Disproven",
            Status::Inconclusive => "Inconclusive",
        })
    }
}

/// A point where the objective is certainly negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u32,
    pub q: f64,
    /// Guaranteed upper bound of the objective at the point; below 0.
    pub upper: f64,
}

/// A box the bisection could not settle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Unresolved {
    pub n: u32,
    pub q: Interval,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub objective: Objective,
    #[serde(rename = "box")]
    pub param_box: ParamBox,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Number of bisections performed.
    pub subdivisions: u64,
    pub max_depth_reached: u32,
    /// Boxes settled as strictly positive.
    pub proven_leaves: u64,
    pub unresolved_count: u64,
    /// The first few unresolved boxes, in search order.
    pub unresolved: Vec<Unresolved>,
}

pub const CERTIFICATE_SCHEMA: &str = "ssy-certificate/1";

impl Certificate {
    /// Key-value text form, one `key: value` per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&v);
            out.push('\n');
        };
        line("schema", CERTIFICATE_SCHEMA.to_string());
        line("claim", self.claim.clone());
        line("objective", format!("{} > 0", self.objective));
        let ns: Vec<String> = self.param_box.n_values.iter().map(|n| n.to_string()).collect();
        line("n", if ns.is_empty() { "-".to_string() } else { ns.join(",") });
        line("q", format!("{}", self.param_box.q));
        line("status", self.status.to_string());
        line(
            "witness",
            match self.witness {
                Some(w) => format!("n={} q={:e} upper={:e}", w.n, w.q, w.upper),
                None => "none".to_string(),
            },
        );
        line("subdivisions", self.subdivisions.to_string());
        line("max_depth_reached", self.max_depth_reached.to_string());
        line("proven_leaves", self.proven_leaves.to_string());
        line("unresolved", self.unresolved_count.to_string());
        for u in &self.unresolved {
            line("unresolved_box", format!("n={} q={} reason={}", u.n, u.q, u.reason));
        }
        out
    }
}

#[derive(Debug, Default)]
struct Search {
    witness: Option<Witness>,
    subdivisions: u64,
    max_depth_reached: u32,
    proven_leaves: u64,
    unresolved_count: u64,
    unresolved: Vec<Unresolved>,
}

impl Search {
    fn unresolved(&mut self, n: u32, q: Interval, reason: String) {
        self.unresolved_count += 1;
        if self.unresolved.len() < MAX_DIAGNOSTICS {
            self.unresolved.push(Unresolved { n, q, reason });
        }
    }
}

/// Looks for a certified-negative point among the box's ends and midpoint.
fn find_witness(obj: Objective, n: u32, q: Interval) -> Option<Witness> {
    [q.lo, q.mid(), q.hi].into_iter().find_map(|x| {
        let v = interval_eval(obj, n, Interval::point(x)).ok()?;
        (v.hi < 0.0).then_some(Witness { n, q: x, upper: v.hi })
    })
}

/// Whether the box lies entirely where `obj` is undefined, so splitting it
/// cannot help.
fn hopeless(obj: Objective, n: u32, q: Interval) -> bool {
    let fns = match obj {
        Objective::Single(f) => vec![f],
        Objective::Difference(a, b) => vec![a, b],
    };
    fns.iter().any(|f| match f {
        ClaimFn::CYoung | ClaimFn::CHolder | ClaimFn::RatioRoot => gap(n, q).hi <= 0.0,
        ClaimFn::GPrime => q.hi <= 0.0 || q.lo >= 1.0,
        ClaimFn::FBound => q.lo >= 1.0,
        ClaimFn::Gap | ClaimFn::One => false,
    })
}

fn search_dimension(obj: Objective, n: u32, q: Interval, max_depth: u32) -> Search {
    let mut s = Search::default();
    let mut stack = vec![(q, 0u32)];
    let mut boxes = 0usize;
    while let Some((bx, depth)) = stack.pop() {
        boxes += 1;
        s.max_depth_reached = s.max_depth_reached.max(depth);
        let reason = match interval_eval(obj, n, bx) {
            Ok(v) if v.lo > 0.0 => {
                s.proven_leaves += 1;
                continue;
            }
            Ok(v) => format!("enclosure {v}"),
            Err(e) => {
                if hopeless(obj, n, bx) {
                    s.unresolved(n, bx, e.to_string());
                    continue;
                }
                e.to_string()
            }
        };
        if let Some(w) = find_witness(obj, n, bx) {
            s.witness = Some(w);
            return s;
        }
        let (left, right) = bx.bisect();
        let splittable = left.hi > bx.lo && right.lo < bx.hi;
        if depth >= max_depth || !splittable || boxes >= MAX_BOXES {
            s.unresolved(n, bx, reason);
            continue;
        }
        s.subdivisions += 1;
        stack.push((right, depth + 1));
        stack.push((left, depth + 1));
    }
    s
}

/// Attempts to prove `obj > 0` on every point of the box.
///
/// Dimensions are searched in parallel and combined in the order given; the
/// first dimension with a witness makes the certificate `Disproven`. For an
/// objective that ignores `n`, a single search is run.
pub fn certify_positive(obj: Objective, bx: &ParamBox, max_depth: u32) -> Certificate {
    let dims: Vec<u32> = if obj.depends_on_n() {
        bx.n_values.clone()
    } else {
        vec![bx.n_values.first().copied().unwrap_or(2)]
    };
    let searches: Vec<Search> = dims
        .par_iter()
        .map(|&n| search_dimension(obj, n, bx.q, max_depth))
        .collect();

    let mut cert = Certificate {
        claim: format!("{obj} > 0"),
        objective: obj,
        param_box: bx.clone(),
        status: Status::Proven,
        witness: None,
        subdivisions: 0,
        max_depth_reached: 0,
        proven_leaves: 0,
        unresolved_count: 0,
        unresolved: Vec::new(),
    };
    for s in searches {
        cert.subdivisions += s.subdivisions;
        cert.max_depth_reached = cert.max_depth_reached.max(s.max_depth_reached);
        cert.proven_leaves += s.proven_leaves;
        cert.unresolved_count += s.unresolved_count;
        for u in s.unresolved {
            if cert.unresolved.len() < MAX_DIAGNOSTICS {
                cert.unresolved.push(u);
            }
        }
        if cert.witness.is_none() {
            cert.witness = s.witness;
        }
    }
    if dims.is_empty() {
        cert.status = Status::Inconclusive;
        cert.unresolved_count = 1;
        cert.unresolved.push(Unresolved { n: 0, q: bx.q, reason: "empty dimension set".into() });
    } else if cert.witness.is_some() {
        cert.status = Status::Disproven;
    } else if cert.unresolved_count > 0 {
        cert.status = Status::Inconclusive;
    }
    cert
}

/// Certifies `a < b` as `b - a > 0`.
pub fn certify_less(a: ClaimFn, b: ClaimFn, bx: &ParamBox, max_depth: u32) -> Certificate {
    let mut cert = certify_positive(Objective::Difference(b, a), bx, max_depth);
    cert.claim = format!("{} < {}", a.name(), b.name());
    cert
}

/// Narrows `[lo, hi]`, whose ends carry certified opposite signs of `obj`,
/// to a bracket of width at most `tol` that still has certified opposite
/// signs at its ends.
///
/// Bisection stops early, returning the current bracket, if the sign at a
/// midpoint cannot be certified.
pub fn isolate_root(obj: Objective, n: u32, interval: Interval, tol: f64) -> Result<Interval> {
    let sign = |x: f64| -> Option<bool> {
        let v = interval_eval(obj, n, Interval::point(x)).ok()?;
        if v.lo > 0.0 {
            Some(true)
        } else if v.hi < 0.0 {
            Some(false)
        } else {
            None
        }
    };
    let (mut a, mut b) = (interval.lo, interval.hi);
    let sa = match (sign(a), sign(b)) {
        (Some(sa), Some(sb)) if sa != sb => sa,
        _ => {
            return Err(Error::Precondition(format!(
                "{obj} does not have certified opposite signs at {a:e} and {b:e}"
            )))
        }
    };
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        match sign(m) {
            Some(s) if s == sa => a = m,
            Some(_) => b = m,
            None => break,
        }
    }
    Ok(Interval::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{q_upper, ParamPoint};
    use crate::minimal;
    use proptest::prelude::*;

    fn point_value(f: ClaimFn, n: u32, q: f64) -> Option<f64> {
        let p = ParamPoint::new(n, q).ok()?;
        match f {
            ClaimFn::Gap => Some(crate::domain::stability_gap(p)),
            ClaimFn::One => Some(1.0),
            ClaimFn::GPrime => minimal::g_prime(q).ok(),
            ClaimFn::FBound => minimal::f_bound(q).ok(),
            ClaimFn::CYoung => minimal::c_young(p).ok(),
            ClaimFn::CHolder => minimal::c_holder(p).ok(),
            ClaimFn::RatioRoot => minimal::ratio_root(p).ok(),
        }
    }

    #[test]
    fn gap_enclosure_example() {
        let e = ClaimFn::Gap.enclose(3, Interval::new(0.1, 0.2)).unwrap();
        assert!(e.lo > 0.62 && e.hi < 0.66);
        assert!(e.contains_interval(&Interval::new(2.0 / 3.0 - 0.04, 2.0 / 3.0 - 0.01)));
    }

    #[test]
    fn g_prime_enclosure_positive() {
        let e = ClaimFn::GPrime.enclose(2, Interval::new(0.4, 0.6)).unwrap();
        assert!(e.lo > 0.0);
    }

    #[test]
    fn point_boxes_are_tight() {
        for f in ClaimFn::ALL {
            for (n, q) in [(3u32, 0.1), (5, 0.3), (2, 0.6), (7, 0.01)] {
                let e = f.enclose(n, Interval::point(q)).unwrap();
                let v = point_value(f, n, q).unwrap();
                let ulp = v.abs().next_up() - v.abs();
                assert!(e.width() <= 8.0 * ulp * 64.0, "{f:?} ({n}, {q}): {e}");
                assert!(e.contains(v), "{f:?} ({n}, {q}): {e} vs {v}");
            }
        }
        let e = ClaimFn::Gap.enclose(3, Interval::point(0.1)).unwrap();
        let v: f64 = 2.0 / 3.0 - 0.01;
        assert!(e.width() <= 8.0 * (v.next_up() - v));
    }

    #[test]
    fn domain_errors_reported() {
        let near = Interval::new(0.8, 0.83);
        assert!(ClaimFn::CYoung.enclose(3, near).is_err());
        assert!(ClaimFn::GPrime.enclose(3, Interval::new(0.0, 0.1)).is_err());
        assert!(ClaimFn::Gap.enclose(3, near).is_ok());
    }

    #[test]
    fn certify_examples() {
        let g = certify_positive(
            Objective::Single(ClaimFn::GPrime),
            &ParamBox::new(vec![], Interval::new(1e-3, 0.125)),
            DEFAULT_MAX_DEPTH,
        );
        assert_eq!(g.status, Status::Proven);

        let bad = Claim::GapPositive.certify(&ParamBox::new(vec![3], Interval::new(0.8, 0.83)), DEFAULT_MAX_DEPTH);
        assert_eq!(bad.status, Status::Disproven);
        let w = bad.witness.unwrap();
        assert!(w.q > q_upper(3) && w.q <= 0.83 && w.upper < 0.0);

        let ok = Claim::GapPositive.certify(&ParamBox::new(vec![3], Interval::new(0.01, 0.8)), DEFAULT_MAX_DEPTH);
        assert_eq!(ok.status, Status::Proven);
    }

    #[test]
    fn certify_less_examples() {
        let small = Interval::new(1e-3, 0.125);
        let c = certify_less(ClaimFn::CHolder, ClaimFn::CYoung, &ParamBox::new(vec![3], small), DEFAULT_MAX_DEPTH);
        assert_eq!(c.status, Status::Proven);
        let f = certify_less(ClaimFn::FBound, ClaimFn::One, &ParamBox::new(vec![], small), DEFAULT_MAX_DEPTH);
        assert_eq!(f.status, Status::Proven);
        let r = certify_less(
            ClaimFn::RatioRoot,
            ClaimFn::FBound,
            &ParamBox::new(vec![5], Interval::new(0.01, 0.1)),
            DEFAULT_MAX_DEPTH,
        );
        assert_eq!(r.status, Status::Proven);
    }

    #[test]
    fn unreachable_boxes_are_inconclusive() {
        let c = Claim::HolderBeatsYoung.certify(&ParamBox::new(vec![3], Interval::new(0.85, 0.9)), 10);
        assert_eq!(c.status, Status::Inconclusive);
        assert_eq!(c.subdivisions, 0);
        assert!(c.unresolved_count > 0);
    }

    #[test]
    fn certificates_are_deterministic() {
        let bx = ParamBox::new((2..=12).collect(), Interval::new(1e-3, 0.125));
        let a = Claim::HolderBeatsYoung.certify(&bx, DEFAULT_MAX_DEPTH);
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| Claim::HolderBeatsYoung.certify(&bx, DEFAULT_MAX_DEPTH));
        assert_eq!(a, b);
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.status, Status::Proven);
    }

    #[test]
    fn certificate_text_fields() {
        let c = Claim::GapPositive.certify(&ParamBox::new(vec![3], Interval::new(0.8, 0.83)), 40);
        let text = c.to_text();
        for key in ["schema:", "claim: gap-positive", "status: Disproven", "witness: n=3", "subdivisions:"] {
            assert!(text.contains(key), "{key} missing from\n{text}");
        }
    }

    #[test]
    fn isolate_root_examples() {
        let b = isolate_root(Objective::Single(ClaimFn::Gap), 3, Interval::new(0.8, 0.83), 1e-9).unwrap();
        assert!(b.width() <= 1e-9);
        assert!(b.contains(q_upper(3)) || (b.lo - q_upper(3)).abs() < 1e-15);

        let f1 = Objective::Difference(ClaimFn::FBound, ClaimFn::One);
        let b = isolate_root(f1, 2, Interval::new(0.125, 0.9), 1e-9).unwrap();
        let (mut prev, mut cross) = (minimal::f_bound(0.125).unwrap(), 0.0);
        for i in 1..=100_000 {
            let q = 0.125 + (0.9 - 0.125) * i as f64 / 100_000.0;
            let v = minimal::f_bound(q).unwrap();
            if prev < 1.0 && v >= 1.0 {
                cross = q;
                break;
            }
            prev = v;
        }
        assert!((b.mid() - cross).abs() < 1e-5, "{b} vs {cross}");

        let same = isolate_root(Objective::Single(ClaimFn::Gap), 3, Interval::new(0.1, 0.2), 1e-9);
        assert!(matches!(same, Err(Error::Precondition(_))));
    }

    fn random_box() -> impl Strategy<Value = (u32, f64, f64)> {
        (2u32..=12, 0.0f64..1.0, -8.0f64..-0.5).prop_map(|(n, u, lw)| {
            let top = q_upper(n).min(1.0);
            let w = 10f64.powf(lw) * top;
            let lo = 1e-4 + u * (top - w - 1e-4).max(0.0);
            (n, lo, (lo + w).min(top * (1.0 - 1e-9)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2_000))]

        #[test]
        fn enclosures_contain_point_values((n, lo, hi) in random_box(), ts in prop::array::uniform16(0.0f64..1.0)) {
            prop_assume!(lo < hi);
            let bx = Interval::new(lo, hi);
            for f in ClaimFn::ALL {
                let Ok(e) = f.enclose(n, bx) else { continue };
                for t in ts {
                    let q = lo + t * (hi - lo);
                    if let Some(v) = point_value(f, n, q) {
                        prop_assert!(e.contains(v), "{:?} n={} box {} q={} value {}", f, n, bx, q, v);
                    }
                }
            }
        }

        #[test]
        fn refinement_is_monotone((n, lo, hi) in random_box()) {
            prop_assume!(lo < hi);
            let bx = Interval::new(lo, hi);
            let (l, r) = bx.bisect();
            for f in ClaimFn::ALL {
                if let (Ok(p), Ok(a), Ok(b)) = (f.enclose(n, bx), f.enclose(n, l), f.enclose(n, r)) {
                    prop_assert!(p.contains_interval(&a.hull(&b)), "{:?} n={} {}: {} vs {} {}", f, n, bx, p, a, b);
                }
            }
        }
    }
}
