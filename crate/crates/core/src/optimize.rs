//! Free absorption parameters and their numerical optimization.
//!
//! The closed-form constants fix every Young-inequality parameter to a
//! convenient value (`eps1 = eps2 = A/4`, `eps3 = 1`, absorbed fraction `1/2`,
//! and the three CMC choices). Here those parameters are free: the
//! generalized constants are evaluated for any feasible choice and minimized
//! by a grid-seeded Nelder–Mead search in log (or logit) coordinates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmc::cal_pair;
use crate::domain::ParamPoint;
use crate::error::{Error, Result};
use crate::formulas::{self, CmcSystem};
use crate::minimal::self_power;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YoungEpsilons {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    /// Fraction of the left-hand side spent on absorbing the coupling term.
    pub lambda: f64,
}

impl YoungEpsilons {
    /// The fixed choices behind `C1`, `C3` and `C_Y`.
    pub fn canonical(gap: f64) -> Self {
        YoungEpsilons { eps1: gap / 4.0, eps2: gap / 4.0, eps3: 1.0, lambda: 0.5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmcEpsilons {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
}

impl CmcEpsilons {
    /// `eps1 = A/4`, `eps3 = delta`, `eps2 = A/(4(1+delta)(1+q)^2)`.
    pub fn canonical(q: f64, gap: f64) -> Self {
        let (eps1, eps2, eps3) = formulas::cmc_canonical_eps(q, gap);
        CmcEpsilons { eps1, eps2, eps3 }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::feasibility(format!("{name} must be positive, got {v}")))
    }
}

/// Gradient constant for free `(eps1, eps2)`:
/// `(1/eps1 + 1 + (1+q)^2/eps2) / (A - eps1 - eps2)`.
pub fn c1_general(p: ParamPoint, eps1: f64, eps2: f64) -> Result<f64> {
    let gap = p.require_gap()?;
    positive("eps1", eps1)?;
    positive("eps2", eps2)?;
    let left = gap - eps1 - eps2;
    if !(left > 0.0) {
        return Err(Error::feasibility(format!(
            "eps1 + eps2 = {} must stay below A = {gap}",
            eps1 + eps2
        )));
    }
    Ok(formulas::c1_general(p.q, gap, eps1, eps2))
}

/// `((1+q)^2 + (1+q) eps3) C1 + 1 + (1+q)/eps3`.
pub fn c3_general(p: ParamPoint, c1: f64, eps3: f64) -> Result<f64> {
    positive("eps3", eps3)?;
    if !(c1 > 0.0) {
        return Err(Error::Precondition(format!("C1 must be positive, got {c1}")));
    }
    Ok(formulas::c3_general(p.q, c1, eps3))
}

/// Young closure constant when the absorbed fraction is `lambda`:
/// `C3^(1+q) q^q / ((1+q)^(1+q) lambda^q (1 - lambda))`.
///
/// For fixed `C3` this is minimized at `lambda = q/(1+q)`.
pub fn young_terminal_general(q: f64, c3: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::feasibility(format!("lambda must lie in (0, 1), got {lambda}")));
    }
    if !(q > 0.0) {
        return Err(Error::domain(format!("q must be positive, got {q}")));
    }
    if !(c3 > 0.0) {
        return Err(Error::Precondition(format!("C3 must be positive, got {c3}")));
    }
    let t = 1.0 + q;
    Ok((c3 / t).powf(t) * self_power(q) / (lambda.powf(q) * (1.0 - lambda)))
}

/// Full Young closure constant for free parameters.
pub fn c_young_general(p: ParamPoint, e: YoungEpsilons) -> Result<f64> {
    let c1 = c1_general(p, e.eps1, e.eps2)?;
    let c3 = c3_general(p, c1, e.eps3)?;
    young_terminal_general(p.q, c3, e.lambda)
}

/// `(2(1+q)^2((1+q)^2 C1 + 1))^(1+q)` with `C1` from [`c1_general`].
pub fn c_holder_general(p: ParamPoint, eps1: f64, eps2: f64) -> Result<f64> {
    let c1 = c1_general(p, eps1, eps2)?;
    let s = (1.0 + p.q) * (1.0 + p.q);
    Ok((2.0 * s * (s * c1 + 1.0)).powf(1.0 + p.q))
}

/// `(C0, B0_raw)` from the CMC absorption system with free parameters.
pub fn cmc_general(p: ParamPoint, e: CmcEpsilons) -> Result<(f64, f64)> {
    let sys = cmc_system(p, e)?;
    Ok((sys.c0, sys.b0_raw))
}

fn cmc_system(p: ParamPoint, e: CmcEpsilons) -> Result<CmcSystem<f64>> {
    let gap = p.require_gap()?;
    positive("eps1", e.eps1)?;
    positive("eps2", e.eps2)?;
    positive("eps3", e.eps3)?;
    let sys = formulas::cmc_general(p.n, p.q, gap, e.eps1, e.eps2, e.eps3);
    if !(sys.left > 0.0) {
        return Err(Error::feasibility(format!(
            "surviving gradient coefficient {} is not positive",
            sys.left
        )));
    }
    Ok(sys)
}

/// `calC1 + weight * calC2` for free CMC parameters.
pub fn cmc_objective(p: ParamPoint, e: CmcEpsilons, weight: f64) -> Result<f64> {
    let sys = cmc_system(p, e)?;
    let q = p.q;
    let a = formulas::closure_a(q, sys.c0);
    let b = formulas::closure_b_raw(p.n, q, sys.b0_raw.max(0.0)).max(0.0);
    let (c1, c2) = cal_pair(q, a, b);
    Ok(if weight == 0.0 { c1 } else { c1 + weight * c2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// `C_Y` over `(eps1, eps2, eps3, lambda)`.
    Young,
    /// `C_H` over `(eps1, eps2)`.
    Holder,
    /// `calC1 + weight * calC2` over the CMC `(eps1, eps2, eps3)`.
    Cmc,
}

impl Target {
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Target::Young => &["eps1", "eps2", "eps3", "lambda"],
            Target::Holder => &["eps1", "eps2"],
            Target::Cmc => &["eps1", "eps2", "eps3"],
        }
    }
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "young" | "cy" | "young-cy" => Ok(Target::Young),
            "holder" | "ch" | "holder-ch" => Ok(Target::Holder),
            "cmc" | "calc1" | "cmc-calc1" => Ok(Target::Cmc),
            _ => Err(Error::Precondition(format!("unknown optimization target '{s}'"))),
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Target::Young => "young",
            Target::Holder => "holder",
            Target::Cmc => "cmc",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizeOptions {
    pub seeds_per_axis: usize,
    /// Iteration cap of a single simplex run.
    pub max_iterations: usize,
    /// Simplex runs stop once the spread of vertex values falls below this
    /// fraction of the best value.
    pub rel_tol: f64,
    /// Weight of `calC2` in the CMC objective.
    pub cmc_weight: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions { seeds_per_axis: 32, max_iterations: 200, rel_tol: 1e-12, cmc_weight: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub target: Target,
    pub point: ParamPoint,
    pub param_names: Vec<String>,
    pub best_params: Vec<f64>,
    pub best_value: f64,
    pub canonical_params: Vec<f64>,
    pub canonical_value: f64,
    /// `best_value / canonical_value`, in `(0, 1]`.
    pub improvement_ratio: f64,
    pub evaluations: usize,
    pub iterations: usize,
    pub converged: bool,
}

/// Each parameter is searched between `scale * 10^-RANGE_DECADES` and its
/// natural scale (the gap for `eps1`, `eps2`, ...).
pub const RANGE_DECADES: i32 = 6;
/// The absorbed fraction is searched over `logit` values in `[-LOGIT_BOUND, LOGIT_BOUND]`.
pub const LOGIT_BOUND: f64 = 40.0;
/// Extra simplex runs allowed after the first one.
pub const MAX_RESTARTS: usize = 8;

/// One search coordinate: its map to a parameter, its hard bounds and the
/// range covered by the seed grid (both in coordinates).
#[derive(Debug, Clone, Copy)]
struct Axis {
    logit: bool,
    lo: f64,
    hi: f64,
    seed_lo: f64,
    seed_hi: f64,
}

impl Axis {
    /// `param = exp(x)` on `[lo, hi]`, seeded on `[seed_lo, seed_hi]`.
    fn log(lo: f64, hi: f64, seed_lo: f64, seed_hi: f64) -> Self {
        Axis { logit: false, lo: lo.ln(), hi: hi.ln(), seed_lo: seed_lo.ln(), seed_hi: seed_hi.ln() }
    }

    /// A log axis below `scale`, seeded over its top three decades.
    fn scaled(scale: f64) -> Self {
        Axis::log(scale * 10f64.powi(-RANGE_DECADES), scale, scale * 1e-3, scale)
    }

    /// `param = 1/(1 + exp(-x))`, seeded at cell midpoints of `(0, 1)`.
    fn logit() -> Self {
        Axis { logit: true, lo: -LOGIT_BOUND, hi: LOGIT_BOUND, seed_lo: 0.0, seed_hi: 1.0 }
    }

    fn clamp(self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    fn to_param(self, x: f64) -> f64 {
        let x = self.clamp(x);
        if self.logit {
            1.0 / (1.0 + (-x).exp())
        } else {
            x.exp()
        }
    }

    fn to_coord(self, v: f64) -> f64 {
        if self.logit {
            (v / (1.0 - v)).ln()
        } else {
            v.ln()
        }
    }

    fn seed(self, k: usize, count: usize) -> f64 {
        if self.logit {
            self.to_coord((k as f64 + 0.5) / count as f64)
        } else {
            self.seed_lo + (self.seed_hi - self.seed_lo) * k as f64 / (count - 1) as f64
        }
    }
}

/// An objective over raw parameters, plus its search axes and the canonical
/// parameter vector.
struct Problem {
    axes: Vec<Axis>,
    canonical: Vec<f64>,
    eval: Box<dyn Fn(&[f64]) -> Result<f64> + Sync>,
}

fn young_axes(gap: f64) -> [Axis; 4] {
    [Axis::scaled(gap), Axis::scaled(gap), Axis::log(1e-8, 1e4, 1e-5, 10.0), Axis::logit()]
}

fn cmc_axes(q: f64, gap: f64) -> [Axis; 3] {
    let s = (1.0 + q) * (1.0 + q);
    [Axis::scaled(gap), Axis::scaled(gap / s), Axis::scaled(gap / s)]
}

impl Problem {
    fn new(target: Target, p: ParamPoint, weight: f64) -> Result<Self> {
        let gap = p.require_gap()?;
        let q = p.q;
        let problem = match target {
            Target::Young => {
                if !(q > 0.0) {
                    return Err(Error::domain("the Young target needs q > 0"));
                }
                let c = YoungEpsilons::canonical(gap);
                Problem {
                    axes: young_axes(gap).to_vec(),
                    canonical: vec![c.eps1, c.eps2, c.eps3, c.lambda],
                    eval: Box::new(move |v| {
                        c_young_general(p, YoungEpsilons { eps1: v[0], eps2: v[1], eps3: v[2], lambda: v[3] })
                    }),
                }
            }
            Target::Holder => Problem {
                axes: young_axes(gap)[..2].to_vec(),
                canonical: vec![gap / 4.0, gap / 4.0],
                eval: Box::new(move |v| c_holder_general(p, v[0], v[1])),
            },
            Target::Cmc => {
                let c = CmcEpsilons::canonical(q, gap);
                Problem {
                    axes: cmc_axes(q, gap).to_vec(),
                    canonical: vec![c.eps1, c.eps2, c.eps3],
                    eval: Box::new(move |v| {
                        cmc_objective(p, CmcEpsilons { eps1: v[0], eps2: v[1], eps3: v[2] }, weight)
                    }),
                }
            }
        };
        Ok(problem)
    }

    fn params(&self, x: &[f64]) -> Vec<f64> {
        self.axes.iter().zip(x).map(|(a, &c)| a.to_param(c)).collect()
    }

    fn coords(&self, v: &[f64]) -> Vec<f64> {
        self.axes.iter().zip(v).map(|(a, &p)| a.to_coord(p)).collect()
    }

    /// Objective at the box projection of `x`; infeasible points evaluate
    /// to +inf.
    fn value(&self, x: &[f64]) -> f64 {
        finite_or_inf((self.eval)(&self.params(x)))
    }
}

fn finite_or_inf(v: Result<f64>) -> f64 {
    match v {
        Ok(v) if v.is_finite() => v,
        _ => f64::INFINITY,
    }
}

/// Minimizes the chosen constant over its free parameters at `p`.
///
/// Parameters are confined to a box (see [`RANGE_DECADES`]). A full grid of
/// `seeds_per_axis` points per coordinate is evaluated in parallel with an
/// order-independent minimum, the canonical choice is added as one more
/// seed, and the best seed is refined by Nelder–Mead on the box projection,
/// restarted until a converged run no longer improves. The result is
/// bit-identical across runs and thread counts.
///
/// With weight 0 the CMC objective keeps decreasing as `eps3 -> 0`, so its
/// minimum sits on the lower end of the `eps3` range.
pub fn optimize(target: Target, p: ParamPoint, opts: &OptimizeOptions) -> Result<OptimizationResult> {
    let problem = Problem::new(target, p, opts.cmc_weight)?;
    let dim = problem.axes.len();
    let per_axis = opts.seeds_per_axis.max(2);
    let total = per_axis.pow(dim as u32);

    let grid_point = |mut idx: usize| -> Vec<f64> {
        let mut x = vec![0.0; dim];
        for d in (0..dim).rev() {
            x[d] = problem.axes[d].seed(idx % per_axis, per_axis);
            idx /= per_axis;
        }
        x
    };
    let (grid_value, grid_idx) = (0..total)
        .into_par_iter()
        .map(|i| (problem.value(&grid_point(i)), i))
        .reduce(|| (f64::INFINITY, usize::MAX), |a, b| if lex_less(b, a) { b } else { a });

    let canonical_value = (problem.eval)(&problem.canonical)?;
    let canonical_x = problem.coords(&problem.canonical);
    let grid_x = grid_point(grid_idx);
    let mut x = if grid_value < canonical_value
        || (grid_value == canonical_value && problem.params(&grid_x) < problem.canonical)
    {
        grid_x
    } else {
        canonical_x
    };
    let mut value = problem.value(&x);
    let mut evaluations = total + 1;
    let mut iterations = 0;
    let mut converged = false;
    for _ in 0..=MAX_RESTARTS {
        let steps: Vec<f64> = problem
            .axes
            .iter()
            .zip(&x)
            .map(|(a, &c)| if a.clamp(c) + 0.1 > a.hi { -0.1 } else { 0.1 })
            .collect();
        let run = nelder_mead(|y| problem.value(y), &x, &steps, opts.max_iterations, opts.rel_tol);
        evaluations += run.evaluations;
        iterations += run.iterations;
        let gain = value - run.value;
        if run.value <= value {
            x = run.x;
            value = run.value;
        }
        if run.converged && !(gain > 1e-3 * opts.rel_tol * value.abs()) {
            converged = true;
            break;
        }
    }
    let mut best_params = problem.params(&x);
    let mut best_value = value;
    if !(best_value <= canonical_value) {
        best_params = problem.canonical.clone();
        best_value = canonical_value;
    }
    Ok(OptimizationResult {
        target,
        point: p,
        param_names: target.param_names().iter().map(|s| s.to_string()).collect(),
        best_params,
        best_value,
        canonical_params: problem.canonical.clone(),
        canonical_value,
        improvement_ratio: best_value / canonical_value,
        evaluations,
        iterations,
        converged,
    })
}

/// Minimum found by [`grid_minimum`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMinimum {
    pub params: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Brute-force minimum over the same box as [`optimize`], by a zooming grid.
///
/// Each level evaluates `per_axis` points per coordinate over the current
/// box and recentres a box of four cells on the best one, clipped to the
/// search bounds; levels repeat until the cells are narrower than `1e-7` in
/// search coordinates. The Young target is split along its monotone
/// structure (`C_Y` increases with `C3`, which increases with `C1`):
/// `(eps1, eps2)` minimize `C1`, then `eps3` minimizes `C3`, then `lambda`
/// minimizes the terminal factor.
pub fn grid_minimum(target: Target, p: ParamPoint, weight: f64, per_axis: usize) -> Result<GridMinimum> {
    let gap = p.require_gap()?;
    let q = p.q;
    let [ax1, ax2, ax3, ax_l] = young_axes(gap);
    let mut evaluations = 0;
    let c1_search = |evals: &mut usize| {
        let (x, _) = zoom(&[ax1, ax2], per_axis, evals, |x| {
            finite_or_inf(c1_general(p, ax1.to_param(x[0]), ax2.to_param(x[1])))
        });
        (ax1.to_param(x[0]), ax2.to_param(x[1]))
    };
    match target {
        Target::Young => {
            if !(q > 0.0) {
                return Err(Error::domain("the Young target needs q > 0"));
            }
            let (e1, e2) = c1_search(&mut evaluations);
            let c1 = c1_general(p, e1, e2)?;
            let (x3, _) = zoom(&[ax3], per_axis, &mut evaluations, |x| {
                finite_or_inf(c3_general(p, c1, ax3.to_param(x[0])))
            });
            let e3 = ax3.to_param(x3[0]);
            let c3 = c3_general(p, c1, e3)?;
            let (xl, _) = zoom(&[ax_l], per_axis, &mut evaluations, |x| {
                finite_or_inf(young_terminal_general(q, c3, ax_l.to_param(x[0])))
            });
            let lambda = ax_l.to_param(xl[0]);
            let value = young_terminal_general(q, c3, lambda)?;
            Ok(GridMinimum { params: vec![e1, e2, e3, lambda], value, evaluations })
        }
        Target::Holder => {
            let (e1, e2) = c1_search(&mut evaluations);
            let value = c_holder_general(p, e1, e2)?;
            Ok(GridMinimum { params: vec![e1, e2], value, evaluations })
        }
        Target::Cmc => {
            let axes = cmc_axes(q, gap);
            let params = |x: &[f64]| -> Vec<f64> { axes.iter().zip(x).map(|(a, &c)| a.to_param(c)).collect() };
            let (x, value) = zoom(&axes, per_axis, &mut evaluations, |x| {
                let v = params(x);
                finite_or_inf(cmc_objective(p, CmcEpsilons { eps1: v[0], eps2: v[1], eps3: v[2] }, weight))
            });
            Ok(GridMinimum { params: params(&x), value, evaluations })
        }
    }
}

fn zoom(
    axes: &[Axis],
    per_axis: usize,
    evaluations: &mut usize,
    f: impl Fn(&[f64]) -> f64 + Sync,
) -> (Vec<f64>, f64) {
    const CELL_TOL: f64 = 1e-7;
    const MAX_LEVELS: usize = 64;
    let dim = axes.len();
    let per_axis = per_axis.max(4);
    let mut lo: Vec<f64> = axes.iter().map(|a| a.lo).collect();
    let mut hi: Vec<f64> = axes.iter().map(|a| a.hi).collect();
    let total = per_axis.pow(dim as u32);
    let mut best = (f64::INFINITY, vec![0.0; dim]);
    for _ in 0..MAX_LEVELS {
        let cells: Vec<f64> = (0..dim).map(|d| (hi[d] - lo[d]) / (per_axis - 1) as f64).collect();
        let point = |mut idx: usize| -> Vec<f64> {
            let mut x = vec![0.0; dim];
            for d in (0..dim).rev() {
                let k = idx % per_axis;
                x[d] = if k == per_axis - 1 { hi[d] } else { lo[d] + cells[d] * k as f64 };
                idx /= per_axis;
            }
            x
        };
        let (v, i) = (0..total)
            .into_par_iter()
            .map(|i| {
                let v = f(&point(i));
                (if v.is_nan() { f64::INFINITY } else { v }, i)
            })
            .reduce(|| (f64::INFINITY, usize::MAX), |a, b| if lex_less(b, a) { b } else { a });
        *evaluations += total;
        if v < best.0 {
            best = (v, point(i));
        }
        if !best.0.is_finite() || cells.iter().all(|&c| c < CELL_TOL) {
            break;
        }
        for d in 0..dim {
            lo[d] = (best.1[d] - 2.0 * cells[d]).max(axes[d].lo);
            hi[d] = (best.1[d] + 2.0 * cells[d]).min(axes[d].hi);
        }
    }
    (best.1, best.0)
}

fn lex_less(a: (f64, usize), b: (f64, usize)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

struct SimplexOutcome {
    x: Vec<f64>,
    value: f64,
    evaluations: usize,
    iterations: usize,
    converged: bool,
}

/// Nelder–Mead with the standard coefficients (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2). The initial simplex offsets `start` along
/// each axis by `steps[i]`.
fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    steps: &[f64],
    max_iterations: usize,
    rel_tol: f64,
) -> SimplexOutcome {
    let dim = start.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        f(x)
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((start.to_vec(), eval(start)));
    for i in 0..dim {
        let mut x = start.to_vec();
        x[i] += steps[i];
        let v = eval(&x);
        simplex.push((x, v));
    }

    let combine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(&ai, &bi)| ai + t * (bi - ai)).collect()
    };

    let mut iterations = 0;
    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[dim].1;
        if best.is_finite() && (worst - best) <= rel_tol * best.abs() {
            converged = true;
            break;
        }
        if iterations >= max_iterations {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let worst_x = simplex[dim].0.clone();
        let reflected = combine(&centroid, &worst_x, -1.0);
        let fr = eval(&reflected);
        if fr < simplex[0].1 {
            let expanded = combine(&centroid, &worst_x, -2.0);
            let fe = eval(&expanded);
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
            continue;
        }
        let contracted = if fr < worst {
            combine(&centroid, &reflected, 0.5)
        } else {
            combine(&centroid, &worst_x, 0.5)
        };
        let fc = eval(&contracted);
        if fc < worst.min(fr) {
            simplex[dim] = (contracted, fc);
            continue;
        }
        let best_x = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = combine(&best_x, &vertex.0, 0.5);
            let v = eval(&x);
            *vertex = (x, v);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    SimplexOutcome { x, value, evaluations, iterations, converged }
}
