use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use ssy_closure::certify::{Claim, ParamBox, Status, DEFAULT_Q_MIN};
use ssy_closure::cmc::{local_estimate, threshold_radius};
use ssy_closure::domain::{bernstein_range, q_upper};
use ssy_closure::minimal::{crossover_q, f_bound};
use ssy_closure::optimize::{grid_minimum, optimize as run_optimize, OptimizeOptions, Target};
use ssy_closure::oracle::{oracle_check as run_oracle, OracleGrid};
use ssy_closure::{CmcConstantBundle, CmcScale, ConstantBundle, Interval, ParamPoint};

use crate::args::{
    parse_int_list, parse_n_list, parse_q, BernsteinArgs, CertifyArgs, EvalArgs, Format, OptimizeArgs,
    OracleArgs, Output, QSpec, SweepArgs,
};
use crate::report::{num, KeyValue, ReportRow, SWEEP_COLUMNS, SWEEP_SCHEMA_LINE};
use crate::CliError;

/// Relative tolerance of `optimize --check-grid`.
const GRID_CHECK_TOL: f64 = 1e-9;

fn emit(output: &Output, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json(value: &impl Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn no_csv(format: Format, command: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        Err(CliError::Usage(format!("--format csv is not available for {command}")))
    } else {
        Ok(())
    }
}

fn sweep_csv(rows: &[ReportRow]) -> String {
    let mut s = String::new();
    s.push_str(SWEEP_SCHEMA_LINE);
    s.push('\n');
    s.push_str(&SWEEP_COLUMNS.join(","));
    s.push('\n');
    for r in rows {
        s.push_str(&r.csv_line());
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct EvalDocument {
    minimal: Option<ConstantBundle>,
    cmc: CmcConstantBundle,
    local: Option<ssy_closure::LocalEstimate>,
    threshold_radius: Option<f64>,
}

pub fn eval(a: EvalArgs, out: &mut dyn Write, cmc_only: bool) -> Result<(), CliError> {
    let p = ParamPoint::admissible(a.n, a.q)?;
    let m = ConstantBundle::new(p)?;
    let c = CmcConstantBundle::new(p)?;
    let scale = match (a.h, a.r, a.theta) {
        (Some(h), Some(r), Some(theta)) => Some(CmcScale::new(h, r, theta)?),
        (None, None, None) => None,
        _ => return Err(CliError::Usage("--H, --R and --theta go together".into())),
    };
    let local = scale.map(|s| local_estimate(p, s)).transpose()?;
    let radius = match (a.h, a.theta) {
        (Some(h), Some(theta)) => Some(threshold_radius(h, theta)?),
        _ => None,
    };
    let format = a.output.format.unwrap_or(Format::Text);
    let text = match format {
        Format::Structured => json(&EvalDocument {
            minimal: (!cmc_only).then_some(m),
            cmc: c,
            local,
            threshold_radius: radius,
        })?,
        Format::Csv => {
            if cmc_only {
                no_csv(format, "cmc")?;
            }
            sweep_csv(&[ReportRow::compute(a.n, a.q)])
        }
        Format::Text => {
            let mut kv = KeyValue::new();
            kv.put("n", p.n).num("q", p.q);
            if !cmc_only {
                kv.num("A", m.gap)
                    .num("C1", m.c1)
                    .num("C3", m.c3)
                    .num("CY", m.c_young)
                    .num("C3H", m.c3_holder)
                    .num("CH", m.c_holder)
                    .num("ratio", m.ratio)
                    .num("ratio_root", m.ratio_root);
                if let Ok(f) = f_bound(p.q) {
                    kv.num("f_bound", f);
                }
                kv.put("CH_lt_CY", m.c_holder < m.c_young);
            }
            kv.num("delta", c.delta)
                .num("C0", c.c0)
                .num("B0_raw", c.b0_raw)
                .num("B0", c.b0)
                .num("a", c.a)
                .num("b", c.b)
                .num("calC1", c.cal_c1)
                .num("calC2", c.cal_c2);
            if let (Some(s), Some(l)) = (scale, local) {
                kv.num("H", s.h)
                    .num("R", s.r)
                    .num("theta", s.theta)
                    .num("scale_product", s.scale_product())
                    .put("regime", l.regime)
                    .num("gradient_coefficient", l.gradient_coefficient)
                    .num("curvature_coefficient", l.curvature_coefficient)
                    .num("combined_small_scale", l.combined_small_scale);
            }
            if let Some(r) = radius {
                kv.num("threshold_radius", r);
            }
            kv.finish()
        }
    };
    emit(&a.output, &text, out)
}

fn grid_points(n: &[u32], q: &[f64]) -> Vec<(u32, f64)> {
    n.iter().flat_map(|&n| q.iter().map(move |&q| (n, q))).collect()
}

pub fn sweep(a: SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let points = grid_points(&a.grid.n_values()?, &a.grid.q_values()?);
    let rows: Vec<ReportRow> = points.par_iter().map(|&(n, q)| ReportRow::compute(n, q)).collect();
    let text = match a.output.format.unwrap_or(Format::Csv) {
        Format::Structured => json(&rows)?,
        Format::Csv | Format::Text => sweep_csv(&rows),
    };
    emit(&a.output, &text, out)
}

#[derive(Serialize)]
struct CompareRow {
    n: u32,
    q: f64,
    #[serde(rename = "CY")]
    c_young: Option<f64>,
    #[serde(rename = "CH")]
    c_holder: Option<f64>,
    ratio: Option<f64>,
    ratio_root: Option<f64>,
    f_bound: Option<f64>,
    holder_wins: Option<bool>,
}

#[derive(Serialize)]
struct Crossover {
    n: u32,
    /// Empty when the closures do not cross above `q = 1/8`.
    bracket: Option<(f64, f64)>,
}

#[derive(Serialize)]
struct CompareDocument {
    rows: Vec<CompareRow>,
    crossover: Vec<Crossover>,
}

pub fn compare(a: SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let ns = a.grid.n_values()?;
    let points = grid_points(&ns, &a.grid.q_values()?);
    let rows: Vec<CompareRow> = points
        .par_iter()
        .map(|&(n, q)| {
            let b = ParamPoint::new(n, q).and_then(ConstantBundle::new).ok();
            CompareRow {
                n,
                q,
                c_young: b.map(|b| b.c_young),
                c_holder: b.map(|b| b.c_holder),
                ratio: b.map(|b| b.ratio),
                ratio_root: b.map(|b| b.ratio_root),
                f_bound: b.and_then(|_| f_bound(q).ok()),
                holder_wins: b.map(|b| b.c_holder < b.c_young),
            }
        })
        .collect();
    let crossover = ns
        .par_iter()
        .map(|&n| {
            let c = crossover_q(n)?;
            Ok(Crossover { n, bracket: (!c.is_empty()).then_some((c.lower, c.upper)) })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let cell = |v: Option<f64>| v.map(num).unwrap_or_default();
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Structured => json(&CompareDocument { rows, crossover })?,
        Format::Csv => {
            let mut s = String::from("# schema_version=ssy-compare/1\nn,q,CY,CH,ratio,ratio_root,f_bound,holder_wins,status\n");
            for r in &rows {
                let wins = r.holder_wins.map(|w| w.to_string()).unwrap_or_default();
                let status = if r.c_young.is_some() { "ok" } else { "domain_error" };
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.n,
                    num(r.q),
                    cell(r.c_young),
                    cell(r.c_holder),
                    cell(r.ratio),
                    cell(r.ratio_root),
                    cell(r.f_bound),
                    wins,
                    status
                ));
            }
            s
        }
        Format::Text => {
            let mut kv = KeyValue::new();
            for r in &rows {
                kv.put("n", r.n).num("q", r.q);
                match (r.c_young, r.c_holder) {
                    (Some(cy), Some(ch)) => {
                        kv.num("CY", cy)
                            .num("CH", ch)
                            .put("ratio", cell(r.ratio))
                            .put("ratio_root", cell(r.ratio_root));
                        if let Some(f) = r.f_bound {
                            kv.num("f_bound", f);
                        }
                        kv.put("holder_wins", ch < cy);
                    }
                    _ => {
                        kv.put("status", "domain_error");
                    }
                }
                kv.blank();
            }
            for c in &crossover {
                match c.bracket {
                    Some((lo, hi)) => kv.put(&format!("crossover n={}", c.n), format!("[{}, {}]", num(lo), num(hi))),
                    None => kv.put(&format!("crossover n={}", c.n), "none"),
                };
            }
            kv.finish()
        }
    };
    emit(&a.output, &text, out)
}

pub fn certify(a: CertifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let claim: Claim = a.claim.parse()?;
    let n_values = match &a.n {
        Some(s) => parse_n_list(s)?,
        None if claim.objective().depends_on_n() => {
            return Err(CliError::Usage(format!("claim {} needs --n", claim.id())))
        }
        None => Vec::new(),
    };
    if n_values.iter().any(|&n| n < 2) {
        return Err(CliError::Domain("dimensions must be >= 2".into()));
    }
    let (lo, hi) = match (&a.q, a.q_min, a.q_max) {
        (Some(q), None, None) => match parse_q(q)? {
            QSpec::Range(lo, hi) => (lo, hi),
            QSpec::Values(v) if v.len() == 1 => (v[0], v[0]),
            QSpec::Values(_) => return Err(CliError::Usage("--q must be an interval a..b".into())),
        },
        (None, lo, Some(hi)) => (lo.unwrap_or(DEFAULT_Q_MIN), hi),
        (None, _, None) => return Err(CliError::Usage("give --q a..b or --q-max".into())),
        _ => return Err(CliError::Usage("use either --q or --q-min/--q-max, not both".into())),
    };
    if !(lo.is_finite() && hi.is_finite() && lo <= hi && lo >= 0.0) {
        return Err(CliError::Domain(format!("invalid q interval [{lo}, {hi}]")));
    }
    let bx = ParamBox::new(n_values, Interval::new(lo, hi));
    let cert = claim.certify(&bx, a.max_depth);
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Structured => json(&cert)?,
        f => {
            no_csv(f, "certify")?;
            cert.to_text()
        }
    };
    emit(&a.output, &text, out)?;
    match cert.status {
        Status::Proven => Ok(()),
        s => Err(CliError::Failed(format!("claim {} is {s}", claim.id()))),
    }
}

#[derive(Serialize)]
struct OptimizeEntry {
    result: ssy_closure::optimize::OptimizationResult,
    grid_value: Option<f64>,
    grid_deviation: Option<f64>,
}

pub fn optimize(a: OptimizeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let target: Target = a.target.parse()?;
    let opts = OptimizeOptions { cmc_weight: a.weight, ..Default::default() };
    if !(a.weight >= 0.0 && a.weight.is_finite()) {
        return Err(CliError::Usage(format!("--weight must be finite and >= 0, got {}", a.weight)));
    }
    let mut entries = Vec::new();
    for (n, q) in grid_points(&a.grid.n_values()?, &a.grid.q_values()?) {
        let p = ParamPoint::admissible(n, q)?;
        let result = run_optimize(target, p, &opts)?;
        let (grid_value, grid_deviation) = if a.check_grid {
            let g = grid_minimum(target, p, a.weight, 64)?;
            (Some(g.value), Some((result.best_value - g.value).abs() / g.value))
        } else {
            (None, None)
        };
        entries.push(OptimizeEntry { result, grid_value, grid_deviation });
    }
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Structured => json(&entries)?,
        f => {
            no_csv(f, "optimize")?;
            let mut kv = KeyValue::new();
            for e in &entries {
                let r = &e.result;
                kv.put("target", r.target).put("n", r.point.n).num("q", r.point.q);
                if r.target == Target::Cmc {
                    kv.num("weight", a.weight);
                }
                kv.num("canonical_value", r.canonical_value).num("best_value", r.best_value).num("improvement_ratio", r.improvement_ratio);
                for (name, (best, canonical)) in r.param_names.iter().zip(r.best_params.iter().zip(&r.canonical_params)) {
                    kv.num(&format!("best_{name}"), *best).num(&format!("canonical_{name}"), *canonical);
                }
                kv.put("iterations", r.iterations).put("evaluations", r.evaluations).put("converged", r.converged);
                if let (Some(v), Some(d)) = (e.grid_value, e.grid_deviation) {
                    kv.num("grid_value", v).num("grid_deviation", d);
                }
                kv.blank();
            }
            kv.finish()
        }
    };
    emit(&a.output, &text, out)?;
    match entries.iter().filter_map(|e| e.grid_deviation).find(|&d| !(d <= GRID_CHECK_TOL)) {
        Some(d) => Err(CliError::Failed(format!("grid deviation {d:e} exceeds {GRID_CHECK_TOL:e}"))),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct BernsteinEntry {
    n: u32,
    lower: f64,
    upper: f64,
    nonempty: bool,
}

pub fn bernstein(a: BernsteinArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let entries = parse_n_list(&a.n)?
        .into_iter()
        .map(|n| {
            let r = bernstein_range(n)?;
            Ok(BernsteinEntry { n, lower: r.lower, upper: r.upper, nonempty: !r.is_empty() })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Structured => json(&entries)?,
        f => {
            no_csv(f, "bernstein")?;
            let mut kv = KeyValue::new();
            for e in &entries {
                kv.put("n", e.n);
                if e.nonempty {
                    kv.put("range", format!("({}, {})", num(e.lower), num(e.upper)));
                } else {
                    kv.put("range", "empty");
                }
                kv.put("nonempty", e.nonempty).num("q_upper", q_upper(e.n)).blank();
            }
            kv.finish()
        }
    };
    emit(&a.output, &text, out)
}

pub fn oracle_check(a: OracleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let boundary_exponents = if a.near_boundary == "none" {
        Vec::new()
    } else {
        parse_int_list(&a.near_boundary)?.into_iter().map(|k| k as i32).collect()
    };
    let grid = OracleGrid { n_values: parse_n_list(&a.n)?, q_steps: a.steps, boundary_exponents };
    if grid.points().is_empty() {
        return Err(CliError::Usage("oracle grid is empty".into()));
    }
    let report = run_oracle(&grid)?;
    let text = match a.output.format.unwrap_or(Format::Text) {
        Format::Structured => json(&report)?,
        f => {
            no_csv(f, "oracle-check")?;
            let mut kv = KeyValue::new();
            kv.put("points", report.points.len())
                .put("regular_points", report.regular_count)
                .put("max_regular_deviation", format!("{:e}", report.max_regular))
                .put("regular_tolerance", format!("{:e}", ssy_closure::oracle::REGULAR_TOL))
                .put("near_boundary_points", report.near_boundary_count)
                .put("max_near_boundary_deviation", format!("{:e}", report.max_near_boundary))
                .put("near_boundary_tolerance", format!("{:e}", ssy_closure::oracle::NEAR_BOUNDARY_TOL));
            if let Some((p, f)) = report.worst() {
                kv.put("worst", format!("{} at n={} q={} ({:e})", f.field, p.point.n, num(p.point.q), f.deviation));
            }
            kv.put("status", if report.pass { "pass" } else { "fail" });
            kv.finish()
        }
    };
    emit(&a.output, &text, out)?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Failed("oracle deviation exceeds tolerance".into()))
    }
}
