//! End-to-end acceptance run. Prints one line per criterion to stderr.

use std::io::Write;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ssy_closure::cmc::{self, CmcScale, Regime};
use ssy_closure::domain::{bernstein_range, decay_exponent, q_upper};
use ssy_closure::minimal::{self, f_bound};
use ssy_closure::optimize::{self, OptimizeOptions, Target};
use ssy_closure::{formulas, ParamPoint, Scalar};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn point(n: u32, q: f64) -> ParamPoint {
    ParamPoint::new(n, q).unwrap()
}

fn ssy(args: &[&str]) -> (i32, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_ssy")).args(args).output().expect("spawn ssy");
    let elapsed = start.elapsed();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), elapsed)
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

#[derive(Clone, Debug, PartialEq)]
struct Q(BigRational);

macro_rules! q_op {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for Q {
            type Output = Q;
            fn $f(self, o: Q) -> Q {
                Q(self.0 $op o.0)
            }
        }
    };
}
q_op!(Add, add, +);
q_op!(Sub, sub, -);
q_op!(Mul, mul, *);
q_op!(Div, div, /);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Scalar for Q {
    fn from_i64(v: i64) -> Q {
        Q(BigRational::from_integer(BigInt::from(v)))
    }
}

fn ratio(a: i64, b: i64) -> Q {
    Q(BigRational::new(a.into(), b.into()))
}

fn criterion_1() -> Outcome {
    let f = f_bound(0.125).map_err(|e| e.to_string())?;
    ensure((f - 0.9497).abs() <= 5e-4, || format!("f(0.125) = {f}"))?;
    Ok(format!("f(0.125) = {f:.6}"))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=7 {
        let dev: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&q| {
                let p = point(n, q);
                (minimal::c_holder(p).unwrap() / minimal::c_young(p).unwrap() - 0.5).abs()
            })
            .collect();
        ensure(dev[0] > dev[1] && dev[1] > dev[2], || format!("n={n}: not decreasing {dev:?}"))?;
        ensure(dev[2] < 1e-2, || format!("n={n}: deviation {} at q=1e-4", dev[2]))?;
        worst = worst.max(dev[2]);
    }
    Ok(format!("max |CH/CY - 1/2| at q=1e-4 is {worst:.3e}"))
}

fn criterion_3() -> Outcome {
    let (code, text, t) = ssy(&["certify", "holder-beats-young", "--n", "2..12", "--q", "1e-3..0.125"]);
    ensure(code == 0, || format!("exit {code}\n{text}"))?;
    ensure(field(&text, "status") == Some("Proven"), || format!("status line missing\n{text}"))?;
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!(
        "Proven, {} subdivisions, {:.2} s",
        field(&text, "subdivisions").unwrap_or("?"),
        t.as_secs_f64()
    ))
}

fn criterion_4() -> Outcome {
    let (code, text, t) = ssy(&["certify", "f-monotone", "--q", "1e-3..0.9"]);
    ensure(code == 0, || format!("exit {code}\n{text}"))?;
    ensure(field(&text, "status") == Some("Proven"), || format!("status line missing\n{text}"))?;
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!("g' > 0 Proven on [1e-3, 0.9], {:.2} s", t.as_secs_f64()))
}

fn criterion_5() -> Outcome {
    let r5 = bernstein_range(5).map_err(|e| e.to_string())?;
    ensure(
        !r5.empty && r5.lower == 0.5 && r5.upper == (0.4f64).sqrt() && r5.lower_open && r5.upper_open,
        || format!("n=5 range {r5:?}"),
    )?;
    let mut sampled = 0;
    for n in 2..=12u32 {
        let r = bernstein_range(n).map_err(|e| e.to_string())?;
        ensure(r.empty == (n >= 6), || format!("n={n}: emptiness {}", r.empty))?;
        if r.empty {
            continue;
        }
        for k in 1..=100 {
            let q = r.lower + (r.upper - r.lower) * k as f64 / 101.0;
            let p = point(n, q);
            ensure(decay_exponent(p) < 0.0, || format!("n={n} q={q}: exponent {}", decay_exponent(p)))?;
            sampled += 1;
        }
    }
    Ok(format!("n=5 range (0.5, {:.6}), {sampled} sampled exponents negative", r5.upper))
}

fn criterion_6() -> Outcome {
    let qs = [ratio(0, 1), ratio(1, 8), ratio(1, 3), ratio(1, 20)];
    let mut checks = 0;
    for n in 2..=12u32 {
        for q in &qs {
            let a = formulas::gap(n, q.clone());
            if a.0 <= BigRational::from_integer(0.into()) {
                continue;
            }
            let quarter = a.clone() / Q::from_i64(4);
            let c1 = formulas::c1_general(q.clone(), a.clone(), quarter.clone(), quarter.clone());
            ensure(c1 == formulas::c1(q.clone(), a.clone()), || format!("C1 mismatch n={n} q={q:?}"))?;
            let c3 = formulas::c3_general(q.clone(), c1.clone(), Q::from_i64(1));
            ensure(c3 == formulas::c3_young(q.clone(), a.clone()), || format!("C3 mismatch n={n} q={q:?}"))?;
            let (e1, e2, e3) = formulas::cmc_canonical_eps(q.clone(), a.clone());
            let sys = formulas::cmc_general(n, q.clone(), a.clone(), e1, e2, e3);
            ensure(sys.left == quarter, || format!("left mismatch n={n} q={q:?}"))?;
            ensure(sys.c0 == formulas::c0_cmc(q.clone(), a.clone()), || format!("C0 mismatch n={n}"))?;
            ensure(sys.b0_raw == formulas::b0_raw(n, q.clone(), a.clone()), || format!("B0 mismatch n={n}"))?;
            checks += 5;
        }
    }
    let zero = Q::from_i64(0);
    let a3 = formulas::gap(3, zero.clone());
    let spots = [
        ("C1(3,0)", formulas::c1(zero.clone(), a3.clone()), 39),
        ("C3(3,0)", formulas::c3_young(zero.clone(), a3.clone()), 80),
        ("C0(3,0)", formulas::c0_cmc(zero.clone(), a3), 92),
    ];
    for (name, v, want) in spots {
        ensure(v == Q::from_i64(want), || format!("{name} = {v:?}, want {want}"))?;
    }
    // Terminal step at lambda = 1/2. Exact at q = 1, where every power is
    // rational; elsewhere the powers are irrational, so compare in binary64.
    let t = optimize::young_terminal_general(1.0, 80.0, 0.5).map_err(|e| e.to_string())?;
    ensure(t == 6400.0, || format!("terminal(q=1, C3=80) = {t}"))?;
    let mut worst_ulps: f64 = 0.0;
    for n in 2..=12u32 {
        for q in [0.01, 0.05, 0.125, 0.3] {
            let Ok(p) = ParamPoint::new(n, q) else { continue };
            let c3 = minimal::c3_young(p).unwrap();
            let terminal = optimize::young_terminal_general(q, c3, 0.5).unwrap();
            let closed = minimal::c_young(p).unwrap();
            let ulps = (terminal - closed).abs() / (closed * f64::EPSILON);
            ensure(ulps <= 4.0, || format!("terminal step n={n} q={q}: {ulps} ulp"))?;
            worst_ulps = worst_ulps.max(ulps);
        }
    }
    Ok(format!("{checks} exact identities, spots 39/80/92, terminal step within {worst_ulps:.1} ulp"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = OptimizeOptions::default();
    let mut worst_grid: f64 = 0.0;
    let mut worst_lambda: f64 = 0.0;
    for _ in 0..20 {
        let n = rng.gen_range(2..=12u32);
        let q = rng.gen_range(0.001..0.95) * q_upper(n).min(1.0);
        let p = point(n, q);
        for target in [Target::Young, Target::Holder, Target::Cmc] {
            let r = optimize::optimize(target, p, &opts).map_err(|e| e.to_string())?;
            ensure(r.best_value <= r.canonical_value, || {
                format!("{target} at n={n} q={q}: best {} > canonical {}", r.best_value, r.canonical_value)
            })?;
            let g = optimize::grid_minimum(target, p, 0.0, 64).map_err(|e| e.to_string())?;
            let dev = (r.best_value - g.value).abs() / g.value.abs();
            ensure(dev <= 1e-9, || format!("{target} at n={n} q={q}: grid deviation {dev:e}"))?;
            worst_grid = worst_grid.max(dev);
            if target == Target::Young {
                let i = r.param_names.iter().position(|s| s == "lambda").ok_or("no lambda")?;
                let d = (r.best_params[i] - q / (1.0 + q)).abs();
                ensure(d <= 1e-4, || format!("lambda off by {d:e} at n={n} q={q}"))?;
                worst_lambda = worst_lambda.max(d);
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {t:?}"))?;
    Ok(format!(
        "60 runs, grid deviation <= {worst_grid:.1e}, lambda error <= {worst_lambda:.1e}, {:.1} s",
        t.as_secs_f64()
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 1000 {
        let n = rng.gen_range(2..=12u32);
        let q = rng.gen_range(0.0..1.0) * q_upper(n).min(1.0);
        let r = rng.gen_range(0.01..100.0);
        let theta = rng.gen_range(0.01..0.99);
        let u: f64 = rng.gen_range(0.0..1.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let h = sign * u / ((1.0 - theta) * r);
        let s = CmcScale::new(h, r, theta).map_err(|e| e.to_string())?;
        if s.scale_product() > 1.0 {
            continue;
        }
        let p = point(n, q);
        let (_, c2) = cmc::cal_constants(p).map_err(|e| e.to_string())?;
        let e = 2.0 + 2.0 * q;
        let w = s.transition_width();
        // Same inequality scaled by w^e; free of division rounding.
        let lhs_scaled = c2 * s.scale_product().powf(e);
        ensure(lhs_scaled <= c2, || format!("n={n} q={q} H={h}: {lhs_scaled} > {c2}"))?;
        let lhs = c2 * h.abs().powf(e);
        let rhs = c2 / w.powf(e);
        ensure(lhs <= rhs, || format!("n={n} q={q} H={h}: {lhs} > {rhs}"))?;
        let est = cmc::local_estimate(p, s).map_err(|e| e.to_string())?;
        ensure(est.regime == Regime::MinimalLike, || format!("n={n} q={q} H={h}: {:?}", est.regime))?;
        done += 1;
    }
    let p = point(3, 0.1);
    for (h, theta) in [(2.0, 0.5), (4.0, 0.75)] {
        let at = cmc::local_estimate(p, CmcScale::new(h, 1.0, theta).unwrap()).unwrap();
        ensure(at.regime == Regime::MinimalLike, || format!("H={h} theta={theta}: {:?}", at.regime))?;
        let above = cmc::local_estimate(p, CmcScale::new(f64::next_up(h), 1.0, theta).unwrap()).unwrap();
        ensure(above.regime == Regime::CurvatureDominated, || format!("just above H={h}: {:?}", above.regime))?;
        let neg = cmc::local_estimate(p, CmcScale::new(-h, 1.0, theta).unwrap()).unwrap();
        ensure(neg.regime == Regime::MinimalLike, || format!("H={} theta={theta}: {:?}", -h, neg.regime))?;
    }
    Ok("1000 samples hold in both forms, threshold inclusive".into())
}

fn criterion_9() -> Outcome {
    for k in 1..=100 {
        let q = k as f64 / 101.0;
        let p = point(2, q);
        let b0 = cmc::b0_cmc(p).map_err(|e| e.to_string())?;
        let (c1, c2) = cmc::cal_constants(p).map_err(|e| e.to_string())?;
        ensure(b0 == 0.0 && c2 == 0.0, || format!("q={q}: B0={b0} calC2={c2}"))?;
        for (r, theta) in [(1.0, 0.5), (3.0, 0.25)] {
            let s = CmcScale::new(0.0, r, theta).unwrap();
            let e = cmc::local_estimate(p, s).unwrap();
            let grad = c1 / ((1.0 - theta) * r).powf(2.0 + 2.0 * q);
            ensure(e.curvature_coefficient == 0.0, || format!("q={q}: curvature {}", e.curvature_coefficient))?;
            ensure(e.gradient_coefficient == grad, || format!("q={q}: gradient {}", e.gradient_coefficient))?;
            ensure(e.combined_small_scale == grad, || format!("q={q}: combined {}", e.combined_small_scale))?;
            ensure(e.regime == Regime::MinimalLike, || format!("q={q}: {:?}", e.regime))?;
        }
    }
    let p = point(5, 0.3);
    let e = cmc::local_estimate(p, CmcScale::new(0.0, 1.0, 0.5).unwrap()).unwrap();
    ensure(e.curvature_coefficient == 0.0 && e.regime == Regime::MinimalLike, || format!("n=5 H=0: {e:?}"))?;
    Ok("B0 = calC2 = 0 on 100 points for n=2; H = 0 leaves the gradient term only".into())
}

fn criterion_10() -> Outcome {
    let (code, text, t) = ssy(&["oracle-check"]);
    ensure(code == 0, || format!("exit {code}\n{text}"))?;
    let get = |k: &str| -> Result<f64, String> {
        field(&text, k).and_then(|v| v.parse().ok()).ok_or_else(|| format!("missing {k}\n{text}"))
    };
    let regular = get("max_regular_deviation")?;
    let near = get("max_near_boundary_deviation")?;
    ensure(regular < 1e-12, || format!("regular deviation {regular:e}"))?;
    ensure(near < 1e-9, || format!("near-boundary deviation {near:e}"))?;
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("regular {regular:.1e}, near-boundary {near:.1e}, {:.2} s", t.as_secs_f64()))
}

#[test]
fn acceptance() {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = Vec::new();
    let mut stderr = std::io::stderr();
    for (i, c) in criteria.iter().enumerate() {
        let line = match c() {
            Ok(detail) => format!("criterion {}: PASS ({detail})\n", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("criterion {}: FAIL ({why})\n", i + 1)
            }
        };
        stderr.write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
