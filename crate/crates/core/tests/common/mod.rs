//! Checks shared by the integration tests and the acceptance runner.

#![allow(dead_code)]

use gas_core::gas::{
    apply_cloning, clone_probability, compute_flows, GasConfig, GasState, StepOutcome,
};
use gas_core::local_search::projected_gradient;
use gas_core::testbed::registry;
use gas_core::{
    minimize_bounded, BoxDomain, Budgeted, EvalBudget, LocalSearchOptions, ObjectiveSpec,
    RngStream, Sense,
};

/// Printed optima of the fifteen two-variable test functions: name,
/// minimizer and value.
pub const ANNEX: [(&str, [f64; 2], f64); 15] = [
    ("ackley", [0.0, 0.0], 0.0),
    ("beale", [3.0, 0.5], 0.0),
    ("booth", [1.0, 3.0], 0.0),
    ("easom", [std::f64::consts::PI, std::f64::consts::PI], -1.0),
    ("eggholder", [512.0, 404.2319], -959.6407),
    ("goldstein_price", [0.0, -1.0], 3.0),
    ("levy13", [1.0, 1.0], 0.0),
    ("matyas", [0.0, 0.0], 0.0),
    ("mccormick", [-0.54719, -1.54719], -1.9133),
    ("rastrigin2d", [0.0, 0.0], 0.0),
    ("rosenbrock2d", [1.0, 1.0], 0.0),
    ("schaffer2", [0.0, 0.0], 0.0),
    ("schaffer4", [0.0, 1.25313], 0.292579),
    ("sphere", [0.0, 0.0], 0.0),
    ("three_hump_camel", [0.0, 0.0], 0.0),
];

/// Evaluates every printed optimum: zeros to 1e-12, others to 1e-3.
/// Returns the worst deviation.
pub fn annex_optima() -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for (name, x, printed) in ANNEX {
        let v = registry().evaluate(name, &x).map_err(|e| e.to_string())?;
        let err = (v - printed).abs();
        let tol = if printed == 0.0 { 1e-12 } else { 1e-3 };
        if err > tol {
            return Err(format!("{name}: {v} vs printed {printed}"));
        }
        worst = worst.max(err);
    }
    Ok(worst)
}

fn lj_points(name: &str, flat: &[f64]) -> Result<f64, String> {
    registry().evaluate(name, flat).map_err(|e| e.to_string())
}

/// Equilateral triangle and regular tetrahedron with edges at the pair
/// minimum distance 2^(1/6).
pub fn lj_small_clusters() -> Result<(f64, f64), String> {
    let s = 2f64.powf(1.0 / 6.0);
    let h = s * 3f64.sqrt() / 2.0;
    let tri = [-s / 2.0, 0.0, 0.0, s / 2.0, 0.0, 0.0, 0.0, h, 0.0];
    let a = s / 2f64.sqrt() / 2.0;
    let tet = [a, a, a, a, -a, -a, -a, a, -a, -a, -a, a];
    let e3 = lj_points("lj3", &tri)?;
    let e4 = lj_points("lj4", &tet)?;
    if (e3 + 3.0).abs() > 1e-9 || (e4 + 6.0).abs() > 1e-9 {
        return Err(format!("lj3 {e3}, lj4 {e4}"));
    }
    Ok(((e3 + 3.0).abs(), (e4 + 6.0).abs()))
}

/// Whether `x` is far from the kinks of the non-smooth test functions.
pub fn away_from_kinks(name: &str, x: &[f64]) -> bool {
    const MARGIN: f64 = 1e-2;
    match name {
        "eggholder" => {
            (x[0] / 2.0 + x[1] + 47.0).abs() > MARGIN && (x[0] - x[1] - 47.0).abs() > MARGIN
        }
        "schaffer4" => (x[0] * x[0] - x[1] * x[1]).abs() > MARGIN,
        "ackley" => x.iter().map(|v| v * v).sum::<f64>() > MARGIN,
        _ => true,
    }
}

/// Central difference with a fixed step of 1e-6.
pub fn central_difference(spec: &ObjectiveSpec, x: &[f64]) -> Vec<f64> {
    let mut p = x.to_vec();
    (0..x.len())
        .map(|n| {
            let h = 1e-6;
            p[n] = x[n] + h;
            let hi = spec.evaluate(&p);
            p[n] = x[n] - h;
            let lo = spec.evaluate(&p);
            p[n] = x[n];
            (hi - lo) / (2.0 * h)
        })
        .collect()
}

/// Compares analytic and central-difference gradients at `points` random
/// interior points of every function with an analytic gradient. Returns the
/// number of functions checked and the worst relative deviation.
pub fn gradient_agreement(points: usize, seed: u64) -> Result<(usize, f64), String> {
    let mut rng = RngStream::new(seed);
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for spec in registry().iter().filter(|s| s.has_gradient()) {
        checked += 1;
        let d = spec.domain();
        let mut done = 0;
        while done < points {
            let x: Vec<f64> = (0..d.dim())
                .map(|n| {
                    let (lo, hi) = (d.lower()[n], d.upper()[n]);
                    let pad = 1e-3 * (hi - lo);
                    rng.uniform_in(lo + pad, hi - pad)
                })
                .collect();
            if !away_from_kinks(spec.name(), &x) || !spec.evaluate(&x).is_finite() {
                continue;
            }
            done += 1;
            let a = spec.gradient(&x).unwrap();
            let b = central_difference(spec, &x);
            let scale = a.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let dev = a
                .iter()
                .zip(&b)
                .fold(0.0f64, |m, (p, q)| m.max((p - q).abs()))
                / scale;
            if dev > 1e-5 {
                return Err(format!(
                    "{} at {x:?}: analytic {a:?}, differences {b:?}",
                    spec.name()
                ));
            }
            worst = worst.max(dev);
        }
    }
    Ok((checked, worst))
}

/// Random symmetric matrix with eigenvalues in [1, 10].
fn random_spd(d: usize, rng: &mut RngStream) -> Vec<Vec<f64>> {
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(d);
    while q.len() < d {
        let mut v: Vec<f64> = (0..d).map(|_| rng.standard_normal()).collect();
        for u in &q {
            let dot: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(u).for_each(|(a, b)| *a -= dot * b);
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-6 {
            q.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    let lambda: Vec<f64> = (0..d).map(|_| rng.uniform_in(1.0, 10.0)).collect();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|k| q[k][i] * lambda[k] * q[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Convex quadratics for d = 1..=10: the minimizer must be reached to 1e-8
/// within 100 iterations. Returns the worst distance and iteration count.
pub fn quadratic_suite(seed: u64) -> Result<(f64, usize), String> {
    let mut rng = RngStream::new(seed);
    let (mut worst_dist, mut worst_iter) = (0.0f64, 0usize);
    for d in 1..=10 {
        let a = random_spd(d, &mut rng);
        let c: Vec<f64> = (0..d).map(|_| rng.uniform_in(-3.0, 3.0)).collect();
        let (a1, c1) = (a.clone(), c.clone());
        let (a2, c2) = (a.clone(), c.clone());
        let spec = ObjectiveSpec::new(
            format!("quad{d}"),
            BoxDomain::cube(-5.0, 5.0, d).unwrap(),
            move |x| {
                let r: Vec<f64> = x.iter().zip(&c1).map(|(p, q)| p - q).collect();
                0.5 * (0..d)
                    .map(|i| r[i] * (0..d).map(|j| a1[i][j] * r[j]).sum::<f64>())
                    .sum::<f64>()
            },
        )
        .with_gradient(move |x| {
            let r: Vec<f64> = x.iter().zip(&c2).map(|(p, q)| p - q).collect();
            (0..d)
                .map(|i| (0..d).map(|j| a2[i][j] * r[j]).sum())
                .collect()
        });
        let x0 = rng.point_in(spec.domain());
        let mut budget = EvalBudget::new(u64::MAX);
        let mut obj = Budgeted::new(&spec, &mut budget);
        let opts = LocalSearchOptions::default();
        let res = minimize_bounded(&mut obj, &x0, &opts, &mut rng.child("ls"));
        let dist = res
            .x
            .iter()
            .zip(&c)
            .fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
        if dist > 1e-8 || res.iterations > 100 {
            return Err(format!(
                "d={d}: distance {dist:e} after {} iterations",
                res.iterations
            ));
        }
        worst_dist = worst_dist.max(dist);
        worst_iter = worst_iter.max(res.iterations);
    }
    Ok((worst_dist, worst_iter))
}

/// `(x - 0)^2` on [1, 2] from 1.7 must stop at the bound with a zero
/// projected gradient.
pub fn active_bound() -> Result<f64, String> {
    let spec = ObjectiveSpec::new(
        "bound",
        BoxDomain::new(vec![1.0], vec![2.0]).unwrap(),
        |x| x[0] * x[0],
    )
    .with_gradient(|x| vec![2.0 * x[0]]);
    let mut budget = EvalBudget::new(u64::MAX);
    let mut obj = Budgeted::new(&spec, &mut budget);
    let res = minimize_bounded(
        &mut obj,
        &[1.7],
        &LocalSearchOptions::default(),
        &mut RngStream::new(0),
    );
    let pg = projected_gradient(&res.x, &spec.gradient(&res.x).unwrap(), spec.domain());
    if res.x != vec![1.0] || pg != vec![0.0] {
        return Err(format!(
            "stopped at {:?} with projected gradient {pg:?}",
            res.x
        ));
    }
    Ok(res.x[0])
}

/// Rosenbrock from (-1.2, 1).
pub fn rosenbrock_descent() -> Result<f64, String> {
    let spec = registry().get("rosenbrock2d").unwrap();
    let mut budget = EvalBudget::new(u64::MAX);
    let mut obj = Budgeted::new(spec, &mut budget);
    let res = minimize_bounded(
        &mut obj,
        &[-1.2, 1.0],
        &LocalSearchOptions::default(),
        &mut RngStream::new(0),
    );
    if res.value > 1e-8 {
        return Err(format!("stalled at f = {:e}", res.value));
    }
    Ok(res.value)
}

/// Functions exercised by the GAS invariant walk.
pub const INVARIANT_FUNCTIONS: [&str; 5] =
    ["sphere", "eggholder", "rastrigin3", "lj4", "schaffer4"];

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn start(name: &str, seed: u64, budget: &mut EvalBudget) -> Result<GasState, String> {
    let spec = registry().get(name).map_err(|e| e.to_string())?;
    let mut obj = Budgeted::new(spec, budget);
    let config = GasConfig::default();
    let mut state = GasState::initialize(&mut obj, config, Sense::Minimize, &RngStream::new(seed))
        .map_err(|h| format!("{h:?}"))?;
    state.stability_halt = false;
    Ok(state)
}

/// Runs `steps` GAS loops on `name` and checks the structural invariants
/// after every loop, then replays the run and requires identical states.
pub fn gas_invariant_walk(name: &str, seed: u64, steps: usize) -> Result<(), String> {
    let spec = registry().get(name).map_err(|e| e.to_string())?;
    let domain = spec.domain();
    let mut budget = EvalBudget::new(u64::MAX);
    let mut state = start(name, seed, &mut budget)?;
    let n = state.config.n_walkers;
    let mut probe_rng = RngStream::new(seed ^ 0x5eed);
    let mut best = state.best.value;
    for step in 0..steps {
        {
            let mut obj = Budgeted::new(spec, &mut budget);
            let outcome = state.step(&mut obj).map_err(|h| format!("{h:?}"))?;
            ensure(outcome == StepOutcome::Continue, || {
                "unexpected stability halt".into()
            })?;
        }
        let at = || format!("{name} seed {seed} step {step}");
        let s = &state.swarm;
        ensure(s.positions.iter().all(|x| domain.contains(x)), || {
            format!("{}: walker left D", at())
        })?;
        ensure(
            state.tabu.memories.iter().all(|x| domain.contains(x)),
            || format!("{}: memory left D", at()),
        )?;
        ensure(state.tabu.len() == n && s.len() == n, || {
            format!("{}: size changed", at())
        })?;
        ensure(s.phis.iter().all(|p| (0.0..=1.0).contains(p)), || {
            format!("{}: phi outside [0,1]", at())
        })?;

        let finite: Vec<f64> = s.values.iter().copied().filter(|v| v.is_finite()).collect();
        let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi > lo {
            ensure(s.phis.contains(&0.0) && s.phis.contains(&1.0), || {
                format!("{}: 0 or 1 not attained", at())
            })?;
        }
        for (v, p) in s.values.iter().zip(&s.phis) {
            if *v == lo {
                ensure(*p == 0.0, || format!("{}: argmin of f has phi {p}", at()))?;
            } else if v.is_finite() {
                ensure(*p > 0.0, || {
                    format!("{}: non-minimal walker has phi 0", at())
                })?;
            }
        }

        ensure(state.best.value <= best, || format!("{}: BEST rose", at()))?;
        best = state.best.value;

        let mut probe = state.swarm.clone();
        compute_flows(&mut probe, &state.tabu, &mut probe_rng);
        for &fi in &probe.flows {
            for &fk in &probe.flows {
                let p = clone_probability(fi, fk);
                ensure((0.0..=1.0).contains(&p), || {
                    format!("{}: clone probability {p}", at())
                })?;
            }
        }
        let level = probe.flows[0];
        probe.flows.iter_mut().for_each(|f| *f = level);
        let before = probe.clone();
        apply_cloning(&mut probe, &mut probe_rng);
        ensure(probe == before, || {
            format!("{}: equal flows changed the swarm", at())
        })?;
    }

    let mut budget2 = EvalBudget::new(u64::MAX);
    let mut replay = start(name, seed, &mut budget2)?;
    for _ in 0..steps {
        let mut obj = Budgeted::new(spec, &mut budget2);
        replay.step(&mut obj).map_err(|h| format!("{h:?}"))?;
    }
    ensure(
        replay.swarm == state.swarm
            && replay.tabu == state.tabu
            && replay.best == state.best
            && budget2.used() == budget.used(),
        || format!("{name} seed {seed}: replay diverged"),
    )
}
