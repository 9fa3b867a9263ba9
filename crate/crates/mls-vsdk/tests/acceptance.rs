//! End-to-end acceptance suite: every numbered check prints one PASS/FAIL
//! line; the test fails if any check fails. Property checks (1-6) are
//! self-contained; the remaining checks (7-12) reproduce the benchmark
//! sweeps at full size, so this target takes a few minutes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use mls_vsdk::experiments::{
    eval_grid, fit_rate, problem, run_experiment, truth_value, ExperimentReport, ExperimentSpec,
    NodeKind, ProblemId, Variant,
};
use mls_vsdk::geometry::{euclidean, uniform_nodes, DomainBox, KdTree, NodeSet, Point};
use mls_vsdk::mls::{MlsConfig, MlsEngine, PolynomialBasis};
use mls_vsdk::scaling::ScaleFunction;
use mls_vsdk::weights::{WeightFamily, WeightSpec};

const REPRODUCTION_TOL: f64 = 1e-9;
const UNITY_TOL: f64 = 1e-10;
const SHEPARD_REL_TOL: f64 = 1e-14;
const F1_VSDK_RMSE_MAX: f64 = 1.0e-4;
const F1_CLASSIC_RMSE_MIN: f64 = 1.0e-2;
const TABLE_FACTOR: f64 = 10.0;
const RATE_BAND_F1: (f64, f64) = (2.0, 3.0);
const RATE_CLASSIC_MAX: f64 = 1.2;
const RATE_BAND_F2: (f64, f64) = (1.8, 3.2);
const RATE_BAND_F2_CLASSIC: (f64, f64) = (0.2, 1.2);
const F3_VSDK_RMSE_MAX: f64 = 3.0e-3;
const F3_CLASSIC_RMSE_MIN: f64 = 1.0e-1;
const RATE_BAND_F3: (f64, f64) = (2.0, 3.2);
const NOISY_RATE_GAP_MIN: f64 = 1.0;

const F1_SIZES: [usize; 6] = [9, 17, 33, 65, 257, 513];
const F1_EPS: [f64; 6] = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0];
const F2_SIZES: [usize; 6] = [25, 81, 289, 1089, 4225, 16641];
const F2_EPS: [f64; 6] = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0];
const F3_EPS: [f64; 6] = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
// Published per-level targets for the f1 uniform sweep (approximant and
// plain variants).
const F1_TABLE_VSDK: [f64; 6] = [3.58e-1, 1.99e-1, 3.10e-3, 8.42e-4, 5.67e-5, 1.43e-5];

struct Outcome {
    label: &'static str,
    pass: bool,
    detail: String,
}

fn spec(
    problem: ProblemId,
    node_kind: NodeKind,
    sizes: &[usize],
    epsilons: &[f64],
    family: WeightFamily,
    stencil_size: usize,
    variant: Variant,
) -> ExperimentSpec {
    ExperimentSpec {
        problem,
        node_kind,
        sizes: sizes.to_vec(),
        epsilons: epsilons.to_vec(),
        weight: WeightSpec::new(family, 1.0).unwrap(),
        degree: 1,
        stencil_size,
        variant,
        noise_sigma: 0.0,
        seed: 0,
        scale_fn: None,
    }
}

fn run(spec: &ExperimentSpec) -> ExperimentReport {
    run_experiment(spec).expect("experiment run")
}

fn jittered_nodes(rng: &mut ChaCha12Rng, dim: usize, per_axis: usize) -> NodeSet {
    let domain = DomainBox::new(vec![-1.0; dim], vec![1.0; dim]).unwrap();
    let grid = uniform_nodes(&domain, &vec![per_axis; dim]).unwrap();
    let jitter = 0.3 / per_axis as f64;
    let points = grid
        .points()
        .iter()
        .map(|p| {
            let coords = p
                .coords()
                .iter()
                .map(|&c| c + rng.random_range(-jitter..jitter))
                .collect();
            Point::new(coords).unwrap()
        })
        .collect();
    NodeSet::new(dim, points).unwrap()
}

fn poly_eval(exponents: &[Vec<u32>], coeffs: &[f64], x: &[f64]) -> f64 {
    exponents
        .iter()
        .zip(coeffs)
        .map(|(e, c)| {
            c * e
                .iter()
                .zip(x)
                .map(|(&k, &t)| t.powi(k as i32))
                .product::<f64>()
        })
        .sum()
}

/// Criteria 1 and 2 share the same 1,000 trials.
fn criteria_1_2() -> (Outcome, Outcome) {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    let families = [
        WeightFamily::WendlandC2,
        WeightFamily::Gaussian,
        WeightFamily::MaternC6,
        WeightFamily::LevinSingular,
    ];
    let mut worst_repro: f64 = 0.0;
    let mut worst_unity: f64 = 0.0;
    for trial in 0..1000 {
        let dim = 1 + (trial % 2);
        let degree = trial % 3;
        let family = families[trial % 4];
        let per_axis = if dim == 1 { 14 } else { 6 };
        let nodes = jittered_nodes(&mut rng, dim, per_axis);
        let basis = PolynomialBasis::new(dim, degree).unwrap();
        let q = basis.size();
        let eps = if family == WeightFamily::WendlandC2 { 0.5 } else { 2.0 };
        let cfg = MlsConfig::new(basis, WeightSpec::new(family, eps).unwrap())
            .with_stencil_size(2 * q);
        let x = Point::new((0..dim).map(|_| rng.random_range(-0.9..0.9)).collect()).unwrap();
        let sys = mls_vsdk::mls::solve_shape_functions(&cfg, &nodes, &x).unwrap();

        let coeffs: Vec<f64> = (0..q).map(|_| rng.random_range(-2.0..2.0)).collect();
        let exps = cfg.basis.exponents();
        let mut reproduced = 0.0;
        let mut max_p: f64 = 0.0;
        for (alpha, &i) in sys.shape.iter().zip(&sys.stencil.indices) {
            let pv = poly_eval(exps, &coeffs, nodes.point(i).coords());
            max_p = max_p.max(pv.abs());
            reproduced += alpha * pv;
        }
        let target = poly_eval(exps, &coeffs, x.coords());
        worst_repro = worst_repro.max((reproduced - target).abs() / (1.0 + max_p));
        let unity: f64 = sys.shape.iter().sum();
        worst_unity = worst_unity.max((unity - 1.0).abs());
    }
    (
        Outcome {
            label: "criterion 1 (polynomial reproduction, 1000 trials)",
            pass: worst_repro <= REPRODUCTION_TOL,
            detail: format!("worst scaled error {worst_repro:.3e} (tol {REPRODUCTION_TOL:.0e})"),
        },
        Outcome {
            label: "criterion 2 (partition of unity in every trial)",
            pass: worst_unity <= UNITY_TOL,
            detail: format!("worst |sum alpha - 1| {worst_unity:.3e} (tol {UNITY_TOL:.0e})"),
        },
    )
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha12Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let dim = 1 + (trial % 2);
        let nodes = jittered_nodes(&mut rng, dim, if dim == 1 { 10 } else { 4 });
        let cfg = MlsConfig::new(
            PolynomialBasis::new(dim, 0).unwrap(),
            WeightSpec::new(WeightFamily::Gaussian, 2.0).unwrap(),
        )
        .with_stencil_size(5);
        let x = Point::new((0..dim).map(|_| rng.random_range(-0.9..0.9)).collect()).unwrap();
        let sys = mls_vsdk::mls::solve_shape_functions(&cfg, &nodes, &x).unwrap();
        let wsum: f64 = sys.weights.iter().sum();
        for (alpha, w) in sys.shape.iter().zip(&sys.weights) {
            let expected = w / wsum;
            worst = worst.max((alpha - expected).abs() / expected.abs());
        }
    }
    Outcome {
        label: "criterion 3 (Shepard equivalence at degree 0, 100 trials)",
        pass: worst <= SHEPARD_REL_TOL,
        detail: format!("worst relative deviation {worst:.3e} (tol {SHEPARD_REL_TOL:.0e})"),
    }
}

fn criterion_4() -> Outcome {
    let prob = problem(ProblemId::F2);
    let nodes = uniform_nodes(&prob.domain, &[17, 17]).unwrap();
    let values: Vec<f64> = nodes
        .points()
        .iter()
        .map(|p| truth_value(ProblemId::F2, p).unwrap())
        .collect();
    let nodes = nodes.with_values(values).unwrap();
    let classic = MlsConfig::new(
        PolynomialBasis::new(2, 1).unwrap(),
        WeightSpec::new(WeightFamily::WendlandC2, 1.0).unwrap(),
    );
    let scaled = classic.clone().with_scale_fn(ScaleFunction::constant(1.0));
    let grid = eval_grid(&prob);
    let engine_c = MlsEngine::new(&classic, &nodes).unwrap();
    let engine_s = MlsEngine::new(&scaled, &nodes).unwrap();
    let a = engine_c.evaluate_many(grid.points()).unwrap();
    let b = engine_s.evaluate_many(grid.points()).unwrap();
    let mismatches = a
        .iter()
        .zip(&b)
        .filter(|(x, y)| x.to_bits() != y.to_bits())
        .count();
    Outcome {
        label: "criterion 4 (constant-scale run equals plain run bitwise, N=289)",
        pass: mismatches == 0,
        detail: format!("{mismatches} of {} grid values differ", a.len()),
    }
}

fn criterion_5() -> Outcome {
    let prob = problem(ProblemId::F3);
    let nodes = uniform_nodes(&prob.domain, &[33, 33]).unwrap();
    let values: Vec<f64> = nodes
        .points()
        .iter()
        .map(|p| truth_value(ProblemId::F3, p).unwrap())
        .collect();
    let nodes = nodes.with_values(values).unwrap();
    let cfg = MlsConfig::new(
        PolynomialBasis::new(2, 1).unwrap(),
        WeightSpec::new(WeightFamily::LevinSingular, 8.0).unwrap(),
    )
    .with_stencil_size(20)
    .with_scale_fn(prob.scale_fn.clone());
    let engine = MlsEngine::new(&cfg, &nodes).unwrap();

    let mut rng = ChaCha12Rng::seed_from_u64(5);
    let mut exact = 0usize;
    let mut shrinking = 0usize;
    for _ in 0..50 {
        // interior data sites so the offset stays inside the domain
        let (i, site) = loop {
            let i = rng.random_range(0..nodes.len());
            let p = nodes.point(i);
            if p.coords().iter().all(|&c| c.abs() < 0.9) {
                break (i, p.clone());
            }
        };
        let f = nodes.values().unwrap()[i];
        if engine.evaluate(&site).unwrap() == f {
            exact += 1;
        }
        // approach along a direction that stays inside the site's own scale
        // region: across a region boundary the augmented metric keeps the
        // site at jump distance and the limit does not (and must not) hold
        let sf = &prob.scale_fn;
        let region = sf.classify(&site);
        let u = loop {
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let u = [theta.cos(), theta.sin()];
            let probe = Point::from((
                site.coords()[0] + 1e-3 * u[0],
                site.coords()[1] + 1e-3 * u[1],
            ));
            if sf.classify(&probe) == region {
                break u;
            }
        };
        let errs: Vec<f64> = [1e-3, 1e-5]
            .iter()
            .map(|&r| {
                let x = Point::from((site.coords()[0] + r * u[0], site.coords()[1] + r * u[1]));
                (engine.evaluate(&x).unwrap() - f).abs()
            })
            .collect();
        // either already at rounding level, or clearly shrunk with the radius
        if errs[1] <= 1e-13 || errs[1] < errs[0] / 10.0 {
            shrinking += 1;
        }
    }
    Outcome {
        label: "criterion 5 (interpolatory limit of the singular weight)",
        pass: exact == 50 && shrinking >= 45,
        detail: format!(
            "exact hits {exact}/50, shrinking approach error {shrinking}/50 (need 50 and >=45)"
        ),
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha12Rng::seed_from_u64(6);
    let points: Vec<Vec<f64>> = (0..500)
        .map(|_| vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
        .collect();
    let node_set = NodeSet::new(
        2,
        points.iter().map(|c| Point::new(c.clone()).unwrap()).collect(),
    )
    .unwrap();
    let tree = KdTree::build(points);
    let mut mismatches = 0usize;
    for _ in 0..10_000 {
        let q = [rng.random_range(-1.2..1.2), rng.random_range(-1.2..1.2)];
        let n = rng.random_range(1..20);
        let fast = tree.knn(&q, n);
        let mut cand: Vec<(f64, usize)> = node_set
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| (euclidean(&q, p.coords()), i))
            .collect();
        cand.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let brute: Vec<usize> = cand.iter().take(n).map(|c| c.1).collect();
        if fast.indices != brute {
            mismatches += 1;
        }
    }
    Outcome {
        label: "criterion 6 (knn bit-identical to brute force, 10000 queries)",
        pass: mismatches == 0,
        detail: format!("{mismatches} mismatching queries"),
    }
}

fn criterion_7(vsdk: &ExperimentReport, classic: &ExperimentReport) -> Outcome {
    let v513 = vsdk.rmse_for_size(513).unwrap();
    let c513 = classic.rmse_for_size(513).unwrap();
    let mut factor_ok = true;
    let mut worst_factor: f64 = 1.0;
    for (level, &printed) in F1_TABLE_VSDK.iter().enumerate() {
        if F1_SIZES[level] < 33 {
            continue;
        }
        let mine = vsdk.rmse_for_size(F1_SIZES[level]).unwrap();
        let factor = (mine / printed).max(printed / mine);
        worst_factor = worst_factor.max(factor);
        if factor > TABLE_FACTOR {
            factor_ok = false;
        }
    }
    let pass = v513 <= F1_VSDK_RMSE_MAX && c513 >= F1_CLASSIC_RMSE_MIN && factor_ok;
    Outcome {
        label: "criterion 7 (f1 uniform Wendland table)",
        pass,
        detail: format!(
            "vsdk rmse@513 {v513:.3e} (max {F1_VSDK_RMSE_MAX:.0e}), plain rmse@513 {c513:.3e} (min {F1_CLASSIC_RMSE_MIN:.0e}), worst per-level factor {worst_factor:.2} (max {TABLE_FACTOR})"
        ),
    }
}

fn criterion_8() -> Outcome {
    let ga_eps = [5.0, 20.0, 40.0, 80.0, 160.0, 320.0];
    let mat_eps = [5.0, 10.0, 20.0, 40.0, 80.0, 160.0];
    let mut rates = Vec::new();
    for (family, eps) in [
        (WeightFamily::Gaussian, &ga_eps),
        (WeightFamily::MaternC6, &mat_eps),
    ] {
        for variant in [Variant::Vsdk, Variant::Classic] {
            let s = spec(
                ProblemId::F1,
                NodeKind::Uniform,
                &F1_SIZES,
                eps,
                family,
                4,
                variant,
            );
            rates.push((family, variant, fit_rate(&run(&s)).unwrap()));
        }
    }
    let mut pass = true;
    let mut parts = Vec::new();
    for (family, variant, rate) in rates {
        let ok = match variant {
            Variant::Vsdk => rate >= RATE_BAND_F1.0 && rate <= RATE_BAND_F1.1,
            Variant::Classic => rate <= RATE_CLASSIC_MAX,
        };
        pass &= ok;
        parts.push(format!(
            "{family:?}/{variant:?} {rate:.2}{}",
            if ok { "" } else { " [out of band]" }
        ));
    }
    Outcome {
        label: "criterion 8 (f1 Gaussian/Matern convergence rates)",
        pass,
        detail: format!(
            "{} (scaled band [{}, {}], plain max {RATE_CLASSIC_MAX})",
            parts.join(", "),
            RATE_BAND_F1.0,
            RATE_BAND_F1.1
        ),
    }
}

fn criterion_9(reports: &[(&str, &ExperimentReport)]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, report) in reports {
        let rate = fit_rate(report).unwrap();
        let band = if report.variant == Variant::Vsdk {
            RATE_BAND_F2
        } else {
            RATE_BAND_F2_CLASSIC
        };
        let ok = rate >= band.0 && rate <= band.1;
        pass &= ok;
        parts.push(format!("{name} {rate:.2}{}", if ok { "" } else { " [out of band]" }));
    }
    Outcome {
        label: "criterion 9 (f2 Wendland convergence rates)",
        pass,
        detail: format!(
            "{} (scaled band [{}, {}], plain band [{}, {}])",
            parts.join(", "),
            RATE_BAND_F2.0,
            RATE_BAND_F2.1,
            RATE_BAND_F2_CLASSIC.0,
            RATE_BAND_F2_CLASSIC.1
        ),
    }
}

fn criterion_10(reports: &[(NodeKind, &ExperimentReport, &ExperimentReport)]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (kind, vsdk, classic) in reports {
        let v = vsdk.rmse_for_size(16641).unwrap();
        let vok = v <= F3_VSDK_RMSE_MAX;
        let cmin = classic
            .levels
            .iter()
            .map(|l| l.rmse)
            .fold(f64::INFINITY, f64::min);
        let cok = cmin >= F3_CLASSIC_RMSE_MIN;
        pass &= vok && cok;
        parts.push(format!(
            "{kind:?}: vsdk rmse@16641 {v:.2e}{}, plain min rmse {cmin:.2e}{}",
            if vok { "" } else { " [above max]" },
            if cok { "" } else { " [below floor]" }
        ));
    }
    // rate studies with the published schedules
    let schedules = [
        (WeightFamily::Gaussian, NodeKind::Uniform, [2.0, 4.0, 8.0, 16.0, 32.0, 64.0]),
        (WeightFamily::MaternC6, NodeKind::Uniform, [10.0, 20.0, 40.0, 80.0, 160.0, 320.0]),
        (WeightFamily::Gaussian, NodeKind::Halton, [1.0, 2.0, 4.0, 8.0, 16.0, 32.0]),
        (WeightFamily::MaternC6, NodeKind::Halton, [10.0, 20.0, 40.0, 80.0, 160.0, 320.0]),
    ];
    for (family, kind, eps) in schedules {
        let s = spec(ProblemId::F3, kind, &F2_SIZES, &eps, family, 20, Variant::Vsdk);
        let rate = fit_rate(&run(&s)).unwrap();
        let ok = rate >= RATE_BAND_F3.0 && rate <= RATE_BAND_F3.1;
        pass &= ok;
        parts.push(format!(
            "{family:?}/{kind:?} rate {rate:.2}{}",
            if ok { "" } else { " [out of band]" }
        ));
    }
    Outcome {
        label: "criterion 10 (f3 singular-weight accuracy and rates)",
        pass,
        detail: parts.join("; "),
    }
}

fn criterion_11() -> Outcome {
    let mut vsdk_rates = Vec::new();
    for seed in 1..=5u64 {
        let mut s = spec(
            ProblemId::F2,
            NodeKind::Uniform,
            &F2_SIZES,
            &F2_EPS,
            WeightFamily::Gaussian,
            25,
            Variant::Vsdk,
        );
        s.noise_sigma = 0.01;
        s.seed = seed;
        vsdk_rates.push(fit_rate(&run(&s)).unwrap());
    }
    vsdk_rates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let vsdk_median = vsdk_rates[2];
    let classic = spec(
        ProblemId::F2,
        NodeKind::Uniform,
        &F2_SIZES,
        &F2_EPS,
        WeightFamily::Gaussian,
        25,
        Variant::Classic,
    );
    let classic_rate = fit_rate(&run(&classic)).unwrap();
    let gap = vsdk_median - classic_rate;
    Outcome {
        label: "criterion 11 (noisy-partition rate advantage over 5 seeds)",
        pass: gap >= NOISY_RATE_GAP_MIN,
        detail: format!(
            "median scaled rate {vsdk_median:.2}, plain rate {classic_rate:.2}, gap {gap:.2} (need >= {NOISY_RATE_GAP_MIN})"
        ),
    }
}

fn criterion_12(pairs: &[(&str, usize, &ExperimentReport, &ExperimentReport)]) -> Outcome {
    let mut pass = true;
    let mut violations = Vec::new();
    for (name, min_n, vsdk, classic) in pairs {
        for lv in &vsdk.levels {
            if lv.n_nodes < *min_n {
                continue;
            }
            match classic.rmse_for_size(lv.n_nodes) {
                Some(c) if lv.rmse < c => {}
                Some(c) => {
                    pass = false;
                    violations.push(format!("{name} N={}: {:.2e} !< {c:.2e}", lv.n_nodes, lv.rmse));
                }
                None => {
                    pass = false;
                    violations.push(format!("{name} N={}: plain level missing", lv.n_nodes));
                }
            }
        }
    }
    Outcome {
        label: "criterion 12 (scaled beats plain at every compared level)",
        pass,
        detail: if violations.is_empty() {
            "all configurations improved".into()
        } else {
            violations.join("; ")
        },
    }
}

#[test]
fn acceptance() {
    let mut outcomes = Vec::new();

    let (c1, c2) = criteria_1_2();
    outcomes.push(c1);
    outcomes.push(c2);
    outcomes.push(criterion_3());
    outcomes.push(criterion_4());
    outcomes.push(criterion_5());
    outcomes.push(criterion_6());

    // shared full-size sweeps
    let f1_u_v = run(&spec(ProblemId::F1, NodeKind::Uniform, &F1_SIZES, &F1_EPS, WeightFamily::WendlandC2, 4, Variant::Vsdk));
    let f1_u_c = run(&spec(ProblemId::F1, NodeKind::Uniform, &F1_SIZES, &F1_EPS, WeightFamily::WendlandC2, 4, Variant::Classic));
    let f1_h_v = run(&spec(ProblemId::F1, NodeKind::Halton, &F1_SIZES, &F1_EPS, WeightFamily::WendlandC2, 4, Variant::Vsdk));
    let f1_h_c = run(&spec(ProblemId::F1, NodeKind::Halton, &F1_SIZES, &F1_EPS, WeightFamily::WendlandC2, 4, Variant::Classic));
    let f2_u_v = run(&spec(ProblemId::F2, NodeKind::Uniform, &F2_SIZES, &F2_EPS, WeightFamily::WendlandC2, 6, Variant::Vsdk));
    let f2_u_c = run(&spec(ProblemId::F2, NodeKind::Uniform, &F2_SIZES, &F2_EPS, WeightFamily::WendlandC2, 6, Variant::Classic));
    let f2_h_v = run(&spec(ProblemId::F2, NodeKind::Halton, &F2_SIZES, &F2_EPS, WeightFamily::WendlandC2, 6, Variant::Vsdk));
    let f2_h_c = run(&spec(ProblemId::F2, NodeKind::Halton, &F2_SIZES, &F2_EPS, WeightFamily::WendlandC2, 6, Variant::Classic));
    let f3_u_v = run(&spec(ProblemId::F3, NodeKind::Uniform, &F2_SIZES, &F3_EPS, WeightFamily::LevinSingular, 20, Variant::Vsdk));
    let f3_u_c = run(&spec(ProblemId::F3, NodeKind::Uniform, &F2_SIZES, &F3_EPS, WeightFamily::LevinSingular, 20, Variant::Classic));
    let f3_h_v = run(&spec(ProblemId::F3, NodeKind::Halton, &F2_SIZES, &F3_EPS, WeightFamily::LevinSingular, 20, Variant::Vsdk));
    let f3_h_c = run(&spec(ProblemId::F3, NodeKind::Halton, &F2_SIZES, &F3_EPS, WeightFamily::LevinSingular, 20, Variant::Classic));
    let noisy = |kind, variant| {
        let mut s = spec(ProblemId::F2, kind, &F2_SIZES, &F2_EPS, WeightFamily::Gaussian, 25, variant);
        s.noise_sigma = 0.01;
        s.seed = 1;
        run(&s)
    };
    let n_u_v = noisy(NodeKind::Uniform, Variant::Vsdk);
    let n_u_c = noisy(NodeKind::Uniform, Variant::Classic);
    let n_h_v = noisy(NodeKind::Halton, Variant::Vsdk);
    let n_h_c = noisy(NodeKind::Halton, Variant::Classic);

    outcomes.push(criterion_7(&f1_u_v, &f1_u_c));
    outcomes.push(criterion_8());
    outcomes.push(criterion_9(&[
        ("uniform/vsdk", &f2_u_v),
        ("uniform/classic", &f2_u_c),
        ("halton/vsdk", &f2_h_v),
        ("halton/classic", &f2_h_c),
    ]));
    outcomes.push(criterion_10(&[
        (NodeKind::Uniform, &f3_u_v, &f3_u_c),
        (NodeKind::Halton, &f3_h_v, &f3_h_c),
    ]));
    outcomes.push(criterion_11());
    outcomes.push(criterion_12(&[
        ("f1/uniform", 33, &f1_u_v, &f1_u_c),
        ("f1/halton", 33, &f1_h_v, &f1_h_c),
        ("f2/uniform", 289, &f2_u_v, &f2_u_c),
        ("f2/halton", 289, &f2_h_v, &f2_h_c),
        ("f3/uniform", 289, &f3_u_v, &f3_u_c),
        ("f3/halton", 289, &f3_h_v, &f3_h_c),
        ("f2-noisy/uniform", 289, &n_u_v, &n_u_c),
        ("f2-noisy/halton", 289, &n_h_v, &n_h_c),
    ]));

    let mut failed = Vec::new();
    for o in &outcomes {
        println!(
            "{}: {} — {}",
            o.label,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(o.label);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
