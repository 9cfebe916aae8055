//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kronecker_pencil::exact::{rat, RatMatrix};
use kronecker_pencil::invariants::{invariant_factors, PolyMatrix};
use kronecker_pencil::linearization::{build_companion_pencil, unstack_trajectory, HighOrderSystem};
use kronecker_pencil::oracle::{
    canonical_pencil, default_horizon, oracle_classify, random_spec, random_structured_pencil, scramble,
    verify_trajectory, GeneratedPencil, SpecLimits, StructureSpec,
};
use kronecker_pencil::solver::{
    classify_ivp, consistent_initial_space, simulate_family, solve_unique, SeededInputs, SolvabilityTag,
};
use kronecker_pencil::structure::{kronecker_decompose, PencilDecomposition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: usize, name: &str, elapsed: Duration, o: &Outcome) {
    println!(
        "criterion {id} {:<28} {}  ({:.2}s) {}",
        name,
        if o.pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        o.detail
    );
}

fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> RatMatrix {
    RatMatrix::from_fn(n, 1, |_, _| rat(rng.gen_range(-4..=4)))
}

fn consistent_vector(dec: &PencilDecomposition, rng: &mut ChaCha8Rng) -> RatMatrix {
    let basis = consistent_initial_space(dec);
    &basis * &random_vector(basis.cols(), rng)
}

struct Case {
    pencil: GeneratedPencil,
    dec: PencilDecomposition,
}

fn structure_recovery(cases: &mut Vec<Case>) -> Outcome {
    let limits = SpecLimits::default();
    let mut failures = Vec::new();
    for seed in 0..200u64 {
        let spec = random_spec(seed, &limits);
        let pencil = random_structured_pencil(&spec).expect("valid spec");
        match kronecker_decompose(&pencil.f, &pencil.g) {
            Ok(dec) => {
                if dec.structure != pencil.truth {
                    failures.push(seed);
                }
                cases.push(Case { pencil, dec });
            }
            Err(_) => failures.push(seed),
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("{}/200 recovered; failing seeds {:?}", 200 - failures.len(), failures),
    }
}

fn classification_agreement(cases: &[Case]) -> (Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut agree, mut total) = (0, 0);
    let mut mismatches = Vec::new();
    let (mut traj_total, mut traj_bad) = (0, 0);
    let mut tally = [0usize; 3];
    for (idx, c) in cases.iter().enumerate() {
        let n = c.pencil.f.cols();
        let ys = [consistent_vector(&c.dec, &mut rng), random_vector(n, &mut rng), RatMatrix::zeros(n, 1)];
        let horizon = default_horizon(&c.pencil.f);
        for (which, y) in ys.iter().enumerate() {
            total += 1;
            let class = classify_ivp(&c.dec, y).expect("shape");
            let oracle = oracle_classify(&c.pencil.f, &c.pencil.g, Some(y), horizon);
            let feasible = class.tag != SolvabilityTag::NoSolution;
            let unique = class.tag == SolvabilityTag::Unique;
            tally[class.tag as usize] += 1;
            if feasible == oracle.feasible && (!feasible || unique == (oracle.affine_dim == Some(0))) {
                agree += 1;
            } else {
                mismatches.push((idx, which));
            }
            if !feasible {
                continue;
            }
            let mut trajectories = vec![simulate_family(&c.dec, y, 0, horizon, &mut SeededInputs::new(idx as u64))
                .expect("consistent")];
            if unique {
                trajectories.push(solve_unique(&c.dec, y, 0, horizon).expect("unique"));
            }
            for t in &trajectories {
                traj_total += 1;
                if !verify_trajectory(&c.pencil.f, &c.pencil.g, t).expect("shapes").pass() {
                    traj_bad += 1;
                }
            }
        }
    }
    (
        Outcome {
            pass: agree == total,
            detail: format!(
                "{agree}/{total} agree (none {}, unique {}, infinite {}); mismatches {:?}",
                tally[0], tally[1], tally[2], mismatches
            ),
        },
        Outcome {
            pass: traj_bad == 0 && traj_total > 0,
            detail: format!("{traj_total} trajectories, {traj_bad} with nonzero residual"),
        },
    )
}

fn canonical_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut problems = Vec::new();
    let forced: Vec<(String, StructureSpec)> = (1..=4)
        .map(|q| (format!("H_{q}"), StructureSpec { inf_degrees: vec![q], ..Default::default() }))
        .chain((1..=3).map(|z| (format!("zeta={z}"), StructureSpec { zeta_indices: vec![z], ..Default::default() })))
        .collect();
    for (name, spec) in &forced {
        let (f, g) = canonical_pencil(spec);
        let dec = kronecker_decompose(&f, &g).expect("decomposes");
        let n = f.cols();
        let horizon = default_horizon(&f);
        let mut y = random_vector(n, &mut rng);
        if y.is_zero() {
            y[(0, 0)] = rat(1);
        }
        let nonzero_class = classify_ivp(&dec, &y).expect("shape").tag;
        let nonzero_oracle = oracle_classify(&f, &g, Some(&y), horizon);
        let zero = RatMatrix::zeros(n, 1);
        let zero_oracle = oracle_classify(&f, &g, Some(&zero), horizon);
        let zero_traj = solve_unique(&dec, &zero, 0, horizon);
        let free_oracle = oracle_classify(&f, &g, None, horizon);
        let ok = nonzero_class == SolvabilityTag::NoSolution
            && !nonzero_oracle.feasible
            && zero_oracle.affine_dim == Some(0)
            && free_oracle.affine_dim == Some(0)
            && zero_traj.is_ok_and(|t| t.samples.iter().all(RatMatrix::is_zero));
        if !ok {
            problems.push(name.clone());
        }
    }
    let eps_specs: Vec<Vec<usize>> = vec![vec![1], vec![2], vec![3], vec![1, 2], vec![1, 1, 3]];
    for eps in eps_specs {
        let spec = StructureSpec { eps_indices: eps.clone(), ..Default::default() };
        let (f, g) = canonical_pencil(&spec);
        let dec = kronecker_decompose(&f, &g).expect("decomposes");
        let y = random_vector(f.cols(), &mut rng);
        let class = classify_ivp(&dec, &y).expect("shape");
        let k = default_horizon(&f);
        let oracle = oracle_classify(&f, &g, Some(&y), k);
        let blocks = eps.len();
        let t = simulate_family(&dec, &y, 0, k, &mut SeededInputs::new(1)).expect("consistent");
        let ok = class.tag == SolvabilityTag::InfinitelyMany
            && class.freedom_per_step == blocks
            && oracle.affine_dim == Some(k * blocks)
            && t.free_inputs_used.iter().all(|s| s.eps.len() == blocks && s.zero.is_empty());
        if !ok {
            problems.push(format!("eps={eps:?}"));
        }
    }
    Outcome { pass: problems.is_empty(), detail: format!("failing blocks {:?}", problems) }
}

fn order_two_scalar() -> Outcome {
    let scalar = |v: i64| RatMatrix::from_int_rows(&[[v]]);
    let sys = HighOrderSystem::new(vec![scalar(-1), scalar(1), scalar(0)], 0, None).expect("valid");
    let pencil = build_companion_pencil(&sys);
    let (f, g) = (pencil.f(), pencil.g());
    let dec = kronecker_decompose(f, g).expect("decomposes");
    let good = RatMatrix::from_int_col(&[1, 1]);
    let bad = RatMatrix::from_int_col(&[1, 0]);
    let mut notes = Vec::new();
    let unique = classify_ivp(&dec, &good).map(|c| c.tag) == Ok(SolvabilityTag::Unique);
    if !unique {
        notes.push("(1,1) not unique");
    }
    let constant = solve_unique(&dec, &good, 0, 10).is_ok_and(|t| {
        t.samples.len() == 11
            && t.samples.iter().all(|y| y == &good)
            && verify_trajectory(f, g, &t).is_ok_and(|r| r.pass())
            && unstack_trajectory(&t.samples, 1).is_ok_and(|xs| xs.iter().all(|x| x == &scalar(1)))
    });
    if !constant {
        notes.push("trajectory not constant");
    }
    let none = classify_ivp(&dec, &bad).map(|c| c.tag) == Ok(SolvabilityTag::NoSolution);
    if !none {
        notes.push("(1,0) not rejected");
    }
    if oracle_classify(f, g, Some(&bad), 10).feasible {
        notes.push("oracle finds (1,0) feasible");
    }
    Outcome { pass: notes.is_empty(), detail: format!("{:?}", notes) }
}

fn smith_cross_check() -> Outcome {
    let limits = SpecLimits::regular(6);
    let mut bad = Vec::new();
    for seed in 0..50u64 {
        let spec = random_spec(1000 + seed, &limits);
        let p = random_structured_pencil(&spec).expect("valid spec");
        let det = PolyMatrix::from_pencil(&p.f, &p.g).determinant();
        let factors = invariant_factors(&p.f, &p.g);
        let dec = kronecker_decompose(&p.f, &p.g).expect("decomposes");
        let ok = !det.is_zero()
            && factors.product() == det.monic()
            && factors.total_degree() == dec.structure.p
            && factors.normal_rank() == p.f.rows();
        if !ok {
            bad.push(seed);
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{}/50 consistent; failing {:?}", 50 - bad.len(), bad) }
}

fn scramble_invariance() -> Outcome {
    let limits = SpecLimits::default();
    let mut bad = Vec::new();
    for trial in 0..50u64 {
        let spec = random_spec(5000 + trial, &limits);
        let p = random_structured_pencil(&spec).expect("valid spec");
        let (f2, g2, _, _) = scramble(&p.f, &p.g, 9_000 + trial);
        let a = kronecker_decompose(&p.f, &p.g).map(|d| d.structure);
        let b = kronecker_decompose(&f2, &g2).map(|d| d.structure);
        if a.is_err() || a != b || a.as_ref().ok() != Some(&p.truth) {
            bad.push(trial);
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{}/50 identical; failing {:?}", 50 - bad.len(), bad) }
}

fn main() -> ExitCode {
    let mut all = true;
    let mut cases = Vec::new();

    let t = Instant::now();
    let mut o = structure_recovery(&mut cases);
    let el = t.elapsed();
    o.pass &= el < Duration::from_secs(120);
    report(1, "structure recovery", el, &o);
    all &= o.pass;

    let t = Instant::now();
    let (agree, residual) = classification_agreement(&cases);
    let el = t.elapsed();
    report(2, "classification vs oracle", el, &agree);
    report(3, "exact zero residuals", el, &residual);
    all &= agree.pass && residual.pass;

    let t = Instant::now();
    let o = canonical_suite();
    report(4, "canonical block suite", t.elapsed(), &o);
    all &= o.pass;

    let t = Instant::now();
    let mut o = order_two_scalar();
    let el = t.elapsed();
    o.pass &= el < Duration::from_secs(1);
    report(5, "order-2 scalar system", el, &o);
    all &= o.pass;

    let t = Instant::now();
    let mut o = smith_cross_check();
    let el = t.elapsed();
    o.pass &= el < Duration::from_secs(60);
    report(6, "Smith vs determinant", el, &o);
    all &= o.pass;

    let t = Instant::now();
    let o = scramble_invariance();
    report(7, "scramble invariance", t.elapsed(), &o);
    all &= o.pass;

    if all {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
