//! Acceptance checks, one verdict line per criterion. Exits nonzero if any
//! criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssr_cli::bench::loglog_slope;
use ssr_cli::commands::{solve, SolveOptions};
use ssr_cli::files::Instance;
use ssr_core::oracle::{
    brute_force_factor_r, brute_force_semi_restricted, brute_force_ssr, brute_force_two_set,
};
use ssr_core::rational::{int, ratio};
use ssr_core::solver::{prepare, Case2Table};
use ssr_core::{
    approximate, check_feasible_semi_restricted, check_feasible_two_set, encode_factor_r,
    encode_ssr, generate, scale_instance, solve_anchored, solve_semi_restricted, FactorRInstance,
    IntegerInstance, Rational, SolutionPair, SsrInstance, TwoSetInstance,
};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn epsilons() -> Vec<Rational> {
    vec![ratio(1, 10), ratio(3, 10), ratio(1, 2), ratio(9, 10)]
}

/// 200 instances, n in 1..=7, weights in 1..=40.
fn fptas_battery() -> Vec<TwoSetInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..200)
        .map(|_| {
            let n = rng.gen_range(1..=7);
            generate::random_two_set(&mut rng, n, 40)
        })
        .collect()
}

fn exact_solver_correctness() -> Verdict {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut checks, mut wrong) = (0, 0);
    for k in 0..500 {
        let n = 2 + k % 6;
        let inst = generate::random_two_set(&mut rng, n, 30);
        for m in 1..=2 * n {
            let int = IntegerInstance::from_rationals(inst.weights(), m).unwrap();
            let got = solve_semi_restricted(&int).unwrap().solution;
            let want = brute_force_semi_restricted(&inst, m).unwrap().optimum;
            checks += 1;
            if got.value(inst.weights()).unwrap() != want {
                wrong += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    verdict(
        wrong == 0 && elapsed < Duration::from_secs(60),
        format!(
            "500 instances, {checks} pivots, {wrong} mismatches, {:.1}s (limit 60s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn fptas_guarantee(battery: &[TwoSetInstance]) -> Verdict {
    let (mut runs, mut bad, mut worst) = (0, 0, 0f64);
    for inst in battery {
        let opt = brute_force_two_set(inst).unwrap().optimum;
        for eps in epsilons() {
            let res = approximate(inst, &eps).unwrap();
            runs += 1;
            match (opt.as_rational(), res.value.as_rational()) {
                (Some(o), Some(v)) => {
                    if v < int(1)
                        || v > (int(1) + &eps) * &o
                        || !check_feasible_two_set(&res.solution, inst.n())
                    {
                        bad += 1;
                    }
                    worst = worst.max(ssr_core::rational::to_f64(&(v / o)));
                }
                (None, None) => {}
                _ => bad += 1,
            }
        }
    }
    verdict(
        bad == 0,
        format!("{runs} runs, {bad} violations, worst value/optimum {worst:.4} (exact comparison)"),
    )
}

fn heaviest(set: &BTreeSet<usize>, weights: &[Rational]) -> usize {
    *set.iter()
        .max_by(|&&a, &&b| weights[a - 1].cmp(&weights[b - 1]).then(b.cmp(&a)))
        .unwrap()
}

fn scaling_inequalities(battery: &[TwoSetInstance]) -> Verdict {
    let (mut pairs, mut failures) = (0, Vec::new());
    let (mut sandwich, mut slack, mut additive, mut optimum) = (0, 0, 0, 0);
    for (k, inst) in battery.iter().enumerate() {
        let w = inst.weights();
        let opt = brute_force_two_set(inst).unwrap().best;
        for eps in epsilons() {
            let res = approximate(inst, &eps).unwrap();
            for rec in &res.pivots {
                let ctx = scale_instance(w, rec.pivot, &eps).unwrap();
                let checks = ctx.check_pair(w, &rec.solution).unwrap();
                pairs += 1;
                sandwich += usize::from(!checks.sum_sandwich);
                slack += usize::from(!checks.slack_within_third);
                additive += usize::from(!checks.additive_bound);
                if !checks.all() {
                    failures.push(format!(
                        "instance {k} eps {eps} pivot {}: {checks:?}",
                        rec.pivot
                    ));
                }
            }
            if let Some(opt) = &opt {
                let (x, y) = (heaviest(&opt.s1, w), heaviest(&opt.s2, w));
                let n0 = if w[x - 1] <= w[y - 1] { x } else { y };
                let ctx = scale_instance(w, n0, &eps).unwrap();
                let scaled_opt = opt.value(&ctx.scaled_rationals()).unwrap();
                if !ctx.scaled_optimum_bound(w, opt).unwrap()
                    || res.pivots[n0 - 1].scaled_value > scaled_opt
                {
                    optimum += 1;
                    failures.push(format!("instance {k} eps {eps} optimum at pivot {n0}"));
                }
            }
        }
    }
    let detail = format!(
        "{pairs} pivot results; violations: sum sandwich {sandwich}, slack <= eps/3 of set sum {slack}, additive eps/3 {additive}, optimum under scaling {optimum}{}",
        failures.first().map(|f| format!("; first: {f}")).unwrap_or_default());
    verdict(failures.is_empty(), detail)
}

fn dp_structure() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut cells, mut reached, mut bad) = (0u64, 0u64, 0u64);
    for k in 0..150 {
        let n = 2 + k % 5;
        let inst = generate::random_two_set(&mut rng, n, [6, 25][k % 2]);
        let w: Vec<i64> = inst
            .weights()
            .iter()
            .map(|x| x.to_integer().try_into().unwrap())
            .collect();
        let mut tables = HashMap::new();
        for m in 1..=2 * n {
            let int = IntegerInstance::from_rationals(inst.weights(), m).unwrap();
            let (sides, cand) = prepare(&int);
            let table = Case2Table::build(&int, sides, &cand).unwrap();
            let (lo, hi) = table.window();
            let q = i64::try_from(&cand.q).unwrap();
            bad += u64::from((lo, hi) != (-2 * q, q));
            let s_min: BTreeSet<usize> = cand.s_min.iter().copied().collect();
            for i in 0..=n {
                for d in lo..=hi {
                    for l in 0..2 {
                        let Some(sol) = table.reconstruct(i, d, l) else {
                            continue;
                        };
                        cells += 1;
                        let sum = |s: &BTreeSet<usize>| s.iter().map(|&j| w[j - 1]).sum::<i64>();
                        let ok_s1 = sol.s1.iter().all(|&j| {
                            j == m
                                || (j > sides.p
                                    && s_min.contains(&(j - sides.p))
                                    && j - sides.p <= i)
                        });
                        let ok_s2 = sol
                            .s2
                            .iter()
                            .all(|&j| j > sides.p_prime && j - sides.p_prime <= i.min(n));
                        let b1: BTreeSet<usize> = sol.s1.iter().map(|j| j - sides.p).collect();
                        let b2: BTreeSet<usize> =
                            sol.s2.iter().map(|j| j - sides.p_prime).collect();
                        let feasible = l == 0
                            || i < n
                            || check_feasible_semi_restricted(&sol, int.weights(), m);
                        if sum(&sol.s1) - sum(&sol.s2) != d
                            || !ok_s1
                            || !ok_s2
                            || !b1.is_disjoint(&b2)
                            || !feasible
                        {
                            bad += 1;
                        }
                    }
                }
            }
            tables.insert(m, (sides, q, table));
        }
        // Every feasible pair whose prefixes stay in its anchor's window.
        for code in 0..3usize.pow(n as u32) {
            let (mut s1, mut s2, mut c) = (BTreeSet::new(), BTreeSet::new(), code);
            for i in 1..=n {
                match c % 3 {
                    1 => drop(s1.insert(i)),
                    2 => drop(s2.insert(i + n)),
                    _ => {}
                }
                c /= 3;
            }
            let sol = SolutionPair::new(s1, s2);
            if !check_feasible_two_set(&sol, n) {
                continue;
            }
            let top = |s: &BTreeSet<usize>| s.iter().map(|&j| w[j - 1]).max().unwrap();
            let (own, other) = if top(&sol.s1) <= top(&sol.s2) {
                (&sol.s1, &sol.s2)
            } else {
                (&sol.s2, &sol.s1)
            };
            let am = top(own);
            let anchor = *own.iter().find(|&&j| w[j - 1] == am).unwrap();
            let (sides, q, table) = &tables[&anchor];
            let mut d = am;
            let mut inside = true;
            for i in 1..=n {
                if i + sides.p != anchor && own.contains(&(i + sides.p)) {
                    d += w[i + sides.p - 1];
                }
                if other.contains(&(i + sides.p_prime)) {
                    d -= w[i + sides.p_prime - 1];
                }
                inside &= -2 * q <= d && d <= *q;
            }
            if inside {
                reached += 1;
                let total: i64 = own.iter().chain(other).map(|&j| w[j - 1]).sum();
                if !table.occupied(n, d, 1) || (table.final_x(d, 1).unwrap() as i64) < total {
                    bad += 1;
                }
            }
        }
    }
    verdict(bad == 0, format!("{cells} occupied cells checked, {reached} in-window feasible pairs reached, {bad} violations"))
}

fn reduction_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut compared, mut bad) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let w = generate::random_weights(&mut rng, n, 30);
        let direct = brute_force_ssr(&w).unwrap().value;
        let encoded = brute_force_two_set(&encode_ssr(&SsrInstance::new(w.clone()).unwrap()))
            .unwrap()
            .optimum;
        compared += 1;
        bad += usize::from(direct != encoded);
        for r in [int(1), ratio(3, 2), int(2)] {
            let direct = brute_force_factor_r(&w, &r).unwrap().value;
            let inst = FactorRInstance::new(w.clone(), r).unwrap();
            compared += 1;
            bad += usize::from(
                direct
                    != brute_force_two_set(&encode_factor_r(&inst))
                        .unwrap()
                        .optimum,
            );
        }
    }
    verdict(
        bad == 0,
        format!("{compared} source/encoding optimum pairs, {bad} mismatches"),
    )
}

fn runtime_shape() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    // Exact solver: pivot weight pinned at 50, other weights below it and above.
    let mut exact = Vec::new();
    for n in [8usize, 16, 32, 64] {
        let mut total = 0u64;
        for _ in 0..5 {
            let mut w = generate::random_u64(&mut rng, 2 * n, 100);
            w[0] = 50;
            total += solve_anchored(&IntegerInstance::from_u64(&w, 1).unwrap())
                .unwrap()
                .cell_ops;
        }
        exact.push((n as f64, total as f64));
    }
    let exact_slope = loglog_slope(&exact);

    let eps = ratio(1, 2);
    let mut approx = Vec::new();
    for n in [4usize, 8, 12, 16] {
        let mut total = 0u64;
        for _ in 0..3 {
            total += approximate(&generate::random_two_set(&mut rng, n, 50), &eps)
                .unwrap()
                .cell_ops();
        }
        approx.push((n as f64, total as f64));
    }
    let approx_slope = loglog_slope(&approx);

    let inst = generate::random_two_set(&mut rng, 40, 50);
    let started = Instant::now();
    approximate(&inst, &ratio(1, 4)).unwrap();
    let wall = started.elapsed();

    verdict(
        (1.5..=2.5).contains(&exact_slope) && (3.0..=5.0).contains(&approx_slope) && wall < Duration::from_secs(10),
        format!(
            "exact slope {exact_slope:.3} (need 1.5..2.5), fptas slope {approx_slope:.3} (need 3..5), n=40 eps=1/4 in {:.2}s (limit 10s)",
            wall.as_secs_f64()
        ),
    )
}

fn determinism(battery: &[TwoSetInstance]) -> Verdict {
    let (mut files, mut differing) = (0, 0);
    for inst in battery {
        let instance = Instance::TwoSet(inst.clone());
        for eps in epsilons() {
            let mut opts = SolveOptions::new(eps);
            opts.trace = true;
            let first = solve(&instance, &opts).unwrap().to_json();
            let second = solve(&instance, &opts).unwrap().to_json();
            opts.parallel = true;
            let parallel = solve(&instance, &opts).unwrap().to_json();
            files += 1;
            differing += usize::from(first != second || first != parallel);
        }
    }
    verdict(differing == 0, format!("{files} solution files (with trace), {differing} differ across runs or parallel setting"))
}

type Criterion<'a> = (&'a str, Box<dyn Fn() -> Verdict + 'a>);

fn main() {
    let battery = fptas_battery();
    let criteria: Vec<Criterion> = vec![
        (
            "1 exact solver matches oracle",
            Box::new(exact_solver_correctness),
        ),
        (
            "2 fptas within (1+eps) of optimum",
            Box::new(|| fptas_guarantee(&battery)),
        ),
        (
            "3 scaling inequalities",
            Box::new(|| scaling_inequalities(&battery)),
        ),
        ("4 dp window, indices, reachability", Box::new(dp_structure)),
        ("5 reduction equivalence", Box::new(reduction_equivalence)),
        ("6 runtime shape", Box::new(runtime_shape)),
        (
            "7 deterministic solution files",
            Box::new(|| determinism(&battery)),
        ),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let v = check();
        failed += usize::from(!v.pass);
        println!(
            "criterion {name}: {} ({})",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
