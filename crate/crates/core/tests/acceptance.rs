//! Acceptance runner: one PASS/FAIL line per criterion.
//!
//! Two lines are expected to fail because the bound or identity they check
//! does not hold for every input; the runner still prints them, and exits
//! nonzero only if some other line fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfvs_core::oracle::DEFAULT_BUDGET;
use sfvs_core::reductions::{
    cut_size, gen_random_instance, maxcut_certificate, maxcut_gadget, mcc_certificate, mcc_gadget, MccInstance,
    RandomModelParams,
};
use sfvs_core::{
    brute_force_sfvs, build_instance, expand_any, expand_model, expand_model_with_root, is_s_forest,
    solve_bounded_leafage, solve_rooted_path, validate_model, verify_sfvs, Instance, LeafageOptions, OrderIndex,
    Solution,
};

struct Line {
    id: &'static str,
    ok: bool,
    expected_failure: bool,
    detail: String,
}

fn line(id: &'static str, ok: bool, detail: String) -> Line {
    Line { id, ok, expected_failure: false, detail }
}

/// Every solver output seen so far, for the feasibility criterion.
#[derive(Default)]
struct Outputs(Vec<(Instance, Solution)>);

impl Outputs {
    fn record(&mut self, g: &Instance, s: &Solution) {
        self.0.push((g.clone(), s.clone()));
    }
}

fn first_failure(fails: &[String]) -> String {
    fails.first().map(|f| format!("; first: {f}")).unwrap_or_default()
}

fn criterion1(out: &mut Outputs) -> Line {
    let start = Instant::now();
    let mut fails = Vec::new();
    for seed in 0..200u64 {
        let l = 1 + (seed % 4) as usize;
        let vl = (seed / 4 % (l as u64 + 1)) as usize;
        let p = RandomModelParams::new(1 + (seed % 14) as usize, l, vl);
        let (g, m) = gen_random_instance(&p, seed).unwrap();
        let em = expand_any(&m).unwrap();
        match solve_bounded_leafage(&g, &em, &LeafageOptions::default()) {
            Ok((sol, _)) => {
                let best = brute_force_sfvs(&g, DEFAULT_BUDGET).unwrap();
                if sol.kept_weight != best.kept_weight {
                    fails.push(format!("seed {seed}: {} vs oracle {}", sol.kept_weight, best.kept_weight));
                }
                out.record(&g, &sol);
            }
            Err(e) => fails.push(format!("seed {seed}: {e}")),
        }
    }
    let took = start.elapsed();
    let ok = fails.is_empty() && took < Duration::from_secs(60);
    line("1", ok, format!("leafage solver = oracle on {}/200, {:.2?}{}", 200 - fails.len(), took, first_failure(&fails)))
}

fn criterion2(out: &mut Outputs) -> Line {
    let mut fails = Vec::new();
    for seed in 0..200u64 {
        let p = RandomModelParams::new(1 + (seed % 14) as usize, 1 + (seed % 4) as usize, 1);
        let (g, m) = gen_random_instance(&p, seed).unwrap();
        let em = expand_model_with_root(&m, m.root()).unwrap();
        match solve_rooted_path(&g, &em) {
            Ok((sol, _)) => {
                let best = brute_force_sfvs(&g, DEFAULT_BUDGET).unwrap();
                if sol.kept_weight != best.kept_weight {
                    fails.push(format!("seed {seed}: {} vs oracle {}", sol.kept_weight, best.kept_weight));
                }
                out.record(&g, &sol);
            }
            Err(e) => fails.push(format!("seed {seed}: {e}")),
        }
    }
    let against_oracle = 200 - fails.len();
    for seed in 0..50u64 {
        let p = RandomModelParams { max_subtree_nodes: 8, ..RandomModelParams::new(20 + (seed % 41) as usize, 3, 1) };
        let (g, m) = gen_random_instance(&p, 1000 + seed).unwrap();
        let em = expand_model_with_root(&m, m.root()).unwrap();
        let a = solve_rooted_path(&g, &em);
        let b = solve_bounded_leafage(&g, &em, &LeafageOptions::default());
        match (a, b) {
            (Ok((a, _)), Ok((b, _))) => {
                if a.kept_weight != b.kept_weight {
                    fails.push(format!("seed {}: {} vs leafage {}", 1000 + seed, a.kept_weight, b.kept_weight));
                }
                out.record(&g, &a);
                out.record(&g, &b);
            }
            (Err(e), _) | (_, Err(e)) => fails.push(format!("seed {}: {e}", 1000 + seed)),
        }
    }
    line(
        "2",
        fails.is_empty(),
        format!(
            "rooted-path solver = oracle on {against_oracle}/200, = leafage solver on {}/50{}",
            50 - (fails.len() - (200 - against_oracle)),
            first_failure(&fails)
        ),
    )
}

fn criterion3(out: &Outputs) -> Line {
    let bad = out.0.iter().filter(|(g, s)| !is_s_forest(g, &s.kept)).count();
    line("3", bad == 0, format!("{} of {} solver outputs are S-forests", out.0.len() - bad, out.0.len()))
}

fn criterion4() -> Vec<Line> {
    let mut fails = Vec::new();
    let mut stacked_only = Vec::new();
    for seed in 0..500u64 {
        let (g, m) = gen_random_instance(&mixed_params(seed), seed).unwrap();
        if let Err(e) = check_expansion(&m, &g) {
            if stacked_singletons(&m) && e.contains("exceed the bound") {
                stacked_only.push(format!("seed {seed}: {e}"));
            } else {
                fails.push(format!("seed {seed}: {e}"));
            }
        }
    }
    let total = fails.len() + stacked_only.len();
    vec![
        Line {
            id: "4",
            ok: total == 0,
            expected_failure: fails.is_empty(),
            detail: format!(
                "expansion bounds verbatim on {}/500 models; {} violations of the node bound, all on models whose subtrees are one shared node{}",
                500 - total,
                stacked_only.len(),
                first_failure(&stacked_only)
            ),
        },
        line(
            "4*",
            fails.is_empty(),
            format!("expansion bounds hold on every model without stacked single-node subtrees{}", first_failure(&fails)),
        ),
    ]
}

fn criterion5() -> Vec<Line> {
    let mut general = Vec::new();
    for seed in 0..200u64 {
        let (g, m) = gen_random_instance(&mixed_params(seed), seed).unwrap();
        let em = expand_model(&m).unwrap();
        if let Err(e) = structural(&g, &em) {
            general.push(format!("seed {seed}: {e}"));
        }
    }
    let (mut literal, mut residual, mut rooted) = (Vec::new(), Vec::new(), Vec::new());
    for seed in 0..200u64 {
        let (g, em) = rooted_model(seed);
        if let Err(e) = structural(&g, &em) {
            rooted.push(format!("seed {seed}: {e}"));
        }
        let oi = OrderIndex::new(&em, &g).unwrap();
        if let Err(e) = rooted_partition_stated(&g, &oi) {
            literal.push(format!("seed {seed}: {e}"));
        }
        if let Err(e) = rooted_partition_residual(&g, &oi) {
            residual.push(format!("seed {seed}: {e}"));
        }
    }
    vec![
        line(
            "5a",
            general.is_empty() && rooted.is_empty(),
            format!(
                "comparability, chord, neighbourhood and predecessor partition checks on {}/200 expanded and {}/200 rooted path models{}",
                200 - general.len(),
                200 - rooted.len(),
                first_failure(&[general, rooted].concat())
            ),
        ),
        Line {
            id: "5b",
            ok: literal.is_empty(),
            expected_failure: true,
            detail: format!(
                "rooted partition with bulk class V<◁uw||◁u> \\ S holds on {}/200 models{}",
                200 - literal.len(),
                first_failure(&literal)
            ),
        },
        line(
            "5c",
            residual.is_empty(),
            format!(
                "rooted partition with the unclaimed free common neighbours as bulk class holds on {}/200 models{}",
                200 - residual.len(),
                first_failure(&residual)
            ),
        ),
    ]
}

fn random_base(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.random_range(1..=6usize);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    build_instance(n, &edges, vec![1; n], vec![false; n]).unwrap()
}

fn criterion6() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut fails = Vec::new();
    let mut sides = 0usize;
    for t in 0..100 {
        let base = random_base(&mut rng);
        let (n, m) = (base.n(), base.m());
        let gad = maxcut_gadget(&base);
        let h = &gad.instance;
        if h.n() != 12 * n * n + 4 * n + 2 * m {
            fails.push(format!("base {t}: |V(H)| = {}", h.n()));
        }
        if !validate_model(&gad.model, h).is_empty() {
            fails.push(format!("base {t}: model does not realize H"));
        }
        if (0..h.n()).any(|v| gad.model.subtree_leaf_count(v) > 2) {
            fails.push(format!("base {t}: a subtree has more than two leaves"));
        }
        for mask in 0..1u32 << n {
            let a: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let u = maxcut_certificate(&gad, &a).unwrap();
            let k = cut_size(&gad, &a);
            let (feasible, _) = verify_sfvs(h, &u);
            if !feasible || u.len() != 4 * n * n + n + 2 * m - k {
                fails.push(format!("base {t}, A = {a:?}: feasible {feasible}, |U| = {}, k = {k}", u.len()));
            }
            sides += 1;
        }
    }
    line("6", fails.is_empty(), format!("Max-Cut certificates exact and feasible on 100 bases, {sides} sides{}", first_failure(&fails)))
}

fn criterion7() -> Line {
    let mut fails = Vec::new();
    let mut found = 0;
    let mut seed = 0u64;
    while found < 50 {
        let (k, p) = (2 + (seed % 2) as usize, 2 + (seed / 2 % 2) as usize);
        let mcc = MccInstance::random(k, p, 0.6, seed).unwrap();
        seed += 1;
        let Some(choice) = mcc.find_multicolored_clique() else { continue };
        found += 1;
        let gad = mcc_gadget(&mcc);
        let clique: Vec<usize> = choice.iter().enumerate().map(|(i, &a)| i * p + a).collect();
        let u = mcc_certificate(&gad, &clique).unwrap();
        let (feasible, weight) = verify_sfvs(&gad.instance, &u);
        let (ki, pi, mi) = (k as i64, p as i64, mcc.m() as i64);
        let target = pi * (2 * mi - ki * (ki - 9)) / 2;
        if !feasible || weight as i64 != target {
            fails.push(format!("seed {}: feasible {feasible}, weight {weight}, target {target}", seed - 1));
        }
        if !validate_model(&gad.model, &gad.instance).is_empty() {
            fails.push(format!("seed {}: model does not realize the gadget", seed - 1));
        }
        if gad.model.host_leaf_count() > k * (k + 3) / 2 {
            fails.push(format!("seed {}: {} host leaves", seed - 1, gad.model.host_leaf_count()));
        }
    }
    line("7", fails.is_empty(), format!("MCC certificates exact and feasible on 50 instances{}", first_failure(&fails)))
}

fn scaling_instance(n: usize, seed: u64) -> (Instance, sfvs_core::ExpandedTreeModel) {
    let p = RandomModelParams { max_subtree_nodes: 8, ..RandomModelParams::new(n, 3, 1) };
    let (g, m) = gen_random_instance(&p, seed).unwrap();
    let em = expand_model_with_root(&m, m.root()).unwrap();
    (g, em)
}

/// Median over five runs of the summed time of three seeded instances.
fn timed(n: usize, out: &mut Outputs) -> f64 {
    let inst: Vec<_> = (0..3).map(|s| scaling_instance(n, 80 + s)).collect();
    let mut runs: Vec<f64> = (0..5)
        .map(|_| {
            let start = Instant::now();
            for (g, em) in &inst {
                std::hint::black_box(solve_rooted_path(g, em).unwrap());
            }
            start.elapsed().as_secs_f64()
        })
        .collect();
    for (g, em) in &inst {
        out.record(g, &solve_rooted_path(g, em).unwrap().0);
    }
    runs.sort_by(f64::total_cmp);
    runs[2]
}

fn criterion8(out: &mut Outputs) -> Line {
    let (g, em) = scaling_instance(500, 17);
    let start = Instant::now();
    let (sol, _) = solve_rooted_path(&g, &em).unwrap();
    let big = start.elapsed();
    out.record(&g, &sol);
    let ns = [100.0f64, 200.0, 400.0];
    let ts: Vec<f64> = ns.iter().map(|&n| timed(n as usize, out)).collect();
    let xs: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ys: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 3.0, ys.iter().sum::<f64>() / 3.0);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    line(
        "8",
        big < Duration::from_secs(10) && slope <= 3.5,
        format!("n=500 m={} solved in {big:.2?}; log-log slope over n=100,200,400 is {slope:.2}", g.m()),
    )
}

fn main() {
    let mut out = Outputs::default();
    let mut lines = vec![criterion1(&mut out), criterion2(&mut out)];
    lines.extend(criterion4());
    lines.extend(criterion5());
    lines.push(criterion6());
    lines.push(criterion7());
    lines.push(criterion8(&mut out));
    lines.insert(2, criterion3(&out));
    let mut unexpected = 0;
    for l in &lines {
        let tag = if l.ok { "PASS" } else { "FAIL" };
        let note = if !l.ok && l.expected_failure { " (known counterexample)" } else { "" };
        println!("{tag} [{}] {}{note}", l.id, l.detail);
        if !l.ok && !l.expected_failure {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
