//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Every Monte Carlo criterion uses seed 1, fixed before any run.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use edimlab::distance::all_pairs_distances;
use edimlab::experiment::strip_wall_time;
use edimlab::montecarlo::{
    estimate_diameter2, estimate_joint_fail, estimate_nondistinguish, estimate_profile_table,
    estimate_type_pair_counts, profile_probability, random_set_trial, DISTINGUISHING_PROFILES,
};
use edimlab::solvers::solve_resolving;
use edimlab::theory::{dim_asymptotic, edim_asymptotic, eps_of, q_of, r_of, s_of, suen_terms};
use edimlab::{generate_er, Graph, Method, Mode};

const MC_SEED: u64 = 1;
const Z: f64 = 4.0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn connected_er(n: usize, p: f64, count: usize) -> Vec<(u64, Graph)> {
    (0u64..)
        .map(|s| (s, generate_er(n, p, s).unwrap()))
        .filter(|(_, g)| all_pairs_distances(g).is_connected())
        .take(count)
        .collect()
}

fn size(g: &Graph, mode: Mode, method: Method) -> usize {
    solve_resolving(g, &all_pairs_distances(g), mode, method, None).unwrap().size
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for (seed, g) in connected_er(10, 0.5, 100) {
        for mode in [Mode::Vertex, Mode::Edge] {
            let (b, e) = (size(&g, mode, Method::Bnb), size(&g, mode, Method::Brute));
            if b != e {
                mismatches.push(format!("seed {seed} {mode}: bnb {b} brute {e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        mismatches.is_empty() && elapsed < Duration::from_secs(60),
        format!("200 solves, {} mismatches {:?}, {:.2?}", mismatches.len(), mismatches, elapsed),
    )
}

fn family_values() -> Outcome {
    let mut bad = Vec::new();
    let mut expect = |name: String, got: usize, want: usize| {
        if got != want {
            bad.push(format!("{name} = {got}, expected {want}"));
        }
    };
    for n in 3..=8 {
        expect(format!("edim(P{n})"), size(&Graph::path(n), Mode::Edge, Method::Brute), 1);
        expect(format!("dim(P{n})"), size(&Graph::path(n), Mode::Vertex, Method::Brute), 1);
    }
    for n in 4..=8 {
        expect(format!("edim(C{n})"), size(&Graph::cycle(n), Mode::Edge, Method::Brute), 2);
    }
    for n in 3..=7 {
        expect(format!("edim(K{n})"), size(&Graph::complete(n), Mode::Edge, Method::Brute), n - 1);
        expect(format!("dim(K{n})"), size(&Graph::complete(n), Mode::Vertex, Method::Brute), n - 1);
    }
    check(bad.is_empty(), if bad.is_empty() { "paths, cycles, complete graphs".into() } else { bad.join("; ") })
}

fn closed_form_identities() -> Outcome {
    let mut worst_qr: f64 = 0.0;
    let mut worst_mu: f64 = 0.0;
    for n in [16u64, 100, 10_000, 1_000_000] {
        for k in 1..=9 {
            let p = k as f64 / 10.0;
            let eps = eps_of(n).unwrap();
            let r = r_of(n, p).unwrap();
            let lhs = q_of(p).powf(r);
            let rhs = (n as f64).powf(eps - 4.0);
            worst_qr = worst_qr.max((lhs - rhs).abs() / rhs);
            let t = suen_terms(n, p).unwrap();
            worst_mu = worst_mu.max((t.mu - t.mu_via_eps).abs() / t.mu_via_eps);
        }
    }
    let mut worst_sum: f64 = 0.0;
    for k in 1..=99 {
        let p = k as f64 / 100.0;
        let case_sum = 2.0 * (p * p * (1.0 - p).powi(2) + 2.0 * p * (1.0 - p).powi(3));
        worst_sum = worst_sum.max((1.0 - q_of(p) - case_sum).abs());
    }
    check(
        worst_qr <= 1e-9 && worst_mu <= 1e-9 && worst_sum <= 1e-12,
        format!("max rel q^r {worst_qr:.2e}, max rel mu {worst_mu:.2e}, max abs case sum {worst_sum:.2e}"),
    )
}

fn mc_q() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for p in [0.3, 0.5, 0.7] {
        let start = Instant::now();
        let e = estimate_nondistinguish(1000, p, 100_000, MC_SEED).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let dev = (e.p_hat - q_of(p)).abs();
        let tol = Z * e.stderr + 0.005;
        ok &= dev <= tol && elapsed < Duration::from_secs(300);
        lines.push(format!("p={p}: p_hat {:.5} q {:.5} |dev| {dev:.5} <= {tol:.5} ({elapsed:.1?})", e.p_hat, q_of(p)));
    }
    check(ok, lines.join("; "))
}

fn mc_s_p() -> Outcome {
    let e = estimate_joint_fail(500, 0.5, 50_000, MC_SEED).map_err(|e| e.to_string())?;
    let dev = (e.overall.p_hat - 0.40625).abs();
    let tol = Z * e.overall.stderr + 0.01;
    check(
        dev <= tol && (s_of(0.5) - 0.40625).abs() < 1e-15,
        format!("p_hat {:.5} vs 0.40625, |dev| {dev:.5} <= {tol:.5}", e.overall.p_hat),
    )
}

fn profile_table() -> Outcome {
    let p = 0.5;
    let t = estimate_profile_table(1000, p, 100_000, MC_SEED).map_err(|e| e.to_string())?;
    let mut ok = true;
    let mut lines = Vec::new();
    for pr in DISTINGUISHING_PROFILES {
        let f = t.frequency(pr);
        let want = profile_probability(pr, p);
        let tol = Z * f.stderr + 0.005;
        ok &= (f.p_hat - want).abs() <= tol;
        lines.push(format!("{pr:?} {:.5}/{want:.5}", f.p_hat));
    }
    let agg = t.distinguishing_aggregate();
    let want = 1.0 - q_of(p);
    let tol = Z * agg.stderr + 0.005;
    ok &= (agg.p_hat - want).abs() <= tol;
    lines.push(format!("aggregate {:.5}/{want:.5}", agg.p_hat));
    check(ok, lines.join(", "))
}

fn upper_bound_reproduction() -> Outcome {
    let (n, p) = (500usize, 0.5);
    let asym = edim_asymptotic(n as u64, p).unwrap();
    let big = (1.2 * asym).ceil() as usize;
    let small = (0.5 * asym).ceil() as usize;
    if (big, small) != (64, 27) {
        return Err(format!("set sizes {big}, {small} differ from 64, 27"));
    }
    let hi = random_set_trial(n, p, big, 20, MC_SEED).map_err(|e| e.to_string())?;
    let lo = random_set_trial(n, p, small, 20, MC_SEED).map_err(|e| e.to_string())?;
    let lo_failures = lo.trials - lo.successes;
    check(
        hi.successes >= 18 && lo_failures >= 18,
        format!("w={big}: {}/20 generating (need >= 18); w={small}: {lo_failures}/20 failing (need >= 18)", hi.successes),
    )
}

fn diameter_two() -> Outcome {
    let e = estimate_diameter2(500, 0.5, 100, MC_SEED).map_err(|e| e.to_string())?;
    check(e.successes >= 99, format!("{}/100 graphs with diameter 2", e.successes))
}

fn type_pair_counts() -> Outcome {
    let c = estimate_type_pair_counts(40, 0.5, 200, MC_SEED).map_err(|e| e.to_string())?;
    let want = 3.0 * 91_390.0 * 0.25;
    let dev = (c.mean_type2 - want).abs();
    check(
        dev <= 3.0 * c.stderr_type2 && (c.expected_type2 - want).abs() < 1e-9,
        format!("mean type-2 {:.1} vs {want:.1}, |dev| {dev:.1} <= {:.1}", c.mean_type2, 3.0 * c.stderr_type2),
    )
}

fn dim_vs_edim() -> Outcome {
    let mut hist = std::collections::BTreeMap::<i64, usize>::new();
    let mut strict = 0;
    let graphs = connected_er(14, 0.5, 50);
    for (_, g) in &graphs {
        let d = size(g, Mode::Vertex, Method::Bnb) as i64;
        let e = size(g, Mode::Edge, Method::Bnb) as i64;
        *hist.entry(e - d).or_default() += 1;
        strict += usize::from(e > d);
    }
    let mut formula = true;
    for n in [16u64, 100, 10_000, 1_000_000] {
        for k in 1..=9 {
            let p = k as f64 / 10.0;
            formula &= edim_asymptotic(n, p).unwrap() > dim_asymptotic(n, p).unwrap();
        }
    }
    check(
        formula,
        format!("edim - dim histogram {hist:?}; edim > dim in {strict}/{} graphs (recorded)", graphs.len()),
    )
}

fn cli_invocations(dir: &std::path::Path) -> Vec<Vec<String>> {
    let graph = dir.join("g.txt").display().to_string();
    let sweep = dir.join("sweep.csv").display().to_string();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut out = vec![
        s(&["gen", "--n", "12", "--p", "0.4", "--seed", "5"]),
        s(&["gen", "--n", "12", "--p", "0.4", "--seed", "5", "--out", &graph]),
        s(&["theory", "--n", "1000", "--p", "0.5"]),
        s(&["theory", "--n", "5", "--p", "0.5"]),
        s(&["mc", "--target", "q", "--n", "200", "--p", "0.5", "--trials", "500", "--seed", "3"]),
        s(&["mc", "--target", "profile", "--n", "200", "--p", "0.5", "--trials", "500", "--seed", "3"]),
        s(&["mc", "--target", "s_p", "--n", "100", "--p", "0.5", "--trials", "500", "--seed", "3"]),
        s(&["mc", "--target", "diameter2", "--n", "60", "--p", "0.5", "--trials", "20", "--seed", "3"]),
        s(&["mc", "--target", "type_pairs", "--n", "30", "--p", "0.5", "--trials", "20", "--seed", "3"]),
        s(&["mc", "--target", "random_set", "--n", "60", "--p", "0.5", "--trials", "10", "--seed", "3", "--w", "20"]),
        s(&["sweep", "--n-list", "8,10", "--p-list", "0.3,0.6", "--seeds", "2", "--method", "bnb"]),
        s(&["sweep", "--n-list", "9", "--p-list", "0.5", "--seeds", "3", "--mode", "edge", "--out", &sweep]),
        s(&["solve", "--n", "12", "--p", "1.0", "--mode", "vertex", "--method", "brute", "--max-size", "3"]),
    ];
    for method in ["brute", "bnb", "greedy"] {
        for mode in ["vertex", "edge"] {
            out.push(s(&["solve", "--graph", &graph, "--mode", mode, "--method", method]));
            out.push(s(&["solve", "--n", "11", "--p", "0.5", "--seed", "2", "--mode", mode, "--method", method]));
        }
    }
    out
}

/// Output of one invocation with wall-time fields removed: stdout, stderr,
/// the exit code and any file the invocation wrote.
fn invoke(args: &[String], dir: &std::path::Path) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_edimlab")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let stdout: String = if args[0] == "sweep" && !args.contains(&"--out".to_string()) {
        strip_wall_time(&stdout).unwrap()
    } else {
        stdout.lines().filter(|l| !l.contains("\"wall_time_ms\"")).map(|l| format!("{l}\n")).collect()
    };
    let mut text = format!("code {:?}\n{stdout}\n{}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    if let Some(i) = args.iter().position(|a| a == "--out") {
        let written = std::fs::read_to_string(dir.join(&args[i + 1])).unwrap_or_default();
        text.push_str(&if args[0] == "sweep" { strip_wall_time(&written).unwrap() } else { written });
    }
    text
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    // Write the graph file first so every solve sees it.
    let calls = cli_invocations(dir.path());
    invoke(&calls[1], dir.path());
    let mut differing = Vec::new();
    for args in &calls {
        if invoke(args, dir.path()) != invoke(args, dir.path()) {
            differing.push(args.join(" "));
        }
    }
    check(
        differing.is_empty(),
        format!("{} invocations run twice, {} differ {:?}", calls.len(), differing.len(), differing),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence (bnb = brute, G(10, 0.5))", oracle_equivalence),
        ("known-family values", family_values),
        ("closed-form identities", closed_form_identities),
        ("Monte Carlo q", mc_q),
        ("Monte Carlo s_p", mc_s_p),
        ("profile table", profile_table),
        ("upper-bound reproduction (random landmark sets)", upper_bound_reproduction),
        ("diameter 2", diameter_two),
        ("type-pair counts", type_pair_counts),
        ("dim vs edim trend", dim_vs_edim),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} criterion {:>2}: {name} [{:.1?}]: {detail}", i + 1, start.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
