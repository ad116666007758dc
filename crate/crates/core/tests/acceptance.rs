//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion is red.

use std::time::{Duration, Instant};

use qtough_core::extremal::{n_min_thm11, Theorem};
use qtough_core::random::{gnp, sample_rng};
use qtough_core::spectral::{largest_eigenvalue, signless_laplacian, DEFAULT_TOL};
use qtough_core::toughness::{l_toughness, l_toughness_naive};
use qtough_core::verify::suites::{
    chain_grid, identity_grid, run_suite, Suite, SuiteConfig, SHARPNESS_THM11, SHARPNESS_THM12,
};
use qtough_core::verify::{monte_carlo_search, sharpness_report, Outcome, VerificationReport};
use qtough_core::{ExtendedRational, Graph, SampleModel};
use rand::Rng;

const STRICT: f64 = 1e-9;
const SHARPNESS_BUDGET: Duration = Duration::from_secs(60);
const MONTE_CARLO_BUDGET: Duration = Duration::from_secs(600);
const ORACLE_BUDGET: Duration = Duration::from_secs(120);
const SAMPLES: usize = 10_000;
const MC_TOL: f64 = 1e-8;
const CHAIN_FLOOR: f64 = -1e-8;
const EIGEN_TOL: f64 = 1e-9;
const ORACLE_GRAPHS: u64 = 500;
const SEED: u64 = 20_240_601;

struct Line {
    id: usize,
    pass: bool,
    detail: String,
}

fn show(lines: &mut Vec<Line>, id: usize, pass: bool, detail: String) {
    println!("criterion {id}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    lines.push(Line { id, pass, detail });
}

fn sharpness(theorem: Theorem, tuples: &[(usize, usize, usize)]) -> (bool, String) {
    let mut pass = true;
    let mut notes = Vec::new();
    for &(b, l, n) in tuples {
        let start = Instant::now();
        let r = sharpness_report(theorem, b, l, n).expect("sharpness tuple is valid");
        let elapsed = start.elapsed();
        let predicted = theorem.extremal_toughness(b, l);
        let t_ok = r.computed["t_l"] == predicted.to_string();
        let below = predicted < theorem.toughness_bound(b);
        let strict_ok = match theorem {
            Theorem::Thm11 => r.computed["q_minus_two_n_minus_two_l"].as_f64().unwrap() > STRICT,
            Theorem::Thm12 => true,
        };
        let ok = r.passed && t_ok && below && strict_ok && elapsed < SHARPNESS_BUDGET;
        pass &= ok;
        let flag = if r.computed["below_n_min"] == true { " sub-threshold" } else { "" };
        notes.push(format!("({b},{l},{n}) t_l={}{flag} {:.2?}", r.computed["t_l"], elapsed));
    }
    (pass, notes.join("; "))
}

fn monte_carlo() -> (bool, String) {
    let start = Instant::now();
    let mut runs: Vec<VerificationReport> = Vec::new();
    for n in [11, 14] {
        for model in [SampleModel::default_for(2), SampleModel::ExtremalPlus(5)] {
            runs.push(monte_carlo_search(Theorem::Thm11, 1, 2, n, model, SAMPLES, SEED, MC_TOL).unwrap());
        }
    }
    runs.push(
        monte_carlo_search(Theorem::Thm12, 2, 3, 12, SampleModel::default_for(3), SAMPLES, SEED, MC_TOL)
            .unwrap(),
    );
    let elapsed = start.elapsed();
    let failed: u64 = runs.iter().map(|r| r.computed["failed"].as_u64().unwrap()).sum();
    let met: u64 = runs.iter().map(|r| r.computed["hypothesis_met"].as_u64().unwrap()).sum();
    let all_pass = runs.iter().all(|r| r.outcome == Outcome::Pass);
    (
        failed == 0 && all_pass && elapsed < MONTE_CARLO_BUDGET,
        format!("{} runs x {SAMPLES}, hypothesis-met {met}, failed {failed}, {elapsed:.2?}", runs.len()),
    )
}

fn lemmas() -> (bool, String) {
    let mut pass = true;
    let mut notes = Vec::new();
    for (suite, expected) in
        [(Suite::Lemma21, 100), (Suite::Lemma22, 1000), (Suite::Lemma23, 100), (Suite::Lemma24, 1000)]
    {
        let cfg = SuiteConfig { seed: SEED, ..Default::default() };
        let reports = run_suite(suite, &cfg).unwrap();
        let passed = reports.iter().filter(|r| r.outcome == Outcome::Pass).count();
        pass &= reports.len() == expected && passed == expected;
        notes.push(format!("{suite} {passed}/{expected}"));
    }
    (pass, notes.join(", "))
}

fn identities() -> (bool, String) {
    let reports = identity_grid(&SuiteConfig::default()).unwrap();
    let count = |id: &str| reports.iter().filter(|r| r.check_id == id).count();
    let bad: Vec<_> =
        reports.iter().filter(|r| r.outcome != Outcome::Pass && r.outcome != Outcome::Skipped).collect();
    let skipped = reports.iter().filter(|r| r.outcome == Outcome::Skipped).count();
    let detail = format!(
        "charpoly_difference {} charpoly {} phi_identity {} g3prime_gap {} phi_positive {} (skipped {skipped}), bad {}",
        count("charpoly_difference"),
        count("charpoly"),
        count("phi_identity"),
        count("g3prime_gap"),
        count("phi_positive"),
        bad.len()
    );
    let covered = ["charpoly_difference", "charpoly", "phi_identity", "g3prime_gap", "phi_positive"]
        .iter()
        .all(|id| count(id) > 0);
    (bad.is_empty() && covered, detail)
}

fn chains() -> (bool, String) {
    let reports = chain_grid(&SuiteConfig::default()).unwrap();
    let worst = reports.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    let pass = reports.iter().all(|r| r.passed && r.margin >= 0.0) && worst >= CHAIN_FLOOR;
    let strict = reports
        .iter()
        .filter_map(|r| r.computed.get("link_strict").and_then(|v| v.as_f64()))
        .fold(f64::INFINITY, f64::min);
    (
        pass && strict > STRICT,
        format!("{} grid points, min margin {worst:.3e}, min strict link {strict:.3e}", reports.len()),
    )
}

fn oracle_equivalence() -> (bool, String) {
    let start = Instant::now();
    let mut mismatches = 0;
    for i in 0..ORACLE_GRAPHS {
        let mut rng = sample_rng(SEED, i);
        let n = rng.random_range(2..=12);
        let p = rng.random_range(0.2..0.95);
        let g = gnp(n, p, &mut rng).unwrap();
        let l = 2 + (i as usize % 3);
        let fast = l_toughness(&g, l).unwrap();
        let naive = l_toughness_naive(&g, l).unwrap();
        if fast.value != naive.value {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    (
        mismatches == 0 && elapsed < ORACLE_BUDGET,
        format!("{ORACLE_GRAPHS} graphs, {mismatches} mismatches, {elapsed:.2?}"),
    )
}

fn eigensolver() -> (bool, String) {
    let mut worst_complete: f64 = 0.0;
    let mut worst_cycle: f64 = 0.0;
    let mut contract = true;
    let mut solves = 0;
    let mut check = |g: &Graph| -> f64 {
        let m = signless_laplacian(g);
        let pair = largest_eigenvalue(&m, DEFAULT_TOL).expect("residual contract");
        contract &= pair.residual <= DEFAULT_TOL * m.inf_norm().max(1.0);
        solves += 1;
        pair.value
    };
    for n in 2..=50 {
        worst_complete = worst_complete.max((check(&Graph::complete(n).unwrap()) - (2 * n - 2) as f64).abs());
    }
    for n in 3..=30 {
        worst_cycle = worst_cycle.max((check(&Graph::cycle(n).unwrap()) - 4.0).abs());
    }
    for i in 0..200 {
        let mut rng = sample_rng(SEED + 1, i);
        let n = rng.random_range(1..=40);
        check(&gnp(n, rng.random_range(0.0..=1.0), &mut rng).unwrap());
    }
    (
        worst_complete <= EIGEN_TOL && worst_cycle <= EIGEN_TOL && contract,
        format!("{solves} solves, |q(K_n)-(2n-2)| ≤ {worst_complete:.1e}, |q(C_n)-4| ≤ {worst_cycle:.1e}"),
    )
}

#[test]
fn acceptance_criteria() {
    assert_eq!(n_min_thm11(2, 2).unwrap(), 29);
    assert_eq!(SHARPNESS_THM11[2], (2, 2, 26));
    assert_eq!(Theorem::Thm11.extremal_toughness(1, 3), ExtendedRational::ratio(2, 3));

    let mut lines = Vec::new();
    let (p, d) = sharpness(Theorem::Thm11, &SHARPNESS_THM11);
    show(&mut lines, 1, p, d);
    let (p, d) = sharpness(Theorem::Thm12, &SHARPNESS_THM12);
    show(&mut lines, 2, p, d);
    let (p, d) = monte_carlo();
    show(&mut lines, 3, p, d);
    let (p, d) = lemmas();
    show(&mut lines, 4, p, d);
    let (p, d) = identities();
    show(&mut lines, 5, p, d);
    let (p, d) = chains();
    show(&mut lines, 6, p, d);
    let (p, d) = oracle_equivalence();
    show(&mut lines, 7, p, d);
    let (p, d) = eigensolver();
    show(&mut lines, 8, p, d);

    let red: Vec<String> =
        lines.iter().filter(|l| !l.pass).map(|l| format!("{}: {}", l.id, l.detail)).collect();
    assert!(red.is_empty(), "red criteria: {red:?}");
}
