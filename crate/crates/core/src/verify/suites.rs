//! Default grids and randomized corpora behind each named suite.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::extremal::{h_ceil, n_min_thm11, n_min_thm12, JoinParts, Theorem};
use crate::graph::Graph;
use crate::random::{gnp, random_connected, remove_random_edges, sample_rng, SampleModel};
use crate::spectral::Partition;

use super::{
    check_case1_chain, check_case2_chain, check_charpoly_difference, check_charpolys, check_g3prime_gap,
    check_lemma21, check_lemma22, check_lemma23, check_lemma24, check_phi_identities, check_phi_positive,
    exhaustive_search, monte_carlo_search, sharpness_report, VerificationReport, VerifyError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemma21,
    Lemma22,
    Lemma23,
    Lemma24,
    Identities,
    Chains,
    Sharpness,
    Thm11,
    Thm12,
    Exhaustive,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Lemma21,
        Suite::Lemma22,
        Suite::Lemma23,
        Suite::Lemma24,
        Suite::Identities,
        Suite::Chains,
        Suite::Sharpness,
        Suite::Thm11,
        Suite::Thm12,
        Suite::Exhaustive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma21 => "lemma21",
            Suite::Lemma22 => "lemma22",
            Suite::Lemma23 => "lemma23",
            Suite::Lemma24 => "lemma24",
            Suite::Identities => "identities",
            Suite::Chains => "chains",
            Suite::Sharpness => "sharpness",
            Suite::Thm11 => "thm11",
            Suite::Thm12 => "thm12",
            Suite::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            format!("unknown suite '{s}' (expected one of {})", names.join(", "))
        })
    }
}

/// Parameters shared by every suite; `None` selects the suite's default grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub theorem: Option<Theorem>,
    pub b: Option<usize>,
    pub l: Option<usize>,
    pub n: Option<usize>,
    pub s: Option<usize>,
    pub omega: Option<usize>,
    pub tol: f64,
    pub trials: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub model: Option<SampleModel>,
    pub edge_budget: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            theorem: None,
            b: None,
            l: None,
            n: None,
            s: None,
            omega: None,
            tol: 1e-8,
            trials: None,
            samples: 1000,
            seed: 0,
            model: None,
            edge_budget: None,
        }
    }
}

/// Tolerances of the lemma corpora.
pub const LEMMA21_TOL: f64 = 1e-7;
pub const LEMMA23_TOL: f64 = 1e-9;
pub const GRID_POINTS: usize = 25;

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, VerifyError> {
    match suite {
        Suite::Lemma21 => lemma21_corpus(cfg.trials.unwrap_or(100), cfg.seed),
        Suite::Lemma22 => lemma22_corpus(cfg.trials.unwrap_or(1000), cfg.seed, cfg.tol),
        Suite::Lemma23 => lemma23_corpus(cfg.trials.unwrap_or(100), cfg.seed),
        Suite::Lemma24 => lemma24_corpus(cfg.trials.unwrap_or(1000), cfg.seed, cfg.tol),
        Suite::Identities => identity_grid(cfg),
        Suite::Chains => chain_grid(cfg),
        Suite::Sharpness => sharpness_grid(cfg),
        Suite::Thm11 | Suite::Thm12 => {
            let theorem = if suite == Suite::Thm11 { Theorem::Thm11 } else { Theorem::Thm12 };
            let (db, dl, dn) = match theorem {
                Theorem::Thm11 => (1, 2, 11),
                Theorem::Thm12 => (2, 3, 12),
            };
            let l = cfg.l.unwrap_or(dl);
            let model = cfg.model.unwrap_or(SampleModel::default_for(l));
            Ok(vec![monte_carlo_search(
                theorem,
                cfg.b.unwrap_or(db),
                l,
                cfg.n.unwrap_or(dn),
                model,
                cfg.samples,
                cfg.seed,
                cfg.tol,
            )?])
        }
        Suite::Exhaustive => {
            let range = match cfg.n {
                Some(n) => n..=n,
                None => 4..=7,
            };
            Ok(vec![exhaustive_search(
                cfg.theorem.unwrap_or(Theorem::Thm11),
                cfg.b.unwrap_or(1),
                cfg.l.unwrap_or(2),
                range,
                cfg.edge_budget,
                cfg.tol,
            )?])
        }
    }
}

fn par_trials<F>(trials: usize, seed: u64, f: F) -> Result<Vec<VerificationReport>, VerifyError>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Result<VerificationReport, VerifyError> + Sync,
{
    (0..trials as u64)
        .into_par_iter()
        .map(|i| f(&mut sample_rng(seed, i)).map(|r| r.seed(seed).param("trial", i)))
        .collect()
}

/// Connected graphs with a known equitable partition: join families,
/// cycles under the one-class partition, and balanced K_s ∨ tK_p.
pub fn lemma21_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(Graph, Partition), VerifyError> {
    Ok(match rng.random_range(0..3) {
        0 => {
            let parts =
                JoinParts::new(rng.random_range(1..=4), rng.random_range(0..=9), rng.random_range(0..=6));
            (parts.graph()?, parts.partition()?)
        }
        1 => {
            let n = rng.random_range(3..=20);
            (Graph::cycle(n)?, Partition::whole(n))
        }
        _ => {
            let (s, t, p) = (rng.random_range(1..=3), rng.random_range(1..=4), rng.random_range(1..=4));
            let g = Graph::complete(s)?.join(&Graph::copies(t, &Graph::complete(p)?)?)?;
            (g, Partition::from_sizes(&[s, t * p])?)
        }
    })
}

pub fn lemma21_corpus(trials: usize, seed: u64) -> Result<Vec<VerificationReport>, VerifyError> {
    par_trials(trials, seed, |rng| {
        let (g, p) = lemma21_instance(rng)?;
        check_lemma21(&g, &p, LEMMA21_TOL)
    })
}

/// A connected graph and a subgraph: random edge deletions, optionally
/// followed by dropping a suffix of the vertices.
pub fn lemma22_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(Graph, Graph), VerifyError> {
    let n = rng.random_range(3..=14);
    let p = rng.random_range(0.2..0.9);
    let g = random_connected(n, p, rng)?;
    let m = rng.random_range(0..=g.edge_count().div_ceil(2));
    let mut h = remove_random_edges(&g, m, rng);
    if rng.random_bool(0.25) {
        let keep: Vec<usize> = (0..rng.random_range(1..=n)).collect();
        h = h.induced(&keep);
    }
    Ok((g, h))
}

pub fn lemma22_corpus(trials: usize, seed: u64, tol: f64) -> Result<Vec<VerificationReport>, VerifyError> {
    par_trials(trials, seed, |rng| {
        let (g, h) = lemma22_instance(rng)?;
        check_lemma22(&g, &h, tol)
    })
}

/// A tuple (s, p, parts) satisfying the strict precondition.
pub fn lemma23_instance<R: Rng + ?Sized>(rng: &mut R) -> (usize, usize, Vec<usize>) {
    let s = rng.random_range(1..=4);
    let p = rng.random_range(1..=3);
    let t = rng.random_range(2..=4);
    loop {
        let mut parts: Vec<usize> = (0..t).map(|_| p + rng.random_range(0..=4)).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts[1..].iter().any(|&k| k > p) {
            return (s, p, parts);
        }
    }
}

pub fn lemma23_corpus(trials: usize, seed: u64) -> Result<Vec<VerificationReport>, VerifyError> {
    par_trials(trials, seed, |rng| {
        let (s, p, parts) = lemma23_instance(rng);
        check_lemma23(s, p, &parts, LEMMA23_TOL)
    })
}

pub fn lemma24_corpus(trials: usize, seed: u64, tol: f64) -> Result<Vec<VerificationReport>, VerifyError> {
    par_trials(trials, seed, |rng| {
        let n = rng.random_range(2..=14);
        let p = rng.random_range(0.0..=1.0);
        check_lemma24(&gnp(n, p, rng)?, tol)
    })
}

/// `points` evenly spaced values on [lo, hi].
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect(),
    }
}

fn pick(fixed: Option<usize>, default: &[usize]) -> Vec<usize> {
    fixed.map_or_else(|| default.to_vec(), |v| vec![v])
}

fn n_values(fixed: Option<usize>, start: usize) -> Vec<usize> {
    fixed.map_or_else(|| (start..=start + 20).collect(), |n| vec![n])
}

#[derive(Clone, Copy)]
enum IdentityTask {
    Chain(usize, usize, usize),
    Case1(usize, usize, usize, usize),
    Ineq45(usize, usize, usize),
    Ineq43(usize, usize, usize),
}

/// b ∈ {1,2,3}, l ∈ {2,…,5}, n over 21 orders from the threshold, every
/// valid s, and 25 points of x per tuple.
pub fn identity_grid(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, VerifyError> {
    let mut tasks = Vec::new();
    for b in pick(cfg.b, &[1, 2, 3]) {
        for l in pick(cfg.l, &[2, 3, 4, 5]) {
            let h = h_ceil(b, l);
            for n in n_values(cfg.n, n_min_thm11(b, l)?) {
                tasks.push(IdentityTask::Chain(b, l, n));
            }
            let start = if b >= 2 { n_min_thm12(b, l)? } else { n_min_thm11(b, l)? };
            for n in n_values(cfg.n, start) {
                let s_max = (n - 1) / (b + 1);
                for s in cfg.s.map_or(h..=s_max, |s| s..=s) {
                    tasks.push(IdentityTask::Case1(b, l, n, s));
                }
                if b >= 2 {
                    tasks.push(IdentityTask::Ineq43(b, l, n));
                    if (l - 1) % b != 0 {
                        tasks.push(IdentityTask::Ineq45(b, l, n));
                    }
                }
            }
        }
    }
    let tol = super::IDENTITY_TOL;
    let nested: Vec<Vec<VerificationReport>> = tasks
        .into_par_iter()
        .map(|task| -> Result<Vec<VerificationReport>, VerifyError> {
            Ok(match task {
                IdentityTask::Chain(b, l, n) => vec![check_phi_identities(b, l, n, tol)?],
                IdentityTask::Case1(b, l, n, s) => {
                    let xs = linspace(0.0, 3.0 * n as f64, GRID_POINTS);
                    vec![check_charpoly_difference(b, l, n, s, &xs, tol)?, check_charpolys(b, l, n, s, tol)?]
                }
                IdentityTask::Ineq43(b, l, n) => {
                    let xs = linspace(0.0, 3.0 * n as f64, GRID_POINTS);
                    vec![check_phi_positive(b, l, n, &xs, tol)?]
                }
                IdentityTask::Ineq45(b, l, n) => {
                    let x0 = (2 * n - 2 * b * h_ceil(b, l)) as f64;
                    let xs = linspace(x0, 3.0 * n as f64, GRID_POINTS);
                    vec![check_g3prime_gap(b, l, n, &xs, tol)?]
                }
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// Case 1 at every ω ∈ [l+1, (n+1)/(b+1)] and Case 2 once, per (b, l, n).
pub fn chain_grid(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, VerifyError> {
    let mut tasks = Vec::new();
    for b in pick(cfg.b, &[1, 2, 3]) {
        for l in pick(cfg.l, &[2, 3, 4, 5]) {
            for n in n_values(cfg.n, n_min_thm11(b, l)?) {
                let hi = (n + 1) / (b + 1);
                match cfg.omega {
                    Some(w) if w <= hi => tasks.push((b, l, n, Some(w))),
                    Some(_) => tasks.push((b, l, n, None)),
                    None => {
                        tasks.extend((l + 1..=hi).map(|w| (b, l, n, Some(w))));
                        tasks.push((b, l, n, None));
                    }
                }
            }
        }
    }
    tasks
        .into_par_iter()
        .map(|(b, l, n, omega)| match omega {
            Some(w) => check_case1_chain(b, l, n, w),
            None => check_case2_chain(b, l, n),
        })
        .collect()
}

/// Fixed tuples for each theorem; (2,2,26) stands in for (2,2,29), whose
/// order exceeds the exact toughness budget.
pub const SHARPNESS_THM11: [(usize, usize, usize); 3] = [(1, 2, 11), (1, 3, 21), (2, 2, 26)];
pub const SHARPNESS_THM12: [(usize, usize, usize); 3] = [(2, 3, 12), (3, 4, 18), (2, 5, 24)];

pub fn sharpness_grid(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>, VerifyError> {
    let mut tasks: Vec<(Theorem, usize, usize, usize)> = Vec::new();
    if let (Some(b), Some(l), Some(n)) = (cfg.b, cfg.l, cfg.n) {
        let theorems = match cfg.theorem {
            Some(t) => vec![t],
            None if b >= 2 => vec![Theorem::Thm11, Theorem::Thm12],
            None => vec![Theorem::Thm11],
        };
        tasks.extend(theorems.into_iter().map(|t| (t, b, l, n)));
    } else {
        if cfg.theorem != Some(Theorem::Thm12) {
            tasks.extend(SHARPNESS_THM11.iter().map(|&(b, l, n)| (Theorem::Thm11, b, l, n)));
        }
        if cfg.theorem != Some(Theorem::Thm11) {
            tasks.extend(SHARPNESS_THM12.iter().map(|&(b, l, n)| (Theorem::Thm12, b, l, n)));
        }
    }
    tasks.into_par_iter().map(|(t, b, l, n)| sharpness_report(t, b, l, n)).collect()
}
