//! Sharpness of the two theorems and empirical search for counterexamples.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::extremal::{JoinParts, Theorem};
use crate::graph::Graph;
use crate::random::{sample_rng, SampleModel};
use crate::rational::ExtendedRational;
use crate::spectral::{q_index, DEFAULT_TOL};
use crate::toughness::{l_toughness, l_toughness_naive, NAIVE_MAX_ORDER, TOUGHNESS_MAX_ORDER};

use super::{precondition, Outcome, VerificationReport, VerifyError, STRICT_MARGIN};

/// Everything fixed by (theorem, b, l, n): the extremal graph and its Q-index.
#[derive(Debug, Clone)]
pub struct TheoremContext {
    pub theorem: Theorem,
    pub b: usize,
    pub l: usize,
    pub n: usize,
    pub n_min: usize,
    pub extremal: JoinParts,
    pub extremal_graph: Graph,
    canonical_extremal: Graph,
    /// q of the extremal graph.
    pub threshold: f64,
    /// b for Theorem 1.1, 1/b for Theorem 1.2.
    pub bound: ExtendedRational,
}

/// Classification of one graph against a theorem.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    pub q: f64,
    pub toughness: Option<ExtendedRational>,
    /// Hypothesis met with q within tolerance of the threshold, and not the extremal graph.
    pub threshold_tie: bool,
    /// t_l below the bound at an order the theorem does not cover.
    pub below_threshold_violation: bool,
    /// A failure reproduced by the naive oracle and a fresh eigen solve.
    pub reconfirmed: bool,
}

impl Verdict {
    fn margin(&self, bound: ExtendedRational) -> f64 {
        match self.toughness {
            Some(t) => t.to_f64() - bound.to_f64(),
            None => f64::NAN,
        }
    }
}

impl TheoremContext {
    pub fn new(theorem: Theorem, b: usize, l: usize, n: usize) -> Result<Self, VerifyError> {
        theorem.check_params(b, l)?;
        precondition(n <= TOUGHNESS_MAX_ORDER, || {
            format!("n = {n} exceeds the exact toughness budget of {TOUGHNESS_MAX_ORDER}")
        })?;
        let extremal = theorem.extremal(b, l, n)?;
        let extremal_graph = extremal.graph()?;
        let threshold = q_index(&extremal_graph, DEFAULT_TOL)?;
        Ok(TheoremContext {
            theorem,
            b,
            l,
            n,
            n_min: theorem.n_min(b, l)?,
            canonical_extremal: extremal_graph.canonical_relabel(),
            extremal,
            extremal_graph,
            threshold,
            bound: theorem.toughness_bound(b),
        })
    }

    pub fn covered(&self) -> bool {
        self.n >= self.n_min
    }

    /// Labeled equality with the extremal graph after refinement relabeling.
    pub fn is_extremal(&self, g: &Graph) -> bool {
        g.order() == self.n
            && g.edge_count() == self.extremal.edge_count()
            && g.canonical_relabel() == self.canonical_extremal
    }

    /// Hypothesis filter then toughness check; a failure is re-derived with
    /// the naive oracle and a fresh eigen solve before it is reported.
    pub fn evaluate(&self, g: &Graph, tol: f64) -> Result<Verdict, VerifyError> {
        precondition(g.order() == self.n, || {
            format!("graph has {} vertices, expected {}", g.order(), self.n)
        })?;
        let mut verdict = Verdict {
            outcome: Outcome::HypothesisNotMet,
            q: f64::NAN,
            toughness: None,
            threshold_tie: false,
            below_threshold_violation: false,
            reconfirmed: false,
        };
        if !g.is_connected() {
            return Ok(verdict);
        }
        verdict.q = q_index(g, DEFAULT_TOL)?;
        if verdict.q < self.threshold - tol {
            return Ok(verdict);
        }
        if self.is_extremal(g) {
            verdict.outcome = Outcome::Exempt;
            return Ok(verdict);
        }
        verdict.threshold_tie = (verdict.q - self.threshold).abs() <= tol;
        let t = l_toughness(g, self.l)?.value;
        verdict.toughness = Some(t);
        if t >= self.bound {
            verdict.outcome = if self.covered() { Outcome::Pass } else { Outcome::HypothesisNotMet };
            return Ok(verdict);
        }
        if !self.covered() {
            verdict.below_threshold_violation = true;
            return Ok(verdict);
        }
        let confirmed_t = if g.order() <= NAIVE_MAX_ORDER { l_toughness_naive(g, self.l)?.value } else { t };
        let confirmed_q = q_index(g, DEFAULT_TOL / 10.0)?;
        // a failure stays a failure either way; disagreement marks an oracle bug
        verdict.reconfirmed = confirmed_t < self.bound && confirmed_q >= self.threshold - tol;
        verdict.outcome = Outcome::Fail;
        Ok(verdict)
    }

    fn base_report(&self, check_id: &str) -> VerificationReport {
        VerificationReport::new(check_id)
            .param("theorem", self.theorem.id())
            .param("b", self.b)
            .param("l", self.l)
            .param("n", self.n)
            .value("threshold", self.threshold)
            .rational("bound", self.bound)
            .count("n_min", self.n_min)
    }
}

/// The theorem applied to one graph of the context's order.
pub fn verify_theorem_on_graph(
    theorem: Theorem,
    g: &Graph,
    b: usize,
    l: usize,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let ctx = TheoremContext::new(theorem, b, l, g.order())?;
    let v = ctx.evaluate(g, tol)?;
    let mut report = ctx
        .base_report(theorem.id())
        .value("q_index", v.q)
        .flag("connected", g.is_connected())
        .flag("threshold_tie", v.threshold_tie)
        .flag("below_threshold_violation", v.below_threshold_violation);
    if v.outcome == Outcome::Fail {
        report = report.flag("reconfirmed", v.reconfirmed);
    }
    if let Some(t) = v.toughness {
        report = report.rational("t_l", t);
    }
    if v.outcome == Outcome::Fail || v.below_threshold_violation {
        report = report.witness(g);
    }
    let margin = v.margin(ctx.bound);
    Ok(report.finish(margin, v.outcome))
}

/// The extremal graph attains the threshold, is not tough enough, and its
/// minimizing set is the join clique.
pub fn sharpness_report(
    theorem: Theorem,
    b: usize,
    l: usize,
    n: usize,
) -> Result<VerificationReport, VerifyError> {
    let ctx = TheoremContext::new(theorem, b, l, n)?;
    let g = &ctx.extremal_graph;
    let t = l_toughness(g, l)?;
    let predicted = theorem.extremal_toughness(b, l);
    let witness_is_join = t.witness == Some(ctx.extremal.join_set());
    let two_n_minus_two_l = 2.0 * n as f64 - 2.0 * l as f64;
    let strict_over_clique = ctx.threshold - two_n_minus_two_l;
    let mut pass = t.value == predicted && t.value < ctx.bound && witness_is_join;
    if theorem == Theorem::Thm11 {
        pass &= strict_over_clique > STRICT_MARGIN;
    }
    let mut report = ctx
        .base_report("sharpness")
        .rational("t_l", t.value)
        .rational("t_l_predicted", predicted)
        .count("components", t.components)
        .flag("witness_is_join_clique", witness_is_join)
        .flag("disconnected", ctx.extremal.is_disconnected())
        .flag("below_n_min", !ctx.covered())
        .text("extremal", ctx.extremal.to_string());
    if theorem == Theorem::Thm11 {
        report = report.value("q_minus_two_n_minus_two_l", strict_over_clique);
    }
    if !ctx.covered() {
        report = report.note(format!("n = {n} is below the theorem's threshold {}", ctx.n_min));
    }
    let margin = ctx.bound.to_f64() - t.value.to_f64();
    Ok(report.witness(g).finish(margin, Outcome::from_pass(pass)))
}

#[derive(Default)]
struct SearchTally {
    sampled: usize,
    rejected: usize,
    hypothesis_met: usize,
    passed: usize,
    failed: usize,
    unconfirmed: usize,
    exempt: usize,
    below_threshold_violations: usize,
    threshold_ties: usize,
    min_margin: f64,
    first_failure: Option<Graph>,
    first_violation: Option<Graph>,
}

impl SearchTally {
    fn new() -> Self {
        SearchTally { min_margin: f64::INFINITY, ..Default::default() }
    }

    fn add(&mut self, g: Option<Graph>, v: Result<Verdict, VerifyError>, bound: ExtendedRational) {
        self.sampled += 1;
        let v = match v {
            Ok(v) => v,
            Err(_) => {
                self.rejected += 1;
                return;
            }
        };
        let met =
            matches!(v.outcome, Outcome::Pass | Outcome::Fail | Outcome::Exempt) || v.toughness.is_some();
        if met {
            self.hypothesis_met += 1;
        }
        self.threshold_ties += usize::from(v.threshold_tie);
        if v.toughness.is_some() {
            self.min_margin = self.min_margin.min(v.margin(bound));
        }
        match v.outcome {
            Outcome::Pass => self.passed += 1,
            Outcome::Exempt => self.exempt += 1,
            Outcome::Fail => {
                self.failed += 1;
                self.unconfirmed += usize::from(!v.reconfirmed);
                if self.first_failure.is_none() {
                    self.first_failure = g;
                }
            }
            _ if v.below_threshold_violation => {
                self.below_threshold_violations += 1;
                if self.first_violation.is_none() {
                    self.first_violation = g;
                }
            }
            _ => {}
        }
    }

    fn into_report(self, mut report: VerificationReport, covered: bool) -> VerificationReport {
        let outcome = if self.failed > 0 {
            Outcome::Fail
        } else if !covered {
            Outcome::Exploratory
        } else {
            Outcome::Pass
        };
        report = report
            .count("sampled", self.sampled)
            .count("rejected", self.rejected)
            .count("hypothesis_met", self.hypothesis_met)
            .count("passed", self.passed)
            .count("failed", self.failed)
            .count("unconfirmed_failures", self.unconfirmed)
            .count("exempt", self.exempt)
            .count("below_threshold_violations", self.below_threshold_violations)
            .count("threshold_ties", self.threshold_ties)
            .value(
                "filter_selectivity",
                if self.sampled == 0 { 0.0 } else { self.hypothesis_met as f64 / self.sampled as f64 },
            );
        if let Some(g) = self.first_failure.as_ref().or(self.first_violation.as_ref()) {
            report = report.witness(g);
        }
        report.finish(self.min_margin, outcome)
    }
}

/// Draws `samples` graphs, sample `i` from stream `i` of `seed`, and applies
/// the theorem to each. Counts are independent of scheduling; the reported
/// witness is the lowest-index failure.
#[allow(clippy::too_many_arguments)]
pub fn monte_carlo_search(
    theorem: Theorem,
    b: usize,
    l: usize,
    n: usize,
    model: SampleModel,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let ctx = TheoremContext::new(theorem, b, l, n)?;
    let verdicts: Vec<(Option<Graph>, Result<Verdict, VerifyError>)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            match model.draw(n, &ctx.extremal_graph, &mut rng) {
                Ok(g) => {
                    let v = ctx.evaluate(&g, tol);
                    let keep =
                        matches!(&v, Ok(v) if v.outcome == Outcome::Fail || v.below_threshold_violation);
                    (keep.then_some(g), v)
                }
                Err(e) => (None, Err(e.into())),
            }
        })
        .collect();
    let mut tally = SearchTally::new();
    for (g, v) in verdicts {
        tally.add(g, v, ctx.bound);
    }
    let report = ctx
        .base_report(&format!("{}_search", theorem.id()))
        .param("model", model.to_string())
        .param("samples", samples)
        .seed(seed);
    Ok(tally.into_report(report, ctx.covered()))
}

/// Largest order whose edge set fits a 64-bit removal mask.
const EXHAUSTIVE_MAX_ORDER: usize = 11;

/// Every graph K_n minus at most `edge_budget` edges (all of them when
/// `None`), for n in `n_range`, deduplicated by refinement relabeling. Orders below the theorem's
/// threshold produce exploration data only.
pub fn exhaustive_search(
    theorem: Theorem,
    b: usize,
    l: usize,
    n_range: RangeInclusive<usize>,
    edge_budget: Option<usize>,
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    theorem.check_params(b, l)?;
    let n_min = theorem.n_min(b, l)?;
    let mut report = VerificationReport::new(format!("{}_exhaustive", theorem.id()))
        .param("theorem", theorem.id())
        .param("b", b)
        .param("l", l)
        .param("n_range", format!("{}..={}", n_range.start(), n_range.end()))
        .param("edge_budget", edge_budget.map_or_else(|| "all".into(), serde_json::Value::from))
        .count("n_min", n_min);
    let mut tally = SearchTally::new();
    let mut distinct_total = 0;
    let mut skipped_orders = Vec::new();
    let mut any_covered = false;
    for n in n_range.clone() {
        precondition(n <= EXHAUSTIVE_MAX_ORDER, || {
            format!("exhaustive search supports n ≤ {EXHAUSTIVE_MAX_ORDER}, got {n}")
        })?;
        let ctx = match TheoremContext::new(theorem, b, l, n) {
            Ok(ctx) => ctx,
            Err(VerifyError::Extremal(_)) => {
                skipped_orders.push(n.to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        any_covered |= ctx.covered();
        let edges: Vec<(usize, usize)> = Graph::complete(n)?.edges().collect();
        let m = edges.len();
        let mut seen: HashSet<Graph> = HashSet::new();
        for k in 0..=edge_budget.unwrap_or(m).min(m) {
            for mask in masks_with_bits(m, k) {
                let mut g = Graph::complete(n)?;
                let mut rest = mask;
                while rest != 0 {
                    let (u, v) = edges[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                    g.remove_edge(u, v)?;
                }
                if !seen.insert(g.canonical_relabel()) {
                    continue;
                }
                let v = ctx.evaluate(&g, tol);
                let keep = matches!(&v, Ok(v) if v.outcome == Outcome::Fail || v.below_threshold_violation);
                tally.add(keep.then_some(g), v, ctx.bound);
            }
        }
        distinct_total += seen.len();
    }
    report = report.count("distinct_graphs", distinct_total);
    if !skipped_orders.is_empty() {
        report = report.note(format!("no extremal graph at n = {}", skipped_orders.join(",")));
    }
    let nonempty = n_range.start() <= n_range.end();
    Ok(tally.into_report(report, any_covered || !nonempty))
}

/// Masks over `0..m` with exactly `k` bits, increasing.
fn masks_with_bits(m: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if m >= 64 { u64::MAX } else { 1u64 << m };
    let mut next = (k <= m).then(|| if k == 64 { u64::MAX } else { (1u64 << k) - 1 });
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let succ = (((r ^ cur) >> 2) / c) | r;
                (succ < limit).then_some(succ)
            }
        };
        Some(cur)
    })
}
