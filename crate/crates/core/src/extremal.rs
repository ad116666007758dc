//! Extremal graph families, their quotient matrices, and the closed-form
//! polynomials that bound their Q-indices.
//!
//! Every family here has the shape `K_a ∨ (K_c ∪ d·K_1)` and is described by
//! [`JoinParts`]. Vertices are laid out as join clique `0..a`, big clique
//! `a..a+c`, isolated side `a+c..n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::rational::ExtendedRational;
use crate::spectral::{perron_root, Partition, QuotientMatrix, SpectralError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtremalError {
    #[error("invalid parameters: {0}")]
    Constraint(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<(), ExtremalError> {
    if ok {
        Ok(())
    } else {
        Err(ExtremalError::Constraint(what()))
    }
}

/// ⌈num / den⌉ for `num ≥ 0`, `den ≥ 1`.
pub fn ceil_div(num: usize, den: usize) -> usize {
    num.div_ceil(den)
}

/// ⌈(l−1)/b⌉.
pub fn h_ceil(b: usize, l: usize) -> usize {
    ceil_div(l - 1, b)
}

/// ⌊(l−1)/b⌋.
pub fn h_floor(b: usize, l: usize) -> usize {
    (l - 1) / b
}

fn check_bl(b: usize, l: usize, min_b: usize) -> Result<(), ExtremalError> {
    require(b >= min_b, || format!("b = {b} must be at least {min_b}"))?;
    require(l >= 2, || format!("l = {l} must be at least 2"))
}

/// Which of the two spectral toughness theorems is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Theorem {
    /// q(G) ≥ q(K_{bl−1} ∨ (K_{n−(b+1)l+2} ∪ (l−1)K_1)) forces t_l(G) ≥ b.
    #[serde(rename = "thm11")]
    Thm11,
    /// q(G) ≥ q(K_{⌊(l−1)/b⌋} ∨ (K_{n−⌊(l−1)/b⌋−l+1} ∪ (l−1)K_1)) forces t_l(G) ≥ 1/b.
    #[serde(rename = "thm12")]
    Thm12,
}

impl Theorem {
    pub fn id(self) -> &'static str {
        match self {
            Theorem::Thm11 => "thm11",
            Theorem::Thm12 => "thm12",
        }
    }

    pub fn check_params(self, b: usize, l: usize) -> Result<(), ExtremalError> {
        match self {
            Theorem::Thm11 => check_bl(b, l, 1),
            Theorem::Thm12 => check_bl(b, l, 2),
        }
    }

    /// Smallest order the theorem covers.
    pub fn n_min(self, b: usize, l: usize) -> Result<usize, ExtremalError> {
        match self {
            Theorem::Thm11 => n_min_thm11(b, l),
            Theorem::Thm12 => n_min_thm12(b, l),
        }
    }

    pub fn extremal(self, b: usize, l: usize, n: usize) -> Result<JoinParts, ExtremalError> {
        match self {
            Theorem::Thm11 => thm11_extremal(b, l, n),
            Theorem::Thm12 => thm12_extremal(b, l, n),
        }
    }

    /// The toughness the theorem guarantees: b, or 1/b.
    pub fn toughness_bound(self, b: usize) -> ExtendedRational {
        match self {
            Theorem::Thm11 => ExtendedRational::ratio(b, 1),
            Theorem::Thm12 => ExtendedRational::ratio(1, b),
        }
    }

    /// Exact t_l of the extremal graph: (bl−1)/l, or ⌊(l−1)/b⌋/l.
    pub fn extremal_toughness(self, b: usize, l: usize) -> ExtendedRational {
        match self {
            Theorem::Thm11 => ExtendedRational::ratio(b * l - 1, l),
            Theorem::Thm12 => ExtendedRational::ratio(h_floor(b, l), l),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = ExtremalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "thm11" | "1.1" | "11" => Ok(Theorem::Thm11),
            "thm12" | "1.2" | "12" => Ok(Theorem::Thm12),
            other => {
                Err(ExtremalError::Constraint(format!("unknown theorem `{other}` (expected thm11 or thm12)")))
            }
        }
    }
}

/// max{⌈(5/2·b² + 4b + 3)l − b² − 2b − 5⌉, ⌈((2b+1)l² + (2b−3)l + 2)/2⌉}.
pub fn n_min_thm11(b: usize, l: usize) -> Result<usize, ExtremalError> {
    check_bl(b, l, 1)?;
    let (b, l) = (b as i64, l as i64);
    let half_up = |v: i64| v.div_euclid(2) + v.rem_euclid(2);
    let first = half_up((5 * b * b + 8 * b + 6) * l - 2 * b * b - 4 * b - 10);
    let second = half_up((2 * b + 1) * l * l + (2 * b - 3) * l + 2);
    Ok(first.max(second).max(0) as usize)
}

/// 6b⌈(l−1)/b⌉.
pub fn n_min_thm12(b: usize, l: usize) -> Result<usize, ExtremalError> {
    check_bl(b, l, 2)?;
    Ok(6 * b * h_ceil(b, l))
}

/// `K_join ∨ (K_clique ∪ isolated·K_1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct JoinParts {
    pub join: usize,
    pub clique: usize,
    pub isolated: usize,
}

impl JoinParts {
    pub fn new(join: usize, clique: usize, isolated: usize) -> Self {
        JoinParts { join, clique, isolated }
    }

    pub fn order(&self) -> usize {
        self.join + self.clique + self.isolated
    }

    pub fn edge_count(&self) -> usize {
        let (a, c, d) = (self.join, self.clique, self.isolated);
        a * a.saturating_sub(1) / 2 + c * c.saturating_sub(1) / 2 + a * (c + d)
    }

    /// An empty join part with two or more pieces on the other side.
    pub fn is_disconnected(&self) -> bool {
        self.join == 0 && usize::from(self.clique > 0) + self.isolated > 1
    }

    pub fn graph(&self) -> Result<Graph, ExtremalError> {
        let side = Graph::complete(self.clique)?.disjoint_union(&Graph::empty(self.isolated)?)?;
        Ok(Graph::complete(self.join)?.join(&side)?)
    }

    /// The join clique as a vertex set of [`JoinParts::graph`].
    pub fn join_set(&self) -> VertexSet {
        VertexSet::range(0, self.join)
    }

    /// Sizes of the nonempty classes, in (join, clique, isolated) order.
    pub fn class_sizes(&self) -> Vec<usize> {
        [self.join, self.clique, self.isolated].into_iter().filter(|&k| k > 0).collect()
    }

    /// The (join, clique, isolated) partition with empty classes dropped.
    pub fn partition(&self) -> Result<Partition, ExtremalError> {
        Ok(Partition::from_sizes(&self.class_sizes())?)
    }

    /// Quotient of Q over [`JoinParts::partition`], from closed-form row sums.
    pub fn quotient(&self) -> Result<QuotientMatrix, ExtremalError> {
        let (a, c, d) = (self.join as f64, self.clique as f64, self.isolated as f64);
        let n = a + c + d;
        let full = [[n + a - 2.0, c, d], [a, a + 2.0 * c - 2.0, 0.0], [a, 0.0, a]];
        let keep: Vec<usize> = [self.join, self.clique, self.isolated]
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, _)| i)
            .collect();
        let rows = keep.iter().map(|&i| keep.iter().map(|&j| full[i][j]).collect()).collect();
        Ok(QuotientMatrix::new(rows, self.class_sizes())?)
    }

    /// q of the graph through its equitable quotient; valid beyond the
    /// 64-vertex limit of [`Graph`].
    pub fn q_index(&self, tol: f64) -> Result<f64, ExtremalError> {
        if self.order() == 0 {
            return Err(SpectralError::Empty.into());
        }
        if self.join == 0 {
            // components are K_clique and isolated vertices
            return Ok((2.0 * self.clique as f64 - 2.0).max(0.0));
        }
        Ok(perron_root(&self.quotient()?, tol)?)
    }
}

impl fmt::Display for JoinParts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{} ∨ (K_{} ∪ {}K_1)", self.join, self.clique, self.isolated)
    }
}

/// K_{bl−1} ∨ (K_{n−(b+1)l+2} ∪ (l−1)K_1).
pub fn thm11_extremal(b: usize, l: usize, n: usize) -> Result<JoinParts, ExtremalError> {
    check_bl(b, l, 1)?;
    require(n + 2 > (b + 1) * l, || format!("n − (b+1)l + 2 ≥ 1 fails for (b, l, n) = ({b}, {l}, {n})"))?;
    Ok(JoinParts::new(b * l - 1, n + 2 - (b + 1) * l, l - 1))
}

/// K_{⌊(l−1)/b⌋} ∨ (K_{n−⌊(l−1)/b⌋−l+1} ∪ (l−1)K_1); disconnected when the
/// join part is empty, which [`JoinParts::is_disconnected`] reports.
pub fn thm12_extremal(b: usize, l: usize, n: usize) -> Result<JoinParts, ExtremalError> {
    check_bl(b, l, 1)?;
    let a = h_floor(b, l);
    require(n + 1 > a + l, || format!("n − ⌊(l−1)/b⌋ − l + 1 ≥ 1 fails for (b, l, n) = ({b}, {l}, {n})"))?;
    Ok(JoinParts::new(a, n + 1 - a - l, l - 1))
}

/// K_{bω−1} ∨ (K_{n−(b+1)ω+2} ∪ (ω−1)K_1).
pub fn proof_g2_case1(b: usize, omega: usize, n: usize) -> Result<JoinParts, ExtremalError> {
    require(b >= 1 && omega >= 1, || format!("need b ≥ 1 and ω ≥ 1, got b = {b}, ω = {omega}"))?;
    require(n + 1 >= (b + 1) * omega, || {
        format!("n ≥ (b+1)ω − 1 fails for (b, ω, n) = ({b}, {omega}, {n})")
    })?;
    Ok(JoinParts::new(b * omega - 1, n + 2 - (b + 1) * omega, omega - 1))
}

/// k = ⌈(n+2)/(b+1)⌉ for the split graph K_{n−k} ∨ kK_1.
pub fn case2_independent_size(b: usize, n: usize) -> usize {
    ceil_div(n + 2, b + 1)
}

/// K_{n−k} ∨ kK_1 with k = ⌈(n+2)/(b+1)⌉.
pub fn proof_g3_case2(b: usize, n: usize) -> Result<JoinParts, ExtremalError> {
    require(b >= 1 && n > b, || format!("need b ≥ 1 and n ≥ b+1, got b = {b}, n = {n}"))?;
    let k = case2_independent_size(b, n);
    require(k <= n, || format!("⌈(n+2)/(b+1)⌉ = {k} exceeds n = {n}"))?;
    Ok(JoinParts::new(n - k, 0, k))
}

/// K_s ∨ (K_{n−s−ω+1} ∪ (ω−1)K_1).
pub fn proof_thm12_g2(s: usize, omega: usize, n: usize) -> Result<JoinParts, ExtremalError> {
    require(omega >= 1, || "ω must be at least 1".to_string())?;
    require(n + 1 > s + omega, || format!("n − s − ω + 1 ≥ 1 fails for (s, ω, n) = ({s}, {omega}, {n})"))?;
    Ok(JoinParts::new(s, n + 1 - s - omega, omega - 1))
}

/// K_h ∨ (K_{n−bh−h} ∪ bh·K_1), h = ⌈(l−1)/b⌉.
pub fn proof_thm12_g3(b: usize, l: usize, n: usize) -> Result<JoinParts, ExtremalError> {
    check_bl(b, l, 1)?;
    let h = h_ceil(b, l);
    require(n >= (b + 1) * h, || {
        format!("n − b⌈(l−1)/b⌉ − ⌈(l−1)/b⌉ ≥ 0 fails for (b, l, n) = ({b}, {l}, {n})")
    })?;
    Ok(JoinParts::new(h, n - (b + 1) * h, b * h))
}

/// K_{h−1} ∨ (K_{n−bh−h+2} ∪ (bh−1)K_1), h = ⌈(l−1)/b⌉; only when b ∤ (l−1).
pub fn proof_thm12_g3prime(b: usize, l: usize, n: usize) -> Result<JoinParts, ExtremalError> {
    check_bl(b, l, 1)?;
    require(!(l - 1).is_multiple_of(b), || format!("b = {b} divides l − 1 = {}", l - 1))?;
    let h = h_ceil(b, l);
    require(n + 2 >= (b + 1) * h, || {
        format!("n − b⌈(l−1)/b⌉ − ⌈(l−1)/b⌉ + 2 ≥ 0 fails for (b, l, n) = ({b}, {l}, {n})")
    })?;
    Ok(JoinParts::new(h - 1, n + 2 - (b + 1) * h, b * h - 1))
}

fn matrix(rows: [[i64; 3]; 3], sizes: [usize; 3]) -> Result<QuotientMatrix, ExtremalError> {
    let rows = rows.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
    Ok(QuotientMatrix::new(rows, sizes.to_vec())?)
}

/// B₁ = [[n+s−2, n−bs−s, bs], [s, 2n−2bs−s−2, 0], [s, 0, s]].
pub fn quotient_b1(n: usize, s: usize, b: usize) -> Result<QuotientMatrix, ExtremalError> {
    require(s >= 1 && b >= 1, || format!("need s ≥ 1 and b ≥ 1, got s = {s}, b = {b}"))?;
    require(n > (b + 1) * s, || format!("n − bs − s ≥ 1 fails for (n, s, b) = ({n}, {s}, {b})"))?;
    let (n, s, b) = (n as i64, s as i64, b as i64);
    matrix(
        [[n + s - 2, n - b * s - s, b * s], [s, 2 * n - 2 * b * s - s - 2, 0], [s, 0, s]],
        [s as usize, (n - b * s - s) as usize, (b * s) as usize],
    )
}

/// B₂ = B₁ at s = ⌈(l−1)/b⌉.
pub fn quotient_b2(n: usize, b: usize, l: usize) -> Result<QuotientMatrix, ExtremalError> {
    check_bl(b, l, 1)?;
    quotient_b1(n, h_ceil(b, l), b)
}

/// B₂′ = [[n+h−3, n−bh−h+2, bh−1], [h−1, 2n−2bh−h+1, 0], [h−1, 0, h−1]].
/// When h = 1 the first class is empty and the matrix is reducible.
pub fn quotient_b2prime(n: usize, b: usize, l: usize) -> Result<QuotientMatrix, ExtremalError> {
    let parts = proof_thm12_g3prime(b, l, n)?;
    let h = h_ceil(b, l) as i64;
    let (n, b) = (n as i64, b as i64);
    matrix(
        [[n + h - 3, n - b * h - h + 2, b * h - 1], [h - 1, 2 * n - 2 * b * h - h + 1, 0], [h - 1, 0, h - 1]],
        [parts.join, parts.clique, parts.isolated],
    )
}

/// c3·x³ + c2·x² + c1·x + c0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicPolynomial {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl CubicPolynomial {
    pub fn monic(c2: i64, c1: i64, c0: i64) -> Self {
        CubicPolynomial { c3: 1.0, c2: c2 as f64, c1: c1 as f64, c0: c0 as f64 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.c3 * x + self.c2) * x + self.c1) * x + self.c0
    }
}

/// f_{B₁}, the characteristic polynomial of the Case 1 quotient B₁.
pub fn charpoly_fb1(n: usize, s: usize, b: usize) -> CubicPolynomial {
    let (n, s, b) = (n as i64, s as i64, b as i64);
    CubicPolynomial::monic(
        -3 * n + 2 * b * s - s + 4,
        2 * n * n - 2 * b * s * n + 3 * s * n - 6 * n - 4 * b * s * s + 4 * b * s - 4 * s + 4,
        -2 * s * n * n + 4 * b * s * s * n + 6 * s * n - 2 * b * b * s * s * s - 6 * b * s * s - 4 * s,
    )
}

/// f_{B₂} = f_{B₁} at s = ⌈(l−1)/b⌉.
pub fn charpoly_fb2(n: usize, b: usize, l: usize) -> CubicPolynomial {
    charpoly_fb1(n, h_ceil(b, l), b)
}

/// f_{B₂′}, written in h = ⌈(l−1)/b⌉.
pub fn charpoly_fb2prime(n: usize, b: usize, l: usize) -> CubicPolynomial {
    let h = h_ceil(b, l) as i64;
    let (n, b) = (n as i64, b as i64);
    CubicPolynomial::monic(
        -3 * n + 2 * b * h - h + 3,
        2 * n * n - 2 * b * h * n + 3 * h * n - 7 * n - 4 * b * h * h + 8 * b * h,
        -2 * h * n * n + 2 * n * n + 4 * b * h * h * n - 4 * b * h * n + 2 * h * n
            - 2 * n
            - 2 * b * b * h * h * h
            + 2 * b * b * h * h
            - 2 * b * h * h
            + 2 * b * h,
    )
}

/// (2b+1)ω² − (2n+2b+3)ω + 2n² − 2n + 4, which equals (n−1)·[2e(G₂)/(n−1) + n − 2].
pub fn phi_components(omega: f64, n: usize, b: usize) -> f64 {
    let (n, b) = (n as f64, b as f64);
    (2.0 * b + 1.0) * omega * omega - (2.0 * n + 2.0 * b + 3.0) * omega + 2.0 * n * n - 2.0 * n + 4.0
}

/// (n−(b+1)l−b)(n−(b+1)(2b+1)l+1)/(b+1)², the factored φ(l+1) − φ((n+1)/(b+1)).
pub fn phi_components_gap_factored(n: usize, b: usize, l: usize) -> f64 {
    let (n, b, l) = (n as f64, b as f64, l as f64);
    (n - (b + 1.0) * l - b) * (n - (b + 1.0) * (2.0 * b + 1.0) * l + 1.0) / ((b + 1.0) * (b + 1.0))
}

/// 2n − 2l − (2n − (2b+1)l² − (2b−3)l − 2)/(n−1), the expanded φ(l+1)/(n−1).
pub fn phi_components_at_l_plus_one_expanded(n: usize, b: usize, l: usize) -> f64 {
    let (n, b, l) = (n as f64, b as f64, l as f64);
    2.0 * n - 2.0 * l - (2.0 * n - (2.0 * b + 1.0) * l * l - (2.0 * b - 3.0) * l - 2.0) / (n - 1.0)
}

/// The quadratic φ(x) with f_{B₁}(x) − f_{B₂}(x) = (s − h)·φ(x), h = ⌈(l−1)/b⌉.
pub fn phi_quotient(x: f64, n: usize, b: usize, s: usize, l: usize) -> f64 {
    let h = h_ceil(b, l) as f64;
    let (n, b, s) = (n as f64, b as f64, s as f64);
    (2.0 * b - 1.0) * x * x
        - (2.0 * b * n - 3.0 * n + 4.0 * b * s + 4.0 * b * h - 4.0 * b + 4.0) * x
        - 2.0 * n * n
        + 4.0 * b * s * n
        + 4.0 * b * n * h
        + 6.0 * n
        - 2.0 * b * b * s * s
        - 2.0 * b * b * s * h
        - 2.0 * b * b * h * h
        - 6.0 * b * s
        - 6.0 * b * h
        - 4.0
}

/// Vertex of the parabola φ of [`phi_quotient`].
pub fn phi_quotient_axis(n: usize, b: usize, s: usize, l: usize) -> f64 {
    let h = h_ceil(b, l) as f64;
    let (n, b, s) = (n as f64, b as f64, s as f64);
    (2.0 * b * n - 3.0 * n + 4.0 * b * s + 4.0 * b * h - 4.0 * b + 4.0) / (2.0 * (2.0 * b - 1.0))
}

/// The expanded right side of f_{B₂}(x) − f_{B₂′}(x).
pub fn fb2_minus_fb2prime_expanded(x: f64, n: usize, b: usize, l: usize) -> f64 {
    let h = h_ceil(b, l) as f64;
    let (n, b) = (n as f64, b as f64);
    x * x + (n - 4.0 * b * h - 4.0 * h + 4.0) * x - 2.0 * n * n + 4.0 * b * h * n + 4.0 * h * n + 2.0 * n
        - 2.0 * b * b * h * h
        - 4.0 * b * h * h
        - 2.0 * b * h
        - 4.0 * h
}
