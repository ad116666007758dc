//! Seeded random graphs and the sampling models of the counterexample search.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("unknown sample model `{0}` (expected near-complete:M, extremal-plus:M or gnp:P)")]
    Unknown(String),
    #[error("bad parameter in sample model `{0}`")]
    BadParameter(String),
}

/// The generator for sample `index` of a run seeded with `seed`. Streams of
/// distinct indices are independent, so samples can be drawn in any order.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// G(n, p).
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// A uniformly random labeled tree-shaped backbone plus G(n, p) edges; always connected.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph, GraphError> {
    let mut g = gnp(n, p, rng)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.random_range(0..i);
        g.add_edge(order[i], order[j])?;
    }
    Ok(g)
}

/// `g` minus `m` distinct edges chosen uniformly (all of them if fewer exist).
pub fn remove_random_edges<R: Rng + ?Sized>(g: &Graph, m: usize, rng: &mut R) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = g.clone();
    for i in sample(rng, edges.len(), m.min(edges.len())) {
        let (u, v) = edges[i];
        out.remove_edge(u, v).expect("edge endpoints in range");
    }
    out
}

/// `g` plus `m` distinct non-edges chosen uniformly (all of them if fewer exist).
pub fn add_random_edges<R: Rng + ?Sized>(g: &Graph, m: usize, rng: &mut R) -> Graph {
    let missing = g.non_edges();
    let mut out = g.clone();
    for i in sample(rng, missing.len(), m.min(missing.len())) {
        let (u, v) = missing[i];
        out.add_edge(u, v).expect("distinct endpoints in range");
    }
    out
}

/// How candidate graphs are drawn near the spectral threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleModel {
    /// K_n minus m uniform edges, m uniform on 0..=max.
    NearComplete(usize),
    /// The extremal graph plus m uniform non-edges, m uniform on 0..=max.
    ExtremalPlus(usize),
    /// G(n, p).
    Gnp(f64),
}

impl SampleModel {
    /// Default near-complete model: up to 2l + 2 removed edges.
    pub fn default_for(l: usize) -> Self {
        SampleModel::NearComplete(2 * l + 2)
    }

    pub fn draw<R: Rng + ?Sized>(
        &self,
        n: usize,
        extremal: &Graph,
        rng: &mut R,
    ) -> Result<Graph, GraphError> {
        match *self {
            SampleModel::NearComplete(max) => {
                let m = rng.random_range(0..=max);
                Ok(remove_random_edges(&Graph::complete(n)?, m, rng))
            }
            SampleModel::ExtremalPlus(max) => {
                let m = rng.random_range(0..=max);
                Ok(add_random_edges(extremal, m, rng))
            }
            SampleModel::Gnp(p) => gnp(n, p, rng),
        }
    }
}

impl fmt::Display for SampleModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleModel::NearComplete(m) => write!(f, "near-complete:{m}"),
            SampleModel::ExtremalPlus(m) => write!(f, "extremal-plus:{m}"),
            SampleModel::Gnp(p) => write!(f, "gnp:{p}"),
        }
    }
}

impl FromStr for SampleModel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let bad = || ModelError::BadParameter(s.to_string());
        match kind {
            "near-complete" => Ok(SampleModel::NearComplete(arg.parse().map_err(|_| bad())?)),
            "extremal-plus" => Ok(SampleModel::ExtremalPlus(arg.parse().map_err(|_| bad())?)),
            "gnp" => {
                let p: f64 = arg.parse().map_err(|_| bad())?;
                if (0.0..=1.0).contains(&p) {
                    Ok(SampleModel::Gnp(p))
                } else {
                    Err(bad())
                }
            }
            _ => Err(ModelError::Unknown(s.to_string())),
        }
    }
}

impl Serialize for SampleModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = sample_rng(7, 3).random();
        let b: u64 = sample_rng(7, 3).random();
        let c: u64 = sample_rng(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn random_connected_is_connected() {
        let mut rng = sample_rng(1, 0);
        for n in 1..20 {
            assert!(random_connected(n, 0.05, &mut rng).unwrap().is_connected());
        }
    }

    #[test]
    fn edge_perturbations_count() {
        let mut rng = sample_rng(2, 0);
        let k = Graph::complete(8).unwrap();
        let g = remove_random_edges(&k, 5, &mut rng);
        assert_eq!(g.edge_count(), 28 - 5);
        assert!(g.is_spanning_subgraph_of(&k));
        let h = add_random_edges(&g, 3, &mut rng);
        assert_eq!(h.edge_count(), 26);
        assert!(g.is_spanning_subgraph_of(&h));
        assert_eq!(add_random_edges(&k, 4, &mut rng), k);
    }

    #[test]
    fn model_parsing_round_trips() {
        for text in ["near-complete:8", "extremal-plus:5", "gnp:0.5"] {
            assert_eq!(text.parse::<SampleModel>().unwrap().to_string(), text);
        }
        assert!("gnp:1.5".parse::<SampleModel>().is_err());
        assert!("lattice:3".parse::<SampleModel>().is_err());
        assert!("near-complete".parse::<SampleModel>().is_err());
    }
}
