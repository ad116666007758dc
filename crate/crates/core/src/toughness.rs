//! Exact toughness and l-toughness by subset enumeration.
//!
//! t_l(G) is the minimum of |S| / c(G − S) over proper subsets S of V(G)
//! (the empty set included) whose removal leaves at least `l` components, and
//! +∞ when no such S exists, which happens exactly when l > α(G).

use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::rational::ExtendedRational;

/// Largest order accepted by the pruned enumerator.
pub const TOUGHNESS_MAX_ORDER: usize = 26;
/// Largest order accepted by the exhaustive oracle.
pub const NAIVE_MAX_ORDER: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToughnessError {
    #[error("l must be at least 2, got {0}")]
    LTooSmall(usize),
    #[error("graph order {n} exceeds the enumeration budget of {limit}")]
    OverBudget { n: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToughnessResult {
    pub value: ExtendedRational,
    /// Minimizing S, lexicographically smallest bitmask among minimizers.
    pub witness: Option<VertexSet>,
    /// c(G − witness); 0 when there is no witness.
    pub components: usize,
}

impl ToughnessResult {
    fn infinite() -> Self {
        ToughnessResult { value: ExtendedRational::Infinity, witness: None, components: 0 }
    }
}

impl Serialize for ToughnessResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ToughnessResult", 3)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("witness", &self.witness.map(VertexSet::to_vec).unwrap_or_default())?;
        st.serialize_field("components", &self.components)?;
        st.end()
    }
}

/// Running minimum of (|S| / c, mask).
#[derive(Default)]
struct Best {
    size: usize,
    comps: usize,
    mask: u64,
    found: bool,
}

impl Best {
    fn offer(&mut self, size: usize, comps: usize, mask: u64) {
        let better = !self.found || {
            let lhs = size * self.comps;
            let rhs = self.size * comps;
            lhs < rhs || (lhs == rhs && mask < self.mask)
        };
        if better {
            *self = Best { size, comps, mask, found: true };
        }
    }

    fn into_result(self) -> ToughnessResult {
        if !self.found {
            return ToughnessResult::infinite();
        }
        ToughnessResult {
            value: ExtendedRational::ratio(self.size, self.comps),
            witness: Some(VertexSet::from_bits(self.mask)),
            components: self.comps,
        }
    }
}

fn check_args(g: &Graph, l: usize, limit: usize) -> Result<(), ToughnessError> {
    if l < 2 {
        return Err(ToughnessError::LTooSmall(l));
    }
    if g.order() > limit {
        return Err(ToughnessError::OverBudget { n: g.order(), limit });
    }
    Ok(())
}

/// Exact t_l(G).
///
/// Subsets are scanned by increasing size. A set of size s leaves at most
/// min(n − s, α(G)) components, so once s / min(n − s, α) exceeds the best
/// ratio found no larger set can match it and the scan stops.
pub fn l_toughness(g: &Graph, l: usize) -> Result<ToughnessResult, ToughnessError> {
    check_args(g, l, TOUGHNESS_MAX_ORDER)?;
    let n = g.order();
    let alpha = g.independence_number();
    if l > alpha {
        return Ok(ToughnessResult::infinite());
    }
    let all = g.vertices().bits();
    let mut best = Best::default();
    for size in 0..n {
        let cap = (n - size).min(alpha);
        if cap < l {
            break;
        }
        if best.found && size * best.comps > best.size * cap {
            break;
        }
        for mask in subsets_of_size(n, size) {
            let comps = g.components_within(VertexSet::from_bits(all & !mask));
            if comps >= l {
                best.offer(size, comps, mask);
            }
        }
    }
    Ok(best.into_result())
}

/// t(G) = t_2(G).
pub fn toughness(g: &Graph) -> Result<ToughnessResult, ToughnessError> {
    l_toughness(g, 2)
}

/// t_l(G) ≥ t, compared exactly.
pub fn is_tl_tough(g: &Graph, t: ExtendedRational, l: usize) -> Result<bool, ToughnessError> {
    Ok(l_toughness(g, l)?.value >= t)
}

/// Reference t_l(G): every proper subset, no pruning, no use of α.
pub fn l_toughness_naive(g: &Graph, l: usize) -> Result<ToughnessResult, ToughnessError> {
    check_args(g, l, NAIVE_MAX_ORDER)?;
    let all = g.vertices().bits();
    let mut best = Best::default();
    for mask in 0..all {
        let comps = g.components_within(VertexSet::from_bits(all & !mask));
        if comps >= l {
            best.offer(mask.count_ones() as usize, comps, mask);
        }
    }
    Ok(best.into_result())
}

/// Masks over `0..n` with exactly `k` bits set, in increasing numeric order.
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if k > n { None } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            (succ < limit).then_some(succ)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: usize, d: usize) -> ExtendedRational {
        ExtendedRational::ratio(n, d)
    }

    fn ext(b: usize, l: usize, n: usize) -> Graph {
        let join = Graph::complete(b * l - 1).unwrap();
        let rest = Graph::complete(n - (b + 1) * l + 2)
            .unwrap()
            .disjoint_union(&Graph::empty(l - 1).unwrap())
            .unwrap();
        join.join(&rest).unwrap()
    }

    #[test]
    fn gosper_enumerates_all_k_subsets_in_order() {
        let got: Vec<u64> = subsets_of_size(5, 2).collect();
        assert_eq!(got.len(), 10);
        assert!(got.windows(2).all(|w| w[0] < w[1]));
        assert!(got.iter().all(|m| m.count_ones() == 2 && *m < 32));
        assert_eq!(subsets_of_size(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
    }

    #[test]
    fn complete_graphs_are_infinitely_tough() {
        for n in 1..8 {
            let k = Graph::complete(n).unwrap();
            assert_eq!(toughness(&k).unwrap().value, ExtendedRational::Infinity);
            assert_eq!(l_toughness_naive(&k, 2).unwrap().value, ExtendedRational::Infinity);
        }
        assert_eq!(l_toughness(&Graph::complete(5).unwrap(), 3).unwrap().value, ExtendedRational::Infinity);
    }

    #[test]
    fn cycle_toughness() {
        let c6 = Graph::cycle(6).unwrap();
        let t = toughness(&c6).unwrap();
        assert_eq!(t.value, r(1, 1));
        let w = t.witness.unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(c6.remove_vertices(w).unwrap().components_count(), 2);
        // {0, 2} ties the antipodal pairs at ratio 1 and has the smallest mask
        assert_eq!(w.bits(), 0b101);
        assert_eq!(toughness(&Graph::cycle(5).unwrap()).unwrap().value, r(1, 1));
        assert_eq!(l_toughness(&c6, 3).unwrap().value, r(1, 1));
        assert_eq!(l_toughness_naive(&c6, 3).unwrap().value, r(1, 1));
    }

    #[test]
    fn extremal_join_graph() {
        let g = ext(1, 2, 11);
        let t = toughness(&g).unwrap();
        assert_eq!(t.value, r(1, 2));
        assert_eq!(t.witness.unwrap().to_vec(), vec![0]);
        assert_eq!(t.components, 2);
        assert_eq!(l_toughness_naive(&g, 2).unwrap(), t);
    }

    #[test]
    fn star_and_disconnected() {
        let star = Graph::complete(1).unwrap().join(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!(toughness(&star).unwrap().value, r(1, 3));
        let two = Graph::empty(2).unwrap();
        let t = l_toughness_naive(&two, 2).unwrap();
        assert_eq!(t.value, ExtendedRational::integer(0));
        assert_eq!(t.witness, Some(VertexSet::empty()));
        assert_eq!(toughness(&two).unwrap(), t);
    }

    #[test]
    fn tough_predicate() {
        let k6 = Graph::complete(6).unwrap();
        assert!(is_tl_tough(&k6, ExtendedRational::integer(1000), 2).unwrap());
        assert!(!is_tl_tough(&ext(1, 2, 11), ExtendedRational::integer(1), 2).unwrap());
        assert!(is_tl_tough(&Graph::cycle(6).unwrap(), ExtendedRational::integer(1), 2).unwrap());
    }

    #[test]
    fn argument_errors() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(l_toughness(&g, 1), Err(ToughnessError::LTooSmall(1)));
        let big = Graph::cycle(27).unwrap();
        assert!(matches!(l_toughness(&big, 2), Err(ToughnessError::OverBudget { .. })));
        assert!(matches!(
            l_toughness_naive(&Graph::cycle(21).unwrap(), 2),
            Err(ToughnessError::OverBudget { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let t = toughness(&Graph::cycle(6).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"value":"1/1","witness":[0,2],"components":2}"#);
        let inf = toughness(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&inf).unwrap(), r#"{"value":"inf","witness":[],"components":0}"#);
    }
}
