//! Simple undirected graphs on at most 64 vertices, stored as adjacency bitset rows.

use std::fmt;

use thiserror::Error;

/// Largest order representable with one `u64` row per vertex.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} exceeds the {MAX_VERTICES}-vertex limit")]
    TooLarge(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

#[inline]
const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertex indices of some host graph, as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// The contiguous range `lo..hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        debug_assert!(lo <= hi && hi <= MAX_VERTICES);
        VertexSet(low_mask(hi) & !low_mask(lo))
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_VERTICES, "vertex {v} outside bitmask range");
        self.0 |= bit(v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < MAX_VERTICES {
            self.0 &= !bit(v);
        }
    }

    /// Largest member plus one, or 0 for the empty set.
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph. Equality is labeled: same order, same adjacency.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    /// K_n.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = low_mask(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row = all & !bit(v);
        }
        Ok(g)
    }

    /// C_n for n >= 3.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooShort(n));
        }
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.link(v, (v + 1) % n);
        }
        Ok(g)
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.link(v - 1, v);
        }
        Ok(g)
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] & bit(v) != 0
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn link(&mut self, u: usize, v: usize) {
        self.rows[u] |= bit(v);
        self.rows[v] |= bit(u);
    }

    /// Adds `uv`; returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let fresh = !self.has_edge(u, v);
        self.link(u, v);
        Ok(fresh)
    }

    /// Removes `uv`; returns whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let present = self.has_edge(u, v);
        self.rows[u] &= !bit(v);
        self.rows[v] &= !bit(u);
        Ok(present)
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| VertexSet(self.rows[u] & !low_mask(u + 1)).iter().map(move |v| (u, v)))
    }

    /// Vertex pairs `(u, v)`, `u < v`, that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `self ∪ other` with `other` relabeled to `n1..n1+n2`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let shift = self.n;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << shift));
        Ok(Graph { n, rows })
    }

    /// `t` disjoint copies of `g`.
    pub fn copies(t: usize, g: &Graph) -> Result<Graph, GraphError> {
        let mut out = Graph::empty(0)?;
        for _ in 0..t {
            out = out.disjoint_union(g)?;
        }
        Ok(out)
    }

    /// `self ∨ other`: the disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = low_mask(self.n);
        let right = low_mask(g.n) & !left;
        for v in 0..g.n {
            g.rows[v] |= if v < self.n { right } else { left };
        }
        Ok(g)
    }

    /// `G - S`, survivors reindexed contiguously in their original order.
    pub fn remove_vertices(&self, s: VertexSet) -> Result<Graph, GraphError> {
        if s.bound() > self.n {
            return Err(GraphError::VertexOutOfRange { vertex: s.bound() - 1, n: self.n });
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !s.contains(v)).collect();
        Ok(self.induced(&keep))
    }

    /// Induced subgraph on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let m = keep.len();
        let mut rows = vec![0u64; m];
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                if self.has_edge(u, v) {
                    rows[i] |= bit(j);
                }
            }
        }
        Graph { n: m, rows }
    }

    /// Relabels so that old vertex `order[i]` becomes vertex `i`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.n, "permutation length mismatch");
        self.induced(order)
    }

    /// Number of connected components of the subgraph induced on `mask`.
    pub fn components_within(&self, mask: VertexSet) -> usize {
        let mut rest = mask.0 & low_mask(self.n);
        let mut count = 0;
        while rest != 0 {
            let mut frontier = rest & rest.wrapping_neg();
            let mut seen = frontier;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.rows[v] & rest & !seen;
                seen |= fresh;
                frontier |= fresh;
            }
            rest &= !seen;
            count += 1;
        }
        count
    }

    /// c(G); 0 for the 0-vertex graph.
    pub fn components_count(&self) -> usize {
        self.components_within(self.vertices())
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = low_mask(self.n);
        let mut out = Vec::new();
        while rest != 0 {
            let mut frontier = rest & rest.wrapping_neg();
            let mut seen = frontier;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.rows[v] & rest & !seen;
                seen |= fresh;
                frontier |= fresh;
            }
            rest &= !seen;
            out.push(VertexSet(seen));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n >= 1 && self.components_count() == 1
    }

    pub fn isolated_count(&self) -> usize {
        self.rows.iter().filter(|&&r| r == 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Same vertex set, and every edge of `self` is an edge of `host`.
    pub fn is_spanning_subgraph_of(&self, host: &Graph) -> bool {
        self.n == host.n && self.rows.iter().zip(&host.rows).all(|(a, b)| a & !b == 0)
    }

    /// Vertex order by iterated (degree, neighbor-colour multiset) refinement,
    /// ties kept in index order. Twins always land in the same colour class.
    pub fn refinement_order(&self) -> Vec<usize> {
        let mut colour: Vec<usize> = self.degrees();
        let mut classes = distinct(&colour);
        loop {
            let signatures: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<usize> = self.neighbors(v).iter().map(|u| colour[u]).collect();
                    nb.sort_unstable();
                    (colour[v], nb)
                })
                .collect();
            let mut ranked = signatures.clone();
            ranked.sort();
            ranked.dedup();
            colour =
                signatures.iter().map(|sig| ranked.binary_search(sig).expect("signature present")).collect();
            let refined = ranked.len();
            if refined == classes {
                break;
            }
            classes = refined;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (colour[v], v));
        order
    }

    /// `self` relabeled by [`Graph::refinement_order`]. Isomorphic graphs whose
    /// refinement classes consist of twins map to the same labeled graph.
    pub fn canonical_relabel(&self) -> Graph {
        self.permuted(&self.refinement_order())
    }

    /// α(G), exact, by branch and bound.
    pub fn independence_number(&self) -> usize {
        self.independence_number_within(self.vertices())
    }

    /// α of the subgraph induced on `mask`.
    pub fn independence_number_within(&self, mask: VertexSet) -> usize {
        let mut best = 0;
        self.mis_branch(mask.0 & low_mask(self.n), 0, &mut best);
        best
    }

    fn mis_branch(&self, mut cand: u64, mut size: usize, best: &mut usize) {
        // vertices of degree <= 1 inside `cand` belong to some maximum independent set
        loop {
            if cand == 0 {
                *best = (*best).max(size);
                return;
            }
            let mut taken = false;
            let mut iter = cand;
            while iter != 0 {
                let v = iter.trailing_zeros() as usize;
                iter &= iter - 1;
                if (self.rows[v] & cand).count_ones() <= 1 {
                    cand &= !(self.rows[v] | bit(v));
                    size += 1;
                    taken = true;
                    break;
                }
            }
            if !taken {
                break;
            }
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let mut pivot = 0;
        let mut pivot_deg = 0;
        let mut iter = cand;
        while iter != 0 {
            let v = iter.trailing_zeros() as usize;
            iter &= iter - 1;
            let d = (self.rows[v] & cand).count_ones();
            if d > pivot_deg {
                pivot = v;
                pivot_deg = d;
            }
        }
        self.mis_branch(cand & !(self.rows[pivot] | bit(pivot)), size + 1, best);
        self.mis_branch(cand & !bit(pivot), size, best);
    }
}

fn distinct(values: &[usize]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_alpha(g: &Graph) -> usize {
        let n = g.order();
        (0u64..1 << n)
            .filter(|&m| VertexSet(m).iter().all(|v| g.neighbors(v).bits() & m == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn complete_graph_edge_counts() {
        assert_eq!(Graph::complete(1).unwrap().edge_count(), 0);
        assert_eq!(Graph::complete(4).unwrap().edge_count(), 6);
        assert_eq!(Graph::complete(10).unwrap().edge_count(), 45);
        assert!(Graph::complete(65).is_err());
        assert_eq!(Graph::complete(64).unwrap().edge_count(), 64 * 63 / 2);
    }

    #[test]
    fn cycles() {
        assert_eq!(Graph::cycle(3).unwrap(), Graph::complete(3).unwrap());
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(c6.edge_count(), 6);
        assert!(c6.degrees().iter().all(|&d| d == 2));
        assert_eq!(Graph::cycle(5).unwrap().independence_number(), 2);
        assert_eq!(Graph::cycle(2), Err(GraphError::CycleTooShort(2)));
    }

    #[test]
    fn empty_graphs() {
        let g0 = Graph::empty(0).unwrap();
        assert_eq!(g0.order(), 0);
        assert_eq!(g0.components_count(), 0);
        assert!(!g0.is_connected());
        assert_eq!(Graph::empty(3).unwrap().components_count(), 3);
        assert_eq!(Graph::empty(5).unwrap().independence_number(), 5);
    }

    #[test]
    fn unions_and_copies() {
        let k3 = Graph::complete(3).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let u = k3.disjoint_union(&k2).unwrap();
        assert_eq!((u.order(), u.edge_count(), u.components_count()), (5, 4, 2));
        assert_eq!(k3.disjoint_union(&Graph::empty(0).unwrap()).unwrap(), k3);

        let k1 = Graph::complete(1).unwrap();
        let g = Graph::complete(8).unwrap().disjoint_union(&Graph::copies(2, &k1).unwrap()).unwrap();
        assert_eq!((g.components_count(), g.edge_count()), (3, 28));

        assert_eq!(Graph::copies(3, &k1).unwrap().isolated_count(), 3);
        assert_eq!(Graph::copies(0, &Graph::complete(5).unwrap()).unwrap().order(), 0);
        let two_k3 = Graph::copies(2, &k3).unwrap();
        assert_eq!((two_k3.order(), two_k3.edge_count(), two_k3.components_count()), (6, 6, 2));
    }

    #[test]
    fn joins() {
        let k1 = Graph::complete(1).unwrap();
        let g = k1.join(&Graph::complete(8).unwrap().disjoint_union(&k1).unwrap()).unwrap();
        assert_eq!((g.order(), g.edge_count()), (10, 37));
        assert!(g.is_connected());

        let kab = Graph::complete(3).unwrap().join(&Graph::complete(4).unwrap()).unwrap();
        assert_eq!(kab, Graph::complete(7).unwrap());

        let p3 = k1.join(&Graph::empty(2).unwrap()).unwrap();
        assert_eq!(p3, Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap());
    }

    #[test]
    fn vertex_removal() {
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(c6.remove_vertices(VertexSet::empty()).unwrap(), c6);
        let split = c6.remove_vertices([0, 3].into_iter().collect()).unwrap();
        assert_eq!(split.components_count(), 2);
        assert!(c6.remove_vertices([6].into_iter().collect()).is_err());

        let k1 = Graph::complete(1).unwrap();
        let g = k1.join(&Graph::complete(8).unwrap().disjoint_union(&k1).unwrap()).unwrap();
        let rest = g.remove_vertices([0].into_iter().collect()).unwrap();
        let expect = Graph::complete(8).unwrap().disjoint_union(&k1).unwrap();
        assert_eq!(rest, expect);
        assert_eq!(rest.components_count(), 2);
    }

    #[test]
    fn component_and_isolated_counts() {
        assert_eq!(Graph::complete(7).unwrap().components_count(), 1);
        assert_eq!(Graph::empty(5).unwrap().components_count(), 5);
        let k3_2k1 = Graph::complete(3).unwrap().disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        assert_eq!(k3_2k1.isolated_count(), 2);
        assert_eq!(Graph::complete(5).unwrap().isolated_count(), 0);
        assert_eq!(Graph::empty(4).unwrap().isolated_count(), 4);
    }

    #[test]
    fn independence_numbers() {
        assert_eq!(Graph::complete(9).unwrap().independence_number(), 1);
        assert_eq!(Graph::cycle(6).unwrap().independence_number(), 3);
        let k1 = Graph::complete(1).unwrap();
        let ext = k1.join(&Graph::complete(8).unwrap().disjoint_union(&k1).unwrap()).unwrap();
        assert_eq!(ext.independence_number(), brute_alpha(&ext));
        assert_eq!(ext.independence_number(), 2);
        let petersen_outer = Graph::cycle(5).unwrap();
        let mut pet = petersen_outer.disjoint_union(&Graph::empty(5).unwrap()).unwrap();
        for i in 0..5 {
            pet.add_edge(i, i + 5).unwrap();
            pet.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        assert_eq!(pet.independence_number(), 4);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::complete(1).unwrap().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
        let j = Graph::empty(3).unwrap().join(&Graph::empty(2).unwrap()).unwrap();
        assert!(j.is_connected());
    }

    #[test]
    fn edge_mutation_errors() {
        let mut g = Graph::empty(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(g.add_edge(0, 3).is_err());
        assert!(g.add_edge(0, 2).unwrap());
        assert!(!g.add_edge(2, 0).unwrap());
        assert!(g.remove_edge(0, 2).unwrap());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn vertex_set_basics() {
        let s: VertexSet = [1, 4, 63].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![1, 4, 63]);
        assert_eq!(s.bound(), 64);
        assert_eq!(VertexSet::range(2, 5).to_vec(), vec![2, 3, 4]);
        assert_eq!(VertexSet::full(64).len(), 64);
    }

    #[test]
    fn refinement_canonicalizes_join_families() {
        let g = Graph::complete(2)
            .unwrap()
            .join(&Graph::complete(5).unwrap().disjoint_union(&Graph::empty(3).unwrap()).unwrap())
            .unwrap();
        let shuffled = g.permuted(&[7, 3, 9, 0, 5, 1, 8, 2, 6, 4]);
        assert_ne!(shuffled, g);
        assert_eq!(shuffled.canonical_relabel(), g.canonical_relabel());
        let order = Graph::cycle(5).unwrap().refinement_order();
        assert_eq!(order, vec![0, 1, 2, 3, 4]);
    }
}
