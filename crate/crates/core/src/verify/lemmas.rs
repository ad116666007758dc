//! Checks of the four preliminary lemmas on concrete graphs.

use crate::graph::Graph;
use crate::spectral::{
    das_feng_yu_bound, is_equitable, largest_eigenvalue, perron_root, quotient_matrix, signless_laplacian,
    symmetric_eigen, Partition, DEFAULT_TOL, PERRON_TOL,
};

use super::{precondition, Outcome, VerificationReport, VerifyError, CONTAINMENT_TOL, EQUITABLE_TOL};

/// Lemma 2.1: the quotient of Q(g) over an equitable partition shares the
/// largest eigenvalue of Q(g), and each quotient eigenvalue is one of Q(g).
pub fn check_lemma21(g: &Graph, p: &Partition, tol: f64) -> Result<VerificationReport, VerifyError> {
    let q = signless_laplacian(g);
    precondition(p.order() == g.order(), || {
        format!("partition covers {} indices, graph has {}", p.order(), g.order())
    })?;
    precondition(g.is_connected(), || "Q(G) must be irreducible (G connected)".into())?;
    precondition(is_equitable(&q, p, EQUITABLE_TOL), || "partition is not equitable".into())?;

    let qm = quotient_matrix(&q, p)?;
    let perron = perron_root(&qm, PERRON_TOL)?;
    let top = largest_eigenvalue(&q, DEFAULT_TOL)?;
    let full = symmetric_eigen(&q)?.values;
    let containment = qm
        .eigenvalues()?
        .iter()
        .map(|mu| full.iter().map(|lam| (lam - mu).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let gap = (perron - top.value).abs();
    let margin = tol - gap;
    let pass = margin >= 0.0 && containment <= CONTAINMENT_TOL;
    Ok(VerificationReport::new("lemma21")
        .param("n", g.order())
        .param("classes", p.len())
        .value("perron_root", perron)
        .value("q_index", top.value)
        .value("eigen_residual", top.residual)
        .value("gap", gap)
        .value("containment_residual", containment)
        .witness(g)
        .finish(margin, Outcome::from_pass(pass)))
}

/// Lemma 2.2: for a subgraph `h` of connected `g` (vertex `i` of `h` is vertex
/// `i` of `g`), q(h) ≤ q(g), with equality only when h = g.
pub fn check_lemma22(g: &Graph, h: &Graph, tol: f64) -> Result<VerificationReport, VerifyError> {
    precondition(g.is_connected(), || "G must be connected".into())?;
    precondition(h.order() >= 1 && h.order() <= g.order(), || {
        format!("H has {} vertices, G has {}", h.order(), g.order())
    })?;
    precondition(h.edges().all(|(u, v)| g.has_edge(u, v)), || "H is not a subgraph of G".into())?;

    let qg = largest_eigenvalue(&signless_laplacian(g), DEFAULT_TOL)?.value;
    let qh = largest_eigenvalue(&signless_laplacian(h), DEFAULT_TOL)?.value;
    let identical = h == g;
    let diff = qg - qh;
    let equality = diff.abs() <= tol;
    let margin = diff + tol;
    let pass = margin >= 0.0 && (identical || !equality);
    Ok(VerificationReport::new("lemma22")
        .param("n", g.order())
        .param("e_g", g.edge_count())
        .param("n_h", h.order())
        .param("e_h", h.edge_count())
        .value("q_g", qg)
        .value("q_h", qh)
        .flag("identical", identical)
        .flag("equality", equality)
        .witness(g)
        .finish(margin, Outcome::from_pass(pass)))
}

fn join_of_cliques(s: usize, parts: &[usize]) -> Result<Graph, VerifyError> {
    let mut side = Graph::empty(0)?;
    for &k in parts {
        side = side.disjoint_union(&Graph::complete(k)?)?;
    }
    Ok(Graph::complete(s)?.join(&side)?)
}

/// Lemma 2.3: moving vertices into the largest clique of
/// K_s ∨ (K_{n_1} ∪ … ∪ K_{n_t}) strictly raises q.
pub fn check_lemma23(
    s: usize,
    p: usize,
    parts: &[usize],
    tol: f64,
) -> Result<VerificationReport, VerifyError> {
    let t = parts.len();
    precondition(t >= 1 && p >= 1, || "need t ≥ 1 parts and p ≥ 1".into())?;
    precondition(parts.windows(2).all(|w| w[0] >= w[1]), || "parts must be non-increasing".into())?;
    precondition(parts[t - 1] >= p, || format!("smallest part {} < p = {p}", parts[t - 1]))?;
    let n = s + parts.iter().sum::<usize>();
    let big = n - s - p * (t - 1);
    precondition(parts[0] < big, || format!("n_1 = {} must be below n − s − p(t−1) = {big}", parts[0]))?;

    let left = join_of_cliques(s, parts)?;
    let mut right_parts = vec![big];
    right_parts.extend(std::iter::repeat_n(p, t - 1));
    let right = join_of_cliques(s, &right_parts)?;
    let q_left = largest_eigenvalue(&signless_laplacian(&left), DEFAULT_TOL)?.value;
    let q_right = largest_eigenvalue(&signless_laplacian(&right), DEFAULT_TOL)?.value;
    let margin = q_right - q_left;
    let parts_text = parts.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    Ok(VerificationReport::new("lemma23")
        .param("s", s)
        .param("p", p)
        .param("parts", parts_text)
        .param("n", n)
        .value("q_left", q_left)
        .value("q_right", q_right)
        .finish(margin, Outcome::from_pass(margin > tol)))
}

/// Lemma 2.4: q(g) ≤ 2e/(n−1) + n − 2.
pub fn check_lemma24(g: &Graph, tol: f64) -> Result<VerificationReport, VerifyError> {
    let bound = das_feng_yu_bound(g)?;
    let q = largest_eigenvalue(&signless_laplacian(g), DEFAULT_TOL)?.value;
    Ok(VerificationReport::new("lemma24")
        .param("n", g.order())
        .param("e", g.edge_count())
        .value("q_index", q)
        .value("bound", bound)
        .witness(g)
        .finish_margin(bound - q + tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{proof_thm12_g2, thm11_extremal};

    #[test]
    fn lemma21_on_known_partitions() {
        let k6 = Graph::complete(6).unwrap();
        let r = check_lemma21(&k6, &Partition::whole(6), 1e-7).unwrap();
        assert!(r.passed, "{r:?}");
        let parts = proof_thm12_g2(2, 5, 14).unwrap();
        let r = check_lemma21(&parts.graph().unwrap(), &parts.partition().unwrap(), 1e-7).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        let star = Graph::complete(1).unwrap().join(&Graph::empty(5).unwrap()).unwrap();
        let r = check_lemma21(&star, &Partition::from_sizes(&[1, 5]).unwrap(), 1e-7).unwrap();
        assert!(r.passed);
        let p4 = Graph::path(4).unwrap();
        let uneven = Partition::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap();
        assert!(matches!(check_lemma21(&p4, &uneven, 1e-7), Err(VerifyError::Precondition(_))));
    }

    #[test]
    fn lemma22_cases() {
        let g = Graph::cycle(7).unwrap();
        let r = check_lemma22(&g, &g, 1e-8).unwrap();
        assert!(r.passed && r.margin.abs() <= 1e-8 + 1e-12);
        let mut h = Graph::complete(7).unwrap();
        h.remove_edge(0, 1).unwrap();
        let r = check_lemma22(&Graph::complete(7).unwrap(), &h, 1e-8).unwrap();
        assert!(r.passed && r.margin > 1e-3);
        let ext = thm11_extremal(1, 2, 11).unwrap().graph().unwrap();
        let k10 = Graph::complete(10).unwrap();
        let r = check_lemma22(&ext, &k10, 1e-8).unwrap();
        assert!(r.passed);
        assert!(check_lemma22(&Graph::path(4).unwrap(), &Graph::complete(3).unwrap(), 1e-8).is_err());
    }

    #[test]
    fn lemma23_examples() {
        assert!(check_lemma23(2, 1, &[3, 2, 2], 1e-9).unwrap().passed);
        assert!(check_lemma23(1, 1, &[4, 3, 1], 1e-9).unwrap().passed);
        assert!(check_lemma23(2, 1, &[5, 1, 1], 1e-9).is_err());
        assert!(check_lemma23(2, 2, &[3, 1], 1e-9).is_err());
    }

    #[test]
    fn lemma24_examples() {
        let r = check_lemma24(&Graph::complete(6).unwrap(), 1e-8).unwrap();
        assert!(r.passed && r.margin < 1e-7);
        let r = check_lemma24(&Graph::cycle(7).unwrap(), 1e-8).unwrap();
        assert!((r.margin - (7.0 / 3.0 + 5.0 - 4.0) - 1e-8).abs() < 1e-9);
        assert!(check_lemma24(&Graph::empty(5).unwrap(), 1e-8).unwrap().passed);
        assert!(check_lemma24(&Graph::complete(1).unwrap(), 1e-8).is_err());
    }
}
