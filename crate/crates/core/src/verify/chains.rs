//! Numeric margins of every link in the two cases of the Theorem 1.1 argument.

use crate::extremal::{
    case2_independent_size, n_min_thm11, phi_components, proof_g2_case1, proof_g3_case2, thm11_extremal,
};

use super::{join_q, precondition, Outcome, VerificationReport, VerifyError, CHAIN_TOL, STRICT_MARGIN};

/// Which case of the argument a component count ω falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainCase {
    /// n ≥ (b+1)ω − 1 and ω ≥ l + 1.
    Case1,
    /// ω = l: the proof graph is the extremal graph itself.
    Boundary,
    /// n ≤ (b+1)ω − 2.
    Case2,
}

impl ChainCase {
    pub fn classify(b: usize, l: usize, n: usize, omega: usize) -> Option<Self> {
        if n + 2 <= (b + 1) * omega {
            Some(ChainCase::Case2)
        } else if omega == l {
            Some(ChainCase::Boundary)
        } else if omega > l {
            Some(ChainCase::Case1)
        } else {
            None
        }
    }
}

/// Dispatches on [`ChainCase::classify`]; the boundary ω = l yields a skipped
/// report because sharpness, not the chain, covers it.
pub fn check_chain(b: usize, l: usize, n: usize, omega: usize) -> Result<VerificationReport, VerifyError> {
    match ChainCase::classify(b, l, n, omega) {
        Some(ChainCase::Case1) => check_case1_chain(b, l, n, omega),
        Some(ChainCase::Case2) => check_case2_chain(b, l, n),
        Some(ChainCase::Boundary) => Ok(VerificationReport::new("chain_case1")
            .param("b", b)
            .param("l", l)
            .param("n", n)
            .param("omega", omega)
            .note("omega = l is the extremal graph; see the sharpness report")
            .finish(0.0, Outcome::Skipped)),
        None => {
            Err(VerifyError::Precondition(format!("ω = {omega} is below l = {l} and outside both cases")))
        }
    }
}

fn theorem_range(b: usize, l: usize, n: usize) -> Result<(), VerifyError> {
    let n_min = n_min_thm11(b, l)?;
    precondition(n >= n_min, || format!("n = {n} is below the threshold {n_min}"))
}

/// q(G₂) ≤ φ(ω)/(n−1) ≤ φ(l+1)/(n−1) ≤ 2n − 2l < q(extremal).
pub fn check_case1_chain(
    b: usize,
    l: usize,
    n: usize,
    omega: usize,
) -> Result<VerificationReport, VerifyError> {
    theorem_range(b, l, n)?;
    precondition(omega > l && (b + 1) * omega <= n + 1, || {
        format!("need l+1 ≤ ω ≤ (n+1)/(b+1), got ω = {omega}")
    })?;
    let nf = n as f64;
    let q2 = join_q(&proof_g2_case1(b, omega, n)?)?;
    let phi_omega = phi_components(omega as f64, n, b) / (nf - 1.0);
    let phi_l1 = phi_components((l + 1) as f64, n, b) / (nf - 1.0);
    let target = 2.0 * nf - 2.0 * l as f64;
    let q_ext = join_q(&thm11_extremal(b, l, n)?)?;
    let links = [
        phi_omega - q2 + CHAIN_TOL,
        phi_l1 - phi_omega + CHAIN_TOL,
        target - phi_l1 + CHAIN_TOL,
        q_ext - target - STRICT_MARGIN,
    ];
    let margin = links.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(VerificationReport::new("chain_case1")
        .param("b", b)
        .param("l", l)
        .param("n", n)
        .param("omega", omega)
        .value("q_g2", q2)
        .value("phi_omega_over_n1", phi_omega)
        .value("phi_l1_over_n1", phi_l1)
        .value("two_n_minus_two_l", target)
        .value("q_extremal", q_ext)
        .value("link_lemma24", phi_omega - q2)
        .value("link_monotone", phi_l1 - phi_omega)
        .value("link_target", target - phi_l1)
        .value("link_strict", q_ext - target)
        .finish_margin(margin))
}

/// q(G₃) ≤ 2e(G₃)/(n−1) + n − 2 < 2n − 2l for G₃ = K_{n−k} ∨ kK_1.
pub fn check_case2_chain(b: usize, l: usize, n: usize) -> Result<VerificationReport, VerifyError> {
    theorem_range(b, l, n)?;
    let parts = proof_g3_case2(b, n)?;
    let nf = n as f64;
    let q3 = join_q(&parts)?;
    let bound = 2.0 * parts.edge_count() as f64 / (nf - 1.0) + nf - 2.0;
    let target = 2.0 * nf - 2.0 * l as f64;
    let margin = (bound - q3 + CHAIN_TOL).min(target - bound - STRICT_MARGIN);
    Ok(VerificationReport::new("chain_case2")
        .param("b", b)
        .param("l", l)
        .param("n", n)
        .count("k", case2_independent_size(b, n))
        .value("q_g3", q3)
        .value("edge_bound", bound)
        .value("two_n_minus_two_l", target)
        .value("link_strict", target - q3)
        .finish_margin(margin))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_case_examples() {
        let r = check_chain(1, 2, 11, 3).unwrap();
        assert_eq!(r.check_id, "chain_case1");
        assert!(r.passed, "{r:?}");
        let r = check_chain(1, 2, 11, 7).unwrap();
        assert_eq!(r.check_id, "chain_case2");
        assert!(r.passed, "{r:?}");
        let r = check_chain(1, 2, 11, 2).unwrap();
        assert_eq!(r.outcome, Outcome::Skipped);
        assert!(check_case1_chain(1, 2, 10, 3).is_err());
    }

    #[test]
    fn large_orders_use_the_quotient() {
        let r = check_case1_chain(3, 5, 168, 20).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(check_case2_chain(3, 5, 168).unwrap().passed);
    }
}
