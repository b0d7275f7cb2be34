//! Root systems through the reflection representation: enumeration of
//! positive roots by orbit closure, and the inclusion of the contracted
//! system's positive roots inside the original ones.

use std::collections::HashSet;
use std::sync::Arc;

use crate::embed::{EdgeEmbedding, EmbedError};
use crate::group::{GroupError, Representation};
use crate::kmatrix::KMatrix;
use crate::matrix::vector_sign;
use crate::quad::QuadScalar;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::system::{CoxeterSystem, Edge};

/// A root with its positivity flag, as a coordinate vector over the simple
/// basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Root<S: Scalar> {
    pub vector: Vec<S>,
    pub positive: bool,
}

/// All positive roots reachable by applying simple reflections, up to
/// `bound` many (the whole positive system in finite type).
pub fn positive_roots<S: Scalar>(
    repr: &Arc<Representation<S>>,
    bound: usize,
) -> Result<Vec<Root<S>>, GroupError> {
    let n = repr.rank();
    let mut seen: HashSet<Vec<S>> = HashSet::new();
    let mut queue: Vec<Vec<S>> = Vec::new();
    let mut out = Vec::new();
    for s in 0..n {
        let mut alpha = vec![S::zero(); n];
        alpha[s] = S::one();
        if seen.insert(alpha.clone()) {
            queue.push(alpha);
        }
    }
    while let Some(beta) = queue.pop() {
        out.push(Root {
            vector: beta.clone(),
            positive: true,
        });
        if out.len() > bound {
            return Err(GroupError::BudgetExceeded(bound));
        }
        for s in 0..n {
            let image = repr.generator_matrix(s).apply(&beta);
            // Every image of a root is a root; all new positives appear among
            // the positive images.
            if vector_sign(&image) == Some(true) && seen.insert(image.clone()) {
                queue.push(image);
            }
        }
    }
    Ok(out)
}

/// Every vector in the reflection orbit of the simple basis is all-nonneg or
/// all-nonpos. Scans the full two-sided orbit up to `bound`.
pub fn verify_root_dichotomy<S: Scalar>(
    repr: &Arc<Representation<S>>,
    bound: usize,
) -> Result<VerificationReport, GroupError> {
    let n = repr.rank();
    let mut seen: HashSet<Vec<S>> = HashSet::new();
    let mut queue: Vec<Vec<S>> = Vec::new();
    for s in 0..n {
        let mut alpha = vec![S::zero(); n];
        alpha[s] = S::one();
        seen.insert(alpha.clone());
        queue.push(alpha);
    }
    let mut report = VerificationReport::new();
    let mut ok = true;
    let mut witness = None;
    let mut count = 0usize;
    while let Some(beta) = queue.pop() {
        count += 1;
        if count > bound {
            break;
        }
        if vector_sign(&beta).is_none() {
            ok = false;
            witness = Some(format!("{beta:?}"));
            break;
        }
        for s in 0..n {
            let image = repr.generator_matrix(s).apply(&beta);
            if seen.insert(image.clone()) {
                queue.push(image);
            }
        }
    }
    report.record("root-dichotomy", format!("orbit_size={count}"), ok, witness);
    Ok(report)
}

/// Positive-root inclusion under contraction: write each contracted positive
/// root in original coordinates via `alpha_0 -> alpha_+ + alpha_-` and check
/// membership in the original positive system. Symmetric backend, contracted
/// K by the sum rule.
pub fn verify_root_inclusion(
    system: &CoxeterSystem,
    edge: &Edge,
    bound: usize,
) -> Result<VerificationReport, EmbedError> {
    let k = KMatrix::symmetric(system)?;
    let emb = EdgeEmbedding::new(system, edge, k)?;
    let big = positive_roots(&emb.target, bound)?;
    let small = positive_roots(&emb.source, bound)?;
    let big_set: HashSet<Vec<QuadScalar>> = big.iter().map(|r| r.vector.clone()).collect();
    let n = system.rank();
    let mut report = VerificationReport::new();
    let mut ok = true;
    let mut witness = None;
    for root in &small {
        let mut lifted = vec![QuadScalar::zero(); n];
        for (a, coord) in root.vector.iter().enumerate() {
            match emb.contraction.parent_index[a] {
                Some(i) => lifted[i] = lifted[i].add_ref(coord),
                None => {
                    lifted[emb.contraction.plus_index] =
                        lifted[emb.contraction.plus_index].add_ref(coord);
                    lifted[emb.contraction.minus_index] =
                        lifted[emb.contraction.minus_index].add_ref(coord);
                }
            }
        }
        if !big_set.contains(&lifted) {
            ok = false;
            witness = Some(format!("contracted root {:?} lifts outside", root.vector));
            break;
        }
    }
    report.record(
        "root-inclusion",
        format!(
            "edge=({},{}) contracted_positives={} original_positives={}",
            edge.plus,
            edge.minus,
            small.len(),
            big.len()
        ),
        ok,
        witness,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric(sys: CoxeterSystem) -> Arc<Representation<QuadScalar>> {
        let k = KMatrix::symmetric(&sys).unwrap();
        Representation::new(sys, k)
    }

    #[test]
    fn a2_positive_roots() {
        // Classical count: alpha_1, alpha_2, alpha_1 + alpha_2.
        let r = symmetric(CoxeterSystem::type_a(2));
        let roots = positive_roots(&r, 100).unwrap();
        assert_eq!(roots.len(), 3);
        let one = QuadScalar::one();
        let sum = vec![one.clone(), one];
        assert!(roots.iter().any(|r| r.vector == sum));
    }

    #[test]
    fn a3_positive_root_count() {
        let r = symmetric(CoxeterSystem::type_a(3));
        assert_eq!(positive_roots(&r, 100).unwrap().len(), 6);
    }

    #[test]
    fn b3_and_h3_positive_root_counts() {
        let b3 = symmetric(CoxeterSystem::type_b3());
        assert_eq!(positive_roots(&b3, 100).unwrap().len(), 9);
        let h3 = symmetric(CoxeterSystem::type_h3());
        assert_eq!(positive_roots(&h3, 100).unwrap().len(), 15);
    }

    #[test]
    fn budget_guard_fires_in_affine_type() {
        let tri = symmetric(CoxeterSystem::triangle());
        assert!(matches!(
            positive_roots(&tri, 30),
            Err(GroupError::BudgetExceeded(30))
        ));
    }

    #[test]
    fn dichotomy_in_finite_type() {
        for sys in [CoxeterSystem::type_a(3), CoxeterSystem::type_b3(), CoxeterSystem::type_h3()] {
            let r = symmetric(sys);
            let report = verify_root_dichotomy(&r, 1000).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn inclusion_a3_and_b3() {
        // A3/e -> A2: all 3 contracted positives appear among A3's 6.
        let report =
            verify_root_inclusion(&CoxeterSystem::type_a(3), &Edge::new("1", "2"), 1000).unwrap();
        assert!(report.passed(), "{report}");
        let report =
            verify_root_inclusion(&CoxeterSystem::type_b3(), &Edge::new("1", "2"), 1000).unwrap();
        assert!(report.passed(), "{report}");
    }
}
