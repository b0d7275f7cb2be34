//! The group-level embedding attached to an edge contraction: the merged
//! generator maps to `s_+ s_- s_+`, everything else to itself. This module
//! verifies the embedding on finite balls, checks the conjugation square
//! along a linear branch, and exercises the length inequality and the
//! type-A permutation length formula.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{ball, GroupElement, GroupError, Representation, DEFAULT_BALL_BUDGET};
use crate::kmatrix::{contracted_k, KError, KMatrix};
use crate::matrix::SquareMatrix;
use crate::quad::QuadScalar;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::system::{Bond, BranchSequence, Contraction, CoxeterSystem, Edge, SystemError};

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    K(#[from] KError),
    #[error("no linear branch at this edge")]
    NoBranch,
    #[error("element does not belong to the contracted system")]
    SystemMismatch,
    #[error("morphism construction failed: {0}")]
    Morphism(String),
}

/// Both sides of one edge contraction over a fixed scalar backend: the
/// original representation, the contracted one (K by the sum rule), and the
/// generator dictionary.
pub struct EdgeEmbedding<S: Scalar> {
    pub contraction: Contraction,
    pub source: Arc<Representation<S>>,
    pub target: Arc<Representation<S>>,
    /// For each source generator, its word in target generators.
    images: Vec<Vec<usize>>,
}

impl<S: Scalar> EdgeEmbedding<S> {
    pub fn new(system: &CoxeterSystem, edge: &Edge, k: KMatrix<S>) -> Result<Self, EmbedError> {
        let contraction = system.contract(edge)?;
        let kc = contracted_k(&k, &contraction);
        let target = Representation::new(system.clone(), k);
        let source = Representation::new(contraction.system.clone(), kc);
        let images = contraction
            .parent_index
            .iter()
            .map(|&p| match p {
                Some(i) => vec![i],
                None => vec![
                    contraction.plus_index,
                    contraction.minus_index,
                    contraction.plus_index,
                ],
            })
            .collect();
        Ok(Self {
            contraction,
            source,
            target,
            images,
        })
    }

    /// Image of a contracted-system element: map its reduced word letterwise.
    pub fn apply(&self, w: &GroupElement<S>) -> Result<GroupElement<S>, EmbedError> {
        if !Arc::ptr_eq(w.representation(), &self.source)
            && w.representation().system != self.source.system
        {
            return Err(EmbedError::SystemMismatch);
        }
        let mut out = GroupElement::identity(&self.target);
        for &s in w.normal_form() {
            for &t in &self.images[s] {
                out = out.mul_generator(t);
            }
        }
        Ok(out)
    }

    pub fn image_word(&self, source_gen: usize) -> &[usize] {
        &self.images[source_gen]
    }
}

/// Relations + ball-injectivity + homomorphism report for one contraction.
pub fn verify_group_embedding<S: Scalar>(
    emb: &EdgeEmbedding<S>,
    max_length: usize,
) -> Result<VerificationReport, EmbedError> {
    let mut report = VerificationReport::new();
    let n = emb.source.rank();
    // (a) the defining relations of the contracted system hold for the images.
    for s in 0..n {
        for t in s..n {
            let Bond::Finite(m) = emb.contraction.system.bond(s, t) else {
                continue;
            };
            let gs = emb.apply(&GroupElement::generator(&emb.source, s))?;
            let gt = emb.apply(&GroupElement::generator(&emb.source, t))?;
            let mut p = GroupElement::identity(&emb.target);
            for _ in 0..m {
                p = p.mul(&gs)?;
                p = p.mul(&gt)?;
            }
            report.record(
                "group-relation",
                format!(
                    "pair=({},{}) order={}",
                    emb.contraction.system.generators[s], emb.contraction.system.generators[t], m
                ),
                p.is_identity(),
                Some("power of the braid product is not the identity".into()),
            );
        }
    }
    // (b) injectivity on the ball.
    let b = ball(&emb.source, max_length, DEFAULT_BALL_BUDGET)?;
    let mut seen: HashMap<SquareMatrix<S>, usize> = HashMap::new();
    let mut injective = true;
    let mut witness = None;
    for (i, w) in b.iter().enumerate() {
        let img = emb.apply(w)?;
        if let Some(&j) = seen.get(img.matrix()) {
            injective = false;
            witness = Some(format!(
                "phi({}) = phi({})",
                b[j].word_string(),
                w.word_string()
            ));
            break;
        }
        seen.insert(img.matrix().clone(), i);
    }
    report.record(
        "group-injectivity",
        format!("ball={} size={}", max_length, b.len()),
        injective,
        witness,
    );
    // (c) homomorphism property over the ball's generator translates.
    let mut hom_ok = true;
    let mut hom_witness = None;
    'outer: for w in b.iter() {
        for s in 0..n {
            let ws = w.mul_generator(s);
            let lhs = emb.apply(&ws)?;
            let rhs = emb
                .apply(w)?
                .mul(&emb.apply(&GroupElement::generator(&emb.source, s))?)?;
            if lhs != rhs {
                hom_ok = false;
                hom_witness = Some(format!("x={} s={}", w.word_string(), s));
                break 'outer;
            }
        }
    }
    report.record("group-homomorphism", format!("ball={}", max_length), hom_ok, hom_witness);
    Ok(report)
}

/// The displayed subspace computation behind injectivity, in symmetric mode:
/// for every generator `s`,
/// `(sigma_+ sigma_- sigma_+)(alpha_s) = alpha_s + (k_{+,s} + k_{-,s})(alpha_+ + alpha_-)`,
/// and the restriction of the conjugated reflection (and of every off-edge
/// generator) to the contracted subspace equals the contracted system's own
/// reflection.
pub fn verify_subspace_identity(
    system: &CoxeterSystem,
    edge: &Edge,
) -> Result<VerificationReport, EmbedError> {
    let k = KMatrix::symmetric(system)?;
    let emb = EdgeEmbedding::new(system, edge, k.clone())?;
    let mut report = VerificationReport::new();
    let target = &emb.target;
    let n = system.rank();
    let p = emb.contraction.plus_index;
    let m = emb.contraction.minus_index;
    let conj = GroupElement::from_word(target, &[p, m, p]);
    for s in 0..n {
        let got = conj.apply_basis(s);
        let mut want: Vec<QuadScalar> = (0..n)
            .map(|t| if t == s { QuadScalar::one() } else { QuadScalar::zero() })
            .collect();
        let coeff = k.entry(p, s).add_ref(k.entry(m, s));
        want[p] = want[p].add_ref(&coeff);
        want[m] = want[m].add_ref(&coeff);
        report.record(
            "subspace-identity",
            format!("generator={}", system.generators[s]),
            got == want,
            Some(format!("got {got:?}, want {want:?}")),
        );
    }
    // Restriction to the contracted subspace, spanned by the off-edge basis
    // vectors plus alpha_0 = alpha_+ + alpha_-.
    let kc = contracted_k(&k, &emb.contraction);
    let dim_c = emb.contraction.system.rank();
    let basis: Vec<Vec<QuadScalar>> = (0..dim_c)
        .map(|a| {
            let mut v = vec![QuadScalar::zero(); n];
            match emb.contraction.parent_index[a] {
                Some(i) => v[i] = QuadScalar::one(),
                None => {
                    v[p] = QuadScalar::one();
                    v[m] = QuadScalar::one();
                }
            }
            v
        })
        .collect();
    // Subspace coordinates are direct reads: the basis consists of unit
    // vectors plus one vector supported on {p, m} with equal entries.
    let in_subspace_coords = |v: &[QuadScalar]| -> Option<Vec<QuadScalar>> {
        if v[p] != v[m] {
            return None;
        }
        Some(
            (0..dim_c)
                .map(|a| match emb.contraction.parent_index[a] {
                    Some(i) => v[i].clone(),
                    None => v[p].clone(),
                })
                .collect(),
        )
    };
    for a in 0..dim_c {
        let g = GroupElement::from_word(target, emb.image_word(a));
        for b in 0..dim_c {
            let applied = g.apply(&basis[b]);
            let ok = match in_subspace_coords(&applied) {
                Some(coords) => {
                    let want: Vec<QuadScalar> = (0..dim_c)
                        .map(|t| {
                            if t == a && t == b {
                                QuadScalar::from_integer(-1)
                            } else if t == a {
                                kc.entry(a, b).clone()
                            } else if t == b {
                                QuadScalar::one()
                            } else {
                                QuadScalar::zero()
                            }
                        })
                        .collect();
                    coords == want
                }
                None => false,
            };
            report.record(
                "subspace-restriction",
                format!(
                    "generator={} basis={}",
                    emb.contraction.system.generators[a], emb.contraction.system.generators[b]
                ),
                ok,
                Some("image leaves the subspace or differs from the contracted reflection".into()),
            );
        }
    }
    Ok(report)
}

/// Conjugation by a fixed element: `w x w^{-1}`.
pub fn tau_conj<S: Scalar>(
    w: &GroupElement<S>,
    x: &GroupElement<S>,
) -> Result<GroupElement<S>, GroupError> {
    w.mul(x)?.mul(&w.inverse())
}

/// Generator relabelling along a linear branch: off-branch generators fix,
/// the branch start maps to the merged generator, interior nodes shift one
/// step outward. Entry `s` is the contracted index of the image of original
/// generator `s`, `None` only at the branch tip.
pub fn branch_relabel(
    contraction: &Contraction,
    branch: &BranchSequence,
) -> Result<Vec<Option<usize>>, EmbedError> {
    let original_rank = contraction.parent_index.len() + 1;
    let tip = *branch.nodes.last().unwrap();
    let mut contracted_of_original: HashMap<usize, usize> = HashMap::new();
    for (a, &p) in contraction.parent_index.iter().enumerate() {
        if let Some(i) = p {
            contracted_of_original.insert(i, a);
        }
    }
    let mut out = vec![None; original_rank];
    for s in 0..original_rank {
        if s == tip {
            continue;
        }
        let image = if let Some(pos) = branch.nodes.iter().position(|&x| x == s) {
            if pos == 0 {
                contraction.merged_index
            } else {
                let next = branch.nodes[pos + 1];
                *contracted_of_original.get(&next).ok_or(EmbedError::NoBranch)?
            }
        } else {
            *contracted_of_original.get(&s).ok_or(EmbedError::NoBranch)?
        };
        out[s] = Some(image);
    }
    Ok(out)
}

/// The commutative square along a linear branch: conjugation by
/// `s_{j_1} ... s_{j_n}` on the parabolic avoiding the branch tip equals the
/// embedding composed with the relabelling, on generators and on a ball.
pub fn verify_branch_square_group<S: Scalar>(
    emb: &EdgeEmbedding<S>,
    branch: &BranchSequence,
    max_length: usize,
) -> Result<VerificationReport, EmbedError> {
    let mut report = VerificationReport::new();
    let tip = *branch.nodes.last().unwrap();
    let conj = GroupElement::from_word(&emb.target, &branch.nodes[1..]);
    let relabel = branch_relabel(&emb.contraction, branch)?;
    let n = emb.target.rank();
    for s in 0..n {
        if s == tip {
            continue;
        }
        let lhs = tau_conj(&conj, &GroupElement::generator(&emb.target, s))?;
        let tau_s = relabel[s].expect("non-tip generator has an image");
        let rhs = emb.apply(&GroupElement::generator(&emb.source, tau_s))?;
        report.record(
            "branch-square-generator",
            format!("generator={}", emb.target.system.generators[s]),
            lhs == rhs,
            Some(format!(
                "conjugate is {} but phi(tau) is {}",
                lhs.word_string(),
                rhs.word_string()
            )),
        );
    }
    let sub_ball = parabolic_ball(&emb.target, tip, max_length)?;
    let mut ok = true;
    let mut witness = None;
    for (w, word) in &sub_ball {
        let lhs = tau_conj(&conj, w)?;
        let mut mapped = GroupElement::identity(&emb.source);
        for &s in word {
            mapped = mapped.mul_generator(relabel[s].expect("non-tip"));
        }
        let rhs = emb.apply(&mapped)?;
        if lhs != rhs {
            ok = false;
            witness = Some(format!("w={}", w.word_string()));
            break;
        }
    }
    report.record(
        "branch-square-ball",
        format!("ball={} size={}", max_length, sub_ball.len()),
        ok,
        witness,
    );
    Ok(report)
}

/// Ball of the standard parabolic subgroup avoiding one generator, keeping a
/// defining word per element.
pub(crate) fn parabolic_ball<S: Scalar>(
    repr: &Arc<Representation<S>>,
    avoid: usize,
    max_length: usize,
) -> Result<Vec<(GroupElement<S>, Vec<usize>)>, GroupError> {
    let mut seen: HashMap<SquareMatrix<S>, ()> = HashMap::new();
    let id = GroupElement::identity(repr);
    seen.insert(id.matrix().clone(), ());
    let mut out = vec![(id.clone(), Vec::new())];
    let mut frontier = vec![(id, Vec::new())];
    for _ in 1..=max_length {
        let mut next: Vec<(GroupElement<S>, Vec<usize>)> = Vec::new();
        for (w, word) in &frontier {
            for s in 0..repr.rank() {
                if s == avoid {
                    continue;
                }
                let ws = w.mul_generator(s);
                if seen.contains_key(ws.matrix()) {
                    continue;
                }
                if out.len() + next.len() + 1 > DEFAULT_BALL_BUDGET {
                    return Err(GroupError::BudgetExceeded(DEFAULT_BALL_BUDGET));
                }
                seen.insert(ws.matrix().clone(), ());
                let mut next_word = word.clone();
                next_word.push(s);
                next.push((ws, next_word));
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// `ell(phi(x)) <= ell(x) + 2 * mult` over a ball, where `mult` counts the
/// merged generator in the canonical word of `x`.
pub fn verify_length_inequality<S: Scalar>(
    emb: &EdgeEmbedding<S>,
    max_length: usize,
) -> Result<VerificationReport, EmbedError> {
    let mut report = VerificationReport::new();
    let b = ball(&emb.source, max_length, DEFAULT_BALL_BUDGET)?;
    let merged = emb.contraction.merged_index;
    let mut ok = true;
    let mut witness = None;
    for w in &b {
        let mult = w.normal_form().iter().filter(|&&s| s == merged).count();
        let img_len = emb.apply(w)?.length();
        if img_len > w.length() + 2 * mult {
            ok = false;
            witness = Some(format!(
                "w={}: ell(phi(w)) = {} > {} + 2*{}",
                w.word_string(),
                img_len,
                w.length(),
                mult
            ));
            break;
        }
    }
    report.record(
        "length-inequality",
        format!("ball={} size={}", max_length, b.len()),
        ok,
        witness,
    );
    Ok(report)
}

/// Closed length formula for the type-A chain contracted at `{i_+, i_+ + 1}`:
/// the contracted length (inversions) plus the number of crossings of the
/// cut between `i_+` and `i_+ + 1` in either direction. `perm` is one-line
/// notation on `{1..n}`, `i_plus` is 1-based.
///
/// The crossing sets are `{k <= i_+ : w(k) > i_+}` and
/// `{k > i_+ : w(k) <= i_+}`; the strict-at-`i_+` variant undercounts (it
/// misses the merged transposition itself), which the brute-force harness
/// below confirms.
pub fn type_a_length_formula(perm: &[usize], i_plus: usize) -> usize {
    let inversions = (0..perm.len())
        .flat_map(|i| ((i + 1)..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    let crossings_up = (1..=i_plus).filter(|&k| perm[k - 1] > i_plus).count();
    let crossings_down = ((i_plus + 1)..=perm.len())
        .filter(|&k| perm[k - 1] <= i_plus)
        .count();
    inversions + crossings_up + crossings_down
}

/// One-line notation for an element of the contracted A-chain, viewed as the
/// symmetric group on `rank + 1` points.
pub fn contracted_permutation<S: Scalar>(w: &GroupElement<S>) -> Vec<usize> {
    let n = w.representation().rank() + 1;
    let mut perm: Vec<usize> = (1..=n).collect();
    for &s in w.normal_form().iter().rev() {
        perm.swap(s, s + 1);
    }
    perm
}

/// Brute-force comparison of the closed formula with the true image length
/// over the whole contracted group of `A_n / {i_+, i_+ + 1}`.
pub fn verify_type_a_length_formula(n: usize, i_plus: usize) -> Result<VerificationReport, EmbedError> {
    let system = CoxeterSystem::type_a(n);
    let edge = Edge::new(i_plus.to_string(), (i_plus + 1).to_string());
    let k = KMatrix::crystallographic(&system)?;
    let emb = EdgeEmbedding::new(&system, &edge, k)?;
    let full = ball(&emb.source, n * (n + 1) / 2, DEFAULT_BALL_BUDGET)?;
    let mut report = VerificationReport::new();
    let mut ok = true;
    let mut witness = None;
    for w in &full {
        let perm = contracted_permutation(w);
        let predicted = type_a_length_formula(&perm, i_plus);
        let actual = emb.apply(w)?.length();
        if predicted != actual {
            ok = false;
            witness = Some(format!(
                "w={} perm={:?}: formula {} != ell(phi(w)) = {}",
                w.word_string(),
                perm,
                predicted,
                actual
            ));
            break;
        }
    }
    report.record(
        "type-a-length-formula",
        format!("n={} i_plus={} group_size={}", n, i_plus, full.len()),
        ok,
        witness,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_embedding() -> EdgeEmbedding<i64> {
        let sys = CoxeterSystem::type_a(3);
        let k = KMatrix::crystallographic(&sys).unwrap();
        EdgeEmbedding::new(&sys, &Edge::new("2", "1"), k).unwrap()
    }

    #[test]
    fn merged_generator_maps_to_triple() {
        let emb = a3_embedding();
        let merged = emb.contraction.merged_index;
        let s0 = GroupElement::generator(&emb.source, merged);
        let img = emb.apply(&s0).unwrap();
        let want = GroupElement::from_word(&emb.target, &[1, 0, 1]);
        assert_eq!(img, want);
        assert_eq!(img.length(), 3);
        assert!(emb.apply(&GroupElement::identity(&emb.source)).unwrap().is_identity());
    }

    #[test]
    fn braid_image_has_order_three() {
        // A3/e is A2-shaped: phi(s0) phi(3) has order 3; oracle is the
        // explicit matrix power.
        let emb = a3_embedding();
        let merged = emb.contraction.merged_index;
        let a = emb.apply(&GroupElement::generator(&emb.source, merged)).unwrap();
        let b = emb.apply(&GroupElement::generator(&emb.source, 1 - merged)).unwrap();
        let ab = a.mul(&b).unwrap();
        let mut p = GroupElement::identity(&emb.target);
        for _ in 0..3 {
            p = p.mul(&ab).unwrap();
        }
        assert!(p.is_identity());
    }

    #[test]
    fn verify_group_embedding_a3() {
        let report = verify_group_embedding(&a3_embedding(), 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn verify_group_embedding_triangle() {
        // Affine A2: the infinite contracted bond imposes no relation;
        // injectivity still holds on the ball.
        let sys = CoxeterSystem::triangle();
        let k = KMatrix::crystallographic(&sys).unwrap();
        let emb = EdgeEmbedding::new(&sys, &Edge::new("a", "b"), k).unwrap();
        let report = verify_group_embedding(&emb, 6).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn subspace_identity_a3_and_b3() {
        for (sys, e) in [
            (CoxeterSystem::type_a(3), Edge::new("2", "1")),
            (CoxeterSystem::type_b3(), Edge::new("1", "2")),
        ] {
            let report = verify_subspace_identity(&sys, &e).unwrap();
            assert!(report.passed(), "{sys:?}: {report}");
        }
    }

    #[test]
    fn branch_square_examples() {
        // A3, branch (1,2,3): conjugator s2 s3; s2s3 . s1 . s3s2 = phi(s0)
        // = s2 s1 s2, the proof's n = 2 computation.
        let sys = CoxeterSystem::type_a(3);
        let k = KMatrix::crystallographic(&sys).unwrap();
        let emb = EdgeEmbedding::new(&sys, &Edge::new("2", "1"), k).unwrap();
        let branch = sys.find_linear_branch(&Edge::new("2", "1")).unwrap().unwrap();
        assert_eq!(branch.nodes, vec![0, 1, 2]);
        let conj = GroupElement::from_word(&emb.target, &branch.nodes[1..]);
        let lhs = tau_conj(&conj, &GroupElement::generator(&emb.target, 0)).unwrap();
        assert_eq!(lhs, GroupElement::from_word(&emb.target, &[1, 0, 1]));
        let report = verify_branch_square_group(&emb, &branch, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn branch_square_a2_single_step() {
        let sys = CoxeterSystem::type_a(2);
        let k = KMatrix::crystallographic(&sys).unwrap();
        let emb = EdgeEmbedding::new(&sys, &Edge::new("2", "1"), k).unwrap();
        let branch = sys.find_linear_branch(&Edge::new("2", "1")).unwrap().unwrap();
        assert_eq!(branch.arm_length(), 1);
        let report = verify_branch_square_group(&emb, &branch, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn branch_square_a4_interior_case() {
        // Interior generators map one step outward along the chain.
        let sys = CoxeterSystem::type_a(4);
        let k = KMatrix::crystallographic(&sys).unwrap();
        let emb = EdgeEmbedding::new(&sys, &Edge::new("2", "1"), k).unwrap();
        let branch = sys.find_linear_branch(&Edge::new("2", "1")).unwrap().unwrap();
        assert_eq!(branch.nodes, vec![0, 1, 2, 3]);
        let report = verify_branch_square_group(&emb, &branch, 4).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn length_inequality_and_equality_case() {
        let emb = a3_embedding();
        let report = verify_length_inequality(&emb, 3).unwrap();
        assert!(report.passed(), "{report}");
        let merged = emb.contraction.merged_index;
        let s0 = GroupElement::generator(&emb.source, merged);
        assert_eq!(emb.apply(&s0).unwrap().length(), 1 + 2);
    }

    #[test]
    fn type_a_formula_matches_brute_force() {
        for n in [3usize, 4] {
            for i_plus in 1..n {
                let report = verify_type_a_length_formula(n, i_plus).unwrap();
                assert!(report.passed(), "n={n} i+={i_plus}: {report}");
            }
        }
    }
}
