//! Iwahori-Hecke algebras in the `T_w` basis with unequal parameters
//! `v_s = v^{L(s)}`, the embedding induced by an edge contraction
//! (`T'_{s_0} -> T_+ T_- T_+^{-1}`), specialization at `v = 1`, the two
//! injectivity certificates, and the conjugation square along a linear
//! branch.
//!
//! Elements store group elements as keys, not words, so independence of the
//! reduced expression is a testable consequence rather than an assumption.

use std::collections::HashMap;
use std::sync::Arc;

use num::BigInt;

use crate::embed::{branch_relabel, parabolic_ball, EdgeEmbedding, EmbedError};
use crate::group::{ball, GroupElement, GroupError, Representation, DEFAULT_BALL_BUDGET};
use crate::laurent::LaurentPoly;
use crate::rank::rank_over_fraction_field;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::system::BranchSequence;

/// Element of the Hecke algebra: a finite `T_w -> coefficient` map.
#[derive(Clone)]
pub struct HeckeElement<S: Scalar> {
    repr: Arc<Representation<S>>,
    terms: HashMap<GroupElement<S>, LaurentPoly>,
}

impl<S: Scalar> PartialEq for HeckeElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<S: Scalar> Eq for HeckeElement<S> {}

impl<S: Scalar> std::fmt::Debug for HeckeElement<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// `v_s - v_s^{-1}` for the parameter attached to generator `s`.
fn quantum_gap<S: Scalar>(repr: &Representation<S>, s: usize) -> LaurentPoly {
    let l = repr.system.weight(s);
    LaurentPoly::v_pow(l).sub_ref(&LaurentPoly::v_pow(-l))
}

fn v_param<S: Scalar>(repr: &Representation<S>, s: usize) -> LaurentPoly {
    LaurentPoly::v_pow(repr.system.weight(s))
}

impl<S: Scalar> HeckeElement<S> {
    pub fn zero(repr: &Arc<Representation<S>>) -> Self {
        Self {
            repr: Arc::clone(repr),
            terms: HashMap::new(),
        }
    }

    pub fn one(repr: &Arc<Representation<S>>) -> Self {
        Self::basis(GroupElement::identity(repr))
    }

    pub fn basis(w: GroupElement<S>) -> Self {
        let repr = Arc::clone(w.representation());
        let mut terms = HashMap::new();
        terms.insert(w, LaurentPoly::one());
        Self { repr, terms }
    }

    pub fn generator(repr: &Arc<Representation<S>>, s: usize) -> Self {
        Self::basis(GroupElement::generator(repr, s))
    }

    /// `T_s^{-1} = T_s + (v_s^{-1} - v_s)`.
    pub fn generator_inverse(repr: &Arc<Representation<S>>, s: usize) -> Self {
        let mut out = Self::generator(repr, s);
        out.add_term(GroupElement::identity(repr), quantum_gap(repr.as_ref(), s).neg_ref());
        out
    }

    pub fn representation(&self) -> &Arc<Representation<S>> {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &GroupElement<S>) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement<S>> {
        self.terms.keys()
    }

    fn add_term(&mut self, w: GroupElement<S>, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        if !Arc::ptr_eq(&self.repr, &other.repr) && self.repr.system != other.repr.system {
            return Err(GroupError::SystemMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero(&self.repr);
        }
        Self {
            repr: Arc::clone(&self.repr),
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    /// Right multiplication by `T_s`: `T_y T_s = T_{ys}` on ascent, and
    /// `T_{ys} + (v_s - v_s^{-1}) T_y` on descent.
    pub fn mul_generator(&self, s: usize) -> Self {
        let gap = quantum_gap(self.repr.as_ref(), s);
        let mut out = Self::zero(&self.repr);
        for (y, c) in &self.terms {
            let ys = y.mul_generator(s);
            if y.has_right_descent(s) {
                out.add_term(ys, c.clone());
                out.add_term(y.clone(), c.mul_ref(&gap));
            } else {
                out.add_term(ys, c.clone());
            }
        }
        out
    }

    /// Right multiplication by `T_s^{-1}`.
    pub fn mul_generator_inverse(&self, s: usize) -> Self {
        let gap = quantum_gap(self.repr.as_ref(), s);
        let mut out = Self::zero(&self.repr);
        for (y, c) in &self.terms {
            let ys = y.mul_generator(s);
            if y.has_right_descent(s) {
                out.add_term(ys, c.clone());
            } else {
                // T_y T_s^{-1} = T_{ys} - (v_s - v_s^{-1}) T_y on ascent.
                out.add_term(ys, c.clone());
                out.add_term(y.clone(), c.mul_ref(&gap).neg_ref());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        if !Arc::ptr_eq(&self.repr, &other.repr) && self.repr.system != other.repr.system {
            return Err(GroupError::SystemMismatch);
        }
        let mut out = Self::zero(&self.repr);
        for (w, d) in &other.terms {
            let mut cur = self.scale(d);
            for &s in w.normal_form() {
                cur = cur.mul_generator(s);
            }
            out = out.add(&cur)?;
        }
        Ok(out)
    }

    /// Inverse of a basis element `T_w` through its reduced word.
    pub fn basis_inverse(w: &GroupElement<S>) -> Self {
        let repr = Arc::clone(w.representation());
        let mut out = Self::one(&repr);
        for &s in w.normal_form().iter().rev() {
            out = out.mul_generator_inverse(s);
        }
        out
    }

    /// Specialization `v -> 1`: the image in the integral group ring.
    pub fn specialize_v1(&self) -> GroupRingElement<S> {
        let mut out = HashMap::new();
        for (w, c) in &self.terms {
            let n = c.eval_at_one();
            if n != BigInt::from(0) {
                out.insert(w.clone(), n);
            }
        }
        out
    }

    /// Terms sorted by (length, canonical word) for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(&GroupElement<S>, &LaurentPoly)> {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(w, _)| (w.length(), w.word_string()));
        items
    }

    /// Canonical rendering: `(coeff) T[word]` terms joined by ` + `.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms()
            .iter()
            .map(|(w, c)| format!("({}) T[{}]", c, w.word_labels().join(",")))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Formal integer combination of group elements, the target of the `v = 1`
/// specialization.
pub type GroupRingElement<S> = HashMap<GroupElement<S>, BigInt>;

pub fn group_ring_mul<S: Scalar>(
    a: &GroupRingElement<S>,
    b: &GroupRingElement<S>,
) -> Result<GroupRingElement<S>, GroupError> {
    let mut out: GroupRingElement<S> = HashMap::new();
    for (x, c) in a {
        for (y, d) in b {
            let xy = x.mul(y)?;
            let e = out.entry(xy).or_insert_with(|| BigInt::from(0));
            *e += c * d;
        }
    }
    out.retain(|_, c| c != &BigInt::from(0));
    Ok(out)
}

/// A Hecke-algebra morphism given by generator images; construction checks
/// each image against the source quadratic relation.
pub struct HeckeMorphism<S: Scalar> {
    pub source: Arc<Representation<S>>,
    pub target: Arc<Representation<S>>,
    pub images: Vec<HeckeElement<S>>,
}

impl<S: Scalar> HeckeMorphism<S> {
    pub fn new(
        source: Arc<Representation<S>>,
        target: Arc<Representation<S>>,
        images: Vec<HeckeElement<S>>,
    ) -> Result<Self, String> {
        let m = Self {
            source,
            target,
            images,
        };
        for s in 0..m.source.rank() {
            if let Some(witness) = m.quadratic_defect(s) {
                return Err(format!(
                    "image of generator {s} violates the quadratic relation: {witness}"
                ));
            }
        }
        Ok(m)
    }

    /// `(img - v_s)(img + v_s^{-1})`, `None` when it vanishes.
    fn quadratic_defect(&self, s: usize) -> Option<String> {
        let img = &self.images[s];
        let v_s = v_param(self.source.as_ref(), s);
        let v_s_inv = LaurentPoly::v_pow(-self.source.system.weight(s));
        let one = HeckeElement::one(&self.target);
        let lhs = img.sub(&one.scale(&v_s)).ok()?;
        let rhs = img.add(&one.scale(&v_s_inv)).ok()?;
        let prod = lhs.mul(&rhs).ok()?;
        if prod.is_zero() {
            None
        } else {
            Some(prod.render())
        }
    }

    /// Map an element by expanding every basis key through its canonical
    /// word.
    pub fn apply(&self, x: &HeckeElement<S>) -> Result<HeckeElement<S>, GroupError> {
        let mut out = HeckeElement::zero(&self.target);
        for (w, c) in x.sorted_terms() {
            let mut cur = HeckeElement::one(&self.target).scale(c);
            for &s in w.normal_form() {
                cur = cur.mul(&self.images[s])?;
            }
            out = out.add(&cur)?;
        }
        Ok(out)
    }
}

/// The contraction embedding at Hecke level: `T'_s -> T_s` away from the
/// edge and `T'_{s_0} -> T_+ T_- T_+^{-1}`.
pub fn contraction_hecke_morphism<S: Scalar>(
    emb: &EdgeEmbedding<S>,
) -> Result<HeckeMorphism<S>, EmbedError> {
    let target = &emb.target;
    let p = emb.contraction.plus_index;
    let m = emb.contraction.minus_index;
    let conj = HeckeElement::generator(target, p)
        .mul(&HeckeElement::generator(target, m))
        .map_err(EmbedError::Group)?
        .mul(&HeckeElement::generator_inverse(target, p))
        .map_err(EmbedError::Group)?;
    let images = emb
        .contraction
        .parent_index
        .iter()
        .map(|&parent| match parent {
            Some(i) => HeckeElement::generator(target, i),
            None => conj.clone(),
        })
        .collect();
    HeckeMorphism::new(Arc::clone(&emb.source), Arc::clone(target), images).map_err(EmbedError::Morphism)
}

/// Quadratic and braid identities for the generator images, plus the proof
/// identity `T_+ T_- T_+^{-1} = T_-^{-1} T_+ T_-`.
pub fn verify_hecke_relations<S: Scalar>(
    emb: &EdgeEmbedding<S>,
    morphism: &HeckeMorphism<S>,
) -> Result<VerificationReport, EmbedError> {
    let mut report = VerificationReport::new();
    let source = &morphism.source;
    let n = source.rank();
    for s in 0..n {
        let defect = morphism.quadratic_defect(s);
        report.record(
            "hecke-quadratic",
            format!("generator={}", source.system.generators[s]),
            defect.is_none(),
            defect,
        );
    }
    for s in 0..n {
        for t in (s + 1)..n {
            let Some(m) = source.system.bond(s, t).finite() else {
                continue;
            };
            let mut lhs = HeckeElement::one(&morphism.target);
            let mut rhs = HeckeElement::one(&morphism.target);
            for i in 0..m {
                let (a, b) = if i % 2 == 0 { (s, t) } else { (t, s) };
                lhs = lhs.mul(&morphism.images[a]).map_err(EmbedError::Group)?;
                rhs = rhs.mul(&morphism.images[b]).map_err(EmbedError::Group)?;
            }
            let ok = lhs == rhs;
            report.record(
                "hecke-braid",
                format!(
                    "pair=({},{}) order={}",
                    source.system.generators[s], source.system.generators[t], m
                ),
                ok,
                Some(format!("lhs {} != rhs {}", lhs.render(), rhs.render())),
            );
        }
    }
    // T_+ T_- T_+^{-1} = T_-^{-1} T_+ T_-.
    let target = &morphism.target;
    let p = emb.contraction.plus_index;
    let mi = emb.contraction.minus_index;
    let lhs = HeckeElement::generator(target, p)
        .mul(&HeckeElement::generator(target, mi))
        .map_err(EmbedError::Group)?
        .mul(&HeckeElement::generator_inverse(target, p))
        .map_err(EmbedError::Group)?;
    let rhs = HeckeElement::generator_inverse(target, mi)
        .mul(&HeckeElement::generator(target, p))
        .map_err(EmbedError::Group)?
        .mul(&HeckeElement::generator(target, mi))
        .map_err(EmbedError::Group)?;
    report.record(
        "hecke-conjugation-identity",
        String::new(),
        lhs == rhs,
        Some(format!("{} != {}", lhs.render(), rhs.render())),
    );
    Ok(report)
}

/// `phi_v(T'_w)` specializes at `v = 1` to the single group element
/// `phi(w)`, for every `w` in the ball.
pub fn verify_specialization<S: Scalar>(
    emb: &EdgeEmbedding<S>,
    morphism: &HeckeMorphism<S>,
    max_length: usize,
) -> Result<VerificationReport, EmbedError> {
    let mut report = VerificationReport::new();
    let b = ball(&emb.source, max_length, DEFAULT_BALL_BUDGET)?;
    let mut ok = true;
    let mut witness = None;
    for w in &b {
        let img = morphism.apply(&HeckeElement::basis(w.clone()))?;
        let spec = img.specialize_v1();
        let expect = emb.apply(w)?;
        let good = spec.len() == 1 && spec.get(&expect).map_or(false, |c| c == &BigInt::from(1));
        if !good {
            ok = false;
            witness = Some(format!("w={}", w.word_string()));
            break;
        }
    }
    report.record(
        "hecke-specialization",
        format!("ball={} size={}", max_length, b.len()),
        ok,
        witness,
    );
    Ok(report)
}

/// Two independent injectivity certificates on a ball: injectivity of the
/// group embedding (the specialization route of the injectivity proof) and
/// full column rank of the image matrix over the fraction field of
/// `Z[v, v^-1]`.
pub fn verify_injectivity<S: Scalar>(
    emb: &EdgeEmbedding<S>,
    morphism: &HeckeMorphism<S>,
    max_length: usize,
) -> Result<VerificationReport, EmbedError> {
    let mut report = VerificationReport::new();
    let b = ball(&emb.source, max_length, DEFAULT_BALL_BUDGET)?;
    // (i) specialization certificate.
    let mut images = Vec::new();
    let mut distinct = true;
    let mut witness = None;
    for w in &b {
        let img = emb.apply(w)?;
        if images.contains(&img) {
            distinct = false;
            witness = Some(format!("w={}", w.word_string()));
        }
        images.push(img);
    }
    report.record(
        "injectivity-specialization-route",
        format!("ball={} size={}", max_length, b.len()),
        distinct,
        witness,
    );
    // (ii) exact rank certificate.
    let hecke_images: Vec<HeckeElement<S>> = b
        .iter()
        .map(|w| morphism.apply(&HeckeElement::basis(w.clone())))
        .collect::<Result<_, _>>()?;
    let mut basis_keys: Vec<GroupElement<S>> = Vec::new();
    {
        let mut seen = HashMap::new();
        for img in &hecke_images {
            for w in img.support() {
                if seen.insert(w.clone(), ()).is_none() {
                    basis_keys.push(w.clone());
                }
            }
        }
    }
    basis_keys.sort_by_key(|w| (w.length(), w.word_string()));
    let matrix: Vec<Vec<LaurentPoly>> = basis_keys
        .iter()
        .map(|key| hecke_images.iter().map(|img| img.coefficient(key)).collect())
        .collect();
    let rank = rank_over_fraction_field(&matrix);
    report.record(
        "injectivity-rank-certificate",
        format!(
            "ball={} columns={} basis_rows={} rank={}",
            max_length,
            b.len(),
            basis_keys.len(),
            rank
        ),
        rank == b.len(),
        Some(format!("rank {} < {}", rank, b.len())),
    );
    Ok(report)
}

/// Conjugation `T_w x T_w^{-1}` by a basis element.
pub fn tau_v<S: Scalar>(
    w: &GroupElement<S>,
    x: &HeckeElement<S>,
) -> Result<HeckeElement<S>, GroupError> {
    HeckeElement::basis(w.clone())
        .mul(x)?
        .mul(&HeckeElement::basis_inverse(w))
}

/// The Hecke conjugation square along a linear branch: conjugating the
/// parabolic subalgebra avoiding the branch tip by `T_{s_{j_1}} ... T_{s_{j_n}}`
/// equals the contraction embedding composed with the relabelling
/// isomorphism, on generators and on a basis ball.
pub fn verify_branch_square_hecke<S: Scalar>(
    emb: &EdgeEmbedding<S>,
    morphism: &HeckeMorphism<S>,
    branch: &BranchSequence,
    max_length: usize,
) -> Result<VerificationReport, EmbedError> {
    let mut report = VerificationReport::new();
    let target = &emb.target;
    let tip = *branch.nodes.last().unwrap();
    let conj = GroupElement::from_word(target, &branch.nodes[1..]);
    let relabel = branch_relabel(&emb.contraction, branch)?;
    for s in 0..target.rank() {
        if s == tip {
            continue;
        }
        let lhs = tau_v(&conj, &HeckeElement::generator(target, s)).map_err(EmbedError::Group)?;
        let mapped = relabel[s].expect("non-tip generator");
        let rhs = morphism.apply(&HeckeElement::generator(&emb.source, mapped))?;
        report.record(
            "hecke-branch-square-generator",
            format!("generator={}", target.system.generators[s]),
            lhs == rhs,
            Some(format!("{} != {}", lhs.render(), rhs.render())),
        );
    }
    let sub_ball = parabolic_ball(target, tip, max_length)?;
    let mut ok = true;
    let mut witness = None;
    for (w, word) in &sub_ball {
        let lhs = tau_v(&conj, &HeckeElement::basis(w.clone())).map_err(EmbedError::Group)?;
        let mut mapped = HeckeElement::one(&emb.source);
        for &s in word {
            mapped = mapped
                .mul(&HeckeElement::generator(&emb.source, relabel[s].expect("non-tip")))
                .map_err(EmbedError::Group)?;
        }
        let rhs = morphism.apply(&mapped)?;
        if lhs != rhs {
            ok = false;
            witness = Some(format!("w={}", w.word_string()));
            break;
        }
    }
    report.record(
        "hecke-branch-square-ball",
        format!("ball={} size={}", max_length, sub_ball.len()),
        ok,
        witness,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmatrix::KMatrix;
    use crate::system::{CoxeterSystem, Edge};

    fn a2_repr() -> Arc<Representation<i64>> {
        let sys = CoxeterSystem::type_a(2);
        let k = KMatrix::crystallographic(&sys).unwrap();
        Representation::new(sys, k)
    }

    fn a3_embedding() -> EdgeEmbedding<i64> {
        let sys = CoxeterSystem::type_a(3);
        let k = KMatrix::crystallographic(&sys).unwrap();
        EdgeEmbedding::new(&sys, &Edge::new("2", "1"), k).unwrap()
    }

    #[test]
    fn quadratic_rule() {
        // T_s T_s = 1 + (v_s - v_s^-1) T_s
        let r = a2_repr();
        let t = HeckeElement::generator(&r, 0);
        let got = t.mul(&t).unwrap();
        let mut want = HeckeElement::one(&r);
        want = want
            .add(&t.scale(&LaurentPoly::v_minus_vinv()))
            .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn length_additive_products() {
        let r = a2_repr();
        let t1 = HeckeElement::generator(&r, 0);
        let t2 = HeckeElement::generator(&r, 1);
        let t12 = t1.mul(&t2).unwrap();
        assert_eq!(t12, HeckeElement::basis(GroupElement::from_word(&r, &[0, 1])));
    }

    #[test]
    fn descent_case_from_rewriting_oracle() {
        // T_{121} T_1 = T_{12} + (v - v^-1) T_{121}; oracle: apply the
        // quadratic rule once to the last letter.
        let r = a2_repr();
        let t121 = HeckeElement::basis(GroupElement::from_word(&r, &[0, 1, 0]));
        let got = t121.mul_generator(0);
        let mut want = HeckeElement::basis(GroupElement::from_word(&r, &[0, 1]));
        want = want
            .add(&t121.scale(&LaurentPoly::v_minus_vinv()))
            .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn generator_inverse_really_inverts() {
        let r = a2_repr();
        for s in 0..2 {
            let prod = HeckeElement::generator_inverse(&r, s)
                .mul(&HeckeElement::generator(&r, s))
                .unwrap();
            assert_eq!(prod, HeckeElement::one(&r));
        }
        // (T_1 T_2)^{-1} = T_2^{-1} T_1^{-1}, by multiply-back.
        let t12 = HeckeElement::generator(&r, 0).mul(&HeckeElement::generator(&r, 1)).unwrap();
        let inv = HeckeElement::generator_inverse(&r, 1)
            .mul(&HeckeElement::generator_inverse(&r, 0))
            .unwrap();
        assert_eq!(t12.mul(&inv).unwrap(), HeckeElement::one(&r));
    }

    #[test]
    fn unequal_parameter_quadratic() {
        // B2 with L(1) = 1, L(2) = 2: T_2^2 = 1 + (v^2 - v^-2) T_2.
        let sys = CoxeterSystem::dihedral(Some(4))
            .with_weights([("1".to_string(), 1), ("2".to_string(), 2)]);
        let k = KMatrix::crystallographic(&sys).unwrap();
        let r = Representation::new(sys, k);
        let t2 = HeckeElement::generator(&r, 1);
        let got = t2.mul(&t2).unwrap();
        let gap = LaurentPoly::v_pow(2).sub_ref(&LaurentPoly::v_pow(-2));
        let want = HeckeElement::one(&r).add(&t2.scale(&gap)).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn t_w_is_independent_of_reduced_word() {
        // Enumerate all reduced words of each ball element by brute force and
        // compare the generator products.
        let sys = CoxeterSystem::type_b3();
        let k = KMatrix::crystallographic(&sys).unwrap();
        let r = Representation::new(sys, k);
        let b = ball(&r, 5, 10_000).unwrap();
        for w in &b {
            let len = w.length();
            // All words of this length equal to w:
            let mut words = vec![vec![]];
            for _ in 0..len {
                let mut next = Vec::new();
                for word in &words {
                    for s in 0..3 {
                        let mut cand = word.clone();
                        cand.push(s);
                        next.push(cand);
                    }
                }
                words = next;
            }
            let mut reference: Option<HeckeElement<i64>> = None;
            let mut count = 0;
            for word in &words {
                if &GroupElement::from_word(&r, word) != w {
                    continue;
                }
                count += 1;
                let mut prod = HeckeElement::one(&r);
                for &s in word {
                    prod = prod.mul_generator(s);
                }
                match &reference {
                    None => reference = Some(prod),
                    Some(p) => assert_eq!(p, &prod, "words of {:?} disagree", w.word_string()),
                }
            }
            assert!(count >= 1);
        }
    }

    #[test]
    fn associativity_randomized() {
        use rand::{Rng, SeedableRng};
        let r = a2_repr();
        let b = ball(&r, 3, 100).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let random_elt = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut x = HeckeElement::zero(&r);
            for _ in 0..rng.gen_range(1..=3) {
                let w = &b[rng.gen_range(0..b.len())];
                let c = LaurentPoly::from_terms([(rng.gen_range(-2..=2i64), rng.gen_range(-3..=3i64))]);
                x = x.add(&HeckeElement::basis(w.clone()).scale(&c)).unwrap();
            }
            x
        };
        for _ in 0..200 {
            let a = random_elt(&mut rng);
            let b2 = random_elt(&mut rng);
            let c = random_elt(&mut rng);
            let lhs = a.mul(&b2).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b2.mul(&c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn contraction_morphism_images() {
        // phi_v(T'_{s_0}) = T_{+-+} + (v^-1 - v) T_{+-} at equal parameters,
        // from expanding T_+ T_- T_+^{-1}.
        let emb = a3_embedding();
        let m = contraction_hecke_morphism(&emb).unwrap();
        let merged = emb.contraction.merged_index;
        let img = &m.images[merged];
        let t_pmp = GroupElement::from_word(&emb.target, &[1, 0, 1]);
        let t_pm = GroupElement::from_word(&emb.target, &[1, 0]);
        assert_eq!(img.coefficient(&t_pmp), LaurentPoly::one());
        assert_eq!(img.coefficient(&t_pm), -LaurentPoly::v_minus_vinv());
        assert_eq!(img.num_terms(), 2);
        // phi_v(1) = 1
        let one = HeckeElement::one(&emb.source);
        assert_eq!(m.apply(&one).unwrap(), HeckeElement::one(&emb.target));
    }

    #[test]
    fn relations_and_negative_control() {
        let emb = a3_embedding();
        let m = contraction_hecke_morphism(&emb).unwrap();
        let report = verify_hecke_relations(&emb, &m).unwrap();
        assert!(report.passed(), "{report}");
        // Corrupted image T_+ T_- fails the quadratic check with a witness.
        let bad_img = HeckeElement::generator(&emb.target, 1)
            .mul(&HeckeElement::generator(&emb.target, 0))
            .unwrap();
        let mut images: Vec<HeckeElement<i64>> = m.images.clone();
        images[emb.contraction.merged_index] = bad_img;
        let err = HeckeMorphism::new(Arc::clone(&emb.source), Arc::clone(&emb.target), images);
        assert!(err.is_err());
    }

    #[test]
    fn b3_braid_of_order_four() {
        let sys = CoxeterSystem::type_b3();
        let k = KMatrix::crystallographic(&sys).unwrap();
        let emb = EdgeEmbedding::new(&sys, &Edge::new("1", "2"), k).unwrap();
        let m = contraction_hecke_morphism(&emb).unwrap();
        let report = verify_hecke_relations(&emb, &m).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn specialization_examples() {
        let emb = a3_embedding();
        let m = contraction_hecke_morphism(&emb).unwrap();
        let report = verify_specialization(&emb, &m, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn injectivity_a3_full_group() {
        let emb = a3_embedding();
        let m = contraction_hecke_morphism(&emb).unwrap();
        let report = verify_injectivity(&emb, &m, 3).unwrap();
        assert!(report.passed(), "{report}");
        // rank equals |S_3| = 6 on the full contracted group
        let rank_check = report
            .checks
            .iter()
            .find(|c| c.name == "injectivity-rank-certificate")
            .unwrap();
        assert!(rank_check.parameters.contains("columns=6"));
    }

    #[test]
    fn injectivity_trivial_ball() {
        let emb = a3_embedding();
        let m = contraction_hecke_morphism(&emb).unwrap();
        let report = verify_injectivity(&emb, &m, 0).unwrap();
        assert!(report.passed(), "{report}");
        let rank_check = report
            .checks
            .iter()
            .find(|c| c.name == "injectivity-rank-certificate")
            .unwrap();
        assert!(rank_check.parameters.contains("rank=1"));
    }

    #[test]
    fn tau_v_identities() {
        let emb = a3_embedding();
        let r = &emb.target;
        // tau_w(1) = 1
        let w = GroupElement::from_word(r, &[1, 2]);
        assert_eq!(tau_v(&w, &HeckeElement::one(r)).unwrap(), HeckeElement::one(r));
        // A2 branch n=1 case inside A3: T_2 T_1 T_2^{-1} = phi_v(T'_{s0}),
        // equality via the conjugation identity.
        let m = contraction_hecke_morphism(&emb).unwrap();
        let merged = emb.contraction.merged_index;
        let lhs = tau_v(
            &GroupElement::generator(r, 1),
            &HeckeElement::generator(r, 0),
        )
        .unwrap();
        assert_eq!(lhs, m.images[merged]);
    }

    #[test]
    fn branch_square_hecke_a3() {
        let sys = CoxeterSystem::type_a(3);
        let k = KMatrix::crystallographic(&sys).unwrap();
        let emb = EdgeEmbedding::new(&sys, &Edge::new("2", "1"), k).unwrap();
        let branch = sys.find_linear_branch(&Edge::new("2", "1")).unwrap().unwrap();
        let m = contraction_hecke_morphism(&emb).unwrap();
        let report = verify_branch_square_hecke(&emb, &m, &branch, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn phi_v_is_multiplicative_on_samples() {
        use rand::{Rng, SeedableRng};
        let emb = a3_embedding();
        let m = contraction_hecke_morphism(&emb).unwrap();
        let b = ball(&emb.source, 3, 100).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            let x = HeckeElement::basis(b[rng.gen_range(0..b.len())].clone());
            let y = HeckeElement::basis(b[rng.gen_range(0..b.len())].clone());
            let lhs = m.apply(&x.mul(&y).unwrap()).unwrap();
            let rhs = m.apply(&x).unwrap().mul(&m.apply(&y).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn specialization_is_ring_hom() {
        use rand::{Rng, SeedableRng};
        let r = a2_repr();
        let b = ball(&r, 3, 100).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let x = HeckeElement::basis(b[rng.gen_range(0..b.len())].clone())
                .scale(&LaurentPoly::from_terms([(1, 1), (0, -2)]));
            let y = HeckeElement::basis(b[rng.gen_range(0..b.len())].clone())
                .scale(&LaurentPoly::from_terms([(-1, 3)]));
            let lhs = x.mul(&y).unwrap().specialize_v1();
            let rhs = group_ring_mul(&x.specialize_v1(), &y.specialize_v1()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn render_format() {
        let r = a2_repr();
        let x = HeckeElement::generator(&r, 1)
            .scale(&LaurentPoly::v_minus_vinv())
            .add(&HeckeElement::one(&r))
            .unwrap();
        assert_eq!(x.render(), "(1) T[] + (-v^-1 + v) T[2]");
    }
}
