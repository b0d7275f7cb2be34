//! The affine Weyl group as a semidirect product: integer lattice points
//! paired with finite group elements, multiplied by
//! `(lambda, w)(mu, u) = (lambda + w.mu, wu)`, and its embedding under edge
//! contraction, `(lambda, w) -> (lift(lambda), phi(w))`.
//!
//! Requires the integer (crystallographic) backend so that the lattice is
//! stable under the finite action.

use rand::{Rng, SeedableRng};

use crate::embed::{EdgeEmbedding, EmbedError};
use crate::group::GroupElement;
use crate::monomial::Monomial;
use crate::report::VerificationReport;

/// An element of the affine Weyl group: a lattice translation plus a finite
/// part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineElement {
    pub translation: Monomial,
    pub finite: GroupElement<i64>,
}

impl AffineElement {
    pub fn new(translation: Monomial, finite: GroupElement<i64>) -> Self {
        Self { translation, finite }
    }

    pub fn identity_of(finite: &GroupElement<i64>) -> Self {
        Self {
            translation: Monomial::unit(),
            finite: GroupElement::identity(finite.representation()),
        }
    }

    /// `(lambda, w)(mu, u) = (lambda + w.mu, wu)`.
    pub fn mul(&self, other: &Self) -> Result<Self, EmbedError> {
        let acted = act_on_lattice(&self.finite, &other.translation);
        Ok(Self {
            translation: self.translation.mul(&acted),
            finite: self.finite.mul(&other.finite).map_err(EmbedError::Group)?,
        })
    }

    pub fn inverse(&self) -> Self {
        let w_inv = self.finite.inverse();
        let acted = act_on_lattice(&w_inv, &self.translation);
        Self {
            translation: acted.inv(),
            finite: w_inv,
        }
    }
}

/// Apply the finite part to a lattice point through the integer matrix.
pub fn act_on_lattice(w: &GroupElement<i64>, lambda: &Monomial) -> Monomial {
    let n = w.representation().rank();
    let dense = lambda.dense(n);
    let image = w.matrix().apply(&dense);
    Monomial::from_dense(&image)
}

/// Lift a contracted lattice point through `alpha_0 -> alpha_+ + alpha_-`.
pub fn lift_translation(emb: &EdgeEmbedding<i64>, lambda: &Monomial) -> Monomial {
    let mut out = Monomial::unit();
    for (a, e) in lambda.iter() {
        match emb.contraction.parent_index[a] {
            Some(i) => out = out.mul(&Monomial::var(i).pow(e)),
            None => {
                out = out.mul(&Monomial::var(emb.contraction.plus_index).pow(e));
                out = out.mul(&Monomial::var(emb.contraction.minus_index).pow(e));
            }
        }
    }
    out
}

/// The affine embedding `(lambda, w) -> (lift(lambda), phi(w))`.
pub fn affine_embed(emb: &EdgeEmbedding<i64>, x: &AffineElement) -> Result<AffineElement, EmbedError> {
    Ok(AffineElement {
        translation: lift_translation(emb, &x.translation),
        finite: emb.apply(&x.finite)?,
    })
}

/// Homomorphism and injectivity checks for the affine embedding on seeded
/// random samples.
pub fn verify_affine_embedding(
    emb: &EdgeEmbedding<i64>,
    samples: usize,
    max_word: usize,
    seed: u64,
) -> Result<VerificationReport, EmbedError> {
    let mut report = VerificationReport::with_seed(seed);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = emb.source.rank();
    let random_element = |rng: &mut rand_chacha::ChaCha8Rng| -> AffineElement {
        let len = rng.gen_range(0..=max_word);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let lambda = Monomial::from_pairs((0..n).map(|i| (i, rng.gen_range(-3..=3))));
        AffineElement::new(lambda, GroupElement::from_word(&emb.source, &word))
    };
    // Zero-translation case reduces to the finite embedding.
    let w = GroupElement::from_word(&emb.source, &[0]);
    let x = AffineElement::new(Monomial::unit(), w.clone());
    let img = affine_embed(emb, &x)?;
    report.record(
        "affine-zero-translation",
        String::new(),
        img.translation.is_unit() && img.finite == emb.apply(&w)?,
        None,
    );
    // Semidirect-product identity on the merged generator:
    // phi((alpha_0, 1)) phi((0, s_0)) = phi((alpha_0, s_0)).
    let merged = emb.contraction.merged_index;
    let t = AffineElement::new(
        Monomial::var(merged),
        GroupElement::identity(&emb.source),
    );
    let s0 = AffineElement::new(
        Monomial::unit(),
        GroupElement::generator(&emb.source, merged),
    );
    let lhs = affine_embed(emb, &t)?.mul(&affine_embed(emb, &s0)?)?;
    let rhs = affine_embed(emb, &t.mul(&s0)?)?;
    report.record("affine-merged-product", String::new(), lhs == rhs, None);
    // Randomized homomorphism identity.
    let mut hom_ok = true;
    let mut hom_witness = None;
    let mut pool = Vec::new();
    for _ in 0..samples {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        let lhs = affine_embed(emb, &a.mul(&b)?)?;
        let rhs = affine_embed(emb, &a)?.mul(&affine_embed(emb, &b)?)?;
        if lhs != rhs {
            hom_ok = false;
            hom_witness = Some(format!("a=({:?},{}), b=({:?},{})",
                a.translation, a.finite.word_string(), b.translation, b.finite.word_string()));
            break;
        }
        pool.push(a);
        pool.push(b);
    }
    report.record(
        "affine-homomorphism",
        format!("samples={samples} max_word={max_word}"),
        hom_ok,
        hom_witness,
    );
    // Injectivity on the sampled set: distinct inputs get distinct images.
    let mut inj_ok = true;
    let mut inj_witness = None;
    let mut images: Vec<(AffineElement, AffineElement)> = Vec::new();
    'inj: for x in &pool {
        let img = affine_embed(emb, x)?;
        for (y, y_img) in &images {
            if &img == y_img && x != y {
                inj_ok = false;
                inj_witness = Some(format!("{:?} and {:?} collide", x.translation, y.translation));
                break 'inj;
            }
        }
        images.push((x.clone(), img));
    }
    report.record(
        "affine-injectivity",
        format!("samples={}", pool.len()),
        inj_ok,
        inj_witness,
    );
    // Inverses round-trip.
    let mut inv_ok = true;
    for x in pool.iter().take(20) {
        let prod = x.mul(&x.inverse())?;
        if !(prod.translation.is_unit() && prod.finite.is_identity()) {
            inv_ok = false;
            break;
        }
    }
    report.record("affine-inverse", String::new(), inv_ok, None);
    Ok(report)
}
