//! The rotation (Iwahori-Matsumoto style) presentation: basis `T_f` over
//! extended affine permutations, length-based multiplication, and the
//! rank-raising embedding `T_rho -> T^{-1}_{i_+} T_rho`.

use std::collections::HashMap;

use crate::laurent::LaurentPoly;
use crate::report::VerificationReport;

use super::perm::AffPerm;
use super::AffineAError;

/// Element of the extended affine Hecke algebra of type A, rank `r`.
#[derive(Clone)]
pub struct ExtHeckeElement {
    rank: usize,
    terms: HashMap<AffPerm, LaurentPoly>,
}

impl PartialEq for ExtHeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.terms == other.terms
    }
}

impl Eq for ExtHeckeElement {}

impl std::fmt::Debug for ExtHeckeElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn gap() -> LaurentPoly {
    LaurentPoly::v_minus_vinv()
}

impl ExtHeckeElement {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: HashMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::basis(AffPerm::identity(rank))
    }

    pub fn basis(f: AffPerm) -> Self {
        let rank = f.rank();
        let mut terms = HashMap::new();
        terms.insert(f, LaurentPoly::one());
        Self { rank, terms }
    }

    /// `T_i` for `i` in `1..=rank` (`i = rank` is the affine generator).
    pub fn generator(rank: usize, i: usize) -> Result<Self, AffineAError> {
        if i < 1 || i > rank {
            return Err(AffineAError::IndexOutOfRange(i, rank));
        }
        Ok(Self::basis(AffPerm::simple(rank, i)))
    }

    /// `T_i^{-1} = T_i + v^{-1} - v`.
    pub fn generator_inverse(rank: usize, i: usize) -> Result<Self, AffineAError> {
        let mut out = Self::generator(rank, i)?;
        out.add_term(AffPerm::identity(rank), gap().neg_ref());
        Ok(out)
    }

    /// `T_rho^k` (a basis element for every integer `k`).
    pub fn rotation_power(rank: usize, k: i64) -> Self {
        Self::basis(AffPerm::identity(rank).mul_rotation(k))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, f: &AffPerm) -> LaurentPoly {
        self.terms.get(f).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &AffPerm> {
        self.terms.keys()
    }

    fn add_term(&mut self, f: AffPerm, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(f) {
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

    pub fn add(&self, other: &Self) -> Result<Self, AffineAError> {
        if self.rank != other.rank {
            return Err(AffineAError::RankMismatch);
        }
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term(f.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AffineAError> {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(f, x)| (f.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    /// Right multiplication by `T_i`.
    pub fn mul_generator(&self, i: usize) -> Self {
        let mut out = Self::zero(self.rank);
        for (f, c) in &self.terms {
            let fs = f.mul_simple(i);
            if f.has_right_descent(i) {
                out.add_term(fs, c.clone());
                out.add_term(f.clone(), c.mul_ref(&gap()));
            } else {
                out.add_term(fs, c.clone());
            }
        }
        out
    }

    /// Right multiplication by `T_i^{-1}`.
    pub fn mul_generator_inverse(&self, i: usize) -> Self {
        let mut out = Self::zero(self.rank);
        for (f, c) in &self.terms {
            let fs = f.mul_simple(i);
            if f.has_right_descent(i) {
                out.add_term(fs, c.clone());
            } else {
                out.add_term(fs, c.clone());
                out.add_term(f.clone(), c.mul_ref(&gap()).neg_ref());
            }
        }
        out
    }

    /// Right multiplication by `T_rho^k`, a basis permutation.
    pub fn mul_rotation(&self, k: i64) -> Self {
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (f.mul_rotation(k), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AffineAError> {
        if self.rank != other.rank {
            return Err(AffineAError::RankMismatch);
        }
        let mut out = Self::zero(self.rank);
        for (g, d) in &other.terms {
            let (word, k) = g.canonical_decomposition();
            let mut cur = self.scale(d);
            for &i in &word {
                cur = cur.mul_generator(i);
            }
            cur = cur.mul_rotation(k);
            out = out.add(&cur)?;
        }
        Ok(out)
    }

    pub fn sorted_terms(&self) -> Vec<(&AffPerm, &LaurentPoly)> {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(f, _)| (f.length(), f.shift(), f.window().to_vec()));
        items
    }

    /// `(coeff) T[window]` form.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms()
            .iter()
            .map(|(f, c)| format!("({}) T{}", c, f.render()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The rank-raising embedding in the rotation presentation, attached to the
/// merged pair `(i_-, i_+ = i_- + 1)`.
pub struct ExtendedEmbedding {
    pub source_rank: usize,
    pub i_minus: usize,
    /// Images of `T_1 ... T_r` (index 0-based by generator).
    images: Vec<ExtHeckeElement>,
    image_rotation: ExtHeckeElement,
    image_rotation_inverse: ExtHeckeElement,
}

impl ExtendedEmbedding {
    pub fn new(source_rank: usize, i_minus: usize) -> Result<Self, AffineAError> {
        if source_rank < 3 {
            return Err(AffineAError::RankTooSmall(source_rank));
        }
        if i_minus < 1 || i_minus > source_rank {
            return Err(AffineAError::IndexOutOfRange(i_minus, source_rank));
        }
        let r1 = source_rank + 1;
        let i_plus = i_minus + 1;
        let mut images = Vec::new();
        for i in 1..=source_rank {
            let img = if i < i_minus {
                ExtHeckeElement::generator(r1, i)?
            } else if i == i_minus {
                ExtHeckeElement::generator(r1, i_minus)?
                    .mul(&ExtHeckeElement::generator(r1, i_plus)?)?
                    .mul(&ExtHeckeElement::generator_inverse(r1, i_minus)?)?
            } else {
                ExtHeckeElement::generator(r1, i + 1)?
            };
            images.push(img);
        }
        let image_rotation = ExtHeckeElement::generator_inverse(r1, i_plus)?
            .mul(&ExtHeckeElement::rotation_power(r1, 1))?;
        let image_rotation_inverse = ExtHeckeElement::rotation_power(r1, -1)
            .mul(&ExtHeckeElement::generator(r1, i_plus)?)?;
        Ok(Self {
            source_rank,
            i_minus,
            images,
            image_rotation,
            image_rotation_inverse,
        })
    }

    pub fn target_rank(&self) -> usize {
        self.source_rank + 1
    }

    pub fn image_of_generator(&self, i: usize) -> Result<&ExtHeckeElement, AffineAError> {
        self.images
            .get(i.wrapping_sub(1))
            .ok_or(AffineAError::IndexOutOfRange(i, self.source_rank))
    }

    pub fn image_of_rotation(&self) -> &ExtHeckeElement {
        &self.image_rotation
    }

    pub fn apply(&self, x: &ExtHeckeElement) -> Result<ExtHeckeElement, AffineAError> {
        if x.rank() != self.source_rank {
            return Err(AffineAError::RankMismatch);
        }
        let mut out = ExtHeckeElement::zero(self.target_rank());
        for (f, c) in &x.terms {
            let (word, k) = f.canonical_decomposition();
            let mut cur = ExtHeckeElement::one(self.target_rank()).scale(c);
            for &i in &word {
                cur = cur.mul(&self.images[i - 1])?;
            }
            let rho_img = if k >= 0 {
                &self.image_rotation
            } else {
                &self.image_rotation_inverse
            };
            for _ in 0..k.unsigned_abs() {
                cur = cur.mul(rho_img)?;
            }
            out = out.add(&cur)?;
        }
        Ok(out)
    }
}

/// Re-run all five defining relation families on the embedding's generator
/// images, exactly.
pub fn verify_im_embedding_relations(
    source_rank: usize,
    i_minus: usize,
) -> Result<VerificationReport, AffineAError> {
    let emb = ExtendedEmbedding::new(source_rank, i_minus)?;
    let r = source_rank;
    let r1 = emb.target_rank();
    let mut report = VerificationReport::new();
    let params = |extra: &str| format!("r={r} i_minus={i_minus} {extra}");
    // (1) quadratic
    for i in 1..=r {
        let img = emb.image_of_generator(i)?;
        let one = ExtHeckeElement::one(r1);
        let lhs = img.sub(&one.scale(&LaurentPoly::v_pow(1)))?;
        let rhs = img.add(&one.scale(&LaurentPoly::v_pow(-1)))?;
        let prod = lhs.mul(&rhs)?;
        report.record(
            "im-quadratic",
            params(&format!("i={i}")),
            prod.is_zero(),
            Some(prod.render()),
        );
    }
    // (2) braid on cyclically adjacent pairs, (3) commutation otherwise
    for i in 1..=r {
        for j in (i + 1)..=r {
            let d = (j - i) % r;
            let adjacent = d == 1 || d == r - 1;
            let a = emb.image_of_generator(i)?;
            let b = emb.image_of_generator(j)?;
            if adjacent {
                let lhs = a.mul(b)?.mul(a)?;
                let rhs = b.mul(a)?.mul(b)?;
                report.record(
                    "im-braid",
                    params(&format!("pair=({i},{j})")),
                    lhs == rhs,
                    Some(format!("{} != {}", lhs.render(), rhs.render())),
                );
            } else {
                let lhs = a.mul(b)?;
                let rhs = b.mul(a)?;
                report.record(
                    "im-commute",
                    params(&format!("pair=({i},{j})")),
                    lhs == rhs,
                    Some(format!("{} != {}", lhs.render(), rhs.render())),
                );
            }
        }
    }
    // (4) rotation relation: rho T_i = T_{i+1} rho, cyclically.
    for i in 1..=r {
        let next = if i == r { 1 } else { i + 1 };
        let lhs = emb.image_of_rotation().mul(emb.image_of_generator(i)?)?;
        let rhs = emb.image_of_generator(next)?.mul(emb.image_of_rotation())?;
        report.record(
            "im-rotation",
            params(&format!("i={i}")),
            lhs == rhs,
            Some(format!("{} != {}", lhs.render(), rhs.render())),
        );
    }
    // (5) invertibility of the rotation image.
    let prod_a = emb.image_rotation.mul(&emb.image_rotation_inverse)?;
    let prod_b = emb.image_rotation_inverse.mul(&emb.image_rotation)?;
    report.record(
        "im-rotation-invertible",
        params(""),
        prod_a == ExtHeckeElement::one(r1) && prod_b == ExtHeckeElement::one(r1),
        Some(format!("{} and {}", prod_a.render(), prod_b.render())),
    );
    Ok(report)
}

/// Ball of the shift-zero (non-extended) part up to the given length.
pub fn affine_weyl_ball(rank: usize, max_length: usize) -> Vec<AffPerm> {
    let mut seen: HashMap<AffPerm, ()> = HashMap::new();
    let id = AffPerm::identity(rank);
    seen.insert(id.clone(), ());
    let mut out = vec![id.clone()];
    let mut frontier = vec![id];
    for _ in 1..=max_length {
        let mut next = Vec::new();
        for f in &frontier {
            for i in 1..=rank {
                let fs = f.mul_simple(i);
                if !seen.contains_key(&fs) {
                    seen.insert(fs.clone(), ());
                    next.push(fs);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::rank_at_specialization;

    #[test]
    fn rotation_relation_in_the_algebra() {
        // T_rho T_i = T_{i+1} T_rho as elements, all i, r = 3 and 4.
        for r in [3usize, 4] {
            let rho = ExtHeckeElement::rotation_power(r, 1);
            for i in 1..=r {
                let next = if i == r { 1 } else { i + 1 };
                let lhs = rho.mul(&ExtHeckeElement::generator(r, i).unwrap()).unwrap();
                let rhs = ExtHeckeElement::generator(r, next)
                    .unwrap()
                    .mul(&rho)
                    .unwrap();
                assert_eq!(lhs, rhs, "r={r} i={i}");
            }
        }
    }

    #[test]
    fn quadratic_rule_in_the_algebra() {
        let r = 3;
        for i in 1..=r {
            let t = ExtHeckeElement::generator(r, i).unwrap();
            let got = t.mul(&t).unwrap();
            let want = ExtHeckeElement::one(r)
                .add(&t.scale(&LaurentPoly::v_minus_vinv()))
                .unwrap();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn rotation_power_r_is_central() {
        let r = 3;
        let rho_r = ExtHeckeElement::rotation_power(r, r as i64);
        for i in 1..=r {
            let t = ExtHeckeElement::generator(r, i).unwrap();
            assert_eq!(rho_r.mul(&t).unwrap(), t.mul(&rho_r).unwrap());
        }
    }

    #[test]
    fn generator_inverse_inverts() {
        let r = 3;
        for i in 1..=r {
            let prod = ExtHeckeElement::generator_inverse(r, i)
                .unwrap()
                .mul(&ExtHeckeElement::generator(r, i).unwrap())
                .unwrap();
            assert_eq!(prod, ExtHeckeElement::one(r));
        }
    }

    #[test]
    fn associativity_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for r in [3usize, 4] {
            let pool = affine_weyl_ball(r, 3);
            let mut random_elt = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut x = ExtHeckeElement::zero(r);
                for _ in 0..rng.gen_range(1..=2) {
                    let f = pool[rng.gen_range(0..pool.len())]
                        .mul_rotation(rng.gen_range(-1..=1));
                    let c = LaurentPoly::from_terms([(rng.gen_range(-2..=2i64), rng.gen_range(-2..=2i64))]);
                    x = x.add(&ExtHeckeElement::basis(f).scale(&c)).unwrap();
                }
                x
            };
            for _ in 0..100 {
                let a = random_elt(&mut rng);
                let b = random_elt(&mut rng);
                let c = random_elt(&mut rng);
                let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
                let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "rank {r}");
            }
        }
    }

    #[test]
    fn embedding_relations_hold_for_all_cut_points() {
        for r in [3usize, 4] {
            for i_minus in 1..=r {
                let report = verify_im_embedding_relations(r, i_minus).unwrap();
                assert!(report.passed(), "r={r} i_minus={i_minus}:\n{report}");
            }
        }
    }

    #[test]
    fn embedding_on_rotation_times_generator() {
        // phi(T_rho T_{i_-}) = phi(T_{i_+} T_rho) as elements; the proof's
        // middle case.
        let r = 3;
        for i_minus in 1..=r - 1 {
            let emb = ExtendedEmbedding::new(r, i_minus).unwrap();
            let lhs = emb
                .apply(
                    &ExtHeckeElement::rotation_power(r, 1)
                        .mul(&ExtHeckeElement::generator(r, i_minus).unwrap())
                        .unwrap(),
                )
                .unwrap();
            let rhs = emb
                .apply(
                    &ExtHeckeElement::generator(r, i_minus + 1)
                        .unwrap()
                        .mul(&ExtHeckeElement::rotation_power(r, 1))
                        .unwrap(),
                )
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn embedding_identity_and_homomorphism_samples() {
        use rand::{Rng, SeedableRng};
        let r = 3;
        let emb = ExtendedEmbedding::new(r, 2).unwrap();
        assert_eq!(
            emb.apply(&ExtHeckeElement::one(r)).unwrap(),
            ExtHeckeElement::one(r + 1)
        );
        let pool = affine_weyl_ball(r, 3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let a = ExtHeckeElement::basis(
                pool[rng.gen_range(0..pool.len())].mul_rotation(rng.gen_range(-1..=1)),
            );
            let b = ExtHeckeElement::basis(
                pool[rng.gen_range(0..pool.len())].mul_rotation(rng.gen_range(-1..=1)),
            );
            let lhs = emb.apply(&a.mul(&b).unwrap()).unwrap();
            let rhs = emb.apply(&a).unwrap().mul(&emb.apply(&b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn embedding_injective_on_truncation() {
        // Images of T_u T_rho^k for ell(u) <= 4, |k| <= 2, r = 3 are linearly
        // independent; certified by full column rank after specializing v,
        // which can only lower the rank.
        let r = 3;
        let emb = ExtendedEmbedding::new(r, 1).unwrap();
        let mut columns: Vec<ExtHeckeElement> = Vec::new();
        for u in affine_weyl_ball(r, 4) {
            for k in -2i64..=2 {
                let f = u.mul_rotation(k);
                columns.push(emb.apply(&ExtHeckeElement::basis(f)).unwrap());
            }
        }
        let mut keys: Vec<AffPerm> = Vec::new();
        {
            let mut seen = HashMap::new();
            for col in &columns {
                for f in col.support() {
                    if seen.insert(f.clone(), ()).is_none() {
                        keys.push(f.clone());
                    }
                }
            }
        }
        keys.sort_by_key(|f| (f.length(), f.shift(), f.window().to_vec()));
        let matrix: Vec<Vec<LaurentPoly>> = keys
            .iter()
            .map(|key| columns.iter().map(|col| col.coefficient(key)).collect())
            .collect();
        let rank = rank_at_specialization(&matrix, 2, 1);
        assert_eq!(rank, columns.len(), "rank {} of {} columns", rank, columns.len());
    }

    #[test]
    fn render_window_notation() {
        let x = ExtHeckeElement::rotation_power(3, 1);
        assert_eq!(x.render(), "(1) T[2,3,4]");
    }
}
