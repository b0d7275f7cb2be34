//! The commuting-generator (Bernstein-Lusztig style) presentation: basis
//! `X^a T_w` over lattice monomials and finite permutations, native
//! multiplication through the geometric-quotient commutation rule, the
//! explicit isomorphism with the rotation presentation, the rank-raising
//! embedding in this presentation, and the exact audit of the displayed
//! `X_j X_{j+1}^{-1}` product formulas.

use std::collections::HashMap;

use crate::laurent::LaurentPoly;
use crate::monomial::{geometric_quotient, Monomial};
use crate::report::VerificationReport;

use super::im::{ExtHeckeElement, ExtendedEmbedding};
use super::perm::FinPerm;
use super::AffineAError;

fn gap() -> LaurentPoly {
    LaurentPoly::v_minus_vinv()
}

/// `X_j` as a lattice point (1-based index).
fn x_var(j: usize) -> Monomial {
    Monomial::var(j - 1)
}

/// Direction so that the commutation denominator is `1 - X_i X_{i+1}^{-1}`.
fn direction(i: usize) -> Monomial {
    Monomial::from_pairs([(i - 1, -1), (i, 1)])
}

/// The swap action of `s_i` on exponent vectors.
fn swap_action(b: &Monomial, i: usize) -> Monomial {
    let lo = b.exponent(i - 1);
    let hi = b.exponent(i);
    b.mul(&Monomial::from_pairs([(i - 1, hi - lo), (i, lo - hi)]))
}

/// Element in the `X^a T_w` normal form, rank `r`.
#[derive(Clone)]
pub struct BLElement {
    rank: usize,
    terms: HashMap<(Monomial, FinPerm), LaurentPoly>,
}

impl PartialEq for BLElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.terms == other.terms
    }
}

impl Eq for BLElement {}

impl std::fmt::Debug for BLElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl BLElement {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: HashMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::basis(rank, Monomial::unit(), FinPerm::identity(rank))
    }

    pub fn basis(rank: usize, m: Monomial, w: FinPerm) -> Self {
        assert_eq!(w.rank(), rank);
        let mut terms = HashMap::new();
        terms.insert((m, w), LaurentPoly::one());
        Self { rank, terms }
    }

    /// `X_j^{e}` for 1-based `j`.
    pub fn x_power(rank: usize, j: usize, e: i64) -> Result<Self, AffineAError> {
        if j < 1 || j > rank {
            return Err(AffineAError::IndexOutOfRange(j, rank));
        }
        Ok(Self::basis(rank, x_var(j).pow(e), FinPerm::identity(rank)))
    }

    /// `X^a` for an arbitrary lattice point.
    pub fn x_monomial(rank: usize, a: Monomial) -> Self {
        Self::basis(rank, a, FinPerm::identity(rank))
    }

    /// `T_i` for `1 <= i <= rank - 1`.
    pub fn t(rank: usize, i: usize) -> Result<Self, AffineAError> {
        if i < 1 || i >= rank {
            return Err(AffineAError::IndexOutOfRange(i, rank));
        }
        Ok(Self::basis(rank, Monomial::unit(), FinPerm::simple(rank, i)))
    }

    pub fn t_inverse(rank: usize, i: usize) -> Result<Self, AffineAError> {
        let mut out = Self::t(rank, i)?;
        out.add_term(Monomial::unit(), FinPerm::identity(rank), gap().neg_ref());
        Ok(out)
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

    pub fn coefficient(&self, m: &Monomial, w: &FinPerm) -> LaurentPoly {
        self.terms
            .get(&(m.clone(), w.clone()))
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &(Monomial, FinPerm)> {
        self.terms.keys()
    }

    fn add_term(&mut self, m: Monomial, w: FinPerm, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry((m, w)) {
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
        for ((m, w), c) in &other.terms {
            out.add_term(m.clone(), w.clone(), c.clone());
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
                .map(|(k, x)| (k.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    /// Left multiplication by `X^a` (free: the X part is commutative).
    fn translate(&self, a: &Monomial) -> Self {
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|((m, w), c)| ((a.mul(m), w.clone()), c.clone()))
                .collect(),
        }
    }

    /// Right multiplication by `T_i`.
    fn mul_t(&self, i: usize) -> Self {
        let mut out = Self::zero(self.rank);
        for ((m, w), c) in &self.terms {
            let ws = w.mul_simple(i);
            if w.has_right_descent(i) {
                out.add_term(m.clone(), ws, c.clone());
                out.add_term(m.clone(), w.clone(), c.mul_ref(&gap()));
            } else {
                out.add_term(m.clone(), ws, c.clone());
            }
        }
        out
    }

    /// Normal form of `T_word X^b`, by pushing one generator at a time
    /// through the commutation rule
    /// `T_i X^b = X^{s_i(b)} T_i + (v - v^-1) (X^b - X^{s_i b}) / (1 - X_i X_{i+1}^{-1})`.
    fn commute_word_past(rank: usize, word: &[usize], b: &Monomial) -> Self {
        let Some((&last, head)) = word.split_last() else {
            return Self::x_monomial(rank, b.clone());
        };
        let sb = swap_action(b, last);
        let mut out = Self::commute_word_past(rank, head, &sb).mul_t(last);
        let quot = geometric_quotient(b, &sb, &direction(last))
            .expect("swap difference is always a multiple of the direction");
        for (coeff, mono) in quot {
            let part = Self::commute_word_past(rank, head, &mono).scale(&coeff.mul_ref(&gap()));
            out = out.add(&part).expect("same rank");
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AffineAError> {
        if self.rank != other.rank {
            return Err(AffineAError::RankMismatch);
        }
        let mut out = Self::zero(self.rank);
        for ((mb, wb), d) in &other.terms {
            let wb_word = wb.canonical_word();
            for ((ma, wa), c) in &self.terms {
                let mut cur = Self::commute_word_past(self.rank, &wa.canonical_word(), mb)
                    .translate(ma)
                    .scale(&c.mul_ref(d));
                for &i in &wb_word {
                    cur = cur.mul_t(i);
                }
                out = out.add(&cur)?;
            }
        }
        Ok(out)
    }

    pub fn sorted_terms(&self) -> Vec<(&(Monomial, FinPerm), &LaurentPoly)> {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|((m, w), _)| (w.length(), w.render(), m.dense(self.rank)));
        items
    }

    /// `(coeff) X^[a1,...,ar] T[word]` form.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms()
            .iter()
            .map(|((m, w), c)| {
                let word: Vec<String> = w.canonical_word().iter().map(|i| i.to_string()).collect();
                format!("({}) X^{} T[{}]", c, m.render(self.rank), word.join(","))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Product of `T` or `T^{-1}` generators over an index sequence.
fn t_chain(rank: usize, indices: &[usize], inverse: bool) -> Result<BLElement, AffineAError> {
    let mut out = BLElement::one(rank);
    for &i in indices {
        let f = if inverse {
            BLElement::t_inverse(rank, i)?
        } else {
            BLElement::t(rank, i)?
        };
        out = out.mul(&f)?;
    }
    Ok(out)
}

/// Ascending `a..=m` then descending `m-1..=b` (empty pieces allowed).
fn palindrome(a: usize, m: usize, b: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (a..=m).collect();
    out.extend((b..m).rev());
    out
}

/// The explicit isomorphism between the rotation presentation and the
/// `X^a T_w` presentation at a fixed rank: `T_i -> T_i` and
/// `T_rho -> (T_{r-1} ... T_1 X_1)^{-1}`.
pub struct PresentationIso {
    rank: usize,
    to_bl_t: Vec<BLElement>,
    to_bl_rho: BLElement,
    to_bl_rho_inv: BLElement,
    to_im_x: Vec<ExtHeckeElement>,
    to_im_x_inv: Vec<ExtHeckeElement>,
}

impl PresentationIso {
    pub fn new(rank: usize) -> Result<Self, AffineAError> {
        if rank < 2 {
            return Err(AffineAError::RankTooSmall(rank));
        }
        let r = rank;
        let mut to_bl_t = Vec::new();
        for i in 1..r {
            to_bl_t.push(BLElement::t(r, i)?);
        }
        // T_r = T_rho T_{r-1} T_rho^{-1} maps to
        // X_1^{-1} T_1^{-1} ... T_{r-2}^{-1} T_{r-1} T_{r-2} ... T_1 X_1
        // (conjugating T_{r-1} by the rho image; the trailing X_1 does not
        // cancel because the chain ends at T_1).
        let mut affine_image = BLElement::x_power(r, 1, -1)?;
        let asc: Vec<usize> = (1..=r.saturating_sub(2)).collect();
        affine_image = affine_image.mul(&t_chain(r, &asc, true)?)?;
        affine_image = affine_image.mul(&BLElement::t(r, r - 1)?)?;
        let desc: Vec<usize> = (1..=r.saturating_sub(2)).rev().collect();
        affine_image = affine_image.mul(&t_chain(r, &desc, false)?)?;
        affine_image = affine_image.mul(&BLElement::x_power(r, 1, 1)?)?;
        to_bl_t.push(affine_image);
        // T_rho -> (T_{r-1} ... T_1 X_1)^{-1} = X_1^{-1} T_1^{-1} ... T_{r-1}^{-1}
        let mut to_bl_rho = BLElement::x_power(r, 1, -1)?;
        let asc_all: Vec<usize> = (1..=r - 1).collect();
        to_bl_rho = to_bl_rho.mul(&t_chain(r, &asc_all, true)?)?;
        let desc_all: Vec<usize> = (1..=r - 1).rev().collect();
        let to_bl_rho_inv = t_chain(r, &desc_all, false)?.mul(&BLElement::x_power(r, 1, 1)?)?;
        // Inverse direction: X_1 -> T_1^{-1} T_2^{-1} ... T_{r-1}^{-1} T_rho^{-1},
        // then X_j = T_{j-1} X_{j-1} T_{j-1} upward.
        let mut x1 = ExtHeckeElement::one(r);
        for i in 1..=r - 1 {
            x1 = x1.mul(&ExtHeckeElement::generator_inverse(r, i)?)?;
        }
        x1 = x1.mul(&ExtHeckeElement::rotation_power(r, -1))?;
        let mut x1_inv = ExtHeckeElement::rotation_power(r, 1);
        for i in (1..=r - 1).rev() {
            x1_inv = x1_inv.mul(&ExtHeckeElement::generator(r, i)?)?;
        }
        let mut to_im_x = vec![x1];
        let mut to_im_x_inv = vec![x1_inv];
        for j in 2..=r {
            let t = ExtHeckeElement::generator(r, j - 1)?;
            let t_inv = ExtHeckeElement::generator_inverse(r, j - 1)?;
            let prev = to_im_x.last().unwrap();
            to_im_x.push(t.mul(prev)?.mul(&t)?);
            let prev_inv = to_im_x_inv.last().unwrap();
            to_im_x_inv.push(t_inv.mul(prev_inv)?.mul(&t_inv)?);
        }
        Ok(Self {
            rank,
            to_bl_t,
            to_bl_rho,
            to_bl_rho_inv,
            to_im_x,
            to_im_x_inv,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bl_image_of_t(&self, i: usize) -> &BLElement {
        &self.to_bl_t[i - 1]
    }

    pub fn im_image_of_x(&self, j: usize, positive: bool) -> &ExtHeckeElement {
        if positive {
            &self.to_im_x[j - 1]
        } else {
            &self.to_im_x_inv[j - 1]
        }
    }

    pub fn im_to_bl(&self, x: &ExtHeckeElement) -> Result<BLElement, AffineAError> {
        if x.rank() != self.rank {
            return Err(AffineAError::RankMismatch);
        }
        let mut out = BLElement::zero(self.rank);
        for (f, c) in x.sorted_terms() {
            let (word, k) = f.canonical_decomposition();
            let mut cur = BLElement::one(self.rank).scale(c);
            for &i in &word {
                cur = cur.mul(&self.to_bl_t[i - 1])?;
            }
            let rho = if k >= 0 { &self.to_bl_rho } else { &self.to_bl_rho_inv };
            for _ in 0..k.unsigned_abs() {
                cur = cur.mul(rho)?;
            }
            out = out.add(&cur)?;
        }
        Ok(out)
    }

    pub fn bl_to_im(&self, y: &BLElement) -> Result<ExtHeckeElement, AffineAError> {
        if y.rank() != self.rank {
            return Err(AffineAError::RankMismatch);
        }
        let mut out = ExtHeckeElement::zero(self.rank);
        for ((m, w), c) in y.sorted_terms() {
            let mut cur = ExtHeckeElement::one(self.rank).scale(c);
            for j in 1..=self.rank {
                let e = m.exponent(j - 1);
                let img = self.im_image_of_x(j, e >= 0);
                for _ in 0..e.unsigned_abs() {
                    cur = cur.mul(img)?;
                }
            }
            for &i in &w.canonical_word() {
                cur = cur.mul(&ExtHeckeElement::generator(self.rank, i)?)?;
            }
            out = out.add(&cur)?;
        }
        Ok(out)
    }
}

/// The rank-raising embedding in the `X^a T_w` presentation, by the displayed
/// case formulas.
pub struct BlEmbedding {
    pub source_rank: usize,
    pub i_minus: usize,
    images_t: Vec<BLElement>,
    images_x: Vec<BLElement>,
    images_x_inv: Vec<BLElement>,
}

impl BlEmbedding {
    pub fn new(source_rank: usize, i_minus: usize) -> Result<Self, AffineAError> {
        let r = source_rank;
        if r < 2 {
            return Err(AffineAError::RankTooSmall(r));
        }
        if i_minus < 1 || i_minus > r - 1 {
            return Err(AffineAError::IndexOutOfRange(i_minus, r - 1));
        }
        let r1 = r + 1;
        let i_plus = i_minus + 1;
        let mut images_t = Vec::new();
        for i in 1..=r - 1 {
            let img = if i < i_minus {
                BLElement::t(r1, i)?
            } else if i == i_minus {
                BLElement::t(r1, i_minus)?
                    .mul(&BLElement::t(r1, i_plus)?)?
                    .mul(&BLElement::t_inverse(r1, i_minus)?)?
            } else {
                BLElement::t(r1, i + 1)?
            };
            images_t.push(img);
        }
        let mut images_x = Vec::new();
        let mut images_x_inv = Vec::new();
        for j in 1..=r {
            if j <= i_minus {
                // X_j -> X_j + (v - v^-1) X_{i_+} T_j^{-1} ... T_{i_- - 1}^{-1}
                //        T_{i_-}^{-1} T_{i_- - 1}^{-1} ... T_j^{-1}
                let chain = t_chain(r1, &palindrome(j, i_minus, j), true)?;
                let tail = BLElement::x_power(r1, i_plus, 1)?
                    .mul(&chain)?
                    .scale(&gap());
                images_x.push(BLElement::x_power(r1, j, 1)?.add(&tail)?);
                // X_j^{-1} -> X_j^{-1} - (v - v^-1) T_j ... T_{i_-} ... T_j X_{i_+}^{-1}
                let chain = t_chain(r1, &palindrome(j, i_minus, j), false)?;
                let tail = chain.mul(&BLElement::x_power(r1, i_plus, -1)?)?.scale(&gap());
                images_x_inv.push(BLElement::x_power(r1, j, -1)?.sub(&tail)?);
            } else {
                images_x.push(BLElement::x_power(r1, j + 1, 1)?);
                images_x_inv.push(BLElement::x_power(r1, j + 1, -1)?);
            }
        }
        Ok(Self {
            source_rank,
            i_minus,
            images_t,
            images_x,
            images_x_inv,
        })
    }

    pub fn target_rank(&self) -> usize {
        self.source_rank + 1
    }

    pub fn image_of_t(&self, i: usize) -> &BLElement {
        &self.images_t[i - 1]
    }

    pub fn image_of_x(&self, j: usize, positive: bool) -> &BLElement {
        if positive {
            &self.images_x[j - 1]
        } else {
            &self.images_x_inv[j - 1]
        }
    }

    /// Map an element; monomial letters expand in ascending index order
    /// (indifferent whenever the images commute, which the audit checks).
    pub fn apply(&self, y: &BLElement) -> Result<BLElement, AffineAError> {
        if y.rank() != self.source_rank {
            return Err(AffineAError::RankMismatch);
        }
        let mut out = BLElement::zero(self.target_rank());
        for ((m, w), c) in y.sorted_terms() {
            let mut cur = BLElement::one(self.target_rank()).scale(c);
            for j in 1..=self.source_rank {
                let e = m.exponent(j - 1);
                let img = self.image_of_x(j, e >= 0);
                for _ in 0..e.unsigned_abs() {
                    cur = cur.mul(img)?;
                }
            }
            for &i in &w.canonical_word() {
                cur = cur.mul(&self.images_t[i - 1])?;
            }
            out = out.add(&cur)?;
        }
        Ok(out)
    }
}

/// The displayed image of `X_j X_{j+1}^{-1}` (first Corollary family).
fn displayed_x_pair(emb: &BlEmbedding, j: usize) -> Result<BLElement, AffineAError> {
    let r1 = emb.target_rank();
    let i_minus = emb.i_minus;
    let i_plus = i_minus + 1;
    let pair = |a: usize, b: usize| -> Result<BLElement, AffineAError> {
        BLElement::x_power(r1, a, 1)?.mul(&BLElement::x_power(r1, b, -1)?)
    };
    if j <= i_minus - 1 {
        // X_j X_{j+1}^{-1}
        // + (v-v^-1) T_j^{-1} ... T_{i_- -1}^{-1} T_{i_-} T_{i_- -1} ... T_j  X_j X_{j+1}^{-1}
        // - (v-v^-1) T_{j+1} ... T_{i_-} ... T_{j+1}  X_j X_{i_+}^{-1}
        // - (v-v^-1)^2 T_{j+1} ... T_{i_-} ... T_j  X_j X_{i_+}^{-1}
        let line1 = pair(j, j + 1)?;
        let mut chain2 = t_chain(r1, &(j..i_minus).collect::<Vec<_>>(), true)?;
        chain2 = chain2.mul(&t_chain(r1, &palindrome(i_minus, i_minus, j), false)?)?;
        let line2 = chain2.mul(&pair(j, j + 1)?)?.scale(&gap());
        let chain3 = t_chain(r1, &palindrome(j + 1, i_minus, j + 1), false)?;
        let line3 = chain3.mul(&pair(j, i_plus)?)?.scale(&gap());
        let chain4 = t_chain(r1, &palindrome(j + 1, i_minus, j), false)?;
        let line4 = chain4.mul(&pair(j, i_plus)?)?.scale(&gap().mul_ref(&gap()));
        line1.add(&line2)?.sub(&line3)?.sub(&line4)
    } else if j == i_minus {
        // X_{i_-} X_{i_+ + 1}^{-1} + (v-v^-1) T_{i_-} X_{i_-} X_{i_+ + 1}^{-1}
        let head = pair(i_minus, i_plus + 1)?;
        let tail = BLElement::t(r1, i_minus)?.mul(&head)?.scale(&gap());
        head.add(&tail)
    } else {
        pair(j + 1, j + 2)
    }
}

/// The displayed image of `X_j^{-1} X_{j+1}` (second Corollary family).
fn displayed_x_inv_pair(emb: &BlEmbedding, j: usize) -> Result<BLElement, AffineAError> {
    let r1 = emb.target_rank();
    let i_minus = emb.i_minus;
    let i_plus = i_minus + 1;
    let pair = |a: usize, b: usize| -> Result<BLElement, AffineAError> {
        BLElement::x_power(r1, a, -1)?.mul(&BLElement::x_power(r1, b, 1)?)
    };
    if j <= i_minus - 1 {
        // X_j^{-1} X_{j+1}
        // - (v-v^-1) T_j ... T_{i_-} ... T_j  X_{i_+}^{-1} X_{j+1}
        // + (v-v^-1) X_j^{-1} X_{i_+}  T_{j+1}^{-1} ... T_{i_-}^{-1} ... T_{j+1}^{-1}
        // - (v-v^-1)^2 T_{j+1}^{-1} ... T_{i_- -1}^{-1} T_{i_-} ... T_j
        let line1 = pair(j, j + 1)?;
        let chain2 = t_chain(r1, &palindrome(j, i_minus, j), false)?;
        let line2 = chain2.mul(&pair(i_plus, j + 1)?)?.scale(&gap());
        let xpart = BLElement::x_power(r1, j, -1)?.mul(&BLElement::x_power(r1, i_plus, 1)?)?;
        let chain3 = t_chain(r1, &palindrome(j + 1, i_minus, j + 1), true)?;
        let line3 = xpart.mul(&chain3)?.scale(&gap());
        let mut chain4 = t_chain(r1, &(j + 1..i_minus).collect::<Vec<_>>(), true)?;
        chain4 = chain4.mul(&t_chain(r1, &(j..=i_minus).rev().collect::<Vec<_>>(), false)?)?;
        let line4 = chain4.scale(&gap().mul_ref(&gap()));
        line1.sub(&line2)?.add(&line3)?.sub(&line4)
    } else if j == i_minus {
        // X_j^{-1} X_{j+2} - (v-v^-1) T_j X_{j+1}^{-1} X_{j+2}
        let head = pair(j, j + 2)?;
        let tail = BLElement::t(r1, j)?.mul(&pair(j + 1, j + 2)?)?.scale(&gap());
        head.sub(&tail)
    } else {
        pair(j + 1, j + 2)
    }
}

/// Audit of both Corollary product families at every position, comparing the
/// product of generator images against the displayed case formulas, exactly.
/// Mismatches are reported with both sides rendered, never patched.
pub fn verify_cor_xpairs(source_rank: usize, i_minus: usize) -> Result<VerificationReport, AffineAError> {
    let emb = BlEmbedding::new(source_rank, i_minus)?;
    let mut report = VerificationReport::new();
    for j in 1..=source_rank - 1 {
        let computed = emb
            .image_of_x(j, true)
            .mul(emb.image_of_x(j + 1, false))?;
        let displayed = displayed_x_pair(&emb, j)?;
        report.record(
            "cor-x-pair",
            format!("r={source_rank} i_minus={i_minus} j={j}"),
            computed == displayed,
            Some(format!(
                "computed {} vs displayed {}",
                computed.render(),
                displayed.render()
            )),
        );
        let computed = emb
            .image_of_x(j, false)
            .mul(emb.image_of_x(j + 1, true))?;
        let displayed = displayed_x_inv_pair(&emb, j)?;
        report.record(
            "cor-x-inv-pair",
            format!("r={source_rank} i_minus={i_minus} j={j}"),
            computed == displayed,
            Some(format!(
                "computed {} vs displayed {}",
                computed.render(),
                displayed.render()
            )),
        );
    }
    Ok(report)
}

/// Structural cross-checks tying the two presentations together:
/// inverse generator images, image commutativity, the round trip of the
/// isomorphism, and `phi_BL = iso . phi_e . iso^{-1}` on every generator.
pub fn verify_bl_cross_checks(source_rank: usize, i_minus: usize) -> Result<VerificationReport, AffineAError> {
    let r = source_rank;
    let r1 = r + 1;
    let emb = BlEmbedding::new(r, i_minus)?;
    let mut report = VerificationReport::new();
    let params = |extra: &str| format!("r={r} i_minus={i_minus} {extra}");
    // X_j images are invertible with the displayed inverse formulas.
    for j in 1..=r {
        let prod = emb.image_of_x(j, true).mul(emb.image_of_x(j, false))?;
        report.record(
            "bl-image-inverse",
            params(&format!("j={j}")),
            prod == BLElement::one(r1),
            Some(prod.render()),
        );
    }
    // X images commute pairwise.
    for j in 1..=r {
        for j2 in (j + 1)..=r {
            let ab = emb.image_of_x(j, true).mul(emb.image_of_x(j2, true))?;
            let ba = emb.image_of_x(j2, true).mul(emb.image_of_x(j, true))?;
            report.record(
                "bl-images-commute",
                params(&format!("pair=({j},{j2})")),
                ab == ba,
                Some(format!("{} != {}", ab.render(), ba.render())),
            );
        }
    }
    // phi_BL agrees with iso_{r+1} . phi_e . iso_r^{-1} on all generators.
    let iso_r = PresentationIso::new(r)?;
    let iso_r1 = PresentationIso::new(r1)?;
    let phi_e = ExtendedEmbedding::new(r, i_minus)?;
    let via_im = |g: &BLElement| -> Result<BLElement, AffineAError> {
        iso_r1.im_to_bl(&phi_e.apply(&iso_r.bl_to_im(g)?)?)
    };
    for i in 1..=r - 1 {
        let g = BLElement::t(r, i)?;
        let lhs = emb.image_of_t(i).clone();
        let rhs = via_im(&g)?;
        report.record(
            "bl-via-im",
            params(&format!("generator=T{i}")),
            lhs == rhs,
            Some(format!("{} != {}", lhs.render(), rhs.render())),
        );
    }
    for j in 1..=r {
        for positive in [true, false] {
            let g = BLElement::x_power(r, j, if positive { 1 } else { -1 })?;
            let lhs = emb.image_of_x(j, positive).clone();
            let rhs = via_im(&g)?;
            let name = if positive { "X" } else { "Xinv" };
            report.record(
                "bl-via-im",
                params(&format!("generator={name}{j}")),
                lhs == rhs,
                Some(format!("{} != {}", lhs.render(), rhs.render())),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::perm::AffPerm;
    use rand::{Rng, SeedableRng};

    #[test]
    fn defining_relations_in_bl_arithmetic() {
        let r = 3;
        for i in 1..r {
            // T_i X_i T_i = X_{i+1}
            let lhs = BLElement::t(r, i)
                .unwrap()
                .mul(&BLElement::x_power(r, i, 1).unwrap())
                .unwrap()
                .mul(&BLElement::t(r, i).unwrap())
                .unwrap();
            assert_eq!(lhs, BLElement::x_power(r, i + 1, 1).unwrap(), "i={i}");
            // quadratic
            let t = BLElement::t(r, i).unwrap();
            let got = t.mul(&t).unwrap();
            let want = BLElement::one(r)
                .add(&t.scale(&LaurentPoly::v_minus_vinv()))
                .unwrap();
            assert_eq!(got, want);
        }
        // T_1 X_3 = X_3 T_1
        let lhs = BLElement::t(r, 1)
            .unwrap()
            .mul(&BLElement::x_power(r, 3, 1).unwrap())
            .unwrap();
        let rhs = BLElement::x_power(r, 3, 1)
            .unwrap()
            .mul(&BLElement::t(r, 1).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // braid
        let t1 = BLElement::t(r, 1).unwrap();
        let t2 = BLElement::t(r, 2).unwrap();
        assert_eq!(
            t1.mul(&t2).unwrap().mul(&t1).unwrap(),
            t2.mul(&t1).unwrap().mul(&t2).unwrap()
        );
    }

    #[test]
    fn x_parts_commute() {
        let r = 3;
        let a = BLElement::x_power(r, 1, 2).unwrap();
        let b = BLElement::x_power(r, 2, -1).unwrap();
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn associativity_randomized() {
        let r = 3;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let random_elt = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut x = BLElement::zero(r);
            for _ in 0..rng.gen_range(1..=2) {
                let m = Monomial::from_pairs((0..r).map(|i| (i, rng.gen_range(-1..=1))));
                let mut w = FinPerm::identity(r);
                for _ in 0..rng.gen_range(0..=2) {
                    w = w.mul_simple(rng.gen_range(1..r));
                }
                let c = LaurentPoly::from_terms([(rng.gen_range(-1..=1i64), rng.gen_range(-2..=2i64))]);
                x = x.add(&BLElement::basis(r, m, w).scale(&c)).unwrap();
            }
            x
        };
        for _ in 0..60 {
            let a = random_elt(&mut rng);
            let b = random_elt(&mut rng);
            let c = random_elt(&mut rng);
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn iso_generator_images_invert() {
        for r in [2usize, 3] {
            let iso = PresentationIso::new(r).unwrap();
            // X_1 image times its inverse image is 1 in the rotation algebra.
            let prod = iso
                .im_image_of_x(1, true)
                .mul(iso.im_image_of_x(1, false))
                .unwrap();
            assert_eq!(prod, ExtHeckeElement::one(r), "r={r}");
            // And the BL image of rho inverts.
            let prod = iso.to_bl_rho.mul(&iso.to_bl_rho_inv).unwrap();
            assert_eq!(prod, BLElement::one(r), "r={r}");
        }
    }

    #[test]
    fn iso_x1_is_inverse_dominant_translation() {
        // This presentation normalizes X_1 as the inverse of the basis
        // element at the dominant translation window [1 + r, 2, ..., r]:
        // X_1^{-1} itself is that single basis term.
        let r = 3;
        let iso = PresentationIso::new(r).unwrap();
        let translation = AffPerm::from_window(vec![1 + r as i64, 2, 3]).unwrap();
        let inv_img = iso.im_image_of_x(1, false);
        assert_eq!(inv_img.num_terms(), 1);
        assert_eq!(inv_img.coefficient(&translation), LaurentPoly::one());
        let prod = iso
            .im_image_of_x(1, true)
            .mul(&ExtHeckeElement::basis(translation))
            .unwrap();
        assert_eq!(prod, ExtHeckeElement::one(r));
    }

    #[test]
    fn iso_round_trip_on_generators_and_random_elements() {
        let r = 3;
        let iso = PresentationIso::new(r).unwrap();
        // generators
        for i in 1..=r {
            let x = ExtHeckeElement::generator(r, i).unwrap();
            assert_eq!(iso.bl_to_im(&iso.im_to_bl(&x).unwrap()).unwrap(), x, "T{i}");
        }
        let rho = ExtHeckeElement::rotation_power(r, 1);
        assert_eq!(iso.bl_to_im(&iso.im_to_bl(&rho).unwrap()).unwrap(), rho);
        // random 20-term element
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let pool = super::super::im::affine_weyl_ball(r, 4);
        let mut x = ExtHeckeElement::zero(r);
        for _ in 0..20 {
            let f = pool[rng.gen_range(0..pool.len())].mul_rotation(rng.gen_range(-2..=2));
            let c = LaurentPoly::from_terms([(rng.gen_range(-2..=2i64), rng.gen_range(-3..=3i64))]);
            x = x.add(&ExtHeckeElement::basis(f).scale(&c)).unwrap();
        }
        let back = iso.bl_to_im(&iso.im_to_bl(&x).unwrap()).unwrap();
        assert_eq!(back, x);
        // and the other way around, starting from a BL element
        let y = BLElement::x_power(r, 2, -1)
            .unwrap()
            .mul(&BLElement::t(r, 1).unwrap())
            .unwrap();
        let back = iso.im_to_bl(&iso.bl_to_im(&y).unwrap()).unwrap();
        assert_eq!(back, y);
    }

    #[test]
    fn iso_is_multiplicative_on_samples() {
        let r = 3;
        let iso = PresentationIso::new(r).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let pool = super::super::im::affine_weyl_ball(r, 3);
        for _ in 0..20 {
            let a = ExtHeckeElement::basis(
                pool[rng.gen_range(0..pool.len())].mul_rotation(rng.gen_range(-1..=1)),
            );
            let b = ExtHeckeElement::basis(
                pool[rng.gen_range(0..pool.len())].mul_rotation(rng.gen_range(-1..=1)),
            );
            let lhs = iso.im_to_bl(&a.mul(&b).unwrap()).unwrap();
            let rhs = iso.im_to_bl(&a).unwrap().mul(&iso.im_to_bl(&b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bl_mul_agrees_with_im_route() {
        // The spec's cross-presentation oracle, including the r = 2 case
        // T_1 X_1^2 T_1.
        for r in [2usize, 3] {
            let iso = PresentationIso::new(r).unwrap();
            let a = BLElement::t(r, 1)
                .unwrap()
                .mul(&BLElement::x_power(r, 1, 2).unwrap())
                .unwrap()
                .mul(&BLElement::t(r, 1).unwrap())
                .unwrap();
            let via_im = iso
                .im_to_bl(
                    &iso.bl_to_im(&BLElement::t(r, 1).unwrap())
                        .unwrap()
                        .mul(&iso.bl_to_im(&BLElement::x_power(r, 1, 2).unwrap()).unwrap())
                        .unwrap()
                        .mul(&iso.bl_to_im(&BLElement::t(r, 1).unwrap()).unwrap())
                        .unwrap(),
                )
                .unwrap();
            assert_eq!(a, via_im, "r={r}");
        }
    }

    #[test]
    fn embedding_t_images_satisfy_quadratic() {
        let emb = BlEmbedding::new(3, 1).unwrap();
        for i in 1..=2 {
            let img = emb.image_of_t(i);
            let got = img.mul(img).unwrap();
            let want = BLElement::one(4)
                .add(&img.scale(&LaurentPoly::v_minus_vinv()))
                .unwrap();
            assert_eq!(got, want, "i={i}");
        }
    }

    #[test]
    fn x_image_shift_cases() {
        // X_j -> X_{j+1} for i_+ <= j <= r.
        let emb = BlEmbedding::new(3, 1).unwrap();
        for j in 2..=3 {
            assert_eq!(
                emb.image_of_x(j, true),
                &BLElement::x_power(4, j + 1, 1).unwrap()
            );
        }
        // phi(X_j X_j^{-1}) = 1 (forced by the homomorphism property).
        for j in 1..=3 {
            let prod = emb
                .image_of_x(j, true)
                .mul(emb.image_of_x(j, false))
                .unwrap();
            assert_eq!(prod, BLElement::one(4), "j={j}");
        }
    }

    #[test]
    fn cor_xpair_j_equals_iminus_case() {
        // r = 3, i_- = 1: phi(X_1 X_2^{-1}) = X_1 X_3^{-1} + (v - v^-1) T_1 X_1 X_3^{-1}.
        let emb = BlEmbedding::new(3, 1).unwrap();
        let computed = emb.image_of_x(1, true).mul(emb.image_of_x(2, false)).unwrap();
        let head = BLElement::x_power(4, 1, 1)
            .unwrap()
            .mul(&BLElement::x_power(4, 3, -1).unwrap())
            .unwrap();
        let want = head
            .add(
                &BLElement::t(4, 1)
                    .unwrap()
                    .mul(&head)
                    .unwrap()
                    .scale(&LaurentPoly::v_minus_vinv()),
            )
            .unwrap();
        assert_eq!(computed, want);
    }
}
