//! The tensor-space bimodule: quantum-group action on the left, Hecke action
//! on the right, both given by the explicit word formulas, together with the
//! insertion maps that raise both ranks and the exhaustive compatibility
//! sweeps. The quantum group exists here only through its action; operators
//! are formal Laurent combinations of primitive actions.

use std::collections::HashMap;

use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::report::VerificationReport;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DualityError {
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("shape mismatch: expected ({0},{1})")]
    ShapeMismatch(usize, usize),
}

/// Element of the tensor space: finite combination of length-`d` words over
/// `{1..n}`.
#[derive(Clone)]
pub struct TensorElement {
    pub n: usize,
    pub d: usize,
    terms: HashMap<Vec<u8>, LaurentPoly>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl std::fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn gap() -> LaurentPoly {
    LaurentPoly::v_minus_vinv()
}

impl TensorElement {
    pub fn zero(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            terms: HashMap::new(),
        }
    }

    pub fn basis(n: usize, d: usize, word: Vec<u8>) -> Self {
        assert_eq!(word.len(), d);
        assert!(word.iter().all(|&r| r >= 1 && r as usize <= n));
        let mut terms = HashMap::new();
        terms.insert(word, LaurentPoly::one());
        Self { n, d, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[u8]) -> LaurentPoly {
        self.terms.get(word).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    fn add_term(&mut self, word: Vec<u8>, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(word) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.d);
        }
        Self {
            n: self.n,
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(w, _)| w.to_vec());
        items
            .iter()
            .map(|(w, c)| {
                let body: Vec<String> = w.iter().map(|r| r.to_string()).collect();
                format!("({}) [{}]", c, body.join(","))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// All basis words of the (n, d) tensor space.
pub fn basis_words(n: usize, d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &out {
            for r in 1..=n as u8 {
                let mut w2 = w.clone();
                w2.push(r);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

/// Lowering action: each letter equal to `i + 1` drops to `i`, with the
/// displayed tail-count exponent.
pub fn act_e(i: usize, x: &TensorElement) -> Result<TensorElement, DualityError> {
    if i < 1 || i >= x.n {
        return Err(DualityError::IndexOutOfRange(i));
    }
    let mut out = TensorElement::zero(x.n, x.d);
    let i = i as u8;
    for (w, c) in &x.terms {
        for p in 0..w.len() {
            if w[p] == i + 1 {
                let tail = &w[p + 1..];
                let count_i = tail.iter().filter(|&&r| r == i).count() as i64;
                let count_i1 = tail.iter().filter(|&&r| r == i + 1).count() as i64;
                let mut w2 = w.clone();
                w2[p] = i;
                out.add_term(w2, c.mul_ref(&LaurentPoly::v_pow(count_i - count_i1)));
            }
        }
    }
    Ok(out)
}

/// Raising action: each letter equal to `i` climbs to `i + 1`, with the
/// displayed head-count exponent.
pub fn act_f(i: usize, x: &TensorElement) -> Result<TensorElement, DualityError> {
    if i < 1 || i >= x.n {
        return Err(DualityError::IndexOutOfRange(i));
    }
    let mut out = TensorElement::zero(x.n, x.d);
    let i = i as u8;
    for (w, c) in &x.terms {
        for p in 0..w.len() {
            if w[p] == i {
                let head = &w[..p];
                let count_i1 = head.iter().filter(|&&r| r == i + 1).count() as i64;
                let count_i = head.iter().filter(|&&r| r == i).count() as i64;
                let mut w2 = w.clone();
                w2[p] = i + 1;
                out.add_term(w2, c.mul_ref(&LaurentPoly::v_pow(count_i1 - count_i)));
            }
        }
    }
    Ok(out)
}

/// Diagonal action: scales each word by `v^(count(i) - count(i+1))`, or its
/// inverse.
pub fn act_k(i: usize, exponent_sign: i64, x: &TensorElement) -> Result<TensorElement, DualityError> {
    if i < 1 || i >= x.n {
        return Err(DualityError::IndexOutOfRange(i));
    }
    let mut out = TensorElement::zero(x.n, x.d);
    let i = i as u8;
    for (w, c) in &x.terms {
        let count_i = w.iter().filter(|&&r| r == i).count() as i64;
        let count_i1 = w.iter().filter(|&&r| r == i + 1).count() as i64;
        out.add_term(
            w.clone(),
            c.mul_ref(&LaurentPoly::v_pow(exponent_sign * (count_i - count_i1))),
        );
    }
    Ok(out)
}

/// Right Hecke action of `T_i` on positions `i, i + 1`: the three-case rule.
pub fn act_t(i: usize, x: &TensorElement) -> Result<TensorElement, DualityError> {
    if i < 1 || i >= x.d {
        return Err(DualityError::IndexOutOfRange(i));
    }
    let mut out = TensorElement::zero(x.n, x.d);
    for (w, c) in &x.terms {
        let (a, b) = (w[i - 1], w[i]);
        let mut swapped = w.clone();
        swapped.swap(i - 1, i);
        match a.cmp(&b) {
            std::cmp::Ordering::Less => out.add_term(swapped, c.clone()),
            std::cmp::Ordering::Equal => out.add_term(w.clone(), c.mul_ref(&LaurentPoly::v_pow(1))),
            std::cmp::Ordering::Greater => {
                out.add_term(w.clone(), c.mul_ref(&gap()));
                out.add_term(swapped, c.clone());
            }
        }
    }
    Ok(out)
}

/// `T_i^{-1} = T_i + v^{-1} - v` as a right action.
pub fn act_t_inv(i: usize, x: &TensorElement) -> Result<TensorElement, DualityError> {
    Ok(act_t(i, x)?.add(&x.scale(&gap().neg_ref())))
}

/// Primitive left-action symbols.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UPrim {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
}

/// Primitive right-action symbols.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HPrim {
    T(usize),
    TInv(usize),
}

/// Formal Laurent combination of compositions of primitives; written
/// left-to-right in operator order (the rightmost primitive acts first for
/// the left action, the leftmost acts first for the right action).
#[derive(Clone, Debug)]
pub struct OperatorRecipe<P> {
    pub terms: Vec<(LaurentPoly, Vec<P>)>,
}

impl<P: Copy> OperatorRecipe<P> {
    pub fn single(prims: Vec<P>) -> Self {
        Self {
            terms: vec![(LaurentPoly::one(), prims)],
        }
    }
}

pub fn apply_u_prim(p: UPrim, x: &TensorElement) -> Result<TensorElement, DualityError> {
    match p {
        UPrim::E(i) => act_e(i, x),
        UPrim::F(i) => act_f(i, x),
        UPrim::K(i) => act_k(i, 1, x),
        UPrim::KInv(i) => act_k(i, -1, x),
    }
}

pub fn apply_u_recipe(r: &OperatorRecipe<UPrim>, x: &TensorElement) -> Result<TensorElement, DualityError> {
    let mut out = TensorElement::zero(x.n, x.d);
    for (c, prims) in &r.terms {
        let mut y = x.clone();
        for p in prims.iter().rev() {
            y = apply_u_prim(*p, &y)?;
        }
        out = out.add(&y.scale(c));
    }
    Ok(out)
}

pub fn apply_h_prim(p: HPrim, x: &TensorElement) -> Result<TensorElement, DualityError> {
    match p {
        HPrim::T(i) => act_t(i, x),
        HPrim::TInv(i) => act_t_inv(i, x),
    }
}

pub fn apply_h_recipe(r: &OperatorRecipe<HPrim>, x: &TensorElement) -> Result<TensorElement, DualityError> {
    let mut out = TensorElement::zero(x.n, x.d);
    for (c, prims) in &r.terms {
        let mut y = x.clone();
        for p in prims.iter() {
            y = apply_h_prim(*p, &y)?;
        }
        out = out.add(&y.scale(c));
    }
    Ok(out)
}

/// The length-raising word map as displayed: relabel letters across the cut
/// at `i_+` and insert the letter `i_- = i_+ + 1` after position `i_+`.
pub fn phi_t(x: &TensorElement, i_plus: usize) -> Result<TensorElement, DualityError> {
    insertion_map(x, i_plus, i_plus + 1, (i_plus + 1) as u8)
}

/// Same insertion with the letter `n + 1` instead.
pub fn phi_t1(x: &TensorElement, i_plus: usize) -> Result<TensorElement, DualityError> {
    insertion_map(x, i_plus, i_plus + 1, (x.n + 1) as u8)
}

/// Insertion with an explicit slot (1-based position of the inserted letter
/// in the new word); used to audit the slot convention against the displayed
/// one.
pub fn phi_t_slot(x: &TensorElement, i_plus: usize, slot: usize) -> Result<TensorElement, DualityError> {
    insertion_map(x, i_plus, slot, (i_plus + 1) as u8)
}

pub fn phi_t1_slot(x: &TensorElement, i_plus: usize, slot: usize) -> Result<TensorElement, DualityError> {
    insertion_map(x, i_plus, slot, (x.n + 1) as u8)
}

fn insertion_map(
    x: &TensorElement,
    i_plus: usize,
    slot: usize,
    inserted: u8,
) -> Result<TensorElement, DualityError> {
    if i_plus < 1 || i_plus > x.d || i_plus > x.n - 1 {
        return Err(DualityError::IndexOutOfRange(i_plus));
    }
    if slot < 1 || slot > x.d + 1 {
        return Err(DualityError::IndexOutOfRange(slot));
    }
    let breve = |r: u8| if (r as usize) <= i_plus { r } else { r + 1 };
    let mut out = TensorElement::zero(x.n + 1, x.d + 1);
    for (w, c) in &x.terms {
        let mut w2: Vec<u8> = Vec::with_capacity(x.d + 1);
        for (pos, &r) in w.iter().enumerate() {
            if pos + 1 == slot {
                w2.push(inserted);
            }
            w2.push(breve(r));
        }
        if w.len() + 1 == slot {
            w2.push(inserted);
        }
        out.add_term(w2, c.clone());
    }
    Ok(out)
}

/// The quantum-group embedding on generators, as recipes over the larger
/// tensor space's primitives.
pub fn phi_epsilon(g: UPrim, i_plus: usize, epsilon: i64) -> Result<OperatorRecipe<UPrim>, DualityError> {
    if !(epsilon == 1 || epsilon == -1) {
        return Err(DualityError::IndexOutOfRange(0));
    }
    let one = LaurentPoly::one;
    Ok(match g {
        UPrim::E(i) => {
            if i < i_plus {
                OperatorRecipe::single(vec![UPrim::E(i)])
            } else if i == i_plus {
                // E_i E_{i+1} - v^eps E_{i+1} E_i
                OperatorRecipe {
                    terms: vec![
                        (one(), vec![UPrim::E(i_plus), UPrim::E(i_plus + 1)]),
                        (-LaurentPoly::v_pow(epsilon), vec![UPrim::E(i_plus + 1), UPrim::E(i_plus)]),
                    ],
                }
            } else {
                OperatorRecipe::single(vec![UPrim::E(i + 1)])
            }
        }
        UPrim::F(i) => {
            if i < i_plus {
                OperatorRecipe::single(vec![UPrim::F(i)])
            } else if i == i_plus {
                // F_{i+1} F_i - v^{-eps} F_i F_{i+1}
                OperatorRecipe {
                    terms: vec![
                        (one(), vec![UPrim::F(i_plus + 1), UPrim::F(i_plus)]),
                        (-LaurentPoly::v_pow(-epsilon), vec![UPrim::F(i_plus), UPrim::F(i_plus + 1)]),
                    ],
                }
            } else {
                OperatorRecipe::single(vec![UPrim::F(i + 1)])
            }
        }
        UPrim::K(i) => {
            if i < i_plus {
                OperatorRecipe::single(vec![UPrim::K(i)])
            } else if i == i_plus {
                OperatorRecipe::single(vec![UPrim::K(i_plus), UPrim::K(i_plus + 1)])
            } else {
                OperatorRecipe::single(vec![UPrim::K(i + 1)])
            }
        }
        UPrim::KInv(i) => {
            if i < i_plus {
                OperatorRecipe::single(vec![UPrim::KInv(i)])
            } else if i == i_plus {
                OperatorRecipe::single(vec![UPrim::KInv(i_plus), UPrim::KInv(i_plus + 1)])
            } else {
                OperatorRecipe::single(vec![UPrim::KInv(i + 1)])
            }
        }
    })
}

/// The Hecke embedding on generators: shift across the cut, conjugate at the
/// merged position.
pub fn phi_v_recipe(j: usize, i_plus: usize) -> OperatorRecipe<HPrim> {
    if j < i_plus {
        OperatorRecipe::single(vec![HPrim::T(j)])
    } else if j == i_plus {
        OperatorRecipe::single(vec![
            HPrim::T(i_plus),
            HPrim::T(i_plus + 1),
            HPrim::TInv(i_plus),
        ])
    } else {
        OperatorRecipe::single(vec![HPrim::T(j + 1)])
    }
}

fn check_equal(
    report: &mut VerificationReport,
    name: &str,
    params: String,
    lhs: &TensorElement,
    rhs: &TensorElement,
) {
    report.record(
        name,
        params,
        lhs == rhs,
        Some(format!("{} != {}", lhs.render(), rhs.render())),
    );
}

/// All defining relations of the quantum group as operator identities on the
/// (n, d) tensor space, checked on every basis word.
pub fn check_u_relations(n: usize, d: usize) -> Result<VerificationReport, DualityError> {
    let mut report = VerificationReport::new();
    let words = basis_words(n, d);
    let on_all = |ops: &dyn Fn(&TensorElement) -> Result<TensorElement, DualityError>,
                  other: &dyn Fn(&TensorElement) -> Result<TensorElement, DualityError>|
     -> Result<Option<String>, DualityError> {
        for w in &words {
            let x = TensorElement::basis(n, d, w.clone());
            let lhs = ops(&x)?;
            let rhs = other(&x)?;
            if lhs != rhs {
                return Ok(Some(format!(
                    "word {:?}: {} != {}",
                    w,
                    lhs.render(),
                    rhs.render()
                )));
            }
        }
        Ok(None)
    };
    for i in 1..n {
        for j in 1..n {
            // K commutations and inverses
            let w = on_all(
                &|x| act_k(i, 1, &act_k(j, 1, x)?),
                &|x| act_k(j, 1, &act_k(i, 1, x)?),
            )?;
            report.record("u-kk", format!("n={n} d={d} pair=({i},{j})"), w.is_none(), w);
            if i == j {
                let w = on_all(&|x| act_k(i, 1, &act_k(i, -1, x)?), &|x| Ok(x.clone()))?;
                report.record("u-k-inverse", format!("n={n} d={d} i={i}"), w.is_none(), w);
            }
            // K E and K F commutations with the displayed exponents
            // 2 delta_{ij} - delta_{i,j+1} - delta_{i,j-1}.
            let delta = |a: i64, b: i64| if a == b { 1i64 } else { 0 };
            let (ii, jj) = (i as i64, j as i64);
            let e_exp = 2 * delta(ii, jj) - delta(ii, jj + 1) - delta(ii, jj - 1);
            let w = on_all(
                &|x| act_k(i, 1, &act_e(j, x)?),
                &|x| Ok(act_e(j, &act_k(i, 1, x)?)?.scale(&LaurentPoly::v_pow(e_exp))),
            )?;
            report.record("u-ke", format!("n={n} d={d} pair=({i},{j})"), w.is_none(), w);
            let w = on_all(
                &|x| act_k(i, 1, &act_f(j, x)?),
                &|x| Ok(act_f(j, &act_k(i, 1, x)?)?.scale(&LaurentPoly::v_pow(-e_exp))),
            )?;
            report.record("u-kf", format!("n={n} d={d} pair=({i},{j})"), w.is_none(), w);
            // E F commutator, scaled by (v - v^-1) to stay in Laurent form
            let w = on_all(
                &|x| {
                    let lhs = act_e(i, &act_f(j, x)?)?.sub(&act_f(j, &act_e(i, x)?)?);
                    Ok(lhs.scale(&gap()))
                },
                &|x| {
                    if i == j {
                        Ok(act_k(i, 1, x)?.sub(&act_k(i, -1, x)?))
                    } else {
                        Ok(TensorElement::zero(n, d))
                    }
                },
            )?;
            report.record("u-ef", format!("n={n} d={d} pair=({i},{j})"), w.is_none(), w);
            // Serre / commutation for E and F
            if i != j {
                if i.abs_diff(j) == 1 {
                    let w = on_all(
                        &|x| {
                            let t1 = act_e(i, &act_e(i, &act_e(j, x)?)?)?;
                            let t2 = act_e(i, &act_e(j, &act_e(i, x)?)?)?
                                .scale(&LaurentPoly::from_terms([(1, 1), (-1, 1)]));
                            let t3 = act_e(j, &act_e(i, &act_e(i, x)?)?)?;
                            Ok(t1.sub(&t2).add(&t3))
                        },
                        &|_| Ok(TensorElement::zero(n, d)),
                    )?;
                    report.record("u-serre-e", format!("n={n} d={d} pair=({i},{j})"), w.is_none(), w);
                    let w = on_all(
                        &|x| {
                            let t1 = act_f(i, &act_f(i, &act_f(j, x)?)?)?;
                            let t2 = act_f(i, &act_f(j, &act_f(i, x)?)?)?
                                .scale(&LaurentPoly::from_terms([(1, 1), (-1, 1)]));
                            let t3 = act_f(j, &act_f(i, &act_f(i, x)?)?)?;
                            Ok(t1.sub(&t2).add(&t3))
                        },
                        &|_| Ok(TensorElement::zero(n, d)),
                    )?;
                    report.record("u-serre-f", format!("n={n} d={d} pair=({i},{j})"), w.is_none(), w);
                } else {
                    let w = on_all(
                        &|x| act_e(i, &act_e(j, x)?),
                        &|x| act_e(j, &act_e(i, x)?),
                    )?;
                    report.record("u-ee-commute", format!("n={n} d={d} pair=({i},{j})"), w.is_none(), w);
                    let w = on_all(
                        &|x| act_f(i, &act_f(j, x)?),
                        &|x| act_f(j, &act_f(i, x)?),
                    )?;
                    report.record("u-ff-commute", format!("n={n} d={d} pair=({i},{j})"), w.is_none(), w);
                }
            }
        }
    }
    Ok(report)
}

/// All Hecke defining relations as right-operator identities.
pub fn check_h_relations(n: usize, d: usize) -> Result<VerificationReport, DualityError> {
    let mut report = VerificationReport::new();
    let words = basis_words(n, d);
    for i in 1..d {
        // quadratic
        let mut ok = true;
        let mut witness = None;
        for w in &words {
            let x = TensorElement::basis(n, d, w.clone());
            let lhs = act_t(i, &act_t(i, &x)?)?;
            let rhs = x.add(&act_t(i, &x)?.scale(&gap()));
            if lhs != rhs {
                ok = false;
                witness = Some(format!("word {w:?}"));
                break;
            }
        }
        report.record("h-quadratic", format!("n={n} d={d} i={i}"), ok, witness);
    }
    for i in 1..d {
        for j in (i + 1)..d {
            let mut ok = true;
            let mut witness = None;
            for w in &words {
                let x = TensorElement::basis(n, d, w.clone());
                let (lhs, rhs) = if j == i + 1 {
                    (
                        act_t(i, &act_t(j, &act_t(i, &x)?)?)?,
                        act_t(j, &act_t(i, &act_t(j, &x)?)?)?,
                    )
                } else {
                    (act_t(i, &act_t(j, &x)?)?, act_t(j, &act_t(i, &x)?)?)
                };
                if lhs != rhs {
                    ok = false;
                    witness = Some(format!("word {w:?}"));
                    break;
                }
            }
            let name = if j == i + 1 { "h-braid" } else { "h-commute" };
            report.record(name, format!("n={n} d={d} pair=({i},{j})"), ok, witness);
        }
    }
    Ok(report)
}

/// Full bimodule commutation `[u, T_j] = 0` on every basis word.
pub fn check_bimodule(n: usize, d: usize) -> Result<VerificationReport, DualityError> {
    let mut report = VerificationReport::new();
    let words = basis_words(n, d);
    for i in 1..n {
        for j in 1..d {
            for (label, act) in [
                ("E", UPrim::E(i)),
                ("F", UPrim::F(i)),
                ("K", UPrim::K(i)),
            ] {
                let mut ok = true;
                let mut witness = None;
                for w in &words {
                    let x = TensorElement::basis(n, d, w.clone());
                    let lhs = act_t(j, &apply_u_prim(act, &x)?)?;
                    let rhs = apply_u_prim(act, &act_t(j, &x)?)?;
                    if lhs != rhs {
                        ok = false;
                        witness = Some(format!("word {w:?}: {} != {}", lhs.render(), rhs.render()));
                        break;
                    }
                }
                report.record(
                    "bimodule-commute",
                    format!("n={n} d={d} u={label}{i} T={j}"),
                    ok,
                    witness,
                );
            }
        }
    }
    Ok(report)
}

/// The quantum-group compatibility square: inserting then acting through the
/// embedded generator equals acting then inserting, on every basis word and
/// every generator.
pub fn check_prop_u(
    n: usize,
    d: usize,
    i_plus: usize,
    epsilon: i64,
) -> Result<VerificationReport, DualityError> {
    let mut report = VerificationReport::new();
    let words = basis_words(n, d);
    for i in 1..n {
        for g in [UPrim::E(i), UPrim::F(i), UPrim::K(i), UPrim::KInv(i)] {
            let recipe = phi_epsilon(g, i_plus, epsilon)?;
            let mut ok = true;
            let mut witness = None;
            for w in &words {
                let x = TensorElement::basis(n, d, w.clone());
                let lhs = phi_t(&apply_u_prim(g, &x)?, i_plus)?;
                let rhs = apply_u_recipe(&recipe, &phi_t(&x, i_plus)?)?;
                if lhs != rhs {
                    ok = false;
                    witness = Some(format!("word {w:?}: {} != {}", lhs.render(), rhs.render()));
                    break;
                }
            }
            report.record(
                "prop-u-square",
                format!("n={n} d={d} i_plus={i_plus} eps={epsilon} u={g:?}"),
                ok,
                witness,
            );
        }
    }
    Ok(report)
}

/// The Hecke compatibility square through the `n + 1` insertion, plus the
/// three displayed conjugation identities checked verbatim.
pub fn check_prop_h(n: usize, d: usize, i_plus: usize) -> Result<VerificationReport, DualityError> {
    let mut report = VerificationReport::new();
    let words = basis_words(n, d);
    for j in 1..d {
        let recipe = phi_v_recipe(j, i_plus);
        let mut ok = true;
        let mut witness = None;
        for w in &words {
            let x = TensorElement::basis(n, d, w.clone());
            let lhs = phi_t1(&act_t(j, &x)?, i_plus)?;
            let rhs = apply_h_recipe(&recipe, &phi_t1(&x, i_plus)?)?;
            if lhs != rhs {
                ok = false;
                witness = Some(format!("word {w:?}: {} != {}", lhs.render(), rhs.render()));
                break;
            }
        }
        report.record(
            "prop-h-square",
            format!("n={n} d={d} i_plus={i_plus} T={j}"),
            ok,
            witness,
        );
    }
    // (comm-1)..(comm-3): the conjugation acting at the inserted letter.
    let conj = OperatorRecipe::<HPrim>::single(vec![
        HPrim::T(i_plus),
        HPrim::T(i_plus + 1),
        HPrim::TInv(i_plus),
    ]);
    let mut case_ok = [true; 3];
    let mut case_witness: [Option<String>; 3] = [None, None, None];
    for w in &words {
        let y = phi_t1(&TensorElement::basis(n, d, w.clone()), i_plus)?;
        let yw: Vec<u8> = y.terms.keys().next().unwrap().clone();
        let a = yw[i_plus - 1];
        let b = yw[i_plus + 1];
        let mut swapped = yw.clone();
        swapped.swap(i_plus - 1, i_plus + 1);
        let lhs = apply_h_recipe(&conj, &y)?;
        let n1 = n + 1;
        let d1 = d + 1;
        let (case, rhs) = match a.cmp(&b) {
            std::cmp::Ordering::Less => (0, TensorElement::basis(n1, d1, swapped)),
            std::cmp::Ordering::Equal => (
                1,
                TensorElement::basis(n1, d1, swapped).scale(&LaurentPoly::v_pow(1)),
            ),
            std::cmp::Ordering::Greater => (
                2,
                TensorElement::basis(n1, d1, yw.clone())
                    .scale(&gap())
                    .add(&TensorElement::basis(n1, d1, swapped)),
            ),
        };
        if lhs != rhs && case_ok[case] {
            case_ok[case] = false;
            case_witness[case] = Some(format!("word {yw:?}: {} != {}", lhs.render(), rhs.render()));
        }
    }
    for (idx, name) in ["comm-1", "comm-2", "comm-3"].iter().enumerate() {
        report.record(
            name,
            format!("n={n} d={d} i_plus={i_plus}"),
            case_ok[idx],
            case_witness[idx].clone(),
        );
    }
    Ok(report)
}

/// Insertion maps send distinct basis words to distinct basis words.
pub fn check_insertion_injective(n: usize, d: usize, i_plus: usize) -> Result<VerificationReport, DualityError> {
    let mut report = VerificationReport::new();
    for (name, map) in [
        ("phi-t-injective", phi_t as fn(&TensorElement, usize) -> Result<TensorElement, DualityError>),
        ("phi-t1-injective", phi_t1),
    ] {
        let mut seen: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
        let mut ok = true;
        let mut witness = None;
        for w in basis_words(n, d) {
            let img = map(&TensorElement::basis(n, d, w.clone()), i_plus)?;
            let img_word = img.terms.keys().next().unwrap().clone();
            if let Some(prev) = seen.insert(img_word.clone(), w.clone()) {
                ok = false;
                witness = Some(format!("{prev:?} and {w:?} collide at {img_word:?}"));
                break;
            }
        }
        report.record(name, format!("n={n} d={d} i_plus={i_plus}"), ok, witness);
    }
    Ok(report)
}

/// The recipe images satisfy the quantum-group relations as operators on the
/// larger tensor space: substitute the embedded generators into each relation.
pub fn check_phi_epsilon_relations(
    n: usize,
    d: usize,
    i_plus: usize,
    epsilon: i64,
) -> Result<VerificationReport, DualityError> {
    let mut report = VerificationReport::new();
    let n1 = n + 1;
    let d1 = d + 1;
    let words = basis_words(n1, d1);
    let img = |g: UPrim| phi_epsilon(g, i_plus, epsilon);
    let apply = |g: UPrim, x: &TensorElement| -> Result<TensorElement, DualityError> {
        apply_u_recipe(&img(g)?, x)
    };
    for i in 1..n {
        for j in 1..n {
            let mut ok = true;
            let mut witness = None;
            for w in &words {
                let x = TensorElement::basis(n1, d1, w.clone());
                // scaled commutator identity through the images
                let lhs = apply(UPrim::E(i), &apply(UPrim::F(j), &x)?)?
                    .sub(&apply(UPrim::F(j), &apply(UPrim::E(i), &x)?)?)
                    .scale(&gap());
                let rhs = if i == j {
                    apply(UPrim::K(i), &x)?.sub(&apply(UPrim::KInv(i), &x)?)
                } else {
                    TensorElement::zero(n1, d1)
                };
                if lhs != rhs {
                    ok = false;
                    witness = Some(format!("word {w:?}"));
                    break;
                }
            }
            report.record(
                "phi-eps-ef-relation",
                format!("n={n} d={d} i_plus={i_plus} eps={epsilon} pair=({i},{j})"),
                ok,
                witness,
            );
        }
    }
    // Serre identities through the images on adjacent pairs.
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) != 1 {
                continue;
            }
            let mut ok = true;
            let mut witness = None;
            for w in &words {
                let x = TensorElement::basis(n1, d1, w.clone());
                let t1 = apply(UPrim::E(i), &apply(UPrim::E(i), &apply(UPrim::E(j), &x)?)?)?;
                let t2 = apply(UPrim::E(i), &apply(UPrim::E(j), &apply(UPrim::E(i), &x)?)?)?
                    .scale(&LaurentPoly::from_terms([(1, 1), (-1, 1)]));
                let t3 = apply(UPrim::E(j), &apply(UPrim::E(i), &apply(UPrim::E(i), &x)?)?)?;
                if !t1.sub(&t2).add(&t3).is_zero() {
                    ok = false;
                    witness = Some(format!("word {w:?}"));
                    break;
                }
            }
            report.record(
                "phi-eps-serre",
                format!("n={n} d={d} i_plus={i_plus} eps={epsilon} pair=({i},{j})"),
                ok,
                witness,
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(w: &[u8]) -> Vec<u8> {
        w.to_vec()
    }

    #[test]
    fn e_action_example() {
        // n=2, d=2: E_1 [2,2] = v^-1 [1,2] + [2,1]
        let x = TensorElement::basis(2, 2, word(&[2, 2]));
        let got = act_e(1, &x).unwrap();
        assert_eq!(got.coefficient(&[1, 2]), LaurentPoly::v_pow(-1));
        assert_eq!(got.coefficient(&[2, 1]), LaurentPoly::one());
        // E_1 [1,1] = 0
        assert!(act_e(1, &TensorElement::basis(2, 2, word(&[1, 1]))).unwrap().is_zero());
    }

    #[test]
    fn k_action_example() {
        // K_1 [1,2] = [1,2]
        let x = TensorElement::basis(2, 2, word(&[1, 2]));
        assert_eq!(act_k(1, 1, &x).unwrap(), x);
    }

    #[test]
    fn t_action_cases() {
        let up = TensorElement::basis(2, 2, word(&[1, 2]));
        assert_eq!(act_t(1, &up).unwrap(), TensorElement::basis(2, 2, word(&[2, 1])));
        let eq = TensorElement::basis(2, 2, word(&[2, 2]));
        assert_eq!(act_t(1, &eq).unwrap(), eq.scale(&LaurentPoly::v_pow(1)));
        let down = TensorElement::basis(2, 2, word(&[2, 1]));
        let got = act_t(1, &down).unwrap();
        assert_eq!(got.coefficient(&[2, 1]), LaurentPoly::v_minus_vinv());
        assert_eq!(got.coefficient(&[1, 2]), LaurentPoly::one());
        // inverse really inverts
        let back = act_t_inv(1, &act_t(1, &down).unwrap()).unwrap();
        assert_eq!(back, down);
    }

    #[test]
    fn insertion_examples() {
        // n=2, d=2, i_+=1: [1,1] -> [1,2,1], [2,1] -> [3,2,1],
        // and with the big letter [2,1] -> [3,3,1].
        let x = TensorElement::basis(2, 2, word(&[1, 1]));
        assert_eq!(phi_t(&x, 1).unwrap(), TensorElement::basis(3, 3, word(&[1, 2, 1])));
        let y = TensorElement::basis(2, 2, word(&[2, 1]));
        assert_eq!(phi_t(&y, 1).unwrap(), TensorElement::basis(3, 3, word(&[3, 2, 1])));
        assert_eq!(phi_t1(&y, 1).unwrap(), TensorElement::basis(3, 3, word(&[3, 3, 1])));
    }

    #[test]
    fn phi_epsilon_cases() {
        // i < i_+ fixes, i = i_+ doubles K, i > i_+ shifts.
        let r = phi_epsilon(UPrim::E(1), 2, 1).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[0].1, vec![UPrim::E(1)]);
        let r = phi_epsilon(UPrim::K(2), 2, 1).unwrap();
        assert_eq!(r.terms[0].1, vec![UPrim::K(2), UPrim::K(3)]);
        let r = phi_epsilon(UPrim::F(3), 2, 1).unwrap();
        assert_eq!(r.terms[0].1, vec![UPrim::F(4)]);
    }

    #[test]
    fn u_relations_small() {
        let report = check_u_relations(2, 2).unwrap();
        assert!(report.passed(), "{report}");
        let report = check_u_relations(3, 2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn h_relations_small() {
        let report = check_h_relations(2, 3).unwrap();
        assert!(report.passed(), "{report}");
        let report = check_h_relations(3, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn bimodule_small() {
        let report = check_bimodule(2, 2).unwrap();
        assert!(report.passed(), "{report}");
        let report = check_bimodule(3, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn compatibility_squares_small() {
        for eps in [1, -1] {
            let report = check_prop_u(2, 2, 1, eps).unwrap();
            assert!(report.passed(), "eps={eps}: {report}");
        }
        let report = check_prop_h(2, 2, 1).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn insertion_injective_small() {
        let report = check_insertion_injective(3, 3, 2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn phi_epsilon_relations_small() {
        let report = check_phi_epsilon_relations(2, 2, 1, 1).unwrap();
        assert!(report.passed(), "{report}");
    }
}
