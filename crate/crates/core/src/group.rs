//! Coxeter group elements through the reflection representation: exact
//! matrices, descent sets, canonical reduced words, and bounded-length balls.
//!
//! An element stores its matrix together with the matrix of its inverse, so
//! both left and right descent sets are column-sign reads and inversion is a
//! swap. Equality and hashing see only the matrix: `T_w` independence of the
//! reduced word is a consequence, not an assumption.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use once_cell::sync::OnceCell;
use thiserror::Error;

use crate::kmatrix::KMatrix;
use crate::matrix::{vector_sign, SquareMatrix};
use crate::scalar::Scalar;
use crate::system::CoxeterSystem;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("elements belong to different Coxeter systems")]
    SystemMismatch,
    #[error("ball generation exceeded the element budget of {0}")]
    BudgetExceeded(usize),
}

/// A Coxeter system together with a fixed K matrix and the generator
/// matrices of the reflection representation.
#[derive(Debug)]
pub struct Representation<S: Scalar> {
    pub system: CoxeterSystem,
    pub k: KMatrix<S>,
    generators: Vec<SquareMatrix<S>>,
}

impl<S: Scalar> Representation<S> {
    pub fn new(system: CoxeterSystem, k: KMatrix<S>) -> Arc<Self> {
        assert_eq!(system.rank(), k.dim(), "K matrix shape");
        let n = system.rank();
        let mut generators = Vec::with_capacity(n);
        for s in 0..n {
            // sigma_s(alpha_t) = alpha_t + k_{s,t} alpha_s: identity plus a
            // rank-one correction in row s.
            let mut m = SquareMatrix::identity(n);
            for t in 0..n {
                if t == s {
                    m.set(s, s, S::from_int(-1));
                } else {
                    m.set(s, t, k.entry(s, t).clone());
                }
            }
            generators.push(m);
        }
        Arc::new(Self {
            system,
            k,
            generators,
        })
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn generator_matrix(&self, s: usize) -> &SquareMatrix<S> {
        &self.generators[s]
    }
}

/// Group element, represented exactly by its matrix (and its inverse's).
pub struct GroupElement<S: Scalar> {
    repr: Arc<Representation<S>>,
    fwd: SquareMatrix<S>,
    inv: SquareMatrix<S>,
    word: OnceCell<Vec<usize>>,
}

impl<S: Scalar> Clone for GroupElement<S> {
    fn clone(&self) -> Self {
        Self {
            repr: Arc::clone(&self.repr),
            fwd: self.fwd.clone(),
            inv: self.inv.clone(),
            word: self.word.clone(),
        }
    }
}

impl<S: Scalar> PartialEq for GroupElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.fwd == other.fwd
    }
}

impl<S: Scalar> Eq for GroupElement<S> {}

impl<S: Scalar> Hash for GroupElement<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fwd.hash(state);
    }
}

impl<S: Scalar> fmt::Debug for GroupElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.word_labels())
    }
}

impl<S: Scalar> GroupElement<S> {
    pub fn identity(repr: &Arc<Representation<S>>) -> Self {
        let n = repr.rank();
        Self {
            repr: Arc::clone(repr),
            fwd: SquareMatrix::identity(n),
            inv: SquareMatrix::identity(n),
            word: OnceCell::with_value(Vec::new()),
        }
    }

    pub fn generator(repr: &Arc<Representation<S>>, s: usize) -> Self {
        let m = repr.generator_matrix(s).clone();
        Self {
            repr: Arc::clone(repr),
            fwd: m.clone(),
            inv: m,
            word: OnceCell::with_value(vec![s]),
        }
    }

    pub fn from_word(repr: &Arc<Representation<S>>, word: &[usize]) -> Self {
        let mut out = Self::identity(repr);
        for &s in word {
            out = out.mul_generator(s);
        }
        out
    }

    pub fn representation(&self) -> &Arc<Representation<S>> {
        &self.repr
    }

    pub fn matrix(&self) -> &SquareMatrix<S> {
        &self.fwd
    }

    pub fn same_context(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.repr, &other.repr)
            || (self.repr.system == other.repr.system && self.repr.k == other.repr.k)
    }

    pub fn is_identity(&self) -> bool {
        self.fwd.is_identity()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        if !self.same_context(other) {
            return Err(GroupError::SystemMismatch);
        }
        Ok(Self {
            repr: Arc::clone(&self.repr),
            fwd: self.fwd.mul(&other.fwd),
            inv: other.inv.mul(&self.inv),
            word: OnceCell::new(),
        })
    }

    /// Right multiplication by a generator; generators are involutions so the
    /// inverse side premultiplies.
    pub fn mul_generator(&self, s: usize) -> Self {
        let g = self.repr.generator_matrix(s);
        Self {
            repr: Arc::clone(&self.repr),
            fwd: self.fwd.mul(g),
            inv: g.mul(&self.inv),
            word: OnceCell::new(),
        }
    }

    pub fn mul_generator_left(&self, s: usize) -> Self {
        let g = self.repr.generator_matrix(s);
        Self {
            repr: Arc::clone(&self.repr),
            fwd: g.mul(&self.fwd),
            inv: self.inv.mul(g),
            word: OnceCell::new(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            repr: Arc::clone(&self.repr),
            fwd: self.inv.clone(),
            inv: self.fwd.clone(),
            word: OnceCell::new(),
        }
    }

    /// `w(alpha)` in basis coordinates.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.fwd.apply(v)
    }

    /// `w(alpha_s)`, read off as a matrix column.
    pub fn apply_basis(&self, s: usize) -> Vec<S> {
        self.fwd.column(s)
    }

    /// `ell(w s) < ell(w)` iff `w(alpha_s)` is a negative root.
    pub fn has_right_descent(&self, s: usize) -> bool {
        vector_sign(&self.fwd.column(s)) == Some(false)
    }

    /// `ell(s w) < ell(w)` iff `w^{-1}(alpha_s)` is a negative root.
    pub fn has_left_descent(&self, s: usize) -> bool {
        vector_sign(&self.inv.column(s)) == Some(false)
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (0..self.repr.rank()).filter(|&s| self.has_left_descent(s)).collect()
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.repr.rank()).filter(|&s| self.has_right_descent(s)).collect()
    }

    /// Canonical reduced word: repeatedly strip the smallest left descent.
    /// This is the lexicographically smallest reduced word, cached on first
    /// use.
    pub fn normal_form(&self) -> &[usize] {
        self.word.get_or_init(|| {
            let mut letters = Vec::new();
            let mut cur = self.clone();
            while !cur.is_identity() {
                let s = (0..self.repr.rank())
                    .find(|&s| cur.has_left_descent(s))
                    .expect("non-identity element has a left descent");
                letters.push(s);
                cur = cur.mul_generator_left(s);
            }
            letters
        })
    }

    pub fn length(&self) -> usize {
        self.normal_form().len()
    }

    pub fn word_labels(&self) -> Vec<String> {
        self.normal_form()
            .iter()
            .map(|&s| self.repr.system.generators[s].clone())
            .collect()
    }

    /// Canonical rendering of the reduced word, e.g. `1.2.1`.
    pub fn word_string(&self) -> String {
        self.word_labels().join(".")
    }
}

/// All elements of length at most `max_length`, by breadth-first generation
/// with matrix deduplication. Fails once more than `budget` elements appear.
pub fn ball<S: Scalar>(
    repr: &Arc<Representation<S>>,
    max_length: usize,
    budget: usize,
) -> Result<Vec<GroupElement<S>>, GroupError> {
    let mut seen: HashMap<SquareMatrix<S>, usize> = HashMap::new();
    let id = GroupElement::identity(repr);
    seen.insert(id.matrix().clone(), 0);
    let mut out = vec![id.clone()];
    let mut frontier = vec![id];
    for _len in 1..=max_length {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..repr.rank() {
                if w.has_right_descent(s) {
                    continue;
                }
                let ws = w.mul_generator(s);
                if seen.contains_key(ws.matrix()) {
                    continue;
                }
                seen.insert(ws.matrix().clone(), 0);
                if out.len() + next.len() + 1 > budget {
                    return Err(GroupError::BudgetExceeded(budget));
                }
                next.push(ws);
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

pub const DEFAULT_BALL_BUDGET: usize = 1_000_000;
