//! Dense square matrices over a [`Scalar`], sized by the generator set.
//! Row-major; `w(alpha_s)` is column `s` of the matrix of `w`.

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SquareMatrix<S: Scalar> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> SquareMatrix<S> {
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![S::zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Matrix-vector product in basis coordinates.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        let mut out = vec![S::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = out[i].add(&a.mul(&v[j]));
            }
        }
        out
    }

    pub fn column(&self, col: usize) -> Vec<S> {
        (0..self.dim).map(|i| self.get(i, col).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity(self.dim)
    }
}

/// Sign classification of a coordinate vector: `Some(true)` when all entries
/// are >= 0, `Some(false)` when all are <= 0, `None` when mixed.
pub fn vector_sign<S: Scalar>(v: &[S]) -> Option<bool> {
    let mut has_pos = false;
    let mut has_neg = false;
    for x in v {
        match x.sign() {
            1 => has_pos = true,
            -1 => has_neg = true,
            _ => {}
        }
    }
    match (has_pos, has_neg) {
        (_, false) => Some(true),
        (false, true) => Some(false),
        (true, true) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_mul() {
        let id = SquareMatrix::<i64>::identity(3);
        let mut m = SquareMatrix::<i64>::identity(3);
        m.set(0, 1, 5);
        assert_eq!(id.mul(&m), m);
        assert_eq!(m.mul(&id), m);
        let v = m.apply(&[1, 2, 3]);
        assert_eq!(v, vec![11, 2, 3]);
    }

    #[test]
    fn vector_signs() {
        assert_eq!(vector_sign(&[1i64, 0, 2]), Some(true));
        assert_eq!(vector_sign(&[-1i64, 0, -2]), Some(false));
        assert_eq!(vector_sign(&[1i64, -1, 0]), None);
        assert_eq!(vector_sign(&[0i64, 0]), Some(true));
    }
}
