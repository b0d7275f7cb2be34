//! The matrix `K` that drives the reflection representation
//! `sigma_s(alpha_t) = alpha_t + k_{s,t} alpha_s`, in two exact backends:
//! integer (crystallographic, Cartan-style asymmetric pairs) and symmetric
//! `2 cos(pi/m)` over [`QuadScalar`].
//!
//! A contracted system's K is built by the sum rule
//! `k~_{s0,t} = k_{s+,t} + k_{s-,t}`, which agrees with `2 cos(pi/n)` for
//! every finite contracted bond and stays valid (product >= 4) on infinite
//! ones.

use thiserror::Error;

use crate::quad::QuadScalar;
use crate::scalar::Scalar;
use crate::system::{Bond, Contraction, CoxeterSystem};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KMode {
    /// Integer entries; bonds restricted to {2, 3, 4, 6, inf}.
    Crystallographic,
    /// `k_{s,t} = 2 cos(pi / m_{s,t})`; bonds restricted to {2, 3, 4, 5, 6, inf}.
    Symmetric,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KError {
    #[error("bond order {0} between `{1}` and `{2}` is not supported in {3:?} mode")]
    UnsupportedBond(Bond, String, String, KMode),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KMatrix<S: Scalar> {
    pub mode: KMode,
    entries: Vec<S>,
    dim: usize,
}

impl<S: Scalar> KMatrix<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, s: usize, t: usize) -> &S {
        &self.entries[s * self.dim + t]
    }

    fn from_fn(dim: usize, mode: KMode, f: impl Fn(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for s in 0..dim {
            for t in 0..dim {
                entries.push(f(s, t));
            }
        }
        Self { mode, entries, dim }
    }

    /// Verify the defining conditions: diagonal -2, zero exactly on bond 2,
    /// positive on bonds >= 3, pairwise product `4 cos^2(pi/m)` for finite
    /// bonds and >= 4 for infinite ones.
    pub fn check_conditions(&self, system: &CoxeterSystem) -> Result<(), String> {
        let n = self.dim;
        for s in 0..n {
            if self.entry(s, s) != &S::from_int(-2) {
                return Err(format!("k({s},{s}) != -2"));
            }
            for t in 0..n {
                if s == t {
                    continue;
                }
                let k = self.entry(s, t);
                match system.bond(s, t) {
                    Bond::Finite(2) => {
                        if !k.is_zero() {
                            return Err(format!("k({s},{t}) != 0 on a commuting pair"));
                        }
                    }
                    Bond::Finite(m) => {
                        if k.sign() != 1 {
                            return Err(format!("k({s},{t}) not positive on bond {m}"));
                        }
                        let prod = k.mul(self.entry(t, s));
                        let want = S::four_cos_squared(m)
                            .ok_or_else(|| format!("no exact 4cos^2(pi/{m}) in this backend"))?;
                        if prod != want {
                            return Err(format!("k({s},{t}) k({t},{s}) != 4cos^2(pi/{m})"));
                        }
                    }
                    Bond::Infinite => {
                        let prod = k.mul(self.entry(t, s));
                        if prod.sub(&S::from_int(4)).sign() < 0 {
                            return Err(format!("k({s},{t}) k({t},{s}) < 4 on an infinite bond"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl KMatrix<i64> {
    /// Cartan-style integer pairs: (1,1) for bond 3, (1,2) for 4, (1,3) for
    /// 6, (2,2) for infinity; the larger value sits on the row of the later
    /// generator.
    pub fn crystallographic(system: &CoxeterSystem) -> Result<Self, KError> {
        let n = system.rank();
        for s in 0..n {
            for t in (s + 1)..n {
                match system.bond(s, t) {
                    Bond::Finite(2) | Bond::Finite(3) | Bond::Finite(4) | Bond::Finite(6) | Bond::Infinite => {}
                    other => {
                        return Err(KError::UnsupportedBond(
                            other,
                            system.generators[s].clone(),
                            system.generators[t].clone(),
                            KMode::Crystallographic,
                        ))
                    }
                }
            }
        }
        Ok(Self::from_fn(n, KMode::Crystallographic, |s, t| {
            if s == t {
                return -2;
            }
            match system.bond(s, t) {
                Bond::Finite(2) => 0,
                Bond::Finite(3) => 1,
                Bond::Finite(4) => {
                    if s > t {
                        2
                    } else {
                        1
                    }
                }
                Bond::Finite(6) => {
                    if s > t {
                        3
                    } else {
                        1
                    }
                }
                Bond::Infinite => 2,
                _ => unreachable!("rejected above"),
            }
        }))
    }
}

impl KMatrix<QuadScalar> {
    /// `k_{s,t} = 2 cos(pi / m_{s,t})` with the convention `pi/inf = 0`.
    pub fn symmetric(system: &CoxeterSystem) -> Result<Self, KError> {
        let n = system.rank();
        let mut table = vec![vec![QuadScalar::zero(); n]; n];
        for s in 0..n {
            for t in 0..n {
                if s == t {
                    table[s][t] = QuadScalar::from_integer(-2);
                    continue;
                }
                let m = system.bond(s, t);
                let val = match m {
                    Bond::Finite(k) => QuadScalar::two_cos_pi_over(Some(k)),
                    Bond::Infinite => QuadScalar::two_cos_pi_over(None),
                };
                table[s][t] = val.ok_or_else(|| {
                    KError::UnsupportedBond(
                        m,
                        system.generators[s].clone(),
                        system.generators[t].clone(),
                        KMode::Symmetric,
                    )
                })?;
            }
        }
        Ok(Self::from_fn(n, KMode::Symmetric, |s, t| table[s][t].clone()))
    }
}

/// K for the contracted system, derived from the original K by the sum rule.
/// Entry order follows the contracted system's generator list.
pub fn contracted_k<S: Scalar>(k: &KMatrix<S>, contraction: &Contraction) -> KMatrix<S> {
    let dim = contraction.system.rank();
    let p = contraction.plus_index;
    let m = contraction.minus_index;
    KMatrix::from_fn(dim, k.mode, |a, b| {
        match (contraction.parent_index[a], contraction.parent_index[b]) {
            (Some(i), Some(j)) => k.entry(i, j).clone(),
            (None, Some(j)) => k.entry(p, j).add(k.entry(m, j)),
            (Some(i), None) => k.entry(i, p).add(k.entry(i, m)),
            (None, None) => S::from_int(-2),
        }
    })
}
