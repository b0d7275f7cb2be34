//! Affine permutations in window notation and plain finite permutations.
//!
//! An affine permutation of rank `r` is a bijection `f` of the integers with
//! `f(i + r) = f(i) + r`, stored as the window `[f(1), ..., f(r)]`. The
//! residues of the window mod `r` are a permutation of `{1..r}`, so the
//! average displacement `shift = (sum f(i) - i) / r` is always an integer;
//! the non-extended affine symmetric group is the shift-zero part, and the
//! rotation element has window `[2, 3, ..., r+1]`.

use std::fmt;

/// Extended affine permutation in window notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffPerm {
    window: Vec<i64>,
}

impl AffPerm {
    pub fn identity(rank: usize) -> Self {
        Self {
            window: (1..=rank as i64).collect(),
        }
    }

    /// The rotation: `i -> i + 1`, window `[2, 3, ..., r+1]`, shift 1.
    pub fn rotation(rank: usize) -> Self {
        Self {
            window: (2..=rank as i64 + 1).collect(),
        }
    }

    /// The simple reflection `s_i` for `i` in `1..=rank`; `s_rank` is the
    /// affine one, swapping `rank` and `rank + 1` periodically.
    pub fn simple(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank);
        let mut w = Self::identity(rank);
        w.swap_positions(i);
        w
    }

    pub fn from_window(window: Vec<i64>) -> Result<Self, String> {
        let r = window.len() as i64;
        if r == 0 {
            return Err("empty window".into());
        }
        let mut seen = vec![false; r as usize];
        for &x in &window {
            let residue = (x - 1).rem_euclid(r) as usize;
            if seen[residue] {
                return Err(format!("window {window:?} repeats residue {}", residue + 1));
            }
            seen[residue] = true;
        }
        Ok(Self { window })
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &x)| x == i as i64 + 1)
    }

    /// Evaluate at any integer through periodicity.
    pub fn eval(&self, i: i64) -> i64 {
        let r = self.rank() as i64;
        let idx = (i - 1).rem_euclid(r) as usize;
        let q = (i - 1).div_euclid(r);
        self.window[idx] + q * r
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        Self {
            window: (1..=self.rank() as i64).map(|i| self.eval(other.eval(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let r = self.rank() as i64;
        let mut window = vec![0; self.rank()];
        for i in 1..=r {
            let v = self.window[(i - 1) as usize];
            let residue = (v - 1).rem_euclid(r);
            let q = (v - 1).div_euclid(r);
            // self(i) = v means inverse(v) = i, extended periodically to the
            // residue representative.
            window[residue as usize] = i - q * r;
        }
        Self { window }
    }

    /// Integer average displacement; `rho^k` has shift `k`.
    pub fn shift(&self) -> i64 {
        let r = self.rank() as i64;
        let total: i64 = self
            .window
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (i as i64 + 1))
            .sum();
        debug_assert_eq!(total.rem_euclid(r), 0);
        total / r
    }

    /// Coxeter length: `sum_{1<=i<j<=r} |floor((f(j) - f(i)) / r)|`; zero on
    /// rotation powers.
    pub fn length(&self) -> usize {
        let r = self.rank() as i64;
        let mut total = 0i64;
        for i in 0..self.rank() {
            for j in (i + 1)..self.rank() {
                total += ((self.window[j] - self.window[i]).div_euclid(r)).abs();
            }
        }
        total as usize
    }

    /// `ell(f s_i) < ell(f)` iff `f(i) > f(i+1)` (periodically at `i = r`).
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.eval(i as i64) > self.eval(i as i64 + 1)
    }

    fn swap_positions(&mut self, i: usize) {
        let r = self.rank();
        if i < r {
            self.window.swap(i - 1, i);
        } else {
            // precompose with the affine transposition of r and r + 1
            let first = self.window[0];
            let last = self.window[r - 1];
            self.window[r - 1] = first + r as i64;
            self.window[0] = last - r as i64;
        }
    }

    /// Right multiplication by `s_i`.
    pub fn mul_simple(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.swap_positions(i);
        out
    }

    /// Right multiplication by the `k`-th rotation power.
    pub fn mul_rotation(&self, k: i64) -> Self {
        Self {
            window: (1..=self.rank() as i64).map(|i| self.eval(i + k)).collect(),
        }
    }

    /// Split as `u . rho^k` with `u` of shift zero, returning `(word of u, k)`
    /// where the word multiplies left to right. Deterministic: always strips
    /// the smallest right descent.
    pub fn canonical_decomposition(&self) -> (Vec<usize>, i64) {
        let k = self.shift();
        let mut u = self.mul_rotation(-k);
        debug_assert_eq!(u.shift(), 0);
        let mut letters = Vec::new();
        while !u.is_identity() {
            let i = (1..=self.rank())
                .find(|&i| u.has_right_descent(i))
                .expect("non-identity shift-zero element has a descent");
            u = u.mul_simple(i);
            letters.push(i);
        }
        letters.reverse();
        (letters, k)
    }

    /// Window rendering, e.g. `[2,3,4]`.
    pub fn render(&self) -> String {
        let body: Vec<String> = self.window.iter().map(|x| x.to_string()).collect();
        format!("[{}]", body.join(","))
    }
}

impl fmt::Display for AffPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Finite permutation in one-line notation, values `1..=r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinPerm {
    one_line: Vec<usize>,
}

impl FinPerm {
    pub fn identity(rank: usize) -> Self {
        Self {
            one_line: (1..=rank).collect(),
        }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i < rank);
        let mut p = Self::identity(rank);
        p.one_line.swap(i - 1, i);
        p
    }

    pub fn rank(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn length(&self) -> usize {
        let n = self.rank();
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.one_line[i] > self.one_line[j])
            .count()
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.one_line[i - 1] > self.one_line[i]
    }

    pub fn mul_simple(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.one_line.swap(i - 1, i);
        out
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            one_line: (1..=self.rank()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    /// Reduced word multiplying left to right, smallest-descent-first.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut u = self.clone();
        let mut letters = Vec::new();
        while !u.is_identity() {
            let i = (1..u.rank())
                .find(|&i| u.has_right_descent(i))
                .expect("non-identity permutation has a descent");
            u = u.mul_simple(i);
            letters.push(i);
        }
        letters.reverse();
        letters
    }

    pub fn render(&self) -> String {
        let body: Vec<String> = self.one_line.iter().map(|x| x.to_string()).collect();
        body.join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_properties() {
        let rho = AffPerm::rotation(3);
        assert_eq!(rho.shift(), 1);
        assert_eq!(rho.length(), 0);
        assert_eq!(rho.render(), "[2,3,4]");
        let rho_inv = rho.inverse();
        assert!(rho.compose(&rho_inv).is_identity());
        assert_eq!(rho_inv.shift(), -1);
    }

    #[test]
    fn simple_reflections() {
        for r in [2usize, 3, 5] {
            for i in 1..=r {
                let s = AffPerm::simple(r, i);
                assert_eq!(s.length(), 1, "s_{i} in rank {r}");
                assert_eq!(s.shift(), 0);
                assert!(s.compose(&s).is_identity());
            }
        }
        // the affine reflection's window
        assert_eq!(AffPerm::simple(3, 3).render(), "[0,2,4]");
    }

    #[test]
    fn rotation_conjugates_simples() {
        // rho s_i rho^{-1} = s_{i+1 mod r}
        let r = 4;
        let rho = AffPerm::rotation(r);
        for i in 1..=r {
            let lhs = rho.compose(&AffPerm::simple(r, i)).compose(&rho.inverse());
            let next = if i == r { 1 } else { i + 1 };
            assert_eq!(lhs, AffPerm::simple(r, next));
        }
    }

    #[test]
    fn descent_matches_length() {
        let r = 3;
        let f = AffPerm::simple(r, 1)
            .compose(&AffPerm::simple(r, 2))
            .compose(&AffPerm::simple(r, 3));
        for i in 1..=r {
            let fl = f.length() as i64;
            let fsl = f.mul_simple(i).length() as i64;
            assert_eq!(
                f.has_right_descent(i),
                fsl < fl,
                "descent vs length at {i}"
            );
            assert_eq!((fl - fsl).abs(), 1);
        }
    }

    #[test]
    fn canonical_decomposition_round_trip() {
        let r = 3;
        let samples = [
            AffPerm::rotation(r),
            AffPerm::rotation(r).inverse(),
            AffPerm::simple(r, 2).compose(&AffPerm::rotation(r)),
            AffPerm::from_window(vec![5, 1, 0]).unwrap(),
            AffPerm::from_window(vec![7, -1, 3]).unwrap(),
        ];
        for f in samples {
            let (word, k) = f.canonical_decomposition();
            let mut rebuilt = AffPerm::identity(r);
            for &i in &word {
                rebuilt = rebuilt.mul_simple(i);
            }
            rebuilt = rebuilt.mul_rotation(k);
            assert_eq!(rebuilt, f, "round trip of {}", f.render());
            assert_eq!(word.len(), f.length(), "word length of {}", f.render());
        }
    }

    #[test]
    fn window_validation() {
        assert!(AffPerm::from_window(vec![1, 3]).is_err()); // residues collide
        assert!(AffPerm::from_window(vec![1, 4]).is_ok()); // shift-1 element
        assert!(AffPerm::from_window(vec![3, 2, 7]).is_ok());
    }

    #[test]
    fn finite_permutations() {
        let p = FinPerm::simple(3, 1).compose(&FinPerm::simple(3, 2));
        assert_eq!(p.length(), 2);
        let word = p.canonical_word();
        let mut rebuilt = FinPerm::identity(3);
        for &i in &word {
            rebuilt = rebuilt.mul_simple(i);
        }
        assert_eq!(rebuilt, p);
        assert!(p.compose(&p).compose(&p).is_identity());
    }
}
