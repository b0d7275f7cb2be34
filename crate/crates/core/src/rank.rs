//! Exact rank computation over the fraction field of `Z[v, v^-1]` by
//! fraction-free (Bareiss) elimination. No floating point anywhere; every
//! division in the elimination is exact by the Bareiss identity.

use num::{BigInt, BigRational, One, Zero};

use crate::laurent::LaurentPoly;

/// Rank of a matrix of Laurent polynomials over the field of fractions.
pub fn rank_over_fraction_field(matrix: &[Vec<LaurentPoly>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut a: Vec<Vec<LaurentPoly>> = matrix.to_vec();
    let mut prev = LaurentPoly::one();
    let mut rank = 0;
    let mut pivot_row = 0;
    for _step in 0..cols.min(rows) {
        // Full pivot search over the remaining submatrix.
        let mut pivot = None;
        'search: for i in pivot_row..rows {
            for j in rank..cols {
                if !a[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(pivot_row, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        let pv = a[pivot_row][rank].clone();
        for i in (pivot_row + 1)..rows {
            for j in (rank + 1)..cols {
                let num = a[i][j].mul_ref(&pv).sub_ref(&a[i][rank].mul_ref(&a[pivot_row][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly over an integral domain");
            }
            a[i][rank] = LaurentPoly::zero();
        }
        prev = pv;
        rank += 1;
        pivot_row += 1;
    }
    rank
}

/// Lower bound for the generic rank: specialize `v` to a rational point and
/// compute the exact rank over Q. Specialization can only drop the rank, so
/// a full-column-rank answer here certifies full column rank generically.
pub fn rank_at_specialization(matrix: &[Vec<LaurentPoly>], v_num: i64, v_den: i64) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let point = BigRational::new(BigInt::from(v_num), BigInt::from(v_den));
    // Clear denominators row by row: row scaling by nonzero rationals
    // preserves rank.
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for row in matrix {
        let vals: Vec<BigRational> = row.iter().map(|p| p.eval_at_rational(&point)).collect();
        let mut denom = BigInt::one();
        for x in &vals {
            denom = num::integer::lcm(denom, x.denom().clone());
        }
        a.push(
            vals.iter()
                .map(|x| x.numer() * (&denom / x.denom()))
                .collect(),
        );
    }
    bareiss_rank_int(&mut a, cols)
}

fn bareiss_rank_int(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut pivot_row = 0;
    for _ in 0..cols.min(rows) {
        let mut pivot = None;
        'search: for i in pivot_row..rows {
            for j in rank..cols {
                if !a[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(pivot_row, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        let pv = a[pivot_row][rank].clone();
        for i in (pivot_row + 1)..rows {
            for j in (rank + 1)..cols {
                let num = &a[i][j] * &pv - &a[i][rank] * &a[pivot_row][j];
                let (q, r) = num::Integer::div_rem(&num, &prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
            a[i][rank] = BigInt::zero();
        }
        prev = pv;
        rank += 1;
        pivot_row += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> LaurentPoly {
        LaurentPoly::constant(n)
    }

    fn v(k: i64) -> LaurentPoly {
        LaurentPoly::v_pow(k)
    }

    #[test]
    fn identity_rank() {
        let id = vec![
            vec![c(1), c(0), c(0)],
            vec![c(0), c(1), c(0)],
            vec![c(0), c(0), c(1)],
        ];
        assert_eq!(rank_over_fraction_field(&id), 3);
    }

    #[test]
    fn proportional_rows_rank_one() {
        // second row = v^-1 * first row
        let m = vec![vec![v(1), v(2)], vec![c(1), v(1)]];
        assert_eq!(rank_over_fraction_field(&m), 1);
    }

    #[test]
    fn nonzero_determinant_rank_two() {
        // det = (v - v^-1) v - 0 = v^2 - 1, nonzero
        let m = vec![
            vec![LaurentPoly::v_minus_vinv(), c(1)],
            vec![c(0), v(1)],
        ];
        assert_eq!(rank_over_fraction_field(&m), 2);
    }

    #[test]
    fn invariant_under_row_swap_and_unit_scaling() {
        let m = vec![
            vec![v(1), c(2), v(-1)],
            vec![c(0), LaurentPoly::v_minus_vinv(), c(1)],
            vec![v(1), c(2), v(-1)],
        ];
        let r = rank_over_fraction_field(&m);
        let mut swapped = m.clone();
        swapped.swap(0, 1);
        assert_eq!(rank_over_fraction_field(&swapped), r);
        let scaled: Vec<Vec<LaurentPoly>> = m
            .iter()
            .map(|row| row.iter().map(|p| p.mul_ref(&v(3))).collect())
            .collect();
        assert_eq!(rank_over_fraction_field(&scaled), r);
        assert_eq!(r, 2);
    }

    #[test]
    fn specialization_is_a_lower_bound() {
        // det = 2v(v - 2): the point v = 2 drops the rank, any other point
        // does not.
        let m = vec![
            vec![v(1), c(2), v(-1)],
            vec![c(0), LaurentPoly::v_minus_vinv(), c(1)],
            vec![v(2), c(4), c(1)],
        ];
        let generic = rank_over_fraction_field(&m);
        assert_eq!(generic, 3);
        assert_eq!(rank_at_specialization(&m, 2, 1), 2);
        assert_eq!(rank_at_specialization(&m, 3, 1), generic);
        assert!(rank_at_specialization(&m, 2, 1) <= generic);
    }
}
