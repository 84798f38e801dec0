//! Exact integer and rational matrix kernels.
//!
//! Everything here is arbitrary precision and deterministic: Smith normal
//! form with smallest-pivot selection, fraction-free (Bareiss) rank over
//! ℚ, dense Gaussian elimination over 𝔽_p, Hermite normal form for integer
//! lattices.  No floating point, no probabilistic shortcuts.

mod fp;
mod hnf;
mod smith;

pub use fp::{is_prime, left_nullspace_mod_p, rank_mod_p, NonPrimeModulus};
pub use hnf::hermite_normal_form;
pub use smith::{smith_normal_form, SmithForm};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Convenience constructor from machine integers (tests, small data).
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntegerMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = IntegerMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Copies `block` into this matrix with top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntegerMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut m = IntegerMatrix::zero(self.rows + other.rows, self.cols);
        m.data[..self.data.len()].clone_from_slice(&self.data);
        m.data[self.data.len()..].clone_from_slice(&other.data);
        m
    }

    /// Appends a single row.
    pub fn push_row(&self, row: &[BigInt]) -> IntegerMatrix {
        assert_eq!(row.len(), self.cols);
        let mut m = self.clone();
        m.rows += 1;
        m.data.extend_from_slice(row);
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Matrix product (used by small cross-checks, not hot paths).
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Rank over ℚ by fraction-free Bareiss elimination.
pub fn rank_rational(m: &IntegerMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        // first nonzero entry in this column at or below `row`
        let pivot = (row..rows).find(|&r| !a.get(r, col).is_zero());
        let Some(p) = pivot else { continue };
        if p != row {
            for j in 0..cols {
                let x = a.get(p, j).clone();
                let y = a.get(row, j).clone();
                a.set(p, j, y);
                a.set(row, j, x);
            }
        }
        let pivot_val = a.get(row, col).clone();
        for i in row + 1..rows {
            let head = a.get(i, col).clone();
            for j in col + 1..cols {
                // Bareiss update: exact division by the previous pivot.
                let v = (&pivot_val * a.get(i, j) - &head * a.get(row, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, col, BigInt::zero());
        }
        prev = pivot_val;
        row += 1;
        rank += 1;
    }
    rank
}

/// True iff `v` lies in the rational row span of `basis`.
pub fn row_space_membership(basis: &IntegerMatrix, v: &[BigInt]) -> bool {
    assert_eq!(v.len(), basis.cols(), "dimension mismatch");
    rank_rational(basis) == rank_rational(&basis.push_row(v))
}

/// Dense matrix of exact rationals; rank is computed after clearing
/// denominators row by row (which leaves the rank unchanged).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    /// Scales each row by the lcm of its denominators.
    pub fn cleared_denominators(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            let mut scale = BigInt::one();
            for j in 0..self.cols {
                scale = num_integer::lcm(scale, self.get(i, j).denom().clone());
            }
            for j in 0..self.cols {
                let r = self.get(i, j);
                m.set(i, j, r.numer() * (&scale / r.denom()));
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rank_rational(&self.cleared_denominators())
    }
}

impl std::fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Absolute value helper shared by the elimination kernels.
pub(crate) fn abs(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_permutation_matrix_is_full() {
        let mut m = IntegerMatrix::zero(4, 4);
        for (c, r) in [(0usize, 2usize), (1, 0), (2, 3), (3, 1)] {
            m.set(r, c, BigInt::one());
        }
        assert_eq!(rank_rational(&m), 4);
    }

    #[test]
    fn rank_of_proportional_rows_is_one() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(rank_rational(&m), 1);
    }

    #[test]
    fn rank_handles_zero_matrix_and_zero_columns() {
        assert_eq!(rank_rational(&IntegerMatrix::zero(3, 3)), 0);
        let m = IntegerMatrix::from_rows(&[vec![0, 1, 0], vec![0, 2, 1]]);
        assert_eq!(rank_rational(&m), 2);
    }

    #[test]
    fn membership_identity_and_zero_basis() {
        let id = IntegerMatrix::identity(3);
        let v = vec![BigInt::from(5), BigInt::from(-2), BigInt::from(7)];
        assert!(row_space_membership(&id, &v));
        let zero = IntegerMatrix::zero(2, 3);
        assert!(!row_space_membership(&zero, &v));
        assert!(row_space_membership(&zero, &[BigInt::zero(), BigInt::zero(), BigInt::zero()]));
    }

    #[test]
    fn rational_matrix_rank_clears_denominators() {
        let mut m = RationalMatrix::zero(2, 2);
        m.set(0, 0, crate::ratio::frac(1, 2));
        m.set(0, 1, crate::ratio::frac(1, 3));
        m.set(1, 0, crate::ratio::frac(3, 2));
        m.set(1, 1, crate::ratio::from_i64(1));
        assert_eq!(m.rank(), 1);
    }
}
