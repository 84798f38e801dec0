//! Smith normal form by unimodular row/column reduction.
//!
//! Pivot choice is the smallest nonzero absolute value of the remaining
//! submatrix (first occurrence in row-major order on ties), which keeps
//! entry growth in check without giving up exactness or determinism.

use super::{abs, IntegerMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Diagonal invariant factors d₁ | d₂ | … | d_r (all nonzero) of an
/// integer matrix under unimodular transformations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors, each dividing the next.
    pub diagonal: Vec<BigInt>,
    /// Number of nonzero invariant factors.
    pub rank: usize,
}

impl SmithForm {
    /// Diagonal entries different from 1 (the torsion divisors of the
    /// cokernel when the matrix presents an abelian group).
    pub fn nontrivial_divisors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d != BigInt::from(1)).cloned().collect()
    }
}

/// Position of the smallest-|value| nonzero entry of the submatrix with
/// top-left corner (t, t), scanning row-major.
fn pivot_position(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let m = abs(v);
            match &best {
                Some((_, _, b)) if *b <= m => {}
                _ => best = Some((i, j, m)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn swap_rows(a: &mut IntegerMatrix, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.cols() {
        let x = a.get(r1, j).clone();
        let y = a.get(r2, j).clone();
        a.set(r1, j, y);
        a.set(r2, j, x);
    }
}

fn swap_cols(a: &mut IntegerMatrix, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..a.rows() {
        let x = a.get(i, c1).clone();
        let y = a.get(i, c2).clone();
        a.set(i, c1, y);
        a.set(i, c2, x);
    }
}

/// row_i -= q * row_t
fn row_op(a: &mut IntegerMatrix, i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..a.cols() {
        let v = a.get(i, j) - q * a.get(t, j);
        a.set(i, j, v);
    }
}

/// col_j -= q * col_t
fn col_op(a: &mut IntegerMatrix, j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..a.rows() {
        let v = a.get(i, j) - q * a.get(i, t);
        a.set(i, j, v);
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut a = m.clone();
    let bound = a.rows().min(a.cols());
    let mut diagonal: Vec<BigInt> = Vec::new();

    let mut t = 0usize;
    while t < bound {
        let Some((pi, pj)) = pivot_position(&a, t) else { break };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);

        // Shrink the pivot until it divides its whole row, column, and the
        // remaining submatrix; each pass strictly decreases |pivot|.
        'reduce: loop {
            let pivot = a.get(t, t).clone();

            // Column entries below the pivot.
            for i in t + 1..a.rows() {
                let v = a.get(i, t).clone();
                if v.is_zero() {
                    continue;
                }
                let (q, r) = v.div_rem(&pivot);
                row_op(&mut a, i, t, &q);
                if !r.is_zero() {
                    swap_rows(&mut a, t, i);
                    continue 'reduce;
                }
            }
            // Row entries right of the pivot.
            for j in t + 1..a.cols() {
                let v = a.get(t, j).clone();
                if v.is_zero() {
                    continue;
                }
                let (q, r) = v.div_rem(&pivot);
                col_op(&mut a, j, t, &q);
                if !r.is_zero() {
                    swap_cols(&mut a, t, j);
                    continue 'reduce;
                }
            }
            // Divisibility of the remaining submatrix: fold an offending
            // row into row t and keep reducing.
            for i in t + 1..a.rows() {
                for j in t + 1..a.cols() {
                    if !a.get(i, j).mod_floor(&pivot).is_zero() {
                        for col in 0..a.cols() {
                            let v = a.get(t, col) + a.get(i, col);
                            a.set(t, col, v);
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        let d = abs(a.get(t, t));
        assert!(!d.is_zero());
        diagonal.push(d);
        t += 1;
    }

    // Divisibility chain is a structural guarantee of the elimination
    // order; check it anyway on every output.
    for w in diagonal.windows(2) {
        assert!(
            w[1].mod_floor(&w[0]).is_zero(),
            "SNF divisibility chain violated: {} does not divide {}",
            w[0],
            w[1]
        );
    }
    let rank = diagonal.len();
    SmithForm { diagonal, rank }
}
