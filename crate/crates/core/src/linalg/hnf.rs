//! Row-style Hermite normal form for integer lattices.
//!
//! The result is in row echelon form with positive pivots and the entries
//! above each pivot reduced into `[0, pivot)`; zero rows are dropped, so
//! the output rows are a canonical basis of the row lattice.

use super::{abs, IntegerMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn hermite_normal_form(m: &IntegerMatrix) -> IntegerMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let ncols = m.cols();
    let mut top = 0usize;

    for col in 0..ncols {
        if top >= rows.len() {
            break;
        }
        // Repeatedly reduce the column below `top` by its smallest nonzero
        // entry until a single nonzero remains.
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for (i, row) in rows.iter().enumerate().skip(top) {
                if row[col].is_zero() {
                    continue;
                }
                let a = abs(&row[col]);
                match &best {
                    Some((_, b)) if *b <= a => {}
                    _ => best = Some((i, a)),
                }
            }
            let Some((piv, _)) = best else { break };
            rows.swap(top, piv);
            let mut any_left = false;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                if !q.is_zero() {
                    for j in 0..ncols {
                        let v = &rows[i][j] - &q * &rows[top][j];
                        rows[i][j] = v;
                    }
                }
                if !rows[i][col].is_zero() {
                    any_left = true;
                }
            }
            if !any_left {
                // normalize pivot sign, reduce entries above
                if rows[top][col].is_negative() {
                    for v in rows[top].iter_mut() {
                        *v = -std::mem::take(v);
                    }
                }
                let pivot = rows[top][col].clone();
                for i in 0..top {
                    let q = rows[i][col].div_floor(&pivot);
                    if !q.is_zero() {
                        for j in 0..ncols {
                            let v = &rows[i][j] - &q * &rows[top][j];
                            rows[i][j] = v;
                        }
                    }
                }
                top += 1;
                break;
            }
        }
    }

    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    let out_rows = rows.len();
    let mut out = IntegerMatrix::zero(out_rows, ncols);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, v) in r.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

/// Expresses `v` in the HNF basis if it lies in the lattice; returns the
/// integer coordinates, or None if `v` is outside.
pub fn lattice_coordinates(hnf: &IntegerMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), hnf.cols());
    let mut rem: Vec<BigInt> = v.to_vec();
    let mut coords = vec![BigInt::zero(); hnf.rows()];
    for i in 0..hnf.rows() {
        let lead = (0..hnf.cols()).find(|&j| !hnf.get(i, j).is_zero())?;
        let (q, r) = rem[lead].div_rem(hnf.get(i, lead));
        if !r.is_zero() {
            return None;
        }
        for j in 0..hnf.cols() {
            let x = &rem[j] - &q * hnf.get(i, j);
            rem[j] = x;
        }
        coords[i] = q;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(coords)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_simple_lattice() {
        // rows (2, 4) and (2, 0) span the lattice with HNF [[2,0],[0,4]]
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![2, 0]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h, IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
    }

    #[test]
    fn hnf_drops_zero_rows_and_fixes_signs() {
        let m = IntegerMatrix::from_rows(&[vec![0, 0], vec![-3, 0], vec![3, 0]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h, IntegerMatrix::from_rows(&[vec![3, 0]]));
    }

    #[test]
    fn coordinates_recover_members() {
        let m = IntegerMatrix::from_rows(&[vec![2, 1, 0], vec![0, 3, 1]]);
        let h = hermite_normal_form(&m);
        let v: Vec<BigInt> = vec![BigInt::from(2), BigInt::from(4), BigInt::from(1)];
        let c = lattice_coordinates(&h, &v).expect("member");
        // reconstruct
        let mut back = vec![BigInt::zero(); 3];
        for (i, q) in c.iter().enumerate() {
            for j in 0..3 {
                back[j] += q * h.get(i, j);
            }
        }
        assert_eq!(back, v);
        // non-member
        let w = vec![BigInt::from(1), BigInt::zero(), BigInt::zero()];
        assert!(lattice_coordinates(&h, &w).is_none());
    }
}
