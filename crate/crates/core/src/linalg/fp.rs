//! Dense linear algebra over the prime field 𝔽_p.

use super::IntegerMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("modulus {0} is not prime")]
pub struct NonPrimeModulus(pub u64);

/// Deterministic Miller–Rabin, exact for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for every 64-bit integer.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a ≠ 0 mod p
    pow_mod(a, p - 2, p)
}

fn reduce_entries(m: &IntegerMatrix, p: u64) -> Vec<Vec<u64>> {
    let modulus = BigInt::from(p);
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|v| v.mod_floor(&modulus).to_u64().expect("residue fits in u64"))
                .collect()
        })
        .collect()
}

/// In-place reduced row echelon form; returns the pivot columns.
fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..nrows {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let sub = mul_mod(f, rows[r][j], p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of `m` over the field with `p` elements.
pub fn rank_mod_p(m: &IntegerMatrix, p: u64) -> Result<usize, NonPrimeModulus> {
    if !is_prime(p) {
        return Err(NonPrimeModulus(p));
    }
    let mut rows = reduce_entries(m, p);
    Ok(rref(&mut rows, p).len())
}

/// Canonical basis of the left null space `{x : x·m = 0}` over 𝔽_p,
/// derived from the RREF of mᵀ with free variables in increasing order.
pub fn left_nullspace_mod_p(m: &IntegerMatrix, p: u64) -> Result<Vec<Vec<u64>>, NonPrimeModulus> {
    if !is_prime(p) {
        return Err(NonPrimeModulus(p));
    }
    let mt = m.transpose();
    let mut rows = reduce_entries(&mt, p);
    let pivots = rref(&mut rows, p);
    let n = m.rows(); // dimension of the x-space
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut x = vec![0u64; n];
        x[free] = 1;
        for (c, slot) in pivot_set.iter().enumerate() {
            if let Some(r) = slot {
                // pivot column c: value = -rref[r][free]
                let v = rows[*r][free];
                if v != 0 {
                    x[c] = p - v;
                }
            }
        }
        basis.push(x);
    }
    Ok(basis)
}

/// Span dimension of a set of 𝔽_p vectors (consumed by the group-ring
/// augmentation chains).
pub(crate) fn span_rank(vectors: &[Vec<u64>], p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = vectors.to_vec();
    rref(&mut rows, p).len()
}

/// Row-reduce a set of 𝔽_p vectors to a canonical (RREF) basis.
pub(crate) fn span_basis(vectors: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = vectors.to_vec();
    let pivots = rref(&mut rows, p);
    rows.truncate(pivots.len());
    rows
}

pub(crate) fn mul_mod_pub(a: u64, b: u64, m: u64) -> u64 {
    mul_mod(a, b, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(97));
        assert!(is_prime(4294967311)); // > 2^32
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(91)); // 7·13
    }

    #[test]
    fn rank_examples() {
        // [[2]] mod 2 → 0
        assert_eq!(rank_mod_p(&IntegerMatrix::from_rows(&[vec![2]]), 2).unwrap(), 0);
        // [[1,1],[1,1]] mod 2 → 1
        let m = IntegerMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 1);
        // negative entries reduce into [0, p)
        let m = IntegerMatrix::from_rows(&[vec![-1, 1], vec![1, -1]]);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 1);
    }

    #[test]
    fn non_prime_rejected() {
        let m = IntegerMatrix::identity(2);
        assert_eq!(rank_mod_p(&m, 6), Err(NonPrimeModulus(6)));
    }

    #[test]
    fn mod_p_rank_never_exceeds_rational_rank() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let rows = (next() % 4 + 1) as usize;
            let cols = (next() % 4 + 1) as usize;
            let mut m = IntegerMatrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, BigInt::from((next() % 9) as i64 - 4));
                }
            }
            let p = [2u64, 3, 5][(next() % 3) as usize];
            assert!(rank_mod_p(&m, p).unwrap() <= crate::linalg::rank_rational(&m));
        }
    }

    #[test]
    fn left_nullspace_annihilates() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0, 2], vec![0, 3, 2]]);
        for p in [2u64, 3, 5] {
            let basis = left_nullspace_mod_p(&m, p).unwrap();
            assert_eq!(basis.len() + rank_mod_p(&m, p).unwrap(), m.rows());
            for x in &basis {
                for j in 0..m.cols() {
                    let mut acc = 0u64;
                    for i in 0..m.rows() {
                        let e = m.get(i, j).mod_floor(&BigInt::from(p)).to_u64().unwrap();
                        acc = (acc + mul_mod(x[i], e, p)) % p;
                    }
                    assert_eq!(acc, 0);
                }
            }
        }
    }

    #[test]
    fn nullspace_of_empty_relator_set_is_standard_basis() {
        // k×0 matrix: every vector annihilates; canonical basis = identity
        let m = IntegerMatrix::zero(2, 0);
        let basis = left_nullspace_mod_p(&m, 2).unwrap();
        assert_eq!(basis, vec![vec![1, 0], vec![0, 1]]);
    }
}
