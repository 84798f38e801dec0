//! Fox derivatives of free-group words and their evaluation as exact
//! matrices through a coset action.
//!
//! The derivative satisfies ∂_i(g_j) = δ_ij, ∂_i(g_j⁻¹) = −δ_ij·g_j⁻¹ and
//! the product rule ∂_i(uv) = ∂_i(u) + u·∂_i(v).  Support counts are taken
//! after cancellation in ℤ[F_k]; cancellation only shrinks support, so the
//! bounds consuming them stay valid.

use crate::coset::CosetTable;
use crate::linalg::IntegerMatrix;
use crate::words::Word;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of the free group ring ℤ[F_k]: finitely many words with
/// nonzero integer coefficients, kept in shortlex order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl FreeRingElement {
    pub fn zero() -> Self {
        FreeRingElement::default()
    }

    pub fn one() -> Self {
        FreeRingElement::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, BigInt::one());
        FreeRingElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, BigInt)>>(iter: I) -> Self {
        let mut e = FreeRingElement::zero();
        for (w, c) in iter {
            e.add_term(w, c);
        }
        e
    }

    fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms, after cancellation in ℤ[F_k].
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }
}

impl Add for &FreeRingElement {
    type Output = FreeRingElement;
    fn add(self, rhs: &FreeRingElement) -> FreeRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FreeRingElement {
    type Output = FreeRingElement;
    fn sub(self, rhs: &FreeRingElement) -> FreeRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &FreeRingElement {
    type Output = FreeRingElement;
    fn neg(self) -> FreeRingElement {
        FreeRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &FreeRingElement {
    type Output = FreeRingElement;
    fn mul(self, rhs: &FreeRingElement) -> FreeRingElement {
        let mut out = FreeRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

/// The i-th Fox derivative of a word.
///
/// Each positive occurrence of g_i contributes the prefix before it with
/// coefficient +1; each negative occurrence contributes the prefix
/// *including* the inverse letter with coefficient −1.
pub fn fox_derivative(w: &Word, i: usize) -> FreeRingElement {
    let mut out = FreeRingElement::zero();
    let mut prefix = Word::empty();
    for &l in w.letters() {
        if l.gen == i {
            if !l.inverse {
                out.add_term(prefix.clone(), BigInt::one());
            } else {
                out.add_term(prefix.concat(&Word::from_letters([l])), -BigInt::one());
            }
        }
        prefix = prefix.concat(&Word::from_letters([l]));
    }
    out
}

/// Evaluates a free-ring element through a coset action:
/// Σ coefficient × permutation matrix of the term's word, with the matrix
/// convention of [`CosetTable::permutation_matrix`] (column c ↦ row c·w).
pub fn evaluate(e: &FreeRingElement, t: &CosetTable) -> IntegerMatrix {
    let n = t.size();
    let mut m = IntegerMatrix::zero(n, n);
    for (w, c) in e.terms() {
        let perm = t.word_permutation(w);
        for (col, &row) in perm.iter().enumerate() {
            let v = m.get(row as usize, col) + c;
            m.set(row as usize, col, v);
        }
    }
    m
}

/// `g_i − 1` as a ring element.
pub fn generator_minus_one(i: usize) -> FreeRingElement {
    FreeRingElement::from_terms([
        (Word::generator(i), BigInt::one()),
        (Word::empty(), -BigInt::one()),
    ])
}

/// Left-hand side Σ_i ∂_i(w)(g_i − 1) of the fundamental Fox identity for
/// `w` over `k` generators; equals `w − 1` for every word.
pub fn fox_identity_lhs(w: &Word, k: usize) -> FreeRingElement {
    let mut acc = FreeRingElement::zero();
    for i in 0..k {
        let d = fox_derivative(w, i);
        acc = &acc + &(&d * &generator_minus_one(i));
    }
    acc
}
