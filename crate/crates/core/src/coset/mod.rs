//! Coset tables: the permutation action of a finitely presented group on
//! the cosets of a finite-index subgroup.
//!
//! Tables come out of Todd–Coxeter enumeration ([`enumerate`]) or are built
//! directly by the chain machinery; either way they are complete, collapsed,
//! transitive, and numbered in breadth-first discovery order from coset 0
//! (scanning generators in declaration order, positive before negative), so
//! identical inputs give bit-identical tables.

mod enumerate;
mod rewrite;

pub use enumerate::{enumerate, EnumerationError};
pub use rewrite::{rewrite_subgroup, SubgroupPresentation};

use crate::linalg::IntegerMatrix;
use crate::words::{Letter, Presentation, Word};
use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableInvariantError {
    #[error("generator {gen} does not act as a bijection")]
    NotBijective { gen: usize },
    #[error("relator {relator} moves coset {coset}")]
    RelatorNotSatisfied { relator: usize, coset: u32 },
    #[error("subgroup word {word} does not fix coset 0")]
    SubgroupWordMoves { word: usize },
    #[error("action is not transitive: {orbits} orbits")]
    NotTransitive { orbits: usize },
}

/// Completed permutation action on the cosets of a subgroup; coset 0 is
/// the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    k: usize,
    /// `action[g][c] = c·g`
    action: Vec<Vec<u32>>,
    /// `inverse_action[g][c] = c·g⁻¹`
    inverse_action: Vec<Vec<u32>>,
    subgroup_words: Vec<Word>,
}

impl CosetTable {
    /// Builds a table from per-generator permutations, checking bijectivity.
    pub fn from_action(k: usize, action: Vec<Vec<u32>>, subgroup_words: Vec<Word>) -> Self {
        assert_eq!(action.len(), k, "one permutation per generator");
        let n = action.first().map_or(0, Vec::len);
        assert!(n > 0, "a coset table needs at least one coset");
        let mut inverse_action = vec![vec![u32::MAX; n]; k];
        for (g, perm) in action.iter().enumerate() {
            assert_eq!(perm.len(), n);
            for (c, &d) in perm.iter().enumerate() {
                assert!((d as usize) < n, "entry out of range");
                assert!(
                    inverse_action[g][d as usize] == u32::MAX,
                    "generator {g} is not a bijection"
                );
                inverse_action[g][d as usize] = c as u32;
            }
        }
        CosetTable { k, action, inverse_action, subgroup_words }
    }

    /// Index `[G:H]`.
    pub fn size(&self) -> usize {
        self.action.first().map_or(0, Vec::len)
    }

    pub fn generator_count(&self) -> usize {
        self.k
    }

    pub fn subgroup_words(&self) -> &[Word] {
        &self.subgroup_words
    }

    pub fn generator_permutation(&self, gen: usize) -> &[u32] {
        &self.action[gen]
    }

    /// Image of `c` under one letter.
    pub fn trace_letter(&self, l: Letter, c: u32) -> u32 {
        if l.inverse {
            self.inverse_action[l.gen][c as usize]
        } else {
            self.action[l.gen][c as usize]
        }
    }

    /// Image of `start` under the word, letters applied left to right.
    pub fn trace(&self, w: &Word, start: u32) -> u32 {
        let mut c = start;
        for &l in w.letters() {
            c = self.trace_letter(l, c);
        }
        c
    }

    /// The full permutation `c ↦ c·w`.
    pub fn word_permutation(&self, w: &Word) -> Vec<u32> {
        (0..self.size() as u32).map(|c| self.trace(w, c)).collect()
    }

    /// 0/1 matrix of the letter's permutation: column `c` has its 1 in row
    /// `c·g^±`.  The matrix of `g⁻¹` is the transpose of that of `g`.
    pub fn permutation_matrix(&self, gen: usize, inverse: bool) -> IntegerMatrix {
        let n = self.size();
        let mut m = IntegerMatrix::zero(n, n);
        for c in 0..n as u32 {
            let d = self.trace_letter(Letter::new(gen, inverse), c);
            m.set(d as usize, c as usize, BigInt::one());
        }
        m
    }

    /// Number of orbits of the action (1 for every valid table).
    pub fn orbit_count(&self) -> usize {
        let n = self.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in 0..self.k {
            for c in 0..n {
                let d = self.action[g][c] as usize;
                let (rc, rd) = (find(&mut parent, c), find(&mut parent, d));
                if rc != rd {
                    parent[rc.max(rd)] = rc.min(rd);
                }
            }
        }
        (0..n).filter(|&c| find(&mut parent, c) == c).count()
    }

    /// Checks every table invariant against the presentation.
    pub fn validate(&self, p: &Presentation) -> Result<(), TableInvariantError> {
        for (ri, r) in p.relators().iter().enumerate() {
            for c in 0..self.size() as u32 {
                if self.trace(r, c) != c {
                    return Err(TableInvariantError::RelatorNotSatisfied { relator: ri, coset: c });
                }
            }
        }
        for (wi, w) in self.subgroup_words.iter().enumerate() {
            if self.trace(w, 0) != 0 {
                return Err(TableInvariantError::SubgroupWordMoves { word: wi });
            }
        }
        let orbits = self.orbit_count();
        if orbits != 1 {
            return Err(TableInvariantError::NotTransitive { orbits });
        }
        Ok(())
    }

    /// True iff the stabilizer of coset 0 is normal, i.e. every Schreier
    /// generator acts as the identity permutation.
    pub fn is_normal(&self) -> bool {
        let sub = rewrite_subgroup_transversal(self);
        let n = self.size() as u32;
        for c in 0..n {
            for g in 0..self.k {
                let d = self.trace_letter(Letter::positive(g), c);
                let s = sub[c as usize]
                    .concat(&Word::generator(g))
                    .concat(&sub[d as usize].inverse());
                if (0..n).any(|x| self.trace(&s, x) != x) {
                    return false;
                }
            }
        }
        true
    }

    /// Generator permutations as a JSON array (the golden-test export).
    pub fn to_permutations_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.action
                .iter()
                .map(|perm| {
                    serde_json::Value::Array(
                        perm.iter().map(|&c| serde_json::Value::from(c)).collect(),
                    )
                })
                .collect(),
        )
    }
}

/// Canonical column order used everywhere a table is walked: generators in
/// declaration order, positive before negative.
pub(crate) fn column_letters(k: usize) -> impl Iterator<Item = Letter> {
    (0..k).flat_map(|g| [Letter::positive(g), Letter::negative(g)])
}

/// Breadth-first renumbering of a completed action so that coset 0 stays
/// fixed and discovery order is canonical.  Panics if the action is not
/// transitive.
pub(crate) fn standardize_action(k: usize, table: &CosetTable) -> CosetTable {
    let n = table.size();
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut new_of_old: Vec<u32> = vec![u32::MAX; n];
    order.push(0);
    new_of_old[0] = 0;
    let mut head = 0usize;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for l in column_letters(k) {
            let d = table.trace_letter(l, c);
            if new_of_old[d as usize] == u32::MAX {
                new_of_old[d as usize] = order.len() as u32;
                order.push(d);
            }
        }
    }
    assert_eq!(order.len(), n, "action must be transitive");
    let mut action = vec![vec![0u32; n]; k];
    for g in 0..k {
        for (old, &new) in new_of_old.iter().enumerate() {
            action[g][new as usize] = new_of_old[table.action[g][old] as usize];
        }
    }
    CosetTable::from_action(k, action, table.subgroup_words.clone())
}

/// Schreier transversal from the BFS spanning tree (tree edges in canonical
/// column order); used by both normality checking and subgroup rewriting.
pub(crate) fn rewrite_subgroup_transversal(t: &CosetTable) -> Vec<Word> {
    let n = t.size();
    let mut transversal: Vec<Option<Word>> = vec![None; n];
    transversal[0] = Some(Word::empty());
    let mut queue = std::collections::VecDeque::from([0u32]);
    while let Some(c) = queue.pop_front() {
        for l in column_letters(t.k) {
            let d = t.trace_letter(l, c);
            if transversal[d as usize].is_none() {
                let w = transversal[c as usize]
                    .as_ref()
                    .unwrap()
                    .concat(&Word::from_letters([l]));
                transversal[d as usize] = Some(w);
                queue.push_back(d);
            }
        }
    }
    transversal.into_iter().map(|w| w.expect("transitive action")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular_c2() -> CosetTable {
        CosetTable::from_action(1, vec![vec![1, 0]], vec![])
    }

    #[test]
    fn trace_of_empty_word_is_identity() {
        let t = regular_c2();
        assert_eq!(t.trace(&Word::empty(), 1), 1);
    }

    #[test]
    fn permutation_matrix_of_swap() {
        let t = regular_c2();
        let m = t.permutation_matrix(0, false);
        assert_eq!(m, IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        // transpose property and orthogonality
        let minv = t.permutation_matrix(0, true);
        assert_eq!(minv, m.transpose());
        assert_eq!(m.mul(&m.transpose()), IntegerMatrix::identity(2));
    }

    #[test]
    fn one_coset_table() {
        let t = CosetTable::from_action(1, vec![vec![0]], vec![]);
        assert_eq!(t.permutation_matrix(0, false), IntegerMatrix::identity(1));
        assert_eq!(t.orbit_count(), 1);
    }

    #[test]
    #[should_panic(expected = "not a bijection")]
    fn non_bijection_rejected() {
        CosetTable::from_action(1, vec![vec![0, 0]], vec![]);
    }
}
