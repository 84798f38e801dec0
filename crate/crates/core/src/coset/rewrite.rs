//! Reidemeister–Schreier rewriting: a presentation of the subgroup realized
//! by a coset table.
//!
//! The Schreier transversal comes from the deterministic BFS spanning tree.
//! Subgroup generators are the Schreier generators x_{c,g} = τ(c)·g·τ(c·g)⁻¹
//! with the tree pairs (freely trivial generators) eliminated; relators are
//! the rewrites of τ(c)·r·τ(c)⁻¹ for every relator r and coset c.  No
//! further simplification is attempted.

use super::{column_letters, rewrite_subgroup_transversal, CosetTable};
use crate::words::{Letter, Presentation, Word};

/// A presentation of the stabilizer of coset 0, together with the data
/// linking it back to the ambient group.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    /// Presentation of H on the surviving Schreier generators.
    pub presentation: Presentation,
    /// H-generator index → defining word in the ambient generators.
    pub inclusion: Vec<Word>,
    /// Coset → representative word; entry 0 is the empty word.
    pub schreier_transversal: Vec<Word>,
    /// `(coset, generator)` pair → surviving H-generator, `None` on tree
    /// pairs; indexed `c * k + g`.
    pair_generator: Vec<Option<usize>>,
}

impl SubgroupPresentation {
    /// The H-generator carried by the positive pair `(coset, gen)`, if the
    /// pair is not a spanning-tree edge.
    pub fn schreier_generator_index(&self, coset: u32, gen: usize) -> Option<usize> {
        self.pair_generator[coset as usize * self.ambient_generators() + gen]
    }

    fn ambient_generators(&self) -> usize {
        self.pair_generator.len() / self.schreier_transversal.len()
    }

    /// Rewrites a word of the ambient group that fixes `start`, as a word
    /// in the H-generators (Reidemeister rewriting along the trace).
    pub fn rewrite_word(&self, t: &CosetTable, w: &Word, start: u32) -> Word {
        let k = t.generator_count();
        let mut cur = start;
        let mut out: Vec<Letter> = Vec::new();
        for &l in w.letters() {
            if !l.inverse {
                if let Some(y) = self.pair_generator[cur as usize * k + l.gen] {
                    out.push(Letter::positive(y));
                }
                cur = t.trace_letter(l, cur);
            } else {
                cur = t.trace_letter(l, cur);
                if let Some(y) = self.pair_generator[cur as usize * k + l.gen] {
                    out.push(Letter::negative(y));
                }
            }
        }
        Word::from_letters(out)
    }
}

/// Rewrites the stabilizer of coset 0 of a complete table to a presentation
/// on Schreier generators.
pub fn rewrite_subgroup(p: &Presentation, t: &CosetTable) -> SubgroupPresentation {
    let n = t.size();
    let k = p.generator_count();
    let transversal = rewrite_subgroup_transversal(t);

    // Tree pairs: walking the BFS tree again, a discovery c --g--> d marks
    // the positive pair (c, g); a discovery via g⁻¹ marks (d, g).
    let mut is_tree = vec![false; n * k];
    {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0u32]);
        while let Some(c) = queue.pop_front() {
            for l in column_letters(k) {
                let d = t.trace_letter(l, c);
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    if !l.inverse {
                        is_tree[c as usize * k + l.gen] = true;
                    } else {
                        is_tree[d as usize * k + l.gen] = true;
                    }
                    queue.push_back(d);
                }
            }
        }
    }

    let mut pair_generator: Vec<Option<usize>> = vec![None; n * k];
    let mut inclusion: Vec<Word> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for c in 0..n {
        for g in 0..k {
            if is_tree[c * k + g] {
                continue;
            }
            let idx = inclusion.len();
            pair_generator[c * k + g] = Some(idx);
            let d = t.trace_letter(Letter::positive(g), c as u32);
            let word = transversal[c]
                .concat(&Word::generator(g))
                .concat(&transversal[d as usize].inverse());
            inclusion.push(word);
            names.push(format!("x{idx}"));
        }
    }

    let sub = SubgroupPresentation {
        presentation: Presentation::free(1), // replaced below
        inclusion,
        schreier_transversal: transversal,
        pair_generator,
    };

    // τ(c)·r·τ(c)⁻¹ rewrites to the rewrite of r traced from c, because the
    // transversal words run along tree edges and emit nothing.
    let mut relators: Vec<Word> = Vec::with_capacity(p.relators().len() * n);
    for r in p.relators() {
        for c in 0..n as u32 {
            relators.push(sub.rewrite_word(t, r, c));
        }
    }

    let presentation = Presentation::new(names, relators)
        .expect("Schreier generator count is N(k-1)+1 >= 1");
    SubgroupPresentation { presentation, ..sub }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::enumerate;

    fn parse(text: &str) -> Presentation {
        Presentation::parse(text).unwrap().0
    }

    fn word(p: &Presentation, text: &str) -> Word {
        p.parse_word(text).unwrap()
    }

    #[test]
    fn index_two_in_z() {
        let p = parse("gens: a; rels: ;");
        let t = enumerate(&p, &[word(&p, "a^2")], 100).unwrap();
        let sub = rewrite_subgroup(&p, &t);
        assert_eq!(sub.presentation.generator_count(), 1);
        assert!(sub.presentation.relators().is_empty());
        assert_eq!(sub.inclusion[0], word(&p, "a^2"));
    }

    #[test]
    fn index_one_gives_the_same_group() {
        let p = parse("gens: a,b; rels: a^2, b^3;");
        let t = enumerate(&p, &[Word::generator(0), Word::generator(1)], 100).unwrap();
        assert_eq!(t.size(), 1);
        let sub = rewrite_subgroup(&p, &t);
        assert_eq!(sub.presentation.generator_count(), 2);
        assert_eq!(sub.presentation.relators().len(), 2);
        assert_eq!(sub.inclusion, vec![Word::generator(0), Word::generator(1)]);
    }

    #[test]
    fn kernel_onto_klein_four_is_free_of_rank_five() {
        let p = parse("gens: a,b; rels: ;");
        let sub_words: Vec<Word> = ["a^2", "b^2", "b*a*b^-1*a^-1", "a*b*a*b^-1", "a*b^2*a^-1"]
            .iter()
            .map(|s| word(&p, s))
            .collect();
        let t = enumerate(&p, &sub_words, 100).unwrap();
        assert_eq!(t.size(), 4);
        let sub = rewrite_subgroup(&p, &t);
        // Nielsen–Schreier: 1 + N(k−1) = 5
        assert_eq!(sub.presentation.generator_count(), 5);
        assert!(sub.presentation.relators().is_empty());
    }

    #[test]
    fn transversal_and_inclusion_invariants() {
        let p = parse("gens: a,b; rels: a^2, b^3, (a*b)^2;");
        let t = enumerate(&p, &[], 100).unwrap();
        let sub = rewrite_subgroup(&p, &t);
        assert!(sub.schreier_transversal[0].is_empty());
        for (c, w) in sub.schreier_transversal.iter().enumerate() {
            assert_eq!(t.trace(w, 0), c as u32, "transversal word lands on its coset");
        }
        for w in &sub.inclusion {
            assert_eq!(t.trace(w, 0), 0, "inclusion words fix coset 0");
        }
    }

    #[test]
    fn schreier_generator_count_formula() {
        // free groups: count = 1 + N(k−1) exactly, no relators
        for (k, sub_words) in [
            (1usize, vec!["a^4"]),
            (2usize, vec!["a^3", "b", "a*b*a^-1", "a^2*b*a^-2"]),
        ] {
            let gens = ["a", "b", "c"][..k].join(",");
            let p = parse(&format!("gens: {gens}; rels: ;"));
            let words: Vec<Word> = sub_words.iter().map(|s| word(&p, s)).collect();
            let t = enumerate(&p, &words, 1000).unwrap();
            let n = t.size();
            let sub = rewrite_subgroup(&p, &t);
            assert_eq!(sub.presentation.generator_count(), 1 + n * (k - 1));
        }
    }
}
