//! Todd–Coxeter coset enumeration, HLT strategy.
//!
//! Relator scanning with fill-in, coincidence handling through a union-find
//! with an immediately processed merge queue, and a full lookahead pass
//! (scan without fill) followed by table compaction when the coset cap is
//! hit.  A final standardization pass renumbers cosets in BFS order, so the
//! output is deterministic across runs and platforms.

use super::{standardize_action, CosetTable};
use crate::words::{Presentation, Word};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    /// The enumeration needed more cosets than allowed.  The index may be
    /// infinite or just larger than the cap; increase the cap or treat the
    /// subgroup as infinite-index.
    #[error("coset limit {max_cosets} exceeded; index may be infinite")]
    CosetLimitExceeded { max_cosets: usize },
    #[error("subgroup word uses generator {gen}, but the presentation has {count}")]
    GeneratorOutOfRange { gen: usize, count: usize },
}

const UNDEF: u32 = u32::MAX;

/// Signals that a definition would exceed the cap; the main loop reacts
/// with lookahead + compaction.
#[derive(Debug)]
struct NeedsCompaction;

struct Enumerator {
    ncols: usize,
    /// Row-major partial table; `table[c * ncols + col]`.
    table: Vec<u32>,
    /// Union-find over coset numbers; merges keep the smaller index.
    parent: Vec<u32>,
    alive: usize,
    max_cosets: usize,
    merge_queue: VecDeque<(u32, u32)>,
}

/// Column index of a letter: generators in declaration order, positive
/// before negative; `col ^ 1` is the inverse letter.
fn col_of(gen: usize, inverse: bool) -> usize {
    2 * gen + inverse as usize
}

fn word_cols(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| col_of(l.gen, l.inverse)).collect()
}

impl Enumerator {
    fn new(k: usize, max_cosets: usize) -> Self {
        let mut e = Enumerator {
            ncols: 2 * k,
            table: Vec::new(),
            parent: Vec::new(),
            alive: 0,
            max_cosets,
            merge_queue: VecDeque::new(),
        };
        e.alloc().expect("max_cosets >= 1");
        e
    }

    fn cosets(&self) -> usize {
        self.parent.len()
    }

    fn is_alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let up = self.parent[self.parent[c as usize] as usize];
            self.parent[c as usize] = up;
            c = up;
        }
        c
    }

    fn entry(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.ncols + col]
    }

    fn set_entry(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.ncols + col] = v;
    }

    /// Reads an entry, lazily replacing a dead target by its representative.
    fn lookup(&mut self, c: u32, col: usize) -> u32 {
        let e = self.entry(c, col);
        if e == UNDEF {
            return UNDEF;
        }
        let r = self.rep(e);
        if r != e {
            self.set_entry(c, col, r);
        }
        r
    }

    fn alloc(&mut self) -> Result<u32, NeedsCompaction> {
        if self.cosets() >= self.max_cosets {
            return Err(NeedsCompaction);
        }
        let c = self.cosets() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.alive += 1;
        Ok(c)
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, NeedsCompaction> {
        let d = self.alloc()?;
        self.set_entry(c, col, d);
        self.set_entry(d, col ^ 1, c);
        Ok(d)
    }

    /// Records the fact `c·col = d`, queueing a coincidence if a different
    /// image is already present.
    fn deduce_edge(&mut self, c: u32, col: usize, d: u32) {
        let c = self.rep(c);
        let d = self.rep(d);
        let ex = self.lookup(c, col);
        if ex == UNDEF {
            self.set_entry(c, col, d);
        } else if ex != d {
            self.merge_queue.push_back((ex, d));
        }
        let ex = self.lookup(d, col ^ 1);
        if ex == UNDEF {
            self.set_entry(d, col ^ 1, c);
        } else if ex != c {
            self.merge_queue.push_back((ex, c));
        }
    }

    /// Merges two cosets and drains the resulting coincidence queue.
    fn coincide(&mut self, a: u32, b: u32) {
        self.merge_queue.push_back((a, b));
        while let Some((a, b)) = self.merge_queue.pop_front() {
            let a = self.rep(a);
            let b = self.rep(b);
            if a == b {
                continue;
            }
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.parent[kill as usize] = keep;
            self.alive -= 1;
            for col in 0..self.ncols {
                let d = self.entry(kill, col);
                if d != UNDEF {
                    self.set_entry(kill, col, UNDEF);
                    self.deduce_edge(keep, col, d);
                }
            }
        }
    }

    /// Scans word `w` from `start`, filling gaps with new cosets.  `start`
    /// must be alive; the scan always closes.
    fn scan_and_fill(&mut self, start: u32, w: &[usize]) -> Result<(), NeedsCompaction> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = start;
        let mut i = 0usize;
        let mut b = start;
        let mut j = w.len();
        loop {
            while i < j {
                let t = self.lookup(f, w[i]);
                if t == UNDEF {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            while j > i {
                let t = self.lookup(b, w[j - 1] ^ 1);
                if t == UNDEF {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincide(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                // single gap: deduction closes the scan
                self.deduce_edge(f, w[i], b);
                return Ok(());
            }
            f = self.define(f, w[i])?;
            i += 1;
        }
    }

    /// Scan without fill: only complete scans produce deductions or
    /// coincidences; incomplete scans are abandoned.
    fn scan_no_fill(&mut self, start: u32, w: &[usize]) {
        if w.is_empty() {
            return;
        }
        let mut f = start;
        let mut i = 0usize;
        let mut b = start;
        let mut j = w.len();
        while i < j {
            let t = self.lookup(f, w[i]);
            if t == UNDEF {
                break;
            }
            f = t;
            i += 1;
        }
        if i == j {
            if f != b {
                self.coincide(f, b);
            }
            return;
        }
        while j > i {
            let t = self.lookup(b, w[j - 1] ^ 1);
            if t == UNDEF {
                break;
            }
            b = t;
            j -= 1;
        }
        if j == i {
            if f != b {
                self.coincide(f, b);
            }
        } else if j == i + 1 {
            self.deduce_edge(f, w[i], b);
        }
    }

    /// Full lookahead: scan every relator at every live coset without
    /// defining anything, collapsing what can be collapsed.
    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0u32;
        while (c as usize) < self.cosets() {
            if self.is_alive(c) {
                for r in relators {
                    self.scan_no_fill(c, r);
                    if !self.is_alive(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }

    /// Renumbers live cosets consecutively, dropping dead rows.
    fn compact(&mut self) {
        let old = self.cosets();
        let mut new_of_old: Vec<u32> = vec![UNDEF; old];
        let mut next = 0u32;
        for c in 0..old as u32 {
            if self.is_alive(c) {
                new_of_old[c as usize] = next;
                next += 1;
            }
        }
        let mut table = vec![UNDEF; next as usize * self.ncols];
        for c in 0..old as u32 {
            if !self.is_alive(c) {
                continue;
            }
            let nc = new_of_old[c as usize];
            for col in 0..self.ncols {
                let e = self.entry(c, col);
                if e != UNDEF {
                    let r = self.rep(e);
                    table[nc as usize * self.ncols + col] = new_of_old[r as usize];
                }
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.alive = next as usize;
    }

    /// Lookahead + compaction after the cap was hit.  Fails if nothing can
    /// be reclaimed.
    fn reclaim(&mut self, relators: &[Vec<usize>]) -> Result<(), EnumerationError> {
        self.lookahead(relators);
        if self.cosets() == self.alive {
            return Err(EnumerationError::CosetLimitExceeded { max_cosets: self.max_cosets });
        }
        self.compact();
        Ok(())
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` inside the
/// group presented by `p`.
///
/// On success the table is complete, collapsed, transitive, and numbered in
/// canonical BFS order.  `max_cosets` caps live + dead cosets at any moment;
/// when it is hit, a lookahead/compaction cycle tries to reclaim space
/// before giving up with [`EnumerationError::CosetLimitExceeded`].
pub fn enumerate(
    p: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, EnumerationError> {
    assert!(max_cosets >= 1, "max_cosets must be at least 1");
    let k = p.generator_count();
    for w in subgroup {
        if let Some(g) = w.max_generator() {
            if g >= k {
                return Err(EnumerationError::GeneratorOutOfRange { gen: g, count: k });
            }
        }
    }
    let relators: Vec<Vec<usize>> = p.relators().iter().map(word_cols).collect();
    let subgens: Vec<Vec<usize>> = subgroup.iter().map(word_cols).collect();

    let mut e = Enumerator::new(k, max_cosets);

    // A failed fill triggers lookahead + compaction and a restart of the
    // whole pass.  Scans are idempotent facts, so restarting is sound; the
    // cycle guard turns pathological collapse/refill churn at the cap
    // boundary into an honest overflow report.
    let mut reclaim_cycles = 0usize;
    const RECLAIM_LIMIT: usize = 64;
    'pass: loop {
        macro_rules! retry_pass {
            () => {{
                reclaim_cycles += 1;
                if reclaim_cycles > RECLAIM_LIMIT {
                    return Err(EnumerationError::CosetLimitExceeded { max_cosets });
                }
                e.reclaim(&relators)?;
                continue 'pass;
            }};
        }

        // Coset 0 is the minimal index and survives every merge.
        for w in &subgens {
            if e.scan_and_fill(0, w).is_err() {
                retry_pass!();
            }
        }

        let mut cursor = 0u32;
        while (cursor as usize) < e.cosets() {
            if e.is_alive(cursor) {
                for r in &relators {
                    if !e.is_alive(cursor) {
                        break;
                    }
                    if e.scan_and_fill(cursor, r).is_err() {
                        retry_pass!();
                    }
                }
                for col in 0..e.ncols {
                    if !e.is_alive(cursor) {
                        break;
                    }
                    if e.lookup(cursor, col) == UNDEF && e.define(cursor, col).is_err() {
                        retry_pass!();
                    }
                }
            }
            cursor += 1;
        }
        break;
    }

    // Collapse to live cosets and hand over to the canonical numbering.
    e.compact();
    let n = e.alive;
    let mut action = vec![vec![0u32; n]; k];
    for g in 0..k {
        for c in 0..n {
            let d = e.entry(c as u32, col_of(g, false));
            assert_ne!(d, UNDEF, "table incomplete after enumeration");
            action[g][c] = d;
        }
    }
    let table = CosetTable::from_action(k, action, subgroup.to_vec());
    let table = standardize_action(k, &table);
    table
        .validate(p)
        .expect("enumeration must produce a valid table");
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Presentation {
        Presentation::parse(text).unwrap().0
    }

    fn words(p: &Presentation, texts: &[&str]) -> Vec<Word> {
        texts.iter().map(|t| p.parse_word(t).unwrap()).collect()
    }

    #[test]
    fn trivial_group_has_one_coset() {
        let p = parse("gens: a; rels: a;");
        let t = enumerate(&p, &[], 100).unwrap();
        assert_eq!(t.size(), 1);
    }

    #[test]
    fn s3_regular_enumeration() {
        let p = parse("gens: a,b; rels: a^2, b^3, (a*b)^2;");
        let t = enumerate(&p, &[], 100).unwrap();
        assert_eq!(t.size(), 6);
        t.validate(&p).unwrap();
    }

    #[test]
    fn infinite_group_exceeds_cap() {
        let p = parse("gens: a; rels: ;");
        assert_eq!(
            enumerate(&p, &[], 1000),
            Err(EnumerationError::CosetLimitExceeded { max_cosets: 1000 })
        );
    }

    #[test]
    fn cyclic_subgroup_of_z() {
        let p = parse("gens: a; rels: ;");
        let sub = words(&p, &["a^2"]);
        let t = enumerate(&p, &sub, 100).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.trace(&sub[0], 0), 0);
    }

    #[test]
    fn index_four_kernel_in_f2() {
        // kernel of F₂ → (ℤ/2)², given by its five Schreier generators
        let p = parse("gens: a,b; rels: ;");
        let sub = words(&p, &["a^2", "b^2", "b*a*b^-1*a^-1", "a*b*a*b^-1", "a*b^2*a^-1"]);
        let t = enumerate(&p, &sub, 1000).unwrap();
        assert_eq!(t.size(), 4);
        assert!(t.is_normal());
    }

    #[test]
    fn q8_enumerates_to_eight() {
        let p = parse("gens: a,b; rels: a^4, a^2*b^-2, b^-1*a*b*a;");
        let t = enumerate(&p, &[], 100).unwrap();
        assert_eq!(t.size(), 8);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let p = parse("gens: a,b; rels: a^2, b^3, (a*b)^2;");
        let t1 = enumerate(&p, &[], 100).unwrap();
        let t2 = enumerate(&p, &[], 100).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn tight_cap_still_succeeds_via_lookahead() {
        // (ℤ/2)² needs intermediate cosets that collapse; generous bound 20,
        // then squeeze the cap down to the true index + small slack.
        let p = parse("gens: a,b; rels: a^2, b^2, (a*b)^2;");
        let t = enumerate(&p, &[], 20).unwrap();
        assert_eq!(t.size(), 4);
        for cap in (5..=10).rev() {
            match enumerate(&p, &[], cap) {
                Ok(t) => assert_eq!(t.size(), 4, "cap {cap}"),
                Err(EnumerationError::CosetLimitExceeded { .. }) => {}
                Err(other) => panic!("unexpected error at cap {cap}: {other}"),
            }
        }
    }

    #[test]
    fn relator_traces_close_everywhere() {
        let p = parse("gens: a,b; rels: a^3, b^3, (a*b)^2;");
        let t = enumerate(&p, &[], 1000).unwrap();
        assert_eq!(t.size(), 12); // A₄
        t.validate(&p).unwrap();
    }

    #[test]
    fn subgroup_word_out_of_range_is_rejected() {
        let p = parse("gens: a; rels: ;");
        let w = Word::generator(3);
        assert!(matches!(
            enumerate(&p, &[w], 10),
            Err(EnumerationError::GeneratorOutOfRange { gen: 3, count: 1 })
        ));
    }
}
