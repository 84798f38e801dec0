//! Free-group words and the presentation data model.
//!
//! Generators are referenced by index everywhere inside the crate; names
//! exist only at the I/O boundary.  A [`Word`] is always freely reduced and
//! a [`Presentation`] stores its relators cyclically reduced, so every
//! downstream consumer (coset enumeration, Fox Jacobians, girth bounds)
//! can rely on those invariants without re-checking.

mod parse;

pub use parse::{ParseError, ParseWarning, SourcePos};

use crate::linalg::IntegerMatrix;
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// One letter of a word: a generator index together with a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    /// `true` for the inverse of the generator.
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn positive(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn negative(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    /// The inverse letter.
    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word in abstract generators.
///
/// The reduction invariant is maintained by construction: no adjacent pair
/// of mutually inverse letters ever survives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Single positive generator.
    pub fn generator(gen: usize) -> Self {
        Word { letters: vec![Letter::positive(gen)] }
    }

    /// Builds a word from a raw letter sequence, freely reducing it.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of letters of the (reduced) word.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Concatenation, reduced at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// The inverse word: letters reversed, signs flipped.
    pub fn inverse(&self) -> Word {
        // Reversing a reduced word keeps it reduced.
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Splits `w = conjugator · core · conjugator⁻¹` with a cyclically
    /// reduced core (first letter is not the inverse of the last).
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut lo = 0usize;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo].cancels(self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        let conjugator = Word { letters: self.letters[..lo].to_vec() };
        let core = Word { letters: self.letters[lo..hi].to_vec() };
        (core, conjugator)
    }

    /// Length of the cyclically reduced core.
    pub fn cyclic_len(&self) -> usize {
        self.cyclic_reduce().0.len()
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => !(f.cancels(l) && self.letters.len() >= 2),
            _ => true,
        }
    }
}

/// Shortlex: compare by length, then letter-by-letter.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Debug rendering with anonymous generator names g0, g1, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|i| format!("g{i}"))
            .collect();
        write!(f, "{}", render_word(self, &names))
    }
}

/// Renders a word over explicit generator names, with run-length exponents.
pub fn render_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        // The grammar has no empty-word literal; `x^0` reparses to it.
        return format!("{}^0", names.first().map(String::as_str).unwrap_or("x"));
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.letters.len() {
        let l = w.letters[i];
        let mut run = 1usize;
        while i + run < w.letters.len() && w.letters[i + run] == l {
            run += 1;
        }
        let name = &names[l.gen];
        let exp = if l.inverse { -(run as i64) } else { run as i64 };
        if exp == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{exp}"));
        }
        i += run;
    }
    parts.join("*")
}

/// Declared order of a normal generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    /// `1/n` with `1/∞ = 0`.
    pub fn reciprocal(&self) -> num_rational::BigRational {
        match self {
            Order::Finite(n) => crate::ratio::frac(1, *n as i64),
            Order::Infinite => crate::ratio::from_i64(0),
        }
    }
}

impl std::str::FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" || s.eq_ignore_ascii_case("infinity") {
            return Ok(Order::Infinite);
        }
        match s.parse::<u64>() {
            Ok(n) if n >= 1 => Ok(Order::Finite(n)),
            _ => Err(format!("invalid order '{s}': expected a positive integer or 'inf'")),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// Elements declared to normally generate the group, with their orders.
#[derive(Clone, Debug)]
pub struct NormalGeneratorSpec {
    pub elements: Vec<Word>,
    pub orders: Vec<Order>,
}

impl NormalGeneratorSpec {
    pub fn new(elements: Vec<Word>, orders: Vec<Order>) -> Result<Self, PresentationError> {
        if elements.len() != orders.len() {
            return Err(PresentationError::SpecLengthMismatch {
                elements: elements.len(),
                orders: orders.len(),
            });
        }
        Ok(NormalGeneratorSpec { elements, orders })
    }

    /// The presentation's own generators with the given orders.
    pub fn from_generators(k: usize, orders: Vec<Order>) -> Result<Self, PresentationError> {
        Self::new((0..k).map(Word::generator).collect(), orders)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("duplicate generator name '{0}'")]
    DuplicateName(String),
    #[error("relator {relator} uses generator index {gen}, but only {count} generators are declared")]
    GeneratorOutOfRange { relator: usize, gen: usize, count: usize },
    #[error("normal generator spec has {elements} elements but {orders} orders")]
    SpecLengthMismatch { elements: usize, orders: usize },
}

/// Generators plus relators.  Relators are stored cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation, cyclically reducing the relators.
    pub fn new<S: Into<String>>(names: Vec<S>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let generator_names: Vec<String> = names.into_iter().map(Into::into).collect();
        if generator_names.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        for (i, n) in generator_names.iter().enumerate() {
            if generator_names[..i].contains(n) {
                return Err(PresentationError::DuplicateName(n.clone()));
            }
        }
        let k = generator_names.len();
        let mut reduced = Vec::with_capacity(relators.len());
        for (ri, r) in relators.into_iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= k {
                    return Err(PresentationError::GeneratorOutOfRange { relator: ri, gen: g, count: k });
                }
            }
            reduced.push(r.cyclic_reduce().0);
        }
        Ok(Presentation { generator_names, relators: reduced })
    }

    /// A free group of rank `k` on generators g0, g1, ...
    pub fn free(k: usize) -> Self {
        Presentation::new((0..k).map(|i| format!("g{i}")).collect::<Vec<_>>(), Vec::new())
            .expect("k >= 1")
    }

    /// Parses the `.grp` grammar.  Returns the presentation together with
    /// any non-fatal warnings (degenerate relators, discarded conjugators).
    pub fn parse(text: &str) -> Result<(Self, Vec<ParseWarning>), ParseError> {
        parse::parse_presentation(text)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    /// Renders the presentation in the input grammar; `parse(render(p))`
    /// reconstructs an identical value.
    pub fn render(&self) -> String {
        let rels = self
            .relators
            .iter()
            .map(|r| render_word(r, &self.generator_names))
            .collect::<Vec<_>>()
            .join(", ");
        format!("gens: {}; rels: {};", self.generator_names.join(", "), rels)
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        render_word(w, &self.generator_names)
    }

    /// Parses a single word over this presentation's generators (freely
    /// reduced, not cyclically reduced).
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        parse::parse_word_in(&self.generator_names, text)
    }

    /// The k × |relators| matrix of generator exponent sums.
    pub fn exponent_matrix(&self) -> IntegerMatrix {
        let k = self.generator_count();
        let mut m = IntegerMatrix::zero(k, self.relators.len());
        for (j, r) in self.relators.iter().enumerate() {
            for l in r.letters() {
                let delta = if l.inverse { -1 } else { 1 };
                let e = m.get(l.gen, j) + BigInt::from(delta);
                m.set(l.gen, j, e);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(spec: &[(usize, bool)]) -> Word {
        Word::from_letters(spec.iter().map(|&(g, inv)| Letter::new(g, inv)))
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        // a·a⁻¹ → empty
        assert!(w(&[(0, false), (0, true)]).is_empty());
        // a·b·b⁻¹·a → a·a
        assert_eq!(w(&[(0, false), (1, false), (1, true), (0, false)]), w(&[(0, false), (0, false)]));
    }

    #[test]
    fn reduce_is_idempotent_on_reduced_input() {
        let v = w(&[(0, false), (1, true), (0, false)]);
        assert_eq!(Word::from_letters(v.letters().to_vec()), v);
    }

    #[test]
    fn invert_reverses_and_flips() {
        // invert(ab) = b⁻¹a⁻¹
        let ab = w(&[(0, false), (1, false)]);
        assert_eq!(ab.inverse(), w(&[(1, true), (0, true)]));
    }

    #[test]
    fn concat_reduces_at_seam() {
        // concat(ab, b⁻¹c) = ac
        let ab = w(&[(0, false), (1, false)]);
        let bc = w(&[(1, true), (2, false)]);
        assert_eq!(ab.concat(&bc), w(&[(0, false), (2, false)]));
    }

    #[test]
    fn cyclic_reduce_strips_matching_ends() {
        // b a a b⁻¹ → core aa, conjugator b
        let v = w(&[(1, false), (0, false), (0, false), (1, true)]);
        let (core, conj) = v.cyclic_reduce();
        assert_eq!(core, w(&[(0, false), (0, false)]));
        assert_eq!(conj, w(&[(1, false)]));
        // reassembly
        assert_eq!(conj.concat(&core).concat(&conj.inverse()), v);
        // lengths: 4 letters, cyclic length 2
        assert_eq!(v.len(), 4);
        assert_eq!(v.cyclic_len(), 2);
    }

    #[test]
    fn word_length_counts_letters() {
        assert_eq!(Word::empty().len(), 0);
        assert_eq!(w(&[(0, false), (1, false), (0, false), (1, false)]).len(), 4);
    }

    #[test]
    fn shortlex_order() {
        let a = w(&[(0, false)]);
        let b_inv = w(&[(1, true)]);
        let aa = w(&[(0, false), (0, false)]);
        assert!(a < b_inv); // same length, lex on (gen, sign)
        assert!(b_inv < aa); // shorter first
        assert!(w(&[(0, false)]) < w(&[(0, true)])); // positive before negative
    }

    #[test]
    fn pow_handles_signs() {
        let a = Word::generator(0);
        assert_eq!(a.pow(3).len(), 3);
        assert_eq!(a.pow(-2), a.inverse().concat(&a.inverse()));
        assert!(a.pow(0).is_empty());
    }

    #[test]
    fn presentation_cyclically_reduces_relators() {
        let r = w(&[(1, false), (0, false), (0, false), (1, true)]);
        let p = Presentation::new(vec!["a", "b"], vec![r]).unwrap();
        assert_eq!(p.relators()[0], w(&[(0, false), (0, false)]));
    }

    #[test]
    fn presentation_rejects_bad_input() {
        assert!(matches!(
            Presentation::new(Vec::<String>::new(), vec![]),
            Err(PresentationError::NoGenerators)
        ));
        assert!(matches!(
            Presentation::new(vec!["a", "a"], vec![]),
            Err(PresentationError::DuplicateName(_))
        ));
        assert!(matches!(
            Presentation::new(vec!["a"], vec![Word::generator(1)]),
            Err(PresentationError::GeneratorOutOfRange { .. })
        ));
    }

    #[test]
    fn exponent_matrix_of_s3() {
        // ⟨a,b | a², b³, (ab)²⟩ → [[2,0,2],[0,3,2]]
        let (p, _) = Presentation::parse("gens: a,b; rels: a^2, b^3, (a*b)^2;").unwrap();
        let m = p.exponent_matrix();
        let expect = [[2, 0, 2], [0, 3, 2]];
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(m.get(i, j), &BigInt::from(expect[i][j]));
            }
        }
    }
}
