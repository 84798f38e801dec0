//! Parser for the presentation grammar.
//!
//! ```text
//! file ::= "gens:" name ("," name)* ";" "rels:" [ word ("," word)* ] ";"
//! word ::= term ("*" term)*
//! term ::= name ["^" integer] | "(" word ")" ["^" integer] | "[" word "," word "]"
//! name ::= letter (letter|digit|"_")*
//! ```
//!
//! Commutator sugar: `[u,v] = u⁻¹v⁻¹uv`.  Whitespace is insignificant and
//! `#` starts a comment running to the end of the line.

use super::{Letter, Presentation, Word};
use std::fmt;
use thiserror::Error;

/// 1-based line/column of a token, for error reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourcePos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for SourcePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{pos}: expected {expected}, found {found}")]
    Syntax { pos: SourcePos, expected: String, found: String },
    #[error("{pos}: undeclared generator name '{name}'")]
    UndeclaredGenerator { pos: SourcePos, name: String },
    #[error("{pos}: duplicate generator name '{name}'")]
    DuplicateGenerator { pos: SourcePos, name: String },
    #[error("{pos}: empty generator list")]
    EmptyGeneratorList { pos: SourcePos },
    #[error("{pos}: exponent out of range")]
    ExponentOverflow { pos: SourcePos },
}

/// Non-fatal findings surfaced during parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    pub pos: SourcePos,
    pub message: String,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Colon,
    Comma,
    Semi,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "name '{n}'"),
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Colon => write!(f, "':'"),
            Tok::Comma => write!(f, "','"),
            Tok::Semi => write!(f, "';'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, SourcePos)>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = SourcePos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            ':' | ',' | ';' | '*' | '^' | '(' | ')' | '[' | ']' => {
                chars.next();
                col += 1;
                toks.push((
                    match c {
                        ':' => Tok::Colon,
                        ',' => Tok::Comma,
                        ';' => Tok::Semi,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        '[' => Tok::LBracket,
                        _ => Tok::RBracket,
                    },
                    pos,
                ));
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' => {
                let mut s = String::new();
                s.push(c);
                chars.next();
                col += 1;
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let n: i64 = s.parse().map_err(|_| ParseError::Syntax {
                    pos,
                    expected: "an integer".into(),
                    found: format!("'{s}'"),
                })?;
                toks.push((Tok::Int(n), pos));
            }
            c if c.is_alphabetic() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Name(s), pos));
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    expected: "a token".into(),
                    found: format!("'{other}'"),
                })
            }
        }
    }
    toks.push((Tok::Eof, SourcePos { line, col }));
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, SourcePos)>,
    at: usize,
    names: Vec<String>,
    warnings: &'a mut Vec<ParseWarning>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> SourcePos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, SourcePos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<SourcePos, ParseError> {
        let (tok, pos) = self.bump();
        if tok == want {
            Ok(pos)
        } else {
            Err(ParseError::Syntax { pos, expected: want.to_string(), found: tok.to_string() })
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Name(ref n) if n == word => Ok(()),
            other => Err(ParseError::Syntax {
                pos,
                expected: format!("keyword '{word}'"),
                found: other.to_string(),
            }),
        }
    }

    fn generator_list(&mut self) -> Result<(), ParseError> {
        loop {
            let (tok, pos) = self.bump();
            match tok {
                Tok::Name(n) => {
                    if self.names.contains(&n) {
                        return Err(ParseError::DuplicateGenerator { pos, name: n });
                    }
                    self.names.push(n);
                }
                other => {
                    return Err(ParseError::Syntax {
                        pos,
                        expected: "a generator name".into(),
                        found: other.to_string(),
                    })
                }
            }
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                _ => return Ok(()),
            }
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = self.term()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let t = self.term()?;
            w = w.concat(&t);
        }
        Ok(w)
    }

    fn exponent(&mut self) -> Result<Option<(i64, SourcePos)>, ParseError> {
        if *self.peek() != Tok::Caret {
            return Ok(None);
        }
        self.bump();
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Some((n, pos))),
            other => Err(ParseError::Syntax {
                pos,
                expected: "an integer exponent".into(),
                found: other.to_string(),
            }),
        }
    }

    fn apply_exponent(&mut self, base: Word, exp: Option<(i64, SourcePos)>) -> Word {
        match exp {
            None => base,
            Some((0, pos)) => {
                self.warnings.push(ParseWarning {
                    pos,
                    message: "exponent 0 yields the empty word (degenerate relator)".into(),
                });
                Word::empty()
            }
            Some((n, _)) => base.pow(n),
        }
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Name(n) => {
                let gen = self
                    .names
                    .iter()
                    .position(|g| *g == n)
                    .ok_or(ParseError::UndeclaredGenerator { pos, name: n })?;
                let exp = self.exponent()?;
                Ok(self.apply_exponent(Word::generator(gen), exp))
            }
            Tok::LParen => {
                let w = self.word()?;
                self.expect(Tok::RParen)?;
                let exp = self.exponent()?;
                Ok(self.apply_exponent(w, exp))
            }
            Tok::LBracket => {
                let u = self.word()?;
                self.expect(Tok::Comma)?;
                let v = self.word()?;
                self.expect(Tok::RBracket)?;
                // [u,v] = u⁻¹v⁻¹uv
                Ok(u.inverse().concat(&v.inverse()).concat(&u).concat(&v))
            }
            other => Err(ParseError::Syntax {
                pos,
                expected: "a generator, '(' or '['".into(),
                found: other.to_string(),
            }),
        }
    }
}

/// Parses a single word (the `word` production) over the given generator
/// names.  Used for subgroup generators and normal-generator elements; the
/// word is freely reduced but *not* cyclically reduced.
pub(super) fn parse_word_in(names: &[String], text: &str) -> Result<Word, ParseError> {
    let toks = tokenize(text)?;
    let mut warnings = Vec::new();
    let mut p = Parser { toks, at: 0, names: names.to_vec(), warnings: &mut warnings };
    let w = p.word()?;
    let end = p.bump();
    if end.0 != Tok::Eof {
        return Err(ParseError::Syntax {
            pos: end.1,
            expected: "end of input".into(),
            found: end.0.to_string(),
        });
    }
    Ok(w)
}

pub(super) fn parse_presentation(
    text: &str,
) -> Result<(Presentation, Vec<ParseWarning>), ParseError> {
    let toks = tokenize(text)?;
    let mut warnings = Vec::new();
    let mut p = Parser { toks, at: 0, names: Vec::new(), warnings: &mut warnings };

    p.expect_keyword("gens")?;
    p.expect(Tok::Colon)?;
    if *p.peek() == Tok::Semi {
        return Err(ParseError::EmptyGeneratorList { pos: p.pos() });
    }
    p.generator_list()?;
    p.expect(Tok::Semi)?;

    p.expect_keyword("rels")?;
    p.expect(Tok::Colon)?;
    let mut relators: Vec<Word> = Vec::new();
    if *p.peek() != Tok::Semi {
        loop {
            let rel_pos = p.pos();
            let w = p.word()?;
            let (core, conj) = w.cyclic_reduce();
            if !conj.is_empty() {
                p.warnings.push(ParseWarning {
                    pos: rel_pos,
                    message: "relator was not cyclically reduced; conjugator discarded".into(),
                });
            }
            relators.push(core);
            match p.peek() {
                Tok::Comma => {
                    p.bump();
                }
                _ => break,
            }
        }
    }
    p.expect(Tok::Semi)?;
    let end = p.bump();
    if end.0 != Tok::Eof {
        return Err(ParseError::Syntax {
            pos: end.1,
            expected: "end of input".into(),
            found: end.0.to_string(),
        });
    }

    let names = std::mem::take(&mut p.names);
    let pres = Presentation::new(names, relators).expect("parser enforces presentation invariants");
    Ok((pres, warnings))
}
