//! Dimensions of Z¹, B¹ and H¹ with coefficients in ℚ[G/H], computed two
//! independent ways.
//!
//! Route one assembles the Fox Jacobian of the presentation over the coset
//! action and takes a rational rank.  Route two rewrites the subgroup with
//! Reidemeister–Schreier and reads off the rank of its abelianization; by
//! Shapiro's lemma H¹(G, ℚ[G/H]) ≅ H¹(H, ℚ) the two must agree, and a
//! mismatch is reported as a hard error — it signals an implementation bug,
//! never a legitimate outcome.

use crate::coset::{rewrite_subgroup, CosetTable};
use crate::fox::{evaluate, fox_derivative};
use crate::linalg::{rank_rational, smith_normal_form, IntegerMatrix};
use crate::words::Presentation;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(
        "Shapiro cross-check failed at index {index}: Fox route gives {fox}, \
         subgroup abelianization gives {shapiro} (implementation bug)"
    )]
    ShapiroMismatch { index: usize, fox: usize, shapiro: usize },
}

/// Rank and torsion divisors of a finitely presented abelianization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub rank: usize,
    /// Nontrivial SNF divisors (entries ≠ 1), in divisibility order.
    pub torsion: Vec<BigInt>,
}

/// Per-table cohomology data; `dim_h1` and `dim_h1_shapiro` agree by
/// construction (the constructor enforces it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub index: usize,
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
    pub dim_h1_shapiro: usize,
    pub abelianization_of_h: AbelianInvariants,
}

impl CohomologyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "index": self.index,
            "dim_z1": self.dim_z1,
            "dim_b1": self.dim_b1,
            "dim_h1": self.dim_h1,
            "dim_h1_shapiro": self.dim_h1_shapiro,
            "abelianization_of_h": {
                "rank": self.abelianization_of_h.rank,
                "torsion": self.abelianization_of_h.torsion.iter()
                    .map(BigInt::to_string).collect::<Vec<_>>(),
            },
        })
    }
}

/// The |relators|·N × k·N block matrix with block (r, i) the evaluation of
/// the Fox derivative ∂_i(r) over the coset action.  Rows of relators whose
/// derivatives all vanish are kept for determinism.
pub fn jacobian(p: &Presentation, t: &CosetTable) -> IntegerMatrix {
    let n = t.size();
    let k = p.generator_count();
    let m = p.relators().len();
    let mut j = IntegerMatrix::zero(m * n, k * n);
    for (r, rel) in p.relators().iter().enumerate() {
        for i in 0..k {
            let d = fox_derivative(rel, i);
            if d.is_zero() {
                continue;
            }
            j.set_block(r * n, i * n, &evaluate(&d, t));
        }
    }
    j
}

/// dim Z¹(G, ℚ[G/H]) = k·N − rank(J): a 1-cocycle is determined by its
/// generator values subject to Σ_i ∂_i(r)·c(g_i) = 0 per relator.
pub fn cocycle_dim(p: &Presentation, t: &CosetTable) -> usize {
    let n = t.size();
    let k = p.generator_count();
    k * n - rank_rational(&jacobian(p, t))
}

/// dim B¹ = N − number of orbits (= N − 1 on the transitive tables this
/// crate produces).
pub fn coboundary_dim(t: &CosetTable) -> usize {
    t.size() - t.orbit_count()
}

/// Abelianization invariants of the presented group: SNF of the exponent
/// matrix; rank = k − SNF rank, torsion = nontrivial divisors.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let snf = smith_normal_form(&p.exponent_matrix());
    AbelianInvariants {
        rank: p.generator_count() - snf.rank,
        torsion: snf.nontrivial_divisors(),
    }
}

/// Full H¹ report with the Shapiro cross-check as a hard assertion.
pub fn h1_dim(p: &Presentation, t: &CosetTable) -> Result<CohomologyReport, CohomologyError> {
    let dim_z1 = cocycle_dim(p, t);
    let dim_b1 = coboundary_dim(t);
    let dim_h1 = dim_z1 - dim_b1;

    let sub = rewrite_subgroup(p, t);
    let ab = abelianization(&sub.presentation);
    let dim_h1_shapiro = ab.rank;

    if dim_h1 != dim_h1_shapiro {
        return Err(CohomologyError::ShapiroMismatch {
            index: t.size(),
            fox: dim_h1,
            shapiro: dim_h1_shapiro,
        });
    }
    Ok(CohomologyReport {
        index: t.size(),
        dim_z1,
        dim_b1,
        dim_h1,
        dim_h1_shapiro,
        abelianization_of_h: ab,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::enumerate;
    use crate::words::Word;

    fn parse(text: &str) -> Presentation {
        Presentation::parse(text).unwrap().0
    }

    #[test]
    fn cocycle_dim_free_group_is_unconstrained() {
        // F₂ acting on anything: dim Z¹ = 2N
        let p = parse("gens: a,b; rels: ;");
        let sub: Vec<Word> = ["a", "b^2"].iter().map(|s| p.parse_word(s).unwrap()).collect();
        let t = enumerate(&p, &sub, 100).unwrap();
        assert_eq!(cocycle_dim(&p, &t), 2 * t.size());
    }

    #[test]
    fn cocycle_dim_c2_regular() {
        // ⟨a | a²⟩ on the regular C₂ action: J = evaluate(1+a) = [[1,1],[1,1]]
        let p = parse("gens: a; rels: a^2;");
        let t = enumerate(&p, &[], 100).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(cocycle_dim(&p, &t), 2 - 1);
    }

    #[test]
    fn coboundary_dim_examples() {
        let p = parse("gens: a; rels: a;");
        let t = enumerate(&p, &[], 10).unwrap();
        assert_eq!(coboundary_dim(&t), 0);
        let p = parse("gens: a; rels: a^4;");
        let t = enumerate(&p, &[], 10).unwrap();
        assert_eq!(coboundary_dim(&t), 3);
    }

    #[test]
    fn coboundary_dim_matches_rank_oracle() {
        // dim B¹ equals the rank of the stacked (perm(g) − I) matrix
        for text in ["gens: a,b; rels: a^2, b^3, (a*b)^2;", "gens: a; rels: a^6;"] {
            let p = parse(text);
            let t = enumerate(&p, &[], 100).unwrap();
            let n = t.size();
            let k = p.generator_count();
            let mut stacked = IntegerMatrix::zero(k * n, n);
            for g in 0..k {
                let perm = t.permutation_matrix(g, false);
                for r in 0..n {
                    for c in 0..n {
                        let v = perm.get(r, c) - IntegerMatrix::identity(n).get(r, c);
                        stacked.set(g * n + r, c, v);
                    }
                }
            }
            assert_eq!(coboundary_dim(&t), rank_rational(&stacked));
        }
    }

    #[test]
    fn abelianization_examples() {
        let free = abelianization(&parse("gens: a,b; rels: ;"));
        assert_eq!((free.rank, free.torsion.len()), (2, 0));

        let z4 = abelianization(&parse("gens: a; rels: a^4;"));
        assert_eq!(z4.rank, 0);
        assert_eq!(z4.torsion, vec![BigInt::from(4)]);

        let s3 = abelianization(&parse("gens: a,b; rels: a^2, b^3, (a*b)^2;"));
        assert_eq!(s3.rank, 0);
        assert_eq!(s3.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn h1_of_z_at_index_two() {
        // G = ℤ, H = 2ℤ: b₁ = 1 via both routes
        let p = parse("gens: a; rels: ;");
        let t = enumerate(&p, &[p.parse_word("a^2").unwrap()], 100).unwrap();
        let rep = h1_dim(&p, &t).unwrap();
        assert_eq!(rep.index, 2);
        assert_eq!(rep.dim_z1, 2);
        assert_eq!(rep.dim_b1, 1);
        assert_eq!(rep.dim_h1, 1);
        assert_eq!(rep.abelianization_of_h.rank, 1);
        assert!(rep.abelianization_of_h.torsion.is_empty());
    }

    #[test]
    fn h1_of_f2_at_index_four() {
        // Nielsen–Schreier: 1 + 4(2−1) = 5
        let p = parse("gens: a,b; rels: ;");
        let sub: Vec<Word> = ["a^2", "b^2", "b*a*b^-1*a^-1", "a*b*a*b^-1", "a*b^2*a^-1"]
            .iter()
            .map(|s| p.parse_word(s).unwrap())
            .collect();
        let t = enumerate(&p, &sub, 100).unwrap();
        assert_eq!(t.size(), 4);
        let rep = h1_dim(&p, &t).unwrap();
        assert_eq!(rep.dim_h1, 5);
    }

    #[test]
    fn h1_of_finite_group_vanishes() {
        // finite groups have no rational first cohomology: S₃ regular table
        let p = parse("gens: a,b; rels: a^2, b^3, (a*b)^2;");
        let t = enumerate(&p, &[], 100).unwrap();
        let rep = h1_dim(&p, &t).unwrap();
        assert_eq!(rep.dim_h1, 0);
        assert_eq!(rep.dim_h1_shapiro, 0);
        assert_eq!(rep.abelianization_of_h.rank, 0);
    }
}
