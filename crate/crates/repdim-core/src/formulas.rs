//! Closed-form δ/δ_irr predictions for group families whose values are
//! known exactly; used as independent oracles against the computed values.
//! Predictions are pure functions of the stated parameters — structural
//! facts (center cyclicity, kernel rank, coprimality) are supplied by the
//! caller, which is responsible for checking that they describe the group.

/// Family clauses with their hypotheses encoded as parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Extraspecial p-group of order p^(2r+1).
    Extraspecial { p: u64, r: u32 },
    /// Nonabelian group of order p³.
    NonabelianP3 { p: u64 },
    /// Nonabelian p-group of order p⁴.
    NonabelianP4 { p: u64, center_cyclic: bool },
    /// p-group with cyclic center and derived subgroup of order p;
    /// `index_over_center` is [G : Z(G)], a perfect square in this family.
    CyclicCenterDerivedP { index_over_center: u64 },
    /// Abelian group with the given number of invariant factors.
    Abelian { rank: usize },
    /// Symmetric group on n ≥ 5 points.
    Symmetric { n: u32 },
    /// Alternating group on n ≥ 6 points.
    Alternating { n: u32 },
    /// Frobenius group of order q(q−1) with abelian kernel of order q and
    /// cyclic complement.
    FrobeniusFullAffine { q: u64 },
    /// Frobenius group of order 72 with quaternion complement.
    Frobenius72,
    /// Frobenius group of odd order q(q−1)/2 with abelian kernel of order
    /// q = p^n and cyclic complement; `kernel_rank` is 1 for a cyclic kernel.
    FrobeniusOddHalf { q: u64, kernel_rank: usize },
    /// Direct product of groups of coprime order, each with a faithful
    /// irreducible realizing its representation dimension.
    CoprimeProduct { left_delta_irr: u64, right_delta_irr: u64 },
}

/// A predicted pair of values with the clause it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub delta: u64,
    /// `None` means δ_irr does not exist (no faithful irreducible).
    pub delta_irr: Option<u64>,
    pub source: String,
}

impl Prediction {
    fn both(delta: u64, source: &str) -> Prediction {
        Prediction { delta, delta_irr: Some(delta), source: source.into() }
    }

    fn reducible_only(delta: u64, source: &str) -> Prediction {
        Prediction { delta, delta_irr: None, source: source.into() }
    }
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    for c in r.saturating_sub(1)..=r + 1 {
        if c * c == n {
            return Some(c);
        }
    }
    None
}

/// Evaluates the clause, or `None` when its hypotheses are not met
/// (prediction unavailable — not a failure).
pub fn predict(family: &Family) -> Option<Prediction> {
    match family {
        Family::Extraspecial { p, r } => {
            if *r == 0 {
                return None;
            }
            Some(Prediction::both(
                p.pow(*r),
                &format!("extraspecial of order {}^{}: p^r", p, 2 * r + 1),
            ))
        }
        Family::NonabelianP3 { p } => Some(Prediction::both(
            *p,
            &format!("nonabelian group of order {p}^3: p"),
        )),
        Family::NonabelianP4 { p, center_cyclic } => Some(if *center_cyclic {
            Prediction::both(*p, &format!("nonabelian group of order {p}^4, cyclic center: p"))
        } else {
            Prediction::reducible_only(
                p + 1,
                &format!("nonabelian group of order {p}^4, noncyclic center: p+1"),
            )
        }),
        Family::CyclicCenterDerivedP { index_over_center } => {
            let root = exact_sqrt(*index_over_center)?;
            Some(Prediction::both(
                root,
                "p-group, cyclic center, |G'| = p: sqrt([G:Z(G)])",
            ))
        }
        Family::Abelian { rank } => Some(Prediction {
            delta: (*rank).max(1) as u64,
            delta_irr: (*rank <= 1).then_some(1),
            source: "abelian: rank".into(),
        }),
        Family::Symmetric { n } => {
            if *n < 5 {
                return None;
            }
            Some(Prediction::both(*n as u64 - 1, "symmetric group, n >= 5: n-1"))
        }
        Family::Alternating { n } => {
            if *n < 6 {
                return None;
            }
            Some(Prediction::both(*n as u64 - 1, "alternating group, n >= 6: n-1"))
        }
        Family::FrobeniusFullAffine { q } => Some(Prediction::both(
            q - 1,
            "Frobenius of order q(q-1), abelian kernel, cyclic complement: q-1",
        )),
        Family::Frobenius72 => Some(Prediction::both(
            8,
            "Frobenius of order 72, quaternion complement: 8",
        )),
        Family::FrobeniusOddHalf { q, kernel_rank } => {
            // Odd order forces q ≡ 3 (mod 4).
            if *kernel_rank == 0 || q % 4 != 3 {
                return None;
            }
            let half = (q - 1) / 2;
            Some(if *kernel_rank == 1 {
                Prediction::both(half, "odd Frobenius of order q(q-1)/2, cyclic kernel: (q-1)/2")
            } else {
                Prediction::reducible_only(
                    half * *kernel_rank as u64,
                    "odd Frobenius of order q(q-1)/2, noncyclic kernel: (q-1)/2 * rank",
                )
            })
        }
        Family::CoprimeProduct { left_delta_irr, right_delta_irr } => Some(Prediction::both(
            left_delta_irr * right_delta_irr,
            "coprime-order product: delta_irr(G1) * delta_irr(G2)",
        )),
    }
}
