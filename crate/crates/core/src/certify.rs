//! Isomorphism certification by Tietze reduction or by computable invariants.

use std::fmt;

use crate::enumeration::{cyclic_quotient_invariants, enumerate, CyclicQuotientInvariants};
use crate::error::{Error, Result};
use crate::presentations::{
    abelianization, tietze_simplify_with, AbelianInvariants, Presentation, TietzeOptions,
};

/// Default coset budget; the `RIMFORGE_MAX_COSETS` variable overrides it in the CLI.
pub const DEFAULT_MAX_COSETS: usize = 2_000_000;

/// Resource limits shared by every construction that enumerates or simplifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_cosets: usize,
    pub tietze_moves: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_cosets: DEFAULT_MAX_COSETS, tietze_moves: 10_000 }
    }
}

impl Budget {
    pub fn tietze(&self) -> TietzeOptions {
        TietzeOptions::with_budget(self.tietze_moves)
    }

    pub fn tietze_protecting(&self, protected: usize) -> TietzeOptions {
        TietzeOptions { protected, freeze_protected: true, ..self.tietze() }
    }
}

/// How an isomorphism claim was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    /// Tietze reduction to an identical presentation.
    T1,
    /// Equal order, abelianization and cyclic low-index invariants.
    T2,
    /// Nothing computed; the claim rests on a stated hypothesis.
    Asserted,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::T1 => "T1",
            Tier::T2 => "T2",
            Tier::Asserted => "ASSERTED",
        })
    }
}

/// Computable invariants of a finitely presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub order: Option<usize>,
    pub abelianization: AbelianInvariants,
    pub low_index: Vec<CyclicQuotientInvariants>,
}

/// Order (when enumeration completes), abelianization and kernel invariants for
/// `Z/k`, `k <= max_k`.
pub fn invariants(p: &Presentation, max_k: u64, budget: &Budget) -> Result<Invariants> {
    let s = tietze_simplify_with(p, &budget.tietze()).presentation;
    Ok(Invariants {
        order: enumerate(&s, &[], budget.max_cosets)?.index(),
        abelianization: abelianization(&s),
        low_index: cyclic_quotient_invariants(&s, max_k, &budget.tietze())?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub tier: Tier,
    /// What the group was certified against.
    pub against: String,
    /// Invariants of the certified group; absent for T1, where none were needed.
    pub invariants: Option<Invariants>,
}

/// T1 test: `p` has the generators of `base` first; eliminating the others reaches the
/// relators of `base` up to rotation, inversion and repetition.
pub fn tietze_reduces_to(p: &Presentation, base: &Presentation, budget: &Budget) -> bool {
    let nb = base.ngens();
    if p.ngens() < nb || p.generators()[..nb] != *base.generators() {
        return false;
    }
    let s = tietze_simplify_with(p, &budget.tietze_protecting(nb)).presentation;
    s.ngens() == nb && s.canonical_relators() == base.canonical_relators()
}

/// Certifies that `p` presents the same group as `base`, at T1 when `p` extends `base`
/// and Tietze reduces to it, otherwise at T2. Mismatching invariants are an error, and so is
/// an enumeration that does not complete.
pub fn certify_isomorphic(
    p: &Presentation,
    base: &Presentation,
    against: &str,
    max_k: u64,
    budget: &Budget,
) -> Result<Certificate> {
    if tietze_reduces_to(p, base, budget) {
        return Ok(Certificate { tier: Tier::T1, against: against.to_string(), invariants: None });
    }
    let a = invariants(p, max_k, budget)?;
    let b = invariants(base, max_k, budget)?;
    if a.order.is_none() || b.order.is_none() {
        return Err(Error::Indeterminate {
            max_cosets: budget.max_cosets,
            context: format!("order certification against {against}"),
        });
    }
    if a != b {
        return Err(Error::CertificationFailed(format!(
            "invariants differ from {against}: order {:?} vs {:?}, abelianization {} vs {}",
            a.order, b.order, a.abelianization, b.abelianization
        )));
    }
    Ok(Certificate { tier: Tier::T2, against: against.to_string(), invariants: Some(a) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::parse_presentation;

    #[test]
    fn t1_for_redundant_extension() {
        let base = parse_presentation("<a,b | a^2, b^5, (a*b)^2>").unwrap();
        let ext = parse_presentation("<a,b,c | a^2, b^5, (a*b)^2, c = a*b, [c,a*b]>").unwrap();
        let c = certify_isomorphic(&ext, &base, "D10", 2, &Budget::default()).unwrap();
        assert_eq!(c.tier, Tier::T1);
    }

    #[test]
    fn t2_when_presentations_differ() {
        let base = parse_presentation("<a | a^6>").unwrap();
        let other = parse_presentation("<x,y | x^2, y^3, [x,y]>").unwrap();
        let c = certify_isomorphic(&other, &base, "Z/6", 3, &Budget::default()).unwrap();
        assert_eq!(c.tier, Tier::T2);
        assert_eq!(c.invariants.unwrap().order, Some(6));
    }

    #[test]
    fn mismatch_is_reported() {
        let base = parse_presentation("<a | a^6>").unwrap();
        let s3 = parse_presentation("<x,y | x^2, y^3, (x*y)^2>").unwrap();
        assert!(matches!(
            certify_isomorphic(&s3, &base, "Z/6", 3, &Budget::default()),
            Err(Error::CertificationFailed(_))
        ));
    }

    #[test]
    fn infinite_groups_are_indeterminate() {
        let base = parse_presentation("<a,b | [a,b]>").unwrap();
        let other = parse_presentation("<x,y | x*y*x^-1*y^-1>").unwrap();
        let budget = Budget { max_cosets: 1000, tietze_moves: 100 };
        let got = certify_isomorphic(&other, &base, "Z^2", 2, &budget);
        assert!(matches!(got, Err(Error::Indeterminate { .. })), "{got:?}");
    }
}
