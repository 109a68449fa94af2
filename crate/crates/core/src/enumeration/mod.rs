//! Coset enumeration, permutation representations and Reidemeister–Schreier.

mod coset;
mod lowindex;
mod perm;
mod schreier;

pub use coset::{enumerate, group_order, CosetTable, Enumeration};
pub use lowindex::{cyclic_quotient_invariants, CyclicQuotientInvariants, MAX_ASSIGNMENTS};
pub use perm::{permutation_representation, Perm, PermutationRep};
pub use schreier::{reidemeister_schreier, SubgroupPresentation};
