//! Words, presentations, Tietze simplification and abelianization.

mod abelian;
pub(crate) mod parse;
mod presentation;
mod tietze;
mod word;

pub use abelian::{abelianization, relation_matrix, smith_invariant_factors, AbelianInvariants};
pub use parse::{parse_presentation, parse_word};
pub use presentation::{Mark, Presentation};
pub use tietze::{tietze_simplify, tietze_simplify_with, Simplified, TietzeOptions};
pub use word::{Letter, Word, WordDisplay};
