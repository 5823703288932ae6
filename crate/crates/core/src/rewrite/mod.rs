//! Rewriting for path algebras with homogeneous relations.

mod groebner;
mod hilbert;
mod word;

pub use groebner::{complete_groebner, replay_log, Budget, GroebnerState, LogEntry};
pub use hilbert::{
    finiteness_certificate, graded_dimensions, monomial_basis, normal_words, FinitenessVerdict,
    HilbertTable,
};
pub use word::{Element, Word};

#[cfg(test)]
mod tests;
