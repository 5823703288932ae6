//! Bimodules, the inverse dualizing complex and complexes of projectives.

mod complex;
mod dualizing;
mod enveloping;

pub use complex::{inverse_serre, inverse_serre_iterate, nakayama_stalk, Column, ProjectiveComplex};
pub use dualizing::{bimodule_resolution, ext_bimodule, DualizingComplex, ThetaEntry};
pub use enveloping::{dual_bimodule, enveloping_presentation, regular_bimodule, row, Enveloping};

#[cfg(test)]
mod tests;
