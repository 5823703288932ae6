//! Preprojective algebras: constructions, orbit detectors and Calabi-Yau checks.

mod construct;
mod cy;
mod detect;
mod tensor;

pub use construct::{
    base_algebra, classical_preprojective, relation_betti, superpotential_preprojective, GradedPresentation,
    RelationBetti,
};
pub use cy::{
    default_family, stable_cy_bimodule_check, stable_cy_module_check, BimoduleCyReport, CyPair, CyReport, Family,
    GradedPiece, IsoSearch,
};
pub use detect::{
    check_dri, check_drf, h0_crosscheck, h0_dims, H0Crosscheck, Orbit, RfRiVerdict, SerreData, Witness,
};
pub use tensor::{tensor_bimodules, tensor_preprojective, TensorPreprojective};

#[cfg(test)]
mod tests;
