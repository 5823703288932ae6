//! Finite-dimensional algebras and their module categories.

mod algebra;
mod cover;
mod module;
mod resolution;
mod stable;

pub use algebra::{algebra_from_groebner, ends_of, truncated_algebra, BasicAlgebra, FiniteAlgebra, Projective, Step};
pub use cover::{projective_degrees, GradedCover, GradedExt};
pub use module::{
    cokernel, find_isomorphism, hom_space, image, is_isomorphic, kernel, quotient, radical,
    radical_span, random_combination, socle, submodule, top_dims, top_lifts, Ends, Module,
    ModuleMap,
};
pub use resolution::{
    ext_dims, ext_dims_from, global_dimension, max_projective_dimension, minimal_resolution,
    projective_cover, projective_dimension, syzygy, syzygy_power, Dimension, ProjSum,
    ResolutionRecord,
};
pub use stable::{
    cosyzygy, cosyzygy_power, gorenstein_report, injective_dimension, injective_envelope,
    projective_multiplicities,
    selfinjectivity_report, stable_hom, standard_modules, GorensteinReport, SelfinjectivityReport,
    StableHom, StandardModules,
};
