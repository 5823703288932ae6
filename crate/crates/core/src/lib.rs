//! Preprojective algebras of quivers with relations.

pub mod error;
pub mod corpus;
pub mod derived;
pub mod linalg;
pub mod preproj;
pub mod quiver;
pub mod repthy;
pub mod rewrite;
pub mod scalar;

pub use error::{Error, Result};
