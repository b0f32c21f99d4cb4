//! Hecke operators on a quotient and their joint spectra.

pub mod operators;
pub mod triangularize;

pub use operators::{
    assemble_generators, spherical_operator, translation_operator, vertex_operators, word_operator, HeckeFamily,
    VertexOperators,
};
pub use triangularize::{
    eigenvalue_bound_report, simultaneous_triangularize, BoundReport, BoundRow, SpectralData, BOUND_TOL, CLUSTER_TOL,
    JORDAN_TOL,
};
