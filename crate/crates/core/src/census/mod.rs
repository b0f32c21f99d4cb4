//! Weighted counts of closed geodesics by translation vector.

pub mod galleries;
pub mod gallery;
pub mod walks;
pub mod words;

pub use galleries::{census_d2, census_galleries, certified_points, MAX_D2_LENGTH};
pub use gallery::{Gallery, GalleryContext};
pub use walks::{census_d1, class_counts, nb_walk_counts, non_backtracking_matrix, GeodesicCensus, WeightConvention};
pub use words::{canonical_cyclic_word, cyclic_reduce, is_primitive_word, translation_vector, ConjClass, TriangleCover};
