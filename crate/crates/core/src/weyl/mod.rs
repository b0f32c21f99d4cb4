//! Coxeter data, translation vectors and lattices for Ã_d.

pub mod affine;
pub mod lattice;
pub mod smith;

pub use affine::{finite_weyl_group, AffinePermutation};
pub use lattice::{
    build_theorem_lattices, coroot_lattice, coset_label, coweight_coords, coweight_scale, dominant_from_epsilon,
    epsilon_coords, from_coweight_coords, from_epsilon, hecke_generator, in_positive_cone, lattice_membership, translation_element,
    translation_length, CosetLabel, CosetLabeller, CoxeterDatum, IntegerLattice, LatticeDocument, TranslationVector,
};
