//! Finite quotients: regular graphs (`d = 1`), triangle presentations and
//! their coset covers (`d = 2`), and the typed chamber systems of both.

pub mod chamber;
pub mod coset;
pub mod graph;
pub mod triangle;

pub use chamber::{
    chamber_system_of_graph, chamber_system_of_presentation, coset_types, ChamberSystem, ChamberSystemDocument,
    LocalFlag,
};
pub use coset::{coset_enumerate, enumerate_words, CosetTable};
pub use graph::{named, FiniteGraph};
pub use triangle::{fano_presentation, free_reduce, inverse_word, kernel_generators, letter, TrianglePresentation, Word};
