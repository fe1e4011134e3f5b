//! Exact train-track splitting sequences, arcslide factorizations, Heegaard
//! generator bounds and support dimensions of twisted complexes.

pub mod arcdiagram;
pub mod bounds;
pub mod generate;
pub mod heegaard;
pub mod lattice;
pub mod matrix;
pub mod numberfield;
pub mod splitting;
pub mod support;
pub mod traintrack;
