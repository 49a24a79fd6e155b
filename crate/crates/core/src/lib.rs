//! k-formality of central hyperplane arrangements.
//!
//! An arrangement is k-formal when its relation complex `D_•` has vanishing
//! homology in degrees `1..k`. This crate builds that complex exactly over
//! the rationals from the lattice of flats ([`complex`]), and for graphic
//! arrangements compares it against the chain complex of the flag (clique)
//! complex of the graph ([`graphic`]).

pub mod arrangement;
pub mod cli;
pub mod complex;
pub mod error;
pub mod graphic;
pub mod linalg;
pub mod random;

pub use arrangement::{build_lattice, localization, parse_arrangement, Arrangement, Flat, Hyperplane, Lattice};
pub use complex::{
    assemble_complex, assemble_complex_to, compute_relation_blocks, f2_span, formality_report, relation_space_f,
    FormalityComplex, FormalityReport, RelationBlock,
};
pub use error::{Error, ParseError, Result};
pub use graphic::{
    boundary_matrices, cross_check, flag_complex, graphic_arrangement, parse_graph, simplicial_homology,
    special_basis_complex, ChainComplex, CrossCheckReport, FlagComplex, Graph,
};
pub use linalg::{kernel_basis, rank, rref, Matrix, Scalar};
