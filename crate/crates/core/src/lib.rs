//! Fair spanning trees on modified grids, fairest edge usage, and the
//! Peano-curve scaling experiments built on them.

pub mod corpus;
pub mod error;
pub mod feu;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod peano;
pub mod rng;
pub mod scaling;
pub mod spanning;

pub use error::{Error, Result};
pub use graph::{Choice, Graph, ModifiedGrid, Quotient, SquareLattice, Subgraph};
pub use spanning::{EdgeVector, EdgeWeights, SpanningTree, TreePmf, WustAlgorithm};
