//! Exact-arithmetic engine for polyomino tilings on square grids drawn on
//! topological surfaces.
//!
//! A surface is described as a collection of rectangular patches of unit
//! cells with pairwise gluings of boundary segments ([`dsl`]). Placements of
//! polyomino prototiles are enumerated by developing each tile across the
//! gluings ([`placement`]), the tiling homology group and its obstruction
//! element are computed over arbitrary-precision integers ([`homology`],
//! [`zlinalg`]), and small instances can additionally be settled by
//! exhaustive exact-cover search ([`search`]).

pub mod dsl;
pub mod grid;
pub mod homology;
pub mod placement;
pub mod polyomino;
pub mod search;
pub mod zlinalg;

pub use grid::{CellId, Chirality, Direction, SurfaceGrid, Symmetry, TopologyReport, Transition};
pub use polyomino::{Polyomino, SymmetryPolicy};
