//! Classification engine for dihedral edge-to-edge tilings of the sphere by
//! a regular m-gon (all edges x, all angles α) and a quadrilateral with equal
//! opposite edges x, y and equal opposite angles β, γ.
//!
//! The pipeline: enumerate admissible vertex types and AVCs ([`avc`]), run an
//! exhaustive propagation/backtracking search over labeled combinatorial maps
//! ([`search`]), deduplicate by canonical code ([`tiling`]), realize metric
//! data on the unit sphere ([`geometry`]) and verify against the expected
//! catalog ([`catalog`]).

pub mod angles;
pub mod arrangements;
pub mod avc;
pub mod catalog;
pub mod geometry;
pub mod search;
pub mod tiling;

pub use angles::{Angle, AngleAssignment, RationalPi, VertexType};
