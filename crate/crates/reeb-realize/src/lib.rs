//! Construct real algebraic functions whose Reeb graphs realize generically
//! embedded planar multigraphs, and verify the construction exactly.
//!
//! The pipeline: parse an embedded multigraph, validate (M-)genericity,
//! straighten it to a segment drawing, thicken to a polygonal neighborhood,
//! cover the boundary with circles (tangent circles pinning branch abscissae
//! exactly), extract the arc-bounded region, emit the defining polynomial
//! system of the associated manifold, and check that the Reeb graph of the
//! first-coordinate projection is homeomorphic to the input graph.
//!
//! All geometric decisions use exact rational or degree-2 algebraic
//! arithmetic; floating point appears only in rank estimation and rendering.

pub mod circles;
pub mod embed;
pub mod geom;
pub mod graph;
pub mod neighborhood;
pub mod num;
pub mod reeb;
pub mod straighten;
pub mod region;
pub mod sweep;
