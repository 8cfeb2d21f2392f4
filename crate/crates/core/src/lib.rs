//! Lattice multiverses: finite downward-directed lattice universes, their
//! terminal and selection labelings, regressive-regularity checks and
//! brute-force search for regular cubes.

pub mod error;
pub mod fixtures;
pub mod format;
pub mod generate;
pub mod labeling;
pub mod lattice;
pub mod regularity;
pub mod render;
pub mod search;
pub mod selection;
pub mod terminal;

pub use error::{LabelError, ParseError, RuleError, UniverseError};
pub use labeling::{LabelFn, LabeledUniverse, Variant};
pub use lattice::{
    cube_points, enumerate_order_types, order_type_of, validate_universe, Cube, Edge,
    EdgePredicate, HashedTheta, MaximalTheta, OrderType, Universe, Vertex,
};
