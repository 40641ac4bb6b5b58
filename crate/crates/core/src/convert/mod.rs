pub mod braid;
pub mod generators;

use thiserror::Error;

pub use braid::{braid_to_grid, grid_to_braid, BraidWord};
pub use generators::{
    connected_sum, default_scramble_moves, distant_union, random_diagram, random_diagram_with,
    random_unknot, random_unknot_with, torus_grid, whitehead_fixtures, zero_alexander_fixture,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error("invalid braid: {0}")]
    Braid(String),
    #[error("result would have size {0}, above the supported maximum")]
    TooLarge(usize),
}
