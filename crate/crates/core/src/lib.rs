//! Rectangular diagrams (arc-presentations) of links: the elementary move
//! calculus, writhe invariants, grid/braid conversion, and exhaustive
//! monotonic simplification for unknot recognition and factorization.

pub mod convert;
pub mod grid;
pub mod invariants;
pub mod io;
pub mod moves;
pub mod simplify;

pub use grid::{
    validate, CanonicalForm, CanonicalKey, GridDiagram, GridError, LinkComponent, Orientation,
    RawDiagram, VertexRef, MAX_SIZE,
};
pub use io::{
    format_diagram, parse_diagram, read_diagram, render_ascii, write_diagram, Format, ParseError,
    ReadError,
};
pub use moves::{
    applicable_moves, apply, destab_blocks, generalized_exchange, generalized_stabilization,
    interleaved, inverse_moves, replay, stabilizations, ExchangeSpec, Move, MoveError,
    MoveSequence, Quadrant,
};
pub use simplify::{
    census, check_certificate, decompose, exchange_orbit, monotonic_simplify, verify_certificate,
    CensusReport, Classification, DecompositionTree, OrbitResult, OutcomeTag, SearchConfig,
    SimplifyOutcome,
};
