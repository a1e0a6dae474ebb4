use crate::grid::{GridDims, Vertex};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grid dimensions must be positive, got {m}x{n}")]
    InvalidDims { m: usize, n: usize },

    #[error("{what}: expected length {expected}, got {got}")]
    BadLength {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("vertex {vertex} has degree {degree} in the edge set")]
    DegreeViolation { vertex: Vertex, degree: usize },

    #[error("edge set splits into {components} components")]
    Disconnected { components: usize },

    #[error("path runs between {0} and {1} instead of the s,t corners")]
    WrongEndpoints(Vertex, Vertex),

    #[error("move {step} leaves the grid")]
    OutOfBounds { step: usize },

    #[error("move {step} revisits {vertex}")]
    Revisit { step: usize, vertex: Vertex },

    #[error("walk ends at {end} instead of t")]
    WrongTerminal { end: Vertex },

    #[error("move string has {got} moves, a Hamiltonian path needs {expected}")]
    WrongLength { expected: usize, got: usize },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("square or zipline leaves the grid: {0}")]
    InvalidSquare(String),

    #[error("square at {center} is not switchable: {reason}")]
    NotSwitchable { center: Vertex, reason: String },

    #[error("cell ({x},{y}) is not switchable")]
    CellNotSwitchable { x: usize, y: usize },

    #[error("no S->N zip frame: first straight separator at {eta1:?}")]
    FrameUnavailable { eta1: Option<usize> },

    #[error("structural observation failed: {0}")]
    StructureViolation(String),

    #[error("path is not almost canonical with N-S separators: {0}")]
    NotAlmostCanonical(String),

    #[error("no {kind} canonical path exists on a {dims} grid")]
    NoSuchCanonical { dims: GridDims, kind: &'static str },

    #[error("path is not simple")]
    NotSimple,

    #[error("grid dimensions differ: {0} vs {1}")]
    DimsMismatch(GridDims, GridDims),

    #[error("a {0} grid has no s,t Hamiltonian path")]
    NoSimplePath(GridDims),

    #[error("replay diverged at step {step}: {reason}")]
    ReplayDivergence { step: usize, reason: String },

    #[error("enumeration of {vertices} vertices exceeds the cap of {cap}")]
    CapExceeded { vertices: usize, cap: usize },
}
