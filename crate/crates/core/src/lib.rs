//! Reconfiguration of simple s,t Hamiltonian paths in rectangular grid
//! graphs by square switches.
//!
//! A path runs from the top-left corner `s` to the bottom-right corner `t`
//! and visits every vertex. [`reconfigure`] turns any simple path into any
//! other through simple intermediates, one square switch at a time, and
//! records a [`SwitchTrace`] that [`replay`] can check. The [`oracle`]
//! module enumerates small grids exhaustively to test all of this.

pub mod analysis;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod reconfig;
pub mod switching;
pub mod zip;

pub use analysis::{
    classify_form, classify_with, decompose, is_simple, visits_alpha_first, InternalSubpath,
    PathForm, SeparatorAxis, SeparatorSpan, SubpathDecomposition, SubpathKind,
};
pub use error::{Error, Result};
pub use grid::{parse_path_file, Edge, GridDims, HamPath, Move, Segment, Side, Vertex};
pub use oracle::{
    build_hp_graph, enumerate_simple, enumerate_st_hamiltonian, graph_stats, GraphStats, HPGraph,
};
pub use reconfig::{
    make_canonical, reconfig_canonical_to_canonical, reconfig_to_canonical, reconfigure,
    reconfigure_with, replay, CanonicalKind, FrameTransform, Phase, SwitchTrace, TraceStep,
};
pub use switching::{
    is_switchable_cell, is_switchable_square, path_cycle_cover_after_cell_switch, square_switch,
    Cell, Heading, Orientation, PathCycleCover, Square, SwitchRecord, Zipline,
};
pub use zip::{
    find_delta_segments, locate_eta1_frame, zip_s_to_n, zip_w_to_e, zip_w_to_e_band, CheckLevel,
    DeltaSegments, EtaFrame, ZipResult,
};
