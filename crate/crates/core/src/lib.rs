//! Vertex-critical strongly connected digraphs.
//!
//! * [`digraph`]: bit-row digraphs with deletion, contraction and strong connectivity.
//! * [`criticality`]: criticality, chordless cycles, removable vertices, the
//!   extremal family and the degree/edge-count checkers.
//! * [`enumeration`]: exhaustive labeled search for the maximum edge count of
//!   critical digraphs and the verification sweeps.
//! * [`io`]: edge-list, matrix and DOT text plus JSON reports.

pub mod criticality;
pub mod digraph;
pub mod enumeration;
mod error;
pub mod io;

pub use criticality::{
    all_chordless_cycles, check_assertion1, check_assertion2, check_lemma2, extremal_digraph, extremal_edge_count,
    find_chordless_cycle, find_removable_vertex, is_chordless, is_vertex_critical, non_critical_witness,
    schwarz_bound, AssertionReport, Cycle, Lemma2Report,
};
pub use digraph::{ContractionResult, Digraph, Vertex, VertexSet, MAX_ORDER};
pub use enumeration::{MaskCursor, SearchOptions, SearchReport, VerificationReport};
pub use error::{Error, Result};
