//! Vertex-critical strongly connected digraphs.
//!
//! A digraph is vertex-critical when it is strongly connected and deleting any
//! single vertex leaves a digraph that is not. This module holds the
//! criticality test, the extremal family attaining the maximum edge count,
//! chordless cycles, the removable-vertex procedure and the inequality checkers
//! used by the exhaustive sweeps.

mod checks;
mod cycles;
mod removable;

pub use checks::{check_assertion1, check_assertion2, check_lemma2, AssertionReport, Lemma2Report};
pub use cycles::{all_chordless_cycles, find_chordless_cycle, is_chordless, Cycle, MAX_CYCLE_ENUM_ORDER};
pub use removable::find_removable_vertex;

pub(crate) use checks::assertion_report;

use crate::digraph::{low_bits, strongly_connected_within, Digraph, Vertex};
use crate::error::{Error, Result};

/// Maximum edge count of a vertex-critical digraph on `n >= 4` vertices:
/// `C(n, 2) - n + 4`.
pub fn extremal_edge_count(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::domain(format!("extremal edge count is defined for n >= 2, got {n}")));
    }
    let pairs = n
        .checked_mul(n - 1)
        .map(|p| p / 2)
        .ok_or_else(|| Error::domain(format!("n = {n} overflows")))?;
    Ok(pairs + 4 - n)
}

/// `C(n, 2)`, the older upper bound on critical edge counts.
pub fn schwarz_bound(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Whether deleting `v` (given as a bit) keeps the rows strongly connected,
/// in the sense used for criticality: the remainder must still contain a pair
/// of mutually reachable vertices, so a lone surviving vertex does not count.
#[inline]
fn deletion_stays_connected(rows: &[u64], removed: u64) -> bool {
    rows.len() >= 3 && strongly_connected_within(rows, low_bits(rows.len()) & !removed)
}

/// Criticality on raw adjacency rows, assuming the order is at least 2.
#[inline]
pub(crate) fn is_critical_rows(rows: &[u64]) -> bool {
    if !strongly_connected_within(rows, low_bits(rows.len())) {
        return false;
    }
    (0..rows.len()).all(|v| !deletion_stays_connected(rows, 1 << v))
}

/// True iff `d` is strongly connected and no single-vertex deletion keeps it so.
///
/// On two vertices the double arc is critical: its one-vertex remainders are
/// treated as disconnected here, although [`Digraph::is_strongly_connected`]
/// accepts a single vertex.
pub fn is_vertex_critical(d: &Digraph) -> Result<bool> {
    if d.order() < 2 {
        return Err(Error::domain(format!(
            "criticality is defined for order >= 2, got {}",
            d.order()
        )));
    }
    Ok(is_critical_rows(d.rows()))
}

/// Smallest `z` with `d - z` strongly connected, or `None` when `d` is critical.
pub fn non_critical_witness(d: &Digraph) -> Result<Option<Vertex>> {
    if d.order() < 2 {
        return Err(Error::domain(format!(
            "criticality is defined for order >= 2, got {}",
            d.order()
        )));
    }
    if !d.is_strongly_connected() {
        return Err(Error::domain("digraph is not strongly connected"));
    }
    Ok((0..d.order()).find(|&z| deletion_stays_connected(d.rows(), 1 << z)))
}

/// The extremal critical digraph on `n >= 4` vertices.
///
/// With 1-based names `v_1..v_n` it is the cycle `v_1 -> .. -> v_n -> v_1`,
/// every backward edge `v_i -> v_j` with `3 <= j < i <= n`, and `v_2 -> v_1`.
/// Ids here are 0-based, so `v_i` is vertex `i - 1`.
pub fn extremal_digraph(n: usize) -> Result<Digraph> {
    if n < 4 {
        return Err(Error::domain(format!("the extremal construction needs n >= 4, got {n}")));
    }
    let mut d = Digraph::directed_cycle(n)?;
    for i in 3..n {
        for j in 2..i {
            d.add_edge(i, j)?;
        }
    }
    d.add_edge(1, 0)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremal_counts() {
        assert_eq!(extremal_edge_count(4).unwrap(), 6);
        assert_eq!(extremal_edge_count(5).unwrap(), 9);
        assert_eq!(extremal_edge_count(6).unwrap(), 13);
        assert_eq!(extremal_edge_count(10).unwrap(), 39);
        assert_eq!(extremal_edge_count(2).unwrap(), 3);
        assert_eq!(extremal_edge_count(3).unwrap(), 4);
        assert!(extremal_edge_count(1).is_err());
        assert!(extremal_edge_count(0).is_err());
    }

    #[test]
    fn extremal_digraph_small() {
        let d = extremal_digraph(4).unwrap();
        let edges: Vec<_> = d.edges().collect();
        assert_eq!(edges, vec![(0, 1), (1, 0), (1, 2), (2, 3), (3, 0), (3, 2)]);
        assert_eq!(extremal_digraph(5).unwrap().edge_count(), 9);
        assert!(extremal_digraph(3).is_err());
        assert!(extremal_digraph(65).is_err());
    }

    #[test]
    fn extremal_digraphs_are_critical() {
        for n in 4..=32 {
            let d = extremal_digraph(n).unwrap();
            assert_eq!(d.edge_count(), extremal_edge_count(n).unwrap(), "n = {n}");
            assert!(is_vertex_critical(&d).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn criticality_examples() {
        for n in 3..9 {
            assert!(is_vertex_critical(&Digraph::directed_cycle(n).unwrap()).unwrap());
        }
        assert!(!is_vertex_critical(&Digraph::complete(3).unwrap()).unwrap());
        assert!(is_vertex_critical(&Digraph::complete(2).unwrap()).unwrap());
        assert!(!is_vertex_critical(&Digraph::from_edges(2, [(0, 1)]).unwrap()).unwrap());
        assert!(is_vertex_critical(&Digraph::new(1).unwrap()).is_err());
        assert!(is_vertex_critical(&Digraph::new(0).unwrap()).is_err());
    }

    #[test]
    fn witnesses() {
        assert_eq!(non_critical_witness(&Digraph::complete(3).unwrap()).unwrap(), Some(0));
        assert_eq!(non_critical_witness(&Digraph::directed_cycle(4).unwrap()).unwrap(), None);
        let chorded = extremal_digraph(5).unwrap().with_edge(2, 0).unwrap();
        let z = non_critical_witness(&chorded).unwrap().expect("extra edge breaks criticality");
        assert!(chorded.remove_vertex(z).unwrap().is_strongly_connected());
        assert!(non_critical_witness(&Digraph::from_edges(3, [(0, 1)]).unwrap()).is_err());
    }
}
