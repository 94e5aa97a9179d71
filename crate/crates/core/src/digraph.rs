//! Bit-row digraph representation and the primitive operations on it.
//!
//! A [`Digraph`] on `n <= 64` vertices stores one `u64` per vertex: bit `u`
//! of row `v` is set iff the edge `v -> u` is present. Loops are never stored
//! and bits at positions `>= n` are always clear, so two digraphs are equal
//! exactly when their orders and rows agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported order; one adjacency row per machine word.
pub const MAX_ORDER: usize = 64;

pub type Vertex = usize;

#[inline]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bit positions of a word, ascending.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub(crate) u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Vertices reachable from `start` inside the subgraph induced by `alive`.
#[inline]
pub(crate) fn forward_reach(rows: &[u64], alive: u64, start: usize) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for u in Bits(frontier) {
            next |= rows[u];
        }
        next &= alive & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Vertices of `alive` from which `target` is reachable inside the induced subgraph.
#[inline]
pub(crate) fn backward_reach(rows: &[u64], alive: u64, target: usize) -> u64 {
    let mut seen = 1u64 << target;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for u in Bits(alive & !seen) {
            if rows[u] & frontier != 0 {
                next |= 1 << u;
            }
        }
        seen |= next;
        frontier = next;
    }
    seen
}

/// Strong connectivity of the subgraph induced by `alive`.
/// Zero or one live vertex counts as strongly connected.
#[inline]
pub(crate) fn strongly_connected_within(rows: &[u64], alive: u64) -> bool {
    if alive & alive.wrapping_sub(1) == 0 {
        return true;
    }
    let root = alive.trailing_zeros() as usize;
    forward_reach(rows, alive, root) == alive && backward_reach(rows, alive, root) == alive
}

/// A set of vertex ids, one bit per vertex.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// `{0, .., n-1}`.
    pub const fn full(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: Vertex) -> Self {
        assert!(v < MAX_ORDER, "vertex {v} exceeds capacity");
        VertexSet(1 << v)
    }

    pub fn insert(&mut self, v: Vertex) {
        assert!(v < MAX_ORDER, "vertex {v} exceeds capacity");
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: Vertex) {
        if v < MAX_ORDER {
            self.0 &= !(1 << v);
        }
    }

    pub fn contains(self, v: Vertex) -> bool {
        v < MAX_ORDER && self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Vertex> {
        Bits(self.0)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut set = VertexSet::empty();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Loop-free simple digraph on at most [`MAX_ORDER`] vertices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "EdgeListRepr", try_from = "EdgeListRepr")]
pub struct Digraph {
    order: usize,
    rows: [u64; MAX_ORDER],
}

/// Result of contracting a vertex set `A` into a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionResult {
    pub graph: Digraph,
    /// Id of the merged vertex in `graph`; the compacted slot of `min(A)`.
    pub merged_vertex: Vertex,
    /// `old_to_new[v]` for every old vertex `v`; members of `A` map to `merged_vertex`.
    pub old_to_new: Vec<Vertex>,
}

impl Digraph {
    /// Edgeless digraph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::Capacity { requested: n, max: MAX_ORDER });
        }
        Ok(Digraph { order: n, rows: [0; MAX_ORDER] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut d = Digraph::new(n)?;
        for (u, v) in edges {
            d.add_edge(u, v)?;
        }
        Ok(d)
    }

    /// Builds a digraph from adjacency rows, validating loops and stray bits.
    pub fn from_rows(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        let mut d = Digraph::new(n)?;
        let mask = low_bits(n);
        for (v, &row) in rows.iter().enumerate() {
            if row >> v & 1 == 1 {
                return Err(Error::Loop(v));
            }
            if row & !mask != 0 {
                let vertex = (row & !mask).trailing_zeros() as usize;
                return Err(Error::OutOfRange { vertex, order: n });
            }
            d.rows[v] = row;
        }
        Ok(d)
    }

    pub(crate) fn from_rows_unchecked(rows: &[u64]) -> Self {
        debug_assert!(rows.len() <= MAX_ORDER);
        let mut d = Digraph { order: rows.len(), rows: [0; MAX_ORDER] };
        d.rows[..rows.len()].copy_from_slice(rows);
        debug_assert!(Digraph::from_rows(rows).is_ok());
        d
    }

    /// The directed cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn directed_cycle(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("a directed cycle needs at least 2 vertices, got {n}")));
        }
        Digraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Every ordered pair of distinct vertices joined.
    pub fn complete(n: usize) -> Result<Self> {
        let mut d = Digraph::new(n)?;
        let mask = low_bits(n);
        for v in 0..n {
            d.rows[v] = mask & !(1 << v);
        }
        Ok(d)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Adjacency rows, one per vertex.
    pub fn rows(&self) -> &[u64] {
        &self.rows[..self.order]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.order {
            Err(Error::OutOfRange { vertex: v, order: self.order })
        } else {
            Ok(())
        }
    }

    fn check_set(&self, set: VertexSet) -> Result<()> {
        let stray = set.bits() & !low_bits(self.order);
        if stray != 0 {
            Err(Error::OutOfRange { vertex: stray.trailing_zeros() as usize, order: self.order })
        } else {
            Ok(())
        }
    }

    /// Inserts `u -> v`. Inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        self.rows[u] |= 1 << v;
        Ok(())
    }

    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        let mut d = self.clone();
        d.add_edge(u, v)?;
        Ok(d)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order && v < self.order && self.rows[u] >> v & 1 == 1
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.rows().iter().enumerate().flat_map(|(u, &row)| Bits(row).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Out-neighbourhood `E+(v)`.
    pub fn out_set(&self, v: Vertex) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.rows[v]))
    }

    /// In-neighbourhood `E-(v)`.
    pub fn in_set(&self, v: Vertex) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.in_bits(v)))
    }

    #[inline]
    pub(crate) fn in_bits(&self, v: Vertex) -> u64 {
        let mut acc = 0;
        for (u, &row) in self.rows().iter().enumerate() {
            acc |= (row >> v & 1) << u;
        }
        acc
    }

    /// `|E+(v)| + |E-(v)|`; a double-arc partner counts twice.
    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.degree_unchecked(v))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, v: Vertex) -> usize {
        (self.rows[v].count_ones() + self.in_bits(v).count_ones()) as usize
    }

    /// `D - A` with survivors renumbered in ascending order.
    /// The mapping gives the new id of each old vertex, `None` for removed ones.
    pub fn remove_vertices(&self, set: VertexSet) -> Result<(Digraph, Vec<Option<Vertex>>)> {
        self.check_set(set)?;
        let mut map = vec![None; self.order];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !set.contains(v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut g = Digraph::new(next)?;
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                g.rows[a] |= 1 << b;
            }
        }
        Ok((g, map))
    }

    /// `D - v`, returning only the graph.
    pub fn remove_vertex(&self, v: Vertex) -> Result<Digraph> {
        self.check_vertex(v)?;
        Ok(self.remove_vertices(VertexSet::singleton(v))?.0)
    }

    /// `D / A`: the members of `A` are replaced by one vertex whose out- and
    /// in-neighbourhoods are the unions of theirs, minus `A` itself.
    pub fn contract(&self, set: VertexSet) -> Result<ContractionResult> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        self.check_set(set)?;
        let anchor = set.min().expect("nonempty");
        let mut old_to_new = vec![0; self.order];
        let mut next = 0;
        for (v, slot) in old_to_new.iter_mut().enumerate() {
            if !set.contains(v) || v == anchor {
                *slot = next;
                next += 1;
            }
        }
        let merged_vertex = old_to_new[anchor];
        for v in set.iter() {
            old_to_new[v] = merged_vertex;
        }
        let mut graph = Digraph::new(next)?;
        for (u, v) in self.edges() {
            let (a, b) = (old_to_new[u], old_to_new[v]);
            if a != b {
                graph.rows[a] |= 1 << b;
            }
        }
        Ok(ContractionResult { graph, merged_vertex, old_to_new })
    }

    /// All vertices reachable from `v`, including `v`.
    pub fn reachable_set(&self, v: Vertex) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(forward_reach(self.rows(), low_bits(self.order), v)))
    }

    /// True iff every vertex reaches every other. Orders 0 and 1 are strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        strongly_connected_within(self.rows(), low_bits(self.order))
    }

    /// Strong connectivity of `D - v` without building the reduced graph.
    pub(crate) fn strongly_connected_without(&self, removed: u64) -> bool {
        strongly_connected_within(self.rows(), low_bits(self.order) & !removed)
    }
}

/// Serialized shape of a digraph: its order and sorted edge pairs.
#[derive(Serialize, Deserialize)]
struct EdgeListRepr {
    order: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl From<Digraph> for EdgeListRepr {
    fn from(d: Digraph) -> Self {
        EdgeListRepr { order: d.order, edges: d.edges().collect() }
    }
}

impl TryFrom<EdgeListRepr> for Digraph {
    type Error = Error;

    fn try_from(r: EdgeListRepr) -> Result<Self> {
        Digraph::from_edges(r.order, r.edges)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("order", &self.order)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[Vertex]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn extremal4() -> Digraph {
        Digraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 2), (1, 0)]).unwrap()
    }

    fn extremal5() -> Digraph {
        Digraph::from_edges(
            5,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (3, 2), (4, 2), (4, 3), (1, 0)],
        )
        .unwrap()
    }

    #[test]
    fn construction_and_capacity() {
        let d = Digraph::new(3).unwrap();
        assert_eq!((d.order(), d.edge_count()), (3, 0));
        assert_eq!(Digraph::new(0).unwrap().order(), 0);
        assert!(Digraph::new(64).is_ok());
        assert!(matches!(Digraph::new(65), Err(Error::Capacity { requested: 65, max: 64 })));
    }

    #[test]
    fn add_edge_rules() {
        let mut d = Digraph::new(2).unwrap();
        d.add_edge(0, 1).unwrap();
        assert_eq!(d.edge_count(), 1);
        d.add_edge(0, 1).unwrap();
        assert_eq!(d.edge_count(), 1);
        assert!(matches!(d.add_edge(0, 0), Err(Error::Loop(0))));
        assert!(matches!(d.add_edge(0, 2), Err(Error::OutOfRange { vertex: 2, order: 2 })));
    }

    #[test]
    fn from_rows_validates() {
        assert!(matches!(Digraph::from_rows(&[0b1, 0]), Err(Error::Loop(0))));
        assert!(matches!(Digraph::from_rows(&[0b100, 0]), Err(Error::OutOfRange { vertex: 2, .. })));
        assert_eq!(Digraph::from_rows(&[0b10, 0b01]).unwrap(), Digraph::complete(2).unwrap());
    }

    #[test]
    fn neighbourhoods() {
        let c3 = Digraph::directed_cycle(3).unwrap();
        assert_eq!(c3.out_set(0).unwrap(), set(&[1]));
        assert_eq!(c3.in_set(0).unwrap(), set(&[2]));
        let arc = Digraph::complete(2).unwrap();
        assert_eq!(arc.out_set(0).unwrap(), set(&[1]));
        assert_eq!(arc.in_set(0).unwrap(), set(&[1]));
        assert_eq!(extremal4().in_set(0).unwrap(), set(&[1, 3]));
        assert!(c3.out_set(3).is_err());
        assert!(c3.in_set(7).is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(Digraph::complete(2).unwrap().degree(0).unwrap(), 2);
        let e4 = extremal4();
        for v in 0..4 {
            assert_eq!(e4.degree(v).unwrap(), 3);
        }
        assert_eq!(Digraph::complete(3).unwrap().degree(0).unwrap(), 4);
        assert!(e4.degree(4).is_err());
    }

    #[test]
    fn edge_counts() {
        assert_eq!(Digraph::directed_cycle(7).unwrap().edge_count(), 7);
        assert_eq!(Digraph::new(5).unwrap().edge_count(), 0);
        assert_eq!(extremal5().edge_count(), 9);
    }

    #[test]
    fn remove_vertices_examples() {
        let c3 = Digraph::directed_cycle(3).unwrap();
        // only 2 -> 0 survives, relabelled 1 -> 0
        let (g, _) = c3.remove_vertices(set(&[1])).unwrap();
        assert_eq!(g, Digraph::from_edges(2, [(1, 0)]).unwrap());

        let (same, map) = c3.remove_vertices(VertexSet::empty()).unwrap();
        assert_eq!(same, c3);
        assert_eq!(map, vec![Some(0), Some(1), Some(2)]);

        let (g, map) = extremal4().remove_vertices(set(&[2])).unwrap();
        assert_eq!(g, Digraph::from_edges(3, [(0, 1), (1, 0), (2, 0)]).unwrap());
        assert_eq!(map, vec![Some(0), Some(1), None, Some(2)]);

        assert!(c3.remove_vertices(set(&[3])).is_err());
    }

    #[test]
    fn contract_examples() {
        let c3 = Digraph::directed_cycle(3).unwrap();
        let r = c3.contract(set(&[0, 1])).unwrap();
        assert_eq!(r.graph, Digraph::complete(2).unwrap());
        assert_eq!(r.merged_vertex, 0);
        assert_eq!(r.old_to_new, vec![0, 0, 1]);
        assert!(r.graph.is_strongly_connected());

        let r = c3.contract(set(&[2])).unwrap();
        assert_eq!(r.graph, c3);
        assert_eq!(r.old_to_new, vec![0, 1, 2]);

        let r = extremal5().contract(set(&[0, 1])).unwrap();
        assert_eq!(r.graph.order(), 4);
        assert_eq!(r.graph.edge_count(), 7);
        // old 2,3,4 -> new 1,2,3
        assert_eq!(r.graph.out_set(0).unwrap(), set(&[1]));
        assert_eq!(r.graph.in_set(0).unwrap(), set(&[3]));

        assert!(matches!(c3.contract(VertexSet::empty()), Err(Error::EmptySet)));
    }

    #[test]
    fn contract_places_merged_vertex_at_min_slot() {
        let d = Digraph::directed_cycle(5).unwrap();
        let r = d.contract(set(&[1, 3])).unwrap();
        assert_eq!(r.merged_vertex, 1);
        assert_eq!(r.old_to_new, vec![0, 1, 2, 1, 3]);
        assert!(!r.graph.has_edge(1, 1));
        // 1->2, 2->3(merged), 3->4, 4->0, 0->1
        assert_eq!(r.graph, Digraph::from_edges(4, [(0, 1), (1, 2), (2, 1), (1, 3), (3, 0)]).unwrap());
    }

    #[test]
    fn strong_connectivity() {
        for n in 2..10 {
            assert!(Digraph::directed_cycle(n).unwrap().is_strongly_connected());
        }
        let edge = Digraph::from_edges(2, [(0, 1)]).unwrap();
        assert!(!edge.is_strongly_connected());
        assert!(Digraph::new(0).unwrap().is_strongly_connected());
        assert!(Digraph::new(1).unwrap().is_strongly_connected());
        assert!(!Digraph::new(2).unwrap().is_strongly_connected());
    }

    #[test]
    fn reachability() {
        let c3 = Digraph::directed_cycle(3).unwrap();
        assert_eq!(c3.reachable_set(0).unwrap(), set(&[0, 1, 2]));
        let edge = Digraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(edge.reachable_set(1).unwrap(), set(&[1]));
        // old 1 -> new 0 still reaches everything, but nothing reaches it back
        let reduced = extremal4().remove_vertex(0).unwrap();
        assert_eq!(reduced.reachable_set(0).unwrap(), reduced.vertices());
        assert_eq!(reduced.reachable_set(1).unwrap(), set(&[1, 2]));
        assert!(!reduced.is_strongly_connected());
        assert!(edge.reachable_set(2).is_err());
    }

    #[test]
    fn large_order_edges() {
        let d = Digraph::directed_cycle(64).unwrap();
        assert!(d.is_strongly_connected());
        assert_eq!(d.degree(63).unwrap(), 2);
        assert_eq!(d.in_set(0).unwrap(), set(&[63]));
        assert!(!d.remove_vertex(10).unwrap().is_strongly_connected());
    }
}
