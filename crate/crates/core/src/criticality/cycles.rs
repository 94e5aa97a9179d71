use serde::{Deserialize, Serialize};

use crate::digraph::{low_bits, Bits, Digraph, Vertex, VertexSet, MAX_ORDER};
use crate::error::{Error, Result};

/// Largest order accepted by [`all_chordless_cycles`].
pub const MAX_CYCLE_ENUM_ORDER: usize = 8;

/// A directed cycle `v_1 -> v_2 -> .. -> v_k -> v_1` with `k >= 2` distinct vertices.
///
/// Stored in canonical rotation: the smallest vertex comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Cycle {
    vertices: Vec<Vertex>,
}

impl Cycle {
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::domain("a cycle needs at least 2 vertices"));
        }
        let mut seen = VertexSet::empty();
        for &v in &vertices {
            if v >= MAX_ORDER {
                return Err(Error::OutOfRange { vertex: v, order: MAX_ORDER });
            }
            if seen.contains(v) {
                return Err(Error::domain(format!("vertex {v} repeats in cycle")));
            }
            seen.insert(v);
        }
        let start = (0..vertices.len()).min_by_key(|&i| vertices[i]).expect("nonempty");
        vertices.rotate_left(start);
        Ok(Cycle { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of vertices, `k = |V(C)|`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// The `k` cycle edges `(v_i, v_{i+1})`, indices mod `k`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    pub fn is_cycle_of(&self, d: &Digraph) -> bool {
        self.edges().all(|(u, v)| d.has_edge(u, v))
    }
}

impl TryFrom<Vec<Vertex>> for Cycle {
    type Error = Error;

    fn try_from(v: Vec<Vertex>) -> Result<Self> {
        Cycle::new(v)
    }
}

impl From<Cycle> for Vec<Vertex> {
    fn from(c: Cycle) -> Self {
        c.vertices
    }
}

/// True iff the only edges of `d` among `V(C)` are the `k` cycle edges.
pub fn is_chordless(d: &Digraph, c: &Cycle) -> Result<bool> {
    if !c.is_cycle_of(d) {
        return Err(Error::domain(format!("{:?} is not a cycle of the digraph", c.vertices())));
    }
    let on = c.vertex_set().bits();
    let induced: usize = c.vertices().iter().map(|&v| (d.rows()[v] & on).count_ones() as usize).sum();
    Ok(induced == c.len())
}

/// Length of the shortest directed cycle through each vertex, minimised.
fn girth(d: &Digraph) -> Option<usize> {
    let n = d.order();
    let rows = d.rows();
    let all = low_bits(n);
    let mut best: Option<usize> = None;
    for s in 0..n {
        // BFS layers from s; the first layer containing a predecessor of s closes a cycle.
        let preds = d.in_bits(s);
        if preds == 0 {
            continue;
        }
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        let mut depth = 0;
        while frontier != 0 {
            if frontier & preds != 0 {
                let len = depth + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
                break;
            }
            if best.is_some_and(|b| depth + 1 >= b) {
                break;
            }
            let mut next = 0;
            for u in Bits(frontier) {
                next |= rows[u];
            }
            next &= all & !seen;
            seen |= next;
            frontier = next;
            depth += 1;
        }
    }
    best
}

/// Distance from each vertex of `allowed` to `target`, `usize::MAX` if unreachable.
fn distances_to(d: &Digraph, allowed: u64, target: Vertex) -> Vec<usize> {
    let rows = d.rows();
    let mut dist = vec![usize::MAX; d.order()];
    dist[target] = 0;
    let mut seen = 1u64 << target;
    let mut frontier = seen;
    let mut depth = 0;
    while frontier != 0 {
        depth += 1;
        let mut next = 0;
        for u in Bits(allowed & !seen) {
            if rows[u] & frontier != 0 {
                next |= 1 << u;
                dist[u] = depth;
            }
        }
        seen |= next;
        frontier = next;
    }
    dist
}

/// Shortest directed cycle of any digraph, with the lexicographically smallest
/// canonical vertex sequence among all shortest ones.
pub(crate) fn shortest_cycle(d: &Digraph) -> Option<Cycle> {
    let g = girth(d)?;
    let rows = d.rows();
    for s in 0..d.order() {
        let allowed = low_bits(d.order()) & !low_bits(s);
        let dist = distances_to(d, allowed, s);
        if !Bits(rows[s] & allowed).any(|t| dist[t] == g - 1) {
            continue;
        }
        let mut seq = vec![s];
        let mut cur = s;
        for remaining in (1..g).rev() {
            cur = Bits(rows[cur] & allowed)
                .find(|&t| dist[t] == remaining)
                .expect("exact distances admit a greedy step");
            seq.push(cur);
        }
        debug_assert!(d.has_edge(cur, s));
        return Some(Cycle { vertices: seq });
    }
    unreachable!("girth {g} found but no cycle attains it")
}

/// A shortest directed cycle of a strongly connected digraph. Shortest cycles
/// have no chords, and a double arc is returned as a 2-cycle when present.
pub fn find_chordless_cycle(d: &Digraph) -> Result<Cycle> {
    if d.order() < 2 {
        return Err(Error::domain(format!("need order >= 2, got {}", d.order())));
    }
    if !d.is_strongly_connected() {
        return Err(Error::domain("digraph is not strongly connected"));
    }
    Ok(shortest_cycle(d).expect("strongly connected digraphs of order >= 2 have cycles"))
}

/// Every chordless directed cycle, each once, in canonical rotation.
///
/// Cycles are grown as induced paths from their smallest vertex, so a chord
/// prunes the branch as soon as it appears.
pub fn all_chordless_cycles(d: &Digraph) -> Result<Vec<Cycle>> {
    if d.order() > MAX_CYCLE_ENUM_ORDER {
        return Err(Error::Capacity { requested: d.order(), max: MAX_CYCLE_ENUM_ORDER });
    }
    let ins: Vec<u64> = (0..d.order()).map(|v| d.in_bits(v)).collect();
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(d.order());
    for s in 0..d.order() {
        path.clear();
        path.push(s);
        grow(d.rows(), &ins, &mut path, 1 << s, &mut out);
    }
    Ok(out)
}

fn grow(rows: &[u64], ins: &[u64], path: &mut Vec<Vertex>, on_path: u64, out: &mut Vec<Cycle>) {
    let s = path[0];
    let last = *path.last().expect("path is never empty");
    let interior = on_path & !(1 << s) & !(1 << last);
    for t in Bits(rows[last] & !on_path & !low_bits(s + 1)) {
        if (rows[t] | ins[t]) & interior != 0 {
            continue;
        }
        if last != s && (rows[s] >> t & 1 == 1 || rows[t] >> last & 1 == 1) {
            continue;
        }
        path.push(t);
        if rows[t] >> s & 1 == 1 {
            out.push(Cycle { vertices: path.clone() });
        } else {
            grow(rows, ins, path, on_path | 1 << t, out);
        }
        path.pop();
    }
}
