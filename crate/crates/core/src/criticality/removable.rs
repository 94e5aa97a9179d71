use crate::digraph::{Digraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::io::serialize_edge_list;

fn invariant(d: &Digraph, v: Vertex, detail: impl Into<String>) -> Error {
    Error::Invariant {
        detail: format!("{} (v = {v})", detail.into()),
        instance: serialize_edge_list(d),
    }
}

/// Finds `z != v` such that `d - z` is strongly connected, for a strongly
/// connected `d` in which `v` has degree at least the order.
///
/// The search follows the induction on the order: on two vertices the other
/// vertex is returned; otherwise take the smallest `u` joined to `v` by a
/// double arc, return it if `d - u` stays strongly connected, and else recurse
/// into `d / {u, v}` at the merged vertex and map the answer back.
/// Every level checks its answer before returning it.
pub fn find_removable_vertex(d: &Digraph, v: Vertex) -> Result<Vertex> {
    let n = d.order();
    let degree = d.degree(v)?;
    if n < 2 {
        return Err(Error::domain(format!("need order >= 2, got {n}")));
    }
    if !d.is_strongly_connected() {
        return Err(Error::domain("digraph is not strongly connected"));
    }
    if degree < n {
        return Err(Error::domain(format!("degree of {v} is {degree}, below the order {n}")));
    }
    let z = removable_step(d, v)?;
    if z == v || !d.remove_vertex(z)?.is_strongly_connected() {
        return Err(invariant(d, v, format!("returned vertex {z} is not removable")));
    }
    Ok(z)
}

fn removable_step(d: &Digraph, v: Vertex) -> Result<Vertex> {
    let n = d.order();
    if n == 2 {
        return Ok(1 - v);
    }
    let doubles = d.rows()[v] & d.in_bits(v);
    if doubles == 0 {
        return Err(invariant(d, v, "no double arc at a vertex of degree >= n"));
    }
    let u = doubles.trailing_zeros() as usize;
    if d.strongly_connected_without(1 << u) {
        return Ok(u);
    }

    let pair: VertexSet = [u, v].into_iter().collect();
    let contracted = d.contract(pair)?;
    let w = contracted.merged_vertex;
    let reduced_degree = contracted.graph.degree_unchecked(w);
    if reduced_degree < n - 1 {
        return Err(invariant(
            d,
            v,
            format!("merged vertex has degree {reduced_degree}, below {}", n - 1),
        ));
    }
    let inner = removable_step(&contracted.graph, w)?;
    if inner == w {
        return Err(invariant(d, v, "recursion returned the merged vertex"));
    }
    let z = contracted
        .old_to_new
        .iter()
        .position(|&x| x == inner)
        .expect("contraction mapping is onto");
    if !d.strongly_connected_without(1 << z) {
        return Err(invariant(d, v, format!("vertex {z} mapped back from the contraction is not removable")));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case() {
        let arc = Digraph::complete(2).unwrap();
        assert_eq!(find_removable_vertex(&arc, 0).unwrap(), 1);
        assert_eq!(find_removable_vertex(&arc, 1).unwrap(), 0);
    }

    #[test]
    fn complete_three() {
        assert_eq!(find_removable_vertex(&Digraph::complete(3).unwrap(), 0).unwrap(), 1);
    }

    #[test]
    fn needs_recursion() {
        // D - 1 is not strongly connected (3 loses its in-neighbour), so the
        // procedure contracts {0, 1} and recurses.
        let d = Digraph::from_edges(4, [(0, 1), (1, 0), (0, 2), (2, 0), (1, 3), (3, 2), (2, 1)]).unwrap();
        assert_eq!(d.degree(0).unwrap(), 4);
        assert!(!d.remove_vertex(1).unwrap().is_strongly_connected());
        let removable: Vec<_> = (1..4).filter(|&z| d.remove_vertex(z).unwrap().is_strongly_connected()).collect();
        let z = find_removable_vertex(&d, 0).unwrap();
        assert!(removable.contains(&z), "{z} not in {removable:?}");
    }

    #[test]
    fn preconditions() {
        let c4 = Digraph::directed_cycle(4).unwrap();
        assert!(matches!(find_removable_vertex(&c4, 0), Err(Error::Domain(_))));
        let not_sc = Digraph::from_edges(3, [(0, 1), (1, 0), (0, 2)]).unwrap();
        assert!(matches!(find_removable_vertex(&not_sc, 0), Err(Error::Domain(_))));
        assert!(matches!(find_removable_vertex(&c4, 9), Err(Error::OutOfRange { .. })));
        assert!(matches!(find_removable_vertex(&Digraph::new(1).unwrap(), 0), Err(Error::Domain(_))));
    }
}
