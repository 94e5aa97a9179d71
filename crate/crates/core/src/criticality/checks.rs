//! Runtime checks of the degree and edge-count inequalities satisfied by a
//! critical digraph `D` around a chordless cycle `C` with `V(C) != V(D)`.
//!
//! Throughout, `n = |V(D)|`, `k = |V(C)|`, `J = D / V(C)` and `c` is the vertex
//! of `J` that `C` contracts to.

use serde::{Deserialize, Serialize};

use super::cycles::{is_chordless, Cycle};
use super::{extremal_edge_count, is_vertex_critical};
use crate::digraph::{Bits, Digraph};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Report {
    pub n: usize,
    pub cycle: Cycle,
    pub cycle_size: usize,
    /// `d_D(v)` for each cycle vertex, in cycle order.
    pub degrees: Vec<usize>,
    /// `n - k + 2`.
    pub bound: usize,
    /// Cycle vertices whose degree is strictly below `bound`.
    pub strict_count: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionReport {
    pub n: usize,
    pub k: usize,
    pub edge_count_d: usize,
    pub edge_count_j: usize,
    /// Extremal edge count at `n`.
    pub s_n: usize,
    /// Extremal edge count at `n - k + 1`, the order of `J`.
    pub s_contracted: usize,
    /// Degree of the contracted vertex `c` in `J`.
    pub d_j_c: usize,
    /// Edges of `D` with neither endpoint on `C`.
    pub external_edge_count: usize,
    pub cycle_degree_sum: usize,
    /// `s_n - s_{n-k+1}`, compared against `edge_count_d - edge_count_j`.
    pub edge_drop_bound: usize,
    pub edge_drop_ok: bool,
    /// `n - k`, compared against `d_j_c`.
    pub contracted_degree_bound: usize,
    pub contracted_degree_ok: bool,
    /// `(n - 1) k - n + 4`, compared against `cycle_degree_sum`.
    pub degree_sum_bound: usize,
    pub degree_sum_ok: bool,
    /// Whether `D - V(C)` is strongly connected, i.e. `J` is not critical.
    pub remainder_strongly_connected: bool,
}

impl AssertionReport {
    /// Edge-drop bound and the contracted-degree bound both hold.
    pub fn assertion1_pass(&self) -> bool {
        self.edge_drop_ok && self.contracted_degree_ok
    }

    pub fn assertion2_pass(&self) -> bool {
        self.degree_sum_ok
    }
}

fn common_preconditions(d: &Digraph, c: &Cycle) -> Result<()> {
    if !is_vertex_critical(d)? {
        return Err(Error::domain("digraph is not vertex-critical"));
    }
    if !is_chordless(d, c)? {
        return Err(Error::domain(format!("cycle {:?} has a chord", c.vertices())));
    }
    if c.len() == d.order() {
        return Err(Error::domain("cycle covers every vertex"));
    }
    Ok(())
}

/// Degrees on a chordless cycle are at most `n - k + 2`, with at least two
/// cycle vertices strictly below.
pub fn check_lemma2(d: &Digraph, c: &Cycle) -> Result<Lemma2Report> {
    common_preconditions(d, c)?;
    let n = d.order();
    let bound = n - c.len() + 2;
    let degrees: Vec<usize> = c.vertices().iter().map(|&v| d.degree_unchecked(v)).collect();
    let strict_count = degrees.iter().filter(|&&x| x < bound).count();
    let pass = degrees.iter().all(|&x| x <= bound) && strict_count >= 2;
    Ok(Lemma2Report { n, cycle: c.clone(), cycle_size: c.len(), degrees, bound, strict_count, pass })
}

/// Builds the full report without precondition checks.
/// Callers must ensure `c` is a chordless cycle of `d` and `n >= k + 2`.
pub(crate) fn assertion_report(d: &Digraph, c: &Cycle) -> Result<AssertionReport> {
    let n = d.order();
    let k = c.len();
    let on = c.vertex_set();
    let contracted = d.contract(on)?;
    let j = &contracted.graph;
    let d_j_c = j.degree_unchecked(contracted.merged_vertex);
    let external_edge_count = Bits(!on.bits() & crate::digraph::low_bits(n))
        .map(|u| (d.rows()[u] & !on.bits()).count_ones() as usize)
        .sum();
    let cycle_degree_sum = c.vertices().iter().map(|&v| d.degree_unchecked(v)).sum();

    let edge_count_d = d.edge_count();
    let edge_count_j = j.edge_count();
    let s_n = extremal_edge_count(n)?;
    let s_contracted = extremal_edge_count(n - k + 1)?;
    let edge_drop_bound = s_n - s_contracted;
    let contracted_degree_bound = n - k;
    let degree_sum_bound = (n - 1) * k + 4 - n;

    Ok(AssertionReport {
        n,
        k,
        edge_count_d,
        edge_count_j,
        s_n,
        s_contracted,
        d_j_c,
        external_edge_count,
        cycle_degree_sum,
        edge_drop_bound,
        edge_drop_ok: edge_count_d <= edge_count_j + edge_drop_bound,
        contracted_degree_bound,
        contracted_degree_ok: d_j_c <= contracted_degree_bound,
        degree_sum_bound,
        degree_sum_ok: cycle_degree_sum <= degree_sum_bound,
        remainder_strongly_connected: d.strongly_connected_without(on.bits()),
    })
}

fn assertion_preconditions(d: &Digraph, c: &Cycle) -> Result<()> {
    common_preconditions(d, c)?;
    if d.order() < c.len() + 2 {
        return Err(Error::domain(format!(
            "need n >= k + 2, got n = {} and k = {}",
            d.order(),
            c.len()
        )));
    }
    Ok(())
}

/// Contracts `C` and checks `|E(D)| - |E(J)| <= s_n - s_{n-k+1}` together with
/// `d_J(c) <= n - k`.
pub fn check_assertion1(d: &Digraph, c: &Cycle) -> Result<AssertionReport> {
    assertion_preconditions(d, c)?;
    assertion_report(d, c)
}

/// Checks `sum of d_D(v) over V(C) <= (n - 1) k - n + 4`, which is claimed only
/// when `D - V(C)` is strongly connected; other inputs are rejected.
pub fn check_assertion2(d: &Digraph, c: &Cycle) -> Result<AssertionReport> {
    assertion_preconditions(d, c)?;
    let report = assertion_report(d, c)?;
    if !report.remainder_strongly_connected {
        return Err(Error::domain("D - V(C) is not strongly connected (the contraction is critical)"));
    }
    Ok(report)
}
