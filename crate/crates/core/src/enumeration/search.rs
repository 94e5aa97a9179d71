use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checkpoint::Checkpoint;
use super::{decode_rows, in_pool, passes_degree_filter, ChunkPlan, MaskCursor, SearchOptions, MAX_ENUM_ORDER};
use crate::criticality::{is_critical_rows, is_vertex_critical, schwarz_bound};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::io::serialize_edge_list;

/// Largest order [`max_critical_edges`] accepts; order 6 also needs `long_run`.
pub const MAX_SEARCH_ORDER: usize = 6;

/// Partial maximum over one chunk of the mask space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkResult {
    pub index: u64,
    /// 0 when the chunk holds no critical digraph.
    pub max_edges: u32,
    pub attain_count: u64,
    /// Smallest mask in the chunk attaining `max_edges`.
    pub witness_mask: Option<u64>,
    pub critical_count: u64,
}

/// Outcome of the exhaustive maximum-edge search over critical digraphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub max_edges: usize,
    pub witness: Digraph,
    pub witness_mask: u64,
    pub attain_count: u64,
    pub graphs_scanned: u64,
    pub critical_count: u64,
    /// Wall-clock milliseconds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chunk_results: Vec<ChunkResult>,
}

pub(crate) struct ChunkScan {
    pub(crate) result: ChunkResult,
    /// Critical digraphs above `C(n, 2)` edges (checked from order 3 up).
    pub(crate) schwarz_excess: Vec<u64>,
}

/// Scans one chunk: degree filter, strong connectivity, then the per-vertex
/// deletions with early exit.
pub(crate) fn scan_chunk(n: usize, plan: &ChunkPlan, index: u64) -> ChunkScan {
    let schwarz = if n >= 3 { schwarz_bound(n) as u32 } else { u32::MAX };
    let mut rows = [0u64; MAX_ENUM_ORDER];
    let mut result = ChunkResult { index, max_edges: 0, attain_count: 0, witness_mask: None, critical_count: 0 };
    let mut schwarz_excess = Vec::new();
    for mask in plan.range(index) {
        decode_rows(n, mask, &mut rows);
        let rows = &rows[..n];
        if !passes_degree_filter(rows) || !is_critical_rows(rows) {
            continue;
        }
        result.critical_count += 1;
        let edges = mask.count_ones();
        if edges > schwarz {
            schwarz_excess.push(mask);
        }
        if edges > result.max_edges {
            result.max_edges = edges;
            result.attain_count = 1;
            result.witness_mask = Some(mask);
        } else if edges == result.max_edges {
            result.attain_count += 1;
        }
    }
    ChunkScan { result, schwarz_excess }
}

fn check_search_order(n: usize, long_run: bool) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("search needs n >= 2, got {n}")));
    }
    if n > MAX_SEARCH_ORDER {
        return Err(Error::Capacity { requested: n, max: MAX_SEARCH_ORDER });
    }
    if n == MAX_SEARCH_ORDER && !long_run {
        return Err(Error::domain("n = 6 scans 2^30 digraphs; enable the long-run option"));
    }
    Ok(())
}

/// Exact maximum edge count over all vertex-critical digraphs on `n` vertices.
///
/// Every critical digraph seen is also checked against `C(n, 2)` edges from
/// order 3 up; exceeding it aborts the search with an invariant error.
pub fn max_critical_edges(n: usize, opts: &SearchOptions) -> Result<SearchReport> {
    check_search_order(n, opts.long_run)?;
    let start = Instant::now();
    let plan = ChunkPlan::new(n, opts.chunk_bits);

    let (checkpoint, done) = match &opts.checkpoint {
        Some(path) => {
            let (ck, done) = Checkpoint::open(path, n, plan.chunk_bits)?;
            (Some(ck), done)
        }
        None => (None, BTreeMap::new()),
    };

    let results: Vec<Result<ChunkResult>> = in_pool(opts.jobs, || {
        (0..plan.chunks())
            .into_par_iter()
            .map(|index| {
                if let Some(r) = done.get(&index) {
                    return Ok(*r);
                }
                let scan = scan_chunk(n, &plan, index);
                if let Some(&mask) = scan.schwarz_excess.first() {
                    let d = MaskCursor { n, mask }.decode()?;
                    return Err(Error::Invariant {
                        detail: format!(
                            "critical digraph with {} edges exceeds C({n}, 2) = {} (mask {mask})",
                            d.edge_count(),
                            schwarz_bound(n)
                        ),
                        instance: serialize_edge_list(&d),
                    });
                }
                if let Some(ck) = &checkpoint {
                    ck.record(&scan.result)?;
                }
                Ok(scan.result)
            })
            .collect()
    })?;
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;

    let mut best: Option<ChunkResult> = None;
    let mut attain_count = 0;
    let mut critical_count = 0;
    for r in &results {
        critical_count += r.critical_count;
        if r.attain_count == 0 {
            continue;
        }
        match best {
            Some(b) if r.max_edges < b.max_edges => {}
            Some(b) if r.max_edges == b.max_edges => attain_count += r.attain_count,
            _ => {
                best = Some(*r);
                attain_count = r.attain_count;
            }
        }
    }
    let best = best.ok_or_else(|| Error::Invariant {
        detail: format!("no critical digraph found on {n} vertices"),
        instance: String::new(),
    })?;
    let witness_mask = best.witness_mask.expect("attaining chunks carry a witness");
    let witness = MaskCursor { n, mask: witness_mask }.decode()?;
    if !is_vertex_critical(&witness)? || witness.edge_count() != best.max_edges as usize {
        return Err(Error::Invariant {
            detail: format!("search witness (mask {witness_mask}) failed re-verification"),
            instance: serialize_edge_list(&witness),
        });
    }

    Ok(SearchReport {
        n,
        max_edges: best.max_edges as usize,
        witness,
        witness_mask,
        attain_count,
        graphs_scanned: plan.total_masks(),
        critical_count,
        elapsed: opts.timing.then(|| start.elapsed().as_millis() as u64),
        chunk_results: if opts.keep_chunk_results { results } else { Vec::new() },
    })
}
