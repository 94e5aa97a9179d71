//! Exhaustive enumeration of labeled loop-free digraphs.
//!
//! A digraph on `n` vertices is indexed by a mask over its `n(n-1)`
//! off-diagonal adjacency cells, row-major with the diagonal skipped: bit 0 is
//! cell `(0,1)`, then `(0,2)`, .., `(1,0)`, `(1,2)`, and so on. The mask space is
//! cut into `2^b` chunks by its top `b` bits; chunks are scanned in parallel
//! and merged in index order, so every result is independent of the worker
//! count and of `b`.

mod checkpoint;
mod search;
mod sweeps;

pub use search::{max_critical_edges, ChunkResult, SearchReport};
pub use sweeps::{
    count_strongly_connected, verify_assertions_exhaustive, verify_lemma1_exhaustive,
    verify_lemma2_exhaustive, verify_schwarz_exhaustive, verify_theorem, AssertionSweepReport,
    Property, TheoremReport, VerificationReport, Violation,
};

use std::ops::Range;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::digraph::{low_bits, Digraph};
use crate::error::{Error, Result};

/// Largest order whose full mask space (`2^42` cells at 7) may be indexed.
pub const MAX_ENUM_ORDER: usize = 7;

pub const DEFAULT_CHUNK_BITS: u32 = 16;

/// Position of one labeled digraph in the enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MaskCursor {
    pub n: usize,
    pub mask: u64,
}

/// Number of off-diagonal cells, `n(n-1)`.
pub const fn space_bits(n: usize) -> u32 {
    (n * n.saturating_sub(1)) as u32
}

/// Unpacks `mask` into `n` adjacency rows.
#[inline]
pub(crate) fn decode_rows(n: usize, mask: u64, rows: &mut [u64]) {
    let width = n.saturating_sub(1);
    let cell_mask = low_bits(width);
    for (u, row) in rows.iter_mut().enumerate().take(n) {
        let cells = (mask >> (u * width)) & cell_mask;
        *row = (cells & low_bits(u)) | ((cells >> u) << (u + 1));
    }
}

fn check_enum_order(n: usize) -> Result<()> {
    if n > MAX_ENUM_ORDER {
        Err(Error::Capacity { requested: n, max: MAX_ENUM_ORDER })
    } else {
        Ok(())
    }
}

impl MaskCursor {
    pub fn new(n: usize, mask: u64) -> Result<Self> {
        check_enum_order(n)?;
        if mask & !low_bits(space_bits(n) as usize) != 0 {
            return Err(Error::domain(format!("mask {mask:#x} has bits beyond the {} cells of order {n}", space_bits(n))));
        }
        Ok(MaskCursor { n, mask })
    }

    pub fn decode(&self) -> Result<Digraph> {
        let cursor = MaskCursor::new(self.n, self.mask)?;
        let mut rows = [0u64; MAX_ENUM_ORDER];
        decode_rows(cursor.n, cursor.mask, &mut rows);
        Ok(Digraph::from_rows_unchecked(&rows[..cursor.n]))
    }

    pub fn encode(d: &Digraph) -> Result<Self> {
        let n = d.order();
        check_enum_order(n)?;
        let width = n.saturating_sub(1);
        let mut mask = 0u64;
        for (u, &row) in d.rows().iter().enumerate() {
            let cells = (row & low_bits(u)) | ((row >> (u + 1)) << u);
            mask |= cells << (u * width);
        }
        Ok(MaskCursor { n, mask })
    }
}

/// Controls for exhaustive runs.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Worker threads; 0 lets the thread pool pick one per core.
    pub jobs: usize,
    /// Requested chunk prefix width, capped at the size of the mask space.
    pub chunk_bits: u32,
    /// Permits the 2^30-graph search at order 6.
    pub long_run: bool,
    /// Append-only record of finished chunks; an existing file is resumed.
    pub checkpoint: Option<PathBuf>,
    /// Record wall-clock time in reports.
    pub timing: bool,
    /// Keep per-chunk partial results in the search report.
    pub keep_chunk_results: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 0,
            chunk_bits: DEFAULT_CHUNK_BITS,
            long_run: false,
            checkpoint: None,
            timing: true,
            keep_chunk_results: false,
        }
    }
}

/// Split of the mask space into equal prefix chunks.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ChunkPlan {
    pub(crate) chunk_bits: u32,
    shift: u32,
}

impl ChunkPlan {
    pub(crate) fn new(n: usize, requested_bits: u32) -> Self {
        let total = space_bits(n);
        let chunk_bits = requested_bits.min(total);
        ChunkPlan { chunk_bits, shift: total - chunk_bits }
    }

    pub(crate) fn chunks(&self) -> u64 {
        1 << self.chunk_bits
    }

    pub(crate) fn range(&self, index: u64) -> Range<u64> {
        (index << self.shift)..((index + 1) << self.shift)
    }

    pub(crate) fn total_masks(&self) -> u64 {
        1 << (self.chunk_bits + self.shift)
    }
}

pub(crate) fn in_pool<T, F>(jobs: usize, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Runs `visit` over every mask of order `n`, one accumulator per chunk,
/// and folds the accumulators in chunk order.
pub(crate) fn sweep<T, F, M>(n: usize, opts: &SearchOptions, visit: F, mut merge: M) -> Result<T>
where
    T: Default + Send,
    F: Fn(u64, &[u64], &mut T) + Sync,
    M: FnMut(&mut T, T),
{
    let plan = ChunkPlan::new(n, opts.chunk_bits);
    let parts: Vec<T> = in_pool(opts.jobs, || {
        (0..plan.chunks())
            .into_par_iter()
            .map(|index| {
                let mut acc = T::default();
                let mut rows = [0u64; MAX_ENUM_ORDER];
                for mask in plan.range(index) {
                    decode_rows(n, mask, &mut rows);
                    visit(mask, &rows[..n], &mut acc);
                }
                acc
            })
            .collect()
    })?;
    let mut total = T::default();
    for part in parts {
        merge(&mut total, part);
    }
    Ok(total)
}

/// Every vertex has an out-edge and an in-edge; necessary for strong
/// connectivity on two or more vertices.
#[inline]
pub(crate) fn passes_degree_filter(rows: &[u64]) -> bool {
    let mut ins = 0;
    for &row in rows {
        if row == 0 {
            return false;
        }
        ins |= row;
    }
    ins == low_bits(rows.len())
}
