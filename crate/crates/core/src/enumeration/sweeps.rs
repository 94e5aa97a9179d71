use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::search::{max_critical_edges, SearchReport};
use super::{passes_degree_filter, sweep, SearchOptions};
use crate::criticality::{
    all_chordless_cycles, assertion_report, check_lemma2, extremal_edge_count, find_removable_vertex,
    is_critical_rows, schwarz_bound, AssertionReport,
};
use crate::digraph::{low_bits, strongly_connected_within, Digraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Lemma1,
    Lemma2,
    Assertion1,
    Assertion2,
    Schwarz,
    Theorem,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Theorem,
        Property::Lemma1,
        Property::Lemma2,
        Property::Assertion1,
        Property::Assertion2,
        Property::Schwarz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Lemma1 => "lemma1",
            Property::Lemma2 => "lemma2",
            Property::Assertion1 => "assertion1",
            Property::Assertion2 => "assertion2",
            Property::Schwarz => "schwarz",
            Property::Theorem => "theorem",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown property {s:?}")))
    }
}

/// A failing instance; `mask` replays it through [`super::MaskCursor::decode`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub mask: u64,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property: Property,
    pub n: usize,
    pub instances_checked: u64,
    pub precondition_skips: u64,
    pub violations: Vec<Violation>,
    /// Wall-clock milliseconds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Both assertion sweeps plus the split of instances by whether `D - V(C)` is
/// strongly connected. The second assertion is only claimed when it is; the
/// degree-sum inequality is still evaluated on the other population and the
/// failures there are counted, not reported as violations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionSweepReport {
    pub n: usize,
    pub assertion1: VerificationReport,
    pub assertion2: VerificationReport,
    /// Instances with `D - V(C)` strongly connected (the second assertion's scope).
    pub remainder_connected_population: u64,
    /// Instances whose contraction `D / V(C)` is itself critical.
    pub contraction_critical_population: u64,
    /// Degree-sum bound failures inside `contraction_critical_population`.
    pub contraction_critical_degree_sum_exceeded: u64,
}

impl AssertionSweepReport {
    pub fn passed(&self) -> bool {
        self.assertion1.passed() && self.assertion2.passed()
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    skips: u64,
    violations: Vec<Violation>,
}

impl Tally {
    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.skips += other.skips;
        self.violations.extend(other.violations);
    }

    fn violation(&mut self, mask: u64, details: String) {
        self.violations.push(Violation { mask, details });
    }

    fn into_report(self, property: Property, n: usize, start: Instant, opts: &SearchOptions) -> VerificationReport {
        VerificationReport {
            property,
            n,
            instances_checked: self.checked,
            precondition_skips: self.skips,
            violations: self.violations,
            elapsed: elapsed(start, opts),
        }
    }
}

fn elapsed(start: Instant, opts: &SearchOptions) -> Option<u64> {
    opts.timing.then(|| start.elapsed().as_millis() as u64)
}

fn check_range(n: usize, lo: usize, hi: usize) -> Result<()> {
    if n > hi {
        return Err(Error::Capacity { requested: n, max: hi });
    }
    if n < lo {
        return Err(Error::domain(format!("this sweep needs n >= {lo}, got {n}")));
    }
    Ok(())
}

/// Naive strong connectivity: every vertex reaches every vertex.
fn all_pairs_reachable(d: &Digraph) -> bool {
    (0..d.order()).all(|v| d.reachable_set(v).map(|r| r == d.vertices()).unwrap_or(false))
}

/// Runs the removable-vertex procedure on every strongly connected digraph
/// and every vertex of degree at least `n`, confirming each answer by
/// deleting it and testing all-pairs reachability.
pub fn verify_lemma1_exhaustive(n: usize, opts: &SearchOptions) -> Result<VerificationReport> {
    check_range(n, 2, 5)?;
    let start = Instant::now();
    let full = low_bits(n);
    let tally = sweep(
        n,
        opts,
        |mask, rows, t: &mut Tally| {
            if !passes_degree_filter(rows) || !strongly_connected_within(rows, full) {
                return;
            }
            let d = Digraph::from_rows_unchecked(rows);
            for v in 0..n {
                if d.degree_unchecked(v) < n {
                    t.skips += 1;
                    continue;
                }
                t.checked += 1;
                match find_removable_vertex(&d, v) {
                    Ok(z) if z != v && d.remove_vertex(z).is_ok_and(|r| all_pairs_reachable(&r)) => {}
                    Ok(z) => t.violation(mask, format!("v = {v}: returned {z}, but D - {z} is not strongly connected")),
                    Err(e) => t.violation(mask, format!("v = {v}: {e}")),
                }
            }
        },
        Tally::absorb,
    )?;
    Ok(tally.into_report(Property::Lemma1, n, start, opts))
}

fn for_each_critical<F>(rows: &[u64], mask: u64, mut f: F)
where
    F: FnMut(u64, &Digraph),
{
    if passes_degree_filter(rows) && is_critical_rows(rows) {
        f(mask, &Digraph::from_rows_unchecked(rows));
    }
}

/// Checks the cycle-degree bound for every critical digraph and every
/// chordless cycle missing at least one vertex.
pub fn verify_lemma2_exhaustive(n: usize, opts: &SearchOptions) -> Result<VerificationReport> {
    check_range(n, 4, 5)?;
    let start = Instant::now();
    let tally = sweep(
        n,
        opts,
        |mask, rows, t: &mut Tally| {
            for_each_critical(rows, mask, |mask, d| {
                let cycles = match all_chordless_cycles(d) {
                    Ok(c) => c,
                    Err(e) => return t.violation(mask, e.to_string()),
                };
                for c in cycles {
                    if c.len() == n {
                        t.skips += 1;
                        continue;
                    }
                    t.checked += 1;
                    match check_lemma2(d, &c) {
                        Ok(r) if r.pass => {}
                        Ok(r) => t.violation(
                            mask,
                            format!(
                                "cycle {:?}: degrees {:?}, bound {}, strict {}",
                                c.vertices(),
                                r.degrees,
                                r.bound,
                                r.strict_count
                            ),
                        ),
                        Err(e) => t.violation(mask, format!("cycle {:?}: {e}", c.vertices())),
                    }
                }
            })
        },
        Tally::absorb,
    )?;
    Ok(tally.into_report(Property::Lemma2, n, start, opts))
}

#[derive(Default)]
struct AssertionTally {
    first: Tally,
    second: Tally,
    contraction_critical: u64,
    contraction_critical_exceeded: u64,
}

fn describe(c: &[usize], r: &AssertionReport) -> String {
    format!(
        "cycle {c:?}: |E(D)| = {}, |E(J)| = {}, drop bound {}, d_J(c) = {} (bound {}), degree sum {} (bound {})",
        r.edge_count_d,
        r.edge_count_j,
        r.edge_drop_bound,
        r.d_j_c,
        r.contracted_degree_bound,
        r.cycle_degree_sum,
        r.degree_sum_bound
    )
}

/// Sweeps both assertions over every critical digraph and chordless cycle
/// `C` with `n >= |V(C)| + 2`.
pub fn verify_assertions_exhaustive(n: usize, opts: &SearchOptions) -> Result<AssertionSweepReport> {
    check_range(n, 4, 5)?;
    let start = Instant::now();
    let tally = sweep(
        n,
        opts,
        |mask, rows, t: &mut AssertionTally| {
            for_each_critical(rows, mask, |mask, d| {
                let cycles = match all_chordless_cycles(d) {
                    Ok(c) => c,
                    Err(e) => return t.first.violation(mask, e.to_string()),
                };
                for c in cycles {
                    if n < c.len() + 2 {
                        t.first.skips += 1;
                        t.second.skips += 1;
                        continue;
                    }
                    t.first.checked += 1;
                    let r = match assertion_report(d, &c) {
                        Ok(r) => r,
                        Err(e) => {
                            t.first.violation(mask, format!("cycle {:?}: {e}", c.vertices()));
                            continue;
                        }
                    };
                    if !r.assertion1_pass() {
                        t.first.violation(mask, describe(c.vertices(), &r));
                    }
                    if r.remainder_strongly_connected {
                        t.second.checked += 1;
                        if !r.assertion2_pass() {
                            t.second.violation(mask, describe(c.vertices(), &r));
                        }
                    } else {
                        t.second.skips += 1;
                        t.contraction_critical += 1;
                        if !r.degree_sum_ok {
                            t.contraction_critical_exceeded += 1;
                        }
                    }
                }
            })
        },
        |acc: &mut AssertionTally, part| {
            acc.first.absorb(part.first);
            acc.second.absorb(part.second);
            acc.contraction_critical += part.contraction_critical;
            acc.contraction_critical_exceeded += part.contraction_critical_exceeded;
        },
    )?;
    let remainder_connected_population = tally.second.checked;
    Ok(AssertionSweepReport {
        n,
        assertion1: tally.first.into_report(Property::Assertion1, n, start, opts),
        assertion2: tally.second.into_report(Property::Assertion2, n, start, opts),
        remainder_connected_population,
        contraction_critical_population: tally.contraction_critical,
        contraction_critical_degree_sum_exceeded: tally.contraction_critical_exceeded,
    })
}

/// Every critical digraph has at most `C(n, 2)` edges; violations are collected.
pub fn verify_schwarz_exhaustive(n: usize, opts: &SearchOptions) -> Result<VerificationReport> {
    check_range(n, 3, if opts.long_run { 6 } else { 5 })?;
    let start = Instant::now();
    let bound = schwarz_bound(n) as u32;
    let tally = sweep(
        n,
        opts,
        |mask, rows, t: &mut Tally| {
            if passes_degree_filter(rows) && is_critical_rows(rows) {
                t.checked += 1;
                let edges = mask.count_ones();
                if edges > bound {
                    t.violation(mask, format!("{edges} edges exceed C({n}, 2) = {bound}"));
                }
            }
        },
        Tally::absorb,
    )?;
    Ok(tally.into_report(Property::Schwarz, n, start, opts))
}

/// The maximum search together with its comparison against the formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub search: SearchReport,
    pub verification: VerificationReport,
}

/// Runs the maximum search and compares it with `C(n, 2) - n + 4`.
pub fn verify_theorem(n: usize, opts: &SearchOptions) -> Result<TheoremReport> {
    if n < 4 {
        return Err(Error::domain(format!("the maximum-edge formula is stated for n >= 4, got {n}")));
    }
    let start = Instant::now();
    let search = max_critical_edges(n, opts)?;
    let expected = extremal_edge_count(n)?;
    let mut violations = Vec::new();
    if search.max_edges != expected {
        violations.push(Violation {
            mask: search.witness_mask,
            details: format!("maximum is {} edges, formula gives {expected}", search.max_edges),
        });
    }
    let report = VerificationReport {
        property: Property::Theorem,
        n,
        instances_checked: search.critical_count,
        precondition_skips: search.graphs_scanned - search.critical_count,
        violations,
        elapsed: elapsed(start, opts),
    };
    Ok(TheoremReport { search, verification: report })
}

/// Number of labeled strongly connected loop-free digraphs on `n` vertices.
pub fn count_strongly_connected(n: usize, opts: &SearchOptions) -> Result<u64> {
    check_range(n, 1, 5)?;
    let full = low_bits(n);
    sweep(
        n,
        opts,
        |_, rows, count: &mut u64| {
            if strongly_connected_within(rows, full) {
                *count += 1;
            }
        },
        |acc, part| *acc += part,
    )
}
