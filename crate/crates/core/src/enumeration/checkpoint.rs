//! Plain-text record of finished search chunks.
//!
//! ```text
//! critigraph-checkpoint v1 n=<n> chunkbits=<b>
//! <chunk-index> <partial-max> <partial-count> <witness-mask-or-dash> <critical-count>
//! ```
//!
//! Chunk lines are appended as workers finish, so they are unordered. A final
//! line without its newline is an interrupted write and is discarded on resume.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::Path;
use std::sync::Mutex;

use super::search::ChunkResult;
use crate::error::{Error, Result};

pub(crate) fn header(n: usize, chunk_bits: u32) -> String {
    format!("critigraph-checkpoint v1 n={n} chunkbits={chunk_bits}")
}

pub(crate) fn format_line(r: &ChunkResult) -> String {
    let witness = r.witness_mask.map_or_else(|| "-".to_string(), |m| m.to_string());
    format!("{} {} {} {} {}\n", r.index, r.max_edges, r.attain_count, witness, r.critical_count)
}

pub(crate) fn parse_line(line: &str) -> Result<ChunkResult> {
    let bad = || Error::Checkpoint(format!("malformed chunk line {line:?}"));
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [index, max, count, witness, critical] = fields[..] else {
        return Err(bad());
    };
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
    let witness_mask = if witness == "-" { None } else { Some(num(witness)?) };
    let r = ChunkResult {
        index: num(index)?,
        max_edges: max.parse().map_err(|_| bad())?,
        attain_count: num(count)?,
        witness_mask,
        critical_count: num(critical)?,
    };
    if witness_mask.is_none() != (r.attain_count == 0) {
        return Err(bad());
    }
    Ok(r)
}

pub(crate) struct Checkpoint {
    file: Mutex<File>,
}

impl Checkpoint {
    /// Opens `path` for the given run, returning the chunks it already holds.
    /// A missing or empty file is started fresh; a header for a different run
    /// is an error.
    pub(crate) fn open(path: &Path, n: usize, chunk_bits: u32) -> Result<(Self, BTreeMap<u64, ChunkResult>)> {
        let mut file = OpenOptions::new().read(true).write(true).create(true).truncate(false).open(path)?;
        let mut text = String::new();
        file.read_to_string(&mut text)?;
        let expected = header(n, chunk_bits);
        let mut done = BTreeMap::new();

        if text.is_empty() {
            writeln!(file, "{expected}")?;
            return Ok((Checkpoint { file: Mutex::new(file) }, done));
        }

        let complete = match text.rfind('\n') {
            Some(end) => &text[..=end],
            None => "",
        };
        let mut lines = complete.lines();
        match lines.next() {
            Some(h) if h == expected => {}
            Some(h) => {
                return Err(Error::Checkpoint(format!(
                    "{} belongs to a different run: found {h:?}, expected {expected:?}",
                    path.display()
                )))
            }
            None => return Err(Error::Checkpoint(format!("{} has a truncated header", path.display()))),
        }
        let chunks = 1u64 << chunk_bits;
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let r = parse_line(line)?;
            if r.index >= chunks {
                return Err(Error::Checkpoint(format!("chunk index {} out of range", r.index)));
            }
            done.entry(r.index).or_insert(r);
        }

        // drop any torn trailing write before appending
        file.set_len(complete.len() as u64)?;
        file.seek(SeekFrom::End(0))?;
        Ok((Checkpoint { file: Mutex::new(file) }, done))
    }

    pub(crate) fn record(&self, r: &ChunkResult) -> Result<()> {
        let line = format_line(r);
        let mut file = self.file.lock().expect("checkpoint lock poisoned");
        file.write_all(line.as_bytes())?;
        Ok(())
    }
}
