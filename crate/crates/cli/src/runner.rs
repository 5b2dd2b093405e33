//! Parallel execution of a batch over contiguous trial chunks.

use rayon::prelude::*;

use elections_core::montecarlo::{run_range, BatchAccumulator};
use elections_core::{ModelError, OutcomeRecord, PcaModel, StateStructure};

/// Trials per work item. Results do not depend on it.
pub const CHUNK: u64 = 2048;

#[derive(Debug, Clone)]
pub struct BatchOutput {
    pub accumulator: BatchAccumulator,
    /// In trial order; empty unless requested.
    pub records: Vec<OutcomeRecord>,
}

fn chunk_ranges(trials: u64) -> Vec<std::ops::Range<u64>> {
    (0..trials.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(trials))
        .collect()
}

fn run_chunk(
    model: &PcaModel,
    structure: &StateStructure,
    seed: u64,
    range: std::ops::Range<u64>,
    k_values: &[u32],
    keep: bool,
) -> Result<BatchOutput, ModelError> {
    let mut records = Vec::new();
    let accumulator = run_range(model, structure, seed, range, k_values, |r| {
        if keep {
            records.push(r.clone());
        }
    })?;
    Ok(BatchOutput { accumulator, records })
}

fn combine(k_values: &[u32], parts: Vec<BatchOutput>) -> BatchOutput {
    let mut out = BatchOutput {
        accumulator: BatchAccumulator::new(k_values),
        records: Vec::new(),
    };
    for p in parts {
        out.accumulator.merge(&p.accumulator);
        out.records.extend(p.records);
    }
    out
}

pub fn run_serial(
    model: &PcaModel,
    structure: &StateStructure,
    seed: u64,
    trials: u64,
    k_values: &[u32],
    keep_records: bool,
) -> Result<BatchOutput, ModelError> {
    run_chunk(model, structure, seed, 0..trials, k_values, keep_records)
}

/// Runs on the current rayon pool, or on a private one of `threads` workers.
pub fn run_parallel(
    model: &PcaModel,
    structure: &StateStructure,
    seed: u64,
    trials: u64,
    k_values: &[u32],
    keep_records: bool,
    threads: Option<usize>,
) -> Result<BatchOutput, ModelError> {
    let work = || -> Result<BatchOutput, ModelError> {
        let parts = chunk_ranges(trials)
            .into_par_iter()
            .map(|r| run_chunk(model, structure, seed, r, k_values, keep_records))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(combine(k_values, parts))
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_the_range() {
        assert!(chunk_ranges(0).is_empty());
        let r = chunk_ranges(2 * CHUNK + 5);
        assert_eq!(r.len(), 3);
        assert_eq!(r[0], 0..CHUNK);
        assert_eq!(r[2], 2 * CHUNK..2 * CHUNK + 5);
    }
}
