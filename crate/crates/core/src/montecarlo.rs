//! Batches of simulated elections and their summary statistics.
//!
//! Every trial is a pure function of `(seed, trial_index)`. Accumulators hold
//! integer counts only, so merging partial runs over disjoint trial ranges is
//! exact and any partition of the work gives the same summary, bit for bit.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use serde::{Deserialize, Serialize};

use crate::dataset::{ElectionDataset, StateStructure};
use crate::error::ModelError;
use crate::generator::{draw_noise, generate_shares};
use crate::outcome::{classify, OutcomeCode, OutcomeRecord};
use crate::pca::PcaModel;
use crate::tally::{electoral_totals, Decision, ElectorRule, Party};

/// Senate electors per state tried by [`run_batch`].
pub const DEFAULT_SWEEP: [u32; 4] = [0, 2, 10, 100];
pub const DEFAULT_BIN_WIDTH: u32 = 20;

/// Integer tallies over a range of trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchAccumulator {
    k_values: Vec<u32>,
    trials: u64,
    codes: [u64; 4],
    degenerate: u64,
    dem_wins_full: u64,
    tie_full: u64,
    tie_house: u64,
    states_won_unpopular: u64,
    sweep_unpopular: Vec<u64>,
    sweep_ties: Vec<u64>,
    /// Signed differences of trials unpopular with full electors.
    diffs: BTreeMap<i32, u64>,
    /// `[popular winner is Republican][carried California]`.
    california: [[u64; 2]; 2],
    california_unpopular: [[u64; 2]; 2],
}

impl BatchAccumulator {
    pub fn new(k_values: &[u32]) -> BatchAccumulator {
        BatchAccumulator {
            k_values: k_values.to_vec(),
            trials: 0,
            codes: [0; 4],
            degenerate: 0,
            dem_wins_full: 0,
            tie_full: 0,
            tie_house: 0,
            states_won_unpopular: 0,
            sweep_unpopular: alloc::vec![0; k_values.len()],
            sweep_ties: alloc::vec![0; k_values.len()],
            diffs: BTreeMap::new(),
            california: [[0; 2]; 2],
            california_unpopular: [[0; 2]; 2],
        }
    }

    pub fn k_values(&self) -> &[u32] {
        &self.k_values
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn degenerate(&self) -> u64 {
        self.degenerate
    }

    pub fn count(&self, code: OutcomeCode) -> u64 {
        self.codes[code.index()]
    }

    pub fn diff_counts(&self) -> &BTreeMap<i32, u64> {
        &self.diffs
    }

    pub fn record_degenerate(&mut self) {
        self.trials += 1;
        self.degenerate += 1;
    }

    /// Adds one classified trial. `house_pool` and `state_count` size the Senate sweep.
    pub fn record(&mut self, r: &OutcomeRecord, house_pool: u32, state_count: u32) {
        self.trials += 1;
        self.codes[r.code.index()] += 1;
        if r.electoral_winner_full == Decision::Winner(Party::Democrat) {
            self.dem_wins_full += 1;
        }
        self.tie_full += r.tie_full as u64;
        self.tie_house += r.tie_house as u64;
        // At most half the states (25 of 51) loses the states-won limit.
        if 2 * r.popular_winner_states <= state_count {
            self.states_won_unpopular += 1;
        }
        for (i, &k) in self.k_values.iter().enumerate() {
            let won = 2 * (r.popular_winner_h as u64 + k as u64 * r.popular_winner_states as u64);
            let pool = house_pool as u64 + k as u64 * state_count as u64;
            if won <= pool {
                self.sweep_unpopular[i] += 1;
            }
            if won == pool {
                self.sweep_ties[i] += 1;
            }
        }
        if r.code.unpopular_full() {
            *self.diffs.entry(r.signed_electoral_diff).or_insert(0) += 1;
        }
        let p = (r.popular_winner == Party::Republican) as usize;
        let c = r.carried_california as usize;
        self.california[p][c] += 1;
        if r.code.unpopular_full() {
            self.california_unpopular[p][c] += 1;
        }
    }

    /// # Panics
    /// If the two accumulators were built with different sweep lists.
    pub fn merge(&mut self, other: &BatchAccumulator) {
        assert_eq!(self.k_values, other.k_values, "merging accumulators with different sweeps");
        self.trials += other.trials;
        for (a, b) in self.codes.iter_mut().zip(other.codes) {
            *a += b;
        }
        self.degenerate += other.degenerate;
        self.dem_wins_full += other.dem_wins_full;
        self.tie_full += other.tie_full;
        self.tie_house += other.tie_house;
        self.states_won_unpopular += other.states_won_unpopular;
        for (a, b) in self.sweep_unpopular.iter_mut().zip(&other.sweep_unpopular) {
            *a += b;
        }
        for (a, b) in self.sweep_ties.iter_mut().zip(&other.sweep_ties) {
            *a += b;
        }
        for (d, n) in &other.diffs {
            *self.diffs.entry(*d).or_insert(0) += n;
        }
        for p in 0..2 {
            for c in 0..2 {
                self.california[p][c] += other.california[p][c];
                self.california_unpopular[p][c] += other.california_unpopular[p][c];
            }
        }
    }

    pub fn merged(mut self, other: &BatchAccumulator) -> BatchAccumulator {
        self.merge(other);
        self
    }

    pub fn summary(&self, seed: u64, bin_width: u32) -> RunSummary {
        let frac = |n: u64| if self.trials == 0 { 0.0 } else { n as f64 / self.trials as f64 };
        let mut freq = BTreeMap::new();
        let mut counts = BTreeMap::new();
        for code in OutcomeCode::ALL {
            freq.insert(code.as_str().to_string(), frac(self.count(code)));
            counts.insert(code.as_str().to_string(), self.count(code));
        }
        freq.insert("DEGENERATE".to_string(), frac(self.degenerate));
        counts.insert("DEGENERATE".to_string(), self.degenerate);

        let senate_sweep = self
            .k_values
            .iter()
            .zip(&self.sweep_unpopular)
            .zip(&self.sweep_ties)
            .map(|((&k, &n), &t)| SweepEntry {
                k,
                unpopular: frac(n),
                ties: frac(t),
            })
            .collect();

        RunSummary {
            trials: self.trials,
            seed,
            counts,
            freq,
            unpopular_full: frac(self.count(OutcomeCode::LW) + self.count(OutcomeCode::LL)),
            unpopular_house: frac(self.count(OutcomeCode::WL) + self.count(OutcomeCode::LL)),
            dem_win_rate: frac(self.dem_wins_full),
            tie_full: frac(self.tie_full),
            tie_house: frac(self.tie_house),
            degenerate: self.degenerate,
            states_won_unpopular: frac(self.states_won_unpopular),
            senate_sweep,
            diff_histogram: Histogram::from_counts(&self.diffs, bin_width),
            california_crosstab: Crosstab::from_counts(self.california),
            california_crosstab_unpopular: Crosstab::from_counts(self.california_unpopular),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub k: u32,
    /// Fraction of trials the popular winner fails to win a strict majority.
    pub unpopular: f64,
    /// Fraction of trials ending in an exact split (included in `unpopular`).
    pub ties: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramBin {
    /// Inclusive lower edge.
    pub lo: i32,
    /// Exclusive upper edge.
    pub hi: i32,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_width: u32,
    /// Contiguous bins from the lowest to the highest occupied one.
    pub bins: Vec<HistogramBin>,
    pub total: u64,
    pub positive: u64,
    pub zero: u64,
    pub negative: u64,
}

impl Histogram {
    /// # Panics
    /// If `bin_width` is zero.
    pub fn from_counts(counts: &BTreeMap<i32, u64>, bin_width: u32) -> Histogram {
        assert!(bin_width > 0, "bin width must be positive");
        let w = bin_width as i32;
        let mut binned: BTreeMap<i32, u64> = BTreeMap::new();
        let (mut positive, mut zero, mut negative) = (0, 0, 0);
        for (&d, &n) in counts {
            *binned.entry(d.div_euclid(w) * w).or_insert(0) += n;
            match d.signum() {
                1 => positive += n,
                0 => zero += n,
                _ => negative += n,
            }
        }
        let bins = match (binned.keys().next(), binned.keys().next_back()) {
            (Some(&first), Some(&last)) => (first..=last)
                .step_by(bin_width as usize)
                .map(|lo| HistogramBin {
                    lo,
                    hi: lo + w,
                    count: binned.get(&lo).copied().unwrap_or(0),
                })
                .collect(),
            _ => Vec::new(),
        };
        Histogram {
            bin_width,
            bins,
            total: positive + zero + negative,
            positive,
            zero,
            negative,
        }
    }
}

/// Popular winner's party against whether they carried California.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crosstab {
    pub democrat_carried: u64,
    pub democrat_lost: u64,
    pub republican_carried: u64,
    pub republican_lost: u64,
}

impl Crosstab {
    fn from_counts(c: [[u64; 2]; 2]) -> Crosstab {
        Crosstab {
            democrat_carried: c[0][1],
            democrat_lost: c[0][0],
            republican_carried: c[1][1],
            republican_lost: c[1][0],
        }
    }

    pub fn total(&self) -> u64 {
        self.democrat_carried + self.democrat_lost + self.republican_carried + self.republican_lost
    }
}

/// Aggregate statistics of a batch. Field names are part of the JSON output format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub trials: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
    /// Keys `WW`, `WL`, `LW`, `LL`, `DEGENERATE`; values sum to one.
    pub freq: BTreeMap<String, f64>,
    pub unpopular_full: f64,
    pub unpopular_house: f64,
    pub dem_win_rate: f64,
    pub tie_full: f64,
    pub tie_house: f64,
    pub degenerate: u64,
    pub states_won_unpopular: f64,
    pub senate_sweep: Vec<SweepEntry>,
    pub diff_histogram: Histogram,
    pub california_crosstab: Crosstab,
    pub california_crosstab_unpopular: Crosstab,
}

impl RunSummary {
    pub fn sweep(&self, k: u32) -> Option<&SweepEntry> {
        self.senate_sweep.iter().find(|e| e.k == k)
    }
}

fn check_dims(model: &PcaModel, structure: &StateStructure) -> Result<(), ModelError> {
    if model.dim() != structure.len() {
        return Err(ModelError::DimensionMismatch {
            expected: structure.len(),
            found: model.dim(),
        });
    }
    Ok(())
}

/// One trial: `None` if a state or the popular vote is exactly tied.
pub fn simulate_trial(
    model: &PcaModel,
    structure: &StateStructure,
    seed: u64,
    trial: u64,
) -> Result<Option<OutcomeRecord>, ModelError> {
    let noise = draw_noise(seed, trial, model.rank());
    let shares = generate_shares(model, &noise)?;
    let record = electoral_totals(&shares, structure, ElectorRule::Full)
        .and_then(|t| classify(&t))
        .ok()
        .map(|r| r.with_trial(trial));
    Ok(record)
}

/// Runs trials `range` and hands each classified record to `sink` in trial order.
pub fn run_range<F: FnMut(&OutcomeRecord)>(
    model: &PcaModel,
    structure: &StateStructure,
    seed: u64,
    range: Range<u64>,
    k_values: &[u32],
    mut sink: F,
) -> Result<BatchAccumulator, ModelError> {
    check_dims(model, structure)?;
    let house_pool = structure.total_house_electors();
    let state_count = structure.len() as u32;
    let mut acc = BatchAccumulator::new(k_values);
    for trial in range {
        match simulate_trial(model, structure, seed, trial)? {
            Some(r) => {
                acc.record(&r, house_pool, state_count);
                sink(&r);
            }
            None => acc.record_degenerate(),
        }
    }
    Ok(acc)
}

/// Serial batch over trials `0..trials` with [`DEFAULT_SWEEP`] and [`DEFAULT_BIN_WIDTH`].
pub fn run_batch(
    model: &PcaModel,
    dataset: &ElectionDataset,
    trials: u64,
    seed: u64,
) -> Result<RunSummary, ModelError> {
    let acc = run_range(model, dataset.structure(), seed, 0..trials, &DEFAULT_SWEEP, |_| {})?;
    Ok(acc.summary(seed, DEFAULT_BIN_WIDTH))
}

/// Like [`run_batch`], also returning every non-degenerate record.
pub fn run_batch_with_records(
    model: &PcaModel,
    dataset: &ElectionDataset,
    trials: u64,
    seed: u64,
) -> Result<(RunSummary, Vec<OutcomeRecord>), ModelError> {
    let mut records = Vec::new();
    let acc = run_range(model, dataset.structure(), seed, 0..trials, &DEFAULT_SWEEP, |r| {
        records.push(r.clone())
    })?;
    Ok((acc.summary(seed, DEFAULT_BIN_WIDTH), records))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SenateSweep {
    pub trials: u64,
    pub seed: u64,
    pub entries: Vec<SweepEntry>,
    /// Popular winner carries at most half the states.
    pub states_won: f64,
}

/// Unpopular-outcome frequency for each `k`, all on the same trial stream.
pub fn senate_sweep(
    model: &PcaModel,
    dataset: &ElectionDataset,
    trials: u64,
    seed: u64,
    k_values: &[u32],
) -> Result<SenateSweep, ModelError> {
    let acc = run_range(model, dataset.structure(), seed, 0..trials, k_values, |_| {})?;
    let s = acc.summary(seed, DEFAULT_BIN_WIDTH);
    Ok(SenateSweep {
        trials,
        seed,
        entries: s.senate_sweep,
        states_won: s.states_won_unpopular,
    })
}
