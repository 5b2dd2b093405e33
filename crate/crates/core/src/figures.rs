//! Tabular data behind the scatter and histogram plots.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::TallyError;
use crate::montecarlo::{Histogram, DEFAULT_BIN_WIDTH};
use crate::outcome::OutcomeRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Popular winner's House and Senate electors, one row per trial.
    ScatterHs,
    /// Signed electoral differences of trials unpopular with full electors.
    DiffHistogram { bin_width: u32 },
    /// Like `ScatterHs`, with the popular winner's party and California result.
    CaliforniaScatter,
}

impl Figure {
    pub fn diff_histogram() -> Figure {
        Figure::DiffHistogram {
            bin_width: DEFAULT_BIN_WIDTH,
        }
    }

    /// Suggested file stem.
    pub fn name(self) -> &'static str {
        match self {
            Figure::ScatterHs => "scatter_hs",
            Figure::DiffHistogram { .. } => "diff_histogram",
            Figure::CaliforniaScatter => "california_scatter",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn emit_figure_data(records: &[OutcomeRecord], which: Figure) -> Result<Table, TallyError> {
    if records.is_empty() {
        return Err(TallyError::EmptyInput);
    }
    let table = match which {
        Figure::ScatterHs => Table {
            header: vec!["H", "S", "code"],
            rows: records
                .iter()
                .map(|r| {
                    vec![
                        r.popular_winner_h.to_string(),
                        r.popular_winner_s.to_string(),
                        r.code.as_str().to_string(),
                    ]
                })
                .collect(),
        },
        Figure::DiffHistogram { bin_width } => {
            let mut counts = BTreeMap::new();
            for r in records.iter().filter(|r| r.code.unpopular_full()) {
                *counts.entry(r.signed_electoral_diff).or_insert(0u64) += 1;
            }
            let h = Histogram::from_counts(&counts, bin_width);
            Table {
                header: vec!["lo", "hi", "count"],
                rows: h
                    .bins
                    .iter()
                    .map(|b| vec![b.lo.to_string(), b.hi.to_string(), b.count.to_string()])
                    .collect(),
            }
        }
        Figure::CaliforniaScatter => Table {
            header: vec!["H", "S", "popular_winner", "carried_california"],
            rows: records
                .iter()
                .map(|r| {
                    vec![
                        r.popular_winner_h.to_string(),
                        r.popular_winner_s.to_string(),
                        r.popular_winner.letter().to_string(),
                        r.carried_california.to_string(),
                    ]
                })
                .collect(),
        },
    };
    Ok(table)
}
