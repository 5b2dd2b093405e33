//! File formats, the parallel batch runner and text reports for the
//! `elections` command.

pub mod io;
pub mod report;
pub mod runner;

use serde::Serialize;

use elections_core::{PcaModel, StateId};

/// Election years accepted as the first year of the fitted sample.
pub const START_YEARS: std::ops::RangeInclusive<u16> = 1964..=2000;

/// Fewer elections than this still fit, with a warning.
pub const WARN_BELOW_ELECTIONS: usize = 8;

#[derive(Debug, Serialize)]
pub struct PcaReport<'a> {
    pub years: &'a [u16],
    pub states: Vec<&'static str>,
    pub variance_explained: Vec<f64>,
    #[serde(flatten)]
    pub model: &'a PcaModel,
}

impl<'a> PcaReport<'a> {
    pub fn new(years: &'a [u16], model: &'a PcaModel) -> PcaReport<'a> {
        PcaReport {
            years,
            states: StateId::all().map(StateId::name).collect(),
            variance_explained: (1..=model.rank())
                .map(|k| model.variance_explained(k).expect("k within rank"))
                .collect(),
            model,
        }
    }
}
