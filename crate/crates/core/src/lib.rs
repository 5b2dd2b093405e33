//! Core model for simulating U.S. presidential elections under the Electoral College.
//!
//! The crate fits a principal-components model to historical state-level
//! two-party vote shares, generates correlated synthetic elections from it,
//! tallies them under several elector-allocation rules and aggregates how often
//! the national popular-vote winner fails to win the electoral vote.
//!
//! Everything here is pure computation over in-memory data and builds without
//! `std`; file formats, the parallel runner and the command line live in the
//! `elections` crate.
//!
//! ```
//! use elections_core::pca::PcaModel;
//! use elections_core::generator::{draw_noise, generate_shares};
//! use elections_core::linalg::Matrix;
//!
//! let shares = Matrix::from_rows(&[&[0.40, 0.60], &[0.60, 0.80], &[0.50, 0.65]]);
//! let model = PcaModel::fit(&shares).unwrap();
//! let noise = draw_noise(7, 0, model.rank());
//! let sim = generate_shares(&model, &noise).unwrap();
//! assert_eq!(sim.raw().len(), 2);
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dataset;
pub mod error;
pub mod figures;
pub mod generator;
pub mod linalg;
pub mod montecarlo;
pub mod outcome;
pub mod pca;
pub mod scenario;
pub mod state;
pub mod tally;

pub use dataset::{two_party_share, ElectionDataset, StateStructure};
pub use error::{DatasetError, ModelError, TallyError};
pub use generator::{draw_noise, generate_shares, NoiseVector, SimulatedShares};
pub use montecarlo::{run_batch, senate_sweep, BatchAccumulator, RunSummary};
pub use outcome::{classify, OutcomeCode, OutcomeRecord};
pub use pca::PcaModel;
pub use state::{StateId, STATE_COUNT, STATE_NAMES};
pub use tally::{electoral_totals, popular_totals, state_winners, ElectorRule, Party, TallyResult};
