//! Three-state toy elections, one for each kind of unpopular outcome.
//!
//! States have turnouts 300/100/100 and 3/1/1 House electors; each carries two
//! Senate electors. Candidate A is the Democrat.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::dataset::StateStructure;
use crate::error::TallyError;
use crate::generator::SimulatedShares;
use crate::outcome::{classify, OutcomeCode};
use crate::tally::{electoral_totals, ElectorRule, TallyResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub code: OutcomeCode,
    /// Candidate A's share in each state.
    pub shares: [f64; 3],
    pub description: &'static str,
    /// Expected `(A, B)` popular votes, full electors and House electors.
    pub popular: (u32, u32),
    pub full: (u32, u32),
    pub house: (u32, u32),
}

pub const SCENARIOS: [Scenario; 3] = [
    Scenario {
        code: OutcomeCode::LW,
        shares: [0.53, 0.47, 0.47],
        description: "unpopular only because of Senate electors",
        popular: (253, 247),
        full: (5, 6),
        house: (3, 2),
    },
    Scenario {
        code: OutcomeCode::LL,
        shares: [0.49, 0.49, 0.65],
        description: "unpopular under either allocation",
        popular: (261, 239),
        full: (3, 8),
        house: (1, 4),
    },
    Scenario {
        code: OutcomeCode::WL,
        shares: [0.49, 0.53, 0.53],
        description: "unpopular only with House electors alone",
        popular: (253, 247),
        full: (6, 5),
        house: (2, 3),
    },
];

pub fn toy_structure() -> StateStructure {
    StateStructure::new(
        vec!["State 1".to_string(), "State 2".to_string(), "State 3".to_string()],
        vec![300, 100, 100],
        vec![3, 1, 1],
    )
    .expect("toy structure is valid")
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub scenario: Scenario,
    pub full: TallyResult,
    pub house: TallyResult,
    pub code: OutcomeCode,
}

impl ScenarioResult {
    pub fn popular(&self) -> (f64, f64) {
        (self.full.dem_pop, self.full.rep_pop)
    }

    /// Cells that differ from the expected table, by name.
    pub fn mismatches(&self) -> Vec<String> {
        let s = &self.scenario;
        let mut out = Vec::new();
        let (a, b) = self.popular();
        // Turnout times share is exact up to rounding in the last bit.
        if libm::fabs(a - s.popular.0 as f64) > 1e-9 || libm::fabs(b - s.popular.1 as f64) > 1e-9 {
            out.push("popular".to_string());
        }
        if (self.full.dem_electors, self.full.rep_electors) != s.full {
            out.push("full".to_string());
        }
        if (self.house.dem_electors, self.house.rep_electors) != s.house {
            out.push("house".to_string());
        }
        if self.code != s.code {
            out.push("code".to_string());
        }
        out
    }
}

pub fn run_scenario(scenario: &Scenario) -> Result<ScenarioResult, TallyError> {
    let structure = toy_structure();
    let shares = SimulatedShares::from_raw(scenario.shares.to_vec());
    let full = electoral_totals(&shares, &structure, ElectorRule::Full)?;
    let house = electoral_totals(&shares, &structure, ElectorRule::HouseOnly)?;
    let code = classify(&full)?.code;
    Ok(ScenarioResult {
        scenario: *scenario,
        full,
        house,
        code,
    })
}
