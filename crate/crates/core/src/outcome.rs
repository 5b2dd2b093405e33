//! Two-letter outcome codes from the popular winner's point of view.
//!
//! The first letter is the popular winner's result with House and Senate
//! electors, the second with House electors only. A letter is `W` only for a
//! strict majority of the pool; an exact split counts as `L` (the popular
//! winner did not win) and is also flagged in `tie_full` / `tie_house`.

use core::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::SENATE_ELECTORS_PER_STATE;
use crate::error::TallyError;
use crate::tally::{Decision, ElectorRule, Party, TallyResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OutcomeCode {
    WW,
    WL,
    LW,
    LL,
}

impl OutcomeCode {
    pub const ALL: [OutcomeCode; 4] = [OutcomeCode::WW, OutcomeCode::WL, OutcomeCode::LW, OutcomeCode::LL];

    pub fn from_letters(wins_full: bool, wins_house: bool) -> OutcomeCode {
        match (wins_full, wins_house) {
            (true, true) => OutcomeCode::WW,
            (true, false) => OutcomeCode::WL,
            (false, true) => OutcomeCode::LW,
            (false, false) => OutcomeCode::LL,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeCode::WW => "WW",
            OutcomeCode::WL => "WL",
            OutcomeCode::LW => "LW",
            OutcomeCode::LL => "LL",
        }
    }

    /// Popular winner loses with House and Senate electors.
    pub fn unpopular_full(self) -> bool {
        matches!(self, OutcomeCode::LW | OutcomeCode::LL)
    }

    /// Popular winner loses with House electors only.
    pub fn unpopular_house(self) -> bool {
        matches!(self, OutcomeCode::WL | OutcomeCode::LL)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for OutcomeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub trial: u64,
    pub code: OutcomeCode,
    pub popular_winner: Party,
    pub electoral_winner_full: Decision,
    /// Democratic minus Republican electors with two Senate electors per state.
    pub signed_electoral_diff: i32,
    pub popular_winner_h: u32,
    pub popular_winner_s: u32,
    pub popular_winner_states: u32,
    /// False as well when the structure has no California.
    pub carried_california: bool,
    pub tie_full: bool,
    pub tie_house: bool,
    pub dem_pop: f64,
    pub rep_pop: f64,
}

impl OutcomeRecord {
    pub fn with_trial(mut self, trial: u64) -> OutcomeRecord {
        self.trial = trial;
        self
    }
}

pub fn classify(tally: &TallyResult) -> Result<OutcomeRecord, TallyError> {
    let winner = tally.popular_winner().ok_or(TallyError::ExactPopularTie)?;
    let h = tally.house(winner);
    let states = tally.states(winner);
    let s = SENATE_ELECTORS_PER_STATE * states;
    let full_pool = tally.house_pool() + SENATE_ELECTORS_PER_STATE * tally.state_count();
    let house_pool = tally.house_pool();

    let full = tally.decision_under(ElectorRule::Full);
    let house = tally.decision_under(ElectorRule::HouseOnly);
    let code = OutcomeCode::from_letters(2 * (h + s) > full_pool, 2 * h > house_pool);

    let dem_full = tally.electors_under(ElectorRule::Full, Party::Democrat).0 as i32;
    Ok(OutcomeRecord {
        trial: 0,
        code,
        popular_winner: winner,
        electoral_winner_full: full,
        signed_electoral_diff: 2 * dem_full - full_pool as i32,
        popular_winner_h: h,
        popular_winner_s: s,
        popular_winner_states: states,
        carried_california: tally.california == Some(winner),
        tie_full: full == Decision::Tie,
        tie_house: house == Decision::Tie,
        dem_pop: tally.dem_pop,
        rep_pop: tally.rep_pop,
    })
}
