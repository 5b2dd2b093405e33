//! Winner-take-all tallies of a share vector under several elector rules.

use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::{StateStructure, SENATE_ELECTORS_PER_STATE};
use crate::error::TallyError;
use crate::generator::SimulatedShares;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Party {
    Democrat,
    Republican,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::Democrat => Party::Republican,
            Party::Republican => Party::Democrat,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Party::Democrat => 'D',
            Party::Republican => 'R',
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Party::Democrat => "Democrat",
            Party::Republican => "Republican",
        })
    }
}

/// How electors are allotted to the winner of each state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElectorRule {
    /// House electors plus two Senate electors per state.
    Full,
    HouseOnly,
    /// House electors plus `k` Senate electors per state.
    SenateK(u32),
    /// Whoever carries more states wins.
    StatesWon,
}

impl ElectorRule {
    /// Senate electors per state, `None` for the states-won limit.
    pub fn senate_per_state(self) -> Option<u32> {
        match self {
            ElectorRule::Full => Some(SENATE_ELECTORS_PER_STATE),
            ElectorRule::HouseOnly => Some(0),
            ElectorRule::SenateK(k) => Some(k),
            ElectorRule::StatesWon => None,
        }
    }
}

impl fmt::Display for ElectorRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElectorRule::Full => f.write_str("full"),
            ElectorRule::HouseOnly => f.write_str("house-only"),
            ElectorRule::SenateK(k) => write!(f, "senate-{}", k),
            ElectorRule::StatesWon => f.write_str("states-won"),
        }
    }
}

/// Result of a contest decided by an elector pool: a strict majority or an exact split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    Winner(Party),
    Tie,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TallyResult {
    pub rule: ElectorRule,
    pub dem_pop: f64,
    pub rep_pop: f64,
    pub dem_house: u32,
    pub rep_house: u32,
    /// Two Senate electors per state carried.
    pub dem_senate: u32,
    pub rep_senate: u32,
    pub dem_states: u32,
    pub rep_states: u32,
    /// Electors (states, for `StatesWon`) under `rule`.
    pub dem_electors: u32,
    pub rep_electors: u32,
    pub carried: Vec<Party>,
    pub california: Option<Party>,
}

impl TallyResult {
    pub fn house(&self, party: Party) -> u32 {
        match party {
            Party::Democrat => self.dem_house,
            Party::Republican => self.rep_house,
        }
    }

    pub fn senate(&self, party: Party) -> u32 {
        match party {
            Party::Democrat => self.dem_senate,
            Party::Republican => self.rep_senate,
        }
    }

    pub fn states(&self, party: Party) -> u32 {
        match party {
            Party::Democrat => self.dem_states,
            Party::Republican => self.rep_states,
        }
    }

    pub fn house_pool(&self) -> u32 {
        self.dem_house + self.rep_house
    }

    pub fn state_count(&self) -> u32 {
        self.dem_states + self.rep_states
    }

    /// Electors won by `party` under `rule`, and the size of the pool.
    pub fn electors_under(&self, rule: ElectorRule, party: Party) -> (u32, u32) {
        match rule.senate_per_state() {
            Some(k) => (
                self.house(party) + k * self.states(party),
                self.house_pool() + k * self.state_count(),
            ),
            None => (self.states(party), self.state_count()),
        }
    }

    pub fn decision_under(&self, rule: ElectorRule) -> Decision {
        let (dem, pool) = self.electors_under(rule, Party::Democrat);
        decide(dem, pool)
    }

    pub fn decision(&self) -> Decision {
        self.decision_under(self.rule)
    }

    pub fn popular_winner(&self) -> Option<Party> {
        if self.dem_pop > self.rep_pop {
            Some(Party::Democrat)
        } else if self.rep_pop > self.dem_pop {
            Some(Party::Republican)
        } else {
            None
        }
    }
}

/// Strict majority of the pool wins; exactly half is a tie.
pub fn decide(dem: u32, pool: u32) -> Decision {
    let twice = 2 * dem;
    if twice > pool {
        Decision::Winner(Party::Democrat)
    } else if twice < pool {
        Decision::Winner(Party::Republican)
    } else {
        Decision::Tie
    }
}

/// Real-valued national popular totals weighted by turnout.
pub fn popular_totals(shares: &SimulatedShares, structure: &StateStructure) -> Result<(f64, f64), TallyError> {
    check_len(shares, structure)?;
    let mut dem = 0.0;
    let mut rep = 0.0;
    for (s, &t) in shares.clamped().iter().zip(structure.turnout()) {
        let t = t as f64;
        dem += s * t;
        rep += (1.0 - s) * t;
    }
    Ok((dem, rep))
}

pub fn state_winners(shares: &SimulatedShares) -> Result<Vec<Party>, TallyError> {
    shares
        .clamped()
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if s > 0.5 {
                Ok(Party::Democrat)
            } else if s < 0.5 {
                Ok(Party::Republican)
            } else {
                Err(TallyError::TiedState(i))
            }
        })
        .collect()
}

pub fn electoral_totals(
    shares: &SimulatedShares,
    structure: &StateStructure,
    rule: ElectorRule,
) -> Result<TallyResult, TallyError> {
    let (dem_pop, rep_pop) = popular_totals(shares, structure)?;
    let carried = state_winners(shares)?;
    let mut dem_house = 0;
    let mut rep_house = 0;
    let mut dem_states = 0;
    let mut rep_states = 0;
    for (p, &h) in carried.iter().zip(structure.house_electors()) {
        match p {
            Party::Democrat => {
                dem_house += h;
                dem_states += 1;
            }
            Party::Republican => {
                rep_house += h;
                rep_states += 1;
            }
        }
    }
    let mut result = TallyResult {
        rule,
        dem_pop,
        rep_pop,
        dem_house,
        rep_house,
        dem_senate: SENATE_ELECTORS_PER_STATE * dem_states,
        rep_senate: SENATE_ELECTORS_PER_STATE * rep_states,
        dem_states,
        rep_states,
        dem_electors: 0,
        rep_electors: 0,
        california: structure.california().map(|i| carried[i]),
        carried,
    };
    result.dem_electors = result.electors_under(rule, Party::Democrat).0;
    result.rep_electors = result.electors_under(rule, Party::Republican).0;
    Ok(result)
}

fn check_len(shares: &SimulatedShares, structure: &StateStructure) -> Result<(), TallyError> {
    if shares.len() != structure.len() {
        return Err(TallyError::DimensionMismatch {
            expected: structure.len(),
            found: shares.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn toy() -> StateStructure {
        StateStructure::new(
            vec!["1".to_string(), "2".to_string(), "3".to_string()],
            vec![300, 100, 100],
            vec![3, 1, 1],
        )
        .unwrap()
    }

    fn shares(v: &[f64]) -> SimulatedShares {
        SimulatedShares::from_raw(v.to_vec())
    }

    #[test]
    fn popular_totals_match_table() {
        let (a, b) = popular_totals(&shares(&[0.53, 0.47, 0.47]), &toy()).unwrap();
        assert!((a - 253.0).abs() < 1e-9 && (b - 247.0).abs() < 1e-9);
        let (a, b) = popular_totals(&shares(&[0.49, 0.49, 0.65]), &toy()).unwrap();
        assert!((a - 261.0).abs() < 1e-9 && (b - 239.0).abs() < 1e-9);
        let (a, b) = popular_totals(&shares(&[0.5, 0.5, 0.5]), &toy()).unwrap();
        assert_eq!(a, 250.0);
        assert_eq!(b, 250.0);
    }

    #[test]
    fn winners() {
        use Party::*;
        assert_eq!(
            state_winners(&shares(&[0.53, 0.47, 0.47])).unwrap(),
            vec![Democrat, Republican, Republican]
        );
        assert_eq!(
            state_winners(&shares(&[0.53, 0.5, 0.47])),
            Err(TallyError::TiedState(1))
        );
        assert!(state_winners(&shares(&[0.9; 51]))
            .unwrap()
            .iter()
            .all(|p| *p == Democrat));
    }

    #[test]
    fn scenario_lw_electors() {
        let s = shares(&[0.53, 0.47, 0.47]);
        let full = electoral_totals(&s, &toy(), ElectorRule::Full).unwrap();
        assert_eq!((full.dem_electors, full.rep_electors), (5, 6));
        let house = electoral_totals(&s, &toy(), ElectorRule::HouseOnly).unwrap();
        assert_eq!((house.dem_electors, house.rep_electors), (3, 2));
        assert_eq!(full.decision(), Decision::Winner(Party::Republican));
        assert_eq!(house.decision(), Decision::Winner(Party::Democrat));
    }

    #[test]
    fn scenario_wl_electors() {
        let s = shares(&[0.49, 0.53, 0.53]);
        let full = electoral_totals(&s, &toy(), ElectorRule::Full).unwrap();
        assert_eq!((full.dem_electors, full.rep_electors), (6, 5));
        let house = electoral_totals(&s, &toy(), ElectorRule::HouseOnly).unwrap();
        assert_eq!((house.dem_electors, house.rep_electors), (2, 3));
    }

    #[test]
    fn rule_equivalences() {
        let s = shares(&[0.49, 0.53, 0.41]);
        let a = electoral_totals(&s, &toy(), ElectorRule::SenateK(0)).unwrap();
        let b = electoral_totals(&s, &toy(), ElectorRule::HouseOnly).unwrap();
        assert_eq!((a.dem_electors, a.rep_electors), (b.dem_electors, b.rep_electors));
        let c = electoral_totals(&s, &toy(), ElectorRule::SenateK(2)).unwrap();
        let d = electoral_totals(&s, &toy(), ElectorRule::Full).unwrap();
        assert_eq!((c.dem_electors, c.rep_electors), (d.dem_electors, d.rep_electors));
        let e = electoral_totals(&s, &toy(), ElectorRule::StatesWon).unwrap();
        assert_eq!((e.dem_electors, e.rep_electors), (1, 2));
    }

    #[test]
    fn decide_thresholds() {
        assert_eq!(decide(270, 538), Decision::Winner(Party::Democrat));
        assert_eq!(decide(269, 538), Decision::Tie);
        assert_eq!(decide(268, 538), Decision::Winner(Party::Republican));
        assert_eq!(decide(219, 436), Decision::Winner(Party::Democrat));
        assert_eq!(decide(218, 436), Decision::Tie);
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            popular_totals(&shares(&[0.5, 0.4]), &toy()),
            Err(TallyError::DimensionMismatch { expected: 3, found: 2 })
        );
    }
}
