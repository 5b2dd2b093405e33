//! Historical state-level election data and per-state structural constants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::DatasetError;
use crate::linalg::Matrix;
use crate::state::{StateId, STATE_COUNT, STATE_NAMES};

pub const FIRST_YEAR: u16 = 1964;
pub const LAST_YEAR: u16 = 2008;
pub const ELECTION_COUNT: usize = 12;
pub const HOUSE_ELECTORS: u32 = 436;
pub const SENATE_ELECTORS_PER_STATE: u32 = 2;
pub const TOTAL_ELECTORS: u32 = HOUSE_ELECTORS + SENATE_ELECTORS_PER_STATE * STATE_COUNT as u32;

/// Democratic share of the two-party vote.
pub fn two_party_share(dem_votes: u64, rep_votes: u64) -> Result<f64, DatasetError> {
    if dem_votes == 0 || rep_votes == 0 {
        return Err(DatasetError::DegenerateVote {
            dem: dem_votes,
            rep: rep_votes,
        });
    }
    Ok(dem_votes as f64 / (dem_votes as f64 + rep_votes as f64))
}

pub fn election_years() -> impl Iterator<Item = u16> {
    (FIRST_YEAR..=LAST_YEAR).step_by(4)
}

/// How each state's result is weighted and rewarded: voters and House electors.
///
/// Any number of states is allowed here so that toy examples can use the same
/// tally code as the full 51-state data.
#[derive(Debug, Clone, PartialEq)]
pub struct StateStructure {
    names: Vec<String>,
    turnout: Vec<u64>,
    house_electors: Vec<u32>,
    california: Option<usize>,
}

impl StateStructure {
    pub fn new(
        names: Vec<String>,
        turnout: Vec<u64>,
        house_electors: Vec<u32>,
    ) -> Result<StateStructure, DatasetError> {
        if names.len() != turnout.len() || names.len() != house_electors.len() {
            return Err(DatasetError::MalformedRow(format!(
                "{} names, {} turnouts, {} elector counts",
                names.len(),
                turnout.len(),
                house_electors.len()
            )));
        }
        if names.is_empty() {
            return Err(DatasetError::MissingState("no states".to_string()));
        }
        if let Some(i) = turnout.iter().position(|&t| t == 0) {
            return Err(DatasetError::MalformedRow(format!(
                "{}: turnout must be positive",
                names[i]
            )));
        }
        if let Some(i) = house_electors.iter().position(|&h| h == 0) {
            return Err(DatasetError::MalformedRow(format!(
                "{}: needs at least one house elector",
                names[i]
            )));
        }
        let california = names.iter().position(|n| n == "California");
        Ok(StateStructure {
            names,
            turnout,
            house_electors,
            california,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn turnout(&self) -> &[u64] {
        &self.turnout
    }

    pub fn house_electors(&self) -> &[u32] {
        &self.house_electors
    }

    pub fn total_turnout(&self) -> f64 {
        self.turnout.iter().map(|&t| t as f64).sum()
    }

    pub fn total_house_electors(&self) -> u32 {
        self.house_electors.iter().sum()
    }

    pub fn california(&self) -> Option<usize> {
        self.california
    }
}

/// One cell of the share table as read from a file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShareInput {
    Share(f64),
    Votes { dem: u64, rep: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShareRecord {
    pub state: String,
    pub year: u16,
    pub value: ShareInput,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureRecord {
    pub state: String,
    pub turnout: u64,
    pub house_electors: u32,
}

/// Twelve elections by 51 states of Democratic two-party shares, plus 2008
/// turnout and House electors. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct ElectionDataset {
    years: Vec<u16>,
    shares: Matrix,
    structure: StateStructure,
}

impl ElectionDataset {
    /// Validates and assembles a dataset; row order in the inputs is irrelevant.
    pub fn from_records(
        shares: impl IntoIterator<Item = ShareRecord>,
        structure: impl IntoIterator<Item = StructureRecord>,
    ) -> Result<ElectionDataset, DatasetError> {
        let years: Vec<u16> = election_years().collect();
        let mut cells: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for rec in shares {
            let state = lookup(&rec.state)?;
            let year = years.iter().position(|&y| y == rec.year).ok_or_else(|| {
                DatasetError::MalformedRow(format!("{}: year {} out of range", rec.state, rec.year))
            })?;
            let share = match rec.value {
                ShareInput::Share(s) => s,
                ShareInput::Votes { dem, rep } => two_party_share(dem, rep)?,
            };
            if !(share > 0.0 && share < 1.0) {
                return Err(DatasetError::ShareOutOfRange {
                    state: state.name().to_string(),
                    year: rec.year,
                    value: share,
                });
            }
            if cells.insert((year, state.index()), share).is_some() {
                return Err(DatasetError::MalformedRow(format!(
                    "duplicate row for {} {}",
                    state, rec.year
                )));
            }
        }

        let mut matrix = Matrix::zeros(ELECTION_COUNT, STATE_COUNT);
        for (t, &year) in years.iter().enumerate() {
            for s in StateId::all() {
                match cells.get(&(t, s.index())) {
                    Some(&v) => matrix[(t, s.index())] = v,
                    None => {
                        return Err(DatasetError::MissingState(format!("{} has no {} row", s, year)))
                    }
                }
            }
        }

        let mut turnout = [None; STATE_COUNT];
        let mut house = [0u32; STATE_COUNT];
        for rec in structure {
            let state = lookup(&rec.state)?;
            if turnout[state.index()].is_some() {
                return Err(DatasetError::MalformedRow(format!("duplicate structure row for {}", state)));
            }
            turnout[state.index()] = Some(rec.turnout);
            house[state.index()] = rec.house_electors;
        }
        let mut turnout_vec = Vec::with_capacity(STATE_COUNT);
        for s in StateId::all() {
            match turnout[s.index()] {
                Some(t) => turnout_vec.push(t),
                None => return Err(DatasetError::MissingState(format!("{} has no structure row", s))),
            }
        }
        let found: u32 = house.iter().sum();
        if found != HOUSE_ELECTORS {
            return Err(DatasetError::ElectorSumMismatch {
                found,
                expected: HOUSE_ELECTORS,
            });
        }
        if house[StateId::DISTRICT_OF_COLUMBIA.index()] != 1 {
            return Err(DatasetError::MalformedRow(
                "District of Columbia must have exactly one house elector".to_string(),
            ));
        }
        let structure = StateStructure::new(
            STATE_NAMES.iter().map(|n| n.to_string()).collect(),
            turnout_vec,
            house.to_vec(),
        )?;

        Ok(ElectionDataset {
            years,
            shares: matrix,
            structure,
        })
    }

    pub fn years(&self) -> &[u16] {
        &self.years
    }

    /// Elections × states.
    pub fn shares(&self) -> &Matrix {
        &self.shares
    }

    pub fn share(&self, year_index: usize, state: StateId) -> f64 {
        self.shares[(year_index, state.index())]
    }

    pub fn structure(&self) -> &StateStructure {
        &self.structure
    }

    /// Keeps only the elections from `start_year` on. At least two must remain.
    pub fn since(&self, start_year: u16) -> Result<ElectionDataset, DatasetError> {
        let keep: Vec<usize> = (0..self.years.len())
            .filter(|&t| self.years[t] >= start_year)
            .collect();
        if keep.len() < 2 {
            return Err(DatasetError::MissingState(format!(
                "only {} election(s) from {} on",
                keep.len(),
                start_year
            )));
        }
        let mut shares = Matrix::zeros(keep.len(), STATE_COUNT);
        for (i, &t) in keep.iter().enumerate() {
            shares.row_mut(i).copy_from_slice(self.shares.row(t));
        }
        Ok(ElectionDataset {
            years: keep.iter().map(|&t| self.years[t]).collect(),
            shares,
            structure: self.structure.clone(),
        })
    }

    /// Rows in canonical (year, state) order, suitable for writing back out.
    pub fn share_records(&self) -> impl Iterator<Item = (u16, StateId, f64)> + '_ {
        self.years.iter().enumerate().flat_map(move |(t, &y)| {
            StateId::all().map(move |s| (y, s, self.shares[(t, s.index())]))
        })
    }

    /// Pearson correlations of every unordered pair of state share columns,
    /// in row-major upper-triangle order.
    pub fn state_correlations(&self) -> Vec<f64> {
        column_correlations(&self.shares)
    }
}

fn lookup(name: &str) -> Result<StateId, DatasetError> {
    StateId::from_name(name).ok_or_else(|| DatasetError::MalformedRow(format!("unknown state {:?}", name)))
}

/// Upper-triangle Pearson correlations between the columns of `x`.
/// Pairs involving a constant column come out as NaN.
pub fn column_correlations(x: &Matrix) -> Vec<f64> {
    let n = x.rows() as f64;
    let cols: Vec<Vec<f64>> = (0..x.cols())
        .map(|c| {
            let col = x.column(c);
            let mean = col.iter().sum::<f64>() / n;
            col.into_iter().map(|v| v - mean).collect()
        })
        .collect();
    let norms: Vec<f64> = cols.iter().map(|c| crate::linalg::norm(c)).collect();
    let mut out = Vec::with_capacity(x.cols() * x.cols().saturating_sub(1) / 2);
    for i in 0..cols.len() {
        for j in (i + 1)..cols.len() {
            out.push(crate::linalg::dot(&cols[i], &cols[j]) / (norms[i] * norms[j]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_records(share: impl Fn(u16, StateId) -> f64) -> Vec<ShareRecord> {
        election_years()
            .flat_map(|y| {
                StateId::all().map(move |s| (y, s))
            })
            .map(|(y, s)| ShareRecord {
                state: s.name().to_string(),
                year: y,
                value: ShareInput::Share(share(y, s)),
            })
            .collect()
    }

    pub(crate) fn structure_records() -> Vec<StructureRecord> {
        // Eight each, DC one, California takes the remainder of 436.
        StateId::all()
            .map(|s| {
                let h = match s {
                    StateId::DISTRICT_OF_COLUMBIA => 1,
                    StateId::CALIFORNIA => 436 - 49 * 8 - 1,
                    _ => 8,
                };
                StructureRecord {
                    state: s.name().to_string(),
                    turnout: 1000 + s.index() as u64,
                    house_electors: h,
                }
            })
            .collect()
    }

    #[test]
    fn two_party_share_examples() {
        assert_eq!(two_party_share(500, 500).unwrap(), 0.5);
        assert!((two_party_share(159, 141).unwrap() - 0.53).abs() < 1e-15);
        assert!((two_party_share(65, 35).unwrap() - 0.65).abs() < 1e-15);
        assert_eq!(
            two_party_share(0, 10),
            Err(DatasetError::DegenerateVote { dem: 0, rep: 10 })
        );
        assert!(two_party_share(10, 0).is_err());
    }

    #[test]
    fn builds_valid_dataset() {
        let ds = ElectionDataset::from_records(
            full_records(|y, s| 0.3 + 0.001 * s.index() as f64 + 0.0001 * (y - 1964) as f64),
            structure_records(),
        )
        .unwrap();
        assert_eq!(ds.years().len(), 12);
        assert_eq!(ds.shares().rows(), 12);
        assert_eq!(ds.shares().cols(), 51);
        assert_eq!(ds.structure().total_house_electors() + 102, TOTAL_ELECTORS);
        assert_eq!(ds.structure().california(), Some(StateId::CALIFORNIA.index()));
    }

    #[test]
    fn share_at_boundary_is_rejected() {
        let err = ElectionDataset::from_records(
            full_records(|y, s| if y == 1980 && s == StateId::CALIFORNIA { 1.0 } else { 0.5 }),
            structure_records(),
        )
        .unwrap_err();
        assert_eq!(err.name(), "ShareOutOfRange");
    }

    #[test]
    fn missing_district_of_columbia() {
        let shares: Vec<_> = full_records(|_, _| 0.4)
            .into_iter()
            .filter(|r| r.state != "District of Columbia")
            .collect();
        let err = ElectionDataset::from_records(shares, structure_records()).unwrap_err();
        assert_eq!(err.name(), "MissingState");
    }

    #[test]
    fn missing_year() {
        let shares: Vec<_> = full_records(|_, _| 0.4)
            .into_iter()
            .filter(|r| r.year != 2008)
            .collect();
        let err = ElectionDataset::from_records(shares, structure_records()).unwrap_err();
        assert_eq!(err.name(), "MissingState");
    }

    #[test]
    fn elector_sum_mismatch() {
        let mut st = structure_records();
        st[0].house_electors += 1;
        let err = ElectionDataset::from_records(full_records(|_, _| 0.4), st).unwrap_err();
        assert_eq!(
            err,
            DatasetError::ElectorSumMismatch {
                found: 437,
                expected: 436
            }
        );
    }

    #[test]
    fn vote_counts_are_normalized() {
        let mut recs = full_records(|_, _| 0.4);
        recs[0].value = ShareInput::Votes { dem: 159, rep: 141 };
        let ds = ElectionDataset::from_records(recs, structure_records()).unwrap();
        assert!((ds.share(0, StateId::new(0).unwrap()) - 0.53).abs() < 1e-15);
    }

    #[test]
    fn unknown_state_and_duplicates_are_malformed() {
        let mut recs = full_records(|_, _| 0.4);
        recs[3].state = "Puerto Rico".to_string();
        assert_eq!(
            ElectionDataset::from_records(recs, structure_records()).unwrap_err().name(),
            "MalformedRow"
        );
        let mut recs = full_records(|_, _| 0.4);
        let dup = recs[0].clone();
        recs.push(dup);
        assert_eq!(
            ElectionDataset::from_records(recs, structure_records()).unwrap_err().name(),
            "MalformedRow"
        );
    }

    #[test]
    fn since_refits_window() {
        let ds = ElectionDataset::from_records(full_records(|y, _| 0.3 + 0.01 * ((y - 1964) / 4) as f64), structure_records()).unwrap();
        let recent = ds.since(2000).unwrap();
        assert_eq!(recent.years(), &[2000, 2004, 2008]);
        assert!((recent.shares()[(0, 0)] - 0.39).abs() < 1e-12);
        assert!(ds.since(2008).is_err());
    }

    #[test]
    fn correlations_of_collinear_columns() {
        let x = Matrix::from_rows(&[&[0.1, 0.2, 0.9], &[0.2, 0.4, 0.8], &[0.3, 0.6, 0.7]]);
        let c = column_correlations(&x);
        assert_eq!(c.len(), 3);
        assert!((c[0] - 1.0).abs() < 1e-12);
        assert!((c[1] + 1.0).abs() < 1e-12);
        assert!((c[2] + 1.0).abs() < 1e-12);
    }
}
