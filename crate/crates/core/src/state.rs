use core::fmt;

use serde::{Deserialize, Serialize};

pub const STATE_COUNT: usize = 51;

/// The fifty states plus the District of Columbia, alphabetical, DC filed under D.
pub const STATE_NAMES: [&str; STATE_COUNT] = [
    "Alabama",
    "Alaska",
    "Arizona",
    "Arkansas",
    "California",
    "Colorado",
    "Connecticut",
    "Delaware",
    "District of Columbia",
    "Florida",
    "Georgia",
    "Hawaii",
    "Idaho",
    "Illinois",
    "Indiana",
    "Iowa",
    "Kansas",
    "Kentucky",
    "Louisiana",
    "Maine",
    "Maryland",
    "Massachusetts",
    "Michigan",
    "Minnesota",
    "Mississippi",
    "Missouri",
    "Montana",
    "Nebraska",
    "Nevada",
    "New Hampshire",
    "New Jersey",
    "New Mexico",
    "New York",
    "North Carolina",
    "North Dakota",
    "Ohio",
    "Oklahoma",
    "Oregon",
    "Pennsylvania",
    "Rhode Island",
    "South Carolina",
    "South Dakota",
    "Tennessee",
    "Texas",
    "Utah",
    "Vermont",
    "Virginia",
    "Washington",
    "West Virginia",
    "Wisconsin",
    "Wyoming",
];

/// Index into [`STATE_NAMES`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateId(u8);

impl StateId {
    pub const CALIFORNIA: StateId = StateId(4);
    pub const DISTRICT_OF_COLUMBIA: StateId = StateId(8);

    pub fn new(index: usize) -> Option<StateId> {
        (index < STATE_COUNT).then_some(StateId(index as u8))
    }

    /// Looks a state up by its canonical name. `DC` is accepted as an alias.
    pub fn from_name(name: &str) -> Option<StateId> {
        let name = name.trim();
        if name == "DC" {
            return Some(Self::DISTRICT_OF_COLUMBIA);
        }
        STATE_NAMES
            .binary_search(&name)
            .ok()
            .map(|i| StateId(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> &'static str {
        STATE_NAMES[self.index()]
    }

    pub fn all() -> impl Iterator<Item = StateId> {
        (0..STATE_COUNT).map(|i| StateId(i as u8))
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_sorted_and_distinct() {
        for pair in STATE_NAMES.windows(2) {
            assert!(pair[0] < pair[1], "{} !< {}", pair[0], pair[1]);
        }
    }

    #[test]
    fn index_round_trips() {
        for id in StateId::all() {
            assert_eq!(StateId::from_name(id.name()), Some(id));
        }
        assert_eq!(StateId::from_name("California"), Some(StateId::CALIFORNIA));
        assert_eq!(StateId::from_name("DC"), Some(StateId::DISTRICT_OF_COLUMBIA));
        assert_eq!(StateId::from_name("Puerto Rico"), None);
        assert_eq!(StateId::new(51), None);
    }
}
