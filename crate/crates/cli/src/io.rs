//! CSV input and output of the historical data.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use elections_core::dataset::{ShareInput, ShareRecord, StructureRecord};
use elections_core::{DatasetError, ElectionDataset};

pub const BUNDLED_SHARES: &str = include_str!("../../../data/elections_1964_2008.csv");
pub const BUNDLED_STRUCTURE: &str = include_str!("../../../data/structure_2008.csv");

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

impl LoadError {
    pub fn name(&self) -> &'static str {
        match self {
            LoadError::Io { .. } => "Io",
            LoadError::Dataset(e) => e.name(),
        }
    }
}

pub fn bundled_dataset() -> ElectionDataset {
    parse_dataset(BUNDLED_SHARES.as_bytes(), BUNDLED_STRUCTURE.as_bytes()).expect("bundled data is valid")
}

pub fn load_dataset(shares_path: &Path, structure_path: &Path) -> Result<ElectionDataset, LoadError> {
    let open = |p: &Path| {
        File::open(p).map_err(|source| LoadError::Io {
            path: p.to_path_buf(),
            source,
        })
    };
    Ok(parse_dataset(open(shares_path)?, open(structure_path)?)?)
}

pub fn parse_dataset(shares: impl Read, structure: impl Read) -> Result<ElectionDataset, DatasetError> {
    ElectionDataset::from_records(read_shares(shares)?, read_structure(structure)?)
}

fn malformed(e: csv::Error) -> DatasetError {
    DatasetError::MalformedRow(e.to_string())
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, what: &str) -> Result<T, DatasetError> {
    let raw = rec.get(i).unwrap_or("");
    raw.trim().parse().map_err(|_| {
        let line = rec.position().map_or(0, |p| p.line());
        DatasetError::MalformedRow(format!("line {}: bad {} {:?}", line, what, raw))
    })
}

/// Accepts either `state,year,dem_share` or `state,year,dem_votes,rep_votes`.
pub fn read_shares(input: impl Read) -> Result<Vec<ShareRecord>, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header: Vec<String> = rdr.headers().map_err(malformed)?.iter().map(str::to_string).collect();
    let votes = match header.iter().map(String::as_str).collect::<Vec<_>>()[..] {
        ["state", "year", "dem_share"] => false,
        ["state", "year", "dem_votes", "rep_votes"] => true,
        _ => return Err(DatasetError::MalformedRow(format!("unexpected header {:?}", header))),
    };
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(malformed)?;
        let value = if votes {
            ShareInput::Votes {
                dem: field(&rec, 2, "dem_votes")?,
                rep: field(&rec, 3, "rep_votes")?,
            }
        } else {
            ShareInput::Share(field(&rec, 2, "dem_share")?)
        };
        out.push(ShareRecord {
            state: rec[0].to_string(),
            year: field(&rec, 1, "year")?,
            value,
        });
    }
    Ok(out)
}

pub fn read_structure(input: impl Read) -> Result<Vec<StructureRecord>, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = rdr.headers().map_err(malformed)?.clone();
    if header.iter().collect::<Vec<_>>() != ["state", "turnout_two_party_2008", "house_electors"] {
        return Err(DatasetError::MalformedRow(format!("unexpected header {:?}", header)));
    }
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(malformed)?;
            Ok(StructureRecord {
                state: rec[0].to_string(),
                turnout: field(&rec, 1, "turnout")?,
                house_electors: field(&rec, 2, "house_electors")?,
            })
        })
        .collect()
}

/// Writes shares with enough digits to reload them bit for bit.
pub fn write_shares(dataset: &ElectionDataset, out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["state", "year", "dem_share"])?;
    for (year, state, share) in dataset.share_records() {
        w.write_record([state.name(), &year.to_string(), &share.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_structure(dataset: &ElectionDataset, out: impl Write) -> csv::Result<()> {
    let s = dataset.structure();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["state", "turnout_two_party_2008", "house_electors"])?;
    for ((name, t), h) in s.names().iter().zip(s.turnout()).zip(s.house_electors()) {
        w.write_record([name.as_str(), &t.to_string(), &h.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
