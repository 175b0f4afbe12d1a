//! The baseline transition table shipped with the crate.
//!
//! The table is stored verbatim (three printed decimals) and checked against a
//! SHA-256 digest on load. Computation uses the row-renormalized copy; display
//! uses the verbatim copy.

use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::mstn::{Grid, MentalState, TransitionMatrix, STATE_COUNT};

pub const TABLE1_CSV: &str = include_str!("../data/table1.csv");

pub const TABLE1_SHA256: &str = "18d30b986d82b3970e6220af7c1a8d61b755f9beb1a44d767de1dee29be815cc";

/// Largest deviation of a verbatim row sum from 1 accepted when loading.
/// Seven entries rounded to three decimals can drift by up to 0.0035.
pub const VERBATIM_ROW_TOLERANCE: f64 = 0.005;

#[derive(Debug, Clone, PartialEq)]
pub struct Table1 {
    verbatim: Grid,
    matrix: TransitionMatrix,
}

impl Table1 {
    pub fn verbatim(&self) -> &Grid {
        &self.verbatim
    }

    pub fn verbatim_entry(&self, from: MentalState, to: MentalState) -> f64 {
        self.verbatim[from.index()][to.index()]
    }

    pub fn verbatim_row_sum(&self, from: MentalState) -> f64 {
        self.verbatim[from.index()].iter().sum()
    }

    /// Renormalized, exactly stochastic copy.
    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Loads the embedded fixture.
pub fn load_table1() -> Result<Table1> {
    load_table1_verified(TABLE1_CSV)
}

/// Verifies `text` against the shipped digest, then parses it.
pub fn load_table1_verified(text: &str) -> Result<Table1> {
    let actual = sha256_hex(text.as_bytes());
    if actual != TABLE1_SHA256 {
        return Err(Error::Checksum {
            expected: TABLE1_SHA256.to_string(),
            actual,
        });
    }
    parse_table1(text)
}

/// Parses a 7x7 table in canonical row/column order with a header row.
pub fn parse_table1(text: &str) -> Result<Table1> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty table".into()))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    if columns.len() != STATE_COUNT + 1 {
        return Err(Error::Parse(format!("header has {} columns", columns.len())));
    }
    for (name, expected) in columns[1..].iter().zip(MentalState::ALL) {
        if name.parse::<MentalState>()? != expected {
            return Err(Error::Parse(format!("column `{name}` out of canonical order")));
        }
    }

    let mut verbatim = [[0.0; STATE_COUNT]; STATE_COUNT];
    let mut seen = 0;
    for (row, line) in lines.enumerate() {
        if row >= STATE_COUNT {
            return Err(Error::Parse("more than seven rows".into()));
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != STATE_COUNT + 1 {
            return Err(Error::Parse(format!("row {} has {} fields", row + 1, fields.len())));
        }
        if fields[0].parse::<MentalState>()? != MentalState::from_index(row) {
            return Err(Error::Parse(format!("row `{}` out of canonical order", fields[0])));
        }
        for (j, field) in fields[1..].iter().enumerate() {
            verbatim[row][j] = field
                .parse()
                .map_err(|e| Error::Parse(format!("row {} column {}: {e}", row + 1, j + 1)))?;
        }
        let sum: f64 = verbatim[row].iter().sum();
        if (sum - 1.0).abs() > VERBATIM_ROW_TOLERANCE {
            return Err(Error::InvalidMatrix(format!("row {} sums to {sum}", fields[0])));
        }
        seen += 1;
    }
    if seen != STATE_COUNT {
        return Err(Error::Parse(format!("expected 7 rows, found {seen}")));
    }
    let matrix = TransitionMatrix::normalized(verbatim)?;
    Ok(Table1 { verbatim, matrix })
}

/// Cached copy of the embedded fixture.
pub fn table1() -> &'static Table1 {
    static TABLE: OnceLock<Table1> = OnceLock::new();
    TABLE.get_or_init(|| load_table1().expect("embedded baseline table is valid"))
}
