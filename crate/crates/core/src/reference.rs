//! Published reference values that the `tables` command compares against.
//!
//! Table I lists `c_q`; tables II to V list `2γ_q`. Patterns are dash-joined
//! non-increasing parts.

use std::fmt;
use std::str::FromStr;

use crate::fock::PhotonPattern;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    I,
    II,
    III,
    IV,
    V,
}

impl TableId {
    pub const ALL: [TableId; 5] = [TableId::I, TableId::II, TableId::III, TableId::IV, TableId::V];

    /// Whether the table lists `c_q` (table I) rather than `2γ_q`.
    pub fn is_coefficient_table(self) -> bool {
        self == TableId::I
    }

    pub fn entries(self) -> Vec<ReferenceEntry> {
        let rows: &[Row] = match self {
            TableId::I => TABLE_I,
            TableId::II => TABLE_II,
            TableId::III => TABLE_III,
            TableId::IV => TABLE_IV,
            TableId::V => TABLE_V,
        };
        rows.iter()
            .map(|&(m, n, q, value)| ReferenceEntry {
                table: self,
                m,
                n,
                q: q.parse().expect("reference patterns are well formed"),
                value,
            })
            .collect()
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::III => "III",
            TableId::IV => "IV",
            TableId::V => "V",
        };
        f.write_str(s)
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(TableId::I),
            "II" | "2" => Ok(TableId::II),
            "III" | "3" => Ok(TableId::III),
            "IV" | "4" => Ok(TableId::IV),
            "V" | "5" => Ok(TableId::V),
            other => Err(Error::Parse(format!(
                "unknown table `{other}`, expected one of I, II, III, IV, V"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceEntry {
    pub table: TableId,
    pub m: usize,
    pub n: usize,
    pub q: PhotonPattern,
    /// `c_q` for table I, `2γ_q` otherwise.
    pub value: f64,
}

/// Looks up the printed value for `(m, n, q)` in `table`.
pub fn lookup(table: TableId, m: usize, n: usize, q: &PhotonPattern) -> Option<f64> {
    table
        .entries()
        .into_iter()
        .find(|e| e.m == m && e.n == n && &e.q == q)
        .map(|e| e.value)
}

/// Printed `2γ_q` for `(m, n, q)` from whichever of tables II to V lists it.
pub fn printed_two_gamma(m: usize, n: usize, q: &PhotonPattern) -> Option<f64> {
    [TableId::II, TableId::III, TableId::IV, TableId::V]
        .into_iter()
        .find_map(|t| lookup(t, m, n, q))
}

type Row = (usize, usize, &'static str, f64);

const TABLE_I: &[Row] = &[
    (6, 2, "1-1", 0.0471),
    (6, 2, "2", 0.0977),
    (10, 2, "1-1", 0.0181),
    (10, 2, "2", 0.0369),
    (20, 2, "1-1", 0.00476),
    (20, 2, "2", 0.00959),
    (10, 3, "1-1-1", 0.00451),
    (10, 3, "2-1", 0.00914),
    (10, 3, "3", 0.0283),
    (20, 3, "1-1-1", 0.000648),
    (20, 3, "2-1", 0.00131),
    (20, 3, "3", 0.00398),
    // printed with the padding elided; the value is 1/d for ten single photons
    (30, 10, "1-1-1-1-1-1-1-1-1-1", 1.56e-9),
    (30, 10, "9-1", 0.00068),
    (30, 10, "10", 0.0072),
];

const TABLE_II: &[Row] = &[
    (6, 2, "1-1", 3.770),
    (6, 2, "2", 4.314),
    (10, 2, "1-1", 4.256),
    (10, 2, "2", 5.136),
    (20, 2, "1-1", 4.751),
    (20, 2, "2", 5.894),
    (40, 2, "1-1", 4.593),
    (40, 2, "2", 5.882),
    (10, 3, "1-1-1", 4.562),
    (10, 3, "2-1", 5.366),
    (10, 3, "3", 6.968),
    (40, 3, "1-1-1", 5.475),
    (40, 3, "2-1", 6.853),
    (40, 3, "3", 9.717),
];

const TABLE_III: &[Row] = &[
    (20, 4, "1-1-1-1", 5.44),
    (20, 4, "3-1", 8.91),
    (20, 4, "2-1-1", 6.60),
    (20, 4, "2-2", 8.38),
    (20, 4, "4", 13.31),
    (20, 5, "1-1-1-1-1", 5.45),
    (20, 5, "3-1-1", 8.44),
    (20, 5, "4-1", 12.13),
    (20, 5, "2-2-1", 7.80),
    (20, 5, "3-2", 10.50),
    (20, 5, "2-1-1-1", 6.50),
    (20, 5, "5", 16.93),
    (20, 6, "1-1-1-1-1-1", 5.34),
    (20, 6, "2-2-1-1", 7.26),
    (20, 6, "3-3", 12.86),
    (20, 6, "2-2-2", 8.72),
    (20, 6, "3-1-1-1", 7.77),
    (20, 6, "5-1", 15.89),
    (20, 6, "2-1-1-1-1", 6.16),
    (20, 6, "4-2", 13.42),
    (20, 6, "4-1-1", 10.50),
    (20, 6, "3-2-1", 9.50),
    (20, 6, "6", 26.34),
    (20, 8, "6-1-1", 15.81),
    (20, 8, "3-2-1-1-1", 7.30),
    (20, 8, "4-4", 18.04),
    (20, 8, "4-2-2", 11.11),
    (20, 8, "2-2-1-1-1-1", 5.98),
    (20, 8, "2-2-2-2", 7.95),
    (20, 8, "3-3-2", 10.91),
    (20, 8, "5-1-1-1", 11.03),
    (20, 8, "6-2", 19.18),
    (20, 8, "3-3-1-1", 9.09),
    (20, 8, "1-1-1-1-1-1-1-1", 4.92),
    (20, 8, "7-1", 24.34),
    (20, 8, "8", 34.86),
    (30, 4, "1-1-1-1", 5.92),
    (30, 4, "3-1", 9.97),
    (30, 4, "2-1-1", 7.28),
    (30, 4, "2-2", 9.47),
    (30, 4, "4", 15.07),
    (30, 5, "1-1-1-1-1", 6.12),
    (30, 5, "3-1-1", 10.10),
    (30, 5, "4-1", 14.63),
    (30, 5, "2-2-1", 9.30),
    (30, 5, "3-2", 12.88),
    (30, 5, "2-1-1-1", 7.44),
    (30, 5, "5", 19.12),
    (30, 6, "1-1-1-1-1-1", 6.11),
    (30, 6, "2-2-1-1", 9.03),
    (30, 6, "3-3", 16.74),
    (30, 6, "2-2-2", 11.19),
    (30, 6, "5-1", 20.82),
    (30, 6, "2-1-1-1-1", 7.29),
    (30, 6, "4-2", 17.44),
    (30, 6, "4-1-1", 13.98),
    (30, 6, "3-1-1-1", 9.72),
    (30, 6, "3-2-1", 11.99),
    (30, 6, "6", 33.20),
    (30, 8, "6-1-1", 23.70),
    (30, 8, "3-2-1-1-1", 9.63),
    (30, 8, "4-4", 27.56),
    (30, 8, "4-2-2", 17.58),
    (30, 8, "2-2-1-1-1-1", 7.63),
    (30, 8, "2-2-2-2", 10.10),
    (30, 8, "3-3-2", 17.84),
    (30, 8, "5-1-1-1", 15.70),
    (30, 8, "6-2", 35.89),
    (30, 8, "3-3-1-1", 12.80),
    (30, 8, "1-1-1-1-1-1-1-1", 5.82),
    (30, 8, "7-1", 34.43),
    (30, 8, "8", 61.69),
];

const TABLE_IV: &[Row] = &[
    (40, 4, "1-1-1-1", 6.09),
    (40, 4, "3-1", 10.60),
    (40, 4, "2-1-1", 7.59),
    (40, 4, "2-2", 9.81),
    (40, 4, "4", 15.91),
    (40, 5, "1-1-1-1-1", 6.51),
    (40, 5, "3-1-1", 11.01),
    (40, 5, "4-1", 16.08),
    (40, 5, "2-2-1", 10.02),
    (40, 5, "3-2", 13.93),
    (40, 5, "2-1-1-1", 8.050),
    (40, 5, "5", 20.18),
    (40, 6, "1-1-1-1-1-1", 6.68),
    (40, 6, "2-2-1-1", 10.03),
    (40, 6, "3-3", 19.82),
    (40, 6, "2-2-2", 13.04),
    (40, 6, "5-1", 23.15),
    (40, 6, "2-1-1-1-1", 8.16),
    (40, 6, "4-2", 20.40),
    (40, 6, "4-1-1", 15.57),
    (40, 6, "3-1-1-1", 10.91),
    (40, 6, "3-2-1", 13.88),
    (40, 6, "6", 35.95),
    (40, 8, "6-1-1", 32.65),
    (40, 8, "3-2-1-1-1", 12.24),
    (40, 8, "4-4", 47.54),
    (40, 8, "4-2-2", 23.89),
    (40, 8, "2-2-1-1-1-1", 9.09),
    (40, 8, "2-2-2-2", 14.25),
    (40, 8, "3-3-2", 20.99),
    (40, 8, "5-1-1-1", 21.25),
    (40, 8, "6-2", 36.11),
    (40, 8, "3-3-1-1", 17.05),
    (40, 8, "1-1-1-1-1-1-1-1", 6.484),
    (40, 8, "7-1", 56.08),
    (40, 8, "8", 67.49),
];

const TABLE_V: &[Row] = &[
    (20, 9, "9", 40.84),
    (20, 10, "10", 53.87),
    (30, 9, "9", 73.45),
    (30, 10, "10", 111.5),
    (30, 11, "11", 124.6),
    (30, 12, "12", 164.7),
    (30, 13, "13", 201.4),
    (40, 9, "9", 114.5),
    (40, 10, "10", 161.2),
    (40, 11, "11", 207.2),
    (40, 12, "12", 259.7),
    (40, 13, "13", 422.1),
    (60, 4, "4", 16.63),
    (60, 6, "6", 43.59),
    (60, 8, "8", 112.6),
    (60, 10, "10", 230.2),
    (60, 12, "12", 500.4),
    (60, 14, "14", 722.7),
    (60, 16, "16", 1877.0),
    (60, 18, "18", 2.526e4),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_is_a_valid_pattern() {
        for t in TableId::ALL {
            for e in t.entries() {
                e.q.validate(e.m, e.n).unwrap();
            }
        }
        assert_eq!(TableId::V.entries().len(), 20);
        assert_eq!(
            printed_two_gamma(30, 10, &PhotonPattern::bunched(10)),
            Some(111.5)
        );
        assert_eq!("iv".parse::<TableId>().unwrap(), TableId::IV);
    }
}
