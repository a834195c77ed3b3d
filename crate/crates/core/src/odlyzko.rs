//! GRH root-discriminant lower bounds as a conservative step function.

use std::cmp::Ordering;
use std::io::Read;

use thiserror::Error;

use crate::factored_real::{parse_rational, ComparePolicy, FactoredReal, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OdlyzkoError {
    #[error("no rows")]
    NoRows,
    #[error("row {row}: malformed ({reason})")]
    Malformed { row: usize, reason: String },
    #[error("row {row}: degree {degree} is duplicated")]
    DuplicateDegree { row: usize, degree: u64 },
    #[error("row {row}: degrees not sorted ({degree} after {previous})")]
    NotSorted {
        row: usize,
        degree: u64,
        previous: u64,
    },
    #[error("row {row}: bounds must be nondecreasing in degree")]
    NonMonotone { row: usize },
    #[error("degree {degree} is below the first tabulated degree {first}")]
    BelowRange { degree: u64, first: u64 },
}

/// Rows `(degree, bound)`: every field of degree at least `degree` has root
/// discriminant strictly greater than `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdlyzkoTable {
    rows: Vec<(u64, Rational)>,
}

/// Outcome of [`OdlyzkoTable::max_degree_below`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeBound {
    /// The field degree is strictly less than this value.
    LessThan(u64),
    Unbounded,
}

impl OdlyzkoTable {
    /// Validates ordering and monotonicity.
    pub fn from_rows(rows: Vec<(u64, Rational)>) -> Result<Self, OdlyzkoError> {
        if rows.is_empty() {
            return Err(OdlyzkoError::NoRows);
        }
        for (i, w) in rows.windows(2).enumerate() {
            let row = i + 2;
            let ((d0, b0), (d1, b1)) = (&w[0], &w[1]);
            if d1 == d0 {
                return Err(OdlyzkoError::DuplicateDegree { row, degree: *d1 });
            }
            if d1 < d0 {
                return Err(OdlyzkoError::NotSorted {
                    row,
                    degree: *d1,
                    previous: *d0,
                });
            }
            if b1 < b0 {
                return Err(OdlyzkoError::NonMonotone { row });
            }
        }
        if let Some(i) = rows.iter().position(|(d, _)| *d == 0) {
            return Err(OdlyzkoError::Malformed {
                row: i + 1,
                reason: "degree must be positive".into(),
            });
        }
        Ok(OdlyzkoTable { rows })
    }

    /// Reads CSV with header `degree,bound`; lines starting with `#` are
    /// comments. Row numbers in errors count data rows from 1.
    pub fn load<R: Read>(source: R) -> Result<Self, OdlyzkoError> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(source);
        let headers = reader.headers().map_err(|e| OdlyzkoError::Malformed {
            row: 0,
            reason: e.to_string(),
        })?;
        if headers.len() != 2 || &headers[0] != "degree" || &headers[1] != "bound" {
            if headers.is_empty() {
                return Err(OdlyzkoError::NoRows);
            }
            return Err(OdlyzkoError::Malformed {
                row: 0,
                reason: format!(
                    "expected header `degree,bound`, got `{}`",
                    headers.iter().collect::<Vec<_>>().join(",")
                ),
            });
        }
        let mut rows = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let row = i + 1;
            let rec = rec.map_err(|e| OdlyzkoError::Malformed {
                row,
                reason: e.to_string(),
            })?;
            if rec.len() != 2 {
                return Err(OdlyzkoError::Malformed {
                    row,
                    reason: format!("expected 2 fields, got {}", rec.len()),
                });
            }
            let degree: u64 = rec[0].parse().map_err(|_| OdlyzkoError::Malformed {
                row,
                reason: format!("bad degree `{}`", &rec[0]),
            })?;
            let bound = parse_rational(&rec[1]).map_err(|e| OdlyzkoError::Malformed {
                row,
                reason: e.to_string(),
            })?;
            rows.push((degree, bound));
        }
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> &[(u64, Rational)] {
        &self.rows
    }

    /// Bound at exactly this tabulated degree.
    pub fn bound_at(&self, degree: u64) -> Option<&Rational> {
        self.rows.iter().find(|(d, _)| *d == degree).map(|(_, b)| b)
    }

    /// Lower bound on the root discriminant of any field of this degree: the
    /// bound of the largest tabulated degree not exceeding it.
    pub fn min_root_disc(&self, degree: u64) -> Result<&Rational, OdlyzkoError> {
        self.rows
            .iter()
            .rev()
            .find(|(d, _)| *d <= degree)
            .map(|(_, b)| b)
            .ok_or(OdlyzkoError::BelowRange {
                degree,
                first: self.rows[0].0,
            })
    }

    /// A field with root discriminant below `delta` has degree less than the
    /// returned value. Ties with a tabulated bound count as below it.
    pub fn max_degree_below(&self, delta: &FactoredReal) -> DegreeBound {
        self.max_degree_below_with(delta, ComparePolicy::default())
    }

    pub fn max_degree_below_with(
        &self,
        delta: &FactoredReal,
        policy: ComparePolicy,
    ) -> DegreeBound {
        for (degree, bound) in &self.rows {
            let b = FactoredReal::from_rational(bound).expect("table bounds are positive");
            if delta.compare_with(&b, policy) != Ordering::Greater {
                return DegreeBound::LessThan(*degree);
            }
        }
        DegreeBound::Unbounded
    }
}

/// The shipped table.
pub fn shipped_table() -> OdlyzkoTable {
    OdlyzkoTable::load(crate::dataset::SHIPPED_ODLYZKO.as_bytes()).expect("shipped table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factored_real::ratio;

    fn fr(s: &str) -> FactoredReal {
        s.parse().unwrap()
    }

    #[test]
    fn loads_shipped_rows() {
        let t = shipped_table();
        assert_eq!(t.rows().len(), 5);
        for (d, b) in [
            (126, "20.221"),
            (280, "24.258"),
            (1000, "29.094"),
            (2400, "31.645"),
        ] {
            assert_eq!(t.bound_at(d), Some(&parse_rational(b).unwrap()));
        }
    }

    #[test]
    fn load_errors() {
        assert_eq!(OdlyzkoTable::load("".as_bytes()), Err(OdlyzkoError::NoRows));
        assert_eq!(
            OdlyzkoTable::load("degree,bound\n".as_bytes()),
            Err(OdlyzkoError::NoRows)
        );
        let unsorted = "degree,bound\n280,24.258\n126,20.221\n";
        assert!(matches!(
            OdlyzkoTable::load(unsorted.as_bytes()),
            Err(OdlyzkoError::NotSorted { row: 2, .. })
        ));
        let dup = "degree,bound\n126,20.221\n126,20.3\n";
        assert!(matches!(
            OdlyzkoTable::load(dup.as_bytes()),
            Err(OdlyzkoError::DuplicateDegree {
                row: 2,
                degree: 126
            })
        ));
        let nonmono = "degree,bound\n126,20.221\n280,19\n";
        assert!(matches!(
            OdlyzkoTable::load(nonmono.as_bytes()),
            Err(OdlyzkoError::NonMonotone { row: 2 })
        ));
        let bad = "degree,bound\n126,twenty\n";
        assert!(matches!(
            OdlyzkoTable::load(bad.as_bytes()),
            Err(OdlyzkoError::Malformed { row: 1, .. })
        ));
    }

    #[test]
    fn min_root_disc_is_a_step_function() {
        let t = shipped_table();
        assert_eq!(
            t.min_root_disc(1000).unwrap(),
            &parse_rational("29.094").unwrap()
        );
        assert_eq!(
            t.min_root_disc(1500).unwrap(),
            &parse_rational("29.094").unwrap()
        );
        assert_eq!(
            t.min_root_disc(126).unwrap(),
            &parse_rational("20.221").unwrap()
        );
        assert!(matches!(
            t.min_root_disc(100),
            Err(OdlyzkoError::BelowRange { .. })
        ));
    }

    #[test]
    fn degree_bounds() {
        let t = shipped_table();
        assert_eq!(
            t.max_degree_below(&fr("5^5/4 * 6^4/5")),
            DegreeBound::LessThan(2400)
        );
        assert_eq!(
            t.max_degree_below(&fr("3^3/2 * 10^2/3")),
            DegreeBound::LessThan(280)
        );
        assert_eq!(t.max_degree_below(&fr("10^6")), DegreeBound::Unbounded);
        assert_eq!(t.max_degree_below(&fr("2")), DegreeBound::LessThan(126));
    }

    #[test]
    fn tie_counts_as_below() {
        let t = shipped_table();
        let at = FactoredReal::from_rational(&ratio(24258, 1000)).unwrap();
        assert_eq!(t.max_degree_below(&at), DegreeBound::LessThan(280));
    }
}
