//! The published rule-vector tables for `n = 2..=12`, embedded as data, and
//! their verification against computed ground truth.
//!
//! Dataset format, one row per line: `n poly rule_vector`, whitespace
//! separated, `#` starts a comment. The errata format appends a free-text
//! reason after the third column.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::ca::{cycle_length_from, CaState, DEFAULT_CYCLE_CAP};
use crate::charpoly::{characteristic_polynomial, RuleVector};
use crate::error::{Error, Result};
use crate::gf2poly::{parse_poly, Gf2Poly};
use crate::primitivity::{factorize_mersenne, is_primitive};

/// Transcribed tables, rows in print order.
pub const EMBEDDED_TABLES: &str = include_str!("../data/tables.txt");

/// Known discrepancies in [`EMBEDDED_TABLES`], as produced by
/// [`VerificationReport::to_errata`].
pub const EMBEDDED_ERRATA: &str = include_str!("../data/errata.txt");

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TableRow {
    pub n: usize,
    pub poly_str: String,
    pub rv_str: String,
}

impl TableRow {
    pub fn new(n: usize, poly_str: &str, rv_str: &str) -> Self {
        TableRow {
            n,
            poly_str: poly_str.to_string(),
            rv_str: rv_str.to_string(),
        }
    }

    /// Check the structural invariants and return the parsed columns.
    pub fn parse(&self) -> std::result::Result<(Gf2Poly, RuleVector), String> {
        if self.poly_str.len() != self.n + 1 {
            return Err(format!(
                "polynomial {:?} should have {} digits",
                self.poly_str,
                self.n + 1
            ));
        }
        if self.rv_str.len() != self.n {
            return Err(format!(
                "rule vector {:?} should have {} digits",
                self.rv_str, self.n
            ));
        }
        let poly = parse_poly(&self.poly_str).map_err(|e| e.to_string())?;
        let rv = self.rv_str.parse().map_err(|e: Error| e.to_string())?;
        Ok((poly, rv))
    }
}

/// Parse a dataset in the `n poly rule_vector` format.
pub fn parse_dataset(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = |reason: String| Error::MalformedRow {
            line: idx + 1,
            reason,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [n, poly, rv] = fields[..] else {
            return Err(malformed(format!(
                "expected 3 fields, found {}",
                fields.len()
            )));
        };
        let n: usize = n
            .parse()
            .map_err(|_| malformed(format!("bad cell count {n:?}")))?;
        let row = TableRow::new(n, poly, rv);
        row.parse().map_err(malformed)?;
        rows.push(row);
    }
    Ok(rows)
}

/// Embedded rows, optionally restricted to one cell count, in print order.
pub fn load_rows(n: Option<usize>) -> Vec<TableRow> {
    // the embedded dataset is checked by the test suite
    let rows = parse_dataset(EMBEDDED_TABLES).expect("embedded tables parse");
    match n {
        Some(n) => rows.into_iter().filter(|r| r.n == n).collect(),
        None => rows,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    AsPrinted,
    Reversed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleCheck {
    /// Orbit length of the unit seed.
    Length(u64),
    /// The unit seed never recurs: the transition matrix is singular.
    NotOnCycle,
    /// `n` above the brute-force cap.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowVerdict {
    pub row: TableRow,
    /// Characteristic polynomial of the rule vector as printed.
    pub computed: Gf2Poly,
    /// Which orientation of the rule vector reproduced the printed polynomial.
    pub matched: Option<Orientation>,
    pub primitive: bool,
    pub cycle: CycleCheck,
}

impl RowVerdict {
    fn period(&self) -> u64 {
        (1u64 << self.row.n) - 1
    }

    pub fn cycle_ok(&self) -> bool {
        match self.cycle {
            CycleCheck::Length(len) => len == self.period(),
            CycleCheck::NotOnCycle => false,
            CycleCheck::Skipped => true,
        }
    }

    pub fn passed(&self) -> bool {
        self.matched.is_some() && self.primitive && self.cycle_ok()
    }

    /// One-line explanation of a failure, `None` for a passing row.
    ///
    /// The cycle oracle separates the cases: if the rule vector itself is
    /// not maximum-length, the printed rule vector is wrong; if it is, the
    /// row pairs it with the wrong polynomial.
    pub fn diagnosis(&self) -> Option<String> {
        if self.passed() {
            return None;
        }
        let mut parts = Vec::new();
        if !self.primitive {
            parts.push("printed polynomial is not primitive".to_string());
        }
        match self.cycle {
            CycleCheck::Length(len) if len != self.period() => parts.push(format!(
                "rule vector is not maximum-length (oracle period {len} < {})",
                self.period()
            )),
            CycleCheck::NotOnCycle => {
                parts.push("rule vector is not maximum-length (singular matrix)".to_string())
            }
            _ => {}
        }
        if self.matched.is_none() && self.cycle == CycleCheck::Length(self.period()) {
            parts.push(format!(
                "pairing error: rule vector is maximum-length for {}, not {} (oracle period {})",
                self.computed,
                self.row.poly_str,
                self.period()
            ));
        } else if self.matched.is_none() {
            let cycle = match self.cycle {
                CycleCheck::Length(len) => format!("oracle period {len}"),
                CycleCheck::NotOnCycle => "oracle: not on a cycle".to_string(),
                CycleCheck::Skipped => "oracle skipped".to_string(),
            };
            parts.push(format!(
                "charpoly of rule vector is {} not {} ({cycle})",
                self.computed, self.row.poly_str
            ));
        }
        Some(parts.join("; "))
    }
}

/// Run the three checks on one row. Structural problems are errors, not
/// failed verdicts.
pub fn verify_row(row: &TableRow) -> Result<RowVerdict> {
    let (poly, rv) = row
        .parse()
        .map_err(|reason| Error::MalformedRow { line: 0, reason })?;
    let computed = characteristic_polynomial(&rv);
    let matched = if computed == poly {
        Some(Orientation::AsPrinted)
    } else if characteristic_polynomial(&rv.reverse()) == poly {
        Some(Orientation::Reversed)
    } else {
        None
    };
    let primitive = match factorize_mersenne(row.n) {
        Ok(f) => is_primitive(&poly, &f)?,
        Err(_) => false,
    };
    let cycle = if row.n > DEFAULT_CYCLE_CAP {
        CycleCheck::Skipped
    } else {
        match cycle_length_from(&rv, &CaState::unit(row.n)?) {
            Ok(len) => CycleCheck::Length(len),
            Err(Error::SeedNotOnCycle) => CycleCheck::NotOnCycle,
            Err(e) => return Err(e),
        }
    };
    Ok(RowVerdict {
        row: row.clone(),
        computed,
        matched,
        primitive,
        cycle,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub total: usize,
    pub passed: usize,
    pub failures: Vec<RowVerdict>,
    /// Rows repeating an earlier `(n, poly)` pair. Reported, not dropped.
    pub duplicates: Vec<TableRow>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.duplicates.is_empty()
    }

    /// Errata file: the offending rows in dataset format plus a reason.
    pub fn to_errata(&self) -> String {
        let mut out = String::from("# n poly rule_vector reason\n");
        for v in &self.failures {
            let r = &v.row;
            let reason = v.diagnosis().unwrap_or_default();
            let _ = writeln!(out, "{} {} {} {reason}", r.n, r.poly_str, r.rv_str);
        }
        for r in &self.duplicates {
            let _ = writeln!(
                out,
                "{} {} {} duplicate polynomial within n={}",
                r.n, r.poly_str, r.rv_str, r.n
            );
        }
        out
    }
}

pub fn verify_rows(rows: &[TableRow]) -> Result<VerificationReport> {
    let verdicts = rows
        .par_iter()
        .map(verify_row)
        .collect::<Result<Vec<_>>>()?;
    let mut seen = HashSet::new();
    let duplicates = rows
        .iter()
        .filter(|r| !seen.insert((r.n, r.poly_str.as_str())))
        .cloned()
        .collect();
    let passed = verdicts.iter().filter(|v| v.passed()).count();
    Ok(VerificationReport {
        total: rows.len(),
        passed,
        failures: verdicts.into_iter().filter(|v| !v.passed()).collect(),
        duplicates,
    })
}

/// Verify every embedded row.
pub fn verify_all() -> VerificationReport {
    // embedded rows are structurally valid, so no error can surface
    verify_rows(&load_rows(None)).expect("embedded rows verify")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_examples() {
        let two = load_rows(Some(2));
        assert_eq!(two, vec![TableRow::new(2, "111", "10")]);
        assert_eq!(load_rows(Some(5)).len(), 6);
        assert_eq!(load_rows(Some(8)).len(), 16);
        assert_eq!(load_rows(Some(13)).len(), 0);
    }

    #[test]
    fn block_sizes() {
        let sizes: Vec<usize> = (2..=12).map(|n| load_rows(Some(n)).len()).collect();
        assert_eq!(sizes, [1, 2, 2, 6, 6, 18, 16, 48, 60, 176, 144]);
        assert_eq!(load_rows(None).len(), 479);
    }

    #[test]
    fn print_order_preserved() {
        let twelve = load_rows(Some(12));
        assert_eq!(twelve[0].poly_str, "1111110011001");
        assert_eq!(twelve[4].poly_str, "1000001010011");
    }

    #[test]
    fn worked_example_row_passes() {
        let v = verify_row(&TableRow::new(8, "100011101", "00000110")).unwrap();
        assert_eq!(v.matched, Some(Orientation::AsPrinted));
        assert!(v.primitive);
        assert_eq!(v.cycle, CycleCheck::Length(255));
        assert!(v.passed());
        assert_eq!(v.diagnosis(), None);
        assert!(verify_row(&TableRow::new(4, "11001", "1101"))
            .unwrap()
            .passed());
    }

    #[test]
    fn reversed_orientation_matches() {
        let v = verify_row(&TableRow::new(8, "100011101", "01100000")).unwrap();
        assert!(v.passed());
        // charpoly is mirror-invariant, so the printed orientation always wins
        assert_eq!(v.matched, Some(Orientation::AsPrinted));
    }

    #[test]
    fn synthetic_negative_row() {
        let v = verify_row(&TableRow::new(2, "111", "11")).unwrap();
        assert!(!v.passed());
        assert_eq!(v.computed.to_string(), "100");
        assert_eq!(v.matched, None);
        assert!(v.primitive);
        assert_eq!(v.cycle, CycleCheck::NotOnCycle);
        let why = v.diagnosis().unwrap();
        assert!(why.contains("not maximum-length"), "{why}");
        assert!(
            why.contains("charpoly of rule vector is 100 not 111"),
            "{why}"
        );
    }

    #[test]
    fn structural_errors() {
        for row in [
            TableRow::new(2, "1111", "10"),
            TableRow::new(2, "111", "100"),
            TableRow::new(2, "011", "10"),
            TableRow::new(2, "111", "1x"),
        ] {
            assert!(matches!(verify_row(&row), Err(Error::MalformedRow { .. })));
        }
    }

    #[test]
    fn parse_dataset_format() {
        let rows = parse_dataset("# header\n\n2 111 10  # trailing\n 3   1011 110\n").unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1], TableRow::new(3, "1011", "110"));
        assert!(matches!(
            parse_dataset("2 111\n"),
            Err(Error::MalformedRow { line: 1, .. })
        ));
        assert!(matches!(
            parse_dataset("# x\nz 111 10\n"),
            Err(Error::MalformedRow { line: 2, .. })
        ));
        assert!(matches!(
            parse_dataset("3 111 10\n"),
            Err(Error::MalformedRow { line: 1, .. })
        ));
    }

    #[test]
    fn duplicates_reported() {
        let rows = vec![
            TableRow::new(3, "1011", "110"),
            TableRow::new(3, "1011", "011"),
        ];
        let report = verify_rows(&rows).unwrap();
        assert_eq!(report.total, 2);
        assert_eq!(report.passed, 2);
        assert_eq!(report.duplicates, vec![rows[1].clone()]);
        assert!(report.to_errata().contains("3 1011 011 duplicate"));
    }

    #[test]
    fn embedded_errata_is_current() {
        assert_eq!(verify_all().to_errata(), EMBEDDED_ERRATA);
    }
}
