//! Quarterly unit-sales ingestion: CSV parsing, validation, and
//! normalization of unit counts into per-quarter [`MarketSnapshot`]s.
//!
//! Input format (UTF-8, header required, `#` lines are comments):
//!
//! ```text
//! quarter,vendor,units
//! 2015Q4,android,1000
//! 2015Q4,ios,200
//! 2015Q4,others,50
//! ```
//!
//! Quarters use the `YYYYQn` grammar (4-digit year, literal `Q`, digit
//! 1-4). Units are nonnegative reals (thousands of devices; decimal
//! point, no thousands separators). One row per quarter may carry the
//! residual label (default `others`, matched case-insensitively): its
//! units become the unattributed residual bucket of the snapshot.
//!
//! Vendor identity is the trimmed, lower-cased name; the first-seen
//! casing is kept for display.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use crate::error::DatasetError;
use crate::snapshot::MarketSnapshot;

pub const DEFAULT_RESIDUAL_LABEL: &str = "others";

/// A calendar quarter, ordered by `(year, quarter)`, written `YYYYQn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuarterId {
    year: i32,
    quarter: u8,
}

impl QuarterId {
    pub fn new(year: i32, quarter: u8) -> Option<Self> {
        (1..=4)
            .contains(&quarter)
            .then_some(QuarterId { year, quarter })
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn quarter(&self) -> u8 {
        self.quarter
    }
}

impl fmt::Display for QuarterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}Q{}", self.year, self.quarter)
    }
}

impl FromStr for QuarterId {
    type Err = ();

    /// Strict `YYYYQn`: exactly four digits, literal `Q`, one digit 1-4.
    fn from_str(s: &str) -> Result<Self, ()> {
        let bytes = s.as_bytes();
        if bytes.len() != 6 || bytes[4] != b'Q' {
            return Err(());
        }
        if !bytes[..4].iter().all(u8::is_ascii_digit) {
            return Err(());
        }
        let year: i32 = s[..4].parse().map_err(|_| ())?;
        let quarter = (bytes[5] as char).to_digit(10).ok_or(())? as u8;
        QuarterId::new(year, quarter).ok_or(())
    }
}

/// One row of the dataset: units sold by one vendor in one quarter.
#[derive(Debug, Clone, PartialEq)]
pub struct SalesRecord {
    pub quarter: QuarterId,
    /// Canonical vendor identity (trimmed, lower-cased).
    pub vendor: String,
    /// Device units (thousands); nonnegative.
    pub units: f64,
}

#[derive(Debug, Clone, Default)]
struct QuarterData {
    /// Named vendors in file order: canonical id and units.
    named: Vec<(String, f64)>,
    residual_units: Option<f64>,
}

/// A validated quarterly dataset.
///
/// At most one residual row per quarter; within a quarter each vendor
/// appears once. Datasets produced by [`parse_csv`] additionally have at
/// least one positive-unit named vendor in every quarter.
#[derive(Debug, Clone)]
pub struct QuarterlyDataset {
    quarters: BTreeMap<QuarterId, QuarterData>,
    /// Canonical id -> first-seen display casing.
    display: BTreeMap<String, String>,
    residual_label: String,
}

impl QuarterlyDataset {
    pub fn new(residual_label: &str) -> Self {
        QuarterlyDataset {
            quarters: BTreeMap::new(),
            display: BTreeMap::new(),
            residual_label: residual_label.trim().to_lowercase(),
        }
    }

    pub fn residual_label(&self) -> &str {
        &self.residual_label
    }

    /// Inserts one record. Unlike [`parse_csv`] this performs no
    /// validation beyond vendor canonicalization; it exists so datasets
    /// can be assembled programmatically.
    pub fn push(&mut self, quarter: QuarterId, vendor: &str, units: f64) {
        let canonical = vendor.trim().to_lowercase();
        let data = self.quarters.entry(quarter).or_default();
        if canonical == self.residual_label {
            data.residual_units = Some(units);
        } else {
            self.display
                .entry(canonical.clone())
                .or_insert_with(|| vendor.trim().to_string());
            data.named.push((canonical, units));
        }
    }

    /// All distinct quarters, ascending.
    pub fn quarters(&self) -> Vec<QuarterId> {
        self.quarters.keys().copied().collect()
    }

    /// All records in (quarter, file-order) order, residual row last
    /// within its quarter.
    pub fn records(&self) -> Vec<SalesRecord> {
        let mut out = Vec::new();
        for (&quarter, data) in &self.quarters {
            for (vendor, units) in &data.named {
                out.push(SalesRecord {
                    quarter,
                    vendor: vendor.clone(),
                    units: *units,
                });
            }
            if let Some(units) = data.residual_units {
                out.push(SalesRecord {
                    quarter,
                    vendor: self.residual_label.clone(),
                    units,
                });
            }
        }
        out
    }

    /// First-seen display casing for a canonical vendor id.
    pub fn display_name<'a>(&'a self, canonical: &'a str) -> &'a str {
        self.display
            .get(canonical)
            .map(String::as_str)
            .unwrap_or(canonical)
    }

    /// Normalizes one quarter into a share snapshot: every vendor's units
    /// divided by the quarter total (residual included in the total).
    pub fn to_snapshot(&self, quarter: QuarterId) -> Result<MarketSnapshot, DatasetError> {
        let data = self
            .quarters
            .get(&quarter)
            .ok_or(DatasetError::UnknownQuarter(quarter))?;

        let mut total = 0.0;
        for (_, units) in &data.named {
            total += units;
        }
        total += data.residual_units.unwrap_or(0.0);
        if total <= 0.0 {
            return Err(DatasetError::ZeroTotal(quarter));
        }
        if !data.named.iter().any(|(_, units)| *units > 0.0) {
            return Err(DatasetError::NoNamedUnits { quarter });
        }

        let entries: Vec<(String, f64)> = data
            .named
            .iter()
            .map(|(vendor, units)| (self.display_name(vendor).to_string(), units / total))
            .collect();
        let residual = data.residual_units.unwrap_or(0.0) / total;
        Ok(MarketSnapshot::new(entries, residual)?)
    }

    /// Serializes back to the input CSV format (quarters ascending,
    /// named rows in file order, residual row last).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("quarter,vendor,units\n");
        for record in self.records() {
            let vendor = if record.vendor == self.residual_label {
                &record.vendor
            } else {
                self.display_name(&record.vendor)
            };
            out.push_str(&format!("{},{},{}\n", record.quarter, vendor, record.units));
        }
        out
    }
}

/// Convenience wrapper over the dataset's own quarter listing.
pub fn quarters(dataset: &QuarterlyDataset) -> Vec<QuarterId> {
    dataset.quarters()
}

/// Parses and validates a CSV byte stream with the default residual label.
pub fn parse_csv(input: impl Read) -> Result<QuarterlyDataset, DatasetError> {
    parse_csv_with_label(input, DEFAULT_RESIDUAL_LABEL)
}

/// Parses and validates a CSV byte stream, recognizing `residual_label`
/// (case-insensitively) as the residual bucket.
pub fn parse_csv_with_label(
    mut input: impl Read,
    residual_label: &str,
) -> Result<QuarterlyDataset, DatasetError> {
    // read bytes first so a UTF-8 failure maps to NotUtf8, not an Io error
    let mut raw = Vec::new();
    input.read_to_end(&mut raw)?;
    let text = String::from_utf8(raw).map_err(|_| DatasetError::NotUtf8)?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(&text);
    parse_csv_str(text, residual_label)
}

fn parse_csv_str(text: &str, residual_label: &str) -> Result<QuarterlyDataset, DatasetError> {
    let mut dataset = QuarterlyDataset::new(residual_label);
    let mut header_seen = false;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }

        if !header_seen {
            if line != "quarter,vendor,units" {
                return Err(DatasetError::BadHeader {
                    line: line_no,
                    found: line.to_string(),
                });
            }
            header_seen = true;
            continue;
        }

        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(DatasetError::MalformedRow {
                line: line_no,
                reason: format!("expected 3 fields, found {}", fields.len()),
            });
        }

        let quarter: QuarterId =
            fields[0]
                .trim()
                .parse()
                .map_err(|_| DatasetError::MalformedRow {
                    line: line_no,
                    reason: format!(
                        "bad quarter {:?}, expected YYYYQn with n in 1..4",
                        fields[0]
                    ),
                })?;

        let vendor_raw = fields[1].trim();
        if vendor_raw.is_empty() {
            return Err(DatasetError::MalformedRow {
                line: line_no,
                reason: "empty vendor name".to_string(),
            });
        }
        let canonical = vendor_raw.to_lowercase();

        let units: f64 = fields[2]
            .trim()
            .parse()
            .map_err(|_| DatasetError::MalformedRow {
                line: line_no,
                reason: format!("non-numeric units {:?}", fields[2]),
            })?;
        if !units.is_finite() || units < 0.0 {
            return Err(DatasetError::MalformedRow {
                line: line_no,
                reason: format!(
                    "units must be a finite nonnegative number, got {:?}",
                    fields[2]
                ),
            });
        }

        let data = dataset.quarters.entry(quarter).or_default();
        if canonical == dataset.residual_label {
            if data.residual_units.is_some() {
                return Err(DatasetError::MultipleResiduals {
                    line: line_no,
                    quarter,
                });
            }
            data.residual_units = Some(units);
        } else {
            if data.named.iter().any(|(v, _)| *v == canonical) {
                return Err(DatasetError::DuplicateKey {
                    line: line_no,
                    quarter,
                    vendor: canonical,
                });
            }
            dataset
                .display
                .entry(canonical.clone())
                .or_insert_with(|| vendor_raw.to_string());
            data.named.push((canonical, units));
        }
    }

    if !header_seen {
        return Err(DatasetError::MissingHeader);
    }

    for (&quarter, data) in &dataset.quarters {
        if !data.named.iter().any(|(_, units)| *units > 0.0) {
            return Err(DatasetError::NoNamedUnits { quarter });
        }
    }

    Ok(dataset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<QuarterlyDataset, DatasetError> {
        parse_csv(text.as_bytes())
    }

    fn q(s: &str) -> QuarterId {
        s.parse().unwrap()
    }

    // ── quarter grammar ──────────────────────────────────────────────

    #[test]
    fn quarter_round_trip_and_order() {
        let a = q("2007Q1");
        let b = q("2011Q3");
        assert!(a < b);
        assert_eq!(a.to_string(), "2007Q1");
        assert_eq!(b.to_string(), "2011Q3");
    }

    #[test]
    fn quarter_rejects_bad_grammar() {
        for bad in [
            "2015Q5", "2015Q0", "2015q4", "15Q1", "2015-Q1", "2015Q", "x015Q1",
        ] {
            assert!(bad.parse::<QuarterId>().is_err(), "{bad}");
        }
    }

    // ── parse_csv ────────────────────────────────────────────────────

    #[test]
    fn parses_minimal_dataset() {
        let ds =
            parse("quarter,vendor,units\n2015Q4,android,1000\n2015Q4,ios,200\n2015Q4,others,50\n")
                .unwrap();
        assert_eq!(ds.quarters(), vec![q("2015Q4")]);
        let snap = ds.to_snapshot(q("2015Q4")).unwrap();
        assert_eq!(snap.len(), 2);
        assert!((snap.residual().value() - 0.04).abs() < 1e-12);
    }

    #[test]
    fn rows_in_any_order_and_comments_skipped() {
        let ds = parse(
            "# source: synthetic\nquarter,vendor,units\n2015Q4,ios,200\n\n2015Q1,android,900\n# mid comment\n2015Q4,android,1000\n2015Q1,ios,100\n",
        )
        .unwrap();
        assert_eq!(ds.quarters(), vec![q("2015Q1"), q("2015Q4")]);
    }

    #[test]
    fn rejects_out_of_range_quarter() {
        let err = parse("quarter,vendor,units\n2015Q5,android,10\n").unwrap_err();
        assert!(
            matches!(err, DatasetError::MalformedRow { line: 2, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn duplicate_vendor_is_case_insensitive() {
        let err = parse("quarter,vendor,units\n2015Q4,android,10\n2015Q4,Android,5\n").unwrap_err();
        assert!(
            matches!(err, DatasetError::DuplicateKey { line: 3, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn two_residual_rows_in_one_quarter() {
        let err = parse("quarter,vendor,units\n2015Q4,a,10\n2015Q4,others,5\n2015Q4,OTHERS,5\n")
            .unwrap_err();
        assert!(
            matches!(err, DatasetError::MultipleResiduals { line: 4, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn rejects_negative_and_non_numeric_units() {
        assert!(matches!(
            parse("quarter,vendor,units\n2015Q4,a,-3\n").unwrap_err(),
            DatasetError::MalformedRow { line: 2, .. }
        ));
        assert!(matches!(
            parse("quarter,vendor,units\n2015Q4,a,1_000\n").unwrap_err(),
            DatasetError::MalformedRow { line: 2, .. }
        ));
        assert!(matches!(
            parse("quarter,vendor,units\n2015Q4,a,inf\n").unwrap_err(),
            DatasetError::MalformedRow { line: 2, .. }
        ));
    }

    #[test]
    fn rejects_missing_or_bad_header() {
        assert!(matches!(
            parse("").unwrap_err(),
            DatasetError::MissingHeader
        ));
        assert!(matches!(
            parse("vendor,quarter,units\n").unwrap_err(),
            DatasetError::BadHeader { line: 1, .. }
        ));
    }

    #[test]
    fn leading_bom_is_tolerated() {
        let ds = parse("\u{feff}quarter,vendor,units\n2015Q4,a,750\n2015Q4,b,250\n").unwrap();
        assert_eq!(ds.quarters(), vec![q("2015Q4")]);
    }

    #[test]
    fn rejects_residual_only_quarter() {
        let err = parse("quarter,vendor,units\n2015Q4,others,50\n").unwrap_err();
        assert!(matches!(err, DatasetError::NoNamedUnits { .. }), "{err:?}");
    }

    // ── to_snapshot ──────────────────────────────────────────────────

    #[test]
    fn normalizes_by_total() {
        let ds = parse("quarter,vendor,units\n2015Q4,a,750\n2015Q4,b,250\n").unwrap();
        let snap = ds.to_snapshot(q("2015Q4")).unwrap();
        assert_eq!(snap.entries()[0].1.value(), 0.75);
        assert_eq!(snap.entries()[1].1.value(), 0.25);
        assert_eq!(snap.residual().value(), 0.0);
    }

    #[test]
    fn residual_included_in_total() {
        let ds =
            parse("quarter,vendor,units\n2015Q4,a,800\n2015Q4,b,100\n2015Q4,others,100\n").unwrap();
        let snap = ds.to_snapshot(q("2015Q4")).unwrap();
        assert_eq!(snap.entries()[0].1.value(), 0.8);
        assert_eq!(snap.entries()[1].1.value(), 0.1);
        assert_eq!(snap.residual().value(), 0.1);
    }

    #[test]
    fn zero_total_quarter_is_rejected() {
        let mut ds = QuarterlyDataset::new(DEFAULT_RESIDUAL_LABEL);
        ds.push(q("2015Q4"), "a", 0.0);
        ds.push(q("2015Q4"), "b", 0.0);
        assert!(matches!(
            ds.to_snapshot(q("2015Q4")).unwrap_err(),
            DatasetError::ZeroTotal(_)
        ));
    }

    #[test]
    fn unknown_quarter_is_rejected() {
        let ds = parse("quarter,vendor,units\n2015Q4,a,750\n2015Q4,b,250\n").unwrap();
        assert!(matches!(
            ds.to_snapshot(q("2014Q1")).unwrap_err(),
            DatasetError::UnknownQuarter(_)
        ));
    }

    #[test]
    fn display_casing_preserved_identity_lowercased() {
        let ds = parse(
            "quarter,vendor,units\n2015Q4,RIM,600\n2015Q1,rim,400\n2015Q1,a,600\n2015Q4,a,400\n",
        )
        .unwrap();
        // identity merged across casings; first-seen casing displayed
        let snap = ds.to_snapshot(q("2015Q4")).unwrap();
        assert!(snap.entries().iter().any(|(n, _)| n == "RIM"));
        let earlier = ds.to_snapshot(q("2015Q1")).unwrap();
        assert!(earlier.entries().iter().any(|(n, _)| n == "RIM"));
    }

    #[test]
    fn residual_larger_than_smallest_named_is_accepted_but_flagged() {
        let ds =
            parse("quarter,vendor,units\n2015Q4,a,500\n2015Q4,b,100\n2015Q4,others,400\n").unwrap();
        let snap = ds.to_snapshot(q("2015Q4")).unwrap();
        assert!(snap.residual_exceeds_smallest());
    }

    // ── quarters / round-trip ────────────────────────────────────────

    #[test]
    fn quarters_sorted_and_distinct() {
        let ds = parse("quarter,vendor,units\n2011Q3,a,10\n2007Q1,a,10\n2007Q1,b,20\n2011Q3,b,5\n")
            .unwrap();
        assert_eq!(quarters(&ds), vec![q("2007Q1"), q("2011Q3")]);
        let empty = QuarterlyDataset::new(DEFAULT_RESIDUAL_LABEL);
        assert!(quarters(&empty).is_empty());
    }

    #[test]
    fn csv_round_trip_preserves_snapshots() {
        let text = "quarter,vendor,units\n2013Q1,Alpha,600.5\n2013Q1,beta,350\n2013Q1,others,49.5\n2013Q2,Alpha,550\n2013Q2,beta,450\n";
        let ds = parse(text).unwrap();
        let reparsed = parse(&ds.to_csv()).unwrap();
        for quarter in ds.quarters() {
            assert_eq!(
                ds.to_snapshot(quarter).unwrap(),
                reparsed.to_snapshot(quarter).unwrap(),
                "{quarter}"
            );
        }
    }
}
