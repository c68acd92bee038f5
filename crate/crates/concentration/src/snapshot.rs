//! Market share vectors: the [`Share`] fraction and the per-period
//! [`MarketSnapshot`] with an optional unattributed residual bucket.

use std::collections::HashSet;
use std::fmt;

use crate::error::ConcentrationError;
use crate::SUM_TOLERANCE;

/// A market share: a dimensionless fraction in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Share(f64);

impl Share {
    pub const ZERO: Share = Share(0.0);

    pub fn new(value: f64) -> Result<Self, ConcentrationError> {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(ConcentrationError::InvalidShare(value));
        }
        Ok(Share(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Named firm shares for one period, sorted descending, plus the residual
/// mass not attributed to any named firm (0 when the data are complete).
///
/// When `residual > 0` the named list is a top-M truncation: every firm
/// hidden inside the residual is assumed no larger than the smallest named
/// share. Construction canonicalizes the order (share descending, name
/// ascending on ties) and validates that the total mass is 1 within
/// [`SUM_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct MarketSnapshot {
    entries: Vec<(String, Share)>,
    residual: Share,
}

impl MarketSnapshot {
    /// Builds a snapshot from named shares plus a residual fraction.
    pub fn new(
        entries: impl IntoIterator<Item = (String, f64)>,
        residual: f64,
    ) -> Result<Self, ConcentrationError> {
        let mut entries: Vec<(String, Share)> = entries
            .into_iter()
            .map(|(name, value)| Share::new(value).map(|s| (name, s)))
            .collect::<Result<_, _>>()?;
        let residual = Share::new(residual)?;

        let mut seen = HashSet::new();
        for (name, _) in &entries {
            if !seen.insert(name.clone()) {
                return Err(ConcentrationError::DuplicateName(name.clone()));
            }
        }

        let sum = entries.iter().map(|(_, s)| s.value()).sum::<f64>() + residual.value();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(ConcentrationError::ShareSumMismatch { sum });
        }

        entries.sort_by(|(an, a), (bn, b)| {
            b.partial_cmp(a)
                .expect("shares are finite")
                .then_with(|| an.cmp(bn))
        });

        Ok(MarketSnapshot { entries, residual })
    }

    /// Builds a complete snapshot (no residual bucket).
    pub fn complete(
        entries: impl IntoIterator<Item = (String, f64)>,
    ) -> Result<Self, ConcentrationError> {
        Self::new(entries, 0.0)
    }

    /// Builds a snapshot from bare share values; firms are named
    /// `v01`, `v02`, ... in the order given.
    pub fn from_shares(shares: &[f64], residual: f64) -> Result<Self, ConcentrationError> {
        Self::new(
            shares
                .iter()
                .enumerate()
                .map(|(i, &s)| (format!("v{:02}", i + 1), s)),
            residual,
        )
    }

    /// Named entries, sorted by share descending (name ascending on ties).
    pub fn entries(&self) -> &[(String, Share)] {
        &self.entries
    }

    pub fn residual(&self) -> Share {
        self.residual
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The smallest named share (`s_M`), if any firm is named.
    pub fn smallest_named(&self) -> Option<Share> {
        self.entries.last().map(|(_, s)| *s)
    }

    pub fn share_of(&self, name: &str) -> Option<Share> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| *s)
    }

    /// True when the residual bucket outweighs the smallest named share.
    /// Such snapshots are accepted (the truncation premise constrains each
    /// hidden firm, not their total), but ingestion flags them.
    pub fn residual_exceeds_smallest(&self) -> bool {
        match self.smallest_named() {
            Some(s_m) => self.residual.value() > s_m.value(),
            None => self.residual.value() > 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_share_outside_unit_interval() {
        assert!(Share::new(-0.1).is_err());
        assert!(Share::new(1.1).is_err());
        assert!(Share::new(f64::NAN).is_err());
        assert!(Share::new(0.0).is_ok());
        assert!(Share::new(1.0).is_ok());
    }

    #[test]
    fn rejects_sum_mismatch() {
        let err = MarketSnapshot::complete(vec![("a".into(), 0.5), ("b".into(), 0.4)]);
        assert!(matches!(
            err,
            Err(ConcentrationError::ShareSumMismatch { .. })
        ));
    }

    #[test]
    fn accepts_sum_within_tolerance() {
        MarketSnapshot::complete(vec![("a".into(), 0.5), ("b".into(), 0.5 + 5e-10)]).unwrap();
    }

    #[test]
    fn rejects_duplicate_names() {
        let err = MarketSnapshot::complete(vec![("a".into(), 0.5), ("a".into(), 0.5)]);
        assert!(matches!(err, Err(ConcentrationError::DuplicateName(_))));
    }

    #[test]
    fn canonicalizes_order() {
        let snap = MarketSnapshot::new(
            vec![("c".into(), 0.1), ("a".into(), 0.6), ("b".into(), 0.1)],
            0.2,
        )
        .unwrap();
        let names: Vec<&str> = snap.entries().iter().map(|(n, _)| n.as_str()).collect();
        // descending by share, ties by name
        assert_eq!(names, ["a", "b", "c"]);
        assert_eq!(snap.smallest_named().unwrap().value(), 0.1);
    }

    #[test]
    fn empty_snapshot_requires_full_residual() {
        assert!(MarketSnapshot::new(Vec::<(String, f64)>::new(), 1.0).is_ok());
        assert!(MarketSnapshot::new(Vec::<(String, f64)>::new(), 0.0).is_err());
    }

    #[test]
    fn residual_warning_flag() {
        let flagged = MarketSnapshot::new(vec![("a".into(), 0.5), ("b".into(), 0.1)], 0.4).unwrap();
        assert!(flagged.residual_exceeds_smallest());
        let fine = MarketSnapshot::new(vec![("a".into(), 0.5), ("b".into(), 0.3)], 0.2).unwrap();
        assert!(!fine.residual_exceeds_smallest());
    }
}
