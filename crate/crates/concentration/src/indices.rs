//! Concentration indices over a single snapshot: HHI, CR-k, the top
//! firm, and the merger screening delta.

use crate::error::ConcentrationError;
use crate::snapshot::MarketSnapshot;

/// Herfindahl-Hirschman index: the sum of squared shares.
///
/// Defined only for complete data. For an `n`-firm market the value lies
/// in `[1/n, 1]`: `1/n` when all shares are equal, 1 for a monopoly.
pub fn hhi(snapshot: &MarketSnapshot) -> Result<f64, ConcentrationError> {
    if snapshot.residual().value() > 0.0 {
        return Err(ConcentrationError::ResidualPresent);
    }
    Ok(sum_of_squares(snapshot))
}

pub(crate) fn sum_of_squares(snapshot: &MarketSnapshot) -> f64 {
    snapshot
        .entries()
        .iter()
        .map(|(_, s)| s.value() * s.value())
        .sum()
}

/// Concentration ratio: the sum of the `k` largest shares.
///
/// Exact even under truncation as long as at least `k` firms are named,
/// because every hidden firm is no larger than the smallest named share.
/// With complete data and fewer than `k` firms the sum covers them all.
pub fn cr_k(snapshot: &MarketSnapshot, k: usize) -> Result<f64, ConcentrationError> {
    if k == 0 {
        return Err(ConcentrationError::InvalidK);
    }
    if snapshot.residual().value() > 0.0 && snapshot.len() < k {
        return Err(ConcentrationError::InsufficientFirms {
            named: snapshot.len(),
            k,
        });
    }
    Ok(snapshot
        .entries()
        .iter()
        .take(k)
        .map(|(_, s)| s.value())
        .sum())
}

/// The largest named firm and its share. Ties are broken by the
/// lexicographically smallest name.
pub fn top_share(snapshot: &MarketSnapshot) -> Result<(&str, f64), ConcentrationError> {
    // entries are canonically sorted (share desc, name asc), so the tie
    // winner is always first
    snapshot
        .entries()
        .first()
        .map(|(name, s)| (name.as_str(), s.value()))
        .ok_or(ConcentrationError::EmptySnapshot)
}

/// HHI increase caused by merging two firms: `2 * s_a * s_b`.
///
/// Equals `hhi(merged) - hhi(original)` where the merged market replaces
/// the pair with one firm of combined share. Merging a firm with itself
/// changes nothing and yields 0.
pub fn merger_delta(
    snapshot: &MarketSnapshot,
    firm_a: &str,
    firm_b: &str,
) -> Result<f64, ConcentrationError> {
    if snapshot.residual().value() > 0.0 {
        return Err(ConcentrationError::ResidualPresent);
    }
    let share_a = snapshot
        .share_of(firm_a)
        .ok_or_else(|| ConcentrationError::UnknownFirm(firm_a.to_string()))?;
    let share_b = snapshot
        .share_of(firm_b)
        .ok_or_else(|| ConcentrationError::UnknownFirm(firm_b.to_string()))?;
    if firm_a == firm_b {
        return Ok(0.0);
    }
    Ok(2.0 * share_a.value() * share_b.value())
}
