//! HHI lower/upper bounds under truncated share data, and an independent
//! grid-search oracle that brackets them by assembling explicit feasible
//! completions of the residual.
//!
//! With only the top `M` shares known, the exact HHI is unknowable but
//! bounded. Writing `R` for the residual mass and `s_M` for the smallest
//! named share (every hidden firm is assumed `<= s_M`):
//!
//! * lower bound: the named sum of squares (hidden mass split into
//!   arbitrarily many arbitrarily small firms),
//! * upper bound, `R <= s_M`: named sum of squares plus `R^2` (one hidden
//!   firm takes everything),
//! * upper bound, `R > s_M`: named sum of squares plus `s_M^2 * Q` plus
//!   `(R - s_M * Q)^2`, where `Q = floor(R / s_M)` (hidden mass packed
//!   into `Q` cap-sized firms plus a remainder firm).

use crate::error::ConcentrationError;
use crate::indices::sum_of_squares;
use crate::snapshot::MarketSnapshot;

/// Snap window for near-integer ratios in `Q = floor(R / s_M)` and in the
/// oracle's chunk packing, so floating-point noise cannot flip a floor.
const RATIO_SNAP: f64 = 1e-12;

/// Which branch of the bound case split applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundsBranch {
    /// No residual: both bounds collapse to the exact HHI.
    Complete,
    /// `0 < R <= s_M`: the residual fits inside a single hidden firm.
    SmallResidual,
    /// `R > s_M`: the residual spans several cap-sized hidden firms.
    LargeResidual,
}

/// The HHI interval for a (possibly truncated) snapshot, together with
/// the auxiliaries that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HhiBounds {
    pub lower: f64,
    pub upper: f64,
    /// Residual mass `R`.
    pub r: f64,
    /// `Q = floor(R / s_M)`; 0 when the snapshot is complete.
    pub q: u64,
    pub branch: BoundsBranch,
}

impl HhiBounds {
    /// Width of the interval, `upper - lower`.
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Floor that first snaps ratios within [`RATIO_SNAP`] of an integer onto
/// that integer, in either direction.
fn guarded_floor(ratio: f64) -> f64 {
    let nearest = ratio.round();
    if (ratio - nearest).abs() <= RATIO_SNAP {
        nearest
    } else {
        ratio.floor()
    }
}

/// Computes the HHI interval for a snapshot.
///
/// For complete data both bounds equal the exact HHI. For truncated data
/// the case split on `R` versus `s_M` above applies. A positive residual
/// alongside a zero smallest named share is rejected: no hidden firm
/// could then carry any mass.
pub fn hhi_bounds(snapshot: &MarketSnapshot) -> Result<HhiBounds, ConcentrationError> {
    let lower = sum_of_squares(snapshot);
    let r = snapshot.residual().value();

    if r == 0.0 {
        return Ok(HhiBounds {
            lower,
            upper: lower,
            r,
            q: 0,
            branch: BoundsBranch::Complete,
        });
    }

    let s_m = match snapshot.smallest_named() {
        Some(s) => s.value(),
        None => return Err(ConcentrationError::EmptySnapshot),
    };
    if s_m == 0.0 {
        return Err(ConcentrationError::DegenerateTruncation);
    }

    let q = guarded_floor(r / s_m);
    if r <= s_m {
        Ok(HhiBounds {
            lower,
            upper: lower + r * r,
            r,
            q: q as u64,
            branch: BoundsBranch::SmallResidual,
        })
    } else {
        let remainder = r - s_m * q;
        Ok(HhiBounds {
            lower,
            upper: lower + s_m * s_m * q + remainder * remainder,
            r,
            q: q as u64,
            branch: BoundsBranch::LargeResidual,
        })
    }
}

/// Residual-to-cap ratio beyond which the truncation is treated as
/// degenerate (the smallest named share is practically zero and a
/// chunk-level search would need over 10^8 hidden firms).
const MAX_EFFECTIVE_GRANULARITY: u64 = 100_000_000;

/// How the residual is cut into chunks and the chunks packed into firms.
#[derive(Debug, Clone, Copy)]
struct ChunkPacking {
    chunk: f64,
    granularity: u64,
    /// Size of one greedily packed (cap-sized) firm.
    firm: f64,
    full_firms: u64,
    rem_chunks: u64,
}

fn chunk_packing(
    snapshot: &MarketSnapshot,
    granularity: u32,
) -> Result<ChunkPacking, ConcentrationError> {
    if granularity == 0 {
        return Err(ConcentrationError::InvalidK);
    }
    let r = snapshot.residual().value();
    let s_m = match snapshot.smallest_named() {
        Some(s) => s.value(),
        None => return Err(ConcentrationError::EmptySnapshot),
    };
    if s_m == 0.0 {
        return Err(ConcentrationError::DegenerateTruncation);
    }

    // raise the chunk count until one chunk fits inside one hidden firm
    let needed = r / s_m;
    if !needed.is_finite() || needed >= MAX_EFFECTIVE_GRANULARITY as f64 {
        return Err(ConcentrationError::DegenerateTruncation);
    }
    let g = (granularity as u64).max(needed.ceil() as u64).max(1);
    let chunk = r / g as f64;

    // chunks per cap-sized firm; snap first so an exact multiple of the
    // chunk size is not lost to rounding noise
    let mut per_firm = (guarded_floor(s_m / chunk) as u64).clamp(1, g);
    // a packed firm must not exceed the cap in the stored floating-point
    // values; one decrement undoes a half-ulp overshoot
    if per_firm > 1 && per_firm as f64 * chunk > s_m {
        per_firm -= 1;
    }

    // all chunks in one firm reassemble the residual itself; using r
    // directly avoids re-quantization noise from g * (r / g)
    let firm = if per_firm == g {
        r
    } else {
        per_firm as f64 * chunk
    };

    Ok(ChunkPacking {
        chunk,
        granularity: g,
        firm,
        full_firms: g / per_firm,
        rem_chunks: g % per_firm,
    })
}

impl ChunkPacking {
    fn max_firm_sizes(&self) -> impl Iterator<Item = f64> {
        let rem = (self.rem_chunks > 0).then_some(self.rem_chunks as f64 * self.chunk);
        std::iter::repeat_n(self.firm, self.full_firms as usize).chain(rem)
    }

    fn min_firm_sizes(&self) -> impl Iterator<Item = f64> {
        std::iter::repeat_n(self.chunk, self.granularity as usize)
    }
}

/// The two extremal residual completions explored by the oracle, as
/// explicit hidden-firm share vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualCompletions {
    /// Size of one residual chunk, `R / granularity` (after raising the
    /// granularity far enough that a chunk fits inside one hidden firm).
    pub chunk: f64,
    /// Effective number of chunks actually used.
    pub granularity: u64,
    /// Minimizing assembly: every chunk is its own hidden firm.
    pub min_firms: Vec<f64>,
    /// Maximizing assembly: chunks greedily packed into cap-sized firms
    /// plus one remainder firm.
    pub max_firms: Vec<f64>,
}

/// Builds the minimizing and maximizing residual completions.
///
/// The residual is discretized into `granularity` chunks; hidden firms
/// are assemblies of whole chunks, each no larger than the smallest
/// named share. When one chunk alone would already exceed that cap the
/// granularity is raised to the smallest count that fits.
pub fn residual_completions(
    snapshot: &MarketSnapshot,
    granularity: u32,
) -> Result<ResidualCompletions, ConcentrationError> {
    if snapshot.residual().value() == 0.0 {
        return Ok(ResidualCompletions {
            chunk: 0.0,
            granularity: 0,
            min_firms: Vec::new(),
            max_firms: Vec::new(),
        });
    }
    let packing = chunk_packing(snapshot, granularity)?;
    Ok(ResidualCompletions {
        chunk: packing.chunk,
        granularity: packing.granularity,
        min_firms: packing.min_firm_sizes().collect(),
        max_firms: packing.max_firm_sizes().collect(),
    })
}

/// Grid-search bracket on the HHI of a truncated snapshot.
///
/// Returns `(min_found, max_found)`: the smallest and largest sum of
/// squares over the explored feasible completions. By construction
/// `hhi_bounds(snapshot).lower <= min_found` and
/// `max_found <= hhi_bounds(snapshot).upper`; when the residual packs
/// exactly into cap-sized chunks the maximum is attained and `max_found`
/// meets the upper bound.
///
/// On a complete snapshot there is nothing to search and both values are
/// the exact HHI.
pub fn bounds_oracle(
    snapshot: &MarketSnapshot,
    granularity: u32,
) -> Result<(f64, f64), ConcentrationError> {
    let named = sum_of_squares(snapshot);
    if snapshot.residual().value() == 0.0 {
        return Ok((named, named));
    }
    let packing = chunk_packing(snapshot, granularity)?;
    let min_found = named + packing.min_firm_sizes().map(|s| s * s).sum::<f64>();
    let max_found = named + packing.max_firm_sizes().map(|s| s * s).sum::<f64>();
    Ok((min_found, max_found))
}
