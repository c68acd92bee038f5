//! Regulatory classification ladders for HHI and CR4 values.
//!
//! Boundary assignment is fixed and compared with exact arithmetic so
//! that classification is reproducible bit-for-bit:
//!
//! * HHI: `[0, 0.15)` unconcentrated, `[0.15, 0.25]` moderately
//!   concentrated, `(0.25, 1]` highly concentrated.
//! * CR4: `{0}` perfect competition, `(0, 0.4)` effective competition,
//!   `[0.4, 0.6]` loose oligopoly, `(0.6, 1]` tight oligopoly.

use std::fmt;

use crate::error::ConcentrationError;

/// Market concentration level derived from an HHI value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConcentrationClass {
    Unconcentrated,
    ModeratelyConcentrated,
    HighlyConcentrated,
}

impl fmt::Display for ConcentrationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConcentrationClass::Unconcentrated => "unconcentrated",
            ConcentrationClass::ModeratelyConcentrated => "moderately_concentrated",
            ConcentrationClass::HighlyConcentrated => "highly_concentrated",
        })
    }
}

/// Competition level derived from a CR4 value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompetitionClass {
    PerfectCompetition,
    EffectiveCompetition,
    LooseOligopoly,
    TightOligopoly,
}

impl fmt::Display for CompetitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompetitionClass::PerfectCompetition => "perfect_competition",
            CompetitionClass::EffectiveCompetition => "effective_competition",
            CompetitionClass::LooseOligopoly => "loose_oligopoly",
            CompetitionClass::TightOligopoly => "tight_oligopoly",
        })
    }
}

/// Classifies an HHI value against the three-level concentration ladder.
pub fn classify_hhi(value: f64) -> Result<ConcentrationClass, ConcentrationError> {
    check_unit_interval(value)?;
    Ok(if value < 0.15 {
        ConcentrationClass::Unconcentrated
    } else if value <= 0.25 {
        ConcentrationClass::ModeratelyConcentrated
    } else {
        ConcentrationClass::HighlyConcentrated
    })
}

/// Classifies a CR4 value against the four-level competition ladder.
pub fn classify_cr4(value: f64) -> Result<CompetitionClass, ConcentrationError> {
    check_unit_interval(value)?;
    Ok(if value == 0.0 {
        CompetitionClass::PerfectCompetition
    } else if value < 0.4 {
        CompetitionClass::EffectiveCompetition
    } else if value <= 0.6 {
        CompetitionClass::LooseOligopoly
    } else {
        CompetitionClass::TightOligopoly
    })
}

fn check_unit_interval(value: f64) -> Result<(), ConcentrationError> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(ConcentrationError::OutOfRange(value));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use CompetitionClass::*;
    use ConcentrationClass::*;

    #[test]
    fn hhi_ladder_sweep() {
        let cases = [
            (0.0, Unconcentrated),
            (0.1, Unconcentrated),
            (0.15, ModeratelyConcentrated), // closed lower boundary
            (0.2, ModeratelyConcentrated),
            (0.25, ModeratelyConcentrated), // closed upper boundary
            (0.3, HighlyConcentrated),
            (0.75, HighlyConcentrated),
            (1.0, HighlyConcentrated),
        ];
        for (v, expected) in cases {
            assert_eq!(classify_hhi(v).unwrap(), expected, "value {v}");
        }
    }

    #[test]
    fn cr4_ladder_sweep() {
        let cases = [
            (0.0, PerfectCompetition),
            (0.1, EffectiveCompetition),
            (0.4, LooseOligopoly), // boundary goes to the higher class
            (0.5, LooseOligopoly),
            (0.6, LooseOligopoly), // 0.6 stays loose; tight means strictly above
            (0.99, TightOligopoly),
            (1.0, TightOligopoly),
        ];
        for (v, expected) in cases {
            assert_eq!(classify_cr4(v).unwrap(), expected, "value {v}");
        }
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            classify_hhi(-0.01),
            Err(ConcentrationError::OutOfRange(_))
        ));
        assert!(matches!(
            classify_hhi(1.01),
            Err(ConcentrationError::OutOfRange(_))
        ));
        assert!(classify_cr4(f64::NAN).is_err());
        assert!(classify_cr4(1.0000001).is_err());
    }

    #[test]
    fn class_orders_are_total() {
        assert!(Unconcentrated < ModeratelyConcentrated);
        assert!(ModeratelyConcentrated < HighlyConcentrated);
        assert!(PerfectCompetition < EffectiveCompetition);
        assert!(EffectiveCompetition < LooseOligopoly);
        assert!(LooseOligopoly < TightOligopoly);
    }
}
