//! The common outcome type returned by every verifier.

use std::fmt;

use num_complex::Complex64;

/// Outcome of a check.
///
/// `Pass` and `Fail` are decisive for the sampled quantity. `Inconclusive`
/// means the method could not certify either way (an existential search
/// exhausted its candidates, or the data was too degenerate to trust) — it is
/// *not* a failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A verdict plus the numbers that justify it.
///
/// `extremal_value` is the quantity the check compared against its threshold
/// (each verifier documents which). `witness` is the sample point where that
/// extremum occurred — always present on `Fail`, usually present otherwise.
/// `tail_bound` records the series truncation error the sampled values carry,
/// so a margin can be read against it.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub extremal_value: f64,
    pub witness: Option<Complex64>,
    pub tolerance: f64,
    pub tail_bound: f64,
}

impl CheckReport {
    pub fn pass(extremal_value: f64, tolerance: f64, tail_bound: f64) -> Self {
        Self {
            verdict: Verdict::Pass,
            extremal_value,
            witness: None,
            tolerance,
            tail_bound,
        }
    }

    /// Failures must name the offending point.
    pub fn fail(extremal_value: f64, witness: Complex64, tolerance: f64, tail_bound: f64) -> Self {
        Self {
            verdict: Verdict::Fail,
            extremal_value,
            witness: Some(witness),
            tolerance,
            tail_bound,
        }
    }

    pub fn inconclusive(extremal_value: f64, tolerance: f64, tail_bound: f64) -> Self {
        Self {
            verdict: Verdict::Inconclusive,
            extremal_value,
            witness: None,
            tolerance,
            tail_bound,
        }
    }

    /// Attaches the extremal sample point (for non-failure verdicts).
    pub fn with_witness(mut self, witness: Complex64) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (extremal {:.6e}, tolerance {:.1e}, tail {:.1e}",
            self.verdict, self.extremal_value, self.tolerance, self.tail_bound
        )?;
        if let Some(w) = self.witness {
            write!(f, ", witness {w:.6}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fail_carries_witness() {
        let r = CheckReport::fail(-0.5, Complex64::new(0.9, 0.0), 1e-9, 0.0);
        assert!(r.failed());
        assert!(r.witness.is_some());
    }

    #[test]
    fn verdict_display() {
        assert_eq!(Verdict::Pass.to_string(), "pass");
        assert_eq!(Verdict::Fail.to_string(), "fail");
        assert_eq!(Verdict::Inconclusive.to_string(), "inconclusive");
    }
}
