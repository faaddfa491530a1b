use std::collections::BTreeMap;
use std::fmt::Display;

use num_traits::Zero;
use serde::Serialize;

/// Outcome of one verification run. Exact values are rendered in the same
/// `p/q` text form that the parser accepts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    /// Number of scalar or matrix-entry comparisons performed.
    pub checks: usize,
    /// Only nonzero defects are kept.
    pub defects: Vec<Defect>,
    pub trace: Vec<TracePoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Defect {
    pub location: String,
    pub defect: String,
}

/// One truncation width of a Cauchy convergence run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracePoint {
    /// Which series the point belongs to when several share a report.
    pub series: String,
    pub width: usize,
    pub partial: String,
    pub rhs: String,
    pub gap: String,
    pub gap_approx: f64,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            params: BTreeMap::new(),
            pass: true,
            checks: 0,
            defects: Vec::new(),
            trace: Vec::new(),
        }
    }

    pub fn param(&mut self, name: impl Into<String>, value: impl Display) -> &mut Self {
        self.params.insert(name.into(), value.to_string());
        self
    }

    /// Records an exact defect; anything nonzero fails the report.
    pub fn record<T: Zero + Display>(&mut self, location: impl Display, defect: &T) {
        self.checks += 1;
        if !defect.is_zero() {
            self.fail(location, defect);
        }
    }

    /// Records a failure that is not an exact difference (a violated
    /// precondition, a broken monotonicity requirement, ...).
    pub fn fail(&mut self, location: impl Display, detail: impl Display) {
        self.pass = false;
        self.defects.push(Defect {
            location: location.to_string(),
            defect: detail.to_string(),
        });
    }

    /// Folds a sub-report in, prefixing its defect locations.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks += other.checks;
        self.pass &= other.pass;
        for d in other.defects {
            self.defects.push(Defect {
                location: format!("{}: {}", other.suite, d.location),
                defect: d.defect,
            });
        }
        self.trace.extend(other.trace);
    }
}
