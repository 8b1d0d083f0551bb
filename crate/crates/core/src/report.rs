use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    ReportOnly,
}

/// How `lhs` is compared with `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `rel_diff ≤ tol`, or `abs_diff ≤ tol` when `rhs = 0`.
    Approx,
    /// `abs_diff ≤ tol` regardless of `rhs`.
    AbsApprox,
    Less,
    LessEq,
    Greater,
    GreaterEq,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub rel_diff: Option<f64>,
    pub relation: Relation,
    pub tol: Option<f64>,
    pub status: CheckStatus,
}

impl Check {
    fn build(name: impl Into<String>, lhs: f64, rhs: f64, abs_diff: f64, relation: Relation, tol: Option<f64>) -> Self {
        let rel_diff = (rhs != 0.0).then(|| abs_diff / rhs.abs());
        let mut check = Self {
            name: name.into(),
            lhs,
            rhs,
            abs_diff,
            rel_diff,
            relation,
            tol,
            status: CheckStatus::ReportOnly,
        };
        if let Some(tol) = tol {
            check.status = if check.holds(tol) {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
        }
        check
    }

    fn holds(&self, tol: f64) -> bool {
        let (l, r) = (self.lhs, self.rhs);
        match self.relation {
            Relation::Approx => match self.rel_diff {
                Some(rel) => rel <= tol,
                None => self.abs_diff <= tol,
            },
            Relation::AbsApprox => self.abs_diff <= tol,
            Relation::Less => l < r,
            Relation::LessEq => l <= r,
            Relation::Greater => l > r,
            Relation::GreaterEq => l >= r,
        }
    }

    /// Asserted: relative difference within `tol`.
    pub fn approx(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::build(name, lhs, rhs, (lhs - rhs).abs(), Relation::Approx, Some(tol))
    }

    /// Asserted with a precomputed absolute difference, e.g. the modulus of a
    /// complex residual whose real part alone is shown in `lhs`/`rhs`.
    pub fn approx_with_diff(name: impl Into<String>, lhs: f64, rhs: f64, abs_diff: f64, tol: f64) -> Self {
        Self::build(name, lhs, rhs, abs_diff, Relation::Approx, Some(tol))
    }

    /// Asserted: `|lhs − rhs| ≤ tol`.
    pub fn abs_approx(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::build(name, lhs, rhs, (lhs - rhs).abs(), Relation::AbsApprox, Some(tol))
    }

    /// Asserted ordering between `lhs` and `rhs`; `relation` must not be an
    /// approximate one.
    pub fn ordered(name: impl Into<String>, lhs: f64, relation: Relation, rhs: f64) -> Self {
        debug_assert!(!matches!(relation, Relation::Approx | Relation::AbsApprox));
        Self::build(name, lhs, rhs, (lhs - rhs).abs(), relation, Some(0.0))
    }

    pub fn report_only(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::build(name, lhs, rhs, (lhs - rhs).abs(), Relation::Approx, None)
    }

    /// A check that could not be evaluated; always a failure.
    pub fn errored(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_diff: f64::NAN,
            rel_diff: None,
            relation: Relation::Approx,
            tol: None,
            status: CheckStatus::Fail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub config: Map<String, Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub exit_status: i32,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, config: Map<String, Value>) -> Self {
        Self {
            suite: suite.into(),
            config,
            checks: Vec::new(),
            passed: true,
            exit_status: 0,
        }
    }

    pub fn push(&mut self, check: Check) {
        if check.status == CheckStatus::Fail {
            self.passed = false;
            self.exit_status = 1;
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
