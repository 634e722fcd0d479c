//! Grid checks of the standalone analytic inequalities behind the bounds.
//!
//! Each suite evaluates an inequality `lhs <= rhs` (or `>=`) on a grid and
//! records the margin, taken as `ln(rhs/lhs)` for the `<=` direction and
//! oriented so that a positive margin means the inequality holds. Margins
//! within the grid tolerance of zero count as tight passes. Every suite has
//! a perturbed negative control that is expected to fail somewhere.

mod suites;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use suites::{
    verify_anqn, verify_encadrement, verify_lambda_moment, verify_lower_aux,
    verify_main_inequality, verify_mixture_moment_bound, verify_ratio_comparison,
    verify_wreath_inequality, LAMBDA_REL_TOL,
};

/// Failures beyond this many are counted but not stored.
const MAX_STORED_FAILURES: usize = 50;

/// Values of `N` to visit. Points below a suite's stated threshold are
/// excluded from the grid rather than counted.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NGrid {
    /// Every integer from the suite's threshold (or `lo`) to `hi`.
    Step {
        lo: Option<u64>,
        hi: u64,
        step: u64,
    },
    /// About `points` integers log-spaced from the threshold (or `lo`) to `hi`.
    LogSpaced {
        lo: Option<u64>,
        hi: u64,
        points: usize,
    },
    List(Vec<u64>),
}

impl NGrid {
    /// The grid values not below `threshold`, in increasing order.
    pub fn values(&self, threshold: u64) -> Vec<u64> {
        let mut out: Vec<u64> = match self {
            Self::Step { lo, hi, step } => {
                let lo = lo.unwrap_or(threshold).max(threshold);
                (lo..=*hi).step_by((*step).max(1) as usize).collect()
            }
            Self::LogSpaced { lo, hi, points } => {
                let lo = lo.unwrap_or(threshold).max(threshold).max(1);
                if lo > *hi {
                    Vec::new()
                } else if *points <= 1 || lo == *hi {
                    vec![lo]
                } else {
                    let (a, b) = ((lo as f64).ln(), (*hi as f64).ln());
                    let mut v: Vec<u64> = (0..*points)
                        .map(|i| {
                            (a + (b - a) * i as f64 / (*points - 1) as f64)
                                .exp()
                                .round() as u64
                        })
                        .collect();
                    v.push(lo);
                    v.push(*hi);
                    v
                }
            }
            Self::List(v) => v.iter().copied().filter(|&n| n >= threshold).collect(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    fn is_empty_spec(&self) -> bool {
        match self {
            Self::Step { lo, hi, step } => *step == 0 || lo.is_some_and(|l| l > *hi),
            Self::LogSpaced { lo, hi, points } => *points == 0 || lo.is_some_and(|l| l > *hi),
            Self::List(v) => v.is_empty(),
        }
    }
}

/// Grid for one suite. Which fields matter depends on the suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    /// Values of `τ`, or of `a` for the auxiliary lower bound.
    pub params: Vec<f64>,
    pub n: NGrid,
    /// `(t_min, t_max, points)`, log-spaced.
    pub t_range: (f64, f64, usize),
    pub theta_points: usize,
    /// Largest block length `n`, or largest moment order `l`.
    pub index_max: u64,
    /// Margins with absolute value below this are tight.
    pub tolerance: f64,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "tolerance {} must be positive",
                self.tolerance
            )));
        }
        if self.n.is_empty_spec() {
            return Err(Error::Config("empty N grid".into()));
        }
        let (a, b, p) = self.t_range;
        if !(a > 2.0 && b >= a && p > 0) {
            return Err(Error::Config(format!(
                "bad t range {a}..{b} with {p} points"
            )));
        }
        Ok(())
    }

    fn base(n: NGrid) -> Self {
        Self {
            params: Vec::new(),
            n,
            t_range: (2.1, 200.0, 200),
            theta_points: 64,
            index_max: 60,
            tolerance: 1e-12,
        }
    }
}

/// A grid point together with both sides and the margin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginPoint {
    pub point: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub id: String,
    pub statement: String,
    pub negative_control: bool,
    /// Reported for reference only; does not affect the overall verdict.
    pub informational: bool,
    pub grid_size: usize,
    pub pass_count: usize,
    pub tight_count: usize,
    pub failure_count: usize,
    /// Points skipped because they fall outside the stated domain.
    pub excluded: usize,
    /// The first failures, in grid order.
    pub failures: Vec<MarginPoint>,
    pub min_margin: Option<MarginPoint>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub(crate) fn builder(id: &str, statement: impl Into<String>, tolerance: f64) -> ReportBuilder {
        ReportBuilder {
            report: Self {
                id: id.into(),
                statement: statement.into(),
                negative_control: false,
                informational: false,
                grid_size: 0,
                pass_count: 0,
                tight_count: 0,
                failure_count: 0,
                excluded: 0,
                failures: Vec::new(),
                min_margin: None,
                notes: Vec::new(),
            },
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// What this report should look like: no failures for a stated
    /// inequality, at least one for a negative control.
    pub fn as_expected(&self) -> bool {
        self.informational || self.passed() != self.negative_control
    }
}

pub(crate) struct ReportBuilder {
    report: VerifyReport,
    tolerance: f64,
}

impl ReportBuilder {
    pub(crate) fn control(mut self, yes: bool) -> Self {
        self.report.negative_control = yes;
        if yes {
            self.report.id.push_str("/control");
        }
        self
    }

    pub(crate) fn informational(mut self) -> Self {
        self.report.informational = true;
        self
    }

    pub(crate) fn exclude(&mut self, count: usize) {
        self.report.excluded += count;
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.report.notes.push(s.into());
    }

    /// Record a point whose margin is `margin` (positive when it holds).
    pub(crate) fn record(
        &mut self,
        point: impl FnOnce() -> String,
        lhs: f64,
        rhs: f64,
        margin: f64,
    ) {
        let r = &mut self.report;
        r.grid_size += 1;
        let is_min = r.min_margin.as_ref().is_none_or(|m| margin < m.margin) || margin.is_nan();
        let make = || MarginPoint {
            point: point(),
            lhs,
            rhs,
            margin,
        };
        let mp = if is_min || !(margin >= -self.tolerance) {
            Some(make())
        } else {
            None
        };
        if margin.abs() < self.tolerance {
            r.tight_count += 1;
            r.pass_count += 1;
        } else if margin > 0.0 {
            r.pass_count += 1;
        } else {
            r.failure_count += 1;
            if r.failures.len() < MAX_STORED_FAILURES {
                r.failures.push(mp.clone().expect("built for failures"));
            }
        }
        if is_min {
            r.min_margin = mp;
        }
    }

    pub(crate) fn finish(self) -> VerifyReport {
        self.report
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match (self.informational, self.negative_control, self.passed()) {
            (true, _, _) => "INFO",
            (false, false, true) | (false, true, false) => "OK",
            _ => "UNEXPECTED",
        };
        writeln!(f, "[{verdict}] {}: {}", self.id, self.statement)?;
        writeln!(
            f,
            "    points {}  pass {} (tight {})  fail {}  excluded {}",
            self.grid_size, self.pass_count, self.tight_count, self.failure_count, self.excluded
        )?;
        if let Some(m) = &self.min_margin {
            writeln!(
                f,
                "    min margin {:e} at {} (lhs {}, rhs {})",
                m.margin, m.point, m.lhs, m.rhs
            )?;
        }
        if let Some(m) = self.failures.first() {
            writeln!(
                f,
                "    first failure at {} (lhs {}, rhs {})",
                m.point, m.lhs, m.rhs
            )?;
        }
        for n in &self.notes {
            writeln!(f, "    note: {n}")?;
        }
        Ok(())
    }
}

/// The available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Encadrement,
    LowerAux,
    MainInequality,
    Anqn,
    RatioComparison,
    WreathInequality,
    LambdaMoment,
    MixtureMomentBound,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Encadrement,
        Suite::LowerAux,
        Suite::MainInequality,
        Suite::Anqn,
        Suite::RatioComparison,
        Suite::WreathInequality,
        Suite::LambdaMoment,
        Suite::MixtureMomentBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Encadrement => "encadrement",
            Self::LowerAux => "lower_aux",
            Self::MainInequality => "main_inequality",
            Self::Anqn => "anqn",
            Self::RatioComparison => "ratio_comparison",
            Self::WreathInequality => "wreath_inequality",
            Self::LambdaMoment => "lambda_moment",
            Self::MixtureMomentBound => "mixture_moment_bound",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn default_grid(self) -> GridSpec {
        match self {
            Self::Encadrement => GridSpec::base(NGrid::List(vec![1])),
            Self::LowerAux => GridSpec {
                params: vec![1.0, 2.0, 4.0],
                ..GridSpec::base(NGrid::LogSpaced {
                    lo: None,
                    hi: 10_000,
                    points: 400,
                })
            },
            Self::MainInequality => GridSpec {
                params: vec![2.0, 3.0, 5.0],
                ..GridSpec::base(NGrid::Step {
                    lo: None,
                    hi: 500,
                    step: 1,
                })
            },
            Self::Anqn => GridSpec::base(NGrid::LogSpaced {
                lo: None,
                hi: 10_000,
                points: 400,
            }),
            Self::RatioComparison => GridSpec {
                index_max: 40,
                ..GridSpec::base(NGrid::List(vec![6, 10, 50, 200]))
            },
            Self::WreathInequality => GridSpec {
                params: vec![2.0, 3.0],
                ..GridSpec::base(NGrid::Step {
                    lo: None,
                    hi: 500,
                    step: 1,
                })
            },
            Self::LambdaMoment => GridSpec {
                index_max: 6,
                ..GridSpec::base(NGrid::List(vec![5, 10, 50]))
            },
            Self::MixtureMomentBound => GridSpec {
                index_max: 4000,
                ..GridSpec::base(NGrid::List(vec![12, 50, 100]))
            },
        }
    }

    /// Run the suite on `grid`, either as stated or as its negative control.
    pub fn run(self, grid: &GridSpec, control: bool) -> Result<VerifyReport> {
        grid.validate()?;
        match self {
            Self::Encadrement => verify_encadrement(grid, control),
            Self::LowerAux => verify_lower_aux(grid, control),
            Self::MainInequality => verify_main_inequality(grid, control),
            Self::Anqn => verify_anqn(grid, control),
            Self::RatioComparison => verify_ratio_comparison(grid, control),
            Self::WreathInequality => verify_wreath_inequality(grid, control),
            Self::LambdaMoment => verify_lambda_moment(grid, control),
            Self::MixtureMomentBound => verify_mixture_moment_bound(grid),
        }
    }

    pub fn has_control(self) -> bool {
        self != Self::MixtureMomentBound
    }
}

/// Reports for a set of suites, each followed by its negative control.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifySummary {
    pub reports: Vec<VerifyReport>,
}

impl VerifySummary {
    pub fn all_as_expected(&self) -> bool {
        self.reports.iter().all(VerifyReport::as_expected)
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.reports {
            write!(f, "{r}")?;
        }
        let bad = self.reports.iter().filter(|r| !r.as_expected()).count();
        writeln!(f, "{} reports, {bad} unexpected", self.reports.len())
    }
}

/// Run `suites` on their default grids together with their controls.
pub fn run_suites(suites: &[Suite]) -> Result<VerifySummary> {
    let mut reports = Vec::new();
    for &s in suites {
        let g = s.default_grid();
        reports.push(s.run(&g, false)?);
        if s.has_control() {
            reports.push(s.run(&g, true)?);
        }
    }
    Ok(VerifySummary { reports })
}
