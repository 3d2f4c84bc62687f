//! Summability matrices, A-transforms, A-densities and the desk-scale
//! scaling experiments.
//!
//! A-statistical limits are asymptotic statements; everything here runs a
//! finite protocol (a row schedule plus a trend-window rule) and labels the
//! outcome "consistent-with-convergence" or "not-consistent", never "proved".

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{self, OperatorConfig, TestFunction};
use crate::special::DEFAULT_TOL;

/// Default consistency threshold for the trend-window verdict.
pub const DEFAULT_CONSISTENCY_THRESHOLD: f64 = 0.05;

/// Default row schedule for the scaling experiments.
pub fn default_n_schedule() -> Vec<u32> {
    vec![100, 1_000, 10_000]
}

/// Default x grid on [0, 2] for the scaling experiments.
pub fn default_x_grid() -> Vec<f64> {
    vec![0.25, 0.5, 1.0, 2.0]
}

/// A row generator for matrices beyond the built-ins. Row sums are checked
/// numerically; regularity itself is an attestation, not a verified fact.
#[derive(Clone)]
pub struct CustomMatrix {
    pub name: String,
    pub entry: Arc<dyn Fn(u64, u64) -> f64 + Send + Sync>,
    pub row_horizon: Arc<dyn Fn(u64) -> u64 + Send + Sync>,
    pub regularity_attested: bool,
}

impl fmt::Debug for CustomMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomMatrix")
            .field("name", &self.name)
            .field("regularity_attested", &self.regularity_attested)
            .finish()
    }
}

/// Row-accessible nonnegative infinite summability matrix (1-indexed rows
/// and columns, matching the transform Σ_{k≥1} a_{jk} x_k).
#[derive(Debug, Clone)]
pub enum SummabilityMatrix {
    /// Cesàro matrix of order one: a_{jk} = 1/j for k ≤ j.
    Cesaro1,
    /// Identity matrix: reduces A-statistical convergence to ordinary
    /// convergence.
    Identity,
    Custom(CustomMatrix),
}

impl SummabilityMatrix {
    pub fn name(&self) -> &str {
        match self {
            Self::Cesaro1 => "cesaro1",
            Self::Identity => "identity",
            Self::Custom(c) => &c.name,
        }
    }

    pub fn entry(&self, j: u64, k: u64) -> f64 {
        debug_assert!(j >= 1 && k >= 1);
        match self {
            Self::Cesaro1 => {
                if k <= j {
                    1.0 / j as f64
                } else {
                    0.0
                }
            }
            Self::Identity => {
                if j == k {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Custom(c) => (c.entry)(j, k),
        }
    }

    /// Largest column with a (declared) nonzero entry in row j.
    pub fn row_support(&self, j: u64) -> u64 {
        match self {
            Self::Cesaro1 | Self::Identity => j,
            Self::Custom(c) => (c.row_horizon)(j),
        }
    }

    fn check_horizon(&self, j: u64, horizon: u64) -> Result<()> {
        if j == 0 {
            return Err(Error::Domain("row index j must be >= 1".into()));
        }
        match self {
            Self::Cesaro1 | Self::Identity => {
                if horizon < j {
                    return Err(Error::InsufficientHorizon(format!(
                        "row {j} of {} needs horizon >= {j}, got {horizon}",
                        self.name()
                    )));
                }
            }
            Self::Custom(_) => {}
        }
        Ok(())
    }

    /// Row sum Σ_{k ≤ horizon} a_{jk}; the regularity spot-check quantity.
    pub fn row_sum(&self, j: u64, horizon: u64) -> Result<f64> {
        a_density(self, &|_| true, j, horizon)
    }
}

/// A sequence x_k given by an evaluable term function (1-indexed).
#[derive(Clone)]
pub struct SequenceSpec {
    label: String,
    term: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
}

impl fmt::Debug for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceSpec").field("label", &self.label).finish()
    }
}

impl SequenceSpec {
    pub fn new(label: impl Into<String>, term: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        Self { label: label.into(), term: Arc::new(term) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn term(&self, k: u64) -> f64 {
        (self.term)(k)
    }

    /// 1 on perfect-square indices, 0 elsewhere: the classical example whose
    /// Cesàro density vanishes while ordinary convergence fails.
    pub fn square_indicator() -> Self {
        Self::new("square-indicator", |k| {
            let r = (k as f64).sqrt().round() as u64;
            if r * r == k {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn inv_k() -> Self {
        Self::new("inv-k", |k| 1.0 / k as f64)
    }

    pub fn constant(value: f64) -> Self {
        Self::new("const", move |_| value)
    }
}

/// A-transform row value (Ax)_j = Σ_{k ≤ horizon} a_{jk} x_k.
///
/// Exact for the finitely supported built-in rows; refuses a horizon that
/// would silently truncate them.
pub fn a_transform(a: &SummabilityMatrix, s: &SequenceSpec, j: u64, horizon: u64) -> Result<f64> {
    a.check_horizon(j, horizon)?;
    match a {
        SummabilityMatrix::Cesaro1 => {
            let mut sum = 0.0;
            for k in 1..=j {
                sum += s.term(k);
            }
            Ok(sum / j as f64)
        }
        SummabilityMatrix::Identity => Ok(s.term(j)),
        SummabilityMatrix::Custom(c) => {
            let top = horizon.min((c.row_horizon)(j));
            let mut sum = 0.0;
            for k in 1..=top {
                sum += (c.entry)(j, k) * s.term(k);
            }
            Ok(sum)
        }
    }
}

/// A-density of an index set at row j: Σ_{k ≤ horizon, member(k)} a_{jk}.
///
/// For the built-ins this reduces to count / j (Cesàro) or a membership test
/// (identity), so small rational densities like 100/10⁴ come out exact.
pub fn a_density(
    a: &SummabilityMatrix,
    member: &(dyn Fn(u64) -> bool + Sync),
    j: u64,
    horizon: u64,
) -> Result<f64> {
    a.check_horizon(j, horizon)?;
    match a {
        SummabilityMatrix::Cesaro1 => {
            let count = (1..=j).filter(|&k| member(k)).count();
            Ok(count as f64 / j as f64)
        }
        SummabilityMatrix::Identity => Ok(if member(j) { 1.0 } else { 0.0 }),
        SummabilityMatrix::Custom(c) => {
            let top = horizon.min((c.row_horizon)(j));
            let mut sum = 0.0;
            for k in 1..=top {
                if member(k) {
                    sum += (c.entry)(j, k);
                }
            }
            Ok(sum)
        }
    }
}

/// Verdict of the finite A-statistical-limit protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConsistencyVerdict {
    #[serde(rename = "consistent-with-convergence")]
    ConsistentWithConvergence,
    #[serde(rename = "not-consistent")]
    NotConsistent,
}

impl fmt::Display for ConsistencyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ConsistentWithConvergence => write!(f, "consistent-with-convergence"),
            Self::NotConsistent => write!(f, "not-consistent"),
        }
    }
}

/// Densities of the ε-exceptional set along a row schedule, plus the
/// trend-window verdict.
#[derive(Debug, Clone, Serialize)]
pub struct AstatReport {
    pub densities: Vec<(u64, f64)>,
    pub verdict: ConsistencyVerdict,
    pub threshold: f64,
}

/// Runs the desk-scale A-statistical-limit protocol: d_j = density of
/// {k : |x_k − L| ≥ ε} along the schedule; consistent iff the last window
/// (up to 3 rows) is non-increasing and ends at or below the threshold.
pub fn astat_limit_estimate(
    a: &SummabilityMatrix,
    s: &SequenceSpec,
    limit: f64,
    eps: f64,
    j_schedule: &[u64],
    threshold: f64,
) -> Result<AstatReport> {
    if j_schedule.is_empty() {
        return Err(Error::InvalidGrid("j_schedule must be non-empty".into()));
    }
    if !j_schedule.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidGrid("j_schedule must be strictly increasing".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be > 0, got {eps}")));
    }
    if !(threshold > 0.0) {
        return Err(Error::Domain(format!("threshold must be > 0, got {threshold}")));
    }
    let member = |k: u64| (s.term(k) - limit).abs() >= eps;
    let mut densities = Vec::with_capacity(j_schedule.len());
    for &j in j_schedule {
        let horizon = a.row_support(j);
        densities.push((j, a_density(a, &member, j, horizon)?));
    }
    let window = &densities[densities.len().saturating_sub(3)..];
    let non_increasing = window.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);
    let last_small = window.last().map(|&(_, d)| d <= threshold).unwrap_or(false);
    let verdict = if non_increasing && last_small {
        ConsistencyVerdict::ConsistentWithConvergence
    } else {
        ConsistencyVerdict::NotConsistent
    };
    Ok(AstatReport { densities, verdict, threshold })
}

/// The claimed scaled-fourth-moment constant
/// (4β+6)/(β(β+1)(β+2)) + 18/β + 12 + 4β.
pub fn fourth_moment_constant(beta: f64) -> f64 {
    (4.0 * beta + 6.0) / (beta * (beta + 1.0) * (beta + 2.0)) + 18.0 / beta + 12.0 + 4.0 * beta
}

/// The claimed scaled-error coefficient (1 + 2β + 2β²)/(2β); the claimed
/// limit of n(W_n f − f)(x) is this coefficient times x f″(x).
pub fn voronovskaya_coefficient(beta: f64) -> f64 {
    (1.0 + 2.0 * beta + 2.0 * beta * beta) / (2.0 * beta)
}

/// One row of the fourth-moment scaling experiment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FourthMomentRow {
    pub n: u32,
    pub x: f64,
    /// Measured n · W_n^(β)((t−x)⁴; x).
    pub scaled_moment: f64,
    /// The claimed x-independent constant, recorded verbatim for the margin.
    pub claimed_constant: f64,
}

/// Pairs the measured scaled fourth central moment with the claimed constant
/// over a (n, x) grid. Rows are ordered n-outer, x-inner.
pub fn fourth_moment_scaling_experiment(
    beta: f64,
    x_grid: &[f64],
    n_schedule: &[u32],
    tol: f64,
) -> Result<Vec<FourthMomentRow>> {
    if x_grid.is_empty() || n_schedule.is_empty() {
        return Err(Error::InvalidGrid("x_grid and n_schedule must be non-empty".into()));
    }
    if !n_schedule.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidGrid("n_schedule must be strictly increasing".into()));
    }
    let claimed = fourth_moment_constant(beta);
    let mut rows = Vec::with_capacity(x_grid.len() * n_schedule.len());
    for &n in n_schedule {
        let config = OperatorConfig::new(n, beta, tol)?;
        for &x in x_grid {
            let mu4 = operator::central_moment(&config, 4, x)?;
            rows.push(FourthMomentRow {
                n,
                x,
                scaled_moment: f64::from(n) * mu4,
                claimed_constant: claimed,
            });
        }
    }
    Ok(rows)
}

/// One row of the scaled-error (Voronovskaya-type) experiment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VoronovskayaRow {
    pub n: u32,
    pub x: f64,
    /// Measured n · (W_n^(β) f − f)(x).
    pub scaled_error: f64,
    /// (1 + 2β + 2β²)/(2β).
    pub claimed_constant: f64,
    /// claimed_constant · x · f″(x), the claimed limit of the scaled error.
    pub claimed_rhs: f64,
}

/// Scaled-error experiment output: per-(n, x) rows plus, per x, the
/// empirical limit extrapolated from the last three n values.
#[derive(Debug, Clone, Serialize)]
pub struct VoronovskayaTable {
    pub function: String,
    pub beta: f64,
    pub rows: Vec<VoronovskayaRow>,
    /// (x, empirical limit) pairs in x-grid order.
    pub empirical_limits: Vec<(f64, f64)>,
}

/// Measures n(W_n f − f)(x) over the schedule and extrapolates an empirical
/// limit per x. Requires f to carry its second derivative (the claimed
/// right-hand side needs f″). Rows are ordered n-outer, x-inner.
pub fn voronovskaya_experiment(
    f: &TestFunction,
    beta: f64,
    x_grid: &[f64],
    n_schedule: &[u32],
) -> Result<VoronovskayaTable> {
    if x_grid.is_empty() || n_schedule.is_empty() {
        return Err(Error::InvalidGrid("x_grid and n_schedule must be non-empty".into()));
    }
    if !n_schedule.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidGrid("n_schedule must be strictly increasing".into()));
    }
    if !f.has_second_derivative() {
        return Err(Error::Domain(format!(
            "voronovskaya experiment needs f'' for '{}'",
            f.label()
        )));
    }
    let coeff = voronovskaya_coefficient(beta);
    let mut rows = Vec::with_capacity(x_grid.len() * n_schedule.len());
    for &n in n_schedule {
        let config = OperatorConfig::new(n, beta, DEFAULT_TOL)?;
        for &x in x_grid {
            let w = operator::apply_operator(&config, f, x)?;
            let fpp = f.second_derivative(x).expect("checked above");
            rows.push(VoronovskayaRow {
                n,
                x,
                scaled_error: f64::from(n) * (w - f.eval(x)),
                claimed_constant: coeff,
                claimed_rhs: coeff * x * fpp,
            });
        }
    }
    let mut empirical_limits = Vec::with_capacity(x_grid.len());
    for (ix, &x) in x_grid.iter().enumerate() {
        let series: Vec<(f64, f64)> = n_schedule
            .iter()
            .enumerate()
            .map(|(i, &n)| (f64::from(n), rows[i * x_grid.len() + ix].scaled_error))
            .collect();
        empirical_limits.push((x, empirical_limit(&series)));
    }
    Ok(VoronovskayaTable {
        function: f.label().to_string(),
        beta,
        rows,
        empirical_limits,
    })
}

/// Richardson-style limit estimate from the last up-to-three (n, value)
/// pairs: the constant term of the polynomial in 1/n through those points
/// (Lagrange evaluation at 1/n = 0).
pub fn empirical_limit(points: &[(f64, f64)]) -> f64 {
    let tail = &points[points.len().saturating_sub(3)..];
    lagrange_at_zero(tail).0
}

/// Same estimate with a first-order error propagation of per-point bounds.
pub(crate) fn empirical_limit_with_err(points: &[(f64, f64, f64)]) -> (f64, f64) {
    let tail = &points[points.len().saturating_sub(3)..];
    let pts: Vec<(f64, f64)> = tail.iter().map(|&(n, v, _)| (n, v)).collect();
    let (value, weights) = lagrange_at_zero(&pts);
    let err = tail
        .iter()
        .zip(&weights)
        .map(|(&(_, _, e), &w)| w.abs() * e)
        .sum();
    (value, err)
}

/// Lagrange interpolation of (u_i = 1/n_i, v_i) evaluated at u = 0; returns
/// the value and the per-point weights L_i(0).
fn lagrange_at_zero(points: &[(f64, f64)]) -> (f64, Vec<f64>) {
    assert!(!points.is_empty());
    let us: Vec<f64> = points.iter().map(|&(n, _)| 1.0 / n).collect();
    let mut value = 0.0;
    let mut weights = Vec::with_capacity(points.len());
    for (i, &(_, v)) in points.iter().enumerate() {
        let mut w = 1.0;
        for (j, &uj) in us.iter().enumerate() {
            if j != i {
                w *= uj / (uj - us[i]);
            }
        }
        value += w * v;
        weights.push(w);
    }
    (value, weights)
}
