//! Complete-information equilibria of the cubic contest.
//!
//! With common cost `theta`, the symmetric first-order condition is
//! `a x^2 - 2 b x + c - theta = 0`, with discriminant sign carried by
//! `zeta = (b^2 - a (c - theta)) / a^2`. For `zeta >= 0` the game has the
//! unique pure equilibrium `x* = kappa - sgn(a) sqrt(zeta)`; for `zeta < 0`
//! only mixed equilibria exist and they are pinned down by the first two
//! moments: mean `kappa = b / a`, variance `-zeta`. The minimal-support
//! representations of that moment profile, and the criteria deciding when
//! they survive the clamped contest, live here too.

use serde::Serialize;

use crate::csf::{ContestTechnology, EffortProfile};
use crate::{Error, Result};

/// Technology plus a common marginal cost `theta` in `(0, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompleteInfoProblem {
    tech: ContestTechnology,
    theta: f64,
}

impl CompleteInfoProblem {
    pub fn new(tech: ContestTechnology, theta: f64) -> Result<Self> {
        if !theta.is_finite() || theta <= 0.0 || theta >= tech.c() {
            return Err(Error::invalid(format!(
                "theta must lie strictly inside (0, c) = (0, {}), got {theta}",
                tech.c()
            )));
        }
        Ok(Self { tech, theta })
    }

    pub fn tech(&self) -> &ContestTechnology {
        &self.tech
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Prize-normalized surplus `c - theta`.
    pub fn surplus(&self) -> f64 {
        self.tech.c() - self.theta
    }

    /// `kappa = b / a`; the mixed-region mean. Undefined at `a = 0`.
    pub fn kappa(&self) -> Result<f64> {
        self.tech.kappa()
    }

    /// Pure-versus-mixed discriminant `zeta = (b^2 - a (c - theta)) / a^2`.
    pub fn zeta(&self) -> Result<f64> {
        let a = self.tech.a();
        if a == 0.0 {
            return Err(Error::NeutralFeedback("zeta"));
        }
        Ok((self.tech.b() * self.tech.b() - a * self.surplus()) / (a * a))
    }

    /// Mixed-region standard deviation `s = sqrt(-zeta)`; defined only when
    /// `zeta < 0`.
    pub fn s(&self) -> Result<f64> {
        let zeta = self.zeta()?;
        if zeta >= 0.0 {
            return Err(Error::invalid(format!(
                "s = sqrt(-zeta) requires zeta < 0, got zeta = {zeta}"
            )));
        }
        Ok((-zeta).sqrt())
    }

    fn raw_p(&self, x: f64, y: f64) -> f64 {
        self.tech
            .raw_probability(EffortProfile::new(x, y).expect("nonnegative efforts"))
    }
}

/// Which minimal-support family represents the mixed moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Equal mass on `kappa - s` and `kappa + s`.
    Symmetric,
    /// Mass `1 - p` on zero effort and `p` on `z = (c - theta) / b`.
    Endpoint,
}

/// A two-point distribution matching the mixed-equilibrium moments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoPointRepresentation {
    pub low: f64,
    pub high: f64,
    pub p_low: f64,
    pub p_high: f64,
    pub branch: Branch,
}

impl TwoPointRepresentation {
    pub fn mean(&self) -> f64 {
        self.p_low * self.low + self.p_high * self.high
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.p_low * self.low * self.low + self.p_high * self.high * self.high - m * m
    }

    pub fn points(&self) -> [(f64, f64); 2] {
        [(self.low, self.p_low), (self.high, self.p_high)]
    }
}

/// Solution of the complete-information game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CompleteInfoEquilibrium {
    /// Unique symmetric pure equilibrium (the `zeta >= 0` region, including
    /// the dominant-strategy case `a = 0`).
    PureSymmetric { effort: f64, payoff: f64 },
    /// Mixed region: only the first two moments are determined. The attached
    /// representation is the canonical minimal-support choice; checks accept
    /// any moment-matched distribution but the solver never synthesizes
    /// others.
    MixedMoments {
        mean: f64,
        variance: f64,
        representation: TwoPointRepresentation,
        payoff: f64,
    },
}

impl CompleteInfoEquilibrium {
    pub fn payoff(&self) -> f64 {
        match self {
            CompleteInfoEquilibrium::PureSymmetric { payoff, .. }
            | CompleteInfoEquilibrium::MixedMoments { payoff, .. } => *payoff,
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, CompleteInfoEquilibrium::PureSymmetric { .. })
    }
}

/// Tri-state outcome of an admissibility criterion: `Inapplicable` means the
/// criterion's own premise fails, which is deliberately distinct from
/// `Violated`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Satisfied,
    Violated,
    Inapplicable,
}

impl Criterion {
    pub fn holds(&self) -> bool {
        matches!(self, Criterion::Satisfied)
    }
}

/// Solve the complete-information game.
pub fn solve_complete(problem: &CompleteInfoProblem) -> CompleteInfoEquilibrium {
    let tech = problem.tech();
    let (a, b) = (tech.a(), tech.b());
    let surplus = problem.surplus();
    if a == 0.0 {
        let effort = surplus / (2.0 * b);
        return CompleteInfoEquilibrium::PureSymmetric {
            effort,
            payoff: 0.5 - problem.theta() * effort,
        };
    }
    let zeta = problem.zeta().expect("a != 0");
    if zeta >= 0.0 {
        // Stable root of a x^2 - 2 b x + (c - theta) = 0; the rationalized
        // form stays accurate for small |a| and equals the a = 0 limit.
        let effort = surplus / (b + (b * b - a * surplus).sqrt());
        CompleteInfoEquilibrium::PureSymmetric {
            effort,
            payoff: 0.5 - problem.theta() * effort,
        }
    } else {
        let kappa = b / a;
        let representation =
            canonical_two_point(problem).expect("mixed region implies a > 0 and zeta < 0");
        CompleteInfoEquilibrium::MixedMoments {
            mean: kappa,
            variance: -zeta,
            representation,
            payoff: 0.5 - problem.theta() * kappa,
        }
    }
}

/// The canonical minimal-support representation of the mixed moments.
///
/// Symmetric branch for `a <= 2 b^2 / (c - theta)`, endpoint branch above;
/// the two coincide at the switch point, which is tagged `Symmetric`.
pub fn canonical_two_point(problem: &CompleteInfoProblem) -> Result<TwoPointRepresentation> {
    let tech = problem.tech();
    let (a, b) = (tech.a(), tech.b());
    if a <= 0.0 {
        return Err(Error::invalid(format!(
            "two-point representations exist only in the mixed region (a > 0), got a = {a}"
        )));
    }
    let zeta = problem.zeta()?;
    if zeta >= 0.0 {
        return Err(Error::invalid(format!(
            "two-point representations require zeta < 0, got zeta = {zeta}"
        )));
    }
    let surplus = problem.surplus();
    let kappa = b / a;
    let s = (-zeta).sqrt();
    if a <= 2.0 * b * b / surplus {
        Ok(TwoPointRepresentation {
            low: (kappa - s).max(0.0),
            high: kappa + s,
            p_low: 0.5,
            p_high: 0.5,
            branch: Branch::Symmetric,
        })
    } else {
        let p = b * b / (a * surplus);
        Ok(TwoPointRepresentation {
            low: 0.0,
            high: surplus / b,
            p_low: 1.0 - p,
            p_high: p,
            branch: Branch::Endpoint,
        })
    }
}

/// Whether the equilibrium payoff is nonnegative, i.e. whether playing the
/// contest beats dropping to zero effort.
pub fn participation_check(_problem: &CompleteInfoProblem, eq: &CompleteInfoEquilibrium) -> bool {
    eq.payoff() >= 0.0
}

/// Endpoint-branch admissibility threshold for `a`. Errors with
/// [`Error::Inapplicable`] when its radicand is negative (the criterion
/// presumes `b >= 2 theta (c - theta)`).
pub fn a_bar_m(problem: &CompleteInfoProblem) -> Result<f64> {
    let tech = problem.tech();
    let (b, c) = (tech.b(), tech.c());
    let theta = problem.theta();
    let radicand = b * (b - 2.0 * c * theta + 2.0 * theta * theta);
    if radicand < 0.0 {
        return Err(Error::Inapplicable(format!(
            "endpoint threshold undefined: b (b - 2 c theta + 2 theta^2) = {radicand} < 0"
        )));
    }
    let surplus = c - theta;
    Ok(
        (b + c * c - 3.0 * c * theta + 2.0 * theta * theta + radicand.sqrt()) * b * b
            / (surplus * surplus * surplus),
    )
}

/// Branch-specific sufficient conditions for the representation to be an
/// equilibrium of the clamped contest.
///
/// Symmetric branch: the raw probability must stay nonnegative at the two
/// worst deviation/support pairs, `P(0, kappa - s)` and `P(xbar, kappa + s)`
/// with `xbar = max(0, kappa - theta / (2 a s))`. Endpoint branch:
/// `a <= a_bar_m`, reported `Inapplicable` when that threshold's radicand is
/// negative.
pub fn branch_admissibility(
    problem: &CompleteInfoProblem,
    rep: &TwoPointRepresentation,
) -> Criterion {
    let tech = problem.tech();
    let a = tech.a();
    match rep.branch {
        Branch::Symmetric => {
            let kappa = tech.b() / a;
            let s = match problem.s() {
                Ok(s) => s,
                Err(_) => return Criterion::Inapplicable,
            };
            let xbar = (kappa - problem.theta() / (2.0 * a * s)).max(0.0);
            let low_edge = problem.raw_p(0.0, (kappa - s).max(0.0));
            let high_edge = problem.raw_p(xbar, kappa + s);
            if low_edge >= 0.0 && high_edge >= 0.0 {
                Criterion::Satisfied
            } else {
                Criterion::Violated
            }
        }
        Branch::Endpoint => match a_bar_m(problem) {
            Ok(limit) => {
                if a <= limit {
                    Criterion::Satisfied
                } else {
                    Criterion::Violated
                }
            }
            Err(_) => Criterion::Inapplicable,
        },
    }
}

/// Conservative primitive conditions under which the canonical family is an
/// equilibrium of the clamped game: `theta < c <= 2 theta`, `b >= c^2 / 2`,
/// and `a` inside the mixed region up to the endpoint threshold.
pub fn simple_sufficient_check(problem: &CompleteInfoProblem) -> bool {
    let tech = problem.tech();
    let (a, b, c) = (tech.a(), tech.b(), tech.c());
    let theta = problem.theta();
    if !(theta < c && c <= 2.0 * theta && b >= c * c / 2.0) {
        return false;
    }
    if a <= 0.0 {
        return false;
    }
    match problem.zeta() {
        Ok(zeta) if zeta < 0.0 => match a_bar_m(problem) {
            Ok(limit) => a <= limit,
            Err(_) => false,
        },
        _ => false,
    }
}

/// Support-interiority check: whether the representation's support lies
/// strictly inside the admissible domain, so small deviations never trigger
/// the clamp. Symmetric branch: `s < 1 / (4 theta)`; endpoint branch:
/// `b > 2 theta (c - theta)`.
pub fn local_support_check(problem: &CompleteInfoProblem, rep: &TwoPointRepresentation) -> bool {
    let theta = problem.theta();
    match rep.branch {
        Branch::Symmetric => match problem.s() {
            Ok(s) => s < 1.0 / (4.0 * theta),
            Err(_) => false,
        },
        Branch::Endpoint => problem.tech().b() > 2.0 * theta * problem.surplus(),
    }
}

/// Interior best response to a pure opponent effort `y`:
/// `(a y^2 - (c - theta)) / (2 (a y - b))`, defined when `a y < b`.
/// Absence (`None`) means the interior branch does not exist there.
pub fn best_response_interior(problem: &CompleteInfoProblem, y: f64) -> Option<f64> {
    let tech = problem.tech();
    let (a, b) = (tech.a(), tech.b());
    if a * y >= b {
        return None;
    }
    Some((a * y * y - problem.surplus()) / (2.0 * (a * y - b)))
}

/// Second derivative of the interior best response,
/// `a (b^2 - a (c - theta)) / (a y - b)^3`; its sign is the branch's
/// curvature (convex under empowerment, flipping at `zeta = 0` under
/// suppression).
pub fn best_response_curvature(problem: &CompleteInfoProblem, y: f64) -> Option<f64> {
    let tech = problem.tech();
    let (a, b) = (tech.a(), tech.b());
    if a * y >= b {
        return None;
    }
    let denom = a * y - b;
    Some(a * (b * b - a * problem.surplus()) / (denom * denom * denom))
}

/// Regime labels along an effort curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompleteRegime {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffortCurvePoint {
    pub a: f64,
    pub total_effort: f64,
    pub regime: CompleteRegime,
}

/// Total expected equilibrium effort sampled on a grid of feedback values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffortCurve {
    pub points: Vec<EffortCurvePoint>,
    /// Index of the grid maximum (smallest `a` on exact ties).
    pub argmax: usize,
    /// Closed-form peak location `b^2 / (c - theta)`, the `zeta = 0`
    /// boundary.
    pub peak_a: f64,
}

/// Total expected effort `2 x*` on the pure region and `2 b / a` on the
/// mixed region, per grid point.
pub fn effort_curve(b: f64, c: f64, theta: f64, a_grid: &[f64]) -> Result<EffortCurve> {
    if a_grid.is_empty() {
        return Err(Error::invalid("effort curve needs a nonempty grid"));
    }
    let mut points = Vec::with_capacity(a_grid.len());
    for &a in a_grid {
        let problem = CompleteInfoProblem::new(ContestTechnology::new(a, b, c)?, theta)?;
        let point = match solve_complete(&problem) {
            CompleteInfoEquilibrium::PureSymmetric { effort, .. } => EffortCurvePoint {
                a,
                total_effort: 2.0 * effort,
                regime: CompleteRegime::Pure,
            },
            CompleteInfoEquilibrium::MixedMoments { mean, .. } => EffortCurvePoint {
                a,
                total_effort: 2.0 * mean,
                regime: CompleteRegime::Mixed,
            },
        };
        points.push(point);
    }
    let mut argmax = 0;
    for (i, p) in points.iter().enumerate().skip(1) {
        let best = &points[argmax];
        if p.total_effort > best.total_effort
            || (p.total_effort == best.total_effort && p.a < best.a)
        {
            argmax = i;
        }
    }
    Ok(EffortCurve { points, argmax, peak_a: b * b / (c - theta) })
}

/// Clamped-payoff gain of a fixed deviation against a two-point opponent,
/// relative to the mixed payoff `1/2 - theta kappa`. A strictly positive
/// gain certifies that the representation fails in the clamped contest.
pub fn failure_deviation_gain(
    problem: &CompleteInfoProblem,
    rep: &TwoPointRepresentation,
    deviation: f64,
) -> Result<f64> {
    if !(deviation >= 0.0) {
        return Err(Error::invalid(format!("deviation must be nonnegative, got {deviation}")));
    }
    let kappa = problem.kappa()?;
    let mut clipped = 0.0;
    for (point, prob) in rep.points() {
        clipped += prob
            * problem
                .tech()
                .truncated_probability(EffortProfile::new(deviation, point)?);
    }
    Ok(clipped - problem.theta() * deviation - (0.5 - problem.theta() * kappa))
}

/// Result of scanning the `x = lambda / a` deviation family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FailureScan {
    pub best_lambda: f64,
    pub best_deviation: f64,
    pub max_gain: f64,
}

/// Scan deviations `x = lambda / a` over `lambda` in `(b, 1000 b]` and report
/// the most profitable one.
pub fn failure_scan(problem: &CompleteInfoProblem, rep: &TwoPointRepresentation) -> Result<FailureScan> {
    let a = problem.tech().a();
    if a <= 0.0 {
        return Err(Error::invalid("failure scan applies to the mixed region (a > 0)"));
    }
    let b = problem.tech().b();
    let n = 600;
    let mut best = FailureScan { best_lambda: f64::NAN, best_deviation: f64::NAN, max_gain: f64::NEG_INFINITY };
    for k in 1..=n {
        let lambda = b * 1000f64.powf(k as f64 / n as f64);
        let deviation = lambda / a;
        let gain = failure_deviation_gain(problem, rep, deviation)?;
        if gain > best.max_gain {
            best = FailureScan { best_lambda: lambda, best_deviation: deviation, max_gain: gain };
        }
    }
    Ok(best)
}
