//! IID cost priors and their moment machinery.
//!
//! A prior lives on a support `[alpha, beta]` strictly inside `(0, c)`.
//! Besides ordinary moments, the Bayesian solvers need the lower partial
//! moments `F(t) = Pr(theta < t)`, `A(t) = E[(t - theta)_+]`,
//! `B(t) = E[(t - theta)_+^2]`, and the combination
//! `D(t) = B(t) + 2 (c - t) A(t)` that governs the dropout cutoff.
//!
//! Beta-mixture partial moments are evaluated through the regularized
//! incomplete beta function: with `u` the cutoff normalized to `[0, 1]` and
//! `I_{r}(u) = B_u(p + r, q) / B(p, q)`, each component contributes
//! `F = I_0(u)`, `A = u I_0(u) - I_1(u)`, `B = u^2 I_0(u) - 2 u I_1(u) + I_2(u)`
//! on the unit scale, rescaled to the actual support afterwards.

use serde::{Deserialize, Serialize};

use crate::numeric::reg_inc_beta;
use crate::{Error, Result};

const WEIGHT_TOL: f64 = 1e-12;

/// One beta-mixture component: a weight and the `(p, q)` shape pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaComponent {
    pub weight: f64,
    pub p: f64,
    pub q: f64,
}

/// An IID prior over marginal costs.
///
/// Serialized with a `kind` tag so distribution files read
/// `{"kind": "uniform", "alpha": ..., "beta": ...}` and so on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TypeDistribution {
    /// All mass at a single cost.
    Degenerate { value: f64 },
    /// Finitely many atoms `(theta_i, weight_i)`.
    Discrete { atoms: Vec<(f64, f64)> },
    /// Uniform on `[alpha, beta]`.
    Uniform { alpha: f64, beta: f64 },
    /// `theta = alpha + (beta - alpha) Z` with `Z` a beta mixture on `[0, 1]`.
    #[serde(rename = "beta_mixture")]
    ShiftedBetaMixture {
        alpha: f64,
        beta: f64,
        components: Vec<BetaComponent>,
    },
}

/// Ordinary moments of a prior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub m1: f64,
    pub m2: f64,
    pub variance: f64,
}

impl Moments {
    /// Baseline surplus `Delta = c - M_1`.
    pub fn delta(&self, c: f64) -> f64 {
        c - self.m1
    }
}

/// Lower partial moments at a cutoff `t`, in the notation used throughout:
/// `f = Pr(theta < t)`, `a = E[(t - theta)_+]`, `b = E[(t - theta)_+^2]`,
/// and `d = b + 2 (c - t) a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerPartialMoments {
    pub t: f64,
    pub f: f64,
    pub a: f64,
    pub b: f64,
    pub d: f64,
}

impl TypeDistribution {
    pub fn degenerate(value: f64) -> Result<Self> {
        let d = TypeDistribution::Degenerate { value };
        d.validate()?;
        Ok(d)
    }

    /// Atoms are sorted by cost; weights must be positive and sum to one.
    pub fn discrete(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let d = TypeDistribution::Discrete { atoms };
        d.validate()?;
        Ok(d)
    }

    pub fn uniform(alpha: f64, beta: f64) -> Result<Self> {
        let d = TypeDistribution::Uniform { alpha, beta };
        d.validate()?;
        Ok(d)
    }

    pub fn beta_mixture(alpha: f64, beta: f64, components: Vec<BetaComponent>) -> Result<Self> {
        let d = TypeDistribution::ShiftedBetaMixture { alpha, beta, components };
        d.validate()?;
        Ok(d)
    }

    /// Check the structural invariants. Deserialized values must be passed
    /// through this before use.
    pub fn validate(&self) -> Result<()> {
        match self {
            TypeDistribution::Degenerate { value } => {
                if !value.is_finite() || *value <= 0.0 {
                    return Err(Error::invalid(format!("degenerate cost must be positive, got {value}")));
                }
            }
            TypeDistribution::Discrete { atoms } => {
                if atoms.is_empty() {
                    return Err(Error::invalid("discrete prior needs at least one atom"));
                }
                let mut total = 0.0;
                for &(theta, w) in atoms {
                    if !theta.is_finite() || theta <= 0.0 {
                        return Err(Error::invalid(format!("atom cost must be positive, got {theta}")));
                    }
                    if !w.is_finite() || w <= 0.0 {
                        return Err(Error::invalid(format!("atom weight must be positive, got {w}")));
                    }
                    total += w;
                }
                if (total - 1.0).abs() > WEIGHT_TOL {
                    return Err(Error::invalid(format!("atom weights sum to {total}, not 1")));
                }
                if atoms.windows(2).any(|w| w[0].0 > w[1].0) {
                    return Err(Error::invalid("discrete atoms must be sorted by cost"));
                }
            }
            TypeDistribution::Uniform { alpha, beta } => {
                check_support(*alpha, *beta)?;
            }
            TypeDistribution::ShiftedBetaMixture { alpha, beta, components } => {
                check_support(*alpha, *beta)?;
                if components.is_empty() {
                    return Err(Error::invalid("beta mixture needs at least one component"));
                }
                let mut total = 0.0;
                for comp in components {
                    if !(comp.p > 0.0) || !(comp.q > 0.0) {
                        return Err(Error::invalid(format!(
                            "beta shape parameters must be positive, got ({}, {})",
                            comp.p, comp.q
                        )));
                    }
                    if !(comp.weight > 0.0) {
                        return Err(Error::invalid("mixture weights must be positive"));
                    }
                    total += comp.weight;
                }
                if (total - 1.0).abs() > WEIGHT_TOL {
                    return Err(Error::invalid(format!("mixture weights sum to {total}, not 1")));
                }
            }
        }
        Ok(())
    }

    /// Closed support `[min, max]` of the prior.
    pub fn support(&self) -> (f64, f64) {
        match self {
            TypeDistribution::Degenerate { value } => (*value, *value),
            TypeDistribution::Discrete { atoms } => (atoms[0].0, atoms[atoms.len() - 1].0),
            TypeDistribution::Uniform { alpha, beta }
            | TypeDistribution::ShiftedBetaMixture { alpha, beta, .. } => (*alpha, *beta),
        }
    }

    /// Whether the support lies strictly inside `(0, c)`.
    pub fn check_against_ceiling(&self, c: f64) -> Result<()> {
        let (lo, hi) = self.support();
        if lo <= 0.0 || hi >= c {
            return Err(Error::invalid(format!(
                "prior support [{lo}, {hi}] must lie strictly inside (0, {c})"
            )));
        }
        Ok(())
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, TypeDistribution::Degenerate { .. }) || self.moments().variance == 0.0
    }

    /// Atomless priors admit the dropout-threshold machinery.
    pub fn is_atomless(&self) -> bool {
        matches!(
            self,
            TypeDistribution::Uniform { .. } | TypeDistribution::ShiftedBetaMixture { .. }
        )
    }

    /// Mass located exactly at the lower support endpoint.
    pub fn atom_mass_at_lower_bound(&self) -> f64 {
        match self {
            TypeDistribution::Degenerate { .. } => 1.0,
            TypeDistribution::Discrete { atoms } => {
                let lo = atoms[0].0;
                atoms.iter().take_while(|(t, _)| *t == lo).map(|(_, w)| w).sum()
            }
            _ => 0.0,
        }
    }

    /// The prior as a finite list of atoms, when it has one.
    pub fn as_atoms(&self) -> Option<Vec<(f64, f64)>> {
        match self {
            TypeDistribution::Degenerate { value } => Some(vec![(*value, 1.0)]),
            TypeDistribution::Discrete { atoms } => Some(atoms.clone()),
            _ => None,
        }
    }

    /// Density of a continuous prior at `theta` (zero off the support);
    /// `None` for priors with atoms.
    pub fn density(&self, theta: f64) -> Option<f64> {
        match self {
            TypeDistribution::Uniform { alpha, beta } => {
                if theta < *alpha || theta > *beta {
                    Some(0.0)
                } else {
                    Some(1.0 / (beta - alpha))
                }
            }
            TypeDistribution::ShiftedBetaMixture { alpha, beta, components } => {
                if theta < *alpha || theta > *beta {
                    return Some(0.0);
                }
                let h = beta - alpha;
                let z = ((theta - alpha) / h).clamp(0.0, 1.0);
                let mut dens = 0.0;
                for comp in components {
                    let ln_b = crate::numeric::ln_beta(comp.p, comp.q);
                    // Endpoint care: z^0 at z = 0 etc. handled by ln limits.
                    let ln_z = if z == 0.0 {
                        if comp.p < 1.0 {
                            return Some(f64::INFINITY);
                        }
                        if comp.p > 1.0 { f64::NEG_INFINITY } else { 0.0 }
                    } else {
                        (comp.p - 1.0) * z.ln()
                    };
                    let ln_1z = if z == 1.0 {
                        if comp.q < 1.0 {
                            return Some(f64::INFINITY);
                        }
                        if comp.q > 1.0 { f64::NEG_INFINITY } else { 0.0 }
                    } else {
                        (comp.q - 1.0) * (1.0 - z).ln()
                    };
                    dens += comp.weight * (ln_z + ln_1z - ln_b).exp();
                }
                Some(dens / h)
            }
            _ => None,
        }
    }

    /// First and second ordinary moments, in closed form for every kind.
    pub fn moments(&self) -> Moments {
        match self {
            TypeDistribution::Degenerate { value } => Moments {
                m1: *value,
                m2: value * value,
                variance: 0.0,
            },
            TypeDistribution::Discrete { atoms } => {
                let m1: f64 = atoms.iter().map(|(t, w)| t * w).sum();
                let m2: f64 = atoms.iter().map(|(t, w)| t * t * w).sum();
                Moments { m1, m2, variance: (m2 - m1 * m1).max(0.0) }
            }
            TypeDistribution::Uniform { alpha, beta } => {
                let m1 = 0.5 * (alpha + beta);
                let h = beta - alpha;
                let variance = h * h / 12.0;
                Moments { m1, m2: m1 * m1 + variance, variance }
            }
            TypeDistribution::ShiftedBetaMixture { alpha, beta, components } => {
                let h = beta - alpha;
                let mut ez = 0.0;
                let mut ez2 = 0.0;
                for comp in components {
                    let s = comp.p + comp.q;
                    ez += comp.weight * comp.p / s;
                    ez2 += comp.weight * comp.p * (comp.p + 1.0) / (s * (s + 1.0));
                }
                let m1 = alpha + h * ez;
                let m2 = alpha * alpha + 2.0 * alpha * h * ez + h * h * ez2;
                Moments { m1, m2, variance: (m2 - m1 * m1).max(0.0) }
            }
        }
    }

    /// Lower partial moments at cutoff `t`, with `c` the contest's baseline
    /// return (it enters only through `d`). Requires `alpha <= t <= c`.
    ///
    /// For priors with atoms, `f` is the strictly-below mass `Pr(theta < t)`;
    /// any atom sitting exactly at the lower endpoint is reported separately
    /// by [`TypeDistribution::atom_mass_at_lower_bound`].
    pub fn lower_partial(&self, t: f64, c: f64) -> Result<LowerPartialMoments> {
        let (lo, hi) = self.support();
        if !(t >= lo && t <= c) {
            return Err(Error::invalid(format!(
                "cutoff {t} outside [{lo}, {c}]"
            )));
        }
        let (f, a, b) = if t >= hi {
            // The positive part is inactive: full-support closed forms.
            let m = self.moments();
            (1.0, t - m.m1, (t - m.m1) * (t - m.m1) + m.variance)
        } else {
            match self {
                TypeDistribution::Degenerate { value } => {
                    let gap = (t - value).max(0.0);
                    (if t > *value { 1.0 } else { 0.0 }, gap, gap * gap)
                }
                TypeDistribution::Discrete { atoms } => {
                    let mut f = 0.0;
                    let mut a = 0.0;
                    let mut b = 0.0;
                    for &(theta, w) in atoms {
                        if theta < t {
                            f += w;
                            let gap = t - theta;
                            a += w * gap;
                            b += w * gap * gap;
                        }
                    }
                    (f, a, b)
                }
                TypeDistribution::Uniform { alpha, beta } => {
                    let h = beta - alpha;
                    let s = t - alpha;
                    (s / h, s * s / (2.0 * h), s * s * s / (3.0 * h))
                }
                TypeDistribution::ShiftedBetaMixture { alpha, beta, components } => {
                    let h = beta - alpha;
                    let u = ((t - alpha) / h).clamp(0.0, 1.0);
                    let mut fz = 0.0;
                    let mut az = 0.0;
                    let mut bz = 0.0;
                    for comp in components {
                        let s = comp.p + comp.q;
                        let ez = comp.p / s;
                        let ez2 = comp.p * (comp.p + 1.0) / (s * (s + 1.0));
                        let i0 = reg_inc_beta(comp.p, comp.q, u)?;
                        let i1 = ez * reg_inc_beta(comp.p + 1.0, comp.q, u)?;
                        let i2 = ez2 * reg_inc_beta(comp.p + 2.0, comp.q, u)?;
                        fz += comp.weight * i0;
                        az += comp.weight * (u * i0 - i1);
                        bz += comp.weight * (u * u * i0 - 2.0 * u * i1 + i2);
                    }
                    (fz, h * az.max(0.0), h * h * bz.max(0.0))
                }
            }
        };
        Ok(LowerPartialMoments { t, f, a, b, d: b + 2.0 * (c - t) * a })
    }
}

fn check_support(alpha: f64, beta: f64) -> Result<()> {
    if !alpha.is_finite() || !beta.is_finite() || alpha <= 0.0 || beta <= alpha {
        return Err(Error::invalid(format!(
            "support must satisfy 0 < alpha < beta, got [{alpha}, {beta}]"
        )));
    }
    Ok(())
}

/// A disclosure policy over a player's own cost.
///
/// Garbling matrices are row-stochastic maps from prior atoms to signal
/// labels; the two closed-form endpoints apply to any prior kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignalStructure {
    NoDisclosure,
    FullDisclosure,
    Garbling { matrix: Vec<Vec<f64>> },
}

/// Distribution of posterior-mean costs induced by a signal.
///
/// No disclosure collapses the prior to its mean; full disclosure returns it
/// unchanged; a garbling of a discrete prior yields the discrete
/// distribution of `E[theta | signal]` under the marginal signal weights.
/// Signals with identical posterior means are kept as distinct atoms.
pub fn posterior_mean_distribution(
    dist: &TypeDistribution,
    signal: &SignalStructure,
) -> Result<TypeDistribution> {
    match signal {
        SignalStructure::NoDisclosure => TypeDistribution::degenerate(dist.moments().m1),
        SignalStructure::FullDisclosure => Ok(dist.clone()),
        SignalStructure::Garbling { matrix } => {
            let atoms = match dist {
                TypeDistribution::Discrete { atoms } => atoms,
                _ => {
                    return Err(Error::invalid(
                        "garbling matrices apply to discrete priors only",
                    ))
                }
            };
            if matrix.len() != atoms.len() {
                return Err(Error::invalid(format!(
                    "garbling has {} rows for {} atoms",
                    matrix.len(),
                    atoms.len()
                )));
            }
            let n_signals = matrix[0].len();
            if n_signals == 0 || matrix.iter().any(|row| row.len() != n_signals) {
                return Err(Error::invalid("garbling rows must share a positive length"));
            }
            for row in matrix {
                if row.iter().any(|&g| !(0.0..=1.0).contains(&g)) {
                    return Err(Error::invalid("garbling entries must lie in [0, 1]"));
                }
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > WEIGHT_TOL {
                    return Err(Error::invalid(format!("garbling row sums to {sum}, not 1")));
                }
            }
            let mut posterior = Vec::with_capacity(n_signals);
            for s in 0..n_signals {
                let weight: f64 = atoms
                    .iter()
                    .zip(matrix)
                    .map(|((_, w), row)| w * row[s])
                    .sum();
                if weight <= 0.0 {
                    continue; // signal never sent
                }
                let mean: f64 = atoms
                    .iter()
                    .zip(matrix)
                    .map(|((theta, w), row)| theta * w * row[s])
                    .sum::<f64>()
                    / weight;
                posterior.push((mean, weight));
            }
            TypeDistribution::discrete(posterior)
        }
    }
}
