//! Symmetric Bayesian equilibria under IID private costs.
//!
//! Three regimes, in the order the solver tries them:
//!
//! 1. **Fully active affine.** In the relaxation ignoring `x >= 0` the
//!    unique symmetric equilibrium is affine, `x(theta) = k theta + d` with
//!    `k < 0`. If that rule is nonnegative at the highest cost, it is the
//!    equilibrium of the nonnegative-effort game too. This always holds for
//!    `a <= 0`.
//! 2. **Boundary atom.** With an atom of mass `m` at the lowest cost and
//!    `a m (c - alpha) >= b^2`, only the lowest type is active and it
//!    randomizes on `{0, (c - alpha) / b}`.
//! 3. **Cutoff-affine.** Otherwise active types play
//!    `x(theta) = lambda (t - theta)_+` where the cutoff solves
//!    `H(t) = 2 (c - t) A(t) + B(t) - 2 b sqrt((c - t) B(t) / a) = 0`,
//!    with `A`, `B` the prior's lower partial moments; types above `t` drop
//!    out.
//!
//! All closed forms are evaluated through the cancellation-free
//! `S = b^2 - a Delta`, `T = sqrt(S^2 + sigma^2 a^2)` parametrization, which
//! passes continuously through `a = 0`.

use serde::Serialize;

use crate::csf::ContestTechnology;
use crate::dist::TypeDistribution;
use crate::numeric::{bisect, scan_sign_changes};
use crate::{Error, Result};

/// The fully active affine rule `x(theta) = k theta + d` and its effort
/// moments. `kappa`, `zeta`, `omega` are the derived ratios `b/a`,
/// `(b^2 - a Delta)/a^2`, `sigma^2/a^2`; they are `None` at `a = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineBne {
    pub k: f64,
    pub d: f64,
    pub e1: f64,
    pub variance: f64,
    pub kappa: Option<f64>,
    pub zeta: Option<f64>,
    pub omega: Option<f64>,
}

impl AffineBne {
    /// Equilibrium effort of type `theta` (may be negative outside the
    /// fully active region; the solver checks that before returning one).
    pub fn effort(&self, theta: f64) -> f64 {
        self.k * theta + self.d
    }

    /// Effort support `[low, high]` on a type support `[alpha, beta]`.
    pub fn effort_support(&self, alpha: f64, beta: f64) -> (f64, f64) {
        (self.effort(beta), self.effort(alpha))
    }
}

/// Cutoff-affine equilibrium `x(theta) = lambda (t - theta)_+`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffAffine {
    pub lambda: f64,
    pub t: f64,
    /// Unconditional effort moments (dropouts count as zeros).
    pub e1: f64,
    pub e2: f64,
    pub dropout_rate: f64,
    /// Whether the cutoff equation showed sign changes beyond the first
    /// bracketed root; the returned cutoff is always the first one above
    /// the lower support end.
    pub extra_roots: bool,
}

impl CutoffAffine {
    pub fn effort(&self, theta: f64) -> f64 {
        self.lambda * (self.t - theta).max(0.0)
    }
}

/// Exceptional equilibrium with an atom at the lowest cost: type `alpha`
/// randomizes on `{0, x_high}` with probability `p` on the high point, all
/// other types sit out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryAtom {
    pub p: f64,
    pub x_high: f64,
    pub atom_mass: f64,
}

impl BoundaryAtom {
    /// Opponent-effort atoms induced by this equilibrium.
    pub fn effort_atoms(&self) -> [(f64, f64); 2] {
        [
            (0.0, 1.0 - self.atom_mass * self.p),
            (self.x_high, self.atom_mass * self.p),
        ]
    }
}

/// Solution of the nonnegative-effort Bayesian game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BayesEquilibrium {
    FullyActive(AffineBne),
    Cutoff(CutoffAffine),
    Boundary(BoundaryAtom),
}

impl BayesEquilibrium {
    /// Unconditional expected effort.
    pub fn e1(&self) -> f64 {
        match self {
            BayesEquilibrium::FullyActive(eq) => eq.e1,
            BayesEquilibrium::Cutoff(eq) => eq.e1,
            BayesEquilibrium::Boundary(eq) => eq.atom_mass * eq.p * eq.x_high,
        }
    }

    pub fn dropout_rate(&self) -> f64 {
        match self {
            BayesEquilibrium::FullyActive(_) => 0.0,
            BayesEquilibrium::Cutoff(eq) => eq.dropout_rate,
            // Only the low atom is ever active, and it mixes with zero.
            BayesEquilibrium::Boundary(eq) => 1.0 - eq.atom_mass * eq.p,
        }
    }
}

fn validated_moments(
    tech: &ContestTechnology,
    dist: &TypeDistribution,
) -> Result<crate::dist::Moments> {
    dist.validate()?;
    dist.check_against_ceiling(tech.c())?;
    Ok(dist.moments())
}

/// The affine benchmark rule for a prior with moments `(M1, sigma^2)`.
///
/// Nondegenerate uncertainty is required when `a != 0`; degenerate priors
/// belong to the complete-information solver. At `a = 0` the rule is the
/// dominant strategy `x(theta) = (c - theta) / (2b)`.
pub fn affine_bne(tech: &ContestTechnology, dist: &TypeDistribution) -> Result<AffineBne> {
    let m = validated_moments(tech, dist)?;
    let (a, b, c) = (tech.a(), tech.b(), tech.c());
    if a != 0.0 && m.variance == 0.0 {
        return Err(Error::DegeneratePrior);
    }
    let delta = c - m.m1;
    let s = b * b - a * delta;
    let t = (s * s + m.variance * a * a).sqrt();
    let half_sum = 0.5 * (s + t); // equals the squared radical term
    let k = -1.0 / (2.0 * half_sum).sqrt();
    let variance = if m.variance == 0.0 { 0.0 } else { m.variance / (2.0 * (s + t)) };
    let e1 = (delta - a * variance) / (b + half_sum.sqrt());
    let d = e1 - k * m.m1;
    let (kappa, zeta, omega) = if a == 0.0 {
        (None, None, None)
    } else {
        (Some(b / a), Some(s / (a * a)), Some(m.variance / (a * a)))
    };
    Ok(AffineBne { k, d, e1, variance, kappa, zeta, omega })
}

/// Solve the nonnegative-effort game, picking the regime as documented at
/// the module level.
pub fn solve_bayes(tech: &ContestTechnology, dist: &TypeDistribution) -> Result<BayesEquilibrium> {
    let m = validated_moments(tech, dist)?;
    let (a, b, c) = (tech.a(), tech.b(), tech.c());
    if a != 0.0 && m.variance == 0.0 {
        return Err(Error::DegeneratePrior);
    }
    let (alpha, beta) = dist.support();

    if a <= 0.0 {
        // Empowerment and neutrality never hit the nonnegativity bound.
        return Ok(BayesEquilibrium::FullyActive(affine_bne(tech, dist)?));
    }

    let affine = affine_bne(tech, dist)?;
    if affine.effort(beta) >= 0.0 {
        return Ok(BayesEquilibrium::FullyActive(affine));
    }

    let atom = dist.atom_mass_at_lower_bound();
    if atom > 0.0 && a * atom * (c - alpha) >= b * b {
        return Ok(BayesEquilibrium::Boundary(BoundaryAtom {
            p: b * b / (a * atom * (c - alpha)),
            x_high: (c - alpha) / b,
            atom_mass: atom,
        }));
    }

    // Cutoff equation H(t) = 0. H is negative just above alpha and
    // H(c) = B(c) > 0, so a bracketed root exists.
    let h = |t: f64| -> f64 {
        let lp = dist.lower_partial(t, c).expect("t inside [alpha, c]");
        2.0 * (c - t) * lp.a + lp.b - 2.0 * b * ((c - t) * lp.b / a).sqrt()
    };
    // Start the scan where the prior has seen some mass; tiny leading
    // intervals can underflow both partial moments to zero.
    let mut lo = alpha + (c - alpha) * 1e-3;
    while h(lo) >= 0.0 {
        lo = alpha + (lo - alpha) * 0.5;
        if lo - alpha < (c - alpha) * 1e-14 {
            return Err(Error::RootFind(
                "cutoff equation has no negative segment above alpha".into(),
            ));
        }
    }
    let brackets = scan_sign_changes(h, lo, c, 2000);
    let Some(&(blo, bhi)) = brackets.first() else {
        return Err(Error::RootFind("cutoff equation shows no sign change".into()));
    };
    let t = if blo == bhi { blo } else { bisect(h, blo, bhi, 1e-15 * (c - alpha))? };
    let lp = dist.lower_partial(t, c)?;
    let lambda = ((c - t) / (a * lp.b)).sqrt();
    let cutoff = CutoffAffine {
        lambda,
        t,
        e1: lambda * lp.a,
        e2: lambda * lambda * lp.b,
        dropout_rate: if t >= beta { 0.0 } else { 1.0 - lp.f },
        extra_roots: brackets.len() > 1,
    };
    Ok(BayesEquilibrium::Cutoff(cutoff))
}

/// Suppression level at which dropout starts: `a_D = a_F(beta)` where
/// `a_F(t) = 4 b^2 (c - t) B(t) / D(t)^2`. Defined for atomless priors.
pub fn dropout_threshold(b: f64, c: f64, dist: &TypeDistribution) -> Result<f64> {
    if !(b > 0.0) || !(c > 0.0) {
        return Err(Error::invalid("dropout threshold needs b > 0 and c > 0"));
    }
    if !dist.is_atomless() {
        return Err(Error::invalid(
            "dropout threshold is defined for atomless priors only",
        ));
    }
    dist.validate()?;
    dist.check_against_ceiling(c)?;
    let (_, beta) = dist.support();
    let lp = dist.lower_partial(beta, c)?;
    Ok(4.0 * b * b * (c - beta) * lp.b / (lp.d * lp.d))
}

/// The partially active branch map `a_F(t)` at a given cutoff.
pub fn branch_a_of_cutoff(b: f64, c: f64, dist: &TypeDistribution, t: f64) -> Result<f64> {
    let lp = dist.lower_partial(t, c)?;
    if lp.d <= 0.0 {
        return Err(Error::invalid(format!("cutoff {t} carries no prior mass")));
    }
    Ok(4.0 * b * b * (c - t) * lp.b / (lp.d * lp.d))
}

/// Cutoff solution obtained by inverting the strictly decreasing branch map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffSolution {
    pub t: f64,
    pub lambda: f64,
    pub dropout_rate: f64,
}

/// Invert `a_F(t) = a` on `(alpha, beta)` for `a` above the dropout
/// threshold (atomless priors).
pub fn cutoff_map(b: f64, c: f64, dist: &TypeDistribution, a: f64) -> Result<CutoffSolution> {
    let a_d = dropout_threshold(b, c, dist)?;
    if !(a > a_d) {
        return Err(Error::invalid(format!(
            "a = {a} is at or below the dropout threshold {a_d}; the equilibrium is fully active"
        )));
    }
    let (alpha, beta) = dist.support();
    let g = |t: f64| match branch_a_of_cutoff(b, c, dist, t) {
        Ok(v) => v - a,
        Err(_) => f64::NAN,
    };
    // Walk toward alpha until the branch map exceeds a.
    let mut lo = alpha + (beta - alpha) * 0.5;
    loop {
        let v = g(lo);
        if v.is_finite() && v > 0.0 {
            break;
        }
        lo = alpha + (lo - alpha) * 0.5;
        if lo - alpha < (beta - alpha) * 1e-13 {
            return Err(Error::RootFind(format!(
                "could not bracket the cutoff for a = {a}"
            )));
        }
    }
    let t = bisect(g, lo, beta, 1e-15 * (beta - alpha))?;
    let residual = branch_a_of_cutoff(b, c, dist, t)? - a;
    if residual.abs() > 1e-10 * a.abs() {
        return Err(Error::RootFind(format!(
            "cutoff inversion residual {residual} too large for a = {a}"
        )));
    }
    let lp = dist.lower_partial(t, c)?;
    Ok(CutoffSolution {
        t,
        lambda: lp.d / (2.0 * b * lp.b),
        dropout_rate: 1.0 - lp.f,
    })
}

/// Conservative truncation criterion for a fully active affine rule: the
/// four inequalities `x_high <= 1/alpha`, `c^2 <= 2b`, `a <= b alpha`, and
/// `c alpha^2 - 2 b alpha + a >= 0`. Holding jointly, they certify the rule
/// as an equilibrium of the literal clamped contest (they force `a > 0`, so
/// this variant only ever certifies suppression).
pub fn truncation_check_simple(
    tech: &ContestTechnology,
    alpha: f64,
    bne: &AffineBne,
) -> bool {
    let (a, b, c) = (tech.a(), tech.b(), tech.c());
    let x_high = bne.effort(alpha);
    x_high <= 1.0 / alpha
        && c * c <= 2.0 * b
        && a <= b * alpha
        && c * alpha * alpha - 2.0 * b * alpha + a >= 0.0
}

/// Support-based truncation criterion: replaces the global `c^2 <= 2b` with
/// the minimum of the left-edge quadratic `1/2 - c y + b y^2` over the
/// actual effort support (its minimizer `c / (2b)` clamped to the support).
/// The remaining three inequalities are unchanged.
pub fn truncation_check_support(
    tech: &ContestTechnology,
    alpha: f64,
    beta: f64,
    bne: &AffineBne,
) -> bool {
    let (a, b, c) = (tech.a(), tech.b(), tech.c());
    let (x_low, x_high) = bne.effort_support(alpha, beta);
    if x_low < 0.0 {
        return false; // not fully active, criterion does not apply
    }
    let y_star = (c / (2.0 * b)).clamp(x_low, x_high);
    let edge_min = 0.5 - c * y_star + b * y_star * y_star;
    x_high <= 1.0 / alpha
        && edge_min >= 0.0
        && a <= b * alpha
        && c * alpha * alpha - 2.0 * b * alpha + a >= 0.0
}

/// On-support interiority at `a = 0`: every raw probability between two
/// equilibrium efforts is strictly inside `(0, 1)` iff
/// `beta^2 - alpha^2 < 2b`.
pub fn neutral_support_interior(b: f64, alpha: f64, beta: f64) -> bool {
    beta * beta - alpha * alpha < 2.0 * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete::{solve_complete, CompleteInfoEquilibrium, CompleteInfoProblem};
    use crate::dist::BetaComponent;

    fn tech(a: f64, b: f64, c: f64) -> ContestTechnology {
        ContestTechnology::new(a, b, c).unwrap()
    }

    fn two_peak_mixture() -> TypeDistribution {
        TypeDistribution::beta_mixture(
            1.0,
            2.0,
            vec![
                BetaComponent { weight: 0.368754, p: 13.8700, q: 151.8686 },
                BetaComponent { weight: 0.589342, p: 90.9045, q: 74.5338 },
                BetaComponent { weight: 0.041904, p: 56.2754, q: 23.4295 },
            ],
        )
        .unwrap()
    }

    /// Moment fixed-point oracle: alternate the two equilibrium moment
    /// equations until they settle.
    fn fixed_point_oracle(a: f64, b: f64, delta: f64, sigma_sq: f64) -> Option<(f64, f64)> {
        let mut e1 = delta / (2.0 * b);
        let mut v = 0.0;
        for _ in 0..200_000 {
            let slope = a * e1 - b;
            let v_new = sigma_sq / (4.0 * slope * slope);
            let disc = b * b - a * (delta - a * v_new);
            if disc < 0.0 {
                return None;
            }
            let e1_new = if a == 0.0 {
                (delta - a * v_new) / (2.0 * b)
            } else {
                (b - disc.sqrt()) / a
            };
            if (e1_new - e1).abs() < 1e-13 && (v_new - v).abs() < 1e-13 {
                return Some((e1_new, v_new));
            }
            // Mild damping keeps the alternation from overshooting.
            e1 = 0.5 * (e1 + e1_new);
            v = 0.5 * (v + v_new);
        }
        None
    }

    #[test]
    fn affine_at_neutral_feedback() {
        let dist = TypeDistribution::uniform(0.25, 0.75).unwrap();
        let eq = affine_bne(&tech(0.0, 1.0, 1.0), &dist).unwrap();
        assert!((eq.e1 - 0.25).abs() < 1e-15);
        assert!((eq.k + 0.5).abs() < 1e-15);
        assert!((eq.d - 0.5).abs() < 1e-15);
        assert!((eq.variance - dist.moments().variance / 4.0).abs() < 1e-15);
        assert!(eq.kappa.is_none());
    }

    #[test]
    fn affine_matches_fixed_point_oracle_and_frozen_value() {
        // M1 = 1/2, sigma^2 = 1/8 via the symmetric two-atom prior.
        let spread = 0.125f64.sqrt();
        let dist =
            TypeDistribution::discrete(vec![(0.5 - spread, 0.5), (0.5 + spread, 0.5)]).unwrap();
        let eq = affine_bne(&tech(1.0, 1.0, 1.0), &dist).unwrap();
        assert!((eq.e1 - 0.2542210663689291).abs() < 1e-13, "{}", eq.e1);

        let (e1_fp, v_fp) = fixed_point_oracle(1.0, 1.0, 0.5, 0.125).unwrap();
        assert!((eq.e1 - e1_fp).abs() < 1e-11);
        assert!((eq.variance - v_fp).abs() < 1e-11);

        // Closed-form invariants in the kappa/zeta/omega parametrization.
        let (kappa, zeta, omega) =
            (eq.kappa.unwrap(), eq.zeta.unwrap(), eq.omega.unwrap());
        let radical = (zeta + (zeta * zeta + omega).sqrt()) / 2.0;
        let direct = kappa - 1.0f64.signum() * radical.sqrt();
        assert!((eq.e1 - direct).abs() < 1e-12);
        let var_direct = ((zeta * zeta + omega).sqrt() - zeta) / 2.0;
        assert!((eq.variance - var_direct).abs() < 1e-12);
        // Strict second-order condition.
        assert!(1.0 * eq.e1 < 1.0);
    }

    #[test]
    fn affine_rejects_degenerate_priors_under_feedback() {
        let dist = TypeDistribution::degenerate(0.5).unwrap();
        assert!(matches!(
            affine_bne(&tech(1.0, 1.0, 1.0), &dist),
            Err(Error::DegeneratePrior)
        ));
        // At a = 0 the dominant strategy needs no dispersion.
        let eq = affine_bne(&tech(0.0, 1.0, 1.0), &dist).unwrap();
        assert!((eq.e1 - 0.25).abs() < 1e-15);
    }

    #[test]
    fn vanishing_uncertainty_selects_complete_info_moments() {
        for (a, b, c) in [(1.0, 1.0, 1.0), (-2.0, 1.0, 1.0), (5.0, 1.0, 1.0)] {
            let spread = 1e-5; // sigma^2 = 1e-10
            let dist =
                TypeDistribution::discrete(vec![(0.5 - spread, 0.5), (0.5 + spread, 0.5)])
                    .unwrap();
            let eq = affine_bne(&tech(a, b, c), &dist).unwrap();
            let problem =
                CompleteInfoProblem::new(tech(a, b, c), 0.5).unwrap();
            match solve_complete(&problem) {
                CompleteInfoEquilibrium::PureSymmetric { effort, .. } => {
                    assert!((eq.e1 - effort).abs() < 1e-6, "a={a}: {} vs {effort}", eq.e1);
                    assert!(eq.variance < 1e-6);
                }
                CompleteInfoEquilibrium::MixedMoments { mean, variance, .. } => {
                    assert!((eq.e1 - mean).abs() < 1e-6, "a={a}: {} vs {mean}", eq.e1);
                    assert!((eq.variance - variance).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn empowerment_is_always_fully_active() {
        let dist = TypeDistribution::uniform(0.25, 0.75).unwrap();
        match solve_bayes(&tech(-1.0, 1.0, 1.0), &dist).unwrap() {
            BayesEquilibrium::FullyActive(eq) => {
                assert!(eq.effort(0.75) > 0.0);
                assert!(eq.k < 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_peak_cutoff_matches_published_row() {
        let dist = two_peak_mixture();
        let t6 = tech(46.4315598214, 6.0, 2.002930);
        match solve_bayes(&t6, &dist).unwrap() {
            BayesEquilibrium::Cutoff(eq) => {
                assert!((eq.t - 1.7703043128).abs() < 1e-9, "t = {}", eq.t);
                assert!((eq.e1 - 0.0605228910).abs() < 1e-9, "e1 = {}", eq.e1);
                assert!((eq.dropout_rate - (1.0 - 0.9958450796)).abs() < 1e-8);
                // Fixed-point residuals.
                let lp = dist.lower_partial(eq.t, 2.002930).unwrap();
                let r1 = 2.0 * 46.4315598214 * lp.a * eq.lambda * eq.lambda
                    - 2.0 * 6.0 * eq.lambda
                    + 1.0;
                let r2 = eq.t - (2.002930 - 46.4315598214 * lp.b * eq.lambda * eq.lambda);
                assert!(r1.abs() < 1e-10, "r1 = {r1}");
                assert!(r2.abs() < 1e-10, "r2 = {r2}");
                assert!((eq.e1 - eq.lambda * lp.a).abs() < 1e-14);
                assert!((eq.e2 - eq.lambda * eq.lambda * lp.b).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn boundary_atom_at_the_moment_knife_edge() {
        // a m (c - alpha) = 2 b^2 gives p = 1/2.
        let dist = TypeDistribution::discrete(vec![(0.2, 0.5), (0.6, 0.5)]).unwrap();
        let t5 = tech(5.0, 1.0, 1.0);
        match solve_bayes(&t5, &dist).unwrap() {
            BayesEquilibrium::Boundary(eq) => {
                assert!((eq.p - 0.5).abs() < 1e-14);
                assert!((eq.x_high - 0.8).abs() < 1e-14);
                assert_eq!(eq.atom_mass, 0.5);
                // Forced moments: E1 = b/a, E2 = (c - alpha)/a.
                let e1: f64 = eq.effort_atoms().iter().map(|(x, w)| x * w).sum();
                let e2: f64 = eq.effort_atoms().iter().map(|(x, w)| x * x * w).sum();
                assert!((e1 - 0.2).abs() < 1e-14);
                assert!((e2 - 0.16).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn discrete_prior_can_enter_the_cutoff_regime() {
        // Between full activity and the boundary-atom onset the equilibrium
        // is cutoff-affine with only the low atom active.
        let spread = 0.125f64.sqrt();
        let dist =
            TypeDistribution::discrete(vec![(0.5 - spread, 0.5), (0.5 + spread, 0.5)]).unwrap();
        let t = tech(3.0, 1.0, 1.0);
        match solve_bayes(&t, &dist).unwrap() {
            BayesEquilibrium::Cutoff(eq) => {
                assert!(eq.t > 0.5 - spread && eq.t < 0.5 + spread);
                assert!((eq.dropout_rate - 0.5).abs() < 1e-12);
                let lp = dist.lower_partial(eq.t, 1.0).unwrap();
                let r1 = 2.0 * 3.0 * lp.a * eq.lambda * eq.lambda - 2.0 * eq.lambda + 1.0;
                assert!(r1.abs() < 1e-10);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dropout_threshold_closed_form_and_errors() {
        let dist = TypeDistribution::uniform(0.5, 1.0).unwrap();
        let a_d = dropout_threshold(1.0, 1.25, &dist).unwrap();
        assert!((a_d - 1.92).abs() < 1e-12, "{a_d}");

        // Generic lower-partial route equals the closed form
        // 4 b^2 q / (3 (q + h/3)^2).
        let (b, c) = (1.7, 1.4);
        let dist = TypeDistribution::uniform(0.3, 0.9).unwrap();
        let q = c - 0.9;
        let h = 0.6;
        let closed = 4.0 * b * b * q / (3.0 * (q + h / 3.0) * (q + h / 3.0));
        assert!((dropout_threshold(b, c, &dist).unwrap() - closed).abs() < 1e-12);

        let discrete = TypeDistribution::discrete(vec![(0.5, 1.0)]).unwrap();
        assert!(dropout_threshold(1.0, 1.0, &discrete).is_err());
    }

    #[test]
    fn two_peak_dropout_threshold() {
        let a_d = dropout_threshold(6.0, 2.002930, &two_peak_mixture()).unwrap();
        assert!((a_d - 0.9561754615).abs() < 1e-9, "{a_d}");
    }

    #[test]
    fn cutoff_map_matches_published_row_and_is_monotone() {
        let dist = two_peak_mixture();
        let sol = cutoff_map(6.0, 2.002930, &dist, 95.8579278830).unwrap();
        assert!((sol.t - 1.5036802273).abs() < 1e-9, "{}", sol.t);
        assert!((sol.dropout_rate - (1.0 - 0.4385874357)).abs() < 1e-8);

        // Monotonicity: larger a, lower cutoff.
        let mut prev = f64::INFINITY;
        for a in [2.0, 5.0, 20.0, 60.0, 95.0, 120.0] {
            let t = cutoff_map(6.0, 2.002930, &dist, a).unwrap().t;
            assert!(t < prev, "t({a}) = {t} not below {prev}");
            prev = t;
        }

        // Just above the threshold the cutoff sits just below beta.
        let a_d = dropout_threshold(6.0, 2.002930, &dist).unwrap();
        let sol = cutoff_map(6.0, 2.002930, &dist, a_d * 1.0001).unwrap();
        assert!(sol.t < 2.0 && sol.t > 1.98, "{}", sol.t);
        assert!(sol.dropout_rate < 0.05);

        assert!(cutoff_map(6.0, 2.002930, &dist, a_d * 0.999).is_err());
    }

    #[test]
    fn cutoff_and_h_root_agree() {
        // solve_bayes (H bisection) and cutoff_map (branch inversion) are
        // two routes to the same cutoff.
        let dist = two_peak_mixture();
        let a = 60.0;
        let eq = match solve_bayes(&tech(a, 6.0, 2.002930), &dist).unwrap() {
            BayesEquilibrium::Cutoff(eq) => eq,
            other => panic!("{other:?}"),
        };
        let sol = cutoff_map(6.0, 2.002930, &dist, a).unwrap();
        assert!((eq.t - sol.t).abs() < 1e-9, "{} vs {}", eq.t, sol.t);
        assert!((eq.lambda - sol.lambda).abs() < 1e-9);
    }

    #[test]
    fn branch_continuity_at_the_dropout_threshold() {
        let dist = TypeDistribution::uniform(0.5, 1.0).unwrap();
        let (b, c) = (1.0, 1.25);
        let a_d = dropout_threshold(b, c, &dist).unwrap();
        let below = match solve_bayes(&tech(a_d - 1e-6, b, c), &dist).unwrap() {
            BayesEquilibrium::FullyActive(eq) => eq.e1,
            other => panic!("{other:?}"),
        };
        let above = match solve_bayes(&tech(a_d + 1e-6, b, c), &dist).unwrap() {
            BayesEquilibrium::Cutoff(eq) => eq.e1,
            other => panic!("{other:?}"),
        };
        assert!((below - above).abs() < 1e-4, "{below} vs {above}");
    }

    #[test]
    fn truncation_checks() {
        let dist = TypeDistribution::uniform(0.75, 0.85).unwrap();
        let t = tech(0.53, 0.72, 1.0);
        let eq = affine_bne(&t, &dist).unwrap();
        assert!(eq.effort(0.85) > 0.0);
        assert!(truncation_check_simple(&t, 0.75, &eq));
        assert!(truncation_check_support(&t, 0.75, 0.85, &eq));

        // Empowerment fails the last inequality (it requires a > 0 here).
        let t_neg = tech(-1.0, 0.72, 1.0);
        let eq_neg = affine_bne(&t_neg, &dist).unwrap();
        assert!(!truncation_check_simple(&t_neg, 0.75, &eq_neg));

        // Oversized support violates the x_high bound.
        let fake = AffineBne {
            k: -1.0,
            d: 30.0,
            e1: 29.0,
            variance: 0.0,
            kappa: None,
            zeta: None,
            omega: None,
        };
        assert!(!truncation_check_simple(&t, 0.75, &fake));
        assert!(!truncation_check_support(&t, 0.75, 0.85, &fake));

        assert!(neutral_support_interior(1.0, 0.25, 0.75));
        assert!(!neutral_support_interior(0.2, 0.25, 0.75));
    }

    #[test]
    fn fully_active_decision_uses_the_rule_not_the_threshold() {
        // Works even for discrete priors where a_D is undefined.
        let dist =
            TypeDistribution::discrete(vec![(0.3, 0.25), (0.5, 0.5), (0.7, 0.25)]).unwrap();
        let eq = solve_bayes(&tech(0.5, 1.0, 1.0), &dist).unwrap();
        assert!(matches!(eq, BayesEquilibrium::FullyActive(_)));
    }
}
