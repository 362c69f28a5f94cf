//! Equilibrium solvers for the truncated cubic contest.
//!
//! The contest awards a unit prize with probability
//! `P(x, y) = 1/2 + (x - y)(c - b(x + y) + a*x*y)`, clamped to `[0, 1]`,
//! where `x` and `y` are the two players' efforts. The sign of the feedback
//! parameter `a` decides whether a leading player's effort suppresses
//! (`a > 0`) or empowers (`a < 0`) the trailing player's marginal return.
//!
//! The crate computes the closed-form equilibria of this game and checks
//! them against the literal clamped game by brute force:
//!
//! * [`csf`] — the success function, its truncation, and its admissible
//!   domain;
//! * [`complete`] — complete-information pure and mixed equilibria and the
//!   truncation/participation criteria for them;
//! * [`dist`] — IID cost priors, their ordinary and lower partial moments,
//!   and signal garblings;
//! * [`bayes`] — the affine Bayesian benchmark, cutoff (dropout)
//!   equilibria, and the boundary-atom case;
//! * [`statics`] — effort curves in `a`, the peak parameter and its
//!   variance thresholds, and disclosure ranking;
//! * [`oracle`] — grid/quadrature verification of every closed form
//!   against the clamped game.

pub mod bayes;
pub mod complete;
pub mod csf;
pub mod dist;
pub mod numeric;
pub mod oracle;
pub mod statics;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
