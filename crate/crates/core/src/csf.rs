//! The cubic contest success function and its truncation.
//!
//! The raw success function is `P(x, y) = 1/2 + (x - y)(c - b(x + y) + a*x*y)`.
//! Player X wins the unit prize with probability `P`, player Y with `1 - P`.
//! Because the polynomial eventually leaves `[0, 1]`, the contest that is
//! actually played clamps it; profiles on which the raw value is strictly
//! interior form the admissible domain, where the clamp is inactive.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The `(a, b, c)` triple defining a cubic contest technology.
///
/// * `a` — strategic feedback, any sign: positive suppresses the trailing
///   player, negative empowers them;
/// * `b > 0` — decay of the marginal return to own effort;
/// * `c > 0` — baseline marginal return at zero effort.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContestTechnology {
    a: f64,
    b: f64,
    c: f64,
}

impl ContestTechnology {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !c.is_finite() {
            return Err(Error::invalid("technology parameters must be finite"));
        }
        if b <= 0.0 {
            return Err(Error::invalid(format!("b must be positive, got {b}")));
        }
        if c <= 0.0 {
            return Err(Error::invalid(format!("c must be positive, got {c}")));
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Target effort `kappa = b / a`. Undefined at `a = 0`; never a silent
    /// infinity.
    pub fn kappa(&self) -> Result<f64> {
        if self.a == 0.0 {
            return Err(Error::NeutralFeedback("kappa = b / a"));
        }
        Ok(self.b / self.a)
    }

    /// Raw polynomial winning probability of the `x` player.
    ///
    /// Antisymmetric around the diagonal: `raw(x, y) + raw(y, x) = 1`.
    pub fn raw_probability(&self, p: EffortProfile) -> f64 {
        let (x, y) = (p.x, p.y);
        0.5 + (x - y) * (self.c - self.b * (x + y) + self.a * x * y)
    }

    /// Winning probability in the literal contest: the raw value clamped to
    /// `[0, 1]`.
    pub fn truncated_probability(&self, p: EffortProfile) -> f64 {
        self.raw_probability(p).clamp(0.0, 1.0)
    }

    /// Cross-derivative of the raw probability, `2a(x - y)`: linear in the
    /// effort gap, with sign `sgn(a) * sgn(x - y)`.
    pub fn cross_partial(&self, p: EffortProfile) -> f64 {
        2.0 * self.a * (p.x - p.y)
    }

    /// Whether the raw probability is strictly inside `(0, 1)` at `p`.
    /// Boundary profiles report `false`.
    pub fn in_admissible_domain(&self, p: EffortProfile) -> bool {
        let raw = self.raw_probability(p);
        raw > 0.0 && raw < 1.0
    }
}

/// A pair of nonnegative efforts, `x` for player X and `y` for player Y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffortProfile {
    x: f64,
    y: f64,
}

impl EffortProfile {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() || x < 0.0 || y < 0.0 {
            return Err(Error::invalid(format!(
                "efforts must be finite and nonnegative, got ({x}, {y})"
            )));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// The profile with the two players exchanged.
    pub fn swapped(&self) -> Self {
        Self { x: self.y, y: self.x }
    }
}

/// Cross-derivative of the generalized lottery success function
/// `x^r / (x^r + y^r)`:
///
/// `r^2 x^(r-1) y^(r-1) (x^r - y^r) / (x^r + y^r)^3`.
///
/// Its sign always equals `sgn(x - y)`, so the lottery family is suppressive
/// by functional form. Kept as a contrast property only.
pub fn tullock_cross_partial(r: f64, p: EffortProfile) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::invalid(format!("exponent r must be positive, got {r}")));
    }
    if p.x <= 0.0 || p.y <= 0.0 {
        return Err(Error::invalid(
            "lottery cross-partial requires strictly positive efforts",
        ));
    }
    let xr = p.x.powf(r);
    let yr = p.y.powf(r);
    Ok(r * r * p.x.powf(r - 1.0) * p.y.powf(r - 1.0) * (xr - yr) / (xr + yr).powi(3))
}
