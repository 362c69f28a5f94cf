//! Bracketing root finders.
//!
//! Every solver in this crate works on intervals with a proven sign change,
//! so plain bisection is guaranteed to converge; a secant polish at the end
//! squeezes out the last few digits. Derivative-based iterations are
//! deliberately avoided.

use crate::{Error, Result};

/// Find a root of `f` inside `[lo, hi]` by bisection followed by a secant
/// polish. Requires a sign change (or an exact zero at an endpoint).
///
/// `tol_x` is the absolute interval width at which bisection stops.
pub fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol_x: f64) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::RootFind(format!("empty bracket [{lo}, {hi}]")));
    }
    let mut lo = lo;
    let mut hi = hi;
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::RootFind(format!(
            "no sign change on [{lo}, {hi}]: f = ({flo}, {fhi})"
        )));
    }

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= tol_x {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }

    // Secant polish inside the final bracket.
    let mut best = if flo.abs() <= fhi.abs() { (lo, flo) } else { (hi, fhi) };
    let denom = fhi - flo;
    if denom != 0.0 {
        let x = lo - flo * (hi - lo) / denom;
        if x > lo && x < hi {
            let fx = f(x);
            if fx.abs() < best.1.abs() {
                best = (x, fx);
            }
        }
    }
    Ok(best.0)
}

/// Scan `f` on `n + 1` evenly spaced points of `[lo, hi]` and return every
/// consecutive pair bracketing a sign change, in increasing order.
pub fn scan_sign_changes(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let mut brackets = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for i in 1..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        let fx = f(x);
        if prev_f == 0.0 {
            // An exact zero at a grid point; report a degenerate bracket.
            brackets.push((prev_x, prev_x));
        } else if fx != 0.0 && prev_f.signum() != fx.signum() {
            brackets.push((prev_x, x));
        }
        prev_x = x;
        prev_f = fx;
    }
    brackets
}
