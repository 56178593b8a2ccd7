//! Root finding for strictly decreasing functions of one real variable.

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;

/// Largest `|x|` the bracket search will reach before giving up.
const BRACKET_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// `f(x) - target`.
    pub residual: f64,
    pub iterations: usize,
}

/// Solves `f(x) = target` for a strictly decreasing `f`, given as `x -> (f(x), f'(x))`.
///
/// The bracket starts at `[-1, 1]` and each side doubles until `f` straddles the
/// target. Newton steps are taken when they land strictly inside the current
/// bracket; otherwise the bracket is bisected. Stops once `|residual| ≤ tol`,
/// or when the bracket cannot shrink any further in floating point.
pub fn solve_decreasing<F>(f: F, target: f64, tol: f64) -> Result<Root>
where
    F: Fn(f64) -> (f64, f64),
{
    let mut lo = -1.0;
    while f(lo).0 <= target {
        if lo.abs() > BRACKET_LIMIT {
            return Err(Error::NoConvergence {
                residual: f(lo).0 - target,
                iterations: 0,
            });
        }
        if (f(lo).0 - target).abs() <= tol {
            return Ok(Root { x: lo, residual: f(lo).0 - target, iterations: 0 });
        }
        lo *= 2.0;
    }
    let mut hi = 1.0;
    while f(hi).0 >= target {
        if hi > BRACKET_LIMIT {
            return Err(Error::NoConvergence {
                residual: f(hi).0 - target,
                iterations: 0,
            });
        }
        if (f(hi).0 - target).abs() <= tol {
            return Ok(Root { x: hi, residual: f(hi).0 - target, iterations: 0 });
        }
        hi *= 2.0;
    }

    let mut x = 0.5 * (lo + hi);
    let mut best = Root {
        x,
        residual: f64::INFINITY,
        iterations: 0,
    };
    for iteration in 1..=MAX_ITERATIONS {
        let (value, slope) = f(x);
        let residual = value - target;
        if residual.abs() < best.residual.abs() {
            best = Root {
                x,
                residual,
                iterations: iteration,
            };
        }
        if residual.abs() <= tol {
            return Ok(best);
        }
        if residual > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - residual / slope;
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Bracket has collapsed to adjacent floats.
            return Ok(best);
        }
        x = if slope < 0.0 && newton > lo && newton < hi {
            newton
        } else {
            mid
        };
    }
    if best.residual.abs() <= tol {
        Ok(best)
    } else {
        Err(Error::NoConvergence {
            residual: best.residual,
            iterations: MAX_ITERATIONS,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_root() {
        let r = solve_decreasing(|x| (-x * x * x, -3.0 * x * x), -8.0, 1e-12).unwrap();
        assert!((r.x - 2.0).abs() < 1e-12);
    }

    #[test]
    fn far_root_needs_bracket_growth() {
        let r = solve_decreasing(|x| (-x, -1.0), 1000.5, 1e-12).unwrap();
        assert!((r.x + 1000.5).abs() < 1e-9);
    }

    #[test]
    fn zero_slope_falls_back_to_bisection() {
        // Flat away from the root: Newton is useless there.
        let f = |x: f64| ((-x).tanh(), -(1.0 - x.tanh().powi(2)));
        let r = solve_decreasing(f, -0.999_999, 1e-12).unwrap();
        assert!((f(r.x).0 + 0.999_999).abs() <= 1e-12);
    }

    #[test]
    fn unreachable_target() {
        let f = |x: f64| ((-x).tanh(), -(1.0 - x.tanh().powi(2)));
        assert!(solve_decreasing(f, 2.0, 1e-12).is_err());
    }
}
