//! Nonnegativity of univariate quadratics and cubics on `t >= 0`.
//!
//! These are the one-dimensional building blocks behind every tensor
//! criterion: a binary form restricted to a ray becomes a univariate
//! polynomial in the ratio of its two coordinates.
//!
//! All comparisons are literal (`>=` / `>` on `f64`); square roots are taken
//! of radicands clamped at zero.

use crate::error::{CoposError, Result};

/// Coefficients of `P(t) = a t^3 + b t^2 + c t + d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl CubicCoeffs {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn eval(&self, t: f64) -> f64 {
        ((self.a * t + self.b) * t + self.c) * t + self.d
    }

    fn check_finite(&self) -> Result<()> {
        check_finite(&[self.a, self.b, self.c, self.d])
    }

    /// `4ac^3 + 4b^3d + 27a^2d^2 - 18abcd - b^2c^2`, the negated cubic
    /// discriminant.
    pub fn discriminant_form(&self) -> f64 {
        let CubicCoeffs { a, b, c, d } = *self;
        4.0 * a * c.powi(3) + 4.0 * b.powi(3) * d + 27.0 * a * a * d * d
            - 18.0 * a * b * c * d
            - b * b * c * c
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::new(k * self.a, k * self.b, k * self.c, k * self.d)
    }
}

/// Coefficients of `p(t) = alpha t^2 + beta t + gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadCoeffs {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl QuadCoeffs {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.alpha * t + self.beta) * t + self.gamma
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(&v) => Err(CoposError::NonFinite(v)),
        None => Ok(()),
    }
}

/// `sqrt(max(x, 0))`.
#[inline]
pub fn sqrt0(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

/// Exact test for `P(t) >= 0` on `t >= 0`: either every coefficient is
/// nonnegative, or `max(a, d) > 0`, `a, d >= 0` and the discriminant form
/// is nonnegative.
///
/// The rule is applied as stated. When `a` or `d` vanishes it can accept
/// polynomials that dip below zero (for example `t^3 - t^2`), see the
/// `degenerate_inputs_follow_the_literal_rule` test.
pub fn cubic_nonneg_exact(cc: CubicCoeffs) -> Result<bool> {
    cc.check_finite()?;
    let CubicCoeffs { a, b, c, d } = cc;
    let all_nonneg = a >= 0.0 && b >= 0.0 && c >= 0.0 && d >= 0.0;
    let disc = a.max(d) > 0.0 && a >= 0.0 && d >= 0.0 && cc.discriminant_form() >= 0.0;
    Ok(all_nonneg || disc)
}

/// Sufficient test: `a, d >= 0`, `b >= a - 2 sqrt(ad)`, `c >= d - 2 sqrt(ad)`.
///
/// Under these bounds `P(t) >= (t + 1)(sqrt(a) t - sqrt(d))^2`.
pub fn cubic_nonneg_sufficient(cc: CubicCoeffs) -> Result<bool> {
    cc.check_finite()?;
    let CubicCoeffs { a, b, c, d } = cc;
    let r = 2.0 * sqrt0(a * d);
    Ok(a >= 0.0 && d >= 0.0 && b >= a - r && c >= d - r)
}

/// Exact test for `p(t) >= 0` on `t >= 0`:
/// `alpha >= 0`, `gamma >= 0`, `beta + 2 sqrt(alpha gamma) >= 0`.
pub fn quad_nonneg(qc: QuadCoeffs) -> Result<bool> {
    check_finite(&[qc.alpha, qc.beta, qc.gamma])?;
    let QuadCoeffs { alpha, beta, gamma } = qc;
    Ok(alpha >= 0.0 && gamma >= 0.0 && beta + 2.0 * sqrt0(alpha * gamma) >= 0.0)
}

/// Result of a grid scan of a cubic over `[0, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicScan {
    pub min_value: f64,
    pub argmin: f64,
    /// Right end of the scanned interval.
    pub upper: f64,
    /// The leading nonzero coefficient is negative, so `P -> -inf`.
    pub diverges_negative: bool,
}

/// Minimum of `P` on a uniform grid over `[0, B]` with `B` the Cauchy bound
/// `1 + max|lower coeffs| / |leading coeff|`.
///
/// Every positive root of `P` lies below `B`, so the sign pattern of `P` on
/// `[0, inf)` is visible on the grid up to resolution.
pub fn cubic_min_bruteforce(cc: CubicCoeffs, grid_points: usize) -> Result<CubicScan> {
    cc.check_finite()?;
    if grid_points < 2 {
        return Err(CoposError::InvalidConfig(format!(
            "grid_points must be >= 2, got {grid_points}"
        )));
    }
    let coeffs = [cc.a, cc.b, cc.c, cc.d];
    let Some(lead) = coeffs.iter().position(|&v| v != 0.0) else {
        return Ok(CubicScan {
            min_value: 0.0,
            argmin: 0.0,
            upper: 0.0,
            diverges_negative: false,
        });
    };
    let lower = coeffs[lead + 1..]
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    let upper = 1.0 + lower / coeffs[lead].abs();
    let step = upper / (grid_points - 1) as f64;
    let mut best = (cc.eval(0.0), 0.0);
    for k in 1..grid_points {
        let t = if k == grid_points - 1 { upper } else { k as f64 * step };
        let v = cc.eval(t);
        if v < best.0 {
            best = (v, t);
        }
    }
    Ok(CubicScan {
        min_value: best.0,
        argmin: best.1,
        upper,
        diverges_negative: coeffs[lead] < 0.0 && lead < 3,
    })
}
