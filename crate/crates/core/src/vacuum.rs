//! Vacuum stability of the Z3 scalar dark matter potential
//!
//! `V = l1 h1^4 + l2 h2^4 + (l3 + l4 rho^2) h1^2 h2^2 + ls s^4 + ls1 s^2 h1^2
//!    + ls2 s^2 h2^2 - |ls12| rho s^2 h1 h2`
//!
//! is bounded from below exactly when its order-4, dimension-3 coupling
//! tensor is copositive for every `rho` in `[0, 1]`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::{sos_c4d3, Checks, Condition, Criterion, Outcome};
use crate::error::{CoposError, Result};
use crate::oracle::{min_on_simplex, OracleConfig, OracleResult};
use crate::poly::sqrt0;
use crate::tensor::SymmetricTensor;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Z3Params {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
    pub ls: f64,
    pub ls1: f64,
    pub ls2: f64,
    /// `|ls12|`; the coupling itself is taken negative.
    pub abs_ls12: f64,
    pub rho: f64,
}

impl Default for Z3Params {
    fn default() -> Self {
        Self {
            l1: 0.0,
            l2: 0.0,
            l3: 0.0,
            l4: 0.0,
            ls: 0.0,
            ls1: 0.0,
            ls2: 0.0,
            abs_ls12: 0.0,
            rho: 1.0,
        }
    }
}

impl Z3Params {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.l1, self.l2, self.l3, self.l4, self.ls, self.ls1, self.ls2, self.abs_ls12, self.rho,
        ];
        if let Some(&v) = all.iter().find(|v| !v.is_finite()) {
            return Err(CoposError::NonFinite(v));
        }
        if self.abs_ls12 < 0.0 {
            return Err(CoposError::InvalidConfig(format!(
                "|ls12| must be nonnegative, got {}",
                self.abs_ls12
            )));
        }
        if !(0.0..=1.0).contains(&self.rho) {
            return Err(CoposError::InvalidConfig(format!(
                "rho must lie in [0, 1], got {}",
                self.rho
            )));
        }
        Ok(())
    }

    pub fn with_rho(&self, rho: f64) -> Self {
        Self { rho, ..*self }
    }

    /// The potential at `(h1, h2, s)`.
    pub fn potential(&self, h1: f64, h2: f64, s: f64) -> f64 {
        let (h1s, h2s, ss) = (h1 * h1, h2 * h2, s * s);
        self.l1 * h1s * h1s
            + self.l2 * h2s * h2s
            + (self.l3 + self.l4 * self.rho * self.rho) * h1s * h2s
            + self.ls * ss * ss
            + self.ls1 * ss * h1s
            + self.ls2 * ss * h2s
            - self.abs_ls12 * self.rho * ss * h1 * h2
    }
}

/// Coupling tensor in the variables `(h1, h2, s)`.
pub fn coupling_tensor(p: &Z3Params) -> Result<SymmetricTensor> {
    p.validate()?;
    SymmetricTensor::from_pairs(
        4,
        3,
        &[
            (&[1, 1, 1, 1], p.l1),
            (&[2, 2, 2, 2], p.l2),
            (&[3, 3, 3, 3], p.ls),
            (&[1, 1, 2, 2], (p.l3 + p.l4 * p.rho * p.rho) / 6.0),
            (&[1, 1, 3, 3], p.ls1 / 6.0),
            (&[2, 2, 3, 3], p.ls2 / 6.0),
            (&[1, 2, 3, 3], -p.abs_ls12 * p.rho / 12.0),
        ],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    #[serde(rename = "theorem")]
    Theorem,
    #[serde(rename = "as-printed")]
    Printed,
}

impl Route {
    pub fn id(self) -> &'static str {
        match self {
            Route::Theorem => "theorem",
            Route::Printed => "as-printed",
        }
    }
}

/// One route evaluated at one `rho`. Never `Refuted`: neither condition
/// list is claimed necessary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub route: Route,
    pub rho: f64,
    pub outcome: Outcome,
    pub conditions: Vec<Condition>,
}

impl Verdict {
    pub fn min_margin(&self) -> f64 {
        self.conditions.iter().map(|c| c.value).fold(f64::INFINITY, f64::min)
    }

    /// Value of the final printed condition, or the `a1233` mixed condition
    /// for the theorem route.
    pub fn mixed_margin(&self) -> f64 {
        let key = match self.route {
            Route::Printed => "|ls12| rho",
            Route::Theorem => "27 a1233",
        };
        self.conditions
            .iter()
            .find(|c| c.description.contains(key))
            .map(|c| c.value)
            .expect("mixed condition is always recorded")
    }
}

/// The printed condition list: `l1, l2, ls > 0` and four inequalities that
/// become strict with `strict`.
pub fn stability_printed(p: &Z3Params, strict: bool) -> Result<Verdict> {
    p.validate()?;
    let mut ck = Checks::new();
    ck.gt(None, "l1 > 0", p.l1, 0.0);
    ck.gt(None, "l2 > 0", p.l2, 0.0);
    ck.gt(None, "ls > 0", p.ls, 0.0);
    let r12 = 2.0 * sqrt0(p.l1 * p.l2);
    let s1 = 3.0 * p.ls1 + 2.0 * sqrt0(p.l1 * p.ls);
    let s2 = 3.0 * p.ls2 + 2.0 * sqrt0(p.ls * p.l2);
    ck.cmp(
        strict,
        None,
        "3 l3 + 3 l4 rho^2 + 2 sqrt(l1 l2) >= 0",
        3.0 * p.l3 + 3.0 * p.l4 * p.rho * p.rho + r12,
        0.0,
    );
    ck.cmp(strict, None, "3 ls1 + 2 sqrt(l1 ls) >= 0", s1, 0.0);
    ck.cmp(strict, None, "3 ls2 + 2 sqrt(ls l2) >= 0", s2, 0.0);
    ck.cmp(
        strict,
        None,
        "-(9/4) |ls12| rho + sqrt((3 ls1 + 2 sqrt(l1 ls)) (3 ls2 + 2 sqrt(ls l2))) >= 0",
        -2.25 * p.abs_ls12 * p.rho + sqrt0(s1 * s2),
        0.0,
    );
    let cert = ck.finish(Criterion::SosC4D3, &[]);
    Ok(Verdict {
        route: Route::Printed,
        rho: p.rho,
        outcome: demote(cert.outcome),
        conditions: cert.conditions,
    })
}

/// The sum-of-squares criterion applied to [`coupling_tensor`].
pub fn stability_theorem(p: &Z3Params, strict: bool) -> Result<Verdict> {
    let cert = sos_c4d3(&coupling_tensor(p)?, strict)?;
    Ok(Verdict {
        route: Route::Theorem,
        rho: p.rho,
        outcome: demote(cert.outcome),
        conditions: cert.conditions,
    })
}

fn demote(o: Outcome) -> Outcome {
    match o {
        Outcome::Certified => Outcome::Certified,
        _ => Outcome::Unknown,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoSample {
    pub rho: f64,
    pub theorem: Verdict,
    pub printed: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub params: Z3Params,
    pub strict: bool,
    /// Certified only if the theorem route certifies at every sampled `rho`.
    pub theorem_verdict: Outcome,
    pub printed_verdict: Outcome,
    /// Sample with the lowest oracle minimum, when the oracle was run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleResult>,
    /// `rho` with the tightest theorem-route margins; ties go to the smaller `rho`.
    pub worst_rho: f64,
    pub worst_rho_printed: f64,
    pub samples: Vec<RhoSample>,
}

impl StabilityReport {
    pub fn verdict(&self, route: Route) -> Outcome {
        match route {
            Route::Theorem => self.theorem_verdict,
            Route::Printed => self.printed_verdict,
        }
    }
}

fn sample(p: &Z3Params, rho: f64, strict: bool, oracle: Option<&OracleConfig>) -> Result<RhoSample> {
    let q = p.with_rho(rho);
    let oracle = match oracle {
        Some(cfg) => Some(min_on_simplex(&coupling_tensor(&q)?, cfg)?),
        None => None,
    };
    Ok(RhoSample {
        rho,
        theorem: stability_theorem(&q, strict)?,
        printed: stability_printed(&q, strict)?,
        oracle,
    })
}

fn assemble(p: &Z3Params, strict: bool, samples: Vec<RhoSample>) -> StabilityReport {
    let all_certified = |f: fn(&RhoSample) -> &Verdict| {
        if samples.iter().all(|s| f(s).outcome == Outcome::Certified) {
            Outcome::Certified
        } else {
            Outcome::Unknown
        }
    };
    // Compare ascending margin profiles so that ties in the single tightest
    // margin are broken by the next tightest, then by the smaller rho.
    let worst = |f: fn(&RhoSample) -> &Verdict| {
        let profile = |s: &RhoSample| {
            let mut m: Vec<f64> = f(s).conditions.iter().map(|c| c.value).collect();
            m.sort_by(f64::total_cmp);
            m
        };
        let mut best = (profile(&samples[0]), samples[0].rho);
        for s in &samples[1..] {
            let m = profile(s);
            if lex_cmp(&m, &best.0) == Ordering::Less {
                best = (m, s.rho);
            }
        }
        best.1
    };
    let oracle = samples
        .iter()
        .filter_map(|s| s.oracle.as_ref())
        .fold(None::<&OracleResult>, |acc, r| match acc {
            Some(b) if b.min_value <= r.min_value => Some(b),
            _ => Some(r),
        })
        .cloned();
    StabilityReport {
        params: *p,
        strict,
        theorem_verdict: all_certified(|s| &s.theorem),
        printed_verdict: all_certified(|s| &s.printed),
        oracle,
        worst_rho: worst(|s| &s.theorem),
        worst_rho_printed: worst(|s| &s.printed),
        samples,
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Both routes at the single `rho` stored in `p`.
pub fn check_at(p: &Z3Params, strict: bool, oracle: Option<&OracleConfig>) -> Result<StabilityReport> {
    p.validate()?;
    let s = sample(p, p.rho, strict, oracle)?;
    Ok(assemble(p, strict, vec![s]))
}

/// Both routes at `rho = k / steps`, `k = 0..=steps`.
pub fn scan_rho(p: &Z3Params, steps: usize, strict: bool) -> Result<StabilityReport> {
    scan_rho_with(p, steps, strict, None)
}

pub fn scan_rho_with(
    p: &Z3Params,
    steps: usize,
    strict: bool,
    oracle: Option<&OracleConfig>,
) -> Result<StabilityReport> {
    if steps == 0 {
        return Err(CoposError::InvalidConfig("rho scan needs at least 1 step".into()));
    }
    p.validate()?;
    let samples = (0..=steps)
        .into_par_iter()
        .map(|k| sample(p, k as f64 / steps as f64, strict, oracle))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(p, strict, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::diag_necessity;

    fn unit(abs_ls12: f64, rho: f64) -> Z3Params {
        Z3Params {
            l1: 1.0,
            l2: 1.0,
            ls: 1.0,
            abs_ls12,
            rho,
            ..Z3Params::default()
        }
    }

    #[test]
    fn tensor_entries() {
        let t = coupling_tensor(&unit(1.0, 1.0)).unwrap();
        assert_eq!(t.get(&[1, 1, 1, 1]), 1.0);
        assert_eq!(t.get(&[3, 3, 3, 3]), 1.0);
        assert_eq!(t.get(&[3, 1, 3, 2]), -1.0 / 12.0);
        assert_eq!(t.get(&[1, 1, 2, 2]), 0.0);
        assert_eq!(t.nonzero_entries().count(), 4);
        let z = coupling_tensor(&Z3Params::default()).unwrap();
        assert_eq!(z.nonzero_entries().count(), 0);
    }

    #[test]
    fn tensor_reproduces_potential_at_ones() {
        let p = Z3Params {
            l1: 0.3,
            l2: 1.1,
            l3: -0.2,
            l4: 0.5,
            ls: 0.7,
            ls1: 0.25,
            ls2: -0.1,
            abs_ls12: 0.6,
            rho: 0.8,
        };
        let t = coupling_tensor(&p).unwrap();
        let expect = p.l1 + p.l2 + p.ls + p.l3 + p.l4 * p.rho * p.rho + p.ls1 + p.ls2 - p.abs_ls12 * p.rho;
        assert!((t.evaluate(&[1.0, 1.0, 1.0]).unwrap() - expect).abs() < 1e-14);
        assert!((p.potential(1.0, 1.0, 1.0) - expect).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(coupling_tensor(&unit(-1.0, 1.0)).is_err());
        assert!(coupling_tensor(&unit(1.0, 1.5)).is_err());
        assert!(stability_printed(&unit(1.0, -0.1), false).is_err());
        assert!(scan_rho(&unit(1.0, 1.0), 0, false).is_err());
    }

    #[test]
    fn printed_examples() {
        let v = stability_printed(&unit(0.0, 0.3), false).unwrap();
        assert_eq!(v.outcome, Outcome::Certified);
        assert_eq!(v.mixed_margin(), 2.0);
        let v = stability_printed(&unit(1.0, 1.0), false).unwrap();
        assert_eq!(v.outcome, Outcome::Unknown);
        assert_eq!(v.mixed_margin(), -0.25);
        let p = Z3Params { l1: -1.0, ..unit(0.0, 1.0) };
        assert_eq!(stability_printed(&p, false).unwrap().outcome, Outcome::Unknown);
        let t = coupling_tensor(&p).unwrap();
        assert_eq!(diag_necessity(&t).outcome, Outcome::Refuted);
    }

    #[test]
    fn route_boundaries() {
        let th = stability_theorem(&unit(4.0 / 9.0, 1.0), false).unwrap();
        assert_eq!(th.outcome, Outcome::Certified);
        assert_eq!(th.mixed_margin(), 0.0);
        assert_eq!(stability_theorem(&unit(4.0 / 9.0, 1.0), true).unwrap().outcome, Outcome::Unknown);

        assert_eq!(stability_theorem(&unit(0.8, 1.0), false).unwrap().outcome, Outcome::Unknown);
        assert_eq!(stability_printed(&unit(0.8, 1.0), false).unwrap().outcome, Outcome::Certified);

        let pr = stability_printed(&unit(8.0 / 9.0, 1.0), false).unwrap();
        assert_eq!(pr.outcome, Outcome::Certified);
        assert!(pr.mixed_margin().abs() < 1e-12);
        assert_eq!(stability_printed(&unit(0.9, 1.0), false).unwrap().outcome, Outcome::Unknown);

        assert_eq!(stability_theorem(&unit(0.0, 1.0), true).unwrap().outcome, Outcome::Certified);
    }

    #[test]
    fn theorem_route_is_the_criterion() {
        let p = Z3Params { l3: -0.4, ls1: 0.2, ..unit(0.3, 0.7) };
        let cert = sos_c4d3(&coupling_tensor(&p).unwrap(), false).unwrap();
        let v = stability_theorem(&p, false).unwrap();
        assert_eq!(v.conditions, cert.conditions);
        assert_eq!(v.outcome, cert.outcome);
    }

    #[test]
    fn scan_examples() {
        let r = scan_rho(&unit(0.4, 1.0), 100, false).unwrap();
        assert_eq!(r.samples.len(), 101);
        assert_eq!(r.theorem_verdict, Outcome::Certified);
        assert_eq!(r.printed_verdict, Outcome::Certified);
        assert_eq!(r.worst_rho, 1.0);
        assert_eq!(r.worst_rho_printed, 1.0);

        let r = scan_rho(&unit(1.0, 1.0), 100, false).unwrap();
        assert_eq!(r.theorem_verdict, Outcome::Unknown);
        assert_eq!(r.samples[100].theorem.outcome, Outcome::Unknown);
        assert_eq!(r.worst_rho, 1.0);

        let r = scan_rho(&unit(0.0, 1.0), 10, false).unwrap();
        assert_eq!(r.theorem_verdict, Outcome::Certified);
        assert_eq!(r.worst_rho, 0.0);
    }

    #[test]
    fn margin_decreases_in_coupling_and_rho() {
        let p = Z3Params { l4: 0.3, ls1: 0.4, ls2: -0.2, ..unit(0.0, 1.0) };
        for route in [stability_printed, stability_theorem] {
            let mut prev = f64::INFINITY;
            for k in 0..=20 {
                let m = route(&Z3Params { abs_ls12: k as f64 * 0.1, ..p }, false).unwrap().mixed_margin();
                assert!(m <= prev);
                prev = m;
            }
            let mut prev = f64::INFINITY;
            for k in 0..=20 {
                let m = route(&Z3Params { abs_ls12: 0.7, rho: k as f64 / 20.0, ..p }, false)
                    .unwrap()
                    .mixed_margin();
                assert!(m <= prev);
                prev = m;
            }
        }
    }

    #[test]
    fn oracle_finds_barycenter_value() {
        let cfg = OracleConfig::for_dim(3);
        let r = check_at(&unit(4.0, 1.0), false, Some(&cfg)).unwrap();
        let o = r.oracle.unwrap();
        assert!(o.min_value <= -1.0 / 81.0 + 1e-12);
        assert_eq!(r.theorem_verdict, Outcome::Unknown);
        assert_eq!(r.printed_verdict, Outcome::Unknown);
    }
}
