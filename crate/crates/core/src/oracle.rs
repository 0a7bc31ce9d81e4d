//! Brute-force minimization of `T x^m` over the unit simplex.
//!
//! By homogeneity a tensor is copositive exactly when its form is
//! nonnegative on `{x >= 0, sum x = 1}`. The oracle scans the lattice
//! `k / N` of that simplex, optionally adds random points, then zooms in on
//! the incumbent. It can exhibit negative points but never proves
//! nonnegativity, hence [`Classification::CopositiveUpToBand`].

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CoposError, Result};
use crate::tensor::{Form, SymmetricTensor};

/// Upper bound on the points of one local refinement grid.
const MAX_LOCAL_POINTS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Lattice resolution `N`; grid points are `k / N`.
    pub resolution: usize,
    pub refine_rounds: usize,
    /// Relative indeterminacy band, scaled by `1 + max|entry|`.
    pub band: f64,
    /// Extra uniform random simplex points.
    pub samples: usize,
    pub seed: u64,
}

impl OracleConfig {
    pub const DEFAULT_BAND: f64 = 1e-8;

    /// 2000 in dimension 2 (and 1), 120 otherwise; 3 refinement rounds.
    pub fn for_dim(dim: usize) -> Self {
        Self {
            resolution: if dim <= 2 { 2000 } else { 120 },
            refine_rounds: 3,
            band: Self::DEFAULT_BAND,
            samples: 0,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution == 0 {
            return Err(CoposError::InvalidConfig("resolution must be >= 1".into()));
        }
        if self.band.is_nan() || self.band < 0.0 || self.band.is_infinite() {
            return Err(CoposError::InvalidConfig(format!(
                "band must be a finite nonnegative number, got {}",
                self.band
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    CopositiveUpToBand,
    NotCopositive,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub min_value: f64,
    pub argmin: Vec<f64>,
    pub resolution_used: usize,
    pub classification: Classification,
    pub points_evaluated: usize,
}

/// `min > band*scale` is copositive up to band, `min < -band*scale` is not
/// copositive, anything else is indeterminate.
pub fn classify(min_value: f64, band: f64, scale: f64) -> Classification {
    let tol = band * scale;
    if min_value > tol {
        Classification::CopositiveUpToBand
    } else if min_value < -tol {
        Classification::NotCopositive
    } else {
        Classification::Indeterminate
    }
}

/// Scale used by [`classify`] for a tensor: `1 + max|entry|`.
pub fn band_scale(t: &SymmetricTensor) -> f64 {
    1.0 + t.max_abs_entry()
}

/// Compositions `(k1, ..., k_dim)` of `n`, in decreasing lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

impl Compositions {
    pub fn new(dim: usize, n: usize) -> Self {
        let current = (dim > 0).then(|| {
            let mut k = vec![0; dim];
            k[0] = n;
            k
        });
        Self { current }
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let dim = out.len();
        if let Some(j) = (0..dim.saturating_sub(1)).rev().find(|&j| out[j] > 0) {
            let mut k = out.clone();
            let rest: usize = k[j + 1..].iter().sum();
            k[j] -= 1;
            k[j + 1] = rest + 1;
            for slot in &mut k[j + 2..] {
                *slot = 0;
            }
            self.current = Some(k);
        }
        Some(out)
    }
}

/// Lattice points `k / n` of the unit simplex, `C(n+dim-1, dim-1)` of them.
pub fn simplex_grid(dim: usize, n: usize) -> impl Iterator<Item = Vec<f64>> {
    let nf = n as f64;
    Compositions::new(dim, n).map(move |k| k.into_iter().map(|ki| ki as f64 / nf).collect())
}

/// Incumbent minimum with a lexicographic tie-break on the point.
#[derive(Debug, Clone)]
struct Best {
    value: f64,
    point: Vec<f64>,
}

impl Best {
    fn better_than(&self, other: &Best) -> bool {
        match self.value.partial_cmp(&other.value) {
            Some(Ordering::Less) => true,
            Some(Ordering::Greater) => false,
            _ => lex_less(&self.point, &other.point),
        }
    }

    fn offer(&mut self, value: f64, point: &[f64]) {
        let better = value < self.value || (value == self.value && lex_less(point, &self.point));
        if better {
            self.value = value;
            self.point.clear();
            self.point.extend_from_slice(point);
        }
    }

    fn merge(a: Best, b: Best) -> Best {
        if b.better_than(&a) {
            b
        } else {
            a
        }
    }
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Scans the lattice, splitting on the first coordinate for parallelism.
fn scan_lattice(form: &Form, dim: usize, n: usize) -> (Best, usize) {
    let nf = n as f64;
    if dim == 1 {
        return (
            Best {
                value: form.eval(&[1.0]),
                point: vec![1.0],
            },
            1,
        );
    }
    let per_first = |k1: usize| {
        let mut x = vec![0.0; dim];
        x[0] = k1 as f64 / nf;
        let mut best = Best {
            value: f64::INFINITY,
            point: vec![f64::INFINITY; dim],
        };
        let mut count = 0usize;
        for rest in Compositions::new(dim - 1, n - k1) {
            for (slot, &k) in x[1..].iter_mut().zip(&rest) {
                *slot = k as f64 / nf;
            }
            best.offer(form.eval(&x), &x);
            count += 1;
        }
        (best, count)
    };
    (0..=n)
        .into_par_iter()
        .map(per_first)
        .reduce(
            || {
                (
                    Best {
                        value: f64::INFINITY,
                        point: vec![f64::INFINITY; dim],
                    },
                    0,
                )
            },
            |(a, ca), (b, cb)| (Best::merge(a, b), ca + cb),
        )
}

/// Uniform simplex point from sorted uniform spacings.
fn random_simplex_point(rng: &mut ChaCha8Rng, dim: usize, out: &mut Vec<f64>) {
    let mut cuts: Vec<f64> = (0..dim - 1).map(|_| rng.gen::<f64>()).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.clear();
    let mut prev = 0.0;
    for c in cuts {
        out.push(c - prev);
        prev = c;
    }
    let head: f64 = out.iter().sum();
    out.push(1.0 - head);
}

/// One zoom step: an `l_inf` box of the given radius around the incumbent,
/// gridded at `res` steps per free coordinate and clipped to the simplex.
fn refine_once(form: &Form, best: &mut Best, radius: f64, res: usize) -> usize {
    let dim = best.point.len();
    let free = dim - 1;
    let center = best.point.clone();
    let mut x = vec![0.0; dim];
    let mut counter = vec![0usize; free];
    let mut evaluated = 0;
    let resf = res as f64;
    loop {
        let mut ok = true;
        for i in 0..free {
            let offset = radius * ((2 * counter[i]) as f64 - resf) / resf;
            let mut v = center[i] + offset;
            if v < 0.0 && v > -1e-14 {
                v = 0.0;
            }
            if v < 0.0 {
                ok = false;
            }
            x[i] = v;
        }
        if ok {
            let head: f64 = x[..free].iter().sum();
            let mut last = 1.0 - head;
            if last < 0.0 && last > -1e-14 {
                last = 0.0;
            }
            if last >= 0.0 {
                x[free] = last;
                best.offer(form.eval(&x), &x);
                evaluated += 1;
            }
        }
        // Odometer increment over the free coordinates.
        let mut pos = 0;
        loop {
            if pos == free {
                return evaluated;
            }
            counter[pos] += 1;
            if counter[pos] <= res {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
}

fn local_resolution(n: usize, free: usize) -> usize {
    let cap = (MAX_LOCAL_POINTS as f64).powf(1.0 / free as f64).floor() as usize;
    let res = n.min(cap.saturating_sub(1)).max(2);
    res - res % 2
}

/// Grid minimum of `T x^m` on the simplex, plus optional random samples and
/// local refinement around the incumbent.
pub fn min_on_simplex(t: &SymmetricTensor, cfg: &OracleConfig) -> Result<OracleResult> {
    cfg.validate()?;
    let dim = t.dim();
    let form = t.form();
    let (mut best, mut evaluated) = scan_lattice(&form, dim, cfg.resolution);

    if cfg.samples > 0 && dim > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut x = Vec::with_capacity(dim);
        for _ in 0..cfg.samples {
            random_simplex_point(&mut rng, dim, &mut x);
            best.offer(form.eval(&x), &x);
        }
        evaluated += cfg.samples;
    }

    if dim > 1 {
        let res = local_resolution(cfg.resolution, dim - 1);
        let mut radius = 1.0 / cfg.resolution as f64;
        for _ in 0..cfg.refine_rounds {
            evaluated += refine_once(&form, &mut best, radius, res);
            radius *= 2.0 / res as f64;
        }
    }

    // The zero form is copositive outright; no band is needed to say so.
    let classification = if t.nonzero_entries().next().is_none() {
        Classification::CopositiveUpToBand
    } else {
        classify(best.value, cfg.band, band_scale(t))
    };
    Ok(OracleResult {
        min_value: best.value,
        argmin: best.point,
        resolution_used: cfg.resolution,
        classification,
        points_evaluated: evaluated,
    })
}
