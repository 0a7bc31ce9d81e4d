//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use copos::criteria::{certify_all, split_decompose, CheckOptions, Criterion, Outcome};
use copos::oracle::{min_on_simplex, Classification, OracleConfig};
use copos::poly::{cubic_min_bruteforce, cubic_nonneg_exact, cubic_nonneg_sufficient, quad_nonneg, CubicCoeffs, QuadCoeffs};
use copos::tensor::SymmetricTensor;
use copos::vacuum::{check_at, stability_printed, stability_theorem, Z3Params};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{biased_tensor, golden_inputs, naive_eval, run_bin, uniform_tensor};

const DRAWS: usize = 10_000;
const BAND: f64 = 1e-6;

type Check = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn rng(stream: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ i as u64)
}

fn oracle_cfg(dim: usize) -> OracleConfig {
    OracleConfig {
        band: BAND,
        ..OracleConfig::for_dim(dim)
    }
}

fn c3d2_exact_vs_oracle() -> Verdict {
    let start = Instant::now();
    let cfg = OracleConfig {
        resolution: 2000,
        refine_rounds: 3,
        band: BAND,
        samples: 0,
        seed: 0,
    };
    let rows: Vec<(Outcome, Classification)> = (0..DRAWS)
        .into_par_iter()
        .map(|i| {
            let t = uniform_tensor(&mut rng(1, i), 3, 2);
            let exact = copos::criteria::exact_c3d2(&t).unwrap().outcome;
            (exact, min_on_simplex(&t, &cfg).unwrap().classification)
        })
        .collect();
    let elapsed = start.elapsed();
    let definitive = rows.iter().filter(|r| r.1 != Classification::Indeterminate).count();
    let disagree = rows
        .iter()
        .filter(|(e, c)| {
            matches!(
                (e, c),
                (Outcome::Certified, Classification::NotCopositive) | (Outcome::Refuted, Classification::CopositiveUpToBand)
            )
        })
        .count();
    Verdict {
        pass: disagree == 0 && definitive > 0 && elapsed < Duration::from_secs(60),
        detail: format!(
            "{disagree} disagreements over {DRAWS} draws ({definitive} definitive), {:.2} s",
            elapsed.as_secs_f64()
        ),
    }
}

fn soundness_sweep() -> Verdict {
    let start = Instant::now();
    let mut violations = Vec::new();
    let mut certified_total = 0usize;
    for (s, &(order, dim)) in [(3, 2), (3, 3), (4, 2), (4, 3)].iter().enumerate() {
        for biased in [false, true] {
            let cfg = oracle_cfg(dim);
            let found: Vec<(usize, Vec<Criterion>)> = (0..DRAWS)
                .into_par_iter()
                .filter_map(|i| {
                    let mut r = rng(10 + 2 * s as u64 + biased as u64, i);
                    let t = if biased {
                        biased_tensor(&mut r, order, dim, 1.0)
                    } else {
                        uniform_tensor(&mut r, order, dim)
                    };
                    let mut certs = certify_all(&t, &CheckOptions::default());
                    certs.extend(certify_all(&t, &CheckOptions { strict: true, only: None }));
                    let mut certified: Vec<Criterion> = certs
                        .iter()
                        .filter(|c| c.outcome == Outcome::Certified)
                        .map(|c| c.criterion)
                        .collect();
                    certified.sort_by_key(|c| c.id());
                    certified.dedup();
                    if certified.is_empty() {
                        return None;
                    }
                    let o = min_on_simplex(&t, &cfg).unwrap();
                    let bad = if o.classification == Classification::NotCopositive {
                        certified.clone()
                    } else {
                        Vec::new()
                    };
                    Some((i, bad))
                })
                .collect();
            certified_total += found.len();
            for (i, bad) in found {
                if !bad.is_empty() {
                    violations.push(format!("shape ({order},{dim}) biased={biased} draw {i}: {bad:?}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    for v in violations.iter().take(5) {
        eprintln!("  violation: {v}");
    }
    Verdict {
        pass: violations.is_empty() && elapsed < Duration::from_secs(600),
        detail: format!(
            "{} violations; {certified_total} certified tensors checked by the oracle out of {} draws, {:.2} s",
            violations.len(),
            8 * DRAWS,
            elapsed.as_secs_f64()
        ),
    }
}

fn lemma_oracle_agreement() -> Verdict {
    const GRID: usize = 10_000;
    let mut disagree = 0;
    let mut compared = (0, 0);
    for i in 0..DRAWS {
        let mut r = rng(20, i);
        let mut c = || r.gen_range(-1.0..=1.0);
        let cc = CubicCoeffs::new(c(), c(), c(), c());
        let qc = QuadCoeffs::new(c(), c(), c());
        let scan = cubic_min_bruteforce(cc, GRID).unwrap();
        let scale = 1.0 + [cc.a, cc.b, cc.c, cc.d].iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if scan.min_value.abs() > 1e-9 * scale {
            compared.0 += 1;
            if cubic_nonneg_exact(cc).unwrap() != (scan.min_value >= 0.0) {
                disagree += 1;
            }
        }
        let qscan = cubic_min_bruteforce(CubicCoeffs::new(0.0, qc.alpha, qc.beta, qc.gamma), GRID).unwrap();
        let qscale = 1.0 + [qc.alpha, qc.beta, qc.gamma].iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if qscan.min_value.abs() > 1e-9 * qscale {
            compared.1 += 1;
            if quad_nonneg(qc).unwrap() != (qscan.min_value >= 0.0) {
                disagree += 1;
            }
        }
    }
    Verdict {
        pass: disagree == 0,
        detail: format!(
            "{disagree} disagreements ({} cubic, {} quadratic tuples outside the band)",
            compared.0, compared.1
        ),
    }
}

fn implication_chains() -> Verdict {
    let mut violations = [0usize; 3];
    let mut fired = [0usize; 3];
    for (stream, biased) in [(1u64, false), (30, true)] {
        for i in 0..DRAWS {
            let mut r = rng(stream, i);
            let t = if biased {
                biased_tensor(&mut r, 3, 2, 1.0)
            } else {
                uniform_tensor(&mut r, 3, 2)
            };
            let exact = copos::criteria::exact_c3d2(&t).unwrap().outcome == Outcome::Certified;
            for (k, c) in [copos::criteria::sqrt_c3d2(&t), copos::criteria::mixed_c3d2(&t)].into_iter().enumerate() {
                if c.unwrap().outcome == Outcome::Certified {
                    fired[k] += 1;
                    if !exact {
                        violations[k] += 1;
                    }
                }
            }
        }
    }
    for i in 0..DRAWS {
        let mut r = rng(20, i);
        let mut c = || r.gen_range(-1.0..=1.0);
        let cc = CubicCoeffs::new(c(), c(), c(), c());
        for cc in [cc, CubicCoeffs::new(cc.a.abs(), cc.b, cc.c, cc.d.abs())] {
            if cubic_nonneg_sufficient(cc).unwrap() {
                fired[2] += 1;
                if !cubic_nonneg_exact(cc).unwrap() {
                    violations[2] += 1;
                }
            }
        }
    }
    Verdict {
        pass: violations.iter().all(|&v| v == 0),
        detail: format!(
            "sqrt-c3d2 => exact-c3d2: {} of {}; mixed-c3d2 => exact-c3d2: {} of {}; sufficient => exact cubic: {} of {} violations",
            violations[0], fired[0], violations[1], fired[1], violations[2], fired[2]
        ),
    }
}

fn vacuum_reproduction() -> Verdict {
    let start = Instant::now();
    let unit = |v: f64, rho: f64| Z3Params {
        l1: 1.0,
        l2: 1.0,
        ls: 1.0,
        abs_ls12: v / rho,
        rho,
        ..Z3Params::default()
    };
    let mut problems = Vec::new();
    for rho in [1.0, 0.5, 0.25] {
        for k in 0..=2000 {
            let v = k as f64 / 1000.0;
            let p = unit(v, rho);
            let pr = stability_printed(&p, false).unwrap().outcome == Outcome::Certified;
            let th = stability_theorem(&p, false).unwrap().outcome == Outcome::Certified;
            let (want_pr, want_th) = (v * 9.0 <= 8.0, v * 9.0 <= 4.0);
            // Only grid points clear of the exact boundaries are compared.
            let near = |b: f64| (v - b).abs() < 1e-9;
            if !near(8.0 / 9.0) && pr != want_pr {
                problems.push(format!("printed route at |ls12| rho = {v}, rho = {rho}"));
            }
            if !near(4.0 / 9.0) && th != want_th {
                problems.push(format!("theorem route at |ls12| rho = {v}, rho = {rho}"));
            }
        }
    }
    let pr = stability_printed(&unit(8.0 / 9.0, 1.0), false).unwrap();
    if pr.outcome != Outcome::Certified || pr.mixed_margin().abs() >= 1e-12 {
        problems.push(format!("printed boundary margin {}", pr.mixed_margin()));
    }
    let th = stability_theorem(&unit(4.0 / 9.0, 1.0), false).unwrap();
    if th.outcome != Outcome::Certified || th.mixed_margin().abs() >= 1e-12 {
        problems.push(format!("theorem boundary margin {}", th.mixed_margin()));
    }
    let r = check_at(&unit(4.0, 1.0), false, Some(&OracleConfig::for_dim(3))).unwrap();
    let o = r.oracle.unwrap();
    let t = copos::vacuum::coupling_tensor(&unit(4.0, 1.0)).unwrap();
    let bary = t.evaluate(&[1.0 / 3.0; 3]).unwrap();
    if o.min_value > -1.0 / 81.0 + 1e-12 || (bary + 1.0 / 81.0).abs() > 1e-15 {
        problems.push(format!("oracle min {} (barycenter {bary})", o.min_value));
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        problems.push(format!("runtime {:.3} s", elapsed.as_secs_f64()));
    }
    for p in problems.iter().take(5) {
        eprintln!("  problem: {p}");
    }
    Verdict {
        pass: problems.is_empty(),
        detail: format!(
            "printed margin at 8/9 = {:e}, theorem margin at 4/9 = {:e}, oracle min at |ls12| rho = 4 is {:.9} <= -1/81; {} problems, {:.3} s",
            pr.mixed_margin(),
            th.mixed_margin(),
            o.min_value,
            problems.len(),
            elapsed.as_secs_f64()
        ),
    }
}

fn decomposition_identity() -> Verdict {
    let mut worst = 0.0_f64;
    for i in 0..1000 {
        let mut r = rng(40, i);
        let t = uniform_tensor(&mut r, 4, 3);
        let x: Vec<f64> = (0..3).map(|_| r.gen_range(0.0..=1.0)).collect();
        let lhs = t.evaluate(&x).unwrap();
        let parts = split_decompose(&t).unwrap();
        let rhs: f64 = parts
            .iter()
            .zip(&x)
            .map(|(g, &xi)| xi * g.evaluate(&x).unwrap())
            .sum();
        let abs_t = SymmetricTensor::build(4, 3, t.nonzero_entries().map(|(k, v)| (k.clone(), v.abs()))).unwrap();
        let scale = lhs.abs().max(abs_t.evaluate(&x).unwrap());
        worst = worst.max((lhs - rhs).abs() / scale);
    }
    Verdict {
        pass: worst <= 1e-12,
        detail: format!("max relative error {worst:e} over 1000 pairs"),
    }
}

fn evaluation_correctness() -> Verdict {
    let mut worst = 0.0_f64;
    for (s, &(m, n)) in [(3, 2), (3, 3), (4, 2), (4, 3)].iter().enumerate() {
        for i in 0..1000 {
            let mut r = rng(50 + s as u64, i);
            let t = uniform_tensor(&mut r, m, n);
            let x: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..=1.0)).collect();
            let fast = t.evaluate(&x).unwrap();
            let form = t.form().eval(&x);
            let (naive, abs) = naive_eval(&t, &x);
            let scale = naive.abs().max(abs);
            worst = worst.max((fast - naive).abs() / scale).max((form - naive).abs() / scale);
        }
    }
    Verdict {
        pass: worst <= 1e-12,
        detail: format!("max relative error {worst:e} over 4 x 1000 tensors"),
    }
}

fn report_determinism() -> Verdict {
    let inputs = golden_inputs();
    let mut mismatches = Vec::new();
    for (stem, args) in &inputs {
        let a = run_bin(args, Some(1), &[]);
        let b = run_bin(args, Some(1), &[]);
        let c = run_bin(args, Some(4), &[]);
        if a.stdout.is_empty() || a.stdout != b.stdout || a.stdout != c.stdout || a.code != c.code {
            mismatches.push(stem.clone());
        }
    }
    Verdict {
        pass: inputs.len() >= 12 && mismatches.is_empty(),
        detail: format!(
            "{} of {} golden documents differ across runs or thread counts (1, 1, 4)",
            mismatches.len(),
            inputs.len()
        ),
    }
}

fn main() {
    let criteria: [Check; 8] = [
        ("exact c3d2 agrees with the oracle", c3d2_exact_vs_oracle),
        ("no criterion certifies a non-copositive tensor", soundness_sweep),
        ("half-line tests agree with brute force", lemma_oracle_agreement),
        ("implication chains", implication_chains),
        ("vacuum stability boundaries", vacuum_reproduction),
        ("split decomposition identity", decomposition_identity),
        ("evaluation matches naive summation", evaluation_correctness),
        ("report determinism", report_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        if !v.pass {
            failed += 1;
        }
        println!("acceptance {} {name}: {} ({})", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
