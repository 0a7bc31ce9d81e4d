#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use copos::tensor::{canonical_indices, SymmetricTensor};
use rand::Rng;

/// Every independent entry uniform on `[-1, 1]`.
pub fn uniform_tensor<R: Rng>(rng: &mut R, order: usize, dim: usize) -> SymmetricTensor {
    let entries = canonical_indices(order, dim)
        .into_iter()
        .map(|k| (k, rng.gen_range(-1.0..=1.0)));
    SymmetricTensor::build(order, dim, entries).unwrap()
}

/// Diagonal uniform on `[0, 1]`, the rest uniform on `[-spread, 1]`; far
/// more of these pass some criterion than fully uniform draws.
pub fn biased_tensor<R: Rng>(rng: &mut R, order: usize, dim: usize, spread: f64) -> SymmetricTensor {
    let entries = canonical_indices(order, dim).into_iter().map(|k| {
        let s = k.as_slice();
        let v = if s.iter().all(|&i| i == s[0]) {
            rng.gen_range(0.0..=1.0)
        } else {
            rng.gen_range(-spread..=1.0)
        };
        (k, v)
    });
    SymmetricTensor::build(order, dim, entries).unwrap()
}

/// `sum over all n^m ordered tuples of t_{i1..im} x_i1 ... x_im`, together
/// with the same sum over absolute values (the conditioning scale).
pub fn naive_eval(t: &SymmetricTensor, x: &[f64]) -> (f64, f64) {
    let (m, n) = t.shape();
    let mut idx = vec![1usize; m];
    let (mut sum, mut abs) = (0.0, 0.0);
    loop {
        let prod: f64 = idx.iter().map(|&i| x[i - 1]).product();
        let term = t.get(&idx) * prod;
        sum += term;
        abs += term.abs();
        let mut pos = m;
        loop {
            if pos == 0 {
                return (sum, abs);
            }
            pos -= 1;
            if idx[pos] < n {
                idx[pos] += 1;
                for slot in &mut idx[pos + 1..] {
                    *slot = 1;
                }
                break;
            }
        }
    }
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Inputs of the golden corpus as `(stem, report arguments)`, sorted.
pub fn golden_inputs() -> Vec<(String, Vec<String>)> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        if name.ends_with(".expected.json") || !name.ends_with(".json") {
            continue;
        }
        let file = path.to_string_lossy().to_string();
        if let Some(stem) = name.strip_suffix(".params.json") {
            out.push((stem.to_string(), vec!["report".into(), "--params".into(), file]));
        } else {
            let stem = name.strip_suffix(".json").unwrap();
            out.push((stem.to_string(), vec!["report".into(), file]));
        }
    }
    out.sort();
    out
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_bin(args: &[String], threads: Option<usize>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_copos"));
    cmd.args(args).env_remove("COPOS_BAND");
    if let Some(n) = threads {
        cmd.env("RAYON_NUM_THREADS", n.to_string());
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}
