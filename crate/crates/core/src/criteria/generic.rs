//! Shape-independent checks.

use super::{name, Certificate, Checks, Criterion, Outcome};
use crate::tensor::SymmetricTensor;

/// Every ordered tuple `(i2, ..., im)` over `1..=dim`.
fn ordered_tuples(len: usize, dim: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut tuple = vec![0; len];
        for slot in tuple.iter_mut().rev() {
            *slot = k % dim + 1;
            k /= dim;
        }
        tuple
    })
}

/// Refuted if some diagonal entry is negative (then `T e_i^m < 0`),
/// otherwise Unknown.
pub fn diag_necessity(t: &SymmetricTensor) -> Certificate {
    let mut ck = Checks::new();
    for i in 1..=t.dim() {
        let idx = vec![i; t.order()];
        ck.ge(None, format!("{} >= 0", name('t', &idx)), t.get(&idx), 0.0);
    }
    let mut cert = ck.finish(Criterion::Diag, &[]);
    if cert.outcome == Outcome::Certified {
        cert.outcome = Outcome::Unknown;
    }
    cert
}

/// For each `i`: `t_{i..i} + sum of min(t_{i i2..im}, 0)` over ordered
/// tuples `(i2..im) != (i..i)` is positive. Implies strict copositivity.
pub fn neg_slice_strict(t: &SymmetricTensor) -> Certificate {
    let (m, n) = t.shape();
    let mut ck = Checks::new();
    for i in 1..=n {
        let diag = t.diagonal(i);
        let mut full = vec![i; m];
        let neg: f64 = ordered_tuples(m - 1, n)
            .filter(|tail| tail.iter().any(|&k| k != i))
            .map(|tail| {
                full[1..].copy_from_slice(&tail);
                t.get(&full).min(0.0)
            })
            .sum();
        ck.gt(
            None,
            format!("{} + sum of negative slice-{i} entries > 0", name('t', &vec![i; m])),
            diag + neg,
            0.0,
        );
    }
    ck.finish(Criterion::NegSlice, &[])
}

/// For each `i`: the slice sum `s_i = sum over ordered (i2..im) of t_{i i2..im}`
/// is positive and `s_i / n^(m-1)` exceeds every off-diagonal entry of the
/// slice. Implies strict copositivity.
pub fn slice_mean_strict(t: &SymmetricTensor) -> Certificate {
    let (m, n) = t.shape();
    let count = n.pow((m - 1) as u32) as f64;
    let mut ck = Checks::new();
    for i in 1..=n {
        let mut full = vec![i; m];
        let mut sum = 0.0;
        let mut max_off = f64::NEG_INFINITY;
        for tail in ordered_tuples(m - 1, n) {
            full[1..].copy_from_slice(&tail);
            let v = t.get(&full);
            sum += v;
            if tail.iter().any(|&k| k != i) {
                max_off = max_off.max(v);
            }
        }
        ck.gt(None, format!("slice-{i} sum > 0"), sum, 0.0);
        if max_off.is_finite() {
            ck.gt(
                None,
                format!("slice-{i} sum / {n}^{} > max off-diagonal slice-{i} entry", m - 1),
                sum / count,
                max_off,
            );
        }
    }
    ck.finish(Criterion::SliceMean, &[])
}
