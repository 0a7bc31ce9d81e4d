//! Symmetric tensors stored by canonical (sorted) multi-index.
//!
//! A symmetric tensor of order `m` and dimension `n` has one independent
//! entry per non-decreasing index tuple, `C(n+m-1, m)` in total. Every
//! lookup goes through [`MultiIndex::canonicalize`], so `get(&[1, 2, 1])`
//! and `get(&[1, 1, 2])` hit the same slot and symmetry cannot be broken.
//!
//! Indices are 1-based throughout the public surface.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{CoposError, Result};

/// An index tuple `(i1, ..., im)` with entries in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: impl Into<Vec<usize>>) -> Self {
        Self(indices.into())
    }

    /// Parses a digit string such as `"1123"`. Only single-digit indices are
    /// representable this way.
    pub fn parse_digits(s: &str) -> Result<Self> {
        let mut out = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch.to_digit(10) {
                Some(d) => out.push(d as usize),
                None => {
                    return Err(CoposError::Document(format!(
                        "index string {s:?} contains non-digit {ch:?}"
                    )))
                }
            }
        }
        Ok(Self(out))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Sorted copy of the index, after checking every entry lies in `1..=dim`.
    pub fn canonicalize(&self, dim: usize) -> Result<Self> {
        if let Some(&index) = self.0.iter().find(|&&i| i == 0 || i > dim) {
            return Err(CoposError::IndexOutOfRange { index, dim });
        }
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        Ok(Self(sorted))
    }

    /// Number of distinct orderings of this index: `m! / prod(c_j!)`.
    pub fn multiplicity(&self) -> u64 {
        multiplicity(&self.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&i| i < 10) {
            for i in &self.0 {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl From<&[usize]> for MultiIndex {
    fn from(v: &[usize]) -> Self {
        Self(v.to_vec())
    }
}

/// `m! / prod_j c_j!` where `c_j` counts occurrences of value `j` in `idx`.
pub fn multiplicity(idx: &[usize]) -> u64 {
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    let mut result = factorial(sorted.len());
    let mut run = 1;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            result /= factorial(run);
            run = 1;
        }
    }
    if !sorted.is_empty() {
        result /= factorial(run);
    }
    result
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All non-decreasing index tuples of length `order` over `1..=dim`, in
/// lexicographic order.
pub fn canonical_indices(order: usize, dim: usize) -> Vec<MultiIndex> {
    fn rec(start: usize, dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if left == 0 {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for i in start..=dim {
            cur.push(i);
            rec(i, dim, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if dim > 0 {
        rec(1, dim, order, &mut Vec::with_capacity(order), &mut out);
    }
    out
}

/// A real symmetric tensor of order `m` and dimension `n`.
///
/// Entries are keyed by canonical multi-index; absent keys read as zero and
/// exact zeros are never stored, so structural equality is value equality.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<MultiIndex, f64>,
}

impl SymmetricTensor {
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        if order == 0 || dim == 0 {
            return Err(CoposError::InvalidShape { order, dim });
        }
        Ok(Self {
            order,
            dim,
            entries: BTreeMap::new(),
        })
    }

    /// Builds a tensor from `(index, value)` pairs. Indices may be given in
    /// any order; two pairs that canonicalize to the same key must carry
    /// exactly equal values.
    pub fn build<I>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, f64)>,
    {
        let mut t = Self::zeros(order, dim)?;
        let mut seen: BTreeMap<MultiIndex, f64> = BTreeMap::new();
        for (idx, value) in entries {
            if idx.len() != order {
                return Err(CoposError::IndexLength {
                    got: idx.len(),
                    order,
                });
            }
            if !value.is_finite() {
                return Err(CoposError::NonFinite(value));
            }
            let key = idx.canonicalize(dim)?;
            match seen.get(&key) {
                Some(&prev) if prev != value => {
                    return Err(CoposError::ConflictingEntry {
                        key: key.to_string(),
                        first: prev,
                        second: value,
                    })
                }
                Some(_) => {}
                None => {
                    seen.insert(key.clone(), value);
                    t.insert(key, value);
                }
            }
        }
        Ok(t)
    }

    /// Convenience wrapper over [`build`](Self::build) for literal index slices.
    pub fn from_pairs(order: usize, dim: usize, pairs: &[(&[usize], f64)]) -> Result<Self> {
        Self::build(
            order,
            dim,
            pairs.iter().map(|(idx, v)| (MultiIndex::from(*idx), *v)),
        )
    }

    fn insert(&mut self, key: MultiIndex, value: f64) {
        if value == 0.0 {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.order, self.dim)
    }

    /// Number of independent entries, `C(n+m-1, m)`.
    pub fn independent_entries(&self) -> usize {
        binomial(self.dim + self.order - 1, self.order)
    }

    /// Entry at `idx` (any permutation). Panics if `idx` has the wrong length
    /// or an index outside `1..=dim`; use [`entry`](Self::entry) for checked
    /// access.
    pub fn get(&self, idx: &[usize]) -> f64 {
        match self.entry(idx) {
            Ok(v) => v,
            Err(e) => panic!("bad tensor index {idx:?}: {e}"),
        }
    }

    pub fn entry(&self, idx: &[usize]) -> Result<f64> {
        if idx.len() != self.order {
            return Err(CoposError::IndexLength {
                got: idx.len(),
                order: self.order,
            });
        }
        let key = MultiIndex::from(idx).canonicalize(self.dim)?;
        Ok(self.entries.get(&key).copied().unwrap_or(0.0))
    }

    /// The diagonal entry `T_{i...i}`.
    pub fn diagonal(&self, i: usize) -> f64 {
        self.get(&vec![i; self.order])
    }

    /// Stored (nonzero) entries in canonical order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `T x^m = sum over canonical entries of multiplicity * value * prod x`.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(CoposError::DimensionMismatch {
                got: x.len(),
                dim: self.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .map(|(idx, &v)| {
                let prod: f64 = idx.0.iter().map(|&i| x[i - 1]).product();
                idx.multiplicity() as f64 * v * prod
            })
            .sum())
    }

    /// The order `m-1` tensor `S` with `S_{i2...im} = T_{i i2...im}`.
    pub fn slice(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.dim {
            return Err(CoposError::IndexOutOfRange {
                index: i,
                dim: self.dim,
            });
        }
        if self.order < 2 {
            return Err(CoposError::InvalidShape {
                order: self.order - 1,
                dim: self.dim,
            });
        }
        let mut out = Self::zeros(self.order - 1, self.dim)?;
        for (idx, &v) in &self.entries {
            // Canonical keys are sorted, so removing one occurrence of `i`
            // leaves a sorted tail.
            if let Some(pos) = idx.0.iter().position(|&k| k == i) {
                let mut rest = idx.0.clone();
                rest.remove(pos);
                out.insert(MultiIndex(rest), v);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = Self {
            order: self.order,
            dim: self.dim,
            entries: BTreeMap::new(),
        };
        for (k, &v) in &self.entries {
            out.insert(k.clone(), c * v);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(CoposError::ShapeMismatch {
                order: self.order,
                dim: self.dim,
                got_order: other.order,
                got_dim: other.dim,
            });
        }
        let mut out = self.clone();
        for (k, &v) in &other.entries {
            let sum = out.entries.get(k).copied().unwrap_or(0.0) + v;
            out.insert(k.clone(), sum);
        }
        Ok(out)
    }

    pub(crate) fn expect_shape(&self, order: usize, dim: usize) -> Result<()> {
        if self.shape() == (order, dim) {
            Ok(())
        } else {
            Err(CoposError::ShapeMismatch {
                order,
                dim,
                got_order: self.order,
                got_dim: self.dim,
            })
        }
    }

    /// Flattened monomial form for repeated evaluation.
    pub fn form(&self) -> Form {
        let mut coeffs = Vec::with_capacity(self.entries.len());
        let mut indices = Vec::with_capacity(self.entries.len() * self.order);
        for (idx, &v) in &self.entries {
            coeffs.push(idx.multiplicity() as f64 * v);
            indices.extend(idx.0.iter().map(|&i| i - 1));
        }
        Form {
            order: self.order,
            dim: self.dim,
            coeffs,
            indices,
        }
    }
}

/// Precomputed `coefficient * prod x` terms of a tensor's homogeneous form.
#[derive(Debug, Clone)]
pub struct Form {
    order: usize,
    dim: usize,
    coeffs: Vec<f64>,
    indices: Vec<usize>,
}

impl Form {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates at `x` without a length check beyond a debug assertion.
    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        let mut sum = 0.0;
        for (c, idx) in self.coeffs.iter().zip(self.indices.chunks_exact(self.order)) {
            let mut p = *c;
            for &i in idx {
                p *= x[i];
            }
            sum += p;
        }
        sum
    }
}
