//! Closed-form copositivity criteria.
//!
//! Each criterion evaluates every one of its inequalities (no short
//! circuiting) and returns a [`Certificate`] recording the value and status
//! of each. Only [`Criterion::Diag`] and [`Criterion::ExactC3D2`] are exact
//! and may return [`Outcome::Refuted`]; the others certify or stay silent.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{CoposError, Result};
use crate::tensor::SymmetricTensor;

mod fourth;
mod generic;
mod third;

pub use fourth::{
    disc_c4d2, disc_c4d3, sos_c4d3, split_c4d3, split_decompose, sqrt_c4d2, sqrt_c4d3,
};
pub use generic::{diag_necessity, neg_slice_strict, slice_mean_strict};
pub use third::{disc_c3d3, exact_c3d2, mixed_c3d2, sqrt_c3d2, sqrt_c3d3};

/// Result of a single criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Certified,
    Refuted,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Certified => "certified",
            Outcome::Refuted => "refuted",
            Outcome::Unknown => "unknown",
        })
    }
}

/// Catalog of criteria, in the order [`certify_all`] runs them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    /// Diagonal entries must be nonnegative (exact necessity).
    Diag,
    /// Order 3, dim 2: exact discriminant characterization.
    ExactC3D2,
    /// Order 3, dim 2: square-root thresholds.
    SqrtC3D2,
    /// Order 3, dim 2: quadratic factor bounds.
    MixedC3D2,
    /// Order 3, dim 3: pairwise discriminants.
    DiscC3D3,
    /// Order 3, dim 3: pairwise square-root thresholds.
    SqrtC3D3,
    /// Order 4, dim 2: discriminant of a cubic factor.
    DiscC4D2,
    /// Order 4, dim 2: square-root thresholds of a cubic factor.
    SqrtC4D2,
    /// Order 4, dim 3: quadratic pairs plus cubic-factor discriminants.
    DiscC4D3,
    /// Order 4, dim 3: quadratic pairs plus cubic-factor thresholds.
    SqrtC4D3,
    /// Order 4, dim 3: squares-plus-remainder decomposition.
    SosC4D3,
    /// Order 4, dim 3: split into three order-3 forms.
    SplitC4D3,
    /// Any shape: diagonal dominates the negative entries of its slice.
    NegSlice,
    /// Any shape: slice mean dominates every off-diagonal slice entry.
    SliceMean,
}

impl Criterion {
    pub const ALL: [Criterion; 14] = [
        Criterion::Diag,
        Criterion::ExactC3D2,
        Criterion::SqrtC3D2,
        Criterion::MixedC3D2,
        Criterion::DiscC3D3,
        Criterion::SqrtC3D3,
        Criterion::DiscC4D2,
        Criterion::SqrtC4D2,
        Criterion::DiscC4D3,
        Criterion::SqrtC4D3,
        Criterion::SosC4D3,
        Criterion::SplitC4D3,
        Criterion::NegSlice,
        Criterion::SliceMean,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Criterion::Diag => "diag",
            Criterion::ExactC3D2 => "exact-c3d2",
            Criterion::SqrtC3D2 => "sqrt-c3d2",
            Criterion::MixedC3D2 => "mixed-c3d2",
            Criterion::DiscC3D3 => "disc-c3d3",
            Criterion::SqrtC3D3 => "sqrt-c3d3",
            Criterion::DiscC4D2 => "disc-c4d2",
            Criterion::SqrtC4D2 => "sqrt-c4d2",
            Criterion::DiscC4D3 => "disc-c4d3",
            Criterion::SqrtC4D3 => "sqrt-c4d3",
            Criterion::SosC4D3 => "sos-c4d3",
            Criterion::SplitC4D3 => "split-c4d3",
            Criterion::NegSlice => "neg-slice",
            Criterion::SliceMean => "slice-mean",
        }
    }

    /// `(order, dim)` the criterion is stated for; `None` means any shape.
    pub fn shape(self) -> Option<(usize, usize)> {
        match self {
            Criterion::Diag | Criterion::NegSlice | Criterion::SliceMean => None,
            Criterion::ExactC3D2 | Criterion::SqrtC3D2 | Criterion::MixedC3D2 => Some((3, 2)),
            Criterion::DiscC3D3 | Criterion::SqrtC3D3 => Some((3, 3)),
            Criterion::DiscC4D2 | Criterion::SqrtC4D2 => Some((4, 2)),
            Criterion::DiscC4D3
            | Criterion::SqrtC4D3
            | Criterion::SosC4D3
            | Criterion::SplitC4D3 => Some((4, 3)),
        }
    }

    pub fn applies_to(self, order: usize, dim: usize) -> bool {
        self.shape().is_none_or(|s| s == (order, dim))
    }

    /// Exact criteria are both necessary and sufficient and may refute.
    pub fn is_exact(self) -> bool {
        matches!(self, Criterion::Diag | Criterion::ExactC3D2)
    }

    /// Runs this criterion on `t`. Errors only on a shape mismatch.
    pub fn run(self, t: &SymmetricTensor, opts: &CheckOptions) -> Result<Certificate> {
        match self {
            Criterion::Diag => Ok(diag_necessity(t)),
            Criterion::ExactC3D2 => exact_c3d2(t),
            Criterion::SqrtC3D2 => sqrt_c3d2(t),
            Criterion::MixedC3D2 => mixed_c3d2(t),
            Criterion::DiscC3D3 => disc_c3d3(t),
            Criterion::SqrtC3D3 => sqrt_c3d3(t),
            Criterion::DiscC4D2 => disc_c4d2(t),
            Criterion::SqrtC4D2 => sqrt_c4d2(t),
            Criterion::DiscC4D3 => disc_c4d3(t),
            Criterion::SqrtC4D3 => sqrt_c4d3(t),
            Criterion::SosC4D3 => sos_c4d3(t, opts.strict),
            Criterion::SplitC4D3 => split_c4d3(t),
            Criterion::NegSlice => Ok(neg_slice_strict(t)),
            Criterion::SliceMean => Ok(slice_mean_strict(t)),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Criterion {
    type Err = CoposError;

    fn from_str(s: &str) -> Result<Self> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| CoposError::InvalidConfig(format!("unknown criterion {s:?}")))
    }
}

impl Serialize for Criterion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

/// One inequality of a criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    /// Alternative system this inequality belongs to; `None` when it is
    /// required by every alternative.
    pub branch: Option<String>,
    pub description: String,
    /// `lhs - rhs`, so the inequality reads `value >= 0` (or `> 0`).
    pub value: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub criterion: Criterion,
    pub outcome: Outcome,
    /// Alternatives whose inequalities all hold.
    pub fired: Vec<String>,
    pub conditions: Vec<Condition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    /// Conditions that `outcome == Certified` relies on.
    pub fn supporting_conditions(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(move |c| match &c.branch {
            None => true,
            Some(b) => self.fired.iter().any(|f| f == b),
        })
    }

    /// Smallest recorded margin, used to locate the tightest inequality.
    pub fn min_margin(&self) -> f64 {
        self.conditions
            .iter()
            .map(|c| c.value)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Options shared by all criteria.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Turns the non-strict inequalities of [`Criterion::SosC4D3`] into
    /// strict ones. The other criteria have no strict form and ignore it.
    pub strict: bool,
    /// Restricts [`certify_all`] to these criteria; `None` runs all that
    /// apply.
    pub only: Option<Vec<Criterion>>,
}

/// Accumulates conditions for one criterion.
#[derive(Debug, Default)]
pub(crate) struct Checks {
    conditions: Vec<Condition>,
}

impl Checks {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, branch: Option<&str>, description: String, value: f64, satisfied: bool) -> bool {
        self.conditions.push(Condition {
            branch: branch.map(str::to_string),
            description,
            value,
            satisfied,
        });
        satisfied
    }

    /// Records `lhs >= rhs`.
    pub(crate) fn ge(&mut self, branch: Option<&str>, desc: impl Into<String>, lhs: f64, rhs: f64) -> bool {
        self.push(branch, desc.into(), lhs - rhs, lhs >= rhs)
    }

    /// Records `lhs > rhs`.
    pub(crate) fn gt(&mut self, branch: Option<&str>, desc: impl Into<String>, lhs: f64, rhs: f64) -> bool {
        self.push(branch, desc.into(), lhs - rhs, lhs > rhs)
    }

    /// `lhs > rhs` when `strict`, else `lhs >= rhs`.
    pub(crate) fn cmp(
        &mut self,
        strict: bool,
        branch: Option<&str>,
        desc: impl Into<String>,
        lhs: f64,
        rhs: f64,
    ) -> bool {
        let desc = desc.into();
        if strict {
            self.gt(branch, desc.replace(">=", ">"), lhs, rhs)
        } else {
            self.ge(branch, desc, lhs, rhs)
        }
    }

    fn branch_holds(&self, label: Option<&str>) -> bool {
        self.conditions
            .iter()
            .filter(|c| c.branch.as_deref() == label)
            .all(|c| c.satisfied)
    }

    /// Certified when the common conditions hold and either there are no
    /// alternatives or at least one alternative holds completely.
    pub(crate) fn finish(self, criterion: Criterion, branches: &[&str]) -> Certificate {
        let common = self.branch_holds(None);
        let fired: Vec<String> = branches
            .iter()
            .filter(|b| self.branch_holds(Some(b)))
            .map(|b| b.to_string())
            .collect();
        let holds = common && (branches.is_empty() || !fired.is_empty());
        let outcome = match (holds, criterion.is_exact()) {
            (true, _) => Outcome::Certified,
            (false, true) => Outcome::Refuted,
            (false, false) => Outcome::Unknown,
        };
        Certificate {
            criterion,
            outcome,
            fired: if holds { fired } else { Vec::new() },
            conditions: self.conditions,
            note: None,
        }
    }
}

/// Entry name such as `a1123`, with the index sorted.
pub(crate) fn name(prefix: char, idx: &[usize]) -> String {
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    let digits: String = sorted.iter().map(|i| i.to_string()).collect();
    format!("{prefix}{digits}")
}

/// Runs the exact diagonal check plus every criterion stated for `t`'s shape.
pub fn certify_all(t: &SymmetricTensor, opts: &CheckOptions) -> Vec<Certificate> {
    let (order, dim) = t.shape();
    Criterion::ALL
        .into_iter()
        .filter(|c| c.applies_to(order, dim))
        .filter(|c| opts.only.as_ref().is_none_or(|only| only.contains(c)))
        .map(|c| {
            c.run(t, opts)
                .expect("criterion filtered by shape cannot mismatch")
        })
        .collect()
}

/// Refuted if an exact check refutes, else Certified if any check
/// certifies, else Unknown.
pub fn aggregate(certs: &[Certificate]) -> Outcome {
    if certs.iter().any(|c| c.outcome == Outcome::Refuted) {
        Outcome::Refuted
    } else if certs.iter().any(|c| c.outcome == Outcome::Certified) {
        Outcome::Certified
    } else {
        Outcome::Unknown
    }
}
