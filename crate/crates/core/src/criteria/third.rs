//! Criteria for 3rd order tensors in dimension 2 and 3.
//!
//! In dimension 2, `T x^3 = x2^3 P(x1/x2)` with
//! `P(t) = g111 t^3 + 3 g112 t^2 + 3 g122 t + g222`, so every check here is a
//! cubic half-line test in disguise. Dimension 3 splits the form into three
//! binary cubics plus the `6 g123 x1 x2 x3` cross term.

use super::{name, Certificate, Checks, Criterion};
use crate::error::Result;
use crate::poly::sqrt0;
use crate::tensor::SymmetricTensor;

struct Binary {
    g111: f64,
    g112: f64,
    g122: f64,
    g222: f64,
}

fn binary(t: &SymmetricTensor) -> Binary {
    Binary {
        g111: t.get(&[1, 1, 1]),
        g112: t.get(&[1, 1, 2]),
        g122: t.get(&[1, 2, 2]),
        g222: t.get(&[2, 2, 2]),
    }
}

/// Necessary and sufficient test for order 3, dimension 2.
///
/// Copositive iff (1) all four entries are nonnegative, or (2)
/// `max(g111, g222) > 0`, `g111, g222 >= 0` and
/// `4 g111 g122^3 + 4 g112^3 g222 + g111^2 g222^2 - 6 g111 g112 g122 g222 - 3 g112^2 g122^2 >= 0`.
pub fn exact_c3d2(t: &SymmetricTensor) -> Result<Certificate> {
    t.expect_shape(3, 2)?;
    let Binary { g111, g112, g122, g222 } = binary(t);
    let mut ck = Checks::new();
    ck.ge(None, "g111 >= 0", g111, 0.0);
    ck.ge(None, "g222 >= 0", g222, 0.0);
    ck.ge(Some("(1)"), "g112 >= 0", g112, 0.0);
    ck.ge(Some("(1)"), "g122 >= 0", g122, 0.0);
    ck.gt(Some("(2)"), "max(g111, g222) > 0", g111.max(g222), 0.0);
    let disc = 4.0 * g111 * g122.powi(3) + 4.0 * g112.powi(3) * g222 + g111 * g111 * g222 * g222
        - 6.0 * g111 * g112 * g122 * g222
        - 3.0 * g112 * g112 * g122 * g122;
    ck.ge(
        Some("(2)"),
        "4 g111 g122^3 + 4 g112^3 g222 + g111^2 g222^2 - 6 g111 g112 g122 g222 - 3 g112^2 g122^2 >= 0",
        disc,
        0.0,
    );
    Ok(ck.finish(Criterion::ExactC3D2, &["(1)", "(2)"]))
}

/// `g112 >= (g111 - 2 sqrt(g111 g222))/3` and the mirrored bound on `g122`.
pub fn sqrt_c3d2(t: &SymmetricTensor) -> Result<Certificate> {
    t.expect_shape(3, 2)?;
    let Binary { g111, g112, g122, g222 } = binary(t);
    let r = 2.0 * sqrt0(g111 * g222);
    let mut ck = Checks::new();
    ck.ge(None, "g111 >= 0", g111, 0.0);
    ck.ge(None, "g222 >= 0", g222, 0.0);
    ck.ge(None, "g112 >= (g111 - 2 sqrt(g111 g222))/3", g112, (g111 - r) / 3.0);
    ck.ge(None, "g122 >= (g222 - 2 sqrt(g111 g222))/3", g122, (g222 - r) / 3.0);
    Ok(ck.finish(Criterion::SqrtC3D2, &[]))
}

/// Splits `P(t)` as `t g(t) + g222` or `g111 t^3 + f(t)` and applies the
/// quadratic test to the quadratic part.
pub fn mixed_c3d2(t: &SymmetricTensor) -> Result<Certificate> {
    t.expect_shape(3, 2)?;
    let Binary { g111, g112, g122, g222 } = binary(t);
    let mut ck = Checks::new();
    ck.ge(None, "g111 >= 0", g111, 0.0);
    ck.ge(None, "g222 >= 0", g222, 0.0);
    ck.ge(Some("(1)"), "g122 >= 0", g122, 0.0);
    ck.ge(
        Some("(1)"),
        "g112 >= -(2/3) sqrt(3 g122 g111)",
        g112,
        -2.0 * sqrt0(3.0 * g122 * g111) / 3.0,
    );
    ck.ge(Some("(2)"), "g112 >= 0", g112, 0.0);
    ck.ge(
        Some("(2)"),
        "g122 >= -(2/3) sqrt(3 g112 g222)",
        g122,
        -2.0 * sqrt0(3.0 * g112 * g222) / 3.0,
    );
    Ok(ck.finish(Criterion::MixedC3D2, &["(1)", "(2)"]))
}

const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

fn nonneg_base(ck: &mut Checks, t: &SymmetricTensor) {
    for i in 1..=3 {
        ck.ge(None, format!("{} >= 0", name('g', &[i, i, i])), t.get(&[i, i, i]), 0.0);
    }
    ck.ge(None, "g123 >= 0", t.get(&[1, 2, 3]), 0.0);
}

/// Nonnegative diagonal and `g123`, plus for each coordinate pair `(i, j)`
/// `32 g_iii g_ijj^3 + 32 g_iij^3 g_jjj + g_iii^2 g_jjj^2 - 24 g_iii g_iij g_ijj g_jjj - 48 g_iij^2 g_ijj^2 >= 0`.
pub fn disc_c3d3(t: &SymmetricTensor) -> Result<Certificate> {
    t.expect_shape(3, 3)?;
    let mut ck = Checks::new();
    nonneg_base(&mut ck, t);
    for (i, j) in PAIRS {
        let (a, b, c, d) = (
            t.get(&[i, i, i]),
            t.get(&[i, i, j]),
            t.get(&[i, j, j]),
            t.get(&[j, j, j]),
        );
        let v = 32.0 * a * c.powi(3) + 32.0 * b.powi(3) * d + a * a * d * d
            - 24.0 * a * b * c * d
            - 48.0 * b * b * c * c;
        let (ni, nij, nijj, nj) = (
            name('g', &[i, i, i]),
            name('g', &[i, i, j]),
            name('g', &[i, j, j]),
            name('g', &[j, j, j]),
        );
        ck.ge(
            None,
            format!(
                "32 {ni} {nijj}^3 + 32 {nij}^3 {nj} + {ni}^2 {nj}^2 - 24 {ni} {nij} {nijj} {nj} - 48 {nij}^2 {nijj}^2 >= 0"
            ),
            v,
            0.0,
        );
    }
    Ok(ck.finish(Criterion::DiscC3D3, &[]))
}

/// Nonnegative diagonal and `g123`, plus
/// `g_iij >= (g_iii - 2 sqrt(g_iii g_jjj))/6` and
/// `g_ijj >= (g_jjj - 2 sqrt(g_iii g_jjj))/6` for each pair.
pub fn sqrt_c3d3(t: &SymmetricTensor) -> Result<Certificate> {
    t.expect_shape(3, 3)?;
    let mut ck = Checks::new();
    nonneg_base(&mut ck, t);
    for (i, j) in PAIRS {
        let (gi, gj) = (t.get(&[i, i, i]), t.get(&[j, j, j]));
        let r = 2.0 * sqrt0(gi * gj);
        let (ni, nj) = (name('g', &[i, i, i]), name('g', &[j, j, j]));
        let nij = name('g', &[i, i, j]);
        let nijj = name('g', &[i, j, j]);
        ck.ge(
            None,
            format!("{nij} >= ({ni} - 2 sqrt({ni} {nj}))/6"),
            t.get(&[i, i, j]),
            (gi - r) / 6.0,
        );
        ck.ge(
            None,
            format!("{nijj} >= ({nj} - 2 sqrt({ni} {nj}))/6"),
            t.get(&[i, j, j]),
            (gj - r) / 6.0,
        );
    }
    Ok(ck.finish(Criterion::SqrtC3D3, &[]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::Outcome;

    fn c3d2(g: [f64; 4]) -> SymmetricTensor {
        SymmetricTensor::from_pairs(
            3,
            2,
            &[(&[1, 1, 1], g[0]), (&[1, 1, 2], g[1]), (&[1, 2, 2], g[2]), (&[2, 2, 2], g[3])],
        )
        .unwrap()
    }

    fn c3d3(pairs: &[(&[usize], f64)]) -> SymmetricTensor {
        let mut all: Vec<(&[usize], f64)> = vec![(&[1, 1, 1], 1.0), (&[2, 2, 2], 1.0), (&[3, 3, 3], 1.0)];
        all.extend_from_slice(pairs);
        SymmetricTensor::from_pairs(3, 3, &all).unwrap()
    }

    #[test]
    fn exact_examples() {
        let c = exact_c3d2(&c3d2([1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(c.outcome, Outcome::Certified);
        assert_eq!(c.fired, vec!["(1)", "(2)"]);

        let t = c3d2([1.0, 0.0, -1.0, 1.0]);
        let c = exact_c3d2(&t).unwrap();
        assert_eq!(c.outcome, Outcome::Refuted);
        let disc = c.conditions.last().unwrap();
        assert_eq!(disc.value, -3.0);
        assert_eq!(t.evaluate(&[0.5, 0.5]).unwrap(), -0.125);

        let c = exact_c3d2(&c3d2([0.0, 1.0, 1.0, 0.0])).unwrap();
        assert_eq!(c.outcome, Outcome::Certified);
        assert_eq!(c.fired, vec!["(1)"]);
    }

    #[test]
    fn sqrt_examples() {
        let third = 1.0 / 3.0;
        let c = sqrt_c3d2(&c3d2([1.0, -third, -third, 1.0])).unwrap();
        assert_eq!(c.outcome, Outcome::Certified);
        assert!(c.conditions[2..].iter().all(|k| k.value == 0.0));
        assert_eq!(sqrt_c3d2(&c3d2([1.0, 0.0, 0.0, 1.0])).unwrap().outcome, Outcome::Certified);
        assert_eq!(sqrt_c3d2(&c3d2([0.0, 0.0, -0.1, 0.0])).unwrap().outcome, Outcome::Unknown);
    }

    #[test]
    fn mixed_examples() {
        let c = mixed_c3d2(&c3d2([1.0, -2.0, 3.0, 1.0])).unwrap();
        assert_eq!(c.outcome, Outcome::Certified);
        assert_eq!(c.fired, vec!["(1)"]);
        assert_eq!(c.conditions[3].value, 0.0);
        assert_eq!(mixed_c3d2(&c3d2([0.0; 4])).unwrap().outcome, Outcome::Certified);
        assert_eq!(mixed_c3d2(&c3d2([1.0, -3.0, 3.0, 1.0])).unwrap().outcome, Outcome::Unknown);
    }

    #[test]
    fn disc3_examples() {
        let c = disc_c3d3(&c3d3(&[])).unwrap();
        assert_eq!(c.outcome, Outcome::Certified);
        assert!(c.conditions[4..].iter().all(|k| k.value == 1.0));

        let c = disc_c3d3(&c3d3(&[(&[1, 1, 2], -0.25), (&[1, 2, 2], -0.25)])).unwrap();
        assert_eq!(c.outcome, Outcome::Unknown);
        assert_eq!(c.conditions[4].value, -0.5 - 0.5 + 1.0 - 1.5 - 0.1875);

        let c = disc_c3d3(&c3d3(&[(&[1, 2, 3], -0.1)])).unwrap();
        assert_eq!(c.outcome, Outcome::Unknown);
    }

    #[test]
    fn sqrt3_examples() {
        let s = -1.0 / 6.0;
        let pairs: Vec<(&[usize], f64)> = vec![
            (&[1, 1, 2], s),
            (&[1, 2, 2], s),
            (&[1, 1, 3], s),
            (&[1, 3, 3], s),
            (&[2, 2, 3], s),
            (&[2, 3, 3], s),
        ];
        assert_eq!(sqrt_c3d3(&c3d3(&pairs)).unwrap().outcome, Outcome::Certified);
        assert_eq!(sqrt_c3d3(&c3d3(&[])).unwrap().outcome, Outcome::Certified);
        let mut with_neg = pairs.clone();
        with_neg.push((&[1, 2, 3], -0.01));
        assert_eq!(sqrt_c3d3(&c3d3(&with_neg)).unwrap().outcome, Outcome::Unknown);
    }
}
