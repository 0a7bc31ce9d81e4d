//! Criteria for 4th order tensors in dimension 2 and 3.
//!
//! All of them peel the quartic form into pieces that the order-3 and
//! quadratic tests already handle: `A x^4 = x1 f(x) + a2222 x2^4` in
//! dimension 2, and sums of binary quadratics in `x_i^2` plus `x_i F_i(x)`
//! cubic remainders in dimension 3.

use super::{third, Certificate, Checks, Criterion, Outcome};
use crate::error::Result;
use crate::poly::sqrt0;
use crate::tensor::SymmetricTensor;

/// Entry lookup by digit string, e.g. `a(t, "1123")`.
fn a(t: &SymmetricTensor, digits: &str) -> f64 {
    let idx: Vec<usize> = digits.bytes().map(|b| (b - b'0') as usize).collect();
    t.get(&idx)
}

/// Order 4, dimension 2, with `a1111 > 0` and `a2222 > 0`: either cubic
/// factor of `A x^4 = x1 f(x) + a2222 x2^4 = a1111 x1^4 + x2 g(x)` passes the
/// exact order-3 discriminant test.
pub fn disc_c4d2(t: &SymmetricTensor) -> Result<Certificate> {
    t.expect_shape(4, 2)?;
    let (a1111, a1112, a1122, a1222, a2222) = (
        a(t, "1111"),
        a(t, "1112"),
        a(t, "1122"),
        a(t, "1222"),
        a(t, "2222"),
    );
    let mut ck = Checks::new();
    ck.gt(None, "a1111 > 0", a1111, 0.0);
    ck.gt(None, "a2222 > 0", a2222, 0.0);

    ck.ge(Some("(1)"), "a1222 >= 0", a1222, 0.0);
    let d1 = 54.0 * a1111 * a1122.powi(3) + 64.0 * a1112.powi(3) * a1222
        + 27.0 * a1111 * a1111 * a1222 * a1222
        - 108.0 * a1111 * a1112 * a1122 * a1222
        - 36.0 * a1112 * a1112 * a1122 * a1122;
    ck.ge(
        Some("(1)"),
        "54 a1111 a1122^3 + 64 a1112^3 a1222 + 27 a1111^2 a1222^2 - 108 a1111 a1112 a1122 a1222 - 36 a1112^2 a1122^2 >= 0",
        d1,
        0.0,
    );

    ck.ge(Some("(2)"), "a1112 >= 0", a1112, 0.0);
    let d2 = 64.0 * a1112 * a1222.powi(3) + 54.0 * a1122.powi(3) * a2222
        + 27.0 * a1112 * a1112 * a2222 * a2222
        - 108.0 * a1112 * a1122 * a1222 * a2222
        - 36.0 * a1122 * a1122 * a1222 * a1222;
    ck.ge(
        Some("(2)"),
        "64 a1112 a1222^3 + 54 a1122^3 a2222 + 27 a1112^2 a2222^2 - 108 a1112 a1122 a1222 a2222 - 36 a1122^2 a1222^2 >= 0",
        d2,
        0.0,
    );
    Ok(ck.finish(Criterion::DiscC4D2, &["(1)", "(2)"]))
}

/// Order 4, dimension 2: square-root thresholds on the cubic factor `f`
/// (alternative 1) or `g` (alternative 2).
///
/// Substituting `f = a1111 x1^3 + 4 a1112 x1^2 x2 + 6 a1122 x1 x2^2 + 4 a1222 x2^3`
/// into the order-3 bound gives `a1122 >= (2/3)(a1222 - sqrt(a1111 a1222))`;
/// likewise for `g`.
pub fn sqrt_c4d2(t: &SymmetricTensor) -> Result<Certificate> {
    t.expect_shape(4, 2)?;
    let (a1111, a1112, a1122, a1222, a2222) = (
        a(t, "1111"),
        a(t, "1112"),
        a(t, "1122"),
        a(t, "1222"),
        a(t, "2222"),
    );
    let mut ck = Checks::new();
    ck.ge(None, "a1111 >= 0", a1111, 0.0);
    ck.ge(None, "a2222 >= 0", a2222, 0.0);

    let r1 = sqrt0(a1111 * a1222);
    ck.ge(Some("(1)"), "a1222 >= 0", a1222, 0.0);
    ck.ge(
        Some("(1)"),
        "a1112 >= a1111/4 - sqrt(a1111 a1222)",
        a1112,
        a1111 / 4.0 - r1,
    );
    ck.ge(
        Some("(1)"),
        "a1122 >= (2/3)(a1222 - sqrt(a1111 a1222))",
        a1122,
        2.0 * (a1222 - r1) / 3.0,
    );

    let r2 = sqrt0(a1112 * a2222);
    ck.ge(Some("(2)"), "a1112 >= 0", a1112, 0.0);
    ck.ge(
        Some("(2)"),
        "a1222 >= a2222/4 - sqrt(a1112 a2222)",
        a1222,
        a2222 / 4.0 - r2,
    );
    ck.ge(
        Some("(2)"),
        "a1122 >= (2/3)(a1112 - sqrt(a1112 a2222))",
        a1122,
        2.0 * (a1112 - r2) / 3.0,
    );
    Ok(ck.finish(Criterion::SqrtC4D2, &["(1)", "(2)"]))
}

/// Diagonal and the six `x_i^3 x_j` coefficients nonnegative.
fn c4d3_sign_conditions(ck: &mut Checks, t: &SymmetricTensor) {
    for d in ["1111", "2222", "3333"] {
        ck.ge(None, format!("a{d} >= 0"), a(t, d), 0.0);
    }
    for d in ["1112", "1113", "1222", "2223", "1333", "2333"] {
        ck.ge(None, format!("a{d} >= 0"), a(t, d), 0.0);
    }
}

/// The three cubic remainders `F_1(x2, x3)`, `F_2(x1, x3)`, `F_3(x1, x2)` as
/// `(outer, inner1, inner2, outer2)` digit strings, i.e. the binary cubic
/// with coefficients `4 outer, 6 inner1, 6 inner2, 4 outer2`.
const C4D3_CUBICS: [[&str; 4]; 3] = [
    ["1222", "1223", "1233", "1333"],
    ["1112", "1123", "1233", "2333"],
    ["1113", "1123", "1223", "2223"],
];

/// Order 4, dimension 3: three quadratic pair tests in `x_i^2` plus a
/// discriminant test on each cubic remainder.
pub fn disc_c4d3(t: &SymmetricTensor) -> Result<Certificate> {
    t.expect_shape(4, 3)?;
    let mut ck = Checks::new();
    c4d3_sign_conditions(&mut ck, t);
    for (p, q) in [("1222", "1333"), ("1112", "2333"), ("1113", "2223")] {
        ck.gt(
            None,
            format!("max(a{p}, a{q}) > 0"),
            a(t, p).max(a(t, q)),
            0.0,
        );
    }
    for (pair, i, j) in [("1122", "1111", "2222"), ("1133", "1111", "3333"), ("2233", "3333", "2222")] {
        ck.ge(
            None,
            format!("6 a{pair} + sqrt(a{i} a{j}) >= 0"),
            6.0 * a(t, pair) + sqrt0(a(t, i) * a(t, j)),
            0.0,
        );
    }
    for [p, b, c, q] in C4D3_CUBICS {
        let (w, x, y, z) = (a(t, p), a(t, b), a(t, c), a(t, q));
        let v = 8.0 * w * y.powi(3) + 8.0 * x.powi(3) * z + 16.0 * w * w * z * z
            - 24.0 * w * x * y * z
            - 3.0 * x * x * y * y;
        ck.ge(
            None,
            format!(
                "8 a{p} a{c}^3 + 8 a{b}^3 a{q} + 16 a{p}^2 a{q}^2 - 24 a{p} a{b} a{c} a{q} - 3 a{b}^2 a{c}^2 >= 0"
            ),
            v,
            0.0,
        );
    }
    Ok(ck.finish(Criterion::DiscC4D3, &[]))
}

/// Order 4, dimension 3: quadratic pair bounds plus square-root thresholds
/// on each cubic remainder.
pub fn sqrt_c4d3(t: &SymmetricTensor) -> Result<Certificate> {
    t.expect_shape(4, 3)?;
    let mut ck = Checks::new();
    c4d3_sign_conditions(&mut ck, t);
    for (pair, i, j) in [("1122", "1111", "2222"), ("1133", "1111", "3333"), ("2233", "3333", "2222")] {
        ck.ge(
            None,
            format!("a{pair} >= -(1/6) sqrt(a{i} a{j})"),
            a(t, pair),
            -sqrt0(a(t, i) * a(t, j)) / 6.0,
        );
    }
    // Each mixed entry is bounded by the two cubic remainders it appears in.
    let bound = |outer: &str, other: &str| a(t, outer) - 2.0 * sqrt0(a(t, outer) * a(t, other));
    let rows = [
        ("1223", ("1222", "1333"), ("2223", "1113")),
        ("1233", ("2333", "1112"), ("1333", "1222")),
        ("1123", ("1113", "2223"), ("1112", "2333")),
    ];
    for (entry, (p1, q1), (p2, q2)) in rows {
        let rhs = 2.0 * bound(p1, q1).max(bound(p2, q2)) / 3.0;
        ck.ge(
            None,
            format!(
                "a{entry} >= (2/3) max(a{p1} - 2 sqrt(a{p1} a{q1}), a{p2} - 2 sqrt(a{q2} a{p2}))"
            ),
            a(t, entry),
            rhs,
        );
    }
    Ok(ck.finish(Criterion::SqrtC4D3, &[]))
}

/// `2 A C^3 + 3^7 4^3 B^3 D + 3^8 A^2 D^2 - 3^6 4 A B C D - 3^3 4 B^2 C^2`,
/// the scaled discriminant of the binary cubic `3A y1^3 + 36B y1^2 y2 + 2C y1 y2^2 + 36D y2^3`.
fn sos_large(a_: f64, b: f64, c: f64, d: f64) -> f64 {
    2.0 * a_ * c.powi(3) + 139_968.0 * b.powi(3) * d + 6_561.0 * a_ * a_ * d * d
        - 2_916.0 * a_ * b * c * d
        - 108.0 * b * b * c * c
}

/// Order 4, dimension 3, strictly positive diagonal: sum of squares of
/// `sqrt(a_iiii) x_i^2 - sqrt(a_jjjj) x_j^2`, three cubic remainders and
/// three binary quadratics.
///
/// With `strict`, the shifted-pair, mixed and discriminant inequalities
/// become strict; the sign conditions on `a1113, a1222, a2333` stay `>= 0`.
pub fn sos_c4d3(t: &SymmetricTensor, strict: bool) -> Result<Certificate> {
    t.expect_shape(4, 3)?;
    let mut ck = Checks::new();
    for d in ["1111", "2222", "3333"] {
        ck.gt(None, format!("a{d} > 0"), a(t, d), 0.0);
    }
    for d in ["1113", "1222", "2333"] {
        ck.ge(None, format!("a{d} >= 0"), a(t, d), 0.0);
    }
    let shifted = |pair: &str, i: &str, j: &str| 9.0 * a(t, pair) + sqrt0(a(t, i) * a(t, j));
    let c12 = shifted("1122", "1111", "2222");
    let c13 = shifted("1133", "1111", "3333");
    let c23 = shifted("2233", "3333", "2222");
    ck.cmp(strict, None, "9 a1122 + sqrt(a1111 a2222) >= 0", c12, 0.0);
    ck.cmp(strict, None, "9 a1133 + sqrt(a1111 a3333) >= 0", c13, 0.0);
    ck.cmp(strict, None, "9 a2233 + sqrt(a3333 a2222) >= 0", c23, 0.0);
    ck.cmp(
        strict,
        None,
        "27 a1123 + sqrt(C12 C13) >= 0",
        27.0 * a(t, "1123") + sqrt0(c12 * c13),
        0.0,
    );
    ck.cmp(
        strict,
        None,
        "27 a1223 + sqrt(C12 C23) >= 0",
        27.0 * a(t, "1223") + sqrt0(c12 * c23),
        0.0,
    );
    ck.cmp(
        strict,
        None,
        "27 a1233 + sqrt(C13 C23) >= 0",
        27.0 * a(t, "1233") + sqrt0(c13 * c23),
        0.0,
    );
    let large = [
        ("a1111", "a1112", "C12", "a1222", sos_large(a(t, "1111"), a(t, "1112"), c12, a(t, "1222"))),
        ("a2222", "a2223", "C23", "a2333", sos_large(a(t, "2222"), a(t, "2223"), c23, a(t, "2333"))),
        ("a3333", "a1333", "C13", "a1113", sos_large(a(t, "3333"), a(t, "1333"), c13, a(t, "1113"))),
    ];
    for (na, nb, nc, nd, v) in large {
        ck.cmp(
            strict,
            None,
            format!(
                "2 {na} {nc}^3 + 3^7 4^3 {nb}^3 {nd} + 3^8 {na}^2 {nd}^2 - 3^6 4 {na} {nb} {nc} {nd} - 3^3 4 {nb}^2 {nc}^2 >= 0"
            ),
            v,
            0.0,
        );
    }
    let mut cert = ck.finish(Criterion::SosC4D3, &[]);
    cert.note = Some(
        "C12 = 9 a1122 + sqrt(a1111 a2222), C13 = 9 a1133 + sqrt(a1111 a3333), C23 = 9 a2233 + sqrt(a3333 a2222)"
            .to_string(),
    );
    Ok(cert)
}

/// Splits `A x^4 = x1 G1 x^3 + x2 G2 x^3 + x3 G3 x^3` with three order-3,
/// dimension-3 tensors.
pub fn split_decompose(t: &SymmetricTensor) -> Result<[SymmetricTensor; 3]> {
    t.expect_shape(4, 3)?;
    let e = |d: &str| a(t, d);
    let two3 = 2.0 / 3.0;
    let four3 = 4.0 / 3.0;
    let g1 = [
        ("111", e("1111")),
        ("112", two3 * e("1112")),
        ("122", e("1122")),
        ("222", 2.0 * e("1222")),
        ("333", 2.0 * e("1333")),
        ("133", e("1133")),
        ("113", two3 * e("1113")),
        ("123", two3 * e("1123")),
        ("223", four3 * e("1223")),
        ("233", four3 * e("1233")),
    ];
    let g2 = [
        ("111", 2.0 * e("1112")),
        ("112", e("1122")),
        ("122", two3 * e("1222")),
        ("222", e("2222")),
        ("333", 2.0 * e("2333")),
        ("133", four3 * e("1233")),
        ("113", four3 * e("1123")),
        ("123", two3 * e("1223")),
        ("223", two3 * e("2223")),
        ("233", e("2233")),
    ];
    let g3 = [
        ("111", 2.0 * e("1113")),
        ("112", four3 * e("1123")),
        ("122", four3 * e("1223")),
        ("222", 2.0 * e("2223")),
        ("333", e("3333")),
        ("133", two3 * e("1333")),
        ("113", e("1133")),
        ("123", two3 * e("1233")),
        ("223", e("2233")),
        ("233", two3 * e("2333")),
    ];
    let build = |entries: [(&str, f64); 10]| {
        SymmetricTensor::build(
            3,
            3,
            entries.into_iter().map(|(d, v)| {
                let idx: Vec<usize> = d.bytes().map(|b| (b - b'0') as usize).collect();
                (crate::tensor::MultiIndex::new(idx), v)
            }),
        )
    };
    Ok([build(g1)?, build(g2)?, build(g3)?])
}

/// Certified when each piece of [`split_decompose`] passes the order-3
/// discriminant or square-root test.
pub fn split_c4d3(t: &SymmetricTensor) -> Result<Certificate> {
    let parts = split_decompose(t)?;
    let mut conditions = Vec::new();
    let mut fired = Vec::new();
    let mut all_parts = true;
    for (k, g) in parts.iter().enumerate() {
        let mut part_ok = false;
        for sub in [third::disc_c3d3(g)?, third::sqrt_c3d3(g)?] {
            let label = format!("G{}/{}", k + 1, sub.criterion.id());
            if sub.outcome == Outcome::Certified {
                part_ok = true;
                fired.push(label.clone());
            }
            conditions.extend(sub.conditions.into_iter().map(|mut c| {
                c.branch = Some(label.clone());
                c
            }));
        }
        all_parts &= part_ok;
    }
    Ok(Certificate {
        criterion: Criterion::SplitC4D3,
        outcome: if all_parts {
            Outcome::Certified
        } else {
            Outcome::Unknown
        },
        fired: if all_parts { fired } else { Vec::new() },
        conditions,
        note: Some("conditions refer to the entries gNNN of the piece named in their branch".into()),
    })
}
