//! Perron–Frobenius eigenvalues of nonnegative integer matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub const RELATIVE_TOLERANCE: f64 = 1e-13;
pub const VECTOR_TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 100_000;
/// Agreement required between power iteration and the characteristic
/// polynomial for matrices of size at most 4.
pub const CHARPOLY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerronFrobenius {
    pub lambda: f64,
    pub iterations: usize,
    /// `‖Mx − λx‖∞` for the final unit eigenvector estimate.
    pub residual: f64,
    pub eigenvector: Vec<f64>,
    /// Largest real root of the characteristic polynomial, when computed.
    pub charpoly_root: Option<f64>,
}

/// Some power of `m` is strictly positive. By Wielandt's bound it suffices
/// to look at the power `(n-1)^2 + 1`.
pub fn is_primitive(m: &IntMatrix) -> bool {
    let n = m.rows();
    if n == 0 || !m.is_square() || !m.is_nonnegative() {
        return false;
    }
    let pattern: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)] > 0).collect())
        .collect();
    let target = (n - 1) * (n - 1) + 1;
    let mul = |a: &Vec<Vec<bool>>, b: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).any(|k| a[i][k] && b[k][j]))
                    .collect()
            })
            .collect()
    };
    // square-and-multiply on boolean patterns
    let mut acc: Option<Vec<Vec<bool>>> = None;
    let mut base = pattern;
    let mut e = target;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => mul(&a, &base),
            });
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc.is_some_and(|p| p.iter().all(|row| row.iter().all(|&x| x)))
}

/// Coefficients `[1, c1, ..., cn]` of `det(xI - M)`, highest degree first,
/// by the Faddeev–LeVerrier recursion in exact integer arithmetic.
pub fn characteristic_polynomial(m: &IntMatrix) -> Result<Vec<i128>> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::InvalidDimension {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let ov = || Error::Overflow("characteristic polynomial");
    let a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(m[(i, j)])).collect())
        .collect();
    let mut coeffs = vec![1i128];
    // running matrix M_k with M_1 = I
    let mut mk: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    for k in 1..=n {
        let mut amk = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for l in 0..n {
                    s = s
                        .checked_add(a[i][l].checked_mul(mk[l][j]).ok_or_else(ov)?)
                        .ok_or_else(ov)?;
                }
                amk[i][j] = s;
            }
        }
        let trace: i128 = (0..n).try_fold(0i128, |t, i| t.checked_add(amk[i][i]).ok_or_else(ov))?;
        let c = -trace / k as i128;
        coeffs.push(c);
        for i in 0..n {
            for j in 0..n {
                mk[i][j] = amk[i][j] + if i == j { c } else { 0 };
            }
        }
    }
    Ok(coeffs)
}

fn eval(poly: &[i128], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in poly {
        dp = dp * x + p;
        p = p * x + c as f64;
    }
    (p, dp)
}

/// Largest real root, found by Newton's method started above the Cauchy
/// bound (the iteration then decreases monotonically onto that root).
pub fn largest_real_root(poly: &[i128]) -> Option<f64> {
    let lead = *poly.first()? as f64;
    if lead == 0.0 || poly.len() < 2 {
        return None;
    }
    let bound = 1.0 + poly[1..].iter().map(|&c| (c as f64 / lead).abs()).fold(0.0, f64::max);
    let mut x = bound;
    for _ in 0..10_000 {
        let (p, dp) = eval(poly, x);
        if dp == 0.0 {
            break;
        }
        let next = x - p / dp;
        if (next - x).abs() <= 1e-15 * x.abs().max(1.0) {
            return Some(next);
        }
        x = next;
    }
    Some(x)
}

/// Dominant eigenvalue of a primitive nonnegative matrix by power iteration.
pub fn perron_frobenius(m: &IntMatrix) -> Result<PerronFrobenius> {
    if !is_primitive(m) {
        return Err(Error::NotPrimitive);
    }
    let n = m.rows();
    let a = m.to_f64_rows();
    let apply = |x: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| (0..n).map(|j| a[i][j] * x[j]).sum())
            .collect()
    };
    let norm = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>().sqrt();

    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut prev = f64::NAN;
    for it in 1..=MAX_ITERATIONS {
        let y = apply(&x);
        let q: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let ny = norm(&y);
        let next: Vec<f64> = y.iter().map(|v| v / ny).collect();
        let moved = next
            .iter()
            .zip(&x)
            .map(|(u, v)| (u - v).abs())
            .fold(0.0, f64::max);
        x = next;
        // the Rayleigh quotient settles before the vector does; wait for both
        if (q - prev).abs() < RELATIVE_TOLERANCE * q.abs() && moved < VECTOR_TOLERANCE {
            let ax = apply(&x);
            let residual = ax
                .iter()
                .zip(&x)
                .map(|(u, v)| (u - q * v).abs())
                .fold(0.0, f64::max);
            let charpoly_root = if n <= 4 {
                let root = largest_real_root(&characteristic_polynomial(m)?)
                    .ok_or(Error::IterationLimit(it))?;
                if (root - q).abs() > CHARPOLY_TOLERANCE * q.max(1.0) {
                    return Err(Error::CertificateClause {
                        clause: "stretch factor".into(),
                        reason: format!(
                            "power iteration {q} disagrees with characteristic root {root}"
                        ),
                    });
                }
                Some(root)
            } else {
                None
            };
            return Ok(PerronFrobenius {
                lambda: q,
                iterations: it,
                residual,
                eigenvector: x,
                charpoly_root,
            });
        }
        prev = q;
    }
    Err(Error::IterationLimit(MAX_ITERATIONS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn golden_ratio_squared() {
        let pf = perron_frobenius(&m(&[vec![2, 1], vec![1, 1]])).unwrap();
        let expected = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((pf.lambda - expected).abs() < 1e-12);
        assert!(pf.residual < 1e-10);
        assert!((pf.charpoly_root.unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn family_of_two_by_two() {
        for n in 1..=6i64 {
            let pf = perron_frobenius(&m(&[vec![n * n + 1, n], vec![n, 1]])).unwrap();
            let t = (n * n + 2) as f64;
            let expected = (t + (t * t - 4.0).sqrt()) / 2.0;
            assert!((pf.lambda - expected).abs() < 1e-9 * expected, "n={n}");
        }
    }

    #[test]
    fn identity_is_not_primitive() {
        assert_eq!(perron_frobenius(&IntMatrix::identity(2)), Err(Error::NotPrimitive));
        assert!(!is_primitive(&m(&[vec![0, 1], vec![1, 0]])));
        assert!(is_primitive(&m(&[vec![0, 1], vec![1, 1]])));
    }

    #[test]
    fn charpoly_coefficients() {
        assert_eq!(
            characteristic_polynomial(&m(&[vec![2, 1], vec![1, 1]])).unwrap(),
            vec![1, -3, 1]
        );
        let c = characteristic_polynomial(&m(&[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]])).unwrap();
        // det(xI - A) = (x-1)^3 - 24
        assert_eq!(c, vec![1, -3, 3, -25]);
    }
}
