//! Diagonalization of integer matrices by unimodular row and column moves.
//!
//! Only a diagonal form is produced (no divisibility chain); that is enough
//! to read off rank and torsion of a finitely generated abelian group given
//! by generators and relations.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone)]
pub struct Diagonalization {
    /// `u · m · v` is diagonal with entries `diagonal`.
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<i64>,
}

impl Diagonalization {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }

    /// Diagonal entries other than 0 and ±1.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal
            .iter()
            .map(|d| d.abs())
            .filter(|&d| d > 1)
            .collect()
    }
}

fn add_row(m: &mut IntMatrix, dst: usize, src: usize, c: i64) -> Result<()> {
    for j in 0..m.cols() {
        let v = c
            .checked_mul(m[(src, j)])
            .and_then(|x| x.checked_add(m[(dst, j)]))
            .ok_or(Error::Overflow("diagonalization"))?;
        m[(dst, j)] = v;
    }
    Ok(())
}

fn add_col(m: &mut IntMatrix, dst: usize, src: usize, c: i64) -> Result<()> {
    for i in 0..m.rows() {
        let v = c
            .checked_mul(m[(i, src)])
            .and_then(|x| x.checked_add(m[(i, dst)]))
            .ok_or(Error::Overflow("diagonalization"))?;
        m[(i, dst)] = v;
    }
    Ok(())
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for j in 0..m.cols() {
            let t = m[(a, j)];
            m[(a, j)] = m[(b, j)];
            m[(b, j)] = t;
        }
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for i in 0..m.rows() {
            let t = m[(i, a)];
            m[(i, a)] = m[(i, b)];
            m[(i, b)] = t;
        }
    }
}

pub fn diagonalize(m: &IntMatrix) -> Result<Diagonalization> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    // row moves are mirrored on u, and inversely (as column moves) on u_inv
    let row_add = |a: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, dst, src, c| -> Result<()> {
        add_row(a, dst, src, c)?;
        add_row(u, dst, src, c)?;
        add_col(ui, src, dst, -c)
    };

    let t_max = rows.min(cols);
    for t in 0..t_max {
        loop {
            // smallest nonzero entry of the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a[(i, j)];
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                let diagonal = (0..t_max).map(|k| a[(k, k)]).collect();
                return Ok(Diagonalization { u, u_inv, v, diagonal });
            };
            swap_rows(&mut a, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut u_inv, t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let p = a[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)].div_euclid(p);
                if q != 0 {
                    row_add(&mut a, &mut u, &mut u_inv, i, t, -q)?;
                }
                clean &= a[(i, t)] == 0;
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_euclid(p);
                if q != 0 {
                    add_col(&mut a, j, t, -q)?;
                    add_col(&mut v, j, t, -q)?;
                }
                clean &= a[(t, j)] == 0;
            }
            if clean {
                break;
            }
        }
    }
    let diagonal = (0..t_max).map(|k| a[(k, k)]).collect();
    Ok(Diagonalization { u, u_inv, v, diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Diagonalization {
        let d = diagonalize(m).unwrap();
        let prod = d.u.checked_mul(m).unwrap().checked_mul(&d.v).unwrap();
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let expected = if i == j { d.diagonal[i] } else { 0 };
                assert_eq!(prod[(i, j)], expected);
            }
        }
        assert!(d.u.checked_mul(&d.u_inv).unwrap().is_identity());
        d
    }

    #[test]
    fn torsion_detected() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        let d = check(&m);
        assert_eq!(d.rank(), 2);
        let mut t = d.torsion();
        t.sort();
        // Z^2 / <(2,6),(4,8)> has order |det| = 8
        assert_eq!(t.iter().product::<i64>(), 8);
    }

    #[test]
    fn rank_deficient() {
        let m = IntMatrix::from_rows(&[vec![1, -1, 0], vec![-1, 1, 0], vec![0, 0, 0]]).unwrap();
        let d = check(&m);
        assert_eq!(d.rank(), 1);
        assert!(d.torsion().is_empty());
    }

    #[test]
    fn rectangular() {
        let m = IntMatrix::from_rows(&[vec![3, 5], vec![7, 11], vec![1, 0], vec![4, 4]]).unwrap();
        let d = check(&m);
        assert_eq!(d.rank(), 2);
        assert!(d.torsion().is_empty());
    }
}
