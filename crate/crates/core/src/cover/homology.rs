//! First homology of a cover complex and its intersection form.
//!
//! Cycles are written in the basis of fundamental cycles of a spanning
//! tree; face boundaries give the relations. Diagonalizing the relation
//! matrix splits off the quotient, whose basis is then paired with the
//! chord count of [`CoverComplex::intersection`].

use std::collections::VecDeque;

use crate::cover::complex::{CoverComplex, EdgePath, Step};
use crate::error::{Error, Result};
use crate::matrix::{checked_dot, IntMatrix};
use crate::snf::{diagonalize, Diagonalization};
use crate::symplectic::H1Vector;

#[derive(Debug, Clone)]
pub struct CoverHomology {
    rank: usize,
    form: IntMatrix,
    /// Non-tree edges; the k-th one is cycle coordinate k.
    cycle_edges: Vec<usize>,
    cycle_paths: Vec<EdgePath>,
    /// Row transform of the relation matrix, and the number of relations
    /// it kills.
    u: IntMatrix,
    killed: usize,
    basis: Vec<Vec<i64>>,
}

impl CoverHomology {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `form[(i, j)] = î(e_i, e_j)` on the chosen basis.
    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    /// Basis classes as chains in fundamental-cycle coordinates.
    pub fn basis_cycles(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn fundamental_cycles(&self) -> &[EdgePath] {
        &self.cycle_paths
    }

    /// Class of a 1-chain given edge by edge; it must be a cycle.
    pub fn class_of_chain(&self, complex: &CoverComplex, chain: &[i64]) -> Result<H1Vector> {
        let mut boundary = vec![0i64; complex.num_vertices()];
        for (e, &c) in chain.iter().enumerate() {
            let edge = complex.edges()[e];
            boundary[edge.head] += c;
            boundary[edge.tail] -= c;
        }
        if boundary.iter().any(|&b| b != 0) {
            return Err(Error::LiftError("chain is not a cycle".into()));
        }
        let z: Vec<i64> = self.cycle_edges.iter().map(|&e| chain[e]).collect();
        let y = self.u.checked_mul_vec(&z)?;
        Ok(H1Vector::new(y[self.killed..].to_vec()))
    }

    pub fn class_of_path(&self, complex: &CoverComplex, path: &[Step]) -> Result<H1Vector> {
        complex.check_closed(path)?;
        self.class_of_chain(complex, &complex.chain(path))
    }

    pub fn pairing(&self, x: &H1Vector, y: &H1Vector) -> Result<i64> {
        let by = self.form.checked_mul_vec(y.coords())?;
        checked_dot(x.coords(), &by)
    }

    /// `x ↦ x + power · î(v, x) · v` as a matrix.
    pub fn transvection(&self, v: &H1Vector, power: i64) -> Result<IntMatrix> {
        let n = self.rank;
        if v.dim() != n {
            return Err(Error::InvalidDimension {
                expected: n,
                found: v.dim(),
            });
        }
        // row vector vᵀB
        let vt_b: Vec<i64> = (0..n)
            .map(|j| checked_dot(v.coords(), &self.form.column(j)))
            .collect::<Result<_>>()?;
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let add = power
                    .checked_mul(v.coords()[i])
                    .and_then(|x| x.checked_mul(vt_b[j]))
                    .ok_or(Error::Overflow("cover transvection"))?;
                m[(i, j)] = m[(i, j)]
                    .checked_add(add)
                    .ok_or(Error::Overflow("cover transvection"))?;
            }
        }
        Ok(m)
    }
}

fn spanning_tree_paths(complex: &CoverComplex) -> (Vec<bool>, Vec<EdgePath>) {
    let n = complex.num_vertices();
    let mut in_tree = vec![false; complex.edges().len()];
    let mut path_to: Vec<Option<EdgePath>> = vec![None; n];
    path_to[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (e, edge) in complex.edges().iter().enumerate() {
            for (from, to, forward) in [(edge.tail, edge.head, true), (edge.head, edge.tail, false)] {
                if from == v && path_to[to].is_none() {
                    let mut p = path_to[v].clone().expect("reached");
                    p.push(Step { edge: e, forward });
                    path_to[to] = Some(p);
                    in_tree[e] = true;
                    queue.push_back(to);
                }
            }
        }
    }
    (in_tree, path_to.into_iter().map(Option::unwrap_or_default).collect())
}

/// Diagonalizes the relations of `Z^rows / span(columns)`, failing when
/// the quotient has torsion.
pub fn free_quotient(relations: &IntMatrix) -> Result<Diagonalization> {
    let diag = diagonalize(relations)?;
    let torsion = diag.torsion();
    if !torsion.is_empty() {
        return Err(Error::HomologyRankError(format!("torsion {torsion:?} in H1")));
    }
    Ok(diag)
}

fn is_skew(m: &IntMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m[(i, j)] == -m[(j, i)]))
}

fn inverse_path(p: &[Step]) -> EdgePath {
    p.iter().rev().map(|s| s.inverse()).collect()
}

/// Computes `H_1` and its intersection form; the form must be unimodular
/// and skew of rank `2 · genus`.
pub fn homology_basis(complex: &CoverComplex) -> Result<CoverHomology> {
    let (in_tree, path_to) = spanning_tree_paths(complex);
    let cycle_edges: Vec<usize> = (0..complex.edges().len()).filter(|&e| !in_tree[e]).collect();
    let cycle_paths: Vec<EdgePath> = cycle_edges
        .iter()
        .map(|&e| {
            let edge = complex.edges()[e];
            let mut p = path_to[edge.tail].clone();
            p.push(Step { edge: e, forward: true });
            p.extend(inverse_path(&path_to[edge.head]));
            CoverComplex::reduce(&p)
        })
        .collect();
    let dim = cycle_edges.len();

    // relations: face boundaries in cycle coordinates
    let faces = complex.faces();
    let mut relations = IntMatrix::zeros(dim, faces.len());
    for (f, face) in faces.iter().enumerate() {
        let chain = complex.chain(face);
        for (k, &e) in cycle_edges.iter().enumerate() {
            relations[(k, f)] = chain[e];
        }
    }
    let diag = free_quotient(&relations)?;
    let killed = diag.rank();
    let rank = dim - killed;
    let expected = 2 * complex.genus() as usize;
    if rank != expected {
        return Err(Error::HomologyRankError(format!(
            "rank {rank}, expected {expected}"
        )));
    }

    let mut q = IntMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let v = complex.intersection(&cycle_paths[i], &cycle_paths[j]);
            q[(i, j)] = v;
            q[(j, i)] = -v;
        }
    }
    if q.checked_mul(&relations)?.to_rows().iter().flatten().any(|&x| x != 0) {
        return Err(Error::HomologyRankError(
            "face boundaries pair nontrivially with cycles".into(),
        ));
    }

    let basis: Vec<Vec<i64>> = (killed..dim).map(|c| diag.u_inv.column(c)).collect();
    let mut g = IntMatrix::zeros(dim, rank);
    for (c, col) in basis.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            g[(r, c)] = x;
        }
    }
    let form = g.transpose().checked_mul(&q)?.checked_mul(&g)?;
    if !is_skew(&form) {
        return Err(Error::HomologyRankError("intersection form is not skew".into()));
    }
    let fd = diagonalize(&form)?;
    if fd.rank() != rank || fd.diagonal.iter().any(|d| d.abs() != 1) {
        return Err(Error::HomologyRankError(
            "intersection form is not unimodular".into(),
        ));
    }
    Ok(CoverHomology {
        rank,
        form,
        cycle_edges,
        cycle_paths,
        u: diag.u,
        killed,
        basis,
    })
}
