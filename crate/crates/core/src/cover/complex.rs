//! Cell structures of the genus 2 surface and its cyclic covers.
//!
//! The base has one vertex, four edges `a1 b1 a2 b2` and one octagonal face
//! with boundary `a1 b1 a1⁻¹ b1⁻¹ a2 b2 a2⁻¹ b2⁻¹`. Each edge carries the
//! voltage `î(e, α) mod n`. The degree `n` cover has a vertex, a copy of
//! every edge and a face per sheet; an edge copy starting on sheet `j` ends
//! on sheet `j + voltage`.
//!
//! The cyclic order at each cover vertex is read off the face corners, which
//! makes the cover a fat graph whose faces are exactly the lifted octagons.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fatgraph::FatGraph;
use crate::symplectic::{intersection_pairing, H1Vector, SymplecticSpace};

pub const BASE_GENUS: usize = 2;
/// Base edge names, in the order of the symplectic basis `a1 b1 a2 b2`.
pub const BASE_EDGES: [&str; 4] = ["a1", "b1", "a2", "b2"];
/// Boundary word of the base octagon, as `(edge, forward)`.
pub const BASE_FACE: [(usize, bool); 8] = [
    (0, true),
    (1, true),
    (0, false),
    (1, false),
    (2, true),
    (3, true),
    (2, false),
    (3, false),
];

/// One traversal of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

impl Step {
    pub fn inverse(self) -> Step {
        Step {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// A closed walk along edges.
pub type EdgePath = Vec<Step>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverEdge {
    pub base: usize,
    pub sheet: usize,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone)]
pub struct CoverComplex {
    degree: usize,
    alpha: H1Vector,
    voltages: [i64; 4],
    edges: Vec<CoverEdge>,
    faces: Vec<EdgePath>,
    graph: FatGraph,
    /// Position of each half-edge in its vertex's cyclic order.
    position: Vec<usize>,
    degree_at: Vec<usize>,
}

/// Half-edge ids: `2e` is the tail end of edge `e`, `2e + 1` the head end.
fn tail_half(e: usize) -> usize {
    2 * e
}

fn head_half(e: usize) -> usize {
    2 * e + 1
}

impl CoverComplex {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn alpha(&self) -> &H1Vector {
        &self.alpha
    }

    pub fn voltages(&self) -> [i64; 4] {
        self.voltages
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn edges(&self) -> &[CoverEdge] {
        &self.edges
    }

    pub fn faces(&self) -> &[EdgePath] {
        &self.faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    /// Index of the copy of base edge `base` that starts on `sheet`.
    pub fn edge_index(&self, base: usize, sheet: usize) -> usize {
        4 * sheet + base
    }

    pub fn start(&self, s: Step) -> usize {
        let e = &self.edges[s.edge];
        if s.forward {
            e.tail
        } else {
            e.head
        }
    }

    pub fn end(&self, s: Step) -> usize {
        self.start(s.inverse())
    }

    fn departure(&self, s: Step) -> usize {
        if s.forward {
            tail_half(s.edge)
        } else {
            head_half(s.edge)
        }
    }

    fn arrival(&self, s: Step) -> usize {
        self.departure(s.inverse())
    }

    /// Closed, consecutive and nonempty.
    pub fn check_closed(&self, path: &[Step]) -> Result<()> {
        if path.is_empty() {
            return Err(Error::LiftError("empty path".into()));
        }
        for k in 0..path.len() {
            let next = path[(k + 1) % path.len()];
            if path[k].edge >= self.edges.len() || self.end(path[k]) != self.start(next) {
                return Err(Error::LiftError(format!("path breaks after step {k}")));
            }
        }
        Ok(())
    }

    /// Chain of a path, one coefficient per edge.
    pub fn chain(&self, path: &[Step]) -> Vec<i64> {
        let mut c = vec![0; self.edges.len()];
        for s in path {
            c[s.edge] += if s.forward { 1 } else { -1 };
        }
        c
    }

    /// Removes immediate backtracking, including across the wrap-around.
    pub fn reduce(path: &[Step]) -> EdgePath {
        let mut out: Vec<Step> = Vec::with_capacity(path.len());
        for &s in path {
            if out.last() == Some(&s.inverse()) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        while out.len() >= 2 && out[0] == out[out.len() - 1].inverse() {
            out.pop();
            out.remove(0);
        }
        out
    }

    /// Algebraic intersection number of two closed paths. The first path is
    /// pushed off to its left, so the two only meet inside vertex disks,
    /// where crossings are read from the cyclic order of half-edges.
    pub fn intersection(&self, x: &[Step], y: &[Step]) -> i64 {
        let corners_y = self.corners(y);
        let mut by_vertex: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (v, q1, q2) in corners_y {
            by_vertex.entry(v).or_default().push((4 * q1, 4 * q2));
        }
        let mut total = 0;
        for (v, p_in, p_out) in self.corners(x) {
            let Some(ys) = by_vertex.get(&v) else {
                continue;
            };
            let len = 4 * self.degree_at[v];
            let p1 = (4 * p_in + len - 1) % len;
            let p2 = 4 * p_out + 1;
            let span = (p2 + len - p1) % len;
            let inside = |q: usize| {
                let d = (q + len - p1) % len;
                d > 0 && d < span
            };
            for &(q1, q2) in ys {
                match (inside(q1), inside(q2)) {
                    // orientation fixed so that î(a_i, b_i) = +1 on the base
                    (true, false) => total -= 1,
                    (false, true) => total += 1,
                    _ => {}
                }
            }
        }
        total
    }

    /// `(vertex, position of arriving half-edge, position of departing)`.
    fn corners(&self, path: &[Step]) -> Vec<(usize, usize, usize)> {
        (0..path.len())
            .map(|k| {
                let a = path[k];
                let d = path[(k + 1) % path.len()];
                let h_in = self.arrival(a);
                let h_out = self.departure(d);
                (
                    self.start(d),
                    self.position[h_in],
                    self.position[h_out],
                )
            })
            .collect()
    }

    /// Image of a cover path under the covering map.
    pub fn project(&self, path: &[Step]) -> Vec<(usize, bool)> {
        path.iter()
            .map(|s| (self.edges[s.edge].base, s.forward))
            .collect()
    }

    /// The deck transformation moving every cell up one sheet.
    pub fn deck_shift(&self, path: &[Step], k: usize) -> EdgePath {
        path.iter()
            .map(|s| {
                let e = self.edges[s.edge];
                Step {
                    edge: self.edge_index(e.base, (e.sheet + k) % self.degree),
                    forward: s.forward,
                }
            })
            .collect()
    }
}

/// Base classes of the four edges, in the symplectic basis of genus 2.
pub fn base_edge_class(e: usize) -> H1Vector {
    SymplecticSpace::new(BASE_GENUS)
        .expect("genus 2")
        .basis_vector(e)
}

/// Degree `n` cover of the genus 2 surface determined by `î(·, alpha) mod n`.
pub fn build_cover(n: i64) -> Result<CoverComplex> {
    if n < 2 {
        return Err(Error::InvalidDegree(n));
    }
    let space = SymplecticSpace::new(BASE_GENUS)?;
    voltage_cover(n as usize, &space.a(2))
}

/// As [`build_cover`] but allowing degree 1 (the base itself) and any
/// defining class.
pub fn voltage_cover(n: usize, alpha: &H1Vector) -> Result<CoverComplex> {
    let space = SymplecticSpace::new(BASE_GENUS)?;
    space.check(alpha)?;
    if alpha.is_zero() {
        return Err(Error::LiftError("defining curve must be nonseparating".into()));
    }
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let mut voltages = [0i64; 4];
    for (e, v) in voltages.iter_mut().enumerate() {
        *v = intersection_pairing(&base_edge_class(e), alpha, &space)?.rem_euclid(n as i64);
    }

    let mut edges = Vec::with_capacity(4 * n);
    for sheet in 0..n {
        for (base, &volt) in voltages.iter().enumerate() {
            edges.push(CoverEdge {
                base,
                sheet,
                tail: sheet,
                head: (sheet + volt as usize) % n,
            });
        }
    }

    // lift the octagon from every sheet
    let mut faces = Vec::with_capacity(n);
    for start in 0..n {
        let mut at = start;
        let mut face = Vec::with_capacity(8);
        for &(base, forward) in &BASE_FACE {
            let step = if forward {
                let e = 4 * at + base;
                at = edges[e].head;
                Step { edge: e, forward }
            } else {
                let from = (at + n - voltages[base] as usize) % n;
                let e = 4 * from + base;
                at = from;
                Step { edge: e, forward }
            };
            face.push(step);
        }
        if at != start {
            return Err(Error::LiftError(format!("face from sheet {start} does not close")));
        }
        faces.push(face);
    }

    // rotation: after arriving along one step the face leaves along the next
    let halves = 2 * edges.len();
    let mut next = vec![usize::MAX; halves];
    let dep = |s: Step| if s.forward { tail_half(s.edge) } else { head_half(s.edge) };
    for face in &faces {
        for k in 0..face.len() {
            let arrive = dep(face[k].inverse());
            let leave = dep(face[(k + 1) % face.len()]);
            if next[arrive] != usize::MAX {
                return Err(Error::LiftError("corner used twice".into()));
            }
            next[arrive] = leave;
        }
    }
    let mut rotation_lists = Vec::new();
    let mut seen = vec![false; halves];
    for h in 0..halves {
        if seen[h] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = h;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = next[x];
        }
        rotation_lists.push(cycle);
    }
    let pairing: Vec<usize> = (0..halves).map(|h| h ^ 1).collect();
    let graph = FatGraph::new(&rotation_lists, pairing)?;

    // every rotation cycle must sit at a single vertex of the cover
    let vertex_of_half = |h: usize| {
        let e = &edges[h / 2];
        if h.is_multiple_of(2) {
            e.tail
        } else {
            e.head
        }
    };
    let mut position = vec![0; halves];
    let mut degree_at = vec![0; n];
    for list in &rotation_lists {
        let v = vertex_of_half(list[0]);
        if list.iter().any(|&h| vertex_of_half(h) != v) || degree_at[v] != 0 {
            return Err(Error::LiftError("vertex links are not circles".into()));
        }
        degree_at[v] = list.len();
        for (k, &h) in list.iter().enumerate() {
            position[h] = k;
        }
    }
    if graph.num_vertices() != n || graph.faces().len() != n {
        return Err(Error::LiftError(format!(
            "expected {n} vertices and faces, found {} and {}",
            graph.num_vertices(),
            graph.faces().len()
        )));
    }

    let complex = CoverComplex {
        degree: n,
        alpha: alpha.clone(),
        voltages,
        edges,
        faces,
        graph,
        position,
        degree_at,
    };
    let expected_chi = 2 - 2 * (n as i64 + 1);
    if complex.euler_characteristic() != expected_chi && n > 1 {
        return Err(Error::LiftError(format!(
            "Euler characteristic {} differs from {expected_chi}",
            complex.euler_characteristic()
        )));
    }
    if !complex.is_connected() {
        return Err(Error::LiftError("cover is disconnected".into()));
    }
    Ok(complex)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_of(c: &CoverComplex, base: usize, sheet: usize) -> EdgePath {
        vec![Step {
            edge: c.edge_index(base, sheet),
            forward: true,
        }]
    }

    #[test]
    fn small_degrees() {
        assert!(matches!(build_cover(1), Err(Error::InvalidDegree(1))));
        let c2 = build_cover(2).unwrap();
        assert_eq!(c2.euler_characteristic(), -4);
        assert_eq!(c2.genus(), 3);
        let c5 = build_cover(5).unwrap();
        assert_eq!(c5.genus(), 6);
        assert_eq!(c5.num_vertices(), 5);
        assert_eq!(c5.edges().len(), 20);
    }

    #[test]
    fn base_pairing_is_standard() {
        let space = SymplecticSpace::new(2).unwrap();
        let base = voltage_cover(1, &space.a(2)).unwrap();
        assert_eq!(base.genus(), 2);
        let j = space.pairing_matrix();
        for x in 0..4 {
            for y in 0..4 {
                let got = base.intersection(&loop_of(&base, x, 0), &loop_of(&base, y, 0));
                assert_eq!(got, j[(x, y)], "edges {x} {y}");
            }
        }
    }

    #[test]
    fn reduce_cancels_backtracks() {
        let a = Step { edge: 0, forward: true };
        let b = Step { edge: 1, forward: true };
        assert_eq!(CoverComplex::reduce(&[a, b, b.inverse(), a]), vec![a, a]);
        assert_eq!(CoverComplex::reduce(&[b, a, b.inverse()]), vec![a]);
    }
}
