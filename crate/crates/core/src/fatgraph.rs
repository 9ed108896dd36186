//! Graphs with a cyclic order of half-edges at every vertex.
//!
//! A fat graph is given by two permutations of the half-edges: `rotation`
//! (counterclockwise successor around the same vertex) and `pairing` (the
//! fixed-point-free involution joining the two ends of an edge). The
//! orbits of `rotation ∘ pairing` are the boundary cycles of the faces of
//! the closed oriented surface obtained by gluing a disk to each of them.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatGraph {
    rotation: Vec<usize>,
    pairing: Vec<usize>,
    vertex_of: Vec<usize>,
    num_vertices: usize,
}

impl FatGraph {
    /// `rotation_lists[v]` lists the half-edges at `v` in counterclockwise
    /// order; `pairing[h]` is the opposite end of `h`'s edge.
    pub fn new(rotation_lists: &[Vec<usize>], pairing: Vec<usize>) -> Result<Self> {
        let n = pairing.len();
        let mut rotation = vec![usize::MAX; n];
        let mut vertex_of = vec![usize::MAX; n];
        for (v, list) in rotation_lists.iter().enumerate() {
            for (k, &h) in list.iter().enumerate() {
                if h >= n {
                    return Err(Error::MalformedRibbon(format!("half-edge {h} out of range")));
                }
                if vertex_of[h] != usize::MAX {
                    return Err(Error::MalformedRibbon(format!(
                        "half-edge {h} appears at more than one slot"
                    )));
                }
                vertex_of[h] = v;
                rotation[h] = list[(k + 1) % list.len()];
            }
        }
        if let Some(h) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(Error::MalformedRibbon(format!("half-edge {h} has no vertex")));
        }
        for (h, &p) in pairing.iter().enumerate() {
            if p >= n || p == h || pairing[p] != h {
                return Err(Error::MalformedRibbon(format!(
                    "half-edge {h} is not matched exactly once"
                )));
            }
        }
        Ok(FatGraph {
            rotation,
            pairing,
            vertex_of,
            num_vertices: rotation_lists.len(),
        })
    }

    pub fn num_half_edges(&self) -> usize {
        self.pairing.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn pair(&self, h: usize) -> usize {
        self.pairing[h]
    }

    pub fn next_ccw(&self, h: usize) -> usize {
        self.rotation[h]
    }

    /// Face boundary cycles, each listed as a sequence of half-edges.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.num_half_edges();
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                face.push(h);
                h = self.rotation[self.pairing[h]];
            }
            faces.push(face);
        }
        faces
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.num_vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for h in 0..self.num_half_edges() {
            let a = find(&mut parent, self.vertex_of[h]);
            let b = find(&mut parent, self.vertex_of[self.pairing[h]]);
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..self.num_vertices).all(|v| find(&mut parent, v) == root)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.num_edges() as i64 + self.faces().len() as i64
    }

    /// Genus of the closed surface, when the graph is connected.
    pub fn genus(&self) -> Option<i64> {
        let chi = self.euler_characteristic();
        (self.is_connected() && (2 - chi) % 2 == 0).then_some((2 - chi) / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_vertex_torus() {
        // half-edges 0..4 around a single vertex; edges {0,2} and {1,3}
        let g = FatGraph::new(&[vec![0, 1, 2, 3]], vec![2, 3, 0, 1]).unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.faces()[0].len(), 4);
        assert_eq!(g.euler_characteristic(), 0);
        assert_eq!(g.genus(), Some(1));
    }

    #[test]
    fn planar_theta() {
        // two vertices joined by three edges: a sphere with three faces
        let g = FatGraph::new(&[vec![0, 1, 2], vec![3, 5, 4]], vec![3, 4, 5, 0, 1, 2]).unwrap();
        assert_eq!(g.faces().len(), 3);
        assert_eq!(g.genus(), Some(0));
    }

    #[test]
    fn malformed_inputs() {
        assert!(FatGraph::new(&[vec![0, 1]], vec![0, 1]).is_err());
        assert!(FatGraph::new(&[vec![0, 0]], vec![1, 0]).is_err());
        assert!(FatGraph::new(&[vec![0]], vec![1, 0]).is_err());
    }
}
