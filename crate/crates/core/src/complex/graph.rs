//! Finite regular multigraphs: the quotients of trees (`d = 1`).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    q: u64,
    /// Two-colouring of the vertices, if one exists.
    bipartition: Option<Vec<u8>>,
}

impl FiniteGraph {
    /// Validates `(q+1)`-regularity (a loop counts twice) and connectivity.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, q: u64) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidParameter("graph has no vertices".into()));
        }
        if q < 1 {
            return Err(Error::InvalidParameter("q must be >= 1".into()));
        }
        let mut degree = vec![0usize; vertices];
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidParameter(alloc::format!("edge ({u}, {v}) names a missing vertex")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let expected = q as usize + 1;
        if let Some((vertex, &deg)) = degree.iter().enumerate().find(|(_, &d)| d != expected) {
            return Err(Error::Regularity { vertex, degree: deg, expected });
        }
        let mut g = Self { vertices, edges, q, bipartition: None };
        if let Some(v) = g.unreachable_vertex() {
            return Err(Error::Disconnected(v));
        }
        g.bipartition = g.two_colouring();
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }

    pub fn bipartition(&self) -> Option<&[u8]> {
        self.bipartition.as_deref()
    }

    /// Sizes of the two colour classes.
    pub fn class_sizes(&self) -> Option<(usize, usize)> {
        let b = self.bipartition.as_ref()?;
        let zeros = b.iter().filter(|&&c| c == 0).count();
        Some((zeros, b.len() - zeros))
    }

    /// Half-edges leaving each vertex: `(edge index, other endpoint)`. A loop
    /// contributes two half-edges.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertices];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push((e, v));
            inc[v].push((e, u));
        }
        inc
    }

    fn unreachable_vertex(&self) -> Option<usize> {
        let inc = self.incidence();
        let mut seen = vec![false; self.vertices];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &(_, v) in &inc[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    fn two_colouring(&self) -> Option<Vec<u8>> {
        let inc = self.incidence();
        let mut colour = vec![u8::MAX; self.vertices];
        colour[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &(_, v) in &inc[u] {
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if colour[v] == colour[u] {
                    return None;
                }
            }
        }
        Some(colour)
    }

    /// The bipartite double cover `G × K_2`: vertex `(v, s)` becomes `2v + s`.
    pub fn bipartite_double_cover(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .flat_map(|&(u, v)| [(2 * u, 2 * v + 1), (2 * v, 2 * u + 1)])
            .collect();
        // connectivity can fail only if `self` is already bipartite; callers
        // only request the cover for non-bipartite graphs
        let mut g = Self { vertices: 2 * self.vertices, edges, q: self.q, bipartition: None };
        g.bipartition = g.two_colouring();
        g
    }

    /// The graph itself if bipartite, else its bipartite double cover.
    pub fn typed(&self) -> Self {
        if self.is_bipartite() {
            self.clone()
        } else {
            self.bipartite_double_cover()
        }
    }
}

/// Small named graphs used as fixtures and in examples.
pub mod named {
    use super::*;

    pub fn complete(n: usize) -> FiniteGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        FiniteGraph::new(n, edges, n as u64 - 2).expect("complete graph is regular")
    }

    pub fn complete_bipartite(n: usize) -> FiniteGraph {
        let edges = (0..n).flat_map(|u| (0..n).map(move |v| (u, n + v))).collect();
        FiniteGraph::new(2 * n, edges, n as u64 - 1).expect("K_{n,n} is regular")
    }

    /// The 3-cube `Q_3`.
    pub fn cube() -> FiniteGraph {
        let edges = (0..8usize)
            .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
            .filter(|&(u, v)| u < v)
            .collect();
        FiniteGraph::new(8, edges, 2).expect("cube is 3-regular")
    }

    /// Incidence graph of the Fano plane.
    pub fn heawood() -> FiniteGraph {
        let edges = (0..7usize).flat_map(|l| [0, 1, 3].map(|s| ((l + s) % 7, 7 + l))).collect();
        FiniteGraph::new(14, edges, 2).expect("Heawood graph is 3-regular")
    }

    pub fn petersen() -> FiniteGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        FiniteGraph::new(10, edges, 2).expect("Petersen graph is 3-regular")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn k4_properties() {
        let g = complete(4);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));
        assert!(!g.is_bipartite());
    }

    #[test]
    fn k33_bipartite() {
        let g = complete_bipartite(3);
        assert_eq!(g.class_sizes(), Some((3, 3)));
    }

    #[test]
    fn petersen_and_cover() {
        let g = petersen();
        assert_eq!(g.vertex_count(), 10);
        assert!(!g.is_bipartite());
        let c = g.bipartite_double_cover();
        assert_eq!((c.vertex_count(), c.edge_count()), (20, 30));
        assert!(c.is_bipartite());
        assert_eq!(FiniteGraph::new(c.vertex_count(), c.edges().to_vec(), 2).unwrap(), c);
    }

    #[test]
    fn euler_count() {
        for g in [complete_bipartite(3), cube(), heawood(), petersen()] {
            assert_eq!(2 * g.edge_count(), (g.q() as usize + 1) * g.vertex_count());
        }
    }

    #[test]
    fn rejects_irregular_and_disconnected() {
        assert!(matches!(FiniteGraph::new(3, vec![(0, 1), (1, 2)], 1), Err(Error::Regularity { vertex: 0, .. })));
        let two_triangles = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        assert!(matches!(FiniteGraph::new(6, two_triangles, 1), Err(Error::Disconnected(3))));
    }

    #[test]
    fn loops_count_twice() {
        // a single vertex with one loop is 2-regular
        let g = FiniteGraph::new(1, vec![(0, 0)], 1).unwrap();
        assert!(!g.is_bipartite());
    }
}
