use num_bigint::BigInt;
use num_traits::One;

use crate::arrangement::{Arrangement, FlatFamily};
use crate::linalg::IntMatrix;

/// Bipartite graph on hyperplanes and family members, with an edge `(S, H)` for each `H` in `S`.
/// Edges are ordered member-major, hyperplanes ascending within a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    n: usize,
    members: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl IncidenceGraph {
    pub fn new(a: &Arrangement, family: &FlatFamily) -> Self {
        let members: Vec<Vec<usize>> = family.members().iter().map(|m| m.hyperplanes.clone()).collect();
        let edges = members.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |&h| (i, h))).collect();
        Self { n: a.len(), members, edges }
    }

    pub fn hyperplane_count(&self) -> usize {
        self.n
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    /// `(member, hyperplane)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, member: usize, h: usize) -> Option<usize> {
        self.edges.iter().position(|&e| e == (member, h))
    }

    pub fn degree(&self, h: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == h).count()
    }

    /// Rows: hyperplanes, then members. Columns: edges.
    pub fn matrix(&self) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.n + self.members.len(), self.edges.len());
        for (c, &(m, h)) in self.edges.iter().enumerate() {
            r.set(h, c, BigInt::one());
            r.set(self.n + m, c, BigInt::one());
        }
        r
    }

    /// The generators of I: one row per hyperplane.
    pub fn hyperplane_rows(&self) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.n, self.edges.len());
        for (c, &(_, h)) in self.edges.iter().enumerate() {
            r.set(h, c, BigInt::one());
        }
        r
    }

    /// Connected components, counting uncovered hyperplanes as isolated vertices.
    pub fn components(&self) -> usize {
        let total = self.n + self.members.len();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(m, h) in &self.edges {
            let (x, y) = (find(&mut parent, h), find(&mut parent, self.n + m));
            parent[x] = y;
        }
        (0..total).filter(|&v| find(&mut parent, v) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }
}
