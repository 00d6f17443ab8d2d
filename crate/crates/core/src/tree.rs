use std::fmt;
use std::io::{self, Write};

use serde::Serialize;

use crate::point::Point3;

/// Endpoint of a tree edge: a terminal (an input point) or an added
/// Steiner point, each indexed from 0 within its own list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum VertexId {
    Terminal(usize),
    Steiner(usize),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Terminal(i) => write!(f, "P{i}"),
            VertexId::Steiner(i) => write!(f, "S{i}"),
        }
    }
}

/// An explicit tree in 3-space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeEmbedding {
    pub terminals: Vec<Point3>,
    pub steiner_points: Vec<Point3>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub total_length: f64,
}

impl TreeEmbedding {
    pub fn new(
        terminals: Vec<Point3>,
        steiner_points: Vec<Point3>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Self {
        let mut tree = Self { terminals, steiner_points, edges, total_length: 0.0 };
        tree.total_length = tree.edge_lengths().sum();
        tree
    }

    /// A tree over terminals only.
    pub fn spanning(terminals: Vec<Point3>, edges: &[(usize, usize)]) -> Self {
        let edges = edges
            .iter()
            .map(|&(a, b)| (VertexId::Terminal(a), VertexId::Terminal(b)))
            .collect();
        Self::new(terminals, Vec::new(), edges)
    }

    pub fn position(&self, v: VertexId) -> Point3 {
        match v {
            VertexId::Terminal(i) => self.terminals[i],
            VertexId::Steiner(i) => self.steiner_points[i],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.terminals.len() + self.steiner_points.len()
    }

    pub fn edge_length(&self, edge: (VertexId, VertexId)) -> f64 {
        self.position(edge.0).distance(self.position(edge.1))
    }

    pub fn edge_lengths(&self) -> impl Iterator<Item = f64> + '_ {
        self.edges.iter().map(|&e| self.edge_length(e))
    }

    /// Recomputes the length after points were moved.
    pub fn refresh_length(&mut self) {
        self.total_length = self.edge_lengths().sum();
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    fn flat_index(&self, v: VertexId) -> usize {
        match v {
            VertexId::Terminal(i) => i,
            VertexId::Steiner(i) => self.terminals.len() + i,
        }
    }

    /// `vertices − 1` edges and no cycles, hence connected.
    pub fn is_tree(&self) -> bool {
        let count = self.vertex_count();
        if count == 0 || self.edges.len() != count - 1 {
            return false;
        }
        let mut parent: Vec<usize> = (0..count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (a, b) = (self.flat_index(a), self.flat_index(b));
            if a >= count || b >= count {
                return false;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// `endpoint_a,endpoint_b,length` with a header row.
    pub fn write_edges_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "endpoint_a,endpoint_b,length")?;
        for &edge in &self.edges {
            writeln!(out, "{},{},{}", edge.0, edge.1, self.edge_length(edge))?;
        }
        Ok(())
    }
}
