//! Finite simple graphs on the vertex set `0..n`.

use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// Undirected simple graph, immutable once built.
///
/// Adjacency is kept twice: as bitset rows for word-parallel
/// neighbourhood intersection and as sorted lists for iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<Bitset>,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// direction) collapse; self-loops and out-of-range endpoints are errors.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rows = vec![Bitset::new(n); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_rows(vec![Bitset::new(n); n])
    }

    fn from_rows(rows: Vec<Bitset>) -> Self {
        let neighbors: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().collect()).collect();
        let edge_count = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        Self {
            rows,
            neighbors,
            edge_count,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    #[inline]
    pub fn row(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    pub(crate) fn rows(&self) -> &[Bitset] {
        &self.rows
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Induced subgraph on `vertices` (taken in the given order); the returned
    /// graph's vertex `i` is `vertices[i]` in `self`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let rows = vertices
            .iter()
            .map(|&u| {
                Bitset::from_indices(
                    k,
                    vertices
                        .iter()
                        .enumerate()
                        .filter(|&(_, &w)| self.adjacent(u, w))
                        .map(|(j, _)| j),
                )
            })
            .collect();
        Self::from_rows(rows)
    }

    /// The unit sphere `S(v)`: the subgraph induced on the neighbours of `v`.
    pub fn unit_sphere(&self, v: usize) -> Result<UnitSphere> {
        self.check_vertex(v)?;
        let labels = self.neighbors[v].clone();
        Ok(UnitSphere {
            center: v,
            graph: self.induced(&labels),
            labels,
        })
    }

    /// Rows of the unit sphere of `v` in local coordinates (position in the
    /// sorted neighbour list).
    pub(crate) fn sphere_rows(&self, v: usize) -> Vec<Bitset> {
        let ns = &self.neighbors[v];
        ns.iter()
            .map(|&u| {
                Bitset::from_indices(
                    ns.len(),
                    ns.iter()
                        .enumerate()
                        .filter(|&(_, &w)| self.adjacent(u, w))
                        .map(|(j, _)| j),
                )
            })
            .collect()
    }

    /// Degeneracy (smallest-last) ordering; returns the order and each
    /// vertex's position in it.
    pub fn degeneracy_order(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.n();
        let max_deg = (0..n).map(|v| self.degree(v)).max().unwrap_or(0);
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
        for v in 0..n {
            buckets[degree[v]].push(v);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut low = 0;
        while order.len() < n {
            low = low.min(max_deg);
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop().unwrap();
            // stale bucket entries are skipped
            if removed[v] || degree[v] != low {
                continue;
            }
            removed[v] = true;
            order.push(v);
            for &w in &self.neighbors[v] {
                if !removed[w] {
                    degree[w] -= 1;
                    buckets[degree[w]].push(w);
                    low = low.min(degree[w]);
                }
            }
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        (order, position)
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        Graph::new(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Vertices reachable from `source` within `radius` steps.
    pub fn ball(&self, source: usize, radius: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut frontier = vec![source];
        dist[source] = 0;
        for d in 1..=radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.neighbors[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = d;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        (0..self.n()).filter(|&v| dist[v] != usize::MAX).collect()
    }
}

/// A unit sphere together with the map back to the parent graph's ids.
#[derive(Clone, Debug)]
pub struct UnitSphere {
    pub center: usize,
    pub graph: Graph,
    /// `labels[i]` is the parent-graph id of sphere vertex `i`.
    pub labels: Vec<usize>,
}
