//! Critical points on 2-graphs (graphs whose unit spheres are all cycles
//! `C_n` with `n ≥ 4`).
//!
//! On such a graph the exit set of a vertex is a union of arcs of its
//! circle, and the index is one minus the number of incoming arcs, except
//! for sources (no arcs) and sinks (the whole circle), which have index 1.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::complex::subset_euler;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::orientation::Orientation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Source,
    Sink,
    Regular,
    Saddle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub vertex: usize,
    #[serde(rename = "class")]
    pub kind: VertexKind,
    /// Number of incoming arcs of the circle `S(v)`.
    #[serde(rename = "k")]
    pub incoming_components: usize,
    pub index: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub sources: usize,
    pub sinks: usize,
    pub regular: usize,
    pub saddles: usize,
    /// `(index, how many vertices)` sorted by index.
    pub index_histogram: Vec<(i64, usize)>,
    pub index_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub vertices: Vec<VertexClass>,
    pub summary: ClassSummary,
}

fn sphere_is_long_cycle(g: &Graph, v: usize) -> bool {
    let ns = g.neighbors(v);
    if ns.len() < 4 {
        return false;
    }
    let rows = g.sphere_rows(v);
    if rows.iter().any(|r| r.len() != 2) {
        return false;
    }
    // 2-regular: connected iff walking from 0 returns after visiting all
    let (mut prev, mut cur, mut seen) = (usize::MAX, 0usize, 1usize);
    loop {
        let next = rows[cur].iter().find(|&w| w != prev).expect("degree 2");
        if next == 0 {
            break;
        }
        prev = cur;
        cur = next;
        seen += 1;
    }
    seen == ns.len()
}

/// `Ok(())` if every unit sphere is a cycle of length at least 4, otherwise
/// the first vertex that fails.
pub fn is_two_graph(g: &Graph) -> std::result::Result<(), usize> {
    match (0..g.n()).find(|&v| !sphere_is_long_cycle(g, v)) {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// Classifies `v` by the arcs of its circle that point into it.
pub fn classify_vertex(g: &Graph, o: &Orientation, v: usize, budget: u64) -> Result<VertexClass> {
    g.check_vertex(v)?;
    o.require_index_ready(g)?;
    if !sphere_is_long_cycle(g, v) {
        return Err(Error::NotTwoGraph { vertex: v });
    }
    classify_checked(g, o, v, budget)
}

fn classify_checked(g: &Graph, o: &Orientation, v: usize, budget: u64) -> Result<VertexClass> {
    let ns = g.neighbors(v);
    let rows = g.sphere_rows(v);
    let incoming: Vec<bool> = ns.iter().map(|&w| o.points_to(w, v)).collect();
    let members = incoming.iter().filter(|&&b| b).count();

    let mut uf = UnionFind::<usize>::new(ns.len());
    let mut inner_edges = 0;
    for a in 0..ns.len() {
        for b in rows[a].iter().filter(|&b| b > a) {
            if incoming[a] && incoming[b] {
                uf.union(a, b);
                inner_edges += 1;
            }
        }
    }
    let components = (0..ns.len())
        .filter(|&a| incoming[a] && uf.find(a) == a)
        .count();

    let (kind, index) = if members == 0 {
        (VertexKind::Source, 1)
    } else if members == ns.len() {
        (VertexKind::Sink, 1)
    } else {
        // a proper subset of a circle is a disjoint union of arcs (paths)
        if inner_edges + components != members {
            return Err(Error::Inconsistent(format!(
                "exit set of vertex {v} is not a union of arcs"
            )));
        }
        match components {
            1 => (VertexKind::Regular, 0),
            k => (VertexKind::Saddle, 1 - k as i64),
        }
    };

    let mask =
        crate::bitset::Bitset::from_indices(ns.len(), (0..ns.len()).filter(|&a| incoming[a]));
    let ph = 1 - subset_euler(&rows, &mask, budget)?;
    if ph != index {
        return Err(Error::Inconsistent(format!(
            "vertex {v}: component index {index} != 1 - chi(S-) = {ph}"
        )));
    }
    Ok(VertexClass {
        vertex: v,
        kind,
        incoming_components: components,
        index,
    })
}

/// Classifies every vertex and checks that the indices sum to `χ(G)`.
pub fn classify_all(g: &Graph, o: &Orientation, budget: u64) -> Result<Classification> {
    o.require_index_ready(g)?;
    if let Err(vertex) = is_two_graph(g) {
        return Err(Error::NotTwoGraph { vertex });
    }
    let vertices = (0..g.n())
        .map(|v| classify_checked(g, o, v, budget))
        .collect::<Result<Vec<_>>>()?;
    let count = |k: VertexKind| vertices.iter().filter(|c| c.kind == k).count();
    let mut hist = std::collections::BTreeMap::new();
    for c in &vertices {
        *hist.entry(c.index).or_insert(0usize) += 1;
    }
    let index_sum = vertices.iter().map(|c| c.index).sum();
    let chi = crate::complex::graph_euler_characteristic(g, budget)?;
    if index_sum != chi {
        return Err(Error::Inconsistent(format!(
            "index sum {index_sum} != chi {chi}"
        )));
    }
    Ok(Classification {
        summary: ClassSummary {
            sources: count(VertexKind::Source),
            sinks: count(VertexKind::Sink),
            regular: count(VertexKind::Regular),
            saddles: count(VertexKind::Saddle),
            index_histogram: hist.into_iter().collect(),
            index_sum,
        },
        vertices,
    })
}
