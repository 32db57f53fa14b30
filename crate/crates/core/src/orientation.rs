//! Edge orientations, colorings and Poincaré–Hopf indices.
//!
//! An orientation is *irrotational* when no triangle carries a directed
//! 3-cycle; then every simplex is totally ordered and the index
//! `i(v) = 1 - χ(S⁻(v))` is defined, where `S⁻(v)` is the subgraph induced
//! on the neighbours pointing towards `v`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::complex::{self, count_cliques, subset_euler, subset_fvector, Limits};
use crate::error::{Error, Result};
use crate::graph::{Graph, UnitSphere};
use crate::poly::Polynomial;

/// Real vertex values; ties are broken by vertex id, so the induced order on
/// vertices is always strict and total.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coloring {
    values: Vec<f64>,
}

impl Coloring {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidColoring(format!(
                "value at vertex {i} is not finite"
            )));
        }
        Ok(Self { values })
    }

    /// Coloring by vertex id.
    pub fn identity(n: usize) -> Self {
        Self {
            values: (0..n).map(|i| i as f64).collect(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn cmp_vertices(&self, u: usize, v: usize) -> Ordering {
        // values are finite so partial_cmp is total; -0.0 == 0.0 falls through to ids
        self.values[u]
            .partial_cmp(&self.values[v])
            .unwrap_or(Ordering::Equal)
            .then(u.cmp(&v))
    }

    #[inline]
    pub fn below(&self, u: usize, v: usize) -> bool {
        self.cmp_vertices(u, v) == Ordering::Less
    }

    /// Vertices from lowest to highest.
    pub fn order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.cmp_vertices(a, b));
        order
    }

    fn check_len(&self, g: &Graph) -> Result<()> {
        if self.values.len() == g.n() {
            Ok(())
        } else {
            Err(Error::InvalidColoring(format!(
                "{} values for a graph with {} vertices",
                self.values.len(),
                g.n()
            )))
        }
    }
}

/// A direction on every edge of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    /// `incoming[v]` = `{ w : w → v }`
    incoming: Vec<Bitset>,
    arc_count: usize,
    cyclic: Option<[usize; 3]>,
}

impl Orientation {
    /// Orientation from explicit arcs `u → v`; every edge of `g` must appear
    /// exactly once, in one direction.
    pub fn from_arcs(g: &Graph, arcs: &[(usize, usize)]) -> Result<Self> {
        let n = g.n();
        let mut incoming = vec![Bitset::new(n); n];
        for &(u, v) in arcs {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if !g.adjacent(u, v) {
                return Err(Error::InvalidOrientation(format!(
                    "arc {u}->{v} is not an edge"
                )));
            }
            if incoming[v].contains(u) || incoming[u].contains(v) {
                return Err(Error::InvalidOrientation(format!(
                    "edge {{{u},{v}}} is oriented twice"
                )));
            }
            incoming[v].insert(u);
        }
        if arcs.len() != g.edge_count() {
            return Err(Error::InvalidOrientation(format!(
                "{} arcs for {} edges",
                arcs.len(),
                g.edge_count()
            )));
        }
        Ok(Self::finish(g, incoming))
    }

    /// `v → w` whenever `v` is below `w` in the coloring's order.
    pub fn from_coloring(g: &Graph, c: &Coloring) -> Result<Self> {
        c.check_len(g)?;
        let incoming = (0..g.n())
            .map(|v| {
                Bitset::from_indices(
                    g.n(),
                    g.neighbors(v).iter().copied().filter(|&w| c.below(w, v)),
                )
            })
            .collect();
        let o = Self::finish(g, incoming);
        if let Some([a, b, c]) = o.cyclic {
            return Err(Error::Inconsistent(format!(
                "coloring produced cyclic triangle ({a}, {b}, {c})"
            )));
        }
        Ok(o)
    }

    fn finish(g: &Graph, incoming: Vec<Bitset>) -> Self {
        let arc_count = incoming.iter().map(Bitset::len).sum();
        let mut o = Self {
            incoming,
            arc_count,
            cyclic: None,
        };
        o.cyclic = scan_cyclic_triangle(g, &o);
        o
    }

    pub fn n(&self) -> usize {
        self.incoming.len()
    }

    /// `u → v`?
    #[inline]
    pub fn points_to(&self, u: usize, v: usize) -> bool {
        self.incoming[v].contains(u)
    }

    pub fn incoming(&self, v: usize) -> &Bitset {
        &self.incoming[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.incoming[v].len()
    }

    /// Arcs `(u, v)` meaning `u → v`, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> = self
            .incoming
            .iter()
            .enumerate()
            .flat_map(|(v, inc)| inc.iter().map(move |u| (u, v)))
            .collect();
        arcs.sort_unstable();
        arcs
    }

    pub fn is_irrotational(&self) -> bool {
        self.cyclic.is_none()
    }

    /// Lexicographically smallest cyclic triangle, if any.
    pub fn cyclic_triangle(&self) -> Option<[usize; 3]> {
        self.cyclic
    }

    /// Confirms this orientation covers exactly the edges of `g` and is
    /// irrotational.
    pub fn require_index_ready(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() || self.arc_count != g.edge_count() {
            return Err(Error::InvalidOrientation(
                "orientation belongs to a different graph".into(),
            ));
        }
        for (v, inc) in self.incoming.iter().enumerate() {
            if !inc.is_subset(g.row(v)) {
                return Err(Error::InvalidOrientation(
                    "orientation belongs to a different graph".into(),
                ));
            }
        }
        match self.cyclic {
            Some([a, b, c]) => Err(Error::CyclicTriangle(a, b, c)),
            None => Ok(()),
        }
    }
}

fn is_cycle(o: &Orientation, a: usize, b: usize, c: usize) -> bool {
    (o.points_to(a, b) && o.points_to(b, c) && o.points_to(c, a))
        || (o.points_to(a, c) && o.points_to(c, b) && o.points_to(b, a))
}

fn scan_cyclic_triangle(g: &Graph, o: &Orientation) -> Option<[usize; 3]> {
    for a in 0..g.n() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            let common = g.row(a).intersection(g.row(b));
            for c in common.iter().filter(|&c| c > b) {
                if is_cycle(o, a, b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Returns the lexicographically smallest triangle `(a < b < c)` carrying a
/// directed 3-cycle.
pub fn find_cyclic_triangle(g: &Graph, o: &Orientation) -> Option<[usize; 3]> {
    scan_cyclic_triangle(g, o)
}

/// The exit set `S⁻(v)` with labels back to `g`.
pub fn exit_set(g: &Graph, o: &Orientation, v: usize) -> Result<UnitSphere> {
    g.check_vertex(v)?;
    o.require_index_ready(g)?;
    let labels: Vec<usize> = o.incoming(v).iter().collect();
    Ok(UnitSphere {
        center: v,
        graph: g.induced(&labels),
        labels,
    })
}

/// Unit spheres of every vertex in local coordinates, reused across many
/// orientations of the same graph.
pub struct SphereTable {
    neighbors: Vec<Vec<usize>>,
    rows: Vec<Vec<Bitset>>,
}

impl SphereTable {
    pub fn new(g: &Graph) -> Self {
        Self {
            neighbors: (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect(),
            rows: (0..g.n()).map(|v| g.sphere_rows(v)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub(crate) fn rows(&self, v: usize) -> &[Bitset] {
        &self.rows[v]
    }

    /// Local mask of the neighbours of `v` selected by `pick`.
    #[inline]
    pub(crate) fn mask(&self, v: usize, pick: impl Fn(usize) -> bool) -> Bitset {
        let ns = &self.neighbors[v];
        Bitset::from_indices(
            ns.len(),
            ns.iter()
                .enumerate()
                .filter(|&(_, &w)| pick(w))
                .map(|(j, _)| j),
        )
    }

    /// `1 - χ` of the sub-sphere of `v` selected by `pick`.
    #[inline]
    pub(crate) fn index_of(
        &self,
        v: usize,
        pick: impl Fn(usize) -> bool,
        budget: u64,
    ) -> Result<i64> {
        let mask = self.mask(v, pick);
        Ok(1 - subset_euler(&self.rows[v], &mask, budget)?)
    }

    /// Index vector for the orientation induced by a coloring.
    pub fn coloring_indices(&self, c: &Coloring, budget: u64) -> Result<Vec<i64>> {
        (0..self.n())
            .map(|v| self.index_of(v, |w| c.below(w, v), budget))
            .collect()
    }
}

/// Poincaré–Hopf index `1 - χ(S⁻(v))`.
pub fn ph_index(g: &Graph, o: &Orientation, v: usize, budget: u64) -> Result<i64> {
    g.check_vertex(v)?;
    o.require_index_ready(g)?;
    let rows = g.sphere_rows(v);
    let ns = g.neighbors(v);
    let mask = Bitset::from_indices(
        ns.len(),
        ns.iter()
            .enumerate()
            .filter(|&(_, &w)| o.points_to(w, v))
            .map(|(j, _)| j),
    );
    Ok(1 - subset_euler(&rows, &mask, budget)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexVector {
    pub indices: Vec<i64>,
}

impl IndexVector {
    pub fn sum(&self) -> i64 {
        self.indices.iter().sum()
    }
}

/// All indices of an irrotational orientation.
pub fn index_vector(g: &Graph, o: &Orientation, budget: u64) -> Result<IndexVector> {
    o.require_index_ready(g)?;
    let table = SphereTable::new(g);
    let indices = (0..g.n())
        .into_par_iter()
        .map(|v| table.index_of(v, |w| o.points_to(w, v), budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(IndexVector { indices })
}

/// Sum of indices against the Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareHopfReport {
    pub indices: Vec<i64>,
    pub index_sum: i64,
    pub euler_characteristic: i64,
    pub holds: bool,
}

pub fn verify_poincare_hopf(g: &Graph, o: &Orientation, budget: u64) -> Result<PoincareHopfReport> {
    let iv = index_vector(g, o, budget)?;
    let chi = complex::graph_euler_characteristic(g, budget)?;
    let index_sum = iv.sum();
    Ok(PoincareHopfReport {
        indices: iv.indices,
        index_sum,
        euler_characteristic: chi,
        holds: index_sum == chi,
    })
}

/// Both sides of `f_G(t) = 1 + t Σ_v f_{S⁻(v)}(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FIdentityReport {
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub holds: bool,
    /// The identity at `t = -1`, i.e. `χ(G) = Σ_v i(v)`.
    pub holds_at_minus_one: bool,
}

pub fn verify_f_identity(g: &Graph, o: &Orientation, budget: u64) -> Result<FIdentityReport> {
    o.require_index_ready(g)?;
    let lhs = count_cliques(g, &Limits::with_budget(budget))?
        .fvector
        .f_function();
    let table = SphereTable::new(g);
    let parts = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let mask = table.mask(v, |w| o.points_to(w, v));
            Ok(subset_fvector(table.rows(v), &mask, budget)?.f_function())
        })
        .collect::<Result<Vec<_>>>()?;
    let sum: Polynomial = parts.into_iter().sum();
    let rhs = &Polynomial::one() + &sum.shift();
    let minus_one = |p: &Polynomial| p.eval_integer(-1);
    let holds_at_minus_one = minus_one(&lhs) == minus_one(&rhs);
    Ok(FIdentityReport {
        holds: lhs == rhs,
        lhs,
        rhs,
        holds_at_minus_one,
    })
}

/// `χ` as a big integer from the f-function: `1 - f_G(-1)`.
pub fn chi_from_f_function(f: &Polynomial) -> BigInt {
    let v = f.eval_integer(-1);
    debug_assert!(v.is_integer());
    BigInt::from(1) - v.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;
    use crate::DEFAULT_BUDGET;

    fn coloring(v: &[f64]) -> Coloring {
        Coloring::new(v.to_vec()).unwrap()
    }

    #[test]
    fn triangle_by_ids() {
        let g = registry::complete(3);
        let o = Orientation::from_coloring(&g, &Coloring::identity(3)).unwrap();
        assert_eq!(o.arcs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(o.is_irrotational());
    }

    #[test]
    fn square_extrema() {
        let g = registry::cycle(4);
        let o = Orientation::from_coloring(&g, &coloring(&[0.0, 3.0, 1.0, 2.0])).unwrap();
        let iv = index_vector(&g, &o, DEFAULT_BUDGET).unwrap();
        // two local minima (0, 2) and two local maxima (1, 3)
        assert_eq!(iv.indices, vec![1, -1, 1, -1]);
    }

    #[test]
    fn cyclic_witness() {
        let g = registry::complete(3);
        let o = Orientation::from_arcs(&g, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(find_cyclic_triangle(&g, &o), Some([0, 1, 2]));
        assert!(matches!(
            ph_index(&g, &o, 0, DEFAULT_BUDGET),
            Err(Error::CyclicTriangle(0, 1, 2))
        ));
        assert!(exit_set(&g, &o, 0).is_err());
    }

    #[test]
    fn smallest_witness_is_returned() {
        // K_4 with every triangle through vertex 3 cyclic except (0,1,2)
        let g = registry::complete(4);
        let o =
            Orientation::from_arcs(&g, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 0), (3, 1)]).unwrap();
        assert_eq!(find_cyclic_triangle(&g, &o), Some([0, 2, 3]));
    }

    #[test]
    fn bad_arcs() {
        let g = registry::path(3);
        assert!(Orientation::from_arcs(&g, &[(0, 2), (1, 2)]).is_err());
        assert!(Orientation::from_arcs(&g, &[(0, 1)]).is_err());
        assert!(Orientation::from_arcs(&g, &[(0, 1), (1, 0)]).is_err());
        assert!(Orientation::from_arcs(&g, &[(0, 1), (2, 1)]).is_ok());
    }

    #[test]
    fn exit_sets_of_complete_graph() {
        let g = registry::complete(5);
        let o = Orientation::from_coloring(&g, &Coloring::identity(5)).unwrap();
        for k in 0..5 {
            let s = exit_set(&g, &o, k).unwrap();
            assert_eq!(s.labels, (0..k).collect::<Vec<_>>());
            assert_eq!(s.graph, registry::complete(k));
        }
        let iv = index_vector(&g, &o, DEFAULT_BUDGET).unwrap();
        assert_eq!(iv.indices, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn ties_break_by_id() {
        let c = coloring(&[1.0, 1.0, 0.0, -0.0]);
        assert_eq!(c.order(), vec![2, 3, 0, 1]);
        assert!(Coloring::new(vec![f64::NAN]).is_err());
        let g = registry::complete(3);
        assert!(Orientation::from_coloring(&g, &Coloring::identity(2)).is_err());
    }

    #[test]
    fn f_identity_on_triangle() {
        let g = registry::complete(3);
        let o = Orientation::from_coloring(&g, &Coloring::identity(3)).unwrap();
        let r = verify_f_identity(&g, &o, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.rhs, Polynomial::from_integers([1, 3, 3, 1]));
        assert!(r.holds && r.holds_at_minus_one);

        let single = Graph::empty(1);
        let o = Orientation::from_coloring(&single, &Coloring::identity(1)).unwrap();
        let r = verify_f_identity(&single, &o, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.rhs, Polynomial::from_integers([1, 1]));
        assert!(r.holds);
        assert_eq!(chi_from_f_function(&r.lhs), BigInt::from(1));
    }
}
