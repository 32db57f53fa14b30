//! Whitney (clique) complexes, f-vectors and Euler characteristics.
//!
//! Two enumeration paths are provided:
//!
//! * [`count_cliques`] walks a succinct clique tree: recursive neighbourhood
//!   intersection over a degeneracy ordering where, at each node, a pivot
//!   vertex of maximum local degree is either *held* implicitly or excluded.
//!   Every leaf with `h` held vertices and `p` pivots stands for
//!   `C(p, j)` cliques of size `h + j`, so counts are exact without listing
//!   every clique. For the Euler characteristic only pivot-free leaves
//!   contribute (the alternating binomial sum vanishes otherwise), so the
//!   pivot branches are skipped entirely.
//! * [`whitney_complex`] materializes every simplex, sorted per dimension.
//!
//! Both are metered by a step budget so runaway enumeration becomes an error.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{f_function, Polynomial};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Enumeration limits: an optional dimension cap and a mandatory step budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_dim: Option<usize>,
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_dim: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Limits {
    pub fn with_budget(budget: u64) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }

    pub fn max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = Some(max_dim);
        self
    }

    pub fn uncapped(self) -> Self {
        Self {
            max_dim: None,
            ..self
        }
    }
}

pub(crate) struct Meter {
    limit: u64,
    used: AtomicU64,
}

impl Meter {
    pub(crate) fn new(limit: u64) -> Self {
        Self {
            limit,
            used: AtomicU64::new(0),
        }
    }

    #[inline]
    fn tick(&self) -> Result<()> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// `(f_0, …, f_d)`: the number of simplices in each dimension.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FVector {
    counts: Vec<BigUint>,
}

impl FVector {
    pub fn new(mut counts: Vec<BigUint>) -> Self {
        while counts.last().is_some_and(Zero::is_zero) {
            counts.pop();
        }
        Self { counts }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `f_k`, zero beyond the top dimension.
    pub fn get(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.counts
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (k, c)| {
                let c = BigInt::from(c.clone());
                if k % 2 == 0 {
                    acc + c
                } else {
                    acc - c
                }
            })
    }

    pub fn f_function(&self) -> Polynomial {
        f_function(&self.counts)
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

impl From<Vec<u64>> for FVector {
    fn from(v: Vec<u64>) -> Self {
        Self::new(v.into_iter().map(BigUint::from).collect())
    }
}

/// Result of a clique count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCount {
    pub fvector: FVector,
    /// Set when the dimension cap excluded at least one clique.
    pub truncated: bool,
}

trait Leaves {
    /// Whether the pivot branch can produce anything this sink cares about.
    const WANTS_PIVOTS: bool;
    fn leaf(&mut self, held: usize, pivots: usize);
    fn truncate(&mut self) {}
}

/// `cells[h][p]`: number of clique-tree leaves with `h` held vertices and
/// `p` pivots.
#[derive(Default)]
struct LeafHistogram {
    cells: Vec<Vec<u64>>,
    cap: Option<usize>,
    truncated: bool,
}

impl LeafHistogram {
    fn new(cap: Option<usize>) -> Self {
        Self {
            cap,
            ..Self::default()
        }
    }

    fn merge(&mut self, other: LeafHistogram) {
        self.truncated |= other.truncated;
        if self.cells.len() < other.cells.len() {
            self.cells.resize_with(other.cells.len(), Vec::new);
        }
        for (h, row) in other.cells.into_iter().enumerate() {
            let mine = &mut self.cells[h];
            if mine.len() < row.len() {
                mine.resize(row.len(), 0);
            }
            for (p, c) in row.into_iter().enumerate() {
                mine[p] += c;
            }
        }
    }

    fn into_fvector(self) -> CliqueCount {
        let max_p = self.cells.iter().map(Vec::len).max().unwrap_or(0);
        let binom = pascal(max_p);
        let mut counts: Vec<BigUint> = Vec::new();
        for (h, row) in self.cells.iter().enumerate() {
            for (p, &leaves) in row.iter().enumerate() {
                if leaves == 0 {
                    continue;
                }
                for (j, b) in binom[p].iter().enumerate() {
                    let size = h + j;
                    if size == 0 {
                        continue;
                    }
                    if self.cap.is_some_and(|c| size > c + 1) {
                        break;
                    }
                    let k = size - 1;
                    if counts.len() <= k {
                        counts.resize(k + 1, BigUint::zero());
                    }
                    counts[k] += b * leaves;
                }
            }
        }
        CliqueCount {
            fvector: FVector::new(counts),
            truncated: self.truncated,
        }
    }
}

impl Leaves for LeafHistogram {
    const WANTS_PIVOTS: bool = true;

    fn leaf(&mut self, held: usize, pivots: usize) {
        if self.cap.is_some_and(|c| held + pivots > c + 1) {
            self.truncated = true;
        }
        if self.cells.len() <= held {
            self.cells.resize_with(held + 1, Vec::new);
        }
        let row = &mut self.cells[held];
        if row.len() <= pivots {
            row.resize(pivots + 1, 0);
        }
        row[pivots] += 1;
    }

    fn truncate(&mut self) {
        self.truncated = true;
    }
}

/// Alternating sum over non-empty cliques.
#[derive(Default)]
struct EulerSum(i64);

impl Leaves for EulerSum {
    const WANTS_PIVOTS: bool = false;

    #[inline]
    fn leaf(&mut self, held: usize, pivots: usize) {
        if held == 0 {
            // Only the empty clique is excluded, leaving an alternating sum of 1.
            if pivots > 0 {
                self.0 += 1;
            }
        } else if pivots == 0 {
            self.0 += if held % 2 == 1 { 1 } else { -1 };
        }
    }
}

fn pascal(max_p: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_p + 1);
    for p in 0..=max_p {
        let mut row = vec![BigUint::from(1u32); p + 1];
        for j in 1..p {
            row[j] = &rows[p - 1][j - 1] + &rows[p - 1][j];
        }
        rows.push(row);
    }
    rows
}

fn descend<L: Leaves>(
    rows: &[Bitset],
    cand: &Bitset,
    held: usize,
    pivots: usize,
    cap: Option<usize>,
    sink: &mut L,
    meter: &Meter,
) -> Result<()> {
    meter.tick()?;
    if cap.is_some_and(|c| held > c + 1) {
        sink.truncate();
        return Ok(());
    }
    if cand.is_empty() {
        sink.leaf(held, pivots);
        return Ok(());
    }
    let pivot = cand
        .iter()
        .max_by_key(|&u| (cand.intersection_len(&rows[u]), std::cmp::Reverse(u)))
        .expect("non-empty candidate set");
    let mut rest = cand.clone();
    if L::WANTS_PIVOTS || held == 0 {
        descend(
            rows,
            &cand.intersection(&rows[pivot]),
            held,
            pivots + 1,
            cap,
            sink,
            meter,
        )?;
    }
    rest.remove(pivot);
    for w in cand.difference(&rows[pivot]).iter().filter(|&w| w != pivot) {
        descend(
            rows,
            &rest.intersection(&rows[w]),
            held + 1,
            pivots,
            cap,
            sink,
            meter,
        )?;
        rest.remove(w);
    }
    Ok(())
}

/// Roots of the clique tree for a whole graph: each vertex with the
/// neighbours that come after it in a degeneracy ordering.
fn degeneracy_roots(g: &Graph) -> Vec<Bitset> {
    let (_, position) = g.degeneracy_order();
    (0..g.n())
        .map(|v| {
            Bitset::from_indices(
                g.n(),
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| position[w] > position[v]),
            )
        })
        .collect()
}

/// Exact f-vector of the Whitney complex of `g` (up to `limits.max_dim`).
pub fn count_cliques(g: &Graph, limits: &Limits) -> Result<CliqueCount> {
    let meter = Meter::new(limits.budget);
    let roots = degeneracy_roots(g);
    let parts = roots
        .par_iter()
        .map(|cand| {
            let mut hist = LeafHistogram::new(limits.max_dim);
            descend(g.rows(), cand, 1, 0, limits.max_dim, &mut hist, &meter)?;
            Ok(hist)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = LeafHistogram::new(limits.max_dim);
    for part in parts {
        total.merge(part);
    }
    Ok(total.into_fvector())
}

/// Euler characteristic of the Whitney complex of `g`.
pub fn graph_euler_characteristic(g: &Graph, budget: u64) -> Result<i64> {
    let meter = Meter::new(budget);
    let roots = degeneracy_roots(g);
    roots
        .par_iter()
        .map(|cand| {
            let mut sum = EulerSum::default();
            descend(g.rows(), cand, 1, 0, None, &mut sum, &meter)?;
            Ok(sum.0)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// f-vector of the complex induced on `mask` inside a small graph given by
/// its adjacency rows.
pub(crate) fn subset_fvector(rows: &[Bitset], mask: &Bitset, budget: u64) -> Result<FVector> {
    let meter = Meter::new(budget);
    let mut hist = LeafHistogram::new(None);
    descend(rows, mask, 0, 0, None, &mut hist, &meter)?;
    Ok(hist.into_fvector().fvector)
}

/// Euler characteristic of the complex induced on `mask`.
pub(crate) fn subset_euler(rows: &[Bitset], mask: &Bitset, budget: u64) -> Result<i64> {
    let meter = Meter::new(budget);
    let mut sum = EulerSum::default();
    descend(rows, mask, 0, 0, None, &mut sum, &meter)?;
    Ok(sum.0)
}

/// The Whitney complex with every simplex listed.
///
/// Simplices are sorted vertex tuples; within each dimension they appear in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// `simplices[k]` holds all k-simplices back to back, `k + 1` ids each.
    simplices: Vec<Vec<u32>>,
    max_dim: Option<usize>,
    truncated: bool,
}

impl SimplicialComplex {
    /// Top dimension present, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.max_dim
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, |s| s.len() / (k + 1))
    }

    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &[u32]> {
        self.simplices
            .get(k)
            .map(|s| s.as_slice())
            .unwrap_or(&[])
            .chunks_exact(k + 1)
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        let Some(k) = simplex.len().checked_sub(1) else {
            return false;
        };
        let Some(flat) = self.simplices.get(k) else {
            return false;
        };
        let n = flat.len() / (k + 1);
        // binary search over the sorted chunk list
        let (mut lo, mut hi) = (0, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match flat[mid * (k + 1)..(mid + 1) * (k + 1)].cmp(simplex) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn fvector(&self) -> FVector {
        FVector::from(
            (0..self.simplices.len())
                .map(|k| self.count(k) as u64)
                .collect::<Vec<_>>(),
        )
    }
}

/// Lists every complete subgraph of `g` with at most `max_dim + 1` vertices.
pub fn whitney_complex(g: &Graph, limits: &Limits) -> Result<SimplicialComplex> {
    struct Lister<'a> {
        g: &'a Graph,
        cap: Option<usize>,
        out: Vec<Vec<u32>>,
        stack: Vec<u32>,
        truncated: bool,
        meter: Meter,
    }

    impl Lister<'_> {
        fn emit(&mut self) -> Result<()> {
            self.meter.tick()?;
            let k = self.stack.len() - 1;
            if self.out.len() <= k {
                self.out.resize_with(k + 1, Vec::new);
            }
            self.out[k].extend_from_slice(&self.stack);
            Ok(())
        }

        fn extend(&mut self, cand: Bitset) -> Result<()> {
            self.emit()?;
            if cand.is_empty() {
                return Ok(());
            }
            if self.cap.is_some_and(|c| self.stack.len() > c) {
                self.truncated = true;
                return Ok(());
            }
            let mut rest = cand.clone();
            for w in cand.iter() {
                rest.remove(w);
                let next = rest.intersection(self.g.row(w));
                self.stack.push(w as u32);
                self.extend(next)?;
                self.stack.pop();
            }
            Ok(())
        }
    }

    let mut lister = Lister {
        g,
        cap: limits.max_dim,
        out: Vec::new(),
        stack: Vec::new(),
        truncated: false,
        meter: Meter::new(limits.budget),
    };
    for v in 0..g.n() {
        let later = Bitset::from_indices(g.n(), g.neighbors(v).iter().copied().filter(|&w| w > v));
        lister.stack.push(v as u32);
        lister.extend(later)?;
        lister.stack.pop();
    }
    Ok(SimplicialComplex {
        simplices: lister.out,
        max_dim: limits.max_dim,
        truncated: lister.truncated,
    })
}

/// `Σ_k (-1)^k f_k`; refuses truncated complexes.
pub fn euler_characteristic(c: &SimplicialComplex) -> Result<BigInt> {
    if c.truncated {
        return Err(Error::Truncated {
            max_dim: c.max_dim.unwrap_or(0),
        });
    }
    Ok(c.fvector().euler_characteristic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;
    use num_traits::ToPrimitive;

    fn fv(g: &Graph) -> Vec<u64> {
        count_cliques(g, &Limits::default())
            .unwrap()
            .fvector
            .counts()
            .iter()
            .map(|c| c.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn complete_graph_counts() {
        assert_eq!(fv(&registry::complete(4)), vec![4, 6, 4, 1]);
        assert_eq!(fv(&registry::cycle(4)), vec![4, 4]);
        assert_eq!(fv(&Graph::empty(0)), Vec::<u64>::new());
        assert_eq!(fv(&Graph::empty(3)), vec![3]);
    }

    #[test]
    fn materialized_matches_counted() {
        for g in [
            registry::icosahedron(),
            registry::octahedron(),
            registry::complete(6),
            registry::utility(),
        ] {
            let c = whitney_complex(&g, &Limits::default()).unwrap();
            assert_eq!(
                c.fvector(),
                count_cliques(&g, &Limits::default()).unwrap().fvector
            );
            assert!(!c.truncated());
        }
    }

    #[test]
    fn face_closure() {
        let g = registry::complete(5);
        let c = whitney_complex(&g, &Limits::default()).unwrap();
        for k in 1..=c.dim().unwrap() {
            for s in c.simplices(k) {
                for drop in 0..s.len() {
                    let face: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &x)| x)
                        .collect();
                    assert!(c.contains(&face), "{face:?} missing");
                }
            }
        }
    }

    #[test]
    fn dimension_cap_truncates() {
        let g = registry::complete(5);
        let limits = Limits::default().max_dim(1);
        let c = whitney_complex(&g, &limits).unwrap();
        assert!(c.truncated());
        assert_eq!(c.fvector(), FVector::from(vec![5, 10]));
        assert!(matches!(
            euler_characteristic(&c),
            Err(Error::Truncated { max_dim: 1 })
        ));
        let counted = count_cliques(&g, &limits).unwrap();
        assert!(counted.truncated);
        assert_eq!(counted.fvector, FVector::from(vec![5, 10]));

        // a cap at the true dimension removes nothing
        let exact = Limits::default().max_dim(4);
        assert!(!whitney_complex(&g, &exact).unwrap().truncated());
        assert!(!count_cliques(&g, &exact).unwrap().truncated);
    }

    #[test]
    fn budget_is_enforced() {
        let g = registry::complete(12);
        let tight = Limits::with_budget(100);
        assert!(matches!(
            whitney_complex(&g, &tight),
            Err(Error::BudgetExceeded { budget: 100 })
        ));
        assert!(matches!(
            graph_euler_characteristic(&registry::icosahedron(), 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn counts_beyond_64_bits() {
        // K_70: f_34 = C(70, 35) > 2^64, reached through pivot leaves
        let g = registry::complete(70);
        let count = count_cliques(&g, &Limits::default()).unwrap();
        let expected: BigUint = (36u32..=70).map(BigUint::from).product::<BigUint>()
            / (1u32..=35).map(BigUint::from).product::<BigUint>();
        assert_eq!(count.fvector.get(34), expected);
        assert!(count.fvector.get(34) > BigUint::from(u64::MAX));
        assert_eq!(count.fvector.euler_characteristic(), BigInt::from(1));
    }

    #[test]
    fn euler_paths_agree() {
        for g in [
            registry::icosahedron(),
            registry::utility(),
            registry::path(6),
        ] {
            let a = graph_euler_characteristic(&g, DEFAULT_BUDGET).unwrap();
            let b = count_cliques(&g, &Limits::default())
                .unwrap()
                .fvector
                .euler_characteristic();
            assert_eq!(BigInt::from(a), b);
        }
    }
}
