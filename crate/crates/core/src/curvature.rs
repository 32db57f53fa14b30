//! Curvature as expected Poincaré–Hopf index.
//!
//! The exact curvature of the uniform-order measure has the closed form
//! `K(v) = -F_{S(v)}(-1) = Σ_{k≥0} (-1)^k f_{k-1}(S(v)) / (k+1)` with
//! `f_{-1} = 1`, where `F` is the antiderivative of the f-function. Monte
//! Carlo estimates average integer index vectors; since every sample sums
//! to `χ(G)` the estimated total is exact.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{count_cliques, graph_euler_characteristic, subset_fvector, Limits};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::orientation::{Coloring, SphereTable};
use crate::poly::Polynomial;
use crate::rng::{self, substream};

/// Deterministic source of colorings driven by a caller-supplied stream.
pub trait ColoringSampler: Send + Sync {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Coloring;
}

/// A probability measure on colorings (hence on irrotational orientations).
#[derive(Clone)]
pub enum ColoringMeasure {
    /// Uniform over all vertex orderings.
    UniformOrder,
    /// Explicit colorings with exact weights summing to one.
    FiniteSupport(Vec<(Coloring, BigRational)>),
    /// Seeded generator, e.g. height functions of an embedded point cloud.
    Sampler(Arc<dyn ColoringSampler>),
}

impl fmt::Debug for ColoringMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UniformOrder => write!(f, "UniformOrder"),
            Self::FiniteSupport(s) => write!(f, "FiniteSupport({} colorings)", s.len()),
            Self::Sampler(_) => write!(f, "Sampler"),
        }
    }
}

/// A uniformly random ordering, as ranks.
pub struct UniformOrderSampler {
    pub n: usize,
}

impl ColoringSampler for UniformOrderSampler {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Coloring {
        let mut ranks: Vec<usize> = (0..self.n).collect();
        ranks.shuffle(rng);
        Coloring::new(ranks.into_iter().map(|r| r as f64).collect()).expect("finite ranks")
    }
}

/// Monte Carlo accumulators: exact integer sums per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McCurvature {
    pub samples: u64,
    pub sums: Vec<i64>,
    pub sums_sq: Vec<i64>,
}

impl McCurvature {
    pub fn mean(&self, v: usize) -> f64 {
        self.sums[v] as f64 / self.samples as f64
    }

    /// Standard error from the sample standard deviation; zero for a
    /// single sample.
    pub fn stderr(&self, v: usize) -> f64 {
        if self.samples < 2 {
            return 0.0;
        }
        let n = self.samples as f64;
        let s = self.sums[v] as f64;
        let var = ((self.sums_sq[v] as f64 - s * s / n) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    }

    pub fn exact_mean(&self, v: usize) -> BigRational {
        BigRational::new(self.sums[v].into(), self.samples.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvatureVector {
    Exact(Vec<BigRational>),
    MonteCarlo(McCurvature),
}

impl CurvatureVector {
    pub fn len(&self) -> usize {
        match self {
            Self::Exact(k) => k.len(),
            Self::MonteCarlo(mc) => mc.sums.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> &'static str {
        match self {
            Self::Exact(_) => "exact",
            Self::MonteCarlo(_) => "mc",
        }
    }

    pub fn value(&self, v: usize) -> f64 {
        match self {
            Self::Exact(k) => k[v].to_f64().unwrap_or(f64::NAN),
            Self::MonteCarlo(mc) => mc.mean(v),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|v| self.value(v)).collect()
    }

    /// Per-vertex standard errors (Monte Carlo only).
    pub fn stderrs(&self) -> Option<Vec<f64>> {
        match self {
            Self::Exact(_) => None,
            Self::MonteCarlo(mc) => Some((0..mc.sums.len()).map(|v| mc.stderr(v)).collect()),
        }
    }

    /// Exact per-vertex values: the rationals themselves, or `sum / samples`.
    pub fn exact_values(&self) -> Vec<BigRational> {
        match self {
            Self::Exact(k) => k.clone(),
            Self::MonteCarlo(mc) => (0..mc.sums.len()).map(|v| mc.exact_mean(v)).collect(),
        }
    }

    /// Total curvature as an exact rational.
    pub fn total(&self) -> BigRational {
        match self {
            Self::Exact(k) => k.iter().fold(BigRational::zero(), |a, b| a + b),
            Self::MonteCarlo(mc) => {
                BigRational::new(mc.sums.iter().sum::<i64>().into(), mc.samples.into())
            }
        }
    }

    /// Sum over a subset of vertices.
    pub fn mass(&self, vertices: &[usize]) -> f64 {
        vertices.iter().map(|&v| self.value(v)).sum()
    }
}

/// `f_{S(v)}` for every vertex.
pub fn sphere_f_functions(g: &Graph, budget: u64) -> Result<Vec<Polynomial>> {
    let table = SphereTable::new(g);
    (0..g.n())
        .into_par_iter()
        .map(|v| {
            let all = table.mask(v, |_| true);
            Ok(subset_fvector(table.rows(v), &all, budget)?.f_function())
        })
        .collect()
}

/// Closed-form curvature `-F_{S(v)}(-1)` in exact rationals.
pub fn exact_curvature(g: &Graph, budget: u64) -> Result<CurvatureVector> {
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    let k = sphere_f_functions(g, budget)?
        .iter()
        .map(|f| -f.antiderivative().eval(&minus_one))
        .collect();
    Ok(CurvatureVector::Exact(k))
}

/// Both sides of `f_G(t) - 1 = Σ_v F_{S(v)}(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalGaussBonnetReport {
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub holds: bool,
    pub euler_characteristic: BigInt,
    /// `χ` recovered as `-Σ_v F_{S(v)}(-1)`.
    pub chi_from_curvature: BigRational,
    pub holds_at_minus_one: bool,
}

pub fn verify_functional_gauss_bonnet(
    g: &Graph,
    budget: u64,
) -> Result<FunctionalGaussBonnetReport> {
    let fv = count_cliques(g, &Limits::with_budget(budget))?.fvector;
    let lhs = &fv.f_function() - &Polynomial::one();
    let rhs: Polynomial = sphere_f_functions(g, budget)?
        .iter()
        .map(Polynomial::antiderivative)
        .sum();
    let chi = fv.euler_characteristic();
    let chi_from_curvature = -rhs.eval_integer(-1);
    Ok(FunctionalGaussBonnetReport {
        holds: lhs == rhs,
        holds_at_minus_one: chi_from_curvature == BigRational::from_integer(chi.clone()),
        lhs,
        rhs,
        euler_characteristic: chi,
        chi_from_curvature,
    })
}

/// Exact expectation of the index vector under a finitely supported measure.
pub fn curvature_from_finite_measure(
    g: &Graph,
    support: &[(Coloring, BigRational)],
    budget: u64,
) -> Result<CurvatureVector> {
    let mut total_weight = BigRational::zero();
    for (c, w) in support {
        if w.is_negative() {
            return Err(Error::InvalidMeasure(format!("negative weight {w}")));
        }
        if c.len() != g.n() {
            return Err(Error::InvalidMeasure(format!(
                "coloring with {} values for {} vertices",
                c.len(),
                g.n()
            )));
        }
        total_weight += w;
    }
    if !total_weight.is_one() {
        return Err(Error::InvalidMeasure(format!(
            "weights sum to {total_weight}, not 1"
        )));
    }
    let table = SphereTable::new(g);
    let weighted = support
        .par_iter()
        .map(|(c, w)| {
            let idx = table.coloring_indices(c, budget)?;
            Ok(idx
                .into_iter()
                .map(|i| w * BigRational::from_integer(i.into()))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut k = vec![BigRational::zero(); g.n()];
    for row in weighted {
        for (acc, x) in k.iter_mut().zip(row) {
            *acc += x;
        }
    }
    Ok(CurvatureVector::Exact(k))
}

fn draw_coloring(
    measure: &ColoringMeasure,
    uniform: &UniformOrderSampler,
    rng: &mut ChaCha8Rng,
) -> Coloring {
    match measure {
        ColoringMeasure::UniformOrder => uniform.sample(rng),
        ColoringMeasure::Sampler(s) => s.sample(rng),
        ColoringMeasure::FiniteSupport(_) => unreachable!("rejected before sampling"),
    }
}

/// Monte Carlo index expectation.
///
/// Sample `s` draws its coloring from stream `s` of the master seed, and
/// blocks are merged by integer addition, so the result is independent of
/// the number of worker threads.
pub fn mc_curvature(
    g: &Graph,
    measure: &ColoringMeasure,
    samples: u64,
    seed: u64,
    budget: u64,
) -> Result<CurvatureVector> {
    mc_curvature_in_domain(g, measure, samples, seed, rng::DOMAIN_ORDER_SAMPLES, budget)
}

pub(crate) fn mc_curvature_in_domain(
    g: &Graph,
    measure: &ColoringMeasure,
    samples: u64,
    seed: u64,
    domain: u64,
    budget: u64,
) -> Result<CurvatureVector> {
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    if matches!(measure, ColoringMeasure::FiniteSupport(_)) {
        return Err(Error::InvalidMeasure(
            "finite-support measures are evaluated exactly, not sampled".into(),
        ));
    }
    let n = g.n();
    let chi = graph_euler_characteristic(g, budget)?;
    let table = SphereTable::new(g);
    let uniform = UniformOrderSampler { n };
    let blocks: Vec<_> = rng::blocks(samples).collect();
    let partials = blocks
        .into_par_iter()
        .map(|range| {
            let mut sums = vec![0i64; n];
            let mut sums_sq = vec![0i64; n];
            for s in range {
                let mut rng = substream(seed, domain, s);
                let c = draw_coloring(measure, &uniform, &mut rng);
                if c.len() != n {
                    return Err(Error::Mismatch(format!(
                        "sampler produced {} values for {n} vertices",
                        c.len()
                    )));
                }
                let idx = table.coloring_indices(&c, budget)?;
                let total: i64 = idx.iter().sum();
                if total != chi {
                    return Err(Error::Inconsistent(format!(
                        "sample {s}: index sum {total} != chi {chi}"
                    )));
                }
                for (v, i) in idx.into_iter().enumerate() {
                    sums[v] += i;
                    sums_sq[v] += i * i;
                }
            }
            Ok((sums, sums_sq))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sums = vec![0i64; n];
    let mut sums_sq = vec![0i64; n];
    for (a, b) in partials {
        for v in 0..n {
            sums[v] += a[v];
            sums_sq[v] += b[v];
        }
    }
    Ok(CurvatureVector::MonteCarlo(McCurvature {
        samples,
        sums,
        sums_sq,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussBonnetReport {
    pub mode: &'static str,
    pub total: BigRational,
    pub euler_characteristic: i64,
    pub holds: bool,
    /// How the identity was established.
    pub basis: &'static str,
}

/// `Σ_v K(v) = χ(G)`, checked in exact arithmetic for both modes.
pub fn verify_gauss_bonnet(
    k: &CurvatureVector,
    g: &Graph,
    budget: u64,
) -> Result<GaussBonnetReport> {
    if k.len() != g.n() {
        return Err(Error::Mismatch(format!(
            "curvature has {} entries for {} vertices",
            k.len(),
            g.n()
        )));
    }
    let chi = graph_euler_characteristic(g, budget)?;
    let total = k.total();
    Ok(GaussBonnetReport {
        mode: k.mode(),
        holds: total == BigRational::from_integer(chi.into()),
        total,
        euler_characteristic: chi,
        basis: match k {
            CurvatureVector::Exact(_) => "exact rational sum",
            CurvatureVector::MonteCarlo(_) => "per-sample index sums (exact by construction)",
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;
    use crate::DEFAULT_BUDGET;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn exact(g: &Graph) -> Vec<BigRational> {
        exact_curvature(g, DEFAULT_BUDGET).unwrap().exact_values()
    }

    #[test]
    fn closed_forms() {
        assert!(exact(&registry::icosahedron())
            .iter()
            .all(|k| *k == q(1, 6)));
        assert!(exact(&registry::octahedron()).iter().all(|k| *k == q(1, 3)));
        assert!(exact(&registry::complete(4)).iter().all(|k| *k == q(1, 4)));
        assert!(exact(&registry::cycle(7)).iter().all(Zero::is_zero));
        let p = exact(&registry::path(5));
        assert_eq!(p, vec![q(1, 2), q(0, 1), q(0, 1), q(0, 1), q(1, 2)]);
        assert_eq!(exact(&Graph::empty(1)), vec![q(1, 1)]);
    }

    #[test]
    fn functional_gauss_bonnet_on_triangle() {
        let r = verify_functional_gauss_bonnet(&registry::complete(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.rhs, Polynomial::from_integers([0, 3, 3, 1]));
        assert!(r.holds && r.holds_at_minus_one);

        let single = verify_functional_gauss_bonnet(&Graph::empty(1), DEFAULT_BUDGET).unwrap();
        assert_eq!(single.rhs, Polynomial::t());
        assert!(single.holds);
    }

    #[test]
    fn finite_measures() {
        let g = registry::cycle(4);
        let rotations: Vec<_> = (0..4)
            .map(|r| {
                let vals = (0..4).map(|v| ((v + r) % 4) as f64).collect();
                (Coloring::new(vals).unwrap(), q(1, 4))
            })
            .collect();
        let k = curvature_from_finite_measure(&g, &rotations, DEFAULT_BUDGET).unwrap();
        assert!(k.exact_values().iter().all(Zero::is_zero));

        let point = vec![(Coloring::identity(4), q(1, 1))];
        let k = curvature_from_finite_measure(&g, &point, DEFAULT_BUDGET).unwrap();
        // square 0-1-2-3 by ids: minimum 0, maximum 3
        assert_eq!(k.exact_values(), vec![q(1, 1), q(0, 1), q(0, 1), q(-1, 1)]);

        let bad = vec![(Coloring::identity(4), q(1, 2))];
        assert!(matches!(
            curvature_from_finite_measure(&g, &bad, DEFAULT_BUDGET),
            Err(Error::InvalidMeasure(_))
        ));
        let negative = vec![
            (Coloring::identity(4), q(3, 2)),
            (Coloring::identity(4), q(-1, 2)),
        ];
        assert!(curvature_from_finite_measure(&g, &negative, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn mc_contracts() {
        let g = registry::icosahedron();
        assert!(matches!(
            mc_curvature(&g, &ColoringMeasure::UniformOrder, 0, 1, DEFAULT_BUDGET),
            Err(Error::ZeroSamples)
        ));
        let one = mc_curvature(&g, &ColoringMeasure::UniformOrder, 1, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(one.total(), q(2, 1));
        assert!(one.exact_values().iter().all(|k| k.is_integer()));
        let fs = ColoringMeasure::FiniteSupport(vec![]);
        assert!(mc_curvature(&g, &fs, 10, 1, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn gauss_bonnet_reports() {
        let g = registry::utility();
        let k = exact_curvature(&g, DEFAULT_BUDGET).unwrap();
        let r = verify_gauss_bonnet(&k, &g, DEFAULT_BUDGET).unwrap();
        assert!(r.holds);
        assert_eq!(r.total, q(-3, 1));
        let mc = mc_curvature(&g, &ColoringMeasure::UniformOrder, 500, 9, DEFAULT_BUDGET).unwrap();
        let r = verify_gauss_bonnet(&mc, &g, DEFAULT_BUDGET).unwrap();
        assert!(r.holds);
        assert_eq!(r.mode, "mc");
    }
}
