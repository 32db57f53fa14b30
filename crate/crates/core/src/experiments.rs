//! Random directed Erdős–Rényi graphs: how often triangles are cyclic and
//! how often a whole digraph is irrotational.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::orientation::Orientation;
use crate::rng::{self, substream};

/// Parameters echoed into every report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExperimentParams {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

impl Estimate {
    /// Distance from `target` in standard errors (infinite if the error is
    /// zero and the mean is off).
    pub fn z_score(&self, target: f64) -> f64 {
        let d = self.mean - target;
        if d == 0.0 {
            0.0
        } else {
            d.abs() / self.stderr
        }
    }

    fn from_samples(values: impl Iterator<Item = f64>) -> Self {
        let (mut n, mut s, mut ss) = (0.0, 0.0, 0.0);
        for x in values {
            n += 1.0;
            s += x;
            ss += x * x;
        }
        let mean = s / n;
        let stderr = if n > 1.0 {
            (((ss - s * s / n) / (n - 1.0)).max(0.0) / n).sqrt()
        } else {
            0.0
        };
        Self { mean, stderr }
    }

    fn proportion(hits: u64, total: u64) -> Self {
        let f = hits as f64 / total as f64;
        Self {
            mean: f,
            stderr: (f * (1.0 - f) / total as f64).sqrt(),
        }
    }
}

/// One sampled digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub edges: usize,
    pub triangles: u64,
    pub cyclic_triangles: u64,
    pub irrotational: bool,
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )))
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        Err(Error::ZeroSamples)
    } else {
        Ok(())
    }
}

/// Each pair `u < v` is an edge with probability `p`; each edge then points
/// either way with probability 1/2.
pub fn sample_er_digraph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> (Graph, Orientation) {
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
                arcs.push(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    let g = Graph::new(n, edges).expect("pairs are in range and distinct");
    let o = Orientation::from_arcs(&g, &arcs).expect("one arc per edge");
    (g, o)
}

pub fn random_er_digraph(n: usize, p: f64, seed: u64) -> Result<(Graph, Orientation)> {
    check_probability(p)?;
    Ok(sample_er_digraph(
        n,
        p,
        &mut substream(seed, rng::DOMAIN_SINGLE, 0),
    ))
}

/// `(triangles, cyclic triangles)`.
pub fn triangle_census(g: &Graph, o: &Orientation) -> (u64, u64) {
    let (mut total, mut cyclic) = (0, 0);
    for a in 0..g.n() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for c in g.row(a).intersection(g.row(b)).iter().filter(|&c| c > b) {
                total += 1;
                let forward = o.points_to(a, b) && o.points_to(b, c) && o.points_to(c, a);
                let backward = o.points_to(a, c) && o.points_to(c, b) && o.points_to(b, a);
                if forward || backward {
                    cyclic += 1;
                }
            }
        }
    }
    (total, cyclic)
}

fn run_trials(n: usize, p: f64, trials: u64, seed: u64, domain: u64) -> Vec<TrialRow> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let (g, o) = sample_er_digraph(n, p, &mut substream(seed, domain, t));
            let (triangles, cyclic_triangles) = triangle_census(&g, &o);
            TrialRow {
                trial: t,
                edges: g.edge_count(),
                triangles,
                cyclic_triangles,
                irrotational: cyclic_triangles == 0,
            }
        })
        .collect()
}

pub const CYCLIC_TRIANGLE_TARGET: f64 = 0.25;
pub const ACYCLIC_TRIANGLE_PROBABILITY: f64 = 0.75;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriangleCycleReport {
    pub params: ExperimentParams,
    pub triangles: u64,
    pub cyclic_triangles: u64,
    /// `None` when no triangle was sampled.
    pub fraction: Option<Estimate>,
    pub empty_denominator: bool,
    pub target: f64,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
}

/// Fraction of sampled triangles that are directed 3-cycles. Orientations
/// of distinct triangles are pairwise independent, so the binomial
/// standard error applies.
pub fn triangle_cycle_fraction(
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<TriangleCycleReport> {
    check_probability(p)?;
    check_trials(trials)?;
    let rows = run_trials(n, p, trials, seed, rng::DOMAIN_ER_TRIALS);
    let triangles: u64 = rows.iter().map(|r| r.triangles).sum();
    let cyclic: u64 = rows.iter().map(|r| r.cyclic_triangles).sum();
    Ok(TriangleCycleReport {
        params: ExperimentParams { n, p, trials, seed },
        triangles,
        cyclic_triangles: cyclic,
        fraction: (triangles > 0).then(|| Estimate::proportion(cyclic, triangles)),
        empty_denominator: triangles == 0,
        target: CYCLIC_TRIANGLE_TARGET,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IrrotationalReport {
    pub params: ExperimentParams,
    pub irrotational: u64,
    pub probability: Estimate,
    pub mean_triangles: f64,
    /// `(3/4)^T̄`, pretending triangles are independent.
    pub independence_approximation: f64,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
}

pub fn irrotational_probability(
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<IrrotationalReport> {
    check_probability(p)?;
    check_trials(trials)?;
    let rows = run_trials(n, p, trials, seed, rng::DOMAIN_ER_TRIALS);
    let hits = rows.iter().filter(|r| r.irrotational).count() as u64;
    let mean_triangles = rows.iter().map(|r| r.triangles as f64).sum::<f64>() / trials as f64;
    Ok(IrrotationalReport {
        params: ExperimentParams { n, p, trials, seed },
        irrotational: hits,
        probability: Estimate::proportion(hits, trials),
        mean_triangles,
        independence_approximation: ACYCLIC_TRIANGLE_PROBABILITY.powf(mean_triangles),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EffectiveDensityReport {
    pub params: ExperimentParams,
    /// `p · (3/4)^{1/3}`
    pub effective_p: f64,
    /// Acyclic triangles per digraph at density `p`.
    pub acyclic_at_p: Estimate,
    /// Triangles per graph at density `q`.
    pub triangles_at_q: Estimate,
    pub ratio: Option<Estimate>,
    pub target_ratio: f64,
    /// `C(n,3) p³ · 3/4`
    pub closed_form_acyclic: f64,
    /// `C(n,3) q³`
    pub closed_form_triangles: f64,
    pub closed_forms_agree: bool,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
}

/// Compares acyclic-triangle counts at density `p` with plain triangle
/// counts at the reduced density `q = p (3/4)^{1/3}`.
pub fn effective_density_check(
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<EffectiveDensityReport> {
    check_probability(p)?;
    check_trials(trials)?;
    let q = p * ACYCLIC_TRIANGLE_PROBABILITY.cbrt();
    check_probability(q)?;
    let at_p = run_trials(n, p, trials, seed, rng::DOMAIN_ER_TRIALS);
    let at_q = run_trials(n, q, trials, seed, rng::DOMAIN_ER_DENSITY);
    let a = Estimate::from_samples(
        at_p.iter()
            .map(|r| (r.triangles - r.cyclic_triangles) as f64),
    );
    let b = Estimate::from_samples(at_q.iter().map(|r| r.triangles as f64));
    let ratio = (b.mean > 0.0 && a.mean > 0.0).then(|| {
        let mean = a.mean / b.mean;
        Estimate {
            mean,
            stderr: mean * ((a.stderr / a.mean).powi(2) + (b.stderr / b.mean).powi(2)).sqrt(),
        }
    });
    let triples = {
        let n = n as f64;
        n * (n - 1.0) * (n - 2.0) / 6.0
    };
    let closed_form_acyclic = triples * p.powi(3) * ACYCLIC_TRIANGLE_PROBABILITY;
    let closed_form_triangles = triples * q.powi(3);
    let scale = closed_form_acyclic.abs().max(1.0);
    Ok(EffectiveDensityReport {
        params: ExperimentParams { n, p, trials, seed },
        effective_p: q,
        acyclic_at_p: a,
        triangles_at_q: b,
        ratio,
        target_ratio: 1.0,
        closed_form_acyclic,
        closed_form_triangles,
        closed_forms_agree: (closed_form_acyclic - closed_form_triangles).abs() <= 1e-12 * scale,
        rows: at_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_densities() {
        let (g, _) = random_er_digraph(10, 0.0, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
        let (g, o) = random_er_digraph(10, 1.0, 1).unwrap();
        assert_eq!(g.edge_count(), 45);
        assert_eq!(o.arcs().len(), 45);
        assert!(random_er_digraph(3, 1.5, 1).is_err());
        assert!(random_er_digraph(3, -0.1, 1).is_err());
    }

    #[test]
    fn seeds_differ() {
        let (a, _) = random_er_digraph(50, 0.5, 1).unwrap();
        let (b, _) = random_er_digraph(50, 0.5, 2).unwrap();
        assert_ne!(a, b);
        let (c, _) = random_er_digraph(50, 0.5, 1).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn empty_denominator() {
        let r = triangle_cycle_fraction(10, 0.0, 20, 3).unwrap();
        assert!(r.empty_denominator);
        assert!(r.fraction.is_none());
        let i = irrotational_probability(10, 0.0, 20, 3).unwrap();
        assert_eq!(i.probability.mean, 1.0);
        let e = effective_density_check(10, 0.0, 20, 3).unwrap();
        assert_eq!(e.acyclic_at_p.mean, 0.0);
        assert_eq!(e.triangles_at_q.mean, 0.0);
        assert!(e.ratio.is_none());
        assert!(triangle_cycle_fraction(10, 0.5, 0, 3).is_err());
    }

    #[test]
    fn closed_forms() {
        let e = effective_density_check(30, 0.5, 10, 1).unwrap();
        assert!(e.closed_forms_agree);
        assert!((e.effective_p - 0.5 * 0.75f64.cbrt()).abs() < 1e-15);
        assert!((0.75f64.cbrt() - 0.908).abs() < 1e-3);
    }
}
