//! Point clouds sampled from curves and surfaces, ε-graphs, and curvature
//! from height functions of the ambient space.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::{mc_curvature_in_domain, ColoringMeasure, ColoringSampler, CurvatureVector};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::orientation::Coloring;
use crate::rng;

/// Above this many points the ε-graph is built with a bucket grid.
pub const GRID_THRESHOLD: usize = 5000;

/// Multiplier applied to the nearest-neighbour spacing for `--eps auto`.
pub const AUTO_EPS_FACTOR: f64 = 1.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Circle,
    Sphere,
    Torus,
    Lemniscate,
    File,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    pub shape: Shape,
}

impl PointCloud {
    pub fn new(dim: usize, coords: Vec<f64>, shape: Shape) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "point dimension must be >= 1".into(),
            ));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidParameter(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coordinate".into()));
        }
        Ok(Self { dim, coords, shape })
    }

    pub fn from_points(points: &[Vec<f64>], shape: Shape) -> Result<Self> {
        let dim = points.first().map_or(1, Vec::len);
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidParameter("points of mixed dimension".into()));
        }
        Self::new(dim, points.concat(), shape)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.point(i)
            .iter()
            .zip(self.point(j))
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

/// `n` points at angles `2πk/n` on the circle of the given radius.
pub fn sample_circle(n: usize, radius: f64) -> Result<PointCloud> {
    require(n >= 3, "circle needs at least 3 points")?;
    require(
        radius.is_finite() && radius > 0.0,
        "radius must be positive",
    )?;
    let coords = (0..n)
        .flat_map(|k| {
            let t = TAU * k as f64 / n as f64;
            [radius * t.cos(), radius * t.sin()]
        })
        .collect();
    PointCloud::new(2, coords, Shape::Circle)
}

/// Latitude–longitude grid on the unit sphere: `rows` latitudes from pole
/// to pole (inclusive) and `cols` longitudes. Each pole is a single point, so
/// the cloud has `(rows - 2) * cols + 2` points: north pole first, then the
/// rings from north to south, south pole last.
pub fn sample_sphere(rows: usize, cols: usize) -> Result<PointCloud> {
    require(
        rows >= 3 && cols >= 3,
        "sphere grid needs rows >= 3 and cols >= 3",
    )?;
    let mut coords = vec![0.0, 0.0, 1.0];
    for i in 1..rows - 1 {
        let theta = PI * i as f64 / (rows - 1) as f64;
        for j in 0..cols {
            let phi = TAU * j as f64 / cols as f64;
            coords.extend([
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ]);
        }
    }
    coords.extend([0.0, 0.0, -1.0]);
    PointCloud::new(3, coords, Shape::Sphere)
}

/// Grid on the standard torus `((R + r cos φ) cos θ, (R + r cos φ) sin θ,
/// r sin φ)`; point `i * n2 + j` sits at `θ = 2πi/n1`, `φ = 2πj/n2`.
pub fn sample_torus(n1: usize, n2: usize, major: f64, minor: f64) -> Result<PointCloud> {
    require(n1 >= 3 && n2 >= 3, "torus grid needs n1 >= 3 and n2 >= 3")?;
    require(
        minor.is_finite() && major.is_finite() && 0.0 < minor && minor < major,
        "torus radii must satisfy 0 < r < R",
    )?;
    let mut coords = Vec::with_capacity(3 * n1 * n2);
    for i in 0..n1 {
        let theta = TAU * i as f64 / n1 as f64;
        for j in 0..n2 {
            let phi = TAU * j as f64 / n2 as f64;
            let rho = major + minor * phi.cos();
            coords.extend([rho * theta.cos(), rho * theta.sin(), minor * phi.sin()]);
        }
    }
    PointCloud::new(3, coords, Shape::Torus)
}

/// Vertex ids of the torus ring at tube angle index `j`.
pub fn torus_ring(n1: usize, n2: usize, j: usize) -> Vec<usize> {
    (0..n1).map(|i| i * n2 + j).collect()
}

/// The figure-eight `y² = x² - x⁴` via `x = sin t, y = sin t cos t` at
/// `t = 2πk/n`. For even `n` the parameter `t = π` lands on the crossing
/// again and is dropped, so the origin (point 0) appears once.
pub fn sample_lemniscate(n: usize) -> Result<PointCloud> {
    require(n >= 8, "lemniscate needs at least 8 points")?;
    let coords = (0..n)
        .filter(|&k| !(n.is_multiple_of(2) && k == n / 2))
        .flat_map(|k| {
            let t = TAU * k as f64 / n as f64;
            [t.sin(), t.sin() * t.cos()]
        })
        .collect();
    PointCloud::new(2, coords, Shape::Lemniscate)
}

/// Largest nearest-neighbour distance over the cloud: the smallest ε (up
/// to strictness) at which no point is isolated.
pub fn nearest_neighbor_spacing(pc: &PointCloud) -> f64 {
    let n = pc.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| pc.distance(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .filter(|d| d.is_finite())
        .reduce(|| 0.0, f64::max)
}

pub fn auto_epsilon(pc: &PointCloud) -> f64 {
    AUTO_EPS_FACTOR * nearest_neighbor_spacing(pc)
}

/// Graph joining points at distance strictly below `eps`.
pub fn build_eps_graph(pc: &PointCloud, eps: f64) -> Result<Graph> {
    require(eps.is_finite() && eps > 0.0, "epsilon must be positive")?;
    let edges = if pc.len() > GRID_THRESHOLD {
        grid_pairs(pc, eps)
    } else {
        brute_pairs(pc, eps)
    };
    Graph::new(pc.len(), edges)
}

pub(crate) fn brute_pairs(pc: &PointCloud, eps: f64) -> Vec<(usize, usize)> {
    let n = pc.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..n)
                .filter(move |&j| pc.distance(i, j) < eps)
                .map(move |j| (i, j))
        })
        .collect()
}

pub(crate) fn grid_pairs(pc: &PointCloud, eps: f64) -> Vec<(usize, usize)> {
    let cell = |p: &[f64]| -> Vec<i64> { p.iter().map(|x| (x / eps).floor() as i64).collect() };
    let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, p) in pc.points().enumerate() {
        buckets.entry(cell(p)).or_default().push(i);
    }
    let dim = pc.dim();
    let offsets: Vec<Vec<i64>> = (0..3usize.pow(dim as u32))
        .map(|mut code| {
            (0..dim)
                .map(|_| {
                    let o = (code % 3) as i64 - 1;
                    code /= 3;
                    o
                })
                .collect()
        })
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..pc.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let home = cell(pc.point(i));
            let mut found = Vec::new();
            for off in &offsets {
                let key: Vec<i64> = home.iter().zip(off).map(|(a, b)| a + b).collect();
                if let Some(members) = buckets.get(&key) {
                    found.extend(
                        members
                            .iter()
                            .copied()
                            .filter(|&j| j > i && pc.distance(i, j) < eps)
                            .map(|j| (i, j)),
                    );
                }
            }
            found
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Coloring by the linear function `x ↦ ⟨u, x⟩`.
pub fn height_coloring(pc: &PointCloud, u: &[f64]) -> Result<Coloring> {
    if u.len() != pc.dim() {
        return Err(Error::InvalidParameter(format!(
            "direction has {} components, cloud dimension is {}",
            u.len(),
            pc.dim()
        )));
    }
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    require(
        (norm - 1.0).abs() <= 1e-9,
        format!("direction norm {norm} is not 1"),
    )?;
    Coloring::new(
        pc.points()
            .map(|p| p.iter().zip(u).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

/// Height functions in uniformly random directions on the unit sphere.
pub struct HeightSampler {
    cloud: Arc<PointCloud>,
}

impl HeightSampler {
    pub fn new(cloud: Arc<PointCloud>) -> Self {
        Self { cloud }
    }

    pub fn direction(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..self.cloud.dim())
                .map(|_| rng.sample(StandardNormal))
                .collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }
}

impl ColoringSampler for HeightSampler {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Coloring {
        let u = self.direction(rng);
        height_coloring(&self.cloud, &u).expect("unit direction of matching dimension")
    }
}

/// Index expectation of height functions over random directions.
pub fn embedded_curvature(
    pc: &PointCloud,
    g: &Graph,
    directions: u64,
    seed: u64,
    budget: u64,
) -> Result<CurvatureVector> {
    if pc.len() != g.n() {
        return Err(Error::Mismatch(format!(
            "{} points but {} vertices",
            pc.len(),
            g.n()
        )));
    }
    let measure = ColoringMeasure::Sampler(Arc::new(HeightSampler::new(Arc::new(pc.clone()))));
    mc_curvature_in_domain(
        g,
        &measure,
        directions,
        seed,
        rng::DOMAIN_DIRECTIONS,
        budget,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_spacing() {
        let pc = sample_circle(100, 1.0).unwrap();
        assert_eq!(pc.len(), 100);
        let step = 2.0 * (PI / 100.0).sin();
        for k in 0..100 {
            assert!((pc.distance(k, (k + 1) % 100) - step).abs() < 1e-12);
        }
        assert!(sample_circle(2, 1.0).is_err());
        assert!(sample_circle(5, 0.0).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(sample_torus(30, 15, 2.0, 1.0).unwrap().len(), 450);
        assert_eq!(sample_sphere(20, 40).unwrap().len(), 20 * 40 - 2 * 39);
        assert!(sample_torus(10, 10, 1.0, 1.0).is_err());
        assert!(sample_sphere(2, 10).is_err());
    }

    #[test]
    fn lemniscate_points() {
        let pc = sample_lemniscate(8).unwrap();
        let origins = pc.points().filter(|p| p[0] == 0.0 && p[1] == 0.0).count();
        assert_eq!(origins, 1);
        assert_eq!(sample_lemniscate(400).unwrap().len(), 399);
        assert_eq!(sample_lemniscate(401).unwrap().len(), 401);
        let big = sample_lemniscate(1000).unwrap();
        for p in big.points() {
            let (x, y) = (p[0], p[1]);
            assert!((y * y - x * x + x.powi(4)).abs() < 1e-12);
        }
        assert!(sample_lemniscate(7).is_err());
    }

    #[test]
    fn eps_graph_of_circle() {
        let pc = sample_circle(100, 1.0).unwrap();
        let step = 2.0 * (PI / 100.0).sin();
        let g = build_eps_graph(&pc, 1.5 * step).unwrap();
        assert_eq!(g, crate::registry::cycle(100));
        let tiny = build_eps_graph(&pc, 0.5 * step).unwrap();
        assert_eq!(tiny.edge_count(), 0);
        assert!(build_eps_graph(&pc, 0.0).is_err());
        assert!((auto_epsilon(&pc) - 1.5 * step).abs() < 1e-12);
    }

    #[test]
    fn strict_threshold() {
        let pc = PointCloud::from_points(&[vec![0.0], vec![1.0], vec![3.0]], Shape::File).unwrap();
        assert_eq!(build_eps_graph(&pc, 1.0).unwrap().edge_count(), 0);
        assert_eq!(build_eps_graph(&pc, 1.0 + 1e-12).unwrap().edge_count(), 1);
    }

    #[test]
    fn grid_matches_brute_force() {
        let pc = sample_torus(40, 20, 2.0, 0.7).unwrap();
        for eps in [0.2, 0.35, 0.9] {
            let mut brute = brute_pairs(&pc, eps);
            brute.sort_unstable();
            assert_eq!(grid_pairs(&pc, eps), brute);
        }
    }

    #[test]
    fn heights() {
        let pc = sample_circle(8, 1.0).unwrap();
        let c = height_coloring(&pc, &[0.0, 1.0]).unwrap();
        let order = c.order();
        assert_eq!(*order.last().unwrap(), 2);
        assert_eq!(order[0], 6);
        let flipped = height_coloring(&pc, &[0.0, -1.0]).unwrap();
        assert_eq!(flipped.order()[0], 2);
        assert!(height_coloring(&pc, &[0.0, 2.0]).is_err());
        assert!(height_coloring(&pc, &[1.0]).is_err());
    }
}
