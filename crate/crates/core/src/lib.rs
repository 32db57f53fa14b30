//! Discrete differential geometry on finite simple graphs.
//!
//! Graphs are identified with their Whitney (clique) complexes. An
//! irrotational orientation assigns every vertex the Poincaré–Hopf index
//! `1 - χ(S⁻(v))`; the indices sum to `χ(G)`. Averaging indices over a
//! probability measure gives a curvature that satisfies Gauss–Bonnet.
//!
//! * [`complex`]: clique enumeration, f-vectors, Euler characteristic
//! * [`orientation`]: colorings, orientations, indices, identity checks
//! * [`curvature`]: exact and Monte Carlo index-expectation curvature
//! * [`morse2d`]: critical-point classification on 2-graphs
//! * [`geometric`]: point clouds, ε-graphs, height-function curvature
//! * [`experiments`]: random directed Erdős–Rényi statistics

pub mod bitset;
pub mod complex;
pub mod curvature;
pub mod error;
pub mod experiments;
pub mod geometric;
pub mod graph;
pub mod io;
pub mod morse2d;
pub mod orientation;
pub mod poly;
pub mod registry;
pub mod rng;

pub use complex::{
    count_cliques, euler_characteristic, graph_euler_characteristic, whitney_complex, CliqueCount,
    FVector, Limits, SimplicialComplex, DEFAULT_BUDGET,
};
pub use curvature::{
    curvature_from_finite_measure, exact_curvature, mc_curvature, verify_functional_gauss_bonnet,
    verify_gauss_bonnet, ColoringMeasure, ColoringSampler, CurvatureVector,
};
pub use error::{Error, Result};
pub use graph::{Graph, UnitSphere};
pub use orientation::{
    exit_set, find_cyclic_triangle, index_vector, ph_index, verify_f_identity,
    verify_poincare_hopf, Coloring, IndexVector, Orientation,
};
pub use poly::Polynomial;
