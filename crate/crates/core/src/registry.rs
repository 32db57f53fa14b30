//! Built-in named graphs.
//!
//! Names accepted by [`named`]: `cycle:k`, `path:k`, `complete:k`,
//! `octahedron`, `icosahedron`, `utility`, plus the 2-graph families
//! `bipyramid:k` (suspension of `C_k`) and `torus:m:n` (triangulated torus).

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn cycle(k: usize) -> Graph {
    Graph::new(k, (0..k).map(|i| (i, (i + 1) % k))).expect("valid cycle")
}

pub fn path(k: usize) -> Graph {
    Graph::new(k, (1..k).map(|i| (i - 1, i))).expect("valid path")
}

pub fn complete(k: usize) -> Graph {
    Graph::new(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)))).expect("valid K_k")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("valid K_ab")
}

/// `K_{3,3}`.
pub fn utility() -> Graph {
    complete_bipartite(3, 3)
}

/// Suspension of `C_k`: ring `0..k`, north pole `k`, south pole `k + 1`.
pub fn bipyramid(k: usize) -> Graph {
    let (north, south) = (k, k + 1);
    let ring = (0..k).map(|i| (i, (i + 1) % k));
    let spokes = (0..k).flat_map(|i| [(i, north), (i, south)]);
    Graph::new(k + 2, ring.chain(spokes)).expect("valid bipyramid")
}

pub fn octahedron() -> Graph {
    bipyramid(4)
}

/// Icosahedron: apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::with_capacity(30);
    for j in 0..5 {
        let up = 1 + j;
        let up_next = 1 + (j + 1) % 5;
        let low = 6 + j;
        let low_next = 6 + (j + 1) % 5;
        edges.push((0, up));
        edges.push((up, up_next));
        edges.push((low, low_next));
        edges.push((low, 11));
        edges.push((up, low));
        edges.push((up_next, low));
    }
    Graph::new(12, edges).expect("valid icosahedron")
}

/// `m × n` grid on the torus with one diagonal per square; every unit sphere
/// is `C_6` once `m, n ≥ 4`.
pub fn torus_triangulation(m: usize, n: usize) -> Graph {
    let id = |i: usize, j: usize| (i % m) * n + (j % n);
    let mut edges = Vec::with_capacity(3 * m * n);
    for i in 0..m {
        for j in 0..n {
            edges.push((id(i, j), id(i + 1, j)));
            edges.push((id(i, j), id(i, j + 1)));
            edges.push((id(i, j), id(i + 1, j + 1)));
        }
    }
    Graph::new(m * n, edges).expect("valid torus")
}

/// Resolves a registry name.
pub fn named(name: &str) -> Result<Graph> {
    let mut parts = name.split(':');
    let head = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let int = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::Parse(format!("bad size `{s}` in graph name `{name}`")))
    };
    let arity = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "graph name `{name}` expects {k} parameter(s)"
            )))
        }
    };
    let at_least = |k: usize, min: usize| -> Result<usize> {
        if k < min {
            Err(Error::InvalidParameter(format!(
                "{head} needs size >= {min}"
            )))
        } else {
            Ok(k)
        }
    };
    match head {
        "cycle" => {
            arity(1)?;
            Ok(cycle(at_least(int(args[0])?, 3)?))
        }
        "path" => {
            arity(1)?;
            Ok(path(at_least(int(args[0])?, 1)?))
        }
        "complete" => {
            arity(1)?;
            Ok(complete(at_least(int(args[0])?, 1)?))
        }
        "bipyramid" => {
            arity(1)?;
            Ok(bipyramid(at_least(int(args[0])?, 3)?))
        }
        "torus" => {
            arity(2)?;
            Ok(torus_triangulation(
                at_least(int(args[0])?, 4)?,
                at_least(int(args[1])?, 4)?,
            ))
        }
        "octahedron" => arity(0).map(|_| octahedron()),
        "icosahedron" => arity(0).map(|_| icosahedron()),
        "utility" => arity(0).map(|_| utility()),
        _ => Err(Error::Parse(format!("unknown graph name `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let ico = icosahedron();
        assert_eq!((ico.n(), ico.edge_count()), (12, 30));
        assert!((0..12).all(|v| ico.degree(v) == 5));
        assert_eq!(octahedron().edge_count(), 12);
        assert_eq!(utility().edge_count(), 9);
        let t = torus_triangulation(4, 5);
        assert!((0..20).all(|v| t.degree(v) == 6));
    }

    #[test]
    fn names_resolve() {
        assert_eq!(named("cycle:5").unwrap(), cycle(5));
        assert_eq!(named("icosahedron").unwrap(), icosahedron());
        assert_eq!(named("torus:4:5").unwrap(), torus_triangulation(4, 5));
        assert!(named("torus:3:5").is_err());
        assert!(named("cycle:2").is_err());
        assert!(named("cycle").is_err());
        assert!(named("octahedron:3").is_err());
        assert!(named("dodecahedron").is_err());
        assert!(named("path:x").is_err());
    }
}
