//! Brute-force oracles: subset enumeration for clique counts, full
//! permutation enumeration for curvature.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use phcurv_core::orientation::SphereTable;
use phcurv_core::{
    count_cliques, exact_curvature, graph_euler_characteristic, registry, whitney_complex,
    Coloring, Graph, Limits, DEFAULT_BUDGET,
};

/// Counts cliques by testing every vertex subset.
fn brute_fvector(g: &Graph) -> Vec<u64> {
    let n = g.n();
    assert!(n <= 20);
    let mut counts = vec![0u64; n];
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if vs
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| g.adjacent(a, b))
        {
            counts[vs.len() - 1] += 1;
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

fn brute_chi(g: &Graph) -> i64 {
    brute_fvector(g)
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

fn as_u64(counts: &[BigUint]) -> Vec<u64> {
    counts.iter().map(|c| c.try_into().unwrap()).collect()
}

fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("empty5", Graph::empty(5)),
        ("path6", registry::path(6)),
        ("cycle7", registry::cycle(7)),
        ("k5", registry::complete(5)),
        ("k33", registry::utility()),
        ("k24", registry::complete_bipartite(2, 4)),
        ("octahedron", registry::octahedron()),
        ("icosahedron", registry::icosahedron()),
        ("bipyramid6", registry::bipyramid(6)),
        ("torus44", registry::torus_triangulation(4, 4)),
        (
            "wheel_plus_tail",
            Graph::new(
                8,
                vec![
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (0, 4),
                    (0, 5),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 5),
                    (5, 1),
                    (5, 6),
                    (6, 7),
                ],
            )
            .unwrap(),
        ),
    ]
}

#[test]
fn fvectors_match_subset_enumeration() {
    for (name, g) in corpus() {
        let want = brute_fvector(&g);
        let got = count_cliques(&g, &Limits::default()).unwrap();
        assert!(!got.truncated);
        assert_eq!(as_u64(got.fvector.counts()), want, "{name}");
        let listed = whitney_complex(&g, &Limits::default()).unwrap();
        assert_eq!(as_u64(listed.fvector().counts()), want, "{name}");
    }
}

#[test]
fn euler_characteristics_match_subset_enumeration() {
    for (name, g) in corpus() {
        let chi = brute_chi(&g);
        assert_eq!(
            graph_euler_characteristic(&g, DEFAULT_BUDGET).unwrap(),
            chi,
            "{name}"
        );
    }
}

#[test]
fn named_complexes() {
    assert_eq!(brute_fvector(&registry::icosahedron()), vec![12, 30, 20]);
    assert_eq!(brute_chi(&registry::icosahedron()), 2);
    assert_eq!(brute_fvector(&registry::utility()), vec![6, 9]);
    assert_eq!(brute_chi(&registry::utility()), -3);
    assert_eq!(brute_fvector(&registry::octahedron()), vec![6, 12, 8]);
    assert_eq!(brute_chi(&registry::torus_triangulation(4, 4)), 0);
}

/// Uniform average of index vectors over every ordering of the vertices.
fn permutation_average(g: &Graph) -> Vec<BigRational> {
    let n = g.n();
    let table = SphereTable::new(g);
    let mut sums = vec![0i64; n];
    let mut count = 0i64;
    for perm in (0..n).permutations(n) {
        let mut ranks = vec![0.0; n];
        for (rank, &v) in perm.iter().enumerate() {
            ranks[v] = rank as f64;
        }
        let idx = table
            .coloring_indices(&Coloring::new(ranks).unwrap(), DEFAULT_BUDGET)
            .unwrap();
        for (s, i) in sums.iter_mut().zip(idx) {
            *s += i;
        }
        count += 1;
    }
    sums.into_iter()
        .map(|s| BigRational::new(BigInt::from(s), BigInt::from(count)))
        .collect()
}

#[test]
fn curvature_equals_average_over_all_orderings() {
    let mut graphs: Vec<(&str, Graph)> = corpus().into_iter().filter(|(_, g)| g.n() <= 7).collect();
    graphs.push(("k4", registry::complete(4)));
    graphs.push(("path4", registry::path(4)));
    graphs.push(("k7", registry::complete(7)));
    graphs.push((
        "bowtie",
        Graph::new(5, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap(),
    ));
    for (name, g) in graphs {
        let exact = exact_curvature(&g, DEFAULT_BUDGET).unwrap().exact_values();
        assert_eq!(exact, permutation_average(&g), "{name}");
        let total = exact.iter().fold(BigRational::zero(), |a, b| a + b);
        assert_eq!(
            total,
            BigRational::from_integer(brute_chi(&g).into()),
            "{name}"
        );
    }
}
