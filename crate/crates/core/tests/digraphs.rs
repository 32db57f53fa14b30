use itertools::Itertools;

use phcurv_core::experiments::{
    irrotational_probability, triangle_census, triangle_cycle_fraction,
};
use phcurv_core::{registry, Orientation};

/// Every orientation of `K_n`, enumerated by bit mask over the edges.
fn irrotational_fraction_by_enumeration(n: usize) -> (u64, u64) {
    let g = registry::complete(n);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let total = 1u64 << edges.len();
    let mut hits = 0;
    for mask in 0..total {
        let arcs: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (u, v) } else { (v, u) })
            .collect();
        let o = Orientation::from_arcs(&g, &arcs).unwrap();
        let cyclic = (0..n).tuple_combinations().any(|(a, b, c)| {
            (o.points_to(a, b) && o.points_to(b, c) && o.points_to(c, a))
                || (o.points_to(b, a) && o.points_to(c, b) && o.points_to(a, c))
        });
        if !cyclic {
            hits += 1;
        }
        assert_eq!(o.is_irrotational(), !cyclic);
        assert_eq!(triangle_census(&g, &o).1 == 0, !cyclic);
    }
    (hits, total)
}

#[test]
fn enumeration_of_small_tournaments() {
    assert_eq!(irrotational_fraction_by_enumeration(3), (6, 8));
    assert_eq!(irrotational_fraction_by_enumeration(4), (24, 64));
}

#[test]
fn sampled_k4_matches_enumeration() {
    let (hits, total) = irrotational_fraction_by_enumeration(4);
    let exact = hits as f64 / total as f64;
    let r = irrotational_probability(4, 1.0, 20_000, 11).unwrap();
    assert!(r.probability.z_score(exact) < 3.0, "{:?}", r.probability);
}

#[test]
fn triangle_fraction_is_a_quarter() {
    let r = triangle_cycle_fraction(20, 0.5, 200, 5).unwrap();
    let f = r.fraction.unwrap();
    assert!(f.z_score(0.25) < 3.0, "{f:?}");
}
