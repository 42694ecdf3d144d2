//! Counts checked against closed forms and a tiny independent enumerator.

use num::BigUint;
use threshold_hom::graphcore::{disjoint_union, Graph, Hypergraph};
use threshold_hom::homcount::{hom_count, hom_count_hyper, injective_hom_count};
use threshold_hom::optimize::{janson_bound, search_all_max, search_threshold_max};
use threshold_hom::threshold::{
    build_graph, limit_density, quasi_clique, quasi_star, three_part_sizes, LimitThreshold,
};

/// Plain odometer over all maps `V(H) -> V(G)`.
fn brute(h: &Graph, g: &Graph) -> u64 {
    let (p, n) = (h.n(), g.n());
    let mut phi = vec![0usize; p];
    let mut count = 0;
    loop {
        if h.edges().all(|(a, b)| g.has_edge(phi[a], phi[b])) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == p {
                return count;
            }
            phi[i] += 1;
            if phi[i] < n {
                break;
            }
            phi[i] = 0;
            i += 1;
        }
    }
}

fn count(h: &Graph, g: &Graph) -> BigUint {
    hom_count(h, g).unwrap().into_inner()
}

#[test]
fn cliques_and_cycles_into_complete_graphs() {
    for n in 1u64..=7 {
        let kn = Graph::complete(n as usize);
        assert_eq!(count(&Graph::complete(3), &kn), BigUint::from(n * n.saturating_sub(1) * n.saturating_sub(2)));
        for len in 3..=6u32 {
            // closed form for proper colourings of a cycle
            let m = n as i64 - 1;
            let expected = m.pow(len) + if len % 2 == 0 { m } else { -m };
            assert_eq!(count(&Graph::cycle(len as usize), &kn), BigUint::from(expected as u64));
        }
        assert_eq!(count(&Graph::path(4), &kn), BigUint::from(n * (n - 1).pow(3)));
    }
}

#[test]
fn stars_count_degree_powers() {
    let g = Graph::new(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]).unwrap();
    for leaves in 1..=4u32 {
        let expected: u64 = (0..g.n()).map(|v| (g.degree(v) as u64).pow(leaves)).sum();
        assert_eq!(count(&Graph::star(leaves as usize), &g), BigUint::from(expected));
    }
}

#[test]
fn agrees_with_the_odometer() {
    let patterns = [Graph::path(3), Graph::cycle(4), Graph::complete(3), disjoint_union(&Graph::complete(2), &Graph::path(3))];
    let targets = [Graph::cycle(5), Graph::complete_bipartite(2, 3), Graph::star(4), build_graph(&quasi_star(6, 7).unwrap())];
    for h in &patterns {
        for g in &targets {
            assert_eq!(count(h, g), BigUint::from(brute(h, g)));
        }
    }
}

#[test]
fn injective_counts_of_cliques() {
    assert_eq!(injective_hom_count(&Graph::complete(3), &Graph::complete(5)).unwrap().into_inner(), BigUint::from(60u32));
    assert_eq!(injective_hom_count(&Graph::cycle(4), &Graph::complete_bipartite(2, 2)).unwrap().into_inner(), BigUint::from(8u32));
}

#[test]
fn hypergraph_counts() {
    // an edge into the complete 3-graph on n vertices: n(n-1)(n-2)
    let edge = Hypergraph::complete(3, 3).unwrap();
    for n in 3..=6u64 {
        let g = Hypergraph::complete(n as usize, 3).unwrap();
        assert_eq!(hom_count_hyper(&edge, &g).unwrap().into_inner(), BigUint::from(n * (n - 1) * (n - 2)));
    }
}

#[test]
fn small_extremal_values() {
    // K_{1,2} on 4 vertices, 3 edges: the star gives 9 + 3 = 12
    assert_eq!(search_all_max(&Graph::star(2), 4, 3).unwrap().best, 12u64.into());
    assert_eq!(search_threshold_max(&Graph::star(2), 4, 3).unwrap().best, 12u64.into());
    // triangles on 4 vertices, 5 edges: K4 minus an edge has two triangles
    assert_eq!(search_all_max(&Graph::complete(3), 4, 5).unwrap().best, 12u64.into());
}

#[test]
fn limit_densities_of_cliques() {
    let p = 0.6f64;
    let l = LimitThreshold::new(vec![(true, p), (false, 1.0 - p)]).unwrap();
    assert!((limit_density(&Graph::complete(3), &l) - p.powi(3)).abs() < 1e-12);
    assert!((limit_density(&Graph::complete(2), &l) - p * p).abs() < 1e-12);
    // cherry into quasi-clique: p * p^2 + (1 - p) * 0 for cherry centred in clique
    // plus contributions from the isolated part, which is empty
    assert!((limit_density(&Graph::star(2), &l) - p.powi(3)).abs() < 1e-12);
    let star = LimitThreshold::new(vec![(false, 1.0 - p), (true, p)]).unwrap();
    // 1 - (1-p)^2 edge density; cherry: p + (1 - p) p^2
    let d = limit_density(&Graph::star(2), &star);
    assert!((d - (p + (1.0 - p) * p * p)).abs() < 1e-12);
}

#[test]
fn constructions_have_the_requested_size() {
    for n in 2..=12usize {
        for m in 0..=n * (n - 1) / 2 {
            assert_eq!(build_graph(&quasi_clique(n, m).unwrap()).edge_count(), m);
            assert_eq!(build_graph(&quasi_star(n, m).unwrap()).edge_count(), m);
        }
    }
    let (a, b, g) = three_part_sizes(100, 400).unwrap();
    assert_eq!(a + b + g, 100);
}

#[test]
fn janson_bound_for_the_cherry() {
    // fractional independence number 2 gives exponents n^1 m^1
    assert!((janson_bound(&Graph::star(2), 10, 30).unwrap() - 300.0).abs() < 1e-9);
}
