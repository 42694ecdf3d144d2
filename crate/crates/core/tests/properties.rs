use num::{BigRational, BigUint};
use proptest::prelude::*;
use threshold_hom::graphcore::{complement, double_graph, Graph, Hypergraph};
use threshold_hom::homcount::{hom_count, hom_count_naive, hom_density, injective_hom_count};
use threshold_hom::moves::{
    hyper_thresholdize, is_threshold_hyper, local_move, protected_hom_count, thresholdize,
};
use threshold_hom::optimize::{alpha_star, domination_exponent, independence_number};
use threshold_hom::threshold::{
    blocks_of, build_graph, creation_sequence_of, hom_count_blocks, is_threshold, limit_density,
    limit_edge_density, CreationSequence, LimitThreshold,
};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| it.next().unwrap())
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn sequence(max_n: usize) -> impl Strategy<Value = CreationSequence> {
    proptest::collection::vec(any::<bool>(), 0..max_n).prop_map(CreationSequence::new)
}

fn limit_structure() -> impl Strategy<Value = LimitThreshold> {
    proptest::collection::vec((any::<bool>(), 1u32..100), 1..5).prop_map(|raw| {
        let total: u32 = raw.iter().map(|r| r.1).sum();
        let blocks = raw
            .into_iter()
            .map(|(b, w)| (b, w as f64 / total as f64))
            .collect::<Vec<_>>();
        LimitThreshold::normalized(blocks, 0.0).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn backtracking_matches_enumeration(h in graph(4), g in graph(5)) {
        prop_assert_eq!(hom_count(&h, &g).unwrap(), hom_count_naive(&h, &g).unwrap());
    }

    #[test]
    fn injective_counts_are_bounded_by_all_counts(h in graph(4), g in graph(6)) {
        prop_assert!(injective_hom_count(&h, &g).unwrap().value() <= hom_count(&h, &g).unwrap().value());
    }

    #[test]
    fn density_is_invariant_under_doubling(h in graph(4), g in graph(5)) {
        prop_assert_eq!(hom_density(&h, &g).unwrap(), hom_density(&h, &double_graph(&g)).unwrap());
    }

    #[test]
    fn density_is_invariant_under_relabeling(h in graph(4), g in graph(6), shift in 0usize..6) {
        let n = g.n();
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        prop_assert_eq!(hom_count(&h, &g).unwrap(), hom_count(&h, &g.relabel(&perm).unwrap()).unwrap());
    }

    #[test]
    fn sequences_round_trip(seq in sequence(12)) {
        let g = build_graph(&seq);
        prop_assert!(is_threshold(&g));
        prop_assert_eq!(g.edge_count(), seq.edge_count());
        prop_assert_eq!(creation_sequence_of(&g).unwrap(), seq.clone());
        prop_assert_eq!(seq.to_string().parse::<CreationSequence>().unwrap(), seq.clone());
        prop_assert_eq!(build_graph(&seq.complement()), complement(&g));
        prop_assert_eq!(blocks_of(&seq).to_sequence().unwrap(), seq);
    }

    #[test]
    fn block_counts_match_enumeration(h in graph(4), seq in sequence(7)) {
        let g = build_graph(&seq);
        prop_assert_eq!(hom_count_blocks(&h, &blocks_of(&seq)), hom_count_naive(&h, &g).unwrap());
    }

    #[test]
    fn thresholdize_yields_threshold_graphs(g in graph(14)) {
        let (t, log) = thresholdize(&g);
        prop_assert!(is_threshold(&t));
        prop_assert_eq!(t.n(), g.n());
        prop_assert!(log.move_count() <= g.n() * g.n());
        prop_assert!(log.total_movement() <= g.edge_count());
        prop_assert!(t.edge_count() <= g.edge_count());
    }

    #[test]
    fn local_move_keeps_protected_homomorphisms(h in graph(4), g in graph(6), a in 0usize..6, b in 1usize..6) {
        prop_assume!(g.n() >= 2);
        let u = a % g.n();
        let v = (u + 1 + b % (g.n() - 1)) % g.n();
        let (moved, count) = local_move(&g, u, v).unwrap();
        prop_assert_eq!(moved.edge_count(), g.edge_count());
        prop_assert!(count <= g.degree(v));
        prop_assert!(hom_count(&h, &moved).unwrap() >= protected_hom_count(&h, &g, u, v).unwrap());
    }

    #[test]
    fn fractional_independence_sandwich(h in graph(8)) {
        let r = alpha_star(&h);
        let a = r.alpha_star();
        let alpha = BigRational::from_integer(independence_number(&h).unwrap().into());
        let n = BigRational::from_integer(h.n().into());
        let half = BigRational::new(1.into(), 2.into());
        prop_assert!(alpha <= a);
        prop_assert!(a >= &n * &half);
        prop_assert!(a <= n);
        for (u, v) in h.edges() {
            prop_assert!(r.doubled_weights()[u] + r.doubled_weights()[v] <= 2);
        }
        prop_assert_eq!(domination_exponent(&h), &n - &a);
    }

    #[test]
    fn domination_holds_exactly(h in graph(4), g in graph(6)) {
        let e = domination_exponent(&h);
        let t = hom_density(&h, &g).unwrap();
        let n = BigUint::from(g.n());
        let d = BigRational::new((2 * g.edge_count()).into(), (&n * &n).into());
        // t <= d^e with e a half-integer: compare t^2 <= d^(2e)
        let twice = (e * BigRational::from_integer(2.into())).to_integer();
        let exp: u32 = twice.try_into().unwrap();
        let lhs = t.value() * t.value();
        let rhs = (0..exp).fold(BigRational::from_integer(1.into()), |acc, _| acc * &d);
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn limit_density_of_an_edge_is_the_edge_density(l in limit_structure()) {
        let d = limit_density(&Graph::complete(2), &l);
        prop_assert!((d - limit_edge_density(&l)).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&d));
    }

    #[test]
    fn blow_ups_preserve_size(l in limit_structure(), n in 1usize..60) {
        let b = l.blow_up(n);
        prop_assert_eq!(b.n(), n);
    }

    #[test]
    fn hypergraph_thresholdize_yields_threshold(n in 3usize..9, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = Hypergraph::random(n, 3, 0.5, &mut rng).unwrap();
        let (t, report) = hyper_thresholdize(&g);
        prop_assert!(is_threshold_hyper(&t));
        prop_assert!(t.edge_count() + report.edges_removed <= g.edge_count());
    }
}
