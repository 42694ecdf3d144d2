//! Executable checks of the library's headline properties. Each suite runs
//! a deterministic experiment from a seed and reports pass/fail with a
//! one-line summary. Shared by the `acceptance` test target and the CLI.

use std::time::{Duration, Instant};

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graphcore::{all_labeled_graphs, disjoint_union, double_graph, Graph, Hypergraph};
use crate::homcount::{hom_count, hom_count_naive, hom_density};
use crate::moves::{
    forbidden_paths, hyper_local_move, hyper_thresholdize, is_threshold_hyper, local_move,
    protected_hom_count, thresholdize,
};
use crate::optimize::{
    alpha_star, independence_number, janson_ratio_report, limit_search, search_all_max,
    search_threshold_max, two_star_no_interior_max, verify_domination, LimitSearchOptions,
    TwoStarInstance, TwoStarMode, EFFECTIVE_PART,
};
use crate::threshold::{
    blocks_of, build_graph, hom_count_blocks, is_threshold, limit_density, quasi_clique,
    CreationSequence, LimitThreshold,
};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub key: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:02} {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.key,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

pub struct Suite {
    pub id: u8,
    pub key: &'static str,
    pub description: &'static str,
    check: fn(&mut ChaCha8Rng) -> Result<(bool, String)>,
}

impl Suite {
    pub fn run(&self, seed: u64) -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (self.id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let start = Instant::now();
        let (passed, detail) = match (self.check)(&mut rng) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        Outcome {
            id: self.id,
            key: self.key,
            passed,
            detail,
            elapsed: start.elapsed(),
        }
    }
}

pub const SUITES: &[Suite] = &[
    Suite { id: 1, key: "counting", description: "backtracking counts equal full enumeration", check: counting },
    Suite { id: 2, key: "blocks", description: "block-wise counts equal full enumeration on threshold graphs", check: blocks },
    Suite { id: 3, key: "doubling", description: "densities are invariant under vertex doubling", check: doubling },
    Suite { id: 4, key: "local-move", description: "local moves keep every protected homomorphism", check: local_moves },
    Suite { id: 5, key: "thresholdize", description: "thresholdization output and move budgets", check: thresholdization },
    Suite { id: 6, key: "equality", description: "threshold graphs attain the maximum for P4/C4-free patterns", check: equality },
    Suite { id: 7, key: "c4", description: "the 4-cycle maximum on 4 edges is not threshold", check: four_cycle },
    Suite { id: 8, key: "fractional", description: "fractional and integral independence numbers", check: fractional },
    Suite { id: 9, key: "domination", description: "density domination by the edge density", check: domination },
    Suite { id: 10, key: "three-part", description: "three parts beat two for K6 + K1,3 at low density", check: three_parts },
    Suite { id: 11, key: "two-star", description: "cherry closed forms and two-part optima", check: two_star },
    Suite { id: 12, key: "quasi-clique", description: "quasi-cliques maximize at high density", check: high_density },
    Suite { id: 13, key: "janson", description: "cherry maxima stay within a constant of the bound", check: janson },
    Suite { id: 14, key: "hypergraph", description: "hypergraph thresholdization", check: hypergraph },
];

pub fn find(key: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.key == key || s.id.to_string() == key)
}

/// Runs every suite on its own thread; results come back in suite order.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = SUITES
            .iter()
            .map(|s| scope.spawn(move || s.run(seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}

fn random_pair(rng: &mut ChaCha8Rng, max_h: usize, max_g: usize) -> (Graph, Graph) {
    let h = Graph::random_gnp(rng.gen_range(1..=max_h), 0.5, rng);
    let g = Graph::random_gnp(rng.gen_range(1..=max_g), 0.5, rng);
    (h, g)
}

fn distinct_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let u = rng.gen_range(0..n);
    (u, (u + rng.gen_range(1..n)) % n)
}

fn verdict(failures: usize, summary: String) -> Result<(bool, String)> {
    Ok((failures == 0, summary))
}

fn counting(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut failures = 0;
    let mut checked = 0;
    for _ in 0..200 {
        let (h, g) = random_pair(rng, 4, 5);
        checked += 1;
        failures += (hom_count(&h, &g)? != hom_count_naive(&h, &g)?) as usize;
    }
    let patterns = [Graph::complete(2), Graph::path(3), Graph::complete(3), Graph::cycle(4)];
    for n in 1..=5 {
        for g in all_labeled_graphs(n) {
            for h in &patterns {
                checked += 1;
                failures += (hom_count(h, &g)? != hom_count_naive(h, &g)?) as usize;
            }
        }
    }
    verdict(failures, format!("{checked} pairs, {failures} mismatches"))
}

fn blocks(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let patterns = [
        Graph::complete(2),
        Graph::star(2),
        Graph::path(4),
        Graph::complete(3),
        Graph::cycle(4),
        Graph::star(3),
    ];
    let mut failures = 0;
    let mut checked = 0;
    for n in 1..=7usize {
        for mask in 0u32..1 << (n - 1) {
            let seq = CreationSequence::new((0..n - 1).map(|i| mask >> i & 1 == 1).collect());
            let g = build_graph(&seq);
            let b = blocks_of(&seq);
            for h in &patterns {
                checked += 1;
                failures += (hom_count_blocks(h, &b) != hom_count_naive(h, &g)?) as usize;
            }
        }
    }
    verdict(failures, format!("{checked} sequence/pattern pairs, {failures} mismatches"))
}

fn doubling(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut failures = 0;
    for _ in 0..50 {
        let (h, g) = random_pair(rng, 4, 6);
        failures += (hom_density(&h, &g)? != hom_density(&h, &double_graph(&g))?) as usize;
    }
    verdict(failures, format!("50 pairs, {failures} density changes"))
}

fn local_moves(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let patterns = [
        Graph::path(4),
        Graph::cycle(4),
        disjoint_union(&Graph::path(3), &Graph::complete(2)),
    ];
    let mut violations = 0;
    for i in 0..100 {
        let h = &patterns[i % patterns.len()];
        let g = Graph::random_gnp(rng.gen_range(2..=7), 0.5, rng);
        let (u, v) = distinct_pair(rng, g.n());
        let (moved, _) = local_move(&g, u, v)?;
        violations += (hom_count(h, &moved)? < protected_hom_count(h, &g, u, v)?) as usize;
    }
    let safe = [
        Graph::complete(3),
        Graph::star(3),
        build_graph(&quasi_clique(5, 4)?),
        build_graph(&quasi_clique(6, 8)?),
    ];
    let mut decreases = 0;
    let mut moves = 0;
    let mut path_free = true;
    for h in &safe {
        path_free &= forbidden_paths(h).is_empty();
    }
    for _ in 0..20 {
        let g = Graph::random_gnp(rng.gen_range(2..=6), 0.5, rng);
        let before: Vec<_> = safe.iter().map(|h| hom_count(h, &g)).collect::<Result<_>>()?;
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u == v {
                    continue;
                }
                let (moved, _) = local_move(&g, u, v)?;
                for (h, b) in safe.iter().zip(&before) {
                    moves += 1;
                    decreases += (hom_count(h, &moved)? < *b) as usize;
                }
            }
        }
    }
    Ok((
        violations == 0 && decreases == 0 && path_free,
        format!(
            "100 protected-count instances, {violations} violations; {moves} moves on path-free patterns, {decreases} decreases"
        ),
    ))
}

fn thresholdization(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut failures = 0;
    let mut worst_moves = 0f64;
    for _ in 0..500 {
        let n = rng.gen_range(1..=40);
        let g = Graph::random_gnp(n, 0.5, rng);
        let (t, log) = thresholdize(&g);
        let ok = is_threshold(&t)
            && log.move_count() <= n * n
            && log.total_movement() <= g.edge_count();
        failures += !ok as usize;
        worst_moves = worst_moves.max(log.move_count() as f64 / (n * n) as f64);
    }
    verdict(
        failures,
        format!("500 graphs, {failures} violations, max moves/n^2 = {worst_moves:.3}"),
    )
}

fn equality(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut failures = 0;
    let mut checked = 0;
    for h in [Graph::complete(3), Graph::star(2), Graph::star(3)] {
        for n in 1..=6usize {
            for m in 0..=n * (n - 1) / 2 {
                checked += 1;
                let all = search_all_max(&h, n, m)?.best;
                let thr = search_threshold_max(&h, n, m)?.best;
                failures += (all != thr) as usize;
            }
        }
    }
    verdict(failures, format!("{checked} (H, n, m) points, {failures} gaps"))
}

fn four_cycle(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let c4 = Graph::cycle(4);
    let all = search_all_max(&c4, 4, 4)?;
    let thr = search_threshold_max(&c4, 4, 4)?;
    let ok = all.best == 32u64.into() && !is_threshold(&all.witness) && thr.best == 28u64.into();
    Ok((
        ok,
        format!(
            "max over all graphs {} (threshold witness: {}), over threshold graphs {} at \"{}\"",
            all.best,
            is_threshold(&all.witness),
            thr.best,
            thr.witness
        ),
    ))
}

fn fractional(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let h = disjoint_union(&Graph::complete(6), &Graph::star(3));
    let a = alpha_star(&h).alpha_star();
    let ind = independence_number(&h)?;
    let c5 = alpha_star(&Graph::cycle(5)).alpha_star();
    let mut bipartite = 0;
    let mut mismatches = 0;
    for n in 1..=8usize {
        for left in 1..=n / 2 {
            let pairs: Vec<(usize, usize)> =
                (0..left).flat_map(|u| (left..n).map(move |v| (u, v))).collect();
            for mask in 0u64..1 << pairs.len() {
                let g = Graph::new(
                    n,
                    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
                )?;
                bipartite += 1;
                let r = alpha_star(&g);
                if r.alpha_star() != BigRational::from_integer(independence_number(&g)?.into()) {
                    mismatches += 1;
                }
            }
        }
    }
    let ok = a == BigRational::from_integer(6.into())
        && ind == 4
        && c5 == BigRational::new(5.into(), 2.into())
        && mismatches == 0;
    Ok((
        ok,
        format!(
            "K6+K1,3: alpha* = {a}, alpha = {ind}; C5: alpha* = {c5}; {bipartite} bipartite graphs, {mismatches} mismatches"
        ),
    ))
}

fn domination(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut targets: Vec<Graph> = (1..=5).flat_map(all_labeled_graphs).collect();
    for _ in 0..500 {
        let p = rng.gen_range(0.05..0.95);
        targets.push(Graph::random_gnp(rng.gen_range(1..=8), p, rng));
    }
    let mut violations = 0;
    let mut parts = Vec::new();
    for h in [Graph::star(2), Graph::complete(3), Graph::path(4)] {
        let r = verify_domination(&h, &targets)?;
        violations += r.violations;
        parts.push(format!("e={} max ratio {:.3}", r.exponent, r.max_ratio.unwrap_or(0.0)));
    }
    verdict(
        violations,
        format!("{} targets x 3 patterns, {violations} violations ({})", targets.len(), parts.join("; ")),
    )
}

/// Threshold for the three-part advantage.
const THREE_PART_FACTOR: f64 = 10.0;

fn three_parts(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let h = disjoint_union(&Graph::complete(6), &Graph::star(3));
    let c = 1e-3;
    let opts = |parts| LimitSearchOptions {
        max_parts: parts,
        grid_steps: 200,
        tolerance: 1e-6,
        refine_top: 4,
    };
    let two = limit_search(&h, c, &opts(2))?;
    let three = limit_search(&h, c, &opts(3))?;
    let recheck = (limit_density(&h, &three.witness) - three.best).abs() <= 1e-9 * three.best.max(1e-300);
    let ratio = three.best / two.best;
    Ok((
        three.witness.parts() == 3 && ratio > THREE_PART_FACTOR && recheck,
        format!(
            "best <=2 parts {:.4e} at {}; best 3 parts {:.4e} at {}; ratio {ratio:.1}",
            two.best, two.witness, three.best, three.witness
        ),
    ))
}

const CLOSED_FORM_TOL: f64 = 1e-12;
const DERIVATIVE_TOL: f64 = 1e-6;
const DIFFERENCE_STEP: f64 = 1e-6;

fn two_star(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut form_err = 0f64;
    let mut deriv_err = 0f64;
    let mut interior = 0;
    let mut instances = 0;
    for mode in [TwoStarMode::ZeroLead, TwoStarMode::OneLead] {
        for i in 1..=10 {
            let d = i as f64 / 10.0;
            for j in 1..=10 {
                let c = d * d * j as f64 / 10.0;
                for l in 0..10 {
                    let k = (1.0 - d) * l as f64 / 10.0;
                    let inst = TwoStarInstance::new(c, d, k, mode);
                    instances += 1;
                    interior += !two_star_no_interior_max(&inst) as usize;
                    let Some((lo, hi)) = inst.feasible() else { continue };
                    for t in 1..10 {
                        let beta = lo + (hi - lo) * t as f64 / 10.0;
                        form_err = form_err.max((inst.f(beta)? - inst.objective(beta)?).abs());
                        let fd = (inst.f(beta + DIFFERENCE_STEP)? - inst.f(beta - DIFFERENCE_STEP)?)
                            / (2.0 * DIFFERENCE_STEP);
                        deriv_err = deriv_err.max((fd - inst.fprime(beta)?).abs());
                    }
                }
            }
        }
    }
    let h = Graph::star(2);
    let opts = LimitSearchOptions {
        max_parts: 4,
        grid_steps: 50,
        tolerance: 1e-6,
        refine_top: 3,
    };
    let mut too_many = Vec::new();
    for i in 1..=19 {
        let c = i as f64 * 0.05;
        let r = limit_search(&h, c, &opts)?;
        if r.witness.effective_parts(EFFECTIVE_PART) > 2 {
            too_many.push(format!("c={c:.2}: {}", r.witness));
        }
    }
    let ok = form_err <= CLOSED_FORM_TOL && deriv_err <= DERIVATIVE_TOL && interior == 0 && too_many.is_empty();
    Ok((
        ok,
        format!(
            "{instances} instances: closed-form error {form_err:.1e}, derivative error {deriv_err:.1e}, {interior} interior maxima; {} of 19 budgets need a third part{}",
            too_many.len(),
            if too_many.is_empty() { String::new() } else { format!(" ({})", too_many.join("; ")) }
        ),
    ))
}

const QUASI_CLIQUE_TOL: f64 = 1e-3;

fn high_density(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let opts = LimitSearchOptions {
        max_parts: 4,
        grid_steps: 40,
        tolerance: 1e-6,
        refine_top: 3,
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, h) in [
        ("P4", Graph::path(4)),
        ("K3+K2", disjoint_union(&Graph::complete(3), &Graph::complete(2))),
    ] {
        for c in [0.9, 0.95] {
            let r = limit_search(&h, c, &opts)?;
            let p = f64::sqrt(c);
            let expected = LimitThreshold::new(vec![(true, p), (false, 1.0 - p)])?;
            let w = r.witness.blocks();
            let close = w.len() == 2
                && w.iter()
                    .zip(expected.blocks())
                    .all(|(a, b)| a.0 == b.0 && (a.1 - b.1).abs() <= QUASI_CLIQUE_TOL);
            ok &= close;
            parts.push(format!("{name} c={c}: {} ({:.6})", r.witness, r.best));
        }
    }
    Ok((ok, parts.join("; ")))
}

const JANSON_WINDOW: f64 = 10.0;

fn janson(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let h = Graph::star(2);
    let ns: Vec<usize> = (8..=12).collect();
    let ms: Vec<usize> = (16..=66).collect();
    let r = janson_ratio_report(&h, &ns, &ms)?;
    let short: Vec<String> = r
        .rows
        .iter()
        .filter(|row| row.three_part.parse::<f64>().unwrap_or(0.0) < row.guarantee)
        .map(|row| format!("n={} m={}", row.n, row.m))
        .collect();
    Ok((
        r.spread() < JANSON_WINDOW && short.is_empty(),
        format!(
            "{} grid points, ratio in [{:.3}, {:.3}] (spread {:.2}), {} points below the three-part guarantee",
            r.rows.len(),
            r.min_ratio,
            r.max_ratio,
            r.spread(),
            short.len()
        ),
    ))
}

fn hypergraph(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut failures = 0;
    let mut removed = 0;
    let mut moves = 0;
    for _ in 0..50 {
        let n = rng.gen_range(3..=12);
        let g = Hypergraph::random(n, 3, 0.5, rng)?;
        let (t, report) = hyper_thresholdize(&g);
        let root = (n as f64).sqrt().ceil() as usize;
        failures += !(is_threshold_hyper(&t) && report.edges_removed <= root * n * n) as usize;
        removed += report.edges_removed;
        moves += report.moves_used;
    }
    let mut disagreements = 0;
    for _ in 0..100 {
        let g = Graph::random_gnp(rng.gen_range(2..=10), 0.5, rng);
        let (u, v) = distinct_pair(rng, g.n());
        let (a, ma) = local_move(&g, u, v)?;
        let (b, mb) = hyper_local_move(&Hypergraph::from_graph(&g), u, v)?;
        disagreements += (ma != mb || b.to_graph()? != a) as usize;
    }
    Ok((
        failures == 0 && disagreements == 0,
        format!(
            "50 hypergraphs, {failures} violations ({moves} moves, {removed} edges removed); 100 graph moves, {disagreements} disagreements"
        ),
    ))
}
