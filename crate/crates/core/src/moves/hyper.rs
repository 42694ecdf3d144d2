use std::collections::BTreeMap;

use num::BigUint;
use serde::Serialize;

use super::domset::{dominating_set, Incidence};
use super::graph::MoveLog;
use crate::error::{invalid, Result};
use crate::graphcore::Hypergraph;
use crate::homcount::HomCount;

fn swapped(e: &[usize], out: usize, inn: usize) -> Vec<usize> {
    let mut f: Vec<usize> = e.iter().copied().filter(|&x| x != out).collect();
    f.push(inn);
    f.sort_unstable();
    f
}

/// Replaces every edge `e` containing `v` but not `u` whose swap
/// `(e \ {v}) ∪ {u}` is absent by that swap. Returns the new hypergraph and
/// the number of replaced edges.
pub fn hyper_local_move(g: &Hypergraph, u: usize, v: usize) -> Result<(Hypergraph, usize)> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(invalid(format!("a local move needs two distinct vertices, got {u} twice")));
    }
    let replace: Vec<(Vec<usize>, Vec<usize>)> = g
        .edges()
        .filter(|e| e.contains(&v) && !e.contains(&u))
        .map(|e| (e.to_vec(), swapped(e, v, u)))
        .filter(|(_, f)| !g.contains(f))
        .collect();
    let mut out = g.clone();
    let edges = out.edge_set_mut();
    for (e, f) in &replace {
        edges.remove(e);
        edges.insert(f.clone());
    }
    Ok((out, replace.len()))
}

/// `x ≪ y`: every edge containing `x` but not `y` stays an edge when `x` is
/// swapped for `y`.
pub fn precedes(g: &Hypergraph, x: usize, y: usize) -> bool {
    g.edges()
        .filter(|e| e.contains(&x) && !e.contains(&y))
        .all(|e| g.contains(&swapped(e, x, y)))
}

pub fn is_threshold_hyper(g: &Hypergraph) -> bool {
    let n = g.n();
    (0..n).all(|x| (x + 1..n).all(|y| precedes(g, x, y) || precedes(g, y, x)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HyperMoveReport {
    /// All local moves, including repairs.
    pub moves_used: usize,
    /// Moves added to make a vertex precede the level's hub when the
    /// dominating-set chain alone did not.
    pub repair_moves: usize,
    pub edges_removed: usize,
    pub levels: usize,
    /// Upper bound on `hom(H, G) - hom(H, T)` when a pattern was supplied.
    pub homomorphism_loss_bound: Option<HomCount>,
    pub log: MoveLog,
}

/// Shells of the sub-hypergraph induced on `active`: every `(k-1)`-subset
/// of an edge, with the vertices completing it to an edge.
fn shells(g: &Hypergraph, active: &[bool]) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut out: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for e in g.edges().filter(|e| e.iter().all(|&x| active[x])) {
        for (i, &a) in e.iter().enumerate() {
            let mut s = e.to_vec();
            s.remove(i);
            out.entry(s).or_default().push(a);
        }
    }
    for adj in out.values_mut() {
        adj.sort_unstable();
    }
    out
}

pub fn hyper_thresholdize(g: &Hypergraph) -> (Hypergraph, HyperMoveReport) {
    hyper_thresholdize_with_pattern(g, None)
}

/// Turns `g` into a threshold hypergraph level by level. On the active set
/// `R`: while `|R| > k`, delete the edges through any shell of degree below
/// `⌈√|R|⌉` until none is left; greedily dominate the remaining shells; the first pick is
/// the hub and the other picks move their edges to it in pick order; any
/// active vertex that still does not precede the hub is moved to it too.
/// The hub is then set aside. With `pattern`, the report carries a bound on
/// the homomorphisms from `pattern` lost along the way.
pub fn hyper_thresholdize_with_pattern(
    g: &Hypergraph,
    pattern: Option<&Hypergraph>,
) -> (Hypergraph, HyperMoveReport) {
    let n = g.n();
    let mut g = g.clone();
    let mut report = HyperMoveReport::default();
    let mut active = vec![true; n];
    let mut remaining = n;
    while remaining > 1 {
        report.levels += 1;
        let threshold = (remaining as f64).sqrt().ceil() as usize;
        let mut sh = shells(&g, &active);
        while remaining > g.k() {
            let Some((s, adj)) = sh.iter().find(|(_, adj)| adj.len() < threshold) else {
                break;
            };
            let doomed: Vec<Vec<usize>> = adj
                .iter()
                .map(|&a| {
                    let mut e = s.clone();
                    e.push(a);
                    e.sort_unstable();
                    e
                })
                .collect();
            for e in &doomed {
                g.edge_set_mut().remove(e);
            }
            report.edges_removed += doomed.len();
            sh = shells(&g, &active);
        }
        let apply = |g: &mut Hypergraph, report: &mut HyperMoveReport, hub: usize, v: usize| {
            let (next, moved) = hyper_local_move(g, hub, v).expect("distinct vertices");
            *g = next;
            report.log.push(hub, v, moved);
            report.moves_used += 1;
        };
        let hub = if sh.is_empty() {
            let mut degree = vec![0usize; n];
            for e in g.edges() {
                for &x in e {
                    degree[x] += 1;
                }
            }
            (0..n)
                .filter(|&v| active[v])
                .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
                .expect("active vertex")
        } else {
            let inc = Incidence::new(n, sh.into_values().collect()).expect("vertices in range");
            let delta = if remaining > g.k() { threshold } else { 1 };
            let picks = dominating_set(&inc, delta).expect("pruned shells have large degree");
            let hub = picks[0];
            for &d in &picks[1..] {
                apply(&mut g, &mut report, hub, d);
            }
            hub
        };
        for v in 0..n {
            if active[v] && v != hub && !precedes(&g, v, hub) {
                apply(&mut g, &mut report, hub, v);
                report.repair_moves += 1;
            }
        }
        active[hub] = false;
        remaining -= 1;
    }
    if let Some(h) = pattern {
        report.homomorphism_loss_bound = Some(HomCount::from(loss_bound(h, n, &report)));
    }
    (g, report)
}

/// A move loses at most the homomorphisms using both of its vertices; a
/// deleted edge loses at most those mapping some pattern edge onto it.
fn loss_bound(h: &Hypergraph, n: usize, report: &HyperMoveReport) -> BigUint {
    let p = h.n();
    let k = h.k();
    let per_move = if p >= 2 {
        BigUint::from(p * (p - 1)) * num::pow(BigUint::from(n), p - 2)
    } else {
        BigUint::default()
    };
    let k_fact: usize = (1..=k).product();
    let per_edge = if p >= k {
        BigUint::from(h.edge_count() * k_fact) * num::pow(BigUint::from(n), p - k)
    } else {
        BigUint::default()
    };
    per_move * report.moves_used + per_edge * report.edges_removed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::Graph;
    use crate::homcount::hom_count_hyper;
    use crate::moves::local_move;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn threshold_examples() {
        assert!(is_threshold_hyper(&Hypergraph::complete(6, 3).unwrap()));
        let single = Hypergraph::new(4, 3, [vec![0, 1, 2]]).unwrap();
        assert!(is_threshold_hyper(&single));
        assert!(precedes(&single, 3, 0) && !precedes(&single, 0, 3));
        let two = Hypergraph::new(6, 3, [vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(!precedes(&two, 0, 3) && !precedes(&two, 3, 0));
        assert!(!is_threshold_hyper(&two));
    }

    #[test]
    fn swap_already_present_keeps_edge() {
        let g = Hypergraph::new(5, 3, [vec![1, 3, 4], vec![0, 3, 4], vec![1, 2, 3]]).unwrap();
        let (h, moved) = hyper_local_move(&g, 0, 1).unwrap();
        // {1,3,4} stays since {0,3,4} exists; {1,2,3} becomes {0,2,3}
        assert_eq!(moved, 1);
        assert_eq!(h.edge_count(), 3);
        assert!(h.contains(&[1, 3, 4]) && h.contains(&[0, 2, 3]) && !h.contains(&[1, 2, 3]));
        assert!(precedes(&h, 1, 0));
    }

    #[test]
    fn graph_case_matches_local_move() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let g = Graph::random_gnp(rng.gen_range(2..=9), 0.5, &mut rng);
            let u = rng.gen_range(0..g.n());
            let v = (u + rng.gen_range(1..g.n())) % g.n();
            let (a, ma) = local_move(&g, u, v).unwrap();
            let (b, mb) = hyper_local_move(&Hypergraph::from_graph(&g), u, v).unwrap();
            assert_eq!(ma, mb);
            assert_eq!(b.to_graph().unwrap(), a);
        }
    }

    #[test]
    fn move_keeps_homs_avoiding_the_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let h = Hypergraph::new(4, 3, [vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        for _ in 0..30 {
            let g = Hypergraph::random(7, 3, 0.4, &mut rng).unwrap();
            let (u, v) = (rng.gen_range(0..3), rng.gen_range(3..7));
            let (moved, _) = hyper_local_move(&g, u, v).unwrap();
            let mut avoiding = 0u64;
            crate::homcount::for_each_hyper_hom(&h, &g, u64::MAX, |phi| {
                if !(phi.contains(&u) && phi.contains(&v)) {
                    avoiding += 1;
                }
            })
            .unwrap();
            assert!(hom_count_hyper(&h, &moved).unwrap() >= avoiding.into());
            assert_eq!(moved.edge_count(), g.edge_count());
        }
    }

    #[test]
    fn pipeline_trivial_cases() {
        let empty = Hypergraph::empty(7, 3).unwrap();
        let (t, r) = hyper_thresholdize(&empty);
        assert_eq!(t, empty);
        assert_eq!((r.edges_removed, r.log.total_movement()), (0, 0));
        let complete = Hypergraph::complete(6, 3).unwrap();
        let (t, r) = hyper_thresholdize(&complete);
        assert_eq!(t, complete);
        assert_eq!(r.edges_removed, 0);
        assert_eq!(r.log.total_movement(), 0);
    }

    #[test]
    fn pipeline_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let h = Hypergraph::new(4, 3, [vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        for _ in 0..20 {
            let n = rng.gen_range(3..=10);
            let p = rng.gen_range(0.2..0.9);
            let g = Hypergraph::random(n, 3, p, &mut rng).unwrap();
            let (t, r) = hyper_thresholdize_with_pattern(&g, Some(&h));
            assert!(is_threshold_hyper(&t), "{g}");
            let root = (n as f64).sqrt().ceil() as usize;
            assert!(r.edges_removed <= root * n * n);
            assert_eq!(t.edge_count() + r.edges_removed, g.edge_count());
            let before = hom_count_hyper(&h, &g).unwrap().into_inner();
            let after = hom_count_hyper(&h, &t).unwrap().into_inner();
            assert!(after + r.homomorphism_loss_bound.unwrap().into_inner() >= before);
        }
    }
}
