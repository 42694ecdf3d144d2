use std::fmt;

use num::BigUint;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graphcore::Graph;
use crate::homcount::{for_each_hom, HomCount, DEFAULT_BUDGET};

/// Ordered path `w x y z` of `H` whose chords `wy` and `xz` are missing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ForbiddenPath(pub [usize; 4]);

pub fn forbidden_paths(h: &Graph) -> Vec<ForbiddenPath> {
    let mut out = Vec::new();
    for x in 0..h.n() {
        for &y in h.neighbors(x) {
            for &w in h.neighbors(x) {
                if w == y || h.has_edge(w, y) {
                    continue;
                }
                for &z in h.neighbors(y) {
                    if z == x || z == w || h.has_edge(x, z) {
                        continue;
                    }
                    out.push(ForbiddenPath([w, x, y, z]));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// `N(v) \ N[u]`: the neighbours of `v` that a move from `v` to `u` rewires.
pub fn moved_set(g: &Graph, u: usize, v: usize) -> Vec<usize> {
    g.neighbors(v)
        .iter()
        .copied()
        .filter(|&s| s != u && !g.has_edge(u, s))
        .collect()
}

fn check_pair(g: &Graph, u: usize, v: usize) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(invalid(format!("a local move needs two distinct vertices, got {u} twice")));
    }
    Ok(())
}

/// Moves every neighbour of `v` outside `N[u]` over to `u`. Returns the new
/// graph and the number of rewired neighbours.
pub fn local_move(g: &Graph, u: usize, v: usize) -> Result<(Graph, usize)> {
    check_pair(g, u, v)?;
    let moved = moved_set(g, u, v);
    let mut out = g.clone();
    for &s in &moved {
        out.remove_edge(v, s);
        out.insert_edge(u, s);
    }
    Ok((out, moved.len()))
}

/// Which vertices of a forbidden path are inspected for `u`, `v` and a
/// rewired vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathImage {
    /// All four vertices.
    Full,
    /// The first three vertices of each orientation.
    Prefix,
}

/// Homomorphisms `H -> G` that do not place `u`, `v` and a vertex of
/// `N(v) \ N[u]` together on the image of a forbidden path.
pub fn protected_hom_count(h: &Graph, g: &Graph, u: usize, v: usize) -> Result<HomCount> {
    protected_hom_count_with(h, g, u, v, PathImage::Full, DEFAULT_BUDGET)
}

pub fn protected_hom_count_with(
    h: &Graph,
    g: &Graph,
    u: usize,
    v: usize,
    image: PathImage,
    budget: u64,
) -> Result<HomCount> {
    check_pair(g, u, v)?;
    let mut in_s = vec![false; g.n()];
    for s in moved_set(g, u, v) {
        in_s[s] = true;
    }
    let paths = forbidden_paths(h);
    let width = match image {
        PathImage::Full => 4,
        PathImage::Prefix => 3,
    };
    let mut count = 0u128;
    for_each_hom(h, g, budget, |phi| {
        let bad = paths.iter().any(|p| {
            let imgs = p.0[..width].iter().map(|&a| phi[a]);
            let (mut has_u, mut has_v, mut has_s) = (false, false, false);
            for x in imgs {
                has_u |= x == u;
                has_v |= x == v;
                has_s |= in_s[x];
            }
            has_u && has_v && has_s
        });
        if !bad {
            count += 1;
        }
    })?;
    Ok(HomCount::from(count))
}

/// `4! · f · |S| · n^(|H|-3)` with `f` the number of unordered forbidden
/// paths of `H`: an upper bound on homomorphisms excluded by
/// [`protected_hom_count`].
pub fn bad_hom_bound(h: &Graph, n: usize, moved: usize) -> BigUint {
    let f = forbidden_paths(h).len() / 2;
    if f == 0 || moved == 0 {
        return BigUint::default();
    }
    BigUint::from(24 * f * moved) * num::pow(BigUint::from(n), h.n() - 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub u: usize,
    pub v: usize,
    pub moved: usize,
}

/// Sequence of applied moves, each with its number of rewired neighbours.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MoveLog {
    moves: Vec<Move>,
}

impl MoveLog {
    pub fn push(&mut self, u: usize, v: usize, moved: usize) {
        self.moves.push(Move { u, v, moved });
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn move_count(&self) -> usize {
        self.moves.len()
    }

    pub fn total_movement(&self) -> usize {
        self.moves.iter().map(|m| m.moved).sum()
    }
}

/// One `u v moved` line per move, then `total <movement> count <moves>`.
impl fmt::Display for MoveLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.moves {
            writeln!(f, "{} {} {}", m.u, m.v, m.moved)?;
        }
        writeln!(f, "total {} count {}", self.total_movement(), self.move_count())
    }
}

/// Turns `g` into a threshold graph. At each level the vertex of largest
/// degree inside the active set (lowest index on ties) absorbs the
/// neighbourhoods of all other active vertices in index order; it and the
/// active vertices left without an edge to it are then set aside.
pub fn thresholdize(g: &Graph) -> (Graph, MoveLog) {
    let mut g = g.clone();
    let mut log = MoveLog::default();
    let mut active: Vec<usize> = (0..g.n()).collect();
    let mut in_active = vec![true; g.n()];
    while active.len() > 1 {
        let inner_degree = |g: &Graph, v: usize| g.neighbors(v).iter().filter(|&&w| in_active[w]).count();
        let hub = active
            .iter()
            .copied()
            .max_by_key(|&v| (inner_degree(&g, v), std::cmp::Reverse(v)))
            .expect("nonempty active set");
        for &w in &active {
            if w == hub {
                continue;
            }
            let (next, moved) = local_move(&g, hub, w).expect("distinct active vertices");
            g = next;
            log.push(hub, w, moved);
        }
        for &w in &active {
            if w == hub || !g.has_edge(hub, w) {
                in_active[w] = false;
            }
        }
        active.retain(|&w| in_active[w]);
    }
    (g, log)
}
