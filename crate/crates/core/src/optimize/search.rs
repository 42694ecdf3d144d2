use std::collections::HashSet;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graphcore::Graph;
use crate::homcount::{hom_count, HomCount};
use crate::threshold::{blocks_of, hom_count_blocks, CreationSequence};

/// Best value found, a witness attaining it, and how many candidates were
/// evaluated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult<V, W> {
    pub best: V,
    pub witness: W,
    pub explored: u64,
}

/// Sequences longer than this are refused.
pub const MAX_THRESHOLD_SEARCH_N: usize = 26;
/// Vertex cap for the search over all graphs.
pub const MAX_ALL_SEARCH_N: usize = 8;

/// Largest `hom(H, T)` over threshold graphs `T` on `n` vertices with at
/// most `m` edges (isolated vertices pad smaller graphs, so `n` vertices
/// suffice). Ties go to the lexicographically smallest sequence.
pub fn search_threshold_max(
    h: &Graph,
    n: usize,
    m: usize,
) -> Result<SearchResult<HomCount, CreationSequence>> {
    if n == 0 || n > MAX_THRESHOLD_SEARCH_N {
        return Err(invalid(format!(
            "threshold search needs 1 <= n <= {MAX_THRESHOLD_SEARCH_N}, got {n}"
        )));
    }
    let mut bits = vec![false; n - 1];
    let mut best: Option<(HomCount, CreationSequence)> = None;
    let mut explored = 0u64;
    fn go(
        h: &Graph,
        m: usize,
        pos: usize,
        edges: usize,
        bits: &mut Vec<bool>,
        best: &mut Option<(HomCount, CreationSequence)>,
        explored: &mut u64,
    ) {
        if pos == bits.len() {
            let seq = CreationSequence::new(bits.clone());
            let value = hom_count_blocks(h, &blocks_of(&seq));
            *explored += 1;
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                *best = Some((value, seq));
            }
            return;
        }
        bits[pos] = false;
        go(h, m, pos + 1, edges, bits, best, explored);
        // vertex pos + 1 joined to all earlier vertices
        if edges + pos + 1 <= m {
            bits[pos] = true;
            go(h, m, pos + 1, edges + pos + 1, bits, best, explored);
            bits[pos] = false;
        }
    }
    go(h, m, 0, 0, &mut bits, &mut best, &mut explored);
    let (best, witness) = best.expect("the edgeless sequence is always feasible");
    Ok(SearchResult {
        best,
        witness,
        explored,
    })
}

/// Upper-triangle adjacency bits of `g` relabeled by `perm` (vertex `v`
/// goes to position `perm[v]`), row by row.
fn code_under(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | g.has_edge(inv[i], inv[j]) as u64;
        }
    }
    code
}

/// Canonical code: the largest adjacency code over relabelings that keep
/// vertices grouped by the invariant (degree, sorted neighbour degrees).
fn canonical(g: &Graph) -> u64 {
    let n = g.n();
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[b].cmp(&inv[a]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut perm = vec![0usize; n];
    let mut best = 0u64;
    fn permute_cells(
        g: &Graph,
        cells: &mut [Vec<usize>],
        ci: usize,
        start: usize,
        perm: &mut [usize],
        best: &mut u64,
    ) {
        if ci == cells.len() {
            *best = (*best).max(code_under(g, perm));
            return;
        }
        let len = cells[ci].len();
        heap_permutations(g, cells, ci, len, start, perm, best);
    }
    fn heap_permutations(
        g: &Graph,
        cells: &mut [Vec<usize>],
        ci: usize,
        k: usize,
        start: usize,
        perm: &mut [usize],
        best: &mut u64,
    ) {
        if k <= 1 {
            for (i, &v) in cells[ci].iter().enumerate() {
                perm[v] = start + i;
            }
            let next = start + cells[ci].len();
            permute_cells(g, cells, ci + 1, next, perm, best);
            return;
        }
        for i in 0..k {
            heap_permutations(g, cells, ci, k - 1, start, perm, best);
            let j = if k % 2 == 0 { i } else { 0 };
            cells[ci].swap(j, k - 1);
        }
    }
    permute_cells(g, &mut cells, 0, 0, &mut perm, &mut best);
    best
}

fn decode(n: usize, code: u64) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut bit = total;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("decoded edges are valid")
}

/// One representative per isomorphism class of graphs on `n` vertices
/// with exactly `m` edges, in increasing canonical code order.
pub fn graphs_up_to_isomorphism(n: usize, m: usize) -> Result<Vec<Graph>> {
    if n > MAX_ALL_SEARCH_N {
        return Err(invalid(format!(
            "isomorphism-class enumeration is limited to {MAX_ALL_SEARCH_N} vertices, got {n}"
        )));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Ok(Vec::new());
    }
    let mut level: HashSet<u64> = HashSet::from([0u64]);
    for _ in 0..m {
        let mut next = HashSet::new();
        for &code in &level {
            let g = decode(n, code);
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        next.insert(canonical(&g.with_edge(u, v).expect("valid pair")));
                    }
                }
            }
        }
        level = next;
    }
    let mut codes: Vec<u64> = level.into_iter().collect();
    codes.sort_unstable();
    Ok(codes.into_iter().map(|c| decode(n, c)).collect())
}

/// Largest `hom(H, G)` over all graphs with at most `n` vertices and at most
/// `m` edges. Adding vertices or edges never lowers the count, so only
/// graphs with `n` vertices and `min(m, C(n,2))` edges are evaluated, one
/// per isomorphism class. The witness is the canonical representative with
/// the smallest code among the maximizers.
pub fn search_all_max(h: &Graph, n: usize, m: usize) -> Result<SearchResult<HomCount, Graph>> {
    if n == 0 {
        return Err(invalid("search needs at least one vertex"));
    }
    let m = m.min(n * (n - 1) / 2);
    let classes = graphs_up_to_isomorphism(n, m)?;
    let mut best: Option<(HomCount, Graph)> = None;
    let explored = classes.len() as u64;
    for g in classes {
        let value = hom_count(h, &g)?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, g));
        }
    }
    let (best, witness) = best.expect("at least one class");
    Ok(SearchResult {
        best,
        witness,
        explored,
    })
}
