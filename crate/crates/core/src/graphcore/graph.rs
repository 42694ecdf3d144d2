use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational};
use rand::Rng;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted and mirrored by a dense adjacency matrix,
/// so `has_edge` is O(1) and `neighbors` iterates in increasing order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// Path on `n` vertices, `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.insert_edge(v - 1, v);
        }
        g
    }

    /// Cycle on `n >= 3` vertices; smaller `n` yields the path.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert_edge(0, n - 1);
        }
        g
    }

    /// The star `K_{1,leaves}` with center `0`.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.insert_edge(0, v);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.insert_edge(u, v);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(Vec::is_empty)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Returns a copy with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let mut g = self.clone();
        g.insert_edge(u, v);
        Ok(g)
    }

    /// Applies the vertex map `perm` (old vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(crate::error::invalid("permutation length differs from vertex count"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check_vertex(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(crate::error::invalid("relabeling is not a permutation"));
            }
        }
        Graph::new(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        if self.matrix[u * self.n + v] {
            return;
        }
        self.matrix[u * self.n + v] = true;
        self.matrix[v * self.n + u] = true;
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        if !self.matrix[u * self.n + v] {
            return;
        }
        self.matrix[u * self.n + v] = false;
        self.matrix[v * self.n + u] = false;
        if let Ok(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].remove(pos);
        }
        if let Ok(pos) = self.adj[v].binary_search(&u) {
            self.adj[v].remove(pos);
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Serializes to the edge-list format: `n m` followed by one `u v` line per
/// edge, sorted by (min endpoint, max endpoint).
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edge_count())?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

/// Parses the edge-list format. Blank lines are ignored; exactly `m` edge
/// lines must follow the header.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = numbered_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header \"n m\"".into(),
    })?;
    let nums = parse_numbers(hline, header)?;
    let [n, m] = nums[..] else {
        return Err(Error::Parse {
            line: hline,
            message: format!("expected \"n m\", found {header:?}"),
        });
    };
    let mut g = Graph::empty(n);
    let mut seen = 0;
    for (lineno, line) in lines {
        let nums = parse_numbers(lineno, line)?;
        let [u, v] = nums[..] else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected \"u v\", found {line:?}"),
            });
        };
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: lineno,
                message: format!("endpoint out of range for n = {n}: {line:?}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: lineno,
                message: format!("self-loop: {line:?}"),
            });
        }
        g.insert_edge(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: hline,
            message: format!("header announces {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

pub(crate) fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_numbers(lineno: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("not a nonnegative integer: {tok:?}"),
            })
        })
        .collect()
}

/// Exact edge density `2m / n^2`, i.e. `t(K_2, G)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeDensity(BigRational);

impl EdgeDensity {
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        crate::rational_to_f64(&self.0)
    }
}

impl fmt::Display for EdgeDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn edge_density(g: &Graph) -> Result<EdgeDensity> {
    if g.n() == 0 {
        return Err(Error::UndefinedDensity);
    }
    let n = BigInt::from(g.n());
    Ok(EdgeDensity(BigRational::new(
        BigInt::from(2 * g.edge_count()),
        &n * &n,
    )))
}

/// The blow-up with adjacency matrix `[[A, A], [A, A]]`. Vertex `i` has the
/// copy `n + i`.
pub fn double_graph(g: &Graph) -> Graph {
    let n = g.n();
    let mut out = Graph::empty(2 * n);
    for (u, v) in g.edges() {
        out.insert_edge(u, v);
        out.insert_edge(u, v + n);
        out.insert_edge(u + n, v);
        out.insert_edge(u + n, v + n);
    }
    out
}

/// `a` on vertices `0..a.n()`, then `b` shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let mut out = Graph::empty(a.n() + b.n());
    for (u, v) in a.edges() {
        out.insert_edge(u, v);
    }
    for (u, v) in b.edges() {
        out.insert_edge(u + shift, v + shift);
    }
    out
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut out = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                out.insert_edge(u, v);
            }
        }
    }
    out
}

/// Induced subgraph on `vertices`, relabeled `0..` in increasing order of the
/// original labels. Repeated vertices are ignored.
pub fn induced(g: &Graph, vertices: &[usize]) -> Result<Graph> {
    let mut keep = vertices.to_vec();
    keep.sort_unstable();
    keep.dedup();
    for &v in &keep {
        g.check_vertex(v)?;
    }
    let mut out = Graph::empty(keep.len());
    for (i, &u) in keep.iter().enumerate() {
        for (j, &v) in keep.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                out.insert_edge(i, j);
            }
        }
    }
    Ok(out)
}

/// Appends vertex `n` adjacent to every existing vertex.
pub fn add_dominating(g: &Graph) -> Graph {
    let n = g.n();
    let mut out = add_isolated(g);
    for v in 0..n {
        out.insert_edge(v, n);
    }
    out
}

/// Appends an isolated vertex `n`.
pub fn add_isolated(g: &Graph) -> Graph {
    let mut out = Graph::empty(g.n() + 1);
    for (u, v) in g.edges() {
        out.insert_edge(u, v);
    }
    out
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Every labeled graph on `n` vertices (`2^C(n,2)` of them), in order of the
/// edge bitmask over the lexicographic pair order.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "too many labeled graphs on {n} vertices");
    (0u32..1 << pairs.len()).map(move |mask| {
        let mut g = Graph::empty(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.insert_edge(u, v);
            }
        }
        g
    })
}
