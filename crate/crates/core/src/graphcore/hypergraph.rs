use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::graph::{numbered_lines, parse_numbers, Graph};
use crate::error::{invalid, Error, Result};

/// k-uniform hypergraph on vertices `0..n`. Each edge is stored as a sorted
/// vertex list; the edge set is ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: BTreeSet<Vec<usize>>,
}

impl Hypergraph {
    pub fn empty(n: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(invalid(format!("uniformity must be at least 2, got {k}")));
        }
        Ok(Hypergraph {
            n,
            k,
            edges: BTreeSet::new(),
        })
    }

    pub fn new<I, E>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut h = Hypergraph::empty(n, k)?;
        for e in edges {
            let e = h.normalize(e.as_ref())?;
            h.edges.insert(e);
        }
        Ok(h)
    }

    /// All `C(n, k)` edges.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        let mut h = Hypergraph::empty(n, k)?;
        h.edges = k_subsets(n, k).into_iter().collect();
        Ok(h)
    }

    /// Each k-subset present independently with probability `p`.
    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Result<Self> {
        let mut h = Hypergraph::empty(n, k)?;
        h.edges = k_subsets(n, k)
            .into_iter()
            .filter(|_| rng.gen_bool(p))
            .collect();
        Ok(h)
    }

    /// The 2-uniform hypergraph with the same edges as `g`.
    pub fn from_graph(g: &Graph) -> Self {
        Hypergraph {
            n: g.n(),
            k: 2,
            edges: g.edges().map(|(u, v)| vec![u, v]).collect(),
        }
    }

    /// Inverse of [`Hypergraph::from_graph`]; requires `k = 2`.
    pub fn to_graph(&self) -> Result<Graph> {
        if self.k != 2 {
            return Err(Error::UniformityMismatch {
                pattern: 2,
                target: self.k,
            });
        }
        Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.edges.iter().map(Vec::as_slice)
    }

    /// `edge` must be sorted.
    pub fn contains(&self, edge: &[usize]) -> bool {
        self.edges.contains(edge)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }


    pub(crate) fn edge_set_mut(&mut self) -> &mut BTreeSet<Vec<usize>> {
        &mut self.edges
    }

    fn normalize(&self, e: &[usize]) -> Result<Vec<usize>> {
        let mut e = e.to_vec();
        for &v in &e {
            self.check_vertex(v)?;
        }
        e.sort_unstable();
        let len = e.len();
        e.dedup();
        if e.len() != self.k || len != self.k {
            return Err(Error::BadHyperedge { edge: e, k: self.k });
        }
        Ok(e)
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Serializes as `n m k` followed by one sorted edge per line.
impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.n, self.edges.len(), self.k)?;
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(usize::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_hypergraph(s)
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = numbered_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header \"n m k\"".into(),
    })?;
    let nums = parse_numbers(hline, header)?;
    let [n, m, k] = nums[..] else {
        return Err(Error::Parse {
            line: hline,
            message: format!("expected \"n m k\", found {header:?}"),
        });
    };
    let mut h = Hypergraph::empty(n, k).map_err(|e| Error::Parse {
        line: hline,
        message: e.to_string(),
    })?;
    let mut seen = 0;
    for (lineno, line) in lines {
        let nums = parse_numbers(lineno, line)?;
        let e = h.normalize(&nums).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        h.edges.insert(e);
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: hline,
            message: format!("header announces {m} edges, found {seen}"),
        });
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_sorted_and_deduplicated() {
        let h = Hypergraph::new(5, 3, [vec![2, 0, 1], vec![1, 2, 0], vec![4, 3, 0]]).unwrap();
        assert_eq!(h.edge_count(), 2);
        let edges: Vec<&[usize]> = h.edges().collect();
        assert_eq!(edges, vec![&[0, 1, 2][..], &[0, 3, 4][..]]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Hypergraph::new(5, 3, [vec![0, 0, 1]]),
            Err(Error::BadHyperedge { .. })
        ));
        assert!(matches!(
            Hypergraph::new(5, 3, [vec![0, 1]]),
            Err(Error::BadHyperedge { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 3, [vec![0, 1, 3]]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(Hypergraph::empty(3, 1).is_err());
    }

    #[test]
    fn text_format() {
        let h: Hypergraph = "4 2 3\n0 1 2\n3 2 1\n".parse().unwrap();
        assert_eq!(h.to_string(), "4 2 3\n0 1 2\n1 2 3\n");
        assert_eq!(h.to_string().parse::<Hypergraph>().unwrap(), h);
        assert!(matches!(
            "4 1 3\n0 1".parse::<Hypergraph>(),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn complete_counts() {
        assert_eq!(Hypergraph::complete(6, 3).unwrap().edge_count(), 20);
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(2, 3).len(), 0);
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn graph_conversion() {
        let g = Graph::cycle(5);
        assert_eq!(Hypergraph::from_graph(&g).to_graph().unwrap(), g);
    }
}
