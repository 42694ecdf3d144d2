use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graphcore::Graph;

/// Build sequence of a threshold graph on `bits.len() + 1` vertices. Vertex
/// `i >= 1` is added as dominating when `bits[i - 1]` is set and as isolated
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CreationSequence {
    bits: Vec<bool>,
}

impl CreationSequence {
    pub fn new(bits: Vec<bool>) -> Self {
        CreationSequence { bits }
    }

    /// The sequence whose full form (first vertex included) is `full`.
    pub fn from_full(full: &[bool]) -> Result<Self> {
        match full.split_first() {
            Some((_, rest)) => Ok(CreationSequence::new(rest.to_vec())),
            None => Err(Error::InvalidParameter("a creation sequence needs at least one vertex".into())),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn n(&self) -> usize {
        self.bits.len() + 1
    }

    /// Bits with the first vertex included: a copy of `bits[0]` is
    /// prepended, or `0` for the one-vertex sequence.
    pub fn full_bits(&self) -> Vec<bool> {
        let mut full = Vec::with_capacity(self.n());
        full.push(self.bits.first().copied().unwrap_or(false));
        full.extend_from_slice(&self.bits);
        full
    }

    pub fn edge_count(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
            .sum()
    }

    /// Sequence of the complement graph.
    pub fn complement(&self) -> Self {
        CreationSequence::new(self.bits.iter().map(|b| !b).collect())
    }
}

impl fmt::Display for CreationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for CreationSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse {
                    line: 1,
                    message: format!("creation sequence {s:?} may only contain 0 and 1"),
                }),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(CreationSequence::new(bits))
    }
}

impl Serialize for CreationSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn build_graph(seq: &CreationSequence) -> Graph {
    let mut g = Graph::empty(seq.n());
    for (i, &b) in seq.bits.iter().enumerate() {
        if b {
            let v = i + 1;
            for u in 0..v {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

/// True when every pair `u, v` satisfies `N(u) ⊆ N[v]` or `N(v) ⊆ N[u]`.
pub fn is_threshold(g: &Graph) -> bool {
    let n = g.n();
    let covered = |u: usize, v: usize| g.neighbors(u).iter().all(|&w| w == v || g.has_edge(v, w));
    (0..n).all(|u| (u + 1..n).all(|v| covered(u, v) || covered(v, u)))
}

/// Strips a dominating vertex (lowest index) when one exists and an isolated
/// vertex otherwise, until one vertex remains. Returns the creation sequence
/// and `order`, where `order[i]` is the vertex of `g` that plays vertex `i`
/// of the rebuilt graph.
pub fn strip_order(g: &Graph) -> Result<(CreationSequence, Vec<usize>)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter("the empty graph has no creation sequence".into()));
    }
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut bits = vec![false; n - 1];
    let mut order = vec![0usize; n];
    for remaining in (2..=n).rev() {
        let pick = (0..n)
            .find(|&v| alive[v] && degree[v] == remaining - 1)
            .map(|v| (v, true))
            .or_else(|| (0..n).find(|&v| alive[v] && degree[v] == 0).map(|v| (v, false)));
        let Some((v, dominating)) = pick else {
            return Err(Error::NotThreshold);
        };
        alive[v] = false;
        for &w in g.neighbors(v) {
            degree[w] -= 1;
        }
        bits[remaining - 2] = dominating;
        order[remaining - 1] = v;
    }
    order[0] = (0..n).find(|&v| alive[v]).expect("one vertex left");
    Ok((CreationSequence::new(bits), order))
}

pub fn creation_sequence_of(g: &Graph) -> Result<CreationSequence> {
    strip_order(g).map(|(s, _)| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{all_labeled_graphs, induced};

    fn seq(s: &str) -> CreationSequence {
        s.parse().unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(build_graph(&seq("11")), Graph::complete(3));
        assert_eq!(build_graph(&seq("00")), Graph::empty(3));
        let paw = build_graph(&seq("101"));
        assert_eq!(paw.edge_count(), 4);
        // 0-1 edge, isolated 2, then 3 joined to all three
        assert_eq!(paw, Graph::new(4, [(0, 1), (0, 3), (1, 3), (2, 3)]).unwrap());
        assert_eq!(seq("101").edge_count(), 4);
        assert_eq!(build_graph(&seq("")), Graph::empty(1));
    }

    #[test]
    fn text_form() {
        assert_eq!(seq("1011100").to_string(), "1011100");
        assert!("10a".parse::<CreationSequence>().is_err());
        assert_eq!(seq("1011100").full_bits().len(), 8);
        assert_eq!(seq("").full_bits(), vec![false]);
    }

    #[test]
    fn recognition_examples() {
        assert!(!is_threshold(&Graph::cycle(4)));
        assert!(!is_threshold(&Graph::path(4)));
        assert!(!is_threshold(&Graph::new(4, [(0, 1), (2, 3)]).unwrap()));
        assert!(is_threshold(&Graph::star(5)));
        assert!(is_threshold(&Graph::complete(5)));
    }

    #[test]
    fn stripping_examples() {
        assert_eq!(creation_sequence_of(&Graph::complete(3)).unwrap(), seq("11"));
        let star = Graph::star(3);
        let s = creation_sequence_of(&star).unwrap();
        assert_eq!(s, seq("001"));
        assert!(build_graph(&s).edge_count() == 3 && build_graph(&s).degree(3) == 3);
        assert_eq!(creation_sequence_of(&Graph::cycle(4)), Err(Error::NotThreshold));
    }

    fn has_forbidden_induced(g: &Graph) -> bool {
        let n = g.n();
        let p4 = Graph::path(4);
        let c4 = Graph::cycle(4);
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let perms = permutations(4);
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let sub = induced(g, &[a, b, c, d]).unwrap();
                        if sub.edge_count() < 2 || sub.edge_count() > 4 {
                            continue;
                        }
                        for p in &perms {
                            let r = sub.relabel(p).unwrap();
                            if r == p4 || r == c4 || r == two_k2 {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for i in 0..k {
                let mut q = p.clone();
                q.insert(i, k - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn threshold_iff_no_forbidden_induced_subgraph() {
        for n in 1..=6 {
            for g in all_labeled_graphs(n) {
                assert_eq!(is_threshold(&g), !has_forbidden_induced(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn strip_then_rebuild_is_relabeling() {
        for n in 1..=6 {
            for g in all_labeled_graphs(n) {
                match strip_order(&g) {
                    Ok((s, order)) => {
                        assert!(is_threshold(&g));
                        let rebuilt = build_graph(&s);
                        for i in 0..n {
                            for j in 0..n {
                                if i != j {
                                    assert_eq!(rebuilt.has_edge(i, j), g.has_edge(order[i], order[j]));
                                }
                            }
                        }
                    }
                    Err(e) => {
                        assert_eq!(e, Error::NotThreshold);
                        assert!(!is_threshold(&g));
                    }
                }
            }
        }
    }

    #[test]
    fn every_sequence_builds_a_threshold_graph() {
        for len in 0..=7 {
            for mask in 0u32..(1 << len) {
                let s = CreationSequence::new((0..len).map(|i| mask >> i & 1 == 1).collect());
                let g = build_graph(&s);
                assert!(is_threshold(&g));
                assert_eq!(g.edge_count(), s.edge_count());
                assert_eq!(build_graph(&s.complement()), crate::graphcore::complement(&g));
            }
        }
    }
}
