use crate::error::{invalid, Result};

/// Bipartite incidence structure: `a_count` vertices on side A, and for each
/// B-vertex the sorted list of its A-neighbours.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Incidence {
    pub a_count: usize,
    pub b_adj: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn new(a_count: usize, b_adj: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(&a) = b_adj.iter().flatten().find(|&&a| a >= a_count) {
            return Err(invalid(format!("A-vertex {a} out of range (|A| = {a_count})")));
        }
        Ok(Incidence { a_count, b_adj })
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.b_adj.iter().map(Vec::len).min()
    }
}

/// Greedy set cover: repeatedly takes the A-vertex covering the most
/// uncovered B-vertices (lowest index on ties). Returned in pick order.
/// Every B-vertex must have at least `delta >= 1` neighbours.
pub fn dominating_set(inc: &Incidence, delta: usize) -> Result<Vec<usize>> {
    if delta == 0 {
        return Err(invalid("minimum degree must be at least 1"));
    }
    if let Some((b, adj)) = inc.b_adj.iter().enumerate().find(|(_, adj)| adj.len() < delta) {
        return Err(invalid(format!(
            "B-vertex {b} has degree {} below the required {delta}",
            adj.len()
        )));
    }
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); inc.a_count];
    for (b, adj) in inc.b_adj.iter().enumerate() {
        for &a in adj {
            covers[a].push(b);
        }
    }
    let mut covered = vec![false; inc.b_adj.len()];
    let mut left = inc.b_adj.len();
    let mut gain: Vec<usize> = covers.iter().map(Vec::len).collect();
    let mut picked = Vec::new();
    while left > 0 {
        let a = (0..inc.a_count)
            .max_by_key(|&a| (gain[a], std::cmp::Reverse(a)))
            .expect("uncovered B-vertex has a neighbour");
        picked.push(a);
        for &b in &covers[a] {
            if !covered[b] {
                covered[b] = true;
                left -= 1;
                for &x in &inc.b_adj[b] {
                    gain[x] -= 1;
                }
            }
        }
    }
    Ok(picked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn is_dominating(inc: &Incidence, d: &[usize]) -> bool {
        inc.b_adj.iter().all(|adj| adj.iter().any(|a| d.contains(a)))
    }

    fn optimum(inc: &Incidence) -> usize {
        (0u32..1 << inc.a_count)
            .filter(|&mask| inc.b_adj.iter().all(|adj| adj.iter().any(|&a| mask >> a & 1 == 1)))
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn examples() {
        let star = Incidence::new(4, vec![vec![0, 2], vec![2], vec![1, 2, 3]]).unwrap();
        assert_eq!(dominating_set(&star, 1).unwrap(), vec![2]);
        assert!(dominating_set(&Incidence::new(3, vec![]).unwrap(), 1).unwrap().is_empty());
        let isolated = Incidence::new(3, vec![vec![0], vec![]]).unwrap();
        assert!(dominating_set(&isolated, 1).is_err());
        assert!(dominating_set(&star, 2).is_err());
        assert!(Incidence::new(2, vec![vec![2]]).is_err());
    }

    #[test]
    fn greedy_within_log_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = rng.gen_range(1..=12);
            let nb = rng.gen_range(0..=30);
            let b_adj: Vec<Vec<usize>> = (0..nb)
                .map(|_| {
                    let mut adj: Vec<usize> = (0..a).filter(|_| rng.gen_bool(0.3)).collect();
                    if adj.is_empty() {
                        adj.push(rng.gen_range(0..a));
                    }
                    adj
                })
                .collect();
            let inc = Incidence::new(a, b_adj).unwrap();
            let d = dominating_set(&inc, 1).unwrap();
            assert!(is_dominating(&inc, &d));
            if nb > 0 {
                let opt = optimum(&inc) as f64;
                assert!(d.len() as f64 <= (1.0 + (nb as f64).ln()) * opt);
            }
        }
    }
}
