use serde::Serialize;

use super::fractional::{alpha_star, exponent_f64};
use super::search::search_threshold_max;
use crate::error::{invalid, Result};
use crate::graphcore::Graph;
use crate::threshold::{blocks_of, hom_count_blocks, three_part, three_part_sizes};

/// `m^(|H| - α*) · n^(2α* - |H|)`.
pub fn janson_bound(h: &Graph, n: usize, m: usize) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(invalid("bound needs n, m >= 1"));
    }
    let e = exponent_f64(h);
    let a = alpha_star(h).alpha_star_f64();
    Ok((m as f64).powf(e) * (n as f64).powf(2.0 * a - h.n() as f64))
}

/// Homomorphisms the three-part graph is guaranteed by its block sizes:
/// weight-1/2 vertices into the first clique block (size `>= √m / 2`),
/// weight-1 vertices into the independent block (size `>= n / 25`),
/// weight-0 vertices into the last clique block (size `>= m / 4n`).
pub fn three_part_guarantee(h: &Graph, n: usize, m: usize) -> f64 {
    let [zero, half, one] = alpha_star(h).weight_classes();
    let (n, m) = (n as f64, m as f64);
    (m.sqrt() / 2.0).powi(half as i32) * (n / 25.0).powi(one as i32) * (m / (4.0 * n)).powi(zero as i32)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JansonRow {
    pub n: usize,
    pub m: usize,
    pub bound: f64,
    pub best: String,
    pub witness: String,
    pub ratio: f64,
    pub three_part: String,
    pub three_part_ratio: f64,
    pub guarantee: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JansonReport {
    pub rows: Vec<JansonRow>,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

impl JansonReport {
    pub fn spread(&self) -> f64 {
        self.max_ratio / self.min_ratio
    }
}

/// For every `(n, m)` on the grids with `2n <= m <= C(n,2)`: the exact
/// threshold maximum and the three-part graph's count, each divided by
/// [`janson_bound`].
pub fn janson_ratio_report(h: &Graph, n_grid: &[usize], m_grid: &[usize]) -> Result<JansonReport> {
    let mut rows = Vec::new();
    for &n in n_grid {
        for &m in m_grid {
            if m < 2 * n || m > n * n.saturating_sub(1) / 2 {
                continue;
            }
            let bound = janson_bound(h, n, m)?;
            let best = search_threshold_max(h, n, m)?;
            let seq = three_part(n, m)?;
            three_part_sizes(n, m)?;
            let tp = hom_count_blocks(h, &blocks_of(&seq));
            rows.push(JansonRow {
                n,
                m,
                bound,
                ratio: best.best.to_f64() / bound,
                best: best.best.to_string(),
                witness: best.witness.to_string(),
                three_part_ratio: tp.to_f64() / bound,
                three_part: tp.to_string(),
                guarantee: three_part_guarantee(h, n, m),
            });
        }
    }
    if rows.is_empty() {
        return Err(invalid("no grid point satisfies 2n <= m <= n(n-1)/2"));
    }
    let min_ratio = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(JansonReport {
        rows,
        min_ratio,
        max_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        assert!((janson_bound(&Graph::complete(2), 10, 30).unwrap() - 30.0).abs() < 1e-9);
        // cherry: exponent 1, α* = 2
        assert!((janson_bound(&Graph::star(2), 10, 30).unwrap() - 300.0).abs() < 1e-9);
        assert!((janson_bound(&Graph::complete(3), 10, 30).unwrap() - 30f64.powf(1.5)).abs() < 1e-9);
        assert!(janson_bound(&Graph::complete(2), 0, 3).is_err());
    }

    #[test]
    fn edge_ratio_is_two() {
        let r = janson_ratio_report(&Graph::complete(2), &[6, 8], &[12, 16, 20, 28]).unwrap();
        assert!(r.rows.iter().all(|row| (row.ratio - 2.0).abs() < 1e-12));
        assert_eq!(r.rows.len(), 4);
    }
}
