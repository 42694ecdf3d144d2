use serde::Serialize;

use super::search::SearchResult;
use crate::error::{invalid, Result};
use crate::graphcore::Graph;
use crate::threshold::{limit_density_with, LimitThreshold};

/// Relative gain a structure with more blocks needs to replace one with
/// fewer.
pub const PARTS_PREFERENCE: f64 = 1e-9;
/// Proportions below this do not count as a block.
pub const EFFECTIVE_PART: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitSearchOptions {
    pub max_parts: usize,
    /// Grid resolution: proportions are multiples of `1 / grid_steps`.
    pub grid_steps: usize,
    /// Refinement stops once the transfer step falls below this.
    pub tolerance: f64,
    /// Grid points refined per block pattern.
    pub refine_top: usize,
}

impl Default for LimitSearchOptions {
    fn default() -> Self {
        LimitSearchOptions {
            max_parts: 4,
            grid_steps: 200,
            tolerance: 1e-6,
            refine_top: 4,
        }
    }
}

struct Pattern<'a> {
    h: &'a Graph,
    k2: Graph,
    bits: Vec<bool>,
    c: f64,
}

impl Pattern<'_> {
    fn density(&self, x: &[f64]) -> f64 {
        limit_density_with(self.h, &self.bits, x)
    }

    fn edge_density(&self, x: &[f64]) -> f64 {
        limit_density_with(&self.k2, &self.bits, x)
    }

    /// Moves `x` towards all mass on its largest 0-block until the edge
    /// density is at most `c`. Edge density along that ray is quadratic.
    fn project(&self, x: &[f64]) -> Option<Vec<f64>> {
        let q = self.edge_density(x);
        if q <= self.c {
            return Some(x.to_vec());
        }
        let j = (0..x.len())
            .filter(|&i| !self.bits[i])
            .max_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap().then(b.cmp(&a)))?;
        // q(s) = q(e_j + s d) = 2 s <e_j, A d> + s^2 q(d), with d = x - e_j
        let mut d = x.to_vec();
        d[j] -= 1.0;
        let cross: f64 = (0..x.len())
            .filter(|&i| self.bits[i.max(j)])
            .map(|i| d[i])
            .sum();
        let b = 2.0 * cross;
        let a = q - b;
        let s = if a.abs() < 1e-15 {
            self.c / b
        } else {
            let disc = b * b + 4.0 * a * self.c;
            (-b + disc.max(0.0).sqrt()) / (2.0 * a)
        };
        let s = s.clamp(0.0, 1.0);
        let mut y: Vec<f64> = d.iter().map(|&di| s * di).collect();
        y[j] += 1.0;
        for v in &mut y {
            *v = v.max(0.0);
        }
        // guard against rounding above the budget
        let mut shrink = 1.0;
        while self.edge_density(&y) > self.c && shrink > 1e-12 {
            shrink *= 1.0 - 1e-9;
            let mut z: Vec<f64> = d.iter().map(|&di| s * shrink * di).collect();
            z[j] += 1.0;
            y = z.into_iter().map(|v| v.max(0.0)).collect();
        }
        Some(y)
    }
}

/// Compositions of `total` into `parts` positive parts.
fn compositions(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn go(left: usize, slots: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if slots == 1 {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for first in 1..=left - (slots - 1) {
            cur.push(first);
            go(left - first, slots - 1, cur, f);
            cur.pop();
        }
    }
    if parts == 0 || parts > total {
        return;
    }
    go(total, parts, &mut Vec::with_capacity(parts), f);
}

fn refine(p: &Pattern<'_>, start: Vec<f64>, value: f64, step0: f64, tol: f64) -> (Vec<f64>, f64) {
    let mut x = start;
    let mut best = value;
    let mut step = step0;
    let k = x.len();
    while step >= tol {
        let mut improved = false;
        for i in 0..k {
            for j in 0..k {
                if i == j || x[i] <= 0.0 {
                    continue;
                }
                let delta = step.min(x[i]);
                let mut y = x.clone();
                y[i] -= delta;
                y[j] += delta;
                let Some(y) = p.project(&y) else { continue };
                let v = p.density(&y);
                if v > best * (1.0 + 1e-13) || (best == 0.0 && v > 0.0) {
                    best = v;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    (x, best)
}

/// Maximizes `limit_density(H, L)` over limit structures with at most
/// `max_parts` blocks and edge density at most `c`: a grid over block
/// proportions (infeasible points are pulled back onto the edge budget),
/// then pairwise mass transfers with a halving step on the best grid points.
/// A heuristic; optimality is not certified.
pub fn limit_search(
    h: &Graph,
    c: f64,
    opts: &LimitSearchOptions,
) -> Result<SearchResult<f64, LimitThreshold>> {
    if !(0.0..=1.0).contains(&c) {
        return Err(invalid(format!("edge density budget must lie in [0, 1], got {c}")));
    }
    if opts.max_parts == 0 || opts.grid_steps == 0 || !(opts.tolerance > 0.0) {
        return Err(invalid("need max_parts >= 1, grid_steps >= 1 and a positive tolerance"));
    }
    let k2 = Graph::complete(2);
    let mut best: Option<(f64, LimitThreshold)> = None;
    let mut explored = 0u64;
    for parts in 1..=opts.max_parts.min(opts.grid_steps) {
        for first in [false, true] {
            let bits: Vec<bool> = (0..parts).map(|i| first ^ (i % 2 == 1)).collect();
            let pattern = Pattern {
                h,
                k2: k2.clone(),
                bits,
                c,
            };
            let mut top: Vec<(f64, Vec<f64>)> = Vec::new();
            compositions(opts.grid_steps, parts, &mut |comp| {
                explored += 1;
                let x: Vec<f64> = comp.iter().map(|&u| u as f64 / opts.grid_steps as f64).collect();
                let Some(x) = pattern.project(&x) else { return };
                let v = pattern.density(&x);
                let pos = top.partition_point(|(tv, _)| *tv >= v);
                if pos < opts.refine_top {
                    top.insert(pos, (v, x));
                    top.truncate(opts.refine_top);
                }
            });
            for (v, x) in top {
                let (x, v) = refine(&pattern, x, v, 1.0 / opts.grid_steps as f64, opts.tolerance);
                let Some(l) = LimitThreshold::normalized(
                    pattern.bits.iter().copied().zip(x.iter().copied()),
                    0.0,
                ) else {
                    continue;
                };
                let better = match &best {
                    None => true,
                    Some((bv, bl)) => {
                        if l.parts() <= bl.parts() {
                            v > *bv
                        } else {
                            v > *bv * (1.0 + PARTS_PREFERENCE) || (*bv == 0.0 && v > 0.0)
                        }
                    }
                };
                if better {
                    best = Some((v, l));
                }
            }
        }
    }
    let (best, witness) = best.ok_or_else(|| invalid("no feasible structure found"))?;
    Ok(SearchResult {
        best,
        witness,
        explored,
    })
}
