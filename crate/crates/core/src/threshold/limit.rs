use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num::{One, Zero};
use serde::Serialize;

use super::blocks::BlockStructure;
use crate::error::{invalid, Error, Result};
use crate::graphcore::{components, Graph};
use crate::homcount::Plan;

/// Tolerance on the proportion sum.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Alternating blocks with real proportions summing to one; the limit of
/// blow-ups of a block structure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitThreshold {
    blocks: Vec<(bool, f64)>,
}

impl LimitThreshold {
    pub fn new(blocks: Vec<(bool, f64)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(invalid("a limit structure needs at least one block"));
        }
        if blocks.iter().any(|&(_, p)| !(p > 0.0 && p <= 1.0)) {
            return Err(invalid("block proportions must lie in (0, 1]"));
        }
        if blocks.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(invalid("adjacent blocks must have different bits"));
        }
        let sum: f64 = blocks.iter().map(|&(_, p)| p).sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE * blocks.len() as f64 {
            return Err(invalid(format!("block proportions sum to {sum}, not 1")));
        }
        Ok(LimitThreshold { blocks })
    }

    /// Drops blocks below `eps`, merges equal neighbours and rescales to sum
    /// one. `None` when nothing is left.
    pub fn normalized(blocks: impl IntoIterator<Item = (bool, f64)>, eps: f64) -> Option<Self> {
        let mut out: Vec<(bool, f64)> = Vec::new();
        for (b, p) in blocks {
            if p <= eps {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == b => last.1 += p,
                _ => out.push((b, p)),
            }
        }
        let sum: f64 = out.iter().map(|&(_, p)| p).sum();
        if out.is_empty() || sum <= 0.0 {
            return None;
        }
        for b in &mut out {
            b.1 /= sum;
        }
        Some(LimitThreshold { blocks: out })
    }

    pub fn blocks(&self) -> &[(bool, f64)] {
        &self.blocks
    }

    pub fn parts(&self) -> usize {
        self.blocks.len()
    }

    pub fn bits(&self) -> Vec<bool> {
        self.blocks.iter().map(|&(b, _)| b).collect()
    }

    pub fn proportions(&self) -> Vec<f64> {
        self.blocks.iter().map(|&(_, p)| p).collect()
    }

    /// Number of blocks with proportion at least `eps`.
    pub fn effective_parts(&self, eps: f64) -> usize {
        LimitThreshold::normalized(self.blocks.iter().copied(), eps)
            .map_or(0, |l| l.parts())
    }

    /// Finite structure on `n` vertices: block sizes `⌊p·n⌋`, the remainder
    /// going to the largest block (first among ties).
    pub fn blow_up(&self, n: usize) -> BlockStructure {
        let mut sizes: Vec<usize> = self
            .blocks
            .iter()
            .map(|&(_, p)| (p * n as f64).floor() as usize)
            .collect();
        let used: usize = sizes.iter().sum();
        let largest = (0..sizes.len())
            .max_by(|&i, &j| {
                self.blocks[i]
                    .1
                    .partial_cmp(&self.blocks[j].1)
                    .unwrap()
                    .then(j.cmp(&i))
            })
            .unwrap_or(0);
        if used <= n {
            sizes[largest] += n - used;
        } else {
            sizes[largest] -= used - n;
        }
        BlockStructure::normalized(self.blocks.iter().zip(sizes).map(|(&(b, _), s)| (b, s)))
    }
}

impl fmt::Display for LimitThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&(b, p)| format!("{}:{}", b as u8, p))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for LimitThreshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |m: String| Error::Parse { line: 1, message: m };
        let blocks = s
            .trim()
            .split(',')
            .map(|item| {
                let (b, p) = item
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| parse_err(format!("expected bit:proportion, found {item:?}")))?;
                let bit = match b.trim() {
                    "0" => false,
                    "1" => true,
                    other => return Err(parse_err(format!("block bit must be 0 or 1, found {other:?}"))),
                };
                let p: f64 = p
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(format!("bad proportion {p:?}")))?;
                Ok((bit, p))
            })
            .collect::<Result<Vec<_>>>()?;
        LimitThreshold::new(blocks)
    }
}

/// Sum over block assignments of `H` (later endpoint of every edge in a
/// 1-block, 0-blocks edgeless) of the product of the proportions used.
/// Works for any commutative semiring of proportions.
pub fn limit_density_with<T>(h: &Graph, bits: &[bool], props: &[T]) -> T
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    assert_eq!(bits.len(), props.len());
    let mut total = T::one();
    for comp in components(h) {
        let plan = Plan::new(h, &comp);
        let mut assign = vec![0usize; comp.len()];
        total = total * density_rec(&plan, bits, props, 0, &mut assign);
    }
    total
}

fn density_rec<T>(plan: &Plan, bits: &[bool], props: &[T], pos: usize, assign: &mut [usize]) -> T
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    if pos == plan.order.len() {
        return T::one();
    }
    let mut total = T::zero();
    for b in 0..bits.len() {
        if !plan.back[pos].iter().all(|&p| bits[assign[p].max(b)]) {
            continue;
        }
        assign[pos] = b;
        total = total + props[b].clone() * density_rec(plan, bits, props, pos + 1, assign);
    }
    total
}

pub fn limit_density(h: &Graph, l: &LimitThreshold) -> f64 {
    limit_density_with(h, &l.bits(), &l.proportions())
}

pub fn limit_edge_density(l: &LimitThreshold) -> f64 {
    limit_density(&Graph::complete(2), l)
}
