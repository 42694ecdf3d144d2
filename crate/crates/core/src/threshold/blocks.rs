use std::fmt;

use num::{BigUint, One, Zero};
use serde::Serialize;

use super::sequence::CreationSequence;
use crate::error::{invalid, Result};
use crate::graphcore::{components, Graph};
use crate::homcount::{HomCount, Plan};

/// Run-length form of a threshold graph: alternating blocks `(bit, size)`.
/// A 1-block is a clique joined to every earlier vertex; a 0-block is an
/// independent set with no edges to earlier vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BlockStructure {
    blocks: Vec<(bool, usize)>,
}

impl BlockStructure {
    pub fn new(blocks: Vec<(bool, usize)>) -> Result<Self> {
        if blocks.iter().any(|&(_, s)| s == 0) {
            return Err(invalid("block sizes must be positive"));
        }
        if blocks.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(invalid("adjacent blocks must have different bits"));
        }
        Ok(BlockStructure { blocks })
    }

    /// Drops empty blocks and merges neighbours with equal bits.
    pub fn normalized(blocks: impl IntoIterator<Item = (bool, usize)>) -> Self {
        let mut out: Vec<(bool, usize)> = Vec::new();
        for (b, s) in blocks {
            if s == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == b => last.1 += s,
                _ => out.push((b, s)),
            }
        }
        BlockStructure { blocks: out }
    }

    pub fn blocks(&self) -> &[(bool, usize)] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|&(_, s)| s).sum()
    }

    pub fn parts(&self) -> usize {
        self.blocks.len()
    }

    pub fn to_sequence(&self) -> Result<CreationSequence> {
        let full: Vec<bool> = self
            .blocks
            .iter()
            .flat_map(|&(b, s)| std::iter::repeat(b).take(s))
            .collect();
        CreationSequence::from_full(&full)
    }
}

impl fmt::Display for BlockStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&(b, s)| format!("{}:{}", b as u8, s))
            .collect();
        f.write_str(&parts.join(","))
    }
}

pub fn blocks_of(seq: &CreationSequence) -> BlockStructure {
    BlockStructure::normalized(seq.full_bits().into_iter().map(|b| (b, 1)))
}

pub fn parts(seq: &CreationSequence) -> usize {
    blocks_of(seq).parts()
}

/// `table[k][s]`: ways to split the vertex subset `s` (bitmask over `verts`)
/// into `k` unordered nonempty independent sets of `h`.
fn independent_partitions(h: &Graph, verts: &[usize]) -> Vec<Vec<u128>> {
    let t = verts.len();
    assert!(t < 32, "component too large for partition table");
    let full = 1usize << t;
    let mut independent = vec![true; full];
    for s in 1..full {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        independent[s] = independent[rest]
            && (0..t).all(|j| rest >> j & 1 == 0 || !h.has_edge(verts[low], verts[j]));
    }
    let mut table = vec![vec![0u128; full]; t + 1];
    table[0][0] = 1;
    for k in 1..=t {
        for s in 1..full {
            let low = s & s.wrapping_neg();
            let others = s ^ low;
            // blocks containing the lowest vertex: low plus a subset of the others
            let mut sub = others;
            let mut acc = 0u128;
            loop {
                let part = sub | low;
                if independent[part] {
                    acc += table[k - 1][s ^ part];
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & others;
            }
            table[k][s] = acc;
        }
    }
    table
}

fn falling(s: usize, k: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 0..k {
        if i >= s {
            return BigUint::zero();
        }
        out *= BigUint::from(s - i);
    }
    out
}

fn colorings(table: &[Vec<u128>], mask: usize, s: usize) -> BigUint {
    let mut total = BigUint::zero();
    for (k, row) in table.iter().enumerate() {
        if row[mask] != 0 {
            total += falling(s, k) * BigUint::from(row[mask]);
        }
    }
    total
}

/// Number of proper colorings of `f` with `s` colors.
pub fn chromatic_count(f: &Graph, s: usize) -> HomCount {
    let verts: Vec<usize> = (0..f.n()).collect();
    let table = independent_partitions(f, &verts);
    HomCount::from(colorings(&table, (1usize << f.n()) - 1, s))
}

struct ComponentCounter<'a> {
    /// Bit `i` of a partition-table mask is the vertex at position `i`.
    plan: Plan,
    table: Vec<Vec<u128>>,
    blocks: &'a [(bool, usize)],
}

impl ComponentCounter<'_> {
    fn weight(&self, masks: &[usize]) -> BigUint {
        let mut w = BigUint::one();
        for (b, &mask) in masks.iter().enumerate() {
            if mask == 0 {
                continue;
            }
            let (bit, size) = self.blocks[b];
            if bit {
                w *= colorings(&self.table, mask, size);
            } else {
                w *= num::pow(BigUint::from(size), mask.count_ones() as usize);
            }
            if w.is_zero() {
                break;
            }
        }
        w
    }

    fn count(&self, pos: usize, assign: &mut [usize], masks: &mut [usize]) -> BigUint {
        if pos == self.plan.order.len() {
            return self.weight(masks);
        }
        let mut total = BigUint::zero();
        for b in 0..self.blocks.len() {
            let ok = self.plan.back[pos]
                .iter()
                .all(|&p| self.blocks[assign[p].max(b)].0);
            if !ok {
                continue;
            }
            assign[pos] = b;
            masks[b] |= 1 << pos;
            total += self.count(pos + 1, assign, masks);
            masks[b] &= !(1 << pos);
        }
        total
    }
}

/// Exact `hom(H, G)` where `G` is the threshold graph with blocks `b`,
/// computed by summing over block assignments of the vertices of `H`.
pub fn hom_count_blocks(h: &Graph, b: &BlockStructure) -> HomCount {
    let mut total = BigUint::one();
    for comp in components(h) {
        let plan = Plan::new(h, &comp);
        let table = independent_partitions(h, &plan.order);
        let counter = ComponentCounter {
            plan,
            table,
            blocks: b.blocks(),
        };
        let mut assign = vec![0usize; comp.len()];
        let mut masks = vec![0usize; b.parts()];
        let c = counter.count(0, &mut assign, &mut masks);
        if c.is_zero() {
            return HomCount::default();
        }
        total *= c;
    }
    HomCount::from(total)
}
