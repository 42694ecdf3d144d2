//! Exact homomorphism counts and densities.
//!
//! [`hom_count_naive`] enumerates every vertex map and is the oracle for the
//! backtracking counters. All counts are arbitrary precision; densities are
//! exact rationals.

use std::collections::VecDeque;
use std::fmt;

use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graphcore::{components, Graph, Hypergraph};

/// Default cap on enumerated (partial) maps.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HomCount(BigUint);

impl HomCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl From<BigUint> for HomCount {
    fn from(v: BigUint) -> Self {
        HomCount(v)
    }
}

impl From<u64> for HomCount {
    fn from(v: u64) -> Self {
        HomCount(BigUint::from(v))
    }
}

impl From<u128> for HomCount {
    fn from(v: u128) -> Self {
        HomCount(BigUint::from(v))
    }
}

impl fmt::Display for HomCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for HomCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// `hom(H, G) / |G|^|H|` as an exact rational.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomDensity(BigRational);

impl HomDensity {
    pub fn new(count: &HomCount, n: usize, h: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UndefinedDensity);
        }
        let denom = num::pow(BigInt::from(n), h);
        Ok(HomDensity(BigRational::new(
            BigInt::from(count.value().clone()),
            denom,
        )))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        crate::rational_to_f64(&self.0)
    }
}

impl fmt::Display for HomDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Counts homomorphisms by enumerating all `|G|^|H|` maps.
pub fn hom_count_naive(h: &Graph, g: &Graph) -> Result<HomCount> {
    hom_count_naive_with_budget(h, g, DEFAULT_BUDGET)
}

pub fn hom_count_naive_with_budget(h: &Graph, g: &Graph, budget: u64) -> Result<HomCount> {
    let k = h.n();
    let n = g.n();
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    if k == 0 {
        return Ok(HomCount::from(1u64));
    }
    if n == 0 {
        return Ok(HomCount::default());
    }
    let edges: Vec<(usize, usize)> = h.edges().collect();
    let mut phi = vec![0usize; k];
    let mut count: u64 = 0;
    loop {
        if edges.iter().all(|&(a, b)| g.has_edge(phi[a], phi[b])) {
            count += 1;
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == k {
                return Ok(HomCount::from(count));
            }
            phi[i] += 1;
            if phi[i] < n {
                break;
            }
            phi[i] = 0;
            i += 1;
        }
    }
}

/// Vertex order for backtracking: each component of `H` in BFS order from a
/// maximum-degree vertex (lowest index among ties), components in order of
/// their smallest vertex.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    /// H-vertex placed at each position.
    pub order: Vec<usize>,
    /// For each position, the earlier positions holding H-neighbors.
    pub back: Vec<Vec<usize>>,
}

impl Plan {
    pub fn new(h: &Graph, vertices: &[usize]) -> Plan {
        let mut order = Vec::with_capacity(vertices.len());
        let mut placed = vec![false; h.n()];
        let inside: Vec<bool> = {
            let mut m = vec![false; h.n()];
            for &v in vertices {
                m[v] = true;
            }
            m
        };
        let comps = components(h);
        for comp in comps {
            let comp: Vec<usize> = comp.into_iter().filter(|&v| inside[v]).collect();
            let mut remaining = comp.len();
            while remaining > 0 {
                let root = comp
                    .iter()
                    .copied()
                    .filter(|&v| !placed[v])
                    .max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v)))
                    .expect("unplaced vertex");
                placed[root] = true;
                let mut queue = VecDeque::from([root]);
                while let Some(v) = queue.pop_front() {
                    order.push(v);
                    remaining -= 1;
                    for &w in h.neighbors(v) {
                        if inside[w] && !placed[w] {
                            placed[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        let mut pos = vec![usize::MAX; h.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut b: Vec<usize> = h
                    .neighbors(v)
                    .iter()
                    .map(|&w| pos[w])
                    .filter(|&p| p < i)
                    .collect();
                b.sort_unstable();
                b
            })
            .collect();
        Plan { order, back }
    }
}

struct Counter<'a> {
    g: &'a Graph,
    plan: &'a Plan,
    images: Vec<usize>,
    states: u64,
    budget: u64,
}

impl Counter<'_> {
    fn tick(&mut self) -> Result<()> {
        self.states += 1;
        if self.states > self.budget {
            Err(Error::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    fn fits(&self, pos: usize, x: usize) -> bool {
        self.plan.back[pos]
            .iter()
            .all(|&p| self.g.has_edge(self.images[p], x))
    }

    fn candidates(&self, pos: usize) -> Candidates<'_> {
        match self.plan.back[pos].first() {
            None => Candidates::All(0..self.g.n()),
            Some(&p) => Candidates::Some(self.g.neighbors(self.images[p]).iter()),
        }
    }

    fn count(&mut self, pos: usize) -> Result<u128> {
        let last = pos + 1 == self.plan.order.len();
        let cands: Vec<usize> = self.candidates(pos).collect();
        let mut total = 0u128;
        for x in cands {
            if !self.fits(pos, x) {
                continue;
            }
            self.tick()?;
            if last {
                total += 1;
            } else {
                self.images[pos] = x;
                total += self.count(pos + 1)?;
            }
        }
        Ok(total)
    }
}

enum Candidates<'a> {
    All(std::ops::Range<usize>),
    Some(std::slice::Iter<'a, usize>),
}

impl Iterator for Candidates<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        match self {
            Candidates::All(r) => r.next(),
            Candidates::Some(it) => it.next().copied(),
        }
    }
}

/// Backtracking homomorphism count. Components of `H` are counted
/// independently and multiplied.
pub fn hom_count(h: &Graph, g: &Graph) -> Result<HomCount> {
    hom_count_with_budget(h, g, DEFAULT_BUDGET)
}

pub fn hom_count_with_budget(h: &Graph, g: &Graph, budget: u64) -> Result<HomCount> {
    let mut result = BigUint::one();
    let mut states = 0u64;
    for comp in components(h) {
        let plan = Plan::new(h, &comp);
        let mut counter = Counter {
            g,
            plan: &plan,
            images: vec![0; plan.order.len()],
            states,
            budget,
        };
        let c = counter.count(0)?;
        states = counter.states;
        if c == 0 {
            return Ok(HomCount::default());
        }
        result *= BigUint::from(c);
    }
    Ok(HomCount(result))
}

pub fn hom_density(h: &Graph, g: &Graph) -> Result<HomDensity> {
    if g.n() == 0 {
        return Err(Error::UndefinedDensity);
    }
    HomDensity::new(&hom_count(h, g)?, g.n(), h.n())
}

/// Calls `visit` with every homomorphism `H -> G`, given as the image of each
/// H-vertex (indexed by H-vertex).
pub fn for_each_hom<F>(h: &Graph, g: &Graph, budget: u64, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]),
{
    let all: Vec<usize> = (0..h.n()).collect();
    let plan = Plan::new(h, &all);
    let mut phi = vec![0usize; h.n()];
    let mut images = vec![0usize; h.n()];
    let mut states = 0u64;
    visit_rec(g, &plan, 0, &mut images, &mut phi, &mut states, budget, &mut visit)
}

#[allow(clippy::too_many_arguments)]
fn visit_rec<F: FnMut(&[usize])>(
    g: &Graph,
    plan: &Plan,
    pos: usize,
    images: &mut [usize],
    phi: &mut [usize],
    states: &mut u64,
    budget: u64,
    visit: &mut F,
) -> Result<()> {
    if pos == plan.order.len() {
        visit(phi);
        return Ok(());
    }
    let back = &plan.back[pos];
    let cands: Vec<usize> = match back.first() {
        None => (0..g.n()).collect(),
        Some(&p) => g.neighbors(images[p]).to_vec(),
    };
    for x in cands {
        if !back.iter().all(|&p| g.has_edge(images[p], x)) {
            continue;
        }
        *states += 1;
        if *states > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        images[pos] = x;
        phi[plan.order[pos]] = x;
        visit_rec(g, plan, pos + 1, images, phi, states, budget, visit)?;
    }
    Ok(())
}

/// Counts injective homomorphisms (embeddings as not-necessarily-induced
/// subgraphs, with labeled images).
pub fn injective_hom_count(h: &Graph, g: &Graph) -> Result<HomCount> {
    injective_hom_count_with_budget(h, g, DEFAULT_BUDGET)
}

pub fn injective_hom_count_with_budget(h: &Graph, g: &Graph, budget: u64) -> Result<HomCount> {
    if h.n() > g.n() {
        return Ok(HomCount::default());
    }
    let all: Vec<usize> = (0..h.n()).collect();
    let plan = Plan::new(h, &all);
    let mut images = vec![0usize; h.n()];
    let mut used = vec![false; g.n()];
    let mut states = 0u64;
    let c = injective_rec(g, &plan, 0, &mut images, &mut used, &mut states, budget)?;
    Ok(HomCount::from(c))
}

fn injective_rec(
    g: &Graph,
    plan: &Plan,
    pos: usize,
    images: &mut [usize],
    used: &mut [bool],
    states: &mut u64,
    budget: u64,
) -> Result<u128> {
    if pos == plan.order.len() {
        return Ok(1);
    }
    let back = &plan.back[pos];
    let cands: Vec<usize> = match back.first() {
        None => (0..g.n()).collect(),
        Some(&p) => g.neighbors(images[p]).to_vec(),
    };
    let mut total = 0u128;
    for x in cands {
        if used[x] || !back.iter().all(|&p| g.has_edge(images[p], x)) {
            continue;
        }
        *states += 1;
        if *states > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        images[pos] = x;
        used[x] = true;
        total += injective_rec(g, plan, pos + 1, images, used, states, budget)?;
        used[x] = false;
    }
    Ok(total)
}

/// Counts maps `V(H) -> V(G)` sending every edge of `H` onto an edge of `G`
/// (as a set of exactly `k` vertices).
pub fn hom_count_hyper(h: &Hypergraph, g: &Hypergraph) -> Result<HomCount> {
    hom_count_hyper_with_budget(h, g, DEFAULT_BUDGET)
}

pub fn hom_count_hyper_with_budget(h: &Hypergraph, g: &Hypergraph, budget: u64) -> Result<HomCount> {
    let mut count = 0u128;
    for_each_hyper_hom(h, g, budget, |_| count += 1)?;
    Ok(HomCount::from(count))
}

/// Visits every hypergraph homomorphism `H -> G`, indexed by H-vertex.
pub fn for_each_hyper_hom<F>(h: &Hypergraph, g: &Hypergraph, budget: u64, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]),
{
    if h.k() != g.k() {
        return Err(Error::UniformityMismatch {
            pattern: h.k(),
            target: g.k(),
        });
    }
    // Place high-degree vertices first; each edge is checked at the position
    // where its last vertex is placed.
    let mut degree = vec![0usize; h.n()];
    for e in h.edges() {
        for &v in e {
            degree[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
    let mut pos = vec![0usize; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut closing: Vec<Vec<Vec<usize>>> = vec![Vec::new(); h.n()];
    for e in h.edges() {
        let last = e.iter().map(|&v| pos[v]).max().unwrap_or(0);
        closing[last].push(e.to_vec());
    }
    let mut phi = vec![0usize; h.n()];
    let mut states = 0u64;
    let mut scratch = Vec::with_capacity(h.k());
    hyper_rec(
        g, &order, &closing, 0, &mut phi, &mut scratch, &mut states, budget, &mut visit,
    )
}

#[allow(clippy::too_many_arguments)]
fn hyper_rec<F: FnMut(&[usize])>(
    g: &Hypergraph,
    order: &[usize],
    closing: &[Vec<Vec<usize>>],
    pos: usize,
    phi: &mut [usize],
    scratch: &mut Vec<usize>,
    states: &mut u64,
    budget: u64,
    visit: &mut F,
) -> Result<()> {
    if pos == order.len() {
        visit(phi);
        return Ok(());
    }
    'cand: for x in 0..g.n() {
        phi[order[pos]] = x;
        for e in &closing[pos] {
            scratch.clear();
            scratch.extend(e.iter().map(|&v| phi[v]));
            scratch.sort_unstable();
            if scratch.windows(2).any(|w| w[0] == w[1]) || !g.contains(scratch) {
                continue 'cand;
            }
        }
        *states += 1;
        if *states > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        hyper_rec(g, order, closing, pos + 1, phi, scratch, states, budget, visit)?;
    }
    Ok(())
}
