//! Closed forms for maximizing the cherry `K_{1,2}` over threshold limits
//! whose first three blocks have total proportion `d`, first-three-block
//! edge density `c`, and later 1-blocks of total proportion `k`. The free
//! variable is the middle block `β`; the outer blocks follow from the two
//! constraints.

use serde::Serialize;

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TwoStarMode {
    /// Blocks `0^α 1^β 0^γ`.
    ZeroLead,
    /// Blocks `1^α 0^β 1^γ`.
    OneLead,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoStarInstance {
    pub c: f64,
    pub d: f64,
    pub k: f64,
    pub mode: TwoStarMode,
}

impl TwoStarInstance {
    pub fn new(c: f64, d: f64, k: f64, mode: TwoStarMode) -> Self {
        TwoStarInstance { c, d, k, mode }
    }

    /// Outer block proportions `(α, γ)` for middle block `β`.
    pub fn outer(&self, beta: f64) -> (f64, f64) {
        let TwoStarInstance { c, d, .. } = *self;
        match self.mode {
            TwoStarMode::ZeroLead => {
                let alpha = c / (2.0 * beta) - beta / 2.0;
                (alpha, d - alpha - beta)
            }
            TwoStarMode::OneLead => {
                let gamma = (c - (beta - d).powi(2)) / (2.0 * beta);
                (d - beta - gamma, gamma)
            }
        }
    }

    /// Interval of `β` keeping `α, γ >= 0`; `None` when empty or a point.
    pub fn feasible(&self) -> Option<(f64, f64)> {
        let TwoStarInstance { c, d, .. } = *self;
        if c <= 0.0 || c > d * d {
            return None;
        }
        let root = (d * d - c).max(0.0).sqrt();
        let (lo, hi) = match self.mode {
            TwoStarMode::ZeroLead => (d - root, c.sqrt()),
            TwoStarMode::OneLead => ((d - c.sqrt()).max(0.0), root),
        };
        (hi - lo > 1e-12).then_some((lo, hi))
    }

    /// Cherry density contributed by the three blocks and the later 1-blocks,
    /// written with `α, γ` substituted.
    pub fn objective(&self, beta: f64) -> Result<f64> {
        check_beta(beta)?;
        let k = self.k;
        let d = self.d;
        let (alpha, gamma) = self.outer(beta);
        Ok(match self.mode {
            TwoStarMode::ZeroLead => {
                alpha * (k + beta).powi(2) + beta * (alpha + beta + k).powi(2) + gamma * k * k
            }
            TwoStarMode::OneLead => {
                alpha * (k + alpha + gamma).powi(2) + beta * (gamma + k).powi(2) + gamma * (k + d).powi(2)
            }
        })
    }

    pub fn f(&self, beta: f64) -> Result<f64> {
        check_beta(beta)?;
        let TwoStarInstance { c, d, k, .. } = *self;
        Ok(match self.mode {
            TwoStarMode::ZeroLead => {
                -beta.powi(3) / 4.0 + beta * c + c * c / (4.0 * beta) + k * (2.0 * c + d * k)
            }
            TwoStarMode::OneLead => {
                let e = c - d * d;
                -beta.powi(3) / 4.0 - beta * e + e * e / (4.0 * beta) + 2.0 * c * d + 2.0 * c * k
                    - d.powi(3)
                    + d * k * k
            }
        })
    }

    pub fn fprime(&self, beta: f64) -> Result<f64> {
        check_beta(beta)?;
        let TwoStarInstance { c, d, .. } = *self;
        let b2 = beta * beta;
        Ok(match self.mode {
            TwoStarMode::ZeroLead => (4.0 * b2 * c - 3.0 * b2 * b2 - c * c) / (4.0 * b2),
            TwoStarMode::OneLead => {
                let e = c - d * d;
                -(b2 + e) * (3.0 * b2 + e) / (4.0 * b2)
            }
        })
    }

    pub fn fsecond(&self, beta: f64) -> Result<f64> {
        check_beta(beta)?;
        let TwoStarInstance { c, d, .. } = *self;
        let e = match self.mode {
            TwoStarMode::ZeroLead => c,
            TwoStarMode::OneLead => c - d * d,
        };
        Ok((-3.0 * beta.powi(4) + e * e) / (2.0 * beta.powi(3)))
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("β must be positive, got {beta}")))
    }
}

/// Scan resolution for [`two_star_no_interior_max`].
pub const SCAN_POINTS: usize = 4000;

/// True when no critical point of `f` strictly inside the feasible interval
/// is a local maximum (`f'' <= 0`), so the maximum sits at an end point.
/// Vacuously true for an empty or degenerate interval.
pub fn two_star_no_interior_max(inst: &TwoStarInstance) -> bool {
    let Some((lo, hi)) = inst.feasible() else {
        return true;
    };
    let width = hi - lo;
    let margin = width * 1e-6;
    let (a, b) = (lo + margin, hi - margin);
    let fp = |x: f64| inst.fprime(x).expect("β > 0 inside the interval");
    let mut prev_x = a;
    let mut prev = fp(a);
    for i in 1..=SCAN_POINTS {
        let x = a + (b - a) * i as f64 / SCAN_POINTS as f64;
        let cur = fp(x);
        if prev == 0.0 || prev.signum() != cur.signum() {
            // bisect to the root
            let (mut l, mut r) = (prev_x, x);
            for _ in 0..100 {
                let mid = 0.5 * (l + r);
                if fp(mid).signum() == fp(l).signum() && fp(l) != 0.0 {
                    l = mid;
                } else {
                    r = mid;
                }
            }
            let root = 0.5 * (l + r);
            if inst.fsecond(root).expect("β > 0") <= 0.0 {
                return false;
            }
        }
        prev_x = x;
        prev = cur;
    }
    true
}
