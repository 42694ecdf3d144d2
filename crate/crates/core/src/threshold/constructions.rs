use super::sequence::CreationSequence;
use crate::error::{invalid, Result};

fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn check_budget(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("need at least one vertex"));
    }
    if m > pairs(n) {
        return Err(invalid(format!("{m} edges do not fit on {n} vertices")));
    }
    Ok(())
}

/// Clique on the largest `k` with `C(k,2) <= m`, one vertex joined to
/// `m - C(k,2)` clique vertices, the rest isolated. Exactly `m` edges.
pub fn quasi_clique(n: usize, m: usize) -> Result<CreationSequence> {
    check_budget(n, m)?;
    let mut k = 1;
    while k < n && pairs(k + 1) <= m {
        k += 1;
    }
    let r = m - pairs(k);
    let mut bits = Vec::with_capacity(n - 1);
    if r == 0 {
        bits.extend(std::iter::repeat(true).take(k - 1));
        bits.extend(std::iter::repeat(false).take(n - k));
    } else {
        bits.extend(std::iter::repeat(true).take(k - r - 1));
        bits.push(false);
        bits.extend(std::iter::repeat(true).take(r));
        bits.extend(std::iter::repeat(false).take(n - k - 1));
    }
    Ok(CreationSequence::new(bits))
}

/// Complement of the quasi-clique with `C(n,2) - m` edges.
pub fn quasi_star(n: usize, m: usize) -> Result<CreationSequence> {
    check_budget(n, m)?;
    Ok(quasi_clique(n, pairs(n) - m)?.complement())
}

/// Block sizes `(a, b, g)` of the pattern `1^a 0^b 1^g` with `a = ⌊√m⌋`,
/// `g = ⌊m / 2n⌋`, `b = n - a - g`. Requires `2n <= m <= C(n,2)`.
pub fn three_part_sizes(n: usize, m: usize) -> Result<(usize, usize, usize)> {
    if n == 0 || m < 2 * n || m > pairs(n) {
        return Err(invalid(format!(
            "three-part graph needs 2n <= m <= n(n-1)/2, got n={n}, m={m}"
        )));
    }
    let a = m.isqrt();
    let g = m / (2 * n);
    let b = n
        .checked_sub(a + g)
        .ok_or_else(|| invalid(format!("no room for the middle block at n={n}, m={m}")))?;
    Ok((a, b, g))
}

pub fn three_part(n: usize, m: usize) -> Result<CreationSequence> {
    let (a, b, g) = three_part_sizes(n, m)?;
    let full: Vec<bool> = std::iter::repeat(true)
        .take(a)
        .chain(std::iter::repeat(false).take(b))
        .chain(std::iter::repeat(true).take(g))
        .collect();
    CreationSequence::from_full(&full)
}
