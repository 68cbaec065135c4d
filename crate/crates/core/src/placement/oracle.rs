//! Exhaustive search over in-axes placements, used to cross-check the
//! optimizer and the interleaving property on small grids.

use super::optimize::{assign_axes, max_caches, preference, Parity};
use super::{axes_total_cost, Axis, InAxesPlacement, PlacementReport};
use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Default cap on the number of placements an oracle call may evaluate.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub placement: InAxesPlacement,
    pub report: PlacementReport,
    /// Number of distinct placements evaluated.
    pub evaluated: u64,
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Calls `f` with every strictly increasing `k`-subset of `lo..hi`.
fn for_each_combination(lo: u32, hi: u32, k: usize, mut f: impl FnMut(&[u32])) {
    if hi < lo || ((hi - lo) as usize) < k {
        return;
    }
    let mut c: Vec<u32> = (lo..lo + k as u32).collect();
    loop {
        f(&c);
        let Some(i) = (0..k).rev().find(|&i| c[i] < hi - (k - i) as u32) else {
            return;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Number of placements the oracle would enumerate.
pub fn enumeration_size(g: &GridSpec, n: usize, interleaved_only: bool) -> u128 {
    let n = n as u64;
    if interleaved_only {
        2 * binomial(max_caches(g) as u64, n)
    } else {
        let (hh, vv) = (g.h().saturating_sub(1) as u64, g.v().saturating_sub(1) as u64);
        (0..=n).map(|k| binomial(hh, k) * binomial(vv, n - k)).sum()
    }
}

/// Globally cheapest placement of `n` caches per quadrant.
///
/// With `interleaved_only` the search is restricted to placements produced by
/// the alternate-with-overflow axis assignment; otherwise every split of the
/// caches between the two axes is tried.
pub fn exhaustive_axes_placement(
    g: &GridSpec,
    n: usize,
    interleaved_only: bool,
    budget: u64,
) -> Result<OracleResult> {
    if n > max_caches(g) {
        return Err(Error::Infeasible(format!(
            "{n} in-axes caches per quadrant do not fit on {g}"
        )));
    }
    let needed = enumeration_size(g, n, interleaved_only);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    let mut best: Option<(u64, InAxesPlacement)> = None;
    let mut evaluated = 0u64;
    let mut consider = |p: InAxesPlacement| {
        evaluated += 1;
        let cost = axes_total_cost(&p, g).total_cost;
        let better = match &best {
            None => true,
            Some((c, q)) => cost < *c || (cost == *c && preference(&p, q).is_lt()),
        };
        if better {
            best = Some((cost, p));
        }
    };

    if interleaved_only {
        for_each_combination(1, g.h().max(g.v()), n, |seq| {
            let first = assign_axes(seq, Parity::HorizontalFirst, g);
            let second = assign_axes(seq, Parity::VerticalFirst, g).filter(|a| Some(a) != first.as_ref());
            for axes in [first, second].into_iter().flatten() {
                let mut hs = Vec::new();
                let mut vs = Vec::new();
                for (&p, a) in seq.iter().zip(&axes) {
                    match a {
                        Axis::Horizontal => hs.push(p),
                        Axis::Vertical => vs.push(p),
                    }
                }
                consider(InAxesPlacement::new(hs, vs, g).expect("distinct positions within axis bounds"));
            }
        });
    } else {
        for k in 0..=n {
            for_each_combination(1, g.h(), k, |hs| {
                for_each_combination(1, g.v(), n - k, |vs| {
                    if let Ok(p) = InAxesPlacement::new(hs.to_vec(), vs.to_vec(), g) {
                        consider(p);
                    }
                });
            });
        }
    }

    let (_, placement) =
        best.ok_or_else(|| Error::Infeasible(format!("no placement of {n} caches on {g}")))?;
    let report = axes_total_cost(&placement, g);
    Ok(OracleResult {
        placement,
        report,
        evaluated,
    })
}
