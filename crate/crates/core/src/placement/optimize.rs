//! Optimal in-axes cache locations.
//!
//! Both searches work on the merged sequence `c_1 < c_2 < ... < c_N` of cache
//! positions. Axes are assigned by alternating along the sequence, starting
//! on the axis chosen by [`Parity`]; a position that does not fit on its
//! assigned axis (`c >= h` or `c >= v`) moves to the other one. With that
//! assignment the quadrant cost is a chain: the region of `c_k` only depends
//! on `c_k`, `c_{k+1}` and `c_{k+2}`.
//!
//! [`AxesSearch::Exact`] minimizes the chain by dynamic programming over
//! consecutive pairs. [`AxesSearch::CoordinateAdvance`] is the classic
//! greedy loop that starts from `c_i = i` and pushes the outermost cache
//! outwards while the cost drops; it is fast but can stop at a local optimum.
//!
//! Among equal-cost optima the placement whose positions are
//! lexicographically largest wins, then the one with horizontal tags first.

use std::cmp::{Ordering, Reverse};

use super::{axes_total_cost, region_cost, Axis, InAxesPlacement};
use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Axis of the first (innermost) cache in the merged sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    HorizontalFirst,
    VerticalFirst,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::HorizontalFirst, Parity::VerticalFirst];

    fn intended(self, k: usize) -> Axis {
        let first = match self {
            Parity::HorizontalFirst => Axis::Horizontal,
            Parity::VerticalFirst => Axis::Vertical,
        };
        if k.is_multiple_of(2) {
            first
        } else {
            first.other()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum AxesSearch {
    #[default]
    Exact,
    CoordinateAdvance,
}

fn axis_for(k: usize, position: u32, parity: Parity, g: &GridSpec) -> Option<Axis> {
    let a = parity.intended(k);
    if position < a.bound(g) {
        Some(a)
    } else if position < a.other().bound(g) {
        Some(a.other())
    } else {
        None
    }
}

/// Alternating axis assignment with overflow. `None` if some position fits
/// on neither axis.
pub fn assign_axes(positions: &[u32], parity: Parity, g: &GridSpec) -> Option<Vec<Axis>> {
    positions
        .iter()
        .enumerate()
        .map(|(k, &p)| axis_for(k, p, parity, g))
        .collect()
}

fn build(positions: &[u32], axes: &[Axis], g: &GridSpec) -> Result<InAxesPlacement> {
    let mut hs = Vec::new();
    let mut vs = Vec::new();
    for (&p, &a) in positions.iter().zip(axes) {
        match a {
            Axis::Horizontal => hs.push(p),
            Axis::Vertical => vs.push(p),
        }
    }
    InAxesPlacement::new(hs, vs, g)
}

fn placement_for(positions: &[u32], parity: Parity, g: &GridSpec) -> Option<InAxesPlacement> {
    let axes = assign_axes(positions, parity, g)?;
    build(positions, &axes, g).ok()
}

/// Ordering used to pick among equal-cost placements; `Less` means preferred.
pub(crate) fn preference(a: &InAxesPlacement, b: &InAxesPlacement) -> Ordering {
    let key = |p: &InAxesPlacement| {
        let m = p.merged();
        let positions: Vec<_> = m.iter().map(|c| Reverse(c.position)).collect();
        let axes: Vec<_> = m.iter().map(|c| c.axis).collect();
        (positions, axes)
    };
    key(a).cmp(&key(b))
}

/// Largest number of caches per quadrant: positions are distinct across both
/// axes and lie in `[1, max(h, v))`.
pub fn max_caches(g: &GridSpec) -> usize {
    g.h().max(g.v()).saturating_sub(1) as usize
}

fn check_feasible(g: &GridSpec, n: usize) -> Result<()> {
    if n > max_caches(g) {
        return Err(Error::Infeasible(format!(
            "{n} in-axes caches per quadrant do not fit on {g} (at most {})",
            max_caches(g)
        )));
    }
    Ok(())
}

pub fn optimize_axes_placement(g: &GridSpec, n: usize) -> Result<InAxesPlacement> {
    optimize_with(g, n, AxesSearch::Exact)
}

pub fn optimize_with(g: &GridSpec, n: usize, search: AxesSearch) -> Result<InAxesPlacement> {
    check_feasible(g, n)?;
    if n == 0 {
        return Ok(InAxesPlacement::empty());
    }
    let mut candidates = Vec::with_capacity(2);
    for parity in Parity::BOTH {
        let found = match search {
            AxesSearch::Exact => ChainSolver::new(g, n, parity).solve(),
            AxesSearch::CoordinateAdvance => {
                let out = coordinate_advance(g, n, parity)?;
                Some((out.cost, out.positions))
            }
        };
        if let Some((cost, positions)) = found {
            let p = placement_for(&positions, parity, g).expect("solver returns feasible sequences");
            candidates.push((cost, p));
        }
    }
    candidates
        .into_iter()
        .min_by(|(ca, pa), (cb, pb)| ca.cmp(cb).then_with(|| preference(pa, pb)))
        .map(|(_, p)| p)
        .ok_or_else(|| Error::Infeasible(format!("no feasible assignment of {n} caches on {g}")))
}

/// Region cost of the cache at merged index `k`, given the positions and
/// axes of it and the next two caches.
fn chain_term(g: &GridSpec, me: (u32, Axis), next: Option<(u32, Axis)>, after: Option<(u32, Axis)>) -> u64 {
    let (pos, axis) = me;
    let same = [next, after]
        .into_iter()
        .flatten()
        .find(|&(_, a)| a == axis)
        .map_or(axis.bound(g), |(p, _)| p);
    let extent = [next, after]
        .into_iter()
        .flatten()
        .find(|&(_, a)| a != axis)
        .map_or(axis.other().bound(g), |(p, _)| p);
    region_cost(pos, same, extent)
}

fn producer_term(g: &GridSpec, first: (u32, Axis), second: Option<(u32, Axis)>) -> u64 {
    let on = |axis: Axis| {
        [Some(first), second]
            .into_iter()
            .flatten()
            .find(|&(_, a)| a == axis)
            .map_or(axis.bound(g), |(p, _)| p)
    };
    region_cost(0, on(Axis::Horizontal), on(Axis::Vertical))
}

/// Quadrant cost of a merged sequence evaluated term by term along the chain.
#[cfg(test)]
pub(crate) fn chain_cost(positions: &[u32], parity: Parity, g: &GridSpec) -> Option<u64> {
    let axes = assign_axes(positions, parity, g)?;
    if positions.is_empty() {
        return Some(region_cost(0, g.h(), g.v()));
    }
    let tagged: Vec<(u32, Axis)> = positions.iter().copied().zip(axes).collect();
    let mut total = producer_term(g, tagged[0], tagged.get(1).copied());
    for k in 0..tagged.len() {
        total += chain_term(
            g,
            tagged[k],
            tagged.get(k + 1).copied(),
            tagged.get(k + 2).copied(),
        );
    }
    Some(total)
}

/// Dynamic program over pairs `(c_k, c_{k+1})`.
struct ChainSolver<'a> {
    g: &'a GridSpec,
    n: usize,
    m: usize,
    parity: Parity,
    /// `suffix[k][x * m + y]`: cheapest cost of the terms `k..n` given
    /// `c_k = x`, `c_{k+1} = y`.
    suffix: Vec<Vec<u64>>,
}

const INF: u64 = u64::MAX;

impl<'a> ChainSolver<'a> {
    fn new(g: &'a GridSpec, n: usize, parity: Parity) -> Self {
        ChainSolver {
            g,
            n,
            m: g.h().max(g.v()) as usize,
            parity,
            suffix: Vec::new(),
        }
    }

    fn tag(&self, k: usize, p: usize) -> Option<(u32, Axis)> {
        axis_for(k, p as u32, self.parity, self.g).map(|a| (p as u32, a))
    }

    fn solve(mut self) -> Option<(u64, Vec<u32>)> {
        let (n, m) = (self.n, self.m);
        if n == 1 {
            let mut best: Option<(u64, u32)> = None;
            for x in 1..m {
                let Some(tx) = self.tag(0, x) else { continue };
                let cost = producer_term(self.g, tx, None) + chain_term(self.g, tx, None, None);
                if best.is_none_or(|(c, _)| cost <= c) {
                    best = Some((cost, x as u32));
                }
            }
            return best.map(|(c, x)| (c, vec![x]));
        }

        self.suffix = vec![vec![INF; m * m]; n - 1];
        for k in (0..n - 1).rev() {
            for x in 1..m {
                let Some(tx) = self.tag(k, x) else { continue };
                for y in x + 1..m {
                    let Some(ty) = self.tag(k + 1, y) else { continue };
                    let value = if k == n - 2 {
                        chain_term(self.g, tx, Some(ty), None) + chain_term(self.g, ty, None, None)
                    } else {
                        let mut best = INF;
                        for z in y + 1..m {
                            let rest = self.suffix[k + 1][y * m + z];
                            if rest == INF {
                                continue;
                            }
                            let tz = self.tag(k + 2, z).expect("finite suffix implies a valid tag");
                            best = best.min(chain_term(self.g, tx, Some(ty), Some(tz)) + rest);
                        }
                        best
                    };
                    self.suffix[k][x * m + y] = value;
                }
            }
        }

        // Front pair: lowest total, then the largest positions.
        let mut front: Option<(u64, usize, usize)> = None;
        for x in 1..m {
            let Some(tx) = self.tag(0, x) else { continue };
            for y in x + 1..m {
                let rest = self.suffix[0][x * m + y];
                if rest == INF {
                    continue;
                }
                let ty = self.tag(1, y).expect("finite suffix implies a valid tag");
                let cost = producer_term(self.g, tx, Some(ty)) + rest;
                if front.is_none_or(|(c, _, _)| cost <= c) {
                    front = Some((cost, x, y));
                }
            }
        }
        let (total, x0, y0) = front?;

        let mut seq = vec![x0, y0];
        for k in 0..n - 2 {
            let (x, y) = (seq[k], seq[k + 1]);
            let target = self.suffix[k][x * m + y];
            let tx = self.tag(k, x).expect("on optimal path");
            let ty = self.tag(k + 1, y).expect("on optimal path");
            let z = (y + 1..m)
                .rev()
                .find(|&z| {
                    let rest = self.suffix[k + 1][y * m + z];
                    rest != INF && chain_term(self.g, tx, Some(ty), self.tag(k + 2, z)) + rest == target
                })
                .expect("an optimal successor exists");
            seq.push(z);
        }
        Some((total, seq.into_iter().map(|p| p as u32).collect()))
    }
}

/// Result of one run of the greedy coordinate-advance loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdvanceOutcome {
    pub parity: Parity,
    pub positions: Vec<u32>,
    pub cost: u64,
    /// Number of candidate placements whose cost was evaluated.
    pub evaluations: u64,
    /// Full outer-to-inner sweeps, including the final one without changes.
    pub sweeps: u32,
}

/// Greedy search: start with `c_i = i`, and for `i = N..1` advance `c_i` by
/// one while that strictly lowers the cost and `c_i + 1 < c_{i+1}`
/// (`c_{N+1} = max(h, v)`). Sweeps repeat until one makes no change.
pub fn coordinate_advance(g: &GridSpec, n: usize, parity: Parity) -> Result<AdvanceOutcome> {
    check_feasible(g, n)?;
    let top = g.h().max(g.v());
    let cost_of = |c: &[u32]| placement_for(c, parity, g).map(|p| axes_total_cost(&p, g).total_cost);

    let mut c: Vec<u32> = (1..=n as u32).collect();
    let mut lowest = cost_of(&c).ok_or_else(|| Error::Infeasible(format!("{n} caches on {g}")))?;
    let mut evaluations = 1;
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut finish = true;
        for i in (0..n).rev() {
            loop {
                let limit = c.get(i + 1).copied().unwrap_or(top);
                if c[i] + 1 >= limit {
                    break;
                }
                let mut candidate = c.clone();
                candidate[i] += 1;
                evaluations += 1;
                match cost_of(&candidate) {
                    Some(cost) if cost < lowest => {
                        lowest = cost;
                        c = candidate;
                        finish = false;
                    }
                    _ => break,
                }
            }
        }
        if finish {
            break;
        }
    }
    Ok(AdvanceOutcome {
        parity,
        positions: c,
        cost: lowest,
        evaluations,
        sweeps,
    })
}
