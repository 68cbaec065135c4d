use std::fmt;
use std::str::FromStr;

use super::{
    axes_total_cost, baseline_average, optimize_axes_placement, regular_placement, Placement, PlacementReport,
};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::grid::GridSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Regular,
    Axes,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::Regular, Strategy::Axes];

    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Regular => "regular",
            Strategy::Axes => "axes",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "regular" => Ok(Strategy::Regular),
            "axes" => Ok(Strategy::Axes),
            _ => Err(Error::InvalidArgument(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StrategyOutcome {
    Reachable {
        placement: Placement,
        report: PlacementReport,
        /// `1 - average / baseline`, baseline being the cache-free average.
        reduction: f64,
    },
    Unreachable {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrategyRow {
    /// Designated caches across the whole network.
    pub budget: u64,
    pub strategy: Strategy,
    pub outcome: StrategyOutcome,
}

impl StrategyRow {
    pub fn average(&self) -> Option<f64> {
        match &self.outcome {
            StrategyOutcome::Reachable { report, .. } => Some(report.average()),
            StrategyOutcome::Unreachable { .. } => None,
        }
    }

    pub fn reduction(&self) -> Option<f64> {
        match &self.outcome {
            StrategyOutcome::Reachable { reduction, .. } => Some(*reduction),
            StrategyOutcome::Unreachable { .. } => None,
        }
    }
}

fn regular_factor(budget: u64) -> Option<u32> {
    // 4r(r-1) = B  =>  r = (1 + sqrt(1 + B)) / 2
    let s = ((1 + budget) as f64).sqrt().round() as u64;
    if s * s != 1 + budget || !(1 + s).is_multiple_of(2) {
        return None;
    }
    u32::try_from(s.div_ceil(2)).ok()
}

/// Resolves a whole-network budget into a placement for `strategy`.
pub(crate) fn placement_for_budget(
    g: &GridSpec,
    budget: u64,
    strategy: Strategy,
) -> Result<(Placement, PlacementReport), String> {
    match strategy {
        Strategy::Regular => {
            let r = regular_factor(budget).ok_or_else(|| format!("{budget} is not of the form 4r(r-1)"))?;
            let layout = regular_placement(g, r).map_err(|e| e.to_string())?;
            Ok((Placement::Regular(layout.placement), layout.report))
        }
        Strategy::Axes => {
            if !budget.is_multiple_of(2) {
                return Err(format!("{budget} is odd; in-axes caches come in mirrored pairs"));
            }
            let p = optimize_axes_placement(g, (budget / 2) as usize).map_err(|e| e.to_string())?;
            let report = axes_total_cost(&p, g);
            Ok((Placement::InAxes(p), report))
        }
    }
}

/// Average quadrant distance of both strategies for each whole-network cache
/// budget. In-axes budgets `B` use `B / 2` caches per quadrant.
pub fn compare_strategies(g: &GridSpec, budgets: &[u64]) -> Vec<StrategyRow> {
    let base = baseline_average(g);
    let base = *base.numer() as f64 / *base.denom() as f64;
    let mut rows = Vec::with_capacity(budgets.len() * 2);
    for &budget in budgets {
        for strategy in Strategy::ALL {
            let outcome = match placement_for_budget(g, budget, strategy) {
                Ok((placement, report)) => {
                    let reduction = if base > 0.0 {
                        1.0 - report.average() / base
                    } else {
                        0.0
                    };
                    StrategyOutcome::Reachable {
                        placement,
                        report,
                        reduction,
                    }
                }
                Err(reason) => StrategyOutcome::Unreachable { reason },
            };
            rows.push(StrategyRow {
                budget,
                strategy,
                outcome,
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(rows: &[StrategyRow], budget: u64, s: Strategy) -> &StrategyRow {
        rows.iter()
            .find(|r| r.budget == budget && r.strategy == s)
            .unwrap()
    }

    #[test]
    fn regular_budgets() {
        assert_eq!(regular_factor(0), Some(1));
        assert_eq!(regular_factor(8), Some(2));
        assert_eq!(regular_factor(24), Some(3));
        assert_eq!(regular_factor(48), Some(4));
        assert_eq!(regular_factor(4), None);
        assert_eq!(regular_factor(16), None);
    }

    #[test]
    fn comparison_on_24x24() {
        let g = GridSpec::new(24, 24).unwrap();
        let rows = compare_strategies(&g, &[0, 4, 8, 16]);
        assert_eq!(rows.len(), 8);

        let r = find(&rows, 8, Strategy::Regular);
        assert_eq!(r.average(), Some(5.0));
        assert!((r.reduction().unwrap() - 6.0 / 11.0).abs() < 1e-12);

        for s in Strategy::ALL {
            let r = find(&rows, 0, s);
            assert_eq!(r.average(), Some(11.0));
            assert_eq!(r.reduction(), Some(0.0));
        }

        assert!(matches!(
            find(&rows, 4, Strategy::Regular).outcome,
            StrategyOutcome::Unreachable { .. }
        ));
        let axes4 = find(&rows, 4, Strategy::Axes);
        // 912 / 144 against a baseline of 11
        assert!((axes4.reduction().unwrap() - (1.0 - 912.0 / 144.0 / 11.0)).abs() < 1e-12);
        assert!(find(&rows, 16, Strategy::Axes).reduction().unwrap() > 0.6);
    }

    #[test]
    fn odd_and_oversized_axes_budgets_are_flagged() {
        let g = GridSpec::new(12, 12).unwrap();
        let rows = compare_strategies(&g, &[3, 12]);
        assert!(rows
            .iter()
            .filter(|r| r.strategy == Strategy::Axes)
            .all(|r| r.average().is_none()));
    }
}
