use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("enumeration budget exceeded: {needed} placements > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("forwarding contract violated at {node}: {detail}")]
    Forwarding { node: String, detail: String },

    #[error("simulation invariant violated: {0}")]
    SimInvariant(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
