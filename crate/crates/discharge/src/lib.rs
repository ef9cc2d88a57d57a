//! Discharging: rules, charges on triangulations, and the overlap engines
//! that enumerate send cases and positive cartwheels.

pub mod charge;
pub mod enumerate;
pub mod matcher;
pub mod random;
pub mod rconf;
pub mod rule;

pub use charge::{
    apply_rules, boundary_charge, charge_along, conf_in_T_threshold, initial_charge, surface_constant,
    threshold_trigger, total_charge_check, BoundaryCharge, ChargeState, ThresholdReport,
};
pub use enumerate::{discharge_cartwheels, enum_send_cases, Cartwheel, Limits, SendCase};
pub use rconf::{glue, overlap_edge, overlap_triangle, RangeConf, INF};
pub use rule::{decompose, obeys, parse_rules, read_rules, Rule};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] snarklab_core::Error),
    #[error(transparent)]
    Reduce(#[from] snarklab_reduce::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("limit reached: {0}")]
    Cap(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
