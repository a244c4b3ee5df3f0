//! Truncated Galerkin solution of the three correlation equations and the
//! constants derived from the solved coefficients.

pub mod assemble;
pub mod channel;
pub mod record;
pub mod solve;
pub mod truncation;

pub use assemble::{assemble, LinearSystem};
pub use channel::{Channel, ChannelTag, Coordinate, RadialOperator};
pub use record::{
    energy_constant, exact_record, normalization_constant, solve_expansion, Expansion, Method, RecordJson,
    SolutionRecord,
};
pub use solve::solve;
pub use truncation::Truncation;
