//! Copositivity certificates for low-order symmetric tensors.
//!
//! Closed-form criteria for order 3 and 4 tensors in dimensions 2 and 3,
//! a brute-force simplex oracle to check them against, and a vacuum
//! stability application.

pub mod cli;
pub mod criteria;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod tensor;
pub mod vacuum;

pub use criteria::{aggregate, certify_all, Certificate, CheckOptions, Condition, Criterion, Outcome};
pub use error::{CoposError, Result};
pub use oracle::{min_on_simplex, Classification, OracleConfig, OracleResult};
pub use tensor::{MultiIndex, SymmetricTensor};
