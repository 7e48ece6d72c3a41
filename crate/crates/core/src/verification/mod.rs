//! Independent checks of computed data.

pub mod checks;
pub mod golden;
pub mod oracle;
pub mod tensor;

pub use checks::{run_checks, CheckId, CheckReport, Violation};
pub use golden::{compare_row, compare_with_golden, ExpectedRow, GoldenBlock, GoldenComparison, GoldenSet};
pub use oracle::oracle_dim_l_small;
pub use tensor::{check_on_tensor_power, TensorMismatch};
