//! Command-line frontend for the orbiknot library.

use orbiknot::Error;

pub mod dispatch;

pub use dispatch::run;

/// Exit codes: 1 for domain errors, 2 for budget errors.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. } | Error::ClosureCapExceeded { .. } => 2,
        _ => 1,
    }
}
