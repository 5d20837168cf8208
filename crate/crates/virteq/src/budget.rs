//! Enumeration budget.
//!
//! Every brute-force enumeration counts the candidate structures it examines
//! against a budget, read from `VIRTEQ_MAX_ENUM` (default 1,000,000), and
//! fails with [`Error::EnumerationBudgetExceeded`] instead of running
//! unbounded.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;
pub const ENV_VAR: &str = "VIRTEQ_MAX_ENUM";

pub fn max_enum_from_env() -> u64 {
    match std::env::var(ENV_VAR) {
        Ok(s) => s.trim().parse().unwrap_or(DEFAULT_MAX_ENUM),
        Err(_) => DEFAULT_MAX_ENUM,
    }
}

/// Per-operation counter of candidate structures.
#[derive(Debug)]
pub struct Budget {
    operation: String,
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(operation: &str) -> Self {
        Budget::with_limit(operation, max_enum_from_env())
    }

    pub fn with_limit(operation: &str, limit: u64) -> Self {
        Budget { operation: operation.to_string(), limit, used: 0 }
    }

    /// Charge `n` candidates to the budget.
    pub fn charge(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(Error::EnumerationBudgetExceeded {
                operation: self.operation.clone(),
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_trips_at_limit() {
        let mut b = Budget::with_limit("test", 10);
        assert!(b.charge(10).is_ok());
        let err = b.charge(1).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
