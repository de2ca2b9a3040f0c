//! Resource caps shared by the enumerating algorithms.
//!
//! Budgets are checked cooperatively between candidates, never in the middle
//! of an exact computation.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest candidate box (number of lattice points) a closure search may visit.
    pub max_candidates: u64,
    /// Largest intermediate generator list before an operation refuses.
    pub max_generators: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_candidates: 20_000_000,
            max_generators: 2_000_000,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.deadline = Some(Instant::now() + budget);
        self
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => {
                Err(Error::LimitExceeded("time budget exhausted".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn check_candidates(&self, n: u64, what: &str) -> Result<()> {
        if n > self.max_candidates {
            return Err(Error::LimitExceeded(format!(
                "{what}: {n} candidates exceed the cap of {}",
                self.max_candidates
            )));
        }
        Ok(())
    }

    pub fn check_generators(&self, n: usize, what: &str) -> Result<()> {
        if n > self.max_generators {
            return Err(Error::LimitExceeded(format!(
                "{what}: {n} generators exceed the cap of {}",
                self.max_generators
            )));
        }
        Ok(())
    }
}
