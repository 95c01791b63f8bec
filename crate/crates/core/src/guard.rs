use std::fmt;

use crate::error::{Error, Result};

/// Upper bounds on instance size for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SizeGuard {
    pub max_goods: usize,
    pub max_agents: usize,
}

impl SizeGuard {
    pub const fn new(max_goods: usize, max_agents: usize) -> Self {
        Self {
            max_goods,
            max_agents,
        }
    }

    /// Default for the exact maximin-share solver.
    pub const EXACT_MMS: Self = Self::new(16, 5);
    /// Default for the exact Nash-welfare solver.
    pub const NSW: Self = Self::new(14, 5);
    /// Default for the brute-force oracles.
    pub const ORACLE: Self = Self::new(12, 5);
    /// Default for the heterogeneous-valuation welfare oracle, whose agent
    /// count grows with the number of edges.
    pub const HET: Self = Self::new(8, 16);

    pub const UNLIMITED: Self = Self::new(usize::MAX, usize::MAX);

    pub fn admits(&self, m: usize, n: usize) -> bool {
        m <= self.max_goods && n <= self.max_agents
    }

    pub(crate) fn check(&self, m: usize, n: usize, hint: &'static str) -> Result<()> {
        if self.admits(m, n) {
            Ok(())
        } else {
            Err(Error::GuardExceeded {
                m,
                n,
                guard: *self,
                hint,
            })
        }
    }
}

impl fmt::Display for SizeGuard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m <= {}, n <= {})", self.max_goods, self.max_agents)
    }
}

/// The guards used by one mechanism run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    pub exact_mms: SizeGuard,
    pub nsw: SizeGuard,
    pub oracle: SizeGuard,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            exact_mms: SizeGuard::EXACT_MMS,
            nsw: SizeGuard::NSW,
            oracle: SizeGuard::ORACLE,
        }
    }
}
