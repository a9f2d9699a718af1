use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::DEFAULT_GROUP_CAP;

/// Size limits applied before any enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub group_order: usize,
    pub monomial_basis: usize,
    pub degree: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            group_order: DEFAULT_GROUP_CAP,
            monomial_basis: 5000,
            degree: 60,
        }
    }
}

impl Caps {
    pub fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.degree {
            return Err(Error::CapExceeded {
                what: "degree",
                actual: d as usize,
                limit: self.degree as usize,
            });
        }
        Ok(())
    }
}
