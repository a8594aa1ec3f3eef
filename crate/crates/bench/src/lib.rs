//! Shared inputs for the engine benchmarks.

use symhom::{fixtures, DeclarativeOracle, Result, TorusOracle};

/// The shipped fixtures, loaded once per benchmark group.
pub struct Fixtures {
    pub t_ml: TorusOracle,
    pub t_mm: TorusOracle,
    pub t_mm_w: TorusOracle,
    pub triple: DeclarativeOracle,
}

impl Fixtures {
    pub fn load() -> Result<Self> {
        Ok(Fixtures {
            t_ml: fixtures::t_ml()?,
            t_mm: fixtures::t_mm()?,
            t_mm_w: fixtures::t_mm_w_in_b1()?,
            triple: fixtures::triple()?,
        })
    }
}
