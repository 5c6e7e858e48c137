//! Inflection counts for complete series on hyperelliptic curves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflectionBudget {
    pub total: u64,
    pub ramification: u64,
    /// Inflection away from the ramification locus, `total − ramification`.
    pub away: u64,
}

/// Total inflection `(2g+2)(g+3)` split into the part supported on the
/// ramification locus, `4·C(g+1,2) + 2(g−1)`, and the rest.
pub fn inflection_budget(g: u64) -> Result<InflectionBudget> {
    if g < 1 {
        return Err(Error::InvalidArgument("genus must be at least 1".into()));
    }
    let total = (2 * g + 2) * (g + 3);
    let ramification = 2 * (g + 1) * g + 2 * (g - 1);
    Ok(InflectionBudget {
        total,
        ramification,
        away: total - ramification,
    })
}

/// `ω_ℝ(k, g) = 2g(g+1) + 2(k−g)(g−1) + 2g(1 + g mod 2)(k−g)`.
pub fn omega_real(k: u64, g: u64) -> Result<u64> {
    if g < 1 || k <= g {
        return Err(Error::InvalidArgument(format!(
            "omega_real needs k > g >= 1, got k = {k}, g = {g}"
        )));
    }
    let d = k - g;
    Ok(2 * g * (g + 1) + 2 * d * (g - 1) + 2 * g * (1 + g % 2) * d)
}
