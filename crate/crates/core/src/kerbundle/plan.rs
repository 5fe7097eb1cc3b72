use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ranks `(a, b)` of the presentation `0 -> O(-2e_0)^a -> O(-e_0)^b -> E -> 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankPlan {
    pub n: usize,
    pub r: usize,
    pub c: usize,
    pub a: usize,
    pub b: usize,
}

impl RankPlan {
    /// Even `n`: `a = r`, `b = (n+2)r/2 + c` with `r >= 2`, `c <= n/2 - 1`.
    /// Odd `n`: `a = 2r`, `b = (n+2)r + c` with `r >= 1`, `c <= n - 1`.
    pub fn new(n: usize, r: usize, c: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPlan(format!("n = {n} < 2")));
        }
        let (a, b) = if n % 2 == 0 {
            if r < 2 {
                return Err(Error::InvalidPlan(format!(
                    "even n requires r >= 2, got r = {r}"
                )));
            }
            if c + 1 > n / 2 {
                return Err(Error::InvalidPlan(format!(
                    "even n = {n} requires c <= {}, got {c}",
                    n / 2 - 1
                )));
            }
            (r, (n + 2) * r / 2 + c)
        } else {
            if r < 1 {
                return Err(Error::InvalidPlan("odd n requires r >= 1".into()));
            }
            if c + 1 > n {
                return Err(Error::InvalidPlan(format!(
                    "odd n = {n} requires c <= {}, got {c}",
                    n - 1
                )));
            }
            (2 * r, (n + 2) * r + c)
        };
        Ok(Self { n, r, c, a, b })
    }

    /// Rank of the bundle, `b - a`.
    pub fn rank(&self) -> usize {
        self.b - self.a
    }
}

/// `a >= 1`, `b >= a + n` and `2b >= (n+2)a`.
pub fn check_eh_inequalities(a: usize, b: usize, n: usize) -> bool {
    a >= 1 && b >= a + n && 2 * b >= (n + 2) * a
}

/// Dimension count of the family against the closed form in `(r, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDimension {
    /// `(n+1)ab - a^2 - b^2 + 1`
    pub defining: i64,
    /// `((n+2)n-4)/4 r^2 - cr + c^2 + 1` (n even) or `((n+2)n-4) r^2 - 2cr + c^2 + 1` (n odd)
    pub closed_form: i64,
    pub matches: bool,
    pub discrepancy: Option<String>,
}

pub fn family_dimension(plan: &RankPlan) -> FamilyDimension {
    let (n, a, b) = (plan.n as i64, plan.a as i64, plan.b as i64);
    let (r, c) = (plan.r as i64, plan.c as i64);
    let defining = (n + 1) * a * b - a * a - b * b + 1;
    let closed_form = if n % 2 == 0 {
        ((n + 2) * n - 4) * r * r / 4 - c * r + c * c + 1
    } else {
        ((n + 2) * n - 4) * r * r - 2 * c * r + c * c + 1
    };
    let matches = defining == closed_form;
    let discrepancy = (!matches).then(|| {
        format!(
            "closed form gives {closed_form} (+c^2 term) but (n+1)ab - a^2 - b^2 + 1 = {defining} (-c^2 term) for c = {c}"
        )
    });
    FamilyDimension {
        defining,
        closed_form,
        matches,
        discrepancy,
    }
}
