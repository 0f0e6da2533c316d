//! Independent brute-force references.
//!
//! These paths share the LP kernel but none of the enumeration logic of the
//! optimized routes: losing coalitions come from a direct value() scan, not
//! from the blocker; hull vertex lists are complete, not reduced. They are
//! allowed to be exponentially slow inside their caps, and a cap violation
//! is a hard error, never a truncation.

use crate::game::{Coalition, SimpleGame};
use crate::rat::{Rat, RatVector};
use crate::ratlp::{hull_membership, solve_lp, HullMembership, LpProblem, Rel};
use num::traits::{One, Zero};
use thiserror::Error;

/// Cap for the direct losing-weight scan.
pub const LOSING_SCAN_CAP: usize = 20;

/// Cap for the complete-LP and complete-hull references.
pub const FULL_LP_CAP: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle {what} needs n <= {cap}, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        cap: usize,
    },
}

/// Maximum losing weight by scanning every coalition.
pub fn brute_losing_max(g: &SimpleGame, p: &RatVector) -> Result<Rat, OracleError> {
    let n = g.n();
    if n > LOSING_SCAN_CAP {
        return Err(OracleError::TooLarge {
            what: "losing scan",
            n,
            cap: LOSING_SCAN_CAP,
        });
    }
    assert_eq!(p.len(), n);
    let mut best = Rat::zero(); // empty coalition
    for bits in 1..(1u64 << n) {
        let c = Coalition::from_bits(bits as u32);
        if !g.value(c) {
            let v = p.masked_sum(c.bits());
            if v > best {
                best = v;
            }
        }
    }
    Ok(best)
}

/// The critical threshold value from the completely enumerated min-max LP:
/// one constraint per losing coalition, every losing coalition included.
pub fn brute_alpha(g: &SimpleGame) -> Result<Rat, OracleError> {
    let n = g.n();
    if n > FULL_LP_CAP {
        return Err(OracleError::TooLarge {
            what: "full LP",
            n,
            cap: FULL_LP_CAP,
        });
    }
    let mut objective = RatVector::zeros(n + 1).into_entries();
    objective[n] = Rat::one();
    let mut lp = LpProblem::minimize(RatVector::new(objective));
    for w in g.min_winning() {
        let mut row = w.characteristic(n).into_entries();
        row.push(Rat::zero());
        lp.add_constraint(RatVector::new(row), Rel::Ge, Rat::one());
    }
    for bits in 0..(1u64 << n) {
        let c = Coalition::from_bits(bits as u32);
        if !g.value(c) {
            let mut row = c.characteristic(n).into_entries();
            row.push(-Rat::one());
            lp.add_constraint(RatVector::new(row), Rel::Le, Rat::zero());
        }
    }
    let sol = solve_lp(&lp)
        .expect("oracle LP is well-formed")
        .expect_optimal("oracle LP (all-ones feasible, t >= 0)");
    Ok(sol.objective)
}

/// Which side of the game a hull query ranges over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoalitionFamily {
    Winning,
    Losing,
}

impl CoalitionFamily {
    pub fn contains(self, g: &SimpleGame, c: Coalition) -> bool {
        match self {
            CoalitionFamily::Winning => g.value(c),
            CoalitionFamily::Losing => !g.value(c),
        }
    }
}

/// Does `point` lie in the convex hull of the characteristic vectors of
/// ALL coalitions in the family (not only the minimal/maximal ones)?
pub fn brute_hull_check(
    point: &RatVector,
    family: CoalitionFamily,
    g: &SimpleGame,
) -> Result<bool, OracleError> {
    let n = g.n();
    if n > FULL_LP_CAP {
        return Err(OracleError::TooLarge {
            what: "full hull",
            n,
            cap: FULL_LP_CAP,
        });
    }
    assert_eq!(point.len(), n);
    let vertices: Vec<RatVector> = (0..(1u64 << n))
        .map(|bits| Coalition::from_bits(bits as u32))
        .filter(|c| family.contains(g, *c))
        .map(|c| c.characteristic(n))
        .collect();
    // Winning lists always contain the grand coalition; losing lists the
    // empty one, so the vertex list is never empty.
    match hull_membership(point, &vertices).expect("matching dimensions") {
        HullMembership::Inside(_) => Ok(true),
        HullMembership::Outside(_) => Ok(false),
    }
}
