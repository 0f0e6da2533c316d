//! The critical threshold value: the least achievable worst-case losing
//! weight over feasible allocations.
//!
//! `alpha = min { max_L p(L) : p(W) >= 1 for every winning W, p >= 0 }`,
//! with the max over losing coalitions. Because allocations are
//! nonnegative, the inner max is attained at an inclusion-maximal losing
//! coalition and the feasible region only needs the minimal winning rows,
//! so the LPs here carry one row per minimal winning coalition and one per
//! maximal losing coalition (or per generated cut).

use crate::game::{Coalition, SimpleGame};
use crate::rat::{rat, Rat, RatVector};
use crate::ratlp::{solve_lp, LpProblem, Rel};
use num::traits::{One, Signed, Zero};
use thiserror::Error;

/// Row cap for the fully enumerated LP; beyond this the cut-generation
/// route is the intended tool.
pub const DEFAULT_ROW_CAP: usize = 2048;

/// Exhaustive-scan bound for the separation problem; branch and bound on
/// the complementary min-weight-cover problem takes over above it.
pub const SEPARATION_SCAN_LIMIT: usize = 24;

/// Player bound for the cover-enumeration reformulation.
pub const BLOCKER_ENUM_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThresholdError {
    #[error("{what} has size {size}, exceeding the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SolveMethod {
    FullEnumeration,
    CutGeneration,
    Blocker,
}

/// The exact critical threshold value together with a witnessing
/// allocation and the losing coalition that attains it.
#[derive(Clone, Debug)]
pub struct ThresholdReport {
    pub alpha: Rat,
    pub allocation: RatVector,
    pub worst_losing: Coalition,
    pub method: SolveMethod,
    /// Number of LP solves (full/blocker) or cuts added (cut generation).
    pub iterations: usize,
}

impl ThresholdReport {
    /// Exact re-verification of every report invariant; panics on a solver
    /// defect. `alpha <= n/4` is the quarter bound, checked on every report
    /// ever constructed.
    fn validate(&self, g: &SimpleGame) {
        assert!(
            self.allocation.is_nonnegative(),
            "allocation must be nonnegative"
        );
        assert_eq!(self.allocation.len(), g.n());
        for w in g.min_winning() {
            assert!(
                self.allocation.masked_sum(w.bits()) >= Rat::one(),
                "allocation must give every winning coalition weight >= 1"
            );
        }
        assert!(!g.value(self.worst_losing), "worst coalition must be losing");
        assert_eq!(
            self.allocation.masked_sum(self.worst_losing.bits()),
            self.alpha,
            "worst losing coalition must attain alpha"
        );
        assert!(!self.alpha.is_negative(), "alpha must be nonnegative");
        let quarter = rat(g.n() as i64, 4);
        assert!(self.alpha <= quarter, "quarter bound violated");
    }
}

/// LP skeleton over variables `p_0..p_{n-1}, t`: minimize `t` subject to
/// the minimal winning rows; losing rows are appended by the callers.
fn alpha_lp_base(g: &SimpleGame) -> LpProblem {
    let n = g.n();
    let mut objective = RatVector::zeros(n + 1).into_entries();
    objective[n] = Rat::one();
    let mut lp = LpProblem::minimize(RatVector::new(objective));
    for w in g.min_winning() {
        let mut row = w.characteristic(n).into_entries();
        row.push(Rat::zero());
        lp.add_constraint(RatVector::new(row), Rel::Ge, Rat::one());
    }
    lp
}

/// Appends `p(L) - t <= 0`.
fn push_losing_row(lp: &mut LpProblem, n: usize, losing: Coalition) {
    let mut row = losing.characteristic(n).into_entries();
    row.push(-Rat::one());
    lp.add_constraint(RatVector::new(row), Rel::Le, Rat::zero());
}

fn split_solution(primal: RatVector, _n: usize) -> (RatVector, Rat) {
    let mut entries = primal.into_entries();
    let t = entries.pop().expect("threshold variable present");
    (RatVector::new(entries), t)
}

/// Exact critical threshold value via the fully enumerated LP: one row per
/// maximal losing coalition.
pub fn alpha_full(g: &SimpleGame) -> Result<ThresholdReport, ThresholdError> {
    alpha_full_with_cap(g, DEFAULT_ROW_CAP)
}

/// [`alpha_full`] with an explicit cap on the enumerated losing family.
pub fn alpha_full_with_cap(
    g: &SimpleGame,
    cap: usize,
) -> Result<ThresholdReport, ThresholdError> {
    let losing = g.maximal_losing();
    if losing.len() > cap {
        return Err(ThresholdError::TooLarge {
            what: "maximal losing family",
            size: losing.len(),
            cap,
        });
    }
    let n = g.n();
    let mut lp = alpha_lp_base(g);
    for l in &losing {
        push_losing_row(&mut lp, n, *l);
    }
    let sol = solve_lp(&lp)
        .expect("alpha LP is well-formed")
        .expect_optimal("alpha LP (feasible: the all-ones allocation; bounded: t >= 0)");
    let (allocation, alpha) = split_solution(sol.primal, n);
    let (worst_losing, worst_value) = max_weight_losing(g, &allocation);
    assert_eq!(worst_value, alpha, "separation disagrees with the LP optimum");
    let report = ThresholdReport {
        alpha,
        allocation,
        worst_losing,
        method: SolveMethod::FullEnumeration,
        iterations: 1,
    };
    report.validate(g);
    Ok(report)
}

/// Exact critical threshold value by row generation: start from the
/// winning rows plus `t >= 0`, repeatedly add the most violated losing
/// row, stop when the separation oracle finds none.
pub fn alpha_cutgen(g: &SimpleGame) -> Result<ThresholdReport, ThresholdError> {
    let n = g.n();
    let mut cuts: Vec<Coalition> = Vec::new();
    loop {
        let mut lp = alpha_lp_base(g);
        for l in &cuts {
            push_losing_row(&mut lp, n, *l);
        }
        let sol = solve_lp(&lp)
            .expect("alpha LP is well-formed")
            .expect_optimal("cut-generation LP");
        let (allocation, t) = split_solution(sol.primal, n);
        let (worst, value) = max_weight_losing(g, &allocation);
        if value <= t {
            // t is a lower bound (subset of rows), value an upper bound
            // (witnessed by the allocation), so both equal alpha here.
            assert_eq!(value, t);
            let report = ThresholdReport {
                alpha: t,
                allocation,
                worst_losing: worst,
                method: SolveMethod::CutGeneration,
                iterations: cuts.len(),
            };
            report.validate(g);
            return Ok(report);
        }
        let cut = extend_to_maximal_losing(g, worst);
        debug_assert!(
            !cuts.contains(&cut),
            "violated cut already present: separation is broken"
        );
        cuts.push(cut);
    }
}

/// Grows a losing coalition to an inclusion-maximal one, adding players in
/// ascending order. Nonnegative weights make the grown coalition attain at
/// least the original weight, so cuts stay most-violated.
pub(crate) fn extend_to_maximal_losing(g: &SimpleGame, mut c: Coalition) -> Coalition {
    debug_assert!(!g.value(c));
    for i in 0..g.n() {
        if !c.contains_player0(i) && !g.value(c.with_player0(i)) {
            c = c.with_player0(i);
        }
    }
    c
}

/// The critical threshold value through the cover reformulation:
/// `min_p max over 0/1 points q of Q(W) of <p, 1 - q>`, with the 0/1
/// points of `Q(W)` enumerated directly as covers.
pub fn alpha_via_blocker(g: &SimpleGame) -> Result<Rat, ThresholdError> {
    Ok(alpha_blocker_report(g)?.alpha)
}

/// Full report for the cover reformulation (used by the CLI).
pub fn alpha_blocker_report(g: &SimpleGame) -> Result<ThresholdReport, ThresholdError> {
    let n = g.n();
    if n > BLOCKER_ENUM_LIMIT {
        return Err(ThresholdError::TooLarge {
            what: "cover enumeration",
            size: n,
            cap: BLOCKER_ENUM_LIMIT,
        });
    }
    // Enumerate covers; keep those minimal under single-element removal
    // (rows of non-minimal covers are dominated: dropping an element of a
    // cover only raises <p, 1 - chi(C)>, p >= 0).
    let mut lp = alpha_lp_base(g);
    let limit = 1u64 << n;
    let ones = RatVector::ones(n);
    for bits in 1..limit {
        let c = Coalition::from_bits(bits as u32);
        if !g.is_cover(c) {
            continue;
        }
        if c.iter_players0().any(|i| g.is_cover(c.without_player0(i))) {
            continue;
        }
        let mut row = ones.sub(&c.characteristic(n)).into_entries();
        row.push(-Rat::one());
        lp.add_constraint(RatVector::new(row), Rel::Le, Rat::zero());
    }
    let sol = solve_lp(&lp)
        .expect("cover LP is well-formed")
        .expect_optimal("cover reformulation LP");
    let (allocation, alpha) = split_solution(sol.primal, n);
    let (worst_losing, worst_value) = max_weight_losing(g, &allocation);
    assert_eq!(worst_value, alpha, "cover rows disagree with separation");
    let report = ThresholdReport {
        alpha,
        allocation,
        worst_losing,
        method: SolveMethod::Blocker,
        iterations: 1,
    };
    report.validate(g);
    Ok(report)
}

/// The separation oracle: a losing coalition of maximum weight under `p`,
/// together with that weight. Ties resolve to the numerically smallest
/// bitmask. Equals `p(N)` minus the minimum cover weight.
pub fn max_weight_losing(g: &SimpleGame, p: &RatVector) -> (Coalition, Rat) {
    debug_assert!(p.is_nonnegative(), "allocations are nonnegative");
    debug_assert_eq!(p.len(), g.n());
    if g.n() <= SEPARATION_SCAN_LIMIT {
        max_weight_losing_scan(g, p)
    } else {
        max_weight_losing_branch_bound(g, p)
    }
}

pub(crate) fn max_weight_losing_scan(g: &SimpleGame, p: &RatVector) -> (Coalition, Rat) {
    let limit = 1u64 << g.n();
    let mut best_mask = 0u32;
    let mut best = Rat::zero(); // the empty coalition is always losing
    for bits in 1..limit {
        let c = Coalition::from_bits(bits as u32);
        if g.value(c) {
            continue;
        }
        let v = p.masked_sum(c.bits());
        if v > best {
            best = v;
            best_mask = c.bits();
        }
    }
    (Coalition::from_bits(best_mask), best)
}

/// Depth-first branch and bound over losing coalitions. Decides players
/// from the highest bit down, exclusion first, so the first optimal leaf in
/// search order is the numerically smallest maximizer.
pub(crate) fn max_weight_losing_branch_bound(
    g: &SimpleGame,
    p: &RatVector,
) -> (Coalition, Rat) {
    let n = g.n();
    // prefix_pos[k] = sum of positive weights among players 0..k-1
    let mut prefix_pos = vec![Rat::zero(); n + 1];
    for i in 0..n {
        prefix_pos[i + 1] = if p[i].is_positive() {
            &prefix_pos[i] + &p[i]
        } else {
            prefix_pos[i].clone()
        };
    }

    fn best_value(
        g: &SimpleGame,
        p: &RatVector,
        prefix_pos: &[Rat],
        k: usize,
        mask: Coalition,
        weight: &Rat,
        best: &mut Rat,
    ) {
        if g.value(mask) {
            return;
        }
        if k == 0 {
            if weight > best {
                *best = weight.clone();
            }
            return;
        }
        if weight + &prefix_pos[k] <= *best {
            return;
        }
        let i = k - 1;
        best_value(g, p, prefix_pos, i, mask, weight, best);
        let w_in = weight + &p[i];
        best_value(g, p, prefix_pos, i, mask.with_player0(i), &w_in, best);
    }

    fn first_attaining(
        g: &SimpleGame,
        p: &RatVector,
        prefix_pos: &[Rat],
        k: usize,
        mask: Coalition,
        weight: &Rat,
        target: &Rat,
    ) -> Option<Coalition> {
        if g.value(mask) {
            return None;
        }
        if k == 0 {
            return if weight == target { Some(mask) } else { None };
        }
        if weight + &prefix_pos[k] < *target {
            return None;
        }
        let i = k - 1;
        if let Some(found) = first_attaining(g, p, prefix_pos, i, mask, weight, target) {
            return Some(found);
        }
        let w_in = weight + &p[i];
        first_attaining(g, p, prefix_pos, i, mask.with_player0(i), &w_in, target)
    }

    let mut best = Rat::zero();
    best_value(g, p, &prefix_pos, n, Coalition::EMPTY, &Rat::zero(), &mut best);
    let coalition = first_attaining(
        g,
        p,
        &prefix_pos,
        n,
        Coalition::EMPTY,
        &Rat::zero(),
        &best,
    )
    .expect("the maximum is attained by some losing coalition");
    (coalition, best)
}

/// Weightedness test: the game is a weighted voting game iff its critical
/// threshold value is below 1. When it is, returns a strictly separating
/// weight vector scaled so the smallest winning weight equals the quota 1.
///
/// Uses the cut-generation route, which computes the same exact value as
/// full enumeration without the losing-family row cap.
pub fn is_weighted(g: &SimpleGame) -> Result<(bool, Option<RatVector>), ThresholdError> {
    let report = alpha_cutgen(g)?;
    if report.alpha >= Rat::one() {
        return Ok((false, None));
    }
    let min_winning_weight = g
        .min_winning()
        .iter()
        .map(|w| report.allocation.masked_sum(w.bits()))
        .min()
        .expect("winning family is nonempty");
    debug_assert!(min_winning_weight >= Rat::one());
    let scaled = report
        .allocation
        .scale(&(Rat::one() / &min_winning_weight));
    Ok((true, Some(scaled)))
}
