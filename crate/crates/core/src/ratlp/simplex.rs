//! Dense two-phase primal simplex over exact rationals.
//!
//! Minimizes `c'x` subject to rows `a_i'x {<=,>=,=} b_i` and `x >= 0`.
//! Pricing is Dantzig by default and falls back to Bland's rule whenever a
//! degenerate streak appears, which keeps termination guaranteed. Every
//! optimal or infeasible answer is re-verified against the input data before
//! it is returned: primal feasibility, dual feasibility, complementary
//! slackness and strong duality for optima; the sign conditions and positive
//! combination value for Farkas certificates.

use crate::rat::Rat;
use num::traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum KernelRel {
    Le,
    Ge,
    Eq,
}

/// LP in kernel form: all variables nonnegative.
pub(crate) struct KernelLp {
    pub ncols: usize,
    /// Minimization objective, length `ncols`.
    pub objective: Vec<Rat>,
    pub rows: Vec<(Vec<Rat>, KernelRel, Rat)>,
}

pub(crate) enum KernelOutcome {
    Optimal {
        x: Vec<Rat>,
        /// One multiplier per row; `>= 0` for `Ge` rows, `<= 0` for `Le`
        /// rows, free for `Eq` rows. Satisfies `y'b = c'x` and
        /// complementary slackness exactly.
        y: Vec<Rat>,
    },
    Infeasible {
        /// Farkas multipliers over the rows: same sign conditions as duals,
        /// `sum_i y_i a_ij <= 0` for every column, `y'b > 0`.
        farkas: Vec<Rat>,
    },
    Unbounded,
}

const BLAND_AFTER_DEGENERATE: usize = 12;

struct Tableau {
    m: usize,
    ncols: usize,
    /// m rows of length ncols + 1; the last entry is the rhs.
    rows: Vec<Vec<Rat>>,
    /// Reduced costs, length ncols.
    zrow: Vec<Rat>,
    obj_val: Rat,
    basis: Vec<usize>,
    /// Columns barred from entering (artificials).
    barred: Vec<bool>,
    degenerate_streak: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.ncols]
    }

    fn choose_entering(&self) -> Option<usize> {
        let bland = self.degenerate_streak >= BLAND_AFTER_DEGENERATE;
        let mut best: Option<usize> = None;
        for j in 0..self.ncols {
            if self.barred[j] || !self.zrow[j].is_negative() {
                continue;
            }
            if bland {
                return Some(j);
            }
            match best {
                None => best = Some(j),
                Some(b) => {
                    if self.zrow[j] < self.zrow[b] {
                        best = Some(j);
                    }
                }
            }
        }
        best
    }

    fn choose_leaving(&self, entering: usize) -> Option<usize> {
        let mut best: Option<(Rat, usize, usize)> = None; // (ratio, basis col, row)
        for r in 0..self.m {
            let a = &self.rows[r][entering];
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs(r) / a;
            let key = (ratio, self.basis[r], r);
            best = match best {
                None => Some(key),
                Some(cur) => {
                    if (&key.0, key.1) < (&cur.0, cur.1) {
                        Some(key)
                    } else {
                        Some(cur)
                    }
                }
            };
        }
        best.map(|(_, _, r)| r)
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let cbar = self.zrow[j].clone();
        let p = self.rows[r][j].clone();
        debug_assert!(p.is_positive());
        if !p.is_one() {
            for k in 0..=self.ncols {
                if !self.rows[r][k].is_zero() {
                    self.rows[r][k] = &self.rows[r][k] / &p;
                }
            }
        }
        // The tableau is mostly identity slack columns, so the pivot row is
        // sparse; eliminating only over its nonzero columns is the
        // difference between O(m * ncols) and O(m * nnz) per pivot.
        let support: Vec<usize> = (0..=self.ncols)
            .filter(|&k| !self.rows[r][k].is_zero())
            .collect();
        for rr in 0..self.m {
            if rr == r || self.rows[rr][j].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut self.rows[rr][j], Rat::zero());
            for &k in &support {
                if k == j {
                    continue;
                }
                let delta = &factor * &self.rows[r][k];
                self.rows[rr][k] = &self.rows[rr][k] - &delta;
            }
        }
        let theta = self.rhs(r).clone();
        if theta.is_zero() {
            self.degenerate_streak += 1;
        } else {
            self.degenerate_streak = 0;
        }
        if !cbar.is_zero() {
            for &k in &support {
                if k == self.ncols {
                    continue;
                }
                let delta = &cbar * &self.rows[r][k];
                self.zrow[k] = &self.zrow[k] - &delta;
            }
            self.obj_val = &self.obj_val + &(&cbar * &theta);
        }
        self.basis[r] = j;
    }

    /// Runs the current phase to optimality. Returns false on unboundedness.
    fn run(&mut self) -> bool {
        self.degenerate_streak = 0;
        while let Some(j) = self.choose_entering() {
            match self.choose_leaving(j) {
                Some(r) => self.pivot(r, j),
                None => return false,
            }
        }
        true
    }

    /// Rebuilds the reduced-cost row and objective value for the given costs.
    fn load_costs(&mut self, costs: &[Rat]) {
        self.zrow = costs.to_vec();
        self.obj_val = Rat::zero();
        for r in 0..self.m {
            let cb = &costs[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for k in 0..self.ncols {
                let delta = cb * &self.rows[r][k];
                self.zrow[k] = &self.zrow[k] - &delta;
            }
            self.obj_val = &self.obj_val + &(cb * self.rhs(r));
        }
    }
}

pub(crate) fn solve_kernel(lp: &KernelLp) -> KernelOutcome {
    let m = lp.rows.len();
    let ns = lp.ncols;

    // Orient rows so every rhs is nonnegative, insert slack columns, and an
    // artificial column wherever the slack cannot serve as the initial basis.
    let mut sigma = vec![Rat::one(); m];
    let n_slacks = lp.rows.iter().filter(|(_, rel, _)| *rel != KernelRel::Eq).count();
    let mut ncols = ns + n_slacks;
    let mut slack_of_row: Vec<Option<(usize, Rat)>> = vec![None; m]; // (col, coeff)
    let mut art_of_row: Vec<Option<usize>> = vec![None; m];
    let mut unit_col = vec![0usize; m];

    let mut next_slack = ns;
    for (i, (_, rel, b)) in lp.rows.iter().enumerate() {
        if b.is_negative() {
            sigma[i] = -Rat::one();
        }
        if *rel != KernelRel::Eq {
            let raw = match rel {
                KernelRel::Le => Rat::one(),
                KernelRel::Ge => -Rat::one(),
                KernelRel::Eq => unreachable!(),
            };
            slack_of_row[i] = Some((next_slack, &sigma[i] * &raw));
            next_slack += 1;
        }
    }
    for i in 0..m {
        let has_unit_slack = matches!(&slack_of_row[i], Some((_, c)) if c.is_one());
        if has_unit_slack {
            unit_col[i] = slack_of_row[i].as_ref().unwrap().0;
        } else {
            art_of_row[i] = Some(ncols);
            unit_col[i] = ncols;
            ncols += 1;
        }
    }

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, (coeffs, _, b)) in lp.rows.iter().enumerate() {
        let mut row = vec![Rat::zero(); ncols + 1];
        for (j, a) in coeffs.iter().enumerate() {
            if !a.is_zero() {
                row[j] = &sigma[i] * a;
            }
        }
        if let Some((col, coeff)) = &slack_of_row[i] {
            row[*col] = coeff.clone();
        }
        if let Some(col) = art_of_row[i] {
            row[col] = Rat::one();
        }
        row[ncols] = &sigma[i] * b;
        rows.push(row);
    }

    let mut is_artificial = vec![false; ncols];
    for a in art_of_row.iter().flatten() {
        is_artificial[*a] = true;
    }
    let basis = unit_col.clone();
    let mut t = Tableau {
        m,
        ncols,
        rows,
        zrow: vec![Rat::zero(); ncols],
        obj_val: Rat::zero(),
        basis,
        barred: vec![false; ncols],
        degenerate_streak: 0,
    };

    let any_artificial = art_of_row.iter().any(|a| a.is_some());
    if any_artificial {
        // Phase 1: minimize the sum of artificials.
        let mut phase1_costs = vec![Rat::zero(); ncols];
        for a in art_of_row.iter().flatten() {
            phase1_costs[*a] = Rat::one();
        }
        t.load_costs(&phase1_costs);
        let bounded = t.run();
        assert!(bounded, "phase 1 is bounded below by zero");

        if t.obj_val.is_positive() {
            // Infeasible; read the Farkas multipliers off the unit columns.
            let farkas: Vec<Rat> = (0..m)
                .map(|i| {
                    let j = unit_col[i];
                    let c1 = &phase1_costs[j];
                    &sigma[i] * &(c1 - &t.zrow[j])
                })
                .collect();
            verify_farkas(lp, &farkas);
            return KernelOutcome::Infeasible { farkas };
        }

        // Drive basic artificials out of the basis (they all sit at zero).
        for a in art_of_row.iter().flatten() {
            t.barred[*a] = true;
        }
        for r in 0..m {
            if is_artificial[t.basis[r]] {
                debug_assert!(t.rhs(r).is_zero());
                let replacement = (0..ns + n_slacks).find(|&j| !t.rows[r][j].is_zero());
                if let Some(j) = replacement {
                    // Zero-level pivot: feasibility is unaffected.
                    pivot_at_any_sign(&mut t, r, j);
                }
                // Otherwise the row is redundant; its artificial stays basic
                // at zero and every enterable entry in the row is zero, so it
                // can never change value.
            }
        }
    }

    // Phase 2.
    let mut phase2_costs = vec![Rat::zero(); ncols];
    phase2_costs[..ns].clone_from_slice(&lp.objective);
    t.load_costs(&phase2_costs);
    if !t.run() {
        return KernelOutcome::Unbounded;
    }

    let mut x = vec![Rat::zero(); ns];
    for r in 0..t.m {
        let j = t.basis[r];
        if j < ns {
            x[j] = t.rhs(r).clone();
        }
        if is_artificial[j] {
            assert!(t.rhs(r).is_zero(), "artificial must be zero at optimum");
        }
    }
    let y: Vec<Rat> = (0..m)
        .map(|i| {
            let j = unit_col[i];
            &sigma[i] * &(&phase2_costs[j] - &t.zrow[j])
        })
        .collect();
    verify_optimal(lp, &x, &y, &t.obj_val);
    KernelOutcome::Optimal { x, y }
}

/// Pivot that tolerates a negative pivot element; only sound on zero-rhs
/// rows, where it cannot break feasibility.
fn pivot_at_any_sign(t: &mut Tableau, r: usize, j: usize) {
    debug_assert!(t.rhs(r).is_zero());
    let cbar = t.zrow[j].clone();
    let p = t.rows[r][j].clone();
    for k in 0..=t.ncols {
        t.rows[r][k] = &t.rows[r][k] / &p;
    }
    for rr in 0..t.m {
        if rr == r || t.rows[rr][j].is_zero() {
            continue;
        }
        let factor = t.rows[rr][j].clone();
        for k in 0..=t.ncols {
            let delta = &factor * &t.rows[r][k];
            t.rows[rr][k] = &t.rows[rr][k] - &delta;
        }
    }
    if !cbar.is_zero() {
        for k in 0..t.ncols {
            let delta = &cbar * &t.rows[r][k];
            t.zrow[k] = &t.zrow[k] - &delta;
        }
    }
    t.basis[r] = j;
}

/// Exact re-verification of an optimal primal/dual pair straight against the
/// kernel input: feasibility, sign conditions, complementary slackness on
/// both sides, and strong duality.
fn verify_optimal(lp: &KernelLp, x: &[Rat], y: &[Rat], objective: &Rat) {
    for v in x {
        assert!(!v.is_negative(), "primal nonnegativity violated");
    }
    let mut dual_obj = Rat::zero();
    for ((coeffs, rel, b), yi) in lp.rows.iter().zip(y.iter()) {
        let lhs: Rat = coeffs
            .iter()
            .zip(x.iter())
            .fold(Rat::zero(), |acc, (a, v)| acc + a * v);
        let slack = &lhs - b;
        match rel {
            KernelRel::Le => {
                assert!(!slack.is_positive(), "primal row violated (<=)");
                assert!(!yi.is_positive(), "dual sign violated (<= row)");
            }
            KernelRel::Ge => {
                assert!(!slack.is_negative(), "primal row violated (>=)");
                assert!(!yi.is_negative(), "dual sign violated (>= row)");
            }
            KernelRel::Eq => {
                assert!(slack.is_zero(), "primal row violated (=)");
            }
        }
        assert!((yi * &slack).is_zero(), "complementary slackness violated");
        dual_obj += yi * b;
    }
    let primal_obj: Rat = lp
        .objective
        .iter()
        .zip(x.iter())
        .fold(Rat::zero(), |acc, (c, v)| acc + c * v);
    assert_eq!(&primal_obj, objective, "objective bookkeeping drifted");
    assert_eq!(primal_obj, dual_obj, "strong duality violated");
    for j in 0..lp.ncols {
        let mut reduced = lp.objective[j].clone();
        for ((coeffs, _, _), yi) in lp.rows.iter().zip(y.iter()) {
            reduced -= yi * &coeffs[j];
        }
        assert!(!reduced.is_negative(), "dual feasibility violated");
        assert!(
            (&reduced * &x[j]).is_zero(),
            "variable complementary slackness violated"
        );
    }
}

/// Exact verification of a Farkas certificate against the kernel input.
fn verify_farkas(lp: &KernelLp, y: &[Rat]) {
    for ((_, rel, _), yi) in lp.rows.iter().zip(y.iter()) {
        match rel {
            KernelRel::Le => assert!(!yi.is_positive(), "Farkas sign violated (<= row)"),
            KernelRel::Ge => assert!(!yi.is_negative(), "Farkas sign violated (>= row)"),
            KernelRel::Eq => {}
        }
    }
    for j in 0..lp.ncols {
        let combo: Rat = lp
            .rows
            .iter()
            .zip(y.iter())
            .fold(Rat::zero(), |acc, ((coeffs, _, _), yi)| {
                acc + yi * &coeffs[j]
            });
        assert!(!combo.is_positive(), "Farkas column condition violated");
    }
    let value: Rat = lp
        .rows
        .iter()
        .zip(y.iter())
        .fold(Rat::zero(), |acc, ((_, _, b), yi)| acc + yi * b);
    assert!(value.is_positive(), "Farkas certificate proves nothing");
}
