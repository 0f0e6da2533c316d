//! Exact rational linear programming with primal, dual, and infeasibility
//! certificates.
//!
//! [`solve_lp`] is the one certified kernel: a dense two-phase simplex whose
//! answers are re-verified against the input before being returned. Convex
//! hull membership reduces to an LP feasibility problem in the combination
//! weights; the separating hyperplane of a negative answer is read off the
//! Farkas certificate.

mod linalg;
mod simplex;

pub use linalg::{independent_rows, solve_unique};

use crate::rat::{Rat, RatVector};
use num::traits::{One, Signed, Zero};
use simplex::{solve_kernel, KernelLp, KernelOutcome, KernelRel};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rel {
    Ge,
    Le,
    Eq,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("malformed problem: {0}")]
    Malformed(String),
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Linear program over variables `x_0..x_{n-1}`.
///
/// Default variable bounds are `0 <= x_j` with no upper bound; lower bounds
/// may be shifted, removed (free variable), and upper bounds added.
#[derive(Clone, Debug)]
pub struct LpProblem {
    sense: Sense,
    objective: RatVector,
    constraints: Vec<(RatVector, Rel, Rat)>,
    lower: Vec<Option<Rat>>,
    upper: Vec<Option<Rat>>,
}

impl LpProblem {
    pub fn new(sense: Sense, objective: RatVector) -> Self {
        let n = objective.len();
        LpProblem {
            sense,
            objective,
            constraints: Vec::new(),
            lower: vec![Some(Rat::zero()); n],
            upper: vec![None; n],
        }
    }

    pub fn minimize(objective: RatVector) -> Self {
        LpProblem::new(Sense::Minimize, objective)
    }

    pub fn maximize(objective: RatVector) -> Self {
        LpProblem::new(Sense::Maximize, objective)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn objective(&self) -> &RatVector {
        &self.objective
    }

    pub fn constraints(&self) -> &[(RatVector, Rel, Rat)] {
        &self.constraints
    }

    pub fn add_constraint(&mut self, coeffs: RatVector, rel: Rel, rhs: Rat) {
        self.constraints.push((coeffs, rel, rhs));
    }

    pub fn set_lower(&mut self, var: usize, bound: Option<Rat>) {
        self.lower[var] = bound;
    }

    pub fn set_upper(&mut self, var: usize, bound: Option<Rat>) {
        self.upper[var] = bound;
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if n == 0 {
            return Err(LpError::Malformed("no variables".into()));
        }
        for (coeffs, _, _) in &self.constraints {
            if coeffs.len() != n {
                return Err(LpError::Malformed(format!(
                    "constraint row has length {}, expected {}",
                    coeffs.len(),
                    n
                )));
            }
        }
        Ok(())
    }
}

/// Optimal solution with its dual certificate.
///
/// Duals follow the minimization convention: `>= 0` on `Ge` rows, `<= 0` on
/// `Le` rows, free on `Eq` rows, with signs flipped for maximization
/// problems. `dual . rhs = objective` and complementary slackness hold
/// exactly whenever no variable carries an upper bound.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub primal: RatVector,
    pub dual: Vec<Rat>,
    pub objective: Rat,
}

/// Certificate of infeasibility: row multipliers with the dual sign pattern
/// whose combination bounds the system away from feasibility.
#[derive(Clone, Debug)]
pub struct FarkasCertificate {
    pub row_multipliers: Vec<Rat>,
    /// Multipliers on internally generated upper-bound rows, `(var, y)`.
    pub bound_multipliers: Vec<(usize, Rat)>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible(FarkasCertificate),
    Unbounded,
}

impl LpOutcome {
    pub fn expect_optimal(self, what: &str) -> LpSolution {
        match self {
            LpOutcome::Optimal(s) => s,
            other => panic!(
                "{what}: expected an optimal solution, got {}",
                match other {
                    LpOutcome::Infeasible(_) => "infeasible",
                    LpOutcome::Unbounded => "unbounded",
                    LpOutcome::Optimal(_) => unreachable!(),
                }
            ),
        }
    }
}

/// Solves the LP exactly. Termination is guaranteed by the anti-cycling
/// pivot rule; every answer carries an exact certificate.
pub fn solve_lp(lp: &LpProblem) -> Result<LpOutcome, LpError> {
    lp.validate()?;
    let n = lp.num_vars();
    let m = lp.constraints.len();

    // Map each variable onto kernel columns (all kernel variables are >= 0):
    // shifted column for a finite lower bound, a split pair for a free
    // variable. Upper bounds become extra `<=` rows after the user rows.
    enum VarMap {
        Shifted { col: usize, offset: Rat },
        Split { pos: usize, neg: usize },
    }
    let mut var_map = Vec::with_capacity(n);
    let mut ncols = 0usize;
    for j in 0..n {
        match &lp.lower[j] {
            Some(l) => {
                var_map.push(VarMap::Shifted {
                    col: ncols,
                    offset: l.clone(),
                });
                ncols += 1;
            }
            None => {
                var_map.push(VarMap::Split {
                    pos: ncols,
                    neg: ncols + 1,
                });
                ncols += 2;
            }
        }
    }

    let sign = match lp.sense {
        Sense::Minimize => Rat::one(),
        Sense::Maximize => -Rat::one(),
    };
    let mut objective = vec![Rat::zero(); ncols];
    for (j, mapping) in var_map.iter().enumerate() {
        let c = &sign * &lp.objective[j];
        match mapping {
            VarMap::Shifted { col, .. } => objective[*col] = c,
            VarMap::Split { pos, neg } => {
                objective[*pos] = c.clone();
                objective[*neg] = -c;
            }
        }
    }

    let kernel_row = |coeffs: &RatVector, rhs: &Rat| -> (Vec<Rat>, Rat) {
        let mut row = vec![Rat::zero(); ncols];
        let mut adjusted = rhs.clone();
        for j in 0..n {
            let a = &coeffs[j];
            if a.is_zero() {
                continue;
            }
            match &var_map[j] {
                VarMap::Shifted { col, offset } => {
                    row[*col] = a.clone();
                    if !offset.is_zero() {
                        adjusted -= a * offset;
                    }
                }
                VarMap::Split { pos, neg } => {
                    row[*pos] = a.clone();
                    row[*neg] = -a.clone();
                }
            }
        }
        (row, adjusted)
    };

    let mut rows = Vec::with_capacity(m);
    for (coeffs, rel, rhs) in &lp.constraints {
        let (row, adjusted) = kernel_row(coeffs, rhs);
        let krel = match rel {
            Rel::Ge => KernelRel::Ge,
            Rel::Le => KernelRel::Le,
            Rel::Eq => KernelRel::Eq,
        };
        rows.push((row, krel, adjusted));
    }
    let mut bound_rows = Vec::new();
    for j in 0..n {
        if let Some(u) = &lp.upper[j] {
            let mut unit = RatVector::zeros(n).into_entries();
            unit[j] = Rat::one();
            let (row, adjusted) = kernel_row(&RatVector::new(unit), u);
            rows.push((row, KernelRel::Le, adjusted));
            bound_rows.push(j);
        }
    }

    let kernel = KernelLp {
        ncols,
        objective,
        rows,
    };
    match solve_kernel(&kernel) {
        KernelOutcome::Optimal { x, y } => {
            let primal: RatVector = var_map
                .iter()
                .map(|mapping| match mapping {
                    VarMap::Shifted { col, offset } => &x[*col] + offset,
                    VarMap::Split { pos, neg } => &x[*pos] - &x[*neg],
                })
                .collect();
            let objective = lp.objective.dot(&primal);
            let dual: Vec<Rat> = y[..m].iter().map(|yi| &sign * yi).collect();
            Ok(LpOutcome::Optimal(LpSolution {
                primal,
                dual,
                objective,
            }))
        }
        KernelOutcome::Infeasible { farkas } => {
            let row_multipliers = farkas[..m].to_vec();
            let bound_multipliers = bound_rows
                .into_iter()
                .zip(farkas[m..].iter().cloned())
                .collect();
            Ok(LpOutcome::Infeasible(FarkasCertificate {
                row_multipliers,
                bound_multipliers,
            }))
        }
        KernelOutcome::Unbounded => Ok(LpOutcome::Unbounded),
    }
}

/// Result of a convex hull membership query.
#[derive(Clone, Debug)]
pub enum HullMembership {
    /// Convex weights `(vertex index, weight)` reconstructing the point
    /// exactly; weights are positive and sum to 1.
    Inside(Vec<(usize, Rat)>),
    /// A hyperplane normal `h` with `<h, point> > max_v <h, v>` exactly.
    Outside(RatVector),
}

/// Decides whether `point` lies in the convex hull of `vertices`, producing
/// exact convex weights or an exact separating hyperplane.
pub fn hull_membership(
    point: &RatVector,
    vertices: &[RatVector],
) -> Result<HullMembership, LpError> {
    if vertices.is_empty() {
        return Err(LpError::Malformed("empty vertex list".into()));
    }
    let d = point.len();
    for v in vertices {
        if v.len() != d {
            return Err(LpError::DimensionMismatch {
                expected: d,
                got: v.len(),
            });
        }
    }
    let nv = vertices.len();
    // Feasibility LP in the weights: sum_v lambda_v * v = point, sum = 1.
    let mut lp = LpProblem::minimize(RatVector::zeros(nv));
    for coord in 0..d {
        let row: RatVector = vertices.iter().map(|v| v[coord].clone()).collect();
        lp.add_constraint(row, Rel::Eq, point[coord].clone());
    }
    lp.add_constraint(RatVector::ones(nv), Rel::Eq, Rat::one());

    match solve_lp(&lp)? {
        LpOutcome::Optimal(sol) => {
            let weights: Vec<(usize, Rat)> = sol
                .primal
                .iter()
                .cloned()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .collect();
            // Exact reconstruction check.
            let mut total = Rat::zero();
            let mut combo = RatVector::zeros(d);
            for (v, w) in &weights {
                assert!(w.is_positive(), "hull weights must be positive");
                combo = combo.add(&vertices[*v].scale(w));
                total += w;
            }
            assert!(total.is_one(), "hull weights must sum to 1");
            assert_eq!(&combo, point, "hull combination must reconstruct the point");
            Ok(HullMembership::Inside(weights))
        }
        LpOutcome::Infeasible(cert) => {
            // The Farkas vector gives <h, v> + offset <= 0 for every vertex
            // and <h, point> + offset > 0, so h separates strictly;
            // re-check the separation exactly before returning it.
            let normal: RatVector = cert.row_multipliers[..d].iter().cloned().collect();
            let at_point = normal.dot(point);
            let max_at_vertex = vertices
                .iter()
                .map(|v| normal.dot(v))
                .max()
                .expect("nonempty vertex list");
            assert!(
                at_point > max_at_vertex,
                "separating hyperplane failed exact verification"
            );
            Ok(HullMembership::Outside(normal))
        }
        LpOutcome::Unbounded => unreachable!("feasibility problem with zero objective"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn vecr(vals: &[(i64, i64)]) -> RatVector {
        vals.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    #[test]
    fn single_constraint_minimum() {
        // min x1 s.t. x1 >= 1  ->  value 1, dual (1)
        let mut lp = LpProblem::minimize(RatVector::ones(1));
        lp.add_constraint(RatVector::ones(1), Rel::Ge, rat_int(1));
        let sol = solve_lp(&lp).unwrap().expect_optimal("single constraint");
        assert_eq!(sol.objective, rat_int(1));
        assert_eq!(sol.primal.entries(), &[rat_int(1)]);
        assert_eq!(sol.dual, vec![rat_int(1)]);
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        // min 0 s.t. x1 >= 1, x1 <= 0
        let mut lp = LpProblem::minimize(RatVector::zeros(1));
        lp.add_constraint(RatVector::ones(1), Rel::Ge, rat_int(1));
        lp.add_constraint(RatVector::ones(1), Rel::Le, rat_int(0));
        match solve_lp(&lp).unwrap() {
            LpOutcome::Infeasible(cert) => {
                // y1 >= 0, y2 <= 0, y1*1 + y2*1 <= 0, y1*1 + y2*0 > 0
                let y = &cert.row_multipliers;
                assert!(y[0].is_positive());
                assert!((&y[0] + &y[1]) <= rat_int(0));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn two_variable_covering_lp() {
        // min x1 + x2 s.t. x1 + x2 >= 1, x >= 0  ->  value 1
        // (vertex enumeration: feasible vertices (1,0) and (0,1), both with
        // objective 1, so the frozen optimum is 1)
        let mut lp = LpProblem::minimize(RatVector::ones(2));
        lp.add_constraint(RatVector::ones(2), Rel::Ge, rat_int(1));
        let sol = solve_lp(&lp).unwrap().expect_optimal("covering");
        assert_eq!(sol.objective, rat_int(1));
    }

    #[test]
    fn maximization_and_le_rows() {
        // max 3x + 2y s.t. x + y <= 4, x <= 2  ->  x=2, y=2, value 10
        let mut lp = LpProblem::maximize(vecr(&[(3, 1), (2, 1)]));
        lp.add_constraint(RatVector::ones(2), Rel::Le, rat_int(4));
        lp.add_constraint(vecr(&[(1, 1), (0, 1)]), Rel::Le, rat_int(2));
        let sol = solve_lp(&lp).unwrap().expect_optimal("max");
        assert_eq!(sol.objective, rat_int(10));
        assert_eq!(sol.primal.entries(), &[rat_int(2), rat_int(2)]);
        // strong duality in the original sense
        let dual_value = &sol.dual[0] * &rat_int(4) + &sol.dual[1] * &rat_int(2);
        assert_eq!(dual_value, rat_int(10));
    }

    #[test]
    fn unbounded_detected() {
        let lp_obj = vecr(&[(-1, 1)]);
        let lp = LpProblem::minimize(lp_obj);
        match solve_lp(&lp).unwrap() {
            LpOutcome::Unbounded => {}
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn free_variables_and_equality_rows() {
        // min t s.t. t = x - 3, x <= 5, t free  ->  t unconstrained below? no:
        // x >= 0, so t = x - 3 >= -3; min t = -3 at x = 0.
        let mut lp = LpProblem::minimize(vecr(&[(0, 1), (1, 1)]));
        lp.set_lower(1, None);
        lp.add_constraint(vecr(&[(-1, 1), (1, 1)]), Rel::Eq, rat_int(-3));
        lp.add_constraint(vecr(&[(1, 1), (0, 1)]), Rel::Le, rat_int(5));
        let sol = solve_lp(&lp).unwrap().expect_optimal("free var");
        assert_eq!(sol.objective, rat_int(-3));
    }

    #[test]
    fn shifted_lower_and_upper_bounds() {
        // min x s.t. 2 <= x <= 7  ->  2 ; max x -> 7
        let mut lp = LpProblem::minimize(RatVector::ones(1));
        lp.set_lower(0, Some(rat_int(2)));
        lp.set_upper(0, Some(rat_int(7)));
        let sol = solve_lp(&lp).unwrap().expect_optimal("bounds");
        assert_eq!(sol.objective, rat_int(2));

        let mut lp = LpProblem::maximize(RatVector::ones(1));
        lp.set_lower(0, Some(rat_int(2)));
        lp.set_upper(0, Some(rat_int(7)));
        let sol = solve_lp(&lp).unwrap().expect_optimal("bounds");
        assert_eq!(sol.objective, rat_int(7));
    }

    #[test]
    fn malformed_rows_rejected() {
        let mut lp = LpProblem::minimize(RatVector::ones(2));
        lp.add_constraint(RatVector::ones(3), Rel::Ge, rat_int(1));
        assert!(matches!(solve_lp(&lp), Err(LpError::Malformed(_))));
    }

    #[test]
    fn beale_cycling_instance_terminates_at_the_optimum() {
        // The classic instance on which naive most-negative pricing can
        // cycle forever; the anti-cycling rule must finish at -1/20.
        let mut lp = LpProblem::minimize(vecr(&[(-3, 4), (150, 1), (-1, 50), (6, 1)]));
        lp.add_constraint(
            vecr(&[(1, 4), (-60, 1), (-1, 25), (9, 1)]),
            Rel::Le,
            rat_int(0),
        );
        lp.add_constraint(
            vecr(&[(1, 2), (-90, 1), (-1, 50), (3, 1)]),
            Rel::Le,
            rat_int(0),
        );
        lp.add_constraint(vecr(&[(0, 1), (0, 1), (1, 1), (0, 1)]), Rel::Le, rat_int(1));
        let sol = solve_lp(&lp).unwrap().expect_optimal("beale");
        assert_eq!(sol.objective, rat(-1, 20));
    }

    #[test]
    fn fractional_arithmetic_stays_exact() {
        // min (1/3)x + (1/7)y s.t. x + y >= 1  ->  pick y: 1/7
        let mut lp = LpProblem::minimize(vecr(&[(1, 3), (1, 7)]));
        lp.add_constraint(RatVector::ones(2), Rel::Ge, rat_int(1));
        let sol = solve_lp(&lp).unwrap().expect_optimal("fractions");
        assert_eq!(sol.objective, rat(1, 7));
    }

    #[test]
    fn hull_membership_square_center() {
        // (1/2, 1/2) in hull of (1,0) and (0,1) -> weights (1/2, 1/2)
        let point = vecr(&[(1, 2), (1, 2)]);
        let verts = vec![vecr(&[(1, 1), (0, 1)]), vecr(&[(0, 1), (1, 1)])];
        match hull_membership(&point, &verts).unwrap() {
            HullMembership::Inside(w) => {
                assert_eq!(w, vec![(0, rat(1, 2)), (1, rat(1, 2))]);
            }
            other => panic!("expected inside, got {other:?}"),
        }
    }

    #[test]
    fn hull_membership_pair_vertices_reach_uniform_points() {
        // (1/2)·1 over the winning pair vectors {1,2}, {3,4} on 4 players
        let point = RatVector::constant(4, &rat(1, 2));
        let winning = vec![
            RatVector::characteristic(0b0011, 4),
            RatVector::characteristic(0b1100, 4),
        ];
        match hull_membership(&point, &winning).unwrap() {
            HullMembership::Inside(w) => {
                assert_eq!(w, vec![(0, rat(1, 2)), (1, rat(1, 2))]);
            }
            other => panic!("expected inside, got {other:?}"),
        }

        // the same point over the losing vectors {1,3}, {2,4}
        let losing = vec![
            RatVector::characteristic(0b0101, 4),
            RatVector::characteristic(0b1010, 4),
        ];
        match hull_membership(&point, &losing).unwrap() {
            HullMembership::Inside(w) => {
                assert_eq!(w, vec![(0, rat(1, 2)), (1, rat(1, 2))]);
            }
            other => panic!("expected inside, got {other:?}"),
        }
    }

    #[test]
    fn hull_membership_vertex_identity() {
        let point = vecr(&[(1, 1), (0, 1)]);
        let verts = vec![vecr(&[(1, 1), (0, 1)]), vecr(&[(0, 1), (1, 1)])];
        match hull_membership(&point, &verts).unwrap() {
            HullMembership::Inside(w) => assert_eq!(w, vec![(0, rat_int(1))]),
            other => panic!("expected inside, got {other:?}"),
        }
    }

    #[test]
    fn hull_membership_outside_gives_separator() {
        // (2, 2) outside hull of unit square corners
        let point = vecr(&[(2, 1), (2, 1)]);
        let verts = vec![
            vecr(&[(0, 1), (0, 1)]),
            vecr(&[(1, 1), (0, 1)]),
            vecr(&[(0, 1), (1, 1)]),
            vecr(&[(1, 1), (1, 1)]),
        ];
        match hull_membership(&point, &verts).unwrap() {
            HullMembership::Outside(h) => {
                let at_point = h.dot(&point);
                let max_v = verts.iter().map(|v| h.dot(v)).max().unwrap();
                assert!(at_point > max_v);
            }
            other => panic!("expected outside, got {other:?}"),
        }
    }

    #[test]
    fn hull_membership_dimension_mismatch() {
        let point = vecr(&[(1, 2)]);
        let verts = vec![vecr(&[(1, 1), (0, 1)])];
        assert_eq!(
            hull_membership(&point, &verts).unwrap_err(),
            LpError::DimensionMismatch {
                expected: 1,
                got: 2
            }
        );
    }
}
