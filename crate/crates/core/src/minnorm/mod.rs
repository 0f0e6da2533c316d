//! Exact minimum-2-norm points: of the feasible allocation region, and of
//! the convex hull of cover vertices.
//!
//! The region `Q(W) = { p >= 0 : p(W) >= 1 for minimal winning W }` is an
//! H-polyhedron, handled by a primal active-set method: a floating-point
//! warm start guesses the active constraints, an exact KKT solve plus exact
//! verification either confirms the guess or falls back to the fully exact
//! active-set loop started at the always-feasible all-ones point. The cover
//! hull is a V-polytope, handled by Wolfe's minimum-norm-point algorithm.
//! Floats only ever guide; every returned point carries an exactly verified
//! certificate.

mod wolfe;

use crate::game::{Coalition, SimpleGame};
use crate::rat::{rat, rat_to_f64_lossy, Rat, RatVector};
use crate::ratlp::{independent_rows, solve_lp, solve_unique, LpProblem, Rel};
use num::traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Player bound for the cover-hull computation (its oracle scans `2^n`).
pub const COVER_HULL_LIMIT: usize = 20;

const ACTIVE_SET_ITERATION_CAP: usize = 20_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinNormError {
    #[error("cover hull needs n <= {cap}, got {n}")]
    TooLarge { n: usize, cap: usize },
}

/// Identifier of one inequality describing the feasible region.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConstraintId {
    /// `p(W) >= 1` for a minimal winning coalition.
    Winning(Coalition),
    /// `p_i >= 0`, 0-based player index.
    NonNegative(usize),
}

impl fmt::Display for ConstraintId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintId::Winning(c) => write!(f, "p{c} >= 1"),
            ConstraintId::NonNegative(i) => write!(f, "p_{} >= 0", i + 1),
        }
    }
}

/// Optimality evidence attached to a minimum-norm point.
#[derive(Clone, Debug)]
pub enum NormCertificate {
    /// Stationarity multipliers: `2 p = sum lambda_k a_k`, `lambda >= 0`,
    /// supported on active constraints.
    Kkt { multipliers: Vec<(ConstraintId, Rat)> },
    /// Convex support on cover vertices reconstructing the point.
    ConvexSupport { weights: Vec<(Coalition, Rat)> },
}

#[derive(Clone, Debug)]
pub struct MinNormResult {
    pub point: RatVector,
    pub norm_sq: Rat,
    /// `n/4 - <point, 1 - point>`, which equals `|| (1/2)1 - point ||^2`.
    pub gap_to_quarter: Rat,
    /// Constraints active at the optimum (H-description case).
    pub active_set: Vec<ConstraintId>,
    pub certificate: NormCertificate,
}

struct Inequality {
    normal: RatVector,
    rhs: Rat,
    id: ConstraintId,
}

fn region_constraints(g: &SimpleGame) -> Vec<Inequality> {
    let n = g.n();
    let mut rows: Vec<Inequality> = g
        .min_winning()
        .iter()
        .map(|w| Inequality {
            normal: w.characteristic(n),
            rhs: Rat::one(),
            id: ConstraintId::Winning(*w),
        })
        .collect();
    for i in 0..n {
        let mut e = RatVector::zeros(n).into_entries();
        e[i] = Rat::one();
        rows.push(Inequality {
            normal: RatVector::new(e),
            rhs: Rat::zero(),
            id: ConstraintId::NonNegative(i),
        });
    }
    rows
}

/// Solves `min ||p||^2 s.t. a_k . p = b_k (k in working)` through the KKT
/// system `G mu = 2b`, `p = (1/2) sum mu_k a_k`. `None` if the working-set
/// normals are dependent.
fn solve_eqp(
    rows: &[Inequality],
    working: &[usize],
    n: usize,
) -> Option<(RatVector, Vec<Rat>)> {
    if working.is_empty() {
        return Some((RatVector::zeros(n), Vec::new()));
    }
    let k = working.len();
    let mut gram = vec![vec![Rat::zero(); k]; k];
    for (i, &wi) in working.iter().enumerate() {
        for (j, &wj) in working.iter().enumerate() {
            gram[i][j] = rows[wi].normal.dot(&rows[wj].normal);
        }
    }
    let rhs: Vec<Rat> = working
        .iter()
        .map(|&w| &rows[w].rhs + &rows[w].rhs)
        .collect();
    let mu = solve_unique(&gram, &rhs)?;
    let mut p = RatVector::zeros(n);
    let half = rat(1, 2);
    for (i, &w) in working.iter().enumerate() {
        if !mu[i].is_zero() {
            p = p.add(&rows[w].normal.scale(&(&half * &mu[i])));
        }
    }
    Some((p, mu))
}

fn is_feasible(rows: &[Inequality], p: &RatVector) -> bool {
    rows.iter().all(|r| r.normal.dot(p) >= r.rhs)
}

/// Full exact KKT verification for a candidate optimum: feasibility,
/// nonnegative multipliers supported on active constraints, stationarity.
fn kkt_holds(rows: &[Inequality], working: &[usize], p: &RatVector, mu: &[Rat]) -> bool {
    if !is_feasible(rows, p) {
        return false;
    }
    if mu.iter().any(|m| m.is_negative()) {
        return false;
    }
    for (i, &w) in working.iter().enumerate() {
        if !mu[i].is_zero() && rows[w].normal.dot(p) != rows[w].rhs {
            return false;
        }
    }
    let mut gradient = RatVector::zeros(p.len());
    for (i, &w) in working.iter().enumerate() {
        if !mu[i].is_zero() {
            gradient = gradient.add(&rows[w].normal.scale(&mu[i]));
        }
    }
    gradient == p.scale(&rat(2, 1))
}

/// Floating-point warm start: pull the point toward the origin and project
/// onto violated halfspaces, then read off the near-active rows. Purely
/// heuristic; the result is only ever used as an active-set guess.
fn float_active_guess(rows: &[Inequality], n: usize) -> Vec<usize> {
    let normals: Vec<Vec<f64>> = rows.iter().map(|r| r.normal.to_f64_lossy()).collect();
    let rhss: Vec<f64> = rows.iter().map(|r| rat_to_f64_lossy(&r.rhs)).collect();
    let sq_norms: Vec<f64> = normals
        .iter()
        .map(|a| a.iter().map(|x| x * x).sum::<f64>())
        .collect();
    let mut x = vec![1.0f64; n];
    for _ in 0..400 {
        for xi in x.iter_mut() {
            *xi *= 0.97;
        }
        for _ in 0..4 {
            for (k, a) in normals.iter().enumerate() {
                let v: f64 = a.iter().zip(x.iter()).map(|(ai, xi)| ai * xi).sum();
                let gap = rhss[k] - v;
                if gap > 0.0 && sq_norms[k] > 0.0 {
                    let step = gap / sq_norms[k];
                    for (xi, ai) in x.iter_mut().zip(a.iter()) {
                        *xi += step * ai;
                    }
                }
            }
        }
    }
    (0..rows.len())
        .filter(|&k| {
            let v: f64 = normals[k].iter().zip(x.iter()).map(|(a, xi)| a * xi).sum();
            (v - rhss[k]).abs() < 1e-7
        })
        .collect()
}

/// Exact primal active-set loop from the feasible all-ones start.
fn exact_active_set(rows: &[Inequality], n: usize) -> (RatVector, Vec<usize>, Vec<Rat>) {
    let mut x = RatVector::ones(n);
    let mut working: Vec<usize> = Vec::new();
    for _ in 0..ACTIVE_SET_ITERATION_CAP {
        let (target, mu) =
            solve_eqp(rows, &working, n).expect("working-set normals stay independent");
        if target == x {
            match (0..working.len()).find(|&i| mu[i].is_negative()) {
                None => return (x, working, mu),
                Some(i) => {
                    working.remove(i);
                    continue;
                }
            }
        }
        let direction = target.sub(&x);
        let mut theta = Rat::one();
        let mut blocker: Option<usize> = None;
        for (k, row) in rows.iter().enumerate() {
            if working.contains(&k) {
                continue;
            }
            let ad = row.normal.dot(&direction);
            if ad.is_negative() {
                let slack = &row.rhs - &row.normal.dot(&x);
                let candidate = &slack / &ad;
                if candidate < theta {
                    theta = candidate;
                    blocker = Some(k);
                }
            }
        }
        if !theta.is_zero() {
            x = x.add(&direction.scale(&theta));
        }
        if let Some(k) = blocker {
            let pos = working.partition_point(|&w| w < k);
            working.insert(pos, k);
        }
        debug_assert!(is_feasible(rows, &x));
    }
    unreachable!("active-set iteration cap exceeded");
}

fn assemble_region_result(
    g: &SimpleGame,
    rows: &[Inequality],
    p: RatVector,
    working: &[usize],
    mu: &[Rat],
) -> MinNormResult {
    assert!(kkt_holds(rows, working, &p, mu), "optimality lost in assembly");
    let active_set: Vec<ConstraintId> = rows
        .iter()
        .filter(|r| r.normal.dot(&p) == r.rhs)
        .map(|r| r.id)
        .collect();
    let multipliers: Vec<(ConstraintId, Rat)> = working
        .iter()
        .zip(mu.iter())
        .map(|(&w, m)| (rows[w].id, m.clone()))
        .collect();
    let norm_sq = p.norm_sq();
    let gap_to_quarter = gap_to_quarter(g.n(), &p);
    MinNormResult {
        point: p,
        norm_sq,
        gap_to_quarter,
        active_set,
        certificate: NormCertificate::Kkt { multipliers },
    }
}

/// `n/4 - <p, 1 - p>`; equals the squared distance from the half-ones
/// point, which the tests verify independently.
fn gap_to_quarter(n: usize, p: &RatVector) -> Rat {
    let ones = RatVector::ones(n);
    rat(n as i64, 4) - p.dot(&ones.sub(p))
}

/// The unique minimum-2-norm point of the feasible allocation region, with
/// an exactly verified KKT certificate.
pub fn min_norm_q(g: &SimpleGame) -> MinNormResult {
    let n = g.n();
    let rows = region_constraints(g);

    // Fast path: float-guided active-set guess, exact verification.
    let guess = float_active_guess(&rows, n);
    if !guess.is_empty() {
        let guess_rows: Vec<Vec<Rat>> = guess
            .iter()
            .map(|&k| rows[k].normal.entries().to_vec())
            .collect();
        let independent: Vec<usize> = independent_rows(&guess_rows)
            .into_iter()
            .map(|i| guess[i])
            .collect();
        if let Some((p, mu)) = solve_eqp(&rows, &independent, n) {
            if kkt_holds(&rows, &independent, &p, &mu) {
                return assemble_region_result(g, &rows, p, &independent, &mu);
            }
        }
    }

    // Exact repair path.
    let (p, working, mu) = exact_active_set(&rows, n);
    assemble_region_result(g, &rows, p, &working, &mu)
}

/// The unique minimum-2-norm point of the convex hull of cover vertices,
/// with its supporting convex combination.
pub fn min_norm_cover_hull(g: &SimpleGame) -> Result<MinNormResult, MinNormError> {
    let n = g.n();
    if n > COVER_HULL_LIMIT {
        return Err(MinNormError::TooLarge {
            n,
            cap: COVER_HULL_LIMIT,
        });
    }
    let out = wolfe::min_norm_over_covers(g);
    // Exact reconstruction of the support.
    let mut total = Rat::zero();
    let mut combo = RatVector::zeros(n);
    for (c, w) in &out.support {
        assert!(g.is_cover(*c), "support vertex is not a cover");
        assert!(w.is_positive(), "support weights are positive");
        combo = combo.add(&c.characteristic(n).scale(w));
        total += w;
    }
    assert!(total.is_one(), "support weights must sum to 1");
    assert_eq!(combo, out.point, "support must reconstruct the point");
    let norm_sq = out.point.norm_sq();
    let gap = gap_to_quarter(n, &out.point);
    Ok(MinNormResult {
        point: out.point,
        norm_sq,
        gap_to_quarter: gap,
        active_set: Vec::new(),
        certificate: NormCertificate::ConvexSupport {
            weights: out.support,
        },
    })
}

/// Self-optimality: a min-norm point of a polyhedron also minimizes the
/// linear objective it defines. True iff `min { <p_star, q> : q in Q(W) }`
/// equals `<p_star, p_star>`, both sides exact.
pub fn verify_self_optimal(p_star: &RatVector, g: &SimpleGame) -> bool {
    let n = g.n();
    assert_eq!(p_star.len(), n);
    assert!(
        is_feasible(&region_constraints(g), p_star),
        "self-optimality is only defined for feasible points"
    );
    let mut lp = LpProblem::minimize(p_star.clone());
    for w in g.min_winning() {
        lp.add_constraint(w.characteristic(n), Rel::Ge, Rat::one());
    }
    let sol = solve_lp(&lp)
        .expect("region LP is well-formed")
        .expect_optimal("region LP (all-ones is feasible, objective >= 0)");
    sol.objective == p_star.norm_sq()
}

/// The quarter-bound chain evaluated at the min-norm point: returns
/// `(<p*, 1 - p*>, n/4 - ||(1/2)1 - p*||^2, n/4)`. The first two are equal
/// by the algebraic identity and never exceed the third.
pub fn quarter_bound_report(g: &SimpleGame) -> (Rat, Rat, Rat) {
    let n = g.n();
    let p = min_norm_q(g).point;
    let ones = RatVector::ones(n);
    let first = p.dot(&ones.sub(&p));
    let half_ones = RatVector::constant(n, &rat(1, 2));
    let quarter = rat(n as i64, 4);
    let second = &quarter - &half_ones.sub(&p).norm_sq();
    assert_eq!(first, second, "quarter-bound identity must hold exactly");
    assert!(first <= quarter, "quarter bound violated");
    (first, second, quarter)
}
