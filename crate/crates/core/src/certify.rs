//! Tightness of the quarter bound, certified both ways.
//!
//! The critical threshold value equals `n/4` exactly when `(2/n)·1` lies in
//! the convex hull of winning characteristic vectors and `(1/2)·1` lies in
//! the convex hull of losing ones. The forward certificate comes from the
//! scaled optimal dual of `min { <(1/2)1, q> : q in Q(W) }`; the losing-side
//! certificate from the supporting combination of the min-norm point of the
//! cover hull, complemented coalition by coalition. States that the theory
//! rules out (for example a tight game whose cover hull min-norm point is
//! not `(1/2)·1`) surface as [`CertifyError::InternalContradiction`] rather
//! than bad certificates.

use crate::game::{Coalition, SimpleGame};
use crate::minnorm::{min_norm_cover_hull, MinNormError, NormCertificate};
use crate::rat::{rat, Rat, RatVector};
use crate::ratlp::{solve_lp, LpProblem, Rel};
use crate::threshold::{alpha_full, ThresholdError};
use num::traits::{One, Signed, Zero};
use thiserror::Error;

/// Player bound for certificate construction (cover enumeration inside).
pub const TIGHTNESS_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("tightness check needs n <= {cap}, got {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("the game is not tight: alpha differs from n/4")]
    NotTight,
    #[error("internal contradiction (solver defect): {0}")]
    InternalContradiction(String),
    #[error(transparent)]
    Threshold(#[from] ThresholdError),
}

impl From<MinNormError> for CertifyError {
    fn from(e: MinNormError) -> Self {
        match e {
            MinNormError::TooLarge { n, cap } => CertifyError::TooLarge { n, cap },
        }
    }
}

/// Convex combinations witnessing tightness: winning vectors combining to
/// `(2/n)·1` and losing vectors combining to `(1/2)·1`.
#[derive(Clone, Debug)]
pub struct TightnessCertificate {
    pub winning_combination: Vec<(Coalition, Rat)>,
    pub losing_combination: Vec<(Coalition, Rat)>,
}

fn quarter(n: usize) -> Rat {
    rat(n as i64, 4)
}

fn reconstruct(n: usize, combination: &[(Coalition, Rat)]) -> (RatVector, Rat) {
    let mut point = RatVector::zeros(n);
    let mut total = Rat::zero();
    for (c, w) in combination {
        point = point.add(&c.characteristic(n).scale(w));
        total += w;
    }
    (point, total)
}

/// Detects whether the quarter bound is tight and, if so, produces the two
/// hull certificates. Returns `None` exactly when `alpha != n/4`.
pub fn check_tight(g: &SimpleGame) -> Result<Option<TightnessCertificate>, CertifyError> {
    let n = g.n();
    if n > TIGHTNESS_LIMIT {
        return Err(CertifyError::TooLarge {
            n,
            cap: TIGHTNESS_LIMIT,
        });
    }
    let report = alpha_full(g)?;
    if report.alpha != quarter(n) {
        return Ok(None);
    }
    let winning_combination = winning_hull_from_dual(g)?;
    let losing_combination = losing_hull_from_qstar(g)?;
    let cert = TightnessCertificate {
        winning_combination,
        losing_combination,
    };
    if !verify_certificate(g, &cert) {
        return Err(CertifyError::InternalContradiction(
            "constructed certificate failed verification".into(),
        ));
    }
    Ok(Some(cert))
}

/// The winning-side certificate: scale the optimal dual of
/// `min { <(1/2)1, q> : q in Q(W) }` by `4/n`. Complementary slackness at
/// the strictly positive optimum forces the scaled combination to equal
/// `(2/n)·1` exactly; anything else is a solver defect.
pub fn winning_hull_from_dual(g: &SimpleGame) -> Result<Vec<(Coalition, Rat)>, CertifyError> {
    let n = g.n();
    let report = alpha_full(g)?;
    if report.alpha != quarter(n) {
        return Err(CertifyError::NotTight);
    }
    let half_ones = RatVector::constant(n, &rat(1, 2));
    let mut lp = LpProblem::minimize(half_ones);
    for w in g.min_winning() {
        lp.add_constraint(w.characteristic(n), Rel::Ge, Rat::one());
    }
    let sol = solve_lp(&lp)
        .expect("dual-extraction LP is well-formed")
        .expect_optimal("dual-extraction LP");
    let scale = rat(4, n as i64);
    let mut weights = Vec::new();
    let mut total = Rat::zero();
    for (w, y) in g.min_winning().iter().zip(sol.dual.iter()) {
        if y.is_negative() {
            return Err(CertifyError::InternalContradiction(
                "negative dual on a covering row".into(),
            ));
        }
        if !y.is_zero() {
            let scaled = &scale * y;
            total = &total + &scaled;
            weights.push((*w, scaled));
        }
    }
    if !total.is_one() {
        return Err(CertifyError::InternalContradiction(format!(
            "scaled dual weights sum to {total}, not 1"
        )));
    }
    let (combo, _) = reconstruct(n, &weights);
    let target = RatVector::constant(n, &rat(2, n as i64));
    if combo != target {
        return Err(CertifyError::InternalContradiction(
            "scaled dual combination does not reconstruct (2/n)·1".into(),
        ));
    }
    Ok(weights)
}

/// The losing-side certificate: the min-norm point of the cover hull must
/// be `(1/2)·1` in the tight case; complementing its supporting covers
/// turns the combination into losing coalitions reconstructing `(1/2)·1`.
pub fn losing_hull_from_qstar(g: &SimpleGame) -> Result<Vec<(Coalition, Rat)>, CertifyError> {
    let n = g.n();
    let report = alpha_full(g)?;
    if report.alpha != quarter(n) {
        return Err(CertifyError::NotTight);
    }
    let hull = min_norm_cover_hull(g)?;
    let half_ones = RatVector::constant(n, &rat(1, 2));
    if hull.point != half_ones {
        return Err(CertifyError::InternalContradiction(
            "tight game whose cover-hull min-norm point is not (1/2)·1".into(),
        ));
    }
    let support = match hull.certificate {
        NormCertificate::ConvexSupport { weights } => weights,
        NormCertificate::Kkt { .. } => {
            return Err(CertifyError::InternalContradiction(
                "cover hull returned an H-description certificate".into(),
            ))
        }
    };
    let mut combination = Vec::with_capacity(support.len());
    for (cover, w) in support {
        let losing = cover.complement_in(n);
        if g.value(losing) {
            return Err(CertifyError::InternalContradiction(format!(
                "complement {losing} of a cover is winning"
            )));
        }
        combination.push((losing, w));
    }
    let (combo, total) = reconstruct(n, &combination);
    if !total.is_one() || combo != half_ones {
        return Err(CertifyError::InternalContradiction(
            "complemented support does not reconstruct (1/2)·1".into(),
        ));
    }
    Ok(combination)
}

/// Full certificate verification. True iff both combinations are convex,
/// range over the right families, reconstruct their targets exactly, and
/// the implied lower bound re-derives: the optimal allocation satisfies
/// `<p, (1/2)1> >= n/4` through the winning combination.
pub fn verify_certificate(g: &SimpleGame, cert: &TightnessCertificate) -> bool {
    let n = g.n();
    let convex = |combination: &[(Coalition, Rat)]| {
        !combination.is_empty()
            && combination.iter().all(|(_, w)| !w.is_negative())
            && combination
                .iter()
                .fold(Rat::zero(), |acc, (_, w)| acc + w)
                .is_one()
    };
    if !convex(&cert.winning_combination) || !convex(&cert.losing_combination) {
        return false;
    }
    if cert.winning_combination.iter().any(|(c, _)| !g.value(*c)) {
        return false;
    }
    if cert.losing_combination.iter().any(|(c, _)| g.value(*c)) {
        return false;
    }
    let (winning_combo, _) = reconstruct(n, &cert.winning_combination);
    if winning_combo != RatVector::constant(n, &rat(2, n as i64)) {
        return false;
    }
    let (losing_combo, _) = reconstruct(n, &cert.losing_combination);
    if losing_combo != RatVector::constant(n, &rat(1, 2)) {
        return false;
    }
    // Re-derive the lower bound alpha >= n/4 at the computed optimum: each
    // winning member carries allocation weight >= 1, so the convex
    // combination gives <p, (2/n)1> >= 1, i.e. <p, (1/2)1> >= n/4.
    let Ok(report) = alpha_full(g) else {
        return false;
    };
    for (w, _) in &cert.winning_combination {
        if report.allocation.masked_sum(w.bits()) < Rat::one() {
            return false;
        }
    }
    let half_ones = RatVector::constant(n, &rat(1, 2));
    report.allocation.dot(&half_ones) >= quarter(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{dictator, pairs_game, unanimity};
    use crate::rat::rat_int;

    fn c(players: &[usize], n: usize) -> Coalition {
        Coalition::from_players(players, n).unwrap()
    }

    #[test]
    fn check_tight_examples() {
        let cert = check_tight(&pairs_game(4).unwrap()).unwrap().unwrap();
        assert!(verify_certificate(&pairs_game(4).unwrap(), &cert));

        assert!(check_tight(&dictator(3).unwrap()).unwrap().is_none());
        assert!(check_tight(&unanimity(3).unwrap()).unwrap().is_none());
    }

    #[test]
    fn winning_dual_weights_on_pairs() {
        let g = pairs_game(4).unwrap();
        let weights = winning_hull_from_dual(&g).unwrap();
        assert_eq!(
            weights,
            vec![(c(&[1, 2], 4), rat(1, 2)), (c(&[3, 4], 4), rat(1, 2))]
        );

        let g6 = pairs_game(6).unwrap();
        let weights = winning_hull_from_dual(&g6).unwrap();
        assert_eq!(
            weights,
            vec![
                (c(&[1, 2], 6), rat(1, 3)),
                (c(&[3, 4], 6), rat(1, 3)),
                (c(&[5, 6], 6), rat(1, 3)),
            ]
        );

        assert_eq!(
            winning_hull_from_dual(&dictator(3).unwrap()).unwrap_err(),
            CertifyError::NotTight
        );
    }

    #[test]
    fn losing_side_from_cover_hull() {
        let g = pairs_game(4).unwrap();
        let combination = losing_hull_from_qstar(&g).unwrap();
        let (combo, total) = reconstruct(4, &combination);
        assert!(total.is_one());
        assert_eq!(combo, RatVector::constant(4, &rat(1, 2)));
        for (l, _) in &combination {
            assert!(!g.value(*l));
        }

        let g6 = pairs_game(6).unwrap();
        let combination = losing_hull_from_qstar(&g6).unwrap();
        let (combo, total) = reconstruct(6, &combination);
        assert!(total.is_one());
        assert_eq!(combo, RatVector::constant(6, &rat(1, 2)));

        assert_eq!(
            losing_hull_from_qstar(&unanimity(3).unwrap()).unwrap_err(),
            CertifyError::NotTight
        );
    }

    #[test]
    fn verify_rejects_broken_certificates() {
        let g = pairs_game(4).unwrap();
        let good = check_tight(&g).unwrap().unwrap();
        assert!(verify_certificate(&g, &good));

        // broken reconstruction: all losing weight on one coalition
        let mut broken = good.clone();
        broken.losing_combination = vec![
            (c(&[1, 3], 4), rat_int(1)),
            (c(&[2, 4], 4), rat_int(0)),
        ];
        assert!(!verify_certificate(&g, &broken));

        // non-winning member smuggled into the winning combination
        let mut broken = good.clone();
        broken.winning_combination[0].0 = c(&[1, 3], 4);
        assert!(!verify_certificate(&g, &broken));

        // weights that do not sum to one
        let mut broken = good;
        broken.winning_combination[0].1 = rat(1, 4);
        assert!(!verify_certificate(&g, &broken));
    }

    #[test]
    fn removing_any_pair_breaks_tightness() {
        for n in [4usize, 6, 8] {
            let g = pairs_game(n).unwrap();
            assert!(check_tight(&g).unwrap().is_some(), "pairs({n}) is tight");
            for drop in 0..g.min_winning().len() {
                let family: Vec<Coalition> = g
                    .min_winning()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, w)| *w)
                    .collect();
                if family.is_empty() {
                    continue;
                }
                let perturbed = SimpleGame::new(n, family).unwrap();
                assert!(
                    check_tight(&perturbed).unwrap().is_none(),
                    "pairs({n}) minus pair {drop} must not be tight"
                );
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = pairs_game(22).unwrap();
        assert!(matches!(
            check_tight(&g),
            Err(CertifyError::TooLarge { .. })
        ));
    }
}
