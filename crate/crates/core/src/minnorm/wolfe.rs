//! Wolfe's minimum-norm-point algorithm over the covers of a game,
//! entirely in exact arithmetic.
//!
//! The vertex set is the 0/1 points of the feasible region: characteristic
//! vectors of covers. The linear minimization oracle is a min-weight-cover
//! scan; among minimizers it prefers fewer players and then the smaller
//! bitmask, which (for nonnegative weights) always yields an
//! inclusion-minimal cover.

use crate::game::{Coalition, SimpleGame};
use crate::rat::{Rat, RatVector};
use crate::ratlp::solve_unique;
use num::traits::{One, Signed, Zero};

pub(crate) struct WolfeOutcome {
    pub point: RatVector,
    /// Convex support: positive weights on cover vertices, summing to 1.
    pub support: Vec<(Coalition, Rat)>,
}

const MAX_CYCLES: usize = 100_000;

/// Min-weight cover under `weights`; ties prefer fewer players, then the
/// smaller bitmask.
fn min_weight_cover(g: &SimpleGame, weights: &RatVector) -> (Coalition, Rat) {
    let limit = 1u64 << g.n();
    let mut best: Option<(Rat, usize, u32)> = None;
    for bits in 1..limit {
        let c = Coalition::from_bits(bits as u32);
        if !g.is_cover(c) {
            continue;
        }
        let w = weights.masked_sum(c.bits());
        let key = (w, c.len(), c.bits());
        best = match best {
            None => Some(key),
            Some(cur) => {
                if (&key.0, key.1, key.2) < (&cur.0, cur.1, cur.2) {
                    Some(key)
                } else {
                    Some(cur)
                }
            }
        };
    }
    let (w, _, bits) = best.expect("the grand coalition is always a cover");
    (Coalition::from_bits(bits), w)
}

/// Minimum-norm point of the affine hull of the corral: solve
/// `[2G 1; 1' 0] [beta; nu] = [0; 1]` where `G` is the Gram matrix.
fn affine_min_norm(corral: &[Coalition]) -> Option<Vec<Rat>> {
    let k = corral.len();
    let mut m = vec![vec![Rat::zero(); k + 1]; k + 1];
    for i in 0..k {
        for j in 0..k {
            let inter = corral[i].intersection(corral[j]).len() as i64;
            m[i][j] = Rat::from_integer((2 * inter).into());
        }
        m[i][k] = Rat::one();
        m[k][i] = Rat::one();
    }
    let mut rhs = vec![Rat::zero(); k + 1];
    rhs[k] = Rat::one();
    solve_unique(&m, &rhs).map(|mut sol| {
        sol.pop(); // discard the multiplier of the normalization row
        sol
    })
}

fn combination(corral: &[Coalition], coeffs: &[Rat], n: usize) -> RatVector {
    let mut point = RatVector::zeros(n);
    for (c, w) in corral.iter().zip(coeffs.iter()) {
        if !w.is_zero() {
            point = point.add(&c.characteristic(n).scale(w));
        }
    }
    point
}

/// Exact min-norm point of the convex hull of all cover vertices.
pub(crate) fn min_norm_over_covers(g: &SimpleGame) -> WolfeOutcome {
    let n = g.n();
    let (v0, _) = min_weight_cover(g, &RatVector::zeros(n));
    let mut corral = vec![v0];
    let mut coeffs = vec![Rat::one()];
    let mut point = combination(&corral, &coeffs, n);

    for _ in 0..MAX_CYCLES {
        let (vertex, value) = min_weight_cover(g, &point);
        if value >= point.norm_sq() {
            // Wolfe criterion over the full vertex set: optimal.
            let support = corral.into_iter().zip(coeffs).collect();
            return WolfeOutcome { point, support };
        }
        corral.push(vertex);
        coeffs.push(Rat::zero());

        // Minor cycles: move to the affine minimum, trimming the corral
        // whenever a convex coefficient would turn negative.
        loop {
            let beta = affine_min_norm(&corral)
                .expect("corral stays affinely independent");
            if beta.iter().all(|b| !b.is_negative()) {
                let keep: Vec<usize> =
                    (0..corral.len()).filter(|&i| !beta[i].is_zero()).collect();
                corral = keep.iter().map(|&i| corral[i]).collect();
                coeffs = keep.iter().map(|&i| beta[i].clone()).collect();
                point = combination(&corral, &coeffs, n);
                break;
            }
            // Largest step toward beta keeping all coefficients >= 0.
            let mut theta = Rat::one();
            for i in 0..corral.len() {
                if beta[i].is_negative() {
                    let denom = &coeffs[i] - &beta[i];
                    let candidate = &coeffs[i] / &denom;
                    if candidate < theta {
                        theta = candidate;
                    }
                }
            }
            let mut next = Vec::with_capacity(corral.len());
            for i in 0..corral.len() {
                let mixed = &coeffs[i] + &(&theta * &(&beta[i] - &coeffs[i]));
                next.push(mixed);
            }
            // Drop the first vertex whose coefficient reached zero.
            let drop = next
                .iter()
                .position(|w| w.is_zero())
                .expect("the line search zeroes a coefficient");
            corral.remove(drop);
            next.remove(drop);
            coeffs = next;
        }
    }
    unreachable!("Wolfe iteration cap exceeded: finite vertex sets terminate");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{dictator, pairs_game, unanimity};
    use crate::rat::rat;

    #[test]
    fn lmo_prefers_minimal_covers() {
        let g = pairs_game(4).unwrap();
        let w = RatVector::new(vec![rat(1, 4), rat(1, 2), rat(1, 4), rat(1, 2)]);
        let (c, value) = min_weight_cover(&g, &w);
        // cheapest cover picks players 1 and 3
        assert_eq!(c, Coalition::from_players(&[1, 3], 4).unwrap());
        assert_eq!(value, rat(1, 2));
    }

    #[test]
    fn wolfe_on_symmetric_games() {
        let g = pairs_game(4).unwrap();
        let out = min_norm_over_covers(&g);
        assert_eq!(out.point, RatVector::constant(4, &rat(1, 2)));

        let g = dictator(3).unwrap();
        let out = min_norm_over_covers(&g);
        assert_eq!(
            out.point.entries(),
            &[rat(1, 1), rat(0, 1), rat(0, 1)]
        );

        let g = unanimity(3).unwrap();
        let out = min_norm_over_covers(&g);
        assert_eq!(out.point, RatVector::constant(3, &rat(1, 3)));
    }

    #[test]
    fn support_reconstructs_point() {
        for g in [pairs_game(6).unwrap(), unanimity(4).unwrap()] {
            let out = min_norm_over_covers(&g);
            let mut total = Rat::zero();
            let mut combo = RatVector::zeros(g.n());
            for (c, w) in &out.support {
                assert!(g.is_cover(*c));
                assert!(w.is_positive());
                combo = combo.add(&c.characteristic(g.n()).scale(w));
                total += w;
            }
            assert!(total.is_one());
            assert_eq!(combo, out.point);
        }
    }
}
