//! Exact solver and certificate checker for critical threshold values of
//! simple games.
//!
//! The critical threshold value of a simple game is the smallest worst-case
//! losing-coalition weight achievable by a feasible allocation: minimize,
//! over nonnegative allocations giving every winning coalition weight at
//! least 1, the maximum weight of a losing coalition. It is below 1 exactly
//! for weighted voting games and never exceeds `n/4`; equality at `n/4` is
//! certified by a pair of convex-hull memberships.
//!
//! Everything on a certified path uses arbitrary-precision rational
//! arithmetic; floating point appears only as a heuristic warm start that is
//! always re-verified exactly.
//!
//! Module map:
//! - [`rat`]: exact rational scalars/vectors and the `"a/b"` wire form.
//! - [`game`]: bitmask coalitions, simple games, blockers, generators.
//! - [`ratlp`]: exact simplex with dual and Farkas certificates, convex hull
//!   membership.
//! - [`threshold`]: the critical threshold value by full enumeration, cut
//!   generation, and the cover reformulation; weightedness.
//! - [`minnorm`]: exact minimum-norm points of the feasible region and of
//!   the cover hull; the quarter-bound identity.
//! - [`certify`]: tightness detection and hull-membership certificates.
//! - [`oracle`]: independent brute-force references for cross-validation.
//! - [`corpus`]: the named desk-scale game collection used across tests.

pub mod certify;
pub mod corpus;
pub mod game;
pub mod minnorm;
pub mod oracle;
pub mod rat;
pub mod ratlp;
pub mod threshold;

pub use game::{Coalition, GameError, SimpleGame, WeightedGameSpec};
pub use rat::{Rat, RatVector};
