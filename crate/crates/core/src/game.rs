//! Simple games stored by their minimal winning coalitions.
//!
//! A simple game on players `1..=n` is a monotone 0/1 value function with
//! `v(empty) = 0` and `v(N) = 1`. Monotonicity makes the antichain of minimal
//! winning coalitions a lossless representation; everything here works on
//! that antichain. Players are 1-based at the API boundary and 0-based in the
//! bitmask representation.

use crate::rat::{Rat, RatVector};
use num::traits::{One, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

/// Hard cap on the player count: coalitions are `u32` bitmasks and the
/// exhaustive oracles need `2^n` to stay enumerable.
pub const MAX_PLAYERS: usize = 32;

/// Player-count bound for the exhaustive blocker scan; above it the
/// iterative transversal construction takes over.
pub const COVER_SCAN_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("coalition family must be nonempty")]
    EmptyFamily,
    #[error("the empty coalition is not allowed (it would make v(\u{2205}) = 1)")]
    EmptyCoalition,
    #[error("player count must be at least 1")]
    NoPlayers,
    #[error("player count {0} exceeds the limit of {MAX_PLAYERS}")]
    TooManyPlayers(usize),
    #[error("player {player} out of range for n = {n}")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("pairs family requires an even player count, got {0}")]
    OddN(usize),
    #[error("total weight must be at least 1 for the grand coalition to win")]
    InfeasibleSpec,
    #[error("weights must be nonnegative")]
    NegativeWeight,
    #[error("expected {expected} weights, got {got}")]
    WeightCountMismatch { expected: usize, got: usize },
}

/// A coalition as a bitmask over player indices `0..n-1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_bits(bits: u32) -> Self {
        Coalition(bits)
    }

    /// Builds a coalition from 1-based player indices, validating range.
    pub fn from_players(players: &[usize], n: usize) -> Result<Self, GameError> {
        let mut bits = 0u32;
        for &p in players {
            if p == 0 || p > n {
                return Err(GameError::PlayerOutOfRange { player: p, n });
            }
            bits |= 1 << (p - 1);
        }
        Ok(Coalition(bits))
    }

    /// The grand coalition on `n` players.
    pub fn full(n: usize) -> Self {
        debug_assert!((1..=MAX_PLAYERS).contains(&n));
        if n == 32 {
            Coalition(u32::MAX)
        } else {
            Coalition((1u32 << n) - 1)
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn contains(self, other: Coalition) -> bool {
        other.is_subset_of(self)
    }

    pub fn contains_player0(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn intersects(self, other: Coalition) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Coalition {
        Coalition(self.0 & other.0)
    }

    pub fn with_player0(self, i: usize) -> Coalition {
        Coalition(self.0 | (1 << i))
    }

    pub fn without_player0(self, i: usize) -> Coalition {
        Coalition(self.0 & !(1 << i))
    }

    /// Complement relative to the grand coalition on `n` players.
    pub fn complement_in(self, n: usize) -> Coalition {
        Coalition(Coalition::full(n).0 & !self.0)
    }

    /// 0-based member indices, ascending.
    pub fn iter_players0(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32u32).filter_map(move |i| {
            if bits & (1 << i) != 0 {
                Some(i as usize)
            } else {
                None
            }
        })
    }

    /// 1-based member indices, ascending.
    pub fn players(self) -> Vec<usize> {
        self.iter_players0().map(|i| i + 1).collect()
    }

    /// Characteristic vector of length `n`.
    pub fn characteristic(self, n: usize) -> RatVector {
        RatVector::characteristic(self.0, n)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.players().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reduces a family to its inclusion-minimal members.
///
/// The result is an antichain, sorted ascending by bitmask, generating the
/// same up-closed family as the input.
pub fn normalize_antichain(family: &[Coalition]) -> Result<Vec<Coalition>, GameError> {
    if family.is_empty() {
        return Err(GameError::EmptyFamily);
    }
    if family.iter().any(|c| c.is_empty()) {
        return Err(GameError::EmptyCoalition);
    }
    let mut sorted: Vec<Coalition> = family.to_vec();
    sorted.sort_by_key(|c| (c.len(), c.bits()));
    sorted.dedup();
    let mut minimal: Vec<Coalition> = Vec::new();
    for c in sorted {
        if !minimal.iter().any(|m| m.is_subset_of(c)) {
            minimal.push(c);
        }
    }
    minimal.sort_by_key(|c| c.bits());
    Ok(minimal)
}

/// A simple game: player count plus the antichain of minimal winning
/// coalitions, sorted ascending by bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGame {
    n: usize,
    min_winning: Vec<Coalition>,
}

impl SimpleGame {
    /// Constructs a game, normalizing the family to its minimal antichain.
    pub fn new(n: usize, family: Vec<Coalition>) -> Result<Self, GameError> {
        if n == 0 {
            return Err(GameError::NoPlayers);
        }
        if n > MAX_PLAYERS {
            return Err(GameError::TooManyPlayers(n));
        }
        let grand = Coalition::full(n);
        for c in &family {
            if !c.is_subset_of(grand) {
                let stray = c.bits() & !grand.bits();
                return Err(GameError::PlayerOutOfRange {
                    player: stray.trailing_zeros() as usize + 1,
                    n,
                });
            }
        }
        let min_winning = normalize_antichain(&family)?;
        Ok(SimpleGame { n, min_winning })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn min_winning(&self) -> &[Coalition] {
        &self.min_winning
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::full(self.n)
    }

    /// The value function: 1 iff the coalition contains a minimal winning one.
    pub fn value(&self, c: Coalition) -> bool {
        debug_assert!(c.is_subset_of(self.grand_coalition()));
        self.min_winning.iter().any(|w| w.is_subset_of(c))
    }

    /// Inclusion-minimal covers (transversals of the winning family).
    ///
    /// Exhaustive scan up to [`COVER_SCAN_LIMIT`] players; iterative
    /// transversal construction above that. Both return the same antichain,
    /// sorted ascending by bitmask.
    pub fn minimal_covers(&self) -> Vec<Coalition> {
        if self.n <= COVER_SCAN_LIMIT {
            self.minimal_covers_scan()
        } else {
            self.minimal_covers_transversal()
        }
    }

    /// A coalition is a cover iff it intersects every minimal winning set.
    pub fn is_cover(&self, c: Coalition) -> bool {
        self.min_winning.iter().all(|w| w.intersects(c))
    }

    pub(crate) fn minimal_covers_scan(&self) -> Vec<Coalition> {
        let limit: u64 = 1u64 << self.n;
        let mut covers = Vec::new();
        for bits in 1..limit {
            let c = Coalition::from_bits(bits as u32);
            if self.is_cover(c) {
                covers.push(c);
            }
        }
        normalize_antichain(&covers).expect("cover family is nonempty (N covers)")
    }

    /// Berge-style transversal construction: fold winning sets in one at a
    /// time, extending the running antichain of partial transversals.
    pub(crate) fn minimal_covers_transversal(&self) -> Vec<Coalition> {
        let mut trans: Vec<Coalition> = self.min_winning[0]
            .iter_players0()
            .map(|i| Coalition::EMPTY.with_player0(i))
            .collect();
        for w in &self.min_winning[1..] {
            let mut next: Vec<Coalition> = Vec::new();
            for t in &trans {
                if t.intersects(*w) {
                    next.push(*t);
                } else {
                    for i in w.iter_players0() {
                        next.push(t.with_player0(i));
                    }
                }
            }
            trans = normalize_antichain(&next).expect("transversal family stays nonempty");
        }
        trans
    }

    /// The inclusion-maximal losing coalitions: complements of the minimal
    /// covers.
    pub fn maximal_losing(&self) -> Vec<Coalition> {
        let mut losing: Vec<Coalition> = self
            .minimal_covers()
            .into_iter()
            .map(|c| c.complement_in(self.n))
            .collect();
        losing.sort_by_key(|c| c.bits());
        losing
    }
}

impl fmt::Debug for SimpleGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGame(n={}, min_winning=[", self.n)?;
        for (k, c) in self.min_winning.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "])")
    }
}

/// The game on an even number of players whose minimal winning coalitions
/// are the consecutive pairs `{2i-1, 2i}`.
pub fn pairs_game(n: usize) -> Result<SimpleGame, GameError> {
    if n == 0 {
        return Err(GameError::NoPlayers);
    }
    if !n.is_multiple_of(2) {
        return Err(GameError::OddN(n));
    }
    let family = (0..n / 2)
        .map(|i| Coalition::from_bits(0b11 << (2 * i)))
        .collect();
    SimpleGame::new(n, family)
}

/// Player 1 alone decides the game.
pub fn dictator(n: usize) -> Result<SimpleGame, GameError> {
    SimpleGame::new(n, vec![Coalition::from_bits(1)])
}

/// Only the grand coalition wins.
pub fn unanimity(n: usize) -> Result<SimpleGame, GameError> {
    if n == 0 {
        return Err(GameError::NoPlayers);
    }
    if n > MAX_PLAYERS {
        return Err(GameError::TooManyPlayers(n));
    }
    SimpleGame::new(n, vec![Coalition::full(n)])
}

/// Weighted voting game description: nonnegative weights with quota
/// normalized to 1, so a coalition wins iff its total weight reaches 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGameSpec {
    n: usize,
    weights: RatVector,
}

impl WeightedGameSpec {
    pub fn new(n: usize, weights: RatVector) -> Result<Self, GameError> {
        if n == 0 {
            return Err(GameError::NoPlayers);
        }
        if n > MAX_PLAYERS {
            return Err(GameError::TooManyPlayers(n));
        }
        if weights.len() != n {
            return Err(GameError::WeightCountMismatch {
                expected: n,
                got: weights.len(),
            });
        }
        if !weights.is_nonnegative() {
            return Err(GameError::NegativeWeight);
        }
        if weights.total() < Rat::one() {
            return Err(GameError::InfeasibleSpec);
        }
        Ok(WeightedGameSpec { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &RatVector {
        &self.weights
    }
}

/// Realizes a weighted spec as a simple game: the minimal coalitions whose
/// weight reaches the quota.
pub fn from_weighted(spec: &WeightedGameSpec) -> Result<SimpleGame, GameError> {
    let n = spec.n;
    let family = if n <= COVER_SCAN_LIMIT {
        minimal_winning_by_scan(spec)
    } else {
        minimal_winning_by_dfs(spec)
    };
    if family.is_empty() {
        // weights(N) >= 1 is validated at construction, so N always wins
        return Err(GameError::InfeasibleSpec);
    }
    SimpleGame::new(n, family)
}

fn weight_reaches_quota(spec: &WeightedGameSpec, c: Coalition) -> bool {
    spec.weights.masked_sum(c.bits()) >= Rat::one()
}

fn minimal_winning_by_scan(spec: &WeightedGameSpec) -> Vec<Coalition> {
    let limit: u64 = 1u64 << spec.n;
    let mut family = Vec::new();
    for bits in 1..limit {
        let c = Coalition::from_bits(bits as u32);
        if weight_reaches_quota(spec, c)
            && c
                .iter_players0()
                .all(|i| !weight_reaches_quota(spec, c.without_player0(i)))
        {
            family.push(c);
        }
    }
    family
}

/// Depth-first enumeration of minimal quota-reaching coalitions, pruning
/// branches whose remaining total weight cannot reach the quota.
fn minimal_winning_by_dfs(spec: &WeightedGameSpec) -> Vec<Coalition> {
    let n = spec.n;
    // suffix_total[k] = total weight of players k..n-1
    let mut suffix_total = vec![Rat::zero(); n + 1];
    for k in (0..n).rev() {
        suffix_total[k] = &suffix_total[k + 1] + &spec.weights[k];
    }
    let mut family = Vec::new();
    let mut stack = vec![(0usize, Coalition::EMPTY, Rat::zero())];
    while let Some((k, c, w)) = stack.pop() {
        if w >= Rat::one() {
            if c.iter_players0()
                .all(|i| !weight_reaches_quota(spec, c.without_player0(i)))
            {
                family.push(c);
            }
            continue;
        }
        if k == n || &w + &suffix_total[k] < Rat::one() {
            continue;
        }
        stack.push((k + 1, c, w.clone()));
        let w_in = &w + &spec.weights[k];
        stack.push((k + 1, c.with_player0(k), w_in));
    }
    family
}

/// Deterministic random monotone game.
///
/// Draws `2n` candidate coalitions, each player included independently with
/// probability `density` (clamped to `[0.05, 0.95]`), then reduces to the
/// minimal antichain. The same `(n, seed, density)` always reproduces the
/// same game bit-exactly.
pub fn random_game(n: usize, seed: u64, density: f64) -> Result<SimpleGame, GameError> {
    if n == 0 {
        return Err(GameError::NoPlayers);
    }
    if n > MAX_PLAYERS {
        return Err(GameError::TooManyPlayers(n));
    }
    if n == 1 {
        return SimpleGame::new(1, vec![Coalition::from_bits(1)]);
    }
    let q = density.clamp(0.05, 0.95);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family = Vec::new();
    for _ in 0..(2 * n) {
        let mut bits = 0u32;
        for i in 0..n {
            if rng.random::<f64>() < q {
                bits |= 1 << i;
            }
        }
        if bits != 0 {
            family.push(Coalition::from_bits(bits));
        }
    }
    if family.is_empty() {
        family.push(Coalition::full(n));
    }
    SimpleGame::new(n, family)
}

/// Exact weighted-game constructor used in tests and the CLI.
pub fn weighted_game(n: usize, weights: Vec<Rat>) -> Result<SimpleGame, GameError> {
    let spec = WeightedGameSpec::new(n, RatVector::new(weights))?;
    from_weighted(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use proptest::prelude::*;

    fn c(players: &[usize], n: usize) -> Coalition {
        Coalition::from_players(players, n).unwrap()
    }

    #[test]
    fn pairs_game_families() {
        assert_eq!(
            pairs_game(4).unwrap().min_winning(),
            &[c(&[1, 2], 4), c(&[3, 4], 4)]
        );
        assert_eq!(pairs_game(2).unwrap().min_winning(), &[c(&[1, 2], 2)]);
        assert_eq!(
            pairs_game(6).unwrap().min_winning(),
            &[c(&[1, 2], 6), c(&[3, 4], 6), c(&[5, 6], 6)]
        );
        assert_eq!(pairs_game(3).unwrap_err(), GameError::OddN(3));
    }

    #[test]
    fn value_on_pairs() {
        let g = pairs_game(4).unwrap();
        assert!(g.value(c(&[1, 2], 4)));
        assert!(!g.value(c(&[1, 3], 4)));
        assert!(g.value(g.grand_coalition()));
        assert!(!g.value(Coalition::EMPTY));
    }

    #[test]
    fn normalize_removes_supersets() {
        let out = normalize_antichain(&[c(&[1, 2], 3), c(&[1, 2, 3], 3)]).unwrap();
        assert_eq!(out, vec![c(&[1, 2], 3)]);

        let out = normalize_antichain(&[c(&[1], 3), c(&[2], 3)]).unwrap();
        assert_eq!(out, vec![c(&[1], 3), c(&[2], 3)]);

        let out =
            normalize_antichain(&[c(&[1, 2], 3), c(&[2, 3], 3), c(&[1, 2, 3], 3)]).unwrap();
        assert_eq!(out, vec![c(&[1, 2], 3), c(&[2, 3], 3)]);
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert_eq!(normalize_antichain(&[]).unwrap_err(), GameError::EmptyFamily);
        assert_eq!(
            normalize_antichain(&[Coalition::EMPTY]).unwrap_err(),
            GameError::EmptyCoalition
        );
    }

    /// Independent brute force: minimal transversals by scanning all subsets
    /// and keeping those whose proper subsets all fail to be transversal.
    fn brute_minimal_covers(g: &SimpleGame) -> Vec<Coalition> {
        let limit = 1u64 << g.n();
        let mut out = Vec::new();
        for bits in 1..limit {
            let cand = Coalition::from_bits(bits as u32);
            let covers = g.min_winning().iter().all(|w| w.intersects(cand));
            if !covers {
                continue;
            }
            let strictly_minimal = cand.iter_players0().all(|i| {
                let smaller = cand.without_player0(i);
                !g.min_winning().iter().all(|w| w.intersects(smaller))
            });
            if strictly_minimal {
                out.push(cand);
            }
        }
        out.sort_by_key(|x| x.bits());
        out
    }

    #[test]
    fn minimal_covers_examples() {
        let g = pairs_game(4).unwrap();
        let expected = vec![c(&[1, 3], 4), c(&[2, 3], 4), c(&[1, 4], 4), c(&[2, 4], 4)];
        let mut expected_sorted = expected.clone();
        expected_sorted.sort_by_key(|x| x.bits());
        assert_eq!(g.minimal_covers(), expected_sorted);
        assert_eq!(brute_minimal_covers(&g), expected_sorted);

        let d = dictator(3).unwrap();
        assert_eq!(d.minimal_covers(), vec![c(&[1], 3)]);

        let u = unanimity(3).unwrap();
        assert_eq!(
            u.minimal_covers(),
            vec![c(&[1], 3), c(&[2], 3), c(&[3], 3)]
        );
    }

    #[test]
    fn maximal_losing_examples() {
        let g = pairs_game(4).unwrap();
        let mut expected = vec![c(&[2, 4], 4), c(&[2, 3], 4), c(&[1, 4], 4), c(&[1, 3], 4)];
        expected.sort_by_key(|x| x.bits());
        assert_eq!(g.maximal_losing(), expected);

        assert_eq!(dictator(3).unwrap().maximal_losing(), vec![c(&[2, 3], 3)]);

        let mut expected_u = vec![c(&[2, 3], 3), c(&[1, 3], 3), c(&[1, 2], 3)];
        expected_u.sort_by_key(|x| x.bits());
        assert_eq!(unanimity(3).unwrap().maximal_losing(), expected_u);
    }

    #[test]
    fn maximal_losing_is_losing_and_saturated() {
        for g in [
            pairs_game(6).unwrap(),
            dictator(5).unwrap(),
            unanimity(4).unwrap(),
            random_game(7, 11, 0.3).unwrap(),
        ] {
            for l in g.maximal_losing() {
                assert!(!g.value(l), "{l} should be losing in {g:?}");
                for i in 0..g.n() {
                    if !l.contains_player0(i) {
                        assert!(
                            g.value(l.with_player0(i)),
                            "{l} + player {} should win in {g:?}",
                            i + 1
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn transversal_construction_matches_scan() {
        for g in [
            pairs_game(8).unwrap(),
            unanimity(6).unwrap(),
            dictator(6).unwrap(),
            random_game(9, 3, 0.3).unwrap(),
            random_game(10, 4, 0.5).unwrap(),
        ] {
            assert_eq!(
                g.minimal_covers_scan(),
                g.minimal_covers_transversal(),
                "paths disagree on {g:?}"
            );
        }
    }

    #[test]
    fn blocker_involution_small() {
        for g in [
            pairs_game(6).unwrap(),
            dictator(4).unwrap(),
            unanimity(5).unwrap(),
            random_game(8, 5, 0.35).unwrap(),
            random_game(10, 6, 0.25).unwrap(),
        ] {
            let blocker_game = SimpleGame::new(g.n(), g.minimal_covers()).unwrap();
            assert_eq!(
                blocker_game.minimal_covers(),
                g.min_winning(),
                "blocker involution failed on {g:?}"
            );
        }
    }

    #[test]
    fn from_weighted_examples() {
        let g = weighted_game(3, vec![rat_int(1), rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(g.min_winning(), dictator(3).unwrap().min_winning());

        let g = weighted_game(3, vec![rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(
            g.min_winning(),
            &[c(&[1, 2], 3), c(&[1, 3], 3), c(&[2, 3], 3)]
        );

        let g = weighted_game(2, vec![rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(g.min_winning(), &[c(&[1, 2], 2)]);

        assert_eq!(
            weighted_game(2, vec![rat(1, 4), rat(1, 4)]).unwrap_err(),
            GameError::InfeasibleSpec
        );
    }

    #[test]
    fn from_weighted_dfs_matches_scan() {
        let specs = [
            (5, vec![rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5), rat(1, 6)]),
            (6, vec![rat(2, 3), rat(1, 6), rat(1, 6), rat(1, 6), rat(1, 6), rat(1, 6)]),
            (4, vec![rat_int(1), rat(1, 2), rat(1, 2), rat(1, 4)]),
        ];
        for (n, w) in specs {
            let spec = WeightedGameSpec::new(n, RatVector::new(w)).unwrap();
            let mut scan = minimal_winning_by_scan(&spec);
            let mut dfs = minimal_winning_by_dfs(&spec);
            scan.sort_by_key(|x| x.bits());
            dfs.sort_by_key(|x| x.bits());
            assert_eq!(scan, dfs);
        }
    }

    #[test]
    fn from_weighted_agrees_with_direct_threshold() {
        let spec = WeightedGameSpec::new(
            5,
            RatVector::new(vec![rat(1, 2), rat(1, 3), rat(1, 3), rat(1, 4), rat(1, 8)]),
        )
        .unwrap();
        let g = from_weighted(&spec).unwrap();
        for bits in 0..(1u64 << 5) {
            let cand = Coalition::from_bits(bits as u32);
            let direct = spec.weights().masked_sum(cand.bits()) >= rat_int(1);
            assert_eq!(g.value(cand), direct, "mismatch at {cand}");
        }
    }

    #[test]
    fn random_game_is_deterministic_and_valid() {
        let a = random_game(5, 1, 0.4).unwrap();
        let b = random_game(5, 1, 0.4).unwrap();
        assert_eq!(a, b);
        let other = random_game(5, 2, 0.4).unwrap();
        // both valid regardless of whether they differ
        for g in [&a, &other] {
            assert!(!g.min_winning().is_empty());
            for w in g.min_winning() {
                assert!(!w.is_empty());
                assert!(w.is_subset_of(g.grand_coalition()));
            }
        }
        assert_eq!(
            random_game(1, 99, 0.5).unwrap().min_winning(),
            &[Coalition::from_bits(1)]
        );
    }

    #[test]
    fn coalition_players_round_trip() {
        let co = c(&[1, 3, 4], 5);
        assert_eq!(co.players(), vec![1, 3, 4]);
        assert_eq!(co.complement_in(5).players(), vec![2, 5]);
        assert!(Coalition::from_players(&[6], 5).is_err());
        assert!(Coalition::from_players(&[0], 5).is_err());
    }

    proptest! {
        #[test]
        fn value_is_monotone(seed in 0u64..500, pair_seed in 0u64..1000) {
            let g = random_game(8, seed, 0.35).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(pair_seed);
            for _ in 0..20 {
                let small = rng.random_range(0u32..1 << 8);
                let extra = rng.random_range(0u32..1 << 8);
                let c_small = Coalition::from_bits(small);
                let c_big = Coalition::from_bits(small | extra);
                prop_assert!(g.value(c_small) <= g.value(c_big));
            }
        }

        #[test]
        fn normalize_is_idempotent(masks in proptest::collection::vec(1u32..(1 << 6), 1..12)) {
            let family: Vec<Coalition> = masks.into_iter().map(Coalition::from_bits).collect();
            let once = normalize_antichain(&family).unwrap();
            let twice = normalize_antichain(&once).unwrap();
            prop_assert_eq!(&once, &twice);
            // antichain: no member contains another
            for a in &once {
                for b in &once {
                    if a != b {
                        prop_assert!(!a.is_subset_of(*b));
                    }
                }
            }
        }
    }
}
