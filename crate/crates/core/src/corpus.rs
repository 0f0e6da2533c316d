//! The named desk-scale game collection shared by the test suites and the
//! CLI's batch tooling.
//!
//! Sizes are chosen so every game fits the brute-force oracle caps used in
//! cross-validation: random games draw small coalitions (low density) to
//! keep their losing families enumerable.

use crate::game::{
    dictator, pairs_game, random_game, unanimity, weighted_game, SimpleGame,
};
use crate::rat::rat;

pub struct CorpusGame {
    pub name: String,
    pub game: SimpleGame,
}

fn entry(name: impl Into<String>, game: SimpleGame) -> CorpusGame {
    CorpusGame {
        name: name.into(),
        game,
    }
}

/// The standard corpus: pairs games, dictators, unanimity games, weighted
/// specimens, and seeded random monotone games up to 12 players.
pub fn desk_corpus() -> Vec<CorpusGame> {
    let mut games = Vec::new();
    for n in [4usize, 6, 8, 10, 12] {
        games.push(entry(format!("pairs{n}"), pairs_game(n).unwrap()));
    }
    for n in [1usize, 3, 5, 8] {
        games.push(entry(format!("dictator{n}"), dictator(n).unwrap()));
    }
    for n in [2usize, 3, 5, 7, 9] {
        games.push(entry(format!("unanimity{n}"), unanimity(n).unwrap()));
    }
    games.push(entry(
        "weighted-majority5",
        weighted_game(5, vec![rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap(),
    ));
    games.push(entry(
        "weighted-veto4",
        weighted_game(4, vec![rat(3, 4), rat(1, 4), rat(1, 4), rat(1, 4)]).unwrap(),
    ));
    games.push(entry(
        "weighted-skew6",
        weighted_game(
            6,
            vec![rat(2, 3), rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 6), rat(1, 12)],
        )
        .unwrap(),
    ));
    for (n, seed) in [
        (4usize, 101u64),
        (5, 102),
        (6, 103),
        (7, 104),
        (8, 105),
        (9, 106),
        (10, 107),
        (11, 108),
        (12, 109),
        (12, 110),
    ] {
        games.push(entry(
            format!("random-n{n}-s{seed}"),
            random_game(n, seed, 0.28).unwrap(),
        ));
    }
    games
}

/// Corpus games with at most `max_n` players.
pub fn desk_corpus_up_to(max_n: usize) -> Vec<CorpusGame> {
    desk_corpus()
        .into_iter()
        .filter(|c| c.game.n() <= max_n)
        .collect()
}
