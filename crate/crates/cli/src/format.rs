//! Game files and analysis reports: the JSON wire formats.
//!
//! Rationals travel as canonical `"a/b"` strings, never floats. Player
//! indices are 1-based in files. A game file carries either
//! `minimal_winning` or `weights` (quota normalized to 1), not both.
//! Reports embed the normalized game so they can be re-verified without
//! the original input.

use ctv_core::game::{
    from_weighted, normalize_antichain, Coalition, GameError, SimpleGame, WeightedGameSpec,
};
use ctv_core::rat::{format_rat, parse_rat, Rat, RatVector};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;

pub const FORMAT_VERSION: &str = "1";

/// Error classes map one-to-one onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: unreadable or syntactically invalid input.
    Parse(String),
    /// Exit 3: well-formed input violating a game invariant.
    Validation(String),
    /// Exit 4: a size cap was exceeded.
    TooLarge(String),
    /// Exit 5: a state the theory rules out; indicates a solver defect.
    InternalContradiction(String),
    /// Exit 1: a re-verification found a mismatch.
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::TooLarge(_) => 4,
            CliError::InternalContradiction(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::TooLarge(m) => write!(f, "too large: {m}"),
            CliError::InternalContradiction(m) => write!(f, "internal contradiction: {m}"),
            CliError::CheckFailed(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// On-disk game description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GameFile {
    pub format_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_winning: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
}

/// A parsed game, its file, and any normalization applied on the way in.
#[derive(Debug)]
pub struct ParsedGame {
    pub game: SimpleGame,
    pub file: GameFile,
    /// Coalitions dropped by antichain normalization (1-based indices).
    pub removed: Vec<Vec<usize>>,
}

pub fn parse_game(text: &str) -> Result<ParsedGame, CliError> {
    let file: GameFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if file.format_version != FORMAT_VERSION {
        return Err(CliError::Validation(format!(
            "unsupported format_version {:?} (expected {:?})",
            file.format_version, FORMAT_VERSION
        )));
    }
    match (&file.minimal_winning, &file.weights) {
        (Some(_), Some(_)) => Err(CliError::Validation(
            "a game file carries either minimal_winning or weights, not both".into(),
        )),
        (None, None) => Err(CliError::Validation(
            "a game file needs minimal_winning or weights".into(),
        )),
        (Some(lists), None) => {
            let mut family = Vec::with_capacity(lists.len());
            for players in lists {
                if players.is_empty() {
                    return Err(CliError::Validation(
                        "the empty coalition is not allowed (it would make v(\u{2205}) = 1)"
                            .into(),
                    ));
                }
                family.push(Coalition::from_players(players, file.n)?);
            }
            let normalized = normalize_antichain(&family)?;
            let removed: Vec<Vec<usize>> = family
                .iter()
                .filter(|c| !normalized.contains(c))
                .map(|c| c.players())
                .collect();
            let game = SimpleGame::new(file.n, family)?;
            Ok(ParsedGame {
                game,
                file,
                removed,
            })
        }
        (None, Some(weight_strings)) => {
            let mut weights = Vec::with_capacity(weight_strings.len());
            for s in weight_strings {
                weights.push(
                    parse_rat(s).map_err(|e| CliError::Validation(e.to_string()))?,
                );
            }
            let spec = WeightedGameSpec::new(file.n, RatVector::new(weights))?;
            let game = from_weighted(&spec)?;
            Ok(ParsedGame {
                game,
                file,
                removed: Vec::new(),
            })
        }
    }
}

/// Canonical file for a game: normalized minimal winning lists, 1-based.
pub fn game_to_file(game: &SimpleGame, name: Option<String>) -> GameFile {
    GameFile {
        format_version: FORMAT_VERSION.to_string(),
        name,
        n: game.n(),
        minimal_winning: Some(game.min_winning().iter().map(|c| c.players()).collect()),
        weights: None,
    }
}

pub fn serialize_game(file: &GameFile) -> String {
    let mut out = serde_json::to_string_pretty(file).expect("game files serialize");
    out.push('\n');
    out
}

/// Content hash of the normalized game (player count plus winning family).
pub fn game_hash(game: &SimpleGame) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("v{FORMAT_VERSION};n={};", game.n()).as_bytes());
    for c in game.min_winning() {
        hasher.update(format!("{:08x};", c.bits()).as_bytes());
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CombinationEntry {
    pub coalition: Vec<usize>,
    pub weight: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TightnessSection {
    pub winning_combination: Vec<CombinationEntry>,
    pub losing_combination: Vec<CombinationEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct Timings {
    pub alpha_ms: u128,
    pub min_norm_ms: u128,
    pub tightness_ms: u128,
}

/// Self-contained analysis result; everything needed to re-verify the
/// claims is embedded. `timings_ms` is the one non-deterministic field and
/// is ignored by comparisons.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub format_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub game_hash: String,
    pub game: GameFile,
    pub alpha: String,
    pub n_over_4: String,
    pub is_weighted: bool,
    pub allocation: Vec<String>,
    pub worst_losing: Vec<usize>,
    pub min_norm_point: Vec<String>,
    /// `(<p*,1-p*>, n/4 - ||(1/2)1 - p*||^2, n/4)`, all exact.
    pub identity_check: [String; 3],
    pub tightness_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tightness: Option<TightnessSection>,
    pub method: String,
    pub iterations: usize,
    pub timings_ms: Timings,
}

pub fn serialize_report(report: &AnalysisReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("reports serialize");
    out.push('\n');
    out
}

pub fn parse_report(text: &str) -> Result<AnalysisReport, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn rat_list(v: &RatVector) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

pub fn parse_rat_list(strings: &[String]) -> Result<RatVector, CliError> {
    let mut out = Vec::with_capacity(strings.len());
    for s in strings {
        out.push(parse_rat(s).map_err(|e| CliError::Validation(e.to_string()))?);
    }
    Ok(RatVector::new(out))
}

pub fn combination_entries(pairs: &[(Coalition, Rat)]) -> Vec<CombinationEntry> {
    pairs
        .iter()
        .map(|(c, w)| CombinationEntry {
            coalition: c.players(),
            weight: format_rat(w),
        })
        .collect()
}
