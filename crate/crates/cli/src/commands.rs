//! The four subcommands: analyze, crosscheck, generate, certify.

use crate::format::{
    combination_entries, game_hash, game_to_file, parse_game, parse_rat_list, parse_report,
    rat_list, serialize_game, serialize_report, AnalysisReport, CliError, GameFile, ParsedGame,
    Timings, FORMAT_VERSION,
};
use ctv_core::certify::{check_tight, CertifyError, TightnessCertificate, TIGHTNESS_LIMIT};
use ctv_core::game::{
    dictator, pairs_game, random_game, unanimity, Coalition, GameError, SimpleGame,
};
use ctv_core::minnorm::{min_norm_q, quarter_bound_report, MinNormError};
use ctv_core::oracle::{
    brute_alpha, brute_hull_check, brute_losing_max, CoalitionFamily, OracleError, FULL_LP_CAP,
};
use ctv_core::rat::{format_rat, parse_rat, rat, Rat, RatVector};
use ctv_core::threshold::{
    alpha_blocker_report, alpha_cutgen, alpha_full, max_weight_losing, ThresholdError,
    ThresholdReport,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

impl From<ThresholdError> for CliError {
    fn from(e: ThresholdError) -> Self {
        match e {
            ThresholdError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
        }
    }
}

impl From<MinNormError> for CliError {
    fn from(e: MinNormError) -> Self {
        match e {
            MinNormError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
        }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
            CertifyError::InternalContradiction(m) => CliError::InternalContradiction(m),
            CertifyError::NotTight => CliError::Validation(e.to_string()),
            CertifyError::Threshold(t) => t.into(),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::TooLarge(e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MethodChoice {
    Full,
    Cutgen,
    Blocker,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_game(path: &Path) -> Result<ParsedGame, CliError> {
    let parsed = parse_game(&read_file(path)?)?;
    for removed in &parsed.removed {
        eprintln!(
            "warning: {} dropped non-minimal coalition {:?}",
            path.display(),
            removed
        );
    }
    Ok(parsed)
}

fn method_name(m: MethodChoice) -> &'static str {
    match m {
        MethodChoice::Full => "full",
        MethodChoice::Cutgen => "cutgen",
        MethodChoice::Blocker => "blocker",
    }
}

fn solve_alpha(g: &SimpleGame, method: MethodChoice) -> Result<ThresholdReport, CliError> {
    Ok(match method {
        MethodChoice::Full => alpha_full(g)?,
        MethodChoice::Cutgen => alpha_cutgen(g)?,
        MethodChoice::Blocker => alpha_blocker_report(g)?,
    })
}

pub fn build_report(parsed: &ParsedGame, method: MethodChoice) -> Result<AnalysisReport, CliError> {
    let g = &parsed.game;
    let n = g.n();
    let mut timings = Timings::default();

    let started = Instant::now();
    let threshold = solve_alpha(g, method)?;
    // weightedness criterion: alpha < 1, no second solve needed
    let weighted = threshold.alpha < Rat::from_integer(1.into());
    timings.alpha_ms = started.elapsed().as_millis();

    let started = Instant::now();
    let min_norm = min_norm_q(g);
    let identity = quarter_bound_report(g);
    timings.min_norm_ms = started.elapsed().as_millis();

    let started = Instant::now();
    let (tightness_checked, tightness) = if n <= TIGHTNESS_LIMIT {
        let cert = check_tight(g)?;
        (
            true,
            cert.map(|c| crate::format::TightnessSection {
                winning_combination: combination_entries(&c.winning_combination),
                losing_combination: combination_entries(&c.losing_combination),
            }),
        )
    } else {
        (false, None)
    };
    timings.tightness_ms = started.elapsed().as_millis();

    Ok(AnalysisReport {
        format_version: FORMAT_VERSION.to_string(),
        name: parsed.file.name.clone(),
        game_hash: game_hash(g),
        game: game_to_file(g, parsed.file.name.clone()),
        alpha: format_rat(&threshold.alpha),
        n_over_4: format_rat(&rat(n as i64, 4)),
        is_weighted: weighted,
        allocation: rat_list(&threshold.allocation),
        worst_losing: threshold.worst_losing.players(),
        min_norm_point: rat_list(&min_norm.point),
        identity_check: [
            format_rat(&identity.0),
            format_rat(&identity.1),
            format_rat(&identity.2),
        ],
        tightness_checked,
        tightness,
        method: method_name(method).to_string(),
        iterations: threshold.iterations,
        timings_ms: timings,
    })
}

fn emit(text: &str, json_out: Option<&Path>) -> Result<(), CliError> {
    match json_out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_analyze(
    path: &Path,
    method: MethodChoice,
    json_out: Option<&Path>,
) -> Result<(), CliError> {
    let parsed = load_game(path)?;
    let report = build_report(&parsed, method)?;
    emit(&serialize_report(&report), json_out)
}

/// Batch mode: analyze every `.json` file in the directory (sorted), print
/// a one-line summary per file.
pub fn cmd_analyze_dir(dir: &Path, method: MethodChoice) -> Result<(), CliError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Validation(format!(
            "no .json files in {}",
            dir.display()
        )));
    }
    let mut first_error: Option<CliError> = None;
    for path in &paths {
        match load_game(path).and_then(|parsed| build_report(&parsed, method)) {
            Ok(report) => {
                let tight = report.tightness.is_some();
                println!(
                    "{}: alpha {} (n/4 {}), weighted {}, tight {}",
                    path.file_name().unwrap_or_default().to_string_lossy(),
                    report.alpha,
                    report.n_over_4,
                    report.is_weighted,
                    tight
                );
            }
            Err(e) => {
                println!(
                    "{}: ERROR {e}",
                    path.file_name().unwrap_or_default().to_string_lossy()
                );
                first_error.get_or_insert(e);
            }
        }
    }
    match first_error {
        None => Ok(()),
        Some(e) => Err(e),
    }
}

/// Re-runs every oracle-vs-optimized equivalence for one game.
pub fn cmd_crosscheck(path: &Path) -> Result<(), CliError> {
    let parsed = load_game(path)?;
    let g = &parsed.game;
    let n = g.n();
    if n > FULL_LP_CAP {
        return Err(CliError::TooLarge(format!(
            "crosscheck needs n <= {FULL_LP_CAP}, got {n}"
        )));
    }
    let mut failures = 0usize;
    let mut check = |label: &str, ok: bool| {
        println!("{}: {label}", if ok { "ok" } else { "MISMATCH" });
        if !ok {
            failures += 1;
        }
    };

    let full = alpha_full(g)?;
    let cut = alpha_cutgen(g)?;
    let blocker = ctv_core::threshold::alpha_via_blocker(g)?;
    let brute = brute_alpha(g)?;
    check("alpha: full == cutgen", full.alpha == cut.alpha);
    check("alpha: full == blocker", full.alpha == blocker);
    check("alpha: full == brute LP", full.alpha == brute);

    // blocker identity for the losing family
    let losing = g.maximal_losing();
    let mut complements: Vec<Coalition> = g
        .minimal_covers()
        .iter()
        .map(|c| c.complement_in(n))
        .collect();
    complements.sort_by_key(|c| c.bits());
    check("losing family: complements of minimal covers", losing == complements);

    // separation oracle vs brute scan on seeded allocations
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut separation_ok = true;
    for _ in 0..20 {
        let p: RatVector = (0..n)
            .map(|_| rat(rng.random_range(0..6), rng.random_range(1..4)))
            .collect();
        let (_, fast) = max_weight_losing(g, &p);
        let slow = brute_losing_max(g, &p)?;
        if fast != slow {
            separation_ok = false;
        }
    }
    check("separation oracle vs losing scan (20 allocations)", separation_ok);

    // hull memberships agree with the tightness gate
    let tight = full.alpha == rat(n as i64, 4);
    let winning_hull = brute_hull_check(
        &RatVector::constant(n, &rat(2, n as i64)),
        CoalitionFamily::Winning,
        g,
    )?;
    let losing_hull = brute_hull_check(
        &RatVector::constant(n, &rat(1, 2)),
        CoalitionFamily::Losing,
        g,
    )?;
    check(
        "tightness iff both hull memberships",
        tight == (winning_hull && losing_hull),
    );
    if n <= TIGHTNESS_LIMIT {
        let cert = check_tight(g)?;
        check("certificate present iff tight", cert.is_some() == tight);
    }

    if failures == 0 {
        println!("crosscheck: PASS");
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!(
            "{failures} crosscheck(s) mismatched"
        )))
    }
}

pub struct GenerateParams {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub density: f64,
    pub weights: Option<String>,
}

pub fn cmd_generate(params: &GenerateParams, out: Option<&Path>) -> Result<(), CliError> {
    let name = match params.family.as_str() {
        "pairs" | "dictator" | "unanimity" => format!("{}{}", params.family, params.n),
        "random" => format!("random{}-s{}", params.n, params.seed),
        "weighted" => format!("weighted{}", params.n),
        other => {
            return Err(CliError::Validation(format!(
                "unknown family {other:?} (expected pairs, dictator, unanimity, weighted, random)"
            )))
        }
    };
    let file: GameFile = match params.family.as_str() {
        "weighted" => {
            let csv = params.weights.as_ref().ok_or_else(|| {
                CliError::Validation("family `weighted` needs --weights \"a/b,c/d,...\"".into())
            })?;
            let weights: Result<Vec<Rat>, _> =
                csv.split(',').map(|s| parse_rat(s.trim())).collect();
            let weights = weights.map_err(|e| CliError::Validation(e.to_string()))?;
            if weights.len() != params.n {
                return Err(CliError::Validation(format!(
                    "expected {} weights, got {}",
                    params.n,
                    weights.len()
                )));
            }
            // validate (nonnegative, total >= 1) before writing the file
            let spec = ctv_core::game::WeightedGameSpec::new(
                params.n,
                RatVector::new(weights.clone()),
            )?;
            let _ = ctv_core::game::from_weighted(&spec)?;
            GameFile {
                format_version: FORMAT_VERSION.to_string(),
                name: Some(name),
                n: params.n,
                minimal_winning: None,
                weights: Some(weights.iter().map(format_rat).collect()),
            }
        }
        family => {
            let game = match family {
                "pairs" => pairs_game(params.n),
                "dictator" => dictator(params.n),
                "unanimity" => unanimity(params.n),
                "random" => random_game(params.n, params.seed, params.density),
                _ => unreachable!("family validated above"),
            }
            .map_err(cli_game_error)?;
            game_to_file(&game, Some(name))
        }
    };
    emit(&serialize_game(&file), out)
}

fn cli_game_error(e: GameError) -> CliError {
    match e {
        GameError::TooManyPlayers(_) => CliError::TooLarge(e.to_string()),
        other => CliError::Validation(other.to_string()),
    }
}

/// Re-verifies a stored report: the embedded game reproduces the hash, the
/// allocation is feasible and attains alpha (replayed through the losing
/// scan when enumerable), the identity check holds, and any stored
/// tightness certificate passes full verification.
pub fn cmd_certify(path: &Path) -> Result<(), CliError> {
    let report = parse_report(&read_file(path)?)?;
    let game_text = serialize_game(&report.game);
    let parsed = parse_game(&game_text)?;
    let g = &parsed.game;
    let n = g.n();
    let mut failures = 0usize;
    let mut check = |label: &str, ok: bool| {
        println!("{}: {label}", if ok { "ok" } else { "MISMATCH" });
        if !ok {
            failures += 1;
        }
    };

    check("game hash matches content", game_hash(g) == report.game_hash);

    let alpha = parse_rat(&report.alpha).map_err(|e| CliError::Validation(e.to_string()))?;
    let allocation = parse_rat_list(&report.allocation)?;
    check("allocation length", allocation.len() == n);
    let feasible = allocation.is_nonnegative()
        && g.min_winning()
            .iter()
            .all(|w| allocation.masked_sum(w.bits()) >= Rat::from_integer(1.into()));
    check("allocation feasible", feasible);

    let worst = Coalition::from_players(&report.worst_losing, n)?;
    check("worst coalition is losing", !g.value(worst));
    check(
        "worst coalition attains alpha",
        allocation.masked_sum(worst.bits()) == alpha,
    );
    if n <= ctv_core::oracle::LOSING_SCAN_CAP {
        let replayed = brute_losing_max(g, &allocation)?;
        check("allocation replays to alpha", replayed == alpha);
    }

    let first =
        parse_rat(&report.identity_check[0]).map_err(|e| CliError::Validation(e.to_string()))?;
    let second =
        parse_rat(&report.identity_check[1]).map_err(|e| CliError::Validation(e.to_string()))?;
    let third =
        parse_rat(&report.identity_check[2]).map_err(|e| CliError::Validation(e.to_string()))?;
    check("identity check: first == second", first == second);
    check(
        "identity check: alpha <= value <= n/4",
        alpha <= first && first <= third && third == rat(n as i64, 4),
    );

    match &report.tightness {
        Some(section) => {
            let rebuild = |entries: &[crate::format::CombinationEntry]| {
                entries
                    .iter()
                    .map(|e| {
                        Ok((
                            Coalition::from_players(&e.coalition, n)?,
                            parse_rat(&e.weight)
                                .map_err(|e| CliError::Validation(e.to_string()))?,
                        ))
                    })
                    .collect::<Result<Vec<(Coalition, Rat)>, CliError>>()
            };
            let cert = TightnessCertificate {
                winning_combination: rebuild(&section.winning_combination)?,
                losing_combination: rebuild(&section.losing_combination)?,
            };
            check(
                "stored tightness certificate verifies",
                ctv_core::certify::verify_certificate(g, &cert),
            );
            check("alpha equals n/4 for a tight report", alpha == rat(n as i64, 4));
        }
        None => {
            if report.tightness_checked && n <= TIGHTNESS_LIMIT {
                check(
                    "absence of certificate matches alpha != n/4",
                    alpha != rat(n as i64, 4),
                );
            }
        }
    }

    if failures == 0 {
        println!("certify: PASS");
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!(
            "{failures} certification check(s) failed"
        )))
    }
}
