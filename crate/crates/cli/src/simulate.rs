//! `simulate`: seeded matches, one trace file each, and a summary table.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use holegames::board::Owner;
use holegames::breaker::unblocked_hole;
use holegames::game::{replay, run_match_observed, GameConfig, MatchResult, Status};
use holegames::geom::int;
use holegames::maker::{round_bound, BichromStripMaker};
use holegames::oracle::HoleRule;
use holegames::players::{breaker_by_name, maker_by_name, PlayerSpec};
use holegames::schedule::ceil_u64;

use crate::args::SimulateArgs;

/// One played seed.
#[derive(Debug, Clone)]
pub struct GameRow {
    pub seed: u64,
    pub status: &'static str,
    pub maker_rounds: u64,
    /// The guaranteed number of Maker rounds, for strategies that have one.
    pub bound: Option<u64>,
    pub points: usize,
    pub replay_ok: bool,
    /// `None` when no bound applies.
    pub bound_ok: Option<bool>,
    pub breaker_turns_checked: usize,
    pub breaker_turns_blocked: usize,
    pub breaker_report_ok: bool,
    pub error: Option<String>,
    pub trace_file: PathBuf,
}

impl GameRow {
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !self.replay_ok {
            v.push("replay".to_string());
        }
        if self.bound_ok == Some(false) {
            v.push("round bound".to_string());
        }
        if self.breaker_turns_blocked < self.breaker_turns_checked {
            v.push("blocking".to_string());
        }
        if !self.breaker_report_ok {
            v.push("breaker invariants".to_string());
        }
        if let Some(e) = &self.error {
            v.push(e.clone());
        }
        v
    }
}

#[derive(Debug, Clone)]
pub struct Summary {
    pub rows: Vec<GameRow>,
    pub dir: PathBuf,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.violations().is_empty())
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>6}  {:<10} {:>6} {:>6} {:>6}  {:<10} checks",
            "seed", "status", "rounds", "bound", "points", "blocking"
        );
        for r in &self.rows {
            let bound = r.bound.map_or("-".to_string(), |b| b.to_string());
            let blocking = if r.breaker_turns_checked == 0 {
                "-".to_string()
            } else {
                format!("{}/{}", r.breaker_turns_blocked, r.breaker_turns_checked)
            };
            let v = r.violations();
            let checks = if v.is_empty() { "ok".to_string() } else { v.join("; ") };
            let _ = writeln!(
                s,
                "{:>6}  {:<10} {:>6} {:>6} {:>6}  {:<10} {checks}",
                r.seed, r.status, r.maker_rounds, bound, r.points, blocking
            );
        }
        let n = self.rows.len();
        let count = |label: &str| self.rows.iter().filter(|r| r.status == label).count();
        let _ = writeln!(
            s,
            "games {n}: maker_won {}, capped {}, ongoing {}",
            count("maker_won"),
            count("capped"),
            count("ongoing")
        );
        let replayed = self.rows.iter().filter(|r| r.replay_ok).count();
        let _ = writeln!(s, "replay {replayed}/{n}");
        let bounded: Vec<bool> = self.rows.iter().filter_map(|r| r.bound_ok).collect();
        if !bounded.is_empty() {
            let within = bounded.iter().filter(|b| **b).count();
            let _ = writeln!(s, "within round bound {within}/{}", bounded.len());
        }
        let checked: usize = self.rows.iter().map(|r| r.breaker_turns_checked).sum();
        if checked > 0 {
            let blocked: usize = self.rows.iter().map(|r| r.breaker_turns_blocked).sum();
            let _ = writeln!(
                s,
                "blocking invariant {blocked}/{checked} Breaker turns ({:.1}%)",
                100.0 * blocked as f64 / checked as f64
            );
        }
        let errors = self.rows.iter().filter(|r| r.error.is_some()).count();
        let _ = writeln!(s, "strategy errors {errors}");
        let _ = writeln!(s, "traces in {}", self.dir.display());
        s
    }
}

/// Maker rounds the strategy is guaranteed to win within, if it has a
/// guarantee for this game.
pub fn maker_bound(maker: &str, config: &GameConfig) -> Result<Option<u64>> {
    let spec = PlayerSpec::parse(maker)?;
    let param = |key: &str| -> Result<usize> {
        spec.params
            .get(key)
            .map_or(Ok(1), |v| v.parse().with_context(|| format!("{key}={v}")))
    };
    let s = config.bias.ratio();
    Ok(match spec.name.as_str() {
        "strips-1-1" | "strips-biased" if config.variant == HoleRule::Monochromatic => {
            let s = if spec.name == "strips-1-1" { int(1) } else { s };
            Some(ceil_u64(&round_bound(config.k, param("t")?, &s)))
        }
        "strips-bichrom" if config.variant == HoleRule::Bichromatic => {
            Some(BichromStripMaker::total_maker_points(config.k, param("r")?, &s) as u64)
        }
        _ => None,
    })
}

fn file_stem(args: &SimulateArgs, seed: u64) -> String {
    let raw = format!(
        "{:?}-k{}-{}-vs-{}-seed{seed}",
        args.variant, args.k, args.maker, args.breaker
    )
    .to_lowercase();
    raw.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

pub fn play(args: &SimulateArgs, seed: u64, dir: &Path) -> Result<GameRow> {
    let mut config = GameConfig::new(args.variant.into(), args.k, args.bias.clone()).with_seed(seed);
    if let Some(n) = args.max_points {
        config = config.with_max_points(n);
    }
    let mut maker = maker_by_name(&args.maker, &config)?;
    let mut breaker = breaker_by_name(&args.breaker, &config)?;
    let guarding = PlayerSpec::parse(&args.breaker)?.name == "perturbed-polygon";
    let (mut checked, mut blocked) = (0, 0);
    let res: MatchResult = run_match_observed(config.clone(), maker.as_mut(), breaker.as_mut(), &mut |state, owner| {
        if guarding && owner == Owner::Breaker {
            checked += 1;
            if unblocked_hole(state.board(), state.config.k).is_none() {
                blocked += 1;
            }
        }
        Ok(())
    })?;

    let trace_file = dir.join(format!("{}.json", file_stem(args, seed)));
    std::fs::write(&trace_file, res.trace.to_json()).with_context(|| format!("writing {}", trace_file.display()))?;

    let replay_ok = replay(&res.trace).is_ok_and(|s| s.status() == res.state.status());
    let maker_rounds = res.state.maker_turns();
    let bound = maker_bound(&args.maker, &config)?;
    let status = res.state.status();
    let bound_ok = bound.map(|b| match status {
        Status::MakerWon { .. } => maker_rounds <= b,
        // the cap may stop the game before the guarantee is due
        Status::Capped => maker_rounds < b,
        Status::Ongoing => res.maker_goal && maker_rounds <= b,
    });
    let report = &res.trace.breaker_report;
    let breaker_report_ok = ["disks_disjoint", "guards_on_circles"]
        .iter()
        .all(|key| report.get(key).and_then(|v| v.as_bool()) != Some(false));
    Ok(GameRow {
        seed,
        status: status.label(),
        maker_rounds,
        bound,
        points: res.state.points().len(),
        replay_ok,
        bound_ok,
        breaker_turns_checked: checked,
        breaker_turns_blocked: blocked,
        breaker_report_ok,
        error: res.error,
        trace_file,
    })
}

pub fn simulate(args: &SimulateArgs, dir: PathBuf) -> Result<Summary> {
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let rows = args
        .seeds
        .clone()
        .map(|seed| play(args, seed, &dir))
        .collect::<Result<Vec<_>>>()?;
    Ok(Summary { rows, dir })
}
