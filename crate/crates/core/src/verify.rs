//! Budget verification of [`ConstructiveBuilder`] against every Painter reply
//! sequence, or a seeded sample of them, plus DOT export of traces.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::builder::{BuilderError, ConstructiveBuilder};
use crate::game::{
    place_edge, replay_board, run_game, status_after, GameConfig, GameError, GameStatus, GameTrace,
    Round,
};
use crate::graph::{Color, ColoredGraph, Vertex};
use crate::painter::RandomPainter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("budget {budget} too large for exhaustive search (limit {limit}); use sampled mode")]
    TooLarge { budget: usize, limit: usize },
    #[error(transparent)]
    Builder(#[from] BuilderError),
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub budget: usize,
    pub mode: Mode,
    pub max_rounds: usize,
    /// Leaves of the reply tree (exhaustive) or games played (sampled).
    pub branches: u64,
    /// Lexicographically first (red before blue) line reaching `max_rounds`.
    pub worst: GameTrace,
    /// First line that broke the budget or the strategy, if any.
    pub failure: Option<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub colors: Vec<Color>,
    pub reason: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.max_rounds <= self.budget
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    /// Human-readable summary followed by the worst trace.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mode = match self.mode {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Sampled { trials, seed } => format!("sampled ({trials} trials, seed {seed})"),
        };
        let _ = writeln!(
            out,
            "P_4 vs P_{}: {} verification, budget {}",
            self.n, mode, self.budget
        );
        let _ = writeln!(
            out,
            "{}: max rounds {} over {} branches",
            self.verdict(),
            self.max_rounds,
            self.branches
        );
        if let Some(f) = &self.failure {
            let _ = writeln!(out, "failure after {}: {}", colors_str(&f.colors), f.reason);
        }
        out.push_str("worst trace:\n");
        out.push_str(&self.worst.to_text());
        out
    }

    /// `key=value` lines.
    pub fn to_record(&self) -> String {
        let (mode, trials, seed) = match self.mode {
            Mode::Exhaustive => ("exhaustive", String::from("-"), String::from("-")),
            Mode::Sampled { trials, seed } => ("sampled", trials.to_string(), seed.to_string()),
        };
        let mut out = String::new();
        let _ = writeln!(out, "n={}", self.n);
        let _ = writeln!(out, "budget={}", self.budget);
        let _ = writeln!(out, "mode={mode}");
        let _ = writeln!(out, "trials={trials}");
        let _ = writeln!(out, "seed={seed}");
        let _ = writeln!(out, "max_rounds={}", self.max_rounds);
        let _ = writeln!(out, "branches={}", self.branches);
        let _ = writeln!(out, "worst_status={}", self.worst.status);
        let _ = writeln!(
            out,
            "worst_colors={}",
            colors_str(&trace_colors(&self.worst))
        );
        let _ = writeln!(out, "verdict={}", self.verdict());
        out
    }
}

fn colors_str(colors: &[Color]) -> String {
    if colors.is_empty() {
        return "-".into();
    }
    colors
        .iter()
        .map(|c| match c {
            Color::Red => 'r',
            Color::Blue => 'b',
        })
        .collect()
}

fn trace_colors(t: &GameTrace) -> Vec<Color> {
    t.rounds.iter().map(|r| r.color).collect()
}

#[derive(Debug, Clone, Copy)]
pub struct ExhaustiveOptions {
    /// Largest budget accepted before reporting `TooLarge`.
    pub max_budget: usize,
    /// Reply-tree depth at which work is split across threads; 0 = serial.
    pub split_depth: usize,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            max_budget: 26,
            split_depth: 6,
        }
    }
}

pub fn verify_exhaustive(n: usize) -> Result<VerificationReport, VerifyError> {
    verify_exhaustive_with(n, ExhaustiveOptions::default())
}

/// Summary of one subtree, merged in depth-first order.
#[derive(Debug, Clone, Default)]
struct Tally {
    leaves: u64,
    worst: Option<(usize, Vec<Color>)>,
    failure: Option<Failure>,
}

impl Tally {
    fn leaf(&mut self, rounds: usize, colors: &[Color]) {
        self.leaves += 1;
        if self.worst.as_ref().is_none_or(|(r, _)| rounds > *r) {
            self.worst = Some((rounds, colors.to_vec()));
        }
    }

    fn merge(&mut self, other: Tally) {
        self.leaves += other.leaves;
        if let Some((r, c)) = other.worst {
            if self.worst.as_ref().is_none_or(|(mine, _)| r > *mine) {
                self.worst = Some((r, c));
            }
        }
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }
}

struct Explorer<'a> {
    builder: &'a ConstructiveBuilder,
    cfg: GameConfig,
}

enum Item {
    Done(Tally),
    Open(Vec<Color>, ColoredGraph),
}

impl Explorer<'_> {
    /// Depth-first search below `colors`; stops expanding once a failure
    /// is found. Nodes at depth `split` are returned unexplored.
    fn walk(
        &self,
        colors: &mut Vec<Color>,
        board: &ColoredGraph,
        split: Option<usize>,
        out: &mut Vec<Item>,
        tally: &mut Tally,
    ) {
        if tally.failure.is_some() {
            return;
        }
        if split == Some(colors.len()) {
            out.push(Item::Done(std::mem::take(tally)));
            out.push(Item::Open(colors.clone(), board.clone()));
            return;
        }
        let (u, v) = match self.builder.replay(colors) {
            Ok(r) => r.edge,
            Err(e) => {
                tally.failure = Some(Failure {
                    colors: colors.clone(),
                    reason: e.to_string(),
                });
                return;
            }
        };
        let mut base = board.clone();
        if let Err(e) = place_edge(&mut base, u, v) {
            tally.failure = Some(Failure {
                colors: colors.clone(),
                reason: format!("illegal move {u}-{v}: {e}"),
            });
            return;
        }
        let round = colors.len() + 1;
        for c in Color::BOTH {
            let mut child = base.clone();
            child.insert_edge(u, v, c).expect("placed above");
            colors.push(c);
            match status_after(&child, &self.cfg, round, c) {
                GameStatus::Ongoing => self.walk(colors, &child, split, out, tally),
                GameStatus::BudgetExceeded => {
                    tally.leaf(round, colors);
                    if tally.failure.is_none() {
                        tally.failure = Some(Failure {
                            colors: colors.clone(),
                            reason: "budget exhausted without a target".into(),
                        });
                    }
                }
                _ => tally.leaf(round, colors),
            }
            colors.pop();
            if tally.failure.is_some() {
                return;
            }
        }
    }
}

pub fn verify_exhaustive_with(
    n: usize,
    opts: ExhaustiveOptions,
) -> Result<VerificationReport, VerifyError> {
    let builder = ConstructiveBuilder::new(n)?;
    let cfg = GameConfig::for_target(n)?;
    if cfg.budget > opts.max_budget {
        return Err(VerifyError::TooLarge {
            budget: cfg.budget,
            limit: opts.max_budget,
        });
    }
    let ex = Explorer {
        builder: &builder,
        cfg,
    };
    let mut items = Vec::new();
    let mut tally = Tally::default();
    let split = (opts.split_depth > 0).then_some(opts.split_depth);
    ex.walk(
        &mut Vec::new(),
        &ColoredGraph::new(),
        split,
        &mut items,
        &mut tally,
    );
    items.push(Item::Done(tally));

    let parts: Vec<Tally> = items
        .into_par_iter()
        .map(|item| match item {
            Item::Done(t) => t,
            Item::Open(mut colors, board) => {
                let mut t = Tally::default();
                let mut sink = Vec::new();
                ex.walk(&mut colors, &board, None, &mut sink, &mut t);
                t
            }
        })
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total.merge(p);
    }
    let (max_rounds, worst_colors) = total.worst.unwrap_or((0, Vec::new()));
    Ok(VerificationReport {
        n,
        budget: cfg.budget,
        mode: Mode::Exhaustive,
        max_rounds,
        branches: total.leaves,
        worst: play_line(n, &worst_colors)?,
        failure: total.failure,
    })
}

/// Plays the builder against a fixed color sequence.
pub fn play_line(n: usize, colors: &[Color]) -> Result<GameTrace, VerifyError> {
    let mut b = ConstructiveBuilder::new(n)?;
    let cfg = GameConfig::for_target(n)?;
    let mut p = crate::painter::ScriptedPainter::new(colors.to_vec(), Color::Blue);
    let mut t = match run_game(&mut b, &mut p, cfg) {
        Ok(t) => t,
        Err(GameError::StrategyFailure { partial, .. })
        | Err(GameError::IllegalBuilderMove { partial, .. }) => *partial,
        Err(e) => return Err(e.into()),
    };
    if t.rounds.len() > colors.len() {
        t = t.prefix(colors.len())?;
    }
    Ok(t)
}

pub fn verify_sampled(n: usize, trials: u64, seed: u64) -> Result<VerificationReport, VerifyError> {
    let cfg = GameConfig::for_target(n)?;
    ConstructiveBuilder::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| rng.gen()).collect();
    let results: Vec<Result<GameTrace, Failure>> = seeds
        .par_iter()
        .map(|&s| {
            let mut b = ConstructiveBuilder::new(n).expect("checked above");
            let mut p = RandomPainter::new(s);
            run_game(&mut b, &mut p, cfg).map_err(|e| Failure {
                colors: match &e {
                    GameError::StrategyFailure { partial, .. }
                    | GameError::IllegalBuilderMove { partial, .. } => trace_colors(partial),
                    _ => Vec::new(),
                },
                reason: e.to_string(),
            })
        })
        .collect();
    let mut worst: Option<GameTrace> = None;
    let mut failure = None;
    for r in results {
        match r {
            Ok(t) => {
                if t.status == GameStatus::BudgetExceeded && failure.is_none() {
                    failure = Some(Failure {
                        colors: trace_colors(&t),
                        reason: "budget exhausted without a target".into(),
                    });
                }
                let better = match &worst {
                    None => true,
                    Some(w) => {
                        t.rounds.len() > w.rounds.len()
                            || (t.rounds.len() == w.rounds.len()
                                && trace_colors(&t) < trace_colors(w))
                    }
                };
                if better {
                    worst = Some(t);
                }
            }
            Err(f) => {
                if failure.is_none() {
                    failure = Some(f);
                }
            }
        }
    }
    let worst = worst.unwrap_or(GameTrace {
        config: cfg,
        rounds: Vec::new(),
        status: GameStatus::Ongoing,
    });
    Ok(VerificationReport {
        n,
        budget: cfg.budget,
        mode: Mode::Sampled { trials, seed },
        max_rounds: worst.rounds.len(),
        branches: trials,
        worst,
        failure,
    })
}

/// Graphviz rendering: blue edges solid, red edges dashed, each edge
/// labelled with its round. `labels` adds text to chosen vertices.
pub fn export_dot(trace: &GameTrace) -> Result<String, GameError> {
    export_dot_labeled(trace, &HashMap::new())
}

pub fn export_dot_labeled(
    trace: &GameTrace,
    labels: &HashMap<Vertex, String>,
) -> Result<String, GameError> {
    let (board, status) = replay_board(trace)?;
    if status != trace.status {
        return Err(GameError::CorruptTrace(format!(
            "recorded {} but replay gives {status}",
            trace.status
        )));
    }
    let mut out = String::from("graph game {\n  node [shape=circle];\n");
    for v in board.touched_vertices() {
        let label = match labels.get(&v) {
            Some(l) => format!("{v}\\n{l}"),
            None => v.to_string(),
        };
        let _ = writeln!(out, "  {v} [label=\"{label}\"];");
    }
    for Round { index, u, v, color } in &trace.rounds {
        let style = match color {
            Color::Blue => "solid",
            Color::Red => "dashed",
        };
        let _ = writeln!(
            out,
            "  {u} -- {v} [color={color}, style={style}, label=\"{index}\"];"
        );
    }
    out.push_str("}\n");
    Ok(out)
}
