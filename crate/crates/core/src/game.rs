//! One Builder-versus-Painter game: legality, the alternation loop, win
//! detection and the line-oriented trace format.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Color, ColoredGraph, GraphError, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameConfig {
    /// Order of the red path that ends the game for Builder (normally 4).
    pub red_order: usize,
    /// Order of the blue target path, `n = ℓ + 1`.
    pub blue_order: usize,
    /// Rounds Builder may use before the game is declared over.
    pub budget: usize,
}

impl GameConfig {
    pub fn new(red_order: usize, blue_order: usize, budget: usize) -> Result<Self, GameError> {
        if red_order < 2 || blue_order < 2 || budget < 1 {
            return Err(GameError::InvalidConfig {
                red_order,
                blue_order,
                budget,
            });
        }
        Ok(GameConfig {
            red_order,
            blue_order,
            budget,
        })
    }

    /// Red P4 versus blue `P_n` with the closed-form budget.
    pub fn for_target(n: usize) -> Result<Self, GameError> {
        GameConfig::new(4, n, crate::closed_form_budget(n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameStatus {
    Ongoing,
    RedWin(usize),
    BlueWin(usize),
    BudgetExceeded,
}

impl GameStatus {
    pub fn is_over(self) -> bool {
        self != GameStatus::Ongoing
    }

    /// True when Builder reached one of the targets.
    pub fn builder_won(self) -> bool {
        matches!(self, GameStatus::RedWin(_) | GameStatus::BlueWin(_))
    }

    pub fn round(self) -> Option<usize> {
        match self {
            GameStatus::RedWin(r) | GameStatus::BlueWin(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for GameStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameStatus::Ongoing => write!(f, "ongoing"),
            GameStatus::RedWin(r) => write!(f, "red-win {r}"),
            GameStatus::BlueWin(r) => write!(f, "blue-win {r}"),
            GameStatus::BudgetExceeded => write!(f, "budget-exceeded"),
        }
    }
}

impl FromStr for GameStatus {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GameError::CorruptTrace(format!("bad status `{s}`"));
        let mut parts = s.split_whitespace();
        let status = match parts.next() {
            Some("ongoing") => GameStatus::Ongoing,
            Some("budget-exceeded") => GameStatus::BudgetExceeded,
            Some(tag @ ("red-win" | "blue-win")) => {
                let r: usize = parts.next().and_then(|r| r.parse().ok()).ok_or_else(bad)?;
                if tag == "red-win" {
                    GameStatus::RedWin(r)
                } else {
                    GameStatus::BlueWin(r)
                }
            }
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(status)
    }
}

/// Status of a board after `rounds_used` rounds. A red target takes
/// precedence over a blue one when both are present.
pub fn status(g: &ColoredGraph, cfg: &GameConfig, rounds_used: usize) -> GameStatus {
    if g.has_red_path_of_order(cfg.red_order) {
        GameStatus::RedWin(rounds_used)
    } else if g.has_blue_path_of_order(cfg.blue_order) {
        GameStatus::BlueWin(rounds_used)
    } else if rounds_used >= cfg.budget {
        GameStatus::BudgetExceeded
    } else {
        GameStatus::Ongoing
    }
}

/// Status after adding `u`–`v` colored `c` to a board that was `Ongoing`.
/// Only paths through the new edge can be new, which keeps this cheap.
pub fn status_after(
    g: &ColoredGraph,
    cfg: &GameConfig,
    rounds_used: usize,
    c: Color,
) -> GameStatus {
    let target_hit = match c {
        Color::Red => g.has_red_path_of_order(cfg.red_order),
        Color::Blue => g.has_blue_path_of_order(cfg.blue_order),
    };
    if target_hit {
        return match c {
            Color::Red => GameStatus::RedWin(rounds_used),
            Color::Blue => GameStatus::BlueWin(rounds_used),
        };
    }
    if rounds_used >= cfg.budget {
        GameStatus::BudgetExceeded
    } else {
        GameStatus::Ongoing
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Round {
    pub index: usize,
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTrace {
    pub config: GameConfig,
    pub rounds: Vec<Round>,
    pub status: GameStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error(
        "invalid game config (red_order={red_order}, blue_order={blue_order}, budget={budget})"
    )]
    InvalidConfig {
        red_order: usize,
        blue_order: usize,
        budget: usize,
    },
    #[error("illegal builder move {u}-{v} in round {round}: {source}")]
    IllegalBuilderMove {
        round: usize,
        u: Vertex,
        v: Vertex,
        source: GraphError,
        partial: Box<GameTrace>,
    },
    #[error("builder strategy failed in round {round}: {message}")]
    StrategyFailure {
        round: usize,
        message: String,
        partial: Box<GameTrace>,
    },
    #[error("corrupt trace: {0}")]
    CorruptTrace(String),
}

/// Builder's side of the protocol. The engine hands over the public board
/// and the color Painter gave to the previous edge; the strategy keeps any
/// private state itself. An endpoint id at or past `board.next_vertex()`
/// names an untouched vertex.
pub trait Builder {
    fn next_edge(
        &mut self,
        board: &ColoredGraph,
        last_color: Option<Color>,
    ) -> Result<(Vertex, Vertex), String>;
}

/// Painter's side: colors the edge Builder just proposed.
pub trait Painter {
    fn color(&mut self, board: &ColoredGraph, u: Vertex, v: Vertex) -> Color;
}

impl<B: Builder + ?Sized> Builder for Box<B> {
    fn next_edge(
        &mut self,
        board: &ColoredGraph,
        last: Option<Color>,
    ) -> Result<(Vertex, Vertex), String> {
        (**self).next_edge(board, last)
    }
}

impl<P: Painter + ?Sized> Painter for Box<P> {
    fn color(&mut self, board: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        (**self).color(board, u, v)
    }
}

/// Allocates untouched endpoints and checks the edge is new. Builder may
/// introduce at most two new vertices per round.
pub(crate) fn place_edge(board: &mut ColoredGraph, u: Vertex, v: Vertex) -> Result<(), GraphError> {
    let limit = board.next_vertex() + 1;
    for w in [u, v] {
        if w > limit {
            return Err(GraphError::UnknownVertex(w));
        }
    }
    if u == v {
        return Err(GraphError::LoopEdge(u));
    }
    if board.has_edge(u, v) {
        return Err(GraphError::DuplicateEdge(u, v));
    }
    board.ensure_vertex(u.max(v));
    Ok(())
}

pub fn run_game<B, P>(
    builder: &mut B,
    painter: &mut P,
    cfg: GameConfig,
) -> Result<GameTrace, GameError>
where
    B: Builder + ?Sized,
    P: Painter + ?Sized,
{
    let mut board = ColoredGraph::new();
    let mut trace = GameTrace {
        config: cfg,
        rounds: Vec::new(),
        status: GameStatus::Ongoing,
    };
    let mut last = None;
    while trace.status == GameStatus::Ongoing {
        let round = trace.rounds.len() + 1;
        let (u, v) = match builder.next_edge(&board, last) {
            Ok(e) => e,
            Err(message) => {
                return Err(GameError::StrategyFailure {
                    round,
                    message,
                    partial: Box::new(trace),
                })
            }
        };
        if let Err(source) = place_edge(&mut board, u, v) {
            return Err(GameError::IllegalBuilderMove {
                round,
                u,
                v,
                source,
                partial: Box::new(trace),
            });
        }
        let c = painter.color(&board, u, v);
        board
            .insert_edge(u, v, c)
            .expect("edge was validated before coloring");
        trace.rounds.push(Round {
            index: round,
            u,
            v,
            color: c,
        });
        trace.status = status_after(&board, &cfg, round, c);
        last = Some(c);
    }
    Ok(trace)
}

/// Recomputes the status of a trace from the empty board.
pub fn replay(trace: &GameTrace) -> Result<GameStatus, GameError> {
    Ok(replay_board(trace)?.1)
}

/// Replays a trace and returns the final board with the recomputed status.
pub fn replay_board(trace: &GameTrace) -> Result<(ColoredGraph, GameStatus), GameError> {
    let cfg = trace.config;
    let mut board = ColoredGraph::new();
    let mut st = GameStatus::Ongoing;
    for (i, r) in trace.rounds.iter().enumerate() {
        if r.index != i + 1 {
            return Err(GameError::CorruptTrace(format!(
                "round {} carries index {}",
                i + 1,
                r.index
            )));
        }
        if st.is_over() {
            return Err(GameError::CorruptTrace(format!(
                "round {} played after the game ended",
                r.index
            )));
        }
        place_edge(&mut board, r.u, r.v)
            .and_then(|_| board.insert_edge(r.u, r.v, r.color))
            .map_err(|e| GameError::CorruptTrace(format!("round {}: {e}", r.index)))?;
        st = status_after(&board, &cfg, r.index, r.color);
    }
    Ok((board, st))
}

const TRACE_HEADER: &str = "ramsey-trace v1";

impl GameTrace {
    /// Line format: a header with the config, one `index u v color` line
    /// per round, and a closing `status ...` line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{TRACE_HEADER} red_order={} blue_order={} budget={}\n",
            self.config.red_order, self.config.blue_order, self.config.budget
        );
        for r in &self.rounds {
            out.push_str(&format!("{} {} {} {}\n", r.index, r.u, r.v, r.color));
        }
        out.push_str(&format!("status {}\n", self.status));
        out
    }

    pub fn parse(text: &str) -> Result<GameTrace, GameError> {
        let corrupt = |m: String| GameError::CorruptTrace(m);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| corrupt("empty trace".into()))?;
        let rest = header
            .strip_prefix(TRACE_HEADER)
            .ok_or_else(|| corrupt(format!("bad header `{header}`")))?;
        let mut fields = [None; 3];
        for kv in rest.split_whitespace() {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| corrupt(format!("bad header field `{kv}`")))?;
            let v: usize = v
                .parse()
                .map_err(|_| corrupt(format!("bad header value `{kv}`")))?;
            let slot = match k {
                "red_order" => 0,
                "blue_order" => 1,
                "budget" => 2,
                _ => return Err(corrupt(format!("unknown header field `{k}`"))),
            };
            fields[slot] = Some(v);
        }
        let [Some(r), Some(b), Some(budget)] = fields else {
            return Err(corrupt("header misses a field".into()));
        };
        let config = GameConfig::new(r, b, budget)?;
        let mut rounds = Vec::new();
        let mut status = None;
        for line in lines {
            if status.is_some() {
                return Err(corrupt(format!("content after status line: `{line}`")));
            }
            if let Some(s) = line.strip_prefix("status ") {
                status = Some(s.trim().parse()?);
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                [i, u, v, c] => (|| {
                    Some(Round {
                        index: i.parse().ok()?,
                        u: u.parse().ok()?,
                        v: v.parse().ok()?,
                        color: Color::parse(c)?,
                    })
                })(),
                _ => None,
            };
            rounds.push(parsed.ok_or_else(|| corrupt(format!("bad round line `{line}`")))?);
        }
        let status = status.ok_or_else(|| corrupt("missing status line".into()))?;
        Ok(GameTrace {
            config,
            rounds,
            status,
        })
    }

    /// Parses, replays and checks that the recorded status is reproduced.
    pub fn parse_verified(text: &str) -> Result<GameTrace, GameError> {
        let t = GameTrace::parse(text)?;
        let st = replay(&t)?;
        if st != t.status {
            return Err(GameError::CorruptTrace(format!(
                "recorded status `{}` but replay gives `{st}`",
                t.status
            )));
        }
        Ok(t)
    }

    /// The first `len` rounds as a trace of its own, with recomputed status.
    pub fn prefix(&self, len: usize) -> Result<GameTrace, GameError> {
        let mut t = GameTrace {
            config: self.config,
            rounds: self.rounds[..len.min(self.rounds.len())].to_vec(),
            status: GameStatus::Ongoing,
        };
        t.status = replay(&t)?;
        Ok(t)
    }
}
