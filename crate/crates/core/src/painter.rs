//! Painter policies.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::game::{GameConfig, Painter};
use crate::graph::{Color, ColoredGraph, Vertex};
use crate::solver::{Solver, SolverConfig, SolverError};

/// Red unless red would close a red `P_4` or a red cycle.
pub fn blocking_color(g: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
    let p4 = g.would_create_red_p4(u, v).unwrap_or(true);
    let cycle = g.would_create_red_cycle(u, v).unwrap_or(true);
    if p4 || cycle {
        Color::Blue
    } else {
        Color::Red
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BlockingPainter;

impl Painter for BlockingPainter {
    fn color(&mut self, g: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        blocking_color(g, u, v)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConstantPainter(pub Color);

impl Painter for ConstantPainter {
    fn color(&mut self, _: &ColoredGraph, _: Vertex, _: Vertex) -> Color {
        self.0
    }
}

/// Uniform coin flips from a seeded ChaCha stream.
#[derive(Debug, Clone)]
pub struct RandomPainter {
    rng: ChaCha8Rng,
}

impl RandomPainter {
    pub fn new(seed: u64) -> Self {
        RandomPainter {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Painter for RandomPainter {
    fn color(&mut self, _: &ColoredGraph, _: Vertex, _: Vertex) -> Color {
        if self.rng.gen::<bool>() {
            Color::Blue
        } else {
            Color::Red
        }
    }
}

/// Replays a fixed color sequence, then repeats `fallback`.
#[derive(Debug, Clone)]
pub struct ScriptedPainter {
    colors: Vec<Color>,
    pos: usize,
    fallback: Color,
}

impl ScriptedPainter {
    pub fn new(colors: Vec<Color>, fallback: Color) -> Self {
        ScriptedPainter {
            colors,
            pos: 0,
            fallback,
        }
    }
}

impl Painter for ScriptedPainter {
    fn color(&mut self, _: &ColoredGraph, _: Vertex, _: Vertex) -> Color {
        let c = self.colors.get(self.pos).copied().unwrap_or(self.fallback);
        self.pos += 1;
        c
    }
}

/// Optimal Painter for small games, backed by the exact solver: picks the
/// color after which Builder needs the most further rounds.
pub struct MinimaxPainter {
    solver: Solver,
    cap: usize,
}

impl MinimaxPainter {
    pub fn new(cfg: &GameConfig) -> Result<Self, SolverError> {
        Ok(MinimaxPainter {
            solver: Solver::new(SolverConfig::new(cfg.red_order, cfg.blue_order))?,
            cap: cfg.budget + 2,
        })
    }
}

/// One-shot form of [`MinimaxPainter`].
pub fn minimax_color(
    g: &ColoredGraph,
    u: Vertex,
    v: Vertex,
    cfg: &GameConfig,
) -> Result<Color, SolverError> {
    MinimaxPainter::new(cfg)?.try_color(g, u, v)
}

impl MinimaxPainter {
    pub fn try_color(
        &mut self,
        g: &ColoredGraph,
        u: Vertex,
        v: Vertex,
    ) -> Result<Color, SolverError> {
        self.solver.painter_color(g, u, v, self.cap)
    }
}

impl Painter for MinimaxPainter {
    fn color(&mut self, g: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        self.try_color(g, u, v)
            .unwrap_or_else(|_| blocking_color(g, u, v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown painter '{0}' (expected blocking, red, blue, random[:seed], minimax)")]
pub struct UnknownPainter(pub String);

/// CLI-facing painter name with optional seed, e.g. `random:7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PainterSpec {
    Blocking,
    Constant(Color),
    Random(u64),
    Minimax,
}

impl PainterSpec {
    pub fn build(self, cfg: &GameConfig) -> Result<Box<dyn Painter>, SolverError> {
        Ok(match self {
            PainterSpec::Blocking => Box::new(BlockingPainter),
            PainterSpec::Constant(c) => Box::new(ConstantPainter(c)),
            PainterSpec::Random(seed) => Box::new(RandomPainter::new(seed)),
            PainterSpec::Minimax => Box::new(MinimaxPainter::new(cfg)?),
        })
    }
}

impl FromStr for PainterSpec {
    type Err = UnknownPainter;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, seed) = match s.split_once(':') {
            Some((n, seed)) => (n, Some(seed)),
            None => (s, None),
        };
        let bad = || UnknownPainter(s.to_string());
        match (name, seed) {
            ("blocking", None) => Ok(PainterSpec::Blocking),
            ("minimax", None) => Ok(PainterSpec::Minimax),
            ("red", None) => Ok(PainterSpec::Constant(Color::Red)),
            ("blue", None) => Ok(PainterSpec::Constant(Color::Blue)),
            ("random", None) => Ok(PainterSpec::Random(0)),
            ("random", Some(x)) => x.parse().map(PainterSpec::Random).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for PainterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PainterSpec::Blocking => f.write_str("blocking"),
            PainterSpec::Constant(c) => write!(f, "{c}"),
            PainterSpec::Random(seed) => write!(f, "random:{seed}"),
            PainterSpec::Minimax => f.write_str("minimax"),
        }
    }
}
