//! Builder/Painter online Ramsey games for a red `P_4` against a blue path.

pub mod builder;
pub mod canon;
pub mod game;
pub mod graph;
pub mod painter;
pub mod solver;
pub mod table;
pub mod verify;

pub use builder::{decompose_target, BuilderError, ConstructiveBuilder, TargetDecomposition};
pub use canon::{canonical_form, canonical_key, CanonicalForm, CanonicalKey};
pub use game::{run_game, Builder, GameConfig, GameError, GameStatus, GameTrace, Painter, Round};
pub use graph::{Color, ColoredEdge, ColoredGraph, GraphError, Vertex};
pub use painter::{
    blocking_color, BlockingPainter, ConstantPainter, MinimaxPainter, PainterSpec, RandomPainter,
};
pub use solver::{
    builder_moves_up_to_iso, solve_value, SolveResult, Solver, SolverConfig, SolverError,
};
pub use table::{StrategyTable, TableError};
pub use verify::{export_dot, verify_exhaustive, verify_sampled, VerificationReport, VerifyError};

/// `⌈(7(n−1)+2)/5⌉`, the number of rounds Builder needs to force a red
/// `P_4` or a blue `P_n`.
pub fn closed_form_budget(n: usize) -> usize {
    (7 * n.saturating_sub(1) + 2).div_ceil(5)
}
