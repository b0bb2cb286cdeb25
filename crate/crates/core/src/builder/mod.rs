//! The constructive Builder for red `P_4` against blue `P_n`.
//!
//! `n` is split into a base (`P_{5k}`, `P_{5k+2}` or a small table-driven
//! target) plus a number of four-vertex path extensions. See
//! [`decompose_target`].

mod connect;
mod extend;
pub mod gadget;
mod lemma;
mod plus_two;
mod session;
mod small;
mod units;

use std::fmt;

use thiserror::Error;

use crate::game::Builder;
use crate::graph::{Color, ColoredGraph, Vertex};
pub use gadget::{Class, Gadget, GadgetKind, Shape, UnitKind};
use session::{Halt, Session, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuilderError {
    #[error("target P_{0} is too small (need n >= 4)")]
    TargetTooSmall(usize),
    #[error("plan desync: {0}")]
    PlanDesync(String),
    #[error("contract violated: {0}")]
    ContractViolation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    /// Blue `P_{5k}` in `7k − 1` rounds.
    FiveK(usize),
    /// Blue `P_{5k+2}` in `7k + 2` rounds.
    FiveKPlus2(usize),
    /// Blue `P_n0` from a solver table, `4 ≤ n0 ≤ 7`.
    SmallBase(usize),
}

impl Base {
    pub fn order(self) -> usize {
        match self {
            Base::FiveK(k) => 5 * k,
            Base::FiveKPlus2(k) => 5 * k + 2,
            Base::SmallBase(n) => n,
        }
    }

    pub fn budget(self) -> usize {
        match self {
            Base::FiveK(k) => 7 * k - 1,
            Base::FiveKPlus2(k) => 7 * k + 2,
            Base::SmallBase(n) => [5, 6, 8, 9][n - 4],
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::FiveK(k) => write!(f, "FiveK({k})"),
            Base::FiveKPlus2(k) => write!(f, "FiveKPlus2({k})"),
            Base::SmallBase(n) => write!(f, "SmallBase({n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TargetDecomposition {
    pub n: usize,
    pub base: Base,
    pub lemma_count: usize,
    pub budget: usize,
}

pub fn decompose_target(n: usize) -> Result<TargetDecomposition, BuilderError> {
    if n < 4 {
        return Err(BuilderError::TargetTooSmall(n));
    }
    let mut m = n;
    let mut lemmas = 0;
    let base = loop {
        match m {
            4..=7 => break Base::SmallBase(m),
            _ if m % 5 == 0 => break Base::FiveK(m / 5),
            _ if m % 5 == 2 => break Base::FiveKPlus2((m - 2) / 5),
            _ => {
                m -= 4;
                lemmas += 1;
            }
        }
    };
    Ok(TargetDecomposition {
        n,
        base,
        lemma_count: lemmas,
        budget: base.budget() + 6 * lemmas,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Phase {
    #[default]
    Start,
    Preamble,
    UnitCreation,
    Extension,
    Connection,
    SmallBase,
    LemmaExtension(usize),
    Done,
}

/// Builder's bookkeeping, rebuilt on every turn by replaying the script.
#[derive(Debug, Clone, Default)]
pub struct BuilderPlan {
    pub phase: Phase,
    /// Good units in creation order.
    pub units: Vec<Gadget>,
    pub bad: Option<Gadget>,
    /// Units created before unit creation proper (from the preamble).
    pub preamble_units: usize,
    /// Gadgets in creation order.
    pub gadgets: Vec<Gadget>,
    /// `counts[i]` is the number of `G_i`.
    pub counts: [usize; 19],
    /// Red edge set aside by the preamble.
    pub aside: Option<(Vertex, Vertex)>,
    /// Current main blue path.
    pub path: Vec<Vertex>,
    /// Rounds (edge ordinals on the board) whose edge was drawn as forced.
    pub forced_rounds: Vec<usize>,
    /// Whether every blue edge lay on the main path after connection
    /// (only recorded, never enforced).
    pub all_blue_on_path: Option<bool>,
}

impl BuilderPlan {
    /// `c`: units carried by the chained gadgets.
    pub fn c(&self) -> usize {
        self.gadgets
            .iter()
            .map(|g| match g.class() {
                Some(Class::Chain(w)) => w,
                _ => 0,
            })
            .sum()
    }

    pub fn c_prime(&self) -> usize {
        self.c() + self.counts[1] + self.counts[2] + self.count_class(Class::Seven)
    }

    /// `t`: number of chained gadgets.
    pub fn t(&self) -> usize {
        self.gadgets
            .iter()
            .filter(|g| matches!(g.class(), Some(Class::Chain(_))))
            .count()
    }

    pub fn count_class(&self, class: Class) -> usize {
        self.gadgets
            .iter()
            .filter(|g| g.class() == Some(class))
            .count()
    }

    pub fn good_units(&self) -> usize {
        self.preamble_units
            + self
                .units
                .iter()
                .filter_map(|u| u.unit_kind())
                .map(UnitKind::weight)
                .sum::<usize>()
    }

    /// Structural units represented by the gadgets: `Σ c_i + 2 Σ c_{10..12}`.
    pub fn gadget_units(&self) -> usize {
        self.gadgets
            .iter()
            .map(|g| match g.class() {
                Some(Class::Chain(w)) => w,
                _ => 1,
            })
            .sum()
    }
}

/// After unit creation: `k` good units, or `k − 1` good units and a
/// nonempty bad unit, all vertex-disjoint.
pub fn unit_creation_contract(plan: &BuilderPlan, k: usize) -> Result<(), BuilderError> {
    let good = plan.good_units();
    let ok = good == k || (good + 1 == k && plan.bad.is_some());
    if !ok {
        return Err(BuilderError::ContractViolation(format!(
            "{good} good units, bad unit {:?}, k = {k}",
            plan.bad.as_ref().map(|b| b.shape)
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for u in plan.units.iter().chain(plan.bad.iter()) {
        for v in u.vertices() {
            if !seen.insert(v) {
                return Err(BuilderError::ContractViolation(format!(
                    "units share vertex {v}"
                )));
            }
        }
    }
    Ok(())
}

/// The path must be blue edge by edge and reach `order` vertices.
pub(crate) fn check_path(
    g: &ColoredGraph,
    path: &[Vertex],
    order: usize,
) -> Result<(), BuilderError> {
    for w in path.windows(2) {
        if g.color(w[0], w[1]) != Some(Color::Blue) {
            return Err(BuilderError::ContractViolation(format!(
                "path edge {}-{} is not blue",
                w[0], w[1]
            )));
        }
    }
    let distinct: std::collections::HashSet<_> = path.iter().collect();
    if distinct.len() != path.len() || path.len() < order {
        return Err(BuilderError::ContractViolation(format!(
            "path has {} vertices ({} distinct), expected {order}",
            path.len(),
            distinct.len()
        )));
    }
    Ok(())
}

/// Snapshot after replaying the script on a color history.
#[derive(Debug, Clone)]
pub struct Replay {
    pub edge: (Vertex, Vertex),
    pub board: ColoredGraph,
    pub plan: BuilderPlan,
}

/// The staged Builder strategy for a fixed target.
#[derive(Debug, Clone)]
pub struct ConstructiveBuilder {
    decomposition: TargetDecomposition,
    history: Vec<Color>,
    plan: BuilderPlan,
}

impl ConstructiveBuilder {
    pub fn new(n: usize) -> Result<Self, BuilderError> {
        Ok(ConstructiveBuilder {
            decomposition: decompose_target(n)?,
            history: Vec::new(),
            plan: BuilderPlan::default(),
        })
    }

    pub fn decomposition(&self) -> &TargetDecomposition {
        &self.decomposition
    }

    /// Plan as of the latest move.
    pub fn plan(&self) -> &BuilderPlan {
        &self.plan
    }

    /// Builder's move after Painter answered `history`, with the board and
    /// plan the script expects at that point.
    pub fn replay(&self, history: &[Color]) -> Result<Replay, BuilderError> {
        let d = self.decomposition;
        let mut s = Session::new(ColoredGraph::new(), history, BuilderPlan::default());
        let res = play(&mut s, &d);
        finish(s, history, res)
    }

    /// The finished plan for a history after which the script has built
    /// its blue path.
    pub fn outcome(&self, history: &[Color]) -> Result<BuilderPlan, BuilderError> {
        let d = self.decomposition;
        let mut s = Session::new(ColoredGraph::new(), history, BuilderPlan::default());
        match play(&mut s, &d) {
            Ok(()) => Ok(s.plan),
            Err(Halt::Need(..)) => Err(BuilderError::PlanDesync("script still running".into())),
            Err(Halt::Fail(e)) => Err(e),
        }
    }
}

fn finish(s: Session<'_>, history: &[Color], res: Step<()>) -> Result<Replay, BuilderError> {
    match res {
        Err(Halt::Need(u, v)) => {
            if s.answered() != history.len() {
                return Err(BuilderError::PlanDesync(format!(
                    "script used {} of {} answers",
                    s.answered(),
                    history.len()
                )));
            }
            Ok(Replay {
                edge: (u, v),
                board: s.board,
                plan: s.plan,
            })
        }
        Err(Halt::Fail(e)) => Err(e),
        Ok(()) => Err(BuilderError::PlanDesync(
            "blue target reached but the game went on".into(),
        )),
    }
}

impl Builder for ConstructiveBuilder {
    fn next_edge(
        &mut self,
        board: &ColoredGraph,
        last: Option<Color>,
    ) -> Result<(Vertex, Vertex), String> {
        if let Some(c) = last {
            self.history.push(c);
        }
        let r = self.replay(&self.history).map_err(|e| e.to_string())?;
        if r.board.edges() != board.edges() {
            return Err(
                BuilderError::PlanDesync("board differs from the plan's record".into()).to_string(),
            );
        }
        self.plan = r.plan;
        Ok(r.edge)
    }
}

fn play(s: &mut Session<'_>, d: &TargetDecomposition) -> Step<()> {
    let mut path = match d.base {
        Base::FiveK(k) => connect::five_k(s, k)?,
        Base::FiveKPlus2(k) => plus_two::five_k_plus_two(s, k)?,
        Base::SmallBase(n0) => small::small_base(s, n0)?,
    };
    check_path(&s.board, &path, d.base.order())?;
    for i in 0..d.lemma_count {
        s.plan.phase = Phase::LemmaExtension(i);
        path = lemma::extend(s, &path)?;
        check_path(&s.board, &path, d.base.order() + 4 * (i + 1))?;
        s.plan.path = path.clone();
    }
    s.plan.phase = Phase::Done;
    Ok(())
}

/// Outcome of running the four-vertex extension from a given board.
#[derive(Debug, Clone)]
pub enum LemmaStep {
    /// Builder's next edge.
    Move(Vertex, Vertex),
    /// Script finished with this blue path.
    Done(Vec<Vertex>),
}

/// Runs the extension script on `start`, whose blue path `path` has at
/// least two vertices, against the answers in `history`.
pub fn lemma_step(
    start: &ColoredGraph,
    path: &[Vertex],
    history: &[Color],
) -> Result<LemmaStep, BuilderError> {
    let mut s = Session::new(start.clone(), history, BuilderPlan::default());
    match lemma::extend(&mut s, path) {
        Ok(p) => Ok(LemmaStep::Done(p)),
        Err(Halt::Need(u, v)) => Ok(LemmaStep::Move(u, v)),
        Err(Halt::Fail(e)) => Err(e),
    }
}
