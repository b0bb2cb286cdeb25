//! Exact game-tree search for small `(P_m, P_n)` online Ramsey games.
//!
//! States are boards up to isomorphism (see [`crate::canon`]); a
//! transposition table stores, per state, the largest depth known to lose
//! and the smallest depth known to win. The value of the game is found by
//! iterative deepening on the round budget.

use std::collections::HashMap;

use thiserror::Error;

use crate::canon::{canonical_form, canonical_key, marked_edge_key, CanonicalKey};
use crate::graph::{Color, ColoredGraph, Vertex};
use crate::table::{StrategyTable, TableEndpoint, TableMove};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("transposition table exceeded {limit} states; raise the limit or lower the budget")]
    BudgetTooLarge { limit: usize },
    #[error("state too large for exact search (blue order {blue_order}, at most {max} supported)")]
    StateTooLarge { blue_order: usize, max: usize },
    #[error("unsupported game: red order {0} (2..=4 supported)")]
    Unsupported(usize),
}

/// Largest blue target the solver accepts.
pub const MAX_BLUE_ORDER: usize = 7;

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub red_order: usize,
    pub blue_order: usize,
    /// Upper bound on stored states before giving up with `BudgetTooLarge`.
    pub memo_limit: usize,
    /// When false every query is searched from scratch (small games only).
    pub transpositions: bool,
}

impl SolverConfig {
    pub fn new(red_order: usize, blue_order: usize) -> Self {
        SolverConfig {
            red_order,
            blue_order,
            memo_limit: 40_000_000,
            transpositions: true,
        }
    }
}

/// Result of a value computation.
#[derive(Debug, Clone)]
pub struct SolveResult {
    /// Exact online Ramsey number, or `None` when `max_budget` was too small.
    pub value: Option<usize>,
    pub nodes_expanded: u64,
    pub states_stored: usize,
    pub table: Option<StrategyTable>,
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    /// Builder cannot force a win within this many rounds.
    lose_upto: u8,
    /// Builder can force a win within this many rounds.
    win_within: u8,
}

/// Candidate move on a board; `None` endpoints are untouched vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveRep {
    pub u: Option<Vertex>,
    pub v: Option<Vertex>,
}

impl MoveRep {
    /// Concrete endpoints on `g`, allocating untouched ids in order.
    pub fn resolve(self, g: &ColoredGraph) -> (Vertex, Vertex) {
        let next = g.next_vertex();
        match (self.u, self.v) {
            (Some(u), Some(v)) => (u, v),
            (Some(u), None) => (u, next),
            (None, Some(v)) => (next, v),
            (None, None) => (next, next + 1),
        }
    }
}

/// One representative per orbit of legal new edges under the
/// color-preserving automorphisms of `g`. Isolated vertices count as
/// untouched. Ordered existing–existing, then untouched–existing, then
/// untouched–untouched.
pub fn builder_moves_up_to_iso(g: &ColoredGraph) -> Vec<MoveRep> {
    let touched: Vec<Vertex> = g.touched_vertices().collect();
    let classes = refinement_classes(g, &touched);
    let mut candidates: Vec<(MoveRep, (u32, u32))> = Vec::new();
    for (i, &a) in touched.iter().enumerate() {
        for &b in &touched[i + 1..] {
            if !g.has_edge(a, b) {
                let (ca, cb) = (classes[a as usize], classes[b as usize]);
                candidates.push((
                    MoveRep {
                        u: Some(a),
                        v: Some(b),
                    },
                    (ca.min(cb), ca.max(cb)),
                ));
            }
        }
    }
    for &a in &touched {
        candidates.push((
            MoveRep {
                u: Some(a),
                v: None,
            },
            (classes[a as usize], u32::MAX),
        ));
    }
    candidates.push((MoveRep { u: None, v: None }, (u32::MAX, u32::MAX)));

    // Moves in different refinement-class pairs are never equivalent, so the
    // exact orbit test only runs inside a group.
    let mut groups: HashMap<(u32, u32), usize> = HashMap::new();
    for (_, cls) in &candidates {
        *groups.entry(*cls).or_default() += 1;
    }
    let mut seen: HashMap<(u32, u32), Vec<CanonicalKey>> = HashMap::new();
    let mut reps = Vec::new();
    for (m, cls) in candidates {
        if groups[&cls] == 1 {
            reps.push(m);
            continue;
        }
        let key = marked_edge_key(g, m.u, m.v);
        let bucket = seen.entry(cls).or_default();
        if !bucket.contains(&key) {
            bucket.push(key);
            reps.push(m);
        }
    }
    reps
}

/// Equitable-partition classes of the touched vertices; an isomorphism
/// invariant, so equal-orbit vertices always share a class.
fn refinement_classes(g: &ColoredGraph, touched: &[Vertex]) -> Vec<u32> {
    let n = g.vertex_count();
    let mut cls = vec![u32::MAX; n];
    for &v in touched {
        cls[v as usize] = 0;
    }
    let mut count = 1;
    loop {
        let sigs: Vec<(u32, Vec<(u32, Color)>)> = touched
            .iter()
            .map(|&v| {
                let mut s: Vec<(u32, Color)> = g
                    .neighbors(v)
                    .iter()
                    .map(|&(w, c)| (cls[w as usize], c))
                    .collect();
                s.sort_unstable();
                (cls[v as usize], s)
            })
            .collect();
        let mut idx: Vec<usize> = (0..touched.len()).collect();
        idx.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut c = 0u32;
        for i in 0..idx.len() {
            if i > 0 && sigs[idx[i]] != sigs[idx[i - 1]] {
                c += 1;
            }
            cls[touched[idx[i]] as usize] = c;
        }
        let new_count = if touched.is_empty() {
            0
        } else {
            c as usize + 1
        };
        if new_count == count {
            return cls;
        }
        count = new_count;
    }
}

pub struct Solver {
    cfg: SolverConfig,
    memo: HashMap<CanonicalKey, Bounds>,
    nodes: u64,
}

/// What happens when Painter colors a move.
enum Outcome {
    BuilderWins,
    Continue(ColoredGraph),
}

impl Solver {
    pub fn new(cfg: SolverConfig) -> Result<Self, SolverError> {
        if !(2..=4).contains(&cfg.red_order) {
            return Err(SolverError::Unsupported(cfg.red_order));
        }
        if cfg.blue_order > MAX_BLUE_ORDER || cfg.blue_order < 2 {
            return Err(SolverError::StateTooLarge {
                blue_order: cfg.blue_order,
                max: MAX_BLUE_ORDER,
            });
        }
        Ok(Solver {
            cfg,
            memo: HashMap::new(),
            nodes: 0,
        })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.nodes
    }

    pub fn states_stored(&self) -> usize {
        self.memo.len()
    }

    /// True iff `g` already contains one of the targets.
    pub fn is_terminal(&self, g: &ColoredGraph) -> bool {
        g.has_red_path_of_order(self.cfg.red_order) || g.has_blue_path_of_order(self.cfg.blue_order)
    }

    fn outcome(&self, g: &ColoredGraph, u: Vertex, v: Vertex, c: Color) -> Outcome {
        let mut child = g.clone();
        child.ensure_vertex(u.max(v));
        child
            .insert_edge(u, v, c)
            .expect("candidate moves are legal");
        let hit = match c {
            Color::Red => child.has_red_path_of_order(self.cfg.red_order),
            Color::Blue => child.has_blue_path_of_order(self.cfg.blue_order),
        };
        if hit {
            Outcome::BuilderWins
        } else {
            Outcome::Continue(child)
        }
    }

    /// Whether Builder can force a target within `depth` more rounds from
    /// a non-terminal board `g`.
    pub fn wins_within(&mut self, g: &ColoredGraph, depth: usize) -> Result<bool, SolverError> {
        if depth == 0 {
            return Ok(false);
        }
        let depth8 = depth.min(u8::MAX as usize - 1) as u8;
        let key = canonical_key(g);
        if self.cfg.transpositions {
            if let Some(b) = self.memo.get(&key) {
                if depth8 <= b.lose_upto {
                    return Ok(false);
                }
                if depth8 >= b.win_within {
                    return Ok(true);
                }
            }
        }
        self.nodes += 1;
        let result = self.search(g, depth)?;
        if self.cfg.transpositions {
            if self.memo.len() >= self.cfg.memo_limit {
                return Err(SolverError::BudgetTooLarge {
                    limit: self.cfg.memo_limit,
                });
            }
            let entry = self.memo.entry(key).or_insert(Bounds {
                lose_upto: 0,
                win_within: u8::MAX,
            });
            if result {
                entry.win_within = entry.win_within.min(depth8);
            } else {
                entry.lose_upto = entry.lose_upto.max(depth8);
            }
        }
        Ok(result)
    }

    fn search(&mut self, g: &ColoredGraph, depth: usize) -> Result<bool, SolverError> {
        for m in builder_moves_up_to_iso(g) {
            if self.move_wins(g, m, depth)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// True iff both of Painter's answers to `m` leave Builder winning
    /// within `depth - 1` further rounds.
    fn move_wins(
        &mut self,
        g: &ColoredGraph,
        m: MoveRep,
        depth: usize,
    ) -> Result<bool, SolverError> {
        let (u, v) = m.resolve(g);
        let mut pending = Vec::with_capacity(2);
        for c in Color::BOTH {
            match self.outcome(g, u, v, c) {
                Outcome::BuilderWins => {}
                Outcome::Continue(child) => {
                    if depth == 1 {
                        return Ok(false);
                    }
                    pending.push(child);
                }
            }
        }
        for child in pending {
            if !self.wins_within(&child, depth - 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least number of rounds (at most `max_budget`) in which Builder can
    /// force a target from `g`; `Some(0)` for terminal boards.
    pub fn value_of(
        &mut self,
        g: &ColoredGraph,
        max_budget: usize,
    ) -> Result<Option<usize>, SolverError> {
        if self.is_terminal(g) {
            return Ok(Some(0));
        }
        for d in 1..=max_budget {
            if self.wins_within(g, d)? {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    /// A move from `g` that wins within its optimal value, if one exists
    /// within `max_budget`.
    pub fn best_move(
        &mut self,
        g: &ColoredGraph,
        max_budget: usize,
    ) -> Result<Option<(MoveRep, usize)>, SolverError> {
        let Some(value) = self.value_of(g, max_budget)? else {
            return Ok(None);
        };
        if value == 0 {
            return Ok(None);
        }
        for m in builder_moves_up_to_iso(g) {
            if self.move_wins(g, m, value)? {
                return Ok(Some((m, value)));
            }
        }
        unreachable!("a winning move exists at the optimal depth")
    }

    /// Extracts an optimal Builder strategy from the empty board into a
    /// table keyed by canonical board keys.
    pub fn extract_strategy(&mut self, value: usize) -> Result<StrategyTable, SolverError> {
        let mut table = StrategyTable::new(self.cfg.red_order, self.cfg.blue_order, value);
        let mut stack = vec![ColoredGraph::new()];
        while let Some(g) = stack.pop() {
            let form = canonical_form(&g, 0);
            if table.entries.contains_key(&form.key) {
                continue;
            }
            let Some((m, _)) = self.best_move(&g, value)? else {
                continue;
            };
            let (u, v) = m.resolve(&g);
            let pos = |x: Option<Vertex>| match x {
                Some(x) => TableEndpoint::Index(
                    form.order
                        .iter()
                        .position(|&y| y == x)
                        .expect("touched vertex") as u16,
                ),
                None => TableEndpoint::Fresh,
            };
            table.entries.insert(
                form.key.clone(),
                TableMove {
                    a: pos(m.u),
                    b: pos(m.v),
                },
            );
            for c in Color::BOTH {
                if let Outcome::Continue(child) = self.outcome(&g, u, v, c) {
                    stack.push(child);
                }
            }
        }
        Ok(table)
    }

    /// The color a value-maximizing Painter gives to `u`–`v` on `g`: the
    /// one leaving Builder the most rounds under optimal play. Ties go red.
    pub fn painter_color(
        &mut self,
        g: &ColoredGraph,
        u: Vertex,
        v: Vertex,
        cap: usize,
    ) -> Result<Color, SolverError> {
        let mut best = (Color::Red, 0usize);
        for (i, c) in Color::BOTH.into_iter().enumerate() {
            let val = match self.outcome(g, u, v, c) {
                Outcome::BuilderWins => 0,
                Outcome::Continue(child) => self.value_of(&child, cap)?.unwrap_or(cap + 1),
            };
            if i == 0 || val > best.1 {
                best = (c, val);
            }
        }
        Ok(best.0)
    }
}

/// Solves r̃(P_m, P_n) by iterative deepening up to `max_budget` rounds.
pub fn solve_value(m: usize, n: usize, max_budget: usize) -> Result<SolveResult, SolverError> {
    solve_with(SolverConfig::new(m, n), max_budget, false)
}

pub fn solve_with(
    cfg: SolverConfig,
    max_budget: usize,
    extract: bool,
) -> Result<SolveResult, SolverError> {
    let mut solver = Solver::new(cfg)?;
    let value = solver.value_of(&ColoredGraph::new(), max_budget)?;
    let table = match (extract, value) {
        (true, Some(v)) => Some(solver.extract_strategy(v)?),
        _ => None,
    };
    Ok(SolveResult {
        value,
        nodes_expanded: solver.nodes_expanded(),
        states_stored: solver.states_stored(),
        table,
    })
}

/// Convenience: solve and extract a verified-by-construction table.
pub fn extract_strategy(
    m: usize,
    n: usize,
    max_budget: usize,
) -> Result<Option<StrategyTable>, SolverError> {
    Ok(solve_with(SolverConfig::new(m, n), max_budget, true)?.table)
}
