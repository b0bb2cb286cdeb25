//! Replay engine for Builder scripts.
//!
//! A script is ordinary sequential code that calls [`Session::draw`] for
//! every edge. Colors already answered by Painter are fed back in order;
//! the first unanswered draw stops the script with [`Halt::Need`], which
//! becomes Builder's next move. Scripts are rerun from the start on every
//! turn, so all branching on colors is plain `match`.

use super::{BuilderError, BuilderPlan};
use crate::graph::{Color, ColoredGraph, Vertex};

#[derive(Debug)]
pub(crate) enum Halt {
    Need(Vertex, Vertex),
    Fail(BuilderError),
}

impl From<BuilderError> for Halt {
    fn from(e: BuilderError) -> Self {
        Halt::Fail(e)
    }
}

pub(crate) type Step<T> = Result<T, Halt>;

pub(crate) fn desync(msg: impl Into<String>) -> Halt {
    Halt::Fail(BuilderError::PlanDesync(msg.into()))
}

pub(crate) struct Session<'a> {
    answers: &'a [Color],
    used: usize,
    pub board: ColoredGraph,
    pub plan: BuilderPlan,
}

impl<'a> Session<'a> {
    pub fn new(start: ColoredGraph, answers: &'a [Color], plan: BuilderPlan) -> Self {
        Session {
            answers,
            used: 0,
            board: start,
            plan,
        }
    }

    pub fn fresh(&mut self) -> Vertex {
        self.board.add_vertex()
    }

    pub fn fresh_pair(&mut self) -> (Vertex, Vertex) {
        (self.fresh(), self.fresh())
    }

    pub fn draw(&mut self, u: Vertex, v: Vertex) -> Step<Color> {
        if self.board.check_new_edge(u, v).is_err() {
            return Err(desync(format!("script drew illegal edge {u}-{v}")));
        }
        let Some(&c) = self.answers.get(self.used) else {
            return Err(Halt::Need(u, v));
        };
        self.used += 1;
        self.board.insert_edge(u, v, c).expect("checked above");
        Ok(c)
    }

    /// Draws an edge Painter cannot color red without completing a red
    /// `P_4`; the claim is checked before drawing.
    pub fn force(&mut self, u: Vertex, v: Vertex) -> Step<()> {
        if !self.board.would_create_red_p4(u, v).unwrap_or(false) {
            return Err(desync(format!("edge {u}-{v} is not forced")));
        }
        self.plan.forced_rounds.push(self.board.edge_count() + 1);
        match self.draw(u, v)? {
            Color::Blue => Ok(()),
            Color::Red => Err(desync(format!("forced edge {u}-{v} came back red"))),
        }
    }

    pub fn answered(&self) -> usize {
        self.used
    }
}
