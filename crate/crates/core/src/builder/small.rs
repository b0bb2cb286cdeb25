//! Small targets `P_4` … `P_7`, played from the shipped solver tables.

use std::sync::OnceLock;

use super::session::{desync, Session, Step};
use super::Phase;
use crate::graph::Vertex;
use crate::table::{builtin_table, StrategyTable};

fn table(n0: usize) -> Option<&'static StrategyTable> {
    static TABLES: OnceLock<Vec<Option<StrategyTable>>> = OnceLock::new();
    TABLES
        .get_or_init(|| (0..8).map(builtin_table).collect())
        .get(n0)?
        .as_ref()
}

pub(super) fn small_base(s: &mut Session<'_>, n0: usize) -> Step<Vec<Vertex>> {
    s.plan.phase = Phase::SmallBase;
    let Some(t) = table(n0) else {
        return Err(desync(format!("no strategy table for P_{n0}")));
    };
    loop {
        let (order, path) = s.board.longest_blue_path();
        if order >= n0 {
            s.plan.path = path.clone();
            return Ok(path);
        }
        let (u, v) = match t.lookup(&s.board) {
            Some(Ok(e)) => e,
            Some(Err(e)) => return Err(desync(e.to_string())),
            None => return Err(desync("board not covered by the strategy table")),
        };
        let next = s.board.next_vertex();
        for w in [u, v] {
            if w >= next {
                s.fresh();
            }
        }
        s.draw(u, v)?;
    }
}
