//! Strategy tables: canonical board key → Builder move.
//!
//! Text format, one record per line:
//!
//! ```text
//! ramsey-strategy-table v1
//! red_order=4 blue_order=5 value=6
//! <hex key> <a> <b>
//! end
//! ```
//!
//! where `a`/`b` are positions in the canonical vertex order or `F` for a
//! fresh vertex.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::canon::{canonical_form, CanonicalKey};
use crate::graph::{Color, ColoredGraph, Vertex};

const HEADER: &str = "ramsey-strategy-table v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no table entry for board after {rounds} rounds")]
    Missing { rounds: usize },
    #[error("table move {0:?} is not legal on the board")]
    IllegalMove(TableMove),
    #[error("table needs {rounds} rounds on some line, declared value {value}")]
    TooDeep { rounds: usize, value: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableEndpoint {
    Index(u16),
    Fresh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableMove {
    pub a: TableEndpoint,
    pub b: TableEndpoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyTable {
    pub red_order: usize,
    pub blue_order: usize,
    pub value: usize,
    pub entries: BTreeMap<CanonicalKey, TableMove>,
}

/// Summary of an exhaustive table replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableCheck {
    pub leaves: u64,
    pub max_rounds: usize,
}

impl StrategyTable {
    pub fn new(red_order: usize, blue_order: usize, value: usize) -> Self {
        StrategyTable {
            red_order,
            blue_order,
            value,
            entries: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The concrete move for `g`, or `None` when `g` has no entry.
    pub fn lookup(&self, g: &ColoredGraph) -> Option<Result<(Vertex, Vertex), TableError>> {
        let form = canonical_form(g, 0);
        let mv = *self.entries.get(&form.key)?;
        let mut next = g.next_vertex();
        let mut place = |e: TableEndpoint| -> Option<Vertex> {
            match e {
                TableEndpoint::Index(i) => form.order.get(i as usize).copied(),
                TableEndpoint::Fresh => {
                    next += 1;
                    Some(next - 1)
                }
            }
        };
        let (Some(u), Some(v)) = (place(mv.a), place(mv.b)) else {
            return Some(Err(TableError::IllegalMove(mv)));
        };
        if u == v || g.has_edge(u, v) {
            return Some(Err(TableError::IllegalMove(mv)));
        }
        Some(Ok((u, v)))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(
            out,
            "red_order={} blue_order={} value={}",
            self.red_order, self.blue_order, self.value
        );
        for (k, m) in &self.entries {
            let _ = writeln!(
                out,
                "{} {} {}",
                k.to_hex(),
                endpoint_str(m.a),
                endpoint_str(m.b)
            );
        }
        out.push_str("end\n");
        out
    }

    pub fn parse(text: &str) -> Result<Self, TableError> {
        let err = |line: usize, message: &str| TableError::Parse {
            line,
            message: message.to_string(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        match lines.next() {
            Some((_, HEADER)) => {}
            _ => return Err(err(1, "missing header")),
        }
        let (ln, meta) = lines.next().ok_or_else(|| err(2, "missing parameters"))?;
        let mut params = [None; 3];
        for field in meta.split_whitespace() {
            let (name, val) = field.split_once('=').ok_or_else(|| err(ln, "bad field"))?;
            let slot = match name {
                "red_order" => 0,
                "blue_order" => 1,
                "value" => 2,
                _ => return Err(err(ln, "unknown field")),
            };
            params[slot] = Some(val.parse::<usize>().map_err(|_| err(ln, "bad number"))?);
        }
        let [Some(m), Some(n), Some(value)] = params else {
            return Err(err(ln, "incomplete parameters"));
        };
        let mut table = StrategyTable::new(m, n, value);
        let mut ended = false;
        for (ln, line) in lines {
            if line.is_empty() {
                continue;
            }
            if ended {
                return Err(err(ln, "content after end"));
            }
            if line == "end" {
                ended = true;
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [key, a, b] = parts[..] else {
                return Err(err(ln, "expected key and two endpoints"));
            };
            let key = CanonicalKey::from_hex(key).ok_or_else(|| err(ln, "bad key"))?;
            let mv = TableMove {
                a: parse_endpoint(a).ok_or_else(|| err(ln, "bad endpoint"))?,
                b: parse_endpoint(b).ok_or_else(|| err(ln, "bad endpoint"))?,
            };
            if table.entries.insert(key, mv).is_some() {
                return Err(err(ln, "duplicate key"));
            }
        }
        if !ended {
            return Err(err(0, "missing end marker"));
        }
        Ok(table)
    }

    /// Follows the table against every Painter reply sequence from the
    /// empty board. Fails if a state lacks an entry, a move is illegal, or
    /// some line needs more than `value` rounds.
    pub fn verify(&self) -> Result<TableCheck, TableError> {
        self.verify_from(&ColoredGraph::new(), self.value)
    }

    /// As [`verify`](Self::verify), starting from `start` with `budget`
    /// rounds remaining.
    pub fn verify_from(
        &self,
        start: &ColoredGraph,
        budget: usize,
    ) -> Result<TableCheck, TableError> {
        let mut check = TableCheck {
            leaves: 0,
            max_rounds: 0,
        };
        self.walk(start, 0, budget, &mut check)?;
        Ok(check)
    }

    fn walk(
        &self,
        g: &ColoredGraph,
        rounds: usize,
        budget: usize,
        check: &mut TableCheck,
    ) -> Result<(), TableError> {
        if g.has_red_path_of_order(self.red_order) || g.has_blue_path_of_order(self.blue_order) {
            check.leaves += 1;
            check.max_rounds = check.max_rounds.max(rounds);
            return Ok(());
        }
        if rounds >= budget {
            return Err(TableError::TooDeep {
                rounds: rounds + 1,
                value: budget,
            });
        }
        let (u, v) = self.lookup(g).ok_or(TableError::Missing { rounds })??;
        for c in Color::BOTH {
            let mut child = g.clone();
            child.ensure_vertex(u.max(v));
            child
                .insert_edge(u, v, c)
                .expect("lookup only returns legal moves");
            self.walk(&child, rounds + 1, budget, check)?;
        }
        Ok(())
    }
}

fn endpoint_str(e: TableEndpoint) -> String {
    match e {
        TableEndpoint::Index(i) => i.to_string(),
        TableEndpoint::Fresh => "F".to_string(),
    }
}

fn parse_endpoint(s: &str) -> Option<TableEndpoint> {
    if s == "F" {
        Some(TableEndpoint::Fresh)
    } else {
        s.parse().ok().map(TableEndpoint::Index)
    }
}

/// Tables shipped with the crate, keyed by blue order (red order 4).
pub fn builtin_table(blue_order: usize) -> Option<StrategyTable> {
    let text = match blue_order {
        4 => include_str!("../tables/p4_p4.table"),
        5 => include_str!("../tables/p4_p5.table"),
        6 => include_str!("../tables/p4_p6.table"),
        7 => include_str!("../tables/p4_p7.table"),
        _ => return None,
    };
    if text.trim().is_empty() {
        return None;
    }
    Some(StrategyTable::parse(text).expect("shipped tables parse"))
}
