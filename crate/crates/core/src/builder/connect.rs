//! Third stage: chaining the gadgets into one blue path.

use super::extend::extend;
use super::gadget::{Class, Gadget};
use super::session::{Session, Step};
use super::{check_path, unit_creation_contract, units, BuilderError, Phase};
use crate::graph::{Color, Vertex};

/// Blue `P_{5k}` from scratch.
pub(super) fn five_k(s: &mut Session<'_>, k: usize) -> Step<Vec<Vertex>> {
    s.plan.phase = Phase::UnitCreation;
    units::create(s, k, 0, None)?;
    unit_creation_contract(&s.plan, k)?;
    extend_all(s, k)?;
    connect(s, None, 0)
}

/// Extends every unit (the bad unit last) and checks the ledger.
pub(super) fn extend_all(s: &mut Session<'_>, k: usize) -> Step<()> {
    s.plan.phase = Phase::Extension;
    let todo: Vec<Gadget> = s
        .plan
        .units
        .iter()
        .chain(s.plan.bad.iter())
        .cloned()
        .collect();
    for u in &todo {
        extend(s, u)?;
    }
    let units = s.plan.gadget_units();
    if units != k || s.plan.counts[1] + s.plan.counts[2] > 1 {
        return Err(BuilderError::ContractViolation(format!(
            "ledger after extension: {units} units for k = {k}, c1 + c2 = {}",
            s.plan.counts[1] + s.plan.counts[2]
        ))
        .into());
    }
    Ok(())
}

/// A red edge `z1 z2` hung on a vertex: later edges meant for `at` go to
/// `z1`, then `z2`.
struct Splice {
    at: Vertex,
    zs: [Vertex; 2],
    partners: Vec<(Vertex, Vertex)>,
}

struct Linker<'s, 'a> {
    s: &'s mut Session<'a>,
    splice: Option<Splice>,
}

impl Linker<'_, '_> {
    fn redirect(&mut self, a: Vertex, b: Vertex) -> Step<(Vertex, Vertex)> {
        let Some(sp) = self.splice.as_mut() else {
            return Ok((a, b));
        };
        let (other, swap) = if a == sp.at {
            (b, false)
        } else if b == sp.at {
            (a, true)
        } else {
            return Ok((a, b));
        };
        let Some(&z) = sp.zs.get(sp.partners.len()) else {
            return Err(super::session::desync("third edge at a spliced vertex"));
        };
        sp.partners.push((other, z));
        Ok(if swap { (other, z) } else { (z, other) })
    }

    fn force(&mut self, a: Vertex, b: Vertex) -> Step<()> {
        let (a, b) = self.redirect(a, b)?;
        self.s.force(a, b)
    }

    fn draw(&mut self, a: Vertex, b: Vertex) -> Step<Color> {
        let (a, b) = self.redirect(a, b)?;
        self.s.draw(a, b)
    }

    /// Replaces the spliced vertex in `path` by its `z … z` segment.
    fn expand(&self, path: Vec<Vertex>) -> Vec<Vertex> {
        let Some(sp) = &self.splice else {
            return path;
        };
        let Some(i) = path.iter().position(|&v| v == sp.at) else {
            return path;
        };
        let z_of = |p: Vertex| sp.partners.iter().find(|&&(q, _)| q == p).map(|&(_, z)| z);
        let spare = |used: Option<Vertex>| {
            if used == Some(sp.zs[0]) {
                sp.zs[1]
            } else {
                sp.zs[0]
            }
        };
        let before = if i > 0 { z_of(path[i - 1]) } else { None };
        let after = path.get(i + 1).and_then(|&p| z_of(p));
        let before = before.unwrap_or_else(|| spare(after));
        let after = after.unwrap_or_else(|| spare(Some(before)));
        let mut out = path[..i].to_vec();
        out.extend([before, sp.at, after]);
        out.extend_from_slice(&path[i + 1..]);
        out
    }
}

fn rev(p: &[Vertex]) -> Vec<Vertex> {
    p.iter().rev().copied().collect()
}

/// Connects all gadgets. `aside` is the preamble's red edge; `extra` is
/// how many vertices the base path carries beyond `5c'`.
pub(super) fn connect(
    s: &mut Session<'_>,
    aside: Option<(Vertex, Vertex)>,
    extra: usize,
) -> Step<Vec<Vertex>> {
    s.plan.phase = Phase::Connection;
    let gadgets = s.plan.gadgets.clone();
    let of = |class: Class| -> Vec<&Gadget> {
        gadgets
            .iter()
            .filter(|g| g.class() == Some(class))
            .collect()
    };
    let chain: Vec<&Gadget> = gadgets
        .iter()
        .filter(|g| matches!(g.class(), Some(Class::Chain(_))))
        .collect();
    let sevens = of(Class::Seven);
    let g1 = of(Class::BadSix).first().copied();
    let g2 = of(Class::BadSeven).first().copied();
    let c = s.plan.c();
    let c7 = sevens.len();
    let mut rest: Vec<&Gadget> = gadgets
        .iter()
        .filter(|g| matches!(g.class(), Some(Class::Three | Class::Six)))
        .collect();

    let mut p: Vec<Vertex> = Vec::new();
    for g in &chain {
        if let Some(&end) = p.last() {
            s.force(end, g.path[0])?;
        }
        p.extend_from_slice(&g.path);
    }

    let mut l = Linker { s, splice: None };
    if let Some((z1, z2)) = aside {
        let hub = if c > 0 {
            None
        } else if c7 > 0 {
            Some(sevens[0].role("v2"))
        } else if let Some(g) = g1 {
            Some(g.role("w4"))
        } else {
            g2.map(|g| g.role("w9"))
        };
        if c > 0 {
            l.s.force(z1, p[0])?;
            l.s.force(z2, *p.last().unwrap())?;
            p = [vec![z1], p, vec![z2]].concat();
        } else if let Some(at) = hub {
            l.s.force(z1, at)?;
            l.s.force(z2, at)?;
            l.splice = Some(Splice {
                at,
                zs: [z1, z2],
                partners: Vec::new(),
            });
        }
    }

    for w in sevens.windows(2) {
        l.force(w[0].role("v3"), w[1].role("v0"))?;
        l.force(w[0].role("v2"), w[1].role("v2"))?;
    }
    let a: Vec<Vertex> = sevens.iter().flat_map(|g| g.path.iter().copied()).collect();
    let b: Vec<Vertex> = sevens.iter().map(|g| g.role("v2")).collect();
    let (u1, u2) = (p.first().copied(), p.last().copied());
    let w = |g: Option<&Gadget>, r: &str| g.expect("bad gadget present").role(r);

    let main: Option<Vec<Vertex>> = match (g1.is_some(), g2.is_some(), c7, c) {
        (false, false, 0, 0) => None,
        (false, false, 0, _) => Some(p),
        (false, false, 1, 0) => Some(claim_two(&mut l, sevens[0], &mut rest)?),
        (false, false, 1, _) => {
            l.force(sevens[0].role("v3"), u1.unwrap())?;
            l.force(u2.unwrap(), sevens[0].role("v2"))?;
            Some([a, p, b].concat())
        }
        (true, false, 0, _) => {
            let (w0, w1, w2, w3, w4) = (
                w(g1, "w0"),
                w(g1, "w1"),
                w(g1, "w2"),
                w(g1, "w3"),
                w(g1, "w4"),
            );
            l.force(w1, w4)?;
            if c == 0 {
                l.force(w4, w2)?;
            } else {
                l.force(w4, u1.unwrap())?;
                l.force(u2.unwrap(), w2)?;
            }
            Some([vec![w0, w1, w4], p, vec![w2, w3]].concat())
        }
        (false, true, 0, _) => {
            let (w6, w7, w8, w9, w10) = (
                w(g2, "w6"),
                w(g2, "w7"),
                w(g2, "w8"),
                w(g2, "w9"),
                w(g2, "w10"),
            );
            l.force(w7, w9)?;
            l.force(w8, w9)?;
            l.force(w8, w10)?;
            if c > 0 {
                l.force(w10, u1.unwrap())?;
            }
            Some([vec![w6, w7, w9, w8, w10], p].concat())
        }
        (false, false, _, _) => {
            let last = sevens[c7 - 1];
            l.force(last.role("v3"), b[0])?;
            if c > 0 {
                l.force(last.role("v2"), u1.unwrap())?;
            }
            Some([a, b, p].concat())
        }
        (true, false, _, _) => {
            let last = sevens[c7 - 1];
            let (w0, w1, w2, w3, w4) = (
                w(g1, "w0"),
                w(g1, "w1"),
                w(g1, "w2"),
                w(g1, "w3"),
                w(g1, "w4"),
            );
            l.force(last.role("v3"), w0)?;
            l.force(w1, w4)?;
            l.force(w4, b[0])?;
            if c == 0 {
                l.force(last.role("v2"), w2)?;
            } else {
                l.force(last.role("v2"), u1.unwrap())?;
                l.force(u2.unwrap(), w2)?;
            }
            Some([a, vec![w0, w1, w4], b, p, vec![w2, w3]].concat())
        }
        (false, true, _, _) => {
            let last = sevens[c7 - 1];
            let (w6, w7, w8, w9, w10) = (
                w(g2, "w6"),
                w(g2, "w7"),
                w(g2, "w8"),
                w(g2, "w9"),
                w(g2, "w10"),
            );
            l.force(last.role("v3"), w6)?;
            l.force(w7, w9)?;
            l.force(w9, w8)?;
            l.force(w8, w10)?;
            l.force(w10, b[0])?;
            if c > 0 {
                l.force(last.role("v2"), u1.unwrap())?;
            }
            Some([a, vec![w6, w7, w9, w8, w10], b, p].concat())
        }
        (true, true, _, _) => {
            return Err(BuilderError::ContractViolation("two bad units".into()).into());
        }
    };
    let main = main.map(|m| l.expand(m));
    let s = l.s;

    let c_prime = s.plan.c_prime();
    let mut main = match main {
        Some(m) => {
            let special = c7 == 1 && c == 0 && g1.is_none() && g2.is_none();
            let want = if special { 10 } else { 5 * c_prime };
            let carried = if aside.is_some() { extra } else { 0 };
            check_path(&s.board, &m, want + carried)?;
            if extra == 0 && !special {
                let g36 = 4 * s.plan.counts[3] + 5 * s.plan.counts[6];
                let used = s.board.edge_count() - g36;
                if used > 7 * c_prime - 1 {
                    return Err(BuilderError::ContractViolation(format!(
                        "{used} edges for c' = {c_prime}, expected {}",
                        7 * c_prime - 1
                    ))
                    .into());
                }
            }
            record_blue_on_path(s, &m);
            m
        }
        None => {
            if rest.is_empty() {
                return Err(BuilderError::ContractViolation("nothing to connect".into()).into());
            }
            match aside {
                Some(z) => seed_with_aside(s, z, &mut rest)?,
                None => rest.remove(0).path.clone(),
            }
        }
    };
    for g in rest {
        main = attach(s, main, g)?;
    }
    s.plan.path = main.clone();
    Ok(main)
}

fn record_blue_on_path(s: &mut Session<'_>, path: &[Vertex]) {
    let side = 4 * (s.plan.counts[3] + s.plan.counts[6]);
    let blue = s.board.count_color(Color::Blue);
    s.plan.all_blue_on_path = Some(blue == side + path.len() - 1);
}

/// The `c7 = 1`, `c = c1 = c2 = 0` case: one G7 plus a G6 (preferred) or
/// a G3 give a blue `P_10`.
fn claim_two(l: &mut Linker<'_, '_>, g7: &Gadget, rest: &mut Vec<&Gadget>) -> Step<Vec<Vertex>> {
    let pick = rest
        .iter()
        .position(|g| g.class() == Some(Class::Six))
        .or_else(|| rest.iter().position(|g| g.class() == Some(Class::Three)));
    let Some(i) = pick else {
        return Err(BuilderError::ContractViolation("lone G7 without G3 or G6".into()).into());
    };
    let x = rest.remove(i);
    let (v2, v3) = (g7.role("v2"), g7.role("v3"));
    let a = g7.path.clone();
    let (x1, x5) = (x.path[0], *x.path.last().unwrap());
    if x.class() == Some(Class::Six) {
        l.force(x1, v2)?;
        l.force(x5, v3)?;
        return Ok([vec![v2], x.path.clone(), rev(&a)].concat());
    }
    if l.draw(v2, x5)? == Color::Blue {
        l.force(v3, x1)?;
        return Ok([a, x.path.clone(), vec![v2]].concat());
    }
    if let Some(sp) = l.splice.take() {
        let [z1, z2] = sp.zs;
        l.s.force(v3, z1)?;
        l.s.force(z2, x1)?;
        return Ok([a, vec![z1, v2, z2], x.path.clone()].concat());
    }
    let v5 = l.s.fresh();
    l.s.force(v3, v5)?;
    l.s.force(x5, v5)?;
    Ok([a, vec![v5], rev(&x.path)].concat())
}

/// With only G3/G6 gadgets and the aside red edge: a blue `P_7`.
fn seed_with_aside(
    s: &mut Session<'_>,
    (z1, z2): (Vertex, Vertex),
    rest: &mut Vec<&Gadget>,
) -> Step<Vec<Vertex>> {
    if let Some(i) = rest.iter().position(|g| g.class() == Some(Class::Three)) {
        let x = rest.remove(i).path.clone();
        let (x1, x5) = (x[0], *x.last().unwrap());
        if s.draw(z1, x1)? == Color::Blue {
            if s.draw(z2, x5)? == Color::Blue {
                return Ok([vec![z1], x, vec![z2]].concat());
            }
            let f = s.fresh();
            s.force(z1, f)?;
            return Ok([vec![f, z1], x].concat());
        }
        s.force(z2, x5)?;
        let f = s.fresh();
        s.force(z2, f)?;
        return Ok([x, vec![z2, f]].concat());
    }
    let g = rest.remove(0);
    let (x0, x1) = (g.role("x0"), g.path[0]);
    s.force(z1, x1)?;
    s.force(z1, x0)?;
    Ok([vec![x0, z1], g.path.clone()].concat())
}

/// Joins a G3 or G6 to the ends of `main`, five more blue vertices.
fn attach(s: &mut Session<'_>, main: Vec<Vertex>, g: &Gadget) -> Step<Vec<Vertex>> {
    let (y1, y2) = (main[0], *main.last().unwrap());
    let x = &g.path;
    let (x1, x5) = (x[0], *x.last().unwrap());
    if s.draw(x1, y1)? == Color::Blue {
        return Ok([rev(&main), x.clone()].concat());
    }
    if g.class() == Some(Class::Six) {
        s.force(x5, y1)?;
        return Ok([rev(&main), rev(x)].concat());
    }
    if s.draw(x1, y2)? == Color::Blue {
        return Ok([main, x.clone()].concat());
    }
    s.force(x5, y2)?;
    Ok([main, rev(x)].concat())
}
