//! Second stage: each unit grows into one of G1–G12.

use super::gadget::{Gadget, UnitKind};
use super::session::{Session, Step};
use super::units::{unit_ii, unit_iii};
use crate::graph::{Color, Vertex};

pub(super) fn register(s: &mut Session<'_>, g: Gadget) -> Step<()> {
    if let Err(e) = g.matches_template(&s.board) {
        return Err(super::session::desync(format!("template mismatch: {e}")));
    }
    if let super::Shape::Gadget(k) = g.shape {
        s.plan.counts[k.0 as usize] += 1;
    }
    s.plan.gadgets.push(g);
    Ok(())
}

pub(super) fn extend(s: &mut Session<'_>, unit: &Gadget) -> Step<()> {
    let r = |name| unit.role(name);
    match unit.unit_kind().expect("units only") {
        UnitKind::I => extend_i(s, unit.path.clone()),
        UnitKind::II => extend_ii(s, r("v0"), r("v1"), r("v2"), r("v3")),
        UnitKind::III => extend_iii(s, [r("v0"), r("v1"), r("v2"), r("v3"), r("v4")]),
        UnitKind::IV => {
            let v: Vec<Vertex> = (0..10).map(|i| r(ROLES[i])).collect();
            extend_iv(s, v.try_into().unwrap())
        }
        UnitKind::V => extend_v(s, r("v0"), r("v1")),
        UnitKind::VI => register(s, Gadget::gadget(1, &unit.roles, unit.path.clone())),
        UnitKind::VII => register(s, Gadget::gadget(2, &unit.roles, unit.path.clone())),
    }
}

const ROLES: [&str; 10] = ["v0", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9"];

fn roles(vs: &[Vertex]) -> Vec<(&'static str, Vertex)> {
    ROLES.iter().copied().zip(vs.iter().copied()).collect()
}

/// `p` is the blue path `v1 … v3` (longer when shrunk).
fn extend_i(s: &mut Session<'_>, mut p: Vec<Vertex>) -> Step<()> {
    let (v1, v3) = (p[0], *p.last().unwrap());
    let mut v0 = s.fresh();
    let c0 = s.draw(v1, v0)?;
    let mut v4 = s.fresh();
    let c4 = s.draw(v3, v4)?;
    let ends = |p: &[Vertex], v0, v4| {
        [
            ("v0", v0),
            ("v1", p[0]),
            ("v3", *p.last().unwrap()),
            ("v4", v4),
        ]
    };
    match (c0, c4) {
        (Color::Blue, Color::Blue) => {
            let path = [vec![v0], p.clone(), vec![v4]].concat();
            register(s, Gadget::gadget(3, &ends(&p, v0, v4), path))
        }
        (Color::Red, Color::Red) => {
            s.force(v0, v3)?;
            s.force(v1, v4)?;
            let mut rev = p.clone();
            rev.reverse();
            let path = [vec![v0], rev, vec![v4]].concat();
            register(s, Gadget::gadget(4, &ends(&p, v0, v4), path))
        }
        _ => {
            if c0 == Color::Blue {
                p.reverse();
                std::mem::swap(&mut v0, &mut v4);
            }
            let v5 = s.fresh();
            let mut r = ends(&p, v0, v4).to_vec();
            r.push(("v5", v5));
            if s.draw(v4, v5)? == Color::Red {
                s.force(v0, v4)?;
                let path = [p, vec![v4, v0]].concat();
                register(s, Gadget::gadget(5, &r, path))
            } else {
                let path = [p, vec![v4, v5]].concat();
                let r = [("x0", v0), ("x1", path[0]), ("x5", v5)];
                register(s, Gadget::gadget(6, &r, path))
            }
        }
    }
}

fn extend_ii(s: &mut Session<'_>, v0: Vertex, v1: Vertex, v2: Vertex, v3: Vertex) -> Step<()> {
    let v4 = s.fresh();
    s.force(v1, v4)?;
    s.force(v3, v4)?;
    register(
        s,
        Gadget::gadget(7, &roles(&[v0, v1, v2, v3, v4]), vec![v0, v1, v4, v3]),
    )
}

fn extend_iii(s: &mut Session<'_>, v: [Vertex; 5]) -> Step<()> {
    let [v0, v1, v2, v3, v4] = v;
    if s.draw(v2, v3)? == Color::Red {
        s.force(v1, v4)?;
        return register(s, Gadget::gadget(7, &roles(&v), vec![v0, v1, v4, v3]));
    }
    if s.draw(v0, v4)? == Color::Blue {
        register(s, Gadget::gadget(8, &roles(&v), vec![v1, v0, v4, v3, v2]))
    } else {
        s.force(v1, v4)?;
        register(s, Gadget::gadget(9, &roles(&v), vec![v0, v1, v4, v3, v2]))
    }
}

fn extend_iv(s: &mut Session<'_>, mut v: [Vertex; 10]) -> Step<()> {
    let first = s.draw(v[3], v[8])?;
    let second = if first == Color::Red {
        s.force(v[7], v[9])?;
        Color::Blue
    } else {
        s.draw(v[7], v[9])?
    };
    if first == Color::Blue && second == Color::Blue {
        s.force(v[1], v[8])?;
        s.force(v[2], v[9])?;
        return if s.draw(v[0], v[4])? == Color::Blue {
            let path = [5, 4, 0, 1, 8, 3, 2, 9, 7, 6].map(|i| v[i]).to_vec();
            register(s, Gadget::gadget(11, &roles(&v), path))
        } else {
            s.force(v[0], v[5])?;
            let path = [4, 5, 0, 1, 8, 3, 2, 9, 7, 6].map(|i| v[i]).to_vec();
            register(s, Gadget::gadget(12, &roles(&v), path))
        };
    }
    if first == Color::Blue {
        v = [4, 5, 6, 7, 0, 1, 2, 3, 9, 8].map(|i| v[i]);
    }
    s.force(v[0], v[3])?;
    s.force(v[2], v[8])?;
    s.force(v[5], v[8])?;
    s.force(v[4], v[9])?;
    let path = [1, 0, 3, 2, 8, 5, 4, 9, 7, 6].map(|i| v[i]).to_vec();
    register(s, Gadget::gadget(10, &roles(&v), path))
}

fn extend_v(s: &mut Session<'_>, v0: Vertex, v1: Vertex) -> Step<()> {
    let v2 = s.fresh();
    if s.draw(v1, v2)? == Color::Red {
        let v3 = s.fresh();
        s.force(v2, v3)?;
        return extend(s, &unit_ii(v3, v2, v1, v0));
    }
    let (d, e) = s.fresh_pair();
    if s.draw(d, e)? == Color::Blue {
        extend(s, &unit_iii(v2, v1, v0, d, e))
    } else {
        let u = super::units::unit_vii(v2, v1, v0, d, e);
        register(s, Gadget::gadget(2, &u.roles, u.path))
    }
}
