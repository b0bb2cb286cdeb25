//! First stage: disjoint structural units.

use super::gadget::{Gadget, UnitKind};
use super::session::{Session, Step};
use crate::graph::{Color, Vertex};

fn two(a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> [(&'static str, Vertex); 4] {
    [("v0", a), ("v1", b), ("v2", c), ("v3", d)]
}

/// Unit II from a blue–red–red path `a b c d`.
pub(super) fn unit_ii(a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> Gadget {
    Gadget::unit(UnitKind::II, &two(a, b, c, d), vec![a, b])
}

/// Unit III from blue `a b`, red `b c` and a separate blue `d e`.
pub(super) fn unit_iii(a: Vertex, b: Vertex, c: Vertex, d: Vertex, e: Vertex) -> Gadget {
    Gadget::unit(
        UnitKind::III,
        &[("v0", a), ("v1", b), ("v2", c), ("v3", d), ("v4", e)],
        vec![a, b],
    )
}

pub(super) fn unit_i(path: Vec<Vertex>) -> Gadget {
    let roles = [
        ("v1", path[0]),
        ("v2", path[1]),
        ("v3", *path.last().unwrap()),
    ];
    Gadget::unit(UnitKind::I, &roles, path)
}

pub(super) fn unit_vii(a: Vertex, b: Vertex, c: Vertex, d: Vertex, e: Vertex) -> Gadget {
    Gadget::unit(
        UnitKind::VII,
        &[("w6", a), ("w7", b), ("w8", c), ("w9", d), ("w10", e)],
        vec![a, b],
    )
}

/// Creates good units until they are worth `target`, or one short of it
/// with a nonempty bad unit. `count` is the worth of units made earlier;
/// `seed` is a blue edge to start the first `P_3` from.
pub(super) fn create(
    s: &mut Session<'_>,
    target: usize,
    mut count: usize,
    mut seed: Option<(Vertex, Vertex)>,
) -> Step<()> {
    let mut bad: Option<Gadget> = None;
    while count < target {
        s.plan.bad = bad.clone();
        let last = count + 1 == target;
        if last && bad.is_some() {
            break;
        }
        let (v1, v2, c12) = match seed.take() {
            Some((a, b)) => (a, b, Color::Blue),
            None => {
                let (a, b) = s.fresh_pair();
                (a, b, s.draw(a, b)?)
            }
        };
        let v3 = s.fresh();
        let c23 = s.draw(v2, v3)?;
        match (c12, c23) {
            (Color::Blue, Color::Blue) => {
                s.plan.units.push(unit_i(vec![v1, v2, v3]));
                count += 1;
            }
            (Color::Red, Color::Red) => {
                let v4 = s.fresh();
                s.force(v3, v4)?;
                s.plan.units.push(unit_ii(v4, v3, v2, v1));
                count += 1;
            }
            _ => {
                let (a, b, c) = if c12 == Color::Blue {
                    (v1, v2, v3)
                } else {
                    (v3, v2, v1)
                };
                if last {
                    let (d, e) = s.fresh_pair();
                    if s.draw(d, e)? == Color::Blue {
                        s.plan.units.push(unit_iii(a, b, c, d, e));
                        count += 1;
                    } else {
                        bad = Some(unit_vii(a, b, c, d, e));
                        break;
                    }
                } else if bad.is_none() {
                    let (d, e) = s.fresh_pair();
                    if s.draw(d, e)? == Color::Blue {
                        s.plan.units.push(unit_iii(a, b, c, d, e));
                        count += 1;
                        continue;
                    }
                    let v6 = s.fresh();
                    if s.draw(c, v6)? == Color::Red {
                        s.plan.units.push(unit_ii(a, b, c, v6));
                        count += 1;
                        bad = Some(Gadget::unit(UnitKind::V, &[("v0", d), ("v1", e)], vec![]));
                    } else {
                        bad = Some(unit_vi(a, b, c, v6, d, e));
                    }
                } else {
                    let v6 = s.fresh();
                    if s.draw(c, v6)? == Color::Red {
                        s.plan.units.push(unit_ii(a, b, c, v6));
                        count += 1;
                        continue;
                    }
                    let old = bad.take().expect("checked nonempty");
                    match old.unit_kind() {
                        Some(UnitKind::V) => {
                            bad = Some(unit_vi(a, b, c, v6, old.role("v0"), old.role("v1")));
                        }
                        Some(UnitKind::VI) => {
                            let w = |r| old.role(r);
                            let roles = [
                                ("v0", w("w0")),
                                ("v1", w("w1")),
                                ("v2", w("w2")),
                                ("v3", w("w3")),
                                ("v4", a),
                                ("v5", b),
                                ("v6", c),
                                ("v7", v6),
                                ("v8", w("w4")),
                                ("v9", w("w5")),
                            ];
                            s.plan.units.push(Gadget::unit(
                                UnitKind::IV,
                                &roles,
                                vec![w("w0"), w("w1")],
                            ));
                            count += 2;
                        }
                        _ => unreachable!("only V or VI wait for a partner"),
                    }
                }
            }
        }
    }
    s.plan.bad = bad;
    Ok(())
}

fn unit_vi(a: Vertex, b: Vertex, c: Vertex, d: Vertex, e: Vertex, f: Vertex) -> Gadget {
    Gadget::unit(
        UnitKind::VI,
        &[
            ("w0", a),
            ("w1", b),
            ("w2", c),
            ("w3", d),
            ("w4", e),
            ("w5", f),
        ],
        vec![a, b],
    )
}
