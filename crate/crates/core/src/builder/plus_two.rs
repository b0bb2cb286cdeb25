//! Blue `P_{5k+2}`: a short preamble of disjoint edges, then the
//! `P_{5k}` stages with two extra vertices worked in.

use super::connect::{connect, extend_all};
use super::extend::register;
use super::gadget::Gadget;
use super::session::{Session, Step};
use super::units::{self, unit_i, unit_iii};
use super::{unit_creation_contract, Phase};
use crate::graph::{Color, Vertex};

pub(super) fn five_k_plus_two(s: &mut Session<'_>, k: usize) -> Step<Vec<Vertex>> {
    s.plan.phase = Phase::Preamble;
    let mut blues: Vec<(Vertex, Vertex)> = Vec::new();
    let red = loop {
        let (a, b) = s.fresh_pair();
        if s.draw(a, b)? == Color::Red {
            break Some((a, b));
        }
        blues.push((a, b));
        if blues.len() == 3 {
            break None;
        }
    };
    match red {
        Some(z) => {
            s.plan.aside = Some(z);
            s.plan.phase = Phase::UnitCreation;
            let (count, seed) = match blues[..] {
                [] => (0, None),
                [e] => (0, Some(e)),
                [(z3, z4), (z5, z6)] => {
                    let z7 = s.fresh();
                    if s.draw(z4, z7)? == Color::Red {
                        s.plan.units.push(unit_iii(z3, z4, z7, z5, z6));
                        (1, None)
                    } else {
                        s.plan.units.push(unit_i(vec![z3, z4, z7]));
                        (1, Some((z5, z6)))
                    }
                }
                _ => unreachable!("at most two blue edges before a red one"),
            };
            units::create(s, k, count, seed)?;
            unit_creation_contract(&s.plan, k)?;
            extend_all(s, k)?;
            connect(s, Some(z), 2)
        }
        None => three_blue(s, k, [blues[0], blues[1], blues[2]]),
    }
}

/// Blue `z1 z2`, `z4 z5`, `z6 z7`.
fn three_blue(s: &mut Session<'_>, k: usize, e: [(Vertex, Vertex); 3]) -> Step<Vec<Vertex>> {
    let [(mut z1, mut z2), (mut z4, mut z5), (z6, z7)] = e;
    let z3 = s.fresh();
    let a = s.draw(z2, z3)?;
    let b = s.draw(z3, z4)?;
    s.plan.phase = Phase::UnitCreation;
    if a == Color::Blue && b == Color::Blue {
        s.plan.units.push(unit_i(vec![z1, z2, z3, z4, z5]));
        units::create(s, k, 1, Some((z6, z7)))?;
        unit_creation_contract(&s.plan, k)?;
        extend_all(s, k)?;
        return connect(s, None, 2);
    }
    if a != b && a == Color::Blue {
        std::mem::swap(&mut z1, &mut z5);
        std::mem::swap(&mut z2, &mut z4);
    }
    let z = [z1, z2, z3, z4, z5, z6, z7];
    let roles: Vec<(&'static str, Vertex)> = ["z1", "z2", "z3", "z4", "z5", "z6", "z7"]
        .into_iter()
        .zip(z)
        .collect();
    let p = |idx: [usize; 7]| idx.map(|i| z[i - 1]).to_vec();
    let gadget = if a != b {
        if s.draw(z5, z6)? == Color::Blue {
            if s.draw(z1, z7)? == Color::Blue {
                Gadget::gadget(13, &roles, p([3, 4, 5, 6, 7, 1, 2]))
            } else {
                s.force(z2, z7)?;
                Gadget::gadget(14, &roles, p([3, 4, 5, 6, 7, 2, 1]))
            }
        } else {
            s.force(z3, z6)?;
            if s.draw(z1, z7)? == Color::Blue {
                Gadget::gadget(15, &roles, p([5, 4, 3, 6, 7, 1, 2]))
            } else {
                s.force(z1, z5)?;
                Gadget::gadget(16, &roles, p([2, 1, 5, 4, 3, 6, 7]))
            }
        }
    } else if s.draw(z5, z6)? == Color::Red {
        s.force(z1, z4)?;
        s.force(z2, z7)?;
        s.force(z3, z6)?;
        Gadget::gadget(17, &roles, p([3, 6, 7, 2, 1, 4, 5]))
    } else {
        s.force(z2, z7)?;
        let mut r = roles.clone();
        r.extend([("v0", z1), ("v1", z2), ("v2", z3), ("v3", z4)]);
        Gadget::gadget(18, &r, vec![z1, z2, z7, z6, z5, z4])
    };
    register(s, gadget)?;
    s.plan.preamble_units = 1;
    units::create(s, k, 1, None)?;
    unit_creation_contract(&s.plan, k)?;
    extend_all(s, k)?;
    connect(s, None, 2)
}
