//! Structural units I–VII and gadgets G1–G18 with role-tagged vertices.

use std::collections::HashSet;
use std::fmt;

use crate::graph::{Color, ColoredGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitKind {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl UnitKind {
    pub fn is_good(self) -> bool {
        matches!(
            self,
            UnitKind::I | UnitKind::II | UnitKind::III | UnitKind::IV
        )
    }

    /// Structural units this counts as; IV is a double.
    pub fn weight(self) -> usize {
        match self {
            UnitKind::IV => 2,
            k if k.is_good() => 1,
            _ => 0,
        }
    }
}

/// `G1` … `G18`, stored as the index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GadgetKind(pub u8);

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Unit(UnitKind),
    Gadget(GadgetKind),
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Unit(u) => write!(f, "unit {u:?}"),
            Shape::Gadget(g) => write!(f, "{g}"),
        }
    }
}

/// How a gadget takes part in the connection stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    /// Blue path with both ends on red edges, worth this many units.
    Chain(usize),
    /// Blue path `v0 … v3` plus red `v1 v2 v3`.
    Seven,
    BadSix,
    BadSeven,
    Three,
    Six,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub shape: Shape,
    pub roles: Vec<(&'static str, Vertex)>,
    /// Main blue path, end to end. Units other than I list just their
    /// first blue edge.
    pub path: Vec<Vertex>,
}

impl Gadget {
    pub fn new(shape: Shape, roles: &[(&'static str, Vertex)], path: Vec<Vertex>) -> Self {
        Gadget {
            shape,
            roles: roles.to_vec(),
            path,
        }
    }

    pub fn unit(kind: UnitKind, roles: &[(&'static str, Vertex)], path: Vec<Vertex>) -> Self {
        Gadget::new(Shape::Unit(kind), roles, path)
    }

    pub fn gadget(i: u8, roles: &[(&'static str, Vertex)], path: Vec<Vertex>) -> Self {
        Gadget::new(Shape::Gadget(GadgetKind(i)), roles, path)
    }

    pub fn role(&self, name: &str) -> Vertex {
        self.roles
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, v)| v)
            .unwrap_or_else(|| panic!("{} has no role {name}", self.shape))
    }

    pub fn vertices(&self) -> HashSet<Vertex> {
        self.roles
            .iter()
            .map(|&(_, v)| v)
            .chain(self.path.iter().copied())
            .collect()
    }

    pub fn unit_kind(&self) -> Option<UnitKind> {
        match self.shape {
            Shape::Unit(u) => Some(u),
            Shape::Gadget(_) => None,
        }
    }

    pub fn class(&self) -> Option<Class> {
        let Shape::Gadget(GadgetKind(i)) = self.shape else {
            return None;
        };
        Some(match i {
            1 => Class::BadSix,
            2 => Class::BadSeven,
            3 => Class::Three,
            6 => Class::Six,
            7 | 18 => Class::Seven,
            10..=12 => Class::Chain(2),
            _ => Class::Chain(1),
        })
    }

    /// Role-wise check against the template: listed red and blue edges
    /// present, the path blue, and no other edges among role vertices.
    pub fn matches_template(&self, g: &ColoredGraph) -> Result<(), String> {
        let (red, blue) = template(self.shape);
        let mut allowed: HashSet<(Vertex, Vertex)> = HashSet::new();
        let key = |a: Vertex, b: Vertex| (a.min(b), a.max(b));
        let mut expect = |a: Vertex, b: Vertex, c: Color| -> Result<(), String> {
            if g.color(a, b) != Some(c) {
                return Err(format!("{}: edge {a}-{b} should be {c}", self.shape));
            }
            allowed.insert(key(a, b));
            Ok(())
        };
        for &(a, b) in red {
            expect(self.role(a), self.role(b), Color::Red)?;
        }
        for &(a, b) in blue {
            expect(self.role(a), self.role(b), Color::Blue)?;
        }
        for w in self.path.windows(2) {
            expect(w[0], w[1], Color::Blue)?;
        }
        let verts: Vec<Vertex> = self.roles.iter().map(|&(_, v)| v).collect();
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                if a != b && g.has_edge(a, b) && !allowed.contains(&key(a, b)) {
                    return Err(format!("{}: unexpected edge {a}-{b}", self.shape));
                }
            }
        }
        if let Some(Class::Chain(_)) = self.class() {
            for end in [self.path[0], *self.path.last().unwrap()] {
                if g.color_degree(end, Color::Red) == 0 {
                    return Err(format!("{}: path end {end} has no red edge", self.shape));
                }
            }
        }
        Ok(())
    }
}

type Pairs = &'static [(&'static str, &'static str)];

/// Red edges and extra blue edges (beyond the path) of each shape.
fn template(shape: Shape) -> (Pairs, Pairs) {
    match shape {
        Shape::Unit(u) => match u {
            UnitKind::I => (&[], &[]),
            UnitKind::II => (&[("v1", "v2"), ("v2", "v3")], &[("v0", "v1")]),
            UnitKind::III => (&[("v1", "v2")], &[("v0", "v1"), ("v3", "v4")]),
            UnitKind::IV => (
                &[("v1", "v2"), ("v5", "v6"), ("v8", "v9")],
                &[("v0", "v1"), ("v2", "v3"), ("v4", "v5"), ("v6", "v7")],
            ),
            UnitKind::V => (&[("v0", "v1")], &[]),
            UnitKind::VI => (&[("w1", "w2"), ("w4", "w5")], &[("w0", "w1"), ("w2", "w3")]),
            UnitKind::VII => (&[("w7", "w8"), ("w9", "w10")], &[("w6", "w7")]),
        },
        Shape::Gadget(GadgetKind(i)) => match i {
            1 => template(Shape::Unit(UnitKind::VI)),
            2 => template(Shape::Unit(UnitKind::VII)),
            3 => (&[], &[]),
            4 => (&[("v0", "v1"), ("v3", "v4")], &[]),
            5 => (&[("v0", "v1"), ("v4", "v5")], &[]),
            6 => (&[("x0", "x1")], &[]),
            7 => (&[("v1", "v2"), ("v2", "v3")], &[]),
            8 => (&[("v1", "v2")], &[]),
            9 => (&[("v1", "v2"), ("v0", "v4")], &[]),
            10 => (
                &[("v1", "v2"), ("v5", "v6"), ("v8", "v9"), ("v3", "v8")],
                &[],
            ),
            11 => (&[("v1", "v2"), ("v5", "v6"), ("v8", "v9")], &[]),
            12 => (
                &[("v1", "v2"), ("v5", "v6"), ("v8", "v9"), ("v0", "v4")],
                &[],
            ),
            13 => (&[("z2", "z3")], &[]),
            14 => (&[("z2", "z3"), ("z1", "z7")], &[]),
            15 => (&[("z2", "z3"), ("z5", "z6")], &[]),
            16 => (&[("z2", "z3"), ("z5", "z6"), ("z1", "z7")], &[]),
            17 => (&[("z2", "z3"), ("z3", "z4"), ("z5", "z6")], &[]),
            18 => (&[("z2", "z3"), ("z3", "z4")], &[]),
            _ => (&[], &[]),
        },
    }
}
