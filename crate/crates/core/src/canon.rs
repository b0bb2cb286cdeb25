//! Isomorphism-invariant keys for colored boards.
//!
//! Each connected component is labeled by color refinement followed by a
//! backtracking search over individualizations, keeping the lexicographically
//! least adjacency encoding. Component codes are sorted and concatenated, so
//! disconnected boards never pay for permuting identical components.
//! Isolated vertices are interchangeable with the untouched vertices of the
//! infinite board and are folded into a clamped count.

use std::fmt;

use crate::graph::{Color, ColoredGraph, Vertex};

/// Edge label used by the labeler. `MARK` tags a hypothetical edge when
/// comparing candidate moves.
pub(crate) const NONE: u8 = 0;
pub(crate) const RED: u8 = 1;
pub(crate) const BLUE: u8 = 2;
pub(crate) const MARK: u8 = 3;

pub(crate) fn label_of(c: Color) -> u8 {
    match c {
        Color::Red => RED,
        Color::Blue => BLUE,
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalKey(bytes)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(CanonicalKey)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

/// Canonical key plus the labeling that produced it: `order[i]` is the
/// board vertex sitting at canonical position `i`.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    pub order: Vec<Vertex>,
}

/// Key with every isolated vertex folded into the implicit spare.
pub fn canonical_key(g: &ColoredGraph) -> CanonicalKey {
    canonical_form(g, 0).key
}

/// Key that keeps at most `max_isolated` isolated vertices.
pub fn canonical_key_with(g: &ColoredGraph, max_isolated: usize) -> CanonicalKey {
    canonical_form(g, max_isolated).key
}

pub fn canonical_form(g: &ColoredGraph, max_isolated: usize) -> CanonicalForm {
    let lg = LabeledGraph::from_board(g, None);
    lg.canonical_form(max_isolated)
}

/// Key of `g` with the non-edge `u`–`v` tagged. Two candidate edges get the
/// same key iff some color-preserving automorphism of `g` maps one onto the
/// other. `None` stands for an untouched vertex.
pub fn marked_edge_key(g: &ColoredGraph, u: Option<Vertex>, v: Option<Vertex>) -> CanonicalKey {
    let lg = LabeledGraph::from_board(g, Some((u, v)));
    lg.canonical_form(0).key
}

/// Dense labeled graph used internally by the labeler.
#[derive(Clone, Debug)]
pub(crate) struct LabeledGraph {
    n: usize,
    labels: Vec<u8>,
    /// Board vertex for each dense index; `None` for virtual fresh vertices.
    origin: Vec<Option<Vertex>>,
}

impl LabeledGraph {
    pub(crate) fn from_board(
        g: &ColoredGraph,
        mark: Option<(Option<Vertex>, Option<Vertex>)>,
    ) -> Self {
        let n0 = g.vertex_count();
        let extra = match mark {
            Some((u, v)) => u.is_none() as usize + v.is_none() as usize,
            None => 0,
        };
        let n = n0 + extra;
        let mut labels = vec![NONE; n * n];
        for e in g.edges() {
            let (a, b) = (e.u as usize, e.v as usize);
            labels[a * n + b] = label_of(e.color);
            labels[b * n + a] = label_of(e.color);
        }
        let mut origin: Vec<Option<Vertex>> = (0..n0 as Vertex).map(Some).collect();
        if let Some((u, v)) = mark {
            let mut next = n0;
            let mut resolve = |x: Option<Vertex>| match x {
                Some(x) => x as usize,
                None => {
                    next += 1;
                    origin.push(None);
                    next - 1
                }
            };
            let a = resolve(u);
            let b = resolve(v);
            labels[a * n + b] = MARK;
            labels[b * n + a] = MARK;
        }
        LabeledGraph { n, labels, origin }
    }

    #[inline]
    fn lab(&self, a: usize, b: usize) -> u8 {
        self.labels[a * self.n + b]
    }

    fn components(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        let mut isolated = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                for y in 0..self.n {
                    if !seen[y] && self.lab(x, y) != NONE {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
                i += 1;
            }
            if comp.len() == 1 {
                isolated.push(s);
            } else {
                comps.push(comp);
            }
        }
        (comps, isolated)
    }

    pub(crate) fn canonical_form(&self, max_isolated: usize) -> CanonicalForm {
        let (comps, isolated) = self.components();
        let mut coded: Vec<(Vec<u8>, Vec<usize>)> = comps
            .iter()
            .map(|comp| {
                let sub = SubGraph::new(self, comp);
                let (code, local) = sub.canonize();
                (code, local.into_iter().map(|i| comp[i]).collect())
            })
            .collect();
        coded.sort_by(|a, b| a.0.cmp(&b.0));
        let mut key = Vec::new();
        let mut order = Vec::new();
        for (code, ord) in coded {
            key.extend_from_slice(&code);
            order.extend(ord);
        }
        let kept = isolated.len().min(max_isolated);
        key.push(0);
        key.push(kept as u8);
        order.extend(isolated.iter().take(kept).copied());
        let order = order.into_iter().filter_map(|i| self.origin[i]).collect();
        CanonicalForm {
            key: CanonicalKey(key),
            order,
        }
    }
}

/// A connected component copied into its own dense matrix.
struct SubGraph {
    n: usize,
    labels: Vec<u8>,
}

impl SubGraph {
    fn new(g: &LabeledGraph, comp: &[usize]) -> Self {
        let n = comp.len();
        let mut labels = vec![NONE; n * n];
        for (i, &a) in comp.iter().enumerate() {
            for (j, &b) in comp.iter().enumerate() {
                labels[i * n + j] = g.lab(a, b);
            }
        }
        SubGraph { n, labels }
    }

    #[inline]
    fn lab(&self, a: usize, b: usize) -> u8 {
        self.labels[a * self.n + b]
    }

    /// Returns the canonical code and the vertex order realizing it.
    fn canonize(&self) -> (Vec<u8>, Vec<usize>) {
        let mut colors = vec![0u32; self.n];
        // Initial coloring by per-label degree.
        let degs: Vec<[u8; 4]> = (0..self.n)
            .map(|v| {
                let mut d = [0u8; 4];
                for w in 0..self.n {
                    d[self.lab(v, w) as usize] += 1;
                }
                d[0] = 0;
                d
            })
            .collect();
        let mut idx: Vec<usize> = (0..self.n).collect();
        idx.sort_by_key(|&v| degs[v]);
        let mut c = 0;
        for i in 0..self.n {
            if i > 0 && degs[idx[i]] != degs[idx[i - 1]] {
                c += 1;
            }
            colors[idx[i]] = c;
        }
        self.refine(&mut colors);
        let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
        self.search(colors, &mut best);
        best.expect("search visits at least one leaf")
    }

    fn cell_count(colors: &[u32]) -> usize {
        let mut seen: Vec<u32> = colors.to_vec();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Refines `colors` to the coarsest equitable partition below it. Cell
    /// numbering stays ordered by (old cell, neighborhood signature).
    fn refine(&self, colors: &mut [u32]) {
        let mut count = Self::cell_count(colors);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u8)>)> = (0..self.n)
                .map(|v| {
                    let mut s: Vec<(u32, u8)> = (0..self.n)
                        .filter(|&w| self.lab(v, w) != NONE)
                        .map(|w| (colors[w], self.lab(v, w)))
                        .collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let mut idx: Vec<usize> = (0..self.n).collect();
            idx.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut c = 0;
            for i in 0..self.n {
                if i > 0 && sigs[idx[i]] != sigs[idx[i - 1]] {
                    c += 1;
                }
                colors[idx[i]] = c;
            }
            let new_count = c as usize + 1;
            if new_count == count {
                return;
            }
            count = new_count;
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        (0..self.n).all(|w| w == a || w == b || self.lab(a, w) == self.lab(b, w))
    }

    fn search(&self, colors: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
        let count = Self::cell_count(&colors);
        if count == self.n {
            let mut order = vec![0usize; self.n];
            for v in 0..self.n {
                order[colors[v] as usize] = v;
            }
            let mut code = Vec::with_capacity(1 + self.n * (self.n - 1) / 2);
            code.push(self.n as u8);
            for i in 0..self.n {
                for j in i + 1..self.n {
                    code.push(self.lab(order[i], order[j]));
                }
            }
            match best {
                Some((b, _)) if *b <= code => {}
                _ => *best = Some((code, order)),
            }
            return;
        }
        // First non-singleton cell.
        let mut sizes = vec![0usize; self.n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..self.n).find(|&c| sizes[c] > 1).unwrap() as u32;
        let cell: Vec<usize> = (0..self.n).filter(|&v| colors[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let mut next: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| {
                    if c > target || (c == target && w != v) {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            next[v] = target;
            self.refine(&mut next);
            self.search(next, best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::{Blue, Red};

    fn g(edges: &[(Vertex, Vertex, Color)]) -> ColoredGraph {
        ColoredGraph::from_edges(edges.iter().copied()).unwrap()
    }

    #[test]
    fn color_matters() {
        let blue = g(&[(0, 1, Blue), (1, 2, Blue)]);
        let red = g(&[(0, 1, Red), (1, 2, Red)]);
        assert_ne!(canonical_key(&blue), canonical_key(&red));
    }

    #[test]
    fn relabeling_invariance() {
        let a = g(&[(0, 1, Blue), (1, 2, Red), (2, 3, Blue), (4, 5, Red)]);
        let b = g(&[(5, 4, Blue), (4, 3, Red), (3, 2, Blue), (0, 1, Red)]);
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn isolated_vertices_fold() {
        let mut a = g(&[(0, 1, Blue)]);
        let b = a.clone();
        a.add_vertex();
        a.add_vertex();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_ne!(canonical_key_with(&a, 1), canonical_key_with(&b, 1));
        assert_eq!(canonical_key_with(&a, 1), {
            let mut c = b.clone();
            c.add_vertex();
            canonical_key_with(&c, 5)
        });
    }

    #[test]
    fn form_order_reproduces_key() {
        let a = g(&[
            (0, 1, Blue),
            (1, 2, Red),
            (2, 3, Blue),
            (3, 0, Red),
            (2, 4, Blue),
        ]);
        let form = canonical_form(&a, 0);
        // Relabel a so that vertex order[i] becomes i; the key must not move.
        let mut pos = vec![0; a.vertex_count()];
        for (i, &v) in form.order.iter().enumerate() {
            pos[v as usize] = i as Vertex;
        }
        let relabeled = ColoredGraph::from_edges(
            a.edges()
                .iter()
                .map(|e| (pos[e.u as usize], pos[e.v as usize], e.color)),
        )
        .unwrap();
        assert_eq!(canonical_key(&relabeled), form.key);
        assert_eq!(
            canonical_form(&relabeled, 0).order,
            (0..5).collect::<Vec<_>>()
        );
    }

    #[test]
    fn large_star_is_fast() {
        let edges: Vec<_> = (1..=12).map(|i| (0, i, Red)).collect();
        let a = g(&edges);
        let k = canonical_key(&a);
        assert_eq!(k.as_bytes()[0], 13);
    }

    #[test]
    fn marked_edges_split_orbits() {
        // Blue P3 a-b-c: a-c is one orbit, and the two end-to-fresh moves agree.
        let p3 = g(&[(0, 1, Blue), (1, 2, Blue)]);
        assert_eq!(
            marked_edge_key(&p3, Some(0), None),
            marked_edge_key(&p3, Some(2), None)
        );
        assert_ne!(
            marked_edge_key(&p3, Some(0), None),
            marked_edge_key(&p3, Some(1), None)
        );
    }
}
