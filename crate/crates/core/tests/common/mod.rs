//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's own search code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use online_ramsey::{Color, ColoredGraph, Vertex};
use rand::Rng;

/// Longest blue path order by subset DP over (visited set, endpoint).
pub fn longest_blue_order(g: &ColoredGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 16, "oracle is exponential");
    if n == 0 {
        return 0;
    }
    let mut blue = vec![0u32; n];
    for e in g.edges() {
        if e.color == Color::Blue {
            blue[e.u as usize] |= 1 << e.v;
            blue[e.v as usize] |= 1 << e.u;
        }
    }
    let mut reach = vec![0u32; 1 << n];
    let mut best = 1;
    for v in 0..n {
        reach[1 << v] |= 1 << v;
    }
    for mask in 1usize..(1 << n) {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
        for v in 0..n {
            if ends & (1 << v) == 0 {
                continue;
            }
            let mut next = blue[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[mask | (1 << w)] |= 1 << w;
            }
        }
    }
    best
}

/// True iff `path` is a simple path of edges colored `c`.
pub fn is_path(g: &ColoredGraph, path: &[Vertex], c: Color) -> bool {
    let distinct: BTreeSet<_> = path.iter().collect();
    distinct.len() == path.len() && path.windows(2).all(|w| g.color(w[0], w[1]) == Some(c))
}

/// Red path of order `m`, by trying every vertex sequence.
pub fn has_red_path(g: &ColoredGraph, m: usize) -> bool {
    fn go(g: &ColoredGraph, path: &mut Vec<Vertex>, m: usize) -> bool {
        if path.len() == m {
            return true;
        }
        for v in g.vertices() {
            if path.contains(&v) {
                continue;
            }
            if let Some(&last) = path.last() {
                if g.color(last, v) != Some(Color::Red) {
                    continue;
                }
            }
            path.push(v);
            if go(g, path, m) {
                return true;
            }
            path.pop();
        }
        false
    }
    m > 0 && go(g, &mut Vec::new(), m)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

type Code = Vec<(usize, usize, u8)>;

fn encode(g: &ColoredGraph, perm: &[usize]) -> Code {
    let mut code: Code = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (perm[e.u as usize], perm[e.v as usize]);
            (a.min(b), a.max(b), e.color as u8)
        })
        .collect();
    code.sort();
    code
}

/// Least edge list over all vertex permutations.
pub fn brute_canon(g: &ColoredGraph) -> (usize, Code) {
    let n = g.vertex_count();
    let best = permutations(n)
        .iter()
        .map(|p| encode(g, p))
        .min()
        .unwrap_or_default();
    (n, best)
}

/// Every 2-colored graph with at most three edges and no isolated vertex,
/// one per isomorphism class.
pub fn small_catalog() -> Vec<ColoredGraph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..6)
        .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut consider = |edges: Vec<(Vertex, Vertex, Color)>| {
        let touched: BTreeSet<Vertex> = edges.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        let idx = |x: Vertex| touched.iter().position(|&t| t == x).unwrap() as Vertex;
        let g =
            ColoredGraph::from_edges(edges.iter().map(|&(u, v, c)| (idx(u), idx(v), c))).unwrap();
        if seen.insert(brute_canon(&g)) {
            out.push(g);
        }
    };
    consider(Vec::new());
    for size in 1..=3 {
        for combo in combinations(pairs.len(), size) {
            for mask in 0..(1u32 << size) {
                let edges = combo
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| {
                        let c = if mask & (1 << i) != 0 {
                            Color::Blue
                        } else {
                            Color::Red
                        };
                        (pairs[p].0, pairs[p].1, c)
                    })
                    .collect();
                consider(edges);
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Orbits of legal new edges on `g` plus two fresh vertices, under the
/// color-preserving automorphisms found by trying every permutation.
pub fn move_orbits(g: &ColoredGraph) -> usize {
    let mut h = g.clone();
    h.add_vertex();
    h.add_vertex();
    let n = h.vertex_count();
    let me = encode(&h, &(0..n).collect::<Vec<_>>());
    let autos: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|p| encode(&h, p) == me)
        .collect();
    let mut orbits = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            if h.has_edge(a as Vertex, b as Vertex) {
                continue;
            }
            let orbit: BTreeSet<(usize, usize)> = autos
                .iter()
                .map(|p| (p[a].min(p[b]), p[a].max(p[b])))
                .collect();
            orbits.insert(orbit);
        }
    }
    orbits.len()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> ColoredGraph {
    let mut g = ColoredGraph::new();
    g.ensure_vertex(n as Vertex - 1);
    for a in 0..n as Vertex {
        for b in a + 1..n as Vertex {
            if rng.gen_bool(density) {
                let c = if rng.gen_bool(0.5) {
                    Color::Blue
                } else {
                    Color::Red
                };
                g.insert_edge(a, b, c).unwrap();
            }
        }
    }
    g
}

/// Same graph with vertex `v` renamed `perm[v]`, edges inserted in a
/// scrambled order.
pub fn relabel(g: &ColoredGraph, perm: &[Vertex]) -> ColoredGraph {
    let mut edges: Vec<_> = g
        .edges()
        .iter()
        .map(|e| (perm[e.u as usize], perm[e.v as usize], e.color))
        .collect();
    edges.reverse();
    let mut h = ColoredGraph::new();
    if g.vertex_count() > 0 {
        h.ensure_vertex(g.vertex_count() as Vertex - 1);
    }
    for (u, v, c) in edges {
        h.insert_edge(u, v, c).unwrap();
    }
    h
}
