//! The game board: a simple graph whose edges carry a fixed red or blue color.

use std::fmt;

use thiserror::Error;

/// Vertex identifier. Identifiers come from a monotone counter, so a vertex
/// that has never been touched is simply the next unused id.
pub type Vertex = u32;

/// Edge color. `Red < Blue` is the fixed tie-breaking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }

    pub fn parse(s: &str) -> Option<Color> {
        match s {
            "red" | "r" | "R" => Some(Color::Red),
            "blue" | "b" | "B" => Some(Color::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(Vertex),
    #[error("edge {0}-{1} already drawn")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {0} is not on the board")]
    UnknownVertex(Vertex),
}

/// A drawn edge, kept in the order it was added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoredEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColoredGraph {
    adj: Vec<Vec<(Vertex, Color)>>,
    edges: Vec<ColoredEdge>,
}

impl ColoredGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph on vertices `0..=max endpoint` from an edge list.
    pub fn from_edges<I>(edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Color)>,
    {
        let mut g = ColoredGraph::new();
        for (u, v, c) in edges {
            g.ensure_vertex(u.max(v));
            g.insert_edge(u, v, c)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[ColoredEdge] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.adj.len() as Vertex
    }

    /// Id that the next call to [`add_vertex`](Self::add_vertex) returns.
    pub fn next_vertex(&self) -> Vertex {
        self.adj.len() as Vertex
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        (self.adj.len() - 1) as Vertex
    }

    /// Allocates fresh vertices until `v` exists.
    pub fn ensure_vertex(&mut self, v: Vertex) {
        while self.adj.len() <= v as usize {
            self.adj.push(Vec::new());
        }
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        (v as usize) < self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, Color)] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn color_degree(&self, v: Vertex, c: Color) -> usize {
        self.adj[v as usize]
            .iter()
            .filter(|&&(_, col)| col == c)
            .count()
    }

    pub fn color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        if !self.contains_vertex(u) || !self.contains_vertex(v) {
            return None;
        }
        let (a, b) = if self.adj[u as usize].len() <= self.adj[v as usize].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a as usize]
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, c)| c)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.color(u, v).is_some()
    }

    /// Checks that `u`–`v` could be drawn as a new edge.
    pub fn check_new_edge(&self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        for w in [u, v] {
            if !self.contains_vertex(w) {
                return Err(GraphError::UnknownVertex(w));
            }
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        Ok(())
    }

    pub fn insert_edge(&mut self, u: Vertex, v: Vertex, c: Color) -> Result<(), GraphError> {
        self.check_new_edge(u, v)?;
        self.adj[u as usize].push((v, c));
        self.adj[v as usize].push((u, c));
        self.edges.push(ColoredEdge { u, v, color: c });
        Ok(())
    }

    /// Value-semantics variant of [`insert_edge`](Self::insert_edge).
    pub fn with_edge(&self, u: Vertex, v: Vertex, c: Color) -> Result<ColoredGraph, GraphError> {
        let mut g = self.clone();
        g.insert_edge(u, v, c)?;
        Ok(g)
    }

    /// Removes the most recently added edge.
    pub fn pop_edge(&mut self) -> Option<ColoredEdge> {
        let e = self.edges.pop()?;
        self.adj[e.u as usize].pop();
        self.adj[e.v as usize].pop();
        Some(e)
    }

    pub fn count_color(&self, c: Color) -> usize {
        self.edges.iter().filter(|e| e.color == c).count()
    }

    fn color_neighbors(&self, v: Vertex, c: Color) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v as usize]
            .iter()
            .filter(move |&&(_, col)| col == c)
            .map(|&(w, _)| w)
    }

    /// True iff the red subgraph contains a path on `m` vertices.
    pub fn has_red_path_of_order(&self, m: usize) -> bool {
        self.has_path_of_order(Color::Red, m)
    }

    pub fn has_blue_path_of_order(&self, m: usize) -> bool {
        self.has_path_of_order(Color::Blue, m)
    }

    /// True iff the `c`-colored subgraph contains a simple path on `m`
    /// vertices. Isolated vertices count as paths of order one; an empty
    /// board has no path at all.
    pub fn has_path_of_order(&self, c: Color, m: usize) -> bool {
        if m == 0 {
            return true;
        }
        if self.vertex_count() == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        if self.count_color(c) < m - 1 {
            return false;
        }
        let mut search = PathSearch::new(self, c);
        search.exists(m)
    }

    /// Longest simple path in the `c`-colored subgraph, as (order, witness).
    pub fn longest_path(&self, c: Color) -> (usize, Vec<Vertex>) {
        if self.vertex_count() == 0 {
            return (0, Vec::new());
        }
        let mut search = PathSearch::new(self, c);
        let best = search.longest();
        if best.is_empty() {
            (1, vec![0])
        } else {
            (best.len(), best)
        }
    }

    pub fn longest_blue_path(&self) -> (usize, Vec<Vertex>) {
        self.longest_path(Color::Blue)
    }

    /// True iff coloring the new edge `u`–`v` red would complete a red P4.
    pub fn would_create_red_p4(&self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        self.check_new_edge(u, v)?;
        // u–v in the middle: a–u–v–b.
        for a in self.color_neighbors(u, Color::Red) {
            if self.color_neighbors(v, Color::Red).any(|b| b != a) {
                return Ok(true);
            }
        }
        // u–v at an end: u–v–b–c or v–u–b–c.
        for (x, y) in [(u, v), (v, u)] {
            for b in self.color_neighbors(y, Color::Red) {
                if self
                    .color_neighbors(b, Color::Red)
                    .any(|c| c != x && c != y)
                {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// True iff `u` and `v` already lie in the same red component.
    pub fn would_create_red_cycle(&self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        self.check_new_edge(u, v)?;
        Ok(self.component(u, Color::Red).contains(&v))
    }

    /// Vertices of the `c`-colored component containing `start`.
    pub fn component(&self, start: Vertex, c: Color) -> Vec<Vertex> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![start];
        let mut out = Vec::new();
        seen[start as usize] = true;
        while let Some(x) = stack.pop() {
            out.push(x);
            for y in self.color_neighbors(x, c) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        out
    }

    /// True iff every red component is a star (or a single edge/vertex).
    pub fn red_is_star_forest(&self) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        for v in self.vertices() {
            if seen[v as usize] || self.color_degree(v, Color::Red) == 0 {
                continue;
            }
            let comp = self.component(v, Color::Red);
            let edges: usize = comp
                .iter()
                .map(|&x| self.color_degree(x, Color::Red))
                .sum::<usize>()
                / 2;
            let max_deg = comp
                .iter()
                .map(|&x| self.color_degree(x, Color::Red))
                .max()
                .unwrap_or(0);
            for &x in &comp {
                seen[x as usize] = true;
            }
            if edges + 1 != comp.len() || max_deg != edges {
                return false;
            }
        }
        true
    }

    /// Vertices with at least one incident edge.
    pub fn touched_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(move |&v| self.degree(v) > 0)
    }
}

/// Depth-first simple-path search restricted to one color, with a
/// reachability bound used to cut branches that cannot reach the target.
struct PathSearch<'a> {
    g: &'a ColoredGraph,
    color: Color,
    on_path: Vec<bool>,
    path: Vec<Vertex>,
    best: Vec<Vertex>,
    mark: Vec<u32>,
    stamp: u32,
    queue: Vec<Vertex>,
}

impl<'a> PathSearch<'a> {
    fn new(g: &'a ColoredGraph, color: Color) -> Self {
        let n = g.vertex_count();
        PathSearch {
            g,
            color,
            on_path: vec![false; n],
            path: Vec::new(),
            best: Vec::new(),
            mark: vec![0; n],
            stamp: 0,
            queue: Vec::new(),
        }
    }

    /// Number of off-path vertices reachable from `v` through off-path
    /// vertices.
    fn reachable_from(&mut self, v: Vertex) -> usize {
        self.stamp += 1;
        let stamp = self.stamp;
        self.queue.clear();
        self.queue.push(v);
        let mut count = 0;
        while let Some(x) = self.queue.pop() {
            for &(y, c) in self.g.neighbors(x) {
                if c == self.color && !self.on_path[y as usize] && self.mark[y as usize] != stamp {
                    self.mark[y as usize] = stamp;
                    count += 1;
                    self.queue.push(y);
                }
            }
        }
        count
    }

    fn component_sizes(&self) -> Vec<usize> {
        let n = self.g.vertex_count();
        let mut comp_size = vec![0; n];
        let mut seen = vec![false; n];
        for v in 0..n as Vertex {
            if seen[v as usize] {
                continue;
            }
            let comp = self.g.component(v, self.color);
            for &x in &comp {
                seen[x as usize] = true;
            }
            for &x in &comp {
                comp_size[x as usize] = comp.len();
            }
        }
        comp_size
    }

    fn start_order(&self) -> Vec<Vertex> {
        // Low-degree vertices first: path ends are usually leaves.
        let mut starts: Vec<Vertex> = self
            .g
            .vertices()
            .filter(|&v| self.g.color_degree(v, self.color) > 0)
            .collect();
        starts.sort_by_key(|&v| (self.g.color_degree(v, self.color), v));
        starts
    }

    fn exists(&mut self, m: usize) -> bool {
        let sizes = self.component_sizes();
        for s in self.start_order() {
            if sizes[s as usize] < m {
                continue;
            }
            self.on_path[s as usize] = true;
            self.path.push(s);
            let found = self.extend_to(m);
            self.path.pop();
            self.on_path[s as usize] = false;
            if found {
                return true;
            }
        }
        false
    }

    fn extend_to(&mut self, m: usize) -> bool {
        if self.path.len() >= m {
            return true;
        }
        let end = *self.path.last().unwrap();
        if self.path.len() + self.reachable_from(end) < m {
            return false;
        }
        let next: Vec<Vertex> = self
            .g
            .neighbors(end)
            .iter()
            .filter(|&&(w, c)| c == self.color && !self.on_path[w as usize])
            .map(|&(w, _)| w)
            .collect();
        for w in next {
            self.on_path[w as usize] = true;
            self.path.push(w);
            let found = self.extend_to(m);
            self.path.pop();
            self.on_path[w as usize] = false;
            if found {
                return true;
            }
        }
        false
    }

    fn longest(&mut self) -> Vec<Vertex> {
        let sizes = self.component_sizes();
        for s in self.start_order() {
            if sizes[s as usize] <= self.best.len() {
                continue;
            }
            self.on_path[s as usize] = true;
            self.path.push(s);
            self.extend_longest(sizes[s as usize]);
            self.path.pop();
            self.on_path[s as usize] = false;
        }
        self.best.clone()
    }

    fn extend_longest(&mut self, cap: usize) {
        if self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        if self.best.len() >= cap {
            return;
        }
        let end = *self.path.last().unwrap();
        if self.path.len() + self.reachable_from(end) <= self.best.len() {
            return;
        }
        let next: Vec<Vertex> = self
            .g
            .neighbors(end)
            .iter()
            .filter(|&&(w, c)| c == self.color && !self.on_path[w as usize])
            .map(|&(w, _)| w)
            .collect();
        for w in next {
            self.on_path[w as usize] = true;
            self.path.push(w);
            self.extend_longest(cap);
            self.path.pop();
            self.on_path[w as usize] = false;
        }
    }
}
