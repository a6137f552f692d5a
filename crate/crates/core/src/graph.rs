//! Simple undirected graphs: model, parsing, serialization, named families.
//!
//! The on-disk format is a plain edge list, one `u v` pair per line, with
//! `#` comments and an optional `n <N>` header that declares the vertex
//! count explicitly (needed for isolated vertices, and the only way to
//! express an edgeless graph). Vertex ids are dense 0-based integers; by
//! default an id that never appears in any edge and is not covered by a
//! header is treated as a mistake rather than silently creating an isolated
//! vertex — callers that want gap compaction opt in via [`ParseMode::Compact`].

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::Error;
use crate::matrix::SymMatrix;
use crate::Result;

/// Immutable undirected graph on vertices `0..n`. No self-loops, no
/// multi-edges. Construct via [`Graph::new`], [`parse_graph`], or a named
/// family; never mutated afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, each pair normalized to `u < v`.
    edges: Vec<(u32, u32)>,
    /// Sorted neighbor lists, one per vertex.
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph, normalizing and sorting the edge list. Rejects
    /// self-loops, duplicate edges, and endpoint ids `>= n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut norm: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Input(format!("self-loop at vertex {a}")));
            }
            if a as usize >= n || b as usize >= n {
                return Err(Error::Input(format!(
                    "edge ({a}, {b}) mentions a vertex >= n = {n}"
                )));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
        })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Normalized sorted edge list.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Minimum degree (0 for the empty vertex set is nonsense, so `n >= 1`
    /// is assumed by callers).
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Maximum degree.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Average degree `2m / n`.
    pub fn avg_degree(&self) -> f64 {
        2.0 * self.m() as f64 / self.n as f64
    }

    /// True if every vertex has the same degree.
    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// True if `u` and `v` are adjacent.
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// True if the graph is connected (vacuously true for `n <= 1`).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Validates that `set` lists distinct in-range vertices; returns a
    /// membership mask.
    pub fn membership_mask(&self, set: &[u32]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in set {
            if v as usize >= self.n {
                return Err(Error::Input(format!(
                    "set mentions vertex {v} but graph has n = {}",
                    self.n
                )));
            }
            if mask[v as usize] {
                return Err(Error::Input(format!("set lists vertex {v} twice")));
            }
            mask[v as usize] = true;
        }
        Ok(mask)
    }

    /// True if `set` spans no edge.
    pub fn is_independent(&self, set: &[u32]) -> Result<bool> {
        let mask = self.membership_mask(set)?;
        Ok(self
            .edges
            .iter()
            .all(|&(u, v)| !(mask[u as usize] && mask[v as usize])))
    }

    /// Number of neighbors of `v` inside the masked set.
    pub fn neighbors_in_mask(&self, v: u32, mask: &[bool]) -> usize {
        self.neighbors(v)
            .iter()
            .filter(|&&w| mask[w as usize])
            .count()
    }

    /// Dense adjacency matrix.
    pub fn adjacency_matrix(&self) -> SymMatrix {
        let mut a = SymMatrix::zeros(self.n);
        for &(u, v) in &self.edges {
            a.set(u as usize, v as usize, 1.0);
        }
        a
    }

    /// Dense Laplacian `D - A`.
    pub fn laplacian_matrix(&self) -> SymMatrix {
        let mut l = SymMatrix::zeros(self.n);
        for &(u, v) in &self.edges {
            l.set(u as usize, v as usize, -1.0);
        }
        for v in 0..self.n {
            l.set(v, v, self.degree(v as u32) as f64);
        }
        l
    }

    /// Serializes to the edge-list format this crate parses: an `n <N>`
    /// header followed by sorted `u v` lines with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.n).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    // ---- named families ------------------------------------------------

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).unwrap()
    }

    /// Path on `n >= 1` vertices.
    pub fn path(n: usize) -> Graph {
        Graph::new(
            n,
            (0..n.saturating_sub(1)).map(|i| (i as u32, i as u32 + 1)),
        )
        .unwrap()
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs n >= 3");
        Graph::new(n, (0..n).map(|i| (i as u32, ((i + 1) % n) as u32))).unwrap()
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let edges = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i as u32, j as u32)))
            .collect::<Vec<_>>();
        Graph::new(n, edges).unwrap()
    }

    /// Star with `leaves` leaves: center 0, leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v as u32))).unwrap()
    }

    /// The Petersen graph: outer 5-cycle 0-4, inner pentagram 5-9, spokes.
    pub fn petersen() -> Graph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((i, i + 5)); // spoke
            edges.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        Graph::new(10, edges).unwrap()
    }

    /// Circulant graph on `n` vertices with the given jump set. Each jump
    /// `j` must satisfy `1 <= j <= n/2`; jump `n/2` (n even) contributes one
    /// edge per vertex pair, every other jump two per vertex.
    pub fn circulant(n: usize, jumps: &[usize]) -> Result<Graph> {
        let mut edges = BTreeSet::new();
        for &j in jumps {
            if j == 0 || j > n / 2 {
                return Err(Error::Input(format!(
                    "circulant jump {j} out of range 1..={}",
                    n / 2
                )));
            }
            for i in 0..n {
                let u = i as u32;
                let v = ((i + j) % n) as u32;
                edges.insert((u.min(v), u.max(v)));
            }
        }
        Graph::new(n, edges)
    }
}

/// How [`parse_graph`] treats vertex ids that leave gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    /// Ids are taken literally; a gap (an id below the maximum that appears
    /// in no edge) is an error unless an `n` header covers it. Keeps reported
    /// certificates in the caller's own vertex numbering.
    Strict,
    /// Appearing ids are renumbered densely, order-preserving. Only useful
    /// for inputs numbered sparsely on purpose; an explicit `n` header
    /// disables compaction since it declares the numbering intentional.
    Compact,
}

/// Parses the edge-list format. Lines hold two vertex ids; `#` starts a
/// comment; blank lines are skipped; one optional `n <N>` header may precede
/// the edges. Errors carry 1-based line numbers.
pub fn parse_graph(text: &str, mode: ParseMode) -> Result<Graph> {
    let mut header_n: Option<usize> = None;
    let mut edges: Vec<(u32, u32, usize)> = Vec::new(); // (u, v, line)

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if !edges.is_empty() {
                return Err(Error::parse(line_no, "n header must precede all edges"));
            }
            if header_n.is_some() {
                return Err(Error::parse(line_no, "duplicate n header"));
            }
            if tokens.len() != 2 {
                return Err(Error::parse(line_no, "n header needs exactly one count"));
            }
            let count = tokens[1].parse::<usize>().map_err(|_| {
                Error::parse(line_no, format!("invalid vertex count '{}'", tokens[1]))
            })?;
            header_n = Some(count);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::parse(
                line_no,
                format!("expected two vertex ids, got {} tokens", tokens.len()),
            ));
        }
        let mut pair = [0u32; 2];
        for (slot, tok) in pair.iter_mut().zip(&tokens) {
            *slot = tok
                .parse::<u32>()
                .map_err(|_| Error::parse(line_no, format!("invalid vertex id '{tok}'")))?;
        }
        let (u, v) = (pair[0], pair[1]);
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
        }
        edges.push((u.min(v), u.max(v), line_no));
    }

    // Duplicate detection with line attribution before any renumbering.
    {
        let mut seen = BTreeSet::new();
        for &(u, v, line_no) in &edges {
            if !seen.insert((u, v)) {
                return Err(Error::parse(line_no, format!("duplicate edge {u} {v}")));
            }
        }
    }

    let max_id = edges.iter().map(|&(_, v, _)| v).max();
    let n = match (header_n, max_id) {
        (Some(h), Some(max)) => {
            if h < max as usize + 1 {
                return Err(Error::Input(format!(
                    "n header declares {h} vertices but an edge mentions vertex {max}"
                )));
            }
            h
        }
        (Some(h), None) => h,
        (None, Some(max)) => max as usize + 1,
        (None, None) => {
            return Err(Error::Input(
                "no edges and no n header; an edgeless graph needs 'n <N>'".into(),
            ))
        }
    };

    let (n, pairs): (usize, Vec<(u32, u32)>) = if mode == ParseMode::Compact && header_n.is_none() {
        let used: BTreeSet<u32> = edges.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        let rank = |x: u32| used.range(..x).count() as u32;
        (
            used.len(),
            edges.iter().map(|&(u, v, _)| (rank(u), rank(v))).collect(),
        )
    } else {
        if header_n.is_none() {
            // Strict mode: every id below the maximum must occur.
            let mut used = vec![false; n];
            for &(u, v, _) in &edges {
                used[u as usize] = true;
                used[v as usize] = true;
            }
            if let Some(missing) = used.iter().position(|&b| !b) {
                return Err(Error::Input(format!(
                    "vertex {missing} appears in no edge; declare 'n {n}' to keep it isolated \
                     or parse with compaction"
                )));
            }
        }
        (n, edges.iter().map(|&(u, v, _)| (u, v)).collect())
    };

    Graph::new(n, pairs)
}
