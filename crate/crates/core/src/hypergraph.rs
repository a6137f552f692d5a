//! k-uniform hypergraphs and adjacency-tensor contractions.
//!
//! The adjacency tensor of a k-uniform hypergraph has an entry `1/(k-1)!` at
//! every ordered tuple spelling an edge. Nothing here materializes that
//! object: the two contractions we need collapse to sums over edges, where
//! the symmetrization factor cancels —
//!
//! ```text
//! A x^k          = k  · Σ_e sign(e) · Π_{v ∈ e} x_v
//! (A x^{k-1})_i  =      Σ_{e ∋ i} sign(e) · Π_{v ∈ e, v ≠ i} x_v
//! ```
//!
//! (`tests::edge_sum_matches_naive_tensor` checks this once against a literal
//! full-tensor evaluation.) Signs are +1 for a plain hypergraph; signed
//! variants arise from t-independent sets via [`sign_from_set`].
//!
//! File format mirrors the graph edge list: one edge per line as k vertex
//! ids, `#` comments, optional `k <K>` / `n <N>` headers before the edges.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::Error;
use crate::graph::ParseMode;
use crate::Result;

/// Immutable k-uniform hypergraph on vertices `0..n`. Edges are sorted
/// vertex lists, stored in lexicographic order, duplicates rejected.
/// Degree-0 vertices are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<u32>>,
    /// Edge indices incident to each vertex.
    incidence: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge and the edge list. Rejects
    /// edges of the wrong size, repeated vertices within an edge, ids `>= n`,
    /// and duplicate edges.
    pub fn new(n: usize, k: usize, edges: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Input("edge size k must be positive".into()));
        }
        let mut norm: Vec<Vec<u32>> = Vec::new();
        for mut e in edges {
            if e.len() != k {
                return Err(Error::Input(format!(
                    "edge {:?} has {} vertices, expected k = {k}",
                    e,
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("edge {e:?} repeats a vertex")));
            }
            if *e.last().unwrap() as usize >= n {
                return Err(Error::Input(format!(
                    "edge {e:?} mentions a vertex >= n = {n}"
                )));
            }
            norm.push(e);
        }
        norm.sort();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!("duplicate edge {:?}", w[0])));
        }
        let mut incidence = vec![Vec::new(); n];
        for (idx, e) in norm.iter().enumerate() {
            for &v in e {
                incidence[v as usize].push(idx as u32);
            }
        }
        Ok(Hypergraph {
            n,
            k,
            edges: norm,
            incidence,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    /// Indices of edges containing `v`.
    pub fn edges_at(&self, v: u32) -> &[u32] {
        &self.incidence[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.incidence[v as usize].len()
    }

    pub fn min_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Validates a vertex subset, returning a membership mask.
    pub fn membership_mask(&self, set: &[u32]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in set {
            if v as usize >= self.n {
                return Err(Error::Input(format!(
                    "set mentions vertex {v} but hypergraph has n = {}",
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

    /// Serializes to the hyperedge-list format this crate parses.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "k {}", self.k).unwrap();
        writeln!(out, "n {}", self.n).unwrap();
        for e in &self.edges {
            let words: Vec<String> = e.iter().map(u32::to_string).collect();
            writeln!(out, "{}", words.join(" ")).unwrap();
        }
        out
    }
}

/// Anything the tensor contractions can run over: a hypergraph with a sign
/// per edge.
pub trait TensorView {
    fn hypergraph(&self) -> &Hypergraph;
    /// Sign of the edge at `edge_index`, ±1.
    fn sign(&self, edge_index: usize) -> f64;
}

impl TensorView for Hypergraph {
    fn hypergraph(&self) -> &Hypergraph {
        self
    }

    fn sign(&self, _edge_index: usize) -> f64 {
        1.0
    }
}

/// A hypergraph with a ±1 sign on every edge (a signed adjacency tensor).
#[derive(Debug, Clone)]
pub struct SignedHypergraph {
    base: Hypergraph,
    signs: Vec<i8>,
}

impl SignedHypergraph {
    /// Pairs a hypergraph with explicit edge signs (aligned with
    /// `base.edges()`).
    pub fn new(base: Hypergraph, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != base.m() {
            return Err(Error::Input(format!(
                "got {} signs for {} edges",
                signs.len(),
                base.m()
            )));
        }
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::Input("edge signs must be ±1".into()));
        }
        Ok(SignedHypergraph { base, signs })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

impl TensorView for SignedHypergraph {
    fn hypergraph(&self) -> &Hypergraph {
        &self.base
    }

    fn sign(&self, edge_index: usize) -> f64 {
        self.signs[edge_index] as f64
    }
}

/// Full contraction `A x^k` of the (signed) adjacency tensor.
pub fn axk<T: TensorView>(t: &T, x: &[f64]) -> f64 {
    let h = t.hypergraph();
    assert_eq!(x.len(), h.n(), "x length must equal vertex count");
    let mut sum = 0.0;
    for (idx, e) in h.edges().iter().enumerate() {
        let prod: f64 = e.iter().map(|&v| x[v as usize]).product();
        sum += t.sign(idx) * prod;
    }
    h.k() as f64 * sum
}

/// Partial contraction `A x^{k-1}`, one component per vertex.
pub fn axk1<T: TensorView>(t: &T, x: &[f64]) -> Vec<f64> {
    let h = t.hypergraph();
    assert_eq!(x.len(), h.n(), "x length must equal vertex count");
    let mut out = vec![0.0; h.n()];
    for (idx, e) in h.edges().iter().enumerate() {
        let sign = t.sign(idx);
        // Product over the edge with one vertex left out, for each vertex:
        // recompute per leave-out slot; k is tiny, cleverness not needed.
        for (slot, &v) in e.iter().enumerate() {
            let prod: f64 = e
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != slot)
                .map(|(_, &w)| x[w as usize])
                .product();
            out[v as usize] += sign * prod;
        }
    }
    out
}

/// Result of checking whether every edge meets a set in 0 or exactly t
/// vertices.
#[derive(Debug, Clone)]
pub struct TSetCheck {
    /// True iff all intersection sizes lie in `{0, t}`.
    pub valid: bool,
    /// Intersection size → number of edges with that size.
    pub histogram: BTreeMap<usize, usize>,
}

/// Computes the intersection histogram of `set` against all edges and
/// whether `set` is t-independent. Requires `0 < t < k`.
pub fn check_t_set(h: &Hypergraph, set: &[u32], t: usize) -> Result<TSetCheck> {
    if t == 0 || t >= h.k() {
        return Err(Error::refusal(
            "t-independence check",
            format!("requires 0 < t < k; got t = {t}, k = {}", h.k()),
        ));
    }
    let mask = h.membership_mask(set)?;
    let mut histogram = BTreeMap::new();
    for e in h.edges() {
        let size = e.iter().filter(|&&v| mask[v as usize]).count();
        *histogram.entry(size).or_insert(0) += 1;
    }
    let valid = histogram.keys().all(|&size| size == 0 || size == t);
    Ok(TSetCheck { valid, histogram })
}

/// A validated t-independent set: every edge meets it in 0 or exactly `t`
/// vertices.
#[derive(Debug, Clone)]
pub struct TSet {
    set: Vec<u32>,
    t: usize,
}

impl TSet {
    /// Validates and wraps a t-independent set.
    pub fn new(h: &Hypergraph, set: Vec<u32>, t: usize) -> Result<TSet> {
        let check = check_t_set(h, &set, t)?;
        if !check.valid {
            return Err(Error::refusal(
                "t-independent set",
                format!(
                    "some edge meets the set in a size outside {{0, {t}}} \
                     (histogram: {:?})",
                    check.histogram
                ),
            ));
        }
        let mut sorted = set;
        sorted.sort_unstable();
        Ok(TSet { set: sorted, t })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.set
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

/// Signs every edge meeting `S` (necessarily in exactly `t` vertices) with
/// −1 and every disjoint edge with +1.
pub fn sign_from_set(h: &Hypergraph, s: &TSet) -> SignedHypergraph {
    let mask = {
        let mut m = vec![false; h.n()];
        for &v in s.vertices() {
            m[v as usize] = true;
        }
        m
    };
    let signs = h
        .edges()
        .iter()
        .map(|e| {
            let hit = e.iter().any(|&v| mask[v as usize]);
            if hit {
                -1i8
            } else {
                1i8
            }
        })
        .collect();
    SignedHypergraph {
        base: h.clone(),
        signs,
    }
}

/// Parses the hyperedge-list format. Optional `k <K>` and `n <N>` headers
/// may precede the edges (in either order); without a `k` header the edge
/// size is inferred from the first edge line. Errors carry 1-based line
/// numbers.
pub fn parse_hypergraph(text: &str, mode: ParseMode) -> Result<Hypergraph> {
    let mut header_k: Option<usize> = None;
    let mut header_n: Option<usize> = None;
    let mut edges: Vec<(Vec<u32>, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "k" || tokens[0] == "n" {
            if !edges.is_empty() {
                return Err(Error::parse(
                    line_no,
                    format!("{} header must precede all edges", tokens[0]),
                ));
            }
            if tokens.len() != 2 {
                return Err(Error::parse(
                    line_no,
                    format!("{} header needs exactly one count", tokens[0]),
                ));
            }
            let value = tokens[1]
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("invalid count '{}'", tokens[1])))?;
            let slot = if tokens[0] == "k" {
                &mut header_k
            } else {
                &mut header_n
            };
            if slot.is_some() {
                return Err(Error::parse(
                    line_no,
                    format!("duplicate {} header", tokens[0]),
                ));
            }
            *slot = Some(value);
            continue;
        }
        let mut edge = Vec::with_capacity(tokens.len());
        for tok in &tokens {
            let v = tok
                .parse::<u32>()
                .map_err(|_| Error::parse(line_no, format!("invalid vertex id '{tok}'")))?;
            edge.push(v);
        }
        let k = *header_k.get_or_insert(edge.len());
        if edge.len() != k {
            return Err(Error::parse(
                line_no,
                format!("edge has {} vertices, expected k = {k}", edge.len()),
            ));
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parse(line_no, "edge repeats a vertex"));
        }
        edges.push((sorted, line_no));
    }

    let k = match header_k {
        Some(k) => k,
        None => {
            return Err(Error::Input(
                "no edges and no k header; cannot determine edge size".into(),
            ))
        }
    };

    // Duplicate edges with line attribution.
    {
        let mut seen = BTreeSet::new();
        for (e, line_no) in &edges {
            if !seen.insert(e.clone()) {
                return Err(Error::parse(*line_no, format!("duplicate edge {e:?}")));
            }
        }
    }

    let max_id = edges.iter().filter_map(|(e, _)| e.last().copied()).max();
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
                "no edges and no n header; an edgeless hypergraph needs 'n <N>'".into(),
            ))
        }
    };

    let (n, edge_lists): (usize, Vec<Vec<u32>>) =
        if mode == ParseMode::Compact && header_n.is_none() {
            let used: BTreeSet<u32> = edges.iter().flat_map(|(e, _)| e.iter().copied()).collect();
            let rank = |x: u32| used.range(..x).count() as u32;
            (
                used.len(),
                edges
                    .iter()
                    .map(|(e, _)| e.iter().map(|&v| rank(v)).collect())
                    .collect(),
            )
        } else {
            if header_n.is_none() {
                let mut used = vec![false; n];
                for (e, _) in &edges {
                    for &v in e {
                        used[v as usize] = true;
                    }
                }
                if let Some(missing) = used.iter().position(|&b| !b) {
                    return Err(Error::Input(format!(
                        "vertex {missing} appears in no edge; declare 'n {n}' to keep it isolated \
                     or parse with compaction"
                    )));
                }
            }
            (n, edges.into_iter().map(|(e, _)| e).collect())
        };

    Hypergraph::new(n, k, edge_lists)
}
