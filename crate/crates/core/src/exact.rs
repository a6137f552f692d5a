//! Exact independence numbers at desk scale.
//!
//! These are the ground-truth oracles the spectral bounds are tested
//! against: a bitset branch-and-bound for α(G) with a greedy clique-cover
//! upper bound, a pruned DFS for the t-independence number of a hypergraph,
//! strong graph powers, and the Shannon capacity lower bound
//! `max_k α(G^k)^{1/k}` for k ≤ 2.
//!
//! All searches carry an explicit node budget. Exhausting it never produces
//! a silently wrong answer: the result keeps the best set found and is
//! marked inexact.

use serde::Serialize;

use crate::error::Error;
use crate::graph::Graph;
use crate::hypergraph::{check_t_set, Hypergraph};
use crate::Result;

/// Default branch-and-bound node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Hard vertex cap for the bitset searches.
pub const MAX_SEARCH_VERTICES: usize = 64;

/// Default cap on the order of a constructed power graph.
pub const DEFAULT_POWER_CAP: usize = 4096;

/// Outcome of an exact search.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaResult {
    /// Size of the best set found. Equals the independence number iff
    /// `exact`.
    pub value: usize,
    /// The set itself, sorted. Always re-validated before being returned.
    pub witness: Vec<u32>,
    /// False iff the node budget ran out first; `value` is then only a
    /// lower bound ("unknown, best found").
    pub exact: bool,
    /// Search nodes explored.
    pub nodes: u64,
}

struct MisSearch<'a> {
    adj: &'a [u64],
    best: usize,
    best_set: u64,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl MisSearch<'_> {
    /// Greedy clique cover of the candidate set: α restricted to `p` is at
    /// most the number of cliques used.
    fn clique_cover(&self, p: u64) -> usize {
        let mut rest = p;
        let mut count = 0;
        while rest != 0 {
            count += 1;
            let v = rest.trailing_zeros() as usize;
            rest &= !(1u64 << v);
            let mut cand = rest & self.adj[v];
            while cand != 0 {
                let u = cand.trailing_zeros() as usize;
                cand &= !(1u64 << u);
                rest &= !(1u64 << u);
                cand &= self.adj[u];
            }
        }
        count
    }

    fn run(&mut self, p: u64, current: u64, size: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if size > self.best {
            self.best = size;
            self.best_set = current;
        }
        if p == 0 || size + self.clique_cover(p) <= self.best {
            return;
        }
        // Branch on the candidate with the most candidate neighbors:
        // including it shrinks p the most.
        let mut v = 0;
        let mut scan = p;
        let mut max_deg = 0;
        while scan != 0 {
            let u = scan.trailing_zeros() as usize;
            scan &= !(1u64 << u);
            let deg = (self.adj[u] & p).count_ones() as usize;
            if deg >= max_deg {
                max_deg = deg;
                v = u;
            }
        }
        let bit = 1u64 << v;
        self.run(p & !self.adj[v] & !bit, current | bit, size + 1);
        self.run(p & !bit, current, size);
    }
}

/// Exact independence number by branch and bound. `n <= 64`; larger
/// instances are refused rather than attempted. With an exhausted budget the
/// result is the best set found, flagged inexact.
pub fn exact_alpha(g: &Graph, budget: u64) -> Result<AlphaResult> {
    let n = g.n();
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::CapExceeded {
            what: "independence number search".into(),
            cap: MAX_SEARCH_VERTICES,
            needed: n,
        });
    }
    let mut adj = vec![0u64; n];
    for &(u, v) in g.edges() {
        adj[u as usize] |= 1u64 << v;
        adj[v as usize] |= 1u64 << u;
    }
    let full = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
    let mut search = MisSearch {
        adj: &adj,
        best: 0,
        best_set: 0,
        nodes: 0,
        budget,
        exhausted: false,
    };
    search.run(full, 0, 0);

    let witness: Vec<u32> = (0..n as u32)
        .filter(|&v| search.best_set & (1u64 << v) != 0)
        .collect();
    // Independent re-validation through the graph API, not the search's
    // bitset bookkeeping.
    if !g.is_independent(&witness)? || witness.len() != search.best {
        return Err(Error::Inconsistency(
            "branch-and-bound returned a non-independent witness".into(),
        ));
    }
    Ok(AlphaResult {
        value: search.best,
        witness,
        exact: !search.exhausted,
        nodes: search.nodes,
    })
}

struct TSearch<'a> {
    h: &'a Hypergraph,
    t: usize,
    /// Chosen vertices per edge so far.
    chosen: Vec<usize>,
    /// Undecided vertices per edge.
    undecided: Vec<usize>,
    current: Vec<u32>,
    best: usize,
    best_set: Vec<u32>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl TSearch<'_> {
    /// Can the partial assignment still complete every edge to {0, t}?
    fn feasible_after_decision(&self, v: u32) -> bool {
        for &e in self.h.edges_at(v) {
            let (c, r) = (self.chosen[e as usize], self.undecided[e as usize]);
            if c > self.t || (c > 0 && c + r < self.t) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, i: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let n = self.h.n();
        if i == n {
            if self.current.len() > self.best {
                // Leaf validation goes through the independent checker.
                let check = check_t_set(self.h, &self.current, self.t).expect("valid t");
                if !check.valid {
                    // A pruning bug would land here; never report it silently.
                    panic!("t-independence search reached an invalid leaf");
                }
                self.best = self.current.len();
                self.best_set = self.current.clone();
            }
            return;
        }
        if self.current.len() + (n - i) <= self.best {
            return;
        }
        let v = i as u32;
        // Branch 1: take v.
        for &e in self.h.edges_at(v) {
            self.chosen[e as usize] += 1;
            self.undecided[e as usize] -= 1;
        }
        if self.feasible_after_decision(v) {
            self.current.push(v);
            self.run(i + 1);
            self.current.pop();
        }
        for &e in self.h.edges_at(v) {
            self.chosen[e as usize] -= 1;
        }
        // Branch 2: skip v (undecided already decremented).
        if self.feasible_after_decision(v) {
            self.run(i + 1);
        }
        for &e in self.h.edges_at(v) {
            self.undecided[e as usize] += 1;
        }
    }
}

/// Exact t-independence number: the largest set meeting every edge in 0 or
/// exactly t vertices. Requires `0 < t < k`; DFS with per-edge feasibility
/// pruning; leaf candidates are re-validated via [`check_t_set`].
pub fn exact_alpha_t(h: &Hypergraph, t: usize, budget: u64) -> Result<AlphaResult> {
    if t == 0 || t >= h.k() {
        return Err(Error::refusal(
            "t-independence search",
            format!("requires 0 < t < k; got t = {t}, k = {}", h.k()),
        ));
    }
    if h.n() > MAX_SEARCH_VERTICES {
        return Err(Error::CapExceeded {
            what: "t-independence search".into(),
            cap: MAX_SEARCH_VERTICES,
            needed: h.n(),
        });
    }
    let mut search = TSearch {
        h,
        t,
        chosen: vec![0; h.m()],
        undecided: h.edges().iter().map(Vec::len).collect(),
        current: Vec::new(),
        best: 0,
        best_set: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    search.run(0);
    let witness = search.best_set;
    if !witness.is_empty() {
        let check = check_t_set(h, &witness, t)?;
        if !check.valid || witness.len() != search.best {
            return Err(Error::Inconsistency(
                "t-independence search returned an invalid witness".into(),
            ));
        }
    }
    Ok(AlphaResult {
        value: search.best,
        witness,
        exact: !search.exhausted,
        nodes: search.nodes,
    })
}

/// k-th strong power of a graph: vertices are k-tuples encoded mixed-radix
/// with coordinate 0 most significant; two distinct tuples are adjacent iff
/// every coordinate pair is equal or adjacent in `g`. Refuses `n^k > cap`.
pub fn power_graph(g: &Graph, k: usize, cap: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Input("power exponent must be >= 1".into()));
    }
    let n = g.n();
    let order = n.checked_pow(k as u32).filter(|&o| o <= cap);
    let Some(order) = order else {
        return Err(Error::CapExceeded {
            what: format!("power graph order {n}^{k}"),
            cap,
            needed: n.checked_pow(k as u32).unwrap_or(usize::MAX),
        });
    };
    // Decode every code once.
    let tuples: Vec<Vec<u32>> = (0..order)
        .map(|code| {
            let mut digits = vec![0u32; k];
            let mut c = code;
            for slot in (0..k).rev() {
                digits[slot] = (c % n) as u32;
                c /= n;
            }
            digits
        })
        .collect();
    let compatible = |a: u32, b: u32| a == b || g.has_edge(a, b);
    let mut edges = Vec::new();
    for a in 0..order {
        for b in (a + 1)..order {
            let ok = tuples[a]
                .iter()
                .zip(&tuples[b])
                .all(|(&x, &y)| compatible(x, y));
            if ok {
                edges.push((a as u32, b as u32));
            }
        }
    }
    Graph::new(order, edges)
}

/// One power's contribution to the Shannon capacity lower bound.
#[derive(Debug, Clone, Serialize)]
pub struct PowerTerm {
    pub k: usize,
    /// `α(G^k)`, when it was computed.
    pub alpha: Option<usize>,
    /// True if the search finished within budget.
    pub exact: bool,
    /// Why the term is missing or inexact, if it is.
    pub note: Option<String>,
}

/// Shannon capacity lower bound report.
#[derive(Debug, Clone, Serialize)]
pub struct ShannonReport {
    /// `max α(G^k)^{1/k}` over the powers that finished exactly.
    pub value: f64,
    pub terms: Vec<PowerTerm>,
    /// True iff every requested power contributed an exact α.
    pub complete: bool,
}

/// Shannon capacity lower bound `max_{k <= kmax} α(G^k)^{1/k}`. Only
/// `kmax ∈ {1, 2}` is supported at desk scale. Powers whose construction or
/// search exceeds a cap are reported, not silently dropped.
pub fn shannon_lower(
    g: &Graph,
    kmax: usize,
    budget: u64,
    power_cap: usize,
) -> Result<ShannonReport> {
    if !(1..=2).contains(&kmax) {
        return Err(Error::refusal(
            "Shannon capacity lower bound",
            format!("supported powers are kmax ∈ {{1, 2}}; got {kmax}"),
        ));
    }
    let mut terms = Vec::new();
    let mut value: f64 = 0.0;
    let mut complete = true;
    for k in 1..=kmax {
        let built = if k == 1 {
            Ok(g.clone())
        } else {
            power_graph(g, k, power_cap)
        };
        match built.and_then(|gk| exact_alpha(&gk, budget)) {
            Ok(res) => {
                if res.exact {
                    value = value.max((res.value as f64).powf(1.0 / k as f64));
                } else {
                    complete = false;
                }
                terms.push(PowerTerm {
                    k,
                    alpha: Some(res.value),
                    exact: res.exact,
                    note: (!res.exact).then(|| "node budget exhausted".into()),
                });
            }
            Err(e @ (Error::CapExceeded { .. } | Error::Refusal { .. })) => {
                complete = false;
                terms.push(PowerTerm {
                    k,
                    alpha: None,
                    exact: false,
                    note: Some(e.to_string()),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ShannonReport {
        value,
        terms,
        complete,
    })
}
