//! Shared test corpora.
//!
//! The graph side is an exhaustive, isomorphism-free catalog of the small
//! connected graphs, grown by vertex augmentation: every graph on n
//! vertices arises from some graph on n-1 by attaching a new vertex to a
//! neighbor subset, so augmenting an n-1 catalog and canonicalizing covers
//! everything on n. Canonical form is the minimum packed upper-triangle
//! adjacency string over all vertex permutations — brute force, fine at
//! n ≤ 7. The construction self-checks against the known counts of graphs
//! up to isomorphism, so a generator bug fails loudly instead of silently
//! shrinking the test surface.
//!
//! The hypergraph side is a small zoo of 4-uniform instances with metadata:
//! a closed-form minimum H-eigenvalue where one is known, and oracle
//! eligibility (n ≤ 6) for brute-force cross-checks.

// Each test target uses its own slice of this module.
#![allow(dead_code)]

use alphabound::constructions::odd_bipartite_complete;
use alphabound::{Graph, Hypergraph};
use itertools::Itertools;
use once_cell::sync::Lazy;
use std::collections::BTreeSet;

/// Connected graphs on 1..=7 vertices, up to isomorphism.
pub const CONNECTED_COUNTS: [usize; 7] = [1, 1, 2, 6, 21, 112, 853];

/// All graphs on 1..=7 vertices, up to isomorphism.
const ALL_COUNTS: [usize; 7] = [1, 2, 4, 11, 34, 156, 1044];

/// Position of pair (i, j), i < j, in the packed upper triangle for order n.
fn bit_index(n: usize, i: usize, j: usize) -> u32 {
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

fn canonical_form(n: usize, edges: &[(u8, u8)], perms: &[Vec<u8>]) -> u32 {
    let mut best = u32::MAX;
    for p in perms {
        let mut bits = 0u32;
        for &(u, v) in edges {
            let (pu, pv) = (p[u as usize], p[v as usize]);
            let (a, b) = (pu.min(pv) as usize, pu.max(pv) as usize);
            bits |= 1 << bit_index(n, a, b);
        }
        best = best.min(bits);
    }
    best
}

fn decode(n: usize, form: u32) -> Vec<(u8, u8)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if form & (1 << bit_index(n, i, j)) != 0 {
                edges.push((i as u8, j as u8));
            }
        }
    }
    edges
}

/// One augmentation level: all canonical forms on n from the catalog on
/// n-1.
fn augment(n: usize, prev: &[u32]) -> Vec<u32> {
    let perms: Vec<Vec<u8>> = (0..n as u8).permutations(n).collect();
    let mut forms = BTreeSet::new();
    for &parent in prev {
        let base = decode(n - 1, parent);
        for subset in 0u32..(1 << (n - 1)) {
            let mut edges = base.clone();
            for v in 0..(n - 1) {
                if subset & (1 << v) != 0 {
                    edges.push((v as u8, (n - 1) as u8));
                }
            }
            forms.insert(canonical_form(n, &edges, &perms));
        }
    }
    forms.into_iter().collect()
}

/// `CONNECTED_BY_N[n-1]` holds the connected graphs on n vertices.
static CONNECTED_BY_N: Lazy<Vec<Vec<Graph>>> = Lazy::new(|| {
    let mut levels: Vec<Vec<u32>> = vec![vec![0]];
    for n in 2..=7 {
        let next = augment(n, &levels[n - 2]);
        levels.push(next);
    }
    let mut connected = Vec::new();
    for (idx, forms) in levels.iter().enumerate() {
        let n = idx + 1;
        assert_eq!(
            forms.len(),
            ALL_COUNTS[idx],
            "catalog self-check: graphs on {n} vertices"
        );
        let graphs: Vec<Graph> = forms
            .iter()
            .map(|&form| {
                let edges: Vec<(u32, u32)> = decode(n, form)
                    .into_iter()
                    .map(|(u, v)| (u as u32, v as u32))
                    .collect();
                Graph::new(n, edges).expect("catalog graphs are well-formed")
            })
            .filter(|g| g.is_connected())
            .collect();
        assert_eq!(
            graphs.len(),
            CONNECTED_COUNTS[idx],
            "catalog self-check: connected graphs on {n} vertices"
        );
        connected.push(graphs);
    }
    connected
});

/// The connected graphs on exactly n vertices (1 ≤ n ≤ 7), up to
/// isomorphism.
pub fn connected_graphs(n: usize) -> &'static [Graph] {
    &CONNECTED_BY_N[n - 1]
}

/// All connected graphs on 1..=7 vertices.
pub fn all_connected() -> impl Iterator<Item = &'static Graph> {
    (1..=7).flat_map(|n| connected_graphs(n).iter())
}

/// A 4-uniform test instance.
pub struct HyperInstance {
    pub name: &'static str,
    pub h: Hypergraph,
    /// Closed-form minimum H-eigenvalue, when one is known: regular
    /// odd-bipartite families have -d, and a disjoint union's minimum is
    /// the smaller component minimum.
    pub known_lambda: Option<f64>,
}

impl HyperInstance {
    /// Small enough for the brute-force grid oracle.
    pub fn oracle_eligible(&self) -> bool {
        self.h.n() <= 6
    }
}

fn inst(name: &'static str, n: usize, edges: Vec<Vec<u32>>, lambda: Option<f64>) -> HyperInstance {
    HyperInstance {
        name,
        h: Hypergraph::new(n, 4, edges).expect("zoo instances are well-formed"),
        known_lambda: lambda,
    }
}

/// The 4-uniform zoo: overlap patterns, complete designs, and bipartite
/// families, spanning oracle-eligible sizes and beyond.
pub fn hypergraph_zoo() -> Vec<HyperInstance> {
    let single = odd_bipartite_complete(1, 4, 1, 3).expect("single edge family");
    let irregular = odd_bipartite_complete(1, 4, 2, 3).expect("2-3 family");
    let two_six = odd_bipartite_complete(1, 4, 2, 6).expect("2-6 family");
    let k5: Vec<Vec<u32>> = (0..5u32).combinations(4).collect();
    let k6: Vec<Vec<u32>> = (0..6u32).combinations(4).collect();
    vec![
        HyperInstance {
            name: "single-edge",
            known_lambda: single.lambda_min,
            h: single.hypergraph,
        },
        inst(
            "overlap-pair",
            6,
            vec![vec![0, 1, 2, 3], vec![2, 3, 4, 5]],
            None,
        ),
        inst(
            "chain-3",
            6,
            vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4], vec![2, 3, 4, 5]],
            None,
        ),
        inst(
            "sunflower",
            6,
            vec![vec![0, 1, 2, 3], vec![0, 1, 4, 5]],
            None,
        ),
        inst("complete-5", 5, k5, None),
        inst("complete-6", 6, k6, None),
        HyperInstance {
            name: "bipartite-2-3",
            known_lambda: irregular.lambda_min,
            h: irregular.hypergraph,
        },
        inst(
            "disjoint-pair",
            8,
            vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            Some(-1.0),
        ),
        HyperInstance {
            name: "bipartite-2-6",
            known_lambda: two_six.lambda_min,
            h: two_six.hypergraph,
        },
    ]
}

/// The even-t instances for signing sweeps: every zoo member with at most
/// three edges.
pub fn small_signing_instances() -> Vec<HyperInstance> {
    hypergraph_zoo()
        .into_iter()
        .filter(|i| i.h.m() <= 3)
        .collect()
}
