//! Spectral upper bounds on the independence number of a graph.
//!
//! Four bounds, all computed from the adjacency or Laplacian spectrum
//! (λ₁ ≥ … ≥ λ_n adjacency eigenvalues, μ the largest Laplacian eigenvalue,
//! δ minimum degree, d̄ average degree):
//!
//! - `hoffman_bound`: `n(-λ_n)/(d - λ_n)` for d-regular graphs;
//! - `haemers_bound`: `n(-λ₁λ_n)/(δ² - λ₁λ_n)`;
//! - `laplacian_bound`: `n(μ - δ)/μ`;
//! - `ratio_bound`: `n(-λ_n)(d̄ - λ_n)/(δ - λ_n)²`, which on regular graphs
//!   reduces to the Hoffman value and in general also bounds the Lovász
//!   theta number.
//!
//! Alongside the bounds live their equality tools: a structural witness
//! check for tightness of the ratio bound, and an independent-set
//! certificate that pins `α = θ = |S|` whenever every outside vertex sees at
//! least `-λ_n` set members. The certificate is cross-checked through a
//! second, unrelated route — a pseudoinverse functional on `A - λ_n I` —
//! and any disagreement between the two is reported as a hard error rather
//! than papered over.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Error;
use crate::graph::Graph;
use crate::linalg::{group_inverse, sym_eigen, Spectrum, DEFAULT_RANK_TOL};
use crate::matrix::SymMatrix;
use crate::Result;

/// Tolerance for the integrality/equality checks on witness structure.
pub const WITNESS_TOL: f64 = 1e-6;

/// Slack allowed in the certificate's coverage test.
pub const CERTIFICATE_TOL: f64 = 1e-9;

/// A computed bound with the spectral quantities that went into it.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    /// Stable identifier ("hoffman", "haemers", "laplacian", "beta1").
    pub name: &'static str,
    pub value: f64,
    /// Inputs to the formula, keyed by symbol name.
    pub parameters: BTreeMap<&'static str, f64>,
    /// Extra guarantees, e.g. that the value also bounds the theta number.
    pub flags: Vec<&'static str>,
}

fn adjacency_spectrum(g: &Graph) -> Result<Spectrum> {
    sym_eigen(&g.adjacency_matrix())
}

// Bare formulas, shared with callers that already hold the spectra and
// don't want to pay for another eigendecomposition.

pub(crate) fn ratio_value(n: f64, delta: f64, dbar: f64, lam: f64) -> f64 {
    n * (-lam) * (dbar - lam) / ((delta - lam) * (delta - lam))
}

pub(crate) fn haemers_value(n: f64, delta: f64, l1: f64, ln: f64) -> f64 {
    n * (-l1 * ln) / (delta * delta - l1 * ln)
}

pub(crate) fn laplacian_value(n: f64, delta: f64, mu: f64) -> f64 {
    n * (mu - delta) / mu
}

/// `α(G) ≤ n(-λ_n)/(d - λ_n)` for a d-regular graph with d ≥ 1.
pub fn hoffman_bound(g: &Graph) -> Result<BoundReport> {
    if !g.is_regular() || g.n() == 0 {
        return Err(Error::refusal(
            "ratio bound for regular graphs",
            "graph is not regular",
        ));
    }
    let d = g.degree(0);
    if d == 0 {
        return Err(Error::refusal(
            "ratio bound for regular graphs",
            "graph has no edges, so the bound's denominator vanishes",
        ));
    }
    let spec = adjacency_spectrum(g)?;
    let lam = spec.lambda_min();
    let n = g.n() as f64;
    let d = d as f64;
    let value = n * (-lam) / (d - lam);
    Ok(BoundReport {
        name: "hoffman",
        value,
        parameters: BTreeMap::from([("n", n), ("d", d), ("lambda_min", lam)]),
        flags: vec![],
    })
}

/// `α(G) ≤ n(-λ₁λ_n)/(δ² - λ₁λ_n)`; needs minimum degree δ ≥ 1.
pub fn haemers_bound(g: &Graph) -> Result<BoundReport> {
    let delta = g.min_degree();
    if delta == 0 {
        return Err(Error::refusal(
            "eigenvalue-interlacing bound",
            "graph has an isolated vertex (minimum degree zero)",
        ));
    }
    let spec = adjacency_spectrum(g)?;
    let (l1, ln) = (spec.lambda_max(), spec.lambda_min());
    let n = g.n() as f64;
    let delta = delta as f64;
    let value = haemers_value(n, delta, l1, ln);
    Ok(BoundReport {
        name: "haemers",
        value,
        parameters: BTreeMap::from([
            ("n", n),
            ("delta", delta),
            ("lambda_max", l1),
            ("lambda_min", ln),
        ]),
        flags: vec![],
    })
}

/// `α(G) ≤ n(μ - δ)/μ` where μ is the largest Laplacian eigenvalue.
pub fn laplacian_bound(g: &Graph) -> Result<BoundReport> {
    if g.m() == 0 {
        return Err(Error::refusal(
            "Laplacian bound",
            "graph has no edges, so the largest Laplacian eigenvalue is zero",
        ));
    }
    let spec = sym_eigen(&g.laplacian_matrix())?;
    let mu = spec.lambda_max();
    let delta = g.min_degree() as f64;
    let n = g.n() as f64;
    let value = laplacian_value(n, delta, mu);
    Ok(BoundReport {
        name: "laplacian",
        value,
        parameters: BTreeMap::from([("n", n), ("delta", delta), ("mu", mu)]),
        flags: vec![],
    })
}

/// `α(G) ≤ n(-λ_n)(d̄ - λ_n)/(δ - λ_n)²` for any graph with an edge.
///
/// On regular graphs this equals the Hoffman value; it is also an upper
/// bound for the Lovász theta number, which the `flags` field records.
pub fn ratio_bound(g: &Graph) -> Result<BoundReport> {
    if g.m() == 0 {
        return Err(Error::refusal(
            "degree-averaged ratio bound",
            "graph has no edges, so the minimum eigenvalue is zero",
        ));
    }
    let spec = adjacency_spectrum(g)?;
    let lam = spec.lambda_min();
    let n = g.n() as f64;
    let delta = g.min_degree() as f64;
    let dbar = g.avg_degree();
    let value = ratio_value(n, delta, dbar, lam);
    Ok(BoundReport {
        name: "beta1",
        value,
        parameters: BTreeMap::from([
            ("n", n),
            ("delta", delta),
            ("dbar", dbar),
            ("lambda_min", lam),
        ]),
        flags: vec!["also-bounds-theta"],
    })
}

/// Per-vertex record in a [`RatioEqualityWitness`].
#[derive(Debug, Clone, Serialize)]
pub struct VertexShare {
    pub vertex: u32,
    /// Observed `|N(i) ∩ S|`.
    pub neighbors_in_set: usize,
    /// Value forced by tightness: `-λ(d_i - λ)/(δ - λ)`.
    pub required: f64,
    pub ok: bool,
}

/// Structural conditions equivalent to equality in the ratio bound.
#[derive(Debug, Clone, Serialize)]
pub struct RatioEqualityWitness {
    /// Both conditions hold at [`WITNESS_TOL`].
    pub holds: bool,
    /// Every vertex of S has minimum degree.
    pub inside_degrees_ok: bool,
    /// Coverage records for all vertices outside S.
    pub outside: Vec<VertexShare>,
}

/// Checks the equality characterization of the ratio bound on a candidate
/// set: every set vertex must have minimum degree, and every outside vertex
/// `i` must see exactly `-λ(d_i - λ)/(δ - λ)` set members (in particular
/// that quantity must be an integer). `s` must be independent.
pub fn ratio_equality_witness(g: &Graph, s: &[u32]) -> Result<RatioEqualityWitness> {
    if !g.is_independent(s)? {
        return Err(Error::Input(
            "equality witness requires an independent set".into(),
        ));
    }
    if g.m() == 0 {
        return Err(Error::refusal(
            "ratio-bound equality check",
            "graph has no edges, so the minimum eigenvalue is zero",
        ));
    }
    let spec = adjacency_spectrum(g)?;
    let lam = spec.lambda_min();
    let delta = g.min_degree() as f64;
    let mask = g.membership_mask(s)?;

    let inside_degrees_ok = s.iter().all(|&v| g.degree(v) == g.min_degree());

    let mut outside = Vec::new();
    let mut outside_ok = true;
    for v in 0..g.n() {
        if mask[v] {
            continue;
        }
        let di = g.degree(v as u32) as f64;
        let required = -lam * (di - lam) / (delta - lam);
        let actual = g.neighbors_in_mask(v as u32, &mask);
        let ok = (actual as f64 - required).abs() <= WITNESS_TOL;
        outside_ok &= ok;
        outside.push(VertexShare {
            vertex: v as u32,
            neighbors_in_set: actual,
            required,
            ok,
        });
    }
    Ok(RatioEqualityWitness {
        holds: inside_degrees_ok && outside_ok,
        inside_degrees_ok,
        outside,
    })
}

/// Outcome of [`theta_certify`].
#[derive(Debug, Clone, Serialize)]
pub struct ThetaCertificate {
    /// The set is independent and every outside vertex sees at least
    /// `-λ_n` set members — hence `α = θ = |S|`.
    pub certified: bool,
    pub size: usize,
    /// Smallest `|N(i) ∩ S|` over outside vertices.
    pub min_cover: f64,
    /// The coverage threshold `-λ_n`.
    pub threshold: f64,
    /// Value of the independent pseudoinverse functional, filled in only
    /// for certified sets (it must equal `size`).
    pub cross_check: Option<f64>,
}

/// Certifies `α(G) = θ(G) = |S|` for an independent set S in which every
/// outside vertex has at least `-λ_n` neighbors: under that condition the
/// ratio bound is tight at S from above while S witnesses it from below.
///
/// A certified set is re-verified through the group-inverse functional with
/// `M = A - λ_n I` and `x = M·1_S`; the two routes must agree to 1e-6, and a
/// disagreement is returned as [`Error::Inconsistency`] — it would mean a
/// bug in one of them, not a property of the graph.
pub fn theta_certify(g: &Graph, s: &[u32]) -> Result<ThetaCertificate> {
    if g.m() == 0 {
        return Err(Error::refusal(
            "theta certificate",
            "graph has no edges, so the minimum eigenvalue is zero",
        ));
    }
    let spec = adjacency_spectrum(g)?;
    let lam = spec.lambda_min();
    let threshold = -lam;
    let mask = g.membership_mask(s)?;
    let independent = g.is_independent(s)?;

    let mut min_cover = f64::INFINITY;
    for v in 0..g.n() {
        if !mask[v] {
            min_cover = min_cover.min(g.neighbors_in_mask(v as u32, &mask) as f64);
        }
    }
    if min_cover.is_infinite() {
        // S is the whole vertex set; with edges present it is dependent.
        min_cover = 0.0;
    }
    let certified = independent && !s.is_empty() && min_cover >= threshold - CERTIFICATE_TOL;

    let cross_check = if certified {
        let m = g.adjacency_matrix().add_scaled_identity(-lam);
        let ones_s: Vec<f64> = mask.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        let x = m.matvec(&ones_s);
        let value = theta_upper_group_inverse(&m, &x, g)?;
        if (value - s.len() as f64).abs() > 1e-6 {
            return Err(Error::Inconsistency(format!(
                "certified set of size {} but group-inverse functional gives {value}",
                s.len()
            )));
        }
        Some(value)
    } else {
        None
    };

    Ok(ThetaCertificate {
        certified,
        size: s.len(),
        min_cover,
        threshold,
        cross_check,
    })
}

/// Upper bound on the Lovász theta number from a matrix fitting the graph:
/// `θ(G) ≤ (xᵀ M⁺ x) · max_u M_uu / x_u²`.
///
/// Hypotheses, each checked and named in the refusal if violated:
///
/// - (a) `M` is positive semidefinite and fits `G`: `M_ij = 0` exactly for
///   every nonadjacent pair `i ≠ j`;
/// - (b) `x` lies in the range of `M` and has no zero coordinate.
///
/// `M⁺` is the spectral pseudoinverse; since `M` is symmetric this agrees
/// with the group inverse on its range.
pub fn theta_upper_group_inverse(m: &SymMatrix, x: &[f64], g: &Graph) -> Result<f64> {
    let n = g.n();
    if m.order() != n || x.len() != n {
        return Err(Error::Input(format!(
            "dimension mismatch: matrix order {}, x length {}, graph order {n}",
            m.order(),
            x.len()
        )));
    }
    if n == 0 {
        return Err(Error::Input("empty graph".into()));
    }

    // (a) zero pattern off the graph's edges, checked exactly.
    for i in 0..n {
        for j in (i + 1)..n {
            if !g.has_edge(i as u32, j as u32) && m.get(i, j) != 0.0 {
                return Err(Error::refusal(
                    "theta bound via group inverse",
                    format!(
                        "hypothesis (a) fails: M[{i}][{j}] = {} but {i} and {j} are not adjacent",
                        m.get(i, j)
                    ),
                ));
            }
        }
    }
    // (a) positive semidefiniteness, at a tolerance scaled by the matrix norm.
    let spec = sym_eigen(m)?;
    let scale = m.norm_inf().max(1.0);
    if spec.lambda_min() < -1e-9 * scale {
        return Err(Error::refusal(
            "theta bound via group inverse",
            format!(
                "hypothesis (a) fails: M is not positive semidefinite (min eigenvalue {})",
                spec.lambda_min()
            ),
        ));
    }

    // (b) x in range(M) and supported everywhere.
    if let Some(u) = x.iter().position(|&v| v == 0.0) {
        return Err(Error::refusal(
            "theta bound via group inverse",
            format!("hypothesis (b) fails: x[{u}] = 0"),
        ));
    }
    let pinv = group_inverse(m, DEFAULT_RANK_TOL)?;
    let projected = m.matvec(&pinv.matvec(x));
    let range_err = projected
        .iter()
        .zip(x)
        .map(|(p, xi)| (p - xi).abs())
        .fold(0.0, f64::max);
    let x_scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
    if range_err > 1e-8 * x_scale {
        return Err(Error::refusal(
            "theta bound via group inverse",
            format!("hypothesis (b) fails: x is not in the range of M (residual {range_err})"),
        ));
    }

    let quad = {
        let px = pinv.matvec(x);
        x.iter().zip(&px).map(|(a, b)| a * b).sum::<f64>()
    };
    let max_ratio = (0..n)
        .map(|u| m.get(u, u) / (x[u] * x[u]))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(quad * max_ratio)
}

/// Quick feasibility screen for attaching pendant sets of sizes `p` to the
/// vertices of `g`: the certificate on the resulting graph holds whenever
/// `λ_min(G) + min(p) - max(p)/min(p) ≥ 0`.
pub fn pendant_feasible(g: &Graph, p: &[usize]) -> Result<bool> {
    if p.len() != g.n() {
        return Err(Error::Input(format!(
            "pendant size list has length {} but the graph has {} vertices",
            p.len(),
            g.n()
        )));
    }
    let (Some(&pmin), Some(&pmax)) = (p.iter().min(), p.iter().max()) else {
        return Err(Error::Input("empty graph".into()));
    };
    if pmin == 0 {
        return Err(Error::refusal(
            "pendant feasibility",
            "every vertex needs at least one pendant neighbor",
        ));
    }
    let lam0 = adjacency_spectrum(g)?.lambda_min();
    Ok(lam0 + pmin as f64 - pmax as f64 / pmin as f64 >= -CERTIFICATE_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{exact_alpha, DEFAULT_NODE_BUDGET};

    #[test]
    fn petersen_all_four_bounds_give_four() {
        let g = Graph::petersen();
        for report in [
            hoffman_bound(&g).unwrap(),
            haemers_bound(&g).unwrap(),
            laplacian_bound(&g).unwrap(),
            ratio_bound(&g).unwrap(),
        ] {
            assert!(
                (report.value - 4.0).abs() <= 1e-9,
                "{} = {}",
                report.name,
                report.value
            );
        }
    }

    #[test]
    fn five_cycle_values() {
        let g = Graph::cycle(5);
        let sqrt5 = 5.0f64.sqrt();
        assert!((hoffman_bound(&g).unwrap().value - sqrt5).abs() <= 1e-9);
        assert!((ratio_bound(&g).unwrap().value - sqrt5).abs() <= 1e-9);
        // Interlacing bound happens to coincide on C5.
        assert!((haemers_bound(&g).unwrap().value - sqrt5).abs() <= 1e-9);
    }

    #[test]
    fn complete_graph_bounds_are_one() {
        let g = Graph::complete(4);
        assert!((hoffman_bound(&g).unwrap().value - 1.0).abs() <= 1e-9);
        assert!((haemers_bound(&g).unwrap().value - 1.0).abs() <= 1e-9);
        assert!((laplacian_bound(&g).unwrap().value - 1.0).abs() <= 1e-9);
        assert!((ratio_bound(&g).unwrap().value - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn star_bounds_are_exact() {
        // α(K_{1,3}) = 3 and three of the bounds meet it; Hoffman needs
        // regularity and refuses.
        let g = Graph::star(3);
        assert!((haemers_bound(&g).unwrap().value - 3.0).abs() <= 1e-9);
        assert!((laplacian_bound(&g).unwrap().value - 3.0).abs() <= 1e-9);
        assert!((ratio_bound(&g).unwrap().value - 3.0).abs() <= 1e-9);
        assert!(matches!(hoffman_bound(&g), Err(Error::Refusal { .. })));
    }

    #[test]
    fn four_cycle_values() {
        let g = Graph::cycle(4);
        assert!((haemers_bound(&g).unwrap().value - 2.0).abs() <= 1e-9);
        assert!((laplacian_bound(&g).unwrap().value - 2.0).abs() <= 1e-9);
    }

    #[test]
    fn edgeless_graphs_are_refused() {
        let g = Graph::empty(3);
        assert!(hoffman_bound(&g).is_err());
        assert!(haemers_bound(&g).is_err());
        assert!(laplacian_bound(&g).is_err());
        assert!(ratio_bound(&g).is_err());
    }

    #[test]
    fn ratio_bound_also_flags_theta() {
        let flags = ratio_bound(&Graph::petersen()).unwrap().flags;
        assert!(flags.contains(&"also-bounds-theta"));
    }

    #[test]
    fn equality_witness_holds_on_complete_bipartite_side() {
        // K_{3,3}: ratio bound is 3, met by one side; every outside vertex
        // sees all three set members, exactly the required share.
        let edges: Vec<(u32, u32)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let g = Graph::new(6, edges).unwrap();
        let w = ratio_equality_witness(&g, &[0, 1, 2]).unwrap();
        assert!(w.holds);
        assert!(w.inside_degrees_ok);
        assert!(w.outside.iter().all(|r| r.neighbors_in_set == 3));
    }

    #[test]
    fn equality_witness_holds_on_petersen_maximum_set() {
        let g = Graph::petersen();
        let alpha = exact_alpha(&g, DEFAULT_NODE_BUDGET).unwrap();
        let w = ratio_equality_witness(&g, &alpha.witness).unwrap();
        assert!(w.holds, "witness records: {:?}", w.outside);
    }

    #[test]
    fn equality_witness_fails_on_slack_set() {
        // β₁(C5) = √5 is irrational, so no set can satisfy the share
        // condition: the required coverage is not an integer.
        let g = Graph::cycle(5);
        let w = ratio_equality_witness(&g, &[0, 2]).unwrap();
        assert!(!w.holds);
        assert!(w.inside_degrees_ok);
        assert!(w.outside.iter().all(|r| !r.ok));
    }

    #[test]
    fn equality_witness_rejects_dependent_sets() {
        let g = Graph::cycle(5);
        assert!(ratio_equality_witness(&g, &[0, 1]).is_err());
    }

    #[test]
    fn certificate_on_petersen_maximum_set() {
        let g = Graph::petersen();
        let alpha = exact_alpha(&g, DEFAULT_NODE_BUDGET).unwrap();
        let cert = theta_certify(&g, &alpha.witness).unwrap();
        assert!(cert.certified);
        assert_eq!(cert.size, 4);
        assert!((cert.threshold - 2.0).abs() <= 1e-9);
        let cross = cert.cross_check.expect("certified sets are cross-checked");
        assert!((cross - 4.0).abs() <= 1e-6);
    }

    #[test]
    fn certificate_on_complete_bipartite_side() {
        let edges: Vec<(u32, u32)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let g = Graph::new(6, edges).unwrap();
        let cert = theta_certify(&g, &[0, 1, 2]).unwrap();
        assert!(cert.certified);
        assert!((cert.cross_check.unwrap() - 3.0).abs() <= 1e-6);
    }

    #[test]
    fn certificate_rejects_undercovered_set() {
        // In C5 with S = {0, 2}, vertex 3 sees only one set member but the
        // threshold is -λ_min ≈ 1.618.
        let g = Graph::cycle(5);
        let cert = theta_certify(&g, &[0, 2]).unwrap();
        assert!(!cert.certified);
        assert!(cert.cross_check.is_none());
        assert!((cert.min_cover - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn certificate_rejects_dependent_and_empty_sets() {
        let g = Graph::cycle(5);
        assert!(!theta_certify(&g, &[0, 1]).unwrap().certified);
        assert!(!theta_certify(&g, &[]).unwrap().certified);
    }

    #[test]
    fn functional_matches_hand_value_on_star() {
        // M = A + √3 I on K_{1,3}, x = M·1_S for S the leaves: the bound
        // works out to exactly 3 = |S|.
        let g = Graph::star(3);
        let lam = -(3.0f64.sqrt());
        let m = g.adjacency_matrix().add_scaled_identity(-lam);
        let x = m.matvec(&[0.0, 1.0, 1.0, 1.0]);
        let value = theta_upper_group_inverse(&m, &x, &g).unwrap();
        assert!((value - 3.0).abs() <= 1e-8, "value = {value}");
    }

    #[test]
    fn functional_refuses_bad_zero_pattern() {
        let g = Graph::path(3);
        let mut m = SymMatrix::identity(3);
        m.set(0, 2, 0.5); // vertices 0 and 2 are not adjacent in P3
        let err = theta_upper_group_inverse(&m, &[1.0, 1.0, 1.0], &g).unwrap_err();
        assert!(err.to_string().contains("(a)"), "{err}");
    }

    #[test]
    fn functional_refuses_indefinite_matrix() {
        let g = Graph::path(3);
        let m = g.adjacency_matrix(); // has a negative eigenvalue
        let err = theta_upper_group_inverse(&m, &[1.0, 1.0, 1.0], &g).unwrap_err();
        assert!(err.to_string().contains("(a)"), "{err}");
    }

    #[test]
    fn functional_refuses_x_outside_range_or_with_zeros() {
        let g = Graph::empty(2);
        let m = SymMatrix::from_rows(2, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let err = theta_upper_group_inverse(&m, &[1.0, 1.0], &g).unwrap_err();
        assert!(err.to_string().contains("(b)"), "{err}");

        let id = SymMatrix::identity(2);
        let err = theta_upper_group_inverse(&id, &[1.0, 0.0], &g).unwrap_err();
        assert!(err.to_string().contains("(b)"), "{err}");
    }

    #[test]
    fn pendant_feasibility_screen() {
        let g = Graph::cycle(4); // λ_min = -2
        assert!(pendant_feasible(&g, &[3, 3, 3, 3]).unwrap()); // -2 + 3 - 1 = 0
        assert!(!pendant_feasible(&g, &[1, 1, 1, 1]).unwrap()); // -2 + 1 - 1 < 0
        assert!(pendant_feasible(&g, &[0, 1, 1, 1]).is_err());
        assert!(pendant_feasible(&g, &[3, 3]).is_err());
    }
}
