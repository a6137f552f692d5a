//! Spectral upper bounds on the t-independence number of a k-uniform
//! hypergraph (k even), driven by the minimum H-eigenvalue λ of the
//! adjacency tensor.
//!
//! A set S is t-independent when every edge meets it in 0 or exactly t
//! vertices. For odd t the bound reads
//!
//! ```text
//!            t (km - nλ) (-λ)^{t/(k-t)}
//! α_t ≤ ─────────────────────────────────────────
//!        (k-t) δ^{k/(k-t)} + (kδ - tλ) (-λ)^{t/(k-t)}
//! ```
//!
//! For k = 2, t = 1 on a regular graph this collapses to the classical
//! ratio bound. Even t breaks the argument's parity; the fix is to sign the
//! tensor by the candidate set (−1 on edges meeting S, +1 on the rest) and
//! feed the signed tensor's minimum H-eigenvalue through the same formula —
//! see [`signed_t_independence_bound`].
//!
//! λ is a caller input, because where it comes from matters: closed forms
//! exist for some families, everything else goes through the nonconvex
//! solver in [`crate::tensor_eigen`] whose value is only an upper bound on
//! the true minimum. Reports carry a [`LambdaSource`] tag so downstream
//! consumers can tell a proven bound from a heuristic one.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Error;
use crate::exact::exact_alpha_t;
use crate::hypergraph::{check_t_set, sign_from_set, Hypergraph, TSet};
use crate::tensor_eigen::{min_h_eigenvalue, SolverConfig};
use crate::Result;

/// Tolerance for the per-vertex equality conditions.
pub const WITNESS_TOL: f64 = 1e-6;

/// Where a minimum H-eigenvalue came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaSource {
    /// A closed form or other exact knowledge (e.g. regular odd-bipartite
    /// families, or k = 2 matrix eigenvalues).
    ExactKnown,
    /// The multi-start descent solver; an upper bound on the true minimum,
    /// so the resulting α_t bound is heuristic.
    SolverHeuristic,
}

/// A computed t-independence bound and the quantities that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct TBoundReport {
    /// "t-independence", "strong-independence", or "signed-t-independence".
    pub name: &'static str,
    pub value: f64,
    pub t: usize,
    /// Minimum H-eigenvalue used (of the signed tensor, for the signed
    /// variant).
    pub lambda: f64,
    pub lambda_source: LambdaSource,
    /// Formula inputs, plus the diagnostic scale `c = (δ/-λ)^{1/(k-t)}`.
    pub parameters: BTreeMap<&'static str, f64>,
}

/// `base^expo` for positive bases only, via exp/log so that a nonpositive
/// base is an error instead of a NaN.
fn fpow(base: f64, expo: f64) -> Result<f64> {
    if !(base > 0.0) {
        return Err(Error::Inconsistency(format!(
            "fractional power of nonpositive base {base}"
        )));
    }
    Ok((expo * base.ln()).exp())
}

/// Shared validation: even uniformity with 0 < t < k (of the stated parity
/// when one is required), at least one edge, no isolated vertex, and a
/// negative finite λ. All refusals fire before any fractional power is
/// evaluated.
fn validate(
    h: &Hypergraph,
    t: usize,
    lambda: f64,
    want_odd_t: Option<bool>,
    what: &str,
) -> Result<()> {
    let k = h.k();
    if k % 2 != 0 {
        return Err(Error::refusal(
            what,
            format!("requires even uniformity; got k = {k}"),
        ));
    }
    if t == 0 || t >= k {
        return Err(Error::refusal(
            what,
            format!("requires 0 < t < k; got t = {t}, k = {k}"),
        ));
    }
    match want_odd_t {
        Some(true) if t % 2 == 0 => {
            return Err(Error::refusal(
                what,
                format!("requires odd t (even t needs the signed variant); got t = {t}"),
            ));
        }
        Some(false) if t % 2 != 0 => {
            return Err(Error::refusal(
                what,
                format!("signed variant requires even t (odd t needs no signing); got t = {t}"),
            ));
        }
        _ => {}
    }
    if h.m() == 0 {
        return Err(Error::refusal(what, "hypergraph has no edges"));
    }
    if h.min_degree() == 0 {
        return Err(Error::refusal(
            what,
            "hypergraph has an isolated vertex (minimum degree zero)",
        ));
    }
    if !(lambda.is_finite() && lambda < 0.0) {
        return Err(Error::refusal(
            what,
            format!("requires a negative minimum H-eigenvalue; got λ = {lambda}"),
        ));
    }
    Ok(())
}

/// Evaluates the bound formula. Assumes [`validate`] has passed.
fn formula(h: &Hypergraph, t: usize, lambda: f64) -> Result<(f64, f64)> {
    let (n, k, m) = (h.n() as f64, h.k() as f64, h.m() as f64);
    let delta = h.min_degree() as f64;
    let tf = t as f64;
    let neg = -lambda;
    let pow_t = fpow(neg, tf / (k - tf))?;
    let pow_k = fpow(delta, k / (k - tf))?;
    let numerator = tf * (k * m - n * lambda) * pow_t;
    let denominator = (k - tf) * pow_k + (k * delta - tf * lambda) * pow_t;
    if !(denominator > 0.0) {
        return Err(Error::Inconsistency(format!(
            "bound denominator {denominator} is not positive despite valid inputs"
        )));
    }
    let c = fpow(delta / neg, 1.0 / (k - tf))?;
    Ok((numerator / denominator, c))
}

fn report(
    name: &'static str,
    h: &Hypergraph,
    t: usize,
    lambda: f64,
    source: LambdaSource,
) -> Result<TBoundReport> {
    let (value, c) = formula(h, t, lambda)?;
    Ok(TBoundReport {
        name,
        value,
        t,
        lambda,
        lambda_source: source,
        parameters: BTreeMap::from([
            ("n", h.n() as f64),
            ("k", h.k() as f64),
            ("m", h.m() as f64),
            ("delta", h.min_degree() as f64),
            ("lambda", lambda),
            ("c", c),
        ]),
    })
}

/// The bound formula alone, for any 0 < t < k regardless of parity: used
/// by signing sweeps that evaluate the formula under each signing's λ.
/// Same hypotheses as the bounds otherwise (even k, an edge, no isolated
/// vertex, negative λ).
pub fn bound_value_for_lambda(h: &Hypergraph, t: usize, lambda: f64) -> Result<f64> {
    validate(h, t, lambda, None, "t-independence bound formula")?;
    formula(h, t, lambda).map(|(value, _)| value)
}

/// Upper bound on α_t for odd t from the minimum H-eigenvalue λ of the
/// unsigned adjacency tensor. The caller supplies λ and declares its
/// provenance.
pub fn t_independence_bound(
    h: &Hypergraph,
    t: usize,
    lambda: f64,
    source: LambdaSource,
) -> Result<TBoundReport> {
    validate(h, t, lambda, Some(true), "t-independence bound")?;
    report("t-independence", h, t, lambda, source)
}

/// The t = 1 case: no edge may contain two set vertices. For k = 2 regular
/// graphs the value coincides with the classical ratio bound.
pub fn strong_independence_bound(
    h: &Hypergraph,
    lambda: f64,
    source: LambdaSource,
) -> Result<TBoundReport> {
    validate(h, 1, lambda, Some(true), "strong-independence bound")?;
    report("strong-independence", h, 1, lambda, source)
}

/// Upper bound on α_t for even t: the tensor is signed by the candidate set
/// (−1 on edges meeting S, +1 on edges missing it) and λ must be the
/// minimum H-eigenvalue of that signed tensor.
pub fn signed_t_independence_bound(
    h: &Hypergraph,
    s: &TSet,
    lambda: f64,
    source: LambdaSource,
) -> Result<TBoundReport> {
    validate(h, s.t(), lambda, Some(false), "signed t-independence bound")?;
    report("signed-t-independence", h, s.t(), lambda, source)
}

/// Everything the automatic signed-bound pipeline produced.
#[derive(Debug, Clone)]
pub struct SignedBoundOutcome {
    pub report: TBoundReport,
    /// The maximum t-independent set that induced the signing.
    pub set: Vec<u32>,
    /// Eigen-equation residual of the solver's best point.
    pub solver_residual: f64,
    pub solver_converged: bool,
}

/// Full signed-bound pipeline for even t: find a maximum t-independent set
/// by exhaustive search (refusing if the node budget runs out — a partial
/// witness would silently weaken the signing), sign the tensor by it, run
/// the eigensolver, and evaluate the bound.
pub fn signed_t_independence_auto(
    h: &Hypergraph,
    t: usize,
    solver: &SolverConfig,
    budget: u64,
) -> Result<SignedBoundOutcome> {
    validate(h, t, -1.0, Some(false), "signed t-independence bound")?;
    let alpha = exact_alpha_t(h, t, budget)?;
    if !alpha.exact {
        return Err(Error::refusal(
            "signed t-independence bound",
            "the signing needs a maximum t-independent set, but the exact \
             search exhausted its node budget",
        ));
    }
    let s = TSet::new(h, alpha.witness, t)?;
    let signed = sign_from_set(h, &s);
    let pair = min_h_eigenvalue(&signed, solver)?;
    let report = signed_t_independence_bound(h, &s, pair.lambda, LambdaSource::SolverHeuristic)?;
    Ok(SignedBoundOutcome {
        report,
        set: s.vertices().to_vec(),
        solver_residual: pair.residual,
        solver_converged: pair.converged,
    })
}

/// Per-vertex record in a [`TEqualityWitness`].
#[derive(Debug, Clone, Serialize)]
pub struct TVertexShare {
    pub vertex: u32,
    /// Observed number of edges at this vertex meeting S in exactly t.
    pub saturated_edges: usize,
    /// Count forced by tightness.
    pub required: f64,
    pub ok: bool,
}

/// Structural conditions equivalent to equality in the t-independence
/// bound.
#[derive(Debug, Clone, Serialize)]
pub struct TEqualityWitness {
    pub holds: bool,
    /// Every set vertex has minimum degree.
    pub inside_degrees_ok: bool,
    pub outside: Vec<TVertexShare>,
}

/// Checks the equality characterization on a candidate t-independent set:
/// every set vertex has minimum degree, and every outside vertex `i` lies
/// in exactly
///
/// ```text
/// ((-λ)^{k/(k-t)} + d_i (-λ)^{t/(k-t)}) / (δ^{t/(k-t)} + (-λ)^{t/(k-t)})
/// ```
///
/// edges that meet S in exactly t vertices. For k = 2, t = 1 this is the
/// graph ratio-bound characterization.
pub fn t_independence_equality_witness(
    h: &Hypergraph,
    t: usize,
    s: &[u32],
    lambda: f64,
) -> Result<TEqualityWitness> {
    let check = check_t_set(h, s, t)?;
    if !check.valid {
        return Err(Error::Input(
            "equality witness requires a t-independent set".into(),
        ));
    }
    if !(lambda.is_finite() && lambda < 0.0) {
        return Err(Error::refusal(
            "t-independence equality check",
            format!("requires a negative minimum H-eigenvalue; got λ = {lambda}"),
        ));
    }
    let k = h.k() as f64;
    let tf = t as f64;
    let delta = h.min_degree() as f64;
    let neg = -lambda;
    let pow_k = fpow(neg, k / (k - tf))?;
    let pow_t = fpow(neg, tf / (k - tf))?;
    let pow_d = fpow(delta, tf / (k - tf))?;

    let mask = h.membership_mask(s)?;
    let inside_degrees_ok = s.iter().all(|&v| h.degree(v) == h.min_degree());

    let mut outside = Vec::new();
    let mut outside_ok = true;
    for v in 0..h.n() {
        if mask[v] {
            continue;
        }
        let di = h.degree(v as u32) as f64;
        let required = (pow_k + di * pow_t) / (pow_d + pow_t);
        let saturated = h
            .edges_at(v as u32)
            .iter()
            .filter(|&&e| {
                h.edges()[e as usize]
                    .iter()
                    .filter(|&&u| mask[u as usize])
                    .count()
                    == t
            })
            .count();
        let ok = (saturated as f64 - required).abs() <= WITNESS_TOL;
        outside_ok &= ok;
        outside.push(TVertexShare {
            vertex: v as u32,
            saturated_edges: saturated,
            required,
            ok,
        });
    }
    Ok(TEqualityWitness {
        holds: inside_degrees_ok && outside_ok,
        inside_degrees_ok,
        outside,
    })
}

/// Result of sweeping every edge signing of a small hypergraph.
#[derive(Debug, Clone)]
pub struct SigningSweep {
    /// Minimum H-eigenvalue per signing, indexed by bitmask (bit i set
    /// means edge i is signed −1).
    pub lambdas: Vec<f64>,
    /// The largest of those minima — the best λ any signing can offer the
    /// bound formula.
    pub best_lambda: f64,
    /// Signs achieving it.
    pub best_signs: Vec<i8>,
}

/// Cap on edges for [`signing_sweep`] (2^m solver runs).
pub const MAX_SWEEP_EDGES: usize = 12;

/// Runs the eigensolver on all 2^m signings. Exponential — refuses beyond
/// [`MAX_SWEEP_EDGES`] edges. Used to probe how much the choice of signing
/// matters on small instances.
pub fn signing_sweep(h: &Hypergraph, solver: &SolverConfig) -> Result<SigningSweep> {
    if h.m() > MAX_SWEEP_EDGES {
        return Err(Error::CapExceeded {
            what: "exhaustive signing sweep".into(),
            cap: MAX_SWEEP_EDGES,
            needed: h.m(),
        });
    }
    if h.m() == 0 {
        return Err(Error::refusal(
            "exhaustive signing sweep",
            "hypergraph has no edges",
        ));
    }
    let m = h.m();
    let mut lambdas = Vec::with_capacity(1 << m);
    let mut best_lambda = f64::NEG_INFINITY;
    let mut best_signs = vec![1; m];
    for bits in 0..(1usize << m) {
        let signs: Vec<i8> = (0..m)
            .map(|i| if bits & (1 << i) != 0 { -1 } else { 1 })
            .collect();
        let signed = crate::hypergraph::SignedHypergraph::new(h.clone(), signs.clone())?;
        let pair = min_h_eigenvalue(&signed, solver)?;
        if pair.lambda > best_lambda {
            best_lambda = pair.lambda;
            best_signs = signs;
        }
        lambdas.push(pair.lambda);
    }
    Ok(SigningSweep {
        lambdas,
        best_lambda,
        best_signs,
    })
}
