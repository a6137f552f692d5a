//! The report schema and its two renderings.
//!
//! Every operation produces one [`Report`]; `--json` serializes it with
//! stable field names (sections absent from an operation are omitted
//! entirely), the default rendering is a plain table. Reruns with the same
//! seed produce byte-identical JSON except for `meta.runtime_ms`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use alphabound::constructions::JoinComparison;
use alphabound::exact::{AlphaResult, ShannonReport};
use alphabound::graph_bounds::{BoundReport, RatioEqualityWitness, ThetaCertificate};
use alphabound::hypergraph_bounds::{LambdaSource, TBoundReport, TEqualityWitness};
use serde::Serialize;

/// Version stamped into `meta.versions.schema`; bump on field changes.
pub const SCHEMA_VERSION: u32 = 1;

/// Tolerance tag for bounds computed from dense matrix eigenvalues (the
/// eigensolver's verified residual threshold).
pub const MATRIX_TOL: f64 = 1e-9;

/// Tolerance tag for bound formulas evaluated at a closed-form λ.
pub const EXACT_LAMBDA_TOL: f64 = 1e-12;

/// A bound's value never counts as tight unless it meets the exact value
/// this closely.
pub const TIGHT_TOL: f64 = 1e-6;

#[derive(Serialize)]
pub struct Report {
    /// The file or generator expression this report describes.
    pub input: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<&'static str, serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundEntry>,
    /// Bounds or cross-checks that did not apply, with the stated reason.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactEntry>,
    /// The minimum H-eigenvalue a hypergraph bound was evaluated at.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimum: Option<Minimum>,
    /// A constructed graph or hypergraph, in parseable edge-list form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<Artifact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<JoinComparison>,
    pub meta: Meta,
}

impl Report {
    pub fn new(input: String, seed: u64) -> Report {
        Report {
            input,
            parameters: BTreeMap::new(),
            bounds: Vec::new(),
            skipped: Vec::new(),
            certificates: Vec::new(),
            witness: None,
            exact: None,
            minimum: None,
            artifact: None,
            comparison: None,
            meta: Meta {
                seed,
                versions: Versions {
                    alphabound: env!("CARGO_PKG_VERSION"),
                    schema: SCHEMA_VERSION,
                },
                runtime_ms: 0,
            },
        }
    }

    /// Marks each bound tight or loose once an exact value is known.
    pub fn mark_tightness(&mut self) {
        let Some(ExactEntry::Alpha(alpha)) = &self.exact else {
            return;
        };
        if !alpha.exact {
            return;
        }
        let exact = alpha.value as f64;
        for bound in &mut self.bounds {
            bound.tight = Some((bound.value - exact).abs() <= TIGHT_TOL);
        }
    }
}

#[derive(Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub value: f64,
    /// Formula inputs, keyed by symbol name.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<&'static str, f64>,
    /// Numerical tolerance under which `value` was computed.
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<&'static str>,
    /// Whether the bound meets the exact value, when one is known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight: Option<bool>,
}

impl BoundEntry {
    pub fn graph(report: BoundReport) -> BoundEntry {
        BoundEntry {
            name: report.name,
            value: report.value,
            parameters: report.parameters,
            tolerance: MATRIX_TOL,
            flags: report.flags,
            tight: None,
        }
    }

    pub fn hypergraph(report: &TBoundReport, tolerance: f64) -> BoundEntry {
        BoundEntry {
            name: report.name,
            value: report.value,
            parameters: report.parameters.clone(),
            tolerance,
            flags: Vec::new(),
            tight: None,
        }
    }
}

#[derive(Serialize)]
pub struct Skipped {
    pub name: &'static str,
    pub reason: String,
}

#[derive(Serialize)]
pub struct CertificateEntry {
    pub name: &'static str,
    pub set: Vec<u32>,
    #[serde(flatten)]
    pub certificate: ThetaCertificate,
}

#[derive(Serialize)]
pub struct WitnessEntry {
    pub set: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    /// The eigenvalue the characterization was evaluated at.
    pub lambda: f64,
    #[serde(flatten)]
    pub detail: WitnessDetail,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum WitnessDetail {
    Ratio(RatioEqualityWitness),
    TIndependence(TEqualityWitness),
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum ExactEntry {
    Alpha(AlphaResult),
    Power(ShannonReport),
}

#[derive(Serialize)]
pub struct Minimum {
    pub lambda: f64,
    pub source: LambdaSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub starts_used: Option<usize>,
}

#[derive(Serialize)]
pub struct Artifact {
    pub kind: &'static str,
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pendants: Vec<u32>,
    /// Same edge-list format the parsers accept.
    pub edge_list: String,
}

#[derive(Serialize)]
pub struct Meta {
    pub seed: u64,
    pub versions: Versions,
    pub runtime_ms: u128,
}

#[derive(Serialize)]
pub struct Versions {
    pub alphabound: &'static str,
    pub schema: u32,
}

// ---- plain-table rendering ----------------------------------------------

fn fmt_set(set: &[u32]) -> String {
    let words: Vec<String> = set.iter().map(u32::to_string).collect();
    format!("[{}]", words.join(", "))
}

/// Renders one report as an aligned, colorless table.
pub fn render_human(r: &Report) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "input: {}", r.input).unwrap();
    if !r.parameters.is_empty() {
        let pairs: Vec<String> = r
            .parameters
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect();
        writeln!(w, "parameters: {}", pairs.join(", ")).unwrap();
    }
    if !r.bounds.is_empty() {
        writeln!(w, "bounds:").unwrap();
        for b in &r.bounds {
            let mut notes: Vec<&str> = b.flags.to_vec();
            match b.tight {
                Some(true) => notes.insert(0, "tight"),
                Some(false) => notes.insert(0, "loose"),
                None => {}
            }
            let notes = if notes.is_empty() {
                String::new()
            } else {
                format!("  [{}]", notes.join(", "))
            };
            writeln!(
                w,
                "  {:<22} {:>14.6}  (tol {:.0e}){notes}",
                b.name, b.value, b.tolerance
            )
            .unwrap();
        }
    }
    for s in &r.skipped {
        writeln!(w, "skipped: {} — {}", s.name, s.reason).unwrap();
    }
    if let Some(min) = &r.minimum {
        let source = match min.source {
            LambdaSource::ExactKnown => "exact-known",
            LambdaSource::SolverHeuristic => "solver-heuristic",
        };
        write!(w, "minimum: λ = {:.9} ({source}", min.lambda).unwrap();
        if let Some(res) = min.residual {
            write!(w, ", residual {res:.2e}").unwrap();
        }
        if let Some(conv) = min.converged {
            write!(w, ", {}", if conv { "converged" } else { "not converged" }).unwrap();
        }
        if let Some(starts) = min.starts_used {
            write!(w, ", {starts} starts").unwrap();
        }
        writeln!(w, ")").unwrap();
    }
    for c in &r.certificates {
        let cert = &c.certificate;
        if cert.certified {
            writeln!(
                w,
                "certificate ({}): certified on {} — |S| = {}, min cover {} ≥ threshold {:.6}, functional {:.6}",
                c.name,
                fmt_set(&c.set),
                cert.size,
                cert.min_cover,
                cert.threshold,
                cert.cross_check.unwrap_or(f64::NAN),
            )
            .unwrap();
        } else {
            writeln!(
                w,
                "certificate ({}): NOT certified on {} — min cover {} < threshold {:.6}",
                c.name,
                fmt_set(&c.set),
                cert.min_cover,
                cert.threshold,
            )
            .unwrap();
        }
    }
    if let Some(witness) = &r.witness {
        let (holds, inside_ok, matched, total) = match &witness.detail {
            WitnessDetail::Ratio(d) => (
                d.holds,
                d.inside_degrees_ok,
                d.outside.iter().filter(|v| v.ok).count(),
                d.outside.len(),
            ),
            WitnessDetail::TIndependence(d) => (
                d.holds,
                d.inside_degrees_ok,
                d.outside.iter().filter(|v| v.ok).count(),
                d.outside.len(),
            ),
        };
        let t = witness.t.map(|t| format!(", t = {t}")).unwrap_or_default();
        writeln!(
            w,
            "equality witness on {}{t} at λ = {:.9}: {} (inside degrees {}, outside shares {matched}/{total})",
            fmt_set(&witness.set),
            witness.lambda,
            if holds { "all conditions hold" } else { "does NOT hold" },
            if inside_ok { "ok" } else { "not minimal" },
        )
        .unwrap();
    }
    match &r.exact {
        Some(ExactEntry::Alpha(a)) => {
            writeln!(
                w,
                "exact: {} = {} ({} nodes, witness {})",
                if a.exact {
                    "value"
                } else {
                    "best found (budget exhausted)"
                },
                a.value,
                a.nodes,
                fmt_set(&a.witness),
            )
            .unwrap();
        }
        Some(ExactEntry::Power(s)) => {
            writeln!(
                w,
                "capacity lower bound: {:.9}{}",
                s.value,
                if s.complete { "" } else { " (incomplete)" }
            )
            .unwrap();
            for term in &s.terms {
                match term.alpha {
                    Some(alpha) => writeln!(
                        w,
                        "  power {}: α = {alpha}{}",
                        term.k,
                        if term.exact { "" } else { " (inexact)" }
                    )
                    .unwrap(),
                    None => writeln!(
                        w,
                        "  power {}: skipped — {}",
                        term.k,
                        term.note.as_deref().unwrap_or("unavailable")
                    )
                    .unwrap(),
                }
            }
        }
        None => {}
    }
    if let Some(cmp) = &r.comparison {
        writeln!(
            w,
            "join of ({} vertices, {}-regular) and ({} vertices, {}-regular); λ_min = {:.6}",
            cmp.n1, cmp.r1, cmp.n2, cmp.r2, cmp.lambda_min
        )
        .unwrap();
        for (name, pair) in [
            ("beta1", &cmp.beta1),
            ("beta2", &cmp.beta2),
            ("beta3", &cmp.beta3),
        ] {
            writeln!(
                w,
                "  {:<6} computed {:>14.6}   closed form {:>14.6}",
                name, pair.computed, pair.closed_form
            )
            .unwrap();
        }
        writeln!(
            w,
            "  ordering beta1 ≤ beta2 ≤ beta3: {}",
            if cmp.ordering_as_expected {
                "holds"
            } else {
                "does not hold"
            }
        )
        .unwrap();
    }
    if let Some(a) = &r.artifact {
        let k = a.k.map(|k| format!(", k = {k}")).unwrap_or_default();
        let pendants = if a.pendants.is_empty() {
            String::new()
        } else {
            format!(", pendants {}", fmt_set(&a.pendants))
        };
        writeln!(
            w,
            "artifact: {} (n = {}, m = {}{k}{pendants})",
            a.kind, a.n, a.m
        )
        .unwrap();
        for line in a.edge_list.lines() {
            writeln!(w, "  {line}").unwrap();
        }
    }
    writeln!(
        w,
        "meta: seed {}, runtime {} ms, schema {}, alphabound {}",
        r.meta.seed, r.meta.runtime_ms, r.meta.versions.schema, r.meta.versions.alphabound
    )
    .unwrap();
    out
}
