//! Machine-readable reports printed by `--json` or written with `--out`.

use crate::formats::TensorJson;
use eigenpoints_core::configuration::{BezoutReport, CollinearReport, IncidenceReport};
use eigenpoints_core::lattice::{IdentityCheck, SurfaceLattice};
use eigenpoints_core::numbers::format_rational;
use eigenpoints_core::reconstruction::{Answer, ConverseReport, Decision, KernelReport};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveReport {
    pub count: usize,
    pub total_multiplicity: usize,
    pub expected: u64,
    pub certified: bool,
    pub positive_dimensional: bool,
    pub diagnostic: Option<String>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelJson {
    pub dimension: usize,
    pub degenerate_dimension: usize,
    pub effective_degenerate_dimension: usize,
    pub degenerate_contained: bool,
    pub contains_proper_tensor: bool,
    pub symmetric: bool,
    pub symmetric_subspace_dimension: usize,
    pub conditions: usize,
    pub numeric: bool,
    /// Kernel basis vectors in the tensor coordinates, omitted for numeric kernels.
    pub basis: Vec<Vec<String>>,
}

impl KernelJson {
    pub fn from_report(k: &KernelReport) -> Self {
        KernelJson {
            dimension: k.dimension,
            degenerate_dimension: k.degenerate_dimension,
            effective_degenerate_dimension: k.effective_degenerate_dimension,
            degenerate_contained: k.degenerate_contained,
            contains_proper_tensor: k.contains_proper_tensor,
            symmetric: k.symmetric,
            symmetric_subspace_dimension: k.symmetric_subspace_dimension,
            conditions: k.conditions,
            numeric: k.numeric,
            basis: k.basis.iter().map(|v| v.iter().map(format_rational).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    /// `YES`, `NO` or `UNDECIDED`.
    pub decision: String,
    pub degree: u32,
    pub points: usize,
    pub expected: u64,
    pub cardinality_warning: Option<String>,
    pub kernel: KernelJson,
    pub witness: Option<TensorJson>,
    pub seeds: Vec<u64>,
    pub diagnostics: Vec<String>,
}

pub fn answer_label(a: Answer) -> &'static str {
    match a {
        Answer::Yes => "YES",
        Answer::No => "NO",
        Answer::Undecided => "UNDECIDED",
    }
}

impl VerifyReport {
    pub fn from_decision(dec: &Decision, degree: u32, points: usize) -> Self {
        let cardinality_warning =
            (points as u64 != dec.expected).then(|| format!("expected {} points, got {points}; containment analysis only", dec.expected));
        VerifyReport {
            decision: answer_label(dec.answer).into(),
            degree,
            points,
            expected: dec.expected,
            cardinality_warning,
            kernel: KernelJson::from_report(&dec.kernel),
            witness: dec.witness.as_ref().map(TensorJson::from_partial),
            seeds: dec.seeds.clone(),
            diagnostics: dec.diagnostics.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IncidenceJson {
    pub predicate: String,
    pub degree: u32,
    pub threshold: usize,
    pub found: bool,
    pub witness: Option<Vec<usize>>,
    pub subsets_checked: String,
    pub numeric: bool,
}

impl IncidenceJson {
    pub fn from_report(r: &IncidenceReport) -> Self {
        IncidenceJson {
            predicate: r.predicate.clone(),
            degree: r.degree,
            threshold: r.threshold,
            found: r.found,
            witness: r.witness.clone(),
            subsets_checked: r.subsets_checked.to_string(),
            numeric: r.numeric,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CollinearJson {
    pub max: usize,
    pub threshold: u32,
    pub within_threshold: bool,
    pub witness: Vec<usize>,
    pub numeric: bool,
}

impl CollinearJson {
    pub fn new(r: &CollinearReport, d: u32) -> Self {
        CollinearJson { max: r.max, threshold: d, within_threshold: r.max <= d as usize, witness: r.witness.clone(), numeric: r.numeric }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConverseJson {
    pub threshold: usize,
    pub condition_one_holds: bool,
    pub condition_one: IncidenceJson,
    pub curve_degree_target: u64,
    pub curve_genus_target: i64,
}

impl ConverseJson {
    pub fn from_report(r: &ConverseReport) -> Self {
        ConverseJson {
            threshold: r.threshold,
            condition_one_holds: r.condition_one_holds,
            condition_one: IncidenceJson::from_report(&r.condition_one),
            curve_degree_target: r.curve_degree_target,
            curve_genus_target: r.curve_genus_target,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BezoutJson {
    pub passed: bool,
    pub checks: Vec<IncidenceJson>,
}

impl BezoutJson {
    pub fn from_report(r: &BezoutReport) -> Self {
        BezoutJson { passed: r.passed, checks: r.checks.iter().map(IncidenceJson::from_report).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalyzeReport {
    pub n: usize,
    pub degree: u32,
    pub points: usize,
    pub collinear: CollinearJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converse: Option<ConverseJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bezout: Option<BezoutJson>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub expected: i64,
    pub got: i64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeReport {
    pub n: u32,
    pub d: u32,
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub canonical: Vec<i64>,
    pub hyperplane: Vec<i64>,
    pub line: Vec<i64>,
    pub checks: Vec<CheckJson>,
    pub all_passed: bool,
}

impl LatticeReport {
    pub fn new(n: u32, d: u32, lat: &SurfaceLattice, checks: &[IdentityCheck]) -> Self {
        LatticeReport {
            n,
            d,
            labels: lat.labels.clone(),
            gram: lat.gram.clone(),
            canonical: lat.canonical.coords.clone(),
            hyperplane: lat.hyperplane.coords.clone(),
            line: lat.line.coords.clone(),
            checks: checks.iter().map(|c| CheckJson { name: c.name.clone(), expected: c.expected, got: c.got, passed: c.passed() }).collect(),
            all_passed: checks.iter().all(IdentityCheck::passed),
        }
    }
}
