//! Machine-readable records (one JSON object per line) and human summaries.
//!
//! Field order is part of the output contract and follows declaration order.

use serde::Serialize;

use crate::coloring::{ColoringProblem, Semantics, Verdict, Witness};
use crate::ensemble::ValidationReport;
use crate::minimality::{SweepReport, TheoremReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidateRecord {
    pub kind: &'static str,
    pub ensemble: String,
    pub valid: bool,
    pub issues: Vec<String>,
}

impl ValidateRecord {
    pub fn new(ensemble: &str, report: &ValidationReport) -> Self {
        ValidateRecord {
            kind: "validate",
            ensemble: ensemble.to_string(),
            valid: report.is_valid(),
            issues: report.issues.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub kind: &'static str,
    pub ensemble: String,
    pub semantics: Semantics,
    pub classes: usize,
    pub verdict: &'static str,
    pub witness: Option<&'static str>,
    pub certificate: Option<Vec<u8>>,
    /// `"agree"` / `"disagree"` when the brute-force oracle ran.
    pub oracle: Option<&'static str>,
}

impl VerdictRecord {
    pub fn new(
        ensemble: &str,
        semantics: Semantics,
        problem: &ColoringProblem,
        verdict: &Verdict,
        oracle_agrees: Option<bool>,
    ) -> Self {
        VerdictRecord {
            kind: "color",
            ensemble: ensemble.to_string(),
            semantics,
            classes: problem.class_count(),
            verdict: if verdict.is_colorable() {
                "colorable"
            } else {
                "uncolorable"
            },
            witness: verdict.witness().map(Witness::kind),
            certificate: verdict
                .certificate()
                .map(|a| a.iter().map(|&b| u8::from(b)).collect()),
            oracle: oracle_agrees.map(|ok| if ok { "agree" } else { "disagree" }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub kind: &'static str,
    pub shape: Vec<usize>,
    pub semantics: Semantics,
    pub enumerated: usize,
    pub filtered: usize,
    pub colorable: usize,
    pub uncolorable: usize,
    /// Present only when listing was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncolorable_patterns: Option<Vec<Vec<Vec<usize>>>>,
}

impl SweepRecord {
    pub fn new(report: &SweepReport, list: bool) -> Self {
        SweepRecord {
            kind: "sweep",
            shape: report.shape.clone(),
            semantics: report.semantics,
            enumerated: report.enumerated,
            filtered: report.filtered,
            colorable: report.colorable,
            uncolorable: report.uncolorable.len(),
            uncolorable_patterns: list
                .then(|| report.uncolorable.iter().map(|p| p.povms().to_vec()).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremRecord {
    pub kind: &'static str,
    pub theorem: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl TheoremRecord {
    pub fn new(report: &TheoremReport) -> Self {
        TheoremRecord {
            kind: "theorem",
            theorem: report.theorem.as_str(),
            passed: report.passed(),
            checks: report
                .checks
                .iter()
                .map(|c| CheckRecord {
                    name: c.name.clone(),
                    expected: c.expected.clone(),
                    observed: c.observed.clone(),
                    passed: c.passed,
                })
                .collect(),
        }
    }
}

/// Serializes one record as a single line.
pub fn to_line<T: Serialize>(record: &T) -> String {
    serde_json::to_string(record).expect("records serialize")
}

pub fn sweep_table(reports: &[SweepReport]) -> String {
    let mut out = format!(
        "{:<14} {:<16} {:>10} {:>10} {:>12}\n",
        "shape", "semantics", "patterns", "filtered", "uncolorable"
    );
    for r in reports {
        let shape = r
            .shape
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!(
            "{:<14} {:<16} {:>10} {:>10} {:>12}\n",
            shape,
            r.semantics.as_str(),
            r.enumerated,
            r.filtered,
            r.uncolorable.len()
        ));
    }
    out
}

pub fn verdict_summary(
    ensemble: &str,
    semantics: Semantics,
    problem: &ColoringProblem,
    verdict: &Verdict,
) -> String {
    let mut out = format!(
        "ensemble: {ensemble}\nsemantics: {semantics}\nclasses: {}\n",
        problem.class_count()
    );
    match verdict {
        Verdict::Colorable { assignment } => {
            let yes: Vec<String> = assignment
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(c, _)| c.to_string())
                .collect();
            out.push_str(&format!("verdict: colorable (yes on classes {})\n", yes.join(",")));
        }
        Verdict::Uncolorable {
            witness: Witness::Parity(arg),
        } => out.push_str(&format!(
            "verdict: uncolorable (parity: every class appears an even number of times, {} POVMs need an odd number of yes)\n",
            arg.povm_count
        )),
        Verdict::Uncolorable {
            witness: Witness::ExhaustiveSearch { explored },
        } => out.push_str(&format!(
            "verdict: uncolorable (exhaustive search, {explored} nodes)\n"
        )),
    }
    out
}
