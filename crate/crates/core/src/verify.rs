//! Closed form versus BFS oracle for a single double join.

use serde::Serialize;

use crate::distance::{self, validate_template, TemplateReport};
use crate::error::{Error, Result};
use crate::numlin::{self, round_sig, Clause, Comparison, SpectrumJson};
use crate::theory::{precondition_hint, spectrum_of_p, ClosedFormTheorem, TheoremId, TheoremRegistry};
use crate::transforms::BlockedGraph;

#[derive(Debug, Clone, Serialize)]
pub struct ClauseCheck {
    pub clause: &'static str,
    pub values: Vec<f64>,
    /// Largest distance from a clause value to the nearest oracle eigenvalue.
    pub max_gap: f64,
}

/// The theorem's own simplified pair formula next to the general pair rule.
#[derive(Debug, Clone, Serialize)]
pub struct PairFormulaCheck {
    pub printed_values: Vec<f64>,
    pub engine_values: Vec<f64>,
    pub printed_max_gap: f64,
    pub engine_max_gap: f64,
    pub printed_matches_oracle: bool,
    pub engine_matches_oracle: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub theorem: TheoremId,
    pub template: TemplateReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hint: Option<String>,
    pub numeric: SpectrumJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<SpectrumJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
    pub clauses: Vec<ClauseCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_formula: Option<PairFormulaCheck>,
    pub numeric_sum: f64,
    pub diameter: u32,
    pub tol: f64,
    pub passed: bool,
}

impl VerifyReport {
    /// Error matching the outcome, for callers that want `Result` semantics.
    pub fn outcome(&self) -> Result<()> {
        if let Some(violation) = self.template.first_violation {
            return Err(Error::TemplateMismatch {
                theorem: self.theorem.to_string(),
                violation,
                hint: self.hint.clone(),
            });
        }
        if !self.passed {
            let gap = self.comparison.map(|c| c.max_gap).unwrap_or(f64::NAN);
            return Err(Error::Verification(format!(
                "closed form and oracle differ by {gap:e} (tol {:e})",
                self.tol
            )));
        }
        Ok(())
    }
}

fn nearest_gap(values: &[f64], oracle: &[f64]) -> f64 {
    values
        .iter()
        .map(|v| oracle.iter().map(|o| (v - o).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| round_sig(x, 12)).collect()
}

/// Picks the theorem by name, or by the construction's kinds when `name` is `None`.
pub fn select_theorem<'r>(
    registry: &'r TheoremRegistry,
    bg: &BlockedGraph,
    name: Option<&str>,
) -> Result<&'r dyn ClosedFormTheorem> {
    match name {
        Some(n) => registry
            .get(n)
            .ok_or_else(|| Error::NoClosedForm(format!("no theorem named `{n}`"))),
        None => registry
            .for_kinds(bg.core().h1(), bg.core().h2())
            .ok_or_else(|| {
                Error::NoClosedForm(format!(
                    "h1 = {}, h2 = {}",
                    bg.core().h1(),
                    bg.core().h2()
                ))
            }),
    }
}

/// Template validation, closed-form spectrum, BFS oracle spectrum, and the
/// per-clause comparison. Template failures are reported, not raised.
pub fn verify(bg: &BlockedGraph, theorem: &dyn ClosedFormTheorem, tol: f64) -> Result<VerifyReport> {
    let dm = distance::distance_matrix(bg.graph())?;
    let numeric = numlin::eigen_sym(&dm.to_symmetric(), numlin::DEFAULT_EIGEN_TOL)?;
    let template = validate_template(bg, &theorem.template());

    let mut report = VerifyReport {
        theorem: theorem.id(),
        hint: None,
        numeric: numeric.to_json(),
        closed_form: None,
        comparison: None,
        clauses: Vec::new(),
        pair_formula: None,
        numeric_sum: round_sig(numeric.sum(), 12),
        diameter: dm.max(),
        tol,
        passed: false,
        template,
    };
    if !report.template.ok {
        report.hint = precondition_hint(bg, theorem);
        return Ok(report);
    }

    let data = theorem.align(bg)?;
    let closed = spectrum_of_p(&data)?;
    let comparison = numlin::compare_spectra(&closed, &numeric, tol)?;

    for clause in [
        Clause::G1Block,
        Clause::G2Block,
        Clause::Excess,
        Clause::PairPlus,
        Clause::PairMinus,
        Clause::Quotient,
    ] {
        let values = closed.clause_values(clause);
        if values.is_empty() {
            continue;
        }
        report.clauses.push(ClauseCheck {
            clause: clause.as_str(),
            max_gap: round_sig(nearest_gap(&values, &numeric.values), 12),
            values: rounded(&values),
        });
    }

    let printed = theorem.printed_pair_values(bg)?;
    let engine: Vec<f64> = data.pair_values().into_iter().flat_map(|(p, m)| [p, m]).collect();
    let printed_gap = nearest_gap(&printed, &numeric.values);
    let engine_gap = nearest_gap(&engine, &numeric.values);
    let (pm, em) = (printed_gap <= tol, engine_gap <= tol);
    let verdict = match (pm, em) {
        (true, true) => "printed pair formula and general pair rule both match the oracle",
        (false, true) => "general pair rule matches the oracle; printed pair formula does not",
        (true, false) => "printed pair formula matches the oracle; general pair rule does not",
        (false, false) => "neither pair formula matches the oracle",
    };
    report.pair_formula = Some(PairFormulaCheck {
        printed_values: rounded(&printed),
        engine_values: rounded(&engine),
        printed_max_gap: round_sig(printed_gap, 12),
        engine_max_gap: round_sig(engine_gap, 12),
        printed_matches_oracle: pm,
        engine_matches_oracle: em,
        verdict: verdict.to_string(),
    });

    report.passed = comparison.equal;
    report.comparison = Some(Comparison {
        equal: comparison.equal,
        max_gap: round_sig(comparison.max_gap, 12),
    });
    report.closed_form = Some(closed.to_json());
    Ok(report)
}
