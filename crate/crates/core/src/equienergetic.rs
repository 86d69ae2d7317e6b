//! Families of distance-equienergetic double joins built from unions of
//! cycles.
//!
//! Swapping one side of a double join among 2-regular graphs on the same
//! number of vertices only changes the eigenvalues `−(λ_i + 2)`, `i ≥ 2`, of
//! that side's block. All of them are ≤ 0 and their sum is fixed by
//! `Σλ_i = 0` and `λ_1 = 2`, so the distance energy does not move.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::distance::{self, validate_template};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::numlin::{self, round_sig, Clause, Spectrum};
use crate::theory::{precondition_hint, spectrum_of_p, ClosedFormTheorem, TheoremId, TheoremRegistry};
use crate::transforms::{double_join, merged_subdivision, BlockedGraph, H1Kind, H2Kind};

/// Default cap on the partitioned integer; `SPECTRA_MAX_N` overrides it.
pub const DEFAULT_MAX_N: usize = 30;
pub const DEFAULT_ENERGY_TOL: f64 = 1e-6;
const MECHANISM_TOL: f64 = 1e-9;
const SHARED_CLAUSE_TOL: f64 = 1e-8;

/// Parts ≥ 3, non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn cycles(&self) -> Graph {
        let cs: Vec<Graph> = self
            .0
            .iter()
            .map(|&k| graph::make_cycle(k).expect("parts are at least 3"))
            .collect();
        graph::disjoint_union(&cs).expect("partition is non-empty")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` into parts ≥ 3, largest first part first.
pub fn partitions_ge3(n: usize) -> Result<Vec<Partition>> {
    if n < 3 {
        return Err(Error::Size(format!("partitions need n >= 3, got {n}")));
    }
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (3..=max.min(rest)).rev() {
            let left = rest - part;
            if left != 0 && left < 3 {
                continue;
            }
            cur.push(part);
            rec(left, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

pub fn cycle_family(n: usize) -> Result<Vec<Graph>> {
    Ok(partitions_ge3(n)?.iter().map(Partition::cycles).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyCase {
    I,
    Ii,
    Iii,
    Iv,
}

impl FamilyCase {
    pub fn theorem(self) -> TheoremId {
        match self {
            FamilyCase::I => TheoremId::T32,
            FamilyCase::Ii => TheoremId::T33,
            FamilyCase::Iii => TheoremId::T34,
            FamilyCase::Iv => TheoremId::T35,
        }
    }

    /// `(H1, H2)` for the case, given the one free kind argument where the
    /// case has one. Case ii and iv take an H1 kind, case iii an H2 kind.
    pub fn kinds(self, h: Option<&str>) -> Result<(H1Kind, H2Kind)> {
        let bad = |e: String| Error::Precondition(e);
        match (self, h) {
            (FamilyCase::I, None) => Ok((H1Kind::Empty, H2Kind::Empty)),
            (FamilyCase::I, Some(_)) => Err(bad("case i takes no H kind".into())),
            (FamilyCase::Ii, h) => Ok((h.unwrap_or("empty").parse().map_err(bad)?, H2Kind::ComplementOfG)),
            (FamilyCase::Iii, h) => Ok((H1Kind::Complete, h.unwrap_or("empty").parse().map_err(bad)?)),
            (FamilyCase::Iv, h) => Ok((h.unwrap_or("empty").parse().map_err(bad)?, H2Kind::Complete)),
        }
    }
}

impl FromStr for FamilyCase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(FamilyCase::I),
            "ii" | "2" => Ok(FamilyCase::Ii),
            "iii" | "3" => Ok(FamilyCase::Iii),
            "iv" | "4" => Ok(FamilyCase::Iv),
            _ => Err(format!("unknown family case `{s}` (i, ii, iii, iv)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    G1,
    G2,
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "g1" => Ok(Side::G1),
            "g2" => Ok(Side::G2),
            _ => Err(format!("unknown side `{s}` (g1, g2)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub partition: Partition,
    pub graph: BlockedGraph,
}

#[derive(Debug, Clone)]
pub struct Family {
    pub case: FamilyCase,
    pub vary: Side,
    pub members: Vec<FamilyMember>,
}

impl Family {
    fn varying(&self, bg: &BlockedGraph) -> Graph {
        match self.vary {
            Side::G1 => bg.g1().clone(),
            Side::G2 => bg.g2().clone(),
        }
    }
}

/// Builds one double join per partition of `n_target`, the varying side
/// taking the corresponding union of cycles.
#[allow(clippy::too_many_arguments)]
pub fn build_family(
    registry: &TheoremRegistry,
    case: FamilyCase,
    g: &Graph,
    h1: H1Kind,
    h2: H2Kind,
    vary: Side,
    fixed_other: &Graph,
    n_target: usize,
    max_n: usize,
) -> Result<Family> {
    if n_target > max_n {
        return Err(Error::Size(format!(
            "n = {n_target} exceeds the size cap {max_n} (set SPECTRA_MAX_N to raise it)"
        )));
    }
    let theorem = registry
        .by_id(case.theorem())
        .ok_or_else(|| Error::NoClosedForm(format!("{} is not registered", case.theorem())))?;
    if !theorem.covers(h1, h2) {
        return Err(Error::Precondition(format!(
            "case {case:?} needs {}, got h1 = {h1}, h2 = {h2}",
            theorem.summary()
        )));
    }
    if fixed_other.regularity().is_none() {
        return Err(Error::Precondition("the fixed side must be a regular graph".into()));
    }
    let core = merged_subdivision(g, h1, h2)?;
    let mut members = Vec::new();
    for partition in partitions_ge3(n_target)? {
        let cycles = partition.cycles();
        let bg = match vary {
            Side::G1 => double_join(&core, &cycles, fixed_other)?,
            Side::G2 => double_join(&core, fixed_other, &cycles)?,
        };
        let report = validate_template(&bg, &theorem.template());
        if let Some(violation) = report.first_violation {
            return Err(Error::TemplateMismatch {
                theorem: theorem.name().to_string(),
                violation,
                hint: precondition_hint(&bg, theorem),
            });
        }
        theorem.align(&bg)?;
        members.push(FamilyMember { partition, graph: bg });
    }
    Ok(Family { case, vary, members })
}

#[derive(Debug, Clone, Serialize)]
pub struct MemberReport {
    pub partition: String,
    pub order: usize,
    pub energy: f64,
    pub deviation: f64,
    pub diameter: u32,
    /// `Σ_{i≥2} (λ_i + 2)` over the varying side.
    pub shifted_sum: f64,
    /// `min_i (λ_i + 2)` over the varying side.
    pub min_shift: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub case: FamilyCase,
    pub theorem: TheoremId,
    pub vary: Side,
    pub h1: H1Kind,
    pub h2: H2Kind,
    pub base: graph::GraphJson,
    pub fixed_other: graph::GraphJson,
    pub members: Vec<MemberReport>,
    pub common_energy: f64,
    pub max_deviation: f64,
    pub tol: f64,
    pub equienergetic: bool,
    pub all_diameter3: bool,
    pub shifted_sum_gap: f64,
    pub mechanism_ok: bool,
    pub shifts_nonnegative: bool,
    pub shared_clauses_identical: bool,
}

impl FamilyReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("partition,energy,deviation\n");
        for m in &self.members {
            out.push_str(&format!("\"{}\",{},{}\n", m.partition, m.energy, m.deviation));
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.equienergetic
            && self.all_diameter3
            && self.mechanism_ok
            && self.shifts_nonnegative
            && self.shared_clauses_identical
    }
}

struct MemberNumbers {
    energy: f64,
    diameter: u32,
    order: usize,
    shifted_sum: f64,
    min_shift: f64,
    shared: Vec<f64>,
}

fn spread(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let hi = values.clone().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.fold(f64::INFINITY, f64::min);
    hi - lo
}

pub fn verify_family(registry: &TheoremRegistry, family: &Family, tol: f64) -> Result<FamilyReport> {
    let members = &family.members;
    if members.len() < 2 {
        return Err(Error::FamilySize(format!(
            "need at least two members, got {}",
            members.len()
        )));
    }
    let order = members[0].graph.graph().order();
    if let Some(bad) = members.iter().find(|m| m.graph.graph().order() != order) {
        return Err(Error::FamilySize(format!(
            "members must share one order: {} vs {order}",
            bad.graph.graph().order()
        )));
    }
    let theorem: &dyn ClosedFormTheorem = registry
        .by_id(family.case.theorem())
        .ok_or_else(|| Error::NoClosedForm(format!("{} is not registered", family.case.theorem())))?;
    let varying_clause = match family.vary {
        Side::G1 => Clause::G1Block,
        Side::G2 => Clause::G2Block,
    };

    let numbers: Vec<MemberNumbers> = members
        .par_iter()
        .map(|m| -> Result<MemberNumbers> {
            let bg = &m.graph;
            let dm = distance::distance_matrix(bg.graph())?;
            let spec = numlin::eigen_sym(&dm.to_symmetric(), numlin::DEFAULT_EIGEN_TOL)?;
            let lambda = family.varying(bg).adjacency_spectrum()?.values;
            let shifts: Vec<f64> = lambda.iter().map(|l| l + 2.0).collect();
            let closed: Spectrum = spectrum_of_p(&theorem.align(bg)?)?;
            let labels = closed.labels.clone().unwrap_or_default();
            let shared = closed
                .values
                .iter()
                .zip(&labels)
                .filter(|(_, &c)| c != varying_clause)
                .map(|(&v, _)| v)
                .collect();
            Ok(MemberNumbers {
                energy: numlin::energy(&spec),
                diameter: dm.max(),
                order: dm.order(),
                shifted_sum: shifts[1..].iter().sum(),
                min_shift: shifts.iter().copied().fold(f64::INFINITY, f64::min),
                shared,
            })
        })
        .collect::<Result<_>>()?;

    let common = numbers.iter().map(|n| n.energy).sum::<f64>() / numbers.len() as f64;
    let max_deviation = spread(numbers.iter().map(|n| n.energy));
    let shifted_sum_gap = spread(numbers.iter().map(|n| n.shifted_sum));
    let mut shared_ok = true;
    for n in &numbers[1..] {
        let c = numlin::multiset_compare(&n.shared, &numbers[0].shared, SHARED_CLAUSE_TOL)?;
        shared_ok &= c.equal;
    }

    let first = &members[0].graph;
    Ok(FamilyReport {
        case: family.case,
        theorem: theorem.id(),
        vary: family.vary,
        h1: first.core().h1(),
        h2: first.core().h2(),
        base: first.core().base().to_json_value(),
        fixed_other: match family.vary {
            Side::G1 => first.g2().to_json_value(),
            Side::G2 => first.g1().to_json_value(),
        },
        members: members
            .iter()
            .zip(&numbers)
            .map(|(m, n)| MemberReport {
                partition: m.partition.to_string(),
                order: n.order,
                energy: round_sig(n.energy, 12),
                deviation: round_sig((n.energy - common).abs(), 6),
                diameter: n.diameter,
                shifted_sum: round_sig(n.shifted_sum, 12),
                min_shift: round_sig(n.min_shift, 12),
            })
            .collect(),
        common_energy: round_sig(common, 12),
        max_deviation: round_sig(max_deviation, 6),
        tol,
        equienergetic: max_deviation <= tol,
        all_diameter3: numbers.iter().all(|n| n.diameter == 3),
        shifted_sum_gap: round_sig(shifted_sum_gap, 6),
        mechanism_ok: shifted_sum_gap <= MECHANISM_TOL,
        shifts_nonnegative: numbers.iter().all(|n| n.min_shift >= -MECHANISM_TOL),
        shared_clauses_identical: shared_ok,
    })
}
