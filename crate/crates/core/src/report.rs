//! Serialisable result records shared by the command-line tool and the
//! browser demo.
//!
//! Rationals are written as `"p/q"` strings (integers as `"p"`), and
//! half-integer indices or doubled degrees as `"n/2"` strings, so the output
//! is exact and byte-stable.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{half, Generator, Kind, LieElement, Sector};
use crate::basis::{ModuleVector, Monomial};
use crate::checks::Sweep;
use crate::findim::{Counterexample, Subspace, TwoDimModule};
use crate::module::WhittakerData;
use crate::solver::{DegenerateReport, KernelReport, SimplicityReport, Verdict};
use crate::Rational;

pub const SCHEMA_VERSION: u32 = 1;

pub fn rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Clone, Debug, Serialize)]
pub struct Psi {
    pub a: String,
    pub b: String,
}

/// Top-level JSON document.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope<R: Serialize> {
    pub schema_version: u32,
    pub sector: Sector,
    pub psi: Psi,
    pub c: String,
    pub results: R,
}

impl<R: Serialize> Envelope<R> {
    pub fn new(data: &WhittakerData, results: R) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            sector: data.sector,
            psi: Psi { a: rational(&data.a), b: rational(&data.b) },
            c: rational(&data.c),
            results,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRecord {
    pub kind: &'static str,
    pub index: String,
}

impl From<&Generator> for GeneratorRecord {
    fn from(g: &Generator) -> Self {
        let kind = match g.kind() {
            Kind::L => "L",
            Kind::G => "G",
            Kind::C => "C",
        };
        GeneratorRecord { kind, index: half(g.doubled()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LieTerm {
    pub generator: GeneratorRecord,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialRecord {
    pub label: String,
    pub expr: String,
    /// `λ` parts, largest first.
    pub lambda: Vec<u32>,
    /// `μ` parts, increasing.
    pub mu: Vec<i64>,
    pub deg: String,
    pub fdeg: String,
}

impl From<&Monomial> for MonomialRecord {
    fn from(m: &Monomial) -> Self {
        let mut lambda = m.lambda().parts();
        lambda.reverse();
        MonomialRecord {
            label: m.label(),
            expr: m.expr(),
            lambda,
            mu: m.mu().parts().to_vec(),
            deg: half(m.deg()),
            fdeg: half(m.fdeg()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VectorTerm {
    pub monomial: MonomialRecord,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VectorRecord {
    pub text: String,
    pub expr: String,
    pub terms: Vec<VectorTerm>,
}

impl From<&ModuleVector> for VectorRecord {
    fn from(v: &ModuleVector) -> Self {
        VectorRecord {
            text: v.to_string(),
            expr: v.to_expr_string(),
            terms: v.terms().map(|(m, c)| VectorTerm { monomial: m.into(), coefficient: rational(c) }).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketResult {
    pub left: String,
    pub right: String,
    pub result: String,
    pub terms: Vec<LieTerm>,
}

impl BracketResult {
    pub fn new(left: &LieElement, right: &LieElement, value: &LieElement) -> Self {
        BracketResult {
            left: left.to_expr_string(),
            right: right.to_expr_string(),
            result: value.to_expr_string(),
            terms: value.terms().map(|(g, c)| LieTerm { generator: g.into(), coefficient: rational(c) }).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ActResult {
    pub input: String,
    pub result: VectorRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelResult {
    pub fdeg_max: String,
    pub truncation_size: usize,
    pub kernel_dimension: usize,
    pub kernel_basis: Vec<VectorRecord>,
    pub generators_checked: Vec<String>,
    pub verified: bool,
    /// Basis predicted by the classification of Whittaker vectors; absent
    /// for trivial `ψ`.
    pub expected_basis: Option<Vec<String>>,
    pub matches_expected: Option<bool>,
}

impl KernelResult {
    pub fn new(report: &KernelReport, expected: Option<&[ModuleVector]>) -> Self {
        KernelResult {
            fdeg_max: half(report.truncation.fdeg_max),
            truncation_size: report.truncation.len(),
            kernel_dimension: report.dimension(),
            kernel_basis: report.kernel_basis.iter().map(VectorRecord::from).collect(),
            generators_checked: report.generators_checked.iter().map(Generator::expr).collect(),
            verified: report.verified,
            expected_basis: expected.map(|e| e.iter().map(ModuleVector::to_expr_string).collect()),
            matches_expected: expected.map(|e| e == report.kernel_basis.as_slice()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRecord {
    pub start: String,
    pub reached_w: bool,
    pub certified: bool,
    pub witness: Option<Vec<String>>,
    pub residual_coefficient: Option<String>,
}

fn word(w: &[Generator]) -> Vec<String> {
    w.iter().map(Generator::expr).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityResult {
    pub fdeg_max: String,
    pub verdict: Verdict,
    /// What the classification predicts: simple unless the sector is Ramond
    /// with `b = 0`.
    pub expected_simple: bool,
    pub agrees: bool,
    pub kernel_dimension: usize,
    pub kernel_probes: Vec<ProbeRecord>,
    pub monomials_probed: usize,
    pub monomials_reaching_w: usize,
    pub monomials_certified: usize,
    pub witness_vector: Option<String>,
    pub degenerate: bool,
    pub grade: &'static str,
}

impl SimplicityResult {
    pub fn new(data: &WhittakerData, report: &SimplicityReport) -> Self {
        let expected_simple = data.sector == Sector::NS || !data.b.is_zero();
        let agrees = match report.verdict {
            Verdict::ConsistentWithSimple => expected_simple,
            Verdict::ProperSubmoduleWitness => !expected_simple,
            Verdict::Inconclusive => true,
        };
        SimplicityResult {
            fdeg_max: half(report.kernel.truncation.fdeg_max),
            verdict: report.verdict.clone(),
            expected_simple,
            agrees,
            kernel_dimension: report.kernel.dimension(),
            kernel_probes: report
                .kernel_probes
                .iter()
                .zip(&report.kernel_certified)
                .map(|(p, &certified)| ProbeRecord {
                    start: p.start.to_expr_string(),
                    reached_w: p.reached_w,
                    certified,
                    witness: p.witness.as_deref().map(word),
                    residual_coefficient: p.residual_coefficient.as_ref().map(rational),
                })
                .collect(),
            monomials_probed: report.monomial_probes.len(),
            monomials_reaching_w: report.monomial_probes.iter().filter(|p| p.reached_w).count(),
            monomials_certified: report.monomial_probes.iter().filter(|p| p.certified).count(),
            witness_vector: report.witness_vector.as_ref().map(ModuleVector::to_expr_string),
            degenerate: report.degenerate,
            grade: "evidence at truncation",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerateResult {
    pub fdeg_max: String,
    pub vector: String,
    pub is_whittaker: bool,
    pub w_excluded: bool,
    pub span_dimension: usize,
    pub span_dimension_trace: Vec<usize>,
    pub budget_spent: usize,
    pub budget_exhausted: bool,
    pub grade: &'static str,
}

impl DegenerateResult {
    pub fn new(fdeg_max: i64, report: &DegenerateReport) -> Self {
        DegenerateResult {
            fdeg_max: half(fdeg_max),
            vector: report.vector.to_expr_string(),
            is_whittaker: report.is_whittaker,
            w_excluded: report.w_excluded,
            span_dimension: report.span_dimension,
            span_dimension_trace: report.span_dimension_trace.clone(),
            budget_spent: report.budget_spent,
            budget_exhausted: report.budget_exhausted,
            grade: "evidence at truncation",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixRecord {
    pub generator: String,
    /// Rows over `(w, u)`: `[[w→w, u→w], [w→u, u→u]]`.
    pub matrix: [[String; 2]; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct FindimResult {
    pub index_bound: i64,
    pub axioms_hold: bool,
    pub counterexample: Option<String>,
    pub invariant_subspaces: Vec<String>,
    pub expected_subspaces: Vec<String>,
    pub simple: bool,
    pub table: Vec<MatrixRecord>,
}

/// Proper invariant subspaces the case analysis predicts for `A_ε(ψ)`.
pub fn expected_subspaces(data: &WhittakerData) -> Vec<Subspace> {
    let simple = match data.sector {
        Sector::NS => !data.is_trivial(),
        Sector::R => !data.b.is_zero(),
    };
    if simple {
        Vec::new()
    } else {
        vec![Subspace::U]
    }
}

impl FindimResult {
    pub fn new(module: &TwoDimModule, index_bound: i64, axioms: Result<(), Counterexample>) -> Self {
        let found = module.invariant_subspaces(index_bound);
        FindimResult {
            index_bound,
            axioms_hold: axioms.is_ok(),
            counterexample: axioms.err().map(|c| c.to_string()),
            invariant_subspaces: found.iter().map(Subspace::to_string).collect(),
            expected_subspaces: expected_subspaces(&module.psi).iter().map(Subspace::to_string).collect(),
            simple: found.is_empty(),
            table: module
                .table()
                .map(|(g, m)| MatrixRecord {
                    generator: g.expr(),
                    matrix: [[rational(&m[0][0]), rational(&m[0][1])], [rational(&m[1][0]), rational(&m[1][1])]],
                })
                .collect(),
        }
    }

    pub fn agrees(&self) -> bool {
        self.axioms_hold && self.invariant_subspaces == self.expected_subspaces
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub checked: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, sweep: Sweep) -> Self {
        CheckRecord {
            name: name.into(),
            checked: sweep.checked,
            failure_count: sweep.failure_count,
            passed: sweep.passed(),
            failures: sweep.failures,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfcheckResult {
    pub checks: Vec<CheckRecord>,
    pub all_passed: bool,
}

impl SelfcheckResult {
    pub fn new(checks: Vec<CheckRecord>) -> Self {
        let all_passed = checks.iter().all(|c| c.passed);
        SelfcheckResult { checks, all_passed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn envelope_shape() {
        let data = WhittakerData::new(Sector::NS, rat(1, 2), rat(-3, 1), rat(26, 1));
        let g = Generator::g_doubled(-3, Sector::NS);
        let rec: GeneratorRecord = (&g).into();
        let env = Envelope::new(&data, vec![rec]);
        assert_eq!(env.psi.a, "1/2");
        assert_eq!(env.psi.b, "-3");
        assert_eq!(env.results[0].index, "-3/2");
    }

    #[test]
    fn expected_subspace_cases() {
        let d = |s, a, b| WhittakerData::new(s, rat(a, 1), rat(b, 1), rat(0, 1));
        assert!(expected_subspaces(&d(Sector::NS, 0, 1)).is_empty());
        assert_eq!(expected_subspaces(&d(Sector::NS, 0, 0)), vec![Subspace::U]);
        assert_eq!(expected_subspaces(&d(Sector::R, 1, 0)), vec![Subspace::U]);
        assert!(expected_subspaces(&d(Sector::R, 0, 1)).is_empty());
    }
}
