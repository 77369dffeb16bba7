//! Finite truncations of `W_ε(ψ, c)`, exact Whittaker-vector kernels and
//! cyclicity / simplicity probes.
//!
//! Truncations are cut by the filtration `fdeg = deg + 2λ(0)` (doubled),
//! which is finite in every degree even though `L_0` powers are unbounded at
//! fixed `deg`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{generators_in_range, Generator, Parity, Sector};
use crate::basis::{min_mu_part, ModuleVector, Monomial, Pseudopartition, StrictPseudopartition};
use crate::linalg::{self, Echelon, Insert, SparseVec};
use crate::module::{generator_cutoff, p_generators, WhittakerData, WhittakerModule};
use crate::{Error, Rational};

/// Smallest doubled `fdeg` of any basis monomial: `G_{1/2}w` (NS) or `G_1w` (R).
pub fn min_fdeg(sector: Sector) -> i64 {
    2 * min_mu_part(sector) - sector.eps2()
}

/// All basis monomials with doubled `fdeg ≤ fdeg_max`, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub sector: Sector,
    pub fdeg_max: i64,
    pub basis: Vec<Monomial>,
}

impl Truncation {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.binary_search(m).ok()
    }
}

pub fn enumerate_truncation(sector: Sector, fdeg_max: i64) -> Result<Truncation, Error> {
    let min = min_fdeg(sector);
    if fdeg_max < min {
        return Err(Error::TruncationBound { bound: fdeg_max, min, sector });
    }
    let cost = |p: i64| 2 * p - sector.eps2();
    // only the smallest part can have negative cost, worth at most -min
    let top = (fdeg_max - min + sector.eps2()) / 2;
    let candidates: Vec<i64> = (min_mu_part(sector)..=top).collect();

    let mut mus = Vec::new();
    fn subsets(
        cands: &[i64],
        cost: &dyn Fn(i64) -> i64,
        budget: i64,
        acc: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<(Vec<i64>, i64)>,
    ) {
        if acc <= budget {
            out.push((cur.clone(), acc));
        }
        for (i, &p) in cands.iter().enumerate() {
            let next = acc + cost(p);
            // costs increase with p, and later parts are non-negative
            if next > budget && cost(p) >= 0 {
                break;
            }
            cur.push(p);
            subsets(&cands[i + 1..], cost, budget, next, cur, out);
            cur.pop();
        }
    }
    subsets(&candidates, &cost, fdeg_max, 0, &mut Vec::new(), &mut mus);

    let mut basis = Vec::new();
    for (mu, mu_cost) in mus {
        let budget = (fdeg_max - mu_cost) / 2;
        let mut lambdas = Vec::new();
        pseudopartitions(budget, 0, &mut Vec::new(), &mut lambdas);
        let mu = StrictPseudopartition::from_parts(mu).expect("strict by construction");
        for exps in lambdas {
            basis.push(Monomial::new(Pseudopartition::from_exponents(exps), mu.clone(), sector)?);
        }
    }
    basis.sort();
    basis.dedup();
    Ok(Truncation { sector, fdeg_max, basis })
}

/// Exponent vectors with `λ(0) + Σ_{k≥1} k λ(k) ≤ budget`.
fn pseudopartitions(budget: i64, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let weight = (k as i64).max(1);
    if weight > budget {
        out.push(cur.clone());
        return;
    }
    let mut m = 0;
    while m * weight <= budget {
        cur.push(m as u32);
        pseudopartitions(budget - m * weight, k + 1, cur, out);
        cur.pop();
        m += 1;
    }
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    pub truncation: Truncation,
    /// Reduced echelon basis of the kernel, pivots in basis order.
    pub kernel_basis: Vec<ModuleVector>,
    pub generators_checked: Vec<Generator>,
    /// Every kernel vector re-checked with the direct action.
    pub verified: bool,
}

impl KernelReport {
    pub fn dimension(&self) -> usize {
        self.kernel_basis.len()
    }
}

/// Whittaker vectors inside the truncation at `fdeg_max`.
///
/// The map `v ↦ ((E - ψ(E)) v)_E` over the `p_ε` generators up to the
/// degree cutoff is built column by column over the truncation basis; its codomain is whatever
/// monomials the action produces. The map preserves parity, so even and odd
/// monomials are solved separately. Each kernel vector is then re-checked
/// against every `p_ε` generator up to the degree cutoff.
pub fn whittaker_kernel(module: &WhittakerModule, fdeg_max: i64) -> Result<KernelReport, Error> {
    let sector = module.sector();
    let truncation = enumerate_truncation(sector, fdeg_max)?;
    let gens = p_generators(sector, generator_cutoff(fdeg_max));
    let psis: Vec<Rational> = gens.iter().map(|e| module.data().psi_value(e).expect("in p")).collect();

    let mut kernel_basis = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let block: Vec<&Monomial> = truncation.basis.iter().filter(|m| m.parity() == parity).collect();
        let mut images = Vec::with_capacity(block.len());
        for m in &block {
            let mut parts = Vec::with_capacity(gens.len());
            for (e, psi) in gens.iter().zip(&psis) {
                let mut image = module.act_monomial(e, m)?;
                image.add_term((*m).clone(), -psi.clone());
                parts.push(image);
            }
            images.push(parts);
        }
        // pivot on the largest output monomial first: the images are then
        // close to triangular and elimination stays sparse
        let mut order: Vec<&Monomial> = images.iter().flatten().flat_map(|v| v.terms().map(|(m, _)| m)).collect();
        order.sort_unstable();
        order.dedup();
        let rank = |m: &Monomial| order.len() - order.binary_search(&m).expect("collected above");
        let columns = images.iter().map(|parts| {
            let mut col = SparseVec::new();
            for (i, image) in parts.iter().enumerate() {
                for (out, c) in image.terms() {
                    col.insert((rank(out), i), c.clone());
                }
            }
            col
        });
        for combo in linalg::kernel(columns.collect::<Vec<_>>()) {
            let mut v = ModuleVector::zero(sector);
            for (j, c) in combo {
                v.add_term(block[j].clone(), c);
            }
            kernel_basis.push(v);
        }
    }
    let kernel_basis = canonical(kernel_basis);
    let mut verified = true;
    for v in &kernel_basis {
        verified &= module.is_whittaker(v)?;
    }
    Ok(KernelReport { truncation, kernel_basis, generators_checked: gens, verified })
}

/// Sort key that places `w` after every other monomial, so a residual whose
/// leading key is `w` is a multiple of `w`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct SpanKey {
    is_vacuum: bool,
    monomial: Monomial,
}

fn to_span_vec(v: &ModuleVector) -> SparseVec<SpanKey> {
    v.terms().map(|(m, c)| (SpanKey { is_vacuum: m.is_vacuum(), monomial: m.clone() }, c.clone())).collect()
}

/// `Some(κ)` when the residual is exactly `κ w`.
fn vacuum_multiple(residual: &SparseVec<SpanKey>) -> Option<Rational> {
    let (k, c) = residual.iter().next()?;
    (k.is_vacuum && residual.len() == 1).then(|| c.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeConfig {
    /// Largest doubled generator index applied.
    pub deg_cap: i64,
    pub step_budget: usize,
    /// Also apply generators of index `≤ 0` (down to `-deg_cap`).
    pub full_generators: bool,
    /// Vectors with doubled `fdeg` above this still enter the span but are not
    /// expanded further.
    pub expand_fdeg_max: Option<i64>,
}

impl ProbeConfig {
    pub fn raising(deg_cap: i64, step_budget: usize) -> Self {
        ProbeConfig { deg_cap, step_budget, full_generators: false, expand_fdeg_max: None }
    }

    pub fn generators(&self, sector: Sector) -> Vec<Generator> {
        let lo = if self.full_generators { -self.deg_cap } else { 1 };
        generators_in_range(sector, lo, self.deg_cap)
    }
}

pub const DEFAULT_BUDGET: usize = 5000;

#[derive(Clone, Debug)]
pub struct CyclicityReport {
    pub start: ModuleVector,
    pub reached_w: bool,
    /// Word whose image, reduced against the span of `spanning_words`, is a
    /// nonzero multiple of `w`.
    pub witness: Option<Vec<Generator>>,
    pub residual_coefficient: Option<Rational>,
    /// Words (applied to `start`) of the independent vectors found before the
    /// witness, in insertion order.
    pub spanning_words: Vec<Vec<Generator>>,
    /// Span dimension after each breadth-first level.
    pub span_dimension_trace: Vec<usize>,
    pub budget_spent: usize,
    pub budget_exhausted: bool,
}

impl CyclicityReport {
    pub fn span_dimension(&self) -> usize {
        self.spanning_words.len()
    }

    /// Replays the certificate from scratch; `true` iff `reached_w` and the
    /// witness image reduces to exactly `κ w` with the reported `κ ≠ 0`.
    pub fn verify(&self, module: &WhittakerModule) -> Result<bool, Error> {
        let (Some(witness), Some(kappa)) = (&self.witness, &self.residual_coefficient) else {
            return Ok(false);
        };
        let mut span = Echelon::new();
        for word in &self.spanning_words {
            span.insert(to_span_vec(&module.act_word(word, &self.start)?));
        }
        let image = module.act_word(witness, &self.start)?;
        let residual = span.reduce(&to_span_vec(&image));
        Ok(self.reached_w && !kappa.is_zero() && vacuum_multiple(&residual).as_ref() == Some(kappa))
    }
}

/// Breadth-first span growth from `start` until `w` enters the span, the span
/// stops growing, or the step budget runs out.
pub fn cyclicity_probe(
    module: &WhittakerModule,
    start: &ModuleVector,
    config: &ProbeConfig,
) -> Result<CyclicityReport, Error> {
    span_closure(module, start, &config.generators(module.sector()), config, true)
}

fn span_closure(
    module: &WhittakerModule,
    start: &ModuleVector,
    gens: &[Generator],
    config: &ProbeConfig,
    stop_at_vacuum: bool,
) -> Result<CyclicityReport, Error> {
    if start.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut run = SpanRun {
        span: Echelon::new(),
        report: CyclicityReport {
            start: start.clone(),
            reached_w: false,
            witness: None,
            residual_coefficient: None,
            spanning_words: Vec::new(),
            span_dimension_trace: Vec::new(),
            budget_spent: 0,
            budget_exhausted: false,
        },
        stop_at_vacuum,
        expand_fdeg_max: config.expand_fdeg_max,
    };

    let mut frontier = Vec::new();
    let done = run.consider(Vec::new(), start.clone(), &mut frontier);
    run.report.span_dimension_trace.push(run.span.rank());
    if done {
        return Ok(run.report);
    }

    'levels: while !frontier.is_empty() {
        let mut next = Vec::new();
        for (word, v) in std::mem::take(&mut frontier) {
            for e in gens {
                if run.report.budget_spent >= config.step_budget {
                    run.report.budget_exhausted = true;
                    break 'levels;
                }
                run.report.budget_spent += 1;
                let image = module.act_generator(e, &v)?;
                if image.is_zero() {
                    continue;
                }
                let mut longer = Vec::with_capacity(word.len() + 1);
                longer.push(*e);
                longer.extend_from_slice(&word);
                if run.consider(longer, image, &mut next) {
                    run.report.span_dimension_trace.push(run.span.rank());
                    return Ok(run.report);
                }
            }
        }
        run.report.span_dimension_trace.push(run.span.rank());
        frontier = next;
    }
    if run.report.budget_exhausted {
        run.report.span_dimension_trace.push(run.span.rank());
    }
    Ok(run.report)
}

struct SpanRun {
    span: Echelon<SpanKey>,
    report: CyclicityReport,
    stop_at_vacuum: bool,
    expand_fdeg_max: Option<i64>,
}

impl SpanRun {
    /// Adds `v = word · start`; returns `true` once `w` has been reached.
    fn consider(
        &mut self,
        word: Vec<Generator>,
        v: ModuleVector,
        next: &mut Vec<(Vec<Generator>, ModuleVector)>,
    ) -> bool {
        let Insert::New(residual) = self.span.insert(to_span_vec(&v)) else {
            return false;
        };
        if self.stop_at_vacuum {
            if let Some(kappa) = vacuum_multiple(&residual) {
                self.report.reached_w = true;
                self.report.witness = Some(word);
                self.report.residual_coefficient = Some(kappa);
                return true;
            }
        }
        self.report.spanning_words.push(word.clone());
        let expand = match self.expand_fdeg_max {
            None => true,
            Some(cap) => v.fdeg().is_ok_and(|f| f <= cap),
        };
        if expand {
            next.push((word, v));
        }
        false
    }
}

/// Dimension of `U(p_ε) v`, closing under the `p_ε` generators up to the
/// cutoff for `fdeg(v)`. `None` if the budget runs out first.
pub fn p_orbit_dimension(
    module: &WhittakerModule,
    v: &ModuleVector,
    step_budget: usize,
) -> Result<Option<usize>, Error> {
    let gens = p_generators(module.sector(), generator_cutoff(v.fdeg()?));
    let config = ProbeConfig::raising(0, step_budget);
    let run = span_closure(module, v, &gens, &config, false)?;
    Ok((!run.budget_exhausted).then_some(run.span_dimension()))
}

#[derive(Clone, Debug)]
pub struct DegenerateReport {
    pub vector: ModuleVector,
    pub is_whittaker: bool,
    /// `w` was not reached inside the probe bounds. Evidence at truncation,
    /// not a proof of properness.
    pub w_excluded: bool,
    pub span_dimension: usize,
    pub span_dimension_trace: Vec<usize>,
    pub budget_spent: usize,
    pub budget_exhausted: bool,
}

/// Probes the submodule generated by `G_1 w` in the Ramond module with
/// `ψ(L_2) = 0 ≠ ψ(L_1)`.
///
/// The span is grown with the full generator set (indices in
/// `[-fdeg_max - 4, fdeg_max + 4]`, doubled), expanding only vectors with
/// `fdeg ≤ fdeg_max`; every vector found lies in `⟨G_1 w⟩`.
pub fn degenerate_submodule_probe(
    data: &WhittakerData,
    fdeg_max: i64,
    step_budget: usize,
) -> Result<DegenerateReport, Error> {
    if data.sector != Sector::R || !data.b.is_zero() || data.a.is_zero() {
        return Err(Error::Precondition("degenerate probe needs the Ramond sector with b = 0 and a != 0".into()));
    }
    let module = WhittakerModule::new(data.clone());
    let g1w = degenerate_vector(Sector::R);
    let is_whittaker = module.is_whittaker(&g1w)?;
    let config =
        ProbeConfig { deg_cap: fdeg_max + 4, step_budget, full_generators: true, expand_fdeg_max: Some(fdeg_max) };
    let run = cyclicity_probe(&module, &g1w, &config)?;
    Ok(DegenerateReport {
        vector: g1w,
        is_whittaker,
        w_excluded: !run.reached_w,
        span_dimension: run.span_dimension(),
        span_dimension_trace: run.span_dimension_trace,
        budget_spent: run.budget_spent,
        budget_exhausted: run.budget_exhausted,
    })
}

/// `G_{1-ε} w`: `G_{1/2} w` (NS) or `G_1 w` (R).
pub fn degenerate_vector(sector: Sector) -> ModuleVector {
    let mu = StrictPseudopartition::from_parts(vec![min_mu_part(sector)]).expect("single part");
    ModuleVector::from_monomial(Monomial::new(Pseudopartition::empty(), mu, sector).expect("admissible"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithSimple,
    ProperSubmoduleWitness,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ConsistentWithSimple => "consistent-with-simple",
            Verdict::ProperSubmoduleWitness => "proper-submodule-witness",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonomialProbe {
    pub monomial: Monomial,
    pub reached_w: bool,
    pub certified: bool,
    pub witness: Option<Vec<Generator>>,
}

#[derive(Clone, Debug)]
pub struct SimplicityReport {
    pub kernel: KernelReport,
    pub kernel_probes: Vec<CyclicityReport>,
    pub kernel_certified: Vec<bool>,
    pub monomial_probes: Vec<MonomialProbe>,
    pub verdict: Verdict,
    /// The Whittaker vector that failed to reach `w`, if any.
    pub witness_vector: Option<ModuleVector>,
    /// Set when the witness is the degenerate vector `G_1 w` (Ramond, `b = 0`).
    pub degenerate: bool,
}

/// Composite probe: the Whittaker kernel, then raising-operator cyclicity
/// from every kernel vector and every basis monomial up to `fdeg_max`.
///
/// Probes use raising generators up to doubled index `fdeg_max + 4`. The
/// verdict only records consistency with simplicity at this truncation.
pub fn simplicity_report(data: &WhittakerData, fdeg_max: i64, step_budget: usize) -> Result<SimplicityReport, Error> {
    if data.is_trivial() {
        return Err(Error::TrivialPsi);
    }
    let module = WhittakerModule::new(data.clone());
    let kernel = whittaker_kernel(&module, fdeg_max)?;
    let config = ProbeConfig::raising(fdeg_max + 4, step_budget);

    let mut kernel_probes = Vec::new();
    let mut kernel_certified = Vec::new();
    let mut witness_vector = None;
    for v in &kernel.kernel_basis {
        let probe = cyclicity_probe(&module, v, &config)?;
        let ok = probe.verify(&module)?;
        if !probe.reached_w && witness_vector.is_none() {
            witness_vector = Some(v.clone());
        }
        kernel_certified.push(ok);
        kernel_probes.push(probe);
    }

    let mut monomial_probes = Vec::new();
    for m in &kernel.truncation.basis {
        let probe = cyclicity_probe(&module, &ModuleVector::from_monomial(m.clone()), &config)?;
        let certified = probe.verify(&module)?;
        monomial_probes.push(MonomialProbe {
            monomial: m.clone(),
            reached_w: probe.reached_w,
            certified,
            witness: probe.witness,
        });
    }

    let all_kernel = kernel_probes.iter().zip(&kernel_certified).all(|(p, &c)| p.reached_w && c);
    let all_monomials = monomial_probes.iter().all(|p| p.reached_w && p.certified);
    let verdict = if witness_vector.is_some() {
        Verdict::ProperSubmoduleWitness
    } else if all_kernel && all_monomials {
        Verdict::ConsistentWithSimple
    } else {
        Verdict::Inconclusive
    };
    let degenerate = witness_vector.as_ref().is_some_and(|v| {
        data.sector == Sector::R && data.b.is_zero() && is_multiple_of(v, &degenerate_vector(Sector::R))
    });
    Ok(SimplicityReport {
        kernel,
        kernel_probes,
        kernel_certified,
        monomial_probes,
        verdict,
        witness_vector,
        degenerate,
    })
}

fn is_multiple_of(v: &ModuleVector, u: &ModuleVector) -> bool {
    let Some((m, c)) = u.terms().next() else { return false };
    let k = v.coefficient(m) / c;
    !k.is_zero() && *v == u.scaled(&k)
}

/// Expected Whittaker-vector basis in the three classified cases, or `None`
/// for trivial `ψ`.
pub fn expected_kernel(data: &WhittakerData) -> Option<Vec<ModuleVector>> {
    if data.is_trivial() {
        return None;
    }
    let w = ModuleVector::vacuum(data.sector);
    match data.sector {
        Sector::NS if !data.b.is_zero() => Some(vec![w]),
        _ => Some(canonical(vec![w, degenerate_vector(data.sector)])),
    }
}

/// Canonical reduced echelon form of a list of vectors, in basis order.
pub fn canonical(vectors: Vec<ModuleVector>) -> Vec<ModuleVector> {
    let Some(sector) = vectors.first().map(ModuleVector::sector) else { return Vec::new() };
    let rows = linalg::rref(vectors.into_iter().map(|v| v.into_terms()));
    rows.into_iter()
        .map(|r: BTreeMap<Monomial, Rational>| {
            let mut v = ModuleVector::zero(sector);
            for (m, c) in r {
                v.add_term(m, c);
            }
            v
        })
        .collect()
}
