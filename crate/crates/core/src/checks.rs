//! Exhaustive and seeded property sweeps over the bracket and the action.
//!
//! Every sweep returns the number of cases it evaluated together with the
//! failures it found, so callers can report both.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

use crate::algebra::{bracket, bracket_elements, generators_in_range, Generator, LieElement, Sector};
use crate::basis::{ModuleVector, Monomial};
use crate::module::{in_p, WhittakerData, WhittakerModule};
use crate::solver::enumerate_truncation;
use crate::{rat, Error, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Sweep {
    pub checked: usize,
    /// Human-readable descriptions of the failing cases (capped).
    pub failures: Vec<String>,
    pub failure_count: usize,
}

const MAX_RECORDED: usize = 20;

impl Sweep {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(describe());
            }
        }
    }

    fn merge(&mut self, other: Sweep) {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        let room = MAX_RECORDED.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

fn sign(x: &Generator, y: &Generator) -> Rational {
    rat(x.parity().koszul(y.parity()), 1)
}

fn single(g: &Generator) -> LieElement {
    LieElement::single(*g, rat(1, 1))
}

fn all_generators(sector: Sector, lo: i64, hi: i64) -> Vec<Generator> {
    let mut gens = generators_in_range(sector, lo, hi);
    gens.push(Generator::central(sector));
    gens
}

/// `[x, y] = -(-1)^{|x||y|} [y, x]` for all generator pairs in the range.
pub fn super_antisymmetry(sector: Sector, lo: i64, hi: i64) -> Sweep {
    let gens = all_generators(sector, lo, hi);
    let mut sweep = Sweep::default();
    for x in &gens {
        for y in &gens {
            let xy = bracket(x, y).expect("same sector");
            let mut yx = bracket(y, x).expect("same sector");
            yx.add_scaled(&xy, &sign(x, y));
            sweep.record(yx.is_zero(), || format!("[{x}, {y}] = {xy}"));
        }
    }
    sweep
}

/// Super-Jacobi in its cyclic form
/// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0`.
///
/// Triples containing `C` are skipped since every bracket with `C` vanishes.
pub fn super_jacobi(sector: Sector, lo: i64, hi: i64) -> Sweep {
    let gens = generators_in_range(sector, lo, hi);
    let brackets: Vec<Vec<LieElement>> =
        gens.iter().map(|x| gens.iter().map(|y| bracket(x, y).expect("same sector")).collect()).collect();
    let mut sweep = Sweep::default();
    for (i, x) in gens.iter().enumerate() {
        for (j, y) in gens.iter().enumerate() {
            for (k, z) in gens.iter().enumerate() {
                let mut total = LieElement::zero();
                let terms = [
                    (x, &brackets[j][k], sign(x, z)),
                    (y, &brackets[k][i], sign(y, x)),
                    (z, &brackets[i][j], sign(z, y)),
                ];
                for (outer, inner, s) in terms {
                    total.add_scaled(&bracket_elements(&single(outer), inner).expect("same sector"), &s);
                }
                sweep.record(total.is_zero(), || format!("Jacobi({x}, {y}, {z}) = {total}"));
            }
        }
    }
    sweep
}

/// Every term of `[x, y]` has weight `weight(x) + weight(y)` and parity
/// `|x| + |y|`.
pub fn grading(sector: Sector, lo: i64, hi: i64) -> Sweep {
    let gens = generators_in_range(sector, lo, hi);
    let mut sweep = Sweep::default();
    for x in &gens {
        for y in &gens {
            let br = bracket(x, y).expect("same sector");
            let parity = if x.parity() == y.parity() { crate::Parity::Even } else { crate::Parity::Odd };
            let ok = br.terms().all(|(g, _)| g.weight() == x.weight() + y.weight() && g.parity() == parity);
            sweep.record(ok, || format!("[{x}, {y}] = {br} is not homogeneous"));
        }
    }
    sweep
}

/// `E_n = L_n` or `G_{n+1-ε}` for `n ≥ 1`, up to `n_max`.
pub fn e_generators(sector: Sector, n_max: i64) -> Vec<(i64, Generator)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.push((n, Generator::l(n, sector)));
        out.push((n, Generator::g_doubled(2 * n + 2 - sector.eps2(), sector)));
    }
    out
}

/// For every basis monomial with doubled `fdeg ≤ fdeg_max` and every `E_n`
/// with `n > 1` (up to where the action vanishes identically), each output
/// monomial has `fdeg` at most the input's.
pub fn filtration_bound(data: &WhittakerData, fdeg_max: i64) -> Result<Sweep, Error> {
    let module = WhittakerModule::new(data.clone());
    let truncation = enumerate_truncation(data.sector, fdeg_max)?;
    let mut sweep = Sweep::default();
    for m in &truncation.basis {
        for (n, e) in e_generators(data.sector, kill_scan_limit(m)) {
            if n <= 1 {
                continue;
            }
            let image = module.act_monomial(&e, m)?;
            let worst = image.terms().map(|(t, _)| t.fdeg()).max();
            sweep.record(worst.is_none_or(|f| f <= m.fdeg()), || {
                format!("{e} on {m}: output fdeg {} > {}", worst.unwrap_or_default(), m.fdeg())
            });
        }
    }
    Ok(sweep)
}

/// Largest `n` worth scanning. Commuting `E_n` to the right lowers its index
/// by at most the positive part of `deg`, which is below `deg + 2` (doubled);
/// past `ψ`'s support at index 2 nothing survives.
fn kill_scan_limit(m: &Monomial) -> i64 {
    (m.deg().max(0) + 3) / 2 + 4
}

/// How `|μ - ε|` is read when a monomial's degree is fed into the kill rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeReading {
    /// `Σ (μ_i - ε)`, the convention used for `deg` everywhere else; the
    /// parts `G_{1/2}` (NS) and `G_1` (R) contribute negatively.
    Signed,
    /// `Σ |μ_i - ε|`.
    Absolute,
}

/// Doubled degree of `m` under `reading`.
pub fn degree(m: &Monomial, reading: DegreeReading) -> i64 {
    match reading {
        DegreeReading::Signed => m.deg(),
        DegreeReading::Absolute => {
            let eps2 = m.sector().eps2();
            2 * m.lambda().size() + m.mu().parts().iter().map(|&p| (2 * p - eps2).abs()).sum::<i64>()
        }
    }
}

/// Check of "`n > deg + 2` implies `E_n m = 0`" for every basis monomial
/// with doubled `fdeg ≤ fdeg_max` and every `E_n` past the threshold.
pub fn kill_rule(data: &WhittakerData, fdeg_max: i64, reading: DegreeReading) -> Result<Sweep, Error> {
    let module = WhittakerModule::new(data.clone());
    let truncation = enumerate_truncation(data.sector, fdeg_max)?;
    let mut sweep = Sweep::default();
    for m in &truncation.basis {
        let deg = degree(m, reading);
        for (n, e) in e_generators(data.sector, kill_scan_limit(m)) {
            // n > deg/2 + 2 in doubled units
            if 2 * n <= deg + 4 {
                continue;
            }
            let image = module.act_monomial(&e, m)?;
            sweep.record(image.is_zero(), || format!("{e} on {m} (deg {}) = {image}", crate::algebra::half(deg)));
        }
    }
    Ok(sweep)
}

/// `x(y v) - (-1)^{|x||y|} y(x v) = [x, y] v` for `samples` seeded random
/// triples of generators (doubled indices in `-index..=index`, `C` included)
/// and basis monomials with doubled `fdeg ≤ fdeg_max`.
pub fn super_leibniz(
    data: &WhittakerData,
    samples: usize,
    seed: u64,
    index: i64,
    fdeg_max: i64,
) -> Result<Sweep, Error> {
    let module = WhittakerModule::new(data.clone());
    let gens = all_generators(data.sector, -index, index);
    let basis = enumerate_truncation(data.sector, fdeg_max)?.basis;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut sweep = Sweep::default();
    for _ in 0..samples {
        let x = *gens.choose(&mut rng).expect("nonempty");
        let y = *gens.choose(&mut rng).expect("nonempty");
        let m = basis.choose(&mut rng).expect("nonempty").clone();
        let v = ModuleVector::from_monomial(m.clone());
        let mut lhs = module.act_generator(&x, &module.act_generator(&y, &v)?)?;
        let yx = module.act_generator(&y, &module.act_generator(&x, &v)?)?;
        lhs.add_scaled(&yx, &-sign(&x, &y));
        let rhs = module.act_element(&bracket(&x, &y)?, &v)?;
        let ok = lhs.sub(&rhs).is_zero();
        sweep.record(ok, || format!("x = {x}, y = {y}, v = {m}"));
    }
    Ok(sweep)
}

/// The derivation identity `(x - ψ(x)) (u w) = [x, u] w` for `x ∈ p_ε` and
/// `u` a basis monomial read as an element of `U(SVir)`, checked on every
/// basis monomial with doubled `fdeg ≤ fdeg_max` and every `x` up to `n_max`.
pub fn derivation_identity(data: &WhittakerData, fdeg_max: i64, n_max: i64) -> Result<Sweep, Error> {
    let module = WhittakerModule::new(data.clone());
    let truncation = enumerate_truncation(data.sector, fdeg_max)?;
    let mut sweep = Sweep::default();
    for m in &truncation.basis {
        let factors = m.factors();
        let v = ModuleVector::from_monomial(m.clone());
        for x in generators_in_range(data.sector, 1, 2 * n_max).into_iter().filter(in_p) {
            let mut lhs = module.act_generator(&x, &v)?;
            lhs.add_scaled(&v, &-data.psi_value(&x).expect("x in p"));
            // [x, u_1 … u_k] = Σ_i ± u_1 … [x, u_i] … u_k
            let mut rhs = ModuleVector::zero(data.sector);
            let mut passed = rat(1, 1);
            for (i, u) in factors.iter().enumerate() {
                for (g, c) in bracket(&x, u)?.terms() {
                    let mut word = factors.clone();
                    word[i] = *g;
                    let term = if g.is_central() {
                        let mut rest = factors.clone();
                        rest.remove(i);
                        module.act_word(&rest, &module.vacuum())?.scaled(&data.c)
                    } else {
                        module.act_word(&word, &module.vacuum())?
                    };
                    rhs.add_scaled(&term, &(c * &passed));
                }
                passed *= sign(&x, u);
            }
            sweep.record(lhs.sub(&rhs).is_zero(), || format!("x = {x}, u = {m}"));
        }
    }
    Ok(sweep)
}

/// Runs the algebra-level suite on both sectors over doubled indices
/// `-bound..=bound`.
pub fn algebra_suite(bound: i64) -> Vec<(String, Sweep)> {
    let mut out = Vec::new();
    for sector in [Sector::NS, Sector::R] {
        let name = sector.name();
        out.push((format!("{name}: super-antisymmetry"), super_antisymmetry(sector, -bound, bound)));
        out.push((format!("{name}: super-Jacobi"), super_jacobi(sector, -bound, bound)));
        out.push((format!("{name}: grading"), grading(sector, -bound, bound)));
    }
    out
}

/// Sum of several sweeps.
pub fn combine(sweeps: impl IntoIterator<Item = Sweep>) -> Sweep {
    let mut total = Sweep::default();
    for s in sweeps {
        total.merge(s);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_small_range() {
        for (name, sweep) in algebra_suite(6) {
            assert!(sweep.passed(), "{name}: {:?}", sweep.failures);
            assert!(sweep.checked > 0);
        }
    }

    #[test]
    fn broken_sign_is_caught() {
        // a Jacobi sum with the wrong Koszul sign does not vanish
        let s = Sector::NS;
        let (x, y, z) = (Generator::g_doubled(1, s), Generator::g_doubled(-1, s), Generator::l(-1, s));
        let mut total = LieElement::zero();
        let yz = bracket(&y, &z).unwrap();
        let zx = bracket(&z, &x).unwrap();
        let xy = bracket(&x, &y).unwrap();
        total.add_scaled(&bracket_elements(&single(&x), &yz).unwrap(), &rat(1, 1));
        total.add_scaled(&bracket_elements(&single(&y), &zx).unwrap(), &rat(1, 1));
        total.add_scaled(&bracket_elements(&single(&z), &xy).unwrap(), &rat(1, 1));
        assert!(!total.is_zero());
    }

    #[test]
    fn leibniz_small() {
        for sector in [Sector::NS, Sector::R] {
            let data = WhittakerData::new(sector, rat(2, 3), rat(-1, 1), rat(5, 2));
            let sweep = super_leibniz(&data, 40, 7, 6, 4).unwrap();
            assert!(sweep.passed(), "{:?}", sweep.failures);
        }
    }

    #[test]
    fn derivation_small() {
        let data = WhittakerData::new(Sector::NS, rat(1, 1), rat(3, 1), rat(1, 2));
        let sweep = derivation_identity(&data, 4, 4).unwrap();
        assert!(sweep.passed(), "{:?}", sweep.failures);
    }
}
