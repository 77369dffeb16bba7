//! The Whittaker module `W_ε(ψ, c) = U(SVir_ε) ⊗_{U(p_ε ⊕ ℂC)} ℂw` and the
//! straightening action of generators on its PBW basis.
//!
//! `p_ε` is spanned by `L_n (n ≥ 1)` and `G_r (r ≥ 2 - ε)`. A homomorphism
//! `ψ: p_ε → ℂ` vanishes on every generator except `L_1` and `L_2`, so it is
//! carried as the pair `(a, b) = (ψ(L_1), ψ(L_2))`.

use std::cell::RefCell;
use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::{bracket, Generator, Kind, LieElement, Parity, Sector};
use crate::basis::{ModuleVector, Monomial};
use crate::{rat, Error, Rational};

/// The data `(ε, ψ = (a, b), c)` defining `W_ε(ψ, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerData {
    pub sector: Sector,
    /// `ψ(L_1)`
    pub a: Rational,
    /// `ψ(L_2)`
    pub b: Rational,
    /// central charge
    pub c: Rational,
}

impl WhittakerData {
    pub fn new(sector: Sector, a: Rational, b: Rational, c: Rational) -> Self {
        WhittakerData { sector, a, b, c }
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `ψ(g)` for `g ∈ p_ε`, `c` for `g = C`, `None` outside the domain.
    pub fn psi_value(&self, g: &Generator) -> Option<Rational> {
        match g.kind() {
            Kind::C => Some(self.c.clone()),
            _ if !in_p(g) => None,
            Kind::L => Some(match g.doubled() {
                2 => self.a.clone(),
                4 => self.b.clone(),
                _ => Rational::zero(),
            }),
            Kind::G => Some(Rational::zero()),
        }
    }
}

/// Membership in `p_ε`.
pub fn in_p(g: &Generator) -> bool {
    match g.kind() {
        Kind::L => g.doubled() >= 2,
        Kind::G => g.doubled() >= 4 - g.sector().eps2(),
        Kind::C => false,
    }
}

/// Creation generators: `L_{-k}` (k ≥ 0) and `G_r` with `r ≤ 1 - ε`.
pub fn is_creation(g: &Generator) -> bool {
    match g.kind() {
        Kind::L => g.doubled() <= 0,
        Kind::G => g.doubled() <= 2 - g.sector().eps2(),
        Kind::C => false,
    }
}

/// Whether creation generator `g` may stand immediately left of `head` in
/// canonical order (L-block before G-block, indices ascending left to right,
/// odd factors never repeated).
fn can_prepend(g: &Generator, head: &Generator) -> bool {
    match (g.kind(), head.kind()) {
        (Kind::L, Kind::L) => g.doubled() <= head.doubled(),
        (Kind::L, Kind::G) => true,
        (Kind::G, Kind::G) => g.doubled() < head.doubled(),
        _ => false,
    }
}

/// Generator cutoff `max(⌈D/2⌉ + 2, 2)` for a doubled degree bound `D`.
///
/// The floor of 2 keeps `L_1`, `L_2` and `G_{2-ε}` in every check; those
/// three generate `p_ε`, which makes the finite check complete.
pub fn generator_cutoff(doubled_bound: i64) -> i64 {
    (Integer::div_ceil(&doubled_bound, &2) + 2).max(2)
}

/// `{L_n : 1 ≤ n ≤ n_max} ∪ {G_r : 2 - ε ≤ r ≤ n_max}`, ordered by index.
pub fn p_generators(sector: Sector, n_max: i64) -> Vec<Generator> {
    crate::algebra::generators_in_range(sector, 2, 2 * n_max).into_iter().filter(in_p).collect()
}

/// `L_1`, `L_2` and `G_{2-ε}`: they generate `p_ε` as a Lie superalgebra,
/// and `ψ` vanishes on brackets, so `v` is a Whittaker vector as soon as
/// these three act on it by `ψ`.
pub fn p_generating_set(sector: Sector) -> [Generator; 3] {
    [Generator::l(1, sector), Generator::l(2, sector), Generator::g_doubled(4 - sector.eps2(), sector)]
}

const MAX_DEPTH: usize = 1 << 16;

/// `W_ε(ψ, c)` with a memo table for `(generator, monomial)` products.
///
/// The cache is per instance and not shared across threads; results never
/// depend on whether an entry was cached.
#[derive(Debug)]
pub struct WhittakerModule {
    data: WhittakerData,
    w_parity: Parity,
    cache: RefCell<HashMap<(Generator, Monomial), ModuleVector>>,
}

impl WhittakerModule {
    pub fn new(data: WhittakerData) -> Self {
        WhittakerModule { data, w_parity: Parity::Even, cache: RefCell::new(HashMap::new()) }
    }

    /// The parity-shifted module `Π W`: same action, with `w` declared odd.
    /// Only reported parities change.
    pub fn parity_shifted(mut self) -> Self {
        self.w_parity = self.w_parity.flip();
        self
    }

    pub fn w_parity(&self) -> Parity {
        self.w_parity
    }

    /// Parity of a homogeneous vector in this module, `None` for zero or
    /// mixed vectors.
    pub fn parity_of(&self, v: &ModuleVector) -> Option<Parity> {
        v.parity().map(|p| if self.w_parity.is_odd() { p.flip() } else { p })
    }

    pub fn data(&self) -> &WhittakerData {
        &self.data
    }

    pub fn sector(&self) -> Sector {
        self.data.sector
    }

    pub fn vacuum(&self) -> ModuleVector {
        ModuleVector::vacuum(self.sector())
    }

    pub fn cache_len(&self) -> usize {
        self.cache.borrow().len()
    }

    fn check(&self, sector: Sector) -> Result<(), Error> {
        if sector != self.sector() {
            return Err(Error::SectorMismatch(self.sector(), sector));
        }
        Ok(())
    }

    /// `g · v`, expressed in the PBW basis.
    pub fn act_generator(&self, g: &Generator, v: &ModuleVector) -> Result<ModuleVector, Error> {
        self.check(g.sector())?;
        self.check(v.sector())?;
        Ok(self.act_vector(g, v, 0))
    }

    /// `x_1 (x_2 (… (x_k v)))` for the word `[x_1, …, x_k]`.
    pub fn act_word(&self, word: &[Generator], v: &ModuleVector) -> Result<ModuleVector, Error> {
        self.check(v.sector())?;
        let mut cur = v.clone();
        for g in word.iter().rev() {
            cur = self.act_generator(g, &cur)?;
            if cur.is_zero() {
                break;
            }
        }
        Ok(cur)
    }

    /// Action of a Lie algebra element; `C` acts as `c`.
    pub fn act_element(&self, x: &LieElement, v: &ModuleVector) -> Result<ModuleVector, Error> {
        self.check(v.sector())?;
        let mut out = ModuleVector::zero(self.sector());
        for (g, coeff) in x.terms() {
            out.add_scaled(&self.act_generator(g, v)?, coeff);
        }
        Ok(out)
    }

    /// `g · m` on a single basis monomial.
    pub fn act_monomial(&self, g: &Generator, m: &Monomial) -> Result<ModuleVector, Error> {
        self.check(g.sector())?;
        self.check(m.sector())?;
        Ok(self.act_mono(g, m, 0))
    }

    fn act_vector(&self, g: &Generator, v: &ModuleVector, depth: usize) -> ModuleVector {
        let mut out = ModuleVector::zero(self.sector());
        for (m, c) in v.terms() {
            out.add_scaled(&self.act_mono(g, m, depth), c);
        }
        out
    }

    fn act_mono(&self, g: &Generator, m: &Monomial, depth: usize) -> ModuleVector {
        if g.is_central() {
            return ModuleVector::from_monomial(m.clone()).scaled(&self.data.c);
        }
        let key = (*g, m.clone());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return hit.clone();
        }
        assert!(depth < MAX_DEPTH, "straightening did not terminate for {g} on {m}");
        let out = self.straighten(g, m, depth + 1);
        // ψ absorbs positive weight, so the grading is only an upper bound
        debug_assert!(out.terms().all(|(t, _)| t.weight() <= m.weight() + g.weight()));
        self.cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// One straightening step: `g · (head · rest)`.
    fn straighten(&self, g: &Generator, m: &Monomial, depth: usize) -> ModuleVector {
        let sector = self.sector();
        let Some((head, rest)) = m.split_head() else {
            if let Some(value) = self.data.psi_value(g) {
                return ModuleVector::from_monomial(m.clone()).scaled(&value);
            }
            return ModuleVector::from_monomial(m.prepend(g));
        };
        if is_creation(g) && can_prepend(g, &head) {
            return ModuleVector::from_monomial(m.prepend(g));
        }
        let mut out = ModuleVector::zero(sector);
        let br = bracket(g, &head).expect("same sector");
        if *g == head && g.parity().is_odd() {
            // g g = [g, g] / 2
            let half = rat(1, 2);
            for (x, coeff) in br.terms() {
                out.add_scaled(&self.act_mono(x, &rest, depth), &(coeff * &half));
            }
            return out;
        }
        let moved = self.act_mono(g, &rest, depth);
        let sign = Rational::from_integer(g.parity().koszul(head.parity()).into());
        out.add_scaled(&self.act_vector(&head, &moved, depth), &sign);
        for (x, coeff) in br.terms() {
            out.add_scaled(&self.act_mono(x, &rest, depth), coeff);
        }
        out
    }

    /// Nonzero values of `(E - ψ(E)) v` over the `p_ε` generators up to the
    /// cutoff for `maxdeg(v)`. Empty exactly when `v` is a Whittaker vector.
    pub fn whittaker_defect(&self, v: &ModuleVector) -> Result<Vec<(Generator, ModuleVector)>, Error> {
        self.check(v.sector())?;
        let n_max = generator_cutoff(v.maxdeg()?);
        let mut out = Vec::new();
        for e in p_generators(self.sector(), n_max) {
            let mut image = self.act_generator(&e, v)?;
            let psi = self.data.psi_value(&e).expect("E is in p");
            image.add_scaled(v, &-psi);
            if !image.is_zero() {
                out.push((e, image));
            }
        }
        Ok(out)
    }

    pub fn is_whittaker(&self, v: &ModuleVector) -> Result<bool, Error> {
        Ok(self.whittaker_defect(v)?.is_empty())
    }
}
