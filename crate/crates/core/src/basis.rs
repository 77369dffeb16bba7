//! PBW basis of `W_ε(ψ, c)`: monomials `L_{-λ} G_{ε-μ} w` with `λ` a
//! pseudopartition and `μ` a strict pseudopartition, and sparse vectors
//! over them.
//!
//! Odd creation modes are `G_r` with `r ≤ 1 - ε`, so `μ_i = ε - r` ranges
//! over `μ_i ≥ 2ε - 1`: parts start at 0 in the Neveu-Schwarz sector and
//! at -1 in the Ramond sector (the part -1 names `G_1`).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{format_sum, Generator, Kind, Parity, Sector};
use crate::{Error, Rational};

/// `λ = (0^{λ(0)}, 1^{λ(1)}, …)` stored as its exponent vector, trailing
/// zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pseudopartition {
    exps: Vec<u32>,
}

impl Pseudopartition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let mut p = Pseudopartition { exps };
        p.trim();
        p
    }

    pub fn from_parts(parts: &[u32]) -> Self {
        let mut p = Self::empty();
        for &k in parts {
            p.push(k);
        }
        p
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    /// `λ(k)`.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.exps.get(k as usize).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// `|λ| = Σ k λ(k)`.
    pub fn size(&self) -> i64 {
        self.exps.iter().enumerate().map(|(k, &m)| k as i64 * m as i64).sum()
    }

    /// Number of parts `Σ λ(k)`.
    pub fn len(&self) -> usize {
        self.exps.iter().map(|&m| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        if self.exps.is_empty() {
            None
        } else {
            Some(self.exps.len() as u32 - 1)
        }
    }

    pub fn push(&mut self, k: u32) {
        let k = k as usize;
        if self.exps.len() <= k {
            self.exps.resize(k + 1, 0);
        }
        self.exps[k] += 1;
    }

    fn pop_largest(&mut self) -> Option<u32> {
        let k = self.largest()?;
        self.exps[k as usize] -= 1;
        self.trim();
        Some(k)
    }

    /// Parts in non-decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len());
        for (k, &m) in self.exps.iter().enumerate() {
            out.extend(std::iter::repeat_n(k as u32, m as usize));
        }
        out
    }
}

/// Strictly increasing parts `μ_1 < μ_2 < …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrictPseudopartition {
    parts: Vec<i64>,
}

impl StrictPseudopartition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_parts(parts: Vec<i64>) -> Result<Self, Error> {
        if parts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMonomial(format!("mu parts {parts:?} are not strictly increasing")));
        }
        Ok(StrictPseudopartition { parts })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn contains(&self, k: i64) -> bool {
        self.parts.binary_search(&k).is_ok()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<i64> {
        self.parts.last().copied()
    }
}

/// The PBW basis vector `L_{-λ} G_{ε-μ} w`.
///
/// Ordering is `(fdeg, deg, λ exponents, μ parts)`, which is also the
/// canonical basis order used by truncations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    fdeg: i64,
    deg: i64,
    lambda: Pseudopartition,
    mu: StrictPseudopartition,
    sector: Sector,
}

/// Smallest admissible `μ` part: `2ε - 1`.
pub fn min_mu_part(sector: Sector) -> i64 {
    sector.eps2() - 1
}

impl Monomial {
    pub fn new(lambda: Pseudopartition, mu: StrictPseudopartition, sector: Sector) -> Result<Self, Error> {
        if let Some(&first) = mu.parts.first() {
            if first < min_mu_part(sector) {
                return Err(Error::InvalidMonomial(format!(
                    "mu part {first} is below {} in the {sector} sector",
                    min_mu_part(sector)
                )));
            }
        }
        Ok(Self::build(lambda, mu, sector))
    }

    fn build(lambda: Pseudopartition, mu: StrictPseudopartition, sector: Sector) -> Self {
        let deg = 2 * lambda.size() + mu.parts.iter().map(|&m| 2 * m - sector.eps2()).sum::<i64>();
        let fdeg = deg + 2 * lambda.multiplicity(0) as i64;
        Monomial { fdeg, deg, lambda, mu, sector }
    }

    /// The cyclic vector `w`.
    pub fn vacuum(sector: Sector) -> Self {
        Self::build(Pseudopartition::empty(), StrictPseudopartition::empty(), sector)
    }

    pub fn lambda(&self) -> &Pseudopartition {
        &self.lambda
    }

    pub fn mu(&self) -> &StrictPseudopartition {
        &self.mu
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn is_vacuum(&self) -> bool {
        self.lambda.is_empty() && self.mu.is_empty()
    }

    /// Doubled `|λ| + |μ - ε|`.
    pub fn deg(&self) -> i64 {
        self.deg
    }

    /// Doubled `|λ| + |μ - ε| + λ(0)`.
    pub fn fdeg(&self) -> i64 {
        self.fdeg
    }

    /// Doubled `L_0`-weight relative to `w`; always `-deg`.
    pub fn weight(&self) -> i64 {
        -self.deg
    }

    /// Parity relative to `w` (taken even).
    pub fn parity(&self) -> Parity {
        if self.mu.len() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Creation factors left to right, i.e. `L_{-λ_s} … L_{-λ_1} G_{ε-μ_r} … G_{ε-μ_1}`.
    pub fn factors(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = Vec::with_capacity(self.lambda.len() + self.mu.len());
        let mut parts = self.lambda.parts();
        parts.reverse();
        out.extend(parts.into_iter().map(|k| Generator::l(-(k as i64), self.sector)));
        out.extend(self.mu.parts.iter().rev().map(|&m| mu_generator(m, self.sector)));
        out
    }

    /// Splits off the leftmost factor.
    pub(crate) fn split_head(&self) -> Option<(Generator, Monomial)> {
        let mut lambda = self.lambda.clone();
        if let Some(k) = lambda.pop_largest() {
            let head = Generator::l(-(k as i64), self.sector);
            return Some((head, Self::build(lambda, self.mu.clone(), self.sector)));
        }
        let mut mu = self.mu.clone();
        let m = mu.parts.pop()?;
        Some((mu_generator(m, self.sector), Self::build(lambda, mu, self.sector)))
    }

    /// Prepends a creation factor; the caller guarantees canonical order.
    pub(crate) fn prepend(&self, g: &Generator) -> Monomial {
        let mut lambda = self.lambda.clone();
        let mut mu = self.mu.clone();
        match g.kind() {
            Kind::L => lambda.push((-g.doubled() / 2) as u32),
            Kind::G => {
                let m = (self.sector.eps2() - g.doubled()) / 2;
                debug_assert!(mu.parts.last().is_none_or(|&top| top < m));
                mu.parts.push(m);
            }
            Kind::C => unreachable!("C is never a creation factor"),
        }
        Self::build(lambda, mu, self.sector)
    }

    /// Subscript notation, e.g. `L_{-1}L_{-1}G_{-3/2}w`.
    pub fn label(&self) -> String {
        let mut s: String = self.factors().iter().map(|g| g.label()).collect();
        s.push('w');
        s
    }

    /// Parser syntax, e.g. `L(-1)L(-1)G(-3/2)w`.
    pub fn expr(&self) -> String {
        let mut s: String = self.factors().iter().map(|g| g.expr()).collect();
        s.push('w');
        s
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `G_{ε-m}` for a `μ` part `m`.
pub fn mu_generator(m: i64, sector: Sector) -> Generator {
    Generator::g_doubled(sector.eps2() - 2 * m, sector)
}

/// A finite exact combination of basis monomials of one sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    sector: Sector,
    terms: BTreeMap<Monomial, Rational>,
}

impl ModuleVector {
    pub fn zero(sector: Sector) -> Self {
        ModuleVector { sector, terms: BTreeMap::new() }
    }

    pub fn vacuum(sector: Sector) -> Self {
        Self::from_monomial(Monomial::vacuum(sector))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut v = Self::zero(m.sector);
        v.terms.insert(m, Rational::from_integer(1.into()));
        v
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        debug_assert_eq!(m.sector, self.sector);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &Rational) -> ModuleVector {
        let mut out = Self::zero(self.sector);
        out.add_scaled(self, scale);
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from_integer((-1).into()));
        out
    }

    /// Maximum doubled `deg` over stored monomials.
    pub fn maxdeg(&self) -> Result<i64, Error> {
        self.terms.keys().map(Monomial::deg).max().ok_or(Error::ZeroVector)
    }

    /// Maximum doubled `fdeg` over stored monomials.
    pub fn fdeg(&self) -> Result<i64, Error> {
        self.terms.keys().map(Monomial::fdeg).max().ok_or(Error::ZeroVector)
    }

    /// `Some(p)` when every term has parity `p`; `None` for zero or mixed vectors.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Parser-syntax rendering, e.g. `4 w - 1/2 G(1/2)w`.
    pub fn to_expr_string(&self) -> String {
        format_sum(self.terms.iter().map(|(m, c)| (c.clone(), m.expr())))
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sum(self.terms.iter().map(|(m, c)| (c.clone(), m.label()))))
    }
}
