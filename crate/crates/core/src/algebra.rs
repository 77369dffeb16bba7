//! The super-Virasoro algebras `SVir_ε`: generators, parity, grading and the
//! super-bracket.
//!
//! Every index is stored *doubled* so that the half-integer modes of the
//! Neveu-Schwarz sector stay integral: `L_m` has `d = 2m`, `G_r` has
//! `d = 2r`, and `C` has `d = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::{rat, Error, Rational};

/// The two N=1 sectors. `NS` has odd modes in `ℤ + 1/2`, `R` in `ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sector {
    #[serde(rename = "ns")]
    NS,
    #[serde(rename = "r")]
    R,
}

impl Sector {
    /// `2ε`: 1 for Neveu-Schwarz, 0 for Ramond.
    pub fn eps2(self) -> i64 {
        match self {
            Sector::NS => 1,
            Sector::R => 0,
        }
    }

    /// Whether `d` is an admissible doubled index for `G_{d/2}` in this sector.
    pub fn admits_odd_index(self, d: i64) -> bool {
        d.rem_euclid(2) == self.eps2()
    }

    pub fn name(self) -> &'static str {
        match self {
            Sector::NS => "ns",
            Sector::R => "r",
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::NS => "Neveu-Schwarz",
            Sector::R => "Ramond",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// The Koszul sign `(-1)^{|x||y|}`.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    L,
    G,
    C,
}

/// A basis element `L_m`, `G_r` or `C` of `SVir_ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    kind: Kind,
    d: i64,
    sector: Sector,
}

impl Generator {
    /// Builds a generator from a kind and a doubled index, checking the
    /// sector's parity rule for the index.
    pub fn new(kind: Kind, d: i64, sector: Sector) -> Result<Self, Error> {
        let ok = match kind {
            Kind::L => d % 2 == 0,
            Kind::G => sector.admits_odd_index(d),
            Kind::C => d == 0,
        };
        if !ok {
            return Err(Error::InvalidIndex { kind, doubled: d, sector });
        }
        Ok(Generator { kind, d, sector })
    }

    /// `L_m`.
    pub fn l(m: i64, sector: Sector) -> Self {
        Generator { kind: Kind::L, d: 2 * m, sector }
    }

    /// `G_{d/2}`; panics if `d` does not belong to the sector.
    pub fn g_doubled(d: i64, sector: Sector) -> Self {
        Self::new(Kind::G, d, sector).expect("odd index outside the sector")
    }

    pub fn central(sector: Sector) -> Self {
        Generator { kind: Kind::C, d: 0, sector }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn doubled(&self) -> i64 {
        self.d
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn is_central(&self) -> bool {
        self.kind == Kind::C
    }

    pub fn parity(&self) -> Parity {
        match self.kind {
            Kind::G => Parity::Odd,
            Kind::L | Kind::C => Parity::Even,
        }
    }

    /// Doubled eigenvalue of `-ad L_0`, i.e. `[L_0, X] = -(weight/2) X`.
    pub fn weight(&self) -> i64 {
        self.d
    }

    /// Subscript label, e.g. `L_{-1}`, `G_{3/2}`, `C`.
    pub fn label(&self) -> String {
        match self.kind {
            Kind::C => "C".to_string(),
            Kind::L => format!("L_{{{}}}", self.d / 2),
            Kind::G => format!("G_{{{}}}", half(self.d)),
        }
    }

    /// Parser syntax, e.g. `L(-1)`, `G(3/2)`, `C`.
    pub fn expr(&self) -> String {
        match self.kind {
            Kind::C => "C".to_string(),
            Kind::L => format!("L({})", self.d / 2),
            Kind::G => format!("G({})", half(self.d)),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Renders a doubled integer as `n` or `n/2`.
pub fn half(d: i64) -> String {
    if d % 2 == 0 {
        (d / 2).to_string()
    } else {
        format!("{d}/2")
    }
}

/// A finite exact linear combination of generators of one sector.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<Generator, Rational>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: Generator, coeff: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(g, coeff);
        e
    }

    pub fn add_term(&mut self, g: Generator, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, scale: &Rational) {
        for (g, c) in &other.terms {
            self.add_term(*g, c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &Generator) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parser-syntax rendering, e.g. `4 L(0) + 1/2 C`.
    pub fn to_expr_string(&self) -> String {
        format_sum(self.terms.iter().map(|(g, c)| (c.clone(), g.expr())))
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sum(self.terms.iter().map(|(g, c)| (c.clone(), g.label()))))
    }
}

/// Joins `coeff body` pairs into `a x + b y - c z`; coefficient 1 is elided.
pub(crate) fn format_sum(terms: impl Iterator<Item = (Rational, String)>) -> String {
    let mut out = String::new();
    for (i, (c, body)) in terms.enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() && !body.is_empty() {
            out.push_str(&body);
        } else if body.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            out.push_str(&format!("{mag} {body}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The super-bracket `[x, y]` on generators.
pub fn bracket(x: &Generator, y: &Generator) -> Result<LieElement, Error> {
    if x.sector != y.sector {
        return Err(Error::SectorMismatch(x.sector, y.sector));
    }
    let sector = x.sector;
    let mut out = LieElement::zero();
    match (x.kind, y.kind) {
        (Kind::C, _) | (_, Kind::C) => {}
        (Kind::L, Kind::L) => {
            // (m - n) L_{m+n} + δ_{m,-n} (m³ - m)/12 C
            out.add_term(Generator::l((x.d + y.d) / 2, sector), rat(x.d - y.d, 2));
            if x.d + y.d == 0 {
                let m = x.d / 2;
                out.add_term(Generator::central(sector), rat(m * m * m - m, 12));
            }
        }
        (Kind::L, Kind::G) => {
            // (m/2 - r) G_{m+r}
            out.add_term(Generator { kind: Kind::G, d: x.d + y.d, sector }, rat(x.d - 2 * y.d, 4));
        }
        (Kind::G, Kind::L) => {
            out.add_term(Generator { kind: Kind::G, d: x.d + y.d, sector }, rat(2 * x.d - y.d, 4));
        }
        (Kind::G, Kind::G) => {
            // 2 L_{r+s} + δ_{r+s,0} (r² - 1/4)/3 C
            out.add_term(Generator { kind: Kind::L, d: x.d + y.d, sector }, rat(2, 1));
            if x.d + y.d == 0 {
                out.add_term(Generator::central(sector), rat(x.d * x.d - 1, 12));
            }
        }
    }
    Ok(out)
}

/// Bilinear extension of [`bracket`].
pub fn bracket_elements(x: &LieElement, y: &LieElement) -> Result<LieElement, Error> {
    let mut out = LieElement::zero();
    for (gx, cx) in x.terms() {
        for (gy, cy) in y.terms() {
            out.add_scaled(&bracket(gx, gy)?, &(cx * cy));
        }
    }
    Ok(out)
}

/// All non-central generators of `sector` with doubled index in `lo..=hi`,
/// in `(index, kind)` order.
pub fn generators_in_range(sector: Sector, lo: i64, hi: i64) -> Vec<Generator> {
    let mut out = Vec::new();
    for d in lo..=hi {
        if d % 2 == 0 {
            out.push(Generator::l(d / 2, sector));
        }
        if sector.admits_odd_index(d) {
            out.push(Generator { kind: Kind::G, d, sector });
        }
    }
    out
}
