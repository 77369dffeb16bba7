//! The `(1|1)`-dimensional `SVir_ε⁺`-modules `A_ε(ψ) = ℂw ⊕ ℂu`.
//!
//! `SVir_ε⁺` here is spanned by `L_n (n ≥ 1)` and `G_r (r ≥ 1 - ε, r > 0)`,
//! i.e. `p_ε` plus the single odd mode `G_{1-ε}`. The defining relations are
//! `x w = ψ(x) w` for `x ∈ p_ε` and `G_{1-ε} w = u`; the action on `u` is
//! derived from them through the bracket.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{bracket, generators_in_range, Generator, LieElement, Parity, Sector};
use crate::module::{in_p, WhittakerData};
use crate::{rat, Rational};

/// A 2×2 matrix over the ordered basis `(w, u)`; `m[i][j]` is the
/// coefficient of basis vector `i` in the image of basis vector `j`.
pub type Mat2 = [[Rational; 2]; 2];

fn zero_mat() -> Mat2 {
    [[Rational::zero(), Rational::zero()], [Rational::zero(), Rational::zero()]]
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = zero_mat();
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        }
    }
    out
}

fn mat_add_scaled(acc: &mut Mat2, x: &Mat2, s: &Rational) {
    for i in 0..2 {
        for j in 0..2 {
            acc[i][j] += &x[i][j] * s;
        }
    }
}

/// The odd creation mode `G_{1-ε}` of `SVir_ε⁺`.
pub fn odd_lead(sector: Sector) -> Generator {
    Generator::g_doubled(2 - sector.eps2(), sector)
}

/// Whether `g` is a generator of `SVir_ε⁺`.
pub fn in_positive_part(g: &Generator) -> bool {
    in_p(g) || *g == odd_lead(g.sector())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDimModule {
    pub sector: Sector,
    pub psi: WhittakerData,
    action: BTreeMap<Generator, Mat2>,
}

impl TwoDimModule {
    /// Builds `A_ε(ψ)` with the action table filled for every generator of
    /// `SVir_ε⁺` with doubled index `≤ 2 * index_bound`.
    pub fn build(psi: &WhittakerData, index_bound: i64) -> Self {
        let sector = psi.sector;
        let mut module = TwoDimModule { sector, psi: psi.clone(), action: BTreeMap::new() };
        for g in generators_in_range(sector, 1, 2 * index_bound) {
            if in_positive_part(&g) {
                let m = module.derive(&g);
                module.action.insert(g, m);
            }
        }
        module
    }

    /// Action of `g` on `w` in terms of `(w, u)` coordinates.
    fn on_w(&self, g: &Generator) -> [Rational; 2] {
        if *g == odd_lead(self.sector) {
            return [Rational::zero(), rat(1, 1)];
        }
        let psi = self.psi.psi_value(g).expect("generator of the positive part");
        [psi, Rational::zero()]
    }

    /// Action of a Lie element (positive part only, no central terms) on `w`.
    fn element_on_w(&self, x: &LieElement) -> [Rational; 2] {
        let mut out = [Rational::zero(), Rational::zero()];
        for (g, c) in x.terms() {
            assert!(!g.is_central(), "positive part has no central terms");
            let [a, b] = self.on_w(g);
            out[0] += a * c;
            out[1] += b * c;
        }
        out
    }

    /// Derived matrix of `g`.
    ///
    /// `g u = [g, G] w + (-1)^{|g|} G (g w)` with `G = G_{1-ε}`; for `g = G`
    /// this reads `G u = [G, G] w / 2`.
    fn derive(&self, g: &Generator) -> Mat2 {
        let lead = odd_lead(self.sector);
        let gw = self.on_w(g);
        let br = bracket(g, &lead).expect("same sector");
        let mut gu = self.element_on_w(&br);
        if *g == lead {
            gu = [&gu[0] * rat(1, 2), &gu[1] * rat(1, 2)];
        } else {
            let sign = rat(g.parity().koszul(Parity::Odd), 1);
            // G (g w) = (g w)_w · u, and G u = ([G,G]/2) w
            let g_u = self.element_on_w(&bracket(&lead, &lead).expect("same sector"));
            let g_on_u = [&g_u[0] * rat(1, 2), &g_u[1] * rat(1, 2)];
            gu[1] += &gw[0] * &sign;
            gu[0] += &gw[1] * &sign * &g_on_u[0];
            gu[1] += &gw[1] * &sign * &g_on_u[1];
        }
        [[gw[0].clone(), gu[0].clone()], [gw[1].clone(), gu[1].clone()]]
    }

    /// Matrix of `g`: the table entry if present, otherwise derived.
    pub fn matrix(&self, g: &Generator) -> Mat2 {
        self.action.get(g).cloned().unwrap_or_else(|| self.derive(g))
    }

    fn element_matrix(&self, x: &LieElement) -> Mat2 {
        let mut out = zero_mat();
        for (g, c) in x.terms() {
            mat_add_scaled(&mut out, &self.matrix(g), c);
        }
        out
    }

    pub fn table(&self) -> impl Iterator<Item = (&Generator, &Mat2)> {
        self.action.iter()
    }

    /// Overwrites one table entry (used to build negative controls).
    pub fn set_entry(&mut self, g: Generator, m: Mat2) {
        self.action.insert(g, m);
    }

    /// `x (y v) - (-1)^{|x||y|} y (x v) = [x, y] v` for all generator pairs
    /// with index `≤ index_bound`, on both basis vectors.
    pub fn verify_axioms(&self, index_bound: i64) -> Result<(), Counterexample> {
        let gens: Vec<Generator> =
            generators_in_range(self.sector, 1, 2 * index_bound).into_iter().filter(in_positive_part).collect();
        for x in &gens {
            for y in &gens {
                let mx = self.matrix(x);
                let my = self.matrix(y);
                let sign = rat(x.parity().koszul(y.parity()), 1);
                let mut lhs = mat_mul(&mx, &my);
                mat_add_scaled(&mut lhs, &mat_mul(&my, &mx), &-sign);
                let rhs = self.element_matrix(&bracket(x, y).expect("same sector"));
                for v in 0..2 {
                    if lhs[0][v] != rhs[0][v] || lhs[1][v] != rhs[1][v] {
                        return Err(Counterexample { x: *x, y: *y, on_u: v == 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// Proper nonzero graded subspaces (`span{w}`, `span{u}`) invariant under
    /// every generator with index `≤ index_bound`.
    pub fn invariant_subspaces(&self, index_bound: i64) -> Vec<Subspace> {
        let gens: Vec<Generator> =
            generators_in_range(self.sector, 1, 2 * index_bound).into_iter().filter(in_positive_part).collect();
        let mut out = Vec::new();
        // span{w} is invariant iff nothing maps w into u; likewise for u
        if gens.iter().all(|g| self.matrix(g)[1][0].is_zero()) {
            out.push(Subspace::W);
        }
        if gens.iter().all(|g| self.matrix(g)[0][1].is_zero()) {
            out.push(Subspace::U);
        }
        out
    }

    pub fn is_simple(&self, index_bound: i64) -> bool {
        self.invariant_subspaces(index_bound).is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subspace {
    W,
    U,
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subspace::W => "span{w}",
            Subspace::U => "span{u}",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub x: Generator,
    pub y: Generator,
    pub on_u: bool,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "super-commutator of {} and {} fails on {}", self.x, self.y, if self.on_u { "u" } else { "w" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(sector: Sector, a: i64, b: i64) -> WhittakerData {
        WhittakerData::new(sector, rat(a, 1), rat(b, 1), rat(0, 1))
    }

    #[test]
    fn ns_g_half_on_u() {
        let m = TwoDimModule::build(&data(Sector::NS, 1, 0), 8);
        let g = m.matrix(&Generator::g_doubled(1, Sector::NS));
        // G_{1/2} u = a w = w
        assert_eq!(g[0][1], rat(1, 1));
        assert_eq!(g[1][1], rat(0, 1));
    }

    #[test]
    fn ns_table_matches_closed_form() {
        let s = Sector::NS;
        let (a, b) = (3, -5);
        let m = TwoDimModule::build(&data(s, a, b), 8);
        // G_{3/2} u = 2 ψ(L_2) w, G_{5/2} u = 2 ψ(L_3) w = 0
        assert_eq!(m.matrix(&Generator::g_doubled(3, s))[0][1], rat(2 * b, 1));
        assert!(m.matrix(&Generator::g_doubled(5, s))[0][1].is_zero());
        // L_n u = ψ(L_n) u
        assert_eq!(m.matrix(&Generator::l(1, s))[1][1], rat(a, 1));
        assert_eq!(m.matrix(&Generator::l(2, s))[1][1], rat(b, 1));
    }

    #[test]
    fn ramond_cases() {
        let s = Sector::R;
        let m = TwoDimModule::build(&data(s, 1, 0), 8);
        assert!(m.matrix(&Generator::g_doubled(2, s))[0][1].is_zero());
        assert_eq!(m.invariant_subspaces(8), vec![Subspace::U]);
        let m = TwoDimModule::build(&data(s, 0, 3), 8);
        assert_eq!(m.matrix(&Generator::g_doubled(2, s))[0][1], rat(3, 1));
        assert!(m.is_simple(8));
    }

    #[test]
    fn trivial_psi_kills_u() {
        for s in [Sector::NS, Sector::R] {
            let m = TwoDimModule::build(&data(s, 0, 0), 8);
            for (_, mat) in m.table() {
                assert!(mat[0][1].is_zero() && mat[1][1].is_zero());
            }
            assert_eq!(m.invariant_subspaces(8), vec![Subspace::U]);
        }
    }

    #[test]
    fn axioms_and_negative_control() {
        let m = TwoDimModule::build(&data(Sector::NS, 1, 1), 8);
        assert_eq!(m.verify_axioms(8), Ok(()));
        let mut broken = m.clone();
        let g = Generator::g_doubled(3, Sector::NS);
        let mut mat = broken.matrix(&g);
        mat[0][1] += rat(1, 1);
        broken.set_entry(g, mat);
        assert!(broken.verify_axioms(8).is_err());
    }
}
