//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the straightening code or the truncation
//! enumerator; only the bracket table and the basis types are reused.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::Rng;
use svir::algebra::{bracket, Kind};
use svir::{Generator, Monomial, Pseudopartition, Rational, Sector, StrictPseudopartition, WhittakerData};

fn is_creation(g: &Generator) -> bool {
    match g.kind() {
        Kind::L => g.doubled() <= 0,
        Kind::G => g.doubled() <= 2 - g.sector().eps2(),
        Kind::C => false,
    }
}

fn psi(data: &WhittakerData, g: &Generator) -> Rational {
    match (g.kind(), g.doubled()) {
        (Kind::L, 2) => data.a.clone(),
        (Kind::L, 4) => data.b.clone(),
        _ => Rational::zero(),
    }
}

/// Creation generators `x y` already in canonical order.
fn in_order(x: &Generator, y: &Generator) -> bool {
    match (x.kind(), y.kind()) {
        (Kind::L, Kind::L) => x.doubled() <= y.doubled(),
        (Kind::L, Kind::G) => true,
        (Kind::G, Kind::G) => x.doubled() < y.doubled(),
        _ => false,
    }
}

fn koszul(x: &Generator, y: &Generator) -> Rational {
    let odd = |g: &Generator| g.kind() == Kind::G;
    Rational::from_integer(if odd(x) && odd(y) { (-1).into() } else { 1.into() })
}

fn to_monomial(word: &[Generator], sector: Sector) -> Monomial {
    let mut lambda = Vec::new();
    let mut mu = Vec::new();
    for g in word {
        match g.kind() {
            Kind::L => lambda.push((-g.doubled() / 2) as u32),
            Kind::G => mu.push((sector.eps2() - g.doubled()) / 2),
            Kind::C => unreachable!("C never survives rewriting"),
        }
    }
    mu.sort();
    let m = Monomial::new(
        Pseudopartition::from_parts(&lambda),
        StrictPseudopartition::from_parts(mu).expect("strict"),
        sector,
    )
    .expect("admissible");
    assert_eq!(m.factors(), word, "normal word and basis monomial disagree on factor order");
    m
}

/// Rewrites `word · w` to the PBW basis by always reducing the leftmost
/// reducible spot: `C ↦ c`, an annihilator at the right end acts by `ψ`, a
/// repeated odd pair becomes half its bracket, an annihilator left of a
/// creation generator or two creation generators out of order are swapped
/// with the super-commutator added.
pub fn naive_normal_form(data: &WhittakerData, word: &[Generator]) -> BTreeMap<Monomial, Rational> {
    let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
    let mut work: Vec<(Vec<Generator>, Rational)> = vec![(word.to_vec(), Rational::from_integer(1.into()))];
    let mut steps = 0usize;
    while let Some((word, coeff)) = work.pop() {
        steps += 1;
        assert!(steps < 5_000_000, "naive rewriting did not terminate");
        if coeff.is_zero() {
            continue;
        }
        match leftmost_rewrite(data, &word) {
            None => {
                let m = to_monomial(&word, data.sector);
                let slot = out.entry(m).or_insert_with(Rational::zero);
                *slot += coeff;
            }
            Some(terms) => {
                for (w, c) in terms {
                    work.push((w, &coeff * c));
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn leftmost_rewrite(data: &WhittakerData, word: &[Generator]) -> Option<Vec<(Vec<Generator>, Rational)>> {
    let half = Rational::new(1.into(), 2.into());
    for i in 0..word.len() {
        let x = word[i];
        let without = |i: usize| {
            let mut w = word.to_vec();
            w.remove(i);
            w
        };
        if x.kind() == Kind::C {
            return Some(vec![(without(i), data.c.clone())]);
        }
        if i + 1 == word.len() {
            if is_creation(&x) {
                return None;
            }
            return Some(vec![(without(i), psi(data, &x))]);
        }
        let y = word[i + 1];
        let replace = |g: Generator| {
            let mut w = word[..i].to_vec();
            w.push(g);
            w.extend_from_slice(&word[i + 2..]);
            w
        };
        if x == y && x.kind() == Kind::G {
            let br = bracket(&x, &x).expect("same sector");
            return Some(br.terms().map(|(g, c)| (replace(*g), c * &half)).collect());
        }
        // annihilators drift right one at a time; two adjacent ones wait
        // until the right one reaches w
        let settled = match (is_creation(&x), is_creation(&y)) {
            (true, true) => in_order(&x, &y),
            (true, false) | (false, false) => true,
            (false, true) => false,
        };
        if settled {
            continue;
        }
        let mut swapped = word.to_vec();
        swapped.swap(i, i + 1);
        let mut terms = vec![(swapped, koszul(&x, &y))];
        for (g, c) in bracket(&x, &y).expect("same sector").terms() {
            terms.push((replace(*g), c.clone()));
        }
        return Some(terms);
    }
    None
}

/// Every basis monomial with doubled `fdeg ≤ fdeg_max`, found by scanning a
/// box of exponent vectors and `μ` subsets and filtering on the degree
/// formula.
pub fn brute_force_truncation(sector: Sector, fdeg_max: i64) -> BTreeSet<Monomial> {
    let eps2 = sector.eps2();
    let min_part = eps2 - 1;
    let mu_parts: Vec<i64> = (min_part..=fdeg_max / 2 + 2).collect();
    // the cheapest μ is {min_part}, costing 2 min_part - eps2
    let lambda_budget = fdeg_max - (2 * min_part - eps2).min(0);
    let width = (lambda_budget / 2 + 1).max(1) as usize;
    let caps: Vec<u32> = (0..width).map(|k| (lambda_budget / (2 * k.max(1) as i64)).max(0) as u32).collect();

    let mut lambdas = Vec::new();
    let mut exps = vec![0u32; width];
    loop {
        let cost: i64 = exps.iter().enumerate().map(|(k, &e)| 2 * (k.max(1) as i64) * e as i64).sum();
        if cost <= lambda_budget {
            lambdas.push((exps.clone(), cost));
        }
        // odometer over the box Π [0, caps[k]]
        let mut k = 0;
        while k < width {
            exps[k] += 1;
            if exps[k] <= caps[k] {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
        if k == width {
            break;
        }
    }

    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << mu_parts.len()) {
        let mu: Vec<i64> = mu_parts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let mu_cost: i64 = mu.iter().map(|p| 2 * p - eps2).sum();
        for (exps, cost) in &lambdas {
            if cost + mu_cost <= fdeg_max {
                let m = Monomial::new(
                    Pseudopartition::from_exponents(exps.clone()),
                    StrictPseudopartition::from_parts(mu.clone()).expect("strict"),
                    sector,
                )
                .expect("admissible");
                out.insert(m);
            }
        }
    }
    out
}

/// A random generator with doubled index in `-bound..=bound`; `C` with
/// probability about 1/20.
pub fn random_generator(rng: &mut impl Rng, sector: Sector, bound: i64) -> Generator {
    if rng.gen_ratio(1, 20) {
        return Generator::central(sector);
    }
    loop {
        let d = rng.gen_range(-bound..=bound);
        let kind = if rng.gen_bool(0.5) { Kind::L } else { Kind::G };
        if let Ok(g) = Generator::new(kind, d, sector) {
            return g;
        }
    }
}

pub fn random_word(rng: &mut impl Rng, sector: Sector, max_len: usize, bound: i64) -> Vec<Generator> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| random_generator(rng, sector, bound)).collect()
}
