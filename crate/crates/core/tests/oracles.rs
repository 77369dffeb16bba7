mod common;

use std::collections::BTreeSet;

use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use svir::expr::{self, Expression, Term};
use svir::module::p_generators;
use svir::solver::{enumerate_truncation, min_fdeg, whittaker_kernel};
use svir::{rat, Generator, Kind, ModuleVector, Rational, Sector, WhittakerData, WhittakerModule};

use common::{brute_force_truncation, naive_normal_form, random_word};

fn data(sector: Sector, a: i64, b: i64, c: (i64, i64)) -> WhittakerData {
    WhittakerData::new(sector, rat(a, 1), rat(b, 1), rat(c.0, c.1))
}

#[test]
fn truncation_matches_brute_force() {
    for sector in [Sector::NS, Sector::R] {
        for f in min_fdeg(sector)..=10 {
            let fast: BTreeSet<_> = enumerate_truncation(sector, f).unwrap().basis.into_iter().collect();
            let slow = brute_force_truncation(sector, f);
            assert_eq!(fast, slow, "{sector} at doubled fdeg {f}");
        }
    }
}

#[test]
fn truncation_is_sorted_and_bounded() {
    for sector in [Sector::NS, Sector::R] {
        let t = enumerate_truncation(sector, 12).unwrap();
        assert!(t.basis.windows(2).all(|w| w[0] < w[1]));
        assert!(t.basis.iter().all(|m| m.fdeg() <= 12 && m.fdeg() >= min_fdeg(sector)));
    }
}

#[test]
fn truncation_rejects_low_bound() {
    assert!(enumerate_truncation(Sector::NS, -2).is_err());
    assert!(enumerate_truncation(Sector::R, -3).is_err());
}

fn check_word(module: &WhittakerModule, word: &[Generator]) {
    let fast = module.act_word(word, &module.vacuum()).unwrap().into_terms();
    let slow = naive_normal_form(module.data(), word);
    assert_eq!(fast, slow, "word {:?}", word.iter().map(Generator::expr).collect::<String>());
}

#[test]
fn straightening_matches_naive_rewriter() {
    let cases = [
        data(Sector::NS, 1, 1, (1, 2)),
        data(Sector::NS, -2, 0, (26, 1)),
        data(Sector::R, 1, 0, (0, 1)),
        data(Sector::R, 3, -1, (7, 3)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in cases {
        let module = WhittakerModule::new(d.clone());
        for _ in 0..150 {
            check_word(&module, &random_word(&mut rng, d.sector, 5, 8));
        }
    }
}

#[test]
fn hand_computed_words() {
    let ns = WhittakerModule::new(data(Sector::NS, 1, 2, (0, 1)));
    let g = |d| Generator::g_doubled(d, Sector::NS);
    // G_{3/2} G_{1/2} w = [G_{3/2}, G_{1/2}] w = 2 L_2 w
    let v = ns.act_word(&[g(3), g(1)], &ns.vacuum()).unwrap();
    assert_eq!(v, ns.vacuum().scaled(&rat(4, 1)));
    let r = WhittakerModule::new(data(Sector::R, 1, 0, (0, 1)));
    // G_1 G_1 w = L_2 w
    let v = r.act_word(&[Generator::g_doubled(2, Sector::R); 2], &r.vacuum()).unwrap();
    assert!(v.is_zero());
}

/// Dense Gaussian elimination over the truncation, with the image space
/// indexed by every monomial that appears.
fn dense_kernel_dimension(module: &WhittakerModule, fdeg_max: i64) -> usize {
    let sector = module.sector();
    let basis = enumerate_truncation(sector, fdeg_max).unwrap().basis;
    let gens = p_generators(sector, fdeg_max / 2 + 3);
    let mut rows_index = Vec::new();
    let mut columns: Vec<Vec<(usize, Rational)>> = Vec::new();
    for m in &basis {
        let v = ModuleVector::from_monomial(m.clone());
        let mut col = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            let mut image = module.act_generator(g, &v).unwrap();
            let psi = module.data().psi_value(g).unwrap_or_else(Rational::zero);
            image.add_scaled(&v, &-psi);
            for (out, c) in image.terms() {
                let key = (gi, out.clone());
                let idx = match rows_index.iter().position(|k| *k == key) {
                    Some(i) => i,
                    None => {
                        rows_index.push(key);
                        rows_index.len() - 1
                    }
                };
                col.push((idx, c.clone()));
            }
        }
        columns.push(col);
    }
    let mut mat = vec![vec![Rational::zero(); basis.len()]; rows_index.len()];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            mat[*i][j] += c;
        }
    }
    let mut rank = 0;
    for j in 0..basis.len() {
        let Some(p) = (rank..mat.len()).find(|&i| !mat[i][j].is_zero()) else { continue };
        mat.swap(rank, p);
        let pivot = mat[rank][j].clone();
        let prow = mat[rank].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != rank && !row[j].is_zero() {
                let f = &row[j] / &pivot;
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    basis.len() - rank
}

#[test]
fn kernel_dimension_matches_dense_elimination() {
    for (d, f) in [
        (data(Sector::NS, 1, 1, (1, 2)), 5),
        (data(Sector::NS, 1, 0, (0, 1)), 5),
        (data(Sector::R, 1, 1, (0, 1)), 4),
        (data(Sector::R, 1, 0, (0, 1)), 4),
    ] {
        let module = WhittakerModule::new(d);
        let sparse = whittaker_kernel(&module, f).unwrap();
        assert!(sparse.verified);
        assert_eq!(sparse.dimension(), dense_kernel_dimension(&module, f));
    }
}

fn arb_generator(sector: Sector) -> impl Strategy<Value = Generator> {
    (0u8..3, -9i64..=9).prop_filter_map("index valid in sector", move |(k, d)| {
        let kind = [Kind::L, Kind::G, Kind::C][k as usize];
        Generator::new(kind, if kind == Kind::C { 0 } else { d }, sector).ok()
    })
}

fn arb_expression(sector: Sector) -> impl Strategy<Value = Expression> {
    let term = (-30i64..=30, 1i64..=6, prop::collection::vec(arb_generator(sector), 0..4), any::<bool>())
        .prop_map(|(n, d, gens, has_w)| Term { coeff: rat(n, d), gens, has_w });
    prop::collection::vec(term, 1..5).prop_map(|terms| Expression { terms })
}

proptest! {
    #[test]
    fn expression_round_trip_ns(e in arb_expression(Sector::NS)) {
        prop_assert_eq!(expr::parse(&e.to_string(), Sector::NS).unwrap(), e);
    }

    #[test]
    fn expression_round_trip_r(e in arb_expression(Sector::R)) {
        prop_assert_eq!(expr::parse(&e.to_string(), Sector::R).unwrap(), e);
    }

    #[test]
    fn straightening_matches_naive_rewriter_prop(
        seed in any::<u64>(),
        a in -3i64..=3,
        b in -3i64..=3,
        ramond in any::<bool>(),
    ) {
        let sector = if ramond { Sector::R } else { Sector::NS };
        let module = WhittakerModule::new(data(sector, a, b, (1, 1)));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = random_word(&mut rng, sector, 4, 6);
        let fast = module.act_word(&word, &module.vacuum()).unwrap().into_terms();
        prop_assert_eq!(fast, naive_normal_form(module.data(), &word));
    }
}
