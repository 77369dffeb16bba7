use num_traits::Zero;

use svir::findim::{odd_lead, TwoDimModule};
use svir::module::{in_p, p_generating_set, p_generators};
use svir::solver::{self, ProbeConfig, Verdict, DEFAULT_BUDGET};
use svir::{bracket, expr, rat, Error, Generator, ModuleVector, Rational, Sector, WhittakerData, WhittakerModule};

fn data(sector: Sector, a: i64, b: i64) -> WhittakerData {
    WhittakerData::new(sector, rat(a, 1), rat(b, 1), rat(1, 2))
}

fn vector(module: &WhittakerModule, src: &str) -> ModuleVector {
    expr::parse(src, module.sector()).unwrap().to_module_vector(module).unwrap()
}

#[test]
fn kernel_matches_classification_where_it_holds() {
    for d in [data(Sector::NS, 2, 1), data(Sector::NS, -1, 0), data(Sector::R, 1, 1), data(Sector::R, 0, -3)] {
        let module = WhittakerModule::new(d.clone());
        let report = solver::whittaker_kernel(&module, 8).unwrap();
        assert!(report.verified);
        assert_eq!(Some(report.kernel_basis), solver::expected_kernel(&d));
    }
}

#[test]
fn ramond_b_zero_kernel_is_four_dimensional() {
    let a = rat(3, 1);
    let module = WhittakerModule::new(WhittakerData::new(Sector::R, a.clone(), Rational::zero(), rat(0, 1)));
    let report = solver::whittaker_kernel(&module, 8).unwrap();
    assert_eq!(report.dimension(), 4);
    let extra = vector(&module, "L(0)G(1)w - 6 G(0)w");
    assert!(module.is_whittaker(&extra).unwrap());
    assert!(module.is_whittaker(&vector(&module, "G(0)G(1)w")).unwrap());
    assert!(report.kernel_basis.contains(&extra));
}

#[test]
fn kernel_rejects_bound_below_minimum() {
    let module = WhittakerModule::new(data(Sector::R, 1, 1));
    assert!(matches!(solver::whittaker_kernel(&module, -3), Err(Error::TruncationBound { .. })));
}

#[test]
fn generating_set_generates_p() {
    for sector in [Sector::NS, Sector::R] {
        let mut reached: Vec<Generator> = p_generating_set(sector).to_vec();
        for _ in 0..6 {
            let current = reached.clone();
            for x in &current {
                for y in &current {
                    for (g, c) in bracket(x, y).unwrap().terms() {
                        if !c.is_zero() && !g.is_central() && !reached.contains(g) {
                            assert!(in_p(g));
                            reached.push(*g);
                        }
                    }
                }
            }
        }
        for g in p_generators(sector, 6) {
            assert!(reached.contains(&g), "{} not reached", g.label());
        }
    }
}

#[test]
fn whittaker_and_findim_agree_on_low_span() {
    for d in [data(Sector::NS, 1, 2), data(Sector::NS, 1, 0), data(Sector::R, 2, 1), data(Sector::R, 1, 0)] {
        let module = WhittakerModule::new(d.clone());
        let small = TwoDimModule::build(&d, 6);
        let w = module.vacuum();
        let u = solver::degenerate_vector(d.sector);
        let lift = |m: &svir::findim::Mat2, col: usize| {
            let mut v = w.scaled(&m[0][col]);
            v.add_scaled(&u, &m[1][col]);
            v
        };
        for g in p_generators(d.sector, 6).into_iter().chain([odd_lead(d.sector)]) {
            let m = small.matrix(&g);
            assert_eq!(module.act_generator(&g, &w).unwrap(), lift(&m, 0), "{} on w", g.label());
            if in_p(&g) {
                assert_eq!(module.act_generator(&g, &u).unwrap(), lift(&m, 1), "{} on u", g.label());
            }
        }
    }
}

#[test]
fn p_orbit_dimensions() {
    let module = WhittakerModule::new(data(Sector::NS, 1, 1));
    assert_eq!(solver::p_orbit_dimension(&module, &module.vacuum(), 100).unwrap(), Some(1));
    let r = WhittakerModule::new(data(Sector::R, 1, 0));
    let g1w = solver::degenerate_vector(Sector::R);
    assert_eq!(solver::p_orbit_dimension(&r, &g1w, 100).unwrap(), Some(1));
    // span{L_{-1}w, L_0 w, G_{1/2}w, w}
    let v = vector(&module, "L(-1)w");
    assert_eq!(solver::p_orbit_dimension(&module, &v, 100).unwrap(), Some(4));
}

#[test]
fn cyclicity_certificates_replay() {
    let module = WhittakerModule::new(data(Sector::NS, 1, 1));
    let config = ProbeConfig::raising(8, DEFAULT_BUDGET);
    for src in ["L(-1)w", "G(-1/2)w", "L(-2)G(1/2)w + L(0)w"] {
        let probe = solver::cyclicity_probe(&module, &vector(&module, src), &config).unwrap();
        assert!(probe.reached_w, "{src}");
        assert!(probe.verify(&module).unwrap(), "{src}");
    }
    let zero = ModuleVector::zero(Sector::NS);
    assert!(matches!(solver::cyclicity_probe(&module, &zero, &config), Err(Error::ZeroVector)));
}

#[test]
fn tampered_certificate_is_rejected() {
    let module = WhittakerModule::new(data(Sector::R, 1, 2));
    let mut probe =
        solver::cyclicity_probe(&module, &solver::degenerate_vector(Sector::R), &ProbeConfig::raising(8, 100)).unwrap();
    assert!(probe.verify(&module).unwrap());
    probe.residual_coefficient = Some(rat(5, 1));
    assert!(!probe.verify(&module).unwrap());
}

#[test]
fn ramond_b_zero_simplicity_finds_degenerate_witness() {
    let report = solver::simplicity_report(&data(Sector::R, 1, 0), 2, 500).unwrap();
    assert_eq!(report.verdict, Verdict::ProperSubmoduleWitness);
    assert!(report.degenerate);
}

#[test]
fn degenerate_probe_preconditions() {
    assert!(matches!(solver::degenerate_submodule_probe(&data(Sector::R, 1, 1), 4, 10), Err(Error::Precondition(_))));
    assert!(matches!(solver::degenerate_submodule_probe(&data(Sector::NS, 1, 0), 4, 10), Err(Error::Precondition(_))));
    assert!(matches!(solver::simplicity_report(&data(Sector::NS, 0, 0), 4, 10), Err(Error::TrivialPsi)));
}
