use std::collections::BTreeSet;

use pivotal_workbench::bundled;
use pivotal_workbench::doubles::{self, DoubleError, DoubleKind, Flavor, YDModule};
use pivotal_workbench::exalg::PrimeField;
use pivotal_workbench::hopf::{self, HopfAlgebra, PairInInvolution};
use pivotal_workbench::io;

type H = HopfAlgebra<PrimeField>;

fn key(p: &PairInInvolution<PrimeField>) -> (Vec<u64>, Vec<u64>) {
    (p.beta.functional.clone(), p.g.element.clone())
}

#[test]
fn drinfeld_doubles_are_quasitriangular_hopf_algebras() {
    for h in [bundled::kc2_f5(), bundled::kc3_f7(), bundled::sweedler_f5(), bundled::s3_f7()] {
        let d = doubles::build_drinfeld_double(&h).unwrap();
        assert_eq!(d.dim(), h.dim() * h.dim());
        let hd = d.as_hopf().unwrap();
        let report = hopf::check_axioms(&hd);
        assert!(report.all_passed(), "{}: {:?}", h.name(), report.failures());
        let r = doubles::check_rmatrix(&d).unwrap();
        assert!(r.all_passed(), "{}: {:?}", h.name(), r.first_failure());
    }
}

#[test]
fn anti_doubles_are_associative() {
    for h in bundled::all() {
        let a = doubles::build_anti_double(&h).unwrap();
        assert!(doubles::check_algebra(&a).iter().all(|c| c.passed), "{}", h.name());
        assert!(a.as_hopf().is_none());
    }
}

#[test]
fn kc2_doubles_commute() {
    let h = bundled::kc2_f5();
    for kind in [DoubleKind::Drinfeld, DoubleKind::Anti] {
        let d = doubles::build_double(&h, kind).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let (ex, ey) = (d.basis_vector(x), d.basis_vector(y));
                assert_eq!(d.mul(&ex, &ey), d.mul(&ey, &ex));
            }
        }
    }
}

#[test]
fn pairs_are_the_one_dimensional_anti_yd_modules() {
    for h in bundled::all() {
        let pairs: BTreeSet<_> = hopf::find_pairs_in_involution(&h).unwrap().iter().map(key).collect();
        let ayd: BTreeSet<_> = doubles::enumerate_one_dim_ayd(&h).unwrap().iter().map(key).collect();
        assert_eq!(pairs, ayd, "{}", h.name());
    }
}

#[test]
fn twist_is_an_isomorphism_exactly_for_pairs() {
    for h in bundled::all() {
        let d = doubles::build_drinfeld_double_unchecked(&h).unwrap();
        let a = doubles::build_anti_double_unchecked(&h).unwrap();
        let pairs: BTreeSet<_> = hopf::find_pairs_in_involution(&h).unwrap().iter().map(key).collect();
        for beta in hopf::enumerate_characters(&h).unwrap() {
            for g in hopf::enumerate_group_likes(&h).unwrap() {
                let map = doubles::twist_map(&h, &beta, &g);
                let is_iso = doubles::is_algebra_iso(&map, &d, &a).is_ok();
                let is_pair = pairs.contains(&(beta.functional.clone(), g.element.clone()));
                assert_eq!(is_iso, is_pair, "{}: beta={:?} g={:?}", h.name(), beta.functional, g.element);
            }
        }
    }
}

#[test]
fn modules_induce_representations() {
    for h in bundled::all() {
        let d = doubles::build_drinfeld_double_unchecked(&h).unwrap();
        let a = doubles::build_anti_double_unchecked(&h).unwrap();
        let yd = vec![YDModule::trivial(&h, Flavor::Yd), YDModule::regular(&h, Flavor::Yd).unwrap()];
        let mut ayd = vec![YDModule::regular(&h, Flavor::Ayd).unwrap()];
        for p in hopf::find_pairs_in_involution(&h).unwrap() {
            ayd.push(YDModule::one_dim(&h, &p.beta, &p.g, Flavor::Ayd));
        }
        yd.iter().for_each(|m| assert!(doubles::yd_compat_check(&h, m).passed, "{}", h.name()));
        ayd.iter().for_each(|m| assert!(doubles::yd_compat_check(&h, m).passed, "{}", h.name()));
        for m in &yd {
            doubles::module_correspondence_check(&d, m).unwrap();
        }
        for m in &ayd {
            doubles::module_correspondence_check(&a, m).unwrap();
        }
        assert!(matches!(
            doubles::module_correspondence_check(&a, &yd[0]),
            Err(DoubleError::ConventionMismatch(_))
        ));
    }
}

#[test]
fn trivial_module_is_anti_yd_iff_trivial_pair() {
    for h in bundled::all() {
        let trivial_pair = hopf::find_pairs_in_involution(&h)
            .unwrap()
            .iter()
            .any(|p| p.beta.functional == h.counit() && p.g.element == h.unit());
        let m = YDModule::trivial(&h, Flavor::Ayd);
        assert_eq!(doubles::yd_compat_check(&h, &m).passed, trivial_pair, "{}", h.name());
    }
}

#[test]
fn yd_times_anti_yd_is_anti_yd() {
    for h in bundled::all() {
        let yd = YDModule::regular(&h, Flavor::Yd).unwrap();
        for p in hopf::find_pairs_in_involution(&h).unwrap() {
            let k = YDModule::one_dim(&h, &p.beta, &p.g, Flavor::Ayd);
            let t = doubles::tensor_modules(&h, &yd, &k).unwrap();
            assert_eq!(t.flavor, Flavor::Ayd);
            assert!(doubles::yd_compat_check(&h, &t).passed, "{}", h.name());
        }
        assert!(doubles::tensor_modules(&h, &YDModule::trivial(&h, Flavor::Ayd), &yd).is_none());
    }
}

fn kappa_algebras() -> Vec<H> {
    vec![bundled::kc2_f5(), bundled::kc3_f7(), bundled::sweedler_f5(), bundled::s3_f7()]
}

#[test]
fn kappa_is_a_heap_morphism_and_iota_injective() {
    for h in kappa_algebras() {
        let pairs = hopf::find_pairs_in_involution(&h).unwrap();
        let d = doubles::build_drinfeld_double_unchecked(&h).unwrap();
        let kr = doubles::kappa_report(&d, &pairs, hopf::DEFAULT_MAX_SCAN).unwrap();
        assert!(kr.is_heap_morphism, "{}", h.name());
        let distinct: BTreeSet<_> = kr.kappa_table.iter().collect();
        assert_eq!(distinct.len(), pairs.len(), "{}: kappa not injective", h.name());
        let ir = doubles::quotient_and_iota_check(&d, hopf::DEFAULT_MAX_SCAN).unwrap();
        assert!(ir.passed(), "{}: {ir:?}", h.name());
    }
}

#[test]
fn double_export_round_trip() {
    let h = bundled::kc2_f5();
    let d = doubles::build_drinfeld_double(&h).unwrap();
    let file = d.to_file();
    assert!(file.rmatrix.is_some());
    let text = io::to_json_text(&file);
    let back = io::load(&io::parse_json(&text).unwrap(), None).unwrap();
    match back {
        io::AnyHopf::Prime(hd) => {
            assert_eq!(hd.dim(), 4);
            assert!(hopf::check_axioms(&hd).all_passed());
        }
        other => panic!("unexpected field {other:?}"),
    }
    let a = doubles::build_anti_double(&h).unwrap().to_file();
    assert!(a.comult.is_none() && a.rmatrix.is_none());
}

#[test]
fn broken_input_names_the_axiom() {
    let h = bundled::sweedler_f5();
    let mut s = h.antipode().clone();
    s.set(0, 0, 2);
    let bad = h.with_antipode(s);
    match doubles::build_drinfeld_double(&bad) {
        Err(DoubleError::AxiomFailure(name)) => assert!(name.starts_with("input antipode"), "{name}"),
        other => panic!("expected an axiom failure, got {other:?}"),
    }
}
