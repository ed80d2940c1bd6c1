mod common;

use std::collections::BTreeSet;

use common::{all_loop_free, oracle_half_braidings};
use pivotal_workbench::freecat::{self as fc, CentreObject, Diagram, FreecatError, PivotalAssignment};
use pivotal_workbench::heap;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn id(n: usize) -> Diagram {
    Diagram::identity(n)
}

fn c(g: &Diagram, f: &Diagram) -> Diagram {
    fc::compose(g, f).unwrap()
}

fn t(f: &Diagram, g: &Diagram) -> Diagram {
    fc::tensor(f, g)
}

#[test]
fn half_braiding_counts_match_brute_force() {
    for (n, expected) in [(0, 2), (1, 4), (2, 12), (3, 40)] {
        let oracle = oracle_half_braidings(n);
        assert_eq!(oracle.len(), expected, "width {n}");
        let params = fc::enumerate_half_braidings(n).unwrap();
        let engine: BTreeSet<Diagram> = params
            .iter()
            .map(|p| fc::hb_component(&CentreObject::new(p.clone()), 1))
            .collect();
        assert_eq!(engine.len(), params.len(), "parameters collide at width {n}");
        assert_eq!(engine, oracle, "width {n}");
    }
}

#[test]
fn parameters_round_trip_through_components() {
    for n in 0..=3 {
        for p in fc::enumerate_half_braidings(n).unwrap() {
            let chi = fc::hb_component(&CentreObject::new(p.clone()), 1);
            assert_eq!(fc::param_from_component(&chi).unwrap(), p);
        }
    }
    assert!(matches!(
        fc::param_from_component(&Diagram::identity(3)),
        Err(FreecatError::NotInParameterFamily(_))
    ));
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(fc::HalfBraidingParam::new(vec![1, 2, 0], vec![0, 0, 0], 0).is_err());
    assert!(fc::HalfBraidingParam::new(vec![1, 0], vec![1, 0], 0).is_err());
    assert!(fc::HalfBraidingParam::new(vec![0], vec![2], 0).is_err());
    assert!(fc::HalfBraidingParam::new(vec![1, 0], vec![1, 1], 1).is_ok());
    assert!(matches!(
        fc::enumerate_half_braidings(fc::MAX_ENUM_WIDTH + 1),
        Err(FreecatError::BoundTooLarge { .. })
    ));
}

#[test]
fn extension_glues_along_tensor_products() {
    for c0 in fc::centre_objects(3).unwrap() {
        let n = c0.width();
        for a in 0..=3 {
            for b in 0..=3 {
                let glued = c(
                    &t(&id(a), &fc::hb_component(&c0, b)),
                    &t(&fc::hb_component(&c0, a), &id(b)),
                );
                assert_eq!(glued, fc::hb_component(&c0, a + b), "{} a={a} b={b}", c0.label());
            }
        }
        assert_eq!(fc::hb_component(&c0, 0), id(n));
    }
}

#[test]
fn half_braidings_are_natural_for_every_small_morphism() {
    for c0 in fc::centre_objects(2).unwrap() {
        let n = c0.width();
        for a in 0..=3 {
            for b in (0..=3).filter(|b| (a + b) % 2 == 0) {
                for f in all_loop_free(a, b) {
                    let lhs = c(&fc::hb_component(&c0, b), &t(&id(n), &f));
                    let rhs = c(&t(&f, &id(n)), &fc::hb_component(&c0, a));
                    assert_eq!(lhs, rhs, "{} against {f}", c0.label());
                }
            }
        }
    }
}

#[test]
fn centre_tensor_concatenates_signatures() {
    let objs = fc::centre_objects(2).unwrap();
    for c1 in &objs {
        for c2 in &objs {
            let p = fc::centre_tensor(c1, c2).unwrap();
            assert_eq!(p.width(), c1.width() + c2.width());
            let sig: Vec<u8> = c1.signature().iter().chain(c2.signature()).copied().collect();
            assert_eq!(p.signature(), sig.as_slice());
            assert_eq!(p.hb().j, c1.hb().j ^ c2.hb().j);
        }
        assert_eq!(&fc::centre_tensor(c1, &CentreObject::unit(0)).unwrap(), c1);
        assert_eq!(&fc::centre_tensor(&CentreObject::unit(0), c1).unwrap(), c1);
    }
    // associativity on width <= 3
    let small = fc::centre_objects(1).unwrap();
    for a in &small {
        for b in &small {
            for d in &small {
                let left = fc::centre_tensor(&fc::centre_tensor(a, b).unwrap(), d).unwrap();
                let right = fc::centre_tensor(a, &fc::centre_tensor(b, d).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn centre_dual_is_an_involution() {
    for c0 in fc::centre_objects(3).unwrap() {
        let d = fc::centre_dual(&c0).unwrap();
        assert_eq!(d.width(), c0.width());
        assert_eq!(fc::centre_dual(&d).unwrap(), c0, "{}", c0.label());
    }
}

#[test]
fn lift_formula_matches_engine() {
    for n in 1..=3 {
        let objs: Vec<CentreObject> = fc::enumerate_half_braidings(n)
            .unwrap()
            .into_iter()
            .map(CentreObject::new)
            .collect();
        let auts = fc::all_automorphisms(n);
        let mut lifts = 0;
        for g in &auts {
            for c1 in &objs {
                for c2 in &objs {
                    let check = fc::lift_check(g, c1, c2).unwrap();
                    assert!(check.agree(), "{g}: {} -> {}", c1.label(), c2.label());
                    lifts += usize::from(check.engine);
                }
            }
        }
        assert!(lifts > 0);
        if n == 2 {
            assert_eq!(auts.len() * objs.len() * objs.len(), 8 * 12 * 12);
        }
    }
}

#[test]
fn sigma_is_natural() {
    for a in 0..=3 {
        for b in 0..=3 {
            for p in 0..=3 {
                for q in (0..=3).filter(|q| (p + q) % 2 == 0) {
                    if (a + b) % 2 == 1 {
                        continue;
                    }
                    for f in all_loop_free(a, b) {
                        for g in all_loop_free(p, q).into_iter().step_by(7) {
                            let lhs = c(&fc::braiding(b, q), &t(&f, &g));
                            let rhs = c(&t(&g, &f), &fc::braiding(a, p));
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}

/// Naturality of an assignment against every loop-free morphism between
/// centre objects of width at most 3. Returns the first failure.
fn exhaustive_naturality(p: &PivotalAssignment) -> Option<(String, String, Diagram)> {
    let objs = fc::centre_objects(3).unwrap();
    for c1 in &objs {
        for c2 in &objs {
            let (a, b) = (c1.width(), c2.width());
            if (a + b) % 2 == 1 {
                continue;
            }
            for g in all_loop_free(a, b) {
                if fc::morphism_lifts(&g, c1, c2).unwrap() && c(&p.value(c2), &g) != c(&g, &p.value(c1)) {
                    return Some((c1.label(), c2.label(), g));
                }
            }
        }
    }
    None
}

#[test]
fn zeta_is_natural_for_every_lifted_morphism() {
    for p in [PivotalAssignment::LiftId, PivotalAssignment::LiftRho, PivotalAssignment::Zeta] {
        assert_eq!(exhaustive_naturality(&p), None, "{p}");
    }
    let (src, dst, g) = exhaustive_naturality(&PivotalAssignment::SignatureOnly).expect("signature-only fails");
    assert_eq!(g.source(), g.target(), "{src} -> {dst} via {g}");
}

#[test]
fn signature_only_counterexample() {
    let from = CentreObject::new(fc::HalfBraidingParam::new(vec![1, 0], vec![0, 0], 0).unwrap());
    let to = CentreObject::new(fc::HalfBraidingParam::new(vec![1, 0], vec![1, 1], 0).unwrap());
    let g = t(&Diagram::rho(), &id(1));
    assert!(fc::morphism_lifts(&g, &from, &to).unwrap());
    let p = PivotalAssignment::SignatureOnly;
    assert_ne!(c(&p.value(&to), &g), c(&g, &p.value(&from)));
    let z = PivotalAssignment::Zeta;
    assert_eq!(c(&z.value(&to), &g), c(&g, &z.value(&from)));
}

#[test]
fn zeta_on_width_one_objects() {
    for hb in fc::enumerate_half_braidings(1).unwrap() {
        let obj = CentreObject::new(hb.clone());
        let expected = if hb.phi[0] == 1 { Diagram::rho() } else { id(1) };
        assert_eq!(PivotalAssignment::Zeta.value(&obj), expected, "{}", obj.label());
    }
    let labels: BTreeSet<String> = fc::centre_objects(1)
        .unwrap()
        .iter()
        .filter(|o| o.width() == 1)
        .map(CentreObject::label)
        .collect();
    let expected: BTreeSet<String> = ["(X, σ^{∘,∘})", "(X, σ^{∘,•})", "(X, σ^{•,∘})", "(X, σ^{•,•})"]
        .map(String::from)
        .into();
    assert_eq!(labels, expected);
}

#[test]
fn verify_pivotal_verdicts() {
    for p in [PivotalAssignment::LiftId, PivotalAssignment::LiftRho, PivotalAssignment::Zeta] {
        let r = fc::verify_pivotal(&p, 3).unwrap();
        assert!(r.passed(), "{p}: {:?}", r.witness);
        assert_eq!(r.objects, 2 + 4 + 12 + 40);
        assert!(r.lifts_found > 0);
    }
    let r = fc::verify_pivotal(&PivotalAssignment::SignatureOnly, 2).unwrap();
    let w = r.witness.expect("signature-only is not natural");
    assert_eq!(w.check, "naturality");
    assert_ne!(w.left, w.right);
    assert!(matches!(
        fc::verify_pivotal(&PivotalAssignment::Zeta, 4),
        Err(FreecatError::BoundTooLarge { got: 4, max: 3 })
    ));
}

#[test]
fn zeta_is_not_induced() {
    let r = fc::non_inducedness_report(3).unwrap();
    assert!(r.passed());
    assert_eq!(r.picard.len(), 2);
    assert!(r.induced_constant_on_x);
    assert!(!r.zeta_constant_on_x);
    assert_eq!(r.distinct_verified, 3);
    assert!(!r.signature_only.passed());
}

#[test]
fn pivotal_heap() {
    let seed = [PivotalAssignment::LiftId, PivotalAssignment::LiftRho, PivotalAssignment::Zeta];
    assert!(matches!(fc::piv_heap(&seed, 3), Err(FreecatError::ClosureViolation(_))));
    let closed = fc::heap_closure(&seed, 3).unwrap();
    assert_eq!(closed.len(), 4);
    let hp = fc::piv_heap(&closed, 3).unwrap();
    heap::check_heap(&hp).unwrap();
    for p in 0..4 {
        for q in 0..4 {
            assert_eq!(hp.op(p, p, q), q);
            assert_eq!(hp.op(q, p, p), q);
        }
    }
    let fourth = &closed[3];
    assert!(fc::verify_pivotal(fourth, 3).unwrap().passed(), "{fourth}");
}

#[test]
fn relations_hold() {
    let rels = fc::relations();
    assert!(rels.len() >= 18);
    for r in rels {
        assert!(r.holds, "{}", r.name);
    }
}

#[test]
fn hand_computed_compositions() {
    let g = fc::generators();
    // a closed loop from ev ∘ coev
    assert_eq!(c(&g.ev, &g.coev).loops(), (1, 0));
    let decorated = fc::compose_all(&[g.ev.clone(), t(&g.rho, &id(1)), g.coev.clone()]).unwrap();
    assert_eq!(decorated.loops(), (0, 1));
    assert_eq!("2>2 (0-2)[0] (1-3)[1]".parse::<Diagram>().unwrap(), t(&id(1), &g.rho));
    assert_eq!("2>2 (0-3)[0] (1-2)[0]".parse::<Diagram>().unwrap(), g.sigma);
    assert_eq!(c(&g.sigma, &t(&g.rho, &id(1))), c(&t(&id(1), &g.rho), &g.sigma));
    assert!("2>1 (0-2)[0]".parse::<Diagram>().is_err());
    assert!("1>1 (0-1)[2]".parse::<Diagram>().is_err());
}

fn arb_diagram(rng: &mut StdRng, n: usize, m: usize) -> Diagram {
    fc::random_diagram(rng, n, m, 2)
}

/// `k` widths of equal parity, each at most `max`.
fn widths(rng: &mut StdRng, k: usize, max: usize) -> Vec<usize> {
    let parity = rng.random_range(0..2);
    (0..k).map(|_| 2 * rng.random_range(0..=(max - parity) / 2) + parity).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn composition_is_associative_and_unital(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = widths(&mut rng, 4, 6);
        let f = arb_diagram(&mut rng, w[0], w[1]);
        let g = arb_diagram(&mut rng, w[1], w[2]);
        let h = arb_diagram(&mut rng, w[2], w[3]);
        prop_assert_eq!(c(&h, &c(&g, &f)), c(&c(&h, &g), &f));
        prop_assert_eq!(c(&f, &id(w[0])), f.clone());
        prop_assert_eq!(c(&id(w[1]), &f), f.clone());
        prop_assert_eq!(f.to_string().parse::<Diagram>().unwrap(), f);
    }

    #[test]
    fn interchange_law(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = widths(&mut rng, 3, 3);
        let v = widths(&mut rng, 3, 3);
        let f1 = arb_diagram(&mut rng, w[0], w[1]);
        let g1 = arb_diagram(&mut rng, w[1], w[2]);
        let f2 = arb_diagram(&mut rng, v[0], v[1]);
        let g2 = arb_diagram(&mut rng, v[1], v[2]);
        prop_assert_eq!(c(&t(&g1, &g2), &t(&f1, &f2)), t(&c(&g1, &f1), &c(&g2, &f2)));
        prop_assert_eq!(t(&t(&f1, &f2), &g1), t(&f1, &t(&f2, &g1)));
    }

    #[test]
    fn duals(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let w = widths(&mut rng, 3, 6);
        let f = arb_diagram(&mut rng, w[0], w[1]);
        let g = arb_diagram(&mut rng, w[1], w[2]);
        prop_assert_eq!(fc::dual(&fc::dual(&f)), f.clone());
        prop_assert_eq!(fc::dual(&f), fc::dual_via_snakes(&f));
        prop_assert_eq!(fc::dual(&c(&g, &f)), c(&fc::dual(&f), &fc::dual(&g)));
        prop_assert_eq!(fc::flip(&fc::flip(&f)), f.clone());
        prop_assert_eq!(fc::flip(&c(&g, &f)), c(&fc::flip(&f), &fc::flip(&g)));
    }
}
