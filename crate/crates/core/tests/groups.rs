//! Structural facts about the monomial group family.

use cohomcheck_core::catalog::Catalog;
use cohomcheck_core::error::Error;
use cohomcheck_core::group::FiniteGroup;
use cohomcheck_core::monomial::MonomialElement;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn orders_p3() {
    let c = Catalog::new(3).unwrap();
    assert_eq!(c.pplus.order(), 27);
    assert_eq!(c.a2.order(), 9);
    assert_eq!(c.h2.order(), 81);
    assert_eq!(c.pi_h2.order(), 27);
    assert_eq!(c.sigma1_cyclic.order(), 9);
    assert_eq!(c.pi_sigma1.order(), 3);
    assert_eq!(c.beta_xi.order(), 9);
    assert_eq!(c.pi_beta.order(), 3);

    let two = c.two_factor(true).unwrap();
    assert_eq!(two.pre_h.as_ref().unwrap().order(), 2187); // 3^7
    assert_eq!(two.h.order(), 729); // 3^6 = p^{p+3}
    assert_eq!(two.a3.order(), 27);
    assert_eq!(two.a3p.order(), 27);
    assert_eq!(two.pi_h.order(), 243);
    assert_eq!(two.a2_x_pih2.order(), 243);
    assert_eq!(two.delta_a2_in_h.order(), 9);
}

#[test]
fn orders_p5_one_factor() {
    let c = Catalog::new(5).unwrap();
    assert_eq!(c.pplus.order(), 125);
    assert_eq!(c.h2.order(), 5usize.pow(6)); // p^{p+1}
    assert_eq!(c.pi_h2.order(), 5usize.pow(5));
}

#[test]
fn pi_h_is_product_p3() {
    let c = Catalog::new(3).unwrap();
    let two = c.two_factor(false).unwrap();
    assert!(two.pi_h_iso.is_bijective());
    assert_eq!(two.pi_h.order(), c.a2.order() * c.pi_h2.order());
}

#[test]
fn invariants_p3() {
    let c = Catalog::new(3).unwrap();
    let inv = c.pplus.invariants();
    assert_eq!(inv.order, 27);
    assert_eq!(inv.exponent, 3);
    assert_eq!(inv.center_order, 3);
    assert_eq!(inv.abelianization, vec![3, 3]);

    let inv = c.pi_h2.invariants();
    assert_eq!(inv.abelianization, vec![3, 3]);

    let two = c.two_factor(false).unwrap();
    let inv3 = two.a3.invariants();
    assert_eq!(inv3.order, 27);
    assert_eq!(inv3.exponent, 3);
    assert_eq!(inv3.commutator_order, 1);
    assert_eq!(inv3.abelianization, vec![3, 3, 3]);
    let inv3p = two.a3p.invariants();
    assert_eq!(inv3p.abelianization, vec![3, 3, 3]);
}

#[test]
fn quotient_by_trivial_subgroup() {
    let c = Catalog::new(3).unwrap();
    let (q, proj) = c
        .pplus
        .central_quotient(&MonomialElement::identity(3))
        .unwrap();
    assert_eq!(q.order(), c.pplus.order());
    assert!(proj.is_bijective());
}

#[test]
fn non_central_quotient_rejected() {
    let c = Catalog::new(3).unwrap();
    // alpha is not central in p_+^{1+2}
    match c.pplus.central_quotient(&c.g1_alpha) {
        Err(Error::NonCentral { .. }) => {}
        other => panic!("expected NonCentral, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn cap_exceeded_is_reported() {
    let c = Catalog::new(3);
    assert!(c.is_ok());
    let sg = cohomcheck_core::monomial::standard_generators(3).unwrap();
    let gens = [
        cohomcheck_core::monomial::gamma1(3, sg.beta),
        cohomcheck_core::monomial::gamma1(3, sg.sigma[0]),
    ];
    match FiniteGroup::generate(3, &gens, 10) {
        Err(Error::CapExceeded { cap }) => assert_eq!(cap, 10),
        _ => panic!("expected cap error"),
    }
}

#[test]
fn associativity_random_triples() {
    let c = Catalog::new(3).unwrap();
    let two = c.two_factor(false).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for g in [&c.pplus, &c.h2, &c.pi_h2, &two.h, &two.a3] {
        let n = g.order() as u32;
        for _ in 0..10_000 {
            let (a, b, cc) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            assert_eq!(g.mul_ids(g.mul_ids(a, b), cc), g.mul_ids(a, g.mul_ids(b, cc)));
        }
    }
}

#[test]
fn hom_property_random_pairs() {
    let c = Catalog::new(3).unwrap();
    let two = c.two_factor(false).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for h in [&c.pi_h2_proj, &two.g_up, &two.gp_up, &two.pi_h_iso] {
        let n = h.source.order() as u32;
        let map = h.image_map();
        for _ in 0..10_000 {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let ab = h.source.mul_ids(a, b);
            assert_eq!(
                map[ab as usize],
                h.target.mul_ids(map[a as usize], map[b as usize])
            );
        }
    }
}

#[test]
fn bad_hom_gives_witness() {
    let c = Catalog::new(3).unwrap();
    // alpha |-> beta-class, beta |-> alpha-class, xi |-> identity does not
    // extend (commutator relation breaks)
    let id = MonomialElement::identity(3);
    let r = cohomcheck_core::hom::Homomorphism::new(
        c.pplus.clone(),
        c.a2.clone(),
        vec![c.g1_alpha, c.g1_beta, c.g1_alpha],
    );
    // that one is fine (xi can go anywhere central of order dividing 3 only if
    // relations hold; xi -> alpha violates [alpha,beta] = xi)
    assert!(matches!(r, Err(Error::HomRelationViolated { .. })));
    let ok = cohomcheck_core::hom::Homomorphism::new(
        c.pplus.clone(),
        c.a2.clone(),
        vec![c.g1_alpha, c.g1_beta, id],
    );
    assert!(ok.is_ok());
}

#[test]
fn section2_diagram_commutes() {
    let c = Catalog::new(3).unwrap();
    let two = c.two_factor(false).unwrap();
    let phi = c.phi(&two).unwrap();
    let g_low = c.g_low(&two).unwrap();
    let gp_low = c.gp_low(&two).unwrap();
    let phi_p = c.phi_prime(&two).unwrap();
    // pi o g_up = g_low o phi  and  pi o gp_up = gp_low o phi'
    let pi_after_g = two.pi_h_iso.compose(&two.pi_h_proj.compose(&two.g_up).unwrap()).unwrap();
    let g_after_phi = g_low.compose(&phi).unwrap();
    assert!(pi_after_g.equals(&g_after_phi));
    let pi_after_gp = two
        .pi_h_iso
        .compose(&two.pi_h_proj.compose(&two.gp_up).unwrap())
        .unwrap();
    let gp_after_phip = gp_low.compose(&phi_p).unwrap();
    assert!(pi_after_gp.equals(&gp_after_phip));
}

#[test]
fn identity_hom_composition() {
    let c = Catalog::new(3).unwrap();
    let ident = cohomcheck_core::hom::Homomorphism::new(
        c.a2.clone(),
        c.a2.clone(),
        c.a2.gens().to_vec(),
    )
    .unwrap();
    assert!(ident.compose(&ident).unwrap().equals(&ident));
    assert!(ident.is_bijective());
}

#[test]
fn group_json_round_trip() {
    let c = Catalog::new(3).unwrap();
    let two = c.two_factor(false).unwrap();
    for g in [&c.pplus, &c.pi_h2, &two.h, &two.pi_h] {
        let j = g.to_json();
        let s = serde_json::to_string(&j).unwrap();
        let j2: cohomcheck_core::group::GroupJson = serde_json::from_str(&s).unwrap();
        let g2 = FiniteGroup::from_json(&j2, 1_000_000).unwrap();
        assert_eq!(g2.order(), g.order());
        assert_eq!(g2.elements(), g.elements());
    }
}

#[test]
fn conjugacy_classes_partition() {
    let c = Catalog::new(3).unwrap();
    // abelian: all singletons
    let classes = c.a2.conjugacy_classes();
    assert_eq!(classes.len(), 9);
    assert!(classes.iter().all(|cl| cl.size == 1));
    // p_+^{1+2}: class equation sums to 27, center gives singletons
    let classes = c.pplus.conjugacy_classes();
    assert_eq!(classes.iter().map(|cl| cl.size).sum::<usize>(), 27);
    let singletons = classes.iter().filter(|cl| cl.size == 1).count();
    assert_eq!(singletons, c.pplus.center_ids().len());
    assert_eq!(classes.len(), 11); // 3 central + 8 classes of size 3
}
