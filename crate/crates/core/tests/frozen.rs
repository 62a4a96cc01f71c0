//! Values produced by the brute-force oracles and frozen here.

use dessins::bc::{mgt_group, QZElem};
use dessins::double::{system_maps, Cochain, CocycleVariant};
use dessins::enumerate::{count_single_cycle_belyi, enumerate_connected, enumerate_dessins, enumerate_plane_trees};
use dessins::hopf::{Convention, HopfAlgebra};
use dessins::oracle::{burnside_class_count, orbit_class_count};
use dessins::poly::tutte;
use dessins::qsm::gibbs::{gibbs, GibbsMode, PuiseuxPoly};
use dessins::qsm::partition::{closed_form, convergence_threshold, ClosedSystem};
use dessins::qsm::theta::{census, ThetaField};
use dessins::Dessin;

#[test]
fn dessin_class_counts() {
    let classes = [1, 4, 11, 43, 161];
    let connected = [1, 3, 7, 26, 97];
    let trees = [1, 2, 3, 6, 10];
    for d in 1..=5 {
        assert_eq!(enumerate_dessins(d, None).unwrap().len(), classes[d - 1]);
        assert_eq!(burnside_class_count(d), classes[d - 1] as u128);
        assert_eq!(enumerate_connected(d).unwrap().len(), connected[d - 1]);
        assert_eq!(enumerate_plane_trees(d).unwrap().len(), trees[d - 1]);
    }
    assert_eq!(orbit_class_count(4), 43);
}

#[test]
fn single_cycle_counts() {
    let got: Vec<u64> = (3..=12).map(|d| count_single_cycle_belyi(d).unwrap()).collect();
    assert_eq!(got, vec![1, 2, 3, 4, 6, 7, 9, 11, 13, 15]);
}

#[test]
fn coassociativity_census_at_four_edges() {
    let c4 = enumerate_connected(4).unwrap();
    let mut reduced = HopfAlgebra::new(Convention::Reduced);
    let mut literal = HopfAlgebra::new(Convention::Literal);
    let fail = |alg: &mut HopfAlgebra| c4.iter().filter(|x| !alg.is_coassociative_on(x).unwrap()).count();
    assert_eq!(fail(&mut reduced), 17);
    assert_eq!(fail(&mut literal), 23);
    assert!(reduced.is_coassociative_on(&Dessin::bouquet(4)).unwrap());
    assert!(!reduced.is_coassociative_on(&Dessin::star(4)).unwrap());
    for d in 1..=3 {
        for x in enumerate_connected(d).unwrap() {
            assert!(reduced.is_coassociative_on(&x).unwrap());
        }
    }
}

#[test]
fn tutte_examples() {
    let two = Dessin::parse_text("d=2; s0=(0 1); s1=(0 1)").unwrap();
    assert_eq!(tutte(&two).unwrap().to_string(), "x + y");
    assert_eq!(tutte(&Dessin::single_edge()).unwrap().to_string(), "x");
    assert_eq!(tutte(&Dessin::star(2)).unwrap().to_string(), "x^2");
}

#[test]
fn mgt_orders() {
    let orders: Vec<usize> = (1..=12).map(|n| mgt_group(n).unwrap().order()).collect();
    assert_eq!(orders, vec![1, 2, 6, 8, 20, 12, 42, 32, 54, 40, 110, 48]);
}

#[test]
fn printed_ihara_formula_is_not_an_involution() {
    let x = QZElem::new(1, 4).unwrap();
    assert_eq!(x.ihara(), QZElem::zero());
    assert_eq!(x.ihara().ihara(), QZElem::zero());
}

#[test]
fn cocycle_variant_failures() {
    let literal: Vec<Vec<usize>> = (2..=6)
        .map(|m| (0..m).map(|a| Cochain::standard(m, a, CocycleVariant::Literal).unwrap().cocycle_failures().0).collect())
        .collect();
    assert_eq!(
        literal,
        vec![vec![0, 0], vec![0, 0, 0], vec![0, 80, 48, 80], vec![0, 256, 256, 256, 256], vec![0, 540, 432, 324, 432, 540]]
    );
    let printed: Vec<Vec<usize>> = (2..=6)
        .map(|m| (0..m).map(|a| Cochain::standard(m, a, CocycleVariant::Floor).unwrap().printed_identity_failures().0).collect())
        .collect();
    assert_eq!(
        printed,
        vec![vec![0, 2], vec![0, 18, 18], vec![0, 72, 48, 72], vec![0, 200, 200, 200, 200], vec![0, 450, 360, 270, 360, 450]]
    );
}

#[test]
fn level_system_transport() {
    for (n, m) in [(2, 2), (2, 3), (3, 2), (2, 6)] {
        let r = system_maps(n, m).unwrap();
        assert!(r.r_transport);
        assert!(!r.r_transport_legwise);
        assert_eq!(r.pullback_failures, 0);
        assert_eq!(r.pullback_matches[0], Some(0));
        assert!(r.pullback_matches[1..].iter().all(Option::is_none));
    }
    let r = system_maps(1, 4).unwrap();
    assert!(r.r_transport_legwise);
    assert_eq!(r.pullback_matches, vec![Some(0), Some(1), Some(2), Some(3)]);
}

#[test]
fn partition_constants() {
    assert!((closed_form(ClosedSystem::S, 2.0).unwrap() - 11.265513321691).abs() < 1e-9);
    assert!((closed_form(ClosedSystem::Upsilon, 3.0).unwrap() - 6.900219589268).abs() < 1e-9);
    assert!((convergence_threshold(ClosedSystem::S) - 1.7286).abs() < 1e-3);
    assert!((convergence_threshold(ClosedSystem::Upsilon) - 2.26526).abs() < 1e-4);
}

#[test]
fn omega_theta_census() {
    let r = census(&ThetaField::default(), 4, 3, 3).unwrap();
    assert_eq!(r.labels, 120);
    assert_eq!(r.max_group(), 1);
    assert_eq!(r.predicted_not_equal.len(), 27);
}

#[test]
fn gibbs_q_closed_form_gap() {
    let h: PuiseuxPoly = "t + t^2".parse().unwrap();
    let r = gibbs(GibbsMode::Q, &h, 0.3, 2.5, 1e-10, 100_000).unwrap();
    assert!(r.direct.tail_bound < 1e-3);
    assert!((r.gap() - 0.2295).abs() < 1e-3);
}
