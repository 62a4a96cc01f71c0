use dessins::bc::{bc_rho, bc_sigma, level_sigma, level_theta, GroupAlgElem};
use dessins::belyi::{mat_hom, mat_mul, LiftingScheme, MatMode, SemigroupWord};
use dessins::double::{Cochain, CocycleVariant};
use dessins::hopf::{grade, Convention, Grading, HopfAlgebra, HopfElement};
use dessins::oracle::list_ordered_factorizations;
use dessins::perm;
use dessins::poly::{brt, tutte, tutte_deletion_contraction};
use dessins::qsm::partition::{omega_distinct, ordered_factorizations};
use dessins::qsm::series::{polylog, zeta};
use dessins::qsm::theta::CubicQ;
use dessins::rota_baxter::{check_rb_relation, PiContext, PolarContext};
use dessins::{Dessin, Q};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;

fn arb_perm(d: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..d).collect::<Vec<_>>()).prop_shuffle()
}

fn arb_dessin(max_d: usize) -> impl Strategy<Value = Dessin> {
    (1..=max_d).prop_flat_map(|d| (arb_perm(d), arb_perm(d))).prop_map(|(a, b)| Dessin::from_permutations(a, b).unwrap())
}

fn arb_connected(max_d: usize) -> impl Strategy<Value = Dessin> {
    arb_dessin(max_d).prop_filter("connected", Dessin::is_connected)
}

fn arb_fixing_word() -> impl Strategy<Value = SemigroupWord> {
    (prop::collection::vec(2i64..=4, 0..=2), any::<bool>()).prop_map(|(fs, wrap)| {
        let factors: Vec<Q> = fs.iter().map(|&n| Q::from_integer(BigInt::from(n))).collect();
        let wrap = wrap && !factors.is_empty();
        SemigroupWord { eps0: wrap, factors, eps1: wrap }
    })
}

fn arb_cubic() -> impl Strategy<Value = CubicQ> {
    let q = || (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Q::new(BigInt::from(a), BigInt::from(b)));
    (q(), q(), q()).prop_map(|(a, b, c)| CubicQ::new(2, a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_a_class_invariant(x in arb_dessin(6), p in arb_perm(6)) {
        let p: Vec<usize> = p.into_iter().filter(|&i| i < x.degree()).collect();
        let y = x.relabel(&p);
        prop_assert_eq!(y.canonical_form(), x.canonical_form());
        prop_assert_eq!(x.canonical_form().canonical_form(), x.canonical_form());
        prop_assert!(x.is_isomorphic(&y));
    }

    #[test]
    fn text_and_json_round_trip(x in arb_dessin(7)) {
        prop_assert_eq!(Dessin::parse_text(&x.to_text()).unwrap(), x.clone());
        prop_assert_eq!(Dessin::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn euler_characteristic(x in arb_dessin(7)) {
        let chi = x.num_vertices() as i64 + x.num_faces() as i64 - x.degree() as i64;
        prop_assert_eq!(chi, 2 * x.num_components() as i64 - 2 * x.genus() as i64);
        let inf = x.sigma_inf();
        let prod = perm::compose(&perm::compose(x.sigma0(), x.sigma1()), &inf);
        prop_assert!(perm::is_identity(&prod));
        prop_assert_eq!(perm::cycle_count(&inf), x.num_faces());
    }

    #[test]
    fn colour_swap_is_an_involution(x in arb_dessin(6)) {
        prop_assert_eq!(x.color_swap().color_swap(), x.clone());
        prop_assert_eq!(x.color_swap().num_black(), x.num_white());
    }

    #[test]
    fn tutte_routes_agree(x in arb_dessin(5)) {
        let t = tutte(&x).unwrap();
        prop_assert_eq!(&t, &tutte_deletion_contraction(&x));
        let b = brt(&x).unwrap();
        prop_assert_eq!(b.at_z_one(), t);
        prop_assert_eq!(b.degree_in(2) as usize, 2 * x.genus());
    }

    #[test]
    fn counit_and_grading(x in arb_connected(4)) {
        let mut alg = HopfAlgebra::new(Convention::Reduced);
        prop_assert!(alg.counit_laws_hold(&HopfElement::dessin(&x)).unwrap());
        for rec in alg.quotient_records(&x).unwrap() {
            for g in [Grading::B1, Grading::Edges, Grading::Vertices] {
                prop_assert_eq!(grade(&rec.sub, g) + grade(&rec.quotient, g), grade(&x, g));
            }
        }
    }

    #[test]
    fn rota_baxter_relation(seed in any::<u64>()) {
        prop_assert_eq!(check_rb_relation(&PolarContext::new().unwrap(), 10, seed), 0);
        prop_assert_eq!(check_rb_relation(&PiContext::new().unwrap(), 10, seed), 0);
    }

    #[test]
    fn mat2_is_multiplicative(a in arb_fixing_word(), b in arb_fixing_word()) {
        let s1 = a.to_scheme().unwrap();
        let s2 = b.to_scheme().unwrap();
        prop_assume!(s1.fixes_marked_points() && s2.fixes_marked_points());
        let c = LiftingScheme::compose(&s1, &s2);
        for mode in [MatMode::Mat2, MatMode::Mat2N, MatMode::Mat3] {
            prop_assert_eq!(mat_hom(&c.ram_tuple(), mode), mat_mul(&mat_hom(&s1.ram_tuple(), mode), &mat_hom(&s2.ram_tuple(), mode)));
        }
    }

    #[test]
    fn lifting_multiplies_edges(w in arb_fixing_word(), x in arb_dessin(4)) {
        let s = w.to_scheme().unwrap();
        let y = s.apply(&x).unwrap();
        prop_assert_eq!(y.degree(), s.sheets() * x.degree());
        prop_assert_eq!(BigInt::from(s.sheets()), w.degree().to_integer());
    }

    #[test]
    fn ordered_factorizations_match_listing(n in 1u64..=400) {
        prop_assert_eq!(ordered_factorizations(n) as usize, list_ordered_factorizations(n).len().max(1));
        let distinct = {
            let mut m = n;
            let mut c = 0;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 { c += 1; while m % p == 0 { m /= p; } }
                p += 1;
            }
            if m > 1 { c += 1; }
            c
        };
        prop_assert_eq!(omega_distinct(n), distinct);
    }

    #[test]
    fn zeta_and_polylog_bounds(beta in 1.5f64..8.0, z in 0.05f64..0.95) {
        let a = zeta(beta, 1e-10).unwrap();
        let b = zeta(beta, 1e-13).unwrap();
        prop_assert!((a.value - b.value).abs() <= a.tail_bound + b.tail_bound);
        let l = polylog(beta, z, 1e-12).unwrap();
        prop_assert!(l.value > z && l.value < z / (1.0 - z));
        prop_assert!(l.value < a.value);
    }

    #[test]
    fn sigma_after_rho_is_multiplication(seed in any::<u64>(), n in 1u64..=12) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = GroupAlgElem::random(&mut rng, 15, 5);
        let lhs = bc_sigma(n, &bc_rho(n, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, x.scale(&Q::from_integer(BigInt::from(n))));
    }

    #[test]
    fn level_involution_tower(n in 1u64..=30, m in 1u64..=4, k in 0u64..120) {
        let k = k % (n * m);
        prop_assert_eq!(level_theta(n * m, level_theta(n * m, k)), k);
        prop_assert_eq!(level_sigma(n, level_theta(n * m, k)), level_theta(n, level_sigma(n, k)));
    }

    #[test]
    fn standard_cocycles_and_pullbacks(m in 2usize..=6, a in 0usize..6, n in 1usize..=2) {
        let a = a % m;
        let w = Cochain::standard(m, a, CocycleVariant::Floor).unwrap();
        prop_assert_eq!(w.cocycle_failures().0, 0);
        prop_assert!(w.is_normalized());
        prop_assert_eq!(w.pullback(n).cocycle_failures().0, 0);
    }

    #[test]
    fn cubic_field_axioms(x in arb_cubic(), y in arb_cubic(), z in arb_cubic()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        prop_assert!(((&x * &y).to_f64() - x.to_f64() * y.to_f64()).abs() < 1e-9 * (1.0 + (x.to_f64() * y.to_f64()).abs()));
    }
}
