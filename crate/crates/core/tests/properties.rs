mod common;

use proptest::prelude::*;

use coopgap::approximations::{core_bounds, shapley_interval, shapley_of_beta, tau_interval};
use coopgap::extensions::{
    beta_extension, extendable, superadditive_witness, v0_v1, vsigmax_vertex, BetaProfile, ExtensionSampler,
    SigmaOrder, XVector,
};
use coopgap::game_core::{
    is_convex, is_convex_mobius, is_monotone, is_superadditive, mobius_forward, mobius_inverse,
};
use coopgap::incomplete::{bk2018_feasible, is_convex_pc, is_superadditive_pc};
use coopgap::polyhedra::{
    canonical_ray, contains, exhaustive, maximize, vertex_enumeration, HPolyhedron, LpOutcome,
};
use coopgap::rational::{dot, int};
use coopgap::solutions::{core_hrep, shapley, tau_gap, tau_mobius};
use coopgap::{Coalition, GameClass, Rational, TUGame};

use common::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn game(max_n: usize) -> impl Strategy<Value = TUGame> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(rational(), (1 << n) - 1).prop_map(move |v| TUGame::from_values(n, v).unwrap())
    })
}

/// `(n, center, seed)` for seeded generators.
fn setup(ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (usize, usize, u64)> {
    ns.prop_flat_map(|n| (Just(n), 0..n, any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_roundtrip(g in game(6)) {
        prop_assert_eq!(mobius_inverse(&mobius_forward(&g)), g);
    }

    #[test]
    fn shapley_efficient_and_matches_orderings(g in game(5)) {
        let phi = shapley(&g);
        prop_assert_eq!(phi.iter().sum::<Rational>(), g.grand().clone());
        prop_assert_eq!(phi, shapley_by_orderings(&g));
    }

    #[test]
    fn shapley_is_linear(a in game(4), b in rational(), seed in any::<u64>()) {
        let other = random_game(&mut rng(seed), a.n());
        let combined = a.scale(&b).add(&other);
        let expected: Vec<Rational> = shapley(&a).iter().zip(shapley(&other)).map(|(x, y)| &b * x + y).collect();
        prop_assert_eq!(shapley(&combined), expected);
    }

    #[test]
    fn convexity_tests_agree(g in game(4), seed in any::<u64>()) {
        let c = random_convex_game(&mut rng(seed), g.n());
        for w in [&g, &c] {
            let direct = convex_all_pairs(w);
            prop_assert_eq!(is_convex(w), direct);
            prop_assert_eq!(is_convex_mobius(&mobius_forward(w)), direct);
        }
        prop_assert!(is_convex(&c));
    }

    #[test]
    fn monotone_covering_pairs_suffice(g in game(4)) {
        let n = g.n();
        let direct = Coalition::all(n).all(|s| Coalition::all(n).all(|t| !s.is_subset_of(t) || g.value(s) <= g.value(t)));
        prop_assert_eq!(is_monotone(&g), direct);
    }

    #[test]
    fn tau_forms_agree_on_convex_games(seed in any::<u64>(), n in 1usize..=5) {
        let g = random_convex_game(&mut rng(seed), n);
        prop_assert_eq!(tau_gap(&g), tau_mobius(&g));
    }

    #[test]
    fn beta_extensions_stay_inside_bounds((n, center, seed) in setup(2..=4)) {
        let mut r = rng(seed);
        let g = random_positive_pc(&mut r, n, center, false);
        let beta = g.unknown().into_iter().map(|s| (s, small(&mut r, 0, 3) / int(3))).collect();
        let beta = BetaProfile::new(&g, beta).unwrap();
        let w = beta_extension(&g, &beta).unwrap();
        prop_assert!(g.is_extended_by(&w));
        prop_assert!(GameClass::Positive.contains(&w));
        let phi = shapley(&w);
        prop_assert_eq!(&shapley_of_beta(&g, &beta).unwrap(), &phi);
        for (k, x) in phi.iter().enumerate() {
            let (iv, _) = shapley_interval(&g, GameClass::Positive, k).unwrap();
            prop_assert!(iv.contains(x));
        }
        let b = core_bounds(&g, GameClass::Positive).unwrap();
        let cw = core_hrep(&w);
        prop_assert!(contains(&b.outer, &cw));
        prop_assert!(contains(&cw, b.inner.as_ref().unwrap()));
    }

    #[test]
    fn monotone_vertices_stay_inside_bounds((n, center, seed) in setup(2..=4), code in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_monotone_pc(&mut r, n, center);
        let sigma = SigmaOrder::new(&g, shuffled(&mut r, &g.unknown())).unwrap();
        let w = vsigmax_vertex(&g, &sigma, &XVector::from_code(&g, code)).unwrap();
        prop_assert!(g.is_extended_by(&w));
        prop_assert!(is_monotone(&w));
        let phi = shapley(&w);
        for (k, x) in phi.iter().enumerate() {
            let (iv, _) = shapley_interval(&g, GameClass::Monotone, k).unwrap();
            prop_assert!(iv.contains(x), "player {}: {} not in {:?}", k, x, iv);
        }
    }

    #[test]
    fn zero_normalized_tau_inside_bounds((n, center, seed) in setup(2..=4), index in 0u64..1000) {
        let g = random_positive_pc(&mut rng(seed), n, center, true);
        let w = ExtensionSampler::new(&g, GameClass::ZeroNormalizedPositive).unwrap().sample(seed, index);
        prop_assert!(GameClass::ZeroNormalizedPositive.contains(&w));
        let tau = tau_gap(&w);
        if tau.iter().all(|x| *x == int(0)) {
            // the all-zero game: every interval is the point 0
            prop_assert_eq!(w, TUGame::zero(n).unwrap());
        }
        for (k, x) in tau.iter().enumerate() {
            let (iv, _) = tau_interval(&g, k).unwrap();
            prop_assert!(iv.contains(x), "player {}: {} not in {:?}", k, x, iv);
        }
    }

    #[test]
    fn superadditive_witness_is_an_extension((n, center, seed) in setup(1..=4)) {
        let g = random_pc(&mut rng(seed), n, center);
        let w = superadditive_witness(&g);
        prop_assert!(g.is_extended_by(&w));
        prop_assert_eq!(is_superadditive(&w), is_superadditive_pc(&g));
        prop_assert_eq!(extendable(&g, GameClass::Superadditive), is_superadditive_pc(&g));
    }

    #[test]
    fn convex_extendability_agrees_with_lp((n, center, seed) in setup(1..=4)) {
        let g = random_pc(&mut rng(seed), n, center);
        prop_assert_eq!(bk2018_feasible(g.base()), is_convex_pc(&g));
        prop_assert_eq!(extendable(&g, GameClass::Convex), is_convex_pc(&g));
    }

    #[test]
    fn v1_below_every_positive_extension((n, center, seed) in setup(2..=4), index in 0u64..1000) {
        let g = random_positive_pc(&mut rng(seed), n, center, false);
        let (v0, v1) = v0_v1(&g);
        let w = ExtensionSampler::new(&g, GameClass::Positive).unwrap().sample(seed, index);
        for s in g.unknown() {
            prop_assert!(v1.value(s) <= w.value(s) && w.value(s) <= v0.value(s));
        }
    }

    #[test]
    fn canonical_ray_ignores_positive_scaling(v in prop::collection::vec(rational(), 1..6), c in 1i64..20) {
        let scaled: Vec<Rational> = v.iter().map(|x| x * int(c)).collect();
        prop_assert_eq!(canonical_ray(&v), canonical_ray(&scaled));
        prop_assert_eq!(canonical_ray(&canonical_ray(&v)), canonical_ray(&v));
    }

    #[test]
    fn lp_optimum_dominates_feasible_points(
        rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), 0i64..=6), 1..6),
        obj in prop::collection::vec(-3i64..=3, 3),
    ) {
        let mut p = HPolyhedron::new(3);
        for k in 0..3 {
            let mut e = vec![int(0); 3];
            e[k] = int(1);
            p.add_inequality(e.clone(), int(4));
            e[k] = int(-1);
            p.add_inequality(e, int(4));
        }
        for (a, b) in &rows {
            p.add_inequality(a.iter().map(|&x| int(x)).collect(), int(*b));
        }
        let c: Vec<Rational> = obj.iter().map(|&x| int(x)).collect();
        // the origin is feasible since every right-hand side is nonnegative
        match maximize(&p, &c) {
            LpOutcome::Optimal { value, point } => {
                prop_assert!(p.satisfies(&point));
                prop_assert_eq!(dot(&c, &point), value.clone());
                for v in vertex_enumeration(&p).unwrap().vertices {
                    prop_assert!(dot(&c, &v) <= value);
                }
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn double_description_matches_exhaustive(
        rows in prop::collection::vec((prop::collection::vec(-2i64..=2, 3), -1i64..=3), 2..7),
    ) {
        let mut p = HPolyhedron::new(3);
        for k in 0..3 {
            let mut e = vec![int(0); 3];
            e[k] = int(-1);
            p.add_inequality(e, int(2));
        }
        for (a, b) in &rows {
            p.add_inequality(a.iter().map(|&x| int(x)).collect(), int(*b));
        }
        prop_assert_eq!(vertex_enumeration(&p).unwrap(), exhaustive::vertex_enumeration(&p).unwrap());
    }
}
