//! Closed forms against polyhedral and brute-force routes.

mod common;

use std::collections::BTreeSet;

use coopgap::approximations::{monotone_shapley_upper, shapley_interval, tau_interval};
use coopgap::extensions::{
    enumerate_monotone_vertices, enumerate_positive_vertices, monotone_ceiling, ray_es0, ray_neg_unanimity,
    zero_normalized_top,
};
use coopgap::polyhedra::{
    build_extension_polytope, coordinates_of, embed_reduced, exhaustive, extreme_ray_enumeration,
    game_from_coordinates, reduce_recession_cone, remove_redundant, vertex_enumeration,
};
use coopgap::rational::min_max;
use coopgap::solutions::{shapley, tau_convex};
use coopgap::{GameClass, Rational, TUGame};

use common::*;

fn polytope_vertices(g: &coopgap::PlayerCentered, cls: GameClass) -> Vec<TUGame> {
    let vr = vertex_enumeration(&build_extension_polytope(g, cls)).unwrap();
    assert!(vr.rays.is_empty(), "{cls} extension set should be bounded");
    vr.vertices
        .iter()
        .map(|x| game_from_coordinates(g.n(), x).unwrap())
        .collect()
}

fn coordinate_set(games: &[TUGame]) -> BTreeSet<Vec<Rational>> {
    games.iter().map(coordinates_of).collect()
}

#[test]
fn shapley_intervals_are_vertex_extremes() {
    let mut r = rng(1);
    for trial in 0..12 {
        let n = 3 + trial % 2;
        let center = trial % n;
        let pos = random_positive_pc(&mut r, n, center, false);
        let mono = random_monotone_pc(&mut r, n, center);
        for (g, cls) in [(&pos, GameClass::Positive), (&mono, GameClass::Monotone)] {
            let values: Vec<Vec<Rational>> = polytope_vertices(g, cls).iter().map(shapley).collect();
            for k in 0..n {
                let (lo, hi) = min_max(values.iter().map(|v| &v[k])).unwrap();
                let (iv, w) = shapley_interval(g, cls, k).unwrap();
                assert_eq!((iv.lo.clone(), iv.hi.clone()), (lo, hi), "{cls}, player {k}");
                assert_eq!(shapley(&w.lo)[k], iv.lo);
                assert_eq!(shapley(&w.hi)[k], iv.hi);
                assert!(cls.contains(&w.lo) && cls.contains(&w.hi));
            }
        }
    }
}

#[test]
fn monotone_upper_closed_form() {
    let mut r = rng(2);
    for _ in 0..10 {
        let g = random_monotone_pc(&mut r, 4, 1);
        for k in [0, 2, 3] {
            let (iv, _) = shapley_interval(&g, GameClass::Monotone, k).unwrap();
            assert_eq!(iv.hi, monotone_shapley_upper(&g, k));
        }
    }
}

#[test]
fn closed_form_vertex_families_match_polytopes() {
    let mut r = rng(3);
    for trial in 0..8 {
        let n = 3 + trial % 2;
        let pos = random_positive_pc(&mut r, n, trial % n, false);
        assert_eq!(
            coordinate_set(&enumerate_positive_vertices(&pos).unwrap()),
            coordinate_set(&polytope_vertices(&pos, GameClass::Positive))
        );
        let mono = random_monotone_pc(&mut r, n, trial % n);
        assert_eq!(
            coordinate_set(&enumerate_monotone_vertices(&mono).unwrap()),
            coordinate_set(&polytope_vertices(&mono, GameClass::Monotone))
        );
        let ceiling = monotone_ceiling(&mono);
        for w in enumerate_monotone_vertices(&mono).unwrap() {
            assert!(mono.unknown().iter().all(|&s| w.value(s) <= ceiling.value(s)));
        }
    }
}

#[test]
fn double_description_matches_exhaustive_on_extension_sets() {
    let mut r = rng(4);
    for trial in 0..6 {
        let g = if trial % 2 == 0 {
            random_monotone_pc(&mut r, 3, trial % 3)
        } else {
            random_positive_pc(&mut r, 3, trial % 3, false)
        };
        for cls in GameClass::ALL {
            if !coopgap::extensions::extendable(&g, cls) {
                continue;
            }
            let p = build_extension_polytope(&g, cls);
            assert_eq!(
                vertex_enumeration(&p).unwrap(),
                exhaustive::vertex_enumeration(&p).unwrap(),
                "{cls}"
            );
        }
    }
}

#[test]
fn recession_ray_families() {
    for n in 2..=4 {
        for center in 0..n {
            let sup = extreme_ray_enumeration(&remove_redundant(
                &reduce_recession_cone(n, center, GameClass::Superadditive).unwrap(),
            ))
            .unwrap();
            let cvx = extreme_ray_enumeration(&remove_redundant(
                &reduce_recession_cone(n, center, GameClass::Convex).unwrap(),
            ))
            .unwrap();
            let as_games = |rays: &[Vec<Rational>]| -> BTreeSet<Vec<Rational>> {
                rays.iter()
                    .map(|x| {
                        coopgap::polyhedra::canonical_ray(&coordinates_of(
                            &embed_reduced(n, center, x).unwrap(),
                        ))
                    })
                    .collect()
            };
            let sup_games = as_games(&sup);
            let cvx_games = as_games(&cvx);
            for k in (0..n).filter(|&k| k != center) {
                let r = coopgap::polyhedra::canonical_ray(&coordinates_of(
                    &ray_neg_unanimity(n, center, k).unwrap(),
                ));
                assert!(sup_games.contains(&r), "n={n}, center={center}, k={k}");
            }
            for s0 in coopgap::Coalition::all_nonempty(n).filter(|s| !s.contains(center)) {
                let r = coopgap::polyhedra::canonical_ray(&coordinates_of(&ray_es0(n, center, s0).unwrap()));
                assert!(cvx_games.contains(&r), "n={n}, center={center}, S0={s0}");
            }
            assert_eq!((sup.len(), cvx.len()), [(1, 1), (4, 3), (22, 8)][n - 2]);
        }
    }
}

#[test]
fn tau_endpoints_bound_zero_normalized_vertices() {
    let mut r = rng(5);
    for trial in 0..10 {
        let n = 3 + trial % 2;
        let g = random_positive_pc(&mut r, n, trial % n, true);
        let top = zero_normalized_top(&g).unwrap();
        assert!(GameClass::ZeroNormalizedPositive.contains(&top));
        for w in polytope_vertices(&g, GameClass::ZeroNormalizedPositive) {
            let tau = tau_convex(&w).unwrap();
            for (k, x) in tau.iter().enumerate() {
                assert!(tau_interval(&g, k).unwrap().0.contains(x));
            }
        }
    }
}
