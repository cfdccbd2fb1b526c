//! Random game generators shared by the integration suites.

#![allow(dead_code)]

use coopgap::game_core::{mobius_inverse, MobiusVector};
use coopgap::rational::{int, ratio};
use coopgap::{Coalition, PlayerCentered, Rational, TUGame};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational `p/q` with `lo ≤ p ≤ hi` and `q ∈ {1, 2, 3}`.
pub fn small(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    ratio(rng.gen_range(lo..=hi), rng.gen_range(1..=3))
}

/// Nonnegative mass that is zero about a third of the time.
fn mass(rng: &mut impl Rng) -> Rational {
    if rng.gen_bool(0.3) {
        int(0)
    } else {
        small(rng, 0, 4)
    }
}

pub fn random_game(rng: &mut impl Rng, n: usize) -> TUGame {
    TUGame::from_fn(n, |_| small(rng, -6, 6)).unwrap()
}

pub fn random_positive_game(rng: &mut impl Rng, n: usize) -> TUGame {
    mobius_inverse(&MobiusVector::from_fn(n, |s| if s.is_empty() { int(0) } else { mass(rng) }).unwrap())
}

/// Positive plus an arbitrary additive game: convex, usually not positive.
pub fn random_convex_game(rng: &mut impl Rng, n: usize) -> TUGame {
    let shift: Vec<Rational> = (0..n).map(|_| small(rng, -4, 4)).collect();
    let base = random_positive_game(rng, n);
    TUGame::from_fn(n, |s| {
        base.value(s) + s.players().map(|j| &shift[j]).sum::<Rational>()
    })
    .unwrap()
}

/// An `i`-centered game with nonnegative partial Möbius masses; with
/// `zero_center` the center's own worth is zero.
pub fn random_positive_pc(rng: &mut impl Rng, n: usize, center: usize, zero_center: bool) -> PlayerCentered {
    let masses: Vec<Rational> = (0..1usize << n).map(|_| mass(rng)).collect();
    PlayerCentered::from_fn(n, center, |t| {
        t.without(center)
            .subsets()
            .filter(|r| !(zero_center && r.is_empty()))
            .map(|r| masses[r.index()].clone())
            .sum()
    })
    .unwrap()
}

/// An `i`-centered game increasing along `K` with `v(i) ≥ 0`.
pub fn random_monotone_pc(rng: &mut impl Rng, n: usize, center: usize) -> PlayerCentered {
    let mut values = vec![int(0); 1 << n];
    let ci = Coalition::singleton(center);
    values[ci.index()] = small(rng, 0, 2);
    let mut order: Vec<Coalition> = Coalition::all_nonempty(n)
        .filter(|s| s.contains(center) && *s != ci)
        .collect();
    order.sort_by_key(|s| s.size());
    for t in order {
        let below = t
            .without(center)
            .players()
            .map(|j| values[t.without(j).index()].clone())
            .max()
            .unwrap();
        values[t.index()] = below
            + if rng.gen_bool(0.3) {
                int(0)
            } else {
                small(rng, 0, 3)
            };
    }
    PlayerCentered::from_fn(n, center, |t| values[t.index()].clone()).unwrap()
}

/// An arbitrary `i`-centered game.
pub fn random_pc(rng: &mut impl Rng, n: usize, center: usize) -> PlayerCentered {
    PlayerCentered::from_fn(n, center, |_| small(rng, -3, 6)).unwrap()
}

pub fn shuffled<T: Clone>(rng: &mut impl Rng, items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}

/// Shapley value by averaging marginal vectors over every ordering.
pub fn shapley_by_orderings(game: &TUGame) -> Vec<Rational> {
    fn visit(game: &TUGame, order: &mut Vec<usize>, left: Coalition, acc: &mut [Rational], count: &mut u64) {
        if left.is_empty() {
            let mut s = Coalition::EMPTY;
            for &j in order.iter() {
                acc[j] += game.value(s.with(j)) - game.value(s);
                s = s.with(j);
            }
            *count += 1;
            return;
        }
        for j in left.players() {
            order.push(j);
            visit(game, order, left.without(j), acc, count);
            order.pop();
        }
    }
    let n = game.n();
    let mut acc = vec![int(0); n];
    let mut count = 0u64;
    visit(game, &mut Vec::new(), Coalition::grand(n), &mut acc, &mut count);
    acc.into_iter().map(|x| x / int(count as i64)).collect()
}

/// Convexity by testing `v(S) + v(T) ≤ v(S∪T) + v(S∩T)` on every pair.
pub fn convex_all_pairs(game: &TUGame) -> bool {
    let n = game.n();
    Coalition::all(n).all(|s| {
        Coalition::all(n)
            .all(|t| game.value(s) + game.value(t) <= game.value(s.union(t)) + game.value(s.intersection(t)))
    })
}

/// The G3 fixture: `n = 3`, center `0`, `v(0) = 0`, `v(01) = v(02) = 1`,
/// `v(012) = 3`.
pub fn g3() -> PlayerCentered {
    PlayerCentered::from_fn(3, 0, |s| match s.mask() {
        0b001 => int(0),
        0b011 | 0b101 => int(1),
        _ => int(3),
    })
    .unwrap()
}
