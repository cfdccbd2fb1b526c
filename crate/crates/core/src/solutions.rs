//! Core, imputations, Shapley value and τ-value of complete games.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::game_core::{gap_with, is_convex, mobius_forward, upper_vector, Coalition, TUGame};
use crate::polyhedra::{lp_feasible, HPolyhedron};
use crate::rational::Rational;

/// One payoff per player.
pub type PayoffVector = Vec<Rational>;

/// A closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

fn coalition_row(n: usize, s: Coalition, sign: i64) -> Vec<Rational> {
    (0..n)
        .map(|j| {
            if s.contains(j) {
                Rational::from_integer(sign.into())
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// `Σ x = v(N)`.
pub fn is_preimputation(game: &TUGame, x: &[Rational]) -> bool {
    x.len() == game.n() && x.iter().sum::<Rational>() == *game.grand()
}

/// `{x : x(N) = v(N), x(S) ≥ v(S) for every proper nonempty S}`.
pub fn core_hrep(game: &TUGame) -> HPolyhedron {
    let n = game.n();
    let grand = Coalition::grand(n);
    let mut p = HPolyhedron::new(n);
    p.add_equality(coalition_row(n, grand, 1), game.grand().clone());
    for s in Coalition::all_nonempty(n).filter(|&s| s != grand) {
        p.add_inequality(coalition_row(n, s, -1), -game.value(s).clone());
    }
    p
}

pub fn core_nonempty(game: &TUGame) -> bool {
    lp_feasible(&core_hrep(game)).is_some()
}

pub fn core_member(game: &TUGame, x: &[Rational]) -> bool {
    core_hrep(game).satisfies(x)
}

/// `{x : x(N) = v(N), x_i ≥ v(i)}`.
pub fn imputations_hrep(game: &TUGame) -> HPolyhedron {
    let n = game.n();
    let mut p = HPolyhedron::new(n);
    p.add_equality(coalition_row(n, Coalition::grand(n), 1), game.grand().clone());
    for i in 0..n {
        let s = Coalition::singleton(i);
        p.add_inequality(coalition_row(n, s, -1), -game.value(s).clone());
    }
    p
}

/// `γ_s = s!(n−s−1)!/n!` for `s = 0..n`.
pub fn shapley_weights(n: usize) -> Vec<Rational> {
    let fact = |k: usize| -> num_bigint::BigInt { (1..=k).map(num_bigint::BigInt::from).product() };
    (0..n)
        .map(|s| Rational::new(fact(s) * fact(n - s - 1), fact(n)))
        .collect()
}

/// Marginal-contribution form `Σ_{S⊆N∖i} γ_S (v(S∪i) − v(S))`.
pub fn shapley_marginal(game: &TUGame) -> PayoffVector {
    let n = game.n();
    let gamma = shapley_weights(n);
    (0..n)
        .map(|i| {
            Coalition::grand(n)
                .without(i)
                .subsets()
                .map(|s| &gamma[s.size()] * (game.value(s.with(i)) - game.value(s)))
                .sum()
        })
        .collect()
}

/// Möbius form `Σ_{S∋i} m(S)/|S|`.
pub fn shapley_mobius(game: &TUGame) -> PayoffVector {
    let n = game.n();
    let m = mobius_forward(game);
    let mut phi = vec![Rational::zero(); n];
    for (s, x) in m.nonempty() {
        if x.is_zero() {
            continue;
        }
        let share = x / Rational::from_integer((s.size() as i64).into());
        for j in s.players() {
            phi[j] += &share;
        }
    }
    phi
}

/// Shapley value; both forms are computed and must agree.
pub fn shapley(game: &TUGame) -> PayoffVector {
    let a = shapley_marginal(game);
    let b = shapley_mobius(game);
    assert_eq!(a, b, "Shapley forms disagree");
    a
}

/// `τ_i = b_i − g(N)/Σ_j g(j) · g(i)`; `b` when `Σ_j g(j) = 0`.
pub fn tau_gap(game: &TUGame) -> PayoffVector {
    let n = game.n();
    let b = upper_vector(game);
    let g_n = gap_with(&b, game, Coalition::grand(n));
    let g_i: Vec<Rational> = (0..n)
        .map(|i| gap_with(&b, game, Coalition::singleton(i)))
        .collect();
    let total: Rational = g_i.iter().sum();
    if total.is_zero() {
        return b;
    }
    let ratio = g_n / total;
    b.iter().zip(&g_i).map(|(bi, gi)| bi - &ratio * gi).collect()
}

/// `τ_i = m(i) + Σ_{|S|>1} m(S) / Σ_{|S|>1} |S| m(S) · Σ_{S∋i, |S|>1} m(S)`.
pub fn tau_mobius(game: &TUGame) -> PayoffVector {
    let n = game.n();
    let m = mobius_forward(game);
    let mut num = Rational::zero();
    let mut den = Rational::zero();
    let mut share = vec![Rational::zero(); n];
    let mut single = vec![Rational::zero(); n];
    for (s, x) in m.nonempty() {
        if s.size() == 1 {
            single[s.players().next().expect("singleton")] = x.clone();
            continue;
        }
        num += x;
        den += x * Rational::from_integer((s.size() as i64).into());
        for j in s.players() {
            share[j] += x;
        }
    }
    if den.is_zero() {
        return single.into_iter().zip(share).map(|(a, b)| a + b).collect();
    }
    let ratio = num / den;
    single
        .into_iter()
        .zip(share)
        .map(|(a, b)| a + &ratio * b)
        .collect()
}

/// τ-value of a convex game; both forms are computed and must agree.
pub fn tau_convex(game: &TUGame) -> Result<PayoffVector> {
    if !is_convex(game) {
        return Err(Error::NotConvex);
    }
    let a = tau_gap(game);
    let b = tau_mobius(game);
    assert_eq!(a, b, "τ forms disagree");
    Ok(a)
}
