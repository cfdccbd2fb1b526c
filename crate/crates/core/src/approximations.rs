//! Bounds on the core, the Shapley value and the τ-value over all
//! extensions of a player-centered game within a class.
//!
//! Exact intervals come with witness extensions attaining each endpoint.
//! `empirical_bounds` samples extensions and serves as an independent check.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extensions::{
    extendable, monotone_ceiling, v0_v1, zero_normalized_top, BetaProfile, ExtensionSampler,
};
use crate::game_core::{Coalition, GameClass, TUGame};
use crate::incomplete::{partial_mobius, PlayerCentered};
use crate::polyhedra::HPolyhedron;
use crate::rational::Rational;
use crate::solutions::{core_hrep, shapley, shapley_weights, tau_convex, Interval, PayoffVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Concept {
    Shapley,
    Tau,
}

impl Concept {
    pub fn name(self) -> &'static str {
        match self {
            Concept::Shapley => "shapley",
            Concept::Tau => "tau",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Concept::Shapley, Concept::Tau]
            .into_iter()
            .find(|c| c.name() == s)
    }

    /// Value of the concept at a complete game.
    pub fn evaluate(self, game: &TUGame) -> Result<PayoffVector> {
        match self {
            Concept::Shapley => Ok(shapley(game)),
            Concept::Tau => tau_convex(game),
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Extensions attaining the two ends of one player's interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witnesses {
    pub lo: TUGame,
    pub hi: TUGame,
}

/// Per-player intervals of a point-valued concept over a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionBounds {
    pub concept: Concept,
    pub cls: GameClass,
    pub per_player: Vec<Interval>,
    pub witnesses: Vec<Witnesses>,
}

/// Strong core `inner` (when known) and weak core `outer`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreBounds {
    pub inner: Option<HPolyhedron>,
    pub outer: HPolyhedron,
}

fn require(g: &PlayerCentered, cls: GameClass) -> Result<()> {
    if extendable(g, cls) {
        Ok(())
    } else {
        Err(Error::NotExtendable(cls))
    }
}

/// The weak core is the core of `v₁`, the pointwise smallest extension. The
/// strong core is the core of `v₀` whenever `v₀` belongs to the class, since
/// `v₀` then bounds every extension from above on `K^c`; for monotone
/// extensions it is not provided.
pub fn core_bounds(g: &PlayerCentered, cls: GameClass) -> Result<CoreBounds> {
    match cls {
        GameClass::Monotone
        | GameClass::Positive
        | GameClass::MonotoneSuperadditive
        | GameClass::MonotoneConvex => {}
        other => return Err(Error::UnsupportedClass(other)),
    }
    require(g, cls)?;
    let (v0, v1) = v0_v1(g);
    let inner = (cls != GameClass::Monotone && cls.contains(&v0)).then(|| core_hrep(&v0));
    Ok(CoreBounds {
        inner,
        outer: core_hrep(&v1),
    })
}

/// `Σ_{S∈K∖∅, k∉S} γ_S (v(S∪k) − v(S))`, the part of `φ_k` fixed by `K`.
pub fn known_shapley_part(g: &PlayerCentered, k: usize) -> Rational {
    let gamma = shapley_weights(g.n());
    g.known_nonempty()
        .filter(|s| !s.contains(k))
        .map(|s| &gamma[s.size()] * (g.value(s.with(k)) - g.value(s)))
        .sum()
}

/// The monotone extension equal to `v(S∪i)` on coalitions of `K^c` that
/// contain `k` and zero on the others.
pub fn monotone_upper_witness(g: &PlayerCentered, k: usize) -> TUGame {
    let i = g.center();
    g.complete_with(|s| {
        if s.contains(k) {
            g.value(s.with(i)).clone()
        } else {
            Rational::from_integer(0.into())
        }
    })
}

fn check_player(g: &PlayerCentered, k: usize) -> Result<()> {
    if k >= g.n() {
        Err(Error::PlayerOutOfRange { player: k, n: g.n() })
    } else {
        Ok(())
    }
}

/// Exact range of `φ_k` over the positive or monotone extensions.
///
/// For the center both classes are decreasing in the worths on `K^c`:
/// positive extensions give `[φ_i(v₀), φ_i(v₁)] = [v(i), φ_i(v₁)]`,
/// monotone ones `[φ_i(w̄), φ_i(v₁)]` with `w̄(S) = v(S∪i)`.
/// For `k ≠ i` positive extensions give `[φ_k(v₁), φ_k(v₀)]`; monotone ones
/// give `[F, F + Σ_{T∈K∖∅, k∉T} γ_{T∖i} v(T∪k)]` with `F` the known part.
pub fn shapley_interval(g: &PlayerCentered, cls: GameClass, k: usize) -> Result<(Interval, Witnesses)> {
    check_player(g, k)?;
    match cls {
        GameClass::Positive | GameClass::Monotone => {}
        GameClass::MonotoneSuperadditive | GameClass::MonotoneConvex => {
            return Err(Error::UnknownEndpoints(format!(
                "no closed-form Shapley interval for {cls}; use sampling"
            )))
        }
        other => return Err(Error::UnsupportedClass(other)),
    }
    require(g, cls)?;
    let i = g.center();
    let (v0, v1) = v0_v1(g);
    let (lo, hi) = match (cls, k == i) {
        (GameClass::Positive, true) => (v0, v1),
        (GameClass::Positive, false) => (v1, v0),
        (_, true) => (monotone_ceiling(g), v1),
        (_, false) => (v1, monotone_upper_witness(g, k)),
    };
    let interval = Interval::new(shapley(&lo)[k].clone(), shapley(&hi)[k].clone())?;
    Ok((interval, Witnesses { lo, hi }))
}

/// Upper end of `φ_k` over monotone extensions, `k ≠ i`, from the known part
/// and the weights `γ_{T∖i}`.
pub fn monotone_shapley_upper(g: &PlayerCentered, k: usize) -> Rational {
    let gamma = shapley_weights(g.n());
    let extra: Rational = g
        .known_nonempty()
        .filter(|t| !t.contains(k))
        .map(|t| &gamma[t.size() - 1] * g.value(t.with(k)))
        .sum();
    known_shapley_part(g, k) + extra
}

/// Shapley value of the positive extension with split weights `β`, from the
/// partial Möbius coefficients alone.
pub fn shapley_of_beta(g: &PlayerCentered, b: &BetaProfile) -> Result<PayoffVector> {
    require(g, GameClass::Positive)?;
    let n = g.n();
    let i = g.center();
    let pm = partial_mobius(g);
    let mut phi = vec![Rational::from_integer(0.into()); n];
    phi[i] += &pm[&Coalition::singleton(i)];
    for (s, beta) in b.iter() {
        let mass = &pm[&s.with(i)];
        let small = Rational::from_integer((s.size() as i64).into());
        let big = Rational::from_integer((s.size() as i64 + 1).into());
        let on_s = beta * mass / small;
        let on_si = (Rational::from_integer(1.into()) - beta) * mass / big;
        for j in s.players() {
            phi[j] += &on_s;
            phi[j] += &on_si;
        }
        phi[i] += &on_si;
    }
    Ok(phi)
}

/// Exact range of `τ_k` over zero-normalised positive extensions.
///
/// Writing `Y` for the Möbius mass moved from coalitions `S∪i` onto `S`
/// (`|S| ≥ 2`), `τ_i` is decreasing and every other `τ_k` increasing in
/// `Y`, so the ends are attained at `v₁` (`Y = 0`) and at the extension with
/// all movable mass moved.
pub fn tau_interval(g: &PlayerCentered, k: usize) -> Result<(Interval, Witnesses)> {
    check_player(g, k)?;
    let top = zero_normalized_top(g)?;
    let (_, v1) = v0_v1(g);
    let (lo, hi) = if k == g.center() { (top, v1) } else { (v1, top) };
    let interval = Interval::new(tau_convex(&lo)?[k].clone(), tau_convex(&hi)?[k].clone())?;
    Ok((interval, Witnesses { lo, hi }))
}

fn collect_bounds(
    g: &PlayerCentered,
    cls: GameClass,
    concept: Concept,
    f: impl Fn(usize) -> Result<(Interval, Witnesses)>,
) -> Result<SolutionBounds> {
    let (per_player, witnesses) = (0..g.n()).map(f).collect::<Result<Vec<_>>>()?.into_iter().unzip();
    Ok(SolutionBounds {
        concept,
        cls,
        per_player,
        witnesses,
    })
}

/// All players' Shapley intervals.
pub fn shapley_bounds(g: &PlayerCentered, cls: GameClass) -> Result<SolutionBounds> {
    collect_bounds(g, cls, Concept::Shapley, |k| shapley_interval(g, cls, k))
}

/// All players' τ intervals.
pub fn tau_bounds(g: &PlayerCentered) -> Result<SolutionBounds> {
    collect_bounds(g, GameClass::ZeroNormalizedPositive, Concept::Tau, |k| {
        tau_interval(g, k)
    })
}

/// Closed-form bounds for a concept, dispatching on the class.
pub fn exact_bounds(g: &PlayerCentered, cls: GameClass, concept: Concept) -> Result<SolutionBounds> {
    match concept {
        Concept::Shapley => shapley_bounds(g, cls),
        Concept::Tau if cls == GameClass::ZeroNormalizedPositive => tau_bounds(g),
        Concept::Tau => Err(Error::UnsupportedClass(cls)),
    }
}

/// Minimum and maximum of the concept over sampled extensions, per player.
///
/// When `v₁` belongs to the class it is the first sample; the others are
/// drawn with per-sample streams `(seed, index)`, so the result does not
/// depend on scheduling.
pub fn empirical_bounds(
    g: &PlayerCentered,
    cls: GameClass,
    concept: Concept,
    samples: usize,
    seed: u64,
) -> Result<SolutionBounds> {
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    if concept == Concept::Tau
        && !matches!(
            cls,
            GameClass::Positive
                | GameClass::ZeroNormalizedPositive
                | GameClass::Convex
                | GameClass::MonotoneConvex
        )
    {
        return Err(Error::UnsupportedClass(cls));
    }
    let sampler = ExtensionSampler::new(g, cls)?;
    let (_, v1) = v0_v1(g);
    let lead = cls.contains(&v1);
    let games: Vec<TUGame> = (0..samples)
        .into_par_iter()
        .map(|index| {
            if index == 0 && lead {
                v1.clone()
            } else {
                sampler.sample(seed, index as u64)
            }
        })
        .collect();
    let values: Vec<PayoffVector> = games
        .par_iter()
        .map(|w| concept.evaluate(w))
        .collect::<Result<_>>()?;

    let n = g.n();
    let mut per_player = Vec::with_capacity(n);
    let mut witnesses = Vec::with_capacity(n);
    for k in 0..n {
        let mut lo = 0;
        let mut hi = 0;
        for (idx, v) in values.iter().enumerate() {
            if v[k] < values[lo][k] {
                lo = idx;
            }
            if v[k] > values[hi][k] {
                hi = idx;
            }
        }
        per_player.push(Interval::new(values[lo][k].clone(), values[hi][k].clone())?);
        witnesses.push(Witnesses {
            lo: games[lo].clone(),
            hi: games[hi].clone(),
        });
    }
    Ok(SolutionBounds {
        concept,
        cls,
        per_player,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::{contains, vertex_enumeration};
    use crate::rational::{int, ratio};

    fn g3() -> PlayerCentered {
        PlayerCentered::from_fn(3, 0, |s| match s.mask() {
            0b001 => int(0),
            0b011 | 0b101 => int(1),
            _ => int(3),
        })
        .unwrap()
    }

    fn iv(lo: Rational, hi: Rational) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn fixture_core_bounds() {
        let b = core_bounds(&g3(), GameClass::Positive).unwrap();
        let inner = b.inner.clone().unwrap();
        assert_eq!(
            vertex_enumeration(&inner).unwrap().vertices,
            vec![vec![int(0), int(1), int(2)], vec![int(0), int(2), int(1)]]
        );
        assert!(contains(&b.outer, &inner));
        assert!(core_bounds(&g3(), GameClass::Monotone).unwrap().inner.is_none());
        assert!(core_bounds(&g3(), GameClass::Convex).is_err());
    }

    #[test]
    fn fixture_positive_shapley() {
        let b = shapley_bounds(&g3(), GameClass::Positive).unwrap();
        assert_eq!(
            b.per_player,
            vec![
                iv(int(0), ratio(4, 3)),
                iv(ratio(5, 6), ratio(3, 2)),
                iv(ratio(5, 6), ratio(3, 2))
            ]
        );
        for (k, (w, i)) in b.witnesses.iter().zip(&b.per_player).enumerate() {
            assert_eq!(shapley(&w.lo)[k], i.lo);
            assert_eq!(shapley(&w.hi)[k], i.hi);
        }
    }

    #[test]
    fn fixture_monotone_shapley() {
        let (iv1, _) = shapley_interval(&g3(), GameClass::Monotone, 1).unwrap();
        assert_eq!(iv1, iv(ratio(5, 6), ratio(5, 3)));
        assert_eq!(monotone_shapley_upper(&g3(), 1), ratio(5, 3));
        assert_eq!(known_shapley_part(&g3(), 1), ratio(5, 6));
        let (iv0, _) = shapley_interval(&g3(), GameClass::Monotone, 0).unwrap();
        assert_eq!(iv0, iv(int(0), ratio(4, 3)));
        assert!(matches!(
            shapley_interval(&g3(), GameClass::MonotoneConvex, 1),
            Err(Error::UnknownEndpoints(_))
        ));
    }

    #[test]
    fn fixture_tau() {
        let b = tau_bounds(&g3()).unwrap();
        assert_eq!(
            b.per_player,
            vec![
                iv(int(1), ratio(9, 7)),
                iv(ratio(6, 7), int(1)),
                iv(ratio(6, 7), int(1))
            ]
        );
        let bad = g3().with_value(Coalition::singleton(0), int(1)).unwrap();
        assert!(tau_bounds(&bad).is_err());
    }

    #[test]
    fn beta_shapley_matches_direct() {
        let g = g3();
        for b in [int(0), ratio(1, 2), int(1)] {
            let profile = BetaProfile::constant(&g, b).unwrap();
            let w = crate::extensions::beta_extension(&g, &profile).unwrap();
            assert_eq!(shapley_of_beta(&g, &profile).unwrap(), shapley(&w));
        }
    }

    #[test]
    fn empirical_inside_exact() {
        let g = g3();
        for cls in [GameClass::Positive, GameClass::Monotone] {
            let exact = shapley_bounds(&g, cls).unwrap();
            let emp = empirical_bounds(&g, cls, Concept::Shapley, 200, 11).unwrap();
            for (e, x) in emp.per_player.iter().zip(&exact.per_player) {
                assert!(e.is_subset_of(x), "{cls}: {e:?} vs {x:?}");
            }
            assert_eq!(emp, empirical_bounds(&g, cls, Concept::Shapley, 200, 11).unwrap());
        }
        let one = empirical_bounds(&g, GameClass::Positive, Concept::Shapley, 1, 0).unwrap();
        let (_, v1) = v0_v1(&g);
        for (k, i) in one.per_player.iter().enumerate() {
            assert_eq!(i, &Interval::point(shapley(&v1)[k].clone()));
        }
        let tau = empirical_bounds(&g, GameClass::ZeroNormalizedPositive, Concept::Tau, 100, 5).unwrap();
        for (e, x) in tau.per_player.iter().zip(&tau_bounds(&g).unwrap().per_player) {
            assert!(e.is_subset_of(x));
        }
    }
}
