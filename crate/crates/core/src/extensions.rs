//! Extensions of player-centered games: extendability, the canonical games
//! `v₀` and `v₁`, vertex families, witnesses, ray families and sampling.
//!
//! Throughout, `i` is the center and `K^c` the nonempty coalitions without
//! `i`. A positive extension is determined by how each Möbius mass
//! `m(S∪i)`, `S ∈ K^c`, is split between `S` and `S∪i`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game_core::{mobius_inverse, Coalition, GameClass, MobiusVector, TUGame};
use crate::incomplete::{
    is_convex_pc, is_monotone_pc, is_positive_pc, partial_mobius, unknown_coalitions, PlayerCentered,
};
use crate::polyhedra::{build_extension_polytope, game_from_coordinates, lp_feasible, vertex_enumeration};
use crate::rational::Rational;

/// Weights `β_S ∈ [0, 1]` on `K^c`: the share of `m(S∪i)` moved onto `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaProfile {
    beta: BTreeMap<Coalition, Rational>,
}

impl BetaProfile {
    pub fn new(g: &PlayerCentered, beta: BTreeMap<Coalition, Rational>) -> Result<Self> {
        let unknown = g.unknown();
        if beta.len() != unknown.len() || unknown.iter().any(|s| !beta.contains_key(s)) {
            return Err(Error::InvalidArgument("β must be defined exactly on K^c".into()));
        }
        if beta.values().any(|b| b.is_negative() || *b > Rational::one()) {
            return Err(Error::InvalidArgument("β must lie in [0, 1]".into()));
        }
        Ok(BetaProfile { beta })
    }

    pub fn constant(g: &PlayerCentered, b: Rational) -> Result<Self> {
        BetaProfile::new(g, g.unknown().into_iter().map(|s| (s, b.clone())).collect())
    }

    pub fn get(&self, s: Coalition) -> &Rational {
        &self.beta[&s]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Coalition, &Rational)> {
        self.beta.iter().map(|(s, b)| (*s, b))
    }
}

/// A 0/1 label per coalition of `K^c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XVector {
    bits: BTreeMap<Coalition, bool>,
}

impl XVector {
    /// Bit `k` of `code` labels the `k`-th coalition of `K^c`.
    pub fn from_code(g: &PlayerCentered, code: u64) -> Self {
        XVector {
            bits: g
                .unknown()
                .into_iter()
                .enumerate()
                .map(|(k, s)| (s, code >> k & 1 == 1))
                .collect(),
        }
    }

    pub fn constant(g: &PlayerCentered, bit: bool) -> Self {
        XVector {
            bits: g.unknown().into_iter().map(|s| (s, bit)).collect(),
        }
    }

    pub fn new(g: &PlayerCentered, bits: BTreeMap<Coalition, bool>) -> Result<Self> {
        let unknown = g.unknown();
        if bits.len() != unknown.len() || unknown.iter().any(|s| !bits.contains_key(s)) {
            return Err(Error::InvalidArgument("x must be defined exactly on K^c".into()));
        }
        Ok(XVector { bits })
    }

    pub fn get(&self, s: Coalition) -> bool {
        self.bits[&s]
    }

    fn fits(&self, g: &PlayerCentered) -> bool {
        let unknown = g.unknown();
        self.bits.len() == unknown.len() && unknown.iter().all(|s| self.bits.contains_key(s))
    }
}

/// An ordering of `K^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaOrder {
    order: Vec<Coalition>,
}

impl SigmaOrder {
    pub fn new(g: &PlayerCentered, order: Vec<Coalition>) -> Result<Self> {
        let expected: BTreeSet<Coalition> = g.unknown().into_iter().collect();
        let got: BTreeSet<Coalition> = order.iter().copied().collect();
        if order.len() != expected.len() || got != expected {
            return Err(Error::InvalidArgument("σ must be a permutation of K^c".into()));
        }
        Ok(SigmaOrder { order })
    }

    /// `K^c` in ascending mask order.
    pub fn ascending(g: &PlayerCentered) -> Self {
        SigmaOrder { order: g.unknown() }
    }

    pub fn order(&self) -> &[Coalition] {
        &self.order
    }
}

/// Extendability verdict for each class.
pub fn extendable(g: &PlayerCentered, cls: GameClass) -> bool {
    match cls {
        GameClass::Positive => is_positive_pc(g),
        GameClass::Convex => is_convex_pc(g),
        GameClass::Superadditive => true,
        GameClass::Monotone | GameClass::MonotoneSuperadditive => is_monotone_pc(g),
        GameClass::MonotoneConvex => is_monotone_pc(g) && is_convex_pc(g),
        GameClass::ZeroNormalizedPositive => {
            g.value(Coalition::singleton(g.center())).is_zero() && is_positive_pc(g)
        }
    }
}

fn require(g: &PlayerCentered, cls: GameClass) -> Result<()> {
    if extendable(g, cls) {
        Ok(())
    } else {
        Err(Error::NotExtendable(cls))
    }
}

/// Positive extension with `m(i) = v(i)` and every mass `m(S∪i)` split as
/// `β_S` onto `S` and `1 − β_S` onto `S∪i`; no positivity check.
fn split_masses(g: &PlayerCentered, mut beta: impl FnMut(Coalition) -> Rational) -> TUGame {
    let i = g.center();
    let pm = partial_mobius(g);
    let mut m = BTreeMap::new();
    m.insert(Coalition::singleton(i), pm[&Coalition::singleton(i)].clone());
    for s in g.unknown() {
        let mass = &pm[&s.with(i)];
        let b = beta(s);
        m.insert(s, &b * mass);
        m.insert(s.with(i), (Rational::one() - b) * mass);
    }
    let mv = MobiusVector::from_fn(g.n(), |t| m.get(&t).cloned().unwrap_or_else(Rational::zero))
        .expect("player count already validated");
    mobius_inverse(&mv)
}

/// The extensions with all masses on `S` (`v₀`) and all on `S∪i` (`v₁`).
///
/// `v₁` is zero on `K^c`; `v₀(S) = v(S∪i) − v(i)`, which is `v(S∪i)` for
/// games with `v(i) = 0`.
pub fn v0_v1(g: &PlayerCentered) -> (TUGame, TUGame) {
    (
        split_masses(g, |_| Rational::one()),
        split_masses(g, |_| Rational::zero()),
    )
}

/// `w(S) = v(S∪i)` on `K^c`: the largest monotone extension.
pub fn monotone_ceiling(g: &PlayerCentered) -> TUGame {
    let i = g.center();
    g.complete_with(|s| g.value(s.with(i)).clone())
}

/// The zero-normalised positive extension with `β_S = 1` for `|S| ≥ 2` and
/// `β_{k} = 0` on singletons.
pub fn zero_normalized_top(g: &PlayerCentered) -> Result<TUGame> {
    require(g, GameClass::ZeroNormalizedPositive)?;
    Ok(split_masses(g, |s| {
        if s.size() >= 2 {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// `m(S) = m(S∪i)` when `x_S = 0`, `m(S∪i)` kept when `x_S = 1`.
pub fn vx_vertex(g: &PlayerCentered, x: &XVector) -> Result<TUGame> {
    require(g, GameClass::Positive)?;
    if !x.fits(g) {
        return Err(Error::InvalidArgument("x must be defined exactly on K^c".into()));
    }
    Ok(split_masses(g, |s| {
        if x.get(s) {
            Rational::zero()
        } else {
            Rational::one()
        }
    }))
}

fn dedup_games(games: impl IntoIterator<Item = TUGame>, n: usize) -> Vec<TUGame> {
    let set: BTreeSet<Vec<Rational>> = games.into_iter().map(|g| g.coordinates().to_vec()).collect();
    set.into_iter()
        .map(|c| TUGame::from_values(n, c).expect("coordinates come from a game"))
        .collect()
}

/// Distinct `v_x` over all `x ∈ {0,1}^{K^c}`, sorted by coordinates.
pub fn enumerate_positive_vertices(g: &PlayerCentered) -> Result<Vec<TUGame>> {
    require(g, GameClass::Positive)?;
    let k = g.unknown().len();
    if k >= 63 {
        return Err(Error::TooManyPlayers(g.n()));
    }
    // only coalitions with positive mass distinguish labels
    let i = g.center();
    let pm = partial_mobius(g);
    let live: Vec<usize> = g
        .unknown()
        .iter()
        .enumerate()
        .filter(|(_, s)| !pm[&s.with(i)].is_zero())
        .map(|(k, _)| k)
        .collect();
    let games = (0..1u64 << live.len()).map(|code| {
        let full = live
            .iter()
            .enumerate()
            .fold(0u64, |acc, (b, &k)| acc | (code >> b & 1) << k);
        vx_vertex(g, &XVector::from_code(g, full)).expect("checked above")
    });
    Ok(dedup_games(games, g.n()))
}

/// The positive extension with split weights `β`.
pub fn beta_extension(g: &PlayerCentered, b: &BetaProfile) -> Result<TUGame> {
    require(g, GameClass::Positive)?;
    if b.beta.len() != g.unknown().len() || g.unknown().iter().any(|s| !b.beta.contains_key(s)) {
        return Err(Error::InvalidArgument("β must be defined exactly on K^c".into()));
    }
    Ok(split_masses(g, |s| b.get(s).clone()))
}

/// A superadditive extension: `v` on `K` and the additive `w(S) = |S| β`
/// on `K^c`.
///
/// With `d = min v(S∪T) − v(T)` over disjoint `S ∈ K^c`, `T ∈ K∖{∅}`, the
/// weight `β = d/n` keeps `|S| β ≤ d` only when `d ≥ 0`; for `d < 0` the
/// weight `β = d` is used instead.
pub fn superadditive_witness(g: &PlayerCentered) -> TUGame {
    let n = g.n();
    let grand = Coalition::grand(n);
    let d = g
        .unknown()
        .into_iter()
        .flat_map(|s| {
            g.known_nonempty()
                .filter(move |t| t.is_disjoint(s) && t.union(s).is_subset_of(grand))
                .map(move |t| g.value(s.union(t)) - g.value(t))
        })
        .min()
        .unwrap_or_else(Rational::zero);
    let beta = if d.is_negative() {
        d
    } else {
        d / Rational::from_integer((n as i64).into())
    };
    g.complete_with(|s| &beta * Rational::from_integer((s.size() as i64).into()))
}

/// `v` on `K`; on `K^c` in σ order, the minimum over already defined strict
/// supersets (`x_S = 1`) or the maximum over already defined strict subsets
/// (`x_S = 0`).
pub fn vsigmax_vertex(g: &PlayerCentered, sigma: &SigmaOrder, x: &XVector) -> Result<TUGame> {
    require(g, GameClass::Monotone)?;
    if !x.fits(g) || SigmaOrder::new(g, sigma.order.clone()).is_err() {
        return Err(Error::InvalidArgument("σ and x must be indexed by K^c".into()));
    }
    let mut defined: Vec<Option<Rational>> = vec![None; 1 << g.n()];
    defined[0] = Some(Rational::zero());
    for s in g.known_nonempty() {
        defined[s.index()] = Some(g.value(s).clone());
    }
    for &s in &sigma.order {
        let value = fill_value(&defined, s, x.get(s), g.n());
        defined[s.index()] = Some(value);
    }
    Ok(TUGame::from_fn(g.n(), |s| {
        defined[s.index()].clone().expect("all coalitions filled")
    })
    .expect("player count already validated"))
}

fn fill_value(defined: &[Option<Rational>], s: Coalition, upper: bool, n: usize) -> Rational {
    let candidates = Coalition::all(n)
        .filter(|&a| {
            a != s
                && if upper {
                    s.is_subset_of(a)
                } else {
                    a.is_subset_of(s)
                }
        })
        .filter_map(|a| defined[a.index()].as_ref());
    let value = if upper { candidates.min() } else { candidates.max() };
    // N lies in K above every S and ∅ lies in K below it
    value.expect("a known superset and subset always exist").clone()
}

/// Distinct `v_{σ,x}` over every ordering and labelling, sorted by
/// coordinates. Partial assignments reached twice are expanded once.
pub fn enumerate_monotone_vertices(g: &PlayerCentered) -> Result<Vec<TUGame>> {
    require(g, GameClass::Monotone)?;
    let n = g.n();
    let unknown = g.unknown();
    let mut start: Vec<Option<Rational>> = vec![None; 1 << n];
    start[0] = Some(Rational::zero());
    for s in g.known_nonempty() {
        start[s.index()] = Some(g.value(s).clone());
    }
    let mut seen: HashSet<Vec<Option<Rational>>> = HashSet::new();
    let mut stack = vec![start];
    let mut out = Vec::new();
    while let Some(state) = stack.pop() {
        if !seen.insert(state.clone()) {
            continue;
        }
        let open: Vec<Coalition> = unknown
            .iter()
            .copied()
            .filter(|s| state[s.index()].is_none())
            .collect();
        if open.is_empty() {
            out.push(
                TUGame::from_fn(n, |s| state[s.index()].clone().expect("complete"))
                    .expect("player count already validated"),
            );
            continue;
        }
        for s in open {
            for upper in [false, true] {
                let mut next = state.clone();
                next[s.index()] = Some(fill_value(&state, s, upper, n));
                if !seen.contains(&next) {
                    stack.push(next);
                }
            }
        }
    }
    Ok(dedup_games(out, n))
}

fn check_center(n: usize, center: usize) -> Result<()> {
    crate::game_core::check_players(n)?;
    if center >= n {
        return Err(Error::PlayerOutOfRange { player: center, n });
    }
    Ok(())
}

/// `e_{S₀}`: zero on `K`; on `K^c` the game with Möbius coefficients
/// `(−1)^{|T|}` for `∅ ≠ T ⊆ S₀`, i.e. `−1` exactly when `T` meets `S₀`.
pub fn ray_es0(n: usize, center: usize, s0: Coalition) -> Result<TUGame> {
    check_center(n, center)?;
    if s0.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    if !s0.fits(n) || s0.contains(center) {
        return Err(Error::InvalidArgument(format!("{s0} is not in K^c")));
    }
    let m = MobiusVector::from_fn(n, |t| {
        if t.is_subset_of(s0) {
            Rational::from_integer(if t.size() % 2 == 0 { 1 } else { -1 }.into())
        } else {
            Rational::zero()
        }
    })?;
    let free = mobius_inverse(&m);
    TUGame::from_fn(n, |t| {
        if t.contains(center) {
            Rational::zero()
        } else {
            free.value(t).clone()
        }
    })
}

/// The direction `−u_k` on `K^c` and zero on `K`.
///
/// The unanimity game itself is `−1` on every coalition containing `k`,
/// including those in `K`, so only this restriction lies in the recession
/// cone of the superadditive extensions.
pub fn ray_neg_unanimity(n: usize, center: usize, k: usize) -> Result<TUGame> {
    check_center(n, center)?;
    if k >= n {
        return Err(Error::PlayerOutOfRange { player: k, n });
    }
    if k == center {
        return Err(Error::InvalidArgument("k must differ from the center".into()));
    }
    TUGame::from_fn(n, |s| {
        if s.contains(k) && !s.contains(center) {
            -Rational::one()
        } else {
            Rational::zero()
        }
    })
}

fn random_unit(rng: &mut ChaCha8Rng) -> Rational {
    let q: i64 = rng.gen_range(1..=8);
    let a: i64 = rng.gen_range(0..=q);
    Rational::new(a.into(), q.into())
}

fn random_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=6)).collect();
    let total: i64 = raw.iter().sum();
    if total == 0 {
        let mut w = vec![Rational::zero(); k];
        w[rng.gen_range(0..k)] = Rational::one();
        return w;
    }
    raw.into_iter()
        .map(|a| Rational::new(a.into(), total.into()))
        .collect()
}

fn combination(n: usize, games: &[TUGame], weights: &[Rational]) -> TUGame {
    let zero = TUGame::zero(n).expect("player count already validated");
    games
        .iter()
        .zip(weights)
        .filter(|(_, w)| !w.is_zero())
        .fold(zero, |acc, (g, w)| acc.add(&g.scale(w)))
}

enum Strategy {
    Beta {
        zero_singletons: bool,
    },
    SigmaX,
    Polytope {
        vertices: Vec<TUGame>,
        rays: Vec<TUGame>,
    },
    Cone {
        base: TUGame,
        rays: Vec<TUGame>,
    },
}

/// Draws random `cls`-extensions of a fixed game. Each draw depends only on
/// `(seed, index)`.
pub struct ExtensionSampler {
    g: PlayerCentered,
    cls: GameClass,
    strategy: Strategy,
}

impl ExtensionSampler {
    pub fn new(g: &PlayerCentered, cls: GameClass) -> Result<Self> {
        require(g, cls)?;
        let n = g.n();
        let i = g.center();
        let strategy = match cls {
            GameClass::Positive => Strategy::Beta {
                zero_singletons: false,
            },
            GameClass::ZeroNormalizedPositive => Strategy::Beta {
                zero_singletons: true,
            },
            GameClass::Monotone => Strategy::SigmaX,
            GameClass::MonotoneSuperadditive | GameClass::MonotoneConvex => {
                let vr = vertex_enumeration(&build_extension_polytope(g, cls))?;
                let to_games = |pts: Vec<Vec<Rational>>| -> Result<Vec<TUGame>> {
                    pts.iter().map(|x| game_from_coordinates(n, x)).collect()
                };
                Strategy::Polytope {
                    vertices: to_games(vr.vertices)?,
                    rays: to_games(vr.rays)?,
                }
            }
            GameClass::Superadditive => {
                let mut rays: Vec<TUGame> = (0..n)
                    .filter(|&k| k != i)
                    .map(|k| ray_neg_unanimity(n, i, k))
                    .collect::<Result<_>>()?;
                for s0 in unknown_coalitions(n, i) {
                    rays.push(ray_es0(n, i, s0)?);
                }
                Strategy::Cone {
                    base: superadditive_witness(g),
                    rays,
                }
            }
            GameClass::Convex => {
                let point =
                    lp_feasible(&build_extension_polytope(g, cls)).ok_or(Error::NotExtendable(cls))?;
                let rays = unknown_coalitions(n, i)
                    .into_iter()
                    .map(|s0| ray_es0(n, i, s0))
                    .collect::<Result<_>>()?;
                Strategy::Cone {
                    base: game_from_coordinates(n, &point)?,
                    rays,
                }
            }
        };
        Ok(ExtensionSampler {
            g: g.clone(),
            cls,
            strategy,
        })
    }

    pub fn class(&self) -> GameClass {
        self.cls
    }

    pub fn sample(&self, seed: u64, index: u64) -> TUGame {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let g = &self.g;
        let n = g.n();
        match &self.strategy {
            Strategy::Beta { zero_singletons } => split_masses(g, |s| {
                if *zero_singletons && s.size() == 1 {
                    Rational::zero()
                } else {
                    random_unit(&mut rng)
                }
            }),
            Strategy::SigmaX => {
                let picks = rng.gen_range(1..=3);
                let games: Vec<TUGame> = (0..picks)
                    .map(|_| {
                        let mut order = g.unknown();
                        order.shuffle(&mut rng);
                        let sigma = SigmaOrder { order };
                        let x = XVector::from_code(g, rng.gen());
                        vsigmax_vertex(g, &sigma, &x).expect("monotone input checked")
                    })
                    .collect();
                let w = random_weights(&mut rng, games.len());
                combination(n, &games, &w)
            }
            Strategy::Polytope { vertices, rays } => {
                let w = random_weights(&mut rng, vertices.len());
                let point = combination(n, vertices, &w);
                let scales: Vec<Rational> = rays.iter().map(|_| random_unit(&mut rng)).collect();
                point.add(&combination(n, rays, &scales))
            }
            Strategy::Cone { base, rays } => {
                let scales: Vec<Rational> = rays
                    .iter()
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            Rational::zero()
                        } else {
                            random_unit(&mut rng) * Rational::from_integer(rng.gen_range(1..=4).into())
                        }
                    })
                    .collect();
                base.add(&combination(n, rays, &scales))
            }
        }
    }
}

/// One random `cls`-extension.
pub fn sample_extension(g: &PlayerCentered, cls: GameClass, seed: u64) -> Result<TUGame> {
    Ok(ExtensionSampler::new(g, cls)?.sample(seed, 0))
}
