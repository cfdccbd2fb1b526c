//! Coalitions, complete TU games, the Möbius transform and class predicates.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest supported player count. Coalitions are `u32` masks and every
/// table in the crate is indexed by mask, so memory is `O(2^n)`.
pub const MAX_PLAYERS: usize = 16;

/// A subset of the players `0..n`, bit `j` set iff player `j` is a member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_mask(mask: u32) -> Self {
        Coalition(mask)
    }

    pub fn singleton(player: usize) -> Self {
        Coalition(1 << player)
    }

    pub fn grand(n: usize) -> Self {
        Coalition(((1u64 << n) - 1) as u32)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        Coalition(players.into_iter().fold(0, |m, p| m | (1 << p)))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, player: usize) -> bool {
        self.0 >> player & 1 == 1
    }

    pub const fn with(self, player: usize) -> Self {
        Coalition(self.0 | 1 << player)
    }

    pub const fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1 << player))
    }

    pub const fn union(self, other: Self) -> Self {
        Coalition(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        Coalition(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        Coalition(self.0 & !other.0)
    }

    pub const fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn fits(self, n: usize) -> bool {
        (self.0 as u64) < (1u64 << n)
    }

    pub fn players(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |j| mask >> j & 1 == 1)
    }

    /// All subsets of `self`, including `∅` and `self`, in ascending mask order.
    pub fn subsets(self) -> impl Iterator<Item = Coalition> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Coalition(cur))
        })
    }

    /// Every coalition of an `n`-player game, `∅` first.
    pub fn all(n: usize) -> impl Iterator<Item = Coalition> {
        (0..(1u64 << n) as u32).map(Coalition)
    }

    pub fn all_nonempty(n: usize) -> impl Iterator<Item = Coalition> {
        (1..(1u64 << n) as u32).map(Coalition)
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.players().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn check_players(n: usize) -> Result<()> {
    if n > MAX_PLAYERS {
        Err(Error::TooManyPlayers(n))
    } else {
        Ok(())
    }
}

/// Game classes handled by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameClass {
    Monotone,
    Superadditive,
    Convex,
    Positive,
    MonotoneSuperadditive,
    MonotoneConvex,
    ZeroNormalizedPositive,
}

impl GameClass {
    pub const ALL: [GameClass; 7] = [
        GameClass::Monotone,
        GameClass::Superadditive,
        GameClass::Convex,
        GameClass::Positive,
        GameClass::MonotoneSuperadditive,
        GameClass::MonotoneConvex,
        GameClass::ZeroNormalizedPositive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GameClass::Monotone => "monotone",
            GameClass::Superadditive => "superadditive",
            GameClass::Convex => "convex",
            GameClass::Positive => "positive",
            GameClass::MonotoneSuperadditive => "monotone-superadditive",
            GameClass::MonotoneConvex => "monotone-convex",
            GameClass::ZeroNormalizedPositive => "zero-normalized-positive",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        GameClass::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Whether a complete game belongs to the class.
    pub fn contains(self, game: &TUGame) -> bool {
        match self {
            GameClass::Monotone => is_monotone(game),
            GameClass::Superadditive => is_superadditive(game),
            GameClass::Convex => is_convex(game),
            GameClass::Positive => is_positive(&mobius_forward(game)),
            GameClass::MonotoneSuperadditive => is_monotone(game) && is_superadditive(game),
            GameClass::MonotoneConvex => is_monotone(game) && is_convex(game),
            GameClass::ZeroNormalizedPositive => {
                (0..game.n()).all(|k| game.value(Coalition::singleton(k)).is_zero())
                    && is_positive(&mobius_forward(game))
            }
        }
    }
}

impl fmt::Display for GameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A complete game: a worth for every coalition, `v(∅) = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TUGame {
    n: usize,
    // indexed by mask; slot 0 is always zero
    values: Vec<Rational>,
}

impl TUGame {
    pub fn zero(n: usize) -> Result<Self> {
        check_players(n)?;
        Ok(TUGame {
            n,
            values: vec![Rational::zero(); 1 << n],
        })
    }

    /// Builds a game from `f(S)` for every nonempty `S`.
    pub fn from_fn(n: usize, mut f: impl FnMut(Coalition) -> Rational) -> Result<Self> {
        check_players(n)?;
        let mut values = Vec::with_capacity(1 << n);
        values.push(Rational::zero());
        values.extend(Coalition::all_nonempty(n).map(&mut f));
        Ok(TUGame { n, values })
    }

    /// Values for the nonempty coalitions in ascending mask order.
    pub fn from_values(n: usize, values: Vec<Rational>) -> Result<Self> {
        check_players(n)?;
        if values.len() + 1 != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: (1 << n) - 1,
                got: values.len(),
            });
        }
        let mut all = Vec::with_capacity(1 << n);
        all.push(Rational::zero());
        all.extend(values);
        Ok(TUGame { n, values: all })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, s: Coalition) -> &Rational {
        &self.values[s.index()]
    }

    /// Sets `v(S)`; `S = ∅` is rejected.
    pub fn set(&mut self, s: Coalition, value: Rational) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        if !s.fits(self.n) {
            return Err(Error::CoalitionOutOfRange {
                mask: s.mask(),
                n: self.n,
            });
        }
        self.values[s.index()] = value;
        Ok(())
    }

    pub fn grand(&self) -> &Rational {
        &self.values[self.values.len() - 1]
    }

    /// Worths of the nonempty coalitions, ascending mask order.
    pub fn coordinates(&self) -> &[Rational] {
        &self.values[1..]
    }

    pub fn scale(&self, factor: &Rational) -> TUGame {
        TUGame {
            n: self.n,
            values: self.values.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn add(&self, other: &TUGame) -> TUGame {
        assert_eq!(self.n, other.n, "player counts differ");
        TUGame {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for TUGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for s in Coalition::all_nonempty(self.n) {
            m.entry(&s, &crate::rational::format(self.value(s)));
        }
        m.finish()
    }
}

/// Möbius coefficients `m(T)` of a game, one per nonempty coalition.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MobiusVector {
    n: usize,
    coeffs: Vec<Rational>,
}

impl MobiusVector {
    pub fn from_fn(n: usize, mut f: impl FnMut(Coalition) -> Rational) -> Result<Self> {
        check_players(n)?;
        let mut coeffs = Vec::with_capacity(1 << n);
        coeffs.push(Rational::zero());
        coeffs.extend(Coalition::all_nonempty(n).map(&mut f));
        Ok(MobiusVector { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, t: Coalition) -> &Rational {
        &self.coeffs[t.index()]
    }

    pub fn nonempty(&self) -> impl Iterator<Item = (Coalition, &Rational)> {
        Coalition::all_nonempty(self.n).map(move |t| (t, &self.coeffs[t.index()]))
    }
}

/// In-place subset-sum (zeta) transform; `sign = -1` gives the Möbius transform.
fn subset_transform(values: &mut [Rational], n: usize, negate: bool) {
    for j in 0..n {
        let bit = 1usize << j;
        for mask in 0..values.len() {
            if mask & bit != 0 {
                let lower = values[mask ^ bit].clone();
                if negate {
                    values[mask] -= lower;
                } else {
                    values[mask] += lower;
                }
            }
        }
    }
}

pub fn mobius_forward(game: &TUGame) -> MobiusVector {
    let mut coeffs = game.values.clone();
    subset_transform(&mut coeffs, game.n, true);
    MobiusVector { n: game.n, coeffs }
}

pub fn mobius_inverse(m: &MobiusVector) -> TUGame {
    let mut values = m.coeffs.clone();
    values[0] = Rational::zero();
    subset_transform(&mut values, m.n, false);
    TUGame { n: m.n, values }
}

pub fn unanimity_game(n: usize, t: Coalition) -> Result<TUGame> {
    if t.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    if !t.fits(n) {
        return Err(Error::CoalitionOutOfRange { mask: t.mask(), n });
    }
    TUGame::from_fn(n, |s| {
        if t.is_subset_of(s) {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// `v(T∖j) ≤ v(T)` for every covering pair.
pub fn is_monotone(game: &TUGame) -> bool {
    Coalition::all_nonempty(game.n).all(|t| t.players().all(|j| game.value(t.without(j)) <= game.value(t)))
}

pub fn is_superadditive(game: &TUGame) -> bool {
    let grand = Coalition::grand(game.n);
    Coalition::all_nonempty(game.n).all(|s| {
        // T ranges over nonempty subsets of N∖S with mask above S to visit each pair once
        grand
            .difference(s)
            .subsets()
            .filter(|t| t.mask() > s.mask())
            .all(|t| game.value(s) + game.value(t) <= *game.value(s.union(t)))
    })
}

/// Supermodularity via the local form
/// `v(S∪j) + v(S∪k) ≤ v(S) + v(S∪{j,k})` for `j, k ∉ S`.
pub fn is_convex(game: &TUGame) -> bool {
    let n = game.n;
    Coalition::all(n).all(|s| {
        (0..n).filter(|&j| !s.contains(j)).all(|j| {
            (j + 1..n).filter(|&k| !s.contains(k)).all(|k| {
                game.value(s.with(j)) + game.value(s.with(k)) <= game.value(s) + game.value(s.with(j).with(k))
            })
        })
    })
}

/// Convexity from Möbius coefficients: every interval sum `Σ_{A⊆T⊆B} m(T)`
/// with `|A| = 2` is nonnegative.
pub fn is_convex_mobius(m: &MobiusVector) -> bool {
    let n = m.n;
    (0..n).all(|j| {
        (j + 1..n).all(|k| {
            let a = Coalition::from_players([j, k]);
            let rest = Coalition::grand(n).difference(a);
            // interval sums over [A : A∪C] for every C, computed as subset sums over rest
            let mut sums: Vec<Rational> = rest.subsets().map(|c| m.coeff(a.union(c)).clone()).collect();
            let players: Vec<usize> = rest.players().collect();
            for (bit_pos, _) in players.iter().enumerate() {
                let bit = 1usize << bit_pos;
                for idx in 0..sums.len() {
                    if idx & bit != 0 {
                        let lower = sums[idx ^ bit].clone();
                        sums[idx] += lower;
                    }
                }
            }
            sums.iter().all(|x| !x.is_negative())
        })
    })
}

pub fn is_positive(m: &MobiusVector) -> bool {
    m.nonempty().all(|(_, c)| !c.is_negative())
}

/// Upper vector `b_i = v(N) − v(N∖i)`.
pub fn upper_vector(game: &TUGame) -> Vec<Rational> {
    let grand = Coalition::grand(game.n);
    (0..game.n)
        .map(|i| game.grand() - game.value(grand.without(i)))
        .collect()
}

/// Gap function `g(S) = b(S) − v(S)`.
pub fn gap(game: &TUGame, s: Coalition) -> Rational {
    let b = upper_vector(game);
    gap_with(&b, game, s)
}

pub(crate) fn gap_with(b: &[Rational], game: &TUGame, s: Coalition) -> Rational {
    let bs: Rational = s.players().map(|j| &b[j]).sum();
    bs - game.value(s)
}

/// Lower vector `a_i = max_{S∋i} v(S) − b(S∖i)` (concession reading).
pub fn lower_vector(game: &TUGame) -> Vec<Rational> {
    let b = upper_vector(game);
    (0..game.n)
        .map(|i| {
            Coalition::all_nonempty(game.n)
                .filter(|s| s.contains(i))
                .map(|s| {
                    let rest: Rational = s.without(i).players().map(|j| &b[j]).sum();
                    game.value(s) - rest
                })
                .max()
                .expect("the singleton {i} always qualifies")
        })
        .collect()
}

/// Smallest family containing `known` that is closed under `∪` and `∩`.
pub fn lattice_closure(n: usize, known: &BTreeSet<Coalition>) -> BTreeSet<Coalition> {
    debug_assert!(known.iter().all(|s| s.fits(n)));
    let mut closure = known.clone();
    loop {
        let items: Vec<Coalition> = closure.iter().copied().collect();
        let mut added = false;
        for (k, &s) in items.iter().enumerate() {
            for &t in &items[k + 1..] {
                added |= closure.insert(s.union(t));
                added |= closure.insert(s.intersection(t));
            }
        }
        if !added {
            return closure;
        }
    }
}
