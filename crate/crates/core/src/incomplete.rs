//! Incomplete games and the player-centered specialisation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game_core::{check_players, lattice_closure, Coalition, TUGame};
use crate::polyhedra::{lp_feasible, HPolyhedron};
use crate::rational::Rational;

/// A game `(N, K, v)` whose worths are known only on the family `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncompleteGame {
    n: usize,
    // indexed by mask; `None` outside K, slot 0 always `Some(0)`
    values: Vec<Option<Rational>>,
}

impl IncompleteGame {
    /// Builds a game from known worths. `∅` may appear only with worth zero.
    pub fn new<I>(n: usize, known: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Coalition, Rational)>,
    {
        check_players(n)?;
        let mut values = vec![None; 1 << n];
        values[0] = Some(Rational::zero());
        for (s, x) in known {
            if !s.fits(n) {
                return Err(Error::CoalitionOutOfRange { mask: s.mask(), n });
            }
            if s.is_empty() && !x.is_zero() {
                return Err(Error::InvalidGame("the empty coalition must have worth 0".into()));
            }
            if !s.is_empty() && values[s.index()].is_some() {
                return Err(Error::InvalidGame(format!("coalition {s} listed twice")));
            }
            values[s.index()] = Some(x);
        }
        Ok(IncompleteGame { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_known(&self, s: Coalition) -> bool {
        s.fits(self.n) && self.values[s.index()].is_some()
    }

    pub fn value(&self, s: Coalition) -> Option<&Rational> {
        self.values.get(s.index()).and_then(Option::as_ref)
    }

    /// The family `K`, `∅` included, ascending mask order.
    pub fn known(&self) -> BTreeSet<Coalition> {
        Coalition::all(self.n).filter(|&s| self.is_known(s)).collect()
    }

    /// Known `(S, v(S))` pairs for nonempty `S`, ascending mask order.
    pub fn known_values(&self) -> impl Iterator<Item = (Coalition, &Rational)> {
        Coalition::all_nonempty(self.n).filter_map(move |s| self.values[s.index()].as_ref().map(|x| (s, x)))
    }
}

/// An incomplete game whose `K` is `{S : i ∈ S} ∪ {∅}` for a center `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerCentered {
    base: IncompleteGame,
    center: usize,
}

impl PlayerCentered {
    /// Builds the game from `f(S)` evaluated on every `S ∋ center`.
    pub fn from_fn(n: usize, center: usize, mut f: impl FnMut(Coalition) -> Rational) -> Result<Self> {
        check_players(n)?;
        if center >= n {
            return Err(Error::PlayerOutOfRange { player: center, n });
        }
        let base = IncompleteGame::new(
            n,
            Coalition::all_nonempty(n)
                .filter(|s| s.contains(center))
                .map(|s| (s, f(s))),
        )?;
        Ok(PlayerCentered { base, center })
    }

    /// Validates that `K` of `base` is exactly the `center`-centered family.
    pub fn from_incomplete(base: IncompleteGame, center: usize) -> Result<Self> {
        let n = base.n();
        if center >= n {
            return Err(Error::PlayerOutOfRange { player: center, n });
        }
        for s in Coalition::all_nonempty(n) {
            if base.is_known(s) != s.contains(center) {
                return Err(Error::InvalidGame(format!(
                    "known coalitions are not centered at player {center} (coalition {s})"
                )));
            }
        }
        Ok(PlayerCentered { base, center })
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn base(&self) -> &IncompleteGame {
        &self.base
    }

    pub fn is_known(&self, s: Coalition) -> bool {
        s.is_empty() || s.contains(self.center)
    }

    /// Worth of a known coalition.
    ///
    /// # Panics
    /// If `S` is not in `K`.
    pub fn value(&self, s: Coalition) -> &Rational {
        self.base
            .value(s)
            .unwrap_or_else(|| panic!("coalition {s} is not known"))
    }

    /// Nonempty members of `K` (all `S ∋ i`), ascending mask order.
    pub fn known_nonempty(&self) -> impl Iterator<Item = Coalition> {
        let i = self.center;
        Coalition::all_nonempty(self.n()).filter(move |s| s.contains(i))
    }

    /// `K^c`: nonempty coalitions avoiding the center, ascending mask order.
    pub fn unknown(&self) -> Vec<Coalition> {
        unknown_coalitions(self.n(), self.center)
    }

    /// Copy with `v(S)` replaced for a known nonempty `S`.
    pub fn with_value(&self, s: Coalition, x: Rational) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        if !s.fits(self.n()) || !s.contains(self.center) {
            return Err(Error::InvalidArgument(format!("coalition {s} is not in K")));
        }
        let mut out = self.clone();
        out.base.values[s.index()] = Some(x);
        Ok(out)
    }

    /// Complete game that agrees with `v` on `K` and with `fill` on `K^c`.
    pub fn complete_with(&self, mut fill: impl FnMut(Coalition) -> Rational) -> TUGame {
        TUGame::from_fn(self.n(), |s| {
            if s.contains(self.center) {
                self.value(s).clone()
            } else {
                fill(s)
            }
        })
        .expect("player count already validated")
    }

    /// Whether a complete game agrees with `v` on `K`.
    pub fn is_extended_by(&self, game: &TUGame) -> bool {
        game.n() == self.n() && self.known_nonempty().all(|s| game.value(s) == self.value(s))
    }
}

pub(crate) fn unknown_coalitions(n: usize, center: usize) -> Vec<Coalition> {
    Coalition::all_nonempty(n)
        .filter(|s| !s.contains(center))
        .collect()
}

/// Projects a complete game onto the `center`-centered family.
pub fn restrict(game: &TUGame, center: usize) -> Result<PlayerCentered> {
    PlayerCentered::from_fn(game.n(), center, |s| game.value(s).clone())
}

/// `m(S) = Σ_{T⊆S, T∈K} (−1)^{|S∖T|} v(T)` for every nonempty `S ∈ K`.
pub fn partial_mobius(g: &PlayerCentered) -> BTreeMap<Coalition, Rational> {
    let i = g.center();
    g.known_nonempty()
        .map(|s| {
            let rest = s.without(i);
            let m = rest
                .subsets()
                .map(|r| {
                    let x = g.value(r.with(i));
                    if (rest.size() - r.size()) % 2 == 0 {
                        x.clone()
                    } else {
                        -x.clone()
                    }
                })
                .sum();
            (s, m)
        })
        .collect()
}

pub fn is_positive_pc(g: &PlayerCentered) -> bool {
    partial_mobius(g).values().all(|m| !m.is_negative())
}

/// Supermodularity over pairs of `K`. Every such pair lies in the sublattice
/// of coalitions containing `i`, so the local form suffices.
pub fn is_convex_pc(g: &PlayerCentered) -> bool {
    let n = g.n();
    g.known_nonempty().all(|s| {
        (0..n).filter(|&j| !s.contains(j)).all(|j| {
            (j + 1..n)
                .filter(|&k| !s.contains(k))
                .all(|k| g.value(s.with(j)) + g.value(s.with(k)) <= g.value(s) + g.value(s.with(j).with(k)))
        })
    })
}

/// Monotonicity over nested pairs of `K`, `∅ ⊆ {i}` included.
pub fn is_monotone_pc(g: &PlayerCentered) -> bool {
    let i = g.center();
    g.known_nonempty().all(|s| {
        if s.size() == 1 {
            !g.value(s).is_negative()
        } else {
            s.players()
                .filter(|&j| j != i)
                .all(|j| g.value(s.without(j)) <= g.value(s))
        }
    })
}

/// Superadditivity over disjoint nonempty pairs of `K`; there are none, since
/// all of them contain the center.
pub fn is_superadditive_pc(g: &PlayerCentered) -> bool {
    let known: Vec<Coalition> = g.known_nonempty().collect();
    known.iter().all(|&s| {
        known
            .iter()
            .filter(|t| t.is_disjoint(s))
            .all(|&t| g.value(s) + g.value(t) <= *g.value(s.union(t)))
    })
}

/// Decides whether a convex `w: F → ℝ` extending `v` exists, where
/// `F = LC(K) ∩ {S : S̲ ⊆ S ⊆ S̄ for some S̲, S̄ ∈ K}`.
///
/// Supermodularity is imposed for the pairs of `F` whose union and
/// intersection also lie in `F`; the check is an exact LP.
pub fn bk2018_feasible(g: &IncompleteGame) -> bool {
    let n = g.n();
    let known = g.known();
    let closure = lattice_closure(n, &known);
    let family: Vec<Coalition> = closure
        .into_iter()
        .filter(|&s| known.iter().any(|lo| lo.is_subset_of(s)) && known.iter().any(|hi| s.is_subset_of(*hi)))
        .collect();
    let index: BTreeMap<Coalition, usize> = family.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let dim = family.len();
    let unit = |s: Coalition| {
        let mut row = vec![Rational::zero(); dim];
        row[index[&s]] = Rational::from_integer(1.into());
        row
    };
    let mut p = HPolyhedron::new(dim);
    for &s in &family {
        if s.is_empty() {
            p.add_equality(unit(s), Rational::zero());
        } else if let Some(x) = g.value(s) {
            p.add_equality(unit(s), x.clone());
        }
    }
    for (a, &s) in family.iter().enumerate() {
        for &t in &family[a + 1..] {
            let (u, m) = (s.union(t), s.intersection(t));
            if u == s || u == t || !index.contains_key(&u) || !index.contains_key(&m) {
                continue;
            }
            // w(S) + w(T) − w(S∪T) − w(S∩T) ≤ 0
            let mut row = vec![Rational::zero(); dim];
            row[index[&s]] += Rational::from_integer(1.into());
            row[index[&t]] += Rational::from_integer(1.into());
            row[index[&u]] -= Rational::from_integer(1.into());
            row[index[&m]] -= Rational::from_integer(1.into());
            p.add_inequality(row, Rational::zero());
        }
    }
    lp_feasible(&p).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game_core::{is_convex, unanimity_game};
    use crate::rational::int;

    fn c(players: &[usize]) -> Coalition {
        Coalition::from_players(players.iter().copied())
    }

    fn g3() -> PlayerCentered {
        PlayerCentered::from_fn(3, 0, |s| match s.mask() {
            0b001 => int(0),
            0b011 | 0b101 => int(1),
            _ => int(3),
        })
        .unwrap()
    }

    #[test]
    fn centered_family_shape() {
        let g = g3();
        assert_eq!(g.unknown(), vec![c(&[1]), c(&[2]), c(&[1, 2])]);
        assert_eq!(g.known_nonempty().count(), 4);
        assert_eq!(g.base().known().len(), 5);
        for n in 1..=6 {
            let g = PlayerCentered::from_fn(n, n - 1, |_| int(0)).unwrap();
            assert_eq!(g.unknown().len(), (1 << (n - 1)) - 1);
            assert_eq!(g.base().known().len(), (1 << (n - 1)) + 1);
        }
        assert!(PlayerCentered::from_fn(3, 3, |_| int(0)).is_err());
    }

    #[test]
    fn from_incomplete_validates_family() {
        let ok = IncompleteGame::new(2, [(c(&[0]), int(1)), (c(&[0, 1]), int(2))]).unwrap();
        assert!(PlayerCentered::from_incomplete(ok.clone(), 0).is_ok());
        assert!(PlayerCentered::from_incomplete(ok, 1).is_err());
        assert!(IncompleteGame::new(2, [(Coalition::EMPTY, int(1))]).is_err());
        assert!(IncompleteGame::new(2, [(c(&[2]), int(1))]).is_err());
    }

    #[test]
    fn restrict_examples() {
        let u = unanimity_game(3, Coalition::grand(3)).unwrap();
        let g = restrict(&u, 0).unwrap();
        for s in g.known_nonempty() {
            assert_eq!(g.value(s), &int((s == Coalition::grand(3)) as i64));
        }
        let full = g3().complete_with(|_| int(0));
        assert_eq!(restrict(&full, 0).unwrap(), g3());
        assert!(restrict(&full, 5).is_err());
    }

    #[test]
    fn partial_mobius_examples() {
        let m = partial_mobius(&g3());
        assert_eq!(m[&c(&[0])], int(0));
        assert_eq!(m[&c(&[0, 1])], int(1));
        assert_eq!(m[&c(&[0, 2])], int(1));
        assert_eq!(m[&c(&[0, 1, 2])], int(1));

        for t in Coalition::all_nonempty(4).filter(|t| t.contains(1)) {
            let g = restrict(&unanimity_game(4, t).unwrap(), 1).unwrap();
            for (s, x) in partial_mobius(&g) {
                assert_eq!(x, int((s == t) as i64));
            }
        }
        let zero = PlayerCentered::from_fn(4, 2, |_| int(0)).unwrap();
        assert!(partial_mobius(&zero).values().all(Zero::is_zero));
    }

    #[test]
    fn partial_mobius_sums_back() {
        let g = PlayerCentered::from_fn(4, 1, |s| int((s.mask() * 7 % 11) as i64 - 3)).unwrap();
        let m = partial_mobius(&g);
        for s in g.known_nonempty() {
            let total: Rational = m.iter().filter(|(t, _)| t.is_subset_of(s)).map(|(_, x)| x).sum();
            assert_eq!(&total, g.value(s));
        }
    }

    #[test]
    fn predicates_on_fixture() {
        let g = g3();
        assert!(is_positive_pc(&g));
        assert!(is_convex_pc(&g));
        assert!(is_monotone_pc(&g));
        assert!(is_superadditive_pc(&g));

        let low = g.with_value(Coalition::grand(3), int(1)).unwrap();
        assert_eq!(partial_mobius(&low)[&Coalition::grand(3)], int(-1));
        assert!(!is_positive_pc(&low));

        let nc = g
            .with_value(c(&[0, 1]), int(2))
            .unwrap()
            .with_value(c(&[0, 2]), int(2))
            .unwrap();
        assert!(!is_convex_pc(&nc));

        let nm = g.with_value(Coalition::grand(3), int(0)).unwrap();
        assert!(!is_monotone_pc(&nm));
        assert!(is_superadditive_pc(&nm));
        let neg = g.with_value(c(&[0]), int(-1)).unwrap();
        assert!(!is_monotone_pc(&neg));
    }

    #[test]
    fn restriction_of_convex_game_is_convex() {
        let v = TUGame::from_fn(4, |s| int((s.size() * s.size()) as i64)).unwrap();
        assert!(is_convex(&v));
        for i in 0..4 {
            assert!(is_convex_pc(&restrict(&v, i).unwrap()));
        }
    }

    #[test]
    fn bk2018_examples() {
        assert!(bk2018_feasible(g3().base()));
        let nc = g3()
            .with_value(c(&[0, 1]), int(2))
            .unwrap()
            .with_value(c(&[0, 2]), int(2))
            .unwrap();
        assert!(!bk2018_feasible(nc.base()));
        for x in [-5, 0, 7] {
            let chain = IncompleteGame::new(3, [(Coalition::grand(3), int(x))]).unwrap();
            assert!(bk2018_feasible(&chain));
        }
    }
}
