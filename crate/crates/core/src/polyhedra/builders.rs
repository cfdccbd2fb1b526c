//! Extension sets and their recession cones as H-polyhedra.
//!
//! Full systems live in `ℝ^{2ⁿ−1}` with coordinate `mask − 1` for each
//! nonempty coalition. Reduced cones live in `ℝ^{K^c}` with the coalitions of
//! `K^c` in ascending mask order.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{extreme_ray_enumeration, remove_redundant, HPolyhedron};
use crate::error::{Error, Result};
use crate::extensions::{ray_es0, ray_neg_unanimity};
use crate::game_core::{Coalition, GameClass, TUGame};
use crate::incomplete::{unknown_coalitions, PlayerCentered};
use crate::rational::Rational;

pub fn coordinates_of(game: &TUGame) -> Vec<Rational> {
    game.coordinates().to_vec()
}

pub fn game_from_coordinates(n: usize, x: &[Rational]) -> Result<TUGame> {
    TUGame::from_values(n, x.to_vec())
}

/// Lifts a point of `ℝ^{K^c}` to the game that is zero on `K`.
pub fn embed_reduced(n: usize, center: usize, r: &[Rational]) -> Result<TUGame> {
    let unknown = unknown_coalitions(n, center);
    if r.len() != unknown.len() {
        return Err(Error::DimensionMismatch {
            expected: unknown.len(),
            got: r.len(),
        });
    }
    let pos: BTreeMap<Coalition, usize> = unknown.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    TUGame::from_fn(n, |s| pos.get(&s).map_or_else(Rational::zero, |&k| r[k].clone()))
}

/// Sparse row builder: `Σ coef · w(S)` with `w(∅) = 0` dropped.
struct Row<'a> {
    dim: usize,
    index: &'a dyn Fn(Coalition) -> Option<usize>,
    coeffs: Vec<Rational>,
}

impl<'a> Row<'a> {
    fn new(dim: usize, index: &'a dyn Fn(Coalition) -> Option<usize>) -> Self {
        Row {
            dim,
            index,
            coeffs: vec![Rational::zero(); dim],
        }
    }

    fn add(mut self, s: Coalition, c: i64) -> Self {
        if let Some(k) = (self.index)(s) {
            self.coeffs[k] += Rational::from_integer(c.into());
        }
        self
    }

    fn done(self) -> Vec<Rational> {
        debug_assert_eq!(self.coeffs.len(), self.dim);
        self.coeffs
    }
}

fn full_index(s: Coalition) -> Option<usize> {
    (!s.is_empty()).then(|| s.index() - 1)
}

fn add_mobius_rows(p: &mut HPolyhedron, n: usize) {
    let dim = p.dim();
    for t in Coalition::all_nonempty(n) {
        // −m(T) ≤ 0
        let row = t.subsets().fold(Row::new(dim, &full_index), |row, s| {
            row.add(s, if (t.size() - s.size()) % 2 == 0 { -1 } else { 1 })
        });
        p.add_inequality(row.done(), Rational::zero());
    }
}

fn add_convex_rows(p: &mut HPolyhedron, n: usize) {
    let dim = p.dim();
    for s in Coalition::all_nonempty(n) {
        for t in Coalition::all_nonempty(n).filter(|t| t.mask() > s.mask()) {
            if s.is_subset_of(t) || t.is_subset_of(s) {
                continue;
            }
            let row = Row::new(dim, &full_index)
                .add(s, 1)
                .add(t, 1)
                .add(s.intersection(t), -1)
                .add(s.union(t), -1);
            p.add_inequality(row.done(), Rational::zero());
        }
    }
}

fn add_superadditive_rows(p: &mut HPolyhedron, n: usize) {
    let dim = p.dim();
    for s in Coalition::all_nonempty(n) {
        for t in Coalition::all_nonempty(n).filter(|t| t.mask() > s.mask() && t.is_disjoint(s)) {
            let row = Row::new(dim, &full_index).add(s, 1).add(t, 1).add(s.union(t), -1);
            p.add_inequality(row.done(), Rational::zero());
        }
    }
}

fn add_monotone_rows(p: &mut HPolyhedron, n: usize) {
    let dim = p.dim();
    for t in Coalition::all_nonempty(n) {
        for j in t.players() {
            let row = Row::new(dim, &full_index).add(t.without(j), 1).add(t, -1);
            p.add_inequality(row.done(), Rational::zero());
        }
    }
}

fn unit(dim: usize, k: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); dim];
    e[k] = Rational::one();
    e
}

/// The set of `cls`-extensions of `g` in game coordinates.
pub fn build_extension_polytope(g: &PlayerCentered, cls: GameClass) -> HPolyhedron {
    let n = g.n();
    let dim = (1 << n) - 1;
    let mut p = HPolyhedron::new(dim);
    for s in g.known_nonempty() {
        p.add_equality(unit(dim, s.index() - 1), g.value(s).clone());
    }
    match cls {
        GameClass::Positive => add_mobius_rows(&mut p, n),
        GameClass::ZeroNormalizedPositive => {
            add_mobius_rows(&mut p, n);
            for k in 0..n {
                p.add_equality(unit(dim, Coalition::singleton(k).index() - 1), Rational::zero());
            }
        }
        GameClass::Convex => add_convex_rows(&mut p, n),
        GameClass::Superadditive => add_superadditive_rows(&mut p, n),
        GameClass::Monotone => add_monotone_rows(&mut p, n),
        GameClass::MonotoneSuperadditive => {
            add_superadditive_rows(&mut p, n);
            add_monotone_rows(&mut p, n);
        }
        GameClass::MonotoneConvex => {
            add_convex_rows(&mut p, n);
            add_monotone_rows(&mut p, n);
        }
    }
    p.deduplicated()
}

/// Recession cone of the convex or superadditive extension set of any
/// `center`-centered game, projected to `ℝ^{K^c}`.
///
/// For convex extensions the rows are
/// `w(S∖j) + w(S∖k) − w(S∖{j,k}) − w(S) ≤ 0` for `S ∈ K^c`, `|S| > 2`;
/// `w(j) + w(k) − w(jk) ≤ 0`; `w(j) ≤ 0`; and `w(S) − w(S∖j) ≤ 0` for `|S| > 1`.
/// For superadditive extensions they are `w(S) ≤ 0` and
/// `w(S) + w(T) − w(S∪T) ≤ 0` for disjoint `S, T ∈ K^c`.
pub fn reduce_recession_cone(n: usize, center: usize, cls: GameClass) -> Result<HPolyhedron> {
    crate::game_core::check_players(n)?;
    if center >= n {
        return Err(Error::PlayerOutOfRange { player: center, n });
    }
    let unknown = unknown_coalitions(n, center);
    let pos: BTreeMap<Coalition, usize> = unknown.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let index = |s: Coalition| pos.get(&s).copied();
    let dim = unknown.len();
    let mut c = HPolyhedron::new(dim);
    let others: Vec<usize> = (0..n).filter(|&j| j != center).collect();
    match cls {
        GameClass::Convex => {
            for &s in unknown.iter().filter(|s| s.size() > 2) {
                let members: Vec<usize> = s.players().collect();
                for (a, &j) in members.iter().enumerate() {
                    for &k in &members[a + 1..] {
                        let row = Row::new(dim, &index)
                            .add(s.without(j), 1)
                            .add(s.without(k), 1)
                            .add(s.without(j).without(k), -1)
                            .add(s, -1);
                        c.add_inequality(row.done(), Rational::zero());
                    }
                }
            }
            for (a, &j) in others.iter().enumerate() {
                for &k in &others[a + 1..] {
                    let row = Row::new(dim, &index)
                        .add(Coalition::singleton(j), 1)
                        .add(Coalition::singleton(k), 1)
                        .add(Coalition::from_players([j, k]), -1);
                    c.add_inequality(row.done(), Rational::zero());
                }
            }
            for &j in &others {
                let row = Row::new(dim, &index).add(Coalition::singleton(j), 1);
                c.add_inequality(row.done(), Rational::zero());
            }
            for &s in unknown.iter().filter(|s| s.size() > 1) {
                for j in s.players() {
                    let row = Row::new(dim, &index).add(s, 1).add(s.without(j), -1);
                    c.add_inequality(row.done(), Rational::zero());
                }
            }
        }
        GameClass::Superadditive => {
            for &s in &unknown {
                c.add_inequality(Row::new(dim, &index).add(s, 1).done(), Rational::zero());
            }
            for (a, &s) in unknown.iter().enumerate() {
                for &t in unknown[a + 1..].iter().filter(|t| t.is_disjoint(s)) {
                    let row = Row::new(dim, &index).add(s, 1).add(t, 1).add(s.union(t), -1);
                    c.add_inequality(row.done(), Rational::zero());
                }
            }
        }
        other => return Err(Error::UnsupportedClass(other)),
    }
    Ok(c)
}

/// One column of the extreme-ray count table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub n: usize,
    /// Extreme rays of the superadditive recession cone.
    pub superadditive_rays: usize,
    /// Extreme rays of the convex recession cone.
    pub convex_rays: usize,
    /// Distinct `−u_k` (zero on `K`) among the superadditive rays.
    pub neg_unanimity: usize,
    /// Distinct `e_{S₀}` among the convex rays.
    pub e_s0: usize,
}

fn restricted(n: usize, center: usize, game: &TUGame) -> Vec<Rational> {
    unknown_coalitions(n, center)
        .into_iter()
        .map(|s| game.value(s).clone())
        .collect()
}

/// Counts extreme rays of both recession cones for `n` players (center 0),
/// after LP removal of redundant rows.
pub fn table1_row(n: usize) -> Result<Table1Row> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let center = 0;
    let sup = extreme_ray_enumeration(&remove_redundant(&reduce_recession_cone(
        n,
        center,
        GameClass::Superadditive,
    )?))?;
    let cvx = extreme_ray_enumeration(&remove_redundant(&reduce_recession_cone(
        n,
        center,
        GameClass::Convex,
    )?))?;
    let sup_set: BTreeSet<_> = sup.iter().cloned().collect();
    let cvx_set: BTreeSet<_> = cvx.iter().cloned().collect();

    let mut neg_u = BTreeSet::new();
    for k in (0..n).filter(|&k| k != center) {
        let r = super::canonical_ray(&restricted(n, center, &ray_neg_unanimity(n, center, k)?));
        if sup_set.contains(&r) {
            neg_u.insert(r);
        }
    }
    let mut es = BTreeSet::new();
    for s0 in unknown_coalitions(n, center) {
        let r = super::canonical_ray(&restricted(n, center, &ray_es0(n, center, s0)?));
        if cvx_set.contains(&r) {
            es.insert(r);
        }
    }
    Ok(Table1Row {
        n,
        superadditive_rays: sup.len(),
        convex_rays: cvx.len(),
        neg_unanimity: neg_u.len(),
        e_s0: es.len(),
    })
}
