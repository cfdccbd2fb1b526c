//! Exact H-polyhedra: feasibility, vertex and extreme-ray enumeration,
//! extreme-point certificates and containment.

mod builders;
mod dd;
pub mod exhaustive;
pub mod linalg;
mod lp;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{dot, format, primitive_integer, to_rational_vec, Rational};

pub use builders::{
    build_extension_polytope, coordinates_of, embed_reduced, game_from_coordinates, reduce_recession_cone,
    table1_row, Table1Row,
};
pub use lp::{lp_feasible, maximize, LpOutcome};

/// Default cap on the effective dimension handled by the enumerators.
pub const DEFAULT_DIM_CAP: usize = 15;

/// Environment variable overriding [`DEFAULT_DIM_CAP`].
pub const DIM_CAP_ENV: &str = "COOPGAP_DIM_CAP";

pub fn dimension_cap() -> usize {
    std::env::var(DIM_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

/// One row `coeffs · x (≤ | =) rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    fn integer_form(&self) -> Vec<BigInt> {
        let mut all = self.coeffs.clone();
        all.push(self.rhs.clone());
        primitive_integer(&all)
    }
}

/// `{x : A x ≤ b, E x = f}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    dim: usize,
    inequalities: Vec<Constraint>,
    equalities: Vec<Constraint>,
}

impl HPolyhedron {
    pub fn new(dim: usize) -> Self {
        HPolyhedron {
            dim,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    /// Adds `coeffs · x ≤ rhs`.
    pub fn add_inequality(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.dim, "row length differs from dimension");
        self.inequalities.push(Constraint { coeffs, rhs });
    }

    /// Adds `coeffs · x = rhs`.
    pub fn add_equality(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.dim, "row length differs from dimension");
        self.equalities.push(Constraint { coeffs, rhs });
    }

    pub fn is_homogeneous(&self) -> bool {
        self.inequalities
            .iter()
            .chain(&self.equalities)
            .all(|c| c.rhs.is_zero())
    }

    pub fn satisfies(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.inequalities.iter().all(|c| dot(&c.coeffs, x) <= c.rhs)
            && self.equalities.iter().all(|c| dot(&c.coeffs, x) == c.rhs)
    }

    /// `{d : A d ≤ 0, E d = 0}`.
    pub fn recession_cone(&self) -> HPolyhedron {
        let zero = |c: &Constraint| Constraint {
            coeffs: c.coeffs.clone(),
            rhs: Rational::zero(),
        };
        HPolyhedron {
            dim: self.dim,
            inequalities: self.inequalities.iter().map(zero).collect(),
            equalities: self.equalities.iter().map(zero).collect(),
        }
    }

    /// Rank of the equality rows.
    pub fn equality_rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self.equalities.iter().map(|c| c.coeffs.clone()).collect();
        linalg::rank(&rows, self.dim)
    }

    /// `dim − rank(E)`, the quantity compared against the dimension cap.
    pub fn effective_dim(&self) -> usize {
        self.dim - self.equality_rank()
    }

    /// Copy with rows scaled to primitive integers, trivial rows dropped and
    /// exact duplicates removed.
    pub fn deduplicated(&self) -> HPolyhedron {
        let canon = |rows: &[Constraint], eq: bool| {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for c in rows {
                let mut ints = c.integer_form();
                if eq {
                    // an equality and its negation describe the same hyperplane
                    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
                        if first.is_negative() {
                            ints.iter_mut().for_each(|x| *x = -&*x);
                        }
                    }
                }
                let (coeffs, rhs) = ints.split_at(self.dim);
                if coeffs.iter().all(Zero::is_zero)
                    && (eq && rhs[0].is_zero() || !eq && !rhs[0].is_negative())
                {
                    continue;
                }
                if seen.insert(ints.clone()) {
                    let r = to_rational_vec(&ints);
                    out.push(Constraint {
                        coeffs: r[..self.dim].to_vec(),
                        rhs: r[self.dim].clone(),
                    });
                }
            }
            out
        };
        HPolyhedron {
            dim: self.dim,
            inequalities: canon(&self.inequalities, false),
            equalities: canon(&self.equalities, true),
        }
    }
}

impl fmt::Display for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |c: &Constraint| c.coeffs.iter().map(format).collect::<Vec<_>>().join(" ");
        writeln!(f, "dim {}", self.dim)?;
        for c in &self.equalities {
            writeln!(f, "{} = {}", row(c), format(&c.rhs))?;
        }
        for c in &self.inequalities {
            writeln!(f, "{} <= {}", row(c), format(&c.rhs))?;
        }
        Ok(())
    }
}

/// Vertices and extreme rays; rays are primitive integer vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
}

impl VRep {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl fmt::Display for VRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |x: &[Rational]| x.iter().map(format).collect::<Vec<_>>().join(" ");
        for v in &self.vertices {
            writeln!(f, "v {}", row(v))?;
        }
        for r in &self.rays {
            writeln!(f, "r {}", row(r))?;
        }
        Ok(())
    }
}

/// Canonical direction: primitive integer vector with the same orientation.
pub fn canonical_ray(r: &[Rational]) -> Vec<Rational> {
    to_rational_vec(&primitive_integer(r))
}

fn check_cap(p: &HPolyhedron) -> Result<()> {
    let cap = dimension_cap();
    let eff = p.effective_dim();
    if eff > cap {
        Err(Error::DimensionCap { dim: eff, cap })
    } else {
        Ok(())
    }
}

fn integer_rows(rows: &[Constraint]) -> Vec<Vec<BigInt>> {
    rows.iter().map(Constraint::integer_form).collect()
}

/// Vertices and extreme rays of a pointed polyhedron via double description
/// on its homogenisation `{(x, t) : b t − A x ≥ 0, t ≥ 0, E x = f t}`.
pub fn vertex_enumeration(p: &HPolyhedron) -> Result<VRep> {
    check_cap(p)?;
    let p = p.deduplicated();
    if lp_feasible(&p).is_none() {
        return Ok(VRep::default());
    }
    let d = p.dim;
    // row·(x, t) ≥ 0 with row = (−a, b)
    let mut ineqs: Vec<Vec<BigInt>> = integer_rows(&p.inequalities)
        .into_iter()
        .map(|mut r| {
            r[..d].iter_mut().for_each(|x| *x = -&*x);
            r
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); d + 1];
    t_row[d] = 1.into();
    ineqs.push(t_row);
    let eqs: Vec<Vec<BigInt>> = integer_rows(&p.equalities)
        .into_iter()
        .map(|mut r| {
            r[d] = -&r[d];
            r
        })
        .collect();
    let rays = dd::extreme_rays(d + 1, &eqs, &ineqs).map_err(Error::NotPointed)?;
    let mut vertices = BTreeSet::new();
    let mut directions = BTreeSet::new();
    for r in rays {
        let t = Rational::from_integer(r[d].clone());
        let x = to_rational_vec(&r[..d]);
        if t.is_zero() {
            directions.insert(canonical_ray(&x));
        } else {
            vertices.insert(x.into_iter().map(|c| c / &t).collect::<Vec<_>>());
        }
    }
    Ok(VRep {
        vertices: vertices.into_iter().collect(),
        rays: directions.into_iter().collect(),
    })
}

/// Extreme rays of a pointed cone given by homogeneous rows, sorted.
pub fn extreme_ray_enumeration(c: &HPolyhedron) -> Result<Vec<Vec<Rational>>> {
    if !c.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    check_cap(c)?;
    let c = c.deduplicated();
    let ineqs: Vec<Vec<BigInt>> = integer_rows(&c.inequalities)
        .into_iter()
        .map(|r| r[..c.dim].iter().map(|x| -x).collect())
        .collect();
    let eqs: Vec<Vec<BigInt>> = integer_rows(&c.equalities)
        .into_iter()
        .map(|r| r[..c.dim].to_vec())
        .collect();
    let rays = dd::extreme_rays(c.dim, &eqs, &ineqs).map_err(Error::NotPointed)?;
    let set: BTreeSet<Vec<Rational>> = rays.iter().map(|r| to_rational_vec(r)).collect();
    Ok(set.into_iter().collect())
}

/// Rows binding at `x`: all equalities plus the tight inequalities.
fn binding_rows(p: &HPolyhedron, x: &[Rational]) -> Vec<Vec<Rational>> {
    p.equalities
        .iter()
        .map(|c| c.coeffs.clone())
        .chain(
            p.inequalities
                .iter()
                .filter(|c| dot(&c.coeffs, x) == c.rhs)
                .map(|c| c.coeffs.clone()),
        )
        .collect()
}

/// A point of `P` is extreme iff its binding rows have rank `dim`.
pub fn is_extreme_point(p: &HPolyhedron, x: &[Rational]) -> Result<bool> {
    if !p.satisfies(x) {
        return Err(Error::NotInPolyhedron);
    }
    Ok(linalg::rank(&binding_rows(p, x), p.dim) == p.dim)
}

/// A nonzero direction of a cone is extreme iff its binding rows have rank `dim − 1`.
pub fn is_extreme_ray(c: &HPolyhedron, r: &[Rational]) -> Result<bool> {
    let cone = c.recession_cone();
    if !cone.satisfies(r) || r.iter().all(Zero::is_zero) {
        return Err(Error::NotInPolyhedron);
    }
    Ok(linalg::rank(&binding_rows(&cone, r), c.dim) + 1 == c.dim)
}

/// Whether `Q ⊆ P`, decided row by row with exact LPs over `Q`.
pub fn contains(p: &HPolyhedron, q: &HPolyhedron) -> bool {
    assert_eq!(p.dim, q.dim, "dimensions differ");
    if lp_feasible(q).is_none() {
        return true;
    }
    let at_most = |coeffs: &[Rational], bound: &Rational| match maximize(q, coeffs) {
        LpOutcome::Optimal { value, .. } => value <= *bound,
        _ => false,
    };
    p.inequalities.iter().all(|c| at_most(&c.coeffs, &c.rhs))
        && p.equalities.iter().all(|c| {
            let neg: Vec<Rational> = c.coeffs.iter().map(|x| -x).collect();
            at_most(&c.coeffs, &c.rhs) && at_most(&neg, &-c.rhs.clone())
        })
}

/// Drops every inequality implied by the remaining rows, one LP per row.
pub fn remove_redundant(p: &HPolyhedron) -> HPolyhedron {
    let mut out = p.deduplicated();
    if lp_feasible(&out).is_none() {
        return out;
    }
    let mut k = 0;
    while k < out.inequalities.len() {
        let row = out.inequalities.remove(k);
        let implied = matches!(
            maximize(&out, &row.coeffs),
            LpOutcome::Optimal { ref value, .. } if *value <= row.rhs
        );
        if !implied {
            out.inequalities.insert(k, row);
            k += 1;
        }
    }
    out
}
