//! Brute-force V-representation by enumerating row subsets. Only meant for
//! small effective dimensions, where it cross-checks the double description.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;

use super::{canonical_ray, linalg, HPolyhedron, VRep};
use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

/// Largest effective dimension accepted.
pub const EXHAUSTIVE_CAP: usize = 8;

/// Every vertex solves `E x = f` together with `dim − rank(E)` tight
/// inequalities of full combined rank; every extreme ray of the recession
/// cone spans the kernel of `dim − 1 − rank(E)` such rows.
pub fn vertex_enumeration(p: &HPolyhedron) -> Result<VRep> {
    let d = p.dim();
    let eq_rank = p.equality_rank();
    let eff = d - eq_rank;
    if eff > EXHAUSTIVE_CAP {
        return Err(Error::DimensionCap {
            dim: eff,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let p = p.deduplicated();
    let eq_rows: Vec<Vec<Rational>> = p.equalities().iter().map(|c| c.coeffs.clone()).collect();
    let eq_rhs: Vec<Rational> = p.equalities().iter().map(|c| c.rhs.clone()).collect();
    let ineqs = p.inequalities();

    let mut vertices = BTreeSet::new();
    for subset in (0..ineqs.len()).combinations(eff) {
        let mut rows = eq_rows.clone();
        let mut rhs = eq_rhs.clone();
        for &k in &subset {
            rows.push(ineqs[k].coeffs.clone());
            rhs.push(ineqs[k].rhs.clone());
        }
        if linalg::rank(&rows, d) != d {
            continue;
        }
        if let Some(x) = linalg::solve(&rows, &rhs, d) {
            if p.satisfies(&x) {
                vertices.insert(x);
            }
        }
    }
    if vertices.is_empty() {
        return Ok(VRep::default());
    }

    let mut rays = BTreeSet::new();
    if eff >= 1 {
        let cone = p.recession_cone();
        for subset in (0..ineqs.len()).combinations(eff - 1) {
            let mut rows = eq_rows.clone();
            rows.extend(subset.iter().map(|&k| ineqs[k].coeffs.clone()));
            let kernel = linalg::nullspace(&rows, d);
            if kernel.len() != 1 {
                continue;
            }
            let r = &kernel[0];
            let neg: Vec<Rational> = r.iter().map(|x| -x).collect();
            let fits = |x: &[Rational]| {
                cone.inequalities()
                    .iter()
                    .all(|c| dot(&c.coeffs, x) <= Rational::zero())
            };
            match (fits(r), fits(&neg)) {
                (true, false) => {
                    rays.insert(canonical_ray(r));
                }
                (false, true) => {
                    rays.insert(canonical_ray(&neg));
                }
                (true, true) => return Err(Error::NotPointed(1)),
                (false, false) => {}
            }
        }
    }
    Ok(VRep {
        vertices: vertices.into_iter().collect(),
        rays: rays.into_iter().collect(),
    })
}

/// Extreme rays of a pointed homogeneous cone by row-subset enumeration.
pub fn extreme_ray_enumeration(c: &HPolyhedron) -> Result<Vec<Vec<Rational>>> {
    if !c.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let vr = vertex_enumeration(c)?;
    if vr.vertices.is_empty() {
        // a cone always contains the origin, so no vertex means a lineality space
        let rows: Vec<Vec<Rational>> = c
            .inequalities()
            .iter()
            .chain(c.equalities())
            .map(|r| r.coeffs.clone())
            .collect();
        return Err(Error::NotPointed(c.dim() - linalg::rank(&rows, c.dim())));
    }
    Ok(vr.rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn agrees_with_double_description_on_small_shapes() {
        let mut p = HPolyhedron::new(3);
        for row in [
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 1],
            [-1, 0, 0],
            [0, -1, 0],
            [0, 0, -1],
        ] {
            let rhs = if row.iter().sum::<i64>() == 3 {
                2
            } else if row.iter().sum::<i64>() > 0 {
                1
            } else {
                0
            };
            p.add_inequality(v(&row), int(rhs));
        }
        assert_eq!(
            vertex_enumeration(&p).unwrap(),
            polyhedra::vertex_enumeration(&p).unwrap()
        );

        let mut q = HPolyhedron::new(3);
        q.add_equality(v(&[1, 1, 1]), int(1));
        q.add_inequality(v(&[-1, 0, 0]), int(0));
        q.add_inequality(v(&[0, -1, 0]), int(0));
        let a = vertex_enumeration(&q).unwrap();
        assert_eq!(a, polyhedra::vertex_enumeration(&q).unwrap());
        assert_eq!(a.vertices, vec![v(&[0, 0, 1])]);
        assert_eq!(a.rays.len(), 2);
    }
}
