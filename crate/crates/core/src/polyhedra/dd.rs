//! Double description method for pointed cones `{y : E y = 0, A y ≥ 0}` over
//! the integers.
//!
//! Generators start as the lines `e_1, …, e_d`. Each equality removes a line;
//! each inequality either turns a line into a ray or splits the current rays
//! by sign and combines adjacent positive/negative pairs. Adjacency uses the
//! combinatorial test on zero sets.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::rational::primitive;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// `alpha·g − beta·l`, reduced to a primitive vector.
fn combine(alpha: &BigInt, g: &[BigInt], beta: &BigInt, l: &[BigInt]) -> Vec<BigInt> {
    primitive(g.iter().zip(l).map(|(x, y)| alpha * x - beta * y).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(bits: usize) -> Self {
        ZeroSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn full_below(bits: usize, k: usize) -> Self {
        let mut z = ZeroSet::new(bits);
        for b in 0..k {
            z.set(b);
        }
        z
    }

    fn set(&mut self, b: usize) {
        self.0[b / 64] |= 1 << (b % 64);
    }

    fn and(&self, other: &Self) -> Self {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    z: ZeroSet,
}

/// Extreme rays of the cone, or `Err(l)` when a lineality space of
/// dimension `l > 0` remains.
pub(crate) fn extreme_rays(
    dim: usize,
    eqs: &[Vec<BigInt>],
    ineqs: &[Vec<BigInt>],
) -> Result<Vec<Vec<BigInt>>, usize> {
    let mut lines: Vec<Vec<BigInt>> = (0..dim)
        .map(|j| {
            let mut e = vec![BigInt::zero(); dim];
            e[j] = BigInt::one();
            e
        })
        .collect();

    let mut eq_rank = 0;
    for e in eqs {
        let Some(idx) = lines.iter().position(|l| !dot(e, l).is_zero()) else {
            continue;
        };
        let l = lines.remove(idx);
        let el = dot(e, &l);
        for g in &mut lines {
            let eg = dot(e, g);
            if !eg.is_zero() {
                *g = combine(&el, g, &eg, &l);
            }
        }
        eq_rank += 1;
    }

    let bits = ineqs.len();
    let mut rays: Vec<Ray> = Vec::new();
    for (k, a) in ineqs.iter().enumerate() {
        if let Some(idx) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lines.remove(idx);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -&*x);
                al = -al;
            }
            for g in &mut lines {
                let ag = dot(a, g);
                if !ag.is_zero() {
                    *g = combine(&al, g, &ag, &l);
                }
            }
            for r in &mut rays {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&al, &r.v, &ar, &l);
                }
                r.z.set(k);
            }
            rays.push(Ray {
                v: l,
                z: ZeroSet::full_below(bits, k),
            });
            continue;
        }

        let signs: Vec<BigInt> = rays.par_iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&r| signs[r].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&r| signs[r].is_negative()).collect();
        if neg.is_empty() {
            for (r, s) in rays.iter_mut().zip(&signs) {
                if s.is_zero() {
                    r.z.set(k);
                }
            }
            continue;
        }
        let threshold = (dim - eq_rank - lines.len()).saturating_sub(2);
        let old = &rays;
        let signs = &signs;
        let combos: Vec<Ray> = pos
            .par_iter()
            .flat_map_iter(|&p| {
                neg.iter().filter_map(move |&n| {
                    let z = old[p].z.and(&old[n].z);
                    if z.count() < threshold {
                        return None;
                    }
                    let blocked = old
                        .iter()
                        .enumerate()
                        .any(|(r, ray)| r != p && r != n && z.is_subset_of(&ray.z));
                    if blocked {
                        return None;
                    }
                    let v = combine(&signs[p], &old[n].v, &signs[n], &old[p].v);
                    let mut z = z;
                    z.set(k);
                    Some(Ray { v, z })
                })
            })
            .collect();

        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + combos.len());
        for (mut r, s) in std::mem::take(&mut rays).into_iter().zip(signs) {
            if s.is_positive() {
                next.push(r);
            } else if s.is_zero() {
                r.z.set(k);
                next.push(r);
            }
        }
        next.extend(combos);
        rays = next;
    }

    if !lines.is_empty() {
        return Err(lines.len());
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn sorted(mut rays: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
        rays.sort();
        rays
    }

    #[test]
    fn octant() {
        let rays = extreme_rays(3, &[], &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(sorted(rays), vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]);
    }

    #[test]
    fn square_pyramid() {
        // cone over the square [-1,1]² at height 1
        let ineqs = [v(&[1, 0, 1]), v(&[-1, 0, 1]), v(&[0, 1, 1]), v(&[0, -1, 1])];
        let rays = extreme_rays(3, &[], &ineqs).unwrap();
        assert_eq!(
            sorted(rays),
            vec![v(&[-1, -1, 1]), v(&[-1, 1, 1]), v(&[1, -1, 1]), v(&[1, 1, 1])]
        );
    }

    #[test]
    fn equality_and_lineality() {
        let rays = extreme_rays(3, &[v(&[1, 1, 1])], &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        assert_eq!(sorted(rays), vec![v(&[0, 1, -1]), v(&[1, 0, -1])]);
        assert_eq!(extreme_rays(2, &[], &[v(&[1, 0])]), Err(1));
        assert_eq!(extreme_rays(0, &[], &[]), Ok(vec![]));
    }
}
