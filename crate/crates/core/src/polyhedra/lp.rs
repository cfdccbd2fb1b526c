//! Exact two-phase simplex with Bland's rule on a dense rational tableau.

use num_traits::{One, Signed, Zero};

use super::HPolyhedron;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

enum Status {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut d = cost[j].clone();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !cost[b].is_zero() && !row[j].is_zero() {
                d -= &cost[b] * &row[j];
            }
        }
        d
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| !cost[b].is_zero())
            .map(|(r, &b)| &cost[b] * self.rhs(r))
            .sum()
    }

    /// Minimises `cost` over the columns `0..allowed`.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Status {
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_negative());
            let Some(j) = entering else {
                return Status::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return Status::Unbounded,
            }
        }
    }
}

/// Maximises `objective · x` over the polyhedron.
pub fn maximize(p: &HPolyhedron, objective: &[Rational]) -> LpOutcome {
    let d = p.dim();
    let ineqs = p.inequalities();
    let eqs = p.equalities();
    let m = ineqs.len() + eqs.len();
    let slack0 = 2 * d;
    let art0 = slack0 + ineqs.len();

    let needs_art: Vec<bool> = ineqs
        .iter()
        .map(|c| c.rhs.is_negative())
        .chain(eqs.iter().map(|_| true))
        .collect();
    let n_art = needs_art.iter().filter(|&&b| b).count();
    let cols = art0 + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = art0;
    for (k, c) in ineqs.iter().chain(eqs).enumerate() {
        let mut row = vec![Rational::zero(); cols + 1];
        let flip = c.rhs.is_negative();
        let sign = |x: &Rational| if flip { -x.clone() } else { x.clone() };
        for (j, a) in c.coeffs.iter().enumerate() {
            if !a.is_zero() {
                row[j] = sign(a);
                row[d + j] = -sign(a);
            }
        }
        if k < ineqs.len() {
            row[slack0 + k] = sign(&Rational::one());
        }
        row[cols] = sign(&c.rhs);
        if needs_art[k] {
            row[next_art] = Rational::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(slack0 + k);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, cols };

    if n_art > 0 {
        let mut cost = vec![Rational::zero(); cols];
        for x in &mut cost[art0..] {
            *x = Rational::one();
        }
        t.run(&cost, cols);
        if t.objective(&cost).is_positive() {
            return LpOutcome::Infeasible;
        }
        // drive remaining artificials out of the basis at level zero
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= art0 {
                match (0..art0).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(j) => t.pivot(r, j),
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let mut cost = vec![Rational::zero(); cols];
    for (j, c) in objective.iter().enumerate() {
        cost[j] = -c.clone();
        cost[d + j] = c.clone();
    }
    if let Status::Unbounded = t.run(&cost, art0) {
        return LpOutcome::Unbounded;
    }
    let mut y = vec![Rational::zero(); cols];
    for (r, &b) in t.basis.iter().enumerate() {
        y[b] = t.rhs(r).clone();
    }
    let point: Vec<Rational> = (0..d).map(|j| &y[j] - &y[d + j]).collect();
    let value = crate::rational::dot(objective, &point);
    LpOutcome::Optimal { value, point }
}

/// Feasibility with an exact witness point.
pub fn lp_feasible(p: &HPolyhedron) -> Option<Vec<Rational>> {
    match maximize(p, &vec![Rational::zero(); p.dim()]) {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}
