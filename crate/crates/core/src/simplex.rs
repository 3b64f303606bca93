//! Dense two-phase primal simplex over the rationals.
//!
//! Solves `max c·x` subject to `A x = b`, `x ≥ 0`. Pivoting follows Bland's
//! rule (lowest-index entering column, lowest-index leaving variable on ratio
//! ties), so the method terminates and is fully deterministic. Problems in this
//! crate have at most a few dozen rows and a few thousand columns, which a
//! dense tableau handles comfortably.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{q, Q};

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Q>,
    pub objective: Q,
    /// Optimal dual `y` (one entry per row of `A`): `Aᵀy ≥ c` and `b·y = objective`.
    pub dual: Vec<Q>,
    pub basis: Vec<usize>,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    active: Vec<bool>,
    reduced: Vec<Q>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, s: usize) {
        let inv = self.rows[r][s].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        let (prow, prhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || !self.active[i] || self.rows[i][s].is_zero() {
                continue;
            }
            let f = self.rows[i][s].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
            self.rhs[i] -= &prhs * &f;
        }
        let f = self.reduced[s].clone();
        if !f.is_zero() {
            for (x, p) in self.reduced.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= p * &f;
                }
            }
        }
        self.basis[r] = s;
    }

    /// Runs Bland pivots over columns `< limit` until optimal. Returns `false`
    /// if the objective is unbounded.
    fn optimise(&mut self, limit: usize) -> bool {
        loop {
            let Some(s) = (0..limit).find(|&j| self.reduced[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                if !self.active[i] || !self.rows[i][s].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][s];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, s),
                None => return false,
            }
        }
    }
}

/// Maximises `c·x` subject to `a x = b`, `x ≥ 0`.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }

    // phase 1: artificial basis on sign-normalised rows
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Q> = a[i]
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        row.extend((0..m).map(|k| q((k == i) as i64)));
        rows.push(row);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let mut reduced = vec![Q::zero(); n + m];
    for row in &rows {
        for (d, x) in reduced.iter_mut().zip(&row[..n]) {
            *d += x;
        }
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        active: vec![true; m],
        reduced,
    };
    t.optimise(n);
    let infeasibility: Q = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&bv, _)| bv >= n)
        .fold(Q::zero(), |acc, (_, v)| acc + v);
    if infeasibility.is_positive() {
        return Err(Error::Infeasible);
    }

    // drive remaining artificials out, dropping rows that are redundant
    for i in 0..m {
        if t.basis[i] < n {
            continue;
        }
        match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
            Some(j) => t.pivot(i, j),
            None => t.active[i] = false,
        }
    }

    // phase 2
    let mut reduced: Vec<Q> = c.to_vec();
    reduced.extend((0..m).map(|_| Q::zero()));
    for i in 0..m {
        if !t.active[i] {
            continue;
        }
        let cb = &c[t.basis[i]];
        if cb.is_zero() {
            continue;
        }
        for (d, x) in reduced.iter_mut().zip(&t.rows[i]) {
            if !x.is_zero() {
                *d -= x * cb;
            }
        }
    }
    t.reduced = reduced;
    if !t.optimise(n) {
        return Err(Error::Unbounded);
    }

    let mut x = vec![Q::zero(); n];
    for i in 0..m {
        if t.active[i] {
            x[t.basis[i]] = t.rhs[i].clone();
        }
    }
    let objective = x
        .iter()
        .zip(c)
        .fold(Q::zero(), |acc, (xi, ci)| acc + xi * ci);

    // dual from the final basis: yᵀ A_B = c_B on the active rows
    let act: Vec<usize> = (0..m).filter(|&i| t.active[i]).collect();
    let basis: Vec<usize> = act.iter().map(|&i| t.basis[i]).collect();
    let bt: linalg::Matrix = basis
        .iter()
        .map(|&j| act.iter().map(|&r| a[r][j].clone()).collect())
        .collect();
    let cb: Vec<Q> = basis.iter().map(|&j| c[j].clone()).collect();
    let y_act = if act.is_empty() {
        Vec::new()
    } else {
        linalg::solve(&bt, &cb).expect("final basis is nonsingular")
    };
    let mut dual = vec![Q::zero(); m];
    for (k, &r) in act.iter().enumerate() {
        dual[r] = y_act[k].clone();
    }
    Ok(LpSolution {
        x,
        objective,
        dual,
        basis,
    })
}

/// Any feasible point of `a x = b`, `x ≥ 0`.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.first().map_or(0, Vec::len);
    match maximize(a, b, &vec![Q::zero(); n]) {
        Ok(sol) => Some(sol.x),
        Err(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::to_matrix;
    use crate::rational::{qf, qvec};

    #[test]
    fn small_lp_with_known_optimum() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = to_matrix(&[vec![1, 2, 1, 0], vec![3, 1, 0, 1]]);
        let sol = maximize(&a, &qvec(&[4, 6]), &qvec(&[1, 1, 0, 0])).unwrap();
        assert_eq!(sol.objective, qf(14, 5));
        assert_eq!(sol.x[..2], [qf(8, 5), qf(6, 5)]);
        // strong duality
        assert_eq!(&sol.dual[0] * q(4) + &sol.dual[1] * q(6), sol.objective);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = to_matrix(&[vec![1, 1]]);
        assert_eq!(
            maximize(&a, &qvec(&[-1]), &qvec(&[0, 0])),
            Err(Error::Infeasible)
        );
        let a = to_matrix(&[vec![1, -1]]);
        assert_eq!(
            maximize(&a, &qvec(&[1]), &qvec(&[1, 0])),
            Err(Error::Unbounded)
        );
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = to_matrix(&[vec![1, 1], vec![2, 2]]);
        let sol = maximize(&a, &qvec(&[1, 2]), &qvec(&[1, 2])).unwrap();
        assert_eq!(sol.objective, q(2));
        assert_eq!(sol.dual[1], q(0));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the textbook largest-coefficient rule
        let a = vec![
            vec![qf(1, 4), q(-60), qf(-1, 25), q(9), q(1), q(0), q(0)],
            vec![qf(1, 2), q(-90), qf(-1, 50), q(3), q(0), q(1), q(0)],
            vec![q(0), q(0), q(1), q(0), q(0), q(0), q(1)],
        ];
        let c = vec![qf(3, 4), q(-150), qf(1, 50), q(-6), q(0), q(0), q(0)];
        let sol = maximize(&a, &qvec(&[0, 0, 1]), &c).unwrap();
        assert_eq!(sol.objective, qf(1, 20));
    }
}
