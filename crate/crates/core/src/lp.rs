//! Exact rational linear feasibility.
//!
//! A dense phase-one simplex over `BigRational` with Bland's rule, so it
//! terminates and never depends on a float tolerance. Problem sizes in this
//! crate are a few dozen rows and columns.

use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    NonNegative,
    Free,
}

/// Constraints `A_eq x = b_eq`, `A_le x ≤ b_le` over typed variables.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    vars: Vec<VarKind>,
    eq: Vec<(Vec<Rational>, Rational)>,
    le: Vec<(Vec<Rational>, Rational)>,
}

impl LinearSystem {
    pub fn new(vars: Vec<VarKind>) -> Self {
        LinearSystem {
            vars,
            eq: Vec::new(),
            le: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars.len()
    }

    pub fn add_eq(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.vars.len());
        self.eq.push((row, rhs));
    }

    pub fn add_le(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.vars.len());
        self.le.push((row, rhs));
    }

    /// A point satisfying every constraint, or `None` if there is none.
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        // column layout: one column per NonNegative var, two per Free var,
        // then one slack per `le` row, then one artificial per row.
        let mut col_of = Vec::with_capacity(self.vars.len());
        let mut ncols = 0;
        for kind in &self.vars {
            col_of.push(ncols);
            ncols += match kind {
                VarKind::NonNegative => 1,
                VarKind::Free => 2,
            };
        }
        let structural = ncols;
        ncols += self.le.len();
        let rows = self.eq.len() + self.le.len();
        let art0 = ncols;
        ncols += rows;

        let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(rows);
        let mut rhs: Vec<Rational> = Vec::with_capacity(rows);
        let all = self
            .eq
            .iter()
            .map(|r| (r, None))
            .chain(self.le.iter().enumerate().map(|(k, r)| (r, Some(k))));
        for (r, ((coef, b), slack)) in all.enumerate() {
            let mut row = vec![rational::zero(); ncols];
            for (v, a) in coef.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let c = col_of[v];
                row[c] = a.clone();
                if self.vars[v] == VarKind::Free {
                    row[c + 1] = -a.clone();
                }
            }
            if let Some(k) = slack {
                row[structural + k] = rational::one();
            }
            let mut b = b.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                b = -b;
            }
            row[art0 + r] = rational::one();
            tab.push(row);
            rhs.push(b);
        }
        let mut basis: Vec<usize> = (art0..art0 + rows).collect();

        // reduced costs of the phase-one objective (minimize Σ artificials)
        let mut cost = vec![rational::zero(); ncols];
        let mut obj = rational::zero();
        for (row, b) in tab.iter().zip(&rhs) {
            for (c, x) in row.iter().enumerate().take(art0) {
                if !x.is_zero() {
                    cost[c] -= x;
                }
            }
            obj -= b;
        }

        while let Some(enter) = (0..ncols).find(|&c| cost[c].is_negative()) {
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..rows {
                if !tab[r][enter].is_positive() {
                    continue;
                }
                let ratio = &rhs[r] / &tab[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            // phase one is bounded below by zero
            let (pr, _) = leave.expect("phase-one objective is bounded");
            pivot(&mut tab, &mut rhs, &mut cost, &mut obj, pr, enter);
            basis[pr] = enter;
        }

        if !obj.is_zero() {
            return None;
        }
        let mut values = vec![rational::zero(); ncols];
        for (r, &c) in basis.iter().enumerate() {
            values[c] = rhs[r].clone();
        }
        let x: Vec<Rational> = self
            .vars
            .iter()
            .zip(&col_of)
            .map(|(kind, &c)| match kind {
                VarKind::NonNegative => values[c].clone(),
                VarKind::Free => &values[c] - &values[c + 1],
            })
            .collect();
        debug_assert!(self.satisfied_by(&x));
        Some(x)
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let dot = |row: &[Rational]| -> Rational { row.iter().zip(x).map(|(a, b)| a * b).sum() };
        self.vars
            .iter()
            .zip(x)
            .all(|(k, v)| *k == VarKind::Free || !v.is_negative())
            && self.eq.iter().all(|(row, b)| dot(row) == *b)
            && self.le.iter().all(|(row, b)| dot(row) <= *b)
    }
}

fn pivot(
    tab: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    cost: &mut [Rational],
    obj: &mut Rational,
    pr: usize,
    pc: usize,
) {
    let inv = tab[pr][pc].recip();
    for x in tab[pr].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    rhs[pr] *= &inv;
    let prow = tab[pr].clone();
    let prhs = rhs[pr].clone();
    let nz: Vec<usize> = (0..prow.len()).filter(|&c| !prow[c].is_zero()).collect();
    for (r, row) in tab.iter_mut().enumerate() {
        if r == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for &c in &nz {
            row[c] -= &f * &prow[c];
        }
        rhs[r] -= &f * &prhs;
    }
    if !cost[pc].is_zero() {
        let f = cost[pc].clone();
        for &c in &nz {
            cost[c] -= &f * &prow[c];
        }
        *obj -= &f * &prhs;
    }
}
