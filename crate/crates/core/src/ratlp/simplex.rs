use super::{LinearProgram, LpOutcome, Rational, Relation};
use crate::Result;
use num::{Signed, Zero};

/// Solves `lp` exactly with a dense two-phase simplex and Bland's rule.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    Ok(Tableau::build(lp).solve(lp))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Original,
    Slack,
    Artificial,
}

struct Tableau {
    n: usize,
    kinds: Vec<ColKind>,
    // rows[i] has one entry per column followed by the right-hand side
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.constraints().len();
        let one = Rational::from_integer(1.into());

        // Normalise to a non-negative right-hand side; a negated ≤ row
        // becomes a ≥ row needing a surplus and an artificial.
        let mut normalised = Vec::with_capacity(m);
        for c in lp.constraints() {
            if c.bound.is_negative() {
                let coeffs: Vec<Rational> = c.coeffs.iter().map(|x| -x).collect();
                let ge = c.relation == Relation::Le;
                normalised.push((coeffs, ge, c.relation == Relation::Eq, -&c.bound));
            } else {
                normalised.push((c.coeffs.clone(), false, c.relation == Relation::Eq, c.bound.clone()));
            }
        }

        let mut kinds = vec![ColKind::Original; n];
        let mut slack_col = vec![None; m];
        let mut art_col = vec![None; m];
        for (i, (_, ge, eq, _)) in normalised.iter().enumerate() {
            if !eq {
                slack_col[i] = Some(kinds.len());
                kinds.push(ColKind::Slack);
            }
            if *ge || *eq {
                art_col[i] = Some(kinds.len());
                kinds.push(ColKind::Artificial);
            }
        }
        let width = kinds.len() + 1;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        for (i, (coeffs, ge, _, bound)) in normalised.into_iter().enumerate() {
            let mut row = vec![Rational::zero(); width];
            for (j, a) in coeffs.into_iter().enumerate() {
                row[j] = a;
            }
            if let Some(s) = slack_col[i] {
                row[s] = if ge { -&one } else { one.clone() };
            }
            if let Some(a) = art_col[i] {
                row[a] = one.clone();
                basis.push(a);
            } else {
                basis.push(slack_col[i].expect("≤ row has a slack"));
            }
            row[width - 1] = bound;
            rows.push(row);
        }
        Self { n, kinds, rows, basis }
    }

    fn rhs(&self) -> usize {
        self.kinds.len()
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        let one = Rational::from_integer(1.into());

        if self.kinds.contains(&ColKind::Artificial) {
            let cost: Vec<Rational> =
                self.kinds.iter().map(|k| if *k == ColKind::Artificial { -&one } else { Rational::zero() }).collect();
            let phase = self.run(&cost, |_| true);
            debug_assert!(matches!(phase, Phase::Optimal), "phase one is bounded above by zero");
            if self.value(&cost).is_negative() {
                return LpOutcome::Infeasible;
            }
            self.expel_artificials();
        }

        let mut cost = vec![Rational::zero(); self.kinds.len()];
        cost[..self.n].clone_from_slice(lp.objective());
        let kinds = self.kinds.clone();
        match self.run(&cost, |j| kinds[j] != ColKind::Artificial) {
            Phase::Optimal => {
                let assignment = self.point();
                LpOutcome::Optimal { value: lp.objective_value(&assignment), assignment }
            }
            Phase::Unbounded(col) => {
                let mut ray = vec![Rational::zero(); self.n];
                if col < self.n {
                    ray[col] = one;
                }
                for (i, &b) in self.basis.iter().enumerate() {
                    if b < self.n {
                        ray[b] = -&self.rows[i][col];
                    }
                }
                LpOutcome::Unbounded { feasible_point: self.point(), improving_ray: ray }
            }
        }
    }

    fn point(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n];
        let rhs = self.rhs();
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.rows[i][rhs].clone();
            }
        }
        x
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        let rhs = self.rhs();
        self.basis.iter().enumerate().fold(Rational::zero(), |acc, (i, &b)| acc + &cost[b] * &self.rows[i][rhs])
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        self.basis.iter().enumerate().fold(cost[j].clone(), |acc, (i, &b)| acc - &cost[b] * &self.rows[i][j])
    }

    /// Primal simplex maximising `cost` over the columns accepted by `allowed`.
    /// Bland's rule: lowest-index improving column, and among tied ratios the
    /// row whose basic variable has the lowest index.
    fn run(&mut self, cost: &[Rational], allowed: impl Fn(usize) -> bool) -> Phase {
        let rhs = self.rhs();
        loop {
            let entering = (0..self.kinds.len())
                .filter(|&j| allowed(j) && !self.basis.contains(&j))
                .find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(col) = entering else {
                return Phase::Optimal;
            };

            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Phase::Unbounded(col),
                Some((row, _)) => self.pivot(row, col),
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// After a successful phase one every artificial still in the basis sits
    /// at zero. Pivot each onto a real column, or drop its row when the row
    /// is a linear combination of the others.
    fn expel_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.kinds[self.basis[i]] != ColKind::Artificial {
                i += 1;
                continue;
            }
            let col =
                (0..self.kinds.len()).find(|&j| self.kinds[j] != ColKind::Artificial && !self.rows[i][j].is_zero());
            match col {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
