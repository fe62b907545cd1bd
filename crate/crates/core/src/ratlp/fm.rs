use super::{Constraint, Rational, Relation};
use crate::{Error, Result};
use num::{Signed, Zero};
use std::collections::BTreeMap;

/// Exact feasibility of a system of `≤`, `<` and `=` rows by Fourier–Motzkin
/// elimination. Variables are free; add [`super::nonneg_rows`] for `x ≥ 0`.
///
/// Equalities are eliminated first by substitution, then each remaining
/// variable is projected out of the inequalities. Exponential in the worst
/// case, which is fine for the small systems it is used on.
pub fn fm_feasible(num_vars: usize, constraints: &[Constraint]) -> Result<bool> {
    for (i, c) in constraints.iter().enumerate() {
        if c.coeffs.len() != num_vars {
            return Err(Error::MalformedProgram(format!(
                "constraint {i} has length {}, expected {num_vars}",
                c.coeffs.len()
            )));
        }
    }

    let mut eqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut ineqs: Vec<Row> = Vec::new();
    for c in constraints {
        match c.relation {
            Relation::Eq => eqs.push((c.coeffs.clone(), c.bound.clone())),
            Relation::Le => ineqs.push(Row { coeffs: c.coeffs.clone(), strict: false, bound: c.bound.clone() }),
            Relation::Lt => ineqs.push(Row { coeffs: c.coeffs.clone(), strict: true, bound: c.bound.clone() }),
        }
    }

    // Gaussian substitution for equalities.
    while let Some((coeffs, bound)) = eqs.pop() {
        let Some(k) = coeffs.iter().position(|a| !a.is_zero()) else {
            if !bound.is_zero() {
                return Ok(false);
            }
            continue;
        };
        let pivot = coeffs[k].clone();
        let substitute = |row: &mut Vec<Rational>, b: &mut Rational| {
            if row[k].is_zero() {
                return;
            }
            let factor = &row[k] / &pivot;
            for (x, a) in row.iter_mut().zip(&coeffs) {
                *x -= &factor * a;
            }
            *b -= &factor * &bound;
        };
        for (row, b) in eqs.iter_mut() {
            substitute(row, b);
        }
        for row in ineqs.iter_mut() {
            substitute(&mut row.coeffs, &mut row.bound);
        }
    }

    let mut rows = normalise(ineqs);
    loop {
        if rows.iter().any(Row::is_contradiction) {
            return Ok(false);
        }
        rows.retain(|r| !r.is_trivial());
        // Project out the variable producing the fewest new rows.
        let best = (0..num_vars)
            .filter_map(|k| {
                let pos = rows.iter().filter(|r| r.coeffs[k].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[k].is_negative()).count();
                (pos + neg > 0).then_some((pos * neg, pos + neg, k))
            })
            .min();
        let Some((_, _, k)) = best else {
            return Ok(true);
        };
        rows = eliminate(rows, k);
    }
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<Rational>,
    strict: bool,
    bound: Rational,
}

impl Row {
    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn is_contradiction(&self) -> bool {
        self.is_constant() && (self.bound.is_negative() || (self.strict && self.bound.is_zero()))
    }

    fn is_trivial(&self) -> bool {
        self.is_constant() && !self.is_contradiction()
    }
}

fn eliminate(rows: Vec<Row>, k: usize) -> Vec<Row> {
    let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.coeffs[k].is_positive() {
            pos.push(r);
        } else if r.coeffs[k].is_negative() {
            neg.push(r);
        } else {
            keep.push(r);
        }
    }
    for p in &pos {
        for n in &neg {
            // p/|p_k| + n/|n_k| cancels x_k.
            let sp = p.coeffs[k].clone();
            let sn = -&n.coeffs[k];
            let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| a / &sp + b / &sn).collect();
            keep.push(Row { coeffs, strict: p.strict || n.strict, bound: &p.bound / &sp + &n.bound / &sn });
        }
    }
    normalise(keep)
}

/// Scales every row so its first nonzero coefficient has magnitude one and
/// keeps only the tightest row per coefficient vector.
fn normalise(rows: Vec<Row>) -> Vec<Row> {
    let mut tightest: BTreeMap<Vec<Rational>, (Rational, bool)> = BTreeMap::new();
    let mut constants = Vec::new();
    for mut r in rows {
        let Some(lead) = r.coeffs.iter().find(|a| !a.is_zero()).map(|a| a.abs()) else {
            constants.push(r);
            continue;
        };
        for a in r.coeffs.iter_mut() {
            *a /= &lead;
        }
        r.bound /= &lead;
        tightest
            .entry(r.coeffs)
            .and_modify(|(b, s)| {
                if r.bound < *b || (r.bound == *b && r.strict) {
                    *b = r.bound.clone();
                    *s = r.strict;
                }
            })
            .or_insert((r.bound, r.strict));
    }
    constants.extend(tightest.into_iter().map(|(coeffs, (bound, strict))| Row { coeffs, strict, bound }));
    constants
}
