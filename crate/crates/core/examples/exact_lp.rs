// Exact linear programming: a two-phase simplex over rationals, with the
// Fourier–Motzkin oracle deciding the same feasibility question.

use desir::ratlp::{fm_feasible, nonneg_rows, solve, Constraint, LinearProgram, LpOutcome};
use desir::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn run_example() -> desir::Result<String> {
    // maximise x + y subject to 2x + y ≤ 4, x + 3y ≤ 6, x, y ≥ 0
    let mut rows =
        vec![Constraint::le(vec![q(2, 1), q(1, 1)], q(4, 1)), Constraint::le(vec![q(1, 1), q(3, 1)], q(6, 1))];
    rows.extend(nonneg_rows(2));
    let lp = LinearProgram::new(2, vec![q(1, 1), q(1, 1)], rows.clone())?;
    let out = solve(&lp)?;
    assert!(out.verify(&lp));
    let LpOutcome::Optimal { value, assignment } = &out else {
        unreachable!("bounded and feasible");
    };
    assert_eq!(value, &q(14, 5));

    // a strict row the simplex cannot state directly
    rows.push(Constraint::gt(vec![q(1, 1), q(1, 1)], q(14, 5)));
    let strict_feasible = fm_feasible(2, &rows)?;
    assert!(!strict_feasible);

    Ok(format!("optimum {value} at ({}, {}); x + y > 14/5 feasible: {strict_feasible}", assignment[0], assignment[1]))
}

#[allow(dead_code)]
fn main() -> desir::Result<()> {
    println!("{}", run_example()?);
    Ok(())
}
