//! Exact rational linear solving for functional fitting.

use crate::scalar::Rational;
use num::Zero;

/// Solves `matrix * x = rhs` over the rationals by Gauss-Jordan
/// elimination, returning `None` when the system is inconsistent.
///
/// Columns are scanned left to right; each becomes a pivot if any
/// remaining row is nonzero there. Columns that never pivot are free
/// variables and are pinned to zero, so an underdetermined but consistent
/// system yields one canonical solution: the one supported on the
/// earliest possible columns. Callers rely on that determinism.
pub(crate) fn solve_pinned(
    mut matrix: Vec<Vec<Rational>>,
    mut rhs: Vec<Rational>,
) -> Option<Vec<Rational>> {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len(), "matrix and rhs row counts differ");
    let cols = matrix.first().map_or(0, Vec::len);
    debug_assert!(matrix.iter().all(|r| r.len() == cols));

    let mut pivot_col_of_row = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        let Some(pivot) = (next_row..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(next_row, pivot);
        rhs.swap(next_row, pivot);

        let inv = {
            let p = &matrix[next_row][col];
            Rational::new(p.denom().clone(), p.numer().clone())
        };
        for entry in &mut matrix[next_row][col..] {
            if !entry.is_zero() {
                *entry = &*entry * &inv;
            }
        }
        rhs[next_row] = &rhs[next_row] * &inv;

        for r in 0..rows {
            if r == next_row || matrix[r][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut matrix[r][col], Rational::zero());
            for c in (col + 1)..cols {
                if !matrix[next_row][c].is_zero() {
                    let delta = &factor * &matrix[next_row][c];
                    matrix[r][c] = &matrix[r][c] - &delta;
                }
            }
            let delta = &factor * &rhs[next_row];
            rhs[r] = &rhs[r] - &delta;
        }

        pivot_col_of_row.push(col);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }

    // rows below the pivot count are all-zero on the left; a nonzero
    // right-hand side there means no solution exists
    if rhs[next_row..].iter().any(|v| !v.is_zero()) {
        return None;
    }

    let mut solution = vec![Rational::zero(); cols];
    for (row, &col) in pivot_col_of_row.iter().enumerate() {
        solution[col] = rhs[row].clone();
    }
    Some(solution)
}
