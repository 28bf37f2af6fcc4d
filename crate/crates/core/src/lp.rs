//! Exact linear feasibility by phase-I simplex with Bland's rule.
//!
//! Every decision the crate makes about cones (membership, whether the
//! origin is a nontrivial combination, separating functionals) reduces to
//! "does `A x = b, x >= 0` have a solution", possibly with some rows
//! relaxed to `<=`. Problems are desk-sized, so a dense tableau is enough.
//! The tableau is kept integral: each row is scaled to integers and pivots
//! divide exactly by the previous pivot, so no fraction is ever reduced.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Finds `x >= 0` with `A x = b`, or `None` if the system is infeasible.
///
/// `a` is row-major with `a.len() == b.len()` rows of equal width. The
/// returned point is the basic solution reached by Bland's rule from the
/// starting basis, so it is deterministic.
pub(crate) fn feasible_point<F: Scalar>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    feasible_point_mixed(a, b, &vec![false; a.len()])
}

/// Like [`feasible_point`], but row `i` only needs `A_i x <= b_i` when
/// `relaxed[i]` holds. Relaxed rows with `b_i >= 0` start feasible on their
/// slack, which saves a pivot each.
pub(crate) fn feasible_point_mixed<F: Scalar>(
    a: &[Vec<F>],
    b: &[F],
    relaxed: &[bool],
) -> Option<Vec<F>> {
    assert_eq!(a.len(), b.len());
    assert_eq!(a.len(), relaxed.len());
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![F::zero(); n]);
    }

    // columns: n originals, one slack per relaxed row, one artificial per
    // row that does not start on its slack, then the right-hand side
    let slacks = relaxed.iter().filter(|&&r| r).count();
    let flipped: Vec<bool> = b.iter().map(Signed::is_negative).collect();
    let artificial: Vec<bool> = (0..m).map(|i| !relaxed[i] || flipped[i]).collect();
    let artificials = artificial.iter().filter(|&&x| x).count();
    let free = n + slacks;
    let rhs = free + artificials;
    let width = rhs + 1;

    let mut t: Vec<Vec<F::Int>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n, free);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        debug_assert_eq!(row.len(), n);
        let mut full: Vec<F> = row.clone();
        full.push(bi.clone());
        if flipped[i] {
            full.iter_mut().for_each(|v| *v = -v.clone());
        }
        let ints = F::integral_multiple(&full);
        let mut r = vec![F::Int::zero(); width];
        r[..n].clone_from_slice(&ints[..n]);
        r[rhs] = ints[n].clone();
        if relaxed[i] {
            r[next_slack] = if flipped[i] {
                -F::Int::one()
            } else {
                F::Int::one()
            };
            if !artificial[i] {
                basis.push(next_slack);
            }
            next_slack += 1;
        }
        if artificial[i] {
            r[next_art] = F::Int::one();
            basis.push(next_art);
            next_art += 1;
        }
        t.push(r);
    }
    // the true tableau is t / det
    let mut det = F::Int::one();

    // reduced costs of "minimise the sum of artificials"
    let mut cost = vec![F::Int::zero(); width];
    for (r, _) in t.iter().zip(&artificial).filter(|(_, &art)| art) {
        for j in (0..free).chain([rhs]) {
            cost[j] = cost[j].clone() - r[j].clone();
        }
    }

    while let Some(enter) = (0..free).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for (i, r) in t.iter().enumerate() {
            if !r[enter].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(li) => {
                    let l = &t[li];
                    let lhs = r[rhs].clone() * l[enter].clone();
                    let best = l[rhs].clone() * r[enter].clone();
                    lhs < best || (lhs == best && basis[i] < basis[li])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let Some(row) = leave else {
            // phase I objective is bounded below by zero
            unreachable!("unbounded phase-I ray");
        };
        det = pivot(&mut t, &mut cost, row, enter, &det);
        basis[row] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = F::from_fraction(t[i][rhs].clone(), det.clone());
        }
    }
    Some(x)
}

/// Integer pivot; returns the new determinant.
fn pivot<T: Clone + Integer + Signed>(
    t: &mut [Vec<T>],
    cost: &mut [T],
    row: usize,
    col: usize,
    det: &T,
) -> T {
    let p = t[row][col].clone();
    let pivot_row = t[row].clone();
    let eliminate = |r: &mut [T]| {
        let factor = r[col].clone();
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            let scaled = v.clone() * p.clone();
            let num = if factor.is_zero() || pv.is_zero() {
                scaled
            } else {
                scaled - factor.clone() * pv.clone()
            };
            *v = if det.is_one() { num } else { num / det.clone() };
        }
    };
    for (i, r) in t.iter_mut().enumerate() {
        if i != row {
            eliminate(r);
        }
    }
    eliminate(cost);
    p
}
