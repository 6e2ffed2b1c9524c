//! Exact integer linear algebra on small matrices: column echelon forms via
//! unimodular operations, integer kernels, particular solutions of `A x = b`,
//! and Hermite normal form as a canonical basis for sublattices of `Z^n`.
//!
//! Everything here works over [`BigInt`], so there are no overflow concerns;
//! the matrices involved (skew forms, mode conditions) are tiny.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type IntMat = Vec<Vec<BigInt>>;

/// Build a BigInt matrix from i64 rows.
pub fn mat_from_i64(rows: &[Vec<i64>]) -> IntMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Column echelon form by unimodular column operations.
///
/// Returns `(h, u, pivots)` with `h = a * u`, `u` unimodular, and `pivots`
/// the list of `(row, col)` pivot positions in increasing row order. Columns
/// past the last pivot are zero.
pub fn column_echelon(a: &IntMat) -> (IntMat, IntMat, Vec<(usize, usize)>) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut h = a.clone();
    let mut u = identity(n);
    let mut pivots = Vec::new();
    let mut lead = 0usize;

    for r in 0..m {
        if lead >= n {
            break;
        }
        // Gcd-combine columns lead..n on row r until at most one is nonzero.
        loop {
            let mut best: Option<usize> = None;
            for j in lead..n {
                if !h[r][j].is_zero() {
                    best = match best {
                        None => Some(j),
                        Some(b) if h[r][j].abs() < h[r][b].abs() => Some(j),
                        keep => keep,
                    };
                }
            }
            let Some(p) = best else { break };
            let mut done = true;
            for j in lead..n {
                if j == p || h[r][j].is_zero() {
                    continue;
                }
                let q = &h[r][j] / &h[r][p]; // truncated division
                if !q.is_zero() {
                    for i in 0..m {
                        let t = &h[i][p] * &q;
                        h[i][j] -= t;
                    }
                    for i in 0..n {
                        let t = &u[i][p] * &q;
                        u[i][j] -= t;
                    }
                }
                if !h[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                // Move pivot column into position `lead`, fix sign.
                if p != lead {
                    for row in h.iter_mut() {
                        row.swap(p, lead);
                    }
                    for row in u.iter_mut() {
                        row.swap(p, lead);
                    }
                }
                if h[r][lead].is_negative() {
                    for row in h.iter_mut() {
                        let v = -row[lead].clone();
                        row[lead] = v;
                    }
                    for row in u.iter_mut() {
                        let v = -row[lead].clone();
                        row[lead] = v;
                    }
                }
                pivots.push((r, lead));
                lead += 1;
                break;
            }
        }
    }
    (h, u, pivots)
}

/// Rank of an integer matrix (over Q).
pub fn rank(a: &IntMat) -> usize {
    column_echelon(a).2.len()
}

/// Basis of the integer kernel `{x : a x = 0}`, as row vectors.
pub fn kernel_basis(a: &IntMat) -> Vec<Vec<BigInt>> {
    let n = if a.is_empty() { 0 } else { a[0].len() };
    if a.is_empty() {
        return identity(n);
    }
    let (_, u, pivots) = column_echelon(a);
    let r = pivots.len();
    (r..n).map(|j| (0..n).map(|i| u[i][j].clone()).collect()).collect()
}

/// A particular integer solution of `a x = b`, if one exists.
pub fn solve(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if m == 0 {
        return Some(vec![BigInt::zero(); n]);
    }
    let (h, u, pivots) = column_echelon(a);
    let mut residual: Vec<BigInt> = b.to_vec();
    let mut coeff = vec![BigInt::zero(); n];
    for &(r, j) in &pivots {
        let (q, rem) = residual[r].div_rem(&h[r][j]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for i in 0..m {
                let t = &h[i][j] * &q;
                residual[i] -= t;
            }
        }
        coeff[j] = q;
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return None;
    }
    // x = u * coeff
    let x = (0..n)
        .map(|i| (0..n).map(|j| &u[i][j] * &coeff[j]).sum())
        .collect();
    Some(x)
}

/// Hermite normal form of the lattice spanned by the given row vectors.
///
/// The result is a canonical basis: rows are nonzero, pivot columns strictly
/// increase, pivots are positive, and entries above each pivot are reduced to
/// `0 <= e < pivot`. Two generating sets span the same lattice iff their HNFs
/// are equal.
pub fn hnf_rows(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let n = gens[0].len();
    let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
    let m = rows.len();
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut top = 0usize;
    for c in 0..n {
        if top >= m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in top..m {
                if !rows[i][c].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if rows[i][c].abs() < rows[b][c].abs() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(p) = best else { break };
            let mut done = true;
            for i in top..m {
                if i == p || rows[i][c].is_zero() {
                    continue;
                }
                let q = &rows[i][c] / &rows[p][c];
                if !q.is_zero() {
                    for k in 0..n {
                        let t = &rows[p][k] * &q;
                        rows[i][k] -= t;
                    }
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                rows.swap(p, top);
                if rows[top][c].is_negative() {
                    for k in 0..n {
                        let v = -rows[top][k].clone();
                        rows[top][k] = v;
                    }
                }
                pivot_rows.push((top, c));
                top += 1;
                break;
            }
        }
    }
    rows.truncate(top);
    // Reduce entries above each pivot.
    for &(pr, pc) in &pivot_rows {
        for i in 0..pr {
            let q = rows[i][pc].div_floor(&rows[pr][pc]);
            if !q.is_zero() {
                for k in 0..n {
                    let t = &rows[pr][k] * &q;
                    rows[i][k] -= t;
                }
            }
        }
    }
    rows
}

/// Canonical basis of the lattice `{x : a x = 0 and c x = 0 mod d}`.
///
/// Congruence rows are lifted to exact equations with auxiliary unknowns; the
/// result is the projection of the lifted kernel to the original coordinates.
pub fn constrained_kernel(
    equations: &IntMat,
    congruences: &IntMat,
    modulus: &BigInt,
    n: usize,
) -> Vec<Vec<BigInt>> {
    let mut lifted: IntMat = Vec::new();
    let k = congruences.len();
    for row in equations {
        let mut r = row.clone();
        r.resize(n + k, BigInt::zero());
        lifted.push(r);
    }
    for (idx, row) in congruences.iter().enumerate() {
        let mut r = row.clone();
        r.resize(n + k, BigInt::zero());
        r[n + idx] = modulus.clone();
        lifted.push(r);
    }
    if lifted.is_empty() {
        return hnf_rows(&identity(n));
    }
    let ker = kernel_basis(&lifted);
    let projected: Vec<Vec<BigInt>> = ker.into_iter().map(|v| v[..n].to_vec()).collect();
    hnf_rows(&projected)
}

/// A particular solution of `a x = rhs_a` and `c x = rhs_c mod d`, if any.
pub fn constrained_solve(
    equations: &IntMat,
    rhs_eq: &[BigInt],
    congruences: &IntMat,
    rhs_cong: &[BigInt],
    modulus: &BigInt,
    n: usize,
) -> Option<Vec<BigInt>> {
    let mut lifted: IntMat = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    let k = congruences.len();
    for (row, r) in equations.iter().zip(rhs_eq) {
        let mut v = row.clone();
        v.resize(n + k, BigInt::zero());
        lifted.push(v);
        rhs.push(r.clone());
    }
    for (idx, (row, r)) in congruences.iter().zip(rhs_cong).enumerate() {
        let mut v = row.clone();
        v.resize(n + k, BigInt::zero());
        v[n + idx] = modulus.clone();
        lifted.push(v);
        rhs.push(r.clone());
    }
    if lifted.is_empty() {
        return Some(vec![BigInt::zero(); n]);
    }
    solve(&lifted, &rhs).map(|x| x[..n].to_vec())
}
