//! Exact linear algebra: rational elimination, saturated integer kernels via
//! column Hermite reduction, and Smith normal form for integer solvability.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-reduces `m` in place; returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("pivot nonzero");
        for x in m[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = m[r][j].mul_ref(&f);
                    m[i][j] = m[i][j].sub_ref(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rational_rank(mut m: Vec<Vec<Rational>>) -> usize {
    rref(&mut m).len()
}

/// Solves the square system `m · x = rhs` over Q; `None` when singular.
pub fn solve_rational(m: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            row.push(b);
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Scales each row by the lcm of its denominators, yielding an integer matrix.
pub fn clear_denominators(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut l = BigInt::from(1);
            for x in row {
                l = l.lcm(&x.denominator());
            }
            row.iter()
                .map(|x| {
                    let r = x.mul_ref(&Rational::from_bigint(l.clone()));
                    r.as_integer().expect("cleared to integer")
                })
                .collect()
        })
        .collect()
}

/// Basis of `{x ∈ Z^cols : M x = 0}` via unimodular column reduction.
///
/// The kernel of an integer matrix is automatically saturated; the returned
/// basis is canonicalized with [`lattice_hnf`] so equal lattices compare equal.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = m.to_vec();
    let rows = work.len();
    // u: cols × cols transform, applied column-wise alongside `work`
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let col_swap = |work: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, a: usize, b: usize| {
        for row in work.iter_mut() {
            row.swap(a, b);
        }
        for row in u.iter_mut() {
            row.swap(a, b);
        }
    };
    // col[b] -= q * col[a]
    let col_axpy = |work: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, q: &BigInt, a: usize, b: usize| {
        for row in work.iter_mut() {
            let t = &row[a] * q;
            row[b] -= t;
        }
        for row in u.iter_mut() {
            let t = &row[a] * q;
            row[b] -= t;
        }
    };
    let mut lead = 0usize; // columns < lead are pivot columns
    for r in 0..rows {
        if lead == cols {
            break;
        }
        loop {
            // smallest nonzero entry in row r among columns >= lead
            let mut best: Option<usize> = None;
            for c in lead..cols {
                if !work[r][c].is_zero()
                    && best.is_none_or(|b| work[r][c].abs() < work[r][b].abs())
                {
                    best = Some(c);
                }
            }
            let Some(p) = best else { break };
            col_swap(&mut work, &mut u, lead, p);
            let mut done = true;
            for c in lead + 1..cols {
                if !work[r][c].is_zero() {
                    let q = work[r][c].div_floor(&work[r][lead]);
                    col_axpy(&mut work, &mut u, &q, lead, c);
                    if !work[r][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                lead += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<BigInt>> = (lead..cols)
        .map(|c| (0..cols).map(|i| u[i][c].clone()).collect())
        .collect();
    debug_assert!(basis
        .iter()
        .all(|v| m.iter().all(|row| dot(row, v).is_zero())));
    lattice_hnf(basis)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row Hermite normal form of a full-rank-by-rows lattice basis: canonical
/// generators with positive pivots and reduced entries above each pivot.
pub fn lattice_hnf(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let m = rows.len();
    let mut top = 0usize;
    for c in 0..cols {
        if top == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for r in top..m {
                if !rows[r][c].is_zero()
                    && best.is_none_or(|b| rows[r][c].abs() < rows[b][c].abs())
                {
                    best = Some(r);
                }
            }
            let Some(p) = best else { break };
            rows.swap(top, p);
            let mut done = true;
            for r in top + 1..m {
                if !rows[r][c].is_zero() {
                    let q = rows[r][c].div_floor(&rows[top][c]);
                    for j in 0..cols {
                        let t = &rows[top][j] * &q;
                        rows[r][j] -= t;
                    }
                    if !rows[r][c].is_zero() {
                        done = false;
                    }
                }
            }
            if !done {
                continue;
            }
            if rows[top][c].is_negative() {
                for x in rows[top].iter_mut() {
                    *x = -(x.clone());
                }
            }
            // reduce entries above the pivot into [0, pivot)
            for r in 0..top {
                let q = rows[r][c].div_floor(&rows[top][c]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &rows[top][j] * &q;
                        rows[r][j] -= t;
                    }
                }
            }
            top += 1;
            break;
        }
    }
    rows.truncate(top);
    rows
}

/// Does `v` lie in the rational span of `basis`?
pub fn in_rational_span(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let to_rat = |rows: &[Vec<BigInt>]| -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|x| Rational::from_bigint(x.clone())).collect())
            .collect()
    };
    let rank0 = rational_rank(to_rat(basis));
    let mut stacked = basis.to_vec();
    stacked.push(v.to_vec());
    rational_rank(to_rat(&stacked)) == rank0
}

/// Smith normal form: returns `(s, d, t)` with `s · m · t = d` diagonal and
/// `s`, `t` unimodular.
pub fn smith_normal_form(
    m: &[Vec<BigInt>],
    cols: usize,
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let rows = m.len();
    let ident = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    };
    let mut d: Vec<Vec<BigInt>> = m.to_vec();
    let mut s = ident(rows);
    let mut t = ident(cols);

    let mut k = 0usize;
    while k < rows.min(cols) {
        // find a nonzero pivot in the trailing block, smallest in magnitude
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !d[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(k, pi);
        s.swap(k, pi);
        for row in d.iter_mut() {
            row.swap(k, pj);
        }
        for row in t.iter_mut() {
            row.swap(k, pj);
        }
        let mut clean = true;
        for i in k + 1..rows {
            if !d[i][k].is_zero() {
                let q = d[i][k].div_floor(&d[k][k]);
                for j in 0..cols {
                    let v = &d[k][j] * &q;
                    d[i][j] -= v;
                }
                for j in 0..rows {
                    let v = &s[k][j] * &q;
                    s[i][j] -= v;
                }
                if !d[i][k].is_zero() {
                    clean = false;
                }
            }
        }
        for j in k + 1..cols {
            if !d[k][j].is_zero() {
                let q = d[k][j].div_floor(&d[k][k]);
                for i in 0..rows {
                    let v = &d[i][k] * &q;
                    d[i][j] -= v;
                }
                for i in 0..cols {
                    let v = &t[i][k] * &q;
                    t[i][j] -= v;
                }
                if !d[k][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        if d[k][k].is_negative() {
            for j in 0..cols {
                d[k][j] = -d[k][j].clone();
            }
            for j in 0..rows {
                s[k][j] = -s[k][j].clone();
            }
        }
        k += 1;
    }
    (s, d, t)
}

/// Solves `m · x = rhs` over the integers via Smith normal form.
pub fn solve_integer(m: &[Vec<BigInt>], cols: usize, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = m.len();
    if rows == 0 {
        return Some(vec![BigInt::zero(); cols]);
    }
    let (s, d, t) = smith_normal_form(m, cols);
    // y = s · rhs, then solve d · z = y, then x = t · z
    let y: Vec<BigInt> = (0..rows).map(|i| dot(&s[i], rhs)).collect();
    let mut z = vec![BigInt::zero(); cols];
    for i in 0..rows {
        let di = if i < cols { d[i][i].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !y[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = y[i].div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        }
    }
    let x: Vec<BigInt> = (0..cols)
        .map(|i| (0..cols).map(|j| &t[i][j] * &z[j]).sum())
        .collect();
    debug_assert!(m.iter().zip(rhs).all(|(row, b)| dot(row, &x) == *b));
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn kernel_of_simple_system() {
        // x + y + z = 0, x - z = 0  =>  kernel spanned by (1, -2, 1)
        let m = vec![
            vec![bi(1), bi(1), bi(1)],
            vec![bi(1), bi(0), bi(-1)],
        ];
        let k = integer_kernel(&m, 3);
        assert_eq!(k, vec![vec![bi(1), bi(-2), bi(1)]]);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 2y = 0 has primitive kernel vector (1,1), not (2,2)
        let m = vec![vec![bi(2), bi(-2)]];
        let k = integer_kernel(&m, 2);
        assert_eq!(k, vec![vec![bi(1), bi(1)]]);
    }

    #[test]
    fn empty_constraints_full_kernel() {
        let k = integer_kernel(&[], 3);
        assert_eq!(k.len(), 3);
        // canonical form is the identity
        for (i, row) in k.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { bi(1) } else { bi(0) });
            }
        }
    }

    #[test]
    fn solve_integer_examples() {
        // 2x = 4 solvable; 2x = 3 not
        assert_eq!(solve_integer(&[vec![bi(2)]], 1, &[bi(4)]), Some(vec![bi(2)]));
        assert_eq!(solve_integer(&[vec![bi(2)]], 1, &[bi(3)]), None);
        // x + 2y = 5 has an integer solution
        let sol = solve_integer(&[vec![bi(1), bi(2)]], 2, &[bi(5)]).unwrap();
        assert_eq!(&sol[0] + bi(2) * &sol[1], bi(5));
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(entries in proptest::collection::vec(-6i64..7, 12)) {
            let m: Vec<Vec<BigInt>> = entries.chunks(4).map(|c| c.iter().map(|&x| bi(x)).collect()).collect();
            let k = integer_kernel(&m, 4);
            for v in &k {
                for row in &m {
                    prop_assert_eq!(dot(row, v), BigInt::zero());
                }
            }
            // rank-nullity over Q
            let rk = rational_rank(m.iter().map(|r| r.iter().map(|x| Rational::from_bigint(x.clone())).collect()).collect());
            prop_assert_eq!(k.len(), 4 - rk);
        }

        #[test]
        fn snf_diagonalizes(entries in proptest::collection::vec(-9i64..10, 12)) {
            let m: Vec<Vec<BigInt>> = entries.chunks(4).map(|c| c.iter().map(|&x| bi(x)).collect()).collect();
            let (s, d, t) = smith_normal_form(&m, 4);
            // check s*m*t == d
            let rows = m.len();
            for i in 0..rows {
                for j in 0..4 {
                    let mut acc = BigInt::zero();
                    for p in 0..rows {
                        for q in 0..4 {
                            acc += &s[i][p] * &m[p][q] * &t[q][j];
                        }
                    }
                    prop_assert_eq!(&acc, &d[i][j]);
                    if i != j {
                        prop_assert_eq!(&d[i][j], &BigInt::zero());
                    }
                }
            }
        }
    }
}
