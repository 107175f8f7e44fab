//! Small exact linear-algebra kernels: fraction-free determinants, rational
//! inversion and the Smith normal form of an integer matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<i64>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_rational(m: &[Vec<i64>]) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| rat(x)).collect())
        .collect()
}

/// Bareiss fraction-free elimination. Every intermediate value is an exact
/// integer minor, so no rationals are needed.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn determinant_i64(m: &[Vec<i64>]) -> BigInt {
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    determinant(&big)
}

/// Gauss-Jordan inverse over the rationals; `None` when singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m.to_vec();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { rat(1) } else { rat(0) })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

pub fn mat_vec(m: &RatMatrix, v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Solve `m x = b` exactly. `None` when `m` is singular.
pub fn solve(m: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    inverse(m).map(|inv| mat_vec(&inv, b))
}

/// Positive definiteness through leading principal minors (Sylvester).
pub fn is_positive_definite(m: &RatMatrix) -> bool {
    let n = m.len();
    (1..=n).all(|k| {
        // Clear denominators row by row; positive scaling keeps the sign.
        let rows: Vec<Vec<BigInt>> = (0..k)
            .map(|i| {
                let l = m[i][..k].iter().fold(BigInt::one(), |acc, x| {
                    num_integer::lcm(acc, x.denom().clone())
                });
                m[i][..k]
                    .iter()
                    .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect();
        determinant(&rows).is_positive()
    })
}

/// Smith normal form `u * a * v = diag(d)` with `d_i | d_{i+1}`, `d_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub diagonal: Vec<i64>,
    pub v: IntMatrix,
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: IntMatrix = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Move the smallest nonzero entry of the trailing block to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            m.swap(t, pi);
            u.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }

            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    row_axpy(&mut m, i, t, -q);
                    row_axpy(&mut u, i, t, -q);
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    col_axpy(&mut m, j, t, -q);
                    col_axpy(&mut v, j, t, -q);
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending entry into row t and retry.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    row_axpy(&mut m, t, i, 1);
                    row_axpy(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diagonal = (0..rows.min(cols)).map(|i| m[i][i]).collect();
    SmithForm { u, diagonal, v }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

// row[dst] += f * row[src]
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: i64) {
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(src_row) {
        *x += f * s;
    }
}

// col[dst] += f * col[src]
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: i64) {
    for row in m.iter_mut() {
        row[dst] += f * row[src];
    }
}

pub fn int_mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(determinant_i64(&m), BigInt::from(4));
        let singular = vec![vec![1, 2], vec![2, 4]];
        assert!(determinant_i64(&singular).is_zero());
        let needs_swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(determinant_i64(&needs_swap), BigInt::from(-1));
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let inv = inverse(&to_rational(&[vec![2, -1], vec![-1, 2]])).unwrap();
        let third = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(3));
        assert_eq!(
            inv,
            vec![vec![third(2), third(1)], vec![third(1), third(2)]]
        );
        assert!(inverse(&to_rational(&[vec![1, 1], vec![1, 1]])).is_none());
    }

    #[test]
    fn smith_form_of_cartan_matrices() {
        let a2 = vec![vec![2, -1], vec![-1, 2]];
        let snf = smith_normal_form(&a2);
        assert_eq!(snf.diagonal, vec![1, 3]);
        let uav = int_mat_mul(&int_mat_mul(&snf.u, &a2), &snf.v);
        assert_eq!(uav, vec![vec![1, 0], vec![0, 3]]);

        let d4 = vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ];
        let snf = smith_normal_form(&d4);
        assert_eq!(snf.diagonal, vec![1, 1, 2, 2]);
        let uav = int_mat_mul(&int_mat_mul(&snf.u, &d4), &snf.v);
        for (i, row) in uav.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { snf.diagonal[i] } else { 0 });
            }
        }
    }

    #[test]
    fn definiteness() {
        assert!(is_positive_definite(&to_rational(&[
            vec![2, -1],
            vec![-1, 2]
        ])));
        assert!(!is_positive_definite(&to_rational(&[
            vec![2, -2],
            vec![-2, 2]
        ])));
    }
}
