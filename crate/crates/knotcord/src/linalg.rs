//! Exact integer linear algebra on dense `BigInt` matrices.
//!
//! Everything here is small and dense: Seifert matrices stay well under
//! 1000 rows, so fraction-free elimination and elementary-operation
//! bookkeeping are plenty fast.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of `BigInt` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> BigInt>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IMat { rows, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        IMat::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn transpose(&self) -> Self {
        IMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        IMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += &self[(i, k)] * &other[(k, j)];
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += &self[(i, k)] * &v[k];
                }
                acc
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Keep only the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> IMat {
        IMat::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IMat) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            // pivot search below row k
            let mut found = None;
            for i in k + 1..n {
                if !a[(i, k)].is_zero() {
                    found = Some(i);
                    break;
                }
            }
            match found {
                Some(i) => {
                    for j in 0..n {
                        let tmp = a[(k, j)].clone();
                        a[(k, j)] = a[(i, j)].clone();
                        a[(i, j)] = tmp;
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[(i, j)] = q;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

pub fn gcd_vec(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Unimodular completion of a primitive column vector.
///
/// Returns `(t, t_inv)` with `t * e_1 = a`, `t_inv * t = I`, both unimodular.
/// Panics if `a` is not primitive (gcd of entries must be 1).
pub fn unimodular_completion(a: &[BigInt]) -> (IMat, IMat) {
    let n = a.len();
    assert!(n > 0, "cannot complete an empty vector");
    assert!(gcd_vec(a).is_one(), "vector must be primitive");
    let mut v: Vec<BigInt> = a.to_vec();
    let mut t = IMat::identity(n);
    let mut t_inv = IMat::identity(n);

    // Row op "v[i] -= q * v[j]" corresponds to t <- t * L^{-1} (column op
    // col_j += q * col_i on t) and t_inv <- L * t_inv (same row op on rows).
    let row_op = |v: &mut Vec<BigInt>, t: &mut IMat, t_inv: &mut IMat, i: usize, j: usize, q: &BigInt| {
        let delta = q * &v[j];
        v[i] -= delta;
        for r in 0..n {
            let add = q * &t[(r, i)];
            t[(r, j)] += add;
        }
        for c in 0..n {
            let sub = q * &t_inv[(j, c)];
            t_inv[(i, c)] -= sub;
        }
    };

    loop {
        // find the two smallest-magnitude nonzero entries
        let nz: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
        if nz.len() == 1 {
            break;
        }
        // reduce the largest nonzero by the smallest nonzero
        let &jmin = nz
            .iter()
            .min_by(|&&x, &&y| v[x].abs().cmp(&v[y].abs()))
            .unwrap();
        let &imax = nz
            .iter()
            .filter(|&&x| x != jmin)
            .max_by(|&&x, &&y| v[x].abs().cmp(&v[y].abs()))
            .unwrap();
        let q = div_round(&v[imax], &v[jmin]);
        if q.is_zero() {
            // |v[imax]| < |v[jmin]| can't happen by choice; guard anyway
            row_op(&mut v, &mut t, &mut t_inv, imax, jmin, &BigInt::one());
        } else {
            row_op(&mut v, &mut t, &mut t_inv, imax, jmin, &q);
        }
    }

    let k = (0..n).find(|&i| !v[i].is_zero()).expect("primitive vector has a nonzero entry");
    // normalize sign: multiply row k of v (and t_inv), column k of t by -1
    if v[k].is_negative() {
        v[k] = -v[k].clone();
        for r in 0..n {
            t[(r, k)] = -t[(r, k)].clone();
        }
        for c in 0..n {
            t_inv[(k, c)] = -t_inv[(k, c)].clone();
        }
    }
    debug_assert!(v[k].is_one(), "primitive reduction must end at a unit");
    // swap position k with 0
    if k != 0 {
        v.swap(k, 0);
        for r in 0..n {
            let tmp = t[(r, 0)].clone();
            t[(r, 0)] = t[(r, k)].clone();
            t[(r, k)] = tmp;
        }
        for c in 0..n {
            let tmp = t_inv[(0, c)].clone();
            t_inv[(0, c)] = t_inv[(k, c)].clone();
            t_inv[(k, c)] = tmp;
        }
    }
    debug_assert_eq!(t.column(0), a.to_vec(), "completion must map e1 to the input");
    (t, t_inv)
}

/// Quotient rounded toward the nearest integer (ties toward zero).
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = r.abs() * 2;
    if two_r > b.abs() {
        if (a.is_negative()) ^ (b.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn determinant_small() {
        let m = IMat::from_i64(&[vec![0, 1], vec![-1, 0]]);
        assert_eq!(determinant(&m), big(1));
        let m = IMat::from_i64(&[vec![2, 3], vec![1, 4]]);
        assert_eq!(determinant(&m), big(5));
        let m = IMat::from_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(determinant(&m), big(0));
        assert_eq!(determinant(&IMat::zero(0, 0)), big(1));
    }

    #[test]
    fn determinant_needs_pivoting() {
        let m = IMat::from_i64(&[vec![0, 2], vec![3, 1]]);
        assert_eq!(determinant(&m), big(-6));
    }

    #[test]
    fn completion_roundtrip() {
        for a in [
            vec![big(1)],
            vec![big(0), big(-1)],
            vec![big(2), big(3)],
            vec![big(6), big(10), big(15)],
            vec![big(-4), big(7), big(9), big(0)],
        ] {
            let (t, t_inv) = unimodular_completion(&a);
            assert_eq!(t.column(0), a);
            assert_eq!(t.mul(&t_inv), IMat::identity(a.len()));
            assert_eq!(determinant(&t).abs(), big(1));
        }
    }

    #[test]
    #[should_panic(expected = "primitive")]
    fn completion_rejects_imprimitive() {
        unimodular_completion(&[big(2), big(4)]);
    }

    #[test]
    fn div_round_ties() {
        assert_eq!(div_round(&big(7), &big(2)), big(3));
        assert_eq!(div_round(&big(-7), &big(2)), big(-3));
        assert_eq!(div_round(&big(7), &big(3)), big(2));
        assert_eq!(div_round(&big(8), &big(3)), big(3));
        assert_eq!(div_round(&big(-8), &big(3)), big(-3));
    }
}
