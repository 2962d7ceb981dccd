//! Dense matrices over an exact integer scalar.
//!
//! Provides the elimination routines the rest of the crate is built on:
//! fraction-free determinants (Bareiss), Smith normal form with unimodular
//! transforms, column Hermite normal form, and exact inverses of
//! unimodular matrices.

use crate::scalar::IntScalar;
use crate::{Error, Result};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<I> {
    rows: usize,
    cols: usize,
    data: Vec<I>,
}

impl<I: IntScalar> Mat<I> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![I::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = I::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<I>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Precondition("ragged matrix rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> I) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn neg(&self) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + other[(i, j)].clone())
    }

    pub fn sub_mat(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = I::zero();
            for k in 0..self.cols {
                acc += self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn scale(&self, c: &I) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * c.clone())
    }

    /// Direct (block-diagonal) sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        let (r, c) = (self.rows, self.cols);
        Mat::from_fn(r + other.rows, c + other.cols, |i, j| {
            if i < r && j < c {
                self[(i, j)].clone()
            } else if i >= r && j >= c {
                other[(i - r, j - c)].clone()
            } else {
                I::zero()
            }
        })
    }

    /// `n x n` block-circulant matrix whose first block row is `blocks`.
    pub fn block_circulant(blocks: &[Mat<I>], n: usize) -> Self {
        assert!(!blocks.is_empty() && blocks.len() <= n);
        let b = blocks[0].nrows();
        assert!(blocks.iter().all(|m| m.nrows() == b && m.ncols() == b));
        Mat::from_fn(n * b, n * b, |i, j| {
            let (bi, bj) = (i / b, j / b);
            let k = (bj + n - bi) % n;
            if k < blocks.len() {
                blocks[k][(i % b, j % b)].clone()
            } else {
                I::zero()
            }
        })
    }

    pub fn map<J: IntScalar>(&self, f: impl Fn(&I) -> J) -> Mat<J> {
        Mat::from_fn(self.rows, self.cols, |i, j| f(&self[(i, j)]))
    }

    pub fn row(&self, i: usize) -> Vec<I> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<I> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> Result<I> {
        if !self.is_square() {
            return Err(Error::Precondition("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(I::one());
        }
        let mut a = self.clone();
        let mut sign = I::one();
        let mut denom = I::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(I::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(k, k)].clone() * a[(i, j)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = num / denom.clone();
                }
                a[(i, k)] = I::zero();
            }
            denom = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Precondition("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let det = self.det()?;
        if !det.abs().is_one() {
            return Err(Error::Precondition(format!("matrix is not unimodular (det {det})")));
        }
        // Cofactor inverse: adj(A) / det(A) with det = +-1.
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.delete_row_col(j, i).det()?;
                let mut cof = minor;
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                inv[(i, j)] = if det.is_one() { cof } else { -cof };
            }
        }
        Ok(inv)
    }

    fn delete_row_col(&self, row: usize, col: usize) -> Self {
        Mat::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let si = if i < row { i } else { i + 1 };
            let sj = if j < col { j } else { j + 1 };
            self[(si, sj)].clone()
        })
    }

    /// Smith normal form `U * A * V = D` with `U`, `V` unimodular.
    ///
    /// `D` is diagonal with nonnegative entries satisfying the divisibility
    /// chain `d_1 | d_2 | ...`. `u_inv` is maintained alongside `U`, so
    /// callers get cokernel generators without a separate inversion.
    pub fn smith_normal_form(&self) -> Snf<I> {
        let mut a = self.clone();
        let (r, c) = (a.rows, a.cols);
        let mut u = Mat::identity(r);
        let mut u_inv = Mat::identity(r);
        let mut v = Mat::identity(c);
        let n = r.min(c);
        let mut k = 0;
        while k < n {
            // Pivot: smallest nonzero |entry| in the trailing block.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..r {
                for j in k..c {
                    if !a[(i, j)].is_zero()
                        && pivot.is_none_or(|(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            u_inv.swap_cols(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..r {
                if !a[(i, k)].is_zero() {
                    let q = div_round(&a[(i, k)], &a[(k, k)]);
                    a.row_axpy(i, k, &-q.clone());
                    u.row_axpy(i, k, &-q.clone());
                    u_inv.col_axpy(k, i, &q);
                    if !a[(i, k)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..c {
                if !a[(k, j)].is_zero() {
                    let q = div_round(&a[(k, j)], &a[(k, k)]);
                    a.col_axpy(j, k, &-q.clone());
                    v.col_axpy(j, k, &-q);
                    if !a[(k, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue; // smaller remainders produced; re-pivot this k
            }
            // Divisibility fix: fold any non-divisible trailing entry into row k.
            let d = a[(k, k)].clone();
            let bad = (k + 1..r)
                .flat_map(|i| (k + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].clone().mod_floor(&d).is_zero());
            if let Some((i, _)) = bad {
                a.row_axpy(k, i, &I::one());
                u.row_axpy(k, i, &I::one());
                u_inv.col_axpy(i, k, &-I::one());
                continue;
            }
            if a[(k, k)].is_negative() {
                a.negate_row(k);
                u.negate_row(k);
                u_inv.negate_col(k);
            }
            k += 1;
        }
        let d = (0..n).map(|i| a[(i, i)].clone()).collect();
        Snf { d, u, u_inv, v }
    }

    fn row_axpy(&mut self, dst: usize, src: usize, c: &I) {
        for j in 0..self.cols {
            let t = self[(src, j)].clone() * c.clone();
            self[(dst, j)] += t;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, c: &I) {
        for i in 0..self.rows {
            let t = self[(i, src)].clone() * c.clone();
            self[(i, dst)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    /// Column-style Hermite normal form of the lattice spanned by the
    /// columns, as a canonical column basis (lower-triangular, positive
    /// pivots, entries right of a pivot reduced modulo it).
    pub fn column_hnf(&self) -> Mat<I> {
        let mut cols: Vec<Vec<I>> = (0..self.cols).map(|j| self.col(j)).collect();
        let rows = self.rows;
        let mut basis: Vec<Vec<I>> = Vec::new();
        let mut pivot_row = 0;
        while pivot_row < rows && !cols.is_empty() {
            // Eliminate row `pivot_row` across columns by gcd steps.
            loop {
                let mut nz: Vec<usize> =
                    (0..cols.len()).filter(|&j| !cols[j][pivot_row].is_zero()).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by(|&x, &y| cols[x][pivot_row].abs().cmp(&cols[y][pivot_row].abs()));
                let (small, other) = (nz[0], nz[1]);
                let q = div_round(&cols[other][pivot_row], &cols[small][pivot_row]);
                for i in 0..rows {
                    let t = cols[small][i].clone() * q.clone();
                    cols[other][i] = cols[other][i].clone() - t;
                }
            }
            if let Some(j) = (0..cols.len()).find(|&j| !cols[j][pivot_row].is_zero()) {
                let mut piv = cols.remove(j);
                if piv[pivot_row].is_negative() {
                    for x in piv.iter_mut() {
                        *x = -x.clone();
                    }
                }
                // Reduce earlier basis columns against the new pivot.
                for b in basis.iter_mut() {
                    let q = b[pivot_row].clone().div_floor(&piv[pivot_row]);
                    if !q.is_zero() {
                        for i in 0..rows {
                            let t = piv[i].clone() * q.clone();
                            b[i] = b[i].clone() - t;
                        }
                    }
                }
                basis.push(piv);
            }
            pivot_row += 1;
        }
        let out = Mat::from_fn(rows, basis.len(), |i, j| basis[j][i].clone());
        out
    }
}

/// Nearest-integer division, biasing remainders small for fast SNF descent.
fn div_round<I: IntScalar>(a: &I, b: &I) -> I {
    let (q, r) = a.div_rem(b);
    let two_r = r.abs() + r.abs();
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + I::one()
        } else {
            q - I::one()
        }
    } else {
        q
    }
}

/// Smith normal form decomposition.
pub struct Snf<I> {
    /// Diagonal entries (nonnegative, divisibility chain).
    pub d: Vec<I>,
    /// Row transform: `u * a * v` is diagonal.
    pub u: Mat<I>,
    /// Exact inverse of `u`.
    pub u_inv: Mat<I>,
    /// Column transform.
    pub v: Mat<I>,
}

impl<I: IntScalar> Index<(usize, usize)> for Mat<I> {
    type Output = I;
    fn index(&self, (i, j): (usize, usize)) -> &I {
        &self.data[i * self.cols + j]
    }
}

impl<I: IntScalar> IndexMut<(usize, usize)> for Mat<I> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut I {
        &mut self.data[i * self.cols + j]
    }
}

impl<I: IntScalar> fmt::Debug for Mat<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn m(rows: Vec<Vec<i64>>) -> Mat<i64> {
        Mat::from_rows(rows).unwrap()
    }

    #[test]
    fn det_small() {
        assert_eq!(m(vec![]).det().unwrap(), 1); // empty product
        assert_eq!(m(vec![vec![5]]).det().unwrap(), 5);
        assert_eq!(m(vec![vec![-2, 1], vec![1, -2]]).det().unwrap(), 3);
        // 3x3 with a zero pivot on the way: -1*(6-12) + 2*(5-0) = 16.
        assert_eq!(m(vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, 5, 6]]).det().unwrap(), 16);
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        // Cofactor expansion as an independent route.
        fn cof(a: &Mat<i64>) -> i64 {
            let n = a.nrows();
            if n == 0 {
                return 1;
            }
            let mut acc = 0;
            for j in 0..n {
                let sub = Mat::from_fn(n - 1, n - 1, |r, c| a[(r + 1, if c < j { c } else { c + 1 })]);
                let s = if j % 2 == 0 { 1 } else { -1 };
                acc += s * a[(0, j)] * cof(&sub);
            }
            acc
        }
        let mut seed = 41u64;
        let mut rnd = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 11) as i64 - 5
        };
        for _ in 0..30 {
            let a = Mat::from_fn(4, 4, |_, _| rnd());
            assert_eq!(a.det().unwrap(), cof(&a));
        }
    }

    #[test]
    fn snf_reconstructs_and_divides() {
        let cases = vec![
            m(vec![vec![-2, 1], vec![1, -2]]),
            m(vec![vec![0, 3], vec![3, 0]]),
            m(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]),
            m(vec![vec![6, 10], vec![15, 4]]),
        ];
        for a in cases {
            let snf = a.smith_normal_form();
            let lhs = snf.u.mul(&a).mul(&snf.v);
            for i in 0..a.nrows() {
                for j in 0..a.ncols() {
                    let want = if i == j { snf.d[i] } else { 0 };
                    assert_eq!(lhs[(i, j)], want, "diagonalization failed\n{a:?}");
                }
            }
            for w in snf.d.windows(2) {
                if !w[0].is_zero() {
                    assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {:?}", snf.d);
                }
            }
            assert_eq!(snf.u.mul(&snf.u_inv), Mat::identity(a.nrows()));
            assert!(snf.u.det().unwrap().abs() == 1);
            assert!(snf.v.det().unwrap().abs() == 1);
        }
    }

    #[test]
    fn snf_classic_example() {
        // SNF of [[2,4,4],[-6,6,12],[10,4,16]] is diag(2,2,156).
        let a = m(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        assert_eq!(a.smith_normal_form().d, vec![2, 2, 156]);
    }

    #[test]
    fn unimodular_inverse() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
    }

    #[test]
    fn block_circulant_layout() {
        let v = m(vec![vec![1, 2], vec![3, 4]]);
        let w = m(vec![vec![5, 6], vec![7, 8]]);
        let c = Mat::block_circulant(&[v.clone(), w.clone()], 3);
        assert_eq!(c.nrows(), 6);
        assert_eq!(c[(0, 0)], 1);
        assert_eq!(c[(0, 2)], 5); // block (0,1) = w
        assert_eq!(c[(0, 4)], 0); // block (0,2) = 0
        assert_eq!(c[(4, 0)], 5); // block (2,0): k = (0+3-2)%3 = 1 -> w
    }

    #[test]
    fn hnf_canonical() {
        // Two generating sets of the same lattice give the same HNF.
        let a = m(vec![vec![2, 0], vec![0, 3]]);
        let b = m(vec![vec![2, 2, 0], vec![3, 0, 3]]);
        let ha = a.column_hnf();
        let hb = b.column_hnf();
        assert_eq!(ha, hb);
    }

    #[test]
    fn bigint_roundtrip() {
        let a: Mat<BigInt> = m(vec![vec![0, 3], vec![3, 0]]).map(|x| BigInt::from(*x));
        assert_eq!(a.smith_normal_form().d, vec![BigInt::from(3), BigInt::from(3)]);
    }
}
