//! Dense integer matrices with arbitrary-precision entries, Smith and Hermite
//! normal forms, fraction-free rank, and rational kernel bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Row-major integer matrix over arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for t in 0..self.cols {
                    acc += self.at(i, t) * other.at(t, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += self.at(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row_i += q * row_t
    fn add_row_multiple(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(i, j) + q * self.at(t, j);
            self.set(i, j, v);
        }
    }

    /// col_j += q * col_t
    fn add_col_multiple(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, j) + q * self.at(i, t);
            self.set(i, j, v);
        }
    }
}

/// Result of a Smith normal form computation: `u * a * v = d` with `u`, `v`
/// unimodular and `d` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    u_inv: IntMatrix,
}

impl SnfDecomposition {
    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }

    /// Nonzero diagonal entries d_1 | d_2 | ...
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n)
            .map(|i| self.d.at(i, i).clone())
            .take_while(|v| !v.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let m = a.nrows();
    let n = a.ncols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero |entry| in the remaining submatrix, first in scan order
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d.at(i, j).is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d.at(i, j).abs() < d.at(pi, pj).abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            if d.at(t, t).is_negative() {
                d.negate_row(t);
                u.negate_row(t);
                u_inv.negate_col(t);
            }
            let p = d.at(t, t).clone();
            // reduce the pivot column and row
            for i in t + 1..m {
                if d.at(i, t).is_zero() {
                    continue;
                }
                let q = -d.at(i, t).div_floor(&p);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                u_inv.add_col_multiple(t, i, &(-q));
            }
            for j in t + 1..n {
                if d.at(t, j).is_zero() {
                    continue;
                }
                let q = -d.at(t, j).div_floor(&p);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
            }
            // a nonzero remainder is strictly smaller than the pivot: restart
            let mut remainder = None;
            for i in t + 1..m {
                if !d.at(i, t).is_zero() {
                    remainder = Some((i, t));
                    break;
                }
            }
            if remainder.is_none() {
                for j in t + 1..n {
                    if !d.at(t, j).is_zero() {
                        remainder = Some((t, j));
                        break;
                    }
                }
            }
            if let Some((ri, rj)) = remainder {
                if ri != t {
                    d.swap_rows(t, ri);
                    u.swap_rows(t, ri);
                    u_inv.swap_cols(t, ri);
                } else {
                    d.swap_cols(t, rj);
                    v.swap_cols(t, rj);
                }
                continue;
            }
            // pivot must divide everything that remains
            let mut culprit = None;
            'search: for i in t + 1..m {
                for j in t + 1..n {
                    if !d.at(i, j).mod_floor(&p).is_zero() {
                        culprit = Some(i);
                        break 'search;
                    }
                }
            }
            if let Some(i) = culprit {
                let one = BigInt::one();
                d.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                u_inv.add_col_multiple(i, t, &(-one));
                continue;
            }
            break;
        }
        t += 1;
    }

    debug_assert_eq!(u.mul(a).mul(&v), d, "SNF roundtrip");
    debug_assert!(u.mul(&u_inv) == IntMatrix::identity(m), "u * u_inv = I");
    SnfDecomposition { u, d, v, u_inv }
}

/// Column-style Hermite normal form. Returns the echelon matrix `h` (one
/// column per pivot) and the pivot row of each column. Pivots are positive,
/// pivot rows strictly increase, and entries left of a pivot in its row are
/// reduced into `[0, pivot)`.
pub fn column_hermite(a: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let n = a.nrows();
    let m = a.ncols();
    let mut h = a.clone();
    let mut pivots = Vec::new();
    let mut pc = 0;

    for row in 0..n {
        if pc == m {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (pc..m).filter(|&j| !h.at(row, j).is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let jmin = *nonzero
                .iter()
                .min_by(|&&x, &&y| h.at(row, x).abs().cmp(&h.at(row, y).abs()).then(x.cmp(&y)))
                .unwrap();
            let p = h.at(row, jmin).clone();
            let mut cleared = true;
            for &j in &nonzero {
                if j == jmin {
                    continue;
                }
                let q = -h.at(row, j).div_floor(&p);
                h.add_col_multiple(j, jmin, &q);
                if !h.at(row, j).is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                h.swap_cols(pc, jmin);
                if h.at(row, pc).is_negative() {
                    h.negate_col(pc);
                }
                let p = h.at(row, pc).clone();
                for j in 0..pc {
                    let q = -h.at(row, j).div_floor(&p);
                    h.add_col_multiple(j, pc, &q);
                }
                pivots.push(row);
                pc += 1;
                break;
            }
        }
    }

    let mut data = Vec::with_capacity(n * pc);
    for i in 0..n {
        for j in 0..pc {
            data.push(h.at(i, j).clone());
        }
    }
    (IntMatrix::new(n, pc, data), pivots)
}

/// Canonical representative of `v` modulo the column span of `lattice`.
/// Two vectors reduce identically iff they differ by a lattice element.
pub fn hermite_coset_reduce(v: &[BigInt], lattice: &IntMatrix) -> Vec<BigInt> {
    assert_eq!(v.len(), lattice.nrows());
    let (h, pivots) = column_hermite(lattice);
    let mut w = v.to_vec();
    for (j, &p) in pivots.iter().enumerate() {
        let d = h.at(p, j);
        let q = w[p].div_floor(d);
        if q.is_zero() {
            continue;
        }
        for i in 0..w.len() {
            w[i] -= &q * h.at(i, j);
        }
    }
    w
}

/// Exact rank over the rationals via fraction-free elimination. Entries that
/// fit machine words take a fast path; the result is exact either way.
pub fn rank_over_rationals(a: &IntMatrix) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    if let Some(small) = to_i128_grid(a) {
        if let Some(rank) = bareiss_rank_i128(small) {
            return rank;
        }
    }
    bareiss_rank_big(a.clone())
}

fn to_i128_grid(a: &IntMatrix) -> Option<Vec<Vec<i128>>> {
    let mut out = Vec::with_capacity(a.nrows());
    for i in 0..a.nrows() {
        let mut row = Vec::with_capacity(a.ncols());
        for j in 0..a.ncols() {
            row.push(i128::try_from(a.at(i, j)).ok()?);
        }
        out.push(row);
    }
    Some(out)
}

fn bareiss_rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m[0].len();
    let mut prev: i128 = 1;
    let mut rank = 0;
    for j in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| m[i][j] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][j];
        for i in rank + 1..rows {
            for c in j + 1..cols {
                let t1 = m[i][c].checked_mul(pivot)?;
                let t2 = m[i][j].checked_mul(m[rank][c])?;
                m[i][c] = t1.checked_sub(t2)? / prev;
            }
            m[i][j] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(mut m: IntMatrix) -> usize {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for j in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m.at(i, j).is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        let pivot = m.at(rank, j).clone();
        for i in rank + 1..rows {
            for c in j + 1..cols {
                let v = (m.at(i, c) * &pivot - m.at(i, j) * m.at(rank, c)) / &prev;
                m.set(i, c, v);
            }
            m.set(i, j, BigInt::zero());
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Integer inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    // rational Gauss-Jordan on [m | I], then check integrality
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from(m.at(i, j).clone())
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .expect("matrix must be invertible");
        a.swap(col, p);
        let pivot = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= pivot.clone();
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..2 * n {
                let sub = &f * &a[col][j];
                a[i][j] -= sub;
            }
        }
    }
    let mut out = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = &a[i][n + j];
            assert!(v.is_integer(), "matrix is not unimodular");
            out.set(i, j, v.to_integer());
        }
    }
    out
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rational_rref(mut rows: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v /= pivot.clone();
        }
        for i in 0..nrows {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in 0..ncols {
                let sub = &f * &rows[r][j];
                rows[i][j] -= sub;
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Deterministic rational basis of `{x : a x = 0}` where the rows of `a` are
/// linear functionals on Q^cols. Basis vectors are ordered by their free
/// column and carry a 1 there.
pub fn nullspace_basis(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    let cols = a.ncols();
    let rat_rows: Vec<Vec<BigRational>> = (0..a.nrows())
        .map(|i| (0..cols).map(|j| BigRational::from(a.at(i, j).clone())).collect())
        .collect();
    let (rref, pivots) = rational_rref(rat_rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &pcol) in pivots.iter().enumerate() {
            v[pcol] = -rref[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Coordinates of each target vector in the given (independent) basis.
/// Panics if a target is outside the span.
pub fn coords_in_basis(
    basis: &[Vec<BigRational>],
    targets: &[Vec<BigRational>],
) -> Vec<Vec<BigRational>> {
    let m = basis.len();
    if m == 0 {
        assert!(targets
            .iter()
            .all(|t| t.iter().all(Zero::is_zero)));
        return vec![Vec::new(); targets.len()];
    }
    let k = basis[0].len();
    let t = targets.len();
    // augmented [B | T], B columns are basis vectors
    let mut rows: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
            row.extend(targets.iter().map(|tv| tv[i].clone()));
            row
        })
        .collect();
    let (rref, pivots) = rational_rref(std::mem::take(&mut rows));
    assert_eq!(pivots.len().min(m), pivots.iter().filter(|&&p| p < m).count(), "basis must be independent");
    for row in rref.iter().skip(m) {
        assert!(
            row.iter().skip(m).all(Zero::is_zero),
            "target outside the span of the basis"
        );
    }
    let mut out = vec![vec![BigRational::zero(); m]; t];
    for (row, &p) in pivots.iter().enumerate() {
        if p >= m {
            continue;
        }
        for j in 0..t {
            out[j][p] = rref[row][m + j].clone();
        }
    }
    out
}

/// Sign of the determinant of a square rational matrix given by columns.
pub fn det_sign_of_columns(cols: &[Vec<BigRational>]) -> i8 {
    let n = cols.len();
    if n == 0 {
        return 1;
    }
    assert!(cols.iter().all(|c| c.len() == n));
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let mut sign = 1i8;
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return 0;
        };
        if p != col {
            m.swap(col, p);
            sign = -sign;
        }
        if m[col][col].is_negative() {
            sign = -sign;
        }
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &m[col][col];
            for j in col..n {
                let sub = &f * &m[col][j];
                m[i][j] -= sub;
            }
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(2);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d, IntMatrix::identity(2));
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn snf_column_3_minus_2() {
        let a = m(&[vec![3], vec![-2]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(1)]);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);
    }

    #[test]
    fn snf_torsion_three() {
        let a = m(&[vec![2, -1], vec![-1, 2]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = m(&[vec![2, 0], vec![0, 4]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn hermite_reduce_examples() {
        let lat = m(&[vec![3], vec![-2]]);
        let v: Vec<BigInt> = vec![BigInt::from(5), BigInt::from(0)];
        assert_eq!(
            hermite_coset_reduce(&v, &lat),
            vec![BigInt::from(2), BigInt::from(2)]
        );
        let zero: Vec<BigInt> = vec![BigInt::zero(), BigInt::zero()];
        assert_eq!(hermite_coset_reduce(&zero, &lat), zero);
        let full = IntMatrix::identity(2);
        assert_eq!(hermite_coset_reduce(&v, &full), zero);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_over_rationals(&IntMatrix::identity(3)), 3);
        assert_eq!(rank_over_rationals(&IntMatrix::zero(2, 3)), 0);
        assert_eq!(rank_over_rationals(&m(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let u = m(&[vec![1, 1], vec![2, 3]]);
        let inv = unimodular_inverse(&u);
        assert_eq!(u.mul(&inv), IntMatrix::identity(2));
    }

    #[test]
    fn nullspace_of_row() {
        // left kernel convention is handled by callers; this is {x : 3x1 - 2x2 = 0}
        let a = m(&[vec![3, -2]]);
        let basis = nullspace_basis(&a);
        assert_eq!(basis.len(), 1);
        for b in &basis {
            let dot = BigRational::from(BigInt::from(3)) * &b[0]
                + BigRational::from(BigInt::from(-2)) * &b[1];
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn det_sign_basics() {
        let one = BigRational::one();
        let zero = BigRational::zero();
        assert_eq!(
            det_sign_of_columns(&[vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]]),
            1
        );
        assert_eq!(
            det_sign_of_columns(&[vec![zero.clone(), one.clone()], vec![one, zero]]),
            -1
        );
    }

    proptest! {
        #[test]
        fn snf_roundtrip_random(rows in 1usize..=5, cols in 1usize..=5, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-10i64..=10)).collect())
                .collect();
            let a = IntMatrix::from_i64_rows(&data);
            let snf = smith_normal_form(&a);
            prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
            prop_assert_eq!(snf.u.mul(snf.u_inverse()), IntMatrix::identity(rows));
            // divisibility chain
            let f = snf.invariant_factors();
            for w in f.windows(2) {
                prop_assert!(w[1].mod_floor(&w[0]).is_zero());
            }
        }

        #[test]
        fn hermite_coset_invariance(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1usize..=4);
            let m_cols = rng.gen_range(1usize..=3);
            let lat_rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..m_cols).map(|_| rng.gen_range(-6i64..=6)).collect())
                .collect();
            let lat = IntMatrix::from_i64_rows(&lat_rows);
            let v: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-20i64..=20))).collect();
            let z: Vec<BigInt> = (0..m_cols).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect();
            let shift = lat.mul_vec(&z);
            let w: Vec<BigInt> = v.iter().zip(&shift).map(|(a, b)| a + b).collect();
            prop_assert_eq!(hermite_coset_reduce(&v, &lat), hermite_coset_reduce(&w, &lat));
            // idempotence
            let red = hermite_coset_reduce(&v, &lat);
            prop_assert_eq!(hermite_coset_reduce(&red, &lat), red.clone());
        }
    }
}
