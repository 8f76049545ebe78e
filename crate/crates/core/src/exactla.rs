//! Exact linear algebra over the rationals.
//!
//! All arithmetic is on arbitrary-precision rationals. Row reduction pivots on
//! the first nonzero entry of the leftmost unfinished column, scanning rows top
//! to bottom, so every basis returned here is reproducible bit for bit.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rational numbers, always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`, reduced.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::input(format!("malformed rational {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::input(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Formats as `"p"` when the denominator is 1, otherwise `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += s * x`
pub fn axpy(y: &mut [Rational], s: &Rational, x: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in y.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += s * b;
        }
    }
}

pub fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Matrix::from_vec(rows, cols, data.iter().map(|&x| int(x)).collect())
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::input(format!("ragged matrix: row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// True when every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self[(r, c)].is_zero() {
                    t[(c, r)] = self[(r, c)].clone();
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "mul_vec dimension");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Rational, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&mut self.data, s, &other.data);
    }

    pub fn trace(&self) -> Rational {
        let mut t = Rational::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn pow(&self, mut k: u32) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Submatrix of `rows × cols` starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for (j, &c) in idx.iter().enumerate() {
            for r in 0..self.rows {
                m[(r, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    /// Horizontal concatenation; all parts must have `rows` rows.
    pub fn hstack(rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            m.set_block(0, c0, p);
            c0 += p.cols;
        }
        m
    }

    /// Vertical concatenation; all parts must have `cols` columns.
    pub fn vstack(cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&p.data);
        }
        Matrix { rows, cols, data }
    }

    pub fn block_diag(parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            m.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        m
    }

    fn reducer_of_rows(&self) -> RowReducer {
        let mut rr = RowReducer::new(self.cols);
        for r in 0..self.rows {
            rr.insert(self.row(r).to_vec());
        }
        rr
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let rows = self.reducer_of_rows().rref_rows();
        let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, (_, r)) in rows.into_iter().enumerate() {
            for (c, x) in r.into_iter().enumerate() {
                m[(i, c)] = x;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.reducer_of_rows().rank()
        } else {
            self.transpose().reducer_of_rows().rank()
        }
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.reducer_of_rows().kernel_basis()
    }

    /// Null space basis as the columns of a matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_columns(self.cols, &self.kernel_basis())
    }

    /// Indices of the leftmost maximal independent set of columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// The leftmost maximal independent set of columns, as a matrix.
    pub fn column_space(&self) -> Matrix {
        self.select_columns(&self.pivot_columns())
    }

    /// Some `x` with `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::input(format!(
                "solve: right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let bm = Matrix::from_columns(self.rows, &[b.to_vec()]);
        Ok(self.solve_matrix(&bm)?.map(|x| x.column(0)))
    }

    /// Some `X` with `self * X = b`, free variables set to zero.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows != self.rows {
            return Err(Error::input("solve_matrix: row count mismatch"));
        }
        let aug = Matrix::hstack(self.rows, &[self, b]);
        let rows = aug.reducer_of_rows().rref_rows();
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (p, r) in rows {
            if p >= self.cols {
                return Ok(None);
            }
            for j in 0..b.cols {
                x[(p, j)] = r[self.cols + j].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_matrix(&Matrix::identity(self.rows)).ok()??;
        if (self * &x).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    /// A matrix `L` with `L * self = I`, for `self` of full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let rows = self.transpose().pivot_columns();
        if rows.len() != self.cols {
            return None;
        }
        let sq = self.select_rows(&rows);
        let inv = sq.inverse()?;
        let mut l = Matrix::zeros(self.cols, self.rows);
        for (j, &r) in rows.iter().enumerate() {
            for i in 0..self.cols {
                l[(i, r)] = inv[(i, j)].clone();
            }
        }
        Some(l)
    }

    /// Coefficients `c_0, ..., c_n` (with `c_n = 1`) of `det(tI - self)`,
    /// by the Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<Rational> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += &c[n + 1 - k];
            }
            m = next;
            let am = self * &m;
            c[n - k] = -am.trace() / int(k as i64);
        }
        c
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.clone()
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let brow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

type SparseRow = Vec<(usize, Rational)>;

/// Incremental row echelon form.
///
/// Rows are kept sparse with a leading 1. The final reduced form depends only
/// on the row space, so insertion order never changes derived bases.
#[derive(Clone, Debug)]
pub struct RowReducer {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        RowReducer { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; returns its new leading column.
    pub fn reduce(&self, v: &mut [Rational]) -> Option<usize> {
        debug_assert_eq!(v.len(), self.ncols);
        let mut lead = None;
        for c in 0..self.ncols {
            if v[c].is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let f = v[c].clone();
                    for (j, x) in &self.rows[r] {
                        v[*j] -= &f * x;
                    }
                }
                None => {
                    if lead.is_none() {
                        lead = Some(c);
                    }
                }
            }
        }
        lead
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        let Some(p) = self.reduce(&mut v) else {
            return false;
        };
        let inv = v[p].recip();
        let row: SparseRow =
            v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x * &inv)).collect();
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vec(&w)
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Fully reduced rows `(pivot, dense row)` in increasing pivot order.
    pub fn rref_rows(&self) -> Vec<(usize, Vec<Rational>)> {
        let pivots = self.pivots();
        let mut done: Vec<(usize, Vec<Rational>)> = Vec::with_capacity(pivots.len());
        for &p in pivots.iter().rev() {
            let mut dense = zero_vec(self.ncols);
            for (j, x) in &self.rows[self.pivot_row[p].unwrap()] {
                dense[*j] = x.clone();
            }
            for (q, qrow) in &done {
                let f = dense[*q].clone();
                if !f.is_zero() {
                    for (d, x) in dense.iter_mut().zip(qrow).skip(*q) {
                        if !x.is_zero() {
                            *d -= &f * x;
                        }
                    }
                }
            }
            done.push((p, dense));
        }
        done.reverse();
        done
    }

    /// Basis of `{v : row · v = 0 for all rows}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let rows = self.rref_rows();
        let mut is_pivot = vec![false; self.ncols];
        for (p, _) in &rows {
            is_pivot[*p] = true;
        }
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if is_pivot[f] {
                continue;
            }
            let mut v = zero_vec(self.ncols);
            v[f] = Rational::one();
            for (p, r) in &rows {
                if !r[f].is_zero() {
                    v[*p] = -r[f].clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// Reduced basis of the row space as dense vectors.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rref_rows().into_iter().map(|(_, r)| r).collect()
    }
}

/// Dimension of the span of the given vectors.
pub fn span_rank(vectors: &[Vec<Rational>], len: usize) -> usize {
    let mut rr = RowReducer::new(len);
    for v in vectors {
        rr.insert(v.clone());
    }
    rr.rank()
}

fn divisors(n: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let small = n.to_u64()?;
    if small == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= small {
        if d > limit {
            return None;
        }
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d != small / d {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn eval_poly(c: &[Rational], t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for x in c.iter().rev() {
        acc = acc * t + x;
    }
    acc
}

/// Distinct rational roots of `c_0 + c_1 t + ... + c_n t^n`, by the rational
/// root theorem. Returns only the roots it can certify; polynomials whose
/// extreme coefficients are too large to factor quickly yield a partial list
/// (possibly just `0`).
pub fn rational_roots(c: &[Rational]) -> Vec<Rational> {
    let mut coeffs: Vec<Rational> = c.to_vec();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    let mut roots = Vec::new();
    if coeffs.len() <= 1 {
        return roots;
    }
    let lead_zeros = coeffs.iter().take_while(|x| x.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Rational::zero());
        coeffs.drain(..lead_zeros);
    }
    if coeffs.len() <= 1 {
        return roots;
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let (Some(ps), Some(qs)) = (divisors(&ints[0], 2_000_000), divisors(ints.last().unwrap(), 2_000_000)) else {
        return roots;
    };
    let mut seen = std::collections::BTreeSet::new();
    for p in &ps {
        for q in &qs {
            for s in [1i64, -1] {
                let cand = Rational::new(p * s, q.clone());
                if seen.insert(cand.clone()) && eval_poly(&coeffs, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, d: &[i64]) -> Matrix {
        Matrix::from_i64(rows, cols, d)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(2).rank(), 2);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(m(2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(2, 2).kernel_basis().len(), 2);
        let k = m(1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let x = Matrix::identity(2).solve(&[int(3), int(5)]).unwrap().unwrap();
        assert_eq!(x, vec![int(3), int(5)]);
        let a = m(1, 2, &[1, 1]);
        let x = a.solve(&[int(2)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(2)]);
        assert!(m(2, 1, &[1, 1]).solve(&[int(0), int(1)]).unwrap().is_none());
        assert!(m(2, 1, &[1, 1]).solve(&[int(0)]).is_err());
    }

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "-3", "7/2", "-1/9"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn inverse_and_left_inverse() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let b = m(3, 2, &[0, 0, 1, 2, 3, 4]);
        let l = b.left_inverse().unwrap();
        assert!((&l * &b).is_identity());
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn charpoly_and_roots() {
        // diag(1, 2, 2) has char poly (t-1)(t-2)^2 = t^3 - 5t^2 + 8t - 4
        let a = m(3, 3, &[1, 0, 0, 0, 2, 0, 0, 0, 2]);
        assert_eq!(a.charpoly(), vec![int(-4), int(8), int(-5), int(1)]);
        let mut r = rational_roots(&a.charpoly());
        r.sort();
        assert_eq!(r, vec![int(1), int(2)]);
        // t^2 - 2 has no rational roots
        assert!(rational_roots(&[int(-2), int(0), int(1)]).is_empty());
        assert_eq!(rational_roots(&[int(0), int(-1), int(2)]), vec![int(0), frac(1, 2)]);
    }

    #[test]
    fn rref_is_canonical() {
        let a = m(3, 3, &[0, 2, 4, 1, 1, 1, 1, 3, 5]);
        let b = m(3, 3, &[1, 3, 5, 0, 2, 4, 1, 1, 1]);
        assert_eq!(a.rref(), b.rref());
        assert_eq!(a.rref().1, vec![0, 1]);
    }
}
