//! Exact dense linear algebra over the rationals.
//!
//! Everything downstream (relation spaces, differentials, boundary matrices)
//! is expressed as a [`Matrix`] of [`Scalar`]s, and every rank or kernel is
//! computed by exact Gauss-Jordan elimination. There are no tolerances
//! anywhere in the crate.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number. Always stored in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Shorthand for an integer-valued [`Scalar`].
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// A dense row-major matrix of rationals.
///
/// Zero-sized shapes (`0 x m`, `m x 0`) are legal and have rank 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    ///
    /// # Panics
    ///
    /// If `entries.len() != rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        Matrix { rows, cols, entries }
    }

    /// Builds a matrix from integer rows. All rows must have the same length.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&v| int(v)));
        }
        Matrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length
    /// `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length must equal row count");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product. Returns `None` on a shape mismatch.
    pub fn checked_mul(&self, rhs: &Matrix) -> Option<Matrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Some(out)
    }

    /// Horizontal concatenation. All parts must share a row count; `rows` is
    /// used when `parts` is empty.
    pub fn hstack(rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..p.cols {
                    out[(i, offset + j)] = p[(i, j)].clone();
                }
            }
            offset += p.cols;
        }
        out
    }

    /// Copies of the entries as `i64`, if every entry is an integer that fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None })
                    .collect()
            })
            .collect()
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn kernel_basis(&self) -> Matrix {
        kernel_basis(self)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    /// Strictly increasing; one per nonzero row of `reduced`.
    pub pivot_columns: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }
}

fn eliminate(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r][c..].iter_mut() {
            *v *= &inv;
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let factor = other[c].clone();
            for (dst, src) in other[c..].iter_mut().zip(&pivot_row[c..]) {
                if !src.is_zero() {
                    *dst -= &factor * src;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix) -> Rref {
    let mut rows: Vec<Vec<Scalar>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let pivot_columns = eliminate(&mut rows, m.cols);
    let entries = rows.into_iter().flatten().collect();
    Rref {
        reduced: Matrix::from_entries(m.rows, m.cols, entries),
        pivot_columns,
    }
}

pub fn rank(m: &Matrix) -> usize {
    // Eliminate along the shorter side.
    if m.rows > m.cols {
        rref(&m.transpose()).rank()
    } else {
        rref(m).rank()
    }
}

/// Canonical null-space basis as the columns of a `cols x (cols - rank)`
/// matrix: for each free column `f` (in increasing order) the vector with
/// `x_f = 1`, every other free variable zero, and pivot variables solved from
/// the RREF.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let Rref {
        reduced,
        pivot_columns,
    } = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &pivot_columns {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut out = Matrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = Scalar::one();
        for (row, &p) in pivot_columns.iter().enumerate() {
            let v = &reduced[(row, f)];
            if !v.is_zero() {
                out[(p, k)] = -v;
            }
        }
    }
    out
}

/// Incrementally maintained row space of a set of vectors, kept in RREF.
///
/// Used for span-membership queries (closure of hyperplane sets) and for
/// comparing column spaces.
#[derive(Clone, Debug)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a, I>(dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a [Scalar]>,
    {
        let mut s = RowSpace::new(dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// The reduced basis, sorted by pivot column.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Remainder of `v` after reducing against the basis. Zero iff `v` lies in
    /// the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (dst, src) in out.iter_mut().zip(row) {
                if !src.is_zero() {
                    *dst -= &factor * src;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the spanning set. Returns `false` if it was already in the
    /// span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut rem = self.reduce(v);
        let Some(p) = rem.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = rem[p].recip();
        for x in rem.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (dst, src) in row.iter_mut().zip(&rem) {
                if !src.is_zero() {
                    *dst -= &factor * src;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, rem);
        true
    }
}

/// Scales `v` so its first nonzero entry is 1. Returns `None` for the zero
/// vector.
pub fn normalize_leading(v: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.recip();
    Some(v.iter().map(|x| x * &inv).collect())
}

/// If `a = c * b` for some nonzero scalar `c`, returns `c`.
pub fn scalar_multiple(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    if a.len() != b.len() {
        return None;
    }
    let mut ratio: Option<Scalar> = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => {}
            (false, false) => {
                let r = x / y;
                match &ratio {
                    None => ratio = Some(r),
                    Some(q) if *q == r => {}
                    Some(_) => return None,
                }
            }
            _ => return None,
        }
    }
    ratio
}

/// Parses `p`, `-p`, `+p` or `p/q` (q > 0) into a reduced rational.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['-', '+']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            d.parse().ok()?
        }
    };
    if !den.is_positive() {
        return None;
    }
    Some(Scalar::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = Matrix::identity(3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);
    }

    #[test]
    fn single_row_of_ones() {
        let m = Matrix::from_i64_rows(&[[1, 1, 1]]);
        let r = m.rref();
        assert_eq!(r.reduced, m);
        assert_eq!(r.pivot_columns, vec![0]);
        let k = m.kernel_basis();
        assert_eq!(
            k,
            Matrix::from_i64_rows(&[[-1, -1], [1, 0], [0, 1]])
        );
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(Matrix::zeros(4, 4).rank(), 0);
        assert_eq!(Matrix::zeros(0, 3).rank(), 0);
        assert_eq!(Matrix::zeros(3, 0).rank(), 0);
        assert_eq!(Matrix::zeros(0, 3).kernel_basis(), Matrix::identity(3));
    }

    #[test]
    fn identity_kernel_is_empty() {
        let k = Matrix::identity(3).kernel_basis();
        assert_eq!((k.rows(), k.cols()), (3, 0));
    }

    #[test]
    fn rref_with_fractions() {
        let m = Matrix::from_i64_rows(&[[2, 4, 1], [1, 3, 0]]);
        let r = m.rref();
        assert_eq!(r.pivot_columns, vec![0, 1]);
        assert_eq!(r.reduced[(0, 2)], q(3, 2));
        assert_eq!(r.reduced[(1, 2)], q(-1, 2));
    }

    #[test]
    fn row_space_membership() {
        let a = [int(1), int(-1), int(0)];
        let b = [int(0), int(1), int(-1)];
        let s = RowSpace::spanned_by(3, [&a[..], &b[..]]);
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[int(1), int(0), int(-1)]));
        assert!(!s.contains(&[int(1), int(0), int(0)]));
    }

    #[test]
    fn scalar_multiple_detects_ratio() {
        let a = [int(2), int(0), int(-4)];
        let b = [int(-1), int(0), int(2)];
        assert_eq!(scalar_multiple(&a, &b), Some(int(-2)));
        assert_eq!(scalar_multiple(&a, &[int(1), int(1), int(2)]), None);
        assert_eq!(scalar_multiple(&[int(0)], &[int(0)]), None);
    }

    #[test]
    fn parse_scalars() {
        assert_eq!(parse_scalar("-3"), Some(int(-3)));
        assert_eq!(parse_scalar("4/6"), Some(q(2, 3)));
        assert_eq!(parse_scalar("+7"), Some(int(7)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("1/-2"), None);
        assert_eq!(parse_scalar("x"), None);
        assert_eq!(parse_scalar("1.5"), None);
        assert_eq!(parse_scalar("-"), None);
    }
}
