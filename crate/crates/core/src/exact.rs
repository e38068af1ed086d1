//! Exact rational linear algebra.
//!
//! Every Möbius and weighting computation in the crate goes through this
//! module. Scalars are arbitrary-precision rationals, always in lowest terms,
//! so results are exact and reproducible: two runs on the same input produce
//! the same reduced fractions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// An exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Builds the rational `n/1`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `p/q`, reducing to lowest terms.
///
/// Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders `p/q` in lowest terms, or `p` alone when `q = 1`.
pub fn render(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("computed inverse failed the product check")]
    InverseCheckFailed,
}

/// A dense matrix of rationals with row and column labels.
///
/// Labels are the object (or arrow) identifiers of the category the matrix
/// belongs to, in the category's declared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    entries: Vec<Rational>,
}

impl QMat {
    pub fn zeros(row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        let n = row_labels.len() * col_labels.len();
        QMat {
            row_labels,
            col_labels,
            entries: vec![Rational::zero(); n],
        }
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let mut m = QMat::zeros(labels.clone(), labels);
        for i in 0..m.rows() {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. Panics if rows have unequal length
    /// or do not match the labels.
    pub fn from_rows(row_labels: Vec<String>, col_labels: Vec<String>, rows: Vec<Vec<Rational>>) -> Self {
        assert_eq!(rows.len(), row_labels.len(), "row count does not match labels");
        let mut entries = Vec::with_capacity(row_labels.len() * col_labels.len());
        for row in rows {
            assert_eq!(row.len(), col_labels.len(), "row length does not match labels");
            entries.extend(row);
        }
        QMat {
            row_labels,
            col_labels,
            entries,
        }
    }

    /// Integer matrix with labels `0..n`, handy in tests.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        QMat::from_rows(
            labels(r),
            labels(c),
            rows.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        let c = self.cols();
        self.entries[i * c + j] = value;
    }

    /// Looks an entry up by its labels.
    pub fn entry(&self, row: &str, col: &str) -> Option<&Rational> {
        let i = self.row_labels.iter().position(|l| l == row)?;
        let j = self.col_labels.iter().position(|l| l == col)?;
        Some(self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        let c = self.cols();
        &self.entries[i * c..(i + 1) * c]
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.col_labels.clone(), self.row_labels.clone());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> Result<QMat, LinalgError> {
        if self.cols() != other.rows() {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        let mut out = QMat::zeros(self.row_labels.clone(), other.col_labels.clone());
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols() {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols() + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols());
        (0..self.rows())
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows(), self.cols()), (other.rows(), other.cols()));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
        out
    }

    pub fn scale_rows(&self, factors: &[Rational]) -> QMat {
        assert_eq!(factors.len(), self.rows());
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let v = self.get(i, j) * &factors[i];
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows()).all(|i| {
                (0..self.cols()).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn sum_entries(&self) -> Rational {
        self.entries.iter().sum()
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.rows()).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<Rational> {
        (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Keeps only the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMat {
        QMat::from_rows(
            rows.iter().map(|&i| self.row_labels[i].clone()).collect(),
            cols.iter().map(|&j| self.col_labels[j].clone()).collect(),
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<Rational>> = (0..self.rows()).map(|i| self.row(i).to_vec()).collect();
        reduce_rows(&mut work, self.cols()).len()
    }

    /// Exact inverse by Gauss–Jordan elimination on `[Z | I]`.
    ///
    /// The result is checked by multiplying back on both sides.
    pub fn invert(&self) -> Result<QMat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        let mut work: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        let pivots = reduce_rows(&mut work, n);
        if pivots.len() < n {
            return Err(LinalgError::Singular {
                rank: pivots.len(),
                size: n,
            });
        }
        // Full rank: row i has its pivot in column i.
        let inv = QMat::from_rows(
            self.col_labels.clone(),
            self.row_labels.clone(),
            work.into_iter().map(|row| row[n..].to_vec()).collect(),
        );
        if !self.mul(&inv)?.is_identity() || !inv.mul(self)?.is_identity() {
            return Err(LinalgError::InverseCheckFailed);
        }
        Ok(inv)
    }

    /// Solves `A x = b` exactly; see [`AffineSolutionSet`].
    pub fn solve_affine(&self, b: &[Rational]) -> Result<AffineSolutionSet, LinalgError> {
        if b.len() != self.rows() {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows()
            )));
        }
        let n = self.cols();
        let mut work: Vec<Vec<Rational>> = (0..self.rows())
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let pivots = reduce_rows(&mut work, n + 1);
        if pivots.last() == Some(&n) {
            return Ok(AffineSolutionSet::none());
        }
        let mut particular = vec![Rational::zero(); n];
        for (r, &p) in pivots.iter().enumerate() {
            particular[p] = work[r][n].clone();
        }
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let basis = free
            .iter()
            .map(|&j| {
                let mut v = vec![Rational::zero(); n];
                v[j] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -work[r][j].clone();
                }
                v
            })
            .collect();
        Ok(AffineSolutionSet {
            particular: Some(particular),
            nullspace_basis: basis,
        })
    }
}

/// Reduces `rows` to reduced row-echelon form over the first `width` columns
/// and returns the pivot columns in order. Pivoting takes the first nonzero
/// entry; exact arithmetic makes magnitude-based pivoting pointless.
fn reduce_rows(rows: &mut [Vec<Rational>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Which case of the none / unique / many trichotomy a linear system is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    None,
    Unique,
    Family,
}

/// Solution set of `A x = b`: empty, a single point, or
/// `particular + span(nullspace_basis)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSet {
    pub particular: Option<Vec<Rational>>,
    pub nullspace_basis: Vec<Vec<Rational>>,
}

impl AffineSolutionSet {
    fn none() -> Self {
        AffineSolutionSet {
            particular: None,
            nullspace_basis: Vec::new(),
        }
    }

    pub fn kind(&self) -> SolutionKind {
        match (&self.particular, self.nullspace_basis.is_empty()) {
            (None, _) => SolutionKind::None,
            (Some(_), true) => SolutionKind::Unique,
            (Some(_), false) => SolutionKind::Family,
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.particular.is_some()
    }
}

impl fmt::Display for QMat {
    /// Row-major rendering with a header line of column labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows())
            .map(|i| self.row(i).iter().map(render).collect())
            .collect();
        let label_w = self.row_labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols())
            .map(|j| {
                cells
                    .iter()
                    .map(|row| row[j].chars().count())
                    .chain(std::iter::once(self.col_labels[j].chars().count()))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        write!(f, "{:label_w$}", "")?;
        for (j, l) in self.col_labels.iter().enumerate() {
            write!(f, "  {:>w$}", l, w = widths[j])?;
        }
        writeln!(f)?;
        for (i, row) in cells.iter().enumerate() {
            write!(f, "{:label_w$}", self.row_labels[i])?;
            for (j, c) in row.iter().enumerate() {
                write!(f, "  {:>w$}", c, w = widths[j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Exact binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// True when the rational is a non-negative integer.
pub fn is_natural(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_lowest_terms() {
        assert_eq!(render(&ratio(6, -4)), "-3/2");
        assert_eq!(render(&ratio(4, 2)), "2");
        assert_eq!(render(&int(0)), "0");
        assert_eq!(parse_rational("-5/2"), Some(ratio(-5, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn invert_power_matrix() {
        // zeta of F_3: (i^j)
        let z = QMat::from_ints(&[&[1, 2, 3], &[1, 4, 9], &[1, 8, 27]]);
        let m = z.invert().unwrap();
        assert_eq!(m.get(0, 1), &ratio(-5, 2));
    }

    #[test]
    fn invert_identity_and_2x2() {
        let id = QMat::from_ints(&[&[1, 0], &[0, 1]]);
        assert_eq!(id.invert().unwrap(), id);
        let z = QMat::from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(z.invert().unwrap(), QMat::from_ints(&[&[1, -1], &[-1, 2]]));
    }

    #[test]
    fn singular_reports_rank() {
        let z = QMat::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(z.invert(), Err(LinalgError::Singular { rank: 1, size: 2 }));
        let r = QMat::from_ints(&[&[1, 2]]);
        assert!(matches!(r.invert(), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn affine_trichotomy() {
        let ones = vec![int(1); 3];
        // pushout shape L: a -> b1, a -> b2
        let l = QMat::from_ints(&[&[1, 1, 1], &[0, 1, 0], &[0, 0, 1]]);
        let s = l.solve_affine(&ones).unwrap();
        assert_eq!(s.kind(), SolutionKind::Unique);
        assert_eq!(s.particular.unwrap(), vec![int(-1), int(1), int(1)]);

        let g = QMat::from_ints(&[&[3]]);
        let s = g.solve_affine(&[int(1)]).unwrap();
        assert_eq!(s.particular.unwrap(), vec![ratio(1, 3)]);

        let bad = QMat::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(bad.solve_affine(&[int(1), int(2)]).unwrap().kind(), SolutionKind::None);

        let fam = bad.solve_affine(&[int(1), int(1)]).unwrap();
        assert_eq!(fam.kind(), SolutionKind::Family);
        assert_eq!(fam.nullspace_basis.len(), 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, -1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn display_has_header() {
        let m = QMat::from_rows(
            vec!["a".into(), "b".into()],
            vec!["a".into(), "b".into()],
            vec![vec![int(1), ratio(-1, 2)], vec![int(0), int(1)]],
        );
        let s = m.to_string();
        assert_eq!(s.lines().count(), 3);
        assert!(s.lines().nth(1).unwrap().ends_with("-1/2"));
    }
}
