//! Dense matrices over the exact rationals.
//!
//! Everything downstream identifies subspaces with their reduced
//! row-echelon bases, so two subspaces are equal exactly when their
//! canonical matrices are equal, and quotients can be realized on the
//! complement of the pivot coordinates.  No floating point anywhere.

use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Zero};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Parses `p`, `-p`, or `p/q`.
pub fn q_from_str(s: &str) -> Option<Q> {
    Q::from_str(s.trim()).ok()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    /// Row-major, exactly rows·cols entries.
    entries: Vec<Q>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Q>) -> RatMatrix {
        assert_eq!(entries.len(), rows * cols, "entry count must match the shape");
        RatMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix::new(rows, cols, vec![Q::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> RatMatrix {
        RatMatrix::new(rows, cols, entries.iter().map(|&n| q_int(n)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn hstack(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = RatMatrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&rhs.entries);
        RatMatrix::new(self.rows + rhs.rows, self.cols, entries)
    }

    pub fn column(&self, j: usize) -> RatMatrix {
        let mut c = RatMatrix::zeros(self.rows, 1);
        for i in 0..self.rows {
            c.set(i, 0, self.get(i, j).clone());
        }
        c
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j) / &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the row space: the nonzero rows of the reduced
    /// echelon form.
    pub fn row_space_canonical(&self) -> RatMatrix {
        let (r, pivots) = self.rref();
        let mut rows = Vec::with_capacity(pivots.len());
        for i in 0..pivots.len() {
            rows.push(r.row(i).to_vec());
        }
        if rows.is_empty() {
            RatMatrix::zeros(0, self.cols)
        } else {
            RatMatrix::from_rows(rows)
        }
    }

    /// Canonical basis of the column space, returned as rows.
    pub fn column_space_canonical(&self) -> RatMatrix {
        self.transpose().row_space_canonical()
    }

    /// Basis of the null space as columns, one per free column, with a
    /// unit at the free coordinate.
    pub fn null_space_columns(&self) -> RatMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = RatMatrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, Q::one());
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, -r.get(i, fc).clone());
            }
        }
        out
    }

    /// Any exact solution `X` of `self · X = b`, or None when the system
    /// is inconsistent.  Free variables are set to zero.
    pub fn solve_exact(&self, b: &RatMatrix) -> Option<RatMatrix> {
        assert_eq!(self.rows, b.rows, "right side must match the row count");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = RatMatrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_q).collect())
            .collect()
    }
}

pub fn format_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[{}]", self.row(i).iter().map(format_q).collect::<Vec<_>>().join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduces `v` modulo the row space of a canonical basis; the result is
/// zero exactly when `v` lies in the span.
pub fn reduce_row(v: &[Q], basis: &RatMatrix, pivots: &[usize]) -> Vec<Q> {
    let mut out = v.to_vec();
    for (i, &p) in pivots.iter().enumerate() {
        if out[p].is_zero() {
            continue;
        }
        let f = out[p].clone();
        for j in 0..out.len() {
            let v = &out[j] - &f * basis.get(i, j);
            out[j] = v;
        }
    }
    out
}

/// Subspaces of Q^n carried as canonical reduced-echelon row bases.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the given rows inside Q^ambient.
    pub fn span_rows(ambient: usize, rows: &RatMatrix) -> Subspace {
        assert_eq!(rows.cols(), ambient, "rows must live in the ambient space");
        let basis = rows.row_space_canonical();
        let pivots = basis.rref().1;
        Subspace { ambient, basis, pivots }
    }

    /// Span of the given columns inside Q^ambient.
    pub fn span_columns(ambient: usize, cols: &RatMatrix) -> Subspace {
        Subspace::span_rows(ambient, &cols.transpose())
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace::span_rows(ambient, &RatMatrix::zeros(0, ambient))
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::span_rows(ambient, &RatMatrix::identity(ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical row basis; the unique reduced-echelon matrix spanning the
    /// subspace, so equality of subspaces is equality of these matrices.
    pub fn basis_rows(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn contains_row(&self, v: &[Q]) -> bool {
        reduce_row(v, &self.basis, &self.pivots).iter().all(Zero::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.basis.rows()).all(|i| self.contains_row(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span_rows(self.ambient, &self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // Members of self that die in the quotient by other.
        let q = other.quotient_projection();
        let cols = self.basis.transpose();
        let combos = q.mul(&cols).null_space_columns();
        Subspace::span_columns(self.ambient, &cols.mul(&combos))
    }

    /// Image of the subspace under a linear map out of its ambient space.
    pub fn map_through(&self, matrix: &RatMatrix) -> Subspace {
        assert_eq!(matrix.cols(), self.ambient);
        Subspace::span_columns(matrix.rows(), &matrix.mul(&self.basis.transpose()))
    }

    /// Preimage under a linear map into the ambient space.
    pub fn preimage_through(&self, matrix: &RatMatrix) -> Subspace {
        assert_eq!(matrix.rows(), self.ambient);
        let q = self.quotient_projection();
        Subspace::span_columns(matrix.cols(), &q.mul(matrix).null_space_columns())
    }

    /// Projection Q^ambient → Q^(ambient−dim) onto the non-pivot
    /// coordinates; its kernel is exactly this subspace.
    pub fn quotient_projection(&self) -> RatMatrix {
        let free: Vec<usize> =
            (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect();
        let mut q = RatMatrix::zeros(free.len(), self.ambient);
        for (j, &fc) in free.iter().enumerate() {
            q.set(j, fc, Q::one());
            for (i, &pc) in self.pivots.iter().enumerate() {
                q.set(j, pc, -self.basis.get(i, fc).clone());
            }
        }
        q
    }

    /// Right inverse of [`Self::quotient_projection`]: sends the j-th
    /// quotient coordinate to the j-th non-pivot unit vector.
    pub fn quotient_section(&self) -> RatMatrix {
        let free: Vec<usize> =
            (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect();
        let mut s = RatMatrix::zeros(self.ambient, free.len());
        for (j, &fc) in free.iter().enumerate() {
            s.set(fc, j, Q::one());
        }
        s
    }
}

/// Positive-magnitude bound on numerators and denominators, used by the
/// exhaustive searches to enumerate a finite grid of rationals.
pub fn small_rationals(max_abs: i64) -> Vec<Q> {
    let mut out = vec![Q::zero()];
    for n in 1..=max_abs {
        for d in 1..=max_abs {
            let q = Q::new(n.into(), d.into());
            if !out.contains(&q) {
                out.push(q.clone());
                out.push(-q);
            }
        }
    }
    out
}
