//! Dense exact linear algebra over cyclotomic scalars, plus the rational and
//! floating positive-semidefiniteness certificates used by the inner-product
//! layer.

use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};

use crate::scalars::{CycScalar, Rational};
use crate::{Error, Result};

/// Dense row-major matrix over `ℚ(ζ)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<CycScalar>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![CycScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, CycScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch);
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &CycScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&CycScalar::from_int(-1)))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch);
        }
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let cur = out.at(r, c) + &prod;
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[CycScalar]) -> Result<Vec<CycScalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch);
        }
        let mut out = vec![CycScalar::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.at(r, c);
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                out[r] = &out[r] + &(a * &v[c]);
            }
        }
        Ok(out)
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    /// Exact rank by Gaussian elimination over the field.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            for k in 0..cols {
                m.swap(rank * cols + k, p * cols + k);
            }
            let inv = m[rank * cols + c].inv().expect("pivot nonzero");
            for k in c..cols {
                m[rank * cols + k] = &m[rank * cols + k] * &inv;
            }
            for r in 0..rows {
                if r != rank && !m[r * cols + c].is_zero() {
                    let f = m[r * cols + c].clone();
                    for k in c..cols {
                        let sub = &f * &m[rank * cols + k];
                        m[r * cols + k] = &m[r * cols + k] - &sub;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right kernel `{x : Ax = 0}`.
    pub fn kernel(&self) -> Vec<Vec<CycScalar>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            for k in 0..cols {
                m.swap(rank * cols + k, p * cols + k);
            }
            let inv = m[rank * cols + c].inv().expect("pivot nonzero");
            for k in c..cols {
                m[rank * cols + k] = &m[rank * cols + k] * &inv;
            }
            for r in 0..rows {
                if r != rank && !m[r * cols + c].is_zero() {
                    let f = m[r * cols + c].clone();
                    for k in c..cols {
                        let sub = &f * &m[rank * cols + k];
                        m[r * cols + k] = &m[r * cols + k] - &sub;
                    }
                }
            }
            pivot_of_col[c] = Some(rank);
            rank += 1;
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![CycScalar::zero(); cols];
            v[free] = CycScalar::one();
            for c in 0..cols {
                if let Some(r) = pivot_of_col[c] {
                    v[c] = m[r * cols + free].neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `Ax = b` exactly; `None` when inconsistent (any solution is fine
    /// when underdetermined).
    pub fn solve(&self, b: &[CycScalar]) -> Option<Vec<CycScalar>> {
        if b.len() != self.rows {
            return None;
        }
        let (rows, cols) = (self.rows, self.cols);
        let width = cols + 1;
        let mut m: Vec<CycScalar> = Vec::with_capacity(rows * width);
        for r in 0..rows {
            m.extend(self.data[r * cols..(r + 1) * cols].iter().cloned());
            m.push(b[r].clone());
        }
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r * width + c].is_zero()) else {
                continue;
            };
            for k in 0..width {
                m.swap(rank * width + k, p * width + k);
            }
            let inv = m[rank * width + c].inv().expect("pivot nonzero");
            for k in c..width {
                m[rank * width + k] = &m[rank * width + k] * &inv;
            }
            for r in 0..rows {
                if r != rank && !m[r * width + c].is_zero() {
                    let f = m[r * width + c].clone();
                    for k in c..width {
                        let sub = &f * &m[rank * width + k];
                        m[r * width + k] = &m[r * width + k] - &sub;
                    }
                }
            }
            pivot_of_col[c] = Some(rank);
            rank += 1;
        }
        for r in rank..rows {
            if !m[r * width + cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![CycScalar::zero(); cols];
        for c in 0..cols {
            if let Some(r) = pivot_of_col[c] {
                x[c] = m[r * width + cols].clone();
            }
        }
        Some(x)
    }

    /// Numeric operator 2-norm via the hermitian embedding of `M^H M`.
    pub fn op_norm_approx(&self) -> f64 {
        let gram = self.conj_transpose().matmul(self).expect("shapes agree");
        let eig = hermitian_eigenvalues_approx(&gram);
        eig.into_iter().fold(0.0f64, f64::max).max(0.0).sqrt()
    }
}

/// Stack matrices as flattened rows (used for injectivity certificates).
pub fn stack_vectorized(mats: &[Mat]) -> Mat {
    let cols = mats.first().map_or(0, |m| m.rows * m.cols);
    let rows: Vec<Vec<CycScalar>> = mats.iter().map(|m| m.data.clone()).collect();
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    Mat::from_rows(rows).expect("uniform shapes")
}

/// Exact test that a hermitian matrix with *rational* entries is positive
/// semidefinite, by diagonal-pivoted symmetric elimination.
pub fn psd_exact_rational(a: &[Vec<Rational>]) -> bool {
    psd_pivots(a).is_some()
}

/// Exact positive-definiteness for rational hermitian matrices.
pub fn pd_exact_rational(a: &[Vec<Rational>]) -> bool {
    matches!(psd_pivots(a), Some(r) if r == a.len())
}

/// Runs pivoted elimination; returns the number of (strictly positive) pivots
/// when the matrix is PSD, `None` otherwise.
fn psd_pivots(a: &[Vec<Rational>]) -> Option<usize> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = 0;
    while !active.is_empty() {
        // Largest remaining diagonal entry as pivot.
        let (pos, best) = active
            .iter()
            .enumerate()
            .map(|(pos, &i)| (pos, m[i][i].clone()))
            .max_by(|x, y| x.1.cmp(&y.1))?;
        if best.is_negative() {
            return None;
        }
        if best.is_zero() {
            // PSD with a zero diagonal block forces zero off-diagonals.
            for &i in &active {
                for &j in &active {
                    if !m[i][j].is_zero() {
                        return None;
                    }
                }
            }
            return Some(pivots);
        }
        let p = active.remove(pos);
        let pivot = m[p][p].clone();
        for pos_i in 0..active.len() {
            let i = active[pos_i];
            let f = &m[i][p] / &pivot;
            if f.is_zero() {
                continue;
            }
            for pos_j in 0..active.len() {
                let j = active[pos_j];
                let sub = &f * &m[p][j];
                m[i][j] = &m[i][j] - sub;
            }
        }
        pivots += 1;
    }
    Some(pivots)
}

/// Approximate eigenvalues of a hermitian cyclotomic matrix, through the real
/// symmetric embedding `[[Re, -Im], [Im, Re]]` (each eigenvalue doubled).
pub fn hermitian_eigenvalues_approx(m: &Mat) -> Vec<f64> {
    let n = m.rows();
    if n == 0 {
        return Vec::new();
    }
    let mut embed = nalgebra::DMatrix::<f64>::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let (re, im) = m.at(r, c).approx();
            embed[(r, c)] = re;
            embed[(r + n, c + n)] = re;
            embed[(r, c + n)] = -im;
            embed[(r + n, c)] = im;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(embed);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Deduplicate the doubling: every other entry.
    vals.into_iter().step_by(2).collect()
}

/// Sign of a real cyclotomic value: exact zero test, floating sign otherwise.
pub fn real_sign(x: &CycScalar) -> i32 {
    if x.is_zero() {
        return 0;
    }
    if let Some(q) = x.as_rational() {
        return if q.is_positive() { 1 } else { -1 };
    }
    let (re, im) = x.approx();
    debug_assert!(im.abs() < 1e-9, "real_sign on non-real value");
    if re > 0.0 {
        1
    } else {
        -1
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    #[test]
    fn rank_and_kernel() {
        let m = Mat::from_rows(vec![
            vec![CycScalar::one(), CycScalar::from_int(2)],
            vec![CycScalar::from_int(2), CycScalar::from_int(4)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_exact() {
        let m = Mat::from_rows(vec![
            vec![CycScalar::one(), CycScalar::i()],
            vec![CycScalar::zero(), CycScalar::from_int(2)],
        ])
        .unwrap();
        let b = vec![CycScalar::from_int(3), CycScalar::from_int(4)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x).unwrap(), b);
        let singular = Mat::from_rows(vec![
            vec![CycScalar::one(), CycScalar::one()],
            vec![CycScalar::one(), CycScalar::one()],
        ])
        .unwrap();
        assert!(singular
            .solve(&[CycScalar::zero(), CycScalar::one()])
            .is_none());
    }

    #[test]
    fn psd_certificates() {
        let id = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        assert!(pd_exact_rational(&id));
        let semi = vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]];
        assert!(psd_exact_rational(&semi) && !pd_exact_rational(&semi));
        let neg = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(1, 1)]];
        assert!(!psd_exact_rational(&neg));
        // Zero diagonal with nonzero off-diagonal is not PSD.
        let off = vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]];
        assert!(!psd_exact_rational(&off));
    }

    #[test]
    fn hermitian_eigenvalues() {
        let m = Mat::from_rows(vec![
            vec![CycScalar::from_int(2), CycScalar::i()],
            vec![CycScalar::i().neg(), CycScalar::from_int(2)],
        ])
        .unwrap();
        let eig = hermitian_eigenvalues_approx(&m);
        assert_eq!(eig.len(), 2);
        assert!((eig[0] - 1.0).abs() < 1e-9 && (eig[1] - 3.0).abs() < 1e-9);
    }
}
