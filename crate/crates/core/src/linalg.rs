//! Dense complex matrices and vectors.
//!
//! Storage is row-major `Vec<Complex64>`. Every operator in this crate is at
//! most 216 x 216, so there is no sparse representation; the matrix product
//! skips zero entries of the left factor, which keeps the heavily structured
//! Pauli/projector products cheap without changing the storage model.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Default tolerance for eigenvalue and commutator checks.
pub const CHECK_TOL: f64 = 1e-10;
/// Tolerance used when normalizing and validating state vectors.
pub const NORM_TOL: f64 = 1e-12;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("expected {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("cannot normalize a vector of norm {0:e}")]
    ZeroNorm(f64),
}

fn check_dims(op: &'static str, left: usize, right: usize) -> Result<(), LinalgError> {
    if left == right {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { op, left, right })
    }
}

/// A square complex matrix.
#[derive(Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Operator {
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::ZeroDimension);
        }
        if entries.len() != dim * dim {
            return Err(LinalgError::WrongLength {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self, LinalgError> {
        Self::from_entries(dim, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "operator dimension must be positive");
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ONE;
        }
        m
    }

    /// Rank-one projector onto the computational basis vector `index`.
    pub fn basis_projector(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut m = Self::zeros(dim);
        m.entries[index * dim + index] = ONE;
        m
    }

    /// Matrix whose column `j` is basis vector `image[j]`.
    pub fn from_basis_map(image: &[usize]) -> Self {
        let dim = image.len();
        let mut m = Self::zeros(dim);
        for (j, &i) in image.iter().enumerate() {
            m.entries[i * dim + j] = ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinalgError> {
        check_dims("add", self.dim, other.dim)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        check_dims("sub", self.dim, other.dim)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        check_dims("mul", self.dim, other.dim)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.entries[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { dim: n, entries: out })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|i| (i..n).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = &self.adjoint() * self;
        prod.approx_eq(&Self::identity(self.dim), tol)
    }

    /// Entrywise comparison; false on dimension mismatch.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Frobenius distance, or `None` on dimension mismatch.
    pub fn distance(&self, other: &Self) -> Option<f64> {
        self.try_sub(other).ok().map(|d| d.norm())
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{})", self.dim, self.dim)?;
        if self.dim <= 8 {
            for i in 0..self.dim {
                let row: Vec<String> = (0..self.dim)
                    .map(|j| {
                        let z = self.get(i, j);
                        format!("{:+.3}{:+.3}i", z.re, z.im)
                    })
                    .collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}

// Operator arithmetic through the std ops panics on dimension mismatch; the
// `try_*` methods are the fallible forms.

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.try_add(rhs).expect("operator add")
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.try_sub(rhs).expect("operator sub")
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.try_mul(rhs).expect("operator mul")
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(-ONE)
    }
}

impl Mul<&Operator> for Complex64 {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        rhs.scale(self)
    }
}

/// Kronecker product; the left factor indexes the slower digit.
pub fn tensor(a: &Operator, b: &Operator) -> Operator {
    let (n, m) = (a.dim, b.dim);
    let dim = n * m;
    let mut entries = vec![ZERO; dim * dim];
    for i in 0..n {
        for j in 0..n {
            let aij = a.get(i, j);
            if aij == ZERO {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    entries[(i * m + k) * dim + (j * m + l)] = aij * b.get(k, l);
                }
            }
        }
    }
    Operator { dim, entries }
}

/// Kronecker product of a non-empty list of factors, left to right.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a Operator>) -> Operator {
    let mut iter = factors.into_iter();
    let first = iter.next().expect("tensor_all needs at least one factor").clone();
    iter.fold(first, |acc, f| tensor(&acc, f))
}

/// `ab - ba`.
pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator, LinalgError> {
    check_dims("commutator", a.dim, b.dim)?;
    Ok(&(a * b) - &(b * a))
}

/// `ab + ba`.
pub fn anticommutator(a: &Operator, b: &Operator) -> Result<Operator, LinalgError> {
    check_dims("anticommutator", a.dim, b.dim)?;
    Ok(&(a * b) + &(b * a))
}

/// A complex vector of unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Normalizes `amplitudes`; fails on an empty or zero vector.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self, LinalgError> {
        if amplitudes.is_empty() {
            return Err(LinalgError::ZeroDimension);
        }
        let n = vector_norm(&amplitudes);
        if n < NORM_TOL {
            return Err(LinalgError::ZeroNorm(n));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / n).collect(),
        })
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amplitudes)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64, LinalgError> {
        check_dims("inner", self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Kronecker product of two states.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|&b| a * b));
        }
        Self { amplitudes }
    }
}

pub fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Matrix-vector product. The result is not renormalized.
pub fn apply(a: &Operator, v: &StateVector) -> Result<Vec<Complex64>, LinalgError> {
    check_dims("apply", a.dim, v.dim())?;
    let n = a.dim;
    Ok((0..n)
        .map(|i| {
            a.entries[i * n..(i + 1) * n]
                .iter()
                .zip(&v.amplitudes)
                .filter(|(x, _)| **x != ZERO)
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect())
}

/// `||a v - lambda v||`.
pub fn eigen_residual(a: &Operator, v: &StateVector, lambda: Complex64) -> Result<f64, LinalgError> {
    let av = apply(a, v)?;
    let diff: Vec<Complex64> = av
        .iter()
        .zip(&v.amplitudes)
        .map(|(x, y)| x - lambda * y)
        .collect();
    Ok(vector_norm(&diff))
}

/// True iff `||a v - lambda v|| < tol`; false on dimension mismatch.
pub fn is_eigenvector(a: &Operator, v: &StateVector, lambda: Complex64, tol: f64) -> bool {
    eigen_residual(a, v, lambda).is_ok_and(|r| r < tol)
}

/// `<v|a|v>`.
pub fn expectation(a: &Operator, v: &StateVector) -> Result<Complex64, LinalgError> {
    let av = apply(a, v)?;
    Ok(v.amplitudes.iter().zip(&av).map(|(x, y)| x.conj() * y).sum())
}

pub mod pauli {
    //! The 2x2 Pauli matrices in the Z eigenbasis (index 0 = spin up).

    use super::{Operator, I, ONE, ZERO};

    pub fn identity() -> Operator {
        Operator::identity(2)
    }

    pub fn x() -> Operator {
        Operator::from_entries(2, vec![ZERO, ONE, ONE, ZERO]).unwrap()
    }

    pub fn y() -> Operator {
        Operator::from_entries(2, vec![ZERO, -I, I, ZERO]).unwrap()
    }

    pub fn z() -> Operator {
        Operator::from_entries(2, vec![ONE, ZERO, ZERO, -ONE]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        assert_eq!(tensor(&pauli::identity(), &pauli::identity()), Operator::identity(4));
    }

    #[test]
    fn xx_flips_both_spins() {
        let xx = tensor(&pauli::x(), &pauli::x());
        let up_up = StateVector::basis(4, 0);
        let out = apply(&xx, &up_up).unwrap();
        assert_eq!(out, StateVector::basis(4, 3).amplitudes());
    }

    #[test]
    fn tensor_indexes_left_factor_slowest() {
        let a = Operator::from_real(2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = Operator::from_real(2, &[0.0, 5.0, 6.0, 7.0]).unwrap();
        let ab = tensor(&a, &b);
        assert_eq!(ab.dim(), 4);
        // block (0,1) is 2*b
        assert_eq!(ab.get(0, 3), c(10.0, 0.0));
        assert_eq!(ab.get(3, 2), c(24.0, 0.0));
    }

    #[test]
    fn pauli_commutators() {
        assert_eq!(commutator(&pauli::x(), &pauli::x()).unwrap(), Operator::zeros(2));
        let xz = commutator(&pauli::x(), &pauli::z()).unwrap();
        assert!(xz.approx_eq(&pauli::y().scale(c(0.0, -2.0)), 0.0));
    }

    #[test]
    fn commutator_rejects_mismatched_dims() {
        let err = commutator(&pauli::x(), &Operator::identity(3)).unwrap_err();
        assert!(matches!(err, LinalgError::DimensionMismatch { left: 2, right: 3, .. }));
    }

    #[test]
    fn apply_identity_and_z() {
        let v = StateVector::normalized(vec![c(1.0, 2.0), c(-0.5, 0.0)]).unwrap();
        assert_eq!(apply(&Operator::identity(2), &v).unwrap(), v.amplitudes());

        let z = tensor_all([&pauli::z(), &pauli::identity(), &pauli::identity()]);
        let up3 = StateVector::basis(8, 0);
        assert!(is_eigenvector(&z, &up3, ONE, CHECK_TOL));
    }

    #[test]
    fn apply_rejects_mismatched_dims() {
        assert!(apply(&pauli::x(), &StateVector::basis(3, 0)).is_err());
        assert!(!is_eigenvector(&pauli::x(), &StateVector::basis(3, 0), ONE, 1.0));
    }

    #[test]
    fn identity_expectation_is_one() {
        let v = StateVector::normalized(vec![c(1.0, 1.0), c(0.0, 3.0), c(2.0, 0.0)]).unwrap();
        let e = expectation(&Operator::identity(3), &v).unwrap();
        assert!((e - ONE).norm() < NORM_TOL);
    }

    #[test]
    fn normalizing_zero_vector_fails() {
        assert!(matches!(
            StateVector::normalized(vec![ZERO, ZERO]),
            Err(LinalgError::ZeroNorm(_))
        ));
        assert!(StateVector::normalized(vec![]).is_err());
    }

    #[test]
    fn from_entries_checks_length() {
        assert!(matches!(
            Operator::from_entries(2, vec![ONE; 3]),
            Err(LinalgError::WrongLength { expected: 4, got: 3 })
        ));
        assert!(Operator::from_entries(0, vec![]).is_err());
    }

    #[test]
    fn paulis_are_hermitian_and_unitary() {
        for p in [pauli::identity(), pauli::x(), pauli::y(), pauli::z()] {
            assert!(p.is_hermitian(0.0));
            assert!(p.is_unitary(0.0));
        }
        assert!(!Operator::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap().is_hermitian(1e-12));
    }

    #[test]
    fn pauli_products() {
        // XY = iZ
        let xy = &pauli::x() * &pauli::y();
        assert!(xy.approx_eq(&pauli::z().scale(I), 0.0));
        let anti = anticommutator(&pauli::x(), &pauli::y()).unwrap();
        assert_eq!(anti, Operator::zeros(2));
    }

    #[test]
    fn basis_map_is_permutation_matrix() {
        let p = Operator::from_basis_map(&[1, 2, 0]);
        assert!(p.is_unitary(0.0));
        let out = apply(&p, &StateVector::basis(3, 0)).unwrap();
        assert_eq!(out, StateVector::basis(3, 1).amplitudes());
    }
}
