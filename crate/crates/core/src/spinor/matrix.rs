//! Dense fixed-size complex matrices and spinors.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeSeq, Serializer};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major N×N complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix<const N: usize>(pub [[Complex64; N]; N]);

pub type Matrix2 = Matrix<2>;
pub type Matrix4 = Matrix<4>;

/// N complex amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor<const N: usize>(pub [Complex64; N]);

pub type Spinor2 = Spinor<2>;
pub type Spinor4 = Spinor<4>;

impl<const N: usize> Matrix<N> {
    pub fn zero() -> Self {
        Matrix([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Matrix(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(|i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn diagonal(d: [f64; N]) -> Self {
        Self::from_fn(|i, j| if i == j { Complex64::new(d[i], 0.0) } else { ZERO })
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Self::zero())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.adjoint() * *self).max_abs_diff(&Self::identity()) <= tol
    }

    pub fn apply(&self, v: &Spinor<N>) -> Spinor<N> {
        Spinor(std::array::from_fn(|i| {
            let mut acc = ZERO;
            for j in 0..N {
                acc += self.0[i][j] * v.0[j];
            }
            acc
        }))
    }
}

impl<const N: usize> Index<(usize, usize)> for Matrix<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Matrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Matrix<N>;
    fn mul(self, rhs: Matrix<N>) -> Matrix<N> {
        Matrix::from_fn(|i, j| {
            let mut acc = ZERO;
            for k in 0..N {
                acc += self.0[i][k] * rhs.0[k][j];
            }
            acc
        })
    }
}

impl<const N: usize> Mul<Spinor<N>> for Matrix<N> {
    type Output = Spinor<N>;
    fn mul(self, rhs: Spinor<N>) -> Spinor<N> {
        self.apply(&rhs)
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Matrix<N>;
    fn add(self, rhs: Matrix<N>) -> Matrix<N> {
        Matrix::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Matrix<N>;
    fn sub(self, rhs: Matrix<N>) -> Matrix<N> {
        Matrix::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl<const N: usize> Neg for Matrix<N> {
    type Output = Matrix<N>;
    fn neg(self) -> Matrix<N> {
        Matrix::from_fn(|i, j| -self.0[i][j])
    }
}

impl<const N: usize> Spinor<N> {
    pub fn zero() -> Self {
        Spinor([ZERO; N])
    }

    /// Standard basis vector `e_i`.
    pub fn basis(i: usize) -> Self {
        let mut s = Self::zero();
        s.0[i] = ONE;
        s
    }

    pub fn from_real(v: [f64; N]) -> Self {
        Spinor(v.map(|x| Complex64::new(x, 0.0)))
    }

    /// ⟨self|other⟩, conjugating `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Spinor(self.0.map(|a| a * s))
    }

    /// Panics on the zero spinor.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero spinor");
        Spinor(self.0.map(|a| a / n))
    }

    /// Rotates the global phase so the first component with modulus above
    /// `eps` is real and nonnegative.
    pub fn with_canonical_phase(&self, eps: f64) -> Self {
        match self.0.iter().find(|a| a.norm() > eps) {
            Some(a) => {
                let phase = a.conj() / a.norm();
                self.scale(phase)
            }
            None => *self,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Outer product |self⟩⟨other|.
    pub fn outer(&self, other: &Self) -> Matrix<N> {
        Matrix::from_fn(|i, j| self.0[i] * other.0[j].conj())
    }
}

impl<const N: usize> Add for Spinor<N> {
    type Output = Spinor<N>;
    fn add(self, rhs: Spinor<N>) -> Spinor<N> {
        Spinor(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl<const N: usize> Sub for Spinor<N> {
    type Output = Spinor<N>;
    fn sub(self, rhs: Spinor<N>) -> Spinor<N> {
        Spinor(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl<const N: usize> Index<usize> for Spinor<N> {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

struct Pair(Complex64);

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

/// `[[re, im], ...]`
impl<const N: usize> Serialize for Spinor<N> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(N))?;
        for a in &self.0 {
            seq.serialize_element(&Pair(*a))?;
        }
        seq.end()
    }
}

/// Rows of `[re, im]` pairs, row-major.
impl<const N: usize> Serialize for Matrix<N> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(N))?;
        for row in &self.0 {
            let row: Vec<Pair> = row.iter().map(|a| Pair(*a)).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl Matrix4 {
    /// Eigenvalues of a Hermitian matrix in ascending order, from nalgebra's
    /// symmetric eigensolver. Only the Hermitian part of `self` is used.
    pub fn hermitian_eigenvalues(&self) -> [f64; 4] {
        let m = nalgebra::Matrix4::from_fn(|i, j| {
            nalgebra::Complex::new(self.0[i][j].re, self.0[i][j].im)
        });
        let eig = m.symmetric_eigenvalues();
        let mut out = [eig[0], eig[1], eig[2], eig[3]];
        out.sort_by(|a, b| a.total_cmp(b));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_layout() {
        let m = Matrix2::from_fn(|i, j| Complex64::new(i as f64, j as f64));
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[[0.0,0.0],[0.0,1.0]],[[1.0,0.0],[1.0,1.0]]]");
        let s = Spinor2::from_real([1.0, -0.5]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[[1.0,0.0],[-0.5,0.0]]");
    }

    #[test]
    fn canonical_phase() {
        let s: Spinor2 = Spinor([Complex64::new(0.0, 0.0), Complex64::new(0.0, 2.0)]);
        let c = s.with_canonical_phase(1e-14);
        assert_eq!(c.0[1], Complex64::new(2.0, 0.0));
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = Matrix4::diagonal([3.0, -1.0, 2.0, 0.5]);
        assert_eq!(m.hermitian_eigenvalues(), [-1.0, 0.5, 2.0, 3.0]);
    }

    #[test]
    fn products_and_adjoint() {
        let a = Matrix2::from_fn(|i, j| Complex64::new((i + 2 * j) as f64, 1.0));
        assert_eq!((a * Matrix2::identity()), a);
        let ah = a.adjoint();
        assert_eq!(ah[(0, 1)], a[(1, 0)].conj());
        assert!((a * ah).is_hermitian(1e-14));
    }
}
