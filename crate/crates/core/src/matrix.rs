//! Small dense matrices of size 2 or 3 and the validated group element type.

use core::fmt;
use core::ops::{Index, IndexMut, Mul};

use crate::math::{cos, sin, sqrt};
use crate::{Error, Result};

/// Tolerance on `|det - 1|` accepted for group elements.
pub const DET_TOLERANCE: f64 = 1e-9;

/// A real `n x n` matrix with `n <= 3`, stored inline.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat {
    n: usize,
    a: [[f64; 3]; 3],
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.n).map(|i| &self.a[i][..self.n]))
            .finish()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.n && j < self.n);
        &self.a[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.n && j < self.n);
        &mut self.a[i][j]
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n == 2 || n == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        assert!(n == 2 || n == 3, "matrix dimension must be 2 or 3");
        Mat { n, a: [[0.0; 3]; 3] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i][i] = 1.0;
        }
        m
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.a[i][i] = x;
        }
        m
    }

    /// Builds a matrix from row slices; every row must have length `rows.len()`.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            m.a[i][..n].copy_from_slice(row);
        }
        Ok(m)
    }

    /// Row-major entries; `entries.len()` must be 4 or 9.
    pub fn from_row_major(entries: &[f64]) -> Result<Self> {
        let n = match entries.len() {
            4 => 2,
            9 => 3,
            k => return Err(Error::DimensionMismatch { left: 9, right: k }),
        };
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.a[i][j] = entries[i * n + j];
            }
        }
        Ok(m)
    }

    /// Counter-clockwise plane rotation.
    pub fn rotation2(angle: f64) -> Self {
        let (s, c) = (sin(angle), cos(angle));
        let mut m = Self::zeros(2);
        m.a[0] = [c, -s, 0.0];
        m.a[1] = [s, c, 0.0];
        m
    }

    /// Rotation about the z axis.
    pub fn rot_z(angle: f64) -> Self {
        let (s, c) = (sin(angle), cos(angle));
        let mut m = Self::identity(3);
        m.a[0][0] = c;
        m.a[0][1] = -s;
        m.a[1][0] = s;
        m.a[1][1] = c;
        m
    }

    /// Rotation about the y axis.
    pub fn rot_y(angle: f64) -> Self {
        let (s, c) = (sin(angle), cos(angle));
        let mut m = Self::identity(3);
        m.a[0][0] = c;
        m.a[0][2] = s;
        m.a[2][0] = -s;
        m.a[2][2] = c;
        m
    }

    /// Rotation about the x axis.
    pub fn rot_x(angle: f64) -> Self {
        let (s, c) = (sin(angle), cos(angle));
        let mut m = Self::identity(3);
        m.a[1][1] = c;
        m.a[1][2] = -s;
        m.a[2][1] = s;
        m.a[2][2] = c;
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i][j]
    }

    #[inline]
    pub fn col(&self, j: usize) -> [f64; 3] {
        [self.a[0][j], self.a[1][j], self.a[2][j]]
    }

    #[inline]
    pub fn set_col(&mut self, j: usize, v: [f64; 3]) {
        for i in 0..self.n {
            self.a[i][j] = v[i];
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.n {
            self.a[i][j] = -self.a[i][j];
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.n {
            self.a[i][j] = -self.a[i][j];
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.a[j][i] = self.a[i][j];
            }
        }
        t
    }

    pub fn det(&self) -> f64 {
        let a = &self.a;
        match self.n {
            2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
            _ => {
                a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                    - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                    + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
            }
        }
    }

    /// Adjugate; equals the inverse when `det = 1`.
    pub fn adjugate(&self) -> Self {
        let a = &self.a;
        let mut m = Self::zeros(self.n);
        match self.n {
            2 => {
                m.a[0][0] = a[1][1];
                m.a[0][1] = -a[0][1];
                m.a[1][0] = -a[1][0];
                m.a[1][1] = a[0][0];
            }
            _ => {
                for i in 0..3 {
                    for j in 0..3 {
                        let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                        let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                        m.a[i][j] = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
                    }
                }
            }
        }
        m
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let mut m = self.adjugate();
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[i][j] /= d;
            }
        }
        m
    }

    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += self.a[i][j] * self.a[i][j];
            }
        }
        sqrt(s)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        let mut m = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[i][j] -= other.a[i][j];
            }
        }
        m
    }

    /// `||self - other||_F`.
    pub fn dist(&self, other: &Mat) -> f64 {
        self.sub(other).frobenius()
    }

    /// `||self^T self - I||_F`.
    pub fn orthogonality_defect(&self) -> f64 {
        (self.transpose() * *self).dist(&Mat::identity(self.n))
    }

    pub fn is_finite(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.a[i][j].is_finite()))
    }

    #[inline]
    pub fn mul_vec(&self, v: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for i in 0..self.n {
            let mut s = 0.0;
            for j in 0..self.n {
                s += self.a[i][j] * v[j];
            }
            out[i] = s;
        }
        out
    }
}

impl Mul for Mat {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut m = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.a[i][k];
                for j in 0..n {
                    m.a[i][j] += aik * rhs.a[k][j];
                }
            }
        }
        m
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        *self * *rhs
    }
}

/// An element of `SL(n, R)`: `n` in `{2, 3}` and `|det - 1| <= 1e-9`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixElement(Mat);

impl MatrixElement {
    pub fn new(m: Mat) -> Result<Self> {
        check_dim(m.n)?;
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let det = m.det();
        if libm::fabs(det - 1.0) > DET_TOLERANCE {
            return Err(Error::NotUnimodular { det });
        }
        Ok(MatrixElement(m))
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(Mat::from_rows(rows)?)
    }

    /// Wraps a matrix known to be unimodular by construction (products,
    /// inverses, orthogonal factors).
    #[inline]
    pub(crate) fn trusted(m: Mat) -> Self {
        MatrixElement(m)
    }

    pub fn identity(n: usize) -> Self {
        MatrixElement(Mat::identity(n))
    }

    /// `exp(H)` for a traceless diagonal `H`.
    pub fn exp_diag(h: &[f64]) -> Result<Self> {
        check_dim(h.len())?;
        let d: small::Vec3 = h.iter().map(|&x| crate::math::exp(x)).collect();
        Self::new(Mat::diag(d.as_slice()))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.n
    }

    #[inline]
    pub fn mat(&self) -> &Mat {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        MatrixElement(self.0.adjugate())
    }

    pub fn compose(&self, other: &MatrixElement) -> Self {
        MatrixElement(self.0 * other.0)
    }

    /// Element from integer entries, row-major.
    pub fn from_integers(entries: &[i64]) -> Result<Self> {
        let mut buf = [0.0; 9];
        for (dst, &x) in buf.iter_mut().zip(entries) {
            *dst = x as f64;
        }
        Self::new(Mat::from_row_major(&buf[..entries.len()])?)
    }
}

impl Mul for MatrixElement {
    type Output = MatrixElement;
    fn mul(self, rhs: MatrixElement) -> MatrixElement {
        self.compose(&rhs)
    }
}

/// Fixed-capacity vector of at most three reals, so small diagonal data
/// never touches the allocator.
pub(crate) mod small {
    #[derive(Clone, Copy, Debug, Default)]
    pub struct Vec3 {
        len: usize,
        buf: [f64; 3],
    }

    impl Vec3 {
        pub fn as_slice(&self) -> &[f64] {
            &self.buf[..self.len]
        }
    }

    impl FromIterator<f64> for Vec3 {
        fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
            let mut s = Vec3::default();
            for x in iter {
                s.buf[s.len] = x;
                s.len += 1;
            }
            s
        }
    }
}
