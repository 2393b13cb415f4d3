//! Lie structure of `SL(n, R)`.
//!
//! The Cartan subspace is realized as traceless diagonal matrices, stored as
//! their diagonal, and the positive chamber as strictly decreasing
//! diagonals. With that choice the Cartan decomposition is a sorted singular
//! value decomposition and the Iwasawa decomposition is column
//! orthonormalization with a positive upper-triangular factor.

use alloc::vec::Vec;

use crate::math::{acos, exp, ln, sinh, sqrt};
use crate::matrix::{check_dim, Mat, MatrixElement};
use crate::{Error, Result};

/// Tolerance on `sum h_i = 0`.
pub const TRACE_TOLERANCE: f64 = 1e-10;
/// Tolerance for membership in the closed chamber.
pub const CLOSED_CHAMBER_TOLERANCE: f64 = 1e-12;
/// Adjacent Cartan entries closer than this (a relative gap of singular
/// values) make an element non-regular.
pub const REGULARITY_TOLERANCE: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 64;

/// A traceless diagonal matrix `H`, stored as its diagonal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChamberVector {
    n: usize,
    h: [f64; 3],
}

impl ChamberVector {
    pub fn new(h: &[f64]) -> Result<Self> {
        check_dim(h.len())?;
        let trace: f64 = h.iter().sum();
        if !h.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if libm::fabs(trace) > TRACE_TOLERANCE {
            return Err(Error::InvalidArgument {
                field: "h",
                reason: "chamber vector must be traceless",
            });
        }
        Ok(Self::from_slice_unchecked(h))
    }

    /// Projects an arbitrary diagonal onto the traceless subspace.
    pub fn traceless(h: &[f64]) -> Self {
        let mean = h.iter().sum::<f64>() / h.len() as f64;
        let mut v = Self::from_slice_unchecked(h);
        for x in &mut v.h[..v.n] {
            *x -= mean;
        }
        v
    }

    pub fn zero(n: usize) -> Self {
        ChamberVector { n, h: [0.0; 3] }
    }

    fn from_slice_unchecked(h: &[f64]) -> Self {
        let mut buf = [0.0; 3];
        buf[..h.len()].copy_from_slice(h);
        ChamberVector { n: h.len(), h: buf }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.h[..self.n]
    }

    /// `h_1 >= h_2 >= ... >= h_n` within [`CLOSED_CHAMBER_TOLERANCE`].
    pub fn in_closed_chamber(&self) -> bool {
        self.as_slice()
            .windows(2)
            .all(|w| w[0] >= w[1] - CLOSED_CHAMBER_TOLERANCE)
    }

    /// Strictly decreasing, each gap larger than [`REGULARITY_TOLERANCE`].
    pub fn in_open_chamber(&self) -> bool {
        self.as_slice()
            .windows(2)
            .all(|w| w[0] - w[1] > REGULARITY_TOLERANCE)
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut v = *self;
        for x in &mut v.h[..v.n] {
            *x *= s;
        }
        v
    }

    pub fn add(&self, other: &ChamberVector) -> Self {
        let mut v = *self;
        for (x, y) in v.h[..v.n].iter_mut().zip(other.as_slice()) {
            *x += y;
        }
        v
    }

    /// `exp(H)` as a group element.
    pub fn exp(&self) -> MatrixElement {
        let mut d = [0.0; 3];
        for (dst, &x) in d.iter_mut().zip(self.as_slice()) {
            *dst = exp(x);
        }
        MatrixElement::trusted(Mat::diag(&d[..self.n]))
    }

    /// Euclidean dot product of diagonals (no inner-product scale).
    fn dot(&self, other: &ChamberVector) -> f64 {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn max_abs_diff(&self, other: &ChamberVector) -> f64 {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0, f64::max)
    }
}

/// `g = k * exp(h_i) * nfac` with `k` in `SO(n)` and `nfac` unit upper triangular.
#[derive(Clone, Copy, Debug)]
pub struct IwasawaFactors {
    pub k: Mat,
    pub h_i: ChamberVector,
    pub nfac: Mat,
}

impl IwasawaFactors {
    pub fn reconstruct(&self) -> Mat {
        self.k * *self.h_i.exp().mat() * self.nfac
    }
}

/// `g = k1 * exp(h) * k2` with `h` in the closed chamber.
#[derive(Clone, Copy, Debug)]
pub struct CartanFactors {
    pub k1: Mat,
    pub h: ChamberVector,
    pub k2: Mat,
    /// `h` lies in the open chamber, i.e. the singular values are distinct.
    pub regular: bool,
}

impl CartanFactors {
    pub fn reconstruct(&self) -> Mat {
        self.k1 * *self.h.exp().mat() * self.k2
    }
}

#[inline]
fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Iwasawa decomposition `G = KAN` by twice-iterated Gram-Schmidt on the
/// columns of `g`.
pub fn iwasawa(g: &MatrixElement) -> Result<IwasawaFactors> {
    let m = g.mat();
    let n = m.n();
    let scale = m.frobenius();
    let mut q = Mat::zeros(n);
    let mut r = Mat::zeros(n);
    for j in 0..n {
        let mut v = m.col(j);
        for _ in 0..2 {
            for i in 0..j {
                let qi = q.col(i);
                let proj = dot3(&qi, &v);
                r[(i, j)] += proj;
                for (vk, qk) in v.iter_mut().zip(qi) {
                    *vk -= proj * qk;
                }
            }
        }
        let norm = sqrt(dot3(&v, &v));
        if !(norm > 1e-300 && norm > f64::EPSILON * 1e-2 * scale) {
            return Err(Error::DecompositionFailure(
                "rank-deficient leading minor in column orthonormalization",
            ));
        }
        r[(j, j)] = norm;
        q.set_col(j, [v[0] / norm, v[1] / norm, v[2] / norm]);
    }
    let mut logs = [0.0; 3];
    let mut nfac = Mat::identity(n);
    for i in 0..n {
        let d = r[(i, i)];
        logs[i] = ln(d);
        for j in i + 1..n {
            nfac[(i, j)] = r[(i, j)] / d;
        }
    }
    Ok(IwasawaFactors {
        k: q,
        h_i: ChamberVector::traceless(&logs[..n]),
        nfac,
    })
}

/// `exp(-rho(H_I(g)))` without forming the full Iwasawa factors.
///
/// For `n = 2` this is `1/|c_1|`, for `n = 3` it is `1/(|c_1| |c_1 x c_2|)`
/// where `c_j` are the columns of `g`.
#[inline]
pub fn iwasawa_rho_weight(g: &Mat) -> f64 {
    let c1 = g.col(0);
    match g.n() {
        2 => 1.0 / sqrt(c1[0] * c1[0] + c1[1] * c1[1]),
        _ => {
            let w = cross3(&c1, &g.col(1));
            1.0 / sqrt(dot3(&c1, &c1) * dot3(&w, &w))
        }
    }
}

/// One-sided Jacobi SVD: returns `(u, sigma, v)` with `g = u diag(sigma) v^T`,
/// unsorted.
fn jacobi_svd(g: &Mat) -> Result<(Mat, [f64; 3], Mat)> {
    let n = g.n();
    let mut a = *g;
    let mut v = Mat::identity(n);
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        converged = true;
        for i in 0..n {
            for j in i + 1..n {
                let (ci, cj) = (a.col(i), a.col(j));
                let alpha = dot3(&ci, &ci);
                let beta = dot3(&cj, &cj);
                let gamma = dot3(&ci, &cj);
                if libm::fabs(gamma) <= 4.0 * f64::EPSILON * sqrt(alpha * beta) {
                    continue;
                }
                converged = false;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = libm::copysign(1.0, zeta) / (libm::fabs(zeta) + sqrt(1.0 + zeta * zeta));
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = c * t;
                for k in 0..n {
                    let (x, y) = (a[(k, i)], a[(k, j)]);
                    a[(k, i)] = c * x - s * y;
                    a[(k, j)] = s * x + c * y;
                    let (x, y) = (v[(k, i)], v[(k, j)]);
                    v[(k, i)] = c * x - s * y;
                    v[(k, j)] = s * x + c * y;
                }
            }
        }
        if converged {
            break;
        }
    }
    if !converged {
        return Err(Error::DecompositionFailure("Jacobi SVD did not converge"));
    }
    let mut sigma = [0.0; 3];
    let mut u = Mat::zeros(n);
    for j in 0..n {
        let c = a.col(j);
        let s = sqrt(dot3(&c, &c));
        if !(s > 0.0) {
            return Err(Error::DecompositionFailure("zero singular value"));
        }
        sigma[j] = s;
        u.set_col(j, [c[0] / s, c[1] / s, c[2] / s]);
    }
    Ok((u, sigma, v))
}

/// Cartan decomposition `G = K exp(closed chamber) K` via a sorted SVD.
///
/// Singular values are sorted descending with a stable sort. If the left
/// factor comes out with determinant `-1`, the last column of both `k1` and
/// `k2^T` is negated, which keeps the product unchanged.
pub fn cartan(g: &MatrixElement) -> CartanFactors {
    try_cartan(g).expect("SVD of a unimodular matrix converges")
}

pub fn try_cartan(g: &MatrixElement) -> Result<CartanFactors> {
    let n = g.n();
    let (u, sigma, v) = jacobi_svd(g.mat())?;
    let mut order = [0usize, 1, 2];
    // insertion sort is stable
    for i in 1..n {
        let mut j = i;
        while j > 0 && sigma[order[j - 1]] < sigma[order[j]] {
            order.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut k1 = Mat::zeros(n);
    let mut vs = Mat::zeros(n);
    let mut logs = [0.0; 3];
    for (dst, &src) in order[..n].iter().enumerate() {
        k1.set_col(dst, u.col(src));
        vs.set_col(dst, v.col(src));
        logs[dst] = ln(sigma[src]);
    }
    if k1.det() < 0.0 {
        k1.negate_col(n - 1);
        vs.negate_col(n - 1);
    }
    let h = ChamberVector::traceless(&logs[..n]);
    Ok(CartanFactors {
        k1,
        h,
        k2: vs.transpose(),
        regular: h.in_open_chamber(),
    })
}

/// Root-system constants of `sl(n, R)` under the inner product
/// `<H, H'> = inner_scale * tr(H H')`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystemData {
    pub n: usize,
    /// `(i, j)` stands for the root `H -> h_i - h_j`, multiplicity one.
    pub positive_roots: Vec<(usize, usize)>,
    /// `rho(H) = sum rho_i h_i`.
    pub rho: ChamberVector,
    pub inner_scale: f64,
    /// Unit vector of the closed chamber maximizing `rho`.
    pub h_max: ChamberVector,
    /// Volume growth rate `2 rho(h_max)`.
    pub delta: f64,
    /// Signed anti-diagonal permutation sending the chamber to its negative.
    pub m0: Mat,
}

/// Default `inner_scale`: 2 for `n = 2` (so lengths are hyperbolic distances
/// at curvature -1 and `delta = 1`), 1 otherwise.
pub fn default_inner_scale(n: usize) -> f64 {
    if n == 2 {
        2.0
    } else {
        1.0
    }
}

pub fn root_data(n: usize, inner_scale: Option<f64>) -> Result<RootSystemData> {
    check_dim(n)?;
    let c = inner_scale.unwrap_or_else(|| default_inner_scale(n));
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidArgument {
            field: "inner_scale",
            reason: "must be positive and finite",
        });
    }
    let mut positive_roots = Vec::new();
    let mut rho = [0.0; 3];
    for i in 0..n {
        for j in i + 1..n {
            positive_roots.push((i, j));
            rho[i] += 0.5;
            rho[j] -= 0.5;
        }
    }
    let rho = ChamberVector::from_slice_unchecked(&rho[..n]);
    // the trace-form dual of rho is rho itself, which is dominant
    let h_max = rho.scaled(1.0 / sqrt(c * rho.dot(&rho)));
    let delta = 2.0 * rho.dot(&h_max);
    let mut m0 = Mat::zeros(n);
    for i in 0..n {
        m0[(i, n - 1 - i)] = if i % 2 == 0 { 1.0 } else { -1.0 };
    }
    if m0.det() < 0.0 {
        m0.negate_row(0);
    }
    Ok(RootSystemData {
        n,
        positive_roots,
        rho,
        inner_scale: c,
        h_max,
        delta,
        m0,
    })
}

impl RootSystemData {
    /// `rho(H)`.
    pub fn rho_of(&self, h: &ChamberVector) -> f64 {
        self.rho.dot(h)
    }

    pub fn inner(&self, a: &ChamberVector, b: &ChamberVector) -> f64 {
        self.inner_scale * a.dot(b)
    }

    /// `L = ||H||`, the displacement of the base point of the symmetric space.
    pub fn length_of(&self, h: &ChamberVector) -> f64 {
        sqrt(self.inner(h, h))
    }

    /// Angle between `H` and the barycenter, in `[0, pi]`.
    pub fn chamber_angle(&self, h: &ChamberVector) -> Result<f64> {
        let norm = self.length_of(h);
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        let cos = self.inner(h, &self.h_max) / (norm * self.length_of(&self.h_max));
        Ok(acos(cos.clamp(-1.0, 1.0)))
    }

    /// Cartan integration density `J(H) = prod_{i<j} sinh(h_i - h_j)`.
    pub fn cartan_jacobian(&self, h: &ChamberVector) -> f64 {
        let h = h.as_slice();
        self.positive_roots
            .iter()
            .map(|&(i, j)| sinh(h[i] - h[j]))
            .product()
    }

    /// Opposition involution `H -> -Ad(m0) H`, i.e. `(h_1..h_n) -> (-h_n..-h_1)`.
    pub fn opposition_apply(&self, h: &ChamberVector) -> ChamberVector {
        let mut out = [0.0; 3];
        let src = h.as_slice();
        for (i, dst) in out[..self.n].iter_mut().enumerate() {
            *dst = -src[self.n - 1 - i];
        }
        ChamberVector::from_slice_unchecked(&out[..self.n])
    }

    /// `Ad(m0) H = m0 H m0^{-1}`, computed by matrix products.
    pub fn adjoint_m0(&self, h: &ChamberVector) -> ChamberVector {
        let d = Mat::diag(h.as_slice());
        let conj = self.m0 * d * self.m0.transpose();
        let mut out = [0.0; 3];
        for (i, x) in out[..self.n].iter_mut().enumerate() {
            *x = conj[(i, i)];
        }
        ChamberVector::from_slice_unchecked(&out[..self.n])
    }

    /// Largest first Cartan coordinate on the ball `||H|| < t`.
    pub fn max_top_coordinate(&self, t: f64) -> f64 {
        let n = self.n as f64;
        t * sqrt((n - 1.0) / n) / sqrt(self.inner_scale)
    }

    /// Cartan data of a group element and its length.
    pub fn length_of_element(&self, g: &MatrixElement) -> f64 {
        self.length_of(&cartan(g).h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::PI;

    fn el(rows: &[&[f64]]) -> MatrixElement {
        MatrixElement::from_rows(rows).unwrap()
    }

    #[test]
    fn iwasawa_trivial_cases() {
        let f = iwasawa(&MatrixElement::identity(2)).unwrap();
        assert!(f.k.dist(&Mat::identity(2)) < 1e-15);
        assert!(f.h_i.max_abs_diff(&ChamberVector::zero(2)) < 1e-15);

        let g = el(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let f = iwasawa(&g).unwrap();
        assert!(f.k.dist(&Mat::identity(2)) < 1e-15);
        assert!(f.h_i.max_abs_diff(&ChamberVector::zero(2)) < 1e-15);
        assert!(f.nfac.dist(g.mat()) < 1e-15);

        let g = el(&[&[2.0, 0.0], &[0.0, 0.5]]);
        let f = iwasawa(&g).unwrap();
        let l2 = core::f64::consts::LN_2;
        assert!(f.h_i.max_abs_diff(&ChamberVector::new(&[l2, -l2]).unwrap()) < 1e-15);
        assert_eq!(f.nfac[(0, 0)], 1.0);
        assert_eq!(f.nfac[(1, 1)], 1.0);
    }

    #[test]
    fn iwasawa_rejects_rank_deficiency() {
        // corrupted input bypassing validation
        let m = Mat::from_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(matches!(
            iwasawa(&MatrixElement::trusted(m)),
            Err(Error::DecompositionFailure(_))
        ));
    }

    #[test]
    fn rho_weight_matches_full_iwasawa() {
        let rs3 = root_data(3, None).unwrap();
        let g = MatrixElement::trusted(
            Mat::rot_x(0.4) * *ChamberVector::new(&[1.0, 0.3, -1.3]).unwrap().exp().mat()
                * Mat::rot_z(1.1)
                * Mat::rot_y(-0.5),
        );
        let f = iwasawa(&g).unwrap();
        let w = iwasawa_rho_weight(g.mat());
        assert!((w - exp(-rs3.rho_of(&f.h_i))).abs() < 1e-13 * w);
    }

    #[test]
    fn cartan_examples() {
        let e = core::f64::consts::E;
        let f = cartan(&el(&[&[e, 0.0], &[0.0, 1.0 / e]]));
        assert!(f.h.max_abs_diff(&ChamberVector::new(&[1.0, -1.0]).unwrap()) < 1e-14);
        assert!(f.regular);
        // k1, k2 are the identity up to M = {+-I}
        assert!((f.k1[(0, 0)].abs() - 1.0).abs() < 1e-14);
        assert!((f.k2[(0, 0)].abs() - 1.0).abs() < 1e-14);

        let f = cartan(&MatrixElement::trusted(Mat::rotation2(PI / 3.0)));
        assert!(f.h.max_abs_diff(&ChamberVector::zero(2)) < 1e-15);
        assert!(!f.regular);

        // eigenvalues of g g^T = [[2,1],[1,1]] are phi^2 and phi^-2
        let phi = (1.0 + sqrt(5.0)) / 2.0;
        let f = cartan(&el(&[&[1.0, 1.0], &[0.0, 1.0]]));
        assert!((f.h.as_slice()[0] - ln(phi)).abs() < 1e-14);
        assert!((ln(phi) - 0.481_211_825_059_603_4).abs() < 1e-15);
    }

    #[test]
    fn cartan_factors_are_special_orthogonal() {
        let g = MatrixElement::trusted(
            Mat::rot_z(2.5) * *ChamberVector::new(&[0.2, 0.1, -0.3]).unwrap().exp().mat()
                * Mat::rot_y(0.7),
        );
        let f = cartan(&g);
        assert!((f.k1.det() - 1.0).abs() < 1e-13);
        assert!((f.k2.det() - 1.0).abs() < 1e-13);
        assert!(f.reconstruct().dist(g.mat()) < 1e-13);
    }

    #[test]
    fn repeated_singular_values_are_not_regular() {
        let g = MatrixElement::trusted(
            Mat::rot_x(0.3) * *ChamberVector::new(&[0.5, 0.5, -1.0]).unwrap().exp().mat(),
        );
        assert!(!cartan(&g).regular);
    }

    #[test]
    fn root_data_constants() {
        let rs2 = root_data(2, None).unwrap();
        assert_eq!(rs2.rho.as_slice(), &[0.5, -0.5]);
        assert!((rs2.delta - 1.0).abs() < 1e-12);
        assert!((rs2.length_of(&rs2.h_max) - 1.0).abs() < 1e-12);

        let rs3 = root_data(3, None).unwrap();
        assert_eq!(rs3.rho.as_slice(), &[1.0, 0.0, -1.0]);
        assert_eq!(rs3.positive_roots, [(0, 1), (0, 2), (1, 2)]);
        assert!((rs3.delta - 2.0 * sqrt(2.0)).abs() < 1e-12);
        assert!(rs3.h_max.in_closed_chamber());

        assert_eq!(root_data(4, None), Err(Error::UnsupportedDimension(4)));
        assert!(root_data(2, Some(0.0)).is_err());
    }

    #[test]
    fn delta_maximizes_rho_on_unit_chamber_sphere() {
        // grid oracle over the unit sphere of the closed chamber of sl(3)
        let rs = root_data(3, None).unwrap();
        let mut best: f64 = 0.0;
        let steps = 20_000;
        for k in 0..=steps {
            // closed chamber in the plane: directions between the two walls
            let t = k as f64 / steps as f64;
            let w1 = [1.0, 1.0, -2.0];
            let w2 = [2.0, -1.0, -1.0];
            let mut h = [0.0; 3];
            for i in 0..3 {
                h[i] = (1.0 - t) * w1[i] / sqrt(6.0) + t * w2[i] / sqrt(6.0);
            }
            let h = ChamberVector::new(&h).unwrap();
            let h = h.scaled(1.0 / rs.length_of(&h));
            best = best.max(2.0 * rs.rho_of(&h));
        }
        assert!((best - rs.delta).abs() < 1e-6, "{best} vs {}", rs.delta);
        assert!((rs.delta - 2.828_427_124_746_19).abs() < 1e-12);
    }

    #[test]
    fn rho_and_length_examples() {
        let rs2 = root_data(2, None).unwrap();
        let rs3 = root_data(3, None).unwrap();
        let t = 1.7;
        let h = ChamberVector::new(&[t / 2.0, -t / 2.0]).unwrap();
        assert_eq!(rs2.rho_of(&ChamberVector::zero(2)), 0.0);
        assert!((rs2.rho_of(&h) - t / 2.0).abs() < 1e-15);
        assert!((rs2.length_of(&h) - t).abs() < 1e-15);
        assert_eq!(rs3.rho_of(&ChamberVector::new(&[1.0, 0.0, -1.0]).unwrap()), 2.0);

        let phi = (1.0 + sqrt(5.0)) / 2.0;
        let l = rs2.length_of_element(&el(&[&[1.0, 1.0], &[0.0, 1.0]]));
        assert!((l - 2.0 * ln(phi)).abs() < 1e-14);
        assert!((l - 0.9624).abs() < 1e-4);
    }

    #[test]
    fn chamber_angle_examples() {
        let rs2 = root_data(2, None).unwrap();
        let rs3 = root_data(3, None).unwrap();
        assert!(rs3.chamber_angle(&rs3.h_max).unwrap() < 1e-7);
        assert!(rs2.chamber_angle(&ChamberVector::new(&[3.0, -3.0]).unwrap()).unwrap() < 1e-7);
        assert_eq!(
            rs3.chamber_angle(&ChamberVector::zero(3)),
            Err(Error::ZeroVector)
        );
        let s2 = sqrt(2.0);
        let h = ChamberVector::new(&[1.0 / s2, 0.0, -1.0 / s2]).unwrap();
        assert!(rs3.chamber_angle(&h).unwrap() < 1e-7);
        // dot product oracle: (2,-1,-1).(1,0,-1) = 3, norms sqrt6 sqrt2, cos = sqrt3/2
        let s6 = sqrt(6.0);
        let h = ChamberVector::new(&[2.0 / s6, -1.0 / s6, -1.0 / s6]).unwrap();
        let oracle = acos(3.0 / (s6 * s2));
        assert!((rs3.chamber_angle(&h).unwrap() - oracle).abs() < 1e-12);
        assert!((oracle - PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn jacobian_examples() {
        let rs2 = root_data(2, None).unwrap();
        let rs3 = root_data(3, None).unwrap();
        assert_eq!(rs3.cartan_jacobian(&ChamberVector::zero(3)), 0.0);
        let t = 2.3;
        let h = ChamberVector::new(&[t / 2.0, -t / 2.0]).unwrap();
        assert!((rs2.cartan_jacobian(&h) - sinh(t)).abs() < 1e-14);
        let direct = sinh(1.0) * sinh(2.0) * sinh(1.0);
        let h = ChamberVector::new(&[1.0, 0.0, -1.0]).unwrap();
        assert!((rs3.cartan_jacobian(&h) - direct).abs() < 1e-13);
        assert!((direct - 5.009_049_095_358_428).abs() < 1e-12);
        // walls
        let wall = ChamberVector::new(&[0.5, 0.5, -1.0]).unwrap();
        assert_eq!(rs3.cartan_jacobian(&wall), 0.0);
    }

    #[test]
    fn opposition_examples() {
        let rs2 = root_data(2, None).unwrap();
        let rs3 = root_data(3, None).unwrap();
        assert_eq!(
            rs3.opposition_apply(&ChamberVector::zero(3)),
            ChamberVector::zero(3)
        );
        let h = ChamberVector::new(&[0.7, -0.7]).unwrap();
        assert_eq!(rs2.opposition_apply(&h), h);
        let h = ChamberVector::new(&[1.5, -0.25, -1.25]).unwrap();
        assert_eq!(rs3.opposition_apply(&h).as_slice(), &[1.25, 0.25, -1.5]);
        assert_eq!(rs3.opposition_apply(&rs3.opposition_apply(&h)), h);
        // -Ad(m0) computed by matrix conjugation agrees
        for rs in [&rs2, &rs3] {
            assert!((rs.m0.det() - 1.0).abs() < 1e-15);
            assert!(rs.m0.orthogonality_defect() < 1e-15);
        }
        let via_m0 = rs3.adjoint_m0(&h).scaled(-1.0);
        assert!(via_m0.max_abs_diff(&rs3.opposition_apply(&h)) < 1e-15);
    }
}
