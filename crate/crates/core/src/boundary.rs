//! The flag boundary `K/M` and the action of `G` on it.
//!
//! A boundary point is an orthonormal frame with determinant one, taken
//! modulo `M`, the diagonal sign matrices of determinant one. The stored
//! frame is always the canonical representative: in each of the first
//! `n - 1` columns the entry of largest absolute value is positive (ties go
//! to the smallest row index), and the sign of the last column follows from
//! `det = 1`. For `n = 2` the point is equivalently an angle in `[0, pi)`.

use crate::lie::{cartan, iwasawa, iwasawa_rho_weight};
use crate::math::{atan2, rem_period, PI};
use crate::matrix::{Mat, MatrixElement};
use crate::{Error, Result};

/// A point of `K/M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    frame: Mat,
    /// Angle in `[0, pi)` for `n = 2`; unused (zero) for `n = 3`.
    angle: f64,
}

/// Puts a special orthogonal frame in canonical form modulo `M`.
pub fn canonicalize_frame(frame: &Mat) -> Mat {
    let n = frame.n();
    let mut f = *frame;
    for j in 0..n - 1 {
        let mut best = 0;
        let mut best_abs = libm::fabs(f[(0, j)]);
        for i in 1..n {
            let a = libm::fabs(f[(i, j)]);
            if a > best_abs {
                best = i;
                best_abs = a;
            }
        }
        if f[(best, j)] < 0.0 {
            f.negate_col(j);
            f.negate_col(n - 1);
        }
    }
    f
}

impl BoundaryPoint {
    /// Boundary point of a frame in `SO(n)`; the frame is canonicalized.
    pub fn from_frame(frame: &Mat) -> Self {
        let frame = canonicalize_frame(frame);
        let angle = if frame.n() == 2 {
            rem_period(atan2(frame[(1, 0)], frame[(0, 0)]), PI)
        } else {
            0.0
        };
        BoundaryPoint { frame, angle }
    }

    /// The point `R(theta) M` of `K/M` for `n = 2`.
    pub fn from_angle(theta: f64) -> Self {
        let angle = rem_period(theta, PI);
        BoundaryPoint {
            frame: canonicalize_frame(&Mat::rotation2(angle)),
            angle,
        }
    }

    /// The base point `eM`.
    pub fn origin(n: usize) -> Self {
        Self::from_frame(&Mat::identity(n))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.frame.n()
    }

    /// Canonical frame; also serves as the lift to `K` for this point.
    #[inline]
    pub fn frame(&self) -> &Mat {
        &self.frame
    }

    /// Angle in `[0, pi)`; only meaningful for `n = 2`.
    #[inline]
    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// The line spanned by the first frame vector, sign-normalized.
    pub fn first_axis(&self) -> [f64; 3] {
        self.frame.col(0)
    }
}

/// `b(k1 exp(H) k2) = k1 M`, defined only when the Cartan projection is regular.
pub fn boundary_map(g: &MatrixElement) -> Result<BoundaryPoint> {
    let f = cartan(g);
    if !f.regular {
        return Err(Error::NotRegular);
    }
    Ok(BoundaryPoint::from_frame(&f.k1))
}

/// `g . kM = kappa(g k) M`, `kappa` the Iwasawa `K`-factor.
pub fn act_on_boundary(g: &MatrixElement, b: &BoundaryPoint) -> BoundaryPoint {
    if g.n() == 2 {
        let v = g.mat().mul_vec(&b.frame.col(0));
        return BoundaryPoint::from_angle(atan2(v[1], v[0]));
    }
    let gk = MatrixElement::trusted(*g.mat() * b.frame);
    let f = iwasawa(&gk).expect("product of unimodular matrices has full rank");
    BoundaryPoint::from_frame(&f.k)
}

/// Radon-Nikodym cocycle `c(g, kM) = exp(-2 rho(H_I(g k)))`, the density of
/// `g^{-1}_* nu` with respect to `nu`.
pub fn cocycle(g: &MatrixElement, b: &BoundaryPoint) -> f64 {
    cocycle_with_lift(g, &b.frame)
}

/// [`cocycle`] evaluated at an explicit lift `k` of the boundary point.
#[inline]
pub fn cocycle_with_lift(g: &MatrixElement, k: &Mat) -> f64 {
    let w = iwasawa_rho_weight(&(*g.mat() * *k));
    w * w
}

/// Left `K`-invariant distance on `K/M`: arc distance on the projective line
/// for `n = 2`, Frobenius distance of frames minimized over `M` for `n = 3`.
pub fn boundary_distance(b1: &BoundaryPoint, b2: &BoundaryPoint) -> Result<f64> {
    if b1.n() != b2.n() {
        return Err(Error::DimensionMismatch {
            left: b1.n(),
            right: b2.n(),
        });
    }
    if b1.n() == 2 {
        let d = libm::fabs(b1.angle - b2.angle);
        return Ok(d.min(PI - d));
    }
    let mut best = f64::INFINITY;
    for signs in M_SIGNS_3 {
        let mut f = b1.frame;
        for (j, &s) in signs.iter().enumerate() {
            if s < 0.0 {
                f.negate_col(j);
            }
        }
        best = best.min(f.dist(&b2.frame));
    }
    Ok(best)
}

/// Diagonal entries of the four elements of `M` for `n = 3`.
pub const M_SIGNS_3: [[f64; 3]; 4] = [
    [1.0, 1.0, 1.0],
    [-1.0, -1.0, 1.0],
    [-1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0],
];

/// Diagonal entries of the elements of `M` for dimension `n`.
pub fn m_signs(n: usize) -> &'static [[f64; 3]] {
    const M2: [[f64; 3]; 2] = [[1.0, 1.0, 0.0], [-1.0, -1.0, 0.0]];
    if n == 2 {
        &M2
    } else {
        &M_SIGNS_3
    }
}

/// Right multiplication of a frame by the element of `M` with the given signs.
pub fn twist_by_m(frame: &Mat, signs: &[f64; 3]) -> Mat {
    let mut f = *frame;
    for j in 0..frame.n() {
        if signs[j] < 0.0 {
            f.negate_col(j);
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{root_data, ChamberVector};
    use crate::math::E;

    #[test]
    fn canonical_form_is_m_invariant() {
        let k = Mat::rot_z(0.3) * Mat::rot_y(2.1) * Mat::rot_z(-1.4);
        let base = BoundaryPoint::from_frame(&k);
        for signs in M_SIGNS_3 {
            let twisted = BoundaryPoint::from_frame(&twist_by_m(&k, &signs));
            assert_eq!(twisted, base);
        }
        let f = base.frame();
        assert!((f.det() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn angle_and_frame_agree() {
        for &theta in &[0.0, 0.3, PI / 4.0, 1.5, 2.9, 3.1] {
            let b = BoundaryPoint::from_angle(theta);
            let back = BoundaryPoint::from_frame(b.frame());
            assert!((back.angle() - b.angle()).abs() < 1e-15);
            assert_eq!(back.frame(), b.frame());
        }
        assert!((BoundaryPoint::from_angle(PI + 0.2).angle() - 0.2).abs() < 1e-15);
        assert!((BoundaryPoint::from_angle(-0.2).angle() - (PI - 0.2)).abs() < 1e-15);
    }

    #[test]
    fn boundary_map_examples() {
        let a = MatrixElement::from_rows(&[&[E, 0.0], &[0.0, 1.0 / E]]).unwrap();
        assert!(boundary_map(&a).unwrap().angle().min(PI - boundary_map(&a).unwrap().angle()) < 1e-14);

        let g = MatrixElement::trusted(Mat::rotation2(PI / 6.0) * *a.mat() * Mat::rotation2(1.0));
        let b = boundary_map(&g).unwrap();
        assert!((b.angle() - PI / 6.0).abs() < 1e-13);

        let k = MatrixElement::trusted(Mat::rotation2(0.8));
        assert_eq!(boundary_map(&k), Err(Error::NotRegular));
    }

    #[test]
    fn rotations_act_by_translation() {
        let b = BoundaryPoint::from_angle(0.4);
        assert_eq!(act_on_boundary(&MatrixElement::identity(2), &b).angle(), b.angle());
        let k = MatrixElement::trusted(Mat::rotation2(2.0));
        let moved = act_on_boundary(&k, &b);
        assert!((moved.angle() - rem_period(2.4, PI)).abs() < 1e-14);
    }

    #[test]
    fn cocycle_examples() {
        let rs = root_data(2, None).unwrap();
        let b = BoundaryPoint::from_angle(1.1);
        assert!((cocycle(&MatrixElement::identity(2), &b) - 1.0).abs() < 1e-15);
        let k = MatrixElement::trusted(Mat::rotation2(0.7));
        assert!((cocycle(&k, &b) - 1.0).abs() < 1e-14);
        let t = 2.5;
        let h = ChamberVector::new(&[t / 2.0, -t / 2.0]).unwrap();
        let c = cocycle(&h.exp(), &BoundaryPoint::origin(2));
        assert!((c - libm::exp(-2.0 * rs.rho_of(&h))).abs() < 1e-15);
        assert!((c - libm::exp(-t)).abs() < 1e-15);
    }

    #[test]
    fn distance_examples() {
        let b = BoundaryPoint::from_angle(0.9);
        assert_eq!(boundary_distance(&b, &b).unwrap(), 0.0);
        let d = boundary_distance(&BoundaryPoint::from_angle(0.0), &BoundaryPoint::from_angle(PI / 2.0));
        assert!((d.unwrap() - PI / 2.0).abs() < 1e-15);
        let d = boundary_distance(&BoundaryPoint::from_angle(0.1), &BoundaryPoint::from_angle(PI - 0.1));
        assert!((d.unwrap() - 0.2).abs() < 1e-14);
        assert!(matches!(
            boundary_distance(&b, &BoundaryPoint::origin(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        let x = BoundaryPoint::from_frame(&Mat::rot_x(0.5));
        assert!(boundary_distance(&x, &x).unwrap() < 1e-15);
    }
}
