//! The quasi-regular representation on `L^2(K/M, nu)` and its coefficients.
//!
//! With `H_I` the Iwasawa projection,
//!
//! ```text
//! (pi(g) phi)(kM) = phi(g^{-1} kM) exp(-rho(H_I(g^{-1} k)))
//! Xi(g)           = integral exp(-rho(H_I(g^{-1} k))) dk
//! P0 phi (g)      = <pi(g) 1, conj phi> / Xi(g)
//! ```
//!
//! All integrals are quadrature sums in node order. The weight
//! `exp(-rho(H_I(.)))` is right `M`-invariant, so the lift chosen for a node
//! does not matter.

use alloc::vec;
use alloc::vec::Vec;

use crate::boundary::{act_on_boundary, BoundaryPoint};
use crate::functions::{BoundaryFunction, Region};
use crate::lie::{iwasawa, iwasawa_rho_weight, RootSystemData};
use crate::math::PI;
use crate::matrix::{Mat, MatrixElement};
use crate::quadrature::QuadratureScheme;
use crate::sum::Neumaier;
use crate::{Complex64, Error, Result};

/// Where `g^{-1}` sends a node, with the square-root cocycle weight.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Image {
    /// Unit vector spanning the image line, `n = 2`.
    Unit(f64, f64),
    Point(BoundaryPoint),
}

/// `exp(-rho(H_I(g^{-1} k)))`.
#[inline]
pub(crate) fn product_weight(g_inv: &Mat, lift: &Mat) -> f64 {
    if g_inv.n() == 2 {
        let (c, s) = (lift[(0, 0)], lift[(1, 0)]);
        let x = g_inv[(0, 0)] * c + g_inv[(0, 1)] * s;
        let y = g_inv[(1, 0)] * c + g_inv[(1, 1)] * s;
        return 1.0 / libm::sqrt(x * x + y * y);
    }
    iwasawa_rho_weight(&(*g_inv * *lift))
}

/// `(g^{-1} . kM, exp(-rho(H_I(g^{-1} k))))` for a lift `k`.
#[inline]
pub(crate) fn pull_node(g_inv: &Mat, lift: &Mat) -> (Image, f64) {
    if g_inv.n() == 2 {
        let (c, s) = (lift[(0, 0)], lift[(1, 0)]);
        let x = g_inv[(0, 0)] * c + g_inv[(0, 1)] * s;
        let y = g_inv[(1, 0)] * c + g_inv[(1, 1)] * s;
        let w = 1.0 / libm::sqrt(x * x + y * y);
        return (Image::Unit(x * w, y * w), w);
    }
    let gk = *g_inv * *lift;
    let f = iwasawa(&MatrixElement::trusted(gk)).expect("unimodular product has full rank");
    (
        Image::Point(BoundaryPoint::from_frame(&f.k)),
        iwasawa_rho_weight(&gk),
    )
}

#[inline]
pub(crate) fn eval_image(f: &BoundaryFunction, image: &Image) -> Complex64 {
    match image {
        Image::Unit(c, s) => f.eval_unit(*c, *s),
        Image::Point(b) => f.eval(b),
    }
}

fn check_quad(rs: &RootSystemData, quad: &QuadratureScheme) -> Result<()> {
    if rs.n != quad.n() {
        return Err(Error::DimensionMismatch {
            left: rs.n,
            right: quad.n(),
        });
    }
    Ok(())
}

/// `(pi(g) phi)(b)`, using the canonical frame of `b` as its lift.
pub fn pi_eval(g: &MatrixElement, phi: &BoundaryFunction, b: &BoundaryPoint) -> Complex64 {
    let g_inv = g.inverse();
    let weight = iwasawa_rho_weight(&(*g_inv.mat() * *b.frame()));
    phi.eval(&act_on_boundary(&g_inv, b)) * weight
}

/// Values of `pi(g) phi` at every quadrature node.
pub fn pi_apply(g: &MatrixElement, phi: &BoundaryFunction, quad: &QuadratureScheme) -> Vec<Complex64> {
    let g_inv = g.inverse();
    quad.nodes()
        .iter()
        .map(|node| {
            let (image, w) = pull_node(g_inv.mat(), &node.lift);
            eval_image(phi, &image) * w
        })
        .collect()
}

/// Harish-Chandra function `Xi(g)`.
pub fn harish_chandra(rs: &RootSystemData, quad: &QuadratureScheme, g: &MatrixElement) -> f64 {
    debug_assert_eq!(rs.n, quad.n());
    let g_inv = g.inverse();
    let mut acc = Neumaier::default();
    for node in quad.nodes() {
        acc.add(node.weight * product_weight(g_inv.mat(), &node.lift));
    }
    acc.total()
}

/// `<phi, psi> = sum w_j phi(b_j) conj(psi(b_j))`.
pub fn inner_product(quad: &QuadratureScheme, phi: &BoundaryFunction, psi: &BoundaryFunction) -> Complex64 {
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    for node in quad.nodes() {
        let z = phi.eval(&node.point) * psi.eval(&node.point).conj() * node.weight;
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.total(), im.total())
}

/// `||phi||` in `L^2(nu)`.
pub fn norm(quad: &QuadratureScheme, phi: &BoundaryFunction) -> f64 {
    libm::sqrt(inner_product(quad, phi, phi).re.max(0.0))
}

/// `||pi(g) phi||`.
pub fn pi_norm(g: &MatrixElement, phi: &BoundaryFunction, quad: &QuadratureScheme) -> f64 {
    let vals = pi_apply(g, phi, quad);
    let mut acc = Neumaier::default();
    for (v, node) in vals.iter().zip(quad.nodes()) {
        acc.add(node.weight * v.norm_sqr());
    }
    libm::sqrt(acc.total())
}

/// `<pi(g) phi, psi>`.
pub fn matrix_coefficient(
    rs: &RootSystemData,
    quad: &QuadratureScheme,
    g: &MatrixElement,
    phi: &BoundaryFunction,
    psi: &BoundaryFunction,
) -> Complex64 {
    debug_assert_eq!(rs.n, quad.n());
    let g_inv = g.inverse();
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    for node in quad.nodes() {
        let (image, w) = pull_node(g_inv.mat(), &node.lift);
        let z = eval_image(phi, &image) * psi.eval(&node.point).conj() * (w * node.weight);
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.total(), im.total())
}

/// Normalized square root of the Poisson kernel, `<pi(g) 1, conj phi> / Xi(g)`.
pub fn poisson_p0(
    rs: &RootSystemData,
    quad: &QuadratureScheme,
    phi: &BoundaryFunction,
    g: &MatrixElement,
) -> Complex64 {
    debug_assert_eq!(rs.n, quad.n());
    let g_inv = g.inverse();
    let mut xi = Neumaier::default();
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    for node in quad.nodes() {
        let w = node.weight * product_weight(g_inv.mat(), &node.lift);
        xi.add(w);
        let z = phi.eval(&node.point) * w;
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.total(), im.total()) / xi.total()
}

/// `s -> P0 1_{d(., eM) >= r}(exp(s H_max))` along the barycenter ray, whose
/// boundary image is `eM`.
pub fn peak_decay_profile(
    rs: &RootSystemData,
    quad: &QuadratureScheme,
    r: f64,
    s_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    check_quad(rs, quad)?;
    if !(r > 0.0) {
        return Err(Error::InvalidArgument {
            field: "r",
            reason: "radius must be positive",
        });
    }
    if s_grid.iter().any(|&s| !(s > 0.0)) || s_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument {
            field: "s_grid",
            reason: "must be positive and strictly increasing",
        });
    }
    let far = BoundaryFunction::indicator(Region::FarFrom {
        center: BoundaryPoint::origin(rs.n),
        radius: r,
    });
    Ok(s_grid
        .iter()
        .map(|&s| {
            let g = rs.h_max.scaled(s).exp();
            (s, poisson_p0(rs, quad, &far, &g).re.clamp(0.0, 1.0))
        })
        .collect())
}

/// Diameter of `K/M` under [`crate::boundary::boundary_distance`] for `n = 2`.
pub const CIRCLE_DIAMETER: f64 = PI / 2.0;

/// Matrix coefficients of many `(phi, psi)` pairs sharing one pass over the
/// quadrature nodes per group element.
pub struct CoefficientBatch<'a> {
    quad: &'a QuadratureScheme,
    phis: Vec<BoundaryFunction>,
    /// `conj(psi_k(b_j)) * w_j`, psi-major.
    psi_weighted: Vec<Vec<Complex64>>,
    pairs: Vec<(usize, usize)>,
}

/// Output of [`CoefficientBatch::evaluate`].
#[derive(Clone, Debug, PartialEq)]
pub struct BatchValues {
    pub xi: f64,
    /// `<pi(g) phi, psi>` in pair order.
    pub coefficients: Vec<Complex64>,
}

impl<'a> CoefficientBatch<'a> {
    /// `pairs` index into `phis` and `psis`.
    pub fn new(
        quad: &'a QuadratureScheme,
        phis: Vec<BoundaryFunction>,
        psis: &[BoundaryFunction],
        pairs: Vec<(usize, usize)>,
    ) -> Self {
        assert!(pairs.iter().all(|&(i, j)| i < phis.len() && j < psis.len()));
        let psi_weighted = psis
            .iter()
            .map(|psi| {
                quad.nodes()
                    .iter()
                    .map(|node| psi.eval(&node.point).conj() * node.weight)
                    .collect()
            })
            .collect();
        CoefficientBatch {
            quad,
            phis,
            psi_weighted,
            pairs,
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `Xi(g)` and every requested coefficient of `g`.
    pub fn evaluate(&self, g: &MatrixElement) -> BatchValues {
        let g_inv = g.inverse();
        let mut xi = Neumaier::default();
        let mut acc = vec![(Neumaier::default(), Neumaier::default()); self.pairs.len()];
        let mut phi_vals = vec![Complex64::new(0.0, 0.0); self.phis.len()];
        for (j, node) in self.quad.nodes().iter().enumerate() {
            let (image, w) = pull_node(g_inv.mat(), &node.lift);
            xi.add(node.weight * w);
            for (v, phi) in phi_vals.iter_mut().zip(&self.phis) {
                *v = if phi.is_one() {
                    Complex64::new(w, 0.0)
                } else {
                    eval_image(phi, &image) * w
                };
            }
            for (a, &(p, q)) in acc.iter_mut().zip(&self.pairs) {
                let z = phi_vals[p] * self.psi_weighted[q][j];
                a.0.add(z.re);
                a.1.add(z.im);
            }
        }
        BatchValues {
            xi: xi.total(),
            coefficients: acc
                .iter()
                .map(|(re, im)| Complex64::new(re.total(), im.total()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{cocycle, M_SIGNS_3};
    use crate::lie::{root_data, ChamberVector};
    use crate::math::{exp, E};

    fn diag2(t: f64) -> MatrixElement {
        ChamberVector::new(&[t / 2.0, -t / 2.0]).unwrap().exp()
    }

    /// `(1/pi) int_0^pi (a cos^2 + b sin^2)^{-1/2} = 1 / AGM(sqrt a, sqrt b)`.
    fn agm(mut a: f64, mut b: f64) -> f64 {
        for _ in 0..64 {
            let (x, y) = ((a + b) / 2.0, (a * b).sqrt());
            a = x;
            b = y;
        }
        a
    }

    #[test]
    fn xi_of_identity_is_one() {
        let rs = root_data(2, None).unwrap();
        let q = QuadratureScheme::circle(64);
        assert!((harish_chandra(&rs, &q, &MatrixElement::identity(2)) - 1.0).abs() < 1e-14);
        let rs3 = root_data(3, None).unwrap();
        let q3 = QuadratureScheme::for_dimension(3, 4).unwrap();
        assert!((harish_chandra(&rs3, &q3, &MatrixElement::identity(3)) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn xi_matches_agm_closed_form() {
        // AGM oracle, independent of the quadrature
        let rs = root_data(2, None).unwrap();
        let q = QuadratureScheme::circle(1024);
        for t in [0.5, 2.0, 4.0] {
            let xi = harish_chandra(&rs, &q, &diag2(t));
            let oracle = 1.0 / agm(exp(t / 2.0), exp(-t / 2.0));
            assert!((xi - oracle).abs() < 1e-13, "t={t}: {xi} vs {oracle}");
        }
    }

    #[test]
    fn xi_is_insensitive_to_lifts() {
        let rs = root_data(3, None).unwrap();
        let q = QuadratureScheme::for_dimension(3, 6).unwrap();
        let twisted = q.with_twisted_lifts(|i| M_SIGNS_3[(i * 7 + 3) % 4]);
        let g = MatrixElement::trusted(
            Mat::rot_x(0.3) * *ChamberVector::new(&[0.9, -0.2, -0.7]).unwrap().exp().mat() * Mat::rot_y(1.0),
        );
        let a = harish_chandra(&rs, &q, &g);
        let b = harish_chandra(&rs, &twisted, &g);
        assert!((a - b).abs() < 1e-14);
        let phi = BoundaryFunction::custom("x", |b: &BoundaryPoint| Complex64::new(b.first_axis()[2].powi(2), 0.0));
        let one = BoundaryFunction::one();
        let ca = matrix_coefficient(&rs, &q, &g, &phi, &one);
        let cb = matrix_coefficient(&rs, &twisted, &g, &phi, &one);
        assert!((ca - cb).norm() < 1e-14);
    }

    #[test]
    fn pi_eval_sign_convention() {
        // g = exp H, b = eM: g^{-1} k = exp(-H) is already in A, so
        // H_I = -H and the weight is exp(rho(H)); the point stays eM.
        let rs = root_data(2, None).unwrap();
        let t = 1.3;
        let h = ChamberVector::new(&[t / 2.0, -t / 2.0]).unwrap();
        let g = h.exp();
        let f = iwasawa(&g.inverse()).unwrap();
        let direct = exp(-rs.rho_of(&f.h_i));
        let v = pi_eval(&g, &BoundaryFunction::one(), &BoundaryPoint::origin(2));
        assert!((v.re - direct).abs() < 1e-14);
        assert!((v.re - exp(rs.rho_of(&h))).abs() < 1e-14);
        // and pi(e) phi = phi
        let phi = BoundaryFunction::fourier(1);
        let b = BoundaryPoint::from_angle(0.77);
        assert!((pi_eval(&MatrixElement::identity(2), &phi, &b) - phi.eval(&b)).norm() < 1e-15);
    }

    #[test]
    fn pi_eval_is_square_root_of_cocycle() {
        let g = MatrixElement::from_rows(&[&[2.0, 1.0], &[3.0, 2.0]]).unwrap();
        let b = BoundaryPoint::from_angle(0.4);
        let v = pi_eval(&g, &BoundaryFunction::one(), &b).re;
        assert!((v * v - cocycle(&g.inverse(), &b)).abs() < 1e-14);
    }

    #[test]
    fn inner_product_examples() {
        let q = QuadratureScheme::circle(64);
        let one = BoundaryFunction::one();
        let e1 = BoundaryFunction::fourier(1);
        let e2 = BoundaryFunction::fourier(2);
        assert!((inner_product(&q, &one, &one).re - 1.0).abs() < 1e-15);
        assert!((inner_product(&q, &e1, &e1) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(inner_product(&q, &e1, &e2).norm() < 1e-15);
        let n = 1000;
        let q = QuadratureScheme::circle(n);
        let arc = BoundaryFunction::indicator(Region::arc(0.0, PI / 2.0).unwrap());
        assert!((inner_product(&q, &arc, &one).re - 0.5).abs() <= 1.0 / n as f64);
        let z = inner_product(&q, &e1, &arc);
        assert!((z - inner_product(&q, &arc, &e1).conj()).norm() < 1e-15);
    }

    #[test]
    fn coefficient_examples() {
        let rs = root_data(2, None).unwrap();
        let q = QuadratureScheme::circle(256);
        let e1 = BoundaryFunction::fourier(1);
        let cos2 = BoundaryFunction::cos2();
        let one = BoundaryFunction::one();
        let id = MatrixElement::identity(2);
        assert!((matrix_coefficient(&rs, &q, &id, &e1, &cos2) - inner_product(&q, &e1, &cos2)).norm() < 1e-15);
        let g = MatrixElement::from_rows(&[&[1.0, 2.0], &[1.0, 3.0]]).unwrap();
        let m = matrix_coefficient(&rs, &q, &g, &one, &one);
        assert!((m.re - harish_chandra(&rs, &q, &g)).abs() < 1e-14);
        let c = matrix_coefficient(&rs, &q, &g, &e1, &cos2);
        assert!(c.norm() <= norm(&q, &e1) * norm(&q, &cos2) + 1e-12);
    }

    #[test]
    fn batch_matches_single_coefficients() {
        let rs = root_data(2, None).unwrap();
        let q = QuadratureScheme::circle(128);
        let fs = [BoundaryFunction::one(), BoundaryFunction::fourier(1)];
        let batch = CoefficientBatch::new(&q, fs.to_vec(), &fs, vec![(0, 0), (1, 1), (0, 1), (1, 0)]);
        let g = MatrixElement::from_rows(&[&[2.0, 1.0], &[1.0, 1.0]]).unwrap();
        let out = batch.evaluate(&g);
        assert!((out.xi - harish_chandra(&rs, &q, &g)).abs() < 1e-15);
        for (&(p, s), c) in batch.pairs().iter().zip(&out.coefficients) {
            let single = matrix_coefficient(&rs, &q, &g, &fs[p], &fs[s]);
            assert!((single - c).norm() < 1e-15);
        }
    }

    #[test]
    fn p0_examples() {
        let rs = root_data(2, None).unwrap();
        let q = QuadratureScheme::circle(512);
        let g = MatrixElement::from_rows(&[&[3.0, 1.0], &[2.0, 1.0]]).unwrap();
        assert!((poisson_p0(&rs, &q, &BoundaryFunction::one(), &g).re - 1.0).abs() < 1e-14);
        let arc = BoundaryFunction::indicator(Region::arc(0.2, 1.0).unwrap());
        let at_e = poisson_p0(&rs, &q, &arc, &MatrixElement::identity(2));
        assert!((at_e - inner_product(&q, &arc, &BoundaryFunction::one())).norm() < 1e-15);
    }

    #[test]
    fn peak_profile_limits() {
        let rs = root_data(2, None).unwrap();
        let q = QuadratureScheme::circle(1024);
        let all_zero = peak_decay_profile(&rs, &q, CIRCLE_DIAMETER + 0.01, &[0.5, 1.0, 3.0]).unwrap();
        assert!(all_zero.iter().all(|&(_, v)| v == 0.0));
        let near_e = peak_decay_profile(&rs, &q, 0.5, &[1e-9]).unwrap();
        assert!((near_e[0].1 - (1.0 - 1.0 / PI)).abs() < 2.0 / 1024.0);
        assert!(peak_decay_profile(&rs, &q, 0.0, &[1.0]).is_err());
        assert!(peak_decay_profile(&rs, &q, 0.5, &[2.0, 1.0]).is_err());
        let _ = E;
    }
}
