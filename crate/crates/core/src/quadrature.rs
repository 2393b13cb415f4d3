//! Deterministic quadrature rules for the `K`-invariant probability measure
//! `nu` on `K/M`.
//!
//! * `n = 2`: the uniform grid `theta_j = j pi / N`, weight `1/N`.
//! * `n = 3`: a tensor Euler-angle rule `Rz(alpha) Ry(beta) Rz(gamma)` with
//!   uniform `alpha`, `gamma` and Gauss-Legendre in `cos beta`, which
//!   integrates normalized Haar measure on `SO(3)`; nodes are pushed to
//!   `K/M` while the lift to `K` is kept for Iwasawa evaluations.

use alloc::vec::Vec;

use crate::boundary::{twist_by_m, BoundaryPoint};
use crate::math::{cos, PI};
use crate::matrix::{check_dim, Mat};
use crate::Result;

#[derive(Clone, Copy, Debug)]
pub struct QuadNode {
    /// A lift of `point` to `K`.
    pub lift: Mat,
    pub point: BoundaryPoint,
    pub weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Circle { nodes: usize },
    Euler { alpha: usize, beta: usize, gamma: usize },
}

#[derive(Clone, Debug)]
pub struct QuadratureScheme {
    n: usize,
    rule: Rule,
    nodes: Vec<QuadNode>,
}

impl QuadratureScheme {
    /// Uniform rule on `K/M` for `n = 2`.
    pub fn circle(nodes: usize) -> Self {
        assert!(nodes > 0, "quadrature needs at least one node");
        let w = 1.0 / nodes as f64;
        let nodes_v = (0..nodes)
            .map(|j| {
                let theta = j as f64 * PI / nodes as f64;
                let point = BoundaryPoint::from_angle(theta);
                QuadNode {
                    lift: Mat::rotation2(theta),
                    point,
                    weight: w,
                }
            })
            .collect();
        QuadratureScheme {
            n: 2,
            rule: Rule::Circle { nodes },
            nodes: nodes_v,
        }
    }

    /// Euler-angle tensor rule on `SO(3)`.
    pub fn euler(alpha: usize, beta: usize, gamma: usize) -> Self {
        assert!(alpha > 0 && beta > 0 && gamma > 0, "quadrature needs nodes");
        let (xs, ws) = gauss_legendre(beta);
        let mut nodes = Vec::with_capacity(alpha * beta * gamma);
        for ia in 0..alpha {
            let a = 2.0 * PI * ia as f64 / alpha as f64;
            let ra = Mat::rot_z(a);
            for (x, wb) in xs.iter().zip(&ws) {
                let rab = ra * Mat::rot_y(libm::acos(*x));
                for ig in 0..gamma {
                    let g = 2.0 * PI * ig as f64 / gamma as f64;
                    let lift = rab * Mat::rot_z(g);
                    nodes.push(QuadNode {
                        lift,
                        point: BoundaryPoint::from_frame(&lift),
                        weight: 0.5 * wb / (alpha * gamma) as f64,
                    });
                }
            }
        }
        QuadratureScheme {
            n: 3,
            rule: Rule::Euler { alpha, beta, gamma },
            nodes,
        }
    }

    /// Default rule for a dimension at a resolution: `circle(resolution)` for
    /// `n = 2`, `euler(2r, r, 2r)` for `n = 3`.
    pub fn for_dimension(n: usize, resolution: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(if n == 2 {
            Self::circle(resolution)
        } else {
            Self::euler(2 * resolution, resolution, 2 * resolution)
        })
    }

    /// Same nodes and weights with each lift right-multiplied by an element
    /// of `M` chosen by `pick` (index into the sign table of `M`).
    pub fn with_twisted_lifts(&self, mut pick: impl FnMut(usize) -> [f64; 3]) -> Self {
        let mut out = self.clone();
        for (i, node) in out.nodes.iter_mut().enumerate() {
            node.lift = twist_by_m(&node.lift, &pick(i));
        }
        out
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    #[inline]
    pub fn nodes(&self) -> &[QuadNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        crate::sum::neumaier(self.nodes.iter().map(|q| q.weight))
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = alloc::vec![0.0; m];
    let mut ws = alloc::vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = cos(PI * (i as f64 + 0.75) / (mf + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if libm::fabs(dx) < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        xs[m - 1 - i] = x;
        ws[i] = w;
        ws[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        xs[m / 2] = 0.0;
    }
    (xs, ws)
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss-Legendre rule on `[a, b]` with `panels` equal panels of
/// `order` points each.
pub fn composite_gauss(a: f64, b: f64, panels: usize, order: usize) -> Vec<(f64, f64)> {
    let (xs, ws) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        for (x, w) in xs.iter().zip(&ws) {
            out.push((lo + 0.5 * h * (x + 1.0), 0.5 * h * w));
        }
    }
    out
}
