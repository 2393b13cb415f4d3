//! Test functions on the boundary and Borel regions used by the experiments.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::boundary::{boundary_distance, BoundaryPoint};
use crate::math::{atan2, cos, rem_period, sin_cos, PI};
use crate::{Complex64, Error, Result};

type Evaluator = Arc<dyn Fn(&BoundaryPoint) -> Complex64 + Send + Sync>;

/// What a [`BoundaryFunction`] computes.
#[derive(Clone)]
pub enum FunctionKind {
    /// The constant `1`.
    One,
    /// `e_m(theta) = exp(2 i m theta)` on `K/M` for `n = 2`.
    Fourier(i32),
    /// `cos(2 theta)`.
    Cos2,
    /// `1 + cos(2 theta)`.
    OnePlusCos2,
    /// Indicator of a region, sharp 0/1 at every point.
    Indicator(Region),
    /// Arbitrary evaluator.
    Custom(Evaluator),
}

/// A complex function on `K/M`, evaluated on canonical boundary points.
#[derive(Clone)]
pub struct BoundaryFunction {
    pub name: String,
    pub kind: FunctionKind,
    /// `integral f dnu` when known in closed form.
    pub known_integral: Option<Complex64>,
}

impl fmt::Debug for BoundaryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryFunction")
            .field("name", &self.name)
            .field("known_integral", &self.known_integral)
            .finish()
    }
}

impl BoundaryFunction {
    pub fn one() -> Self {
        BoundaryFunction {
            name: "one".into(),
            kind: FunctionKind::One,
            known_integral: Some(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn fourier(m: i32) -> Self {
        BoundaryFunction {
            name: format!("fourier:{m}"),
            kind: FunctionKind::Fourier(m),
            known_integral: Some(Complex64::new(if m == 0 { 1.0 } else { 0.0 }, 0.0)),
        }
    }

    pub fn cos2() -> Self {
        BoundaryFunction {
            name: "cos2".into(),
            kind: FunctionKind::Cos2,
            known_integral: Some(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one_plus_cos2() -> Self {
        BoundaryFunction {
            name: "1+cos2".into(),
            kind: FunctionKind::OnePlusCos2,
            known_integral: Some(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn indicator(region: Region) -> Self {
        let known = region.measure().map(|m| Complex64::new(m, 0.0));
        BoundaryFunction {
            name: region.name(),
            kind: FunctionKind::Indicator(region),
            known_integral: known,
        }
    }

    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(&BoundaryPoint) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        BoundaryFunction {
            name: name.into(),
            kind: FunctionKind::Custom(Arc::new(f)),
            known_integral: None,
        }
    }

    /// Parses `one`, `fourier:m`, `arc:a:b`, `cos2`, `1+cos2`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = |reason| Error::InvalidArgument {
            field: "function",
            reason,
        };
        let mut parts = spec.split(':');
        let head = parts.next().unwrap_or_default();
        let f = match head {
            "one" => Self::one(),
            "cos2" => Self::cos2(),
            "1+cos2" => Self::one_plus_cos2(),
            "fourier" => {
                let m = parts
                    .next()
                    .and_then(|s| s.parse::<i32>().ok())
                    .ok_or(bad("expected fourier:<integer>"))?;
                Self::fourier(m)
            }
            "arc" => {
                let a = parts.next().and_then(|s| s.parse::<f64>().ok());
                let b = parts.next().and_then(|s| s.parse::<f64>().ok());
                match (a, b) {
                    (Some(a), Some(b)) => Self::indicator(Region::arc(a, b)?),
                    _ => return Err(bad("expected arc:<start>:<end>")),
                }
            }
            _ => return Err(bad("unknown function name")),
        };
        if parts.next().is_some() {
            return Err(bad("trailing fields in function spec"));
        }
        Ok(f)
    }

    /// Whether the function is defined on `K/M` of dimension `n`.
    pub fn supports(&self, n: usize) -> bool {
        match &self.kind {
            FunctionKind::One | FunctionKind::Custom(_) => true,
            FunctionKind::Indicator(r) => r.supports(n),
            _ => n == 2,
        }
    }

    #[inline]
    pub fn eval(&self, b: &BoundaryPoint) -> Complex64 {
        match &self.kind {
            FunctionKind::One => Complex64::new(1.0, 0.0),
            FunctionKind::Indicator(r) => Complex64::new(if r.contains(b) { 1.0 } else { 0.0 }, 0.0),
            FunctionKind::Custom(f) => f(b),
            _ => self.eval_angle(b.angle()),
        }
    }

    /// Evaluation at the point of angle `theta` for `n = 2`, without building
    /// a frame.
    #[inline]
    pub fn eval_angle(&self, theta: f64) -> Complex64 {
        match &self.kind {
            FunctionKind::One => Complex64::new(1.0, 0.0),
            FunctionKind::Fourier(m) => {
                let (s, c) = sin_cos(2.0 * *m as f64 * theta);
                Complex64::new(c, s)
            }
            FunctionKind::Cos2 => Complex64::new(cos(2.0 * theta), 0.0),
            FunctionKind::OnePlusCos2 => Complex64::new(1.0 + cos(2.0 * theta), 0.0),
            FunctionKind::Indicator(r) => {
                Complex64::new(if r.contains_angle(theta) { 1.0 } else { 0.0 }, 0.0)
            }
            FunctionKind::Custom(f) => f(&BoundaryPoint::from_angle(theta)),
        }
    }

    /// Evaluation at the point spanned by the unit vector `(c, s)` for `n = 2`.
    #[inline]
    pub fn eval_unit(&self, c: f64, s: f64) -> Complex64 {
        match &self.kind {
            FunctionKind::One => Complex64::new(1.0, 0.0),
            FunctionKind::Fourier(m) => {
                let z = Complex64::new(c * c - s * s, 2.0 * c * s);
                let z = if *m < 0 { z.conj() } else { z };
                let mut out = Complex64::new(1.0, 0.0);
                for _ in 0..m.unsigned_abs() {
                    out *= z;
                }
                out
            }
            FunctionKind::Cos2 => Complex64::new(c * c - s * s, 0.0),
            FunctionKind::OnePlusCos2 => Complex64::new(1.0 + (c * c - s * s), 0.0),
            _ => self.eval_angle(atan2(s, c)),
        }
    }

    /// Largest `|f|` over the nodes of a sample, for bounded-function checks.
    pub fn sampled_sup<'a>(&self, points: impl IntoIterator<Item = &'a BoundaryPoint>) -> f64 {
        points
            .into_iter()
            .map(|b| self.eval(b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_one(&self) -> bool {
        matches!(self.kind, FunctionKind::One)
    }
}

/// Borel subsets of `K/M` with null boundary.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Everything,
    Nothing,
    /// Arc `[start, start + len)` of `K/M = R/pi Z` for `n = 2`.
    Arc { start: f64, len: f64 },
    /// Points at boundary distance at least `radius` from `center`.
    FarFrom { center: BoundaryPoint, radius: f64 },
    /// Points at boundary distance less than `radius` from `center`.
    Ball { center: BoundaryPoint, radius: f64 },
}

impl Region {
    /// Arc from `a` to `b` (angles in `[0, pi]`, `a <= b`).
    pub fn arc(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a <= b && b - a <= PI) {
            return Err(Error::InvalidArgument {
                field: "arc",
                reason: "need finite a <= b with b - a <= pi",
            });
        }
        if b - a >= PI {
            return Ok(Region::Everything);
        }
        Ok(Region::Arc {
            start: rem_period(a, PI),
            len: b - a,
        })
    }

    fn name(&self) -> String {
        match self {
            Region::Everything => "everything".into(),
            Region::Nothing => "nothing".into(),
            Region::Arc { start, len } => format!("arc:{}:{}", start, start + len),
            Region::FarFrom { radius, .. } => format!("far:{radius}"),
            Region::Ball { radius, .. } => format!("ball:{radius}"),
        }
    }

    fn supports(&self, n: usize) -> bool {
        match self {
            Region::Arc { .. } => n == 2,
            Region::FarFrom { center, .. } | Region::Ball { center, .. } => center.n() == n,
            _ => true,
        }
    }

    /// `nu(region)` where known in closed form.
    pub fn measure(&self) -> Option<f64> {
        match self {
            Region::Everything => Some(1.0),
            Region::Nothing => Some(0.0),
            Region::Arc { len, .. } => Some(len / PI),
            Region::FarFrom { center, radius } if center.n() == 2 => {
                Some((1.0 - 2.0 * radius / PI).clamp(0.0, 1.0))
            }
            Region::Ball { center, radius } if center.n() == 2 => {
                Some((2.0 * radius / PI).clamp(0.0, 1.0))
            }
            _ => None,
        }
    }

    #[inline]
    pub fn contains_angle(&self, theta: f64) -> bool {
        match self {
            Region::Arc { start, len } => rem_period(theta - start, PI) < *len,
            _ => self.contains(&BoundaryPoint::from_angle(theta)),
        }
    }

    pub fn contains(&self, b: &BoundaryPoint) -> bool {
        match self {
            Region::Everything => true,
            Region::Nothing => false,
            Region::Arc { .. } => self.contains_angle(b.angle()),
            Region::FarFrom { center, radius } => {
                boundary_distance(center, b).is_ok_and(|d| d >= *radius)
            }
            Region::Ball { center, radius } => {
                boundary_distance(center, b).is_ok_and(|d| d < *radius)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_named_functions() {
        assert!(BoundaryFunction::parse("one").unwrap().is_one());
        let f = BoundaryFunction::parse("fourier:2").unwrap();
        let v = f.eval_angle(0.3);
        assert!((v - Complex64::new(libm::cos(1.2), libm::sin(1.2))).norm() < 1e-15);
        let f = BoundaryFunction::parse("arc:0:1.5707963267948966").unwrap();
        assert_eq!(f.known_integral.unwrap().re, 0.5);
        assert_eq!(f.eval_angle(0.2).re, 1.0);
        assert_eq!(f.eval_angle(2.0).re, 0.0);
        assert!(BoundaryFunction::parse("fourier:x").is_err());
        assert!(BoundaryFunction::parse("zeta").is_err());
        assert!(BoundaryFunction::parse("cos2:1").is_err());
        assert!(BoundaryFunction::parse("arc:2:1").is_err());
    }

    #[test]
    fn arc_wraps_modulo_pi() {
        let r = Region::arc(3.0, 3.5).unwrap();
        assert!(r.contains_angle(3.1));
        assert!(r.contains_angle(0.2));
        assert!(!r.contains_angle(0.5));
        assert_eq!(Region::arc(0.0, PI).unwrap(), Region::Everything);
    }

    #[test]
    fn unit_vector_evaluation_agrees() {
        let fs = [
            BoundaryFunction::fourier(3),
            BoundaryFunction::fourier(-2),
            BoundaryFunction::cos2(),
            BoundaryFunction::one_plus_cos2(),
            BoundaryFunction::indicator(Region::arc(0.5, 2.0).unwrap()),
        ];
        for theta in [0.1, 1.3, 2.9, -0.7] {
            let (s, c) = sin_cos(theta);
            for f in &fs {
                assert!((f.eval_unit(c, s) - f.eval_angle(theta)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn frame_and_angle_evaluations_agree() {
        let b = BoundaryPoint::from_angle(2.2);
        for f in [BoundaryFunction::fourier(1), BoundaryFunction::cos2(), BoundaryFunction::one_plus_cos2()] {
            assert_eq!(f.eval(&b), f.eval_angle(b.angle()));
        }
    }
}
