//! Lattice points of `SL(2, Z)`, its principal congruence subgroups, and
//! `SL(3, Z)` inside Cartan balls `B_T = K exp(a+_T) K` and their cones.
//!
//! Balls are open and use the open chamber: `0 < L(gamma) < T`. Elements of
//! `K` (such as `+-I` or the quarter turn) have length zero and are never
//! counted.
//!
//! For `n = 2` with the default inner scale, `L(gamma) < T` is equivalent to
//! `2 < ||gamma||_F^2 < 2 cosh T`, so the enumeration is exact integer
//! arithmetic: every coprime top row `(a, b)` with `a^2 + b^2 < 2 cosh T`
//! has the solution family `(c0 + k a, d0 + k b)` of `ad - bc = 1`, and the
//! admissible `k` form an interval.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::boundary::{boundary_map, BoundaryPoint};
use crate::harmonic::harish_chandra;
use crate::lie::{cartan, root_data, ChamberVector, RootSystemData};
use crate::math::{ceil, cosh, exp, floor, sqrt, PI};
use crate::matrix::MatrixElement;
use crate::quadrature::{composite_gauss, QuadratureScheme};
use crate::{Error, Result};

/// Relative slack when comparing against the ball radius; points on the
/// sphere itself are excluded.
pub const BALL_TOLERANCE: f64 = 1e-12;
/// Below this length an element is treated as lying in `K`.
pub const ZERO_LENGTH: f64 = 1e-9;

/// Integer matrix with determinant one, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    e: [i64; 9],
}

impl Ord for IntMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.entries().cmp(other.entries()))
    }
}

impl PartialOrd for IntMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl IntMatrix {
    /// Row-major entries of a `2 x 2` or `3 x 3` integer matrix of determinant one.
    pub fn new(entries: &[i64]) -> Result<Self> {
        let n = match entries.len() {
            4 => 2,
            9 => 3,
            k => return Err(Error::DimensionMismatch { left: 9, right: k }),
        };
        let mut e = [0; 9];
        e[..entries.len()].copy_from_slice(entries);
        let m = IntMatrix { n, e };
        if m.det() != 1 {
            return Err(Error::NotUnimodular { det: m.det() as f64 });
        }
        Ok(m)
    }

    #[inline]
    fn new_unchecked2(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix {
            n: 2,
            e: [a, b, c, d, 0, 0, 0, 0, 0],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entries(&self) -> &[i64] {
        &self.e[..self.n * self.n]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.e[i * self.n + j]
    }

    pub fn det(&self) -> i64 {
        let e = &self.e;
        if self.n == 2 {
            e[0] * e[3] - e[1] * e[2]
        } else {
            e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6])
                + e[2] * (e[3] * e[7] - e[4] * e[6])
        }
    }

    pub fn frobenius_sq(&self) -> i64 {
        self.entries().iter().map(|x| x * x).sum()
    }

    /// Inverse, exact since the determinant is one.
    pub fn inverse(&self) -> Self {
        let e = &self.e;
        if self.n == 2 {
            return Self::new_unchecked2(e[3], -e[1], -e[2], e[0]);
        }
        let a = |i: usize, j: usize| e[i * 3 + j];
        let mut out = [0; 9];
        for i in 0..3 {
            for j in 0..3 {
                let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                out[i * 3 + j] = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
            }
        }
        IntMatrix { n: 3, e: out }
    }

    pub fn negated(&self) -> Self {
        let mut m = *self;
        for x in &mut m.e[..self.n * self.n] {
            *x = -*x;
        }
        m
    }

    pub fn to_element(&self) -> MatrixElement {
        MatrixElement::from_integers(self.entries()).expect("integer matrix of determinant one")
    }

    /// `gamma = I mod q`.
    pub fn is_congruent_to_identity(&self, q: i64) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let target = i64::from(i == j);
                (self.get(i, j) - target).rem_euclid(q) == 0
            })
        })
    }
}

/// Which lattice is enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    /// `SL(n, Z)`.
    Full,
    /// Principal congruence subgroup `Gamma(q)` of `SL(2, Z)`.
    Congruence(u32),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeSpec {
    pub n: usize,
    pub kind: LatticeKind,
    /// Ball radius.
    pub t: f64,
    /// Optional cone half-angle around the barycenter.
    pub theta: Option<f64>,
}

impl LatticeSpec {
    pub fn full(n: usize, t: f64) -> Self {
        LatticeSpec {
            n,
            kind: LatticeKind::Full,
            t,
            theta: None,
        }
    }

    pub fn level(&self) -> u32 {
        match self.kind {
            LatticeKind::Full => 1,
            LatticeKind::Congruence(q) => q,
        }
    }

    pub fn validate(&self) -> Result<()> {
        crate::matrix::check_dim(self.n)?;
        if !(self.t > 0.0 && self.t.is_finite()) {
            return Err(Error::InvalidArgument {
                field: "T",
                reason: "radius must be positive and finite",
            });
        }
        if self.level() == 0 {
            return Err(Error::InvalidArgument {
                field: "q",
                reason: "congruence level must be at least 1",
            });
        }
        if self.n == 3 && self.level() != 1 {
            return Err(Error::InvalidArgument {
                field: "q",
                reason: "congruence subgroups are only supported for n = 2",
            });
        }
        if let Some(theta) = self.theta {
            if !(theta > 0.0) {
                return Err(Error::InvalidArgument {
                    field: "theta",
                    reason: "cone angle must be positive",
                });
            }
        }
        Ok(())
    }
}

/// Resource guards for enumeration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnumerationLimits {
    pub max_t_sl2: f64,
    pub max_t_sl3: f64,
    /// Cap on the predicted number of points (`n = 2`) or of candidate
    /// triples (`n = 3`).
    pub max_count: f64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_t_sl2: 14.0,
            max_t_sl3: 1.8,
            max_count: 2e7,
        }
    }
}

/// Cartan data shared by raw lattice points and full records.
pub trait CartanData {
    fn length(&self) -> f64;
    /// Angle to the barycenter.
    fn angle(&self) -> f64;
}

/// A lattice element in the ball with its Cartan projection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticePoint {
    pub gamma: IntMatrix,
    pub h: ChamberVector,
    pub length: f64,
    pub angle: f64,
    pub regular: bool,
}

impl LatticePoint {
    pub fn new(gamma: IntMatrix, rs: &RootSystemData) -> Self {
        let f = cartan(&gamma.to_element());
        let length = rs.length_of(&f.h);
        let angle = rs.chamber_angle(&f.h).unwrap_or(0.0);
        LatticePoint {
            gamma,
            h: f.h,
            length,
            angle,
            regular: f.regular,
        }
    }
}

impl CartanData for LatticePoint {
    fn length(&self) -> f64 {
        self.length
    }
    fn angle(&self) -> f64 {
        self.angle
    }
}

/// A lattice element with Cartan data, both boundary images and `Xi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticePointRecord {
    pub gamma: IntMatrix,
    pub h: ChamberVector,
    pub length: f64,
    pub angle: f64,
    /// `b(gamma)`.
    pub b_plus: BoundaryPoint,
    /// `b(gamma^{-1}) = l^{-1} m0^{-1} M` for `gamma = k exp(H) l`.
    pub b_minus: BoundaryPoint,
    pub xi: f64,
}

impl CartanData for LatticePointRecord {
    fn length(&self) -> f64 {
        self.length
    }
    fn angle(&self) -> f64 {
        self.angle
    }
}

impl LatticePointRecord {
    /// Computes all derived data; fails with `NotRegular` off `K A+ K`.
    pub fn new(gamma: IntMatrix, rs: &RootSystemData, quad: &QuadratureScheme) -> Result<Self> {
        let g = gamma.to_element();
        let f = cartan(&g);
        if !f.regular {
            return Err(Error::NotRegular);
        }
        let b_minus_frame = f.k2.transpose() * rs.m0.transpose();
        Ok(LatticePointRecord {
            gamma,
            h: f.h,
            length: rs.length_of(&f.h),
            angle: rs.chamber_angle(&f.h)?,
            b_plus: BoundaryPoint::from_frame(&f.k1),
            b_minus: BoundaryPoint::from_frame(&b_minus_frame),
            xi: harish_chandra(rs, quad, &g),
        })
    }

    /// `b(gamma^{-1})` recomputed from the Cartan decomposition of the inverse.
    pub fn b_minus_via_inverse(&self) -> Result<BoundaryPoint> {
        boundary_map(&self.gamma.inverse().to_element())
    }
}

/// Annotates raw matrices with Cartan, boundary and `Xi` data.
pub fn build_records(
    gammas: &[IntMatrix],
    rs: &RootSystemData,
    quad: &QuadratureScheme,
) -> Result<Vec<LatticePointRecord>> {
    gammas
        .iter()
        .map(|&g| LatticePointRecord::new(g, rs, quad))
        .collect()
}

/// `2 cosh T`, the squared Frobenius radius of the ball for `n = 2`.
pub fn sl2_norm_bound(t: f64) -> f64 {
    2.0 * cosh(t)
}

#[inline]
fn inside_norm_ball(norm_sq: i64, bound: f64) -> bool {
    norm_sq > 2 && (norm_sq as f64) < bound * (1.0 - BALL_TOLERANCE)
}

/// Predicted `|Gamma_T|` for `SL(2, Z)`: `#{||gamma||^2 <= X} ~ 6 X`.
pub fn predicted_sl2_count(t: f64, level: u32) -> f64 {
    let q = f64::from(level.max(1));
    // index of Gamma(q) in SL(2, Z) is about q^3
    6.0 * sl2_norm_bound(t) / (q * q * q).max(1.0)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Coprime top rows `(a, b)` with `a^2 + b^2 < bound`, lexicographic.
pub fn sl2_top_rows(bound: f64) -> Vec<(i64, i64)> {
    let r = floor(sqrt(bound)) as i64 + 1;
    let mut rows = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            if ((a * a + b * b) as f64) < bound && ext_gcd(a, b).0 == 1 {
                rows.push((a, b));
            }
        }
    }
    rows
}

/// All `(a, b; c, d)` in `SL(2, Z)` with the given top row and
/// `2 < norm^2 < bound`, ordered by `(c, d)`.
pub fn sl2_row_family(a: i64, b: i64, bound: f64) -> Vec<IntMatrix> {
    let (g, x, y) = ext_gcd(a, b);
    debug_assert_eq!(g, 1);
    let (c0, d0) = (-y, x);
    let s = (a * a + b * b) as f64;
    let p = (a * c0 + b * d0) as f64;
    let q = (c0 * c0 + d0 * d0) as f64;
    let disc = p * p - s * (q + s - bound);
    let mut out = Vec::new();
    if disc < 0.0 {
        return out;
    }
    let root = sqrt(disc);
    let k_lo = ceil((-p - root) / s) as i64 - 1;
    let k_hi = floor((-p + root) / s) as i64 + 1;
    for k in k_lo..=k_hi {
        let (c, d) = (c0 + k * a, d0 + k * b);
        let m = IntMatrix::new_unchecked2(a, b, c, d);
        if inside_norm_ball(m.frobenius_sq(), bound) {
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Validation and resource guards of an `SL(2, Z)` request.
pub fn validate_sl2_request(spec: &LatticeSpec, rs: &RootSystemData, limits: &EnumerationLimits) -> Result<()> {
    spec.validate()?;
    if spec.n != 2 {
        return Err(Error::DimensionMismatch { left: 2, right: spec.n });
    }
    if (rs.inner_scale - 2.0).abs() > 1e-15 {
        return Err(Error::InvalidArgument {
            field: "inner_scale",
            reason: "the SL(2, Z) norm criterion assumes the default inner scale 2",
        });
    }
    if spec.t > limits.max_t_sl2 {
        return Err(Error::ResourceLimit {
            what: "T above the SL(2, Z) guard",
            requested: spec.t,
            cap: limits.max_t_sl2,
        });
    }
    let predicted = predicted_sl2_count(spec.t, spec.level());
    if predicted > limits.max_count {
        return Err(Error::ResourceLimit {
            what: "predicted lattice point count",
            requested: predicted,
            cap: limits.max_count,
        });
    }
    Ok(())
}

/// Exhaustive `Gamma_T` for `SL(2, Z)` or `Gamma(q)`, sorted lexicographically.
pub fn enumerate_sl2z_matrices(spec: &LatticeSpec, limits: &EnumerationLimits) -> Result<Vec<IntMatrix>> {
    let rs = root_data(2, None)?;
    validate_sl2_request(spec, &rs, limits)?;
    let bound = sl2_norm_bound(spec.t);
    let q = i64::from(spec.level());
    let mut out = Vec::new();
    for (a, b) in sl2_top_rows(bound) {
        out.extend(
            sl2_row_family(a, b, bound)
                .into_iter()
                .filter(|m| q == 1 || m.is_congruent_to_identity(q)),
        );
    }
    out.sort();
    Ok(out)
}

/// [`enumerate_sl2z_matrices`] followed by record construction.
pub fn enumerate_sl2z(
    spec: &LatticeSpec,
    rs: &RootSystemData,
    quad: &QuadratureScheme,
    limits: &EnumerationLimits,
) -> Result<Vec<LatticePointRecord>> {
    validate_sl2_request(spec, rs, limits)?;
    build_records(&enumerate_sl2z_matrices(spec, limits)?, rs, quad)
}

/// Result of the `SL(3, Z)` brute force: regular elements carry boundary
/// data, non-regular ones (repeated singular values) are only counted.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Sl3Enumeration {
    pub regular: Vec<IntMatrix>,
    pub non_regular: Vec<IntMatrix>,
}

/// Integer vectors with squared norm at most `bound_sq`, lexicographic.
pub fn sl3_row_candidates(bound_sq: i64) -> Vec<[i64; 3]> {
    let r = floor(sqrt(bound_sq as f64)) as i64;
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            for z in -r..=r {
                let s = x * x + y * y + z * z;
                if s > 0 && s <= bound_sq {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Squared row-norm bound `floor(sigma_1^2)` for `L < T`.
pub fn sl3_row_bound(rs: &RootSystemData, t: f64) -> i64 {
    let sigma = exp(rs.max_top_coordinate(t));
    floor(sigma * sigma * (1.0 + 1e-12)) as i64
}

/// Classifies a determinant-one integer matrix against the ball: `None` if
/// outside (or in `K`), otherwise `Some(regular)`.
pub fn classify_in_ball(m: &IntMatrix, rs: &RootSystemData, t: f64) -> Option<bool> {
    let f = cartan(&m.to_element());
    let l = rs.length_of(&f.h);
    if l > ZERO_LENGTH && l < t * (1.0 - BALL_TOLERANCE) {
        Some(f.regular)
    } else {
        None
    }
}

/// All ball elements whose first row is `r1`.
pub fn sl3_first_row_family(
    r1: &[i64; 3],
    candidates: &[[i64; 3]],
    rs: &RootSystemData,
    t: f64,
) -> Sl3Enumeration {
    let mut out = Sl3Enumeration::default();
    for r2 in candidates {
        let w = [
            r1[1] * r2[2] - r1[2] * r2[1],
            r1[2] * r2[0] - r1[0] * r2[2],
            r1[0] * r2[1] - r1[1] * r2[0],
        ];
        if w == [0, 0, 0] {
            continue;
        }
        for r3 in candidates {
            if r3[0] * w[0] + r3[1] * w[1] + r3[2] * w[2] != 1 {
                continue;
            }
            let m = IntMatrix {
                n: 3,
                e: [r1[0], r1[1], r1[2], r2[0], r2[1], r2[2], r3[0], r3[1], r3[2]],
            };
            match classify_in_ball(&m, rs, t) {
                Some(true) => out.regular.push(m),
                Some(false) => out.non_regular.push(m),
                None => {}
            }
        }
    }
    out
}

/// Validation and resource guards of an `SL(3, Z)` request; returns the
/// candidate rows.
pub fn validate_sl3_request(
    spec: &LatticeSpec,
    rs: &RootSystemData,
    limits: &EnumerationLimits,
) -> Result<Vec<[i64; 3]>> {
    spec.validate()?;
    if spec.n != 3 || rs.n != 3 {
        return Err(Error::DimensionMismatch { left: 3, right: spec.n });
    }
    if spec.t > limits.max_t_sl3 {
        return Err(Error::ResourceLimit {
            what: "T above the SL(3, Z) guard",
            requested: spec.t,
            cap: limits.max_t_sl3,
        });
    }
    let candidates = sl3_row_candidates(sl3_row_bound(rs, spec.t));
    let c = candidates.len() as f64;
    let work = c * c * c;
    if work > limits.max_count * 100.0 {
        return Err(Error::ResourceLimit {
            what: "SL(3, Z) candidate triples",
            requested: work,
            cap: limits.max_count * 100.0,
        });
    }
    Ok(candidates)
}

/// Exhaustive `Gamma_T` for `SL(3, Z)` by pruned brute force over rows.
pub fn enumerate_sl3z_matrices(
    spec: &LatticeSpec,
    rs: &RootSystemData,
    limits: &EnumerationLimits,
) -> Result<Sl3Enumeration> {
    let candidates = validate_sl3_request(spec, rs, limits)?;
    let mut out = Sl3Enumeration::default();
    for r1 in &candidates {
        let part = sl3_first_row_family(r1, &candidates, rs, spec.t);
        out.regular.extend(part.regular);
        out.non_regular.extend(part.non_regular);
    }
    out.regular.sort();
    out.non_regular.sort();
    Ok(out)
}

/// [`enumerate_sl3z_matrices`] with records for the regular elements.
pub fn enumerate_sl3z(
    spec: &LatticeSpec,
    rs: &RootSystemData,
    quad: &QuadratureScheme,
    limits: &EnumerationLimits,
) -> Result<(Vec<LatticePointRecord>, Vec<IntMatrix>)> {
    let e = enumerate_sl3z_matrices(spec, rs, limits)?;
    Ok((build_records(&e.regular, rs, quad)?, e.non_regular))
}

/// Records with chamber angle below `theta`; the identity for `n = 2`,
/// where the chamber is a half-line.
pub fn cone_filter<P: CartanData + Clone>(records: &[P], rs: &RootSystemData, theta: f64) -> Vec<P> {
    if rs.n == 2 || theta >= PI {
        return records.to_vec();
    }
    records.iter().filter(|r| r.angle() < theta).cloned().collect()
}

/// Number of points in the cone of half-angle `theta`.
pub fn cone_count<P: CartanData>(points: &[P], rs: &RootSystemData, theta: f64) -> usize {
    if rs.n == 2 || theta >= PI {
        return points.len();
    }
    points.iter().filter(|r| r.angle() < theta).count()
}

/// Buckets of record indices: bucket `k` holds lengths in `[T_{k-1}, T_k)`
/// with `T_{-1} = 0`.
pub fn annuli_partition<P: CartanData>(records: &[P], t_grid: &[f64]) -> Result<Vec<Vec<usize>>> {
    if t_grid.is_empty() || t_grid.windows(2).any(|w| w[0] >= w[1]) || t_grid[0] <= 0.0 {
        return Err(Error::InvalidArgument {
            field: "T_grid",
            reason: "must be positive and strictly increasing",
        });
    }
    let mut buckets = alloc::vec![Vec::new(); t_grid.len()];
    for (i, r) in records.iter().enumerate() {
        let l = r.length();
        if let Some(k) = t_grid.iter().position(|&t| l < t) {
            buckets[k].push(i);
        }
    }
    Ok(buckets)
}

/// `vol(K exp(a+_T cone) K) = int J(H) dH` with the `K` factors normalized
/// to one; `theta` restricts to the cone around the barycenter.
pub fn volume_ball(rs: &RootSystemData, t: f64, theta: Option<f64>) -> f64 {
    if !(t > 0.0) {
        return 0.0;
    }
    let panels = ceil(t / 0.25).max(1.0) as usize;
    let radial = composite_gauss(0.0, t, panels, 16);
    if rs.n == 2 {
        return crate::sum::neumaier(
            radial
                .iter()
                .map(|&(r, w)| w * rs.cartan_jacobian(&rs.h_max.scaled(r))),
        );
    }
    // unit vectors of the traceless plane for the scaled inner product
    let e1 = rs.h_max;
    let s6 = sqrt(6.0 * rs.inner_scale);
    let e2 = ChamberVector::traceless(&[1.0 / s6, -2.0 / s6, 1.0 / s6]);
    let half = PI / 6.0;
    let phi_max = theta.map_or(half, |th| th.min(half));
    let angular = composite_gauss(-phi_max, phi_max, 8, 16);
    let mut acc = crate::sum::Neumaier::default();
    for &(r, wr) in &radial {
        for &(phi, wp) in &angular {
            let h = e1.scaled(r * libm::cos(phi)).add(&e2.scaled(r * libm::sin(phi)));
            acc.add(wr * wp * r * rs.cartan_jacobian(&h).max(0.0));
        }
    }
    acc.total()
}

/// Counting data at one radius.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationReport {
    pub spec: LatticeSpec,
    pub count: usize,
    /// `(theta, |Gamma_T^theta|)` per requested angle.
    pub cone_counts: Vec<(f64, usize)>,
    pub volume: f64,
    pub count_over_volume: f64,
    /// `|Gamma_T| exp(-delta T)`.
    pub count_times_decay: f64,
}

impl EnumerationReport {
    pub fn cone_ratios(&self) -> Vec<(f64, f64)> {
        self.cone_counts
            .iter()
            .map(|&(th, c)| (th, if self.count == 0 { 0.0 } else { c as f64 / self.count as f64 }))
            .collect()
    }
}

/// One report per radius, from points already enumerated at that radius.
pub fn counting_report<P: CartanData>(
    sets: &[(LatticeSpec, &[P])],
    rs: &RootSystemData,
    theta_list: &[f64],
) -> Result<Vec<EnumerationReport>> {
    if sets.len() < 2 {
        return Err(Error::InvalidArgument {
            field: "T_grid",
            reason: "counting needs at least two radii",
        });
    }
    Ok(sets
        .iter()
        .map(|(spec, pts)| {
            let volume = volume_ball(rs, spec.t, None);
            let count = pts.len();
            EnumerationReport {
                spec: *spec,
                count,
                cone_counts: theta_list
                    .iter()
                    .map(|&th| (th, cone_count(pts, rs, th)))
                    .collect(),
                volume,
                count_over_volume: count as f64 / volume,
                count_times_decay: count as f64 * exp(-rs.delta * spec.t),
            }
        })
        .collect())
}
