//! Weighted operator averages over lattice balls and the side checks that
//! go with them.
//!
//! The average of a test function `f` over `Gamma_T` is
//!
//! ```text
//! <M^f phi, psi> = (1/|Gamma_T|) sum f(b(gamma)) <pi(gamma) phi, psi> / Xi(gamma)
//! ```
//!
//! and is compared with `<phi, 1> <f, psi>`. Terms are computed per record
//! and summed in record order, so any caller that produces the same term
//! vector (in parallel, say) gets bitwise the same result.

use alloc::vec;
use alloc::vec::Vec;

use crate::boundary::BoundaryPoint;
use crate::functions::{BoundaryFunction, Region};
use crate::harmonic::{inner_product, matrix_coefficient, product_weight, CoefficientBatch};
use crate::lattice::{volume_ball, LatticePointRecord, BALL_TOLERANCE};
use crate::lie::{iwasawa_rho_weight, ChamberVector, RootSystemData};
use crate::math::{cos, sin, PI};
use crate::matrix::Mat;
use crate::quadrature::QuadratureScheme;
use crate::sum::{neumaier, neumaier_complex, Neumaier};
use crate::{Complex64, Error, Result};

/// Data of one convergence experiment.
#[derive(Clone, Debug)]
pub struct AverageSpec {
    pub rs: RootSystemData,
    pub quad: QuadratureScheme,
    pub f: BoundaryFunction,
    pub phi: BoundaryFunction,
    pub psi: BoundaryFunction,
    pub t_grid: Vec<f64>,
    pub theta: Option<f64>,
    /// Declared bound on `|f|`, checked on the quadrature nodes.
    pub f_bound: Option<f64>,
}

impl AverageSpec {
    pub fn validate(&self) -> Result<()> {
        if self.quad.n() != self.rs.n {
            return Err(Error::DimensionMismatch {
                left: self.rs.n,
                right: self.quad.n(),
            });
        }
        validate_grid(&self.t_grid)?;
        for g in [&self.f, &self.phi, &self.psi] {
            if !g.supports(self.rs.n) {
                return Err(Error::InvalidArgument {
                    field: "function",
                    reason: "function is not defined in this dimension",
                });
            }
        }
        let sup = self.f.sampled_sup(self.quad.nodes().iter().map(|q| &q.point));
        if !sup.is_finite() || self.f_bound.is_some_and(|b| sup > b) {
            return Err(Error::InvalidArgument {
                field: "f",
                reason: "test function exceeds its declared bound",
            });
        }
        Ok(())
    }

    /// `<phi, 1> <f, psi>`.
    pub fn target(&self) -> Complex64 {
        inner_product(&self.quad, &self.phi, &BoundaryFunction::one())
            * inner_product(&self.quad, &self.f, &self.psi)
    }
}

fn validate_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() || t_grid.windows(2).any(|w| w[0] >= w[1]) || !t_grid.iter().all(|t| t.is_finite()) {
        return Err(Error::InvalidArgument {
            field: "T_grid",
            reason: "must be nonempty and strictly increasing",
        });
    }
    Ok(())
}

/// One row of a convergence run. `estimate` and `abs_error` are `None` when
/// the ball holds no lattice points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AverageReport {
    pub t: f64,
    pub count: usize,
    pub estimate: Option<Complex64>,
    pub target: Complex64,
    pub abs_error: Option<f64>,
}

impl AverageReport {
    fn new(t: f64, count: usize, estimate: Option<Complex64>, target: Complex64) -> Self {
        AverageReport {
            t,
            count,
            estimate,
            target,
            abs_error: estimate.map(|e| (e - target).norm()),
        }
    }
}

/// `f(b(gamma)) <pi(gamma) phi, psi> / Xi(gamma)`.
pub fn average_term(record: &LatticePointRecord, spec: &AverageSpec) -> Complex64 {
    let g = record.gamma.to_element();
    let c = matrix_coefficient(&spec.rs, &spec.quad, &g, &spec.phi, &spec.psi);
    spec.f.eval(&record.b_plus) * c / record.xi
}

/// Mean of the terms in order.
pub fn mean_of_terms(terms: &[Complex64]) -> Result<Complex64> {
    if terms.is_empty() {
        return Err(Error::EmptyLattice);
    }
    Ok(neumaier_complex(terms.iter().copied()) / terms.len() as f64)
}

/// `<M^f_{Gamma_T} phi, psi>`.
pub fn weighted_average(records: &[LatticePointRecord], spec: &AverageSpec) -> Result<Complex64> {
    if records.is_empty() {
        return Err(Error::EmptyLattice);
    }
    let terms: Vec<Complex64> = records.iter().map(|r| average_term(r, spec)).collect();
    mean_of_terms(&terms)
}

fn in_region(r: &LatticePointRecord, rs: &RootSystemData, t: f64, theta: Option<f64>) -> bool {
    r.length < t * (1.0 - BALL_TOLERANCE) && (rs.n == 2 || theta.is_none_or(|th| r.angle < th))
}

/// One report per radius, each over the records given for that radius.
pub fn convergence_suite(spec: &AverageSpec, records_per_t: &[(f64, &[LatticePointRecord])]) -> Result<Vec<AverageReport>> {
    spec.validate()?;
    let ts: Vec<f64> = records_per_t.iter().map(|(t, _)| *t).collect();
    validate_grid(&ts)?;
    let target = spec.target();
    Ok(records_per_t
        .iter()
        .map(|&(t, recs)| {
            let selected: Vec<LatticePointRecord> = match spec.theta {
                Some(th) if spec.rs.n > 2 => recs.iter().filter(|r| r.angle < th).copied().collect(),
                _ => recs.to_vec(),
            };
            AverageReport::new(t, selected.len(), weighted_average(&selected, spec).ok(), target)
        })
        .collect())
}

/// Reports for every radius of `t_grid` from one term vector computed on the
/// largest ball. Each sub-ball keeps record order, so the rows coincide with
/// separate runs on separately enumerated balls.
pub fn reports_from_terms(
    rs: &RootSystemData,
    t_grid: &[f64],
    theta: Option<f64>,
    records: &[LatticePointRecord],
    terms: &[Complex64],
    target: Complex64,
) -> Result<Vec<AverageReport>> {
    validate_grid(t_grid)?;
    if records.len() != terms.len() {
        return Err(Error::DimensionMismatch {
            left: records.len(),
            right: terms.len(),
        });
    }
    Ok(t_grid
        .iter()
        .map(|&t| {
            let sub: Vec<Complex64> = records
                .iter()
                .zip(terms)
                .filter(|(r, _)| in_region(r, rs, t, theta))
                .map(|(_, z)| *z)
                .collect();
            AverageReport::new(t, sub.len(), mean_of_terms(&sub).ok(), target)
        })
        .collect())
}

/// Records of a larger ball that lie in the ball of radius `t`.
pub fn sub_ball(records: &[LatticePointRecord], rs: &RootSystemData, t: f64) -> Vec<LatticePointRecord> {
    records
        .iter()
        .filter(|r| in_region(r, rs, t, None))
        .copied()
        .collect()
}

/// A `(f, phi, psi)` triple.
#[derive(Clone, Debug)]
pub struct Triple {
    pub f: BoundaryFunction,
    pub phi: BoundaryFunction,
    pub psi: BoundaryFunction,
}

/// Average terms for several triples with one quadrature pass per element.
pub struct BasketEvaluator<'a> {
    batch: CoefficientBatch<'a>,
    fs: Vec<BoundaryFunction>,
}

fn intern(list: &mut Vec<BoundaryFunction>, f: &BoundaryFunction) -> usize {
    match list.iter().position(|g| g.name == f.name) {
        Some(i) => i,
        None => {
            list.push(f.clone());
            list.len() - 1
        }
    }
}

impl<'a> BasketEvaluator<'a> {
    /// Functions are shared by name, so distinct functions need distinct names.
    pub fn new(quad: &'a QuadratureScheme, basket: &[Triple]) -> Self {
        let (mut phis, mut psis, mut pairs) = (Vec::new(), Vec::new(), Vec::new());
        for t in basket {
            pairs.push((intern(&mut phis, &t.phi), intern(&mut psis, &t.psi)));
        }
        BasketEvaluator {
            batch: CoefficientBatch::new(quad, phis, &psis, pairs),
            fs: basket.iter().map(|t| t.f.clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.fs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fs.is_empty()
    }

    /// One term per triple.
    pub fn terms(&self, record: &LatticePointRecord) -> Vec<Complex64> {
        let vals = self.batch.evaluate(&record.gamma.to_element());
        self.fs
            .iter()
            .zip(&vals.coefficients)
            .map(|(f, c)| f.eval(&record.b_plus) * *c / record.xi)
            .collect()
    }
}

/// `(1/|Gamma_T|) sum f(b(gamma))`.
pub fn equidistribution_average(records: &[LatticePointRecord], f: &BoundaryFunction) -> Result<Complex64> {
    if records.is_empty() {
        return Err(Error::EmptyLattice);
    }
    Ok(neumaier_complex(records.iter().map(|r| f.eval(&r.b_plus))) / records.len() as f64)
}

/// Fraction of records with `b(gamma)` in `u` and `b(gamma^{-1})` in `v`.
pub fn two_sided_fraction(records: &[LatticePointRecord], u: &Region, v: &Region) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::EmptyLattice);
    }
    let hits = records
        .iter()
        .filter(|r| u.contains(&r.b_plus) && v.contains(&r.b_minus))
        .count();
    Ok(hits as f64 / records.len() as f64)
}

/// Inputs of the lattice Markov row in compact form.
#[derive(Clone, Debug)]
pub struct MarkovInputs {
    g_inv: Vec<Mat>,
    xi: Vec<f64>,
}

impl MarkovInputs {
    pub fn new(records: &[LatticePointRecord]) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyLattice);
        }
        Ok(MarkovInputs {
            g_inv: records.iter().map(|r| *r.gamma.inverse().to_element().mat()).collect(),
            xi: records.iter().map(|r| r.xi).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }
}

/// Row values `(1/|Gamma_T|) sum pi(gamma) 1 (x) / Xi(gamma)` at the nodes
/// `nodes` of `quad`; each node sums in record order.
pub fn markov_row_block(inputs: &MarkovInputs, quad: &QuadratureScheme, nodes: core::ops::Range<usize>) -> Vec<f64> {
    let lifts: Vec<Mat> = quad.nodes()[nodes].iter().map(|q| q.lift).collect();
    let mut acc = vec![Neumaier::default(); lifts.len()];
    for (g, xi) in inputs.g_inv.iter().zip(&inputs.xi) {
        for (a, k) in acc.iter_mut().zip(&lifts) {
            a.add(product_weight(g, k) / xi);
        }
    }
    let count = inputs.len() as f64;
    acc.iter().map(|a| a.total() / count).collect()
}

/// Sup, `nu`-mean and per-node table of the lattice Markov row.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovRow {
    pub sup: f64,
    pub mean: f64,
    pub table: Vec<f64>,
}

impl MarkovRow {
    pub fn from_table(quad: &QuadratureScheme, table: Vec<f64>) -> Self {
        MarkovRow {
            sup: table.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean: neumaier(quad.nodes().iter().zip(&table).map(|(q, v)| q.weight * v)),
            table,
        }
    }
}

/// The lattice Markov row at every quadrature node. Records must carry `Xi`
/// computed with the same quadrature for the mean to be one.
pub fn lattice_markov_row(records: &[LatticePointRecord], rs: &RootSystemData, quad: &QuadratureScheme) -> Result<MarkovRow> {
    if rs.n != quad.n() {
        return Err(Error::DimensionMismatch {
            left: rs.n,
            right: quad.n(),
        });
    }
    let inputs = MarkovInputs::new(records)?;
    Ok(MarkovRow::from_table(quad, markov_row_block(&inputs, quad, 0..quad.len())))
}

/// Largest radius accepted by [`haar_markov_check`].
pub const HAAR_CHECK_MAX_T: f64 = 4.0;

/// Midpoint nodes `(H, weight * J(H))` on the chamber ball of radius `t`.
fn chamber_midpoints(rs: &RootSystemData, t: f64, radial: usize) -> Vec<(ChamberVector, f64)> {
    let h = t / radial as f64;
    let mut out = Vec::new();
    if rs.n == 2 {
        for i in 0..radial {
            let r = (i as f64 + 0.5) * h;
            let hv = rs.h_max.scaled(r);
            out.push((hv, h * rs.cartan_jacobian(&hv)));
        }
        return out;
    }
    let s6 = libm::sqrt(6.0 * rs.inner_scale);
    let e2 = ChamberVector::traceless(&[1.0 / s6, -2.0 / s6, 1.0 / s6]);
    let half = PI / 6.0;
    let angular = radial.max(2);
    let hp = 2.0 * half / angular as f64;
    for i in 0..radial {
        let r = (i as f64 + 0.5) * h;
        for j in 0..angular {
            let phi = -half + (j as f64 + 0.5) * hp;
            let hv = rs.h_max.scaled(r * cos(phi)).add(&e2.scaled(r * sin(phi)));
            out.push((hv, h * hp * r * rs.cartan_jacobian(&hv).max(0.0)));
        }
    }
    out
}

/// `(1/vol G_T) int_{G_T} pi(g) 1 (x) / Xi(g) dg` at each `x`, by the Cartan
/// integration formula with the midpoint rule in the chamber and `quad_k` on
/// `K`. Every value is one up to quadrature error.
pub fn haar_markov_check(
    rs: &RootSystemData,
    quad_k: &QuadratureScheme,
    t: f64,
    radial_nodes: usize,
    x_nodes: &[BoundaryPoint],
) -> Result<Vec<f64>> {
    if rs.n != quad_k.n() {
        return Err(Error::DimensionMismatch {
            left: rs.n,
            right: quad_k.n(),
        });
    }
    if !(t > 0.0) || radial_nodes == 0 {
        return Err(Error::InvalidArgument {
            field: "T",
            reason: "radius and node count must be positive",
        });
    }
    if t > HAAR_CHECK_MAX_T {
        return Err(Error::ResourceLimit {
            what: "T above the Haar check guard",
            requested: t,
            cap: HAAR_CHECK_MAX_T,
        });
    }
    let volume = volume_ball(rs, t, None);
    let points = chamber_midpoints(rs, t, radial_nodes);
    // K acts on the left without changing the Iwasawa weight, so only
    // exp(-H) k^{-1} x matters
    let mut out = Vec::with_capacity(x_nodes.len());
    for x in x_nodes {
        if x.n() != rs.n {
            return Err(Error::DimensionMismatch {
                left: rs.n,
                right: x.n(),
            });
        }
        let shifted: Vec<(Mat, f64)> = quad_k
            .nodes()
            .iter()
            .map(|q| (q.lift.transpose() * *x.frame(), q.weight))
            .collect();
        let mut acc = Neumaier::default();
        for (h, w) in &points {
            let a_inv = *h.scaled(-1.0).exp().mat();
            let xi = neumaier(quad_k.nodes().iter().map(|q| q.weight * iwasawa_rho_weight(&(a_inv * q.lift.transpose()))));
            let num = neumaier(shifted.iter().map(|(m, wk)| wk * iwasawa_rho_weight(&(a_inv * *m))));
            acc.add(w * num / xi);
        }
        out.push(acc.total() / volume);
    }
    Ok(out)
}

/// Deviation between the ball average and the count-weighted combination of
/// annulus averages, given the terms on the ball and the annulus buckets.
pub fn annuli_identity_from_terms(terms: &[Complex64], buckets: &[Vec<usize>]) -> Result<f64> {
    let members: Vec<Complex64> = buckets.iter().flatten().map(|&i| terms[i]).collect();
    let total = members.len();
    if total == 0 {
        return Err(Error::EmptyLattice);
    }
    let mut sorted: Vec<usize> = buckets.iter().flatten().copied().collect();
    sorted.sort_unstable();
    let ball = mean_of_terms(&sorted.iter().map(|&i| terms[i]).collect::<Vec<_>>())?;
    let mut combo = Complex64::new(0.0, 0.0);
    for b in buckets.iter().filter(|b| !b.is_empty()) {
        let annulus = mean_of_terms(&b.iter().map(|&i| terms[i]).collect::<Vec<_>>())?;
        combo += annulus * (b.len() as f64 / total as f64);
    }
    Ok((ball - combo).norm())
}

/// Ball-versus-annuli identity for the average of `spec` on the annuli
/// `[T_{k-1}, T_k)` of `t_grid`.
pub fn annuli_identity_check(records: &[LatticePointRecord], t_grid: &[f64], spec: &AverageSpec) -> Result<f64> {
    let buckets = crate::lattice::annuli_partition(records, t_grid)?;
    let terms: Vec<Complex64> = records.iter().map(|r| average_term(r, spec)).collect();
    annuli_identity_from_terms(&terms, &buckets)
}

/// Rotation of `K/M = R/pi Z` by `pi alpha`, sampled on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct KoopmanSystem {
    pub alpha: f64,
    pub grid: usize,
    /// Lengths `n` of the averaging windows `{0, .., n - 1}`.
    pub sizes: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KoopmanRow {
    pub n: usize,
    pub estimate: Complex64,
    pub target: Complex64,
}

/// Birkhoff averages `(1/n) sum_{k<n} <U^k phi, psi>` with
/// `U phi(theta) = phi(theta - pi alpha)`, against `<phi, 1><1, psi>`.
pub fn koopman_birkhoff(sys: &KoopmanSystem, phi: &BoundaryFunction, psi: &BoundaryFunction) -> Vec<KoopmanRow> {
    let quad = QuadratureScheme::circle(sys.grid.max(1));
    let one = BoundaryFunction::one();
    let target = inner_product(&quad, phi, &one) * inner_product(&quad, &one, psi);
    let psi_w: Vec<Complex64> = quad
        .nodes()
        .iter()
        .map(|q| psi.eval(&q.point).conj() * q.weight)
        .collect();
    let coefficient = |k: usize| {
        let shift = PI * sys.alpha * k as f64;
        neumaier_complex(
            quad.nodes()
                .iter()
                .zip(&psi_w)
                .map(|(q, w)| phi.eval_angle(q.point.angle() - shift) * *w),
        )
    };
    let max_n = sys.sizes.iter().copied().max().unwrap_or(0);
    let mut partial = Vec::with_capacity(max_n + 1);
    let (mut re, mut im) = (Neumaier::default(), Neumaier::default());
    partial.push(Complex64::new(0.0, 0.0));
    for k in 0..max_n {
        let c = coefficient(k);
        re.add(c.re);
        im.add(c.im);
        partial.push(Complex64::new(re.total(), im.total()));
    }
    sys.sizes
        .iter()
        .map(|&n| KoopmanRow {
            n,
            estimate: if n == 0 { Complex64::new(0.0, 0.0) } else { partial[n] / n as f64 },
            target,
        })
        .collect()
}

/// `2 / (n |1 - exp(2 pi i alpha)|)`, the bound on `|(1/n) sum exp(2 pi i alpha k)|`.
pub fn geometric_bound(alpha: f64, n: usize) -> f64 {
    let z = Complex64::new(1.0 - cos(2.0 * PI * alpha), -sin(2.0 * PI * alpha));
    2.0 / (n as f64 * z.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{enumerate_sl2z, EnumerationLimits, IntMatrix, LatticeSpec};
    use crate::lie::root_data;

    fn spec(f: BoundaryFunction, phi: BoundaryFunction, psi: BoundaryFunction) -> AverageSpec {
        AverageSpec {
            rs: root_data(2, None).unwrap(),
            quad: QuadratureScheme::circle(128),
            f,
            phi,
            psi,
            t_grid: vec![3.0, 4.0],
            theta: None,
            f_bound: Some(2.0),
        }
    }

    fn records(t: f64, quad: &QuadratureScheme) -> Vec<LatticePointRecord> {
        let rs = root_data(2, None).unwrap();
        enumerate_sl2z(&LatticeSpec::full(2, t), &rs, quad, &EnumerationLimits::default()).unwrap()
    }

    #[test]
    fn constant_functions_average_to_one() {
        let s = spec(BoundaryFunction::one(), BoundaryFunction::one(), BoundaryFunction::one());
        let recs = records(4.0, &s.quad);
        let v = weighted_average(&recs, &s).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(weighted_average(&[], &s), Err(Error::EmptyLattice));
    }

    #[test]
    fn single_record_is_the_term() {
        let s = spec(BoundaryFunction::cos2(), BoundaryFunction::fourier(1), BoundaryFunction::one());
        let rs = &s.rs;
        let g = IntMatrix::new(&[2, 1, 1, 1]).unwrap();
        let r = LatticePointRecord::new(g, rs, &s.quad).unwrap();
        let expected = s.f.eval(&r.b_plus)
            * matrix_coefficient(rs, &s.quad, &g.to_element(), &s.phi, &s.psi)
            / r.xi;
        assert_eq!(weighted_average(&[r], &s).unwrap(), expected);
    }

    #[test]
    fn suite_rows_and_null_rows() {
        let s = spec(BoundaryFunction::one(), BoundaryFunction::one(), BoundaryFunction::one());
        let small = records(0.5, &s.quad);
        let big = records(4.0, &s.quad);
        let rows = convergence_suite(&s, &[(0.5, &small), (4.0, &big)]).unwrap();
        assert_eq!(rows[0].count, 0);
        assert_eq!(rows[0].estimate, None);
        assert!(rows[1].abs_error.unwrap() < 1e-12);
        let coned = AverageSpec { theta: Some(0.1), ..s.clone() };
        assert_eq!(convergence_suite(&coned, &[(0.5, &small), (4.0, &big)]).unwrap(), rows);
    }

    #[test]
    fn sub_ball_terms_match_separate_runs() {
        let s = spec(BoundaryFunction::cos2(), BoundaryFunction::fourier(1), BoundaryFunction::one());
        let big = records(5.0, &s.quad);
        let small = records(3.0, &s.quad);
        assert_eq!(sub_ball(&big, &s.rs, 3.0), small);
        let terms: Vec<Complex64> = big.iter().map(|r| average_term(r, &s)).collect();
        let rows = reports_from_terms(&s.rs, &[3.0, 5.0], None, &big, &terms, s.target()).unwrap();
        assert_eq!(rows[0].estimate.unwrap(), weighted_average(&small, &s).unwrap());
        assert_eq!(rows[1].estimate.unwrap(), weighted_average(&big, &s).unwrap());
    }

    #[test]
    fn basket_matches_single_triples() {
        let quad = QuadratureScheme::circle(64);
        let recs = records(3.0, &quad);
        let basket = [
            Triple { f: BoundaryFunction::cos2(), phi: BoundaryFunction::one(), psi: BoundaryFunction::one() },
            Triple { f: BoundaryFunction::one(), phi: BoundaryFunction::fourier(1), psi: BoundaryFunction::fourier(1) },
            Triple { f: BoundaryFunction::one(), phi: BoundaryFunction::one(), psi: BoundaryFunction::fourier(1) },
        ];
        let eval = BasketEvaluator::new(&quad, &basket);
        for r in recs.iter().take(20) {
            let terms = eval.terms(r);
            for (t, z) in basket.iter().zip(terms) {
                let s = AverageSpec { quad: quad.clone(), ..spec(t.f.clone(), t.phi.clone(), t.psi.clone()) };
                assert!((z - average_term(r, &s)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn self_adjoint_for_constant_f() {
        let s = spec(BoundaryFunction::one(), BoundaryFunction::cos2(), BoundaryFunction::one_plus_cos2());
        let recs = records(4.0, &s.quad);
        let swapped = AverageSpec { phi: s.psi.clone(), psi: s.phi.clone(), ..s.clone() };
        let a = weighted_average(&recs, &s).unwrap();
        let b = weighted_average(&recs, &swapped).unwrap();
        assert!((a - b.conj()).norm() < 1e-10);
    }

    #[test]
    fn equidistribution_and_two_sided_trivia() {
        let quad = QuadratureScheme::circle(32);
        let recs = records(3.0, &quad);
        assert_eq!(equidistribution_average(&recs, &BoundaryFunction::one()).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(two_sided_fraction(&recs, &Region::Everything, &Region::Everything).unwrap(), 1.0);
        assert_eq!(two_sided_fraction(&recs, &Region::Nothing, &Region::Everything).unwrap(), 0.0);
        assert_eq!(two_sided_fraction(&[], &Region::Nothing, &Region::Nothing), Err(Error::EmptyLattice));
    }

    #[test]
    fn markov_row_mean_is_one() {
        let quad = QuadratureScheme::circle(64);
        let rs = root_data(2, None).unwrap();
        let recs = records(4.0, &quad);
        let row = lattice_markov_row(&recs, &rs, &quad).unwrap();
        assert!((row.mean - 1.0).abs() < 1e-12);
        assert!(row.sup >= 1.0);
        // one term: weight of gamma^{-1} at the node over Xi
        let one = lattice_markov_row(&recs[..1], &rs, &quad).unwrap();
        let g_inv = *recs[0].gamma.inverse().to_element().mat();
        let expect = product_weight(&g_inv, &quad.nodes()[0].lift) / recs[0].xi;
        assert_eq!(one.table[0], expect);
    }

    #[test]
    fn haar_check_examples() {
        let rs = root_data(2, None).unwrap();
        let xs: Vec<BoundaryPoint> = (0..4).map(|i| BoundaryPoint::from_angle(0.3 + 0.7 * i as f64)).collect();
        let coarse = haar_markov_check(&rs, &QuadratureScheme::circle(32), 2.0, 32, &xs).unwrap();
        let fine = haar_markov_check(&rs, &QuadratureScheme::circle(64), 2.0, 64, &xs).unwrap();
        let dev = |v: &[f64]| v.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max);
        assert!(dev(&coarse) < 1e-2);
        assert!(dev(&fine) <= 0.5 * dev(&coarse));
        assert!(matches!(
            haar_markov_check(&rs, &QuadratureScheme::circle(8), 5.0, 8, &xs),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn annuli_identity_toy() {
        let terms = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0), Complex64::new(-0.5, 3.0)];
        assert!(annuli_identity_from_terms(&terms, &[vec![0, 1, 2]]).unwrap() < 1e-15);
        assert!(annuli_identity_from_terms(&terms, &[vec![0], vec![1, 2], vec![]]).unwrap() < 1e-15);
        assert_eq!(annuli_identity_from_terms(&terms, &[vec![]]), Err(Error::EmptyLattice));
    }

    #[test]
    fn koopman_examples() {
        let e1 = BoundaryFunction::fourier(1);
        let still = KoopmanSystem { alpha: 0.0, grid: 16, sizes: vec![1, 10, 100] };
        for row in koopman_birkhoff(&still, &e1, &e1) {
            assert!((row.estimate - Complex64::new(1.0, 0.0)).norm() < 1e-13);
            assert!(row.target.norm() < 1e-13);
        }
        let golden = (libm::sqrt(5.0) - 1.0) / 2.0;
        let sys = KoopmanSystem { alpha: golden, grid: 16, sizes: vec![10, 100, 1000] };
        for row in koopman_birkhoff(&sys, &e1, &e1) {
            assert!(row.estimate.norm() <= geometric_bound(golden, row.n) + 1e-12);
        }
        let one = BoundaryFunction::one();
        for row in koopman_birkhoff(&sys, &one, &one) {
            assert!((row.estimate - row.target).norm() < 1e-13);
        }
    }
}
