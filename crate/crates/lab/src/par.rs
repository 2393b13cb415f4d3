//! Rayon drivers for the expensive loops of the core crate.
//!
//! Every driver maps independent work items in parallel, collects the
//! results in input order and reduces them serially in that order, so its
//! output is bitwise identical to the serial core function.

use boundary_lab_core::averages::{
    average_term, markov_row_block, AverageSpec, BasketEvaluator, MarkovInputs, MarkovRow,
};
use boundary_lab_core::lattice::{
    classify_in_ball, sl2_norm_bound, sl2_row_family, sl2_top_rows, sl3_first_row_family,
    validate_sl2_request, validate_sl3_request, EnumerationLimits, IntMatrix, LatticePoint,
    LatticePointRecord, LatticeSpec, Sl3Enumeration,
};
use boundary_lab_core::lie::RootSystemData;
use boundary_lab_core::quadrature::QuadratureScheme;
use boundary_lab_core::{Complex64, Error, Result};
use rayon::prelude::*;

/// Nodes per parallel block of the Markov row.
const MARKOV_BLOCK: usize = 64;

/// Parallel [`boundary_lab_core::lattice::enumerate_sl2z_matrices`].
pub fn enumerate_sl2z(spec: &LatticeSpec, rs: &RootSystemData, limits: &EnumerationLimits) -> Result<Vec<IntMatrix>> {
    validate_sl2_request(spec, rs, limits)?;
    let bound = sl2_norm_bound(spec.t);
    let q = i64::from(spec.level());
    let families: Vec<Vec<IntMatrix>> = sl2_top_rows(bound)
        .into_par_iter()
        .map(|(a, b)| {
            let mut fam = sl2_row_family(a, b, bound);
            fam.retain(|m| q == 1 || m.is_congruent_to_identity(q));
            fam
        })
        .collect();
    let mut out: Vec<IntMatrix> = families.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// Parallel [`boundary_lab_core::lattice::enumerate_sl3z_matrices`].
pub fn enumerate_sl3z(spec: &LatticeSpec, rs: &RootSystemData, limits: &EnumerationLimits) -> Result<Sl3Enumeration> {
    let candidates = validate_sl3_request(spec, rs, limits)?;
    let parts: Vec<Sl3Enumeration> = candidates
        .par_iter()
        .map(|r1| sl3_first_row_family(r1, &candidates, rs, spec.t))
        .collect();
    let mut out = Sl3Enumeration::default();
    for p in parts {
        out.regular.extend(p.regular);
        out.non_regular.extend(p.non_regular);
    }
    out.regular.sort();
    out.non_regular.sort();
    Ok(out)
}

/// All ball elements of either dimension, regular or not, sorted.
pub fn enumerate_ball(spec: &LatticeSpec, rs: &RootSystemData, limits: &EnumerationLimits) -> Result<Vec<IntMatrix>> {
    match spec.n {
        2 => enumerate_sl2z(spec, rs, limits),
        3 => {
            let e = enumerate_sl3z(spec, rs, limits)?;
            let mut all = e.regular;
            all.extend(e.non_regular);
            all.sort();
            Ok(all)
        }
        n => Err(Error::UnsupportedDimension(n)),
    }
}

/// Splits ball elements into regular and non-regular ones, dropping any
/// element outside the ball of radius `t`.
pub fn classify(matrices: &[IntMatrix], rs: &RootSystemData, t: f64) -> Sl3Enumeration {
    let tags: Vec<Option<bool>> = matrices.par_iter().map(|m| classify_in_ball(m, rs, t)).collect();
    let mut out = Sl3Enumeration::default();
    for (m, tag) in matrices.iter().zip(tags) {
        match tag {
            Some(true) => out.regular.push(*m),
            Some(false) => out.non_regular.push(*m),
            None => {}
        }
    }
    out
}

/// Cartan data of each matrix.
pub fn lattice_points(matrices: &[IntMatrix], rs: &RootSystemData) -> Vec<LatticePoint> {
    matrices.par_iter().map(|&m| LatticePoint::new(m, rs)).collect()
}

/// Parallel [`boundary_lab_core::lattice::build_records`].
pub fn build_records(
    matrices: &[IntMatrix],
    rs: &RootSystemData,
    quad: &QuadratureScheme,
) -> Result<Vec<LatticePointRecord>> {
    matrices
        .par_iter()
        .map(|&m| LatticePointRecord::new(m, rs, quad))
        .collect()
}

/// Average terms of one spec, in record order.
pub fn average_terms(records: &[LatticePointRecord], spec: &AverageSpec) -> Vec<Complex64> {
    records.par_iter().map(|r| average_term(r, spec)).collect()
}

/// Basket terms, one column per triple, in record order.
pub fn basket_terms(records: &[LatticePointRecord], eval: &BasketEvaluator<'_>) -> Vec<Vec<Complex64>> {
    let rows: Vec<Vec<Complex64>> = records.par_iter().map(|r| eval.terms(r)).collect();
    (0..eval.len())
        .map(|k| rows.iter().map(|row| row[k]).collect())
        .collect()
}

/// Parallel [`boundary_lab_core::averages::lattice_markov_row`].
pub fn markov_row(records: &[LatticePointRecord], rs: &RootSystemData, quad: &QuadratureScheme) -> Result<MarkovRow> {
    if rs.n != quad.n() {
        return Err(Error::DimensionMismatch {
            left: rs.n,
            right: quad.n(),
        });
    }
    let inputs = MarkovInputs::new(records)?;
    let blocks: Vec<Vec<f64>> = (0..quad.len().div_ceil(MARKOV_BLOCK))
        .into_par_iter()
        .map(|b| {
            let lo = b * MARKOV_BLOCK;
            markov_row_block(&inputs, quad, lo..(lo + MARKOV_BLOCK).min(quad.len()))
        })
        .collect();
    Ok(MarkovRow::from_table(quad, blocks.concat()))
}
