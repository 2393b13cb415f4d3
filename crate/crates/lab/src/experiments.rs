//! One runner per command, each producing a [`Table`].

use boundary_lab_core::averages::{
    equidistribution_average, haar_markov_check, koopman_birkhoff, reports_from_terms,
    annuli_identity_from_terms, geometric_bound, sub_ball, two_sided_fraction, AverageSpec,
    KoopmanSystem,
};
use boundary_lab_core::boundary::BoundaryPoint;
use boundary_lab_core::functions::{BoundaryFunction, FunctionKind, Region};
use boundary_lab_core::harmonic::{harish_chandra, inner_product, peak_decay_profile};
use boundary_lab_core::lattice::{
    annuli_partition, counting_report, volume_ball, IntMatrix, LatticeKind, LatticePointRecord,
    LatticeSpec,
};
use boundary_lab_core::lie::{root_data, RootSystemData};
use boundary_lab_core::quadrature::QuadratureScheme;
use boundary_lab_core::Complex64;

use crate::cache::{CacheKey, EnumerationCache};
use crate::config::{Command, RunConfig};
use crate::par;
use crate::report::{Cell, Table};
use crate::{LabError, LabResult};

pub fn execute(cfg: &RunConfig) -> LabResult<Table> {
    cfg.validate()?;
    let rs = root_data(cfg.n, cfg.inner_scale)?;
    match cfg.command {
        Command::Enumerate => enumerate(cfg, &rs),
        Command::Xi => xi(cfg, &rs),
        Command::Ergodic => ergodic(cfg, &rs),
        Command::Equidist => equidist(cfg, &rs),
        Command::Twosided => twosided(cfg, &rs),
        Command::Count => count(cfg, &rs),
        Command::Volumes => volumes(cfg, &rs),
        Command::Markov if cfg.haar => haar(cfg, &rs),
        Command::Markov => markov(cfg, &rs),
        Command::Peak => peak(cfg, &rs),
        Command::Koopman => koopman(cfg),
        Command::Annuli => annuli(cfg, &rs),
    }
}

fn quadrature(cfg: &RunConfig) -> LabResult<QuadratureScheme> {
    Ok(QuadratureScheme::for_dimension(cfg.n, cfg.quad)?)
}

fn function(cfg: &RunConfig, field: &str, spec: &str) -> LabResult<BoundaryFunction> {
    let f = BoundaryFunction::parse(spec).map_err(|e| LabError::config(field, e.to_string()))?;
    if !f.supports(cfg.n) {
        return Err(LabError::config(field, format!("`{spec}` is not defined for n = {}", cfg.n)));
    }
    Ok(f)
}

fn region(cfg: &RunConfig, field: &str, spec: &str) -> LabResult<Region> {
    match spec {
        "all" => return Ok(Region::Everything),
        "none" => return Ok(Region::Nothing),
        _ => {}
    }
    match function(cfg, field, spec)?.kind {
        FunctionKind::Indicator(r) => Ok(r),
        _ => Err(LabError::config(field, "expected a region such as arc:a:b, all or none")),
    }
}

fn lattice_spec(cfg: &RunConfig, t: f64) -> LatticeSpec {
    LatticeSpec {
        n: cfg.n,
        kind: if cfg.q == 1 {
            LatticeKind::Full
        } else {
            LatticeKind::Congruence(cfg.q)
        },
        t,
        theta: cfg.theta,
    }
}

/// All elements of the largest ball of the grid, through the cache when one
/// is configured.
pub fn ball_matrices(cfg: &RunConfig, rs: &RootSystemData, t: f64) -> LabResult<Vec<IntMatrix>> {
    let spec = lattice_spec(cfg, t);
    let compute = || Ok(par::enumerate_ball(&spec, rs, &cfg.limits())?);
    let cache_usable = cfg.inner_scale.is_none();
    match EnumerationCache::resolve(cfg.cache_dir.as_deref()) {
        Some(cache) if cache_usable => cache.load_or_compute(&CacheKey::of(&spec), compute),
        _ => compute(),
    }
}

fn largest(cfg: &RunConfig) -> f64 {
    *cfg.t_grid.last().expect("validated grid")
}

/// Records of the regular elements of the largest ball.
fn records(cfg: &RunConfig, rs: &RootSystemData, quad: &QuadratureScheme) -> LabResult<Vec<LatticePointRecord>> {
    let t = largest(cfg);
    let all = ball_matrices(cfg, rs, t)?;
    let split = par::classify(&all, rs, t);
    Ok(par::build_records(&split.regular, rs, quad)?)
}

fn cplx(z: Complex64) -> [Cell; 2] {
    [Cell::Num(z.re), Cell::Num(z.im)]
}

fn opt_cplx(z: Option<Complex64>) -> [Cell; 2] {
    match z {
        Some(z) => cplx(z),
        None => [Cell::Null, Cell::Null],
    }
}

fn frame_text(b: &BoundaryPoint) -> String {
    let f = b.frame();
    let n = f.n();
    let mut parts = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            parts.push(format!("{:.16e}", f[(i, j)]));
        }
    }
    parts.join(" ")
}

fn boundary_cell(b: &BoundaryPoint) -> Cell {
    if b.n() == 2 {
        Cell::Num(b.angle())
    } else {
        Cell::Text(frame_text(b))
    }
}

fn enumerate(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let quad = quadrature(cfg)?;
    let t = largest(cfg);
    let all = ball_matrices(cfg, rs, t)?;
    let split = par::classify(&all, rs, t);
    let recs = par::build_records(&split.regular, rs, &quad)?;
    let mut table = Table::new(&["gamma", "regular", "length", "angle", "b_plus", "b_minus", "xi"]);
    let entries = |m: &IntMatrix| m.entries().iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    for r in &recs {
        table.push(vec![
            Cell::Text(entries(&r.gamma)),
            Cell::Int(1),
            Cell::Num(r.length),
            Cell::Num(r.angle),
            boundary_cell(&r.b_plus),
            boundary_cell(&r.b_minus),
            Cell::Num(r.xi),
        ]);
    }
    for p in par::lattice_points(&split.non_regular, rs) {
        table.push(vec![
            Cell::Text(entries(&p.gamma)),
            Cell::Int(0),
            Cell::Num(p.length),
            Cell::Num(p.angle),
            Cell::Null,
            Cell::Null,
            Cell::Null,
        ]);
    }
    Ok(table)
}

fn xi(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let quad = quadrature(cfg)?;
    let mut table = Table::new(&["t", "xi", "xi_times_exp_rho"]);
    for &t in &cfg.t_grid {
        let g = rs.h_max.scaled(t).exp();
        let v = harish_chandra(rs, &quad, &g);
        let rho = rs.rho_of(&rs.h_max.scaled(t));
        table.push(vec![t.into(), v.into(), (v * rho.exp()).into()]);
    }
    Ok(table)
}

fn average_spec(cfg: &RunConfig, rs: &RootSystemData, quad: QuadratureScheme) -> LabResult<AverageSpec> {
    let spec = AverageSpec {
        rs: rs.clone(),
        quad,
        f: function(cfg, "f", &cfg.f)?,
        phi: function(cfg, "phi", &cfg.phi)?,
        psi: function(cfg, "psi", &cfg.psi)?,
        t_grid: cfg.t_grid.clone(),
        theta: cfg.theta,
        f_bound: None,
    };
    spec.validate()?;
    Ok(spec)
}

fn ergodic(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let spec = average_spec(cfg, rs, quadrature(cfg)?)?;
    let recs = records(cfg, rs, &spec.quad)?;
    let terms = par::average_terms(&recs, &spec);
    let rows = reports_from_terms(rs, &cfg.t_grid, cfg.theta, &recs, &terms, spec.target())?;
    let mut table = Table::new(&[
        "T", "count", "estimate_re", "estimate_im", "target_re", "target_im", "abs_error",
    ]);
    for r in rows {
        let mut row = vec![r.t.into(), r.count.into()];
        row.extend(opt_cplx(r.estimate));
        row.extend(cplx(r.target));
        row.push(r.abs_error.into());
        table.push(row);
    }
    Ok(table)
}

fn equidist(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let quad = quadrature(cfg)?;
    let f = function(cfg, "f", &cfg.f)?;
    let target = inner_product(&quad, &f, &BoundaryFunction::one());
    let recs = records(cfg, rs, &quad)?;
    let mut table = Table::new(&["T", "count", "value_re", "value_im", "target_re", "target_im"]);
    for &t in &cfg.t_grid {
        let sub = sub_ball(&recs, rs, t);
        let mut row = vec![t.into(), sub.len().into()];
        row.extend(opt_cplx(equidistribution_average(&sub, &f).ok()));
        row.extend(cplx(target));
        table.push(row);
    }
    Ok(table)
}

fn twosided(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let quad = quadrature(cfg)?;
    let u = region(cfg, "u", &cfg.u)?;
    let v = region(cfg, "v", &cfg.v)?;
    let target = match (u.measure(), v.measure()) {
        (Some(a), Some(b)) => Some(a * b),
        _ => None,
    };
    let recs = records(cfg, rs, &quad)?;
    let mut table = Table::new(&["T", "count", "fraction", "target"]);
    for &t in &cfg.t_grid {
        let sub = sub_ball(&recs, rs, t);
        table.push(vec![
            t.into(),
            sub.len().into(),
            two_sided_fraction(&sub, &u, &v).ok().into(),
            target.into(),
        ]);
    }
    Ok(table)
}

fn count(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let t_max = largest(cfg);
    let all = ball_matrices(cfg, rs, t_max)?;
    let points = par::lattice_points(&all, rs);
    let per_t: Vec<Vec<_>> = cfg
        .t_grid
        .iter()
        .map(|&t| points.iter().filter(|p| p.length < t * (1.0 - 1e-12) && p.length > 1e-9).copied().collect())
        .collect();
    let sets: Vec<(LatticeSpec, &[_])> = cfg
        .t_grid
        .iter()
        .zip(&per_t)
        .map(|(&t, pts)| (lattice_spec(cfg, t), pts.as_slice()))
        .collect();
    let mut columns = vec![
        "T".to_string(),
        "count".into(),
        "non_regular".into(),
        "volume".into(),
        "count_over_volume".into(),
        "count_times_exp_minus_delta_T".into(),
    ];
    columns.extend(cfg.thetas.iter().map(|th| format!("cone_ratio_{th}")));
    let mut table = Table {
        columns,
        rows: Vec::new(),
    };
    if sets.len() == 1 {
        return Err(LabError::config("T_grid", "counting needs at least two radii"));
    }
    let reports = counting_report(&sets, rs, &cfg.thetas)?;
    for (rep, pts) in reports.iter().zip(&per_t) {
        let mut row = vec![
            rep.spec.t.into(),
            rep.count.into(),
            pts.iter().filter(|p| !p.regular).count().into(),
            rep.volume.into(),
            rep.count_over_volume.into(),
            rep.count_times_decay.into(),
        ];
        row.extend(rep.cone_ratios().into_iter().map(|(_, r)| Cell::Num(r)));
        table.push(row);
    }
    Ok(table)
}

fn volumes(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let mut table = Table::new(&["T", "volume", "volume_times_exp_minus_delta_T"]);
    for &t in &cfg.t_grid {
        let v = volume_ball(rs, t, cfg.theta);
        table.push(vec![t.into(), v.into(), (v * (-rs.delta * t).exp()).into()]);
    }
    Ok(table)
}

fn markov(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let quad = quadrature(cfg)?;
    let recs = records(cfg, rs, &quad)?;
    let mut table = Table::new(&["T", "count", "sup", "mean"]);
    for &t in &cfg.t_grid {
        let sub = sub_ball(&recs, rs, t);
        match par::markov_row(&sub, rs, &quad) {
            Ok(row) => table.push(vec![t.into(), sub.len().into(), row.sup.into(), row.mean.into()]),
            Err(boundary_lab_core::Error::EmptyLattice) => {
                table.push(vec![t.into(), 0usize.into(), Cell::Null, Cell::Null])
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(table)
}

/// Eight boundary points away from the quadrature grid.
pub fn probe_points(n: usize) -> Vec<BoundaryPoint> {
    use boundary_lab_core::matrix::Mat;
    (0..8)
        .map(|i| {
            let s = 0.05 + 0.39 * i as f64;
            if n == 2 {
                BoundaryPoint::from_angle(s)
            } else {
                BoundaryPoint::from_frame(&(Mat::rot_z(s) * Mat::rot_y(0.3 + 0.31 * i as f64) * Mat::rot_z(0.7 * s)))
            }
        })
        .collect()
}

fn haar(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let quad = quadrature(cfg)?;
    let xs = probe_points(cfg.n);
    let mut table = Table::new(&["T", "x", "value"]);
    for &t in &cfg.t_grid {
        let vals = haar_markov_check(rs, &quad, t, cfg.radial, &xs)?;
        for (i, v) in vals.into_iter().enumerate() {
            table.push(vec![t.into(), i.into(), v.into()]);
        }
    }
    Ok(table)
}

fn peak(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let quad = quadrature(cfg)?;
    let mut table = Table::new(&["s", "value"]);
    for (s, v) in peak_decay_profile(rs, &quad, cfg.r, &cfg.t_grid)? {
        table.push(vec![s.into(), v.into()]);
    }
    Ok(table)
}

fn koopman(cfg: &RunConfig) -> LabResult<Table> {
    if cfg.n != 2 {
        return Err(LabError::config("n", "the Koopman baseline lives on the circle, n = 2"));
    }
    let phi = function(cfg, "phi", &cfg.phi)?;
    let psi = function(cfg, "psi", &cfg.psi)?;
    let sys = KoopmanSystem {
        alpha: cfg.alpha,
        grid: cfg.grid,
        sizes: cfg.sizes.clone(),
    };
    let mut table = Table::new(&[
        "n", "estimate_re", "estimate_im", "target_re", "target_im", "abs_error", "geometric_bound",
    ]);
    for row in koopman_birkhoff(&sys, &phi, &psi) {
        let mut cells = vec![row.n.into()];
        cells.extend(cplx(row.estimate));
        cells.extend(cplx(row.target));
        cells.push((row.estimate - row.target).norm().into());
        cells.push(geometric_bound(cfg.alpha, row.n).into());
        table.push(cells);
    }
    Ok(table)
}

fn annuli(cfg: &RunConfig, rs: &RootSystemData) -> LabResult<Table> {
    let spec = average_spec(cfg, rs, quadrature(cfg)?)?;
    let recs = records(cfg, rs, &spec.quad)?;
    let terms = par::average_terms(&recs, &spec);
    let buckets = annuli_partition(&recs, &cfg.t_grid)?;
    let deviation = annuli_identity_from_terms(&terms, &buckets)?;
    let mut table = Table::new(&["T", "count", "annuli", "deviation"]);
    table.push(vec![
        largest(cfg).into(),
        recs.len().into(),
        buckets.len().into(),
        deviation.into(),
    ]);
    Ok(table)
}
