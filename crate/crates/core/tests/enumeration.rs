use boundary_lab_core::lattice::{
    classify_in_ball, enumerate_sl2z_matrices, enumerate_sl3z_matrices, EnumerationLimits, IntMatrix,
    LatticeKind, LatticeSpec,
};
use boundary_lab_core::lie::{root_data, RootSystemData};

/// Every determinant-one integer matrix with entries bounded by the top
/// singular value allowed on the ball.
fn brute_force(rs: &RootSystemData, t: f64) -> Vec<IntMatrix> {
    let n = rs.n;
    let bound = (rs.max_top_coordinate(t).exp() * (1.0 + 1e-12)).floor() as i64;
    let side = (2 * bound + 1) as usize;
    let mut out = Vec::new();
    let mut e = vec![0i64; n * n];
    for code in 0..side.pow((n * n) as u32) {
        let mut c = code;
        for x in e.iter_mut() {
            *x = (c % side) as i64 - bound;
            c /= side;
        }
        let Ok(m) = IntMatrix::new(&e) else { continue };
        if classify_in_ball(&m, rs, t).is_some() {
            out.push(m);
        }
    }
    out.sort();
    out
}

#[test]
fn sl2_matches_brute_force() {
    let rs = root_data(2, None).unwrap();
    for t in [0.5, 1.0, 2.0, 3.5] {
        let fast = enumerate_sl2z_matrices(&LatticeSpec::full(2, t), &EnumerationLimits::default()).unwrap();
        assert_eq!(fast, brute_force(&rs, t), "T = {t}");
    }
}

#[test]
fn sl3_matches_brute_force() {
    let rs = root_data(3, None).unwrap();
    let t = 1.2;
    let e = enumerate_sl3z_matrices(&LatticeSpec::full(3, t), &rs, &EnumerationLimits::default()).unwrap();
    let mut all = e.regular.clone();
    all.extend(e.non_regular.iter().copied());
    all.sort();
    assert_eq!(all, brute_force(&rs, t));
    assert_eq!(all.len(), 2016);
}

#[test]
fn congruence_subgroup_is_the_filtered_full_ball() {
    let limits = EnumerationLimits::default();
    let full = enumerate_sl2z_matrices(&LatticeSpec::full(2, 4.0), &limits).unwrap();
    for q in [2u32, 3, 5] {
        let spec = LatticeSpec {
            kind: LatticeKind::Congruence(q),
            ..LatticeSpec::full(2, 4.0)
        };
        let sub = enumerate_sl2z_matrices(&spec, &limits).unwrap();
        let expected: Vec<_> = full.iter().copied().filter(|m| m.is_congruent_to_identity(q as i64)).collect();
        assert_eq!(sub, expected, "q = {q}");
        assert!(!sub.is_empty());
    }
}

#[test]
fn ball_is_closed_under_inversion_and_negation() {
    let full = enumerate_sl2z_matrices(&LatticeSpec::full(2, 5.0), &EnumerationLimits::default()).unwrap();
    for m in &full {
        assert!(full.binary_search(&m.inverse()).is_ok());
        assert!(full.binary_search(&m.negated()).is_ok());
    }
}
