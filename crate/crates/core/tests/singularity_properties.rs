mod common;

use common::*;
use jacpoisson::singularity::{
    bivector_from_map, classify_point, lekili_move, normal_form, singular_locus, RealBound,
};
use jacpoisson::symbolic::{q, Q};
use jacpoisson::{GermKind, MapGerm, SingularityClass};
use num::Zero;
use proptest::prelude::*;

fn catalog() -> Vec<MapGerm> {
    let mut out = vec![
        normal_form(GermKind::Fold, &[-1, 1, 1]).unwrap(),
        normal_form(GermKind::Cusp, &[1, -1]).unwrap(),
        normal_form(GermKind::Lefschetz, &[]).unwrap(),
    ];
    for kind in [GermKind::Birth, GermKind::Merging, GermKind::Flipping, GermKind::Wrinkling] {
        for s in [-1, 0, 1] {
            out.push(lekili_move(kind, &q(s)).unwrap());
        }
    }
    out
}

/// Rank of the 2×4 Jacobian at `p`, from its minors.
fn jacobian_rank(germ: &MapGerm, p: &[Q]) -> usize {
    let rows: Vec<Vec<Q>> = germ.jacobian().iter().map(|r| r.iter().map(|f| f.eval(p)).collect()).collect();
    let minor = |i: usize, j: usize| &rows[0][i] * &rows[1][j] - &rows[0][j] * &rows[1][i];
    if (0..4).any(|i| (i + 1..4).any(|j| !minor(i, j).is_zero())) {
        2
    } else if rows.iter().flatten().any(|v| !v.is_zero()) {
        1
    } else {
        0
    }
}

#[test]
fn sampled_locus_points_drop_anchor_rank() {
    for germ in catalog() {
        let loc = singular_locus(&germ);
        let pi = bivector_from_map(&germ, &parse("1 + x^2")).unwrap();
        for s in &loc.samples {
            assert!(pi.rank_at(s) < 2, "{} at {:?}", germ, s);
            assert!(classify_point(&germ, s).is_ok());
        }
        match &loc.bound {
            RealBound::Empty => assert!(loc.samples.is_empty(), "{germ}"),
            RealBound::Within(vs) => {
                assert!(loc.samples.iter().all(|s| vs.iter().all(|&i| s[i].is_zero())), "{germ}")
            }
            RealBound::Unknown => {}
        }
    }
}

#[test]
fn fold_locus_points_are_folds() {
    let germ = normal_form(GermKind::Fold, &[-1, 1, 1]).unwrap();
    for s in singular_locus(&germ).samples {
        assert_eq!(classify_point(&germ, &s).unwrap(), SingularityClass::Fold);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn anchor_rank_tracks_jacobian_rank(i in 0usize..15, p in rational_point()) {
        let germ = &catalog()[i];
        let pi = bivector_from_map(germ, &parse("1")).unwrap();
        let rank = jacobian_rank(germ, &p);
        prop_assert_eq!(pi.rank_at(&p), if rank == 2 { 2 } else { 0 });
        prop_assert_eq!(classify_point(germ, &p).is_ok(), rank < 2);
    }
}
