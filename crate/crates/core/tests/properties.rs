use std::cmp::Ordering;
use std::collections::BTreeSet;

use proptest::prelude::*;

use nrgit::binary_forms::{
    central_divisor, classify_h, classify_sl2, h_move_root_to_zero, interior_wall_s, sequiv_witness, Divisor, LinParam,
    RootSlot,
};
use nrgit::envelope::{
    group_status, point_polytope, restrict_to_x, table1, torus_case_status, torus_status_of, unipotent_status,
    EnvParams, EnvPoint,
};
use nrgit::oracle::{
    caratheodory_contains_origin, diff_report, enumerate_profiles, move_set, unipotent_diff_report,
    worst_case_unipotent, Configuration, MoveGroup,
};
use nrgit::polytope::{contains_origin, convex_hull, int, AffineN, HullMembership, Rational, Weight2, WeightSet};
use nrgit::vgit::{chamber_profile, walls};
use nrgit::{Exec, Status};

fn divisor() -> impl Strategy<Value = Divisor> {
    (1u32..=7).prop_flat_map(|n| {
        let profiles = enumerate_profiles(n).unwrap().profiles;
        (0..profiles.len()).prop_map(move |i| profiles[i].clone())
    })
}

fn lin() -> impl Strategy<Value = LinParam> {
    (1i64..=6, -12i64..=24).prop_map(|(m, r)| LinParam::new(m, r).unwrap())
}

fn env_point() -> impl Strategy<Value = EnvPoint> {
    divisor().prop_flat_map(|d| {
        let pts = EnvPoint::all_over(&d);
        (0..pts.len()).prop_map(move |i| pts[i].clone())
    })
}

fn small_weights() -> impl Strategy<Value = Vec<Weight2>> {
    prop::collection::vec((-4i64..=4, -4i64..=4), 1..7)
        .prop_map(|v| v.into_iter().map(|(x, y)| Weight2::from_ints(x, y)).collect())
}

proptest! {
    #[test]
    fn classify_h_is_scale_invariant(d in divisor(), p in lin(), k in 1i64..=5) {
        prop_assert_eq!(classify_h(&d, &p), classify_h(&d, &p.scaled(k).unwrap()));
    }

    #[test]
    fn classify_h_is_invariant_under_translations(d in divisor(), p in lin()) {
        let before = classify_h(&d, &p);
        for i in 0..d.generic().len() {
            let moved = h_move_root_to_zero(&d, RootSlot::Generic(i)).unwrap();
            prop_assert_eq!(classify_h(&moved, &p), before);
        }
    }

    #[test]
    fn zero_slope_matches_sl2_at_semistable_level(d in divisor(), m in 1i64..=5) {
        let p = LinParam::new(m, 0).unwrap();
        let h = classify_h(&d, &p);
        prop_assert!(!h.is_stable());
        prop_assert_eq!(h.is_semistable(), classify_sl2(&d).is_semistable());
    }

    #[test]
    fn stability_weakens_as_slope_leaves_the_chamber(d in divisor(), m in 1i64..=4) {
        // past τ = n nothing is semistable, at τ < 0 nothing is
        let n = d.n() as i64;
        prop_assert_eq!(classify_h(&d, &LinParam::new(m, m * n + 1).unwrap()), Status::Unstable);
        prop_assert_eq!(classify_h(&d, &LinParam::new(m, -1).unwrap()), Status::Unstable);
    }

    #[test]
    fn polytope_engine_agrees_with_case_analysis(pt in env_point(), p in lin()) {
        let params = EnvParams::new(pt.divisor().n(), p).unwrap();
        prop_assert_eq!(torus_status_of(&pt, &params).unwrap(), torus_case_status(&pt, &params));
    }

    #[test]
    fn polytope_extremes_cover_all_rows(pt in env_point(), p in lin()) {
        // hull of the extreme rows equals the hull of every row i in [a, n − b]
        let params = EnvParams::new(pt.divisor().n(), p).unwrap();
        let (a, b, n) = (pt.divisor().mult_inf(), pt.divisor().mult_zero(), pt.divisor().n());
        let support = pt.v_support();
        let rows: Vec<Weight2> = table1(&params)
            .into_iter()
            .filter(|row| support.contains(row.family) && row.i >= a && row.i <= n - b)
            .map(|row| row.weight)
            .collect();
        let via_rows = convex_hull(&rows);
        let via_polytope = convex_hull(point_polytope(&pt, &params).unwrap().points());
        prop_assert_eq!(via_rows, via_polytope);
    }

    #[test]
    fn rescaling_m_r_and_n_preserves_concrete_status(pt in env_point(), p in lin(), k in 2i64..=4, big in 40i64..=200) {
        let params = EnvParams::new(pt.divisor().n(), p).unwrap();
        let scaled = EnvParams::new(pt.divisor().n(), p.scaled(k).unwrap()).unwrap();
        let poly = point_polytope(&pt, &params).unwrap().eval_at(&int(big)).unwrap();
        let poly_k = point_polytope(&pt, &scaled).unwrap().eval_at(&int(k * big)).unwrap();
        prop_assert_eq!(contains_origin(&poly).unwrap(), contains_origin(&poly_k).unwrap());
    }

    #[test]
    fn moebius_images_stay_in_the_move_set(pt in env_point(), g in (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)) {
        let (a, b, c, d) = g;
        prop_assume!(a * d - b * c != 0);
        let cfg = Configuration::from_point(&pt).apply([a, b, c, d]).unwrap();
        let moves = move_set(&pt, MoveGroup::FullEnvelopeGroup);
        prop_assert!(moves.moves.contains(&cfg.placement()));
    }

    #[test]
    fn borel_images_stay_in_the_move_set(d in divisor(), g in (1i64..=3, -3i64..=3, 1i64..=3)) {
        let (a, b, dd) = g;
        let x = restrict_to_x(&d);
        let cfg = Configuration::from_point(&x).apply([a, b, 0, dd]).unwrap();
        prop_assert!(move_set(&x, MoveGroup::Borel).moves.contains(&cfg.placement()));
    }

    #[test]
    fn affine_order_matches_large_evaluation(a in -50i64..=50, b in -50i64..=50, c in -50i64..=50, d in -50i64..=50) {
        let (u, v) = (AffineN::from_ints(a, b), AffineN::from_ints(c, d));
        let big = int(1000);
        let (eu, ev) = (u.eval_at(&big).unwrap(), v.eval_at(&big).unwrap());
        prop_assert_eq!(u.cmp(&v), eu.cmp(&ev));
    }

    #[test]
    fn hull_membership_ignores_order_and_duplicates(pts in small_weights(), seed in any::<u64>()) {
        let base = contains_origin(&WeightSet::new(pts.clone())).unwrap();
        let mut shuffled = pts.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        shuffled.reverse();
        shuffled.push(pts[(seed as usize / 7) % len].clone());
        prop_assert_eq!(contains_origin(&WeightSet::new(shuffled)).unwrap(), base);
    }

    #[test]
    fn hull_and_caratheodory_agree(pts in small_weights()) {
        let set = WeightSet::new(pts);
        prop_assert_eq!(contains_origin(&set).unwrap(), caratheodory_contains_origin(&set).unwrap());
    }

    #[test]
    fn unipotent_closed_form_matches_oracle(pt in env_point()) {
        prop_assert_eq!(unipotent_status(&pt), worst_case_unipotent(&pt).unwrap());
    }

    #[test]
    fn group_status_never_exceeds_torus_status(pt in env_point(), p in lin()) {
        let params = EnvParams::new(pt.divisor().n(), p).unwrap();
        prop_assert!(group_status(&pt, &params) <= torus_case_status(&pt, &params));
    }
}

#[test]
fn chamber_profiles_are_constant_inside_chambers() {
    for n in 1..=8u32 {
        for piece in walls(n).unwrap().into_iter().filter(|w| !w.is_wall()) {
            let mid = piece.midpoint();
            let reference = chamber_profile(n, &mid).unwrap();
            let lo = piece.lo.clone();
            for frac in [1i64, 3, 5] {
                let tau = &lo + (&mid - &lo) * nrgit::polytope::rat(frac, 3);
                if !piece.contains(&tau) {
                    continue;
                }
                let here = chamber_profile(n, &tau).unwrap();
                assert_eq!(here.stable_profiles, reference.stable_profiles, "n={n} τ={tau}");
                assert_eq!(here.semistable_profiles, reference.semistable_profiles, "n={n} τ={tau}");
            }
        }
    }
}

#[test]
fn chamber_semistable_loci_sit_inside_adjacent_walls() {
    for n in 1..=8u32 {
        let profiles = enumerate_profiles(n).unwrap().profiles;
        let semistable = |tau: &Rational| -> BTreeSet<String> {
            let p = LinParam::from_tau(tau).unwrap();
            profiles.iter().filter(|d| classify_h(d, &p).is_semistable()).map(|d| d.profile_string()).collect()
        };
        let pieces = walls(n).unwrap();
        for (i, piece) in pieces.iter().enumerate().filter(|(_, w)| !w.is_wall()) {
            let inside = semistable(&piece.midpoint());
            for j in [i.wrapping_sub(1), i + 1] {
                if let Some(wall) = pieces.get(j) {
                    assert!(inside.is_subset(&semistable(&wall.lo)), "n={n} chamber {piece} wall {}", wall.lo);
                }
            }
        }
    }
}

#[test]
fn sequiv_intermediates_stay_semistable() {
    let mut witnessed = 0;
    for n in 1..=9u32 {
        for tau in 1..n as i64 {
            let p = LinParam::new(1, tau).unwrap();
            if interior_wall_s(n, &p).is_none() {
                continue;
            }
            let central = central_divisor(n, &p).unwrap();
            for d in enumerate_profiles(n).unwrap().profiles {
                if classify_h(&d, &p) != Status::StrictlySemistable {
                    continue;
                }
                let steps = sequiv_witness(&d, &p).unwrap();
                for step in &steps {
                    assert!(classify_h(&step.result, &p).is_semistable(), "{d} at τ={tau}: {:?}", step);
                }
                assert_eq!(steps.last().map_or(&d, |s| &s.result), &central);
                witnessed += 1;
            }
        }
    }
    assert!(witnessed > 0);
}

#[test]
fn sequential_and_parallel_reports_match() {
    for (n, m, r) in [(4u32, 1i64, 2i64), (5, 2, 3), (6, 1, -1)] {
        let p = LinParam::new(m, r).unwrap();
        assert_eq!(diff_report(n, &p, Exec::Sequential).unwrap(), diff_report(n, &p, Exec::Parallel).unwrap());
    }
    assert_eq!(unipotent_diff_report(4, Exec::Sequential).unwrap(), unipotent_diff_report(4, Exec::Parallel).unwrap());
}

#[test]
fn affine_ordering_is_lexicographic() {
    let small_slope = AffineN::from_ints(1, 1_000_000);
    let big_slope = AffineN::from_ints(2, -1_000_000);
    assert_eq!(small_slope.cmp(&big_slope), Ordering::Less);
    assert_eq!(
        contains_origin(&WeightSet::new(vec![Weight2::from_ints(1, 0), Weight2::from_ints(-1, 0)])).unwrap(),
        HullMembership::Boundary
    );
}
