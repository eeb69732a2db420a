mod common;

use proptest::prelude::*;

use hypercover_core::catalog::{catalog, maximal_patterns_within};
use hypercover_core::constructions::merge_lift;
use hypercover_core::solver::{af_lower_bound, min_exact_cover};
use hypercover_core::{
    affine_closure, canonical_form, is_pattern, realize_hyperplane, CubeAutomorphism, Dim, Hyperplane, Pattern, Point,
    PointSet, Rational,
};

fn automorphism(max_n: usize) -> impl Strategy<Value = CubeAutomorphism> {
    (1..=max_n).prop_flat_map(|n| {
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (perm, 0u32..1 << n).prop_map(move |(p, f)| CubeAutomorphism::new(Dim::new(n).unwrap(), p, f).unwrap())
    })
}

fn set_in(d: Dim) -> impl Strategy<Value = PointSet> {
    let full = PointSet::full(d).mask();
    any::<u64>().prop_map(move |m| PointSet::from_mask(d, m & full))
}

fn auto_and_set(max_n: usize) -> impl Strategy<Value = (CubeAutomorphism, PointSet)> {
    automorphism(max_n).prop_flat_map(|a| {
        let d = a.dim();
        (Just(a), set_in(d))
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn hyperplane(max_n: usize) -> impl Strategy<Value = Hyperplane> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(rational(), n), rational()))
        .prop_filter_map("nonzero", |(n, c, o)| Hyperplane::new(Dim::new(n).unwrap(), c, o).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn group_laws(a in automorphism(6), seed in any::<u64>()) {
        let d = a.dim();
        let b = CubeAutomorphism::new(d, (0..d.n()).rev().collect(), (seed as u32) & d.all_coords_mask()).unwrap();
        let ab = a.compose(&b).unwrap();
        let inv = a.inverse();
        for p in d.points() {
            prop_assert_eq!(a.apply(b.apply(p)), ab.apply(p));
            prop_assert_eq!(a.apply(inv.apply(p)), p);
        }
    }

    #[test]
    fn canonical_form_is_invariant((a, s) in auto_and_set(4)) {
        prop_assert_eq!(canonical_form(&a.apply_set(&s).unwrap()).unwrap(), canonical_form(&s).unwrap());
    }

    #[test]
    fn closure_laws(n in 4usize..=5, x in any::<u64>(), y in any::<u64>()) {
        let d = Dim::new(n).unwrap();
        let full = PointSet::full(d).mask();
        // Sparse sets keep the closures interesting.
        let p = PointSet::from_mask(d, x & y & full);
        let q = PointSet::from_mask(d, (x & y | y & !x & x.rotate_left(7)) & full).union(&p);
        prop_assume!(!p.is_empty());
        let cp = affine_closure(&p).unwrap();
        prop_assert!(p.is_subset(&cp));
        prop_assert!(cp.is_subset(&affine_closure(&q).unwrap()));
        prop_assert_eq!(affine_closure(&cp).unwrap(), cp);
    }

    #[test]
    fn closure_agrees_with_rank_oracle(n in 1usize..=5, x in any::<u64>()) {
        let d = Dim::new(n).unwrap();
        let s = PointSet::from_mask(d, x & x.rotate_left(13) & PointSet::full(d).mask());
        prop_assume!(!s.is_empty());
        let pts: Vec<u32> = s.iter().map(|p| p.0).collect();
        let r = common::affine_rank(&pts, n);
        let cl = affine_closure(&s).unwrap();
        for q in d.points() {
            let mut with = pts.clone();
            with.push(q.0);
            prop_assert_eq!(cl.contains(q), common::affine_rank(&with, n) == r);
        }
    }

    #[test]
    fn nonempty_traces_are_patterns(h in hyperplane(5)) {
        let t = h.trace();
        if !t.is_empty() {
            prop_assert!(is_pattern(&t));
        }
    }

    #[test]
    fn transform_commutes_with_trace((a, _) in auto_and_set(5), h in hyperplane(5)) {
        prop_assume!(a.dim() == h.dim());
        let moved = hypercover_core::transform_hyperplane(&a, &h).unwrap();
        prop_assert_eq!(moved.trace(), a.apply_set(&h.trace()).unwrap());
    }

    #[test]
    fn merge_lift_matches_projection(h in hyperplane(4), a in 1usize..=4) {
        let lifted = merge_lift(&h, a).unwrap();
        let m = h.dim().n();
        for y in h.dim().points() {
            // Constant first block equal to y_1.
            let block = if y.coord(0) { (1u32 << a) - 1 } else { 0 };
            let x = Point(block | (y.0 >> 1) << a);
            prop_assert_eq!(lifted.contains(x), h.contains(y));
        }
        prop_assert_eq!(lifted.dim().n(), m + a - 1);
    }

    #[test]
    fn maximal_patterns_are_incomparable_and_inside(n in 2usize..=5, x in any::<u64>()) {
        let d = Dim::new(n).unwrap();
        let b = PointSet::from_mask(d, x & PointSet::full(d).mask());
        prop_assume!(!b.is_empty());
        let ps = maximal_patterns_within(&b).unwrap();
        for (i, p) in ps.iter().enumerate() {
            prop_assert!(p.points().is_subset(&b));
            for q in &ps[i + 1..] {
                prop_assert!(!p.points().is_subset(q.points()) && !q.points().is_subset(p.points()));
            }
        }
        // Every point of B lies in some maximal pattern.
        let union = ps.iter().fold(PointSet::empty(d), |u, p| u.union(p.points()));
        prop_assert_eq!(union, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn solver_is_symmetric_and_above_af((a, s) in auto_and_set(4)) {
        prop_assume!(!s.is_empty());
        let r = min_exact_cover(&s).unwrap();
        prop_assert!(r.certificate.recheck().unwrap().verified);
        prop_assert!(r.size >= af_lower_bound(&s).unwrap());
        let moved = min_exact_cover(&a.apply_set(&s).unwrap()).unwrap();
        prop_assert_eq!(moved.size, r.size);
    }

    #[test]
    fn solver_matches_brute_force_at_n3(x in any::<u8>()) {
        let d = Dim::new(3).unwrap();
        let s = PointSet::from_mask(d, x as u64);
        let pats = common::patterns_oracle(3);
        prop_assert_eq!(min_exact_cover(&s).unwrap().size, common::brute_min_cover(s.complement().mask(), &pats));
    }
}

#[test]
fn every_catalog_pattern_realizes() {
    for n in 1..=4 {
        let d = Dim::new(n).unwrap();
        for p in catalog(d).unwrap().patterns() {
            let h = realize_hyperplane(&p).unwrap();
            assert_eq!(&h.trace(), p.points());
            assert!(Pattern::new(p.points().clone()).is_ok());
        }
    }
}
