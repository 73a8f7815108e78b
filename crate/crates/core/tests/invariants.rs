//! Property-based invariants of the geometric primitives: projective and
//! similarity invariance, metric axioms, and agreement between independent
//! formulas for the same quantity.

mod common;

use num_complex::Complex64;
use polyarea::functional::{area_homogeneous, normalized_area};
use polyarea::polygon::{oriented_area, perimeter, winding_number, Polygon, StarSpec};
use polyarea::projective::{
    chart_at, fubini_study_distance, normalize, polygon_to_edgeword, EdgeWord,
};
use proptest::prelude::*;

fn complex_strategy() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn word_strategy(n: usize) -> impl Strategy<Value = EdgeWord> {
    prop::collection::vec(complex_strategy(), n - 1)
        .prop_filter_map("smooth edge word", |u| {
            EdgeWord::new(u).ok().filter(|e| e.is_smooth_point())
        })
}

fn polygon_strategy(n: usize) -> impl Strategy<Value = Polygon> {
    prop::collection::vec(complex_strategy(), n)
        .prop_filter_map("non-degenerate polygon", |v| {
            let p = Polygon::new(v).ok()?;
            let scale = perimeter(&p);
            let min_edge = (0..p.len()).map(|i| p.edge(i).norm()).fold(f64::INFINITY, f64::min);
            (min_edge > 1e-6 * scale).then_some(p)
        })
}

proptest! {
    /// The normalized area only depends on the projective class: scaling the
    /// edge word by any nonzero complex number leaves it unchanged.
    #[test]
    fn normalized_area_is_scale_invariant(
        e in word_strategy(6),
        lambda in complex_strategy().prop_filter("nonzero", |z| z.norm() > 1e-3),
    ) {
        let a = normalized_area(&e).unwrap().normalized;
        let b = normalized_area(&e.scaled(lambda)).unwrap().normalized;
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    /// The prefix-sum area of an edge word equals the shoelace area of the
    /// polygon the word traces out.
    #[test]
    fn homogeneous_area_matches_shoelace(p in polygon_strategy(7)) {
        let e = polygon_to_edgeword(&p).unwrap();
        let a = area_homogeneous(&e);
        let b = oriented_area(&p);
        prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
    }

    /// Area and perimeter are invariant under rotation and translation;
    /// reflection flips the area's sign and keeps the perimeter.
    #[test]
    fn similarity_behaviour_of_area_and_perimeter(
        p in polygon_strategy(5),
        angle in 0.0f64..std::f64::consts::TAU,
        shift in complex_strategy(),
    ) {
        let moved = p.rotated(angle).translated(shift);
        let scale = perimeter(&p);
        prop_assert!((oriented_area(&moved) - oriented_area(&p)).abs() <= 1e-12 * scale * scale);
        prop_assert!((perimeter(&moved) - perimeter(&p)).abs() <= 1e-12 * scale);
        let mirrored = p.reflected();
        prop_assert!((oriented_area(&mirrored) + oriented_area(&p)).abs() <= 1e-12 * scale * scale);
        prop_assert!((perimeter(&mirrored) - perimeter(&p)).abs() <= 1e-12 * scale);
    }

    /// The Fubini-Study distance is a metric: symmetric, zero on a class,
    /// and subadditive along triples.
    #[test]
    fn fubini_study_is_a_metric(
        a in word_strategy(5),
        b in word_strategy(5),
        c in word_strategy(5),
        lambda in complex_strategy().prop_filter("nonzero", |z| z.norm() > 1e-3),
    ) {
        let dab = fubini_study_distance(&a, &b);
        let dba = fubini_study_distance(&b, &a);
        prop_assert!((dab - dba).abs() <= 1e-12);
        prop_assert!(fubini_study_distance(&a, &a.scaled(lambda)) <= 1e-7);
        let dac = fubini_study_distance(&a, &c);
        let dcb = fubini_study_distance(&c, &b);
        prop_assert!(dab <= dac + dcb + 1e-12);
    }

    /// Normalization is idempotent and chart round-trips reproduce the class.
    #[test]
    fn normalize_and_chart_round_trip(e in word_strategy(6)) {
        // The angular distance resolves rounding noise only to sqrt(eps).
        let n1 = normalize(&e);
        let n2 = normalize(&n1);
        prop_assert!(fubini_study_distance(&n1, &n2) <= 1e-7);
        let chart = chart_at(&n1);
        let back = polyarea::projective::embed(&chart);
        prop_assert!(fubini_study_distance(&e, &back) <= 1e-7);
    }

    /// The analytic chart gradient of the normalized area agrees with a
    /// value-only central-difference probe.
    #[test]
    fn chart_gradient_matches_difference_quotients(e in word_strategy(6)) {
        let chart = chart_at(&normalize(&e));
        let min_edge = polyarea::projective::embed(&chart)
            .full_edges()
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min);
        prop_assume!(min_edge > 1e-2);
        let analytic = polyarea::functional::gradient(&chart).unwrap();
        let value = |coords: &[f64]| {
            let probe = polyarea::projective::ChartPoint {
                n: chart.n,
                pivot: chart.pivot,
                coords: coords.to_vec(),
            };
            polyarea::functional::value_in_chart(&probe)
        };
        let fd = common::fd_gradient(value, &chart.coords, 1e-6);
        let diff: f64 = analytic
            .iter()
            .zip(&fd)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let scale = analytic.iter().map(|g| g * g).sum::<f64>().sqrt().max(1e-3);
        prop_assert!(diff / scale <= 1e-6);
    }
}

/// Winding about the centroid recovers `w` for every star in range.
#[test]
fn star_winding_numbers_round_trip() {
    for n in 4..=12usize {
        for w in 1..=((n - 1) / 2) as i32 {
            for sign in [1, -1] {
                let spec = StarSpec::star(n, sign * w).unwrap();
                let poly = spec.build();
                let got = winding_number(&poly, poly.centroid()).unwrap();
                assert_eq!(got, sign * w, "n={n} w={}", sign * w);
            }
        }
    }
}
