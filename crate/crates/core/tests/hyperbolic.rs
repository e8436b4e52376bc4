mod common;

use std::f64::consts::PI;

use kaleido_core::hyperbolic::{
    disjoint_parallels, disk_geodesic_through, distance, geodesic_through, triangle_tiling, uhp_to_disk, DiskPoint,
    HLine, UhpPoint,
};
use kaleido_core::projection::{project, unproject, ExtendedPoint, SpherePoint};
use rand::Rng;

fn random_uhp(rng: &mut impl Rng) -> UhpPoint {
    UhpPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0)).unwrap()
}

fn random_line(rng: &mut impl Rng) -> HLine {
    if rng.gen_bool(0.2) {
        HLine::Vertical { x: rng.gen_range(-2.0..2.0) }
    } else {
        HLine::Semicircle { center: rng.gen_range(-2.0..2.0), radius: rng.gen_range(0.2..3.0) }
    }
}

/// The model change done the long way: lift to the sphere, turn the back half down, project.
fn through_sphere(p: UhpPoint) -> (f64, f64) {
    let s = unproject(ExtendedPoint::finite(p.x(), p.y()));
    let turned = SpherePoint::from_direction(nalgebra::Vector3::new(s.x(), s.z(), -s.y())).unwrap();
    match project(turned) {
        ExtendedPoint::Finite { x, y } => (x, y),
        ExtendedPoint::Infinity => unreachable!(),
    }
}

#[test]
fn spot_distances() {
    let p = |x, y| UhpPoint::new(x, y).unwrap();
    assert!((distance(p(0.0, 4.0), p(0.0, 8.0)) - 2f64.ln()).abs() < 1e-12);
    assert!((distance(p(0.0, 8.0), p(0.0, 16.0)) - 2f64.ln()).abs() < 1e-12);
    assert!((distance(p(-1.0, 1.0), p(1.0, 1.0)) - 2.0 * (1.0 + 2f64.sqrt()).ln()).abs() < 1e-9);
}

#[test]
fn distance_matches_closed_form() {
    let mut rng = common::rng(21);
    for _ in 0..1000 {
        let (a, b) = (random_uhp(&mut rng), random_uhp(&mut rng));
        let d = distance(a, b);
        let oracle = common::uhp_distance_formula((a.x(), a.y()), (b.x(), b.y()));
        assert!((d - oracle).abs() < 1e-9 * (1.0 + oracle), "{a:?} {b:?}");
    }
}

#[test]
fn vertical_case_agrees_with_endpoint_rule() {
    let mut rng = common::rng(22);
    for _ in 0..200 {
        let x = rng.gen_range(-2.0..2.0);
        let a = UhpPoint::new(x, rng.gen_range(0.1..4.0)).unwrap();
        let b = UhpPoint::new(x + 1e-6, rng.gen_range(0.1..4.0)).unwrap();
        let straight = (a.y() / b.y()).ln().abs();
        assert!((distance(a, b) - straight).abs() < 1e-5);
    }
}

#[test]
fn metric_axioms() {
    let mut rng = common::rng(23);
    for _ in 0..1000 {
        let [a, b, c] = [0; 3].map(|_| random_uhp(&mut rng));
        assert_eq!(distance(a, a), 0.0);
        assert!((distance(a, b) - distance(b, a)).abs() < 1e-9);
        assert!(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
    }
}

#[test]
fn model_transfer_matches_sphere_construction() {
    let mut rng = common::rng(24);
    for _ in 0..1000 {
        let p = random_uhp(&mut rng);
        let d = uhp_to_disk(p);
        let (u, v) = through_sphere(p);
        assert!((d.u() - u).abs() < 1e-9 && (d.v() - v).abs() < 1e-9);
        let back = d.to_uhp();
        assert!(
            (back.x() - p.x()).abs() < 1e-12 * (1.0 + p.x().abs()) && (back.y() - p.y()).abs() < 1e-12 * (1.0 + p.y())
        );
    }
}

#[test]
fn distance_survives_model_transfer_and_reflection() {
    let mut rng = common::rng(25);
    for _ in 0..1000 {
        let (a, b) = (random_uhp(&mut rng), random_uhp(&mut rng));
        let d = distance(a, b);
        assert!((a.to_disk().distance(&b.to_disk()) - d).abs() < 1e-9 * (1.0 + d));
        let line = random_line(&mut rng);
        let (ra, rb) = (a.reflect(&line).unwrap(), b.reflect(&line).unwrap());
        assert!((distance(ra, rb) - d).abs() < 1e-9 * (1.0 + d));
    }
}

#[test]
fn reflection_is_an_involution_fixing_its_line() {
    let mut rng = common::rng(26);
    for _ in 0..500 {
        let p = random_uhp(&mut rng);
        let line = random_line(&mut rng);
        let twice = p.reflect(&line).unwrap().reflect(&line).unwrap();
        assert!(
            (twice.x() - p.x()).abs() < 1e-12 * (1.0 + p.x().abs())
                && (twice.y() - p.y()).abs() < 1e-12 * (1.0 + p.y())
        );
        let on_line = match line {
            HLine::Vertical { x } => UhpPoint::new(x, p.y()).unwrap(),
            HLine::Semicircle { center, radius } => {
                let t: f64 = rng.gen_range(0.1..PI - 0.1);
                UhpPoint::new(center + radius * t.cos(), radius * t.sin()).unwrap()
            }
            _ => unreachable!(),
        };
        let fixed = on_line.reflect(&line).unwrap();
        assert!((fixed.x() - on_line.x()).abs() < 1e-9 && (fixed.y() - on_line.y()).abs() < 1e-9);
    }
}

#[test]
fn unique_geodesic_through_two_points() {
    let mut rng = common::rng(27);
    for _ in 0..500 {
        let (a, b) = (random_uhp(&mut rng), random_uhp(&mut rng));
        let l = geodesic_through(a, b).unwrap();
        let m = geodesic_through(b, a).unwrap();
        match (l, m) {
            (HLine::Semicircle { center: c1, radius: r1 }, HLine::Semicircle { center: c2, radius: r2 }) => {
                assert!((c1 - c2).abs() < 1e-9 * (1.0 + c1.abs()) && (r1 - r2).abs() < 1e-9 * (1.0 + r1));
            }
            (l, m) => assert_eq!(l, m),
        }
        assert!(l.contains([a.x(), a.y()]));
        assert!(l.contains([b.x(), b.y()]));
    }
}

#[test]
fn two_lines_meet_at_most_once() {
    let mut rng = common::rng(28);
    for _ in 0..1000 {
        let (l, m) = (random_line(&mut rng), random_line(&mut rng));
        if let Some(p) = l.intersection(&m) {
            assert!(l.contains([p.x(), p.y()]) && m.contains([p.x(), p.y()]));
            assert_eq!(
                m.intersection(&l).map(|q| ((q.x() - p.x()).abs() < 1e-9, (q.y() - p.y()).abs() < 1e-9)),
                Some((true, true))
            );
        }
    }
}

#[test]
fn parallels_miss_the_line() {
    let line = HLine::Semicircle { center: 0.0, radius: 1.0 };
    let p = UhpPoint::new(0.0, 2.0).unwrap();
    let ps = disjoint_parallels(&line, p, 3).unwrap();
    assert_eq!(ps.len(), 3);
    for (i, a) in ps.iter().enumerate() {
        assert!(a.contains([0.0, 2.0]));
        // sample the candidate densely and check every sample stays off the unit semicircle side
        if let HLine::Semicircle { center, radius } = a {
            for k in 1..2000 {
                let t = PI * k as f64 / 2000.0;
                let (x, y) = (center + radius * t.cos(), radius * t.sin());
                assert!(x.hypot(y) > 1.0, "line {i} enters the disk at ({x}, {y})");
            }
        }
        for b in &ps[i + 1..] {
            assert_ne!(a, b);
        }
    }
}

#[test]
fn tiling_triangles_are_congruent() {
    let tiles = triangle_tiling(2, 3, 7, 3).unwrap();
    let mut reference = tiles[0].side_lengths();
    reference.sort_by(f64::total_cmp);
    for t in &tiles {
        let mut sides = t.side_lengths();
        sides.sort_by(f64::total_cmp);
        for (s, r) in sides.iter().zip(&reference) {
            assert!((s - r).abs() < 1e-6);
        }
        let mut angles = t.angles();
        angles.sort_by(f64::total_cmp);
        for (a, e) in angles.iter().zip([PI / 7.0, PI / 3.0, PI / 2.0]) {
            assert!((a - e).abs() < 1e-6);
        }
    }
}

#[test]
fn tile_angles_agree_with_law_of_cosines() {
    for (p, q, r) in [(2, 3, 7), (3, 3, 4), (2, 4, 5), (4, 4, 4)] {
        let t = &triangle_tiling(p, q, r, 0).unwrap()[0];
        let [a, b, c] = t.side_lengths();
        let from_sides =
            [common::angle_from_sides(a, b, c), common::angle_from_sides(b, c, a), common::angle_from_sides(c, a, b)];
        for ((x, y), e) in t.angles().iter().zip(from_sides).zip([p, q, r]) {
            assert!((x - y).abs() < 1e-9 && (x - PI / e as f64).abs() < 1e-9, "({p},{q},{r})");
        }
    }
}

#[test]
fn tile_counts_grow_with_depth() {
    let counts: Vec<usize> = (0..=5).map(|d| triangle_tiling(2, 3, 7, d).unwrap().len()).collect();
    assert_eq!(&counts[..2], &[1, 4]);
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn disk_geodesics_are_orthogonal_to_the_boundary() {
    let mut rng = common::rng(29);
    for _ in 0..500 {
        let a = random_uhp(&mut rng).to_disk();
        let b = random_uhp(&mut rng).to_disk();
        match disk_geodesic_through(a, b).unwrap() {
            HLine::Arc { cx, cy, radius } => {
                assert!((cx * cx + cy * cy - 1.0 - radius * radius).abs() < 1e-9 * (1.0 + radius * radius))
            }
            HLine::Diameter { .. } => {}
            other => panic!("{other:?}"),
        }
    }
    let origin = DiskPoint::ORIGIN;
    let x = DiskPoint::new(0.5, 0.0).unwrap();
    assert_eq!(disk_geodesic_through(origin, x).unwrap(), HLine::Diameter { angle: 0.0 });
}
