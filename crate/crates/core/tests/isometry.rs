mod common;

use kaleido_core::chi::EUCLIDEAN_SIGNATURES;
use kaleido_core::isometry::{
    group_for, orbit_isometries, replicate, Isometry2, Orientation, Polyline, Viewport, WallpaperGroup,
};
use kaleido_core::notation::OrbifoldSignature;
use nalgebra::{Matrix2, Vector2};
use rand::Rng;

fn group(s: &str, scale: f64) -> WallpaperGroup {
    group_for(&OrbifoldSignature::parse(s).unwrap(), scale).unwrap()
}

/// Group elements `t ∘ r` for coset representatives `r` and lattice vectors `t` with
/// coefficients in `-range..=range`.
fn elements(g: &WallpaperGroup, range: i64) -> Vec<Isometry2> {
    let [a, b] = g.lattice;
    let mut out = Vec::new();
    for r in g.coset_representatives() {
        for m in -range..=range {
            for n in -range..=range {
                out.push(Isometry2::translation(a * m as f64 + b * n as f64).compose(r));
            }
        }
    }
    out
}

fn wrap(x: f64) -> f64 {
    let f = x - x.floor();
    if f > 1.0 - 1e-7 {
        0.0
    } else {
        f
    }
}

fn round(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

fn point_key(g: &WallpaperGroup, p: Vector2<f64>) -> (i64, i64) {
    let f = g.to_lattice_coords(p);
    (round(wrap(f.x)), round(wrap(f.y)))
}

/// Smallest key over the orbit of `p`.
fn orbit_key(g: &WallpaperGroup, p: Vector2<f64>) -> (i64, i64) {
    g.coset_representatives().iter().map(|r| point_key(g, r.apply(p))).min().unwrap()
}

fn in_lattice(g: &WallpaperGroup, v: Vector2<f64>) -> bool {
    let f = g.to_lattice_coords(v);
    (f.x - f.x.round()).abs() < 1e-7 && (f.y - f.y.round()).abs() < 1e-7
}

struct Features {
    cones: Vec<u32>,
    corners: Vec<u32>,
    mirror_classes: usize,
    orientable: bool,
}

/// Reads the orbifold's features off the concrete group: rotation centres up to the group
/// action, split into cone points and corners by whether a mirror passes through them, and
/// mirror lines up to the group action.
fn recover(g: &WallpaperGroup) -> Features {
    let els = elements(g, 2);
    let mut centres: Vec<((i64, i64), Vector2<f64>)> = Vec::new();
    for e in &els {
        if e.orientation == Orientation::Preserving && !e.is_translation(1e-9) {
            let c = (Matrix2::identity() - e.linear).try_inverse().unwrap() * e.translation;
            let key = orbit_key(g, c);
            if !centres.iter().any(|(k, _)| *k == key) {
                centres.push((key, c));
            }
        }
    }
    let mut cones = Vec::new();
    let mut corners = Vec::new();
    for (_, c) in &centres {
        let stabiliser: Vec<&Isometry2> =
            g.coset_representatives().iter().filter(|r| in_lattice(g, r.apply(*c) - c)).collect();
        let rotations = stabiliser.iter().filter(|r| r.orientation == Orientation::Preserving).count() as u32;
        if stabiliser.iter().any(|r| r.orientation == Orientation::Reversing) {
            corners.push(rotations);
        } else {
            cones.push(rotations);
        }
    }
    cones.sort_unstable();
    corners.sort_unstable();

    let [a, b] = g.lattice;
    let normalise = |n: Vector2<f64>, h: f64| {
        if n.y < -1e-12 || (n.y.abs() <= 1e-12 && n.x < 0.0) {
            (-n, -h)
        } else {
            (n, h)
        }
    };
    let line_key = |n: Vector2<f64>, h: f64| {
        let period = (-6..=6i64)
            .flat_map(|m| (-6..=6i64).map(move |k| (a * m as f64 + b * k as f64).dot(&n).abs()))
            .filter(|x| *x > 1e-9)
            .fold(f64::INFINITY, f64::min);
        (round(n.y.atan2(n.x)), round(wrap(h / period)))
    };
    let mut mirror_keys: Vec<(i64, i64)> = Vec::new();
    for e in &els {
        if e.orientation == Orientation::Reversing && e.compose(e).approx_eq(&Isometry2::identity(), 1e-9) {
            let diff = e.linear - Matrix2::identity();
            let col = if diff.column(0).norm() > diff.column(1).norm() { diff.column(0) } else { diff.column(1) };
            let n = Vector2::new(col[0], col[1]).normalize();
            let h = n.dot(&e.translation) / 2.0;
            let key = g
                .coset_representatives()
                .iter()
                .map(|r| {
                    let m = r.linear * n;
                    let (m, h2) = normalise(m, h + m.dot(&r.translation));
                    line_key(m, h2)
                })
                .min()
                .unwrap();
            if !mirror_keys.contains(&key) {
                mirror_keys.push(key);
            }
        }
    }
    Features { cones, corners, mirror_classes: mirror_keys.len(), orientable: !g.has_reversing_elements() }
}

#[test]
fn features_match_signatures() {
    for s in EUCLIDEAN_SIGNATURES {
        let sig = OrbifoldSignature::parse(s).unwrap();
        let f = recover(&group(s, 1.0));
        let mut cones = sig.cone_orders.clone();
        cones.sort_unstable();
        let mut corners: Vec<u32> = sig.corner_orders().collect();
        corners.sort_unstable();
        assert_eq!(f.cones, cones, "{s}: cone points");
        assert_eq!(f.corners, corners, "{s}: corners");
        assert_eq!(f.orientable, sig.is_orientable(), "{s}: orientability");
        assert_eq!(f.mirror_classes > 0, !sig.boundaries.is_empty(), "{s}: mirrors");
        if corners.is_empty() {
            assert_eq!(f.mirror_classes, sig.boundaries.len(), "{s}: mirror lines");
        }
    }
}

#[test]
fn point_group_orders() {
    let expected = [
        ("o", 1),
        ("2222", 2),
        ("333", 3),
        ("442", 4),
        ("632", 6),
        ("*2222", 4),
        ("*333", 6),
        ("*442", 8),
        ("*632", 12),
        ("4*2", 8),
        ("3*3", 6),
        ("22*", 4),
        ("2*22", 4),
        ("**", 2),
        ("*x", 2),
        ("22x", 4),
        ("xx", 2),
    ];
    for (s, k) in expected {
        let g = group(s, 1.0);
        assert_eq!(g.point_group_order, k, "{s}");
        let rotation = g.coset_representatives().iter().filter(|r| r.orientation == Orientation::Preserving).count();
        assert_eq!(rotation as u32, g.signature.max_rotation_order(), "{s}: rotation subgroup");
    }
}

#[test]
fn cosets_are_closed_and_preserve_the_lattice() {
    let mut rng = common::rng(7);
    for s in EUCLIDEAN_SIGNATURES {
        let g = group(s, 1.3);
        let reps = g.coset_representatives();
        let [a, b] = g.lattice;
        for r in reps {
            assert!(in_lattice(&g, r.linear * a) && in_lattice(&g, r.linear * b), "{s}");
        }
        let els = elements(&g, 1);
        for _ in 0..50 {
            let x = els[rng.gen_range(0..els.len())];
            let y = els[rng.gen_range(0..els.len())];
            for product in [x.compose(&y), x.inverse()] {
                let found = reps.iter().any(|r| {
                    (r.linear - product.linear).abs().max() < 1e-9
                        && in_lattice(&g, product.translation - r.translation)
                });
                assert!(found, "{s}: product left the group");
            }
        }
    }
}

#[test]
fn generic_dot_has_one_image_per_coset_in_each_cell() {
    for s in EUCLIDEAN_SIGNATURES {
        let scale = 1.7;
        let g = group(s, scale);
        let dot = Polyline::new(vec![[0.1234 * scale, 0.0517 * scale]]);
        let view = Viewport::new([-2.0 * scale, -2.0 * scale], [3.0 * scale, 3.0 * scale]).unwrap();
        let images = replicate(&g, &[dot], &view).unwrap();
        let in_cell = images
            .iter()
            .filter(|p| {
                let f = g.to_lattice_coords(Vector2::new(p.points[0][0], p.points[0][1]));
                (0.0..1.0).contains(&f.x) && (0.0..1.0).contains(&f.y)
            })
            .count();
        assert_eq!(in_cell, g.point_group_order, "{s}");
    }
}

#[test]
fn replicated_dots_are_closed_under_generators() {
    for s in EUCLIDEAN_SIGNATURES {
        let g = group(s, 1.0);
        let dot = Polyline::new(vec![[0.31, 0.17]]);
        let view = Viewport::new([-3.0, -3.0], [3.0, 3.0]).unwrap();
        let points: Vec<Vector2<f64>> = replicate(&g, &[dot], &view)
            .unwrap()
            .iter()
            .map(|p| Vector2::new(p.points[0][0], p.points[0][1]))
            .collect();
        let inner = Viewport::new([-1.5, -1.5], [1.5, 1.5]).unwrap();
        for gen in &g.generators {
            for p in points.iter().filter(|p| inner.contains(**p)) {
                let q = gen.apply(*p);
                assert!(points.iter().any(|r| (r - q).norm() < 1e-9), "{s}: image of {p} missing");
            }
        }
    }
}

#[test]
fn torus_group_only_translates() {
    let g = group("o", 1.0);
    let stroke = Polyline::new(vec![[0.2, 0.2], [0.5, 0.4], [0.6, 0.8]]);
    let view = Viewport::new([0.0, 0.0], [1.0, 1.0]).unwrap();
    let out = replicate(&g, std::slice::from_ref(&stroke), &view).unwrap();
    assert!(out.contains(&stroke));
    for h in orbit_isometries(&g, &view).unwrap() {
        assert!(h.is_translation(0.0));
    }
}

#[test]
fn replication_is_deterministic() {
    let g = group("*442", 1.0);
    let stroke = Polyline::new(vec![[0.1, 0.1], [0.4, 0.2]]);
    let view = Viewport::new([-1.0, -1.0], [2.0, 2.0]).unwrap();
    assert_eq!(replicate(&g, std::slice::from_ref(&stroke), &view).unwrap(), replicate(&g, &[stroke], &view).unwrap());
}

#[test]
fn orbit_elements_are_distinct() {
    let view = Viewport::new([-1.3, -0.7], [2.1, 1.9]).unwrap();
    for s in EUCLIDEAN_SIGNATURES {
        let g = group(s, 1.0);
        let orbit = orbit_isometries(&g, &view).unwrap();
        for (i, x) in orbit.iter().enumerate() {
            assert!(orbit[i + 1..].iter().all(|y| !x.approx_eq(y, 1e-6)), "{s}");
        }
    }
}
