//! Independent reference implementations used to check the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use kaleido_core::knots::KnotDiagram;
use nalgebra::{Matrix3, Vector3};
use num_rational::Ratio;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// signatures

fn cone_price(n: i64) -> Ratio<i64> {
    Ratio::new(n - 1, n)
}

fn corner_price(n: i64) -> Ratio<i64> {
    Ratio::new(n - 1, 2 * n)
}

fn order_text(n: i64) -> String {
    if n < 10 {
        n.to_string()
    } else {
        format!("({n})")
    }
}

/// Lexicographically greatest reading of a cyclic corner list, in either direction.
fn best_reading(corners: &[i64]) -> Vec<i64> {
    let k = corners.len();
    let mut best = corners.to_vec();
    for start in 0..k {
        let forward: Vec<i64> = (0..k).map(|i| corners[(start + i) % k]).collect();
        let backward: Vec<i64> = (0..k).map(|i| corners[(start + k - i) % k]).collect();
        best = best.max(forward).max(backward);
    }
    best
}

fn multisets(max_len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().copied().unwrap_or(hi);
            for v in (lo..=start).rev() {
                let mut e: Vec<i64> = m.clone();
                e.push(v);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn sequences(max_len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &layer {
            for v in lo..=hi {
                let mut e = s.clone();
                e.push(v);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every good signature with positive Euler characteristic and orders at most `max_order`,
/// by pricing a generous box of part lists.
pub fn spherical_oracle(max_order: i64) -> BTreeSet<String> {
    let two = Ratio::from_integer(2);
    priced_oracle(max_order, two, |price| price < two)
}

/// Good signatures costing at most `max_price` whose price satisfies `keep`, searched over
/// at most one handle, two cross-caps, four cones, two mirrors and four corners.
pub fn priced_oracle(max_order: i64, max_price: Ratio<i64>, keep: impl Fn(Ratio<i64>) -> bool) -> BTreeSet<String> {
    let one = Ratio::from_integer(1);
    let cone_lists: Vec<(Ratio<i64>, Vec<i64>)> = multisets(4, 2, max_order)
        .into_iter()
        .map(|c| (c.iter().map(|&n| cone_price(n)).sum(), c))
        .filter(|(p, _)| *p <= max_price)
        .collect();
    let mut mirror_lists: Vec<(Ratio<i64>, Vec<Vec<i64>>)> = vec![(Ratio::from_integer(0), vec![])];
    mirror_lists.push((Ratio::from_integer(2), vec![vec![], vec![]]));
    for corners in sequences(4, 2, max_order) {
        let price = one + corners.iter().map(|&n| corner_price(n)).sum::<Ratio<i64>>();
        if price <= max_price {
            mirror_lists.push((price, vec![corners]));
        }
    }
    let mut found = BTreeSet::new();
    for handles in 0..=1i64 {
        for crosscaps in 0..=2i64 {
            if handles > 0 && crosscaps > 0 {
                continue;
            }
            let base = Ratio::from_integer(2 * handles + crosscaps);
            for (cone_cost, cones) in &cone_lists {
                for (mirror_cost, boundaries) in &mirror_lists {
                    let price = base + cone_cost + mirror_cost;
                    if price > max_price || !keep(price) {
                        continue;
                    }
                    if handles == 0 && crosscaps == 0 {
                        let bad = match (cones.as_slice(), boundaries.as_slice()) {
                            ([_], []) => true,
                            ([a, b], []) => a != b,
                            ([], [b]) => b.len() == 1 || (b.len() == 2 && b[0] != b[1]),
                            _ => false,
                        };
                        if bad {
                            continue;
                        }
                    }
                    let mut text = "o".repeat(handles as usize);
                    for &c in cones {
                        text += &order_text(c);
                    }
                    for b in boundaries {
                        text.push('*');
                        for c in best_reading(b) {
                            text += &order_text(c);
                        }
                    }
                    text += &"x".repeat(crosscaps as usize);
                    found.insert(text);
                }
            }
        }
    }
    found
}

// ---------------------------------------------------------------------------
// knots

/// Count of proper arc 3-colourings by trying all `3^arcs` of them. Arcs are cut at
/// under-passages, found from the diagram's over/under data alone.
pub fn brute_force_tricolor(d: &KnotDiagram) -> u64 {
    let passages = d.code().passages();
    let m = passages.len();
    if m == 0 {
        return 3;
    }
    let mut first_seen = vec![None; m / 2 + 1];
    let mut over = vec![false; m];
    for (k, p) in passages.iter().enumerate() {
        let label = p.label as usize;
        let first = first_seen[label].is_none();
        if first {
            first_seen[label] = Some(k);
        }
        over[k] = d.over_first()[label - 1] == first;
    }
    // arc number of the strand leaving each passage
    let start = (0..m).find(|&k| !over[k]).expect("some under-passage");
    let mut arc_out = vec![0usize; m];
    let mut arcs = 0;
    for t in 0..m {
        let k = (start + t) % m;
        if !over[k] {
            arcs += 1;
        }
        arc_out[k] = arcs - 1;
    }
    let mut constraints = Vec::new();
    for label in 1..=m / 2 {
        let ks: Vec<usize> = (0..m).filter(|&k| passages[k].label as usize == label).collect();
        let (o, u) = if over[ks[0]] { (ks[0], ks[1]) } else { (ks[1], ks[0]) };
        constraints.push((arc_out[o], arc_out[(u + m - 1) % m], arc_out[u]));
    }
    let mut count = 0;
    let mut colours = vec![0u8; arcs];
    loop {
        let ok = constraints.iter().all(|&(o, a, b)| {
            let (x, y, z) = (colours[o], colours[a], colours[b]);
            (x == y && y == z) || (x != y && y != z && x != z)
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        while i < arcs && colours[i] == 2 {
            colours[i] = 0;
            i += 1;
        }
        if i == arcs {
            break;
        }
        colours[i] += 1;
    }
    count
}

/// Signed Gauss codes for every labelled double-occurrence word on `n` crossings with first
/// visits in increasing label order, and every sign vector.
pub fn all_signed_words(n: usize) -> Vec<String> {
    fn words(n: usize, prefix: &mut Vec<u32>, used: &mut Vec<u8>, next_new: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == 2 * n {
            out.push(prefix.clone());
            return;
        }
        for label in 1..=n as u32 {
            let u = used[label as usize];
            let allowed = (u == 0 && label == next_new) || u == 1;
            if allowed {
                used[label as usize] += 1;
                prefix.push(label);
                words(n, prefix, used, if u == 0 { next_new + 1 } else { next_new }, out);
                prefix.pop();
                used[label as usize] -= 1;
            }
        }
    }
    let mut ws = Vec::new();
    words(n, &mut Vec::new(), &mut vec![0; n + 1], 1, &mut ws);
    let mut out = Vec::new();
    for w in ws {
        for signs in 0u32..1 << n {
            out.push(render_word(&w, signs));
        }
    }
    out
}

fn render_word(word: &[u32], signs: u32) -> String {
    word.iter()
        .map(|&l| format!("{}{}", l, if signs >> (l - 1) & 1 == 0 { '+' } else { '-' }))
        .collect::<Vec<_>>()
        .join(" ")
}

/// A uniformly random signed double-occurrence word on `n` crossings.
pub fn random_signed_word(n: usize, rng: &mut impl Rng) -> String {
    let mut word: Vec<u32> = (1..=n as u32).flat_map(|l| [l, l]).collect();
    for i in (1..word.len()).rev() {
        word.swap(i, rng.gen_range(0..=i));
    }
    // relabel by first appearance
    let mut map = vec![0u32; n + 1];
    let mut next = 1;
    for l in word.iter_mut() {
        if map[*l as usize] == 0 {
            map[*l as usize] = next;
            next += 1;
        }
        *l = map[*l as usize];
    }
    render_word(&word, rng.gen_range(0..1u32 << n))
}

// ---------------------------------------------------------------------------
// plane geometry

/// Algebraic least-squares circle through `points`: centre, radius and the largest distance
/// of a point from the fitted circle.
pub fn fit_circle(points: &[(f64, f64)]) -> ((f64, f64), f64, f64) {
    let mut ata = Matrix3::zeros();
    let mut atb = Vector3::zeros();
    for &(x, y) in points {
        let row = Vector3::new(x, y, 1.0);
        ata += row * row.transpose();
        atb += row * -(x * x + y * y);
    }
    let sol = ata.lu().solve(&atb).expect("non-collinear sample");
    let (cx, cy) = (-sol[0] / 2.0, -sol[1] / 2.0);
    let r = (cx * cx + cy * cy - sol[2]).sqrt();
    let residual = points.iter().map(|&(x, y)| ((x - cx).hypot(y - cy) - r).abs()).fold(0.0, f64::max);
    ((cx, cy), r, residual)
}

/// Hyperbolic distance in the upper half-plane from the closed form.
pub fn uhp_distance_formula(a: (f64, f64), b: (f64, f64)) -> f64 {
    let d2 = (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2);
    (1.0 + d2 / (2.0 * a.1 * b.1)).acosh()
}

/// Angle at `a` of a hyperbolic triangle from its side lengths.
pub fn angle_from_sides(opposite: f64, b: f64, c: f64) -> f64 {
    ((b.cosh() * c.cosh() - opposite.cosh()) / (b.sinh() * c.sinh())).clamp(-1.0, 1.0).acos()
}
