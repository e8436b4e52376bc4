//! Closed curves with transverse self-crossings, written as signed Gauss codes, and the knot
//! diagrams obtained by choosing which strand goes over at each crossing.
//!
//! A code lists the crossings met along one traversal, e.g. `1+ 2+ 3+ 1+ 2+ 3+`. The sign of a
//! crossing is the handedness seen from its even-position passage: `+` when the other strand
//! runs from left to right across it. Both visits carry the same sign.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("bad token at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("crossing {label} appears {count} times, expected 2")]
    Occurrence { label: u32, count: usize },
    #[error("crossing labels must be 1..={n}, found {label}")]
    Label { label: u32, n: usize },
    #[error("crossing {0} has different signs on its two visits")]
    SignMismatch(u32),
    #[error("curve is not planar: {faces} faces, expected {expected}")]
    NotPlanar { faces: usize, expected: usize },
    #[error("crossing assignment has {got} entries for {expected} crossings")]
    AssignmentLength { got: usize, expected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Passage {
    pub label: u32,
    pub positive: bool,
}

/// A signed Gauss code that has been checked to describe a planar curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussCode {
    passages: Vec<Passage>,
    /// Positions of the first and second visit, indexed by `label - 1`.
    visits: Vec<(usize, usize)>,
}

/// Directed edge of the curve: `Forward(k)` leaves passage `k` along edge `k`, `Backward(k)`
/// leaves passage `k + 1` back along edge `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Dart {
    Forward(usize),
    Backward(usize),
}

impl Dart {
    fn reversed(self) -> Dart {
        match self {
            Dart::Forward(k) => Dart::Backward(k),
            Dart::Backward(k) => Dart::Forward(k),
        }
    }
}

impl GaussCode {
    pub fn parse(text: &str) -> Result<GaussCode, KnotError> {
        let bytes = text.as_bytes();
        let mut passages = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == start {
                return Err(KnotError::Syntax { pos: start, msg: "expected a crossing label".into() });
            }
            let label: u32 =
                text[start..i].parse().map_err(|_| KnotError::Syntax { pos: start, msg: "label too large".into() })?;
            let positive = match bytes.get(i) {
                Some(b'+') => true,
                Some(b'-') => false,
                _ => return Err(KnotError::Syntax { pos: i, msg: "expected + or -".into() }),
            };
            i += 1;
            passages.push(Passage { label, positive });
        }
        GaussCode::from_passages(passages)
    }

    pub fn from_passages(passages: Vec<Passage>) -> Result<GaussCode, KnotError> {
        let mut seen: HashMap<u32, Vec<usize>> = HashMap::new();
        for (k, p) in passages.iter().enumerate() {
            seen.entry(p.label).or_default().push(k);
        }
        let n = seen.len();
        let mut labels: Vec<_> = seen.keys().copied().collect();
        labels.sort_unstable();
        for &label in &labels {
            let count = seen[&label].len();
            if count != 2 {
                return Err(KnotError::Occurrence { label, count });
            }
            if label == 0 || label as usize > n {
                return Err(KnotError::Label { label, n });
            }
        }
        let visits: Vec<(usize, usize)> = (1..=n as u32).map(|l| (seen[&l][0], seen[&l][1])).collect();
        for (k, &(i, j)) in visits.iter().enumerate() {
            if passages[i].positive != passages[j].positive {
                return Err(KnotError::SignMismatch(k as u32 + 1));
            }
        }
        let code = GaussCode { passages, visits };
        let faces = code.trace_faces().len();
        if faces != n + 2 {
            return Err(KnotError::NotPlanar { faces, expected: n + 2 });
        }
        Ok(code)
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    pub fn crossing_count(&self) -> usize {
        self.visits.len()
    }

    /// Positions of the two visits to `label`.
    pub fn visits(&self, label: u32) -> (usize, usize) {
        self.visits[label as usize - 1]
    }

    /// Faces of the planar map: V = n, E = 2n.
    pub fn face_count(&self) -> usize {
        self.trace_faces().len()
    }

    /// Each face as the cycle of edge sides bounding it: `(edge, forward)`.
    fn trace_faces(&self) -> Vec<Vec<Dart>> {
        let m = self.passages.len();
        if m == 0 {
            return vec![vec![Dart::Forward(0)], vec![Dart::Backward(0)]];
        }
        let mut rotation: HashMap<Dart, Dart> = HashMap::with_capacity(2 * m);
        for &(i, j) in &self.visits {
            let out_i = Dart::Forward(i);
            let back_i = Dart::Backward((i + m - 1) % m);
            let out_j = Dart::Forward(j);
            let back_j = Dart::Backward((j + m - 1) % m);
            let even_sign = self.passages[i].positive;
            let first_sign = if i % 2 == 0 { even_sign } else { !even_sign };
            let cycle = if first_sign { [out_i, out_j, back_i, back_j] } else { [out_i, back_j, back_i, out_j] };
            for t in 0..4 {
                rotation.insert(cycle[t], cycle[(t + 1) % 4]);
            }
        }
        let mut faces = Vec::new();
        let mut done: HashSet<Dart> = HashSet::with_capacity(2 * m);
        let darts = (0..m).flat_map(|k| [Dart::Forward(k), Dart::Backward(k)]);
        for d in darts {
            if done.contains(&d) {
                continue;
            }
            let mut face = Vec::new();
            let mut x = d;
            while !done.contains(&x) {
                done.insert(x);
                face.push(x);
                x = rotation[&x.reversed()];
            }
            faces.push(face);
        }
        faces
    }

    /// The same curve traversed backwards, starting from the last passage.
    pub fn reversed(&self) -> GaussCode {
        let passages = self.passages.iter().rev().map(|p| Passage { label: p.label, positive: !p.positive }).collect();
        GaussCode::from_passages(passages).expect("reversal of a planar curve")
    }

    /// Renames crossing `k` to `perm[k - 1]`; `perm` is a permutation of `1..=n`.
    pub fn relabeled(&self, perm: &[u32]) -> Result<GaussCode, KnotError> {
        let passages =
            self.passages.iter().map(|p| Passage { label: perm[p.label as usize - 1], positive: p.positive }).collect();
        GaussCode::from_passages(passages)
    }

    /// Exactly two colorings of the faces in black and white with neighbours differing.
    pub fn checkerboard(&self) -> [FaceColoring; 2] {
        let faces = self.trace_faces();
        let mut face_of: HashMap<Dart, usize> = HashMap::new();
        for (f, face) in faces.iter().enumerate() {
            for &d in face {
                face_of.insert(d, f);
            }
        }
        let mut black: Vec<Option<bool>> = vec![None; faces.len()];
        black[0] = Some(true);
        let mut queue = VecDeque::from([0]);
        while let Some(f) = queue.pop_front() {
            let colour = black[f].expect("coloured before queued");
            for &d in &faces[f] {
                let g = face_of[&d.reversed()];
                match black[g] {
                    None => {
                        black[g] = Some(!colour);
                        queue.push_back(g);
                    }
                    Some(c) => assert_ne!(c, colour, "planar curve has a proper checkerboard"),
                }
            }
        }
        let first = FaceColoring { black: black.into_iter().map(|c| c.expect("connected")).collect() };
        let second = FaceColoring { black: first.black.iter().map(|b| !b).collect() };
        [first, second]
    }

    /// Pairs of faces meeting along each edge, one pair per edge.
    pub fn face_adjacency(&self) -> Vec<(usize, usize)> {
        let faces = self.trace_faces();
        let mut face_of: HashMap<Dart, usize> = HashMap::new();
        for (f, face) in faces.iter().enumerate() {
            for &d in face {
                face_of.insert(d, f);
            }
        }
        let m = self.passages.len().max(1);
        (0..m).map(|k| (face_of[&Dart::Forward(k)], face_of[&Dart::Backward(k)])).collect()
    }

    /// All `2^n` diagrams, in lexicographic order of their over-on-first-visit vectors.
    pub fn all_diagrams(&self) -> Vec<KnotDiagram> {
        let n = self.crossing_count();
        (0u64..1 << n)
            .map(|bits| KnotDiagram {
                code: self.clone(),
                over_first: (0..n).map(|k| bits >> (n - 1 - k) & 1 == 1).collect(),
            })
            .collect()
    }

    /// Every crossing is passed over first, so the curve sinks as it goes: always an unknot.
    pub fn descending_diagram(&self) -> KnotDiagram {
        KnotDiagram { code: self.clone(), over_first: vec![true; self.crossing_count()] }
    }

    /// The two diagrams that alternate over and under along the curve; the first goes over
    /// at even positions.
    pub fn alternating_diagrams(&self) -> [KnotDiagram; 2] {
        let even_over: Vec<bool> = self.visits.iter().map(|&(i, _)| i % 2 == 0).collect();
        let odd_over = even_over.iter().map(|b| !b).collect();
        [
            KnotDiagram { code: self.clone(), over_first: even_over },
            KnotDiagram { code: self.clone(), over_first: odd_over },
        ]
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.passages.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", p.label, if p.positive { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = KnotError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaussCode::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceColoring {
    pub black: Vec<bool>,
}

impl FaceColoring {
    pub fn is_proper(&self, code: &GaussCode) -> bool {
        code.face_adjacency().iter().all(|&(a, b)| self.black[a] != self.black[b])
    }
}

/// A curve with a choice, per crossing, of whether the first visit passes over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    code: GaussCode,
    over_first: Vec<bool>,
}

impl KnotDiagram {
    pub fn new(code: GaussCode, over_first: Vec<bool>) -> Result<KnotDiagram, KnotError> {
        if over_first.len() != code.crossing_count() {
            return Err(KnotError::AssignmentLength { got: over_first.len(), expected: code.crossing_count() });
        }
        Ok(KnotDiagram { code, over_first })
    }

    /// Parses `<code> /O1,U2,...`, where `Ok` and `Uk` put the first visit of `k` over or under.
    pub fn parse(text: &str) -> Result<KnotDiagram, KnotError> {
        let (code_text, spec) = text
            .split_once('/')
            .ok_or_else(|| KnotError::Syntax { pos: text.len(), msg: "missing /assignment".into() })?;
        let code = GaussCode::parse(code_text)?;
        let n = code.crossing_count();
        let mut over_first = vec![None; n];
        let offset = code_text.len() + 1;
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let pos = offset + spec.find(item).unwrap_or(0);
            let bad = |msg: &str| KnotError::Syntax { pos, msg: msg.into() };
            let (over, label) = match item.split_at(1) {
                ("O", l) => (true, l),
                ("U", l) => (false, l),
                _ => return Err(bad("expected O or U")),
            };
            let label: u32 = label.parse().map_err(|_| bad("bad label"))?;
            if label == 0 || label as usize > n {
                return Err(KnotError::Label { label, n });
            }
            if over_first[label as usize - 1].replace(over).is_some() {
                return Err(bad("crossing assigned twice"));
            }
        }
        let over_first: Vec<bool> = over_first.into_iter().flatten().collect();
        KnotDiagram::new(code, over_first)
    }

    pub fn code(&self) -> &GaussCode {
        &self.code
    }

    pub fn over_first(&self) -> &[bool] {
        &self.over_first
    }

    /// Whether the passage at position `k` of the traversal goes over.
    pub fn is_over(&self, k: usize) -> bool {
        let label = self.code.passages[k].label;
        let (i, _) = self.code.visits(label);
        self.over_first[label as usize - 1] == (k == i)
    }

    pub fn is_alternating(&self) -> bool {
        let m = self.code.passages.len();
        (0..m).all(|k| self.is_over(k) != self.is_over((k + 1) % m))
    }

    pub fn mirror(&self) -> KnotDiagram {
        KnotDiagram { code: self.code.clone(), over_first: self.over_first.iter().map(|b| !b).collect() }
    }

    /// The same diagram traversed backwards.
    pub fn reversed(&self) -> KnotDiagram {
        KnotDiagram { code: self.code.reversed(), over_first: self.over_first.iter().map(|b| !b).collect() }
    }

    /// Arcs run from one under-passage to the next. Returns, per crossing, the over arc and
    /// the two arcs ending and starting at the under-passage, plus the arc count.
    pub fn crossing_arcs(&self) -> (Vec<[usize; 3]>, usize) {
        let m = self.code.passages.len();
        let n = self.code.crossing_count();
        if n == 0 {
            return (Vec::new(), 1);
        }
        let unders: Vec<usize> = (0..m).filter(|&k| !self.is_over(k)).collect();
        // arc of the edge leaving passage k
        let mut arc_after = vec![0; m];
        let mut arc = n - 1;
        for t in 0..m {
            let k = (unders[0] + t) % m;
            if !self.is_over(k) {
                arc = (arc + 1) % n;
            }
            arc_after[k] = arc;
        }
        let rows = self
            .code
            .visits
            .iter()
            .enumerate()
            .map(|(c, &(i, j))| {
                let (over, under) = if self.over_first[c] { (i, j) } else { (j, i) };
                [arc_after[over], arc_after[(under + m - 1) % m], arc_after[under]]
            })
            .collect();
        (rows, n)
    }

    /// Number of colourings of the arcs with three colours in which the three arcs at each
    /// crossing are all alike or all different.
    pub fn tricolor_count(&self) -> u64 {
        let (rows, arcs) = self.crossing_arcs();
        let mut matrix: Vec<Vec<u8>> = rows
            .iter()
            .map(|&[over, a, b]| {
                let mut row = vec![0u8; arcs];
                row[over] = (row[over] + 2) % 3;
                row[a] = (row[a] + 2) % 3;
                row[b] = (row[b] + 2) % 3;
                row
            })
            .collect();
        3u64.pow((arcs - rank_mod3(&mut matrix)) as u32)
    }

    /// Absolute determinant of the colouring matrix with one row and column removed.
    pub fn determinant(&self) -> u64 {
        let (rows, arcs) = self.crossing_arcs();
        if arcs <= 1 {
            return 1;
        }
        let matrix: Vec<Vec<i128>> = rows[1..]
            .iter()
            .map(|&[over, a, b]| {
                let mut row = vec![0i128; arcs];
                row[over] += 2;
                row[a] -= 1;
                row[b] -= 1;
                row[1..].to_vec()
            })
            .collect();
        bareiss_determinant(matrix).unsigned_abs() as u64
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} /", self.code)?;
        for (k, over) in self.over_first.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}{}", if *over { 'O' } else { 'U' }, k + 1)?;
        }
        Ok(())
    }
}

fn rank_mod3(m: &mut [Vec<u8>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, pivot);
        // 1 and 2 are their own inverses mod 3
        let inv = m[rank][col];
        for x in m[rank].iter_mut() {
            *x = (*x * inv) % 3;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                let pivot = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(pivot) {
                    *x = (*x + 9 - factor * p) % 3;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn bareiss_determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut previous = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else { return 0 };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
            }
        }
        previous = m[k][k];
    }
    sign * m.last().map_or(1, |row| row[n - 1])
}

/// A prime knot of the small table, with a planar code for its alternating diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KnotFixture {
    pub name: &'static str,
    /// Conway's integer-string name.
    pub conway: &'static str,
    pub code: &'static str,
    pub tricolor_count: u64,
    pub determinant: u64,
}

pub const KNOT_TABLE: [KnotFixture; 7] = [
    KnotFixture { name: "3-1", conway: "3", code: "1+ 2+ 3+ 1+ 2+ 3+", tricolor_count: 9, determinant: 3 },
    KnotFixture { name: "4-1", conway: "22", code: "1+ 2+ 3- 4- 2+ 1+ 4- 3-", tricolor_count: 3, determinant: 5 },
    KnotFixture { name: "5-1", conway: "5", code: "1+ 2+ 3+ 4+ 5+ 1+ 2+ 3+ 4+ 5+", tricolor_count: 3, determinant: 5 },
    KnotFixture { name: "5-2", conway: "32", code: "1+ 2+ 3+ 1+ 4+ 5+ 2+ 3+ 5+ 4+", tricolor_count: 3, determinant: 7 },
    KnotFixture {
        name: "6-1",
        conway: "42",
        code: "1+ 2+ 3- 4- 2+ 1+ 5+ 6+ 4- 3- 6+ 5+",
        tricolor_count: 9,
        determinant: 9,
    },
    KnotFixture {
        name: "6-2",
        conway: "312",
        code: "1+ 2- 3- 1+ 4+ 5+ 6+ 3- 2- 4+ 5+ 6+",
        tricolor_count: 3,
        determinant: 11,
    },
    KnotFixture {
        name: "6-3",
        conway: "2112",
        code: "1+ 2+ 3+ 1+ 4- 5- 2+ 3+ 6- 4- 5- 6-",
        tricolor_count: 3,
        determinant: 13,
    },
];
