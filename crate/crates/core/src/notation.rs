//! Conway orbifold signatures: parsing, canonical form and printing.
//!
//! A signature lists, in order, handles (`o`), cone points (`2`..`9`, or `(n)` for larger
//! orders), mirror boundaries (`*` followed by corner orders) and cross-caps (`x`).
//! The Unicode spellings `•`, `°` and `×` are accepted on input and never produced.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("order {order} at position {pos} is below 2")]
    OrderTooSmall { pos: usize, order: u64 },
    #[error("'{digit}' at position {pos} is not a valid order digit (orders are 2-9 or parenthesised)")]
    OrderDigit { pos: usize, digit: char },
    #[error("handle at position {pos} follows a mirror")]
    HandleAfterMirror { pos: usize },
    #[error("mirror at position {pos} follows a cross-cap")]
    MirrorAfterCrossCap { pos: usize },
}

/// One mirror boundary with its cyclic sequence of corner-reflector orders.
///
/// Two boundaries are equal when their corner sequences agree up to rotation and reversal.
#[derive(Debug, Clone, Default)]
pub struct MirrorBoundary {
    pub corners: Vec<u32>,
}

impl MirrorBoundary {
    pub fn new(corners: Vec<u32>) -> Self {
        MirrorBoundary { corners }
    }

    /// The representative of the corner necklace used for printing and comparison: the
    /// lexicographically greatest sequence among all rotations and reversals, so that
    /// `*632` and `*442` read the conventional way.
    pub fn canonical_corners(&self) -> Vec<u32> {
        let n = self.corners.len();
        if n == 0 {
            return Vec::new();
        }
        let mut best: Option<Vec<u32>> = None;
        let reversed: Vec<u32> = self.corners.iter().rev().copied().collect();
        for seq in [&self.corners, &reversed] {
            for shift in 0..n {
                let cand: Vec<u32> = (0..n).map(|i| seq[(i + shift) % n]).collect();
                if best.as_ref().is_none_or(|b| cand > *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap_or_default()
    }

    pub fn canonicalize(&self) -> MirrorBoundary {
        MirrorBoundary { corners: self.canonical_corners() }
    }

    pub fn is_canonical(&self) -> bool {
        self.corners == self.canonical_corners()
    }
}

impl PartialEq for MirrorBoundary {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_corners() == other.canonical_corners()
    }
}

impl Eq for MirrorBoundary {}

impl Hash for MirrorBoundary {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_corners().hash(state);
    }
}

impl PartialOrd for MirrorBoundary {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MirrorBoundary {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_corners().cmp(&other.canonical_corners())
    }
}

/// An orbifold signature: handles, cone points, mirror boundaries and cross-caps.
///
/// Fields are plain data; values produced by [`OrbifoldSignature::parse`] and
/// [`OrbifoldSignature::canonicalize`] are in canonical form (cones non-increasing, every
/// boundary in its greatest rotation/reversal, boundaries non-increasing).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct OrbifoldSignature {
    pub handles: u32,
    pub cone_orders: Vec<u32>,
    pub boundaries: Vec<MirrorBoundary>,
    pub crosscaps: u32,
}

impl OrbifoldSignature {
    /// Builds a signature from parts and canonicalizes it.
    pub fn new(handles: u32, cone_orders: Vec<u32>, boundaries: Vec<Vec<u32>>, crosscaps: u32) -> Self {
        OrbifoldSignature {
            handles,
            cone_orders,
            boundaries: boundaries.into_iter().map(MirrorBoundary::new).collect(),
            crosscaps,
        }
        .canonicalize()
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).parse()
    }

    pub fn canonicalize(&self) -> OrbifoldSignature {
        let mut cone_orders = self.cone_orders.clone();
        cone_orders.sort_unstable_by(|a, b| b.cmp(a));
        let mut boundaries: Vec<MirrorBoundary> = self.boundaries.iter().map(MirrorBoundary::canonicalize).collect();
        boundaries.sort_by(|a, b| b.corners.cmp(&a.corners));
        OrbifoldSignature { handles: self.handles, cone_orders, boundaries, crosscaps: self.crosscaps }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize() && self.boundaries.iter().all(MirrorBoundary::is_canonical)
    }

    /// True when every cone and corner order is at least 2.
    pub fn is_valid(&self) -> bool {
        self.cone_orders.iter().all(|&n| n >= 2) && self.boundaries.iter().all(|b| b.corners.iter().all(|&n| n >= 2))
    }

    pub fn is_empty(&self) -> bool {
        self.handles == 0 && self.cone_orders.is_empty() && self.boundaries.is_empty() && self.crosscaps == 0
    }

    pub fn corner_orders(&self) -> impl Iterator<Item = u32> + '_ {
        self.boundaries.iter().flat_map(|b| b.corners.iter().copied())
    }

    /// Largest cone or corner order, or 1 when there are none.
    pub fn max_rotation_order(&self) -> u32 {
        self.cone_orders.iter().copied().chain(self.corner_orders()).max().unwrap_or(1)
    }

    pub fn is_orientable(&self) -> bool {
        self.boundaries.is_empty() && self.crosscaps == 0
    }

    /// Total number of parts (handles, cones, mirrors, corners, cross-caps).
    pub fn part_count(&self) -> usize {
        self.handles as usize
            + self.cone_orders.len()
            + self.boundaries.len()
            + self.corner_orders().count()
            + self.crosscaps as usize
    }
}

fn write_order(f: &mut fmt::Formatter<'_>, n: u32) -> fmt::Result {
    if (2..=9).contains(&n) {
        write!(f, "{n}")
    } else {
        write!(f, "({n})")
    }
}

impl fmt::Display for OrbifoldSignature {
    /// ASCII form; the inverse of [`OrbifoldSignature::parse`] on canonical signatures.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.handles {
            f.write_str("o")?;
        }
        for &n in &self.cone_orders {
            write_order(f, n)?;
        }
        for b in &self.boundaries {
            f.write_str("*")?;
            for &n in &b.corners {
                write_order(f, n)?;
            }
        }
        for _ in 0..self.crosscaps {
            f.write_str("x")?;
        }
        Ok(())
    }
}

impl FromStr for OrbifoldSignature {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OrbifoldSignature::parse(s)
    }
}

impl Serialize for OrbifoldSignature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrbifoldSignature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        OrbifoldSignature::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Handles,
    Cones,
    Mirrors,
    CrossCaps,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let chars = text
            .chars()
            .map(|c| match c {
                '•' => 'o',
                '°' | '×' => 'x',
                c => c,
            })
            .collect();
        Parser { chars, pos: 0 }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn parse(mut self) -> Result<OrbifoldSignature, ParseError> {
        let mut sig = OrbifoldSignature::default();
        let mut section = Section::Handles;
        while let Some(&c) = self.chars.get(self.pos) {
            match c {
                'o' => {
                    if section >= Section::Mirrors {
                        return Err(ParseError::HandleAfterMirror { pos: self.pos });
                    }
                    if section > Section::Handles {
                        return Err(self.syntax("handles must precede cone points"));
                    }
                    sig.handles += 1;
                    self.pos += 1;
                }
                '*' => {
                    if section == Section::CrossCaps {
                        return Err(ParseError::MirrorAfterCrossCap { pos: self.pos });
                    }
                    section = Section::Mirrors;
                    sig.boundaries.push(MirrorBoundary::default());
                    self.pos += 1;
                }
                'x' => {
                    section = Section::CrossCaps;
                    sig.crosscaps += 1;
                    self.pos += 1;
                }
                '0'..='9' | '(' => {
                    if section == Section::CrossCaps {
                        return Err(self.syntax("orders cannot follow cross-caps"));
                    }
                    let order = self.order()?;
                    match sig.boundaries.last_mut() {
                        Some(b) => b.corners.push(order),
                        None => {
                            section = Section::Cones;
                            sig.cone_orders.push(order);
                        }
                    }
                }
                c if c.is_whitespace() => return Err(self.syntax("whitespace is not allowed")),
                c => return Err(self.syntax(format!("unexpected character '{c}'"))),
            }
        }
        Ok(sig.canonicalize())
    }

    fn order(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let c = self.chars[self.pos];
        if c != '(' {
            self.pos += 1;
            return match c.to_digit(10) {
                Some(d @ 2..=9) => Ok(d),
                _ => Err(ParseError::OrderDigit { pos: start, digit: c }),
            };
        }
        self.pos += 1;
        let digits_start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.syntax("expected an integer after '('"));
        }
        if self.chars.get(self.pos) != Some(&')') {
            return Err(self.syntax("expected ')'"));
        }
        let digits: String = self.chars[digits_start..self.pos].iter().collect();
        self.pos += 1;
        let value: u64 =
            digits.parse().map_err(|_| ParseError::Syntax { pos: digits_start, msg: "order too large".into() })?;
        if value < 2 {
            return Err(ParseError::OrderTooSmall { pos: start, order: value });
        }
        u32::try_from(value).map_err(|_| ParseError::Syntax { pos: digits_start, msg: "order too large".into() })
    }
}
