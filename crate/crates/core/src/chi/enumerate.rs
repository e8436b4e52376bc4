//! Exhaustive search for signatures whose price falls in a window.
//!
//! Parts are chosen in a fixed order: handles, cross-caps, bare mirrors, then the number of
//! cone points and corner reflectors, then cone orders (non-decreasing) and corner orders
//! (non-decreasing). Every step carries the exact remaining budget. When the window is a
//! single price, the last cone or corner order is solved from the residual instead of being
//! scanned. The corner multiset is finally spread over the mirrors in every inequivalent
//! cyclic arrangement.

use std::collections::BTreeMap;
use std::ops::Bound;

use thiserror::Error;

use super::{classify, cost, GeometryClass};
use crate::notation::{MirrorBoundary, OrbifoldSignature};
use crate::rational::Rational;

/// The 17 Euclidean signatures in canonical ASCII form.
pub const EUCLIDEAN_SIGNATURES: [&str; 17] = [
    "o", "2222", "333", "442", "632", "*2222", "*333", "*442", "*632", "4*2", "3*3", "22*", "2*22", "**", "*x", "22x",
    "xx",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("max_order must be at least 2 (got {0})")]
    MaxOrderTooSmall(u32),
    #[error("the Euler characteristic range needs a finite lower bound")]
    UnboundedRange,
}

/// `"" `, `"*"` and `"x"`: the sphere, disk and projective plane with no decorations.
pub fn is_trivial(sig: &OrbifoldSignature) -> bool {
    sig.is_empty()
        || *sig == OrbifoldSignature::new(0, vec![], vec![vec![]], 0)
        || *sig == OrbifoldSignature::new(0, vec![], vec![], 1)
}

/// All signatures that cost exactly 2, sorted by their printed form.
pub fn enumerate_euclidean() -> Vec<OrbifoldSignature> {
    let window = CostWindow::exact(Rational::TWO);
    search(&window, None, LoopOrder::Forward).expect("exact budget of 2 is always bounded")
}

/// All good signatures with positive Euler characteristic and every order at most
/// `max_order`. The trivial signatures (see [`is_trivial`]) are included.
pub fn enumerate_spherical(max_order: u32) -> Result<Vec<OrbifoldSignature>, EnumerationError> {
    if max_order < 2 {
        return Err(EnumerationError::MaxOrderTooSmall(max_order));
    }
    let window = CostWindow { lo: Bound::Included(Rational::ZERO), hi: Bound::Excluded(Rational::TWO) };
    let all = search(&window, Some(max_order), LoopOrder::Forward)?;
    Ok(all.into_iter().filter(|s| classify(s) != GeometryClass::Bad).collect())
}

/// All good signatures whose Euler characteristic lies in `(min_chi, max_chi)` (bounds as
/// given) with every order at most `max_order`. `min_chi` must be finite.
pub fn enumerate_by_chi(
    min_chi: Bound<Rational>,
    max_chi: Bound<Rational>,
    max_order: u32,
) -> Result<Vec<OrbifoldSignature>, EnumerationError> {
    if max_order < 2 {
        return Err(EnumerationError::MaxOrderTooSmall(max_order));
    }
    let flip = |b: Bound<Rational>| match b {
        Bound::Included(x) => Bound::Included(Rational::TWO - x),
        Bound::Excluded(x) => Bound::Excluded(Rational::TWO - x),
        Bound::Unbounded => Bound::Unbounded,
    };
    let hi = flip(min_chi);
    if hi == Bound::Unbounded {
        return Err(EnumerationError::UnboundedRange);
    }
    let lo = match flip(max_chi) {
        Bound::Unbounded => Bound::Included(Rational::ZERO),
        b => b,
    };
    let all = search(&CostWindow { lo, hi }, Some(max_order), LoopOrder::Forward)?;
    Ok(all.into_iter().filter(|s| classify(s) != GeometryClass::Bad).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) enum LoopOrder {
    Forward,
    Reverse,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct CostWindow {
    lo: Bound<Rational>,
    hi: Bound<Rational>,
}

impl CostWindow {
    fn exact(target: Rational) -> Self {
        CostWindow { lo: Bound::Included(target), hi: Bound::Included(target) }
    }

    /// The single admissible price, when there is one.
    fn target(&self) -> Option<Rational> {
        match (self.lo, self.hi) {
            (Bound::Included(a), Bound::Included(b)) if a == b => Some(a),
            _ => None,
        }
    }

    /// Upper bound on the price, inclusive. Used for pruning; leaves re-check the window.
    fn ceiling(&self) -> Rational {
        match self.hi {
            Bound::Included(x) | Bound::Excluded(x) => x,
            Bound::Unbounded => unreachable!("cost window must be bounded above"),
        }
    }

    fn contains(&self, c: Rational) -> bool {
        let above = match self.lo {
            Bound::Included(x) => c >= x,
            Bound::Excluded(x) => c > x,
            Bound::Unbounded => true,
        };
        let below = match self.hi {
            Bound::Included(x) => c <= x,
            Bound::Excluded(x) => c < x,
            Bound::Unbounded => true,
        };
        above && below
    }
}

fn range(n: i64, order: LoopOrder) -> Box<dyn Iterator<Item = i64>> {
    let n = n.max(-1);
    match order {
        LoopOrder::Forward => Box::new(0..=n),
        LoopOrder::Reverse => Box::new((0..=n).rev()),
    }
}

pub(crate) fn search(
    window: &CostWindow,
    max_order: Option<u32>,
    order: LoopOrder,
) -> Result<Vec<OrbifoldSignature>, EnumerationError> {
    let ceiling = window.ceiling();
    let quarter = Rational::new(1, 4);
    let half = Rational::new(1, 2);
    let mut found: BTreeMap<String, OrbifoldSignature> = BTreeMap::new();

    for handles in range((ceiling / Rational::TWO).floor(), order) {
        let after_handles = ceiling - Rational::from_integer(2 * handles);
        for crosscaps in range(after_handles.floor(), order) {
            let after_caps = after_handles - Rational::from_integer(crosscaps);
            for mirrors in range(after_caps.floor(), order) {
                let rest = after_caps - Rational::from_integer(mirrors);
                let max_cones = (rest / half).floor();
                let max_corners = if mirrors > 0 { (rest / quarter).floor() } else { 0 };
                for cones in range(max_cones, order) {
                    for corners in range(max_corners, order) {
                        let floor_cost =
                            half * Rational::from_integer(cones) + quarter * Rational::from_integer(corners);
                        if floor_cost > rest {
                            continue;
                        }
                        if ceiling <= Rational::TWO {
                            // every part costs at least 1/4
                            let parts = handles + crosscaps + mirrors + cones + corners;
                            assert!(parts <= 8, "part budget exceeded: {parts} parts");
                        }
                        let base = Rational::from_integer(2 * handles + crosscaps + mirrors);
                        let mut state = Dfs {
                            window,
                            max_order,
                            frame: Frame {
                                handles: handles as u32,
                                crosscaps: crosscaps as u32,
                                mirrors: mirrors as usize,
                            },
                            cones: Vec::new(),
                            corners: Vec::new(),
                            found: &mut found,
                        };
                        state.place(base, cones as usize, corners as usize)?;
                    }
                }
            }
        }
    }
    Ok(found.into_values().collect())
}

struct Frame {
    handles: u32,
    crosscaps: u32,
    mirrors: usize,
}

struct Dfs<'a> {
    window: &'a CostWindow,
    max_order: Option<u32>,
    frame: Frame,
    cones: Vec<u32>,
    corners: Vec<u32>,
    found: &'a mut BTreeMap<String, OrbifoldSignature>,
}

impl Dfs<'_> {
    fn place(&mut self, spent: Rational, cones_left: usize, corners_left: usize) -> Result<(), EnumerationError> {
        if cones_left == 0 && corners_left == 0 {
            if self.window.contains(spent) {
                self.emit();
            }
            return Ok(());
        }
        let placing_cone = cones_left > 0;
        let weight = if placing_cone { Rational::ONE } else { Rational::new(1, 2) };
        let part_cost = |n: u32| if placing_cone { Rational::cone_cost(n) } else { Rational::corner_cost(n) };
        let prev = if placing_cone { self.cones.last() } else { self.corners.last() };
        let first = prev.copied().unwrap_or(2);
        let last_item = cones_left + corners_left == 1;

        if let (Some(target), true) = (self.window.target(), last_item) {
            // weight * (1 - 1/n) = residual  =>  n = weight / (weight - residual)
            let residual = target - spent;
            if residual <= Rational::ZERO || residual >= weight {
                return Ok(());
            }
            let n = weight / (weight - residual);
            if n.is_integer() {
                let n = n.numer() as u32;
                if n >= first && self.max_order.is_none_or(|m| n <= m) {
                    self.push(placing_cone, n);
                    self.place(target, 0, 0)?;
                    self.pop(placing_cone);
                }
            }
            return Ok(());
        }

        // The remaining parts of this kind cost at least as much as the one placed now, and
        // every remaining corner costs at least 1/4.
        let same_kind_left = if placing_cone { cones_left } else { corners_left };
        let other_floor = if placing_cone { Rational::new(corners_left as i64, 4) } else { Rational::ZERO };
        let share = (self.window.ceiling() - spent - other_floor) / Rational::from_integer(same_kind_left as i64);
        if let Some(target) = self.window.target() {
            // parts never reach their weight, so an exact budget must stay strictly below it
            let supremum = Rational::from_integer(cones_left as i64) + Rational::new(corners_left as i64, 2);
            if target - spent >= supremum {
                return Ok(());
            }
        }
        let bound = if share < weight {
            let b = weight / (weight - share);
            if b < Rational::from_integer(2) {
                return Ok(());
            }
            let b = b.floor() as u32;
            Some(self.max_order.map_or(b, |m| b.min(m)))
        } else {
            self.max_order
        };
        let Some(bound) = bound else {
            // Only reachable for exact budgets above 2, which callers always pair with a
            // max_order.
            debug_assert!(self.window.target().is_some_and(|t| t <= Rational::TWO));
            return Ok(());
        };
        for n in first..=bound {
            let next = spent + part_cost(n);
            if next > self.window.ceiling() {
                break;
            }
            self.push(placing_cone, n);
            let (c, k) = if placing_cone { (cones_left - 1, corners_left) } else { (0, corners_left - 1) };
            self.place(next, c, k)?;
            self.pop(placing_cone);
        }
        Ok(())
    }

    fn push(&mut self, cone: bool, n: u32) {
        if cone {
            self.cones.push(n)
        } else {
            self.corners.push(n)
        }
    }

    fn pop(&mut self, cone: bool) {
        if cone {
            self.cones.pop();
        } else {
            self.corners.pop();
        }
    }

    fn emit(&mut self) {
        for boundaries in arrangements(&self.corners, self.frame.mirrors) {
            let sig = OrbifoldSignature {
                handles: self.frame.handles,
                cone_orders: self.cones.clone(),
                boundaries: boundaries.into_iter().map(MirrorBoundary::new).collect(),
                crosscaps: self.frame.crosscaps,
            }
            .canonicalize();
            debug_assert!(self.window.contains(cost(&sig)));
            self.found.entry(sig.to_string()).or_insert(sig);
        }
    }
}

/// Every way to lay the corner multiset out as cyclic sequences on `mirrors` boundaries.
/// Duplicates up to rotation, reversal and boundary order are left for canonicalization.
fn arrangements(corners: &[u32], mirrors: usize) -> Vec<Vec<Vec<u32>>> {
    if mirrors == 0 {
        return if corners.is_empty() { vec![vec![]] } else { vec![] };
    }
    let mut sorted = corners.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut perm = sorted.clone();
    loop {
        split_into(&perm, mirrors, &mut Vec::new(), &mut out);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn split_into(seq: &[u32], parts: usize, acc: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
    if parts == 1 {
        acc.push(seq.to_vec());
        out.push(acc.clone());
        acc.pop();
        return;
    }
    for cut in 0..=seq.len() {
        acc.push(seq[..cut].to_vec());
        split_into(&seq[cut..], parts - 1, acc, out);
        acc.pop();
    }
}

/// Lexicographic successor; distinct permutations of a multiset when started sorted.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
