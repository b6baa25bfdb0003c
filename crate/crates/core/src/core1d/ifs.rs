use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::view::Location;
use super::{cmp_scalar, ThicknessReport};
use crate::error::{Error, Result};
use crate::interval::{canonical_cmp, Enclosure, Gap, Interval};
use crate::scalar::{max_of, min_of, Scalar};

/// Descent steps allowed before [`Location::Near`] is returned for points
/// whose position cannot be decided.
const LOCATE_CAP: usize = 4096;

/// `x -> ratio * x + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap<T> {
    pub ratio: T,
    pub offset: T,
}

impl<T: Scalar> AffineMap<T> {
    pub fn new(ratio: T, offset: T) -> Self {
        AffineMap { ratio, offset }
    }

    pub fn apply(&self, x: &T) -> T {
        self.ratio.clone() * x.clone() + self.offset.clone()
    }

    fn invert(&self, y: &T) -> T {
        (y.clone() - self.offset.clone()) / self.ratio.clone()
    }
}

/// Composite map `f_w` of a construction node, and `|w|`.
#[derive(Debug, Clone)]
struct Node<T> {
    r: T,
    o: T,
    stage: usize,
}

impl<T: Scalar> Node<T> {
    fn map(&self, x: &T) -> T {
        self.r.clone() * x.clone() + self.o.clone()
    }

    fn child(&self, m: &AffineMap<T>) -> Node<T> {
        Node { r: self.r.clone() * m.ratio.clone(), o: self.map(&m.offset), stage: self.stage + 1 }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct IfsCutout<T> {
    pub hull: Interval<T>,
    pub maps: Vec<AffineMap<T>>,
    /// Gaps between consecutive first-stage images, in hull coordinates.
    pub stage_gaps: Vec<(T, T)>,
    max_gap: T,
    min_gap: T,
    r_min: T,
}

impl<T: Scalar> PartialEq for IfsCutout<T> {
    fn eq(&self, other: &Self) -> bool {
        self.hull == other.hull && self.maps == other.maps
    }
}

impl<T: Scalar> IfsCutout<T> {
    pub fn new(hull: Interval<T>, maps: Vec<AffineMap<T>>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Domain("an IFS needs at least one map".into()));
        }
        for m in &maps {
            if !(m.ratio > T::zero() && m.ratio <= T::one()) {
                return Err(Error::Domain(format!("map ratio {} outside (0, 1]", m.ratio)));
            }
        }
        let images: Vec<Interval<T>> = maps.iter().map(|m| hull.map_affine(&m.ratio, &m.offset)).collect();
        for im in &images {
            if !hull.contains_interval(im) {
                return Err(Error::Containment(format!("image {im} leaves hull {hull}")));
            }
        }
        for w in images.windows(2) {
            if w[1].left <= w[0].right {
                return Err(Error::Overlap(format!("images {} and {} are not disjoint and left to right", w[0], w[1])));
            }
        }
        if images[0].left != hull.left || images[images.len() - 1].right != hull.right {
            return Err(Error::Domain("outermost images must reach the hull endpoints".into()));
        }
        let stage_gaps: Vec<(T, T)> = images.windows(2).map(|w| (w[0].right.clone(), w[1].left.clone())).collect();
        let lengths = stage_gaps.iter().map(|(l, r)| r.clone() - l.clone());
        let max_gap = lengths.clone().fold(T::zero(), max_of);
        let min_gap = lengths.fold(max_gap.clone(), min_of);
        let r_min = maps.iter().map(|m| m.ratio.clone()).fold(T::one(), min_of);
        Ok(IfsCutout { hull, maps, stage_gaps, max_gap, min_gap, r_min })
    }

    fn root(&self) -> Node<T> {
        Node { r: T::one(), o: T::zero(), stage: 0 }
    }

    fn node_interval(&self, n: &Node<T>) -> Interval<T> {
        Interval { left: n.map(&self.hull.left), right: n.map(&self.hull.right) }
    }

    fn node_gap(&self, n: &Node<T>, j: usize) -> Gap<T> {
        let (l, r) = &self.stage_gaps[j];
        Gap::new(n.map(l), n.map(r), n.stage + 1)
    }

    /// Upper bound on gap lengths inside the node.
    fn gap_bound(&self, n: &Node<T>) -> T {
        n.r.clone() * self.max_gap.clone()
    }

    pub fn canonical_gaps(&self, count: usize) -> Vec<Gap<T>> {
        let mut out = Vec::with_capacity(count);
        if self.stage_gaps.is_empty() {
            return out;
        }
        let mut heap = BinaryHeap::new();
        let root = self.root();
        heap.push(HeapItem { len: self.gap_bound(&root), left: self.hull.left.clone(), item: Item::Node(root) });
        while out.len() < count {
            let Some(top) = heap.pop() else { break };
            match top.item {
                Item::Gap(g) => out.push(g),
                Item::Node(n) => {
                    for j in 0..self.stage_gaps.len() {
                        let g = self.node_gap(&n, j);
                        heap.push(HeapItem { len: g.length(), left: g.left().clone(), item: Item::Gap(g) });
                    }
                    for m in &self.maps {
                        let c = n.child(m);
                        let left = c.map(&self.hull.left);
                        heap.push(HeapItem { len: self.gap_bound(&c), left, item: Item::Node(c) });
                    }
                }
            }
        }
        out
    }

    /// Rightmost gap inside `n` lying left of `p` and canonically before the
    /// key `(len, left)`.
    fn earlier_left(&self, n: &Node<T>, p: &T, len: &T, left: &T) -> Option<Gap<T>> {
        if &n.map(&self.hull.left) >= p || &self.gap_bound(n) < len {
            return None;
        }
        for i in (0..self.maps.len()).rev() {
            if let Some(g) = self.earlier_left(&n.child(&self.maps[i]), p, len, left) {
                return Some(g);
            }
            if i > 0 {
                let g = self.node_gap(n, i - 1);
                if g.right() <= p && canonical_cmp(&g.length(), g.left(), len, left) == Ordering::Less {
                    return Some(g);
                }
            }
        }
        None
    }

    fn earlier_right(&self, n: &Node<T>, p: &T, len: &T, left: &T) -> Option<Gap<T>> {
        if &n.map(&self.hull.right) <= p || &self.gap_bound(n) < len {
            return None;
        }
        for i in 0..self.maps.len() {
            if i > 0 {
                let g = self.node_gap(n, i - 1);
                if g.left() >= p && canonical_cmp(&g.length(), g.left(), len, left) == Ordering::Less {
                    return Some(g);
                }
            }
            if let Some(g) = self.earlier_right(&n.child(&self.maps[i]), p, len, left) {
                return Some(g);
            }
        }
        None
    }

    fn bridges_unchecked(&self, gap: &Gap<T>) -> (Interval<T>, Interval<T>) {
        let root = self.root();
        let (len, left) = (gap.length(), gap.left().clone());
        let lo = self
            .earlier_left(&root, gap.left(), &len, &left)
            .map_or_else(|| self.hull.left.clone(), |g| g.right().clone());
        let hi = self
            .earlier_right(&root, gap.right(), &len, &left)
            .map_or_else(|| self.hull.right.clone(), |g| g.left().clone());
        (Interval::new(lo, gap.left().clone()), Interval::new(gap.right().clone(), hi))
    }

    pub fn bridges_of(&self, gap: &Gap<T>) -> Option<(Interval<T>, Interval<T>)> {
        let res = gap.length().half();
        match self.locate(&gap.interval.midpoint(), &res) {
            Location::InGap(g) if g.interval == gap.interval => Some(self.bridges_unchecked(&g)),
            _ => None,
        }
    }

    /// Every gap `f_w(G_j)` has bridges containing `f_w` of the bridges of
    /// `G_j`, so the infimum is attained at the first stage.
    pub fn thickness(&self) -> ThicknessReport<T> {
        if self.stage_gaps.is_empty() {
            let enclosure = if self.hull.is_degenerate() { Enclosure::exact(T::zero()) } else { Enclosure::infinite() };
            return ThicknessReport { enclosure, argmin: None };
        }
        let root = self.root();
        let mut best: Option<(T, Gap<T>)> = None;
        for j in 0..self.stage_gaps.len() {
            let g = self.node_gap(&root, j);
            let (l, r) = self.bridges_unchecked(&g);
            let ratio = min_of(l.length(), r.length()) / g.length();
            let better = match &best {
                None => true,
                Some((b, bg)) => ratio < *b || (ratio == *b && g.canonical_cmp(bg) == Ordering::Less),
            };
            if better {
                best = Some((ratio, g));
            }
        }
        let (value, gap) = best.expect("non-empty stage gaps");
        ThicknessReport { enclosure: Enclosure::exact(value), argmin: Some(gap) }
    }

    pub fn first_gap_meeting(&self, iv: &Interval<T>) -> Option<Gap<T>> {
        if self.stage_gaps.is_empty() || !self.hull.intersects(iv) {
            return None;
        }
        if iv.is_degenerate() {
            return match self.locate(&iv.left, &T::zero()) {
                Location::InGap(g) => Some(g),
                _ => None,
            };
        }
        let mut best = None;
        self.visit_meeting(&self.root(), iv, &mut best);
        best
    }

    fn visit_meeting(&self, n: &Node<T>, iv: &Interval<T>, best: &mut Option<Gap<T>>) {
        let ni = self.node_interval(n);
        if !(ni.left < iv.right && iv.left < ni.right) {
            return;
        }
        if let Some(b) = best.as_ref() {
            if self.gap_bound(n) < b.length() {
                return;
            }
        }
        for j in 0..self.stage_gaps.len() {
            let g = self.node_gap(n, j);
            if g.meets_closed(iv) && best.as_ref().is_none_or(|b| g.canonical_cmp(b) == Ordering::Less) {
                *best = Some(g);
            }
        }
        for m in &self.maps {
            self.visit_meeting(&n.child(m), iv, best);
        }
    }

    pub fn locate(&self, x: &T, resolution: &T) -> Location<T> {
        if !self.hull.contains(x) {
            return Location::Outside;
        }
        let mut node = self.root();
        let mut y = x.clone();
        // Brent cycle detection on the normalized position
        let mut saved = y.clone();
        let (mut power, mut lam) = (1usize, 0usize);
        for _ in 0..LOCATE_CAP {
            if y == self.hull.left || y == self.hull.right {
                return Location::InSet;
            }
            let ni = self.node_interval(&node);
            if resolution > &T::zero() && &ni.length() < resolution {
                return Location::Near(ni);
            }
            if self.stage_gaps.is_empty() {
                return Location::InSet;
            }
            let k = self.maps.partition_point(|m| m.apply(&self.hull.left) <= y);
            // k >= 1 since y > hull.left
            let m = &self.maps[k - 1];
            if y <= m.apply(&self.hull.right) {
                y = m.invert(&y);
                node = node.child(m);
            } else {
                return Location::InGap(self.node_gap(&node, k - 1));
            }
            lam += 1;
            if y == saved {
                return Location::InSet;
            }
            if lam == power {
                saved = y.clone();
                power *= 2;
                lam = 0;
            }
        }
        Location::Near(self.node_interval(&node))
    }

    pub fn homothety(&self, a: &T, b: &T) -> Result<Self> {
        let hull = self.hull.map_affine(a, b);
        let mut maps: Vec<AffineMap<T>> = self
            .maps
            .iter()
            .map(|m| {
                let offset = a.clone() * m.offset.clone() + b.clone() - m.ratio.clone() * b.clone();
                AffineMap::new(m.ratio.clone(), offset)
            })
            .collect();
        if a < &T::zero() {
            maps.reverse();
        }
        IfsCutout::new(hull, maps)
    }

    fn nodes_at(&self, depth: usize) -> Vec<Node<T>> {
        let mut level = vec![self.root()];
        for _ in 0..depth {
            level = level.iter().flat_map(|n| self.maps.iter().map(move |m| n.child(m))).collect();
        }
        level
    }

    pub fn stage_intervals(&self, depth: usize) -> Vec<Interval<T>> {
        if self.stage_gaps.is_empty() {
            return vec![self.hull.clone()];
        }
        self.nodes_at(depth).iter().map(|n| self.node_interval(n)).collect()
    }

    pub fn truncation_contains(&self, x: &T, depth: usize) -> bool {
        if !self.hull.contains(x) {
            return false;
        }
        let mut y = x.clone();
        for _ in 0..depth {
            if self.stage_gaps.is_empty() {
                return true;
            }
            let k = self.maps.partition_point(|m| m.apply(&self.hull.left) <= y);
            if k == 0 {
                return false;
            }
            let m = &self.maps[k - 1];
            if y > m.apply(&self.hull.right) {
                return false;
            }
            y = m.invert(&y);
        }
        true
    }

    pub fn gaps_through_stage(&self, depth: usize) -> Vec<Gap<T>> {
        let mut out = Vec::new();
        if self.stage_gaps.is_empty() {
            return out;
        }
        let mut level = vec![self.root()];
        for _ in 0..depth {
            for n in &level {
                out.extend((0..self.stage_gaps.len()).map(|j| self.node_gap(n, j)));
            }
            level = level.iter().flat_map(|n| self.maps.iter().map(move |m| n.child(m))).collect();
        }
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }

    pub fn min_gap_length_through_stage(&self, stage: usize) -> Option<T> {
        if stage == 0 || self.stage_gaps.is_empty() {
            return None;
        }
        Some(self.r_min.powu((stage - 1) as u32) * self.min_gap.clone())
    }

    pub fn min_interval_length_at_stage(&self, stage: usize) -> T {
        if self.stage_gaps.is_empty() {
            return self.hull.length();
        }
        self.r_min.powu(stage as u32) * self.hull.length()
    }
}

#[derive(Debug)]
enum Item<T> {
    Node(Node<T>),
    Gap(Gap<T>),
}

/// Max-heap entry; "greater" means canonically earlier.
#[derive(Debug)]
struct HeapItem<T> {
    len: T,
    left: T,
    item: Item<T>,
}

impl<T: Scalar> PartialEq for HeapItem<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for HeapItem<T> {}

impl<T: Scalar> PartialOrd for HeapItem<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for HeapItem<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_scalar(&self.len, &other.len).then_with(|| cmp_scalar(&other.left, &self.left)).then_with(|| {
            match (&self.item, &other.item) {
                (Item::Node(_), Item::Gap(_)) => Ordering::Greater,
                (Item::Gap(_), Item::Node(_)) => Ordering::Less,
                _ => Ordering::Equal,
            }
        })
    }
}
