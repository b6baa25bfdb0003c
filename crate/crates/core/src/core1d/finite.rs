use super::cmp_scalar;
use super::view::Location;
use super::ThicknessReport;
use crate::error::{Error, Result};
use crate::interval::{Enclosure, Gap, Interval};
use crate::scalar::{min_of, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct FiniteCutout<T> {
    pub hull: Interval<T>,
    /// Canonical order.
    pub gaps: Vec<Gap<T>>,
    /// `bridges[i]` belongs to `gaps[i]`.
    pub bridges: Vec<(Interval<T>, Interval<T>)>,
    /// Indices into `gaps`, sorted by position.
    pub by_position: Vec<usize>,
}

impl<T: Scalar> FiniteCutout<T> {
    pub fn new(hull: Interval<T>, raw: Vec<Interval<T>>) -> Result<Self> {
        let mut gaps = Vec::with_capacity(raw.len());
        for iv in raw {
            if iv.left >= iv.right {
                return Err(Error::Domain(format!("gap {iv} is empty")));
            }
            if iv.left < hull.left || iv.right > hull.right {
                return Err(Error::Containment(format!("gap {iv} leaves hull {hull}")));
            }
            gaps.push(Gap { interval: iv, depth: 0 });
        }
        let mut by_position: Vec<usize> = (0..gaps.len()).collect();
        by_position.sort_by(|&i, &j| cmp_scalar(gaps[i].left(), gaps[j].left()));
        for w in by_position.windows(2) {
            let (a, b) = (&gaps[w[0]], &gaps[w[1]]);
            if b.left() < a.right() {
                return Err(Error::Overlap(format!("{a} and {b}")));
            }
        }
        gaps.sort_by(|a, b| a.canonical_cmp(b));
        by_position.clear();
        by_position.extend(0..gaps.len());
        by_position.sort_by(|&i, &j| cmp_scalar(gaps[i].left(), gaps[j].left()));

        let bridges = compute_bridges(&hull, &gaps);
        Ok(FiniteCutout { hull, gaps, bridges, by_position })
    }

    pub fn thickness(&self) -> ThicknessReport<T> {
        if self.gaps.is_empty() {
            let enclosure = if self.hull.is_degenerate() { Enclosure::exact(T::zero()) } else { Enclosure::infinite() };
            return ThicknessReport { enclosure, argmin: None };
        }
        let mut best: Option<(T, usize)> = None;
        for (i, (g, (l, r))) in self.gaps.iter().zip(&self.bridges).enumerate() {
            let ratio = min_of(l.length(), r.length()) / g.length();
            if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
                best = Some((ratio, i));
            }
        }
        let (value, idx) = best.expect("non-empty gap list");
        ThicknessReport { enclosure: Enclosure::exact(value), argmin: Some(self.gaps[idx].clone()) }
    }

    fn position_of(&self, gap: &Gap<T>) -> Option<usize> {
        let k = self.by_position.partition_point(|&i| self.gaps[i].left() < gap.left());
        let &i = self.by_position.get(k)?;
        (self.gaps[i].interval == gap.interval).then_some(i)
    }

    pub fn bridges_of(&self, gap: &Gap<T>) -> Option<(Interval<T>, Interval<T>)> {
        self.position_of(gap).map(|i| self.bridges[i].clone())
    }

    /// Connected components (isolated points included), left to right.
    pub fn components(&self) -> Vec<Interval<T>> {
        let mut out = Vec::with_capacity(self.gaps.len() + 1);
        let mut cur = self.hull.left.clone();
        for &i in &self.by_position {
            let g = &self.gaps[i];
            out.push(Interval::new(cur, g.left().clone()));
            cur = g.right().clone();
        }
        out.push(Interval::new(cur, self.hull.right.clone()));
        out
    }

    pub fn contains(&self, x: &T) -> bool {
        matches!(self.locate(x), Location::InSet)
    }

    pub fn locate(&self, x: &T) -> Location<T> {
        if !self.hull.contains(x) {
            return Location::Outside;
        }
        let k = self.by_position.partition_point(|&i| self.gaps[i].left() < x);
        if k > 0 {
            let g = &self.gaps[self.by_position[k - 1]];
            if x < g.right() {
                return Location::InGap(g.clone());
            }
        }
        Location::InSet
    }
}

/// Bridges of each gap at the moment it is removed, gaps in canonical order.
fn compute_bridges<T: Scalar>(hull: &Interval<T>, gaps: &[Gap<T>]) -> Vec<(Interval<T>, Interval<T>)> {
    // removed gaps sorted by left endpoint
    let mut removed: Vec<&Gap<T>> = Vec::with_capacity(gaps.len());
    let mut out = Vec::with_capacity(gaps.len());
    for g in gaps {
        let k = removed.partition_point(|h| h.left() < g.left());
        let lo = if k == 0 { hull.left.clone() } else { removed[k - 1].right().clone() };
        let hi = removed.get(k).map_or_else(|| hull.right.clone(), |h| h.left().clone());
        out.push((Interval::new(lo, g.left().clone()), Interval::new(g.right().clone(), hi)));
        removed.insert(k, g);
    }
    out
}
