//! Compact subsets of the line described as cut-out programs, and their
//! Newhouse thickness.
//!
//! A [`CutOutSet`] is a closed hull from which open gaps are removed, either
//! a finite explicit list or the infinite gap stream of a homothetic
//! iterated function system (the middle-ε Cantor sets being the main
//! example). Gaps are always reported in canonical order: non-increasing
//! length, ties broken by ascending left endpoint.

mod finite;
mod ifs;
pub mod view;

use std::cmp::Ordering;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::interval::{Enclosure, Gap, Interval};
use crate::scalar::Scalar;

pub use ifs::AffineMap;
pub use view::{Locate, Location};

use finite::FiniteCutout;
use ifs::IfsCutout;

/// How the gaps of a set are produced.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorKind<T> {
    /// Middle-ε Cantor set on `[0, 1]`.
    MiddleCantor { epsilon: T },
    /// A finite list of gaps.
    ExplicitFinite,
    /// Attractor of homothetic contractions listed left to right.
    HomotheticIfs,
}

#[derive(Debug, Clone)]
enum Repr<T> {
    Finite(FiniteCutout<T>),
    Ifs(IfsCutout<T>),
}

/// A compact subset of the line given by a cut-out construction.
#[derive(Debug, Clone)]
pub struct CutOutSet<T> {
    kind: GeneratorKind<T>,
    repr: Repr<T>,
    prefix_cache: Arc<Mutex<Vec<Gap<T>>>>,
}

impl<T: Scalar> PartialEq for CutOutSet<T> {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && match (&self.repr, &other.repr) {
                (Repr::Finite(a), Repr::Finite(b)) => a == b,
                (Repr::Ifs(a), Repr::Ifs(b)) => a == b,
                _ => false,
            }
    }
}

/// Result of [`CutOutSet::thickness`]: the enclosure plus, when known, the
/// gap attaining the infimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ThicknessReport<T> {
    pub enclosure: Enclosure<T>,
    pub argmin: Option<Gap<T>>,
}

impl<T: Scalar> CutOutSet<T> {
    fn from_repr(kind: GeneratorKind<T>, repr: Repr<T>) -> Self {
        CutOutSet { kind, repr, prefix_cache: Arc::new(Mutex::new(Vec::new())) }
    }

    /// The middle-ε Cantor set `M_ε` on `[0, 1]`.
    pub fn middle_cantor(epsilon: T) -> Result<Self> {
        if !(epsilon > T::zero() && epsilon < T::one()) {
            return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        let lambda = (T::one() - epsilon.clone()).half();
        let maps = vec![AffineMap::new(lambda.clone(), T::zero()), AffineMap::new(lambda.clone(), T::one() - lambda)];
        let ifs = IfsCutout::new(Interval::new(T::zero(), T::one()), maps)?;
        Ok(Self::from_repr(GeneratorKind::MiddleCantor { epsilon }, Repr::Ifs(ifs)))
    }

    /// A finite cut-out: `hull` with the open `gaps` removed.
    ///
    /// Gaps may share endpoints with each other or with the hull; the shared
    /// point then remains in the set as an isolated point.
    pub fn explicit(hull: Interval<T>, gaps: Vec<Interval<T>>) -> Result<Self> {
        let finite = FiniteCutout::new(hull, gaps)?;
        Ok(Self::from_repr(GeneratorKind::ExplicitFinite, Repr::Finite(finite)))
    }

    /// The attractor of `maps` (each `x -> ratio * x + offset`) inside `hull`.
    ///
    /// Maps must be listed left to right, have ratios in `(0, 1]`, send the
    /// hull into itself with pairwise disjoint images, and the outermost
    /// images must reach the hull endpoints.
    pub fn ifs(hull: Interval<T>, maps: Vec<AffineMap<T>>) -> Result<Self> {
        let ifs = IfsCutout::new(hull, maps)?;
        Ok(Self::from_repr(GeneratorKind::HomotheticIfs, Repr::Ifs(ifs)))
    }

    pub fn kind(&self) -> &GeneratorKind<T> {
        &self.kind
    }

    pub fn hull(&self) -> Interval<T> {
        match &self.repr {
            Repr::Finite(f) => f.hull.clone(),
            Repr::Ifs(s) => s.hull.clone(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.repr, Repr::Finite(_))
    }

    /// The contraction list for self-similar sets.
    pub fn maps(&self) -> Option<&[AffineMap<T>]> {
        match &self.repr {
            Repr::Ifs(s) => Some(&s.maps),
            Repr::Finite(_) => None,
        }
    }

    /// Explicit gap list in canonical order (finite sets only).
    pub fn finite_gaps(&self) -> Option<&[Gap<T>]> {
        match &self.repr {
            Repr::Finite(f) => Some(&f.gaps),
            Repr::Ifs(_) => None,
        }
    }

    /// Whether the set has no gaps at all.
    pub fn is_gapless(&self) -> bool {
        match &self.repr {
            Repr::Finite(f) => f.gaps.is_empty(),
            Repr::Ifs(s) => s.stage_gaps.is_empty(),
        }
    }

    /// The first `count` gaps in canonical order.
    pub fn enumerate_gaps(&self, count: usize) -> Result<Vec<Gap<T>>> {
        if count == 0 {
            return Err(Error::Domain("count must be at least 1".into()));
        }
        match &self.repr {
            Repr::Finite(f) => {
                if f.gaps.len() < count {
                    return Err(Error::Exhausted { available: f.gaps.len(), requested: count });
                }
                Ok(f.gaps[..count].to_vec())
            }
            Repr::Ifs(s) => {
                if s.stage_gaps.is_empty() {
                    return Err(Error::Exhausted { available: 0, requested: count });
                }
                let mut cache = self.prefix_cache.lock().expect("gap cache poisoned");
                if cache.len() < count {
                    *cache = s.canonical_gaps(count);
                }
                Ok(cache[..count].to_vec())
            }
        }
    }

    /// The largest gap, if any.
    pub fn largest_gap(&self) -> Option<Gap<T>> {
        match &self.repr {
            Repr::Finite(f) => f.gaps.first().cloned(),
            Repr::Ifs(s) => s.canonical_gaps(1).into_iter().next(),
        }
    }

    /// Newhouse thickness `inf_n min(|L_n|, |R_n|) / |G_n|`.
    ///
    /// Finite cut-outs and self-similar generators are resolved exactly; the
    /// `depth` argument is accepted for interface stability and only bounds
    /// work for generators that cannot be resolved in closed form (none at
    /// present).
    pub fn thickness(&self, depth: usize) -> Enclosure<T> {
        self.thickness_report(depth).enclosure
    }

    pub fn thickness_report(&self, _depth: usize) -> ThicknessReport<T> {
        match &self.repr {
            Repr::Finite(f) => f.thickness(),
            Repr::Ifs(s) => {
                if let GeneratorKind::MiddleCantor { epsilon } = &self.kind {
                    let closed = (T::one() - epsilon.clone()) / (T::two() * epsilon.clone());
                    let argmin = s.stage_gaps.first().map(|g| Gap::new(g.0.clone(), g.1.clone(), 1));
                    return ThicknessReport { enclosure: Enclosure::exact(closed), argmin };
                }
                s.thickness()
            }
        }
    }

    /// Canonical bridges `(L, R)` of a gap of this set.
    ///
    /// Returns `None` if `gap` is not a gap of the set.
    pub fn bridges(&self, gap: &Gap<T>) -> Option<(Interval<T>, Interval<T>)> {
        match &self.repr {
            Repr::Finite(f) => f.bridges_of(gap),
            Repr::Ifs(s) => s.bridges_of(gap),
        }
    }

    /// The canonically first gap meeting the closed interval `iv`.
    pub fn first_gap_meeting(&self, iv: &Interval<T>) -> Option<Gap<T>> {
        match &self.repr {
            Repr::Finite(f) => f.gaps.iter().find(|g| g.meets_closed(iv)).cloned(),
            Repr::Ifs(s) => s.first_gap_meeting(iv),
        }
    }

    /// Whether the closed interval `iv` contains at least one point of the set.
    pub fn meets(&self, iv: &Interval<T>) -> bool {
        let hull = self.hull();
        if !hull.intersects(iv) {
            return false;
        }
        match self.first_gap_meeting(iv) {
            None => true,
            Some(g) => !(g.left() < &iv.left && &iv.right < g.right()),
        }
    }

    /// `aC + b`.
    pub fn homothety(&self, a: &T, b: &T) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Domain("homothety ratio must be non-zero".into()));
        }
        if a.is_one() && b.is_zero() {
            return Ok(self.clone());
        }
        match &self.repr {
            Repr::Finite(f) => {
                let hull = f.hull.map_affine(a, b);
                let gaps = f.gaps.iter().map(|g| g.interval.map_affine(a, b)).collect();
                Self::explicit(hull, gaps)
            }
            Repr::Ifs(s) => {
                let mapped = s.homothety(a, b)?;
                Ok(Self::from_repr(GeneratorKind::HomotheticIfs, Repr::Ifs(mapped)))
            }
        }
    }

    /// Closed intervals left after removing every gap of stage `<= depth`
    /// (all gaps for finite sets), sorted left to right.
    pub fn truncate_to_intervals(&self, depth: usize) -> Vec<Interval<T>> {
        match &self.repr {
            Repr::Finite(f) => f.components(),
            Repr::Ifs(s) => s.stage_intervals(depth),
        }
    }

    /// Membership of `x` in the stage-`depth` truncation, without
    /// materializing it.
    pub fn truncation_contains(&self, x: &T, depth: usize) -> bool {
        match &self.repr {
            Repr::Finite(f) => f.contains(x),
            Repr::Ifs(s) => s.truncation_contains(x, depth),
        }
    }

    /// Shortest gap among construction stages `1..=stage` (finite sets: the
    /// shortest gap overall).
    pub fn min_gap_length_through_stage(&self, stage: usize) -> Option<T> {
        match &self.repr {
            Repr::Finite(f) => f.gaps.last().map(Gap::length),
            Repr::Ifs(s) => s.min_gap_length_through_stage(stage),
        }
    }

    /// Shortest construction interval at `stage` (finite sets: the shortest
    /// component).
    pub fn min_interval_length_at_stage(&self, stage: usize) -> T {
        match &self.repr {
            Repr::Finite(f) => f
                .components()
                .into_iter()
                .map(|c| c.length())
                .fold(None, |acc: Option<T>, l| Some(acc.map_or(l.clone(), |a| crate::scalar::min_of(a, l))))
                .unwrap_or_else(T::zero),
            Repr::Ifs(s) => s.min_interval_length_at_stage(stage),
        }
    }

    /// Exhaustive, independent thickness route for self-similar sets: the
    /// thickness of the finite cut-out keeping every gap of stage `<= depth`.
    ///
    /// Every ratio of that truncation is also a ratio of the full set, so
    /// the result is an upper bound for [`CutOutSet::thickness`].
    pub fn truncated_cutout(&self, depth: usize) -> Result<CutOutSet<T>> {
        match &self.repr {
            Repr::Finite(_) => Ok(self.clone()),
            Repr::Ifs(s) => {
                let gaps = s.gaps_through_stage(depth).into_iter().map(|g| g.interval).collect();
                Self::explicit(s.hull.clone(), gaps)
            }
        }
    }
}

impl<T: Scalar> Locate<T> for CutOutSet<T> {
    fn hull(&self) -> Interval<T> {
        CutOutSet::hull(self)
    }

    fn locate(&self, x: &T, resolution: &T) -> Location<T> {
        match &self.repr {
            Repr::Finite(f) => f.locate(x),
            Repr::Ifs(s) => s.locate(x, resolution),
        }
    }
}

/// Sort helper for `PartialOrd` scalars.
pub fn cmp_scalar<T: Scalar>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Convenience: `make_middle_cantor`.
pub fn make_middle_cantor<T: Scalar>(epsilon: T) -> Result<CutOutSet<T>> {
    CutOutSet::middle_cantor(epsilon)
}

/// Convenience: `make_explicit_cutout`.
pub fn make_explicit_cutout<T: Scalar>(hull: Interval<T>, gaps: Vec<Interval<T>>) -> Result<CutOutSet<T>> {
    CutOutSet::explicit(hull, gaps)
}
