//! Closed intervals, open gaps and certified enclosures on the line.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Scalar;

/// Closed interval `[left, right]`; singletons are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval<T> {
    pub left: T,
    pub right: T,
}

impl<T: Scalar> Interval<T> {
    /// Panics if `left > right`.
    pub fn new(left: T, right: T) -> Self {
        assert!(left <= right, "interval endpoints out of order: {left} > {right}");
        Interval { left, right }
    }

    pub fn try_new(left: T, right: T) -> Option<Self> {
        (left <= right).then_some(Interval { left, right })
    }

    pub fn point(x: T) -> Self {
        Interval { left: x.clone(), right: x }
    }

    pub fn length(&self) -> T {
        self.right.clone() - self.left.clone()
    }

    pub fn midpoint(&self) -> T {
        (self.left.clone() + self.right.clone()).half()
    }

    pub fn is_degenerate(&self) -> bool {
        self.left == self.right
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.left <= x && x <= &self.right
    }

    pub fn contains_interval(&self, other: &Interval<T>) -> bool {
        self.left <= other.left && other.right <= self.right
    }

    pub fn intersects(&self, other: &Interval<T>) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    pub fn intersection(&self, other: &Interval<T>) -> Option<Interval<T>> {
        let left = crate::scalar::max_of(self.left.clone(), other.left.clone());
        let right = crate::scalar::min_of(self.right.clone(), other.right.clone());
        Interval::try_new(left, right)
    }

    /// Image under `x -> a x + b` (endpoints swap when `a < 0`).
    pub fn map_affine(&self, a: &T, b: &T) -> Interval<T> {
        let l = a.clone() * self.left.clone() + b.clone();
        let r = a.clone() * self.right.clone() + b.clone();
        if l <= r {
            Interval { left: l, right: r }
        } else {
            Interval { left: r, right: l }
        }
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

/// A bounded open complementary interval of a compact set.
///
/// `depth` is the construction stage the gap was removed at (1 for the
/// first stage of a lazy generator, 0 for unstructured finite cut-outs).
#[derive(Debug, Clone, PartialEq)]
pub struct Gap<T> {
    pub interval: Interval<T>,
    pub depth: usize,
}

impl<T: Scalar> Gap<T> {
    pub fn new(left: T, right: T, depth: usize) -> Self {
        assert!(left < right, "gaps must be non-empty open intervals");
        Gap { interval: Interval { left, right }, depth }
    }

    pub fn left(&self) -> &T {
        &self.interval.left
    }

    pub fn right(&self) -> &T {
        &self.interval.right
    }

    pub fn length(&self) -> T {
        self.interval.length()
    }

    /// Open-interval membership.
    pub fn contains(&self, x: &T) -> bool {
        self.left() < x && x < self.right()
    }

    /// Whether the open gap meets the closed interval `iv`.
    pub fn meets_closed(&self, iv: &Interval<T>) -> bool {
        &iv.left < self.right() && self.left() < &iv.right
    }

    /// Canonical ordering: longer first, then leftmost first.
    pub fn canonical_cmp(&self, other: &Gap<T>) -> Ordering {
        canonical_cmp(&self.length(), self.left(), &other.length(), other.left())
    }
}

/// Compares `(length, left)` keys in canonical gap order.
pub(crate) fn canonical_cmp<T: Scalar>(len_a: &T, left_a: &T, len_b: &T, left_b: &T) -> Ordering {
    match len_b.partial_cmp(len_a).unwrap_or(Ordering::Equal) {
        Ordering::Equal => left_a.partial_cmp(left_b).unwrap_or(Ordering::Equal),
        ord => ord,
    }
}

impl<T: fmt::Display> fmt::Display for Gap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.interval.left, self.interval.right)
    }
}

/// A value in `[0, +inf]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Extended<T> {
    Finite(T),
    Infinity,
}

impl<T: Scalar> Extended<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }

    /// Product with the convention `inf * x = inf` for every `x >= 0`.
    pub fn mul(&self, other: &Extended<T>) -> Extended<T> {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a.clone() * b.clone()),
            _ => Extended::Infinity,
        }
    }

    pub fn ge(&self, x: &T) -> bool {
        match self {
            Extended::Finite(a) => a >= x,
            Extended::Infinity => true,
        }
    }

    pub fn lt(&self, x: &T) -> bool {
        !self.ge(x)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::Finite(a) => a.to_f64_lossy(),
            Extended::Infinity => f64::INFINITY,
        }
    }
}

impl<T: Scalar> PartialOrd for Extended<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.partial_cmp(b),
            (Extended::Finite(_), Extended::Infinity) => Some(Ordering::Less),
            (Extended::Infinity, Extended::Finite(_)) => Some(Ordering::Greater),
            (Extended::Infinity, Extended::Infinity) => Some(Ordering::Equal),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinity => f.write_str("inf"),
        }
    }
}

/// Certified bracket `[lo, hi]` for an infimum-type quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure<T> {
    pub lo: Extended<T>,
    pub hi: Extended<T>,
}

impl<T: Scalar> Enclosure<T> {
    pub fn exact(value: T) -> Self {
        Enclosure { lo: Extended::Finite(value.clone()), hi: Extended::Finite(value) }
    }

    pub fn infinite() -> Self {
        Enclosure { lo: Extended::Infinity, hi: Extended::Infinity }
    }

    pub fn new(lo: Extended<T>, hi: Extended<T>) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order");
        Enclosure { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact finite value, if the enclosure is a finite point.
    pub fn value(&self) -> Option<&T> {
        if self.is_exact() {
            self.lo.finite()
        } else {
            None
        }
    }

    pub fn contains(&self, x: &T) -> bool {
        self.lo.finite().is_none_or(|lo| lo <= x) && self.hi.ge(x)
    }

    /// Width `hi - lo`; `None` when either end is infinite and they differ.
    pub fn width(&self) -> Option<T> {
        match (&self.lo, &self.hi) {
            (Extended::Finite(a), Extended::Finite(b)) => Some(b.clone() - a.clone()),
            (Extended::Infinity, Extended::Infinity) => Some(T::zero()),
            _ => None,
        }
    }

    /// Product of two non-negative enclosures.
    pub fn mul(&self, other: &Enclosure<T>) -> Enclosure<T> {
        Enclosure { lo: self.lo.mul(&other.lo), hi: self.hi.mul(&other.hi) }
    }

    /// `Some(true)` if the whole enclosure is `>= x`, `Some(false)` if it is
    /// entirely `< x`, `None` if it straddles `x`.
    pub fn compare_ge(&self, x: &T) -> Option<bool> {
        if self.lo.ge(x) {
            Some(true)
        } else if self.hi.lt(x) {
            Some(false)
        } else {
            None
        }
    }
}

impl<T: fmt::Display + Scalar> fmt::Display for Enclosure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{} (exact)", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}
