//! Point location in cut-out sets and cheap views of them.

use crate::interval::{Gap, Interval};
use crate::scalar::Scalar;

/// Where a point sits relative to a compact set.
#[derive(Debug, Clone, PartialEq)]
pub enum Location<T> {
    /// Outside the convex hull.
    Outside,
    /// Certified member of the set.
    InSet,
    /// Inside this gap.
    InGap(Gap<T>),
    /// Undecided: the point lies in this construction interval, which is
    /// shorter than the requested resolution.
    Near(Interval<T>),
}

/// A compact set that can classify points.
pub trait Locate<T: Scalar> {
    fn hull(&self) -> Interval<T>;

    /// Classifies `x`, giving up with [`Location::Near`] once the enclosing
    /// construction interval is shorter than `resolution`.
    fn locate(&self, x: &T, resolution: &T) -> Location<T>;
}

impl<T: Scalar, L: Locate<T> + ?Sized> Locate<T> for &L {
    fn hull(&self) -> Interval<T> {
        (**self).hull()
    }

    fn locate(&self, x: &T, resolution: &T) -> Location<T> {
        (**self).locate(x, resolution)
    }
}

/// `C ∩ window`, where both window endpoints are points of `C`.
#[derive(Debug, Clone)]
pub struct Window<L, T> {
    pub inner: L,
    pub window: Interval<T>,
}

impl<T: Scalar, L: Locate<T>> Locate<T> for Window<L, T> {
    fn hull(&self) -> Interval<T> {
        self.window.clone()
    }

    fn locate(&self, x: &T, resolution: &T) -> Location<T> {
        if !self.window.contains(x) {
            return Location::Outside;
        }
        match self.inner.locate(x, resolution) {
            Location::Near(iv) => Location::Near(iv.intersection(&self.window).unwrap_or(iv)),
            other => other,
        }
    }
}

/// `a·C + b` without rebuilding `C`.
#[derive(Debug, Clone)]
pub struct AffineView<L, T> {
    pub inner: L,
    pub a: T,
    pub b: T,
}

impl<T: Scalar, L: Locate<T>> Locate<T> for AffineView<L, T> {
    fn hull(&self) -> Interval<T> {
        self.inner.hull().map_affine(&self.a, &self.b)
    }

    fn locate(&self, x: &T, resolution: &T) -> Location<T> {
        let y = (x.clone() - self.b.clone()) / self.a.clone();
        let res = resolution.clone() / self.a.abs();
        match self.inner.locate(&y, &res) {
            Location::InGap(g) => {
                let iv = g.interval.map_affine(&self.a, &self.b);
                Location::InGap(Gap { interval: iv, depth: g.depth })
            }
            Location::Near(iv) => Location::Near(iv.map_affine(&self.a, &self.b)),
            other => other,
        }
    }
}
