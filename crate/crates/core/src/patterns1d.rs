//! Distances, arithmetic progressions and homothetic copies of patterns in
//! thick compact subsets of the line.

use std::cmp::Ordering;

use crate::core1d::{cmp_scalar, view::AffineView, view::Window, CutOutSet};
use crate::error::{Error, Result};
use crate::gaplemma1d::{find_intersection, linked_gap_search, IntersectionWitness, DEFAULT_ITERATION_CAP};
use crate::interval::Interval;
use crate::scalar::Scalar;

/// A finite pattern `P = {p_1 < ... < p_n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern<T> {
    points: Vec<T>,
}

impl<T: Scalar> Pattern<T> {
    /// Sorts the points; fails on an empty list or repeated points.
    pub fn new(mut points: Vec<T>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain("a pattern needs at least one point".into()));
        }
        points.sort_by(cmp_scalar);
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("pattern points must be distinct".into()));
        }
        Ok(Pattern { points })
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `start, start + step, ..., start + (length - 1) step`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApWitness<T> {
    pub start: T,
    pub step: T,
    pub length: usize,
}

impl<T: Scalar> ApWitness<T> {
    pub fn terms(&self) -> Vec<T> {
        let mut t = self.start.clone();
        let mut out = Vec::with_capacity(self.length);
        for _ in 0..self.length {
            out.push(t.clone());
            t = t + self.step.clone();
        }
        out
    }
}

fn require_thick<T: Scalar>(c: &CutOutSet<T>) -> Result<()> {
    let tau = c.thickness(1);
    if tau.lo.lt(&T::one()) {
        return Err(Error::Domain(format!("thickness {tau} is below 1")));
    }
    Ok(())
}

/// A point `x` of `C` with `x + t` within the returned error bound of `C`.
pub fn distance_contains<T: Scalar>(c: &CutOutSet<T>, t: &T, tol: &T) -> Result<IntersectionWitness<T>> {
    if c.hull() != Interval::new(T::zero(), T::one()) {
        return Err(Error::Domain(format!("hull must be [0, 1], got {}", c.hull())));
    }
    require_thick(c)?;
    if t < &T::zero() || t > &T::one() {
        return Err(Error::Domain(format!("distance {t} outside [0, 1]")));
    }
    if t.is_zero() || t.is_one() {
        return Ok(IntersectionWitness { point: T::zero(), error_bound: T::zero(), trail: Vec::new() });
    }
    let shifted = c.homothety(&T::one(), &-t.clone())?;
    find_intersection(c, &shifted, tol)
}

/// A three-term progression in `C`, following the largest-gap argument.
///
/// The first two terms are exact points of `C`; the third is within the
/// returned bound of `C` (it is exact whenever the bound is zero).
pub fn find_3ap<T: Scalar>(c: &CutOutSet<T>, tol: &T) -> Result<(ApWitness<T>, T)> {
    require_thick(c)?;
    let hull = c.hull();
    if c.is_gapless() {
        let step = hull.length().half();
        return Ok((ApWitness { start: hull.left, step, length: 3 }, T::zero()));
    }
    let width = hull.length();
    let scale = T::one() / width.clone();
    let mut norm = c.homothety(&scale, &(-hull.left.clone() * scale.clone()))?;
    let mut g = norm.largest_gap().expect("set has gaps");
    let reflected = g.left() > &(T::one() - g.right().clone());
    if reflected {
        norm = norm.homothety(&-T::one(), &T::one())?;
        g = norm.largest_gap().expect("set has gaps");
    }
    let (a1, a2) = (g.left().clone(), g.right().clone());
    let minus_a =
        AffineView { inner: Window { inner: &norm, window: Interval::new(T::zero(), a1) }, a: -T::one(), b: T::zero() };
    let b_shift = AffineView {
        inner: Window { inner: &norm, window: Interval::new(a2.clone(), T::one()) },
        a: T::one(),
        b: -(T::two() * a2.clone()),
    };
    let ntol = tol.clone() * scale;
    let w = linked_gap_search(&minus_a, &b_shift, &ntol, DEFAULT_ITERATION_CAP)?;
    let x = w.point;
    let mut terms = [-x.clone(), a2.clone(), x + T::two() * a2];
    if reflected {
        for t in terms.iter_mut() {
            *t = T::one() - t.clone();
        }
        terms.reverse();
    }
    let back = |y: &T| hull.left.clone() + width.clone() * y.clone();
    let start = back(&terms[0]);
    let step = back(&terms[1]) - start.clone();
    Ok((ApWitness { start, step, length: 3 }, w.error_bound * width))
}

/// `floor(1/eps) + 1`, the longest progression length possible in `M_eps`.
pub fn ap_upper_bound_middle<T: Scalar>(eps: &T) -> Result<u64> {
    if !(eps > &T::zero() && eps < &T::one()) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let inv = (T::one() / eps.clone()).floor_int();
    inv.to_u64().map(|n| n + 1).ok_or_else(|| Error::Domain("1/epsilon too large".into()))
}

/// Sorted, deduplicated endpoints of the stage-`depth` construction
/// intervals; all of them belong to the set.
pub fn stage_endpoints<T: Scalar>(c: &CutOutSet<T>, depth: usize) -> Vec<T> {
    let mut pts: Vec<T> = c.truncate_to_intervals(depth).into_iter().flat_map(|i| [i.left, i.right]).collect();
    pts.dedup();
    pts
}

fn member<T: Scalar>(sorted: &[T], x: &T) -> bool {
    sorted.binary_search_by(|p| cmp_scalar(p, x)).is_ok()
}

/// Longest progression (capped at `max_len`) among stage-`depth`
/// endpoints. Ties prefer the larger step, then the smaller start.
pub fn longest_ap_truncated<T: Scalar>(c: &CutOutSet<T>, depth: usize, max_len: usize) -> Result<ApWitness<T>> {
    if depth < 1 || max_len < 3 {
        return Err(Error::Domain("need depth >= 1 and max_len >= 3".into()));
    }
    let pts = stage_endpoints(c, depth);
    let mut best: Option<ApWitness<T>> = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let step = pts[j].clone() - pts[i].clone();
            let mut len = 2;
            let mut next = pts[j].clone() + step.clone();
            while len < max_len && member(&pts, &next) {
                len += 1;
                next = next + step.clone();
            }
            let cand = ApWitness { start: pts[i].clone(), step, length: len };
            if better_ap(&cand, best.as_ref()) {
                best = Some(cand);
            }
        }
    }
    match best {
        Some(b) if b.length >= 3 => Ok(b),
        _ => Err(Error::NotFound("no progression of length 3 among the stage endpoints".into())),
    }
}

fn better_ap<T: Scalar>(a: &ApWitness<T>, b: Option<&ApWitness<T>>) -> bool {
    let Some(b) = b else { return true };
    match a.length.cmp(&b.length) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match cmp_scalar(&a.step, &b.step) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => a.start < b.start,
        },
    }
}

/// `c (1/eps) / log(1/eps)`.
pub fn bfs_lower_bound(eps: f64, c: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < (-1.0f64).exp()) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1/e), got {eps}")));
    }
    if c.is_nan() || c <= 0.0 {
        return Err(Error::Domain(format!("constant must be positive, got {c}")));
    }
    let inv = 1.0 / eps;
    Ok(c * inv / inv.ln())
}

fn capacity_constant() -> f64 {
    4f64.ln() / (4.0 * std::f64::consts::E * 720.0 * 720.0)
}

/// `floor(log 4 / (4 e 720^2) * tau / log tau)`, natural logarithms.
pub fn pattern_capacity(tau: f64) -> Result<u64> {
    if !tau.is_finite() || tau <= std::f64::consts::E {
        return Err(Error::Domain(format!("tau must exceed e, got {tau}")));
    }
    Ok((capacity_constant() * tau / tau.ln()).floor() as u64)
}

/// Parameters of the game inequality behind the capacity formula.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityParams {
    pub tau: f64,
    pub beta: f64,
    pub c: f64,
    pub alpha: f64,
    pub n: u64,
}

impl CapacityParams {
    pub fn new(n: u64, tau: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if !tau.is_finite() || tau <= 4.0 * std::f64::consts::E {
            return Err(Error::Domain(format!("tau must exceed 4e, got {tau}")));
        }
        let beta = 0.25;
        let alpha = 1.0 / (tau * beta);
        let c = 1.0 - 1.0 / (1.0 / alpha).ln();
        Ok(CapacityParams { tau, beta, c, alpha, n })
    }

    pub fn lhs(&self) -> f64 {
        self.n as f64 * self.alpha.powf(self.c)
    }

    pub fn rhs(&self) -> f64 {
        (1.0 - self.beta.powf(1.0 - self.c)) / (720.0 * 720.0)
    }
}

/// `n alpha^c <= (1 - beta^(1-c)) / 720^2` with `beta = 1/4`, `alpha = 4/tau`.
pub fn pattern_condition(n: u64, tau: f64) -> Result<bool> {
    let p = CapacityParams::new(n, tau)?;
    Ok(p.lhs() <= p.rhs())
}

/// Scale and shift `(lambda, x)` with `x + lambda P` inside the stage-`depth`
/// endpoints, largest `lambda` first, then smallest `x`.
pub fn find_homothetic_copy_truncated<T: Scalar>(c: &CutOutSet<T>, p: &Pattern<T>, depth: usize) -> Result<(T, T)> {
    if p.len() < 2 || depth < 1 {
        return Err(Error::Domain("need at least two pattern points and depth >= 1".into()));
    }
    let pts = stage_endpoints(c, depth);
    let pp = p.points();
    let dp = pp[1].clone() - pp[0].clone();
    let mut best: Option<(T, T)> = None;
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            if i == j {
                continue;
            }
            let lambda = (pts[j].clone() - pts[i].clone()) / dp.clone();
            let x = pts[i].clone() - lambda.clone() * pp[0].clone();
            if let Some((bl, bx)) = &best {
                if &lambda < bl || (&lambda == bl && &x >= bx) {
                    continue;
                }
            }
            if pp[2..].iter().all(|q| member(&pts, &(x.clone() + lambda.clone() * q.clone()))) {
                best = Some((lambda, x));
            }
        }
    }
    best.ok_or_else(|| Error::NotFound("no homothetic copy among the stage endpoints".into()))
}
