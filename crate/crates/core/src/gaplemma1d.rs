//! Newhouse's Gap Lemma on the line: hypothesis checks, the linked-gap
//! iteration producing intersection points, and the sharpness examples.

use crate::core1d::{CutOutSet, Locate, Location};
use crate::error::{Error, Result};
use crate::interval::{Enclosure, Gap, Interval};
use crate::scalar::{max_of, min_of, Scalar};

/// Default cap on the number of linked pairs visited.
pub const DEFAULT_ITERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct GapLemmaReport<T> {
    pub hulls_intersect: bool,
    pub neither_in_gap: bool,
    pub thickness_product_ok: bool,
    pub product_enclosure: Enclosure<T>,
    /// The hull gap, containing gap or thinnest gap behind a failed check.
    pub offending_witness: Option<Interval<T>>,
}

impl<T: Scalar> GapLemmaReport<T> {
    pub fn passes(&self) -> bool {
        self.hulls_intersect && self.neither_in_gap && self.thickness_product_ok
    }
}

/// Which of the two sets a gap came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Owner {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Two linked gaps. The `side` endpoint of the `owner`'s gap lies inside
/// the other gap, together with its whole bridge.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkedPair<T> {
    pub gap1: Gap<T>,
    pub gap2: Gap<T>,
    pub owner: Owner,
    pub side: Side,
}

/// `point` lies in the first set and within `error_bound` of the second.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionWitness<T> {
    pub point: T,
    pub error_bound: T,
    pub trail: Vec<LinkedPair<T>>,
}

/// Whether two open intervals each contain exactly one endpoint of the other.
pub fn is_linked<T: Scalar>(a: &Interval<T>, b: &Interval<T>) -> bool {
    let inside = |iv: &Interval<T>, x: &T| &iv.left < x && x < &iv.right;
    (inside(a, &b.left) != inside(a, &b.right)) && (inside(b, &a.left) != inside(b, &a.right))
}

/// Whether the compact set with hull `inner` lies in a gap of `outer`.
fn inside_gap<T: Scalar, L: Locate<T>>(inner: &Interval<T>, outer: &L) -> Option<Gap<T>> {
    let res = inner.length().half();
    match outer.locate(&inner.left, &res) {
        Location::InGap(g) if &inner.right < g.right() => Some(g),
        _ => None,
    }
}

pub fn check_gap_lemma<T: Scalar>(c1: &CutOutSet<T>, c2: &CutOutSet<T>, depth: usize) -> Result<GapLemmaReport<T>> {
    let (h1, h2) = (c1.hull(), c2.hull());
    let t1 = c1.thickness_report(depth);
    let t2 = c2.thickness_report(depth);
    let product = t1.enclosure.mul(&t2.enclosure);
    let product_ok = match product.compare_ge(&T::one()) {
        Some(ok) => ok,
        None => return Err(Error::Inconclusive(format!("thickness product {product} straddles 1"))),
    };
    let hulls_intersect = h1.intersects(&h2);
    let in_gap = if hulls_intersect { inside_gap(&h1, c2).or_else(|| inside_gap(&h2, c1)) } else { None };

    let offending_witness = if !hulls_intersect {
        let (l, r) = if h1.right < h2.left { (&h1.right, &h2.left) } else { (&h2.right, &h1.left) };
        Some(Interval::new(l.clone(), r.clone()))
    } else if let Some(g) = &in_gap {
        Some(g.interval.clone())
    } else if !product_ok {
        let thinner = if t1.enclosure.lo <= t2.enclosure.lo { &t1 } else { &t2 };
        thinner.argmin.as_ref().map(|g| g.interval.clone()).or_else(|| Some(h1.clone()))
    } else {
        None
    };
    Ok(GapLemmaReport {
        hulls_intersect,
        neither_in_gap: in_gap.is_none(),
        thickness_product_ok: product_ok,
        product_enclosure: product,
        offending_witness,
    })
}

/// A point of `C1` within `tol` of `C2`, built by following linked gaps.
pub fn find_intersection<T: Scalar>(c1: &CutOutSet<T>, c2: &CutOutSet<T>, tol: &T) -> Result<IntersectionWitness<T>> {
    find_intersection_capped(c1, c2, tol, DEFAULT_ITERATION_CAP)
}

pub fn find_intersection_capped<T: Scalar>(
    c1: &CutOutSet<T>,
    c2: &CutOutSet<T>,
    tol: &T,
    cap: usize,
) -> Result<IntersectionWitness<T>> {
    let report = check_gap_lemma(c1, c2, 1)?;
    if !report.passes() {
        return Err(Error::Hypothesis(describe_failure(&report)));
    }
    linked_gap_search(c1, c2, tol, cap)
}

fn describe_failure<T: Scalar>(r: &GapLemmaReport<T>) -> String {
    if !r.hulls_intersect {
        "convex hulls are disjoint".into()
    } else if !r.neither_in_gap {
        "one set lies in a gap of the other".into()
    } else {
        format!("thickness product {} is below 1", r.product_enclosure)
    }
}

struct State<T> {
    /// Gap whose interior holds an endpoint of `q` and its bridge.
    p: Gap<T>,
    q: Gap<T>,
    /// Whether `p` is a gap of the first set.
    p_first: bool,
}

/// The linked-gap iteration, assuming the Gap Lemma hypotheses.
///
/// Works on any pair of locatable sets, so callers may pass windows and
/// affine images without rebuilding them.
pub fn linked_gap_search<T: Scalar, A: Locate<T>, B: Locate<T>>(
    c1: &A,
    c2: &B,
    tol: &T,
    cap: usize,
) -> Result<IntersectionWitness<T>> {
    if tol <= &T::zero() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let (h1, h2) = (c1.hull(), c2.hull());
    let exact = |x: T, trail| Ok(IntersectionWitness { point: x, error_bound: T::zero(), trail });
    let res = tol.half();

    // first step: a hull endpoint of one set inside the hull of the other
    let (e, e_in_first) = if h1.contains(&h2.left) {
        (h2.left.clone(), false)
    } else if h1.contains(&h2.right) {
        (h2.right.clone(), false)
    } else if h2.contains(&h1.left) {
        (h1.left.clone(), true)
    } else {
        return Err(Error::Hypothesis("convex hulls are disjoint".into()));
    };
    // `e` belongs to one set; look for it in the other
    let g = match locate_in(c1, c2, !e_in_first, &e, &res) {
        Location::InSet => return exact(e, Vec::new()),
        Location::InGap(g) => g,
        Location::Near(iv) => return near_witness(c2, iv, &e, None, !e_in_first, &res, Vec::new()),
        Location::Outside => return Err(Error::Hypothesis("hull endpoint escaped".into())),
    };
    let other_hull = if e_in_first { &h1 } else { &h2 };
    // the endpoint of `g` lying inside the other hull
    let w = if other_hull.contains(g.left()) { g.left().clone() } else { g.right().clone() };
    if !other_hull.contains(&w) {
        return Err(Error::Hypothesis("one set lies in a gap of the other".into()));
    }
    let g_first = !e_in_first;
    let q = match locate_in(c1, c2, !g_first, &w, &res) {
        Location::InSet => return exact(w, Vec::new()),
        Location::InGap(q) => q,
        Location::Near(iv) => return near_witness(c2, iv, &w, None, !g_first, &res, Vec::new()),
        Location::Outside => return Err(Error::Hypothesis("gap endpoint escaped".into())),
    };
    let mut st = State { p: g, q, p_first: g_first };
    let mut trail = Vec::new();

    for _ in 0..cap {
        if !is_linked(&st.p.interval, &st.q.interval) {
            return Err(Error::Hypothesis(format!("gaps {} and {} are not linked", st.p, st.q)));
        }
        trail.push(linked_pair(&st));
        let size = st.p.length() + st.q.length();
        if &size < tol {
            let (g1, g2) = if st.p_first { (&st.p, &st.q) } else { (&st.q, &st.p) };
            let point = endpoint_inside(g1, g2);
            return Ok(IntersectionWitness { point, error_bound: size, trail });
        }
        // endpoint of q outside p; it belongs to q's set
        let u = if st.p.contains(st.q.left()) { st.q.right().clone() } else { st.q.left().clone() };
        let res = min_of(tol.clone(), size).half();
        match locate_in(c1, c2, st.p_first, &u, &res) {
            Location::InSet => return exact(u, trail),
            Location::InGap(next) => {
                st = State { p: st.q, q: next, p_first: !st.p_first };
            }
            Location::Near(iv) => {
                let q = st.q.clone();
                return near_witness(c2, iv, &u, Some(&q), st.p_first, &res, trail);
            }
            Location::Outside => return Err(Error::Hypothesis("bridge left the convex hull".into())),
        }
    }
    Err(Error::Nontermination(cap))
}

fn locate_in<T: Scalar, A: Locate<T>, B: Locate<T>>(c1: &A, c2: &B, first: bool, x: &T, res: &T) -> Location<T> {
    if first {
        c1.locate(x, res)
    } else {
        c2.locate(x, res)
    }
}

/// `u` (a point of the other set) fell in a construction interval `iv` of
/// the set searched, which was too short to resolve. An endpoint of `iv` is
/// in that set; of the two, the one lying deepest in the second set wins
/// (in it, or else in its shortest gap), then the one facing `toward` (the
/// gap `u` bounds), then the one closer to `u`.
fn near_witness<T: Scalar, B: Locate<T>>(
    c2: &B,
    iv: Interval<T>,
    u: &T,
    toward: Option<&Gap<T>>,
    iv_in_first: bool,
    res: &T,
    trail: Vec<LinkedPair<T>>,
) -> Result<IntersectionWitness<T>> {
    let bound = iv.length();
    if iv_in_first {
        let prefer_right = match toward {
            Some(q) => q.left() >= u,
            None => (iv.right.clone() - u.clone()) <= (u.clone() - iv.left.clone()),
        };
        let (first, second) = if prefer_right { (iv.right, iv.left) } else { (iv.left, iv.right) };
        let depth = |x: &T| match c2.locate(x, res) {
            Location::InSet | Location::Near(_) => Some(T::zero()),
            Location::InGap(g) => Some(g.length()),
            Location::Outside => None,
        };
        let better = match (depth(&first), depth(&second)) {
            (Some(a), Some(b)) => b < a,
            (None, Some(_)) => true,
            _ => false,
        };
        let point = if better { second } else { first };
        Ok(IntersectionWitness { point, error_bound: bound, trail })
    } else {
        // `u` itself is a point of the first set
        Ok(IntersectionWitness { point: u.clone(), error_bound: bound, trail })
    }
}

fn endpoint_inside<T: Scalar>(g1: &Gap<T>, g2: &Gap<T>) -> T {
    if g2.contains(g1.left()) {
        g1.left().clone()
    } else {
        g1.right().clone()
    }
}

fn linked_pair<T: Scalar>(st: &State<T>) -> LinkedPair<T> {
    // the endpoint of q inside p carries its bridge into p
    let side = if st.p.contains(st.q.left()) { Side::Left } else { Side::Right };
    let (gap1, gap2) = if st.p_first { (st.p.clone(), st.q.clone()) } else { (st.q.clone(), st.p.clone()) };
    let owner = if st.p_first { Owner::Second } else { Owner::First };
    LinkedPair { gap1, gap2, owner, side }
}

/// Pairwise intersections of the two depth-`depth` interval covers.
pub fn intersect_truncated<T: Scalar>(c1: &CutOutSet<T>, c2: &CutOutSet<T>, depth: usize) -> Vec<Interval<T>> {
    intersect_sorted(&c1.truncate_to_intervals(depth), &c2.truncate_to_intervals(depth))
}

/// Intersection of two sorted lists of disjoint closed intervals.
pub fn intersect_sorted<T: Scalar>(a: &[Interval<T>], b: &[Interval<T>]) -> Vec<Interval<T>> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        let lo = max_of(a[i].left.clone(), b[j].left.clone());
        let hi = min_of(a[i].right.clone(), b[j].right.clone());
        if lo <= hi {
            out.push(Interval::new(lo, hi));
        }
        if a[i].right < b[j].right {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Two disjoint sets of thickness `tau1` and `tau2`, each with two
/// components, whose hulls overlap and neither lies in a gap of the other.
pub fn sharpness_counterexample<T: Scalar>(tau1: &T, tau2: &T) -> Result<(CutOutSet<T>, CutOutSet<T>)> {
    if tau1 <= &T::zero() || tau2 <= &T::zero() {
        return Err(Error::Domain("thickness values must be positive".into()));
    }
    if (tau1.clone() * tau2.clone()) >= T::one() {
        return Err(Error::Domain("the thickness product must be below 1".into()));
    }
    let one = T::one();
    let inv = one.clone() / tau1.clone();
    // (1/tau1 - 2 eps) / (1 + 2 eps) = tau2
    let eps = (inv.clone() - tau2.clone()) / (T::two() * (one.clone() + tau2.clone()));
    let c1 = CutOutSet::explicit(
        Interval::new(T::zero(), T::two() + inv.clone()),
        vec![Interval::new(one.clone(), one.clone() + inv.clone())],
    )?;
    let c2 = CutOutSet::explicit(
        Interval::new(eps.clone() - inv.clone(), one.clone() + inv - eps.clone()),
        vec![Interval::new(-eps.clone(), one + eps)],
    )?;
    assert_eq!(c1.thickness(1).value(), Some(tau1));
    assert_eq!(c2.thickness(1).value(), Some(tau2));
    assert!(intersect_truncated(&c1, &c2, 0).is_empty());
    Ok((c1, c2))
}
