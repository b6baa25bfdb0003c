//! Hypotheses of the Gap Lemma for cube systems in `(R^d, dist_inf)`, the
//! directional distance corollary, and intersection checks on finite covers.
//!
//! Nothing here constructs a certified common point. Intersections are
//! verified through the covers `⋃ S_I`, `|I| = depth`, which must meet
//! whenever the sets do.

use crate::error::{Error, Result};
use crate::interval::{Enclosure, Extended};
use crate::scalar::Scalar;
use crate::setsrd::{thickness_rd, uniform_dense_check, ChildRule, CornerParams, CubeRd, CubeSystem, Node, PointRd};

#[derive(Debug, Clone, PartialEq)]
pub struct RdGapLemmaReport<T> {
    /// `tau_1 tau_2 >= 1/(1-2r)^2`.
    pub thickness_product_ok: bool,
    pub dense1_ok: bool,
    pub dense2_ok: bool,
    /// The depth cover of `C¹` meets `(1-2r) S²_∅` and
    /// `rad(S¹_∅) >= r rad(S²_∅)`.
    pub anchor_ok: bool,
    /// Some cube of the cover lies inside `(1-2r) S²_∅` (or, for explicit
    /// trees, a point of `C¹` does), which proves the intersection.
    pub anchor_certified: bool,
    pub r: T,
    pub product: Enclosure<T>,
    pub threshold: T,
}

impl<T> RdGapLemmaReport<T> {
    pub fn passes(&self) -> bool {
        self.thickness_product_ok && self.dense1_ok && self.dense2_ok && self.anchor_ok
    }
}

/// A direction normalized to `|v|_inf = 1` and a length `t >= 0` measured in
/// that normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionalQuery<T> {
    pub v: PointRd<T>,
    pub t: T,
}

impl<T: Scalar> DirectionalQuery<T> {
    pub fn new(v: PointRd<T>, t: T) -> Result<Self> {
        let n = v.norm_inf();
        if n.is_zero() {
            return Err(Error::Domain("direction must be non-zero".into()));
        }
        if t < T::zero() {
            return Err(Error::Domain(format!("t must be non-negative, got {t}")));
        }
        let v = v.scale(&(T::one() / n));
        Ok(DirectionalQuery { v, t })
    }

    /// The displacement `t v`.
    pub fn offset(&self) -> PointRd<T> {
        self.v.scale(&self.t)
    }

    /// Euclidean length of `t v`.
    pub fn euclidean_length(&self) -> f64 {
        let s: f64 = self.v.0.iter().map(|x| x.to_f64_lossy().powi(2)).sum();
        self.t.to_f64_lossy() * s.sqrt()
    }
}

/// `(1-2r)` times the cube, scaled about the origin.
pub fn shrunk_root<T: Scalar>(cube: &CubeRd<T>, r: &T) -> CubeRd<T> {
    let k = T::one() - r.clone() - r.clone();
    cube.map_affine(&k, &PointRd::origin(cube.dim()))
}

pub fn check_gap_lemma_rd<T: Scalar>(
    s1: &CubeSystem<T>,
    s2: &CubeSystem<T>,
    r: &T,
    depth: usize,
) -> Result<RdGapLemmaReport<T>> {
    if r <= &T::zero() || r.clone() + r.clone() >= T::one() {
        return Err(Error::Domain(format!("r must lie in (0, 1/2), got {r}")));
    }
    if s1.dim() != s2.dim() {
        return Err(Error::Domain(format!("dimensions differ: {} and {}", s1.dim(), s2.dim())));
    }
    let k = T::one() - r.clone() - r.clone();
    let threshold = T::one() / (k.clone() * k);
    let product = thickness_rd(s1, depth).mul(&thickness_rd(s2, depth));
    let thickness_product_ok = product
        .compare_ge(&threshold)
        .ok_or_else(|| Error::Inconclusive(format!("thickness product {product} straddles {threshold}")))?;
    let dense_depth = depth.max(1);
    let dense1_ok = uniform_dense_check(s1, r, dense_depth)?.dense;
    let dense2_ok = uniform_dense_check(s2, r, dense_depth)?.dense;
    let target = shrunk_root(s2.root(), r);
    let (meets, certified) = anchor(s1, &target, depth);
    let radius_ok = s1.root().radius >= r.clone() * s2.root().radius.clone();
    Ok(RdGapLemmaReport {
        thickness_product_ok,
        dense1_ok,
        dense2_ok,
        anchor_ok: meets && radius_ok,
        anchor_certified: certified && radius_ok,
        r: r.clone(),
        product,
        threshold,
    })
}

fn anchor<T: Scalar>(system: &CubeSystem<T>, target: &CubeRd<T>, depth: usize) -> (bool, bool) {
    if let Some(points) = system.points() {
        let hit = points.iter().any(|p| target.contains_point(p));
        return (hit, hit);
    }
    let mut meets = false;
    let mut stack = vec![system.root_node()];
    while let Some(node) = stack.pop() {
        if !node.cube.intersects(target) {
            continue;
        }
        if target.contains_cube(&node.cube) {
            return (true, true);
        }
        if node.level() >= depth {
            meets = true;
            continue;
        }
        let mut kids: Vec<(T, Node<'_, T>)> =
            system.children(&node).into_iter().map(|k| (k.cube.center.dist_inf(&target.center), k)).collect();
        kids.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
        stack.extend(kids.into_iter().map(|(_, k)| k));
    }
    (meets, false)
}

/// A pair of level-`depth` cubes, one from each system, that meet.
pub fn intersect_truncated_rd<T: Scalar>(
    s1: &CubeSystem<T>,
    s2: &CubeSystem<T>,
    depth: usize,
) -> Option<(CubeRd<T>, CubeRd<T>)> {
    if s1.dim() != s2.dim() {
        return None;
    }
    if let (ChildRule::CornerCantor(p1), ChildRule::CornerCantor(p2)) = (s1.rule(), s2.rule()) {
        return corner_pair(s1.root(), p1, s2.root(), p2, depth);
    }
    let mut stack: Vec<(Node<'_, T>, Node<'_, T>)> = vec![(s1.root_node(), s2.root_node())];
    while let Some((a, b)) = stack.pop() {
        if !a.cube.intersects(&b.cube) {
            continue;
        }
        if a.level() >= depth {
            return Some((a.cube, b.cube));
        }
        let kb = s2.children(&b);
        let mut pairs: Vec<(T, Node<'_, T>, Node<'_, T>)> = Vec::new();
        for x in s1.children(&a) {
            for y in &kb {
                if x.cube.intersects(&y.cube) {
                    pairs.push((x.cube.center.dist_inf(&y.cube.center), x.clone(), y.clone()));
                }
            }
        }
        pairs.sort_by(|p, q| q.0.partial_cmp(&p.0).unwrap_or(std::cmp::Ordering::Equal));
        stack.extend(pairs.into_iter().map(|(_, x, y)| (x, y)));
    }
    None
}

// Level-k cubes of a corner Cantor system are products of level-k intervals
// of one Cantor set per axis, so two such covers meet iff they meet on every
// axis.
fn corner_pair<T: Scalar>(
    c1: &CubeRd<T>,
    p1: &CornerParams<T>,
    c2: &CubeRd<T>,
    p2: &CornerParams<T>,
    depth: usize,
) -> Option<(CubeRd<T>, CubeRd<T>)> {
    let mut a = Vec::with_capacity(c1.dim());
    let mut b = Vec::with_capacity(c1.dim());
    for i in 0..c1.dim() {
        let (x, y) = interval_pair((c1.lo(i), c1.hi(i)), p1, (c2.lo(i), c2.hi(i)), p2, depth)?;
        a.push(x);
        b.push(y);
    }
    let cube = |v: Vec<(T, T)>| {
        let radius = (v[0].1.clone() - v[0].0.clone()).half();
        let center = PointRd(v.into_iter().map(|(l, h)| (l + h).half()).collect());
        CubeRd::new(center, radius).expect("positive radius")
    };
    Some((cube(a), cube(b)))
}

type Iv<T> = (T, T);

fn interval_children<T: Scalar>(iv: &Iv<T>, p: &CornerParams<T>) -> Vec<Iv<T>> {
    let rad = (iv.1.clone() - iv.0.clone()).half();
    let len = p.ell.clone() * rad.clone();
    let pitch = (p.ell.clone() + p.g.clone()) * rad;
    (0..p.n)
        .map(|k| {
            let lo = iv.0.clone() + pitch.clone() * T::from_usize(k).unwrap();
            (lo.clone(), lo + len.clone())
        })
        .collect()
}

fn interval_pair<T: Scalar>(
    root1: Iv<T>,
    p1: &CornerParams<T>,
    root2: Iv<T>,
    p2: &CornerParams<T>,
    depth: usize,
) -> Option<(Iv<T>, Iv<T>)> {
    let meets = |a: &Iv<T>, b: &Iv<T>| a.0 <= b.1 && b.0 <= a.1;
    let mut stack = vec![(root1, root2, 0usize)];
    while let Some((a, b, level)) = stack.pop() {
        if !meets(&a, &b) {
            continue;
        }
        if level >= depth {
            return Some((a, b));
        }
        let kb = interval_children(&b, p2);
        for x in interval_children(&a, p1).into_iter().rev() {
            for y in kb.iter().rev() {
                if meets(&x, y) {
                    stack.push((x.clone(), y.clone(), level + 1));
                }
            }
        }
    }
    None
}

/// `a = 2r/(1-2r)`, the length of the guaranteed interval of directional
/// distances, after checking the corollary's hypotheses.
pub fn directional_interval<T: Scalar>(system: &CubeSystem<T>, r: &T) -> Result<T> {
    let mut failed = Vec::new();
    if system.root() != &CubeRd::unit(system.dim()) {
        failed.push(format!("root is {}, not B[0,1]", system.root()));
    }
    let third = T::ratio(1, 3);
    if r <= &T::zero() || r > &third {
        failed.push(format!("r = {r} is outside (0, 1/3]"));
    }
    if failed.is_empty() || (r > &T::zero() && r < &T::one()) {
        let k = T::one() - r.clone() - r.clone();
        if k > T::zero() {
            let need = T::one() / k;
            let tau = thickness_rd(system, system.exact_depth() + 1);
            if !tau.lo.ge(&need) {
                failed.push(format!("thickness {tau} is below 1/(1-2r) = {need}"));
            }
        }
        if r > &T::zero() && r < &T::one() && !uniform_dense_check(system, r, system.exact_depth())?.dense {
            failed.push(format!("the system is not {r}-uniformly dense"));
        }
    }
    if !failed.is_empty() {
        return Err(Error::Hypothesis(failed.join("; ")));
    }
    let k = T::one() - r.clone() - r.clone();
    Ok((r.clone() + r.clone()) / k)
}

/// Checks that the depth cover of `C` meets that of `C + t v`.
pub fn verify_directional<T: Scalar>(
    system: &CubeSystem<T>,
    q: &DirectionalQuery<T>,
    depth: usize,
) -> Result<Option<(CubeRd<T>, CubeRd<T>)>> {
    if q.v.dim() != system.dim() {
        return Err(Error::Domain("direction has the wrong dimension".into()));
    }
    let moved = system.translate(&q.offset())?;
    Ok(intersect_truncated_rd(system, &moved, depth))
}

/// Best-effort common point: the center of the overlap of a meeting pair of
/// level-`depth` cubes, with its sup-norm distance bound to either cover
/// cube's set points. Not a certified point of `C¹ ∩ C²`.
pub fn approximate_common_point<T: Scalar>(
    s1: &CubeSystem<T>,
    s2: &CubeSystem<T>,
    depth: usize,
) -> Option<(PointRd<T>, T)> {
    let (a, b) = intersect_truncated_rd(s1, s2, depth)?;
    let overlap = a.intersection(&b)?;
    let x = PointRd(overlap.into_iter().map(|(l, h)| (l + h).half()).collect());
    let bound = if a.radius > b.radius { a.radius.clone() } else { b.radius.clone() };
    Some((x, bound.clone() + bound))
}

/// Whether the thickness product of two enclosures clears the threshold for
/// `r`, without touching denseness.
pub fn product_clears<T: Scalar>(product: &Enclosure<T>, r: &T) -> Option<bool> {
    let k = T::one() - r.clone() - r.clone();
    if k <= T::zero() {
        return Some(false);
    }
    if let Extended::Infinity = product.lo {
        return Some(true);
    }
    product.compare_ge(&(T::one() / (k.clone() * k)))
}
