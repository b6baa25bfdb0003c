//! Moran cube systems in `(R^d, dist_inf)`: corner Cantor sets, explicit
//! finite trees, the cube-system thickness `inf_I min_i rad(S_{I,i}) / h_I`,
//! uniform denseness, and the cut-out thickness of sets with box-shaped
//! gaps.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::interval::{Enclosure, Extended};
use crate::scalar::{max_of, min_of, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct PointRd<T>(pub Vec<T>);

impl<T: Scalar> PointRd<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("points need at least one coordinate".into()));
        }
        Ok(PointRd(coords))
    }

    pub fn origin(d: usize) -> Self {
        PointRd(vec![T::zero(); d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm_inf(&self) -> T {
        self.0.iter().fold(T::zero(), |m, x| max_of(m, x.abs()))
    }

    pub fn dist_inf(&self, other: &PointRd<T>) -> T {
        self.0.iter().zip(&other.0).fold(T::zero(), |m, (a, b)| max_of(m, (a.clone() - b.clone()).abs()))
    }

    pub fn add(&self, other: &PointRd<T>) -> PointRd<T> {
        PointRd(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn scale(&self, a: &T) -> PointRd<T> {
        PointRd(self.0.iter().map(|x| a.clone() * x.clone()).collect())
    }
}

impl<T: fmt::Display> fmt::Display for PointRd<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// The closed infinity-norm ball `B[center, radius]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubeRd<T> {
    pub center: PointRd<T>,
    pub radius: T,
}

impl<T: Scalar> CubeRd<T> {
    pub fn new(center: PointRd<T>, radius: T) -> Result<Self> {
        if radius <= T::zero() {
            return Err(Error::Domain(format!("cube radius must be positive, got {radius}")));
        }
        if center.0.is_empty() {
            return Err(Error::Domain("cube center has no coordinates".into()));
        }
        Ok(CubeRd { center, radius })
    }

    /// `B[0, 1]` in dimension `d`.
    pub fn unit(d: usize) -> Self {
        CubeRd { center: PointRd::origin(d), radius: T::one() }
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn lo(&self, i: usize) -> T {
        self.center.0[i].clone() - self.radius.clone()
    }

    pub fn hi(&self, i: usize) -> T {
        self.center.0[i].clone() + self.radius.clone()
    }

    pub fn bounds(&self) -> Vec<(T, T)> {
        (0..self.dim()).map(|i| (self.lo(i), self.hi(i))).collect()
    }

    pub fn contains_point(&self, p: &PointRd<T>) -> bool {
        self.center.dist_inf(p) <= self.radius
    }

    pub fn contains_cube(&self, other: &CubeRd<T>) -> bool {
        (0..self.dim()).all(|i| self.lo(i) <= other.lo(i) && other.hi(i) <= self.hi(i))
    }

    pub fn intersects(&self, other: &CubeRd<T>) -> bool {
        self.center.dist_inf(&other.center) <= self.radius.clone() + other.radius.clone()
    }

    /// The box `self ∩ other`, if non-empty.
    pub fn intersection(&self, other: &CubeRd<T>) -> Option<Vec<(T, T)>> {
        let b: Vec<(T, T)> =
            (0..self.dim()).map(|i| (max_of(self.lo(i), other.lo(i)), min_of(self.hi(i), other.hi(i)))).collect();
        b.iter().all(|(l, h)| l <= h).then_some(b)
    }

    /// Infinity-norm distance from `p` to the cube (zero inside).
    pub fn dist_to_point(&self, p: &PointRd<T>) -> T {
        let d = self.center.dist_inf(p) - self.radius.clone();
        max_of(d, T::zero())
    }

    /// Image under `x -> a x + b`.
    pub fn map_affine(&self, a: &T, b: &PointRd<T>) -> Self {
        CubeRd { center: self.center.scale(a).add(b), radius: a.abs() * self.radius.clone() }
    }
}

impl<T: fmt::Display> fmt::Display for CubeRd<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B[{}, {}]", self.center, self.radius)
    }
}

/// A node of an explicit finite tree of cubes.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode<T> {
    pub cube: CubeRd<T>,
    pub children: Vec<TreeNode<T>>,
}

impl<T: Scalar> TreeNode<T> {
    pub fn leaf(cube: CubeRd<T>) -> Self {
        TreeNode { cube, children: Vec::new() }
    }

    fn validate(&self, d: usize) -> Result<()> {
        if self.cube.dim() != d {
            return Err(Error::Domain(format!("cube {} is not {d}-dimensional", self.cube)));
        }
        for c in &self.children {
            if !self.cube.contains_cube(&c.cube) {
                return Err(Error::Containment(format!("{} not inside {}", c.cube, self.cube)));
            }
            c.validate(d)?;
        }
        Ok(())
    }

    fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    fn leaves<'a>(&'a self, out: &mut Vec<&'a TreeNode<T>>) {
        if self.children.is_empty() {
            out.push(self);
        }
        for c in &self.children {
            c.leaves(out);
        }
    }

    fn map_affine(&self, a: &T, b: &PointRd<T>) -> Self {
        TreeNode {
            cube: self.cube.map_affine(a, b),
            children: self.children.iter().map(|c| c.map_affine(a, b)).collect(),
        }
    }
}

/// Closed-form data of a corner Cantor set.
#[derive(Debug, Clone, PartialEq)]
pub struct CornerParams<T> {
    pub d: usize,
    pub n: usize,
    pub ell: T,
    /// `(2 - n ell) / (n - 1)`.
    pub g: T,
    /// `ell / g`.
    pub tau: T,
    /// `ell + g / 2`.
    pub r: T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChildRule<T> {
    CornerCantor(CornerParams<T>),
    /// A finite tree; every leaf continues as the chain of concentric cubes
    /// of half the radius, so the set is the set of leaf centers.
    ExplicitTree(TreeNode<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CubeSystem<T> {
    root: CubeRd<T>,
    rule: ChildRule<T>,
}

/// A cube of a system together with its position in the tree.
#[derive(Debug, Clone)]
pub struct Node<'a, T> {
    pub cube: CubeRd<T>,
    pub word: Vec<usize>,
    src: Src<'a, T>,
}

#[derive(Debug)]
enum Src<'a, T> {
    Corner,
    Tree(&'a TreeNode<T>),
    Chain,
}

impl<T> Clone for Src<'_, T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Src<'_, T> {}

impl<'a, T> Node<'a, T> {
    pub fn level(&self) -> usize {
        self.word.len()
    }
}

/// Result of a uniform denseness check.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseReport<T> {
    pub dense: bool,
    /// On failure: the node and a cube inside it of radius `r rad(S_I)`
    /// containing no child.
    pub witness: Option<(Vec<usize>, CubeRd<T>)>,
}

pub fn make_corner_cantor<T: Scalar>(d: usize, n: usize, ell: T) -> Result<CubeSystem<T>> {
    CubeSystem::corner_cantor(d, n, ell)
}

impl<T: Scalar> CubeSystem<T> {
    /// Root `B[0, 1]`; every cube has `n^d` children of radius `ell/2` times
    /// its own, `n` per axis, the outer ones flush with the parent's faces.
    pub fn corner_cantor(d: usize, n: usize, ell: T) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if n < 2 {
            return Err(Error::Domain(format!("n must be at least 2, got {n}")));
        }
        let nt = T::from_usize(n).expect("small integer");
        let two = T::two();
        if ell <= T::zero() || nt.clone() * ell.clone() >= two {
            return Err(Error::Domain(format!("ell must lie in (0, 2/{n}), got {ell}")));
        }
        let g = (two - nt.clone() * ell.clone()) / (nt - T::one());
        let tau = ell.clone() / g.clone();
        let r = ell.clone() + g.half();
        Ok(CubeSystem { root: CubeRd::unit(d), rule: ChildRule::CornerCantor(CornerParams { d, n, ell, g, tau, r }) })
    }

    pub fn explicit_tree(tree: TreeNode<T>) -> Result<Self> {
        tree.validate(tree.cube.dim())?;
        Ok(CubeSystem { root: tree.cube.clone(), rule: ChildRule::ExplicitTree(tree) })
    }

    pub fn root(&self) -> &CubeRd<T> {
        &self.root
    }

    pub fn rule(&self) -> &ChildRule<T> {
        &self.rule
    }

    pub fn dim(&self) -> usize {
        self.root.dim()
    }

    pub fn corner_params(&self) -> Option<&CornerParams<T>> {
        match &self.rule {
            ChildRule::CornerCantor(p) => Some(p),
            ChildRule::ExplicitTree(_) => None,
        }
    }

    /// Image of the whole system under `x -> a x + b`.
    pub fn map_affine(&self, a: &T, b: &PointRd<T>) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Domain("homothety ratio must be non-zero".into()));
        }
        if b.dim() != self.dim() {
            return Err(Error::Domain("translation has the wrong dimension".into()));
        }
        let rule = match &self.rule {
            ChildRule::CornerCantor(p) => ChildRule::CornerCantor(p.clone()),
            ChildRule::ExplicitTree(t) => ChildRule::ExplicitTree(t.map_affine(a, b)),
        };
        Ok(CubeSystem { root: self.root.map_affine(a, b), rule })
    }

    pub fn translate(&self, v: &PointRd<T>) -> Result<Self> {
        self.map_affine(&T::one(), v)
    }

    pub fn root_node(&self) -> Node<'_, T> {
        let src = match &self.rule {
            ChildRule::CornerCantor(_) => Src::Corner,
            ChildRule::ExplicitTree(t) => Src::Tree(t),
        };
        Node { cube: self.root.clone(), word: Vec::new(), src }
    }

    pub fn children<'a>(&'a self, node: &Node<'a, T>) -> Vec<Node<'a, T>> {
        let child = |cube, i: usize, src| {
            let mut word = node.word.clone();
            word.push(i);
            Node { cube, word, src }
        };
        match (node.src, &self.rule) {
            (Src::Corner, ChildRule::CornerCantor(p)) => {
                corner_children(&node.cube, p).into_iter().enumerate().map(|(i, c)| child(c, i, Src::Corner)).collect()
            }
            (Src::Tree(t), _) if !t.children.is_empty() => {
                t.children.iter().enumerate().map(|(i, c)| child(c.cube.clone(), i, Src::Tree(c))).collect()
            }
            _ => {
                let half = CubeRd { center: node.cube.center.clone(), radius: node.cube.radius.half() };
                vec![child(half, 0, Src::Chain)]
            }
        }
    }

    /// The node reached by following `word` from the root.
    pub fn node(&self, word: &[usize]) -> Option<Node<'_, T>> {
        let mut cur = self.root_node();
        for &i in word {
            cur = self.children(&cur).into_iter().nth(i)?;
        }
        Some(cur)
    }

    /// All cubes of level `depth`.
    pub fn rasterize(&self, depth: usize) -> Vec<CubeRd<T>> {
        let mut level = vec![self.root_node()];
        for _ in 0..depth {
            level = level.iter().flat_map(|n| self.children(n)).collect();
        }
        level.into_iter().map(|n| n.cube).collect()
    }

    /// Number of cubes of level `depth` and the largest radius among them.
    pub fn level_stats(&self, depth: usize) -> (u128, T) {
        match &self.rule {
            ChildRule::CornerCantor(p) => {
                let count = (p.n as u128).pow((p.d * depth) as u32);
                (count, self.root.radius.clone() * p.ell.half().powu(depth as u32))
            }
            ChildRule::ExplicitTree(_) => {
                let cubes = self.rasterize(depth);
                let rmax = cubes.iter().fold(T::zero(), |m, c| max_of(m, c.radius.clone()));
                (cubes.len() as u128, rmax)
            }
        }
    }

    /// Leaf centers of an explicit tree (the whole set).
    pub fn points(&self) -> Option<Vec<PointRd<T>>> {
        match &self.rule {
            ChildRule::ExplicitTree(t) => {
                let mut leaves = Vec::new();
                t.leaves(&mut leaves);
                Some(leaves.into_iter().map(|l| l.cube.center.clone()).collect())
            }
            ChildRule::CornerCantor(_) => None,
        }
    }

    /// A depth at which every kind of node of the system has been seen:
    /// 1 for corner Cantor sets, tree height plus one for explicit trees.
    pub fn exact_depth(&self) -> usize {
        match &self.rule {
            ChildRule::CornerCantor(_) => 1,
            ChildRule::ExplicitTree(t) => t.height() + 1,
        }
    }
}

fn corner_children<T: Scalar>(parent: &CubeRd<T>, p: &CornerParams<T>) -> Vec<CubeRd<T>> {
    let rad = parent.radius.clone();
    let child_rad = p.ell.clone() * rad.clone() / T::two();
    let pitch = (p.ell.clone() + p.g.clone()) * rad;
    let offsets: Vec<Vec<T>> = (0..p.d)
        .map(|i| {
            let lo = parent.lo(i);
            (0..p.n).map(|k| lo.clone() + child_rad.clone() + pitch.clone() * T::from_usize(k).unwrap()).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(p.n.pow(p.d as u32));
    let mut idx = vec![0usize; p.d];
    loop {
        let center = PointRd(idx.iter().enumerate().map(|(i, &k)| offsets[i][k].clone()).collect());
        out.push(CubeRd { center, radius: child_rad.clone() });
        let mut axis = p.d;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < p.n {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// `h_I = max_{x in S_I} dist_inf(x, C)` for the node at `word`.
///
/// Exact for both kinds of systems: corner Cantor sets give `g rad(S_I) / 2`
/// and explicit trees are solved as a covering-radius problem over their
/// leaf centers. Returns `None` if `word` names no node.
pub fn h_value<T: Scalar>(system: &CubeSystem<T>, word: &[usize], _depth: usize) -> Option<Enclosure<T>> {
    let node = system.node(word)?;
    Some(Enclosure::exact(h_exact(system, &node.cube)))
}

fn h_exact<T: Scalar>(system: &CubeSystem<T>, cube: &CubeRd<T>) -> T {
    match &system.rule {
        ChildRule::CornerCantor(p) => p.g.clone() * cube.radius.clone() / T::two(),
        ChildRule::ExplicitTree(_) => {
            let sites: Vec<(Vec<T>, T)> = system.points().unwrap().into_iter().map(|c| (c.0, T::zero())).collect();
            covering_radius(&cube.bounds(), &sites)
        }
    }
}

/// Encloses `h_I` from covers of level at most `depth`, to within `tol`:
/// branch and bound over sub-cubes of `S_I`, with distances to the covers
/// computed by descending the system. Independent of the closed forms used
/// by [`h_value`].
///
/// A cover of level `k` over-approximates `C`, and every cover cube holds a
/// point of `C`, so `d_k(x) <= dist(x, C) <= d_k(x) + 2 rmax_k`. Each box is
/// bounded with the coarsest level whose slack is below its own radius.
pub fn h_cover_enclosure<T: Scalar>(
    system: &CubeSystem<T>,
    word: &[usize],
    depth: usize,
    tol: &T,
) -> Option<Enclosure<T>> {
    let node = system.node(word)?;
    let depth = depth.max(node.level());
    let slacks: Vec<T> = (0..=depth)
        .map(|k| {
            let r = system.level_stats(k).1;
            r.clone() + r
        })
        .collect();
    let level_for = |rad: &T| (node.level()..=depth).find(|&k| &slacks[k] <= rad).unwrap_or(depth);
    let bound = |c: &CubeRd<T>| {
        let k = level_for(&c.radius);
        let d = dist_to_cover(system, &c.center, k);
        (d.clone(), d + slacks[k].clone() + c.radius.clone())
    };
    let (mut lb, ub) = bound(&node.cube);
    let mut heap = BinaryHeap::new();
    heap.push(Ranked { key: ub, cube: node.cube.clone() });
    while let Some(Ranked { key, cube }) = heap.pop() {
        if key.clone() - lb.clone() <= tol.clone() {
            return Some(Enclosure::new(Extended::Finite(lb), Extended::Finite(key)));
        }
        let half = cube.radius.half();
        for sub in split_cube(&cube, &half) {
            let (d, ub) = bound(&sub);
            if d > lb {
                lb = d;
            }
            if ub > lb {
                heap.push(Ranked { key: ub, cube: sub });
            }
        }
    }
    Some(Enclosure::exact(lb))
}

struct Ranked<T> {
    key: T,
    cube: CubeRd<T>,
}

impl<T: Scalar> PartialEq for Ranked<T> {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl<T: Scalar> Eq for Ranked<T> {}

impl<T: Scalar> PartialOrd for Ranked<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for Ranked<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.partial_cmp(&other.key).unwrap_or(Ordering::Equal)
    }
}

fn split_cube<T: Scalar>(cube: &CubeRd<T>, half: &T) -> Vec<CubeRd<T>> {
    let d = cube.dim();
    (0..1usize << d)
        .map(|mask| {
            let center = (0..d)
                .map(|i| {
                    let c = cube.center.0[i].clone();
                    if mask >> i & 1 == 1 {
                        c + half.clone()
                    } else {
                        c - half.clone()
                    }
                })
                .collect();
            CubeRd { center: PointRd(center), radius: half.clone() }
        })
        .collect()
}

/// Infinity-norm distance from `x` to the union of the level-`depth` cubes.
pub fn dist_to_cover<T: Scalar>(system: &CubeSystem<T>, x: &PointRd<T>, depth: usize) -> T {
    let mut best: Option<T> = None;
    let mut stack = vec![system.root_node()];
    while let Some(node) = stack.pop() {
        let d = node.cube.dist_to_point(x);
        if best.as_ref().is_some_and(|b| &d >= b) {
            continue;
        }
        if node.level() >= depth {
            best = Some(d);
            continue;
        }
        let mut kids: Vec<(T, Node<'_, T>)> =
            system.children(&node).into_iter().map(|k| (k.cube.dist_to_point(x), k)).collect();
        if let Some(b) = &best {
            kids.retain(|(d, _)| d < b);
        }
        kids.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));
        stack.extend(kids.into_iter().map(|(_, k)| k));
    }
    best.expect("the root has descendants at every level")
}

/// `tau(C, {S_I}) = inf_I min_i rad(S_{I,i}) / h_I`.
///
/// Corner Cantor sets are self-similar and give `ell/g` exactly. For explicit
/// trees every tree node is examined and each leaf chain is followed until
/// its ratio settles at `1/2`, so the value is exact as well; `depth` only
/// limits the levels examined, and a cut-off before the value is settled
/// widens the lower end of the enclosure to 0.
pub fn thickness_rd<T: Scalar>(system: &CubeSystem<T>, depth: usize) -> Enclosure<T> {
    match &system.rule {
        ChildRule::CornerCantor(p) => Enclosure::exact(p.tau.clone()),
        ChildRule::ExplicitTree(_) => tree_thickness(system, depth.max(1)),
    }
}

fn tree_thickness<T: Scalar>(system: &CubeSystem<T>, depth: usize) -> Enclosure<T> {
    let points = system.points().unwrap();
    let mut best: Option<T> = None;
    let mut settled = true;
    let mut stack = vec![system.root_node()];
    let half = T::ratio(1, 2);
    while let Some(node) = stack.pop() {
        if node.level() >= depth {
            settled = false;
            continue;
        }
        let kids = system.children(&node);
        let min_child = kids
            .iter()
            .fold(None::<T>, |m, k| Some(m.map_or(k.cube.radius.clone(), |m| min_of(m, k.cube.radius.clone()))));
        let ratio = min_child.unwrap() / h_exact(system, &node.cube);
        best = Some(best.map_or(ratio.clone(), |b| min_of(b, ratio)));
        match node.src {
            Src::Chain => {
                // beyond this radius the nearest set point is the chain's own
                // center, so every later ratio is exactly 1/2
                let c = &node.cube.center;
                let sep = points
                    .iter()
                    .filter(|p| *p != c)
                    .map(|p| p.dist_inf(c))
                    .fold(None::<T>, |m, d| Some(m.map_or(d.clone(), |m| min_of(m, d))));
                if sep.is_none_or(|s| node.cube.radius.clone() + node.cube.radius.clone() <= s) {
                    best = Some(min_of(best.unwrap(), half.clone()));
                    continue;
                }
                stack.extend(kids);
            }
            _ => stack.extend(kids),
        }
    }
    let v = best.unwrap_or(half);
    if settled {
        Enclosure::exact(v)
    } else {
        Enclosure::new(Extended::Finite(T::zero()), Extended::Finite(v))
    }
}

/// Checks that every cube `B ⊆ S_I` with `rad(B) >= r rad(S_I)` contains a
/// child of `S_I`, for every node of level below `depth`.
///
/// It suffices to test cubes of radius exactly `r rad(S_I)`; their admissible
/// lower corners form a box, a child fits in `B` exactly when the corner lies
/// in a box determined by the child, and the check becomes a box-coverage
/// problem decided exactly by coordinate compression. Corner Cantor sets are
/// self-similar and only the root is examined.
pub fn uniform_dense_check<T: Scalar>(system: &CubeSystem<T>, r: &T, depth: usize) -> Result<DenseReport<T>> {
    if r <= &T::zero() || r >= &T::one() {
        return Err(Error::Domain(format!("r must lie in (0,1), got {r}")));
    }
    let ok = DenseReport { dense: true, witness: None };
    if depth == 0 {
        return Ok(ok);
    }
    let mut stack = vec![system.root_node()];
    while let Some(node) = stack.pop() {
        let kids = system.children(&node);
        if let Some(b) = dense_counterexample(&node.cube, &kids, r) {
            return Ok(DenseReport { dense: false, witness: Some((node.word.clone(), b)) });
        }
        let descend = match node.src {
            Src::Corner | Src::Chain => false,
            Src::Tree(_) => node.level() + 1 < depth,
        };
        if descend {
            stack.extend(kids);
        }
    }
    Ok(ok)
}

fn dense_counterexample<T: Scalar>(parent: &CubeRd<T>, kids: &[Node<'_, T>], r: &T) -> Option<CubeRd<T>> {
    let rho = r.clone() * parent.radius.clone();
    let width = rho.clone() + rho.clone();
    let target: Vec<(T, T)> = (0..parent.dim()).map(|i| (parent.lo(i), parent.hi(i) - width.clone())).collect();
    let boxes: Vec<Vec<(T, T)>> = kids
        .iter()
        .filter(|k| k.cube.radius <= rho)
        .map(|k| (0..parent.dim()).map(|i| (k.cube.hi(i) - width.clone(), k.cube.lo(i))).collect())
        .collect();
    let corner = uncovered_point(&target, &boxes)?;
    let center = PointRd(corner.into_iter().map(|a| a + rho.clone()).collect());
    Some(CubeRd { center, radius: rho })
}

/// A point of the closed box `target` outside every closed box in `boxes`,
/// found by coordinate compression, or `None` if the boxes cover it.
pub fn uncovered_point<T: Scalar>(target: &[(T, T)], boxes: &[Vec<(T, T)>]) -> Option<Vec<T>> {
    let d = target.len();
    let boxes: Vec<&Vec<(T, T)>> = boxes
        .iter()
        .filter(|b| (0..d).all(|i| b[i].0 <= target[i].1 && target[i].0 <= b[i].1 && b[i].0 <= b[i].1))
        .collect();
    let reps: Vec<Vec<T>> = (0..d)
        .map(|i| {
            let (lo, hi) = &target[i];
            let mut cuts = vec![lo.clone(), hi.clone()];
            for b in &boxes {
                for x in [&b[i].0, &b[i].1] {
                    if x > lo && x < hi {
                        cuts.push(x.clone());
                    }
                }
            }
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
            cuts.dedup();
            let mut out = Vec::with_capacity(2 * cuts.len());
            for (k, x) in cuts.iter().enumerate() {
                out.push(x.clone());
                if let Some(y) = cuts.get(k + 1) {
                    out.push((x.clone() + y.clone()).half());
                }
            }
            out
        })
        .collect();
    // membership[i][j]: boxes containing the j-th representative on axis i
    let members: Vec<Vec<Vec<bool>>> = (0..d)
        .map(|i| reps[i].iter().map(|x| boxes.iter().map(|b| &b[i].0 <= x && x <= &b[i].1).collect()).collect())
        .collect();
    let mut idx = vec![0usize; d];
    loop {
        let covered = (0..boxes.len()).any(|k| (0..d).all(|i| members[i][idx[i]][k]));
        if !covered {
            return Some((0..d).map(|i| reps[i][idx[i]].clone()).collect());
        }
        let mut axis = d;
        loop {
            if axis == 0 {
                return None;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < reps[axis].len() {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Least `h >= 0` such that the closed cubes `B[c, rho + h]` over all sites
/// `(c, rho)` cover the box `target`.
pub fn covering_radius<T: Scalar>(target: &[(T, T)], sites: &[(Vec<T>, T)]) -> T {
    let d = target.len();
    let mut cands = vec![T::zero()];
    for i in 0..d {
        let (lo, hi) = &target[i];
        for (k, (c, rho)) in sites.iter().enumerate() {
            for e in [lo, hi] {
                cands.push((c[i].clone() - e.clone()).abs() - rho.clone());
            }
            for (c2, rho2) in &sites[k + 1..] {
                cands.push(((c[i].clone() - c2[i].clone()).abs() - rho.clone() - rho2.clone()).half());
            }
        }
    }
    cands.retain(|h| h >= &T::zero());
    cands.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    cands.dedup();
    let covers = |h: &T| {
        let boxes: Vec<Vec<(T, T)>> = sites
            .iter()
            .map(|(c, rho)| {
                let w = rho.clone() + h.clone();
                c.iter().map(|x| (x.clone() - w.clone(), x.clone() + w.clone())).collect()
            })
            .collect();
        uncovered_point(target, &boxes).is_none()
    };
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    debug_assert!(covers(&cands[hi]));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if covers(&cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands[lo].clone()
}

/// An open axis-aligned box.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxRd<T> {
    pub lo: Vec<T>,
    pub hi: Vec<T>,
}

impl<T: Scalar> BoxRd<T> {
    pub fn new(lo: Vec<T>, hi: Vec<T>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Domain("box corners must have the same positive dimension".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::Domain("open box has empty interior".into()));
        }
        Ok(BoxRd { lo, hi })
    }

    /// Infinity-norm diameter: the longest side.
    pub fn diam(&self) -> T {
        self.lo.iter().zip(&self.hi).fold(T::zero(), |m, (a, b)| max_of(m, b.clone() - a.clone()))
    }

    fn center_key(&self) -> Vec<T> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| a.clone() + b.clone()).collect()
    }

    fn overlaps(&self, other: &BoxRd<T>) -> bool {
        (0..self.lo.len()).all(|i| self.lo[i] < other.hi[i] && other.lo[i] < self.hi[i])
    }

    fn dist(&self, other: &BoxRd<T>) -> T {
        (0..self.lo.len()).fold(T::zero(), |m, i| {
            let gap = max_of(self.lo[i].clone() - other.hi[i].clone(), other.lo[i].clone() - self.hi[i].clone());
            max_of(m, gap)
        })
    }
}

/// A cut-out set `hull \ ∪ G_n` with box-shaped gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct FYCutOutSpec<T> {
    pub hull: CubeRd<T>,
    pub gaps: Vec<BoxRd<T>>,
}

impl<T: Scalar> FYCutOutSpec<T> {
    /// Validates the gaps and sorts them by non-increasing diameter, ties by
    /// lexicographic center.
    pub fn new(hull: CubeRd<T>, mut gaps: Vec<BoxRd<T>>) -> Result<Self> {
        let d = hull.dim();
        for g in &gaps {
            if g.lo.len() != d {
                return Err(Error::Domain("gap dimension differs from the hull".into()));
            }
            if (0..d).any(|i| g.lo[i] < hull.lo(i) || g.hi[i] > hull.hi(i)) {
                return Err(Error::Containment(format!("gap {:?}..{:?} leaves the hull", g.lo, g.hi)));
            }
        }
        for (i, a) in gaps.iter().enumerate() {
            if let Some(b) = gaps[i + 1..].iter().find(|b| a.overlaps(b)) {
                return Err(Error::Overlap(format!("{:?}..{:?} meets {:?}..{:?}", a.lo, a.hi, b.lo, b.hi)));
            }
        }
        gaps.sort_by(|a, b| {
            b.diam()
                .partial_cmp(&a.diam())
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.center_key().partial_cmp(&b.center_key()).unwrap_or(Ordering::Equal))
        });
        Ok(FYCutOutSpec { hull, gaps })
    }

    /// Image under `x -> a x + b`, `a > 0`.
    pub fn map_affine(&self, a: &T, b: &PointRd<T>) -> Result<Self> {
        if a <= &T::zero() {
            return Err(Error::Domain("scaling must be positive".into()));
        }
        let gaps = self
            .gaps
            .iter()
            .map(|g| BoxRd {
                lo: g.lo.iter().zip(&b.0).map(|(x, t)| a.clone() * x.clone() + t.clone()).collect(),
                hi: g.hi.iter().zip(&b.0).map(|(x, t)| a.clone() * x.clone() + t.clone()).collect(),
            })
            .collect();
        Self::new(self.hull.map_affine(a, b), gaps)
    }
}

/// `inf_n dist(G_n, G_1 ∪ ... ∪ G_{n-1} ∪ E) / diam(G_n)` in the infinity
/// norm, where `E` is the exterior of the hull; `+inf` without gaps.
pub fn fy_thickness<T: Scalar>(spec: &FYCutOutSpec<T>) -> Extended<T> {
    let d = spec.hull.dim();
    let mut best = Extended::Infinity;
    for (n, g) in spec.gaps.iter().enumerate() {
        let to_ext = (0..d).fold(None::<T>, |m, i| {
            let side = min_of(g.lo[i].clone() - spec.hull.lo(i), spec.hull.hi(i) - g.hi[i].clone());
            Some(m.map_or(side.clone(), |m| min_of(m, side)))
        });
        let dist = spec.gaps[..n].iter().fold(to_ext.unwrap(), |m, h| min_of(m, g.dist(h)));
        let v = Extended::Finite(dist / g.diam());
        if v < best {
            best = v;
        }
    }
    best
}

/// Least-squares slope of `log N_k` against `-log rmax_k` over the levels
/// `1..=depth`.
pub fn box_dimension_rd<T: Scalar>(system: &CubeSystem<T>, depth: usize) -> Result<f64> {
    if depth < 2 {
        return Err(Error::Domain("depth must be at least 2".into()));
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for k in 1..=depth {
        let (count, rmax) = system.level_stats(k);
        xs.push(-rmax.to_f64_lossy().ln());
        ys.push((count as f64).ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate("radii do not shrink".into()));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core1d::CutOutSet;
    use crate::dimension::dim_lower_bound_rd;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn pt(v: &[(i64, i64)]) -> PointRd<Q> {
        PointRd(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn cube(c: &[(i64, i64)], r: Q) -> CubeRd<Q> {
        CubeRd::new(pt(c), r).unwrap()
    }

    #[test]
    fn corner_closed_forms() {
        let s = make_corner_cantor(2, 10, q(7, 50)).unwrap();
        let p = s.corner_params().unwrap();
        assert_eq!((p.g.clone(), p.tau.clone(), p.r.clone()), (q(1, 15), q(21, 10), q(13, 75)));
        let m = make_corner_cantor(1, 2, q(2, 3)).unwrap();
        let p = m.corner_params().unwrap();
        assert_eq!((p.g.clone(), p.tau.clone()), (q(2, 3), q(1, 1)));
        assert!(matches!(make_corner_cantor(2, 10, q(1, 5)), Err(Error::Domain(_))));
        assert!(matches!(make_corner_cantor(2, 1, q(1, 5)), Err(Error::Domain(_))));
        assert!(matches!(make_corner_cantor(0, 3, q(1, 5)), Err(Error::Domain(_))));
    }

    #[test]
    fn corner_children_geometry() {
        let s = make_corner_cantor(2, 10, q(7, 50)).unwrap();
        let kids = s.rasterize(1);
        assert_eq!(kids.len(), 100);
        for k in &kids {
            assert!(s.root().contains_cube(k));
            assert_eq!(k.radius, q(7, 100));
        }
        // outermost children sit in the corners
        assert_eq!(kids[0].lo(0), q(-1, 1));
        assert_eq!(kids[99].hi(1), q(1, 1));
        // neighbouring children are separated by g
        assert_eq!(kids[1].lo(1) - kids[0].hi(1), q(1, 15));
        // middle-thirds on [-1, 1]
        let m = make_corner_cantor(1, 2, q(2, 3)).unwrap();
        let lv2: Vec<_> = m.rasterize(2).iter().map(|c| (c.lo(0), c.hi(0))).collect();
        assert_eq!(lv2, vec![(q(-1, 1), q(-7, 9)), (q(-5, 9), q(-1, 3)), (q(1, 3), q(5, 9)), (q(7, 9), q(1, 1))]);
        assert_eq!(s.rasterize(0), vec![CubeRd::unit(2)]);
        assert_eq!(make_corner_cantor(2, 2, q(1, 2)).unwrap().rasterize(1).len(), 4);
    }

    #[test]
    fn rasterize_nests() {
        let s = make_corner_cantor(2, 3, q(1, 2)).unwrap();
        let l1 = s.rasterize(1);
        let l2 = s.rasterize(2);
        assert_eq!(l2.len(), 81);
        for c in &l2 {
            assert!(l1.iter().any(|p| p.contains_cube(c)));
        }
    }

    #[test]
    fn middle_thirds_h_and_thickness() {
        let m = make_corner_cantor(1, 2, q(2, 3)).unwrap();
        assert_eq!(h_value(&m, &[], 5).unwrap().value(), Some(&q(1, 3)));
        assert_eq!(h_value(&m, &[1, 0], 5).unwrap().value(), Some(&q(1, 27)));
        assert_eq!(thickness_rd(&m, 4).value(), Some(&q(1, 1)));
        // the cover-based enclosure agrees
        let e = h_cover_enclosure(&m, &[], 8, &q(1, 1000)).unwrap();
        assert!(e.contains(&q(1, 3)), "{e}");
    }

    #[test]
    fn one_dim_agrees_with_newhouse() {
        for ell in [q(2, 3), q(1, 2), q(3, 4), q(9, 10), q(1, 10)] {
            let s = make_corner_cantor(1, 2, ell.clone()).unwrap();
            let g = s.corner_params().unwrap().g.clone();
            let eps = g.clone() / q(2, 1);
            let c = CutOutSet::middle_cantor(eps).unwrap();
            assert_eq!(thickness_rd(&s, 3).value(), c.thickness(1).value());
            // and the cut-out thickness of the same gaps
            let gaps: Vec<BoxRd<Q>> = c
                .truncated_cutout(3)
                .unwrap()
                .finite_gaps()
                .unwrap()
                .iter()
                .map(|g| BoxRd::new(vec![g.left().clone()], vec![g.right().clone()]).unwrap())
                .collect();
            let spec = FYCutOutSpec::new(cube(&[(1, 2)], q(1, 2)), gaps).unwrap();
            assert_eq!(fy_thickness(&spec), Extended::Finite(c.thickness(1).value().unwrap().clone()));
        }
    }

    #[test]
    fn corner_h_against_cover_enclosure() {
        let s = make_corner_cantor(2, 10, 0.14f64).unwrap();
        let e = h_cover_enclosure(&s, &[], 6, &1e-3).unwrap();
        let w = e.width().unwrap();
        assert!(w <= 1e-3 && e.lo.to_f64() <= 1.0 / 30.0 + 1e-12 && 1.0 / 30.0 <= e.hi.to_f64() + 1e-12, "{e}");
    }

    #[test]
    fn corner_child_h_against_cover_enclosure() {
        let s = make_corner_cantor(2, 3, q(1, 2)).unwrap();
        let exact = h_value(&s, &[4], 1).unwrap().value().unwrap().clone();
        let e = h_cover_enclosure(&s, &[4], 5, &q(1, 200)).unwrap();
        assert!(e.contains(&exact), "{e} vs {exact}");
    }

    #[test]
    fn h_shrinks_along_branches() {
        let s = make_corner_cantor(2, 4, q(3, 10)).unwrap();
        let mut word = Vec::new();
        let mut prev = h_value(&s, &word, 1).unwrap().value().unwrap().clone();
        for i in [3, 0, 5, 15] {
            word.push(i);
            let h = h_value(&s, &word, 1).unwrap().value().unwrap().clone();
            assert!(h <= prev);
            prev = h;
        }
        let t = tree_example();
        for w in [vec![0], vec![1], vec![0, 0], vec![1, 1]] {
            let parent = h_value(&t, &w[..w.len() - 1], 1).unwrap().value().unwrap().clone();
            let child = h_value(&t, &w, 1).unwrap().value().unwrap().clone();
            assert!(child <= parent);
        }
    }

    fn tree_example() -> CubeSystem<Q> {
        let leaf = |c: &[(i64, i64)], r: Q| TreeNode::leaf(cube(c, r));
        let a = TreeNode {
            cube: cube(&[(-1, 2), (-1, 2)], q(1, 2)),
            children: vec![leaf(&[(-3, 4), (-3, 4)], q(1, 4)), leaf(&[(-1, 4), (-1, 4)], q(1, 4))],
        };
        let b = TreeNode {
            cube: cube(&[(1, 2), (1, 2)], q(1, 2)),
            children: vec![leaf(&[(1, 4), (3, 4)], q(1, 4)), leaf(&[(3, 4), (1, 4)], q(1, 8))],
        };
        CubeSystem::explicit_tree(TreeNode { cube: CubeRd::unit(2), children: vec![a, b] }).unwrap()
    }

    fn brute_h(points: &[PointRd<Q>], cube: &CubeRd<Q>, grid: i64) -> Q {
        let mut best = q(0, 1);
        for i in 0..=grid {
            for j in 0..=grid {
                let x = PointRd(vec![
                    cube.lo(0) + cube.radius.clone() * q(2 * i, grid),
                    cube.lo(1) + cube.radius.clone() * q(2 * j, grid),
                ]);
                let d = points
                    .iter()
                    .map(|p| p.dist_inf(&x))
                    .fold(None::<Q>, |m, d| Some(m.map_or(d.clone(), |m| min_of(m, d))))
                    .unwrap();
                best = max_of(best, d);
            }
        }
        best
    }

    #[test]
    fn tree_h_is_exact() {
        let t = tree_example();
        let pts = t.points().unwrap();
        assert_eq!(pts.len(), 4);
        for w in [vec![], vec![0], vec![1], vec![1, 0], vec![1, 1], vec![1, 1, 0]] {
            let node = t.node(&w).unwrap();
            let h = h_value(&t, &w, 1).unwrap().value().unwrap().clone();
            let grid = brute_h(&pts, &node.cube, 48);
            assert!(grid <= h, "{w:?}: grid {grid} > {h}");
            assert!(h.clone() - grid.clone() <= node.cube.radius.clone() / q(24, 1), "{w:?}: {h} vs {grid}");
        }
        // root: the corner (-1, 1) is 3/4 from (1/4, 3/4)... and from (-1/4,-1/4)
        assert_eq!(h_value(&t, &[], 1).unwrap().value(), Some(&q(5, 4)));
    }

    #[test]
    fn random_tree_h_against_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..15 {
            let kids: Vec<TreeNode<Q>> = (0..rng.gen_range(1..5))
                .map(|_| {
                    let r = q(1, rng.gen_range(4..10));
                    let c = [(rng.gen_range(-8..=8), 10), (rng.gen_range(-8..=8), 10)];
                    let mut cb = cube(&c, r.clone());
                    for i in 0..2 {
                        let lim = q(1, 1) - r.clone();
                        cb.center.0[i] = min_of(max_of(cb.center.0[i].clone(), -lim.clone()), lim);
                    }
                    TreeNode::leaf(cb)
                })
                .collect();
            let t = CubeSystem::explicit_tree(TreeNode { cube: CubeRd::unit(2), children: kids }).unwrap();
            let h = h_value(&t, &[], 1).unwrap().value().unwrap().clone();
            let grid = brute_h(&t.points().unwrap(), t.root(), 60);
            assert!(grid <= h && h.clone() - grid.clone() <= q(1, 30), "{h} vs {grid}");
        }
    }

    #[test]
    fn singleton_chain_thickness_is_half() {
        // [-1/k, 1/k] for k = 1..6, then the leaf chain
        let mut node = TreeNode::leaf(cube(&[(0, 1)], q(1, 6)));
        for k in (1..6).rev() {
            node = TreeNode { cube: cube(&[(0, 1)], q(1, k)), children: vec![node] };
        }
        let s = CubeSystem::explicit_tree(node).unwrap();
        let t = thickness_rd(&s, 20);
        assert_eq!(t.value(), Some(&q(1, 2)));
        assert_eq!(h_value(&s, &[0, 0], 1).unwrap().value(), Some(&q(1, 3)));
        let shallow = thickness_rd(&s, 3);
        assert!(!shallow.is_exact() && shallow.contains(&q(1, 2)));
    }

    #[test]
    fn tree_thickness_matches_node_scan() {
        let t = tree_example();
        let tau = thickness_rd(&t, 30).value().unwrap().clone();
        // independent scan: tree nodes plus ten chain levels under each leaf
        let mut best: Option<Q> = None;
        let mut stack = vec![t.root_node()];
        while let Some(n) = stack.pop() {
            if n.level() > 12 {
                continue;
            }
            let kids = t.children(&n);
            let minr = kids
                .iter()
                .map(|k| k.cube.radius.clone())
                .fold(None::<Q>, |m, r| Some(m.map_or(r.clone(), |m| min_of(m, r))))
                .unwrap();
            let pts = t.points().unwrap();
            let sites: Vec<_> = pts.iter().map(|p| (p.0.clone(), q(0, 1))).collect();
            let h = covering_radius(&n.cube.bounds(), &sites);
            let v = minr / h;
            best = Some(best.map_or(v.clone(), |b| min_of(b, v)));
            stack.extend(kids);
        }
        assert_eq!(best.unwrap(), tau);
    }

    #[test]
    fn corner_density() {
        let s = make_corner_cantor(2, 10, q(7, 50)).unwrap();
        assert!(uniform_dense_check(&s, &q(13, 75), 6).unwrap().dense);
        let fail = uniform_dense_check(&s, &q(7, 100), 6).unwrap();
        assert!(!fail.dense);
        let (word, b) = fail.witness.unwrap();
        assert!(word.is_empty());
        assert!(s.root().contains_cube(&b));
        assert!(s.rasterize(1).iter().all(|c| !b.contains_cube(c)));
        assert!(uniform_dense_check(&s, &q(9, 10), 6).unwrap().dense);
        assert!(uniform_dense_check(&s, &q(0, 1), 6).is_err());
    }

    #[test]
    fn corner_density_threshold_over_families() {
        for d in 1..=3usize {
            for n in [2usize, 3, 5, 12] {
                for ell in [q(1, n as i64 + 1), q(1, 2 * n as i64), q(3, 2 * n as i64)] {
                    let s = make_corner_cantor(d, n, ell).unwrap();
                    let r = s.corner_params().unwrap().r.clone();
                    if r >= q(1, 1) {
                        continue;
                    }
                    assert!(uniform_dense_check(&s, &r, 3).unwrap().dense, "d={d} n={n}");
                    let below = r.clone() - q(1, 10_000);
                    assert!(!uniform_dense_check(&s, &below, 3).unwrap().dense, "d={d} n={n}");
                }
            }
        }
    }

    #[test]
    fn density_by_sampling() {
        // brute force: random cubes of radius r inside the root must contain a child
        let s = make_corner_cantor(2, 4, q(3, 10)).unwrap();
        let kids = s.rasterize(1);
        let r = s.corner_params().unwrap().r.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..2000 {
            let free = q(1, 1) - r.clone();
            let c: Vec<Q> = (0..2).map(|_| free.clone() * q(rng.gen_range(-1000..=1000), 1000)).collect();
            let b = CubeRd { center: PointRd(c), radius: r.clone() };
            assert!(kids.iter().any(|k| b.contains_cube(k)));
        }
    }

    #[test]
    fn tree_density() {
        let t = tree_example();
        // leaf chains need r >= 3/4
        assert!(!uniform_dense_check(&t, &q(7, 10), 5).unwrap().dense);
        let deep = uniform_dense_check(&t, &q(3, 4), 5).unwrap();
        assert!(!deep.dense);
        let (w, b) = deep.witness.unwrap();
        let node = t.node(&w).unwrap();
        assert!(node.cube.contains_cube(&b));
        assert!(t.children(&node).iter().all(|k| !b.contains_cube(&k.cube)));
        // the two children sit on a diagonal, so the anti-diagonal corners fail
        let only_root = uniform_dense_check(&t, &q(15, 16), 1).unwrap();
        assert_eq!(only_root.witness.unwrap().0, Vec::<usize>::new());
        let single = CubeSystem::explicit_tree(TreeNode::leaf(CubeRd::<Q>::unit(1))).unwrap();
        assert!(uniform_dense_check(&single, &q(3, 4), 9).unwrap().dense);
        assert!(!uniform_dense_check(&single, &q(74, 100), 9).unwrap().dense);
    }

    #[test]
    fn tree_matches_corner_density_at_the_root() {
        for ell in [q(7, 50), q(1, 8)] {
            let s = make_corner_cantor(2, 10, ell).unwrap();
            let kids = s.rasterize(1).into_iter().map(TreeNode::leaf).collect();
            let t = CubeSystem::explicit_tree(TreeNode { cube: CubeRd::unit(2), children: kids }).unwrap();
            for r in [q(1, 10), q(13, 75), q(1, 6), q(1, 5), q(1, 3)] {
                assert_eq!(
                    uniform_dense_check(&s, &r, 1).unwrap().dense,
                    uniform_dense_check(&t, &r, 1).unwrap().dense
                );
            }
        }
    }

    #[test]
    fn fy_examples() {
        let hull = cube(&[(1, 2), (1, 2)], q(1, 2));
        let g1 = BoxRd::new(vec![q(1, 3), q(1, 3)], vec![q(2, 3), q(2, 3)]).unwrap();
        let one = FYCutOutSpec::new(hull.clone(), vec![g1.clone()]).unwrap();
        assert_eq!(fy_thickness(&one), Extended::Finite(q(1, 1)));
        let mut gaps = vec![g1.clone()];
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) == (1, 1) {
                    continue;
                }
                let lo = vec![q(3 * i + 1, 9), q(3 * j + 1, 9)];
                let hi = vec![q(3 * i + 2, 9), q(3 * j + 2, 9)];
                gaps.push(BoxRd::new(lo, hi).unwrap());
            }
        }
        gaps.reverse();
        let carpet = FYCutOutSpec::new(hull.clone(), gaps).unwrap();
        assert_eq!(carpet.gaps[0], g1);
        assert_eq!(fy_thickness(&carpet), Extended::Finite(q(1, 1)));
        let moved = carpet.map_affine(&q(3, 7), &pt(&[(-2, 1), (5, 3)])).unwrap();
        assert_eq!(fy_thickness(&moved), Extended::Finite(q(1, 1)));
        assert_eq!(fy_thickness(&FYCutOutSpec::new(hull.clone(), vec![]).unwrap()), Extended::Infinity);
        let clash = BoxRd::new(vec![q(1, 2), q(1, 2)], vec![q(3, 4), q(3, 4)]).unwrap();
        assert!(matches!(FYCutOutSpec::new(hull.clone(), vec![g1, clash]), Err(Error::Overlap(_))));
        let out = BoxRd::new(vec![q(1, 2), q(1, 2)], vec![q(3, 2), q(3, 4)]).unwrap();
        assert!(matches!(FYCutOutSpec::new(hull, vec![out]), Err(Error::Containment(_))));
    }

    #[test]
    fn fy_thickness_homothety_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let hull = cube(&[(0, 1), (0, 1)], q(1, 1));
        for _ in 0..30 {
            let mut gaps: Vec<BoxRd<Q>> = Vec::new();
            while gaps.len() < 5 {
                let x = q(rng.gen_range(-90..80), 100);
                let y = q(rng.gen_range(-90..80), 100);
                let w = q(rng.gen_range(1..10), 100);
                let b = BoxRd::new(vec![x.clone(), y.clone()], vec![x + w.clone(), y + w]).unwrap();
                if gaps.iter().all(|g| !g.overlaps(&b)) {
                    gaps.push(b);
                }
            }
            let spec = FYCutOutSpec::new(hull.clone(), gaps).unwrap();
            let moved = spec.map_affine(&q(5, 3), &pt(&[(1, 7), (-4, 1)])).unwrap();
            assert_eq!(fy_thickness(&spec), fy_thickness(&moved));
        }
    }

    #[test]
    fn dimension_cross_check() {
        for (d, n, ell) in [(2usize, 10usize, q(7, 50)), (1, 2, q(2, 3)), (3, 3, q(1, 2)), (2, 5, q(1, 4))] {
            let s = make_corner_cantor(d, n, ell.clone()).unwrap();
            let est = box_dimension_rd(&s, 6).unwrap();
            let exact = d as f64 * (n as f64).ln() / (2.0 / ell.to_f64_lossy()).ln();
            assert!((est - exact).abs() < 1e-9);
            let tau = thickness_rd(&s, 1).value().unwrap().clone();
            let bound = dim_lower_bound_rd(&tau, d as u32, n as u32).unwrap().value;
            assert!(bound <= est + 1e-3, "{d} {n} {ell}: {bound} > {est}");
        }
    }

    #[test]
    fn covering_radius_basics() {
        let target = vec![(q(0, 1), q(1, 1))];
        assert_eq!(covering_radius(&target, &[(vec![q(1, 2)], q(0, 1))]), q(1, 2));
        assert_eq!(covering_radius(&target, &[(vec![q(0, 1)], q(0, 1)), (vec![q(1, 1)], q(0, 1))]), q(1, 2));
        assert_eq!(covering_radius(&target, &[(vec![q(0, 1)], q(0, 1)), (vec![q(1, 1)], q(1, 4))]), q(3, 8));
        let sq = vec![(q(0, 1), q(1, 1)), (q(0, 1), q(1, 1))];
        assert_eq!(covering_radius(&sq, &[(vec![q(0, 1), q(0, 1)], q(0, 1))]), q(1, 1));
    }

    #[test]
    fn uncovered_point_cases() {
        let target = vec![(q(0, 1), q(2, 1)), (q(0, 1), q(2, 1))];
        let halves = vec![vec![(q(0, 1), q(1, 1)), (q(0, 1), q(2, 1))], vec![(q(1, 1), q(2, 1)), (q(0, 1), q(2, 1))]];
        assert!(uncovered_point(&target, &halves).is_none());
        let gap = vec![vec![(q(0, 1), q(1, 1)), (q(0, 1), q(2, 1))], vec![(q(3, 2), q(2, 1)), (q(0, 1), q(2, 1))]];
        let p = uncovered_point(&target, &gap).unwrap();
        assert!(p[0] > q(1, 1) && p[0] < q(3, 2));
    }

    #[test]
    fn affine_maps() {
        let s = make_corner_cantor(2, 3, q(1, 2)).unwrap();
        let m = s.map_affine(&q(1, 2), &pt(&[(3, 1), (-1, 1)])).unwrap();
        assert_eq!(m.root(), &cube(&[(3, 1), (-1, 1)], q(1, 2)));
        assert_eq!(thickness_rd(&m, 2), thickness_rd(&s, 2));
        let a: Vec<_> = s.rasterize(2).iter().map(|c| c.map_affine(&q(1, 2), &pt(&[(3, 1), (-1, 1)]))).collect();
        assert_eq!(m.rasterize(2), a);
        let t = tree_example();
        let tm = t.translate(&pt(&[(1, 3), (2, 1)])).unwrap();
        assert_eq!(thickness_rd(&tm, 9), thickness_rd(&t, 9));
        assert!(s.map_affine(&q(0, 1), &pt(&[(0, 1), (0, 1)])).is_err());
    }
}
