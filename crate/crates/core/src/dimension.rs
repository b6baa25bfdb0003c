//! Hausdorff dimension lower bounds from thickness, the region claim used in
//! their proof, and a box-counting estimate for self-similar sets.

use crate::core1d::CutOutSet;
use crate::error::{Error, Result};
use crate::interval::Extended;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFormula {
    OneDim,
    Rd { d: u32, m0: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimBound {
    pub value: f64,
    pub formula: BoundFormula,
    pub tau: f64,
}

fn positive_tau<T: Scalar>(tau: &T) -> Result<f64> {
    if tau <= &T::zero() {
        return Err(Error::Domain(format!("thickness must be positive, got {tau}")));
    }
    Ok(tau.to_f64_lossy())
}

/// `log 2 / log(2 + 1/tau)`.
pub fn dim_lower_bound_1d<T: Scalar>(tau: &T) -> Result<DimBound> {
    let t = positive_tau(tau)?;
    Ok(DimBound { value: beta(t), formula: BoundFormula::OneDim, tau: t })
}

/// The bound for an extended-real thickness; `+inf` gives 1.
pub fn dim_lower_bound_1d_extended<T: Scalar>(tau: &Extended<T>) -> Result<DimBound> {
    match tau {
        Extended::Finite(t) => dim_lower_bound_1d(t),
        Extended::Infinity => Ok(DimBound { value: 1.0, formula: BoundFormula::OneDim, tau: f64::INFINITY }),
    }
}

fn beta(t: f64) -> f64 {
    std::f64::consts::LN_2 / (2.0 + 1.0 / t).ln()
}

/// `d / (1 + log(1 + 1/tau) / log M0)` for systems whose cubes have at
/// least `M0` non-overlapping children.
pub fn dim_lower_bound_rd<T: Scalar>(tau: &T, d: u32, m0: u32) -> Result<DimBound> {
    let t = positive_tau(tau)?;
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    if m0 < 2 {
        return Err(Error::Domain(format!("M0 must be at least 2, got {m0}")));
    }
    let value = d as f64 / (1.0 + (1.0 / t).ln_1p() / (m0 as f64).ln());
    Ok(DimBound { value, formula: BoundFormula::Rd { d, m0 }, tau: t })
}

/// A point of the region with its value `x^beta + y^beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSample {
    pub x: f64,
    pub y: f64,
    pub g: f64,
}

/// Samples `x^beta + y^beta` along the oblique boundary
/// `y = 1 - (1 + 1/tau) x`, `0 <= x <= 1/(2 + 1/tau)`, and its mirror image.
pub fn region_samples<T: Scalar>(tau: &T, samples: usize) -> Result<Vec<RegionSample>> {
    let t = positive_tau(tau)?;
    if samples < 2 {
        return Err(Error::Domain("at least two samples are needed".into()));
    }
    let b = beta(t);
    let end = 1.0 / (2.0 + 1.0 / t);
    let slope = 1.0 + 1.0 / t;
    let mut out = Vec::with_capacity(2 * samples);
    for i in 0..samples {
        let x = end * i as f64 / (samples - 1) as f64;
        let y = (1.0 - slope * x).max(0.0);
        let g = x.powf(b) + y.powf(b);
        out.push(RegionSample { x, y, g });
        out.push(RegionSample { x: y, y: x, g });
    }
    Ok(out)
}

/// Observed minimum of `x^beta + y^beta` over the sampled boundary.
pub fn verify_region_claim<T: Scalar>(tau: &T, samples: usize) -> Result<f64> {
    Ok(region_samples(tau, samples)?.iter().map(|s| s.g).fold(f64::INFINITY, f64::min))
}

/// Least-squares slope of `log N(delta)` against `log(1/delta)`, where
/// `N(delta)` counts the construction intervals of a Moran cut at scale
/// `delta = r_max^k`, `k = 1..=depth`.
pub fn box_dimension_estimate<T: Scalar>(c: &CutOutSet<T>, depth: usize) -> Result<f64> {
    let maps = c.maps().ok_or_else(|| Error::Degenerate("box counting needs a self-similar generator".into()))?;
    if c.is_gapless() {
        return Err(Error::Degenerate("the set is an interval".into()));
    }
    if depth < 2 {
        return Err(Error::Domain("depth must be at least 2".into()));
    }
    let ratios: Vec<f64> = maps.iter().map(|m| m.ratio.to_f64_lossy()).collect();
    let r_max = ratios.iter().cloned().fold(0.0, f64::max);
    let mut xs = Vec::with_capacity(depth);
    let mut ys = Vec::with_capacity(depth);
    for k in 1..=depth {
        let delta = r_max.powi(k as i32);
        xs.push(-delta.ln());
        ys.push((moran_cut(&ratios, 1.0, delta) as f64).ln());
    }
    Ok(slope(&xs, &ys))
}

fn moran_cut(ratios: &[f64], r: f64, delta: f64) -> u64 {
    if r <= delta * (1.0 + 1e-12) {
        return 1;
    }
    ratios.iter().map(|q| moran_cut(ratios, r * q, delta)).sum()
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// A lower bound for the upper thickness (the supremum of the thickness of
/// compact subsets): the largest thickness among restrictions of the set to
/// windows spanned by its components.
///
/// Self-similar sets return their own thickness, which every cylinder
/// shares.
pub fn upper_thickness_heuristic<T: Scalar>(c: &CutOutSet<T>) -> Result<Extended<T>> {
    if !c.is_finite() {
        return Ok(c.thickness(1).lo);
    }
    let comps = c.truncate_to_intervals(0);
    let gaps: Vec<_> = c.finite_gaps().unwrap_or(&[]).iter().map(|g| g.interval.clone()).collect();
    let mut best = c.thickness(1).lo;
    for i in 0..comps.len() {
        for j in i..comps.len() {
            let (lo, hi) = (&comps[i].left, &comps[j].right);
            let inner: Vec<_> = gaps.iter().filter(|g| &g.left >= lo && &g.right <= hi).cloned().collect();
            let sub = CutOutSet::explicit(crate::interval::Interval::new(lo.clone(), hi.clone()), inner)?;
            let t = sub.thickness(1).lo;
            if t > best {
                best = t;
            }
        }
    }
    Ok(best)
}
