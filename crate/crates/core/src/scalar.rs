//! Scalar abstraction shared by every geometric routine in the crate.
//!
//! Set endpoints, gap lengths and game radii are all expressed through
//! [`Scalar`]. The crate is meant to be used with [`BigRational`], where every
//! comparison is exact; `f64` is supported for quick exploratory work where
//! ties and containment tests are only approximate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Ordered field element used for set data.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `num / den`; `den` must be non-zero.
    fn ratio(num: i64, den: i64) -> Self;

    /// Largest integer not exceeding `self`.
    fn floor_int(&self) -> Self;

    /// Whether comparisons on this type are exact.
    fn is_exact() -> bool;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn half(&self) -> Self {
        self.clone() / Self::ratio(2, 1)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// An upper bound for the non-negative `k`-th root of `self >= 0`,
    /// exact whenever the root is representable.
    fn root_upper(&self, k: u32) -> Self;

    /// Exact non-negative integer power.
    fn powu(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for BigRational {
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn floor_int(&self) -> Self {
        self.floor()
    }

    fn is_exact() -> bool {
        true
    }

    fn root_upper(&self, k: u32) -> Self {
        assert!(k > 0 && !self.is_negative(), "root of a negative number");
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        // (n/d)^(1/k) = (n d^(k-1) 2^(64k))^(1/k) / (d 2^64)
        let d = self.denom();
        let m = self.numer() * d.pow(k - 1);
        let exact = m.nth_root(k);
        if exact.pow(k) == m {
            return BigRational::new(exact, d.clone());
        }
        let scale = BigInt::one() << 64usize;
        let s = (m << (64 * k as usize)).nth_root(k) + BigInt::one();
        BigRational::new(s, d * scale)
    }
}

impl Scalar for f64 {
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn floor_int(&self) -> Self {
        f64::floor(*self)
    }

    fn is_exact() -> bool {
        false
    }

    fn root_upper(&self, k: u32) -> Self {
        self.powf(1.0 / k as f64)
    }
}

/// Minimum of two partially ordered values (left-biased on ties).
pub(crate) fn min_of<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

pub(crate) fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Exact conversion of an `f64` to a rational (every finite double is dyadic).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Parses `"p/q"`, `"n"`, decimals (`"0.25"`) and scientific notation
/// (`"1e-12"`, `"2.5E3"`) into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(idx) => (&s[..idx], s[idx + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let negative = mantissa.starts_with('-');
    let mantissa = mantissa.trim_start_matches(['+', '-']);
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt =
        if digits.is_empty() { BigInt::zero() } else { BigInt::from_str_radix(&digits, 10).ok()? };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Formats a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Formats a float with 12 significant digits.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

/// Integer-valued ceiling of `log_base(x)` for exact rationals `x > 0`,
/// `base > 1`: the least `k >= 0` with `base^k >= x`.
pub fn ceil_log(x: &BigRational, base: &BigRational) -> u32 {
    let mut k = 0;
    let mut p = BigRational::one();
    while &p < x {
        p *= base;
        k += 1;
    }
    k
}
