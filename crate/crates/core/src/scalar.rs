//! Numeric backends: double precision and exact rational arithmetic.
//!
//! Every spectral map in this crate is generic over [`Scalar`]. With `f64`
//! the maps run in ordinary floating point; with [`BigRational`] all field
//! operations are exact, which turns the algebraic identities of the theory
//! into equality tests. Root finding is the one place where exactness can
//! be lost: irrational roots are computed in floating point and lifted back
//! (see `polyalg::real_roots`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// A real scalar field the spectral algebra can run over.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// True when arithmetic is exact and zero tests need no tolerance.
    const EXACT: bool;

    /// Exact embedding of a finite double.
    fn from_f64(x: f64) -> Self;

    fn from_int(n: i64) -> Self;

    /// Nearest double; lossy for rationals with long digits.
    fn to_f64(&self) -> f64;

    /// Square root, if it exists in the field: always for nonnegative
    /// doubles, only for perfect squares of rationals.
    fn sqrt_checked(&self) -> Option<Self>;

    /// Parse either a plain number or a `"p/q"` ratio.
    fn parse_ratio(s: &str) -> Option<Self>;

    /// Ratio of two small integers.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_f64(x: f64) -> Self {
        x
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }

    fn parse_ratio(s: &str) -> Option<Self> {
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p.trim().parse().ok()?;
            let q: f64 = q.trim().parse().ok()?;
            if q == 0.0 {
                return None;
            }
            Some(p / q)
        } else {
            s.trim().parse().ok()
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_f64(x: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(x)
            .expect("finite float required for exact arithmetic")
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let reduced = self.reduced();
        let num = reduced.numer();
        let den = reduced.denom();
        let num_root = num.sqrt();
        let den_root = den.sqrt();
        if &(&num_root * &num_root) == num && &(&den_root * &den_root) == den {
            Some(BigRational::new(num_root, den_root))
        } else {
            None
        }
    }

    fn parse_ratio(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Ok(r) = s.parse::<BigRational>() {
            return Some(r);
        }
        // fall back to decimal literals like "1.25"
        s.parse::<f64>()
            .ok()
            .and_then(<BigRational as FromPrimitive>::from_f64)
    }
}

/// Relative trimming threshold for coefficients of scale `scale`;
/// exact backends trim only exact zeros.
pub fn trim_tolerance<K: Scalar>(scale: f64) -> f64 {
    if K::EXACT {
        0.0
    } else {
        1e-12 * scale
    }
}
