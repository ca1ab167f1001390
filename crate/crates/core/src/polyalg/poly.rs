//! Dense real-coefficient polynomials in the spectral parameter.

use num_complex::Complex64;

use crate::error::{Result, SpectralError};
use crate::scalar::{trim_tolerance, Scalar};

/// Polynomial with coefficients in ascending degree order.
///
/// The zero polynomial is the empty coefficient list; otherwise the last
/// coefficient is nonzero, so `degree = coeffs.len() - 1`. In floating
/// mode a leading coefficient counts as zero when it is below
/// `1e-12 * max|coeffs|`, which is what every degree decision in this
/// crate rests on.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> Poly<K> {
    pub fn new(coeffs: Vec<K>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    /// The monomial `z`.
    pub fn identity() -> Self {
        Self::new(vec![K::zero(), K::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| K::from_int(c)).collect())
    }

    /// lc * prod (z - r_i), expanded.
    pub fn from_roots(lc: K, roots: &[K]) -> Self {
        let mut p = Self::constant(lc);
        for r in roots {
            p = &p * &Poly::new(vec![-r.clone(), K::one()]);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Largest coefficient magnitude as a double, 0 for the zero polynomial.
    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64())
            .fold(0.0, f64::max)
    }

    /// `sum |c_i| |x|^i` in doubles: the scale against which an evaluation
    /// at `x` carries rounding noise.
    pub fn eval_magnitude(&self, x: f64) -> f64 {
        let r = x.abs();
        let mut scale = 0.0;
        let mut power = 1.0;
        for c in &self.coeffs {
            scale += c.abs().to_f64() * power;
            power *= r;
        }
        scale
    }

    fn trim(&mut self) {
        let tol = trim_tolerance::<K>(self.max_abs());
        while let Some(last) = self.coeffs.last() {
            let negligible = if K::EXACT {
                last.is_zero()
            } else {
                last.abs().to_f64() <= tol
            };
            if negligible {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    /// Drops the leading coefficient unconditionally. Callers use this when
    /// the top term is known to cancel algebraically and only rounding
    /// residue is left.
    pub fn drop_leading(&mut self) {
        self.coeffs.pop();
        self.trim();
    }

    /// True when every coefficient is below `tol_rel` times `scale`
    /// (exact zero in exact mode).
    pub fn is_negligible(&self, tol_rel: f64, scale: f64) -> bool {
        if K::EXACT {
            return self.is_zero();
        }
        self.max_abs() <= tol_rel * scale.max(f64::MIN_POSITIVE)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| K::from_int(i as i64) * c.clone())
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, factor: &K) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        )
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    /// Long division: `self = q * den + r` with `deg r < deg den`.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self)> {
        if den.is_zero() {
            return Err(SpectralError::InvalidInput(
                "polynomial division by zero".into(),
            ));
        }
        let dd = den.degree().unwrap();
        if self.is_zero() || self.degree().unwrap() < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let dn = self.degree().unwrap();
        let lead = den.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![K::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let q = rem[k + dd].clone() / lead.clone();
            quot[k] = q.clone();
            for j in 0..=dd {
                rem[k + j] = rem[k + j].clone() - q.clone() * den.coeffs[j].clone();
            }
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic gcd by the Euclidean algorithm; meaningful in exact mode only.
    pub fn gcd_exact(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = K::one() / lc.clone();
                a.scale(&inv)
            }
            _ => a,
        }
    }
}

impl Poly<f64> {
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

impl<K: Scalar> std::ops::Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(coeffs)
    }
}

impl<K: Scalar> std::ops::Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(coeffs)
    }
}

impl<K: Scalar> std::ops::Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<K: Scalar> std::ops::Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Quotient and remainder of `num / den`, coefficient-exact in rational
/// mode and tolerance-trimmed in floating mode.
pub fn poly_quotient<K: Scalar>(num: &Poly<K>, den: &Poly<K>) -> Result<(Poly<K>, Poly<K>)> {
    num.div_rem(den)
}
