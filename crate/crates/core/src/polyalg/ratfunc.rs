//! Rational functions and their partial fraction data.

use num_complex::Complex64;

use crate::error::{Result, SpectralError};
use crate::polyalg::poly::{poly_quotient, Poly};
use crate::polyalg::roots::real_roots;
use crate::scalar::Scalar;

/// Ratio of two polynomials, stored in reduced form.
///
/// In rational mode common factors are cancelled exactly by a gcd. In
/// floating mode the constructor leaves the fraction alone: every rational
/// function this crate builds is coprime by construction (the monodromy
/// entries share no roots because their Wronskian is one), and matching
/// "common" roots numerically misfires exactly on the ill-conditioned
/// inputs where an entry takes a genuinely tiny value at a pole.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Scalar> RatFunc<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(SpectralError::InvalidInput(
                "rational function with zero denominator".into(),
            ));
        }
        let mut f = RatFunc { num, den };
        f.reduce()?;
        Ok(f)
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn eval(&self, x: &K) -> K {
        self.num.eval(x) / self.den.eval(x)
    }

    pub fn to_f64(&self) -> RatFunc<f64> {
        RatFunc {
            num: self.num.to_f64(),
            den: self.den.to_f64(),
        }
    }

    fn reduce(&mut self) -> Result<()> {
        if self.num.is_zero() {
            self.den = Poly::one();
            return Ok(());
        }
        if K::EXACT {
            let g = self.num.gcd_exact(&self.den);
            if g.degree().unwrap_or(0) > 0 {
                self.num = self.num.div_rem(&g)?.0;
                self.den = self.den.div_rem(&g)?.0;
            }
        }
        Ok(())
    }
}

impl RatFunc<f64> {
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.num.eval_complex(z) / self.den.eval_complex(z)
    }
}

/// Expansion `linear*z + constant + sum gamma_i / (pole_i - z)`.
///
/// The residue stored for a pole is the positive-spectral-weight
/// convention, i.e. minus the classical residue.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFraction<K> {
    pub linear: K,
    pub constant: K,
    /// (pole location, weight) pairs, poles pairwise distinct.
    pub poles: Vec<(K, K)>,
}

impl<K: Scalar> PartialFraction<K> {
    pub fn eval(&self, x: &K) -> K {
        let mut acc = self.linear.clone() * x.clone() + self.constant.clone();
        for (pole, weight) in &self.poles {
            acc = acc + weight.clone() / (pole.clone() - x.clone());
        }
        acc
    }

    pub fn to_f64(&self) -> PartialFraction<f64> {
        PartialFraction {
            linear: self.linear.to_f64(),
            constant: self.constant.to_f64(),
            poles: self
                .poles
                .iter()
                .map(|(p, w)| (p.to_f64(), w.to_f64()))
                .collect(),
        }
    }
}

impl PartialFraction<f64> {
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::from(self.constant) + self.linear * z;
        for &(pole, weight) in &self.poles {
            acc += weight / (pole - z);
        }
        acc
    }
}

/// Partial fraction expansion of a rational function whose poles are all
/// real and simple and whose numerator degree exceeds the denominator
/// degree by at most one.
pub fn partial_fractions<K: Scalar>(f: &RatFunc<K>) -> Result<PartialFraction<K>> {
    let (quot, rem) = poly_quotient(f.num(), f.den())?;
    if quot.degree().unwrap_or(0) > 1 {
        return Err(SpectralError::InvalidInput(format!(
            "polynomial part has degree {} > 1",
            quot.degree().unwrap()
        )));
    }
    let poles = real_roots(f.den(), true)
        .map_err(|e| SpectralError::PoleStructure(format!("nonreal pole: {e}")))?;
    let expected: usize = poles.iter().map(|(_, m)| m).sum();
    if expected != f.den().degree().unwrap_or(0) {
        return Err(SpectralError::PoleStructure(
            "denominator roots lost during isolation".into(),
        ));
    }
    let den_deriv = f.den().derivative();
    let mut out = Vec::with_capacity(poles.len());
    for (pole, mult) in poles {
        if mult > 1 {
            return Err(SpectralError::PoleStructure(format!(
                "multiple pole at {pole}"
            )));
        }
        // classical residue rem(p)/den'(p); store its negative
        let weight = -(rem.eval(&pole) / den_deriv.eval(&pole));
        out.push((pole, weight));
    }
    Ok(PartialFraction {
        linear: quot.coeff(1),
        constant: quot.coeff(0),
        poles: out,
    })
}
