//! Finite continued fractions of Weyl functions.
//!
//! A pair with nodes `x_1 < ... < x_N` turns its Weyl function into the
//! nested fraction
//!
//! ```text
//! m(z) = 1/(-l_1 z + 1/(q_1(z) + 1/(-l_2 z + ... + 1/(-l_{N+1} z))))
//! ```
//!
//! where `l_n` are hyperbolic node spacings and `q_n` degree-at-most-one
//! blocks carrying the weights. Stieltjes extraction inverts the map: it
//! reads the fraction off a rational function coefficient by coefficient,
//! rejecting input outside the admissible class.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Result, SpectralError};
use crate::peakon::PeakonPair;
use crate::polyalg::{poly_quotient, Poly, RatFunc};
use crate::scalar::Scalar;

/// Continued fraction data: `N + 1` spacings and `N` weight blocks
/// `q_n(z) = q0 + q1 z`.
///
/// Invariants: `l_1 >= 0` and `l_n > 0` for `n >= 2`; each block has
/// `q1 >= 0` and `|q0| + q1 > 0`; the spacings add up to `2 tanh(l/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CfData<K> {
    pub ls: Vec<K>,
    pub qs: Vec<(K, K)>,
}

impl<K: Scalar> CfData<K> {
    pub fn total_l(&self) -> K {
        self.ls.iter().fold(K::zero(), |acc, l| acc + l.clone())
    }

    pub fn to_f64(&self) -> CfData<f64> {
        CfData {
            ls: self.ls.iter().map(Scalar::to_f64).collect(),
            qs: self
                .qs
                .iter()
                .map(|(a, b)| (a.to_f64(), b.to_f64()))
                .collect(),
        }
    }
}

/// Continued fraction data of a pair:
/// `l_n = 2 t_n - 2 t_{n-1}` with `t_0 = 0`, `t_{N+1} = tanh(l/2)`, and
/// `q_n = (omega_n, upsilon_n) / (1 - t_n^2)`.
pub fn cf_from_pair<K: Scalar>(pair: &PeakonPair<K>) -> CfData<K> {
    let two = K::from_int(2);
    let mut ls = Vec::with_capacity(pair.len() + 1);
    let mut qs = Vec::with_capacity(pair.len());
    let mut prev = K::zero();
    for node in pair.nodes() {
        let t = node.tanh_half.clone();
        ls.push(two.clone() * (t.clone() - prev.clone()));
        let cosh_sq = K::one() / (K::one() - t.clone() * t.clone());
        qs.push((
            node.omega.clone() * cosh_sq.clone(),
            node.upsilon.clone() * cosh_sq,
        ));
        prev = t;
    }
    ls.push(two * (pair.period().tanh_half().clone() - prev));
    CfData { ls, qs }
}

/// Evaluates the nested fraction bottom-up at a complex point.
pub fn cf_evaluate<K: Scalar>(cf: &CfData<K>, z: Complex64) -> Result<Complex64> {
    let cf = cf.to_f64();
    let n = cf.qs.len();
    let pole_check = |v: Complex64| -> Result<Complex64> {
        if v.norm() <= 1e-14 * (1.0 + z.norm()) {
            Err(SpectralError::PoleHit(format!(
                "denominator vanished while evaluating at z = {z}"
            )))
        } else {
            Ok(v)
        }
    };
    // innermost term -l_{N+1} z, then alternate q_n and -l_n z outward
    let mut v = pole_check(-cf.ls[n] * z)?;
    for k in (0..n).rev() {
        let (q0, q1) = cf.qs[k];
        v = pole_check(Complex64::from(q0) + q1 * z + 1.0 / v)?;
        v = pole_check(-cf.ls[k] * z + 1.0 / v)?;
    }
    Ok(1.0 / v)
}

/// Relative threshold for treating a lifted-float coefficient as a true
/// zero during extraction.
const EXTRACT_REL_ZERO: f64 = 1e-9;

fn trim_with<K: Scalar>(p: &Poly<K>, rel_thresh: Option<f64>) -> Poly<K> {
    match rel_thresh {
        // exact arithmetic: `Poly::new` already strips literal zeros
        None => p.clone(),
        Some(t) => {
            let floor = t * p.max_abs();
            let mut coeffs = p.coeffs().to_vec();
            while let Some(last) = coeffs.last() {
                if last.abs().to_f64() <= floor {
                    coeffs.pop();
                } else {
                    break;
                }
            }
            Poly::new(coeffs)
        }
    }
}

/// Stieltjes extraction: reads the continued fraction off a rational
/// function, working on coefficient arrays throughout.
///
/// Each round strips one spacing and one weight block:
/// `w = 1/m` grows like `-l z`, so `l` is a leading-coefficient ratio;
/// `g = w + l z` then has `1/g = q(z) + (strictly proper)`, so `q` is a
/// polynomial part; the strictly proper remainder is the next `m`. Input
/// outside the admissible class shows up as a sign or degree violation.
///
/// The recursion lives or dies with its degree decisions, i.e. with
/// telling a true zero coefficient from a small one. Floating input is
/// therefore lifted exactly into rational arithmetic: no rounding enters
/// after the lift, so every would-be-zero coefficient stays at the scale
/// of the input noise and a single relative threshold separates it from
/// genuine data. Exact input runs the same recursion with literal zero
/// tests.
pub fn stieltjes_extract<K: Scalar>(m: &RatFunc<K>) -> Result<CfData<K>> {
    if K::EXACT {
        return extract_core(m.num(), m.den(), None);
    }
    let lift = |p: &Poly<K>| -> Poly<BigRational> {
        Poly::new(
            p.coeffs()
                .iter()
                .map(|c| <BigRational as Scalar>::from_f64(c.to_f64()))
                .collect(),
        )
    };
    let cf = extract_core(&lift(m.num()), &lift(m.den()), Some(EXTRACT_REL_ZERO))?;
    Ok(CfData {
        ls: cf.ls.iter().map(|v| K::from_f64(v.to_f64())).collect(),
        qs: cf
            .qs
            .iter()
            .map(|(a, b)| (K::from_f64(a.to_f64()), K::from_f64(b.to_f64())))
            .collect(),
    })
}

fn extract_core<K: Scalar>(
    m_num: &Poly<K>,
    m_den: &Poly<K>,
    rel_thresh: Option<f64>,
) -> Result<CfData<K>> {
    let mut num = trim_with(m_num, rel_thresh);
    let mut den = trim_with(m_den, rel_thresh);
    if num.is_zero() {
        return Err(SpectralError::NotAdmissible(
            "the zero function has no continued fraction of this form".into(),
        ));
    }

    let degree_bound = num.degree().unwrap_or(0) + den.degree().unwrap_or(0) + 2;
    let mut ls: Vec<K> = Vec::new();
    let mut qs: Vec<(K, K)> = Vec::new();

    loop {
        if ls.len() > degree_bound {
            return Err(SpectralError::NotAdmissible(
                "continued fraction extraction exceeded the degree bound".into(),
            ));
        }
        // w = 1/m
        let (w_num, w_den) = (den, num);
        if w_den.is_zero() {
            return Err(SpectralError::NotAdmissible(
                "expansion collapsed to zero".into(),
            ));
        }
        let dn = w_num.degree().unwrap();
        let dd = w_den.degree().unwrap();
        if dn > dd + 1 {
            return Err(SpectralError::NotAdmissible(format!(
                "pole of order {} > 1 at infinity in a reciprocal",
                dn - dd
            )));
        }
        let l = if dn == dd + 1 {
            -(w_num.leading().unwrap().clone() / w_den.leading().unwrap().clone())
        } else {
            K::zero()
        };
        if ls.is_empty() {
            if l < K::zero() {
                return Err(SpectralError::NotAdmissible(format!(
                    "first spacing l_1 = {l} is negative"
                )));
            }
        } else if l <= K::zero() {
            return Err(SpectralError::NotAdmissible(format!(
                "spacing l_{} = {l} is not positive",
                ls.len() + 1
            )));
        }

        // g = w + l z: the top coefficient cancels exactly by the choice of
        // l, and for a linear weight block the next one is a true zero too;
        // the threshold trim is what reads that structure off
        let g = if l.is_zero() {
            w_num.clone()
        } else {
            let sum = &w_num + &(&Poly::identity() * &w_den).scale(&l);
            trim_with(&sum, rel_thresh)
        };
        ls.push(l);
        if g.is_zero() {
            return Ok(CfData { ls, qs });
        }

        // 1/g = q + rem/g with q of degree at most one
        let (quot, rem) = poly_quotient(&w_den, &g)?;
        let quot = trim_with(&quot, rel_thresh);
        if quot.degree().unwrap_or(0) > 1 {
            return Err(SpectralError::NotAdmissible(format!(
                "weight block of degree {} > 1",
                quot.degree().unwrap()
            )));
        }
        if quot.is_zero() {
            return Err(SpectralError::NotAdmissible(
                "weight block is numerically zero".into(),
            ));
        }
        let q0 = quot.coeff(0);
        let mut q1 = quot.coeff(1);
        // classify the block as constant when the linear part is noise
        let scale = q0.abs().to_f64() + q1.abs().to_f64();
        if rel_thresh.is_some() && !q1.is_zero() && q1.abs().to_f64() <= 1e-10 * scale {
            q1 = K::zero();
        }
        if q1 < K::zero() {
            return Err(SpectralError::NotAdmissible(format!(
                "weight block has negative linear coefficient {q1}"
            )));
        }
        qs.push((q0, q1));

        let rem = trim_with(&rem, rel_thresh);
        if rem.is_zero() {
            return Err(SpectralError::NotAdmissible(
                "expansion terminated inside a weight block".into(),
            ));
        }
        num = rem;
        den = g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peakon::Period;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    const LN_4: f64 = 1.3862943611198906;

    fn t2_exact() -> PeakonPair<Q> {
        PeakonPair::from_tanh_data(
            Period::from_tanh_half(q(3, 5)).unwrap(),
            0.0,
            vec![(q(0, 1), q(1, 1), q(0, 1)), (q(1, 2), q(-1, 1), q(0, 1))],
        )
        .unwrap()
    }

    #[test]
    fn cf_data_of_fixtures() {
        let cf = cf_from_pair(&t2_exact());
        assert_eq!(cf.ls, vec![q(0, 1), q(1, 1), q(1, 5)]);
        assert_eq!(cf.qs, vec![(q(1, 1), q(0, 1)), (q(-4, 3), q(0, 1))]);
        assert_eq!(cf.total_l(), q(6, 5));

        let s1 = PeakonPair::new(LN_4, 0.0, &[(0.0, 1.0, 0.0)]).unwrap();
        let cf = cf_from_pair(&s1);
        assert!((cf.ls[0]).abs() < 1e-15);
        assert!((cf.ls[1] - 1.2).abs() < 1e-15);
        assert!((cf.qs[0].0 - 1.0).abs() < 1e-15);

        let empty = PeakonPair::<f64>::empty(Period::from_ell(LN_4).unwrap(), 0.0);
        let cf = cf_from_pair(&empty);
        assert!((cf.ls[0] - 1.2).abs() < 1e-15);
        assert!(cf.qs.is_empty());
    }

    #[test]
    fn cf_evaluation_matches_hand_values() {
        let one = Complex64::from(1.0);
        let v = cf_evaluate(&cf_from_pair(&t2_exact()), one).unwrap();
        assert!((v - Complex64::from(3.0 / 22.0)).norm() < 1e-14);

        let s1 = PeakonPair::new(LN_4, 0.0, &[(0.0, 1.0, 0.0)]).unwrap();
        let v = cf_evaluate(&cf_from_pair(&s1), one).unwrap();
        assert!((v - Complex64::from(1.0 / 6.0)).norm() < 1e-14);

        let empty = PeakonPair::<f64>::empty(Period::from_ell(LN_4).unwrap(), 0.0);
        let v = cf_evaluate(&cf_from_pair(&empty), one).unwrap();
        assert!((v + Complex64::from(5.0 / 6.0)).norm() < 1e-14);
    }

    #[test]
    fn cf_evaluation_detects_poles() {
        // the T2 Weyl function has a pole at z = -9/2
        let cf = cf_from_pair(&t2_exact());
        match cf_evaluate(&cf, Complex64::from(-4.5)) {
            Err(SpectralError::PoleHit(_)) => {}
            other => panic!("expected PoleHit, got {other:?}"),
        }
    }

    #[test]
    fn extraction_recovers_t2_exactly() {
        // (2z^2 + 7z - 15/2) / (2z^2 + 9z)
        let m = RatFunc::new(
            Poly::new(vec![q(-15, 2), q(7, 1), q(2, 1)]),
            Poly::new(vec![q(0, 1), q(9, 1), q(2, 1)]),
        )
        .unwrap();
        let cf = stieltjes_extract(&m).unwrap();
        assert_eq!(cf.ls, vec![q(0, 1), q(1, 1), q(1, 5)]);
        assert_eq!(cf.qs, vec![(q(1, 1), q(0, 1)), (q(-4, 3), q(0, 1))]);
    }

    #[test]
    fn extraction_of_bare_pole() {
        // m = -5/(6z)
        let m = RatFunc::new(Poly::constant(-5.0), Poly::new(vec![0.0, 6.0])).unwrap();
        let cf = stieltjes_extract(&m).unwrap();
        assert_eq!(cf.qs.len(), 0);
        assert!((cf.ls[0] - 1.2).abs() < 1e-14);
    }

    #[test]
    fn extraction_rejects_wrong_residue_sign() {
        // m = 1/z has l_1 = -1
        let m = RatFunc::new(Poly::<f64>::one(), Poly::identity()).unwrap();
        match stieltjes_extract(&m) {
            Err(SpectralError::NotAdmissible(msg)) => {
                assert!(msg.contains("l_1"), "{msg}");
            }
            other => panic!("expected NotAdmissible, got {other:?}"),
        }
    }

    #[test]
    fn extraction_rejects_fast_decay_and_high_growth() {
        // m = 1/z^2: weight block of degree 2
        let m = RatFunc::new(Poly::<f64>::one(), Poly::from_ints(&[0, 0, 1])).unwrap();
        assert!(matches!(
            stieltjes_extract(&m),
            Err(SpectralError::NotAdmissible(_))
        ));
        // m = z^2 - 1/z: second-order pole at infinity
        let m = RatFunc::new(Poly::<f64>::from_ints(&[-1, 0, 0, 1]), Poly::identity()).unwrap();
        assert!(matches!(
            stieltjes_extract(&m),
            Err(SpectralError::NotAdmissible(_))
        ));
    }

    #[test]
    fn evaluation_agrees_with_the_rational_function() {
        let m = RatFunc::new(
            Poly::new(vec![-7.5, 7.0, 2.0]),
            Poly::new(vec![0.0, 9.0, 2.0]),
        )
        .unwrap();
        let cf = stieltjes_extract(&m).unwrap();
        for k in 0..20 {
            let z = Complex64::new(0.3 * k as f64 - 2.7, 0.4 + 0.1 * k as f64);
            let lhs = cf_evaluate(&cf, z).unwrap();
            let rhs = m.eval_complex(z);
            assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
        }
    }
}
