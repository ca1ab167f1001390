//! Inverse problem for the periodic spectrum: an admissible discriminant
//! plus a point on its isospectral torus determine a unique pair. The
//! solver rebuilds the Dirichlet data from the divisor and delegates to
//! the Dirichlet reconstruction.

use std::f64::consts::PI;

use crate::error::{Result, SpectralError};
use crate::forward::{spectral_data, DirichletData, ExtReal, Gap, GapStructure};
use crate::inverse_dirichlet::{solve_dirichlet_with, DirichletSpectralInput, Reconstruction};
use crate::peakon::{PeakonPair, Period};
use crate::polyalg::{poly_quotient, real_roots, Poly};
use crate::scalar::Scalar;

/// One divisor point `(kappa_i, zeta_i)` on the torus component over gap
/// `i`: `zeta^2 = Delta(kappa)^2 - 1` with `kappa` in the gap, and
/// `zeta = 0` at an infinite `kappa`.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisorPoint<K> {
    pub kappa: ExtReal<K>,
    pub zeta: K,
}

/// The divisor of forward Dirichlet data.
pub fn divisor_from_dirichlet<K: Scalar>(dd: &DirichletData<K>) -> Vec<DivisorPoint<K>> {
    dd.kappas
        .iter()
        .zip(&dd.zetas)
        .map(|(kappa, zeta)| DivisorPoint {
            kappa: kappa.clone(),
            zeta: zeta.clone(),
        })
        .collect()
}

/// Checks that a polynomial is an admissible discriminant for the period:
/// value `cosh(l/2)` at zero, only real, nonzero, simple roots, and no
/// critical value strictly inside `(-1, 1)`. Returns the gap structure.
pub fn validate_discriminant<K: Scalar>(
    delta: &Poly<K>,
    period: &Period<K>,
) -> Result<GapStructure<K>> {
    let ch = period.cosh_half()?;
    let at_zero = delta.eval(&K::zero());
    if (at_zero.clone() - ch.clone()).abs().to_f64() > 1e-10 * ch.to_f64() {
        return Err(SpectralError::BadNormalization(format!(
            "Delta(0) = {at_zero}, expected cosh(l/2) = {ch}"
        )));
    }
    if delta.degree().unwrap_or(0) >= 1 {
        let roots = real_roots(delta, true)?;
        for (r, m) in &roots {
            if *m > 1 {
                return Err(SpectralError::NotRealRooted(format!(
                    "repeated discriminant root at {r}"
                )));
            }
        }
    }
    if delta.degree().unwrap_or(0) >= 2 {
        let critical = real_roots(&delta.derivative(), true).map_err(|e| {
            SpectralError::InternalInconsistency(format!(
                "critical points of a real-rooted polynomial must be real: {e}"
            ))
        })?;
        for (lambda, _) in critical {
            let value = delta.eval(&lambda).abs().to_f64();
            if value < 1.0 - 1e-10 {
                return Err(SpectralError::CriticalValueInsideBand(format!(
                    "|Delta({})| = {value} < 1",
                    lambda.to_f64()
                )));
            }
        }
    }
    gap_structure_checked(delta)
}

fn gap_structure_checked<K: Scalar>(delta: &Poly<K>) -> Result<GapStructure<K>> {
    crate::forward::gap_structure(delta)
}

fn check_divisor<K: Scalar>(divisor: &[DivisorPoint<K>], gaps: &GapStructure<K>) -> Result<()> {
    if divisor.len() != gaps.gaps.len() {
        return Err(SpectralError::DivisorOffTorus(format!(
            "{} divisor points for {} gaps",
            divisor.len(),
            gaps.gaps.len()
        )));
    }
    let mut prev: Option<f64> = None;
    for (point, gap) in divisor.iter().zip(&gaps.gaps) {
        match &point.kappa {
            ExtReal::Finite(kappa) => {
                if kappa.is_zero() {
                    return Err(SpectralError::DivisorOffTorus(
                        "divisor point at zero".into(),
                    ));
                }
                if !gap.contains(kappa, 1e-9) {
                    return Err(SpectralError::DivisorOffTorus(format!(
                        "kappa = {} outside gap {} = [{}, {}]",
                        kappa.to_f64(),
                        gap.index,
                        gap.lo.to_f64(),
                        gap.hi.to_f64()
                    )));
                }
                let value = gaps.delta.eval(kappa);
                let target = value.clone() * value.clone() - K::one();
                let zeta_sq = point.zeta.clone() * point.zeta.clone();
                let err = (zeta_sq.clone() - target.clone()).abs().to_f64();
                if err > 1e-6 * (1.0 + target.abs().to_f64()) {
                    return Err(SpectralError::DivisorOffTorus(format!(
                        "zeta^2 = {} but Delta(kappa)^2 - 1 = {}",
                        zeta_sq.to_f64(),
                        target.to_f64()
                    )));
                }
                let kf = kappa.to_f64();
                if let Some(p) = prev {
                    if kf <= p {
                        return Err(SpectralError::DivisorOffTorus(
                            "divisor eigenvalues not strictly increasing".into(),
                        ));
                    }
                }
                prev = Some(kf);
            }
            infinite => {
                let side_ok = match infinite {
                    ExtReal::NegInf => gap.outermost && gap.index < 0 && prev.is_none(),
                    ExtReal::PosInf => gap.outermost && gap.index > 0,
                    ExtReal::Finite(_) => unreachable!(),
                };
                if !side_ok {
                    return Err(SpectralError::DivisorOffTorus(format!(
                        "infinite eigenvalue only allowed in the matching outermost gap, not gap {}",
                        gap.index
                    )));
                }
                if !point.zeta.is_zero() && point.zeta.abs().to_f64() > 1e-12 {
                    return Err(SpectralError::DivisorOffTorus(
                        "zeta must vanish at an infinite eigenvalue".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

pub fn solve_periodic<K: Scalar>(
    delta: &Poly<K>,
    divisor: &[DivisorPoint<K>],
    period: &Period<K>,
    a: f64,
) -> Result<Reconstruction<K>> {
    solve_periodic_with(delta, divisor, period, a, Some(1e-7))
}

/// Reconstruction from (discriminant, divisor); `verify_tol = None` skips
/// the forward re-check.
pub fn solve_periodic_with<K: Scalar>(
    delta: &Poly<K>,
    divisor: &[DivisorPoint<K>],
    period: &Period<K>,
    a: f64,
    verify_tol: Option<f64>,
) -> Result<Reconstruction<K>> {
    let gaps = validate_discriminant(delta, period)?;
    check_divisor(divisor, &gaps)?;

    // sigma(z) = 2 sinh(l/2) prod (1 - z/kappa) over the finite divisor
    let two_sinh = K::from_int(2) * period.sinh_half()?;
    let mut sigma_poly = Poly::constant(two_sinh.clone());
    let finite: Vec<(K, K)> = divisor
        .iter()
        .filter_map(|p| p.kappa.finite().map(|k| (k.clone(), p.zeta.clone())))
        .collect();
    for (kappa, _) in &finite {
        sigma_poly = &sigma_poly * &Poly::new(vec![K::one(), -(K::one() / kappa.clone())]);
    }

    // -(2 Delta - 2) / (z sigma) = z upsilon_a + omega_a + o(1)
    let numerator = &Poly::constant(K::from_int(2)) - &delta.scale(&K::from_int(2));
    let z_sigma = &Poly::identity() * &sigma_poly;
    let (quot, _rem) = poly_quotient(&numerator, &z_sigma)?;
    if quot.degree().unwrap_or(0) > 1 {
        return Err(SpectralError::InternalInconsistency(format!(
            "asymptotic polynomial part has degree {}",
            quot.degree().unwrap()
        )));
    }
    let omega_a = quot.coeff(0);
    let mut upsilon_a = quot.coeff(1);
    if upsilon_a < K::zero() {
        if upsilon_a.abs().to_f64() <= 1e-9 * (1.0 + omega_a.abs().to_f64()) {
            upsilon_a = K::zero();
        } else {
            return Err(SpectralError::NegativeUpsilonA(format!(
                "asymptotic matching gives upsilon_a = {}",
                upsilon_a.to_f64()
            )));
        }
    }

    // gamma_i = 1 / (kappa_i sigma'(kappa_i) (Delta(kappa_i) - zeta_i))
    let mut sigma = Vec::with_capacity(finite.len());
    let mut gammas = Vec::with_capacity(finite.len());
    for (i, (kappa, zeta)) in finite.iter().enumerate() {
        // derivative of the product 2 sinh(l/2) prod (1 - z/kappa_j) at its
        // own root: only the i-th factor differentiates
        let mut sigma_dot_val = -two_sinh.clone() / kappa.clone();
        for (j, (other, _)) in finite.iter().enumerate() {
            if j != i {
                sigma_dot_val = sigma_dot_val * (K::one() - kappa.clone() / other.clone());
            }
        }
        // (Delta - zeta)(Delta + zeta) = 1 on the torus: take the form that
        // avoids cancellation when zeta sits close to Delta
        let delta_val = delta.eval(kappa);
        let diff = delta_val.clone() - zeta.clone();
        let total = delta_val + zeta.clone();
        let delta_minus_zeta = if !K::EXACT && total.abs() > diff.abs() && !total.is_zero() {
            K::one() / total
        } else {
            diff
        };
        let inv = kappa.clone() * sigma_dot_val * delta_minus_zeta;
        if inv <= K::zero() {
            return Err(SpectralError::NonpositiveGamma(format!(
                "1/gamma = {} at kappa = {}",
                inv.to_f64(),
                kappa.to_f64()
            )));
        }
        sigma.push(kappa.clone());
        gammas.push(K::one() / inv);
    }

    let input = DirichletSpectralInput {
        sigma,
        gammas,
        omega_a,
        upsilon_a,
        period: period.clone(),
        a,
    };
    let rec = solve_dirichlet_with(&input, None)?;

    let residual = match verify_tol {
        Some(tol) => {
            let r = verify_against_divisor(&rec.pair, delta, divisor)?;
            if r > tol {
                return Err(SpectralError::InternalInconsistency(format!(
                    "forward re-check residual {r:.3e} exceeds tolerance {tol:.3e}"
                )));
            }
            r
        }
        None => f64::NAN,
    };
    Ok(Reconstruction {
        pair: rec.pair,
        residual,
    })
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

fn verify_against_divisor<K: Scalar>(
    pair: &PeakonPair<K>,
    delta: &Poly<K>,
    divisor: &[DivisorPoint<K>],
) -> Result<f64> {
    let forward = spectral_data(pair)?;
    let mut res: f64 = 0.0;
    let n = delta.coeffs().len().max(forward.delta.coeffs().len());
    for i in 0..n {
        res = res.max(rel_err(
            forward.delta.coeff(i).to_f64(),
            delta.coeff(i).to_f64(),
        ));
    }
    let out_divisor = divisor_from_dirichlet(&forward.dirichlet);
    if out_divisor.len() != divisor.len() {
        return Err(SpectralError::InternalInconsistency(
            "reconstruction changed the number of gaps".into(),
        ));
    }
    for (found, given) in out_divisor.iter().zip(divisor) {
        match (&found.kappa, &given.kappa) {
            (ExtReal::Finite(f), ExtReal::Finite(g)) => {
                res = res.max(rel_err(f.to_f64(), g.to_f64()));
                res = res.max(rel_err(found.zeta.to_f64(), given.zeta.to_f64()));
            }
            (ExtReal::NegInf, ExtReal::NegInf) | (ExtReal::PosInf, ExtReal::PosInf) => {}
            _ => {
                return Err(SpectralError::InternalInconsistency(
                    "reconstruction moved a divisor point across infinity".into(),
                ))
            }
        }
    }
    Ok(res)
}

/// Torus chart used for sampling, gap by gap:
/// * interior gap `[lo, hi]`: `kappa = mid + half cos(theta)`;
/// * outermost positive gap `[lo, inf]`: `kappa = lo + w (1 - cos)/(1 + cos)`
///   with scale `w = max(1, |lo|)`, and `theta = pi` the point at infinity
///   (mirrored on the negative side);
/// * always `zeta = -sign(sin theta) sqrt(max(Delta(kappa)^2 - 1, 0))`.
fn divisor_choice(gap: &Gap<f64>, delta: &Poly<f64>, theta: f64) -> DivisorPoint<f64> {
    let kappa = match (&gap.lo, &gap.hi) {
        (ExtReal::Finite(lo), ExtReal::Finite(hi)) => {
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            ExtReal::Finite(mid + half * theta.cos())
        }
        (ExtReal::Finite(lo), ExtReal::PosInf) => {
            if theta == PI {
                ExtReal::PosInf
            } else {
                let w = lo.abs().max(1.0);
                ExtReal::Finite(lo + w * (1.0 - theta.cos()) / (1.0 + theta.cos()))
            }
        }
        (ExtReal::NegInf, ExtReal::Finite(hi)) => {
            if theta == PI {
                ExtReal::NegInf
            } else {
                let w = hi.abs().max(1.0);
                ExtReal::Finite(hi - w * (1.0 - theta.cos()) / (1.0 + theta.cos()))
            }
        }
        _ => unreachable!("gaps have at least one finite endpoint"),
    };
    let zeta = match &kappa {
        ExtReal::Finite(k) => {
            let value = delta.eval(k);
            -(theta.sin().signum()) * (value * value - 1.0).max(0.0).sqrt()
        }
        _ => 0.0,
    };
    DivisorPoint { kappa, zeta }
}

/// Samples the isospectral family of `delta` on a product grid over its
/// open gaps: `samples_per_gap` angles per open gap, one forced choice per
/// closed gap. The output order enumerates the grid with the angle of the
/// last gap varying fastest; every returned pair reproduces `delta`.
pub fn isospectral_sample(
    delta: &Poly<f64>,
    period: &Period<f64>,
    a: f64,
    samples_per_gap: usize,
) -> Result<Vec<PeakonPair<f64>>> {
    if samples_per_gap == 0 {
        return Err(SpectralError::InvalidInput(
            "need at least one sample per gap".into(),
        ));
    }
    let gaps = validate_discriminant(delta, period)?;

    let choices: Vec<Vec<DivisorPoint<f64>>> = gaps
        .gaps
        .iter()
        .map(|gap| {
            if gap.is_closed() {
                let kappa = gap.lo.finite().copied().unwrap();
                vec![DivisorPoint {
                    kappa: ExtReal::Finite(kappa),
                    zeta: 0.0,
                }]
            } else {
                (0..samples_per_gap)
                    .map(|j| {
                        let theta = -PI + 2.0 * PI * (j as f64 + 1.0) / samples_per_gap as f64;
                        divisor_choice(gap, delta, theta)
                    })
                    .collect()
            }
        })
        .collect();

    let total: usize = choices.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    let mut index = vec![0usize; choices.len()];
    for _ in 0..total {
        let divisor: Vec<DivisorPoint<f64>> = index
            .iter()
            .zip(&choices)
            .map(|(&i, c)| c[i].clone())
            .collect();
        let rec = solve_periodic(delta, &divisor, period, a)?;
        out.push(rec.pair);
        for slot in (0..index.len()).rev() {
            index[slot] += 1;
            if index[slot] < choices[slot].len() {
                break;
            }
            index[slot] = 0;
        }
    }
    Ok(out)
}
