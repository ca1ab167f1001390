//! Inverse problem for Dirichlet spectral data: given the eigenvalues,
//! norming constants and base-point masses, there is exactly one pair with
//! that data. The reconstruction assembles the Weyl function from its
//! partial fraction data, extracts the continued fraction and reads the
//! nodes off it.

use crate::contfrac::stieltjes_extract;
use crate::error::{Result, SpectralError};
use crate::forward::dirichlet_data;
use crate::peakon::{PeakonPair, Period};
use crate::polyalg::{Poly, RatFunc};
use crate::scalar::Scalar;

/// Input of the Dirichlet inverse problem.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSpectralInput<K> {
    /// Finite Dirichlet eigenvalues; nonzero, pairwise distinct.
    pub sigma: Vec<K>,
    /// Norming constants aligned with `sigma`; all positive.
    pub gammas: Vec<K>,
    pub omega_a: K,
    /// Nonnegative.
    pub upsilon_a: K,
    pub period: Period<K>,
    pub a: f64,
}

impl<K: Scalar> DirichletSpectralInput<K> {
    fn validate(&self) -> Result<()> {
        if self.sigma.len() != self.gammas.len() {
            return Err(SpectralError::InvalidInput(format!(
                "{} eigenvalues but {} norming constants",
                self.sigma.len(),
                self.gammas.len()
            )));
        }
        for kappa in &self.sigma {
            if kappa.is_zero() {
                return Err(SpectralError::InvalidInput(
                    "zero is never a Dirichlet eigenvalue".into(),
                ));
            }
        }
        let mut sorted = self.sigma.clone();
        sorted.sort_by(|l, r| l.partial_cmp(r).unwrap());
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(SpectralError::InvalidInput(format!(
                    "repeated Dirichlet eigenvalue {}",
                    w[0]
                )));
            }
        }
        for gamma in &self.gammas {
            if *gamma <= K::zero() {
                return Err(SpectralError::InvalidInput(format!(
                    "norming constant {gamma} is not positive"
                )));
            }
        }
        if self.upsilon_a < K::zero() {
            return Err(SpectralError::InvalidInput(
                "upsilon at the base point must be >= 0".into(),
            ));
        }
        Ok(())
    }

    /// Eigenvalue/norming pairs sorted by eigenvalue.
    fn sorted_pairs(&self) -> Vec<(K, K)> {
        let mut pairs: Vec<(K, K)> = self
            .sigma
            .iter()
            .cloned()
            .zip(self.gammas.iter().cloned())
            .collect();
        pairs.sort_by(|l, r| l.0.partial_cmp(&r.0).unwrap());
        pairs
    }
}

/// The Weyl function determined by Dirichlet data, over a common
/// denominator:
/// `m(z) = z upsilon_a + omega_a - coth(l/2)/(2z) + sum gamma/(kappa - z)`.
pub fn assemble_m<K: Scalar>(input: &DirichletSpectralInput<K>) -> Result<RatFunc<K>> {
    input.validate()?;
    let pairs = input.sorted_pairs();

    // prod (kappa_i - z)
    let mut prod_all = Poly::one();
    for (kappa, _) in &pairs {
        prod_all = &prod_all * &Poly::new(vec![kappa.clone(), -K::one()]);
    }
    let z = Poly::identity();
    let den = &z * &prod_all;

    let half_coth = input.period.coth_half() * K::ratio(1, 2);
    let mut num = &(&den * &Poly::new(vec![input.omega_a.clone(), input.upsilon_a.clone()]))
        - &prod_all.scale(&half_coth);
    for (i, (_, gamma)) in pairs.iter().enumerate() {
        let mut partial = Poly::one();
        for (j, (kappa_j, _)) in pairs.iter().enumerate() {
            if j != i {
                partial = &partial * &Poly::new(vec![kappa_j.clone(), -K::one()]);
            }
        }
        num = &num + &(&z * &partial).scale(gamma);
    }
    RatFunc::new(num, den)
}

/// A reconstructed pair together with the relative residual of the
/// forward re-check; the residual is the only error bound this solver
/// reports.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction<K> {
    pub pair: PeakonPair<K>,
    pub residual: f64,
}

pub fn solve_dirichlet<K: Scalar>(input: &DirichletSpectralInput<K>) -> Result<Reconstruction<K>> {
    solve_dirichlet_with(input, Some(1e-7))
}

/// Reconstruction with an explicit forward-verification tolerance
/// (`None` skips the re-check and reports a NaN residual).
pub fn solve_dirichlet_with<K: Scalar>(
    input: &DirichletSpectralInput<K>,
    verify_tol: Option<f64>,
) -> Result<Reconstruction<K>> {
    let m = assemble_m(input)?;
    let cf = stieltjes_extract(&m)?;

    let big_t = input.period.tanh_half().clone();
    let total = cf.total_l();
    let two = K::from_int(2);
    let expected = two.clone() * big_t.clone();
    if (total.clone() - expected.clone()).abs().to_f64() > 1e-10 * expected.to_f64() {
        return Err(SpectralError::InternalInconsistency(format!(
            "spacings sum to {total}, expected 2 tanh(l/2) = {expected}"
        )));
    }

    // a node sits at the base point exactly when the first spacing vanishes
    let l1_zero =
        cf.ls[0].is_zero() || (!K::EXACT && cf.ls[0].abs().to_f64() <= 1e-10 * big_t.to_f64());
    let base_mass_given = !(input.omega_a.is_zero() && input.upsilon_a.is_zero());
    if base_mass_given && !l1_zero {
        return Err(SpectralError::InconsistentBaseMass(format!(
            "base masses ({}, {}) given but the expansion starts with l_1 = {}",
            input.omega_a, input.upsilon_a, cf.ls[0]
        )));
    }
    if !base_mass_given && l1_zero && !cf.qs.is_empty() {
        return Err(SpectralError::InconsistentBaseMass(
            "expansion places a node at the base point but no base mass was given".into(),
        ));
    }

    let mut data = Vec::with_capacity(cf.qs.len());
    let mut acc = K::zero();
    for (n, (q0, q1)) in cf.qs.iter().enumerate() {
        let l = if n == 0 && l1_zero {
            K::zero()
        } else {
            cf.ls[n].clone()
        };
        acc = acc + l;
        let t = acc.clone() / two.clone();
        let scale = K::one() - t.clone() * t.clone();
        data.push((t, q0.clone() * scale.clone(), q1.clone() * scale));
    }

    if l1_zero && !data.is_empty() {
        let (_, omega_1, upsilon_1) = &data[0];
        let tol = 1e-7;
        let omega_ok = (omega_1.clone() - input.omega_a.clone()).abs().to_f64()
            <= tol * (1.0 + input.omega_a.abs().to_f64());
        let upsilon_ok = (upsilon_1.clone() - input.upsilon_a.clone()).abs().to_f64()
            <= tol * (1.0 + input.upsilon_a.abs().to_f64());
        if !omega_ok || !upsilon_ok {
            return Err(SpectralError::InconsistentBaseMass(format!(
                "recovered base node ({omega_1}, {upsilon_1}) does not match the given masses ({}, {})",
                input.omega_a, input.upsilon_a
            )));
        }
    }

    let pair = PeakonPair::from_tanh_data(input.period.clone(), input.a, data)?;

    let residual = match verify_tol {
        Some(tol) => {
            let r = verify_against_input(&pair, input)?;
            if r > tol {
                return Err(SpectralError::InternalInconsistency(format!(
                    "forward re-check residual {r:.3e} exceeds tolerance {tol:.3e}"
                )));
            }
            r
        }
        None => f64::NAN,
    };

    Ok(Reconstruction { pair, residual })
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

fn verify_against_input<K: Scalar>(
    pair: &PeakonPair<K>,
    input: &DirichletSpectralInput<K>,
) -> Result<f64> {
    let dd = dirichlet_data(pair)?;
    let found = dd.finite_kappas();
    let expected = input.sorted_pairs();
    if found.len() != expected.len() {
        return Err(SpectralError::InternalInconsistency(format!(
            "reconstruction has {} Dirichlet eigenvalues, expected {}",
            found.len(),
            expected.len()
        )));
    }
    let mut res: f64 = 0.0;
    for ((kappa, gamma), (exp_kappa, exp_gamma)) in found.iter().zip(&dd.gammas).zip(&expected) {
        res = res.max(rel_err(kappa.to_f64(), exp_kappa.to_f64()));
        res = res.max(rel_err(gamma.to_f64(), exp_gamma.to_f64()));
    }
    res = res.max(rel_err(dd.omega_a.to_f64(), input.omega_a.to_f64()));
    res = res.max(rel_err(dd.upsilon_a.to_f64(), input.upsilon_a.to_f64()));
    Ok(res)
}
