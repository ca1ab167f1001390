//! Trace identities: symmetric functions of the spectra against integrals
//! of the pair, reported as residuals.
//!
//! The eight identities:
//! * `trace1/trace2`: reciprocal (squared) sums of the periodic and
//!   antiperiodic eigenvalues against `int u` and `int dmu`;
//! * `tid1/tid2`: the same sums corrected by the Dirichlet spectrum
//!   against `u(a)` and `P(a)`;
//! * `delta_dot0/delta_ddot0` and `s_dot0/s_ddot0`: the first two Taylor
//!   coefficients of the discriminant and of `s(., a+l)` at zero against
//!   their closed forms in `int u`, `int dmu`, `u(a)` and `P(a)`.

use serde::Serialize;

use crate::error::Result;
use crate::forward::{dirichlet_data, discriminant, floquet_spectra, monodromy};
use crate::peakon::PeakonPair;
use crate::polyalg::Poly;
use crate::scalar::Scalar;

/// One identity: both sides and the normalized residual
/// `|lhs - rhs| / (1 + |lhs|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceReport {
    pub trace1: IdentityCheck,
    pub trace2: IdentityCheck,
    pub tid1: IdentityCheck,
    pub tid2: IdentityCheck,
    pub delta_dot0: IdentityCheck,
    pub delta_ddot0: IdentityCheck,
    pub s_dot0: IdentityCheck,
    pub s_ddot0: IdentityCheck,
}

impl TraceReport {
    pub fn identities(&self) -> [(&'static str, IdentityCheck); 8] {
        [
            ("trace1", self.trace1),
            ("trace2", self.trace2),
            ("tid1", self.tid1),
            ("tid2", self.tid2),
            ("delta_dot0", self.delta_dot0),
            ("delta_ddot0", self.delta_ddot0),
            ("s_dot0", self.s_dot0),
            ("s_ddot0", self.s_ddot0),
        ]
    }

    pub fn max_residual(&self) -> f64 {
        self.identities()
            .iter()
            .map(|(_, c)| c.residual)
            .fold(0.0, f64::max)
    }
}

fn check<K: Scalar>(lhs: K, rhs: K) -> IdentityCheck {
    let residual = (lhs.clone() - rhs.clone()).abs().to_f64() / (1.0 + lhs.abs().to_f64());
    IdentityCheck {
        lhs: lhs.to_f64(),
        rhs: rhs.to_f64(),
        residual,
    }
}

/// Reciprocal power sums `sum 1/r` and `sum 1/r^2` over the roots of `p`,
/// read off the low-order coefficients (`p(0) != 0`).
fn reciprocal_sums_from_coeffs<K: Scalar>(p: &Poly<K>) -> (K, K) {
    let c0 = p.coeff(0);
    let ratio1 = p.coeff(1) / c0.clone();
    let s1 = -ratio1.clone();
    let s2 = ratio1.clone() * ratio1 - K::from_int(2) * p.coeff(2) / c0;
    (s1, s2)
}

/// Evaluates both sides of all eight identities on a pair.
pub fn trace_report<K: Scalar>(pair: &PeakonPair<K>) -> Result<TraceReport> {
    let mono = monodromy(pair)?;
    let delta = discriminant(&mono);

    // spectral side: reciprocal sums over the three spectra
    let (per1, per2, anti1, anti2, kap1, kap2);
    if K::EXACT {
        // coefficient route keeps exact inputs exact
        let shifted = |sign: K| &delta - &Poly::constant(sign);
        let (p1, p2) = reciprocal_sums_from_coeffs(&shifted(K::one()));
        let (a1, a2) = reciprocal_sums_from_coeffs(&shifted(-K::one()));
        let (k1, k2) = reciprocal_sums_from_coeffs(&mono.s);
        per1 = p1;
        per2 = p2;
        anti1 = a1;
        anti2 = a2;
        kap1 = k1;
        kap2 = k2;
    } else {
        let spectra = floquet_spectra(&delta)?;
        let sums = |roots: &[(K, usize)]| {
            let mut s1 = K::zero();
            let mut s2 = K::zero();
            for (r, mult) in roots {
                let m = K::from_int(*mult as i64);
                s1 = s1 + m.clone() / r.clone();
                s2 = s2 + m / (r.clone() * r.clone());
            }
            (s1, s2)
        };
        let (p1, p2) = sums(&spectra.periodic);
        let (a1, a2) = sums(&spectra.antiperiodic);
        let dd = dirichlet_data(pair)?;
        let (k1, k2) = sums(
            &dd.finite_kappas()
                .into_iter()
                .map(|k| (k, 1))
                .collect::<Vec<_>>(),
        );
        per1 = p1;
        per2 = p2;
        anti1 = a1;
        anti2 = a2;
        kap1 = k1;
        kap2 = k2;
    }

    // measure side
    let (int_u, int_mu) = pair.conserved_quantities();
    let u_a = pair.u_at_base();
    let p_a = pair.p_at_base();
    let ch = pair.period().cosh_half()?;
    let sh = pair.period().sinh_half()?;
    let coth = pair.period().coth_half();

    let two = K::from_int(2);
    let four = K::from_int(4);

    let trace1 = check(
        per1.clone() + anti1.clone(),
        two.clone() * coth.clone() * int_u.clone(),
    );
    let trace2 = check(
        per2.clone() + anti2.clone(),
        two.clone() * int_u.clone() * int_u.clone() / (sh.clone() * sh.clone())
            + four.clone() * coth * int_mu.clone(),
    );
    let tid1 = check(
        (per1 + anti1 - two.clone() * kap1) / four.clone(),
        u_a.clone(),
    );
    let tid2 = check(
        (per2 + anti2 - two.clone() * kap2) / K::from_int(16),
        p_a.clone(),
    );
    let delta_dot0 = check(delta.coeff(1), -sh.clone() * int_u.clone());
    let delta_ddot0 = check(
        two.clone() * delta.coeff(2),
        ch.clone() * int_u.clone() * int_u.clone() - two.clone() * sh.clone() * int_mu.clone(),
    );
    let s_dot0 = check(
        mono.s.coeff(1),
        four.clone() * sh.clone() * u_a.clone() - two.clone() * ch.clone() * int_u.clone(),
    );
    let s_ddot0 = check(
        two.clone() * mono.s.coeff(2),
        two.clone() * sh.clone() * int_u.clone() * int_u.clone()
            - K::from_int(8) * ch.clone() * u_a.clone() * int_u
            - four * ch * int_mu
            + K::from_int(8) * sh.clone() * u_a.clone() * u_a
            + K::from_int(16) * sh * p_a,
    );

    Ok(TraceReport {
        trace1,
        trace2,
        tid1,
        tid2,
        delta_dot0,
        delta_ddot0,
        s_dot0,
        s_ddot0,
    })
}
