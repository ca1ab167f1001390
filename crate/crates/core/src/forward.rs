//! Forward spectral maps: monodromy matrix, Floquet discriminant,
//! periodic/antiperiodic and Dirichlet spectra, gap and torus structure,
//! norming constants, divisors and the Weyl function.

use crate::error::{Result, SpectralError};
use crate::peakon::PeakonPair;
use crate::polyalg::{partial_fractions, real_roots, PartialFraction, Poly, RatFunc};
use crate::scalar::Scalar;

/// Monodromy matrix of a pair over one period: the four entries are
/// polynomials in the spectral parameter, with initial data set at the
/// base point. `det M = c s' - s c'` is identically one.
#[derive(Debug, Clone, PartialEq)]
pub struct Monodromy<K> {
    pub c: Poly<K>,
    pub s: Poly<K>,
    pub c_prime: Poly<K>,
    pub s_prime: Poly<K>,
    pub ell: f64,
    pub a: f64,
}

#[derive(Clone)]
struct Mat2<K> {
    a11: Poly<K>,
    a12: Poly<K>,
    a21: Poly<K>,
    a22: Poly<K>,
}

impl<K: Scalar> Mat2<K> {
    fn mul(&self, rhs: &Self) -> Self {
        Mat2 {
            a11: &(&self.a11 * &rhs.a11) + &(&self.a12 * &rhs.a21),
            a12: &(&self.a11 * &rhs.a12) + &(&self.a12 * &rhs.a22),
            a21: &(&self.a21 * &rhs.a11) + &(&self.a22 * &rhs.a21),
            a22: &(&self.a21 * &rhs.a12) + &(&self.a22 * &rhs.a22),
        }
    }
}

/// Transfer matrix across a node-free stretch, reduced by its cosh
/// prefactor: `[[1, 2 tau], [tau/2, 1]]` with `tau = tanh(d/2)`.
fn free_factor<K: Scalar>(tau: &K) -> Mat2<K> {
    let two = K::from_int(2);
    Mat2 {
        a11: Poly::one(),
        a12: Poly::constant(two.clone() * tau.clone()),
        a21: Poly::constant(tau.clone() / two),
        a22: Poly::one(),
    }
}

/// Left-to-right jump across a node: `f` stays, `f'` drops by
/// `(z omega + z^2 upsilon) f`.
fn jump_factor<K: Scalar>(omega: &K, upsilon: &K) -> Mat2<K> {
    Mat2 {
        a11: Poly::one(),
        a12: Poly::zero(),
        a21: Poly::new(vec![K::zero(), -omega.clone(), -upsilon.clone()]),
        a22: Poly::one(),
    }
}

/// Monodromy matrix of `pair`, accumulated right-to-left starting at the
/// base point. The hyperbolic subtraction formula turns consecutive node
/// coordinates into the per-segment `tau`, and the scalar cosh prefactor
/// is restored at the end from its square, which keeps the whole product
/// rational until a single square root.
pub fn monodromy<K: Scalar>(pair: &PeakonPair<K>) -> Result<Monodromy<K>> {
    let big_t = pair.period().tanh_half().clone();

    let mut endpoints: Vec<K> = Vec::with_capacity(pair.len() + 2);
    endpoints.push(K::zero());
    endpoints.extend(pair.nodes().iter().map(|n| n.tanh_half.clone()));
    endpoints.push(big_t);

    let mut taus = Vec::with_capacity(endpoints.len() - 1);
    for w in endpoints.windows(2) {
        taus.push((w[1].clone() - w[0].clone()) / (K::one() - w[1].clone() * w[0].clone()));
    }

    let mut cosh_prod_sq = K::one();
    for tau in &taus {
        cosh_prod_sq = cosh_prod_sq / (K::one() - tau.clone() * tau.clone());
    }
    let prefactor = cosh_prod_sq.sqrt_checked().ok_or_else(|| {
        SpectralError::IrrationalInExactMode(
            "cosh prefactor of the monodromy matrix is not rational; \
             exact mode needs a period with rational cosh(l/2)"
                .into(),
        )
    })?;

    let mut m = free_factor(&taus[0]);
    for (n, node) in pair.nodes().iter().enumerate() {
        m = jump_factor(&node.omega, &node.upsilon).mul(&m);
        m = free_factor(&taus[n + 1]).mul(&m);
    }

    Ok(Monodromy {
        c: m.a11.scale(&prefactor),
        s: m.a12.scale(&prefactor),
        c_prime: m.a21.scale(&prefactor),
        s_prime: m.a22.scale(&prefactor),
        ell: pair.ell(),
        a: pair.base(),
    })
}

impl<K: Scalar> Monodromy<K> {
    /// `c s' - s c'`, identically one up to rounding.
    pub fn det(&self) -> Poly<K> {
        &(&self.c * &self.s_prime) - &(&self.s * &self.c_prime)
    }
}

/// Floquet discriminant: half the trace of the monodromy matrix.
pub fn discriminant<K: Scalar>(mono: &Monodromy<K>) -> Poly<K> {
    let half = K::ratio(1, 2);
    (&mono.c + &mono.s_prime).scale(&half)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Periodic,
    Antiperiodic,
}

/// Periodic and antiperiodic spectra with multiplicities: the roots of
/// `Delta - 1` and `Delta + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FloquetSpectra<K> {
    pub periodic: Vec<(K, usize)>,
    pub antiperiodic: Vec<(K, usize)>,
}

pub fn floquet_spectra<K: Scalar>(delta: &Poly<K>) -> Result<FloquetSpectra<K>> {
    let spectrum = |shift: K| -> Result<Vec<(K, usize)>> {
        let p = &delta.clone() - &Poly::constant(shift);
        if p.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        real_roots(&p, true)
    };
    Ok(FloquetSpectra {
        periodic: spectrum(K::one())?,
        antiperiodic: spectrum(-K::one())?,
    })
}

/// Extended real line, for Dirichlet eigenvalues pushed to infinity in the
/// outermost gaps.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtReal<K> {
    NegInf,
    Finite(K),
    PosInf,
}

impl<K: Scalar> ExtReal<K> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<&K> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(v) => v.to_f64(),
            ExtReal::PosInf => f64::INFINITY,
        }
    }
}

/// One labeled zero of `Delta^2 - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandEdge<K> {
    pub value: K,
    pub kind: SpectrumKind,
    pub multiplicity: usize,
}

/// A spectral gap: a maximal closed interval where `|Delta| >= 1`, away
/// from the central gap around zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Gap<K> {
    /// Index in `{-I_minus..-1, 1..I_plus}`; sign matches the gap's side.
    pub index: i32,
    pub lo: ExtReal<K>,
    pub hi: ExtReal<K>,
    pub outermost: bool,
}

impl<K: Scalar> Gap<K> {
    pub fn is_closed(&self) -> bool {
        match (&self.lo, &self.hi) {
            (ExtReal::Finite(l), ExtReal::Finite(h)) => l == h,
            _ => false,
        }
    }

    /// Membership with an absolute-relative tolerance at finite endpoints.
    pub fn contains(&self, x: &K, tol: f64) -> bool {
        let xf = x.to_f64();
        let lo_ok = match &self.lo {
            ExtReal::NegInf => true,
            ExtReal::Finite(l) => xf >= l.to_f64() - tol * (1.0 + xf.abs()),
            ExtReal::PosInf => false,
        };
        let hi_ok = match &self.hi {
            ExtReal::NegInf => false,
            ExtReal::Finite(h) => xf <= h.to_f64() + tol * (1.0 + xf.abs()),
            ExtReal::PosInf => true,
        };
        lo_ok && hi_ok
    }
}

/// The labeled zeros of `Delta^2 - 1`, the gap intervals, and the
/// discriminant they came from. Together with the torus equation
/// `zeta^2 = Delta^2 - 1` this describes the isospectral torus.
#[derive(Debug, Clone, PartialEq)]
pub struct GapStructure<K> {
    pub edges: Vec<BandEdge<K>>,
    pub i_minus: usize,
    pub i_plus: usize,
    pub gaps: Vec<Gap<K>>,
    pub delta: Poly<K>,
}

impl<K: Scalar> GapStructure<K> {
    /// Gap indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = i32> + '_ {
        self.gaps.iter().map(|g| g.index)
    }

    pub fn gap(&self, index: i32) -> Option<&Gap<K>> {
        self.gaps.iter().find(|g| g.index == index)
    }
}

/// Assembles the gap structure from an admissible discriminant: sorts the
/// zeros of `Delta -+ 1`, checks the even sign counts, and cuts the line
/// into gaps. The central interval around zero is not a gap and carries no
/// index.
pub fn gap_structure<K: Scalar>(delta: &Poly<K>) -> Result<GapStructure<K>> {
    let spectra = floquet_spectra(delta)?;
    let mut edges: Vec<BandEdge<K>> = Vec::new();
    for (value, multiplicity) in spectra.periodic {
        edges.push(BandEdge {
            value,
            kind: SpectrumKind::Periodic,
            multiplicity,
        });
    }
    for (value, multiplicity) in spectra.antiperiodic {
        edges.push(BandEdge {
            value,
            kind: SpectrumKind::Antiperiodic,
            multiplicity,
        });
    }
    edges.sort_by(|l, r| l.value.partial_cmp(&r.value).unwrap());

    let mut expanded: Vec<K> = Vec::new();
    let mut neg = 0usize;
    let mut pos = 0usize;
    for e in &edges {
        if e.value.is_zero() {
            return Err(SpectralError::InternalInconsistency(
                "zero is never a periodic or antiperiodic eigenvalue".into(),
            ));
        }
        if e.value < K::zero() {
            neg += e.multiplicity;
        } else {
            pos += e.multiplicity;
        }
        for _ in 0..e.multiplicity {
            expanded.push(e.value.clone());
        }
    }
    if !neg.is_multiple_of(2) || !pos.is_multiple_of(2) {
        return Err(SpectralError::InternalInconsistency(format!(
            "odd number of band edges on one side ({neg} negative, {pos} positive)"
        )));
    }
    let i_minus = neg / 2;
    let i_plus = pos / 2;
    let deg = delta.degree().unwrap_or(0);
    if i_minus + i_plus != deg {
        return Err(SpectralError::InternalInconsistency(format!(
            "band edge count {} does not match discriminant degree {deg}",
            expanded.len()
        )));
    }

    // expanded[k] holds lambda with label: negative labels -2I-..-1 map to
    // positions 0..2I-, positive labels 1..2I+ map onward
    let lambda = |label: i32| -> &K {
        let idx = if label < 0 {
            (2 * i_minus as i32 + label) as usize
        } else {
            (2 * i_minus as i32 + label - 1) as usize
        };
        &expanded[idx]
    };

    let mut gaps = Vec::with_capacity(i_minus + i_plus);
    for i in (1..=i_minus as i32).rev().map(|i| -i) {
        let gap = if i == -(i_minus as i32) {
            Gap {
                index: i,
                lo: ExtReal::NegInf,
                hi: ExtReal::Finite(lambda(2 * i).clone()),
                outermost: true,
            }
        } else {
            Gap {
                index: i,
                lo: ExtReal::Finite(lambda(2 * i - 1).clone()),
                hi: ExtReal::Finite(lambda(2 * i).clone()),
                outermost: false,
            }
        };
        gaps.push(gap);
    }
    for i in 1..=i_plus as i32 {
        let gap = if i == i_plus as i32 {
            Gap {
                index: i,
                lo: ExtReal::Finite(lambda(2 * i).clone()),
                hi: ExtReal::PosInf,
                outermost: true,
            }
        } else {
            Gap {
                index: i,
                lo: ExtReal::Finite(lambda(2 * i).clone()),
                hi: ExtReal::Finite(lambda(2 * i + 1).clone()),
                outermost: false,
            }
        };
        gaps.push(gap);
    }

    Ok(GapStructure {
        edges,
        i_minus,
        i_plus,
        gaps,
        delta: delta.clone(),
    })
}

/// Dirichlet spectral data relative to the base point: one extended-real
/// eigenvalue per gap, a positive norming constant per finite eigenvalue,
/// the divisor heights, and the point masses at the base point.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletData<K> {
    pub kappas: Vec<ExtReal<K>>,
    /// Norming constants, aligned with the finite entries of `kappas`.
    pub gammas: Vec<K>,
    /// Divisor heights `zeta_i = Delta(kappa_i) - s'(kappa_i)`, zero at
    /// infinite eigenvalues; aligned with `kappas`.
    pub zetas: Vec<K>,
    pub omega_a: K,
    pub upsilon_a: K,
}

impl<K: Scalar> DirichletData<K> {
    pub fn finite_kappas(&self) -> Vec<K> {
        self.kappas
            .iter()
            .filter_map(|k| k.finite().cloned())
            .collect()
    }
}

/// Computes the full Dirichlet data of a pair: eigenvalues as the roots of
/// `s(., a+l)`, norming constants through
/// `1/(kappa gamma) = s_dot(kappa) s'(kappa)`, and gap placement with the
/// outermost gaps allowed to stay empty (eigenvalue at +-infinity).
pub fn dirichlet_data<K: Scalar>(pair: &PeakonPair<K>) -> Result<DirichletData<K>> {
    let mono = monodromy(pair)?;
    let delta = discriminant(&mono);
    let gaps = gap_structure(&delta)?;
    dirichlet_data_from(&mono, &gaps, pair)
}

fn dirichlet_data_from<K: Scalar>(
    mono: &Monodromy<K>,
    gaps: &GapStructure<K>,
    pair: &PeakonPair<K>,
) -> Result<DirichletData<K>> {
    let finite: Vec<K> = if mono.s.degree().unwrap_or(0) == 0 {
        Vec::new()
    } else {
        let roots = real_roots(&mono.s, true)?;
        for (r, m) in &roots {
            if *m > 1 {
                return Err(SpectralError::InternalInconsistency(format!(
                    "Dirichlet eigenvalue {r} is not simple"
                )));
            }
        }
        roots.into_iter().map(|(r, _)| r).collect()
    };

    // place each eigenvalue into exactly one gap
    let mut assigned: Vec<Option<usize>> = vec![None; gaps.gaps.len()];
    for (i, kappa) in finite.iter().enumerate() {
        let mut hits = gaps
            .gaps
            .iter()
            .enumerate()
            .filter(|(_, g)| g.contains(kappa, 1e-9));
        let slot = match (hits.next(), hits.next()) {
            (Some((j, _)), None) => j,
            _ => {
                return Err(SpectralError::InternalInconsistency(format!(
                    "Dirichlet eigenvalue {kappa} does not sit in exactly one gap"
                )))
            }
        };
        if assigned[slot].is_some() {
            return Err(SpectralError::InternalInconsistency(format!(
                "two Dirichlet eigenvalues in gap {}",
                gaps.gaps[slot].index
            )));
        }
        assigned[slot] = Some(i);
    }

    let mut kappas = Vec::with_capacity(gaps.gaps.len());
    let mut gammas = Vec::new();
    let mut zetas = Vec::with_capacity(gaps.gaps.len());
    for (gap, slot) in gaps.gaps.iter().zip(assigned) {
        match slot {
            Some(i) => {
                let kappa = finite[i].clone();
                let (c_val, s_prime_val) = entries_at_dirichlet_eigenvalue(mono, &kappa);
                // the derivative of s at one of its own roots, in product
                // form: no cancellation between the root factors
                let mut s_dot_val = mono.s.leading().unwrap().clone();
                for (j, other) in finite.iter().enumerate() {
                    if j != i {
                        s_dot_val = s_dot_val * (kappa.clone() - other.clone());
                    }
                }
                let inv = kappa.clone() * s_dot_val * s_prime_val.clone();
                if inv <= K::zero() {
                    return Err(SpectralError::InternalInconsistency(format!(
                        "norming constant at {kappa} came out nonpositive"
                    )));
                }
                gammas.push(K::one() / inv);
                zetas.push((c_val - s_prime_val) / K::from_int(2));
                kappas.push(ExtReal::Finite(kappa));
            }
            None => {
                if !gap.outermost {
                    return Err(SpectralError::InternalInconsistency(format!(
                        "interior gap {} has no Dirichlet eigenvalue",
                        gap.index
                    )));
                }
                zetas.push(K::zero());
                kappas.push(if gap.index < 0 {
                    ExtReal::NegInf
                } else {
                    ExtReal::PosInf
                });
            }
        }
    }

    let (omega_a, upsilon_a) = pair.base_masses();
    Ok(DirichletData {
        kappas,
        gammas,
        zetas,
        omega_a,
        upsilon_a,
    })
}

/// Dirichlet spectral data bundled with the discriminant and the Floquet
/// spectra; what the forward analysis of a pair produces.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData<K> {
    pub ell: f64,
    pub a: f64,
    pub delta: Poly<K>,
    pub spectra: FloquetSpectra<K>,
    pub dirichlet: DirichletData<K>,
}

pub fn spectral_data<K: Scalar>(pair: &PeakonPair<K>) -> Result<SpectralData<K>> {
    let mono = monodromy(pair)?;
    let delta = discriminant(&mono);
    let gaps = gap_structure(&delta)?;
    let spectra = floquet_spectra(&delta)?;
    let dirichlet = dirichlet_data_from(&mono, &gaps, pair)?;
    Ok(SpectralData {
        ell: pair.ell(),
        a: pair.base(),
        delta,
        spectra,
        dirichlet,
    })
}

/// Evaluates `(c(kappa), s'(kappa))` at a Dirichlet eigenvalue. Since
/// det M = 1 and `s(kappa) = 0` force `c(kappa) s'(kappa) = 1`, only the
/// better-conditioned of the two entries is read off its coefficients and
/// the other is taken as its reciprocal.
fn entries_at_dirichlet_eigenvalue<K: Scalar>(mono: &Monodromy<K>, kappa: &K) -> (K, K) {
    let c_val = mono.c.eval(kappa);
    let sp_val = mono.s_prime.eval(kappa);
    let kf = kappa.to_f64();
    let c_quality = c_val.abs().to_f64() / mono.c.eval_magnitude(kf).max(f64::MIN_POSITIVE);
    let sp_quality = sp_val.abs().to_f64() / mono.s_prime.eval_magnitude(kf).max(f64::MIN_POSITIVE);
    if c_quality >= sp_quality && !c_val.is_zero() {
        let recip = K::one() / c_val.clone();
        (c_val, recip)
    } else if !sp_val.is_zero() {
        (K::one() / sp_val.clone(), sp_val)
    } else {
        // both entries drowned in rounding noise; the caller's sign check
        // will reject the result
        (c_val, sp_val)
    }
}

/// Weyl function `m(z) = -c(z) / (z s(z))` together with its partial
/// fraction expansion. The expansion's constant and linear parts are the
/// base-point masses, the pole at zero carries weight `coth(l/2)/2`, and
/// the remaining poles are the Dirichlet eigenvalues with their norming
/// constants.
pub fn weyl_function<K: Scalar>(mono: &Monodromy<K>) -> Result<(RatFunc<K>, PartialFraction<K>)> {
    let num = -&mono.c;
    let den = &Poly::identity() * &mono.s;
    let f = RatFunc::new(num, den)?;
    let pf = partial_fractions(&f)?;
    Ok((f, pf))
}

/// Diagnostic quantities of the Dirichlet solution at a fixed eigenvalue,
/// obtained by propagating the solution of the spectral problem across the
/// period in closed form:
/// * `energy`: the eigenfunction energy integral, equal to `1/gamma`;
/// * `mass_sum`: `sum_n s(kappa, x_n)^2 (omega_n + 2 kappa upsilon_n)`,
///   equal to `1/(kappa gamma)`;
/// * `boundary_value`: `s(kappa, a+l)`, zero at true eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSolutionData<K> {
    pub energy: K,
    pub mass_sum: K,
    pub boundary_value: K,
}

pub fn dirichlet_solution_data<K: Scalar>(
    pair: &PeakonPair<K>,
    kappa: &K,
) -> DirichletSolutionData<K> {
    let two = K::from_int(2);
    let ell_exp = pair.period().exp_ell();

    // s(kappa, .) = p e^{(x-a)/2} + q e^{-(x-a)/2} piecewise; the jumps mix
    // p and q through e^{x_n - a} only, so everything stays rational in the
    // hyperbolic coordinates.
    let mut p = K::one();
    let mut q = -K::one();
    let mut prev_exp = K::one();
    let mut energy = K::zero();
    let mut mass_sum = K::zero();
    let mut upsilon_term = K::zero();

    let segment = |p: &K, q: &K, lo: &K, hi: &K| {
        (p.clone() * p.clone() * (hi.clone() - lo.clone())
            + q.clone() * q.clone() * (K::one() / lo.clone() - K::one() / hi.clone()))
            / two.clone()
    };

    for node in pair.nodes() {
        let e = node.exp_offset();
        if e != prev_exp {
            energy = energy + segment(&p, &q, &prev_exp, &e);
        }
        // s(kappa, x_n)^2 = p^2 E + 2pq + q^2/E
        let s_sq = p.clone() * p.clone() * e.clone()
            + two.clone() * p.clone() * q.clone()
            + q.clone() * q.clone() / e.clone();
        mass_sum = mass_sum
            + s_sq.clone()
                * (node.omega.clone() + two.clone() * kappa.clone() * node.upsilon.clone());
        upsilon_term = upsilon_term + kappa.clone() * kappa.clone() * s_sq * node.upsilon.clone();

        let chi = kappa.clone() * node.omega.clone()
            + kappa.clone() * kappa.clone() * node.upsilon.clone();
        let new_p = p.clone() - chi.clone() * (p.clone() + q.clone() / e.clone());
        let new_q = q.clone() + chi * (p.clone() * e.clone() + q.clone());
        p = new_p;
        q = new_q;
        prev_exp = e;
    }
    energy = energy + segment(&p, &q, &prev_exp, &ell_exp) + upsilon_term;

    // boundary value needs sqrt(L); report it as s(a+l) * cosh-free scale:
    // p sqrt(L) + q / sqrt(L) = (p L + q) / sqrt(L); the sqrt only rescales,
    // so the zero test is on p L + q.
    let boundary_value = match ell_exp.sqrt_checked() {
        Some(root) => p.clone() * root.clone() + q.clone() / root,
        None => p.clone() * ell_exp + q.clone(),
    };

    DirichletSolutionData {
        energy,
        mass_sum,
        boundary_value,
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
    const LN_3: f64 = 1.0986122886681098;

    fn s1() -> PeakonPair<f64> {
        PeakonPair::new(LN_4, 0.0, &[(0.0, 1.0, 0.0)]).unwrap()
    }

    fn t2() -> PeakonPair<f64> {
        PeakonPair::new(LN_4, 0.0, &[(0.0, 1.0, 0.0), (LN_3, -1.0, 0.0)]).unwrap()
    }

    fn t2_exact() -> PeakonPair<Q> {
        PeakonPair::from_tanh_data(
            Period::from_tanh_half(q(3, 5)).unwrap(),
            0.0,
            vec![(q(0, 1), q(1, 1), q(0, 1)), (q(1, 2), q(-1, 1), q(0, 1))],
        )
        .unwrap()
    }

    fn assert_poly_close(p: &Poly<f64>, expected: &[f64], tol: f64) {
        assert_eq!(p.coeffs().len(), expected.len(), "{p:?} vs {expected:?}");
        for (c, e) in p.coeffs().iter().zip(expected) {
            assert!((c - e).abs() <= tol, "{p:?} vs {expected:?}");
        }
    }

    #[test]
    fn single_peakon_monodromy() {
        let mono = monodromy(&s1()).unwrap();
        assert_poly_close(&mono.c, &[1.25, -1.5], 1e-14);
        assert_poly_close(&mono.s, &[1.5], 1e-14);
        assert_poly_close(&mono.c_prime, &[0.375, -1.25], 1e-14);
        assert_poly_close(&mono.s_prime, &[1.25], 1e-14);
        let delta = discriminant(&mono);
        assert_poly_close(&delta, &[1.25, -0.75], 1e-14);
    }

    #[test]
    fn empty_pair_monodromy_is_constant() {
        let pair = PeakonPair::<f64>::empty(Period::from_ell(LN_4).unwrap(), 0.0);
        let mono = monodromy(&pair).unwrap();
        assert_poly_close(&mono.c, &[1.25], 1e-14);
        assert_poly_close(&mono.s, &[1.5], 1e-14);
        assert_poly_close(&mono.c_prime, &[0.375], 1e-14);
        assert_poly_close(&mono.s_prime, &[1.25], 1e-14);
        assert_poly_close(&discriminant(&mono), &[1.25], 1e-14);
    }

    #[test]
    fn two_peakon_monodromy_exact() {
        let mono = monodromy(&t2_exact()).unwrap();
        assert_eq!(mono.s, Poly::new(vec![q(3, 2), q(1, 3)]));
        assert_eq!(mono.s_prime, Poly::new(vec![q(5, 4), q(7, 6)]));
        assert_eq!(mono.c, Poly::new(vec![q(5, 4), q(-7, 6), q(-1, 3)]));
        let delta = discriminant(&mono);
        assert_eq!(delta, Poly::new(vec![q(5, 4), q(0, 1), q(-1, 6)]));
        // det M = 1 exactly
        assert_eq!(mono.det(), Poly::one());
    }

    #[test]
    fn floquet_spectra_of_fixtures() {
        let delta: Poly<f64> = Poly::new(vec![1.25, -0.75]);
        let fs = floquet_spectra(&delta).unwrap();
        assert_eq!(fs.periodic.len(), 1);
        assert!((fs.periodic[0].0 - 1.0 / 3.0).abs() < 1e-12);
        assert!((fs.antiperiodic[0].0 - 3.0).abs() < 1e-12);

        let delta: Poly<f64> = Poly::new(vec![1.25, 0.0, -1.0 / 6.0]);
        let fs = floquet_spectra(&delta).unwrap();
        let per: Vec<f64> = fs.periodic.iter().map(|r| r.0).collect();
        assert!((per[0] + (1.5f64).sqrt()).abs() < 1e-12);
        assert!((per[1] - (1.5f64).sqrt()).abs() < 1e-12);
        let anti: Vec<f64> = fs.antiperiodic.iter().map(|r| r.0).collect();
        assert!((anti[0] + (13.5f64).sqrt()).abs() < 1e-12);
        assert!((anti[1] - (13.5f64).sqrt()).abs() < 1e-12);

        let fs = floquet_spectra(&Poly::constant(1.25)).unwrap();
        assert!(fs.periodic.is_empty() && fs.antiperiodic.is_empty());
    }

    #[test]
    fn gap_structure_of_fixtures() {
        let delta: Poly<f64> = Poly::new(vec![1.25, 0.0, -1.0 / 6.0]);
        let gs = gap_structure(&delta).unwrap();
        assert_eq!((gs.i_minus, gs.i_plus), (1, 1));
        assert_eq!(gs.gaps.len(), 2);
        assert_eq!(gs.gaps[0].index, -1);
        assert!(gs.gaps[0].outermost);
        assert_eq!(gs.gaps[0].lo, ExtReal::NegInf);
        assert!((gs.gaps[0].hi.to_f64() + (13.5f64).sqrt()).abs() < 1e-12);
        assert_eq!(gs.gaps[1].index, 1);
        assert!((gs.gaps[1].lo.to_f64() - (13.5f64).sqrt()).abs() < 1e-12);
        assert_eq!(gs.gaps[1].hi, ExtReal::PosInf);

        let delta: Poly<f64> = Poly::new(vec![1.25, -0.75]);
        let gs = gap_structure(&delta).unwrap();
        assert_eq!((gs.i_minus, gs.i_plus), (0, 1));
        assert_eq!(gs.gaps.len(), 1);
        assert!((gs.gaps[0].lo.to_f64() - 3.0).abs() < 1e-12);

        let gs = gap_structure(&Poly::constant(1.25f64)).unwrap();
        assert!(gs.gaps.is_empty());
    }

    #[test]
    fn dirichlet_data_of_t2() {
        let dd = dirichlet_data(&t2()).unwrap();
        assert_eq!(dd.kappas.len(), 2);
        assert!((dd.kappas[0].to_f64() + 4.5).abs() < 1e-12);
        assert_eq!(dd.kappas[1], ExtReal::PosInf);
        assert_eq!(dd.gammas.len(), 1);
        assert!((dd.gammas[0].to_f64() - 1.0 / 6.0).abs() < 1e-12);
        assert!((dd.zetas[0] - 1.875).abs() < 1e-12);
        assert_eq!(dd.zetas[1], 0.0);
        assert_eq!((dd.omega_a, dd.upsilon_a), (1.0, 0.0));
    }

    #[test]
    fn dirichlet_data_of_t2_exact() {
        let dd = dirichlet_data(&t2_exact()).unwrap();
        assert_eq!(dd.kappas[0], ExtReal::Finite(q(-9, 2)));
        assert_eq!(dd.gammas, vec![q(1, 6)]);
        assert_eq!(dd.zetas[0], q(15, 8));
        assert_eq!(dd.omega_a, q(1, 1));
    }

    #[test]
    fn dirichlet_data_of_s1_and_empty() {
        let dd = dirichlet_data(&s1()).unwrap();
        assert_eq!(dd.kappas, vec![ExtReal::PosInf]);
        assert!(dd.gammas.is_empty());
        assert_eq!((dd.omega_a, dd.upsilon_a), (1.0, 0.0));

        let empty = PeakonPair::<f64>::empty(Period::from_ell(LN_4).unwrap(), 0.0);
        let dd = dirichlet_data(&empty).unwrap();
        assert!(dd.kappas.is_empty());
        assert!(dd.gammas.is_empty());
        assert_eq!((dd.omega_a, dd.upsilon_a), (0.0, 0.0));
    }

    #[test]
    fn weyl_function_of_fixtures() {
        let (m, pf) = weyl_function(&monodromy(&s1()).unwrap()).unwrap();
        // m = 1 - 5/(6z)
        let at = |x: f64| m.eval(&x);
        assert!((at(1.0) - (1.0 - 5.0 / 6.0)).abs() < 1e-13);
        assert!((pf.constant - 1.0).abs() < 1e-13);
        assert!(pf.linear.abs() < 1e-13);
        assert_eq!(pf.poles.len(), 1);
        assert!((pf.poles[0].1 - 5.0 / 6.0).abs() < 1e-13);

        let (m, pf) = weyl_function(&monodromy(&t2_exact()).unwrap()).unwrap();
        // (2z^2 + 7z - 15/2)/(2z^2 + 9z) up to a common scale
        let z = q(1, 1);
        assert_eq!(m.eval(&z), q(3, 22));
        assert_eq!(pf.constant, q(1, 1));
        assert_eq!(pf.linear, q(0, 1));
        assert_eq!(pf.poles, vec![(q(-9, 2), q(1, 6)), (q(0, 1), q(5, 6))]);

        // empty pair: m = -coth(l/2)/(2z)
        let empty = PeakonPair::<f64>::empty(Period::from_ell(LN_4).unwrap(), 0.0);
        let (m, pf) = weyl_function(&monodromy(&empty).unwrap()).unwrap();
        assert!((m.eval(&1.0) + 5.0 / 6.0).abs() < 1e-13);
        assert_eq!(pf.poles.len(), 1);
        assert!((pf.poles[0].1 - 5.0 / 6.0).abs() < 1e-13);
    }

    #[test]
    fn norming_constant_dual_routes_t2() {
        // energy route: 1/gamma = 6; mass route: 1/(kappa gamma) = -4/3
        let data = dirichlet_solution_data(&t2_exact(), &q(-9, 2));
        assert_eq!(data.energy, q(6, 1));
        assert_eq!(data.mass_sum, q(-4, 3));
        assert_eq!(data.boundary_value, q(0, 1));
    }

    #[test]
    fn determinant_is_one_with_upsilon_masses() {
        let pair = PeakonPair::new(
            1.9,
            -0.3,
            &[(-0.3, 0.8, 0.5), (0.4, -1.2, 0.0), (1.1, 0.7, 0.3)],
        )
        .unwrap();
        let mono = monodromy(&pair).unwrap();
        let det = mono.det();
        let diff = &det - &Poly::one();
        assert!(
            diff.is_negligible(1e-9, det.max_abs().max(1.0)),
            "det deviates: {diff:?}"
        );
        // initial values at z = 0
        let half = 1.9f64 / 2.0;
        assert!((mono.c.eval(&0.0) - half.cosh()).abs() < 1e-12);
        assert!((mono.s.eval(&0.0) - 2.0 * half.sinh()).abs() < 1e-12);
        assert!((mono.c_prime.eval(&0.0) - 0.5 * half.sinh()).abs() < 1e-12);
        assert!((mono.s_prime.eval(&0.0) - half.cosh()).abs() < 1e-12);
    }
}
