//! Periodic multi-peakon measure pairs: the phase space every spectral map
//! acts on.
//!
//! A pair is a period length, a base point and finitely many nodes
//! `(x_n, omega_n, upsilon_n)` in one period window. The profile they
//! induce is `u(x) = sum_n omega_n G(x - x_n)` with the periodized Green
//! kernel `G(d) = cosh(d - l/2) / (2 sinh(l/2))`.
//!
//! Internally each node also carries its hyperbolic coordinate
//! `t_n = tanh((x_n - a)/2)`. Those coordinates are rational for exact
//! inputs, and every quantity needed by the spectral theory at
//! distinguished points (nodes and base point) is a rational expression in
//! `t_n` and `tanh(l/2)`, which is what makes the exact backend possible.

use crate::error::{Result, SpectralError};
use crate::scalar::Scalar;

/// Period length carried both as a plain real and as `tanh(l/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Period<K> {
    ell: f64,
    tanh_half: K,
}

impl<K: Scalar> Period<K> {
    pub fn from_ell(ell: f64) -> Result<Self> {
        if !(ell > 0.0 && ell.is_finite()) {
            return Err(SpectralError::InvalidInput(format!(
                "period length must be positive, got {ell}"
            )));
        }
        Ok(Period {
            ell,
            tanh_half: K::from_f64((ell / 2.0).tanh()),
        })
    }

    /// Exact constructor from `t = tanh(l/2)`, `0 < t < 1`.
    pub fn from_tanh_half(tanh_half: K) -> Result<Self> {
        if tanh_half <= K::zero() || tanh_half >= K::one() {
            return Err(SpectralError::InvalidInput(
                "tanh(l/2) must lie in (0, 1)".into(),
            ));
        }
        let ell = 2.0 * tanh_half.to_f64().atanh();
        Ok(Period { ell, tanh_half })
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn tanh_half(&self) -> &K {
        &self.tanh_half
    }

    /// `exp(l) = (1 + t)/(1 - t)`.
    pub fn exp_ell(&self) -> K {
        (K::one() + self.tanh_half.clone()) / (K::one() - self.tanh_half.clone())
    }

    /// `cosh(l/2) = 1/sqrt(1 - t^2)`; fails in exact mode when that square
    /// root is irrational.
    pub fn cosh_half(&self) -> Result<K> {
        let t = &self.tanh_half;
        let inv = K::one() / (K::one() - t.clone() * t.clone());
        inv.sqrt_checked().ok_or_else(|| {
            SpectralError::IrrationalInExactMode(format!(
                "cosh(l/2) = sqrt({inv}) is not rational; exact mode needs a period with rational cosh(l/2)"
            ))
        })
    }

    pub fn sinh_half(&self) -> Result<K> {
        Ok(self.tanh_half.clone() * self.cosh_half()?)
    }

    /// `coth(l/2) = 1/t`, rational whenever `t` is.
    pub fn coth_half(&self) -> K {
        K::one() / self.tanh_half.clone()
    }
}

/// One point mass: position, its hyperbolic coordinate relative to the
/// base point, and the two weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Node<K> {
    pub x: f64,
    pub tanh_half: K,
    pub omega: K,
    pub upsilon: K,
}

impl<K: Scalar> Node<K> {
    /// `exp(x - a) = (1 + t)/(1 - t)`.
    pub fn exp_offset(&self) -> K {
        (K::one() + self.tanh_half.clone()) / (K::one() - self.tanh_half.clone())
    }
}

/// A periodic multi-peakon pair `(u, mu)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakonPair<K> {
    period: Period<K>,
    a: f64,
    nodes: Vec<Node<K>>,
}

impl<K: Scalar> PeakonPair<K> {
    pub fn empty(period: Period<K>, a: f64) -> Self {
        PeakonPair {
            period,
            a,
            nodes: Vec::new(),
        }
    }

    /// Builds a pair from hyperbolic node data `(t_n, omega_n, upsilon_n)`
    /// with `0 <= t_1 < ... < t_N < tanh(l/2)`.
    pub fn from_tanh_data(period: Period<K>, a: f64, data: Vec<(K, K, K)>) -> Result<Self> {
        let mut nodes = Vec::with_capacity(data.len());
        let mut prev: Option<K> = None;
        for (t, omega, upsilon) in data {
            if t < K::zero() || t >= *period.tanh_half() {
                return Err(SpectralError::InvalidInput(format!(
                    "node coordinate {t} outside [0, tanh(l/2))"
                )));
            }
            if let Some(p) = &prev {
                if &t <= p {
                    return Err(SpectralError::InvalidInput(
                        "node positions must be strictly increasing".into(),
                    ));
                }
            }
            if upsilon < K::zero() {
                return Err(SpectralError::InvalidInput("upsilon must be >= 0".into()));
            }
            if omega.is_zero() && upsilon.is_zero() {
                return Err(SpectralError::InvalidInput(
                    "node carries neither omega nor upsilon mass".into(),
                ));
            }
            let x = a + 2.0 * t.to_f64().atanh();
            prev = Some(t.clone());
            nodes.push(Node {
                x,
                tanh_half: t,
                omega,
                upsilon,
            });
        }
        Ok(PeakonPair { period, a, nodes })
    }

    pub fn period(&self) -> &Period<K> {
        &self.period
    }

    pub fn ell(&self) -> f64 {
        self.period.ell()
    }

    pub fn base(&self) -> f64 {
        self.a
    }

    pub fn nodes(&self) -> &[Node<K>] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// True when the first node sits exactly at the base point.
    pub fn has_base_node(&self) -> bool {
        self.nodes.first().is_some_and(|n| n.tanh_half.is_zero())
    }

    /// Point masses at the base point, `(omega({a}), upsilon({a}))`.
    pub fn base_masses(&self) -> (K, K) {
        if self.has_base_node() {
            let n = &self.nodes[0];
            (n.omega.clone(), n.upsilon.clone())
        } else {
            (K::zero(), K::zero())
        }
    }

    pub fn to_f64(&self) -> PeakonPair<f64> {
        PeakonPair {
            period: Period {
                ell: self.period.ell,
                tanh_half: self.period.tanh_half.to_f64(),
            },
            a: self.a,
            nodes: self
                .nodes
                .iter()
                .map(|n| Node {
                    x: n.x,
                    tanh_half: n.tanh_half.to_f64(),
                    omega: n.omega.to_f64(),
                    upsilon: n.upsilon.to_f64(),
                })
                .collect(),
        }
    }

    /// Periodized Green kernel at distance `exp(d) = de` (two-sided sum of
    /// `e^{-|.|}/2` folded into one period): `(de + L/de) / (2(L-1))`.
    fn kernel_from_exp(&self, de: K) -> K {
        let ell_exp = self.period.exp_ell();
        let two = K::from_int(2);
        (de.clone() + ell_exp.clone() / de) / (two * (ell_exp - K::one()))
    }

    /// `u(x_m)` evaluated exactly in hyperbolic coordinates.
    pub fn u_at_node(&self, m: usize) -> K {
        let ell_exp = self.period.exp_ell();
        let em = self.nodes[m].exp_offset();
        let mut acc = K::zero();
        for (n, node) in self.nodes.iter().enumerate() {
            let en = node.exp_offset();
            let de = if n <= m {
                em.clone() / en
            } else {
                ell_exp.clone() * em.clone() / en
            };
            acc = acc + node.omega.clone() * self.kernel_from_exp(de);
        }
        acc
    }

    /// `u(a)`.
    pub fn u_at_base(&self) -> K {
        let ell_exp = self.period.exp_ell();
        let mut acc = K::zero();
        for node in &self.nodes {
            let de = ell_exp.clone() / node.exp_offset();
            acc = acc + node.omega.clone() * self.kernel_from_exp(de);
        }
        acc
    }

    /// The two conserved integrals over one period:
    /// `int u dx = sum omega_n` and
    /// `int dmu = sum omega_n u(x_n) + sum upsilon_n`.
    pub fn conserved_quantities(&self) -> (K, K) {
        let int_u = self
            .nodes
            .iter()
            .fold(K::zero(), |acc, n| acc + n.omega.clone());
        let mut int_mu = K::zero();
        for (n, node) in self.nodes.iter().enumerate() {
            int_mu = int_mu + node.omega.clone() * self.u_at_node(n) + node.upsilon.clone();
        }
        (int_u, int_mu)
    }

    /// `P(a)` where `P` solves `P - P'' = (u^2 + mu)/2`: the convolution of
    /// `e^{-|.|}/4` with `u^2 dx + dmu`, integrated segmentwise in closed
    /// form. Rational in the hyperbolic coordinates, so exact in exact
    /// mode.
    pub fn p_at_base(&self) -> K {
        let ell_exp = self.period.exp_ell();
        let one = K::one();
        let two = K::from_int(2);
        let three = K::from_int(3);
        let four = K::from_int(4);
        let denom = two.clone() * (ell_exp.clone() - one.clone());

        // kernel for the base point, right branch only: 2K = gamma e^w + delta e^-w
        let gamma = one.clone() / (ell_exp.clone() - one.clone());
        let delta = ell_exp.clone() / (ell_exp.clone() - one.clone());

        // breakpoints in exp coordinates: 1 = e^0, E_1..E_N, L
        let mut breaks = vec![one.clone()];
        breaks.extend(self.nodes.iter().map(Node::exp_offset));
        breaks.push(ell_exp.clone());

        let mut total = K::zero();
        for seg in 0..breaks.len() - 1 {
            let e_lo = breaks[seg].clone();
            let e_hi = breaks[seg + 1].clone();
            if e_lo == e_hi {
                continue;
            }
            // u = A e^w + B e^-w on this segment
            let mut coeff_a = K::zero();
            let mut coeff_b = K::zero();
            for (n, node) in self.nodes.iter().enumerate() {
                let en = node.exp_offset();
                // node n lies at or left of the segment start iff n < seg + 1
                if n < seg {
                    coeff_a = coeff_a + node.omega.clone() / en.clone();
                    coeff_b = coeff_b + node.omega.clone() * ell_exp.clone() * en;
                } else {
                    coeff_a = coeff_a + node.omega.clone() * ell_exp.clone() / en.clone();
                    coeff_b = coeff_b + node.omega.clone() * en;
                }
            }
            coeff_a = coeff_a / denom.clone();
            coeff_b = coeff_b / denom.clone();

            // integrand (gamma e^w + delta e^-w)(3A^2 e^2w + 2AB + 3B^2 e^-2w)
            let aa = coeff_a.clone() * coeff_a.clone();
            let bb = coeff_b.clone() * coeff_b.clone();
            let ab = coeff_a * coeff_b;
            let e3 = |e: &K| e.clone() * e.clone() * e.clone();
            let seg_int = gamma.clone() * aa.clone() * (e3(&e_hi) - e3(&e_lo))
                + (two.clone() * gamma.clone() * ab.clone() + three.clone() * delta.clone() * aa)
                    * (e_hi.clone() - e_lo.clone())
                + (three.clone() * gamma.clone() * bb.clone() + two.clone() * delta.clone() * ab)
                    * (one.clone() / e_lo.clone() - one.clone() / e_hi.clone())
                + delta.clone() * bb * (one.clone() / e3(&e_lo) - one.clone() / e3(&e_hi));
            total = total + seg_int;
        }

        // point masses: 2K at distance (a - x_n) mod l, i.e. exp = L / E_n
        let mut masses = K::zero();
        for node in &self.nodes {
            let de = ell_exp.clone() / node.exp_offset();
            masses = masses
                + node.upsilon.clone() * (de.clone() + ell_exp.clone() / de)
                    / (ell_exp.clone() - one.clone());
        }

        (total + masses) / four
    }
}

fn mod_period(d: f64, ell: f64) -> f64 {
    let r = d % ell;
    if r < 0.0 {
        r + ell
    } else {
        r
    }
}

impl PeakonPair<f64> {
    /// Floating constructor from node positions `(x, omega, upsilon)` with
    /// `a <= x_1 < ... < x_N < a + l`.
    pub fn new(ell: f64, a: f64, nodes: &[(f64, f64, f64)]) -> Result<Self> {
        let period = Period::from_ell(ell)?;
        let mut data = Vec::with_capacity(nodes.len());
        let mut prev = f64::NEG_INFINITY;
        for &(x, omega, upsilon) in nodes {
            if !(x >= a && x < a + ell) {
                return Err(SpectralError::InvalidInput(format!(
                    "node position {x} outside [{a}, {})",
                    a + ell
                )));
            }
            if x <= prev {
                return Err(SpectralError::InvalidInput(
                    "node positions must be strictly increasing".into(),
                ));
            }
            prev = x;
            data.push((((x - a) / 2.0).tanh(), omega, upsilon));
        }
        let mut pair = PeakonPair::from_tanh_data(period, a, data)?;
        // keep the positions exactly as given
        for (node, &(x, _, _)) in pair.nodes.iter_mut().zip(nodes) {
            node.x = x;
        }
        Ok(pair)
    }

    /// Builds a pair from peak data `(q, p, upsilon)`: applying `1 - d^2/dx^2`
    /// to `p e^{-|x-q|}` leaves a point mass `2p`, so `omega = 2p`.
    /// Positions are reduced into `[a, a + l)` and sorted.
    pub fn from_momenta(ell: f64, a: f64, peaks: &[(f64, f64, f64)]) -> Result<Self> {
        let mut reduced: Vec<(f64, f64, f64)> = peaks
            .iter()
            .map(|&(q, p, upsilon)| (a + mod_period(q - a, ell), 2.0 * p, upsilon))
            .collect();
        reduced.sort_by(|l, r| l.0.partial_cmp(&r.0).unwrap());
        for w in reduced.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(SpectralError::DuplicatePosition(format!(
                    "two peaks at {} modulo the period",
                    w[0].0
                )));
            }
        }
        Self::new(ell, a, &reduced)
    }

    fn kernel(&self, d: f64) -> f64 {
        let half = self.ell() / 2.0;
        (d - half).cosh() / (2.0 * half.sinh())
    }

    fn kernel_deriv(&self, d: f64) -> f64 {
        let half = self.ell() / 2.0;
        (d - half).sinh() / (2.0 * half.sinh())
    }

    /// `u(x)` together with the left-continuous derivative `u'(x-)`.
    pub fn eval_state(&self, x: f64) -> (f64, f64) {
        let ell = self.ell();
        let mut u = 0.0;
        let mut du = 0.0;
        for node in &self.nodes {
            let d = mod_period(x - node.x, ell);
            u += node.omega * self.kernel(d);
            // left limit: a vanishing distance counts as a full period
            let d_left = if d == 0.0 { ell } else { d };
            du += node.omega * self.kernel_deriv(d_left);
        }
        (u, du)
    }

    /// The convolution `P(x)` of `e^{-|.|}/4` with `u^2 dx + dmu`,
    /// integrated in closed form on each segment between nodes and the
    /// kernel kink at `x`.
    pub fn eval_p(&self, x: f64) -> f64 {
        let ell = self.ell();
        let ell_exp = self.period.exp_ell();
        let wx = mod_period(x - self.a, ell);
        let ex = wx.exp();

        // breakpoints in w = s - a, with the kernel kink at wx
        let mut breaks: Vec<f64> = vec![0.0];
        breaks.extend(self.nodes.iter().map(|n| n.x - self.a));
        breaks.push(wx);
        breaks.push(ell);
        breaks.sort_by(|l, r| l.partial_cmp(r).unwrap());
        breaks.dedup();

        let denom = 2.0 * (ell_exp - 1.0);
        let mut total = 0.0;
        for seg in breaks.windows(2) {
            let (w_lo, w_hi) = (seg[0], seg[1]);
            if w_hi <= w_lo {
                continue;
            }
            let mid = 0.5 * (w_lo + w_hi);
            // u = A e^w + B e^-w on this segment
            let mut coeff_a = 0.0;
            let mut coeff_b = 0.0;
            for node in &self.nodes {
                let wn = node.x - self.a;
                let en = wn.exp();
                if wn <= w_lo {
                    coeff_a += node.omega / en;
                    coeff_b += node.omega * ell_exp * en;
                } else {
                    coeff_a += node.omega * ell_exp / en;
                    coeff_b += node.omega * en;
                }
            }
            coeff_a /= denom;
            coeff_b /= denom;
            // kernel branch: s < x uses exp((x-s)), s > x wraps by a period
            let (gamma, delta) = if mid < wx {
                (ell_exp / (ex * (ell_exp - 1.0)), ex / (ell_exp - 1.0))
            } else {
                (1.0 / (ex * (ell_exp - 1.0)), ell_exp * ex / (ell_exp - 1.0))
            };
            let aa = coeff_a * coeff_a;
            let bb = coeff_b * coeff_b;
            let ab = coeff_a * coeff_b;
            let (e_lo, e_hi) = (w_lo.exp(), w_hi.exp());
            total += gamma * aa * (e_hi.powi(3) - e_lo.powi(3))
                + (2.0 * gamma * ab + 3.0 * delta * aa) * (e_hi - e_lo)
                + (3.0 * gamma * bb + 2.0 * delta * ab) * (1.0 / e_lo - 1.0 / e_hi)
                + delta * bb * (1.0 / e_lo.powi(3) - 1.0 / e_hi.powi(3));
        }

        let mut masses = 0.0;
        for node in &self.nodes {
            let d = mod_period(x - node.x, ell);
            masses += node.upsilon * 2.0 * self.kernel(d);
        }
        (total + masses) / 4.0
    }

    /// The same measures over a new base point: positions are translated by
    /// whole periods into `[a_new, a_new + l)` and re-sorted.
    pub fn rebase(&self, a_new: f64) -> Self {
        let ell = self.ell();
        let mut shifted: Vec<(f64, f64, f64)> = self
            .nodes
            .iter()
            .map(|n| {
                let mut k = ((n.x - a_new) / ell).floor();
                let mut x = n.x - k * ell;
                while x < a_new {
                    x += ell;
                    k -= 1.0;
                }
                while x >= a_new + ell {
                    x -= ell;
                    k += 1.0;
                }
                let _ = k;
                (x, n.omega, n.upsilon)
            })
            .collect();
        shifted.sort_by(|l, r| l.0.partial_cmp(&r.0).unwrap());
        Self::new(ell, a_new, &shifted).expect("rebasing preserves validity")
    }
}
