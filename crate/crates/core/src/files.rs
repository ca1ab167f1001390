//! JSON file schemas: pair files, spectral-data files, discriminant and
//! divisor files. Extended reals serialize as a number or the strings
//! `"inf"` / `"-inf"`; exact-mode files carry the hyperbolic coordinates
//! as `"p/q"` strings next to the floating fields.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectralError};
use crate::forward::{ExtReal, SpectralData};
use crate::inverse_dirichlet::DirichletSpectralInput;
use crate::inverse_periodic::DivisorPoint;
use crate::peakon::{PeakonPair, Period};
use crate::polyalg::Poly;
use crate::scalar::Scalar;

/// A finite number or an infinity tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExtRealJson {
    Num(f64),
    Tag(String),
}

impl ExtRealJson {
    pub fn from_ext<K: Scalar>(value: &ExtReal<K>) -> Self {
        match value {
            ExtReal::NegInf => ExtRealJson::Tag("-inf".into()),
            ExtReal::PosInf => ExtRealJson::Tag("inf".into()),
            ExtReal::Finite(v) => ExtRealJson::Num(v.to_f64()),
        }
    }

    pub fn to_ext<K: Scalar>(&self) -> Result<ExtReal<K>> {
        match self {
            ExtRealJson::Num(v) => Ok(ExtReal::Finite(K::from_f64(*v))),
            ExtRealJson::Tag(s) if s == "inf" => Ok(ExtReal::PosInf),
            ExtRealJson::Tag(s) if s == "-inf" => Ok(ExtReal::NegInf),
            ExtRealJson::Tag(s) => Err(SpectralError::InvalidInput(format!(
                "expected a number, \"inf\" or \"-inf\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeFile {
    pub x: f64,
    pub omega: f64,
    pub upsilon: f64,
    /// `tanh((x - a)/2)` as an exact ratio, for exact-mode input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tanh_half: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    pub ell: f64,
    pub a: f64,
    pub nodes: Vec<NodeFile>,
    /// `tanh(l/2)` as an exact ratio, for exact-mode input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tanh_half_ell: Option<String>,
}

impl PairFile {
    pub fn from_pair(pair: &PeakonPair<f64>) -> Self {
        PairFile {
            ell: pair.ell(),
            a: pair.base(),
            nodes: pair
                .nodes()
                .iter()
                .map(|n| NodeFile {
                    x: n.x,
                    omega: n.omega,
                    upsilon: n.upsilon,
                    tanh_half: None,
                })
                .collect(),
            tanh_half_ell: None,
        }
    }

    /// Serialization that keeps the exact coordinates readable back.
    pub fn from_pair_exact(pair: &PeakonPair<BigRational>) -> Self {
        PairFile {
            ell: pair.ell(),
            a: pair.base(),
            nodes: pair
                .nodes()
                .iter()
                .map(|n| NodeFile {
                    x: n.x,
                    omega: n.omega.to_f64(),
                    upsilon: n.upsilon.to_f64(),
                    tanh_half: Some(n.tanh_half.to_string()),
                })
                .collect(),
            tanh_half_ell: Some(pair.period().tanh_half().to_string()),
        }
    }

    pub fn to_pair(&self) -> Result<PeakonPair<f64>> {
        let nodes: Vec<(f64, f64, f64)> = self
            .nodes
            .iter()
            .map(|n| (n.x, n.omega, n.upsilon))
            .collect();
        PeakonPair::new(self.ell, self.a, &nodes)
    }

    /// Exact-mode parse: every node must carry `tanh_half` and the file
    /// must carry `tanh_half_ell`; weights are lifted from their floating
    /// representation exactly.
    pub fn to_pair_exact(&self) -> Result<PeakonPair<BigRational>> {
        let t_ell = self.tanh_half_ell.as_deref().ok_or_else(|| {
            SpectralError::InvalidInput(
                "exact mode needs a top-level \"tanh_half_ell\" ratio".into(),
            )
        })?;
        let t_ell = BigRational::parse_ratio(t_ell).ok_or_else(|| {
            SpectralError::InvalidInput(format!("cannot parse tanh_half_ell = {t_ell:?}"))
        })?;
        let period = Period::from_tanh_half(t_ell)?;
        let mut data = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let t = node.tanh_half.as_deref().ok_or_else(|| {
                SpectralError::InvalidInput(format!(
                    "exact mode needs \"tanh_half\" on the node at x = {}",
                    node.x
                ))
            })?;
            let t = BigRational::parse_ratio(t).ok_or_else(|| {
                SpectralError::InvalidInput(format!("cannot parse tanh_half = {t:?}"))
            })?;
            data.push((
                t,
                BigRational::from_f64(node.omega),
                BigRational::from_f64(node.upsilon),
            ));
        }
        PeakonPair::from_tanh_data(period, self.a, data)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralFile {
    pub ell: f64,
    pub a: f64,
    #[serde(default)]
    pub delta_coeffs: Vec<f64>,
    #[serde(default)]
    pub periodic: Vec<f64>,
    #[serde(default)]
    pub antiperiodic: Vec<f64>,
    pub kappas: Vec<ExtRealJson>,
    pub gammas: Vec<f64>,
    #[serde(default)]
    pub zetas: Vec<f64>,
    pub omega_a: f64,
    pub upsilon_a: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tanh_half_ell: Option<String>,
}

impl SpectralFile {
    /// Serializes forward spectral data; `tanh_half_ell` carries the exact
    /// period coordinate when the data came from the rational backend.
    pub fn from_data<K: Scalar>(data: &SpectralData<K>, tanh_half_ell: Option<String>) -> Self {
        let expand = |roots: &[(K, usize)]| {
            let mut out = Vec::new();
            for (r, mult) in roots {
                for _ in 0..*mult {
                    out.push(r.to_f64());
                }
            }
            out
        };
        SpectralFile {
            ell: data.ell,
            a: data.a,
            delta_coeffs: data.delta.coeffs().iter().map(Scalar::to_f64).collect(),
            periodic: expand(&data.spectra.periodic),
            antiperiodic: expand(&data.spectra.antiperiodic),
            kappas: data
                .dirichlet
                .kappas
                .iter()
                .map(ExtRealJson::from_ext)
                .collect(),
            gammas: data.dirichlet.gammas.iter().map(Scalar::to_f64).collect(),
            zetas: data.dirichlet.zetas.iter().map(Scalar::to_f64).collect(),
            omega_a: data.dirichlet.omega_a.to_f64(),
            upsilon_a: data.dirichlet.upsilon_a.to_f64(),
            tanh_half_ell,
        }
    }

    /// The Dirichlet inverse input encoded in this file (finite
    /// eigenvalues only).
    pub fn to_dirichlet_input(&self) -> Result<DirichletSpectralInput<f64>> {
        let mut sigma = Vec::new();
        let mut gammas = Vec::new();
        let mut finite_seen = 0usize;
        for kappa in &self.kappas {
            if let ExtReal::Finite(v) = kappa.to_ext::<f64>()? {
                let gamma = *self.gammas.get(finite_seen).ok_or_else(|| {
                    SpectralError::InvalidInput("fewer gammas than finite kappas".into())
                })?;
                sigma.push(v);
                gammas.push(gamma);
                finite_seen += 1;
            }
        }
        if finite_seen != self.gammas.len() {
            return Err(SpectralError::InvalidInput(
                "more gammas than finite kappas".into(),
            ));
        }
        Ok(DirichletSpectralInput {
            sigma,
            gammas,
            omega_a: self.omega_a,
            upsilon_a: self.upsilon_a,
            period: Period::from_ell(self.ell)?,
            a: self.a,
        })
    }

    /// Exact-mode variant; needs `tanh_half_ell`.
    pub fn to_dirichlet_input_exact(&self) -> Result<DirichletSpectralInput<BigRational>> {
        let t_ell = self.tanh_half_ell.as_deref().ok_or_else(|| {
            SpectralError::InvalidInput(
                "exact mode needs a top-level \"tanh_half_ell\" ratio".into(),
            )
        })?;
        let t_ell = BigRational::parse_ratio(t_ell).ok_or_else(|| {
            SpectralError::InvalidInput(format!("cannot parse tanh_half_ell = {t_ell:?}"))
        })?;
        let float_input = self.to_dirichlet_input()?;
        Ok(DirichletSpectralInput {
            sigma: float_input
                .sigma
                .iter()
                .map(|v| BigRational::from_f64(*v))
                .collect(),
            gammas: float_input
                .gammas
                .iter()
                .map(|v| BigRational::from_f64(*v))
                .collect(),
            omega_a: BigRational::from_f64(float_input.omega_a),
            upsilon_a: BigRational::from_f64(float_input.upsilon_a),
            period: Period::from_tanh_half(t_ell)?,
            a: self.a,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscriminantFile {
    pub ell: f64,
    /// Coefficients in ascending degree.
    pub coeffs: Vec<f64>,
}

impl DiscriminantFile {
    pub fn to_poly(&self) -> Poly<f64> {
        Poly::new(self.coeffs.clone())
    }

    pub fn period(&self) -> Result<Period<f64>> {
        Period::from_ell(self.ell)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorPointFile {
    pub kappa: ExtRealJson,
    pub zeta: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorFile {
    pub points: Vec<DivisorPointFile>,
}

impl DivisorFile {
    pub fn from_points<K: Scalar>(points: &[DivisorPoint<K>]) -> Self {
        DivisorFile {
            points: points
                .iter()
                .map(|p| DivisorPointFile {
                    kappa: ExtRealJson::from_ext(&p.kappa),
                    zeta: p.zeta.to_f64(),
                })
                .collect(),
        }
    }

    pub fn to_points(&self) -> Result<Vec<DivisorPoint<f64>>> {
        self.points
            .iter()
            .map(|p| {
                Ok(DivisorPoint {
                    kappa: p.kappa.to_ext()?,
                    zeta: p.zeta,
                })
            })
            .collect()
    }
}
