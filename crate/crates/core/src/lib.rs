//! Spectral analysis of periodic multi-peakon measure pairs.
//!
//! The crate computes the full forward spectral data of a periodic
//! multi-peakon pair — monodromy matrix, Floquet discriminant,
//! periodic/antiperiodic and Dirichlet spectra, norming constants,
//! divisors and the Weyl function — and solves the two inverse problems:
//! reconstruction from Dirichlet data, and reconstruction from a
//! discriminant together with a point on its isospectral torus. Trace
//! formulas tie the two sides together and double as self-verification.
//!
//! All maps are generic over the numeric backend: `f64` for ordinary
//! double precision, [`num_rational::BigRational`] for exact arithmetic on
//! inputs given in hyperbolic coordinates.

pub mod contfrac;
pub mod error;
pub mod files;
pub mod forward;
pub mod inverse_dirichlet;
pub mod inverse_periodic;
pub mod peakon;
pub mod polyalg;
pub mod scalar;
pub mod trace;

pub use contfrac::{cf_evaluate, cf_from_pair, stieltjes_extract, CfData};
pub use error::{Result, SpectralError};
pub use forward::{
    dirichlet_data, dirichlet_solution_data, discriminant, floquet_spectra, gap_structure,
    monodromy, spectral_data, weyl_function, BandEdge, DirichletData, DirichletSolutionData,
    ExtReal, FloquetSpectra, Gap, GapStructure, Monodromy, SpectralData, SpectrumKind,
};
pub use inverse_dirichlet::{
    assemble_m, solve_dirichlet, solve_dirichlet_with, DirichletSpectralInput, Reconstruction,
};
pub use inverse_periodic::{
    divisor_from_dirichlet, isospectral_sample, solve_periodic, solve_periodic_with,
    validate_discriminant, DivisorPoint,
};
pub use peakon::{Node, PeakonPair, Period};
pub use polyalg::{partial_fractions, poly_quotient, real_roots, PartialFraction, Poly, RatFunc};
pub use scalar::Scalar;
pub use trace::{trace_report, IdentityCheck, TraceReport};
