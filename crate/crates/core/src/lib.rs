//! Algebraic and numerical tools for local masses of rank-two Toda systems
//! (`A2`, `B2`, `G2`) and for rational solutions of the Liouville equation.
//!
//! * [`mass`]: exact affine forms `c1 mu1 + c2 mu2 + c0` and Cartan data.
//! * [`pohozaev`]: the Pohozaev quadratic form and its Vieta reflections.
//! * [`gamma`]: the finite set of admissible local-mass pairs.
//! * [`rigidity`]: the `M_K` nondegeneracy matrices and the Q-independence test.
//! * [`forbidden`]: forbidden parameter sets and compactness hypotheses.
//! * [`liouville`]: mass, ramification and Schwarzian checks for rational maps.
//! * [`cli`]: the `toda-mass` command line.

pub mod cli;
pub mod forbidden;
pub mod gamma;
pub mod liouville;
pub mod mass;
pub mod pohozaev;
pub mod rigidity;

use thiserror::Error;

pub use forbidden::{
    check_compactness, gamma_i, CompactnessVerdict, ForbiddenError, ForbiddenSet, Regime, Strength,
    Vortex, VortexConfig,
};
pub use gamma::{decompositions, enumerate_gamma, is_special, special_pair, GammaError, GammaSet};
pub use liouville::{LiouvilleError, RationalMap};
pub use mass::{
    integer_form_certificate, mass_add, mass_eval, CartanMatrix, MassError, MassExpr, Rational,
};
pub use pohozaev::{pi_residual, reflect, Component, MassPair};
pub use rigidity::{mk_matrix, q_condition, MKInput, MKMatrix, QVector, RigidityError};

/// Any error raised by the library, carrying the underlying kind.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Mass(#[from] MassError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
    #[error(transparent)]
    Forbidden(#[from] ForbiddenError),
    #[error(transparent)]
    Liouville(#[from] LiouvilleError),
}

impl Error {
    /// Short error-kind name, e.g. `NotOfForm`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Mass(e) => e.name(),
            Error::Gamma(e) => e.name(),
            Error::Rigidity(e) => e.name(),
            Error::Forbidden(e) => e.name(),
            Error::Liouville(e) => e.name(),
        }
    }
}
