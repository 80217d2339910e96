//! The potential families: pointwise potentials, stated and gauge energies, eigenfunctions,
//! the `q = 0` exactly solvable levels, and domain defaults.

mod domain;
mod eigen;
mod energy;
mod exact;
mod params;
mod potential;

pub(crate) use domain::inverse_length;
pub use domain::{default_domain, is_normalizable, natural_domain, NORMALIZABILITY_RATIO};
pub use eigen::{eigenfunction_value, EigenfunctionSpec, Gauge, VariableMap};
pub use energy::{gauge_energy, stated_energy};
pub use exact::{exact_case, exact_root, ExactCase};
pub use params::{
    CoulombParams, Family, FamilyParams, HyperbolicParams, OscillatorParams, PairParams, TwoJ,
};
pub use potential::{
    eckart_potential_complex, hulthen_printed, hulthen_terms_canonical, hulthen_terms_printed,
    potential_value, rosen_morse_printed, rosen_morse_terms_canonical, rosen_morse_terms_printed,
};

/// Failure of a family-level operation.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FamilyError {
    /// The family name is not recognised.
    #[error("unknown family")]
    UnknownFamily,
    /// `j` is negative, not a multiple of ½, or too large.
    #[error("j must be a nonnegative integer or half-integer (at most 32)")]
    InvalidJ,
    /// A parameter violates its domain restriction.
    #[error("parameter {name} {reason}")]
    InvalidParameter {
        /// Parameter name(s).
        name: &'static str,
        /// Violated restriction.
        reason: &'static str,
    },
    /// The point lies outside the natural domain or on a singularity.
    #[error("x = {x} is outside the domain or singular")]
    Domain {
        /// Offending point.
        x: f64,
    },
    /// The value overflows a double.
    #[error("overflow evaluating at x = {x}")]
    Overflow {
        /// Offending point.
        x: f64,
    },
    /// A closed form has a pole at these parameters.
    #[error("pole: {0}")]
    Pole(&'static str),
    /// The requested closed form only exists for `q = 0`.
    #[error("the exactly solvable case needs q = 0 and an Eckart-type or Coulomb family")]
    NotExactlySolvable,
}
