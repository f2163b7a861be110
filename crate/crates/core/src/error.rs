use thiserror::Error;

/// Errors shared across the solver crates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A density left the admissible interval by more than the hard tolerance.
    #[error("density {value} outside [0, {upper}] beyond tolerance")]
    Domain { value: f64, upper: f64 },

    /// Flux parameters violate the fundamental-diagram invariants.
    #[error("invalid flux: {0}")]
    InvalidFlux(String),

    /// Junction topology or parameters are inconsistent.
    #[error("invalid junction spec: {0}")]
    InvalidSpec(String),

    /// The grid constant violates the active scheme's CFL condition.
    #[error("CFL violation: lambda {lambda} exceeds admissible {admissible}")]
    Cfl { lambda: f64, admissible: f64 },

    /// A prescribed junction flux is not attainable in the admissible
    /// candidate set; signals an upstream bug rather than bad user input.
    #[error("inconsistent junction flux: {0}")]
    InconsistentJunction(String),

    /// Network assembly failed validation.
    #[error("malformed network: {0}")]
    Network(String),

    /// An analysis routine received degenerate input.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
