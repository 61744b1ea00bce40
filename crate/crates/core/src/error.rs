use thiserror::Error;

/// Errors raised when an input falls outside the domain of a formula.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("unphysical Bloch vector: |p| = {norm} exceeds 1")]
    Unphysical { norm: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("state is not in the xz-plane: |p_y| = {py}")]
    NotPlanar { py: f64 },

    #[error("{metric} line element is singular at p = {p}")]
    Singular { metric: &'static str, p: f64 },

    #[error("{kind} is not valid here: {reason}")]
    UnsupportedKind {
        kind: &'static str,
        reason: &'static str,
    },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("not a unit axis: |n| = {norm}")]
    NonUnitAxis { norm: f64 },

    #[error("great-circle parameters violate orthogonality (residual {residual:e})")]
    NonOrthogonal { residual: f64 },

    #[error("integration left the interval (delta, 1 - delta) at theta = {theta}, r = {r}")]
    LeftDomain { theta: f64, r: f64 },
}

pub type Result<T> = std::result::Result<T, GeometryError>;
