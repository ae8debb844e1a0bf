use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("photon number {n} exceeds the Fock cutoff {cutoff}")]
    PhotonOutOfRange { n: usize, cutoff: usize },

    #[error("flat index {index} is outside a space of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("Fock cutoff must be at least {min}, got {cutoff}")]
    CutoffTooSmall { cutoff: usize, min: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max |A - A†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("linear system is singular (pivot ratio {pivot_ratio:e})")]
    Singular { pivot_ratio: f64 },

    #[error("non-finite value encountered at t = {time}; reduce the time step")]
    NonFinite { time: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: &'static str },

    #[error("closed-form spectrum is only defined for symmetric placement (phi_z = 0), got {phi_z}")]
    AsymmetricPlacement { phi_z: f64 },

    #[error("collective basis is not orthonormal (deviation {deviation:e})")]
    NonOrthonormalBasis { deviation: f64 },

    #[error("Liouvillian couples coherence orders {from} and {to}; block elimination needs |Δm| ≤ 1")]
    GradingViolation { from: i32, to: i32 },

    #[error("mean photon number {mean:e} is below the low-signal threshold")]
    LowSignal { mean: f64 },
}
