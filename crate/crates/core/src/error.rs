use thiserror::Error;

use crate::power::IterTrace;
use crate::spectral::EigenResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dual number division is undefined for a divisor with zero standard part")]
    DivisionUndefined,
    #[error("quaternion is zero and has no inverse")]
    NotInvertible,
    #[error("dual quaternion is not appreciable (zero standard part)")]
    NotAppreciable,
    #[error("cannot project the zero dual quaternion onto the unit set")]
    ZeroInput,
    #[error("cannot normalize the zero vector")]
    ZeroVector,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix violates the adjoint block pattern (deviation {deviation:.3e})")]
    NotAdjointStructured { deviation: f64 },
    #[error("vector length {0} is odd")]
    OddLength(usize),
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("eigenvalue clusters {left} and {right} are too close to separate")]
    ClusterInstability { left: f64, right: f64 },
    #[error("vector is not an eigenvector for the given eigenvalue (residual {residual:.3e})")]
    NotAnEigenvector { residual: f64 },
    #[error(
        "eigenvalue {value} has adjoint multiplicity {adjoint} but yielded {found} eigenvectors"
    )]
    EigenvectorCountMismatch {
        value: String,
        adjoint: usize,
        found: usize,
    },
    #[error("power iteration stalled on eigenpair {} after {} iterations", .stage + 1, .trace.iterations)]
    InnerNoConvergence {
        stage: usize,
        partial: Box<EigenResult>,
        trace: Box<IterTrace>,
    },
    #[error("requested {edges} edges but only {capacity} fit in a simple graph")]
    SparsityTooHigh { edges: usize, capacity: usize },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("random draw was rank deficient")]
    DegenerateRandomDraw,
}
