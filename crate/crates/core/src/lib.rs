//! Eigenvalues and eigenvectors of dual quaternion Hermitian matrices via
//! their dual complex adjoints.
//!
//! ```
//! use dqeig::{eddcam_ea, pentagon_fixture, EddcamOptions};
//!
//! let r = eddcam_ea(&pentagon_fixture(), EddcamOptions::default()).unwrap();
//! assert_eq!(r.pairs.len(), 5);
//! assert!(r.residual < 1e-10);
//! ```

pub mod adjoint;
pub mod complex_eig;
pub mod error;
pub mod formation;
pub mod matrix;
pub mod power;
pub mod scalar;
pub mod spectral;

pub use adjoint::{
    adjoint, adjoint_inverse, check_eigen_equivalence, vec_f, vec_f_inverse, vec_h,
    EigenEquivalence,
};
pub use complex_eig::{cluster_eigenvalues, eig_hermitian, CMatrix, Cluster, ComplexHermitianEig};
pub use error::{Error, Result};
pub use formation::{
    build_laplacian, pentagon_fixture, random_graph, random_hermitian, run_benchmark, summarize,
    synth_known_spectrum, BenchKind, BenchParams, BenchRecord, BenchSummary, VisibilityGraph,
    PENTAGON_EIGENVALUES,
};
pub use matrix::{
    DualComplexMatrix, DualComplexVector, DualQuaternionMatrix, DualQuaternionVector, DualScalar,
    Matrix, Vector,
};
pub use power::aitken::aitken_extrapolate;
pub use power::{
    adcam_pm, dcam_pm, dcama_pm, power_method_baseline, power_method_sweep, random_unit_vector,
    DominantPair, IterTrace, PowerIterConfig,
};
pub use scalar::{DualComplex, DualNumber, DualQuaternion, Quaternion};
pub use spectral::{
    eddcam_ea, eig_dual_complex_hermitian, orthogonalize_eigenvectors, DualEigenDecomposition,
    EddcamOptions, EigenPair, EigenResult,
};
