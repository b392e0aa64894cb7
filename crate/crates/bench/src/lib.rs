//! Fixed inputs shared by the criterion benchmarks.

use dqeig::{
    build_laplacian, random_graph, random_hermitian, DualQuaternionMatrix, PowerIterConfig,
};

pub const SIZES: [usize; 3] = [5, 10, 20];

/// Laplacian of a seeded random formation at 30% sparsity.
pub fn laplacian(n: usize) -> DualQuaternionMatrix {
    build_laplacian(&random_graph(n, 0.3, 42).expect("0.3 fits every size used here"))
}

pub fn hermitian(n: usize) -> DualQuaternionMatrix {
    random_hermitian(n, 7)
}

/// Settings matching the Laplacian table runs.
pub fn spectrum_config() -> PowerIterConfig {
    PowerIterConfig {
        max_iter: 1_000_000,
        tol: 1e-10,
        ..Default::default()
    }
}

/// Settings matching the Aitken table runs.
pub fn dominant_config() -> PowerIterConfig {
    PowerIterConfig {
        max_iter: 1_000_000,
        tol: 1e-6,
        ..Default::default()
    }
}
