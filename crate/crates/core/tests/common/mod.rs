#![allow(dead_code)]

use dqeig::{DualNumber, DualQuaternion, DualQuaternionMatrix, DualQuaternionVector};
use proptest::prelude::*;

pub fn arb_dq() -> impl Strategy<Value = DualQuaternion> {
    prop::array::uniform8(-1.0..1.0f64).prop_map(DualQuaternion::from_array)
}

pub fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = DualQuaternionMatrix> {
    prop::collection::vec(arb_dq(), rows * cols)
        .prop_map(move |d| DualQuaternionMatrix::new(rows, cols, d).unwrap())
}

pub fn arb_vector(n: usize) -> impl Strategy<Value = DualQuaternionVector> {
    prop::collection::vec(arb_dq(), n).prop_map(DualQuaternionVector::new)
}

pub fn hermitian_part(a: &DualQuaternionMatrix) -> DualQuaternionMatrix {
    let half = DualNumber::real(0.5);
    DualQuaternionMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        (a[(i, j)] + a[(j, i)].conj()).scale(half)
    })
}

pub fn arb_hermitian(n: usize) -> impl Strategy<Value = DualQuaternionMatrix> {
    arb_matrix(n, n).prop_map(|a| hermitian_part(&a))
}

/// Dual spectrum with standard parts at least `gap` apart.
pub fn arb_spectrum(n: usize, gap: f64) -> impl Strategy<Value = Vec<DualNumber>> {
    (
        prop::collection::vec(0.0..1.0f64, n),
        prop::collection::vec(-2.0..2.0f64, n),
        -3.0..3.0f64,
    )
        .prop_map(move |(steps, duals, base)| {
            let mut st = base;
            steps
                .iter()
                .zip(duals)
                .map(|(s, d)| {
                    st += gap + s;
                    DualNumber::new(st, d)
                })
                .collect()
        })
}
