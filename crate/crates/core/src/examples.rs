//! Two published benchmark systems used throughout the tests and the CLI.

use crate::matrix::Matrix;
use crate::model::{build_network, CrnModel, Edge, GraphStructure};
use crate::scalar::Scalar;

fn frac<S: Scalar>(numer: i64, denom: i64) -> S {
    S::from_i64(numer).unwrap() / S::from_i64(denom).unwrap()
}

/// `x1' = 3 k1 x2^3 - k2 x1^3`, `x2' = -x1'` on complexes `3X2, 3X1, 2X1+X2`.
pub fn example1_with<S: Scalar>(k1: S, k2: S) -> CrnModel<S> {
    let three = S::from_u32(3).unwrap();
    let zero = S::zero();
    build_network(
        &["X1", "X2"],
        &[vec![0, 3], vec![3, 0], vec![2, 1]],
        &[
            vec![three.clone() * k1.clone(), -k2.clone(), zero.clone()],
            vec![-(three * k1), k2, zero],
        ],
    )
    .expect("example 1 is well formed")
}

/// Example 1 with `k1 = 1`, `k2 = 2`.
pub fn example1<S: Scalar>() -> CrnModel<S> {
    example1_with(S::one(), frac(2, 1))
}

/// Rate constants `k1..k5` of the oscillating two-species network.
pub fn example2_rates<S: Scalar>() -> [S; 5] {
    [frac(1, 1), frac(1, 1), frac(1, 20), frac(1, 10), frac(1, 10)]
}

/// The oscillator on complexes `0, X1, X2, 2X1, 2X1+X2, 3X1` with `M = Y A_k`.
pub fn example2<S: Scalar>() -> CrnModel<S> {
    let [k1, k2, k3, k4, k5] = example2_rates::<S>();
    let z = S::zero();
    let two = frac::<S>(2, 1);
    build_network(
        &["X1", "X2"],
        &[vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![2, 1], vec![3, 0]],
        &[
            vec![z.clone(), -k2, k3.clone(), -(two * k4.clone()), k5.clone(), z.clone()],
            vec![k1, z.clone(), -k3, k4, -k5, z],
        ],
    )
    .expect("example 2 is well formed")
}

/// Kirchhoff matrix of the original five-reaction realization of [`example2`].
pub fn example2_original_kirchhoff<S: Scalar>() -> Matrix<S> {
    let [k1, k2, k3, k4, k5] = example2_rates::<S>();
    let mut a = Matrix::filled(6, 6, S::zero());
    for (e, k) in [
        (Edge::one_based(1, 3), k1),
        (Edge::one_based(2, 1), k2),
        (Edge::one_based(3, 2), k3),
        (Edge::one_based(4, 3), k4),
        (Edge::one_based(5, 6), k5),
    ] {
        a[(e.target, e.source)] = k.clone();
        a[(e.source, e.source)] = -k;
    }
    a
}

fn structure(edges: &[(usize, usize)]) -> GraphStructure {
    edges.iter().map(|&(s, t)| Edge::one_based(s, t)).collect()
}

/// The 19-reaction dense structure of [`example2`].
pub fn example2_dense_structure() -> GraphStructure {
    structure(&[
        (1, 3),
        (2, 1),
        (2, 4),
        (2, 6),
        (3, 1),
        (3, 2),
        (3, 4),
        (3, 5),
        (3, 6),
        (4, 1),
        (4, 2),
        (4, 3),
        (4, 5),
        (4, 6),
        (5, 1),
        (5, 2),
        (5, 3),
        (5, 4),
        (5, 6),
    ])
}

/// The original (and unique sparsest) structure of [`example2`].
pub fn example2_sparse_structure() -> GraphStructure {
    structure(&[(1, 3), (2, 1), (3, 2), (4, 3), (5, 6)])
}

/// Dense structure when reactions between `{C1..C4}` and `{C5, C6}` are excluded.
pub fn example2_two_class_structure() -> GraphStructure {
    structure(&[(1, 3), (2, 1), (2, 4), (3, 1), (3, 2), (3, 4), (4, 3), (5, 6)])
}

/// All edges joining different groups of complexes (0-based indices), plus
/// every edge touching a complex outside all groups.
pub fn confinement_exclusions(m: usize, groups: &[Vec<usize>]) -> GraphStructure {
    let group_of = |v: usize| groups.iter().position(|g| g.contains(&v));
    crate::model::all_edges(m)
        .filter(|e| match (group_of(e.source), group_of(e.target)) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
        .collect()
}
