//! Shared helpers for the integration suites: deterministic random sources,
//! random closed groupoids, the subgroup tables of small linear groups, and
//! the graded presentations of the two dimension-three classifications.
#![allow(dead_code)]

use rand::prelude::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sublat_core::fp::{all_subspaces, enumerate_isos, Fp, LinMap, Matrix, Subspace};
use sublat_core::groupoid::{close, from_group, group_closure, AmbientFamily, Groupoid};
use sublat_core::invariants::AlgebraPresentation;

pub fn f2() -> Fp {
    Fp::new(2).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn line_marker(field: Fp, w: usize) -> LinMap {
    let mut e1 = vec![0; w];
    e1[0] = 1;
    LinMap::from_images(field, w, &[e1])
}

pub fn random_matrix(r: &mut ChaCha8Rng, field: Fp, rows: usize, cols: usize) -> Matrix {
    let entries: Vec<Vec<u32>> =
        (0..rows).map(|_| (0..cols).map(|_| r.random_range(0..field.p())).collect()).collect();
    Matrix::from_rows(field, cols, &entries)
}

pub fn random_invertible(r: &mut ChaCha8Rng, field: Fp, n: usize) -> Matrix {
    loop {
        let m = random_matrix(r, field, n, n);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A random closed groupoid on one ambient space: a few isomorphisms between
/// random equidimensional subspaces, closed under the groupoid operations.
pub fn random_closed_groupoid(r: &mut ChaCha8Rng, field: Fp, w: usize, gens: usize) -> Groupoid {
    let family = AmbientFamily::single(field, w);
    let subspaces = all_subspaces(field, w).unwrap();
    let mut generators = Vec::new();
    for _ in 0..gens {
        let u = subspaces.choose(r).unwrap().clone();
        let same_dim: Vec<&Subspace> =
            subspaces.iter().filter(|s| s.dim() == u.dim()).collect();
        let u2 = (*same_dim.choose(r).unwrap()).clone();
        let isos = enumerate_isos(&u, &u2).unwrap();
        let alpha = isos.choose(r).unwrap().clone();
        generators.push(((0, u), (0, u2), alpha));
    }
    close(&family, &generators).unwrap()
}

pub fn upper_shear(field: Fp) -> Matrix {
    Matrix::from_rows(field, 2, &[vec![1, 1], vec![0, 1]])
}

pub fn swap2(field: Fp) -> Matrix {
    Matrix::from_rows(field, 2, &[vec![0, 1], vec![1, 0]])
}

/// Generator sets for all six subgroups of the invertible 2x2 matrices over
/// F_2 (the trivial group, the three involutions, the rotation, everything).
pub fn gl2_subgroups(field: Fp) -> Vec<Vec<Matrix>> {
    vec![
        vec![],
        vec![swap2(field)],
        vec![upper_shear(field)],
        vec![Matrix::from_rows(field, 2, &[vec![1, 0], vec![1, 1]])],
        vec![Matrix::from_rows(field, 2, &[vec![0, 1], vec![1, 1]])],
        vec![upper_shear(field), swap2(field)],
    ]
}

pub fn group_groupoid(field: Fp, dim: usize, generators: &[Matrix]) -> Groupoid {
    from_group(field, dim, &group_closure(field, dim, generators).unwrap()).unwrap()
}

/// The fifteen graded presentations classified over the trivial quotient
/// groupoid, in the source listing order. The last entry lists only the
/// summands inside the (x2, x3) ideal, so its unital part, the polynomial
/// algebra on the degree-four product, is made explicit here.
pub fn fifteen_presentations() -> Vec<AlgebraPresentation> {
    let q = "x1*(x1+x2)*(x1+x3)*(x1+x2+x3)";
    let terms: Vec<Vec<(Vec<&str>, &str)>> = vec![
        vec![(vec!["x2", "x3", q], "1")],
        vec![(vec!["x2", "x3", "x1*(x1+x2)"], "1")],
        vec![(vec!["x2", "x3", "x1*(x1+x3)"], "1")],
        vec![(vec!["x2", "x3", "x1*(x1+x2+x3)"], "1")],
        vec![(vec!["x2", "x3", q], "1"), (vec!["x2", "x3", "x1*(x1+x2)"], "x2")],
        vec![(vec!["x2", "x3", q], "1"), (vec!["x2", "x3", "x1*(x1+x3)"], "x3")],
        vec![(vec!["x2", "x3", q], "1"), (vec!["x2", "x3", "x1*(x1+x2+x3)"], "x2+x3")],
        vec![(vec!["x1", "x2", "x3"], "1")],
        vec![(vec!["x1", "x2", "x3"], "x2+x3"), (vec!["x3", "x1*(x1+x3)"], "1")],
        vec![(vec!["x1", "x2", "x3"], "x2"), (vec!["x3", "x1*(x1+x3)"], "1")],
        vec![(vec!["x1", "x2", "x3"], "x3"), (vec!["x2", "x1*(x1+x2)"], "1")],
        vec![
            (vec!["x3", "x1*(x1+x3)"], "1"),
            (vec!["x1", "x2", "x3"], "(x2+x3)*x2"),
            (vec!["x2", "x1*(x1+x2)"], "x2"),
        ],
        vec![
            (vec!["x2", "x1*(x1+x2)"], "1"),
            (vec!["x1", "x2", "x3"], "(x2+x3)*x3"),
            (vec!["x3", "x1*(x1+x3)"], "x3"),
        ],
        vec![
            (vec!["x2+x3", "x1*(x1+x2+x3)"], "1"),
            (vec!["x1", "x2", "x3"], "x2*x3"),
            (vec!["x3", "x1*(x1+x3)"], "x3"),
        ],
        vec![
            (vec!["x3", "x1*(x1+x3)"], "x3"),
            (vec!["x2", "x1*(x1+x2)"], "x2"),
            (vec!["x2", "x1*(x1+x2)"], "(x2+x3)*x2"),
            (vec!["x1", "x2", "x3"], "(x2+x3)*x2*x3"),
            (vec![q], "1"),
        ],
    ];
    terms.into_iter().map(|t| AlgebraPresentation::from_strings(3, &t).unwrap()).collect()
}

/// The twelve graded presentations classified over the sheared quotient
/// groupoid, in the source listing order.
pub fn twelve_presentations() -> Vec<AlgebraPresentation> {
    let q = "x1*(x1+x2)*(x1+x3)*(x1+x2+x3)";
    let p = "x2*(x2+x3)";
    let terms: Vec<Vec<(Vec<&str>, &str)>> = vec![
        vec![(vec!["x3", p, q], "1")],
        vec![
            (vec!["x3", p, q], "1"),
            (vec!["x3", p, q], "x1*x3*(x1+x3)+x2^2*(x2+x3)"),
        ],
        vec![(vec!["x3", p, "x1*(x1+x3)"], "1")],
        vec![(vec![p, q], "1"), (vec!["x3", p, "x1*(x1+x3)"], "x3")],
        vec![(vec!["x1", "x3", p], "1")],
        vec![(vec!["x1", "x3", p], "x3"), (vec![p, q], "1")],
        vec![(vec!["x1", "x3", p], p), (vec!["x3", "x1*(x1+x3)"], "1")],
        vec![
            (vec!["x1", "x3", p], "x2*(x2+x3)*x3"),
            (vec!["x3", "x1*(x1+x3)"], "x3"),
            (vec![p, q], "1"),
        ],
        vec![(vec!["x3", "x1+x2", p], "1")],
        vec![(vec!["x3", "x1+x2", p], "x3"), (vec![p, q], "1")],
        vec![(vec!["x1+x2", "x3", p], p), (vec!["x3", "(x1+x2)*(x1+x2+x3)"], "1")],
        vec![
            (vec!["x3", p, "x1+x2"], "x2*(x2+x3)*x3"),
            (vec!["x3", "(x1+x2)*(x1+x2+x3)"], "x3"),
            (vec![p, q], "1"),
        ],
    ];
    terms.into_iter().map(|t| AlgebraPresentation::from_strings(3, &t).unwrap()).collect()
}
