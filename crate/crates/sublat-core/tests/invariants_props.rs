//! Degree-by-degree invariant spans computed through the groupoid agree with
//! the classical group computation and move contravariantly under coordinate
//! changes.

mod common;

use common::{f2, group_groupoid, random_invertible, rng};
use sublat_core::fp::{LinMap, Matrix};
use sublat_core::groupoid::{gl_action, group_closure, Groupoid};
use sublat_core::invariants::{
    group_invariant_basis, hilbert_dims, invariant_basis, GradedBasis, Poly2,
};

fn gl3_generator_sets(field: sublat_core::fp::Fp) -> Vec<Vec<Matrix>> {
    let m = |rows: &[Vec<u32>]| Matrix::from_rows(field, 3, rows);
    vec![
        vec![m(&[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]])],
        vec![m(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]])],
        vec![m(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]])],
        vec![
            m(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            m(&[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]]),
        ],
        vec![
            m(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
            m(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]),
        ],
    ]
}

fn same_span(a: &GradedBasis, b: &GradedBasis) -> bool {
    a.dim() == b.dim() && a.polys().iter().all(|p| b.contains(p).unwrap())
}

#[test]
fn groupoid_and_group_routes_produce_the_same_spans() {
    for gens in gl3_generator_sets(f2()) {
        let group = group_closure(f2(), 3, &gens).unwrap();
        let g = group_groupoid(f2(), 3, &gens);
        for degree in 0..=6 {
            let through_groupoid = invariant_basis(&g, degree).unwrap();
            let through_group = group_invariant_basis(f2(), 3, &group, degree).unwrap();
            assert!(
                same_span(&through_groupoid, &through_group),
                "span mismatch at degree {degree} for group of order {}",
                group.len()
            );
        }
    }
}

#[test]
fn full_linear_group_invariants_have_dickson_dimensions() {
    // the invariant ring of the full group on three variables is free on
    // generators in degrees 4, 6, 7
    let gens = vec![
        Matrix::from_rows(f2(), 3, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
        Matrix::from_rows(f2(), 3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]),
        Matrix::from_rows(f2(), 3, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]),
    ];
    let g = group_groupoid(f2(), 3, &gens);
    for degree in 0..=8 {
        let basis = invariant_basis(&g, degree).unwrap();
        assert_eq!(
            basis.dim() as u64,
            hilbert_dims(&[4, 6, 7], degree),
            "free-algebra dimension count fails at degree {degree}"
        );
    }
}

#[test]
fn coordinate_changes_transport_invariant_spans() {
    // the invariants of the moved groupoid are the pullbacks of the original
    // invariants along the inverse change of coordinates
    let mut r = rng(0x90_27_21);
    let sets = gl3_generator_sets(f2());
    for round in 0..10 {
        let gens = &sets[round % sets.len()];
        let g = group_groupoid(f2(), 3, gens);
        let change = random_invertible(&mut r, f2(), 3);
        let moved = gl_action(&change, &g).unwrap();
        let pull = LinMap::new(change.inverse().unwrap());
        for degree in [2, 3, 4, 5, 6, 7, 8] {
            let original = invariant_basis(&g, degree).unwrap();
            let transported = invariant_basis(&moved, degree).unwrap();
            assert_eq!(original.dim(), transported.dim());
            for p in original.polys() {
                let q = p.substitute(&pull).unwrap();
                assert!(
                    transported.contains(&q).unwrap(),
                    "degree {degree}: pullback of {p} missing"
                );
            }
        }
    }
}

#[test]
fn squaring_preserves_invariance() {
    // the span at degree 2d contains the squares of the degree-d span
    let gens = gl3_generator_sets(f2());
    for (i, set) in gens.iter().enumerate().take(3) {
        let g = group_groupoid(f2(), 3, set);
        for degree in 1..=4 {
            let basis = invariant_basis(&g, degree).unwrap();
            let doubled = invariant_basis(&g, 2 * degree).unwrap();
            for p in basis.polys() {
                assert!(
                    doubled.contains(&p.square()).unwrap(),
                    "set {i}: square of a degree-{degree} invariant escapes"
                );
            }
        }
    }
}

#[test]
fn products_of_invariants_stay_invariant() {
    let g = group_groupoid(
        f2(),
        3,
        &[Matrix::from_rows(f2(), 3, &[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]])],
    );
    let a = invariant_basis(&g, 2).unwrap();
    let b = invariant_basis(&g, 3).unwrap();
    let prod_degree = invariant_basis(&g, 5).unwrap();
    for p in a.polys() {
        for q in b.polys() {
            assert!(prod_degree.contains(&p.mul(q).unwrap()).unwrap());
        }
    }
}

#[test]
fn identity_groupoid_sees_every_polynomial() {
    let g = group_groupoid(f2(), 2, &[]);
    for degree in 0..=6 {
        let basis = invariant_basis(&g, degree).unwrap();
        // all monomials in two variables of the given degree
        let all = sublat_core::invariants::monomials(2, degree);
        assert_eq!(basis.dim(), all.len());
        for m in all {
            let p = Poly2::from_terms(2, &[m]).unwrap();
            assert!(basis.contains(&p).unwrap());
        }
    }
}

#[test]
fn strict_subgroups_leave_strictly_more_invariants() {
    let shear = Matrix::from_rows(f2(), 3, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    let cycle = Matrix::from_rows(f2(), 3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    let small = group_groupoid(f2(), 3, &[shear.clone()]);
    let large = group_groupoid(f2(), 3, &[shear, cycle]);
    let small_g: Groupoid = small;
    let mut somewhere_strict = false;
    for degree in 1..=6 {
        let fine = invariant_basis(&small_g, degree).unwrap();
        let coarse = invariant_basis(&large, degree).unwrap();
        assert!(coarse.dim() <= fine.dim());
        for p in coarse.polys() {
            assert!(fine.contains(p).unwrap(), "larger symmetry must refine the span");
        }
        if coarse.dim() < fine.dim() {
            somewhere_strict = true;
        }
    }
    assert!(somewhere_strict);
}
