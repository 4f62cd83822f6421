//! Structural properties of the exact prime-field linear algebra: canonical
//! echelon forms, rank bookkeeping, subspace lattice counts, and the
//! quotient splitting.

mod common;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use sublat_core::fp::{
    all_subspaces, enumerate_injections, gaussian_binomial, quotient, Fp, LinMap, Matrix,
    Subspace,
};

fn small_prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2), Just(3), Just(5)]
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (small_prime(), 1usize..=4, 1usize..=4).prop_flat_map(|(p, rows, cols)| {
        proptest::collection::vec(proptest::collection::vec(0..p, cols), rows)
            .prop_map(move |entries| Matrix::from_rows(Fp::new(p).unwrap(), cols, &entries))
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        rng_seed: RngSeed::Fixed(0x5f3759df),
        failure_persistence: None,
        .. ProptestConfig::default()
    })]

    #[test]
    fn echelon_form_is_idempotent(m in matrix_strategy()) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r);
    }

    #[test]
    fn rank_and_kernel_dimensions_add_up(m in matrix_strategy()) {
        prop_assert_eq!(m.rank() + m.null_space().dim(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix_strategy()) {
        for v in m.null_space().vectors() {
            let img = m.apply(&v);
            prop_assert!(img.iter().all(|&e| e == 0));
        }
    }

    #[test]
    fn solving_reproduces_the_right_hand_side(m in matrix_strategy(), seed in any::<u64>()) {
        // solve against a vector known to lie in the column span
        let mut r = common::rng(seed);
        let x: Vec<u32> = (0..m.cols())
            .map(|_| rand::Rng::random_range(&mut r, 0..m.field().p()))
            .collect();
        let b = m.apply(&x);
        let solved = m.solve(&b).expect("image vectors are solvable");
        prop_assert_eq!(m.apply(&solved), b);
    }

    #[test]
    fn subspace_modularity(m in matrix_strategy(), m2 in matrix_strategy()) {
        let (m, m2) = if m.field() == m2.field() && m.cols() == m2.cols() {
            (m, m2)
        } else {
            return Ok(());
        };
        let u = Subspace::from_spanning(m.field(), m.cols(), &m.row_vecs());
        let t = Subspace::from_spanning(m.field(), m.cols(), &m2.row_vecs());
        let sum = u.sum(&t).unwrap();
        let cap = u.intersect(&t).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + t.dim());
        prop_assert!(sum.contains(&u) && sum.contains(&t));
        prop_assert!(u.contains(&cap) && t.contains(&cap));
        // double orthogonal complement returns the same canonical subspace
        prop_assert_eq!(u.perp().perp(), u);
    }

    #[test]
    fn inverses_compose_to_the_identity(m in matrix_strategy()) {
        if m.rows() != m.cols() {
            return Ok(());
        }
        match m.inverse() {
            None => prop_assert!(m.rank() < m.rows()),
            Some(inv) => prop_assert!(m.mul(&inv).is_identity() && inv.mul(&m).is_identity()),
        }
    }

    #[test]
    fn quotients_split_through_the_section(m in matrix_strategy()) {
        let u = Subspace::from_spanning(m.field(), m.cols(), &m.row_vecs());
        let q = quotient(&u);
        prop_assert_eq!(q.q_dim, m.cols() - u.dim());
        // projection then section is the identity on the quotient
        let round = q.projection.compose(&q.section);
        prop_assert!(round.matrix().is_identity());
        // the section's image is a complement of the subspace
        let img = q.section.image();
        prop_assert_eq!(img.intersect(&u).unwrap().dim(), 0);
        prop_assert_eq!(img.sum(&u).unwrap().dim(), m.cols());
    }
}

#[test]
fn subspace_counts_follow_the_gaussian_binomials() {
    for p in [2u32, 3] {
        let field = Fp::new(p).unwrap();
        for n in 0..=3 {
            let all = all_subspaces(field, n).unwrap();
            for k in 0..=n {
                let count = all.iter().filter(|s| s.dim() == k).count() as u64;
                assert_eq!(count, gaussian_binomial(p as u64, n, k), "p={p} n={n} k={k}");
            }
        }
    }
    let field = Fp::new(2).unwrap();
    let all = all_subspaces(field, 4).unwrap();
    assert_eq!(all.iter().filter(|s| s.dim() == 2).count() as u64, gaussian_binomial(2, 4, 2));
}

#[test]
fn injection_counts_are_falling_q_factorials() {
    // p^n - p^0, p^n - p^1, ... products count injections
    for (p, n, k) in [(2u32, 3usize, 2usize), (3, 2, 2), (2, 4, 1)] {
        let field = Fp::new(p).unwrap();
        let count = enumerate_injections(field, k, n).unwrap().len() as u64;
        let expected: u64 =
            (0..k).map(|i| (p as u64).pow(n as u32) - (p as u64).pow(i as u32)).product();
        assert_eq!(count, expected, "p={p} k={k} n={n}");
    }
}

#[test]
fn map_composition_respects_preimages() {
    let field = Fp::new(3).unwrap();
    let g = LinMap::from_images(field, 3, &[vec![1, 0, 1], vec![0, 2, 1]]);
    let target = Subspace::from_spanning(field, 3, &[vec![1, 0, 1]]);
    let pre = g.preimage(&target).unwrap();
    for v in pre.vectors() {
        assert!(target.contains_vec(&g.apply(&v)));
    }
    // the preimage is the largest such subspace
    let full = Subspace::full(field, 2);
    for v in full.vectors() {
        if target.contains_vec(&g.apply(&v)) {
            assert!(pre.contains_vec(&v));
        }
    }
}
