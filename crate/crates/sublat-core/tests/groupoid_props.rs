//! Structural properties of closed groupoids on subspace lattices: closure
//! is idempotent and validated, the intertwining relation on injections is
//! an honest partition, and the coordinate-change action is a group action.

mod common;

use std::collections::BTreeSet;

use sublat_core::fp::{enumerate_isos, LinMap, Matrix, Subspace};
use sublat_core::groupoid::{
    close, from_group, gl_action, group_closure, AmbientFamily, Groupoid,
};

// the coordinates of an injection inside its own image
fn corestrict(u: &Subspace, inj: &LinMap) -> Matrix {
    let cols: Vec<Vec<u32>> = (0..inj.domain_dim())
        .map(|j| {
            let col: Vec<u32> =
                (0..inj.codomain_dim()).map(|i| inj.matrix().get(i, j)).collect();
            u.coords(&col).expect("an injection lands in its image")
        })
        .collect();
    let rows: Vec<Vec<u32>> =
        (0..u.dim()).map(|i| (0..cols.len()).map(|j| cols[j][i]).collect()).collect();
    Matrix::from_rows(inj.field(), cols.len(), &rows)
}

#[test]
fn closure_is_idempotent_and_valid() {
    let field = common::f2();
    for seed in 0..20 {
        let w = 2 + (seed as usize) % 2;
        let g = common::random_closed_groupoid(&mut common::rng(100 + seed), field, w, 3);
        assert!(g.validate().is_ok(), "seed {seed}");
        let gens: Vec<_> =
            g.morphisms().map(|(s, d, m)| (s.clone(), d.clone(), m.clone())).collect();
        assert_eq!(close(g.family(), &gens).unwrap(), g, "seed {seed}");
    }
}

#[test]
fn closures_restrict_their_morphisms() {
    let field = common::f2();
    let g = common::random_closed_groupoid(&mut common::rng(7), field, 3, 2);
    for (src, dst, m) in g.morphisms() {
        for t in sublat_core::fp::subspaces_of(&src.1).unwrap() {
            // push the subspace through the morphism in ambient coordinates
            // and check the corestricted map is present
            let rows: Vec<Vec<u32>> = t
                .basis()
                .row_vecs()
                .iter()
                .map(|v| {
                    let c = src.1.coords(v).expect("vector of a subspace of the source");
                    dst.1.vec_from_coords(&m.apply(&c))
                })
                .collect();
            let image = Subspace::from_spanning(field, 3, &rows);
            assert!(
                g.hom_set(&(src.0, t.clone()), &(dst.0, image)).is_some(),
                "missing restriction"
            );
        }
    }
}

#[test]
fn intertwining_classes_partition_the_injections() {
    let field = common::f2();
    for seed in [3u64, 4, 5] {
        let g = common::random_closed_groupoid(&mut common::rng(seed), field, 2, 2);
        for v_dim in 0..=2 {
            let classes = g.sim_classes(v_dim).unwrap();
            let mut seen = BTreeSet::new();
            let mut total = 0;
            for class in &classes {
                assert!(!class.is_empty());
                for (amb, inj) in class {
                    total += 1;
                    assert!(seen.insert((*amb, inj.matrix().clone())), "duplicate");
                }
            }
            let expected = g.family().injections(v_dim).unwrap().len();
            assert_eq!(total, expected, "seed {seed} v {v_dim}");

            // class-mates are intertwined by an explicit morphism between
            // their images: m composed with one corestriction gives the other
            for class in &classes {
                let (a0, i0) = &class[0];
                for (a1, i1) in &class[1..] {
                    let u0 = i0.image();
                    let u1 = i1.image();
                    let c0 = corestrict(&u0, i0);
                    let c1 = corestrict(&u1, i1);
                    let found = g
                        .hom_set(&(*a0, u0.clone()), &(*a1, u1.clone()))
                        .is_some_and(|set| set.iter().any(|m| m.mul(&c0) == c1));
                    assert!(found, "class-mates must be intertwined");
                }
            }
        }
    }
}

#[test]
fn coordinate_changes_act_on_groupoids() {
    let field = common::f2();
    let full = Subspace::full(field, 2);
    let changes = enumerate_isos(&full, &full).unwrap();
    for seed in [11u64, 12] {
        let g = common::random_closed_groupoid(&mut common::rng(seed), field, 2, 2);
        let id = sublat_core::fp::Matrix::identity(field, 2);
        assert_eq!(gl_action(&id, &g).unwrap(), g);
        for a in &changes {
            let ga = gl_action(a, &g).unwrap();
            assert!(ga.validate().is_ok());
            assert_eq!(ga.morphism_count(), g.morphism_count());
            for b in changes.iter().take(3) {
                let left = gl_action(b, &ga).unwrap();
                let right = gl_action(&b.mul(a), &g).unwrap();
                assert_eq!(left, right, "action must compose");
            }
        }
    }
}

#[test]
fn group_groupoids_are_generated_at_the_top() {
    let field = common::f2();
    for gens in common::gl2_subgroups(field) {
        let group = group_closure(field, 2, &gens).unwrap();
        let via_group = from_group(field, 2, &group).unwrap();
        let family = AmbientFamily::single(field, 2);
        let full = (0, Subspace::full(field, 2));
        let top_gens: Vec<_> =
            gens.iter().map(|m| (full.clone(), full.clone(), m.clone())).collect();
        assert_eq!(close(&family, &top_gens).unwrap(), via_group);
    }
    // conjugate groups give conjugate groupoids
    let g = common::group_groupoid(field, 2, &[common::upper_shear(field)]);
    let moved = gl_action(&common::swap2(field), &g).unwrap();
    let lower = sublat_core::fp::Matrix::from_rows(field, 2, &[vec![1, 0], vec![1, 1]]);
    assert_eq!(moved, common::group_groupoid(field, 2, &[lower]));
}

#[test]
fn identity_groupoids_are_minimal_closed_states() {
    let field = common::f2();
    let ids = Groupoid::identities(AmbientFamily::single(field, 3)).unwrap();
    assert!(ids.validate().is_ok());
    assert_eq!(close(ids.family(), &[]).unwrap(), ids);
    let expected: u64 = (0..=3).map(|k| sublat_core::fp::gaussian_binomial(2, 3, k)).sum();
    assert_eq!(ids.morphism_count() as u64, expected);
}
