//! Quotient tables and groupoids determine each other, and the extension to
//! all linear maps is coherent with taking regular parts.

mod common;

use common::{f2, gl2_subgroups, group_groupoid, random_closed_groupoid, rng};
use sublat_core::fp::{enumerate_injections, gaussian_binomial, Fp};
use sublat_core::functor::{
    groupoid_of, is_connected, is_minimal, is_noetherian, kan_extend, quotient_functor,
    regular_part,
};
use sublat_core::groupoid::Groupoid;

/// A spread of closed groupoids: every subgroup groupoid of GL_2(F_2), a few
/// over F_3, and seeded random closures on planes and 3-space.
fn sample() -> Vec<Groupoid> {
    let mut out = Vec::new();
    for gens in gl2_subgroups(f2()) {
        out.push(group_groupoid(f2(), 2, &gens));
    }
    let f3 = Fp::new(3).unwrap();
    out.push(group_groupoid(f3, 2, &[]));
    out.push(group_groupoid(
        f3,
        2,
        &[sublat_core::fp::Matrix::from_rows(f3, 2, &[vec![0, 2], vec![1, 0]])],
    ));
    let mut r = rng(0xF0_0D);
    for seed in 0..14u32 {
        let gens = 1 + (seed % 3) as usize;
        out.push(random_closed_groupoid(&mut r, f2(), 2, gens));
    }
    for _ in 0..6 {
        out.push(random_closed_groupoid(&mut r, f2(), 3, 2));
    }
    out
}

#[test]
fn tables_and_groupoids_round_trip() {
    for (i, g) in sample().iter().enumerate() {
        let f = quotient_functor(g).unwrap();
        assert!(is_connected(&f));
        assert!(is_minimal(&f).unwrap());
        let back = groupoid_of(&f).unwrap();
        assert_eq!(&back, g, "sample {i}: recovered groupoid differs");
        let again = quotient_functor(&back).unwrap();
        assert!(f.same_presheaf(&again), "sample {i}: table not reproduced");
    }
}

#[test]
fn value_sizes_count_intertwining_classes() {
    // the table at k lists the classes of injections F_p^k into the ambient
    for g in sample().iter().take(10) {
        let f = quotient_functor(g).unwrap();
        for k in 0..=f.max_dim() {
            let classes = g.sim_classes(k).unwrap();
            assert_eq!(f.value(k).len(), classes.len());
            let total: usize = classes.iter().map(|c| c.len()).sum();
            let all = enumerate_injections(f.field(), k, f.max_dim()).unwrap();
            assert_eq!(total, all.len());
        }
    }
}

#[test]
fn extension_restricts_back_to_the_table() {
    for (i, g) in sample().iter().enumerate() {
        let f = quotient_functor(g).unwrap();
        let extended = kan_extend(&f, f.max_dim()).unwrap();
        let reg = regular_part(&extended).unwrap();
        assert!(
            f.same_presheaf(&reg),
            "sample {i}: regular part of the extension is not the original"
        );
        assert!(is_noetherian(&extended).unwrap(), "sample {i}: extension not noetherian");
    }
}

#[test]
fn extension_sizes_follow_the_subspace_sum() {
    // |F~(k)| = sum over d of (number of d-codim quotient kernels) * |F(d)|,
    // i.e. every element of the extension is an element of the table tagged
    // with the kernel of the projection it came through.
    for g in sample().iter().take(8) {
        let f = quotient_functor(g).unwrap();
        let p = f.field().p() as u64;
        let extended = kan_extend(&f, f.max_dim()).unwrap();
        for k in 0..=f.max_dim() {
            let expected: u64 = (0..=k)
                .map(|d| gaussian_binomial(p, k, d) * f.value(d).len() as u64)
                .sum();
            assert_eq!(extended.value(k).len() as u64, expected);
        }
    }
}

#[test]
fn deeper_extensions_stay_noetherian_and_nonempty() {
    let g = group_groupoid(f2(), 2, &gl2_subgroups(f2())[1]);
    let f = quotient_functor(&g).unwrap();
    let deep = kan_extend(&f, 4).unwrap();
    assert_eq!(deep.depth(), 4);
    assert!(is_noetherian(&deep).unwrap());
    // values beyond the generation bound come only from proper projections
    assert!(!deep.value(4).is_empty());
    assert!(regular_part(&deep).unwrap().same_presheaf(&f));
}

#[test]
fn transport_is_contravariantly_functorial() {
    let mut r = rng(0xBEEF);
    for g in [
        group_groupoid(f2(), 3, &[]),
        random_closed_groupoid(&mut r, f2(), 3, 2),
    ] {
        let f = quotient_functor(&g).unwrap();
        for j in 0..=3usize {
            for mid in j..=3 {
                for k in mid..=3 {
                    for a in enumerate_injections(f2(), j, mid).unwrap().iter().take(6) {
                        for b in enumerate_injections(f2(), mid, k).unwrap().iter().take(6) {
                            let ba = b.compose(a);
                            let left = f.transport_of(j, k, ba.matrix()).unwrap();
                            let via_b = f.transport_of(mid, k, b.matrix()).unwrap();
                            let via_a = f.transport_of(j, mid, a.matrix()).unwrap();
                            for s in 0..f.value(k).len() {
                                assert_eq!(left[s], via_a[via_b[s]]);
                            }
                        }
                    }
                }
            }
        }
    }
}
