//! Kernel masks, δ_irr, the set-cover solver, and the naive-search oracle:
//! the two δ routes must agree everywhere they both run.

use repdim_core::dixon::character_table;
use repdim_core::faithful::{
    build_cover, cd_set, delta, delta_from_table, delta_irr, delta_naive, has_faithful_irr,
    kernel_classes, kernel_masks, solve_cover, CoverInstance, CoverItem, FaithfulError,
    KernelMask,
};
use repdim_core::group::{build_group, conjugacy_classes, minimal_normal_subgroups, Group};
use repdim_core::groupspec::GroupSpec;

fn group(spec: &str) -> Group {
    build_group(&spec.parse::<GroupSpec>().unwrap(), 10_000).unwrap()
}

#[test]
fn kernel_of_the_trivial_character_is_everything() {
    for spec in ["symmetric(4)", "dicyclic(8)", "cyclic(6)"] {
        let table = character_table(&group(spec)).unwrap();
        let mask = kernel_classes(table.as_ref(), 0);
        assert_eq!(mask.count(), table.class_count(), "{spec}");
    }
}

#[test]
fn kernel_of_the_quaternion_2d_character_is_trivial() {
    let table = character_table(&group("dicyclic(8)")).unwrap();
    let row = table.characters.iter().position(|r| r.degree == 2).unwrap();
    assert!(kernel_classes(table.as_ref(), row).is_identity_only());
}

#[test]
fn kernel_of_a_klein_linear_character_has_two_classes() {
    let table = character_table(&group("abelian(2,2)")).unwrap();
    for row in 1..4 {
        let mask = kernel_classes(table.as_ref(), row);
        assert_eq!(mask.count(), 2);
        assert!(mask.contains(0));
    }
}

#[test]
fn kernels_are_normal_subgroups() {
    for spec in ["symmetric(4)", "frobenius72()", "extraspecial(2,32,plus)"] {
        let g = group(spec);
        let cc = conjugacy_classes(&g);
        let table = character_table(&g).unwrap();
        for mask in kernel_masks(table.as_ref()) {
            // Element union of the masked classes, closed under conjugation
            // by construction; check multiplication closure.
            let members: Vec<usize> = (0..g.order())
                .filter(|&x| mask.contains(cc.class_of[x] as usize))
                .collect();
            let inside: std::collections::HashSet<usize> = members.iter().copied().collect();
            for &a in &members {
                for &b in &members {
                    assert!(inside.contains(&g.multiply(a, b)), "{spec}: closed");
                }
            }
        }
        // The regular character is faithful: all kernels intersect trivially.
        let masks = kernel_masks(table.as_ref());
        let mut inter = masks[0].clone();
        for m in &masks {
            inter.intersect_with(m);
        }
        assert!(inter.is_identity_only(), "{spec}");
    }
}

#[test]
fn delta_irr_examples() {
    let a4d10 = character_table(&group("product(alternating(4),dihedral(10))")).unwrap();
    assert_eq!(delta_irr(a4d10.as_ref()), Some(6));

    let klein = character_table(&group("abelian(2,2)")).unwrap();
    assert_eq!(delta_irr(klein.as_ref()), None);
    assert!(!has_faithful_irr(klein.as_ref()));

    let q8 = character_table(&group("dicyclic(8)")).unwrap();
    assert_eq!(delta_irr(q8.as_ref()), Some(2));
}

#[test]
fn cd_set_examples() {
    let es = character_table(&group("extraspecial(3,27,exp3)")).unwrap();
    assert_eq!(cd_set(es.as_ref()).into_iter().collect::<Vec<_>>(), vec![1, 3]);
    let s4 = character_table(&group("symmetric(4)")).unwrap();
    assert_eq!(cd_set(s4.as_ref()).into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
}

fn cover_for(spec: &str) -> CoverInstance {
    let g = group(spec);
    let cc = conjugacy_classes(&g);
    let table = character_table(&g).unwrap();
    let minimal = minimal_normal_subgroups(&g, &cc).unwrap();
    let targets = minimal
        .iter()
        .map(|n| repdim_core::faithful::normal_subgroup_mask(n, &cc.class_of, cc.count()))
        .collect();
    build_cover(table.as_ref(), targets).unwrap()
}

#[test]
fn klein_cover_has_three_targets_each_row_covers_two() {
    let instance = cover_for("abelian(2,2)");
    assert_eq!(instance.targets.len(), 3);
    // Row 0 is trivial and covers nothing; the three nontrivial linear rows
    // each cover exactly two targets.
    assert_eq!(instance.items[0].covers, 0);
    for item in &instance.items[1..] {
        assert_eq!(item.covers.count_ones(), 2);
    }
    let (value, witness) = solve_cover(&instance);
    assert_eq!(value, 2);
    assert_eq!(witness.len(), 2);
}

#[test]
fn simple_group_cover_has_one_target_every_nontrivial_row_covers() {
    let instance = cover_for("alternating(5)");
    assert_eq!(instance.targets.len(), 1);
    assert_eq!(instance.items[0].covers, 0);
    for item in &instance.items[1..] {
        assert_eq!(item.covers, 1);
    }
}

#[test]
fn cyclic_6_faithful_linear_covers_both_targets() {
    let instance = cover_for("cyclic(6)");
    assert_eq!(instance.targets.len(), 2);
    assert!(instance
        .items
        .iter()
        .any(|item| item.weight == 1 && item.covers == 0b11));
}

#[test]
fn synthetic_single_target_takes_the_lightest_cover() {
    let instance = CoverInstance {
        targets: vec![KernelMask::identity_only(1)],
        items: vec![
            CoverItem { row: 0, weight: 7, covers: 1 },
            CoverItem { row: 1, weight: 3, covers: 1 },
            CoverItem { row: 2, weight: 5, covers: 1 },
        ],
    };
    let (value, witness) = solve_cover(&instance);
    assert_eq!(value, 3);
    assert_eq!(witness, vec![1]);
}

#[test]
fn product_a4_s3_cover_weight_is_5() {
    let instance = cover_for("product(alternating(4),symmetric(3))");
    let (value, _) = solve_cover(&instance);
    assert_eq!(value, 5);
}

#[test]
fn delta_examples() {
    for n in [1u64, 2, 5, 9, 12] {
        let res = delta(&group(&format!("cyclic({n})"))).unwrap();
        assert_eq!(res.value, 1, "cyclic({n})");
        assert_eq!(res.witness.len(), 1);
    }
    assert_eq!(delta(&group("product(alternating(4),dihedral(10))")).unwrap().value, 5);
    assert_eq!(delta(&group("symmetric(5)")).unwrap().value, 4);
    // n − 1 keeps holding beyond the corpus proper.
    assert_eq!(delta(&group("symmetric(7)")).unwrap().value, 6);
}

#[test]
fn delta_result_invariants() {
    for spec in [
        "abelian(2,2)",
        "symmetric(4)",
        "dicyclic(8)",
        "product(alternating(4),dihedral(10))",
        "frobenius72()",
        "gl(2,3)",
    ] {
        let g = group(spec);
        let table = character_table(&g).unwrap();
        let res = delta(&g).unwrap();
        // Witness degrees sum to the value; kernels intersect trivially.
        let sum: u64 = res.witness.iter().map(|&r| table.characters[r].degree).sum();
        assert_eq!(sum, res.value, "{spec}");
        let mut inter = kernel_classes(table.as_ref(), res.witness[0]);
        for &r in &res.witness[1..] {
            inter.intersect_with(&kernel_classes(table.as_ref(), r));
        }
        assert!(inter.is_identity_only(), "{spec}: witness is faithful");
        // Witness minimality: dropping any member breaks faithfulness.
        if res.witness.len() > 1 {
            for drop in 0..res.witness.len() {
                let mut inter = KernelMask::empty(table.class_count());
                for (i, &r) in res.witness.iter().enumerate() {
                    let mask = kernel_classes(table.as_ref(), r);
                    if i == drop {
                        continue;
                    }
                    if inter.is_empty() {
                        inter = mask;
                    } else {
                        inter.intersect_with(&mask);
                    }
                }
                assert!(!inter.is_identity_only(), "{spec}: witness minimal");
            }
        }
        // δ ≤ δ_irr when the latter exists.
        if let Some(di) = delta_irr(table.as_ref()) {
            assert!(res.value <= di, "{spec}");
            assert_eq!(
                res.irreducible_witness.map(|r| table.characters[r].degree),
                Some(di),
                "{spec}"
            );
        } else {
            assert_eq!(res.irreducible_witness, None, "{spec}");
        }
    }
}

#[test]
fn naive_search_examples() {
    let klein = character_table(&group("abelian(2,2)")).unwrap();
    assert_eq!(delta_naive(klein.as_ref()).unwrap(), 2);
    let s3 = character_table(&group("symmetric(3)")).unwrap();
    assert_eq!(delta_naive(s3.as_ref()).unwrap(), 2);
    let c12 = character_table(&group("cyclic(12)")).unwrap();
    assert_eq!(delta_naive(c12.as_ref()).unwrap(), 1);
}

#[test]
fn cover_target_cap_is_enforced() {
    let table = character_table(&group("abelian(2,2)")).unwrap();
    let targets: Vec<KernelMask> = (0..65).map(|_| KernelMask::identity_only(4)).collect();
    assert!(matches!(
        build_cover(table.as_ref(), targets),
        Err(FaithfulError::TooManyTargets { count: 65, .. })
    ));
}

#[test]
fn mismatched_group_and_table_are_rejected() {
    let g = group("symmetric(3)");
    let other = character_table(&group("cyclic(4)")).unwrap();
    assert!(matches!(
        repdim_core::faithful::delta_with_table(&g, other.as_ref()),
        Err(FaithfulError::TableMismatch { .. })
    ));
}

#[test]
fn naive_guard_rejects_wide_tables() {
    let table = character_table(&group("extraspecial(2,32,plus)")).unwrap();
    assert_eq!(table.class_count(), 17);
    assert!(matches!(
        delta_naive(table.as_ref()),
        Err(FaithfulError::TooManyClasses { count: 17, .. })
    ));
}

/// The central correctness property: the exact cover reformulation agrees
/// with the verbatim subset search on every group where both run.
#[test]
fn oracle_equivalence_naive_vs_cover() {
    for spec in [
        "cyclic(1)",
        "cyclic(6)",
        "cyclic(12)",
        "abelian(2,2)",
        "abelian(2,4)",
        "abelian(2,2,2)",
        "abelian(6,10)",
        "symmetric(3)",
        "symmetric(4)",
        "symmetric(5)",
        "alternating(4)",
        "alternating(5)",
        "dihedral(6)",
        "dihedral(8)",
        "dihedral(10)",
        "dihedral(12)",
        "dihedral(20)",
        "dicyclic(8)",
        "dicyclic(12)",
        "dicyclic(16)",
        "extraspecial(3,27,exp3)",
        "extraspecial(3,27,exp9)",
        "frobenius_affine(5,1)",
        "frobenius_affine(7,2)",
        "frobenius_affine(9,1)",
        "frobenius_affine(13,3)",
        "frobenius72()",
        "gl(2,3)",
        "sl(2,3)",
        "sl(2,5)",
        "product(symmetric(3),cyclic(2))",
        "product(dihedral(8),cyclic(2))",
        "product(abelian(2,2),cyclic(3))",
    ] {
        let g = group(spec);
        let table = character_table(&g).unwrap();
        if table.class_count() > 12 {
            continue;
        }
        let naive = delta_naive(table.as_ref()).unwrap();
        let cover = delta(&g).unwrap();
        assert_eq!(naive, cover.value, "{spec}: naive vs cover");
        let from_table = delta_from_table(table.as_ref()).unwrap();
        assert_eq!(from_table.value, cover.value, "{spec}: table-only route");
    }
}

/// Exhaustive subset search with no class-count guard: walks r-combinations
/// while r stays below the best degree sum found. Test-only oracle,
/// independent of both shipped delta routes.
fn exhaustive_min_faithful_degree_sum(
    degrees: &[u64],
    masks: &[repdim_core::faithful::KernelMask],
) -> u64 {
    let s = degrees.len();
    let mut min_deg: u64 = degrees.iter().sum();
    let mut r = 1usize;
    while (r as u64) <= min_deg && r <= s {
        let mut combo: Vec<usize> = (0..r).collect();
        loop {
            let dsum: u64 = combo.iter().map(|&i| degrees[i]).sum();
            if dsum < min_deg {
                let mut inter = masks[combo[0]].clone();
                for &i in &combo[1..] {
                    inter.intersect_with(&masks[i]);
                }
                if inter.is_identity_only() {
                    min_deg = dsum;
                }
            }
            let mut advanced = false;
            let mut i = r;
            while i > 0 {
                i -= 1;
                if combo[i] != i + s - r {
                    combo[i] += 1;
                    for j in (i + 1)..r {
                        combo[j] = combo[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        r += 1;
    }
    min_deg
}

/// For direct products of groups with coprime orders, a faithful-on-the-left
/// irreducible plus a faithful-on-the-right one is already faithful, so the
/// minimal faithful degree is min(d1·d2, d1+d2) here — additive, not
/// multiplicative, once both factors need degree ≥ 2 and one needs ≥ 3.
/// Pinned by three independent routes (cover solver, kernel lattice,
/// exhaustive subset search); the witness is one degree-2 and one degree-3
/// row while the minimal faithful *irreducible* degree stays 6.
#[test]
fn coprime_product_delta_is_additive_not_multiplicative() {
    for spec in [
        "product(frobenius_affine(7,2),dicyclic(8))",
        "product(extraspecial(3,27,exp3),dicyclic(8))",
    ] {
        let g = group(spec);
        let table = character_table(&g).unwrap();
        let res = delta(&g).unwrap();
        assert_eq!(res.value, 5, "{spec}: cover solver");
        let witness_degrees: Vec<u64> =
            res.witness.iter().map(|&r| table.characters[r].degree).collect();
        assert_eq!(witness_degrees, vec![2, 3], "{spec}: witness shape");
        assert_eq!(delta_irr(table.as_ref()), Some(6), "{spec}: irreducible route");
        assert_eq!(delta_from_table(table.as_ref()).unwrap().value, 5, "{spec}: lattice route");
        let masks = kernel_masks(table.as_ref());
        assert_eq!(
            exhaustive_min_faithful_degree_sum(&table.degrees(), &masks),
            5,
            "{spec}: exhaustive oracle"
        );
    }
}

/// The table-only route (kernel-lattice targets) matches the group route
/// even on wider tables where the naive search is guarded off.
#[test]
fn table_only_route_agrees_with_group_route() {
    for spec in [
        "abelian(2,4,8)",
        "abelian(6,10)",
        "extraspecial(2,32,plus)",
        "extraspecial(2,32,minus)",
        "symmetric(6)",
        "product(alternating(4),dihedral(10))",
        "product(frobenius_affine(7,2),dicyclic(8))",
    ] {
        let g = group(spec);
        let table = character_table(&g).unwrap();
        let a = delta(&g).unwrap();
        let b = delta_from_table(table.as_ref()).unwrap();
        assert_eq!(a.value, b.value, "{spec}");
        assert_eq!(a.witness, b.witness, "{spec}: identical tie-broken witness");
    }
}
