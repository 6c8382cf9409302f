mod common;

use flagiso::algebra::{invariants, realize};
use flagiso::classify::{enumerate, DEFAULT_TUPLE_BUDGET};
use flagiso::division::DivisionAlgebra;
use flagiso::group::GroupElem;
use flagiso::iso::{equiv_elementary, iso_algebras, Verdict};

#[test]
fn class_counts_match_brute_force_orbits_for_twisted_divisions() {
    let mut rng = common::rng(11);
    for group in common::small_groups().into_iter().filter(|g| g.order() <= 6) {
        for _ in 0..3 {
            let d = common::random_division(&group, &mut rng);
            for blocks in [vec![1], vec![1, 1], vec![2]] {
                let table = enumerate(&d, blocks.clone(), DEFAULT_TUPLE_BUDGET).unwrap();
                let orbits = common::brute_force_orbits(&d, &blocks);
                assert_eq!(table.count(), orbits.len(), "order {} blocks {blocks:?}", group.order());
                let total: usize = table.classes.iter().map(|c| c.orbit_size).sum();
                assert_eq!(total, table.tuples);
            }
        }
    }
}

#[test]
fn isomorphism_agrees_with_orbit_membership() {
    let group = common::abelian(&[4]);
    let d = DivisionAlgebra::trivial(group.clone());
    let blocks = [1, 1];
    let orbits = common::brute_force_orbits(&d, &blocks);
    let family = common::all_elementary(&group, &blocks);
    let code = |p: &flagiso::flag::FlagPresentation| p.tuple().iter().map(|x| x.0).collect::<Vec<_>>();
    for p in &family {
        for q in &family {
            let same = orbits.iter().any(|o| o.contains(&code(p)) && o.contains(&code(q)));
            assert_eq!(iso_algebras(p, q).unwrap().is_isomorphic(), same);
        }
    }
}

#[test]
fn elementary_equivalence_contains_isomorphism() {
    let family = common::elementary_family();
    for p in &family {
        for q in &family {
            if p.group() != q.group() || p.shape() != q.shape() {
                continue;
            }
            if iso_algebras(p, q).unwrap().is_isomorphic() {
                assert!(matches!(equiv_elementary(p, q).unwrap(), Verdict::Equivalent(_)));
            }
        }
    }
}

#[test]
fn cyclic_flags_with_distinct_cosets_are_equivalent_across_orders() {
    // (e, x) for any non-identity x gives upper triangular 2x2 matrices
    // with a single off-diagonal homogeneous component.
    let mut reps = Vec::new();
    for n in [2, 3, 4, 5] {
        let g = common::abelian(&[n]);
        let d = DivisionAlgebra::trivial(g.clone());
        reps.push(flagiso::flag::FlagPresentation::new(d, vec![1, 1], vec![GroupElem(0), GroupElem(1)]).unwrap());
    }
    for p in &reps {
        for q in &reps {
            assert!(matches!(equiv_elementary(p, q).unwrap(), Verdict::Equivalent(_)));
        }
    }
    let g = common::abelian(&[3]);
    let trivial_grading =
        flagiso::flag::FlagPresentation::new(DivisionAlgebra::trivial(g), vec![1, 1], vec![GroupElem(0); 2]).unwrap();
    assert!(matches!(
        equiv_elementary(&reps[0], &trivial_grading).unwrap(),
        Verdict::NotEquivalent(_)
    ));
}

#[test]
fn dimension_counts_follow_coset_differences() {
    let mut rng = common::rng(12);
    for _ in 0..50 {
        let p = common::random_presentation(&mut rng, 4);
        let a = realize(&p);
        let inv = invariants(&a);
        let group = p.group();
        let support = p.division().support();
        // Oracle: count positions i ≤ j (within the block pattern) by the
        // coset g_i H g_j⁻¹, each contributing one dimension per h ∈ H.
        let mut expected = vec![0usize; group.order()];
        let t = p.tuple();
        for i in 0..p.n() {
            for j in 0..p.n() {
                if p.shape().block_of(i) > p.shape().block_of(j) {
                    continue;
                }
                for h in support.members() {
                    expected[group.mul(group.mul(t[i], *h), group.inv(t[j])).0] += 1;
                }
            }
        }
        assert_eq!(inv.dim_by_degree, expected);
    }
}
