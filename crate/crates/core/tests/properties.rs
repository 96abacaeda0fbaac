use std::sync::Arc;

use mincomp::certificate::{check_thm_single_coset, TheoremInstance, Verdict};
use mincomp::complement::{is_complement, is_minimal_complement_to, minimalize};
use mincomp::subset::{inverse_set, left_stabilizer, product_set, translate, Side};
use mincomp::sweep::quaternion_group;
use mincomp::{
    all_subgroups, coset_profile, oracle_minimality_status, subgroup_generated, FiniteGroup, GroupSubset,
    OracleConfig, OracleSide, OracleStatus, Subgroup,
};
use proptest::prelude::*;

fn groups() -> Vec<Arc<FiniteGroup>> {
    let mut v: Vec<Arc<FiniteGroup>> = [1, 2, 5, 6, 8, 12].map(|n| FiniteGroup::cyclic(n).unwrap()).to_vec();
    for spec in ["dihedral:3", "dihedral:4", "dihedral:5", "product:cyclic:2,cyclic:4", "product:cyclic:2,dihedral:3"] {
        v.push(FiniteGroup::parse_and_construct(spec).unwrap());
    }
    v.push(quaternion_group().unwrap());
    v
}

fn subset(g: &Arc<FiniteGroup>, bits: u64) -> GroupSubset {
    let mask = if g.order() == 64 { bits } else { bits & ((1 << g.order()) - 1) };
    GroupSubset::from_mask(g, mask).unwrap()
}

/// A group and three raw masks, reduced to subsets of that group.
fn group_and_sets() -> impl Strategy<Value = (Arc<FiniteGroup>, GroupSubset, GroupSubset, GroupSubset, usize)> {
    let gs = groups();
    (0..gs.len(), any::<u64>(), any::<u64>(), any::<u64>(), any::<usize>()).prop_map(move |(i, a, b, c, x)| {
        let g = gs[i].clone();
        let n = g.order();
        (g.clone(), subset(&g, a), subset(&g, b), subset(&g, c), x % n)
    })
}

/// Product of two subsets straight from the table.
fn naive_product(a: &GroupSubset, b: &GroupSubset) -> Vec<usize> {
    let g = a.group();
    let mut out: Vec<usize> = a.iter().flat_map(|x| b.iter().map(move |y| g.mul(x, y))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_matches_table((_g, a, b, _c, _x) in group_and_sets()) {
        prop_assert_eq!(product_set(&a, &b).unwrap().to_vec(), naive_product(&a, &b));
    }

    #[test]
    fn product_is_associative((_g, a, b, c, _x) in group_and_sets()) {
        let left = product_set(&product_set(&a, &b).unwrap(), &c).unwrap();
        let right = product_set(&a, &product_set(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inversion_reverses_products((_g, a, b, _c, _x) in group_and_sets()) {
        let lhs = inverse_set(&product_set(&a, &b).unwrap());
        let rhs = product_set(&inverse_set(&b), &inverse_set(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn translation_commutes_with_products((g, a, b, _c, x) in group_and_sets()) {
        let ab = product_set(&a, &b).unwrap();
        let single = GroupSubset::singleton(&g, x).unwrap();
        prop_assert_eq!(translate(Side::Left, x, &ab).unwrap(), product_set(&translate(Side::Left, x, &a).unwrap(), &b).unwrap());
        prop_assert_eq!(translate(Side::Right, x, &ab).unwrap(), product_set(&a, &translate(Side::Right, x, &b).unwrap()).unwrap());
        prop_assert_eq!(translate(Side::Left, x, &a).unwrap(), product_set(&single, &a).unwrap());
    }

    /// `C·B = G` iff `B⁻¹·C⁻¹ = G`, and minimality transfers across sides.
    #[test]
    fn complements_dualize_under_inversion((_g, c, b, _d, _x) in group_and_sets()) {
        let (ci, bi) = (inverse_set(&c), inverse_set(&b));
        prop_assert_eq!(is_complement(&c, &b, Side::Left).unwrap(), is_complement(&ci, &bi, Side::Right).unwrap());
        prop_assert_eq!(
            is_minimal_complement_to(&c, &b, Side::Left).unwrap(),
            is_minimal_complement_to(&ci, &bi, Side::Right).unwrap()
        );
    }

    #[test]
    fn stabilizer_is_the_largest_tiling_subgroup((g, y, _b, _c, _x) in group_and_sets()) {
        prop_assume!(!y.is_empty());
        let stab = left_stabilizer(&y).unwrap();
        prop_assert!(coset_profile(&y, &stab).unwrap().is_union);
        for m in all_subgroups(&g).unwrap() {
            if coset_profile(&y, &m).unwrap().is_union {
                prop_assert!(m.is_subgroup_of(&stab), "{} tiles {} but is not in the stabilizer", m.members(), y);
            }
        }
    }

    #[test]
    fn generated_subgroups_are_closed((g, a, _b, _c, _x) in group_and_sets()) {
        let h = subgroup_generated(&g, &a.to_vec()).unwrap();
        let again = subgroup_generated(&g, &h.members().to_vec()).unwrap();
        prop_assert_eq!(h.members(), again.members());
        prop_assert!(a.is_subset(h.members()).unwrap());
        prop_assert_eq!(product_set(h.members(), h.members()).unwrap(), h.members().clone());
    }

    #[test]
    fn minimalize_returns_a_minimal_subcomplement((g, b, _c, _d, _x) in group_and_sets(), side in prop_oneof![Just(Side::Left), Just(Side::Right)]) {
        prop_assume!(!b.is_empty());
        let full = GroupSubset::full(&g);
        let m = minimalize(&full, &b, side).unwrap();
        prop_assert!(is_minimal_complement_to(&m, &b, side).unwrap());
    }
}

/// Reference decision by scanning every partner directly.
fn naive_status(c: &GroupSubset) -> bool {
    let g = c.group();
    (1u64..1 << g.order()).any(|m| {
        let b = GroupSubset::from_mask(g, m).unwrap();
        is_minimal_complement_to(c, &b, Side::Left).unwrap() || is_minimal_complement_to(c, &b, Side::Right).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_agrees_with_direct_scan(i in 0usize..4, mask in 1u64..256) {
        let g = [
            FiniteGroup::cyclic(8).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            quaternion_group().unwrap(),
            FiniteGroup::parse_and_construct("product:cyclic:2,cyclic:4").unwrap(),
        ][i].clone();
        let c = GroupSubset::from_mask(&g, mask).unwrap();
        let r = oracle_minimality_status(&c, OracleSide::Both, &OracleConfig::default()).unwrap();
        prop_assert_eq!(matches!(r.status, OracleStatus::Minimal { .. }), naive_status(&c));
    }
}

#[test]
fn single_coset_verdict_is_monotone_in_e() {
    let g = FiniteGroup::cyclic(12).unwrap();
    let h = Subgroup::whole(&g);
    let k = subgroup_generated(&g, &[6]).unwrap();
    let c = GroupSubset::from_indices(&g, 0..12).unwrap();
    let c = c.difference(&GroupSubset::from_indices(&g, [5, 11]).unwrap()).unwrap();
    for f_mask in 0u64..4 {
        let f = GroupSubset::from_indices(&g, [5, 11].into_iter().enumerate().filter(|(i, _)| f_mask >> i & 1 == 1).map(|(_, x)| x)).unwrap();
        let points = c.to_vec();
        for e_mask in 0u64..1 << points.len() {
            let e = GroupSubset::from_indices(&g, (0..points.len()).filter(|i| e_mask >> i & 1 == 1).map(|i| points[i])).unwrap();
            let Ok(inst) = TheoremInstance::new(&h, &k, &c, &e, &f) else { continue };
            if check_thm_single_coset(&inst).verdict == Verdict::NonMinimal {
                continue;
            }
            for extra in c.difference(&e).unwrap().iter() {
                let mut bigger = e.clone();
                bigger.insert(extra);
                let inst = TheoremInstance::new(&h, &k, &c, &bigger, &f).unwrap();
                let cert = check_thm_single_coset(&inst);
                assert_eq!(cert.verdict, Verdict::Inconclusive, "E={e} + {extra} flipped the verdict");
            }
        }
    }
}
