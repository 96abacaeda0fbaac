use std::collections::{BTreeMap, BTreeSet};

use mincomp::certificate::{Tag, TheoremId};
use mincomp::zset::{z_check_all, ZSetSpec};
use mincomp::{
    finite_quotient, oracle_minimality_status, parse_structured, z_assumption, z_check, z_check_cofinite,
    OracleConfig, OracleSide, OracleStatus, StructuredZSet,
};

fn raw(h: u64, k: u64, core: &[i64], sporadic: &[(i64, Tag)]) -> StructuredZSet {
    StructuredZSet::normalize(&ZSetSpec {
        h,
        k,
        core: core.to_vec(),
        sporadic: sporadic.iter().copied().collect(),
        ..Default::default()
    })
    .unwrap()
}

fn normalized(json: &str) -> StructuredZSet {
    parse_structured(json).unwrap()
}

#[test]
fn odd_block_mod_32_with_primes_near_multiples() {
    // Odd classes 5..29 mod 32 plus primes congruent to +-1, moved by -1.
    let s = normalized(
        r#"{"h":2,"k":32,"core":[4,6,8,10,12,14,16,18,20,22,24,26,28],
            "sporadic":{"0":"sparse","30":"sparse"},"shift":-1}"#,
    );
    assert_eq!(s.core().len(), 13);
    assert_eq!(s.non_core(), vec![0, 2, 30]);
    let a = z_assumption(&s);
    assert!(a.holds && a.c_cosets == 13 && 2 * a.index * a.remainder_cosets == 12);
    let c = z_check(&s, TheoremId::ThmFAvoids).unwrap();
    assert!(c.is_non_minimal());
    assert!(c.hypothesis("f_avoids_some_coset").unwrap().detail.contains("class 2 mod 32"));
}

#[test]
fn block_mod_48_with_three_prime_classes() {
    let core: Vec<i64> = std::iter::once(3).chain((9..=47).step_by(2)).collect();
    let s = raw(2, 48, &core, &[(1, Tag::Sparse), (5, Tag::Sparse), (7, Tag::Sparse)]);
    assert_eq!(s.core().len(), 21);
    assert!(z_assumption(&s).holds);
    let c = z_check(&s, TheoremId::ThmQ).unwrap();
    assert!(c.is_non_minimal());
    assert!(c.hypothesis("separating_subgroup_exists").unwrap().automatic.is_some());
    // Every class outside the core is occupied, so avoiding one is impossible.
    assert!(!z_check(&s, TheoremId::ThmFAvoids).unwrap().is_non_minimal());
}

#[test]
fn five_odd_classes_mod_12_with_one_prime_class() {
    let s = raw(2, 12, &[3, 5, 7, 9, 11], &[(1, Tag::Sparse)]);
    assert_eq!(s.core().len(), 5);
    let c = z_check(&s, TheoremId::ThmSingleCoset).unwrap();
    assert!(c.is_non_minimal());
    assert_eq!(z_assumption(&s).c_cosets, 5);
}

#[test]
fn seven_classes_mod_9_with_primes_near_five() {
    let s = raw(1, 9, &[0, 1, 2, 3, 6, 7, 8], &[(4, Tag::Sparse), (5, Tag::Sparse)]);
    let c = z_check(&s, TheoremId::ThmCMinusC).unwrap();
    assert!(c.is_non_minimal(), "{}", c.render_text());
}

#[test]
fn even_classes_mod_12_and_their_quotient() {
    let s = normalized(r#"{"h":2,"k":12,"core":[2,4,6,8,10],"shift":0}"#);
    assert!(z_check(&s, TheoremId::PropCoset).unwrap().is_non_minimal());
    let q = finite_quotient(&s, 12, false, false).unwrap();
    assert!(q.exact);
    assert_eq!(q.set.to_vec(), vec![2, 4, 6, 8, 10]);
    let r = oracle_minimality_status(&q.set, OracleSide::Both, &OracleConfig::default()).unwrap();
    assert_eq!(r.status, OracleStatus::NotMinimal);
}

#[test]
fn cofinite_subsets_of_kz() {
    for k in 1..6 {
        for removed in [vec![0], vec![-k, 3 * k], vec![0, k, 2 * k, 10 * k]] {
            let set: BTreeSet<i64> = removed.into_iter().collect();
            assert!(z_check_cofinite(k as u64, &set).unwrap().is_non_minimal());
        }
    }
}

#[test]
fn verdicts_survive_translation() {
    let base: Vec<i64> = (2..15).map(|i| 2 * i + 1).collect();
    let reference: Vec<_> = z_check_all(&raw(2, 32, &base, &[(1, Tag::Sparse), (31, Tag::Sparse)]))
        .into_iter()
        .map(|c| (c.theorem, c.verdict))
        .collect();
    for t in -64i64..64 {
        let core: Vec<i64> = base.iter().map(|x| x + t).collect();
        let s = raw(2, 32, &core, &[(1 + t, Tag::Sparse), (31 + t, Tag::Sparse)]);
        let got: Vec<_> = z_check_all(&s).into_iter().map(|c| (c.theorem, c.verdict)).collect();
        assert_eq!(got, reference, "shift {t}");
    }
}

#[test]
fn robust_members_stay_certified_under_finite_changes() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let bases = [
        mincomp::robust_family(7, 2, &[1, 2, 3, 4, 5].into(), &[(6, Tag::Sparse), (7, Tag::Sparse)].into()).unwrap(),
        mincomp::robust_family(13, 4, &(1..=9).collect(), &(10..=13).map(|r| (r, Tag::Sparse)).collect()).unwrap(),
    ];
    for base in &bases {
        assert!(z_check(base, TheoremId::ThmCMinusC).unwrap().is_non_minimal());
        let k = base.k() as i64;
        for _ in 0..100 {
            let core: Vec<u64> = base.core().iter().copied().collect();
            let exceptions: BTreeSet<i64> = (0..rng.gen_range(0..=3))
                .map(|_| core[rng.gen_range(0..core.len())] as i64 + k * rng.gen_range(-50..50))
                .collect();
            let classes: Vec<u64> = base.sporadic().keys().copied().collect();
            let mut samples: BTreeMap<u64, BTreeSet<i64>> = BTreeMap::new();
            for _ in 0..rng.gen_range(0..=3) {
                let r = classes[rng.gen_range(0..classes.len())];
                samples.entry(r).or_default().insert(r as i64 + k * rng.gen_range(-50..50));
            }
            let perturbed = StructuredZSet::new(
                base.h(),
                base.k(),
                base.core().clone(),
                exceptions,
                base.sporadic().clone(),
                samples,
                0,
            )
            .unwrap();
            assert!(z_check(&perturbed, TheoremId::ThmCMinusC).unwrap().is_non_minimal());
        }
    }
}

#[test]
fn integer_certificates_round_trip_through_json() {
    let s = raw(1, 9, &[0, 1, 2, 3, 6, 7, 8], &[(4, Tag::Sparse), (5, Tag::Thick)]);
    for c in z_check_all(&s) {
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<mincomp::Certificate>(&json).unwrap(), c);
    }
}
