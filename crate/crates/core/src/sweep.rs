//! Exhaustive and sampled suites that compare the checkers with the oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::certificate::{check_assumption, check_prop_fini, run_all_checkers, Tag, TheoremId, TheoremInstance};
use crate::complement::cardinality_obstruction;
use crate::error::Result;
use crate::group::{all_subgroups, BuildOptions, FiniteGroup, Subgroup};
use crate::oracle::{oracle_minimality_status, thread_pool, OracleConfig, OracleSide, OracleStatus};
use crate::subset::{coset_profile, coset_union_equivalences, left_stabilizer, symmetric_product_complement, GroupSubset};
use crate::zset::{finite_quotient, remark_family, robust_family, z_check};

/// Failures beyond this many are counted but not listed.
const LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummary {
    pub name: String,
    /// Cases examined.
    pub instances: u64,
    /// Cases on which the property had content to check (for example,
    /// non-minimal certificates handed to the oracle).
    pub checked: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    /// Checked cases broken down by label, such as the theorem that fired.
    pub tally: BTreeMap<String, u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepSummary {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < LISTED_FAILURES {
            self.failures.push(msg);
        }
    }

    fn absorb(&mut self, other: SweepSummary) {
        self.instances += other.instances;
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        for (k, v) in other.tally {
            *self.tally.entry(k).or_default() += v;
        }
        for f in other.failures {
            if self.failures.len() < LISTED_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

/// Oracle answers per subject, shared by the jobs of one group.
struct OracleMemo {
    config: OracleConfig,
    seen: Mutex<HashMap<BitSet, bool>>,
}

impl OracleMemo {
    fn new(config: &OracleConfig) -> Self {
        Self {
            config: OracleConfig {
                workers: 1,
                ..*config
            },
            seen: Mutex::new(HashMap::new()),
        }
    }

    fn not_minimal(&self, s: &GroupSubset) -> Result<bool> {
        if let Some(&v) = self.seen.lock().expect("memo lock").get(s.bits()) {
            return Ok(v);
        }
        let report = oracle_minimality_status(s, OracleSide::Both, &self.config)?;
        let v = matches!(report.status, OracleStatus::NotMinimal);
        self.seen.lock().expect("memo lock").insert(s.bits().clone(), v);
        Ok(v)
    }
}

fn run_jobs<T: Send + Sync, F>(workers: usize, jobs: &[T], f: F) -> Vec<SweepSummary>
where
    F: Fn(&T) -> SweepSummary + Send + Sync,
{
    if workers <= 1 {
        jobs.iter().map(f).collect()
    } else {
        thread_pool(workers).install(|| jobs.par_iter().map(f).collect())
    }
}

/// Every subset of cyclic(n) lying strictly inside a subgroup `H` with
/// `|C| > 2|G||H|/(|H| + 2|G|)` is reported not minimal by the oracle.
pub fn prop_fini_sweep(ns: &[usize], config: &OracleConfig) -> Result<SweepSummary> {
    let start = Instant::now();
    let mut total = SweepSummary::new("cardinality bound, cyclic groups");
    for &n in ns {
        let g = FiniteGroup::cyclic(n)?;
        let memo = OracleMemo::new(config);
        let subgroups = all_subgroups(&g)?;
        let parts = run_jobs(config.workers, &subgroups, |h| {
            let mut s = SweepSummary::new("");
            let members = h.members().to_vec();
            for mask in 1u64..(1 << members.len()) - 1 {
                let c = GroupSubset::from_indices(&g, (0..members.len()).filter(|i| mask >> i & 1 == 1).map(|i| members[i]))
                    .expect("in range");
                s.instances += 1;
                let r = cardinality_obstruction(&g, h, &c).expect("valid data");
                if !r.holds {
                    continue;
                }
                s.checked += 1;
                match memo.not_minimal(&c) {
                    Ok(true) => {}
                    Ok(false) => s.fail(format!("cyclic({n}), H of order {}: {c} is minimal", h.order())),
                    Err(e) => s.fail(format!("cyclic({n}): {e}")),
                }
            }
            s
        });
        for p in parts {
            total.absorb(p);
        }
    }
    total.elapsed = start.elapsed();
    Ok(total)
}

/// The groups of the soundness sweep.
pub fn soundness_groups() -> Vec<String> {
    let mut v: Vec<String> = (6..=12).map(|n| format!("cyclic:{n}")).collect();
    v.extend((3..=6).map(|n| format!("dihedral:{n}")));
    v.extend(
        [
            "product:cyclic:2,cyclic:2",
            "product:cyclic:2,cyclic:3",
            "product:cyclic:2,cyclic:4",
            "product:(product:cyclic:2,cyclic:2),cyclic:2",
            "product:cyclic:2,cyclic:5",
            "product:cyclic:2,cyclic:6",
            "product:cyclic:3,cyclic:4",
            "product:cyclic:2,dihedral:3",
        ]
        .map(String::from),
    );
    v
}

fn coset_list(h: &Subgroup, k: &Subgroup) -> Vec<GroupSubset> {
    let g = h.group();
    coset_profile(h.members(), k)
        .expect("H is a union of K-cosets")
        .representatives
        .into_iter()
        .map(|x| GroupSubset::from_indices(g, k.members().iter().map(|y| g.mul(y, x))).expect("in range"))
        .collect()
}

/// Every valid `(H, K, C, E, F)` with `C` nonempty, `|E| <= 1` and `F` a
/// subset of one coset of `H ∖ C`. Every non-minimal certificate must be
/// confirmed by the oracle, and none may appear when the largeness
/// assumption fails.
///
/// When the assumption fails, the decomposition-based checkers all carry it
/// as a failing hypothesis, so only the subject-level size criterion is run.
pub fn soundness_sweep(groups: &[String], config: &OracleConfig) -> Result<SweepSummary> {
    let start = Instant::now();
    let mut total = SweepSummary::new("checkers against oracle");
    for spec in groups {
        let g = FiniteGroup::parse_and_construct(spec)?;
        let memo = OracleMemo::new(config);
        let subgroups = all_subgroups(&g)?;
        let mut jobs = Vec::new();
        for h in &subgroups {
            for k in subgroups.iter().filter(|k| k.is_subgroup_of(h) && k.is_normal_in(h)) {
                let cosets = coset_list(h, k);
                for mask in 1u64..(1 << cosets.len()) - 1 {
                    jobs.push((h, k, cosets.clone(), mask));
                }
            }
        }
        let parts = run_jobs(config.workers, &jobs, |(h, k, cosets, mask)| {
            sweep_one_c(&g, h, k, cosets, *mask, &memo)
        });
        for p in parts {
            total.absorb(p);
        }
    }
    total.elapsed = start.elapsed();
    Ok(total)
}

fn sweep_one_c(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    k: &Subgroup,
    cosets: &[GroupSubset],
    mask: u64,
    memo: &OracleMemo,
) -> SweepSummary {
    let mut s = SweepSummary::new("");
    let mut c = GroupSubset::empty(g);
    for (i, r) in cosets.iter().enumerate() {
        if mask >> i & 1 == 1 {
            c = c.union(r).expect("same group");
        }
    }
    let outside: Vec<&GroupSubset> = cosets.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, r)| r).collect();

    let mut es = vec![GroupSubset::empty(g)];
    es.extend(c.iter().map(|x| GroupSubset::singleton(g, x).expect("in range")));
    let mut fs: BTreeSet<BitSet> = BTreeSet::new();
    for r in &outside {
        let pts = r.to_vec();
        for m in 0u64..(1 << pts.len()) {
            fs.insert(BitSet::from_indices(g.order(), (0..pts.len()).filter(|i| m >> i & 1 == 1).map(|i| pts[i])));
        }
    }

    for e in &es {
        for fb in &fs {
            let f = GroupSubset::from_bits(g, fb.clone()).expect("right size");
            let Ok(inst) = TheoremInstance::new(h, k, &c, e, &f) else {
                s.fail(format!("{}: rejected a valid instance C={c} E={e} F={f}", g.name()));
                continue;
            };
            s.instances += 1;
            let certs = if check_assumption(&inst).holds {
                run_all_checkers(&inst)
            } else {
                let subject = inst.subject();
                if subject.is_empty() || subject.len() >= h.order() {
                    Vec::new()
                } else {
                    check_prop_fini(g, h, &subject).into_iter().collect()
                }
            };
            for cert in certs.iter().filter(|c| c.is_non_minimal()) {
                if cert.theorem != TheoremId::PropFini && !check_assumption(&inst).holds {
                    s.fail(format!("{}: {} without the largeness assumption", g.name(), cert.theorem));
                }
                s.checked += 1;
                *s.tally.entry(cert.theorem.to_string()).or_default() += 1;
                let subject = inst.subject();
                match memo.not_minimal(&subject) {
                    Ok(true) => {}
                    Ok(false) => s.fail(format!(
                        "{}: {} claims {subject} is not minimal (H order {}, K order {}, C={c}, E={e}, F={f}) but the oracle finds it minimal",
                        g.name(),
                        cert.theorem,
                        h.order(),
                        k.order()
                    )),
                    Err(err) => s.fail(format!("{}: {err}", g.name())),
                }
            }
        }
    }
    s
}

/// The quaternion group `{±1, ±i, ±j, ±k}`, indexed `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion_group() -> Result<Arc<FiniteGroup>> {
    // Units 0..4 stand for 1, i, j, k; unit products with signs.
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let rows = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (u, neg) = UNIT[a / 2][b / 2];
                    2 * u + usize::from(neg ^ (a % 2 == 1) ^ (b % 2 == 1))
                })
                .collect()
        })
        .collect();
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    FiniteGroup::from_rows(rows, "quaternion".into(), Some(labels), BuildOptions::default())
}

/// Every group up to isomorphism of order at most 8.
pub fn groups_up_to_eight() -> Result<Vec<Arc<FiniteGroup>>> {
    let mut v: Vec<Arc<FiniteGroup>> = (1..=8).map(FiniteGroup::cyclic).collect::<Result<_>>()?;
    for spec in [
        "product:cyclic:2,cyclic:2",
        "dihedral:3",
        "product:cyclic:2,cyclic:4",
        "product:(product:cyclic:2,cyclic:2),cyclic:2",
        "dihedral:4",
    ] {
        v.push(FiniteGroup::parse_and_construct(spec)?);
    }
    v.push(quaternion_group()?);
    Ok(v)
}

/// A spread of groups of order at most 16 for sampling.
pub fn groups_up_to_sixteen() -> Result<Vec<Arc<FiniteGroup>>> {
    let mut v = groups_up_to_eight()?;
    v.extend((9..=16).map(FiniteGroup::cyclic).collect::<Result<Vec<_>>>()?);
    for spec in [
        "product:cyclic:3,cyclic:3",
        "dihedral:5",
        "product:cyclic:2,cyclic:6",
        "dihedral:6",
        "product:cyclic:2,dihedral:3",
        "dihedral:7",
        "dihedral:8",
        "product:cyclic:4,cyclic:4",
        "product:cyclic:2,dihedral:4",
        "product:(product:cyclic:2,cyclic:2),cyclic:4",
        "product:(product:(product:cyclic:2,cyclic:2),cyclic:2),cyclic:2",
    ] {
        v.push(FiniteGroup::parse_and_construct(spec)?);
    }
    v.push(FiniteGroup::product(&FiniteGroup::cyclic(2)?, &quaternion_group()?)?);
    Ok(v)
}

fn check_identity_instance(x: &GroupSubset, l: &Subgroup, s: &mut SweepSummary) {
    let g = x.group();
    let y = x.complement();
    s.instances += 1;
    let spc = symmetric_product_complement(x, &y).expect("proper partition");
    let stab = left_stabilizer(&y).expect("nonempty");
    if &spc != stab.members() {
        s.fail(format!("{}: X={x}: complement of the difference set {spc} differs from the stabilizer", g.name()));
    }
    let r = coset_union_equivalences(x, &y, l).expect("valid instance");
    if !r.consistent {
        s.fail(format!("{}: X={x}, |L|={}: the five conditions disagree: {r:?}", g.name(), l.order()));
    }
    if r.criterion_orders || r.criterion_divisibility {
        s.checked += 1;
        if !r.misses_only_identity {
            s.fail(format!("{}: X={x}: an order criterion holds but the difference set is not G minus e", g.name()));
        }
    }
}

/// Exhaustive over groups of order at most 8 and every `(X, L)` with `X` a
/// proper nonempty union of right cosets of `L`.
pub fn stabilizer_identity_exhaustive() -> Result<SweepSummary> {
    let start = Instant::now();
    let mut s = SweepSummary::new("stabilizer identities, order <= 8");
    for g in groups_up_to_eight()? {
        for l in all_subgroups(&g)? {
            let cosets = coset_list(&Subgroup::whole(&g), &l);
            for mask in 1u64..(1 << cosets.len()) - 1 {
                let mut x = GroupSubset::empty(&g);
                for (i, r) in cosets.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        x = x.union(r)?;
                    }
                }
                check_identity_instance(&x, &l, &mut s);
            }
        }
    }
    s.elapsed = start.elapsed();
    Ok(s)
}

/// `samples` random `(G, L, X)` with `|G| <= 16`.
pub fn stabilizer_identity_random(samples: usize, seed: u64) -> Result<SweepSummary> {
    let start = Instant::now();
    let mut s = SweepSummary::new("stabilizer identities, random order <= 16");
    let groups: Vec<Arc<FiniteGroup>> = groups_up_to_sixteen()?.into_iter().filter(|g| g.order() >= 2).collect();
    let lattices: Vec<Vec<Subgroup>> = groups.iter().map(all_subgroups).collect::<Result<_>>()?;
    let mut rng = StdRng::seed_from_u64(seed);
    while s.instances < samples as u64 {
        let gi = rng.gen_range(0..groups.len());
        let g = &groups[gi];
        let Some(l) = lattices[gi].iter().filter(|l| l.order() < g.order()).collect::<Vec<_>>().choose(&mut rng).copied() else {
            continue;
        };
        let cosets = coset_list(&Subgroup::whole(g), l);
        let mask = rng.gen_range(1u64..(1 << cosets.len()) - 1);
        let mut x = GroupSubset::empty(g);
        for (i, r) in cosets.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x = x.union(r)?;
            }
        }
        check_identity_instance(&x, l, &mut s);
    }
    s.elapsed = start.elapsed();
    Ok(s)
}

/// Robust family members for prime `p`: the integer criterion must succeed
/// and the exact quotient in cyclic(p) must be non-minimal. Exhaustive over
/// residue sets when `samples` is `None`.
pub fn robust_family_sweep(p: u64, samples: Option<usize>, seed: u64, config: &OracleConfig) -> Result<SweepSummary> {
    let start = Instant::now();
    let mut s = SweepSummary::new(&format!("robust family, p = {p}"));
    let memo = OracleMemo::new(config);
    let a_values: Vec<u64> = (1..).take_while(|a| 3 * a < p).collect();
    let mut cases: Vec<(u64, BTreeSet<u64>)> = Vec::new();
    match samples {
        None => {
            for &a in &a_values {
                for mask in 0u64..(1 << p) {
                    if mask.count_ones() as u64 == p - a {
                        cases.push((a, (1..=p).filter(|r| mask >> (r - 1) & 1 == 1).collect()));
                    }
                }
            }
        }
        Some(n) => {
            let mut rng = StdRng::seed_from_u64(seed);
            let all: Vec<u64> = (1..=p).collect();
            for _ in 0..n {
                let a = *a_values.choose(&mut rng).expect("p >= 5 has a = 1");
                cases.push((a, all.choose_multiple(&mut rng, (p - a) as usize).copied().collect()));
            }
        }
    }
    for (a, residues) in cases {
        s.instances += 1;
        let tags: BTreeMap<u64, Tag> = (1..=p).filter(|r| !residues.contains(r)).map(|r| (r, Tag::Sparse)).collect();
        let z = match robust_family(p, a, &residues, &tags) {
            Ok(z) => z,
            Err(e) => {
                s.fail(format!("p={p}, a={a}, {residues:?}: {e}"));
                continue;
            }
        };
        if !z_check(&z, TheoremId::ThmCMinusC)?.is_non_minimal() {
            s.fail(format!("p={p}, a={a}, {residues:?}: integer criterion inconclusive"));
        }
        let q = finite_quotient(&z, p, false, false)?;
        if !q.set.is_full() {
            s.checked += 1;
            if !memo.not_minimal(&q.set)? {
                s.fail(format!("p={p}, a={a}: {} is minimal in cyclic({p})", q.set));
            }
        }
    }
    s.elapsed = start.elapsed();
    Ok(s)
}

/// Every pair `1 <= a < b <= n`: accepted iff `2(a - b) ≢ 0 (mod n)`, and
/// every accepted member is certified non-minimal.
pub fn remark_family_sweep(ns: &[u64]) -> Result<SweepSummary> {
    let start = Instant::now();
    let mut s = SweepSummary::new("two-class remark family");
    for &n in ns {
        for a in 1..=n {
            for b in a + 1..=n {
                s.instances += 1;
                let valid = (2 * (b - a)) % n != 0;
                let tags: BTreeMap<u64, Tag> = [(2 * a, Tag::Sparse)].into_iter().collect();
                match (valid, remark_family(n, &[a, b].into(), &tags)) {
                    (true, Ok(z)) => {
                        s.checked += 1;
                        if !z_check(&z, TheoremId::ThmCMinusC)?.is_non_minimal() {
                            s.fail(format!("n={n}, a={a}, b={b}: not certified"));
                        }
                    }
                    (true, Err(e)) => s.fail(format!("n={n}, a={a}, b={b}: rejected: {e}")),
                    (false, Ok(_)) => s.fail(format!("n={n}, a={a}, b={b}: accepted despite the congruence")),
                    (false, Err(_)) => {}
                }
            }
        }
    }
    s.elapsed = start.elapsed();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_is_a_nonabelian_group() {
        let q = quaternion_group().unwrap();
        assert!(!q.is_abelian());
        assert_eq!(q.element_orders(), &[1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(all_subgroups(&q).unwrap().len(), 6);
        assert!(all_subgroups(&q).unwrap().iter().all(|h| h.is_normal()));
    }

    #[test]
    fn small_sweeps_pass() {
        let cfg = OracleConfig::default();
        let s = prop_fini_sweep(&[6, 8], &cfg).unwrap();
        assert!(s.passed(), "{:?}", s.failures);
        assert!(s.checked > 0);
        let s = soundness_sweep(&["cyclic:6".to_string(), "dihedral:3".to_string()], &cfg).unwrap();
        assert!(s.passed(), "{:?}", s.failures);
        assert!(s.checked > 0);
        let s = remark_family_sweep(&[11, 12]).unwrap();
        assert!(s.passed(), "{:?}", s.failures);
    }
}
