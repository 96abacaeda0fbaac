//! Automatic decomposition of an arbitrary subset into checker instances.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::certificate::{run_all_checkers, Certificate, Decomposition, Subject, TheoremId, TheoremInstance, Translation, Verdict};
use crate::error::{arg, Result};
use crate::group::{all_subgroups_bounded, FiniteGroup, Subgroup, DEFAULT_ENUMERATION_BOUND};
use crate::oracle::{oracle_minimality_status, OracleConfig, OracleReport, OracleSide, OracleStatus};
use crate::subset::{coset_profile, translate, GroupSubset, Side};

#[derive(Clone, Debug)]
pub struct VerdictOptions {
    /// Confirm non-minimal verdicts by exhaustive search when the group is
    /// small enough for this configuration.
    pub oracle: Option<OracleConfig>,
    pub enumeration_bound: usize,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        Self {
            oracle: None,
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictReport {
    pub group: String,
    pub subject: Vec<usize>,
    /// At most one per theorem, in theorem order.
    pub certificates: Vec<Certificate>,
    pub oracle: Option<OracleReport>,
}

impl VerdictReport {
    pub fn is_non_minimal(&self) -> bool {
        self.certificates.iter().any(|c| c.is_non_minimal())
    }

    pub fn certificate(&self, theorem: TheoremId) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.theorem == theorem)
    }
}

/// Tries every subgroup `H`, every left translate `g·A ⊆ H`, every normal
/// `K ⊴ H` and every occupancy threshold: `C` is the union of the `K`-cosets
/// meeting `g·A` in at least that many points, `E = C ∖ g·A` and
/// `F = g·A ∖ C`. Keeps the first non-minimal certificate per theorem, or the
/// first inconclusive one when none succeeds.
pub fn verdict(a: &GroupSubset, opts: &VerdictOptions) -> Result<VerdictReport> {
    let g = a.group().clone();
    if a.is_empty() {
        return arg("the subject must be nonempty");
    }
    let subgroups = all_subgroups_bounded(&g, opts.enumeration_bound)?;
    let mut best: BTreeMap<TheoremId, Certificate> = BTreeMap::new();

    for (translation, moved) in translates(&g, a) {
        for h in subgroups.iter().filter(|h| moved.bits().is_subset(h.members().bits())) {
            if moved.len() == h.order() {
                continue;
            }
            for k in subgroups.iter().filter(|k| k.is_subgroup_of(h) && k.is_normal_in(h)) {
                for inst in instances(&moved, h, k) {
                    for mut cert in run_all_checkers(&inst) {
                        let slot = best.get(&cert.theorem);
                        if slot.is_some_and(|c| c.is_non_minimal() || !cert.is_non_minimal()) {
                            continue;
                        }
                        cert.subject = Subject::Finite { elements: a.to_vec() };
                        if let Decomposition::Finite { translation: t, .. } = &mut cert.decomposition {
                            *t = translation;
                        }
                        best.insert(cert.theorem, cert);
                    }
                }
            }
        }
    }

    let oracle = match &opts.oracle {
        Some(cfg) if g.order() <= cfg.bound => Some(oracle_minimality_status(a, OracleSide::Both, cfg)?),
        _ => None,
    };
    let mut certificates: Vec<Certificate> = best.into_values().collect();
    if let Some(report) = &oracle {
        let not_minimal = matches!(report.status, OracleStatus::NotMinimal);
        for c in certificates.iter_mut().filter(|c| c.verdict == Verdict::NonMinimal) {
            c.oracle_confirmed = Some(not_minimal);
        }
    }
    Ok(VerdictReport {
        group: g.name().to_string(),
        subject: a.to_vec(),
        certificates,
        oracle,
    })
}

/// `A` itself, then `x⁻¹·A` for each `x ∈ A`, without repeats.
fn translates(g: &Arc<FiniteGroup>, a: &GroupSubset) -> Vec<(Option<Translation>, GroupSubset)> {
    let mut out: Vec<(Option<Translation>, GroupSubset)> = vec![(None, a.clone())];
    for x in a.iter() {
        let xi = g.inv(x);
        let moved = translate(Side::Left, xi, a).expect("element of the group");
        if out.iter().all(|(_, s)| s != &moved) {
            out.push((
                Some(Translation {
                    side: Side::Left,
                    element: xi,
                }),
                moved,
            ));
        }
    }
    out
}

fn instances(a: &GroupSubset, h: &Subgroup, k: &Subgroup) -> Vec<TheoremInstance> {
    let g = a.group();
    let reps = coset_profile(h.members(), k).expect("H is a union of K-cosets").representatives;
    let cosets: Vec<GroupSubset> = reps
        .iter()
        .map(|&x| GroupSubset::from_indices(g, k.members().iter().map(|y| g.mul(y, x))).expect("in range"))
        .collect();
    let counts: Vec<usize> = cosets.iter().map(|r| r.bits().intersection_count(a.bits())).collect();
    let mut thresholds: Vec<usize> = counts.iter().copied().filter(|&t| t > 0).collect();
    thresholds.sort_unstable();
    thresholds.dedup();

    let mut out = Vec::new();
    for t in thresholds {
        let mut c = GroupSubset::empty(g);
        for (r, _) in cosets.iter().zip(&counts).filter(|(_, &n)| n >= t) {
            c = c.union(r).expect("same group");
        }
        if c.len() == h.order() {
            continue;
        }
        let e = c.difference(a).expect("same group");
        let f = a.difference(&c).expect("same group");
        if let Ok(inst) = TheoremInstance::new(h, k, &c, &e, &f) {
            out.push(inst);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(g: &Arc<FiniteGroup>, xs: &[usize], oracle: bool) -> VerdictReport {
        let a = GroupSubset::from_indices(g, xs.iter().copied()).unwrap();
        let opts = VerdictOptions {
            oracle: oracle.then(OracleConfig::default),
            ..Default::default()
        };
        verdict(&a, &opts).unwrap()
    }

    #[test]
    fn even_residues_mod_twelve() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let r = report(&g, &[2, 4, 6, 8, 10], true);
        let c = r.certificate(TheoremId::PropFini).unwrap();
        assert_eq!(c.verdict, Verdict::NonMinimal);
        assert_eq!(c.oracle_confirmed, Some(true));
        let Decomposition::Finite { h, .. } = &c.decomposition else { panic!() };
        assert_eq!(h, &vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn antipodal_pair_is_inconclusive() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let r = report(&g, &[0, 6], true);
        assert!(!r.is_non_minimal());
        assert!(!r.certificates.is_empty());
        assert!(matches!(r.oracle.unwrap().status, OracleStatus::Minimal { .. }));
    }

    #[test]
    fn dihedral_all_but_identity() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let r = report(&g, &[1, 2, 3, 4, 5], true);
        let c = r.certificate(TheoremId::PropFini).unwrap();
        assert!(c.is_non_minimal());
        assert_eq!(c.oracle_confirmed, Some(true));
    }

    #[test]
    fn translation_is_recorded() {
        // {1,3,5,7,9} only fits in a proper subgroup after moving by -1.
        let g = FiniteGroup::cyclic(12).unwrap();
        let r = report(&g, &[1, 3, 5, 7, 9], false);
        let c = r.certificate(TheoremId::PropFini).unwrap();
        assert!(c.is_non_minimal());
        let Decomposition::Finite { translation, .. } = &c.decomposition else { panic!() };
        assert!(translation.is_some());
        assert_eq!(c.subject, Subject::Finite { elements: vec![1, 3, 5, 7, 9] });
    }

    #[test]
    fn deterministic_output() {
        let g = FiniteGroup::cyclic(10).unwrap();
        let a = serde_json::to_string(&report(&g, &[0, 1, 2, 3, 4, 5, 6], false)).unwrap();
        let b = serde_json::to_string(&report(&g, &[0, 1, 2, 3, 4, 5, 6], false)).unwrap();
        assert_eq!(a, b);
    }
}
