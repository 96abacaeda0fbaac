//! Checkers for sufficient conditions of non-minimality in finite groups.
//!
//! Every checker takes a [`TheoremInstance`], the data `G ⊇ H ⊵ K` together
//! with `C` (a union of `K`-cosets strictly inside `H`), a set `E ⊆ C` of
//! removed points and a set `F ⊆ H ∖ C` of added points, and decides the
//! hypotheses of one criterion about the subject `(C ∖ E) ∪ F`. A verdict is
//! `NonMinimal` only when every hypothesis holds; otherwise `Inconclusive`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complement::cardinality_obstruction;
use crate::error::{arg, Error, Result};
use crate::group::{same_group, subgroup_profile, FiniteGroup, Subgroup};
use crate::subset::{coset_profile, inverse_set, left_stabilizer, product_set, GroupSubset, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    /// Large union of cosets minus a few points.
    PropCoset,
    /// Added points miss at least one coset outside `C`.
    ThmFAvoids,
    /// Added points form a proper subset of `H ∖ C`; finite form, no removals.
    ThmQFinite,
    /// As `ThmQFinite` in ℤ, where a separating subgroup always exists.
    ThmQ,
    /// Added points lie in a single coset.
    ThmSingleCoset,
    /// The stabilizer of `H ∖ C` is exactly `K`.
    ThmCMinusC,
    /// `|C| > 2[G:H]·|H ∖ C|` for finite `G`.
    PropFini,
    /// `H ∖ C` finite and `|C| > 2[G:H]·|H ∖ C|`; the form used for
    /// cofinite subsets of `hℤ`.
    PropCofinite,
    /// The same inequality read as the absence of a surjection
    /// `{0,1} × (H ∖ C) × G/H → C`; also covers cofinite sets in ℤ.
    CardinalityObstruction,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::PropCoset,
        TheoremId::ThmFAvoids,
        TheoremId::ThmQFinite,
        TheoremId::ThmQ,
        TheoremId::ThmSingleCoset,
        TheoremId::ThmCMinusC,
        TheoremId::PropFini,
        TheoremId::PropCofinite,
        TheoremId::CardinalityObstruction,
    ];
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let want = s.replace(['-', '_'], "").to_ascii_lowercase();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.to_string().to_ascii_lowercase() == want)
            .ok_or_else(|| {
                let names: Vec<String> = TheoremId::ALL.iter().map(|t| t.to_string()).collect();
                Error::Argument(format!("unknown theorem {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    NonMinimal,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub detail: String,
    /// Set when the hypothesis holds for structural reasons rather than by
    /// computation, with the reason.
    pub automatic: Option<String>,
}

impl Hypothesis {
    pub fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            holds,
            detail: detail.into(),
            automatic: None,
        }
    }

    pub fn automatic(name: &str, detail: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            holds: true,
            detail: detail.into(),
            automatic: Some(reason.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Subject {
    Finite { elements: Vec<usize> },
    Integers { description: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Translation {
    pub side: Side,
    pub element: usize,
}

/// The tag attached to one residue class of `H` outside the core.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    /// The class contains no point of `F`.
    Avoids,
    /// Infinite, but of density zero in the class.
    Sparse,
    /// Co-infinite in the class, density unknown.
    Thick,
    /// The entire class.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Decomposition {
    Finite {
        h: Vec<usize>,
        k: Vec<usize>,
        c: Vec<usize>,
        e: Vec<usize>,
        f: Vec<usize>,
        /// The subject was moved into `H` by this translation first.
        translation: Option<Translation>,
    },
    Integers {
        h: u64,
        k: u64,
        core: Vec<u64>,
        exceptions: Vec<i64>,
        #[serde(with = "class_keys")]
        sporadic: BTreeMap<u64, Tag>,
        shift: i64,
    },
}

/// Residue-keyed map with its keys written as strings.
mod class_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Tag;

    pub fn serialize<S: Serializer>(m: &BTreeMap<u64, Tag>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, t)| (k.to_string(), t)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, Tag>, D::Error> {
        BTreeMap::<String, Tag>::deserialize(d)?
            .into_iter()
            .map(|(k, t)| k.parse().map(|k| (k, t)).map_err(D::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub theorem: TheoremId,
    pub verdict: Verdict,
    pub group: String,
    pub subject: Subject,
    pub hypotheses: Vec<Hypothesis>,
    pub decomposition: Decomposition,
    /// Whether an exhaustive search agreed, when one was run.
    pub oracle_confirmed: Option<bool>,
    pub notes: Vec<String>,
}

impl Certificate {
    /// Builds a certificate whose verdict follows from its hypotheses.
    pub fn from_hypotheses(
        theorem: TheoremId,
        group: String,
        subject: Subject,
        hypotheses: Vec<Hypothesis>,
        decomposition: Decomposition,
        notes: Vec<String>,
    ) -> Self {
        let verdict = if hypotheses.iter().all(|h| h.holds) {
            Verdict::NonMinimal
        } else {
            Verdict::Inconclusive
        };
        Self {
            theorem,
            verdict,
            group,
            subject,
            hypotheses,
            decomposition,
            oracle_confirmed: None,
            notes,
        }
    }

    pub fn is_non_minimal(&self) -> bool {
        self.verdict == Verdict::NonMinimal
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    /// Human-readable multi-line rendering.
    pub fn render_text(&self) -> String {
        let mut out = format!("{} on {}: {}\n", self.theorem, self.group, self.verdict);
        match &self.subject {
            Subject::Finite { elements } => out += &format!("  subject: {}\n", brace(elements)),
            Subject::Integers { description } => out += &format!("  subject: {description}\n"),
        }
        match &self.decomposition {
            Decomposition::Finite {
                h,
                k,
                c,
                e,
                f,
                translation,
            } => {
                out += &format!(
                    "  H = {}  K = {}\n  C = {}  E = {}  F = {}\n",
                    brace(h),
                    brace(k),
                    brace(c),
                    brace(e),
                    brace(f)
                );
                if let Some(t) = translation {
                    out += &format!("  translated on the {} by {}\n", t.side, t.element);
                }
            }
            Decomposition::Integers {
                h,
                k,
                core,
                exceptions,
                sporadic,
                shift,
            } => {
                out += &format!("  H = {h}Z  K = {k}Z  core = {} mod {k}\n", brace(core));
                if !exceptions.is_empty() {
                    out += &format!("  exceptions = {}\n", brace(exceptions));
                }
                if !sporadic.is_empty() {
                    let tags: Vec<String> = sporadic.iter().map(|(r, t)| format!("{r}:{t:?}")).collect();
                    out += &format!("  sporadic = {}\n", tags.join(" "));
                }
                if *shift != 0 {
                    out += &format!("  shifted by {shift}\n");
                }
            }
        }
        for h in &self.hypotheses {
            let mark = if h.holds { "holds" } else { "FAILS" };
            out += &format!("  [{mark}] {}: {}", h.name, h.detail);
            if let Some(a) = &h.automatic {
                out += &format!(" (automatic: {a})");
            }
            out.push('\n');
        }
        if let Some(ok) = self.oracle_confirmed {
            out += &format!("  oracle: {}\n", if ok { "confirmed" } else { "DISAGREES" });
        }
        for n in &self.notes {
            out += &format!("  note: {n}\n");
        }
        out
    }
}

fn brace<T: fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// The standing data shared by all checkers.
#[derive(Clone, Debug)]
pub struct TheoremInstance {
    group: Arc<FiniteGroup>,
    h: Subgroup,
    k: Subgroup,
    c: GroupSubset,
    e: GroupSubset,
    f: GroupSubset,
    rest: GroupSubset,
    c_cosets: usize,
    rest_cosets: usize,
}

impl TheoremInstance {
    pub fn new(h: &Subgroup, k: &Subgroup, c: &GroupSubset, e: &GroupSubset, f: &GroupSubset) -> Result<Self> {
        let group = h.group().clone();
        for (what, s) in [("K", k.members()), ("C", c), ("E", e), ("F", f)] {
            if !same_group(&group, s.group()) {
                return arg(format!("{what} belongs to a different group than H"));
            }
        }
        if !k.is_subgroup_of(h) {
            return arg("K must be a subgroup of H");
        }
        if !k.is_normal_in(h) {
            return arg("K must be normal in H");
        }
        if !c.is_subset(h.members())? {
            return arg("C must be contained in H");
        }
        if c.len() == h.order() {
            return arg("C must be a proper subset of H");
        }
        let cp = coset_profile(c, k)?;
        if !cp.is_union {
            return arg("C must be a union of right cosets of K");
        }
        if !e.is_subset(c)? {
            return arg("E must be contained in C");
        }
        let rest = h.members().difference(c)?;
        if !f.is_subset(&rest)? {
            return arg("F must be contained in H minus C");
        }
        let rp = coset_profile(&rest, k)?;
        Ok(Self {
            group,
            h: h.clone(),
            k: k.clone(),
            c: c.clone(),
            e: e.clone(),
            f: f.clone(),
            rest,
            c_cosets: cp.count.unwrap_or(0),
            rest_cosets: rp.count.unwrap_or(0),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn h(&self) -> &Subgroup {
        &self.h
    }
    pub fn k(&self) -> &Subgroup {
        &self.k
    }
    pub fn c(&self) -> &GroupSubset {
        &self.c
    }
    pub fn e(&self) -> &GroupSubset {
        &self.e
    }
    pub fn f(&self) -> &GroupSubset {
        &self.f
    }
    /// `H ∖ C`.
    pub fn remainder(&self) -> &GroupSubset {
        &self.rest
    }

    /// `[G:H]`.
    pub fn index(&self) -> usize {
        self.h.index()
    }

    /// `(C ∖ E) ∪ F`.
    pub fn subject(&self) -> GroupSubset {
        let mut s = self.c.difference(&self.e).expect("same group");
        for x in self.f.iter() {
            s.insert(x);
        }
        s
    }

    fn with_k(&self, k: &Subgroup) -> Result<Self> {
        Self::new(&self.h, k, &self.c, &self.e, &self.f)
    }

    pub fn decomposition(&self) -> Decomposition {
        Decomposition::Finite {
            h: self.h.members().to_vec(),
            k: self.k.members().to_vec(),
            c: self.c.to_vec(),
            e: self.e.to_vec(),
            f: self.f.to_vec(),
            translation: None,
        }
    }

    fn certificate(&self, theorem: TheoremId, hypotheses: Vec<Hypothesis>, notes: Vec<String>) -> Certificate {
        Certificate::from_hypotheses(
            theorem,
            self.group.name().to_string(),
            Subject::Finite {
                elements: self.subject().to_vec(),
            },
            hypotheses,
            self.decomposition(),
            notes,
        )
    }

    /// `2([G:H] + 1)|E|`.
    fn exception_bound(&self) -> usize {
        2 * (self.index() + 1) * self.e.len()
    }

    /// Least elements of the right cosets `Kx` inside `H`.
    fn k_cosets_in_h(&self) -> Vec<usize> {
        coset_profile(self.h.members(), &self.k)
            .expect("H is a union of K-cosets")
            .representatives
    }

    fn k_coset(&self, x: usize) -> GroupSubset {
        let g = &self.group;
        GroupSubset::from_indices(g, self.k.members().iter().map(|k| g.mul(k, x))).expect("in range")
    }
}

/// Coset counts behind the largeness assumption `[C:K] > 2[G:H]·[(H∖C):K]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AssumptionResult {
    pub holds: bool,
    pub c_cosets: usize,
    pub remainder_cosets: usize,
    pub index: usize,
}

impl AssumptionResult {
    pub fn hypothesis(&self) -> Hypothesis {
        Hypothesis::new(
            "coset_count_dominates",
            self.holds,
            format!(
                "[C:K] = {} {} 2·[G:H]·[(H∖C):K] = 2·{}·{} = {}",
                self.c_cosets,
                if self.holds { ">" } else { "<=" },
                self.index,
                self.remainder_cosets,
                2 * self.index * self.remainder_cosets
            ),
        )
    }
}

pub fn check_assumption(inst: &TheoremInstance) -> AssumptionResult {
    let index = subgroup_profile(&inst.group, &inst.h).expect("H belongs to G").index;
    AssumptionResult {
        holds: inst.c_cosets > 2 * index * inst.rest_cosets,
        c_cosets: inst.c_cosets,
        remainder_cosets: inst.rest_cosets,
        index,
    }
}

fn exception_hypothesis(inst: &TheoremInstance) -> Hypothesis {
    let bound = inst.exception_bound();
    let holds = inst.k.order() > bound;
    Hypothesis::new(
        "k_exceeds_exception_bound",
        holds,
        format!(
            "|K| = {} {} 2·([G:H]+1)·|E| = 2·{}·{} = {bound}",
            inst.k.order(),
            if holds { ">" } else { "<=" },
            inst.index() + 1,
            inst.e.len()
        ),
    )
}

/// `C ∖ E` with nothing added. Requires `F = ∅`.
pub fn check_prop_coset(inst: &TheoremInstance) -> Result<Certificate> {
    if !inst.f.is_empty() {
        return arg("this criterion applies to C minus E only; F must be empty");
    }
    let hyps = vec![check_assumption(inst).hypothesis(), exception_hypothesis(inst)];
    Ok(inst.certificate(TheoremId::PropCoset, hyps, Vec::new()))
}

fn avoided_coset(inst: &TheoremInstance) -> Option<usize> {
    let reps = coset_profile(&inst.rest, &inst.k).expect("remainder is a union of K-cosets").representatives;
    reps.into_iter()
        .find(|&x| inst.k_coset(x).bits().is_disjoint(inst.f.bits()))
}

pub fn check_thm_f_avoids(inst: &TheoremInstance) -> Certificate {
    let avoided = avoided_coset(inst);
    let avoid = Hypothesis::new(
        "f_avoids_some_coset",
        avoided.is_some(),
        match avoided {
            Some(x) => format!("F misses the coset K·{x} of H∖C"),
            None => "F meets every K-coset of H∖C".to_string(),
        },
    );
    let hyps = vec![check_assumption(inst).hypothesis(), avoid, exception_hypothesis(inst)];
    inst.certificate(TheoremId::ThmFAvoids, hyps, Vec::new())
}

/// The finite form needs `E = ∅`: the trivial subgroup has finite index in
/// `K`, and it must still be larger than `2([G:H]+1)|E|`.
pub fn check_thm_q_finite(inst: &TheoremInstance) -> Result<Certificate> {
    if !inst.e.is_empty() {
        return arg(
            "in a finite group the trivial subgroup has finite index in K, so the size condition on every \
             finite-index subgroup forces E to be empty",
        );
    }
    let proper = inst.f.len() < inst.rest.len();
    let hyps = vec![
        check_assumption(inst).hypothesis(),
        Hypothesis::new(
            "f_proper_in_complement",
            proper,
            format!("|F| = {} {} |H∖C| = {}", inst.f.len(), if proper { "<" } else { "=" }, inst.rest.len()),
        ),
        Hypothesis::automatic(
            "separating_subgroup_exists",
            format!("L = {{{}}}", inst.group.identity()),
            "the trivial subgroup is normal in H, has finite index in K and separates any two distinct elements",
        ),
        Hypothesis::automatic(
            "exceptions_empty",
            "E = {}",
            "every finite-index subgroup of K has at least one element",
        ),
    ];
    Ok(inst.certificate(TheoremId::ThmQFinite, hyps, Vec::new()))
}

fn single_coset_hypothesis(inst: &TheoremInstance) -> Hypothesis {
    match inst.f.first() {
        None => Hypothesis::new("f_in_single_coset", true, "F is empty"),
        Some(f0) => {
            let holds = inst.f.bits().is_subset(inst.k_coset(f0).bits());
            Hypothesis::new(
                "f_in_single_coset",
                holds,
                if holds {
                    format!("F lies in K·{f0}")
                } else {
                    "F meets more than one K-coset".to_string()
                },
            )
        }
    }
}

/// `F ∪ X` contains a `K`-coset for some `|X| <= m` iff some coset `R ⊆ H`
/// has `|R ∖ F| <= m`.
fn deficiency_hypothesis(inst: &TheoremInstance) -> Hypothesis {
    let bound = inst.exception_bound();
    let (deficiency, at) = inst
        .k_cosets_in_h()
        .into_iter()
        .map(|x| (inst.k_coset(x).difference(&inst.f).expect("same group").len(), x))
        .min()
        .expect("H has at least one coset");
    let holds = deficiency > bound;
    Hypothesis::new(
        "f_plus_small_set_contains_no_coset",
        holds,
        format!(
            "min over K-cosets R of |R∖F| = {deficiency} (at K·{at}) {} 2·([G:H]+1)·|E| = {bound}",
            if holds { ">" } else { "<=" }
        ),
    )
}

fn product_hypothesis(inst: &TheoremInstance) -> Hypothesis {
    let p = product_set(&inst.e, &inverse_set(&inst.f)).expect("same group");
    let k = Subgroup::trusted(inst.k.members().clone());
    let reps = subgroup_profile(&inst.group, &k).expect("same group").right_reps;
    let hit = reps
        .into_iter()
        .find(|&x| !p.is_empty() && inst.k_coset(x).bits().is_subset(p.bits()));
    Hypothesis::new(
        "exceptions_times_f_inverse_contains_no_coset",
        hit.is_none(),
        match hit {
            None => format!("|E·F⁻¹| = {} and it contains no K-coset", p.len()),
            Some(x) => format!("E·F⁻¹ contains K·{x}"),
        },
    )
}

pub fn check_thm_single_coset(inst: &TheoremInstance) -> Certificate {
    let hyps = vec![
        check_assumption(inst).hypothesis(),
        single_coset_hypothesis(inst),
        deficiency_hypothesis(inst),
        product_hypothesis(inst),
    ];
    inst.certificate(TheoremId::ThmSingleCoset, hyps, Vec::new())
}

/// The two independent evaluations of
/// `C⁻¹(H∖C) ∪ (H∖C)⁻¹C = H ∖ K`: direct computation, and comparison of the
/// stabilizer of `(H∖C)⁻¹` with `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DifferenceSetEvaluation {
    pub direct: bool,
    pub via_stabilizer: bool,
}

pub fn evaluate_difference_condition(inst: &TheoremInstance) -> DifferenceSetEvaluation {
    let ci = inverse_set(&inst.c);
    let ri = inverse_set(&inst.rest);
    let d = product_set(&ci, &inst.rest)
        .and_then(|a| a.union(&product_set(&ri, &inst.c)?))
        .expect("same group");
    let target = inst.h.members().difference(inst.k.members()).expect("same group");
    let stab = left_stabilizer(&ri).expect("H minus C is nonempty");
    DifferenceSetEvaluation {
        direct: d == target,
        via_stabilizer: stab.members() == inst.k.members(),
    }
}

fn cminusc_main(inst: &TheoremInstance, notes: Vec<String>) -> Certificate {
    let ev = evaluate_difference_condition(inst);
    let mut notes = notes;
    if ev.direct != ev.via_stabilizer {
        notes.push("the direct and stabilizer evaluations of the difference-set condition disagree".into());
    }
    let hyps = vec![
        check_assumption(inst).hypothesis(),
        Hypothesis::new(
            "difference_set_equals_h_minus_k",
            ev.direct && ev.via_stabilizer,
            format!(
                "C⁻¹(H∖C) ∪ (H∖C)⁻¹C {} H∖K (stabilizer of (H∖C)⁻¹ {} K)",
                if ev.direct { "=" } else { "≠" },
                if ev.via_stabilizer { "=" } else { "≠" }
            ),
        ),
        deficiency_hypothesis(inst),
        product_hypothesis(inst),
    ];
    inst.certificate(TheoremId::ThmCMinusC, hyps, notes)
}

/// Runs the criterion with `K`; if that is inconclusive and the stabilizer
/// `K'` of `H ∖ C` strictly contains `K` and is normal in `H`, runs it again
/// with `K'` in place of `K`.
pub fn check_thm_cminusc(inst: &TheoremInstance) -> Certificate {
    let first = cminusc_main(inst, Vec::new());
    if first.is_non_minimal() {
        return first;
    }
    let k2 = left_stabilizer(&inst.rest).expect("H minus C is nonempty");
    if k2.order() == inst.k.order() {
        return first;
    }
    if !k2.is_normal_in(&inst.h) {
        let mut c = first;
        c.notes.push(format!(
            "the stabilizer of H∖C (order {}) is not normal in H; no coarser K applies",
            k2.order()
        ));
        return c;
    }
    match inst.with_k(&k2) {
        Ok(coarse) => cminusc_main(
            &coarse,
            vec![format!(
                "K replaced by the stabilizer of H∖C, of order {} and normal in H",
                k2.order()
            )],
        ),
        Err(_) => first,
    }
}

fn check_set_in_subgroup(g: &Arc<FiniteGroup>, h: &Subgroup, c: &GroupSubset) -> Result<()> {
    if !same_group(g, h.group()) || !same_group(g, c.group()) {
        return arg("group, subgroup and set must share a group");
    }
    if c.is_empty() {
        return arg("the set must be nonempty");
    }
    Ok(())
}

fn obstruction_certificate(
    theorem: TheoremId,
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    c: &GroupSubset,
) -> Result<Certificate> {
    check_set_in_subgroup(g, h, c)?;
    let r = cardinality_obstruction(g, h, c)?;
    let hyp = match theorem {
        TheoremId::PropFini => Hypothesis::new(
            "quotient_exceeds_twice_index",
            r.holds,
            format!(
                "|C| = {} {} 2|G||H|/(|H|+2|G|) = {}, i.e. |C|/|H∖C| = {} {} 2·[G:H] = {}",
                r.set_size,
                if r.exceeds_size_bound { ">" } else { "<=" },
                r.size_bound,
                r.quotient.value(),
                if r.quotient_exceeds_twice_index { ">" } else { "<=" },
                2 * r.index
            ),
        ),
        _ => Hypothesis::new(
            "no_surjection_onto_c",
            r.holds,
            format!(
                "|C| = {} {} |{{0,1}} × (H∖C) × G/H| = 2·{}·{} = {}",
                r.set_size,
                if r.exceeds_twice_index_remainder { ">" } else { "<=" },
                r.remainder_size,
                r.index,
                2 * r.remainder_size * r.index
            ),
        ),
    };
    let mut notes = Vec::new();
    if !r.consistent {
        notes.push("the three forms of the size inequality disagree".into());
    }
    let k = Subgroup::trivial(g);
    Ok(Certificate::from_hypotheses(
        theorem,
        g.name().to_string(),
        Subject::Finite { elements: c.to_vec() },
        vec![hyp],
        Decomposition::Finite {
            h: h.members().to_vec(),
            k: k.members().to_vec(),
            c: c.to_vec(),
            e: Vec::new(),
            f: Vec::new(),
            translation: None,
        },
        notes,
    ))
}

/// `C ⊊ H` with `|C| > 2|G||H|/(|H| + 2|G|)`.
pub fn check_prop_fini(g: &Arc<FiniteGroup>, h: &Subgroup, c: &GroupSubset) -> Result<Certificate> {
    obstruction_certificate(TheoremId::PropFini, g, h, c)
}

/// The counting form: no surjection `{0,1} × (H∖C) × G/H → C`.
pub fn check_cardinality(g: &Arc<FiniteGroup>, h: &Subgroup, c: &GroupSubset) -> Result<Certificate> {
    obstruction_certificate(TheoremId::CardinalityObstruction, g, h, c)
}

/// Every checker whose shape fits the instance, in [`TheoremId`] order.
pub fn run_all_checkers(inst: &TheoremInstance) -> Vec<Certificate> {
    let mut out = Vec::new();
    if let Ok(c) = check_prop_coset(inst) {
        out.push(c);
    }
    out.push(check_thm_f_avoids(inst));
    if let Ok(c) = check_thm_q_finite(inst) {
        out.push(c);
    }
    out.push(check_thm_single_coset(inst));
    out.push(check_thm_cminusc(inst));
    let subject = inst.subject();
    if !subject.is_empty() && subject.len() < inst.h.order() {
        if let Ok(mut c) = check_prop_fini(&inst.group, &inst.h, &subject) {
            c.decomposition = inst.decomposition();
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::subgroup_generated;

    fn set(g: &Arc<FiniteGroup>, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_indices(g, xs.iter().copied()).unwrap()
    }

    /// `C` = the K-cosets of the given representatives, `H = G`.
    fn cyclic_instance(n: usize, kgen: usize, reps: &[usize], e: &[usize], f: &[usize]) -> TheoremInstance {
        let g = FiniteGroup::cyclic(n).unwrap();
        let h = Subgroup::whole(&g);
        let k = subgroup_generated(&g, &[kgen]).unwrap();
        let c: Vec<usize> = reps.iter().flat_map(|&r| k.members().iter().map(move |x| (x + r) % n)).collect();
        TheoremInstance::new(&h, &k, &set(&g, &c), &set(&g, e), &set(&g, f)).unwrap()
    }

    #[test]
    fn assumption_examples() {
        // cyclic(24), H = <2>, K = <8>: C = three K-cosets, one coset left over.
        let g = FiniteGroup::cyclic(24).unwrap();
        let h = subgroup_generated(&g, &[2]).unwrap();
        let k = subgroup_generated(&g, &[8]).unwrap();
        let c: Vec<usize> = [0, 2, 4].iter().flat_map(|&r| [r, r + 8, r + 16]).collect();
        let e = GroupSubset::empty(&g);
        let inst = TheoremInstance::new(&h, &k, &set(&g, &c), &e, &e).unwrap();
        let a = check_assumption(&inst);
        assert_eq!((a.c_cosets, a.remainder_cosets, a.index), (3, 1, 2));
        assert!(!a.holds);

        assert!(!check_assumption(&cyclic_instance(12, 6, &[0, 1, 2, 3], &[], &[])).holds);
        assert!(check_assumption(&cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[], &[])).holds);
    }

    #[test]
    fn instance_validation() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let whole = Subgroup::whole(&g);
        let s = subgroup_generated(&g, &[3]).unwrap();
        let e = GroupSubset::empty(&g);
        let err = TheoremInstance::new(&whole, &s, &e, &e, &e).unwrap_err();
        assert!(err.to_string().contains("normal"));
        let c12 = FiniteGroup::cyclic(12).unwrap();
        let k = subgroup_generated(&c12, &[6]).unwrap();
        let e12 = GroupSubset::empty(&c12);
        assert!(TheoremInstance::new(&Subgroup::whole(&c12), &k, &set(&c12, &[0]), &e12, &e12).is_err());
        assert!(TheoremInstance::new(&Subgroup::whole(&c12), &k, &GroupSubset::full(&c12), &e12, &e12).is_err());
    }

    #[test]
    fn prop_coset_examples() {
        // cyclic(36), K = <6>: five cosets of the six, one removed point.
        let inst = cyclic_instance(36, 6, &[0, 1, 2, 3, 4], &[0], &[]);
        let cert = check_prop_coset(&inst).unwrap();
        assert_eq!(cert.verdict, Verdict::NonMinimal);

        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[], &[]);
        assert!(check_prop_coset(&inst).unwrap().is_non_minimal());

        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[0, 6, 1], &[]);
        let cert = check_prop_coset(&inst).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert!(!cert.hypothesis("k_exceeds_exception_bound").unwrap().holds);

        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[], &[5]);
        assert!(check_prop_coset(&inst).is_err());
    }

    #[test]
    fn f_avoids_examples() {
        let inst = cyclic_instance(36, 6, &[0, 1, 2, 3, 4], &[0], &[]);
        assert!(check_thm_f_avoids(&inst).is_non_minimal());
        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[], &[5, 11]);
        assert_eq!(check_thm_f_avoids(&inst).verdict, Verdict::Inconclusive);
        // cyclic(24), K = <6> of order 4: five of six cosets leaves a single
        // remaining coset, so half-filling it avoids nothing.
        let inst = cyclic_instance(24, 6, &[0, 1, 2, 3, 4], &[], &[5, 11]);
        assert_eq!(check_thm_f_avoids(&inst).verdict, Verdict::Inconclusive);
        // K = <12>: nine of twelve cosets, F half of one remaining coset.
        let inst = cyclic_instance(24, 12, &[0, 1, 2, 3, 4, 5, 6, 7, 8], &[], &[9]);
        let cert = check_thm_f_avoids(&inst);
        assert!(cert.is_non_minimal());
        assert!(cert.hypothesis("f_avoids_some_coset").unwrap().detail.contains("K·10"));
    }

    #[test]
    fn q_finite_examples() {
        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[], &[5]);
        assert!(check_thm_q_finite(&inst).unwrap().is_non_minimal());
        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[], &[5, 11]);
        assert_eq!(check_thm_q_finite(&inst).unwrap().verdict, Verdict::Inconclusive);
        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[], &[]);
        assert!(check_thm_q_finite(&inst).unwrap().is_non_minimal());
        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[0], &[]);
        assert!(check_thm_q_finite(&inst).is_err());
    }

    #[test]
    fn single_coset_examples() {
        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[], &[]);
        assert!(check_thm_single_coset(&inst).is_non_minimal());

        let g = FiniteGroup::cyclic(24).unwrap();
        let h = subgroup_generated(&g, &[2]).unwrap();
        let k = subgroup_generated(&g, &[6]).unwrap();
        let c: Vec<usize> = [0, 2].iter().flat_map(|&r| [r, r + 6, r + 12, r + 18]).collect();
        let e = GroupSubset::empty(&g);
        let inst = TheoremInstance::new(&h, &k, &set(&g, &c), &e, &e).unwrap();
        assert_eq!(check_thm_single_coset(&inst).verdict, Verdict::Inconclusive);

        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[0], &[5]);
        let cert = check_thm_single_coset(&inst);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert!(!cert.hypothesis("f_plus_small_set_contains_no_coset").unwrap().holds);
    }

    #[test]
    fn cminusc_examples() {
        let g = FiniteGroup::cyclic(10).unwrap();
        let h = Subgroup::whole(&g);
        let k = Subgroup::trivial(&g);
        let e = GroupSubset::empty(&g);
        let inst = TheoremInstance::new(&h, &k, &set(&g, &[0, 1, 2, 3, 4, 5, 6]), &e, &e).unwrap();
        let ev = evaluate_difference_condition(&inst);
        assert!(ev.direct && ev.via_stabilizer);
        assert!(check_thm_cminusc(&inst).is_non_minimal());

        // C a union of cosets of <6> in cyclic(12): the condition fails for K = {0}.
        let g = FiniteGroup::cyclic(12).unwrap();
        let inst = TheoremInstance::new(
            &Subgroup::whole(&g),
            &Subgroup::trivial(&g),
            &set(&g, &[0, 1, 2, 3, 4, 6, 7, 8, 9, 10]),
            &GroupSubset::empty(&g),
            &GroupSubset::empty(&g),
        )
        .unwrap();
        let ev = evaluate_difference_condition(&inst);
        assert!(!ev.direct && !ev.via_stabilizer);
        let cert = check_thm_cminusc(&inst);
        assert!(cert.is_non_minimal());
        assert!(cert.notes.iter().any(|n| n.contains("stabilizer")));
        assert_eq!(cert.decomposition, {
            let Decomposition::Finite { k, .. } = &cert.decomposition else { unreachable!() };
            assert_eq!(k, &vec![0, 6]);
            cert.decomposition.clone()
        });
    }

    #[test]
    fn prop_fini_examples() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let whole = Subgroup::whole(&g);
        for size in 9..12 {
            let c = set(&g, &(0..size).collect::<Vec<_>>());
            assert!(check_prop_fini(&g, &whole, &c).unwrap().is_non_minimal());
        }
        let c = set(&g, &(0..8).collect::<Vec<_>>());
        assert_eq!(check_prop_fini(&g, &whole, &c).unwrap().verdict, Verdict::Inconclusive);

        let d3 = FiniteGroup::dihedral(3).unwrap();
        let r = subgroup_generated(&d3, &[1]).unwrap();
        for xs in [&[0usize][..], &[1], &[0, 1], &[1, 2]] {
            let c = set(&d3, xs);
            assert_eq!(check_prop_fini(&d3, &r, &c).unwrap().verdict, Verdict::Inconclusive);
        }
    }

    #[test]
    fn theorem_names_parse() {
        for t in TheoremId::ALL {
            assert_eq!(t.to_string().parse::<TheoremId>().unwrap(), t);
        }
        assert_eq!("thm-f-avoids".parse::<TheoremId>().unwrap(), TheoremId::ThmFAvoids);
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn certificates_round_trip() {
        let inst = cyclic_instance(12, 6, &[0, 1, 2, 3, 4], &[0], &[5]);
        for cert in run_all_checkers(&inst) {
            let json = serde_json::to_string(&cert).unwrap();
            let back: Certificate = serde_json::from_str(&json).unwrap();
            assert_eq!(back, cert);
            assert_eq!(serde_json::to_string(&back).unwrap(), json);
            assert!(cert.verdict == Verdict::Inconclusive || cert.hypotheses.iter().all(|h| h.holds));
        }
    }
}
