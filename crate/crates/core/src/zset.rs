//! Structured subsets of ℤ of the form `(C ∖ E) ∪ F`.
//!
//! `H = hℤ`, `K = kℤ` with `h | k`, `C` is a union of residue classes mod `k`
//! inside `H`, `E` is a finite set of points of `C`, and `F` is described by
//! one [`Tag`] per residue class of `H ∖ C`. Everything is stored after a
//! translation that moves the set into `H`; the translation is kept in
//! `shift` (normalized = original + shift).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::certificate::{AssumptionResult, Certificate, Decomposition, Hypothesis, Subject, Tag, TheoremId};
use crate::error::{arg, Error, Result};
use crate::group::FiniteGroup;
use crate::subset::{left_stabilizer, symmetric_product_complement, GroupSubset};

/// Core residues and non-core tags, compared lexicographically when normalizing.
type ShapeKey = (Vec<u64>, Vec<(u64, Tag)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredZSet {
    h: u64,
    k: u64,
    core: BTreeSet<u64>,
    exceptions: BTreeSet<i64>,
    sporadic: BTreeMap<u64, Tag>,
    samples: BTreeMap<u64, BTreeSet<i64>>,
    shift: i64,
}

/// The JSON form. Without `shift` the residues are read in original
/// coordinates and normalized canonically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZSetSpec {
    pub h: u64,
    pub k: u64,
    pub core: Vec<i64>,
    #[serde(default)]
    pub exceptions: Vec<i64>,
    #[serde(default)]
    pub sporadic: BTreeMap<i64, Tag>,
    #[serde(default)]
    pub samples: BTreeMap<i64, Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    In,
    Out,
    Unknown,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::In => "in",
            Membership::Out => "out",
            Membership::Unknown => "unknown",
        })
    }
}

fn field<T>(name: &str, msg: impl fmt::Display) -> Result<T> {
    arg(format!("{name}: {msg}"))
}

impl StructuredZSet {
    /// Builds from normalized data, checking every invariant.
    pub fn new(
        h: u64,
        k: u64,
        core: BTreeSet<u64>,
        exceptions: BTreeSet<i64>,
        sporadic: BTreeMap<u64, Tag>,
        samples: BTreeMap<u64, BTreeSet<i64>>,
        shift: i64,
    ) -> Result<Self> {
        if h == 0 {
            return field("h", "must be positive");
        }
        if k == 0 || !k.is_multiple_of(h) {
            return field("k", format!("must be a positive multiple of h = {h}"));
        }
        if k > i64::MAX as u64 {
            return field("k", "too large");
        }
        for &r in &core {
            if r >= k {
                return field("core", format!("residue {r} is not reduced mod k = {k}"));
            }
            if r % h != 0 {
                return field("core", format!("residue {r} is not divisible by h = {h}"));
            }
        }
        if core.is_empty() {
            return field("core", "must be nonempty");
        }
        if core.len() as u64 == k / h {
            return field("core", "must leave at least one class of H uncovered");
        }
        let ki = k as i64;
        for &x in &exceptions {
            if !core.contains(&(x.rem_euclid(ki) as u64)) {
                return field("exceptions", format!("{x} does not lie in a core class"));
            }
        }
        let mut sporadic = sporadic;
        for &s in sporadic.keys() {
            if s >= k || s % h != 0 {
                return field("sporadic", format!("{s} is not a residue of H mod k = {k}"));
            }
            if core.contains(&s) {
                return field("sporadic", format!("class {s} is a core class"));
            }
        }
        sporadic.retain(|_, t| *t != Tag::Avoids);
        let mut samples = samples;
        samples.retain(|_, v| !v.is_empty());
        for (&s, xs) in &samples {
            if !sporadic.contains_key(&s) {
                return field("samples", format!("class {s} is not occupied, so it can have no samples"));
            }
            if let Some(x) = xs.iter().find(|x| x.rem_euclid(ki) as u64 != s) {
                return field("samples", format!("{x} is not congruent to {s} mod {k}"));
            }
        }
        Ok(Self {
            h,
            k,
            core,
            exceptions,
            sporadic,
            samples,
            shift,
        })
    }

    pub fn from_spec(spec: &ZSetSpec) -> Result<Self> {
        match spec.shift {
            Some(shift) => {
                let residue = |name: &str, r: i64| -> Result<u64> {
                    if r < 0 {
                        return field(name, format!("residue {r} is negative"));
                    }
                    Ok(r as u64)
                };
                let core = spec.core.iter().map(|&r| residue("core", r)).collect::<Result<_>>()?;
                let sporadic = spec
                    .sporadic
                    .iter()
                    .map(|(&r, &t)| Ok((residue("sporadic", r)?, t)))
                    .collect::<Result<_>>()?;
                let samples = spec
                    .samples
                    .iter()
                    .map(|(&r, xs)| Ok((residue("samples", r)?, xs.iter().copied().collect())))
                    .collect::<Result<_>>()?;
                Self::new(spec.h, spec.k, core, spec.exceptions.iter().copied().collect(), sporadic, samples, shift)
            }
            None => Self::normalize(spec),
        }
    }

    /// Translates a set given in original coordinates into `H`, choosing the
    /// translation that gives the lexicographically least residue data, so
    /// that every translate of a set normalizes to the same instance.
    pub fn normalize(spec: &ZSetSpec) -> Result<Self> {
        let (h, k) = (spec.h, spec.k);
        if h == 0 || k == 0 || k % h != 0 {
            return field("k", "h and k must be positive with h dividing k");
        }
        let (hi, ki) = (h as i64, k as i64);
        let Some(&first) = spec.core.first() else {
            return field("core", "must be nonempty");
        };
        let class = first.rem_euclid(hi);
        let in_class = |name: &str, r: i64| -> Result<()> {
            if r.rem_euclid(hi) != class {
                return field(name, format!("{r} is not in the same class mod h = {h} as the core"));
            }
            Ok(())
        };
        for &r in &spec.core {
            in_class("core", r)?;
        }
        for &r in spec.sporadic.keys() {
            in_class("sporadic", r)?;
        }

        let mut best: Option<(ShapeKey, i64)> = None;
        for j in 0..k / h {
            let t = (j as i64 * hi - class).rem_euclid(ki);
            let core: BTreeSet<u64> = spec.core.iter().map(|&r| (r + t).rem_euclid(ki) as u64).collect();
            let spor: Vec<(u64, Tag)> = spec
                .sporadic
                .iter()
                .filter(|(_, t)| **t != Tag::Avoids)
                .map(|(&r, &tag)| ((r + t).rem_euclid(ki) as u64, tag))
                .collect::<BTreeMap<_, _>>()
                .into_iter()
                .collect();
            let key = (core.into_iter().collect::<Vec<_>>(), spor);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, t));
            }
        }
        let (_, mut t) = best.expect("k/h >= 1");
        // Fix the lift of t so the least concrete point lands in [0, k).
        let points = spec.exceptions.iter().chain(spec.samples.values().flatten()).min();
        if let Some(&p) = points {
            t += (p + t).rem_euclid(ki) - (p + t);
        }
        let normalized = ZSetSpec {
            h,
            k,
            core: spec.core.iter().map(|&r| (r + t).rem_euclid(ki)).collect(),
            exceptions: spec.exceptions.iter().map(|&x| x + t).collect(),
            sporadic: spec.sporadic.iter().map(|(&r, &tag)| ((r + t).rem_euclid(ki), tag)).collect(),
            samples: spec
                .samples
                .iter()
                .map(|(&r, xs)| ((r + t).rem_euclid(ki), xs.iter().map(|&x| x + t).collect()))
                .collect(),
            shift: Some(t),
        };
        Self::from_spec(&normalized)
    }

    pub fn to_spec(&self) -> ZSetSpec {
        ZSetSpec {
            h: self.h,
            k: self.k,
            core: self.core.iter().map(|&r| r as i64).collect(),
            exceptions: self.exceptions.iter().copied().collect(),
            sporadic: self.sporadic.iter().map(|(&r, &t)| (r as i64, t)).collect(),
            samples: self
                .samples
                .iter()
                .map(|(&r, xs)| (r as i64, xs.iter().copied().collect()))
                .collect(),
            shift: Some(self.shift),
        }
    }

    pub fn h(&self) -> u64 {
        self.h
    }
    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn core(&self) -> &BTreeSet<u64> {
        &self.core
    }
    pub fn exceptions(&self) -> &BTreeSet<i64> {
        &self.exceptions
    }
    /// Occupied non-core classes; absent classes are [`Tag::Avoids`].
    pub fn sporadic(&self) -> &BTreeMap<u64, Tag> {
        &self.sporadic
    }
    pub fn samples(&self) -> &BTreeMap<u64, BTreeSet<i64>> {
        &self.samples
    }
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// `k / h`, the number of classes of `H` mod `k`.
    pub fn classes(&self) -> u64 {
        self.k / self.h
    }

    pub fn tag(&self, class: u64) -> Tag {
        self.sporadic.get(&class).copied().unwrap_or(Tag::Avoids)
    }

    /// Residues of `H ∖ C` mod `k`.
    pub fn non_core(&self) -> Vec<u64> {
        (0..self.classes())
            .map(|j| j * self.h)
            .filter(|r| !self.core.contains(r))
            .collect()
    }

    /// The same set with a different translation on record.
    pub fn with_shift(&self, shift: i64) -> Self {
        Self { shift, ..self.clone() }
    }

    /// Membership of an integer given in original coordinates.
    pub fn membership(&self, x: i64) -> Membership {
        let y = x + self.shift;
        if y.rem_euclid(self.h as i64) != 0 {
            return Membership::Out;
        }
        let r = y.rem_euclid(self.k as i64) as u64;
        if self.core.contains(&r) {
            return if self.exceptions.contains(&y) {
                Membership::Out
            } else {
                Membership::In
            };
        }
        match self.tag(r) {
            Tag::Avoids => Membership::Out,
            Tag::Full => Membership::In,
            Tag::Sparse | Tag::Thick => {
                if self.samples.get(&r).is_some_and(|s| s.contains(&y)) {
                    Membership::In
                } else {
                    Membership::Unknown
                }
            }
        }
    }

    /// Memberships of `[-w, w]` in original coordinates.
    pub fn window(&self, w: i64) -> Vec<(i64, Membership)> {
        (-w..=w).map(|x| (x, self.membership(x))).collect()
    }

    fn decomposition(&self) -> Decomposition {
        Decomposition::Integers {
            h: self.h,
            k: self.k,
            core: self.core.iter().copied().collect(),
            exceptions: self.exceptions.iter().copied().collect(),
            sporadic: self.sporadic.clone(),
            shift: self.shift,
        }
    }

    fn certificate(&self, theorem: TheoremId, hyps: Vec<Hypothesis>, notes: Vec<String>) -> Certificate {
        Certificate::from_hypotheses(
            theorem,
            "Z".to_string(),
            Subject::Integers {
                description: self.to_string(),
            },
            hyps,
            self.decomposition(),
            notes,
        )
    }

    /// Merges classes into residues mod `k2`, a multiple of `h` dividing `k`,
    /// such that the core is a union of classes mod `k2`.
    fn coarsen(&self, k2: u64) -> Result<Self> {
        let core: BTreeSet<u64> = self.core.iter().map(|r| r % k2).collect();
        let mut merged: BTreeMap<u64, Vec<Tag>> = BTreeMap::new();
        for s in self.non_core() {
            if core.contains(&(s % k2)) {
                return arg("the core is not a union of the coarser classes");
            }
            merged.entry(s % k2).or_default().push(self.tag(s));
        }
        let sporadic = merged.into_iter().map(|(r, tags)| (r, merge_tags(&tags))).collect();
        let mut samples: BTreeMap<u64, BTreeSet<i64>> = BTreeMap::new();
        for (s, xs) in &self.samples {
            samples.entry(s % k2).or_default().extend(xs.iter().copied());
        }
        Self::new(self.h, k2, core, self.exceptions.clone(), sporadic, samples, self.shift)
    }
}

/// The tag of a union of classes with the given tags.
fn merge_tags(tags: &[Tag]) -> Tag {
    if tags.iter().all(|&t| t == Tag::Full) {
        Tag::Full
    } else if tags.iter().all(|&t| t == Tag::Avoids) {
        Tag::Avoids
    } else if tags.iter().all(|&t| matches!(t, Tag::Avoids | Tag::Sparse)) {
        Tag::Sparse
    } else {
        Tag::Thick
    }
}

impl fmt::Display for StructuredZSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let core: Vec<String> = self.core.iter().map(|r| r.to_string()).collect();
        write!(f, "({{{}}} + {}Z)", core.join(","), self.k)?;
        if !self.exceptions.is_empty() {
            let e: Vec<String> = self.exceptions.iter().map(|x| x.to_string()).collect();
            write!(f, " minus {{{}}}", e.join(","))?;
        }
        if !self.sporadic.is_empty() {
            let s: Vec<String> = self.sporadic.iter().map(|(r, t)| format!("{r}:{t:?}")).collect();
            write!(f, " plus F on [{}]", s.join(" "))?;
        }
        if self.shift != 0 {
            write!(f, ", normalized by {:+}", self.shift)?;
        }
        Ok(())
    }
}

pub fn parse_structured(json: &str) -> Result<StructuredZSet> {
    let spec: ZSetSpec = serde_json::from_str(json).map_err(|e| Error::Parse {
        position: e.column(),
        message: e.to_string(),
    })?;
    StructuredZSet::from_spec(&spec)
}

pub fn z_assumption(s: &StructuredZSet) -> AssumptionResult {
    let c = s.core.len();
    let rest = s.classes() as usize - c;
    let index = s.h as usize;
    AssumptionResult {
        holds: c > 2 * index * rest,
        c_cosets: c,
        remainder_cosets: rest,
        index,
    }
}

fn infinite_k(s: &StructuredZSet) -> Hypothesis {
    Hypothesis::automatic(
        "k_exceeds_exception_bound",
        format!("2·([G:H]+1)·|E| = {}", 2 * (s.h as usize + 1) * s.exceptions.len()),
        format!("K = {}Z is infinite and E is finite", s.k),
    )
}

/// `F ∪ X` for finite `X` contains a whole class only if `F` does.
fn no_full_class(s: &StructuredZSet) -> Hypothesis {
    let full: Vec<u64> = s.sporadic.iter().filter(|(_, &t)| t == Tag::Full).map(|(&r, _)| r).collect();
    Hypothesis::new(
        "f_plus_small_set_contains_no_coset",
        full.is_empty(),
        if full.is_empty() {
            "no class of H∖C is entirely in F, and finitely many added points cannot complete one".to_string()
        } else {
            format!("F contains the whole class {} mod {}", full[0], s.k)
        },
    )
}

/// `E − F` is a union of `|E|` translates of `−F`.
fn difference_contains_no_class(s: &StructuredZSet) -> (Hypothesis, Option<String>) {
    let e = s.exceptions.len();
    let has = |t: Tag| s.sporadic.values().any(|&x| x == t);
    let name = "exceptions_times_f_inverse_contains_no_coset";
    if e == 0 {
        return (Hypothesis::new(name, true, "E is empty"), None);
    }
    if has(Tag::Full) {
        return (Hypothesis::new(name, false, "F contains a whole class, so E − F does too"), None);
    }
    if e == 1 {
        return (
            Hypothesis::new(name, true, "E − F is a translate of −F, which contains no whole class"),
            None,
        );
    }
    if has(Tag::Thick) {
        return (
            Hypothesis::new(name, false, format!("E − F is a union of {e} translates of a co-infinite set")),
            Some(
                "a finite union of translates of a co-infinite set can cover a class; \
                 the tags do not decide this condition"
                    .into(),
            ),
        );
    }
    (
        Hypothesis::new(
            name,
            true,
            format!("E − F is a union of {e} translates of a density-zero set, so it has density zero"),
        ),
        None,
    )
}

fn avoided_class(s: &StructuredZSet) -> Hypothesis {
    let avoided = s.non_core().into_iter().find(|&r| s.tag(r) == Tag::Avoids);
    Hypothesis::new(
        "f_avoids_some_coset",
        avoided.is_some(),
        match avoided {
            Some(r) => format!("F misses the class {r} mod {}", s.k),
            None => "F meets every class of H∖C".into(),
        },
    )
}

fn stabilizer_in_quotient(s: &StructuredZSet) -> (bool, bool, u64) {
    let m = s.classes() as usize;
    let g = FiniteGroup::cyclic(m).expect("at least two classes");
    let h = s.h;
    let x = GroupSubset::from_indices(&g, s.core.iter().map(|r| (r / h) as usize)).expect("in range");
    let y = x.complement();
    let spc = symmetric_product_complement(&x, &y).expect("proper partition");
    let stab = left_stabilizer(&y).expect("nonempty");
    let generator = stab.members().iter().find(|&i| i != 0).unwrap_or(m) as u64;
    (spc.len() == 1, stab.order() == 1, generator * h)
}

fn cminusc_main(s: &StructuredZSet, notes: Vec<String>) -> Certificate {
    let (direct, via_stab, _) = stabilizer_in_quotient(s);
    let mut notes = notes;
    if direct != via_stab {
        notes.push("the direct and stabilizer evaluations of the difference-set condition disagree".into());
    }
    let (diff, note) = difference_contains_no_class(s);
    notes.extend(note);
    let hyps = vec![
        z_assumption(s).hypothesis(),
        Hypothesis::new(
            "difference_set_equals_h_minus_k",
            direct && via_stab,
            format!(
                "in H/K = Z/{}: (Y − X) ∪ (X − Y) {} all nonzero classes, where X, Y are the core and non-core classes",
                s.classes(),
                if direct { "covers" } else { "misses some of" }
            ),
        ),
        no_full_class(s),
        diff,
        infinite_k(s),
    ];
    s.certificate(TheoremId::ThmCMinusC, hyps, notes)
}

/// Decides one criterion for a structured subset of ℤ.
pub fn z_check(s: &StructuredZSet, theorem: TheoremId) -> Result<Certificate> {
    let assumption = z_assumption(s).hypothesis();
    Ok(match theorem {
        TheoremId::PropCoset => {
            let empty = s.sporadic.is_empty();
            let hyps = vec![
                assumption,
                Hypothesis::new(
                    "f_empty",
                    empty,
                    if empty { "F is empty" } else { "F is nonempty; this criterion needs F empty" },
                ),
                infinite_k(s),
            ];
            s.certificate(theorem, hyps, Vec::new())
        }
        TheoremId::ThmFAvoids => s.certificate(theorem, vec![assumption, avoided_class(s), infinite_k(s)], Vec::new()),
        TheoremId::ThmQ => {
            let proper = s.non_core().into_iter().any(|r| s.tag(r) != Tag::Full);
            let hyps = vec![
                assumption,
                Hypothesis::new(
                    "f_proper_in_complement",
                    proper,
                    if proper {
                        "some class of H∖C is not entirely in F"
                    } else {
                        "F is all of H∖C"
                    },
                ),
                Hypothesis::automatic(
                    "separating_subgroup_exists",
                    format!("L = N·{}Z with N·{} > max |x_i − y_i|", s.k, s.k),
                    "Z is residually finite and every N·kZ is normal",
                ),
                Hypothesis::automatic(
                    "exceptions_bound_for_every_l",
                    format!("2·([G:H]+1)·|E| = {}", 2 * (s.h as usize + 1) * s.exceptions.len()),
                    "every finite-index subgroup of kZ is infinite",
                ),
            ];
            s.certificate(theorem, hyps, Vec::new())
        }
        TheoremId::ThmSingleCoset => {
            let occupied: Vec<u64> = s.sporadic.keys().copied().collect();
            let single = occupied.len() <= 1;
            let (diff, note) = difference_contains_no_class(s);
            let mut notes: Vec<String> = note.into_iter().collect();
            if !single {
                notes.push(format!("F meets {} classes; this criterion needs at most one", occupied.len()));
            }
            let hyps = vec![
                assumption,
                Hypothesis::new(
                    "f_in_single_coset",
                    single,
                    match occupied.first() {
                        None => "F is empty".into(),
                        Some(r) if single => format!("F lies in the class {r} mod {}", s.k),
                        _ => format!("F meets the classes {occupied:?} mod {}", s.k),
                    },
                ),
                no_full_class(s),
                diff,
                infinite_k(s),
            ];
            s.certificate(theorem, hyps, notes)
        }
        TheoremId::ThmCMinusC => {
            let first = cminusc_main(s, Vec::new());
            if first.is_non_minimal() {
                return Ok(first);
            }
            let (_, via_stab, k2) = stabilizer_in_quotient(s);
            if via_stab || k2 == s.k {
                return Ok(first);
            }
            match s.coarsen(k2) {
                Ok(coarse) => cminusc_main(
                    &coarse,
                    vec![format!(
                        "K = {}Z replaced by the stabilizer {}Z of H∖C, merging classes",
                        s.k, k2
                    )],
                ),
                Err(_) => first,
            }
        }
        other => return arg(format!("{other} has no integer form here; use ThmQ or the cofinite check")),
    })
}

/// Runs every criterion that has an integer form.
pub fn z_check_all(s: &StructuredZSet) -> Vec<Certificate> {
    [
        TheoremId::PropCoset,
        TheoremId::ThmFAvoids,
        TheoremId::ThmQ,
        TheoremId::ThmSingleCoset,
        TheoremId::ThmCMinusC,
    ]
    .into_iter()
    .map(|t| z_check(s, t).expect("integer form exists"))
    .collect()
}

/// `hℤ ∖ removed` for a nonempty finite `removed ⊆ hℤ`.
pub fn z_check_cofinite(h: u64, removed: &BTreeSet<i64>) -> Result<Certificate> {
    if h == 0 {
        return field("h", "must be positive");
    }
    if removed.is_empty() {
        return field("removed", "must be nonempty, otherwise the set is the subgroup itself");
    }
    if let Some(x) = removed.iter().find(|x| x.rem_euclid(h as i64) != 0) {
        return field("removed", format!("{x} is not a multiple of h = {h}"));
    }
    let list: Vec<String> = removed.iter().map(|x| x.to_string()).collect();
    let hyps = vec![
        Hypothesis::new(
            "remainder_finite",
            true,
            format!("H∖C = {{{}}} has {} elements", list.join(","), removed.len()),
        ),
        Hypothesis::automatic(
            "quotient_exceeds_twice_index",
            format!("|C| > 2·[G:H]·|H∖C| = 2·{h}·{}", removed.len()),
            "C is infinite",
        ),
    ];
    Ok(Certificate::from_hypotheses(
        TheoremId::PropCofinite,
        "Z".into(),
        Subject::Integers {
            description: format!("{h}Z minus {{{}}}", list.join(",")),
        },
        hyps,
        Decomposition::Integers {
            h,
            k: h,
            core: vec![0],
            exceptions: removed.iter().copied().collect(),
            sporadic: BTreeMap::new(),
            shift: 0,
        },
        Vec::new(),
    ))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `(residues + pℤ) ∪ F` with `F` in the remaining `a` classes: `h = 1`,
/// `k = p`. Residues are taken from `1..=p`.
pub fn robust_family(p: u64, a: u64, residues: &BTreeSet<u64>, tags: &BTreeMap<u64, Tag>) -> Result<StructuredZSet> {
    if !is_prime(p) || p < 5 {
        return field("p", format!("{p} is not a prime at least 5"));
    }
    if a == 0 || p < 3 * a + 1 {
        return field("a", format!("need a >= 1 and p >= 3a + 1, got a = {a}, p = {p}"));
    }
    if let Some(r) = residues.iter().find(|&&r| r == 0 || r > p) {
        return field("residues", format!("{r} is outside 1..={p}"));
    }
    if residues.len() as u64 != p - a {
        return field("residues", format!("expected {} residues, got {}", p - a, residues.len()));
    }
    let core: BTreeSet<u64> = residues.iter().map(|r| r % p).collect();
    let mut sporadic = BTreeMap::new();
    for (&r, &t) in tags {
        let c = r % p;
        if core.contains(&c) {
            return field("tags", format!("{r} is a core residue"));
        }
        if t == Tag::Full {
            return field("tags", format!("class {r} cannot be full; F lies in one half of its classes"));
        }
        sporadic.insert(c, t);
    }
    StructuredZSet::new(1, p, core, BTreeSet::new(), sporadic, BTreeMap::new(), 0)
}

/// `(({2,4,…,2n} ∖ {2a_i}) + 2nℤ) ∪ F` with `F` in the removed classes.
pub fn remark_family(n: u64, removed: &BTreeSet<u64>, tags: &BTreeMap<u64, Tag>) -> Result<StructuredZSet> {
    let count = removed.len() as u64;
    if count < 2 {
        return field("removed", "needs at least two elements");
    }
    if let Some(r) = removed.iter().find(|&&r| r == 0 || r > n) {
        return field("removed", format!("{r} is outside 1..={n}"));
    }
    if count == 2 {
        if n < 11 {
            return field("n", format!("two removed classes need n >= 11, got {n}"));
        }
        let v: Vec<u64> = removed.iter().copied().collect();
        if (2 * (v[1] - v[0])).is_multiple_of(n) {
            return field(
                "removed",
                format!("2({} - {}) is divisible by n = {n}", v[0], v[1]),
            );
        }
    } else {
        if n < 5 * count + 1 {
            return field("n", format!("{count} removed classes need n >= {}, got {n}", 5 * count + 1));
        }
        if let Some(d) = (2..=count).find(|d| n.is_multiple_of(*d)) {
            return field("n", format!("{n} is divisible by {d} <= {count}"));
        }
    }
    let k = 2 * n;
    let gone: BTreeSet<u64> = removed.iter().map(|&a| (2 * a) % k).collect();
    let core: BTreeSet<u64> = (1..=n).map(|i| (2 * i) % k).filter(|r| !gone.contains(r)).collect();
    let mut sporadic = BTreeMap::new();
    for (&r, &t) in tags {
        let c = r % k;
        if !gone.contains(&c) {
            return field("tags", format!("{r} is not one of the removed classes"));
        }
        sporadic.insert(c, t);
    }
    StructuredZSet::new(2, k, core, BTreeSet::new(), sporadic, BTreeMap::new(), 0)
}

/// Image in `ℤ/mℤ`, with a flag telling whether it is the image of the whole
/// set. Exceptions and samples are projected only when asked for.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteQuotient {
    pub set: GroupSubset,
    pub exact: bool,
}

pub fn finite_quotient(s: &StructuredZSet, m: u64, with_exceptions: bool, with_samples: bool) -> Result<FiniteQuotient> {
    if m == 0 || !m.is_multiple_of(s.k) {
        return field("m", format!("must be a positive multiple of k = {}", s.k));
    }
    let g = FiniteGroup::cyclic(m as usize)?;
    let mut set = GroupSubset::empty(&g);
    for x in 0..m {
        if s.core.contains(&(x % s.k)) {
            set.insert(x as usize);
        }
    }
    let mi = m as i64;
    if with_exceptions {
        for &e in &s.exceptions {
            set.remove(e.rem_euclid(mi) as usize);
        }
    }
    if with_samples {
        for &x in s.samples.values().flatten() {
            set.insert(x.rem_euclid(mi) as usize);
        }
    }
    Ok(FiniteQuotient {
        set,
        exact: s.exceptions.is_empty() && s.sporadic.is_empty(),
    })
}
