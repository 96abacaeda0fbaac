//! Complement predicates, minimalization, and the cardinality obstruction.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::group::{same_group, FiniteGroup, Subgroup};
use crate::oracle::{DEFAULT_ORACLE_BOUND, HARD_ORACLE_CAP};
use crate::subset::{product_set, translate, GroupSubset, Side};

/// `A·B` when `A` sits on the left, `B·A` when it sits on the right.
pub fn product_on_side(a: &GroupSubset, b: &GroupSubset, side: Side) -> Result<GroupSubset> {
    match side {
        Side::Left => product_set(a, b),
        Side::Right => product_set(b, a),
    }
}

/// Whether `A` is a complement to `B` on the given side.
pub fn is_complement(a: &GroupSubset, b: &GroupSubset, side: Side) -> Result<bool> {
    Ok(product_on_side(a, b, side)?.is_full())
}

pub fn is_left_complement(a: &GroupSubset, b: &GroupSubset) -> Result<bool> {
    is_complement(a, b, Side::Left)
}

pub fn is_right_complement(a: &GroupSubset, b: &GroupSubset) -> Result<bool> {
    is_complement(a, b, Side::Right)
}

/// `c·B` (left) or `B·c` (right) for a single element `c`.
fn translate_partner(c: usize, b: &GroupSubset, side: Side) -> Result<GroupSubset> {
    translate(side, c, b)
}

/// Whether `C` complements `B` and no element of `C` can be dropped.
pub fn is_minimal_complement_to(c: &GroupSubset, b: &GroupSubset, side: Side) -> Result<bool> {
    if c.group().order() != b.group().order() || !same_group(c.group(), b.group()) {
        return arg("subsets belong to different groups");
    }
    if c.is_empty() {
        return Ok(false);
    }
    let n = c.group().order();
    let mut count = vec![0u32; n];
    let mut translates = Vec::with_capacity(c.len());
    for x in c.iter() {
        let t = translate_partner(x, b, side)?;
        for g in t.iter() {
            count[g] += 1;
        }
        translates.push(t);
    }
    if count.contains(&0) {
        return Ok(false);
    }
    Ok(translates.iter().all(|t| t.iter().any(|g| count[g] == 1)))
}

/// Drops elements of `C` while it still complements `B`, trying the largest
/// index first, and returns the resulting minimal complement.
pub fn minimalize(c: &GroupSubset, b: &GroupSubset, side: Side) -> Result<GroupSubset> {
    if !is_complement(c, b, side)? {
        return arg("the set is not a complement to the given partner");
    }
    let mut cur = c.clone();
    let members: Vec<usize> = c.to_vec();
    for &x in members.iter().rev() {
        cur.remove(x);
        if !is_complement(&cur, b, side)? {
            cur.insert(x);
        }
    }
    Ok(cur)
}

/// Every minimal complement to `B` on the given side, sorted by size and then
/// by bitmask value.
pub fn enumerate_minimal_complements(b: &GroupSubset, side: Side) -> Result<Vec<GroupSubset>> {
    enumerate_minimal_complements_bounded(b, side, DEFAULT_ORACLE_BOUND)
}

pub fn enumerate_minimal_complements_bounded(b: &GroupSubset, side: Side, bound: usize) -> Result<Vec<GroupSubset>> {
    let g = b.group();
    let n = g.order();
    let bound = bound.min(HARD_ORACLE_CAP);
    if n > bound {
        return Err(Error::Capacity {
            what: "minimal-complement enumeration over a group",
            size: n,
            bound,
        });
    }
    if b.is_empty() {
        return arg("the partner set must be nonempty");
    }
    let cols: Vec<u64> = (0..n)
        .map(|x| translate_partner(x, b, side).map(|t| t.to_mask().expect("order at most 64")))
        .collect::<Result<_>>()?;
    let full = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut suffix = vec![0u64; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] | cols[i];
    }
    let mut found = Vec::new();
    let mut search = MinimalSearch {
        cols: &cols,
        suffix: &suffix,
        full,
        found: &mut found,
    };
    search.descend(0, 0, 0, 0);
    found.sort_by_key(|&m| (m.count_ones(), m));
    found
        .into_iter()
        .map(|m| GroupSubset::from_mask(g, m))
        .collect()
}

struct MinimalSearch<'a> {
    cols: &'a [u64],
    suffix: &'a [u64],
    full: u64,
    found: &'a mut Vec<u64>,
}

impl MinimalSearch<'_> {
    fn descend(&mut self, i: usize, chosen: u64, once: u64, twice: u64) {
        if once == self.full {
            self.found.push(chosen);
            return;
        }
        if i == self.cols.len() || (once | self.suffix[i]) != self.full {
            return;
        }
        // A chosen element whose translate is covered twice over stays
        // redundant however the set grows, so such branches are dropped.
        let col = self.cols[i];
        let (once2, twice2) = (once | col, twice | (once & col));
        let unique = once2 & !twice2;
        let with = chosen | 1 << i;
        let mut rest = with;
        let mut ok = true;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.cols[x] & unique == 0 {
                ok = false;
                break;
            }
        }
        if ok {
            self.descend(i + 1, with, once2, twice2);
        }
        self.descend(i + 1, chosen, once, twice);
    }
}

/// Whether a count is of group elements or of cosets of a fixed subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum QuotientUnit {
    Elements,
    /// Cosets of `modulus·ℤ`; used when both sides are infinite subsets of ℤ.
    Cosets { modulus: u64 },
}

/// `|C| / |H ∖ C|`, exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RelativeQuotient {
    pub numerator: u64,
    pub denominator: u64,
    pub unit: QuotientUnit,
}

impl RelativeQuotient {
    pub fn new(numerator: u64, denominator: u64, unit: QuotientUnit) -> Result<Self> {
        if denominator == 0 {
            return arg("the quotient needs a nonempty remainder H minus C");
        }
        Ok(Self {
            numerator,
            denominator,
            unit,
        })
    }

    pub fn value(&self) -> Ratio<u64> {
        Ratio::new(self.numerator, self.denominator)
    }
}

fn check_proper_subset(c: &GroupSubset, h: &Subgroup) -> Result<()> {
    if !same_group(c.group(), h.group()) {
        return arg("set and subgroup belong to different groups");
    }
    if !c.bits().is_subset(h.members().bits()) {
        return arg("the set is not contained in the subgroup");
    }
    if c.len() == h.order() {
        return arg("the set must be strictly contained in the subgroup");
    }
    Ok(())
}

pub fn lambda_quotient(c: &GroupSubset, h: &Subgroup) -> Result<RelativeQuotient> {
    check_proper_subset(c, h)?;
    RelativeQuotient::new(c.len() as u64, (h.order() - c.len()) as u64, QuotientUnit::Elements)
}

/// The inequality `|C| > 2[G:H]·|H ∖ C|` in three equivalent forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ObstructionReport {
    pub group_order: u64,
    pub subgroup_order: u64,
    pub index: u64,
    pub set_size: u64,
    pub remainder_size: u64,
    pub quotient: RelativeQuotient,
    /// `|C| > 2[G:H]·|H ∖ C|`.
    pub exceeds_twice_index_remainder: bool,
    /// `|C| / |H ∖ C| > 2[G:H]`.
    pub quotient_exceeds_twice_index: bool,
    /// `|C| > 2|G||H| / (|H| + 2|G|)`.
    pub exceeds_size_bound: bool,
    pub size_bound: Ratio<u64>,
    pub holds: bool,
    pub consistent: bool,
}

pub fn cardinality_obstruction(g: &std::sync::Arc<FiniteGroup>, h: &Subgroup, c: &GroupSubset) -> Result<ObstructionReport> {
    if !same_group(g, h.group()) {
        return arg("subgroup belongs to a different group");
    }
    if c.is_empty() {
        return arg("the set must be nonempty");
    }
    let quotient = lambda_quotient(c, h)?;
    let (go, ho) = (g.order() as u64, h.order() as u64);
    let index = h.index() as u64;
    let (cs, rs) = (c.len() as u64, ho - c.len() as u64);
    let a = cs > 2 * index * rs;
    let b = quotient.value() > Ratio::from_integer(2 * index);
    let size_bound = Ratio::new(2 * go * ho, ho + 2 * go);
    let s = Ratio::from_integer(cs) > size_bound;
    Ok(ObstructionReport {
        group_order: go,
        subgroup_order: ho,
        index,
        set_size: cs,
        remainder_size: rs,
        quotient,
        exceeds_twice_index_remainder: a,
        quotient_exceeds_twice_index: b,
        exceeds_size_bound: s,
        size_bound,
        holds: a,
        consistent: a == b && b == s,
    })
}
