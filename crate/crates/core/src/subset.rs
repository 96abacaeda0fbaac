//! Subsets of a finite group and the set arithmetic built on them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{arg, Error, Result};
use crate::group::{all_subgroups, same_group, FiniteGroup, Subgroup};

/// Which side a complement or translate acts on.
///
/// `A` is a left complement to `B` when `A·B = G` and a right complement when
/// `B·A = G`. A left translate of `A` by `g` is `g·A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A set of elements of one particular group.
#[derive(Clone)]
pub struct GroupSubset {
    group: Arc<FiniteGroup>,
    bits: BitSet,
}

impl PartialEq for GroupSubset {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && same_group(&self.group, &other.group)
    }
}

impl Eq for GroupSubset {}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `{0,2,4}` with canonical element indices, ascending.
impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl GroupSubset {
    pub fn empty(group: &Arc<FiniteGroup>) -> Self {
        Self {
            group: group.clone(),
            bits: BitSet::new(group.order()),
        }
    }

    pub fn full(group: &Arc<FiniteGroup>) -> Self {
        Self {
            group: group.clone(),
            bits: BitSet::full(group.order()),
        }
    }

    pub fn singleton(group: &Arc<FiniteGroup>, g: usize) -> Result<Self> {
        Self::from_indices(group, [g])
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(group: &Arc<FiniteGroup>, indices: I) -> Result<Self> {
        let n = group.order();
        let mut bits = BitSet::new(n);
        for i in indices {
            if i >= n {
                return arg(format!("element {i} out of range for a group of order {n}"));
            }
            bits.insert(i);
        }
        Ok(Self {
            group: group.clone(),
            bits,
        })
    }

    pub fn from_bits(group: &Arc<FiniteGroup>, bits: BitSet) -> Result<Self> {
        if bits.universe() != group.order() {
            return arg(format!(
                "bit set over {} elements used with a group of order {}",
                bits.universe(),
                group.order()
            ));
        }
        Ok(Self {
            group: group.clone(),
            bits,
        })
    }

    /// Low bits of `mask` as a subset (order at most 64).
    pub fn from_mask(group: &Arc<FiniteGroup>, mask: u64) -> Result<Self> {
        let n = group.order();
        if n > 64 || (n < 64 && mask >> n != 0) {
            return arg(format!("mask {mask:#x} does not fit a group of order {n}"));
        }
        Ok(Self {
            group: group.clone(),
            bits: BitSet::from_mask(n, mask),
        })
    }

    /// Parses `{0,2,4}`, `{}` or the complement shorthand `!{1,3}`.
    /// Elements are indices or, for groups with labels, labels such as `sr^2`.
    pub fn parse(group: &Arc<FiniteGroup>, input: &str) -> Result<Self> {
        let trimmed = input.trim();
        let offset = input.len() - input.trim_start().len();
        let (negate, body_start) = match trimmed.strip_prefix('!') {
            Some(rest) => (true, offset + 1 + (rest.len() - rest.trim_start().len())),
            None => (false, offset),
        };
        let body = input[body_start..].trim_end();
        let inner = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or(Error::Parse {
                position: body_start,
                message: "expected a set literal such as {0,2,4}".into(),
            })?;
        let mut set = Self::empty(group);
        let mut depth = 0usize;
        let mut start = 0;
        let bytes = inner.as_bytes();
        let mut tokens = Vec::new();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth = depth.saturating_sub(1),
                b',' if depth == 0 => {
                    tokens.push((start, &inner[start..i]));
                    start = i + 1;
                }
                _ => {}
            }
        }
        tokens.push((start, &inner[start..]));
        for (pos, tok) in tokens {
            let t = tok.trim();
            if t.is_empty() {
                if inner.trim().is_empty() {
                    continue;
                }
                return Err(Error::Parse {
                    position: body_start + 1 + pos,
                    message: "empty element".into(),
                });
            }
            let g = group.element_by_label(t).ok_or_else(|| Error::Parse {
                position: body_start + 1 + pos,
                message: format!("unknown element {t:?} for a group of order {}", group.order()),
            })?;
            set.bits.insert(g);
        }
        if negate {
            set.bits = set.bits.complement();
        }
        Ok(set)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn into_bits(self) -> BitSet {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.bits.contains(g)
    }

    pub fn insert(&mut self, g: usize) -> bool {
        self.bits.insert(g)
    }

    pub fn remove(&mut self, g: usize) -> bool {
        self.bits.remove(g)
    }

    pub fn iter(&self) -> crate::bitset::Ones<'_> {
        self.bits.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.first()
    }

    pub fn to_mask(&self) -> Option<u64> {
        self.bits.to_mask()
    }

    fn same_parent(&self, other: &GroupSubset) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            arg("subsets belong to different groups")
        }
    }

    fn with_bits(&self, bits: BitSet) -> GroupSubset {
        GroupSubset {
            group: self.group.clone(),
            bits,
        }
    }

    pub fn union(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.same_parent(other)?;
        Ok(self.with_bits(self.bits.union(&other.bits)))
    }

    pub fn intersection(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.same_parent(other)?;
        Ok(self.with_bits(self.bits.intersection(&other.bits)))
    }

    pub fn difference(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.same_parent(other)?;
        Ok(self.with_bits(self.bits.difference(&other.bits)))
    }

    /// `G` minus this set.
    pub fn complement(&self) -> GroupSubset {
        self.with_bits(self.bits.complement())
    }

    pub fn is_subset(&self, other: &GroupSubset) -> Result<bool> {
        self.same_parent(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    pub fn is_disjoint(&self, other: &GroupSubset) -> Result<bool> {
        self.same_parent(other)?;
        Ok(self.bits.is_disjoint(&other.bits))
    }
}

/// `{a·b : a ∈ A, b ∈ B}`.
///
/// In a cyclic group with the standard indexing this is a union of rotations
/// of one operand's bit words, one per element of the other operand.
pub fn product_set(a: &GroupSubset, b: &GroupSubset) -> Result<GroupSubset> {
    a.same_parent(b)?;
    let g = &a.group;
    let n = g.order();
    let mut out = BitSet::new(n);
    if a.is_empty() || b.is_empty() {
        return Ok(a.with_bits(out));
    }
    if g.is_cyclic_indexed() {
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        for s in small.iter() {
            out.or_rotated(&large.bits, s);
        }
    } else {
        for x in a.iter() {
            let row = g.row(x);
            for y in b.iter() {
                out.insert(row[y] as usize);
            }
        }
    }
    Ok(a.with_bits(out))
}

/// `{a⁻¹ : a ∈ A}`.
pub fn inverse_set(a: &GroupSubset) -> GroupSubset {
    let g = &a.group;
    let mut out = BitSet::new(g.order());
    for x in a.iter() {
        out.insert(g.inv(x));
    }
    a.with_bits(out)
}

/// `g·A` (left) or `A·g` (right).
pub fn translate(side: Side, g: usize, a: &GroupSubset) -> Result<GroupSubset> {
    let grp = &a.group;
    if g >= grp.order() {
        return arg(format!("element {g} out of range for a group of order {}", grp.order()));
    }
    if grp.is_cyclic_indexed() {
        return Ok(a.with_bits(a.bits.rotated(g)));
    }
    let mut out = BitSet::new(grp.order());
    for x in a.iter() {
        out.insert(match side {
            Side::Left => grp.mul(g, x),
            Side::Right => grp.mul(x, g),
        });
    }
    Ok(a.with_bits(out))
}

fn left_translate_equals(y: &GroupSubset, g: usize) -> bool {
    let grp = &y.group;
    if grp.is_cyclic_indexed() {
        return y.bits.rotated(g) == y.bits;
    }
    let row = grp.row(g);
    y.iter().all(|x| y.bits.contains(row[x] as usize))
}

/// The subgroup `{g : g·Y = Y}`; `Y` is a union of its right cosets and of
/// the right cosets of no larger subgroup.
pub fn left_stabilizer(y: &GroupSubset) -> Result<Subgroup> {
    if y.is_empty() {
        return arg("the stabilizer is only defined here for a nonempty set");
    }
    let g = &y.group;
    let mut members = BitSet::new(g.order());
    for x in 0..g.order() {
        if left_translate_equals(y, x) {
            members.insert(x);
        }
    }
    Ok(Subgroup::trusted(y.with_bits(members)))
}

/// `G ∖ (X·Y⁻¹ ∪ Y·X⁻¹)` for a partition `G = X ⊔ Y` into nonempty parts.
pub fn symmetric_product_complement(x: &GroupSubset, y: &GroupSubset) -> Result<GroupSubset> {
    check_partition(x, y)?;
    Ok(symmetric_difference_set(x, y)?.complement())
}

/// `X·Y⁻¹ ∪ Y·X⁻¹`.
fn symmetric_difference_set(x: &GroupSubset, y: &GroupSubset) -> Result<GroupSubset> {
    let xy = product_set(x, &inverse_set(y))?;
    let yx = product_set(y, &inverse_set(x))?;
    xy.union(&yx)
}

fn check_partition(x: &GroupSubset, y: &GroupSubset) -> Result<()> {
    x.same_parent(y)?;
    if x.is_empty() || y.is_empty() {
        return arg("both parts must be nonempty");
    }
    if !x.bits.is_disjoint(&y.bits) {
        return arg("the two parts must be disjoint");
    }
    if !x.bits.union(&y.bits).is_full() {
        return arg("the two parts must cover the group");
    }
    Ok(())
}

/// How a set decomposes into right cosets `Lg` of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CosetProfile {
    pub is_union: bool,
    /// `[Y:L]` when `Y` is a union of right cosets of `L`.
    pub count: Option<usize>,
    /// Least element of each coset inside `Y`, ascending (empty unless a union).
    pub representatives: Vec<usize>,
}

pub fn coset_profile(y: &GroupSubset, l: &Subgroup) -> Result<CosetProfile> {
    y.same_parent(l.members())?;
    let g = &y.group;
    let is_union = l
        .members()
        .iter()
        .all(|k| k == g.identity() || left_translate_equals(y, k));
    if !is_union {
        return Ok(CosetProfile {
            is_union,
            count: None,
            representatives: Vec::new(),
        });
    }
    let mut seen = BitSet::new(g.order());
    let mut reps = Vec::new();
    for x in y.iter() {
        if seen.contains(x) {
            continue;
        }
        reps.push(x);
        for k in l.members().iter() {
            seen.insert(g.mul(k, x));
        }
    }
    Ok(CosetProfile {
        is_union,
        count: Some(reps.len()),
        representatives: reps,
    })
}

/// The five conditions relating a partition `G = X ⊔ Y` to a subgroup `L`
/// whose right cosets tile `X`, each computed independently, plus two finite
/// criteria under which `X·Y⁻¹ ∪ Y·X⁻¹` is all of `G ∖ {e}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalenceReport {
    /// `X·Y⁻¹ ∪ Y·X⁻¹` is a proper subset of `G ∖ L`.
    pub proper_inclusion: bool,
    /// Every `y ∈ Y` has some `y' ∈ Y ∖ Ly` with `y'y⁻¹·Y = Y`.
    pub every_y_has_shift: bool,
    /// Some `y ∈ Y` has such a `y'`.
    pub some_y_has_shift: bool,
    /// `Y` is a union of right cosets of a subgroup strictly containing `L`.
    pub y_tiled_by_larger: bool,
    /// `X` is a union of right cosets of a subgroup strictly containing `L`.
    pub x_tiled_by_larger: bool,
    pub consistent: bool,
    /// `ord(y'y⁻¹) > |Y|` for all distinct `y, y'` in `Y`.
    pub criterion_orders: bool,
    /// `|Y|` is not divisible by the order of any nontrivial subgroup.
    pub criterion_divisibility: bool,
    /// `X·Y⁻¹ ∪ Y·X⁻¹ = G ∖ {e}`.
    pub misses_only_identity: bool,
}

pub fn coset_union_equivalences(x: &GroupSubset, y: &GroupSubset, l: &Subgroup) -> Result<EquivalenceReport> {
    check_partition(x, y)?;
    x.same_parent(l.members())?;
    if !coset_profile(x, l)?.is_union {
        return arg("X must be a union of right cosets of L");
    }
    let g = x.group.clone();
    let n = g.order();
    let e = g.identity();

    let diff = symmetric_difference_set(x, y)?;
    let outside_l = l.members().complement();
    let proper_inclusion = diff.bits.is_subset(&outside_l.bits) && diff.bits != outside_l.bits;

    let has_shift = |yy: usize| {
        let yi = g.inv(yy);
        y.iter().any(|y2| {
            let in_coset = l.members().iter().any(|k| g.mul(k, yy) == y2);
            !in_coset && left_translate_equals(y, g.mul(y2, yi))
        })
    };
    let every_y_has_shift = y.iter().all(has_shift);
    let some_y_has_shift = y.iter().any(has_shift);

    let subgroups = all_subgroups(&g)?;
    let larger: Vec<&Subgroup> = subgroups
        .iter()
        .filter(|m| l.members().bits().is_subset(m.members().bits()) && m.order() > l.order())
        .collect();
    let y_tiled_by_larger = larger.iter().any(|m| coset_profile(y, m).map(|p| p.is_union).unwrap_or(false));
    let x_tiled_by_larger = larger.iter().any(|m| coset_profile(x, m).map(|p| p.is_union).unwrap_or(false));

    let flags = [
        proper_inclusion,
        every_y_has_shift,
        some_y_has_shift,
        y_tiled_by_larger,
        x_tiled_by_larger,
    ];
    let consistent = flags.iter().all(|&f| f == flags[0]);

    let orders = g.element_orders();
    let ys = y.to_vec();
    let criterion_orders = ys.iter().all(|&a| {
        ys.iter()
            .all(|&b| a == b || orders[g.mul(b, g.inv(a))] > ys.len())
    });
    // A nontrivial subgroup whose order divides |Y| contains an element of
    // prime order dividing |Y|, and every element generates a subgroup.
    let criterion_divisibility = (0..n).all(|h| h == e || !ys.len().is_multiple_of(orders[h]));

    let mut all_but_e = BitSet::full(n);
    all_but_e.remove(e);
    let misses_only_identity = diff.bits == all_but_e;

    Ok(EquivalenceReport {
        proper_inclusion,
        every_y_has_shift,
        some_y_has_shift,
        y_tiled_by_larger,
        x_tiled_by_larger,
        consistent,
        criterion_orders,
        criterion_divisibility,
        misses_only_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::subgroup_generated;

    fn set(g: &Arc<FiniteGroup>, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_indices(g, xs.iter().copied()).unwrap()
    }

    #[test]
    fn products_in_small_groups() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let p = product_set(&set(&c4, &[0, 1]), &set(&c4, &[0, 2])).unwrap();
        assert!(p.is_full());

        let c12 = FiniteGroup::cyclic(12).unwrap();
        let p = product_set(&set(&c12, &[0]), &GroupSubset::full(&c12)).unwrap();
        assert!(p.is_full());
        assert!(product_set(&GroupSubset::empty(&c12), &GroupSubset::full(&c12)).unwrap().is_empty());

        let d3 = FiniteGroup::dihedral(3).unwrap();
        let (r, s, sr) = (1, 3, 4);
        let rs = d3.mul(r, s);
        assert_eq!(product_set(&set(&d3, &[s]), &set(&d3, &[r])).unwrap().to_vec(), vec![sr]);
        assert_eq!(product_set(&set(&d3, &[r]), &set(&d3, &[s])).unwrap().to_vec(), vec![rs]);
        assert_ne!(rs, sr);

        assert!(product_set(&set(&c4, &[0]), &set(&c12, &[0])).is_err());
    }

    #[test]
    fn inverses_and_translates() {
        let c12 = FiniteGroup::cyclic(12).unwrap();
        assert_eq!(inverse_set(&set(&c12, &[1, 5])).to_vec(), vec![7, 11]);
        assert!(inverse_set(&GroupSubset::empty(&c12)).is_empty());
        assert_eq!(translate(Side::Left, 3, &set(&c12, &[0, 1])).unwrap().to_vec(), vec![3, 4]);
        assert_eq!(translate(Side::Left, 0, &set(&c12, &[0, 1])).unwrap().to_vec(), vec![0, 1]);
        assert!(translate(Side::Left, 12, &set(&c12, &[0])).is_err());

        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(inverse_set(&set(&d3, &[4])).to_vec(), vec![4]);
        assert_eq!(translate(Side::Left, 3, &set(&d3, &[1])).unwrap().to_vec(), vec![4]);
        assert_eq!(translate(Side::Right, 3, &set(&d3, &[1])).unwrap().to_vec(), vec![d3.mul(1, 3)]);
    }

    #[test]
    fn stabilizers() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(left_stabilizer(&set(&c6, &[0, 3])).unwrap().members().to_vec(), vec![0, 3]);
        assert_eq!(left_stabilizer(&set(&c6, &[0, 1])).unwrap().members().to_vec(), vec![0]);
        assert!(left_stabilizer(&GroupSubset::empty(&c6)).is_err());
        let c12 = FiniteGroup::cyclic(12).unwrap();
        let odd = set(&c12, &[1, 3, 5, 7, 9, 11]);
        assert_eq!(left_stabilizer(&odd).unwrap().members().to_vec(), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn symmetric_complements() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let r = symmetric_product_complement(&set(&c6, &[1, 2, 4, 5]), &set(&c6, &[0, 3])).unwrap();
        assert_eq!(r.to_vec(), vec![0, 3]);
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let r = symmetric_product_complement(&set(&c4, &[1, 2, 3]), &set(&c4, &[0])).unwrap();
        assert_eq!(r.to_vec(), vec![0]);
        let c12 = FiniteGroup::cyclic(12).unwrap();
        let r = symmetric_product_complement(&set(&c12, &[1, 3, 5, 7, 9, 11]), &set(&c12, &[0, 2, 4, 6, 8, 10])).unwrap();
        assert_eq!(r.to_vec(), vec![0, 2, 4, 6, 8, 10]);
        assert!(symmetric_product_complement(&set(&c4, &[1, 2]), &set(&c4, &[0])).is_err());
        assert!(symmetric_product_complement(&set(&c4, &[0, 1, 2, 3]), &set(&c4, &[0])).is_err());
    }

    #[test]
    fn coset_profiles() {
        let c12 = FiniteGroup::cyclic(12).unwrap();
        let l = subgroup_generated(&c12, &[4]).unwrap();
        let p = coset_profile(&set(&c12, &[0, 2, 4, 6, 8, 10]), &l).unwrap();
        assert!(p.is_union);
        assert_eq!(p.count, Some(2));
        assert_eq!(p.representatives, vec![0, 2]);
        assert!(!coset_profile(&set(&c12, &[0, 1]), &l).unwrap().is_union);
        let whole = Subgroup::whole(&c12);
        let p = coset_profile(&GroupSubset::full(&c12), &whole).unwrap();
        assert_eq!(p.count, Some(1));
    }

    #[test]
    fn equivalence_examples() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let trivial = Subgroup::trivial(&c6);
        let r = coset_union_equivalences(&set(&c6, &[1, 2, 4, 5]), &set(&c6, &[0, 3]), &trivial).unwrap();
        assert!(r.consistent && r.proper_inclusion && r.x_tiled_by_larger);

        let c5 = FiniteGroup::cyclic(5).unwrap();
        let r = coset_union_equivalences(&set(&c5, &[2, 3, 4]), &set(&c5, &[0, 1]), &Subgroup::trivial(&c5)).unwrap();
        assert!(r.consistent && !r.proper_inclusion);
        assert!(r.criterion_orders && r.misses_only_identity);

        let c4 = FiniteGroup::cyclic(4).unwrap();
        let r = coset_union_equivalences(&set(&c4, &[0, 2, 3]), &set(&c4, &[1]), &Subgroup::trivial(&c4)).unwrap();
        assert!(r.consistent && !r.some_y_has_shift);
        assert!(r.criterion_divisibility && r.misses_only_identity);
    }

    #[test]
    fn literal_parsing() {
        let c12 = FiniteGroup::cyclic(12).unwrap();
        assert_eq!(GroupSubset::parse(&c12, "{2, 4,6}").unwrap().to_vec(), vec![2, 4, 6]);
        assert_eq!(GroupSubset::parse(&c12, "{}").unwrap().len(), 0);
        let c = GroupSubset::parse(&c12, "!{1,3}").unwrap();
        assert_eq!(c.len(), 10);
        assert!(!c.contains(1) && !c.contains(3));
        assert!(GroupSubset::parse(&c12, "{12}").is_err());
        assert!(GroupSubset::parse(&c12, "{1,,2}").is_err());
        assert!(GroupSubset::parse(&c12, "1,2").is_err());
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(GroupSubset::parse(&d3, "{e,r^2,sr}").unwrap().to_vec(), vec![0, 2, 4]);
        let s = set(&c12, &[0, 5, 11]);
        assert_eq!(GroupSubset::parse(&c12, &s.to_string()).unwrap(), s);
    }
}
