//! Finite groups given by a full multiplication table, and their subgroups.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bitset::BitSet;
use crate::error::{arg, Error, Result};
use crate::subset::GroupSubset;

/// Orders up to which associativity is checked on every triple.
pub const DEFAULT_ASSOCIATIVITY_BOUND: usize = 64;
/// Random triples checked above [`DEFAULT_ASSOCIATIVITY_BOUND`].
pub const DEFAULT_ASSOCIATIVITY_SAMPLES: usize = 10_000;
/// Largest order for which [`all_subgroups`] runs by default.
pub const DEFAULT_ENUMERATION_BOUND: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub associativity_bound: usize,
    pub associativity_samples: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            associativity_bound: DEFAULT_ASSOCIATIVITY_BOUND,
            associativity_samples: DEFAULT_ASSOCIATIVITY_SAMPLES,
        }
    }
}

/// How to build a group. The string form is what the CLI accepts:
/// `cyclic:12`, `dihedral:6`, `product:cyclic:2,cyclic:4`, `table:<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(Vec<Vec<usize>>),
    TableFile(String),
}

impl GroupSpec {
    pub fn parse(input: &str) -> Result<Self> {
        let mut p = SpecParser { s: input, pos: 0 };
        let spec = p.spec()?;
        if p.pos != input.len() {
            return Err(Error::Parse {
                position: p.pos,
                message: format!("unexpected trailing input {:?}", &input[p.pos..]),
            });
        }
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Product(a, b) => {
                let wrap = |s: &GroupSpec| match s {
                    GroupSpec::Product(..) => format!("({s})"),
                    _ => s.to_string(),
                };
                write!(f, "product:{},{}", wrap(a), wrap(b))
            }
            GroupSpec::Table(rows) => write!(f, "table:<{}x{}>", rows.len(), rows.len()),
            GroupSpec::TableFile(p) => write!(f, "table:{p}"),
        }
    }
}

struct SpecParser<'a> {
    s: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn eat(&mut self, prefix: &str) -> bool {
        if self.s[self.pos..].starts_with(prefix) {
            self.pos += prefix.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        let rest = &self.s[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected a number");
        }
        let n = rest[..len]
            .parse()
            .or_else(|_| self.err("number out of range"))?;
        self.pos += len;
        Ok(n)
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        if self.eat("(") {
            let inner = self.spec()?;
            if !self.eat(")") {
                return self.err("expected ')'");
            }
            Ok(inner)
        } else if self.eat("cyclic:") {
            Ok(GroupSpec::Cyclic(self.number()?))
        } else if self.eat("dihedral:") {
            Ok(GroupSpec::Dihedral(self.number()?))
        } else if self.eat("product:") {
            let a = self.spec()?;
            if !self.eat(",") {
                return self.err("expected ',' between product factors");
            }
            let b = self.spec()?;
            Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
        } else if self.eat("table:") {
            let path = &self.s[self.pos..];
            if path.is_empty() {
                return self.err("expected a path after 'table:'");
            }
            self.pos = self.s.len();
            Ok(GroupSpec::TableFile(path.to_string()))
        } else {
            self.err("expected one of cyclic:, dihedral:, product:, table:")
        }
    }
}

/// A group of order `n` on the elements `0..n`.
///
/// Immutable after construction; lazily computed caches (element orders and
/// the subgroup lattice) use `OnceLock`, so a group can be shared freely
/// between threads.
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
    /// `table[a][b] == (a + b) mod n`, which enables rotation-based translates.
    cyclic_indexed: bool,
    element_orders: OnceLock<Vec<usize>>,
    lattice: OnceLock<Vec<BitSet>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

/// True when both handles denote the same group.
pub fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Builds the group described by `spec` with default options.
pub fn construct_group(spec: &GroupSpec) -> Result<Arc<FiniteGroup>> {
    FiniteGroup::construct(spec, BuildOptions::default())
}

impl FiniteGroup {
    pub fn construct(spec: &GroupSpec, opts: BuildOptions) -> Result<Arc<Self>> {
        match spec {
            GroupSpec::Cyclic(n) => Self::cyclic_with(*n, opts),
            GroupSpec::Dihedral(n) => Self::dihedral_with(*n, opts),
            GroupSpec::Product(a, b) => {
                let ga = Self::construct(a, opts)?;
                let gb = Self::construct(b, opts)?;
                Self::product_with(&ga, &gb, opts)
            }
            GroupSpec::Table(rows) => Self::from_rows(rows.clone(), "table".into(), None, opts),
            GroupSpec::TableFile(path) => Self::from_table_file(Path::new(path), opts),
        }
    }

    pub fn parse_and_construct(spec: &str) -> Result<Arc<Self>> {
        construct_group(&GroupSpec::parse(spec)?)
    }

    pub fn cyclic(n: usize) -> Result<Arc<Self>> {
        Self::cyclic_with(n, BuildOptions::default())
    }

    pub fn dihedral(n: usize) -> Result<Arc<Self>> {
        Self::dihedral_with(n, BuildOptions::default())
    }

    pub fn product(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>> {
        Self::product_with(a, b, BuildOptions::default())
    }

    fn cyclic_with(n: usize, opts: BuildOptions) -> Result<Arc<Self>> {
        if n == 0 {
            return arg("cyclic group order must be at least 1");
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            table.extend((0..n).map(|j| ((i + j) % n) as u32));
        }
        Self::from_flat(n, table, format!("cyclic:{n}"), None, opts)
    }

    /// Elements are ordered `e, r, ..., r^(n-1), s, sr, ..., sr^(n-1)`, with
    /// `r^n = s^2 = e` and `srs = r^-1`.
    fn dihedral_with(n: usize, opts: BuildOptions) -> Result<Arc<Self>> {
        if n < 3 {
            return arg("dihedral:n requires n >= 3");
        }
        let order = 2 * n;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let (sa, ia) = (a >= n, a % n);
                let (sb, ib) = (b >= n, b % n);
                // r^i s = s r^-i
                let prod = match (sa, sb) {
                    (false, false) => (ia + ib) % n,
                    (false, true) => n + (ib + n - ia) % n,
                    (true, false) => n + (ia + ib) % n,
                    (true, true) => (ib + n - ia) % n,
                };
                table.push(prod as u32);
            }
        }
        let labels = (0..order)
            .map(|g| {
                let (s, i) = (g >= n, g % n);
                let rot = match i {
                    0 => String::new(),
                    1 => "r".into(),
                    _ => format!("r^{i}"),
                };
                match (s, rot.is_empty()) {
                    (false, true) => "e".into(),
                    (false, false) => rot,
                    (true, _) => format!("s{rot}"),
                }
            })
            .collect();
        Self::from_flat(order, table, format!("dihedral:{n}"), Some(labels), opts)
    }

    /// Direct product; `(a, b)` has index `a * |B| + b`.
    fn product_with(a: &Arc<Self>, b: &Arc<Self>, opts: BuildOptions) -> Result<Arc<Self>> {
        let (na, nb) = (a.order, b.order);
        let order = na * nb;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let p = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
                table.push(p as u32);
            }
        }
        let labels = (0..order)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        let wrap = |g: &Self| {
            if g.name.starts_with("product:") {
                format!("({})", g.name)
            } else {
                g.name.clone()
            }
        };
        let name = format!("product:{},{}", wrap(a), wrap(b));
        Self::from_flat(order, table, name, Some(labels), opts)
    }

    /// Reads a Cayley table file: first line `n`, then `n` lines of `n`
    /// whitespace-separated indices. Element 0 must be the identity.
    pub fn from_table_file(path: &Path, opts: BuildOptions) -> Result<Arc<Self>> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let rows = parse_table_text(&text)?;
        if rows.first().and_then(|r| r.first()) != Some(&0) || rows.iter().enumerate().any(|(g, r)| r[0] != g || rows[0][g] != g)
        {
            return Err(Error::Construction {
                axiom: "identity",
                detail: "element 0 of a table file must be the identity".into(),
            });
        }
        Self::from_rows(rows, format!("table:{}", path.display()), None, opts)
    }

    pub fn from_rows(
        rows: Vec<Vec<usize>>,
        name: String,
        labels: Option<Vec<String>>,
        opts: BuildOptions,
    ) -> Result<Arc<Self>> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Construction {
                axiom: "nonempty",
                detail: "a group has at least one element".into(),
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Construction {
                    axiom: "square table",
                    detail: format!("row {i} has {} entries, expected {n}", row.len()),
                });
            }
            for &x in row {
                if x >= n {
                    return Err(Error::Construction {
                        axiom: "closure",
                        detail: format!("entry {x} in row {i} is not an element index"),
                    });
                }
                table.push(x as u32);
            }
        }
        Self::from_flat(n, table, name, labels, opts)
    }

    fn from_flat(
        order: usize,
        table: Vec<u32>,
        name: String,
        labels: Option<Vec<String>>,
        opts: BuildOptions,
    ) -> Result<Arc<Self>> {
        let at = |a: usize, b: usize| table[a * order + b] as usize;

        // Latin square
        let mut stamp = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                let x = at(a, b);
                if stamp[x] == a {
                    return Err(Error::Construction {
                        axiom: "latin square",
                        detail: format!("row {a} repeats {x}"),
                    });
                }
                stamp[x] = a;
            }
        }
        stamp.fill(usize::MAX);
        for b in 0..order {
            for a in 0..order {
                let x = at(a, b);
                if stamp[x] == b {
                    return Err(Error::Construction {
                        axiom: "latin square",
                        detail: format!("column {b} repeats {x}"),
                    });
                }
                stamp[x] = b;
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::Construction {
                axiom: "identity",
                detail: "no two-sided identity element".into(),
            })?;

        let mut inverses = vec![0; order];
        for (g, inv) in inverses.iter_mut().enumerate() {
            let h = (0..order).find(|&h| at(g, h) == identity).unwrap_or(identity);
            if at(h, g) != identity {
                return Err(Error::Construction {
                    axiom: "inverses",
                    detail: format!("element {g} has no two-sided inverse"),
                });
            }
            *inv = h;
        }

        let assoc_fail = |a: usize, b: usize, c: usize| Error::Construction {
            axiom: "associativity",
            detail: format!("({a}*{b})*{c} != {a}*({b}*{c})"),
        };
        if order <= opts.associativity_bound {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(assoc_fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed_0fa5_50c0);
            for _ in 0..opts.associativity_samples {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(assoc_fail(a, b, c));
                }
            }
        }

        let cyclic_indexed = (0..order).all(|a| at(a, 1 % order) == (a + 1) % order)
            && (0..order).all(|b| at(1 % order, b) == (b + 1) % order)
            && identity == 0;
        // Rows of 1 being +1 plus associativity pins down the rest only for a
        // genuinely associative table, so confirm on the full table when cheap.
        let cyclic_indexed = cyclic_indexed
            && (order > 1024 || (0..order).all(|a| (0..order).all(|b| at(a, b) == (a + b) % order)));

        if let Some(l) = &labels {
            if l.len() != order {
                return arg("label count does not match the group order");
            }
        }

        Ok(Arc::new(Self {
            name,
            order,
            table,
            identity,
            inverses,
            labels,
            cyclic_indexed,
            element_orders: OnceLock::new(),
            lattice: OnceLock::new(),
        }))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// The spec string this group was built from (or a description).
    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    /// Row `a` of the multiplication table: `b -> a*b`.
    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn is_cyclic_indexed(&self) -> bool {
        self.cyclic_indexed
    }

    pub fn is_abelian(&self) -> bool {
        self.cyclic_indexed
            || (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Element index for a label, falling back to a numeric index.
    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|x| x == label) {
                return Some(i);
            }
        }
        label.parse().ok().filter(|&i| i < self.order)
    }

    /// Order of each element.
    pub fn element_orders(&self) -> &[usize] {
        self.element_orders.get_or_init(|| {
            (0..self.order)
                .map(|g| {
                    let mut x = g;
                    let mut k = 1;
                    while x != self.identity {
                        x = self.mul(x, g);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    fn check(&self, g: usize) -> Result<()> {
        if g >= self.order {
            return arg(format!("element {g} out of range for a group of order {}", self.order));
        }
        Ok(())
    }

    /// Closure of `start` under right multiplication by `gens`.
    fn close(&self, mut members: BitSet, gens: &[usize]) -> BitSet {
        members.insert(self.identity);
        let mut work: Vec<usize> = members.iter().collect();
        while let Some(a) = work.pop() {
            for &g in gens {
                let p = self.mul(a, g);
                if members.insert(p) {
                    work.push(p);
                }
            }
        }
        members
    }

    /// Member sets of all subgroups, sorted by (size, members as a bitmask).
    fn lattice(&self) -> &[BitSet] {
        self.lattice.get_or_init(|| {
            let n = self.order;
            let trivial = BitSet::from_indices(n, [self.identity]);
            let mut seen: HashSet<BitSet> = HashSet::new();
            seen.insert(trivial.clone());
            let mut work = vec![(trivial, Vec::<usize>::new())];
            while let Some((sub, gens)) = work.pop() {
                for x in 0..n {
                    if sub.contains(x) {
                        continue;
                    }
                    let mut g2 = gens.clone();
                    g2.push(x);
                    let bigger = self.close(sub.clone(), &g2);
                    if !seen.contains(&bigger) {
                        seen.insert(bigger.clone());
                        work.push((bigger, g2));
                    }
                }
            }
            let mut all: Vec<BitSet> = seen.into_iter().collect();
            all.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
            all
        })
    }
}

fn parse_table_text(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or(Error::Parse {
        position: 0,
        message: "empty table file".into(),
    })?;
    let n: usize = first.trim().parse().map_err(|_| Error::Parse {
        position: 1,
        message: format!("expected the group order, found {first:?}"),
    })?;
    let mut rows = Vec::with_capacity(n);
    for (lineno, line) in lines {
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    position: lineno + 1,
                    message: format!("bad entry {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            position: 1,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    Ok(rows)
}

/// A subset verified to be closed under products and inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: GroupSubset,
    index: usize,
    normal: bool,
}

impl Subgroup {
    /// Wraps `members` after checking the subgroup axioms.
    pub fn from_subset(members: GroupSubset) -> Result<Self> {
        let g = members.group().clone();
        if !members.contains(g.identity()) {
            return arg("subset does not contain the identity");
        }
        for a in members.iter() {
            if !members.contains(g.inv(a)) {
                return arg(format!("subset is not closed under inverses ({a})"));
            }
            for b in members.iter() {
                if !members.contains(g.mul(a, b)) {
                    return arg(format!("subset is not closed under products ({a}*{b})"));
                }
            }
        }
        Ok(Self::trusted(members))
    }

    pub(crate) fn trusted(members: GroupSubset) -> Self {
        let g = members.group().clone();
        let size = members.len();
        let normal = (0..g.order()).all(|x| {
            let xi = g.inv(x);
            members.iter().all(|h| members.contains(g.mul(g.mul(x, h), xi)))
        });
        Self {
            index: g.order() / size,
            normal,
            members,
        }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::trusted(GroupSubset::from_indices(group, [group.identity()]).expect("identity in range"))
    }

    pub fn whole(group: &Arc<FiniteGroup>) -> Self {
        Self::trusted(GroupSubset::full(group))
    }

    pub fn members(&self) -> &GroupSubset {
        &self.members
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.members.group()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// `[G:H]`.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Normal in the whole group.
    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        same_group(self.group(), other.group()) && self.members.bits().is_subset(other.members.bits())
    }

    /// Whether `self` is normalised by every element of `over`.
    pub fn is_normal_in(&self, over: &Subgroup) -> bool {
        let g = self.group();
        over.members.iter().all(|x| {
            let xi = g.inv(x);
            self.members.iter().all(|k| self.members.contains(g.mul(g.mul(x, k), xi)))
        })
    }
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_generated(group: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Subgroup> {
    for &g in gens {
        group.check(g)?;
    }
    let start = BitSet::from_indices(group.order(), gens.iter().copied());
    let members = group.close(start, gens);
    Ok(Subgroup::trusted(GroupSubset::from_bits(group, members)?))
}

/// Every subgroup, sorted by (size, members bitmask).
pub fn all_subgroups(group: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    all_subgroups_bounded(group, DEFAULT_ENUMERATION_BOUND)
}

pub fn all_subgroups_bounded(group: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<Subgroup>> {
    if group.order() > bound {
        return Err(Error::Capacity {
            what: "subgroup enumeration over a group",
            size: group.order(),
            bound,
        });
    }
    group
        .lattice()
        .iter()
        .map(|b| Ok(Subgroup::trusted(GroupSubset::from_bits(group, b.clone())?)))
        .collect()
}

/// Index, normality and canonical coset representatives of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupProfile {
    pub index: usize,
    pub normal: bool,
    /// Least element of each right coset `Hg`, ascending.
    pub right_reps: Vec<usize>,
    /// Least element of each left coset `gH`, ascending.
    pub left_reps: Vec<usize>,
}

pub fn subgroup_profile(group: &Arc<FiniteGroup>, h: &Subgroup) -> Result<SubgroupProfile> {
    if !same_group(group, h.group()) {
        return arg("subgroup belongs to a different group");
    }
    let n = group.order();
    let reps = |mul: &dyn Fn(usize, usize) -> usize| {
        let mut seen = BitSet::new(n);
        let mut out = Vec::new();
        for g in 0..n {
            if seen.contains(g) {
                continue;
            }
            out.push(g);
            for x in h.members().iter() {
                seen.insert(mul(x, g));
            }
        }
        out
    };
    Ok(SubgroupProfile {
        index: h.index(),
        normal: h.is_normal(),
        right_reps: reps(&|x, g| group.mul(x, g)),
        left_reps: reps(&|x, g| group.mul(g, x)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_twelve() {
        let g = FiniteGroup::cyclic(12).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(5), 7);
        assert!(g.is_cyclic_indexed());
    }

    #[test]
    fn dihedral_three_is_nonabelian() {
        let g = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(g.order(), 6);
        let (r, s) = (1, 3);
        assert_ne!(g.mul(r, s), g.mul(s, r));
        assert!(!g.is_abelian());
        assert_eq!(g.label(4), "sr");
        assert_eq!(g.mul(s, r), 4);
    }

    #[test]
    fn klein_four_is_exponent_two() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let v = FiniteGroup::product(&c2, &c2).unwrap();
        assert_eq!(v.order(), 4);
        assert!((0..4).all(|g| v.inv(g) == g));
        assert!(!v.is_cyclic_indexed());
    }

    #[test]
    fn rejects_bad_tables() {
        let not_latin = vec![vec![0, 1], vec![1, 1]];
        let err = FiniteGroup::from_rows(not_latin, "t".into(), None, BuildOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Construction { axiom: "latin square", .. }));

        // A Latin square with identity 0 that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_rows(loop5, "t".into(), None, BuildOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Construction { axiom: "associativity", .. }), "{err:?}");

        let no_identity = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        let err = FiniteGroup::from_rows(no_identity, "t".into(), None, BuildOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Construction { axiom: "identity", .. }));
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["cyclic:12", "dihedral:6", "product:cyclic:2,cyclic:4", "product:(product:cyclic:2,cyclic:2),cyclic:3"] {
            let spec = GroupSpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s);
        }
        let nested = GroupSpec::parse("product:product:cyclic:2,cyclic:2,cyclic:3").unwrap();
        assert_eq!(construct_group(&nested).unwrap().order(), 12);
        assert!(GroupSpec::parse("cyclic:").is_err());
        assert!(GroupSpec::parse("dihedral:4x").is_err());
    }

    #[test]
    fn generated_subgroups() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let h = subgroup_generated(&g, &[4]).unwrap();
        assert_eq!(h.members().to_vec(), vec![0, 4, 8]);
        assert_eq!(h.index(), 4);
        let t = subgroup_generated(&g, &[]).unwrap();
        assert_eq!(t.members().to_vec(), vec![0]);
        assert_eq!(t.index(), 12);
        assert!(subgroup_generated(&g, &[12]).is_err());

        let d3 = FiniteGroup::dihedral(3).unwrap();
        let w = subgroup_generated(&d3, &[3, 1]).unwrap();
        assert_eq!(w.order(), 6);
        assert_eq!(w.index(), 1);
    }

    #[test]
    fn subgroup_counts() {
        let count = |g: &Arc<FiniteGroup>| all_subgroups(g).unwrap().len();
        assert_eq!(count(&FiniteGroup::cyclic(6).unwrap()), 4);
        assert_eq!(count(&FiniteGroup::cyclic(12).unwrap()), 6);
        let sizes: Vec<usize> = all_subgroups(&FiniteGroup::cyclic(6).unwrap())
            .unwrap()
            .iter()
            .map(Subgroup::order)
            .collect();
        assert_eq!(sizes, vec![1, 2, 3, 6]);
    }

    /// Independent oracle: every subset of D3 that is closed under the table.
    #[test]
    fn dihedral_three_subgroups_by_brute_force() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let n = g.order();
        let mut brute = Vec::new();
        for mask in 1u64..(1 << n) {
            let has = |x: usize| mask >> x & 1 == 1;
            if !has(0) {
                continue;
            }
            let closed = (0..n).filter(|&a| has(a)).all(|a| (0..n).filter(|&b| has(b)).all(|b| has(g.mul(a, b))));
            if closed {
                brute.push(mask);
            }
        }
        let found: Vec<u64> = all_subgroups(&g)
            .unwrap()
            .iter()
            .map(|s| s.members().bits().to_mask().unwrap())
            .collect();
        let mut sorted = brute.clone();
        sorted.sort_by_key(|m| (m.count_ones(), *m));
        assert_eq!(found, sorted);
        assert_eq!(found.len(), 6);
        let sizes: Vec<u32> = found.iter().map(|m| m.count_ones()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let g = FiniteGroup::cyclic(70).unwrap();
        assert!(matches!(all_subgroups(&g), Err(Error::Capacity { .. })));
        assert_eq!(all_subgroups_bounded(&g, 70).unwrap().len(), 8);
    }

    #[test]
    fn profiles() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let h = subgroup_generated(&g, &[2]).unwrap();
        let p = subgroup_profile(&g, &h).unwrap();
        assert_eq!(p.index, 2);
        assert!(p.normal);
        assert_eq!(p.right_reps, vec![0, 1]);

        let d3 = FiniteGroup::dihedral(3).unwrap();
        let s = subgroup_generated(&d3, &[3]).unwrap();
        let p = subgroup_profile(&d3, &s).unwrap();
        assert_eq!(p.index, 3);
        assert!(!p.normal);
        // r s r^-1 is a reflection other than s.
        let conj = d3.mul(d3.mul(1, 3), d3.inv(1));
        assert!(!s.contains(conj));

        let r = subgroup_generated(&d3, &[1]).unwrap();
        let p = subgroup_profile(&d3, &r).unwrap();
        assert_eq!(p.index, 2);
        assert!(p.normal);

        assert!(subgroup_profile(&g, &r).is_err());
    }

    #[test]
    fn table_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("mincomp-table-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c3.txt");
        std::fs::write(&path, "3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
        let spec = GroupSpec::parse(&format!("table:{}", path.display())).unwrap();
        let g = construct_group(&spec).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_cyclic_indexed());
        std::fs::write(&path, "2\n1 0\n0 1\n").unwrap();
        assert!(construct_group(&spec).is_err());
    }
}
