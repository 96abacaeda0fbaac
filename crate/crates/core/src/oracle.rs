//! Exhaustive decision of minimal-complement status in small groups.
//!
//! `C` is a minimal left complement to something iff some nonempty `B` has
//! `C·B = G` with every `c ∈ C` the sole cover of some element. Candidates
//! `B` are visited in increasing bitmask order by a depth-first search that
//! fixes bits from the most significant down, trying 0 before 1. A branch is
//! abandoned as soon as the still-undecided low bits cannot complete the
//! cover; its candidates are counted as examined all the same.
//!
//! The search space is cut into chunks by the top bits of `B`. Workers take
//! chunks independently; the report only ever depends on the chunks up to the
//! first one holding a witness, so serial and parallel runs agree exactly.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::subset::{GroupSubset, Side};

pub const DEFAULT_ORACLE_BOUND: usize = 20;
/// No configuration may raise the bound past this.
pub const HARD_ORACLE_CAP: usize = 28;
const DEFAULT_CHUNK_BITS: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleSide {
    Left,
    Right,
    /// Minimal if minimal on either side; not minimal only if neither.
    Both,
}

impl OracleSide {
    pub fn sides(self) -> &'static [Side] {
        match self {
            OracleSide::Left => &[Side::Left],
            OracleSide::Right => &[Side::Right],
            OracleSide::Both => &[Side::Left, Side::Right],
        }
    }
}

impl From<Side> for OracleSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => OracleSide::Left,
            Side::Right => OracleSide::Right,
        }
    }
}

impl std::str::FromStr for OracleSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(OracleSide::Left),
            "right" => Ok(OracleSide::Right),
            "both" => Ok(OracleSide::Both),
            _ => arg(format!("unknown side {s:?}; expected left, right or both")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest group order the oracle accepts.
    pub bound: usize,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub workers: usize,
    /// The search is split into `2^chunk_bits` chunks (fewer for tiny groups).
    pub chunk_bits: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            bound: DEFAULT_ORACLE_BOUND,
            workers: 1,
            chunk_bits: DEFAULT_CHUNK_BITS,
        }
    }
}

impl OracleConfig {
    pub fn with_bound(bound: usize) -> Self {
        Self {
            bound,
            ..Self::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum OracleStatus {
    /// A minimal complement to `witness`, the least such partner in
    /// enumeration order on the first side that has one.
    Minimal { witness: Vec<usize>, side: Side },
    NotMinimal,
    /// Cannot happen for a nonempty subset of a finite group (`B = G` always
    /// works); kept so the status type is total.
    NotAComplementToAnything,
}

impl OracleStatus {
    pub fn is_minimal(&self) -> bool {
        matches!(self, OracleStatus::Minimal { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SideSearch {
    pub side: Side,
    pub witness: Option<Vec<usize>>,
    /// Nonempty candidates examined, pruned ones included.
    pub searched: u64,
    /// Candidates that reached the full minimality test.
    pub evaluated: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleReport {
    pub group: String,
    pub order: usize,
    pub subject: Vec<usize>,
    pub side: OracleSide,
    pub status: OracleStatus,
    pub searched: u64,
    pub evaluated: u64,
    pub per_side: Vec<SideSearch>,
    /// Wall-clock time; left out of serialized reports so they are
    /// reproducible byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for OracleReport {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.order == other.order
            && self.subject == other.subject
            && self.side == other.side
            && self.status == other.status
            && self.searched == other.searched
            && self.evaluated == other.evaluated
            && self.per_side == other.per_side
    }
}

impl Eq for OracleReport {}

/// Decides whether `C` is a minimal complement to some subset, on the
/// requested side(s).
pub fn oracle_minimality_status(c: &GroupSubset, side: OracleSide, config: &OracleConfig) -> Result<OracleReport> {
    let start = Instant::now();
    let g = c.group();
    let n = g.order();
    if config.bound > HARD_ORACLE_CAP {
        return Err(Error::Capacity {
            what: "oracle bound",
            size: config.bound,
            bound: HARD_ORACLE_CAP,
        });
    }
    if n > config.bound {
        return Err(Error::Capacity {
            what: "oracle search over a group",
            size: n,
            bound: config.bound,
        });
    }
    if c.is_empty() {
        return arg("the oracle needs a nonempty set");
    }
    let mut per_side = Vec::new();
    for &s in side.sides() {
        let tables = SearchTables::new(c, s);
        per_side.push(tables.run(config));
    }
    let status = per_side
        .iter()
        .find_map(|r| {
            r.witness.clone().map(|w| OracleStatus::Minimal {
                witness: w,
                side: r.side,
            })
        })
        .unwrap_or(OracleStatus::NotMinimal);
    Ok(OracleReport {
        group: g.name().to_string(),
        order: n,
        subject: c.to_vec(),
        side,
        status,
        searched: per_side.iter().map(|r| r.searched).sum(),
        evaluated: per_side.iter().map(|r| r.evaluated).sum(),
        per_side,
        elapsed: start.elapsed(),
    })
}

const NO_SOURCE: u8 = u8::MAX;

struct SearchTables {
    side: Side,
    n: usize,
    full: u64,
    subject: u64,
    /// `cols[b]` is the part of `G` covered by `b`: `C·b` or `b·C`.
    cols: Vec<u64>,
    /// `prefix[i]` is the union of `cols[0..i]`.
    prefix: Vec<u64>,
    /// `source[b * n + g]` is the `c` with `g = c·b` (or `b·c`), if any.
    source: Vec<u8>,
}

#[derive(Default, Clone, Copy)]
struct ChunkResult {
    /// Candidates (the empty set included) accounted for, up to and
    /// including the witness when there is one.
    accounted: u64,
    evaluated: u64,
    witness: Option<u64>,
}

impl SearchTables {
    fn new(c: &GroupSubset, side: Side) -> Self {
        let g = c.group();
        let n = g.order();
        let full = if n == 64 { !0 } else { (1u64 << n) - 1 };
        let mut cols = vec![0u64; n];
        let mut source = vec![NO_SOURCE; n * n];
        for b in 0..n {
            for x in c.iter() {
                let y = match side {
                    Side::Left => g.mul(x, b),
                    Side::Right => g.mul(b, x),
                };
                cols[b] |= 1 << y;
                source[b * n + y] = x as u8;
            }
        }
        let mut prefix = vec![0u64; n + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i] | cols[i];
        }
        Self {
            side,
            n,
            full,
            subject: c.to_mask().expect("oracle groups fit in one word"),
            cols,
            prefix,
            source,
        }
    }

    fn run(&self, config: &OracleConfig) -> SideSearch {
        let t = config.chunk_bits.min(self.n as u32);
        let chunks = 1u64 << t;
        let results: Vec<ChunkResult> = if config.workers <= 1 {
            let mut out = Vec::new();
            for j in 0..chunks {
                let r = self.run_chunk(j, t);
                out.push(r);
                if r.witness.is_some() {
                    break;
                }
            }
            out
        } else {
            let best = AtomicU64::new(u64::MAX);
            let pool = thread_pool(config.workers);
            let raw: Vec<Option<ChunkResult>> = pool.install(|| {
                (0..chunks)
                    .into_par_iter()
                    .map(|j| {
                        if j > best.load(Ordering::Relaxed) {
                            return None;
                        }
                        let r = self.run_chunk(j, t);
                        if r.witness.is_some() {
                            best.fetch_min(j, Ordering::Relaxed);
                        }
                        Some(r)
                    })
                    .collect()
            });
            let winner = best.load(Ordering::Relaxed);
            raw.into_iter()
                .take(winner.saturating_add(1).min(chunks) as usize)
                .map(|r| r.expect("chunks before the first witness always run"))
                .collect()
        };
        let accounted: u64 = results.iter().map(|r| r.accounted).sum();
        SideSearch {
            side: self.side,
            witness: results
                .last()
                .and_then(|r| r.witness)
                .map(|w| (0..self.n).filter(|&i| w >> i & 1 == 1).collect()),
            searched: accounted - 1,
            evaluated: results.iter().map(|r| r.evaluated).sum(),
        }
    }

    fn run_chunk(&self, j: u64, t: u32) -> ChunkResult {
        let low = self.n - t as usize;
        let hi = j << low;
        let (mut once, mut twice) = (0u64, 0u64);
        let mut rest = hi;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice |= once & self.cols[b];
            once |= self.cols[b];
        }
        let mut acc = ChunkResult::default();
        acc.witness = self.descend(low, hi, once, twice, &mut acc);
        acc
    }

    fn descend(&self, free: usize, mask: u64, once: u64, twice: u64, acc: &mut ChunkResult) -> Option<u64> {
        if (once | self.prefix[free]) != self.full {
            acc.accounted += 1 << free;
            return None;
        }
        if free == 0 {
            acc.accounted += 1;
            acc.evaluated += 1;
            return self.is_minimal_leaf(mask, once, twice).then_some(mask);
        }
        let i = free - 1;
        if let Some(w) = self.descend(i, mask, once, twice, acc) {
            return Some(w);
        }
        let col = self.cols[i];
        self.descend(i, mask | 1 << i, once | col, twice | (once & col), acc)
    }

    /// `B` covers `G`; check every element of `C` is the only cover of
    /// something.
    fn is_minimal_leaf(&self, mask: u64, once: u64, twice: u64) -> bool {
        debug_assert_eq!(once, self.full);
        let unique = once & !twice;
        let mut marked = 0u64;
        let mut bs = mask;
        while bs != 0 {
            let b = bs.trailing_zeros() as usize;
            bs &= bs - 1;
            let mut hit = self.cols[b] & unique;
            let row = &self.source[b * self.n..(b + 1) * self.n];
            while hit != 0 {
                let y = hit.trailing_zeros() as usize;
                hit &= hit - 1;
                marked |= 1 << row[y];
            }
            if marked == self.subject {
                return true;
            }
        }
        marked == self.subject
    }
}

pub(crate) fn thread_pool(workers: usize) -> Arc<rayon::ThreadPool> {
    static POOLS: OnceLock<Mutex<HashMap<usize, Arc<rayon::ThreadPool>>>> = OnceLock::new();
    let pools = POOLS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = pools.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(workers)
        .or_insert_with(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .expect("thread pool construction"),
            )
        })
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complement::{is_complement, is_minimal_complement_to};
    use crate::group::FiniteGroup;

    fn set(g: &Arc<FiniteGroup>, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_indices(g, xs.iter().copied()).unwrap()
    }

    /// Reference decision: scan every nonempty mask in increasing order and
    /// test it against the definition directly.
    fn naive_first_witness(c: &GroupSubset, side: Side) -> Option<u64> {
        let g = c.group();
        (1u64..1 << g.order()).find(|&m| {
            let b = GroupSubset::from_mask(g, m).unwrap();
            is_minimal_complement_to(c, &b, side).unwrap()
        })
    }

    #[test]
    fn even_residues_mod_twelve_are_not_minimal() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let r = oracle_minimality_status(&set(&g, &[2, 4, 6, 8, 10]), OracleSide::Both, &OracleConfig::default()).unwrap();
        assert_eq!(r.status, OracleStatus::NotMinimal);
        assert_eq!(r.per_side.len(), 2);
        assert!(r.per_side.iter().all(|s| s.searched == 4095));
    }

    #[test]
    fn tiling_witness() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let r = oracle_minimality_status(&set(&g, &[0, 6]), OracleSide::Left, &OracleConfig::default()).unwrap();
        let OracleStatus::Minimal { witness, .. } = &r.status else {
            panic!("expected a witness")
        };
        let b = set(&g, witness);
        assert!(is_minimal_complement_to(&set(&g, &[0, 6]), &b, Side::Left).unwrap());
        let mask = b.to_mask().unwrap();
        assert_eq!(Some(mask), naive_first_witness(&set(&g, &[0, 6]), Side::Left));
        assert_eq!(r.searched, mask);
    }

    #[test]
    fn identity_is_minimal_with_everything() {
        for g in [FiniteGroup::cyclic(5).unwrap(), FiniteGroup::dihedral(3).unwrap()] {
            let r = oracle_minimality_status(&set(&g, &[0]), OracleSide::Both, &OracleConfig::default()).unwrap();
            match r.status {
                OracleStatus::Minimal { witness, side } => {
                    assert_eq!(side, Side::Left);
                    assert_eq!(witness.len(), g.order());
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn agrees_with_naive_scan_on_small_groups() {
        for g in [FiniteGroup::cyclic(6).unwrap(), FiniteGroup::dihedral(3).unwrap()] {
            for m in 1u64..1 << g.order() {
                let c = GroupSubset::from_mask(&g, m).unwrap();
                for side in [Side::Left, Side::Right] {
                    let r = oracle_minimality_status(&c, side.into(), &OracleConfig::default()).unwrap();
                    let naive = naive_first_witness(&c, side);
                    let got = r.per_side[0].witness.as_ref().map(|w| set(&g, w).to_mask().unwrap());
                    assert_eq!(got, naive, "{} C={m:#b} {side}", g.name());
                    let expected_searched = naive.unwrap_or((1 << g.order()) - 1);
                    assert_eq!(r.searched, expected_searched);
                    if let Some(w) = got {
                        assert!(is_complement(&c, &GroupSubset::from_mask(&g, w).unwrap(), side).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let g = FiniteGroup::cyclic(12).unwrap();
        for xs in [&[2usize, 4, 6, 8, 10][..], &[0, 6], &[0, 1, 3], &[1, 2, 3, 4, 5, 6, 7, 8, 9]] {
            let c = set(&g, xs);
            let serial = oracle_minimality_status(&c, OracleSide::Both, &OracleConfig::default()).unwrap();
            for workers in [2, 3] {
                for chunk_bits in [0, 3, 8] {
                    let cfg = OracleConfig {
                        workers,
                        chunk_bits,
                        ..OracleConfig::default()
                    };
                    let par = oracle_minimality_status(&c, OracleSide::Both, &cfg).unwrap();
                    assert_eq!(par, serial);
                    assert_eq!(serde_json::to_string(&par).unwrap(), serde_json::to_string(&serial).unwrap());
                }
            }
        }
    }

    #[test]
    fn capacity_and_arguments() {
        let g = FiniteGroup::cyclic(21).unwrap();
        let c = set(&g, &[0]);
        assert!(matches!(
            oracle_minimality_status(&c, OracleSide::Left, &OracleConfig::default()),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            oracle_minimality_status(&c, OracleSide::Left, &OracleConfig::with_bound(29)),
            Err(Error::Capacity { .. })
        ));
        assert!(oracle_minimality_status(&c, OracleSide::Left, &OracleConfig::with_bound(21)).is_ok());
        assert!(oracle_minimality_status(&GroupSubset::empty(&g), OracleSide::Left, &OracleConfig::with_bound(21)).is_err());
    }
}
