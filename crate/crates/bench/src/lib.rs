//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use mincomp::sweep::groups_up_to_sixteen;
use mincomp::{FiniteGroup, GroupSubset};

/// Roughly half the elements, picked by a fixed hash of the index.
pub fn scattered(g: &Arc<FiniteGroup>, salt: u64) -> GroupSubset {
    let pick = |x: usize| (x as u64 ^ salt).wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 63 == 1;
    GroupSubset::from_indices(g, (0..g.order()).filter(|&x| pick(x))).expect("indices are in range")
}

/// The groups of order 16 used for oracle timings.
pub fn order_sixteen() -> Vec<Arc<FiniteGroup>> {
    groups_up_to_sixteen()
        .expect("built-in groups")
        .into_iter()
        .filter(|g| g.order() == 16)
        .collect()
}

/// `G` minus the identity: never minimal, so the oracle scans every candidate.
pub fn punctured(g: &Arc<FiniteGroup>) -> GroupSubset {
    let mut c = GroupSubset::full(g);
    c.remove(g.identity());
    c
}
