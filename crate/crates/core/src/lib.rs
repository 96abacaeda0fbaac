//! Minimal complements in finite groups and structured subsets of the integers.
//!
//! The crate has three layers:
//!
//! * [`group`] and [`subset`]: finite groups given by Cayley tables, dense
//!   subsets, product sets, stabilizers and coset decompositions.
//! * [`complement`] and [`oracle`]: complement predicates, greedy
//!   minimalization and an exhaustive search that decides whether a set is a
//!   minimal complement to anything.
//! * [`certificate`], [`verdict`] and [`zset`]: checkers for sufficient
//!   conditions of non-minimality, producing serializable certificates, for
//!   finite groups and for periodic-plus-sporadic subsets of the integers.

pub mod bitset;
pub mod certificate;
pub mod complement;
pub mod error;
pub mod group;
pub mod oracle;
pub mod subset;
pub mod sweep;
pub mod verdict;
pub mod zset;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use group::{
    all_subgroups, construct_group, subgroup_generated, subgroup_profile, FiniteGroup, GroupSpec, Subgroup,
    SubgroupProfile,
};
pub use subset::{
    coset_profile, coset_union_equivalences, inverse_set, left_stabilizer, product_set, symmetric_product_complement,
    translate, CosetProfile, EquivalenceReport, GroupSubset, Side,
};
pub use complement::{
    cardinality_obstruction, enumerate_minimal_complements, is_complement, is_left_complement,
    is_minimal_complement_to, is_right_complement, lambda_quotient, minimalize, ObstructionReport, RelativeQuotient,
};
pub use oracle::{oracle_minimality_status, OracleConfig, OracleReport, OracleSide, OracleStatus};
pub use certificate::{
    check_assumption, check_cardinality, check_prop_coset, check_prop_fini, check_thm_cminusc,
    check_thm_f_avoids, check_thm_q_finite, check_thm_single_coset, evaluate_difference_condition,
    run_all_checkers, AssumptionResult, Certificate, Decomposition, DifferenceSetEvaluation, Hypothesis,
    Subject, Tag, TheoremId, TheoremInstance, Translation, Verdict,
};
pub use verdict::{verdict, VerdictOptions, VerdictReport};
pub use zset::{
    finite_quotient, parse_structured, remark_family, robust_family, z_assumption, z_check, z_check_all,
    z_check_cofinite, FiniteQuotient, Membership, StructuredZSet, ZSetSpec,
};
pub use sweep::SweepSummary;
