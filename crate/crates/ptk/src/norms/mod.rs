//! Norms of the spaces built on plegma families and their relatives.

mod brute;
mod eval;
pub mod mixed;
pub mod numeric;
mod packing;
mod property_p;
mod space;
pub mod tsirelson;

pub use brute::{brute_force_norm, BRUTE_MAX_SUPPORT};
pub use eval::{
    allowable_set, cl_index, evaluate_witness, norm, norm_of, witness_matches, BaseWitness, Method, NormOptions,
    NormResult, ProjectionLevel, Witness, DEFAULT_BUDGET,
};
pub use mixed::{MixedNode, MixedRules, RulesReport};
pub use numeric::{parse_rational, Real, Surd, Q};
pub use property_p::{property_p_witness, PropertyPWitness};
pub use space::{basis_cmp, QpBase, QpParams, SpaceDesc, SpaceVec};
pub use tsirelson::TreeNode;
