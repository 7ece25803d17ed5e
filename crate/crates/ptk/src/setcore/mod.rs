//! Finite sets, truncated infinite sets and small ordinals.

mod finset;
mod ordinal;
mod window;

pub use finset::{initial_segment, parse_set_list, set_quotient, FinSet};
pub use ordinal::{ord_add, OrdinalCNF};
pub use window::{apply_set, Window};
