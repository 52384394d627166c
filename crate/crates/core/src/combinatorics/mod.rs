//! Permutation and necklace combinatorics for Schubert problems on flag
//! manifolds.

mod flag;
mod necklace;
mod permutation;
mod pieri;

pub use flag::{validate_schubert_data, FlagType, SchubertData};
pub use necklace::{enumerate_necklaces, necklace_canonical, parse_labels, Label, Necklace};
pub use permutation::{DescentData, Permutation};
pub use pieri::{ai_bruhat_covers, chain_count, pieri_lambda};
