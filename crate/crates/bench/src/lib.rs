//! Fixtures shared by the criterion benches.

use ergokit::{random_separable, BipartiteSystem};

/// A fixed separable state per dimension pair, so runs are comparable.
pub fn fixture(d1: usize, d2: usize) -> BipartiteSystem {
    random_separable(d1, d2, d1 * d2, 0xbe7c).expect("valid fixture dimensions")
}
