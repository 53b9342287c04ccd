//! Fixtures shared by the benchmarks.

use code_ent_core::codes::{random_code, toric_x_code};
use code_ent_core::LinearCode;

/// Toric codes and random codes of growing length.
pub fn fixtures() -> Vec<(String, LinearCode)> {
    let mut out = Vec::new();
    for l in [2, 3, 4, 6] {
        out.push((format!("toric-L{l}"), toric_x_code(l).expect("L >= 1")));
    }
    for n in [16, 32, 64, 128] {
        out.push((
            format!("random-n{n}-k{}", n / 2),
            random_code(n, n / 2, 1).expect("k <= n"),
        ));
    }
    out
}
