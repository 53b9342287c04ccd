//! Builtin code families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// `{0...0, 1...1}`; its code state is the GHZ state.
pub fn repetition(n: usize) -> Result<LinearCode> {
    require(n >= 1, || "repetition code needs n >= 1".into())?;
    let mut g = BitMatrix::zeros(1, n);
    for c in 0..n {
        g.set(0, c, true);
    }
    Ok(LinearCode::from_matrix(&g))
}

/// All of `F_2^n`.
pub fn full(n: usize) -> Result<LinearCode> {
    Ok(LinearCode::from_matrix(&BitMatrix::identity(n)))
}

/// `{0...0}` as a code of length `n`.
pub fn zero(n: usize) -> Result<LinearCode> {
    Ok(LinearCode::from_matrix(&BitMatrix::zeros(0, n)))
}

/// Words of even Hamming weight, dimension `n - 1`.
pub fn even_weight(n: usize) -> Result<LinearCode> {
    require(n >= 1, || "even-weight code needs n >= 1".into())?;
    let mut g = BitMatrix::zeros(n - 1, n);
    for r in 0..n - 1 {
        g.set(r, r, true);
        g.set(r, r + 1, true);
    }
    Ok(LinearCode::from_matrix(&g))
}

/// The `[7, 4, 3]` Hamming code.
pub fn hamming_7_4() -> LinearCode {
    LinearCode::parse(&["1000110", "0100101", "0010011", "0001111"], 7)
        .expect("constant generator is well formed")
}

/// X-type (vertex) stabilizer code of the `L x L` toric code.
///
/// Qubits sit on the `2L^2` edges of the periodic lattice. Horizontal edge
/// `(i, j) -> (i, j+1)` has index `i*L + j`; vertical edge `(i, j) -> (i+1, j)`
/// has index `L^2 + i*L + j`. Vertex `(i, j)` gives generator row `i*L + j`
/// with ones on its four incident edges. The rows sum to zero, so the
/// dimension is `L^2 - 1`.
pub fn toric_x_code(l: usize) -> Result<LinearCode> {
    require(l >= 1, || "toric code needs L >= 1".into())?;
    let n = 2 * l * l;
    let horizontal = |i: usize, j: usize| (i % l) * l + (j % l);
    let vertical = |i: usize, j: usize| l * l + (i % l) * l + (j % l);
    let mut g = BitMatrix::zeros(l * l, n);
    for i in 0..l {
        for j in 0..l {
            let row = i * l + j;
            for e in [
                horizontal(i, j),
                horizontal(i, j + l - 1),
                vertical(i, j),
                vertical(i + l - 1, j),
            ] {
                // Mod-2 incidence: a doubled edge (L = 1) cancels.
                let cur = g.get(row, e);
                g.set(row, e, !cur);
            }
        }
    }
    Ok(LinearCode::from_matrix(&g))
}

/// A uniformly sampled `k`-dimensional code of length `n`, deterministic in `seed`.
pub fn random_code(n: usize, k: usize, seed: u64) -> Result<LinearCode> {
    require(k <= n, || {
        format!("random code needs k <= n (got n={n}, k={k})")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = BitMatrix::zeros(k, n);
        for r in 0..k {
            for c in 0..n {
                if rng.gen::<bool>() {
                    g.set(r, c, true);
                }
            }
        }
        if g.rank() == k {
            return Ok(LinearCode::from_matrix(&g));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_dimensions() {
        assert_eq!(repetition(3).unwrap().dimension(), 1);
        assert_eq!(full(4).unwrap().dimension(), 4);
        assert_eq!(zero(4).unwrap().dimension(), 0);
        assert_eq!(even_weight(5).unwrap().dimension(), 4);
        assert_eq!(even_weight(1).unwrap().dimension(), 0);
        assert_eq!(hamming_7_4().dimension(), 4);
        assert!(repetition(0).is_err());
        assert!(toric_x_code(0).is_err());
        assert!(random_code(3, 4, 0).is_err());
    }

    #[test]
    fn toric_dimensions() {
        for l in 1..=5 {
            let c = toric_x_code(l).unwrap();
            assert_eq!(c.len(), 2 * l * l);
            assert_eq!(c.dimension(), l * l - 1, "L = {l}");
        }
    }

    #[test]
    fn toric_rows_have_weight_four() {
        let c = toric_x_code(3).unwrap();
        // Every vertex operator is in the code and touches four edges.
        for i in 0..3 {
            for j in 0..3 {
                let mut v = crate::gf2::BitVec::zeros(18);
                for e in [
                    i * 3 + j,
                    i * 3 + (j + 2) % 3,
                    9 + i * 3 + j,
                    9 + ((i + 2) % 3) * 3 + j,
                ] {
                    v.set(e, true);
                }
                assert_eq!(v.weight(), 4);
                assert!(c.contains(&v).unwrap());
            }
        }
    }

    #[test]
    fn random_code_is_deterministic() {
        let a = random_code(6, 3, 7).unwrap();
        let b = random_code(6, 3, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dimension(), 3);
        for k in 0..=9 {
            assert_eq!(random_code(9, k, 11).unwrap().dimension(), k);
        }
    }
}
