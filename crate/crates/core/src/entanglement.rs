//! Injective norm and geometric entanglement of code states.
//!
//! For a code `C` of dimension `k`, `j(C)` is the least `j` such that some
//! partition `A | B` of the coordinates has `rank(G_A) = k` and
//! `rank(G_B) = k - j`. The code state `|C>` then has injective norm
//! `2^{-(k-j)/2}` and geometric entanglement `k - j`.
//!
//! `k - j(C)` is the size of a maximum common independent set of the column
//! matroid of `G` and its dual, which [`j_of_code`] computes with
//! [`matroid_intersection`]. The min-max certificate of that run also yields
//! a shortened code `C0` with `2 dim C0 - len C0 = j`, which certifies the
//! matching lower bound. The `*_brute_force` functions evaluate the
//! definitions directly and serve as oracles.

use serde::{Serialize, Serializer};

use crate::codes::{complement, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::XorBasis;
use crate::matroid::{
    greedy_basis, matroid_intersection, DualMatroid, LinearColumnMatroid, Matroid,
};

/// Largest code length accepted by the exhaustive oracles.
pub const ORACLE_LIMIT: usize = 20;

/// `j(C)` with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JWitness {
    pub j: usize,
    /// Information set `A`: `rank(G_A) = k` and `rank(G_Abar) = k - j`.
    pub witness_partition: Vec<usize>,
    /// Minimizer `S` of `rank1(S) + rank2(Sbar)` from the intersection run.
    pub cover: Vec<usize>,
    /// Maximum common independent set, of size `k - j`.
    pub common_set: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaWitness {
    pub delta: usize,
    pub best_support: Vec<usize>,
}

/// Shortened code certifying the lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortenedWitness {
    pub support: Vec<usize>,
    pub code: LinearCode,
}

fn rank_of(m: &LinearColumnMatroid, set: &[usize]) -> usize {
    m.rank(set)
}

/// Computes `j(C)` by matroid intersection of the column matroid of the
/// generator with its dual.
pub fn j_of_code(c: &LinearCode) -> Result<JWitness> {
    let n = c.len();
    let k = c.dimension();
    let primal = LinearColumnMatroid::new(c.generator());
    let dual = DualMatroid::new(&primal);
    let inter = matroid_intersection(&primal, &dual)?;
    let j = k - inter.size();

    // The common set is co-independent, so its complement spans; any basis
    // inside the complement is an information set whose complement contains
    // the common set.
    let avail = complement(&inter.common_set, n);
    let info_set = greedy_basis(&primal, &avail);
    let rest = complement(&info_set, n);
    let (ra, rb) = (rank_of(&primal, &info_set), rank_of(&primal, &rest));
    if ra != k || rb != k - j {
        return Err(Error::CrossCheck(format!(
            "witness partition has ranks ({ra}, {rb}), expected ({k}, {})",
            k - j
        )));
    }
    Ok(JWitness {
        j,
        witness_partition: info_set,
        cover: inter.cover,
        common_set: inter.common_set,
    })
}

/// The shortened code on the complement of the intersection cover.
///
/// For `j = 0` the empty support (zero code of length 0) is returned.
pub fn witness_shortened_code(c: &LinearCode) -> Result<ShortenedWitness> {
    witness_from(c, &j_of_code(c)?)
}

pub fn witness_from(c: &LinearCode, jw: &JWitness) -> Result<ShortenedWitness> {
    if jw.j == 0 {
        return Ok(ShortenedWitness {
            support: Vec::new(),
            code: LinearCode::from_generator(&[], 0)?,
        });
    }
    let k = c.dimension();
    let support = complement(&jw.cover, c.len());
    let code = c.shorten(&support)?;
    let primal = LinearColumnMatroid::new(c.generator());
    let k0 = code.dimension();
    if k0 != k - primal.rank(&jw.cover) || 2 * k0 != support.len() + jw.j {
        return Err(Error::CrossCheck(format!(
            "shortened witness has dimension {k0} and length {}, expected length 2*{k0}-{}",
            support.len(),
            jw.j
        )));
    }
    Ok(ShortenedWitness { support, code })
}

fn guard(c: &LinearCode) -> Result<()> {
    if c.len() > ORACLE_LIMIT {
        return Err(Error::TooLarge {
            what: "code length for brute force",
            size: c.len(),
            limit: ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// Ranks of `G` restricted to every column subset, indexed by bitmask.
fn all_column_ranks(c: &LinearCode) -> Vec<u8> {
    let n = c.len();
    let cols = c.generator().transpose();
    let mut basis = XorBasis::new(c.dimension());
    (0..1u64 << n)
        .map(|mask| {
            basis.clear();
            (0..n)
                .filter(|&i| (mask >> i) & 1 == 1)
                .filter(|&i| basis.insert(cols.row_words(i)))
                .count() as u8
        })
        .collect()
}

/// `j(C)` straight from its definition, over all `2^n` partitions.
pub fn j_brute_force(c: &LinearCode) -> Result<usize> {
    guard(c)?;
    let k = c.dimension();
    let ranks = all_column_ranks(c);
    let all = (1usize << c.len()) - 1;
    Ok((0..=all)
        .filter(|&a| ranks[a] as usize == k)
        .map(|a| k - ranks[all & !a] as usize)
        .min()
        .expect("the full coordinate set always has rank k"))
}

/// `delta(C) = max over supports A of 2 dim(shorten(C, A)) - |A|`.
///
/// Ties go to the smallest support, then the lexicographically smallest.
pub fn delta_brute_force(c: &LinearCode) -> Result<DeltaWitness> {
    guard(c)?;
    let n = c.len();
    let k = c.dimension() as i64;
    let ranks = all_column_ranks(c);
    let all = (1usize << n) - 1;
    let mut best: Option<(i64, Vec<usize>)> = None;
    for a in 0..=all {
        // dim shorten(C, A) = k - rank(G_Abar)
        let value = 2 * (k - ranks[all & !a] as i64) - a.count_ones() as i64;
        let support: Vec<usize> = (0..n).filter(|&i| (a >> i) & 1 == 1).collect();
        let better = match &best {
            None => true,
            Some((v, s)) => {
                value > *v
                    || (value == *v
                        && (support.len() < s.len() || (support.len() == s.len() && support < *s)))
            }
        };
        if better {
            best = Some((value, support));
        }
    }
    let (delta, best_support) = best.expect("at least the empty support exists");
    Ok(DeltaWitness {
        // The empty support contributes 0, so the maximum is nonnegative.
        delta: delta as usize,
        best_support,
    })
}

/// `2^{-(k-j)/2}`.
pub fn injective_norm_formula(k: usize, j: usize) -> f64 {
    (-((k - j) as f64) / 2.0).exp2()
}

/// Distance to the product states, `sqrt(2 (1 - norm))`.
pub fn groverian(norm: f64) -> f64 {
    (2.0 * (1.0 - norm)).max(0.0).sqrt()
}

fn sig12<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x, 12))
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("formatted float parses")
}

/// Everything known about the entanglement of `|C>`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub n: usize,
    pub k: usize,
    pub j: usize,
    pub delta: usize,
    #[serde(serialize_with = "sig12")]
    pub injective_norm: f64,
    #[serde(serialize_with = "sig12")]
    pub geometric_entanglement: f64,
    #[serde(serialize_with = "sig12")]
    pub groverian: f64,
    pub witness_partition: Vec<usize>,
    pub witness_shortened_support: Vec<usize>,
}

impl EntanglementReport {
    /// Stable JSON rendering: sorted index sets, floats to 12 significant digits.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the polynomial path and, with `with_oracles`, checks it against
/// both brute-force oracles.
pub fn analyze(c: &LinearCode, with_oracles: bool) -> Result<EntanglementReport> {
    if with_oracles {
        guard(c)?;
    }
    let k = c.dimension();
    let jw = j_of_code(c)?;
    let sw = witness_from(c, &jw)?;
    let delta = 2 * sw.code.dimension() - sw.support.len();
    if delta != jw.j {
        return Err(Error::CrossCheck(format!(
            "witness delta {delta} differs from j = {}",
            jw.j
        )));
    }
    if with_oracles {
        let jb = j_brute_force(c)?;
        let db = delta_brute_force(c)?.delta;
        if jb != jw.j || db != jw.j {
            return Err(Error::CrossCheck(format!(
                "j = {} by matroid intersection, {jb} by brute force, delta = {db} by brute force",
                jw.j
            )));
        }
    }
    let norm = injective_norm_formula(k, jw.j);
    Ok(EntanglementReport {
        n: c.len(),
        k,
        j: jw.j,
        delta,
        injective_norm: norm,
        geometric_entanglement: (k - jw.j) as f64,
        groverian: groverian(norm),
        witness_partition: jw.witness_partition,
        witness_shortened_support: sw.support,
    })
}

/// Report shared by every basis state `|x + C2>` of the CSS code built from
/// `c2 ⊆ c1`: the injective norm is constant over basis states and depends
/// on `c2` only.
pub fn css_basis_report(c1: &LinearCode, c2: &LinearCode) -> Result<EntanglementReport> {
    if let Some(row) = c2.first_row_outside(c1)? {
        return Err(Error::NotSubcode {
            row: row.to_string(),
        });
    }
    analyze(c2, false)
}
