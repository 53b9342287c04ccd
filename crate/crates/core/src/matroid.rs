//! Matroids given by rank oracles, and Edmonds' matroid intersection.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::codes::complement;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, XorBasis};

/// Largest ground set the exhaustive routines will enumerate.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// A matroid on the ground set `0..ground_size()`, described by its rank
/// function. Subsets are passed as slices of distinct indices.
pub trait Matroid {
    fn ground_size(&self) -> usize;

    fn rank(&self, set: &[usize]) -> usize;

    fn is_independent(&self, set: &[usize]) -> bool {
        self.rank(set) == set.len()
    }

    fn full_rank(&self) -> usize {
        let all: Vec<usize> = (0..self.ground_size()).collect();
        self.rank(&all)
    }

    /// Rank of the subset encoded by the bits of `mask`.
    fn rank_mask(&self, mask: u64) -> usize {
        self.rank(&mask_to_set(mask, self.ground_size()))
    }
}

impl<M: Matroid + ?Sized> Matroid for &M {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn rank(&self, set: &[usize]) -> usize {
        (**self).rank(set)
    }
    fn full_rank(&self) -> usize {
        (**self).full_rank()
    }
    fn rank_mask(&self, mask: u64) -> usize {
        (**self).rank_mask(mask)
    }
}

pub(crate) fn mask_to_set(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| (mask >> i) & 1 == 1).collect()
}

/// Column matroid of a GF(2) matrix: a set of columns is independent when the
/// columns are linearly independent.
#[derive(Clone, Debug)]
pub struct LinearColumnMatroid {
    // Columns of the source matrix, stored as rows.
    columns: BitMatrix,
    full_rank: usize,
}

impl LinearColumnMatroid {
    pub fn new(source: &BitMatrix) -> Self {
        let columns = source.transpose();
        let full_rank = columns.rank();
        Self { columns, full_rank }
    }

    pub fn source_rows(&self) -> usize {
        self.columns.cols()
    }
}

impl Matroid for LinearColumnMatroid {
    fn ground_size(&self) -> usize {
        self.columns.rows()
    }

    fn rank(&self, set: &[usize]) -> usize {
        let mut basis = XorBasis::new(self.columns.cols());
        set.iter()
            .filter(|&&c| basis.insert(self.columns.row_words(c)))
            .count()
    }

    fn full_rank(&self) -> usize {
        self.full_rank
    }

    fn rank_mask(&self, mask: u64) -> usize {
        let mut basis = XorBasis::new(self.columns.cols());
        let mut m = mask;
        let mut r = 0;
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            if basis.insert(self.columns.row_words(c)) {
                r += 1;
            }
        }
        r
    }
}

/// Dual matroid: `rank*(S) = rank(X \ S) + |S| - rank(X)`.
#[derive(Clone, Debug)]
pub struct DualMatroid<M> {
    primal: M,
    primal_full_rank: usize,
}

impl<M: Matroid> DualMatroid<M> {
    pub fn new(primal: M) -> Self {
        let primal_full_rank = primal.full_rank();
        Self {
            primal,
            primal_full_rank,
        }
    }

    pub fn primal(&self) -> &M {
        &self.primal
    }
}

impl<M: Matroid> Matroid for DualMatroid<M> {
    fn ground_size(&self) -> usize {
        self.primal.ground_size()
    }

    fn rank(&self, set: &[usize]) -> usize {
        let rest = complement(set, self.ground_size());
        self.primal.rank(&rest) + set.len() - self.primal_full_rank
    }

    fn rank_mask(&self, mask: u64) -> usize {
        let n = self.ground_size();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.primal.rank_mask(all & !mask) + mask.count_ones() as usize - self.primal_full_rank
    }
}

/// A maximum common independent set with a matching min-max certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionResult {
    /// Sorted; independent in both matroids.
    pub common_set: Vec<usize>,
    /// Sorted; `rank1(cover) + rank2(X \ cover) == common_set.len()`.
    pub cover: Vec<usize>,
}

impl IntersectionResult {
    pub fn size(&self) -> usize {
        self.common_set.len()
    }
}

/// `rank1(s) + rank2(X \ s)`.
pub fn cover_value<M1: Matroid, M2: Matroid>(m1: &M1, m2: &M2, s: &[usize]) -> usize {
    m1.rank(s) + m2.rank(&complement(s, m1.ground_size()))
}

fn check_ground<M1: Matroid, M2: Matroid>(m1: &M1, m2: &M2) -> Result<usize> {
    let n = m1.ground_size();
    if m2.ground_size() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m2.ground_size(),
        });
    }
    Ok(n)
}

/// Maximum common independent set by augmenting paths in the exchange graph.
///
/// Each round builds the exchange graph of the current common independent
/// set `I`: arcs `y -> x` when `I - y + x` is independent in `m1`, arcs
/// `x -> y` when `I - y + x` is independent in `m2` (`y` in `I`, `x` not).
/// A shortest path from `{x : I + x indep. in m1}` to `{x : I + x indep. in
/// m2}` is flipped into `I`. When no path exists, the set of vertices that
/// can reach a sink is a minimizing cover.
pub fn matroid_intersection<M1: Matroid, M2: Matroid>(
    m1: &M1,
    m2: &M2,
) -> Result<IntersectionResult> {
    let n = check_ground(m1, m2)?;
    let mut in_set = vec![false; n];

    loop {
        let current: Vec<usize> = (0..n).filter(|&i| in_set[i]).collect();
        let outside: Vec<usize> = (0..n).filter(|&i| !in_set[i]).collect();

        let with = |x: usize| {
            let mut s = current.clone();
            s.push(x);
            s
        };
        let is_source: Vec<bool> = (0..n)
            .map(|x| !in_set[x] && m1.is_independent(&with(x)))
            .collect();
        let is_sink: Vec<bool> = (0..n)
            .map(|x| !in_set[x] && m2.is_independent(&with(x)))
            .collect();

        // Adjacency of the exchange graph.
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (yi, &y) in current.iter().enumerate() {
            for &x in &outside {
                let mut swapped = current.clone();
                swapped[yi] = x;
                if m1.is_independent(&swapped) {
                    adj[y].push(x);
                }
                if m2.is_independent(&swapped) {
                    adj[x].push(y);
                }
            }
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }

        match shortest_path(&adj, &is_source, &is_sink) {
            Some(path) => {
                for v in path {
                    in_set[v] = !in_set[v];
                }
            }
            None => {
                let cover = reaching(&adj, &is_sink);
                let result = IntersectionResult {
                    common_set: current,
                    cover,
                };
                let value = cover_value(m1, m2, &result.cover);
                if value != result.size() {
                    return Err(Error::CrossCheck(format!(
                        "intersection certificate mismatch: |I| = {}, cover value = {value}",
                        result.size()
                    )));
                }
                return Ok(result);
            }
        }
    }
}

/// BFS from all sources; returns the vertices of a shortest source-to-sink path.
fn shortest_path(adj: &[Vec<usize>], is_source: &[bool], is_sink: &[bool]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for v in (0..n).filter(|&v| is_source[v]) {
        seen[v] = true;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        if is_sink[v] {
            let mut path = vec![v];
            let mut cur = v;
            while let Some(p) = parent[cur] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Sorted set of vertices from which some sink is reachable.
fn reaching(adj: &[Vec<usize>], is_sink: &[bool]) -> Vec<usize> {
    let n = adj.len();
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, list) in adj.iter().enumerate() {
        for &w in list {
            reverse[w].push(v);
        }
    }
    let mut seen = is_sink.to_vec();
    let mut stack: Vec<usize> = (0..n).filter(|&v| is_sink[v]).collect();
    while let Some(v) = stack.pop() {
        for &u in &reverse[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    (0..n).filter(|&v| seen[v]).collect()
}

/// Exhaustive verifier: evaluates both sides of the min-max equality over all
/// subsets and fails if they differ. Ties go to the lexicographically
/// smallest sorted index set.
pub fn brute_force_intersection<M1: Matroid, M2: Matroid>(
    m1: &M1,
    m2: &M2,
) -> Result<IntersectionResult> {
    let n = check_ground(m1, m2)?;
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "ground set",
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let all = (1u64 << n) - 1;
    let mut best_common: Option<Vec<usize>> = None;
    let mut best_cover: Option<(usize, Vec<usize>)> = None;
    for mask in 0..=all {
        let size = mask.count_ones() as usize;
        let set = mask_to_set(mask, n);
        if m1.rank_mask(mask) == size && m2.rank_mask(mask) == size {
            let better = match &best_common {
                None => true,
                Some(b) => size > b.len() || (size == b.len() && set < *b),
            };
            if better {
                best_common = Some(set.clone());
            }
        }
        let value = m1.rank_mask(mask) + m2.rank_mask(all & !mask);
        let better = match &best_cover {
            None => true,
            Some((v, s)) => value < *v || (value == *v && set < *s),
        };
        if better {
            best_cover = Some((value, set));
        }
    }
    let common_set = best_common.expect("the empty set is always independent");
    let (value, cover) = best_cover.expect("at least one subset exists");
    if value != common_set.len() {
        return Err(Error::CrossCheck(format!(
            "min-max equality violated: max common independent {} != min cover {value}",
            common_set.len()
        )));
    }
    Ok(IntersectionResult { common_set, cover })
}

/// Greedy basis of `m` inside `within`, scanning in increasing index order.
pub fn greedy_basis<M: Matroid>(m: &M, within: &[usize]) -> Vec<usize> {
    let mut sorted = within.to_vec();
    sorted.sort_unstable();
    let mut basis = Vec::new();
    for x in sorted {
        basis.push(x);
        if !m.is_independent(&basis) {
            basis.pop();
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::random_code;

    fn col(rows: &[&str], n: usize) -> LinearColumnMatroid {
        LinearColumnMatroid::new(&BitMatrix::parse_rows(rows, n).unwrap())
    }

    #[test]
    fn independence_examples() {
        let m = col(&["110", "011"], 3);
        assert!(m.is_independent(&[]));
        assert!(m.is_independent(&[0, 1]));
        assert!(!m.is_independent(&[0, 1, 2]));
        let d = DualMatroid::new(LinearColumnMatroid::new(&BitMatrix::identity(4)));
        assert!(d.is_independent(&[]));
        for x in 0..4 {
            assert!(!d.is_independent(&[x]));
        }
        assert_eq!(d.full_rank(), 0);
    }

    #[test]
    fn rank_mask_agrees_with_rank() {
        let m = col(&["1101", "0111", "1010"], 4);
        let d = DualMatroid::new(m.clone());
        for mask in 0..16u64 {
            let s = mask_to_set(mask, 4);
            assert_eq!(m.rank_mask(mask), m.rank(&s));
            assert_eq!(d.rank_mask(mask), d.rank(&s));
        }
    }

    #[test]
    fn intersection_examples() {
        let free = LinearColumnMatroid::new(&BitMatrix::identity(3));
        let dual = DualMatroid::new(free.clone());
        let r = matroid_intersection(&free, &dual).unwrap();
        assert!(r.common_set.is_empty());
        assert_eq!(cover_value(&free, &dual, &r.cover), 0);

        // Brute force over all 8 subsets: max common independent set has size 1.
        let m = col(&["110", "011"], 3);
        let d = DualMatroid::new(m.clone());
        let r = matroid_intersection(&m, &d).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(brute_force_intersection(&m, &d).unwrap().size(), 1);

        let h = LinearColumnMatroid::new(crate::codes::hamming_7_4().generator());
        assert_eq!(matroid_intersection(&h, &h).unwrap().size(), 4);
    }

    #[test]
    fn ground_mismatch_is_rejected() {
        let a = col(&["11"], 2);
        let b = col(&["111"], 3);
        assert!(matches!(
            matroid_intersection(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(brute_force_intersection(&a, &b).is_err());
    }

    #[test]
    fn brute_force_guard() {
        let m = LinearColumnMatroid::new(&BitMatrix::zeros(1, 21));
        assert!(matches!(
            brute_force_intersection(&m, &m),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn agrees_with_brute_force_on_random_pairs() {
        for seed in 0..60u64 {
            let n = 1 + (seed as usize % 10);
            let k = (seed as usize * 7) % (n + 1);
            let g = random_code(n, k, seed).unwrap();
            let h = random_code(n, (k + 3) % (n + 1), seed ^ 0xabc).unwrap();
            let m1 = LinearColumnMatroid::new(g.generator());
            let m2 = LinearColumnMatroid::new(h.generator());
            for (a, b) in [
                (&m1 as &dyn Matroid, &DualMatroid::new(&m1) as &dyn Matroid),
                (&m1, &m2),
                (&DualMatroid::new(&m2), &m1),
            ] {
                let fast = matroid_intersection(&a, &b).unwrap();
                let slow = brute_force_intersection(&a, &b).unwrap();
                assert_eq!(fast.size(), slow.size(), "seed {seed}");
                assert!(a.is_independent(&fast.common_set));
                assert!(b.is_independent(&fast.common_set));
            }
        }
    }

    #[test]
    fn greedy_basis_is_lowest_index() {
        let m = col(&["1101", "0110"], 4);
        assert_eq!(greedy_basis(&m, &[0, 1, 2, 3]), vec![0, 1]);
        assert_eq!(greedy_basis(&m, &[3, 2]), vec![2, 3]);
    }
}
