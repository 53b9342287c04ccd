//! Dense linear algebra over GF(2).
//!
//! Rows are packed into `u64` words, least significant bit first: column `c`
//! of a row lives in word `c / 64` at bit `c % 64`. Bits past the last column
//! are kept at zero after every mutation, so word-wise equality and popcounts
//! are always meaningful.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Vector of length `len` with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// The low `len` bits of `value`, bit `i` of the integer at position `i`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD_BITS, "from_u64 supports at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value & tail_mask(len);
        }
        v
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Self { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the ones, increasing.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Bits as an integer, bit `i` of the result = entry `i`. Requires `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD_BITS, "to_u64 supports at most 64 bits");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Entries at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(indices.len());
        for (t, &i) in indices.iter().enumerate() {
            if self.get(i) {
                out.set(t, true);
            }
        }
        out
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVec::zeros(s.chars().count());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        column: i + 1,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        Ok(v)
    }
}

/// Dense row-major bit matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    /// Same shape as the input; the first `pivots.len()` rows are nonzero.
    pub reduced: BitMatrix,
    /// Strictly increasing pivot columns, one per nonzero row.
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Generator in systematic form: `result = (transform * g)` with columns
/// reordered so that `result` column `i` is column `permutation[i]` of
/// `transform * g`. The left `k x k` block of `result` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub transform: BitMatrix,
    pub permutation: Vec<usize>,
    pub result: BitMatrix,
}

impl StandardForm {
    /// The right `k x (n - k)` block.
    pub fn redundancy_block(&self) -> BitMatrix {
        let k = self.result.rows();
        let cols: Vec<usize> = (k..self.result.cols()).collect();
        self.result
            .column_submatrix(&cols)
            .expect("columns are in range by construction")
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of common length `cols`.
    pub fn from_rows(rows: &[BitVec], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            m.row_words_mut(r).copy_from_slice(row.words());
        }
        Ok(m)
    }

    /// Parses rows written as strings of `0`/`1`, e.g. `["110", "011"]`.
    pub fn parse_rows<S: AsRef<str>>(rows: &[S], cols: usize) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|s| s.as_ref().parse::<BitVec>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&parsed, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r}, {c}) out of range"
        );
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r}, {c}) out of range"
        );
        let w = &mut self.data[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    #[cfg(test)]
    fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// `row[dst] ^= row[src]`.
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (src_off, dst_off) = (src * s, dst * s);
        for w in 0..s {
            let v = self.data[src_off + w];
            self.data[dst_off + w] ^= v;
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                if self.get(r, t) {
                    let (s, o) = (out.stride, other.stride);
                    for w in 0..s {
                        out.data[r * s + w] ^= other.data[t * o + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// `v * self` for a row vector `v` of length `rows`.
    pub fn left_mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.rows, "vector length must equal row count");
        let mut out = BitVec::zeros(self.cols);
        for r in 0..self.rows {
            if v.get(r) {
                for (a, b) in out.words.iter_mut().zip(self.row_words(r)) {
                    *a ^= b;
                }
            }
        }
        out
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn column_submatrix(&self, cols: &[usize]) -> Result<BitMatrix> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: self.cols,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (t, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, t, true);
                }
            }
        }
        Ok(out)
    }

    /// Rows `rows` of `self`, in the given order.
    pub fn row_submatrix(&self, rows: &[usize]) -> Result<BitMatrix> {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (t, &r) in rows.iter().enumerate() {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    bound: self.rows,
                });
            }
            out.row_words_mut(t).copy_from_slice(self.row_words(r));
        }
        Ok(out)
    }

    /// In-place Gauss-Jordan elimination. Every row operation is mirrored on
    /// `companion` (same row count) when given. Returns the pivot columns.
    fn eliminate(&mut self, mut companion: Option<&mut BitMatrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(next, p);
            if let Some(comp) = companion.as_deref_mut() {
                comp.swap_rows(next, p);
            }
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_row_into(next, r);
                    if let Some(comp) = companion.as_deref_mut() {
                        comp.xor_row_into(next, r);
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn row_reduce(&self) -> RowEchelon {
        let mut reduced = self.clone();
        let pivots = reduced.eliminate(None);
        RowEchelon { reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut basis = XorBasis::new(self.cols);
        (0..self.rows)
            .filter(|&r| basis.insert(self.row_words(r)))
            .count()
    }

    /// Rows form a basis of `{x : self * x^T = 0}`.
    pub fn kernel_basis(&self) -> BitMatrix {
        let RowEchelon { reduced, pivots } = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = BitMatrix::zeros(free.len(), self.cols);
        for (t, &f) in free.iter().enumerate() {
            out.set(t, f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if reduced.get(r, f) {
                    out.set(t, p, true);
                }
            }
        }
        out
    }

    /// Systematic form of a full-row-rank generator. Pivot columns go first
    /// (increasing), then the remaining columns (increasing).
    pub fn standard_form(&self) -> Result<StandardForm> {
        let mut reduced = self.clone();
        let mut transform = BitMatrix::identity(self.rows);
        let pivots = reduced.eliminate(Some(&mut transform));
        if pivots.len() != self.rows {
            return Err(Error::NotFullRank {
                rank: pivots.len(),
                rows: self.rows,
            });
        }
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let permutation: Vec<usize> = pivots
            .iter()
            .copied()
            .chain((0..self.cols).filter(|&c| !is_pivot[c]))
            .collect();
        let result = reduced.column_submatrix(&permutation)?;
        Ok(StandardForm {
            transform,
            permutation,
            result,
        })
    }

    /// Drops all-zero rows.
    #[cfg(test)]
    pub(crate) fn without_zero_rows(&self) -> BitMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| !self.row_is_zero(r)).collect();
        self.row_submatrix(&keep).expect("rows are in range")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, " {}", self.row(r))?;
        }
        write!(f, ")")
    }
}

/// Incremental echelon basis over GF(2), keyed by leading (lowest) set bit.
///
/// Used for rank queries on arbitrary subsets of vectors without building
/// submatrices.
#[derive(Clone, Debug)]
pub struct XorBasis {
    width: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl XorBasis {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn clear(&mut self) {
        self.rows.clear();
    }

    /// Reduces `words` against the basis and keeps it if nonzero. Returns
    /// whether the rank increased.
    pub fn insert(&mut self, words: &[u64]) -> bool {
        debug_assert_eq!(words.len(), words_for(self.width));
        let mut v = words.to_vec();
        for (lead, row) in &self.rows {
            if (v[lead / WORD_BITS] >> (lead % WORD_BITS)) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        match v
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD_BITS + w.trailing_zeros() as usize)
        {
            Some(lead) => {
                // Keep rows fully reduced at their leading bits.
                for (_, row) in self.rows.iter_mut() {
                    if (row[lead / WORD_BITS] >> (lead % WORD_BITS)) & 1 == 1 {
                        for (a, b) in row.iter_mut().zip(&v) {
                            *a ^= b;
                        }
                    }
                }
                self.rows.push((lead, v));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str], cols: usize) -> BitMatrix {
        BitMatrix::parse_rows(rows, cols).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(m(&["110", "011", "101"], 3).rank(), 2);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(BitMatrix::zeros(4, 0).rank(), 0);
    }

    #[test]
    fn row_reduce_examples() {
        let e = m(&["11", "01"], 2).row_reduce();
        assert_eq!(e.reduced, m(&["10", "01"], 2));
        assert_eq!(e.pivots, vec![0, 1]);

        let e = m(&["111"], 3).row_reduce();
        assert_eq!(e.reduced, m(&["111"], 3));
        assert_eq!(e.pivots, vec![0]);

        // 110 and 011 survive, 101 cancels.
        let e = m(&["110", "011", "101"], 3).row_reduce();
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(e.reduced, m(&["101", "011", "000"], 3));
    }

    #[test]
    fn column_submatrix_examples() {
        let id = BitMatrix::identity(3);
        assert_eq!(
            id.column_submatrix(&[0, 2]).unwrap(),
            m(&["10", "00", "01"], 2)
        );
        let e = id.column_submatrix(&[]).unwrap();
        assert_eq!((e.rows(), e.cols()), (3, 0));
        assert_eq!(
            m(&["110", "011"], 3).column_submatrix(&[1]).unwrap(),
            m(&["1", "1"], 1)
        );
        assert_eq!(
            id.column_submatrix(&[3]),
            Err(Error::IndexOutOfRange { index: 3, bound: 3 })
        );
    }

    #[test]
    fn kernel_examples() {
        let k = BitMatrix::identity(2).kernel_basis();
        assert_eq!((k.rows(), k.cols()), (0, 2));
        assert_eq!(m(&["11"], 2).kernel_basis(), m(&["11"], 2));
        assert_eq!(m(&["101", "110"], 3).kernel_basis(), m(&["111"], 3));
    }

    #[test]
    fn standard_form_examples() {
        let sf = m(&["11"], 2).standard_form().unwrap();
        assert_eq!(sf.transform, BitMatrix::identity(1));
        assert_eq!(sf.permutation, vec![0, 1]);
        assert_eq!(sf.result, m(&["11"], 2));

        // 011,110 -> rref 101,011; rows of the transform record 101 = r0+r1, 011 = r0.
        let g = m(&["011", "110"], 3);
        let sf = g.standard_form().unwrap();
        assert_eq!(sf.result, m(&["101", "011"], 3));
        assert_eq!(sf.permutation, vec![0, 1, 2]);
        assert_eq!(sf.transform, m(&["11", "10"], 2));
        assert_eq!(sf.redundancy_block().rank(), 1);

        let id = BitMatrix::identity(4);
        let sf = id.standard_form().unwrap();
        assert_eq!(sf.result, id);
        assert_eq!(sf.transform, id);

        assert_eq!(
            m(&["11", "11"], 2).standard_form(),
            Err(Error::NotFullRank { rank: 1, rows: 2 })
        );
    }

    #[test]
    fn standard_form_permutes_non_pivot_columns_last() {
        let g = m(&["1100", "0001"], 4);
        let sf = g.standard_form().unwrap();
        assert_eq!(sf.permutation, vec![0, 3, 1, 2]);
        assert_eq!(sf.result, m(&["1010", "0100"], 4));
    }

    #[test]
    fn wide_rows_keep_padding_clear() {
        let mut v = BitVec::zeros(130);
        v.set(129, true);
        v.set(64, true);
        let mut a = BitMatrix::from_rows(&[v.clone(), v.clone()], 130).unwrap();
        assert_eq!(a.rank(), 1);
        a.set(1, 0, true);
        assert_eq!(a.rank(), 2);
        let t = a.transpose();
        assert_eq!(t.rows(), 130);
        assert_eq!(t.rank(), 2);
        assert_eq!(a.kernel_basis().rows(), 128);
        assert_eq!(BitVec::from_words(3, vec![u64::MAX]).weight(), 3);
    }

    #[test]
    fn supports_4096_columns() {
        let mut g = BitMatrix::zeros(3, 4096);
        g.set(0, 4095, true);
        g.set(1, 4000, true);
        g.set(2, 4095, true);
        g.set(2, 4000, true);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.kernel_basis().rows(), 4094);
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let mut out = BitMatrix::zeros(r, c);
                for (i, b) in bits.into_iter().enumerate() {
                    if b {
                        out.set(i / c.max(1), i % c.max(1), true);
                    }
                }
                out
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(a in arb_matrix(9, 9)) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
            prop_assert!(a.rank() <= a.rows().min(a.cols()));
        }

        #[test]
        fn rank_subadditive_under_column_split(a in arb_matrix(7, 9), mask in any::<u16>()) {
            let (s, rest): (Vec<usize>, Vec<usize>) =
                (0..a.cols()).partition(|&c| (mask >> c) & 1 == 1);
            let r1 = a.column_submatrix(&s).unwrap().rank();
            let r2 = a.column_submatrix(&rest).unwrap().rank();
            prop_assert!(r1 + r2 >= a.rank());
        }

        #[test]
        fn kernel_rows_annihilate(a in arb_matrix(8, 10)) {
            let k = a.kernel_basis();
            prop_assert_eq!(k.rows(), a.cols() - a.rank());
            prop_assert_eq!(k.rank(), k.rows());
            for x in k.row_vecs() {
                for r in a.row_vecs() {
                    prop_assert!(!r.dot(&x));
                }
            }
        }

        #[test]
        fn rref_preserves_row_space(a in arb_matrix(8, 10)) {
            let e = a.row_reduce();
            prop_assert_eq!(e.rank(), a.rank());
            prop_assert!(e.pivots.windows(2).all(|w| w[0] < w[1]));
            // Row spaces agree iff stacking does not raise the rank.
            let mut rows = a.row_vecs();
            rows.extend(e.reduced.row_vecs());
            let stacked = BitMatrix::from_rows(&rows, a.cols()).unwrap();
            prop_assert_eq!(stacked.rank(), a.rank());
        }

        #[test]
        fn standard_form_has_identity_block(a in arb_matrix(6, 10)) {
            let g = a.row_reduce().reduced.without_zero_rows();
            let sf = g.standard_form().unwrap();
            let k = g.rows();
            let id_cols: Vec<usize> = (0..k).collect();
            prop_assert_eq!(sf.result.column_submatrix(&id_cols).unwrap(), BitMatrix::identity(k));
            prop_assert_eq!(sf.transform.rank(), k);
            // Undo the permutation and compare with transform * g.
            let tg = sf.transform.mul(&g).unwrap();
            for (i, &p) in sf.permutation.iter().enumerate() {
                prop_assert_eq!(sf.result.column(i), tg.column(p));
            }
        }
    }
}
