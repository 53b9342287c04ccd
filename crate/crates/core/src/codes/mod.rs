//! Binary linear codes held by a canonical generator matrix.

mod families;
pub mod format;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

pub use families::{even_weight, full, hamming_7_4, random_code, repetition, toric_x_code, zero};

/// Checks that `indices` is a set of positions below `n`.
pub(crate) fn validate_index_set(indices: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &i in indices {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::DuplicateIndex(i));
        }
    }
    Ok(())
}

/// Sorted complement of `indices` in `0..n`.
pub fn complement(indices: &[usize], n: usize) -> Vec<usize> {
    let mut inside = vec![false; n];
    for &i in indices {
        inside[i] = true;
    }
    (0..n).filter(|&i| !inside[i]).collect()
}

/// A `k`-dimensional subspace of `F_2^n`.
///
/// The generator is kept in reduced row-echelon form without zero rows, so
/// two codes are equal exactly when their stored generators are equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearCode {
    n: usize,
    generator: BitMatrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Code spanned by `rows`, each of length `n`. Dependent rows are dropped.
    pub fn from_generator(rows: &[BitVec], n: usize) -> Result<Self> {
        Ok(Self::from_matrix(&BitMatrix::from_rows(rows, n)?))
    }

    /// Code spanned by the rows of `m`.
    pub fn from_matrix(m: &BitMatrix) -> Self {
        let echelon = m.row_reduce();
        let generator = echelon
            .reduced
            .row_submatrix(&(0..echelon.rank()).collect::<Vec<_>>())
            .expect("rank never exceeds the row count");
        Self {
            n: m.cols(),
            generator,
            pivots: echelon.pivots,
        }
    }

    /// Parses rows written as `0`/`1` strings; `n` is needed for the empty list.
    pub fn parse<S: AsRef<str>>(rows: &[S], n: usize) -> Result<Self> {
        Ok(Self::from_matrix(&BitMatrix::parse_rows(rows, n)?))
    }

    /// Length `n`.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Dimension `k`.
    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn rate(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.dimension() as f64 / self.n as f64
        }
    }

    /// The canonical `k x n` generator (rref).
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of codewords, `2^k`, when representable.
    pub fn size(&self) -> Option<u64> {
        1u64.checked_shl(self.dimension() as u32)
    }

    /// Reduces `word` modulo the code: the result is zero on every pivot.
    pub fn reduce(&self, word: &BitVec) -> Result<BitVec> {
        if word.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: word.len(),
            });
        }
        let mut w = word.clone();
        for (r, &p) in self.pivots.iter().enumerate() {
            if w.get(p) {
                w.xor_assign(&self.generator.row(r));
            }
        }
        Ok(w)
    }

    pub fn contains(&self, word: &BitVec) -> Result<bool> {
        Ok(self.reduce(word)?.is_zero())
    }

    /// True iff every generator row of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> Result<bool> {
        Ok(self.first_row_outside(other)?.is_none())
    }

    /// The first generator row of `self` that is not a codeword of `other`.
    pub fn first_row_outside(&self, other: &LinearCode) -> Result<Option<BitVec>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: other.n,
                found: self.n,
            });
        }
        for row in self.generator.row_vecs() {
            if !other.contains(&row)? {
                return Ok(Some(row));
            }
        }
        Ok(None)
    }

    /// Codeword `message * G`.
    pub fn encode(&self, message: &BitVec) -> BitVec {
        self.generator.left_mul_vec(message)
    }

    /// All `2^k` codewords, in the order of their messages read as integers.
    ///
    /// Panics if `k > 30`.
    pub fn codewords(&self) -> impl Iterator<Item = BitVec> + '_ {
        let k = self.dimension();
        assert!(k <= 30, "refusing to enumerate 2^{k} codewords");
        (0..1u64 << k).map(move |m| self.encode(&BitVec::from_u64(k, m)))
    }

    /// Image of the code under restriction to the positions `a` (in the given order).
    pub fn puncture(&self, a: &[usize]) -> Result<LinearCode> {
        validate_index_set(a, self.n)?;
        Ok(LinearCode::from_matrix(
            &self.generator.column_submatrix(a)?,
        ))
    }

    /// Restrictions to `a` of the codewords that vanish outside `a`.
    pub fn shorten(&self, a: &[usize]) -> Result<LinearCode> {
        validate_index_set(a, self.n)?;
        let outside = complement(a, self.n);
        // Messages y with y * G_outside = 0.
        let g_out = self.generator.column_submatrix(&outside)?;
        let messages = g_out.transpose().kernel_basis();
        let words: Vec<BitVec> = messages
            .row_vecs()
            .iter()
            .map(|y| self.encode(y).select(a))
            .collect();
        LinearCode::from_generator(&words, a.len())
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_matrix(&self.generator.kernel_basis())
    }

    /// Representatives of the cosets of `self` inside `outer`, one per coset,
    /// each reduced to its canonical form modulo `self`.
    pub fn coset_representatives(&self, outer: &LinearCode) -> Result<Vec<BitVec>> {
        if let Some(row) = self.first_row_outside(outer)? {
            return Err(Error::NotSubcode {
                row: row.to_string(),
            });
        }
        // Extend a basis of self to one of outer; the extra rows span a complement.
        let mut basis = crate::gf2::XorBasis::new(self.n);
        for r in 0..self.dimension() {
            basis.insert(self.generator.row_words(r));
        }
        let extra: Vec<BitVec> = outer
            .generator
            .row_vecs()
            .into_iter()
            .filter(|row| basis.insert(row.words()))
            .collect();
        if extra.len() > 30 {
            return Err(Error::TooLarge {
                what: "coset count exponent",
                size: extra.len(),
                limit: 30,
            });
        }
        (0..1u64 << extra.len())
            .map(|m| {
                let mut x = BitVec::zeros(self.n);
                for (i, row) in extra.iter().enumerate() {
                    if (m >> i) & 1 == 1 {
                        x.xor_assign(row);
                    }
                }
                self.reduce(&x)
            })
            .collect()
    }
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearCode[n={}, k={}]", self.n, self.dimension())?;
        for row in self.generator.row_vecs() {
            write!(f, " {row}")?;
        }
        Ok(())
    }
}

/// The coset `x + C`, with `x` replaced by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetState {
    code: LinearCode,
    shift: BitVec,
}

impl CosetState {
    pub fn new(code: LinearCode, shift: &BitVec) -> Result<Self> {
        let shift = code.reduce(shift)?;
        Ok(Self { code, shift })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn shift(&self) -> &BitVec {
        &self.shift
    }
}
