//! Packed boolean matrix storage.
//!
//! Columns are the hot axis everywhere (measurement ORs columns, the decoder
//! subtracts the outcome from each column, certification unions columns), so
//! bits are packed column-major: column `j` is a contiguous slice of `u64`
//! words covering `rows` bits. All word-level helpers assume the unused tail
//! bits of the last word are zero; every constructor and setter maintains
//! that.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// Column-major packed boolean matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_col: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    /// All-zero matrix. Dimensions must be strictly positive.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let words_per_col = rows.div_ceil(WORD_BITS);
        BitMatrix {
            rows,
            cols,
            words_per_col,
            words: vec![0; words_per_col * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Parses rows written as strings of '0'/'1', top row first.
    /// `line` in the error diagnostics is the 1-based row number.
    pub fn from_rows_str(rows: &[&str]) -> Result<Self> {
        assert!(!rows.is_empty(), "matrix dimensions must be positive");
        let n = rows[0].chars().count();
        let mut m = Self::zeros(rows.len(), n);
        for (r, row) in rows.iter().enumerate() {
            let got = row.chars().count();
            if got != n {
                return Err(Error::RaggedRow {
                    line: r + 1,
                    expected: n,
                    got,
                });
            }
            for (c, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    other => {
                        return Err(Error::InvalidBitChar {
                            line: r + 1,
                            ch: other,
                        })
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words_per_col(&self) -> usize {
        self.words_per_col
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        let w = self.words[c * self.words_per_col + r / WORD_BITS];
        (w >> (r % WORD_BITS)) & 1 != 0
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols, "bit index out of range");
        let w = &mut self.words[c * self.words_per_col + r / WORD_BITS];
        let mask = 1u64 << (r % WORD_BITS);
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// The packed words of column `c`.
    #[inline]
    pub fn col_words(&self, c: usize) -> &[u64] {
        let start = c * self.words_per_col;
        &self.words[start..start + self.words_per_col]
    }

    #[inline]
    pub fn col_words_mut(&mut self, c: usize) -> &mut [u64] {
        let start = c * self.words_per_col;
        &mut self.words[start..start + self.words_per_col]
    }

    pub fn col_weight(&self, c: usize) -> usize {
        self.col_words(c).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Row indices of the ones in column `c`, ascending.
    pub fn col_support(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.col_words(c)
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| SetBits(w).map(move |b| wi * WORD_BITS + b))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Row `r` rendered as a '0'/'1' string (serialization order).
    pub fn row_string(&self, r: usize) -> String {
        (0..self.cols)
            .map(|c| if self.get(r, c) { '1' } else { '0' })
            .collect()
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        if self.rows <= 32 && self.cols <= 64 {
            for r in 0..self.rows {
                writeln!(f, "  {}", self.row_string(r))?;
            }
        }
        Ok(())
    }
}

/// Iterator over the set bit positions of one word.
struct SetBits(u64);

impl Iterator for SetBits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

/// |supp(col) \ supp(mask)| over packed words.
#[inline]
pub fn andnot_weight(col: &[u64], mask: &[u64]) -> usize {
    debug_assert_eq!(col.len(), mask.len());
    col.iter()
        .zip(mask)
        .map(|(&a, &b)| (a & !b).count_ones() as usize)
        .sum()
}

/// acc |= col, wordwise.
#[inline]
pub fn or_into(acc: &mut [u64], col: &[u64]) {
    debug_assert_eq!(acc.len(), col.len());
    for (a, &c) in acc.iter_mut().zip(col) {
        *a |= c;
    }
}

/// supp(sub) ⊆ supp(sup)?
#[inline]
pub fn is_subset(sub: &[u64], sup: &[u64]) -> bool {
    debug_assert_eq!(sub.len(), sup.len());
    sub.iter().zip(sup).all(|(&a, &b)| a & !b == 0)
}
