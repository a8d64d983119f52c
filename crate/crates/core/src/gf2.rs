//! Bit-packed Gauss-Jordan elimination over `GF(2)`.
//!
//! Rows are packed 64 columns per word; row operations become XORs.

use crate::gf::{GfMatrix, Prime};

/// Rows of a `GF(2)` matrix packed into `u64` words, least significant bit first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedRows {
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl PackedRows {
    pub fn from_matrix(m: &GfMatrix) -> Self {
        debug_assert_eq!(m.modulus(), Prime::TWO);
        let words = m.cols().div_ceil(64).max(1);
        let mut bits = vec![0u64; m.rows() * words];
        for i in 0..m.rows() {
            for (j, &e) in m.row_slice(i).iter().enumerate() {
                if e != 0 {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        PackedRows { cols: m.cols(), words, bits }
    }

    pub fn rows(&self) -> usize {
        self.bits.len() / self.words
    }

    #[inline]
    fn bit(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn xor_into(&mut self, dst: usize, src: usize, from_word: usize) {
        let w = self.words;
        for k in from_word..w {
            let s = self.bits[src * w + k];
            self.bits[dst * w + k] ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        let w = self.words;
        for k in 0..w {
            self.bits.swap(a * w + k, b * w + k);
        }
    }

    /// In-place reduction; returns pivot columns.
    pub fn reduce(&mut self) -> Vec<usize> {
        let rows = self.rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.bit(i, c)) else {
                continue;
            };
            if piv != r {
                self.swap_rows(piv, r);
            }
            for i in 0..rows {
                if i != r && self.bit(i, c) {
                    self.xor_into(i, r, c / 64);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn to_matrix(&self) -> GfMatrix {
        let rows = self.rows();
        let mut data = Vec::with_capacity(rows * self.cols);
        for i in 0..rows {
            data.extend((0..self.cols).map(|j| self.bit(i, j) as u8));
        }
        GfMatrix::from_raw(Prime::TWO, rows, self.cols, data)
    }
}

pub(crate) fn rref(m: &GfMatrix) -> (GfMatrix, Vec<usize>) {
    let mut packed = PackedRows::from_matrix(m);
    let pivots = packed.reduce();
    (packed.to_matrix(), pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf2_matrix() -> impl Strategy<Value = GfMatrix> {
        (0usize..9, 0usize..140).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u32..2, r * c)
                .prop_map(move |e| GfMatrix::new(Prime::TWO, r, c, &e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn packed_matches_dense(m in gf2_matrix()) {
            prop_assert_eq!(rref(&m), m.rref_dense());
        }
    }

    #[test]
    fn spans_word_boundary() {
        let mut m = GfMatrix::zeros(Prime::TWO, 2, 130);
        m.set(0, 129, 1);
        m.set(1, 63, 1);
        m.set(1, 64, 1);
        let (r, piv) = rref(&m);
        assert_eq!(piv, vec![63, 129]);
        assert_eq!(r.get(0, 64), 1);
        assert_eq!(r.get(1, 129), 1);
    }
}
