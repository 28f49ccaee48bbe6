//! Bit-packed rows over GF(2), 64 entries per word.

use crate::fields::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitRow {
    pub(crate) words: Vec<u64>,
}

impl BitRow {
    pub(crate) fn zero(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub(crate) fn from_scalars(v: &[Scalar]) -> Self {
        let mut row = BitRow::zero(v.len());
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                row.flip(i);
            }
        }
        row
    }

    pub(crate) fn to_scalars(&self, len: usize) -> Vec<Scalar> {
        let f = FieldSpec::Prime(2);
        (0..len)
            .map(|i| if self.get(i) { f.one() } else { f.zero() })
            .collect()
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    #[inline]
    pub(crate) fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub(crate) fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    /// Indices of set bits, increasing.
    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// Gauss-Jordan over packed rows. Returns the nonzero rows of the RREF and
/// their pivot columns.
pub(crate) fn rref_rows(mut rows: Vec<BitRow>, cols: usize) -> (Vec<BitRow>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(r, found);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Fully reduced RREF accumulator over packed rows.
#[derive(Debug, Clone)]
pub(crate) struct PackedSpan {
    len: usize,
    rows: Vec<BitRow>,
    row_pivot: Vec<usize>,
    pivot_of: Vec<Option<usize>>,
}

impl PackedSpan {
    pub(crate) fn new(len: usize) -> Self {
        PackedSpan {
            len,
            rows: Vec::new(),
            row_pivot: Vec::new(),
            pivot_of: vec![None; len],
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn push(&mut self, mut v: BitRow) -> bool {
        let hits: Vec<usize> = v.ones().filter_map(|i| self.pivot_of[i]).collect();
        for r in hits {
            v.xor_assign(&self.rows[r]);
        }
        let Some(q) = v.first_one() else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if row.get(q) {
                row.xor_assign(&v);
            }
        }
        self.pivot_of[q] = Some(self.rows.len());
        self.row_pivot.push(q);
        self.rows.push(v);
        true
    }

    /// Rows in pivot order.
    pub(crate) fn into_sorted(self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.row_pivot[i]);
        let rows = order.iter().map(|&i| self.rows[i].to_scalars(self.len)).collect();
        let pivots = order.iter().map(|&i| self.row_pivot[i]).collect();
        (rows, pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_iterates_across_words() {
        let mut r = BitRow::zero(130);
        for i in [0, 63, 64, 129] {
            r.flip(i);
        }
        assert_eq!(r.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(r.first_one(), Some(0));
    }

    #[test]
    fn packed_span_reduces_fully() {
        let mut s = PackedSpan::new(3);
        let f = FieldSpec::Prime(2);
        let v = |bits: [i64; 3]| BitRow::from_scalars(&bits.map(|b| f.from_i64(b)));
        assert!(s.push(v([0, 1, 1])));
        assert!(s.push(v([1, 1, 0])));
        assert!(!s.push(v([1, 0, 1])));
        let (rows, pivots) = s.into_sorted();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rows[0], [1, 0, 1].map(|b| f.from_i64(b)).to_vec());
    }
}
