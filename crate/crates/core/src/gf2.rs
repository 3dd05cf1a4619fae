//! Dense matrices over the two-element field, one bit per entry.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD);
        Gf2Matrix { rows, cols, stride, bits: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {r}");
            for (c, &b) in row.iter().enumerate() {
                m.set(r, c, b);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.bits[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.bits[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.bits[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.stride..(r + 1) * self.stride]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Rank by row reduction on a copy.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, mask) = (c / WORD, 1u64 << (c % WORD));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let (done, rest) = rows.split_at_mut(rank + 1);
            let p = &done[rank];
            for row in rest.iter_mut() {
                if row[w] & mask != 0 {
                    row.iter_mut().zip(p).for_each(|(a, b)| *a ^= b);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Gf2Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let src = rhs.row(k);
                    let dst = &mut out.bits[r * out.stride..(r + 1) * out.stride];
                    dst.iter_mut().zip(src).for_each(|(a, b)| *a ^= b);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '.' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(Gf2Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Gf2Matrix::identity(70).rank(), 70);
        let m = Gf2Matrix::from_rows(
            &[vec![true, true, false], vec![false, true, true], vec![true, false, true]],
            3,
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(Gf2Matrix::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn product() {
        let a = Gf2Matrix::from_rows(&[vec![true, true], vec![false, true]], 2);
        assert_eq!(a.mul(&a), Gf2Matrix::identity(2));
        assert!(Gf2Matrix::zeros(2, 3).mul(&Gf2Matrix::zeros(3, 0)).is_zero());
        assert!(a.transpose().get(1, 0));
    }

    #[test]
    fn wide_rows() {
        let mut m = Gf2Matrix::zeros(2, 130);
        m.set(0, 129, true);
        m.set(1, 129, true);
        m.set(1, 0, true);
        assert_eq!(m.rank(), 2);
        m.flip(1, 0);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.count_ones(), 2);
    }
}
