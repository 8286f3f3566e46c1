//! Dense matrices over GF(2) with at most 32 columns, stored one `u32` per row.
//!
//! Vectors are bitmasks: bit `j` is coordinate `j`. `mul_vec` uses the column
//! convention `(A x)_i = <row_i, x>`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<u32>,
    cols: usize,
}

#[inline]
fn parity(x: u32) -> bool {
    x.count_ones() & 1 == 1
}

impl BitMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        assert!(ncols <= 32, "at most 32 columns supported");
        BitMatrix { rows: vec![0; nrows], cols: ncols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for (i, r) in m.rows.iter_mut().enumerate() {
            *r = 1 << i;
        }
        m
    }

    pub fn from_rows(rows: Vec<u32>, ncols: usize) -> Self {
        assert!(ncols <= 32, "at most 32 columns supported");
        let mask = col_mask(ncols);
        assert!(rows.iter().all(|r| r & !mask == 0), "row has bits beyond column count");
        BitMatrix { rows, cols: ncols }
    }

    /// Builds the matrix whose column `j` is `columns[j]` (a bitmask over rows).
    pub fn from_columns(columns: &[u32], nrows: usize) -> Self {
        let mut m = Self::zero(nrows, columns.len());
        for (j, &c) in columns.iter().enumerate() {
            for i in 0..nrows {
                if (c >> i) & 1 == 1 {
                    m.rows[i] |= 1 << j;
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> u32 {
        self.rows[i]
    }

    pub fn column(&self, j: usize) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r >> j) & 1) << i))
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn transpose(&self) -> Self {
        let cols: Vec<u32> = self.rows.clone();
        Self::from_columns(&cols, self.cols)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// `A x` for a column vector `x`.
    pub fn mul_vec(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | ((parity(r & x) as u32) << i))
    }

    /// `x^T A` for a row vector `x`: the XOR of the rows selected by `x`.
    pub fn vec_mul(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| (x >> i) & 1 == 1)
            .fold(0, |acc, (_, &r)| acc ^ r)
    }

    /// Bilinear form `x^T A y`.
    pub fn form(&self, x: u32, y: u32) -> bool {
        parity(x & self.mul_vec(y))
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch");
        let rows = self.rows.iter().map(|&r| other.vec_mul(r)).collect();
        BitMatrix { rows, cols: other.cols }
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect();
        BitMatrix { rows, cols: self.cols }
    }

    pub fn rank(&self) -> u32 {
        let mut rows = self.rows.clone();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let bit = 1u32 << col;
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r & bit != 0 {
                    *r ^= pivot;
                }
            }
            rank += 1;
        }
        rank as u32
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() as usize == self.cols
    }

    pub fn inverse(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::SingularMatrix);
        }
        let n = self.cols;
        let mut a = self.rows.clone();
        let mut inv = BitMatrix::identity(n).rows;
        for col in 0..n {
            let bit = 1u32 << col;
            let p = (col..n).find(|&i| a[i] & bit != 0).ok_or(Error::SingularMatrix)?;
            a.swap(col, p);
            inv.swap(col, p);
            for i in 0..n {
                if i != col && a[i] & bit != 0 {
                    a[i] ^= a[col];
                    inv[i] ^= inv[col];
                }
            }
        }
        Ok(BitMatrix { rows: inv, cols: n })
    }

    /// Basis of `{ x : A x = 0 }`.
    pub fn kernel(&self) -> Vec<u32> {
        // Reduced row echelon form, then read off free columns.
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let bit = 1u32 << col;
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r & bit != 0 {
                    *r ^= pivot;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = 1u32 << free;
                for (r, &pc) in pivots.iter().enumerate() {
                    if (rows[r] >> free) & 1 == 1 {
                        v |= 1 << pc;
                    }
                }
                v
            })
            .collect()
    }

    /// For a symmetric zero-diagonal nondegenerate `B`, returns an invertible `S`
    /// with `S^T B S` equal to the canonical form: `J[2i][2i+1] = J[2i+1][2i] = 1`,
    /// everything else zero.
    pub fn symplectic_basis(&self) -> Result<BitMatrix> {
        let n = self.cols;
        if !self.is_symmetric() || (0..n).any(|i| self.get(i, i)) {
            return Err(Error::InvalidParameters("matrix is not alternating".into()));
        }
        let mut remaining: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
        let mut columns = Vec::with_capacity(n);
        while let Some(e) = remaining.first().copied() {
            remaining.remove(0);
            let pos = remaining
                .iter()
                .position(|&f| self.form(e, f))
                .ok_or(Error::NotBent { rank: self.rank(), n: n as u32 })?;
            let f = remaining.remove(pos);
            for z in remaining.iter_mut() {
                let ze = self.form(*z, e);
                let zf = self.form(*z, f);
                if zf {
                    *z ^= e;
                }
                if ze {
                    *z ^= f;
                }
            }
            columns.push(e);
            columns.push(f);
        }
        Ok(BitMatrix::from_columns(&columns, n))
    }

    /// The canonical alternating form produced by [`BitMatrix::symplectic_basis`].
    pub fn canonical_symplectic(n: usize) -> BitMatrix {
        let mut j = BitMatrix::zero(n, n);
        for i in (0..n.saturating_sub(1)).step_by(2) {
            j.set(i, i + 1, true);
            j.set(i + 1, i, true);
        }
        j
    }
}

fn col_mask(ncols: usize) -> u32 {
    if ncols == 32 {
        u32::MAX
    } else {
        (1u32 << ncols) - 1
    }
}

/// A GF(2)-linear map on bitmasks applied through per-byte lookup tables.
#[derive(Debug, Clone)]
pub struct LinearMap {
    tables: Vec<[u32; 256]>,
}

impl LinearMap {
    /// `images[j]` is the image of the unit vector `e_j`.
    pub fn from_images(images: &[u32]) -> Self {
        let nbytes = images.len().div_ceil(8).max(1);
        let mut tables = vec![[0u32; 256]; nbytes];
        for (b, table) in tables.iter_mut().enumerate() {
            for v in 1..256usize {
                let low = v & (v - 1);
                let bit = (v ^ low).trailing_zeros() as usize + 8 * b;
                let img = images.get(bit).copied().unwrap_or(0);
                table[v] = table[low] ^ img;
            }
        }
        LinearMap { tables }
    }

    /// The map `x -> A x`.
    pub fn from_matrix(a: &BitMatrix) -> Self {
        let images: Vec<u32> = (0..a.ncols()).map(|j| a.column(j)).collect();
        Self::from_images(&images)
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        let mut acc = 0;
        for (b, table) in self.tables.iter().enumerate() {
            acc ^= table[((x >> (8 * b)) & 0xff) as usize];
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = BitMatrix::from_rows(vec![0b011, 0b110, 0b101 ^ 0b010], 3);
        assert!(m.is_invertible());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), BitMatrix::identity(3));
        assert_eq!(inv.mul(&m), BitMatrix::identity(3));
    }

    #[test]
    fn singular_has_kernel() {
        let m = BitMatrix::from_rows(vec![0b011, 0b110, 0b101], 3);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(m.mul_vec(k[0]), 0);
        assert_ne!(k[0], 0);
    }

    #[test]
    fn two_by_two_ranks() {
        let b = BitMatrix::from_rows(vec![0b10, 0b01], 2);
        assert_eq!(b.rank(), 2);
        assert_eq!(b.add(&BitMatrix::identity(2)).rank(), 1);
    }

    #[test]
    fn symplectic_reduction_reaches_canonical_form() {
        // B = J + I on 4 coordinates.
        let n = 4;
        let rows = (0..n).map(|i| 0b1111 ^ (1 << i)).collect();
        let b = BitMatrix::from_rows(rows, n);
        let s = b.symplectic_basis().unwrap();
        assert!(s.is_invertible());
        assert_eq!(s.transpose().mul(&b).mul(&s), BitMatrix::canonical_symplectic(n));
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let b = BitMatrix::from_rows(vec![0b010, 0b001, 0b000], 3);
        assert!(b.symplectic_basis().is_err());
    }

    #[test]
    fn linear_map_matches_matrix() {
        let a = BitMatrix::from_rows(vec![0x3_0001, 0x1_8000, 0x2_0f0f, 0x0_ffff, 0x1_2345], 18);
        let map = LinearMap::from_matrix(&a);
        for x in [0u32, 1, 0x3ffff, 0x12345, 0x2aaaa, 0x00100] {
            assert_eq!(map.apply(x), a.mul_vec(x));
        }
    }
}
