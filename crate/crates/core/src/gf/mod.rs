//! Linear algebra over small prime fields `GF(p)`.

mod dm;
mod polar;
mod subspace;

use std::fmt;

use crate::error::{Error, Result};

pub use dm::{
    dm_decompose, mvsp_solve, vanishes, DmDecomposition, MvspSolution, PartitionedMatrix, VanishingTuple,
    DEFAULT_MVSP_BUDGET,
};
pub use polar::{polar_space_ppip, PolarSpace};
pub use subspace::{subspace_lattice, Subspace, SubspaceLattice, DEFAULT_SUBSPACE_BUDGET};

/// Arithmetic in `GF(p)` for a prime `p < 256`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u8,
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime || p > 255 {
            return Err(Error::Input(format!("field size {p} is not a prime below 256")));
        }
        Ok(Field { p: p as u8 })
    }

    pub fn order(self) -> u8 {
        self.p
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    pub fn neg(self, a: u8) -> u8 {
        self.sub(0, a)
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        // a^(p-2) by repeated squaring
        let mut result = 1u8;
        let mut base = a;
        let mut e = self.p as u32 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// All vectors of length `d`, in lexicographic order.
    pub fn vectors(self, d: usize) -> impl Iterator<Item = Vec<u8>> {
        let p = self.p as usize;
        let total = p.pow(d as u32);
        (0..total).map(move |mut k| {
            let mut v = vec![0u8; d];
            for i in (0..d).rev() {
                v[i] = (k % p) as u8;
                k /= p;
            }
            v
        })
    }

    pub fn dot(self, u: &[u8], v: &[u8]) -> u8 {
        u.iter().zip(v).fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

/// A dense matrix over `GF(p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl GfMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        Ok(GfMatrix {
            field: Field::new(p)?,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Builds a matrix from rows of integers, reducing entries mod `p`.
    /// Rows must have equal length.
    pub fn from_rows(p: u32, rows: &[Vec<u8>]) -> Result<Self> {
        let field = Field::new(p)?;
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Input(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let data = rows.iter().flatten().map(|&x| x % field.p).collect();
        Ok(GfMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Like [`GfMatrix::from_rows`] but with an explicit column count, so
    /// matrices without rows keep their width.
    pub fn from_rows_with_cols(p: u32, cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        if rows.is_empty() {
            return Self::zeros(p, 0, cols);
        }
        let m = Self::from_rows(p, rows)?;
        if m.cols != cols {
            return Err(Error::Input(format!("expected {cols} columns, got {}", m.cols)));
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p as u32
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % self.field.p;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.field != other.field {
            return Err(Error::Input("matrices over different fields".into()));
        }
        if self.cols != other.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = GfMatrix {
            field: f,
            rows: self.rows,
            cols: other.cols,
            data: vec![0; self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// The submatrix on the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> GfMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            data.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        GfMatrix {
            field: self.field,
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Block-diagonal matrix with the given square or rectangular blocks.
    pub fn block_diagonal(p: u32, blocks: &[GfMatrix]) -> Result<GfMatrix> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(p, rows, cols)?;
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// The permutation matrix sending coordinate `perm[k]` to position `k`:
    /// `(P·M)` has row `perm[k]` of `M` as its row `k`.
    pub fn row_permutation(p: u32, perm: &[usize]) -> Result<GfMatrix> {
        let n = perm.len();
        let mut out = Self::zeros(p, n, n)?;
        for (k, &src) in perm.iter().enumerate() {
            out.set(k, src, 1);
        }
        Ok(out)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && factor != 0 {
                    for j in 0..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<GfMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = GfMatrix {
            field: self.field,
            rows: n,
            cols: 2 * n,
            data: vec![0; 2 * n * n],
        };
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0..n, n..2 * n))
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GfMatrix(p={}, {}x{})", self.field.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.field.p < 10 { "" } else { " " };
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            writeln!(f, "{}", row.join(sep))?;
        }
        Ok(())
    }
}

/// Formats a vector compactly: digits run together when `p < 10`.
pub fn format_vector(p: u32, v: &[u8]) -> String {
    let parts: Vec<String> = v.iter().map(u8::to_string).collect();
    if p < 10 {
        parts.concat()
    } else {
        format!("({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> GfMatrix {
        GfMatrix::from_rows(2, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn field_arithmetic() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.inv(3), 2);
        assert_eq!(f.neg(1), 4);
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.vectors(2).count(), 9);
    }

    #[test]
    fn rref_and_inverse() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), GfMatrix::identity(2, 2).unwrap());
        let s = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        let (r, piv) = m(&[&[0, 1, 1], &[1, 1, 0]]).rref();
        assert_eq!(r.to_rows(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(piv, vec![0, 1]);
    }

    #[test]
    fn entries_reduced() {
        let a = GfMatrix::from_rows(3, &[vec![4, 5]]).unwrap();
        assert_eq!(a.row(0), &[1, 2]);
        assert!(GfMatrix::from_rows(2, &[vec![1], vec![1, 0]]).is_err());
    }

    #[test]
    fn permutations() {
        let p = GfMatrix::row_permutation(2, &[2, 0, 1]).unwrap();
        let x = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(p.mul(&x).unwrap().to_rows(), vec![vec![1, 1], vec![1, 0], vec![0, 1]]);
    }
}
