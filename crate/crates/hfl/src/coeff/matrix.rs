//! Sparse matrices with [`RingElement`] entries, stored column by column.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ring::{RingElement, TruncatedRing};
use crate::error::{HflError, Result};

/// Sparse `nrows x ncols` matrix; column `j` lists `(row, entry)` sorted by row,
/// with no zero entries. Column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub ring: TruncatedRing,
    pub nrows: usize,
    pub ncols: usize,
    cols: Vec<Vec<(usize, RingElement)>>,
}

impl SparseMatrix {
    pub fn zero(ring: TruncatedRing, nrows: usize, ncols: usize) -> Self {
        SparseMatrix { ring, nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(ring: TruncatedRing, n: usize) -> Self {
        let cols = (0..n).map(|i| vec![(i, ring.one())]).collect();
        SparseMatrix { ring, nrows: n, ncols: n, cols }
    }

    /// Build from `(row, col, entry)` triples; repeated positions are summed.
    pub fn from_triples(
        ring: TruncatedRing,
        nrows: usize,
        ncols: usize,
        triples: impl IntoIterator<Item = (usize, usize, RingElement)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, RingElement>> = vec![BTreeMap::new(); ncols];
        for (r, c, e) in triples {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) out of bounds {nrows}x{ncols}");
            if e.is_zero() {
                continue;
            }
            match acc[c].get_mut(&r) {
                Some(x) => x.add_assign(&e),
                None => {
                    acc[c].insert(r, e);
                }
            }
        }
        let cols = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, e)| !e.is_zero()).collect())
            .collect();
        SparseMatrix { ring, nrows, ncols, cols }
    }

    pub fn col(&self, j: usize) -> &[(usize, RingElement)] {
        &self.cols[j]
    }

    pub fn get(&self, r: usize, c: usize) -> RingElement {
        match self.cols[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(pos) => self.cols[c][pos].1.clone(),
            Err(_) => self.ring.zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, e: RingElement) {
        let col = &mut self.cols[c];
        match col.binary_search_by_key(&r, |(i, _)| *i) {
            Ok(pos) => {
                if e.is_zero() {
                    col.remove(pos);
                } else {
                    col[pos].1 = e;
                }
            }
            Err(pos) => {
                if !e.is_zero() {
                    col.insert(pos, (r, e));
                }
            }
        }
    }

    /// Iterate over all nonzero entries as `(row, col, entry)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RingElement)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, e)| (*r, c, e)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ncols != other.nrows || self.ring != other.ring {
            return Err(HflError::invariant(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut cols = Vec::with_capacity(other.ncols);
        for j in 0..other.ncols {
            let mut acc: BTreeMap<usize, RingElement> = BTreeMap::new();
            for (k, b) in &other.cols[j] {
                for (i, a) in &self.cols[*k] {
                    let p = a.mul(b);
                    if p.is_zero() {
                        continue;
                    }
                    match acc.get_mut(i) {
                        Some(x) => x.add_assign(&p),
                        None => {
                            acc.insert(*i, p);
                        }
                    }
                }
            }
            cols.push(acc.into_iter().filter(|(_, e)| !e.is_zero()).collect());
        }
        Ok(SparseMatrix { ring: self.ring, nrows: self.nrows, ncols: other.ncols, cols })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.nrows != other.nrows || self.ncols != other.ncols || self.ring != other.ring {
            return Err(HflError::invariant(format!(
                "cannot add {}x{} and {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let triples = self
            .entries()
            .chain(other.entries())
            .map(|(r, c, e)| (r, c, e.clone()))
            .collect::<Vec<_>>();
        Ok(SparseMatrix::from_triples(self.ring, self.nrows, self.ncols, triples))
    }

    pub fn add_assign(&mut self, other: &SparseMatrix) -> Result<()> {
        *self = self.add(other)?;
        Ok(())
    }

    /// Copy of the matrix over a ring with smaller truncation.
    pub fn truncate(&self, ring: TruncatedRing) -> SparseMatrix {
        let triples = self.entries().map(|(r, c, e)| (r, c, e.truncate(ring))).collect::<Vec<_>>();
        SparseMatrix::from_triples(ring, self.nrows, self.ncols, triples)
    }

    /// Place `block` at offset `(row0, col0)` inside a matrix of the given shape.
    pub fn embed(&self, nrows: usize, ncols: usize, row0: usize, col0: usize) -> SparseMatrix {
        let triples = self.entries().map(|(r, c, e)| (r + row0, c + col0, e.clone())).collect::<Vec<_>>();
        SparseMatrix::from_triples(self.ring, nrows, ncols, triples)
    }

    /// Extract the block with rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> SparseMatrix {
        let mut triples = Vec::new();
        for c in c0..c0 + nc {
            for (r, e) in &self.cols[c] {
                if *r >= r0 && *r < r0 + nr {
                    triples.push((r - r0, c - c0, e.clone()));
                }
            }
        }
        SparseMatrix::from_triples(self.ring, nr, nc, triples)
    }

    /// First nonzero entry in column-major order, as `(row, col)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries().next().map(|(r, c, _)| (r, c))
    }

    /// `k`-th power of a square matrix (`k = 0` gives the identity).
    pub fn pow(&self, k: usize) -> Result<SparseMatrix> {
        let mut acc = SparseMatrix::identity(self.ring, self.nrows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

/// Serialized matrix entry: `(row, col)` and the exponent vectors of its monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub monomials: Vec<Vec<u32>>,
}

impl SparseMatrix {
    pub fn to_entries(&self) -> Vec<EntryJson> {
        self.entries().map(|(r, c, e)| EntryJson { row: r, col: c, monomials: e.terms() }).collect()
    }

    pub fn from_entries(ring: TruncatedRing, nrows: usize, ncols: usize, entries: &[EntryJson]) -> Result<Self> {
        let mut triples = Vec::with_capacity(entries.len());
        for e in entries {
            if e.row >= nrows || e.col >= ncols {
                return Err(HflError::validation(format!(
                    "entry ({}, {}) outside a {nrows}x{ncols} matrix",
                    e.row, e.col
                )));
            }
            for m in &e.monomials {
                if m.len() != ring.num_vars {
                    return Err(HflError::validation(format!(
                        "monomial {m:?} has {} exponents, ring has {} variables",
                        m.len(),
                        ring.num_vars
                    )));
                }
            }
            triples.push((e.row, e.col, ring.element(&e.monomials)));
        }
        Ok(SparseMatrix::from_triples(ring, nrows, ncols, triples))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let r = TruncatedRing::new(1, 3).unwrap();
        let u = r.var(0);
        let m = SparseMatrix::from_triples(r, 2, 2, vec![(1, 0, u.clone()), (0, 1, r.one())]);
        let id = SparseMatrix::identity(r, 2);
        assert_eq!(m.mul(&id).unwrap(), m);
        let sq = m.mul(&m).unwrap();
        assert_eq!(sq.get(0, 0), u);
        assert_eq!(sq.get(1, 1), u);
    }

    #[test]
    fn repeated_triples_cancel() {
        let r = TruncatedRing::new(0, 1).unwrap();
        let m = SparseMatrix::from_triples(r, 1, 1, vec![(0, 0, r.one()), (0, 0, r.one())]);
        assert!(m.is_zero());
    }
}
