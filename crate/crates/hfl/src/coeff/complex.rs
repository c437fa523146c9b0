//! Finite free chain complexes over a truncated ring, and their flattening to F2.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::linalg::{SparseF2, sym_diff};
use super::matrix::SparseMatrix;
use super::ring::{RingElement, TruncatedRing};
use crate::error::{HflError, Result};

/// Free complex over `ring` with one basis element per generator.
/// `diff` is indexed `(target, source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    pub ring: TruncatedRing,
    pub names: Vec<String>,
    pub gradings: Option<Vec<i64>>,
    pub diff: SparseMatrix,
}

/// The same complex as an F2 complex with basis `generator x monomial`.
#[derive(Clone, Debug)]
pub struct FlatComplex {
    pub dim: usize,
    pub diff: SparseF2,
    pub gradings: Option<Vec<i64>>,
}

/// Homology ranks: total and (when graded) per grading.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRanks {
    pub total: usize,
    pub by_grading: BTreeMap<i64, usize>,
}

/// Reduce a grading to its class modulo `modulus` (no-op when `modulus == 0`).
pub fn grading_key(g: i64, modulus: i64) -> i64 {
    if modulus == 0 {
        g
    } else {
        g.rem_euclid(modulus)
    }
}

impl GradedComplex {
    pub fn new(
        ring: TruncatedRing,
        names: Vec<String>,
        gradings: Option<Vec<i64>>,
        diff: SparseMatrix,
    ) -> Result<Self> {
        let n = names.len();
        if diff.nrows != n || diff.ncols != n {
            return Err(HflError::validation(format!(
                "differential is {}x{} but there are {n} generators",
                diff.nrows, diff.ncols
            )));
        }
        if let Some(g) = &gradings {
            if g.len() != n {
                return Err(HflError::validation(format!(
                    "{} gradings given for {n} generators",
                    g.len()
                )));
            }
        }
        if diff.ring != ring {
            return Err(HflError::validation("differential ring differs from complex ring"));
        }
        Ok(GradedComplex { ring, names, gradings, diff })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Error naming the first `(source, target)` pair where `diff^2` is nonzero.
    pub fn check_d_squared(&self) -> Result<()> {
        let sq = self.diff.mul(&self.diff)?;
        if let Some((r, c)) = sq.first_nonzero() {
            return Err(HflError::invariant(format!(
                "differential squares to {} from {} to {}",
                sq.get(r, c),
                self.names[c],
                self.names[r]
            )));
        }
        Ok(())
    }

    /// Every monomial of every entry must drop the grading by exactly one
    /// (each `U_i` has degree -2). `modulus` > 0 compares gradings mod it.
    pub fn check_gradings(&self, modulus: i64) -> Result<()> {
        let Some(g) = &self.gradings else { return Ok(()) };
        for (r, c, e) in self.diff.entries() {
            for &m in e.monomials() {
                let lhs = g[r] - 2 * self.ring.degree(m) as i64;
                if grading_key(lhs - (g[c] - 1), modulus) != 0 {
                    return Err(HflError::invariant(format!(
                        "entry {} from {} (grading {}) to {} (grading {}) does not drop grading by one",
                        e, self.names[c], g[c], self.names[r], g[r]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Same complex with a smaller truncation order.
    pub fn truncate(&self, delta: u32) -> Result<GradedComplex> {
        let ring = self.ring.with_delta(delta)?;
        if delta > self.ring.delta {
            return Err(HflError::validation("cannot raise the truncation order of a complex"));
        }
        Ok(GradedComplex {
            ring,
            names: self.names.clone(),
            gradings: self.gradings.clone(),
            diff: self.diff.truncate(ring),
        })
    }

    pub fn flatten(&self) -> FlatComplex {
        let mc = self.ring.monomial_count();
        let n = self.len();
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); n * mc];
        for c in 0..n {
            let entries = self.diff.col(c);
            for k in 0..mc {
                let src = self.ring.monomial_at(k);
                let mut col: Vec<u32> = Vec::new();
                for (r, e) in entries {
                    let mut part: Vec<u32> = e
                        .monomials()
                        .iter()
                        .filter_map(|&m| self.ring.mono_mul(m, src))
                        .map(|m| (r * mc + self.ring.monomial_index(m)) as u32)
                        .collect();
                    part.sort_unstable();
                    col = sym_diff(&col, &part);
                }
                cols[c * mc + k] = col;
            }
        }
        let gradings = self.gradings.as_ref().map(|g| {
            let mut out = Vec::with_capacity(n * mc);
            for &gc in g {
                for k in 0..mc {
                    out.push(gc - 2 * self.ring.degree(self.ring.monomial_at(k)) as i64);
                }
            }
            out
        });
        FlatComplex { dim: n * mc, diff: SparseF2::new(n * mc, cols), gradings }
    }

    /// F2 homology ranks of the flattened complex. Checks `diff^2 = 0` first.
    pub fn homology_ranks(&self) -> Result<HomologyRanks> {
        self.homology_ranks_mod(0)
    }

    /// As [`homology_ranks`](Self::homology_ranks) with gradings taken mod `modulus`.
    pub fn homology_ranks_mod(&self, modulus: i64) -> Result<HomologyRanks> {
        self.check_d_squared()?;
        Ok(self.flatten().homology(modulus))
    }

    /// Classify the element `sum x_k * gen_k` (terms `(generator, x)`): returns
    /// `(is_cycle, is_nonzero_in_homology)`, the latter meaningful for cycles.
    pub fn classify_element(&self, terms: &[(usize, RingElement)]) -> Result<(bool, bool)> {
        self.check_d_squared()?;
        let mc = self.ring.monomial_count();
        let mut v: Vec<u32> = Vec::new();
        for (g, x) in terms {
            if *g >= self.len() || x.ring != self.ring {
                return Err(HflError::validation("element term outside the complex"));
            }
            let mut part: Vec<u32> = x.monomials().iter().map(|&m| (g * mc + self.ring.monomial_index(m)) as u32).collect();
            part.sort_unstable();
            v = sym_diff(&v, &part);
        }
        let flat = self.flatten();
        let mut image: Vec<u32> = Vec::new();
        for &i in &v {
            image = sym_diff(&image, &flat.diff.cols[i as usize]);
        }
        if !image.is_empty() {
            return Ok((false, false));
        }
        let base = flat.diff.rank();
        let mut cols = flat.diff.cols;
        cols.push(v);
        Ok((true, SparseF2::new(flat.dim, cols).rank() > base))
    }

    /// Direct sum of complexes over the same ring.
    pub fn direct_sum(parts: &[GradedComplex]) -> Result<GradedComplex> {
        let ring = parts.first().map(|p| p.ring).ok_or_else(|| HflError::validation("empty direct sum"))?;
        let n: usize = parts.iter().map(|p| p.len()).sum();
        let graded = parts.iter().all(|p| p.gradings.is_some());
        let mut names = Vec::with_capacity(n);
        let mut gradings = Vec::with_capacity(n);
        let mut triples = Vec::new();
        let mut off = 0;
        for p in parts {
            if p.ring != ring {
                return Err(HflError::validation("direct sum of complexes over different rings"));
            }
            names.extend(p.names.iter().cloned());
            if let Some(g) = &p.gradings {
                gradings.extend_from_slice(g);
            }
            triples.extend(p.diff.entries().map(|(r, c, e)| (r + off, c + off, e.clone())));
            off += p.len();
        }
        GradedComplex::new(
            ring,
            names,
            graded.then_some(gradings),
            SparseMatrix::from_triples(ring, n, n, triples),
        )
    }

    /// Tensor product over the ring (no signs in characteristic two).
    pub fn tensor(&self, other: &GradedComplex) -> Result<GradedComplex> {
        if self.ring != other.ring {
            return Err(HflError::validation("tensor product of complexes over different rings"));
        }
        let (n, m) = (self.len(), other.len());
        let idx = |i: usize, j: usize| i * m + j;
        let mut names = Vec::with_capacity(n * m);
        for a in &self.names {
            for b in &other.names {
                names.push(format!("{a}*{b}"));
            }
        }
        let gradings = match (&self.gradings, &other.gradings) {
            (Some(g), Some(h)) => Some(g.iter().flat_map(|a| h.iter().map(move |b| a + b)).collect()),
            _ => None,
        };
        let mut triples = Vec::new();
        for (r, c, e) in self.diff.entries() {
            for j in 0..m {
                triples.push((idx(r, j), idx(c, j), e.clone()));
            }
        }
        for (r, c, e) in other.diff.entries() {
            for i in 0..n {
                triples.push((idx(i, r), idx(i, c), e.clone()));
            }
        }
        GradedComplex::new(self.ring, names, gradings, SparseMatrix::from_triples(self.ring, n * m, n * m, triples))
    }

    /// Restrict to a subset of generators (in the given order); entries to
    /// dropped generators are discarded.
    pub fn restrict(&self, keep: &[usize]) -> Result<GradedComplex> {
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let triples = self
            .diff
            .entries()
            .filter(|(r, c, _)| pos[*r] != usize::MAX && pos[*c] != usize::MAX)
            .map(|(r, c, e)| (pos[r], pos[c], e.clone()))
            .collect::<Vec<_>>();
        GradedComplex::new(
            self.ring,
            keep.iter().map(|&i| self.names[i].clone()).collect(),
            self.gradings.as_ref().map(|g| keep.iter().map(|&i| g[i]).collect()),
            SparseMatrix::from_triples(self.ring, keep.len(), keep.len(), triples),
        )
    }
}

impl FlatComplex {
    /// Homology ranks; a single elimination pass attributes each pivot to the
    /// grading of its column, which is valid because the differential is homogeneous.
    pub fn homology(&self, modulus: i64) -> HomologyRanks {
        let red = self.diff.reduce(false);
        let rank = red.rank();
        let mut out = HomologyRanks { total: self.dim - 2 * rank, by_grading: BTreeMap::new() };
        if let Some(g) = &self.gradings {
            let mut dims: BTreeMap<i64, i64> = BTreeMap::new();
            for &x in g {
                *dims.entry(grading_key(x, modulus)).or_default() += 1;
            }
            for (j, col) in red.reduced.iter().enumerate() {
                if !col.is_empty() {
                    let k = grading_key(g[j], modulus);
                    *dims.get_mut(&k).unwrap() -= 1;
                    *dims.entry(grading_key(g[j] - 1, modulus)).or_default() -= 1;
                }
            }
            for (k, v) in dims {
                debug_assert!(v >= 0);
                if v > 0 {
                    out.by_grading.insert(k, v as usize);
                }
            }
        }
        out
    }
}
