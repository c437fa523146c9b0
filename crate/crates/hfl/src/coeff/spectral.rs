//! Spectral sequences of finitely filtered complexes, computed on the F2 flattening.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::complex::GradedComplex;
use super::matrix::{EntryJson, SparseMatrix};
use super::ring::TruncatedRing;
use super::linalg::{kernel_basis, rank_of, BitVec};
use crate::error::{HflError, Result};

/// A complex with an increasing filtration: `level[i]` for each generator,
/// and every differential entry goes to a level no higher than its source.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub base: GradedComplex,
    pub level: Vec<i64>,
}

impl FilteredComplex {
    pub fn new(base: GradedComplex, level: Vec<i64>) -> Result<Self> {
        if level.len() != base.len() {
            return Err(HflError::validation(format!(
                "{} filtration levels for {} generators",
                level.len(),
                base.len()
            )));
        }
        for (r, c, _) in base.diff.entries() {
            if level[r] > level[c] {
                return Err(HflError::validation(format!(
                    "differential from {} (level {}) to {} (level {}) raises the filtration",
                    base.names[c], level[c], base.names[r], level[r]
                )));
            }
        }
        Ok(FilteredComplex { base, level })
    }
}

/// File format of a filtered complex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FilteredJson {
    pub num_vars: usize,
    pub delta: u32,
    pub generators: Vec<FilteredGeneratorJson>,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FilteredGeneratorJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<i64>,
    pub level: i64,
}

impl FilteredComplex {
    pub fn from_json(j: &FilteredJson) -> Result<Self> {
        let ring = TruncatedRing::new(j.num_vars, j.delta)?;
        let n = j.generators.len();
        let graded = j.generators.iter().all(|g| g.grading.is_some());
        let base = GradedComplex::new(
            ring,
            j.generators.iter().map(|g| g.name.clone()).collect(),
            graded.then(|| j.generators.iter().map(|g| g.grading.unwrap()).collect()),
            SparseMatrix::from_entries(ring, n, n, &j.entries)?,
        )?;
        base.check_d_squared()?;
        FilteredComplex::new(base, j.generators.iter().map(|g| g.level).collect())
    }

    pub fn to_json(&self) -> FilteredJson {
        FilteredJson {
            num_vars: self.base.ring.num_vars,
            delta: self.base.ring.delta,
            generators: (0..self.base.len())
                .map(|i| FilteredGeneratorJson {
                    name: self.base.names[i].clone(),
                    grading: self.base.gradings.as_ref().map(|g| g[i]),
                    level: self.level[i],
                })
                .collect(),
            entries: self.base.diff.to_entries(),
        }
    }
}

/// Ranks of one page, keyed by `(filtration level, grading)`; ungraded
/// complexes use grading 0 throughout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page {
    pub r: u32,
    pub ranks: BTreeMap<(i64, i64), usize>,
    pub total: usize,
}

impl Page {
    /// Ranks summed over filtration levels, per grading.
    pub fn by_grading(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(_, k), &v) in &self.ranks {
            *out.entry(k).or_default() += v;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSequence {
    pub pages: Vec<Page>,
    pub infinity: Page,
    /// Rank of the homology of the whole complex.
    pub homology_total: usize,
}

/// Pages `E^1 .. E^{L+1}` where `L` is the span of filtration levels; the last
/// page is `E^infinity`. Uses `E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1})`
/// with `Z^r_p = {x in F_p : dx in F_{p-r}}`.
pub fn spectral_sequence(f: &FilteredComplex) -> Result<SpectralSequence> {
    f.base.check_d_squared()?;
    f.base.check_gradings(0)?;
    let flat = f.base.flatten();
    let mc = f.base.ring.monomial_count();
    let dim = flat.dim;
    let level: Vec<i64> = (0..dim).map(|i| f.level[i / mc]).collect();
    let graded = flat.gradings.is_some();
    let deg: Vec<i64> = flat.gradings.clone().unwrap_or_else(|| vec![0; dim]);
    let images: Vec<BitVec> = flat
        .diff
        .cols
        .iter()
        .map(|c| BitVec::from_indices(dim, c.iter().map(|&i| i as usize)))
        .collect();
    let homology_total = flat.homology(0).total;

    if dim == 0 {
        let empty = Page { r: 1, ranks: BTreeMap::new(), total: 0 };
        return Ok(SpectralSequence { pages: vec![empty.clone()], infinity: empty, homology_total });
    }
    let pmin = *level.iter().min().unwrap();
    let pmax = *level.iter().max().unwrap();
    let span = (pmax - pmin) as u32;
    let degrees: BTreeSet<i64> = deg.iter().copied().collect();

    let mut cache: HashMap<(i64, u32, i64), Vec<BitVec>> = HashMap::new();
    // basis of Z^r_p in grading k, as vectors of the flattened space
    let mut cycles = |p: i64, r: u32, k: i64| -> Vec<BitVec> {
        if let Some(v) = cache.get(&(p, r, k)) {
            return v.clone();
        }
        let dom: Vec<usize> = (0..dim).filter(|&i| level[i] <= p && deg[i] == k).collect();
        let cut = p - r as i64;
        let imgs: Vec<BitVec> = dom
            .iter()
            .map(|&i| BitVec::from_indices(dim, images[i].ones().filter(|&t| level[t] > cut)))
            .collect();
        let basis: Vec<BitVec> = kernel_basis(&imgs)
            .into_iter()
            .map(|v| BitVec::from_indices(dim, v.ones().map(|t| dom[t])))
            .collect();
        cache.insert((p, r, k), basis.clone());
        basis
    };
    let apply_d = |v: &BitVec| -> BitVec {
        let mut out = BitVec::zeros(dim);
        for i in v.ones() {
            out.xor_assign(&images[i]);
        }
        out
    };

    let mut pages = Vec::new();
    for r in 1..=span + 1 {
        let mut ranks = BTreeMap::new();
        let mut total = 0;
        for p in pmin..=pmax {
            for &k in &degrees {
                let z = cycles(p, r, k).len();
                if z == 0 {
                    continue;
                }
                let mut gens: Vec<BitVec> = cycles(p - 1, r - 1, k);
                let src_deg = if graded { k + 1 } else { k };
                if !graded || degrees.contains(&src_deg) {
                    gens.extend(cycles(p + r as i64 - 1, r - 1, src_deg).iter().map(&apply_d));
                }
                let e = z - rank_of(gens.into_iter().filter(|v| !v.is_zero()).chain(std::iter::empty()));
                if e > 0 {
                    ranks.insert((p, k), e);
                    total += e;
                }
            }
        }
        pages.push(Page { r, ranks, total });
    }
    let infinity = pages.last().cloned().unwrap();
    Ok(SpectralSequence { pages, infinity, homology_total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::matrix::SparseMatrix;
    use crate::coeff::ring::TruncatedRing;

    fn f2() -> TruncatedRing {
        TruncatedRing::new(0, 1).unwrap()
    }

    #[test]
    fn isomorphism_between_levels_kills_e2() {
        let r = f2();
        let diff = SparseMatrix::from_triples(r, 2, 2, vec![(1, 0, r.one())]);
        let c = GradedComplex::new(r, vec!["x".into(), "y".into()], Some(vec![1, 0]), diff).unwrap();
        let ss = spectral_sequence(&FilteredComplex::new(c, vec![1, 0]).unwrap()).unwrap();
        assert_eq!(ss.pages[0].total, 2);
        assert_eq!(ss.pages[1].total, 0);
        assert_eq!(ss.homology_total, 0);
    }

    #[test]
    fn zero_differential_is_degenerate() {
        let r = f2();
        let c = GradedComplex::new(r, vec!["x".into(), "y".into(), "z".into()], Some(vec![0, 1, 1]), SparseMatrix::zero(r, 3, 3))
            .unwrap();
        let ss = spectral_sequence(&FilteredComplex::new(c, vec![0, 2, 5]).unwrap()).unwrap();
        assert!(ss.pages.iter().all(|p| p.total == 3));
    }

    #[test]
    fn filtration_raising_entry_is_rejected() {
        let r = f2();
        let diff = SparseMatrix::from_triples(r, 2, 2, vec![(1, 0, r.one())]);
        let c = GradedComplex::new(r, vec!["x".into(), "y".into()], None, diff).unwrap();
        assert!(FilteredComplex::new(c, vec![0, 1]).is_err());
    }
}
