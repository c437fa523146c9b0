//! Tower profiles: multisets of `F[U]/U^k` summands read off from how the
//! flattened rank grows with the truncation order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::complex::GradedComplex;
use super::matrix::SparseMatrix;
use super::ring::TruncatedRing;
use crate::error::{HflError, Result};

/// Finite towers by length, plus towers still growing at the largest probed order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerProfile {
    /// length -> multiplicity
    pub finite: BTreeMap<u32, usize>,
    /// number of towers of length at least `open_from`
    pub open: usize,
    pub open_from: u32,
}

impl TowerProfile {
    /// Profile from explicit lengths; `None` stands for an infinite tower.
    pub fn from_lengths(lengths: &[Option<u32>], probe: u32) -> Self {
        let mut p = TowerProfile { open_from: probe, ..Default::default() };
        for l in lengths {
            match l {
                Some(k) if *k < probe => *p.finite.entry(*k).or_default() += 1,
                _ => p.open += 1,
            }
        }
        p
    }

    /// `factor * sum_j min(k_j, delta)`, valid for `delta <= open_from`.
    pub fn predicted_rank(&self, factor: usize, delta: u32) -> usize {
        let fin: usize = self.finite.iter().map(|(&k, &m)| m * k.min(delta) as usize).sum();
        factor * (fin + self.open * delta.min(self.open_from) as usize)
    }

    pub fn tower_count(&self) -> usize {
        self.finite.values().sum::<usize>() + self.open
    }
}

impl fmt::Display for TowerProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, m) in &self.finite {
            parts.push(format!("{m}x[{k}]"));
        }
        if self.open > 0 {
            parts.push(format!("{}x[>={}]", self.open, self.open_from));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Infer the unique profile with `ranks[d-1] = factor * sum_j min(k_j, d)`
/// for `d = 1..=ranks.len()`.
pub fn infer_towers(ranks: &[usize], factor: usize) -> Result<TowerProfile> {
    if factor == 0 {
        return Err(HflError::validation("tower factor must be positive"));
    }
    let depth = ranks.len() as u32;
    let mut scaled = Vec::with_capacity(ranks.len());
    for (i, &r) in ranks.iter().enumerate() {
        if r % factor != 0 {
            return Err(HflError::validation(format!(
                "rank {r} at truncation {} is not divisible by factor {factor}",
                i + 1
            )));
        }
        scaled.push((r / factor) as i64);
    }
    // growth[d-1] = number of towers of length >= d
    let mut growth = Vec::with_capacity(scaled.len());
    let mut prev = 0i64;
    for &s in &scaled {
        growth.push(s - prev);
        prev = s;
    }
    for (i, w) in growth.windows(2).enumerate() {
        if w[1] > w[0] {
            return Err(HflError::validation(format!(
                "rank growth increases between truncations {} and {}: no tower profile fits",
                i + 1,
                i + 2
            )));
        }
    }
    if growth.iter().any(|&g| g < 0) {
        return Err(HflError::validation("ranks decrease with truncation: no tower profile fits"));
    }
    let mut p = TowerProfile { open_from: depth, ..Default::default() };
    for k in 1..depth {
        let m = growth[k as usize - 1] - growth[k as usize];
        if m > 0 {
            p.finite.insert(k, m as usize);
        }
    }
    if let Some(&last) = growth.last() {
        p.open = last as usize;
    }
    Ok(p)
}

/// Single-variable complex realizing a profile: one cone `R --U^k--> R` per
/// tower (a zero map for open towers), tensored with `extra` copies of the
/// two-generator complex with zero differential. Its flattened rank at
/// truncation `delta` is `2^(extra+1) * sum_j min(k_j, delta)`.
pub fn synthetic_complex(lengths: &[Option<u32>], extra: usize, delta: u32) -> Result<GradedComplex> {
    let ring = TruncatedRing::new(1, delta)?;
    let mut parts = Vec::new();
    for (j, l) in lengths.iter().enumerate() {
        let entry = match l {
            Some(k) => ring.monomial_element(&[*k]),
            None => ring.zero(),
        };
        let k = l.unwrap_or(0) as i64;
        let diff = SparseMatrix::from_triples(ring, 2, 2, vec![(1, 0, entry)]);
        parts.push(GradedComplex::new(
            ring,
            vec![format!("x{j}"), format!("y{j}")],
            Some(vec![0, 2 * k - 1]),
            diff,
        )?);
    }
    if parts.is_empty() {
        return GradedComplex::new(ring, vec![], Some(vec![]), SparseMatrix::zero(ring, 0, 0));
    }
    let mut c = GradedComplex::direct_sum(&parts)?;
    let doubler = GradedComplex::new(
        ring,
        vec!["e0".into(), "e1".into()],
        Some(vec![0, 0]),
        SparseMatrix::zero(ring, 2, 2),
    )?;
    for _ in 0..extra {
        c = c.tensor(&doubler)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = infer_towers(&[1, 2, 3, 3], 1).unwrap();
        assert_eq!(p.finite, BTreeMap::from([(3, 1)]));
        assert_eq!(p.open, 0);
        let p = infer_towers(&[1, 2, 3, 4], 1).unwrap();
        assert!(p.finite.is_empty());
        assert_eq!((p.open, p.open_from), (1, 4));
        let p = infer_towers(&[2, 4, 6], 2).unwrap();
        assert_eq!((p.open, p.open_from), (1, 3));
    }

    #[test]
    fn inconsistent_ranks_are_rejected() {
        assert!(infer_towers(&[1, 3], 1).is_err());
        assert!(infer_towers(&[3], 2).is_err());
    }
}
