//! Gaussian cancellation of unit differential entries, and the stable rank
//! `rank(H(C^{2d}) -> H(C^d))` used to read off free towers.

use std::collections::{BTreeMap, BTreeSet};

use super::complex::{grading_key, GradedComplex};
use super::linalg::SparseF2;
use super::matrix::SparseMatrix;
use super::ring::RingElement;
use crate::error::{HflError, Result};

/// Cancel unit entries `x -> y` until none remain. The result is chain
/// homotopy equivalent over the ring, with generators a subset of the input.
pub fn reduce_units(c: &GradedComplex) -> GradedComplex {
    let n = c.len();
    let mut out: Vec<BTreeMap<usize, RingElement>> = vec![BTreeMap::new(); n];
    let mut inn: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (r, col, e) in c.diff.entries() {
        out[col].insert(r, e.clone());
        inn[r].insert(col);
    }
    let mut alive = vec![true; n];

    let find_unit = |out: &Vec<BTreeMap<usize, RingElement>>, x: usize| -> Option<usize> {
        let mut fallback = None;
        for (&y, e) in &out[x] {
            if y == x || !e.is_unit() {
                continue;
            }
            if e.is_one() {
                return Some(y);
            }
            fallback.get_or_insert(y);
        }
        fallback
    };

    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            while alive[x] {
                let Some(y) = find_unit(&out, x) else { break };
                let uinv = out[x][&y].inverse().expect("unit entry");
                let sources: Vec<usize> = inn[y].iter().copied().filter(|&w| w != x && w != y).collect();
                let targets: Vec<(usize, RingElement)> =
                    out[x].iter().filter(|(&z, _)| z != x && z != y).map(|(&z, e)| (z, e.mul(&uinv))).collect();
                for &w in &sources {
                    let a = out[w][&y].clone();
                    for (z, b) in &targets {
                        let add = a.mul(b);
                        if add.is_zero() {
                            continue;
                        }
                        let entry = out[w].entry(*z).or_insert_with(|| c.ring.zero());
                        entry.add_assign(&add);
                        if entry.is_zero() {
                            out[w].remove(z);
                            inn[*z].remove(&w);
                        } else {
                            inn[*z].insert(w);
                        }
                    }
                }
                for v in [x, y] {
                    alive[v] = false;
                    for t in std::mem::take(&mut out[v]).into_keys() {
                        inn[t].remove(&v);
                    }
                    for s in std::mem::take(&mut inn[v]) {
                        out[s].remove(&v);
                    }
                }
                changed = true;
            }
        }
    }

    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let mut pos = vec![usize::MAX; n];
    for (k, &i) in keep.iter().enumerate() {
        pos[i] = k;
    }
    let triples = keep
        .iter()
        .flat_map(|&s| out[s].iter().map(move |(&t, e)| (t, s, e.clone())))
        .map(|(t, s, e)| (pos[t], pos[s], e))
        .collect::<Vec<_>>();
    GradedComplex {
        ring: c.ring,
        names: keep.iter().map(|&i| c.names[i].clone()).collect(),
        gradings: c.gradings.as_ref().map(|g| keep.iter().map(|&i| g[i]).collect()),
        diff: SparseMatrix::from_triples(c.ring, keep.len(), keep.len(), triples),
    }
}

/// Ranks of `H(C) -> H(C / U^delta)` where `c` is given at truncation `2 delta`
/// (or larger). Towers of length at least `delta` contribute `delta` each to
/// the per-variable-collapsed count; torsion shorter than the truncation
/// boundary is cut away. Returned per grading class (mod `modulus`) and in total.
pub fn stable_rank(c: &GradedComplex, delta: u32, modulus: i64) -> Result<super::complex::HomologyRanks> {
    if c.ring.delta < 2 * delta {
        return Err(HflError::validation(format!(
            "stable rank at {delta} needs a complex truncated at >= {}",
            2 * delta
        )));
    }
    c.check_d_squared()?;
    let big = c.flatten();
    let small_c = c.truncate(delta)?;
    let small = small_c.flatten();
    let (mb, ms) = (c.ring.monomial_count(), small_c.ring.monomial_count());
    let project = |idx: u32| -> Option<u32> {
        let (g, k) = (idx as usize / mb, idx as usize % mb);
        let m = c.ring.monomial_at(k);
        small_c.ring.truncate_monomial(m).map(|m| (g * ms + small_c.ring.monomial_index(m)) as u32)
    };

    let key_big: Vec<i64> = match &big.gradings {
        Some(g) => g.iter().map(|&x| grading_key(x, modulus)).collect(),
        None => vec![0; big.dim],
    };
    let key_small: Vec<i64> = match &small.gradings {
        Some(g) => g.iter().map(|&x| grading_key(x, modulus)).collect(),
        None => vec![0; small.dim],
    };
    let graded = c.gradings.is_some();
    let keys: BTreeSet<i64> = key_big.iter().copied().collect();

    let mut result = super::complex::HomologyRanks::default();
    for &k in &keys {
        // cycles of the big complex in this grading
        let cols_k: Vec<usize> = (0..big.dim).filter(|&j| key_big[j] == k).collect();
        let block = SparseF2::new(big.dim, cols_k.iter().map(|&j| big.diff.cols[j].clone()).collect());
        let kernel = block.reduce(true).kernel();
        // boundaries of the small complex landing in this grading
        let from = |j: usize| if graded { grading_key(key_small[j] - 1, modulus) == k } else { true };
        let mut cols: Vec<Vec<u32>> =
            (0..small.dim).filter(|&j| from(j)).map(|j| small.diff.cols[j].clone()).collect();
        let nb = cols.len();
        for v in kernel {
            // projection is injective on the basis vectors it keeps
            let mut img: Vec<u32> = v.iter().filter_map(|&t| project(cols_k[t as usize] as u32)).collect();
            img.sort_unstable();
            cols.push(img);
        }
        let red = SparseF2::new(small.dim, cols).reduce(false);
        let extra = red.reduced[nb..].iter().filter(|c| !c.is_empty()).count();
        if extra > 0 {
            result.total += extra;
            if graded {
                result.by_grading.insert(k, extra);
            }
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ring::TruncatedRing;

    fn a_minus_minus(delta: u32) -> GradedComplex {
        let r = TruncatedRing::new(2, delta).unwrap();
        let (u1, u2, one) = (r.var(0), r.var(1), r.one());
        // generators a, b, c, d
        let diff = SparseMatrix::from_triples(
            r,
            4,
            4,
            vec![(0, 1, one.clone()), (2, 1, u2), (0, 3, one), (2, 3, u1)],
        );
        GradedComplex::new(r, ["a", "b", "c", "d"].map(String::from).to_vec(), Some(vec![0, 1, 2, 1]), diff)
            .unwrap()
    }

    #[test]
    fn cancellation_preserves_homology() {
        for d in 1..4 {
            let c = a_minus_minus(d);
            let red = reduce_units(&c);
            assert_eq!(red.len(), 2);
            assert_eq!(red.homology_ranks().unwrap(), c.homology_ranks().unwrap());
        }
    }

    #[test]
    fn stable_rank_of_a_minus_minus_is_delta() {
        for d in 1..4 {
            let c = a_minus_minus(2 * d);
            assert_eq!(stable_rank(&c, d, 0).unwrap().total, d as usize);
        }
    }
}
