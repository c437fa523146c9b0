//! Abstract complete-system data: per-sublink generator tables with
//! combinatorial arrows, and destabilization matrices per oriented sublink.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lattice::Framing;
use crate::coeff::{GradedComplex, SparseMatrix, TruncatedRing};
use crate::error::{HflError, Result};
use crate::half::Ext;

/// A generator of a sublink complex. `alexander2` lists doubled Alexander
/// gradings of the surviving components, in increasing component order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelGenerator {
    pub name: String,
    pub alexander2: Vec<i64>,
    pub maslov: i64,
}

/// An arrow `source -> target` with marking counts per component of the
/// whole link (`o`, `x`) and per free marking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub o: Vec<u32>,
    pub x: Vec<u32>,
    #[serde(default)]
    pub free: Vec<u32>,
}

/// Complex data for one sublink `L - M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sublink {
    /// bit `i` set when component `i` survives
    pub mask: u32,
    pub generators: Vec<ModelGenerator>,
    pub arrows: Vec<Arrow>,
}

/// A polynomial with untruncated exponent vectors (one entry per ring variable).
pub type Poly = Vec<Vec<u32>>;

/// Destabilization matrix from the sublink `ambient` to `ambient - sub`,
/// for the orientation given by `negative` (a submask of `sub`), valid when
/// every remaining coordinate is `+inf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Destabilization {
    pub ambient: u32,
    pub sub: u32,
    pub negative: u32,
    /// `(target, source, polynomial)`
    pub entries: Vec<(usize, usize, Poly)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemModel {
    pub name: String,
    pub components: usize,
    #[serde(default)]
    pub free_markings: usize,
    /// Linking matrix (diagonal ignored).
    pub linking: Vec<Vec<i64>>,
    pub sublinks: Vec<Sublink>,
    #[serde(default)]
    pub destabilizations: Vec<Destabilization>,
}

/// Components of a mask, increasing.
pub fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

impl SystemModel {
    pub fn num_vars(&self) -> usize {
        self.components + self.free_markings
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.components) - 1
    }

    pub fn sublink(&self, mask: u32) -> Result<&Sublink> {
        self.sublinks
            .iter()
            .find(|s| s.mask == mask)
            .ok_or_else(|| HflError::validation(format!("model has no sublink with mask {mask:b}")))
    }

    /// Doubled `lk(L_i, L_sub)` for the oriented sublink (negative components flip sign).
    pub fn lk2(&self, i: usize, sub: u32, negative: u32) -> i64 {
        bits(sub)
            .into_iter()
            .filter(|&j| j != i)
            .map(|j| if negative >> j & 1 == 1 { -self.linking[i][j] } else { self.linking[i][j] })
            .sum()
    }

    /// Checks table shapes and the arrow relation `A(src) - A(tgt) = X - O`.
    pub fn validate(&self) -> Result<()> {
        let l = self.components;
        if self.linking.len() != l || self.linking.iter().any(|r| r.len() != l) {
            return Err(HflError::validation("linking matrix has the wrong shape"));
        }
        for mask in 0..=self.full_mask() {
            let sub = self.sublink(mask)?;
            let comps = bits(mask);
            for g in &sub.generators {
                if g.alexander2.len() != comps.len() {
                    return Err(HflError::validation(format!(
                        "generator {} of sublink {mask:b} has {} Alexander entries, expected {}",
                        g.name,
                        g.alexander2.len(),
                        comps.len()
                    )));
                }
                for (k, &c) in comps.iter().enumerate() {
                    let off = self.lk2(c, mask, 0);
                    if (g.alexander2[k] - off).rem_euclid(2) != 0 {
                        return Err(HflError::validation(format!(
                            "generator {} of sublink {mask:b} has Alexander grading off the lattice",
                            g.name
                        )));
                    }
                }
            }
            for a in &sub.arrows {
                let n = sub.generators.len();
                if a.source >= n || a.target >= n || a.o.len() != l || a.x.len() != l || (!a.free.is_empty() && a.free.len() != self.free_markings) {
                    return Err(HflError::validation(format!("malformed arrow in sublink {mask:b}")));
                }
                let (gs, gt) = (&sub.generators[a.source], &sub.generators[a.target]);
                for (k, &c) in comps.iter().enumerate() {
                    let lhs = gs.alexander2[k] - gt.alexander2[k];
                    let rhs = 2 * (a.x[c] as i64 - a.o[c] as i64);
                    if lhs != rhs {
                        return Err(HflError::validation(format!(
                            "arrow {} -> {} in sublink {mask:b} violates the Alexander relation for component {}",
                            gs.name,
                            gt.name,
                            c + 1
                        )));
                    }
                }
            }
        }
        for d in &self.destabilizations {
            if d.sub & !d.ambient != 0 || d.negative & !d.sub != 0 || d.sub == 0 {
                return Err(HflError::validation("destabilization masks are inconsistent"));
            }
            let (src, tgt) = (self.sublink(d.ambient)?, self.sublink(d.ambient & !d.sub)?);
            for (t, s, p) in &d.entries {
                if *t >= tgt.generators.len() || *s >= src.generators.len() || p.iter().any(|m| m.len() != self.num_vars()) {
                    return Err(HflError::validation("destabilization entry out of range"));
                }
            }
        }
        Ok(())
    }

    /// Base destabilization entries; identity on equally named generators
    /// for a single component, zero for larger sublinks, when not supplied.
    pub fn destabilization(&self, ambient: u32, sub: u32, negative: u32) -> Result<Vec<(usize, usize, Poly)>> {
        if let Some(d) = self.destabilizations.iter().find(|d| d.ambient == ambient && d.sub == sub && d.negative == negative) {
            return Ok(d.entries.clone());
        }
        if sub.count_ones() > 1 {
            return Ok(Vec::new());
        }
        let (src, tgt) = (self.sublink(ambient)?, self.sublink(ambient & !sub)?);
        let mut out = Vec::new();
        for (k, g) in src.generators.iter().enumerate() {
            let t = tgt.generators.iter().position(|h| h.name == g.name).ok_or_else(|| {
                HflError::validation(format!("no destabilization data for generator {} of sublink {ambient:b}", g.name))
            })?;
            out.push((t, k, vec![vec![0; self.num_vars()]]));
        }
        Ok(out)
    }

    /// Exponent of `U_c` along an arrow in sublink `mask` at coordinate `r` (doubled).
    fn arrow_exponent(&self, mask: u32, a: &Arrow, c: usize, k: usize, r: Ext) -> Result<u32> {
        if mask >> c & 1 == 0 {
            return Ok(a.o[c]);
        }
        let sub = self.sublink(mask)?;
        let (ax, ay) = (sub.generators[a.source].alexander2[k], sub.generators[a.target].alexander2[k]);
        let e = match r {
            Ext::PosInf => a.o[c] as i64,
            Ext::NegInf => a.x[c] as i64,
            Ext::Finite(s) => ((ax - s).max(0) - (ay - s).max(0)) / 2 + a.o[c] as i64,
        };
        u32::try_from(e).map_err(|_| HflError::invariant(format!("negative arrow exponent {e}")))
    }

    /// Differential of the sublink complex at `r` (one coordinate per surviving component).
    pub fn differential(&self, mask: u32, r: &[Ext], ring: TruncatedRing) -> Result<SparseMatrix> {
        let sub = self.sublink(mask)?;
        let comps = bits(mask);
        let n = sub.generators.len();
        let mut triples = Vec::with_capacity(sub.arrows.len());
        for a in &sub.arrows {
            let mut exps = vec![0u32; self.num_vars()];
            for c in 0..self.components {
                let k = comps.iter().position(|&x| x == c).unwrap_or(usize::MAX);
                let rc = if k == usize::MAX { Ext::PosInf } else { r[k] };
                exps[c] = self.arrow_exponent(mask, a, c, k, rc)?;
            }
            for (q, f) in a.free.iter().enumerate() {
                exps[self.components + q] = *f;
            }
            triples.push((a.target, a.source, ring.monomial_element(&exps)));
        }
        Ok(SparseMatrix::from_triples(ring, n, n, triples))
    }

    /// The generalized complex `A(H^mask, r)` with its `mu_r` gradings.
    pub fn complex_at(&self, mask: u32, r: &[Ext], ring: TruncatedRing) -> Result<GradedComplex> {
        let sub = self.sublink(mask)?;
        let names = sub.generators.iter().map(|g| g.name.clone()).collect();
        let gradings = (0..sub.generators.len()).map(|g| self.mu(mask, r, g)).collect::<Result<Vec<_>>>()?;
        GradedComplex::new(ring, names, Some(gradings), self.differential(mask, r, ring)?)
    }

    /// `mu_r(x) = M(x) - 2 sum_j max(A_j(x) - r_j, 0)`. At `r_j = -inf` the term is
    /// `2 A_j(x)` rounded down by the common parity, a constant shift.
    pub fn mu(&self, mask: u32, r: &[Ext], gen: usize) -> Result<i64> {
        let g = &self.sublink(mask)?.generators[gen];
        let mut mu = g.maslov;
        for (k, v) in r.iter().enumerate() {
            let a2 = g.alexander2[k];
            match v {
                Ext::Finite(s) => mu -= (a2 - s).max(0),
                Ext::NegInf => mu -= a2 - a2.rem_euclid(2),
                Ext::PosInf => {}
            }
        }
        Ok(mu)
    }

    /// Coordinates of `psi^{sub}(r)`: drop `sub` and shift survivors by
    /// `-lk(L_j, sub)/2` with `sub` oriented by `negative`.
    pub fn psi(&self, mask: u32, r: &[Ext], sub: u32, negative: u32) -> Vec<Ext> {
        bits(mask)
            .into_iter()
            .zip(r)
            .filter(|(c, _)| sub >> c & 1 == 0)
            .map(|(c, v)| match v {
                Ext::Finite(s) => Ext::Finite(s - self.lk2(c, sub, negative)),
                other => *other,
            })
            .collect()
    }

    /// `Phi^{sub}_r`: the inclusion into `p(r)` followed by the destabilization,
    /// whose entries at finite remaining coordinates are obtained from the base
    /// matrix by multiplying with the source inclusion powers and dividing by
    /// the target ones. Non-divisible entries mean an invalid system.
    pub fn phi(&self, mask: u32, r: &[Ext], sub: u32, negative: u32, ring: TruncatedRing) -> Result<SparseMatrix> {
        if sub == 0 {
            return self.differential(mask, r, ring);
        }
        if sub & !mask != 0 {
            return Err(HflError::validation("sublink is not contained in the ambient sublink"));
        }
        let src = self.sublink(mask)?;
        let tgt_mask = mask & !sub;
        let tgt = self.sublink(tgt_mask)?;
        let comps = bits(mask);
        let t_coords = self.psi(mask, r, sub, negative);
        let t_comps = bits(tgt_mask);
        let low = |c: usize| -> i64 {
            // a coordinate below every Alexander grading, standing in for -inf
            let lo = src.generators.iter().map(|g| g.alexander2[comps.iter().position(|&x| x == c).unwrap()]).min().unwrap_or(0);
            let lo_t = tgt.generators.iter().map(|g| g.alexander2[t_comps.iter().position(|&x| x == c).unwrap()]).min().unwrap_or(0);
            let shift: i64 = self.linking[c].iter().map(|v| v.abs()).sum::<i64>() * 2 + 4;
            let base = lo.min(lo_t) - shift;
            base - (base - self.lk2(c, mask, 0)).rem_euclid(2)
        };
        // source inclusion exponents, per generator, per variable
        let mut inc: Vec<Vec<i64>> = vec![vec![0; self.num_vars()]; src.generators.len()];
        for (x, g) in src.generators.iter().enumerate() {
            for (k, &c) in comps.iter().enumerate() {
                let a = g.alexander2[k];
                if sub >> c & 1 == 1 {
                    let neg = negative >> c & 1 == 1;
                    inc[x][c] = match (r[k], neg) {
                        (Ext::Finite(s), false) => (a - s).max(0) / 2,
                        (Ext::Finite(s), true) => (s - a).max(0) / 2,
                        (Ext::PosInf, false) | (Ext::NegInf, true) => 0,
                        _ => {
                            return Err(HflError::validation(format!(
                                "inclusion is undefined at an infinite coordinate of component {}",
                                c + 1
                            )))
                        }
                    };
                }
            }
        }
        let base = self.destabilization(mask, sub, negative)?;
        let mut triples = Vec::with_capacity(base.len());
        for (y, x, poly) in base {
            let mut shift = inc[x].clone();
            for (k, &c) in comps.iter().enumerate() {
                if sub >> c & 1 == 1 {
                    continue;
                }
                let kt = t_comps.iter().position(|&v| v == c).unwrap();
                let (rs, rt) = match (r[k], t_coords[kt]) {
                    (Ext::PosInf, _) => continue,
                    (Ext::NegInf, _) => {
                        let s = low(c);
                        (s, s - self.lk2(c, sub, negative))
                    }
                    (Ext::Finite(s), Ext::Finite(t)) => (s, t),
                    _ => unreachable!("psi keeps finiteness"),
                };
                let es = (src.generators[x].alexander2[k] - rs).max(0);
                let et = (tgt.generators[y].alexander2[kt] - rt).max(0);
                shift[c] += (es - et) / 2;
            }
            let mut monos = Vec::new();
            for m in &poly {
                let e: Vec<i64> = m.iter().zip(&shift).map(|(a, b)| *a as i64 + b).collect();
                if e.iter().any(|&v| v < 0) {
                    return Err(HflError::invariant(format!(
                        "destabilization entry {} <- {} of sublink {mask:b} is not divisible at this point",
                        tgt.generators[y].name, src.generators[x].name
                    )));
                }
                monos.push(e.into_iter().map(|v| v as u32).collect::<Vec<u32>>());
            }
            let el = ring.element(&monos);
            if !el.is_zero() {
                triples.push((y, x, el));
            }
        }
        Ok(SparseMatrix::from_triples(ring, tgt.generators.len(), src.generators.len(), triples))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| HflError::invariant(format!("serialization failed: {e}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: SystemModel = serde_json::from_str(text).map_err(|e| HflError::validation(format!("malformed system model: {e}")))?;
        m.validate()?;
        Ok(m)
    }
}

/// Sublink generator tables derived from the full link's: Alexander gradings
/// of survivors shift by `-lk(L_j, M)/2`, Maslov gradings and arrows are kept.
fn derived_sublinks(components: usize, linking: &[Vec<i64>], gens: &[ModelGenerator], arrows: &[Arrow]) -> Vec<Sublink> {
    let full = (1u32 << components) - 1;
    (0..=full)
        .map(|mask| {
            let comps = bits(mask);
            let generators = gens
                .iter()
                .map(|g| ModelGenerator {
                    name: g.name.clone(),
                    alexander2: comps
                        .iter()
                        .map(|&c| g.alexander2[c] - bits(full & !mask).iter().map(|&m| linking[c][m]).sum::<i64>())
                        .collect(),
                    maslov: g.maslov,
                })
                .collect();
            Sublink { mask, generators, arrows: arrows.to_vec() }
        })
        .collect()
}

/// The unknot: one generator in every sublink, no arrows.
pub fn unknot_model() -> SystemModel {
    let g = ModelGenerator { name: "x".into(), alexander2: vec![0], maslov: 0 };
    SystemModel {
        name: "unknot".into(),
        components: 1,
        free_markings: 0,
        linking: vec![vec![0]],
        sublinks: derived_sublinks(1, &[vec![0]], &[g], &[]),
        destabilizations: Vec::new(),
    }
}

fn mono(u1: u32, u2: u32) -> Vec<u32> {
    vec![u1, u2]
}

/// The positive Hopf link on four generators `a, b, c, d` with arrows
/// `b -> a` (O1), `b -> c` (X2), `d -> a` (O2), `d -> c` (X1).
pub fn hopf_model() -> SystemModel {
    let gens: Vec<ModelGenerator> = [("a", [1, 1], 2), ("b", [-1, 1], 1), ("c", [-1, -1], 0), ("d", [1, -1], 1)]
        .into_iter()
        .map(|(n, a, m)| ModelGenerator { name: n.into(), alexander2: a.to_vec(), maslov: m })
        .collect();
    let arrow = |s, t, o: [u32; 2], x: [u32; 2]| Arrow { source: s, target: t, o: o.to_vec(), x: x.to_vec(), free: Vec::new() };
    let arrows = vec![arrow(1, 0, [1, 0], [0, 0]), arrow(1, 2, [0, 0], [0, 1]), arrow(3, 0, [0, 1], [0, 0]), arrow(3, 2, [0, 0], [1, 0])];
    let linking = vec![vec![0, 1], vec![1, 0]];
    let one = || vec![mono(0, 0)];
    // flip of component 1 from the negative to the positive side: a, c -> a; d -> b + d
    let f1 = vec![(0, 0, one()), (0, 2, one()), (1, 3, one()), (3, 3, one())];
    // the same for component 2: a, c -> a; b -> b + d
    let f2 = vec![(0, 0, one()), (0, 2, one()), (1, 1, one()), (3, 1, one())];
    let destab = |ambient, sub, negative, entries: Vec<(usize, usize, Poly)>| Destabilization { ambient, sub, negative, entries };
    SystemModel {
        name: "hopf".into(),
        components: 2,
        free_markings: 0,
        sublinks: derived_sublinks(2, &linking, &gens, &arrows),
        linking,
        destabilizations: vec![
            destab(0b11, 0b01, 0b01, f1.clone()),
            destab(0b11, 0b10, 0b10, f2.clone()),
            destab(0b01, 0b01, 0b01, f1),
            destab(0b10, 0b10, 0b10, f2),
            // homotopy for the doubly negative diagonal: a -> b + d
            destab(0b11, 0b11, 0b11, vec![(1, 0, one()), (3, 0, one())]),
        ],
    }
}

/// Built-in framings: `lambda` for the unknot, `(p1 1; 1 p2)` for the Hopf link.
pub fn hopf_framing(p1: i64, p2: i64) -> Framing {
    Framing { rows: vec![vec![p1, 1], vec![1, p2]] }
}

/// Map from names to the built-in models.
pub fn builtin(name: &str) -> Result<SystemModel> {
    let all: BTreeMap<&str, fn() -> SystemModel> = BTreeMap::from([("unknot", unknot_model as fn() -> SystemModel), ("hopf", hopf_model)]);
    all.get(name).map(|f| f()).ok_or_else(|| HflError::validation(format!("unknown model {name:?} (expected unknot or hopf)")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: &[i64]) -> Vec<Ext> {
        v.iter().map(|&x| Ext::Finite(x)).collect()
    }

    #[test]
    fn models_validate() {
        unknot_model().validate().unwrap();
        hopf_model().validate().unwrap();
    }

    #[test]
    fn hopf_sign_regions() {
        let m = hopf_model();
        let ring = TruncatedRing::new(2, 3).unwrap();
        let show = |r: &[i64]| -> Vec<String> {
            let d = m.differential(0b11, &fin(r), ring).unwrap();
            let mut out: Vec<String> = d.entries().map(|(t, s, e)| format!("{}->{}:{}", s, t, e)).collect();
            out.sort();
            out
        };
        // both negative: b -> a + U2 c, d -> a + U1 c
        assert_eq!(show(&[-1, -1]), vec!["1->0:1", "1->2:U2", "3->0:1", "3->2:U1"]);
        // positive, negative: b -> U1 a + U2 c, d -> a + c
        assert_eq!(show(&[1, -1]), vec!["1->0:U1", "1->2:U2", "3->0:1", "3->2:1"]);
    }

    #[test]
    fn hopf_minus_minus_rank() {
        let m = hopf_model();
        for d in 1..=3 {
            let ring = TruncatedRing::new(2, 2 * d).unwrap();
            let c = m.complex_at(0b11, &[Ext::NegInf, Ext::NegInf], ring).unwrap();
            c.check_gradings(0).unwrap();
            let h = crate::coeff::stable_rank(&c, d, 0).unwrap();
            assert_eq!(h.total, d as usize);
        }
    }

    #[test]
    fn psi_shifts() {
        let m = hopf_model();
        assert_eq!(m.psi(0b11, &fin(&[1, 3]), 0b01, 0), fin(&[2]));
        assert_eq!(m.psi(0b11, &fin(&[1, 3]), 0b01, 0b01), fin(&[4]));
    }

    #[test]
    fn unknot_phi_powers() {
        let m = unknot_model();
        let ring = TruncatedRing::new(1, 10).unwrap();
        for s in -4i64..=4 {
            let plus = m.phi(1, &fin(&[2 * s]), 1, 0, ring).unwrap();
            let minus = m.phi(1, &fin(&[2 * s]), 1, 1, ring).unwrap();
            assert_eq!(plus.get(0, 0), ring.monomial_element(&[(-s).max(0) as u32]));
            assert_eq!(minus.get(0, 0), ring.monomial_element(&[s.max(0) as u32]));
        }
    }
}
