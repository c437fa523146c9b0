//! Truncated surgery complexes: index regions, assembly of the differential
//! from `Phi` maps, Spin^c splitting, gradings and homology.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::lattice::{adjugate, determinant, Framing};
use super::model::{bits, SystemModel};
use crate::coeff::{infer_towers, reduce_units, stable_rank, GradedComplex, HomologyRanks, SparseMatrix, TowerProfile, TruncatedRing};
use crate::error::{HflError, Result};
use crate::half::{fmt_half, Ext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mode {
    /// Horizontal truncation of a knot at `|s| <= b`.
    KnotB,
    /// Parallelepiped supports; maps leaving them are dropped.
    Combined,
    /// Parallelepiped supports; maps leaving them are folded back.
    Folded,
    /// Box window `|s_i| <= b` per Spin^c class, for degenerate framings.
    VerticalOnly,
}

impl Mode {
    pub fn parse(text: &str) -> Result<Mode> {
        match text {
            "knot_b" => Ok(Mode::KnotB),
            "combined" => Ok(Mode::Combined),
            "folded" => Ok(Mode::Folded),
            "vertical_only" => Ok(Mode::VerticalOnly),
            _ => Err(HflError::validation(format!("unknown truncation mode {text:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::KnotB => "knot_b",
            Mode::Combined => "combined",
            Mode::Folded => "folded",
            Mode::VerticalOnly => "vertical_only",
        })
    }
}

/// Truncation parameters. `m` is the diagonal enlargement `Lambda~ - Lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub mode: Mode,
    pub b: i64,
    pub m: Vec<i64>,
}

impl Truncation {
    /// Defaults: `b = ceil(max|A|) + max|lambda_i| + 2`, and
    /// `m_i = 4 (b + sum_j |c_ij|)` rounded up to a multiple of `|det Lambda|`.
    pub fn defaults(mode: Mode, model: &SystemModel, framing: &Framing, b: Option<i64>, m: Option<Vec<i64>>) -> Result<Self> {
        let max_a = model
            .sublinks
            .iter()
            .flat_map(|s| s.generators.iter().flat_map(|g| g.alexander2.iter()))
            .map(|a| a.abs())
            .max()
            .unwrap_or(0);
        let lam = (0..framing.dim()).map(|i| framing.rows[i][i].abs()).max().unwrap_or(0);
        let b = b.unwrap_or((max_a + 1) / 2 + lam + 2);
        if b < 1 {
            return Err(HflError::validation("b must be positive"));
        }
        let det = framing.determinant().abs();
        let m = match m {
            Some(v) if v.len() == 1 => vec![v[0]; framing.dim()],
            Some(v) if v.len() == framing.dim() => v,
            Some(_) => return Err(HflError::validation("--mtilde needs one value or one per component")),
            None => (0..framing.dim())
                .map(|i| {
                    let base = 4 * (b + framing.rows[i].iter().map(|v| v.abs()).sum::<i64>());
                    let step = det.max(1);
                    (base + step - 1) / step * step
                })
                .collect(),
        };
        if m.iter().any(|&v| v <= 0) {
            return Err(HflError::validation("enlargements m_i must be positive"));
        }
        Ok(Truncation { mode, b, m })
    }
}

/// Index region of one vertex `eps` of the cube.
#[derive(Clone, Debug)]
struct Region {
    points: Vec<Vec<i64>>,
    set: HashMap<Vec<i64>, usize>,
    /// parallelepiped data: center (doubled), edge matrix rows, adjugate, determinant, tie signs
    para: Option<Para>,
}

#[derive(Clone, Debug)]
struct Para {
    center2: Vec<i64>,
    adj: Vec<Vec<i64>>,
    det: i64,
    edges: Vec<Vec<i64>>,
    tie: Vec<i64>,
}

impl Para {
    /// `u * det` for the doubled point (u in [-1, 1] inside).
    fn coords(&self, s2: &[i64]) -> Vec<i64> {
        let v: Vec<i64> = s2.iter().zip(&self.center2).map(|(a, b)| a - b).collect();
        let n = v.len();
        (0..n).map(|j| (0..n).map(|i| v[i] * self.adj[i][j]).sum()).collect()
    }

    /// Inside test with generic tie-breaking on the boundary faces.
    fn contains(&self, s2: &[i64]) -> bool {
        let d = self.det.abs();
        let sg = self.det.signum();
        self.coords(s2).iter().zip(&self.tie).all(|(&u, &t)| {
            let u = u * sg;
            if u.abs() < d {
                true
            } else if u == d {
                t < 0
            } else if u == -d {
                t > 0
            } else {
                false
            }
        })
    }

    /// Translate by multiples of the edge vectors along the axes in `axes`
    /// (a bit mask) towards the parallelepiped.
    fn fold(&self, s2: &[i64], axes: u32) -> Vec<i64> {
        let d = self.det.abs();
        let sg = self.det.signum();
        let u = self.coords(s2);
        let mut out = s2.to_vec();
        for i in 0..u.len() {
            if axes >> i & 1 == 0 {
                continue;
            }
            let ui = u[i] * sg;
            // shifting by edge i changes u_i by 2d
            let mut k = (ui + d).div_euclid(2 * d);
            if (ui + d).rem_euclid(2 * d) == 0 && self.tie[i] < 0 {
                // u_i = -d exactly: the excluded face, move to +d instead
                k -= 1;
            }
            for (o, e) in out.iter_mut().zip(&self.edges[i]) {
                *o -= 2 * k * e;
            }
        }
        out
    }
}

fn build_para(framing: &Framing, m: &[i64], eps: u32) -> Result<Para> {
    let n = framing.dim();
    let edges: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let tilde = framing.rows[i][j] + if i == j { m[i] } else { 0 };
                    if eps >> i & 1 == 1 {
                        tilde - framing.rows[i][j]
                    } else {
                        tilde
                    }
                })
                .collect()
        })
        .collect();
    let det = determinant(&edges);
    if det == 0 {
        return Err(HflError::validation("enlarged framing is degenerate; increase --mtilde"));
    }
    let adj = adjugate(&edges);
    let mut center2 = vec![0i64; n];
    for i in bits(eps) {
        for j in 0..n {
            center2[j] += framing.rows[i][j];
        }
    }
    // tie-break direction: a generic small shift z, u(z) = z adj / det
    for z in [[1000, 1001, 1003, 1007], [1000, -1013, 1019, -1021], [1000, 1031, -1033, 1039]] {
        let tie: Vec<i64> = (0..n).map(|j| (0..n).map(|i| z[i % 4] * adj[i][j]).sum::<i64>() * det.signum()).collect();
        if tie.iter().all(|&t| t != 0) {
            return Ok(Para { center2, adj, det, edges, tie });
        }
    }
    Err(HflError::invariant("no generic tie-breaking direction found"))
}

fn lattice_box(offsets: &[i64], lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    // all doubled points with the right parity in [lo, hi] (doubled bounds)
    let mut out = vec![Vec::new()];
    for i in 0..offsets.len() {
        let mut next = Vec::new();
        let mut start = lo[i];
        if (start - offsets[i]).rem_euclid(2) != 0 {
            start += 1;
        }
        for p in &out {
            let mut v = start;
            while v <= hi[i] {
                let mut q: Vec<i64> = p.clone();
                q.push(v);
                next.push(q);
                v += 2;
            }
        }
        out = next;
    }
    out
}

fn region(framing: &Framing, t: &Truncation, eps: u32) -> Result<Region> {
    let n = framing.dim();
    let off = framing.offsets();
    let (points, para) = match t.mode {
        Mode::KnotB => {
            if n != 1 {
                return Err(HflError::validation("knot_b truncation needs a one-component link"));
            }
            let lam = framing.rows[0][0];
            if lam == 0 {
                return Err(HflError::validation("knot_b truncation needs a nonzero framing; use vertical_only"));
            }
            let lo = if eps == 0 { -t.b } else { -t.b + lam };
            (lattice_box(&off, &[2 * lo], &[2 * t.b]), None)
        }
        Mode::VerticalOnly => (lattice_box(&off, &vec![-2 * t.b; n], &vec![2 * t.b; n]), None),
        Mode::Combined | Mode::Folded => {
            if framing.is_degenerate() {
                return Err(HflError::validation("combined and folded truncations need a nondegenerate framing; use vertical_only"));
            }
            let p = build_para(framing, &t.m, eps)?;
            // bounding box of the parallelepiped
            let mut lo = vec![0i64; n];
            let mut hi = vec![0i64; n];
            for j in 0..n {
                let spread: i64 = p.edges.iter().map(|e| e[j].abs()).sum();
                lo[j] = p.center2[j] - spread - 2;
                hi[j] = p.center2[j] + spread + 2;
            }
            let pts = lattice_box(&off, &lo, &hi).into_iter().filter(|s| p.contains(s)).collect();
            (pts, Some(p))
        }
    };
    let set = points.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
    Ok(Region { points, set, para })
}

/// One summand `C^eps_s` generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SurgeryGenerator {
    pub eps: u32,
    pub s2: Vec<i64>,
    pub gen: usize,
}

/// A finite truncated surgery complex with its Spin^c decomposition.
#[derive(Clone, Debug)]
pub struct SurgeryComplex {
    pub model: SystemModel,
    pub framing: Framing,
    pub truncation: Truncation,
    pub generators: Vec<SurgeryGenerator>,
    pub complex: GradedComplex,
    /// class index of each generator
    pub class_of: Vec<usize>,
    pub classes: Vec<SpinClass>,
    /// nonzero crossover entries found in folded mode (counted, not inserted)
    pub crossovers: usize,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinClass {
    pub key: Vec<i64>,
    /// lexicographically minimal member among the `eps = 0` points
    pub representative: Vec<i64>,
    pub d: i64,
}

impl SpinClass {
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.representative.iter().map(|&v| fmt_half(v)).collect();
        format!("({})", parts.join(","))
    }
}

fn psi_plus(model: &SystemModel, s2: &[i64], removed: u32) -> Vec<Ext> {
    let all: Vec<Ext> = s2.iter().map(|&v| Ext::Finite(v)).collect();
    model.psi(model.full_mask(), &all, removed, 0)
}

/// Assemble the truncated complex over `F2[U_1..U_p]/(U^delta)`.
pub fn assemble(model: &SystemModel, framing: &Framing, t: &Truncation, delta: u32) -> Result<SurgeryComplex> {
    model.validate()?;
    let l = model.components;
    if framing.dim() != l {
        return Err(HflError::validation(format!("framing has size {}, the link has {l} components", framing.dim())));
    }
    for i in 0..l {
        for j in 0..l {
            if i != j && framing.rows[i][j] != model.linking[i][j] {
                return Err(HflError::validation("framing off-diagonal entries must equal the linking numbers"));
            }
        }
    }
    let ring = TruncatedRing::new(model.num_vars(), delta)?;
    let full = model.full_mask();
    let regions: Vec<Region> = (0..=full).map(|e| region(framing, t, e)).collect::<Result<_>>()?;

    // generators, ordered by (eps, point, generator)
    let mut generators = Vec::new();
    let mut offset: Vec<Vec<usize>> = Vec::new();
    for eps in 0..=full {
        let n = model.sublink(full & !eps)?.generators.len();
        let mut offs = Vec::new();
        for s in &regions[eps as usize].points {
            offs.push(generators.len());
            for g in 0..n {
                generators.push(SurgeryGenerator { eps, s2: s.clone(), gen: g });
            }
        }
        offset.push(offs);
    }

    // Spin^c classes
    let mut keys: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
    for g in &generators {
        let k = framing.class_key(&g.s2);
        let rep = keys.entry(k).or_insert_with(|| g.s2.clone());
        if g.eps == 0 && (g.s2 < *rep || rep.is_empty()) {
            *rep = g.s2.clone();
        }
    }
    // prefer eps = 0 members as representatives
    for (k, rep) in keys.iter_mut() {
        if let Some(best) = regions[0].points.iter().filter(|p| framing.class_key(p) == *k).min() {
            *rep = best.clone();
        }
    }
    let mut classes: Vec<SpinClass> = keys
        .iter()
        .map(|(k, r)| SpinClass { key: k.clone(), representative: r.clone(), d: framing.d_of_u(r) })
        .collect();
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    let class_index: HashMap<Vec<i64>, usize> = classes.iter().enumerate().map(|(i, c)| (c.key.clone(), i)).collect();
    let class_of: Vec<usize> = generators.iter().map(|g| class_index[&framing.class_key(&g.s2)]).collect();

    // differential
    let mut triples = Vec::new();
    let mut crossovers = 0;
    for eps in 0..=full {
        let mask = full & !eps;
        for (pi, s) in regions[eps as usize].points.iter().enumerate() {
            let r = psi_plus(model, s, eps);
            let src0 = offset[eps as usize][pi];
            let mut sub = mask;
            loop {
                // every submask `sub` of the surviving components, each orientation
                let mut neg = sub;
                loop {
                    let phi = model.phi(mask, &r, sub, neg, ring)?;
                    let teps = eps | sub;
                    let mut s2 = s.clone();
                    for i in bits(neg) {
                        for (v, w) in s2.iter_mut().zip(framing.row2(i)) {
                            *v += w;
                        }
                    }
                    let treg = &regions[teps as usize];
                    match treg.set.get(&s2) {
                        Some(&k) => {
                            let dst0 = offset[teps as usize][k];
                            for (y, x, e) in phi.entries() {
                                triples.push((dst0 + y, src0 + x, e.clone()));
                            }
                        }
                        None if t.mode == Mode::Folded => {
                            // A crossover map onto the folded target. All of them land in
                            // an acyclic subcomplex, so they are counted but not inserted.
                            let f = treg.para.as_ref().unwrap().fold(&s2, full);
                            if treg.set.contains_key(&f) {
                                crossovers += phi.entries().count();
                            }
                        }
                        None => {}
                    }
                    if neg == 0 {
                        break;
                    }
                    neg = (neg - 1) & sub;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
    }
    let n = generators.len();
    let gradings = {
        let mut g = Vec::with_capacity(n);
        for (k, gen) in generators.iter().enumerate() {
            let mask = full & !gen.eps;
            let r = psi_plus(model, &gen.s2, gen.eps);
            let base = &classes[class_of[k]].representative;
            let nu = framing.nu(&gen.s2, base)?;
            g.push(model.mu(mask, &r, gen.gen)? + nu - gen.eps.count_ones() as i64);
        }
        Some(g)
    };
    let names = generators
        .iter()
        .map(|g| {
            let sub = model.sublink(full & !g.eps).unwrap();
            let s: Vec<String> = g.s2.iter().map(|&v| fmt_half(v)).collect();
            format!("{}@{:0w$b}({})", sub.generators[g.gen].name, g.eps, s.join(","), w = l)
        })
        .collect();
    let complex = GradedComplex::new(ring, names, gradings, SparseMatrix::from_triples(ring, n, n, triples))?;
    let mut warnings = Vec::new();
    if t.mode == Mode::VerticalOnly {
        warnings.push(format!("vertical_only: lattice window |s_i| <= {}; classes meeting the window edge may be cut", t.b));
    }
    let sc = SurgeryComplex {
        model: model.clone(),
        framing: framing.clone(),
        truncation: t.clone(),
        generators,
        complex,
        class_of,
        classes,
        crossovers,
        warnings,
    };
    sc.check()?;
    Ok(sc)
}

impl SurgeryComplex {
    /// `D^2 = 0`, Spin^c preservation and the grading drop.
    fn check(&self) -> Result<()> {
        self.complex.check_d_squared().map_err(|e| HflError::invariant(format!("invalid system: {e}")))?;
        for (r, c, _) in self.complex.diff.entries() {
            if self.class_of[r] != self.class_of[c] {
                return Err(HflError::invariant(format!(
                    "differential entry {} -> {} changes the Spin^c class",
                    self.complex.names[c], self.complex.names[r]
                )));
            }
        }
        if let Some(g) = &self.complex.gradings {
            for (r, c, e) in self.complex.diff.entries() {
                let d = self.classes[self.class_of[c]].d;
                for &m in e.monomials() {
                    let drop = g[c] - (g[r] - 2 * self.complex.ring.degree(m) as i64);
                    let ok = if d == 0 { drop == 1 } else { (drop - 1).rem_euclid(d) == 0 };
                    if !ok {
                        return Err(HflError::invariant(format!(
                            "differential entry {} -> {} does not drop the grading by one",
                            self.complex.names[c], self.complex.names[r]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Position of the generator `gen` of `C^eps_s` (doubled `s`), if present.
    pub fn index_of(&self, eps: u32, s2: &[i64], gen: usize) -> Option<usize> {
        self.generators.iter().position(|g| g.eps == eps && g.s2 == s2 && g.gen == gen)
    }

    pub fn class_complex(&self, class: usize) -> Result<GradedComplex> {
        let keep: Vec<usize> = (0..self.generators.len()).filter(|&k| self.class_of[k] == class).collect();
        self.complex.restrict(&keep)
    }
}

/// Homology of one Spin^c class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassHomology {
    pub class: SpinClass,
    /// rank of `H(C at 2 delta) -> H(C at delta)`, per grading when graded
    pub stable: HomologyRanks,
    /// rank of the truncated complex itself
    pub flat: HomologyRanks,
    pub graded: bool,
}

/// Per-class homology at truncation `delta` (the complex is assembled at `2 delta`).
pub fn homology(model: &SystemModel, framing: &Framing, t: &Truncation, delta: u32) -> Result<(Vec<ClassHomology>, Vec<String>)> {
    let sc = assemble(model, framing, t, 2 * delta)?;
    let mut out = Vec::new();
    for (k, class) in sc.classes.iter().enumerate() {
        let big = reduce_units(&sc.class_complex(k)?);
        let stable = stable_rank(&big, delta, class.d)?;
        let flat = big.truncate(delta)?.homology_ranks_mod(class.d)?;
        out.push(ClassHomology { class: class.clone(), stable, flat, graded: big.gradings.is_some() });
    }
    Ok((out, sc.warnings))
}

/// Tower profiles per class from stable ranks at `delta = 1..=depth`.
pub fn towers(model: &SystemModel, framing: &Framing, t: &Truncation, depth: u32) -> Result<Vec<(SpinClass, Vec<usize>, TowerProfile)>> {
    let mut per: BTreeMap<Vec<i64>, (SpinClass, Vec<usize>)> = BTreeMap::new();
    for d in 1..=depth {
        let (hs, _) = homology(model, framing, t, d)?;
        for h in hs {
            per.entry(h.class.representative.clone()).or_insert_with(|| (h.class.clone(), Vec::new())).1.push(h.stable.total);
        }
    }
    per.into_values()
        .map(|(c, ranks)| {
            let mut padded = ranks.clone();
            padded.resize(depth as usize, 0);
            let p = infer_towers(&padded, 1)?;
            Ok((c, ranks, p))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RingElement;
    use crate::surgery::model::{hopf_framing, hopf_model, unknot_model};

    #[test]
    fn unknot_knot_b_rank_delta() {
        let m = unknot_model();
        for lam in [1, -1] {
            let f = Framing::knot(lam);
            let t = Truncation::defaults(Mode::KnotB, &m, &f, Some(4), None).unwrap();
            for d in 1..=3 {
                let (h, _) = homology(&m, &f, &t, d).unwrap();
                assert_eq!(h.len(), 1);
                assert_eq!(h[0].stable.total, d as usize);
                assert_eq!(h[0].flat.total, d as usize);
            }
        }
    }

    #[test]
    fn hopf_folded_classes() {
        let m = hopf_model();
        for (p1, p2) in [(2, 2), (2, 3), (3, 3)] {
            let f = hopf_framing(p1, p2);
            let t = Truncation::defaults(Mode::Folded, &m, &f, None, None).unwrap();
            for d in 1..=3 {
                let (h, _) = homology(&m, &f, &t, d).unwrap();
                assert_eq!(h.len() as i64, p1 * p2 - 1);
                for c in &h {
                    assert_eq!(c.stable.total, d as usize);
                }
            }
            assert!(assemble(&m, &f, &t, 2).unwrap().crossovers > 0);
        }
    }

    #[test]
    fn unknot_plus_one_witness_cycle() {
        let m = unknot_model();
        let f = Framing::knot(1);
        let t = Truncation::defaults(Mode::KnotB, &m, &f, Some(6), None).unwrap();
        let sc = assemble(&m, &f, &t, 4).unwrap();
        let ring = sc.complex.ring;
        let terms: Vec<(usize, RingElement)> = (-6i64..=6)
            .map(|s| {
                let k = (s.abs() * (s.abs() - 1) / 2) as u32;
                (sc.index_of(0, &[2 * s], 0).unwrap(), ring.monomial_element(&[k]))
            })
            .collect();
        assert_eq!(sc.complex.classify_element(&terms).unwrap(), (true, true));
    }

    #[test]
    fn unknot_folded_matches_knot_b() {
        let m = unknot_model();
        for lam in [1, -1] {
            let f = Framing::knot(lam);
            let t = Truncation::defaults(Mode::Folded, &m, &f, Some(4), None).unwrap();
            let (h, _) = homology(&m, &f, &t, 2).unwrap();
            assert_eq!(h.len(), 1);
            assert_eq!(h[0].stable.total, 2);
        }
    }
}
