//! Hyperboxes of chain complexes: validation, compression to hypercubes,
//! chain maps, elementary enlargements, canonical inclusions, total complexes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coeff::matrix::EntryJson;
use crate::coeff::{FilteredComplex, GradedComplex, SparseMatrix, TruncatedRing};
use crate::error::{HflError, Result};
use crate::songs::{play, symphony, HypercubicalCollection};

/// Generators of one vertex complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub names: Vec<String>,
    pub gradings: Option<Vec<i64>>,
}

impl Vertex {
    pub fn new(names: Vec<String>, gradings: Option<Vec<i64>>) -> Self {
        Vertex { names, gradings }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Hyperbox of size `d`: a complex at every point of `[0,d_1] x .. x [0,d_n]`
/// and a map `D^eps_{eps0}` for every unit step `eps` (a bitmask over axes)
/// staying inside the box. `eps = 0` is the vertex differential; absent maps are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperbox {
    pub ring: TruncatedRing,
    pub size: Vec<u32>,
    pub vertices: Vec<Vertex>,
    pub maps: BTreeMap<(usize, u32), SparseMatrix>,
}

fn fmt_coords(c: &[u32]) -> String {
    let v: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

fn mask_coords(mask: u32, n: usize) -> Vec<u32> {
    (0..n).map(|i| mask >> i & 1).collect()
}

impl Hyperbox {
    pub fn new(
        ring: TruncatedRing,
        size: Vec<u32>,
        vertices: Vec<Vertex>,
        maps: BTreeMap<(usize, u32), SparseMatrix>,
    ) -> Result<Self> {
        if size.len() > 16 {
            return Err(HflError::validation("hyperboxes of dimension above 16 are not supported"));
        }
        let count: usize = size.iter().map(|&d| d as usize + 1).product();
        if vertices.len() != count {
            return Err(HflError::validation(format!(
                "{} vertex complexes given for a box with {count} points",
                vertices.len()
            )));
        }
        for v in &vertices {
            if let Some(g) = &v.gradings {
                if g.len() != v.len() {
                    return Err(HflError::validation("vertex gradings do not match its generators"));
                }
            }
        }
        let h = Hyperbox { ring, size, vertices, maps };
        for (&(v, mask), m) in &h.maps {
            let Some(t) = h.step(v, mask) else {
                let c = h.coords(v);
                return Err(HflError::validation(format!(
                    "map from {} along {} leaves the box",
                    fmt_coords(&c),
                    fmt_coords(&mask_coords(mask, h.dim()))
                )));
            };
            if m.ring != ring || m.ncols != h.vertices[v].len() || m.nrows != h.vertices[t].len() {
                return Err(HflError::validation(format!(
                    "map from {} along {} has shape {}x{}, expected {}x{}",
                    fmt_coords(&h.coords(v)),
                    fmt_coords(&mask_coords(mask, h.dim())),
                    m.nrows,
                    m.ncols,
                    h.vertices[t].len(),
                    h.vertices[v].len()
                )));
            }
        }
        Ok(h)
    }

    pub fn dim(&self) -> usize {
        self.size.len()
    }

    pub fn num_points(&self) -> usize {
        self.vertices.len()
    }

    fn strides(&self) -> Vec<usize> {
        let n = self.dim();
        let mut s = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * (self.size[i + 1] as usize + 1);
        }
        s
    }

    /// Coordinates of a point (lexicographic order, last axis fastest).
    pub fn coords(&self, idx: usize) -> Vec<u32> {
        let s = self.strides();
        (0..self.dim()).map(|i| ((idx / s[i]) % (self.size[i] as usize + 1)) as u32).collect()
    }

    pub fn index(&self, coords: &[u32]) -> usize {
        let s = self.strides();
        coords.iter().zip(&s).map(|(&c, &st)| c as usize * st).sum()
    }

    /// Point reached from `idx` by the unit step `mask`, if inside the box.
    pub fn step(&self, idx: usize, mask: u32) -> Option<usize> {
        let mut c = self.coords(idx);
        for (i, ci) in c.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *ci += 1;
                if *ci > self.size[i] {
                    return None;
                }
            }
        }
        Some(self.index(&c))
    }

    /// The map `D^mask` at point `idx` (zero if absent). Panics if the step leaves the box.
    pub fn map(&self, idx: usize, mask: u32) -> SparseMatrix {
        match self.maps.get(&(idx, mask)) {
            Some(m) => m.clone(),
            None => {
                let t = self.step(idx, mask).expect("step inside the box");
                SparseMatrix::zero(self.ring, self.vertices[t].len(), self.vertices[idx].len())
            }
        }
    }

    /// Vertex complex at a point.
    pub fn complex(&self, idx: usize) -> Result<GradedComplex> {
        let v = &self.vertices[idx];
        GradedComplex::new(self.ring, v.names.clone(), v.gradings.clone(), self.map(idx, 0))
    }

    /// Sum of `D^{eps-eps'} D^{eps'}` over `eps' <= eps` at a point.
    pub fn relation(&self, idx: usize, mask: u32) -> Result<SparseMatrix> {
        let t = self.step(idx, mask).expect("step inside the box");
        let mut acc = SparseMatrix::zero(self.ring, self.vertices[t].len(), self.vertices[idx].len());
        let mut sub = mask;
        loop {
            let mid = self.step(idx, sub).unwrap();
            acc.add_assign(&self.map(mid, mask & !sub).mul(&self.map(idx, sub))?)?;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        Ok(acc)
    }

    /// First `(eps0, eps)` where the hyperbox relation fails.
    pub fn first_violation(&self) -> Result<Option<(Vec<u32>, Vec<u32>)>> {
        let n = self.dim();
        for idx in 0..self.num_points() {
            for mask in 0..1u32 << n {
                if self.step(idx, mask).is_none() {
                    continue;
                }
                if !self.relation(idx, mask)?.is_zero() {
                    return Ok(Some((self.coords(idx), mask_coords(mask, n))));
                }
            }
        }
        Ok(None)
    }

    /// Ok, or a validation error naming the first violating `(eps0, eps)`.
    pub fn validate(&self) -> Result<()> {
        match self.first_violation()? {
            None => Ok(()),
            Some((e0, e)) => Err(HflError::validation(format!(
                "hyperbox relation fails at eps0={} eps={}",
                fmt_coords(&e0),
                fmt_coords(&e)
            ))),
        }
    }

    /// Every map `D^eps` must shift gradings by `|eps| - 1` (when graded).
    pub fn check_degrees(&self) -> Result<()> {
        for (&(idx, mask), m) in &self.maps {
            let t = self.step(idx, mask).unwrap();
            let (Some(gs), Some(gt)) = (&self.vertices[idx].gradings, &self.vertices[t].gradings) else {
                continue;
            };
            let shift = mask.count_ones() as i64 - 1;
            for (r, c, e) in m.entries() {
                for &mono in e.monomials() {
                    if gt[r] - 2 * self.ring.degree(mono) as i64 != gs[c] + shift {
                        return Err(HflError::validation(format!(
                            "map at eps0={} eps={} has the wrong degree on entry ({r},{c})",
                            fmt_coords(&self.coords(idx)),
                            fmt_coords(&mask_coords(mask, self.dim()))
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// True when every side has length at most one.
    pub fn is_hypercube(&self) -> bool {
        self.size.iter().all(|&d| d <= 1)
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.num_points() + 1);
        let mut acc = 0;
        for v in &self.vertices {
            off.push(acc);
            acc += v.len();
        }
        off.push(acc);
        off
    }

    /// The collection `A_Z = sum_{eps0} D^{zeta(Z)}_{eps0}` on the direct sum of all
    /// vertex complexes, over the axes of positive length (letters `1..`), in register `d`.
    pub fn collection(&self) -> Result<(HypercubicalCollection, Vec<usize>)> {
        let active: Vec<usize> = (0..self.dim()).filter(|&i| self.size[i] > 0).collect();
        let off = self.offsets();
        let total = off[self.num_points()];
        let mut elements = Vec::with_capacity(1 << active.len());
        for zm in 0..1usize << active.len() {
            let mask: u32 = active.iter().enumerate().filter(|(k, _)| zm >> k & 1 == 1).map(|(_, &i)| 1 << i).sum();
            let mut triples = Vec::new();
            for idx in 0..self.num_points() {
                if let (Some(t), Some(m)) = (self.step(idx, mask), self.maps.get(&(idx, mask))) {
                    triples.extend(m.entries().map(|(r, c, e)| (off[t] + r, off[idx] + c, e.clone())));
                }
            }
            elements.push(SparseMatrix::from_triples(self.ring, total, total, triples));
        }
        let coll = HypercubicalCollection::new_unchecked(
            (1..=active.len() as u32).collect(),
            elements,
            active.iter().map(|&i| self.size[i]).collect(),
        )?;
        Ok((coll, off))
    }

    /// Compressed hypercube: sides of positive length become length one, the
    /// vertex at `eps` is the complex at `eps * d`, and `D^{zeta(Z)}` is the
    /// corresponding block of the played standard symphony.
    pub fn compress(&self) -> Result<Hyperbox> {
        self.validate()?;
        let n = self.dim();
        let active: Vec<usize> = (0..n).filter(|&i| self.size[i] > 0).collect();
        let unit: Vec<u32> = self.size.iter().map(|&d| d.min(1)).collect();
        let (coll, off) = self.collection()?;
        let shell = Hyperbox {
            ring: self.ring,
            size: unit.clone(),
            vertices: Vec::new(),
            maps: BTreeMap::new(),
        };
        let cube_points: usize = unit.iter().map(|&d| d as usize + 1).product();
        let to_big = |c: &[u32]| -> usize {
            let scaled: Vec<u32> = c.iter().zip(&self.size).map(|(&e, &d)| e * d).collect();
            self.index(&scaled)
        };
        let vertices: Vec<Vertex> =
            (0..cube_points).map(|k| self.vertices[to_big(&shell.coords(k))].clone()).collect();
        let mut maps = BTreeMap::new();
        for zm in 0..1usize << active.len() {
            let sub = coll.restrict(zm);
            let played = play(&symphony(&sub.alphabet), &sub)?;
            let mask: u32 = active.iter().enumerate().filter(|(k, _)| zm >> k & 1 == 1).map(|(_, &i)| 1 << i).sum();
            for k in 0..cube_points {
                let Some(t) = shell.step(k, mask) else { continue };
                let (src, dst) = (to_big(&shell.coords(k)), to_big(&shell.coords(t)));
                let block = played.block(off[dst], off[dst + 1] - off[dst], off[src], off[src + 1] - off[src]);
                if !block.is_zero() {
                    maps.insert((k, mask), block);
                }
            }
        }
        let out = Hyperbox::new(self.ring, unit, vertices, maps)?;
        out.validate().map_err(|e| HflError::invariant(format!("compressed hypercube: {e}")))?;
        Ok(out)
    }

    /// Elementary enlargement along `axis`, duplicating the slice at `slot` and
    /// joining the two copies by identity maps.
    pub fn enlarge(&self, axis: usize, slot: u32) -> Result<Hyperbox> {
        if axis >= self.dim() {
            return Err(HflError::validation(format!("axis {axis} out of range for dimension {}", self.dim())));
        }
        if slot > self.size[axis] {
            return Err(HflError::validation(format!(
                "slot {slot} out of range 0..={} on axis {axis}",
                self.size[axis]
            )));
        }
        let mut size = self.size.clone();
        size[axis] += 1;
        let mut out = Hyperbox { ring: self.ring, size, vertices: Vec::new(), maps: BTreeMap::new() };
        let old_of = |c: &[u32]| -> Vec<u32> {
            let mut o = c.to_vec();
            if o[axis] > slot {
                o[axis] -= 1;
            }
            o
        };
        let points: usize = out.size.iter().map(|&d| d as usize + 1).product();
        out.vertices = (0..points).map(|k| self.vertices[self.index(&old_of(&out.coords(k)))].clone()).collect();
        let bit = 1u32 << axis;
        for k in 0..points {
            let c = out.coords(k);
            for mask in 0..1u32 << self.dim() {
                if out.step(k, mask).is_none() {
                    continue;
                }
                let crossing = c[axis] == slot && mask & bit != 0;
                if crossing {
                    if mask == bit {
                        let n = out.vertices[k].len();
                        out.maps.insert((k, mask), SparseMatrix::identity(self.ring, n));
                    }
                    continue;
                }
                let old = self.index(&old_of(&c));
                if let Some(m) = self.maps.get(&(old, mask)) {
                    out.maps.insert((k, mask), m.clone());
                }
            }
        }
        Hyperbox::new(out.ring, out.size, out.vertices, out.maps)
    }

    /// Total complex of a hypercube: direct sum of the vertices, differential
    /// the sum of all maps, grading `gr - |eps|`.
    pub fn total_complex(&self) -> Result<GradedComplex> {
        if !self.is_hypercube() {
            return Err(HflError::validation("total complexes are defined for hypercubes (all sides <= 1)"));
        }
        let off = self.offsets();
        let total = off[self.num_points()];
        let mut names = Vec::with_capacity(total);
        let graded = self.vertices.iter().all(|v| v.gradings.is_some());
        let mut gradings = Vec::with_capacity(total);
        for (k, v) in self.vertices.iter().enumerate() {
            let c = self.coords(k);
            let norm: i64 = c.iter().map(|&x| x as i64).sum();
            let tag: String = c.iter().map(|x| x.to_string()).collect();
            names.extend(v.names.iter().map(|x| format!("{x}@{tag}")));
            if let Some(g) = &v.gradings {
                gradings.extend(g.iter().map(|&x| x - norm));
            }
        }
        let mut triples = Vec::new();
        for (&(k, mask), m) in &self.maps {
            let t = self.step(k, mask).unwrap();
            triples.extend(m.entries().map(|(r, c, e)| (off[t] + r, off[k] + c, e.clone())));
        }
        GradedComplex::new(
            self.ring,
            names,
            graded.then_some(gradings),
            SparseMatrix::from_triples(self.ring, total, total, triples),
        )
    }

    /// Total complex filtered by `-|eps|` (the depth filtration).
    pub fn depth_filtered(&self) -> Result<FilteredComplex> {
        let tot = self.total_complex()?;
        let mut level = Vec::with_capacity(tot.len());
        for (k, v) in self.vertices.iter().enumerate() {
            let norm: i64 = self.coords(k).iter().map(|&x| x as i64).sum();
            level.extend(std::iter::repeat(-norm).take(v.len()));
        }
        FilteredComplex::new(tot, level)
    }

    /// Sub-hyperbox on the points with `coords[axis] == value` (axis removed).
    pub fn slice(&self, axis: usize, value: u32) -> Result<Hyperbox> {
        let mut size = self.size.clone();
        size.remove(axis);
        let mut out = Hyperbox { ring: self.ring, size, vertices: Vec::new(), maps: BTreeMap::new() };
        let points: usize = out.size.iter().map(|&d| d as usize + 1).product();
        let lift = |c: &[u32]| {
            let mut v = c.to_vec();
            v.insert(axis, value);
            v
        };
        let squash = |mask: u32| -> Option<u32> {
            if mask >> axis & 1 == 1 {
                None
            } else {
                Some((mask & ((1 << axis) - 1)) | ((mask >> (axis + 1)) << axis))
            }
        };
        for k in 0..points {
            out.vertices.push(self.vertices[self.index(&lift(&out.coords(k)))].clone());
        }
        for (&(k, mask), m) in &self.maps {
            let c = self.coords(k);
            if c[axis] != value {
                continue;
            }
            if let Some(sm) = squash(mask) {
                let mut cc = c.clone();
                cc.remove(axis);
                out.maps.insert((out.index(&cc), sm), m.clone());
            }
        }
        Hyperbox::new(out.ring, out.size, out.vertices, out.maps)
    }

    /// The canonical hypercube of a complex: identity edges, zero higher maps.
    pub fn canonical(c: &GradedComplex, n: usize) -> Result<Hyperbox> {
        let size = vec![1u32; n];
        let points = 1usize << n;
        let vertex = Vertex::new(c.names.clone(), c.gradings.clone());
        let shell = Hyperbox { ring: c.ring, size: size.clone(), vertices: vec![], maps: BTreeMap::new() };
        let mut maps = BTreeMap::new();
        for k in 0..points {
            if !c.diff.is_zero() {
                maps.insert((k, 0), c.diff.clone());
            }
            for i in 0..n {
                if shell.step(k, 1 << i).is_some() {
                    maps.insert((k, 1 << i), SparseMatrix::identity(c.ring, c.len()));
                }
            }
        }
        Hyperbox::new(c.ring, size, vec![vertex; points], maps)
    }
}

/// Chain map between hyperboxes of the same size: maps `F^eps_{eps0}` from the
/// source at `eps0` to the target at `eps0 + eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperboxChainMap {
    pub source: Hyperbox,
    pub target: Hyperbox,
    pub maps: BTreeMap<(usize, u32), SparseMatrix>,
}

impl HyperboxChainMap {
    pub fn new(source: Hyperbox, target: Hyperbox, maps: BTreeMap<(usize, u32), SparseMatrix>) -> Result<Self> {
        if source.size != target.size || source.ring != target.ring {
            return Err(HflError::validation("chain map between hyperboxes of different sizes"));
        }
        let f = HyperboxChainMap { source, target, maps };
        f.as_hyperbox()?;
        Ok(f)
    }

    pub fn map(&self, idx: usize, mask: u32) -> SparseMatrix {
        match self.maps.get(&(idx, mask)) {
            Some(m) => m.clone(),
            None => {
                let t = self.target.step(idx, mask).expect("step inside the box");
                SparseMatrix::zero(self.source.ring, self.target.vertices[t].len(), self.source.vertices[idx].len())
            }
        }
    }

    /// The hyperbox of size `(d, 1)` with the source at the bottom, the target on top.
    pub fn as_hyperbox(&self) -> Result<Hyperbox> {
        let n = self.source.dim();
        let mut size = self.source.size.clone();
        size.push(1);
        let mut out = Hyperbox { ring: self.source.ring, size, vertices: Vec::new(), maps: BTreeMap::new() };
        let points: usize = out.size.iter().map(|&d| d as usize + 1).product();
        for k in 0..points {
            let c = out.coords(k);
            let inner = self.source.index(&c[..n]);
            out.vertices.push(if c[n] == 0 {
                self.source.vertices[inner].clone()
            } else {
                self.target.vertices[inner].clone()
            });
        }
        let top = 1u32 << n;
        for k in 0..points {
            let c = out.coords(k);
            let inner = self.source.index(&c[..n]);
            let boxed = if c[n] == 0 { &self.source } else { &self.target };
            for (&(i, mask), m) in &boxed.maps {
                if i == inner {
                    out.maps.insert((k, mask), m.clone());
                }
            }
            if c[n] == 0 {
                for (&(i, mask), m) in &self.maps {
                    if i == inner {
                        out.maps.insert((k, mask | top), m.clone());
                    }
                }
            }
        }
        Hyperbox::new(out.ring, out.size, out.vertices, out.maps)
    }

    /// Ok when the chain-map relation holds.
    pub fn validate(&self) -> Result<()> {
        self.as_hyperbox()?.validate()
    }

    /// `other o self`.
    pub fn then(&self, other: &HyperboxChainMap) -> Result<HyperboxChainMap> {
        let n = self.source.dim();
        let mut maps = BTreeMap::new();
        for idx in 0..self.source.num_points() {
            for mask in 0..1u32 << n {
                let Some(t) = self.source.step(idx, mask) else { continue };
                let mut acc = SparseMatrix::zero(
                    self.source.ring,
                    other.target.vertices[t].len(),
                    self.source.vertices[idx].len(),
                );
                let mut sub = mask;
                loop {
                    let mid = self.source.step(idx, sub).unwrap();
                    acc.add_assign(&other.map(mid, mask & !sub).mul(&self.map(idx, sub))?)?;
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & mask;
                }
                if !acc.is_zero() {
                    maps.insert((idx, mask), acc);
                }
            }
        }
        Ok(HyperboxChainMap { source: self.source.clone(), target: other.target.clone(), maps })
    }

    /// Map of total complexes (hypercubes only).
    pub fn total_map(&self) -> Result<SparseMatrix> {
        let (so, to) = (self.source.offsets(), self.target.offsets());
        let (ns, nt) = (so[self.source.num_points()], to[self.target.num_points()]);
        let mut triples = Vec::new();
        for (&(k, mask), m) in &self.maps {
            let t = self.source.step(k, mask).unwrap();
            triples.extend(m.entries().map(|(r, c, e)| (to[t] + r, so[k] + c, e.clone())));
        }
        Ok(SparseMatrix::from_triples(self.source.ring, nt, ns, triples))
    }
}

/// The canonical inclusion `H(C^{0..0}, n) -> h` as the composite
/// `F[n] o .. o F[1]` through the intermediate hypercubes `H[i]`.
pub fn canonical_inclusion(h: &Hyperbox) -> Result<HyperboxChainMap> {
    if !h.size.iter().all(|&d| d == 1) {
        return Err(HflError::validation("canonical inclusions are defined for hypercubes of size (1,..,1)"));
    }
    h.validate()?;
    let n = h.dim();
    let low = |e: u32, i: usize| -> u32 { e & ((1u32 << i) - 1) };
    let high = |e: u32, i: usize| -> u32 { e & !((1u32 << i) - 1) };
    let pt = |e: u32| -> usize { h.index(&mask_coords(e, n)) };
    // H[i]: C[i]^eps = C^{eps[<=i]}
    let stage = |i: usize| -> Result<Hyperbox> {
        let vertices: Vec<Vertex> = (0..1usize << n)
            .map(|k| {
                let e = coords_mask(&h.coords(k));
                h.vertices[pt(low(e, i))].clone()
            })
            .collect();
        let mut maps = BTreeMap::new();
        for k in 0..1usize << n {
            let e = coords_mask(&h.coords(k));
            for step in 0..1u32 << n {
                if e & step != 0 {
                    continue;
                }
                let e2 = e | step;
                let m = if high(e, i) == high(e2, i) {
                    Some(h.map(pt(low(e, i)), low(step, i)))
                } else if low(e, i) == low(e2, i) && (high(e2, i) ^ high(e, i)).count_ones() == 1 {
                    Some(SparseMatrix::identity(h.ring, h.vertices[pt(low(e, i))].len()))
                } else {
                    None
                };
                if let Some(m) = m {
                    if !m.is_zero() {
                        maps.insert((k, step), m);
                    }
                }
            }
        }
        Hyperbox::new(h.ring, vec![1; n], vertices, maps)
    };
    let stages: Vec<Hyperbox> = (0..=n).map(stage).collect::<Result<_>>()?;
    let mut composite: Option<HyperboxChainMap> = None;
    for i in 1..=n {
        let (src, dst) = (&stages[i - 1], &stages[i]);
        let mut maps = BTreeMap::new();
        let bit = 1u32 << (i - 1);
        for k in 0..1usize << n {
            let e = coords_mask(&h.coords(k));
            for step in 0..1u32 << n {
                if e & step != 0 {
                    continue;
                }
                let e2 = e | step;
                let m = if e & bit != 0 && high(e, i) == high(e2, i) {
                    // D from eps[<=i-1] to eps'[<=i]
                    let from = low(e, i - 1);
                    let to = low(e2, i);
                    Some(h.map(pt(from), to & !from))
                } else if step == 0 && e & bit == 0 {
                    Some(SparseMatrix::identity(h.ring, src.vertices[k].len()))
                } else {
                    None
                };
                if let Some(m) = m {
                    if !m.is_zero() {
                        maps.insert((k, step), m);
                    }
                }
            }
        }
        let f = HyperboxChainMap { source: src.clone(), target: dst.clone(), maps };
        composite = Some(match composite {
            None => f,
            Some(g) => g.then(&f)?,
        });
    }
    let out = match composite {
        Some(f) => f,
        None => {
            let mut maps = BTreeMap::new();
            maps.insert((0, 0), SparseMatrix::identity(h.ring, h.vertices[0].len()));
            HyperboxChainMap { source: h.clone(), target: h.clone(), maps }
        }
    };
    out.validate().map_err(|e| HflError::invariant(format!("canonical inclusion: {e}")))?;
    Ok(out)
}

fn coords_mask(c: &[u32]) -> u32 {
    c.iter().enumerate().map(|(i, &x)| x << i).sum()
}

// ---- JSON ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexJson {
    pub at: Vec<u32>,
    pub generators: Vec<GeneratorJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub from: Vec<u32>,
    pub eps: Vec<u32>,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperboxJson {
    pub num_vars: usize,
    pub delta: u32,
    pub size: Vec<u32>,
    pub vertices: Vec<VertexJson>,
    #[serde(default)]
    pub maps: Vec<MapJson>,
}

impl Hyperbox {
    pub fn to_json(&self) -> HyperboxJson {
        let n = self.dim();
        HyperboxJson {
            num_vars: self.ring.num_vars,
            delta: self.ring.delta,
            size: self.size.clone(),
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(k, v)| VertexJson {
                    at: self.coords(k),
                    generators: v
                        .names
                        .iter()
                        .enumerate()
                        .map(|(i, name)| GeneratorJson {
                            name: name.clone(),
                            grading: v.gradings.as_ref().map(|g| g[i]),
                        })
                        .collect(),
                })
                .collect(),
            maps: self
                .maps
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(&(k, mask), m)| MapJson { from: self.coords(k), eps: mask_coords(mask, n), entries: m.to_entries() })
                .collect(),
        }
    }

    pub fn from_json(j: &HyperboxJson) -> Result<Hyperbox> {
        let ring = TruncatedRing::new(j.num_vars, j.delta)?;
        let shell = Hyperbox { ring, size: j.size.clone(), vertices: vec![], maps: BTreeMap::new() };
        let points: usize = j.size.iter().map(|&d| d as usize + 1).product();
        let mut vertices: Vec<Option<Vertex>> = vec![None; points];
        for v in &j.vertices {
            if v.at.len() != j.size.len() || v.at.iter().zip(&j.size).any(|(a, d)| a > d) {
                return Err(HflError::validation(format!("vertex {:?} lies outside the box", v.at)));
            }
            let k = shell.index(&v.at);
            if vertices[k].is_some() {
                return Err(HflError::validation(format!("vertex {:?} given twice", v.at)));
            }
            let graded = v.generators.iter().all(|g| g.grading.is_some());
            vertices[k] = Some(Vertex::new(
                v.generators.iter().map(|g| g.name.clone()).collect(),
                graded.then(|| v.generators.iter().map(|g| g.grading.unwrap()).collect()),
            ));
        }
        let vertices: Vec<Vertex> = vertices
            .into_iter()
            .enumerate()
            .map(|(k, v)| v.ok_or_else(|| HflError::validation(format!("vertex {:?} is missing", shell.coords(k)))))
            .collect::<Result<_>>()?;
        let mut maps = BTreeMap::new();
        for m in &j.maps {
            if m.from.len() != j.size.len() || m.eps.len() != j.size.len() || m.eps.iter().any(|&e| e > 1) {
                return Err(HflError::validation(format!("bad map position {:?} / {:?}", m.from, m.eps)));
            }
            if m.from.iter().zip(&j.size).any(|(a, d)| a > d) {
                return Err(HflError::validation(format!("map source {:?} lies outside the box", m.from)));
            }
            let k = shell.index(&m.from);
            let mask = coords_mask(&m.eps);
            let t = shell.step(k, mask).ok_or_else(|| {
                HflError::validation(format!("map from {:?} along {:?} leaves the box", m.from, m.eps))
            })?;
            let mat = SparseMatrix::from_entries(ring, vertices[t].len(), vertices[k].len(), &m.entries)?;
            if maps.insert((k, mask), mat).is_some() {
                return Err(HflError::validation(format!("map from {:?} along {:?} given twice", m.from, m.eps)));
            }
        }
        Hyperbox::new(ring, j.size.clone(), vertices, maps)
    }
}
