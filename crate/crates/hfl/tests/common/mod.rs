//! Seeded generators of valid random inputs. Everything is built from
//! structures that satisfy the defining relations by construction (scalar
//! actions on sums of acyclic cones) and then scrambled by gauge changes, so
//! no sample has to be rejected.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hfl::coeff::{RingElement, SparseMatrix, TruncatedRing};
use hfl::grid::GridDiagram;
use hfl::hyperbox::{Hyperbox, Vertex};
use hfl::songs::HypercubicalCollection;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(rng: &mut Rng8, ring: TruncatedRing, density: f64) -> RingElement {
    let monos = (0..ring.monomial_count()).filter(|_| rng.gen_bool(density)).map(|i| ring.monomial_at(i)).collect();
    RingElement::from_monomials(ring, monos)
}

pub fn random_matrix(rng: &mut Rng8, ring: TruncatedRing, rows: usize, cols: usize, density: f64) -> SparseMatrix {
    let mut triples = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                triples.push((r, c, random_element(rng, ring, 0.5)));
            }
        }
    }
    SparseMatrix::from_triples(ring, rows, cols, triples)
}

/// Random invertible matrix `L * Perm * Up` with unit diagonals.
pub fn random_invertible(rng: &mut Rng8, ring: TruncatedRing, n: usize) -> (SparseMatrix, SparseMatrix) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = SparseMatrix::from_triples(ring, n, n, (0..n).map(|i| (perm[i], i, ring.one())));
    let pinv = SparseMatrix::from_triples(ring, n, n, (0..n).map(|i| (i, perm[i], ring.one())));
    let strict = |rng: &mut Rng8, lower: bool| {
        let mut t = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if (lower && r > c || !lower && r < c) && rng.gen_bool(0.4) {
                    t.push((r, c, random_element(rng, ring, 0.5)));
                }
            }
        }
        SparseMatrix::from_triples(ring, n, n, t)
    };
    let nl = strict(rng, true);
    let nu = strict(rng, false);
    let id = SparseMatrix::identity(ring, n);
    let l = id.add(&nl).unwrap();
    let u = id.add(&nu).unwrap();
    // (1 + N)^{-1} = sum_k N^k in characteristic two
    let inv = |nm: &SparseMatrix| {
        let mut acc = id.clone();
        let mut pw = id.clone();
        for _ in 1..n.max(1) {
            pw = pw.mul(nm).unwrap();
            acc = acc.add(&pw).unwrap();
        }
        acc
    };
    let m = l.mul(&p).unwrap().mul(&u).unwrap();
    let minv = inv(&nu).mul(&pinv).unwrap().mul(&inv(&nl)).unwrap();
    (m, minv)
}

/// Direct sum of `cones` copies of `a -> b` and `free` generators with zero differential.
pub fn cone_sum(ring: TruncatedRing, cones: usize, free: usize) -> SparseMatrix {
    let n = 2 * cones + free;
    SparseMatrix::from_triples(ring, n, n, (0..cones).map(|k| (2 * k + 1, 2 * k, ring.one())))
}

/// Elements indexed by subset masks, multiplied as `(X Y)_Z = sum_{Z' in Z} X_{Z'} Y_{Z - Z'}`.
fn subset_mul(x: &[SparseMatrix], y: &[SparseMatrix]) -> Vec<SparseMatrix> {
    (0..x.len())
        .map(|z| {
            let mut acc = SparseMatrix::zero(x[0].ring, x[0].nrows, y[0].ncols);
            let mut sub = z;
            loop {
                acc.add_assign(&x[sub].mul(&y[z & !sub]).unwrap()).unwrap();
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & z;
            }
            acc
        })
        .collect()
}

/// A random hypercubical collection: scalar actions `A_Z = r_Z` on a sum of
/// cones, conjugated by a random gauge `G = sum_Z G_Z` with `G_{} ` invertible.
pub fn random_collection(rng: &mut Rng8, ring: TruncatedRing, letters: usize, max_dim: usize, max_reg: u32) -> HypercubicalCollection {
    let dim = rng.gen_range(1..=max_dim);
    let cones = rng.gen_range(0..=dim / 2);
    let free = dim - 2 * cones;
    let k = 1usize << letters;
    let mut base = vec![cone_sum(ring, cones, free)];
    for _ in 1..k {
        let r = random_element(rng, ring, 0.5);
        base.push(SparseMatrix::from_triples(ring, dim, dim, (0..dim).map(|i| (i, i, r.clone()))));
    }
    let (p, pinv) = random_invertible(rng, ring, dim);
    let mut g = vec![p];
    for _ in 1..k {
        g.push(random_matrix(rng, ring, dim, dim, 0.3));
    }
    // G^{-1} = sum_j (-P^{-1} N)^j P^{-1}, where N is G without its empty part
    let mut n: Vec<SparseMatrix> = vec![SparseMatrix::zero(ring, dim, dim)];
    n.extend(g[1..].iter().map(|m| pinv.mul(m).unwrap()));
    let mut unit = vec![SparseMatrix::zero(ring, dim, dim); k];
    unit[0] = SparseMatrix::identity(ring, dim);
    let mut series = unit.clone();
    let mut pw = unit;
    for _ in 0..letters {
        pw = subset_mul(&pw, &n);
        for (s, t) in series.iter_mut().zip(&pw) {
            s.add_assign(t).unwrap();
        }
    }
    let mut pinv_sub = vec![SparseMatrix::zero(ring, dim, dim); k];
    pinv_sub[0] = pinv;
    let ginv = subset_mul(&series, &pinv_sub);
    let elements = subset_mul(&subset_mul(&g, &base), &ginv);
    let register = (0..letters).map(|_| rng.gen_range(1..=max_reg)).collect();
    HypercubicalCollection::new((1..=letters as u32).collect(), elements, register).expect("gauge preserves the relations")
}

fn names(n: usize, tag: &str) -> Vec<String> {
    (0..n).map(|i| format!("{tag}{i}")).collect()
}

/// A random hypercube: every vertex carries the same sum of cones, edges act by
/// scalars, then a random filtered gauge `1 + N` mixes all vertices.
pub fn random_hypercube(rng: &mut Rng8, ring: TruncatedRing, dim: usize, gens: usize) -> Hyperbox {
    let size = vec![1u32; dim];
    let pts = 1usize << dim;
    let cones = rng.gen_range(0..=gens / 2);
    let d = cone_sum(ring, cones, gens - 2 * cones);
    let total = pts * gens;
    let mut triples: Vec<(usize, usize, RingElement)> = Vec::new();
    let push_block = |t: &mut Vec<(usize, usize, RingElement)>, m: &SparseMatrix, to: usize, from: usize| {
        t.extend(m.entries().map(|(r, c, e)| (to * gens + r, from * gens + c, e.clone())));
    };
    // one scalar per axis, so that every square commutes
    let scalars: Vec<SparseMatrix> = (0..dim)
        .map(|_| {
            let r = random_element(rng, ring, 0.5);
            SparseMatrix::from_triples(ring, gens, gens, (0..gens).map(|g| (g, g, r.clone())))
        })
        .collect();
    for v in 0..pts {
        push_block(&mut triples, &d, v, v);
        for (i, m) in scalars.iter().enumerate() {
            if v >> i & 1 == 0 {
                push_block(&mut triples, m, v | 1 << i, v);
            }
        }
    }
    let dtot = SparseMatrix::from_triples(ring, total, total, triples);
    // gauge: diagonal base changes plus strictly increasing blocks
    let mut f = Vec::new();
    let mut finv_diag = Vec::new();
    for v in 0..pts {
        let (p, pinv) = random_invertible(rng, ring, gens);
        push_block(&mut f, &p, v, v);
        push_block(&mut finv_diag, &pinv, v, v);
        for w in 0..pts {
            if w != v && w & v == v && rng.gen_bool(0.5) {
                push_block(&mut f, &random_matrix(rng, ring, gens, gens, 0.3), w, v);
            }
        }
    }
    let f = SparseMatrix::from_triples(ring, total, total, f);
    let pinv = SparseMatrix::from_triples(ring, total, total, finv_diag);
    // F = P (1 + P^{-1} N): inverse via the nilpotent series
    let id = SparseMatrix::identity(ring, total);
    let nn = pinv.mul(&f).unwrap().add(&id).unwrap();
    let mut series = id.clone();
    let mut pw = id.clone();
    for _ in 0..dim {
        pw = pw.mul(&nn).unwrap();
        series = series.add(&pw).unwrap();
    }
    let finv = series.mul(&pinv).unwrap();
    let dnew = f.mul(&dtot).unwrap().mul(&finv).unwrap();
    let mut maps = BTreeMap::new();
    for v in 0..pts {
        for w in 0..pts {
            let block = dnew.block(w * gens, gens, v * gens, gens);
            if block.is_zero() {
                continue;
            }
            assert_eq!(w & v, v, "gauge left the cube filtration");
            maps.insert((cube_index(v, dim), (w & !v) as u32), block);
        }
    }
    let vertices = (0..pts).map(|_| Vertex::new(names(gens, "g"), None)).collect();
    Hyperbox::new(ring, size, vertices, maps).unwrap()
}

/// Hyperbox index (last axis fastest) of the cube point whose bit `i` is axis `i`.
fn cube_index(v: usize, dim: usize) -> usize {
    (0..dim).map(|i| (v >> i & 1) << (dim - 1 - i)).sum()
}

/// A random hyperbox of the given size: a random hypercube enlarged at random
/// slots, then a random base change at every vertex.
pub fn random_hyperbox(rng: &mut Rng8, ring: TruncatedRing, size: &[u32], gens: usize) -> Hyperbox {
    let unit: Vec<u32> = size.iter().map(|&d| d.min(1)).collect();
    let active: Vec<usize> = (0..size.len()).filter(|&i| size[i] > 0).collect();
    let cube = random_hypercube(rng, ring, active.len(), gens);
    // embed the active cube into the full dimension (zero-length axes)
    let mut h = if active.len() == size.len() {
        cube
    } else {
        let full_pts: usize = unit.iter().map(|&d| d as usize + 1).product();
        let vertices: Vec<Vertex> = (0..full_pts).map(|_| Vertex::new(names(gens, "g"), None)).collect();
        let probe = Hyperbox::new(ring, unit.clone(), vertices.clone(), BTreeMap::new()).unwrap();
        let embed = |idx: usize| -> usize {
            let mut c = vec![0u32; unit.len()];
            for (k, v) in cube.coords(idx).into_iter().enumerate() {
                c[active[k]] = v;
            }
            probe.index(&c)
        };
        let mut maps = BTreeMap::new();
        for (&(v, mask), m) in &cube.maps {
            let mm: u32 = active.iter().enumerate().map(|(k, &i)| (mask >> k & 1) << i).sum();
            maps.insert((embed(v), mm), m.clone());
        }
        Hyperbox::new(ring, unit.clone(), vertices, maps).unwrap()
    };
    for (i, &d) in size.iter().enumerate() {
        for _ in 1..d {
            let slot = rng.gen_range(0..=h.size[i]);
            h = h.enlarge(i, slot).unwrap();
        }
    }
    base_change(rng, &h)
}

/// Conjugate every vertex by an independent random invertible matrix.
pub fn base_change(rng: &mut Rng8, h: &Hyperbox) -> Hyperbox {
    let ring = h.ring;
    let ps: Vec<(SparseMatrix, SparseMatrix)> = h.vertices.iter().map(|v| random_invertible(rng, ring, v.len())).collect();
    let mut maps = BTreeMap::new();
    for idx in 0..h.num_points() {
        for mask in 0..1u32 << h.dim() {
            let Some(t) = h.step(idx, mask) else { continue };
            let m = h.map(idx, mask);
            if m.is_zero() {
                continue;
            }
            maps.insert((idx, mask), ps[t].0.mul(&m).unwrap().mul(&ps[idx].1).unwrap());
        }
    }
    Hyperbox::new(ring, h.size.clone(), h.vertices.clone(), maps).unwrap()
}

/// A random grid of size `n`: a random linked grid of size `n - free`, with
/// `free` extra rows and columns carrying a lone O inserted at random places.
pub fn random_grid(rng: &mut Rng8, n: usize, free: usize) -> GridDiagram {
    let m = n - free;
    assert!(m >= 2, "a linked grid needs size at least 2");
    loop {
        let mut o: Vec<usize> = (0..m).collect();
        let mut x: Vec<usize> = (0..m).collect();
        o.shuffle(rng);
        x.shuffle(rng);
        if (0..m).any(|c| o[c] == x[c]) {
            continue;
        }
        let mut x: Vec<Option<usize>> = x.into_iter().map(Some).collect();
        for _ in 0..free {
            let size = o.len();
            let col = rng.gen_range(0..=size);
            let row = rng.gen_range(0..=size);
            let shift = |r: usize| if r >= row { r + 1 } else { r };
            o = o.into_iter().map(shift).collect();
            x = x.into_iter().map(|v| v.map(shift)).collect();
            o.insert(col, row);
            x.insert(col, None);
        }
        if let Ok(g) = GridDiagram::new(o, x) {
            return g;
        }
    }
}
