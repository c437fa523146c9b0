//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain binary
//! (no test harness) and exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{random_collection, random_grid, random_hyperbox, rng};
use hfl::coeff::{
    infer_towers, spectral_sequence, stable_rank, synthetic_complex, FilteredComplex, GradedComplex, RingElement, SparseMatrix,
    TowerProfile, TruncatedRing,
};
use hfl::grid::GridDiagram;
use hfl::half::Ext;
use hfl::songs::{compressed_collection, play, relation_instances, symphony_n, Song};
use hfl::surgery::{assemble, homology, hopf_framing, hopf_model, unknot_model, Framing, Mode, Truncation};
use rand::Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn symphony_counts() -> Check {
    let expected = [(3, 7), (4, 97), (5, 2051)];
    for (n, count) in expected {
        let got = symphony_n(n).len();
        ensure(got == count, || format!("|alpha_{n}| = {got}, expected {count}"))?;
    }
    let mut songs = 0;
    for n in 1..=6 {
        for song in &symphony_n(n).songs {
            let (k, h) = song.shape();
            let l = h.len();
            ensure(k == 2 * n + l - 1 && h.iter().sum::<usize>() == n + l - 1, || format!("song {song} breaks the shape identities"))?;
            songs += 1;
        }
    }
    Ok(format!("7/97/2051; shape identities on {songs} songs (n <= 6)"))
}

fn played_relations() -> Check {
    let mut r = rng(2);
    let middle_pool = ["(1)", "(12)", "({1,2})", "(2{1})", "(21{2})", "(3)", "(13{3})"];
    let mut checked = 0;
    for sample in 0..120 {
        let letters = 1 + sample % 3;
        let ring = TruncatedRing::new(r.gen_range(0..=2), r.gen_range(1..=3)).map_err(err)?;
        let coll = random_collection(&mut r, ring, letters, 6, 3);
        let middles: Vec<Song> = middle_pool
            .iter()
            .map(|t| Song::parse(t).unwrap())
            .filter(|s| s.letters().iter().all(|x| (*x as usize) <= letters))
            .collect();
        for (name, sum) in relation_instances(&coll.alphabet, &middles).map_err(err)? {
            let m = play(&sum, &coll).map_err(err)?;
            ensure(m.is_zero(), || format!("sample {sample}: relation {name} plays to nonzero"))?;
            checked += 1;
        }
        compressed_collection(&coll).map_err(err)?.check_relations().map_err(|e| format!("sample {sample}: {e}"))?;
    }
    Ok(format!("120 collections, {checked} played relations, compressed relations hold"))
}

fn compression() -> Check {
    let mut r = rng(3);
    let mut count = 0;
    for sample in 0..200 {
        let dim = 1 + sample % 3;
        let mut size: Vec<u32> = (0..dim).map(|_| r.gen_range(0..=3)).collect();
        if size.iter().all(|&d| d == 0) {
            size[0] = 1;
        }
        let ring = TruncatedRing::new(r.gen_range(0..=2), r.gen_range(1..=3)).map_err(err)?;
        let gens = if dim == 3 { 1 } else { r.gen_range(1..=2) };
        let h = random_hyperbox(&mut r, ring, &size, gens);
        h.validate().map_err(|e| format!("sample {sample}: generator produced an invalid box: {e}"))?;
        let c = h.compress().map_err(err)?;
        c.validate().map_err(|e| format!("sample {sample}: compressed box fails: {e}"))?;
        // enlarging a zero-length side changes the compressed shape, so only
        // sides of positive length are enlarged
        let sides: Vec<usize> = (0..dim).filter(|&i| size[i] > 0).collect();
        let axis = sides[r.gen_range(0..sides.len())];
        let slot = r.gen_range(0..=size[axis]);
        let e = h.enlarge(axis, slot).map_err(err)?;
        ensure(e.compress().map_err(err)? == c, || format!("sample {sample}: compress(enlarge) differs (size {size:?}, axis {axis}, slot {slot})"))?;
        count += 1;
    }
    Ok(format!("{count} random hyperboxes up to size (3,3,3)"))
}

/// Values per component covering every sign region: both infinities and
/// finite values below, inside and above the Alexander range.
fn region_values(g: &GridDiagram) -> Vec<Vec<Ext>> {
    let gr = g.gradings().unwrap();
    let lk = g.linking_sums();
    (0..g.num_components())
        .map(|c| {
            let lo = gr.alexander2.iter().map(|a| a[c]).min().unwrap() - 2;
            let hi = gr.alexander2.iter().map(|a| a[c]).max().unwrap() + 2;
            let fix = |v: i64| v + (lk[c] - v).rem_euclid(2);
            let mut vals = vec![Ext::NegInf, Ext::PosInf, Ext::Finite(fix(lo)), Ext::Finite(fix((lo + hi) / 2)), Ext::Finite(fix(hi))];
            vals.dedup();
            vals
        })
        .collect()
}

fn empty_rectangles_respect_gradings(g: &GridDiagram) -> std::result::Result<usize, String> {
    let gr = g.gradings().map_err(err)?;
    let gens = g.generators();
    let mut count = 0;
    for (k, x) in gens.iter().enumerate() {
        for i in 0..g.n {
            for j in 0..g.n {
                if i == j {
                    continue;
                }
                let r = g.rectangle(x, i, j);
                if !r.is_empty() {
                    continue;
                }
                let t = gens.iter().position(|y| *y == r.target).unwrap();
                ensure(gr.maslov[k] - gr.maslov[t] == 1 - 2 * r.o_total() as i64, || format!("Maslov relation fails on {x:?}"))?;
                for c in 0..g.num_components() {
                    let lhs = gr.alexander2[k][c] - gr.alexander2[t][c];
                    ensure(lhs == 2 * (r.x_counts[c] as i64 - r.o_counts[c] as i64), || format!("Alexander relation fails on {x:?}"))?;
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

fn grid_checks() -> Check {
    let mut grids: Vec<GridDiagram> = [
        "n=2\nO: 0 1\nX: 1 0",
        "n=3\nO: 0 1 2\nX: 1 0 -",
        "n=4\nO: 0 1 2 3\nX: 2 3 0 1",
        "n=5\nO: 0 1 2 3 4\nX: - 3 4 1 2",
        "n=5\nO: 0 1 2 3 4\nX: 3 4 0 1 2",
    ]
    .iter()
    .map(|t| GridDiagram::parse(t).unwrap())
    .collect();
    let mut r = rng(4);
    for k in 0..6 {
        grids.push(random_grid(&mut r, 3 + k % 3, k % 2));
    }
    grids.push(random_grid(&mut r, 6, 0));
    let mut complexes = 0;
    let mut rects = 0;
    for g in &grids {
        rects += empty_rectangles_respect_gradings(g)?;
        let axes = region_values(g);
        let mut points: Vec<Vec<Ext>> = vec![vec![]];
        for vals in &axes {
            points = points.into_iter().flat_map(|p| vals.iter().map(move |v| [p.clone(), vec![*v]].concat())).collect();
        }
        if g.n == 6 {
            points.retain(|p| p.iter().all(|v| matches!(v, Ext::NegInf | Ext::PosInf)) || p.len() == 1);
        }
        for p in &points {
            for d in 1..=2 {
                let c = g.build_complex(p, d).map_err(err)?;
                c.check_d_squared().map_err(|e| format!("grid {g}: {e}"))?;
                c.check_gradings(0).map_err(|e| format!("grid {g}: {e}"))?;
                complexes += 1;
            }
        }
    }
    Ok(format!("{} grids, {complexes} complexes, {rects} empty rectangles", grids.len()))
}

fn unknot_surgery() -> Check {
    let m = unknot_model();
    for lam in [1, -1] {
        let f = Framing::knot(lam);
        for b in [4, 6] {
            let t = Truncation::defaults(Mode::KnotB, &m, &f, Some(b), None).map_err(err)?;
            let mut ranks = Vec::new();
            for d in 1..=4 {
                let (h, _) = homology(&m, &f, &t, d).map_err(err)?;
                ensure(h.len() == 1, || format!("lambda {lam}, b {b}: {} classes", h.len()))?;
                ensure(h[0].stable.total == d as usize, || format!("lambda {lam}, b {b}, delta {d}: rank {}", h[0].stable.total))?;
                ranks.push(h[0].stable.total);
                let p = infer_towers(&ranks, 1).map_err(err)?;
                ensure(p.tower_count() == 1 && p.open == 1, || format!("lambda {lam}, b {b}, delta {d}: towers {p}"))?;
            }
        }
    }
    // staircase witness at lambda = +1, delta = 4, b = 6
    let f = Framing::knot(1);
    let t = Truncation::defaults(Mode::KnotB, &m, &f, Some(6), None).map_err(err)?;
    let sc = assemble(&m, &f, &t, 4).map_err(err)?;
    let ring = sc.complex.ring;
    let grads = sc.complex.gradings.clone().ok_or("ungraded surgery complex")?;
    let mut terms: Vec<(usize, RingElement)> = Vec::new();
    let mut degrees = Vec::new();
    for s in -6i64..=6 {
        let k = (s.abs() * (s.abs() - 1) / 2) as u32;
        let idx = sc.index_of(0, &[2 * s], 0).ok_or("a_s missing from the truncation")?;
        let e = ring.monomial_element(&[k]);
        if !e.is_zero() {
            degrees.push(grads[idx] - 2 * k as i64);
        }
        terms.push((idx, e));
    }
    let (cycle, nonzero) = sc.complex.classify_element(&terms).map_err(err)?;
    ensure(cycle && nonzero, || format!("witness: cycle {cycle}, nonzero {nonzero}"))?;
    degrees.dedup();
    ensure(degrees.len() == 1, || format!("witness is not homogeneous: {degrees:?}"))?;
    let h = sc.class_complex(0).map_err(err)?.homology_ranks_mod(sc.classes[0].d).map_err(err)?;
    let top = *h.by_grading.keys().max().ok_or("empty homology")?;
    ensure(degrees[0] == top, || format!("witness in degree {}, top degree {top}", degrees[0]))?;
    Ok("lambda = +-1, b in {4,6}, delta 1..4: rank delta, one tower; witness generates top degree".into())
}

fn hopf_surgery() -> Check {
    let m = hopf_model();
    for (p1, p2) in [(2, 2), (2, 3), (3, 3)] {
        let f = hopf_framing(p1, p2);
        let t = Truncation::defaults(Mode::Folded, &m, &f, None, None).map_err(err)?;
        let mut per_class: Vec<Vec<usize>> = Vec::new();
        for d in 1..=3 {
            assemble(&m, &f, &t, d).map_err(err)?.complex.check_d_squared().map_err(err)?;
            let (h, _) = homology(&m, &f, &t, d).map_err(err)?;
            ensure(h.len() as i64 == p1 * p2 - 1, || format!("({p1},{p2}) delta {d}: {} classes", h.len()))?;
            per_class.resize(h.len(), Vec::new());
            for (k, c) in h.iter().enumerate() {
                ensure(c.stable.total == d as usize, || format!("({p1},{p2}) delta {d} class {}: rank {}", c.class.label(), c.stable.total))?;
                per_class[k].push(c.stable.total);
            }
        }
        for ranks in &per_class {
            let p = infer_towers(ranks, 1).map_err(err)?;
            ensure(p.tower_count() == 1 && p.open == 1, || format!("({p1},{p2}): towers {p}"))?;
        }
    }
    Ok("(2,2), (2,3), (3,3), delta 1..3: p1 p2 - 1 classes of rank delta, one tower each".into())
}

fn minus_minus() -> Check {
    let m = hopf_model();
    for d in 1..=3u32 {
        let ring = TruncatedRing::new(2, 2 * d).map_err(err)?;
        let c = m.complex_at(0b11, &[Ext::NegInf, Ext::NegInf], ring).map_err(err)?;
        c.check_d_squared().map_err(err)?;
        let h = stable_rank(&c, d, 0).map_err(err)?;
        ensure(h.total == d as usize, || format!("delta {d}: rank {}", h.total))?;
    }
    Ok("rank delta for delta 1..3".into())
}

fn tower_formula() -> Check {
    let mut r = rng(8);
    let mut count = 0;
    for _ in 0..40 {
        let n = r.gen_range(1..=4);
        let lengths: Vec<Option<u32>> =
            (0..n).map(|_| if r.gen_bool(0.25) { None } else { Some(r.gen_range(1..=5)) }).collect();
        let extra = r.gen_range(0..=1);
        let factor = 1usize << (extra + 1);
        let expected = TowerProfile::from_lengths(&lengths, 6);
        let mut ranks = Vec::new();
        for d in 1..=6u32 {
            let c = synthetic_complex(&lengths, extra, d).map_err(err)?;
            let got = c.homology_ranks().map_err(err)?.total;
            let want = factor * lengths.iter().map(|l| l.map_or(d, |k| k.min(d)) as usize).sum::<usize>();
            ensure(got == want, || format!("{lengths:?} delta {d}: rank {got}, formula {want}"))?;
            ensure(expected.predicted_rank(factor, d) == want, || format!("{lengths:?}: predicted_rank disagrees"))?;
            ranks.push(got);
        }
        let inferred = infer_towers(&ranks, factor).map_err(err)?;
        ensure(inferred == expected, || format!("{lengths:?}: inferred {inferred}, expected {expected}"))?;
        count += 1;
    }
    Ok(format!("{count} profiles, delta 1..6"))
}

/// A random filtered complex: cones `a -> b` with `level(b) <= level(a)` plus
/// free generators, conjugated by a filtered unipotent base change.
fn random_filtered(r: &mut common::Rng8) -> FilteredComplex {
    let ring = TruncatedRing::new(0, 1).unwrap();
    let n = r.gen_range(1..=16);
    let cones = r.gen_range(0..=n / 2);
    let mut level: Vec<i64> = vec![0; n];
    let mut triples = Vec::new();
    for k in 0..cones {
        let a = r.gen_range(0..=4);
        level[2 * k] = a;
        level[2 * k + 1] = a - r.gen_range(0..=3);
        triples.push((2 * k + 1, 2 * k, ring.one()));
    }
    for l in level.iter_mut().skip(2 * cones) {
        *l = r.gen_range(-3..=4);
    }
    let d = SparseMatrix::from_triples(ring, n, n, triples);
    // P = 1 + N with N from higher to strictly lower (level, index) positions
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (level[i], i));
    let mut nt = Vec::new();
    for (pi, &i) in order.iter().enumerate() {
        for &j in &order[pi + 1..] {
            if r.gen_bool(0.3) {
                nt.push((i, j, ring.one()));
            }
        }
    }
    let nm = SparseMatrix::from_triples(ring, n, n, nt);
    let id = SparseMatrix::identity(ring, n);
    let p = id.add(&nm).unwrap();
    let mut pinv = id.clone();
    let mut pw = id.clone();
    for _ in 1..n {
        pw = pw.mul(&nm).unwrap();
        pinv = pinv.add(&pw).unwrap();
    }
    let diff = p.mul(&d).unwrap().mul(&pinv).unwrap();
    let names = (0..n).map(|i| format!("g{i}")).collect();
    FilteredComplex::new(GradedComplex::new(ring, names, None, diff).unwrap(), level).unwrap()
}

fn spectral() -> Check {
    let mut r = rng(9);
    for sample in 0..80 {
        let f = random_filtered(&mut r);
        let ss = spectral_sequence(&f).map_err(err)?;
        ensure(ss.infinity.total == ss.homology_total, || format!("sample {sample}: E_inf {} vs H {}", ss.infinity.total, ss.homology_total))?;
        for w in ss.pages.windows(2) {
            ensure(w[1].total <= w[0].total, || format!("sample {sample}: page ranks increase"))?;
        }
    }
    Ok("80 random filtered complexes: E_inf = H, pages non-increasing".into())
}

fn truncation_consistency() -> Check {
    let m = unknot_model();
    for lam in [1, -1] {
        let f = Framing::knot(lam);
        for d in 1..=3 {
            let mut seen = Vec::new();
            for b in [4, 6, 8] {
                let t = Truncation::defaults(Mode::KnotB, &m, &f, Some(b), None).map_err(err)?;
                seen.push(homology(&m, &f, &t, d).map_err(err)?.0.iter().map(|h| h.stable.clone()).collect::<Vec<_>>());
            }
            let t = Truncation::defaults(Mode::Folded, &m, &f, Some(4), None).map_err(err)?;
            seen.push(homology(&m, &f, &t, d).map_err(err)?.0.iter().map(|h| h.stable.clone()).collect::<Vec<_>>());
            let totals: Vec<Vec<usize>> = seen.iter().map(|v| v.iter().map(|h| h.total).collect()).collect();
            ensure(totals.windows(2).all(|w| w[0] == w[1]), || format!("unknot lambda {lam} delta {d}: {totals:?}"))?;
        }
    }
    let hm = hopf_model();
    for (p1, p2) in [(2, 2), (2, 3)] {
        let f = hopf_framing(p1, p2);
        let base = Truncation::defaults(Mode::Folded, &hm, &f, None, None).map_err(err)?;
        let doubled = Truncation { m: base.m.iter().map(|v| 2 * v).collect(), ..base.clone() };
        for d in 1..=2 {
            let a: Vec<usize> = homology(&hm, &f, &base, d).map_err(err)?.0.iter().map(|h| h.stable.total).collect();
            let b: Vec<usize> = homology(&hm, &f, &doubled, d).map_err(err)?.0.iter().map(|h| h.stable.total).collect();
            ensure(a == b, || format!("Hopf ({p1},{p2}) delta {d}: {a:?} vs {b:?} after doubling m"))?;
        }
    }
    Ok("unknot knot_b b in {4,6,8} = folded; Hopf folded stable under m x 2".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("symphony counts", symphony_counts),
        ("played relations", played_relations),
        ("compression", compression),
        ("grid differential and gradings", grid_checks),
        ("unknot surgery", unknot_surgery),
        ("Hopf surgery", hopf_surgery),
        ("minus-minus complex", minus_minus),
        ("tower rank formula", tower_formula),
        ("spectral sequence", spectral),
        ("truncation consistency", truncation_consistency),
    ];
    // optional criterion numbers on the command line select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let start = Instant::now();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        ran += 1;
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", ran - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
