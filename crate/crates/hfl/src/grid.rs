//! Toroidal grid diagrams with free markings and their generalized Floer
//! complexes, counted by empty rectangles.
//!
//! Columns run `0..n` left to right and rows `0..n` bottom to top. A marking
//! in column `c`, row `r` sits in the square `[c, c+1] x [r, r+1]`; generator
//! points sit on lattice corners `(c, x[c])`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::coeff::{GradedComplex, SparseMatrix, TruncatedRing};
use crate::error::{HflError, Result};
use crate::half::Ext;

/// A validated grid diagram together with its traced link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridDiagram {
    pub n: usize,
    /// Row of the O marking in each column.
    pub o: Vec<usize>,
    /// Row of the X marking in each column, if any.
    pub x: Vec<Option<usize>>,
    /// O columns of each link component, in tracing order.
    pub components: Vec<Vec<usize>>,
    /// Columns of the free O markings, increasing.
    pub free: Vec<usize>,
    /// Ring variable of the O marking in each column (component index, or
    /// `components.len() + k` for the `k`-th free marking).
    pub color: Vec<usize>,
    /// Symmetric linking matrix (zero diagonal).
    pub linking: Vec<Vec<i64>>,
}

/// A rectangle from `x` to `y`: lower-left corner at column `i`, upper-right at column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectangle {
    pub left: usize,
    pub right: usize,
    pub target: Vec<usize>,
    /// O markings inside, per ring variable.
    pub o_counts: Vec<u32>,
    /// X markings inside, per component.
    pub x_counts: Vec<u32>,
    /// Generator points of the source strictly inside.
    pub interior_points: u32,
}

impl Rectangle {
    pub fn is_empty(&self) -> bool {
        self.interior_points == 0
    }

    pub fn o_total(&self) -> u32 {
        self.o_counts.iter().sum()
    }
}

/// Maslov and (doubled) Alexander gradings of all generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridGradings {
    pub maslov: Vec<i64>,
    pub alexander2: Vec<Vec<i64>>,
}

impl GridDiagram {
    /// Validate markings and trace the link.
    pub fn new(o: Vec<usize>, x: Vec<Option<usize>>) -> Result<Self> {
        let n = o.len();
        if n == 0 || x.len() != n {
            return Err(HflError::validation("O and X lines must both list n entries"));
        }
        let mut seen = vec![false; n];
        for (c, &r) in o.iter().enumerate() {
            if r >= n {
                return Err(HflError::validation(format!("O row {r} in column {c} is out of range")));
            }
            if seen[r] {
                return Err(HflError::validation(format!("two O markings in row {r}")));
            }
            seen[r] = true;
        }
        let mut x_row = vec![None; n];
        for (c, xr) in x.iter().enumerate() {
            if let Some(r) = *xr {
                if r >= n {
                    return Err(HflError::validation(format!("X row {r} in column {c} is out of range")));
                }
                if x_row[r].is_some() {
                    return Err(HflError::validation(format!("two X markings in row {r}")));
                }
                if o[c] == r {
                    return Err(HflError::validation(format!("O and X share the square at column {c}, row {r}")));
                }
                x_row[r] = Some(c);
            }
        }
        for c in 0..n {
            if x_row[o[c]].is_none() && x[c].is_some() {
                return Err(HflError::validation(format!(
                    "the O in column {c} has no X in its row but an X in its column"
                )));
            }
        }
        // O in column c -> X in the same row -> O in that X's column
        let mut next = vec![None; n];
        for c in 0..n {
            if let Some(cx) = x_row[o[c]] {
                next[c] = Some(cx);
            }
        }
        let mut components = Vec::new();
        let mut done = vec![false; n];
        for c in 0..n {
            if next[c].is_none() || done[c] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut d = c;
            while !done[d] {
                done[d] = true;
                cyc.push(d);
                d = next[d].expect("linked markings close up");
            }
            components.push(cyc);
        }
        let free: Vec<usize> = (0..n).filter(|&c| next[c].is_none()).collect();
        let ell = components.len();
        let mut color = vec![0; n];
        for (i, cyc) in components.iter().enumerate() {
            for &c in cyc {
                color[c] = i;
            }
        }
        for (k, &c) in free.iter().enumerate() {
            color[c] = ell + k;
        }
        let mut g = GridDiagram { n, o, x, components, free, color, linking: vec![vec![0; ell]; ell] };
        g.linking = g.compute_linking();
        Ok(g)
    }

    /// Parse the text format: `n=<int>`, `O: r0 .. r_{n-1}`, `X: r|- ..`;
    /// `#` starts a comment; `/` also separates lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut o = None;
        let mut x = None;
        for raw in text.lines().flat_map(|l| l.split('/')) {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("n=") {
                n = Some(v.trim().parse::<usize>().map_err(|_| HflError::validation(format!("bad grid size line {line:?}")))?);
            } else if let Some(v) = line.strip_prefix("O:") {
                let rows: Result<Vec<usize>> = v
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| HflError::validation(format!("bad O entry {t:?}"))))
                    .collect();
                o = Some(rows?);
            } else if let Some(v) = line.strip_prefix("X:") {
                let rows: Result<Vec<Option<usize>>> = v
                    .split_whitespace()
                    .map(|t| {
                        if t == "-" {
                            Ok(None)
                        } else {
                            t.parse::<usize>().map(Some).map_err(|_| HflError::validation(format!("bad X entry {t:?}")))
                        }
                    })
                    .collect();
                x = Some(rows?);
            } else {
                return Err(HflError::validation(format!("unrecognized grid line {line:?}")));
            }
        }
        let n = n.ok_or_else(|| HflError::validation("missing n= line"))?;
        let o = o.ok_or_else(|| HflError::validation("missing O: line"))?;
        let x = x.ok_or_else(|| HflError::validation("missing X: line"))?;
        if o.len() != n || x.len() != n {
            return Err(HflError::validation(format!("O and X lines must have {n} entries")));
        }
        GridDiagram::new(o, x)
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_free(&self) -> usize {
        self.free.len()
    }

    /// Number of ring variables, one per component plus one per free marking.
    pub fn num_vars(&self) -> usize {
        self.num_components() + self.num_free()
    }

    /// Component of the linked markings in column `c` (None for a free column).
    pub fn component_of_column(&self, c: usize) -> Option<usize> {
        let k = self.color[c];
        (k < self.num_components()).then_some(k)
    }

    fn x_row_map(&self) -> Vec<Option<usize>> {
        let mut m = vec![None; self.n];
        for (c, r) in self.x.iter().enumerate() {
            if let Some(r) = r {
                m[*r] = Some(c);
            }
        }
        m
    }

    fn compute_linking(&self) -> Vec<Vec<i64>> {
        let ell = self.num_components();
        let xr = self.x_row_map();
        // horizontal arcs: row r, from O column to X column; vertical arcs: column c from X row to O row
        let mut hs = Vec::new();
        let mut vs = Vec::new();
        for c in 0..self.n {
            if let Some(i) = self.component_of_column(c) {
                let r = self.o[c];
                hs.push((r, c, xr[r].unwrap(), i));
                vs.push((c, self.x[c].unwrap(), self.o[c], i));
            }
        }
        let mut twice = vec![vec![0i64; ell]; ell];
        for &(r, co, cx, i) in &hs {
            for &(c, rx, ro, j) in &vs {
                let inside_h = co.min(cx) < c && c < co.max(cx);
                let inside_v = rx.min(ro) < r && r < rx.max(ro);
                if inside_h && inside_v && i != j {
                    let hx: i64 = if cx > co { 1 } else { -1 };
                    let vy: i64 = if ro > rx { 1 } else { -1 };
                    // over strand (vertical) crossed with under strand (horizontal)
                    let sign = -vy * hx;
                    twice[i][j] += sign;
                    twice[j][i] += sign;
                }
            }
        }
        twice.iter().map(|row| row.iter().map(|v| v / 2).collect()).collect()
    }

    /// `lk(L_i, L - L_i)` for each component.
    pub fn linking_sums(&self) -> Vec<i64> {
        self.linking.iter().map(|r| r.iter().sum()).collect()
    }

    /// All generators (permutations column -> row) in lexicographic order.
    pub fn generators(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..self.n).collect();
        loop {
            out.push(p.clone());
            // next lexicographic permutation
            let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
            let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
        }
        out
    }

    /// The rectangle with lower-left corner `(i, x[i])` and upper-right `(j, x[j])`.
    pub fn rectangle(&self, x: &[usize], i: usize, j: usize) -> Rectangle {
        let n = self.n;
        let w = (j + n - i) % n;
        let h = (x[j] + n - x[i]) % n;
        let in_rows = |r: usize| (r + n - x[i]) % n < h;
        let in_rows_open = |r: usize| {
            let d = (r + n - x[i]) % n;
            d > 0 && d < h
        };
        let mut o_counts = vec![0u32; self.num_vars()];
        let mut x_counts = vec![0u32; self.num_components()];
        let mut interior = 0;
        for k in 0..w {
            let c = (i + k) % n;
            if in_rows(self.o[c]) {
                o_counts[self.color[c]] += 1;
            }
            if let Some(xr) = self.x[c] {
                if in_rows(xr) {
                    x_counts[self.color[c]] += 1;
                }
            }
            if k > 0 && in_rows_open(x[c]) {
                interior += 1;
            }
        }
        let mut target = x.to_vec();
        target.swap(i, j);
        Rectangle { left: i, right: j, target, o_counts, x_counts, interior_points: interior }
    }

    /// Maslov grading (base generator `x = identity` at 0) and doubled Alexander
    /// gradings centered in the lattice `lk/2 + Z`, propagated along all
    /// rectangles. Inconsistent propagation is an invariant violation.
    pub fn gradings(&self) -> Result<GridGradings> {
        let gens = self.generators();
        let index: HashMap<Vec<usize>, usize> = gens.iter().cloned().enumerate().map(|(k, g)| (g, k)).collect();
        let ell = self.num_components();
        let mut m: Vec<Option<i64>> = vec![None; gens.len()];
        let mut a: Vec<Vec<i64>> = vec![vec![0; ell]; gens.len()];
        m[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let x = &gens[k];
            for i in 0..self.n {
                for j in 0..self.n {
                    if i == j {
                        continue;
                    }
                    let r = self.rectangle(x, i, j);
                    let t = index[&r.target];
                    // M(x) - M(y) = 1 - 2 O(r) + 2 #(x in Int r)
                    let my = m[k].unwrap() - 1 + 2 * r.o_total() as i64 - 2 * r.interior_points as i64;
                    // A(x) - A(y) = X(r) - O(r), doubled
                    let ay: Vec<i64> = (0..ell)
                        .map(|c| a[k][c] - 2 * (r.x_counts[c] as i64 - r.o_counts[c] as i64))
                        .collect();
                    match m[t] {
                        None => {
                            m[t] = Some(my);
                            a[t] = ay;
                            queue.push_back(t);
                        }
                        Some(old) => {
                            if old != my || a[t] != ay {
                                return Err(HflError::invariant(format!(
                                    "rectangle grading relation fails between generators {k} and {t}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        let lk = self.linking_sums();
        for c in 0..ell {
            let hi = a.iter().map(|v| v[c]).max().unwrap_or(0);
            let lo = a.iter().map(|v| v[c]).min().unwrap_or(0);
            let mut shift = -(hi + lo) / 2;
            if (shift - lk[c]).rem_euclid(2) != 0 {
                shift += 1;
            }
            for v in a.iter_mut() {
                v[c] += shift;
            }
        }
        Ok(GridGradings { maslov: m.into_iter().map(|v| v.unwrap()).collect(), alexander2: a })
    }

    fn check_point(&self, s: &[Ext]) -> Result<()> {
        if s.len() != self.num_components() {
            return Err(HflError::validation(format!(
                "lattice point has {} coordinates, the link has {} components",
                s.len(),
                self.num_components()
            )));
        }
        let lk = self.linking_sums();
        for (i, v) in s.iter().enumerate() {
            if let Ext::Finite(d) = v {
                if (d - lk[i]).rem_euclid(2) != 0 {
                    return Err(HflError::validation(format!(
                        "coordinate {} = {v} is not in lk/2 + Z",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `mu_s(x) = M(x) - 2 sum_i max(A_i(x) - s_i, 0)`, with `A_i(x)` in place of
    /// the maximum when `s_i = -inf`; half-integral values there are rounded
    /// down uniformly so that gradings stay integral.
    pub fn mu(&self, gr: &GridGradings, k: usize, s: &[Ext]) -> i64 {
        let lk = self.linking_sums();
        let mut mu = gr.maslov[k];
        for (i, v) in s.iter().enumerate() {
            let a2 = gr.alexander2[k][i];
            mu -= match v {
                Ext::PosInf => 0,
                Ext::NegInf => 2 * ((a2 - lk[i].rem_euclid(2)) / 2),
                Ext::Finite(d) => (a2 - d).max(0),
            };
        }
        mu
    }

    /// Exponent of `U_i` for a rectangle at coordinate `s_i`, given doubled Alexander values.
    fn exponent(s: Ext, ax2: i64, ay2: i64, o: u32, x: u32) -> Result<u32> {
        let e = match s {
            Ext::PosInf => o as i64,
            Ext::NegInf => x as i64,
            Ext::Finite(d) => ((d - ax2).max(0) - (d - ay2).max(0)) / 2 + x as i64,
        };
        u32::try_from(e).map_err(|_| HflError::invariant(format!("negative rectangle exponent {e}")))
    }

    /// The complex at the extended point `s`, over `F2[U_1..U_{l+q}]/(U^delta)`.
    pub fn build_complex(&self, s: &[Ext], delta: u32) -> Result<GradedComplex> {
        self.check_point(s)?;
        let ring = TruncatedRing::new(self.num_vars(), delta)?;
        let gens = self.generators();
        let index: HashMap<Vec<usize>, usize> = gens.iter().cloned().enumerate().map(|(k, g)| (g, k)).collect();
        let gr = self.gradings()?;
        let ell = self.num_components();
        let mut triples = Vec::new();
        for (k, x) in gens.iter().enumerate() {
            for i in 0..self.n {
                for j in 0..self.n {
                    if i == j {
                        continue;
                    }
                    let r = self.rectangle(x, i, j);
                    if !r.is_empty() {
                        continue;
                    }
                    let t = index[&r.target];
                    let mut exps = vec![0u32; self.num_vars()];
                    for c in 0..ell {
                        exps[c] = Self::exponent(s[c], gr.alexander2[k][c], gr.alexander2[t][c], r.o_counts[c], r.x_counts[c])?;
                    }
                    exps[ell..].copy_from_slice(&r.o_counts[ell..]);
                    let e = ring.monomial_element(&exps);
                    if !e.is_zero() {
                        triples.push((t, k, e));
                    }
                }
            }
        }
        let names = gens.iter().map(|g| g.iter().map(|r| r.to_string()).collect::<String>()).collect();
        let gradings = (0..gens.len()).map(|k| self.mu(&gr, k, s)).collect();
        GradedComplex::new(ring, names, Some(gradings), SparseMatrix::from_triples(ring, gens.len(), gens.len(), triples))
    }

    /// The diagonal inclusion from the complex at `s` to the one at `p^M(s)`,
    /// where `oriented` lists `(component, positively oriented?)`.
    /// Returns the map and the target point.
    pub fn inclusion_map(&self, s: &[Ext], oriented: &[(usize, bool)], delta: u32) -> Result<(SparseMatrix, Vec<Ext>)> {
        self.check_point(s)?;
        let ring = TruncatedRing::new(self.num_vars(), delta)?;
        let gr = self.gradings()?;
        let mut target = s.to_vec();
        for &(c, plus) in oriented {
            if c >= self.num_components() {
                return Err(HflError::validation(format!("component {} does not exist", c + 1)));
            }
            match (plus, s[c]) {
                (true, Ext::NegInf) | (false, Ext::PosInf) => {
                    return Err(HflError::validation(format!(
                        "inclusion exponent is infinite at component {}",
                        c + 1
                    )))
                }
                _ => {}
            }
            target[c] = if plus { Ext::PosInf } else { Ext::NegInf };
        }
        let n = gr.maslov.len();
        let mut triples = Vec::with_capacity(n);
        for k in 0..n {
            let mut exps = vec![0u32; self.num_vars()];
            for &(c, plus) in oriented {
                let a2 = gr.alexander2[k][c];
                exps[c] = match s[c] {
                    Ext::Finite(d) => (if plus { (a2 - d).max(0) } else { (d - a2).max(0) } / 2) as u32,
                    _ => 0,
                };
            }
            let e = ring.monomial_element(&exps);
            if !e.is_zero() {
                triples.push((k, k, e));
            }
        }
        Ok((SparseMatrix::from_triples(ring, n, n, triples), target))
    }

    /// Delete the X markings of positively oriented components, and the O
    /// markings of negatively oriented ones (whose X's become O's).
    pub fn reduce(&self, oriented: &[(usize, bool)]) -> Result<GridDiagram> {
        let mut o = self.o.clone();
        let mut x = self.x.clone();
        for &(comp, plus) in oriented {
            if comp >= self.num_components() {
                return Err(HflError::validation(format!("component {} does not exist", comp + 1)));
            }
            let cols = &self.components[comp];
            if plus {
                for &c in cols {
                    x[c] = None;
                }
            } else {
                for &c in cols {
                    // the X in this column becomes the column's O
                    o[c] = self.x[c].unwrap();
                    x[c] = None;
                }
            }
        }
        GridDiagram::new(o, x)
    }

    /// Remove every row and column carrying a marking of the given components.
    pub fn quasi_destabilize(&self, comps: &[usize]) -> Result<GridDiagram> {
        let set: BTreeSet<usize> = comps.iter().copied().collect();
        for &c in &set {
            if c >= self.num_components() {
                return Err(HflError::validation(format!("component {} does not exist", c + 1)));
            }
        }
        let drop_col: Vec<bool> = (0..self.n).map(|c| self.component_of_column(c).is_some_and(|k| set.contains(&k))).collect();
        let mut drop_row = vec![false; self.n];
        for c in 0..self.n {
            if drop_col[c] {
                drop_row[self.o[c]] = true;
                drop_row[self.x[c].unwrap()] = true;
            }
        }
        let new_row: Vec<usize> = (0..self.n).scan(0, |acc, r| {
            let v = *acc;
            if !drop_row[r] {
                *acc += 1;
            }
            Some(v)
        }).collect();
        let mut o = Vec::new();
        let mut x = Vec::new();
        for c in 0..self.n {
            if drop_col[c] {
                continue;
            }
            o.push(new_row[self.o[c]]);
            x.push(self.x[c].map(|r| new_row[r]));
        }
        if o.is_empty() {
            return Err(HflError::validation("removing every component leaves an empty grid"));
        }
        GridDiagram::new(o, x)
    }

    /// Pairs `(U_j, U_j')` of Koszul factors for the components in `comps`:
    /// each O of such a component against the O in the row just below.
    pub fn koszul_factors(&self, comps: &[usize]) -> Vec<(usize, usize)> {
        let mut col_of_row = vec![0; self.n];
        for (c, &r) in self.o.iter().enumerate() {
            col_of_row[r] = c;
        }
        let set: BTreeSet<usize> = comps.iter().copied().collect();
        let mut out = Vec::new();
        for c in 0..self.n {
            if self.component_of_column(c).is_some_and(|k| set.contains(&k)) {
                let below = (self.o[c] + self.n - 1) % self.n;
                out.push((self.color[c], self.color[col_of_row[below]]));
            }
        }
        out
    }

    /// Koszul complex of the sublink `comps` over this grid's ring.
    pub fn koszul(&self, comps: &[usize], delta: u32) -> Result<GradedComplex> {
        koszul_complex(TruncatedRing::new(self.num_vars(), delta)?, &self.koszul_factors(comps))
    }

    /// Rotate the torus by one column and one row.
    pub fn translate(&self) -> Result<GridDiagram> {
        let n = self.n;
        let o = (0..n).map(|c| (self.o[(c + 1) % n] + 1) % n).collect();
        let x = (0..n).map(|c| self.x[(c + 1) % n].map(|r| (r + 1) % n)).collect();
        GridDiagram::new(o, x)
    }
}

/// Tensor product over the ring of the two-step complexes `R --(U_a + U_b)--> R`.
/// Generator `e_S` (S = factors in source position) has grading `-|S|`.
pub fn koszul_complex(ring: TruncatedRing, factors: &[(usize, usize)]) -> Result<GradedComplex> {
    let k = factors.len();
    if k > 20 {
        return Err(HflError::validation("too many Koszul factors"));
    }
    let n = 1usize << k;
    let mut triples = Vec::new();
    for s in 0..n {
        for (f, &(a, b)) in factors.iter().enumerate() {
            if s >> f & 1 == 1 {
                let e = ring.var(a).add(&ring.var(b));
                if !e.is_zero() {
                    triples.push((s & !(1 << f), s, e));
                }
            }
        }
    }
    let names = (0..n).map(|s| format!("e{s:0width$b}", width = k.max(1))).collect();
    let gradings = (0..n).map(|s| -(s.count_ones() as i64)).collect();
    GradedComplex::new(ring, names, Some(gradings), SparseMatrix::from_triples(ring, n, n, triples))
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        let o: Vec<String> = self.o.iter().map(|r| r.to_string()).collect();
        writeln!(f, "O: {}", o.join(" "))?;
        let x: Vec<String> = self.x.iter().map(|r| r.map_or("-".to_string(), |v| v.to_string())).collect();
        writeln!(f, "X: {}", x.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = GridDiagram::parse("n=2 / O: 0 1 / X: 1 0").unwrap();
        assert_eq!((g.num_components(), g.num_free()), (1, 0));
        let g = GridDiagram::parse("n=3\nO: 0 1 2\nX: 1 0 -\n").unwrap();
        assert_eq!((g.num_components(), g.num_free()), (1, 1));
        assert!(GridDiagram::parse("n=2\nO: 0 0\nX: 1 -").is_err());
        assert!(GridDiagram::parse("n=3\nO: 0 1 2\nX: 1 2 -").is_err());
    }

    #[test]
    fn hopf_grid_links_once() {
        let g = GridDiagram::parse("n=4\nO: 0 1 2 3\nX: 2 3 0 1").unwrap();
        assert_eq!(g.num_components(), 2);
        assert_eq!(g.linking[0][1].abs(), 1);
    }

    #[test]
    fn two_by_two_unknot_carries_a_torus_factor() {
        // two O's on one component with a single variable: both rectangles cancel
        let g = GridDiagram::parse("n=2\nO: 0 1\nX: 1 0").unwrap();
        for d in 1..=3 {
            let c = g.build_complex(&[Ext::PosInf], d).unwrap();
            assert_eq!(c.len(), 2);
            assert_eq!(c.homology_ranks().unwrap().total, 2 * d as usize);
        }
    }

    #[test]
    fn free_marked_unknot_rank() {
        let g = GridDiagram::parse("n=3\nO: 0 1 2\nX: 1 0 -").unwrap();
        for d in 1..=3 {
            let c = g.build_complex(&[Ext::PosInf], d).unwrap();
            c.check_d_squared().unwrap();
            // cone(U1 + U2) tensored with one torus factor
            assert_eq!(c.homology_ranks().unwrap().total, 4 * d as usize);
        }
    }

    #[test]
    fn hopf_grid_all_regions() {
        for text in ["n=4\nO: 0 1 2 3\nX: 2 3 0 1", "n=5\nO: 0 1 2 3 4\nX: - 3 4 1 2"] {
            let g = GridDiagram::parse(text).unwrap();
            let vals = [Ext::NegInf, Ext::Finite(-3), Ext::Finite(-1), Ext::Finite(1), Ext::Finite(3), Ext::PosInf];
            for a in vals {
                for b in vals {
                    let c = g.build_complex(&[a, b], 2).unwrap();
                    c.check_d_squared().unwrap();
                    c.check_gradings(0).unwrap();
                }
            }
        }
    }
}
