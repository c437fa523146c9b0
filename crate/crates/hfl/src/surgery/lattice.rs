//! Integer lattice helpers for framings: Hermite normal form, Spin^c class
//! keys, the perpendicular lattice, `d(u)` and the `nu` grading shift.
//!
//! Lattice points of `H(L)` are stored doubled: `S_i = 2 s_i`.

use crate::error::{HflError, Result};

/// Symmetric integer framing matrix; the diagonal holds the surgery
/// coefficients, off-diagonal entries the pairwise linking numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framing {
    pub rows: Vec<Vec<i64>>,
}

/// Row-style Hermite normal form `H = U * A` with unimodular `U`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: Vec<Vec<i64>>,
    pub u: Vec<Vec<i64>>,
    /// `(row, pivot column)` for each nonzero row of `h`.
    pub pivots: Vec<(usize, usize)>,
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn add_row(m: &mut [Vec<i64>], dst: usize, src: usize, k: i64) {
    if k == 0 {
        return;
    }
    let s = m[src].clone();
    for (d, v) in m[dst].iter_mut().zip(s) {
        *d += k * v;
    }
}

/// Hermite normal form of the rows of `a` (all rows the same length).
pub fn hnf(a: &[Vec<i64>]) -> Hnf {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut h: Vec<Vec<i64>> = a.to_vec();
    let mut u: Vec<Vec<i64>> = (0..nr).map(|i| (0..nr).map(|j| i64::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..nc {
        if row == nr {
            break;
        }
        // Euclid on the column below `row`
        loop {
            let nz: Vec<usize> = (row..nr).filter(|&r| h[r][col] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&r| (h[r][col].abs(), r)).unwrap();
            h.swap(row, p);
            u.swap(row, p);
            let mut done = true;
            for r in row + 1..nr {
                if h[r][col] != 0 {
                    let q = h[r][col].div_euclid(h[row][col]);
                    add_row(&mut h, r, row, -q);
                    add_row(&mut u, r, row, -q);
                    if h[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[row][col] == 0 {
            continue;
        }
        if h[row][col] < 0 {
            for v in h[row].iter_mut() {
                *v = -*v;
            }
            for v in u[row].iter_mut() {
                *v = -*v;
            }
        }
        for r in 0..row {
            let q = h[r][col].div_euclid(h[row][col]);
            add_row(&mut h, r, row, -q);
            add_row(&mut u, r, row, -q);
        }
        pivots.push((row, col));
        row += 1;
    }
    Hnf { h, u, pivots }
}

impl Framing {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(HflError::validation("framing matrix is empty"));
        }
        for r in &rows {
            if r.len() != n {
                return Err(HflError::validation("framing matrix must be square"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != rows[j][i] {
                    return Err(HflError::validation("framing matrix must be symmetric"));
                }
            }
        }
        Ok(Framing { rows })
    }

    /// Parse `"a b; b c"`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Result<Vec<Vec<i64>>> = text
            .split(';')
            .map(|r| {
                r.split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|_| HflError::validation(format!("bad framing entry {t:?}"))))
                    .collect()
            })
            .collect();
        Framing::new(rows?)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn knot(lambda: i64) -> Self {
        Framing { rows: vec![vec![lambda]] }
    }

    /// `Lambda_i` doubled, as a displacement of doubled lattice coordinates.
    pub fn row2(&self, i: usize) -> Vec<i64> {
        self.rows[i].iter().map(|v| 2 * v).collect()
    }

    /// Doubled offsets `lk(L_i, L - L_i)`; `S_i` must have this parity.
    pub fn offsets(&self) -> Vec<i64> {
        (0..self.dim()).map(|i| (0..self.dim()).filter(|&j| j != i).map(|j| self.rows[i][j]).sum()).collect()
    }

    pub fn determinant(&self) -> i64 {
        determinant(&self.rows)
    }

    pub fn is_degenerate(&self) -> bool {
        self.determinant() == 0
    }

    /// `sum_{i in negative} Lambda_i`, undoubled.
    pub fn lambda_sum(&self, negative: &[usize]) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for &i in negative {
            for (o, v) in out.iter_mut().zip(&self.rows[i]) {
                *o += v;
            }
        }
        out
    }

    pub fn check_point(&self, s2: &[i64]) -> Result<()> {
        if s2.len() != self.dim() {
            return Err(HflError::validation(format!("point has {} coordinates, expected {}", s2.len(), self.dim())));
        }
        for (i, (v, o)) in s2.iter().zip(self.offsets()).enumerate() {
            if (v - o).rem_euclid(2) != 0 {
                return Err(HflError::validation(format!("coordinate {} is not in lk/2 + Z", i + 1)));
            }
        }
        Ok(())
    }

    /// Canonical key of the Spin^c class of a (doubled) lattice point.
    pub fn class_key(&self, s2: &[i64]) -> Vec<i64> {
        let h = hnf(&self.rows);
        let mut v: Vec<i64> = s2.iter().zip(self.offsets()).map(|(s, o)| (s - o) / 2).collect();
        for &(r, c) in &h.pivots {
            let q = v[c].div_euclid(h.h[r][c]);
            for (x, y) in v.iter_mut().zip(&h.h[r]) {
                *x -= q * y;
            }
        }
        v
    }

    /// Integer solution `a` of `v = sum_i a_i Lambda_i`, if any.
    pub fn solve(&self, v: &[i64]) -> Option<Vec<i64>> {
        let h = hnf(&self.rows);
        let mut rest = v.to_vec();
        let mut x = vec![0i64; self.dim()];
        for &(r, c) in &h.pivots {
            if rest[c] % h.h[r][c] != 0 {
                return None;
            }
            let q = rest[c] / h.h[r][c];
            x[r] = q;
            for (a, b) in rest.iter_mut().zip(&h.h[r]) {
                *a -= q * b;
            }
        }
        if rest.iter().any(|&t| t != 0) {
            return None;
        }
        let n = self.dim();
        Some((0..n).map(|j| (0..n).map(|r| x[r] * h.u[r][j]).sum()).collect())
    }

    /// Integral basis of `{w : Lambda w = 0}`.
    pub fn perp_basis(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| self.rows[j][i]).collect()).collect();
        let h = hnf(&t);
        let rank = h.pivots.len();
        h.u[rank..].to_vec()
    }

    /// `d(u)`: gcd of `2s . w` over the perpendicular basis (0 if trivial).
    pub fn d_of_u(&self, s2: &[i64]) -> i64 {
        self.perp_basis()
            .iter()
            .map(|w| w.iter().zip(s2).map(|(a, b)| a * b).sum::<i64>())
            .fold(0, gcd)
    }

    /// `nu(s)` relative to the base point `s0` of the same class, reduced mod `d(u)`.
    pub fn nu(&self, s2: &[i64], base2: &[i64]) -> Result<i64> {
        let v: Vec<i64> = s2.iter().zip(base2).map(|(a, b)| (a - b) / 2).collect();
        let a = self.solve(&v).ok_or_else(|| HflError::validation("point is not in the class of the base point"))?;
        let n = self.dim();
        let mut nu = 0;
        for i in 0..n {
            let r: i64 = self.rows[i].iter().sum();
            nu += a[i] * base2[i] - a[i] * r;
            for j in 0..n {
                nu += a[i] * a[j] * self.rows[i][j];
            }
        }
        let d = self.d_of_u(base2);
        Ok(if d == 0 { nu } else { nu.rem_euclid(d) })
    }
}

pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * determinant(&minor)
            })
            .sum(),
    }
}

/// Adjugate, so that `adj(m) * m = det(m) * I`.
pub fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = sign * determinant(&minor);
        }
    }
    adj
}
