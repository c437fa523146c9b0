//! Truncated polynomial rings `F2[U_1..U_p]/(U_i^delta)` and their elements.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{HflError, Result};

/// Largest supported number of variables (one byte of a packed monomial each).
pub const MAX_VARS: usize = 8;
/// Largest supported truncation order.
pub const MAX_DELTA: u32 = 127;

/// The ring `F2[U_1..U_p]/(U_1^delta, .., U_p^delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedRing {
    pub num_vars: usize,
    pub delta: u32,
}

/// A monomial packed as one byte of exponent per variable.
pub type Monomial = u64;

impl TruncatedRing {
    pub fn new(num_vars: usize, delta: u32) -> Result<Self> {
        if num_vars > MAX_VARS {
            return Err(HflError::validation(format!(
                "at most {MAX_VARS} ring variables are supported, got {num_vars}"
            )));
        }
        if delta == 0 || delta > MAX_DELTA {
            return Err(HflError::validation(format!(
                "truncation order must lie in 1..={MAX_DELTA}, got {delta}"
            )));
        }
        Ok(TruncatedRing { num_vars, delta })
    }

    /// Same variables, different truncation order.
    pub fn with_delta(self, delta: u32) -> Result<Self> {
        TruncatedRing::new(self.num_vars, delta)
    }

    /// Number of monomials surviving truncation, `delta^p`.
    pub fn monomial_count(&self) -> usize {
        (self.delta as usize).pow(self.num_vars as u32)
    }

    fn overflow_probe(&self) -> (u64, u64) {
        let mut add = 0u64;
        let mut high = 0u64;
        for i in 0..self.num_vars {
            add |= ((128 - self.delta) as u64) << (8 * i);
            high |= 0x80u64 << (8 * i);
        }
        (add, high)
    }

    /// Pack an exponent vector, returning `None` if it is truncated away.
    pub fn monomial(&self, exps: &[u32]) -> Option<Monomial> {
        assert_eq!(exps.len(), self.num_vars, "exponent vector length");
        let mut m = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            if e >= self.delta {
                return None;
            }
            m |= (e as u64) << (8 * i);
        }
        Some(m)
    }

    /// Same as [`monomial`](Self::monomial) for possibly negative exponents;
    /// negative entries are a caller bug reported as `Err`.
    pub fn monomial_signed(&self, exps: &[i64]) -> Result<Option<Monomial>> {
        let mut out = Vec::with_capacity(exps.len());
        for &e in exps {
            if e < 0 {
                return Err(HflError::invariant(format!(
                    "negative U-exponent {e} in exponent vector {exps:?}"
                )));
            }
            if e >= self.delta as i64 {
                return Ok(None);
            }
            out.push(e as u32);
        }
        Ok(self.monomial(&out))
    }

    pub fn exponents(&self, m: Monomial) -> Vec<u32> {
        (0..self.num_vars).map(|i| ((m >> (8 * i)) & 0xff) as u32).collect()
    }

    pub fn exponent(&self, m: Monomial, var: usize) -> u32 {
        ((m >> (8 * var)) & 0xff) as u32
    }

    /// Total degree of a monomial (each `U_i` counts once).
    pub fn degree(&self, m: Monomial) -> u32 {
        (0..self.num_vars).map(|i| self.exponent(m, i)).sum()
    }

    /// Product of two monomials, `None` when it vanishes in the truncation.
    #[inline]
    pub fn mono_mul(&self, a: Monomial, b: Monomial) -> Option<Monomial> {
        let s = a + b;
        let (add, high) = self.overflow_probe();
        if (s + add) & high != 0 {
            None
        } else {
            Some(s)
        }
    }

    /// Index of a monomial in the flattened basis `0..delta^p`.
    pub fn monomial_index(&self, m: Monomial) -> usize {
        let d = self.delta as usize;
        let mut idx = 0usize;
        for i in (0..self.num_vars).rev() {
            idx = idx * d + self.exponent(m, i) as usize;
        }
        idx
    }

    /// Inverse of [`monomial_index`](Self::monomial_index).
    pub fn monomial_at(&self, mut idx: usize) -> Monomial {
        let d = self.delta as usize;
        let mut m = 0u64;
        for i in 0..self.num_vars {
            m |= ((idx % d) as u64) << (8 * i);
            idx /= d;
        }
        m
    }

    /// Reduce a monomial from a ring with larger truncation into this one.
    pub fn truncate_monomial(&self, m: Monomial) -> Option<Monomial> {
        for i in 0..self.num_vars {
            if self.exponent(m, i) >= self.delta {
                return None;
            }
        }
        Some(m)
    }

    pub fn zero(&self) -> RingElement {
        RingElement { ring: *self, monos: Vec::new() }
    }

    pub fn one(&self) -> RingElement {
        RingElement { ring: *self, monos: vec![0] }
    }

    /// The variable `U_i` (zero if `delta == 1`).
    pub fn var(&self, i: usize) -> RingElement {
        let mut e = vec![0u32; self.num_vars];
        e[i] = 1;
        self.monomial_element(&e)
    }

    pub fn monomial_element(&self, exps: &[u32]) -> RingElement {
        match self.monomial(exps) {
            Some(m) => RingElement { ring: *self, monos: vec![m] },
            None => self.zero(),
        }
    }

    /// Element from a list of exponent vectors; repeated vectors cancel in pairs.
    pub fn element(&self, terms: &[Vec<u32>]) -> RingElement {
        let monos: Vec<Monomial> = terms.iter().filter_map(|t| self.monomial(t)).collect();
        RingElement::from_monomials(*self, monos)
    }
}

/// Element of a [`TruncatedRing`]: a set of monomials with F2 coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub ring: TruncatedRing,
    monos: Vec<Monomial>,
}

impl RingElement {
    /// Canonicalize: sort and cancel repeated monomials in pairs.
    pub fn from_monomials(ring: TruncatedRing, mut monos: Vec<Monomial>) -> Self {
        monos.sort_unstable();
        let mut out: Vec<Monomial> = Vec::with_capacity(monos.len());
        for m in monos {
            if out.last() == Some(&m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        RingElement { ring, monos: out }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn is_zero(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monos.len() == 1 && self.monos[0] == 0
    }

    /// True when the constant term is 1; such elements are invertible.
    pub fn is_unit(&self) -> bool {
        self.monos.first() == Some(&0)
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        debug_assert_eq!(self.ring, other.ring);
        let (a, b) = (&self.monos, &other.monos);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        RingElement { ring: self.ring, monos: out }
    }

    pub fn add_assign(&mut self, other: &RingElement) {
        *self = self.add(other);
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        debug_assert_eq!(self.ring, other.ring);
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut prod = Vec::with_capacity(self.monos.len() * other.monos.len());
        for &a in &self.monos {
            for &b in &other.monos {
                if let Some(m) = self.ring.mono_mul(a, b) {
                    prod.push(m);
                }
            }
        }
        RingElement::from_monomials(self.ring, prod)
    }

    /// Multiply by a single monomial.
    pub fn mul_monomial(&self, m: Monomial) -> RingElement {
        let prod: Vec<Monomial> = self.monos.iter().filter_map(|&a| self.ring.mono_mul(a, m)).collect();
        // multiplication by a monomial is injective on surviving terms, so no cancellation
        let mut prod = prod;
        prod.sort_unstable();
        RingElement { ring: self.ring, monos: prod }
    }

    /// Inverse of a unit (`1 + n` with `n` nilpotent): `sum_k n^k`.
    pub fn inverse(&self) -> Option<RingElement> {
        if !self.is_unit() {
            return None;
        }
        let one = self.ring.one();
        let n = self.add(&one);
        let mut acc = one.clone();
        let mut pow = one;
        loop {
            pow = pow.mul(&n);
            if pow.is_zero() {
                break;
            }
            acc.add_assign(&pow);
        }
        Some(acc)
    }

    /// Image in the same variables with a smaller truncation order.
    pub fn truncate(&self, ring: TruncatedRing) -> RingElement {
        debug_assert_eq!(ring.num_vars, self.ring.num_vars);
        let monos = self.monos.iter().filter_map(|&m| ring.truncate_monomial(m)).collect();
        RingElement { ring, monos }
    }

    /// Lowest total degree among the monomials, if nonzero.
    pub fn min_degree(&self) -> Option<u32> {
        self.monos.iter().map(|&m| self.ring.degree(m)).min()
    }

    /// Exponent vectors of all monomials, in canonical order.
    pub fn terms(&self) -> Vec<Vec<u32>> {
        self.monos.iter().map(|&m| self.ring.exponents(m)).collect()
    }
}

/// Product of two ring elements; errors if the rings differ.
pub fn elem_mul(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    if a.ring != b.ring {
        return Err(HflError::validation(format!(
            "ring mismatch: {:?} vs {:?}",
            a.ring, b.ring
        )));
    }
    Ok(a.mul(b))
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monos.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &m in &self.monos {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let exps = self.ring.exponents(m);
            if exps.iter().all(|&e| e == 0) {
                write!(f, "1")?;
                continue;
            }
            let mut wrote = false;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if e == 1 {
                    write!(f, "U{}", i + 1)?;
                } else {
                    write!(f, "U{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_one_plus_u_truncates() {
        let r = TruncatedRing::new(1, 2).unwrap();
        let a = r.one().add(&r.var(0));
        assert!(a.mul(&a).is_one());
    }

    #[test]
    fn top_power_times_u_vanishes() {
        let r = TruncatedRing::new(1, 5).unwrap();
        let top = r.monomial_element(&[4]);
        assert!(top.mul(&r.var(0)).is_zero());
    }

    #[test]
    fn distributivity_example() {
        let r = TruncatedRing::new(2, 3).unwrap();
        let lhs = r.var(0).add(&r.var(1)).mul(&r.var(0));
        let rhs = r.element(&[vec![2, 0], vec![1, 1]]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_of_unit() {
        let r = TruncatedRing::new(2, 4).unwrap();
        let u = r.one().add(&r.var(0)).add(&r.var(1).mul(&r.var(0)));
        let inv = u.inverse().unwrap();
        assert!(u.mul(&inv).is_one());
        assert!(r.var(0).inverse().is_none());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = TruncatedRing::new(1, 2).unwrap().one();
        let b = TruncatedRing::new(1, 3).unwrap().one();
        assert!(elem_mul(&a, &b).is_err());
    }

    #[test]
    fn monomial_index_round_trip() {
        let r = TruncatedRing::new(3, 3).unwrap();
        for idx in 0..r.monomial_count() {
            assert_eq!(r.monomial_index(r.monomial_at(idx)), idx);
        }
    }
}
