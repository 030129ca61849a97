//! Dense univariate polynomials over F_{2^k}, with factorisation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::field::{Embedding, Fe, Field};
use crate::error::{Error, Result};

/// Coefficients low degree first; never carries trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(field: Field, coeffs: Vec<Fe>) -> Poly {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    pub fn from_bits(field: Field, bits: &[u64]) -> Result<Poly> {
        let coeffs = bits.iter().map(|&b| field.elem(b)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    pub fn x(field: Field) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn monomial(c: Fe, n: usize) -> Poly {
        let mut coeffs = vec![c.field().zero(); n + 1];
        coeffs[n] = c;
        Poly::new(c.field(), coeffs)
    }

    /// x − c.
    pub fn linear(c: Fe) -> Poly {
        Poly::new(c.field(), vec![c, c.field().one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(self.field.zero())
    }

    pub fn coeff_bits(&self) -> Vec<u64> {
        self.coeffs.iter().map(Fe::bits).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(l.inv().expect("nonzero lead")),
        }
    }

    pub fn scale(&self, c: Fe) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(self.field, coeffs)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { self.field.zero() })
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let inv_lead = d.lead().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); n - dd];
        for i in (dd..n).rev() {
            let c = rem[i] * inv_lead;
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j] + c * dc;
            }
        }
        Ok((Poly::new(self.field, quot), Poly::new(self.field, rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; errors when `d` does not divide.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::FieldMismatch("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd (zero when both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn square_mod(&self, m: &Poly) -> Poly {
        (self * self).rem(m).expect("nonzero modulus")
    }

    /// Multiplicity of `p` as a factor of `self` (self ≠ 0, p non-constant).
    pub fn multiplicity_of(&self, p: &Poly) -> u32 {
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(p).expect("nonzero factor");
            if !r.is_zero() || cur.is_zero() {
                return n;
            }
            n += 1;
            cur = q;
        }
    }

    pub fn embed(&self, e: &Embedding) -> Poly {
        Poly::new(e.target(), self.coeffs.iter().map(|&c| e.apply(c)).collect())
    }

    /// Square root of a polynomial whose odd coefficients vanish.
    fn sqrt(&self) -> Poly {
        debug_assert!(self.derivative().is_zero());
        let coeffs = self.coeffs.iter().step_by(2).map(|c| c.sqrt()).collect();
        Poly::new(self.field, coeffs)
    }

    /// Squarefree decomposition of a monic polynomial: pairs (squarefree factor, multiplicity).
    fn squarefree(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut c = self.gcd(&self.derivative());
        let mut w = self.div_exact(&c).expect("gcd divides");
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y).expect("gcd divides");
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_exact(&w).expect("gcd divides");
            i += 1;
        }
        if !c.is_one() {
            for (g, m) in c.sqrt().squarefree() {
                out.push((g, 2 * m));
            }
        }
        out
    }

    /// Splits a squarefree monic polynomial by degree of irreducible factors.
    fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let x = Poly::x(self.field);
        let mut f = self.clone();
        let mut h = x.rem(&f).unwrap();
        let mut d = 0;
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            for _ in 0..self.field.degree() {
                h = h.square_mod(&f);
            }
            let g = f.gcd(&(&h - &x));
            if !g.is_one() {
                f = f.div_exact(&g).unwrap();
                h = h.rem(&f).unwrap();
                out.push((g, d));
            }
        }
        if f.degree().unwrap_or(0) > 0 {
            let d = f.degree().unwrap();
            out.push((f, d));
        }
        out
    }

    /// Absolute-trace map a ↦ Σ a^(2^l) mod f for l < k·d.
    fn trace_map(a: &Poly, f: &Poly, d: usize) -> Poly {
        let steps = f.field.degree() as usize * d;
        let mut t = a.rem(f).unwrap();
        let mut acc = t.clone();
        for _ in 1..steps {
            t = t.square_mod(f);
            acc = &acc + &t;
        }
        acc
    }

    /// Splits a product of distinct irreducibles of degree d.
    ///
    /// The trace map is F₂-linear, so some element of the monomial basis
    /// {βⁱ xʲ} separates any two factors; iterating over it is deterministic.
    fn equal_degree(&self, d: usize) -> Vec<Poly> {
        let n = self.degree().unwrap_or(0);
        if n == d {
            return vec![self.clone()];
        }
        let k = self.field.degree() as usize;
        let mut beta = self.field.one();
        let gen = self.field.generator();
        for _ in 0..k {
            for j in 0..n {
                let a = Poly::monomial(beta, j);
                let g = self.gcd(&Poly::trace_map(&a, self, d));
                let dg = g.degree().unwrap_or(0);
                if g.is_zero() || dg == 0 || dg == n {
                    continue;
                }
                let other = self.div_exact(&g).unwrap();
                let mut out = g.equal_degree(d);
                out.extend(other.equal_degree(d));
                return out;
            }
            beta = beta * gen;
        }
        unreachable!("basis always separates distinct factors")
    }

    /// Monic irreducible factors with multiplicities, sorted.
    pub fn factor(&self) -> Result<Vec<(Poly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out: Vec<(Poly, u32)> = Vec::new();
        for (sf, m) in self.monic().squarefree() {
            for (part, d) in sf.distinct_degree() {
                for irr in part.equal_degree(d) {
                    out.push((irr, m));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn is_irreducible(&self) -> bool {
        match self.factor() {
            Ok(f) => self.degree().unwrap_or(0) > 0 && f.len() == 1 && f[0].1 == 1,
            Err(_) => false,
        }
    }

    /// Roots lying in the coefficient field, sorted, with multiplicity.
    pub fn roots(&self) -> Result<Vec<(Fe, u32)>> {
        let mut out: Vec<(Fe, u32)> = self
            .factor()?
            .into_iter()
            .filter(|(p, _)| p.degree() == Some(1))
            .map(|(p, m)| (p.coeff(0), m))
            .collect();
        out.sort();
        Ok(out)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(self.field, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        Poly::new(self.field, coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let coef = c.to_string();
            terms.push(match (i, c.is_one()) {
                (0, _) => coef,
                (_, true) => mono,
                _ if coef.contains('+') => format!("({coef}){mono}"),
                _ => format!("{coef}{mono}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2poly(bits: &[u64]) -> Poly {
        Poly::from_bits(Field::f2(), bits).unwrap()
    }

    #[test]
    fn x6_plus_1_factors_as_squares() {
        // (x+1)^2 (x^2+x+1)^2
        let p = f2poly(&[1, 0, 0, 0, 0, 0, 1]);
        let f = p.factor().unwrap();
        assert_eq!(f, vec![(f2poly(&[1, 1]), 2), (f2poly(&[1, 1, 1]), 2)]);
    }

    #[test]
    fn derivative_of_square_vanishes() {
        let f8 = Field::new(3).unwrap();
        let p = Poly::from_bits(f8, &[3, 5, 0, 7, 1]).unwrap();
        assert!((&p * &p).derivative().is_zero());
    }

    #[test]
    fn divrem_reconstructs() {
        let f16 = Field::new(4).unwrap();
        let a = Poly::from_bits(f16, &[1, 2, 3, 4, 5, 6, 7]).unwrap();
        let b = Poly::from_bits(f16, &[9, 0, 11]).unwrap();
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
        assert!(a.divrem(&Poly::zero(f16)).is_err());
    }

    #[test]
    fn factorisation_over_f16_recombines() {
        let f16 = Field::new(4).unwrap();
        let p = Poly::from_bits(f16, &[5, 1, 0, 3, 9, 1, 0, 0, 2, 1]).unwrap();
        let f = p.factor().unwrap();
        let mut prod = Poly::constant(p.lead().unwrap());
        for (q, m) in &f {
            assert!(q.is_irreducible());
            prod = &prod * &q.pow(*m as u64);
        }
        assert_eq!(prod, p);
    }

    #[test]
    fn x_q_minus_x_splits_completely() {
        let f8 = Field::new(3).unwrap();
        let p = &Poly::monomial(f8.one(), 8) - &Poly::x(f8);
        let roots = p.roots().unwrap();
        assert_eq!(roots.len(), 8);
        assert!(roots.iter().all(|&(_, m)| m == 1));
    }
}
