//! Binary extension fields F_{2^k} with an explicit modulus.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::gf2;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Largest supported extension degree; keeps products inside `u64` before reduction.
pub const MAX_DEGREE: u32 = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    k: u32,
    modulus: u64,
}

impl Field {
    /// F_{2^k} defined by the lowest irreducible modulus of degree k.
    pub fn new(k: u32) -> Result<Field> {
        if !(1..=MAX_DEGREE).contains(&k) {
            return Err(Error::InvalidField(format!("degree {k} outside 1..={MAX_DEGREE}")));
        }
        Ok(Field { k, modulus: gf2::lowest_irreducible(k) })
    }

    pub fn with_modulus(modulus: u64) -> Result<Field> {
        let k = gf2::degree(modulus).unwrap_or(0);
        if !(1..=MAX_DEGREE).contains(&k) {
            return Err(Error::InvalidField(format!("modulus degree {k} outside 1..={MAX_DEGREE}")));
        }
        if !gf2::is_irreducible(modulus) {
            return Err(Error::InvalidField(format!("modulus {modulus:#b} is reducible")));
        }
        Ok(Field { k, modulus })
    }

    pub fn f2() -> Field {
        Field { k: 1, modulus: 0b10 }
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1u64 << self.k
    }

    pub fn elem(&self, bits: u64) -> Result<Fe> {
        if bits >> self.k != 0 {
            return Err(Error::NotInField(format!("{bits:#b} has more than {} bits", self.k)));
        }
        Ok(Fe { field: *self, bits })
    }

    pub fn zero(&self) -> Fe {
        Fe { field: *self, bits: 0 }
    }

    pub fn one(&self) -> Fe {
        Fe { field: *self, bits: 1 }
    }

    /// The class of x modulo the defining polynomial.
    pub fn generator(&self) -> Fe {
        Fe { field: *self, bits: gf2::rem128(0b10, self.modulus) }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order()).map(move |bits| Fe { field: *self, bits })
    }

    /// F_{2^{kd}} with its own lowest modulus.
    pub fn extension(&self, d: u32) -> Result<Field> {
        Field::new(self.k * d)
    }

    pub fn is_subfield_of(&self, other: &Field) -> bool {
        other.k % self.k == 0
    }

    /// Embedding sending the generator to the smallest root of our modulus in `target`.
    pub fn embed_into(&self, target: Field) -> Result<Embedding> {
        if *self == target {
            return Ok(Embedding { source: *self, target, gen_image: target.generator() });
        }
        if !self.is_subfield_of(&target) {
            return Err(Error::FieldMismatch(format!(
                "F_2^{} does not embed in F_2^{}",
                self.k, target.k
            )));
        }
        let coeffs = (0..=self.k)
            .map(|i| target.elem((self.modulus >> i) & 1))
            .collect::<Result<Vec<_>>>()?;
        let m = Poly::new(target, coeffs);
        let roots = m.roots()?;
        let gen_image = roots
            .into_iter()
            .map(|(r, _)| r)
            .min()
            .ok_or_else(|| Error::FieldMismatch("modulus has no root in target".into()))?;
        Ok(Embedding { source: *self, target, gen_image })
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_2^{}[{:#b}]", self.k, self.modulus)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    gen_image: Fe,
}

impl Embedding {
    pub fn source(&self) -> Field {
        self.source
    }

    pub fn target(&self) -> Field {
        self.target
    }

    pub fn apply(&self, a: Fe) -> Fe {
        assert_eq!(a.field, self.source, "embedding applied to foreign element");
        if self.source == self.target {
            return a;
        }
        let mut acc = self.target.zero();
        let mut pw = self.target.one();
        for i in 0..self.source.k {
            if (a.bits >> i) & 1 == 1 {
                acc = acc + pw;
            }
            pw = pw * self.gen_image;
        }
        acc
    }
}

/// An element of F_{2^k}.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fe {
    field: Field,
    bits: u64,
}

impl Fe {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    fn check(&self, other: &Fe) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn try_add(self, other: Fe) -> Result<Fe> {
        self.check(&other)?;
        Ok(Fe { field: self.field, bits: self.bits ^ other.bits })
    }

    pub fn try_mul(self, other: Fe) -> Result<Fe> {
        self.check(&other)?;
        Ok(Fe { field: self.field, bits: gf2::mulmod(self.bits, other.bits, self.field.modulus) })
    }

    pub fn pow(self, mut e: u64) -> Fe {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn square(self) -> Fe {
        self * self
    }

    /// a^(2^k - 2).
    pub fn inv(self) -> Result<Fe> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    /// The unique square root (Frobenius is bijective).
    pub fn sqrt(self) -> Fe {
        let mut r = self;
        for _ in 1..self.field.k {
            r = r.square();
        }
        r
    }

    /// Absolute trace to F₂, as 0 or 1.
    pub fn trace(self) -> u64 {
        let mut t = self;
        let mut acc = self;
        for _ in 1..self.field.k {
            t = t.square();
            acc = acc + t;
        }
        debug_assert!(acc.bits <= 1);
        acc.bits
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fe {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field, self.bits).cmp(&(other.field, other.bits))
    }
}

impl Add for Fe {
    type Output = Fe;
    fn add(self, rhs: Fe) -> Fe {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for Fe {
    type Output = Fe;
    fn sub(self, rhs: Fe) -> Fe {
        self + rhs
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        self
    }
}

impl Mul for Fe {
    type Output = Fe;
    fn mul(self, rhs: Fe) -> Fe {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Div for Fe {
    type Output = Fe;
    fn div(self, rhs: Fe) -> Fe {
        self * rhs.inv().expect("division by zero")
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for i in (0..self.field.k).rev() {
            if (self.bits >> i) & 1 == 1 {
                terms.push(match i {
                    0 => "1".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{i}"),
                });
            }
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@F{}", self.field.order())
    }
}

/// Wire format: `{"k", "modulus_bits", "coeff_bits"}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeJson {
    pub k: u32,
    pub modulus_bits: u64,
    pub coeff_bits: u64,
}

impl From<Fe> for FeJson {
    fn from(a: Fe) -> Self {
        FeJson { k: a.field.k, modulus_bits: a.field.modulus, coeff_bits: a.bits }
    }
}

impl TryFrom<FeJson> for Fe {
    type Error = Error;
    fn try_from(j: FeJson) -> Result<Fe> {
        let field = Field::with_modulus(j.modulus_bits)?;
        if field.k != j.k {
            return Err(Error::InvalidField(format!("k={} but modulus has degree {}", j.k, field.k)));
        }
        field.elem(j.coeff_bits)
    }
}

/// The field-level operation exposed at the API boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
}

pub fn field_arith(a: Fe, b: Fe, op: FieldOp) -> Result<Fe> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Inv => {
            a.check(&b)?;
            a.inv()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_addition() {
        let f = Field::f2();
        assert_eq!(f.one() + f.one(), f.zero());
    }

    #[test]
    fn f4_relations() {
        let f4 = Field::new(2).unwrap();
        let g = f4.generator();
        assert_eq!(g * g, g + f4.one());
        // exhaustive: the unique b with g*b = 1
        let inv = f4.elements().find(|&b| (g * b).is_one()).unwrap();
        assert_eq!(inv, g + f4.one());
        assert_eq!(g.inv().unwrap(), inv);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = Field::new(3).unwrap();
        assert!(matches!(f.zero().inv(), Err(Error::ZeroInverse)));
        assert!(field_arith(f.zero(), f.one(), FieldOp::Inv).is_err());
    }

    #[test]
    fn mismatched_fields_error() {
        let a = Field::new(2).unwrap().one();
        let b = Field::new(3).unwrap().one();
        assert!(matches!(a.try_add(b), Err(Error::FieldMismatch(_))));
        assert!(field_arith(a, b, FieldOp::Mul).is_err());
    }

    #[test]
    fn every_nonzero_element_inverts() {
        let f = Field::new(5).unwrap();
        for a in f.elements().skip(1) {
            assert!((a * a.inv().unwrap()).is_one());
            assert_eq!(a.sqrt().square(), a);
        }
    }

    #[test]
    fn trace_is_balanced() {
        let f = Field::new(4).unwrap();
        let ones = f.elements().filter(|a| a.trace() == 1).count();
        assert_eq!(ones, 8);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f4 = Field::new(2).unwrap();
        let f16 = Field::new(4).unwrap();
        let e = f4.embed_into(f16).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.apply(a * b), e.apply(a) * e.apply(b));
                assert_eq!(e.apply(a + b), e.apply(a) + e.apply(b));
            }
        }
        assert!(Field::new(3).unwrap().embed_into(f16).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = Field::new(3).unwrap();
        let a = f.elem(0b110).unwrap();
        let j = FeJson::from(a);
        assert_eq!(j, FeJson { k: 3, modulus_bits: 0b1011, coeff_bits: 0b110 });
        assert_eq!(Fe::try_from(j).unwrap(), a);
        assert!(Fe::try_from(FeJson { k: 2, modulus_bits: 0b101, coeff_bits: 1 }).is_err());
    }
}
