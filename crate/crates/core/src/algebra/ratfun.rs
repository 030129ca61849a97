use std::fmt;
use std::ops::{Add, Mul};

use super::divisor::{Divisor, PlaceP1};
use super::field::{Fe, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A rational function num/den in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if num.field() != den.field() {
            return Err(Error::FieldMismatch("numerator and denominator fields differ".into()));
        }
        if num.is_zero() {
            return Ok(RationalFunction { den: Poly::one(num.field()), num });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let l = den.lead().unwrap().inv()?;
        Ok(RationalFunction { num: num.scale(l), den: den.scale(l) })
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        let field = p.field();
        RationalFunction { num: p, den: Poly::one(field) }
    }

    pub fn constant(c: Fe) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn one(field: Field) -> RationalFunction {
        RationalFunction::from_poly(Poly::one(field))
    }

    pub fn x(field: Field) -> RationalFunction {
        RationalFunction::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, e: i64) -> Result<RationalFunction> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        RationalFunction::new(base.num.pow(n), base.den.pow(n))
    }

    /// Formal derivative d/dx.
    pub fn derivative(&self) -> RationalFunction {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::new(top, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Order of vanishing at a place of P¹ (negative for poles).
    pub fn valuation(&self, place: &PlaceP1) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(match place {
            PlaceP1::Infinity => self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64,
            PlaceP1::Finite(m) => {
                if m.field() != self.field() {
                    return Err(Error::FieldMismatch("place defined over another field".into()));
                }
                self.num.multiplicity_of(m) as i64 - self.den.multiplicity_of(m) as i64
            }
        })
    }

    /// Full divisor over closed points of the base field.
    pub fn divisor(&self) -> Result<Divisor<PlaceP1>> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let mut d = Divisor::new();
        for (p, m) in self.num.factor()? {
            d.add_point(PlaceP1::Finite(p), m as i64);
        }
        for (p, m) in self.den.factor()? {
            d.add_point(PlaceP1::Finite(p), -(m as i64));
        }
        d.add_point(PlaceP1::Infinity, self.valuation(&PlaceP1::Infinity)?);
        Ok(d)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::f2()
    }

    /// x^-4 + x^-2 = (1 + x^2) / x^4
    fn delta1_scalar() -> RationalFunction {
        RationalFunction::new(Poly::from_bits(f2(), &[1, 0, 1]).unwrap(), Poly::monomial(f2().one(), 4))
            .unwrap()
    }

    #[test]
    fn valuations_of_small_functions() {
        let zero = PlaceP1::at(f2().zero());
        let one = PlaceP1::at(f2().one());
        assert_eq!(delta1_scalar().valuation(&zero).unwrap(), -4);
        let r = RationalFunction::from_poly(Poly::from_bits(f2(), &[1, 0, 1]).unwrap());
        assert_eq!(r.valuation(&one).unwrap(), 2);
        assert_eq!(RationalFunction::x(f2()).valuation(&PlaceP1::Infinity).unwrap(), -1);
    }

    #[test]
    fn zero_function_has_no_valuation() {
        let z = RationalFunction::from_poly(Poly::zero(f2()));
        assert!(matches!(z.valuation(&PlaceP1::Infinity), Err(Error::ZeroFunction)));
        assert!(z.divisor().is_err());
        assert!(z.inv().is_err());
    }

    #[test]
    fn divisors_of_catalog_functions() {
        let x = RationalFunction::x(f2());
        let d = x.divisor().unwrap();
        assert_eq!(d.get(&PlaceP1::at(f2().zero())), 1);
        assert_eq!(d.get(&PlaceP1::Infinity), -1);
        assert_eq!(d.len(), 2);

        let d1 = delta1_scalar().divisor().unwrap();
        assert_eq!(d1.get(&PlaceP1::at(f2().zero())), -4);
        assert_eq!(d1.get(&PlaceP1::at(f2().one())), 2);
        assert_eq!(d1.get(&PlaceP1::Infinity), 2);
        assert_eq!(d1.degree(), 0);

        assert!(RationalFunction::one(f2()).divisor().unwrap().is_empty());
    }

    #[test]
    fn derivative_rules() {
        // r = x^2 + x: r' = 1
        let r = RationalFunction::from_poly(Poly::from_bits(f2(), &[0, 1, 1]).unwrap());
        assert!(r.derivative().is_one());
        // delta1's scalar is a square, so its derivative vanishes
        assert!(delta1_scalar().derivative().is_zero());
    }
}
