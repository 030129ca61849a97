//! Rational vector fields δ = r·∂x on catalog curves and their p-closure type.
//!
//! Every field is stored as a scalar r ∈ k(x) multiplying the unique lift of
//! ∂x to the function field of the curve, so δ(x) = r throughout.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Divisor, Fe, Field, Poly, RationalFunction};
use crate::curves::{CurveModel, CurvePlace};
use crate::error::{Error, Result};

/// δ^[2] = f·δ; f = 0 is additive, f = 1 multiplicative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PClosure {
    Additive,
    Multiplicative,
    General(RationalFunction),
}

impl PClosure {
    pub fn from_eigenfunction(f: RationalFunction) -> PClosure {
        if f.is_zero() {
            PClosure::Additive
        } else if f.is_one() {
            PClosure::Multiplicative
        } else {
            PClosure::General(f)
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PClosure::Additive => "additive",
            PClosure::Multiplicative => "multiplicative",
            PClosure::General(_) => "general",
        }
    }
}

impl fmt::Display for PClosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PClosure::General(e) => write!(f, "general (eigenfunction {e})"),
            other => write!(f, "{}", other.name()),
        }
    }
}

impl Serialize for PClosure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            kind: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            eigenfunction: Option<String>,
        }
        let eigenfunction = match self {
            PClosure::General(e) => Some(e.to_string()),
            _ => None,
        };
        Repr { kind: self.name(), eigenfunction }.serialize(s)
    }
}

/// Named constructors. Field elements must lie in the curve's field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CatalogField {
    /// (x⁻⁴ + x⁻²)∂x on P¹.
    Delta1,
    /// (x⁻² + x⁴)∂x on P¹.
    Delta2,
    /// Π (x − aᵢ)²(x − bᵢ)⁻² ∂x on P¹, all points distinct.
    DeltaPrime { a: Vec<Fe>, b: Vec<Fe> },
    /// (a + bx)·((1 + αx)∂x + (αy + x²)∂y) on the Deuring curve.
    DeltaElliptic { a: Fe, b: Fe },
    /// ∂x on an Artin–Schreier curve.
    AsDdx,
    /// φ*(Π (x − aᵢ)⁻² ∂x) for the cover φ = x.
    PullbackInverseSquares { points: Vec<Fe> },
    /// (num/den)·∂x on any catalog curve.
    Scaled { num: Poly, den: Poly },
}

#[derive(Clone, Debug)]
pub struct CurveVectorField {
    curve: CurveModel,
    scalar: RationalFunction,
    elliptic_ab: Option<(Fe, Fe)>,
    label: String,
    divisor: Divisor<CurvePlace>,
    pclass: PClosure,
}

/// Divisor of r·∂x: the pulled-back divisor of r plus that of ∂x.
pub fn divisor_of_vf(curve: &CurveModel, scalar: &RationalFunction) -> Result<Divisor<CurvePlace>> {
    Ok(curve.pullback(&scalar.divisor()?).plus(&curve.distinguished_lift_divisor()))
}

/// δ = r·∂x has δ^[2](x) = r·r′, so the eigenfunction is r′.
pub fn p_closed_classify(scalar: &RationalFunction) -> PClosure {
    PClosure::from_eigenfunction(scalar.derivative())
}

fn distinct(points: &[Fe]) -> bool {
    let mut v = points.to_vec();
    v.sort();
    v.dedup();
    v.len() == points.len()
}

fn same_field(curve_field: Field, points: &[Fe]) -> Result<()> {
    match points.iter().find(|p| p.field() != curve_field) {
        Some(p) => Err(Error::FieldMismatch(format!("{p} is not in the curve's field {curve_field:?}"))),
        None => Ok(()),
    }
}

fn product_of_linear(field: Field, points: &[Fe]) -> Poly {
    points.iter().fold(Poly::one(field), |acc, p| &acc * &Poly::linear(*p))
}

impl CurveVectorField {
    pub fn new(curve: CurveModel, scalar: RationalFunction) -> Result<CurveVectorField> {
        CurveVectorField::build(curve, scalar, None, "scaled ddx".into())
    }

    fn build(
        curve: CurveModel,
        scalar: RationalFunction,
        elliptic_ab: Option<(Fe, Fe)>,
        label: String,
    ) -> Result<CurveVectorField> {
        curve.validate()?;
        if scalar.is_zero() {
            return Err(Error::InvalidVectorField("the zero vector field".into()));
        }
        if scalar.field() != curve.field() {
            return Err(Error::FieldMismatch("vector field and curve are over different fields".into()));
        }
        let divisor = divisor_of_vf(&curve, &scalar)?;
        debug_assert_eq!(divisor.degree(), 2 - 2 * curve.genus() as i64);
        let pclass = match (&curve, elliptic_ab) {
            (CurveModel::EllipticDeuring { alpha }, Some((a, b))) => {
                PClosure::from_eigenfunction(RationalFunction::constant(a * *alpha + b))
            }
            _ => p_closed_classify(&scalar),
        };
        Ok(CurveVectorField { curve, scalar, elliptic_ab, label, divisor, pclass })
    }

    pub fn from_catalog(curve: &CurveModel, entry: &CatalogField) -> Result<CurveVectorField> {
        let field = curve.field();
        let need_p1 = |name: &str| -> Result<()> {
            match curve {
                CurveModel::ProjectiveLine { .. } => Ok(()),
                _ => Err(Error::InvalidVectorField(format!("{name} is defined on P^1 only"))),
            }
        };
        match entry {
            CatalogField::Delta1 => {
                need_p1("delta1")?;
                let num = Poly::from_bits(field, &[1, 0, 1])?;
                let scalar = RationalFunction::new(num, Poly::monomial(field.one(), 4))?;
                CurveVectorField::build(curve.clone(), scalar, None, "delta1".into())
            }
            CatalogField::Delta2 => {
                need_p1("delta2")?;
                let num = Poly::from_bits(field, &[1, 0, 0, 0, 0, 0, 1])?;
                let scalar = RationalFunction::new(num, Poly::monomial(field.one(), 2))?;
                CurveVectorField::build(curve.clone(), scalar, None, "delta2".into())
            }
            CatalogField::DeltaPrime { a, b } => {
                need_p1("delta_prime")?;
                if a.len() != b.len() || a.is_empty() {
                    return Err(Error::InvalidVectorField("delta_prime needs n >= 1 zeros and n poles".into()));
                }
                let all: Vec<Fe> = a.iter().chain(b.iter()).copied().collect();
                same_field(field, &all)?;
                if !distinct(&all) {
                    return Err(Error::InvalidVectorField("delta_prime points must be pairwise distinct".into()));
                }
                let num = product_of_linear(field, a).pow(2);
                let den = product_of_linear(field, b).pow(2);
                let scalar = RationalFunction::new(num, den)?;
                CurveVectorField::build(curve.clone(), scalar, None, format!("delta_prime(n={})", a.len()))
            }
            CatalogField::DeltaElliptic { a, b } => {
                let CurveModel::EllipticDeuring { alpha } = curve else {
                    return Err(Error::InvalidVectorField("delta_elliptic needs a Deuring curve".into()));
                };
                same_field(field, &[*a, *b])?;
                let lin = |c0: Fe, c1: Fe| Poly::new(field, vec![c0, c1]);
                let num = &lin(*a, *b) * &lin(field.one(), *alpha);
                if num.is_zero() {
                    return Err(Error::InvalidVectorField("a = b = 0 gives the zero field".into()));
                }
                let scalar = RationalFunction::from_poly(num);
                CurveVectorField::build(curve.clone(), scalar, Some((*a, *b)), "delta_elliptic".into())
            }
            CatalogField::AsDdx => {
                let CurveModel::ArtinSchreier { .. } = curve else {
                    return Err(Error::InvalidVectorField("as_ddx needs an Artin-Schreier curve".into()));
                };
                CurveVectorField::build(curve.clone(), RationalFunction::one(field), None, "as_ddx".into())
            }
            CatalogField::PullbackInverseSquares { points } => {
                same_field(field, points)?;
                if !distinct(points) {
                    return Err(Error::InvalidVectorField("pullback points must be distinct".into()));
                }
                let den = product_of_linear(field, points).pow(2);
                let scalar = RationalFunction::new(Poly::one(field), den)?;
                let label = format!("pullback_inverse_squares(m={})", points.len());
                CurveVectorField::build(curve.clone(), scalar, None, label)
            }
            CatalogField::Scaled { num, den } => {
                let scalar = RationalFunction::new(num.clone(), den.clone())?;
                CurveVectorField::build(curve.clone(), scalar, None, "scaled ddx".into())
            }
        }
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn scalar(&self) -> &RationalFunction {
        &self.scalar
    }

    pub fn elliptic_ab(&self) -> Option<(Fe, Fe)> {
        self.elliptic_ab
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn divisor(&self) -> &Divisor<CurvePlace> {
        &self.divisor
    }

    pub fn pclass(&self) -> &PClosure {
        &self.pclass
    }

    /// Degree of the pole divisor.
    pub fn pole_degree(&self) -> i64 {
        self.divisor.poles().degree()
    }

    /// Degree of the zero divisor.
    pub fn zero_degree(&self) -> i64 {
        self.divisor.zeros().degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PlaceP1;

    fn p1(field: Field) -> CurveModel {
        CurveModel::ProjectiveLine { field }
    }

    fn at(c: Fe, e: u8) -> CurvePlace {
        CurvePlace { base: PlaceP1::at(c), branch: 0, e }
    }

    fn inf(e: u8) -> CurvePlace {
        CurvePlace { base: PlaceP1::Infinity, branch: 0, e }
    }

    #[test]
    fn delta1_divisor_and_type() {
        let f2 = Field::f2();
        let v = CurveVectorField::from_catalog(&p1(f2), &CatalogField::Delta1).unwrap();
        let d = v.divisor();
        assert_eq!(d.get(&at(f2.zero(), 1)), -4);
        assert_eq!(d.get(&at(f2.one(), 1)), 2);
        assert_eq!(d.get(&inf(1)), 4);
        assert_eq!(d.len(), 3);
        assert_eq!(v.pclass(), &PClosure::Additive);
        assert_eq!(v.pole_degree(), 4);
    }

    #[test]
    fn delta2_divisor() {
        let f2 = Field::f2();
        let v = CurveVectorField::from_catalog(&p1(f2), &CatalogField::Delta2).unwrap();
        let d = v.divisor();
        assert_eq!(d.get(&at(f2.zero(), 1)), -2);
        assert_eq!(d.get(&inf(1)), -2);
        assert_eq!(d.get(&at(f2.one(), 1)), 2);
        let w = CurvePlace { base: PlaceP1::closed(Poly::from_bits(f2, &[1, 1, 1]).unwrap()).unwrap(), branch: 0, e: 1 };
        assert_eq!(d.get(&w), 2);
        assert_eq!(v.pclass(), &PClosure::Additive);
    }

    #[test]
    fn delta_prime_single_pair() {
        let f4 = Field::new(2).unwrap();
        let (a, b) = (f4.one(), f4.generator());
        let v = CurveVectorField::from_catalog(&p1(f4), &CatalogField::DeltaPrime { a: vec![a], b: vec![b] })
            .unwrap();
        let d = v.divisor();
        assert_eq!(d.get(&at(a, 1)), 2);
        assert_eq!(d.get(&inf(1)), 2);
        assert_eq!(d.get(&at(b, 1)), -2);
        assert_eq!(d.len(), 3);
        let bad = CatalogField::DeltaPrime { a: vec![a], b: vec![a] };
        assert!(CurveVectorField::from_catalog(&p1(f4), &bad).is_err());
    }

    #[test]
    fn elliptic_catalog_field() {
        let f8 = Field::new(3).unwrap();
        let alpha = f8.generator();
        let e = CurveModel::EllipticDeuring { alpha };
        let v = CurveVectorField::from_catalog(&e, &CatalogField::DeltaElliptic { a: f8.one(), b: alpha }).unwrap();
        assert_eq!(v.pclass(), &PClosure::Additive);
        let d = v.divisor();
        assert_eq!(d.len(), 2);
        assert_eq!(d.get(&CurvePlace { base: PlaceP1::at(alpha.inv().unwrap()), branch: 0, e: 2 }), 2);
        assert_eq!(d.get(&inf(2)), -2);

        // a·α + b = 1
        let b = alpha + f8.one();
        let m = CurveVectorField::from_catalog(&e, &CatalogField::DeltaElliptic { a: f8.one(), b }).unwrap();
        assert_eq!(m.pclass(), &PClosure::Multiplicative);
    }

    #[test]
    fn elliptic_closed_form_matches_function_field() {
        let f8 = Field::new(3).unwrap();
        for alpha in f8.elements().filter(|a| !a.pow(3).is_one()) {
            let e = CurveModel::EllipticDeuring { alpha };
            for a in f8.elements() {
                for b in f8.elements() {
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    let v = CurveVectorField::from_catalog(&e, &CatalogField::DeltaElliptic { a, b }).unwrap();
                    assert_eq!(v.pclass(), &p_closed_classify(v.scalar()));
                }
            }
        }
    }

    #[test]
    fn artin_schreier_ddx() {
        let f2 = Field::f2();
        let c = CurveModel::ArtinSchreier { field: f2, h: 4 };
        let v = CurveVectorField::from_catalog(&c, &CatalogField::AsDdx).unwrap();
        assert_eq!(v.divisor().get(&inf(2)), -4);
        assert_eq!(v.divisor().len(), 1);
        assert_eq!(v.pole_degree(), 4);
        assert_eq!(v.pclass(), &PClosure::Additive);
    }

    #[test]
    fn pullback_field_has_only_double_poles() {
        // AS curve of genus q = 5 and m = 2 points
        let f4 = Field::new(2).unwrap();
        let c = CurveModel::ArtinSchreier { field: f4, h: 6 };
        let pts = vec![f4.one(), f4.generator()];
        let v = CurveVectorField::from_catalog(&c, &CatalogField::PullbackInverseSquares { points: pts }).unwrap();
        assert_eq!(v.divisor().len(), 4);
        assert!(v.divisor().iter().all(|(_, m)| m == -2));
        assert_eq!(v.pclass(), &PClosure::Additive);
    }

    #[test]
    fn general_and_multiplicative_scalars() {
        let f2 = Field::f2();
        let x3 = RationalFunction::from_poly(Poly::monomial(f2.one(), 3));
        let v = CurveVectorField::new(p1(f2), x3).unwrap();
        match v.pclass() {
            PClosure::General(f) => assert_eq!(f.to_string(), "x^2"),
            other => panic!("expected general, got {other}"),
        }
        let r = RationalFunction::from_poly(Poly::from_bits(f2, &[0, 1, 1]).unwrap());
        assert_eq!(p_closed_classify(&r), PClosure::Multiplicative);
        assert!(CurveVectorField::new(p1(f2), RationalFunction::from_poly(Poly::zero(f2))).is_err());
    }
}
