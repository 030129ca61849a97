//! Quotients X′ = (C × F)/(δ_C + δ_F), their singularities, and the invariants
//! of the minimal resolution X.

mod numbers;
mod report;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Field, Place};
use crate::curves::{CurveModel, CurvePlace};
use crate::error::{Error, Result};
use crate::localres::{classify_pair, resolve_pair, Configuration, SingularityType};
use crate::vectorfields::{CurveVectorField, PClosure};

pub use numbers::{curve_cohomology, kunneth, Bounds, CurveCohomology, HodgeValue, NumericalClass, Range};
pub use report::{analyze, dual_euler_characteristic, DualChi, CuspProfile, FiberGenus, InvariantReport, Predicates};

/// The data (C, F, δ_C + δ_F).
#[derive(Clone, Debug)]
pub struct SurfaceData {
    vc: CurveVectorField,
    vf: CurveVectorField,
}

impl SurfaceData {
    /// Checks the shared base field and the closure condition.
    pub fn new(vc: CurveVectorField, vf: CurveVectorField) -> Result<SurfaceData> {
        let d = SurfaceData { vc, vf };
        d.validate()?;
        Ok(d)
    }

    pub fn curve_c(&self) -> &CurveModel {
        self.vc.curve()
    }

    pub fn curve_f(&self) -> &CurveModel {
        self.vf.curve()
    }

    pub fn field_c(&self) -> &CurveVectorField {
        &self.vc
    }

    pub fn field_f(&self) -> &CurveVectorField {
        &self.vf
    }

    pub fn base_field(&self) -> Field {
        self.curve_c().field()
    }

    pub fn genus_c(&self) -> i64 {
        self.curve_c().genus() as i64
    }

    pub fn genus_f(&self) -> i64 {
        self.curve_f().genus() as i64
    }

    /// d_C, the degree of the pole divisor of δ_C.
    pub fn d_c(&self) -> i64 {
        self.vc.pole_degree()
    }

    pub fn d_f(&self) -> i64 {
        self.vf.pole_degree()
    }

    /// The common closure type. [δ_C, δ_F] = 0, so (δ_C + δ_F)^[2] = δ_C^[2] + δ_F^[2]
    /// and the sum is p-closed of the same type exactly when the summands agree.
    pub fn closure(&self) -> &PClosure {
        self.vc.pclass()
    }

    pub fn validate(&self) -> Result<()> {
        if self.curve_c().field() != self.curve_f().field() {
            return Err(Error::FieldMismatch("C and F must be defined over the same field".into()));
        }
        for (name, v) in [("C", &self.vc), ("F", &self.vf)] {
            if let PClosure::General(e) = v.pclass() {
                return Err(Error::IncompatibleClosure(format!(
                    "the field on {name} is not additive or multiplicative: eigenfunction {e}"
                )));
            }
            if v.pole_degree() % 2 != 0 {
                return Err(Error::InvalidVectorField(format!("pole degree on {name} is odd")));
            }
        }
        if self.vc.pclass() != self.vf.pclass() {
            return Err(Error::IncompatibleClosure(format!(
                "field on C is {} but field on F is {}",
                self.vc.pclass(),
                self.vf.pclass()
            )));
        }
        Ok(())
    }
}

/// One closed point of C × F where both fields vanish or both have poles.
#[derive(Clone, Debug, Serialize)]
pub struct SingularPoint {
    pub on_c: String,
    pub on_f: String,
    pub configuration: Configuration,
    pub orders: (u32, u32),
    pub residue_degrees: (u32, u32),
    /// Number of geometric points r_C·r_F.
    pub geometric_count: u32,
    #[serde(rename = "type")]
    pub kind: SingularityType,
    /// Type found by blowing up the local model; `None` when unmatched or rejected.
    pub resolved_type: Option<SingularityType>,
    /// Point blow-ups the engine needed for the local model.
    pub blowups: Option<usize>,
}

impl SingularPoint {
    pub fn engine_agrees(&self) -> bool {
        self.resolved_type == Some(self.kind)
    }
}

fn support(v: &CurveVectorField, zeros: bool) -> Vec<(CurvePlace, u32)> {
    let part = if zeros { v.divisor().zeros() } else { v.divisor().poles() };
    part.iter().map(|(p, m)| (p.clone(), m as u32)).collect()
}

/// Common zeros and common poles of δ_C and δ_F, classified by their order pairs.
pub fn singular_points(d: &SurfaceData) -> Vec<SingularPoint> {
    type Outcome = (Option<SingularityType>, Option<usize>);
    let mut engine: BTreeMap<(Configuration, u32, u32), Outcome> = BTreeMap::new();
    let mut out = Vec::new();
    for (config, zeros) in [(Configuration::Zeros, true), (Configuration::Poles, false)] {
        for (p, a) in support(&d.vc, zeros) {
            for (q, b) in support(&d.vf, zeros) {
                let (resolved_type, blowups) = *engine.entry((config, a, b)).or_insert_with(|| {
                    match resolve_pair(config, a, b) {
                        Ok(r) => (r.kind, Some(r.blowups)),
                        Err(_) => (None, None),
                    }
                });
                let (rc, rf) = (p.residue_degree(), q.residue_degree());
                out.push(SingularPoint {
                    on_c: p.to_string(),
                    on_f: q.to_string(),
                    configuration: config,
                    orders: (a, b),
                    residue_degrees: (rc, rf),
                    geometric_count: rc * rf,
                    kind: classify_pair(a, b),
                    resolved_type,
                    blowups,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Poly, RationalFunction};
    use crate::vectorfields::CatalogField;

    fn p1(f: Field) -> CurveModel {
        CurveModel::ProjectiveLine { field: f }
    }

    #[test]
    fn closure_types_must_agree() {
        let f2 = Field::f2();
        let c = CurveModel::ArtinSchreier { field: f2, h: 4 };
        let vc = CurveVectorField::from_catalog(&c, &CatalogField::AsDdx).unwrap();
        let vf = CurveVectorField::from_catalog(&p1(f2), &CatalogField::Delta1).unwrap();
        assert!(SurfaceData::new(vc.clone(), vf.clone()).is_ok());

        // x² + x is multiplicative
        let mult = RationalFunction::from_poly(Poly::from_bits(f2, &[0, 1, 1]).unwrap());
        let vm = CurveVectorField::new(p1(f2), mult).unwrap();
        assert!(matches!(SurfaceData::new(vc.clone(), vm), Err(Error::IncompatibleClosure(_))));

        let cube = RationalFunction::from_poly(Poly::monomial(f2.one(), 3));
        let vg = CurveVectorField::new(p1(f2), cube).unwrap();
        match SurfaceData::new(vc, vg) {
            Err(Error::IncompatibleClosure(msg)) => assert!(msg.contains("x^2"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn artin_schreier_with_delta1_has_one_common_pole() {
        let f2 = Field::f2();
        for (h, orders, kind) in
            [(4, (4, 4), SingularityType::Elliptic19), (3, (2, 4), SingularityType::D8)]
        {
            let c = CurveModel::ArtinSchreier { field: f2, h };
            let vc = CurveVectorField::from_catalog(&c, &CatalogField::AsDdx).unwrap();
            let vf = CurveVectorField::from_catalog(&p1(f2), &CatalogField::Delta1).unwrap();
            let pts = singular_points(&SurfaceData::new(vc, vf).unwrap());
            assert_eq!(pts.len(), 1);
            assert_eq!(pts[0].orders, orders);
            assert_eq!(pts[0].configuration, Configuration::Poles);
            assert_eq!(pts[0].kind, kind);
        }
    }

    #[test]
    fn multiplicative_pairs_give_a1_points() {
        let f4 = Field::new(2).unwrap();
        let mult = RationalFunction::from_poly(Poly::from_bits(f4, &[0, 1, 1]).unwrap());
        let v = CurveVectorField::new(p1(f4), mult).unwrap();
        let pts = singular_points(&SurfaceData::new(v.clone(), v).unwrap());
        // zeros at 0 and 1, simple
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|p| p.kind == SingularityType::A1 && p.engine_agrees()));
    }
}
