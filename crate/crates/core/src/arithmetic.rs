//! Artin invariant bounds, the Artin–Tate right-hand side, and P₂ assembled
//! from the zeta numerators of the two curves.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::IntPoly;
use crate::curves::CurveModel;
use crate::error::{Error, Result};
use crate::surface::{InvariantReport, SurfaceData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinData {
    /// χ − 1 + b₁/2.
    pub alpha: i64,
    pub sigma_lo: i64,
    pub sigma_hi: i64,
    /// σ ≥ p_g was applied (exact p_g, torsion-free crystalline cohomology).
    pub lower_bound_applied: bool,
    /// ρ = b₂ and disc NS = −2^(2σ); licensed for uniruled surfaces.
    pub supersingular: bool,
    pub discriminant: String,
}

impl fmt::Display for ArtinData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Artin invariant: {} <= sigma <= {}, disc NS = {}", self.sigma_lo, self.sigma_hi, self.discriminant)?;
        if !self.supersingular {
            write!(f, " (surface not uniruled; rho = b2 not asserted)")?;
        }
        Ok(())
    }
}

/// σ bounds from a complete report: σ ≤ b₂/2 always, σ ≥ p_g under torsion-freeness.
pub fn artin_invariant_bounds(report: &InvariantReport) -> ArtinData {
    let b1 = report.b1_value();
    let chi = report.chi_value().unwrap_or(0);
    let b2 = report.b2_value().unwrap_or(0);
    let preds = report.predicates.as_ref();
    let torsion_free = preds.and_then(|p| p.crystalline_torsion_free) == Some(true);
    let pg = report.h02.as_ref().and_then(|h| h.value());
    let (sigma_lo, lower_bound_applied) = match pg {
        Some(pg) if torsion_free => (pg, true),
        _ => (0, false),
    };
    ArtinData {
        alpha: chi - 1 + b1 / 2,
        sigma_lo,
        sigma_hi: b2 / 2,
        lower_bound_applied,
        supersingular: preds.is_some_and(|p| p.uniruled),
        discriminant: "-2^(2 sigma)".into(),
    }
}

/// disc NS(X)·|Br(X)| = q^(α − g(C)g(F))·|NS(X)_tors| with q = 2^k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinTate {
    pub k: u32,
    pub alpha: i64,
    pub exponent: i64,
    /// Power of 2 on the right-hand side; Br and NS_tors stay symbolic.
    pub two_power: i64,
}

impl fmt::Display for ArtinTate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "disc NS * |Br| = 2^{} * |NS_tors|", self.two_power)
    }
}

pub fn artin_tate_product(d: &SurfaceData, report: &InvariantReport, k: u32) -> Result<ArtinTate> {
    let b1 = report.b1_value();
    if b1 % 2 != 0 {
        return Err(Error::InvalidModel(format!("odd first Betti number {b1}")));
    }
    let chi = report
        .chi_value()
        .ok_or_else(|| Error::InvalidModel("Artin-Tate needs chi of the resolution".into()))?;
    let alpha = chi - 1 + b1 / 2;
    let exponent = alpha - d.genus_c() * d.genus_f();
    Ok(ArtinTate { k, alpha, exponent, two_power: k as i64 * exponent })
}

/// P₁ over F_{q^m} from P₁ over F_q: the reciprocal roots are raised to the m-th power.
pub fn base_change(p1: &IntPoly, m: u32) -> IntPoly {
    let deg = p1.degree();
    if m == 1 || deg == 0 {
        return p1.clone();
    }
    let sums = p1.power_sums(deg * m as usize);
    let raised: Vec<BigInt> = (1..=deg).map(|n| sums[n * m as usize - 1].clone()).collect();
    IntPoly::from_power_sums(&raised, deg)
}

/// Π (1 − αᵢβⱼ t) over the reciprocal roots of two polynomials.
pub fn tensor(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let deg = p.degree() * q.degree();
    if deg == 0 {
        return IntPoly::one();
    }
    let (sp, sq) = (p.power_sums(deg), q.power_sums(deg));
    let sums: Vec<BigInt> = sp.iter().zip(&sq).map(|(a, b)| a * b).collect();
    IntPoly::from_power_sums(&sums, deg)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaData {
    /// q = 2^k.
    pub k: u32,
    pub p1_c: IntPoly,
    pub p1_f: IntPoly,
    /// P₂ of C × F.
    pub p2_product: IntPoly,
    pub exceptional_curves: u64,
    /// P₂ of the blow-up, equal to P₂ of X.
    pub p2: IntPoly,
    /// Largest | |root| − q | over the reciprocal roots of `p2_product`; the
    /// blow-up factor (1 − qt)^exceptional_curves has its roots exactly at q.
    pub max_root_deviation: f64,
}

/// P₂(C × F) over F_{2^k}, k a multiple of the curves' field degree.
pub fn p2_kunneth(c: &CurveModel, f: &CurveModel, k: u32, budget: u32) -> Result<(IntPoly, IntPoly, IntPoly)> {
    let k0 = c.field().degree();
    if f.field() != c.field() {
        return Err(Error::FieldMismatch("curves over different fields".into()));
    }
    if k % k0 != 0 {
        return Err(Error::NotInField(format!("F_2^{k} does not contain F_2^{k0}")));
    }
    let m = k / k0;
    let pc = base_change(&c.zeta_numerator(budget)?, m);
    let pf = base_change(&f.zeta_numerator(budget)?, m);
    let q = 1i128 << k;
    let p2 = IntPoly::one_minus(q).pow(2).mul(&tensor(&pc, &pf));
    Ok((pc, pf, p2))
}

/// P₂ for the analyzed surface: each exceptional curve of the resolution adds a factor (1 − qt).
pub fn zeta(d: &SurfaceData, report: &InvariantReport, k: u32, budget: u32) -> Result<ZetaData> {
    let (p1_c, p1_f, p2_product) = p2_kunneth(d.curve_c(), d.curve_f(), k, budget)?;
    // one exceptional curve per vertex of each minimal resolution graph
    let mut exceptional_curves = 0u64;
    for p in &report.inventory {
        let g = p.kind.graph().ok_or_else(|| {
            Error::InvalidModel(format!("no resolution graph for the point ({}, {})", p.on_c, p.on_f))
        })?;
        exceptional_curves += g.len() as u64 * p.geometric_count as u64;
    }
    let q = 1i128 << k;
    let p2 = p2_product.mul(&IntPoly::one_minus(q).pow(exceptional_curves as u32));
    let max_root_deviation =
        p2_product.reciprocal_root_moduli().iter().map(|r| (r - q as f64).abs()).fold(0.0, f64::max);
    Ok(ZetaData { k, p1_c, p1_f, p2_product, exceptional_curves, p2, max_root_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn tensor_of_supersingular_elliptic_curves() {
        // 1 + 2t² has reciprocal roots ±i√2
        let p = IntPoly::new(vec![1, 0, 2]);
        let t = tensor(&p, &p);
        assert_eq!(t.degree(), 4);
        // products: {2, 2, -2, -2}
        assert_eq!(t, IntPoly::one_minus(2).pow(2).mul(&IntPoly::new(vec![1, 2]).pow(2)));
    }

    #[test]
    fn base_change_squares_roots() {
        let p = IntPoly::new(vec![1, 0, 2]);
        assert_eq!(base_change(&p, 2), IntPoly::new(vec![1, 4, 4]));
    }

    #[test]
    fn p2_of_a_rational_factor() {
        let f2 = Field::f2();
        let c = CurveModel::ArtinSchreier { field: f2, h: 3 };
        let f = CurveModel::ProjectiveLine { field: f2 };
        let (_, _, p2) = p2_kunneth(&c, &f, 1, 24).unwrap();
        assert_eq!(p2, IntPoly::new(vec![1, -4, 4]));
        assert!(p2_kunneth(&c, &CurveModel::ProjectiveLine { field: Field::new(2).unwrap() }, 1, 24).is_err());
    }

    #[test]
    fn product_roots_have_modulus_q() {
        let f2 = Field::f2();
        let e = CurveModel::EllipticDeuring { alpha: f2.zero() };
        let (pc, _, p2) = p2_kunneth(&e, &e, 1, 24).unwrap();
        assert_eq!(pc, IntPoly::new(vec![1, 0, 2]));
        assert_eq!(p2.degree(), 6);
        assert!(p2.reciprocal_root_moduli().iter().all(|r| (r - 2.0).abs() < 1e-9));
    }
}
