//! The invariant report of the minimal resolution X → X′.

use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use super::numbers::{curve_cohomology, kunneth, Bounds, CurveCohomology, HodgeValue, NumericalClass, Range};
use super::{singular_points, SingularPoint, SurfaceData};
use crate::algebra::Place;
use crate::arithmetic::{artin_invariant_bounds, ArtinData};
use crate::error::{Error, Result};
use crate::localres::disjoint_minus_two;
use crate::vectorfields::{CurveVectorField, PClosure};

fn ratio<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// A pole of order m on one factor gives a cusp of arithmetic genus m/2 on
/// the fibres of the projection to the other factor.
#[derive(Clone, Debug, Serialize)]
pub struct CuspProfile {
    pub point: String,
    pub pole_order: u32,
    pub residue_degree: u32,
    pub genus_drop: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberGenus {
    /// Base of the fibration: "C" for X → C^(-1), "F" for X → F^(-1).
    pub base: &'static str,
    pub arithmetic_genus: HodgeValue,
    pub normalization_genus: i64,
    pub genus_change: i64,
    pub cusps: Vec<CuspProfile>,
}

fn fibration(base: &'static str, fibre_field: &CurveVectorField) -> FiberGenus {
    let g = fibre_field.curve().genus() as i64;
    let d = fibre_field.pole_degree();
    let cusps: Vec<CuspProfile> = fibre_field
        .divisor()
        .poles()
        .iter()
        .map(|(p, m)| CuspProfile {
            point: p.to_string(),
            pole_order: m as u32,
            residue_degree: p.residue_degree(),
            genus_drop: m / 2,
        })
        .collect();
    FiberGenus {
        base,
        arithmetic_genus: HodgeValue::exact(g + d / 2, "genus of the generic fibre: g + d/2"),
        normalization_genus: g,
        genus_change: d / 2,
        cusps,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Predicates {
    pub picard_reduced: Option<bool>,
    pub frolicher_degenerates: Option<bool>,
    pub crystalline_torsion_free: Option<bool>,
    pub slope_degenerates: Option<bool>,
    pub ordinary: Option<bool>,
    pub has_global_vector_fields: Option<bool>,
    pub uniruled: bool,
    pub bmy_violated: bool,
    #[serde(serialize_with = "ratio")]
    pub miyaoka_bound: Rational64,
    pub miyaoka_violated: bool,
    #[serde(serialize_with = "ratio")]
    pub sb_bound: Rational64,
    pub sb_exceeded: bool,
    pub disjoint_minus2: i64,
    pub hodge_index_cap: i64,
}

/// N^∨ = A ⊠ B on C × F with A on F and B on C.
#[derive(Clone, Debug, Serialize)]
pub struct DualLineBundle {
    pub chi: DualChi,
    pub class: String,
    pub on_f: CurveCohomology,
    pub on_c: CurveCohomology,
    /// h⁰, h¹, h² by Künneth.
    pub cohomology: [Range; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub curve_c: String,
    pub curve_f: String,
    pub field_c: String,
    pub field_f: String,
    pub base_field_degree: u32,
    pub genus_c: i64,
    pub genus_f: i64,
    pub d_c: i64,
    pub d_f: i64,
    pub closure: PClosure,
    pub inventory: Vec<SingularPoint>,
    /// False when some singularity is outside the classification table.
    pub complete: bool,
    pub k2_singular: HodgeValue,
    pub k2_resolved: Option<HodgeValue>,
    pub chi_product: HodgeValue,
    pub chi_singular: HodgeValue,
    pub chi: Option<HodgeValue>,
    pub c2: Option<HodgeValue>,
    pub b0: HodgeValue,
    pub b1: HodgeValue,
    pub b2: Option<HodgeValue>,
    pub b3: HodgeValue,
    pub b4: HodgeValue,
    pub h01: Option<HodgeValue>,
    pub h02: Option<HodgeValue>,
    pub h10: Option<HodgeValue>,
    /// Stronger lower bound for h10 claimed for the Artin–Schreier families, not certified here.
    pub h10_claimed_lower: Option<i64>,
    pub dual_bundle: DualLineBundle,
    pub fibrations: [FiberGenus; 2],
    pub predicates: Option<Predicates>,
    pub artin: Option<ArtinData>,
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn value(v: &Option<HodgeValue>) -> Option<i64> {
        v.as_ref().and_then(|h| h.value())
    }

    pub fn chi_value(&self) -> Option<i64> {
        Self::value(&self.chi)
    }

    pub fn k2_value(&self) -> Option<i64> {
        Self::value(&self.k2_resolved)
    }

    pub fn c2_value(&self) -> Option<i64> {
        Self::value(&self.c2)
    }

    pub fn b1_value(&self) -> i64 {
        self.b1.value().expect("b1 is exact")
    }

    pub fn b2_value(&self) -> Option<i64> {
        Self::value(&self.b2)
    }

    pub fn disjoint_minus2(&self) -> Option<i64> {
        self.predicates.as_ref().map(|p| p.disjoint_minus2)
    }

    /// 12χ = K² + c₂ on the resolution.
    pub fn noether_holds(&self) -> Option<bool> {
        Some(12 * self.chi_value()? == self.k2_value()? + self.c2_value()?)
    }
}

fn exact(n: i64, by: &str) -> HodgeValue {
    HodgeValue::exact(n, by)
}

struct Hodge {
    h01: HodgeValue,
    h02: HodgeValue,
    h10: HodgeValue,
    h10_claimed: Option<i64>,
}

fn intersect(a: Range, b: Range) -> Result<Range> {
    let r = Range { lo: a.lo.max(b.lo), hi: a.hi.min(b.hi) };
    if r.lo > r.hi {
        return Err(Error::InvalidModel(format!("inconsistent Hodge bounds {a:?} and {b:?}")));
    }
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn hodge(
    d: &SurfaceData,
    n_coh: &[Range; 3],
    a: &CurveCohomology,
    b: &CurveCohomology,
    chi: i64,
    b1: i64,
    elliptic: i64,
    all_rational: bool,
) -> Result<Hodge> {
    let (gc, gf) = (d.genus_c(), d.genus_f());
    let [h0n, h1n, h2n] = *n_coh;
    let f_rational = gf == 0;
    let factors_exact = a.h0.is_point() && b.h0.is_point();

    // the cover X′ → S^(-1) with 0 → O → ϖ_*O_X′ → N^∨ → 0
    let (h01_sing, h02_sing) = if f_rational && h0n == Range::point(0) {
        (h1n.shift(gc), h2n)
    } else {
        (Range { lo: 0, hi: gc + gf + h1n.hi }, Range { lo: h2n.lo, hi: gc * gf + h2n.hi })
    };
    // each minimally elliptic point moves one dimension between H¹ and H²
    let h01_res = Range { lo: h01_sing.lo, hi: h01_sing.hi + elliptic };
    let h02_res = Range { lo: (h02_sing.lo - elliptic).max(0), hi: h02_sing.hi };
    let igusa = Range { lo: b1 / 2, hi: i64::MAX / 4 };
    let h01 = intersect(intersect(h01_res, igusa)?, h02_res.shift(1 - chi))?;
    let h02 = h01.shift(chi - 1);

    let mut failed = Vec::new();
    if !f_rational {
        failed.push("F is not rational");
    }
    if !all_rational {
        failed.push("non-rational singularity");
    }
    if !factors_exact {
        failed.push("square root bundle undetermined");
    }
    let tag = |r: Range| -> HodgeValue {
        if failed.is_empty() {
            debug_assert!(r.is_point());
            exact(r.lo, "cohomology of the quotient cover")
        } else if r.is_point() {
            exact(r.lo, "cover bounds with Euler characteristic and Igusa")
        } else {
            HodgeValue::interval(r.lo, Some(r.hi), format!("bounds only: {}", failed.join(", ")))
        }
    };

    let (h10, h10_claimed) = if f_rational && all_rational && d.d_c() > 2 * gc - 2 {
        (exact(gc, "closed one-forms: d_C > 2g(C) - 2, rational singularities"), None)
    } else if f_rational && all_rational && d.field_c().zero_degree() == 0 && b.h0 == Range::point(1) {
        let df = d.d_f();
        let lo = (gc + df - 1).max(b1 / 2);
        (HodgeValue::interval(lo, None, "exact one-forms lower bound g(C) + d_F - 1"), Some(gc + 3 * df / 2 - 1))
    } else {
        (HodgeValue::interval(b1 / 2, None, "Igusa: h10 >= b1/2"), None)
    };
    Ok(Hodge { h01: tag(h01), h02: tag(h02), h10, h10_claimed })
}

/// Singularities and invariants of the resolved quotient.
/// χ(N^∨) computed twice: on S by Riemann–Roch, and as a product of curve
/// Euler characteristics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualChi {
    #[serde(serialize_with = "ratio")]
    pub riemann_roch: Rational64,
    pub kunneth: i64,
}

pub fn dual_euler_characteristic(d: &SurfaceData) -> Result<DualChi> {
    let (gc, gf, dc, df) = (d.genus_c(), d.genus_f(), d.d_c(), d.d_f());
    let k_s = NumericalClass::new(2 * gf - 2, 2 * gc - 2);
    let n_dual = NumericalClass { twice_c: 2 * gf - 2 - df, twice_f: 2 * gc - 2 - dc };
    let (deg_a, deg_b) = (n_dual.degree_along_f()?, n_dual.degree_along_c()?);
    let n = n_dual.neg();
    let twice = n.dot(n)? + k_s.dot(n)?;
    Ok(DualChi {
        riemann_roch: Rational64::new(twice, 2) + (1 - gc) * (1 - gf),
        kunneth: (deg_a + 1 - gf) * (deg_b + 1 - gc),
    })
}

pub fn analyze(d: &SurfaceData) -> Result<InvariantReport> {
    d.validate()?;
    let (gc, gf, dc, df) = (d.genus_c(), d.genus_f(), d.d_c(), d.d_f());
    let (zc, zf) = (d.field_c().zero_degree(), d.field_f().zero_degree());
    let inventory = singular_points(d);
    let complete = inventory.iter().all(|p| p.kind.is_classified());
    let all_rational = inventory.iter().all(|p| p.kind.is_rational());
    let elliptic: i64 = inventory.iter().filter(|p| p.kind.is_elliptic()).map(|p| p.geometric_count as i64).sum();
    let mut notes = Vec::new();

    let k_s = NumericalClass::new(2 * gf - 2, 2 * gc - 2);
    let poles = NumericalClass::new(df, dc);
    // π*K_X′ = K_S − (δ) and (π*K)² = 2 K²
    let pulled = k_s.add(poles);
    let k2_singular = pulled.dot(pulled)? / 2;

    // (N^∨)² = ω_S((δ)) = K_S − poles
    let n_dual = NumericalClass { twice_c: 2 * gf - 2 - df, twice_f: 2 * gc - 2 - dc };
    let (deg_a, deg_b) = (n_dual.degree_along_f()?, n_dual.degree_along_c()?);
    debug_assert_eq!((2 * deg_a, 2 * deg_b), (-zf, -zc));
    let a = curve_cohomology(gf as u32, deg_a, deg_a == 0 && d.curve_f().two_rank() == 0);
    let b = curve_cohomology(gc as u32, deg_b, deg_b == 0 && d.curve_c().two_rank() == 0);
    let n_coh = kunneth(&a, &b);

    let chi_s = (1 - gc) * (1 - gf);
    let routes = dual_euler_characteristic(d)?;
    if routes.riemann_roch != Rational64::from(routes.kunneth) {
        return Err(Error::InvalidModel(format!(
            "chi(N^v): Riemann-Roch gives {}, Kunneth {}",
            routes.riemann_roch, routes.kunneth
        )));
    }
    let chi_singular = chi_s + routes.kunneth;

    let b1 = 2 * (gc + gf);
    let b1_tag = if gf == 0 { "b1 = 2g(C)" } else { "b1 = 2(g(C) + g(F)) via the product" };
    let fibrations = [fibration("C", d.field_f()), fibration("F", d.field_c())];
    let dual_bundle = DualLineBundle { chi: routes, class: n_dual.to_string(), on_f: a, on_c: b, cohomology: n_coh };

    for p in &inventory {
        if p.kind.is_classified() && p.resolved_type.is_some() && !p.engine_agrees() {
            notes.push(format!(
                "point ({}, {}) {:?} orders {:?}: table gives {}, blow-up engine gives {}",
                p.on_c,
                p.on_f,
                p.configuration,
                p.orders,
                p.kind.label(),
                p.resolved_type.map(|t| t.label()).unwrap_or_default()
            ));
        }
    }
    if inventory.iter().any(|p| p.kind.is_elliptic()) {
        notes.push("a (19)_0 point contributes a (-3)-curve, so the intersection form is odd".into());
    }

    let mut report = InvariantReport {
        curve_c: d.curve_c().describe(),
        curve_f: d.curve_f().describe(),
        field_c: d.field_c().label().to_string(),
        field_f: d.field_f().label().to_string(),
        base_field_degree: d.base_field().degree(),
        genus_c: gc,
        genus_f: gf,
        d_c: dc,
        d_f: df,
        closure: d.closure().clone(),
        inventory,
        complete,
        k2_singular: exact(k2_singular, "canonical divisor of the quotient"),
        k2_resolved: None,
        chi_product: exact(chi_s, "Kunneth on C x F"),
        chi_singular: exact(chi_singular, "chi(O_S) + chi(N^v)"),
        chi: None,
        c2: None,
        b0: exact(1, "connected"),
        b1: exact(b1, b1_tag),
        b2: None,
        b3: exact(b1, "Poincare duality"),
        b4: exact(1, "Poincare duality"),
        h01: None,
        h02: None,
        h10: None,
        h10_claimed_lower: None,
        dual_bundle,
        fibrations,
        predicates: None,
        artin: None,
        notes,
    };
    if !complete {
        report.notes.push("unclassified singularity: invariants after resolution are not computed".into());
        return Ok(report);
    }

    let chi = chi_singular - elliptic;
    let correction: i64 = report
        .inventory
        .iter()
        .map(|p| p.geometric_count as i64 * p.kind.canonical_correction().unwrap_or(0))
        .sum();
    let k2 = k2_singular + correction;
    let c2 = 12 * chi - k2;
    let b2 = c2 - 2 + 2 * b1;
    let hodge = hodge(d, &n_coh, &a, &b, chi, b1, elliptic, all_rational)?;

    let pg = hodge.h02.bounds;
    let f_rational = gf == 0;
    let hyp = f_rational && all_rational;
    let slope_fails = hyp && chi > 1 - gc;
    let disjoint: i64 = report
        .inventory
        .iter()
        .map(|p| p.geometric_count as i64 * p.kind.graph().map(|g| disjoint_minus_two(&g) as i64).unwrap_or(0))
        .sum();
    let miyaoka = Rational64::new(3 * c2 - k2, 9);
    let sb = Rational64::new(2 * k2 + c2, 2);
    let picard_reduced = match hodge.h01.bounds {
        Bounds::Exact(h) => Some(h == b1 / 2),
        ref iv if iv.lo() > b1 / 2 => Some(false),
        _ => None,
    };
    let predicates = Predicates {
        picard_reduced,
        frolicher_degenerates: hyp.then_some(true),
        crystalline_torsion_free: hyp.then_some(true),
        slope_degenerates: slope_fails.then_some(false),
        ordinary: slope_fails.then_some(false),
        has_global_vector_fields: (gc <= 1 && gf <= 1 && pg.lo() > 0).then_some(true),
        uniruled: gc == 0 || gf == 0,
        bmy_violated: k2 > 9 * chi,
        miyaoka_bound: miyaoka,
        miyaoka_violated: Rational64::from(disjoint) > miyaoka,
        sb_bound: sb,
        sb_exceeded: Rational64::from(disjoint) > sb,
        disjoint_minus2: disjoint,
        hodge_index_cap: b2 - 1,
    };

    report.k2_resolved = Some(exact(k2, "K2 of X' plus Z^2 of each elliptic fundamental cycle"));
    report.chi = Some(exact(chi, "chi(O_X') minus one per elliptic point"));
    report.c2 = Some(exact(c2, "Noether: 12 chi - K2"));
    report.b2 = Some(exact(b2, "Euler number: c2 - 2 + 2 b1"));
    report.h01 = Some(hodge.h01);
    report.h02 = Some(hodge.h02);
    report.h10 = Some(hodge.h10);
    report.h10_claimed_lower = hodge.h10_claimed;
    report.predicates = Some(predicates);
    report.artin = Some(artin_invariant_bounds(&report));
    Ok(report)
}

fn show(v: &Option<HodgeValue>) -> String {
    v.as_ref().map(|h| h.to_string()).unwrap_or_else(|| "not computed".into())
}

fn tri(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "C: {} (genus {}), field {}, d_C = {}", self.curve_c, self.genus_c, self.field_c, self.d_c)?;
        writeln!(f, "F: {} (genus {}), field {}, d_F = {}", self.curve_f, self.genus_f, self.field_f, self.d_f)?;
        writeln!(f, "closure: {}", self.closure)?;
        writeln!(f, "singularities: {}", self.inventory.len())?;
        for p in &self.inventory {
            let engine = p.resolved_type.map(|t| t.label()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "  ({}, {}) {:?} orders ({}, {}) x{}: {} [engine {}]",
                p.on_c,
                p.on_f,
                p.configuration,
                p.orders.0,
                p.orders.1,
                p.geometric_count,
                p.kind.label(),
                engine
            )?;
        }
        writeln!(f, "K2 of X': {}", self.k2_singular)?;
        writeln!(f, "chi(O_X'): {}", self.chi_singular)?;
        writeln!(f, "K2: {}", show(&self.k2_resolved))?;
        writeln!(f, "chi: {}", show(&self.chi))?;
        writeln!(f, "c2: {}", show(&self.c2))?;
        writeln!(f, "b0..b4: {}, {}, {}, {}, {}", self.b0.bounds, self.b1.bounds, show(&self.b2), self.b3.bounds, self.b4.bounds)?;
        writeln!(f, "h01: {}", show(&self.h01))?;
        writeln!(f, "h02: {}", show(&self.h02))?;
        writeln!(f, "h10: {}", show(&self.h10))?;
        if let Some(c) = self.h10_claimed_lower {
            writeln!(f, "  claimed h10 >= {c} (not certified)")?;
        }
        for fib in &self.fibrations {
            writeln!(
                f,
                "fibration over {}^(-1): fibre genus {} = {} + {}",
                fib.base, fib.arithmetic_genus.bounds, fib.normalization_genus, fib.genus_change
            )?;
        }
        if let Some(p) = &self.predicates {
            let (k2, chi) = (self.k2_value().unwrap_or(0), self.chi_value().unwrap_or(0));
            if p.bmy_violated {
                writeln!(f, "BMY violated: c1^2 = {k2} > 9 chi = {}", 9 * chi)?;
            } else {
                writeln!(f, "BMY holds: c1^2 = {k2} <= 9 chi = {}", 9 * chi)?;
            }
            writeln!(
                f,
                "disjoint (-2)-curves: {} (Miyaoka bound (3c2 - c1^2)/9 = {}, {}; c1^2 + c2/2 = {}, {}; Hodge index cap {})",
                p.disjoint_minus2,
                p.miyaoka_bound,
                if p.miyaoka_violated { "violated" } else { "respected" },
                p.sb_bound,
                if p.sb_exceeded { "exceeded" } else { "not reached" },
                p.hodge_index_cap
            )?;
            writeln!(
                f,
                "Picard scheme reduced: {}; Frolicher degenerates: {}; crystalline torsion-free: {}",
                tri(p.picard_reduced),
                tri(p.frolicher_degenerates),
                tri(p.crystalline_torsion_free)
            )?;
            writeln!(
                f,
                "slope sequence degenerates: {}; ordinary: {}; global vector fields: {}; uniruled: {}",
                tri(p.slope_degenerates),
                tri(p.ordinary),
                tri(p.has_global_vector_fields),
                if p.uniruled { "yes" } else { "no" }
            )?;
        }
        if let Some(a) = &self.artin {
            writeln!(f, "{a}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
