//! JSON input formats, the named constructions, and the scenario runner.
//!
//! Field elements are written as bit patterns (integers) in F_{2^k}, where k is
//! the scenario's `base_field` and the modulus is the lowest irreducible one.
//! Polynomials are coefficient arrays, lowest degree first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Fe, Field, Poly};
use crate::arithmetic::{artin_tate_product, zeta, ArtinTate, ZetaData};
use crate::curves::{CurveModel, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::localres::{resolve_pair, resolve_separated, Configuration, DualGraph, FundamentalCycle};
use crate::surface::{analyze, InvariantReport, SurfaceData};
use crate::vectorfields::{CatalogField, CurveVectorField};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveJson {
    P1 {},
    EllipticDeuring {
        alpha: u64,
    },
    Hyperelliptic {
        branch: Vec<u64>,
        #[serde(default)]
        branch_at_infinity: bool,
        g: Vec<u64>,
    },
    ArtinSchreier {
        h: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "catalog", rename_all = "snake_case", deny_unknown_fields)]
pub enum CatalogJson {
    Delta1 {},
    Delta2 {},
    DeltaPrime { a: Vec<u64>, b: Vec<u64> },
    DeltaElliptic { a: u64, b: u64 },
    AsDdx {},
    PullbackInverseSquares { points: Vec<u64> },
}

fn one() -> Vec<u64> {
    vec![1]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaledJson {
    pub base: String,
    pub scale_num: Vec<u64>,
    #[serde(default = "one")]
    pub scale_den: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorFieldJson {
    Catalog(CatalogJson),
    Scaled(ScaledJson),
}

fn default_budget() -> u32 {
    DEFAULT_BUDGET
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub zeta: bool,
    #[serde(default = "default_budget")]
    pub budget: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options { zeta: false, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub characteristic: u32,
    /// k in F_{2^k}.
    pub base_field: u32,
    #[serde(rename = "curve_C")]
    pub curve_c: CurveJson,
    #[serde(rename = "curve_F")]
    pub curve_f: CurveJson,
    #[serde(rename = "vf_C")]
    pub vf_c: VectorFieldJson,
    #[serde(rename = "vf_F")]
    pub vf_f: VectorFieldJson,
    #[serde(default)]
    pub options: Options,
}

fn elems(field: Field, bits: &[u64]) -> Result<Vec<Fe>> {
    bits.iter().map(|&b| field.elem(b)).collect()
}

fn poly(field: Field, bits: &[u64]) -> Result<Poly> {
    Ok(Poly::new(field, elems(field, bits)?))
}

impl CurveJson {
    pub fn build(&self, field: Field) -> Result<CurveModel> {
        let model = match self {
            CurveJson::P1 {} => CurveModel::ProjectiveLine { field },
            CurveJson::EllipticDeuring { alpha } => CurveModel::EllipticDeuring { alpha: field.elem(*alpha)? },
            CurveJson::Hyperelliptic { branch, branch_at_infinity, g } => CurveModel::Hyperelliptic {
                branch: elems(field, branch)?,
                branch_at_infinity: *branch_at_infinity,
                gpoly: poly(field, g)?,
            },
            CurveJson::ArtinSchreier { h } => CurveModel::ArtinSchreier { field, h: *h },
        };
        model.validate()?;
        Ok(model)
    }
}

impl VectorFieldJson {
    pub fn build(&self, curve: &CurveModel) -> Result<CurveVectorField> {
        let field = curve.field();
        let entry = match self {
            VectorFieldJson::Catalog(c) => match c {
                CatalogJson::Delta1 {} => CatalogField::Delta1,
                CatalogJson::Delta2 {} => CatalogField::Delta2,
                CatalogJson::DeltaPrime { a, b } => {
                    CatalogField::DeltaPrime { a: elems(field, a)?, b: elems(field, b)? }
                }
                CatalogJson::DeltaElliptic { a, b } => {
                    CatalogField::DeltaElliptic { a: field.elem(*a)?, b: field.elem(*b)? }
                }
                CatalogJson::AsDdx {} => CatalogField::AsDdx,
                CatalogJson::PullbackInverseSquares { points } => {
                    CatalogField::PullbackInverseSquares { points: elems(field, points)? }
                }
            },
            VectorFieldJson::Scaled(s) => {
                if s.base != "ddx" {
                    return Err(Error::Scenario(format!("unknown base field {:?}; only \"ddx\"", s.base)));
                }
                CatalogField::Scaled { num: poly(field, &s.scale_num)?, den: poly(field, &s.scale_den)? }
            }
        };
        CurveVectorField::from_catalog(curve, &entry)
    }
}

/// Parse a curve description over F_{2^k}.
pub fn parse_curve(json: &[u8], k: u32) -> Result<CurveModel> {
    let c: CurveJson = serde_json::from_slice(json)?;
    c.build(Field::new(k)?)
}

/// Parse a vector field on a given curve.
pub fn parse_vector_field(json: &[u8], curve: &CurveModel) -> Result<CurveVectorField> {
    let v: VectorFieldJson = serde_json::from_slice(json)?;
    v.build(curve)
}

impl Scenario {
    pub fn parse(json: &[u8]) -> Result<Scenario> {
        let s: Scenario = serde_json::from_slice(json)?;
        if s.characteristic != 2 {
            return Err(Error::Scenario(format!("characteristic {} is not supported; only 2", s.characteristic)));
        }
        Ok(s)
    }

    pub fn build(&self) -> Result<SurfaceData> {
        if self.characteristic != 2 {
            return Err(Error::Scenario(format!("characteristic {} is not supported; only 2", self.characteristic)));
        }
        let field = Field::new(self.base_field)?;
        let c = self.curve_c.build(field)?;
        let f = self.curve_f.build(field)?;
        SurfaceData::new(self.vf_c.build(&c)?, self.vf_f.build(&f)?)
    }
}

/// Report plus the arithmetic add-ons.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub report: InvariantReport,
    pub artin_tate: Option<ArtinTate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta_error: Option<String>,
}

impl Outcome {
    /// 0 for a complete report, 3 when an unclassified singularity stops the analysis.
    pub fn exit_code(&self) -> i32 {
        if self.report.complete {
            0
        } else {
            3
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            writeln!(f, "== {n} ==")?;
        }
        write!(f, "{}", self.report)?;
        if let Some(at) = &self.artin_tate {
            writeln!(f, "Artin-Tate over F_2^{}: {} (alpha = {})", at.k, at, at.alpha)?;
        }
        if let Some(z) = &self.zeta {
            writeln!(f, "P1(C) = {}; P1(F) = {}", z.p1_c, z.p1_f)?;
            writeln!(f, "P2(C x F) = {}", z.p2_product)?;
            writeln!(f, "P2(X) = {} ({} exceptional curves)", z.p2, z.exceptional_curves)?;
        }
        if let Some(e) = &self.zeta_error {
            writeln!(f, "zeta: {e}")?;
        }
        Ok(())
    }
}

pub fn run_scenario(s: &Scenario) -> Result<Outcome> {
    let d = s.build()?;
    let report = analyze(&d)?;
    let artin_tate = if report.complete { Some(artin_tate_product(&d, &report, s.base_field)?) } else { None };
    let (zeta_data, zeta_error) = if s.options.zeta && report.complete {
        match zeta(&d, &report, s.base_field, s.options.budget) {
            Ok(z) => (Some(z), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    Ok(Outcome { name: s.name.clone(), report, artin_tate, zeta: zeta_data, zeta_error })
}

/// The constructions behind the regression suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NamedScenario {
    Bmy,
    BmyGenus4,
    MinusTwoD4,
    MinusTwoD8,
    PicardFamily { q: u32, d_f: u32 },
    AlbaneseFamily { q: u32, d_f: u32 },
    VfFamilyRational { n: u32 },
    VfFamilyAbelian { n: u32 },
}

impl fmt::Display for NamedScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedScenario::Bmy => write!(f, "bmy"),
            NamedScenario::BmyGenus4 => write!(f, "bmy_genus4"),
            NamedScenario::MinusTwoD4 => write!(f, "minustwo_d4"),
            NamedScenario::MinusTwoD8 => write!(f, "minustwo_d8"),
            NamedScenario::PicardFamily { q, d_f } => write!(f, "picard_family({q},{d_f})"),
            NamedScenario::AlbaneseFamily { q, d_f } => write!(f, "albanese_family({q},{d_f})"),
            NamedScenario::VfFamilyRational { n } => write!(f, "vf_family_rational({n})"),
            NamedScenario::VfFamilyAbelian { n } => write!(f, "vf_family_abelian({n})"),
        }
    }
}

impl FromStr for NamedScenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<NamedScenario> {
        let s = s.trim();
        let (head, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            Some(_) => return Err(Error::Scenario(format!("malformed scenario name {s:?}"))),
            None => (s, ""),
        };
        let nums: Vec<u32> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.trim().parse::<u32>().map_err(|_| Error::Scenario(format!("bad argument {a:?} in {s:?}"))))
                .collect::<Result<_>>()?
        };
        let named = match (head, nums.as_slice()) {
            ("bmy", []) => NamedScenario::Bmy,
            ("bmy_genus4", []) => NamedScenario::BmyGenus4,
            ("minustwo_d4", []) => NamedScenario::MinusTwoD4,
            ("minustwo_d8", []) => NamedScenario::MinusTwoD8,
            ("picard_family", [q, d]) => NamedScenario::PicardFamily { q: *q, d_f: *d },
            ("albanese_family", [q, d]) => NamedScenario::AlbaneseFamily { q: *q, d_f: *d },
            ("vf_family_rational", [n]) => NamedScenario::VfFamilyRational { n: *n },
            ("vf_family_abelian", [n]) => NamedScenario::VfFamilyAbelian { n: *n },
            _ => return Err(Error::Scenario(format!("unknown scenario {s:?}"))),
        };
        Ok(named)
    }
}

/// Smallest k with 2^k ≥ n (at least 1).
fn field_holding(n: u32) -> u32 {
    let mut k = 1;
    while (1u64 << k) < n as u64 {
        k += 1;
    }
    k
}

fn square_of_product(bits: &[u64], k: u32) -> Result<Vec<u64>> {
    let field = Field::new(k)?;
    let p = elems(field, bits)?.into_iter().fold(Poly::one(field), |acc, a| &acc * &Poly::linear(a));
    Ok(p.pow(2).coeff_bits())
}

fn scenario(name: String, k: u32, c: CurveJson, f: CurveJson, vc: VectorFieldJson, vf: VectorFieldJson) -> Scenario {
    Scenario {
        name: Some(name),
        characteristic: 2,
        base_field: k,
        curve_c: c,
        curve_f: f,
        vf_c: vc,
        vf_f: vf,
        options: Options { zeta: true, budget: DEFAULT_BUDGET },
    }
}

impl NamedScenario {
    pub fn scenario(&self) -> Result<Scenario> {
        let name = self.to_string();
        let as_ddx = || VectorFieldJson::Catalog(CatalogJson::AsDdx {});
        let delta1 = || VectorFieldJson::Catalog(CatalogJson::Delta1 {});
        Ok(match *self {
            NamedScenario::Bmy => {
                scenario(name, 1, CurveJson::ArtinSchreier { h: 4 }, CurveJson::P1 {}, as_ddx(), delta1())
            }
            NamedScenario::BmyGenus4 => {
                scenario(name, 1, CurveJson::ArtinSchreier { h: 5 }, CurveJson::P1 {}, as_ddx(), delta1())
            }
            NamedScenario::MinusTwoD8 => {
                scenario(name, 1, CurveJson::ArtinSchreier { h: 3 }, CurveJson::P1 {}, as_ddx(), delta1())
            }
            NamedScenario::MinusTwoD4 => {
                // α = generator of F_8, field (a, b) = (1, α)
                let e = CurveJson::EllipticDeuring { alpha: 2 };
                let v = VectorFieldJson::Catalog(CatalogJson::DeltaElliptic { a: 1, b: 2 });
                scenario(name, 3, e.clone(), e, v.clone(), v)
            }
            NamedScenario::PicardFamily { q, d_f } | NamedScenario::AlbaneseFamily { q, d_f } => {
                if q < 2 || d_f < 2 || d_f % 2 != 0 {
                    return Err(Error::Scenario(format!("{name}: need q >= 2 and even d_F >= 2")));
                }
                let n = d_f / 2;
                let m = (q - 1) / 2;
                let k = field_holding((2 * n).max(m));
                let vc = VectorFieldJson::Catalog(CatalogJson::PullbackInverseSquares {
                    points: (0..m as u64).collect(),
                });
                let vf = VectorFieldJson::Catalog(CatalogJson::DeltaPrime {
                    a: (0..n as u64).collect(),
                    b: (n as u64..2 * n as u64).collect(),
                });
                scenario(name, k, CurveJson::ArtinSchreier { h: q + 1 }, CurveJson::P1 {}, vc, vf)
            }
            NamedScenario::VfFamilyRational { n } => {
                if n == 0 {
                    return Err(Error::Scenario(format!("{name}: need n >= 1")));
                }
                let k = field_holding(2 * n);
                let v = VectorFieldJson::Catalog(CatalogJson::DeltaPrime {
                    a: (0..n as u64).collect(),
                    b: (n as u64..2 * n as u64).collect(),
                });
                scenario(name, k, CurveJson::P1 {}, CurveJson::P1 {}, v.clone(), v)
            }
            NamedScenario::VfFamilyAbelian { n } => {
                if n == 0 || 2 * n > 7 {
                    return Err(Error::Scenario(format!("{name}: need 1 <= n <= 3 over F_8")));
                }
                // genus 1, branched over 0 and ∞
                let e = CurveJson::Hyperelliptic { branch: vec![0], branch_at_infinity: true, g: vec![1, 0, 1] };
                let a: Vec<u64> = (0..n as u64).map(|i| 2 * i + 1).collect();
                let b: Vec<u64> = (0..n as u64).map(|i| 2 * i + 2).collect();
                let v = VectorFieldJson::Scaled(ScaledJson {
                    base: "ddx".into(),
                    scale_num: square_of_product(&a, 3)?,
                    scale_den: square_of_product(&b, 3)?,
                });
                scenario(name, 3, e.clone(), e, v.clone(), v)
            }
        })
    }
}

/// Input of the local resolver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalRequest {
    pub a: u32,
    pub b: u32,
    pub configuration: Configuration,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalAnswer {
    pub a: u32,
    pub b: u32,
    pub configuration: Configuration,
    pub multiplicity: u64,
    pub blowups: usize,
    pub integral: Vec<bool>,
    pub upstairs: DualGraph,
    pub graph: DualGraph,
    pub cycle: FundamentalCycle,
    #[serde(rename = "type")]
    pub kind: String,
    pub table_type: String,
    /// Series terms used; absent for the exact model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

pub fn parse_local_request(json: &[u8]) -> Result<LocalRequest> {
    Ok(serde_json::from_slice(json)?)
}

/// Resolve the exact monomial model of the pair. With `precision`, the unit
/// factors are treated as power series known to that many terms instead, and
/// the engine widens the window when the known terms do not decide a step.
pub fn resolve_local(req: &LocalRequest, precision: Option<u32>) -> Result<LocalAnswer> {
    let r = match precision {
        None => resolve_pair(req.configuration, req.a, req.b)?,
        Some(n) => {
            let f2 = Field::f2();
            let unit = move |i: u32| if i == 0 { f2.one() } else { f2.zero() };
            resolve_separated(f2, req.configuration, req.a, req.b, &unit, &unit, n)?
        }
    };
    Ok(LocalAnswer {
        a: req.a,
        b: req.b,
        configuration: req.configuration,
        multiplicity: crate::localres::multiplicity(req.a, req.b),
        blowups: r.blowups,
        integral: r.upstairs.iter().map(|e| e.integral).collect(),
        upstairs: r.upstairs_graph.clone(),
        graph: r.graph.clone(),
        cycle: r.cycle.clone(),
        kind: r.kind.map(|t| t.label()).unwrap_or_else(|| "unmatched".into()),
        table_type: crate::localres::classify_pair(req.a, req.b).label(),
        precision: precision.map(|_| r.precision),
    })
}
