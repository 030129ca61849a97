//! Iterated point blow-ups of a local vector field P∂u + Q∂v and the
//! Rudakov–Šafarevič image of the exceptional configuration.

use serde::{Deserialize, Serialize};

use super::graph::{classify_graph, fundamental_cycle, DualGraph, FundamentalCycle, SingularityType};
use super::jet::Jet;
use crate::algebra::{roots_in_splitting_field, Fe, Field};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 24;
pub const PRECISION_CAP: u32 = 384;
pub const MAX_DEPTH: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Configuration {
    /// f = xᵃ·unit, g = yᵇ·unit.
    Zeros,
    /// f = x⁻ᵃ·unit, g = y⁻ᵇ·unit; cleared to yᵇu(x)∂x + xᵃw(y)∂y.
    Poles,
}

/// P∂u + Q∂v near the origin.
#[derive(Clone, Debug)]
pub struct LocalVf {
    pub p: Jet,
    pub q: Jet,
}

/// Closure type of f = x^shift·Σ uᵢxⁱ from its truncation: f′ = 0 gives
/// `Some(false)`, f′ = 1 gives `Some(true)`, anything else `None`.
fn series_closure(shift: i64, unit: &dyn Fn(u32) -> Fe, n: u32) -> Option<bool> {
    let mut multiplicative = false;
    for i in 0..n {
        let e = shift + i as i64;
        let c = unit(i);
        if e.rem_euclid(2) == 1 && !c.is_zero() {
            if e == 1 && c.is_one() {
                multiplicative = true;
            } else {
                return None;
            }
        }
    }
    Some(multiplicative)
}

impl LocalVf {
    pub fn field(&self) -> Field {
        self.p.field()
    }

    /// Separated field f(x)∂x + g(y)∂y from orders and unit series, known
    /// modulo degree `precision` in each variable.
    pub fn separated(
        field: Field,
        config: Configuration,
        a: u32,
        b: u32,
        unit_f: &dyn Fn(u32) -> Fe,
        unit_g: &dyn Fn(u32) -> Fe,
        precision: u32,
    ) -> Result<LocalVf> {
        if a == 0 || b == 0 {
            return Err(Error::NotIsolated);
        }
        if unit_f(0).is_zero() || unit_g(0).is_zero() {
            return Err(Error::InvalidVectorField("unit series must have nonzero constant term".into()));
        }
        let n = precision.max(a.max(b) + 1);
        let sign = match config {
            Configuration::Zeros => 1,
            Configuration::Poles => -1,
        };
        let cf = series_closure(sign * a as i64, unit_f, n);
        let cg = series_closure(sign * b as i64, unit_g, n);
        if cf.is_none() || cf != cg {
            return Err(Error::InvalidVectorField(format!(
                "{config:?} pair ({a},{b}) with these units is not p-closed with a common eigenvalue"
            )));
        }
        let (p, q) = match config {
            Configuration::Zeros => (
                Jet::new(field, (0..n - a).map(|i| ((a + i, 0), unit_f(i))), vec![(n, 0)]),
                Jet::new(field, (0..n - b).map(|j| ((0, b + j), unit_g(j))), vec![(0, n)]),
            ),
            Configuration::Poles => (
                Jet::new(field, (0..n).map(|i| ((i, b), unit_f(i))), vec![(n, b)]),
                Jet::new(field, (0..n).map(|j| ((a, j), unit_g(j))), vec![(a, n)]),
            ),
        };
        Ok(LocalVf { p, q })
    }

    /// xᵃ∂x + yᵇ∂y (or its pole analogue) with constant units, exactly.
    pub fn monomial(field: Field, config: Configuration, a: u32, b: u32) -> Result<LocalVf> {
        if a == 0 || b == 0 {
            return Err(Error::NotIsolated);
        }
        let ok = match config {
            Configuration::Zeros => (a, b) == (1, 1) || (a % 2 == 0 && b % 2 == 0),
            Configuration::Poles => a % 2 == 0 && b % 2 == 0,
        };
        if !ok {
            return Err(Error::InvalidVectorField(format!(
                "{config:?} pair ({a},{b}) does not come from a p-closed separated field"
            )));
        }
        let one = [((0u32, 0u32), field.one())];
        let (p, q) = match config {
            Configuration::Zeros => (
                Jet::new(field, [((a, 0), one[0].1)], vec![]),
                Jet::new(field, [((0, b), one[0].1)], vec![]),
            ),
            Configuration::Poles => (
                Jet::new(field, [((0, b), one[0].1)], vec![]),
                Jet::new(field, [((a, 0), one[0].1)], vec![]),
            ),
        };
        Ok(LocalVf { p, q })
    }

    pub fn is_singular(&self) -> Result<bool> {
        Ok(self.p.value_at_origin()?.is_zero() && self.q.value_at_origin()?.is_zero())
    }

    fn swapped(&self) -> LocalVf {
        LocalVf { p: self.q.swap(), q: self.p.swap() }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// u = s·v
    First,
    /// v = w·u
    Second,
}

/// A singular point on the new exceptional curve, in local coordinates
/// whose second axis is the exceptional curve.
#[derive(Clone, Debug)]
pub struct NearPoint {
    pub chart: Chart,
    /// Coordinate of the point on the chart's affine line.
    pub location: Fe,
    pub vf: LocalVf,
}

#[derive(Clone, Debug)]
pub struct Blowup {
    /// Order of the exceptional curve in the divisorial factor removed.
    pub factor_order: u32,
    /// The new curve is invariant under the induced field.
    pub integral: bool,
    pub points: Vec<NearPoint>,
}

/// Chart u = s·v: δ(s) = (P − sQ)/v, δ(v) = Q, then the common vᵏ removed.
fn chart_one(vf: &LocalVf) -> Result<(LocalVf, u32, bool)> {
    let to_chart = |e: (u32, u32)| (e.0, e.0 + e.1);
    let p1 = vf.p.map_exponents(to_chart);
    let q1 = vf.q.map_exponents(to_chart);
    let a = p1.add(&q1.shift_first(1)).div_second(1)?;
    let b = q1;
    let k = match (a.order_second()?, b.order_second()?) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => return Err(Error::InvalidVectorField("vector field vanishes identically".into())),
    };
    let a = a.div_second(k)?;
    let b = b.div_second(k)?;
    let integral = b.order_second()? != Some(0);
    Ok((LocalVf { p: a, q: b }, k, integral))
}

/// Blow up the origin and locate the singular points on the exceptional curve.
pub fn blowup_once(vf: &LocalVf) -> Result<Blowup> {
    if !vf.is_singular()? {
        return Err(Error::NotIsolated);
    }
    let (one, k, integral) = chart_one(vf)?;
    let a0 = one.p.slice()?;
    let b0 = one.q.slice()?;
    let locus = if b0.is_zero() { a0.clone() } else { a0.gcd(&b0) };
    let mut points = Vec::new();
    if !locus.is_zero() && !locus.is_constant() {
        for root in roots_in_splitting_field(&locus)? {
            let emb = vf.field().embed_into(root.value.field())?;
            let moved = LocalVf { p: one.p.embed(&emb), q: one.q.embed(&emb) };
            let moved = LocalVf { p: moved.p.translate_first(root.value), q: moved.q.translate_first(root.value) };
            points.push(NearPoint { chart: Chart::First, location: root.value, vf: moved });
        }
    }
    let (two, k2, integral2) = chart_one(&vf.swapped())?;
    debug_assert_eq!((k, integral), (k2, integral2));
    if two.is_singular()? {
        points.push(NearPoint { chart: Chart::Second, location: vf.field().zero(), vf: two });
    }
    Ok(Blowup { factor_order: k, integral, points })
}

/// An exceptional curve upstairs, before taking the quotient.
#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalCurve {
    pub selfint: i64,
    pub integral: bool,
    pub depth: usize,
    pub factor_order: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Resolution {
    pub blowups: usize,
    pub upstairs: Vec<ExceptionalCurve>,
    pub upstairs_graph: DualGraph,
    /// Quotient configuration with (−1)-curves contracted.
    pub graph: DualGraph,
    pub cycle: FundamentalCycle,
    pub kind: Option<SingularityType>,
    pub precision: u32,
}

struct Pending {
    vf: LocalVf,
    axes: [Option<usize>; 2],
    depth: usize,
}

/// Blow up until only divisorial singularities remain, then push the
/// exceptional curves down to the quotient by the field.
pub fn resolve(vf: &LocalVf) -> Result<Resolution> {
    let mut curves: Vec<ExceptionalCurve> = Vec::new();
    let mut up = DualGraph::default();
    let mut selfint: Vec<i64> = Vec::new();
    let mut stack = vec![Pending { vf: vf.clone(), axes: [None, None], depth: 0 }];
    if !vf.is_singular()? {
        return Err(Error::NotIsolated);
    }
    while let Some(pt) = stack.pop() {
        if pt.depth >= MAX_DEPTH {
            return Err(Error::DepthExceeded(MAX_DEPTH));
        }
        let bl = blowup_once(&pt.vf)?;
        let e = curves.len();
        curves.push(ExceptionalCurve { selfint: -1, integral: bl.integral, depth: pt.depth, factor_order: bl.factor_order });
        selfint.push(-1);
        for c in pt.axes.iter().flatten() {
            selfint[*c] -= 1;
            up.add_meet(*c, e, 1);
        }
        if let [Some(c1), Some(c2)] = pt.axes {
            up.add_meet(c1, c2, -1);
        }
        for np in bl.points {
            let axes = match np.chart {
                Chart::First if np.location.is_zero() => [pt.axes[0], Some(e)],
                Chart::First => [None, Some(e)],
                Chart::Second => [pt.axes[1], Some(e)],
            };
            stack.push(Pending { vf: np.vf, axes, depth: pt.depth + 1 });
        }
    }
    for (c, s) in curves.iter_mut().zip(&selfint) {
        c.selfint = *s;
    }
    let edges: Vec<(usize, usize, i64)> = up.edges().collect();
    let upstairs_graph = DualGraph::new(selfint, &edges);
    let quotient = push_down(&curves, &upstairs_graph)?;
    let graph = quotient.contract_minus_one();
    let cycle = fundamental_cycle(&graph)?;
    let kind = classify_graph(&graph);
    Ok(Resolution { blowups: curves.len(), upstairs: curves, upstairs_graph, graph, cycle, kind, precision: 0 })
}

/// E′ᵢ·E′ⱼ = mᵢmⱼ(Eᵢ·Eⱼ)/2 with m = 1 on invariant curves and 2 otherwise.
fn push_down(curves: &[ExceptionalCurve], up: &DualGraph) -> Result<DualGraph> {
    let m: Vec<i64> = curves.iter().map(|c| if c.integral { 1 } else { 2 }).collect();
    let mut selfint = Vec::with_capacity(curves.len());
    for (i, mi) in m.iter().enumerate() {
        let v = mi * mi * up.selfint(i);
        if v % 2 != 0 {
            return Err(Error::OddSelfIntersection(up.selfint(i)));
        }
        selfint.push(v / 2);
    }
    let mut edges = Vec::new();
    for (i, j, w) in up.edges() {
        let v = m[i] * m[j] * w;
        if v % 2 != 0 {
            return Err(Error::OddSelfIntersection(w));
        }
        edges.push((i, j, v / 2));
    }
    Ok(DualGraph::new(selfint, &edges))
}

/// Resolve a separated field, doubling the truncation order whenever the
/// known terms stop determining the geometry.
pub fn resolve_separated(
    field: Field,
    config: Configuration,
    a: u32,
    b: u32,
    unit_f: &dyn Fn(u32) -> Fe,
    unit_g: &dyn Fn(u32) -> Fe,
    precision: u32,
) -> Result<Resolution> {
    let mut n = precision.max(1);
    loop {
        let vf = LocalVf::separated(field, config, a, b, unit_f, unit_g, n)?;
        match resolve(&vf) {
            Err(Error::PrecisionExhausted(_)) if n < PRECISION_CAP => n = (2 * n).min(PRECISION_CAP),
            Err(Error::PrecisionExhausted(msg)) => {
                return Err(Error::PrecisionExhausted(format!("{msg} (cap {PRECISION_CAP} reached)")))
            }
            Ok(mut r) => {
                r.precision = n;
                return Ok(r);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Exact monomial model of the pair.
pub fn resolve_pair(config: Configuration, a: u32, b: u32) -> Result<Resolution> {
    resolve(&LocalVf::monomial(Field::f2(), config, a, b)?)
}

/// dim O/(f, g) for the separated field: |a|·|b|.
pub fn multiplicity(a: u32, b: u32) -> u64 {
    a as u64 * b as u64
}
