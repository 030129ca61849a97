//! Smooth projective curves over F_{2^k} presented as P¹ or as double covers
//! of P¹, their places, point counts and zeta numerators.

use std::fmt;

use serde::Serialize;

use num_bigint::BigInt;

use crate::algebra::{Divisor, Fe, Field, IntPoly, Place, PlaceP1, Poly};
use crate::error::{Error, Result};

/// Default bit budget for point enumeration (largest field is F_{2^budget}).
pub const DEFAULT_BUDGET: u32 = 24;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CurveModel {
    ProjectiveLine { field: Field },
    /// y² + (αx + 1)y = x³, with α³ ≠ 1.
    EllipticDeuring { alpha: Fe },
    /// z² + f z + f g = 0 with f = Π(x − αᵢ); the cover w² + w = g/f branched
    /// at the αᵢ, and also at ∞ when `branch_at_infinity`.
    Hyperelliptic { branch: Vec<Fe>, branch_at_infinity: bool, gpoly: Poly },
    /// z² + z = x^(2h−1), genus h − 1.
    ArtinSchreier { field: Field, h: u32 },
}

/// A place of the curve lying over a place of P¹. `branch` tells the two
/// sheets apart over unramified places; `e` is the ramification index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurvePlace {
    pub base: PlaceP1,
    pub branch: u8,
    pub e: u8,
}

impl Place for CurvePlace {
    fn residue_degree(&self) -> u32 {
        self.base.residue_degree()
    }
}

impl fmt::Display for CurvePlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if self.e == 2 {
            write!(f, "'")
        } else {
            write!(f, "#{}", self.branch)
        }
    }
}

impl fmt::Debug for CurvePlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl CurveModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            CurveModel::ProjectiveLine { .. } => Ok(()),
            CurveModel::EllipticDeuring { alpha } => {
                if alpha.pow(3).is_one() {
                    Err(Error::InvalidModel(format!("alpha = {alpha} satisfies alpha^3 = 1; curve is singular")))
                } else {
                    Ok(())
                }
            }
            CurveModel::ArtinSchreier { h, .. } => {
                if *h == 0 {
                    Err(Error::InvalidModel("Artin-Schreier exponent h must be at least 1".into()))
                } else {
                    Ok(())
                }
            }
            CurveModel::Hyperelliptic { branch, branch_at_infinity, gpoly } => {
                let field = gpoly.field();
                if branch.iter().any(|b| b.field() != field) {
                    return Err(Error::FieldMismatch("branch points and gpoly live in different fields".into()));
                }
                let mut sorted = branch.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != branch.len() {
                    return Err(Error::InvalidModel("branch points must be distinct".into()));
                }
                let n = branch.len() + usize::from(*branch_at_infinity);
                if n == 0 {
                    return Err(Error::InvalidModel("a double cover of P^1 needs a branch point".into()));
                }
                let genus = n - 1;
                if gpoly.degree() != Some(genus + 1) {
                    return Err(Error::InvalidModel(format!("gpoly must have degree {}", genus + 1)));
                }
                if let Some(b) = branch.iter().find(|b| gpoly.eval(**b).is_zero()) {
                    return Err(Error::InvalidModel(format!("gpoly vanishes at branch point {b}")));
                }
                Ok(())
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            CurveModel::ProjectiveLine { field } | CurveModel::ArtinSchreier { field, .. } => *field,
            CurveModel::EllipticDeuring { alpha } => alpha.field(),
            CurveModel::Hyperelliptic { gpoly, .. } => gpoly.field(),
        }
    }

    pub fn genus(&self) -> u32 {
        match self {
            CurveModel::ProjectiveLine { .. } => 0,
            CurveModel::EllipticDeuring { .. } => 1,
            CurveModel::Hyperelliptic { branch, branch_at_infinity, .. } => {
                (branch.len() + usize::from(*branch_at_infinity)) as u32 - 1
            }
            CurveModel::ArtinSchreier { h, .. } => h - 1,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.genus() == 0
    }

    /// 1 for P¹, 2 for the double covers.
    pub fn cover_degree(&self) -> u32 {
        match self {
            CurveModel::ProjectiveLine { .. } => 1,
            _ => 2,
        }
    }

    /// 2-rank of the Jacobian.
    pub fn two_rank(&self) -> u32 {
        match self {
            CurveModel::ProjectiveLine { .. } | CurveModel::ArtinSchreier { .. } => 0,
            CurveModel::EllipticDeuring { alpha } => u32::from(!alpha.is_zero()),
            // Deuring–Šafarevič: branch points of a double cover minus one
            CurveModel::Hyperelliptic { .. } => self.genus(),
        }
    }

    /// Places of P¹ over which the cover ramifies.
    pub fn branch_places(&self) -> Vec<PlaceP1> {
        let mut out = match self {
            CurveModel::ProjectiveLine { .. } => Vec::new(),
            CurveModel::EllipticDeuring { alpha } => {
                let mut v = vec![PlaceP1::Infinity];
                if !alpha.is_zero() {
                    v.push(PlaceP1::at(alpha.inv().expect("nonzero")));
                }
                v
            }
            CurveModel::Hyperelliptic { branch, branch_at_infinity, .. } => {
                let mut v: Vec<PlaceP1> = branch.iter().map(|b| PlaceP1::at(*b)).collect();
                if *branch_at_infinity {
                    v.push(PlaceP1::Infinity);
                }
                v
            }
            CurveModel::ArtinSchreier { .. } => vec![PlaceP1::Infinity],
        };
        out.sort();
        out
    }

    pub fn places_over(&self, p: &PlaceP1) -> Vec<CurvePlace> {
        if self.cover_degree() == 1 {
            return vec![CurvePlace { base: p.clone(), branch: 0, e: 1 }];
        }
        if self.branch_places().contains(p) {
            vec![CurvePlace { base: p.clone(), branch: 0, e: 2 }]
        } else {
            (0..2).map(|branch| CurvePlace { base: p.clone(), branch, e: 1 }).collect()
        }
    }

    /// Pull a divisor on P¹ back along the cover x.
    pub fn pullback(&self, d: &Divisor<PlaceP1>) -> Divisor<CurvePlace> {
        let mut out = Divisor::new();
        for (p, m) in d.iter() {
            for q in self.places_over(p) {
                let e = q.e as i64;
                out.add_point(q, e * m);
            }
        }
        out
    }

    /// Divisor of the distinguished vector field whose multiples make up the
    /// vector-field catalog on this curve. Its degree is 2 − 2g.
    pub fn distinguished_lift_divisor(&self) -> Divisor<CurvePlace> {
        let mut out = Divisor::new();
        match self {
            CurveModel::ProjectiveLine { .. } => {
                // d/dx vanishes to order two at infinity
                out.add_point(CurvePlace { base: PlaceP1::Infinity, branch: 0, e: 1 }, 2);
            }
            CurveModel::EllipticDeuring { alpha } => {
                // (1 + αx)·∂x: the pullback of div(1 + αx), negated
                if !alpha.is_zero() {
                    let pole = PlaceP1::at(alpha.inv().expect("nonzero"));
                    out.add_point(CurvePlace { base: pole, branch: 0, e: 2 }, -2);
                    out.add_point(CurvePlace { base: PlaceP1::Infinity, branch: 0, e: 2 }, 2);
                }
            }
            CurveModel::Hyperelliptic { .. } => {
                let mut inf = Divisor::new();
                inf.add_point(PlaceP1::Infinity, 2);
                out = self.pullback(&inf);
                for b in self.branch_places() {
                    out.add_point(CurvePlace { base: b, branch: 0, e: 2 }, -2);
                }
            }
            CurveModel::ArtinSchreier { h, .. } => {
                let inf = CurvePlace { base: PlaceP1::Infinity, branch: 0, e: 2 };
                out.add_point(inf, -2 * (*h as i64 - 2));
            }
        }
        out
    }

    /// Number of points over F_{2^k}. The model's field must embed.
    pub fn count_points(&self, k: u32, budget: u32) -> Result<u64> {
        let base = self.field();
        if k % base.degree() != 0 {
            return Err(Error::NotInField(format!(
                "curve is defined over F_2^{} which is not contained in F_2^{k}",
                base.degree()
            )));
        }
        if k > budget {
            return Err(Error::BudgetExceeded(format!("point count over F_2^{k} exceeds budget of {budget} bits")));
        }
        let target = base.extension(k / base.degree())?;
        let q = target.order();
        if let CurveModel::ProjectiveLine { .. } = self {
            return Ok(q + 1);
        }
        let emb = base.embed_into(target)?;
        let solutions = |c: Fe| if c.trace() == 0 { 2 } else { 0 };
        let mut n = 0u64;
        match self {
            CurveModel::ProjectiveLine { .. } => unreachable!(),
            CurveModel::EllipticDeuring { alpha } => {
                let a = emb.apply(*alpha);
                n += 1;
                for x in target.elements() {
                    let b = a * x + target.one();
                    n += if b.is_zero() { 1 } else { solutions(x.pow(3) / b.square()) };
                }
            }
            CurveModel::ArtinSchreier { h, .. } => {
                n += 1;
                for x in target.elements() {
                    n += solutions(x.pow(2 * *h as u64 - 1));
                }
            }
            CurveModel::Hyperelliptic { branch, branch_at_infinity, gpoly } => {
                let g = gpoly.embed(&emb);
                let f = branch
                    .iter()
                    .fold(Poly::one(target), |acc, b| &acc * &Poly::linear(emb.apply(*b)));
                n += if *branch_at_infinity { 1 } else { solutions(g.lead().expect("nonzero")) };
                for x in target.elements() {
                    let fx = f.eval(x);
                    n += if fx.is_zero() { 1 } else { solutions(g.eval(x) / fx) };
                }
            }
        }
        Ok(n)
    }

    /// Numerator L(t) of the zeta function, of degree 2g.
    pub fn zeta_numerator(&self, budget: u32) -> Result<IntPoly> {
        let g = self.genus() as usize;
        let k0 = self.field().degree();
        if k0 * g as u32 > budget {
            return Err(Error::BudgetExceeded(format!(
                "zeta numerator needs counts over F_2^{} (budget {budget} bits)",
                k0 * g as u32
            )));
        }
        let q = BigInt::from(1u64 << k0);
        let mut sums = Vec::with_capacity(g);
        for n in 1..=g {
            let count = self.count_points(k0 * n as u32, budget)?;
            sums.push(q.pow(n as u32) + 1 - BigInt::from(count));
        }
        // a_{2g-j} = q^(g-j) a_j
        let half = IntPoly::from_power_sums(&sums, g);
        let mut c: Vec<BigInt> = (0..=g).map(|j| half.coeff(j)).collect();
        for j in (0..g).rev() {
            c.push(q.pow((g - j) as u32) * &c[j]);
        }
        Ok(IntPoly::from_big(c))
    }

    pub fn describe(&self) -> String {
        match self {
            CurveModel::ProjectiveLine { .. } => "P^1".into(),
            CurveModel::EllipticDeuring { alpha } => format!("y^2 + ({alpha}*x + 1)y = x^3"),
            CurveModel::Hyperelliptic { branch, branch_at_infinity, gpoly } => {
                let pts: Vec<String> = branch.iter().map(|b| b.to_string()).collect();
                let inf = if *branch_at_infinity { ", inf" } else { "" };
                format!("w^2 + w = ({gpoly}) / f, branched at {{{}{inf}}}", pts.join(", "))
            }
            CurveModel::ArtinSchreier { h, .. } => format!("z^2 + z = x^{}", 2 * h - 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::f2()
    }

    fn f8() -> Field {
        Field::new(3).unwrap()
    }

    #[test]
    fn genera() {
        assert_eq!(CurveModel::ProjectiveLine { field: f2() }.genus(), 0);
        assert_eq!(CurveModel::ArtinSchreier { field: f2(), h: 4 }.genus(), 3);
        let g = f8().generator();
        assert_eq!(CurveModel::EllipticDeuring { alpha: g }.genus(), 1);
        let hyp = CurveModel::Hyperelliptic {
            branch: vec![f8().zero()],
            branch_at_infinity: true,
            gpoly: Poly::from_bits(f8(), &[1, 0, 1]).unwrap(),
        };
        hyp.validate().unwrap();
        assert_eq!(hyp.genus(), 1);
    }

    #[test]
    fn lift_divisors_have_canonical_degree() {
        let g = f8().generator();
        let curves = vec![
            CurveModel::ProjectiveLine { field: f2() },
            CurveModel::EllipticDeuring { alpha: g },
            CurveModel::EllipticDeuring { alpha: f8().zero() },
            CurveModel::ArtinSchreier { field: f2(), h: 3 },
            CurveModel::ArtinSchreier { field: f2(), h: 4 },
            CurveModel::Hyperelliptic {
                branch: vec![f8().zero(), f8().one(), g, g * g],
                branch_at_infinity: false,
                gpoly: Poly::from_bits(f8(), &[g.pow(3).bits(), 0, 1, 0, 1]).unwrap(),
            },
        ];
        for c in curves {
            c.validate().unwrap();
            let d = c.distinguished_lift_divisor();
            assert_eq!(d.degree(), 2 - 2 * c.genus() as i64, "{}", c.describe());
        }
    }

    #[test]
    fn invalid_models() {
        assert!(CurveModel::EllipticDeuring { alpha: f2().one() }.validate().is_err());
        assert!(CurveModel::ArtinSchreier { field: f2(), h: 0 }.validate().is_err());
        let wrong_degree = CurveModel::Hyperelliptic {
            branch: vec![f8().zero(), f8().one()],
            branch_at_infinity: false,
            gpoly: Poly::from_bits(f8(), &[1, 1]).unwrap(),
        };
        assert!(wrong_degree.validate().is_err());
        let vanishing = CurveModel::Hyperelliptic {
            branch: vec![f8().one()],
            branch_at_infinity: true,
            gpoly: Poly::from_bits(f8(), &[1, 0, 1]).unwrap(),
        };
        assert!(vanishing.validate().is_err());
    }

    /// Brute-force affine count by enumerating (x, y) pairs.
    fn brute_affine(field: Field, eq: impl Fn(Fe, Fe) -> bool) -> u64 {
        let mut n = 0;
        for x in field.elements() {
            for y in field.elements() {
                if eq(x, y) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn trace_counts_match_brute_force() {
        let f = Field::new(4).unwrap();
        let a = Field::new(2).unwrap().generator();
        let emb = a.field().embed_into(f).unwrap();
        let ai = emb.apply(a);
        let e = CurveModel::EllipticDeuring { alpha: a };
        let affine = brute_affine(f, |x, y| y * y + (ai * x + f.one()) * y == x.pow(3));
        assert_eq!(e.count_points(4, 24).unwrap(), affine + 1);

        let c = CurveModel::ArtinSchreier { field: f2(), h: 4 };
        let affine = brute_affine(f, |x, z| z * z + z == x.pow(7));
        assert_eq!(c.count_points(4, 24).unwrap(), affine + 1);
    }

    #[test]
    fn hasse_weil_and_functional_equation() {
        let g8 = f8().generator();
        let curves = vec![
            CurveModel::ArtinSchreier { field: f2(), h: 4 },
            CurveModel::ArtinSchreier { field: f2(), h: 3 },
            CurveModel::EllipticDeuring { alpha: g8 },
            CurveModel::Hyperelliptic {
                branch: vec![f8().zero()],
                branch_at_infinity: true,
                gpoly: Poly::from_bits(f8(), &[1, 0, 1]).unwrap(),
            },
        ];
        for c in curves {
            let l = c.zeta_numerator(24).unwrap();
            assert_eq!(l.degree(), 2 * c.genus() as usize);
            let q = c.field().order() as f64;
            for r in l.reciprocal_root_moduli() {
                assert!((r - q.sqrt()).abs() < 1e-9, "{}: |root| = {r}", c.describe());
            }
            // L(1) is the class number and must agree with further counts
            let s = l.power_sums(c.genus() as usize + 1);
            let n = c.genus() as usize + 1;
            let k = c.field().degree() * n as u32;
            let expected = BigInt::from(q as i128).pow(n as u32) + 1 - &s[n - 1];
            assert_eq!(BigInt::from(c.count_points(k, 24).unwrap()), expected);
            assert!(l.eval(&BigInt::from(1)) > BigInt::from(0));
        }
    }

    #[test]
    fn supersingular_artin_schreier() {
        // z^2 + z = x^3 over F_2: 1 + 2t^2
        let l = CurveModel::ArtinSchreier { field: f2(), h: 2 }.zeta_numerator(24).unwrap();
        assert_eq!(l, IntPoly::new(vec![1, 0, 2]));
    }

    #[test]
    fn budget_is_enforced() {
        let c = CurveModel::ArtinSchreier { field: f2(), h: 4 };
        assert!(matches!(c.count_points(30, 24), Err(Error::BudgetExceeded(_))));
        assert!(matches!(c.zeta_numerator(2), Err(Error::BudgetExceeded(_))));
        let e = CurveModel::EllipticDeuring { alpha: f8().generator() };
        assert!(matches!(e.count_points(4, 24), Err(Error::NotInField(_))));
    }

    #[test]
    fn ramified_places() {
        let c = CurveModel::ArtinSchreier { field: f2(), h: 4 };
        assert_eq!(c.places_over(&PlaceP1::Infinity).len(), 1);
        assert_eq!(c.places_over(&PlaceP1::at(f2().zero())).len(), 2);
        let mut d = Divisor::new();
        d.add_point(PlaceP1::at(f2().zero()), -1);
        assert_eq!(c.pullback(&d).degree(), -2);
    }
}
