//! Tagged integer values, numerical classes on C × F, and line-bundle
//! cohomology on the factor curves.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};

/// An integer invariant known exactly or only between bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bounds {
    Exact(i64),
    Interval { lo: i64, hi: Option<i64> },
}

impl Bounds {
    pub fn lo(&self) -> i64 {
        match *self {
            Bounds::Exact(n) => n,
            Bounds::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> Option<i64> {
        match *self {
            Bounds::Exact(n) => Some(n),
            Bounds::Interval { hi, .. } => hi,
        }
    }

    pub fn exact(&self) -> Option<i64> {
        match *self {
            Bounds::Exact(n) => Some(n),
            _ => None,
        }
    }

    /// Collapses to Exact when lo = hi.
    pub fn between(lo: i64, hi: Option<i64>) -> Bounds {
        match hi {
            Some(h) if h == lo => Bounds::Exact(lo),
            _ => Bounds::Interval { lo, hi },
        }
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.lo() && self.hi().is_none_or(|h| n <= h)
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Bounds::Exact(n) => write!(f, "{n}"),
            Bounds::Interval { lo, hi: Some(h) } => write!(f, "[{lo}, {h}]"),
            Bounds::Interval { lo, hi: None } => write!(f, ">= {lo}"),
        }
    }
}

/// A value with the argument that licenses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeValue {
    pub bounds: Bounds,
    pub by: String,
}

impl HodgeValue {
    pub fn exact(n: i64, by: impl Into<String>) -> HodgeValue {
        HodgeValue { bounds: Bounds::Exact(n), by: by.into() }
    }

    pub fn interval(lo: i64, hi: Option<i64>, by: impl Into<String>) -> HodgeValue {
        HodgeValue { bounds: Bounds::Interval { lo, hi }, by: by.into() }
    }

    pub fn value(&self) -> Option<i64> {
        self.bounds.exact()
    }
}

impl fmt::Display for HodgeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.bounds, self.by)
    }
}

impl Serialize for HodgeValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Range {
            lo: i64,
            hi: Option<i64>,
        }
        let mut st = s.serialize_struct("HodgeValue", 3)?;
        match self.bounds {
            Bounds::Exact(n) => {
                st.serialize_field("value", &n)?;
                st.serialize_field("status", "exact")?;
            }
            Bounds::Interval { lo, hi } => {
                st.serialize_field("value", &Range { lo, hi })?;
                st.serialize_field("status", "interval")?;
            }
        }
        st.serialize_field("by", &self.by)?;
        st.end()
    }
}

/// x·C + y·F on C × F, where C = C × {pt} and F = {pt} × F, so C² = F² = 0
/// and C·F = 1. Coefficients are stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumericalClass {
    pub twice_c: i64,
    pub twice_f: i64,
}

impl NumericalClass {
    pub fn new(c: i64, f: i64) -> NumericalClass {
        NumericalClass { twice_c: 2 * c, twice_f: 2 * f }
    }

    pub fn halved(self) -> NumericalClass {
        NumericalClass { twice_c: self.twice_c / 2, twice_f: self.twice_f / 2 }
    }

    pub fn add(self, o: NumericalClass) -> NumericalClass {
        NumericalClass { twice_c: self.twice_c + o.twice_c, twice_f: self.twice_f + o.twice_f }
    }

    pub fn neg(self) -> NumericalClass {
        NumericalClass { twice_c: -self.twice_c, twice_f: -self.twice_f }
    }

    /// Degree on a curve C × {pt}.
    pub fn degree_along_c(self) -> Result<i64> {
        half(self.twice_f)
    }

    /// Degree on a curve {pt} × F.
    pub fn degree_along_f(self) -> Result<i64> {
        half(self.twice_c)
    }

    pub fn dot(self, o: NumericalClass) -> Result<i64> {
        let four = self.twice_c * o.twice_f + self.twice_f * o.twice_c;
        if four % 4 != 0 {
            return Err(Error::InvalidModel(format!("intersection number {four}/4 is not integral")));
        }
        Ok(four / 4)
    }
}

fn half(n: i64) -> Result<i64> {
    if n % 2 != 0 {
        return Err(Error::InvalidModel(format!("coefficient {n}/2 is not integral")));
    }
    Ok(n / 2)
}

impl fmt::Display for NumericalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |t: i64| if t % 2 == 0 { format!("{}", t / 2) } else { format!("{t}/2") };
        write!(f, "{}·C + {}·F", show(self.twice_c), show(self.twice_f))
    }
}

/// Closed integer range lo..=hi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    pub fn point(n: i64) -> Range {
        Range { lo: n, hi: n }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(self, o: Range) -> Range {
        Range { lo: self.lo + o.lo, hi: self.hi + o.hi }
    }

    /// Product of non-negative ranges.
    pub fn mul(self, o: Range) -> Range {
        debug_assert!(self.lo >= 0 && o.lo >= 0);
        Range { lo: self.lo * o.lo, hi: self.hi * o.hi }
    }

    pub fn shift(self, n: i64) -> Range {
        Range { lo: self.lo + n, hi: self.hi + n }
    }
}

/// h⁰ and h¹ of a line bundle on a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCohomology {
    pub degree: i64,
    pub h0: Range,
    pub h1: Range,
}

/// Cohomology of a degree-`degree` line bundle on a genus-`genus` curve.
/// `trivial` says the bundle is known to be O when the degree is 0.
pub fn curve_cohomology(genus: u32, degree: i64, trivial: bool) -> CurveCohomology {
    let g = genus as i64;
    let chi = degree + 1 - g;
    let h0 = if degree < 0 {
        Range::point(0)
    } else if degree > 2 * g - 2 {
        Range::point(chi)
    } else if degree == 0 && trivial {
        Range::point(1)
    } else {
        // Riemann–Roch below, Clifford above
        Range { lo: chi.max(0), hi: degree / 2 + 1 }
    };
    CurveCohomology { degree, h0, h1: h0.shift(-chi) }
}

/// Künneth for A ⊠ B on C × F.
pub fn kunneth(a: &CurveCohomology, b: &CurveCohomology) -> [Range; 3] {
    [a.h0.mul(b.h0), a.h0.mul(b.h1).add(a.h1.mul(b.h0)), a.h1.mul(b.h1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_intersect() {
        let c = NumericalClass::new(1, 0);
        let f = NumericalClass::new(0, 1);
        assert_eq!(c.dot(f).unwrap(), 1);
        assert_eq!(c.dot(c).unwrap(), 0);
        let k = NumericalClass::new(-2, 4);
        assert_eq!(k.dot(k).unwrap(), -16);
        let h = NumericalClass { twice_c: 1, twice_f: 1 };
        assert!(h.dot(h).is_err());
        assert_eq!(h.to_string(), "1/2·C + 1/2·F");
    }

    #[test]
    fn cohomology_ranges_satisfy_riemann_roch() {
        for g in 0..5u32 {
            for d in -6..12i64 {
                for trivial in [false, true] {
                    let c = curve_cohomology(g, d, trivial);
                    assert_eq!(c.h0.lo - c.h1.lo, d + 1 - g as i64);
                    assert_eq!(c.h0.hi - c.h1.hi, d + 1 - g as i64);
                    assert!(c.h0.lo >= 0 && c.h1.lo >= 0 && c.h0.lo <= c.h0.hi);
                }
            }
        }
        assert_eq!(curve_cohomology(0, -3, false).h1, Range::point(2));
        assert_eq!(curve_cohomology(2, 0, true).h1, Range::point(2));
        assert_eq!(curve_cohomology(2, 0, false).h0, Range { lo: 0, hi: 1 });
        assert_eq!(curve_cohomology(1, -1, false).h1, Range::point(1));
    }

    #[test]
    fn bounds_collapse() {
        assert_eq!(Bounds::between(3, Some(3)), Bounds::Exact(3));
        assert!(Bounds::between(3, None).contains(100));
        assert!(!Bounds::between(3, Some(5)).contains(6));
        let v = HodgeValue::interval(2, None, "lower bound");
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["status"], "interval");
        assert_eq!(json["value"]["lo"], 2);
        assert!(json["value"]["hi"].is_null());
    }
}
