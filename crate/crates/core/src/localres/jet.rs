//! Bivariate power series known exactly outside a monomial ideal.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Embedding, Fe, Field, Poly};
use crate::error::{Error, Result};

/// Σ c_ij sᶦ vʲ + (unknown element of the monomial ideal `unknown`).
/// Every stored term lies outside the ideal and is exact.
#[derive(Clone, PartialEq, Eq)]
pub struct Jet {
    field: Field,
    terms: BTreeMap<(u32, u32), Fe>,
    unknown: Vec<(u32, u32)>,
}

fn divides(g: (u32, u32), e: (u32, u32)) -> bool {
    g.0 <= e.0 && g.1 <= e.1
}

fn lucas(i: u32, l: u32) -> bool {
    l & i == l
}

impl Jet {
    pub fn new(field: Field, terms: impl IntoIterator<Item = ((u32, u32), Fe)>, unknown: Vec<(u32, u32)>) -> Jet {
        let mut j = Jet { field, terms: BTreeMap::new(), unknown };
        for (e, c) in terms {
            assert_eq!(c.field(), field, "jet coefficient from another field");
            let slot = j.terms.entry(e).or_insert_with(|| field.zero());
            *slot = *slot + c;
        }
        j.normalize();
        j
    }

    pub fn zero(field: Field) -> Jet {
        Jet { field, terms: BTreeMap::new(), unknown: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Fe)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn unknown(&self) -> &[(u32, u32)] {
        &self.unknown
    }

    pub fn is_exact(&self) -> bool {
        self.unknown.is_empty()
    }

    /// Exactly zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.unknown.is_empty()
    }

    fn in_ideal(&self, e: (u32, u32)) -> bool {
        self.unknown.iter().any(|g| divides(*g, e))
    }

    fn normalize(&mut self) {
        let mut gens = std::mem::take(&mut self.unknown);
        gens.sort();
        gens.dedup();
        let minimal: Vec<(u32, u32)> =
            gens.iter().copied().filter(|g| !gens.iter().any(|h| h != g && divides(*h, *g))).collect();
        self.unknown = minimal;
        let unknown = self.unknown.clone();
        self.terms.retain(|e, c| !c.is_zero() && !unknown.iter().any(|g| divides(*g, *e)));
    }

    /// Substitute monomials through an injective exponent map.
    pub fn map_exponents(&self, f: impl Fn((u32, u32)) -> (u32, u32)) -> Jet {
        let terms: Vec<_> = self.terms().map(|(e, c)| (f(e), c)).collect();
        Jet::new(self.field, terms, self.unknown.iter().map(|g| f(*g)).collect())
    }

    pub fn swap(&self) -> Jet {
        self.map_exponents(|(i, j)| (j, i))
    }

    pub fn add(&self, other: &Jet) -> Jet {
        assert_eq!(self.field, other.field, "adding jets over different fields");
        let terms: Vec<_> = self.terms().chain(other.terms()).collect();
        let unknown = self.unknown.iter().chain(other.unknown.iter()).copied().collect();
        Jet::new(self.field, terms, unknown)
    }

    /// Multiply by sⁿ.
    pub fn shift_first(&self, n: u32) -> Jet {
        self.map_exponents(|(i, j)| (i + n, j))
    }

    /// Divide by vⁿ; the caller guarantees divisibility.
    pub fn div_second(&self, n: u32) -> Result<Jet> {
        if let Some((e, _)) = self.terms().find(|(e, _)| e.1 < n) {
            return Err(Error::InvalidModel(format!("series term at {e:?} is not divisible by v^{n}")));
        }
        let terms: Vec<_> = self.terms().map(|((i, j), c)| ((i, j - n), c)).collect();
        let unknown = self.unknown.iter().map(|&(a, b)| (a, b.saturating_sub(n))).collect();
        Ok(Jet::new(self.field, terms, unknown))
    }

    /// v-adic order; `None` for the exact zero series.
    pub fn order_second(&self) -> Result<Option<u32>> {
        let known = self.terms.keys().map(|e| e.1).min();
        let unknown = self.unknown.iter().map(|g| g.1).min();
        match (known, unknown) {
            (None, None) => Ok(None),
            (Some(k), None) => Ok(Some(k)),
            (Some(k), Some(u)) if u >= k => Ok(Some(k)),
            _ => Err(Error::PrecisionExhausted("v-adic order is not determined by the known terms".into())),
        }
    }

    /// Restriction to v = 0 as a polynomial in s.
    pub fn slice(&self) -> Result<Poly> {
        if self.unknown.iter().any(|g| g.1 == 0) {
            return Err(Error::PrecisionExhausted("restriction to the exceptional curve is truncated".into()));
        }
        let deg = self.terms.keys().filter(|e| e.1 == 0).map(|e| e.0).max();
        let mut coeffs = vec![self.field.zero(); deg.map_or(0, |d| d as usize + 1)];
        for ((i, j), c) in self.terms() {
            if j == 0 {
                coeffs[i as usize] = c;
            }
        }
        Ok(Poly::new(self.field, coeffs))
    }

    pub fn value_at_origin(&self) -> Result<Fe> {
        if self.in_ideal((0, 0)) {
            return Err(Error::PrecisionExhausted("value at the origin is unknown".into()));
        }
        Ok(self.terms.get(&(0, 0)).copied().unwrap_or_else(|| self.field.zero()))
    }

    /// Substitute s ↦ s + c.
    pub fn translate_first(&self, c: Fe) -> Jet {
        assert_eq!(c.field(), self.field);
        if c.is_zero() {
            return self.clone();
        }
        let mut terms = Vec::new();
        for ((i, j), coeff) in self.terms() {
            for l in 0..=i {
                if lucas(i, l) {
                    terms.push(((l, j), coeff * c.pow((i - l) as u64)));
                }
            }
        }
        // sᵃvᵇ becomes a unit times vᵇ
        let unknown = self.unknown.iter().map(|&(_, b)| (0, b)).collect();
        Jet::new(self.field, terms, unknown)
    }

    pub fn embed(&self, emb: &Embedding) -> Jet {
        let terms: Vec<_> = self.terms().map(|(e, c)| (e, emb.apply(c))).collect();
        Jet::new(emb.target(), terms, self.unknown.clone())
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms().map(|((i, j), c)| format!("({c})s^{i}v^{j}")).collect();
        for (a, b) in &self.unknown {
            parts.push(format!("O(s^{a}v^{b})"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_expands_binomially() {
        let f2 = Field::f2();
        // s^3 at s -> s + 1: s^3 + s^2 + s + 1
        let j = Jet::new(f2, [((3, 0), f2.one())], vec![]);
        let t = j.translate_first(f2.one());
        assert_eq!(t.slice().unwrap().coeff_bits(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn orders_respect_the_unknown_ideal() {
        let f2 = Field::f2();
        let j = Jet::new(f2, [((0, 3), f2.one())], vec![(5, 2)]);
        assert!(j.order_second().is_err());
        let j = Jet::new(f2, [((0, 2), f2.one())], vec![(5, 2)]);
        assert_eq!(j.order_second().unwrap(), Some(2));
        // terms inside the ideal are dropped
        let j = Jet::new(f2, [((6, 3), f2.one())], vec![(5, 2)]);
        assert!(j.terms().next().is_none());
        assert!(Jet::zero(f2).order_second().unwrap().is_none());
    }

    #[test]
    fn division_and_slices() {
        let f2 = Field::f2();
        let j = Jet::new(f2, [((1, 1), f2.one()), ((0, 2), f2.one())], vec![(4, 4)]);
        let d = j.div_second(1).unwrap();
        assert_eq!(d.slice().unwrap().coeff_bits(), vec![0, 1]);
        assert_eq!(d.unknown(), &[(4, 3)]);
        assert!(j.div_second(2).is_err());
        assert!(Jet::new(f2, [], vec![(3, 0)]).slice().is_err());
    }
}
