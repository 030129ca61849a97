//! Places of P¹, finitely supported divisors, and roots in splitting fields.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use super::field::{Fe, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Anything that can carry divisor multiplicities.
pub trait Place: Ord + Clone + fmt::Display {
    fn residue_degree(&self) -> u32;
}

/// A closed point of P¹ over the base field: a monic irreducible polynomial, or ∞.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceP1 {
    Finite(Poly),
    Infinity,
}

impl PlaceP1 {
    /// The rational point x = c.
    pub fn at(c: Fe) -> PlaceP1 {
        PlaceP1::Finite(Poly::linear(c))
    }

    pub fn closed(minpoly: Poly) -> Result<PlaceP1> {
        if minpoly.lead().map(|l| l.is_one()) != Some(true) || !minpoly.is_irreducible() {
            return Err(Error::InvalidModel(format!("{minpoly} is not monic irreducible")));
        }
        Ok(PlaceP1::Finite(minpoly))
    }

    /// The coordinate value when the place is rational.
    pub fn rational_value(&self) -> Option<Fe> {
        match self {
            PlaceP1::Finite(m) if m.degree() == Some(1) => Some(m.coeff(0)),
            _ => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PlaceP1::Infinity)
    }
}

impl Place for PlaceP1 {
    fn residue_degree(&self) -> u32 {
        match self {
            PlaceP1::Finite(m) => m.degree().unwrap_or(0) as u32,
            PlaceP1::Infinity => 1,
        }
    }
}

impl fmt::Display for PlaceP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceP1::Infinity => write!(f, "inf"),
            PlaceP1::Finite(m) => match self.rational_value() {
                Some(c) => write!(f, "x={c}"),
                None => write!(f, "[{m}]"),
            },
        }
    }
}

impl fmt::Debug for PlaceP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for PlaceP1 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PlaceP1::Infinity => {
                let mut st = s.serialize_struct("PlaceP1", 1)?;
                st.serialize_field("kind", "infinity")?;
                st.end()
            }
            PlaceP1::Finite(m) => {
                let mut st = s.serialize_struct("PlaceP1", 3)?;
                st.serialize_field("kind", "finite")?;
                st.serialize_field("minpoly_bits", &m.coeff_bits())?;
                st.serialize_field("degree", &self.residue_degree())?;
                st.end()
            }
        }
    }
}

/// A finitely supported formal sum of places; zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Divisor<P: Place> {
    support: BTreeMap<P, i64>,
}

impl<P: Place> Default for Divisor<P> {
    fn default() -> Self {
        Divisor { support: BTreeMap::new() }
    }
}

impl<P: Place> Divisor<P> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_point(&mut self, p: P, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.support.entry(p.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.support.remove(&p);
        }
    }

    pub fn get(&self, p: &P) -> i64 {
        self.support.get(p).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, i64)> {
        self.support.iter().map(|(p, &m)| (p, m))
    }

    pub fn degree(&self) -> i64 {
        self.iter().map(|(p, m)| m * p.residue_degree() as i64).sum()
    }

    pub fn plus(&self, other: &Divisor<P>) -> Divisor<P> {
        let mut out = self.clone();
        for (p, m) in other.iter() {
            out.add_point(p.clone(), m);
        }
        out
    }

    pub fn scaled(&self, k: i64) -> Divisor<P> {
        let mut out = Divisor::new();
        for (p, m) in self.iter() {
            out.add_point(p.clone(), k * m);
        }
        out
    }

    /// Effective part (zeros).
    pub fn zeros(&self) -> Divisor<P> {
        let mut out = Divisor::new();
        for (p, m) in self.iter().filter(|(_, m)| *m > 0) {
            out.add_point(p.clone(), m);
        }
        out
    }

    /// Pole part, with positive multiplicities.
    pub fn poles(&self) -> Divisor<P> {
        let mut out = Divisor::new();
        for (p, m) in self.iter().filter(|(_, m)| *m < 0) {
            out.add_point(p.clone(), -m);
        }
        out
    }
}

impl<P: Place> fmt::Display for Divisor<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(p, m)| format!("{m}*({p})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<P: Place> fmt::Debug for Divisor<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor[{self}]")
    }
}

impl<P: Place + Serialize> Serialize for Divisor<P> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a, P> {
            place: &'a P,
            mult: i64,
        }
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (place, mult) in self.iter() {
            seq.serialize_element(&Entry { place, mult })?;
        }
        seq.end()
    }
}

/// A geometric root: the closed point it lies on, its index among the
/// conjugates (sorted by bit pattern in the extension), and its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricRoot {
    pub place: PlaceP1,
    pub index: usize,
    pub ext_degree: u32,
    pub value: Fe,
    pub multiplicity: u32,
}

/// All roots of `p` with multiplicities, each in the smallest extension containing it.
pub fn roots_in_splitting_field(p: &Poly) -> Result<Vec<GeometricRoot>> {
    let base: Field = p.field();
    let mut out = Vec::new();
    for (q, m) in p.factor()? {
        let d = q.degree().unwrap() as u32;
        let ext = if d == 1 { base } else { base.extension(d)? };
        let emb = base.embed_into(ext)?;
        let roots = q.embed(&emb).roots()?;
        debug_assert_eq!(roots.len(), d as usize);
        for (index, (value, _)) in roots.into_iter().enumerate() {
            out.push(GeometricRoot {
                place: PlaceP1::Finite(q.clone()),
                index,
                ext_degree: d,
                value,
                multiplicity: m,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_x6_plus_1() {
        let f2 = Field::f2();
        let p = Poly::from_bits(f2, &[1, 0, 0, 0, 0, 0, 1]).unwrap();
        let roots = roots_in_splitting_field(&p).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| r.multiplicity == 2));
        assert_eq!(roots[0].ext_degree, 1);
        assert!(roots[0].value.is_one());
        let f4 = Field::new(2).unwrap();
        let omega = f4.generator();
        let cube_roots: Vec<Fe> = roots[1..].iter().map(|r| r.value).collect();
        assert_eq!(cube_roots, vec![omega, omega * omega]);
        assert!(roots[1..].iter().all(|r| r.ext_degree == 2));
    }

    #[test]
    fn simple_roots() {
        let f2 = Field::f2();
        let q = Poly::from_bits(f2, &[1, 1, 1]).unwrap();
        let r = roots_in_splitting_field(&q).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|r| r.multiplicity == 1 && r.ext_degree == 2));
        let lin = Poly::from_bits(f2, &[1, 1]).unwrap();
        let r = roots_in_splitting_field(&lin).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].place, PlaceP1::at(f2.one()));
        assert!(roots_in_splitting_field(&Poly::zero(f2)).is_err());
    }

    #[test]
    fn divisor_bookkeeping() {
        let f2 = Field::f2();
        let mut d = Divisor::new();
        d.add_point(PlaceP1::Infinity, 2);
        d.add_point(PlaceP1::Infinity, -2);
        assert!(d.is_empty());
        d.add_point(PlaceP1::closed(Poly::from_bits(f2, &[1, 1, 1]).unwrap()).unwrap(), 2);
        d.add_point(PlaceP1::at(f2.zero()), -4);
        assert_eq!(d.degree(), 0);
        assert_eq!(d.zeros().degree(), 4);
        assert_eq!(d.poles().degree(), 4);
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.starts_with("[{\"place\":{\"kind\":\"finite\""));
    }
}
