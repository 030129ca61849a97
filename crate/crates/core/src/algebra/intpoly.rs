//! Integer polynomials for zeta-function numerators.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// Coefficients low degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

/// Coefficients that fit in an i64 serialize as JSON numbers, larger ones as decimal strings.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl IntPoly {
    pub fn new(coeffs: Vec<i128>) -> IntPoly {
        IntPoly::from_big(coeffs.into_iter().map(BigInt::from).collect())
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn one() -> IntPoly {
        IntPoly(vec![BigInt::one()])
    }

    /// 1 − c·t
    pub fn one_minus(c: i128) -> IntPoly {
        IntPoly::new(vec![1, -c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Coefficient of t^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_big(out)
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let (mut base, mut e, mut acc) = (self.clone(), n, IntPoly::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The polynomial Π(1 − αᵢ t) of degree `deg` whose reciprocal roots
    /// have power sums `sums[n-1] = Σ αᵢⁿ` (Newton's identities).
    pub fn from_power_sums(sums: &[BigInt], deg: usize) -> IntPoly {
        assert!(sums.len() >= deg);
        let mut c = vec![BigInt::zero(); deg + 1];
        c[0] = BigInt::one();
        for n in 1..=deg {
            let acc: BigInt = (1..=n).map(|i| &sums[i - 1] * &c[n - i]).sum();
            let n_big = BigInt::from(n);
            assert!((&acc % &n_big).is_zero(), "power sums are not integral");
            c[n] = -(acc / n_big);
        }
        IntPoly::from_big(c)
    }

    /// Σ αᵢⁿ for n = 1..=count, from c(t) = Π(1 − αᵢ t).
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        let mut s: Vec<BigInt> = Vec::with_capacity(count);
        for n in 1..=count {
            let mut v = -BigInt::from(n) * self.coeff(n);
            for i in 1..n {
                v -= &s[i - 1] * self.coeff(n - i);
            }
            s.push(v);
        }
        s
    }

    /// Moduli of the reciprocal roots with multiplicity. The squarefree
    /// factorization is exact; only simple roots are found numerically.
    pub fn reciprocal_root_moduli(&self) -> Vec<f64> {
        // reciprocal roots of c(t) are the roots of t^d c(1/t), whose
        // coefficients high-first are c's low-first
        let high_first: Vec<BigRational> = self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let mut out = Vec::new();
        for (factor, mult) in squarefree(&high_first) {
            let f: Vec<f64> = factor.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
            for z in polynomial_roots(&f) {
                let r = polish(&f, z).norm();
                out.extend(std::iter::repeat_n(r, mult));
            }
        }
        out
    }
}

type Coeffs = Vec<BigRational>;

fn trim(mut p: Coeffs) -> Coeffs {
    while p.first().is_some_and(|c| c.is_zero()) {
        p.remove(0);
    }
    p
}

fn monic(p: Coeffs) -> Coeffs {
    let p = trim(p);
    match p.first().cloned() {
        Some(lead) => p.into_iter().map(|c| c / &lead).collect(),
        None => p,
    }
}

fn diff(p: &Coeffs) -> Coeffs {
    let d = p.len().saturating_sub(1);
    trim(p[..d].iter().enumerate().map(|(i, c)| c * BigRational::from_integer(((d - i) as i64).into())).collect())
}

/// Quotient and remainder, high-first coefficients, b nonzero.
fn divmod(a: &Coeffs, b: &Coeffs) -> (Coeffs, Coeffs) {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    for i in 0..q.len() {
        let c = &r[i] / &b[0];
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = &r[i + j] - &c * bj;
        }
        q[i] = c;
    }
    let rem = trim(r[q.len()..].to_vec());
    (q, rem)
}

fn gcd(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// Yun's algorithm: p = Π fᵢ^i with squarefree, pairwise coprime fᵢ.
fn squarefree(p: &Coeffs) -> Vec<(Coeffs, usize)> {
    let p = monic(p.clone());
    if p.len() <= 1 {
        return Vec::new();
    }
    let dp = diff(&p);
    let a0 = gcd(&p, &dp);
    let mut b = divmod(&p, &a0).0;
    let mut c = divmod(&dp, &a0).0;
    let mut d = sub(&c, &diff(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = divmod(&b, &a).0;
        c = divmod(&d, &a).0;
        d = sub(&c, &diff(&b));
        i += 1;
    }
    out
}

fn sub(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let n = a.len().max(b.len());
    let pad = |p: &Coeffs| -> Coeffs {
        let mut v = vec![BigRational::zero(); n - p.len()];
        v.extend(p.iter().cloned());
        v
    };
    let (a, b) = (pad(a), pad(b));
    trim(a.iter().zip(&b).map(|(x, y)| x - y).collect())
}

fn polish(high_first: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..50 {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in high_first {
            dp = dp * z + p;
            p = p * z + c;
        }
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Roots of Σ a_i z^(d-i) (highest coefficient first) by Aberth iteration.
fn polynomial_roots(high_first: &[f64]) -> Vec<Complex64> {
    let d = high_first.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    let lead = high_first[0];
    let a: Vec<Complex64> = high_first.iter().map(|&c| Complex64::new(c / lead, 0.0)).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in &a {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let radius = 1.0 + a[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let sign = if neg { "-" } else { "+" };
            let mag = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            let body = if i > 0 && mag.is_one() { mono } else { format!("{mag}{mono}") };
            if out.is_empty() {
                out = if neg { format!("-{body}") } else { body };
            } else {
                out.push_str(&format!(" {sign} {body}"));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_round_trip() {
        let p = IntPoly::new(vec![1, -3, 2, 5, 4]);
        let s = p.power_sums(4);
        assert_eq!(IntPoly::from_power_sums(&s, 4), p);
    }

    #[test]
    fn root_moduli_of_supersingular_factor() {
        // 1 + 2t^2 has reciprocal roots ±i√2
        let m = IntPoly::new(vec![1, 0, 2]).reciprocal_root_moduli();
        assert_eq!(m.len(), 2);
        for r in m {
            assert!((r - 2f64.sqrt()).abs() < 1e-12);
        }
        let m = IntPoly::one_minus(2).pow(2).reciprocal_root_moduli();
        assert!(m.iter().all(|r| (r - 2.0).abs() < 1e-9), "{m:?}");
    }

    #[test]
    fn repeated_roots_are_split_exactly() {
        let p = IntPoly::one_minus(2).pow(4).mul(&IntPoly::new(vec![1, 2]).pow(2));
        let m = p.reciprocal_root_moduli();
        assert_eq!(m.len(), 6);
        assert!(m.iter().all(|r| (r - 2.0).abs() < 1e-12), "{m:?}");
        let parts = squarefree(&p.0.iter().map(|c| BigRational::from_integer(c.clone())).collect());
        let mults: Vec<usize> = parts.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![2, 4]);
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::new(vec![1, -4, 4]).to_string(), "1 - 4t + 4t^2");
        assert_eq!(IntPoly::new(vec![1, 0, 2]).to_string(), "1 + 2t^2");
    }
}
