//! Polynomials over F₂ packed into a `u64` (bit i is the coefficient of xⁱ).
//!
//! These are only used for field moduli, so degrees stay below 64 and every
//! product that is reduced immediately fits into 128 bits.

/// Degree of a packed polynomial, `None` for zero.
pub fn degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Carry-less product.
pub fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut a = a as u128;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// Remainder of a 128-bit polynomial modulo `m` (m ≠ 0).
pub fn rem128(mut a: u128, m: u64) -> u64 {
    let dm = degree(m).expect("zero modulus");
    let m = m as u128;
    while a != 0 {
        let da = 127 - a.leading_zeros();
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a as u64
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    rem128(clmul(a, b), m)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem128(a as u128, b);
        a = b;
        b = r;
    }
    a
}

/// `x^(2^n) mod m` by repeated squaring.
fn x_pow_2n(n: u32, m: u64) -> u64 {
    let mut r = rem128(0b10, m);
    for _ in 0..n {
        r = mulmod(r, r, m);
    }
    r
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(m: u64) -> bool {
    let Some(k) = degree(m) else { return false };
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    if x_pow_2n(k, m) != rem128(0b10, m) {
        return false;
    }
    prime_factors(k).into_iter().all(|r| {
        let h = x_pow_2n(k / r, m) ^ 0b10;
        gcd(m, rem128(h as u128, m)) == 1
    })
}

/// The irreducible polynomial of degree `k` with the smallest bit pattern.
pub fn lowest_irreducible(k: u32) -> u64 {
    assert!((1..=32).contains(&k), "degree out of range");
    let start = 1u64 << k;
    (start..start << 1)
        .find(|&m| is_irreducible(m))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        assert_eq!(lowest_irreducible(1), 0b10);
        assert_eq!(lowest_irreducible(2), 0b111);
        assert_eq!(lowest_irreducible(3), 0b1011);
        assert_eq!(lowest_irreducible(4), 0b10011);
        assert_eq!(lowest_irreducible(8), 0x11b);
        assert!(!is_irreducible(0b101)); // (x+1)^2
    }

    #[test]
    fn irreducible_count_degree_4() {
        // 3 irreducible quartics over F2
        let n = (16u64..32).filter(|&m| is_irreducible(m)).count();
        assert_eq!(n, 3);
    }
}
