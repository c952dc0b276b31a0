//! Table-driven arithmetic in small finite fields.
//!
//! Elements are the integers `0..q`. For `q = p^e` with `e > 1` the integer
//! `c0 + c1·p + … + c_{e-1}·p^{e-1}` stands for the residue class of
//! `c0 + c1·x + … + c_{e-1}·x^{e-1}` modulo a fixed monic irreducible
//! polynomial of degree `e`: the first one found when the lower coefficients
//! are enumerated in that same integer order.

use crate::error::{Error, Result};

pub type Elem = u8;

/// Largest field order accepted. Tables are `q²` bytes each.
pub const MAX_ORDER: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    q: usize,
    p: usize,
    e: u32,
    /// Coefficients `c0..c_{e-1}` of the modulus (leading 1 implied); empty for prime fields.
    modulus: Vec<Elem>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// Returns `(p, e)` with `q = p^e`, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn build_field(q: u64) -> Result<FieldSpec> {
    let (p, e) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
    if q > MAX_ORDER {
        return Err(Error::Unsupported(format!("field order {q} exceeds {MAX_ORDER}")));
    }
    let (q, p) = (q as usize, p as usize);
    let modulus = if e == 1 { Vec::new() } else { smallest_irreducible(p, e as usize) };

    let digits = |a: usize| -> Vec<usize> {
        let mut v = vec![0; e as usize];
        let mut a = a;
        for d in v.iter_mut() {
            *d = a % p;
            a /= p;
        }
        v
    };
    let code = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);

    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = code(&sum) as Elem;
            mul[a * q + b] = code(&poly_mulmod(&da, &db, &modulus, p)) as Elem;
        }
    }
    let mut neg = vec![0; q];
    let mut inv = vec![0; q];
    for a in 0..q {
        for b in 0..q {
            if add[a * q + b] == 0 {
                neg[a] = b as Elem;
            }
            if mul[a * q + b] == 1 {
                inv[a] = b as Elem;
            }
        }
    }
    Ok(FieldSpec { q, p, e, modulus, add, mul, neg, inv })
}

// Product of two residues (coefficient vectors of length e) reduced modulo
// x^e + Σ modulus[i] x^i. Prime fields pass an empty modulus.
fn poly_mulmod(a: &[usize], b: &[usize], modulus: &[Elem], p: usize) -> Vec<usize> {
    let e = a.len();
    let mut prod = vec![0usize; 2 * e - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    if e == 1 {
        return prod;
    }
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        // x^e ≡ −Σ modulus[i] x^i
        for (i, &m) in modulus.iter().enumerate() {
            let t = deg - e + i;
            prod[t] = (prod[t] + c * (p - m as usize % p)) % p;
        }
    }
    prod.truncate(e);
    prod
}

fn smallest_irreducible(p: usize, e: usize) -> Vec<Elem> {
    let count = p.pow(e as u32);
    (0..count)
        .map(|c| {
            let mut v = vec![0 as Elem; e];
            let mut c = c;
            for d in v.iter_mut() {
                *d = (c % p) as Elem;
                c /= p;
            }
            v
        })
        .find(|lower| is_irreducible(lower, p))
        .expect("an irreducible polynomial of every degree exists")
}

// Trial division of the monic polynomial x^e + Σ lower[i] x^i by every monic
// polynomial of degree 1..=e/2.
fn is_irreducible(lower: &[Elem], p: usize) -> bool {
    let e = lower.len();
    let mut f: Vec<usize> = lower.iter().map(|&c| c as usize).collect();
    f.push(1);
    for d in 1..=e / 2 {
        for c in 0..p.pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = c;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem(&f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

// Remainder of f by monic g over F_p.
fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &gi) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * gi) % p;
        }
        r.pop();
    }
    r
}

impl FieldSpec {
    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Lower coefficients of the reduction polynomial (empty for prime fields).
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let (mut base, mut acc) = (a, 1);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|a| a as Elem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(97), Some((97, 1)));
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert_eq!(build_field(6), Err(Error::NotAPrimePower(6)));
        assert_eq!(build_field(1), Err(Error::NotAPrimePower(1)));
        assert_eq!(build_field(0), Err(Error::NotAPrimePower(0)));
    }

    #[test]
    fn small_tables() {
        let f2 = build_field(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        assert_eq!(f2.mul(1, 1), 1);
        let f3 = build_field(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.mul(2, 2), 1);
        let f4 = build_field(4).unwrap();
        assert_eq!(f4.modulus(), &[1, 1]);
        assert_eq!(f4.mul(2, 2), 3);
    }

    #[test]
    fn chosen_moduli() {
        assert_eq!(build_field(8).unwrap().modulus(), &[1, 1, 0]);
        assert_eq!(build_field(9).unwrap().modulus(), &[1, 0]);
        assert_eq!(build_field(16).unwrap().modulus(), &[1, 1, 0, 0]);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = build_field(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if q <= 9 {
                        for c in f.elements() {
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for q in [4u64, 8, 9, 25, 27] {
            let f = build_field(q).unwrap();
            let p = f.characteristic() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in [4u64, 8, 9, 16] {
            let f = build_field(q).unwrap();
            let has_generator = f.elements().skip(1).any(|g| {
                (1..q - 1).all(|n| f.pow(g, n) != 1) && f.pow(g, q - 1) == 1
            });
            assert!(has_generator, "q={q}");
        }
    }
}
