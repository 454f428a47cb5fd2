//! Arithmetic in GF(2^m), 2 <= m <= 16.
//!
//! Elements are bit-packed F_2-polynomials: bit `i` holds the coefficient of
//! `x^i`. Multiplication is carry-less and reduced modulo the field modulus by
//! shift-XOR, so no tables are needed. Subtraction is addition.

use std::fmt;

use crate::error::{Error, Result};

/// A field element as a bitmask. The owning [`FieldSpec`] travels with the
/// container (matrix, polynomial, derivation) that holds the element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn bits(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::LowerHex for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// GF(2^m) defined by an irreducible modulus, with a primitive element used for
/// power notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    m: u32,
    modulus: u32,
    generator: Elem,
}

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 16;

fn degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

/// Remainder of `a` modulo `b` as F_2-polynomials.
fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Trial division by every polynomial of degree 1..=m/2.
pub fn is_irreducible(modulus: u32) -> bool {
    let m = degree(modulus);
    if m < 1 {
        return false;
    }
    (1..=m / 2).all(|d| ((1u32 << d)..(1u32 << (d + 1))).all(|p| poly_rem(modulus, p) != 0))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldSpec {
    /// Validates the modulus and picks (or checks) a primitive element.
    pub fn new(m: u32, modulus: u32, generator: Option<u32>) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::InvalidDegree(m));
        }
        if degree(modulus) != m as i32 {
            return Err(Error::ModulusDegree { modulus, m });
        }
        if !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let mut field = FieldSpec {
            m,
            modulus,
            generator: Elem::ONE,
        };
        field.generator = match generator {
            Some(g) => {
                let g = field.elem(g)?;
                if !field.is_primitive(g) {
                    return Err(Error::NotPrimitive(g.bits()));
                }
                g
            }
            None => field
                .elements()
                .find(|&a| field.is_primitive(a))
                .expect("every finite field has a primitive element"),
        };
        Ok(field)
    }

    /// GF(16) with x^4 + x + 1.
    pub fn gf16() -> Self {
        FieldSpec::new(4, 0x13, None).expect("x^4 + x + 1 is irreducible")
    }

    /// GF(256) with x^8 + x^4 + x^3 + x^2 + 1.
    pub fn gf256() -> Self {
        FieldSpec::new(8, 0x11d, None).expect("0x11d is irreducible")
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Number of elements, 2^m.
    pub fn size(&self) -> u32 {
        1 << self.m
    }

    pub fn elem(&self, bits: u32) -> Result<Elem> {
        if bits >= self.size() {
            return Err(Error::ElementOutOfRange { bits, m: self.m });
        }
        Ok(Elem(bits as u16))
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.bits() < self.size()
    }

    /// All elements in bitmask order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size()).map(|b| Elem(b as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.size()).map(|b| Elem(b as u16))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(a.0 ^ b.0)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, b)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let top = 1u32 << self.m;
        let mut a = a.bits();
        let mut b = b.bits();
        let mut acc = 0u32;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        Elem(acc as u16)
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// a^(2^m - 2).
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.size() as u64 - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element; `None` for zero.
    pub fn multiplicative_order(&self, a: Elem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut order = self.size() as u64 - 1;
        for p in prime_factors(order) {
            while order.is_multiple_of(p) && self.pow(a, order / p) == Elem::ONE {
                order /= p;
            }
        }
        Some(order)
    }

    pub fn is_primitive(&self, a: Elem) -> bool {
        self.multiplicative_order(a) == Some(self.size() as u64 - 1)
    }

    /// generator^k.
    pub fn power(&self, k: u64) -> Elem {
        self.pow(self.generator, k)
    }

    /// Discrete log to the configured generator, by scan.
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let mut x = Elem::ONE;
        for k in 0..self.size() - 1 {
            if x == a {
                return Some(k);
            }
            x = self.mul(x, self.generator);
        }
        None
    }
}

/// Frobenius automorphism a -> a^(2^k) of a fixed field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    field: FieldSpec,
    k: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Automorphism {
    pub fn new(field: FieldSpec, k: u32) -> Result<Self> {
        if k >= field.degree() {
            return Err(Error::InvalidExponent { k, m: field.degree() });
        }
        Ok(Automorphism { field, k })
    }

    pub fn identity(field: FieldSpec) -> Self {
        Automorphism { field, k: 0 }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0
    }

    /// Smallest n > 0 with theta^n = id.
    pub fn order(&self) -> u32 {
        if self.k == 0 {
            1
        } else {
            self.field.degree() / gcd(self.field.degree(), self.k)
        }
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.frobenius_power(a, self.k)
    }

    /// theta^i(a).
    #[inline]
    pub fn apply_pow(&self, a: Elem, i: u64) -> Elem {
        let shift = (self.k as u64 * i) % self.field.degree() as u64;
        self.frobenius_power(a, shift as u32)
    }

    fn frobenius_power(&self, mut a: Elem, squarings: u32) -> Elem {
        for _ in 0..squarings {
            a = self.field.square(a);
        }
        a
    }

    /// The fixed subfield {a : theta(a) = a}, by exhaustive scan.
    pub fn fixed_field(&self) -> Vec<Elem> {
        self.field.elements().filter(|&a| self.apply(a) == a).collect()
    }

    pub fn fixes(&self, a: Elem) -> bool {
        self.apply(a) == a
    }
}
