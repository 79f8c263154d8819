//! Small binary fields GF(2^a), a in 2..=5, with pinned primitive moduli.

use super::CatalogError;

/// Field element as a bit-packed polynomial over GF(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2mElement {
    pub bits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf2Field {
    degree: u32,
    modulus: u32,
}

impl Gf2Field {
    /// x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1.
    pub fn new(degree: u32) -> Result<Self, CatalogError> {
        let modulus = match degree {
            2 => 0b111,
            3 => 0b1011,
            4 => 0b1_0011,
            5 => 0b10_0101,
            _ => {
                return Err(CatalogError::InvalidSpec {
                    spec: format!("GF(2^{degree})"),
                    reason: "field degree must be in 2..=5".into(),
                })
            }
        };
        Ok(Gf2Field { degree, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u32 {
        1 << self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn zero(&self) -> Gf2mElement {
        Gf2mElement { bits: 0 }
    }

    pub fn one(&self) -> Gf2mElement {
        Gf2mElement { bits: 1 }
    }

    /// The class of `x`, a primitive element for every pinned modulus.
    pub fn generator(&self) -> Gf2mElement {
        Gf2mElement { bits: 0b10 }
    }

    pub fn element(&self, bits: u32) -> Gf2mElement {
        assert!(bits < self.size(), "{bits} is not a field element");
        Gf2mElement { bits }
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf2mElement> {
        (0..self.size()).map(|bits| Gf2mElement { bits })
    }

    pub fn add(&self, a: Gf2mElement, b: Gf2mElement) -> Gf2mElement {
        Gf2mElement {
            bits: a.bits ^ b.bits,
        }
    }

    pub fn mul(&self, a: Gf2mElement, b: Gf2mElement) -> Gf2mElement {
        let (mut x, mut y, mut acc) = (a.bits, b.bits, 0u32);
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x & self.size() != 0 {
                x ^= self.modulus;
            }
        }
        Gf2mElement { bits: acc }
    }

    pub fn pow(&self, a: Gf2mElement, mut e: u32) -> Gf2mElement {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: Gf2mElement) -> Result<Gf2mElement, CatalogError> {
        if a.bits == 0 {
            return Err(CatalogError::DivisionByZero);
        }
        Ok(self.pow(a, self.size() - 2))
    }

    /// `a -> a^2`, the generator of the Galois group.
    pub fn frobenius_map(&self, a: Gf2mElement) -> Gf2mElement {
        self.mul(a, a)
    }

    /// Least `k >= 1` with `a^k = 1`.
    pub fn multiplicative_order(&self, a: Gf2mElement) -> Option<u32> {
        if a.bits == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != self.one() {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }
}
