//! Dense indexing of the residue ring `O/π^n`, which has exactly `2^n`
//! elements.
//!
//! A residue is keyed by reduced coordinates rather than by its digit string:
//! for `n = 2j` the ideal `π^n O` is `2^j O`, so the key is
//! `(a mod 2^j, b mod 2^j)`; for `n = 2j + 1` the ideal is `2^j π O`, whose
//! coordinate lattice is reduced to `(a mod 2^{j+1}, b mod 2^j)`. Keys fit in
//! `n` bits and addition is a couple of integer operations.

use crate::qring::{Digits, QuadRing, RingElt};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueRing {
    ring: QuadRing,
    n: u32,
    a_bits: u32,
    b_bits: u32,
    m_odd: bool,
}

impl ResidueRing {
    /// `O/π^n`; `n` is limited to 24 so tables stay addressable.
    pub fn new(ring: QuadRing, n: u32) -> Self {
        assert!((1..=24).contains(&n), "residue modulus π^{n} outside 1..=24");
        let j = n / 2;
        ResidueRing {
            ring,
            n,
            a_bits: j + n % 2,
            b_bits: j,
            m_odd: ring.field().radicand() % 2 != 0,
        }
    }

    pub fn ring(&self) -> QuadRing {
        self.ring
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        1usize << self.n
    }

    fn canonical(&self, a: u64, b: u64) -> u32 {
        let amask = (1u64 << self.a_bits) - 1;
        let (mut a, mut b) = (a, b);
        if self.m_odd && self.n % 2 == 1 {
            // lattice 2^j·πO contains (2^j, 2^j): fold b's bit j into a
            let j = self.b_bits;
            if (b >> j) & 1 == 1 {
                b = b.wrapping_sub(1 << j);
                a = a.wrapping_sub(1 << j);
            }
        }
        let bmask = (1u64 << self.b_bits) - 1;
        ((a & amask) | ((b & bmask) << self.a_bits)) as u32
    }

    pub fn key(&self, x: &RingElt) -> u32 {
        debug_assert!(x.ring() == self.ring);
        let (a, b) = x.coords();
        self.canonical(a, b)
    }

    fn split(&self, key: u32) -> (u64, u64) {
        let key = u64::from(key);
        (key & ((1 << self.a_bits) - 1), key >> self.a_bits)
    }

    /// Smallest-coordinate representative of a key, at precision `n`.
    pub fn element(&self, key: u32) -> RingElt {
        let (a, b) = self.split(key);
        self.ring.make(a as i64, b as i64, self.n).expect("modulus within ring precision")
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let (a1, b1) = self.split(x);
        let (a2, b2) = self.split(y);
        self.canonical(a1 + a2, b1 + b2)
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        let (a1, b1) = self.split(x);
        let (a2, b2) = self.split(y);
        self.canonical(a1.wrapping_sub(a2), b1.wrapping_sub(b2))
    }

    pub fn neg(&self, x: u32) -> u32 {
        self.sub(0, x)
    }

    pub fn digits(&self, key: u32) -> Digits {
        self.element(key).digits(self.n).expect("element carries n digits")
    }

    pub fn is_zero(&self, key: u32) -> bool {
        key == 0
    }
}
