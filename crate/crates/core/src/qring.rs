//! Finite-precision arithmetic in the ring of integers of a ramified
//! quadratic extension `K = Q_2(√m)`.
//!
//! Elements are stored in coordinates `a + b√m` with `a`, `b` reduced modulo
//! `2^B`. Since `2 = π²·unit`, the coordinates determine the element modulo
//! `π^{2B}`; every value additionally carries the number of π-adic digits
//! that are meaningful (`prec`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default coordinate width in bits (64 π-digits).
pub const DEFAULT_BITS: u32 = 32;

/// The six ramified quadratic extensions of `Q_2` with `m ≡ 2, 3 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "sqrt2")]
    Sqrt2,
    #[serde(rename = "sqrt-2")]
    SqrtNeg2,
    #[serde(rename = "sqrt10")]
    Sqrt10,
    #[serde(rename = "sqrt-10")]
    SqrtNeg10,
    #[serde(rename = "sqrt-1")]
    SqrtNeg1,
    #[serde(rename = "sqrt-5")]
    SqrtNeg5,
}

impl Field {
    pub const ALL: [Field; 6] = [
        Field::Sqrt2,
        Field::SqrtNeg2,
        Field::Sqrt10,
        Field::SqrtNeg10,
        Field::SqrtNeg1,
        Field::SqrtNeg5,
    ];

    /// Fields over which every additive quartic form in 11 variables has a
    /// nontrivial zero, and some form in 10 does not.
    pub const SETTLED: [Field; 4] = [Field::Sqrt2, Field::SqrtNeg2, Field::Sqrt10, Field::SqrtNeg10];

    pub fn tag(self) -> &'static str {
        match self {
            Field::Sqrt2 => "sqrt2",
            Field::SqrtNeg2 => "sqrt-2",
            Field::Sqrt10 => "sqrt10",
            Field::SqrtNeg10 => "sqrt-10",
            Field::SqrtNeg1 => "sqrt-1",
            Field::SqrtNeg5 => "sqrt-5",
        }
    }

    pub fn radicand(self) -> i64 {
        match self {
            Field::Sqrt2 => 2,
            Field::SqrtNeg2 => -2,
            Field::Sqrt10 => 10,
            Field::SqrtNeg10 => -10,
            Field::SqrtNeg1 => -1,
            Field::SqrtNeg5 => -5,
        }
    }

    pub fn is_settled(self) -> bool {
        Field::SETTLED.contains(&self)
    }

    /// Human-readable uniformizer.
    pub fn uniformizer(self) -> &'static str {
        match self {
            Field::Sqrt2 => "√2",
            Field::SqrtNeg2 => "√-2",
            Field::Sqrt10 => "√10",
            Field::SqrtNeg10 => "√-10",
            Field::SqrtNeg1 => "1 + √-1",
            Field::SqrtNeg5 => "1 + √-5",
        }
    }

    /// Reference π-adic expansion of 2 modulo π^7, least significant digit first.
    pub fn two_mod_pi7(self) -> &'static str {
        match self {
            Field::Sqrt2 => "0010000",
            Field::SqrtNeg2 => "0010100",
            Field::Sqrt10 => "0010001",
            Field::SqrtNeg10 => "0010101",
            Field::SqrtNeg1 => "0011011",
            Field::SqrtNeg5 => "0011101",
        }
    }

    pub fn params(self) -> FieldParams {
        FieldParams::new(self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.tag())
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Field::ALL
            .into_iter()
            .find(|f| f.tag() == s.trim())
            .ok_or_else(|| Error::UnknownField(s.to_string()))
    }
}

/// Arithmetic constants attached to a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldParams {
    pub field: Field,
    pub m: i64,
    /// π in the basis `(1, √m)`.
    pub pi_coords: (i64, i64),
    /// Field norm of π.
    pub norm_pi: i64,
    pub hensel_gamma: u32,
    pub degree: u32,
    pub ram_index: u32,
    pub tau: u32,
}

impl FieldParams {
    pub fn new(field: Field) -> Self {
        let m = field.radicand();
        let pi_coords = if m % 2 == 0 { (0, 1) } else { (1, 1) };
        let norm_pi = pi_coords.0 * pi_coords.0 - m * pi_coords.1 * pi_coords.1;
        let (p, ram_index, tau) = (2u32, 2u32, 2u32);
        FieldParams {
            field,
            m,
            pi_coords,
            norm_pi,
            hensel_gamma: ram_index / (p - 1) + ram_index * tau + 1,
            degree: 4,
            ram_index,
            tau,
        }
    }
}

/// A field together with the coordinate width used for its elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadRing {
    field: Field,
    bits: u32,
}

impl QuadRing {
    pub fn new(field: Field) -> Self {
        QuadRing { field, bits: DEFAULT_BITS }
    }

    pub fn with_bits(field: Field, bits: u32) -> Result<Self> {
        if !(4..=64).contains(&bits) {
            return Err(Error::InvalidArgument(format!("bit width {bits} outside 4..=64")));
        }
        Ok(QuadRing { field, bits })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn params(&self) -> FieldParams {
        self.field.params()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Largest representable number of π-digits.
    pub fn max_prec(&self) -> u32 {
        2 * self.bits
    }

    fn mask(&self) -> u64 {
        if self.bits == 64 {
            u64::MAX
        } else {
            (1u64 << self.bits) - 1
        }
    }

    fn m_odd(&self) -> bool {
        self.field.radicand() % 2 != 0
    }

    fn check_prec(&self, prec: u32) -> Result<()> {
        if prec == 0 || prec > self.max_prec() {
            return Err(Error::Precision { requested: prec, max: self.max_prec() });
        }
        Ok(())
    }

    pub(crate) fn raw(&self, a: u64, b: u64, prec: u32) -> RingElt {
        let mask = self.mask();
        RingElt { ring: *self, a: a & mask, b: b & mask, prec }
    }

    /// The element `a + b√m` known to `prec` π-digits.
    pub fn make(&self, a: i64, b: i64, prec: u32) -> Result<RingElt> {
        self.check_prec(prec)?;
        Ok(self.raw(a as u64, b as u64, prec))
    }

    pub fn zero(&self, prec: u32) -> Result<RingElt> {
        self.make(0, 0, prec)
    }

    pub fn one(&self, prec: u32) -> Result<RingElt> {
        self.make(1, 0, prec)
    }

    pub fn uniformizer(&self, prec: u32) -> Result<RingElt> {
        let (a, b) = self.params().pi_coords;
        self.make(a, b, prec)
    }

    /// `π^e` at the given precision.
    pub fn pi_pow(&self, e: u32, prec: u32) -> Result<RingElt> {
        self.check_prec(prec)?;
        let pi = self.uniformizer(self.max_prec())?;
        let mut acc = self.one(self.max_prec())?;
        for _ in 0..e.min(self.max_prec()) {
            acc = acc * pi;
        }
        if e >= self.max_prec() {
            acc = self.zero(self.max_prec())?;
        }
        Ok(acc.with_prec(prec))
    }

    /// Evaluates `Σ cᵢ·π^eᵢ` for a list of `(eᵢ, cᵢ)` pairs.
    pub fn from_pi_poly(&self, terms: &[(u32, i64)], prec: u32) -> Result<RingElt> {
        self.check_prec(prec)?;
        let max = self.max_prec();
        let pi = self.uniformizer(max)?;
        let top = terms.iter().map(|t| t.0).max().unwrap_or(0).min(max);
        let mut powers = Vec::with_capacity(top as usize + 1);
        powers.push(self.one(max)?);
        for i in 1..=top as usize {
            let next = powers[i - 1] * pi;
            powers.push(next);
        }
        let mut acc = self.zero(max)?;
        for &(e, c) in terms {
            if e >= max {
                continue;
            }
            acc = acc + self.make(c, 0, max)? * powers[e as usize];
        }
        Ok(acc.with_prec(prec))
    }

    /// Rebuilds `Σ cᵢπ^i` from a digit string; precision is the string length.
    pub fn from_digits(&self, digits: &Digits) -> Result<RingElt> {
        self.check_prec(digits.len())?;
        let terms: Vec<(u32, i64)> = digits.iter().enumerate().filter(|(_, d)| *d == 1).map(|(i, _)| (i as u32, 1)).collect();
        self.from_pi_poly(&terms, digits.len())
    }

    /// The exact element `Σ cᵢπ^i` at the ring's full precision.
    pub fn from_digits_exact(&self, digits: &Digits) -> RingElt {
        let terms: Vec<(u32, i64)> = digits.support().into_iter().map(|i| (i, 1)).collect();
        self.from_pi_poly(&terms, self.max_prec()).expect("max precision is valid")
    }

    pub(crate) fn same(&self, other: &QuadRing) -> Result<()> {
        if self != other {
            return Err(Error::FieldMismatch {
                left: format!("{}/{}b", self.field, self.bits),
                right: format!("{}/{}b", other.field, other.bits),
            });
        }
        Ok(())
    }
}

/// π-adic valuation of a finite-precision element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Exact(u32),
    /// The element vanishes at its precision; only a lower bound is known.
    AtLeast(u32),
}

impl Valuation {
    pub fn exact(self) -> Option<u32> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// The known lower bound, exact or not.
    pub fn lower_bound(self) -> u32 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// An element of O at finite π-adic precision.
#[derive(Debug, Clone, Copy)]
pub struct RingElt {
    ring: QuadRing,
    a: u64,
    b: u64,
    prec: u32,
}

impl RingElt {
    pub fn ring(&self) -> QuadRing {
        self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Raw coordinates reduced modulo `2^B`.
    pub fn coords(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    /// Lowers the precision to `min(prec, k)`.
    pub fn with_prec(mut self, k: u32) -> RingElt {
        self.prec = self.prec.min(k).max(1);
        self
    }

    /// Treats the stored coordinates as an exact element of O, i.e. picks
    /// the canonical lift of this residue to full precision.
    pub fn lift_exact(&self) -> RingElt {
        RingElt { prec: self.ring.max_prec(), ..*self }
    }

    pub fn checked_add(&self, other: &RingElt) -> Result<RingElt> {
        self.ring.same(&other.ring)?;
        Ok(self.ring.raw(self.a.wrapping_add(other.a), self.b.wrapping_add(other.b), self.prec.min(other.prec)))
    }

    pub fn checked_sub(&self, other: &RingElt) -> Result<RingElt> {
        self.ring.same(&other.ring)?;
        Ok(self.ring.raw(self.a.wrapping_sub(other.a), self.b.wrapping_sub(other.b), self.prec.min(other.prec)))
    }

    pub fn checked_mul(&self, other: &RingElt) -> Result<RingElt> {
        self.ring.same(&other.ring)?;
        let m = self.ring.field.radicand() as u64;
        let a = self.a.wrapping_mul(other.a).wrapping_add(m.wrapping_mul(self.b.wrapping_mul(other.b)));
        let b = self.a.wrapping_mul(other.b).wrapping_add(self.b.wrapping_mul(other.a));
        Ok(self.ring.raw(a, b, self.prec.min(other.prec)))
    }

    pub fn pow4(&self) -> RingElt {
        let sq = *self * *self;
        sq * sq
    }

    pub fn valuation(&self) -> Valuation {
        if self.a == 0 && self.b == 0 {
            return Valuation::AtLeast(self.prec);
        }
        let t = self.a.trailing_zeros().min(self.b.trailing_zeros());
        let (a, b) = (self.a >> t, self.b >> t);
        let odd_part_is_unit = if self.ring.m_odd() { (a ^ b) & 1 == 1 } else { a & 1 == 1 };
        let v = 2 * t + u32::from(!odd_part_is_unit);
        if v >= self.prec {
            Valuation::AtLeast(self.prec)
        } else {
            Valuation::Exact(v)
        }
    }

    pub fn is_unit(&self) -> bool {
        self.residue_bit() == 1
    }

    /// True when `self ≡ other (mod π^k)`; `k` is clamped to both precisions.
    pub fn congruent(&self, other: &RingElt, k: u32) -> bool {
        let k = k.min(self.prec).min(other.prec);
        match (*self - *other).with_prec(k).valuation() {
            Valuation::AtLeast(_) => true,
            Valuation::Exact(v) => v >= k,
        }
    }

    /// Image in the residue field `O/π ≅ F_2`.
    fn residue_bit(&self) -> u8 {
        let bit = if self.ring.m_odd() { (self.a ^ self.b) & 1 } else { self.a & 1 };
        bit as u8
    }

    /// Exact quotient by π, assuming the residue bit is zero.
    fn div_pi_unchecked(&self) -> RingElt {
        let ring = self.ring;
        let m = ring.field.radicand();
        let prec = self.prec.saturating_sub(1).max(1);
        if m % 2 == 0 {
            // (a + b√m)/√m = b + (a/m)√m
            let half_m_inv = inv_odd((m / 2) as u64);
            let a_over_m = (self.a >> 1).wrapping_mul(half_m_inv);
            ring.raw(self.b, a_over_m, prec)
        } else {
            // multiply by the conjugate 1 - √m, then divide by N(π) = 1 - m
            let m = m as u64;
            let mask = ring.mask();
            let a = self.a.wrapping_sub(m.wrapping_mul(self.b)) & mask;
            let b = self.b.wrapping_sub(self.a) & mask;
            let odd_inv = inv_odd(((1 - ring.field.radicand()) / 2) as u64);
            ring.raw((a >> 1).wrapping_mul(odd_inv), (b >> 1).wrapping_mul(odd_inv), prec)
        }
    }

    pub fn divide_by_pi(&self) -> Result<RingElt> {
        if self.residue_bit() != 0 {
            return Err(Error::NotDivisible);
        }
        if self.prec <= 1 {
            return Err(Error::PrecisionExhausted);
        }
        Ok(self.div_pi_unchecked())
    }

    /// Multiplies by `π^e`. The shift is exact, so the number of known
    /// digits grows by `e` (capped at the ring's maximum).
    pub fn mul_pi_pow(&self, e: u32) -> RingElt {
        let p = self.ring.pi_pow(e, self.ring.max_prec()).expect("max precision is valid");
        let mut out = *self * p;
        out.prec = (self.prec + e).min(self.ring.max_prec());
        out
    }

    /// The first `n` π-adic digits `c₀c₁…c_{n-1}` with `cᵢ ∈ {0, 1}`.
    pub fn digits(&self, n: u32) -> Result<Digits> {
        if n > self.prec || n > 64 {
            return Err(Error::Precision { requested: n, max: self.prec.min(64) });
        }
        let mut x = *self;
        let mut bits = 0u64;
        for i in 0..n {
            let c = x.residue_bit();
            bits |= u64::from(c) << i;
            if c == 1 {
                x = x - self.ring.raw(1, 0, x.prec);
            }
            if i + 1 < n {
                x = x.div_pi_unchecked();
            }
        }
        Ok(Digits { bits, len: n })
    }

    /// Digits up to the element's full precision (capped at 64).
    pub fn all_digits(&self) -> Digits {
        self.digits(self.prec.min(64)).expect("within precision")
    }
}

impl fmt::Display for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod π^{})", self.all_digits(), self.prec)
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for RingElt {
            type Output = RingElt;

            fn $method(self, rhs: RingElt) -> RingElt {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for RingElt {
    type Output = RingElt;

    fn neg(self) -> RingElt {
        self.ring.raw(self.a.wrapping_neg(), self.b.wrapping_neg(), self.prec)
    }
}

/// Inverse of an odd integer modulo 2^64.
fn inv_odd(x: u64) -> u64 {
    debug_assert!(x & 1 == 1);
    let mut inv = x;
    for _ in 0..6 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(x.wrapping_mul(inv)));
    }
    inv
}

/// A π-adic digit string, least significant digit first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digits {
    bits: u64,
    len: u32,
}

impl Digits {
    pub fn new(bits: u64, len: u32) -> Self {
        assert!(len <= 64);
        let bits = if len == 64 { bits } else { bits & ((1u64 << len) - 1) };
        Digits { bits, len }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Digits packed with `c₀` in bit 0.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: u32) -> u8 {
        ((self.bits >> i) & 1) as u8
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    pub fn with_flipped(&self, i: u32) -> Digits {
        Digits::new(self.bits ^ (1u64 << i), self.len)
    }

    /// Exponents of the nonzero digits.
    pub fn support(&self) -> Vec<u32> {
        (0..self.len).filter(|&i| self.get(i) == 1).collect()
    }

    fn lex_key(&self) -> u64 {
        if self.len == 0 {
            0
        } else {
            self.bits.reverse_bits() >> (64 - self.len)
        }
    }
}

impl Ord for Digits {
    /// Shorter strings first, then lexicographic in `c₀c₁c₂…`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for Digits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Digits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.iter() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Digits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > 64 {
            return Err(Error::Precision { requested: s.len() as u32, max: 64 });
        }
        let mut bits = 0u64;
        for (i, ch) in s.char_indices() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Syntax { pos: i, msg: format!("digit expected, found `{ch}`") }),
            }
        }
        Ok(Digits::new(bits, s.len() as u32))
    }
}
