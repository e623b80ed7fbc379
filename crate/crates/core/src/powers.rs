//! Fourth powers in `O/π^k`.
//!
//! The residue field is `F_2`, so every unit is `≡ 1 (mod π)` and the units
//! modulo `π^k` are exactly `1 + c₁π + … + c_{k-1}π^{k-1}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::qring::{Digits, QuadRing, RingElt};

/// A unit fourth-power residue together with the smallest unit producing it.
#[derive(Debug, Clone, Copy)]
pub struct UnitPower {
    pub residue: Digits,
    /// Unit `u` with `u⁴ ≡ residue`, exact at the ring's full precision.
    pub root: RingElt,
}

fn check_modulus(ring: QuadRing, k: u32) -> Result<()> {
    let max = ring.max_prec().saturating_sub(4).min(24);
    if k == 0 || k > max {
        return Err(Error::Precision { requested: k, max });
    }
    Ok(())
}

/// Units `1 + Σ cᵢπ^i` (`i < k`), ordered by the integer `Σ cᵢ2^{i-1}`.
pub fn units_mod(ring: QuadRing, k: u32) -> impl Iterator<Item = RingElt> {
    let count = 1u64 << (k - 1);
    (0..count).map(move |n| {
        let d = Digits::new(1 | (n << 1), k);
        ring.from_digits_exact(&d)
    })
}

/// The distinct values of `u⁴ mod π^k` over units `u`, each with the first
/// root found in [`units_mod`] order.
pub fn unit_power_table(ring: QuadRing, k: u32) -> Result<Vec<UnitPower>> {
    check_modulus(ring, k)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for u in units_mod(ring, k) {
        let residue = u.pow4().digits(k)?;
        if seen.insert(residue) {
            out.push(UnitPower { residue, root: u });
        }
    }
    Ok(out)
}

/// `{x⁴ mod π^k : x ∈ O×}` as digit strings.
pub fn unit_fourth_powers(ring: QuadRing, k: u32) -> Result<BTreeSet<Digits>> {
    Ok(unit_power_table(ring, k)?.into_iter().map(|p| p.residue).collect())
}

/// `{x⁴ mod π^k : x ∈ O}`: zero together with `π^{4j}` times the unit
/// fourth powers modulo `π^{k-4j}`.
pub fn fourth_power_values(ring: QuadRing, k: u32) -> Result<BTreeSet<Digits>> {
    check_modulus(ring, k)?;
    let mut out = BTreeSet::new();
    out.insert(Digits::new(0, k));
    let mut j = 0;
    while 4 * j < k {
        for p in unit_power_table(ring, k - 4 * j)? {
            let x = p.root.mul_pi_pow(j);
            out.insert(x.pow4().digits(k)?);
        }
        j += 1;
    }
    Ok(out)
}

/// A unit `α` with `α⁴ ≡ 1 + π⁵ (mod π⁶)`; multiplying a substitution value
/// by `α` flips the `π⁵`-digit of a contracted coefficient.
pub fn find_alpha(ring: QuadRing) -> Result<RingElt> {
    let target = ring.from_pi_poly(&[(0, 1), (5, 1)], 6)?;
    units_mod(ring, 6)
        .find(|u| u.pow4().congruent(&target, 6))
        .ok_or_else(|| Error::NotFound(format!("no α with α⁴ ≡ 1+π⁵ mod π⁶ in {}", ring.field())))
}
