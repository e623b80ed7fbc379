//! Contractions: merging same-level variables through substitutions
//! `x₁ = b₁y, x₂ = b₂y`, with bookkeeping of the levels at which the
//! resulting coefficient has a selectable digit ("free" levels).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::powers::find_alpha;
use crate::qring::{QuadRing, RingElt, Valuation};

/// How far two same-level units contract with substitution `(1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCase {
    /// π-digits differ: exactly one level up.
    OneUp,
    /// π- and π²-digits agree: exactly two levels up.
    TwoUp,
    /// π-digits agree, π²-digits differ: at least three levels up.
    ThreePlusUp,
}

impl PairCase {
    /// Guaranteed rise in level, and whether it is exact.
    pub fn rise(self) -> (u32, bool) {
        match self {
            PairCase::OneUp => (1, true),
            PairCase::TwoUp => (2, true),
            PairCase::ThreePlusUp => (3, false),
        }
    }
}

/// Where a tracked variable came from.
#[derive(Debug, Clone)]
pub enum Provenance {
    /// A variable of the original form; `scale` is its substitution value
    /// (1 unless toggled).
    Original { index: usize, coeff: RingElt, scale: RingElt },
    /// `Σ childᵢ·subᵢ⁴`, formed at `base_level`.
    Contracted { children: Vec<TrackedVariable>, subs: Vec<RingElt>, base_level: u32 },
}

#[derive(Debug, Clone)]
pub struct TrackedVariable {
    coeff: RingElt,
    level: u32,
    free_levels: BTreeSet<u32>,
    provenance: Provenance,
}

fn level_of(c: &RingElt) -> Result<u32> {
    match c.valuation() {
        Valuation::Exact(v) => Ok(v),
        Valuation::AtLeast(_) => Err(Error::DegenerateContraction),
    }
}

impl TrackedVariable {
    /// Variable `index` of a form with coefficient `coeff`.
    pub fn original(index: usize, coeff: RingElt) -> Result<Self> {
        let level = level_of(&coeff).map_err(|_| Error::ZeroCoefficient { index })?;
        let one = coeff.ring().one(coeff.ring().max_prec())?;
        Ok(TrackedVariable {
            coeff,
            level,
            free_levels: BTreeSet::new(),
            provenance: Provenance::Original { index, coeff, scale: one },
        })
    }

    /// Declares an originating variable free five levels above its own.
    pub fn mark_free(mut self) -> Self {
        self.free_levels.insert(self.level + 5);
        self
    }

    pub fn coeff(&self) -> &RingElt {
        &self.coeff
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn free_levels(&self) -> &BTreeSet<u32> {
        &self.free_levels
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn ring(&self) -> QuadRing {
        self.coeff.ring()
    }

    /// Digit of the coefficient at `level + i` (digit `i` of the unit part).
    pub fn unit_digit(&self, i: u32) -> u8 {
        self.coeff.digits(self.level + i + 1).map(|d| d.get(self.level + i)).unwrap_or(0)
    }

    /// Recomputes `coeff` from the provenance after a substitution changed.
    fn rebuild(provenance: Provenance, free_levels: BTreeSet<u32>) -> Result<Self> {
        let coeff = match &provenance {
            Provenance::Original { coeff, scale, .. } => *coeff * scale.pow4(),
            Provenance::Contracted { children, subs, .. } => {
                let ring = children[0].ring();
                let mut acc = ring.zero(ring.max_prec())?;
                for (c, s) in children.iter().zip(subs) {
                    acc = acc + c.coeff * s.pow4();
                }
                acc
            }
        };
        let level = level_of(&coeff)?;
        Ok(TrackedVariable { coeff, level, free_levels, provenance })
    }

    /// Recomputes the root coefficient from the original form's coefficients
    /// by replaying every substitution.
    pub fn replay(&self, original: &[RingElt]) -> Result<RingElt> {
        match &self.provenance {
            Provenance::Original { index, scale, .. } => {
                let a = original.get(*index).ok_or(Error::LengthMismatch { expected: index + 1, actual: original.len() })?;
                Ok(*a * scale.pow4())
            }
            Provenance::Contracted { children, subs, .. } => {
                let ring = self.ring();
                let mut acc = ring.zero(ring.max_prec())?;
                for (c, s) in children.iter().zip(subs) {
                    acc = acc + c.replay(original)? * s.pow4();
                }
                Ok(acc)
            }
        }
    }

    /// Values of the original variables under which the consumed part of the
    /// form equals `coeff·y⁴` (with `y = 1`).
    pub fn substitution(&self) -> BTreeMap<usize, RingElt> {
        let mut out = BTreeMap::new();
        self.collect_substitution(None, &mut out);
        out
    }

    fn collect_substitution(&self, factor: Option<RingElt>, out: &mut BTreeMap<usize, RingElt>) {
        match &self.provenance {
            Provenance::Original { index, scale, .. } => {
                let v = match factor {
                    Some(f) => f * *scale,
                    None => *scale,
                };
                out.insert(*index, v);
            }
            Provenance::Contracted { children, subs, .. } => {
                for (c, s) in children.iter().zip(subs) {
                    let f = match factor {
                        Some(f) => f * *s,
                        None => *s,
                    };
                    c.collect_substitution(Some(f), out);
                }
            }
        }
    }
}

/// Classifies a pair of units by their π- and π²-digits.
pub fn classify_pair(u1: &RingElt, u2: &RingElt) -> Result<PairCase> {
    if !u1.is_unit() || !u2.is_unit() {
        return Err(Error::NonUnit);
    }
    let d1 = u1.digits(3.min(u1.prec()))?;
    let d2 = u2.digits(3.min(u2.prec()))?;
    Ok(case_from_digits([d1.get(1), d1.get(2)], [d2.get(1), d2.get(2)]))
}

fn case_from_digits(x: [u8; 2], y: [u8; 2]) -> PairCase {
    if x[0] != y[0] {
        PairCase::OneUp
    } else if x[1] == y[1] {
        PairCase::TwoUp
    } else {
        PairCase::ThreePlusUp
    }
}

/// [`classify_pair`] for two tracked variables at the same level.
pub fn classify_variables(v1: &TrackedVariable, v2: &TrackedVariable) -> Result<PairCase> {
    if v1.level != v2.level {
        return Err(Error::LevelMismatch(v1.level, v2.level));
    }
    Ok(case_from_digits([v1.unit_digit(1), v1.unit_digit(2)], [v2.unit_digit(1), v2.unit_digit(2)]))
}

/// Contracts two same-level variables with substitution values `b1`, `b2`.
///
/// The result is free at `k + 5` and inherits the parents' free levels.
/// `DegenerateContraction` means `a₁b₁⁴ + a₂b₂⁴` vanishes at working
/// precision, i.e. the substitution is itself a zero of the pair.
pub fn contract_pair(v1: &TrackedVariable, v2: &TrackedVariable, b1: &RingElt, b2: &RingElt) -> Result<TrackedVariable> {
    if v1.level != v2.level {
        return Err(Error::LevelMismatch(v1.level, v2.level));
    }
    if !b1.is_unit() && !b2.is_unit() {
        return Err(Error::NonUnit);
    }
    let k = v1.level;
    let mut free = &v1.free_levels | &v2.free_levels;
    free.insert(k + 5);
    TrackedVariable::rebuild(
        Provenance::Contracted { children: vec![v1.clone(), v2.clone()], subs: vec![*b1, *b2], base_level: k },
        free,
    )
}

/// Contracts with substitution `(1, 1)`.
pub fn contract_unit_pair(v1: &TrackedVariable, v2: &TrackedVariable) -> Result<TrackedVariable> {
    let one = v1.ring().one(v1.ring().max_prec())?;
    contract_pair(v1, v2, &one, &one)
}

/// Flips the coefficient digit at a free level by multiplying one
/// substitution value by `α` (`α⁴ ≡ 1 + π⁵ mod π⁶`). Digits below the
/// target level are unchanged.
pub fn toggle_pi5(v: &TrackedVariable, target_level: u32) -> Result<TrackedVariable> {
    if !v.free_levels.contains(&target_level) {
        return Err(Error::LevelNotFree(target_level));
    }
    let alpha = find_alpha(v.ring())?;
    toggle_inner(v, target_level, &alpha)
}

fn toggle_inner(v: &TrackedVariable, target: u32, alpha: &RingElt) -> Result<TrackedVariable> {
    let provenance = match &v.provenance {
        Provenance::Original { index, coeff, scale } => {
            if level_of(coeff)? + 5 != target {
                return Err(Error::LevelNotFree(target));
            }
            Provenance::Original { index: *index, coeff: *coeff, scale: *scale * *alpha }
        }
        Provenance::Contracted { children, subs, base_level } => {
            let mut children = children.clone();
            let mut subs = subs.clone();
            if base_level + 5 == target {
                let i = (0..subs.len()).rev().find(|&i| subs[i].is_unit()).ok_or(Error::NonUnit)?;
                subs[i] = subs[i] * *alpha;
            } else {
                let i = children
                    .iter()
                    .position(|c| c.free_levels.contains(&target))
                    .ok_or(Error::LevelNotFree(target))?;
                children[i] = toggle_inner(&children[i], target, alpha)?;
            }
            Provenance::Contracted { children, subs, base_level: *base_level }
        }
    };
    TrackedVariable::rebuild(provenance, v.free_levels.clone())
}

/// Contracts four same-level variables with a common π-digit, paired so that
/// each pair shares its π²- and π³-digits, to a variable at least four levels
/// up (free at `k + 5`).
pub fn contract_four(vs: &[TrackedVariable; 4], pairing: [(usize, usize); 2]) -> Result<TrackedVariable> {
    let k = vs[0].level;
    if let Some(v) = vs.iter().find(|v| v.level != k) {
        return Err(Error::LevelMismatch(k, v.level));
    }
    let mut used = [false; 4];
    for &(i, j) in &pairing {
        if i >= 4 || j >= 4 || i == j || used[i] || used[j] {
            return Err(Error::InvalidPairing(format!("{pairing:?} is not a perfect matching")));
        }
        used[i] = true;
        used[j] = true;
        if vs[i].unit_digit(2) != vs[j].unit_digit(2) || vs[i].unit_digit(3) != vs[j].unit_digit(3) {
            return Err(Error::InvalidPairing(format!("variables {i} and {j} differ in π²/π³ digits")));
        }
    }
    let pi_digit = vs[0].unit_digit(1);
    if vs.iter().any(|v| v.unit_digit(1) != pi_digit) {
        return Err(Error::InvalidPairing("π-digits differ".into()));
    }
    let one = vs[0].ring().one(vs[0].ring().max_prec())?;
    let mut free: BTreeSet<u32> = vs.iter().flat_map(|v| v.free_levels.iter().copied()).collect();
    free.insert(k + 5);
    let out = TrackedVariable::rebuild(
        Provenance::Contracted { children: vs.to_vec(), subs: vec![one; 4], base_level: k },
        free,
    )?;
    debug_assert!(out.level >= k + 4);
    Ok(out)
}

/// Raises a pair of level-`k` variables to level `k + t` by repeatedly
/// contracting with ladder variables or toggling free levels.
///
/// With `stop_at = Some(s)` the procedure instead aims for level exactly `s`,
/// which must be reached directly or be a free level of the result.
pub fn slide(
    anchors: (&TrackedVariable, &TrackedVariable),
    ladder: &[TrackedVariable],
    t: u32,
    stop_at: Option<u32>,
) -> Result<TrackedVariable> {
    let k = anchors.0.level;
    let target = k + t;
    let mut y = contract_unit_pair(anchors.0, anchors.1)?;
    let mut used = vec![false; ladder.len()];
    loop {
        if let Some(s) = stop_at {
            if y.level == s {
                return Ok(y);
            }
            if y.level > s {
                let z = toggle_pi5(&y, s)?;
                debug_assert_eq!(z.level, s);
                return Ok(z);
            }
        } else if y.level >= target {
            return Ok(y);
        }
        let l = y.level;
        if y.free_levels.contains(&l) && Some(l) != stop_at {
            y = toggle_pi5(&y, l)?;
            continue;
        }
        match (0..ladder.len()).find(|&i| !used[i] && ladder[i].level == l) {
            Some(i) => {
                used[i] = true;
                y = contract_unit_pair(&y, &ladder[i])?;
            }
            None => return Err(Error::MissingRung(l)),
        }
    }
}
