//! Reachability of residues `Σ aᵢxᵢ⁴ mod π^N` by dynamic programming over the
//! `2^N` residues, tracking the lowest coefficient level among unit-valued
//! variables.

use std::collections::BTreeSet;

use super::menu::{MenuBuilder, TermChoice};
use crate::error::{Error, Result};
use crate::forms::AdditiveForm;
use crate::qring::RingElt;
use crate::residue::ResidueRing;

/// Largest modulus exponent accepted by [`dp_reach`].
pub const MAX_DP_MODULUS: u32 = 12;

const INF: u8 = u8::MAX;

/// Suffix tables of minimal nonzero-variable counts.
///
/// `suffix[i][r·S + s]` is the fewest nonzero variables among `i..n` whose
/// terms sum to residue `r` while the lowest unit-variable level is state
/// `s` (`s = unit_levels.len()` means no unit variable).
#[derive(Debug, Clone)]
pub struct ReachTable {
    rr: ResidueRing,
    menus: Vec<Vec<TermChoice>>,
    keys: Vec<Vec<u32>>,
    states: Vec<Vec<usize>>,
    unit_levels: Vec<u32>,
    suffix: Vec<Vec<u8>>,
}

/// Summary of how a residue can be reached.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReachFlags {
    pub reachable: bool,
    pub has_unit: bool,
    /// Achievable values of the lowest coefficient level among unit-valued
    /// variables.
    pub unit_levels: BTreeSet<u32>,
    /// Fewest nonzero variables needed.
    pub min_nonzero: Option<u8>,
}

/// Builds the reachability table of `form` modulo `π^n`.
pub fn dp_reach(form: &AdditiveForm, n: u32) -> Result<ReachTable> {
    if n == 0 || n > MAX_DP_MODULUS {
        return Err(Error::InvalidArgument(format!("DP modulus π^{n} outside 1..={MAX_DP_MODULUS}")));
    }
    let ring = form.ring();
    let rr = ResidueRing::new(ring, n);
    let mut builder = MenuBuilder::new(ring);
    let menus: Vec<Vec<TermChoice>> = form
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| builder.menu(i, a, n))
        .collect::<Result<_>>()?;
    let levels = form.levels();
    let unit_levels: Vec<u32> = levels.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let none = unit_levels.len();
    let keys: Vec<Vec<u32>> = menus.iter().map(|m| m.iter().map(|c| rr.key(&c.term_value)).collect()).collect();
    let states: Vec<Vec<usize>> = menus
        .iter()
        .zip(&levels)
        .map(|(m, l)| {
            let s = unit_levels.binary_search(l).expect("level listed");
            m.iter().map(|c| if c.is_unit() { s } else { none }).collect()
        })
        .collect();

    let width = none + 1;
    let size = rr.size();
    let nvars = menus.len();
    let mut suffix = vec![vec![INF; size * width]; nvars + 1];
    suffix[nvars][none] = 0;
    for i in (0..nvars).rev() {
        let (head, tail) = suffix.split_at_mut(i + 1);
        let (next, cur) = (&tail[0], &mut head[i]);
        for r in 0..size {
            for s in 0..width {
                let base = next[r * width + s];
                if base == INF {
                    continue;
                }
                for (c, choice) in menus[i].iter().enumerate() {
                    let r2 = rr.add(r as u32, keys[i][c]) as usize;
                    let s2 = s.min(states[i][c]);
                    let cost = base + u8::from(!choice.is_zero());
                    let slot = &mut cur[r2 * width + s2];
                    if cost < *slot {
                        *slot = cost;
                    }
                }
            }
        }
    }
    Ok(ReachTable { rr, menus, keys, states, unit_levels, suffix })
}

impl ReachTable {
    pub fn residues(&self) -> &ResidueRing {
        &self.rr
    }

    pub fn modulus(&self) -> u32 {
        self.rr.modulus()
    }

    pub fn menus(&self) -> &[Vec<TermChoice>] {
        &self.menus
    }

    fn width(&self) -> usize {
        self.unit_levels.len() + 1
    }

    fn level_of_state(&self, s: usize) -> Option<u32> {
        self.unit_levels.get(s).copied()
    }

    /// Reachability summary for the residue with the given key.
    pub fn flags_for_key(&self, key: u32) -> ReachFlags {
        let w = self.width();
        let row = &self.suffix[0][key as usize * w..(key as usize + 1) * w];
        let mut flags = ReachFlags::default();
        for (s, &cost) in row.iter().enumerate() {
            if cost == INF {
                continue;
            }
            flags.reachable = true;
            flags.min_nonzero = Some(flags.min_nonzero.map_or(cost, |c| c.min(cost)));
            if let Some(l) = self.level_of_state(s) {
                flags.has_unit = true;
                flags.unit_levels.insert(l);
            }
        }
        flags
    }

    pub fn flags(&self, r: &RingElt) -> ReachFlags {
        self.flags_for_key(self.rr.key(r))
    }

    /// Keys of every reachable residue.
    pub fn reachable_keys(&self) -> impl Iterator<Item = u32> + '_ {
        let w = self.width();
        (0..self.rr.size() as u32).filter(move |&k| self.suffix[0][k as usize * w..(k as usize + 1) * w].iter().any(|&c| c != INF))
    }

    /// Residues reachable with at least one unit-valued variable.
    pub fn reachable_with_unit(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.rr.size() as u32).filter(move |&k| self.flags_for_key(k).has_unit)
    }

    fn best_completion(&self, i: usize, key: u32, prefix: usize, accept: &dyn Fn(Option<u32>) -> bool) -> u8 {
        let w = self.width();
        let row = &self.suffix[i][key as usize * w..(key as usize + 1) * w];
        row.iter()
            .enumerate()
            .filter(|(s, _)| accept(self.level_of_state(prefix.min(*s))))
            .map(|(_, &c)| c)
            .min()
            .unwrap_or(INF)
    }

    /// One choice per variable summing to `target`, whose lowest unit level
    /// satisfies `accept` (`None` = no unit variable).
    ///
    /// Among valid assignments the fewest nonzero variables win; ties go to
    /// the earliest menu entries, variable by variable.
    pub fn reconstruct(&self, target: u32, accept: &dyn Fn(Option<u32>) -> bool) -> Option<Vec<TermChoice>> {
        let none = self.unit_levels.len();
        let mut remaining = self.best_completion(0, target, none, accept);
        if remaining == INF {
            return None;
        }
        let mut key = target;
        let mut prefix = none;
        let mut out = Vec::with_capacity(self.menus.len());
        for i in 0..self.menus.len() {
            let pick = self.menus[i].iter().enumerate().find_map(|(c, choice)| {
                let step = u8::from(!choice.is_zero());
                if step > remaining {
                    return None;
                }
                let k2 = self.rr.sub(key, self.keys[i][c]);
                let p2 = prefix.min(self.states[i][c]);
                (self.best_completion(i + 1, k2, p2, accept) == remaining - step).then_some((c, k2, p2, step))
            });
            let (c, k2, p2, step) = pick.expect("suffix table guarantees a completion");
            out.push(self.menus[i][c]);
            key = k2;
            prefix = p2;
            remaining -= step;
        }
        Some(out)
    }
}
