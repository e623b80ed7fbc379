//! Per-variable value menus: every value `a·x⁴ mod π^N` together with one
//! representative `x` producing it.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::powers::{unit_power_table, UnitPower};
use crate::qring::{Digits, QuadRing, RingElt, Valuation};
use crate::residue::ResidueRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Zero,
    /// `x = π^j·unit` with `j ≥ 1`.
    Scaled(u32),
    Unit,
}

/// One admissible value of a single term `aᵢxᵢ⁴` modulo `π^N`.
#[derive(Debug, Clone, Copy)]
pub struct TermChoice {
    pub index: usize,
    pub category: Category,
    /// `xᵢ`, exact at the ring's full precision.
    pub representative: RingElt,
    /// `aᵢ·xᵢ⁴ mod π^N`.
    pub term_value: RingElt,
}

impl TermChoice {
    pub fn is_unit(&self) -> bool {
        self.category == Category::Unit
    }

    pub fn is_zero(&self) -> bool {
        self.category == Category::Zero
    }

    fn digits(&self) -> Digits {
        self.representative.digits(self.term_value.prec()).expect("representative is exact")
    }
}

/// Memoizes unit fourth-power tables per modulus.
#[derive(Debug)]
pub struct MenuBuilder {
    ring: QuadRing,
    tables: HashMap<u32, Vec<UnitPower>>,
}

impl MenuBuilder {
    pub fn new(ring: QuadRing) -> Self {
        MenuBuilder { ring, tables: HashMap::new() }
    }

    fn table(&mut self, k: u32) -> Result<&[UnitPower]> {
        if !self.tables.contains_key(&k) {
            let t = unit_power_table(self.ring, k)?;
            self.tables.insert(k, t);
        }
        Ok(&self.tables[&k])
    }

    /// Distinct `(value, unit?)` choices for coefficient `a` modulo `π^n`,
    /// sorted by the representative's digit string. Representatives are
    /// `π^j·u` with `u` a root from the unit power table; the smallest digit
    /// string among them is kept for each value.
    pub fn menu(&mut self, index: usize, a: &RingElt, n: u32) -> Result<Vec<TermChoice>> {
        let ring = self.ring;
        if a.prec() < n {
            return Err(Error::Precision { requested: n, max: a.prec() });
        }
        let level = match a.valuation() {
            Valuation::Exact(v) => v,
            Valuation::AtLeast(v) => v,
        };
        let zero = ring.zero(ring.max_prec())?;
        let mut out = vec![TermChoice { index, category: Category::Zero, representative: zero, term_value: zero.with_prec(n) }];
        if level >= n {
            let one = ring.one(ring.max_prec())?;
            out.push(TermChoice { index, category: Category::Unit, representative: one, term_value: zero.with_prec(n) });
            return Ok(out);
        }
        let rr = ResidueRing::new(ring, n);
        let mut best: HashMap<(u32, bool), (Digits, TermChoice)> = HashMap::new();
        let mut j = 0;
        while 4 * j + level < n {
            let k = n - 4 * j - level;
            let roots: Vec<RingElt> = self.table(k)?.iter().map(|p| p.root).collect();
            for u in roots {
                let x = u.mul_pi_pow(j).lift_exact();
                let value = (*a * x.pow4()).with_prec(n);
                let category = if j == 0 { Category::Unit } else { Category::Scaled(j) };
                let choice = TermChoice { index, category, representative: x, term_value: value };
                let d = choice.digits();
                let key = (rr.key(&value), j == 0);
                match best.get(&key) {
                    Some((old, _)) if *old <= d => {}
                    _ => {
                        best.insert(key, (d, choice));
                    }
                }
            }
            j += 1;
        }
        let mut rest: Vec<(Digits, TermChoice)> = best.into_values().collect();
        rest.sort_by_key(|(d, _)| *d);
        out.extend(rest.into_iter().map(|(_, c)| c));
        Ok(out)
    }
}

/// Value menu of a single coefficient; see [`MenuBuilder::menu`].
pub fn term_menu(index: usize, a: &RingElt, n: u32) -> Result<Vec<TermChoice>> {
    MenuBuilder::new(a.ring()).menu(index, a, n)
}
