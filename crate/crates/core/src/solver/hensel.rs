//! Lifting `c·t⁴ ≡ b` one π-digit at a time.
//!
//! For a unit `t` and `k ≥ 3`, `(t + π^k)⁴ ≡ t⁴ + 4t³π^k (mod π^{k+5})` and
//! `v(4) = 4`, so flipping digit `k` of `t` flips digit `k + 4` of `t⁴` and
//! leaves the lower digits alone. Starting from a solution modulo `π^ν` with
//! `ν ≥ 7`, each step fixes digit `μ` by adjusting digit `μ - 4` of `t`.

use crate::error::{Error, Result};
use crate::qring::{RingElt, Valuation};

/// Smallest starting modulus for which [`hensel_lift`] is guaranteed.
pub const MIN_START: u32 = 7;

fn check(c: &RingElt, b: &RingElt, a: &RingElt, nu: u32, m: u32) -> Result<()> {
    c.ring().same(&b.ring())?;
    c.ring().same(&a.ring())?;
    if !c.is_unit() || !a.is_unit() {
        return Err(Error::NonUnit);
    }
    if nu < MIN_START {
        return Err(Error::InvalidArgument(format!("starting modulus π^{nu} below π^{MIN_START}")));
    }
    let max = c.prec().min(b.prec());
    if m > max {
        return Err(Error::Precision { requested: m, max });
    }
    if !(*c * a.pow4()).congruent(b, nu.min(m)) {
        return Err(Error::InvalidArgument(format!("start value does not solve the congruence mod π^{}", nu.min(m))));
    }
    Ok(())
}

fn residual_ok(c: &RingElt, t: &RingElt, b: &RingElt, k: u32) -> bool {
    match (*c * t.pow4() - *b).with_prec(k).valuation() {
        Valuation::AtLeast(_) => true,
        Valuation::Exact(v) => v >= k,
    }
}

/// The lift `t` after each modulus `π^ν, π^{ν+1}, …, π^M`.
pub fn hensel_lift_trace(c: &RingElt, b: &RingElt, a: &RingElt, nu: u32, m: u32) -> Result<Vec<RingElt>> {
    check(c, b, a, nu, m)?;
    let ring = c.ring();
    let mut t = a.lift_exact();
    let mut trace = vec![t];
    for mu in nu..m {
        let step = ring.pi_pow(mu - 4, ring.max_prec())?;
        t = [t, t + step]
            .into_iter()
            .find(|cand| residual_ok(c, cand, b, mu + 1))
            .ok_or(Error::StepFailed(mu))?;
        trace.push(t);
    }
    Ok(trace)
}

/// A unit `t ≡ a (mod π^{ν-4})` with `c·t⁴ ≡ b (mod π^M)`, given units `c`,
/// `a` with `c·a⁴ ≡ b (mod π^ν)` and `ν ≥ 7`.
pub fn hensel_lift(c: &RingElt, b: &RingElt, a: &RingElt, nu: u32, m: u32) -> Result<RingElt> {
    Ok(*hensel_lift_trace(c, b, a, nu, m)?.last().expect("trace starts with a"))
}
