//! Nontrivial zeros of additive quartic forms.
//!
//! A zero modulo `π^{7+v}` with a unit variable whose coefficient has level
//! at most `v` lifts to an exact zero. For forms with all levels in `0..=3`
//! the search over `v` is complete: a primitive zero has a unit `xᵢ` at some
//! level `lᵢ ≤ 3`, and reduces to such a residue zero modulo `π^{7+lᵢ}`.
//! Other forms are normalized first and the zero is pulled back.

pub mod dp;
pub mod hensel;
pub mod menu;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::{AdditiveForm, Normalized};
use crate::qring::{Digits, RingElt, Valuation};
use dp::dp_reach;
use hensel::{hensel_lift, MIN_START};

/// A zero modulo `π^modulus` that satisfies the lifting criterion.
#[derive(Debug, Clone)]
pub struct RawWitness {
    /// Exact representatives.
    pub assignment: Vec<RingElt>,
    /// Unit variable to be lifted: lowest level, then lowest index.
    pub lifted_index: usize,
    pub modulus: u32,
}

/// A verified zero of a form modulo `π^check_modulus`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub assignment: Vec<RingElt>,
    pub lifted_index: usize,
    pub check_modulus: u32,
    pub residual: Digits,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub zero: bool,
    pub primitive: bool,
    pub residual: Digits,
    pub pass: bool,
}

/// Searches `v = 0, 1, …` over the levels present for a zero modulo
/// `π^{7+v}` with a unit variable at level `≤ v`. Levels must lie in `0..=3`.
pub fn find_liftable(form: &AdditiveForm) -> Result<RawWitness> {
    let levels = form.levels();
    if levels.iter().any(|&l| l > 3) {
        return Err(Error::InvalidArgument("liftable search needs levels in 0..=3".into()));
    }
    let mut present = levels.clone();
    present.sort_unstable();
    present.dedup();
    for v in present {
        let n = MIN_START + v;
        if n > form.prec() {
            return Err(Error::Precision { requested: n, max: form.prec() });
        }
        let table = dp_reach(form, n)?;
        let accept = |l: Option<u32>| l.is_some_and(|l| l <= v);
        if let Some(choices) = table.reconstruct(0, &accept) {
            let lifted_index = choices
                .iter()
                .filter(|c| c.is_unit())
                .min_by_key(|c| (levels[c.index], c.index))
                .map(|c| c.index)
                .ok_or_else(|| Error::Internal("accepted zero has no unit".into()))?;
            let assignment = choices.iter().map(|c| c.representative).collect();
            return Ok(RawWitness { assignment, lifted_index, modulus: n });
        }
    }
    Err(Error::NotFound("no liftable zero at moduli π^{7+v}".into()))
}

fn identity(form: &AdditiveForm) -> Normalized {
    Normalized { form: form.clone(), shift: 0, moves: vec![0; form.len()] }
}

fn divide_pi(x: RingElt, times: u32) -> Result<RingElt> {
    (0..times).try_fold(x, |acc, _| acc.divide_by_pi())
}

/// A primitive zero of `form` modulo `π^m`, lifted and verified.
pub fn solve(form: &AdditiveForm, m: u32) -> Result<Witness> {
    if m == 0 || m > form.prec() {
        return Err(Error::Precision { requested: m, max: form.prec() });
    }
    let levels = form.levels();
    let norm = if levels.iter().all(|&l| l <= 3) { identity(form) } else { form.normalize() };
    let raw = match find_liftable(&norm.form) {
        Err(Error::NotFound(_)) => return Err(Error::NoZeroFound),
        other => other?,
    };
    let (mut x, c) = norm.pull_back(&raw.assignment)?;
    let j = raw.lifted_index;

    // x_j = π^s·t with c_j·t⁴ ≡ b (mod π^{m-w}), w = l_j + 4s
    let s = u32::try_from(c - i64::from(norm.moves[j])).map_err(|_| Error::Internal("negative scale".into()))?;
    let w = levels[j] + 4 * s;
    let nu = raw.modulus - norm.form.levels()[j];
    if m > w + nu {
        let coeffs = form.coeffs();
        let mut rest = form.ring().zero(form.ring().max_prec())?;
        for (i, (a, xi)) in coeffs.iter().zip(&x).enumerate() {
            if i != j {
                rest = rest + *a * xi.pow4();
            }
        }
        let b = divide_pi((-rest).with_prec(m), w)?;
        let cj = divide_pi(coeffs[j].with_prec(m), levels[j])?;
        let t0 = divide_pi(x[j], s)?;
        let t = hensel_lift(&cj, &b, &t0, nu, m - w)?;
        x[j] = t.mul_pi_pow(s);
    }
    let residual = form.evaluate(&x, m)?.digits(m)?;
    if residual.bits() != 0 {
        return Err(Error::Internal(format!("lifted assignment leaves residual {residual}")));
    }
    Ok(Witness { assignment: x, lifted_index: j, check_modulus: m, residual })
}

/// Solves every form in parallel.
pub fn solve_batch(forms: &[AdditiveForm], m: u32) -> Vec<Result<Witness>> {
    forms.par_iter().map(|f| solve(f, m)).collect()
}

/// Re-evaluates a witness: the form must vanish modulo `π^check_modulus`
/// and some entry must be a unit.
pub fn verify(form: &AdditiveForm, witness: &Witness) -> Result<VerifyReport> {
    let k = witness.check_modulus;
    let residual = form.evaluate(&witness.assignment, k)?.digits(k)?;
    let zero = matches!(form.evaluate(&witness.assignment, k)?.valuation(), Valuation::AtLeast(_));
    let primitive = witness.assignment.iter().any(RingElt::is_unit);
    Ok(VerifyReport { zero, primitive, residual, pass: zero && primitive })
}
