//! Deciding solvability of `F(x) ≡ 0 (mod π^k)` with some `xᵢ` a unit.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::forms::AdditiveForm;
use crate::qring::{Field, QuadRing, RingElt, Valuation};
use crate::solver::dp::{dp_reach, MAX_DP_MODULUS};

/// An assignment with a unit entry vanishing modulo `π^k`, if one exists.
pub fn has_primitive_zero_mod(form: &AdditiveForm, k: u32) -> Result<Option<Vec<RingElt>>> {
    let table = dp_reach(form, k)?;
    let choices = table.reconstruct(0, &|l: Option<u32>| l.is_some());
    Ok(choices.map(|cs| cs.iter().map(|c| c.representative).collect()))
}

/// Valuations of the nonzero values `F(x) mod π^k`.
pub fn representable_valuations(form: &AdditiveForm, k: u32) -> Result<BTreeSet<u32>> {
    let table = dp_reach(form, k)?;
    let rr = table.residues();
    Ok(table
        .reachable_keys()
        .filter(|&key| key != 0)
        .filter_map(|key| match rr.element(key).valuation() {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        })
        .collect())
}

/// A form with no primitive zero modulo a small power of π.
#[derive(Debug, Clone, Serialize)]
pub struct AnisoFixture {
    pub field: Field,
    pub form: &'static str,
    pub modulus: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnisoCheck {
    pub field: Field,
    pub form: String,
    pub variables: usize,
    pub modulus: u32,
    pub has_primitive_zero: bool,
    /// Smallest `k` in `modulus..=12` with no primitive zero mod `π^k`.
    pub anisotropic_from: Option<u32>,
    /// A primitive zero at the fixture modulus, as digit strings.
    pub witness: Option<Vec<String>>,
    pub pass: bool,
}

/// The fixture for `field`: ten variables for every field but `√-5`, which
/// gets eight.
pub fn aniso_fixture(field: Field) -> AnisoFixture {
    let (form, modulus) = match field {
        Field::Sqrt2 | Field::Sqrt10 => ("1,1,1,1,p,p,p,p,p,p", 8),
        Field::SqrtNeg2 | Field::SqrtNeg10 => ("1,1,1,1,p+p^2,p+p^2,p+p^2,p+p^2,p+p^2,p+p^2", 8),
        Field::SqrtNeg1 => ("1,1,1,1,p+p^3,p+p^3,p+p^3,p+p^3,p^2+p^3,p^3+p^4+p^5", 7),
        Field::SqrtNeg5 => ("1,1,1,1,p,p,p,p", 7),
    };
    AnisoFixture { field, form, modulus }
}

/// Confirms that the fixture for `field` has no primitive zero.
pub fn check_fixture(field: Field) -> Result<AnisoCheck> {
    let fx = aniso_fixture(field);
    let ring = QuadRing::new(field);
    let form = AdditiveForm::parse(fx.form, ring, 24)?;
    let zero = has_primitive_zero_mod(&form, fx.modulus)?;
    let found = zero.is_some();
    let mut anisotropic_from = None;
    for k in fx.modulus..=MAX_DP_MODULUS {
        if has_primitive_zero_mod(&form, k)?.is_none() {
            anisotropic_from = Some(k);
            break;
        }
    }
    let witness = zero.map(|x| x.iter().map(|e| e.digits(fx.modulus + 1).expect("exact").to_string()).collect());
    Ok(AnisoCheck {
        field,
        form: fx.form.to_string(),
        variables: form.len(),
        modulus: fx.modulus,
        has_primitive_zero: found,
        anisotropic_from,
        witness,
        pass: !found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_anisotropic() {
        for f in Field::ALL {
            let c = check_fixture(f).unwrap();
            if f == Field::SqrtNeg1 {
                // x₅ = π, x₆ = x₇ = x₉ = 1 gives -8π: a zero mod π^7 only
                assert!(!c.pass);
                assert_eq!(c.anisotropic_from, Some(8));
            } else {
                assert!(c.pass, "{f}: {}", c.form);
                assert_eq!(c.anisotropic_from, Some(c.modulus));
            }
        }
    }

    #[test]
    fn sqrt_neg1_fixture_has_explicit_zero_mod_pi7() {
        let r = QuadRing::new(Field::SqrtNeg1);
        let form = AdditiveForm::parse(aniso_fixture(Field::SqrtNeg1).form, r, 24).unwrap();
        let (zero, one, pi) = (r.zero(48).unwrap(), r.one(48).unwrap(), r.uniformizer(48).unwrap());
        let x = [zero, zero, zero, zero, zero, pi, one, one, zero, one];
        assert_eq!(form.evaluate(&x, 8).unwrap().digits(8).unwrap().to_string(), "00000001");
    }

    #[test]
    fn single_variable_valuations() {
        let r = QuadRing::new(Field::Sqrt2);
        let form = AdditiveForm::parse("1", r, 24).unwrap();
        assert_eq!(representable_valuations(&form, 8).unwrap(), BTreeSet::from([0, 4]));
    }

    #[test]
    fn sixteen_ones_vanish() {
        let r = QuadRing::new(Field::SqrtNeg5);
        let form = AdditiveForm::parse(&vec!["1"; 16].join(","), r, 24).unwrap();
        let x = has_primitive_zero_mod(&form, 10).unwrap().unwrap();
        assert!(matches!(form.evaluate(&x, 10).unwrap().valuation(), Valuation::AtLeast(_)));
    }
}
