//! JSON certificates for solver witnesses. Every ring element is written as
//! its π-adic digit string, least significant digit first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::AdditiveForm;
use crate::qring::{Digits, Field, QuadRing, RingElt};
use crate::solver::{verify, VerifyReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub field: Field,
    pub coefficients: Vec<String>,
    pub assignment: Vec<String>,
    pub lifted_index: usize,
    pub check_modulus: u32,
    pub residual: String,
}

impl Certificate {
    /// Coefficients and assignment are truncated to the check modulus, which
    /// is all the congruence depends on.
    pub fn new(form: &AdditiveForm, witness: &Witness) -> Result<Self> {
        let m = witness.check_modulus;
        let digits = |xs: &[RingElt]| -> Result<Vec<String>> { xs.iter().map(|x| Ok(x.digits(m)?.to_string())).collect() };
        Ok(Certificate {
            field: form.ring().field(),
            coefficients: digits(form.coeffs())?,
            assignment: digits(&witness.assignment)?,
            lifted_index: witness.lifted_index,
            check_modulus: m,
            residual: witness.residual.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("certificate: {e}")))
    }

    /// Rebuilds the form and witness from the digit strings and re-runs
    /// [`verify`].
    pub fn reverify(&self) -> Result<VerifyReport> {
        let ring = QuadRing::new(self.field);
        let parse = |xs: &[String]| -> Result<Vec<RingElt>> {
            xs.iter()
                .map(|s| {
                    let d: Digits = s.parse()?;
                    if d.len() != self.check_modulus {
                        return Err(Error::InvalidArgument(format!("digit string `{s}` has length {}, expected {}", d.len(), self.check_modulus)));
                    }
                    ring.from_digits(&d)
                })
                .collect()
        };
        let coeffs = parse(&self.coefficients)?;
        let assignment = parse(&self.assignment)?;
        if self.lifted_index >= assignment.len() {
            return Err(Error::InvalidArgument(format!("lifted index {} out of range", self.lifted_index)));
        }
        let form = AdditiveForm::new(ring, coeffs, self.check_modulus)?;
        let witness = Witness {
            assignment,
            lifted_index: self.lifted_index,
            check_modulus: self.check_modulus,
            residual: self.residual.parse()?,
        };
        verify(&form, &witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve;

    #[test]
    fn round_trip() {
        let r = QuadRing::new(Field::Sqrt10);
        let form = AdditiveForm::parse("1,1,1,1,p,p,p,p,p,p,p^3", r, 24).unwrap();
        let w = solve(&form, 24).unwrap();
        let cert = Certificate::new(&form, &w).unwrap();
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert!(back.reverify().unwrap().pass);
    }

    #[test]
    fn tampering_is_detected() {
        let r = QuadRing::new(Field::SqrtNeg2);
        let form = AdditiveForm::parse(&["1"; 12].join(","), r, 24).unwrap();
        let w = solve(&form, 24).unwrap();
        let mut cert = Certificate::new(&form, &w).unwrap();
        let d: Digits = cert.assignment[w.lifted_index].parse().unwrap();
        cert.assignment[w.lifted_index] = d.with_flipped(10).to_string();
        assert!(!cert.reverify().unwrap().pass);
    }
}
