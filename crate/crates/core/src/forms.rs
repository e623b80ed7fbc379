//! Additive quartic forms `a₁x₁⁴ + … + a_s x_s⁴`: parsing, level bookkeeping,
//! normalization and evaluation.

use std::fmt;

use crate::error::{Error, Result};
use crate::qring::{QuadRing, RingElt, Valuation};

/// Working precision used for forms unless stated otherwise.
pub const DEFAULT_PRECISION: u32 = 24;

/// Counts of variables by level modulo 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FormType(pub [usize; 4]);

impl FormType {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// The type obtained by multiplying the form by `π^shift`.
    pub fn rotated(&self, shift: u32) -> FormType {
        let mut out = [0; 4];
        for (level, &count) in self.0.iter().enumerate() {
            out[(level + shift as usize) % 4] += count;
        }
        FormType(out)
    }

    /// `s₀ ≥ s/4`, `s₀+s₁ ≥ 2s/4`, `s₀+s₁+s₂ ≥ 3s/4`.
    pub fn is_normalized(&self) -> bool {
        let s = self.total();
        let mut prefix = 0;
        (0..3).all(|i| {
            prefix += self.0[i];
            4 * prefix >= (i + 1) * s
        })
    }

    /// Whether this type has at least as many variables at each level as `lower`.
    pub fn dominates(&self, lower: &FormType) -> bool {
        self.0.iter().zip(lower.0.iter()).all(|(a, b)| a >= b)
    }

    /// Domination up to a cyclic relabelling of the levels.
    pub fn dominates_cyclically(&self, lower: &FormType) -> bool {
        (0..4).any(|shift| self.rotated(shift).dominates(lower))
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// A diagonal quartic form with coefficients in O.
#[derive(Debug, Clone)]
pub struct AdditiveForm {
    ring: QuadRing,
    coeffs: Vec<RingElt>,
    prec: u32,
}

impl AdditiveForm {
    /// Builds a form; every coefficient must be nonzero modulo `π^prec`.
    pub fn new(ring: QuadRing, coeffs: Vec<RingElt>, prec: u32) -> Result<Self> {
        if prec == 0 || prec > ring.max_prec() {
            return Err(Error::Precision { requested: prec, max: ring.max_prec() });
        }
        let mut reduced = Vec::with_capacity(coeffs.len());
        for (index, c) in coeffs.into_iter().enumerate() {
            if c.ring() != ring {
                return Err(Error::FieldMismatch { left: ring.field().to_string(), right: c.field().to_string() });
            }
            let c = c.with_prec(prec);
            if c.valuation().exact().is_none() {
                return Err(Error::ZeroCoefficient { index });
            }
            reduced.push(c);
        }
        let prec = reduced.iter().map(RingElt::prec).min().unwrap_or(prec).min(prec);
        Ok(AdditiveForm { ring, coeffs: reduced, prec })
    }

    pub fn parse(text: &str, ring: QuadRing, prec: u32) -> Result<Self> {
        parse_form(text, ring, prec)
    }

    pub fn ring(&self) -> QuadRing {
        self.ring
    }

    pub fn coeffs(&self) -> &[RingElt] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Working precision in π-digits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn levels(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.valuation().exact().expect("coefficients are nonzero")).collect()
    }

    pub fn type_of(&self) -> FormType {
        let mut counts = [0; 4];
        for l in self.levels() {
            counts[(l % 4) as usize] += 1;
        }
        FormType(counts)
    }

    /// Concatenates two forms over the same ring.
    pub fn join(&self, other: &AdditiveForm) -> Result<AdditiveForm> {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend_from_slice(&other.coeffs);
        AdditiveForm::new(self.ring, coeffs, self.prec.min(other.prec))
    }

    /// `Σ aᵢ·xᵢ⁴ mod π^k`.
    pub fn evaluate(&self, assignment: &[RingElt], k: u32) -> Result<RingElt> {
        if assignment.len() != self.coeffs.len() {
            return Err(Error::LengthMismatch { expected: self.coeffs.len(), actual: assignment.len() });
        }
        let mut acc = self.ring.zero(k)?;
        for (a, x) in self.coeffs.iter().zip(assignment) {
            if a.prec() < k || x.prec() < k {
                return Err(Error::Precision { requested: k, max: a.prec().min(x.prec()) });
            }
            acc = acc.checked_add(&a.checked_mul(&x.pow4())?)?;
        }
        Ok(acc.with_prec(k))
    }

    /// Rebalances levels so that the lower levels hold enough variables.
    ///
    /// Multiplies the form by `π^shift` and moves every variable down by a
    /// multiple of four levels into `0..=3`. The smallest admissible shift
    /// wins.
    pub fn normalize(&self) -> Normalized {
        let ty = self.type_of();
        let shift = (0..4u32)
            .find(|&s| ty.rotated(s).is_normalized())
            .expect("a cyclic rotation always satisfies the normalization inequalities");
        let levels = self.levels();
        let mut moves = Vec::with_capacity(self.coeffs.len());
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (c, l) in self.coeffs.iter().zip(levels) {
            let q = (l + shift) / 4;
            let mut c = c.mul_pi_pow(shift);
            for _ in 0..4 * q {
                c = c.divide_by_pi().expect("coefficient has valuation ≥ 4q");
            }
            moves.push(q);
            coeffs.push(c);
        }
        let prec = coeffs.iter().map(RingElt::prec).min().unwrap_or(self.prec);
        let form = AdditiveForm::new(self.ring, coeffs, prec).expect("normalization keeps coefficients nonzero");
        Normalized { form, shift, moves }
    }

    /// Renders the form in the input grammar (coefficients truncated at
    /// their precision).
    pub fn to_text(&self) -> String {
        self.coeffs.iter().map(coeff_to_text).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for AdditiveForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `Σ cᵢπ^i` written with the grammar's `p` notation.
pub fn coeff_to_text(c: &RingElt) -> String {
    let terms: Vec<String> = c
        .all_digits()
        .support()
        .into_iter()
        .map(|e| match e {
            0 => "1".to_string(),
            1 => "p".to_string(),
            e => format!("p^{e}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Result of [`AdditiveForm::normalize`].
#[derive(Debug, Clone)]
pub struct Normalized {
    pub form: AdditiveForm,
    /// The form was multiplied by `π^shift`.
    pub shift: u32,
    /// Variable `i` was moved down by `4·moves[i]` levels.
    pub moves: Vec<u32>,
}

impl Normalized {
    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.moves.iter().all(|&q| q == 0)
    }

    /// Maps an assignment `y` of the normalized form to an assignment `x` of
    /// the original form with at least one unit entry.
    ///
    /// With `xᵢ = π^{c - qᵢ}·yᵢ` and `c = max(qᵢ - v(yᵢ))`, the original form
    /// satisfies `F(x) = π^{4c - shift}·N(y)`. Returns `x` and `c`.
    pub fn pull_back(&self, y: &[RingElt]) -> Result<(Vec<RingElt>, i64)> {
        if y.len() != self.moves.len() {
            return Err(Error::LengthMismatch { expected: self.moves.len(), actual: y.len() });
        }
        let c = y
            .iter()
            .zip(&self.moves)
            .filter_map(|(yi, &q)| match yi.valuation() {
                Valuation::Exact(v) => Some(i64::from(q) - i64::from(v)),
                Valuation::AtLeast(_) => None,
            })
            .max()
            .ok_or_else(|| Error::InvalidArgument("assignment is trivial".into()))?;
        let x = y
            .iter()
            .zip(&self.moves)
            .map(|(yi, &q)| {
                let e = c - i64::from(q);
                if e >= 0 {
                    Ok(yi.mul_pi_pow(e as u32))
                } else {
                    let mut v = *yi;
                    for _ in 0..(-e) {
                        v = v.divide_by_pi()?;
                    }
                    Ok(v)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((x, c))
    }
}

/// Parses `coeff (',' coeff)*` where a coefficient is a sum of terms
/// `int`, `int*p^e` or `p^e`; `p` stands for the uniformizer.
pub fn parse_form(text: &str, ring: QuadRing, prec: u32) -> Result<AdditiveForm> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let mut coeffs = Vec::new();
    loop {
        let terms = parser.coeff()?;
        coeffs.push(ring.from_pi_poly(&terms, prec)?);
        parser.skip_ws();
        match parser.peek() {
            Some(b',') => parser.pos += 1,
            None => break,
            Some(c) => return Err(parser.error(format!("expected `,` or end of input, found `{}`", c as char))),
        }
    }
    AdditiveForm::new(ring, coeffs, prec)
}

/// Parses a single coefficient expression.
pub fn parse_coeff(text: &str, ring: QuadRing, prec: u32) -> Result<RingElt> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let terms = parser.coeff()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(format!("unexpected `{}`", c as char)));
    }
    ring.from_pi_poly(&terms, prec)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: String) -> Error {
        Error::Syntax { pos: self.pos, msg }
    }

    fn coeff(&mut self) -> Result<Vec<(u32, i64)>> {
        let mut terms = vec![self.term()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(b'+') {
                self.pos += 1;
                terms.push(self.term()?);
            } else {
                return Ok(terms);
            }
        }
    }

    fn term(&mut self) -> Result<(u32, i64)> {
        self.skip_ws();
        match self.peek() {
            Some(b'p') => Ok((self.pexp()?, 1)),
            Some(b'-' | b'0'..=b'9') => {
                let n = self.int()?;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.peek() != Some(b'p') {
                        return Err(self.error("expected `p` after `*`".into()));
                    }
                    Ok((self.pexp()?, n))
                } else {
                    Ok((0, n))
                }
            }
            Some(c) => Err(self.error(format!("expected a term, found `{}`", c as char))),
            None => Err(self.error("expected a term, found end of input".into())),
        }
    }

    fn pexp(&mut self) -> Result<u32> {
        self.pos += 1;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            u32::try_from(e).map_err(|_| self.error("exponent too large".into()))
        } else {
            Ok(1)
        }
    }

    fn int(&mut self) -> Result<i64> {
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
            self.skip_ws();
        }
        let n = i64::try_from(self.uint()?).map_err(|_| self.error("integer too large".into()))?;
        Ok(if negative { -n } else { n })
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "integer too large".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::Field;

    fn form(text: &str, f: Field) -> AdditiveForm {
        AdditiveForm::parse(text, QuadRing::new(f), DEFAULT_PRECISION).unwrap()
    }

    #[test]
    fn parses_ten_variable_forms() {
        let f = form("1,1,1,1,p,p,p,p,p,p", Field::Sqrt2);
        assert_eq!(f.len(), 10);
        assert_eq!(f.levels(), vec![0, 0, 0, 0, 1, 1, 1, 1, 1, 1]);
        assert_eq!(f.type_of(), FormType([4, 6, 0, 0]));

        let g = form("1,1,1,1,p+p^2,p+p^2,p+p^2,p+p^2,p+p^2,p+p^2", Field::SqrtNeg2);
        assert_eq!(g.coeffs()[4].digits(4).unwrap().to_string(), "0110");
        assert_eq!(form("1", Field::Sqrt2).len(), 1);
    }

    #[test]
    fn grammar_variants() {
        let r = QuadRing::new(Field::Sqrt10);
        let f = AdditiveForm::parse(" 3*p^2 + -1 , p ^ 3,-7 ", r, 20).unwrap();
        assert_eq!(f.len(), 3);
        let expected = r.from_pi_poly(&[(2, 3), (0, -1)], 20).unwrap();
        assert!(f.coeffs()[0].congruent(&expected, 20));
        assert_eq!(f.levels(), vec![0, 3, 0]);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let r = QuadRing::new(Field::Sqrt2);
        match AdditiveForm::parse("1,,p", r, 10) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(AdditiveForm::parse("1,q", r, 10), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(AdditiveForm::parse("2*", r, 10), Err(Error::Syntax { .. })));
        assert!(matches!(AdditiveForm::parse("", r, 10), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn zero_coefficient_rejected() {
        let r = QuadRing::new(Field::Sqrt2);
        assert_eq!(AdditiveForm::parse("1,1+-1", r, 10).unwrap_err(), Error::ZeroCoefficient { index: 1 });
        // 2^5 = π^10 vanishes modulo π^10
        assert_eq!(AdditiveForm::parse("32", r, 10).unwrap_err(), Error::ZeroCoefficient { index: 0 });
    }

    #[test]
    fn type_examples() {
        assert_eq!(form("1,1,1,p^2,p^2,p^3", Field::Sqrt2).type_of(), FormType([3, 0, 2, 1]));
        let f = form("p^5", Field::Sqrt2);
        assert_eq!(f.levels(), vec![5]);
        assert_eq!(f.type_of(), FormType([0, 1, 0, 0]));
    }

    #[test]
    fn normalize_single_level() {
        let f = form(&["p"; 11].join(","), Field::Sqrt2);
        let n = f.normalize();
        assert_eq!(n.shift, 3);
        assert_eq!(n.form.type_of(), FormType([11, 0, 0, 0]));
        assert_eq!(n.form.levels(), vec![0; 11]);
    }

    #[test]
    fn normalize_rotates_1150() {
        let f = form("1,p,p^2,p^2,p^2,p^2,p^2", Field::SqrtNeg10);
        assert_eq!(f.type_of(), FormType([1, 1, 5, 0]));
        let n = f.normalize();
        assert_eq!(n.shift, 2);
        assert_eq!(n.form.type_of(), FormType([5, 0, 1, 1]));
    }

    #[test]
    fn normalize_already_normalized_is_identity() {
        let f = form("1,1,1,p,p,p^2,p^3", Field::Sqrt2);
        let n = f.normalize();
        assert!(n.is_identity());
    }

    #[test]
    fn evaluate_examples() {
        let r = QuadRing::new(Field::Sqrt2);
        let g = form("1,1,1,1", Field::Sqrt2);
        let zero = r.zero(24).unwrap();
        let one = r.one(24).unwrap();
        assert_eq!(g.evaluate(&[zero; 4], 24).unwrap().valuation(), Valuation::AtLeast(24));
        let v = g.evaluate(&[one; 4], 7).unwrap();
        assert!(v.congruent(&r.pi_pow(4, 7).unwrap(), 7));
        let v = g.evaluate(&[one, one, zero, zero], 5).unwrap();
        assert!(v.congruent(&r.pi_pow(2, 5).unwrap(), 5));
        assert!(matches!(g.evaluate(&[one], 5), Err(Error::LengthMismatch { expected: 4, actual: 1 })));
    }

    #[test]
    fn form_type_helpers() {
        let t = FormType([3, 0, 2, 1]);
        assert!(FormType([4, 1, 2, 1]).dominates(&t));
        assert!(FormType([1, 3, 0, 2]).dominates_cyclically(&t));
        assert!(!FormType([2, 0, 2, 1]).dominates_cyclically(&t));
        assert_eq!(t.to_string(), "(3,0,2,1)");
    }

    #[test]
    fn to_text_roundtrips() {
        let f = form("1,p+p^2,p^3", Field::SqrtNeg2);
        let g = AdditiveForm::parse(&f.to_text(), f.ring(), f.prec()).unwrap();
        for (a, b) in f.coeffs().iter().zip(g.coeffs()) {
            assert!(a.congruent(b, f.prec()));
        }
    }
}
