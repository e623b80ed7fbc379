mod common;

use proptest::prelude::*;
use quartic::contraction::{contract_unit_pair, toggle_pi5, TrackedVariable};
use quartic::forms::{AdditiveForm, FormType};
use quartic::powers::unit_fourth_powers;
use quartic::solver::dp::dp_reach;
use quartic::solver::hensel::hensel_lift_trace;
use quartic::solver::{solve, verify, Witness};
use quartic::{Digits, Field, QuadRing, RingElt, Valuation};

use common::*;

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(Field::ALL.to_vec())
}

fn settled_field() -> impl Strategy<Value = Field> {
    prop::sample::select(Field::SETTLED.to_vec())
}

fn elt(ring: QuadRing, bits: u64, len: u32) -> RingElt {
    ring.from_digits_exact(&Digits::new(bits, len))
}

fn exact_val(x: &RingElt) -> Option<u32> {
    x.valuation().exact()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn digits_round_trip(f in field(), bits in any::<u64>(), n in 1u32..=40) {
        let ring = QuadRing::new(f);
        let x = elt(ring, bits & ((1 << 24) - 1), 24).mul_pi_pow(3).lift_exact();
        let d = x.digits(n).unwrap();
        let terms: Vec<(u32, i64)> = d.support().into_iter().map(|e| (e, 1)).collect();
        let back = ring.from_pi_poly(&terms, n).unwrap();
        prop_assert!(back.congruent(&x, n));
        prop_assert_eq!(ring.from_digits(&d).unwrap().digits(n).unwrap(), d);
    }

    #[test]
    fn valuation_is_multiplicative(f in field(), a in 1u64..1 << 20, b in 1u64..1 << 20) {
        let ring = QuadRing::new(f);
        let (x, y) = (elt(ring, a, 20), elt(ring, b, 20));
        let (vx, vy) = (exact_val(&x).unwrap(), exact_val(&y).unwrap());
        prop_assert_eq!(exact_val(&(x * y)), Some(vx + vy));
    }

    #[test]
    fn ultrametric(f in field(), a in 1u64..1 << 20, b in 1u64..1 << 20) {
        let ring = QuadRing::new(f);
        let (x, y) = (elt(ring, a, 20), elt(ring, b, 20));
        let (vx, vy) = (exact_val(&x).unwrap(), exact_val(&y).unwrap());
        match (x + y).valuation() {
            Valuation::Exact(v) => {
                prop_assert!(v >= vx.min(vy));
                if vx != vy {
                    prop_assert_eq!(v, vx.min(vy));
                }
            }
            Valuation::AtLeast(_) => prop_assert_eq!(vx, vy),
        }
    }

    #[test]
    fn divide_inverts_multiply(f in field(), a in 0u64..1 << 30, e in 0u32..20) {
        let ring = QuadRing::new(f);
        let x = elt(ring, a, 30);
        let mut y = x.mul_pi_pow(e);
        for _ in 0..e {
            y = y.divide_by_pi().unwrap();
        }
        prop_assert!(y.congruent(&x, 30));
    }

    #[test]
    fn unit_fourth_powers_mod_pi7_form_a_group(f in settled_field()) {
        let ring = QuadRing::new(f);
        let set = unit_fourth_powers(ring, 7).unwrap();
        prop_assert_eq!(set.len(), 2);
        for a in &set {
            for b in &set {
                let p = ring.from_digits(a).unwrap() * ring.from_digits(b).unwrap();
                prop_assert!(set.contains(&p.digits(7).unwrap()));
            }
        }
    }

    #[test]
    fn normalized_type_satisfies_inequalities(f in field(), seed in any::<u64>(), levels in prop::collection::vec(0u32..14, 1..16)) {
        let ring = QuadRing::new(f);
        let form = form_with_levels(ring, &levels, &mut rng(seed));
        let n = form.normalize();
        prop_assert!(n.form.type_of().is_normalized());
        prop_assert!(n.form.levels().iter().all(|&l| l <= 3));
        prop_assert!(n.shift < 4);
        if levels.len() >= 11 {
            prop_assert!(n.form.type_of().0[0] >= 3);
        }
    }

    #[test]
    fn pull_back_scales_the_form(f in field(), seed in any::<u64>(), levels in prop::collection::vec(0u32..12, 2..8)) {
        let ring = QuadRing::new(f);
        let mut r = rng(seed);
        let form = form_with_levels(ring, &levels, &mut r);
        let n = form.normalize();
        let y: Vec<RingElt> = (0..levels.len()).map(|_| random_unit(ring, &mut r)).collect();
        let (x, c) = n.pull_back(&y).unwrap();
        prop_assert!(c >= 0);
        prop_assert!(x.iter().any(RingElt::is_unit));
        let lhs = form.evaluate(&x, 16).unwrap().mul_pi_pow(n.shift);
        let rhs = n.form.evaluate(&y, 10).unwrap().mul_pi_pow(4 * c as u32);
        prop_assert!(lhs.congruent(&rhs, 16));
    }

    #[test]
    fn evaluate_is_stable_under_high_perturbation(f in field(), seed in any::<u64>(), k in 1u32..16, i in 0usize..5) {
        let ring = QuadRing::new(f);
        let mut r = rng(seed);
        let form = form_with_levels(ring, &[0, 1, 2, 3, 0], &mut r);
        let x: Vec<RingElt> = (0..5).map(|_| random_unit(ring, &mut r)).collect();
        let mut x2 = x.clone();
        x2[i] = x2[i] + ring.pi_pow(k, ring.max_prec()).unwrap();
        let (a, b) = (form.evaluate(&x, k + 4).unwrap(), form.evaluate(&x2, k + 4).unwrap());
        prop_assert!(a.congruent(&b, k));
    }

    #[test]
    fn solver_witnesses_verify(f in settled_field(), seed in any::<u64>(), levels in prop::collection::vec(0u32..10, 11..14)) {
        let ring = QuadRing::new(f);
        let form = form_with_levels(ring, &levels, &mut rng(seed));
        let w = solve(&form, 24).unwrap();
        let rep = verify(&form, &w).unwrap();
        prop_assert!(rep.pass, "{}", form);
        prop_assert_eq!(w.residual.bits(), 0);
    }

    #[test]
    fn solver_is_sound_on_small_forms(f in field(), seed in any::<u64>(), levels in prop::collection::vec(0u32..6, 2..7)) {
        let ring = QuadRing::new(f);
        let form = form_with_levels(ring, &levels, &mut rng(seed));
        if let Ok(w) = solve(&form, 20) {
            prop_assert!(verify(&form, &w).unwrap().pass);
        }
    }

    #[test]
    fn lift_trace_extends(f in field(), seed in any::<u64>(), nu in 7u32..12, m in 13u32..24) {
        let ring = QuadRing::new(f);
        let mut r = rng(seed);
        let (c, a) = (random_unit(ring, &mut r), random_unit(ring, &mut r));
        let b = c * a.pow4() + random_unit(ring, &mut r).mul_pi_pow(nu).lift_exact();
        let long = hensel_lift_trace(&c, &b, &a, nu, m).unwrap();
        let short = hensel_lift_trace(&c, &b, &a, nu, m - 1).unwrap();
        prop_assert_eq!(short.len() + 1, long.len());
        for (s, l) in short.iter().zip(&long) {
            prop_assert_eq!(s.coords(), l.coords());
        }
        prop_assert!(long.last().unwrap().congruent(short.last().unwrap(), m - 5));
    }

    #[test]
    fn reconstruct_hits_its_target(f in field(), seed in any::<u64>(), levels in prop::collection::vec(0u32..4, 1..6), n in 1u32..9) {
        let ring = QuadRing::new(f);
        let form = form_with_levels(ring, &levels, &mut rng(seed));
        let table = dp_reach(&form, n).unwrap();
        let rr = *table.residues();
        for key in table.reachable_keys().take(20).collect::<Vec<_>>() {
            let choices = table.reconstruct(key, &|_| true).unwrap();
            let x: Vec<RingElt> = choices.iter().map(|c| c.representative).collect();
            prop_assert_eq!(rr.key(&form.evaluate(&x, n).unwrap()), key);
            let nonzero = choices.iter().filter(|c| !c.is_zero()).count() as u8;
            prop_assert_eq!(Some(nonzero), table.flags_for_key(key).min_nonzero);
        }
    }

    #[test]
    fn toggle_changes_only_high_digits(f in settled_field(), seed in any::<u64>(), k in 0u32..4) {
        let ring = QuadRing::new(f);
        let mut r = rng(seed);
        let v1 = TrackedVariable::original(0, random_coeff(ring, k, &mut r)).unwrap();
        let v2 = TrackedVariable::original(1, random_coeff(ring, k, &mut r)).unwrap();
        let y = match contract_unit_pair(&v1, &v2) {
            Ok(y) => y,
            Err(_) => return Ok(()),
        };
        let target = k + 5;
        let z = toggle_pi5(&y, target).unwrap();
        prop_assert!(z.coeff().congruent(y.coeff(), target));
        prop_assert!(!z.coeff().congruent(y.coeff(), target + 1));
        let originals = [*v1.coeff(), *v2.coeff()];
        prop_assert!(z.replay(&originals).unwrap().congruent(z.coeff(), 24));
    }
}

#[test]
fn single_level_form_normalizes_to_level_zero() {
    let ring = QuadRing::new(Field::Sqrt2);
    let form = AdditiveForm::parse(&["p"; 11].join(","), ring, 24).unwrap();
    let n = form.normalize();
    assert_eq!(n.shift, 3);
    assert_eq!(n.form.type_of(), FormType([11, 0, 0, 0]));
    let form = form_of_type(ring, [1, 1, 5, 0], &mut rng(4));
    assert_eq!(form.normalize().form.type_of(), FormType([5, 0, 1, 1]));
}

#[test]
fn evaluate_examples() {
    let ring = QuadRing::new(Field::Sqrt2);
    let g = AdditiveForm::parse("1,1,1,1", ring, 24).unwrap();
    let one = ring.one(64).unwrap();
    let zero = ring.zero(64).unwrap();
    let four = ring.pi_pow(4, 7).unwrap();
    assert!(g.evaluate(&[one; 4], 7).unwrap().congruent(&four, 7));
    let two = ring.pi_pow(2, 5).unwrap();
    assert!(g.evaluate(&[one, one, zero, zero], 5).unwrap().congruent(&two, 5));
    assert!(g.evaluate(&[zero; 4], 7).unwrap().valuation().exact().is_none());
    assert!(g.evaluate(&[one; 3], 7).is_err());
}

#[test]
fn tampered_and_imprimitive_witnesses_fail() {
    let ring = QuadRing::new(Field::Sqrt10);
    let form = AdditiveForm::parse(&["1"; 11].join(","), ring, 24).unwrap();
    let w = solve(&form, 24).unwrap();
    let j = w.lifted_index;
    let mut bad = w.clone();
    bad.assignment[j] = bad.assignment[j] + ring.pi_pow(12, 64).unwrap();
    assert!(!verify(&form, &bad).unwrap().pass);

    let pi = ring.uniformizer(64).unwrap();
    let scaled = Witness { assignment: w.assignment.iter().map(|x| *x * pi).collect(), ..w.clone() };
    let rep = verify(&form, &scaled).unwrap();
    assert!(!rep.primitive && !rep.pass);
}
