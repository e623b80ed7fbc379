use quartic::forms::AdditiveForm;
use quartic::solver::dp::dp_reach;
use quartic::solver::find_liftable;
use quartic::{Error, Field, QuadRing};

fn form(f: Field, text: &str) -> AdditiveForm {
    AdditiveForm::parse(text, QuadRing::new(f), 24).unwrap()
}

#[test]
fn two_ones_mod_pi4() {
    let g = form(Field::Sqrt2, "1,1");
    let t = dp_reach(&g, 4).unwrap();
    let ring = g.ring();
    for e in [ring.zero(4).unwrap(), ring.one(4).unwrap(), ring.make(2, 0, 4).unwrap()] {
        assert!(t.flags(&e).reachable);
    }
    let zero = t.flags(&ring.zero(4).unwrap());
    assert_eq!(zero.min_nonzero, Some(0));
}

#[test]
fn g_has_no_primitive_zero_mod_pi5() {
    for f in Field::SETTLED {
        let g = form(f, "1,1,1,1");
        let t = dp_reach(&g, 5).unwrap();
        assert!(!t.flags_for_key(0).has_unit, "{f}");
    }
}

#[test]
fn ten_variable_forms_have_no_primitive_zero_mod_pi8() {
    for (f, h) in [(Field::Sqrt2, "p"), (Field::Sqrt10, "p"), (Field::SqrtNeg2, "p+p^2"), (Field::SqrtNeg10, "p+p^2")] {
        let text = format!("1,1,1,1,{}", [h; 6].join(","));
        let t = dp_reach(&form(f, &text), 8).unwrap();
        assert!(!t.flags_for_key(0).has_unit, "{f}");
        assert!(matches!(find_liftable(&form(f, &text)), Err(Error::NotFound(_))));
    }
}

#[test]
fn unit_levels_are_tracked() {
    let t = dp_reach(&form(Field::SqrtNeg5, "p^2,-1*p^2,1"), 6).unwrap();
    let flags = t.flags_for_key(0);
    assert!(flags.unit_levels.contains(&2));
    let pick = t.reconstruct(0, &|l| l == Some(2)).unwrap();
    assert!(pick[0].is_unit() && pick[1].is_unit() && pick[2].is_zero());
}

#[test]
fn eleven_ones_have_a_liftable_zero() {
    for f in Field::ALL {
        let w = find_liftable(&form(f, &["1"; 11].join(","))).unwrap();
        assert_eq!(w.modulus, 7, "{f}");
    }
}

#[test]
fn modulus_bounds() {
    let g = form(Field::Sqrt2, "1");
    assert!(dp_reach(&g, 0).is_err());
    assert!(dp_reach(&g, 13).is_err());
}
