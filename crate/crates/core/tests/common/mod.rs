#![allow(dead_code)]

use quartic::forms::AdditiveForm;
use quartic::{Digits, QuadRing, RingElt};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `1 + c₁π + … + c₈π⁸` with random digits.
pub fn random_unit(ring: QuadRing, rng: &mut impl Rng) -> RingElt {
    let bits = 1 | (rng.gen::<u64>() & 0x1fe);
    ring.from_digits_exact(&Digits::new(bits, 9))
}

/// `π^level` times a random unit.
pub fn random_coeff(ring: QuadRing, level: u32, rng: &mut impl Rng) -> RingElt {
    random_unit(ring, rng).mul_pi_pow(level).lift_exact()
}

pub fn form_with_levels(ring: QuadRing, levels: &[u32], rng: &mut impl Rng) -> AdditiveForm {
    let coeffs = levels.iter().map(|&l| random_coeff(ring, l, rng)).collect();
    AdditiveForm::new(ring, coeffs, 24).unwrap()
}

/// A random form with `counts[r]` variables at level `r`, shuffled.
pub fn form_of_type(ring: QuadRing, counts: [usize; 4], rng: &mut impl Rng) -> AdditiveForm {
    let mut levels: Vec<u32> = (0..4u32).flat_map(|r| std::iter::repeat_n(r, counts[r as usize])).collect();
    for i in (1..levels.len()).rev() {
        levels.swap(i, rng.gen_range(0..=i));
    }
    form_with_levels(ring, &levels, rng)
}

/// Every element of `O/π^k` as an exact element, in digit order.
pub fn all_residues(ring: QuadRing, k: u32) -> Vec<RingElt> {
    (0..1u64 << k).map(|b| ring.from_digits_exact(&Digits::new(b, k))).collect()
}
