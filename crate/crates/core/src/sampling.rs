//! Seeded random elements for property suites.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group::{Generator, GroupObservable, Letter, Word};
use crate::qtorus::{Monomial, TorusElement};
use crate::surd::SurdScalar;
use crate::tensor::{TensorElement, TensorMonomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coeff<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Between 1 and `max_terms` monomials with exponents in `[-radius, radius]²`.
pub fn random_torus_element<R: Rng>(
    rng: &mut R,
    theta: &SurdScalar,
    radius: i64,
    max_terms: usize,
) -> TorusElement {
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let m = rng.gen_range(-radius..=radius);
            let n = rng.gen_range(-radius..=radius);
            (Monomial::new(m, n), random_coeff(rng))
        })
        .collect();
    TorusElement::from_terms(theta.clone(), terms)
}

/// Between 1 and `max_terms` tensor monomials with exponents in `[-radius, radius]⁴`.
pub fn random_tensor_element<R: Rng>(
    rng: &mut R,
    theta1: &SurdScalar,
    theta2: &SurdScalar,
    radius: i64,
    max_terms: usize,
) -> TensorElement {
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let mono = TensorMonomial::new(
                rng.gen_range(-radius..=radius),
                rng.gen_range(-radius..=radius),
                rng.gen_range(-radius..=radius),
                rng.gen_range(-radius..=radius),
            );
            (mono, random_coeff(rng))
        })
        .collect();
    TensorElement::from_terms(theta1.clone(), theta2.clone(), terms)
}

/// Random reduced word over `s1..=s_alphabet` and `t_{-span}..=t_{span}`.
pub fn random_word<R: Rng>(rng: &mut R, alphabet: u32, span: i64, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<_> = (0..len)
        .map(|_| {
            let generator = if alphabet > 0 && rng.gen_bool(0.5) {
                Generator::S1(rng.gen_range(1..=alphabet))
            } else {
                Generator::S2(rng.gen_range(-span..=span))
            };
            Letter::new(generator, rng.gen_bool(0.5))
        })
        .collect();
    Word::reduce(letters)
}

pub fn random_group_observable<R: Rng>(
    rng: &mut R,
    alphabet: u32,
    span: i64,
    max_len: usize,
    max_terms: usize,
) -> GroupObservable {
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| (random_word(rng, alphabet, span, max_len), random_coeff(rng)))
        .collect();
    GroupObservable::from_terms(terms)
}
