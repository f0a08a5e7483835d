//! Seeded random instances for the verification suites.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, trial)`, so
//! a trial can be replayed in isolation and parallel runs stay deterministic.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coinv::CoinvElem;
use crate::matalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::space::SymplecticSpace;
use crate::word::{Letter, Word};

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A random scalar; over `Q` numerator in `[-bound, bound]` and denominator in
/// `[1, bound]`, over `F_p` a uniform residue.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, bound: u32) -> Scalar {
    let bound = bound.max(1) as i64;
    match field.modulus() {
        None => {
            let n = rng.random_range(-bound..=bound);
            let d = rng.random_range(1..=bound);
            Scalar::from_fraction(field, &BigInt::from(n), &BigInt::from(d))
                .expect("nonzero denominator")
        }
        Some(p) => Scalar::from_i64(field, rng.random_range(0..p as i64)),
    }
}

pub fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, bound: u32) -> Scalar {
    loop {
        let s = scalar(rng, field, bound);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn word<R: Rng + ?Sized>(rng: &mut R, dim: usize, len: usize) -> Word {
    (0..len)
        .map(|_| rng.random_range(0..dim) as Letter)
        .collect()
}

/// A random combination of up to `max_terms` necklaces with lengths in
/// `min_len..=max_len`. May cancel to zero only in the unlikely event that
/// two drawn words share a necklace.
pub fn coinv<R: Rng + ?Sized>(
    rng: &mut R,
    space: &Arc<SymplecticSpace>,
    min_len: usize,
    max_len: usize,
    max_terms: usize,
) -> CoinvElem {
    let len = rng.random_range(min_len..=max_len);
    coinv_of_len(rng, space, len, max_terms)
}

/// Like [`coinv`] but each term draws its own length, giving mixed degrees.
pub fn coinv_mixed<R: Rng + ?Sized>(
    rng: &mut R,
    space: &Arc<SymplecticSpace>,
    min_len: usize,
    max_len: usize,
    max_terms: usize,
) -> CoinvElem {
    let terms = rng.random_range(1..=max_terms.max(1));
    let mut out = CoinvElem::zero(space.clone());
    for _ in 0..terms {
        let len = rng.random_range(min_len..=max_len);
        let c = nonzero_scalar(rng, space.field(), 4);
        out.add_word(&word(rng, space.dim(), len), &c);
    }
    out
}

pub fn coinv_of_len<R: Rng + ?Sized>(
    rng: &mut R,
    space: &Arc<SymplecticSpace>,
    len: usize,
    max_terms: usize,
) -> CoinvElem {
    let terms = rng.random_range(1..=max_terms.max(1));
    let mut out = CoinvElem::zero(space.clone());
    for _ in 0..terms {
        let c = nonzero_scalar(rng, space.field(), 4);
        out.add_word(&word(rng, space.dim(), len), &c);
    }
    out
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, n: usize, bound: u32) -> Matrix<Scalar> {
    Matrix::from_fn(n, field, |_, _| scalar(rng, field, bound))
}
