//! Seeded random cochains and elements for property trials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Module;
use crate::cochain::{Cochain, Endomorphism};
use crate::error::Result;
use crate::field::{FieldSpec, Scalar};

pub type TrialRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-trial seed derived from a run seed, independent of scheduling.
pub fn trial_seed(run_seed: u64, check: &str, trial: u64) -> u64 {
    // FNV-1a over the check id, mixed with the run seed and trial number.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in check.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^= run_seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    h = h.wrapping_mul(0x0000_0100_0000_01b3);
    h ^ trial.wrapping_mul(0xbf58_476d_1ce4_e5b9)
}

/// Uniform residue over `F_p`; over `Q`, a small integer in `[-3, 3]`.
pub fn scalar(field: FieldSpec, rng: &mut TrialRng) -> Scalar {
    match field {
        FieldSpec::Rational => field.from_i64(rng.random_range(-3..=3)),
        FieldSpec::Prime(p) => field.from_i64(rng.random_range(0..p) as i64),
    }
}

pub fn vector(module: Module, rng: &mut TrialRng) -> Vec<Scalar> {
    (0..module.dim).map(|_| scalar(module.field, rng)).collect()
}

pub fn cochain(module: Module, degree: i64, rng: &mut TrialRng) -> Result<Cochain> {
    let len = crate::cochain::coefficient_count(module, degree)?;
    let values = (0..len).map(|_| scalar(module.field, rng)).collect();
    Cochain::from_scalars(module, degree, values)
}

pub fn endomorphism(module: Module, rng: &mut TrialRng) -> Endomorphism {
    let entries: Vec<Scalar> = (0..module.dim * module.dim)
        .map(|_| scalar(module.field, rng))
        .collect();
    Endomorphism::from_flat(module, &entries).expect("square")
}
