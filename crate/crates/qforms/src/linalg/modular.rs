//! Modular specialization: evaluate rational-function matrices at random
//! points over large prime fields and compute ranks there.
//!
//! A specialized rank is a lower bound for the generic rank; agreement
//! across independent samples is reported as a probabilistic certificate,
//! never as exactness.

use num::bigint::BigInt;
use num::Integer;
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::elim::Echelon;
use super::field::{FieldCtx, PrimeField};
use super::{SparseMat, SparseVec};
use crate::error::QError;
use crate::scalar::{LaurentPoly, Scalar};

/// Primes just above 2^31: large enough that random specializations of the
/// desk-scale matrices almost never collapse, small enough for u64/u128
/// arithmetic.
pub const PRIMES: [u64; 8] = [
    2147483659,
    2147483693,
    2147483713,
    2147483743,
    2147483777,
    2147483783,
    2147483813,
    2147483857,
];

/// One specialization: a prime field and a nonzero evaluation point.
#[derive(Clone, Copy, Debug)]
pub struct ModularSample {
    pub field: PrimeField,
    pub point: [u64; 2],
}

/// Deterministic stream of specializations from a seed. Points are drawn
/// away from 0 and 1 so that q-integers and the standard denominators do
/// not vanish spuriously too often; true denominator zeros are still
/// detected at evaluation time and the sample is skipped by the caller.
pub fn sample_stream(seed: u64) -> impl Iterator<Item = ModularSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..).map(move |i: usize| {
        let p = PRIMES[i % PRIMES.len()];
        let t = rng.gen_range(2..p - 1);
        let s = rng.gen_range(2..p - 1);
        ModularSample { field: PrimeField::new(p), point: [t, s] }
    })
}

fn bigint_mod(n: &BigInt, f: &PrimeField) -> u64 {
    n.mod_floor(&BigInt::from(f.p)).to_u64().unwrap()
}

fn rational_mod(c: &num::rational::BigRational, f: &PrimeField) -> Result<u64, QError> {
    let d = bigint_mod(c.denom(), f);
    if d == 0 {
        return Err(QError::BadSpecialization);
    }
    f.div(&bigint_mod(c.numer(), f), &d)
}

fn poly_eval_mod(p: &LaurentPoly, sample: &ModularSample) -> Result<u64, QError> {
    let f = &sample.field;
    let mut acc = 0u64;
    for (e, c) in p.terms() {
        let mut term = rational_mod(c, f)?;
        for v in 0..p.vars() {
            let base = sample.point[v] % f.p;
            let pw = if e[v] >= 0 {
                f.pow(base, e[v] as u64)
            } else {
                f.pow(f.inv(&base)?, (-e[v]) as u64)
            };
            term = f.mul(&term, &pw);
        }
        acc = f.add(&acc, &term);
    }
    Ok(acc)
}

/// Evaluate a scalar at a modular sample; `BadSpecialization` if the
/// denominator vanishes there.
pub fn scalar_mod(x: &Scalar, sample: &ModularSample) -> Result<u64, QError> {
    let f = &sample.field;
    let d = poly_eval_mod(x.den(), sample)?;
    if d == 0 {
        return Err(QError::BadSpecialization);
    }
    f.div(&poly_eval_mod(x.num(), sample)?, &d)
}

/// Specialize a whole matrix at once.
pub fn mat_mod(m: &SparseMat<Scalar>, sample: &ModularSample) -> Result<SparseMat<u64>, QError> {
    m.map(|x| scalar_mod(x, sample))
}

/// How a reported rank was certified.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RankCertificate {
    /// Computed by exact elimination over the rational-function field.
    Exact,
    /// Equal ranks at `samples` independent modular specializations; a
    /// lower bound for the generic rank with high probability of equality.
    ProbabilisticLowerBoundAgreed { samples: usize },
}

impl RankCertificate {
    pub fn tag(&self) -> &'static str {
        match self {
            RankCertificate::Exact => "exact",
            RankCertificate::ProbabilisticLowerBoundAgreed { .. } => {
                "probabilistic-lower-bound-agreed"
            }
        }
    }
}

/// Rank by agreement over at least `samples` modular specializations
/// (minimum 2). Specializations where any denominator vanishes are skipped;
/// a bounded number of retries guards against adversarial scalars.
pub fn modular_rank(
    m: &SparseMat<Scalar>,
    samples: usize,
    seed: u64,
) -> Result<(usize, RankCertificate), QError> {
    let want = samples.max(2);
    let mut ranks: Vec<usize> = Vec::with_capacity(want);
    let mut tried = 0usize;
    for sample in sample_stream(seed) {
        if ranks.len() == want {
            break;
        }
        tried += 1;
        if tried > want + 16 {
            return Err(QError::SamplingExhausted);
        }
        let spec = match mat_mod(m, &sample) {
            Ok(spec) => spec,
            Err(QError::BadSpecialization) => continue,
            Err(e) => return Err(e),
        };
        ranks.push(rank_mod(&spec, &sample.field));
    }
    let best = *ranks.iter().max().unwrap();
    if ranks.iter().any(|r| *r != best) {
        // Disagreement means some sample hit a rank-dropping locus; the
        // maximum is still a valid lower bound, but confirm it once more.
        return modular_rank(m, want + 2, seed.wrapping_add(1));
    }
    Ok((best, RankCertificate::ProbabilisticLowerBoundAgreed { samples: want }))
}

/// Plain rank over a prime field.
pub fn rank_mod(m: &SparseMat<u64>, f: &PrimeField) -> usize {
    let mut ech = Echelon::new(*f, m.cols());
    for r in m.rows_iter() {
        if !r.is_empty() {
            ech.insert(r);
        }
    }
    ech.rank()
}

/// Streaming variant: rows are produced on demand so the full matrix never
/// has to be materialized.
pub fn rank_mod_streaming(
    cols: usize,
    rows: impl Iterator<Item = SparseVec<u64>>,
    f: &PrimeField,
) -> usize {
    let mut ech = Echelon::new(*f, cols);
    for r in rows {
        if !r.is_empty() {
            ech.insert(&r);
        }
    }
    ech.rank()
}
