//! Seeded randomized sweeps over admissible multicusps.
//!
//! Instance `(level, trial)` draws from its own ChaCha stream, so results do
//! not depend on how trials are scheduled across threads.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multigerm::Multicusp;
use crate::report::{Inputs, Statement, TrialSummary, VerificationReport};
use crate::scalar::{distinct_mod_pi, CirclePoint, HalfTangent};
use crate::theorems::{
    liftable_generator_count, verify_bookkeeping, verify_corollary1, verify_lemma1_and_theorem2,
};
use crate::Rational;

/// Half tangents are drawn as `p/q` with `|p| ≤ 9` and `1 ≤ q ≤ 9`.
pub const MAX_HALF_TANGENT_PART: i64 = 9;

/// Highest level at which the generator count is evaluated in a sweep.
pub const GENERATOR_COUNT_MAX_LEVEL: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_level: usize,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.max_level == 0 {
            return Err(Error::Config("max level must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn instance_rng(seed: u64, level: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((level as u64) << 32) | trial as u64);
    rng
}

pub fn random_circle_point<R: Rng>(rng: &mut R) -> CirclePoint<Rational> {
    let p = rng.random_range(-MAX_HALF_TANGENT_PART..=MAX_HALF_TANGENT_PART);
    let q = rng.random_range(1..=MAX_HALF_TANGENT_PART);
    CirclePoint::from_half_tangent(&HalfTangent::Finite(Rational::new(p.into(), q.into())))
}

/// Draws branches until `branch_count` pairwise admissible angles are found.
pub fn random_multicusp<R: Rng>(rng: &mut R, branch_count: usize) -> Multicusp<Rational> {
    let mut branches: Vec<CirclePoint<Rational>> = Vec::with_capacity(branch_count);
    while branches.len() < branch_count {
        let candidate = random_circle_point(rng);
        if branches.iter().all(|b| distinct_mod_pi(b, &candidate)) {
            branches.push(candidate);
        }
    }
    Multicusp::new(branches).expect("branches are pairwise admissible")
}

/// The multicusp with `level + 1` branches used for instance `(level, trial)`.
pub fn sweep_instance(seed: u64, level: usize, trial: usize) -> Multicusp<Rational> {
    random_multicusp(&mut instance_rng(seed, level, trial), level + 1)
}

pub fn run_trial(level: usize, trial: usize, f: &Multicusp<Rational>) -> Result<TrialSummary> {
    let (lemma1, theorem2) = verify_lemma1_and_theorem2(f, level)?;
    let corollary1 = verify_corollary1(f, level)?;
    let mut bookkeeping = true;
    for l in 1..=level + 1 {
        bookkeeping &= verify_bookkeeping(f, l)?.holds();
    }
    let generator_count = if level <= GENERATOR_COUNT_MAX_LEVEL && corollary1.pass {
        Some(liftable_generator_count(f, level)?)
    } else {
        None
    };
    let mut summary = TrialSummary {
        level,
        trial,
        branches: f.to_string(),
        lemma1: lemma1.pass,
        theorem2: theorem2.pass,
        corollary1: corollary1.pass,
        bookkeeping,
        generator_count,
        pass: false,
    };
    summary.pass = summary.derived_pass();
    Ok(summary)
}

/// Runs every verifier on `trials` random multicusps at each level `1..=max_level`.
pub fn run_sweep(config: &SweepConfig) -> Result<VerificationReport> {
    config.validate()?;
    let jobs: Vec<(usize, usize)> = (1..=config.max_level)
        .flat_map(|level| (0..config.trials).map(move |trial| (level, trial)))
        .collect();
    let trials = jobs
        .par_iter()
        .map(|&(level, trial)| run_trial(level, trial, &sweep_instance(config.seed, level, trial)))
        .collect::<Result<Vec<_>>>()?;

    let mut report = VerificationReport::new(
        Statement::Sweep,
        Inputs {
            seed: Some(config.seed),
            trials: Some(config.trials),
            max_level: Some(config.max_level),
            ..Inputs::default()
        },
    );
    let passed = trials.iter().filter(|t| t.pass).count();
    report.dimension("instances", vec![trials.len()]);
    report.dimension("passed", vec![passed]);
    report.pass = passed == trials.len();
    report.trials = Some(trials);
    Ok(report)
}
