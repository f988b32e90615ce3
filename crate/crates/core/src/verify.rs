//! Measuring solution pairs against the exact optimum.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lowerbounds::proposition_inputs;
use crate::oracle::{optimal_makespan_with_limit, DEFAULT_SEARCH_LIMIT};
use crate::patterns::{builtin_pair, evaluate, pair_evaluate, SolutionPair};
use crate::rational::Rational;
use crate::realization::Realization;

/// Pair makespan over optimal makespan; 1 when every job has size zero.
pub fn competitive_ratio(pair: &SolutionPair, r: &Realization) -> Result<Rational> {
    competitive_ratio_with_limit(pair, r, DEFAULT_SEARCH_LIMIT)
}

pub fn competitive_ratio_with_limit(
    pair: &SolutionPair,
    r: &Realization,
    limit: usize,
) -> Result<Rational> {
    let lambda = optimal_makespan_with_limit(r, pair.m(), limit)?.lambda;
    if lambda.is_zero() {
        return Ok(Rational::one());
    }
    Ok(pair_evaluate(pair, r).pair_makespan / lambda)
}

/// `sum(coef * C_i) + sum(coef * L_i) <= lambda_coef * lambda`, where `C`
/// are the first solution's loads and `L` the second's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadInequality {
    pub first: Vec<(i64, usize)>,
    pub second: Vec<(i64, usize)>,
    pub lambda_coef: Rational,
}

impl LoadInequality {
    fn new(first: &[(i64, usize)], second: &[(i64, usize)], lambda_coef: Rational) -> Self {
        Self {
            first: first.to_vec(),
            second: second.to_vec(),
            lambda_coef,
        }
    }

    pub fn label(&self) -> String {
        let mut terms = Vec::new();
        for (prefix, list) in [("C", &self.first), ("L", &self.second)] {
            for &(coef, machine) in list {
                let mut t = String::new();
                if coef != 1 {
                    write!(t, "{coef}*").unwrap();
                }
                write!(t, "{prefix}{machine}").unwrap();
                terms.push(t);
            }
        }
        format!("{} <= {}*lambda", terms.join(" + "), self.lambda_coef)
    }
}

/// Load inequalities whose conjunction proves the upper bound of the
/// built-in pair for `m`: every listed load is small, and for the remaining
/// machines a weighted pair sum is small, so one of the two solutions wins.
pub fn proof_registry(m: usize) -> Result<Vec<LoadInequality>> {
    let single = |first: &[usize], second: &[usize], bound: Rational| {
        first
            .iter()
            .map(|&i| LoadInequality::new(&[(1, i)], &[], bound.clone()))
            .chain(
                second
                    .iter()
                    .map(|&i| LoadInequality::new(&[], &[(1, i)], bound.clone())),
            )
            .collect::<Vec<_>>()
    };
    let q = Rational::frac;
    let mut items;
    match m {
        2 => {
            items = single(&[1], &[2], q(5, 4));
            items.push(LoadInequality::new(&[(1, 2)], &[(1, 1)], q(5, 2)));
        }
        3 => {
            items = single(&[1, 2], &[2, 3], q(4, 3));
            items.push(LoadInequality::new(&[(6, 3)], &[(6, 1)], q(16, 1)));
        }
        4 => {
            items = single(&[1, 2], &[3, 4], q(11, 8));
            items.push(LoadInequality::new(&[(2, 3)], &[(1, 1)], q(4, 1)));
            items.push(LoadInequality::new(&[(2, 4)], &[(1, 1)], q(4, 1)));
            items.push(LoadInequality::new(&[(2, 3)], &[(1, 2)], q(4, 1)));
            items.push(LoadInequality::new(&[(1, 4)], &[(2, 2)], q(4, 1)));
        }
        5 => {
            items = single(&[1, 2, 3], &[3, 4, 5], q(7, 5));
            items.push(LoadInequality::new(&[(2, 4)], &[(2, 2)], q(5, 1)));
            items.push(LoadInequality::new(&[(2, 5)], &[(2, 2)], q(11, 2)));
            items.push(LoadInequality::new(&[(10, 4)], &[(5, 1)], q(21, 1)));
            items.push(LoadInequality::new(&[(10, 5)], &[(5, 1)], q(21, 1)));
        }
        _ => return Err(Error::UnsupportedM(m)),
    }
    Ok(items)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofItem {
    pub label: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofReport {
    pub m: usize,
    pub lambda: Rational,
    pub items: Vec<ProofItem>,
}

impl ProofReport {
    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|i| i.holds)
    }
}

/// Evaluates [`proof_registry`] for the built-in pair on `r` with the exact
/// optimum as `lambda`.
pub fn proof_inequality_report(m: usize, r: &Realization) -> Result<ProofReport> {
    let registry = proof_registry(m)?;
    let pair = builtin_pair(m)?;
    let lambda = optimal_makespan_with_limit(r, m, DEFAULT_SEARCH_LIMIT)?.lambda;
    let c = evaluate(pair.first(), r).loads;
    let l = evaluate(pair.second(), r).loads;
    let combine = |terms: &[(i64, usize)], loads: &[Rational]| -> Rational {
        terms
            .iter()
            .map(|&(coef, i)| Rational::from(coef) * &loads[i - 1])
            .sum()
    };
    let items = registry
        .iter()
        .map(|ineq| {
            let lhs = combine(&ineq.first, &c) + combine(&ineq.second, &l);
            let rhs = &ineq.lambda_coef * &lambda;
            ProofItem {
                label: ineq.label(),
                holds: lhs <= rhs,
                lhs,
                rhs,
            }
        })
        .collect();
    Ok(ProofReport { m, lambda, items })
}

/// How random sizes are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SizeModel {
    /// Integers uniform in `0..=k`.
    IntegerMax(u32),
    /// Multiples of `1/d` uniform in `[0, 1]`.
    RationalGrid(u32),
}

/// Draws `n` uniform in `0..=n_max` sizes from `model`, sorted
/// nonincreasingly. Same seed, same realization.
pub fn random_realization(n_max: usize, model: SizeModel, seed: u64) -> Realization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(0..=n_max);
    let mut sizes: Vec<Rational> = (0..n)
        .map(|_| match model {
            SizeModel::IntegerMax(k) => Rational::from(rng.gen_range(0..=k as i64)),
            SizeModel::RationalGrid(d) => {
                let d = d.max(1) as i64;
                Rational::frac(rng.gen_range(0..=d), d)
            }
        })
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Realization::new(sizes).expect("sorted nonnegative sizes")
}

/// Seed of trial `t` in a corpus seeded with `seed` (splitmix64 step).
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    let mut z = seed.wrapping_add(t.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub const DEFAULT_MODELS: [SizeModel; 2] = [SizeModel::IntegerMax(8), SizeModel::RationalGrid(12)];

/// Trial `t` of a seeded corpus; models alternate by trial index.
pub fn corpus_realization(t: usize, n_max: usize, seed: u64, models: &[SizeModel]) -> Realization {
    let model = models[t % models.len()];
    random_realization(n_max, model, trial_seed(seed, t as u64))
}

/// `m+1` jobs of size 1/2 followed by `k` jobs of size `(m-1)/(2k)`.
///
/// Total size is `m` and a packing with makespan 1 exists, so the optimum
/// is exactly 1 when `k` is divisible by 3 (`m = 4`) or by 2 (`m = 5`).
pub fn tightness_instance(m: usize, k: usize) -> Result<Realization> {
    let divisor = match m {
        4 => 3,
        5 => 2,
        _ => {
            return Err(Error::BadParameters(format!(
                "tightness instances exist for m in {{4, 5}}, got {m}"
            )))
        }
    };
    if k == 0 || !k.is_multiple_of(divisor) {
        return Err(Error::BadParameters(format!(
            "K = {k} must be a positive multiple of {divisor} for m = {m}"
        )));
    }
    let half = Rational::frac(1, 2);
    let small = Rational::frac(m as i64 - 1, 2 * k as i64);
    let sizes = std::iter::repeat_n(half, m + 1)
        .chain(std::iter::repeat_n(small, k))
        .collect();
    Realization::new(sizes)
}

/// Inputs every stress run includes: the lower-bound realizations for this
/// `m` and, for `m` in {4, 5}, tightness instances.
pub fn fixed_battery(m: usize) -> Vec<Realization> {
    let mut battery = proposition_inputs(m).map(|p| p.inputs).unwrap_or_default();
    for k in [12, 120] {
        if let Ok(r) = tightness_instance(m, k) {
            battery.push(r);
        }
    }
    battery
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StressConfig {
    pub bound: Rational,
    pub trials: usize,
    pub n_max: usize,
    pub seed: u64,
    pub models: Vec<SizeModel>,
    pub include_battery: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StressResult {
    pub trials: usize,
    pub battery: usize,
    pub max_ratio: Rational,
    pub witness: Realization,
    pub bound: Rational,
    pub ok: bool,
}

pub fn stress_search(
    pair: &SolutionPair,
    bound: Rational,
    trials: usize,
    n_max: usize,
    seed: u64,
) -> Result<StressResult> {
    stress_search_with(
        pair,
        &StressConfig {
            bound,
            trials,
            n_max,
            seed,
            models: DEFAULT_MODELS.to_vec(),
            include_battery: true,
        },
    )
}

/// Worst ratio over the battery followed by `trials` seeded random
/// realizations. Ties go to the earliest input, so the result does not
/// depend on the number of worker threads.
pub fn stress_search_with(pair: &SolutionPair, config: &StressConfig) -> Result<StressResult> {
    if config.n_max > DEFAULT_SEARCH_LIMIT {
        return Err(Error::SearchLimitExceeded {
            n: config.n_max,
            limit: DEFAULT_SEARCH_LIMIT,
        });
    }
    if config.models.is_empty() && config.trials > 0 {
        return Err(Error::BadParameters("no size model given".into()));
    }
    let battery = if config.include_battery {
        fixed_battery(pair.m())
    } else {
        Vec::new()
    };
    let nb = battery.len();
    let input = |idx: usize| -> Realization {
        if idx < nb {
            battery[idx].clone()
        } else {
            corpus_realization(idx - nb, config.n_max, config.seed, &config.models)
        }
    };
    let worst = (0..nb + config.trials)
        .into_par_iter()
        .map(|idx| competitive_ratio(pair, &input(idx)).map(|ratio| (ratio, idx)))
        .try_reduce_with(|a, b| {
            Ok(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            })
        })
        .transpose()?;
    let (max_ratio, witness) = match worst {
        Some((ratio, idx)) => (ratio, input(idx)),
        None => (Rational::one(), Realization::empty()),
    };
    Ok(StressResult {
        trials: config.trials,
        battery: nb,
        ok: max_ratio <= config.bound,
        max_ratio,
        witness,
        bound: config.bound.clone(),
    })
}

/// Proven competitive ratio of the built-in pair for `m`.
pub fn builtin_bound(m: usize) -> Result<Rational> {
    match m {
        2 => Ok(Rational::frac(5, 4)),
        3 => Ok(Rational::frac(4, 3)),
        4 => Ok(Rational::frac(11, 8)),
        5 => Ok(Rational::frac(7, 5)),
        _ => Err(Error::UnsupportedM(m)),
    }
}
