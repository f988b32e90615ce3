//! Optimal offline makespan.
//!
//! Sizes are rational, so both searches first scale the realization by the
//! least common denominator. The scaled instance has integer sizes and the
//! same optimal assignments; the search then runs on `u64` when the total
//! fits, and on `BigUint` otherwise.

use std::ops::{AddAssign, SubAssign};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::realization::Realization;

pub const DEFAULT_SEARCH_LIMIT: usize = 24;
pub const BRUTE_FORCE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptResult {
    pub lambda: Rational,
    /// Machine (1-based) of each job `1..=n`.
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
}

/// `max(p_1, W/m, p_m + p_{m+1})`.
pub fn optimal_lower_bound(r: &Realization, m: usize) -> Rational {
    assert!(m >= 1, "m must be positive");
    let avg = r.total() / Rational::from(m);
    let pigeon = r.size(m) + r.size(m + 1);
    r.size(1).max(avg).max(pigeon)
}

fn lpt_assignment(r: &Realization, m: usize) -> (Vec<usize>, Rational) {
    let mut loads = vec![Rational::zero(); m];
    let mut assignment = Vec::with_capacity(r.len());
    for p in r.sizes() {
        // min_by returns the first minimum: lowest machine index wins ties.
        let (target, _) = loads
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .unwrap();
        loads[target] += p;
        assignment.push(target + 1);
    }
    let makespan = loads.into_iter().max().unwrap_or_else(Rational::zero);
    (assignment, makespan)
}

/// Longest-processing-time list scheduling on the (already sorted) jobs,
/// ties to the lowest machine index.
pub fn lpt_makespan(r: &Realization, m: usize) -> Rational {
    assert!(m >= 1, "m must be positive");
    lpt_assignment(r, m).1
}

pub fn optimal_makespan(r: &Realization, m: usize) -> Result<OptResult> {
    optimal_makespan_with_limit(r, m, DEFAULT_SEARCH_LIMIT)
}

/// Exact optimum by depth-first branch and bound.
///
/// Zero-size jobs never change a load, so `limit` applies to the positive
/// jobs only. When LPT already meets [`optimal_lower_bound`] the optimum is
/// certified without search, whatever the size of the instance.
pub fn optimal_makespan_with_limit(r: &Realization, m: usize, limit: usize) -> Result<OptResult> {
    if m == 0 {
        return Err(Error::BadM(0));
    }
    let lower = optimal_lower_bound(r, m);
    let (lpt_witness, lpt) = lpt_assignment(r, m);
    if lpt == lower {
        return Ok(OptResult {
            lambda: lpt,
            witness: lpt_witness,
            nodes_explored: 0,
        });
    }
    let n = r.positive_len();
    if n > limit {
        return Err(Error::SearchLimitExceeded { n, limit });
    }

    let (scaled, denom) = scale_to_integers(&r.sizes()[..n]);
    let lower_scaled = (lower * Rational::from(BigInt::from(denom.clone()))).ceil();
    let lower_scaled = lower_scaled.to_biguint().expect("nonnegative bound");
    let incumbent: Vec<usize> = lpt_witness[..n].to_vec();

    let outcome = match to_u64_sizes(&scaled) {
        Some(small) => {
            let lower = lower_scaled.to_u64().unwrap_or(u64::MAX);
            BranchAndBound::run(&small, m, lower, incumbent)
        }
        None => BranchAndBound::run(&scaled, m, lower_scaled, incumbent),
    };

    let mut witness = outcome.assignment;
    witness.resize(r.len(), 1);
    let lambda = makespan_of(r, m, &witness);
    Ok(OptResult {
        lambda,
        witness,
        nodes_explored: outcome.nodes,
    })
}

/// Reference optimum: tries every assignment with job 1 pinned to machine 1.
pub fn brute_force_makespan(r: &Realization, m: usize) -> Result<Rational> {
    if m == 0 {
        return Err(Error::BadM(0));
    }
    let n = r.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SearchLimitExceeded {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if n == 0 {
        return Ok(Rational::zero());
    }
    let (scaled, denom) = scale_to_integers(r.sizes());
    let best = match to_u64_sizes(&scaled) {
        Some(small) => BigUint::from(exhaustive_min(&small, m)),
        None => exhaustive_min(&scaled, m),
    };
    Ok(Rational::from(BigInt::from(best)) / Rational::from(BigInt::from(denom)))
}

fn makespan_of(r: &Realization, m: usize, assignment: &[usize]) -> Rational {
    let mut loads = vec![Rational::zero(); m];
    for (p, &machine) in r.sizes().iter().zip(assignment) {
        loads[machine - 1] += p;
    }
    loads.into_iter().max().unwrap_or_else(Rational::zero)
}

/// Integer sizes `p_j * D` where `D` is the lcm of all denominators.
fn scale_to_integers(sizes: &[Rational]) -> (Vec<BigUint>, BigUint) {
    let denom = sizes
        .iter()
        .fold(BigInt::from(1u32), |acc, p| acc.lcm(p.denom()));
    let scaled = sizes
        .iter()
        .map(|p| {
            (p.numer() * (&denom / p.denom()))
                .to_biguint()
                .expect("sizes are nonnegative")
        })
        .collect();
    (scaled, denom.to_biguint().expect("positive denominator"))
}

fn to_u64_sizes(sizes: &[BigUint]) -> Option<Vec<u64>> {
    let total: BigUint = sizes.iter().sum();
    // Headroom so that load + size never overflows.
    if total.bits() >= 63 {
        return None;
    }
    sizes.iter().map(ToPrimitive::to_u64).collect()
}

/// Integer load type for the searches.
trait Load: Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> {}

impl Load for u64 {}
impl Load for BigUint {}

struct SearchOutcome {
    assignment: Vec<usize>,
    nodes: u64,
}

struct BranchAndBound<'a, T> {
    sizes: &'a [T],
    lower: T,
    loads: Vec<T>,
    current: Vec<usize>,
    best: T,
    best_assignment: Vec<usize>,
    nodes: u64,
}

impl<'a, T: Load> BranchAndBound<'a, T> {
    fn run(sizes: &'a [T], m: usize, lower: T, incumbent: Vec<usize>) -> SearchOutcome {
        let mut incumbent_loads = vec![T::zero(); m];
        for (p, &machine) in sizes.iter().zip(&incumbent) {
            incumbent_loads[machine - 1] += p;
        }
        let best = incumbent_loads.into_iter().max().unwrap_or_else(T::zero);
        let mut search = Self {
            sizes,
            lower,
            loads: vec![T::zero(); m],
            current: Vec::with_capacity(sizes.len()),
            best,
            best_assignment: incumbent,
            nodes: 0,
        };
        if search.best > search.lower {
            search.descend(0, T::zero());
        }
        SearchOutcome {
            assignment: search.best_assignment,
            nodes: search.nodes,
        }
    }

    /// Returns true once the incumbent provably meets the lower bound.
    fn descend(&mut self, j: usize, current_max: T) -> bool {
        self.nodes += 1;
        if j == self.sizes.len() {
            if current_max < self.best {
                self.best = current_max;
                self.best_assignment = self.current.clone();
            }
            return self.best <= self.lower;
        }
        let p = &self.sizes[j];
        let m = self.loads.len();
        let mut tried: Vec<T> = Vec::with_capacity(m);
        for i in 0..m {
            let load = &self.loads[i];
            // Machines with equal loads are interchangeable; this also lets a
            // job open at most one empty machine.
            if tried.contains(load) {
                continue;
            }
            tried.push(load.clone());
            let mut next = load.clone();
            next += p;
            if next >= self.best {
                continue;
            }
            let next_max = if next > current_max { next.clone() } else { current_max.clone() };
            self.loads[i] = next;
            self.current.push(i + 1);
            let done = self.descend(j + 1, next_max);
            self.current.pop();
            self.loads[i] -= p;
            if done {
                return true;
            }
        }
        false
    }
}

/// Enumerates all `m^(n-1)` assignments with job 1 on machine 1.
fn exhaustive_min<T: Load>(sizes: &[T], m: usize) -> T {
    fn rec<T: Load>(sizes: &[T], j: usize, loads: &mut Vec<T>, best: &mut Option<T>) {
        if j == sizes.len() {
            let max = loads.iter().max().cloned().unwrap_or_else(T::zero);
            if best.as_ref().is_none_or(|b| max < *b) {
                *best = Some(max);
            }
            return;
        }
        for i in 0..loads.len() {
            loads[i] += &sizes[j];
            rec(sizes, j + 1, loads, best);
            loads[i] -= &sizes[j];
        }
    }
    let mut loads = vec![T::zero(); m];
    loads[0] += &sizes[0];
    let mut best = None;
    rec(sizes, 1, &mut loads, &mut best);
    best.unwrap_or_else(T::zero)
}
