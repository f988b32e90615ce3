//! Computational lower bounds.
//!
//! * The two-solution game: for a fixed family of adversarial inputs whose
//!   positive jobs lie among the first `k`, every pair of partitions of
//!   `{1..k}` into at most `m` blocks is scored by its worst ratio over the
//!   family. The minimum score bounds every two-solution algorithm from
//!   below on that family.
//! * The adversary that defeats any finite set of two-machine solutions.
//! * The closed-form bound for single-solution algorithms built from three
//!   input classes, one constraint per machine.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::oracle::optimal_makespan;
use crate::patterns::{evaluate, solution_type, AssignmentRule};
use crate::rational::Rational;
use crate::realization::{Block, Realization, RunLengthRealization};

pub const MAX_PARTITION_JOBS: usize = 12;

/// Partition counts above this need `allow_long` in the game search.
pub const LONG_GAME_PARTITIONS: u64 = 10_000;

/// A set partition of `{1..k}` as a restricted-growth string: job 1 has
/// label 0 and every label is at most one more than all earlier labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixPartition {
    labels: Vec<u8>,
    blocks: usize,
}

impl PrefixPartition {
    /// Canonicalizes arbitrary block labels (first occurrence order).
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let mut seen: Vec<usize> = Vec::new();
        let labels = assignment
            .iter()
            .map(|a| match seen.iter().position(|s| s == a) {
                Some(pos) => pos as u8,
                None => {
                    seen.push(*a);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Self {
            labels,
            blocks: seen.len(),
        }
    }

    /// Partition induced by `rule` on jobs `1..=k`.
    pub fn from_rule(rule: &AssignmentRule, k: usize) -> Self {
        Self::from_assignment(&rule.assignment(k))
    }

    pub fn k(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    /// Largest block load when job `j <= k` has size `r.size(j)`.
    pub fn makespan(&self, r: &Realization) -> Rational {
        let mut loads = vec![Rational::zero(); self.blocks];
        for (idx, &label) in self.labels.iter().enumerate() {
            loads[label as usize] += &r.size(idx + 1);
        }
        loads.into_iter().max().unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for PrefixPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.labels {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for PrefixPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.labels.serialize(serializer)
    }
}

/// Restricted-growth strings in lexicographic order.
#[derive(Debug, Clone)]
pub struct PartitionIter {
    labels: Vec<u8>,
    /// `prefix_max[j]` = max of `labels[..=j]`.
    prefix_max: Vec<u8>,
    max_label: u8,
    started: bool,
    done: bool,
}

impl Iterator for PartitionIter {
    type Item = PrefixPartition;

    fn next(&mut self) -> Option<PrefixPartition> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(PrefixPartition {
            labels: self.labels.clone(),
            blocks: *self.prefix_max.last().unwrap() as usize + 1,
        })
    }
}

impl PartitionIter {
    fn advance(&mut self) -> bool {
        let k = self.labels.len();
        for j in (1..k).rev() {
            let cap = (self.prefix_max[j - 1] + 1).min(self.max_label);
            if self.labels[j] < cap {
                self.labels[j] += 1;
                self.prefix_max[j] = self.prefix_max[j - 1].max(self.labels[j]);
                for t in j + 1..k {
                    self.labels[t] = 0;
                    self.prefix_max[t] = self.prefix_max[j];
                }
                return true;
            }
        }
        false
    }
}

/// Every partition of `{1..k}` into at most `max_blocks` blocks, once each.
pub fn enumerate_partitions(k: usize, max_blocks: usize) -> Result<PartitionIter> {
    if k == 0 || max_blocks == 0 {
        return Err(Error::BadParameters(format!(
            "need k >= 1 and max_blocks >= 1, got k={k}, max_blocks={max_blocks}"
        )));
    }
    if k > MAX_PARTITION_JOBS {
        return Err(Error::LimitExceeded(format!(
            "k = {k} exceeds {MAX_PARTITION_JOBS}"
        )));
    }
    let max_label = (max_blocks.min(k) - 1) as u8;
    Ok(PartitionIter {
        labels: vec![0; k],
        prefix_max: vec![0; k],
        max_label,
        started: false,
        done: false,
    })
}

/// Adversarial inputs for the game with `m` machines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionInputs {
    pub k: usize,
    pub inputs: Vec<Realization>,
}

pub fn proposition_inputs(m: usize) -> Result<PropositionInputs> {
    let r = |v: &[i64]| Realization::from_integers(v).expect("sorted literal");
    let repeated = |blocks: &[(i64, usize)]| {
        let v: Vec<i64> = blocks
            .iter()
            .flat_map(|&(size, count)| std::iter::repeat_n(size, count))
            .collect();
        r(&v)
    };
    match m {
        0 | 1 => Err(Error::BadM(m)),
        2 => Ok(PropositionInputs {
            k: 5,
            inputs: vec![
                r(&[4, 1, 1, 1, 1]),
                r(&[3, 2, 2, 1, 0]),
                r(&[2, 2, 2, 1, 1]),
                r(&[2, 1, 1, 1, 1]),
            ],
        }),
        3 => Ok(PropositionInputs {
            k: 8,
            inputs: vec![
                r(&[3, 3, 1, 1, 1, 0, 0]),
                r(&[2, 1, 1, 1, 1, 0, 0]),
                r(&[2, 2, 2, 1, 1, 1, 0]),
                r(&[3, 1, 1, 1, 1, 1, 1]),
                r(&[6, 6, 1, 1, 1, 1, 1, 1]),
                r(&[3, 3, 3, 3, 3, 1, 1, 1]),
            ],
        }),
        _ => Ok(PropositionInputs {
            k: 2 * m,
            inputs: vec![
                repeated(&[(1, 2 * m)]),
                repeated(&[(3, 2), (2, m - 4), (1, m + 2)]),
                repeated(&[(3, 1), (2, m - 2), (1, m + 1)]),
            ],
        }),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GameOptions {
    /// Permit searches with more than [`LONG_GAME_PARTITIONS`] partitions.
    pub allow_long: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameResult {
    pub m: usize,
    pub k: usize,
    pub inputs: Vec<Realization>,
    pub lambdas: Vec<Rational>,
    pub value: Rational,
    pub witness: (PrefixPartition, PrefixPartition),
    /// Input on which the witness pair attains `value`.
    pub worst_input_index: usize,
    pub partitions: u64,
    /// Unordered pairs covered by the search.
    pub pairs_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameWitness {
    pub s1_labels: Vec<u8>,
    pub s2_labels: Vec<u8>,
}

/// Serialized lower-bound certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameCertificate {
    pub m: usize,
    pub k: usize,
    pub inputs: Vec<Realization>,
    pub value: Rational,
    pub witness: GameWitness,
    pub per_pair_checked: u64,
}

impl GameResult {
    pub fn certificate(&self) -> GameCertificate {
        GameCertificate {
            m: self.m,
            k: self.k,
            inputs: self.inputs.clone(),
            value: self.value.clone(),
            witness: GameWitness {
                s1_labels: self.witness.0.labels.clone(),
                s2_labels: self.witness.1.labels.clone(),
            },
            per_pair_checked: self.pairs_checked,
        }
    }
}

fn ratio_or_one(makespan: Rational, lambda: &Rational) -> Rational {
    if lambda.is_zero() {
        Rational::one()
    } else {
        makespan / lambda
    }
}

fn check_game_inputs(inputs: &[Realization], k: usize) -> Result<()> {
    if inputs.is_empty() {
        return Err(Error::BadParameters("no adversarial inputs".into()));
    }
    for (idx, r) in inputs.iter().enumerate() {
        if r.positive_len() > k {
            return Err(Error::BadParameters(format!(
                "input {} has {} positive jobs, more than k = {k}",
                idx + 1,
                r.positive_len()
            )));
        }
    }
    Ok(())
}

/// Worst ratio of the pair `(s1, s2)` over `inputs`.
pub fn pair_game_ratio(
    m: usize,
    inputs: &[Realization],
    s1: &PrefixPartition,
    s2: &PrefixPartition,
) -> Result<Rational> {
    if s1.k() != s2.k() || s1.block_count() > m || s2.block_count() > m {
        return Err(Error::BadParameters("partitions do not fit the game".into()));
    }
    check_game_inputs(inputs, s1.k())?;
    let mut worst = Rational::zero();
    for r in inputs {
        let lambda = optimal_makespan(r, m)?.lambda;
        let a = ratio_or_one(s1.makespan(r), &lambda);
        let b = ratio_or_one(s2.makespan(r), &lambda);
        worst = worst.max(a.min(b));
    }
    Ok(worst)
}

/// Exact value of the two-solution game on `inputs` (see module docs).
pub fn two_solution_game_value(
    m: usize,
    inputs: &[Realization],
    k: usize,
    options: GameOptions,
) -> Result<GameResult> {
    if m == 0 {
        return Err(Error::BadM(m));
    }
    check_game_inputs(inputs, k)?;
    let partitions: Vec<PrefixPartition> = enumerate_partitions(k, m)?.collect();
    let count = partitions.len() as u64;
    if count > LONG_GAME_PARTITIONS && !options.allow_long {
        return Err(Error::LimitExceeded(format!(
            "{count} partitions ({} pairs); pass allow_long to run",
            count * (count + 1) / 2
        )));
    }
    let lambdas = inputs
        .iter()
        .map(|r| optimal_makespan(r, m).map(|o| o.lambda))
        .collect::<Result<Vec<_>>>()?;

    // Ratios are compared only with each other, so replace them by their
    // rank among all distinct values: the search then runs on integers.
    let t = inputs.len();
    let ratios: Vec<Rational> = partitions
        .par_iter()
        .flat_map_iter(|p| {
            inputs
                .iter()
                .zip(&lambdas)
                .map(move |(r, lambda)| ratio_or_one(p.makespan(r), lambda))
        })
        .collect();
    let mut distinct = ratios.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let ranks: Vec<u32> = ratios
        .iter()
        .map(|x| distinct.binary_search(x).expect("present") as u32)
        .collect();
    let row = |a: usize| &ranks[a * t..(a + 1) * t];

    let n = partitions.len();
    // For each first solution, the best second solution at or after it.
    let best = (0..n)
        .into_par_iter()
        .map(|a| {
            let ra = row(a);
            let mut local = (u32::MAX, a, a);
            for b in a..n {
                let rb = row(b);
                let mut worst = 0u32;
                for (x, y) in ra.iter().zip(rb) {
                    worst = worst.max(*x.min(y));
                    if worst >= local.0 {
                        break;
                    }
                }
                if worst < local.0 {
                    local = (worst, a, b);
                }
            }
            local
        })
        .min()
        .expect("at least one partition");

    let (rank, a, b) = best;
    let worst_input_index = (0..t)
        .find(|&i| row(a)[i].min(row(b)[i]) == rank)
        .expect("rank attained");
    Ok(GameResult {
        m,
        k,
        inputs: inputs.to_vec(),
        lambdas,
        value: distinct[rank as usize].clone(),
        witness: (partitions[a].clone(), partitions[b].clone()),
        worst_input_index,
        partitions: count,
        pairs_checked: count * (count + 1) / 2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdversaryCheck {
    pub solution_type: Option<usize>,
    pub makespan: Rational,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdversaryResult {
    pub i: usize,
    pub instance: Realization,
    pub lambda: Rational,
    pub ratio_lb: Rational,
    pub checks: Vec<AdversaryCheck>,
}

impl AdversaryResult {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Realization on which none of the given two-machine solutions is
/// optimal.
///
/// With `M` solutions some type `i` in `3..=M+3` is missing. The input has
/// `i-1` jobs of size `i` then `i` jobs of size `i-1`; its optimum
/// `i(i-1)` needs job 1 together with exactly jobs `2..i-1`, which only a
/// type-`i` solution does, and all loads are integers.
pub fn adversary_for_solutions(solutions: &[AssignmentRule]) -> Result<AdversaryResult> {
    if solutions.is_empty() {
        return Err(Error::BadParameters("need at least one solution".into()));
    }
    let types = solutions
        .iter()
        .map(solution_type)
        .collect::<Result<Vec<_>>>()?;
    let count = solutions.len();
    let i = (3..=count + 3)
        .find(|c| !types.contains(&Some(*c)))
        .expect("pigeonhole: M solutions cannot cover M+1 types");

    let big = Rational::from(i);
    let small = Rational::from(i - 1);
    let sizes = std::iter::repeat_n(big, i - 1)
        .chain(std::iter::repeat_n(small, i))
        .collect();
    let instance = Realization::new(sizes)?;
    let lambda = Rational::from(i * (i - 1));
    let threshold = Rational::from(i * (i - 1) + 1);
    let checks = solutions
        .iter()
        .zip(types)
        .map(|(rule, solution_type)| {
            let makespan = evaluate(rule, &instance).makespan;
            AdversaryCheck {
                solution_type,
                ok: makespan >= threshold,
                makespan,
            }
        })
        .collect();
    Ok(AdversaryResult {
        i,
        instance,
        ratio_lb: threshold / lambda.clone(),
        lambda,
        checks,
    })
}

/// Which adversarial input class constrains a machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InputClass {
    /// `i` jobs of size 1, then `n-i` jobs of size `(m-i)/n`.
    One,
    /// `2m-i+1` jobs of size 1/2, then the rest of size `(i-1)/(2n)`.
    Two,
    /// `n` jobs of size `m/n`.
    Three,
}

impl InputClass {
    pub fn from_number(c: u8) -> Result<Self> {
        match c {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            _ => Err(Error::BadParameters(format!("input class {c} not in 1..=3"))),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::One => "class1",
            Self::Two => "class2",
            Self::Three => "class3",
        }
    }
}

impl Serialize for InputClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

pub const LP_M_RANGE: std::ops::RangeInclusive<usize> = 5..=17;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpResult {
    pub m: usize,
    pub a: Rational,
    pub b: Rational,
    /// `(1 + A) / (A + B)` before truncation.
    pub r_raw: Rational,
    /// `min(r_raw, 3/2)`.
    pub r: Rational,
    pub truncated: bool,
    /// Constraint used for machine `i` at index `i - 1`.
    pub choices: Vec<InputClass>,
    /// Upper bound on the share of small jobs of each machine at `r_raw`.
    pub rho_bounds: Vec<Rational>,
}

/// Constraint chosen for each machine `1..=m`.
pub fn lp_constraint_choices(m: usize) -> Vec<InputClass> {
    let low = 2 * m / 3;
    let high = (2 * m).div_ceil(3) + 1;
    (1..=m)
        .map(|i| {
            if i <= low {
                InputClass::One
            } else if i >= high {
                InputClass::Two
            } else {
                InputClass::Three
            }
        })
        .collect()
}

/// Lower bound on the competitive ratio of any single-solution algorithm.
///
/// Summing one constraint per machine on the small-job shares `rho_i`
/// (which add up to 1 as `n` grows) gives `1 <= (R-1)*A + R*B`.
pub fn single_solution_lp_bound(m: usize) -> Result<LpResult> {
    if !LP_M_RANGE.contains(&m) {
        return Err(Error::BadM(m));
    }
    let choices = lp_constraint_choices(m);
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for (idx, class) in choices.iter().enumerate() {
        let i = idx + 1;
        match class {
            InputClass::One => a += Rational::frac(1, (m - i) as i64),
            InputClass::Two => a += Rational::frac(2, (i - 1) as i64),
            InputClass::Three => b += Rational::frac(1, m as i64),
        }
    }
    let r_raw = (Rational::one() + &a) / (&a + &b);
    let rho_bounds = choices
        .iter()
        .enumerate()
        .map(|(idx, class)| {
            let i = idx + 1;
            let excess = &r_raw - &Rational::one();
            match class {
                InputClass::One => excess / Rational::from(m - i),
                InputClass::Two => Rational::from(2usize) * excess / Rational::from(i - 1),
                InputClass::Three => &r_raw / &Rational::from(m),
            }
        })
        .collect();
    let cap = Rational::frac(3, 2);
    let truncated = r_raw > cap;
    let r = if truncated { cap } else { r_raw.clone() };
    Ok(LpResult {
        m,
        a,
        b,
        r_raw,
        r,
        truncated,
        choices,
        rho_bounds,
    })
}

pub fn table1(m_from: usize, m_to: usize) -> Result<Vec<LpResult>> {
    if m_from > m_to {
        return Err(Error::BadParameters(format!("empty range {m_from}..={m_to}")));
    }
    (m_from..=m_to).map(single_solution_lp_bound).collect()
}

fn lcm_up_to(m: usize) -> u64 {
    (1..=m as u64).fold(1, |acc, x| acc.lcm(&x))
}

fn check_class_params(class: InputClass, m: usize, i: usize, n: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::BadM(m));
    }
    match class {
        InputClass::One if !(1..m).contains(&i) => {
            return Err(Error::BadParameters(format!("class 1 needs 1 <= i <= {}, got {i}", m - 1)))
        }
        InputClass::Two if !(2..=m).contains(&i) => {
            return Err(Error::BadParameters(format!("class 2 needs 2 <= i <= {m}, got {i}")))
        }
        _ => {}
    }
    if n < 2 * m as u64 {
        return Err(Error::BadParameters(format!("n = {n} is below 2m = {}", 2 * m)));
    }
    let divisor = lcm_up_to(m);
    if !n.is_multiple_of(divisor) {
        return Err(Error::DivisibilityViolation { n, divisor });
    }
    Ok(())
}

/// Large-job block and small-job block of a class instance.
fn class_blocks(class: InputClass, m: usize, i: usize, n: u64) -> Vec<Block> {
    let (m64, i64_) = (m as i64, i as i64);
    let n_i = n as i64;
    match class {
        InputClass::One => vec![
            Block { count: i as u64, size: Rational::one() },
            Block { count: n - i as u64, size: Rational::frac(m64 - i64_, n_i) },
        ],
        InputClass::Two => vec![
            Block { count: (2 * m - i + 1) as u64, size: Rational::frac(1, 2) },
            Block {
                count: n - (2 * m - i + 1) as u64,
                size: Rational::frac(i64_ - 1, 2 * n_i),
            },
        ],
        InputClass::Three => vec![Block { count: n, size: Rational::frac(m64, n_i) }],
    }
}

pub fn lb_input_class(class: InputClass, m: usize, i: usize, n: u64) -> Result<RunLengthRealization> {
    check_class_params(class, m, i, n)?;
    RunLengthRealization::new(class_blocks(class, m, i, n))
}

/// Machines sharing one load pattern in a constructive schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MachineGroup {
    pub machines: u64,
    pub large_jobs: u64,
    pub small_jobs: u64,
    pub load: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleCheck {
    pub cost: Rational,
    pub ok: bool,
    pub jobs_placed: u64,
    pub jobs_total: u64,
    pub groups: Vec<MachineGroup>,
}

/// Spreads `jobs` as evenly as possible over `machines`.
fn spread(machines: u64, large_jobs: u64, jobs: u64) -> Vec<(u64, u64, u64)> {
    let (q, r) = jobs.div_rem(&machines);
    let mut out = Vec::new();
    if r > 0 {
        out.push((r, large_jobs, q + 1));
    }
    if machines > r {
        out.push((machines - r, large_jobs, q));
    }
    out
}

/// Builds the schedule of cost at most 1 for a class instance by counting
/// (never listing individual jobs) and checks it exactly.
pub fn constructive_schedule_check(class: InputClass, m: usize, i: usize, n: u64) -> Result<ScheduleCheck> {
    let instance = lb_input_class(class, m, i, n)?;
    let blocks = instance.blocks();
    let (m64, i64_) = (m as u64, i as u64);
    // (machines, large jobs per machine, small jobs per machine)
    let layout: Vec<(u64, u64, u64)> = match class {
        InputClass::One => {
            let mut l = vec![(i64_, 1, 0)];
            l.extend(spread(m64 - i64_, 0, blocks[1].count));
            l
        }
        InputClass::Two => {
            let mut l = vec![(m64 - i64_ + 1, 2, 0)];
            l.extend(spread(i64_ - 1, 1, blocks[1].count));
            l
        }
        InputClass::Three => vec![(m64, 0, n / m64)],
    };
    let (large_size, small_size) = match class {
        InputClass::Three => (Rational::zero(), blocks[0].size.clone()),
        _ => (blocks[0].size.clone(), blocks[1].size.clone()),
    };
    let (large_total, small_total) = match class {
        InputClass::Three => (0, blocks[0].count),
        _ => (blocks[0].count, blocks[1].count),
    };

    let groups: Vec<MachineGroup> = layout
        .into_iter()
        .filter(|&(machines, _, _)| machines > 0)
        .map(|(machines, large_jobs, small_jobs)| MachineGroup {
            machines,
            large_jobs,
            small_jobs,
            load: Rational::from(large_jobs) * &large_size + Rational::from(small_jobs) * &small_size,
        })
        .collect();
    let machines_used: u64 = groups.iter().map(|g| g.machines).sum();
    let large_placed: u64 = groups.iter().map(|g| g.machines * g.large_jobs).sum();
    let small_placed: u64 = groups.iter().map(|g| g.machines * g.small_jobs).sum();
    let cost = groups
        .iter()
        .map(|g| g.load.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let ok = machines_used == m64
        && large_placed == large_total
        && small_placed == small_total
        && cost <= Rational::one();
    Ok(ScheduleCheck {
        cost,
        ok,
        jobs_placed: large_placed + small_placed,
        jobs_total: instance.job_count(),
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::builtin_pair;

    fn labels(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(enumerate_partitions(5, 2).unwrap().count(), 16);
        assert_eq!(enumerate_partitions(8, 3).unwrap().count(), 1094);
        assert_eq!(enumerate_partitions(1, 1).unwrap().count(), 1);
        assert_eq!(enumerate_partitions(8, 4).unwrap().count(), 2795);
        assert!(matches!(enumerate_partitions(13, 2), Err(Error::LimitExceeded(_))));
        assert!(enumerate_partitions(0, 2).is_err());
    }

    #[test]
    fn partition_order_is_lexicographic() {
        let all: Vec<_> = enumerate_partitions(3, 3).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(all, vec!["000", "001", "010", "011", "012"]);
        let two: Vec<_> = enumerate_partitions(4, 2).unwrap().collect();
        assert!(two.windows(2).all(|w| w[0].labels() < w[1].labels()));
        assert!(two.iter().all(|p| p.block_count() <= 2));
    }

    #[test]
    fn canonical_labels() {
        let p = PrefixPartition::from_assignment(&[2, 2, 1, 3, 1]);
        assert_eq!(p.labels(), labels("00121").as_slice());
        assert_eq!(p.block_count(), 3);
        let s1 = PrefixPartition::from_rule(builtin_pair(2).unwrap().first(), 5);
        assert_eq!(s1.labels(), labels("01110").as_slice());
    }

    #[test]
    fn proposition_input_examples() {
        let p2 = proposition_inputs(2).unwrap();
        assert_eq!(p2.k, 5);
        let opts: Vec<_> = p2
            .inputs
            .iter()
            .map(|r| optimal_makespan(r, 2).unwrap().lambda)
            .collect();
        assert_eq!(opts, [4, 4, 4, 3].map(|x: i64| Rational::from(x)).to_vec());

        let p4 = proposition_inputs(4).unwrap();
        assert_eq!(p4.k, 8);
        assert_eq!(p4.inputs[1], Realization::from_integers(&[3, 3, 1, 1, 1, 1, 1, 1]).unwrap());
        assert_eq!(optimal_makespan(&p4.inputs[1], 4).unwrap().lambda, Rational::from(3i64));

        let p3 = proposition_inputs(3).unwrap();
        assert_eq!(p3.inputs[4], Realization::from_integers(&[6, 6, 1, 1, 1, 1, 1, 1]).unwrap());
        assert_eq!(optimal_makespan(&p3.inputs[4], 3).unwrap().lambda, Rational::from(6i64));
        let lambdas: Vec<_> = p3
            .inputs
            .iter()
            .map(|r| optimal_makespan(r, 3).unwrap().lambda)
            .collect();
        assert_eq!(lambdas, [3, 2, 3, 3, 6, 6].map(|x: i64| Rational::from(x)).to_vec());

        for m in 4..=9 {
            let p = proposition_inputs(m).unwrap();
            assert!(p.inputs.iter().all(|r| r.len() == 2 * m));
            let lambdas: Vec<_> = p
                .inputs
                .iter()
                .map(|r| optimal_makespan(r, m).unwrap().lambda)
                .collect();
            assert_eq!(lambdas, [2, 3, 3].map(|x: i64| Rational::from(x)).to_vec());
        }
        assert_eq!(proposition_inputs(1).unwrap_err(), Error::BadM(1));
    }

    #[test]
    fn game_m2_value() {
        let p = proposition_inputs(2).unwrap();
        let g = two_solution_game_value(2, &p.inputs, p.k, GameOptions::default()).unwrap();
        assert_eq!(g.value, Rational::frac(5, 4));
        assert_eq!(g.partitions, 16);
        assert_eq!(g.pairs_checked, 136);
        let w = pair_game_ratio(2, &p.inputs, &g.witness.0, &g.witness.1).unwrap();
        assert_eq!(w, g.value);

        let pair = builtin_pair(2).unwrap();
        let s1 = PrefixPartition::from_rule(pair.first(), 5);
        let s2 = PrefixPartition::from_rule(pair.second(), 5);
        assert_eq!(pair_game_ratio(2, &p.inputs, &s1, &s2).unwrap(), Rational::frac(5, 4));
    }

    #[test]
    fn game_rejects_long_and_bad_inputs() {
        let p = proposition_inputs(5).unwrap();
        assert!(matches!(
            two_solution_game_value(5, &p.inputs, p.k, GameOptions::default()),
            Err(Error::LimitExceeded(_))
        ));
        let r = Realization::from_integers(&[1, 1, 1]).unwrap();
        assert!(matches!(
            two_solution_game_value(2, &[r], 2, GameOptions::default()),
            Err(Error::BadParameters(_))
        ));
        assert!(two_solution_game_value(2, &[], 2, GameOptions::default()).is_err());
    }

    #[test]
    fn adversary_examples() {
        // Types 2 and 3.
        let t2 = AssignmentRule::finite(2, vec![1, 2], 1).unwrap();
        let t3 = AssignmentRule::finite(2, vec![1, 1, 2], 2).unwrap();
        let res = adversary_for_solutions(&[t2, t3]).unwrap();
        assert_eq!(res.i, 4);
        assert_eq!(res.instance, Realization::from_integers(&[4, 4, 4, 3, 3, 3, 3]).unwrap());
        assert_eq!(res.lambda, Rational::from(12i64));
        assert_eq!(optimal_makespan(&res.instance, 2).unwrap().lambda, res.lambda);
        assert!(res.checks.iter().all(|c| c.makespan >= Rational::from(13i64)));
        assert!(res.all_ok());

        let t5 = AssignmentRule::finite(2, vec![1, 1, 1, 1, 2], 1).unwrap();
        let res = adversary_for_solutions(&[t5]).unwrap();
        assert_eq!(res.i, 3);
        assert_eq!(res.instance, Realization::from_integers(&[3, 3, 2, 2, 2]).unwrap());
        assert_eq!(res.lambda, Rational::from(6i64));
        assert_eq!(res.ratio_lb, Rational::frac(7, 6));

        assert!(adversary_for_solutions(&[]).is_err());
        let three = builtin_pair(3).unwrap().first().clone();
        assert_eq!(adversary_for_solutions(&[three]).unwrap_err(), Error::NotTwoMachines(3));
    }

    #[test]
    fn lp_examples() {
        assert_eq!(single_solution_lp_bound(5).unwrap().r, Rational::frac(155, 107));
        assert_eq!(single_solution_lp_bound(6).unwrap().r, Rational::frac(191, 131));
        assert_eq!(single_solution_lp_bound(9).unwrap().r, Rational::frac(2593, 1753));
        let m17 = single_solution_lp_bound(17).unwrap();
        assert!(m17.truncated);
        assert_eq!(m17.r, Rational::frac(3, 2));
        assert!(m17.r_raw > m17.r);
        assert_eq!(single_solution_lp_bound(4).unwrap_err(), Error::BadM(4));
        assert_eq!(single_solution_lp_bound(18).unwrap_err(), Error::BadM(18));
    }

    #[test]
    fn lp_choices_m5() {
        use InputClass::*;
        assert_eq!(lp_constraint_choices(5), vec![One, One, One, Three, Two]);
        // m = 3t: no middle machine.
        assert!(!lp_constraint_choices(9).contains(&Three));
        // m = 3t+1: machine 2t+1; m = 3t+2: machine 2t+2.
        assert_eq!(lp_constraint_choices(7)[4], Three);
        assert_eq!(lp_constraint_choices(8)[5], Three);
    }

    #[test]
    fn table1_rows() {
        let rows = table1(5, 17).unwrap();
        assert_eq!(rows.len(), 13);
        let m8 = &rows[3];
        assert_eq!(m8.r, Rational::frac(2278, 1543));
        assert_eq!(m8.r.decimal(6), "1.476344");
        assert_eq!(rows[9].r, Rational::frac(201739, 134815));
        assert_eq!(rows[9].r.decimal(6), "1.496413");
        assert_eq!(rows[11].r, Rational::frac(2027686, 1352011));
        assert_eq!(rows[11].r.decimal(6), "1.499755");
        assert!(table1(7, 6).is_err());
        assert!(table1(4, 6).is_err());
    }

    #[test]
    fn input_class_examples() {
        let c1 = lb_input_class(InputClass::One, 5, 2, 60).unwrap();
        assert_eq!(
            c1.blocks(),
            &[
                Block { count: 2, size: Rational::one() },
                Block { count: 58, size: Rational::frac(3, 60) },
            ]
        );
        let c2 = lb_input_class(InputClass::Two, 5, 3, 60).unwrap();
        assert_eq!(
            c2.blocks(),
            &[
                Block { count: 8, size: Rational::frac(1, 2) },
                Block { count: 52, size: Rational::frac(1, 60) },
            ]
        );
        let c3 = lb_input_class(InputClass::Three, 5, 0, 60).unwrap();
        assert_eq!(c3.blocks(), &[Block { count: 60, size: Rational::frac(1, 12) }]);

        assert_eq!(
            lb_input_class(InputClass::One, 5, 2, 90).unwrap_err(),
            Error::DivisibilityViolation { n: 90, divisor: 60 }
        );
        assert!(lb_input_class(InputClass::One, 5, 5, 60).is_err());
        assert!(lb_input_class(InputClass::Two, 5, 1, 60).is_err());
        assert!(lb_input_class(InputClass::Three, 5, 0, 0).is_err());
        assert!(InputClass::from_number(4).is_err());
    }

    #[test]
    fn constructive_examples() {
        let c1 = constructive_schedule_check(InputClass::One, 5, 2, 60).unwrap();
        assert!(c1.ok && c1.cost <= Rational::one());
        assert_eq!(c1.jobs_placed, 60);
        let c3 = constructive_schedule_check(InputClass::Three, 5, 0, 60).unwrap();
        assert!(c3.ok);
        assert_eq!(c3.cost, Rational::one());
        let c2 = constructive_schedule_check(InputClass::Two, 5, 5, 60).unwrap();
        assert!(c2.ok);
    }
}
