//! Ordinal solutions as prefix + periodic assignment rules.
//!
//! An ordinal solution only sees job indices, so it is a partition of the
//! positive integers into `m` sets. Every rule here has an explicit table
//! for jobs `1..=|prefix|` and assigns every later job `j` by `j mod period`.
//! Machines are numbered `1..=m`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::realization::Realization;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AssignmentRule {
    m: usize,
    prefix: Vec<usize>,
    period: usize,
    residues: Vec<usize>,
}

/// Result of [`validate_rule`]: the checked rule plus machines that never
/// receive a job (legal, but usually a mistake).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleCheck {
    pub rule: AssignmentRule,
    pub unused_machines: Vec<usize>,
}

/// On-disk form of a rule: `{"m", "prefix", "period", "residues": {"0": machine, ..}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    pub m: usize,
    #[serde(default)]
    pub prefix: Vec<usize>,
    pub period: usize,
    pub residues: BTreeMap<String, usize>,
}

pub fn validate_rule(spec: &RuleSpec) -> Result<RuleCheck> {
    let mut residues = BTreeMap::new();
    for (key, &machine) in &spec.residues {
        let r: usize = key
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("residue key {key:?} is not an integer")))?;
        if r >= spec.period {
            return Err(Error::ParameterOutOfRange(format!(
                "residue {r} outside 0..{}",
                spec.period
            )));
        }
        residues.insert(r, machine);
    }
    let rule = AssignmentRule::new(spec.m, spec.prefix.clone(), spec.period, &residues)?;
    let unused_machines = rule.unused_machines();
    Ok(RuleCheck {
        rule,
        unused_machines,
    })
}

impl AssignmentRule {
    pub fn new(
        m: usize,
        prefix: Vec<usize>,
        period: usize,
        residues: &BTreeMap<usize, usize>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadM(0));
        }
        if period == 0 {
            return Err(Error::ParameterOutOfRange("period must be >= 1".into()));
        }
        for &machine in prefix.iter().chain(residues.values()) {
            if machine == 0 || machine > m {
                return Err(Error::BadMachineIndex { machine, m });
            }
        }
        let table = (0..period)
            .map(|r| {
                residues
                    .get(&r)
                    .copied()
                    .ok_or(Error::IncompleteResidueMap { residue: r })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            m,
            prefix,
            period,
            residues: table,
        })
    }

    /// Rule from a residue table given as a slice indexed by residue.
    pub fn from_table(m: usize, prefix: Vec<usize>, table: &[usize]) -> Result<Self> {
        let residues = table.iter().copied().enumerate().collect();
        Self::new(m, prefix, table.len(), &residues)
    }

    /// A rule that follows `assignment` for the first jobs and then puts
    /// every later job on `tail_machine`.
    pub fn finite(m: usize, assignment: Vec<usize>, tail_machine: usize) -> Result<Self> {
        Self::from_table(m, assignment, &[tail_machine])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn residue_table(&self) -> &[usize] {
        &self.residues
    }

    /// Machine of job `j` (1-based).
    pub fn machine_of(&self, j: usize) -> usize {
        assert!(j >= 1, "jobs are numbered from 1");
        if j <= self.prefix.len() {
            self.prefix[j - 1]
        } else {
            self.residues[j % self.period]
        }
    }

    /// Machines that receive no job at all.
    pub fn unused_machines(&self) -> Vec<usize> {
        let mut used = vec![false; self.m + 1];
        for &machine in self.prefix.iter().chain(&self.residues) {
            used[machine] = true;
        }
        (1..=self.m).filter(|&i| !used[i]).collect()
    }

    /// First `count` jobs assigned to `machine`, in increasing order.
    pub fn members(&self, machine: usize, count: usize) -> Vec<usize> {
        if !self.residues.contains(&machine) {
            return self
                .prefix
                .iter()
                .enumerate()
                .filter(|&(_, &i)| i == machine)
                .map(|(j, _)| j + 1)
                .take(count)
                .collect();
        }
        (1..)
            .filter(|&j| self.machine_of(j) == machine)
            .take(count)
            .collect()
    }

    /// Machine labels of jobs `1..=k`, as 1-based machine indices.
    pub fn assignment(&self, k: usize) -> Vec<usize> {
        (1..=k).map(|j| self.machine_of(j)).collect()
    }

    pub fn to_spec(&self) -> RuleSpec {
        RuleSpec {
            m: self.m,
            prefix: self.prefix.clone(),
            period: self.period,
            residues: self
                .residues
                .iter()
                .enumerate()
                .map(|(r, &i)| (r.to_string(), i))
                .collect(),
        }
    }
}

impl Serialize for AssignmentRule {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_spec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AssignmentRule {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let spec = RuleSpec::deserialize(deserializer)?;
        validate_rule(&spec)
            .map(|c| c.rule)
            .map_err(serde::de::Error::custom)
    }
}

/// Solution type on two machines: the least `k >= 2` whose job is not on
/// job 1's machine. `None` when job 1's machine receives every job.
pub fn solution_type(rule: &AssignmentRule) -> Result<Option<usize>> {
    if rule.m != 2 {
        return Err(Error::NotTwoMachines(rule.m));
    }
    let home = rule.machine_of(1);
    // Past prefix + period the pattern repeats.
    let horizon = rule.prefix.len() + rule.period + 1;
    Ok((2..=horizon).find(|&j| rule.machine_of(j) != home))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub loads: Vec<Rational>,
    pub makespan: Rational,
}

pub fn evaluate(rule: &AssignmentRule, r: &Realization) -> Evaluation {
    let mut loads = vec![Rational::zero(); rule.m];
    for (idx, p) in r.sizes().iter().enumerate() {
        loads[rule.machine_of(idx + 1) - 1] += p;
    }
    let makespan = loads.iter().max().cloned().unwrap_or_else(Rational::zero);
    Evaluation { loads, makespan }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionPair {
    m: usize,
    first: AssignmentRule,
    second: AssignmentRule,
}

impl SolutionPair {
    pub fn new(first: AssignmentRule, second: AssignmentRule) -> Result<Self> {
        if first.m != second.m {
            return Err(Error::BadParameters(format!(
                "solutions disagree on m: {} vs {}",
                first.m, second.m
            )));
        }
        Ok(Self {
            m: first.m,
            first,
            second,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn first(&self) -> &AssignmentRule {
        &self.first
    }

    pub fn second(&self) -> &AssignmentRule {
        &self.second
    }
}

impl<'de> Deserialize<'de> for SolutionPair {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            m: usize,
            first: AssignmentRule,
            second: AssignmentRule,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.first.m != raw.m {
            return Err(serde::de::Error::custom(format!(
                "pair declares m = {} but first solution has m = {}",
                raw.m, raw.first.m
            )));
        }
        SolutionPair::new(raw.first, raw.second).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairEvaluation {
    pub first: Evaluation,
    pub second: Evaluation,
    pub pair_makespan: Rational,
}

pub fn pair_evaluate(pair: &SolutionPair, r: &Realization) -> PairEvaluation {
    let first = evaluate(&pair.first, r);
    let second = evaluate(&pair.second, r);
    let pair_makespan = first.makespan.clone().min(second.makespan.clone());
    PairEvaluation {
        first,
        second,
        pair_makespan,
    }
}

/// The two-solution algorithms for `m = 2..=5`.
///
/// The first solutions are purely periodic (period `2m`). The second
/// solutions put job `i` on machine `i` for `i <= m` and then cycle with
/// period `m`.
pub fn builtin_pair(m: usize) -> Result<SolutionPair> {
    let (first_table, second_table): (&[usize], &[usize]) = match m {
        // residue:  0  1  2  3
        2 => (&[2, 1, 2, 2], &[1, 2]),
        // residue:  0  1  2  3  4  5
        3 => (&[3, 1, 2, 3, 3, 2], &[1, 3, 2]),
        // residue:  0  1  2  3  4  5  6  7
        4 => (&[3, 1, 2, 3, 4, 4, 3, 4], &[1, 4, 3, 2]),
        // residue:  0  1  2  3  4  5  6  7  8  9
        5 => (&[4, 1, 2, 3, 4, 5, 5, 4, 3, 5], &[1, 5, 4, 3, 2]),
        _ => return Err(Error::UnsupportedM(m)),
    };
    let first = AssignmentRule::from_table(m, Vec::new(), first_table)?;
    let second_prefix = if m == 2 { vec![1, 2, 2] } else { (1..=m).collect() };
    let second = AssignmentRule::from_table(m, second_prefix, second_table)?;
    SolutionPair::new(first, second)
}
