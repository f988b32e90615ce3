//! Job-size realizations and the prefix/suffix sums used throughout the
//! load bounds.
//!
//! A realization is a finite, nonincreasing list of nonnegative sizes
//! `p_1 >= p_2 >= ... >= p_n`. Every index past `n` is an implicit job of
//! size zero, so trailing zeros are allowed and kept as given.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Realization {
    sizes: Vec<Rational>,
}

impl Realization {
    /// Accepts `sizes` iff they are all nonnegative and nonincreasing.
    pub fn new(sizes: Vec<Rational>) -> Result<Self> {
        for (idx, p) in sizes.iter().enumerate() {
            if p.is_negative() {
                return Err(Error::NegativeSize { index: idx + 1 });
            }
        }
        for (idx, pair) in sizes.windows(2).enumerate() {
            if pair[0] < pair[1] {
                return Err(Error::SortOrderViolation { index: idx + 1 });
            }
        }
        Ok(Self { sizes })
    }

    pub fn from_integers(sizes: &[i64]) -> Result<Self> {
        Self::new(sizes.iter().map(|&s| Rational::from(s)).collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn sizes(&self) -> &[Rational] {
        &self.sizes
    }

    /// `p_j` for 1-based `j`; zero for `j = 0` or `j > n`.
    pub fn size(&self, j: usize) -> Rational {
        if j == 0 {
            return Rational::zero();
        }
        self.sizes.get(j - 1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total(&self) -> Rational {
        self.sizes.iter().sum()
    }

    /// Number of jobs with strictly positive size.
    pub fn positive_len(&self) -> usize {
        self.sizes.iter().take_while(|p| !p.is_zero()).count()
    }

    /// Same realization with every size multiplied by `factor > 0`.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        if factor.is_negative() || factor.is_zero() {
            return Err(Error::BadParameters(format!("scale factor {factor} must be positive")));
        }
        Ok(Self {
            sizes: self.sizes.iter().map(|p| p * factor).collect(),
        })
    }

    /// Appends a job; it must not exceed the current last size.
    pub fn push(&mut self, size: Rational) -> Result<()> {
        if size.is_negative() {
            return Err(Error::NegativeSize { index: self.len() + 1 });
        }
        if let Some(last) = self.sizes.last() {
            if *last < size {
                return Err(Error::SortOrderViolation { index: self.len() });
            }
        }
        self.sizes.push(size);
        Ok(())
    }

    pub fn partial_sums(&self) -> PartialSums {
        PartialSums::new(self)
    }
}

impl<'de> Deserialize<'de> for Realization {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            sizes: Vec<Rational>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Realization::new(raw.sizes).map_err(serde::de::Error::custom)
    }
}

/// `validate_realization`: free-function form of [`Realization::new`].
pub fn validate_realization(sizes: Vec<Rational>) -> Result<Realization> {
    Realization::new(sizes)
}

/// Compressed realization: `count` copies of `size` per block, with block
/// sizes strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunLengthRealization {
    blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub count: u64,
    pub size: Rational,
}

impl RunLengthRealization {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        let mut first_job = 1usize;
        for (idx, b) in blocks.iter().enumerate() {
            if b.count == 0 {
                return Err(Error::BadParameters(format!("block {} has count 0", idx + 1)));
            }
            if b.size.is_negative() {
                return Err(Error::NegativeSize { index: first_job });
            }
            if idx > 0 && blocks[idx - 1].size <= b.size {
                return Err(Error::SortOrderViolation { index: first_job - 1 });
            }
            first_job = first_job.saturating_add(b.count as usize);
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn job_count(&self) -> u64 {
        self.blocks.iter().map(|b| b.count).sum()
    }

    pub fn total(&self) -> Rational {
        self.blocks
            .iter()
            .map(|b| Rational::from(b.count) * &b.size)
            .sum()
    }

    /// Dense form; refuses expansions beyond `max_jobs`.
    pub fn expand(&self, max_jobs: u64) -> Result<Realization> {
        let n = self.job_count();
        if n > max_jobs {
            return Err(Error::LimitExceeded(format!(
                "expansion of {n} jobs exceeds {max_jobs}"
            )));
        }
        let sizes = self
            .blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.size.clone(), b.count as usize))
            .collect();
        Realization::new(sizes)
    }
}

impl<'de> Deserialize<'de> for RunLengthRealization {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            blocks: Vec<Block>,
        }
        let raw = Raw::deserialize(deserializer)?;
        RunLengthRealization::new(raw.blocks).map_err(serde::de::Error::custom)
    }
}

/// Prefix sums `P_0..=P_n` and suffix sums `Q_1..=Q_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSums {
    prefix: Vec<Rational>,
    suffix: Vec<Rational>,
}

impl PartialSums {
    pub fn new(r: &Realization) -> Self {
        let mut prefix = Vec::with_capacity(r.len() + 1);
        prefix.push(Rational::zero());
        for p in r.sizes() {
            let next = prefix.last().unwrap() + p;
            prefix.push(next);
        }
        let mut suffix = vec![Rational::zero(); r.len()];
        let mut acc = Rational::zero();
        for (idx, p) in r.sizes().iter().enumerate().rev() {
            acc += p;
            suffix[idx] = acc.clone();
        }
        Self { prefix, suffix }
    }

    pub fn n(&self) -> usize {
        self.suffix.len()
    }

    /// `P_j`; saturates at `W` for `j > n`.
    pub fn prefix(&self, j: usize) -> &Rational {
        &self.prefix[j.min(self.n())]
    }

    /// `Q_j` for `1 <= j <= n`; zero past the end.
    pub fn suffix(&self, j: usize) -> Rational {
        assert!(j >= 1, "Q is 1-indexed");
        self.suffix.get(j - 1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn prefix_all(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn suffix_all(&self) -> &[Rational] {
        &self.suffix
    }

    pub fn total(&self) -> &Rational {
        self.prefix.last().unwrap()
    }
}

/// Outcome of [`progression_suffix_bound`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuffixBound {
    pub actual: Rational,
    pub bound: Rational,
    pub holds: bool,
}

/// Compares the total size of jobs `alpha*k + beta` for `k >= gamma`
/// against `(W - P_{alpha*(gamma-1)+beta}) / alpha`.
///
/// On sorted input each such job is dominated by the `alpha - 1` jobs
/// immediately preceding it, so `holds` is always true for a valid
/// realization.
pub fn progression_suffix_bound(
    r: &Realization,
    alpha: usize,
    beta: usize,
    gamma: usize,
) -> Result<SuffixBound> {
    if alpha < 1 || gamma < 1 || beta >= alpha {
        return Err(Error::ParameterOutOfRange(format!(
            "need alpha >= 1, 0 <= beta < alpha, gamma >= 1; got alpha={alpha}, beta={beta}, gamma={gamma}"
        )));
    }
    let sums = r.partial_sums();
    let actual: Rational = (alpha * gamma + beta..=r.len())
        .step_by(alpha)
        .map(|j| r.size(j))
        .sum();
    let cut = alpha * (gamma - 1) + beta;
    let bound = (sums.total() - sums.prefix(cut)) / Rational::from(alpha);
    let holds = actual <= bound;
    Ok(SuffixBound {
        actual,
        bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Realization {
        Realization::from_integers(v).unwrap()
    }

    #[test]
    fn validates_order_and_sign() {
        assert_eq!(ints(&[4, 1, 1, 1, 1]).len(), 5);
        assert!(Realization::new(vec![]).unwrap().is_empty());
        assert_eq!(
            Realization::from_integers(&[1, 2]),
            Err(Error::SortOrderViolation { index: 1 })
        );
        assert_eq!(
            Realization::from_integers(&[3, 2, 2, 5]),
            Err(Error::SortOrderViolation { index: 3 })
        );
        assert_eq!(
            Realization::from_integers(&[0, -1]),
            Err(Error::NegativeSize { index: 2 })
        );
        let padded = ints(&[3, 2, 0, 0]);
        assert_eq!(padded.len(), 4);
        assert_eq!(padded.positive_len(), 2);
    }

    #[test]
    fn partial_sums_example() {
        let s = ints(&[4, 1, 1, 1, 1]).partial_sums();
        let p: Vec<_> = [0, 4, 5, 6, 7, 8].iter().map(|&x| Rational::from(x as i64)).collect();
        let q: Vec<_> = [8, 4, 3, 2, 1].iter().map(|&x| Rational::from(x as i64)).collect();
        assert_eq!(s.prefix_all(), p.as_slice());
        assert_eq!(s.suffix_all(), q.as_slice());

        let e = Realization::empty().partial_sums();
        assert_eq!(e.prefix_all(), &[Rational::zero()]);
        assert!(e.suffix_all().is_empty());
        assert!(e.total().is_zero());

        let u = ints(&[1, 1, 1]).partial_sums();
        assert_eq!(*u.total(), Rational::from(3i64));
        assert_eq!(u.suffix(2), Rational::from(2i64));
    }

    #[test]
    fn suffix_bound_examples() {
        let r = ints(&[1; 8]);
        let b = progression_suffix_bound(&r, 4, 1, 1).unwrap();
        assert_eq!(b.actual, Rational::from(1i64));
        assert_eq!(b.bound, Rational::frac(7, 4));
        assert!(b.holds);

        let e = progression_suffix_bound(&Realization::empty(), 3, 2, 2).unwrap();
        assert!(e.actual.is_zero() && e.bound.is_zero() && e.holds);

        assert!(matches!(
            progression_suffix_bound(&r, 3, 3, 1),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(progression_suffix_bound(&r, 0, 0, 1).is_err());
        assert!(progression_suffix_bound(&r, 2, 0, 0).is_err());
    }

    #[test]
    fn suffix_bound_matches_first_machine_inequality() {
        // alpha=4, beta=1, gamma=1 is 4*C_1 - 3*p_1 <= W for the set {1,5,9,..}.
        let r = ints(&[9, 7, 7, 4, 3, 3, 2, 1, 1, 1]);
        let b = progression_suffix_bound(&r, 4, 1, 1).unwrap();
        let c1 = r.size(1) + r.size(5) + r.size(9);
        assert_eq!(b.actual, &c1 - &r.size(1));
        assert_eq!(
            b.holds,
            Rational::from(4i64) * &c1 - Rational::from(3i64) * &r.size(1) <= r.total()
        );
    }

    #[test]
    fn run_length_rules() {
        let rl = RunLengthRealization::new(vec![
            Block { count: 2, size: Rational::one() },
            Block { count: 58, size: Rational::frac(1, 20) },
        ])
        .unwrap();
        assert_eq!(rl.job_count(), 60);
        assert_eq!(rl.total(), Rational::frac(49, 10));
        assert_eq!(rl.expand(100).unwrap().len(), 60);
        assert!(rl.expand(10).is_err());

        assert!(RunLengthRealization::new(vec![
            Block { count: 1, size: Rational::one() },
            Block { count: 1, size: Rational::one() },
        ])
        .is_err());
        assert!(RunLengthRealization::new(vec![Block { count: 0, size: Rational::one() }]).is_err());
    }

    #[test]
    fn json_formats() {
        let r: Realization = serde_json::from_str(r#"{"sizes": [4, "1", "1/2", "1/2"]}"#).unwrap();
        assert_eq!(r.size(3), Rational::frac(1, 2));
        assert!(serde_json::from_str::<Realization>(r#"{"sizes": [1, 2]}"#).is_err());
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"sizes":["4","1","1/2","1/2"]}"#);

        let rl: RunLengthRealization =
            serde_json::from_str(r#"{"blocks": [{"count": 2, "size": 1}, {"count": 3, "size": "1/3"}]}"#)
                .unwrap();
        assert_eq!(rl.job_count(), 5);
    }
}
