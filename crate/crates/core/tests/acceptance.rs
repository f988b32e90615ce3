//! Acceptance checks. One PASS/FAIL line per criterion; exits nonzero on any failure.

use std::time::{Duration, Instant};

use ordsched::lowerbounds::{
    adversary_for_solutions, constructive_schedule_check, proposition_inputs, table1,
    two_solution_game_value, GameOptions, InputClass,
};
use ordsched::oracle::{brute_force_makespan, optimal_makespan};
use ordsched::patterns::{builtin_pair, evaluate, AssignmentRule};
use ordsched::realization::progression_suffix_bound;
use ordsched::verify::{
    builtin_bound, competitive_ratio, corpus_realization, fixed_battery, proof_inequality_report,
    stress_search, tightness_instance, DEFAULT_MODELS,
};
use ordsched::{Rational, Realization};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SEED: u64 = 20240601;
const STRESS_TRIALS: usize = 10_000;
const STRESS_N_MAX: usize = 12;

struct Outcome {
    ok: bool,
    detail: String,
}

fn report(id: u32, name: &str, limit: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let pass = out.ok && in_time;
    println!(
        "[{}] criterion {id}: {name}: {} ({:.2?}, limit {:?}{})",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed,
        limit,
        if in_time { "" } else { ", too slow" }
    );
    pass
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn table_fractions() -> Outcome {
    let expected = [
        "155/107", "191/131", "1127/767", "2278/1543", "2593/1753", "257/173", "341/229",
        "1873/1257", "7449/4985", "201739/134815", "217183/145111", "2027686/1352011", "3/2",
    ];
    let rows = table1(5, 17).unwrap();
    let mut bad = Vec::new();
    for (row, want) in rows.iter().zip(expected) {
        if row.r != q(want) {
            bad.push(format!("m={} got {}", row.m, row.r));
        }
    }
    let last_truncated = rows.last().map(|r| r.truncated).unwrap_or(false);
    let others_plain = rows[..rows.len() - 1].iter().all(|r| !r.truncated);
    Outcome {
        ok: rows.len() == 13 && bad.is_empty() && last_truncated && others_plain,
        detail: if bad.is_empty() {
            "13 exact fractions, m=17 truncated to 3/2".into()
        } else {
            bad.join("; ")
        },
    }
}

fn stress() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in 2..=5 {
        let bound = builtin_bound(m).unwrap();
        let res = stress_search(&builtin_pair(m).unwrap(), bound.clone(), STRESS_TRIALS, STRESS_N_MAX, SEED)
            .unwrap();
        ok &= res.ok;
        parts.push(format!("m={m} max {} <= {}", res.max_ratio, bound));
    }
    Outcome { ok, detail: parts.join(", ") }
}

fn corpus(m: usize) -> Vec<Realization> {
    let mut all = fixed_battery(m);
    all.extend((0..STRESS_TRIALS).map(|t| corpus_realization(t, STRESS_N_MAX, SEED, &DEFAULT_MODELS)));
    all
}

fn registry() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in 2..=5 {
        let inputs = corpus(m);
        let failures: Vec<String> = inputs
            .par_iter()
            .flat_map_iter(|r| {
                let rep = proof_inequality_report(m, r).unwrap();
                rep.items
                    .into_iter()
                    .filter(|i| !i.holds)
                    .map(|i| i.label)
                    .collect::<Vec<_>>()
            })
            .collect();
        ok &= failures.is_empty();
        parts.push(format!("m={m}: {} inputs, {} violations", inputs.len(), failures.len()));
    }
    Outcome { ok, detail: parts.join(", ") }
}

fn game(m: usize, target: &str, exact: bool) -> Outcome {
    let p = proposition_inputs(m).unwrap();
    let res = two_solution_game_value(m, &p.inputs, p.k, GameOptions::default()).unwrap();
    let target = q(target);
    let mut ok = res.value >= target;
    if exact {
        ok &= res.value == target;
        // The witness pair must attain the value on its own.
        let again = ordsched::lowerbounds::pair_game_ratio(m, &p.inputs, &res.witness.0, &res.witness.1).unwrap();
        ok &= again == res.value;
    }
    Outcome {
        ok,
        detail: format!(
            "m={m}, k={}: value {} (target {}{}), witness {} / {}, {} partitions",
            p.k,
            res.value,
            target,
            if exact { ", exact" } else { "" },
            res.witness.0,
            res.witness.1,
            res.partitions
        ),
    }
}

fn random_two_machine_rule(rng: &mut ChaCha8Rng) -> AssignmentRule {
    let mut prefix: Vec<usize> = if rng.gen_bool(0.5) {
        // Steer toward a chosen type: machine 1 takes jobs 1..t-1.
        let t = rng.gen_range(3..=9);
        let mut p = vec![1; t - 1];
        p.push(2);
        p
    } else {
        (0..rng.gen_range(0..10)).map(|_| rng.gen_range(1..=2)).collect()
    };
    if prefix.is_empty() {
        prefix.push(rng.gen_range(1..=2));
    }
    let table: Vec<usize> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..=2)).collect();
    AssignmentRule::from_table(2, prefix, &table).unwrap()
}

fn adversary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0;
    let mut sets = 0;
    for _ in 0..200 {
        let count = rng.gen_range(1..=6);
        let rules: Vec<AssignmentRule> = (0..count).map(|_| random_two_machine_rule(&mut rng)).collect();
        let res = adversary_for_solutions(&rules).unwrap();
        let threshold = Rational::from(res.i * (res.i - 1) + 1);
        let floor = Rational::one() + Rational::frac(1, ((count + 2) * (count + 3)) as i64);
        let lambda = optimal_makespan(&res.instance, 2).unwrap().lambda;
        let good = rules.iter().all(|rule| {
            let makespan = evaluate(rule, &res.instance).makespan;
            makespan >= threshold && makespan / lambda.clone() >= floor
        }) && res.all_ok()
            && lambda == res.lambda;
        if !good {
            failures += 1;
        }
        sets += 1;
    }
    Outcome { ok: failures == 0, detail: format!("{sets} sets, {failures} failures") }
}

fn tightness() -> Outcome {
    let gap = Rational::frac(1, 50);
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, limit) in [(4, "11/8"), (5, "7/5")] {
        let r = tightness_instance(m, 120).unwrap();
        let ratio = competitive_ratio(&builtin_pair(m).unwrap(), &r).unwrap();
        let floor = q(limit) - gap.clone();
        ok &= ratio >= floor;
        parts.push(format!("m={m}, K=120: ratio {} >= {}", ratio, floor));
    }
    Outcome { ok, detail: parts.join(", ") }
}

fn oracle_equivalence() -> Outcome {
    let mismatches: usize = (0..1000u64)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ t.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let n = rng.gen_range(0..=9);
            let m = rng.gen_range(1..=4);
            let mut sizes: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=5)).collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            let r = Realization::from_integers(&sizes).unwrap();
            optimal_makespan(&r, m).unwrap().lambda != brute_force_makespan(&r, m).unwrap()
        })
        .count();
    Outcome { ok: mismatches == 0, detail: format!("1000 instances, {mismatches} mismatches") }
}

fn suffix_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut failures = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(0..=30);
        let mut sizes: Vec<Rational> = (0..n)
            .map(|_| Rational::frac(rng.gen_range(0..=60), rng.gen_range(1..=6)))
            .collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let r = Realization::new(sizes).unwrap();
        let alpha = rng.gen_range(1..=6);
        let beta = rng.gen_range(0..alpha);
        let gamma = rng.gen_range(1..=4);
        if !progression_suffix_bound(&r, alpha, beta, gamma).unwrap().holds {
            failures += 1;
        }
    }
    Outcome { ok: failures == 0, detail: format!("10000 tuples, {failures} failures") }
}

fn constructive() -> Outcome {
    let mut checks = 0;
    let mut failures = Vec::new();
    for m in 5..=17usize {
        let n = 2 * (1..=m as u64).fold(1u64, |a, b| a / gcd(a, b) * b);
        let cases = (1..m)
            .map(|i| (InputClass::One, i))
            .chain((2..=m).map(|i| (InputClass::Two, i)))
            .chain(std::iter::once((InputClass::Three, 0)));
        for (class, i) in cases {
            let c = constructive_schedule_check(class, m, i, n).unwrap();
            checks += 1;
            if !(c.ok && c.cost <= Rational::one() && c.jobs_placed == n && c.jobs_total == n) {
                failures.push(format!("{} m={m} i={i}", class.tag()));
            }
        }
    }
    Outcome {
        ok: failures.is_empty(),
        detail: format!("{checks} schedules, {} failures{}", failures.len(), if failures.is_empty() { String::new() } else { format!(": {}", failures.join(", ")) }),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        report(1, "LP bound table", secs(1), table_fractions),
        report(2, "upper-bound stress", secs(300), stress),
        report(3, "proof inequalities", secs(300), registry),
        report(4, "game value m=2", secs(10), || game(2, "5/4", true)),
        report(4, "game value m=3", secs(120), || game(3, "4/3", false)),
        report(4, "game value m=4", secs(300), || game(4, "4/3", false)),
        report(5, "two-machine adversary", secs(10), adversary),
        report(6, "tightness", secs(1), tightness),
        report(7, "oracle equivalence", secs(60), oracle_equivalence),
        report(8, "suffix bound", secs(30), suffix_bound),
        report(9, "constructive schedules", secs(10), constructive),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
