//! Exhaustive ground truth: enumeration, counting, brute-force inversion and
//! whole-pair verification of the inversion algorithms.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inversion::{find_rank, rebuild_preimage, Algorithm, TraceLevel};
use crate::path::{self, CoprimePair, DyckWord, Letter};

/// Default largest `m + n` that [`enumerate_dyck`] accepts.
pub const DEFAULT_BOUND: u32 = 18;

/// `C(m+n, n) / (m+n)`, exactly.
pub fn rational_catalan(pair: CoprimePair) -> BigUint {
    let len = pair.len() as u64;
    let total = num_integer::binomial(BigUint::from(len), BigUint::from(pair.n()));
    total / BigUint::from(len)
}

pub fn enumerate_dyck(pair: CoprimePair) -> Result<Vec<DyckWord>> {
    enumerate_dyck_bounded(pair, DEFAULT_BOUND)
}

/// All `(m,n)`-Dyck words in lexicographic order (`S < W`).
pub fn enumerate_dyck_bounded(pair: CoprimePair, bound: u32) -> Result<Vec<DyckWord>> {
    let sum = pair.m() + pair.n();
    if sum > bound {
        return Err(Error::BoundExceeded {
            sum,
            bound,
            estimate: rational_catalan(pair).to_string(),
        });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(pair.len());
    extend(
        pair,
        &mut prefix,
        0,
        pair.n() as usize,
        pair.m() as usize,
        &mut out,
    );
    Ok(out)
}

fn extend(
    pair: CoprimePair,
    prefix: &mut Vec<Letter>,
    level: i64,
    s_left: usize,
    w_left: usize,
    out: &mut Vec<DyckWord>,
) {
    if s_left == 0 && w_left == 0 {
        out.push(DyckWord::new(prefix.clone()));
        return;
    }
    // `level` is the start rank of the next step, so it must be nonnegative
    if level < 0 {
        return;
    }
    if s_left > 0 {
        prefix.push(Letter::S);
        extend(
            pair,
            prefix,
            level + pair.m() as i64,
            s_left - 1,
            w_left,
            out,
        );
        prefix.pop();
    }
    if w_left > 0 {
        prefix.push(Letter::W);
        extend(
            pair,
            prefix,
            level - pair.n() as i64,
            s_left,
            w_left - 1,
            out,
        );
        prefix.pop();
    }
}

/// Counts unit cells below the path and above the diagonal of the `m x n`
/// rectangle, without using ranks.
pub fn cell_area(word: &DyckWord, pair: CoprimePair) -> Result<u64> {
    word.check_shape(pair)?;
    let (m, n) = (pair.m() as u64, pair.n() as u64);
    let mut cells = 0;
    let mut norths = 0u64;
    let mut column = 0u64;
    for &l in word.letters() {
        match l {
            Letter::S => norths += 1,
            Letter::W => {
                // column `column` spans [column, column+1]; the path sits at height `norths`
                cells += (0..norths).filter(|&j| m * j >= n * (column + 1)).count() as u64;
                column += 1;
            }
        }
    }
    Ok(cells)
}

/// The unique Dyck word sweeping to `word`, found by exhaustive search.
pub fn brute_force_invert(word: &DyckWord, pair: CoprimePair) -> Result<DyckWord> {
    path::dyck_ranks(word, pair)?;
    let mut hits = enumerate_dyck(pair)?
        .into_iter()
        .filter(|d| path::sweep(d, pair).as_ref() == Ok(word));
    match (hits.next(), hits.next()) {
        (Some(d), None) => Ok(d),
        (None, _) => Err(Error::Oracle(format!("{word} has no pre-image for {pair}"))),
        (Some(_), Some(_)) => Err(Error::Oracle(format!(
            "{word} has several pre-images for {pair}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: u32,
    pub n: u32,
    pub path_count: usize,
    pub bijection_ok: bool,
    pub max_weak_steps: usize,
    pub max_strong_steps: usize,
    pub total_weak_steps: u64,
    pub total_strong_steps: u64,
    /// Mean of weak/strong step ratios over words where strong takes a step.
    pub mean_step_ratio: Option<f64>,
    pub identity_failures: Vec<String>,
    #[serde(with = "millis")]
    pub elapsed: Duration,
}

mod millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1000.0)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let ms = f64::deserialize(d)?;
        Ok(Duration::from_secs_f64(ms.max(0.0) / 1000.0))
    }
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

struct WordCheck {
    weak_steps: usize,
    strong_steps: usize,
    failures: Vec<String>,
}

/// Checks every `(m,n)`-Dyck word: the sweep map permutes the set, both
/// algorithms invert it, the weak step count equals `(m+n) area + C(m+n,2)`
/// minus the canonical start's sum, and both area computations agree.
pub fn verify_bijection(pair: CoprimePair) -> Result<VerificationReport> {
    let clock = Instant::now();
    let words = enumerate_dyck(pair)?;
    let mut failures = Vec::new();

    let expected = rational_catalan(pair);
    if expected.to_usize() != Some(words.len()) {
        failures.push(format!(
            "enumerated {} words, expected {expected}",
            words.len()
        ));
    }

    // brute-force inverse: image -> pre-image
    let mut preimage_of: HashMap<DyckWord, DyckWord> = HashMap::with_capacity(words.len());
    for d in &words {
        match path::sweep(d, pair) {
            Ok(image) => {
                if words.binary_search(&image).is_err() {
                    failures.push(format!("sweep({d}) = {image} is not a Dyck word"));
                }
                if let Some(prev) = preimage_of.insert(image.clone(), d.clone()) {
                    failures.push(format!("sweep({prev}) = sweep({d}) = {image}"));
                }
            }
            Err(e) => failures.push(format!("sweep({d}): {e}")),
        }
    }

    let checks: Vec<WordCheck> = words
        .par_iter()
        .map(|word| check_word(word, pair, preimage_of.get(word)))
        .collect();

    let mut report = VerificationReport {
        m: pair.m(),
        n: pair.n(),
        path_count: words.len(),
        bijection_ok: false,
        max_weak_steps: 0,
        max_strong_steps: 0,
        total_weak_steps: 0,
        total_strong_steps: 0,
        mean_step_ratio: None,
        identity_failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    let mut ratio_sum = 0.0;
    let mut ratio_count = 0usize;
    for c in checks {
        report.max_weak_steps = report.max_weak_steps.max(c.weak_steps);
        report.max_strong_steps = report.max_strong_steps.max(c.strong_steps);
        report.total_weak_steps += c.weak_steps as u64;
        report.total_strong_steps += c.strong_steps as u64;
        if c.strong_steps > 0 {
            ratio_sum += c.weak_steps as f64 / c.strong_steps as f64;
            ratio_count += 1;
        }
        failures.extend(c.failures);
    }
    if ratio_count > 0 {
        report.mean_step_ratio = Some(ratio_sum / ratio_count as f64);
    }
    report.bijection_ok = failures.is_empty();
    report.identity_failures = failures;
    report.elapsed = clock.elapsed();
    Ok(report)
}

fn check_word(word: &DyckWord, pair: CoprimePair, expected: Option<&DyckWord>) -> WordCheck {
    let mut out = WordCheck {
        weak_steps: 0,
        strong_steps: 0,
        failures: Vec::new(),
    };
    let Some(expected) = expected else {
        out.failures
            .push(format!("{word} is not in the sweep image"));
        return out;
    };
    let mut fail = |msg: String| out.failures.push(format!("{word}: {msg}"));

    match (path::area(word, pair), cell_area(word, pair)) {
        (Ok(a), Ok(b)) if a == b => {}
        (a, b) => fail(format!("area {a:?} but cell count {b:?}")),
    }

    let mut normalized = Vec::new();
    for algorithm in [Algorithm::Weak, Algorithm::Strong] {
        let run = match find_rank(word, pair, algorithm, TraceLevel::None) {
            Ok(run) => run,
            Err(e) => {
                fail(format!("{algorithm}: {e}"));
                continue;
            }
        };
        match rebuild_preimage(word, &run.normalized, pair) {
            Ok(rebuilt) if rebuilt.preimage == *expected => {}
            Ok(rebuilt) => fail(format!(
                "{algorithm} rebuilt {} instead of {expected}",
                rebuilt.preimage
            )),
            Err(e) => fail(format!("{algorithm} rebuild: {e}")),
        }
        if run.lifts != (run.balanced.sum() - run.trace.initial_ranks.sum()) as u64 {
            fail(format!(
                "{algorithm} lifts {} differ from distance",
                run.lifts
            ));
        }
        match algorithm {
            Algorithm::Weak => {
                out.weak_steps = run.steps;
                if run.balanced != run.normalized {
                    fail(format!("weak ended at {} rather than R~", run.balanced));
                }
                let area = path::area(expected, pair).unwrap_or(u64::MAX) as i64;
                let total = pair.len() as i64 * area + path::pairs_of(pair.len());
                if run.normalized.sum() != total {
                    fail(format!(
                        "|R~| = {} but (m+n) area + C = {total}",
                        run.normalized.sum()
                    ));
                }
                if run.steps as i64 != total - run.trace.initial_ranks.sum() {
                    fail(format!(
                        "weak took {} steps, expected {}",
                        run.steps,
                        total - run.trace.initial_ranks.sum()
                    ));
                }
            }
            Algorithm::Strong => out.strong_steps = run.steps,
        }
        normalized.push(run.normalized);
    }
    if normalized.len() == 2 && normalized[0] != normalized[1] {
        fail(format!(
            "weak {} vs strong {}",
            normalized[0], normalized[1]
        ));
    }
    if out.strong_steps > out.weak_steps {
        fail(format!(
            "strong {} > weak {} steps",
            out.strong_steps, out.weak_steps
        ));
    }
    out
}
