//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed;
//! the process exits non-zero if any criterion fails.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sweepmap::render::{render_diagram, render_path, Format};
use sweepmap::*;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn pair(m: u32, n: u32) -> CoprimePair {
    CoprimePair::new(m, n).unwrap()
}

fn word(s: &str) -> DyckWord {
    DyckWord::parse(s).unwrap()
}

/// Sorted preimage ranks: the rank multiset every inversion must reach.
fn target(w: &DyckWord, p: CoprimePair) -> RankSequence {
    step_ranks(&brute_force_invert(w, p).unwrap(), p)
        .unwrap()
        .sorted()
}

fn bijectivity() -> Outcome {
    let started = Instant::now();
    let pairs = CoprimePair::all_up_to(13);
    let mut words_checked = 0;
    for &p in &pairs {
        let words = enumerate_dyck(p).map_err(|e| e.to_string())?;
        let preimages: HashMap<DyckWord, DyckWord> = words
            .iter()
            .map(|w| (sweep(w, p).unwrap(), w.clone()))
            .collect();
        ensure!(
            preimages.len() == words.len(),
            "sweep is not injective at {p}"
        );
        for w in &words {
            let Some(expected) = preimages.get(w) else {
                return Err(format!("{w} at {p} is not a sweep image"));
            };
            for alg in [Algorithm::Weak, Algorithm::Strong] {
                let got = invert(w, p, alg).map_err(|e| format!("{alg} on {w} at {p}: {e}"))?;
                ensure!(
                    &got == expected,
                    "{alg} inverts {w} at {p} to {got}, expected {expected}"
                );
            }
            words_checked += 1;
        }
    }
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "{} pairs, {words_checked} words, both algorithms, {:.2}s",
        pairs.len(),
        elapsed.as_secs_f64()
    ))
}

fn catalan_counts() -> Outcome {
    for (m, n, expected) in [(3, 2, 2u32), (5, 3, 7), (8, 3, 15), (7, 5, 66)] {
        let p = pair(m, n);
        ensure!(
            rational_catalan(p) == BigUint::from(expected),
            "formula at {p}"
        );
        ensure!(
            enumerate_dyck(p).unwrap().len() == expected as usize,
            "enumeration at {p}"
        );
    }
    let pairs = CoprimePair::all_up_to(13);
    for &p in &pairs {
        let found = enumerate_dyck(p).unwrap().len();
        ensure!(
            BigUint::from(found) == rational_catalan(p),
            "{p}: enumerated {found}"
        );
    }
    Ok(format!(
        "spot values 2, 7, 15, 66; enumeration equals formula on {} pairs",
        pairs.len()
    ))
}

fn running_example() -> Outcome {
    let (w, p) = (word("SSSWWWWSSWWW"), pair(7, 5));
    let start = strict_cover(&canonical_start(&w, p).unwrap()).unwrap();
    let expected = RankSequence::new(vec![0, 1, 2, 5, 6, 7, 8, 9, 10, 11, 12, 13]);
    ensure!(start == expected, "cover of canonical start is {start}");
    let run = strong_find_rank(&w, p, None, TraceLevel::None).map_err(|e| e.to_string())?;
    ensure!(
        (17..=18).contains(&run.steps),
        "strong took {} steps",
        run.steps
    );
    let rebuilt = rebuild_preimage(&w, &run.normalized, p).unwrap().preimage;
    let brute = brute_force_invert(&w, p).unwrap();
    ensure!(rebuilt == brute, "rebuilt {rebuilt}, brute force {brute}");
    ensure!(
        sweep(&rebuilt, p).unwrap() == w,
        "rebuilt preimage does not sweep back"
    );
    Ok(format!(
        "start {start}, {} strong steps, preimage {rebuilt}",
        run.steps
    ))
}

fn step_identity() -> Outcome {
    let mut words = 0;
    for p in CoprimePair::all_up_to(13) {
        for w in enumerate_dyck(p).unwrap() {
            let start = canonical_start(&w, p).unwrap();
            let run = weak_find_rank(&w, &start, p, TraceLevel::None)
                .map_err(|e| format!("{w} at {p}: {e}"))?;
            let final_sum = run.balanced.sum();
            let area = area(&brute_force_invert(&w, p).unwrap(), p).unwrap() as i64;
            let len = p.len() as i64;
            ensure!(
                final_sum == len * area + len * (len - 1) / 2,
                "{w} at {p}: final sum {final_sum}"
            );
            ensure!(
                run.steps as i64 == final_sum - start.sum(),
                "{w} at {p}: {} steps, expected {}",
                run.steps,
                final_sum - start.sum()
            );
            words += 1;
        }
    }
    Ok(format!("weak steps = |final| - |start| on {words} words"))
}

fn tightness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut samples = 0;
    for p in CoprimePair::all_up_to(10) {
        for w in enumerate_dyck(p).unwrap() {
            let low = canonical_start(&w, p).unwrap();
            let high = target(&w, p);
            for _ in 0..5 {
                let mut prev = i64::MIN;
                let ranks: Vec<i64> = low
                    .as_slice()
                    .iter()
                    .zip(high.as_slice())
                    .map(|(&lo, &hi)| {
                        let r = rng.gen_range(lo.max(prev)..=hi);
                        prev = r;
                        r
                    })
                    .collect();
                let start = RankSequence::new(ranks);
                let run = weak_find_rank(&w, &start, p, TraceLevel::None)
                    .map_err(|e| format!("{w} from {start} at {p}: {e}"))?;
                ensure!(
                    run.balanced == high,
                    "{w} from {start} at {p}: reached {}",
                    run.balanced
                );
                let d = distance(&start, &high).unwrap();
                ensure!(
                    run.steps as i64 == d,
                    "{w} from {start} at {p}: {} steps for distance {d}",
                    run.steps
                );
                samples += 1;
            }
        }
    }
    Ok(format!(
        "{samples} sampled starts reach the target in exactly distance steps"
    ))
}

fn strong_versus_weak() -> Outcome {
    let (mut ratio_sum, mut ratio_count) = (0.0, 0usize);
    let (mut total_weak, mut total_strong) = (0u64, 0u64);
    for p in CoprimePair::all_up_to(13) {
        for w in enumerate_dyck(p).unwrap() {
            let weak = find_rank(&w, p, Algorithm::Weak, TraceLevel::None).unwrap();
            let strong = find_rank(&w, p, Algorithm::Strong, TraceLevel::None).unwrap();
            ensure!(
                strong.steps <= weak.steps,
                "{w} at {p}: strong {} > weak {}",
                strong.steps,
                weak.steps
            );
            total_weak += weak.steps as u64;
            total_strong += strong.steps as u64;
            if strong.steps > 0 {
                ratio_sum += weak.steps as f64 / strong.steps as f64;
                ratio_count += 1;
            }
        }
    }
    let report = verify_bijection(pair(7, 5)).unwrap();
    Ok(format!(
        "mean weak/strong ratio {:.2} over {ratio_count} words (totals {total_weak}/{total_strong}); (7,5): max weak {}, max strong {}, mean ratio {:.2}",
        ratio_sum / ratio_count as f64,
        report.max_weak_steps,
        report.max_strong_steps,
        report.mean_step_ratio.unwrap_or(f64::NAN),
    ))
}

fn lemma_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1a9);
    let diagrams = 1000;
    let mut lifts = 0;
    for k in 0..diagrams {
        let mut d = common::random_diagram(&mut rng);
        ensure!(
            common::difference_identity_holds(&d),
            "difference identity, diagram {k}"
        );
        ensure!(
            d.row_counts().iter().sum::<i64>() == 0,
            "nonzero total, diagram {k}"
        );
        for _ in 0..rng.gen_range(1..30) {
            let i = rng.gen_range(0..d.ranks().len());
            if d.ranks().get(i + 1) == Some(&d.ranks()[i]) {
                continue;
            }
            match d.lift_arrow(i) {
                Ok(_) => lifts += 1,
                Err(Error::GridOverflow { .. }) => continue,
                Err(e) => return Err(format!("diagram {k}: {e}")),
            }
            ensure!(
                d.recount() == d.row_counts(),
                "cached counts drifted, diagram {k}"
            );
        }
        ensure!(
            common::difference_identity_holds(&d),
            "difference identity after lifts, diagram {k}"
        );
        ensure!(
            d.row_counts().iter().sum::<i64>() == 0,
            "nonzero total after lifts, diagram {k}"
        );
    }
    Ok(format!("{diagrams} diagrams, {lifts} lifts"))
}

fn area_agreement() -> Outcome {
    let mut words = 0;
    for p in CoprimePair::all_up_to(15) {
        for w in enumerate_dyck(p).unwrap() {
            let (formula, cells) = (area(&w, p).unwrap(), cell_area(&w, p).unwrap());
            ensure!(
                formula == cells,
                "{w} at {p}: formula {formula}, cells {cells}"
            );
            words += 1;
        }
    }
    ensure!(
        area(&word("SSSWWWWSSWWW"), pair(7, 5)).unwrap() == 4,
        "running example area"
    );
    Ok(format!("formula equals cell count on {words} words"))
}

fn golden_renders() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let (w, p) = (word("SSSWWWWSSWWW"), pair(7, 5));
    let start = strict_cover(&canonical_start(&w, p).unwrap()).unwrap();
    let diagram = PathDiagram::build(&w, &start, p, None).unwrap();
    let cases = [
        (
            "path_3_2_SSWWW.txt",
            render_path(&word("SSWWW"), pair(3, 2), Format::Ascii).unwrap(),
        ),
        (
            "path_3_2_SWSWW.txt",
            render_path(&word("SWSWW"), pair(3, 2), Format::Ascii).unwrap(),
        ),
        (
            "diagram_7_5_SSSWWWWSSWWW.txt",
            render_diagram(&diagram, Format::Ascii),
        ),
    ];
    for (name, actual) in &cases {
        let expected =
            std::fs::read_to_string(dir.join(name)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(*actual == expected, "{name} differs from golden");
        let again = if name.starts_with("diagram") {
            render_diagram(&diagram, Format::Ascii)
        } else {
            let w = name.trim_end_matches(".txt").rsplit('_').next().unwrap();
            render_path(&word(w), pair(3, 2), Format::Ascii).unwrap()
        };
        ensure!(*actual == again, "{name} is not deterministic");
    }
    Ok(format!("{} golden renders match", cases.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("bijectivity for m+n <= 13 within 60s", bijectivity),
        ("path counts equal rational Catalan numbers", catalan_counts),
        (
            "running example start, strong steps and preimage",
            running_example,
        ),
        ("weak step-count identity", step_identity),
        (
            "weak inversion is tight from any start below the target",
            tightness,
        ),
        (
            "strong never takes more steps than weak",
            strong_versus_weak,
        ),
        ("row-count lemma on random diagrams", lemma_fuzz),
        ("area formula equals cell count", area_agreement),
        ("golden ASCII renders", golden_renders),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail})", k + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {}: {name} ({reason})", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
