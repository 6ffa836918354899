#![allow(dead_code)]

use rand::Rng;
use sweepmap::{enumerate_dyck, CoprimePair, DyckWord, Letter, PathDiagram, RankSequence};

pub const SMALL_PAIRS: &[(u32, u32)] = &[
    (1, 1),
    (2, 1),
    (1, 2),
    (3, 2),
    (2, 3),
    (4, 3),
    (3, 4),
    (5, 2),
    (5, 3),
    (3, 5),
    (7, 5),
    (5, 7),
    (4, 5),
];

/// Coprime pairs with `m + n <= max_sum`.
pub fn pairs_up_to(max_sum: u32) -> Vec<CoprimePair> {
    CoprimePair::all_up_to(max_sum)
}

/// A random Dyck word and a random weakly increasing rank sequence that
/// satisfies the diagram preconditions.
pub fn random_diagram<R: Rng>(rng: &mut R) -> PathDiagram {
    let (m, n) = SMALL_PAIRS[rng.gen_range(0..SMALL_PAIRS.len())];
    let pair = CoprimePair::new(m, n).unwrap();
    let words = enumerate_dyck(pair).unwrap();
    let word = words[rng.gen_range(0..words.len())].clone();
    let ranks = random_ranks(rng, &word, pair, 3 * (m + n) as i64);
    PathDiagram::build(&word, &ranks, pair, None).unwrap()
}

/// Weakly increasing, nonnegative, every blue entry at least `n`.
pub fn random_ranks<R: Rng>(
    rng: &mut R,
    word: &DyckWord,
    pair: CoprimePair,
    spread: i64,
) -> RankSequence {
    let n = pair.n() as i64;
    let mut level = 0i64;
    let ranks = word
        .letters()
        .iter()
        .map(|l| {
            level += rng.gen_range(0..=spread / word.len() as i64 + 1);
            if *l == Letter::W {
                level = level.max(n);
            }
            level
        })
        .collect();
    RankSequence::new(ranks)
}

/// `c(j) - c(j-1) == #starts(j) - #ends(j)` for every `j >= 1`, checked from arrows.
pub fn difference_identity_holds(d: &PathDiagram) -> bool {
    let counts = d.recount();
    let pair = d.pair();
    (1..d.height() as i64).all(|j| {
        let starts = d.arrows().filter(|a| a.start_rank == j).count() as i64;
        let ends = d.arrows().filter(|a| a.end_rank(pair) == j).count() as i64;
        counts[j as usize] - counts[j as usize - 1] == starts - ends
    })
}
