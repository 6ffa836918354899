//! Inverting the sweep map by lifting arrows until a path diagram balances.
//!
//! Both algorithms start from the image word `Σ` and a rank sequence below
//! the target, then repeatedly find the lowest row with a positive count and
//! lift the arrow starting on it. The weak variant lifts one arrow by one
//! unit per step. The strong variant keeps the ranks strictly increasing by
//! also lifting every arrow to the right that the first lift collides with.
//!
//! Once balanced, the ranks shifted down to start at 0 are the sorted ranks
//! of the pre-image, and [`rebuild_preimage`] walks the diagram to recover it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramParams, Lift, PathDiagram};
use crate::error::{Error, Result};
use crate::path::{self, CoprimePair, DyckWord, Letter, RankSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Weak,
    #[default]
    Strong,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Weak => "weak",
            Algorithm::Strong => "strong",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(Algorithm::Weak),
            "strong" => Ok(Algorithm::Strong),
            _ => Err(Error::InvalidInput(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// How much of a run to record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub enum TraceLevel {
    /// Step counts only.
    #[default]
    None,
    /// Worked row and lifted columns per step.
    Rows,
    /// Rows plus a rank snapshot after every step.
    Full,
}

impl FromStr for TraceLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(TraceLevel::None),
            "rows" => Ok(TraceLevel::Rows),
            "full" => Ok(TraceLevel::Full),
            _ => Err(Error::InvalidInput(format!("unknown trace level {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub worked_row: usize,
    /// 1-based columns, in lift order.
    pub lifted_columns: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks_after: Option<RankSequence>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionTrace {
    pub algorithm: Algorithm,
    pub level: TraceLevel,
    pub steps: Vec<StepRecord>,
    pub initial_ranks: RankSequence,
    pub final_ranks: RankSequence,
}

impl InversionTrace {
    /// Rank sequences before the first step and after each step.
    /// Needs a trace recorded at [`TraceLevel::Full`].
    pub fn snapshots(&self) -> Result<Vec<RankSequence>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.initial_ranks.clone());
        for s in &self.steps {
            match &s.ranks_after {
                Some(r) => out.push(r.clone()),
                None => {
                    return Err(Error::InvalidInput(
                        "trace has no rank snapshots; record it at full level".into(),
                    ))
                }
            }
        }
        Ok(out)
    }
}

/// Result of running either algorithm to balance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inversion {
    /// Ranks of the balanced diagram.
    pub balanced: RankSequence,
    /// `balanced` shifted so its first entry is 0.
    pub normalized: RankSequence,
    /// Number of executions of the main step.
    pub steps: usize,
    /// Total unit lifts; equals `distance(start, balanced)`.
    pub lifts: u64,
    pub trace: InversionTrace,
}

/// 0 on the leading run of `S`, `n` everywhere else.
pub fn canonical_start(word: &DyckWord, pair: CoprimePair) -> Result<RankSequence> {
    path::dyck_ranks(word, pair)?;
    let letters = word.letters();
    if letters.first() != Some(&Letter::S) {
        return Err(Error::InvalidInput(format!("{word} does not start with S")));
    }
    let lead = letters.iter().take_while(|&&l| l == Letter::S).count();
    let n = pair.n() as i64;
    Ok(RankSequence::new(
        (0..word.len())
            .map(|i| if i < lead { 0 } else { n })
            .collect(),
    ))
}

/// Smallest strictly increasing sequence dominating `ranks` componentwise.
pub fn strict_cover(ranks: &RankSequence) -> Result<RankSequence> {
    if !ranks.is_weakly_increasing() || !ranks.is_nonnegative() {
        return Err(Error::InvalidRanks(format!(
            "{ranks} must be weakly increasing and nonnegative"
        )));
    }
    let mut out: Vec<i64> = Vec::with_capacity(ranks.len());
    for &r in ranks.as_slice() {
        let next = match out.last() {
            Some(&prev) => r.max(prev + 1),
            None => r,
        };
        out.push(next);
    }
    Ok(RankSequence::new(out))
}

/// Per-run bookkeeping shared by both algorithms.
struct Run {
    diagram: PathDiagram,
    level: TraceLevel,
    steps: Vec<StepRecord>,
    step_count: usize,
    lifts: u64,
    cap: u64,
    // rows whose count has been >= 0 at some point; they must stay >= 0
    settled: Option<Vec<bool>>,
}

impl Run {
    fn new(
        word: &DyckWord,
        start: &RankSequence,
        pair: CoprimePair,
        level: TraceLevel,
    ) -> Result<Self> {
        path::dyck_ranks(word, pair)?;
        let params = DiagramParams::for_start(start, pair);
        let diagram = PathDiagram::build(word, start, pair, Some(params.height))?;
        let cap = (pair.len() * params.height) as u64;
        Ok(Run {
            diagram,
            level,
            steps: Vec::new(),
            step_count: 0,
            lifts: 0,
            cap,
            settled: None,
        })
    }

    fn guard_settled_rows(mut self) -> Self {
        self.settled = Some(self.diagram.row_counts().iter().map(|&c| c >= 0).collect());
        self
    }

    fn lift(&mut self, index: usize) -> Result<Lift> {
        if self.lifts >= self.cap {
            return Err(Error::Invariant(format!(
                "no balance after {} lifts",
                self.cap
            )));
        }
        let lift = self.diagram.lift_arrow(index)?;
        self.lifts += 1;
        Ok(lift)
    }

    /// Checks that none of `rows` dropped below zero after having been
    /// nonnegative, then marks the nonnegative ones.
    fn settle(&mut self, rows: &[usize]) -> Result<()> {
        let Some(settled) = self.settled.as_mut() else {
            return Ok(());
        };
        for &row in rows {
            let count = self.diagram.count(row);
            if count < 0 && settled[row] {
                return Err(Error::Invariant(format!(
                    "row {row} went negative after being nonnegative"
                )));
            }
            if count >= 0 {
                settled[row] = true;
            }
        }
        Ok(())
    }

    fn record(&mut self, worked_row: usize, lifted: Vec<usize>) {
        self.step_count += 1;
        if self.level == TraceLevel::None {
            return;
        }
        let ranks_after = (self.level == TraceLevel::Full).then(|| self.diagram.rank_sequence());
        self.steps.push(StepRecord {
            step: self.step_count,
            worked_row,
            lifted_columns: lifted.into_iter().map(|i| i + 1).collect(),
            ranks_after,
        });
    }

    fn finish(self, algorithm: Algorithm, start: &RankSequence) -> Result<Inversion> {
        let balanced = self.diagram.rank_sequence();
        if !self.diagram.is_balanced() {
            return Err(Error::Invariant(
                "run stopped on an unbalanced diagram".into(),
            ));
        }
        if !balanced.is_strictly_increasing() {
            return Err(Error::Invariant(format!(
                "balanced ranks {balanced} are not strictly increasing"
            )));
        }
        let base = balanced.as_slice()[0];
        let normalized = RankSequence::new(balanced.as_slice().iter().map(|r| r - base).collect());
        Ok(Inversion {
            normalized,
            steps: self.step_count,
            lifts: self.lifts,
            trace: InversionTrace {
                algorithm,
                level: self.level,
                steps: self.steps,
                initial_ranks: start.clone(),
                final_ranks: balanced.clone(),
            },
            balanced,
        })
    }
}

/// Lifts the rightmost arrow on the lowest positive row, one unit per step.
///
/// `start` must be weakly increasing, nonnegative, with blue arrows starting
/// at `n` or higher.
pub fn weak_find_rank(
    word: &DyckWord,
    start: &RankSequence,
    pair: CoprimePair,
    level: TraceLevel,
) -> Result<Inversion> {
    let mut run = Run::new(word, start, pair, level)?.guard_settled_rows();
    while let Some(row) = run.diagram.seek_lowest_positive_row() {
        let ranks = run.diagram.ranks();
        let j = row as i64;
        let end = ranks.partition_point(|&r| r <= j);
        if end == 0 || ranks[end - 1] != j {
            return Err(Error::Invariant(format!(
                "no arrow starts at worked row {row}"
            )));
        }
        let index = end - 1;
        let lift = run.lift(index)?;
        run.settle(&[lift.decreased_row, lift.increased_row])?;
        run.record(row, vec![index]);
    }
    run.finish(Algorithm::Weak, start)
}

/// Lifts the unique arrow on the lowest positive row, then restores strict
/// increase by cascading lifts to the right.
///
/// `start` defaults to `strict_cover(canonical_start(word))`.
pub fn strong_find_rank(
    word: &DyckWord,
    pair: CoprimePair,
    start: Option<&RankSequence>,
    level: TraceLevel,
) -> Result<Inversion> {
    let start = match start {
        Some(s) => {
            if !s.is_strictly_increasing() {
                return Err(Error::InvalidRanks(format!(
                    "{s} is not strictly increasing"
                )));
            }
            s.clone()
        }
        None => strict_cover(&canonical_start(word, pair)?)?,
    };
    // cascade lifts may push a settled row negative; only weak runs are guarded
    let mut run = Run::new(word, &start, pair, level)?;
    while let Some(row) = run.diagram.seek_lowest_positive_row() {
        let ranks = run.diagram.ranks();
        let j = row as i64;
        let index = ranks.partition_point(|&r| r < j);
        if index == ranks.len() || ranks[index] != j {
            return Err(Error::Invariant(format!(
                "no arrow starts at worked row {row}"
            )));
        }
        if ranks.get(index + 1) == Some(&j) {
            return Err(Error::Invariant(format!(
                "two arrows start at worked row {row}"
            )));
        }
        let mut lifted = vec![index];
        run.lift(index)?;
        let mut k = index + 1;
        while k < run.diagram.ranks().len() && run.diagram.ranks()[k] <= run.diagram.ranks()[k - 1]
        {
            run.lift(k)?;
            lifted.push(k);
            k += 1;
        }
        run.record(row, lifted);
    }
    run.finish(Algorithm::Strong, &start)
}

/// Runs `algorithm` from its default start: the canonical start for weak,
/// its strict cover for strong.
pub fn find_rank(
    word: &DyckWord,
    pair: CoprimePair,
    algorithm: Algorithm,
    level: TraceLevel,
) -> Result<Inversion> {
    match algorithm {
        Algorithm::Weak => weak_find_rank(word, &canonical_start(word, pair)?, pair, level),
        Algorithm::Strong => strong_find_rank(word, pair, None, level),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rebuild {
    pub preimage: DyckWord,
    /// 1-based columns in the order the walk used them.
    pub visit_order: Vec<usize>,
}

/// Walks a balanced diagram from level 0, always taking the leftmost unused
/// arrow that starts at the current level.
pub fn rebuild_preimage(
    word: &DyckWord,
    ranks: &RankSequence,
    pair: CoprimePair,
) -> Result<Rebuild> {
    word.check_shape(pair)?;
    if ranks.len() != word.len() {
        return Err(Error::LengthMismatch {
            left: word.len(),
            right: ranks.len(),
        });
    }
    if !ranks.is_weakly_increasing() || ranks.as_slice().first() != Some(&0) {
        return Err(Error::InvalidRanks(format!(
            "{ranks} must be weakly increasing and start at 0"
        )));
    }
    // level -> (next unused column, one past the last column at that level)
    let mut at_level: HashMap<i64, (usize, usize)> = HashMap::new();
    for (i, &r) in ranks.as_slice().iter().enumerate() {
        at_level.entry(r).or_insert((i, i)).1 = i + 1;
    }
    let (m, n) = (pair.m() as i64, pair.n() as i64);
    let mut level = 0i64;
    let mut letters = Vec::with_capacity(word.len());
    let mut visit_order = Vec::with_capacity(word.len());
    for _ in 0..word.len() {
        let slot = at_level
            .get_mut(&level)
            .filter(|(next, end)| next < end)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "no unused arrow starts at level {level}; diagram is not balanced"
                ))
            })?;
        let column = slot.0;
        slot.0 += 1;
        let letter = word.letters()[column];
        level += match letter {
            Letter::S => m,
            Letter::W => -n,
        };
        letters.push(letter);
        visit_order.push(column + 1);
    }
    if level != 0 {
        return Err(Error::InvalidInput(format!(
            "walk ended at level {level} instead of 0"
        )));
    }
    Ok(Rebuild {
        preimage: DyckWord::new(letters),
        visit_order,
    })
}

/// The pre-image of `word` under the sweep map.
pub fn invert(word: &DyckWord, pair: CoprimePair, algorithm: Algorithm) -> Result<DyckWord> {
    let run = find_rank(word, pair, algorithm, TraceLevel::None)?;
    let rebuilt = rebuild_preimage(word, &run.normalized, pair)?;
    if path::sweep(&rebuilt.preimage, pair)? != *word {
        return Err(Error::Invariant(format!(
            "rebuilt {} does not sweep to {word}",
            rebuilt.preimage
        )));
    }
    Ok(rebuilt.preimage)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceHeader {
    pub m: u32,
    pub n: u32,
    pub word: DyckWord,
    pub algorithm: Algorithm,
    pub start_ranks: RankSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFooter {
    pub final_ranks: RankSequence,
    pub normalized_ranks: RankSequence,
    pub preimage: DyckWord,
    pub step_count: usize,
}

/// The serialized form of a run: header, one record per step, footer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub header: TraceHeader,
    pub steps: Vec<StepRecord>,
    pub footer: TraceFooter,
}

impl TraceDocument {
    pub fn new(word: &DyckWord, pair: CoprimePair, run: &Inversion, preimage: &DyckWord) -> Self {
        TraceDocument {
            header: TraceHeader {
                m: pair.m(),
                n: pair.n(),
                word: word.clone(),
                algorithm: run.trace.algorithm,
                start_ranks: run.trace.initial_ranks.clone(),
            },
            steps: run.trace.steps.clone(),
            footer: TraceFooter {
                final_ranks: run.balanced.clone(),
                normalized_ranks: run.normalized.clone(),
                preimage: preimage.clone(),
                step_count: run.steps,
            },
        }
    }

    /// Runs `algorithm` from its default start and rebuilds the pre-image.
    pub fn run(
        word: &DyckWord,
        pair: CoprimePair,
        algorithm: Algorithm,
        level: TraceLevel,
    ) -> Result<Self> {
        let run = find_rank(word, pair, algorithm, level)?;
        let preimage = rebuild_preimage(word, &run.normalized, pair)?.preimage;
        Ok(TraceDocument::new(word, pair, &run, &preimage))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace documents serialize")
    }

    /// Rebuilds the in-memory trace, e.g. for rendering a saved document.
    pub fn trace(&self) -> InversionTrace {
        let level = match self.steps.first() {
            None => TraceLevel::Full,
            Some(s) if s.ranks_after.is_some() => TraceLevel::Full,
            Some(_) => TraceLevel::Rows,
        };
        InversionTrace {
            algorithm: self.header.algorithm,
            level,
            steps: self.steps.clone(),
            initial_ranks: self.header.start_ranks.clone(),
            final_ranks: self.footer.final_ranks.clone(),
        }
    }
}
