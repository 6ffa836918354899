//! The `sweepmap` command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 internal invariant violation
//! (including a failed verification).

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::diagram::PathDiagram;
use crate::error::{Error, Result};
use crate::inversion::{
    canonical_start, find_rank, rebuild_preimage, strict_cover, strong_find_rank, weak_find_rank,
    Algorithm, Inversion, TraceDocument, TraceLevel,
};
use crate::oracle::{cell_area, enumerate_dyck, verify_bijection, VerificationReport};
use crate::path::{self, Alphabet, CoprimePair, DyckWord, RankSequence};
use crate::render::{self, Format, RenderOptions, TraceLayout};

#[derive(Debug, Parser)]
#[command(
    name = "sweepmap",
    version,
    about = "Rational (m,n) sweep map and its inversion"
)]
struct Cli {
    /// Structured JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Alphabet for printed words; input alphabet is detected.
    #[arg(long, global = true, value_enum, default_value_t = AlphabetArg::Sw)]
    alphabet: AlphabetArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlphabetArg {
    Sw,
    Ne,
}

impl From<AlphabetArg> for Alphabet {
    fn from(a: AlphabetArg) -> Self {
        match a {
            AlphabetArg::Sw => Alphabet::Sw,
            AlphabetArg::Ne => Alphabet::Ne,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Weak,
    Strong,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Weak => Algorithm::Weak,
            AlgorithmArg::Strong => Algorithm::Strong,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TraceArg {
    None,
    Rows,
    Full,
}

impl From<TraceArg> for TraceLevel {
    fn from(t: TraceArg) -> Self {
        match t {
            TraceArg::None => TraceLevel::None,
            TraceArg::Rows => TraceLevel::Rows,
            TraceArg::Full => TraceLevel::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Ascii => Format::Ascii,
            FormatArg::Svg => Format::Svg,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LayoutArg {
    Auto,
    Panels,
    Overlay,
}

impl From<LayoutArg> for TraceLayout {
    fn from(l: LayoutArg) -> Self {
        match l {
            LayoutArg::Auto => TraceLayout::Auto,
            LayoutArg::Panels => TraceLayout::Panels,
            LayoutArg::Overlay => TraceLayout::Overlay,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StartArg {
    /// 0 on the leading S run, n elsewhere.
    Canonical,
    /// Strict cover of the canonical start.
    Cover,
    /// The balanced ranks found by the strong algorithm.
    Balanced,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(short = 'm')]
    m: u32,
    #[arg(short = 'n')]
    n: u32,
}

impl PairArgs {
    fn pair(&self) -> Result<CoprimePair> {
        CoprimePair::new(self.m, self.n)
    }
}

#[derive(Debug, Args)]
struct WordArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Word in S/W or N/E letters; `-` reads it from stdin.
    word: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the sweep image of a Dyck word.
    Sweep(WordArgs),
    /// Print the sweep pre-image of a Dyck word.
    Invert {
        #[command(flatten)]
        args: WordArgs,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Strong)]
        algorithm: AlgorithmArg,
        /// Record a trace and print it as JSON.
        #[arg(long, value_enum, default_value_t = TraceArg::None)]
        trace: TraceArg,
        /// Write the trace here instead of stdout.
        #[arg(long)]
        trace_file: Option<PathBuf>,
        /// Comma-separated starting ranks.
        #[arg(long)]
        start: Option<String>,
    },
    /// List all (m,n)-Dyck words.
    Enumerate {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        count_only: bool,
    },
    /// Exhaustively check bijectivity and the step-count identities.
    Verify {
        #[arg(short = 'm', requires = "n", conflicts_with = "max_sum")]
        m: Option<u32>,
        #[arg(short = 'n', requires = "m")]
        n: Option<u32>,
        /// Verify every coprime pair with m+n up to this value.
        #[arg(long)]
        max_sum: Option<u32>,
    },
    /// Print the area of a Dyck word.
    Area(WordArgs),
    /// Draw a path, a path diagram or an inversion trace.
    Render {
        #[command(subcommand)]
        what: RenderCommand,
    },
}

#[derive(Debug, Args)]
struct RenderCommon {
    #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
    format: FormatArg,
    /// Write the document here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "red")]
    red: String,
    #[arg(long, default_value = "blue")]
    blue: String,
}

#[derive(Debug, Subcommand)]
enum RenderCommand {
    Path {
        #[command(flatten)]
        args: WordArgs,
        #[command(flatten)]
        common: RenderCommon,
    },
    Diagram {
        #[command(flatten)]
        args: WordArgs,
        #[command(flatten)]
        common: RenderCommon,
        /// Explicit comma-separated ranks; overrides --start.
        #[arg(long)]
        ranks: Option<String>,
        #[arg(long, value_enum, default_value_t = StartArg::Cover)]
        start: StartArg,
    },
    Trace {
        #[command(flatten)]
        args: WordArgs,
        #[command(flatten)]
        common: RenderCommon,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Strong)]
        algorithm: AlgorithmArg,
        #[arg(long, value_enum, default_value_t = LayoutArg::Auto)]
        layout: LayoutArg,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
    json: bool,
    alphabet: Alphabet,
}

impl Io<'_> {
    fn word(&mut self, text: &str) -> Result<DyckWord> {
        if text == "-" {
            let mut line = String::new();
            self.stdin
                .read_line(&mut line)
                .map_err(|e| Error::InvalidInput(format!("reading stdin: {e}")))?;
            return DyckWord::parse(&line);
        }
        DyckWord::parse(text)
    }

    fn dyck_word(&mut self, args: &WordArgs) -> Result<(CoprimePair, DyckWord)> {
        let pair = args.pair.pair()?;
        let word = self.word(&args.word)?;
        if !path::is_dyck(&word, pair)? {
            return Err(Error::NotDyck(word.to_string()));
        }
        Ok((pair, word))
    }

    fn show(&self, word: &DyckWord) -> String {
        word.to_string_in(self.alphabet)
    }

    fn print(&mut self, text: &str) -> Result<()> {
        self.out
            .write_all(text.as_bytes())
            .map_err(|e| Error::InvalidInput(format!("writing output: {e}")))
    }

    fn println(&mut self, text: &str) -> Result<()> {
        self.print(text)?;
        self.print("\n")
    }

    fn print_json(&mut self, value: &serde_json::Value) -> Result<()> {
        let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
        self.println(&text)
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::InvalidInput(format!("writing {}: {e}", path.display())))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let mut io = Io {
        stdin,
        out,
        json: cli.json,
        alphabet: cli.alphabet.into(),
    };
    match execute(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, io: &mut Io<'_>) -> Result<i32> {
    match command {
        Command::Sweep(args) => {
            let (pair, word) = io.dyck_word(&args)?;
            let image = path::sweep(&word, pair)?;
            if io.json {
                io.print_json(&json!({
                    "m": pair.m(), "n": pair.n(),
                    "word": io.show(&word), "image": io.show(&image),
                }))?;
            } else {
                io.println(&io.show(&image))?;
            }
        }
        Command::Invert {
            args,
            algorithm,
            trace,
            trace_file,
            start,
        } => invert(io, &args, algorithm.into(), trace.into(), trace_file, start)?,
        Command::Enumerate { pair, count_only } => {
            let pair = pair.pair()?;
            let words = enumerate_dyck(pair)?;
            if io.json {
                let mut value = json!({"m": pair.m(), "n": pair.n(), "count": words.len()});
                if !count_only {
                    value["words"] = words.iter().map(|w| io.show(w)).collect();
                }
                io.print_json(&value)?;
            } else if count_only {
                io.println(&words.len().to_string())?;
            } else {
                for w in &words {
                    io.println(&io.show(w))?;
                }
            }
        }
        Command::Verify { m, n, max_sum } => return verify(io, m, n, max_sum),
        Command::Area(args) => {
            let (pair, word) = io.dyck_word(&args)?;
            let area = path::area(&word, pair)?;
            if io.json {
                io.print_json(&json!({
                    "m": pair.m(), "n": pair.n(), "word": io.show(&word),
                    "area": area, "cell_area": cell_area(&word, pair)?,
                }))?;
            } else {
                io.println(&area.to_string())?;
            }
        }
        Command::Render { what } => render_command(io, what)?,
    }
    Ok(0)
}

fn invert(
    io: &mut Io<'_>,
    args: &WordArgs,
    algorithm: Algorithm,
    level: TraceLevel,
    trace_file: Option<PathBuf>,
    start: Option<String>,
) -> Result<()> {
    let (pair, word) = io.dyck_word(args)?;
    let start = start.map(|s| RankSequence::parse(&s)).transpose()?;
    let run: Inversion = match (algorithm, &start) {
        (_, None) => find_rank(&word, pair, algorithm, level)?,
        (Algorithm::Weak, Some(s)) => weak_find_rank(&word, s, pair, level)?,
        (Algorithm::Strong, Some(s)) => strong_find_rank(&word, pair, Some(s), level)?,
    };
    let preimage = rebuild_preimage(&word, &run.normalized, pair)?.preimage;
    if path::sweep(&preimage, pair)? != word {
        return Err(Error::Invariant(format!(
            "rebuilt {preimage} does not sweep to {word}"
        )));
    }

    if level != TraceLevel::None {
        let doc = TraceDocument::new(&word, pair, &run, &preimage);
        let mut value = serde_json::to_value(&doc).expect("trace serializes");
        value["header"]["word"] = io.show(&word).into();
        value["footer"]["preimage"] = io.show(&preimage).into();
        let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        match trace_file {
            Some(path) => write_file(&path, &(text + "\n"))?,
            None => return io.println(&text),
        }
    }
    if io.json {
        io.print_json(&json!({
            "m": pair.m(), "n": pair.n(), "word": io.show(&word),
            "preimage": io.show(&preimage), "algorithm": algorithm,
            "step_count": run.steps, "lifts": run.lifts,
        }))
    } else {
        io.println(&io.show(&preimage))
    }
}

fn verify(io: &mut Io<'_>, m: Option<u32>, n: Option<u32>, max_sum: Option<u32>) -> Result<i32> {
    let (reports, single) = match (m, n, max_sum) {
        (Some(m), Some(n), None) => (vec![verify_bijection(CoprimePair::new(m, n)?)?], true),
        (None, None, Some(k)) => {
            let reports = CoprimePair::all_up_to(k)
                .par_iter()
                .map(|&p| verify_bijection(p))
                .collect::<Result<Vec<_>>>()?;
            (reports, false)
        }
        _ => {
            return Err(Error::InvalidInput(
                "verify needs either -m and -n or --max-sum".into(),
            ))
        }
    };
    if io.json {
        let value = if single {
            serde_json::to_value(&reports[0])
        } else {
            serde_json::to_value(&reports)
        }
        .expect("reports serialize");
        io.print_json(&value)?;
    } else {
        for r in &reports {
            io.println(&report_line(r))?;
            for f in &r.identity_failures {
                io.println(&format!("  {f}"))?;
            }
        }
    }
    Ok(if reports.iter().all(|r| r.bijection_ok) {
        0
    } else {
        2
    })
}

fn report_line(r: &VerificationReport) -> String {
    format!(
        "({},{}) paths={} {} max_weak_steps={} max_strong_steps={} mean_step_ratio={} elapsed_ms={:.3}",
        r.m,
        r.n,
        r.path_count,
        if r.bijection_ok { "ok" } else { "FAILED" },
        r.max_weak_steps,
        r.max_strong_steps,
        r.mean_step_ratio.map_or("-".to_string(), |x| format!("{x:.3}")),
        r.elapsed.as_secs_f64() * 1000.0
    )
}

fn render_command(io: &mut Io<'_>, what: RenderCommand) -> Result<()> {
    let (text, output) = match what {
        RenderCommand::Path { args, common } => {
            let (pair, word) = io.dyck_word(&args)?;
            let options = options(&common, TraceLayout::Auto);
            (
                render::render_path_with(&word, pair, common.format.into(), &options)?,
                common.output,
            )
        }
        RenderCommand::Diagram {
            args,
            common,
            ranks,
            start,
        } => {
            let (pair, word) = io.dyck_word(&args)?;
            let ranks = match ranks {
                Some(r) => RankSequence::parse(&r)?,
                None => match start {
                    StartArg::Canonical => canonical_start(&word, pair)?,
                    StartArg::Cover => strict_cover(&canonical_start(&word, pair)?)?,
                    StartArg::Balanced => {
                        find_rank(&word, pair, Algorithm::Strong, TraceLevel::None)?.normalized
                    }
                },
            };
            let diagram = PathDiagram::build(&word, &ranks, pair, None)?;
            let options = options(&common, TraceLayout::Auto);
            (
                render::render_diagram_with(&diagram, common.format.into(), &options),
                common.output,
            )
        }
        RenderCommand::Trace {
            args,
            common,
            algorithm,
            layout,
        } => {
            let (pair, word) = io.dyck_word(&args)?;
            let run = find_rank(&word, pair, algorithm.into(), TraceLevel::Full)?;
            let options = options(&common, layout.into());
            (
                render::render_trace_with(&run.trace, &word, pair, common.format.into(), &options)?,
                common.output,
            )
        }
    };
    match output {
        Some(path) => write_file(&path, &text),
        None => io.print(&text),
    }
}

fn options(common: &RenderCommon, layout: TraceLayout) -> RenderOptions {
    RenderOptions {
        red: common.red.clone(),
        blue: common.blue.clone(),
        layout,
        ..RenderOptions::default()
    }
}
