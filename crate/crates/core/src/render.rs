//! ASCII and SVG pictures of paths, path diagrams and inversion traces.
//!
//! Output is a pure function of the input: no timestamps, no hash-order
//! iteration, fixed float formatting. ASCII uses LF line endings.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::diagram::{Color, PathDiagram};
use crate::error::{Error, Result};
use crate::inversion::InversionTrace;
use crate::path::{self, CoprimePair, DyckWord, Letter, RankSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Ascii,
    Svg,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}"))),
        }
    }
}

/// How to lay out a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceLayout {
    /// Panels for short traces, overlay otherwise.
    #[default]
    Auto,
    /// One diagram per rank snapshot, initial included.
    Panels,
    /// The final diagram with a numbered box on every cell an arrow vacated.
    Overlay,
}

impl FromStr for TraceLayout {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(TraceLayout::Auto),
            "panels" => Ok(TraceLayout::Panels),
            "overlay" => Ok(TraceLayout::Overlay),
            _ => Err(Error::InvalidInput(format!("unknown layout {s:?}"))),
        }
    }
}

/// Largest number of panels [`TraceLayout::Auto`] draws before switching to the overlay.
pub const AUTO_PANEL_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderOptions {
    pub red: String,
    pub blue: String,
    pub marker: String,
    pub layout: TraceLayout,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            red: "red".into(),
            blue: "blue".into(),
            marker: "green".into(),
            layout: TraceLayout::Auto,
        }
    }
}

impl RenderOptions {
    fn stroke(&self, color: Color) -> &str {
        match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Text canvas addressed by (row, column) from the top left.
struct Canvas {
    cells: Vec<Vec<char>>,
}

impl Canvas {
    fn new(rows: usize, cols: usize) -> Self {
        Canvas {
            cells: vec![vec![' '; cols]; rows],
        }
    }

    fn put(&mut self, row: usize, col: usize, c: char) {
        self.cells[row][col] = c;
    }

    fn put_str(&mut self, row: usize, col: usize, s: &str) {
        for (i, c) in s.chars().enumerate() {
            self.put(row, col + i, c);
        }
    }

    fn get(&self, row: usize, col: usize) -> char {
        self.cells[row][col]
    }

    fn finish(self, out: &mut String) {
        for line in self.cells {
            let line: String = line.into_iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
}

pub fn render_path(word: &DyckWord, pair: CoprimePair, format: Format) -> Result<String> {
    render_path_with(word, pair, format, &RenderOptions::default())
}

/// The staircase inside the `m x n` rectangle with the diagonal and every
/// starting vertex labelled by its rank.
pub fn render_path_with(
    word: &DyckWord,
    pair: CoprimePair,
    format: Format,
    options: &RenderOptions,
) -> Result<String> {
    let ranks = path::dyck_ranks(word, pair)?;
    Ok(match format {
        Format::Ascii => path_ascii(word, pair, &ranks),
        Format::Svg => path_svg(word, pair, &ranks, options),
    })
}

const PATH_UNIT: usize = 5;

fn path_ascii(word: &DyckWord, pair: CoprimePair, ranks: &RankSequence) -> String {
    let (m, n) = (pair.m() as usize, pair.n() as usize);
    let mut canvas = Canvas::new(2 * n + 1, PATH_UNIT * m + 4);
    let at = |x: usize, y: usize| (2 * (n - y), PATH_UNIT * x);

    for x in 0..=m {
        for y in 0..=n {
            let (r, c) = at(x, y);
            canvas.put(r, c, '.');
        }
    }
    // diagonal y = n x / m, sampled on every text row
    for r in 0..=2 * n {
        let y = n as f64 - r as f64 / 2.0;
        let col = (PATH_UNIT as f64 * m as f64 * y / n as f64).round() as usize;
        if canvas.get(r, col) == ' ' {
            canvas.put(r, col, '*');
        }
    }
    let (mut x, mut y) = (0usize, 0usize);
    for (&letter, &rank) in word.letters().iter().zip(ranks.as_slice()) {
        let (r, c) = at(x, y);
        let label = rank.to_string();
        canvas.put_str(r, c, &label);
        match letter {
            Letter::S => {
                canvas.put(r - 1, c, '|');
                y += 1;
            }
            Letter::W => {
                for col in c + label.len()..c + PATH_UNIT {
                    canvas.put(r, col, '-');
                }
                x += 1;
            }
        }
    }
    let (r, c) = at(x, y);
    canvas.put(r, c, '+');

    let mut out = format!("{pair}-Dyck path {word}\n");
    canvas.finish(&mut out);
    out
}

fn path_svg(
    word: &DyckWord,
    pair: CoprimePair,
    ranks: &RankSequence,
    options: &RenderOptions,
) -> String {
    const UNIT: usize = 40;
    const MARGIN: usize = 30;
    let (m, n) = (pair.m() as usize, pair.n() as usize);
    let (width, height) = (m * UNIT + 2 * MARGIN, n * UNIT + 2 * MARGIN);
    let px = |x: usize| MARGIN + x * UNIT;
    let py = |y: usize| MARGIN + (n - y) * UNIT;

    let mut out = String::new();
    svg_open(&mut out, width, height);
    let _ = writeln!(out, "<title>{pair}-Dyck path {word}</title>");
    out.push_str("<g class=\"grid\" stroke=\"#cccccc\" stroke-width=\"1\">\n");
    for x in 0..=m {
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            px(x),
            py(0),
            px(x),
            py(n)
        );
    }
    for y in 0..=n {
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            px(0),
            py(y),
            px(m),
            py(y)
        );
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        "<line class=\"diagonal\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#888888\" stroke-width=\"1\"/>",
        px(0),
        py(0),
        px(m),
        py(n)
    );
    let (mut x, mut y) = (0usize, 0usize);
    let mut labels = String::new();
    for (&letter, &rank) in word.letters().iter().zip(ranks.as_slice()) {
        let (x0, y0) = (x, y);
        let kind = match letter {
            Letter::S => {
                y += 1;
                "north"
            }
            Letter::W => {
                x += 1;
                "east"
            }
        };
        let _ = writeln!(
            out,
            "<line class=\"step {kind}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"3\"/>",
            px(x0),
            py(y0),
            px(x),
            py(y),
            xml_escape(&options.red)
        );
        let _ = writeln!(
            labels,
            "<text class=\"rank\" x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{rank}</text>",
            px(x0) as i64 - 4,
            py(y0) as i64 - 4
        );
    }
    out.push_str(&labels);
    out.push_str("</svg>\n");
    out
}

fn svg_open(out: &mut String, width: usize, height: usize) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
}

pub fn render_diagram(diagram: &PathDiagram, format: Format) -> String {
    render_diagram_with(diagram, format, &RenderOptions::default())
}

/// Arrows column by column with per-row counts on the right. When the
/// diagram is unbalanced the lowest positive row is marked.
pub fn render_diagram_with(
    diagram: &PathDiagram,
    format: Format,
    options: &RenderOptions,
) -> String {
    let top = top_row(diagram);
    match format {
        Format::Ascii => {
            let mut out = diagram_title(diagram);
            out.push('\n');
            diagram_ascii(diagram, top, &mut out);
            out
        }
        Format::Svg => {
            let body = DiagramSvg::new(diagram, top, options);
            let mut out = String::new();
            svg_open(&mut out, body.width, body.height);
            let _ = writeln!(
                out,
                "<title>{}</title>",
                xml_escape(&diagram_title(diagram))
            );
            svg_defs(&mut out, options);
            out.push_str(&body.body);
            out.push_str("</svg>\n");
            out
        }
    }
}

fn diagram_title(d: &PathDiagram) -> String {
    format!("T({}; {}) for {}", d.word(), d.rank_sequence(), d.pair())
}

/// Highest row holding a segment.
fn top_row(d: &PathDiagram) -> usize {
    d.arrows()
        .map(|a| a.rows(d.pair()).end - 1)
        .max()
        .unwrap_or(0)
        .max(0) as usize
}

/// Which arrow, if any, has a segment in the given cell.
fn segment_at(d: &PathDiagram, index: usize, row: usize) -> Option<Color> {
    let rank = d.ranks()[index];
    let color = d.color(index);
    let arrow = crate::diagram::Arrow {
        column: index + 1,
        color,
        start_rank: rank,
    };
    arrow
        .rows(d.pair())
        .contains(&(row as i64))
        .then_some(color)
}

fn diagram_ascii(d: &PathDiagram, top: usize, out: &mut String) {
    let cols = d.word().len();
    let marker = d.lowest_positive_row();
    for row in (0..=top).rev() {
        let mut line = format!("{row:>4} |");
        for i in 0..cols {
            line.push(' ');
            line.push(match segment_at(d, i, row) {
                Some(Color::Red) => '/',
                Some(Color::Blue) => '\\',
                None => '.',
            });
        }
        let _ = writeln!(out, "{line} | {:>3}", d.count(row));
        if marker == Some(row) {
            let _ = writeln!(
                out,
                "     +{}=+ <- lowest positive row {row}",
                "==".repeat(cols)
            );
        }
    }
    let _ = writeln!(out, "     +{}-+", "--".repeat(cols));
    let letters: String = d
        .word()
        .letters()
        .iter()
        .map(|l| format!(" {}", l.to_char(Default::default())))
        .collect();
    let _ = writeln!(out, "      {}", letters.trim_start());
}

fn svg_defs(out: &mut String, options: &RenderOptions) {
    out.push_str("<defs>\n");
    for (id, color) in [("head-red", &options.red), ("head-blue", &options.blue)] {
        let _ = writeln!(
            out,
            "<marker id=\"{id}\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"{}\"/></marker>",
            xml_escape(color)
        );
    }
    out.push_str("</defs>\n");
}

const CELL: usize = 24;
const LEFT: usize = 40;
const RIGHT: usize = 50;
const TOP: usize = 20;
const BOTTOM: usize = 30;

/// SVG fragment for one diagram, positioned at the origin.
struct DiagramSvg {
    body: String,
    width: usize,
    height: usize,
}

impl DiagramSvg {
    fn new(d: &PathDiagram, top: usize, options: &RenderOptions) -> Self {
        let cols = d.word().len();
        let rows = top + 1;
        let width = LEFT + cols * CELL + RIGHT;
        let height = TOP + rows * CELL + BOTTOM;
        let x = |col: usize| LEFT + col * CELL;
        let y = |level: usize| TOP + (rows - level) * CELL;
        let mut body = String::new();

        body.push_str("<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n");
        for c in 0..=cols {
            let _ = writeln!(
                body,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                x(c),
                y(0),
                x(c),
                y(rows)
            );
        }
        for level in 0..=rows {
            let _ = writeln!(
                body,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                x(0),
                y(level),
                x(cols),
                y(level)
            );
        }
        body.push_str("</g>\n");
        for level in 0..=rows {
            let _ = writeln!(
                body,
                "<text class=\"level\" x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{level}</text>",
                x(0) - 4,
                y(level) + 3
            );
        }
        for arrow in d.arrows() {
            let end = arrow.end_rank(d.pair());
            let cx0 = x(arrow.column - 1);
            let (class, dash, head) = match arrow.color {
                Color::Red => ("red", "", "head-red"),
                Color::Blue => ("blue", " stroke-dasharray=\"6,4\"", "head-blue"),
            };
            let _ = writeln!(
                body,
                "<line class=\"arrow {class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"{dash} marker-end=\"url(#{head})\"/>",
                cx0,
                y(arrow.start_rank as usize),
                cx0 + CELL,
                y(end as usize),
                xml_escape(options.stroke(arrow.color))
            );
        }
        for row in 0..rows {
            let _ = writeln!(
                body,
                "<text class=\"count\" x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>",
                x(cols) + 8,
                y(row) - CELL / 2 + 4,
                d.count(row)
            );
        }
        if let Some(row) = d.lowest_positive_row() {
            let _ = writeln!(
                body,
                "<line class=\"lowest-positive\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"4\"/>",
                x(0),
                y(row),
                x(cols),
                y(row),
                xml_escape(&options.marker)
            );
        }
        for (i, l) in d.word().letters().iter().enumerate() {
            let _ = writeln!(
                body,
                "<text class=\"letter\" x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
                x(i) + CELL / 2,
                y(0) + 18,
                l.to_char(Default::default())
            );
        }
        DiagramSvg {
            body,
            width,
            height,
        }
    }
}

pub fn render_trace(
    trace: &InversionTrace,
    word: &DyckWord,
    pair: CoprimePair,
    format: Format,
) -> Result<String> {
    render_trace_with(trace, word, pair, format, &RenderOptions::default())
}

/// Either one panel per rank snapshot or the final diagram with a box on
/// every vacated cell holding the number of the step that vacated it.
pub fn render_trace_with(
    trace: &InversionTrace,
    word: &DyckWord,
    pair: CoprimePair,
    format: Format,
    options: &RenderOptions,
) -> Result<String> {
    let snapshots = trace.snapshots()?;
    let diagrams = snapshots
        .iter()
        .map(|r| PathDiagram::build(word, r, pair, None))
        .collect::<Result<Vec<_>>>()?;
    let overlay = match options.layout {
        TraceLayout::Panels => false,
        TraceLayout::Overlay => true,
        TraceLayout::Auto => diagrams.len() > AUTO_PANEL_LIMIT,
    };
    if overlay {
        let boxes = vacated_cells(trace, &snapshots)?;
        let last = diagrams.last().expect("at least the initial snapshot");
        Ok(match format {
            Format::Ascii => overlay_ascii(trace, last, &boxes),
            Format::Svg => overlay_svg(trace, last, &boxes, options),
        })
    } else {
        Ok(match format {
            Format::Ascii => panels_ascii(trace, &diagrams),
            Format::Svg => panels_svg(trace, &diagrams, options),
        })
    }
}

fn trace_title(trace: &InversionTrace, word: &DyckWord) -> String {
    format!(
        "{} inversion of {word}: {} steps",
        trace.algorithm,
        trace.steps.len()
    )
}

fn panels_ascii(trace: &InversionTrace, diagrams: &[PathDiagram]) -> String {
    let top = diagrams.iter().map(top_row).max().unwrap_or(0);
    let mut out = trace_title(trace, diagrams[0].word());
    out.push('\n');
    for (k, d) in diagrams.iter().enumerate() {
        out.push('\n');
        match k {
            0 => out.push_str("== initial ==\n"),
            _ => {
                let s = &trace.steps[k - 1];
                let _ = writeln!(
                    out,
                    "== step {} (row {}, columns {:?}) ==",
                    s.step, s.worked_row, s.lifted_columns
                );
            }
        }
        let _ = writeln!(out, "{}", d.rank_sequence());
        diagram_ascii(d, top, &mut out);
    }
    out
}

fn panels_svg(trace: &InversionTrace, diagrams: &[PathDiagram], options: &RenderOptions) -> String {
    const GAP: usize = 20;
    const HEADER: usize = 20;
    let top = diagrams.iter().map(top_row).max().unwrap_or(0);
    let bodies: Vec<DiagramSvg> = diagrams
        .iter()
        .map(|d| DiagramSvg::new(d, top, options))
        .collect();
    let per_row = 4usize;
    let panel_w = bodies[0].width + GAP;
    let panel_h = bodies[0].height + HEADER + GAP;
    let grid_rows = bodies.len().div_ceil(per_row);
    let width = panel_w * per_row.min(bodies.len());
    let height = panel_h * grid_rows;
    let mut out = String::new();
    svg_open(&mut out, width, height);
    let _ = writeln!(
        out,
        "<title>{}</title>",
        xml_escape(&trace_title(trace, diagrams[0].word()))
    );
    svg_defs(&mut out, options);
    for (k, body) in bodies.iter().enumerate() {
        let (gx, gy) = ((k % per_row) * panel_w, (k / per_row) * panel_h);
        let _ = writeln!(
            out,
            "<g class=\"panel\" transform=\"translate({gx},{gy})\">"
        );
        let label = if k == 0 {
            "initial".to_string()
        } else {
            format!("step {k}")
        };
        let _ = writeln!(
            out,
            "<text class=\"panel-title\" x=\"{LEFT}\" y=\"14\" font-size=\"12\">{label}</text>"
        );
        let _ = writeln!(out, "<g transform=\"translate(0,{HEADER})\">");
        out.push_str(&body.body);
        out.push_str("</g>\n</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// (0-based column, vacated row, step number) for every unit lift.
fn vacated_cells(
    trace: &InversionTrace,
    snapshots: &[RankSequence],
) -> Result<Vec<(usize, usize, usize)>> {
    let mut boxes = Vec::new();
    for (k, step) in trace.steps.iter().enumerate() {
        let (before, after) = (snapshots[k].as_slice(), snapshots[k + 1].as_slice());
        for &column in &step.lifted_columns {
            let i = column.checked_sub(1).filter(|&i| i < before.len()).ok_or(
                Error::ColumnOutOfRange {
                    column,
                    len: before.len(),
                },
            )?;
            if after[i] != before[i] + 1 {
                return Err(Error::InvalidInput(format!(
                    "step {} lifts column {column} from {} to {}",
                    step.step, before[i], after[i]
                )));
            }
            boxes.push((i, before[i] as usize, step.step));
        }
    }
    Ok(boxes)
}

fn overlay_ascii(
    trace: &InversionTrace,
    last: &PathDiagram,
    boxes: &[(usize, usize, usize)],
) -> String {
    let cols = last.word().len();
    let top = top_row(last).max(boxes.iter().map(|b| b.1).max().unwrap_or(0));
    let digits = boxes
        .iter()
        .map(|b| b.2.to_string().len())
        .max()
        .unwrap_or(1);
    let width = digits + 2;
    let mut grid = vec![vec![String::new(); cols]; top + 1];
    for (row, cells) in grid.iter_mut().enumerate() {
        for (i, cell) in cells.iter_mut().enumerate() {
            let glyph = match segment_at(last, i, row) {
                Some(Color::Red) => "/",
                Some(Color::Blue) => "\\",
                None => ".",
            };
            *cell = format!("{glyph:^width$}");
        }
    }
    for &(i, row, step) in boxes {
        grid[row][i] = format!("[{step:>digits$}]");
    }
    let mut out = trace_title(trace, last.word());
    out.push('\n');
    let _ = writeln!(out, "final ranks {}", last.rank_sequence());
    for row in (0..=top).rev() {
        let _ = writeln!(out, "{row:>4} |{}|", grid[row].concat());
    }
    let _ = writeln!(out, "     +{}+", "-".repeat(cols * width));
    let letters: String = last
        .word()
        .letters()
        .iter()
        .map(|l| format!("{:^width$}", l.to_char(Default::default())))
        .collect();
    let _ = writeln!(out, "      {}", letters.trim_end());
    out
}

fn overlay_svg(
    trace: &InversionTrace,
    last: &PathDiagram,
    boxes: &[(usize, usize, usize)],
    options: &RenderOptions,
) -> String {
    let top = top_row(last).max(boxes.iter().map(|b| b.1).max().unwrap_or(0));
    let body = DiagramSvg::new(last, top, options);
    let rows = top + 1;
    let mut out = String::new();
    svg_open(&mut out, body.width, body.height);
    let _ = writeln!(
        out,
        "<title>{}</title>",
        xml_escape(&trace_title(trace, last.word()))
    );
    svg_defs(&mut out, options);
    out.push_str(&body.body);
    for &(i, row, step) in boxes {
        let (bx, by) = (LEFT + i * CELL, TOP + (rows - row - 1) * CELL);
        let _ = writeln!(
            out,
            "<rect class=\"box\" x=\"{bx}\" y=\"{by}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/><text class=\"box-label\" x=\"{}\" y=\"{}\" font-size=\"9\" text-anchor=\"middle\">{step}</text>",
            bx + CELL / 2,
            by + CELL / 2 + 3
        );
    }
    out.push_str("</svg>\n");
    out
}
