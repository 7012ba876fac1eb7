//! Command-line front end for the `ropelength` library.

pub mod curve_file;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use ropelength::spatial_index::tag_table;
use ropelength::{
    default_levels, thickness, Family, GenSpec, PolyCurve, SearchOptions, SearchReport,
    ThicknessTerm,
};
use serde::Serialize;
use thiserror::Error;

pub use curve_file::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Curve(#[from] ropelength::Error),
    #[error("curve is degenerate (thickness 0)")]
    Degenerate,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Degenerate => 2,
            _ => 1,
        }
    }
}

fn io_err(path: impl AsRef<Path>) -> impl FnOnce(io::Error) -> CliError {
    let path = path.as_ref().display().to_string();
    move |source| CliError::Io { path, source }
}

#[derive(Debug, Parser)]
#[command(
    name = "ropelength",
    version,
    about = "Thickness and ropelength of polygonal curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute minRad, shortest closest-approach chord, thickness and ropelength.
    Compute(ComputeArgs),
    /// Time default-depth and depth-1 searches over a range of sizes; CSV output.
    Bench(BenchArgs),
    /// Print the per-edge octal tag table sorted by tag.
    Tags(TagsArgs),
    /// Write a generated curve as a curve file.
    Gen(GenArgs),
}

/// Where the curve comes from: a file, or a generator.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Curve file (`-` for stdin).
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Generate the curve instead of reading it.
    #[arg(long = "gen", value_name = "FAMILY")]
    pub family: Option<Family>,
    /// Edge count for generated curves.
    #[arg(short, long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random-walk step length.
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
}

impl Source {
    fn label(&self) -> String {
        match (&self.family, &self.input) {
            (Some(f), _) => f.to_string(),
            (None, Some(p)) => p.display().to_string(),
            (None, None) => String::new(),
        }
    }

    pub fn load(&self) -> Result<PolyCurve, CliError> {
        if let Some(family) = self.family {
            return Ok(GenSpec {
                family,
                n: self.n,
                seed: self.seed,
                step: self.step,
            }
            .generate()?);
        }
        let path = self.input.as_deref().expect("clap requires input or --gen");
        read_curve(path)
    }
}

pub fn read_curve(path: &Path) -> Result<PolyCurve, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err(path))?;
        s
    } else {
        fs::read_to_string(path).map_err(io_err(path))?
    };
    curve_file::parse(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Octree depth (default ⌈¾ log₂ n⌉).
    #[arg(long, conflicts_with = "depth_1")]
    pub levels: Option<u32>,
    /// Single-box tree: check every nonadjacent pair.
    #[arg(long = "depth-1")]
    pub depth_1: bool,
    /// Relative tolerance for tangent-cone tests and ties.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Start the search cutoff at 2·minRad.
    #[arg(long)]
    pub seed_cutoff: bool,
    /// Search edges on all cores.
    #[arg(long)]
    pub parallel: bool,
}

impl SearchArgs {
    pub fn options(&self) -> Result<SearchOptions, CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tol must be positive, got {}",
                self.tol
            )));
        }
        if self.levels == Some(0) {
            return Err(CliError::Usage("--levels must be at least 1".into()));
        }
        Ok(SearchOptions {
            levels: if self.depth_1 { Some(1) } else { self.levels },
            tol: self.tol,
            seed_cutoff: self.seed_cutoff,
            report_all: false,
            parallel: self.parallel,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub search: SearchArgs,
    /// List every shortest chord.
    #[arg(long)]
    pub all_pocas: bool,
    /// List every local-minimum chord, not only the shortest.
    #[arg(long)]
    pub all_minima: bool,
    /// Print one CSV row (with header) instead of the text report.
    #[arg(long)]
    pub csv: bool,
    /// Exit with status 2 if the curve is degenerate.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    pub family: Family,
    /// Smallest edge count.
    #[arg(long, default_value_t = 64)]
    pub from: usize,
    /// Largest edge count; sizes double from `--from`.
    #[arg(long, default_value_t = 4096)]
    pub to: usize,
    /// Explicit comma-separated sizes, overriding `--from`/`--to`.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    /// Repetitions per cell (default: 100 if one run takes under 1 s, else 10).
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
    /// Depth for the octree variant (default ⌈¾ log₂ n⌉).
    #[arg(long)]
    pub levels: Option<u32>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Write CSV here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TagsArgs {
    #[command(flatten)]
    pub source: Source,
    /// Octree depth (default ⌈¾ log₂ n⌉).
    #[arg(long)]
    pub levels: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    pub family: Family,
    /// Edge count (ignored by the Hopf fixtures).
    #[arg(default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
    /// Output path (default stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// One CSV row of `bench` or `compute --csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub levels: u32,
    pub m: usize,
    pub edge_edge_checks: u64,
    pub box_ramp_checks: u64,
    pub box_distance_checks: u64,
    pub min_rad: f64,
    pub poca: f64,
    pub thickness: f64,
    pub ropelength: f64,
    /// Mean over repetitions.
    pub elapsed_seconds: f64,
    pub elapsed_min_seconds: f64,
    pub reps: usize,
}

pub const CSV_HEADER: &str = "family,n,levels,m,edge_edge_checks,box_ramp_checks,box_distance_checks,min_rad,poca,thickness,ropelength,elapsed_seconds,elapsed_min_seconds,reps";

impl BenchRow {
    pub fn from_report(family: &str, n: usize, r: &SearchReport, times: &[Duration]) -> Self {
        let secs: Vec<f64> = times.iter().map(Duration::as_secs_f64).collect();
        let mean = secs.iter().sum::<f64>() / secs.len().max(1) as f64;
        BenchRow {
            family: family.to_string(),
            n,
            levels: r.levels,
            m: r.capacity,
            edge_edge_checks: r.counters.edge_edge_checks,
            box_ramp_checks: r.counters.box_ramp_checks,
            box_distance_checks: r.counters.box_distance_checks,
            min_rad: r.min_rad,
            poca: r.poca_length,
            thickness: r.thickness,
            ropelength: r.ropelength,
            elapsed_seconds: mean,
            elapsed_min_seconds: secs.iter().copied().fold(f64::INFINITY, f64::min),
            reps: secs.len(),
        }
    }
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(true).from_writer(out)
}

fn write_rows<W: Write>(out: W, rows: &[BenchRow]) -> io::Result<()> {
    let mut w = csv_writer(out);
    for r in rows {
        w.serialize(r).map_err(io::Error::other)?;
    }
    w.flush()
}

/// Runs a parsed command, writing results to `out` and warnings to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let stdout = |e| CliError::Io {
        path: "<output>".into(),
        source: e,
    };
    match cli.command {
        Command::Compute(a) => compute(&a, out, err),
        Command::Bench(a) => bench(&a, out, err),
        Command::Tags(a) => {
            let curve = a.source.load()?;
            let levels = a
                .levels
                .unwrap_or_else(|| default_levels(curve.edge_count()));
            if levels == 0 {
                return Err(CliError::Usage("--levels must be at least 1".into()));
            }
            out.write_all(tag_table(&curve, levels).as_bytes())
                .map_err(stdout)
        }
        Command::Gen(a) => {
            let curve = GenSpec {
                family: a.family,
                n: a.n,
                seed: a.seed,
                step: a.step,
            }
            .generate()?;
            let text = curve_file::write(&curve);
            match &a.output {
                Some(p) => fs::write(p, text).map_err(io_err(p)),
                None => out.write_all(text.as_bytes()).map_err(stdout),
            }
        }
    }
}

fn term_name(t: ThicknessTerm) -> &'static str {
    match t {
        ThicknessTerm::MinRad => "minrad",
        ThicknessTerm::Poca => "poca",
        ThicknessTerm::Both => "both",
    }
}

fn compute(a: &ComputeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let curve = a.source.load()?;
    let opts = SearchOptions {
        report_all: a.all_minima,
        ..a.search.options()?
    };
    let r = thickness(&curve, &opts);
    let io = |e| CliError::Io {
        path: "<output>".into(),
        source: e,
    };
    if a.csv {
        let row = BenchRow::from_report(&a.source.label(), curve.edge_count(), &r, &[r.elapsed]);
        write_rows(&mut *out, &[row]).map_err(io)?;
    } else {
        write_report(out, &curve, &r, a.all_pocas || a.all_minima).map_err(io)?;
    }
    if r.is_degenerate() {
        writeln!(
            err,
            "warning: curve is degenerate (thickness 0); ropelength is undefined"
        )
        .map_err(io)?;
        if a.strict {
            return Err(CliError::Degenerate);
        }
    }
    Ok(())
}

fn write_report(
    out: &mut dyn Write,
    curve: &PolyCurve,
    r: &SearchReport,
    list: bool,
) -> io::Result<()> {
    writeln!(out, "edges                {}", curve.edge_count())?;
    writeln!(out, "components           {}", curve.components().len())?;
    writeln!(out, "levels               {}", r.levels)?;
    writeln!(out, "leaf_capacity        {}", r.capacity)?;
    writeln!(out, "min_rad              {}", r.min_rad)?;
    writeln!(out, "poca                 {}", r.poca_length)?;
    writeln!(out, "thickness            {}", r.thickness)?;
    writeln!(out, "limited_by           {}", term_name(r.limited_by()))?;
    writeln!(out, "length               {}", r.length)?;
    writeln!(out, "ropelength           {}", r.ropelength)?;
    writeln!(out, "edge_edge_checks     {}", r.counters.edge_edge_checks)?;
    writeln!(out, "box_ramp_checks      {}", r.counters.box_ramp_checks)?;
    writeln!(
        out,
        "box_distance_checks  {}",
        r.counters.box_distance_checks
    )?;
    writeln!(out, "elapsed_seconds      {}", r.elapsed.as_secs_f64())?;
    writeln!(
        out,
        "status               {}",
        if r.is_degenerate() {
            "degenerate"
        } else {
            "ok"
        }
    )?;
    writeln!(out, "pocas                {}", r.pocas.len())?;
    if list {
        for p in &r.pocas {
            writeln!(
                out,
                "  {} {} {} -- {} {} {} length {}",
                p.a.component, p.a.edge, p.a.t, p.b.component, p.b.edge, p.b.t, p.length
            )?;
        }
    }
    Ok(())
}

fn bench_sizes(a: &BenchArgs) -> Result<Vec<usize>, CliError> {
    if !a.sizes.is_empty() {
        return Ok(a.sizes.clone());
    }
    if a.from == 0 || a.from > a.to {
        return Err(CliError::Usage(format!(
            "bad size range {}..{}",
            a.from, a.to
        )));
    }
    let mut sizes = Vec::new();
    let mut n = a.from;
    while n <= a.to {
        sizes.push(n);
        n *= 2;
    }
    Ok(sizes)
}

/// Times `thickness` with the repetition policy: one probe run, then 100
/// runs if it took under a second, else 10.
fn time_cell(
    curve: &PolyCurve,
    opts: &SearchOptions,
    reps: Option<usize>,
) -> (SearchReport, Vec<Duration>) {
    let timed = || {
        let t = Instant::now();
        let r = thickness(curve, opts);
        (r, t.elapsed())
    };
    let (first, probe) = timed();
    let reps = reps.unwrap_or(if probe < Duration::from_secs(1) {
        100
    } else {
        10
    });
    let mut times = vec![probe];
    while times.len() < reps.max(1) {
        times.push(timed().1);
    }
    (first, times)
}

fn bench(a: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let io = |e| CliError::Io {
        path: "<output>".into(),
        source: e,
    };
    let sizes = bench_sizes(a)?;
    let mut rows = Vec::new();
    let mut crossover = None;
    for &n in &sizes {
        let curve = GenSpec {
            family: a.family,
            n,
            seed: a.seed,
            step: a.step,
        }
        .generate()?;
        let tree = SearchOptions {
            levels: a.levels,
            tol: a.tol,
            ..SearchOptions::default()
        };
        let flat = SearchOptions {
            levels: Some(1),
            ..tree
        };
        let (rt, tt) = time_cell(&curve, &tree, a.reps);
        let (rf, tf) = time_cell(&curve, &flat, a.reps);
        let row_t = BenchRow::from_report(a.family.name(), curve.edge_count(), &rt, &tt);
        let row_f = BenchRow::from_report(a.family.name(), curve.edge_count(), &rf, &tf);
        if crossover.is_none() && row_t.elapsed_seconds < row_f.elapsed_seconds {
            crossover = Some(curve.edge_count());
        }
        rows.push(row_t);
        rows.push(row_f);
    }
    match &a.output {
        Some(p) => {
            let f = fs::File::create(p).map_err(io_err(p))?;
            write_rows(f, &rows).map_err(io_err(p))?;
        }
        None => write_rows(&mut *out, &rows).map_err(io)?,
    }
    match crossover {
        Some(n) => writeln!(
            err,
            "crossover: default depth is faster than depth 1 from n = {n}"
        ),
        None => writeln!(err, "crossover: depth 1 was faster at every size"),
    }
    .map_err(io)
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
