//! Command-line front end: semigroup reports, tree enumeration, tableau
//! rendering, exhaustive verification scans, and curve analysis.
//!
//! Exit codes: 0 on success, 1 when a scan found violations and
//! `--fail-on-violation` was given, 2 on malformed input or usage.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use semicurve::curve::RationalCurve;
use semicurve::io;
use semicurve::numset::NumericalSemigroup;
use semicurve::tableau::Tableau;
use semicurve::tree;
use semicurve::verify;
use semicurve::Config;

#[derive(Debug, Parser)]
#[command(
    name = "semicurve",
    version,
    about = "Numerical semigroup weights, dualizing sets, and value-semigroup analysis of singular rational curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Walk the semigroup tree.
    Tree {
        #[command(subcommand)]
        cmd: TreeCmd,
    },
    /// Report on a single numerical semigroup.
    Semigroup {
        #[command(subcommand)]
        cmd: SemigroupCmd,
    },
    /// Lattice-path diagrams of a semigroup and its dual.
    Tableau {
        #[command(subcommand)]
        cmd: TableauCmd,
    },
    /// Exhaustive scans of the weight statements.
    Verify {
        #[command(subcommand)]
        scan: Scan,
        #[command(flatten)]
        run: RunOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Exit with status 1 if the scan recorded any violation.
        #[arg(long, global = true)]
        fail_on_violation: bool,
    },
    /// Analyze a parametrized rational curve from a file.
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct OutputOpts {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to this path instead of stdout.
    #[arg(long, value_name = "PATH", global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunOpts {
    /// Worker threads; 0 uses the default pool. Falls back to the
    /// SEMICURVE_THREADS environment variable.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized pencil search pool.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

impl RunOpts {
    fn config(&self) -> Config {
        let threads = self
            .threads
            .or_else(|| {
                std::env::var("SEMICURVE_THREADS").ok().and_then(|v| v.parse().ok())
            })
            .unwrap_or(0);
        let mut config = Config { threads, ..Config::default() };
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        config
    }
}

#[derive(Debug, Subcommand)]
enum TreeCmd {
    /// Count semigroups of every genus up to a bound.
    Count {
        #[arg(long)]
        max_genus: u64,
        #[command(flatten)]
        run: RunOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Emit a weight report for every semigroup of one genus.
    Dump {
        #[arg(long)]
        genus: u64,
        #[command(flatten)]
        run: RunOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Debug, Args)]
struct SemigroupSource {
    /// Minimal generators, comma-separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with_all = ["gaps", "file"])]
    gens: Option<Vec<u64>>,
    /// Gaps, comma-separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "file")]
    gaps: Option<Vec<u64>>,
    /// JSON file with {"generators": [...]} or {"gaps": [...]}.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl SemigroupSource {
    fn load(&self) -> Result<NumericalSemigroup> {
        match (&self.gens, &self.gaps, &self.file) {
            (Some(gens), None, None) => Ok(NumericalSemigroup::from_generators(gens)?),
            (None, Some(gaps), None) => Ok(NumericalSemigroup::from_gaps(gaps)?),
            (None, None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(io::semigroup_from_json(&text)?)
            }
            _ => bail!("give exactly one of --gens, --gaps, --file"),
        }
    }
}

#[derive(Debug, Subcommand)]
enum SemigroupCmd {
    /// Weights, dual set, pole orders, and classification flags.
    Info {
        #[command(flatten)]
        source: SemigroupSource,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Debug, Subcommand)]
enum TableauCmd {
    /// Text-art diagrams of the semigroup and its dual, plus the
    /// partitions as JSON.
    Render {
        #[command(flatten)]
        source: SemigroupSource,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Debug, Subcommand)]
enum Scan {
    /// Weight identity of the dual set over all semigroups of genus
    /// <= max-genus.
    LemmaK {
        #[arg(long, default_value_t = 14)]
        max_genus: u64,
    },
    /// Maximal dual weight at one genus.
    MaxWeight {
        #[arg(long)]
        genus: u64,
    },
    /// Maximal dual weight among non-hyperelliptic semigroups at one
    /// genus (scanned from genus 10 on).
    Submaximal {
        #[arg(long)]
        genus: u64,
    },
    /// Both directions of the dual-weight window for kappa-hyperelliptic
    /// semigroups, per genus.
    Conjecture {
        #[arg(long)]
        kappa: u64,
        /// Smallest genus to scan; defaults to 2*kappa.
        #[arg(long)]
        genus: Option<u64>,
        #[arg(long, default_value_t = 16)]
        max_genus: u64,
    },
    /// Both directions of the classical weight window, per genus.
    Torres {
        #[arg(long)]
        kappa: u64,
        /// Smallest genus to scan; defaults to 2*kappa.
        #[arg(long)]
        genus: Option<u64>,
        #[arg(long, default_value_t = 16)]
        max_genus: u64,
    },
    /// Extremes of the dual weight over the kappa-hyperelliptic class
    /// under the odd-member hypothesis, at one genus.
    KappaBounds {
        #[arg(long)]
        kappa: u64,
        #[arg(long)]
        genus: u64,
    },
    /// Non-hyperelliptic symmetric semigroups are leaves of the tree.
    LeafLaw {
        #[arg(long, default_value_t = 12)]
        max_genus: u64,
    },
}

#[derive(Debug, Subcommand)]
enum CurveCmd {
    /// Value semigroup, weights, classification, and quadric-hull
    /// verdict of the parametrized curve.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        run: RunOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Certified gonality bracket with a witness pencil.
    Gonality {
        file: PathBuf,
        #[command(flatten)]
        run: RunOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Rational-normal-scroll codimension bound from the first pencil.
    Scroll {
        file: PathBuf,
        #[command(flatten)]
        run: RunOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Decide whether the curve carries a degree-2 pencil.
    Hyperelliptic {
        file: PathBuf,
        #[command(flatten)]
        run: RunOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Quadric-hull cover analysis for a chosen parameter u = f/h.
    Bielliptic {
        file: PathBuf,
        /// Cover parameter as two comma-separated polynomials "f,h".
        #[arg(long, value_name = "F,H")]
        u: Option<String>,
        #[command(flatten)]
        run: RunOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(1),
        Ok(false) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether to exit with status 1 (violations + --fail-on-violation).
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Tree { cmd } => tree_cmd(cmd),
        Command::Semigroup { cmd } => semigroup_cmd(cmd),
        Command::Tableau { cmd } => tableau_cmd(cmd),
        Command::Verify { scan, run, output, fail_on_violation } => {
            verify_cmd(scan, &run, &output, fail_on_violation)
        }
        Command::Curve { cmd } => curve_cmd(cmd),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn tree_cmd(cmd: TreeCmd) -> Result<bool> {
    match cmd {
        TreeCmd::Count { max_genus, run, output } => {
            let counts = tree::count_by_genus(max_genus, run.config().threads);
            let text = match output.format {
                Format::Json => io::to_json_pretty(&serde_json::json!({
                    "max_genus": max_genus,
                    "counts": counts,
                    "total": counts.iter().sum::<u64>(),
                })),
                Format::Csv => {
                    let mut s = String::from("# format: semicurve.counts.v1\ngenus,count\n");
                    for (g, n) in counts.iter().enumerate() {
                        writeln!(s, "{g},{n}").unwrap();
                    }
                    s
                }
            };
            emit(&text, &output.out)?;
        }
        TreeCmd::Dump { genus, run, output } => {
            let reports: Vec<_> = tree::enumerate_genus(genus, run.config().threads)
                .iter()
                .map(|s| s.report())
                .collect();
            let text = match output.format {
                Format::Json => io::to_json_pretty(&reports),
                Format::Csv => io::weight_reports_csv(&reports),
            };
            emit(&text, &output.out)?;
        }
    }
    Ok(false)
}

fn semigroup_cmd(cmd: SemigroupCmd) -> Result<bool> {
    match cmd {
        SemigroupCmd::Info { source, output } => {
            let report = source.load()?.report();
            let text = match output.format {
                Format::Json => io::to_json_pretty(&report),
                Format::Csv => io::weight_reports_csv(std::slice::from_ref(&report)),
            };
            emit(&text, &output.out)?;
        }
    }
    Ok(false)
}

fn tableau_cmd(cmd: TableauCmd) -> Result<bool> {
    match cmd {
        TableauCmd::Render { source, output } => {
            let s = source.load()?;
            let t_s = Tableau::of(s.set());
            let t_k = Tableau::of(&s.dual_set());
            let mut text = String::new();
            writeln!(
                text,
                "S: genus {}, weight {}, grid {}x{}",
                s.genus(),
                t_s.boxes(),
                t_s.grid().0,
                t_s.grid().1
            )
            .unwrap();
            writeln!(text, "{}", t_s.render()).unwrap();
            writeln!(
                text,
                "K: genus {}, weight {}, grid {}x{}",
                s.dual_set().genus(),
                t_k.boxes(),
                t_k.grid().0,
                t_k.grid().1
            )
            .unwrap();
            writeln!(text, "{}", t_k.render()).unwrap();
            writeln!(
                text,
                "{}",
                serde_json::json!({
                    "rows": t_s.rows(),
                    "boxes": t_s.boxes(),
                    "dual_rows": t_k.rows(),
                    "dual_boxes": t_k.boxes(),
                })
            )
            .unwrap();
            emit(&text, &output.out)?;
        }
    }
    Ok(false)
}

fn verify_cmd(
    scan: Scan,
    run: &RunOpts,
    output: &OutputOpts,
    fail_on_violation: bool,
) -> Result<bool> {
    let config = run.config();
    let report = match scan {
        Scan::LemmaK { max_genus } => verify::scan_lemma_weight_relation(max_genus, &config),
        Scan::MaxWeight { genus } => verify::scan_max_weight(genus, &config),
        Scan::Submaximal { genus } => verify::scan_submaximal(genus, &config),
        Scan::Conjecture { kappa, genus, max_genus } => {
            verify::scan_conjecture(kappa, genus.unwrap_or(2 * kappa), max_genus, &config)
        }
        Scan::Torres { kappa, genus, max_genus } => {
            verify::scan_torres(kappa, genus.unwrap_or(2 * kappa), max_genus, &config)
        }
        Scan::KappaBounds { kappa, genus } => {
            verify::scan_kappa_weight_bounds(kappa, genus, &config)
        }
        Scan::LeafLaw { max_genus } => verify::scan_leaf_law(max_genus, &config),
    };
    let text = match output.format {
        Format::Json => io::to_json_pretty(&report),
        Format::Csv => io::scan_report_csv(&report),
    };
    emit(&text, &output.out)?;
    Ok(fail_on_violation && report.violated > 0)
}

fn load_curve(path: &Path, config: &Config) -> Result<RationalCurve> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let tuple = io::curve_from_str(&text, io::CurveFileFormat::from_path(path))?;
    Ok(RationalCurve::new(&tuple, config)?)
}

fn curve_json_only(format: Format) -> Result<()> {
    if format == Format::Csv {
        bail!("curve reports have no CSV form; use --format json");
    }
    Ok(())
}

fn curve_cmd(cmd: CurveCmd) -> Result<bool> {
    match cmd {
        CurveCmd::Analyze { file, run, output } => {
            curve_json_only(output.format)?;
            let config = run.config();
            let curve = load_curve(&file, &config)?;
            let analysis = curve.analyze();
            let hull = match curve.quadric_hull(None) {
                Ok(q) => io::quadric_hull_json(&q),
                Err(e) => serde_json::json!({ "error": e.to_string() }),
            };
            let text = io::to_json_pretty(&serde_json::json!({
                "valuations": analysis.valuations,
                "order": analysis.order,
                "semigroup": analysis.report,
                "quadric_hull": hull,
            }));
            emit(&text, &output.out)?;
        }
        CurveCmd::Gonality { file, run, output } => {
            curve_json_only(output.format)?;
            let config = run.config();
            let curve = load_curve(&file, &config)?;
            let bounds = curve.gonality(&config)?;
            emit(&io::to_json_pretty(&io::gonality_json(&bounds)), &output.out)?;
        }
        CurveCmd::Scroll { file, run, output } => {
            curve_json_only(output.format)?;
            let curve = load_curve(&file, &run.config())?;
            let bound = curve.scroll_bound()?;
            emit(&io::to_json_pretty(&io::scroll_bound_json(&bound)), &output.out)?;
        }
        CurveCmd::Hyperelliptic { file, run, output } => {
            curve_json_only(output.format)?;
            let curve = load_curve(&file, &run.config())?;
            let decision = curve.hyperelliptic()?;
            emit(&io::to_json_pretty(&io::hyperelliptic_json(&decision)), &output.out)?;
        }
        CurveCmd::Bielliptic { file, u, run, output } => {
            curve_json_only(output.format)?;
            let curve = load_curve(&file, &run.config())?;
            let report = match &u {
                Some(pair) => {
                    let (f, h) = pair
                        .split_once(',')
                        .context("--u takes two comma-separated polynomials, like \"t^2,1+t^3\"")?;
                    let f = io::poly_from_str(f)?;
                    let h = io::poly_from_str(h)?;
                    curve.quadric_hull(Some((&f, &h)))?
                }
                None => curve.quadric_hull(None)?,
            };
            emit(&io::to_json_pretty(&io::quadric_hull_json(&report)), &output.out)?;
        }
    }
    Ok(false)
}
