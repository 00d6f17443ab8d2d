//! `helix-steiner`: command-line access to the helix Steiner-ratio toolkit.
//!
//! Every subcommand has a natural format (CSV for tables, JSON for single
//! records). In CSV mode the table goes to `--output` (or stdout) and any
//! side record goes as JSON to `--summary` (or stderr). In JSON mode one
//! object carries everything.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use helix_steiner::helix::{helix_points, union_sequence, HelixParams};
use helix_steiner::optimize::{
    contour, fst_boundary, minimize, scan, Axis, MinimumReport, Polyline, Quantity, ScanOptions,
};
use helix_steiner::spanning::{mst_oracle, spanning_length_closed};
use helix_steiner::srf::SrfSample;
use helix_steiner::steiner::{finite_steiner_ratio, relax_fixed_topology, sausage_length_closed, RelaxOptions};
use helix_steiner::{verify, TreeEmbedding};

#[derive(Parser, Debug)]
#[command(name = "helix-steiner", version, about = "Steiner ratio computations for points on a helix")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// In CSV mode, write the JSON side record here instead of stderr.
    #[arg(long, global = true)]
    summary: Option<PathBuf>,

    /// Read ω values and ranges in degrees.
    #[arg(long, global = true)]
    degrees: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Config {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    omega: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
}

#[derive(Args, Debug)]
struct Window {
    /// ω range LO:HI:STEPS, both ends included.
    #[arg(long)]
    omega: Axis,
    /// α range LO:HI:STEPS, both ends included.
    #[arg(long)]
    alpha: Axis,
}

#[derive(Args, Debug)]
struct Functional {
    /// rho, rho1, h, phi or cos_theta_K.
    #[arg(long)]
    quantity: Quantity,
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda: f64,
    /// Drop points where consecutive-point edges cannot carry a full Steiner tree.
    #[arg(long)]
    fst_restrict: bool,
}

impl Functional {
    fn options(&self) -> ScanOptions {
        ScanOptions { k_max: self.k_max, lambda: self.lambda, fst_restrict: self.fst_restrict }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All ratio functionals at one (ω, α).
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
    },
    /// Helix points, optionally with skip-k subsequence membership.
    Points {
        #[command(flatten)]
        config: Config,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact minimum spanning tree and the closed-form skip-k spanning lengths.
    Mst {
        #[command(flatten)]
        config: Config,
    },
    /// Relaxed sausage Steiner tree and the finite Steiner ratio.
    Smith {
        #[command(flatten)]
        config: Config,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
    /// A functional on a grid, one row per node.
    Scan {
        #[command(flatten)]
        functional: Functional,
        #[command(flatten)]
        window: Window,
    },
    /// Grid scan plus simplex refinement.
    Minimize {
        #[command(flatten)]
        functional: Functional,
        #[command(flatten)]
        window: Window,
    },
    /// Level curves of a functional.
    Contour {
        #[command(flatten)]
        functional: Functional,
        #[command(flatten)]
        window: Window,
        /// Comma-separated levels.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        levels: Vec<f64>,
    },
    /// Curve where skip-k contiguous edges meet at exactly 120°.
    FstBoundary {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        window: Window,
    },
    /// Run the built-in acceptance checks.
    Verify {
        /// Smaller samples and grids.
        #[arg(long)]
        fast: bool,
    },
}

/// What a subcommand produced.
struct Report {
    natural: Format,
    /// Table for CSV mode.
    csv: String,
    /// Side record for CSV mode.
    side: Option<Value>,
    /// Everything, for JSON mode.
    json: Value,
}

enum Failure {
    Usage(String),
    Verify,
    Io(io::Error),
}

impl From<helix_steiner::Error> for Failure {
    fn from(e: helix_steiner::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let omega = |w: f64| if cli.degrees { w.to_radians() } else { w };
    let window = |w: &Window| -> Result<(Axis, Axis), Failure> {
        let o = if cli.degrees {
            Axis::new(w.omega.lo.to_radians(), w.omega.hi.to_radians(), w.omega.steps)?
        } else {
            w.omega
        };
        Ok((o, w.alpha))
    };
    let params = |c: &Config| HelixParams::new(omega(c.omega), c.alpha, c.n);

    let report = match &cli.command {
        Command::Eval { omega: w, alpha, k_max, lambda } => eval(omega(*w), *alpha, *k_max, *lambda)?,
        Command::Points { config, k } => points(&params(config)?, *k)?,
        Command::Mst { config } => mst(&params(config)?)?,
        Command::Smith { config, tol, max_iter } => {
            if tol.is_nan() || *tol <= 0.0 {
                return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
            }
            smith(&params(config)?, RelaxOptions { max_iter: *max_iter, tol: *tol })?
        }
        Command::Scan { functional, window: w } => {
            let (o, a) = window(w)?;
            scan_report(functional, &o, &a)?
        }
        Command::Minimize { functional, window: w } => {
            let (o, a) = window(w)?;
            minimum_report(&minimize(functional.quantity, &o, &a, &functional.options())?)
        }
        Command::Contour { functional, window: w, levels } => {
            let (o, a) = window(w)?;
            let grid = scan(functional.quantity, &o, &a, &functional.options())?;
            polylines(&contour(&grid, levels))
        }
        Command::FstBoundary { k, window: w } => {
            let (o, a) = window(w)?;
            if *k == 0 {
                return Err(Failure::Usage("--k must be at least 1".into()));
            }
            polylines(&fst_boundary(*k, &o, &a)?)
        }
        Command::Verify { fast } => return run_verify(*fast),
    };
    emit(cli, report)
}

fn emit(cli: &Cli, report: Report) -> Result<(), Failure> {
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    match cli.format.unwrap_or(report.natural) {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("serialisable"))?,
        Format::Csv => {
            out.write_all(report.csv.as_bytes())?;
            if let Some(side) = report.side {
                let text = serde_json::to_string_pretty(&side).expect("serialisable");
                match &cli.summary {
                    Some(path) => writeln!(File::create(path)?, "{text}")?,
                    None => eprintln!("{text}"),
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn eval(omega: f64, alpha: f64, k_max: usize, lambda: Option<f64>) -> Result<Report, Failure> {
    if k_max == 0 {
        return Err(Failure::Usage("--k-max must be at least 1".into()));
    }
    let sample = SrfSample::evaluate(omega, alpha, k_max, lambda)?;
    Ok(Report {
        natural: Format::Json,
        csv: format!("{}\n{}\n", SrfSample::csv_header(k_max, lambda.is_some()), sample.csv_row()),
        side: None,
        json: serde_json::to_value(&sample).expect("serialisable"),
    })
}

fn points(params: &HelixParams, k: Option<usize>) -> Result<Report, Failure> {
    let pts = helix_points(params);
    let union = k.map(|k| union_sequence(params, k)).transpose()?;
    let membership = union.as_ref().map(|u| u.membership());
    let mut csv = String::from(if membership.is_some() { "i,x,y,z,j\n" } else { "i,x,y,z\n" });
    let mut rows = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        csv.push_str(&format!("{i},{},{},{}", p.x, p.y, p.z));
        let mut row = json!({ "i": i, "x": p.x, "y": p.y, "z": p.z });
        if let Some(m) = &membership {
            csv.push_str(&format!(",{}", m[i]));
            row["j"] = json!(m[i]);
        }
        csv.push('\n');
        rows.push(row);
    }
    let side = union.as_ref().map(|u| json!({ "k": u.k, "connectors": u.connectors }));
    let mut all = json!({ "omega": params.omega(), "alpha": params.alpha(), "n": params.n(), "points": rows });
    if let Some(s) = &side {
        all["k"] = s["k"].clone();
        all["connectors"] = s["connectors"].clone();
    }
    Ok(Report { natural: Format::Csv, csv, side, json: all })
}

fn edges_csv(tree: &TreeEmbedding) -> String {
    let mut buf = Vec::new();
    tree.write_edges_csv(&mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("ascii")
}

fn edges_json(tree: &TreeEmbedding) -> Value {
    tree.edges
        .iter()
        .map(|&e| json!({ "a": e.0.to_string(), "b": e.1.to_string(), "length": tree.edge_length(e) }))
        .collect()
}

fn mst(params: &HelixParams) -> Result<Report, Failure> {
    let tree = mst_oracle(&helix_points(params))?;
    let k_top = (params.n() - 1).min(8);
    let closed: Vec<Value> = (1..=k_top)
        .map(|k| spanning_length_closed(params, k).map(|len| json!({ "k": k, "length": len })))
        .collect::<Result<_, _>>()?;
    let side = json!({
        "omega": params.omega(),
        "alpha": params.alpha(),
        "n": params.n(),
        "mst_length": tree.total_length,
        "closed_form": closed,
    });
    let mut all = side.clone();
    all["edges"] = edges_json(&tree);
    Ok(Report { natural: Format::Csv, csv: edges_csv(&tree), side: Some(side), json: all })
}

fn smith(params: &HelixParams, options: RelaxOptions) -> Result<Report, Failure> {
    let report = relax_fixed_topology(params, options)?;
    let ratio = finite_steiner_ratio(params, options)?;
    let mut side = serde_json::to_value(&report).expect("serialisable");
    side["finite_steiner_ratio"] = json!(ratio);
    side["converged"] = json!(report.converged(options.tol));
    // The closed form only exists when the Steiner helix fits inside.
    side["closed_form_length"] = sausage_length_closed(params).map(|v| json!(v)).unwrap_or(Value::Null);
    let mut all = side.clone();
    all["edges"] = edges_json(&report.embedding);
    Ok(Report { natural: Format::Json, csv: edges_csv(&report.embedding), side: Some(side), json: all })
}

fn scan_report(functional: &Functional, omega: &Axis, alpha: &Axis) -> Result<Report, Failure> {
    let grid = scan(functional.quantity, omega, alpha, &functional.options())?;
    let mut buf = Vec::new();
    grid.write_csv(&mut buf)?;
    Ok(Report {
        natural: Format::Csv,
        csv: String::from_utf8(buf).expect("ascii"),
        side: None,
        json: serde_json::to_value(&grid).expect("serialisable"),
    })
}

fn minimum_report(m: &MinimumReport) -> Report {
    let csv = format!(
        "quantity,omega,alpha,value,refined,restricted,grid_omega_index,grid_alpha_index,grid_value\n{},{},{},{},{},{},{},{},{}\n",
        m.quantity, m.omega, m.alpha, m.value, m.refined, m.restricted, m.grid_cell.0, m.grid_cell.1, m.grid_value
    );
    Report { natural: Format::Json, csv, side: None, json: serde_json::to_value(m).expect("serialisable") }
}

fn polylines(lines: &[Polyline]) -> Report {
    let mut csv = String::from("curve_id,level,closed,omega,alpha\n");
    for (id, line) in lines.iter().enumerate() {
        for &(w, a) in &line.points {
            csv.push_str(&format!("{id},{},{},{w},{a}\n", line.level, line.closed));
        }
    }
    Report { natural: Format::Csv, csv, side: None, json: json!({ "polylines": lines }) }
}

fn run_verify(fast: bool) -> Result<(), Failure> {
    let results = verify::run_all(fast);
    let mut out = io::stdout().lock();
    for r in &results {
        writeln!(out, "{}", r.line())?;
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    writeln!(out, "{} passed, {failed} failed", results.len() - failed)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
