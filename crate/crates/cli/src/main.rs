//! `spectile`: verdicts on cube spectral/tiling pairs and finite-group measure pairs.
//!
//! Exit status: 0 positive verdict, 1 negative verdict, 2 input error,
//! 3 work budget exceeded.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use spectile::battery::{run_all, symmetry_verdicts, uncertainty_trials, TrialSummary};
use spectile::lca::{is_spectral_pair_measures, is_tiling_pair_measures, Measure};
use spectile::linear::Rational;
use spectile::lowdim::{build, recognize, CatalogForm, FormSpec, Recognition};
use spectile::periodic::{classify_pair, PackingWitness, PairStatus, PeriodicSet, DEFAULT_WORK_CAP};
use spectile::svg::emit_tiling_svg;
use spectile::tiling::{rasterized_tiling_check, GridSummary};
use spectile::Error;

const MIN_WORK_CAP: u64 = 10_000;

#[derive(Parser, Debug)]
#[command(name = "spectile", version, about = "Spectral and tiling verdicts for periodic cube packings and finite-group measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON input file; `-` reads standard input
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Seed for randomized commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Work budget for exact checks (at least 10000)
    #[arg(long, global = true, default_value_t = DEFAULT_WORK_CAP, value_parser = parse_work_cap)]
    work_cap: u64,
    /// Output format; `render` defaults to svg, everything else to text
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a periodic set and cross-check with the rasterized tiling oracle
    Check,
    /// Build a periodic set from a catalog form
    Construct,
    /// Write a verified spectral/tiling periodic set as a catalog form
    Recognize,
    /// Draw a planar periodic set as SVG
    Render {
        /// Lattice translates per side, `k ∈ [−window, window]²`
        #[arg(long, default_value_t = 2)]
        window: u32,
    },
    /// Spectral and tiling verdicts for a measure pair `{"mu": …, "nu": …}`
    LcaCheck,
    /// Randomized uncertainty-principle trials, on the input pair if given
    Uncertainty {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Run the full acceptance battery
    Suite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

fn parse_work_cap(s: &str) -> Result<u64, String> {
    let cap: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if cap < MIN_WORK_CAP {
        return Err(format!("must be at least {MIN_WORK_CAP}"));
    }
    Ok(cap)
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Rendered report plus the verdict it carries.
struct Outcome {
    positive: bool,
    body: String,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    let path = path.ok_or_else(|| Failure::Input("this command needs --input".into()))?;
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("malformed input: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.body);
            ExitCode::from(if outcome.positive { 0 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let format = match (&cli.command, cli.format) {
        (Command::Render { .. }, None) => Format::Svg,
        (_, None) => Format::Text,
        (Command::Render { .. }, Some(f)) => f,
        (_, Some(Format::Svg)) => {
            return Err(Failure::Input("--format svg only applies to render".into()))
        }
        (_, Some(f)) => f,
    };
    let json = format == Format::Json;
    match &cli.command {
        Command::Check => check(&parse(&read_input(cli.input.as_ref())?)?, cli.work_cap, json),
        Command::Construct => construct(&parse(&read_input(cli.input.as_ref())?)?, json),
        Command::Recognize => {
            recognize_cmd(&parse(&read_input(cli.input.as_ref())?)?, cli.work_cap, json)
        }
        Command::Render { window } => {
            render(&parse(&read_input(cli.input.as_ref())?)?, *window, format)
        }
        Command::LcaCheck => lca_check(&parse(&read_input(cli.input.as_ref())?)?, json),
        Command::Uncertainty { trials } => {
            let pair: Option<MeasurePair> = match &cli.input {
                Some(path) => Some(parse(&read_input(Some(path))?)?),
                None => None,
            };
            uncertainty(pair.as_ref(), *trials, cli.seed, json)
        }
        Command::Suite => suite(cli.seed, json),
    }
}

#[derive(Serialize)]
struct CheckReport {
    status: PairStatus,
    spectral: bool,
    tiling: bool,
    oracles_agree: bool,
    density: Rational,
    det: Rational,
    offset_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<PackingWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_replays: Option<bool>,
    raster: GridSummary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
}

fn check(ps: &PeriodicSet, work_cap: u64, json: bool) -> Result<Outcome, Failure> {
    let verdict = classify_pair(ps, work_cap)?;
    let (tiling, grid) = rasterized_tiling_check(ps, work_cap)?;
    let spectral = verdict.is_spectral();
    let report = CheckReport {
        status: verdict.status,
        spectral,
        tiling,
        oracles_agree: spectral == tiling,
        density: verdict.density,
        det: verdict.det,
        offset_count: verdict.offset_count,
        witness_replays: verdict.witness.as_ref().map(|w| w.replays_against(ps.lattice())),
        witness: verdict.witness,
        raster: grid.summary(),
        warnings: verdict.warnings,
    };
    if !report.oracles_agree {
        eprintln!("warning: exact classification and rasterized tiling disagree");
    }
    let body = if json {
        to_json(&report)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "status: {:?}", report.status);
        let _ = writeln!(
            s,
            "density: {} ({} offsets, |det R| = {})",
            report.density, report.offset_count, report.det
        );
        let r = &report.raster;
        let _ = writeln!(
            s,
            "raster: {} (grid 1/{}, {} cells over {} classes, {} uncovered, {} overlapped)",
            if tiling { "tiling" } else { "not a tiling" },
            r.q,
            r.cell_count,
            r.group_order,
            r.uncovered,
            r.overlapped
        );
        if let Some(w) = &report.witness {
            let k: Vec<String> = w.k.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                s,
                "witness: delta = {} from l = {}, l' = {}; k = ({}) gives R·k + delta = {}",
                w.delta,
                w.l,
                w.l_prime,
                k.join(", "),
                w.point
            );
        }
        for warning in &report.warnings {
            let _ = writeln!(s, "warning: {warning}");
        }
        s
    };
    Ok(Outcome {
        positive: spectral && tiling,
        body,
    })
}

fn construct(spec: &FormSpec, json: bool) -> Result<Outcome, Failure> {
    let ps = build(spec)?;
    let body = if json {
        to_json(&ps)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "dim: {}", ps.dim());
        let _ = writeln!(s, "R: {:?}", ps.lattice());
        let _ = writeln!(s, "offsets ({}):", ps.offsets().len());
        for l in ps.offsets() {
            let _ = writeln!(s, "  {l}");
        }
        s
    };
    Ok(Outcome {
        positive: true,
        body,
    })
}

#[derive(Serialize)]
struct NotRecognized {
    recognized: bool,
    reason: String,
}

fn recognize_cmd(ps: &PeriodicSet, work_cap: u64, json: bool) -> Result<Outcome, Failure> {
    let rec: Recognition = match recognize(ps, work_cap) {
        Ok(rec) => rec,
        Err(Error::NotSpectral) => {
            let reason = Error::NotSpectral.to_string();
            let body = if json {
                to_json(&NotRecognized {
                    recognized: false,
                    reason,
                })
            } else {
                format!("not recognized: {reason}\n")
            };
            return Ok(Outcome {
                positive: false,
                body,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let positive = !matches!(rec.form, CatalogForm::NotCatalogForm);
    let body = if json {
        to_json(&rec)
    } else {
        let form = serde_json::to_string(&rec.form).expect("forms serialize");
        format!(
            "form: {form}\npermutation: {:?}\ntranslation: {}\nalternatives: {:?}\n",
            rec.permutation, rec.translation, rec.alternatives
        )
    };
    Ok(Outcome { positive, body })
}

#[derive(Serialize)]
struct RenderReport<'a> {
    window: u32,
    svg: &'a str,
}

fn render(ps: &PeriodicSet, window: u32, format: Format) -> Result<Outcome, Failure> {
    let svg = emit_tiling_svg(ps, window)?;
    let body = match format {
        Format::Json => to_json(&RenderReport { window, svg: &svg }),
        _ => svg,
    };
    Ok(Outcome {
        positive: true,
        body,
    })
}

#[derive(Deserialize)]
struct MeasurePair {
    mu: Measure,
    nu: Measure,
}

#[derive(Serialize)]
struct LcaReport {
    spectral: bool,
    tiling: bool,
    /// `(μ,ν)`, `(ν̃,μ)`, `(μ̃,ν̃)`, `(ν,μ̃)`, `(ν,μ)`
    symmetry_verdicts: [bool; 5],
    mu_mass: Rational,
    nu_mass: Rational,
    mu_support: usize,
    nu_support: usize,
}

fn lca_check(pair: &MeasurePair, json: bool) -> Result<Outcome, Failure> {
    let (mu, nu) = (&pair.mu, &pair.nu);
    let spectral = is_spectral_pair_measures(mu, nu)?;
    let tiling = is_tiling_pair_measures(mu, nu)?;
    let report = LcaReport {
        spectral,
        tiling,
        symmetry_verdicts: symmetry_verdicts(mu, nu),
        mu_mass: mu.total_mass(),
        nu_mass: nu.total_mass(),
        mu_support: mu.support().len(),
        nu_support: nu.support().len(),
    };
    let body = if json {
        to_json(&report)
    } else {
        format!(
            "spectral: {}\ntiling: {}\nsymmetry verdicts: {:?}\nmu(G) = {}, nu(G) = {}, |supp mu| = {}, |supp nu| = {}\n",
            report.spectral,
            report.tiling,
            report.symmetry_verdicts,
            report.mu_mass,
            report.nu_mass,
            report.mu_support,
            report.nu_support
        )
    };
    Ok(Outcome {
        positive: spectral || tiling,
        body,
    })
}

fn uncertainty(pair: Option<&MeasurePair>, trials: u64, seed: u64, json: bool) -> Result<Outcome, Failure> {
    if let Some(p) = pair {
        if !is_spectral_pair_measures(&p.mu, &p.nu)? {
            let body = if json {
                to_json(&NotRecognized {
                    recognized: false,
                    reason: Error::NotSpectralPair.to_string(),
                })
            } else {
                format!("{}\n", Error::NotSpectralPair)
            };
            return Ok(Outcome {
                positive: false,
                body,
            });
        }
    }
    let summary: TrialSummary = uncertainty_trials(pair.map(|p| (&p.mu, &p.nu)), trials, seed);
    let body = if json {
        to_json(&summary)
    } else {
        let mut s = format!(
            "{} trials, {} violations, {} errors\n",
            summary.trials, summary.violations, summary.errors
        );
        if let Some(t) = &summary.tightest {
            let _ = writeln!(
                s,
                "tightest: lhs = {:.12}, rhs = {:.12} (epsilon = {:.6}, delta = {:.6})",
                t.lhs, t.rhs, t.epsilon, t.delta
            );
        }
        s
    };
    Ok(Outcome {
        positive: summary.violations == 0 && summary.errors == 0,
        body,
    })
}

#[derive(Serialize)]
struct SuiteEntry {
    id: u8,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn suite(seed: u64, json: bool) -> Result<Outcome, Failure> {
    let reports = run_all(seed);
    let positive = reports.iter().all(|r| r.passed);
    let body = if json {
        // timings are left out so the report is reproducible
        let entries: Vec<SuiteEntry> = reports
            .iter()
            .map(|r| SuiteEntry {
                id: r.id,
                name: r.name,
                passed: r.passed,
                detail: r.detail.clone(),
            })
            .collect();
        to_json(&entries)
    } else {
        let mut s = String::new();
        for r in &reports {
            let _ = writeln!(s, "{r}");
        }
        let failed = reports.iter().filter(|r| !r.passed).count();
        let _ = writeln!(
            s,
            "{}",
            if failed == 0 {
                format!("all {} criteria passed", reports.len())
            } else {
                format!("{failed} criteria failed")
            }
        );
        s
    };
    Ok(Outcome { positive, body })
}
