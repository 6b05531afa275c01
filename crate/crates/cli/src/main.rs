mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyon_ed::eigensolve::CLUSTER_TOLERANCE;
use anyon_ed::hamiltonian::{diagonal_profile, toeplitz_gauge_transform};
use anyon_ed::oracles::{
    check_anyonic_spectra, check_fermionic_spectra, verify_algebra, VerificationReport,
};
use anyon_ed::{
    build_full_hamiltonian, build_sector_hamiltonian, entropy_scan, gentile_occupation,
    gentile_occupation_closed, hermitian_eig, AlgebraParams, Error, ExchangePhase, ModelParams,
    OccupationQuery, ParticlePolicy,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use table::{emit, format_float, Cell, Table, TableFormat};

const SEED_ENV: &str = "ANYON_ED_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "anyon-ed",
    version,
    about = "Exact diagonalization of two-site generalized anyon chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues of every particle-number block.
    Spectrum(SpectrumArgs),
    /// Ground-state entanglement entropy over (m, N).
    EntropyScan(ScanArgs),
    /// Mean occupation of one mode holding at most nu anyons.
    Distribution(DistributionArgs),
    /// Dense-matrix checks of the algebra and of the closed-form spectra.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct TableOutput {
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Write here instead of stdout; sidecar files are placed next to it.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct SpectrumArgs {
    /// Maximum occupation per site (odd).
    #[arg(long)]
    nu: u32,
    #[arg(long, default_value_t = 1.0)]
    kappa_a: f64,
    #[arg(long, default_value_t = 0.0)]
    kappa_f: f64,
    /// Only this particle number (default: every sector).
    #[arg(long)]
    sector: Option<usize>,
    #[arg(long, default_value_t = 2)]
    sites: usize,
    /// Also summarize the diagonals of the gauge-transformed blocks (two sites).
    #[arg(long)]
    gauge: bool,
    #[command(flatten)]
    out: TableOutput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// kappa_a = 1, kappa_f = 0
    A,
    /// kappa_a = 0, kappa_f = 1
    B,
    /// kappa_a = 1, kappa_f = 1
    C,
    /// kappa_a = 1, kappa_f = 10
    D,
}

impl Preset {
    fn couplings(self) -> (f64, f64) {
        match self {
            Preset::A => (1.0, 0.0),
            Preset::B => (0.0, 1.0),
            Preset::C => (1.0, 1.0),
            Preset::D => (1.0, 10.0),
        }
    }

    fn label(self) -> &'static str {
        match self {
            Preset::A => "a",
            Preset::B => "b",
            Preset::C => "c",
            Preset::D => "d",
        }
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct ScanArgs {
    /// Composite sizes m (nu = 2m - 1).
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3, 4, 5])]
    m: Vec<u32>,
    #[arg(long, conflicts_with = "preset")]
    kappa_a: Option<f64>,
    #[arg(long, conflicts_with = "preset")]
    kappa_f: Option<f64>,
    /// Coupling bundle for one of the four entropy panels (best-effort reconstruction).
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Particle numbers to visit (default: 1..=2nu for each m).
    #[arg(long = "N", value_delimiter = ',')]
    particles: Option<Vec<usize>>,
    /// Seed for choosing among degenerate ground states; ANYON_ED_SEED takes precedence.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    out: TableOutput,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct DistributionArgs {
    #[arg(long)]
    nu: u32,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    /// Mode energies.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    eps: Vec<f64>,
    /// Add a column evaluated from the closed form.
    #[arg(long)]
    closed_form: bool,
    #[command(flatten)]
    out: TableOutput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Human,
    Json,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    /// Odd occupation limits to check (default: 1,3,5,7 on two sites and 1,3 on three).
    #[arg(long, value_delimiter = ',')]
    nu: Option<Vec<u32>>,
    /// Exchange angle in radians (default: pi/m^2 for each nu).
    #[arg(long)]
    theta: Option<f64>,
    /// Chain length (default: both two and three sites as above).
    #[arg(long)]
    sites: Option<usize>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
    format: ReportFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Failure with its exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numerical(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SiteOutOfRange { .. }
            | Error::SectorOutOfRange { .. }
            | Error::InvalidParameter(_)
            | Error::NotFermionic(_)
            | Error::TooLarge { .. }
            | Error::VacuumSector
            | Error::LengthMismatch { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(a) => cmd_spectrum(&a),
        Command::EntropyScan(a) => cmd_entropy_scan(&a),
        Command::Distribution(a) => cmd_distribution(&a),
        Command::Verify(a) => cmd_verify(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn write_meta(out: &TableOutput, meta: serde_json::Value) -> Outcome {
    if let Some(path) = &out.output {
        let text = serde_json::to_string_pretty(&meta).expect("plain JSON value") + "\n";
        emit(&text, Some(&sidecar(path, ".meta.json")))?;
    }
    Ok(())
}

fn require_odd(nu: u32) -> Outcome {
    if nu.is_multiple_of(2) {
        return Err(Failure::Usage(format!(
            "nu = {nu}: nu must be odd for fermionization"
        )));
    }
    Ok(())
}

fn format_name(f: TableFormat) -> &'static str {
    match f {
        TableFormat::Csv => "csv",
        TableFormat::Json => "json",
    }
}

fn cmd_spectrum(args: &SpectrumArgs) -> Outcome {
    require_odd(args.nu)?;
    let algebra = AlgebraParams::fermionic(args.nu, args.sites)?;
    let model = ModelParams::new(algebra, args.kappa_a, args.kappa_f)?;
    let blocks = match args.sector {
        Some(n) => vec![build_sector_hamiltonian(&model, n)?],
        None => build_full_hamiltonian(&model)?,
    };

    let mut table = Table::new(vec!["N", "j", "eigenvalue", "degenerate"]);
    let mut gauge = Table::new(vec!["N", "offset", "value_re", "value_im", "spread"]);
    for block in &blocks {
        let eig = hermitian_eig(&block.matrix);
        let tol = CLUSTER_TOLERANCE * block.matrix.max_norm().max(1.0);
        let values = &eig.eigenvalues;
        for (j, &lambda) in values.iter().enumerate() {
            let degenerate = (j > 0 && lambda - values[j - 1] <= tol)
                || (j + 1 < values.len() && values[j + 1] - lambda <= tol);
            table.push(vec![
                Cell::Int(block.particles as i64),
                Cell::Int(j as i64),
                Cell::Float(lambda),
                Cell::Bool(degenerate),
            ]);
        }
        if args.gauge {
            let gauged = toeplitz_gauge_transform(block, &model)?;
            for diag in diagonal_profile(gauged.matrix.as_matrix()) {
                if diag.value.norm() == 0.0 && diag.spread == 0.0 {
                    continue;
                }
                gauge.push(vec![
                    Cell::Int(block.particles as i64),
                    Cell::Int(diag.offset as i64),
                    Cell::Float(diag.value.re),
                    Cell::Float(diag.value.im),
                    Cell::Float(diag.spread),
                ]);
            }
        }
    }

    let format = args.out.format;
    match &args.out.output {
        Some(path) => {
            emit(&table.render(format), Some(path))?;
            if args.gauge {
                emit(&gauge.render(format), Some(&sidecar(path, ".gauge.csv")))?;
            }
        }
        None => {
            let mut text = table.render(format);
            if args.gauge {
                text.push('\n');
                text.push_str(&gauge.render(format));
            }
            emit(&text, None)?;
        }
    }
    write_meta(
        &args.out,
        json!({
            "command": "spectrum",
            "seed": serde_json::Value::Null,
            "nu": args.nu,
            "sites": args.sites,
            "kappa_a": format_float(args.kappa_a),
            "kappa_f": format_float(args.kappa_f),
            "sector": args.sector,
            "gauge": args.gauge,
            "format": format_name(format),
        }),
    )
}

fn resolve_seed(flag: u64) -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            Failure::Usage(format!("{SEED_ENV} = {text:?} is not an unsigned integer"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(flag),
        Err(e) => Err(Failure::Usage(format!("{SEED_ENV}: {e}"))),
    }
}

fn cmd_entropy_scan(args: &ScanArgs) -> Outcome {
    if args.m.is_empty() || args.m.contains(&0) {
        return Err(Failure::Usage(
            "--m needs one or more positive values".into(),
        ));
    }
    let seed = resolve_seed(args.seed)?;
    let (kappa_a, kappa_f) = match args.preset {
        Some(p) => p.couplings(),
        None => (args.kappa_a.unwrap_or(1.0), args.kappa_f.unwrap_or(0.0)),
    };
    let policy = match &args.particles {
        Some(list) => ParticlePolicy::Only(list.clone()),
        None => ParticlePolicy::Auto,
    };
    let outcome = entropy_scan(&args.m, &policy, kappa_a, kappa_f, seed)?;

    let mut table = Table::new(vec![
        "m",
        "N",
        "kappa_a",
        "kappa_f",
        "seed",
        "ground_energy",
        "degeneracy",
        "entropy_nats",
    ]);
    for r in &outcome.records {
        if !r.entropy.is_finite() || !r.ground_energy.is_finite() {
            return Err(Failure::Numerical(format!(
                "non-finite result at m = {}, N = {}",
                r.m, r.particles
            )));
        }
        table.push(vec![
            Cell::Int(i64::from(r.m)),
            Cell::Int(r.particles as i64),
            Cell::Float(r.kappa_a),
            Cell::Float(r.kappa_f),
            Cell::UInt(r.seed),
            Cell::Float(r.ground_energy),
            Cell::Int(r.degeneracy as i64),
            Cell::Float(r.entropy),
        ]);
    }
    let mut skipped = Table::new(vec!["m", "N", "reason"]);
    for s in &outcome.skipped {
        skipped.push(vec![
            Cell::Int(i64::from(s.m)),
            Cell::Int(s.particles as i64),
            Cell::Text(s.reason.code().into()),
        ]);
    }

    let format = args.out.format;
    emit(&table.render(format), args.out.output.as_deref())?;
    match &args.out.output {
        Some(path) => emit(
            &skipped.render(TableFormat::Csv),
            Some(&sidecar(path, ".skipped.csv")),
        )?,
        None => {
            for s in &outcome.skipped {
                eprintln!(
                    "skipped m = {}, N = {}: {}",
                    s.m,
                    s.particles,
                    s.reason.code()
                );
            }
        }
    }
    write_meta(
        &args.out,
        json!({
            "command": "entropy-scan",
            "seed": seed,
            "m": args.m,
            "N": args.particles,
            "kappa_a": format_float(kappa_a),
            "kappa_f": format_float(kappa_f),
            "preset": args.preset.map(Preset::label),
            "preset_note": args.preset.map(|_| "best-effort reconstruction of the published panel couplings"),
            "format": format_name(format),
        }),
    )
}

fn cmd_distribution(args: &DistributionArgs) -> Outcome {
    let mut columns = vec!["nu", "beta", "mu", "epsilon", "x", "occupation"];
    if args.closed_form {
        columns.push("occupation_closed_form");
    }
    let mut table = Table::new(columns);
    let mut limit_rows = Vec::new();
    for (row, &epsilon) in args.eps.iter().enumerate() {
        let q = OccupationQuery::new(args.beta, epsilon, args.mu, args.nu)?;
        let x = q.x();
        let mut cells = vec![
            Cell::Int(i64::from(args.nu)),
            Cell::Float(args.beta),
            Cell::Float(args.mu),
            Cell::Float(epsilon),
            Cell::Float(x),
            Cell::Float(gentile_occupation(&q)),
        ];
        if x == 0.0 {
            limit_rows.push(row);
            eprintln!("note: x = 0 at epsilon = {epsilon}; occupation is the limit nu/2");
        }
        if args.closed_form {
            let closed = match gentile_occupation_closed(&q) {
                Ok(v) => v,
                Err(Error::SingularPoint { limit }) => limit,
                Err(e) => return Err(e.into()),
            };
            cells.push(Cell::Float(closed));
        }
        table.push(cells);
    }
    emit(&table.render(args.out.format), args.out.output.as_deref())?;
    write_meta(
        &args.out,
        json!({
            "command": "distribution",
            "seed": serde_json::Value::Null,
            "nu": args.nu,
            "beta": format_float(args.beta),
            "mu": format_float(args.mu),
            "closed_form": args.closed_form,
            "limit_rows": limit_rows,
            "format": format_name(args.out.format),
        }),
    )
}

fn verification_plan(args: &VerifyArgs) -> Result<Vec<(u32, usize)>, Failure> {
    let plan: Vec<(u32, usize)> = match (&args.nu, args.sites) {
        (None, None) => [1, 3, 5, 7]
            .iter()
            .map(|&nu| (nu, 2))
            .chain([1, 3].iter().map(|&nu| (nu, 3)))
            .collect(),
        (None, Some(l)) => [1, 3, 5, 7].iter().map(|&nu| (nu, l)).collect(),
        (Some(list), l) => list.iter().map(|&nu| (nu, l.unwrap_or(2))).collect(),
    };
    if plan.is_empty() {
        return Err(Failure::Usage("--nu needs at least one value".into()));
    }
    for &(nu, _) in &plan {
        require_odd(nu)?;
    }
    Ok(plan)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let plan = verification_plan(args)?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    for &(nu, sites) in &plan {
        let params = match args.theta {
            Some(theta) => AlgebraParams::new(nu, ExchangePhase::radians(theta), sites)?,
            None => AlgebraParams::fermionic(nu, sites)?,
        };
        reports.extend(verify_algebra(&params)?);
        if args.theta.is_none() && sites == 2 {
            let m = nu.div_ceil(2);
            reports.push(check_anyonic_spectra(m)?);
            reports.push(check_fermionic_spectra(m)?);
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let text = match args.format {
        ReportFormat::Human => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!(
                    "{:<6} nu={} L={} theta={} {:<32} deviation={} tolerance={}\n",
                    if r.passed { "PASSED" } else { "FAILED" },
                    r.nu,
                    r.num_sites,
                    format_float(r.theta),
                    r.relation,
                    format_float(r.max_deviation),
                    format_float(r.tolerance),
                ));
            }
            s.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
            s
        }
        ReportFormat::Json => {
            let mut t = Table::new(vec![
                "relation",
                "nu",
                "num_sites",
                "theta",
                "max_deviation",
                "tolerance",
                "passed",
            ]);
            for r in &reports {
                t.push(vec![
                    Cell::Text(r.relation.clone()),
                    Cell::Int(i64::from(r.nu)),
                    Cell::Int(r.num_sites as i64),
                    Cell::Float(r.theta),
                    Cell::Float(r.max_deviation),
                    Cell::Float(r.tolerance),
                    Cell::Bool(r.passed),
                ]);
            }
            t.render(TableFormat::Json)
        }
    };
    emit(&text, args.output.as_deref())?;
    if failed > 0 {
        let names: Vec<String> = reports
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("{} (nu = {}, L = {})", r.relation, r.nu, r.num_sites))
            .collect();
        return Err(Failure::Numerical(format!(
            "failed relations: {}",
            names.join(", ")
        )));
    }
    Ok(())
}
