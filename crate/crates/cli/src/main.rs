use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mdskit::mds::{is_involutory, is_mds};
use mdskit::replay::{self, Status};
use mdskit::search::{self, Requirements, SearchConfig, SearchMode};
use mdskit::structured::{delta_theta_circulant, quasi_recursive_product, TwistFamily};
use mdskit::text::{format_elem, parse_elem, parse_elems, parse_field_flag, parse_poly, MatrixFile, Notation};
use mdskit::{FieldSpec, ThetaDerivation};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "mdskit",
    version,
    about = "Build and verify twisted-circulant and quasi-recursive MDS matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Ring {
    /// Field as m:modulus[:generator], e.g. 8:0x11d
    #[arg(long, default_value = "4:0x13")]
    field: String,
    /// Frobenius exponent k of theta(a) = a^(2^k)
    #[arg(long, default_value_t = 0)]
    theta: u32,
    /// beta of delta(a) = beta*(theta(a) - a); omitted means delta = 0
    #[arg(long)]
    beta: Option<String>,
    /// Element notation in output
    #[arg(long, value_enum, default_value_t = NotationArg::Hex)]
    notation: NotationArg,
}

impl Ring {
    fn field(&self) -> anyhow::Result<FieldSpec> {
        Ok(parse_field_flag(&self.field)?)
    }

    fn derivation(&self) -> anyhow::Result<ThetaDerivation> {
        let f = self.field()?;
        let beta = self.beta.as_deref().map(|b| parse_elem(f, b)).transpose()?;
        Ok(ThetaDerivation::from_parts(f, self.theta, beta)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NotationArg {
    Hex,
    Power,
}

impl From<NotationArg> for Notation {
    fn from(n: NotationArg) -> Self {
        match n {
            NotationArg::Hex => Notation::Hex,
            NotationArg::Power => Notation::Power,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Mds,
    Involutory,
}

fn requirements(props: &[Property]) -> Requirements {
    let mut r = Requirements::default();
    for p in props {
        match p {
            Property::Mds => r.mds = true,
            Property::Involutory => r.involutory = true,
        }
    }
    r
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Circulant,
    Recursive,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a matrix and print it as JSON with its check summary
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Verify a matrix JSON file (or - for stdin)
    Check {
        path: String,
        /// Properties that must hold for exit status 0
        #[arg(long, value_enum, value_delimiter = ',', default_value = "mds")]
        require: Vec<Property>,
    },
    /// Enumerate or sample candidates and print the matching matrices
    Search {
        #[command(flatten)]
        ring: Ring,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Matrix order
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, value_delimiter = ',')]
        require: Vec<Property>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidates drawn when the space is too large to enumerate
        #[arg(long, default_value_t = search::DEFAULT_SAMPLES)]
        samples: usize,
        /// Line-delimited JSON instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Derive Hadamard powers g^(2^t) of an MDS-generating polynomial
    HadamardFamily {
        #[command(flatten)]
        ring: Ring,
        /// Coefficients g_0,...,g_m, low degree first
        #[arg(long)]
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Replay the worked examples against their fixtures
    ReplayExamples {
        #[arg(long)]
        json: bool,
        /// Directory whose files override the embedded fixtures
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Describe a field and the (theta, delta) pair
    FieldInfo {
        #[command(flatten)]
        ring: Ring,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// Twisted circulant from its first row
    Circulant {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        row: String,
    },
    /// C^[r-1] ... C^[1] C for the companion matrix of a monic g
    Recursive {
        #[command(flatten)]
        ring: Ring,
        /// Coefficients g_0,...,g_m, low degree first
        #[arg(long)]
        poly: String,
        /// Number of factors; defaults to deg g
        #[arg(long)]
        r: Option<u32>,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Build { kind } => build(kind),
        Command::Check { path, require } => check(&path, requirements(&require)),
        Command::Search {
            ring,
            mode,
            m,
            require,
            limit,
            seed,
            samples,
            json,
        } => {
            let mut cfg = SearchConfig::new(
                ring.field()?,
                m,
                match mode {
                    ModeArg::Circulant => SearchMode::Circulant,
                    ModeArg::Recursive => SearchMode::Recursive,
                },
            );
            cfg.theta_k = ring.theta;
            cfg.beta = Some(ring.derivation()?.beta()).filter(|b| !b.is_zero());
            cfg.require = requirements(&require);
            if let Some(limit) = limit {
                cfg.limit = limit;
            }
            cfg.seed = seed;
            cfg.samples = samples;
            let records = search::run_search(&cfg)?;
            for r in &records {
                if json {
                    println!("{}", serde_json::to_string(r)?);
                } else {
                    let rows: Vec<String> = r.rows.iter().map(|row| row.join(" ")).collect();
                    println!(
                        "{}  mds={} involutory={}  [{}]",
                        r.candidate,
                        r.mds,
                        r.involutory,
                        rows.join("; ")
                    );
                }
            }
            if !json {
                eprintln!("{} record(s)", records.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::HadamardFamily { ring, poly, json } => hadamard_family(&ring, &poly, json),
        Command::ReplayExamples { json, fixtures } => replay_examples(json, fixtures),
        Command::FieldInfo { ring } => field_info(&ring),
    }
}

fn build(kind: BuildKind) -> anyhow::Result<ExitCode> {
    let (ring, d, matrix) = match kind {
        BuildKind::Circulant { ring, row } => {
            let d = ring.derivation()?;
            let row = parse_elems(d.field(), &row)?;
            let matrix = delta_theta_circulant(&row, &d)?;
            (ring, d, matrix)
        }
        BuildKind::Recursive { ring, poly, r } => {
            let d = ring.derivation()?;
            if !d.is_zero() {
                bail!("recursive construction needs delta = 0 (omit --beta)");
            }
            let g = parse_poly(d, &poly)?;
            let deg = g.degree().context("polynomial is zero")? as u32;
            let matrix = quasi_recursive_product(&g, r.unwrap_or(deg), TwistFamily::Bracket)?;
            (ring, d, matrix)
        }
    };
    let mut doc = MatrixFile::new(&matrix, &d, ring.notation.into());
    doc.checks = Some(json!({
        "mds": is_mds(&matrix)?.is_mds,
        "involutory": is_involutory(&matrix),
    }));
    println!("{}", doc.to_json());
    Ok(ExitCode::SUCCESS)
}

fn check(path: &str, require: Requirements) -> anyhow::Result<ExitCode> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    let (matrix, _) = MatrixFile::from_json(&text)?.decode()?;
    let report = is_mds(&matrix)?;
    let involutory = is_involutory(&matrix);
    let mut value = serde_json::to_value(&report)?;
    value["involutory"] = json!(involutory);
    println!("{}", serde_json::to_string_pretty(&value)?);
    let ok = (!require.mds || report.is_mds) && (!require.involutory || involutory);
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    })
}

fn hadamard_family(ring: &Ring, poly: &str, json: bool) -> anyhow::Result<ExitCode> {
    let d = ring.derivation()?;
    let g = parse_poly(d, poly)?;
    let family = search::hadamard_family(&g)?;
    for member in &family {
        let record = member.record(ring.notation.into());
        if json {
            println!("{}", serde_json::to_string(&record)?);
        } else {
            println!("t={} g^(2^{})={} mds={}", record.t, record.t, record.poly, record.mds);
        }
    }
    let all_mds = family.iter().all(|m| m.report.is_mds);
    Ok(if all_mds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    })
}

fn replay_examples(json: bool, fixtures: Option<PathBuf>) -> anyhow::Result<ExitCode> {
    let outcomes = replay::run_examples(fixtures.as_deref())?;
    if json {
        println!("{}", serde_json::to_string_pretty(&outcomes)?);
    } else {
        let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
        for o in &outcomes {
            let status = match o.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "info",
            };
            println!(
                "{status}  {:width$}  expected: {}  computed: {}",
                o.name, o.expected, o.computed
            );
        }
    }
    match outcomes.iter().find(|o| o.status == Status::Fail) {
        None => Ok(ExitCode::SUCCESS),
        Some(first) => {
            eprintln!("first failing fixture: {} ({})", first.name, first.computed);
            Ok(ExitCode::from(EXIT_FAILED))
        }
    }
}

fn field_info(ring: &Ring) -> anyhow::Result<ExitCode> {
    let d = ring.derivation()?;
    let f = d.field();
    let n: Notation = ring.notation.into();
    let theta = d.automorphism();
    let fixed: Vec<String> = theta.fixed_field().into_iter().map(|e| format_elem(f, e, n)).collect();
    let info = json!({
        "m": f.degree(),
        "size": f.size(),
        "modulus": format!("{:#x}", f.modulus()),
        "generator": format_elem(f, f.generator(), Notation::Hex),
        "theta_k": theta.exponent(),
        "theta_order": theta.order(),
        "fixed_field": fixed,
        "beta": format_elem(f, d.beta(), n),
        "delta_commutes_with_theta": d.is_commuting(),
    });
    println!("{}", serde_json::to_string_pretty(&info)?);
    Ok(ExitCode::SUCCESS)
}
