use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use insep_core::scenario::{parse_local_request, resolve_local, run_scenario, LocalRequest, Scenario};
use insep_core::suite::run_suite;
use insep_core::localres::Configuration;

#[derive(Parser)]
#[command(name = "insep", version, about = "Inseparable quotients of curve products in characteristic 2")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest extension degree (in bits) for point counting.
    #[arg(long, global = true)]
    budget: Option<u32>,
    /// Initial number of known series terms in local resolutions.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a scenario file ("-" reads stdin).
    Analyze { file: PathBuf },
    /// Run every named construction against the golden fixtures.
    PaperSuite,
    /// Resolve a local model δ = x^a ∂x + y^b ∂y (zeros) or its pole analogue.
    ResolveLocal {
        /// JSON request {"a","b","configuration"}; flags are used when absent.
        file: Option<PathBuf>,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        #[arg(long, value_parser = ["zeros", "poles"])]
        configuration: Option<String>,
    },
    /// List the curve and vector field constructors.
    Catalog,
    /// Zeta data and the Artin-Tate right side for a scenario file.
    Zeta { file: PathBuf },
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Input(anyhow::Error),
    Suite,
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_scenario(path: &Path, budget: Option<u32>, zeta: Option<bool>) -> Result<Scenario> {
    let mut s = Scenario::parse(&read_input(path)?)?;
    if let Some(b) = budget {
        s.options.budget = b;
    }
    if let Some(z) = zeta {
        s.options.zeta = z;
    }
    Ok(s)
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn analyze(cli: &Cli, file: &Path, zeta: Option<bool>) -> std::result::Result<u8, Failure> {
    let s = load_scenario(file, cli.budget, zeta).map_err(Failure::Input)?;
    let o = run_scenario(&s).map_err(|e| Failure::Input(e.into()))?;
    if cli.json {
        print_json(&o).map_err(Failure::Input)?;
    } else {
        print!("{o}");
    }
    Ok(o.exit_code() as u8)
}

fn zeta(cli: &Cli, file: &Path) -> std::result::Result<u8, Failure> {
    let s = load_scenario(file, cli.budget, Some(true)).map_err(Failure::Input)?;
    let o = run_scenario(&s).map_err(|e| Failure::Input(e.into()))?;
    if !o.report.complete {
        eprintln!("unclassified singularity: zeta of the resolution is not available");
        return Ok(3);
    }
    if let Some(e) = &o.zeta_error {
        return Err(Failure::Input(anyhow::anyhow!("{e}")));
    }
    let (Some(z), Some(at)) = (&o.zeta, &o.artin_tate) else {
        return Err(Failure::Input(anyhow::anyhow!("no zeta data")));
    };
    if cli.json {
        print_json(&serde_json::json!({"zeta": z, "artin_tate": at})).map_err(Failure::Input)?;
    } else {
        println!("q = 2^{}", z.k);
        println!("P1(C) = {}", z.p1_c);
        println!("P1(F) = {}", z.p1_f);
        println!("P2(C x F) = {}", z.p2_product);
        println!("P2(X) = {}", z.p2);
        println!("exceptional curves: {}; max ||root| - q| = {:.3e}", z.exceptional_curves, z.max_root_deviation);
        println!("alpha = {}; {}", at.alpha, at);
    }
    Ok(0)
}

fn local(
    cli: &Cli,
    file: &Option<PathBuf>,
    a: Option<u32>,
    b: Option<u32>,
    configuration: &Option<String>,
) -> std::result::Result<u8, Failure> {
    let req = match file {
        Some(f) => parse_local_request(&read_input(f).map_err(Failure::Input)?).map_err(|e| Failure::Input(e.into()))?,
        None => {
            let (Some(a), Some(b)) = (a, b) else {
                return Err(Failure::Input(anyhow::anyhow!("give a request file or both --a and --b")));
            };
            let configuration = match configuration.as_deref() {
                Some("poles") => Configuration::Poles,
                _ => Configuration::Zeros,
            };
            LocalRequest { a, b, configuration }
        }
    };
    let ans = resolve_local(&req, cli.precision).map_err(|e| Failure::Input(e.into()))?;
    if cli.json {
        print_json(&ans).map_err(Failure::Input)?;
    } else {
        println!("{:?} of orders ({}, {}), multiplicity {}", ans.configuration, ans.a, ans.b, ans.multiplicity);
        match ans.precision {
            Some(n) => println!("blow-ups: {}, series terms used: {n}", ans.blowups),
            None => println!("blow-ups: {} (exact model)", ans.blowups),
        }
        println!("quotient graph: {}", ans.graph);
        println!("fundamental cycle: {}", ans.cycle);
        println!("type: {} (table: {})", ans.kind, ans.table_type);
    }
    Ok(if ans.kind == "unmatched" && ans.table_type.starts_with("unclassified") { 3 } else { 0 })
}

const CATALOG: &[(&str, &str, &str)] = &[
    ("curve", "p1", r#"{"type":"p1"}"#),
    ("curve", "elliptic_deuring", r#"{"type":"elliptic_deuring","alpha":2}"#),
    ("curve", "hyperelliptic", r#"{"type":"hyperelliptic","branch":[0],"branch_at_infinity":true,"g":[1,0,1]}"#),
    ("curve", "artin_schreier", r#"{"type":"artin_schreier","h":4}"#),
    ("vector field", "delta1 (P^1)", r#"{"catalog":"delta1"}"#),
    ("vector field", "delta2 (P^1)", r#"{"catalog":"delta2"}"#),
    ("vector field", "delta_prime (P^1)", r#"{"catalog":"delta_prime","a":[0,1],"b":[2,3]}"#),
    ("vector field", "delta_elliptic (Deuring)", r#"{"catalog":"delta_elliptic","a":1,"b":2}"#),
    ("vector field", "as_ddx (Artin-Schreier)", r#"{"catalog":"as_ddx"}"#),
    ("vector field", "pullback_inverse_squares", r#"{"catalog":"pullback_inverse_squares","points":[0,1]}"#),
    ("vector field", "scaled d/dx", r#"{"base":"ddx","scale_num":[0,1,1],"scale_den":[1]}"#),
];

fn catalog(cli: &Cli) -> Result<u8> {
    if cli.json {
        let entries: Vec<_> = CATALOG
            .iter()
            .map(|(kind, name, ex)| {
                let example: serde_json::Value = serde_json::from_str(ex).expect("catalog example is valid JSON");
                serde_json::json!({"kind": kind, "name": name, "example": example})
            })
            .collect();
        print_json(&entries)?;
    } else {
        for (kind, name, ex) in CATALOG {
            println!("{kind:<13} {name:<26} {ex}");
        }
        println!("field elements are bit patterns in F_2^k; polynomials list coefficients lowest degree first");
    }
    Ok(0)
}

fn run(cli: &Cli) -> std::result::Result<u8, Failure> {
    match &cli.command {
        Command::Analyze { file } => analyze(cli, file, None),
        Command::Zeta { file } => zeta(cli, file),
        Command::ResolveLocal { file, a, b, configuration } => local(cli, file, *a, *b, configuration),
        Command::Catalog => catalog(cli).map_err(Failure::Input),
        Command::PaperSuite => {
            let r = run_suite().map_err(|e| Failure::Input(e.into()))?;
            if cli.json {
                print_json(&r).map_err(Failure::Input)?;
            } else {
                print!("{r}");
            }
            if r.all_pass() {
                Ok(0)
            } else {
                Err(Failure::Suite)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Suite) => ExitCode::from(1),
    }
}
