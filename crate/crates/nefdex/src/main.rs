use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nefdex::format::{load_input, parse_class, rat, CertificateJson, DivisorClassJson, InputFile, MinkowskiJson, PolytopeFile};
use nefdex::report::{build_report, to_csv, to_json, to_table};
use nefdex::suites;
use nefdex::{CliError, RunConfig, ITER_CAP_VAR};
use nefdex_core::delpezzo::{SurfaceKind, SurfaceModel};
use nefdex_core::tau::{tau_integral, tau_rational, Ring};
use nefdex_core::toric::index::tau_of_variety;
use nefdex_core::toric::{reflexive_polygons, tau_toric, ToricVariety};

#[derive(Parser)]
#[command(name = "nefdex", version, about = "Total index and nef complexity of del Pezzo surfaces and toric Fano varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    #[value(name = "Q", alias = "q")]
    Q,
    #[value(name = "Z", alias = "z")]
    Z,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the del Pezzo table and diff it against the expected values.
    Report {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Total index of a surface (P2, P1xP1, dP1..dP8) or a polytope/fan file.
    Tau {
        target: String,
        #[arg(long, value_enum, default_value = "Q")]
        ring: RingArg,
        /// Print the primal (and for Q the dual) certificate as JSON.
        #[arg(long)]
        certificate: bool,
    },
    /// Run an invariant suite: del-pezzo, polygons, fujita or threefolds.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// List the (-1)-curves of a surface as JSON classes.
    Curves { surface: String },
    /// Test whether an integer class such as "[2,1,1,1,1]" is nef.
    NefCheck { surface: String, class: String },
    /// Export the reflexive polytopes of a dimension (only 2 is supported).
    Catalog {
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
}

fn ring_str(r: RingArg) -> &'static str {
    match r {
        RingArg::Q => "Q",
        RingArg::Z => "Z",
    }
}

fn format_str(f: Format) -> &'static str {
    match f {
        Format::Table => "table",
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

fn surface(id: &str) -> Result<SurfaceModel, CliError> {
    Ok(SurfaceModel::build(SurfaceKind::parse(id)?)?)
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

fn cmd_tau(config: &RunConfig, target: &str, ring: Ring, certificate: bool) -> Result<(), CliError> {
    let tau_cfg = config.tau_config();
    if let Ok(kind) = SurfaceKind::parse(target) {
        let s = SurfaceModel::build(kind)?;
        let (value, cert) = match ring {
            Ring::Q => {
                let (v, p, d) = tau_rational(&s, &tau_cfg)?;
                (v, CertificateJson::new(&p, Some(&d)))
            }
            Ring::Z => {
                let (v, p) = tau_integral(&s)?;
                (nefdex_core::rational::q(v), CertificateJson::new(&p, None))
            }
        };
        println!("{}", rat(&value));
        if certificate {
            println!("{}", pretty(&cert));
        }
        return Ok(());
    }
    let path = Path::new(target);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "{target:?} is neither a surface id (P2, P1xP1, dP1..dP8) nor a readable file"
        )));
    }
    let result = match load_input(path)? {
        InputFile::Polytope(p) => {
            let poly = p.to_polytope()?;
            tau_toric(&poly, ring, &tau_cfg)?
        }
        InputFile::Fan(f) => {
            let var = ToricVariety::new(target.to_string(), f.to_fan()?)?;
            // the variety's normalised −K polytope, moved back by its reference vertex
            let anti = nefdex_core::nef::NefContext::anticanonical(&var).to_vec();
            let poly = var.divisor_polytope(&anti)?.translate(&var.reference_vertex());
            tau_of_variety(&var, &poly, ring, &tau_cfg)?
        }
    };
    println!("{}", rat(&result.value));
    if certificate {
        let mut cert = CertificateJson::new(&result.certificate, result.dual.as_ref());
        cert.minkowski = Some(MinkowskiJson::from(&result.decomposition));
        println!("{}", pretty(&cert));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let env_cap = std::env::var(ITER_CAP_VAR).ok();
    let name = match &cli.command {
        Command::Report { .. } => "report",
        Command::Tau { .. } => "tau",
        Command::Verify { .. } => "verify",
        Command::Curves { .. } => "curves",
        Command::NefCheck { .. } => "nef-check",
        Command::Catalog { .. } => "catalog",
    };
    let mut config = RunConfig::new(name).with_iteration_cap(env_cap.as_deref())?;
    match &cli.command {
        Command::Report { format } => config.format = Some(format_str(*format).into()),
        Command::Tau { target, ring, .. } => {
            config.target = Some(target.clone());
            config.ring = Some(ring_str(*ring).into());
        }
        Command::Verify { suite, seed, samples, format } => {
            config.target = Some(suite.clone());
            config.seed = Some(*seed);
            config.samples = Some(*samples);
            config.format = Some(format_str(*format).into());
        }
        Command::Curves { surface } | Command::NefCheck { surface, .. } => config.target = Some(surface.clone()),
        Command::Catalog { dim } => config.target = Some(dim.to_string()),
    }
    // stdout carries only the result, so the run configuration goes to stderr
    eprintln!("config: {}", config.to_json());

    match cli.command {
        Command::Report { format } => {
            let rows = build_report(&config.tau_config())?;
            let text = match format {
                Format::Table => to_table(&rows),
                Format::Json => to_json(&rows) + "\n",
                Format::Csv => to_csv(&rows),
            };
            print!("{text}");
            if let Some(bad) = rows.iter().find(|r| !r.passed()) {
                return Err(CliError::Violation(format!("{} differs from the expected table", bad.id)));
            }
        }
        Command::Tau { target, ring, certificate } => {
            let ring = match ring {
                RingArg::Q => Ring::Q,
                RingArg::Z => Ring::Z,
            };
            cmd_tau(&config, &target, ring, certificate)?;
        }
        Command::Verify { suite, seed, samples, format } => {
            let outcome = suites::run(&suite, seed, samples, &config.tau_config())?;
            match format {
                Format::Json => println!("{}", pretty(&outcome)),
                _ => {
                    for line in &outcome.summary {
                        println!("{line}");
                    }
                    match &outcome.counterexample {
                        Some(c) => println!("first counterexample: {c}"),
                        None => println!("counterexamples: none"),
                    }
                }
            }
            outcome.into_result()?;
        }
        Command::Curves { surface: id } => {
            let s = surface(&id)?;
            let curves: Vec<DivisorClassJson> = s.negative_curves()?.iter().map(DivisorClassJson::from).collect();
            println!("{}", pretty(&curves));
        }
        Command::NefCheck { surface: id, class } => {
            let s = surface(&id)?;
            let coords = parse_class(&class)?;
            let c = s.class(&coords)?;
            println!("{}", s.is_nef_class(&c)?);
        }
        Command::Catalog { dim } => {
            if dim != 2 {
                return Err(CliError::Input(format!("the catalog covers dimension 2 only, got {dim}")));
            }
            let polys: Vec<PolytopeFile> = reflexive_polygons().iter().map(PolytopeFile::from).collect();
            println!("{}", pretty(&polys));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nefdex: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
