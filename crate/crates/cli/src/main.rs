//! Command-line harness: build the finite-set models, run the named
//! verification suites, enumerate the levels of the generated C-systems, and
//! emit machine-readable reports.

use clap::{Parser, Subcommand};
use csys::cc_universe::CcSystem;
use csys::finset_lcc::{partial_pi_structure, pi_structure, FinSkel, Universe};
use csys::report::{run_check, Report};
use csys::suites::{run_suite, SuiteConfig, SUITE_IDS};
use csys::uc_functor::{perturb_p, DemoInstance};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "csys")]
#[command(about = "C-systems over finite-set universes: builders and law-checking suites")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a JSON report.
    Verify {
        /// Model selector, `finskel:N` with universe size parameter N.
        #[arg(long, default_value = "finskel:2")]
        model: String,
        /// Object cap of the ambient finite-set instance.
        #[arg(long, default_value_t = 256)]
        cap: usize,
        /// Tower length bound for C-system enumerations.
        #[arg(long, default_value_t = 2)]
        length: usize,
        /// Suite ids (comma separated), or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Seed for the sampled portions of the suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fault injections to apply (for example `P'`).
        #[arg(long)]
        perturb: Vec<String>,
    },
    /// Enumerate the levels of the generated C-system as JSON.
    Enumerate {
        #[arg(long, default_value = "finskel:2")]
        model: String,
        #[arg(long, default_value_t = 256)]
        cap: usize,
        #[arg(long, default_value_t = 2)]
        length: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the functoriality theorem on the demo instance.
    DemoFunctor {
        /// Use the identity instance instead of the inclusion.
        #[arg(long)]
        identity: bool,
        /// Fault injections to apply (for example `P'`).
        #[arg(long)]
        perturb: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_model(model: &str) -> Result<usize, String> {
    match model.split_once(':') {
        Some(("finskel", n)) => n
            .parse::<usize>()
            .map_err(|_| format!("invalid universe size in model `{model}`")),
        _ => Err(format!("unknown model `{model}`, expected `finskel:N`")),
    }
}

fn emit(report: &Report, output: Option<&PathBuf>) -> Result<(), String> {
    let json = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    match output {
        Some(path) => std::fs::write(path, json).map_err(|e| e.to_string()),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn cmd_verify(
    model: String,
    cap: usize,
    length: usize,
    suites: Vec<String>,
    output: Option<PathBuf>,
    seed: u64,
    perturb: Vec<String>,
) -> Result<ExitCode, String> {
    let finskel_n = parse_model(&model)?;
    let config = SuiteConfig { finskel_n, cap, length_bound: length, seed, perturb };

    let selected: Vec<&str> = if suites.iter().any(|s| s == "all") {
        SUITE_IDS.to_vec()
    } else {
        let mut ids = Vec::new();
        for s in &suites {
            if !SUITE_IDS.contains(&s.as_str()) {
                return Err(format!("unknown suite id `{s}`"));
            }
            ids.push(s.as_str());
        }
        ids
    };

    let mut checks = Vec::new();
    for id in selected {
        checks.extend(run_suite(id, &config).expect("validated suite id"));
    }
    let report = Report::new(
        serde_json::json!({
            "model": model,
            "cap": cap,
            "length": length,
            "seed": seed,
            "perturb": config.perturb,
        }),
        checks,
    );
    let failures = report.failures();
    emit(&report, output.as_ref())?;
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_enumerate(
    model: String,
    cap: usize,
    length: usize,
    output: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let n = parse_model(&model)?;
    let skel = FinSkel::new(cap, 1_000_000);

    // Build level by level so a cap overflow names the offending level.
    let mut system = None;
    for bound in 0..=length {
        match CcSystem::build(Universe::new(n, skel), bound) {
            Ok(cc) => system = Some(cc),
            Err(e) => {
                eprintln!("enumeration failed at level {bound}: {e}");
                return Ok(ExitCode::from(3));
            }
        }
    }
    let cc = system.expect("bound 0 always builds");

    let levels: Vec<serde_json::Value> = (0..=length)
        .map(|l| {
            let towers: Vec<_> = cc
                .level(l)
                .expect("within the build bound")
                .iter()
                .map(|obj| &obj.tower)
                .collect();
            serde_json::json!({ "length": l, "towers": towers })
        })
        .collect();
    let doc = serde_json::json!({
        "model": model,
        "cap": cap,
        "counts": cc.level_counts(),
        "levels": levels,
    });
    let json = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
    match output {
        Some(path) => std::fs::write(path, json).map_err(|e| e.to_string())?,
        None => println!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_demo_functor(
    identity: bool,
    perturb: Vec<String>,
    output: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let demo = if identity {
        DemoInstance::identity(3).map_err(|e| e.to_string())?
    } else {
        DemoInstance::inclusion(3).map_err(|e| e.to_string())?
    };
    let uf = demo.functor();
    let h = uf.build_h(3).map_err(|e| e.to_string())?;
    let pi_src = pi_structure(&demo.src.universe).map_err(|e| e.to_string())?;
    let mut pi_dst = partial_pi_structure(&demo.dst.universe).map_err(|e| e.to_string())?;
    if perturb.iter().any(|p| p == "P'") {
        let (xi, _) = uf.xi().map_err(|e| e.to_string())?;
        perturb_p(&mut pi_dst, &xi, demo.dst.universe.u().0);
    }
    let theorem = uf
        .theorem_check(&h, &pi_src, &pi_dst, 1)
        .map_err(|e| e.to_string())?;

    let checks = vec![
        run_check(
            "demo-functor/hypothesis",
            "Theorem 2015.03.21.th1 (squares 2015.03.23.sq1a/b)",
            || {
                if theorem.hypothesis.is_empty() {
                    Ok(())
                } else {
                    Err(theorem.hypothesis.to_string())
                }
            },
        ),
        run_check("demo-functor/conclusion", "Theorem 2015.03.21.th1", || {
            if theorem.conclusion.is_empty() {
                Ok(())
            } else {
                Err(theorem.conclusion.to_string())
            }
        }),
    ];
    let report = Report::new(
        serde_json::json!({ "instance": if identity { "identity" } else { "inclusion" },
                             "perturb": perturb }),
        checks,
    );
    let failures = report.failures();
    emit(&report, output.as_ref())?;
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { model, cap, length, suite, output, seed, perturb } => {
            cmd_verify(model, cap, length, suite, output, seed, perturb)
        }
        Command::Enumerate { model, cap, length, output } => {
            cmd_enumerate(model, cap, length, output)
        }
        Command::DemoFunctor { identity, perturb, output } => {
            cmd_demo_functor(identity, perturb, output)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
