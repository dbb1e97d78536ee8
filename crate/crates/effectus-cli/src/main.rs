//! Command-line front end: load experiment files, run law suites, emit
//! tables and reports.
//!
//! Exit codes for `run-experiment`: 0 on success, 2 on parse errors,
//! 3 on type mismatches, 4 on tolerance violations. `check-laws` exits
//! 0 exactly when every selected law passes.

use clap::{Parser, Subcommand, ValueEnum};
use effectus::exec::RunCfg;
use effectus::io::{run_experiment_doc, ExperimentDoc};
use effectus::laws;
use effectus::pfn::Pfn;
use effectus::prob::Prob;
use effectus::quantum::{QObject, Quantum};
use effectus::{Error, LawReport};

#[derive(Parser)]
#[command(
    name = "effectus",
    about = "Process-theory workbench: experiments and law suites"
)]
struct Cli {
    /// Seed for all pseudo-random sampling; echoed in every report.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Numerical tolerance for the quantum instance; must be positive.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = parse_eps)]
    eps: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Carrier bound for exhaustive algebra checks.
    #[arg(long, global = true, default_value_t = 256)]
    max_size: usize,

    #[command(subcommand)]
    command: Command,
}

fn parse_eps(raw: &str) -> Result<f64, String> {
    let v: f64 = raw.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("tolerance must be a positive finite number".into())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Algebra,
    Effectus,
    Logic,
    Measurement,
    Duality,
    Totalization,
}

#[derive(Clone, Copy, ValueEnum)]
enum Instance {
    Pfn,
    Prob,
    Quantum,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment description file and print its tables.
    RunExperiment {
        /// Path to the experiment JSON file.
        path: String,
        /// Restrict to a specific instance (must match the file).
        #[arg(long)]
        instance: Option<Instance>,
    },
    /// Run law suites and print a report.
    CheckLaws {
        /// Which suite to run.
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Also check a finite effect algebra loaded from a JSON table.
        #[arg(long)]
        algebra_table: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let cfg = RunCfg {
        seed: cli.seed,
        eps: cli.eps,
        max_size: cli.max_size,
        parallel: true,
    };
    let code = match &cli.command {
        Command::RunExperiment { path, instance } => {
            run_experiment(path, *instance, &cfg, cli.format)
        }
        Command::CheckLaws {
            suite,
            algebra_table,
        } => check_laws(*suite, algebra_table.as_deref(), &cfg, cli.format),
    };
    std::process::exit(code);
}

fn run_experiment(path: &str, instance: Option<Instance>, cfg: &RunCfg, format: Format) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(err) => {
            eprintln!("cannot read {path}: {err}");
            return 2;
        }
    };
    let doc = match ExperimentDoc::parse(&text) {
        Ok(d) => d,
        Err(err) => {
            eprintln!("parse error: {err}");
            return 2;
        }
    };
    if let Some(inst) = instance {
        let want = match inst {
            Instance::Pfn => "pfn",
            Instance::Prob => "prob",
            Instance::Quantum => "quantum",
        };
        if doc.instance != want {
            eprintln!("type mismatch: file is for instance {:?}", doc.instance);
            return 3;
        }
    }
    match run_experiment_doc(&doc, cfg) {
        Ok(rendered) => {
            match format {
                Format::Tsv => {
                    println!("# seed\t{}", cfg.seed);
                    for r in &rendered {
                        print!("{}", r.to_tsv());
                    }
                }
                Format::Json => {
                    let body = serde_json::json!({
                        "seed": cfg.seed,
                        "tables": rendered.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                }
            }
            0
        }
        Err(err) => {
            eprintln!("{err}");
            match err {
                Error::Parse(_) | Error::InvalidTable(_) | Error::ShapeMismatch(_) => 2,
                Error::Tolerance(_) => 4,
                _ => 3,
            }
        }
    }
}

fn gather_reports(suite: Suite, cfg: &RunCfg) -> Vec<LawReport> {
    let pfn = Pfn;
    let prob = Prob;
    let quantum = Quantum::new(cfg.eps);
    let mut reports = Vec::new();
    let effectus_reports = |reports: &mut Vec<LawReport>| {
        reports.push(laws::effectus_suite(&pfn, cfg));
        reports.push(laws::effectus_suite(&prob, cfg));
        reports.push(laws::effectus_suite(&quantum, cfg));
        reports.push(laws::module_suite(&pfn, cfg));
        reports.push(laws::module_suite(&prob, cfg));
        reports.push(laws::module_suite(&quantum, cfg));
    };
    let logic_reports = |reports: &mut Vec<LawReport>| {
        reports.push(laws::logic_suite(&pfn, cfg));
        reports.push(laws::logic_suite(&prob, cfg));
        reports.push(laws::logic_suite(&quantum, cfg));
        reports.push(laws::oml_suite(&pfn, &[2, 3, 4], cfg, 300));
        reports.push(laws::oml_suite(&prob, &[2, 3], cfg, 300));
        reports.push(laws::oml_suite(
            &quantum,
            &[QObject::simple(2), QObject::simple(3)],
            cfg,
            200,
        ));
    };
    match suite {
        Suite::All => {
            reports.push(laws::algebra_suite(cfg));
            effectus_reports(&mut reports);
            logic_reports(&mut reports);
            reports.push(laws::measurement_suite(cfg));
            reports.push(effectus::duality::classical_duality_suite(2, cfg));
            reports.push(effectus::duality::classical_duality_suite(3, cfg));
            reports.push(effectus::duality::quantum_duality_suite(
                &QObject::simple(2),
                cfg,
            ));
            reports.push(effectus::totalization::totalization_suite(cfg));
        }
        Suite::Algebra => reports.push(laws::algebra_suite(cfg)),
        Suite::Effectus => effectus_reports(&mut reports),
        Suite::Logic => logic_reports(&mut reports),
        Suite::Measurement => reports.push(laws::measurement_suite(cfg)),
        Suite::Duality => {
            reports.push(effectus::duality::classical_duality_suite(2, cfg));
            reports.push(effectus::duality::classical_duality_suite(3, cfg));
            reports.push(effectus::duality::quantum_duality_suite(
                &QObject::simple(2),
                cfg,
            ));
        }
        Suite::Totalization => reports.push(effectus::totalization::totalization_suite(cfg)),
    }
    reports
}

fn algebra_table_report(path: &str, cfg: &RunCfg) -> LawReport {
    use effectus::report::{LawResult, Regime};
    let mut load_law = LawResult::new(
        "table.load",
        "the table parses and every element has a unique complement",
        Regime::Exhaustive,
    );
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(err) => {
            load_law.fail(err.to_string());
            let mut rep = LawReport::new("algebra-table");
            rep.push(load_law);
            return rep;
        }
    };
    match effectus::algebra::load_effect_algebra_json(&text, cfg) {
        Ok(_) => {
            load_law.pass_one();
            let mut rep = LawReport::new("algebra-table");
            rep.push(load_law);
            rep
        }
        Err(err) => {
            load_law.fail(err.to_string());
            let mut rep = LawReport::new("algebra-table");
            rep.push(load_law);
            rep
        }
    }
}

fn check_laws(suite: Suite, algebra_table: Option<&str>, cfg: &RunCfg, format: Format) -> i32 {
    let mut reports = gather_reports(suite, cfg);
    if let Some(path) = algebra_table {
        reports.push(algebra_table_report(path, cfg));
    }
    let all_passed = reports.iter().all(|r| r.all_passed());
    match format {
        Format::Json => {
            let body = serde_json::json!({
                "seed": cfg.seed,
                "eps": cfg.eps,
                "passed": all_passed,
                "suites": reports,
            });
            println!("{}", serde_json::to_string_pretty(&body).unwrap());
        }
        Format::Tsv => {
            println!("# seed\t{}", cfg.seed);
            println!("suite\tlaw\tregime\tchecks\tstatus\twitness");
            for r in &reports {
                for law in &r.laws {
                    let regime = match &law.regime {
                        effectus::Regime::Exhaustive => "exhaustive".to_string(),
                        effectus::Regime::Sampled { count, .. } => {
                            format!("sampled({count})")
                        }
                    };
                    println!(
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        r.suite,
                        law.id,
                        regime,
                        law.checks,
                        if law.passed { "pass" } else { "FAIL" },
                        law.witness.clone().unwrap_or_default()
                    );
                }
            }
        }
    }
    if all_passed {
        0
    } else {
        1
    }
}
