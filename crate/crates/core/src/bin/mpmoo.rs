//! Command-line harness: instance generation, experiment sweeps, oracle
//! verification, instance analysis, and plot emission.
//!
//! Exit codes: 0 on success, 1 on a verification mismatch, 2 on usage errors.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mpmoo_core::analysis::{
    analyze_instance, check_aux_fillability, lambda_eff_avg, shortcut_usefulness, Fillability,
};
use mpmoo_core::experiment::{
    parse_rows, run_experiment_bpbomst, run_experiment_mpjcg, summarize, verify_mpjcg_oracles,
    verify_tiny_instances, write_rows, write_summary, BpbomstExperimentConfig, BudgetRule,
    MpjcgExperimentConfig, OutputFormat, ResultRow,
};
use mpmoo_core::instance::{generate_bpbomst_instance, GeneratorParams, InstanceFile};
use mpmoo_core::plot::render_svg;
use num_rational::Rational64;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mpmoo",
    about = "Multi-party multi-objective consensus-search benchmarks and experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file path.
    #[arg(long)]
    out: PathBuf,
    /// Output format for result rows.
    #[arg(long, default_value = "csv", value_parser = ["csv", "jsonl"])]
    format: String,
    /// Record wall-clock milliseconds per run (off by default so that rerun
    /// outputs are byte-identical).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a planted spanning-tree instance file.
    GenInstance {
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Maximum edge weight.
        #[arg(long = "w-max", default_value_t = 10)]
        w_max: i64,
        /// Number of planted common-optimal trees (1..=3).
        #[arg(long, default_value_t = 1)]
        planted: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep the pseudo-Boolean benchmark with CPR-NSGA-II and the payoff
    /// baseline.
    RunMpjcg {
        /// Comma-separated list of bit lengths.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "10,20,30,40,50,60,70,80,90,100"
        )]
        n: Vec<usize>,
        /// Jump/gap parameter.
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        /// Evaluation budget per run.
        #[arg(long = "fe-budget", default_value = "1000000", value_parser = parse_budget)]
        fe_budget: BudgetRule,
        /// Inter-party mating probability.
        #[arg(long, default_value_t = 0.5)]
        pg: f64,
        /// Crossover probability.
        #[arg(long, default_value_t = 0.5)]
        pc: f64,
        /// Per-party population size.
        #[arg(long, default_value_t = 50)]
        pop: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep planted spanning-tree instances with CPR-NSGA-II and the
    /// independent party-wise baseline.
    RunBpbomst {
        /// Comma-separated list of vertex counts.
        #[arg(long, value_delimiter = ',', default_value = "5,6,7,8,9,10,11,12")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        /// Evaluation budget: a number, or a per-vertex rule like `20000n`.
        #[arg(long = "fe-budget", default_value = "20000n", value_parser = parse_budget)]
        fe_budget: BudgetRule,
        /// Cross-party recombination probability.
        #[arg(long, default_value_t = 0.5)]
        pg: f64,
        /// Comma-separated approximation ratios (integers or fractions).
        #[arg(long, value_delimiter = ',', default_value = "2,3,4", value_parser = parse_alpha)]
        alpha: Vec<Rational64>,
        #[arg(long = "w-max", default_value_t = 10)]
        w_max: i64,
        /// Planted trees per instance.
        #[arg(long, default_value_t = 1)]
        planted: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the exhaustive oracles against the closed forms, and the
    /// analysis invariants on the bundled tiny instances.
    VerifyOracles {
        /// Bit lengths to check (default 4..=14).
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        /// Restrict the jump parameters checked.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<usize>>,
    },
    /// Compute structural parameters of an instance file.
    AnalyzeInstance {
        /// Instance file produced by gen-instance.
        instance: PathBuf,
        /// Enumeration cap on the spanning-tree count.
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
        /// Cross-party recombination probability used in the
        /// shortcut-usefulness test.
        #[arg(long, default_value_t = 0.5)]
        pg: f64,
        /// Search-state limit per segment for the exchange-chain search.
        #[arg(long = "fill-limit", default_value_t = 100_000)]
        fill_limit: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render evaluation-count curves from a result file.
    Plot {
        /// Result file written by run-mpjcg or run-bpbomst.
        results: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_budget(text: &str) -> Result<BudgetRule, String> {
    BudgetRule::parse(text)
        .ok_or_else(|| format!("bad budget {text:?} (use e.g. 1000000 or 20000n)"))
}

fn parse_alpha(text: &str) -> Result<Rational64, String> {
    let s = text.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.parse().map_err(|e| format!("bad alpha {s:?}: {e}"))?;
            let den: i64 = den.parse().map_err(|e| format!("bad alpha {s:?}: {e}"))?;
            if den <= 0 {
                return Err(format!("bad alpha {s:?}: denominator must be positive"));
            }
            Ok(Rational64::new(num, den))
        }
        None => s
            .parse::<i64>()
            .map(Rational64::from_integer)
            .map_err(|e| format!("bad alpha {s:?}: {e}")),
    }
}

fn output_format(name: &str) -> OutputFormat {
    OutputFormat::from_name(name).expect("validated by clap")
}

fn summary_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("results");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    out.with_file_name(format!("{stem}_summary.{ext}"))
}

fn write_results(rows: &[ResultRow], output: &OutputArgs) -> Result<()> {
    let format = output_format(&output.format);
    std::fs::write(&output.out, write_rows(rows, format))
        .with_context(|| format!("writing {}", output.out.display()))?;
    let summary = summarize(rows);
    let path = summary_path(&output.out);
    std::fs::write(&path, write_summary(&summary, format))
        .with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {} rows to {}", rows.len(), output.out.display());
    println!("wrote {} summary rows to {}", summary.len(), path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GenInstance {
            n,
            seed,
            w_max,
            planted,
            out,
        } => {
            let params = GeneratorParams {
                n_planted: planted,
                ..Default::default()
            };
            let file = generate_bpbomst_instance(n, seed, w_max, &params)?;
            file.write(&out)?;
            println!(
                "wrote instance n={n} edges={} planted={} verified={} to {}",
                file.edges.len(),
                file.planted_trees.as_ref().map(|t| t.len()).unwrap_or(0),
                file.pf_com_verified,
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::RunMpjcg {
            n,
            k,
            runs,
            fe_budget,
            pg,
            pc,
            pop,
            seed,
            output,
        } => {
            let budget = match fe_budget {
                BudgetRule::Fixed(b) => b,
                BudgetRule::PerVertex(_) => {
                    bail!("run-mpjcg uses a fixed budget; per-vertex rules apply to run-bpbomst")
                }
            };
            let cfg = MpjcgExperimentConfig {
                k,
                sizes: n,
                runs,
                fe_budget: budget,
                population: pop,
                p_g: pg,
                p_c: pc,
                master_seed: seed,
                timing: output.timing,
            };
            let rows = run_experiment_mpjcg(&cfg)?;
            write_results(&rows, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::RunBpbomst {
            n,
            runs,
            fe_budget,
            pg,
            alpha,
            w_max,
            planted,
            seed,
            output,
        } => {
            let cfg = BpbomstExperimentConfig {
                sizes: n,
                runs,
                budget: fe_budget,
                p_g: pg,
                alphas: alpha,
                w_max,
                generator: GeneratorParams {
                    n_planted: planted,
                    ..Default::default()
                },
                master_seed: seed,
                timing: output.timing,
            };
            let rows = run_experiment_bpbomst(&cfg)?;
            write_results(&rows, &output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyOracles { n, k } => {
            let ns = n.unwrap_or_else(|| (4..=14).collect());
            let mut mismatches = verify_mpjcg_oracles(&ns, k.as_deref());
            mismatches.extend(verify_tiny_instances(2000));
            if mismatches.is_empty() {
                println!("verify-oracles: all checks passed (n = {ns:?})");
                Ok(ExitCode::SUCCESS)
            } else {
                for m in &mismatches {
                    eprintln!("MISMATCH: {m}");
                }
                eprintln!("verify-oracles: {} mismatches", mismatches.len());
                Ok(ExitCode::from(1))
            }
        }
        Command::AnalyzeInstance {
            instance,
            cap,
            pg,
            fill_limit,
            out,
        } => {
            let file = InstanceFile::read(&instance)?;
            let g = file.graph()?;
            let analysis = analyze_instance(&g, cap)?;
            let mut fillability = Fillability::Verified;
            for y in &analysis.pf_com {
                match check_aux_fillability(&g, y, cap, fill_limit)? {
                    Fillability::Refuted => {
                        fillability = Fillability::Refuted;
                        break;
                    }
                    Fillability::Unknown => fillability = Fillability::Unknown,
                    Fillability::Verified => {}
                }
            }
            let pg_rational = Rational64::approximate_float(pg)
                .context("p_g is not representable as a rational")?;
            let p_max = 2 * (g.objective_cap() as u64 + 1);
            let m = g.n_edges() as u64;
            let segments: Vec<serde_json::Value> = analysis
                .segments
                .iter()
                .map(|s| {
                    let useful = s.omega.map(|w| {
                        s.size > 0 && shortcut_usefulness(s.size, w.max(1), pg_rational, p_max, m)
                    });
                    serde_json::json!({
                        "reference": s.reference.0,
                        "segment_index": s.segment_index,
                        "size": s.size,
                        "cpr_good": s.omega.is_some(),
                        "omega": s.omega,
                        "shortcut_useful": useful,
                    })
                })
                .collect();
            let report = serde_json::json!({
                "schema": 1,
                "n_vertices": g.n_vertices(),
                "n_edges": g.n_edges(),
                "w_max": g.w_max(),
                "objective_cap": g.objective_cap(),
                "pf_com": analysis.pf_com.iter().map(|y| y.0).collect::<Vec<_>>(),
                "params": {
                    "c_a": analysis.params.c_a,
                    "c_min_a": analysis.params.c_min_a,
                    "n_cpr": analysis.params.n_cpr,
                    "g_cpr": analysis.params.g_cpr,
                    "omega_cpr": analysis.params.omega_cpr,
                    "c_pw": analysis.params.c_pw,
                    "lambda_fill": analysis.params.lambda_fill.to_string(),
                    "lambda_eff_avg": lambda_eff_avg(&g, cap)?.to_string(),
                },
                "fillability": match fillability {
                    Fillability::Verified => "verified",
                    Fillability::Refuted => "refuted",
                    Fillability::Unknown => "unknown",
                },
                "segments": segments,
            });
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            std::fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote analysis report to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot { results, out } => {
            let text = std::fs::read_to_string(&results)
                .with_context(|| format!("reading {}", results.display()))?;
            let format = match results.extension().and_then(|e| e.to_str()) {
                Some("jsonl") => OutputFormat::Jsonl,
                _ => OutputFormat::Csv,
            };
            let rows = parse_rows(&text, format)?;
            let title = results
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("results");
            std::fs::write(&out, render_svg(&rows, title))
                .with_context(|| format!("writing {}", out.display()))?;
            println!("wrote plot to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}
