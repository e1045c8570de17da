//! `evidfuse`: file-driven evidence fusion.
//!
//! Subcommands: `fuse` (run one combination rule over a corpus), `matrix`
//! (print a similarity matrix), `weights` (print credibility weights),
//! `trace` (per-prefix convergence table as CSV), and `reproduce` (check
//! the embedded worked examples and report deltas).
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 total conflict,
//! 3 numerical error, 4 documented-discrepancy failure in `reproduce`.

mod document;
mod render;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use evidfuse_core::{
    convergence_trace, fuse, normalize_weights, pairwise_distances, similarity_from_distance,
    support, EvidenceSet, MatrixKind, RuleKind, SimilarityMatrix, DEFAULT_C,
};

use document::{parse_subset, CliError, EvidenceDocument};
use render::{
    matrix_doc, render_matrix_table, render_report_table, render_trace_csv, render_trace_table,
    render_weights_table, weights_doc, ReportDoc, WeightStages, DEFAULT_PRECISION,
};

#[derive(Parser)]
#[command(name = "evidfuse", version, about = "Combine conflicting Dempster-Shafer evidence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Evidence document (JSON: frame, optional ordinals, bpas)
    #[arg(long)]
    input: PathBuf,

    /// Decimal places in table and CSV output
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Fuse a corpus under one combination rule
    Fuse {
        #[command(flatten)]
        common: CommonArgs,

        /// Combination rule: dempster|murphy|deng|proposed
        #[arg(long)]
        rule: String,

        /// Weighting matrix for the proposed rule: jousselme|hausdorff|combined
        #[arg(long)]
        matrix: Option<String>,

        /// Hausdorff tuning constant C
        #[arg(long, default_value_t = DEFAULT_C)]
        c: f64,

        /// Output format: table|json
        #[arg(long, default_value = "table")]
        format: String,

        /// Also print the weighting stages (distances, similarities, supports)
        #[arg(long)]
        verbose: bool,
    },
    /// Print a similarity matrix over the frame's subsets
    Matrix {
        #[command(flatten)]
        common: CommonArgs,

        /// Matrix kind: jousselme|hausdorff|combined
        #[arg(long)]
        matrix: String,

        /// Hausdorff tuning constant C
        #[arg(long, default_value_t = DEFAULT_C)]
        c: f64,

        /// Restrict rows and columns to singletons, as the worked examples print
        #[arg(long)]
        singletons: bool,

        /// Output format: table|json
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Print credibility weights for a corpus
    Weights {
        #[command(flatten)]
        common: CommonArgs,

        /// Matrix kind: jousselme|hausdorff|combined
        #[arg(long)]
        matrix: String,

        /// Hausdorff tuning constant C
        #[arg(long, default_value_t = DEFAULT_C)]
        c: f64,

        /// Also print the pipeline stages (distances, similarities, supports)
        #[arg(long)]
        verbose: bool,

        /// Output format: table|json
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Emit the per-prefix convergence table for a target subset
    Trace {
        #[command(flatten)]
        common: CommonArgs,

        /// Comma-separated rules, or "all"
        #[arg(long, default_value = "all")]
        rules: String,

        /// Target subset, e.g. "A" or "A,B"
        #[arg(long)]
        target: String,

        /// Weighting matrix for the proposed rule
        #[arg(long)]
        matrix: Option<String>,

        /// Hausdorff tuning constant C for the proposed rule
        #[arg(long, default_value_t = DEFAULT_C)]
        c: f64,

        /// Output format: csv|table
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Re-check an embedded worked example: example1|example2|example3-table1
    Reproduce {
        case: String,

        /// Decimal places in the comparison table
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Fuse {
            common,
            rule,
            matrix,
            c,
            format,
            verbose,
        } => cmd_fuse(&common, &rule, matrix.as_deref(), c, &format, verbose),
        Command::Matrix {
            common,
            matrix,
            c,
            singletons,
            format,
        } => cmd_matrix(&common, &matrix, c, singletons, &format),
        Command::Weights {
            common,
            matrix,
            c,
            verbose,
            format,
        } => cmd_weights(&common, &matrix, c, verbose, &format),
        Command::Trace {
            common,
            rules,
            target,
            matrix,
            c,
            format,
        } => cmd_trace(&common, &rules, &target, matrix.as_deref(), c, &format),
        Command::Reproduce { case, precision } => reproduce::run(&case, precision),
    }
}

fn parse_matrix(name: &str) -> Result<MatrixKind, CliError> {
    Ok(MatrixKind::from_str(name)?)
}

/// Resolves the rule name plus optional matrix override into a rule.
/// The deng rule is pinned to the jousselme matrix; only the proposed
/// rule accepts an override.
fn resolve_rule(rule: &str, matrix: Option<&str>, c: f64) -> Result<RuleKind, CliError> {
    let base = RuleKind::from_str(rule)?;
    let matrix = matrix.map(parse_matrix).transpose()?;
    match base {
        RuleKind::Dempster | RuleKind::Murphy => match matrix {
            None => Ok(base),
            Some(_) => Err(CliError::Usage(format!(
                "--matrix has no effect on the {} rule",
                base.name()
            ))),
        },
        RuleKind::Deng => match matrix {
            None | Some(MatrixKind::Jousselme) => Ok(RuleKind::Deng),
            Some(other) => Err(CliError::Usage(format!(
                "the deng rule always uses the jousselme matrix, not {other}"
            ))),
        },
        RuleKind::Proposed { .. } => Ok(RuleKind::Proposed {
            matrix: matrix.unwrap_or(MatrixKind::Combined),
            c_param: c,
        }),
    }
}

fn weight_stages(
    es: &EvidenceSet,
    kind: MatrixKind,
    c_param: f64,
) -> Result<WeightStages, CliError> {
    let matrix = SimilarityMatrix::build(es.frame(), kind, c_param)?;
    let distances = pairwise_distances(es, &matrix)?;
    let similarities = similarity_from_distance(&distances);
    let supports = support(&similarities);
    let weights = normalize_weights(&supports)?;
    Ok(WeightStages {
        kind,
        c_param,
        distances,
        similarities,
        supports,
        weights,
    })
}

fn cmd_fuse(
    common: &CommonArgs,
    rule: &str,
    matrix: Option<&str>,
    c: f64,
    format: &str,
    verbose: bool,
) -> Result<u8, CliError> {
    let rule = resolve_rule(rule, matrix, c)?;
    let es = EvidenceDocument::load(&common.input)?.evidence_set()?;
    let report = fuse(&es, rule)?;
    match format {
        "json" => {
            let doc = ReportDoc::from_report(&report);
            println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
        }
        "table" => {
            if verbose {
                if let Some((kind, c_param)) = rule.weighting_matrix() {
                    let stages = weight_stages(&es, kind, c_param)?;
                    print!("{}", render_weights_table(&stages, true, common.precision));
                }
            }
            print!("{}", render_report_table(&report, common.precision));
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown format {other:?}, expected table|json"
            )))
        }
    }
    Ok(0)
}

fn cmd_matrix(
    common: &CommonArgs,
    matrix: &str,
    c: f64,
    singletons: bool,
    format: &str,
) -> Result<u8, CliError> {
    let kind = parse_matrix(matrix)?;
    let frame = EvidenceDocument::load(&common.input)?.frame()?;
    let matrix = SimilarityMatrix::build(&frame, kind, c)?;
    match format {
        "json" => {
            let doc = matrix_doc(&matrix, singletons);
            println!("{}", serde_json::to_string_pretty(&doc).expect("matrix serializes"));
        }
        "table" => print!("{}", render_matrix_table(&matrix, singletons, common.precision)),
        other => {
            return Err(CliError::Usage(format!(
                "unknown format {other:?}, expected table|json"
            )))
        }
    }
    Ok(0)
}

fn cmd_weights(
    common: &CommonArgs,
    matrix: &str,
    c: f64,
    verbose: bool,
    format: &str,
) -> Result<u8, CliError> {
    let kind = parse_matrix(matrix)?;
    let es = EvidenceDocument::load(&common.input)?.evidence_set()?;
    let stages = weight_stages(&es, kind, c)?;
    match format {
        "json" => {
            let doc = weights_doc(&stages, verbose);
            println!("{}", serde_json::to_string_pretty(&doc).expect("weights serialize"));
        }
        "table" => print!("{}", render_weights_table(&stages, verbose, common.precision)),
        other => {
            return Err(CliError::Usage(format!(
                "unknown format {other:?}, expected table|json"
            )))
        }
    }
    Ok(0)
}

/// Parses `--rules`: "all" or a comma-separated subset, deduplicated into
/// canonical order.
fn parse_rules(list: &str, matrix: Option<&str>, c: f64) -> Result<Vec<RuleKind>, CliError> {
    if list.trim().eq_ignore_ascii_case("all") {
        let proposed = resolve_rule("proposed", matrix, c)?;
        return Ok(vec![
            RuleKind::Dempster,
            RuleKind::Murphy,
            RuleKind::Deng,
            proposed,
        ]);
    }
    let mut rules: Vec<RuleKind> = Vec::new();
    for name in list.split(',') {
        let rule = match name.trim() {
            "proposed" => resolve_rule("proposed", matrix, c)?,
            other => RuleKind::from_str(other)?,
        };
        if !rules.iter().any(|r| r.canonical_rank() == rule.canonical_rank()) {
            rules.push(rule);
        }
    }
    rules.sort_by_key(|r| r.canonical_rank());
    Ok(rules)
}

fn cmd_trace(
    common: &CommonArgs,
    rules: &str,
    target: &str,
    matrix: Option<&str>,
    c: f64,
    format: &str,
) -> Result<u8, CliError> {
    let rules = parse_rules(rules, matrix, c)?;
    let es = EvidenceDocument::load(&common.input)?.evidence_set()?;
    let target_set = parse_subset(es.frame(), target)?;
    let rows = convergence_trace(&es, &rules, target_set)?;
    let canonical_target = target_set.label_string(es.frame());
    match format {
        "csv" => print!("{}", render_trace_csv(&rows, &canonical_target, common.precision)),
        "table" => print!("{}", render_trace_table(&rows, &canonical_target, common.precision)),
        other => {
            return Err(CliError::Usage(format!(
                "unknown format {other:?}, expected csv|table"
            )))
        }
    }
    Ok(0)
}
