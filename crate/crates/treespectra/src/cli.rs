//! Command-line surface: spectrum assembly, certification, staircase data,
//! endpoint records, oracle comparison, identity sums, the fan pipeline,
//! and the discrepancy report.
//!
//! Exit codes: 0 on success, 1 on a mismatch or residual failure, 2 on
//! argument errors. Identical invocations produce byte-identical output.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::measure::{
    all_endpoints, lambert_partial, lambert_partial_from_one, normalize_spectrum, NormalizeScheme,
};
use crate::oracle;
use crate::polyfam::sturm_roots;
use crate::report::discrepancy_report;
use crate::spectra::{
    assemble_spectrum, certify_all, derived_family, isotropic_eigenvector, OperatorKind,
};
use crate::treegen::{build_tree, BranchingSpec};

#[derive(Debug, Parser)]
#[command(
    name = "treespectra",
    version,
    about = "Exact spectra of rooted trees with regular branching and their clique-fan generalizations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assemble a spectrum report (values, multiplicities, provenance).
    Spectrum(SpectrumArgs),
    /// Construct every eigenvector certificate and print the worst residual.
    Verify(VerifyArgs),
    /// Emit the empirical staircase CDF of a normalized adjacency spectrum.
    Staircase(StaircaseArgs),
    /// Emit limiting plateau endpoint records.
    Endpoints(EndpointsArgs),
    /// Compare an assembled spectrum against the dense eigensolver.
    OracleCompare(OracleCompareArgs),
    /// Print the totient-sum identity partial sums with tail bounds.
    Identities(IdentitiesArgs),
    /// Run the fan pipeline: closing roots vs oracle plus certificates.
    Fan(FanArgs),
    /// Run the published-coefficient discrepancy report.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// Every non-leaf has k children.
    Constant,
    /// Root has k children, other non-leaves k - 1 (regular subtree).
    Hat,
    /// Branching counts cycle through --alphas.
    Periodic,
    /// Strictly increasing branching counts from --alphas.
    Sequence,
    /// Clique fan upper-adjacency graph with parameters k and d.
    Fan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    Adjacency,
    Laplacian,
    RandomWalk,
}

impl From<OperatorArg> for OperatorKind {
    fn from(op: OperatorArg) -> Self {
        match op {
            OperatorArg::Adjacency => OperatorKind::Adjacency,
            OperatorArg::Laplacian => OperatorKind::Laplacian,
            OperatorArg::RandomWalk => OperatorKind::RandomWalk,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    /// (lambda + 2 sqrt(b)) / (4 sqrt(b)): support onto [0, 1].
    Support,
    /// (lambda + k) / (2k), as published.
    Paper,
}

impl From<SchemeArg> for NormalizeScheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Support => NormalizeScheme::SupportAffine,
            SchemeArg::Paper => NormalizeScheme::PaperAffine,
        }
    }
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// Graph family.
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Branching parameter k (constant, hat, fan).
    #[arg(long)]
    pub k: Option<u64>,
    /// Clique dimension d (fan).
    #[arg(long)]
    pub d: Option<u64>,
    /// Comma-separated branching counts (periodic, sequence).
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<u64>,
    /// Tree depth r.
    #[arg(long)]
    pub depth: usize,
}

impl SpecArgs {
    pub fn to_spec(&self) -> Result<BranchingSpec> {
        let need_k = || {
            self.k
                .ok_or_else(|| Error::InvalidSpec("this family requires --k".into()))
        };
        let spec = match self.family {
            FamilyArg::Constant => BranchingSpec::ConstantChildren { k: need_k()? },
            FamilyArg::Hat => BranchingSpec::RegularSubtree { k: need_k()? },
            FamilyArg::Periodic => BranchingSpec::Periodic {
                alphas: self.alphas.clone(),
            },
            FamilyArg::Sequence => BranchingSpec::Sequence {
                alphas: self.alphas.clone(),
            },
            FamilyArg::Fan => BranchingSpec::Fan {
                k: need_k()?,
                d: self
                    .d
                    .ok_or_else(|| Error::InvalidSpec("the fan family requires --d".into()))?,
            },
        };
        spec.validate_depth(self.depth)?;
        Ok(spec)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Operator whose spectrum to assemble.
    #[arg(long, value_enum, default_value = "adjacency")]
    pub operator: OperatorArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
}

#[derive(Debug, Args)]
pub struct StaircaseArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Normalization scheme.
    #[arg(long, value_enum, default_value = "support")]
    pub scheme: SchemeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EndpointsArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Largest first-appearance index m to include.
    #[arg(long, default_value_t = 10)]
    pub max_m: u64,
    /// Truncation of the limiting sums.
    #[arg(long, default_value_t = 60)]
    pub trunc: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OracleCompareArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Operator to compare.
    #[arg(long, value_enum, default_value = "adjacency")]
    pub operator: OperatorArg,
    /// Value tolerance for the comparison.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    /// Branching parameter of the identity.
    #[arg(long, default_value_t = 2)]
    pub k: u64,
    /// Truncation of the sums.
    #[arg(long, default_value_t = 60)]
    pub trunc: usize,
}

#[derive(Debug, Args)]
pub struct FanArgs {
    /// Copies per frontier node.
    #[arg(long)]
    pub k: u64,
    /// Clique dimension.
    #[arg(long)]
    pub d: u64,
    /// Fan depth.
    #[arg(long)]
    pub depth: usize,
    /// Value tolerance for root-vs-oracle matching.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidSpec(_)
                | Error::UnsupportedOperator { .. }
                | Error::IndexOutOfRange { .. }
                | Error::NotCoprime { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Spectrum(args) => {
            let spec = args.spec.to_spec()?;
            let report = assemble_spectrum(&spec, args.spec.depth, args.operator.into())?;
            let content = match args.output.format {
                FormatArg::Json => format!("{:#}\n", report.to_json()),
                FormatArg::Csv => report.to_csv(),
            };
            emit(&args.output, &content)?;
            Ok(0)
        }
        Command::Verify(args) => {
            let spec = args.spec.to_spec()?;
            match certify_all(&spec, args.spec.depth) {
                Ok(summary) => {
                    println!(
                        "{} depth {}: {} certificates ({} typed, {} isotropic), max residual {:.3e}",
                        spec.family_label(),
                        args.spec.depth,
                        summary.n_certificates,
                        summary.typed,
                        summary.isotropic,
                        summary.max_residual
                    );
                    Ok(0)
                }
                Err(e @ (Error::ResidualTooLarge { .. } | Error::InconsistentTotal { .. })) => {
                    eprintln!("certification failed: {e}");
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Command::Staircase(args) => {
            let spec = args.spec.to_spec()?;
            let report = assemble_spectrum(&spec, args.spec.depth, OperatorKind::Adjacency)?;
            let cdf = normalize_spectrum(&report, args.scheme.into())?;
            let content = match args.output.format {
                FormatArg::Csv => cdf.to_csv(),
                FormatArg::Json => {
                    let rows: Vec<serde_json::Value> = cdf
                        .points
                        .iter()
                        .zip(cdf.cumulative.iter())
                        .map(|(p, c)| serde_json::json!({"x": p.x, "cumulative": c}))
                        .collect();
                    format!("{:#}\n", serde_json::Value::Array(rows))
                }
            };
            emit(&args.output, &content)?;
            Ok(0)
        }
        Command::Endpoints(args) => {
            let spec = args.spec.to_spec()?;
            let records = all_endpoints(&spec, args.max_m, args.trunc)?;
            let content = match args.output.format {
                FormatArg::Json => format!("{:#}\n", serde_json::to_value(&records)?),
                FormatArg::Csv => {
                    let mut out = String::from("m,a,left,right,width,tail_bound\n");
                    for r in &records {
                        let _ = writeln!(
                            out,
                            "{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
                            r.m, r.a, r.left, r.right, r.width, r.tail_bound
                        );
                    }
                    out
                }
            };
            emit(&args.output, &content)?;
            Ok(0)
        }
        Command::OracleCompare(args) => {
            let spec = args.spec.to_spec()?;
            let operator: OperatorKind = args.operator.into();
            let report = assemble_spectrum(&spec, args.spec.depth, operator)?;
            let graph = build_tree(&spec, args.spec.depth)?;
            let matrix = oracle::dense_operator(&graph, operator)?;
            let values = oracle::sym_eigenvalues(&matrix)?;
            let clustered = oracle::cluster_multiset(&values, 1e-6)?;
            let cmp = oracle::compare_spectra(&report.as_clustered(), &clustered, args.tol);
            println!(
                "{} depth {} {}: {} distinct values, worst gap {:.3e}, {} multiplicity mismatches -> {}",
                spec.family_label(),
                args.spec.depth,
                operator.label(),
                report.entries.len(),
                cmp.worst_value_gap,
                cmp.mult_mismatches.len(),
                if cmp.matched { "MATCH" } else { "MISMATCH" }
            );
            Ok(if cmp.matched { 0 } else { 1 })
        }
        Command::Identities(args) => {
            let sum = lambert_partial(args.k, args.trunc)?;
            println!(
                "sum phi(n) (k-1)^2 / (k^n - 1), n = 2..{}, k = {}: {:.15} (tail bound {:.3e})",
                args.trunc, args.k, sum.value, sum.tail_bound
            );
            if args.k == 2 {
                let from_one = lambert_partial_from_one(args.trunc)?;
                println!(
                    "sum phi(n) / (2^n - 1), n = 1..{}: {:.15} (tail bound {:.3e})",
                    args.trunc, from_one.value, from_one.tail_bound
                );
            }
            Ok(0)
        }
        Command::Fan(args) => {
            let spec = BranchingSpec::Fan {
                k: args.k,
                d: args.d,
            };
            spec.validate_depth(args.depth)?;
            let report = assemble_spectrum(&spec, args.depth, OperatorKind::Adjacency)?;
            let family = derived_family(&spec, args.depth, OperatorKind::Adjacency)?;
            let graph = build_tree(&spec, args.depth)?;
            let closing_roots = sturm_roots(family.root_poly(args.depth + 1)?, 1e-13)?.roots;

            let mut failures = 0u64;
            let mut worst_gap = 0.0f64;
            let mut worst_residual = 0.0f64;
            for root in &closing_roots {
                let gap = report
                    .entries
                    .iter()
                    .map(|e| (e.value - root).abs())
                    .fold(f64::INFINITY, f64::min);
                worst_gap = worst_gap.max(gap);
                if gap > args.tol {
                    failures += 1;
                }
                match isotropic_eigenvector(&graph, *root, &family) {
                    Ok(cert) => worst_residual = worst_residual.max(cert.residual_inf),
                    Err(_) => failures += 1,
                }
            }
            println!(
                "fan(k={},d={}) depth {}: {} nodes, {} closing roots, worst oracle gap {:.3e}, worst certificate residual {:.3e} -> {}",
                args.k,
                args.d,
                args.depth,
                report.total_dim,
                closing_roots.len(),
                worst_gap,
                worst_residual,
                if failures == 0 { "OK" } else { "FAIL" }
            );
            if args.output.out.is_some() {
                let content = match args.output.format {
                    FormatArg::Json => format!("{:#}\n", report.to_json()),
                    FormatArg::Csv => report.to_csv(),
                };
                emit(&args.output, &content)?;
            }
            Ok(if failures == 0 { 0 } else { 1 })
        }
        Command::Report(args) => {
            let report = discrepancy_report()?;
            emit(&args.output, &format!("{report}"))?;
            Ok(0)
        }
    }
}

fn emit(output: &OutputArgs, content: &str) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}
