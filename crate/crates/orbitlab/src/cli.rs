//! Command-line surface.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbitlab_core::cycles::make_cycle;
use orbitlab_core::group::{check_join_generation, generates_full_group};
use orbitlab_core::oracle::brute_min_graphing_cost;
use orbitlab_core::perm::support_sum;
use orbitlab_core::pipeline::{run_pipeline, Mode, PipelineConfig};
use orbitlab_core::relations::{
    cost_graphing, cost_relation, generate_relation, in_full_group, is_ergodic, join,
    relation_of_permutations,
};
use orbitlab_core::{FiniteSpace, Rational};
use serde_json::{json, Value};

use crate::formats::{self, FormatError, GraphingJson, PartitionJson, PermutationJson};
use crate::parallel;
use crate::report::{fill_pipeline, perms, rational, Report};

#[derive(Debug, Parser)]
#[command(
    name = "orbitlab",
    version,
    about = "Certified finite models of graphings, cost and full groups"
)]
pub struct Cli {
    /// Accepted for forward compatibility; every construction is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a graphing is a pre-p-cycle in the given order.
    ValidatePrecycle {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build the p-cycle of a pre-p-cycle.
    MakeCycle {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Generated relations, cost and joins.
    Relation {
        #[command(subcommand)]
        action: RelationCommand,
    },
    /// Full-group membership and generation certificates.
    Verify {
        #[command(subcommand)]
        action: VerifyCommand,
    },
    /// Build and certify n + 1 generators of a full group.
    Pipeline(PipelineArgs),
    /// Exhaustive ground truth at tiny sizes.
    Oracle {
        #[command(subcommand)]
        action: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum RelationCommand {
    Generate {
        #[arg(long)]
        graphing: PathBuf,
    },
    Cost {
        #[arg(
            long,
            conflicts_with = "graphing",
            required_unless_present = "graphing"
        )]
        relation: Option<PathBuf>,
        #[arg(long)]
        graphing: Option<PathBuf>,
    },
    Join {
        #[arg(long, num_args = 1.., required = true)]
        relation: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    Membership {
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        relation: PathBuf,
    },
    Generation {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        relation: PathBuf,
    },
    Join {
        #[arg(long, num_args = 1.., required = true)]
        relation: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    A,
    B,
    Both,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long = "N")]
    pub points: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub graphing: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    pub mode: ModeArg,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    MinCost {
        #[arg(long)]
        relation: PathBuf,
    },
    MinGens {
        #[arg(long)]
        relation: PathBuf,
    },
    MinSupport {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] orbitlab_core::Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn core<T, E: Into<orbitlab_core::Error>>(r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Core(e.into()))
}

/// Process outcome: exit code and the report to print.
pub struct Outcome {
    pub code: i32,
    pub report: Report,
    pub summary: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE_CERTIFICATE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs one command; errors become exit code 2 with an error report.
pub fn execute(cli: &Cli) -> Outcome {
    let started = Instant::now();
    let name = command_name(&cli.command);
    let mut outcome = match run(cli) {
        Ok(report) => {
            let code = if report.all_hold() {
                EXIT_OK
            } else {
                EXIT_FALSE_CERTIFICATE
            };
            let summary = summarize(&report);
            Outcome {
                code,
                report,
                summary,
            }
        }
        Err(err) => {
            let mut report = Report::new(name, json!({ "seed": cli.seed }));
            report.error = Some(err.to_string());
            Outcome {
                code: EXIT_USAGE,
                summary: format!("{name}: error: {err}"),
                report,
            }
        }
    };
    outcome.report.timing_ms = started.elapsed().as_millis() as u64;
    if let Some(path) = &cli.out {
        if let Err(source) = std::fs::write(path, outcome.report.to_json()) {
            let err = CliError::Write {
                path: path.display().to_string(),
                source,
            };
            outcome.summary = format!("{name}: error: {err}");
            outcome.code = EXIT_USAGE;
        }
    }
    outcome
}

fn summarize(report: &Report) -> String {
    let certs = report.certificates.len();
    let true_certs = report
        .certificates
        .iter()
        .filter(|c| c.certificate.generates)
        .count();
    let checks = report.checks.len();
    let true_checks = report.checks.iter().filter(|c| c.holds).count();
    format!(
        "{}: {true_certs}/{certs} certificates true, {true_checks}/{checks} checks hold",
        report.command
    )
}

pub fn command_name(command: &Command) -> &'static str {
    match command {
        Command::ValidatePrecycle { .. } => "validate-precycle",
        Command::MakeCycle { .. } => "make-cycle",
        Command::Relation { action } => match action {
            RelationCommand::Generate { .. } => "relation generate",
            RelationCommand::Cost { .. } => "relation cost",
            RelationCommand::Join { .. } => "relation join",
        },
        Command::Verify { action } => match action {
            VerifyCommand::Membership { .. } => "verify membership",
            VerifyCommand::Generation { .. } => "verify generation",
            VerifyCommand::Join { .. } => "verify join",
        },
        Command::Pipeline(_) => "pipeline",
        Command::Oracle { action } => match action {
            OracleCommand::MinCost { .. } => "oracle min-cost",
            OracleCommand::MinGens { .. } => "oracle min-gens",
            OracleCommand::MinSupport { .. } => "oracle min-support",
        },
    }
}

fn path(p: &Path) -> Value {
    Value::String(p.display().to_string())
}

fn space(n: usize) -> Result<FiniteSpace, CliError> {
    core(FiniteSpace::new(n))
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let name = command_name(&cli.command);
    let seed = cli.seed;
    match &cli.command {
        Command::ValidatePrecycle { input } => {
            let cycle = formats::read_precycle(input)?;
            let mut report = Report::new(name, json!({ "in": path(input), "seed": seed }));
            report.results = json!({
                "valid": true,
                "p": cycle.p(),
                "block_size": cycle.block_size(),
                "precycle": GraphingJson::from(&cycle),
            });
            Ok(report)
        }
        Command::MakeCycle { input } => {
            let cycle = formats::read_precycle(input)?;
            let c = make_cycle(&cycle);
            let sizes = c.orbit_sizes();
            let p = cycle.p();
            let mut report = Report::new(
                name,
                json!({ "in": path(input), "precycle": GraphingJson::from(&cycle), "seed": seed }),
            );
            report.results = json!({
                "p": p,
                "permutation": PermutationJson::from(&c),
                "cycle_notation": c.to_string(),
                "orbit_sizes": sizes,
                "orbits_of_size_p": sizes.iter().filter(|&&s| s == p).count(),
                "support_measure": rational(&c.support_measure()),
            });
            report.check(
                "orbit sizes are 1 or p",
                sizes.iter().all(|&s| s == 1 || s == p),
            );
            report.check(
                "C restricted to each dom phi_i equals phi_i",
                cycle.maps().iter().all(|m| m.agrees_with(&c)),
            );
            Ok(report)
        }
        Command::Relation { action } => run_relation(name, seed, action),
        Command::Verify { action } => run_verify(name, seed, action),
        Command::Pipeline(args) => {
            let mut config = PipelineConfig::new(args.n, args.points, args.p, args.m);
            config.seed = seed;
            let mut graphing_json = Value::Null;
            if let Some(g) = &args.graphing {
                let graphing = formats::read_graphing(g)?;
                graphing_json = json!(GraphingJson::from(&graphing));
                config.graphing = Some(graphing);
            }
            let mode = match args.mode {
                ModeArg::A => Mode::A,
                ModeArg::B => Mode::B,
                ModeArg::Both => Mode::Both,
            };
            let run = core(run_pipeline(&config, mode))?;
            let mut report = Report::new(
                name,
                json!({
                    "n": args.n, "N": args.points, "p": args.p, "m": args.m,
                    "graphing": graphing_json, "mode": mode.name(), "seed": seed,
                }),
            );
            fill_pipeline(&mut report, &run);
            Ok(report)
        }
        Command::Oracle { action } => run_oracle(name, seed, action),
    }
}

fn run_relation(
    name: &str,
    seed: Option<u64>,
    action: &RelationCommand,
) -> Result<Report, CliError> {
    match action {
        RelationCommand::Generate { graphing } => {
            let g = formats::read_graphing(graphing)?;
            let r = core(generate_relation(&g, space(g.space_size())?))?;
            let mut report = Report::new(
                name,
                json!({ "graphing": GraphingJson::from(&g), "seed": seed }),
            );
            report.results = json!({
                "relation": PartitionJson::from(&r),
                "class_count": r.class_count(),
                "ergodic": is_ergodic(&r),
                "cost_graphing": rational(&cost_graphing(&g)),
                "cost_relation": rational(&cost_relation(&r)),
            });
            report.check(
                "cost(graphing) >= cost(relation)",
                cost_graphing(&g) >= cost_relation(&r),
            );
            Ok(report)
        }
        RelationCommand::Cost { relation, graphing } => {
            if let Some(g) = graphing {
                let g = formats::read_graphing(g)?;
                let r = core(generate_relation(&g, space(g.space_size())?))?;
                let mut report = Report::new(
                    name,
                    json!({ "graphing": GraphingJson::from(&g), "seed": seed }),
                );
                report.results = json!({
                    "cost_graphing": rational(&cost_graphing(&g)),
                    "cost_relation": rational(&cost_relation(&r)),
                });
                report.check(
                    "cost(graphing) >= cost(relation)",
                    cost_graphing(&g) >= cost_relation(&r),
                );
                return Ok(report);
            }
            let file = relation.as_ref().expect("clap requires one of the two");
            let r = formats::read_partition(file)?;
            let mut report = Report::new(
                name,
                json!({ "relation": PartitionJson::from(&r), "seed": seed }),
            );
            report.results = json!({
                "cost_relation": rational(&cost_relation(&r)),
                "class_count": r.class_count(),
            });
            Ok(report)
        }
        RelationCommand::Join { relation } => {
            let family = relation
                .iter()
                .map(|p| formats::read_partition(p))
                .collect::<Result<Vec<_>, _>>()?;
            let joined = core(join(&family))?;
            let inputs: Vec<_> = family.iter().map(PartitionJson::from).collect();
            let mut report = Report::new(name, json!({ "relations": inputs, "seed": seed }));
            report.results = json!({
                "relation": PartitionJson::from(&joined),
                "ergodic": is_ergodic(&joined),
            });
            Ok(report)
        }
    }
}

fn run_verify(name: &str, seed: Option<u64>, action: &VerifyCommand) -> Result<Report, CliError> {
    match action {
        VerifyCommand::Membership { perm, relation } => {
            let t = formats::read_permutation(perm)?;
            let r = formats::read_partition(relation)?;
            let member = in_full_group(&t, &r);
            let mut report = Report::new(
                name,
                json!({ "perm": PermutationJson::from(&t), "relation": PartitionJson::from(&r), "seed": seed }),
            );
            report.results = json!({ "in_full_group": member });
            report.check("T is in [R]", member);
            Ok(report)
        }
        VerifyCommand::Generation { gens, relation } => {
            let gens = formats::read_generators(gens)?;
            let r = formats::read_partition(relation)?;
            let cert = core(generates_full_group(&gens, &r))?;
            let mut report = Report::new(
                name,
                json!({ "generators": perms(&gens), "relation": PartitionJson::from(&r), "seed": seed }),
            );
            let sum = support_sum(&gens);
            report.results = json!({
                "generator_count": gens.len(),
                "support_sum": rational(&sum),
                "cost_relation": rational(&cost_relation(&r)),
            });
            report.certify("generators -> [R]", &cert);
            if cert.generates {
                report.check("support sum >= cost(R)", sum >= cost_relation(&r));
            }
            Ok(report)
        }
        VerifyCommand::Join { relation } => {
            let family = relation
                .iter()
                .map(|p| formats::read_partition(p))
                .collect::<Result<Vec<_>, _>>()?;
            let cert = core(check_join_generation(&family))?;
            let joined = core(join(&family))?;
            let inputs: Vec<_> = family.iter().map(PartitionJson::from).collect();
            let mut report = Report::new(name, json!({ "relations": inputs, "seed": seed }));
            report.results = json!({ "join": PartitionJson::from(&joined) });
            report.certify("union of [R_i] -> [join]", &cert);
            Ok(report)
        }
    }
}

fn run_oracle(name: &str, seed: Option<u64>, action: &OracleCommand) -> Result<Report, CliError> {
    let threads = parallel::thread_count();
    match action {
        OracleCommand::MinCost { relation } => {
            let r = formats::read_partition(relation)?;
            let found = core(brute_min_graphing_cost(&r))?;
            let optimum = found.optimum.expect("always feasible");
            let closed = cost_relation(&r);
            let mut report = Report::new(
                name,
                json!({ "relation": PartitionJson::from(&r), "seed": seed }),
            );
            report.results = json!({
                "optimum": rational(&optimum),
                "witness": found.witness,
                "search_space_size": found.search_space_size,
                "exhaustive": found.exhaustive,
                "cost_relation": rational(&closed),
            });
            report.check(
                "brute-force minimum equals (N - #classes)/N",
                optimum == closed,
            );
            Ok(report)
        }
        OracleCommand::MinGens { relation } => {
            let r = formats::read_partition(relation)?;
            let found = core(parallel::min_generators(&r, threads))?;
            let t = found.optimum.expect("always feasible");
            let cost = cost_relation(&r);
            let floor_plus_one = (cost.to_integer() + 1) as usize;
            let mut report = Report::new(
                name,
                json!({ "relation": PartitionJson::from(&r), "seed": seed }),
            );
            report.results = json!({
                "optimum": t,
                "witness": perms(&found.witness),
                "search_space_size": found.search_space_size,
                "exhaustive": found.exhaustive,
                "cost_relation": rational(&cost),
                "floor_cost_plus_one": floor_plus_one,
                "deviation": t as i64 - floor_plus_one as i64,
            });
            let cert = core(generates_full_group(&found.witness, &r))?;
            report.certify("witness -> [R]", &cert);
            let sum = support_sum(&found.witness);
            report.check("witness support sum >= cost(R)", sum >= cost);
            Ok(report)
        }
        OracleCommand::MinSupport { relation, t } => {
            let r = formats::read_partition(relation)?;
            let found = core(parallel::min_generating_support(&r, *t, threads))?;
            let cost = cost_relation(&r);
            let mut report = Report::new(
                name,
                json!({ "relation": PartitionJson::from(&r), "t": t, "seed": seed }),
            );
            let gap = found.optimum.map(|o| o - cost);
            report.results = json!({
                "t": t,
                "feasible": found.optimum.is_some(),
                "optimum": found.optimum.as_ref().map(rational),
                "witness": perms(&found.witness),
                "search_space_size": found.search_space_size,
                "exhaustive": found.exhaustive,
                "cost_relation": rational(&cost),
                "gap": gap.as_ref().map(rational),
                "strict_gap": gap.is_some_and(|g| g > Rational::from_integer(0)),
            });
            if let Some(optimum) = found.optimum {
                let cert = core(generates_full_group(&found.witness, &r))?;
                report.certify("witness -> [R]", &cert);
                report.check("optimum >= cost(R)", optimum >= cost);
                let relation_of_witness =
                    core(relation_of_permutations(r.space_size(), &found.witness))?;
                report.check("witness generates R", relation_of_witness == r);
            }
            Ok(report)
        }
    }
}
