//! `logpair`: exact invariants of marked spheres, cone singularities and
//! log-smooth surface pairs from the command line.
//!
//! Every command reads a JSON document (file or stdin), echoes it back in
//! canonical form and reports the computed invariants, as JSON or as a
//! plain table. Exit code 0 is success, 1 an input problem (bad JSON, bad
//! schema, out-of-range data), 2 a refused computation (the input is
//! well-formed but the mathematics rejects it, e.g. a volume request for a
//! cone whose base is not K-semistable). Diagnostics go to stderr as a JSON
//! object with a stable `error_kind` field.

mod input;
mod report;

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use logpair::{
    destabilizing_degeneration, euler_line_arrangement, euler_orbifold_cone, euler_via_langer,
    extension_sheaf_invariants, langer_local_c2, log_chern, my_cy_check, my_fano_check,
    normalized_volume, render_rat, sbar, scan_conjecture, CaseTag, ConeClass, Error, Method,
    ScanConfig,
};

/// An error bound for the process: what to print and how to exit.
#[derive(Debug)]
pub struct CliError {
    kind: String,
    message: String,
    exit: u8,
}

impl CliError {
    /// Input-phase failure (bad JSON, bad schema, invalid data): exit 1.
    pub fn input(kind: &str, message: String) -> Self {
        Self {
            kind: kind.to_owned(),
            message,
            exit: 1,
        }
    }

    /// Library validation error during input conversion: exit 1.
    pub fn from_input(err: Error) -> Self {
        Self {
            kind: err.kind().to_owned(),
            message: err.to_string(),
            exit: 1,
        }
    }

    /// Library refusal during computation: exit 2.
    pub fn from_math(err: Error) -> Self {
        Self {
            kind: err.kind().to_owned(),
            message: err.to_string(),
            exit: 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "logpair",
    version,
    about = "Exact invariants of marked spheres, orbifold cones and log surface pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Args)]
struct IoArgs {
    /// Input file, or `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a marked sphere (positivity and singularity type).
    Classify {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Test K-stability and K-semistability of a marked sphere.
    Kstab {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Normalized volume of a cone over a K-semistable base.
    Volume {
        #[command(flatten)]
        io: IoArgs,
        /// Cone dimension parameter: the volume is lambda^(n+1) L^n with
        /// the polarization degree standing in for L^n.
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Local Euler number of an arrangement germ or a cone vertex.
    Euler {
        #[command(flatten)]
        io: IoArgs,
        /// Compute through the degree-N cover (cone input only).
        #[arg(long)]
        cover_degree: Option<u64>,
    },
    /// Quotient cone of a weighted plane germ.
    Quotient {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Destabilizing degeneration of an unstable klt arrangement germ.
    Degenerate {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Log Chern numbers of a surface pair from intersection data.
    Chern {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Miyaoka-Yau audits (Fano and Calabi-Yau) of a surface pair.
    MyCheck {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Local second Chern class of a rank-2 bundle datum.
    LangerC2 {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Exhaustively verify the Euler-number / volume identity on a grid.
    Scan {
        /// Report format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
        /// Largest weight denominator.
        #[arg(long)]
        max_denominator: u32,
        /// Largest number of lines per germ.
        #[arg(long)]
        max_points: u32,
        /// Worker count for the scan fan-out.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn main() -> ExitCode {
    // Usage problems are input errors (exit 1), not precondition
    // violations; help and version requests are successes.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprintln!(
                "{}",
                json!({ "error_kind": "UsageError", "message": err.to_string() })
            );
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok((value, format)) => {
            report::emit(&value, format);
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!(
                "{}",
                json!({ "error_kind": err.kind, "message": err.message })
            );
            ExitCode::from(err.exit)
        }
    }
}

fn read_input(io: &IoArgs) -> Result<Value, CliError> {
    let text = if io.input == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| CliError::input("IoError", format!("failed to read stdin: {e}")))?;
        buffer
    } else {
        std::fs::read_to_string(&io.input)
            .map_err(|e| CliError::input("IoError", format!("failed to read {}: {e}", io.input)))?
    };
    serde_json::from_str(&text)
        .map_err(|e| CliError::input("ParseError", format!("invalid JSON: {e}")))
}

fn case_tag_name(tag: CaseTag) -> &'static str {
    match tag {
        CaseTag::NotLogCanonical => "NotLogCanonical",
        CaseTag::LogCalabiYau => "LogCalabiYau",
        CaseTag::UnstableKlt => "UnstableKlt",
        CaseTag::StableRegime => "StableRegime",
        CaseTag::LcNotKltBoundary => "LcNotKltBoundary",
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::DirectFormula => "DirectFormula",
        Method::ViaCover => "ViaCover",
        Method::ViaLanger => "ViaLanger",
    }
}

fn cone_class_name(class: ConeClass) -> &'static str {
    match class {
        ConeClass::Klt => "Klt",
        ConeClass::LcNotKlt => "LcNotKlt",
        ConeClass::NotLc => "NotLc",
    }
}

fn run(command: Command) -> Result<(Value, OutputFormat), CliError> {
    match command {
        Command::Classify { io } => {
            let doc = read_input(&io)?;
            let sphere = input::marked_sphere(&doc)?;
            let class = sphere.classify();
            let report = report::command_report(
                "classify",
                input::sphere_doc(&sphere),
                json!({
                    "positivity": format!("{:?}", class.positivity),
                    "singularity": format!("{:?}", class.singularity),
                    "log_canonical_degree": render_rat(&sphere.log_canonical_degree()),
                }),
                vec![],
            );
            Ok((report, io.output))
        }
        Command::Kstab { io } => {
            let doc = read_input(&io)?;
            let sphere = input::marked_sphere(&doc)?;
            let report = report::command_report(
                "kstab",
                input::sphere_doc(&sphere),
                json!({
                    "k_semistable": sphere.is_k_semistable(),
                    "k_stable": sphere.is_k_stable(),
                }),
                vec![],
            );
            Ok((report, io.output))
        }
        Command::Volume { io, n } => {
            if n == 0 {
                return Err(CliError::input(
                    "SchemaError",
                    "--n must be a positive integer".to_owned(),
                ));
            }
            let doc = read_input(&io)?;
            let cone = input::cone(&doc)?;
            if !cone.base().is_k_semistable() {
                return Err(CliError::from_math(Error::NotSemistable));
            }
            let volume = if n == 1 {
                cone.normalized_volume().map_err(CliError::from_math)?
            } else {
                normalized_volume(&cone.lambda(), cone.polarization_degree(), n)
                    .map_err(CliError::from_math)?
            };
            let report = report::command_report(
                "volume",
                input::cone_doc(&cone),
                json!({
                    "lambda": render_rat(&cone.lambda()),
                    "n": n,
                    "volume": render_rat(&volume),
                    "case_tag": cone_class_name(cone.classify()),
                    "method": "DirectFormula",
                }),
                vec!["base K-semistability verified by the Troyanov criterion".to_owned()],
            );
            Ok((report, io.output))
        }
        Command::Euler { io, cover_degree } => {
            let doc = read_input(&io)?;
            // An arrangement document carries `lines`, a cone document
            // `points`; dispatch on the shape so value errors surface from
            // the right schema.
            let is_arrangement = doc.get("lines").is_some();
            if !is_arrangement && doc.get("points").is_none() {
                return Err(CliError::input(
                    "SchemaError",
                    "expected an arrangement document (`lines`) or a cone document (`points` + `polarization_degree`)"
                        .to_owned(),
                ));
            }
            let (echo, result) = if is_arrangement {
                let arrangement = input::arrangement(&doc)?;
                if cover_degree.is_some() {
                    return Err(CliError::input(
                        "SchemaError",
                        "--cover-degree applies to cone input only".to_owned(),
                    ));
                }
                (
                    input::arrangement_doc(&arrangement),
                    euler_line_arrangement(&arrangement),
                )
            } else {
                let cone = input::cone(&doc)?;
                let result = match cover_degree {
                    Some(0) => {
                        return Err(CliError::input(
                            "SchemaError",
                            "--cover-degree must be a positive integer".to_owned(),
                        ))
                    }
                    Some(n) => euler_via_langer(&cone, n).map_err(CliError::from_math)?,
                    None => euler_orbifold_cone(&cone),
                };
                (input::cone_doc(&cone), result)
            };
            let report = report::command_report(
                "euler",
                echo,
                json!({
                    "value": render_rat(&result.value),
                    "case_tag": case_tag_name(result.case_tag),
                    "method": method_name(result.method),
                }),
                vec![],
            );
            Ok((report, io.output))
        }
        Command::Quotient { io } => {
            let doc = read_input(&io)?;
            let pair = input::weighted_plane(&doc)?;
            let cone = pair.quotient().map_err(CliError::from_math)?;
            let report = report::command_report(
                "quotient",
                input::weighted_plane_doc(&pair),
                json!({
                    "cone": input::cone_doc(&cone),
                    "lambda": render_rat(&cone.lambda()),
                }),
                vec![],
            );
            Ok((report, io.output))
        }
        Command::Degenerate { io } => {
            let doc = read_input(&io)?;
            let arrangement = input::arrangement(&doc)?;
            let data = destabilizing_degeneration(&arrangement).map_err(CliError::from_math)?;
            let report = report::command_report(
                "degenerate",
                input::arrangement_doc(&arrangement),
                json!({
                    "a": data.a,
                    "b": data.b,
                    "gamma": render_rat(&data.gamma),
                    "vol_hat": render_rat(&data.vol_hat),
                }),
                vec![],
            );
            Ok((report, io.output))
        }
        Command::Chern { io } => {
            let doc = read_input(&io)?;
            let data = input::surface_chern(&doc)?;
            let chern = log_chern(&data);
            let report = report::command_report(
                "chern",
                input::surface_chern_doc(&data),
                json!({
                    "c1_sq": render_rat(&chern.c1_sq),
                    "c2": render_rat(&chern.c2),
                }),
                vec![],
            );
            Ok((report, io.output))
        }
        Command::MyCheck { io } => {
            let doc = read_input(&io)?;
            let data = input::surface_chern(&doc)?;
            let fano = my_fano_check(&data);
            let cy = my_cy_check(&data);
            let sheaf = extension_sheaf_invariants(&data, 2).map_err(CliError::from_math)?;

            let case_tag = match (fano.holds, cy.holds) {
                (true, true) => "BothHold",
                (true, false) => "FanoOnly",
                (false, true) => "CyOnly",
                (false, false) => "NeitherHolds",
            };
            let mut attestations = vec![
                "Fano audit assumes a K-semistable log-Fano pair (caller-attested)".to_owned(),
                "Calabi-Yau audit assumes K + Delta numerically trivial (caller-attested)"
                    .to_owned(),
            ];
            if !cy.c1_sq_vanishes {
                attestations.push(format!(
                    "warning: c1_sq = {} is nonzero, so the Calabi-Yau hypothesis fails numerically",
                    render_rat(&sheaf.c1_sq)
                ));
            }
            let report = report::command_report(
                "my-check",
                input::surface_chern_doc(&data),
                json!({
                    "fano": { "value": render_rat(&fano.value), "holds": fano.holds },
                    "cy": {
                        "value": render_rat(&cy.value),
                        "holds": cy.holds,
                        "c1_sq_vanishes": cy.c1_sq_vanishes,
                    },
                    "extension_sheaf": {
                        "rank": sheaf.rank,
                        "c1_sq": render_rat(&sheaf.c1_sq),
                        "c2": render_rat(&sheaf.c2),
                        "discriminant": render_rat(&sheaf.discriminant),
                    },
                    "case_tag": case_tag,
                    "method": "DirectFormula",
                }),
                attestations,
            );
            Ok((report, io.output))
        }
        Command::LangerC2 { io } => {
            let doc = read_input(&io)?;
            let bundle = input::bundle(&doc)?;
            let s = sbar(&bundle);
            let c2 = langer_local_c2(&bundle.e, &s, &bundle.d).map_err(CliError::from_math)?;
            let bound = -(&bundle.e * &bundle.e) / (logpair::rat_int(4) * &bundle.d);
            let report = report::command_report(
                "langer-c2",
                input::bundle_doc(&bundle),
                json!({
                    "sbar": render_rat(&s),
                    "local_c2": render_rat(&c2),
                    "semistable_bound": render_rat(&bound),
                    "semistable": c2 == bound,
                }),
                vec![],
            );
            Ok((report, io.output))
        }
        Command::Scan {
            output,
            max_denominator,
            max_points,
            workers,
        } => {
            if max_denominator == 0 || workers == 0 {
                return Err(CliError::input(
                    "SchemaError",
                    "--max-denominator and --workers must be positive".to_owned(),
                ));
            }
            let config = ScanConfig::new(max_denominator, max_points).with_workers(workers);
            let scan = scan_conjecture(&config);
            let violations: Vec<Value> = scan
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "weights": v.weights.iter().map(render_rat).collect::<Vec<_>>(),
                        "expected": render_rat(&v.expected),
                        "actual": render_rat(&v.actual),
                        "identity": v.identity,
                    })
                })
                .collect();
            let report = json!({
                "command": "scan",
                "config": {
                    "max_denominator": max_denominator,
                    "max_points": max_points,
                    "workers": workers,
                },
                "output": {
                    "tuples_checked": scan.tuples_checked,
                    "violations": violations,
                    "elapsed_ms": scan.elapsed.as_millis() as u64,
                },
                "attestations": [],
            });
            Ok((report, output))
        }
    }
}
