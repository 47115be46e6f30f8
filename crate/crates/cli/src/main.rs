mod batch;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use affine_energy::affinisation::{pec_decide_general, reduce_to_standard};
use affine_energy::cones::{decompose, in_cmin_affine};
use affine_energy::energy::{energy, infimum};
use affine_energy::oracle::{brute_infimum, brute_minimality, OracleConfig, OracleOutcome};
use affine_energy::profiles::pec_decide;
use affine_energy::rootdata::AffineType;
use affine_energy::scalar::format_rational;
use affine_energy::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::input::{Finite, Instance, Payload};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(m) => CliError::Inconsistency(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Inconsistency(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "affine-energy", version, about = "Exact energy bounds for locally affine root systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// A1, B1, C1, D1, B2, C2 or BC2; overrides the type in the instance file.
    #[arg(long = "type", value_parser = parse_type)]
    ty: Option<AffineType>,
    /// Starting lattice radius for the brute-force oracle.
    #[arg(long, default_value_t = 5)]
    radius: i64,
    /// Confirm the result with the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Worker threads for batch commands.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact infimum of the energy with a witnessing Weyl group element.
    Infimum {
        #[command(flatten)]
        common: Common,
        file: PathBuf,
    },
    /// Whether the character has minimal energy, with the violated cone conditions.
    MinEnergy {
        #[command(flatten)]
        common: Common,
        file: PathBuf,
    },
    /// Split the character into a minimal part plus a pure level-0 part.
    Decompose {
        #[command(flatten)]
        common: Common,
        file: PathBuf,
    },
    /// Decide the positive energy condition for a profile, affinisation or finite instance.
    CheckPec {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        profile: Option<PathBuf>,
        file: Option<PathBuf>,
    },
    /// Rewrite an affinisation as a standard profile accepted by check-pec.
    Reduce {
        #[command(flatten)]
        common: Common,
        file: PathBuf,
    },
    /// Solve every instance file given, or a seeded random corpus when none are.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        files: Vec<PathBuf>,
    },
    /// Check the closed forms against the brute-force oracle on a random suite.
    Selftest {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per type.
        #[arg(long, default_value_t = 30)]
        count: usize,
    },
}

fn parse_type(s: &str) -> Result<AffineType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn oracle_config(radius: i64) -> OracleConfig {
    OracleConfig { lattice_radius: radius, ..OracleConfig::default() }
}

fn finite(inst: &Instance, command: &str) -> Result<Finite, CliError> {
    match &inst.payload {
        Payload::Finite(f) => Ok(f.clone()),
        other => Err(CliError::Input(format!("{command} needs a finite instance, found a {}", other.kind()))),
    }
}

/// Value and witness, re-evaluated along the second energy path; `--oracle` adds a brute-force check.
fn solve_infimum(f: &Finite, ty: AffineType, common: &Common) -> Result<Value, CliError> {
    let inf = match infimum(&f.lam, &f.chi, ty) {
        Ok(inf) => inf,
        Err(Error::Unbounded(reason)) => {
            return Ok(json!({ "type": ty, "bounded": false, "value": null, "witness": null, "reason": reason }))
        }
        Err(e) => return Err(e.into()),
    };
    let check = energy(&f.lam, &f.chi, &inf.witness)?;
    if check != inf.value {
        return Err(CliError::Inconsistency(format!(
            "witness energy {} differs from infimum {}",
            format_rational(&check),
            format_rational(&inf.value)
        )));
    }
    let mut out = json!({
        "type": ty,
        "bounded": true,
        "value": format_rational(&inf.value),
        "witness": inf.witness.to_json(),
    });
    if common.oracle {
        match brute_infimum(&f.lam, &f.chi, ty, &oracle_config(common.radius))? {
            OracleOutcome::Certified { value, radius, .. } => {
                if value != inf.value {
                    return Err(CliError::Inconsistency(format!(
                        "oracle infimum {} differs from closed form {}",
                        format_rational(&value),
                        format_rational(&inf.value)
                    )));
                }
                out["oracle"] = json!({ "certified": true, "radius": radius });
            }
            OracleOutcome::Inconclusive { radius, reason } => {
                out["oracle"] = json!({ "certified": false, "radius": radius, "reason": reason });
            }
        }
    }
    Ok(out)
}

fn min_energy(f: &Finite, ty: AffineType, common: &Common) -> Result<Value, CliError> {
    let verdict = in_cmin_affine(&f.lam, &f.chi, ty)?;
    let violated: Vec<String> = verdict.violated.iter().map(ToString::to_string).collect();
    let mut out = json!({ "member": verdict.member, "violated": violated });
    if common.oracle {
        let brute = brute_minimality(&f.lam, &f.chi, ty, &oracle_config(common.radius))?;
        if brute.minimal != verdict.member {
            return Err(CliError::Inconsistency(format!(
                "oracle says minimal = {}, cone test says {}",
                brute.minimal, verdict.member
            )));
        }
        out["oracle"] = json!({ "minimal": brute.minimal, "radius": brute.radius });
    }
    Ok(out)
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Inconsistency(e.to_string()))
}

fn check_pec(inst: &Instance, flag: Option<AffineType>) -> Result<Value, CliError> {
    match &inst.payload {
        Payload::Profile(p) => to_json(&pec_decide(p, inst.resolve_type(flag)?)?),
        Payload::Finite(f) => to_json(&pec_decide(&f.as_profile(), inst.resolve_type(flag)?)?),
        Payload::Affinisation(a) => {
            let mut a = a.clone();
            if let Some(ty) = flag {
                a.x_std = ty;
            }
            to_json(&pec_decide_general(&a)?)
        }
    }
}

fn reduce(inst: &Instance, flag: Option<AffineType>) -> Result<Value, CliError> {
    let Payload::Affinisation(a) = &inst.payload else {
        return Err(CliError::Input(format!("reduce needs an affinisation, found a {}", inst.payload.kind())));
    };
    let mut a = a.clone();
    if let Some(ty) = flag {
        a.x_std = ty;
    }
    let r = reduce_to_standard(&a)?;
    let mut out = to_json(&r.profile)?;
    out["kind"] = json!("profile");
    out["type"] = json!(r.ty);
    out["scale"] = json!(format_rational(&r.scale));
    Ok(out)
}

fn run(cli: Cli) -> Result<Value, CliError> {
    match cli.command {
        Command::Infimum { common, file } => {
            let inst = input::read(&file)?;
            solve_infimum(&finite(&inst, "infimum")?, inst.resolve_type(common.ty)?, &common)
        }
        Command::MinEnergy { common, file } => {
            let inst = input::read(&file)?;
            min_energy(&finite(&inst, "min-energy")?, inst.resolve_type(common.ty)?, &common)
        }
        Command::Decompose { common, file } => {
            let inst = input::read(&file)?;
            let f = finite(&inst, "decompose")?;
            let dec = decompose(&f.lam, &f.chi, inst.resolve_type(common.ty)?)?;
            Ok(json!({ "chi_min": dec.chi_min, "chi_sum": dec.chi_sum }))
        }
        Command::CheckPec { common, profile, file } => {
            let path = profile
                .or(file)
                .ok_or_else(|| CliError::Input("check-pec needs a profile file".into()))?;
            check_pec(&input::read(&path)?, common.ty)
        }
        Command::Reduce { common, file } => reduce(&input::read(&file)?, common.ty),
        Command::Sweep { common, seed, count, files } => batch::with_pool(common.jobs, || {
            if files.is_empty() {
                batch::sweep_random(seed, count, &common)
            } else {
                batch::sweep_files(&files, &common)
            }
        }),
        Command::Selftest { common, seed, count } => {
            batch::with_pool(common.jobs, || batch::selftest(seed, count, common.radius))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
