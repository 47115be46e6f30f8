//! Batch commands. Work fans out over a rayon pool; results keep input order.

use std::path::PathBuf;

use affine_energy::cones::{in_cmin_affine, is_minimal_generic};
use affine_energy::energy::{infimum, CharTriple, WeightTriple};
use affine_energy::oracle::{brute_infimum, brute_minimality, OracleOutcome};
use affine_energy::rootdata::AffineType;
use affine_energy::scalar::{format_rational, rat};
use affine_energy::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::{self, Finite, Payload};
use crate::{oracle_config, solve_infimum, CliError, Common};

pub fn with_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        },
        None => work(),
    }
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=12))
}

/// Normalized instances with one to three indices, types in rotation unless one is fixed.
fn corpus(seed: u64, count: usize, fixed: Option<AffineType>) -> Vec<(AffineType, Finite)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let ty = fixed.unwrap_or(AffineType::ALL[i % AffineType::ALL.len()]);
            let dim = rng.gen_range(1..=3);
            let lam = WeightTriple::standard((0..dim).map(|_| small(&mut rng)).collect());
            let chi = CharTriple::standard((0..dim).map(|_| small(&mut rng)).collect());
            (ty, Finite { lam, chi })
        })
        .collect()
}

fn solve_finite(f: &Finite, ty: AffineType, common: &Common) -> Result<Value, CliError> {
    let mut out = solve_infimum(f, ty, common)?;
    out["lambda"] = json!(f.lam);
    out["chi"] = json!(f.chi);
    if out["bounded"] == json!(true) {
        out["member"] = json!(in_cmin_affine(&f.lam, &f.chi, ty)?.member);
    }
    Ok(out)
}

/// Input errors stay attached to their record; inconsistencies abort the batch.
fn collect(results: Vec<Result<Value, CliError>>) -> Result<Value, CliError> {
    let mut out = Vec::with_capacity(results.len());
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(mut v) => {
                v["index"] = json!(index);
                out.push(v);
            }
            Err(CliError::Input(m)) => out.push(json!({ "index": index, "error": m })),
            Err(e) => return Err(e),
        }
    }
    Ok(Value::Array(out))
}

pub fn sweep_random(seed: u64, count: usize, common: &Common) -> Result<Value, CliError> {
    let results = corpus(seed, count, common.ty)
        .par_iter()
        .map(|(ty, f)| solve_finite(f, *ty, common))
        .collect();
    Ok(json!({ "seed": seed, "results": collect(results)? }))
}

pub fn sweep_files(files: &[PathBuf], common: &Common) -> Result<Value, CliError> {
    let results = files
        .par_iter()
        .map(|path| {
            let inst = input::read(path)?;
            let ty = inst.resolve_type(common.ty)?;
            let mut v = match &inst.payload {
                Payload::Finite(f) => solve_finite(f, ty, common)?,
                Payload::Profile(p) => serde_json::to_value(affine_energy::profiles::pec_decide(p, ty)?)
                    .map_err(|e| CliError::Inconsistency(e.to_string()))?,
                Payload::Affinisation(a) => {
                    let mut a = a.clone();
                    a.x_std = ty;
                    serde_json::to_value(affine_energy::affinisation::pec_decide_general(&a)?)
                        .map_err(|e| CliError::Inconsistency(e.to_string()))?
                }
            };
            v["file"] = json!(path.display().to_string());
            v["kind"] = json!(inst.payload.kind());
            Ok(v)
        })
        .collect();
    collect(results)
}

#[derive(Default)]
struct Tally {
    instances: usize,
    minimal: usize,
    inconclusive: usize,
    mismatches: Vec<Value>,
}

/// Closed-form infimum, cone test and generic criterion against both oracles.
pub fn selftest(seed: u64, per_type: usize, radius: i64) -> Result<Value, CliError> {
    let cfg = oracle_config(radius);
    let mut jobs = Vec::new();
    for (t, ty) in AffineType::ALL.iter().enumerate() {
        jobs.extend(corpus(seed.wrapping_add(t as u64), per_type, Some(*ty)));
    }
    let rows: Vec<Result<(bool, Option<Value>, bool), CliError>> = jobs
        .par_iter()
        .map(|(ty, f)| {
            let closed = infimum(&f.lam, &f.chi, *ty)?.value;
            let oracle = brute_infimum(&f.lam, &f.chi, *ty, &cfg)?;
            let cone = in_cmin_affine(&f.lam, &f.chi, *ty)?.member;
            let generic = is_minimal_generic(&f.lam, &f.chi, *ty)?;
            let brute_minimal = brute_minimality(&f.lam, &f.chi, *ty, &cfg)?.minimal;
            let zero = closed == Rational::from_integer(0.into());
            let inconclusive = matches!(oracle, OracleOutcome::Inconclusive { .. });
            let agree = oracle.value().map_or(true, |v| *v == closed)
                && cone == zero
                && generic == zero
                && brute_minimal == zero;
            let mismatch = (!agree).then(|| {
                json!({
                    "type": ty,
                    "lambda": f.lam,
                    "chi": f.chi,
                    "infimum": format_rational(&closed),
                    "oracle": oracle.value().map(format_rational),
                    "cone": cone,
                    "generic": generic,
                    "brute_minimal": brute_minimal,
                })
            });
            Ok((zero, mismatch, inconclusive))
        })
        .collect();
    let mut tally = Tally::default();
    for row in rows {
        let (zero, mismatch, inconclusive) = row?;
        tally.instances += 1;
        tally.minimal += usize::from(zero);
        tally.inconclusive += usize::from(inconclusive);
        tally.mismatches.extend(mismatch);
    }
    if !tally.mismatches.is_empty() || tally.inconclusive > 0 {
        return Err(CliError::Inconsistency(format!(
            "{} mismatches and {} uncertified oracle runs in {} instances: {}",
            tally.mismatches.len(),
            tally.inconclusive,
            tally.instances,
            Value::Array(tally.mismatches)
        )));
    }
    Ok(json!({
        "seed": seed,
        "instances": tally.instances,
        "minimal": tally.minimal,
        "mismatches": 0,
        "inconclusive": 0,
        "pass": true,
    }))
}
