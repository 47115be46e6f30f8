//! Acceptance suite: eleven exact checks, one PASS/FAIL line each.
//!
//! Runs as a plain binary so the verdict lines always reach the terminal.

use std::process::ExitCode;
use std::time::Instant;

use affine_energy::affinisation::{pec_decide_general, transported_energy, AffinisationInstance, Site};
use affine_energy::cones::{decompose, in_cmin_affine, is_minimal_generic};
use affine_energy::energy::{energy, infimum, infimum_dp, translate, CharTriple, WeightTriple};
use affine_energy::oracle::{brute_infimum, brute_minimality, radius_minimum, OracleConfig, OracleOutcome};
use affine_energy::profiles::{pec_decide, CohortProfile, Entry};
use affine_energy::rootdata::{flat, sharp, AffineType};
use affine_energy::weyl::{act, enumerate, inverse, permutations, sign_vectors, WeylElement};
use affine_energy::{Error, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const TYPES: [AffineType; 7] = AffineType::ALL;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

fn z(n: i64) -> Rational {
    q(n, 1)
}

/// `p/q` with `|p| <= 12` and `1 <= q <= 12`.
fn small(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(-12..=12), rng.gen_range(1..=12))
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let x = small(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn positive(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(1..=12), rng.gen_range(1..=12))
}

/// Values on a coarse grid, so that profiles land near the cone boundaries.
fn grid(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    let d = [1, 2, 3, 4, 6][rng.gen_range(0..5)];
    q(rng.gen_range(-span * d..=span * d), d)
}

fn normalized_instance(rng: &mut ChaCha8Rng, dim: usize) -> (WeightTriple, CharTriple) {
    (
        WeightTriple::standard((0..dim).map(|_| small(rng)).collect()),
        CharTriple::standard((0..dim).map(|_| small(rng)).collect()),
    )
}

fn general_instance(rng: &mut ChaCha8Rng, dim: usize) -> (WeightTriple, CharTriple) {
    (
        WeightTriple::new(nonzero(rng), (0..dim).map(|_| small(rng)).collect(), small(rng)),
        CharTriple::new(small(rng), (0..dim).map(|_| small(rng)).collect(), nonzero(rng)),
    )
}

/// A uniformly chosen sign pattern and permutation with a small lattice translation.
fn random_element(rng: &mut ChaCha8Rng, ty: AffineType, dim: usize) -> WeylElement {
    let sigma = sign_vectors(ty, dim).choose(rng).expect("nonempty").clone();
    let w = permutations(dim).choose(rng).expect("nonempty").clone();
    let mut x: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
    match ty {
        AffineType::A1 => {
            let s: i64 = x[..dim - 1].iter().sum();
            x[dim - 1] = -s;
        }
        AffineType::B1 | AffineType::D1 | AffineType::C2 => {
            if x.iter().sum::<i64>() % 2 != 0 {
                x[dim - 1] += 1;
            }
            if ty == AffineType::D1 && dim == 1 {
                x[0] = 0;
            }
        }
        AffineType::B2 => x.iter_mut().for_each(|v| *v *= 2),
        AffineType::C1 | AffineType::BC2 => {}
    }
    let g = WeylElement { ty, x, sigma, w };
    g.validate().expect("sampled element is valid");
    g
}

struct Report {
    lines: Vec<String>,
    failed: usize,
}

impl Report {
    fn record(&mut self, n: usize, name: &str, ok: bool, detail: String, started: Instant) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        let line = format!(
            "criterion {n:>2} {verdict} {name}: {detail} ({:.1}s)",
            started.elapsed().as_secs_f64()
        );
        println!("{line}");
        if !ok {
            self.failed += 1;
        }
        self.lines.push(line);
    }
}

struct SuiteRow {
    ty: AffineType,
    lam: WeightTriple,
    chi: CharTriple,
    closed: Rational,
    oracle: OracleOutcome,
    cone: bool,
    generic: bool,
    brute_minimal: bool,
}

/// The shared random suite: 500 normalized instances per type, up to three indices.
fn oracle_suite() -> Vec<SuiteRow> {
    let mut jobs = Vec::new();
    for (t, ty) in TYPES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + t as u64);
        for _ in 0..500 {
            let dim = rng.gen_range(1..=3);
            let (lam, chi) = normalized_instance(&mut rng, dim);
            jobs.push((*ty, lam, chi));
        }
    }
    let cfg = OracleConfig { lattice_radius: 5, max_support: 3, ..OracleConfig::default() };
    jobs.into_par_iter()
        .map(|(ty, lam, chi)| {
            let closed = infimum(&lam, &chi, ty).expect("infimum").value;
            let oracle = brute_infimum(&lam, &chi, ty, &cfg).expect("oracle");
            let cone = in_cmin_affine(&lam, &chi, ty).expect("cone").member;
            let generic = is_minimal_generic(&lam, &chi, ty).expect("generic");
            let brute_minimal = brute_minimality(&lam, &chi, ty, &cfg).expect("brute minimality").minimal;
            SuiteRow { ty, lam, chi, closed, oracle, cone, generic, brute_minimal }
        })
        .collect()
}

fn criterion_1(report: &mut Report, suite: &[SuiteRow], started: Instant) {
    let mut mismatches = 0;
    let mut inconclusive = 0;
    for row in suite {
        match &row.oracle {
            OracleOutcome::Certified { value, .. } => {
                if *value != row.closed {
                    mismatches += 1;
                    eprintln!("  mismatch {} {:?} {:?}: {} vs {}", row.ty, row.lam.l0, row.chi.c0, row.closed, value);
                }
            }
            OracleOutcome::Inconclusive { reason, .. } => {
                inconclusive += 1;
                eprintln!("  inconclusive {}: {reason}", row.ty);
            }
        }
    }
    report.record(
        1,
        "oracle equivalence",
        mismatches == 0 && inconclusive == 0,
        format!("{} instances, {mismatches} mismatches, {inconclusive} uncertified", suite.len()),
        started,
    );
}

fn criterion_2(report: &mut Report, suite: &[SuiteRow], started: Instant) {
    let mut disagreements = 0;
    let mut minimal = 0;
    for row in suite {
        let zero = row.closed.is_zero();
        if zero {
            minimal += 1;
        }
        if !(row.cone == zero && row.generic == zero && row.brute_minimal == zero) {
            disagreements += 1;
            eprintln!(
                "  {} {:?} {:?}: inf==0 {zero}, cone {}, generic {}, brute {}",
                row.ty, row.lam.l0, row.chi.c0, row.cone, row.generic, row.brute_minimal
            );
        }
    }
    report.record(
        2,
        "minimality characterizations agree",
        disagreements == 0,
        format!("{} instances ({minimal} minimal), {disagreements} disagreements", suite.len()),
        started,
    );
}

fn criterion_3(report: &mut Report) {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0usize;
    let mut bad = 0usize;
    for i in 0..100 {
        let ty = TYPES[i % 7];
        let dim = rng.gen_range(1..=3);
        let (lam, chi) = general_instance(&mut rng, dim);
        let factor = &lam.lc * &chi.cd;
        let lam_st = WeightTriple::standard(lam.l0.iter().map(|x| x / &lam.lc).collect());
        let chi_st = CharTriple::standard(chi.c0.iter().map(|x| x / &chi.cd).collect());
        for g in enumerate(ty, dim, 1) {
            checked += 1;
            let lhs = energy(&lam, &chi, &g).expect("energy");
            let rhs = &factor * energy(&lam_st, &chi_st, &g).expect("energy");
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    report.record(3, "scaling identity", bad == 0, format!("100 instances, {checked} elements, {bad} failures"), started);
}

fn criterion_4(report: &mut Report) {
    let started = Instant::now();
    let mut jobs = Vec::new();
    for (t, ty) in TYPES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(4000 + t as u64);
        for _ in 0..100 {
            let dim = rng.gen_range(1..=3);
            let (lam, chi) = normalized_instance(&mut rng, dim);
            let step = if *ty == AffineType::B2 { 2 } else { 1 };
            let m: Vec<i64> = (0..dim).map(|_| step * rng.gen_range(-3..=3)).collect();
            jobs.push((*ty, lam, chi, m));
        }
    }
    let results: Vec<(bool, bool)> = jobs
        .into_par_iter()
        .map(|(ty, lam, chi, m)| {
            let (lam_m, chi_m) = translate(&lam, &chi, &m, ty).expect("translate");
            let a = infimum(&lam, &chi, ty).expect("infimum").value;
            let b = infimum(&lam_m, &chi_m, ty).expect("infimum").value;
            let shift = m.iter().map(|v| v.abs()).max().unwrap_or(0);
            let cfg = OracleConfig { lattice_radius: 5 + shift, max_support: 3, ..OracleConfig::default() };
            let confirmed = brute_infimum(&lam_m, &chi_m, ty, &cfg).expect("oracle").value() == Some(&b);
            (a == b, confirmed)
        })
        .collect();
    let unequal = results.iter().filter(|r| !r.0).count();
    let unconfirmed = results.iter().filter(|r| !r.1).count();
    report.record(
        4,
        "translation invariance",
        unequal == 0 && unconfirmed == 0,
        format!("{} translations, {unequal} unequal, {unconfirmed} not confirmed by the oracle", results.len()),
        started,
    );
}

fn criterion_5(report: &mut Report) {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let jobs: Vec<_> = (0..100)
        .map(|_| {
            let dim = rng.gen_range(1..=3);
            normalized_instance(&mut rng, dim)
        })
        .collect();
    let cfg = OracleConfig { max_support: 3, ..OracleConfig::default() };
    let bad = jobs
        .into_par_iter()
        .filter(|(lam, chi)| {
            let half_lam = WeightTriple::standard(lam.l0.iter().map(|x| x / z(2)).collect());
            let half_chi = CharTriple::standard(chi.c0.iter().map(|x| x / z(2)).collect());
            let b2 = infimum(lam, chi, AffineType::B2).expect("infimum").value;
            let c1 = infimum(&half_lam, &half_chi, AffineType::C1).expect("infimum").value;
            let brute = brute_infimum(lam, chi, AffineType::B2, &cfg).expect("oracle");
            b2 != z(4) * c1 || brute.value() != Some(&b2)
        })
        .count();
    report.record(5, "quarter identity for B2", bad == 0, format!("100 instances, {bad} failures"), started);
}

/// Profile in the main case `lambda_c chi_d > 0`, values on a coarse grid.
fn main_profile(rng: &mut ChaCha8Rng, span: i64) -> CohortProfile {
    let lc = positive(rng);
    let cd = positive(rng);
    let (lc, cd) = if rng.gen_bool(0.25) { (-lc, -cd) } else { (lc, cd) };
    let cohorts = (0..rng.gen_range(1..=3))
        .map(|_| Entry::new(&lc * grid(rng, 2), &cd * grid(rng, span)))
        .collect();
    let exceptions = (0..rng.gen_range(0..=2))
        .map(|_| Entry::new(&lc * grid(rng, 3), &cd * grid(rng, 3)))
        .collect();
    CohortProfile::new(lc, cd, cohorts, exceptions)
}

fn criterion_6(report: &mut Report) {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let collapse = [AffineType::B1, AffineType::D1, AffineType::C2, AffineType::BC2, AffineType::C1];
    let mut split = 0;
    let mut yes = 0;
    for _ in 0..200 {
        let p = main_profile(&mut rng, 1);
        let verdicts: Vec<bool> = collapse.iter().map(|&ty| pec_decide(&p, ty).expect("pec").pec).collect();
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            split += 1;
            eprintln!("  split verdicts {verdicts:?} on {}", serde_json::to_string(&p).unwrap());
        }
        if verdicts[0] {
            yes += 1;
        }
    }
    // A1 <= D1 <= B1 = C2 <= BC2 = C1 as groups, so infima go the other way.
    let chain = [AffineType::A1, AffineType::D1, AffineType::B1, AffineType::C2, AffineType::BC2, AffineType::C1];
    let mut broken = 0;
    for _ in 0..200 {
        let dim = rng.gen_range(1..=4);
        let (lam, chi) = normalized_instance(&mut rng, dim);
        let inf: Vec<Rational> = chain.iter().map(|&ty| infimum(&lam, &chi, ty).expect("infimum").value).collect();
        let ok = inf[0] >= inf[1] && inf[1] >= inf[2] && inf[2] == inf[3] && inf[3] >= inf[4] && inf[4] == inf[5];
        if !ok {
            broken += 1;
        }
    }
    report.record(
        6,
        "type collapse",
        split == 0 && broken == 0,
        format!("200 profiles ({yes} with PEC), {split} split verdicts; 200 chains, {broken} out of order"),
        started,
    );
}

fn criterion_7(report: &mut Report) {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    for i in 0..500 {
        let ty = TYPES[i % 7];
        let dim = rng.gen_range(1..=4);
        let (lam, chi) = general_instance(&mut rng, dim);
        let g = random_element(&mut rng, ty, dim);
        let mu = lam.as_dual();
        let v = chi.as_triple();
        let left = flat(&act(&g, &sharp(&mu))).eval(&v) - mu.eval(&v);
        let right = mu.eval(&act(&inverse(&g), &v).sub(&v));
        let (lib_left, lib_right) = affine_energy::energy::pairing_adjoint(&lam, &chi, &g).expect("adjoint");
        if left != right || lib_left != left || lib_right != right {
            bad += 1;
        }
    }
    report.record(7, "adjunction", bad == 0, format!("500 triples, {bad} failures"), started);
}

fn criterion_8(report: &mut Report) {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut not_decreasing = 0;
    let mut not_flagged = 0;
    for i in 0..70 {
        let ty = TYPES[i % 7];
        let dim = rng.gen_range(2..=3);
        let (mut lam, chi) = normalized_instance(&mut rng, dim);
        lam.lc = -positive(&mut rng);
        let step = if ty == AffineType::B2 { 2 } else { 1 };
        let minima: Vec<Rational> =
            (1..=4).map(|r| radius_minimum(&lam, &chi, ty, step * r).expect("radius minimum").0).collect();
        if !minima.windows(2).all(|w| w[1] < w[0]) {
            not_decreasing += 1;
        }
        if !matches!(infimum(&lam, &chi, ty), Err(Error::Unbounded(_))) {
            not_flagged += 1;
        }
    }

    // lambda_c = 0: A1 needs constant lambda0, the others need lambda0 = 0.
    let mut mismatched = 0;
    let mut energy_bad = 0;
    let mut yes = 0;
    for i in 0..100 {
        let ty = TYPES[i % 7];
        let palette = [z(0), z(0), q(1, 2), z(-1)];
        let value = |rng: &mut ChaCha8Rng| palette[rng.gen_range(0..palette.len())].clone();
        let shared = value(&mut rng);
        let pick = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.6) { shared.clone() } else { value(rng) };
        let cohorts = (0..rng.gen_range(1..=3)).map(|_| Entry::new(pick(&mut rng), small(&mut rng))).collect();
        let exceptions = (0..rng.gen_range(0..=1)).map(|_| Entry::new(pick(&mut rng), small(&mut rng))).collect();
        let p = CohortProfile::new(z(0), nonzero(&mut rng), cohorts, exceptions);
        let lambdas: Vec<&Rational> = p.cohorts.iter().chain(&p.exceptions).map(|e| &e.lambda).collect();
        let expected = if ty == AffineType::A1 {
            lambdas.iter().all(|l| *l == lambdas[0])
        } else {
            lambdas.iter().all(|l| l.is_zero())
        };
        let verdict = pec_decide(&p, ty).expect("pec").pec;
        if verdict != expected {
            mismatched += 1;
        }
        if expected {
            yes += 1;
        }
        let (lam, chi) = p.truncate(2);
        let dim = lam.dim();
        if expected {
            if enumerate(ty, dim.min(3), 1).any(|g| {
                let (l3, c3) = (
                    WeightTriple::new(z(0), lam.l0[..g.dim()].to_vec(), z(0)),
                    CharTriple::new(z(0), chi.c0[..g.dim()].to_vec(), chi.cd.clone()),
                );
                !energy(&l3, &c3, &g).expect("energy").is_zero()
            }) {
                energy_bad += 1;
            }
        } else {
            // A translation ray along which the energy falls without bound.
            let mut ray = vec![0i64; dim];
            let nz = (0..dim).find(|&j| !lam.l0[j].is_zero());
            let differ = (0..dim).find(|&j| lam.l0[j] != lam.l0[0]);
            if ty == AffineType::A1 {
                let j = differ.expect("non-constant lambda");
                ray[0] = 1;
                ray[j] = -1;
            } else {
                ray[nz.expect("nonzero lambda")] = 2;
            }
            let slope = ray.iter().zip(&lam.l0).map(|(&r, l)| z(r) * l).sum::<Rational>() * &chi.cd;
            if slope.is_positive() {
                ray.iter_mut().for_each(|r| *r = -*r);
            }
            let energies: Vec<Rational> = (1..=4)
                .map(|t| {
                    let x = ray.iter().map(|r| r * t).collect();
                    energy(&lam, &chi, &WeylElement::translation(ty, x)).expect("energy")
                })
                .collect();
            if !energies.windows(2).all(|w| w[1] < w[0]) {
                energy_bad += 1;
            }
        }
    }
    report.record(
        8,
        "degenerate cases",
        not_decreasing == 0 && not_flagged == 0 && mismatched == 0 && energy_bad == 0,
        format!(
            "70 mixed-sign instances ({not_decreasing} not decreasing, {not_flagged} not flagged); \
             100 zero-lambda_c profiles ({yes} with PEC, {mismatched} mismatched, {energy_bad} energy checks failed)"
        ),
        started,
    );
}

fn criterion_9(report: &mut Report, suite: &[SuiteRow], profiles: &[CohortProfile]) {
    let started = Instant::now();
    let bad_finite = suite
        .par_iter()
        .filter(|row| {
            let dec = decompose(&row.lam, &row.chi, row.ty).expect("decompose");
            let sums = dec.chi_min.c0.iter().zip(&dec.chi_sum.c0).zip(&row.chi.c0).all(|((a, b), c)| a + b == *c);
            let shape = dec.chi_sum.cc.is_zero() && dec.chi_sum.cd.is_zero() && dec.chi_min.cd == row.chi.cd;
            let cone = in_cmin_affine(&row.lam, &dec.chi_min, row.ty).expect("cone").member;
            let zero = infimum(&row.lam, &dec.chi_min, row.ty).expect("infimum").value.is_zero();
            !(sums && shape && cone && zero)
        })
        .count();
    let mut witnessed = 0;
    let mut bad_profiles = 0;
    for p in profiles {
        for ty in TYPES {
            let v = pec_decide(p, ty).expect("pec");
            let Some(dec) = v.decomposition() else { continue };
            witnessed += 1;
            let mut w = p.clone();
            w.cohorts = dec.cohorts.clone();
            w.exceptions = dec.exceptions.clone();
            let cohorts_kept = w.cohorts == p.cohorts;
            let (lam, chi) = w.truncate(2);
            if !cohorts_kept || !in_cmin_affine(&lam, &chi, ty).expect("cone").member {
                bad_profiles += 1;
            }
        }
    }
    report.record(
        9,
        "decomposition soundness",
        bad_finite == 0 && bad_profiles == 0,
        format!(
            "{} finite instances ({bad_finite} failures), {witnessed} profile witnesses ({bad_profiles} failures)",
            suite.len()
        ),
        started,
    );
}

fn criterion_10(report: &mut Report) {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut verdict_bad = 0;
    let mut transport_bad = 0;
    let mut yes = 0;
    for i in 0..100 {
        let (n_phi, n_psi) = [(1u32, 1u32), (2, 2), (2, 1), (1, 2)][i % 4];
        let types: Vec<AffineType> = TYPES.iter().copied().filter(|t| u32::from(t.twist()) == n_psi).collect();
        let ty = *types.choose(&mut rng).expect("nonempty");
        let lc = nonzero(&mut rng);
        let big_n = n_phi as i64 * rng.gen_range(1..=2);
        let site = |rng: &mut ChaCha8Rng| Site {
            lambda: &lc * grid(rng, 2),
            nu: grid(rng, 1),
            mu: q(-rng.gen_range(0..big_n), big_n),
            nu_prime: grid(rng, 1),
        };
        let cohorts: Vec<Site> = (0..rng.gen_range(1..=2)).map(|_| site(&mut rng)).collect();
        let exceptions: Vec<Site> = (0..rng.gen_range(0..=1)).map(|_| site(&mut rng)).collect();
        let inst = AffinisationInstance { n_phi, n_psi, x_std: ty, lc: lc.clone(), ld: small(&mut rng), cohorts, exceptions };

        // Reduction written out directly.
        let qq = q(n_psi as i64, n_phi as i64);
        let nphi = z(n_phi as i64);
        let reduce = |s: &Site| {
            Entry::new(&s.lambda - &lc * (&s.nu + &nphi * &s.mu), &s.nu_prime + &nphi * &s.mu)
        };
        let hand = CohortProfile::new(
            &lc / &qq,
            Rational::one() / &qq,
            inst.cohorts.iter().map(reduce).collect(),
            inst.exceptions.iter().map(reduce).collect(),
        );
        let general = pec_decide_general(&inst).expect("general verdict");
        let direct = pec_decide(&hand, ty).expect("pec");
        if general.verdict != direct || general.pec != direct.pec {
            verdict_bad += 1;
        }
        if direct.pec {
            yes += 1;
        }
        let (lam, chi) = hand.truncate(1);
        for _ in 0..20 {
            let g = random_element(&mut rng, ty, lam.dim());
            if transported_energy(&inst, 1, &g).expect("transport") != energy(&lam, &chi, &g).expect("energy") {
                transport_bad += 1;
            }
        }
    }
    report.record(
        10,
        "affinisation reduction",
        verdict_bad == 0 && transport_bad == 0,
        format!("100 instances ({yes} with PEC), {verdict_bad} verdict mismatches, {transport_bad} of 2000 transports failed"),
        started,
    );
}

/// Per-index slack in the truncation bound: how far a lattice point can be forced from `-a_j`.
fn slack(ty: AffineType) -> Rational {
    match ty {
        AffineType::C1 | AffineType::BC2 => q(1, 8),
        _ => q(1, 2),
    }
}

fn criterion_11(report: &mut Report, yes_profiles: &[(AffineType, CohortProfile)], no_profiles: &[(AffineType, CohortProfile)]) {
    let started = Instant::now();
    let below: usize = yes_profiles
        .par_iter()
        .filter(|(ty, p)| {
            let v = pec_decide(p, *ty).expect("pec");
            let dec = v.decomposition().expect("witness");
            let l = |e: &Entry| &e.lambda / &p.lc;
            let d = |e: &Entry| &e.d / &p.cd;
            let mut norm = Rational::zero();
            for (e, m) in p.exceptions.iter().zip(&dec.exceptions) {
                if e.d != m.d {
                    let a = l(e) + d(m);
                    let b = l(e) + d(e);
                    norm += (&a * &a - &b * &b) / z(2) - slack(*ty);
                }
            }
            let bound = norm * &p.lc * &p.cd;
            let mut w = p.clone();
            w.exceptions = dec.exceptions.clone();
            (1..=6).any(|k| {
                let (lam, chi) = p.truncate(k);
                let (lam_w, chi_w) = w.truncate(k);
                let floor_holds = infimum_dp(&lam, &chi, *ty).expect("infimum").value >= bound;
                let witness_minimal = infimum_dp(&lam_w, &chi_w, *ty).expect("infimum").value.is_zero();
                !(floor_holds && witness_minimal)
            })
        })
        .count();
    let not_decreasing: usize = no_profiles
        .par_iter()
        .filter(|(ty, p)| {
            // Each witness is re-evaluated, so the sequence is certified element by element.
            let mut certified = true;
            let values: Vec<Rational> = (1..=6)
                .map(|k| {
                    let (lam, chi) = p.truncate(k);
                    let inf = infimum_dp(&lam, &chi, *ty).expect("infimum");
                    certified &= energy(&lam, &chi, &inf.witness).expect("energy") == inf.value;
                    inf.value
                })
                .collect();
            // Parity lattices can need two fresh copies per step, so the strict drop is
            // required along the doubled truncations k = 2, 4, 6 and monotonicity everywhere.
            let ok = certified
                && values.windows(2).all(|w| w[1] <= w[0])
                && values[3] < values[1]
                && values[5] < values[3];
            if !ok {
                eprintln!("  not decreasing {ty}: {values:?} on {}", serde_json::to_string(p).unwrap());
            }
            !ok
        })
        .count();
    report.record(
        11,
        "profile truncations",
        below == 0 && not_decreasing == 0,
        format!(
            "{} PEC profiles ({below} below the witness bound), {} non-PEC profiles ({not_decreasing} without a certified decreasing sequence)",
            yes_profiles.len(),
            no_profiles.len()
        ),
        started,
    );
}

/// 100 profiles with and 100 without the positive energy condition, types in rotation.
fn profile_pools() -> (Vec<(AffineType, CohortProfile)>, Vec<(AffineType, CohortProfile)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut yes = Vec::new();
    let mut no = Vec::new();
    let mut i = 0usize;
    while yes.len() < 100 || no.len() < 100 {
        let ty = TYPES[i % 7];
        i += 1;
        let mut p = main_profile(&mut rng, 1);
        let v = pec_decide(&p, ty).expect("pec");
        if v.pec && yes.len() < 100 {
            if ty == AffineType::A1 {
                // The bound argument needs the exceptions already minimal here.
                p.exceptions = v.decomposition().expect("witness").exceptions.clone();
            }
            yes.push((ty, p));
        } else if !v.pec && no.len() < 100 {
            no.push((ty, p));
        }
    }
    (yes, no)
}

fn main() -> ExitCode {
    let mut report = Report { lines: Vec::new(), failed: 0 };
    let started = Instant::now();
    let suite = oracle_suite();
    criterion_1(&mut report, &suite, started);
    criterion_2(&mut report, &suite, started);
    criterion_3(&mut report);
    criterion_4(&mut report);
    criterion_5(&mut report);
    criterion_6(&mut report);
    criterion_7(&mut report);
    criterion_8(&mut report);
    let (yes, no) = profile_pools();
    let profiles: Vec<CohortProfile> = yes.iter().chain(&no).map(|(_, p)| p.clone()).collect();
    criterion_9(&mut report, &suite, &profiles);
    criterion_10(&mut report);
    criterion_11(&mut report, &yes, &no);
    println!("acceptance: {} of 11 criteria passed", 11 - report.failed);
    if report.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
