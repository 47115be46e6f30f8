//! Infinite index sets described by finitely many cohorts (infinitely
//! repeated `(lambda_j, d_j)` pairs) plus finitely many exceptional indices,
//! and the positive-energy decision for them.
//!
//! Every cone condition is closed and involves at most two indices, so a
//! character lies in `C_min + l1` exactly when the pattern with each cohort
//! taken twice lies in the cone: the exceptions can be moved freely by a
//! finitely supported correction.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::{cone_reduced, in_cmin_finite, reduce_normalized, Reduced};
use crate::energy::{CharTriple, WeightTriple};
use crate::error::{Error, Result};
use crate::rootdata::{finite_roots, levels, AffineType, FiniteType, Levels};
use crate::scalar::{format_rational, frac, half, int, is_integer, serde_rat, Rational};

fn zero() -> Rational {
    Rational::zero()
}

/// One `(lambda_j, d_j)` pair: a cohort value or an exceptional index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    #[serde(with = "serde_rat")]
    pub lambda: Rational,
    #[serde(with = "serde_rat")]
    pub d: Rational,
}

impl Entry {
    pub fn new(lambda: Rational, d: Rational) -> Self {
        Entry { lambda, d }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohortProfile {
    #[serde(with = "serde_rat")]
    pub lc: Rational,
    #[serde(with = "serde_rat", default = "zero")]
    pub ld: Rational,
    #[serde(with = "serde_rat", default = "zero")]
    pub cc: Rational,
    #[serde(with = "serde_rat")]
    pub cd: Rational,
    pub cohorts: Vec<Entry>,
    #[serde(default)]
    pub exceptions: Vec<Entry>,
}

impl CohortProfile {
    pub fn new(lc: Rational, cd: Rational, cohorts: Vec<Entry>, exceptions: Vec<Entry>) -> Self {
        CohortProfile { lc, ld: zero(), cc: zero(), cd, cohorts, exceptions }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cohorts.is_empty() && self.exceptions.is_empty() {
            return Err(Error::InvalidProfile("no cohorts and no exceptions".into()));
        }
        Ok(())
    }

    fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.cohorts.iter().chain(&self.exceptions)
    }

    /// The finite instance with `k` copies of every cohort (cohort-major), then the exceptions.
    pub fn truncate(&self, k: usize) -> (WeightTriple, CharTriple) {
        let mut l0 = Vec::new();
        let mut c0 = Vec::new();
        for e in &self.cohorts {
            for _ in 0..k {
                l0.push(e.lambda.clone());
                c0.push(e.d.clone());
            }
        }
        for e in &self.exceptions {
            l0.push(e.lambda.clone());
            c0.push(e.d.clone());
        }
        (
            WeightTriple::new(self.lc.clone(), l0, self.ld.clone()),
            CharTriple::new(self.cc.clone(), c0, self.cd.clone()),
        )
    }

    /// Each cohort twice, exceptions dropped.
    fn pattern(&self, scale_l: &Rational, scale_d: &Rational) -> (Vec<Rational>, Vec<Rational>) {
        let mut l = Vec::with_capacity(2 * self.cohorts.len());
        let mut d = Vec::with_capacity(2 * self.cohorts.len());
        for e in &self.cohorts {
            for _ in 0..2 {
                l.push(&e.lambda / scale_l);
                d.push(&e.d / scale_d);
            }
        }
        (l, d)
    }
}

/// A failed condition on infinitely many indices, named by cohort.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohortViolation {
    pub condition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohort: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohorts: Option<Vec<usize>>,
}

impl CohortViolation {
    fn bare(condition: &str) -> Self {
        CohortViolation { condition: condition.to_string(), cohort: None, cohorts: None }
    }

    fn on(condition: String, mut cohorts: Vec<usize>) -> Self {
        cohorts.sort_unstable();
        cohorts.dedup();
        if cohorts.len() == 1 {
            CohortViolation { condition, cohort: Some(cohorts[0]), cohorts: None }
        } else {
            CohortViolation { condition, cohort: None, cohorts: Some(cohorts) }
        }
    }
}

/// Minimal character values `chi0_min` for every cohort and exception, in input coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub cohorts: Vec<Entry>,
    pub exceptions: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PecReason {
    Decomposition { decomposition: Decomposition },
    /// Degenerate cases hold without any cone structure.
    Holds { condition: String },
    Violation(CohortViolation),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PecVerdict {
    pub pec: bool,
    pub reason: PecReason,
}

impl PecVerdict {
    fn no(v: CohortViolation) -> Self {
        PecVerdict { pec: false, reason: PecReason::Violation(v) }
    }

    fn holds(condition: &str) -> Self {
        PecVerdict { pec: true, reason: PecReason::Holds { condition: condition.to_string() } }
    }

    pub fn violation(&self) -> Option<&CohortViolation> {
        match &self.reason {
            PecReason::Violation(v) => Some(v),
            _ => None,
        }
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        match &self.reason {
            PecReason::Decomposition { decomposition } => Some(decomposition),
            _ => None,
        }
    }
}

pub fn zdiscrete(profile: &CohortProfile) -> Result<bool> {
    if profile.lc.is_zero() {
        return Err(Error::ZeroLambdaC);
    }
    // Finitely many lambda values give finitely many cosets.
    Ok(true)
}

/// `lambda(gamma^vee)` is an integer for every affine root of `ty` on the profile.
///
/// The value is affine in the level `n`, so two consecutive admissible levels per
/// finite root decide all of them.
pub fn integrality_check(profile: &CohortProfile, ty: AffineType) -> bool {
    let mut values: Vec<Rational> = Vec::new();
    for e in profile.entries() {
        if !values.contains(&e.lambda) {
            values.push(e.lambda.clone());
        }
    }
    let reps: Vec<Rational> = values.iter().flat_map(|v| [v.clone(), v.clone()]).collect();
    for alpha in finite_roots(ty.base(), reps.len()) {
        let Some(lv) = levels(ty, &alpha) else { continue };
        let k = int(2) / alpha.squared_length();
        let (n0, step) = match lv {
            Levels::All => (0, 1),
            Levels::Even => (0, 2),
            Levels::Odd => (1, 2),
        };
        for n in [n0, n0 + step] {
            let value = &k * (alpha.eval(&reps) - &profile.lc * int(n));
            if !is_integer(&value) {
                return false;
            }
        }
    }
    true
}

/// Reduced coordinates of a profile: `lambda_c = chi_d = 1`, cohort lambdas in `[-1/2, 1/2)`.
struct Frame {
    ty: AffineType,
    pattern: Reduced,
    /// `2` for `B2`, which is read through its halved instance.
    factor: Rational,
}

impl Frame {
    fn new(profile: &CohortProfile, ty: AffineType) -> Self {
        let factor = if ty == AffineType::B2 { int(2) } else { Rational::one() };
        let (l, d) = profile.pattern(&(&profile.lc * &factor), &(&profile.cd * &factor));
        Frame { ty, pattern: reduce_normalized(&l, &d), factor }
    }

    fn reduce_entry(&self, profile: &CohortProfile, e: &Entry) -> (Rational, Rational, Rational) {
        let r = reduce_normalized(
            &[&e.lambda / (&profile.lc * &self.factor)],
            &[&e.d / (&profile.cd * &self.factor)],
        );
        (r.l[0].clone(), r.d[0].clone(), r.m[0].clone())
    }

    fn to_input(&self, profile: &CohortProfile, reduced_d: &Rational, m: &Rational) -> Rational {
        (reduced_d - m) * &self.factor * &profile.cd
    }
}

fn cohort_violations_in(frame: &Frame) -> (Vec<CohortViolation>, Option<Rational>) {
    let v = cone_reduced(&frame.pattern.l, &frame.pattern.d, frame.ty);
    let out = v
        .violated
        .iter()
        .map(|x| CohortViolation::on(format!("{}-cohort", x.cond), x.indices.iter().map(|p| p / 2).collect()))
        .collect();
    (out, v.shift)
}

/// All cone conditions failing on the cohort pattern, main case `lambda_c chi_d > 0`.
pub fn cohort_violations(profile: &CohortProfile, ty: AffineType) -> Result<Vec<CohortViolation>> {
    profile.validate()?;
    if !(&profile.lc * &profile.cd).is_positive() {
        return Err(Error::NonPositiveScale(format_rational(&(&profile.lc * &profile.cd))));
    }
    Ok(cohort_violations_in(&Frame::new(profile, ty)).0)
}

/// Candidate reduced values for an exceptional index, in order of preference.
fn candidates(l: &Rational, cone_l: &[Rational], cone_d: &[Rational], shift: &Option<Rational>) -> Vec<Rational> {
    let h = half();
    let mut out = Vec::new();
    // Below the threshold on |<d>| forced by smaller |lambda| values, C1 style.
    let f = cone_l
        .iter()
        .zip(cone_d)
        .filter(|(x, _)| x.abs() < l.abs())
        .map(|(_, d)| frac(d).abs())
        .max()
        .unwrap_or_else(zero);
    out.push(if l.is_positive() { -f.clone() } else { f.clone() });
    if let Some(c) = shift {
        out.extend([c.clone(), c + &h, c - &h]);
    }
    for (x, d) in cone_l.iter().zip(cone_d) {
        if x == l {
            out.push(d.clone());
        }
    }
    out.extend([zero(), h.clone(), -h.clone(), Rational::one(), -Rational::one()]);
    for d in cone_d {
        let g = frac(d).abs();
        out.extend([d.clone(), -d.clone(), g.clone(), -g.clone(), Rational::one() - &g, &g - Rational::one()]);
    }
    out
}

fn decomposition_in(profile: &CohortProfile, frame: &Frame, shift: Option<Rational>) -> Result<Decomposition> {
    let cohorts = profile
        .cohorts
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let p = 2 * i;
            Entry::new(e.lambda.clone(), frame.to_input(profile, &frame.pattern.d[p], &frame.pattern.m[p]))
        })
        .collect();
    let mut cone_l = frame.pattern.l.clone();
    let mut cone_d = frame.pattern.d.clone();
    let mut exceptions = Vec::new();
    for e in &profile.exceptions {
        let (l, d, m) = frame.reduce_entry(profile, e);
        let mut pick = None;
        let mut options = vec![d];
        options.extend(candidates(&l, &cone_l, &cone_d, &shift));
        for cand in options {
            cone_l.push(l.clone());
            cone_d.push(cand.clone());
            if cone_reduced(&cone_l, &cone_d, frame.ty).member {
                pick = Some(cand);
                break;
            }
            cone_l.pop();
            cone_d.pop();
        }
        let chosen = pick.ok_or_else(|| {
            Error::Inconsistency(format!("no minimal value found for the exception at lambda = {}", e.lambda))
        })?;
        exceptions.push(Entry::new(e.lambda.clone(), frame.to_input(profile, &chosen, &m)));
    }
    Ok(Decomposition { cohorts, exceptions })
}

/// Positive-energy decision for a cohort profile.
pub fn pec_decide(profile: &CohortProfile, ty: AffineType) -> Result<PecVerdict> {
    profile.validate()?;
    let lc_zero = profile.lc.is_zero();
    let cd_zero = profile.cd.is_zero();
    if lc_zero && cd_zero {
        let ft = if ty == AffineType::A1 { FiniteType::A } else { FiniteType::B };
        return pec_finite_type(profile, ft);
    }
    if lc_zero || cd_zero {
        let (values, label): (Vec<&Rational>, &str) = if lc_zero {
            (profile.entries().map(|e| &e.lambda).collect(), "lambda0")
        } else {
            (profile.entries().map(|e| &e.d).collect(), "chi0")
        };
        let ok = if ty == AffineType::A1 {
            values.windows(2).all(|p| p[0] == p[1])
        } else {
            values.iter().all(|v| v.is_zero())
        };
        let condition = if ty == AffineType::A1 { format!("{label} constant") } else { format!("{label} = 0") };
        return Ok(if ok { PecVerdict::holds(&condition) } else { PecVerdict::no(CohortViolation::bare(&condition)) });
    }
    if (&profile.lc * &profile.cd).is_negative() {
        return Ok(PecVerdict::no(CohortViolation::bare("λ_cχ_d<0")));
    }
    let frame = Frame::new(profile, ty);
    let (violated, shift) = cohort_violations_in(&frame);
    if let Some(first) = violated.into_iter().next() {
        return Ok(PecVerdict::no(first));
    }
    let decomposition = decomposition_in(profile, &frame, shift)?;
    Ok(PecVerdict { pec: true, reason: PecReason::Decomposition { decomposition } })
}

/// Locally finite decision: `C`, `D` and `BC` behave as `B` for the positive energy condition.
pub fn pec_finite_type(profile: &CohortProfile, ft: FiniteType) -> Result<PecVerdict> {
    profile.validate()?;
    let one = Rational::one();
    let (l, d) = profile.pattern(&one, &one);
    let ft = if ft == FiniteType::A { FiniteType::A } else { FiniteType::B };
    let v = in_cmin_finite(&l, &d, ft)?;
    if let Some(x) = v.violated.first() {
        return Ok(PecVerdict::no(CohortViolation::on(
            format!("{}-cohort", x.cond),
            x.indices.iter().map(|p| p / 2).collect(),
        )));
    }
    let cohorts = profile.cohorts.clone();
    // Each exception joins the pattern in turn; its own value, zero or some +-d already
    // present always fits between the order bounds.
    let mut cl = l;
    let mut cd = d;
    let mut exceptions = Vec::new();
    for e in &profile.exceptions {
        let mut opts: Vec<Rational> = vec![e.d.clone(), zero()];
        opts.extend(cd.iter().flat_map(|y| [y.clone(), -y]));
        cl.push(e.lambda.clone());
        let chosen = opts.into_iter().find(|o| {
            cd.push(o.clone());
            let ok = in_cmin_finite(&cl, &cd, ft).map(|v| v.member).unwrap_or(false);
            cd.pop();
            ok
        });
        let chosen = chosen.ok_or_else(|| Error::Inconsistency("no minimal value found for an exception".into()))?;
        cd.push(chosen.clone());
        exceptions.push(Entry::new(e.lambda.clone(), chosen));
    }
    Ok(PecVerdict { pec: true, reason: PecReason::Decomposition { decomposition: Decomposition { cohorts, exceptions } } })
}

/// Accumulation-point check for `A1`: the cohort `d` values must span at most one unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AReport {
    #[serde(with = "serde_rat")]
    pub r_min: Rational,
    #[serde(with = "serde_rat")]
    pub r_max: Rational,
    #[serde(with = "serde_rat")]
    pub gap: Rational,
    pub pass: bool,
    /// The gap equals one exactly.
    pub boundary: bool,
    /// Cohorts attaining `r_min` and `r_max` when the gap is too wide.
    pub witness: Option<(usize, usize)>,
    /// Finitely many exceptions always sum to something finite.
    pub tails_summable: bool,
}

fn reduced_cohorts(profile: &CohortProfile) -> Result<(Vec<Rational>, Vec<Rational>)> {
    profile.validate()?;
    if !(&profile.lc * &profile.cd).is_positive() {
        return Err(Error::NonPositiveScale(format_rational(&(&profile.lc * &profile.cd))));
    }
    let l: Vec<Rational> = profile.cohorts.iter().map(|e| &e.lambda / &profile.lc).collect();
    let d: Vec<Rational> = profile.cohorts.iter().map(|e| &e.d / &profile.cd).collect();
    let r = reduce_normalized(&l, &d);
    Ok((r.l, r.d))
}

pub fn diagnostics_a(profile: &CohortProfile) -> Result<AReport> {
    let (_, d) = reduced_cohorts(profile)?;
    if d.is_empty() {
        return Err(Error::InvalidProfile("no cohorts".into()));
    }
    let lo = (0..d.len()).min_by(|&i, &j| d[i].cmp(&d[j])).expect("nonempty");
    let hi = (0..d.len()).max_by(|&i, &j| d[i].cmp(&d[j]).then(j.cmp(&i))).expect("nonempty");
    let gap = &d[hi] - &d[lo];
    let pass = gap <= Rational::one();
    Ok(AReport {
        r_min: d[lo].clone(),
        r_max: d[hi].clone(),
        boundary: gap == Rational::one(),
        witness: (!pass).then_some((lo, hi)),
        gap,
        pass,
        tails_summable: true,
    })
}

/// Necessary conditions for the `C1` family, each listing the offending cohorts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CReport {
    /// `|lambda| < 1/2` with `|d| > 1/2`.
    pub small_lambda_band: Vec<usize>,
    /// `|lambda| = 1/2` with `|d| > 1`.
    pub edge_lambda_band: Vec<usize>,
    /// `(-|lambda|, |<d>|)` outside the finite `A` cone.
    pub fraction_order: Vec<(usize, usize)>,
    /// `lambda d > 0`.
    pub sign: Vec<usize>,
    pub pass: bool,
}

pub fn diagnostics_c(profile: &CohortProfile) -> Result<CReport> {
    let (l, d) = reduced_cohorts(profile)?;
    let h = half();
    let mut small_lambda_band = Vec::new();
    let mut edge_lambda_band = Vec::new();
    let mut sign = Vec::new();
    for k in 0..l.len() {
        let la = l[k].abs();
        if la < h && d[k].abs() > h {
            small_lambda_band.push(k);
        }
        if la == h && d[k].abs() > Rational::one() {
            edge_lambda_band.push(k);
        }
        if (&l[k] * &d[k]).is_positive() {
            sign.push(k);
        }
    }
    let neg_abs: Vec<Rational> = l.iter().map(|x| -x.abs()).collect();
    let fr: Vec<Rational> = d.iter().map(|x| frac(x).abs()).collect();
    let fraction_order = in_cmin_finite(&neg_abs, &fr, FiniteType::A)?
        .violated
        .into_iter()
        .map(|v| (v.indices[0], v.indices[1]))
        .collect::<Vec<_>>();
    let pass = small_lambda_band.is_empty() && edge_lambda_band.is_empty() && fraction_order.is_empty() && sign.is_empty();
    Ok(CReport { small_lambda_band, edge_lambda_band, fraction_order, sign, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::in_cmin_affine;
    use crate::scalar::rat;

    fn profile(lc: Rational, cd: Rational, cohorts: &[(i64, i64, i64, i64)]) -> CohortProfile {
        let cohorts = cohorts.iter().map(|&(a, b, c, e)| Entry::new(rat(a, b), rat(c, e))).collect();
        CohortProfile::new(lc, cd, cohorts, Vec::new())
    }

    #[test]
    fn zdiscrete_examples() {
        assert!(zdiscrete(&profile(int(1), int(1), &[(1, 3, 0, 1)])).unwrap());
        assert!(zdiscrete(&profile(int(2), int(1), &[(1, 3, 0, 1), (1, 2, 0, 1), (0, 1, 0, 1)])).unwrap());
        assert_eq!(zdiscrete(&profile(int(0), int(1), &[(0, 1, 0, 1)])), Err(Error::ZeroLambdaC));
    }

    #[test]
    fn integrality_examples() {
        // Long roots (2e_j, n) pair to lambda_j - n lambda_c / 2.
        let p = profile(int(1), int(1), &[(2, 1, 0, 1), (-3, 1, 0, 1)]);
        assert!(!integrality_check(&p, AffineType::C1));
        assert!(integrality_check(&p, AffineType::C2));
        let p = profile(int(2), int(1), &[(2, 1, 0, 1), (-3, 1, 0, 1)]);
        assert!(integrality_check(&p, AffineType::C1));
        let p = profile(int(1), int(1), &[(1, 2, 0, 1), (3, 2, 0, 1)]);
        assert!(integrality_check(&p, AffineType::A1));
        assert!(!integrality_check(&p, AffineType::C1));
        let p = profile(rat(1, 2), int(1), &[(1, 2, 0, 1)]);
        assert!(!integrality_check(&p, AffineType::A1));
    }

    #[test]
    fn pec_examples() {
        let p = profile(int(1), int(1), &[(1, 4, -1, 4)]);
        let v = pec_decide(&p, AffineType::C1).unwrap();
        assert!(v.pec);
        assert_eq!(v.decomposition().unwrap().cohorts, p.cohorts);

        let p = profile(int(1), int(-1), &[(1, 4, -1, 4)]);
        let v = pec_decide(&p, AffineType::C1).unwrap();
        assert_eq!(v.violation().unwrap().condition, "λ_cχ_d<0");

        let p = profile(int(0), int(1), &[(0, 1, 0, 1), (1, 1, 0, 1)]);
        assert!(!pec_decide(&p, AffineType::C1).unwrap().pec);

        let p = profile(int(1), int(1), &[(1, 4, 1, 4)]);
        let v = pec_decide(&p, AffineType::C1).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json, serde_json::json!({"pec": false, "reason": {"condition": "C3-cohort", "cohort": 0}}));
    }

    #[test]
    fn finite_type_examples() {
        let p = profile(int(0), int(0), &[(2, 1, 3, 1), (2, 1, 3, 1)]);
        assert!(pec_finite_type(&p, FiniteType::A).unwrap().pec);
        let p = profile(int(0), int(0), &[(0, 1, 1, 1), (1, 1, 0, 1)]);
        assert!(pec_finite_type(&p, FiniteType::A).unwrap().pec);
        let p = profile(int(0), int(0), &[(1, 1, 1, 1)]);
        assert!(!pec_finite_type(&p, FiniteType::B).unwrap().pec);
    }

    #[test]
    fn diagnostics_examples() {
        let r = diagnostics_a(&profile(int(1), int(1), &[(0, 1, 0, 1)])).unwrap();
        assert!(r.pass && r.gap.is_zero());
        let r = diagnostics_a(&profile(int(1), int(1), &[(0, 1, -3, 4), (1, 4, 3, 4)])).unwrap();
        assert!(!r.pass);
        assert_eq!(r.witness, Some((0, 1)));
        let mut p = profile(int(1), int(1), &[(0, 1, -1, 2), (1, 4, 1, 2)]);
        p.exceptions.push(Entry::new(int(0), int(40)));
        let r = diagnostics_a(&p).unwrap();
        assert!(r.pass && r.boundary);

        let r = diagnostics_c(&profile(int(1), int(1), &[(1, 4, 3, 4)])).unwrap();
        assert_eq!(r.small_lambda_band, vec![0]);
        let r = diagnostics_c(&profile(int(1), int(1), &[(-1, 2, 1, 1)])).unwrap();
        assert!(r.small_lambda_band.is_empty() && r.edge_lambda_band.is_empty() && r.sign.is_empty());
        let r = diagnostics_c(&profile(int(1), int(1), &[(1, 4, 1, 4)])).unwrap();
        assert_eq!(r.sign, vec![0]);
    }

    #[test]
    fn exceptions_get_minimal_values() {
        let mut p = profile(int(2), int(3), &[(1, 2, -1, 5), (-3, 1, 2, 1)]);
        p.exceptions = vec![Entry::new(rat(7, 3), int(9)), Entry::new(int(1), rat(-5, 2))];
        for ty in AffineType::ALL {
            let v = pec_decide(&p, ty).unwrap();
            let Some(dec) = v.decomposition() else { continue };
            let mut q = p.clone();
            q.cohorts = dec.cohorts.clone();
            q.exceptions = dec.exceptions.clone();
            for k in 1..=3 {
                let (lam, chi) = q.truncate(k);
                assert!(in_cmin_affine(&lam, &chi, ty).unwrap().member, "{ty} k={k}");
            }
        }
    }
}
