//! Minimal-energy cones, the root-by-root minimality criterion, and the
//! splitting of a character into a minimal part plus a correction.
//!
//! The affine cone tests work on reduced data: `lambda_c = chi_d = 1` and
//! every `lambda_j` in `[-1/2, 1/2)`. [`reduce`] brings general input there.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::energy::{check_dims, CharTriple, WeightTriple};
use crate::error::{Error, Result};
use crate::rootdata::{finite_roots, levels, AffineType, FiniteType};
use crate::scalar::{format_rational, frac, half, int, nearest_int, Rational};

/// A failed cone condition, labelled as in the cone definitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub cond: String,
    pub indices: Vec<usize>,
}

impl Violation {
    fn new(cond: &str, indices: Vec<usize>) -> Self {
        Violation { cond: cond.to_string(), indices }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.indices.as_slice() {
            [] => write!(f, "{}", self.cond),
            [j] => write!(f, "{} at j={j}", self.cond),
            [j, k] => write!(f, "{} at (j,k)=({j},{k})", self.cond),
            many => write!(f, "{} at {many:?}", self.cond),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeVerdict {
    pub member: bool,
    pub violated: Vec<Violation>,
    /// For `A1`: the constant removed before the band test, in reduced coordinates.
    pub shift: Option<Rational>,
}

impl ConeVerdict {
    fn from(violated: Vec<Violation>, shift: Option<Rational>) -> Self {
        ConeVerdict { member: violated.is_empty(), violated, shift }
    }
}

/// Reduced coordinates: `m = [lambda0/lambda_c]`, `l = <lambda0/lambda_c>`, `d = chi0/chi_d + m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub m: Vec<Rational>,
    pub l: Vec<Rational>,
    pub d: Vec<Rational>,
}

/// Splits normalized `(l, d)` into integer part and fractional data.
pub fn reduce_normalized(l: &[Rational], d: &[Rational]) -> Reduced {
    let m: Vec<Rational> = l.iter().map(|x| Rational::from_integer(nearest_int(x))).collect();
    Reduced {
        l: l.iter().map(frac).collect(),
        d: d.iter().zip(&m).map(|(x, k)| x + k).collect(),
        m,
    }
}

fn scaled_data(lam: &WeightTriple, chi: &CharTriple) -> Result<(Vec<Rational>, Vec<Rational>)> {
    check_dims(lam, chi)?;
    if lam.lc.is_zero() {
        return Err(Error::ZeroLambdaC);
    }
    if !(&lam.lc * &chi.cd).is_positive() {
        return Err(Error::NonPositiveScale(format_rational(&(&lam.lc * &chi.cd))));
    }
    Ok((
        lam.l0.iter().map(|x| x / &lam.lc).collect(),
        chi.c0.iter().map(|x| x / &chi.cd).collect(),
    ))
}

/// `lambda0/lambda_c` and `chi0/chi_d` moved to reduced coordinates.
pub fn reduce(lam: &WeightTriple, chi: &CharTriple) -> Result<Reduced> {
    let (l, d) = scaled_data(lam, chi)?;
    Ok(reduce_normalized(&l, &d))
}

fn finite_a(l: &[Rational], d: &[Rational], label: &str) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 0..l.len() {
        for j in 0..l.len() {
            if l[i] < l[j] && d[i] < d[j] {
                out.push(Violation::new(label, vec![i, j]));
            }
        }
    }
    out
}

fn finite_b(l: &[Rational], d: &[Rational]) -> Vec<Violation> {
    let mut out = Vec::new();
    for j in 0..l.len() {
        if (&l[j] * &d[j]).is_positive() {
            out.push(Violation::new("B-sign", vec![j]));
        }
    }
    for i in 0..l.len() {
        for j in 0..l.len() {
            if l[i].abs() < l[j].abs() && d[i].abs() > d[j].abs() {
                out.push(Violation::new("B-order", vec![i, j]));
            }
        }
    }
    out
}

/// Level-zero root test `lambda0(alpha_check) > 0 => alpha(chi0) <= 0` over the roots of `ft`.
fn finite_generic(l: &[Rational], d: &[Rational], ft: FiniteType, label: &str) -> Vec<Violation> {
    finite_roots(ft, l.len())
        .into_iter()
        .filter(|a| a.eval(l).is_positive() && a.eval(d).is_positive())
        .map(|a| {
            let mut idx: Vec<usize> = a.coeffs().into_iter().map(|(k, _)| k).collect();
            idx.sort_unstable();
            Violation::new(label, idx)
        })
        .collect()
}

/// Membership in the locally finite cone `C_min(l0, X_J)`.
pub fn in_cmin_finite(l0: &[Rational], c0: &[Rational], ft: FiniteType) -> Result<ConeVerdict> {
    if l0.len() != c0.len() {
        return Err(Error::Dimension { expected: l0.len(), found: c0.len() });
    }
    let violated = match ft {
        FiniteType::A => finite_a(l0, c0, "A-order"),
        FiniteType::B | FiniteType::C | FiniteType::BC => finite_b(l0, c0),
        FiniteType::D => finite_generic(l0, c0, FiniteType::D, "D-fin"),
    };
    Ok(ConeVerdict::from(violated, None))
}

fn cone_a1(l: &[Rational], d: &[Rational]) -> ConeVerdict {
    let mut violated = finite_a(l, d, "A1-order");
    let (lo, hi) = extremes(d);
    if &d[hi] - &d[lo] > Rational::one() {
        violated.push(Violation::new("A1-band", vec![lo, hi]));
    }
    let shift = violated.is_empty().then(|| (&d[lo] + &d[hi]) / int(2));
    ConeVerdict::from(violated, shift)
}

fn extremes(d: &[Rational]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for j in 1..d.len() {
        if d[j] < d[lo] {
            lo = j;
        }
        if d[j] > d[hi] {
            hi = j;
        }
    }
    (lo, hi)
}

fn cone_c1(l: &[Rational], d: &[Rational]) -> Vec<Violation> {
    let h = half();
    let mut out = Vec::new();
    for j in 0..l.len() {
        let la = l[j].abs();
        if la < h && d[j].abs() > h {
            out.push(Violation::new("C1", vec![j]));
        }
        if la == h && d[j].abs() > Rational::one() {
            out.push(Violation::new("C2", vec![j]));
        }
        if (&l[j] * &d[j]).is_positive() {
            out.push(Violation::new("C3", vec![j]));
        }
    }
    for i in 0..l.len() {
        for j in 0..l.len() {
            if l[i].abs() < l[j].abs() && frac(&d[i]).abs() > frac(&d[j]).abs() {
                out.push(Violation::new("C4", vec![i, j]));
            }
        }
    }
    out
}

fn cond_d(l: &[Rational], d: &[Rational]) -> Vec<Violation> {
    let one = Rational::one();
    let minus_half = -half();
    let mut out = Vec::new();
    for j in 0..l.len() {
        for k in (j + 1)..l.len() {
            let diff = &d[j] - &d[k];
            let sum = &d[j] + &d[k];
            if diff.abs() > one {
                out.push(Violation::new("D1", vec![j, k]));
            }
            if sum < -one.clone() || sum > int(2) {
                out.push(Violation::new("D2", vec![j, k]));
            }
            if sum > one && !(l[j] == minus_half && l[k] == minus_half) {
                out.push(Violation::new("D3", vec![j, k]));
            }
        }
    }
    out
}

fn cone_d1(l: &[Rational], d: &[Rational]) -> Vec<Violation> {
    let mut out = finite_generic(l, d, FiniteType::D, "D-fin");
    out.extend(cond_d(l, d));
    out
}

fn cone_b1(l: &[Rational], d: &[Rational]) -> Vec<Violation> {
    let minus_half = -half();
    if l.iter().all(|x| *x == minus_half) {
        return (0..d.len())
            .filter(|&j| d[j].is_negative() || d[j] > Rational::one())
            .map(|j| Violation::new("B1-edge", vec![j]))
            .collect();
    }
    let mut out = finite_b(l, d);
    out.extend(cond_d(l, d));
    // Implied by D1-D3 once a second index exists.
    for j in 0..d.len() {
        if d[j].abs() > Rational::one() {
            out.push(Violation::new("B1-bound", vec![j]));
        }
    }
    out
}

/// Cone test on reduced data `l = <l>`; `B2` expects the reduced data of the halved instance.
pub fn cone_reduced(l: &[Rational], d: &[Rational], ty: AffineType) -> ConeVerdict {
    debug_assert!(l.iter().all(|x| frac(x) == *x));
    match ty {
        AffineType::A1 => cone_a1(l, d),
        AffineType::C1 | AffineType::BC2 | AffineType::B2 => ConeVerdict::from(cone_c1(l, d), None),
        AffineType::D1 => ConeVerdict::from(cone_d1(l, d), None),
        AffineType::B1 | AffineType::C2 => ConeVerdict::from(cone_b1(l, d), None),
    }
}

/// Membership `chi in C_min(lambda, X)` for arbitrary `lambda_c != 0`.
///
/// `B2` is tested through its halved `C1` instance, whose lattice is all of `Z^J`.
pub fn in_cmin_affine(lam: &WeightTriple, chi: &CharTriple, ty: AffineType) -> Result<ConeVerdict> {
    check_dims(lam, chi)?;
    if lam.lc.is_zero() {
        return Err(Error::ZeroLambdaC);
    }
    if !(&lam.lc * &chi.cd).is_positive() {
        return Ok(ConeVerdict::from(vec![Violation::new("scale", vec![])], None));
    }
    let (l, d) = scaled_data(lam, chi)?;
    Ok(verdict_normalized(&l, &d, ty))
}

/// Cone test on normalized data (`lambda_c = chi_d = 1`), any `l`.
pub fn verdict_normalized(l: &[Rational], d: &[Rational], ty: AffineType) -> ConeVerdict {
    if ty == AffineType::B2 {
        let (l2, d2) = halve(l, d);
        let r = reduce_normalized(&l2, &d2);
        return cone_reduced(&r.l, &r.d, ty);
    }
    let r = reduce_normalized(l, d);
    cone_reduced(&r.l, &r.d, ty)
}

fn halve(l: &[Rational], d: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let two = int(2);
    (l.iter().map(|x| x / &two).collect(), d.iter().map(|x| x / &two).collect())
}

/// `lambda(gamma^vee) > 0 => gamma(chi) <= 0` for every affine root, checked per finite root.
///
/// Under normalization `lambda(gamma^vee) > 0` means `n < lambda0(alpha_sharp)`, and the
/// worst admissible level is the largest one below that bound.
pub fn is_minimal_generic(lam: &WeightTriple, chi: &CharTriple, ty: AffineType) -> Result<bool> {
    let dim = check_dims(lam, chi)?;
    if lam.lc.is_zero() {
        return Err(Error::ZeroLambdaC);
    }
    if chi.cd.is_zero() {
        return Err(Error::Degenerate("chi_d = 0".into()));
    }
    if (&lam.lc * &chi.cd).is_negative() {
        return Ok(false);
    }
    let (l, d) = scaled_data(lam, chi)?;
    for alpha in finite_roots(ty.base(), dim) {
        let Some(lv) = levels(ty, &alpha) else { continue };
        let n_star = lv.max_below(&alpha.eval(&l));
        if (alpha.eval(&d) + int(n_star)).is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `chi = chi_min + chi_sum` with `chi_min` in the cone and `chi_sum = (0, *, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub chi_min: CharTriple,
    pub chi_sum: CharTriple,
}

/// A1 correction on reduced data: order, then center and clamp to the band.
fn pipeline_a1(l: &[Rational], d: &[Rational]) -> Vec<Rational> {
    let mut d = d.to_vec();
    if !finite_a(l, &d, "A1-order").is_empty() {
        let mut by_l: Vec<usize> = (0..l.len()).collect();
        by_l.sort_by(|&i, &j| l[i].cmp(&l[j]).then(i.cmp(&j)));
        let mut values = d.clone();
        values.sort_by(|a, b| b.cmp(a));
        for (rank, &j) in by_l.iter().enumerate() {
            d[j] = values[rank].clone();
        }
    }
    let (lo, hi) = extremes(&d);
    let r = (&d[lo] + &d[hi]) / int(2);
    let h = half();
    d.iter()
        .map(|x| {
            let c = x - &r;
            let c = if c > h { h.clone() } else if c < -h.clone() { -h.clone() } else { c };
            c + &r
        })
        .collect()
}

/// C1 correction on reduced data: order of `|<d>|`, then the three corrections.
fn pipeline_c1(l: &[Rational], d: &[Rational]) -> Vec<Rational> {
    let h = half();
    let mut d = d.to_vec();
    let c4_fails = (0..l.len()).any(|i| {
        (0..l.len()).any(|j| l[i].abs() < l[j].abs() && frac(&d[i]).abs() > frac(&d[j]).abs())
    });
    if c4_fails {
        let mut by_l: Vec<usize> = (0..l.len()).collect();
        by_l.sort_by(|&i, &j| l[i].abs().cmp(&l[j].abs()).then(i.cmp(&j)));
        let mut sizes: Vec<Rational> = d.iter().map(|x| frac(x).abs()).collect();
        sizes.sort();
        let old = d.clone();
        for (rank, &j) in by_l.iter().enumerate() {
            let base = Rational::from_integer(nearest_int(&old[j]));
            let f = &sizes[rank];
            d[j] = if frac(&old[j]).is_negative() { base - f } else { base + f };
        }
    }
    for j in 0..d.len() {
        let la = l[j].abs();
        let f = frac(&d[j]).abs();
        if la < h && d[j].abs() > h {
            d[j] = if d[j].is_positive() { f } else { -f };
        } else if la == h && d[j].abs() > Rational::one() {
            let v = Rational::one() - f;
            d[j] = if d[j].is_positive() { v } else { -v };
        }
    }
    for j in 0..d.len() {
        if (&l[j] * &d[j]).is_positive() {
            d[j] = -d[j].clone();
        }
    }
    d
}

/// Correction on normalized `(l, d)`; returns the minimal part in the same coordinates.
pub fn minimal_part_normalized(l: &[Rational], d: &[Rational], ty: AffineType) -> Vec<Rational> {
    if ty == AffineType::B2 {
        let (l2, d2) = halve(l, d);
        let r = reduce_normalized(&l2, &d2);
        let e = pipeline_c1(&r.l, &r.d);
        return e.iter().zip(&r.m).map(|(x, k)| (x - k) * int(2)).collect();
    }
    let r = reduce_normalized(l, d);
    let e = match ty {
        AffineType::A1 => pipeline_a1(&r.l, &r.d),
        // C_min(C1) lies inside the cones of the smaller groups.
        _ => pipeline_c1(&r.l, &r.d),
    };
    e.iter().zip(&r.m).map(|(x, k)| x - k).collect()
}

pub fn decompose(lam: &WeightTriple, chi: &CharTriple, ty: AffineType) -> Result<Decomposition> {
    let (l, d) = scaled_data(lam, chi)?;
    let verdict = verdict_normalized(&l, &d, ty);
    let d_min = if verdict.member { d } else { minimal_part_normalized(&l, &d, ty) };
    let c0_min: Vec<Rational> = d_min.iter().map(|x| x * &chi.cd).collect();
    let c0_sum = chi.c0.iter().zip(&c0_min).map(|(a, b)| a - b).collect();
    let chi_min = CharTriple { cc: chi.cc.clone(), c0: c0_min, cd: chi.cd.clone() };
    let chi_sum = CharTriple { cc: Rational::zero(), c0: c0_sum, cd: Rational::zero() };
    let check = in_cmin_affine(lam, &chi_min, ty)?;
    if !check.member {
        return Err(Error::Inconsistency(format!(
            "corrected character fails the {ty} cone: {}",
            check.violated.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        )));
    }
    Ok(Decomposition { chi_min, chi_sum })
}
