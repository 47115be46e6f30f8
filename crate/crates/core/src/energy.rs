//! The energy functional `lambda(g.chi - chi)` on a finite index set, its
//! closed forms, normalization and translation reductions, and exact infima.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{flat, sharp, AffineType, DualTriple, Triple};
use crate::scalar::{common_denominator, half, int, nearest_int, serde_rat, serde_rat_vec, Rational};
use crate::weyl::{act, inverse, permutations, sign_vectors, WeylElement};

/// A weight `(lambda_c, lambda0, lambda_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightTriple {
    #[serde(with = "serde_rat")]
    pub lc: Rational,
    #[serde(with = "serde_rat_vec")]
    pub l0: Vec<Rational>,
    #[serde(with = "serde_rat")]
    pub ld: Rational,
}

/// A character `(chi_c, chi0, chi_d)`; `chi0` holds the values `d_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharTriple {
    #[serde(with = "serde_rat")]
    pub cc: Rational,
    #[serde(with = "serde_rat_vec")]
    pub c0: Vec<Rational>,
    #[serde(with = "serde_rat")]
    pub cd: Rational,
}

impl WeightTriple {
    pub fn new(lc: Rational, l0: Vec<Rational>, ld: Rational) -> Self {
        WeightTriple { lc, l0, ld }
    }

    /// `(1, l0, 0)`.
    pub fn standard(l0: Vec<Rational>) -> Self {
        WeightTriple { lc: Rational::one(), l0, ld: Rational::zero() }
    }

    pub fn dim(&self) -> usize {
        self.l0.len()
    }

    pub fn as_dual(&self) -> DualTriple {
        DualTriple::new(self.lc.clone(), self.l0.clone(), self.ld.clone())
    }

    pub fn from_dual(mu: DualTriple) -> Self {
        WeightTriple { lc: mu.c, l0: mu.f, ld: mu.d }
    }
}

impl CharTriple {
    pub fn new(cc: Rational, c0: Vec<Rational>, cd: Rational) -> Self {
        CharTriple { cc, c0, cd }
    }

    /// `(0, c0, 1)`.
    pub fn standard(c0: Vec<Rational>) -> Self {
        CharTriple { cc: Rational::zero(), c0, cd: Rational::one() }
    }

    pub fn dim(&self) -> usize {
        self.c0.len()
    }

    pub fn as_triple(&self) -> Triple {
        Triple::new(self.cc.clone(), self.c0.clone(), self.cd.clone())
    }

    pub fn from_triple(v: Triple) -> Self {
        CharTriple { cc: v.z, c0: v.h, cd: v.t }
    }
}

pub(crate) fn check_dims(lam: &WeightTriple, chi: &CharTriple) -> Result<usize> {
    if lam.dim() != chi.dim() {
        return Err(Error::Dimension { expected: lam.dim(), found: chi.dim() });
    }
    Ok(lam.dim())
}

/// `lambda(g.chi - chi)` through the group action.
pub fn energy_action(lam: &WeightTriple, chi: &CharTriple, g: &WeylElement) -> Rational {
    let mu = lam.as_dual();
    let v = chi.as_triple();
    mu.eval(&act(g, &v)) - mu.eval(&v)
}

/// Values `a_j = lambda_j + sigma_j d_{w^-1(j)}` of a stratum.
pub fn stratum_shifts(l0: &[Rational], c0: &[Rational], sigma: &[i8], w: &[usize]) -> Vec<Rational> {
    let mut a = l0.to_vec();
    for (k, dk) in c0.iter().enumerate() {
        let j = w[k];
        if sigma[j] < 0 {
            a[j] -= dk;
        } else {
            a[j] += dk;
        }
    }
    a
}

/// The indexed closed form of the energy.
pub fn energy_closed(lam: &WeightTriple, chi: &CharTriple, g: &WeylElement) -> Rational {
    let moved = stratum_shifts(&vec![Rational::zero(); chi.dim()], &chi.c0, &g.sigma, &g.w);
    let mut quad = Rational::zero();
    let mut lin_c = Rational::zero();
    let mut lin_d = Rational::zero();
    let mut rest = Rational::zero();
    for j in 0..g.dim() {
        let n = int(g.x[j]);
        quad += &n * &n;
        lin_c += &n * &moved[j];
        lin_d += &n * &lam.l0[j];
        rest += &lam.l0[j] * (&moved[j] - &chi.c0[j]);
    }
    &lam.lc * &chi.cd * quad / int(2) + &lam.lc * lin_c + &chi.cd * lin_d + rest
}

/// Normalized form `1/2 sum((n_j + a_j)^2 - (lambda_j + d_j)^2)`, valid when `lambda_c = chi_d = 1`.
pub fn energy_normalized(l0: &[Rational], c0: &[Rational], g: &WeylElement) -> Rational {
    let a = stratum_shifts(l0, c0, &g.sigma, &g.w);
    let mut total = Rational::zero();
    for j in 0..g.dim() {
        let s = int(g.x[j]) + &a[j];
        let base = &l0[j] + &c0[j];
        total += &s * &s - &base * &base;
    }
    total / int(2)
}

/// Energy computed along both paths; a mismatch is reported as an inconsistency.
pub fn energy(lam: &WeightTriple, chi: &CharTriple, g: &WeylElement) -> Result<Rational> {
    let n = check_dims(lam, chi)?;
    if g.dim() != n {
        return Err(Error::Dimension { expected: n, found: g.dim() });
    }
    let by_action = energy_action(lam, chi, g);
    let by_formula = energy_closed(lam, chi, g);
    if by_action != by_formula {
        return Err(Error::Inconsistency(format!(
            "energy paths disagree: action {by_action}, closed form {by_formula}"
        )));
    }
    Ok(by_action)
}

/// `(chi(g.lambda - lambda), lambda(g^-1.chi - chi))`, the first through `sharp` and `kappa`.
pub fn pairing_adjoint(
    lam: &WeightTriple,
    chi: &CharTriple,
    g: &WeylElement,
) -> Result<(Rational, Rational)> {
    let n = check_dims(lam, chi)?;
    if g.dim() != n {
        return Err(Error::Dimension { expected: n, found: g.dim() });
    }
    let mu = lam.as_dual();
    let moved = flat(&act(g, &sharp(&mu)));
    let v = chi.as_triple();
    let left = moved.eval(&v) - mu.eval(&v);
    let right = energy_action(lam, chi, &inverse(g));
    Ok((left, right))
}

/// `(lambda_st, chi_st, lambda_c chi_d)`.
pub fn normalize(lam: &WeightTriple, chi: &CharTriple) -> Result<(WeightTriple, CharTriple, Rational)> {
    check_dims(lam, chi)?;
    let scale = &lam.lc * &chi.cd;
    if !scale.is_positive() {
        return Err(Error::NonPositiveScale(crate::scalar::format_rational(&scale)));
    }
    let l0 = lam.l0.iter().map(|x| x / &lam.lc).collect();
    let c0 = chi.c0.iter().map(|x| x / &chi.cd).collect();
    Ok((WeightTriple::standard(l0), CharTriple::standard(c0), scale))
}

pub fn is_normalized(lam: &WeightTriple, chi: &CharTriple) -> bool {
    lam.lc.is_one() && chi.cd.is_one()
}

/// `(lambda_m, chi_m) = ((1, lambda0 - m, 0), (0, chi0 + m, 1))`.
pub fn translate(
    lam: &WeightTriple,
    chi: &CharTriple,
    m: &[i64],
    ty: AffineType,
) -> Result<(WeightTriple, CharTriple)> {
    let n = check_dims(lam, chi)?;
    if m.len() != n {
        return Err(Error::Dimension { expected: n, found: m.len() });
    }
    if !is_normalized(lam, chi) {
        return Err(Error::NotNormalized);
    }
    if ty == AffineType::B2 {
        if let Some(j) = m.iter().position(|v| v % 2 != 0) {
            return Err(Error::OddTranslation(j));
        }
    }
    let l0 = lam.l0.iter().zip(m).map(|(x, &k)| x - int(k)).collect();
    let c0 = chi.c0.iter().zip(m).map(|(x, &k)| x + int(k)).collect();
    Ok((
        WeightTriple { lc: lam.lc.clone(), l0, ld: lam.ld.clone() },
        CharTriple { cc: chi.cc.clone(), c0, cd: chi.cd.clone() },
    ))
}

fn rounded(x: &Rational) -> i64 {
    nearest_int(x).to_i64().expect("rounded value out of i64 range")
}

/// Minimizer of `sum (n_j + a_j)^2` over the translation lattice of `ty`.
pub fn lattice_minimizer(a: &[Rational], ty: AffineType) -> Vec<i64> {
    let dim = a.len();
    if ty == AffineType::D1 && dim == 1 {
        return vec![0];
    }
    let mut n: Vec<i64> = a.iter().map(|x| -rounded(x)).collect();
    let pos = |n: &[i64], j: usize| int(n[j]) + &a[j];
    match ty {
        AffineType::C1 | AffineType::BC2 => {}
        AffineType::B2 => {
            n = a.iter().map(|x| -2 * rounded(&(x / int(2)))).collect();
        }
        AffineType::B1 | AffineType::D1 | AffineType::C2 => {
            if n.iter().sum::<i64>().rem_euclid(2) != 0 {
                // Cost of n_j -> n_j + delta is 2 delta (n_j + a_j) + 1.
                let mut best: Option<(Rational, usize, i64)> = None;
                for j in 0..dim {
                    for delta in [-1i64, 1] {
                        let cost = int(2 * delta) * pos(&n, j) + int(1);
                        if best.as_ref().map_or(true, |(c, _, _)| cost < *c) {
                            best = Some((cost, j, delta));
                        }
                    }
                }
                let (_, j, delta) = best.expect("nonempty index set");
                n[j] += delta;
            }
        }
        AffineType::A1 => loop {
            let total: i64 = n.iter().sum();
            if total == 0 {
                break;
            }
            let delta = if total > 0 { -1 } else { 1 };
            let j = (0..dim)
                .min_by(|&i, &k| {
                    let ci = int(2 * delta) * pos(&n, i);
                    let ck = int(2 * delta) * pos(&n, k);
                    ci.cmp(&ck).then(i.cmp(&k))
                })
                .expect("nonempty index set");
            n[j] += delta;
        },
    }
    n
}

/// Closed-form minimum over translations of the stratum `sigma . w`, on normalized data.
pub fn min_over_translations(
    lam: &WeightTriple,
    chi: &CharTriple,
    sigma: &[i8],
    w: &[usize],
    ty: AffineType,
) -> Result<(Rational, Vec<i64>)> {
    let dim = check_dims(lam, chi)?;
    if !is_normalized(lam, chi) {
        return Err(Error::NotNormalized);
    }
    if sigma.len() != dim || w.len() != dim {
        return Err(Error::Dimension { expected: dim, found: sigma.len().max(w.len()) });
    }
    let a = stratum_shifts(&lam.l0, &chi.c0, sigma, w);
    let n = lattice_minimizer(&a, ty);
    let mut total = Rational::zero();
    for j in 0..dim {
        let s = int(n[j]) + &a[j];
        let base = &lam.l0[j] + &chi.c0[j];
        total += &s * &s - &base * &base;
    }
    Ok((total / int(2), n))
}

/// Exact minimum over the Weyl group of a finite index set, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infimum {
    pub value: Rational,
    pub witness: WeylElement,
}

/// Above this many indices `infimum` switches from stratum enumeration to the assignment DP.
pub const STRATA_MAX_DIM: usize = 6;

/// Cap on the number of value-class count vectors in [`infimum_dp`].
pub const DP_MAX_STATES: usize = 1 << 22;

enum Prelude {
    Done(Infimum),
    Normalized(WeightTriple, CharTriple, Rational),
}

fn prelude(lam: &WeightTriple, chi: &CharTriple, ty: AffineType) -> Result<Prelude> {
    let dim = check_dims(lam, chi)?;
    if dim == 0 {
        return Err(Error::EmptyIndexSet);
    }
    // Single-index A1 and D1 have trivial Weyl groups.
    if dim == 1 && matches!(ty, AffineType::A1 | AffineType::D1) {
        return Ok(Prelude::Done(Infimum {
            value: Rational::zero(),
            witness: WeylElement::identity(ty, 1),
        }));
    }
    let scale = &lam.lc * &chi.cd;
    if scale.is_negative() {
        return Err(Error::Unbounded(format!(
            "lambda_c * chi_d = {} < 0",
            crate::scalar::format_rational(&scale)
        )));
    }
    if scale.is_zero() {
        return Err(Error::Degenerate("lambda_c * chi_d = 0".into()));
    }
    let (ls, cs, scale) = normalize(lam, chi)?;
    Ok(Prelude::Normalized(ls, cs, scale))
}

/// `inf lambda(W.chi - chi)` over the whole Weyl group of the finite index set.
pub fn infimum(lam: &WeightTriple, chi: &CharTriple, ty: AffineType) -> Result<Infimum> {
    if lam.dim() > STRATA_MAX_DIM {
        return infimum_dp(lam, chi, ty);
    }
    infimum_strata(lam, chi, ty)
}

/// Infimum by closed-form minimization on every `(sigma, w)` stratum.
pub fn infimum_strata(lam: &WeightTriple, chi: &CharTriple, ty: AffineType) -> Result<Infimum> {
    let (ls, cs, scale) = match prelude(lam, chi, ty)? {
        Prelude::Done(inf) => return Ok(inf),
        Prelude::Normalized(l, c, s) => (l, c, s),
    };
    let dim = ls.dim();
    let perms = permutations(dim);
    let mut best: Option<(Rational, WeylElement)> = None;
    for sigma in sign_vectors(ty, dim) {
        for w in &perms {
            let (value, x) = min_over_translations(&ls, &cs, &sigma, w, ty)?;
            if best.as_ref().map_or(true, |(b, _)| value < *b) {
                let g = WeylElement { ty, x, sigma: sigma.clone(), w: w.clone() };
                best = Some((value, g));
            }
        }
    }
    let (value, witness) = best.expect("at least the identity stratum");
    finish(lam, chi, value * scale, witness)
}

fn finish(lam: &WeightTriple, chi: &CharTriple, value: Rational, witness: WeylElement) -> Result<Infimum> {
    witness.validate()?;
    let check = energy(lam, chi, &witness)?;
    if check != value {
        return Err(Error::Inconsistency(format!(
            "infimum {value} does not match witness energy {check}"
        )));
    }
    Ok(Infimum { value, witness })
}

struct DpOption {
    sign: i8,
    n: i64,
    cost: i128,
}

#[derive(Clone, Copy)]
struct DpEntry {
    cost: i128,
    prev_tag: i64,
    source: usize,
    sign: i8,
    n: i64,
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .filter(|v| v.abs() < (1i128 << 56))
        .ok_or_else(|| Error::Inconsistency("values too large for the assignment search".into()))
}

/// Infimum by a dynamic program over partial assignments of sources to positions.
///
/// Positions `j` are filled in order; each takes a source `k = w^-1(j)`, a sign
/// and a level `n_j`. Sources with equal values are interchangeable, so the
/// state records how many of each value class are used, together with whichever
/// lattice and sign data the type constrains: parities, or the running sum for `A1`.
pub fn infimum_dp(lam: &WeightTriple, chi: &CharTriple, ty: AffineType) -> Result<Infimum> {
    let (ls, cs, scale) = match prelude(lam, chi, ty)? {
        Prelude::Done(inf) => return Ok(inf),
        Prelude::Normalized(l, c, s) => (l, c, s),
    };
    let dim = ls.dim();
    let l0 = &ls.l0;
    let d = &cs.c0;

    let mut classes: Vec<(Rational, Vec<usize>)> = Vec::new();
    for (k, dk) in d.iter().enumerate() {
        match classes.iter_mut().find(|(v, _)| v == dk) {
            Some((_, members)) => members.push(k),
            None => classes.push((dk.clone(), vec![k])),
        }
    }
    let mut strides = Vec::with_capacity(classes.len());
    let mut states = 1usize;
    for (_, members) in &classes {
        strides.push(states);
        states = states
            .checked_mul(members.len() + 1)
            .filter(|&s| s <= DP_MAX_STATES)
            .ok_or_else(|| Error::Degenerate(format!("{dim} indices exceed the assignment search bound")))?;
    }

    let denom = common_denominator(l0.iter().chain(d.iter()));
    let denom_r = Rational::from_integer(denom.clone());
    let denom_i = to_i128(&denom)?;
    let signs: &[i8] = if ty == AffineType::A1 { &[1] } else { &[1, -1] };
    let mean: Rational = (l0.iter().sum::<Rational>() + d.iter().sum::<Rational>()) / int(dim as i64);

    let mut options: Vec<Vec<Vec<DpOption>>> = Vec::with_capacity(dim);
    for lj in l0 {
        let mut row = Vec::with_capacity(classes.len());
        for (dk, _) in &classes {
            let mut opts = Vec::new();
            for &s in signs {
                let a = if s < 0 { lj - dk } else { lj + dk };
                let a_scaled = to_i128(&(&a * &denom_r).to_integer())?;
                let levels: Vec<i64> = match ty {
                    AffineType::C1 | AffineType::BC2 => vec![-rounded(&a)],
                    AffineType::B2 => vec![-2 * rounded(&(&a / int(2)))],
                    AffineType::B1 | AffineType::D1 | AffineType::C2 => {
                        let n0 = -rounded(&a);
                        vec![n0 - 1, n0, n0 + 1]
                    }
                    AffineType::A1 => {
                        let lo = (&mean - &a).floor().to_integer().to_i64().expect("level in range");
                        vec![lo, lo + 1]
                    }
                };
                for n in levels {
                    let v = i128::from(n) * denom_i + a_scaled;
                    opts.push(DpOption { sign: s, n, cost: v * v });
                }
            }
            row.push(opts);
        }
        options.push(row);
    }

    let parity_sum = matches!(ty, AffineType::B1 | AffineType::D1 | AffineType::C2);
    let parity_sign = ty == AffineType::D1;
    let next_tag = |tag: i64, sign: i8, n: i64| -> i64 {
        if ty == AffineType::A1 {
            return tag + n;
        }
        let mut t = tag;
        if parity_sum && n.rem_euclid(2) == 1 {
            t ^= 1;
        }
        if parity_sign && sign < 0 {
            t ^= 2;
        }
        t
    };
    let used = |state: usize, c: usize| (state / strides[c]) % (classes[c].1.len() + 1);

    // States are visited in increasing order, which respects the fill order.
    let full = states - 1;
    let mut table: Vec<BTreeMap<i64, DpEntry>> = vec![BTreeMap::new(); states];
    table[0].insert(0, DpEntry { cost: 0, prev_tag: 0, source: usize::MAX, sign: 1, n: 0 });
    for state in 0..full {
        if table[state].is_empty() {
            continue;
        }
        let j: usize = (0..classes.len()).map(|c| used(state, c)).sum();
        let entries: Vec<(i64, i128)> = table[state].iter().map(|(&t, e)| (t, e.cost)).collect();
        for (tag, cost) in entries {
            for c in 0..classes.len() {
                if used(state, c) == classes[c].1.len() {
                    continue;
                }
                let target = state + strides[c];
                for opt in &options[j][c] {
                    let t = next_tag(tag, opt.sign, opt.n);
                    let total = cost + opt.cost;
                    let slot = table[target].entry(t).or_insert(DpEntry {
                        cost: i128::MAX,
                        prev_tag: 0,
                        source: 0,
                        sign: 1,
                        n: 0,
                    });
                    if total < slot.cost {
                        *slot = DpEntry { cost: total, prev_tag: tag, source: c, sign: opt.sign, n: opt.n };
                    }
                }
            }
        }
    }
    let final_entry = table[full]
        .get(&0)
        .copied()
        .ok_or_else(|| Error::Inconsistency("assignment search found no admissible element".into()))?;

    let mut x = vec![0i64; dim];
    let mut sigma = vec![1i8; dim];
    let mut w = vec![0usize; dim];
    let mut state = full;
    let mut tag = 0i64;
    for j in (0..dim).rev() {
        let e = table[state][&tag];
        let c = e.source;
        x[j] = e.n;
        sigma[j] = e.sign;
        w[classes[c].1[used(state, c) - 1]] = j;
        state -= strides[c];
        tag = e.prev_tag;
    }
    let witness = WeylElement { ty, x, sigma, w };
    let constant: Rational = l0.iter().zip(d).map(|(l, dk)| (l + dk) * (l + dk)).sum();
    let total = Rational::new(BigInt::from(final_entry.cost), &denom * &denom);
    let value = (total - constant) * half() * scale;
    finish(lam, chi, value, witness)
}
