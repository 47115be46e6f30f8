//! Brute-force ground truth for the closed-form modules.
//!
//! Energies here are evaluated through the group action in scaled integer
//! arithmetic, never through the closed forms in `energy`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::energy::{check_dims, energy_action, CharTriple, WeightTriple};
use crate::error::{Error, Result};
use crate::rootdata::{roots_enumerate, AffineRoot, AffineType};
use crate::scalar::{ceil_i64, common_denominator, int, Rational};
use crate::weyl::{lattice_vectors, permutations, sign_vectors, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    pub lattice_radius: i64,
    /// Largest index set the oracle accepts.
    pub max_support: usize,
    /// Optional cap on the number of `(sigma, w)` strata visited.
    pub stratum_limit: Option<usize>,
    /// Radius beyond which certification gives up.
    pub radius_cap: i64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { lattice_radius: 5, max_support: 4, stratum_limit: None, radius_cap: 40 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Certified { value: Rational, witness: WeylElement, radius: i64 },
    Inconclusive { radius: i64, reason: String },
}

impl OracleOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            OracleOutcome::Certified { value, .. } => Some(value),
            OracleOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Integer image of `(lambda, chi)` with the common scales needed to undo it.
struct Scaled {
    lc: i128,
    l0: Vec<i128>,
    c0: Vec<i128>,
    cd: i128,
    /// `2 * D_lambda * D_chi`
    denom: BigInt,
}

fn scaled(lam: &WeightTriple, chi: &CharTriple) -> Option<Scaled> {
    let dl = common_denominator(std::iter::once(&lam.lc).chain(&lam.l0).chain(std::iter::once(&lam.ld)));
    let dc = common_denominator(std::iter::once(&chi.cc).chain(&chi.c0).chain(std::iter::once(&chi.cd)));
    let dl_r = Rational::from_integer(dl.clone());
    let dc_r = Rational::from_integer(dc.clone());
    let up = |x: &Rational, d: &Rational| (x * d).to_integer().to_i128().filter(|v| v.abs() < 1 << 40);
    Some(Scaled {
        lc: up(&lam.lc, &dl_r)?,
        l0: lam.l0.iter().map(|x| up(x, &dl_r)).collect::<Option<_>>()?,
        c0: chi.c0.iter().map(|x| up(x, &dc_r)).collect::<Option<_>>()?,
        cd: up(&chi.cd, &dc_r)?,
        denom: BigInt::from(2) * dl * dc,
    })
}

impl Scaled {
    /// Twice the scaled energy of `tau_x s` where `moved = s(chi0)`; `None` on overflow.
    fn doubled_energy(&self, x: &[i64], moved: &[i128]) -> Option<i128> {
        let mut xh: i128 = 0;
        let mut xx: i128 = 0;
        let mut lin: i128 = 0;
        for j in 0..x.len() {
            let n = i128::from(x[j]);
            xh = xh.checked_add(n.checked_mul(moved[j])?)?;
            xx = xx.checked_add(n * n)?;
            let h_new = moved[j].checked_add(self.cd.checked_mul(n)?)?;
            lin = lin.checked_add(self.l0[j].checked_mul(h_new - self.c0[j])?)?;
        }
        // 2(z' - z) = 2<x, s chi0> + chi_d <x, x>
        let dz = xh.checked_mul(2)?.checked_add(self.cd.checked_mul(xx)?)?;
        self.lc.checked_mul(dz)?.checked_add(lin.checked_mul(2)?)
    }

    fn moved(&self, sigma: &[i8], w: &[usize]) -> Vec<i128> {
        let mut out = vec![0; self.c0.len()];
        for (k, &v) in self.c0.iter().enumerate() {
            let j = w[k];
            out[j] = i128::from(sigma[j]) * v;
        }
        out
    }
}

/// Enumeration order of [`crate::weyl::enumerate`].
fn lex_less(a: &WeylElement, b: &WeylElement) -> bool {
    let flips = |g: &WeylElement| g.sigma.iter().map(|&s| s < 0).collect::<Vec<_>>();
    (&a.x, flips(a), &a.w) < (&b.x, flips(b), &b.w)
}

struct Best {
    value: Option<Rational>,
    witness: Option<WeylElement>,
}

impl Best {
    fn offer(&mut self, value: Rational, g: WeylElement) {
        let better = match (&self.value, &self.witness) {
            (Some(v), Some(w)) => value < *v || (value == *v && lex_less(&g, w)),
            _ => true,
        };
        if better {
            self.value = Some(value);
            self.witness = Some(g);
        }
    }
}

/// Minimum over one stratum's box, with the smallest sup-norm among its minimizers.
fn stratum_box_min(
    lam: &WeightTriple,
    chi: &CharTriple,
    sc: Option<&Scaled>,
    ty: AffineType,
    sigma: &[i8],
    w: &[usize],
    radius: i64,
) -> (Rational, WeylElement, i64) {
    let dim = w.len();
    let points = lattice_vectors(ty, dim, radius);
    let element = |x: Vec<i64>| WeylElement { ty, x, sigma: sigma.to_vec(), w: w.to_vec() };
    if let Some(s) = sc {
        if let Some((value, x, reach)) = box_min_scaled(s, &points, sigma, w) {
            let value = Rational::new(BigInt::from(value), s.denom.clone());
            return (value, element(x), reach);
        }
    }
    let mut best: Option<(Rational, usize)> = None;
    let mut reach = i64::MAX;
    for (idx, x) in points.iter().enumerate() {
        let value = energy_action(lam, chi, &element(x.clone()));
        track(&mut best, &mut reach, value, idx, x);
    }
    let (value, idx) = best.expect("the zero vector lies in every lattice");
    (value, element(points[idx].clone()), reach)
}

fn track<T: PartialOrd>(best: &mut Option<(T, usize)>, reach: &mut i64, value: T, idx: usize, x: &[i64]) {
    let r = x.iter().map(|n| n.abs()).max().unwrap_or(0);
    match best {
        Some((b, _)) if value > *b => {}
        Some((b, _)) if value == *b => *reach = (*reach).min(r),
        _ => {
            *reach = r;
            *best = Some((value, idx));
        }
    }
}

fn box_min_scaled(s: &Scaled, points: &[Vec<i64>], sigma: &[i8], w: &[usize]) -> Option<(i128, Vec<i64>, i64)> {
    let moved = s.moved(sigma, w);
    let mut best: Option<(i128, usize)> = None;
    let mut reach = i64::MAX;
    for (idx, x) in points.iter().enumerate() {
        let value = s.doubled_energy(x, &moved)?;
        track(&mut best, &mut reach, value, idx, x);
    }
    let (value, idx) = best?;
    Some((value, points[idx].clone(), reach))
}

fn data_bound(lam: &WeightTriple, chi: &CharTriple) -> i64 {
    let ml = lam.l0.iter().map(|x| (x / &lam.lc).abs()).max().unwrap_or_else(Rational::zero);
    let md = chi.c0.iter().map(|x| (x / &chi.cd).abs()).max().unwrap_or_else(Rational::zero);
    ceil_i64(&(ml + md))
}

/// Exhaustive minimum of the energy over each stratum's lattice box.
///
/// A stratum's box minimum is accepted once some minimizer keeps a margin
/// of two from the box boundary: every lattice move `+-e_i +- e_j` or
/// `+-2e_i` then stays in the box, and for a separable convex energy on
/// these lattices such local optimality is global. Otherwise the radius
/// grows by two until the cap.
pub fn brute_infimum(
    lam: &WeightTriple,
    chi: &CharTriple,
    ty: AffineType,
    cfg: &OracleConfig,
) -> Result<OracleOutcome> {
    let dim = check_dims(lam, chi)?;
    if dim == 0 {
        return Err(Error::EmptyIndexSet);
    }
    if dim > cfg.max_support {
        return Ok(OracleOutcome::Inconclusive {
            radius: cfg.lattice_radius,
            reason: format!("{dim} indices exceed the oracle bound {}", cfg.max_support),
        });
    }
    let trivial = dim == 1 && matches!(ty, AffineType::A1 | AffineType::D1);
    if !trivial && !(&lam.lc * &chi.cd).is_positive() {
        return Ok(OracleOutcome::Inconclusive {
            radius: cfg.lattice_radius,
            reason: "lambda_c * chi_d is not positive; the energy has no attained minimum".into(),
        });
    }
    let sc = scaled(lam, chi);
    let start = if trivial {
        0
    } else {
        cfg.lattice_radius.max(data_bound(lam, chi) + 3)
    };
    let perms = permutations(dim);
    let mut best = Best { value: None, witness: None };
    let mut used = start;
    let mut visited = 0usize;
    for sigma in sign_vectors(ty, dim) {
        for w in &perms {
            if cfg.stratum_limit.is_some_and(|lim| visited >= lim) {
                return Ok(OracleOutcome::Inconclusive {
                    radius: used,
                    reason: format!("stratum limit {visited} reached"),
                });
            }
            visited += 1;
            let mut radius = start;
            loop {
                let (value, g, reach) = stratum_box_min(lam, chi, sc.as_ref(), ty, &sigma, w, radius);
                if trivial || reach <= radius - 2 {
                    used = used.max(radius);
                    best.offer(value, g);
                    break;
                }
                radius += 2;
                if radius > cfg.radius_cap {
                    return Ok(OracleOutcome::Inconclusive {
                        radius,
                        reason: "a box minimizer stays on the boundary up to the radius cap".into(),
                    });
                }
            }
        }
    }
    Ok(OracleOutcome::Certified {
        value: best.value.expect("identity stratum"),
        witness: best.witness.expect("identity stratum"),
        radius: used,
    })
}

/// Raw minimum over all elements with `|x_j| <= radius`, with no certification.
pub fn radius_minimum(
    lam: &WeightTriple,
    chi: &CharTriple,
    ty: AffineType,
    radius: i64,
) -> Result<(Rational, WeylElement)> {
    let dim = check_dims(lam, chi)?;
    if dim == 0 {
        return Err(Error::EmptyIndexSet);
    }
    let sc = scaled(lam, chi);
    let mut best = Best { value: None, witness: None };
    for sigma in sign_vectors(ty, dim) {
        for w in permutations(dim) {
            let (value, g, _) = stratum_box_min(lam, chi, sc.as_ref(), ty, &sigma, &w, radius);
            best.offer(value, g);
        }
    }
    Ok((best.value.expect("identity"), best.witness.expect("identity")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityOutcome {
    pub minimal: bool,
    /// A root with `lambda(coroot) > 0` and `gamma(chi) > 0`.
    pub witness: Option<AffineRoot>,
    pub radius: i64,
}

/// Checks `lambda(gamma^vee) > 0 => gamma(chi) <= 0` over all roots with `|n| <= radius`.
///
/// The radius is raised to cover every level where either side can change sign.
pub fn brute_minimality(
    lam: &WeightTriple,
    chi: &CharTriple,
    ty: AffineType,
    cfg: &OracleConfig,
) -> Result<MinimalityOutcome> {
    let dim = check_dims(lam, chi)?;
    if lam.lc.is_zero() || chi.cd.is_zero() {
        return Err(Error::Degenerate("minimality needs lambda_c and chi_d nonzero".into()));
    }
    let finite = roots_enumerate(ty, dim, 0..=0)?;
    let mut reach = Rational::zero();
    for g in &finite {
        let a = (g.alpha.eval(&lam.l0) / &lam.lc).abs();
        let b = (g.alpha.eval(&chi.c0) / &chi.cd).abs();
        reach = reach.max(a).max(b);
    }
    let radius = cfg.lattice_radius.max(ceil_i64(&reach) + 2);
    for gamma in roots_enumerate(ty, dim, -radius..=radius)? {
        let cor = crate::rootdata::coroot(&gamma, dim);
        let pairing = lam.as_dual().eval(&cor);
        if pairing.is_positive() {
            let value = gamma.alpha.eval(&chi.c0) + int(gamma.n) * &chi.cd;
            if value.is_positive() {
                return Ok(MinimalityOutcome { minimal: false, witness: Some(gamma), radius });
            }
        }
    }
    Ok(MinimalityOutcome { minimal: true, witness: None, radius })
}
