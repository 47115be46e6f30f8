//! Reduction of a slanted, twisted affinisation to a standard positive-energy
//! problem.
//!
//! The isomorphism onto a standard affinisation acts on the Cartan subalgebra by
//! `phi_map`, and turns the slanted Weyl group into `tau_{-m} W tau_m` with
//! `m = Q nu + N_psi mu`. Conjugating that away gives a standard instance.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::in_cmin_affine;
use crate::energy::{CharTriple, WeightTriple};
use crate::error::{Error, Result};
use crate::profiles::{integrality_check, pec_decide, CohortProfile, Entry, PecVerdict};
use crate::rootdata::{AffineType, Triple};
use crate::scalar::{int, serde_rat, Rational};
use crate::weyl::{act, WeylElement};

fn zero() -> Rational {
    Rational::zero()
}

/// Weight data at one index: `lambda_j` and the values of `nu`, `mu`, `nu'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Site {
    #[serde(with = "serde_rat")]
    pub lambda: Rational,
    #[serde(with = "serde_rat", default = "zero")]
    pub nu: Rational,
    #[serde(with = "serde_rat", default = "zero")]
    pub mu: Rational,
    #[serde(with = "serde_rat", default = "zero")]
    pub nu_prime: Rational,
}

/// Sites are given as cohorts (infinitely repeated) and exceptions, as for profiles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinisationInstance {
    pub n_phi: u32,
    pub n_psi: u32,
    #[serde(rename = "type")]
    pub x_std: AffineType,
    #[serde(with = "serde_rat")]
    pub lc: Rational,
    #[serde(with = "serde_rat", default = "zero")]
    pub ld: Rational,
    pub cohorts: Vec<Site>,
    #[serde(default)]
    pub exceptions: Vec<Site>,
}

impl AffinisationInstance {
    /// `Q = N_psi / N_phi`.
    pub fn q(&self) -> Rational {
        Rational::new(self.n_psi.into(), self.n_phi.into())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_phi == 0 {
            return Err(Error::InvalidAffinisation("N_phi must be positive".into()));
        }
        if !matches!(self.n_psi, 1 | 2) {
            return Err(Error::InvalidAffinisation(format!("N_psi must be 1 or 2, found {}", self.n_psi)));
        }
        if u32::from(self.x_std.twist()) != self.n_psi {
            return Err(Error::InvalidAffinisation(format!(
                "type {} needs N_psi = {}",
                self.x_std,
                self.x_std.twist()
            )));
        }
        if self.cohorts.is_empty() && self.exceptions.is_empty() {
            return Err(Error::InvalidAffinisation("no sites".into()));
        }
        if self.lc.is_zero() {
            return Err(Error::ZeroLambdaC);
        }
        Ok(())
    }

    fn sites(&self, k: usize) -> Vec<&Site> {
        let mut out = Vec::new();
        for s in &self.cohorts {
            out.extend(std::iter::repeat(s).take(k));
        }
        out.extend(&self.exceptions);
        out
    }

    /// `m = Q nu + N_psi mu` on the `k`-fold truncation.
    pub fn slant(&self, k: usize) -> Vec<Rational> {
        let q = self.q();
        let n_psi = int(self.n_psi.into());
        self.sites(k).iter().map(|s| &q * &s.nu + &n_psi * &s.mu).collect()
    }

    /// `lambda_phi = [lambda_c, lambda0, lambda_d]` and `chi_phi = [0, nu' - nu, 1]` on the truncation.
    pub fn truncate(&self, k: usize) -> (WeightTriple, CharTriple) {
        let sites = self.sites(k);
        (
            WeightTriple::new(self.lc.clone(), sites.iter().map(|s| s.lambda.clone()).collect(), self.ld.clone()),
            CharTriple::new(zero(), sites.iter().map(|s| &s.nu_prime - &s.nu).collect(), Rational::one()),
        )
    }
}

/// `[z, h, t] -> [Q z, h, t / Q]`.
pub fn phi_map(v: &Triple, q: &Rational) -> Result<Triple> {
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    Ok(Triple { z: q * &v.z, h: v.h.clone(), t: &v.t / q })
}

/// `tau_x` for an arbitrary real vector `x`.
pub fn translate_real(v: &Triple, x: &[Rational]) -> Triple {
    let xh: Rational = x.iter().zip(&v.h).map(|(a, b)| a * b).sum();
    let xx: Rational = x.iter().map(|a| a * a).sum();
    Triple {
        z: &v.z + xh + &v.t * xx / int(2),
        h: v.h.iter().zip(x).map(|(h, a)| h + &v.t * a).collect(),
        t: v.t.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    #[serde(rename = "type")]
    pub ty: AffineType,
    /// `[lambda_c / Q, lambda0 - lambda_c (nu + N_phi mu), 0]` against `[0, nu' + N_phi mu, 1 / Q]`.
    pub profile: CohortProfile,
    /// The energy set equals this factor times the energies of the normalized pair.
    #[serde(with = "serde_rat")]
    pub scale: Rational,
}

pub fn reduce_to_standard(inst: &AffinisationInstance) -> Result<Reduction> {
    inst.validate()?;
    let q = inst.q();
    let n_phi = int(inst.n_phi.into());
    let entry = |s: &Site| {
        let shift = &s.nu + &n_phi * &s.mu;
        Entry::new(&s.lambda - &inst.lc * shift, &s.nu_prime + &n_phi * &s.mu)
    };
    let profile = CohortProfile {
        lc: &inst.lc / &q,
        ld: zero(),
        cc: zero(),
        cd: Rational::one() / &q,
        cohorts: inst.cohorts.iter().map(entry).collect(),
        exceptions: inst.exceptions.iter().map(entry).collect(),
    };
    Ok(Reduction { ty: inst.x_std, profile, scale: &inst.lc / (&q * &q) })
}

/// `lambda_phi(g' chi_phi - chi_phi)` for the element `g' = Phi^-1 tau_{-m} g tau_m Phi`
/// of the original Weyl group, on the `k`-fold truncation.
pub fn transported_energy(inst: &AffinisationInstance, k: usize, g: &WeylElement) -> Result<Rational> {
    inst.validate()?;
    let q = inst.q();
    let m = inst.slant(k);
    let (lam, chi) = inst.truncate(k);
    if g.dim() != m.len() {
        return Err(Error::Dimension { expected: m.len(), found: g.dim() });
    }
    let start = chi.as_triple();
    let neg_m: Vec<Rational> = m.iter().map(|x| -x).collect();
    let moved = phi_map(&start, &q)?;
    let moved = translate_real(&moved, &m);
    let moved = act(g, &moved);
    let moved = translate_real(&moved, &neg_m);
    let moved = phi_map(&moved, &(Rational::one() / &q))?;
    Ok(lam.as_dual().eval(&moved.sub(&start)))
}

/// The equivalent formulations of the positive energy condition, all carrying one verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralVerdict {
    pub pec: bool,
    pub positive_energy: bool,
    pub bounded_below: bool,
    pub standard_pec: bool,
    pub decomposes: bool,
    /// The reduced triple itself has minimal energy, so the infimum is `0`.
    pub minimal: bool,
    /// `lambda_phi` is integral on the coroots; reported, not required.
    pub integral: bool,
    pub reduction: Reduction,
    pub verdict: PecVerdict,
}

pub fn pec_decide_general(inst: &AffinisationInstance) -> Result<GeneralVerdict> {
    let reduction = reduce_to_standard(inst)?;
    let verdict = pec_decide(&reduction.profile, reduction.ty)?;
    let pec = verdict.pec;
    let minimal = pec && (&reduction.profile.lc * &reduction.profile.cd).is_positive() && {
        // Cone conditions involve at most two indices, so two copies decide.
        let (lam, chi) = reduction.profile.truncate(2);
        in_cmin_affine(&lam, &chi, reduction.ty)?.member
    };
    Ok(GeneralVerdict {
        pec,
        positive_energy: pec,
        bounded_below: pec,
        standard_pec: pec,
        decomposes: pec,
        minimal,
        integral: integrality_check(&reduction.profile, reduction.ty),
        reduction,
        verdict,
    })
}
