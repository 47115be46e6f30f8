//! Affine Weyl group elements `tau_x . sigma . w` on a finite index set.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rootdata::{lattice_contains_on, AffineRoot, AffineType, FiniteRoot, Triple};
use crate::scalar::{int, Rational};

/// The map `tau_x . sigma . w`, where `w(e_j) = e_{w[j]}` and `sigma` flips signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub ty: AffineType,
    pub x: Vec<i64>,
    /// Entries are `1` or `-1`.
    pub sigma: Vec<i8>,
    pub w: Vec<usize>,
}

impl WeylElement {
    pub fn identity(ty: AffineType, dim: usize) -> Self {
        WeylElement { ty, x: vec![0; dim], sigma: vec![1; dim], w: (0..dim).collect() }
    }

    pub fn translation(ty: AffineType, x: Vec<i64>) -> Self {
        let dim = x.len();
        WeylElement { ty, x, sigma: vec![1; dim], w: (0..dim).collect() }
    }

    /// Checked constructor.
    pub fn new(ty: AffineType, x: Vec<i64>, sigma: Vec<i8>, w: Vec<usize>) -> Result<Self> {
        let g = WeylElement { ty, x, sigma, w };
        g.validate()?;
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&n| n == 0)
            && self.sigma.iter().all(|&s| s == 1)
            && self.w.iter().enumerate().all(|(j, &k)| j == k)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn validate(&self) -> Result<()> {
        let dim = self.x.len();
        for len in [self.sigma.len(), self.w.len()] {
            if len != dim {
                return Err(Error::Dimension { expected: dim, found: len });
            }
        }
        if !lattice_contains_on(self.ty, &self.x) {
            return Err(Error::InvalidElement(format!(
                "translation {:?} is not in the lattice of {}",
                self.x, self.ty
            )));
        }
        if self.sigma.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidElement("sign entries must be 1 or -1".into()));
        }
        let minus = self.sigma.iter().filter(|&&s| s == -1).count();
        if !self.ty.sign_rule().admits(minus) {
            return Err(Error::InvalidElement(format!(
                "{minus} sign flips not allowed in type {}",
                self.ty
            )));
        }
        let mut seen = vec![false; dim];
        for &k in &self.w {
            if k >= dim || seen[k] {
                return Err(Error::InvalidElement("w is not a permutation".into()));
            }
            seen[k] = true;
        }
        Ok(())
    }

    /// Image of an integer vector under the level-zero part `sigma . w`.
    pub fn linear_part_int(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (j, &vj) in v.iter().enumerate() {
            let k = self.w[j];
            out[k] = i64::from(self.sigma[k]) * vj;
        }
        out
    }

    fn linear_part(&self, h: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); h.len()];
        for (j, hj) in h.iter().enumerate() {
            let k = self.w[j];
            out[k] = if self.sigma[k] < 0 { -hj.clone() } else { hj.clone() };
        }
        out
    }

    /// Inverse permutation, `w_inv[w[j]] = j`.
    pub fn w_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.w.len()];
        for (j, &k) in self.w.iter().enumerate() {
            inv[k] = j;
        }
        inv
    }

    pub fn to_json(&self) -> Value {
        let x: BTreeMap<String, i64> = self
            .x
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(|(j, &n)| (j.to_string(), n))
            .collect();
        let sigma: Vec<usize> = (0..self.dim()).filter(|&j| self.sigma[j] < 0).collect();
        json!({ "x": x, "sigma": sigma, "w": cycles(&self.w) })
    }

    pub fn from_json(ty: AffineType, dim: usize, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("Weyl element: {m}"));
        let mut x = vec![0i64; dim];
        if let Some(map) = v.get("x").and_then(Value::as_object) {
            for (k, n) in map {
                let j: usize = k.parse().map_err(|_| bad("x keys must be indices"))?;
                if j >= dim {
                    return Err(Error::Dimension { expected: dim, found: j + 1 });
                }
                x[j] = n.as_i64().ok_or_else(|| bad("x values must be integers"))?;
            }
        }
        let mut sigma = vec![1i8; dim];
        if let Some(list) = v.get("sigma").and_then(Value::as_array) {
            for j in list {
                let j = j.as_u64().ok_or_else(|| bad("sigma entries must be indices"))? as usize;
                if j >= dim {
                    return Err(Error::Dimension { expected: dim, found: j + 1 });
                }
                sigma[j] = -1;
            }
        }
        let mut w: Vec<usize> = (0..dim).collect();
        if let Some(list) = v.get("w").and_then(Value::as_array) {
            for cycle in list {
                let c: Vec<usize> = cycle
                    .as_array()
                    .ok_or_else(|| bad("w must be a list of cycles"))?
                    .iter()
                    .map(|j| j.as_u64().map(|j| j as usize))
                    .collect::<Option<_>>()
                    .ok_or_else(|| bad("cycle entries must be indices"))?;
                for (p, &j) in c.iter().enumerate() {
                    if j >= dim {
                        return Err(Error::Dimension { expected: dim, found: j + 1 });
                    }
                    w[j] = c[(p + 1) % c.len()];
                }
            }
        }
        WeylElement::new(ty, x, sigma, w)
    }
}

fn cycles(w: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; w.len()];
    let mut out = Vec::new();
    for start in 0..w.len() {
        if seen[start] || w[start] == start {
            continue;
        }
        let mut c = vec![start];
        seen[start] = true;
        let mut k = w[start];
        while k != start {
            seen[k] = true;
            c.push(k);
            k = w[k];
        }
        out.push(c);
    }
    out
}

/// `tau_x(z, h, t) = (z + <x,h> + t<x,x>/2, h + t x, t)` after `sigma . w` on `h`.
///
/// # Panics
/// If the dimensions of `g` and `v` differ.
pub fn act(g: &WeylElement, v: &Triple) -> Triple {
    assert_eq!(g.dim(), v.dim(), "Weyl element and triple differ in dimension");
    let h = g.linear_part(&v.h);
    let xh: Rational = g.x.iter().zip(&h).map(|(&n, hj)| hj * int(n)).sum();
    let xx: i64 = g.x.iter().map(|n| n * n).sum();
    let z = &v.z + xh + &v.t * int(xx) / int(2);
    let h = h
        .into_iter()
        .zip(&g.x)
        .map(|(hj, &n)| hj + &v.t * int(n))
        .collect();
    Triple { z, h, t: v.t.clone() }
}

/// `(tau_{x1} s1)(tau_{x2} s2) = tau_{x1 + s1(x2)} s1 s2`.
pub fn compose(g1: &WeylElement, g2: &WeylElement) -> Result<WeylElement> {
    if g1.ty != g2.ty {
        return Err(Error::TypeMismatch(g1.ty, g2.ty));
    }
    if g1.dim() != g2.dim() {
        return Err(Error::Dimension { expected: g1.dim(), found: g2.dim() });
    }
    let dim = g1.dim();
    let moved = g1.linear_part_int(&g2.x);
    let x = g1.x.iter().zip(&moved).map(|(a, b)| a + b).collect();
    // w1 sigma2 w1^-1 is the sign vector sigma2 relabelled by w1.
    let mut sigma = g1.sigma.clone();
    for j in 0..dim {
        sigma[g1.w[j]] *= g2.sigma[j];
    }
    let w = (0..dim).map(|j| g1.w[g2.w[j]]).collect();
    let g = WeylElement { ty: g1.ty, x, sigma, w };
    g.validate()?;
    Ok(g)
}

/// `(tau_x s)^-1 = tau_{-s^-1 x} s^-1`, with `s^-1 = (w^-1 sigma w) w^-1`.
pub fn inverse(g: &WeylElement) -> WeylElement {
    let dim = g.dim();
    let w_inv = g.w_inverse();
    let sigma: Vec<i8> = (0..dim).map(|j| g.sigma[g.w[j]]).collect();
    let s_inv = WeylElement { ty: g.ty, x: vec![0; dim], sigma, w: w_inv };
    let x = s_inv.linear_part_int(&g.x).into_iter().map(|n| -n).collect();
    WeylElement { x, ..s_inv }
}

/// Integer coroot vector `2 alpha_sharp / (alpha, alpha)`.
pub fn coroot_vector(alpha: &FiniteRoot, dim: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    let scale = match alpha {
        FiniteRoot::Short { .. } => 2,
        _ => 1,
    };
    let denom = match alpha {
        FiniteRoot::Long { .. } => 2,
        _ => 1,
    };
    for (k, c) in alpha.coeffs() {
        v[k] += c * scale / denom;
    }
    v
}

/// `r_(alpha,n) = r_(alpha,0) . tau_{n alpha_check} = tau_{-n alpha_check} . r_(alpha,0)`.
pub fn reflection(gamma: &AffineRoot, ty: AffineType, dim: usize) -> Result<WeylElement> {
    if !crate::rootdata::is_root(ty, gamma) {
        return Err(Error::NotARoot(ty, gamma.to_string()));
    }
    if gamma.alpha.max_index() >= dim {
        return Err(Error::Dimension { expected: dim, found: gamma.alpha.max_index() + 1 });
    }
    let mut g = WeylElement::identity(ty, dim);
    match gamma.alpha {
        FiniteRoot::Diff { i, j } => g.w.swap(i, j),
        FiniteRoot::Sum { i, j } | FiniteRoot::NegSum { i, j } => {
            g.w.swap(i, j);
            g.sigma[i] = -1;
            g.sigma[j] = -1;
        }
        FiniteRoot::Short { i, .. } | FiniteRoot::Long { i, .. } => g.sigma[i] = -1,
    }
    g.x = coroot_vector(&gamma.alpha, dim)
        .into_iter()
        .map(|c| -gamma.n * c)
        .collect();
    // Single-index D1 has no roots, so nothing reaches here with a trivial lattice.
    g.validate()?;
    Ok(g)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Sign vectors admissible for `ty`, lexicographic in the flip pattern (no flips first).
pub fn sign_vectors(ty: AffineType, dim: usize) -> Vec<Vec<i8>> {
    let rule = ty.sign_rule();
    let mut out = Vec::new();
    let mut cur = vec![1i8; dim];
    loop {
        let minus = cur.iter().filter(|&&s| s < 0).count();
        if rule.admits(minus) {
            out.push(cur.clone());
        }
        let Some(k) = (0..dim).rev().find(|&k| cur[k] > 0) else {
            return out;
        };
        cur[k] = -1;
        for s in &mut cur[k + 1..] {
            *s = 1;
        }
    }
}

/// Lattice vectors with entries in `[-radius, radius]`, lexicographic.
pub fn lattice_vectors(ty: AffineType, dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-radius; dim];
    loop {
        if lattice_contains_on(ty, &cur) {
            out.push(cur.clone());
        }
        let Some(k) = (0..dim).rev().find(|&k| cur[k] < radius) else {
            return out;
        };
        cur[k] += 1;
        for n in &mut cur[k + 1..] {
            *n = -radius;
        }
    }
}

/// Every `tau_x sigma w` with `|x_j| <= radius`, lexicographic in `(x, sigma, w)`
/// with the sign order of [`sign_vectors`].
pub fn enumerate(ty: AffineType, dim: usize, radius: i64) -> impl Iterator<Item = WeylElement> {
    let xs = lattice_vectors(ty, dim, radius);
    let sigmas = sign_vectors(ty, dim);
    let perms = permutations(dim);
    xs.into_iter().flat_map(move |x| {
        let perms = perms.clone();
        sigmas.clone().into_iter().flat_map(move |sigma| {
            let x = x.clone();
            perms
                .clone()
                .into_iter()
                .map(move |w| WeylElement { ty, x: x.clone(), sigma: sigma.clone(), w })
        })
    })
}
