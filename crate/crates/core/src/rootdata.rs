//! Root systems of the five locally finite and seven locally affine types,
//! coroots, the sharp map, the form kappa, and translation lattices.
//!
//! Indices are the labels `0..dim` of a finite truncation of the index set.
//! A triple `(z, h, t)` lives in the space of the affine Cartan; a dual
//! triple `(c, f, d)` is a functional on it, paired as `c*z + f(h) + d*t`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteType {
    A,
    B,
    C,
    D,
    BC,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineType {
    A1,
    B1,
    C1,
    D1,
    B2,
    C2,
    BC2,
}

impl AffineType {
    pub const ALL: [AffineType; 7] = [
        AffineType::A1,
        AffineType::B1,
        AffineType::C1,
        AffineType::D1,
        AffineType::B2,
        AffineType::C2,
        AffineType::BC2,
    ];

    /// The finite type `X` in `X^(1)` or `X^(2)`.
    pub fn base(self) -> FiniteType {
        match self {
            AffineType::A1 => FiniteType::A,
            AffineType::B1 | AffineType::B2 => FiniteType::B,
            AffineType::C1 | AffineType::C2 => FiniteType::C,
            AffineType::D1 => FiniteType::D,
            AffineType::BC2 => FiniteType::BC,
        }
    }

    pub fn twist(self) -> u8 {
        match self {
            AffineType::B2 | AffineType::C2 | AffineType::BC2 => 2,
            _ => 1,
        }
    }

    /// Sign vectors allowed in the level-zero Weyl group.
    pub fn sign_rule(self) -> SignRule {
        match self {
            AffineType::A1 => SignRule::None,
            AffineType::D1 => SignRule::Even,
            _ => SignRule::All,
        }
    }
}

/// Which sign vectors belong to the finite Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRule {
    None,
    Even,
    All,
}

impl SignRule {
    pub fn admits(self, minus_count: usize) -> bool {
        match self {
            SignRule::None => minus_count == 0,
            SignRule::Even => minus_count % 2 == 0,
            SignRule::All => true,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FiniteType::A => "A",
            FiniteType::B => "B",
            FiniteType::C => "C",
            FiniteType::D => "D",
            FiniteType::BC => "BC",
        };
        f.write_str(s)
    }
}

impl FromStr for FiniteType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" => Ok(FiniteType::A),
            "B" => Ok(FiniteType::B),
            "C" => Ok(FiniteType::C),
            "D" => Ok(FiniteType::D),
            "BC" => Ok(FiniteType::BC),
            other => Err(Error::Parse(format!("unknown finite type {other:?}"))),
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AffineType::A1 => "A1",
            AffineType::B1 => "B1",
            AffineType::C1 => "C1",
            AffineType::D1 => "D1",
            AffineType::B2 => "B2",
            AffineType::C2 => "C2",
            AffineType::BC2 => "BC2",
        };
        f.write_str(s)
    }
}

impl FromStr for AffineType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AffineType::ALL
            .into_iter()
            .find(|t| t.to_string() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown affine type {s:?}")))
    }
}

impl Serialize for AffineType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AffineType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite root, as a closed set of shapes over index labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteRoot {
    /// `e_i - e_j`
    Diff { i: usize, j: usize },
    /// `e_i + e_j`
    Sum { i: usize, j: usize },
    /// `-e_i - e_j`
    NegSum { i: usize, j: usize },
    /// `+e_i` or `-e_i`
    Short { i: usize, positive: bool },
    /// `+2e_i` or `-2e_i`
    Long { i: usize, positive: bool },
}

/// Length classes of finite roots; level rules depend only on these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootClass {
    Medium,
    Short,
    Long,
}

impl FiniteRoot {
    pub fn squared_length(&self) -> Rational {
        int(match self.class() {
            RootClass::Short => 1,
            RootClass::Medium => 2,
            RootClass::Long => 4,
        })
    }

    pub fn class(&self) -> RootClass {
        match self {
            FiniteRoot::Diff { .. } | FiniteRoot::Sum { .. } | FiniteRoot::NegSum { .. } => {
                RootClass::Medium
            }
            FiniteRoot::Short { .. } => RootClass::Short,
            FiniteRoot::Long { .. } => RootClass::Long,
        }
    }

    /// Integer coefficients in the standard basis (also those of the sharp vector).
    pub fn coeffs(&self) -> Vec<(usize, i64)> {
        match *self {
            FiniteRoot::Diff { i, j } => vec![(i, 1), (j, -1)],
            FiniteRoot::Sum { i, j } => vec![(i, 1), (j, 1)],
            FiniteRoot::NegSum { i, j } => vec![(i, -1), (j, -1)],
            FiniteRoot::Short { i, positive } => vec![(i, if positive { 1 } else { -1 })],
            FiniteRoot::Long { i, positive } => vec![(i, if positive { 2 } else { -2 })],
        }
    }

    pub fn max_index(&self) -> usize {
        self.coeffs().iter().map(|&(k, _)| k).max().unwrap_or(0)
    }

    pub fn is_well_formed(&self) -> bool {
        match *self {
            FiniteRoot::Diff { i, j } | FiniteRoot::Sum { i, j } | FiniteRoot::NegSum { i, j } => {
                i != j
            }
            _ => true,
        }
    }

    /// `alpha(h)`.
    pub fn eval(&self, h: &[Rational]) -> Rational {
        self.coeffs()
            .into_iter()
            .map(|(k, c)| &h[k] * int(c))
            .sum()
    }

    pub fn neg(&self) -> FiniteRoot {
        match *self {
            FiniteRoot::Diff { i, j } => FiniteRoot::Diff { i: j, j: i },
            FiniteRoot::Sum { i, j } => FiniteRoot::NegSum { i, j },
            FiniteRoot::NegSum { i, j } => FiniteRoot::Sum { i, j },
            FiniteRoot::Short { i, positive } => FiniteRoot::Short { i, positive: !positive },
            FiniteRoot::Long { i, positive } => FiniteRoot::Long { i, positive: !positive },
        }
    }

    pub fn admissible_in(&self, ft: FiniteType) -> bool {
        match (self.class(), ft) {
            (_, FiniteType::BC) => true,
            (RootClass::Medium, FiniteType::A) => matches!(self, FiniteRoot::Diff { .. }),
            (RootClass::Medium, _) => true,
            (RootClass::Short, FiniteType::B) => true,
            (RootClass::Long, FiniteType::C) => true,
            _ => false,
        }
    }

    fn shape_code(&self) -> &'static str {
        match self {
            FiniteRoot::Diff { .. } => "eij-",
            FiniteRoot::Sum { .. } => "eij+",
            FiniteRoot::NegSum { .. } => "-eij+",
            FiniteRoot::Short { positive: true, .. } => "ei+",
            FiniteRoot::Short { positive: false, .. } => "ei-",
            FiniteRoot::Long { positive: true, .. } => "2ei+",
            FiniteRoot::Long { positive: false, .. } => "2ei-",
        }
    }

    fn indices(&self) -> (usize, Option<usize>) {
        match *self {
            FiniteRoot::Diff { i, j } | FiniteRoot::Sum { i, j } | FiniteRoot::NegSum { i, j } => {
                (i, Some(j))
            }
            FiniteRoot::Short { i, .. } | FiniteRoot::Long { i, .. } => (i, None),
        }
    }
}

impl fmt::Display for FiniteRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FiniteRoot::Diff { i, j } => write!(f, "e{i}-e{j}"),
            FiniteRoot::Sum { i, j } => write!(f, "e{i}+e{j}"),
            FiniteRoot::NegSum { i, j } => write!(f, "-e{i}-e{j}"),
            FiniteRoot::Short { i, positive } => write!(f, "{}e{i}", if positive { "+" } else { "-" }),
            FiniteRoot::Long { i, positive } => write!(f, "{}2e{i}", if positive { "+" } else { "-" }),
        }
    }
}

/// An affine root `(alpha, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub alpha: FiniteRoot,
    pub n: i64,
}

impl AffineRoot {
    pub fn new(alpha: FiniteRoot, n: i64) -> Self {
        AffineRoot { alpha, n }
    }

    pub fn neg(&self) -> AffineRoot {
        AffineRoot { alpha: self.alpha.neg(), n: -self.n }
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct RootJson {
    shape: String,
    i: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    n: i64,
}

impl Serialize for AffineRoot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (i, j) = self.alpha.indices();
        RootJson { shape: self.alpha.shape_code().to_string(), i, j, n: self.n }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineRoot {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = RootJson::deserialize(d)?;
        let need_j = || r.j.ok_or_else(|| D::Error::custom("shape needs index j"));
        let alpha = match r.shape.as_str() {
            "eij-" => FiniteRoot::Diff { i: r.i, j: need_j()? },
            "eij+" => FiniteRoot::Sum { i: r.i, j: need_j()? },
            "-eij+" => FiniteRoot::NegSum { i: r.i, j: need_j()? },
            "ei+" => FiniteRoot::Short { i: r.i, positive: true },
            "ei-" => FiniteRoot::Short { i: r.i, positive: false },
            "2ei+" => FiniteRoot::Long { i: r.i, positive: true },
            "2ei-" => FiniteRoot::Long { i: r.i, positive: false },
            other => return Err(D::Error::custom(format!("unknown root shape {other:?}"))),
        };
        if !alpha.is_well_formed() {
            return Err(D::Error::custom("root indices must differ"));
        }
        Ok(AffineRoot { alpha, n: r.n })
    }
}

/// An element `(z, h, t)` with `h` dense over the active indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub z: Rational,
    pub h: Vec<Rational>,
    pub t: Rational,
}

/// A functional `(c, f, d)` acting by `c*z + f(h) + d*t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualTriple {
    pub c: Rational,
    pub f: Vec<Rational>,
    pub d: Rational,
}

impl Triple {
    pub fn new(z: Rational, h: Vec<Rational>, t: Rational) -> Self {
        Triple { z, h, t }
    }

    pub fn zero(dim: usize) -> Self {
        Triple { z: Rational::zero(), h: vec![Rational::zero(); dim], t: Rational::zero() }
    }

    pub fn dim(&self) -> usize {
        self.h.len()
    }

    pub fn sub(&self, other: &Triple) -> Triple {
        Triple {
            z: &self.z - &other.z,
            h: self.h.iter().zip(&other.h).map(|(a, b)| a - b).collect(),
            t: &self.t - &other.t,
        }
    }

    pub fn add(&self, other: &Triple) -> Triple {
        Triple {
            z: &self.z + &other.z,
            h: self.h.iter().zip(&other.h).map(|(a, b)| a + b).collect(),
            t: &self.t + &other.t,
        }
    }

    pub fn scale(&self, k: &Rational) -> Triple {
        Triple { z: &self.z * k, h: self.h.iter().map(|a| a * k).collect(), t: &self.t * k }
    }
}

impl DualTriple {
    pub fn new(c: Rational, f: Vec<Rational>, d: Rational) -> Self {
        DualTriple { c, f, d }
    }

    pub fn dim(&self) -> usize {
        self.f.len()
    }

    pub fn eval(&self, v: &Triple) -> Rational {
        let inner: Rational = self.f.iter().zip(&v.h).map(|(a, b)| a * b).sum();
        &self.c * &v.z + inner + &self.d * &v.t
    }

    pub fn scale(&self, k: &Rational) -> DualTriple {
        DualTriple { c: &self.c * k, f: self.f.iter().map(|a| a * k).collect(), d: &self.d * k }
    }

    /// The root `(alpha, n)` viewed as the functional `(0, alpha, n)`.
    pub fn from_root(gamma: &AffineRoot, dim: usize) -> DualTriple {
        let mut f = vec![Rational::zero(); dim];
        for (k, c) in gamma.alpha.coeffs() {
            f[k] += int(c);
        }
        DualTriple { c: Rational::zero(), f, d: int(gamma.n) }
    }
}

pub fn squared_length(alpha: &FiniteRoot) -> Rational {
    alpha.squared_length()
}

/// `(alpha, n)^vee = (-2n/(alpha,alpha), 2 alpha_sharp/(alpha,alpha), 0)`.
pub fn coroot(gamma: &AffineRoot, dim: usize) -> Triple {
    let len = gamma.alpha.squared_length();
    let k = int(2) / &len;
    let mut h = vec![Rational::zero(); dim];
    for (idx, c) in gamma.alpha.coeffs() {
        h[idx] += &k * int(c);
    }
    Triple { z: -(&k * int(gamma.n)), h, t: Rational::zero() }
}

/// `mu_sharp = (-mu_d, mu0_sharp, -mu_c)`, so that `mu(v) = kappa(v, mu_sharp)`.
pub fn sharp(mu: &DualTriple) -> Triple {
    Triple { z: -mu.d.clone(), h: mu.f.clone(), t: -mu.c.clone() }
}

/// Inverse of [`sharp`].
pub fn flat(v: &Triple) -> DualTriple {
    DualTriple { c: -v.t.clone(), f: v.h.clone(), d: -v.z.clone() }
}

pub fn kappa(u: &Triple, v: &Triple) -> Rational {
    let inner: Rational = u.h.iter().zip(&v.h).map(|(a, b)| a * b).sum();
    inner - &u.z * &v.t - &v.z * &u.t
}

/// Levels at which a finite root occurs in an affine type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Levels {
    All,
    Even,
    Odd,
}

impl Levels {
    pub fn contains(self, n: i64) -> bool {
        match self {
            Levels::All => true,
            Levels::Even => n.rem_euclid(2) == 0,
            Levels::Odd => n.rem_euclid(2) == 1,
        }
    }

    /// Largest admissible level strictly below `bound`.
    pub fn max_below(self, bound: &Rational) -> i64 {
        let mut n = crate::scalar::ceil_i64(bound) - 1;
        if !self.contains(n) {
            n -= 1;
        }
        n
    }
}

/// Levels of `alpha` in type `x`, or `None` if the shape never occurs.
pub fn levels(x: AffineType, alpha: &FiniteRoot) -> Option<Levels> {
    if !alpha.admissible_in(x.base()) {
        return None;
    }
    let class = alpha.class();
    Some(match x {
        AffineType::B2 if class == RootClass::Medium => Levels::Even,
        AffineType::C2 if class == RootClass::Long => Levels::Even,
        AffineType::BC2 if class == RootClass::Long => Levels::Odd,
        _ => Levels::All,
    })
}

pub fn is_root(x: AffineType, gamma: &AffineRoot) -> bool {
    gamma.alpha.is_well_formed()
        && levels(x, &gamma.alpha).is_some_and(|l| l.contains(gamma.n))
}

/// Membership in the translation lattice `T(X)`, as given for infinite index sets.
pub fn lattice_contains(x: AffineType, v: &[i64]) -> bool {
    match x {
        AffineType::A1 => v.iter().sum::<i64>() == 0,
        AffineType::B1 | AffineType::D1 | AffineType::C2 => v.iter().sum::<i64>() % 2 == 0,
        AffineType::B2 => v.iter().all(|n| n % 2 == 0),
        AffineType::C1 | AffineType::BC2 => true,
    }
}

/// Lattice membership on a truncation with exactly `v.len()` indices.
///
/// On a single index `D1` has no roots at all, so its lattice is trivial
/// there even though the general formula would allow even multiples.
pub fn lattice_contains_on(x: AffineType, v: &[i64]) -> bool {
    if x == AffineType::D1 && v.len() == 1 {
        return v[0] == 0;
    }
    lattice_contains(x, v)
}

/// All finite roots of type `ft` on `dim` indices, in a fixed order.
pub fn finite_roots(ft: FiniteType, dim: usize) -> Vec<FiniteRoot> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                out.push(FiniteRoot::Diff { i, j });
            }
        }
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            out.push(FiniteRoot::Sum { i, j });
            out.push(FiniteRoot::NegSum { i, j });
        }
    }
    for i in 0..dim {
        for positive in [true, false] {
            out.push(FiniteRoot::Short { i, positive });
            out.push(FiniteRoot::Long { i, positive });
        }
    }
    out.retain(|a| a.admissible_in(ft));
    out
}

pub fn roots_enumerate(
    x: AffineType,
    dim: usize,
    n_range: RangeInclusive<i64>,
) -> Result<Vec<AffineRoot>> {
    if dim == 0 {
        return Err(Error::EmptyIndexSet);
    }
    let alphas = finite_roots(x.base(), dim);
    let mut out = Vec::new();
    for n in n_range {
        for alpha in &alphas {
            let gamma = AffineRoot::new(*alpha, n);
            if is_root(x, &gamma) {
                out.push(gamma);
            }
        }
    }
    Ok(out)
}

/// `lambda0(alpha_sharp)`.
pub fn pair_sharp(alpha: &FiniteRoot, l0: &[Rational]) -> Rational {
    alpha.eval(l0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn e(dim: usize, k: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        v[k] = int(1);
        v
    }

    #[test]
    fn squared_lengths() {
        assert_eq!(squared_length(&FiniteRoot::Diff { i: 0, j: 1 }), int(2));
        assert_eq!(squared_length(&FiniteRoot::Short { i: 2, positive: true }), int(1));
        assert_eq!(squared_length(&FiniteRoot::Long { i: 4, positive: false }), int(4));
    }

    #[test]
    fn coroot_examples() {
        let g = AffineRoot::new(FiniteRoot::Diff { i: 0, j: 1 }, 3);
        assert_eq!(coroot(&g, 2), Triple::new(int(-3), vec![int(1), int(-1)], int(0)));
        let g = AffineRoot::new(FiniteRoot::Short { i: 0, positive: true }, 0);
        assert_eq!(coroot(&g, 1), Triple::new(int(0), vec![int(2)], int(0)));
        let g = AffineRoot::new(FiniteRoot::Long { i: 0, positive: true }, 3);
        assert_eq!(coroot(&g, 1), Triple::new(rat(-3, 2), vec![int(1)], int(0)));
    }

    #[test]
    fn sharp_examples() {
        let mu = DualTriple::new(int(1), vec![int(0)], int(0));
        assert_eq!(sharp(&mu), Triple::new(int(0), vec![int(0)], int(-1)));
        let mu = DualTriple::new(int(0), e(5, 4), int(0));
        assert_eq!(sharp(&mu), Triple::new(int(0), e(5, 4), int(0)));
        let mu = DualTriple::new(int(2), vec![int(3), int(-1)], int(5));
        let s = sharp(&mu);
        assert_eq!(s, Triple::new(int(-5), vec![int(3), int(-1)], int(-2)));
        let v = Triple::new(rat(1, 3), vec![int(2), rat(-1, 2)], int(7));
        assert_eq!(kappa(&v, &s), mu.eval(&v));
        assert_eq!(flat(&s), mu);
    }

    #[test]
    fn kappa_examples() {
        let u = Triple::new(int(1), vec![int(0)], int(0));
        let v = Triple::new(int(0), vec![int(0)], int(1));
        assert_eq!(kappa(&u, &v), int(-1));
        let u = Triple::new(int(0), e(1, 0), int(0));
        assert_eq!(kappa(&u, &u), int(1));
        let u = Triple::new(int(1), vec![int(2)], int(3));
        let v = Triple::new(int(4), vec![int(5)], int(6));
        assert_eq!(kappa(&u, &v), int(-8));
    }

    #[test]
    fn is_root_examples() {
        let short = FiniteRoot::Short { i: 0, positive: true };
        assert!(is_root(AffineType::B2, &AffineRoot::new(short, 3)));
        assert!(!is_root(AffineType::B2, &AffineRoot::new(FiniteRoot::Sum { i: 0, j: 1 }, 3)));
        assert!(is_root(AffineType::C2, &AffineRoot::new(FiniteRoot::Diff { i: 0, j: 1 }, 5)));
        assert!(!is_root(AffineType::C2, &AffineRoot::new(FiniteRoot::Long { i: 0, positive: true }, 1)));
        assert!(!is_root(AffineType::BC2, &AffineRoot::new(FiniteRoot::Long { i: 0, positive: true }, 0)));
        assert!(!is_root(AffineType::A1, &AffineRoot::new(FiniteRoot::Sum { i: 0, j: 1 }, 0)));
    }

    #[test]
    fn lattice_examples() {
        assert!(lattice_contains(AffineType::A1, &[1, -1]));
        assert!(!lattice_contains(AffineType::B2, &[1]));
        assert!(lattice_contains(AffineType::C1, &[7]));
        assert!(!lattice_contains(AffineType::D1, &[1, 0]));
        assert!(lattice_contains(AffineType::C2, &[1, 1]));
        assert!(!lattice_contains_on(AffineType::D1, &[2]));
        assert!(lattice_contains_on(AffineType::D1, &[2, 0]));
    }

    #[test]
    fn enumeration_examples() {
        let r = roots_enumerate(AffineType::A1, 2, 0..=0).unwrap();
        assert_eq!(
            r,
            vec![
                AffineRoot::new(FiniteRoot::Diff { i: 0, j: 1 }, 0),
                AffineRoot::new(FiniteRoot::Diff { i: 1, j: 0 }, 0)
            ]
        );
        let r = roots_enumerate(AffineType::BC2, 1, 1..=1).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|g| g.n == 1));
        assert_eq!(roots_enumerate(AffineType::D1, 2, 0..=1).unwrap().len(), 8);
        assert_eq!(roots_enumerate(AffineType::C1, 0, 0..=0), Err(Error::EmptyIndexSet));
    }

    #[test]
    fn root_json_round_trip() {
        let g = AffineRoot::new(FiniteRoot::Diff { i: 1, j: 2 }, -3);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"shape":"eij-","i":1,"j":2,"n":-3}"#);
        let back: AffineRoot = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let g = AffineRoot::new(FiniteRoot::Long { i: 0, positive: false }, 1);
        let back: AffineRoot = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn max_below_levels() {
        assert_eq!(Levels::All.max_below(&rat(1, 2)), 0);
        assert_eq!(Levels::All.max_below(&int(0)), -1);
        assert_eq!(Levels::Even.max_below(&int(0)), -2);
        assert_eq!(Levels::Odd.max_below(&rat(1, 4)), -1);
        assert_eq!(Levels::Odd.max_below(&int(2)), 1);
    }
}
