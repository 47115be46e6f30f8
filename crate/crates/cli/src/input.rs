//! Instance files: finite weight/character pairs, cohort profiles and affinisations.

use std::fs;
use std::path::Path;

use affine_energy::affinisation::AffinisationInstance;
use affine_energy::energy::{CharTriple, WeightTriple};
use affine_energy::profiles::{CohortProfile, Entry};
use affine_energy::rootdata::AffineType;
use affine_energy::scalar::{serde_rat, serde_rat_vec};
use affine_energy::Rational;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

fn zero() -> Rational {
    Rational::zero()
}

fn one() -> Rational {
    Rational::one()
}

/// `{"lc": .., "l0": [..], "ld": ..}`, or just the list `l0` with `lc = 1`, `ld = 0`.
#[derive(Deserialize)]
#[serde(untagged)]
enum WeightInput {
    Values(#[serde(with = "serde_rat_vec")] Vec<Rational>),
    Full {
        #[serde(with = "serde_rat", default = "one")]
        lc: Rational,
        #[serde(with = "serde_rat_vec")]
        l0: Vec<Rational>,
        #[serde(with = "serde_rat", default = "zero")]
        ld: Rational,
    },
}

/// `{"cc": .., "c0": [..], "cd": ..}`, or just the list `c0` with `cc = 0`, `cd = 1`.
#[derive(Deserialize)]
#[serde(untagged)]
enum CharInput {
    Values(#[serde(with = "serde_rat_vec")] Vec<Rational>),
    Full {
        #[serde(with = "serde_rat", default = "zero")]
        cc: Rational,
        #[serde(with = "serde_rat_vec")]
        c0: Vec<Rational>,
        #[serde(with = "serde_rat", default = "one")]
        cd: Rational,
    },
}

#[derive(Deserialize)]
struct FiniteInput {
    lambda: WeightInput,
    chi: CharInput,
}

#[derive(Debug, Clone)]
pub struct Finite {
    pub lam: WeightTriple,
    pub chi: CharTriple,
}

impl Finite {
    /// A finite index set read as a profile made only of exceptions.
    pub fn as_profile(&self) -> CohortProfile {
        let exceptions =
            self.lam.l0.iter().zip(&self.chi.c0).map(|(l, d)| Entry::new(l.clone(), d.clone())).collect();
        let mut p = CohortProfile::new(self.lam.lc.clone(), self.chi.cd.clone(), Vec::new(), exceptions);
        p.ld = self.lam.ld.clone();
        p.cc = self.chi.cc.clone();
        p
    }
}

#[derive(Debug, Clone)]
pub enum Payload {
    Finite(Finite),
    Profile(CohortProfile),
    Affinisation(AffinisationInstance),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Finite(_) => "finite",
            Payload::Profile(_) => "profile",
            Payload::Affinisation(_) => "affinisation",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub ty: Option<AffineType>,
    pub payload: Payload,
}

impl Instance {
    /// The command-line type wins over the one in the file.
    pub fn resolve_type(&self, flag: Option<AffineType>) -> Result<AffineType, CliError> {
        flag.or(self.ty)
            .ok_or_else(|| CliError::Input("no type given: pass --type or add \"type\" to the instance".into()))
    }
}

pub fn read(path: &Path) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse(text: &str) -> Result<Instance, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    let schema = |e: serde_json::Error| CliError::Input(format!("invalid instance: {e}"));
    let ty = match value.get("type") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.parse().map_err(|e| CliError::Input(format!("{e}")))?),
        Some(other) => return Err(CliError::Input(format!("\"type\" must be a string, found {other}"))),
    };
    let kind = match value.get("kind").and_then(Value::as_str) {
        Some(k) => k.to_string(),
        None if value.get("n_phi").is_some() => "affinisation".into(),
        None if value.get("cohorts").is_some() => "profile".into(),
        None => "finite".into(),
    };
    let payload = match kind.as_str() {
        "finite" => {
            let raw: FiniteInput = serde_json::from_value(value).map_err(schema)?;
            let lam = match raw.lambda {
                WeightInput::Values(l0) => WeightTriple::standard(l0),
                WeightInput::Full { lc, l0, ld } => WeightTriple::new(lc, l0, ld),
            };
            let chi = match raw.chi {
                CharInput::Values(c0) => CharTriple::standard(c0),
                CharInput::Full { cc, c0, cd } => CharTriple::new(cc, c0, cd),
            };
            Payload::Finite(Finite { lam, chi })
        }
        "profile" => {
            let p: CohortProfile = serde_json::from_value(value).map_err(schema)?;
            p.validate()?;
            Payload::Profile(p)
        }
        "affinisation" => Payload::Affinisation(serde_json::from_value(value).map_err(schema)?),
        other => return Err(CliError::Input(format!("unknown instance kind {other:?}"))),
    };
    Ok(Instance { ty, payload })
}

#[cfg(test)]
mod tests {
    use super::*;
    use affine_energy::scalar::rat;

    #[test]
    fn short_and_full_forms_agree() {
        let a = parse(r#"{"type":"C1","lambda":["-1/2"],"chi":["1"]}"#).unwrap();
        let b = parse(r#"{"kind":"finite","lambda":{"lc":"1","l0":["-1/2"]},"chi":{"c0":[1],"cd":"1"}}"#).unwrap();
        let (Payload::Finite(a_f), Payload::Finite(b_f)) = (&a.payload, &b.payload) else { panic!() };
        assert_eq!(a_f.lam, b_f.lam);
        assert_eq!(a_f.chi, b_f.chi);
        assert_eq!(a_f.lam.l0, vec![rat(-1, 2)]);
        assert_eq!(a.ty, Some(AffineType::C1));
        assert_eq!(b.ty, None);
    }

    #[test]
    fn kinds_are_inferred() {
        let p = parse(r#"{"lc":"1","cd":"1","cohorts":[{"lambda":"1/4","d":"1/4"}]}"#).unwrap();
        assert_eq!(p.payload.kind(), "profile");
        let a = parse(r#"{"n_phi":1,"n_psi":1,"type":"A1","lc":"1","cohorts":[{"lambda":"0"}]}"#).unwrap();
        assert_eq!(a.payload.kind(), "affinisation");
    }

    #[test]
    fn malformed_json_reports_position() {
        let Err(CliError::Input(m)) = parse("{\n  \"lambda\": [1,\n}") else { panic!() };
        assert!(m.contains("line 3 column 1"), "{m}");
        assert!(matches!(parse(r#"{"lambda":["x"],"chi":["1"]}"#), Err(CliError::Input(_))));
    }
}
