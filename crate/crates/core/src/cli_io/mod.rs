//! Serialization, fixtures, and the command-line surface.
//!
//! Every input file is a [`Fixture`]: a named, typed payload with a
//! provenance note and optional expectations checked by `corpus`.

mod command;
mod corpus;
pub mod schema;

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cat_core::FinCat;
use crate::f_core::{FCat, FFun};
use crate::monad_alg::{build_t_alg_w, FiniteMonad, TAlgW};
use crate::two_cat::{Monad2, TwoCat, WKind};
use crate::weights::{FWeight, TwoWeight};
use schema::*;

pub use command::{run, Cli, Command, KindArg, Report, ReportFormat, EXIT_BUDGET, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
pub use corpus::{builtin_corpus, check_fixture, evaluate, ExpectationResult};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("{file}:{line}:{column}: {msg}")]
    Json { file: String, line: usize, column: usize, msg: String },
    #[error("{file}: {source}")]
    Io { file: String, source: std::io::Error },
}

pub type Result<T> = std::result::Result<T, IoError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureKind {
    Category,
    TwoCat,
    Fcat,
    Weight,
    Fweight,
    Monad,
    Limit,
    Em,
    Lift,
}

/// A named payload with its provenance and expected verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub kind: FixtureKind,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, Value>,
    pub payload: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitJson {
    pub weight: FWeightJson,
    pub target: FCatJson,
    pub diagram: TwoFunJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmJson {
    pub base: FCatJson,
    pub monad: Monad2Json,
}

/// A lifting problem; the diagram, if present, lands in `T-Alg_kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftJson {
    pub monad: MonadJson,
    pub kind: String,
    pub weight: FWeightJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<TwoFunJson>,
}

#[derive(Debug, Clone)]
pub struct LimitProblem {
    pub weight: FWeight,
    pub target: FCat,
    pub diagram: FFun,
}

#[derive(Debug, Clone)]
pub struct EmProblem {
    pub base: FCat,
    pub monad: Monad2,
}

#[derive(Debug, Clone)]
pub struct LiftProblem {
    pub monad: FiniteMonad,
    pub alg: TAlgW,
    pub weight: FWeight,
    pub diagram: Option<FFun>,
}

/// A validated payload.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Payload {
    Category(FinCat),
    TwoCat(TwoCat),
    FCat(FCat),
    Weight(TwoWeight),
    FWeight(FWeight),
    Monad(FiniteMonad),
    Limit(LimitProblem),
    Em(EmProblem),
    Lift(LiftProblem),
}

pub fn kind_tag(k: WKind) -> &'static str {
    match k {
        WKind::Pseudo => "p",
        WKind::Lax => "l",
        WKind::Oplax => "c",
        WKind::Strict => "s",
    }
}

pub fn parse_kind(s: &str, path: &str) -> Result<WKind> {
    match s {
        "p" => Ok(WKind::Pseudo),
        "l" => Ok(WKind::Lax),
        "c" => Ok(WKind::Oplax),
        _ => Err(IoError::Schema { path: path.into(), msg: format!("unknown kind `{s}` (expected p, l or c)") }),
    }
}

fn from_value<T: DeserializeOwned>(v: &Value, path: &str) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." { path.to_string() } else { format!("{path}.{inner}") };
        IoError::Schema { path, msg: e.into_inner().to_string() }
    })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("schema types serialize")
}

impl Fixture {
    pub fn new(name: &str, kind: FixtureKind, provenance: &str, payload: Value) -> Fixture {
        Fixture { name: name.into(), kind, provenance: provenance.into(), expect: BTreeMap::new(), payload }
    }

    pub fn expect(mut self, key: &str, v: Value) -> Fixture {
        self.expect.insert(key.into(), v);
        self
    }

    /// Deserializes and validates the payload.
    pub fn parse(&self) -> Result<Payload> {
        let p = "payload";
        let v = &self.payload;
        Ok(match self.kind {
            FixtureKind::Category => Payload::Category(fincat_from_json(&from_value(v, p)?, p)?),
            FixtureKind::TwoCat => Payload::TwoCat(two_cat_from_json(&from_value(v, p)?, p)?),
            FixtureKind::Fcat => Payload::FCat(fcat_from_json(&from_value(v, p)?, p)?),
            FixtureKind::Weight => Payload::Weight(two_weight_from_json(&from_value(v, p)?, p)?),
            FixtureKind::Fweight => Payload::FWeight(fweight_from_json(&from_value(v, p)?, p)?),
            FixtureKind::Monad => Payload::Monad(monad_from_json(&from_value(v, p)?, p)?),
            FixtureKind::Limit => {
                let j: LimitJson = from_value(v, p)?;
                let weight = fweight_from_json(&j.weight, "payload.weight")?;
                let target = fcat_from_json(&j.target, "payload.target")?;
                let diagram = ffun_from_json(&j.diagram, &weight.shape, &target, "payload.diagram")?;
                Payload::Limit(LimitProblem { weight, target, diagram })
            }
            FixtureKind::Em => {
                let j: EmJson = from_value(v, p)?;
                let base = fcat_from_json(&j.base, "payload.base")?;
                let monad = monad2_from_json(&j.monad, &base.base, "payload.monad")?;
                Payload::Em(EmProblem { base, monad })
            }
            FixtureKind::Lift => {
                let j: LiftJson = from_value(v, p)?;
                let monad = monad_from_json(&j.monad, "payload.monad")?;
                let kind = parse_kind(&j.kind, "payload.kind")?;
                let alg = build_t_alg_w(&monad, kind)
                    .map_err(|e| IoError::Schema { path: "payload.monad".into(), msg: e.to_string() })?;
                let weight = fweight_from_json(&j.weight, "payload.weight")?;
                let diagram = match &j.diagram {
                    Some(d) => Some(ffun_from_json(d, &weight.shape, &alg.fcat, "payload.diagram")?),
                    None => None,
                };
                Payload::Lift(LiftProblem { monad, alg, weight, diagram })
            }
        })
    }

    /// The fixture with its payload re-serialized in canonical form.
    pub fn canonical(&self) -> Result<Fixture> {
        let payload = payload_to_value(&self.parse()?)?;
        Ok(Fixture { payload, ..self.clone() })
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_canonical_string(&self) -> Result<String> {
        let c = self.canonical()?;
        Ok(serde_json::to_string_pretty(&c).expect("fixture serializes") + "\n")
    }
}

/// Serializes a payload in canonical form.
pub fn payload_to_value(p: &Payload) -> Result<Value> {
    Ok(match p {
        Payload::Category(c) => to_value(&fincat_to_json(c)?),
        Payload::TwoCat(k) => to_value(&two_cat_to_json(k)?),
        Payload::FCat(f) => to_value(&fcat_to_json(f)?),
        Payload::Weight(w) => to_value(&two_weight_to_json(w)?),
        Payload::FWeight(w) => to_value(&fweight_to_json(w)?),
        Payload::Monad(m) => to_value(&monad_to_json(m)?),
        Payload::Limit(l) => to_value(&LimitJson {
            weight: fweight_to_json(&l.weight)?,
            target: fcat_to_json(&l.target)?,
            diagram: two_fun_to_json(&l.diagram.fun, &l.weight.shape.base, &l.target.base),
        }),
        Payload::Em(e) => {
            to_value(&EmJson { base: fcat_to_json(&e.base)?, monad: monad2_to_json(&e.monad, &e.base.base) })
        }
        Payload::Lift(l) => to_value(&LiftJson {
            monad: monad_to_json(&l.monad)?,
            kind: kind_tag(l.alg.kind).into(),
            weight: fweight_to_json(&l.weight)?,
            diagram: l.diagram.as_ref().map(|d| two_fun_to_json(&d.fun, &l.weight.shape.base, &l.alg.fcat.base)),
        }),
    })
}

pub fn parse_fixture_str(s: &str, file: &str) -> Result<Fixture> {
    serde_json::from_str(s).map_err(|e| IoError::Json {
        file: file.into(),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

pub fn load_fixture(path: &Path) -> Result<Fixture> {
    let file = path.display().to_string();
    let s = std::fs::read_to_string(path).map_err(|source| IoError::Io { file: file.clone(), source })?;
    parse_fixture_str(&s, &file)
}

/// Writes every fixture in canonical form to `dir/<name>.json`.
pub fn write_fixtures(dir: &Path, fixtures: &[Fixture]) -> Result<()> {
    let io = |source| IoError::Io { file: dir.display().to_string(), source };
    std::fs::create_dir_all(dir).map_err(io)?;
    for f in fixtures {
        let path = dir.join(format!("{}.json", f.name));
        std::fs::write(&path, f.to_canonical_string()?)
            .map_err(|source| IoError::Io { file: path.display().to_string(), source })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn builtin_fixtures_are_canonical_fixed_points() {
        for f in builtin_corpus() {
            let c = f.canonical().unwrap();
            assert_eq!(c, f, "{}", f.name);
        }
    }

    #[test]
    fn unknown_fixture_field_is_rejected() {
        let s = r#"{"name":"x","kind":"category","provenance":"derived: t","payload":{},"extra":1}"#;
        let e = parse_fixture_str(s, "f.json").unwrap_err();
        assert!(matches!(e, IoError::Json { line: 1, .. }), "{e}");
    }

    #[test]
    fn payload_errors_carry_a_path() {
        let f = Fixture::new("x", FixtureKind::Category, "derived: t", json!({"objects": ["a"], "morphisms": 3}));
        let e = f.parse().unwrap_err().to_string();
        assert!(e.starts_with("payload.morphisms"), "{e}");
    }

    #[test]
    fn kind_tags_round_trip() {
        for k in [WKind::Pseudo, WKind::Lax, WKind::Oplax] {
            assert_eq!(parse_kind(kind_tag(k), "k").unwrap(), k);
        }
        assert!(parse_kind("s", "k").is_err());
    }

    #[test]
    fn empty_expectations_are_not_serialized() {
        let f = Fixture::new("x", FixtureKind::Category, "derived: t", json!(null));
        assert!(!serde_json::to_string(&f).unwrap().contains("expect"));
    }
}
