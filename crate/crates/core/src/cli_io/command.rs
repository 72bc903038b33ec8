//! Subcommands, exit codes and reports.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use super::corpus::{builtin_corpus, check_fixture, SAMPLED_DIAGRAMS};
use super::schema::{cat_weight_from_json, CatWeightJson};
use super::{kind_tag, load_fixture, write_fixtures, Fixture, IoError, LiftProblem, Payload};
use crate::cat_core::CompletionBudget;
use crate::f_core::FCat;
use crate::kan_classifiers::{
    build_relative_classifier, default_probes, find_coalgebras, KanError, RelativeClassifier,
};
use crate::monad_alg::{
    build_t_alg_w, em_object_f, fixture_monads, lift_check, lift_survey, sample_diagrams, FiniteMonad, LiftFailure,
    LiftVerdict,
};
use crate::riggedness::{canonical_rigging, default_budget, is_pie, is_rigged, is_tightly_rigged, RiggedVerdict};
use crate::two_cat::{CatWeight, WKind};
use crate::weights::{check_f_limit, find_f_limit, zoo, FCone, FLimitContext, FWeight, WeightError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    P,
    L,
    C,
}

impl KindArg {
    pub fn kind(self) -> WKind {
        match self {
            KindArg::P => WKind::Pseudo,
            KindArg::L => WKind::Lax,
            KindArg::C => WKind::Oplax,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse and validate fixtures.
    Validate,
    /// Decide whether a weight is PIE.
    CheckPie,
    /// Decide w-riggedness of an F-weight.
    CheckRigged,
    /// Decide tight riggedness of an F-weight.
    CheckTightlyRigged,
    /// Build and certify the relative classifier of kind --kind.
    Classifier,
    /// Canonical riggings from the Q-coalgebra structures.
    CanonicalRigging,
    /// Find an F-weighted limit.
    Limit,
    /// Check whether T-Alg_w creates a weighted limit.
    Lift,
    /// Cross-tabulate lifting against riggedness over sampled diagrams.
    LiftSurvey,
    /// Find an F-Eilenberg-Moore object.
    EmObject,
    /// Check every expectation of the fixture corpus.
    Corpus {
        /// Write the corpus fixtures in canonical form to this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::CheckPie => "check-pie",
            Command::CheckRigged => "check-rigged",
            Command::CheckTightlyRigged => "check-tightly-rigged",
            Command::Classifier => "classifier",
            Command::CanonicalRigging => "canonical-rigging",
            Command::Limit => "limit",
            Command::Lift => "lift",
            Command::LiftSurvey => "lift-survey",
            Command::EmObject => "em-object",
            Command::Corpus { .. } => "corpus",
        }
    }
}

/// Decision procedures for finite F-categories, weights and monads.
#[derive(Debug, Clone, Parser)]
#[command(name = "fcat", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Fixture file; repeatable.
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub kind: Option<KindArg>,
    /// Maximum number of morphisms in a realized presentation.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// JSON object mapping probe names to weights on the input shape.
    #[arg(long, global = true)]
    pub probes: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub report: ReportFormat,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

/// The outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: Value,
    pub exit: i32,
    pub verdicts: Vec<Value>,
    pub witnesses: Vec<Value>,
    pub certificate: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl Report {
    /// The report without timing, for determinism comparisons.
    pub fn untimed(&self) -> Report {
        Report { elapsed_ms: 0, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("command: {}\n", self.command);
        for (label, items) in
            [("verdict", &self.verdicts), ("witness", &self.witnesses), ("certificate", &self.certificate)]
        {
            for v in items {
                s += &format!("{label}: {v}\n");
            }
        }
        if let Some(e) = &self.error {
            s += &format!("error: {e}\n");
        }
        s += &format!("exit: {}\nelapsed: {} ms\n", self.exit, self.elapsed_ms);
        s
    }
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<KanError> for Failure {
    fn from(e: KanError) -> Self {
        match e {
            KanError::BudgetExceeded(s) => Failure::Budget(s),
            e => Failure::Input(e.to_string()),
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

struct Out {
    exit: i32,
    verdicts: Vec<Value>,
    witnesses: Vec<Value>,
    certificate: Vec<Value>,
}

impl Out {
    fn negative_if(&mut self, bad: bool) {
        if bad {
            self.exit = self.exit.max(EXIT_NEGATIVE);
        }
    }
}

pub(crate) fn rigged_tag(v: &RiggedVerdict) -> &'static str {
    match v {
        RiggedVerdict::Rigged { .. } => "Rigged",
        RiggedVerdict::NotCoalgebra { .. } => "NotCoalgebra",
        RiggedVerdict::NotSurjective { .. } => "NotSurjective",
        RiggedVerdict::BudgetExceeded(_) => "BudgetExceeded",
    }
}

pub(crate) fn lift_tag(v: &LiftVerdict) -> &'static str {
    match v {
        LiftVerdict::Created { .. } => "Created",
        LiftVerdict::NoBaseLimit => "NoBaseLimit",
        LiftVerdict::StructureNotUnique { .. } => "StructureNotUnique",
        LiftVerdict::UniversalPropertyFails { .. } => "UniversalPropertyFails",
    }
}

/// Tight objects of an F-weight keyed by shape object.
pub(crate) fn tight_objects_json(w: &FWeight) -> Value {
    let d = &w.shape.base;
    let m: BTreeMap<String, Vec<String>> = w
        .tight_objects()
        .iter()
        .enumerate()
        .map(|(o, xs)| {
            let v = &w.phi_lambda.values[o];
            let mut names: Vec<String> = xs.iter().map(|&x| v.objects[x].clone()).collect();
            names.sort();
            (d.objects[o].clone(), names)
        })
        .collect();
    json!(m)
}

fn element_name(phi: &CatWeight, d: &crate::two_cat::TwoCat, o: usize, x: usize) -> String {
    format!("{}:{}", d.objects[o], phi.values[o].objects[x])
}

fn cone_json(k: &FCat, w: &FWeight, ctx: &FLimitContext, cone: &FCone) -> Value {
    let d = &w.shape.base;
    let legs: BTreeMap<String, String> = (0..d.n_obj())
        .flat_map(|o| (0..w.phi_lambda.values[o].n_obj()).map(move |x| (o, x)))
        .map(|(o, x)| (element_name(&w.phi_lambda, d, o, x), k.base.cells1[ctx.leg_cell(cone, o, x)].name.clone()))
        .collect();
    json!({ "apex": k.base.objects[cone.apex], "legs": legs })
}

fn load_inputs(cli: &Cli) -> Result<Vec<Fixture>, Failure> {
    cli.input.iter().map(|p| load_fixture(p).map_err(Failure::from)).collect()
}

fn parse_all(fixtures: &[Fixture]) -> Result<Vec<(String, Payload)>, Failure> {
    fixtures
        .iter()
        .map(|f| f.parse().map(|p| (f.name.clone(), p)).map_err(|e| Failure::Input(format!("{}: {e}", f.name))))
        .collect()
}

fn budget_for(cli: &Cli, w: &FWeight) -> CompletionBudget {
    match cli.budget {
        Some(n) => CompletionBudget { max_morphisms: n, ..default_budget(w) },
        None => default_budget(w),
    }
}

fn probes_for(cli: &Cli, shape: &FCat, phi: &CatWeight) -> Result<Vec<(String, CatWeight)>, Failure> {
    let Some(path) = &cli.probes else {
        return Ok(default_probes(&shape.base, phi));
    };
    let file = path.display().to_string();
    let s = std::fs::read_to_string(path).map_err(|source| IoError::Io { file: file.clone(), source })?;
    let m: BTreeMap<String, CatWeightJson> = serde_json::from_str(&s).map_err(|e| IoError::Json {
        file: file.clone(),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let mut out = vec![("phi".to_string(), phi.clone())];
    for (name, j) in &m {
        out.push((name.clone(), cat_weight_from_json(j, &shape.base, &format!("{file}.{name}"))?));
    }
    Ok(out)
}

fn shape_phi(name: &str, p: &Payload) -> Result<(FCat, CatWeight), Failure> {
    match p {
        Payload::Weight(w) => Ok((FCat::inchordate(w.shape.clone()), w.phi.clone())),
        Payload::FWeight(w) => Ok((w.shape.clone(), w.phi_lambda.clone())),
        _ => Err(Failure::Input(format!("{name}: expected a weight or fweight fixture"))),
    }
}

fn fweight<'a>(name: &str, p: &'a Payload) -> Result<&'a FWeight, Failure> {
    match p {
        Payload::FWeight(w) => Ok(w),
        _ => Err(Failure::Input(format!("{name}: expected an fweight fixture"))),
    }
}

fn classifier_json(name: &str, rc: &RelativeClassifier) -> (Value, Value) {
    let d = &rc.shape.base;
    let per_object: Vec<Value> = (0..d.n_obj())
        .map(|o| {
            let c = &rc.q_phi.values[o];
            let non_id: Vec<usize> = (0..c.n_mor()).filter(|&m| !c.is_identity(m)).collect();
            json!({
                "object": d.objects[o],
                "objects": c.n_obj(),
                "nonidentity_morphisms": non_id.len(),
                "nonidentity_isos": non_id.iter().filter(|&&m| c.is_iso(m)).count(),
                "lan_classes": rc.lan.value.sizes[o],
            })
        })
        .collect();
    let cert = &rc.certificate;
    let probes: Vec<Value> =
        cert.probes.iter().map(|(n, a, b)| json!({ "probe": n, "strict_maps": a, "relative_maps": b })).collect();
    (
        json!({ "input": name, "kind": kind_tag(rc.kind), "values": per_object }),
        json!({
            "input": name,
            "ok": cert.ok(),
            "counit_unit_identity": cert.counit_unit_identity,
            "object_counts": cert.object_counts,
            "probes": probes,
        }),
    )
}

fn lift_verdict_json(p: &LiftProblem, v: &LiftVerdict) -> (Value, Option<Value>) {
    let t = &p.alg.fcat.base;
    let verdict = match v {
        LiftVerdict::Created { cone } => json!({ "verdict": "Created", "apex": t.objects[cone.apex] }),
        v => json!({ "verdict": lift_tag(v) }),
    };
    let witness = match v {
        LiftVerdict::StructureNotUnique { witnesses } => {
            Some(json!({ "apexes": witnesses.iter().map(|c| t.objects[c.apex].clone()).collect::<Vec<_>>() }))
        }
        LiftVerdict::UniversalPropertyFails { failure: LiftFailure::NoLiftedCone } => {
            Some(json!({ "failure": "no algebra on the base apex carries a cone with strict tight projections" }))
        }
        LiftVerdict::UniversalPropertyFails { failure: LiftFailure::NotFLimit(f) } => {
            Some(json!({ "failure": format!("{f:?}") }))
        }
        _ => None,
    };
    (verdict, witness)
}

fn execute(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let kind = cli.kind.map(KindArg::kind);
    let fixtures = match &cli.command {
        Command::Corpus { .. } | Command::LiftSurvey if cli.input.is_empty() => Vec::new(),
        _ if cli.input.is_empty() => return Err(Failure::Input("no --input given".into())),
        _ => load_inputs(cli)?,
    };
    match &cli.command {
        Command::Validate => {
            for (name, p) in parse_all(&fixtures)? {
                let kind = fixtures.iter().find(|f| f.name == name).map(|f| f.kind).expect("fixture");
                out.verdicts
                    .push(json!({ "input": name, "kind": kind, "valid": true, "payload": payload_summary(&p) }));
            }
        }
        Command::CheckPie => {
            for (name, p) in parse_all(&fixtures)? {
                let (shape, phi) = shape_phi(&name, &p)?;
                let d = &shape.base;
                let v = is_pie(&phi, d);
                out.verdicts.push(json!({ "input": name, "pie": v.pie, "components": v.components.len() }));
                if let Some(i) = v.failing {
                    let elems: Vec<String> = v.components[i]
                        .objects
                        .iter()
                        .map(|&e| {
                            let (o, x) = v.elements[e];
                            element_name(&phi, d, o, x)
                        })
                        .collect();
                    out.witnesses
                        .push(json!({ "input": name, "reason": "no initial object in component", "component": elems }));
                }
                out.negative_if(!v.pie);
            }
        }
        Command::CheckRigged => {
            let k = kind.unwrap_or(WKind::Pseudo);
            for (name, p) in parse_all(&fixtures)? {
                let w = fweight(&name, &p)?;
                let v = is_rigged(w, k, &budget_for(cli, w))?;
                let d = &w.shape.base;
                let mut verdict = json!({ "input": name, "kind": kind_tag(k), "verdict": rigged_tag(&v) });
                match &v {
                    RiggedVerdict::Rigged { structure } => {
                        out.witnesses.push(json!({ "input": name, "structure_components": structure.s.iter().map(|f| f.on_obj.clone()).collect::<Vec<_>>() }));
                    }
                    RiggedVerdict::NotCoalgebra { structures } => verdict["coalgebra_structures"] = json!(structures),
                    RiggedVerdict::NotSurjective { object, element } => {
                        out.witnesses.push(
                            json!({ "input": name, "missed": element_name(&w.phi_lambda, d, *object, *element) }),
                        );
                    }
                    RiggedVerdict::BudgetExceeded(s) => {
                        out.verdicts.push(verdict);
                        return Err(Failure::Budget(s.clone()));
                    }
                }
                out.negative_if(!v.is_rigged());
                out.verdicts.push(verdict);
            }
        }
        Command::CheckTightlyRigged => {
            for (name, p) in parse_all(&fixtures)? {
                let w = fweight(&name, &p)?;
                let v = is_tightly_rigged(w)?;
                out.verdicts.push(
                    json!({ "input": name, "bijective": v.bijective, "p_rigged_certified": v.p_rigged_certified }),
                );
                out.negative_if(!v.bijective);
            }
        }
        Command::Classifier => {
            let k = kind.unwrap_or(WKind::Pseudo);
            for (name, p) in parse_all(&fixtures)? {
                let (shape, phi) = shape_phi(&name, &p)?;
                let budget = match cli.budget {
                    Some(n) => CompletionBudget { max_morphisms: n, ..CompletionBudget::default() },
                    None => CompletionBudget::for_size(crate::kan_classifiers::input_size(&shape, &phi)),
                };
                let probes = probes_for(cli, &shape, &phi)?;
                let rc = build_relative_classifier(&shape, &phi, k, &budget, &probes)?;
                let (v, c) = classifier_json(&name, &rc);
                out.negative_if(!rc.certificate.ok());
                out.verdicts.push(v);
                out.certificate.push(c);
                let structures = find_coalgebras(&rc)?;
                out.witnesses.push(json!({ "input": name, "coalgebra_structures": structures.len() }));
            }
        }
        Command::CanonicalRigging => {
            let k = kind.unwrap_or(WKind::Pseudo);
            for (name, p) in parse_all(&fixtures)? {
                let (shape, phi) = shape_phi(&name, &p)?;
                let rc = crate::kan_classifiers::classifier(&shape, &phi, k.bar())?;
                let structures = find_coalgebras(&rc)?;
                let mut riggings = Vec::new();
                for s in &structures {
                    let r = canonical_rigging(&rc, s)?;
                    riggings.push(tight_objects_json(&r));
                    out.witnesses.push(json!({ "input": name, "rigging": super::schema::fweight_to_json(&r)? }));
                }
                out.verdicts.push(json!({ "input": name, "kind": kind_tag(k), "classifier_kind": kind_tag(k.bar()), "riggings": riggings }));
                out.negative_if(structures.is_empty());
            }
        }
        Command::Limit => {
            for (name, p) in parse_all(&fixtures)? {
                let Payload::Limit(l) = &p else {
                    return Err(Failure::Input(format!("{name}: expected a limit fixture")));
                };
                match find_f_limit(&l.weight, &l.diagram, &l.target) {
                    Ok(cone) => {
                        let ctx = FLimitContext::new(&l.weight, &l.diagram, &l.target).map_err(input_err)?;
                        let v = check_f_limit(&l.weight, &l.diagram, &l.target, &cone).map_err(input_err)?;
                        out.verdicts.push(json!({ "input": name, "found": true, "apex": l.target.base.objects[cone.apex], "f_limit": v.is_limit() }));
                        out.witnesses.push(cone_json(&l.target, &l.weight, &ctx, &cone));
                        out.negative_if(!v.is_limit());
                    }
                    Err(WeightError::NotFound { loose_apex }) => {
                        let loose = loose_apex.map(|a| l.target.base.objects[a].clone());
                        out.verdicts.push(json!({ "input": name, "found": false, "loose_limit_only": loose }));
                        out.negative_if(true);
                    }
                    Err(e) => return Err(input_err(e)),
                }
            }
        }
        Command::Lift => {
            for (name, p) in parse_all(&fixtures)? {
                let Payload::Lift(l) = &p else {
                    return Err(Failure::Input(format!("{name}: expected a lift fixture")));
                };
                match &l.diagram {
                    Some(g) => {
                        let v = lift_check(&l.monad, &l.alg, &l.weight, g).map_err(input_err)?;
                        let (mut verdict, witness) = lift_verdict_json(l, &v);
                        verdict["input"] = json!(name);
                        out.verdicts.push(verdict);
                        if let Some(mut w) = witness {
                            w["input"] = json!(name);
                            out.witnesses.push(w);
                        }
                        out.negative_if(!v.is_created());
                    }
                    None => {
                        let gs = sample_diagrams(&l.weight.shape, &l.alg.fcat, SAMPLED_DIAGRAMS, cli.seed);
                        let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
                        for (i, g) in gs.iter().enumerate() {
                            let v = lift_check(&l.monad, &l.alg, &l.weight, g).map_err(input_err)?;
                            *tally.entry(lift_tag(&v)).or_default() += 1;
                            if let (_, Some(mut w)) = lift_verdict_json(l, &v) {
                                w["input"] = json!(name);
                                w["diagram"] = json!(i);
                                out.witnesses.push(w);
                            }
                        }
                        let failures = tally
                            .iter()
                            .filter(|(t, _)| !matches!(**t, "Created" | "NoBaseLimit"))
                            .map(|(_, n)| n)
                            .sum::<usize>();
                        out.verdicts.push(
                            json!({ "input": name, "diagrams": gs.len(), "verdicts": tally, "failures": failures }),
                        );
                        out.negative_if(failures > 0);
                    }
                }
            }
        }
        Command::LiftSurvey => {
            let k = kind.unwrap_or(WKind::Pseudo);
            let parsed = parse_all(&fixtures)?;
            let mut monads: Vec<(String, FiniteMonad)> = Vec::new();
            let mut weights: Vec<(String, FWeight)> = Vec::new();
            for (name, p) in parsed {
                match p {
                    Payload::Monad(m) => monads.push((name, m)),
                    Payload::FWeight(w) => weights.push((name, w)),
                    _ => return Err(Failure::Input(format!("{name}: expected a monad or fweight fixture"))),
                }
            }
            if monads.is_empty() {
                monads = fixture_monads();
            }
            if weights.is_empty() {
                weights = zoo(k);
            }
            out.certificate.push(json!({
                "scope": "finite evidence: sampled diagrams over the listed monads, not a proof",
                "diagrams_per_weight": SAMPLED_DIAGRAMS,
                "seed": cli.seed,
            }));
            for (mname, m) in &monads {
                let alg = build_t_alg_w(m, k).map_err(input_err)?;
                let rows = lift_survey(m, &alg, &weights, SAMPLED_DIAGRAMS, cli.seed).map_err(input_err)?;
                for r in rows {
                    let failures: Vec<&str> = r.failures.iter().map(|(_, v)| lift_tag(v)).collect();
                    out.verdicts.push(json!({
                        "monad": mname,
                        "kind": kind_tag(k),
                        "weight": r.weight,
                        "rigged": r.rigged,
                        "diagrams": r.diagrams,
                        "created": r.created,
                        "no_base_limit": r.no_base_limit,
                        "failures": failures,
                        "inconsistent": r.inconsistent(),
                    }));
                    out.negative_if(r.inconsistent());
                }
            }
        }
        Command::EmObject => {
            for (name, p) in parse_all(&fixtures)? {
                let Payload::Em(e) = &p else {
                    return Err(Failure::Input(format!("{name}: expected an em fixture")));
                };
                let v = em_object_f(&e.base, &e.monad).map_err(input_err)?;
                let k = &e.base.base;
                out.verdicts.push(json!({
                    "input": name,
                    "exists": v.em.is_some(),
                    "apex": v.em.as_ref().map(|m| k.objects[m.apex].clone()),
                    "u": v.em.as_ref().map(|m| k.cells1[m.u].name.clone()),
                    "u_tight": v.u_tight,
                    "detects_tightness": v.detects_tightness,
                }));
                out.negative_if(!v.is_f_em_object());
            }
        }
        Command::Corpus { out: dir } => {
            let fixtures = if fixtures.is_empty() { builtin_corpus() } else { fixtures };
            if let Some(dir) = dir {
                write_fixtures(dir, &fixtures)?;
            }
            for f in &fixtures {
                let results = check_fixture(f);
                let failed: Vec<_> = results.iter().filter(|r| !r.ok).collect();
                out.verdicts.push(json!({
                    "fixture": f.name,
                    "kind": f.kind,
                    "provenance": f.provenance,
                    "checked": results.len(),
                    "ok": failed.is_empty(),
                }));
                for r in &failed {
                    out.witnesses.push(json!({ "fixture": f.name, "failed": r }));
                }
                out.negative_if(!failed.is_empty());
            }
        }
    }
    Ok(())
}

fn payload_summary(p: &Payload) -> Value {
    match p {
        Payload::Category(c) => json!({ "objects": c.n_obj(), "morphisms": c.n_mor() }),
        Payload::TwoCat(k) => json!({ "objects": k.n_obj(), "cells1": k.cells1.len(), "cells2": k.cells2.len() }),
        Payload::FCat(f) => {
            json!({ "objects": f.base.n_obj(), "cells1": f.base.cells1.len(), "tight": f.tight.iter().filter(|&&t| t).count() })
        }
        Payload::Weight(w) => json!({ "shape_objects": w.shape.n_obj() }),
        Payload::FWeight(w) => json!({ "shape_objects": w.shape.base.n_obj() }),
        Payload::Monad(m) => json!({ "algebras": m.algebras().len() }),
        Payload::Limit(l) => json!({ "target_objects": l.target.base.n_obj() }),
        Payload::Em(e) => json!({ "base_objects": e.base.base.n_obj() }),
        Payload::Lift(l) => json!({ "algebras": l.alg.algebras.len(), "kind": kind_tag(l.alg.kind) }),
    }
}

fn command_echo(cli: &Cli) -> Value {
    let mut v = json!({
        "name": cli.command.name(),
        "input": cli.input.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "seed": cli.seed,
    });
    if let Some(k) = cli.kind {
        v["kind"] = json!(kind_tag(k.kind()));
    }
    if let Some(b) = cli.budget {
        v["budget"] = json!(b);
    }
    if let Some(p) = &cli.probes {
        v["probes"] = json!(p.display().to_string());
    }
    if let Command::Corpus { out: Some(d) } = &cli.command {
        v["out"] = json!(d.display().to_string());
    }
    v
}

/// Runs one invocation; the exit code is also recorded in the report.
pub fn run(cli: &Cli) -> (i32, Report) {
    let start = Instant::now();
    let mut out = Out { exit: EXIT_OK, verdicts: Vec::new(), witnesses: Vec::new(), certificate: Vec::new() };
    let (exit, error) = match execute(cli, &mut out) {
        Ok(()) => (out.exit, None),
        Err(Failure::Input(e)) => (EXIT_INPUT, Some(e)),
        Err(Failure::Budget(e)) => (EXIT_BUDGET, Some(format!("budget exceeded: {e}"))),
    };
    let report = Report {
        command: command_echo(cli),
        exit,
        verdicts: out.verdicts,
        witnesses: out.witnesses,
        certificate: out.certificate,
        error,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    (exit, report)
}
