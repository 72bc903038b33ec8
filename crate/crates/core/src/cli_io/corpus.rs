//! The built-in fixture corpus and its expectation checker.

use serde::Serialize;
use serde_json::{json, Value};

use super::command::{lift_tag, rigged_tag, tight_objects_json};
use super::{
    kind_tag, parse_kind, payload_to_value, EmProblem, Fixture, FixtureKind, LiftProblem, LimitProblem, Payload,
};
use crate::cat_core::FinCat;
use crate::f_core::{FCat, FFun};
use crate::kan_classifiers::{classifier, find_coalgebras};
use crate::monad_alg::{
    build_t_alg_w, fixture_monads, lift_check, power_witness, sample_diagrams, FMonad, FiniteMonad,
};
use crate::riggedness::{canonical_rigging, default_budget, is_pie, is_rigged, is_tightly_rigged};
use crate::two_cat::{CatWeight, Monad2, TwoCat, TwoFun, WKind};
use crate::weights::{
    constant_one_weight, find_f_limit, parallel_two_cells, shape_not_rigged, shape_two_qcoalg, weight_arrow,
    weight_idempotent_splitting, weight_pie_fixture, zoo, PIE_FIXTURES,
};

/// Diagrams sampled per lifting problem without an explicit diagram.
pub(crate) const SAMPLED_DIAGRAMS: usize = 12;

/// Outcome of one expectation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectationResult {
    pub key: String,
    pub expected: Value,
    pub actual: Value,
    pub ok: bool,
}

fn fixture(name: &str, kind: FixtureKind, provenance: &str, p: Payload) -> Fixture {
    let payload = payload_to_value(&p).expect("built-in fixture serializes");
    Fixture::new(name, kind, provenance, payload)
}

fn fweight_fixture(name: &str, provenance: &str, w: crate::weights::FWeight) -> Fixture {
    fixture(name, FixtureKind::Fweight, provenance, Payload::FWeight(w))
}

fn ordinals_12() -> FCat {
    FCat::chordate(TwoCat::sub_of_cat(&[("1".into(), FinCat::terminal()), ("2".into(), FinCat::arrow())]))
}

fn ordinals_123() -> FCat {
    FCat::chordate(TwoCat::sub_of_cat(&[
        ("1".into(), FinCat::terminal()),
        ("2".into(), FinCat::arrow()),
        ("3".into(), FinCat::ordinal(3)),
    ]))
}

/// The idempotent monad on `2` in [`ordinals_12`] whose unit runs into
/// the constant functor at the top object.
fn idempotent_monad2(k: &TwoCat) -> Monad2 {
    let two = k.obj_index("2").expect("object 2");
    let id = k.id1(two);
    (0..k.cells1.len())
        .filter(|&t| t != id && k.src1(t) == two && k.tgt1(t) == two && k.comp1(t, t) == t)
        .find_map(|t| {
            let eta = (0..k.cells2.len()).find(|&a| k.cells2[a].src == id && k.cells2[a].tgt == t)?;
            let m = Monad2 { object: two, t, mu: k.id2(t), eta };
            m.validate(k).ok().map(|_| m)
        })
        .expect("idempotent monad on 2")
}

fn identity_monad2(k: &TwoCat, o: usize) -> Monad2 {
    let t = k.id1(o);
    Monad2 { object: o, t, mu: k.id2(t), eta: k.id2(t) }
}

/// The fixture corpus; every expectation is a pinned golden value.
pub fn builtin_corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    for name in PIE_FIXTURES {
        let w = weight_pie_fixture(name).expect("pie fixture");
        let fname = format!("pie_{}", name.replace('*', "star"));
        out.push(
            fixture(&fname, FixtureKind::Weight, "derived: weight_pie_fixture", Payload::Weight(w))
                .expect("pie", json!(true)),
        );
    }
    out.push(
        fixture(
            "pie_idempotent_splitting",
            FixtureKind::Weight,
            "derived: weight_idempotent_splitting",
            Payload::Weight(weight_idempotent_splitting()),
        )
        .expect("pie", json!(false)),
    );

    let shape = shape_two_qcoalg();
    out.push(
        fixture("fcat_two_qcoalg", FixtureKind::Fcat, "derived: shape_two_qcoalg", Payload::FCat(shape.clone()))
            .expect("hom_sizes", json!([[1, 1], [1, 2]])),
    );
    let w = constant_one_weight(shape.clone(), &[false, false]).expect("two-qcoalg weight");
    let mut e = fweight_fixture("eg_two_qcoalg", "derived: shape_two_qcoalg, constant_one_weight", w);
    for k in ["p", "l", "c"] {
        e = e
            .expect(&format!("classifier_objects:{k}"), json!([2, 2]))
            .expect(&format!("classifier_isos:{k}"), json!([2, 2]))
            .expect(&format!("coalgebras:{k}"), json!(2));
    }
    out.push(e.expect("canonical_riggings:p", json!([{"a": ["*"], "b": []}, {"a": [], "b": ["*"]}])));
    for (name, tight) in [("eg_two_qcoalg_rigging_a", [true, false]), ("eg_two_qcoalg_rigging_b", [false, true])] {
        let w = constant_one_weight(shape.clone(), &tight).expect("rigging");
        out.push(
            fweight_fixture(name, "derived: canonical_rigging on eg_two_qcoalg", w)
                .expect("rigged:p", json!("Rigged"))
                .expect("rigged:l", json!("Rigged"))
                .expect("rigged:c", json!("Rigged")),
        );
    }

    let nr = shape_not_rigged();
    out.push(
        fixture("category_not_rigged_shape", FixtureKind::Category, "derived: shape_not_rigged", {
            Payload::Category(nr.base.underlying().clone())
        })
        .expect("hom_sizes", json!([[4, 3], [2, 2]])),
    );
    let w = constant_one_weight(nr, &[false, false]).expect("not-rigged weight");
    out.push(
        fweight_fixture("eg_not_rigged", "derived: shape_not_rigged, constant_one_weight", w)
            .expect("hom_sizes", json!([[4, 3], [2, 2]]))
            .expect("rigged:p", json!("NotSurjective"))
            .expect("tightly_rigged", json!(false))
            .expect("canonical_riggings:p", json!([{"a": [], "b": []}])),
    );

    out.push(fixture(
        "two_cat_parallel_cells",
        FixtureKind::TwoCat,
        "derived: parallel_two_cells",
        Payload::TwoCat(parallel_two_cells()),
    ));

    for kind in [WKind::Pseudo, WKind::Lax, WKind::Oplax] {
        let tag = kind_tag(kind);
        for (name, w) in zoo(kind) {
            let fname =
                if name.ends_with(&format!("_{tag}")) { format!("zoo_{name}") } else { format!("zoo_{name}_{tag}") };
            out.push(fweight_fixture(&fname, "derived: zoo", w).expect(&format!("rigged:{tag}"), json!("Rigged")));
        }
    }

    let k = ordinals_123();
    let w = weight_arrow(WKind::Oplax).expect("oplax arrow");
    let id = k.base.id1(1);
    let diagram = FFun { fun: TwoFun { on0: vec![1, 1], on1: vec![id; 3], on2: vec![k.base.id2(id); 3] } };
    out.push(
        fixture(
            "limit_oplax_arrow",
            FixtureKind::Limit,
            "derived: weight_arrow(oplax) on the identity of 2 in the chordate sub-2-category of Cat on 1, 2, 3",
            Payload::Limit(LimitProblem { weight: w, target: k.clone(), diagram }),
        )
        .expect("limit_apex", json!("3"))
        .expect("limit_is_f_limit", json!(true)),
    );

    let sizes = [("identity", 3), ("closure", 3), ("writer", 7)];
    for (name, m) in fixture_monads() {
        let n = sizes.iter().find(|s| s.0 == name).map(|s| s.1).expect("fixture monad");
        let mut f = fixture(&format!("monad_{name}"), FixtureKind::Monad, "derived: fixture_monads", Payload::Monad(m))
            .expect("algebras", json!(n));
        if name == "writer" {
            f = f.expect("t_alg_size:l", json!([7, 126, 373]));
        }
        if name == "identity" {
            f = f.expect("t_alg_size:c", json!([3, 31, 98]));
        }
        out.push(f);
    }

    for kind in [WKind::Lax, WKind::Oplax] {
        let (monad, alg, weight, g) = power_witness(kind).expect("power witness");
        out.push(
            fixture(
                &format!("lift_power_witness_{}", kind_tag(kind)),
                FixtureKind::Lift,
                "derived: power_witness",
                Payload::Lift(LiftProblem { monad, alg, weight, diagram: Some(g) }),
            )
            .expect("lift", json!("StructureNotUnique")),
        );
    }
    let (name, m) = fixture_monads().into_iter().find(|(n, _)| n == "closure").expect("closure monad");
    let alg = build_t_alg_w(&m, WKind::Pseudo).expect("closure algebras");
    let (_, weight) = zoo(WKind::Pseudo).into_iter().next().expect("zoo weight");
    out.push(
        fixture(
            &format!("lift_sampled_{name}"),
            FixtureKind::Lift,
            "derived: zoo(p), fixture_monads, sample_diagrams",
            Payload::Lift(LiftProblem { monad: m, alg, weight, diagram: None }),
        )
        .expect("lift_failures", json!(0)),
    );

    let k = ordinals_12();
    let kb = &k.base;
    out.push(
        fixture(
            "em_identity",
            FixtureKind::Em,
            "derived: identity_monad2 on 2 in the chordate sub-2-category of Cat on 1, 2",
            Payload::Em(EmProblem { base: k.clone(), monad: identity_monad2(kb, 1) }),
        )
        .expect("em_object", json!(true))
        .expect("em_apex", json!("2")),
    );
    out.push(
        fixture(
            "em_idempotent",
            FixtureKind::Em,
            "derived: idempotent_monad2 in the chordate sub-2-category of Cat on 1, 2",
            Payload::Em(EmProblem { base: k.clone(), monad: idempotent_monad2(kb) }),
        )
        .expect("em_object", json!(true))
        .expect("em_apex", json!("1")),
    );
    let ink = FCat::inchordate(kb.clone());
    out.push(
        fixture(
            "em_idempotent_inchordate",
            FixtureKind::Em,
            "derived: idempotent_monad2 in the inchordate sub-2-category of Cat on 1, 2",
            Payload::Em(EmProblem { monad: idempotent_monad2(&ink.base), base: ink }),
        )
        .expect("em_object", json!(false)),
    );

    let m = FMonad::identity(ordinal_base_small());
    out.push(fixture(
        "monad_identity_on_2",
        FixtureKind::Monad,
        "derived: FMonad::identity",
        Payload::Monad(FiniteMonad::Endo(m)),
    ));
    out
}

fn ordinal_base_small() -> FCat {
    FCat::chordate(TwoCat::sub_of_cat(&[("2".into(), FinCat::arrow())]))
}

fn shape_phi(p: &Payload) -> Option<(FCat, CatWeight)> {
    match p {
        Payload::Weight(w) => Some((FCat::inchordate(w.shape.clone()), w.phi.clone())),
        Payload::FWeight(w) => Some((w.shape.clone(), w.phi_lambda.clone())),
        _ => None,
    }
}

fn underlying(p: &Payload) -> Option<&FinCat> {
    match p {
        Payload::Category(c) => Some(c),
        Payload::TwoCat(k) => Some(k.underlying()),
        Payload::FCat(f) => Some(f.base.underlying()),
        Payload::Weight(w) => Some(w.shape.underlying()),
        Payload::FWeight(w) => Some(w.shape.base.underlying()),
        _ => None,
    }
}

fn unsupported(key: &str) -> String {
    format!("expectation `{key}` does not apply to this payload")
}

/// Computes the value of one expectation key on a payload.
pub fn evaluate(p: &Payload, key: &str) -> Result<Value, String> {
    let (base, arg) = match key.split_once(':') {
        Some((b, a)) => (b, Some(parse_kind(a, key).map_err(|e| e.to_string())?)),
        None => (key, None),
    };
    let kind = || arg.ok_or_else(|| format!("expectation `{key}` needs a kind suffix"));
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match base {
        "valid" => Ok(json!(true)),
        "hom_sizes" => {
            let c = underlying(p).ok_or_else(|| unsupported(key))?;
            Ok(json!((0..c.n_obj())
                .map(|a| (0..c.n_obj()).map(|b| c.hom(a, b).len()).collect::<Vec<_>>())
                .collect::<Vec<_>>()))
        }
        "pie" => match p {
            Payload::Weight(w) => Ok(json!(is_pie(&w.phi, &w.shape).pie)),
            Payload::FWeight(w) => Ok(json!(is_pie(&w.phi_lambda, &w.shape.base).pie)),
            _ => Err(unsupported(key)),
        },
        "rigged" => match p {
            Payload::FWeight(w) => {
                let v = is_rigged(w, kind()?, &default_budget(w)).map_err(|e| err(&e))?;
                Ok(json!(rigged_tag(&v)))
            }
            _ => Err(unsupported(key)),
        },
        "tightly_rigged" => match p {
            Payload::FWeight(w) => Ok(json!(is_tightly_rigged(w).map_err(|e| err(&e))?.bijective)),
            _ => Err(unsupported(key)),
        },
        "classifier_objects" | "classifier_isos" | "coalgebras" | "canonical_riggings" => {
            let (shape, phi) = shape_phi(p).ok_or_else(|| unsupported(key))?;
            let k = kind()?;
            let v = if base == "canonical_riggings" { k.bar() } else { k };
            let rc = classifier(&shape, &phi, v).map_err(|e| err(&e))?;
            let values = &rc.q_phi.values;
            match base {
                "classifier_objects" => Ok(json!(values.iter().map(|c| c.n_obj()).collect::<Vec<_>>())),
                "classifier_isos" => Ok(json!(values
                    .iter()
                    .map(|c| (0..c.n_mor()).filter(|&m| !c.is_identity(m) && c.is_iso(m)).count())
                    .collect::<Vec<_>>())),
                "coalgebras" => Ok(json!(find_coalgebras(&rc).map_err(|e| err(&e))?.len())),
                _ => {
                    let mut rs = Vec::new();
                    for s in find_coalgebras(&rc).map_err(|e| err(&e))? {
                        rs.push(tight_objects_json(&canonical_rigging(&rc, &s).map_err(|e| err(&e))?));
                    }
                    rs.sort_by_key(|v| v.to_string());
                    rs.dedup();
                    Ok(json!(rs))
                }
            }
        }
        "limit_apex" | "limit_is_f_limit" => match p {
            Payload::Limit(l) => match find_f_limit(&l.weight, &l.diagram, &l.target) {
                Ok(c) if base == "limit_apex" => Ok(json!(l.target.base.objects[c.apex])),
                Ok(c) => {
                    let v = crate::weights::check_f_limit(&l.weight, &l.diagram, &l.target, &c).map_err(|e| err(&e))?;
                    Ok(json!(v.is_limit()))
                }
                Err(crate::weights::WeightError::NotFound { .. }) => {
                    Ok(if base == "limit_apex" { Value::Null } else { json!(false) })
                }
                Err(e) => Err(err(&e)),
            },
            _ => Err(unsupported(key)),
        },
        "algebras" => match p {
            Payload::Monad(m) => Ok(json!(m.algebras().len())),
            _ => Err(unsupported(key)),
        },
        "t_alg_size" => match p {
            Payload::Monad(m) => {
                let a = build_t_alg_w(m, kind()?).map_err(|e| err(&e))?;
                let t = &a.fcat.base;
                Ok(json!([t.n_obj(), t.cells1.len(), t.cells2.len()]))
            }
            _ => Err(unsupported(key)),
        },
        "lift" => match p {
            Payload::Lift(LiftProblem { monad, alg, weight, diagram: Some(g) }) => {
                Ok(json!(lift_tag(&lift_check(monad, alg, weight, g).map_err(|e| err(&e))?)))
            }
            _ => Err(unsupported(key)),
        },
        "lift_failures" => match p {
            Payload::Lift(l) => {
                let gs = match &l.diagram {
                    Some(g) => vec![g.clone()],
                    None => sample_diagrams(&l.weight.shape, &l.alg.fcat, SAMPLED_DIAGRAMS, 0),
                };
                let mut failures = 0;
                for g in &gs {
                    let v = lift_check(&l.monad, &l.alg, &l.weight, g).map_err(|e| err(&e))?;
                    if !v.is_created() && v != crate::monad_alg::LiftVerdict::NoBaseLimit {
                        failures += 1;
                    }
                }
                Ok(json!(failures))
            }
            _ => Err(unsupported(key)),
        },
        "em_object" | "em_apex" => match p {
            Payload::Em(e) => {
                let v = crate::monad_alg::em_object_f(&e.base, &e.monad).map_err(|e| err(&e))?;
                if base == "em_object" {
                    Ok(json!(v.is_f_em_object()))
                } else {
                    Ok(v.em.map_or(Value::Null, |em| json!(e.base.base.objects[em.apex])))
                }
            }
            _ => Err(unsupported(key)),
        },
        _ => Err(format!("unknown expectation `{key}`")),
    }
}

/// Parses a fixture and checks each of its expectations; `valid` is
/// always checked.
pub fn check_fixture(f: &Fixture) -> Vec<ExpectationResult> {
    let p = match f.parse() {
        Ok(p) => p,
        Err(e) => {
            return vec![ExpectationResult {
                key: "valid".into(),
                expected: json!(true),
                actual: json!(e.to_string()),
                ok: false,
            }]
        }
    };
    let mut out = vec![ExpectationResult { key: "valid".into(), expected: json!(true), actual: json!(true), ok: true }];
    for (key, expected) in &f.expect {
        if key == "valid" {
            continue;
        }
        let actual = evaluate(&p, key).unwrap_or_else(|e| json!({ "error": e }));
        out.push(ExpectationResult { key: key.clone(), ok: actual == *expected, expected: expected.clone(), actual });
    }
    out
}
