//! One pass/fail line per acceptance criterion. All checks are exact
//! (tolerance 0); random cases use fixed seeds.

mod common;

use std::time::Instant;

use common::{rng, Catalog};
use fcat_core::cat_core::{functor_category, isomorphic, CompletionBudget, FinCat, Morphism};
use fcat_core::cli_io::{builtin_corpus, Payload};
use fcat_core::f_core::{FCat, FFun};
use fcat_core::kan_classifiers::{classifier, find_coalgebras};
use fcat_core::monad_alg::{build_t_alg_w, fixture_monads, lift_check, lift_survey, power_witness, LiftVerdict};
use fcat_core::riggedness::{
    candidate_riggings, canonical_rigging, default_budget, is_coalgebra, is_pie, is_rigged, is_tightly_rigged,
    pie_qcoalgebra_oracle, so_char_equivalence, RiggedVerdict,
};
use fcat_core::two_cat::{strict_transformations, CatWeight, TwoCat, TwoFun, WKind};
use fcat_core::weights::{
    check_f_limit, find_f_limit, shape_not_rigged, shape_two_qcoalg, weight_arrow, weight_idempotent_splitting,
    weight_pie_fixture, weight_representable, zoo, FLimitContext, FWeight, PIE_FIXTURES,
};
use rand::seq::SliceRandom;

const KINDS: [WKind; 3] = [WKind::Pseudo, WKind::Lax, WKind::Oplax];
const SURVEY_DIAGRAMS: usize = 12;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn corpus_weights() -> Vec<(String, FCat, CatWeight, Option<FWeight>)> {
    let mut out = Vec::new();
    for f in builtin_corpus() {
        match f.parse().expect("built-in fixture parses") {
            Payload::Weight(w) => out.push((f.name, FCat::inchordate(w.shape.clone()), w.phi, None)),
            Payload::FWeight(w) => out.push((f.name, w.shape.clone(), w.phi_lambda.clone(), Some(w))),
            _ => {}
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut n = 0;
    for name in PIE_FIXTURES {
        let w = weight_pie_fixture(name).map_err(|e| e.to_string())?;
        ensure(is_pie(&w.phi, &w.shape).pie, format!("{name} not PIE"))?;
        n += 1;
    }
    let w = weight_idempotent_splitting();
    let v = is_pie(&w.phi, &w.shape);
    ensure(!v.pie && v.failing.is_some(), "idempotent splitting reported PIE")?;
    Ok(format!("{n} PIE fixtures accepted, idempotent splitting rejected"))
}

fn criterion_2() -> Outcome {
    let cat = Catalog::new();
    let budget = CompletionBudget { max_morphisms: 2_000, max_steps: 200_000 };
    let (mut cases, mut pie, mut skipped, mut seed) = (0, 0, 0, 0u64);
    while cases < 120 && seed < 5_000 {
        let mut r = rng(seed);
        seed += 1;
        let Some(c) = common::random_shape(&mut r, 8) else { continue };
        let d = TwoCat::locally_discrete(&c);
        let phi = cat.random_weight(&mut r, &d);
        let a = is_pie(&phi, &d).pie;
        match pie_qcoalgebra_oracle(&phi, &d, &budget) {
            Ok(b) => {
                ensure(a == b, format!("seed {}: is_pie {a}, oracle {b}", seed - 1))?;
                cases += 1;
                pie += a as usize;
            }
            Err(fcat_core::kan_classifiers::KanError::BudgetExceeded(_)) => skipped += 1,
            Err(e) => return Err(format!("seed {}: {e}", seed - 1)),
        }
    }
    ensure(cases >= 100, format!("only {cases} terminating cases"))?;
    Ok(format!("{cases} random weights, {pie} PIE / {} not, 0 disagreements, {skipped} over budget", cases - pie))
}

fn criterion_3() -> Outcome {
    let shape = shape_two_qcoalg();
    let phi = CatWeight::constant(&shape.base, &FinCat::terminal());
    for v in KINDS {
        let rc = classifier(&shape, &phi, v).map_err(|e| e.to_string())?;
        for e in 0..2 {
            let c = &rc.q_phi.values[e];
            let non_id: Vec<usize> = (0..c.n_mor()).filter(|&m| !c.is_identity(m)).collect();
            ensure(c.n_obj() == 2 && non_id.len() == 2, format!("{v:?}: Q(e{e}) has {} objects", c.n_obj()))?;
            let (f, g) = (non_id[0], non_id[1]);
            ensure(
                c.is_identity(c.seq(f, g)) && c.is_identity(c.seq(g, f)),
                format!("{v:?}: nonidentities not mutually inverse"),
            )?;
        }
    }
    let rc = classifier(&shape, &phi, WKind::Pseudo).map_err(|e| e.to_string())?;
    let co = find_coalgebras(&rc).map_err(|e| e.to_string())?;
    ensure(co.len() == 2, format!("{} coalgebra structures", co.len()))?;
    let mut riggings = Vec::new();
    for s in &co {
        let w = canonical_rigging(&rc, s).map_err(|e| e.to_string())?;
        for k in KINDS {
            let v = is_rigged(&w, k, &default_budget(&w)).map_err(|e| e.to_string())?;
            ensure(v.is_rigged(), format!("canonical rigging not {k:?}-rigged: {v:?}"))?;
        }
        riggings.push(w.tight_objects());
    }
    riggings.sort();
    ensure(riggings == vec![vec![vec![], vec![0]], vec![vec![0], vec![]]], format!("riggings {riggings:?}"))?;
    Ok("Q(a), Q(b) free-living isomorphisms for p, l, c; 2 structures; riggings (1, 0) and (0, 1) rigged for p, l, c"
        .into())
}

fn criterion_4() -> Outcome {
    let shape = shape_not_rigged();
    let c = shape.base.underlying();
    let sizes: Vec<usize> = [(0, 0), (1, 1), (0, 1), (1, 0)].iter().map(|&(a, b)| c.hom(a, b).len()).collect();
    ensure(sizes == [4, 2, 3, 2], format!("hom sizes {sizes:?}"))?;
    let phi = CatWeight::constant(&shape.base, &FinCat::terminal());
    let rc = classifier(&shape, &phi, WKind::Pseudo).map_err(|e| e.to_string())?;
    let m = |n: &str| c.mor_index(n).ok_or(format!("no morphism {n}"));
    let (r, g) = (m("r")?, m("g")?);
    // applicative gfr = r;g;r;g and fr = r;g;r
    let fr = c.seq(c.seq(r, g), r);
    let gfr = c.seq(fr, g);
    let target = (rc.lan.class(0, gfr, 0), rc.lan.class(1, fr, 0));
    let co = find_coalgebras(&rc).map_err(|e| e.to_string())?;
    let s =
        co.iter().find(|s| (s.s[0].on_obj[0], s.s[1].on_obj[0]) == target).ok_or("no structure picks [gfr], [fr]")?;
    ensure(is_coalgebra(&rc, s).map_err(|e| e.to_string())?, "[gfr], [fr] fails the coalgebra laws")?;
    let can = canonical_rigging(&rc, s).map_err(|e| e.to_string())?;
    ensure(can.tight_objects().iter().all(|o| o.is_empty()), "canonical rigging nonempty")?;
    let cands = candidate_riggings(&shape, &phi);
    let mut surj = 0;
    for w in &cands {
        let v = is_rigged(w, WKind::Pseudo, &default_budget(w)).map_err(|e| e.to_string())?;
        ensure(!v.is_rigged(), "a candidate is rigged")?;
        if w.tight_objects().iter().all(|o| o.is_empty()) {
            ensure(matches!(v, RiggedVerdict::NotSurjective { .. }), format!("empty candidate: {v:?}"))?;
            surj += 1;
        }
    }
    ensure(surj == 1, "empty candidate missing")?;
    Ok(format!(
        "hom sizes (4,2,3,2); [gfr],[fr] is a coalgebra; canonical rigging empty; {} candidates not rigged, empty one NotSurjective",
        cands.len()
    ))
}

fn criterion_5() -> Outcome {
    let (mut runs, mut probes) = (0, 0);
    for (name, shape, phi, _) in corpus_weights() {
        for v in KINDS {
            let rc = classifier(&shape, &phi, v).map_err(|e| format!("{name} {v:?}: {e}"))?;
            let cert = &rc.certificate;
            ensure(cert.ok(), format!("{name} {v:?}: certificate {cert:?}"))?;
            for (p, a, b) in &cert.probes {
                ensure(a == b, format!("{name} {v:?} probe {p}: {a} vs {b}"))?;
                probes += 1;
            }
            for d in 0..shape.base.n_obj() {
                let (q, l) = (rc.q_phi.values[d].n_obj(), rc.lan.value.sizes[d]);
                ensure(q == l, format!("{name} {v:?} at {d}: {q} objects vs {l} Lan classes"))?;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} (fixture, kind) pairs, {probes} probe bijections exact, object-count law at every object"))
}

fn criterion_6() -> Outcome {
    let cat = Catalog::new();
    let (mut cases, mut surj, mut seed) = (0, 0, 0u64);
    while cases < 200 && seed < 20_000 {
        let mut r = rng(1_000_000 + seed);
        seed += 1;
        let Some(c) = common::random_shape(&mut r, 6) else { continue };
        let d = TwoCat::locally_discrete(&c);
        let phi = cat.random_weight(&mut r, &d);
        let psi = cat.random_weight(&mut r, &d);
        let ts = strict_transformations(&phi, &psi, &d);
        let Some(f) = ts.choose(&mut r) else { continue };
        let v = so_char_equivalence(&d, &phi, &psi, f).map_err(|e| e.to_string())?;
        ensure(v.surjective == v.reflects_identities, format!("seed {}: {v:?}", seed - 1))?;
        cases += 1;
        surj += v.surjective as usize;
    }
    ensure(cases == 200, format!("only {cases} cases"))?;
    Ok(format!("200 random strict transformations ({surj} surjective), 0 disagreements"))
}

fn criterion_7() -> Outcome {
    let (mut created, mut no_base, mut rows) = (0, 0, 0);
    for k in KINDS {
        let weights = zoo(k);
        for (mname, m) in fixture_monads() {
            let alg = build_t_alg_w(&m, k).map_err(|e| e.to_string())?;
            for row in lift_survey(&m, &alg, &weights, SURVEY_DIAGRAMS, 7).map_err(|e| e.to_string())? {
                ensure(row.rigged == Some(true), format!("{} not {k:?}-rigged", row.weight))?;
                ensure(row.failures.is_empty(), format!("{mname} {k:?} {}: {:?}", row.weight, row.failures))?;
                created += row.created;
                no_base += row.no_base_limit;
                rows += 1;
            }
        }
    }
    ensure(created > 0, "nothing created")?;
    let mut witnesses = Vec::new();
    for k in [WKind::Lax, WKind::Oplax] {
        let (m, alg, w, g) = power_witness(k).map_err(|e| e.to_string())?;
        match lift_check(&m, &alg, &w, &g).map_err(|e| e.to_string())? {
            LiftVerdict::StructureNotUnique { witnesses: ws } if ws.len() >= 2 => {
                witnesses.push(format!("{}: {} competing lifts", kind_name(k), ws.len()))
            }
            LiftVerdict::UniversalPropertyFails { failure } => witnesses.push(format!("{}: {failure:?}", kind_name(k))),
            v => return Err(format!("power witness {k:?}: {v:?}")),
        }
    }
    Ok(format!(
        "{rows} (monad, kind, weight) rows: {created} Created, {no_base} without base limit, 0 failures; power witness non-Created ({})",
        witnesses.join("; ")
    ))
}

fn kind_name(k: WKind) -> &'static str {
    match k {
        WKind::Lax => "l",
        WKind::Oplax => "c",
        _ => "p",
    }
}

fn criterion_8() -> Outcome {
    let mut ws: Vec<(String, FWeight)> =
        corpus_weights().into_iter().filter_map(|(n, _, _, w)| w.map(|w| (n, w))).collect();
    for (sname, shape) in [("two_qcoalg", shape_two_qcoalg()), ("not_rigged", shape_not_rigged())] {
        for x in 0..shape.base.n_obj() {
            ws.push((format!("rep_{sname}_{x}"), weight_representable(&shape, x).map_err(|e| e.to_string())?));
        }
    }
    let mut n = 0;
    for (name, w) in &ws {
        let t = is_tightly_rigged(w).map_err(|e| e.to_string())?;
        if !t.bijective {
            continue;
        }
        ensure(t.p_rigged_certified == Some(true), format!("{name}: structure not certified"))?;
        let v = is_rigged(w, WKind::Pseudo, &default_budget(w)).map_err(|e| e.to_string())?;
        ensure(v.is_rigged(), format!("{name}: {v:?}"))?;
        n += 1;
    }
    ensure(n > 0, "no tightly rigged fixture")?;
    Ok(format!("{n} of {} F-weights have bijective comparison; all p-rigged with certified structure", ws.len()))
}

fn criterion_9() -> Outcome {
    let cats = [("1", FinCat::terminal()), ("2", FinCat::arrow()), ("3", FinCat::ordinal(3))];
    let objs: Vec<(String, FinCat)> = cats.iter().map(|(n, c)| (n.to_string(), c.clone())).collect();
    let k = FCat::chordate(TwoCat::sub_of_cat(&objs));
    let w = weight_arrow(WKind::Oplax).map_err(|e| e.to_string())?;
    let two = k.base.obj_index("2").ok_or("no 2")?;
    let id = k.base.id1(two);
    let s = FFun { fun: TwoFun { on0: vec![two, two], on1: vec![id; 3], on2: vec![k.base.id2(id); 3] } };
    let cone = find_f_limit(&w, &s, &k).map_err(|e| e.to_string())?;
    let v = check_f_limit(&w, &s, &k, &cone).map_err(|e| e.to_string())?;
    ensure(v.is_limit(), format!("{v:?}"))?;
    let apex = &objs[cone.apex].1;
    ensure(isomorphic(apex, &comma_of_identity(&FinCat::arrow())), "apex is not the comma category")?;
    let ctx = FLimitContext::new(&w, &s, &k).map_err(|e| e.to_string())?;
    let mut projections = Vec::new();
    for d in 0..w.shape.base.n_obj() {
        for &x in &w.phi[d].on_obj {
            let p = ctx.leg_cell(&cone, d, x);
            ensure(k.tight[p], "projection not tight")?;
            let fun = functor_category(apex, &FinCat::arrow()).functors
                [k.base.cells1[p].name.split(':').next().and_then(|i| i.parse::<usize>().ok()).ok_or("cell name")?]
            .clone();
            projections.push((p, fun.on_obj));
        }
    }
    let mut images: Vec<Vec<usize>> = projections.iter().map(|(_, o)| o.clone()).collect();
    images.sort();
    ensure(images == vec![vec![0, 0, 1], vec![0, 1, 1]], format!("projections {images:?}"))?;
    let kb = &k.base;
    let mut probed = 0;
    for h in 0..kb.cells1.len() {
        if kb.tgt1(h) != cone.apex {
            continue;
        }
        let all_tight = projections.iter().all(|&(p, _)| k.tight[kb.comp1(h, p)]);
        ensure(!all_tight || k.tight[h], "projections do not detect tightness")?;
        probed += 1;
    }
    Ok(format!("apex 3 = comma object of 1_2, projections dom and cod tight, detection checked on {probed} 1-cells"))
}

/// The comma category `C ↓ C` of the identity, built directly.
fn comma_of_identity(c: &FinCat) -> FinCat {
    let objs: Vec<usize> = (0..c.n_mor()).collect();
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut ids = vec![0; objs.len()];
    for &x in &objs {
        for &y in &objs {
            for &a in c.hom(c.src(x), c.src(y)) {
                for &b in c.hom(c.tgt(x), c.tgt(y)) {
                    if c.seq(x, b) == c.seq(a, y) {
                        if x == y && c.is_identity(a) && c.is_identity(b) {
                            ids[x] = morphisms.len();
                        }
                        morphisms.push(Morphism { name: format!("({a},{b}):{x}->{y}"), src: x, tgt: y });
                        pairs.push((a, b));
                    }
                }
            }
        }
    }
    let names = objs.iter().map(|x| x.to_string()).collect();
    let index = |a: usize, b: usize, x: usize, y: usize| {
        (0..morphisms.len()).find(|&m| pairs[m] == (a, b) && morphisms[m].src == x && morphisms[m].tgt == y)
    };
    FinCat::from_fn(names, morphisms.clone(), ids, |f, g| {
        let ((a, b), (a2, b2)) = (pairs[f], pairs[g]);
        index(c.seq(a, a2), c.seq(b, b2), morphisms[f].src, morphisms[g].tgt)
    })
    .expect("comma category")
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("PIE characterization on fixtures", criterion_1),
        ("PIE iff Q_p-coalgebra on random weights", criterion_2),
        ("two-coalgebra golden example", criterion_3),
        ("not-rigged golden example", criterion_4),
        ("classifier universal property", criterion_5),
        ("surjective iff reflects identities", criterion_6),
        ("rigged limits lift; power witness does not", criterion_7),
        ("tightly rigged implies p-rigged", criterion_8),
        ("oplax limit of an arrow is a comma object", criterion_9),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} PASS [{title}] {detail} (tolerance 0, {ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} FAIL [{title}] {e} (tolerance 0, {ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
