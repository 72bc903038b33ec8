//! Decision procedures for PIE, tightly rigged and w-rigged weights, the
//! canonical rigging, and the two characterizations of pointwise
//! surjectivity.

use crate::cat_core::{
    category_of_elements, components_with_initial, functor_category, CompletionBudget, Component, FinCat, Fun,
    FunctorCategory, NatTrans,
};
use crate::f_core::FCat;
use crate::kan_classifiers::{
    build_relative_classifier, build_unchecked, classifier, compute_tau, default_probes, f_coalgebra_check,
    find_coalgebras, input_size, second_classifier, strict_as, CoalgebraStructure, KanError, RelativeClassifier,
};
use crate::two_cat::{CatWeight, TwoCat, WKind};
use crate::weights::{FWeight, WeightError};

/// Outcome of the PIE test: the components of the category of elements
/// of `ob Φ₀` with their initial objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieVerdict {
    pub pie: bool,
    pub components: Vec<Component>,
    /// `(object, element)` pairs of the category of elements, by index.
    pub elements: Vec<(usize, usize)>,
    /// Index into `components` of the first component without an initial object.
    pub failing: Option<usize>,
}

pub fn is_pie(phi: &CatWeight, d: &TwoCat) -> PieVerdict {
    let el = category_of_elements(d.underlying(), &phi.ob());
    let components = components_with_initial(&el.cat);
    let failing = components.iter().position(|c| c.initial.is_none());
    PieVerdict { pie: failing.is_none(), components, elements: el.elements, failing }
}

/// Whether `Φ` admits a `Q_p`-coalgebra structure over the inchordate shape.
pub fn pie_qcoalgebra_oracle(phi: &CatWeight, d: &TwoCat, budget: &CompletionBudget) -> Result<bool, KanError> {
    let shape = FCat::inchordate(d.clone());
    let rc = build_unchecked(&shape, phi, WKind::Pseudo, budget)?;
    Ok(!find_coalgebras(&rc)?.is_empty())
}

/// Result of the tight-riggedness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightVerdict {
    pub bijective: bool,
    /// For bijective `φ̄`: whether the constructed `Q_p`-coalgebra passes
    /// the coalgebra laws and the F-coalgebra condition.
    pub p_rigged_certified: Option<bool>,
}

/// `φ̄` pointwise bijective on objects; when it is, the `Q_p`-coalgebra
/// sending `x = Φu(φa)` to the class of `(u, φa)` is built and checked.
pub fn is_tightly_rigged(w: &FWeight) -> Result<TightVerdict, KanError> {
    let bar = crate::kan_classifiers::phi_bar_objects(w);
    if !bar.bijective {
        return Ok(TightVerdict { bijective: false, p_rigged_certified: None });
    }
    let rc = classifier(&w.shape, &w.phi_lambda, WKind::Pseudo)?;
    let certified = match induced_structure(w, &rc, &bar.maps) {
        Some(s) => is_coalgebra(&rc, &s)? && f_coalgebra_check(w, &rc, &s)?.holds() && bar.surjective,
        None => false,
    };
    Ok(TightVerdict { bijective: true, p_rigged_certified: Some(certified) })
}

/// The strict map `Φ_λ → QΦ` induced by inverting `φ̄`, lifting each
/// morphism uniquely along `q`.
fn induced_structure(w: &FWeight, rc: &RelativeClassifier, bar: &[Vec<usize>]) -> Option<CoalgebraStructure> {
    let k = &w.shape.base;
    let lan = crate::kan_classifiers::lan_set(&w.shape, &w.tau, &w.phi_tau.ob());
    let mut s = Vec::with_capacity(k.n_obj());
    for e in 0..k.n_obj() {
        let c = &w.phi_lambda.values[e];
        let qc = &rc.q_phi.values[e];
        let mut on_obj = vec![0; c.n_obj()];
        for (cls, &x) in bar[e].iter().enumerate() {
            let (u, a) = lan.rep(e, cls);
            on_obj[x] = rc.class(e, u, w.phi[k.src1(u)].on_obj[a]);
        }
        let mut on_mor = Vec::with_capacity(c.n_mor());
        for m in 0..c.n_mor() {
            let lifts: Vec<usize> = qc
                .hom(on_obj[c.src(m)], on_obj[c.tgt(m)])
                .iter()
                .copied()
                .filter(|&h| rc.q[e].on_mor[h] == m)
                .collect();
            if lifts.len() != 1 {
                return None;
            }
            on_mor.push(lifts[0]);
        }
        let f = Fun { on_obj, on_mor };
        f.validate(c, qc).ok()?;
        s.push(f);
    }
    let sw = strict_as(WKind::Strict, &w.phi_lambda, &rc.q_phi, &s, k);
    sw.validate(&w.phi_lambda, &rc.q_phi, k).ok()?;
    Some(CoalgebraStructure { s })
}

/// Counit law and coassociativity for a strict `s: Φ → QΦ`.
pub fn is_coalgebra(rc: &RelativeClassifier, s: &CoalgebraStructure) -> Result<bool, KanError> {
    let k = &rc.shape.base;
    if !(0..k.n_obj()).all(|d| s.s[d].then(&rc.q[d]) == Fun::identity(&rc.input.values[d])) {
        return Ok(false);
    }
    let rc2 = second_classifier(rc)?;
    let qp = rc.apply(&rc2, &rc.p);
    let qs = rc.apply(&rc2, &strict_as(rc.kind, &rc.input, &rc.q_phi, &s.s, k));
    Ok((0..k.n_obj()).all(|d| s.s[d].then(&qp[d]) == s.s[d].then(&qs[d])))
}

/// Verdict of the w-riggedness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RiggedVerdict {
    Rigged {
        structure: CoalgebraStructure,
    },
    /// No coalgebra structure satisfies the F-coalgebra condition;
    /// `structures` is the number of coalgebra structures on `Φ_λ`.
    NotCoalgebra {
        structures: usize,
    },
    NotSurjective {
        object: usize,
        element: usize,
    },
    BudgetExceeded(String),
}

impl RiggedVerdict {
    pub fn is_rigged(&self) -> bool {
        matches!(self, RiggedVerdict::Rigged { .. })
    }
}

fn budget_or<T>(r: Result<T, KanError>) -> Result<Result<T, String>, KanError> {
    match r {
        Ok(t) => Ok(Ok(t)),
        Err(KanError::BudgetExceeded(s)) => Ok(Err(s)),
        Err(e) => Err(e),
    }
}

/// Whether `w` is `k`-rigged: an F-coalgebra for the classifier of kind
/// `k̄` whose `φ̄` is pointwise surjective on objects.
pub fn is_rigged(w: &FWeight, k: WKind, budget: &CompletionBudget) -> Result<RiggedVerdict, KanError> {
    let probes = default_probes(&w.shape.base, &w.phi_lambda);
    let rc = match budget_or(build_relative_classifier(&w.shape, &w.phi_lambda, k.bar(), budget, &probes))? {
        Ok(rc) => rc,
        Err(s) => return Ok(RiggedVerdict::BudgetExceeded(s)),
    };
    let structures = match budget_or(find_coalgebras(&rc))? {
        Ok(s) => s,
        Err(s) => return Ok(RiggedVerdict::BudgetExceeded(s)),
    };
    let mut good = None;
    for s in &structures {
        if f_coalgebra_check(w, &rc, s)?.holds() {
            good = Some(s.clone());
            break;
        }
    }
    let Some(structure) = good else {
        return Ok(RiggedVerdict::NotCoalgebra { structures: structures.len() });
    };
    let bar = crate::kan_classifiers::phi_bar_objects(w);
    if let Some((object, element)) = bar.missed {
        return Ok(RiggedVerdict::NotSurjective { object, element });
    }
    Ok(RiggedVerdict::Rigged { structure })
}

/// The default budget for a weight.
pub fn default_budget(w: &FWeight) -> CompletionBudget {
    CompletionBudget::for_size(input_size(&w.shape, &w.phi_lambda))
}

/// The identifier of `τ` for the structure `s` of the classifier `rc`:
/// `Φ_τ(d)` is the full subcategory on the objects where `τ` is an
/// identity. Also computed as the equalizer of `sJ` and `p`; the two must
/// agree.
pub fn canonical_rigging(rc: &RelativeClassifier, s: &CoalgebraStructure) -> Result<FWeight, KanError> {
    let k = &rc.shape.base;
    let tau = compute_tau(rc, s)?;
    let mut objs = Vec::with_capacity(k.n_obj());
    for d in 0..k.n_obj() {
        let c = &rc.input.values[d];
        let by_tau: Vec<usize> = (0..c.n_obj()).filter(|&x| tau.is_identity_at(rc, d, x)).collect();
        let eq_obj: Vec<usize> = (0..c.n_obj()).filter(|&x| s.s[d].on_obj[x] == rc.p.comps[d].on_obj[x]).collect();
        let eq_full = (0..c.n_mor()).all(|m| {
            let inside = eq_obj.contains(&c.src(m)) && eq_obj.contains(&c.tgt(m));
            !inside || s.s[d].on_mor[m] == rc.p.comps[d].on_mor[m]
        });
        if by_tau != eq_obj || !eq_full {
            return Err(KanError::AdjunctionDataMissing(format!(
                "identifier of τ and equalizer of sJ, p differ at `{}`",
                k.objects[d]
            )));
        }
        objs.push(by_tau);
    }
    FWeight::from_tight_objects(rc.shape.clone(), rc.input.clone(), objs).map_err(|e| match e {
        WeightError::Two(t) => KanError::Two(t),
        e => KanError::Invalid(e.to_string()),
    })
}

/// Whether `other`'s tight objects embed in those of `canonical`.
pub fn rigging_below(other: &FWeight, canonical: &FWeight) -> bool {
    other.tight_objects().iter().zip(canonical.tight_objects()).all(|(a, b)| a.iter().all(|x| b.contains(x)))
}

/// Every F-weight on `shape` with loose part `phi`, one per choice of
/// object sets closed under the tight 1-cells.
pub fn candidate_riggings(shape: &FCat, phi: &CatWeight) -> Vec<FWeight> {
    let sizes: Vec<usize> = phi.values.iter().map(|c| c.n_obj()).collect();
    let total: usize = sizes.iter().sum();
    assert!(total <= 20, "too many candidate riggings");
    let mut out = Vec::new();
    for mask in 0u32..(1 << total) {
        let mut bit = 0;
        let objs = sizes
            .iter()
            .map(|&n| {
                let v = (0..n).filter(|i| mask & (1 << (bit + i)) != 0).collect();
                bit += n;
                v
            })
            .collect();
        if let Ok(w) = FWeight::from_tight_objects(shape.clone(), phi.clone(), objs) {
            out.push(w);
        }
    }
    out
}

/// The two sides of the surjectivity lemma for a strict `f: Φ → Ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoChar {
    pub surjective: bool,
    pub reflects_identities: bool,
    /// A pair `(d0, y0)` whose modification `β` has `βf` an identity.
    pub witness: Option<(usize, usize)>,
}

/// `Ran_{d0} C` for the chaotic category `C` on two objects.
struct Cofree {
    values: Vec<FunctorCategory>,
    weight: CatWeight,
}

fn pre_compose(k: &TwoCat, u: usize, d0: usize) -> Fun {
    let src = k.hom(k.tgt1(u), d0);
    Fun {
        on_obj: src.cells1.iter().map(|&h| k.local1(k.comp1(u, h))).collect(),
        on_mor: src.cells2.iter().map(|&t| k.local2(k.whisker_before(u, t))).collect(),
    }
}

fn mor_index(fc: &FunctorCategory, src: usize, t: &NatTrans) -> usize {
    (0..fc.transformations.len())
        .find(|&i| fc.cat.src(i) == src && &fc.transformations[i] == t)
        .expect("transformation in functor category")
}

fn cofree(k: &TwoCat, d0: usize, c: &FinCat) -> Cofree {
    let values: Vec<FunctorCategory> = (0..k.n_obj()).map(|d| functor_category(&k.hom(d, d0).cat, c)).collect();
    let on1 = (0..k.cells1.len())
        .map(|u| {
            let (d, d2) = (k.src1(u), k.tgt1(u));
            let pre = pre_compose(k, u, d0);
            let (a, b) = (&values[d], &values[d2]);
            let on_obj: Vec<usize> =
                a.functors.iter().map(|f| b.functor_index(&pre.then(f)).expect("functor")).collect();
            let on_mor = (0..a.transformations.len())
                .map(|m| {
                    let t = NatTrans { comp: pre.on_obj.iter().map(|&h| a.transformations[m].comp[h]).collect() };
                    mor_index(b, on_obj[a.cat.src(m)], &t)
                })
                .collect();
            Fun { on_obj, on_mor }
        })
        .collect::<Vec<Fun>>();
    let on2 = (0..k.cells2.len())
        .map(|al| {
            let cell = &k.cells2[al];
            let (d, d2) = (k.src1(cell.src), k.tgt1(cell.src));
            let (a, b) = (&values[d], &values[d2]);
            let src2 = k.hom(d2, d0);
            let comp = (0..a.functors.len())
                .map(|fi| {
                    let f = &a.functors[fi];
                    let t = NatTrans {
                        comp: src2.cells1.iter().map(|&h| f.on_mor[k.local2(k.whisker_after(al, h))]).collect(),
                    };
                    mor_index(b, on1[cell.src].on_obj[fi], &t)
                })
                .collect();
            NatTrans { comp }
        })
        .collect();
    let weight = CatWeight { values: values.iter().map(|v| v.cat.clone()).collect(), on1, on2 };
    Cofree { values, weight }
}

/// The strict map `Ψ → Ran_{d0} C` determined by `kf: ob Ψ(d0) → ob C`.
fn cofree_map(
    k: &TwoCat,
    psi: &CatWeight,
    d0: usize,
    cf: &Cofree,
    c: &FinCat,
    kf: &dyn Fn(usize) -> usize,
) -> Vec<Fun> {
    (0..k.n_obj())
        .map(|d| {
            let h = k.hom(d, d0);
            let p = &psi.values[d];
            let fc = &cf.values[d];
            let functor_at = |y: usize| -> usize {
                let on_obj: Vec<usize> = h.cells1.iter().map(|&u| kf(psi.on1[u].on_obj[y])).collect();
                let on_mor = (0..h.cat.n_mor()).map(|t| c.hom(on_obj[h.cat.src(t)], on_obj[h.cat.tgt(t)])[0]).collect();
                fc.functor_index(&Fun { on_obj, on_mor }).expect("functor")
            };
            let on_obj: Vec<usize> = (0..p.n_obj()).map(functor_at).collect();
            let on_mor = (0..p.n_mor())
                .map(|m| {
                    let (a, b) = (on_obj[p.src(m)], on_obj[p.tgt(m)]);
                    let (fa, fb) = (&fc.functors[a], &fc.functors[b]);
                    let t =
                        NatTrans { comp: (0..h.cat.n_obj()).map(|x| c.hom(fa.on_obj[x], fb.on_obj[x])[0]).collect() };
                    mor_index(fc, a, &t)
                })
                .collect();
            Fun { on_obj, on_mor }
        })
        .collect()
}

/// Decides pointwise surjectivity of `f: Φ → Ψ` directly, and the
/// reflection of identities through the co-free counterexamples on the
/// chaotic two-object category.
pub fn so_char_equivalence(k: &TwoCat, phi: &CatWeight, psi: &CatWeight, f: &[Fun]) -> Result<SoChar, KanError> {
    strict_as(WKind::Strict, phi, psi, f, k).validate(phi, psi, k)?;
    let surjective = (0..k.n_obj()).all(|d| (0..psi.values[d].n_obj()).all(|y| f[d].on_obj.contains(&y)));
    let c = FinCat::chaotic(&["0".to_string(), "1".to_string()]);
    let mut witness = None;
    'outer: for d0 in 0..k.n_obj() {
        let cf = cofree(k, d0, &c);
        debug_assert!(cf.weight.validate(k).is_ok());
        for y0 in 0..psi.values[d0].n_obj() {
            let g = cofree_map(k, psi, d0, &cf, &c, &|_| 0);
            let h = cofree_map(k, psi, d0, &cf, &c, &|y| usize::from(y == y0));
            debug_assert!(strict_as(WKind::Strict, psi, &cf.weight, &g, k).validate(psi, &cf.weight, k).is_ok());
            // β_{d,y}: g_d(y) → h_d(y) is the unique map in the chaotic category
            let beta_is_id = |d: usize, y: usize| g[d].on_obj[y] == h[d].on_obj[y];
            let beta_f_identity = (0..k.n_obj()).all(|d| f[d].on_obj.iter().all(|&y| beta_is_id(d, y)));
            if beta_f_identity {
                witness = Some((d0, y0));
                break 'outer;
            }
        }
    }
    Ok(SoChar { surjective, reflects_identities: witness.is_none(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{
        constant_one_weight, shape_not_rigged, shape_two_qcoalg, weight_idempotent_splitting, weight_inserter,
        weight_pie_fixture, weight_representable, PIE_FIXTURES,
    };

    #[test]
    fn pie_fixtures() {
        for name in PIE_FIXTURES {
            let w = weight_pie_fixture(name).unwrap();
            assert!(is_pie(&w.phi, &w.shape).pie, "{name}");
        }
        let w = weight_idempotent_splitting();
        assert!(!is_pie(&w.phi, &w.shape).pie);
    }

    #[test]
    fn pie_oracle_agrees_on_fixtures() {
        let b = CompletionBudget::default();
        let w = weight_idempotent_splitting();
        assert!(!pie_qcoalgebra_oracle(&w.phi, &w.shape, &b).unwrap());
        for name in ["product", "inserter", "representable_arrow_0"] {
            let w = weight_pie_fixture(name).unwrap();
            assert!(pie_qcoalgebra_oracle(&w.phi, &w.shape, &b).unwrap(), "{name}");
        }
    }

    #[test]
    fn two_qcoalg_canonical_riggings() {
        let shape = shape_two_qcoalg();
        let phi = CatWeight::constant(&shape.base, &FinCat::terminal());
        let rc = classifier(&shape, &phi, WKind::Pseudo).unwrap();
        let co = find_coalgebras(&rc).unwrap();
        let mut found: Vec<Vec<Vec<usize>>> =
            co.iter().map(|s| canonical_rigging(&rc, s).unwrap().tight_objects()).collect();
        found.sort();
        assert_eq!(found, vec![vec![vec![], vec![0]], vec![vec![0], vec![]]]);
        for s in &co {
            let w = canonical_rigging(&rc, s).unwrap();
            for k in [WKind::Pseudo, WKind::Lax, WKind::Oplax] {
                assert!(is_rigged(&w, k, &default_budget(&w)).unwrap().is_rigged(), "{k:?}");
            }
        }
    }

    #[test]
    fn not_rigged_candidates() {
        let shape = shape_not_rigged();
        let phi = CatWeight::constant(&shape.base, &FinCat::terminal());
        let cands = candidate_riggings(&shape, &phi);
        assert_eq!(cands.len(), 3);
        for w in &cands {
            let v = is_rigged(w, WKind::Pseudo, &default_budget(w)).unwrap();
            if w.tight_objects().iter().all(|o| o.is_empty()) {
                assert!(matches!(v, RiggedVerdict::NotSurjective { .. }), "{v:?}");
            } else {
                assert!(matches!(v, RiggedVerdict::NotCoalgebra { .. }), "{v:?}");
            }
        }
        let w = constant_one_weight(shape, &[false, false]).unwrap();
        assert!(!is_tightly_rigged(&w).unwrap().bijective);
    }

    #[test]
    fn tightly_rigged_representable() {
        let shape = shape_two_qcoalg();
        for x in 0..2 {
            let w = weight_representable(&shape, x).unwrap();
            let v = is_tightly_rigged(&w).unwrap();
            assert_eq!(v, TightVerdict { bijective: true, p_rigged_certified: Some(true) });
        }
        let w = weight_inserter(WKind::Lax).unwrap();
        assert!(is_rigged(&w, WKind::Lax, &default_budget(&w)).unwrap().is_rigged());
    }

    #[test]
    fn so_char_simple() {
        let k = TwoCat::locally_discrete(&FinCat::arrow());
        let psi = CatWeight::constant(&k, &FinCat::arrow());
        let id: Vec<Fun> = psi.values.iter().map(Fun::identity).collect();
        let r = so_char_equivalence(&k, &psi, &psi, &id).unwrap();
        assert!(r.surjective && r.reflects_identities);
        let phi = CatWeight::constant(&k, &FinCat::terminal());
        let inc: Vec<Fun> = (0..2).map(|_| crate::weights::pick(&FinCat::arrow(), 1)).collect();
        let r = so_char_equivalence(&k, &phi, &psi, &inc).unwrap();
        assert!(!r.surjective && !r.reflects_identities);
        assert!(r.witness.is_some());
    }
}
