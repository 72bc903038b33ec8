//! `T-Alg_w` against brute-force enumeration in `Cat`, and invariants of
//! created limits.

use fcat_core::cat_core::{enumerate_functors, enumerate_nat_trans, FinCat, Fun, NatTrans};
use fcat_core::f_core::FFun;
use fcat_core::monad_alg::{
    build_t_alg_w, fixture_monads, forget_cone, lift_check, sample_diagrams, FiniteMonad, LiftVerdict,
};
use fcat_core::two_cat::{check_limit_in_two_cat, StrictCone, WKind};
use fcat_core::weights::{check_f_limit, find_f_limit, zoo, FLimitVerdict};

const KINDS: [WKind; 3] = [WKind::Pseudo, WKind::Lax, WKind::Oplax];

/// A writer algebra in `Cat`: a category with an idempotent endofunctor.
struct Alg<'a> {
    cat: &'a FinCat,
    e: Fun,
}

/// A weak morphism `(f, θ)` with `θ: E_B f ⇒ f E_A` (or reversed when oplax).
struct Mor {
    src: usize,
    tgt: usize,
    f: Fun,
    theta: NatTrans,
}

fn writer_algebras(cats: &[FinCat]) -> Vec<Alg<'_>> {
    let mut out = Vec::new();
    for c in cats {
        for e in enumerate_functors(c, c) {
            if e.then(&e) == e {
                out.push(Alg { cat: c, e });
            }
        }
    }
    out
}

fn writer_morphisms(algs: &[Alg], kind: WKind) -> Vec<Mor> {
    let mut out = Vec::new();
    for (i, a) in algs.iter().enumerate() {
        for (j, b) in algs.iter().enumerate() {
            let bc = b.cat;
            for f in enumerate_functors(a.cat, bc) {
                let (eb_f, f_ea) = (f.then(&b.e), a.e.then(&f));
                let (s, t) = if kind == WKind::Oplax { (&f_ea, &eb_f) } else { (&eb_f, &f_ea) };
                for theta in enumerate_nat_trans(s, t, a.cat, bc) {
                    let ok = (0..a.cat.n_obj()).all(|x| {
                        let (th, e_th, th_e) = (theta.comp[x], b.e.on_mor[theta.comp[x]], theta.comp[a.e.on_obj[x]]);
                        let lhs = if kind == WKind::Oplax { bc.seq(th_e, e_th) } else { bc.seq(e_th, th_e) };
                        lhs == th && (kind != WKind::Pseudo || bc.is_iso(th))
                    });
                    if ok {
                        out.push(Mor { src: i, tgt: j, f: f.clone(), theta });
                    }
                }
            }
        }
    }
    out
}

fn writer_cells(algs: &[Alg], mors: &[Mor], kind: WKind) -> usize {
    let mut n = 0;
    for m in mors {
        for g in mors.iter().filter(|g| (g.src, g.tgt) == (m.src, m.tgt)) {
            let (a, b) = (&algs[m.src], &algs[m.tgt]);
            let bc = b.cat;
            for rho in enumerate_nat_trans(&m.f, &g.f, a.cat, bc) {
                let ok = (0..a.cat.n_obj()).all(|x| {
                    let (fb, gb) = (m.theta.comp[x], g.theta.comp[x]);
                    let (e_rho, rho_e) = (b.e.on_mor[rho.comp[x]], rho.comp[a.e.on_obj[x]]);
                    if kind == WKind::Oplax {
                        bc.seq(rho_e, gb) == bc.seq(fb, e_rho)
                    } else {
                        bc.seq(e_rho, gb) == bc.seq(fb, rho_e)
                    }
                });
                n += ok as usize;
            }
        }
    }
    n
}

#[test]
fn writer_algebra_counts_match_brute_force() {
    let cats = [FinCat::terminal(), FinCat::arrow(), FinCat::free_iso()];
    let (_, writer) = fixture_monads().into_iter().find(|(n, _)| n == "writer").expect("writer monad");
    let algs = writer_algebras(&cats);
    for kind in KINDS {
        let alg = build_t_alg_w(&writer, kind).unwrap();
        let mors = writer_morphisms(&algs, kind);
        let strict = mors.iter().filter(|m| m.theta.comp.iter().all(|&c| algs[m.tgt].cat.is_identity(c))).count();
        let brute = [algs.len(), mors.len(), writer_cells(&algs, &mors, kind)];
        let built = [alg.algebras.len(), alg.morphisms.len(), alg.cells.len()];
        assert_eq!(built, brute, "{kind:?}");
        assert_eq!(alg.fcat.tight.iter().filter(|&&t| t).count(), strict, "{kind:?} tight");
    }
}

#[test]
fn writer_lax_sizes_are_pinned() {
    let (_, writer) = fixture_monads().into_iter().find(|(n, _)| n == "writer").expect("writer monad");
    let alg = build_t_alg_w(&writer, WKind::Lax).unwrap();
    assert_eq!([alg.algebras.len(), alg.morphisms.len(), alg.cells.len()], [7, 126, 373]);
}

/// For the identity and closure monads the forgetful functor is fully
/// faithful, and bijective on objects for the identity.
#[test]
fn idempotent_monads_forget_fully_faithfully() {
    for (name, m) in fixture_monads() {
        let FiniteMonad::Endo(_) = &m else { continue };
        let k = &m.base().base;
        for kind in KINDS {
            let alg = build_t_alg_w(&m, kind).unwrap();
            let t = &alg.fcat.base;
            let carriers: Vec<usize> = alg.algebras.iter().map(|a| a.carrier).collect();
            let mut sorted = carriers.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), carriers.len(), "{name} {kind:?}: two algebras on one carrier");
            if name == "identity" {
                assert_eq!(carriers.len(), k.n_obj());
            }
            for i in 0..t.n_obj() {
                for j in 0..t.n_obj() {
                    let (h, bh) = (t.hom(i, j), k.hom(carriers[i], carriers[j]));
                    let mut on1: Vec<usize> = h.cells1.iter().map(|&c| alg.forget.fun.on1[c]).collect();
                    on1.sort();
                    let mut base1 = bh.cells1.to_vec();
                    base1.sort();
                    assert_eq!(on1, base1, "{name} {kind:?} ({i}, {j}) 1-cells");
                    let mut on2: Vec<usize> = h.cells2.iter().map(|&c| alg.forget.fun.on2[c]).collect();
                    on2.sort();
                    let mut base2 = bh.cells2.to_vec();
                    base2.sort();
                    assert_eq!(on2, base2, "{name} {kind:?} ({i}, {j}) 2-cells");
                }
            }
        }
    }
}

#[test]
fn created_cones_have_strict_tight_projections() {
    let mut created = 0;
    for (name, m) in fixture_monads() {
        let base = m.base();
        for kind in [WKind::Lax, WKind::Oplax] {
            let alg = build_t_alg_w(&m, kind).unwrap();
            let t = &alg.fcat.base;
            for (wname, w) in zoo(kind).into_iter().take(3) {
                for g in sample_diagrams(&w.shape, &alg.fcat, 4, 11) {
                    let LiftVerdict::Created { cone } = lift_check(&m, &alg, &w, &g).unwrap() else { continue };
                    created += 1;
                    let tag = format!("{name} {kind:?} {wname}");
                    for (d, leg) in cone.legs.iter().enumerate() {
                        let h = t.hom(cone.apex, g.fun.on0[d]);
                        for &x in &w.phi[d].on_obj {
                            let cell = h.cells1[leg.on_obj[x]];
                            assert!(alg.fcat.tight[cell], "{tag}: projection not tight");
                            assert!(base.base.is_identity2(alg.morphisms[cell].fbar), "{tag}: projection not strict");
                        }
                    }
                    assert_eq!(check_f_limit(&w, &g, &alg.fcat, &cone).unwrap(), FLimitVerdict::IsFLimit, "{tag}");

                    let ug = FFun { fun: g.fun.then(&alg.forget.fun) };
                    let below = forget_cone(&alg, base, &g, &cone);
                    assert_eq!(below, find_f_limit(&w, &ug, base).unwrap(), "{tag}: not over the base limit");
                    let strict = StrictCone { apex: below.apex, legs: below.legs.clone() };
                    let lc =
                        check_limit_in_two_cat(&base.base, &w.shape.base, &w.phi_lambda, &ug.fun, &strict).unwrap();
                    assert!(lc.ok, "{tag}: base cone is not a loose limit");
                    assert_eq!(check_f_limit(&w, &ug, base, &below).unwrap(), FLimitVerdict::IsFLimit, "{tag}");
                }
            }
        }
    }
    assert!(created > 0, "no created limits sampled");
}
