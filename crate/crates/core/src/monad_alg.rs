//! Strict algebras for finite monads on F-categories, their weak
//! morphisms, the F-category `T-Alg_w` with its forgetful F-functor, and a
//! verifier for the lifting of F-weighted limits along it.
//!
//! Two monad models are supported. An [`FMonad`] is an endo-F-functor with
//! tight strict unit and multiplication. A [`WriterMonad`] is the action of
//! the monoid `{1, e}` with `e² = e`, whose algebras are idempotent
//! endo-1-cells `E`; its structure 2-cells live in `K(A, B)`.
//!
//! Lax structure cells: `f̄: Tf;b ⇒ a;f` (writer: `f;E_B ⇒ E_A;f`); oplax
//! reverses them.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cat_core::{enumerate_functors_with, FinCat, Fun};
use crate::f_core::{FCat, FError, FFun};
use crate::riggedness::{default_budget, is_rigged};
use crate::two_cat::{em_object, Cell2, EmObject, Monad2, TwoCat, TwoCatError, TwoCatParts, TwoFun, WKind};
use crate::weights::{find_f_limit, FCone, FLimitContext, FLimitVerdict, FWeight, WeightError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonadError {
    #[error(transparent)]
    F(#[from] FError),
    #[error(transparent)]
    Two(#[from] TwoCatError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("invalid monad: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, MonadError>;

/// A monad in F-Cat on a finite F-category.
#[derive(Debug, Clone)]
pub struct FMonad {
    pub base: FCat,
    pub t: FFun,
    /// `η_A: A → TA`, tight.
    pub eta: Vec<usize>,
    /// `μ_A: TTA → TA`, tight.
    pub mu: Vec<usize>,
}

impl FMonad {
    pub fn new(base: FCat, t: FFun, eta: Vec<usize>, mu: Vec<usize>) -> Result<FMonad> {
        let m = FMonad { base, t, eta, mu };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(base: FCat) -> FMonad {
        let k = &base.base;
        let t = FFun {
            fun: TwoFun {
                on0: (0..k.n_obj()).collect(),
                on1: (0..k.cells1.len()).collect(),
                on2: (0..k.cells2.len()).collect(),
            },
        };
        let ids: Vec<usize> = (0..k.n_obj()).map(|o| k.id1(o)).collect();
        FMonad { t, eta: ids.clone(), mu: ids, base }
    }

    pub fn validate(&self) -> Result<()> {
        let k = &self.base.base;
        let t = &self.t.fun;
        let bad = |s: String| Err(MonadError::Invalid(s));
        self.t.validate(&self.base, &self.base)?;
        if self.eta.len() != k.n_obj() || self.mu.len() != k.n_obj() {
            return bad("unit or multiplication arity".into());
        }
        for a in 0..k.n_obj() {
            let (ta, tta) = (t.on0[a], t.on0[t.on0[a]]);
            let (e, m) = (self.eta[a], self.mu[a]);
            if k.src1(e) != a || k.tgt1(e) != ta || k.src1(m) != tta || k.tgt1(m) != ta {
                return bad(format!("unit or multiplication boundary at `{}`", k.objects[a]));
            }
            if !self.base.tight[e] || !self.base.tight[m] {
                return bad(format!("unit or multiplication at `{}` not tight", k.objects[a]));
            }
            let id = k.id1(ta);
            if k.comp1(self.eta[ta], m) != id || k.comp1(t.on1[e], m) != id {
                return bad(format!("unit law at `{}`", k.objects[a]));
            }
            if k.comp1(self.mu[ta], m) != k.comp1(t.on1[m], m) {
                return bad(format!("associativity at `{}`", k.objects[a]));
            }
        }
        for f in 0..k.cells1.len() {
            let (a, b) = (k.src1(f), k.tgt1(f));
            let tf = t.on1[f];
            if k.comp1(f, self.eta[b]) != k.comp1(self.eta[a], tf) {
                return bad(format!("unit naturality at `{}`", k.cells1[f].name));
            }
            if k.comp1(t.on1[tf], self.mu[b]) != k.comp1(self.mu[a], tf) {
                return bad(format!("multiplication naturality at `{}`", k.cells1[f].name));
            }
        }
        for r in 0..k.cells2.len() {
            let f = k.cells2[r].src;
            let (a, b) = (k.src1(f), k.tgt1(f));
            let tr = t.on2[r];
            if k.whisker_after(r, self.eta[b]) != k.whisker_before(self.eta[a], tr)
                || k.whisker_after(t.on2[tr], self.mu[b]) != k.whisker_before(self.mu[a], tr)
            {
                return bad(format!("2-naturality at `{}`", k.cells2[r].name));
            }
        }
        Ok(())
    }
}

/// The writer monad for the idempotent monoid `{1, e}`.
#[derive(Debug, Clone)]
pub struct WriterMonad {
    pub base: FCat,
}

/// A finite monad model.
#[derive(Debug, Clone)]
pub enum FiniteMonad {
    Endo(FMonad),
    Writer(WriterMonad),
}

/// A strict algebra: carrier and tight action (`TA → A`, or the
/// idempotent `E: A → A` for the writer monad).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TAlgebra {
    pub carrier: usize,
    pub action: usize,
}

/// A weak T-morphism between algebras (by index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WTMorphism {
    pub src: usize,
    pub tgt: usize,
    pub f: usize,
    pub fbar: usize,
}

impl FiniteMonad {
    pub fn base(&self) -> &FCat {
        match self {
            FiniteMonad::Endo(m) => &m.base,
            FiniteMonad::Writer(m) => &m.base,
        }
    }

    fn k(&self) -> &TwoCat {
        &self.base().base
    }

    fn t1(&self, f: usize) -> usize {
        match self {
            FiniteMonad::Endo(m) => m.t.fun.on1[f],
            FiniteMonad::Writer(_) => f,
        }
    }

    fn t2(&self, r: usize) -> usize {
        match self {
            FiniteMonad::Endo(m) => m.t.fun.on2[r],
            FiniteMonad::Writer(_) => r,
        }
    }

    /// The object `f̄` starts from: `TA`, or `A` for the writer.
    fn t0(&self, a: usize) -> usize {
        match self {
            FiniteMonad::Endo(m) => m.t.fun.on0[a],
            FiniteMonad::Writer(_) => a,
        }
    }

    /// Every strict algebra, ordered by carrier then action.
    pub fn algebras(&self) -> Vec<TAlgebra> {
        let fc = self.base();
        let k = &fc.base;
        let mut out = Vec::new();
        for carrier in 0..k.n_obj() {
            for &action in &k.hom(self.t0(carrier), carrier).cells1 {
                if !fc.tight[action] {
                    continue;
                }
                let ok = match self {
                    FiniteMonad::Endo(m) => {
                        k.comp1(m.eta[carrier], action) == k.id1(carrier)
                            && k.comp1(m.mu[carrier], action) == k.comp1(m.t.fun.on1[action], action)
                    }
                    FiniteMonad::Writer(_) => k.comp1(action, action) == action,
                };
                if ok {
                    out.push(TAlgebra { carrier, action });
                }
            }
        }
        out
    }

    /// Source and target 1-cells of a structure cell for `f: A → B`.
    fn fbar_ends(&self, kind: WKind, a: &TAlgebra, b: &TAlgebra, f: usize) -> (usize, usize) {
        let k = self.k();
        let lax = (k.comp1(self.t1(f), b.action), k.comp1(a.action, f));
        match kind {
            WKind::Oplax => (lax.1, lax.0),
            _ => lax,
        }
    }

    fn mu_whisker(&self, a: &TAlgebra, fbar: usize) -> usize {
        match self {
            FiniteMonad::Endo(m) => self.k().whisker_before(m.mu[a.carrier], fbar),
            FiniteMonad::Writer(_) => fbar,
        }
    }

    /// Whether `(f, fbar)` is a `kind`-T-morphism `a → b`.
    pub fn is_morphism(&self, kind: WKind, a: &TAlgebra, b: &TAlgebra, f: usize, fbar: usize) -> bool {
        let k = self.k();
        let (s, t) = self.fbar_ends(kind, a, b, f);
        if k.cells2[fbar].src != s || k.cells2[fbar].tgt != t {
            return false;
        }
        match kind {
            WKind::Strict if !k.is_identity2(fbar) => return false,
            WKind::Pseudo if !k.hom(k.src1(s), k.tgt1(s)).cat.is_iso(k.local2(fbar)) => return false,
            _ => {}
        }
        if let FiniteMonad::Endo(m) = self {
            if k.whisker_before(m.eta[a.carrier], fbar) != k.id2(f) {
                return false;
            }
        }
        let tfb = k.whisker_after(self.t2(fbar), b.action);
        let ta_fb = k.whisker_before(self.t1(a.action), fbar);
        let lhs = match kind {
            WKind::Oplax => k.vcomp(ta_fb, tfb),
            _ => k.vcomp(tfb, ta_fb),
        };
        lhs == self.mu_whisker(a, fbar)
    }

    /// The structure cell of the composite `(f, fbar) ; (g, gbar)`.
    pub fn compose_bar(&self, kind: WKind, f: usize, fbar: usize, g: usize, gbar: usize) -> usize {
        let k = self.k();
        let first = k.whisker_before(self.t1(f), gbar);
        let second = k.whisker_after(fbar, g);
        match kind {
            WKind::Oplax => k.vcomp(second, first),
            _ => k.vcomp(first, second),
        }
    }

    /// Whether `rho: f ⇒ g` is a T-transformation between the given morphisms.
    pub fn is_cell(&self, kind: WKind, a: &TAlgebra, b: &TAlgebra, fbar: usize, gbar: usize, rho: usize) -> bool {
        let k = self.k();
        let t_rho = k.whisker_after(self.t2(rho), b.action);
        let a_rho = k.whisker_before(a.action, rho);
        match kind {
            WKind::Oplax => k.vcomp(a_rho, gbar) == k.vcomp(fbar, t_rho),
            _ => k.vcomp(t_rho, gbar) == k.vcomp(fbar, a_rho),
        }
    }
}

/// `T-Alg_w` with its forgetful F-functor.
#[derive(Debug, Clone)]
pub struct TAlgW {
    pub kind: WKind,
    pub fcat: FCat,
    pub forget: FFun,
    pub algebras: Vec<TAlgebra>,
    pub morphisms: Vec<WTMorphism>,
    /// The base 2-cell underlying each 2-cell.
    pub cells: Vec<usize>,
}

impl TAlgW {
    /// Algebras on the given carrier.
    pub fn over(&self, carrier: usize) -> Vec<usize> {
        (0..self.algebras.len()).filter(|&i| self.algebras[i].carrier == carrier).collect()
    }
}

pub fn build_t_alg_w(m: &FiniteMonad, kind: WKind) -> Result<TAlgW> {
    let base = m.base();
    let k = &base.base;
    let algebras = m.algebras();
    let n = algebras.len();
    let mut morphisms = Vec::new();
    let mut m_index: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    let mut id1 = vec![usize::MAX; n];
    for (i, a) in algebras.iter().enumerate() {
        for (j, b) in algebras.iter().enumerate() {
            let from = m.t0(a.carrier);
            for &f in &k.hom(a.carrier, b.carrier).cells1 {
                let (s, t) = m.fbar_ends(kind, a, b, f);
                for &fbar in &k.hom(from, b.carrier).cells2 {
                    if k.cells2[fbar].src != s || k.cells2[fbar].tgt != t || !m.is_morphism(kind, a, b, f, fbar) {
                        continue;
                    }
                    if i == j && f == k.id1(a.carrier) && k.is_identity2(fbar) {
                        id1[i] = morphisms.len();
                    }
                    m_index.insert((i, j, f, fbar), morphisms.len());
                    morphisms.push(WTMorphism { src: i, tgt: j, f, fbar });
                }
            }
        }
    }
    if let Some(i) = id1.iter().position(|&x| x == usize::MAX) {
        return Err(MonadError::Invalid(format!("identity of algebra {i} is not a T-morphism")));
    }
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (x, mm) in morphisms.iter().enumerate() {
        by_pair.entry((mm.src, mm.tgt)).or_default().push(x);
    }
    let mut cells = Vec::new();
    let mut cells2 = Vec::new();
    let mut c_index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut id2 = vec![usize::MAX; morphisms.len()];
    let mut pairs: Vec<_> = by_pair.iter().collect();
    pairs.sort();
    for (&(i, j), xs) in pairs {
        let (a, b) = (&algebras[i], &algebras[j]);
        for &x in xs {
            for &y in xs {
                let (mx, my) = (morphisms[x], morphisms[y]);
                for &rho in &k.hom(a.carrier, b.carrier).cells2 {
                    if k.cells2[rho].src != mx.f || k.cells2[rho].tgt != my.f {
                        continue;
                    }
                    if !m.is_cell(kind, a, b, mx.fbar, my.fbar, rho) {
                        continue;
                    }
                    if x == y && k.is_identity2(rho) {
                        id2[x] = cells2.len();
                    }
                    c_index.insert((x, y, rho), cells2.len());
                    cells2.push(Cell2 { name: format!("r{}", cells2.len()), src: x, tgt: y });
                    cells.push(rho);
                }
            }
        }
    }
    let cells1: Vec<crate::cat_core::Morphism> = morphisms
        .iter()
        .enumerate()
        .map(|(x, mm)| crate::cat_core::Morphism { name: format!("m{x}"), src: mm.src, tgt: mm.tgt })
        .collect();
    let objects = algebras.iter().map(|a| format!("{}/{}", k.objects[a.carrier], k.cells1[a.action].name)).collect();
    let mo = morphisms.clone();
    let c2 = cells2.clone();
    let cl = cells.clone();
    let talg = TwoCat::from_parts(TwoCatParts {
        objects,
        cells1,
        id1,
        cells2,
        id2,
        comp1: |x, y| {
            let (a, b) = (mo[x], mo[y]);
            let g = k.comp1(a.f, b.f);
            let gb = m.compose_bar(kind, a.f, a.fbar, b.f, b.fbar);
            m_index.get(&(a.src, b.tgt, g, gb)).copied()
        },
        vcomp: |x, y| c_index.get(&(c2[x].src, c2[y].tgt, k.vcomp(cl[x], cl[y]))).copied(),
        hcomp: |x, y| {
            let s = *m_index_comp(&mo, &m_index, k, m, kind, c2[x].src, c2[y].src)?;
            let t = *m_index_comp(&mo, &m_index, k, m, kind, c2[x].tgt, c2[y].tgt)?;
            c_index.get(&(s, t, k.hcomp(cl[x], cl[y]))).copied()
        },
    })?;
    let tight = morphisms.iter().map(|mm| k.is_identity2(mm.fbar) && base.tight[mm.f]).collect();
    let fcat = FCat::new(talg, tight)?;
    let forget = FFun {
        fun: TwoFun {
            on0: algebras.iter().map(|a| a.carrier).collect(),
            on1: morphisms.iter().map(|mm| mm.f).collect(),
            on2: cells.clone(),
        },
    };
    forget.validate(&fcat, base)?;
    Ok(TAlgW { kind, fcat, forget, algebras, morphisms, cells })
}

fn m_index_comp<'a>(
    mo: &[WTMorphism],
    idx: &'a HashMap<(usize, usize, usize, usize), usize>,
    k: &TwoCat,
    m: &FiniteMonad,
    kind: WKind,
    x: usize,
    y: usize,
) -> Option<&'a usize> {
    let (a, b) = (mo[x], mo[y]);
    idx.get(&(a.src, b.tgt, k.comp1(a.f, b.f), m.compose_bar(kind, a.f, a.fbar, b.f, b.fbar)))
}

/// Why a lift failed to be a limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftFailure {
    /// No algebra on the base apex carries a cone over the base cone with
    /// strict tight projections.
    NoLiftedCone,
    NotFLimit(FLimitVerdict),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftVerdict {
    /// The unique lift; `cone.apex` is the algebra `ℓ`.
    Created {
        cone: FCone,
    },
    NoBaseLimit,
    StructureNotUnique {
        witnesses: Vec<FCone>,
    },
    UniversalPropertyFails {
        failure: LiftFailure,
    },
}

impl LiftVerdict {
    pub fn is_created(&self) -> bool {
        matches!(self, LiftVerdict::Created { .. })
    }
}

/// The image under the forgetful functor of a cone in `T-Alg_w`.
pub fn forget_cone(alg: &TAlgW, base: &FCat, g: &FFun, cone: &FCone) -> FCone {
    let (t, k) = (&alg.fcat.base, &base.base);
    let apex = alg.forget.fun.on0[cone.apex];
    let legs = cone
        .legs
        .iter()
        .enumerate()
        .map(|(d, leg)| {
            let h = t.hom(cone.apex, g.fun.on0[d]);
            Fun {
                on_obj: leg.on_obj.iter().map(|&c| k.local1(alg.forget.fun.on1[h.cells1[c]])).collect(),
                on_mor: leg.on_mor.iter().map(|&c| k.local2(alg.forget.fun.on2[h.cells2[c]])).collect(),
            }
        })
        .collect();
    FCone { apex, legs }
}

/// Decides whether the forgetful functor creates the `w`-weighted limit
/// of `g: D → T-Alg_w`.
pub fn lift_check(m: &FiniteMonad, alg: &TAlgW, w: &FWeight, g: &FFun) -> Result<LiftVerdict> {
    let base = m.base();
    let ug = FFun { fun: g.fun.then(&alg.forget.fun) };
    let base_cone = match find_f_limit(w, &ug, base) {
        Ok(c) => c,
        Err(WeightError::NotFound { .. }) => return Ok(LiftVerdict::NoBaseLimit),
        Err(e) => return Err(e.into()),
    };
    let ctx = FLimitContext::new(w, g, &alg.fcat)?;
    let mut lifts = Vec::new();
    for ell in alg.over(base_cone.apex) {
        for cone in ctx.cones_at(ell) {
            if forget_cone(alg, base, g, &cone) != base_cone {
                continue;
            }
            let strict = (0..w.shape.base.n_obj())
                .all(|d| w.phi[d].on_obj.iter().all(|&x| alg.fcat.tight[ctx.leg_cell(&cone, d, x)]));
            if strict {
                lifts.push(cone);
            }
        }
    }
    match lifts.len() {
        0 => Ok(LiftVerdict::UniversalPropertyFails { failure: LiftFailure::NoLiftedCone }),
        1 => {
            let cone = lifts.pop().expect("one lift");
            match ctx.check(&cone) {
                FLimitVerdict::IsFLimit => Ok(LiftVerdict::Created { cone }),
                v => Ok(LiftVerdict::UniversalPropertyFails { failure: LiftFailure::NotFLimit(v) }),
            }
        }
        _ => Ok(LiftVerdict::StructureNotUnique { witnesses: lifts }),
    }
}

/// Samples up to `count` distinct F-functors `d → k`, deterministically
/// from `seed`.
pub fn sample_diagrams(d: &FCat, k: &FCat, count: usize, seed: u64) -> Vec<FFun> {
    let (dc, kc) = (&d.base, &k.base);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<FFun> = Vec::new();
    if kc.n_obj() == 0 {
        return out;
    }
    let trials = 8 * count.max(1);
    for _ in 0..trials {
        if out.len() >= count {
            break;
        }
        let pins: Vec<Option<usize>> = (0..dc.n_obj()).map(|_| Some(rng.gen_range(0..kc.n_obj()))).collect();
        let mut found: Vec<FFun> = Vec::new();
        enumerate_functors_with(dc.underlying(), kc.underlying(), Some(&pins), &mut |f| {
            let tight_ok = (0..dc.cells1.len()).all(|u| !d.tight[u] || k.tight[f.on_mor[u]]);
            if tight_ok {
                found.extend(extend_two_cells(dc, kc, f, 4));
            }
            found.len() < 64
        });
        if let Some(f) = found.choose(&mut rng) {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
    }
    out
}

/// Extensions of a functor on underlying categories to 2-functors.
fn extend_two_cells(d: &TwoCat, k: &TwoCat, f: &Fun, cap: usize) -> Vec<FFun> {
    let proper: Vec<usize> = d.proper_cells2().collect();
    let mut on2: Vec<usize> = (0..d.cells2.len()).map(|a| k.id2(f.on_mor[d.cells2[a].src])).collect();
    let mut out = Vec::new();
    fn rec(
        i: usize,
        proper: &[usize],
        d: &TwoCat,
        k: &TwoCat,
        f: &Fun,
        on2: &mut Vec<usize>,
        out: &mut Vec<FFun>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if i == proper.len() {
            let tf = TwoFun { on0: f.on_obj.clone(), on1: f.on_mor.clone(), on2: on2.clone() };
            if tf.validate(d, k).is_ok() {
                out.push(FFun { fun: tf });
            }
            return;
        }
        let a = proper[i];
        let (s, t) = (f.on_mor[d.cells2[a].src], f.on_mor[d.cells2[a].tgt]);
        let h = k.hom(k.src1(s), k.tgt1(s));
        for &c in &h.cells2 {
            if k.cells2[c].src == s && k.cells2[c].tgt == t {
                on2[a] = c;
                rec(i + 1, proper, d, k, f, on2, out, cap);
            }
        }
    }
    rec(0, &proper, d, k, f, &mut on2, &mut out, cap);
    out
}

/// One row of a lifting survey.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub weight: String,
    pub rigged: Option<bool>,
    pub diagrams: usize,
    pub created: usize,
    pub no_base_limit: usize,
    pub failures: Vec<(usize, LiftVerdict)>,
}

impl SurveyRow {
    /// A rigged weight whose limit exists but fails to lift.
    pub fn inconsistent(&self) -> bool {
        self.rigged == Some(true) && !self.failures.is_empty()
    }
}

/// Runs [`lift_check`] on sampled diagrams for every weight of the corpus
/// and cross-tabulates with [`is_rigged`].
pub fn lift_survey(
    m: &FiniteMonad,
    alg: &TAlgW,
    corpus: &[(String, FWeight)],
    per_weight: usize,
    seed: u64,
) -> Result<Vec<SurveyRow>> {
    let mut rows = Vec::new();
    for (i, (name, w)) in corpus.iter().enumerate() {
        let rigged = is_rigged(w, alg.kind, &default_budget(w)).ok().map(|v| v.is_rigged());
        let diagrams = sample_diagrams(&w.shape, &alg.fcat, per_weight, seed.wrapping_add(i as u64));
        let mut row = SurveyRow {
            weight: name.clone(),
            rigged,
            diagrams: diagrams.len(),
            created: 0,
            no_base_limit: 0,
            failures: Vec::new(),
        };
        for (j, g) in diagrams.iter().enumerate() {
            match lift_check(m, alg, w, g)? {
                LiftVerdict::Created { .. } => row.created += 1,
                LiftVerdict::NoBaseLimit => row.no_base_limit += 1,
                v => row.failures.push((j, v)),
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// An Eilenberg-Moore object in the loose part with its two F-conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmVerdict {
    pub em: Option<EmObject>,
    pub u_tight: bool,
    /// Every `h` into the apex with `h;u` tight is tight.
    pub detects_tightness: bool,
}

impl EmVerdict {
    pub fn is_f_em_object(&self) -> bool {
        self.em.is_some() && self.u_tight && self.detects_tightness
    }
}

pub fn em_object_f(k: &FCat, m: &Monad2) -> Result<EmVerdict> {
    m.validate(&k.base)?;
    let em = match em_object(&k.base, m) {
        Ok(e) => e,
        Err(TwoCatError::NotFound(_)) => return Ok(EmVerdict { em: None, u_tight: false, detects_tightness: false }),
        Err(e) => return Err(e.into()),
    };
    let kb = &k.base;
    let u_tight = k.tight[em.u];
    let detects_tightness =
        (0..kb.cells1.len()).all(|h| kb.tgt1(h) != em.apex || k.tight[h] || !k.tight[kb.comp1(h, em.u)]);
    Ok(EmVerdict { em: Some(em), u_tight, detects_tightness })
}

// ---------------------------------------------------------------------------
// Fixtures

/// The chordate sub-2-category of `Cat` on the given categories.
pub fn chordate_cat_fixture(cats: &[(&str, FinCat)]) -> FCat {
    let objs: Vec<(String, FinCat)> = cats.iter().map(|(n, c)| (n.to_string(), c.clone())).collect();
    FCat::chordate(TwoCat::sub_of_cat(&objs))
}

/// The poset `0<1, 0<2, 1<3, 2<3, 2<4`.
pub fn closure_poset() -> FinCat {
    let le = [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (0, 3), (0, 4)];
    let names: Vec<String> = (0..5).map(|i| i.to_string()).collect();
    FinCat::poset(&names, |a, b| a == b || le.contains(&(a, b))).expect("poset")
}

/// The closure operator `0,2 ↦ 2`, `1,3 ↦ 3`, `4 ↦ 4` on [`closure_poset`].
pub fn closure_monad() -> FMonad {
    let p = closure_poset();
    let c = [2, 3, 2, 3, 4];
    let k = TwoCat::locally_discrete(&p);
    let on1: Vec<usize> = (0..p.n_mor()).map(|f| p.hom(c[p.src(f)], c[p.tgt(f)])[0]).collect();
    let on2 = (0..k.cells2.len()).map(|a| k.id2(on1[k.cells2[a].src])).collect();
    let t = FFun { fun: TwoFun { on0: c.to_vec(), on1, on2 } };
    let eta = (0..5).map(|x| p.hom(x, c[x])[0]).collect();
    let mu = (0..5).map(|x| p.id(c[x])).collect();
    FMonad::new(FCat::chordate(k), t, eta, mu).expect("closure monad")
}

/// The base of the writer fixture: `1`, `2` and the free isomorphism.
pub fn writer_base() -> FCat {
    chordate_cat_fixture(&[("1", FinCat::terminal()), ("2", FinCat::arrow()), ("I", FinCat::free_iso())])
}

/// The base of the identity-monad fixture: the ordinals `1, 2, 3`.
pub fn ordinal_base() -> FCat {
    chordate_cat_fixture(&[("1", FinCat::ordinal(1)), ("2", FinCat::ordinal(2)), ("3", FinCat::ordinal(3))])
}

/// The three fixture monads: identity, closure and writer.
pub fn fixture_monads() -> Vec<(String, FiniteMonad)> {
    vec![
        ("identity".into(), FiniteMonad::Endo(FMonad::identity(ordinal_base()))),
        ("closure".into(), FiniteMonad::Endo(closure_monad())),
        ("writer".into(), FiniteMonad::Writer(WriterMonad { base: writer_base() })),
    ]
}

/// A diagram of shape `w.shape` into `T-Alg_w` picking a single algebra.
pub fn constant_diagram(w: &FWeight, alg: &TAlgW, algebra: usize) -> FFun {
    let (d, t) = (&w.shape.base, &alg.fcat.base);
    let id = t.id1(algebra);
    FFun {
        fun: TwoFun {
            on0: vec![algebra; d.n_obj()],
            on1: vec![id; d.cells1.len()],
            on2: vec![t.id2(id); d.cells2.len()],
        },
    }
}

/// The power of `(∅ ↪ 1)` over the writer fixture at `2` with `E = 1`:
/// the weak endomorphisms of that algebra are not all strict, so the base
/// limit does not lift.
pub fn power_witness(kind: WKind) -> Result<(FiniteMonad, TAlgW, FWeight, FFun)> {
    let m = FiniteMonad::Writer(WriterMonad { base: writer_base() });
    let alg = build_t_alg_w(&m, kind)?;
    let k = &m.base().base;
    let two = k.obj_index("2").expect("2");
    let a = alg.over(two).into_iter().find(|&i| alg.algebras[i].action == k.id1(two)).expect("trivial action on 2");
    let x = crate::f_core::FObj::full_sub(&FinCat::terminal(), &[]);
    let w = crate::weights::weight_power(&x)?;
    let g = constant_diagram(&w, &alg, a);
    Ok((m, alg, w, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{weight_pie_fixture, weight_tight};

    #[test]
    fn identity_monad_alg_is_base() {
        let m = FiniteMonad::Endo(FMonad::identity(ordinal_base()));
        for kind in [WKind::Pseudo, WKind::Lax, WKind::Oplax] {
            let a = build_t_alg_w(&m, kind).unwrap();
            let k = &m.base().base;
            assert_eq!(a.fcat.base.n_obj(), k.n_obj());
            assert_eq!(a.fcat.base.cells1.len(), k.cells1.len());
            assert_eq!(a.fcat.base.cells2.len(), k.cells2.len());
            assert!(a.fcat.tight.iter().all(|&t| t));
        }
    }

    #[test]
    fn closure_algebras_are_fixed_points() {
        let m = FiniteMonad::Endo(closure_monad());
        let a = build_t_alg_w(&m, WKind::Lax).unwrap();
        let carriers: Vec<usize> = a.algebras.iter().map(|x| x.carrier).collect();
        assert_eq!(carriers, vec![2, 3, 4]);
        let k = &m.base().base;
        for i in 0..3 {
            for j in 0..3 {
                let n = a.morphisms.iter().filter(|x| x.src == i && x.tgt == j).count();
                assert_eq!(n, k.hom(carriers[i], carriers[j]).cells1.len());
            }
        }
    }

    #[test]
    fn writer_has_nonstrict_morphisms() {
        let m = FiniteMonad::Writer(WriterMonad { base: writer_base() });
        let a = build_t_alg_w(&m, WKind::Lax).unwrap();
        assert_eq!(a.algebras.len(), 7);
        assert!(a.fcat.tight.iter().any(|&t| !t));
        let p = build_t_alg_w(&m, WKind::Pseudo).unwrap();
        assert!(p.morphisms.len() < a.morphisms.len());
    }

    #[test]
    fn identity_monad_lifts_products() {
        let m = FiniteMonad::Endo(FMonad::identity(ordinal_base()));
        let a = build_t_alg_w(&m, WKind::Pseudo).unwrap();
        let prod = weight_pie_fixture("product").unwrap();
        let w = weight_tight(prod.shape, prod.phi).unwrap();
        let one = a.over(0)[0];
        let two = a.over(1)[0];
        let g = FFun {
            fun: TwoFun {
                on0: vec![one, two],
                on1: vec![a.fcat.base.id1(one), a.fcat.base.id1(two)],
                on2: vec![a.fcat.base.id2(a.fcat.base.id1(one)), a.fcat.base.id2(a.fcat.base.id1(two))],
            },
        };
        let v = lift_check(&m, &a, &w, &g).unwrap();
        assert!(v.is_created(), "{v:?}");
    }

    #[test]
    fn power_does_not_lift() {
        for kind in [WKind::Lax, WKind::Oplax] {
            let (m, a, w, g) = power_witness(kind).unwrap();
            let v = lift_check(&m, &a, &w, &g).unwrap();
            assert!(!v.is_created() && v != LiftVerdict::NoBaseLimit, "{v:?}");
        }
    }

    #[test]
    fn em_object_of_identity_monad() {
        let k = ordinal_base();
        let o = 1;
        let t = k.base.id1(o);
        let m = Monad2 { object: o, t, mu: k.base.id2(t), eta: k.base.id2(t) };
        let v = em_object_f(&k, &m).unwrap();
        assert!(v.is_f_em_object());
    }
}
