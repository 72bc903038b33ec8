//! Full embeddings, the internal hom of `F`, and F-categories stored as a
//! 2-category with a tightness predicate on 1-cells.

use thiserror::Error;

use crate::cat_core::{enumerate_functors, functor_category, CatError, FinCat, Fun};
use crate::two_cat::{TwoCat, TwoCatError, TwoFun, WKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FError {
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Two(#[from] TwoCatError),
    #[error("not a full embedding: {0}")]
    NotFullEmbedding(String),
    #[error("invalid F-category: {0}")]
    InvalidFCat(String),
    #[error("F-functor does not preserve tightness at `{0}`")]
    NotTightPreserving(String),
    #[error("invalid F-transformation: {0}")]
    InvalidTransformation(String),
}

pub type Result<T> = std::result::Result<T, FError>;

/// An object of `F`: a full embedding `j: tau → lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct FObj {
    pub tau: FinCat,
    pub lambda: FinCat,
    pub j: Fun,
}

impl FObj {
    pub fn new(tau: FinCat, lambda: FinCat, j: Fun) -> Result<FObj> {
        j.validate(&tau, &lambda)?;
        if !j.is_full_embedding(&tau, &lambda) {
            return Err(FError::NotFullEmbedding("j".into()));
        }
        Ok(FObj { tau, lambda, j })
    }

    /// `1 → 1`, the terminal object.
    pub fn one_tau() -> FObj {
        FObj::chordate(FinCat::terminal())
    }

    /// `0 → 1`.
    pub fn one_lambda() -> FObj {
        FObj::new(FinCat::empty(), FinCat::terminal(), Fun { on_obj: vec![], on_mor: vec![] }).unwrap()
    }

    /// The identity full embedding on `c`.
    pub fn chordate(c: FinCat) -> FObj {
        let j = Fun::identity(&c);
        FObj { tau: c.clone(), lambda: c, j }
    }

    /// The full subcategory on `objs`, included into `c`.
    pub fn full_sub(c: &FinCat, objs: &[usize]) -> FObj {
        let (tau, j) = c.full_subcategory(objs);
        FObj { tau, lambda: c.clone(), j }
    }

    /// Objects of `lambda` in the image of `j`.
    pub fn tight_objects(&self) -> Vec<bool> {
        let mut t = vec![false; self.lambda.n_obj()];
        for &o in &self.j.on_obj {
            t[o] = true;
        }
        t
    }
}

/// The internal hom `[b, c]`: loose part `[b_λ, c_λ]`, tight part the
/// functors sending tight objects to tight objects.
pub fn f_internal_hom(b: &FObj, c: &FObj) -> FObj {
    let fc = functor_category(&b.lambda, &c.lambda);
    let tight = c.tight_objects();
    let objs: Vec<usize> = fc
        .functors
        .iter()
        .enumerate()
        .filter(|(_, f)| b.j.on_obj.iter().all(|&x| tight[f.on_obj[x]]))
        .map(|(i, _)| i)
        .collect();
    FObj::full_sub(&fc.cat, &objs)
}

/// Counts morphisms of `F` from `b` to `c` as commuting squares
/// `j_c ∘ f_τ = f_λ ∘ j_b`.
pub fn count_f_morphisms(b: &FObj, c: &FObj) -> usize {
    let taus = enumerate_functors(&b.tau, &c.tau);
    let mut n = 0;
    for fl in enumerate_functors(&b.lambda, &c.lambda) {
        let lhs = b.j.then(&fl);
        n += taus.iter().filter(|ft| ft.then(&c.j) == lhs).count();
    }
    n
}

/// An F-category: a 2-category with a composition-closed class of tight 1-cells.
#[derive(Debug, Clone)]
pub struct FCat {
    pub base: TwoCat,
    pub tight: Vec<bool>,
}

/// The tight part `K_τ`, with global indices of its cells in `K_λ`.
#[derive(Debug, Clone)]
pub struct TauPart {
    pub cat: TwoCat,
    pub cells1: Vec<usize>,
    pub cells2: Vec<usize>,
}

impl TauPart {
    /// Index in `K_τ` of a global tight 1-cell.
    pub fn local1(&self, f: usize) -> Option<usize> {
        self.cells1.iter().position(|&g| g == f)
    }
}

/// Violations found by [`validate_fcat`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FReport {
    pub violations: Vec<String>,
}

impl FReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FCat {
    pub fn new(base: TwoCat, tight: Vec<bool>) -> Result<FCat> {
        let f = FCat { base, tight };
        let rep = validate_fcat(&f);
        if let Some(v) = rep.violations.first() {
            return Err(FError::InvalidFCat(v.clone()));
        }
        Ok(f)
    }

    /// Marks the named 1-cells (and all identities) tight.
    pub fn with_tight_names(base: TwoCat, names: &[&str]) -> Result<FCat> {
        let tight = FCat::with_tight_names_unchecked(&base, names)?;
        FCat::new(base, tight)
    }

    /// The tight part generated under composition by the named 1-cells.
    pub fn generated_by(base: TwoCat, names: &[&str]) -> Result<FCat> {
        let mut tight = FCat::with_tight_names_unchecked(&base, names)?;
        loop {
            let mut grew = false;
            for f in 0..base.cells1.len() {
                for g in 0..base.cells1.len() {
                    if tight[f] && tight[g] && base.tgt1(f) == base.src1(g) {
                        let h = base.comp1(f, g);
                        if !tight[h] {
                            tight[h] = true;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        FCat::new(base, tight)
    }

    fn with_tight_names_unchecked(base: &TwoCat, names: &[&str]) -> Result<Vec<bool>> {
        let mut tight = vec![false; base.cells1.len()];
        for o in 0..base.n_obj() {
            tight[base.id1(o)] = true;
        }
        for n in names {
            let f = base.cell1_index(n).ok_or_else(|| FError::InvalidFCat(format!("unknown 1-cell `{n}`")))?;
            tight[f] = true;
        }
        Ok(tight)
    }

    pub fn chordate(k: TwoCat) -> FCat {
        let tight = vec![true; k.cells1.len()];
        FCat { base: k, tight }
    }

    pub fn inchordate(k: TwoCat) -> FCat {
        let mut tight = vec![false; k.cells1.len()];
        for o in 0..k.n_obj() {
            tight[k.id1(o)] = true;
        }
        FCat { base: k, tight }
    }

    pub fn is_tight(&self, f: usize) -> bool {
        self.tight[f]
    }

    pub fn is_chordate(&self) -> bool {
        self.tight.iter().all(|&t| t)
    }

    pub fn tau(&self) -> TauPart {
        let (cat, cells1, cells2) = self.base.sub_on_cells(&self.tight);
        TauPart { cat, cells1, cells2 }
    }

    /// Global tight 1-cells from `a` to `b`.
    pub fn tight_hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.base.hom(a, b).cells1.iter().copied().filter(|&f| self.tight[f]).collect()
    }
}

/// Reports identities that are not tight and composites of tight 1-cells
/// that are not tight.
pub fn validate_fcat(f: &FCat) -> FReport {
    let k = &f.base;
    let mut rep = FReport::default();
    if f.tight.len() != k.cells1.len() {
        rep.violations.push("tightness predicate has wrong length".into());
        return rep;
    }
    for o in 0..k.n_obj() {
        if !f.tight[k.id1(o)] {
            rep.violations.push(format!("identity of `{}` is not tight", k.objects[o]));
        }
    }
    for a in 0..k.cells1.len() {
        if !f.tight[a] {
            continue;
        }
        for &b in k.underlying().out_of(k.tgt1(a)) {
            if f.tight[b] && !f.tight[k.comp1(a, b)] {
                rep.violations.push(format!("`{} ; {}` is not tight", k.cells1[a].name, k.cells1[b].name));
            }
        }
    }
    rep
}

/// An F-functor: a 2-functor on loose parts preserving tightness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFun {
    pub fun: TwoFun,
}

impl FFun {
    pub fn validate(&self, src: &FCat, tgt: &FCat) -> Result<()> {
        self.fun.validate(&src.base, &tgt.base)?;
        for f in 0..src.base.cells1.len() {
            if src.tight[f] && !tgt.tight[self.fun.on1[f]] {
                return Err(FError::NotTightPreserving(src.base.cells1[f].name.clone()));
            }
        }
        Ok(())
    }
}

/// A weak transformation between F-functors `F, G: D → K`, with 1-cell
/// components in `K`. For lax, `cells[u]: σ_d;G(u) ⇒ F(u);σ_{d'}`.
/// Components at tight 1-cells of `D` are identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FNat {
    pub kind: WKind,
    pub comps: Vec<usize>,
    pub cells: Vec<usize>,
    pub tight: bool,
}

impl FNat {
    /// The strict transformation with the given components.
    pub fn strict(k: &TwoCat, comps: Vec<usize>, d: &FCat, f: &FFun) -> FNat {
        let cells = (0..d.base.cells1.len()).map(|u| k.id2(k.comp1(f.fun.on1[u], comps[d.base.tgt1(u)]))).collect();
        FNat { kind: WKind::Strict, comps, cells, tight: true }
    }

    pub fn validate(&self, d: &FCat, k: &FCat, f: &FFun, g: &FFun) -> Result<()> {
        let bad = |s: String| Err(FError::InvalidTransformation(s));
        let (dc, kc) = (&d.base, &k.base);
        if self.comps.len() != dc.n_obj() || self.cells.len() != dc.cells1.len() {
            return bad("arity".into());
        }
        for o in 0..dc.n_obj() {
            let s = self.comps[o];
            if kc.src1(s) != f.fun.on0[o] || kc.tgt1(s) != g.fun.on0[o] {
                return bad(format!("component at `{}`", dc.objects[o]));
            }
            if self.tight && !k.tight[s] {
                return bad(format!("component at `{}` is not tight", dc.objects[o]));
            }
        }
        let ends = |u: usize| {
            let after = kc.comp1(self.comps[dc.src1(u)], g.fun.on1[u]);
            let before = kc.comp1(f.fun.on1[u], self.comps[dc.tgt1(u)]);
            match self.kind {
                WKind::Oplax => (before, after),
                _ => (after, before),
            }
        };
        for u in 0..dc.cells1.len() {
            let (s, t) = ends(u);
            let c = &kc.cells2[self.cells[u]];
            if c.src != s || c.tgt != t {
                return bad(format!("2-cell at `{}` has wrong boundary", dc.cells1[u].name));
            }
            let identity = kc.is_identity2(self.cells[u]);
            let must_be_identity = self.kind == WKind::Strict || d.tight[u];
            if must_be_identity && !identity {
                return bad(format!("2-cell at `{}` must be an identity", dc.cells1[u].name));
            }
            if self.kind == WKind::Pseudo && !kc.hom(kc.src1(s), kc.tgt1(s)).cat.is_iso(kc.local2(self.cells[u])) {
                return bad(format!("2-cell at `{}` is not invertible", dc.cells1[u].name));
            }
        }
        for o in 0..dc.n_obj() {
            if !kc.is_identity2(self.cells[dc.id1(o)]) {
                return bad("unit axiom".into());
            }
        }
        for u in 0..dc.cells1.len() {
            for &v in dc.underlying().out_of(dc.tgt1(u)) {
                let uv = dc.comp1(u, v);
                let (su, sv) = (self.cells[u], self.cells[v]);
                let rhs = match self.kind {
                    WKind::Oplax => kc.vcomp(kc.whisker_before(f.fun.on1[u], sv), kc.whisker_after(su, g.fun.on1[v])),
                    _ => kc.vcomp(kc.whisker_after(su, g.fun.on1[v]), kc.whisker_before(f.fun.on1[u], sv)),
                };
                if self.cells[uv] != rhs {
                    return bad(format!("composition axiom at `{}`,`{}`", dc.cells1[u].name, dc.cells1[v].name));
                }
            }
        }
        for (a, c) in dc.cells2.iter().enumerate() {
            let (u, u2) = (c.src, c.tgt);
            let (s, t) = (dc.src1(u), dc.tgt1(u));
            let ga = kc.whisker_before(self.comps[s], g.fun.on2[a]);
            let fa = kc.whisker_after(f.fun.on2[a], self.comps[t]);
            let ok = match self.kind {
                WKind::Oplax => kc.vcomp(self.cells[u], ga) == kc.vcomp(fa, self.cells[u2]),
                _ => kc.vcomp(ga, self.cells[u2]) == kc.vcomp(self.cells[u], fa),
            };
            if !ok {
                return bad(format!("2-cell axiom at `{}`", c.name));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat_core::{realize_presentation, CatPresentation, CompletionBudget};

    #[test]
    fn internal_hom_small_cases() {
        let h = f_internal_hom(&FObj::one_lambda(), &FObj::one_lambda());
        assert_eq!((h.tau.n_obj(), h.lambda.n_obj()), (1, 1));
        let c = FObj::full_sub(&FinCat::arrow(), &[1]);
        let h = f_internal_hom(&FObj::one_tau(), &c);
        assert!(crate::cat_core::isomorphic(&h.tau, &c.tau));
        assert!(crate::cat_core::isomorphic(&h.lambda, &c.lambda));
    }

    #[test]
    fn internal_hom_counts_squares() {
        let two = FinCat::arrow();
        let b = FObj::full_sub(&two, &[]);
        let c = FObj::full_sub(&two, &[0]);
        for (x, y) in [(&b, &c), (&c, &b), (&c, &c), (&FObj::one_tau(), &c)] {
            let h = f_internal_hom(x, y);
            assert_eq!(h.tau.n_obj(), count_f_morphisms(x, y));
        }
        assert_eq!(f_internal_hom(&b, &c).tau.n_obj(), 3);
    }

    #[test]
    fn chordate_and_inchordate() {
        let k = TwoCat::locally_discrete(&FinCat::arrow());
        let ch = FCat::chordate(k.clone());
        assert!(ch.tight.iter().all(|&t| t));
        let inc = FCat::inchordate(k);
        assert!(validate_fcat(&inc).is_valid());
        let t = inc.tau();
        assert_eq!(t.cat.cells1.len(), 2);
        assert_eq!(t.cat.cells2.len(), 2);
    }

    #[test]
    fn closure_violation_detected() {
        // a single endo e with e;e;e = e, so e;e ≠ e
        let mut p = CatPresentation::new(vec!["x".into()]);
        let e = p.add_generator("e", 0, 0);
        p.add_relation(0, vec![e, e, e], vec![e]);
        let r = realize_presentation(&p, &CompletionBudget::default()).unwrap();
        let k = TwoCat::locally_discrete(&r.cat);
        let e = r.cat.mor_index("e").unwrap();
        let mut tight = vec![false; r.cat.n_mor()];
        tight[r.cat.id(0)] = true;
        tight[e] = true;
        let rep = validate_fcat(&FCat { base: k, tight });
        assert!(!rep.is_valid());
    }
}
