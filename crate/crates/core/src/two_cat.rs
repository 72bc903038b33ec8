//! Finite 2-categories, 2-functors into `Cat`, weak transformations and
//! 2-categorical weighted limits.
//!
//! Lax convention: a lax `σ: F → G` has components
//! `σ_u: G(u)∘σ_d ⇒ σ_{d'}∘F(u)`; oplax reverses the 2-cell.

use std::collections::HashMap;

use thiserror::Error;

use crate::cat_core::{enumerate_functors, enumerate_nat_trans, CatError, FinCat, Fun, Morphism, NatTrans};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoCatError {
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error("invalid 2-category: {0}")]
    Invalid(String),
    #[error("invalid 2-functor: {0}")]
    InvalidFunctor(String),
    #[error("diagram mismatch: {0}")]
    DiagramMismatch(String),
    #[error("not found: {0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, TwoCatError>;

/// A 2-cell between parallel 1-cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell2 {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A hom-category `K(a, b)` with its local-to-global index maps.
#[derive(Debug, Clone)]
pub struct HomCat {
    pub cat: FinCat,
    pub cells1: Vec<usize>,
    pub cells2: Vec<usize>,
}

/// A finite strict 2-category.
#[derive(Debug, Clone)]
pub struct TwoCat {
    pub objects: Vec<String>,
    pub cells1: Vec<Morphism>,
    pub cells2: Vec<Cell2>,
    id1: Vec<usize>,
    id2: Vec<usize>,
    comp1: HashMap<(usize, usize), usize>,
    vcomp: HashMap<(usize, usize), usize>,
    hcomp: HashMap<(usize, usize), usize>,
    homs: HashMap<(usize, usize), HomCat>,
    loc1: Vec<usize>,
    loc2: Vec<usize>,
    underlying: FinCat,
}

/// Raw data for [`TwoCat::from_parts`].
pub struct TwoCatParts<C, V, H>
where
    C: FnMut(usize, usize) -> Option<usize>,
    V: FnMut(usize, usize) -> Option<usize>,
    H: FnMut(usize, usize) -> Option<usize>,
{
    pub objects: Vec<String>,
    pub cells1: Vec<Morphism>,
    pub id1: Vec<usize>,
    pub cells2: Vec<Cell2>,
    pub id2: Vec<usize>,
    /// `f ; g` on 1-cells.
    pub comp1: C,
    /// vertical `α ; β` on 2-cells.
    pub vcomp: V,
    /// horizontal `α ; β` for `α` in `K(a,b)`, `β` in `K(b,c)`.
    pub hcomp: H,
}

impl TwoCat {
    pub fn from_parts<C, V, H>(mut p: TwoCatParts<C, V, H>) -> Result<TwoCat>
    where
        C: FnMut(usize, usize) -> Option<usize>,
        V: FnMut(usize, usize) -> Option<usize>,
        H: FnMut(usize, usize) -> Option<usize>,
    {
        let n1 = p.cells1.len();
        if p.id2.len() != n1 {
            return Err(TwoCatError::Invalid("identity 2-cell list length".into()));
        }
        let underlying = FinCat::from_fn(p.objects.clone(), p.cells1.clone(), p.id1.clone(), &mut p.comp1)?;
        let mut comp1 = HashMap::new();
        for f in 0..n1 {
            for &g in underlying.out_of(underlying.tgt(f)) {
                comp1.insert((f, g), underlying.seq(f, g));
            }
        }
        for c in p.cells2.iter() {
            if c.src >= n1 || c.tgt >= n1 {
                return Err(TwoCatError::Invalid(format!("2-cell `{}` endpoints", c.name)));
            }
            let (s, t) = (&p.cells1[c.src], &p.cells1[c.tgt]);
            if s.src != t.src || s.tgt != t.tgt {
                return Err(TwoCatError::Invalid(format!("2-cell `{}` between non-parallel 1-cells", c.name)));
            }
        }
        for (f, &i) in p.id2.iter().enumerate() {
            let ok = p.cells2.get(i).map(|c| c.src == f && c.tgt == f).unwrap_or(false);
            if !ok {
                return Err(TwoCatError::Invalid(format!("identity 2-cell of `{}`", p.cells1[f].name)));
            }
        }
        // hom categories
        let mut by_hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut loc1 = vec![0; n1];
        for a in 0..p.objects.len() {
            for b in 0..p.objects.len() {
                by_hom.insert((a, b), Vec::new());
            }
        }
        for (f, m) in p.cells1.iter().enumerate() {
            let v = by_hom.get_mut(&(m.src, m.tgt)).unwrap();
            loc1[f] = v.len();
            v.push(f);
        }
        let mut cells2_by_hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut loc2 = vec![0; p.cells2.len()];
        for (a, c) in p.cells2.iter().enumerate() {
            let m = &p.cells1[c.src];
            let v = cells2_by_hom.entry((m.src, m.tgt)).or_default();
            loc2[a] = v.len();
            v.push(a);
        }
        let mut vcomp = HashMap::new();
        let mut homs = HashMap::new();
        for (&(a, b), cells1) in &by_hom {
            let cells2 = cells2_by_hom.remove(&(a, b)).unwrap_or_default();
            let morphisms: Vec<Morphism> = cells2
                .iter()
                .map(|&c| Morphism {
                    name: p.cells2[c].name.clone(),
                    src: loc1[p.cells2[c].src],
                    tgt: loc1[p.cells2[c].tgt],
                })
                .collect();
            let objects = cells1.iter().map(|&f| p.cells1[f].name.clone()).collect();
            let ids = cells1.iter().map(|&f| loc2[p.id2[f]]).collect();
            let cat = FinCat::from_fn(objects, morphisms, ids, |x, y| {
                (p.vcomp)(cells2[x], cells2[y]).and_then(|z| {
                    if z < loc2.len() && cells2.get(loc2[z]) == Some(&z) {
                        Some(loc2[z])
                    } else {
                        None
                    }
                })
            })?;
            for (x, &gx) in cells2.iter().enumerate() {
                for &y in cat.out_of(cat.tgt(x)) {
                    vcomp.insert((gx, cells2[y]), cells2[cat.seq(x, y)]);
                }
            }
            homs.insert((a, b), HomCat { cat, cells1: cells1.clone(), cells2 });
        }
        let mut hcomp = HashMap::new();
        for (x, cx) in p.cells2.iter().enumerate() {
            let b = p.cells1[cx.src].tgt;
            for y in 0..p.cells2.len() {
                let cy = &p.cells2[y];
                if p.cells1[cy.src].src != b {
                    continue;
                }
                let z = (p.hcomp)(x, y).ok_or_else(|| {
                    TwoCatError::Cat(CatError::MissingComposition { after: cx.name.clone(), then: cy.name.clone() })
                })?;
                let cz =
                    p.cells2.get(z).ok_or_else(|| TwoCatError::Invalid("horizontal composite out of range".into()))?;
                if cz.src != comp1[&(cx.src, cy.src)] || cz.tgt != comp1[&(cx.tgt, cy.tgt)] {
                    return Err(TwoCatError::Invalid(format!(
                        "horizontal composite of `{}` and `{}` has wrong boundary",
                        cx.name, cy.name
                    )));
                }
                hcomp.insert((x, y), z);
            }
        }
        Ok(TwoCat {
            objects: p.objects,
            cells1: p.cells1,
            cells2: p.cells2,
            id1: p.id1,
            id2: p.id2,
            comp1,
            vcomp,
            hcomp,
            homs,
            loc1,
            loc2,
            underlying,
        })
    }

    /// A 1-category viewed as a locally discrete 2-category.
    pub fn locally_discrete(c: &FinCat) -> TwoCat {
        let cells2 = c
            .morphisms
            .iter()
            .enumerate()
            .map(|(f, m)| Cell2 { name: format!("1_{}", m.name), src: f, tgt: f })
            .collect();
        TwoCat::from_parts(TwoCatParts {
            objects: c.objects.clone(),
            cells1: c.morphisms.clone(),
            id1: c.identities().to_vec(),
            cells2,
            id2: (0..c.n_mor()).collect(),
            comp1: |f, g| Some(c.seq(f, g)),
            vcomp: |x, y| if x == y { Some(x) } else { None },
            hcomp: |x, y| Some(c.seq(x, y)),
        })
        .expect("locally discrete 2-category")
    }

    /// The full sub-2-category of `Cat` on the given categories.
    pub fn sub_of_cat(objs: &[(String, FinCat)]) -> TwoCat {
        let n = objs.len();
        let mut cells1 = Vec::new();
        let mut funs: Vec<Fun> = Vec::new();
        let mut fun_index: HashMap<(usize, usize, Fun), usize> = HashMap::new();
        let mut cells2 = Vec::new();
        let mut trans: Vec<NatTrans> = Vec::new();
        let mut trans_index: HashMap<(usize, NatTrans), usize> = HashMap::new();
        let mut id1 = vec![0; n];
        let mut pending: Vec<(usize, usize, usize, NatTrans)> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let fc = crate::cat_core::functor_category(&objs[a].1, &objs[b].1);
                let base = cells1.len();
                for (i, f) in fc.functors.iter().enumerate() {
                    if a == b && *f == Fun::identity(&objs[a].1) {
                        id1[a] = base + i;
                    }
                    fun_index.insert((a, b, f.clone()), base + i);
                    cells1.push(Morphism { name: format!("{}:{}->{}", i, objs[a].0, objs[b].0), src: a, tgt: b });
                    funs.push(f.clone());
                }
                for (k, t) in fc.transformations.iter().enumerate() {
                    let m = &fc.cat.morphisms[k];
                    pending.push((base + m.src, base + m.tgt, k, t.clone()));
                }
            }
        }
        let mut id2 = vec![0; cells1.len()];
        for (s, t, _, tr) in pending {
            let idx = cells2.len();
            if s == t && tr.is_identity(&objs[cells1[t].tgt].1) {
                id2[s] = idx;
            }
            trans_index.insert((s, tr.clone()), idx);
            cells2.push(Cell2 { name: format!("t{idx}"), src: s, tgt: t });
            trans.push(tr);
        }
        let c1 = cells1.clone();
        let c2 = cells2.clone();
        TwoCat::from_parts(TwoCatParts {
            objects: objs.iter().map(|o| o.0.clone()).collect(),
            cells1,
            id1,
            cells2,
            id2,
            comp1: |f, g| {
                let h = funs[f].then(&funs[g]);
                fun_index.get(&(c1[f].src, c1[g].tgt, h)).copied()
            },
            vcomp: |x, y| {
                let tgt = &objs[c1[c2[x].src].tgt].1;
                let t = trans[x].then(&trans[y], tgt);
                trans_index.get(&(c2[x].src, t)).copied()
            },
            hcomp: |x, y| {
                let c = &objs[c1[c2[y].src].tgt].1;
                let t = NatTrans::horizontal(&trans[x], &funs[c2[x].src], &trans[y], &funs[c2[y].tgt], c);
                let s =
                    *fun_index.get(&(c1[c2[x].src].src, c1[c2[y].src].tgt, funs[c2[x].src].then(&funs[c2[y].src])))?;
                trans_index.get(&(s, t)).copied()
            },
        })
        .expect("sub-2-category of Cat")
    }

    pub fn n_obj(&self) -> usize {
        self.objects.len()
    }

    pub fn id1(&self, o: usize) -> usize {
        self.id1[o]
    }

    pub fn id2(&self, f: usize) -> usize {
        self.id2[f]
    }

    pub fn src1(&self, f: usize) -> usize {
        self.cells1[f].src
    }

    pub fn tgt1(&self, f: usize) -> usize {
        self.cells1[f].tgt
    }

    /// `f ; g` on 1-cells.
    pub fn comp1(&self, f: usize, g: usize) -> usize {
        self.comp1[&(f, g)]
    }

    /// Vertical `α ; β`.
    pub fn vcomp(&self, a: usize, b: usize) -> usize {
        self.vcomp[&(a, b)]
    }

    /// Horizontal `α ; β`.
    pub fn hcomp(&self, a: usize, b: usize) -> usize {
        self.hcomp[&(a, b)]
    }

    /// Whiskering `α ; g` for a 2-cell `α` and 1-cell `g` after it.
    pub fn whisker_after(&self, a: usize, g: usize) -> usize {
        self.hcomp(a, self.id2[g])
    }

    /// Whiskering `f ; α` for a 1-cell `f` before a 2-cell `α`.
    pub fn whisker_before(&self, f: usize, a: usize) -> usize {
        self.hcomp(self.id2[f], a)
    }

    pub fn is_identity2(&self, a: usize) -> bool {
        self.id2[self.cells2[a].src] == a
    }

    pub fn hom(&self, a: usize, b: usize) -> &HomCat {
        &self.homs[&(a, b)]
    }

    /// Index of a 1-cell inside its hom-category.
    pub fn local1(&self, f: usize) -> usize {
        self.loc1[f]
    }

    /// Index of a 2-cell inside its hom-category.
    pub fn local2(&self, a: usize) -> usize {
        self.loc2[a]
    }

    /// The underlying 1-category.
    pub fn underlying(&self) -> &FinCat {
        &self.underlying
    }

    pub fn is_locally_discrete(&self) -> bool {
        self.cells2.len() == self.cells1.len()
    }

    pub fn obj_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn cell1_index(&self, name: &str) -> Option<usize> {
        self.cells1.iter().position(|m| m.name == name)
    }

    pub fn cell2_index(&self, name: &str) -> Option<usize> {
        self.cells2.iter().position(|m| m.name == name)
    }

    /// Non-identity 2-cells.
    pub fn proper_cells2(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.cells2.len()).filter(move |&a| !self.is_identity2(a))
    }

    /// The sub-2-category on the 1-cells satisfying `keep` (which must be
    /// closed under composition and contain identities) and all 2-cells
    /// between them. Returns it with the global indices of its 1- and 2-cells.
    pub fn sub_on_cells(&self, keep: &[bool]) -> (TwoCat, Vec<usize>, Vec<usize>) {
        let c1: Vec<usize> = (0..self.cells1.len()).filter(|&f| keep[f]).collect();
        let mut n1 = HashMap::new();
        for (i, &f) in c1.iter().enumerate() {
            n1.insert(f, i);
        }
        let c2: Vec<usize> =
            (0..self.cells2.len()).filter(|&a| keep[self.cells2[a].src] && keep[self.cells2[a].tgt]).collect();
        let mut n2 = HashMap::new();
        for (i, &a) in c2.iter().enumerate() {
            n2.insert(a, i);
        }
        let sub = TwoCat::from_parts(TwoCatParts {
            objects: self.objects.clone(),
            cells1: c1.iter().map(|&f| self.cells1[f].clone()).collect(),
            id1: self.id1.iter().map(|f| n1[f]).collect(),
            cells2: c2
                .iter()
                .map(|&a| Cell2 {
                    name: self.cells2[a].name.clone(),
                    src: n1[&self.cells2[a].src],
                    tgt: n1[&self.cells2[a].tgt],
                })
                .collect(),
            id2: c1.iter().map(|&f| n2[&self.id2[f]]).collect(),
            comp1: |f, g| n1.get(&self.comp1(c1[f], c1[g])).copied(),
            vcomp: |x, y| self.vcomp.get(&(c2[x], c2[y])).and_then(|z| n2.get(z)).copied(),
            hcomp: |x, y| self.hcomp.get(&(c2[x], c2[y])).and_then(|z| n2.get(z)).copied(),
        })
        .expect("sub-2-category");
        (sub, c1, c2)
    }
}

/// Report of the 2-category axioms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoCatReport {
    pub failures: Vec<String>,
}

impl TwoCatReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustively checks the axioms of a strict 2-category.
pub fn validate_two_cat(k: &TwoCat) -> TwoCatReport {
    let mut rep = TwoCatReport::default();
    let u = crate::cat_core::validate_category(&k.underlying);
    rep.failures.extend(u.unit_failures);
    rep.failures.extend(u.assoc_failures);
    for h in k.homs.values() {
        let r = crate::cat_core::validate_category(&h.cat);
        rep.failures.extend(r.unit_failures);
        rep.failures.extend(r.assoc_failures);
    }
    let n2 = k.cells2.len();
    // identities: hcomp of identity 2-cells is the identity of the composite
    for (&(f, g), &fg) in &k.comp1 {
        if k.hcomp(k.id2[f], k.id2[g]) != k.id2[fg] {
            rep.failures.push(format!("1_{} * 1_{}", k.cells1[f].name, k.cells1[g].name));
        }
    }
    for a in 0..n2 {
        let s = k.cells1[k.cells2[a].src].src;
        let t = k.cells1[k.cells2[a].src].tgt;
        if k.hcomp(k.id2[k.id1[s]], a) != a || k.hcomp(a, k.id2[k.id1[t]]) != a {
            rep.failures.push(format!("unit law for `{}`", k.cells2[a].name));
        }
    }
    // interchange and associativity of horizontal composition
    for (&(a, b), &ab) in &k.hcomp {
        for (&(a2, b2), &ab2) in &k.hcomp {
            if k.cells2[a2].src == k.cells2[a].tgt && k.cells2[b2].src == k.cells2[b].tgt {
                let lhs = k.vcomp(ab, ab2);
                let rhs = k.hcomp(k.vcomp(a, a2), k.vcomp(b, b2));
                if lhs != rhs {
                    rep.failures.push(format!("interchange at `{}`,`{}`", k.cells2[a].name, k.cells2[b].name));
                }
            }
        }
        let t = k.cells1[k.cells2[b].src].tgt;
        for c in 0..n2 {
            if k.cells1[k.cells2[c].src].src == t && k.hcomp(ab, c) != k.hcomp(a, k.hcomp(b, c)) {
                rep.failures.push(format!("horizontal associativity at `{}`", k.cells2[a].name));
            }
        }
    }
    rep
}

/// A strict 2-functor between finite 2-categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFun {
    pub on0: Vec<usize>,
    pub on1: Vec<usize>,
    pub on2: Vec<usize>,
}

impl TwoFun {
    pub fn validate(&self, src: &TwoCat, tgt: &TwoCat) -> Result<()> {
        let bad = |s: String| Err(TwoCatError::InvalidFunctor(s));
        if self.on0.len() != src.n_obj() || self.on1.len() != src.cells1.len() || self.on2.len() != src.cells2.len() {
            return bad("arity".into());
        }
        for (f, m) in src.cells1.iter().enumerate() {
            let im = self.on1[f];
            if tgt.src1(im) != self.on0[m.src] || tgt.tgt1(im) != self.on0[m.tgt] {
                return bad(format!("1-cell `{}`", m.name));
            }
        }
        for o in 0..src.n_obj() {
            if self.on1[src.id1(o)] != tgt.id1(self.on0[o]) {
                return bad(format!("identity at `{}`", src.objects[o]));
            }
        }
        for (&(f, g), &fg) in &src.comp1 {
            if tgt.comp1(self.on1[f], self.on1[g]) != self.on1[fg] {
                return bad(format!("composite `{} ; {}`", src.cells1[f].name, src.cells1[g].name));
            }
        }
        for (a, c) in src.cells2.iter().enumerate() {
            let im = &tgt.cells2[self.on2[a]];
            if im.src != self.on1[c.src] || im.tgt != self.on1[c.tgt] {
                return bad(format!("2-cell `{}`", c.name));
            }
        }
        for f in 0..src.cells1.len() {
            if self.on2[src.id2(f)] != tgt.id2(self.on1[f]) {
                return bad("identity 2-cell".into());
            }
        }
        for (&(a, b), &ab) in &src.vcomp {
            if tgt.vcomp(self.on2[a], self.on2[b]) != self.on2[ab] {
                return bad("vertical composite".into());
            }
        }
        for (&(a, b), &ab) in &src.hcomp {
            if tgt.hcomp(self.on2[a], self.on2[b]) != self.on2[ab] {
                return bad("horizontal composite".into());
            }
        }
        Ok(())
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &TwoFun) -> TwoFun {
        TwoFun {
            on0: self.on0.iter().map(|&o| next.on0[o]).collect(),
            on1: self.on1.iter().map(|&f| next.on1[f]).collect(),
            on2: self.on2.iter().map(|&a| next.on2[a]).collect(),
        }
    }
}

/// A strict 2-functor `D → Cat` with finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct CatWeight {
    pub values: Vec<FinCat>,
    pub on1: Vec<Fun>,
    pub on2: Vec<NatTrans>,
}

impl CatWeight {
    /// The constant 2-functor at `c`.
    pub fn constant(d: &TwoCat, c: &FinCat) -> CatWeight {
        CatWeight {
            values: vec![c.clone(); d.n_obj()],
            on1: vec![Fun::identity(c); d.cells1.len()],
            on2: vec![NatTrans::identity(&Fun::identity(c), c); d.cells2.len()],
        }
    }

    /// The representable `D(d, -)`.
    pub fn representable(dc: &TwoCat, d: usize) -> CatWeight {
        let values: Vec<FinCat> = (0..dc.n_obj()).map(|e| dc.hom(d, e).cat.clone()).collect();
        let on1 = dc.cells1.iter().enumerate().map(|(u, m)| post_compose(dc, d, m.src, u)).collect();
        let on2 = dc
            .cells2
            .iter()
            .enumerate()
            .map(|(a, c)| {
                let e = dc.src1(c.src);
                let h = dc.hom(d, e);
                NatTrans { comp: h.cells1.iter().map(|&x| dc.local2(dc.whisker_before(x, a))).collect() }
            })
            .collect();
        CatWeight { values, on1, on2 }
    }

    /// `K(x, G-)` for a 2-functor `G: D → K`.
    pub fn hom_weight(k: &TwoCat, x: usize, d: &TwoCat, g: &TwoFun) -> CatWeight {
        let values: Vec<FinCat> = (0..d.n_obj()).map(|e| k.hom(x, g.on0[e]).cat.clone()).collect();
        let on1 = (0..d.cells1.len()).map(|u| post_compose(k, x, g.on0[d.src1(u)], g.on1[u])).collect();
        let on2 = (0..d.cells2.len())
            .map(|a| {
                let e = g.on0[d.src1(d.cells2[a].src)];
                let h = k.hom(x, e);
                NatTrans { comp: h.cells1.iter().map(|&y| k.local2(k.whisker_before(y, g.on2[a]))).collect() }
            })
            .collect();
        CatWeight { values, on1, on2 }
    }

    pub fn validate(&self, d: &TwoCat) -> Result<()> {
        let bad = |s: String| Err(TwoCatError::InvalidFunctor(s));
        if self.values.len() != d.n_obj() || self.on1.len() != d.cells1.len() || self.on2.len() != d.cells2.len() {
            return bad("weight arity".into());
        }
        for (u, m) in d.cells1.iter().enumerate() {
            self.on1[u]
                .validate(&self.values[m.src], &self.values[m.tgt])
                .map_err(|e| TwoCatError::InvalidFunctor(format!("at `{}`: {e}", m.name)))?;
        }
        for o in 0..d.n_obj() {
            if self.on1[d.id1(o)] != Fun::identity(&self.values[o]) {
                return bad(format!("identity at `{}`", d.objects[o]));
            }
        }
        for (&(f, g), &fg) in &d.comp1 {
            if self.on1[f].then(&self.on1[g]) != self.on1[fg] {
                return bad(format!("composite `{} ; {}`", d.cells1[f].name, d.cells1[g].name));
            }
        }
        for (a, c) in d.cells2.iter().enumerate() {
            let s = d.src1(c.src);
            let t = d.tgt1(c.src);
            self.on2[a]
                .validate(&self.on1[c.src], &self.on1[c.tgt], &self.values[s], &self.values[t])
                .map_err(|e| TwoCatError::InvalidFunctor(format!("at 2-cell `{}`: {e}", c.name)))?;
        }
        for f in 0..d.cells1.len() {
            if !self.on2[d.id2(f)].is_identity(&self.values[d.tgt1(f)]) {
                return bad("identity 2-cell".into());
            }
        }
        for (&(a, b), &ab) in &d.vcomp {
            let t = &self.values[d.tgt1(d.cells2[a].src)];
            if self.on2[a].then(&self.on2[b], t) != self.on2[ab] {
                return bad("vertical composite".into());
            }
        }
        for (&(a, b), &ab) in &d.hcomp {
            let c = &self.values[d.tgt1(d.cells2[b].src)];
            let h = NatTrans::horizontal(
                &self.on2[a],
                &self.on1[d.cells2[a].src],
                &self.on2[b],
                &self.on1[d.cells2[b].tgt],
                c,
            );
            if h != self.on2[ab] {
                return bad(format!("horizontal composite `{}`,`{}`", d.cells2[a].name, d.cells2[b].name));
            }
        }
        Ok(())
    }

    /// Restriction along a 2-functor `J: E → D` given by its cell maps.
    pub fn restrict(&self, on0: &[usize], on1: &[usize], on2: &[usize]) -> CatWeight {
        CatWeight {
            values: on0.iter().map(|&o| self.values[o].clone()).collect(),
            on1: on1.iter().map(|&f| self.on1[f].clone()).collect(),
            on2: on2.iter().map(|&a| self.on2[a].clone()).collect(),
        }
    }

    /// Objects-only functor on the underlying 1-category.
    pub fn ob(&self) -> crate::cat_core::SetWeight {
        crate::cat_core::SetWeight {
            sizes: self.values.iter().map(|c| c.n_obj()).collect(),
            maps: self.on1.iter().map(|f| f.on_obj.clone()).collect(),
        }
    }
}

/// The functor `K(x, a) → K(x, b)` given by post-composition with `u: a → b`.
fn post_compose(k: &TwoCat, x: usize, a: usize, u: usize) -> Fun {
    let src = k.hom(x, a);
    Fun {
        on_obj: src.cells1.iter().map(|&h| k.local1(k.comp1(h, u))).collect(),
        on_mor: src.cells2.iter().map(|&t| k.local2(k.whisker_after(t, u))).collect(),
    }
}

/// Strictness flavor of a transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WKind {
    Strict,
    Pseudo,
    Lax,
    Oplax,
}

impl WKind {
    /// Reverses lax and oplax; fixes strict and pseudo.
    pub fn bar(self) -> WKind {
        match self {
            WKind::Lax => WKind::Oplax,
            WKind::Oplax => WKind::Lax,
            k => k,
        }
    }
}

/// A weak natural transformation between 2-functors into `Cat`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WNat {
    pub kind: WKind,
    pub comps: Vec<Fun>,
    /// One natural transformation per 1-cell: for lax, `G(u)∘σ_d ⇒ σ_{d'}∘F(u)`.
    pub cells: Vec<NatTrans>,
}

/// The functor pair `(from, to)` a weak component at `u` goes between.
fn w_cell_ends(kind: WKind, f: &CatWeight, g: &CatWeight, comps: &[Fun], u: usize, d: &TwoCat) -> (Fun, Fun) {
    let (s, t) = (d.src1(u), d.tgt1(u));
    let gu_after = comps[s].then(&g.on1[u]);
    let fu_then = f.on1[u].then(&comps[t]);
    match kind {
        WKind::Oplax => (fu_then, gu_after),
        _ => (gu_after, fu_then),
    }
}

impl WNat {
    pub fn validate(&self, f: &CatWeight, g: &CatWeight, d: &TwoCat) -> Result<()> {
        let bad = |s: String| Err(TwoCatError::InvalidFunctor(s));
        for o in 0..d.n_obj() {
            self.comps[o].validate(&f.values[o], &g.values[o])?;
        }
        for u in 0..d.cells1.len() {
            let (a, b) = w_cell_ends(self.kind, f, g, &self.comps, u, d);
            let (s, t) = (d.src1(u), d.tgt1(u));
            self.cells[u].validate(&a, &b, &f.values[s], &g.values[t])?;
            let tv = &g.values[t];
            match self.kind {
                WKind::Strict if !self.cells[u].is_identity(tv) => return bad("strict component not identity".into()),
                WKind::Pseudo if !self.cells[u].comp.iter().all(|&c| tv.is_iso(c)) => {
                    return bad("pseudo component not invertible".into())
                }
                _ => {}
            }
        }
        if !w_axioms_hold(self.kind, f, g, &self.comps, &self.cells, d, None) {
            return bad("coherence axioms".into());
        }
        Ok(())
    }

    pub fn is_strict(&self, g: &CatWeight, d: &TwoCat) -> bool {
        (0..d.cells1.len()).all(|u| self.cells[u].is_identity(&g.values[d.tgt1(u)]))
    }
}

/// Checks unit, composition and 2-cell axioms. When `only` is given, only
/// the axioms whose cells are all assigned (`Some`) are checked.
fn w_axioms_hold(
    kind: WKind,
    f: &CatWeight,
    g: &CatWeight,
    comps: &[Fun],
    cells: &[NatTrans],
    d: &TwoCat,
    only: Option<(&[bool], usize)>,
) -> bool {
    let assigned = |u: usize| only.map(|(a, _)| a[u]).unwrap_or(true);
    let touches = |u: usize| only.map(|(_, k)| k == u).unwrap_or(true);
    for o in 0..d.n_obj() {
        let i = d.id1(o);
        if assigned(i) && touches(i) && !cells[i].is_identity(&g.values[o]) {
            return false;
        }
    }
    for (&(u, v), &uv) in &d.comp1 {
        if !(assigned(u) && assigned(v) && assigned(uv)) || !(touches(u) || touches(v) || touches(uv)) {
            continue;
        }
        let s = d.src1(u);
        let t = d.tgt1(v);
        let gt = &g.values[t];
        for x in 0..f.values[s].n_obj() {
            let lhs = cells[uv].comp[x];
            let fx = f.on1[u].on_obj[x];
            let rhs = match kind {
                WKind::Oplax => gt.seq(cells[v].comp[fx], g.on1[v].on_mor[cells[u].comp[x]]),
                _ => gt.seq(g.on1[v].on_mor[cells[u].comp[x]], cells[v].comp[fx]),
            };
            if lhs != rhs {
                return false;
            }
        }
    }
    for (a, c) in d.cells2.iter().enumerate() {
        let (u, u2) = (c.src, c.tgt);
        if !(assigned(u) && assigned(u2)) || !(touches(u) || touches(u2)) {
            continue;
        }
        let (s, t) = (d.src1(u), d.tgt1(u));
        let gt = &g.values[t];
        for x in 0..f.values[s].n_obj() {
            let ga = g.on2[a].comp[comps[s].on_obj[x]];
            let fa = comps[t].on_mor[f.on2[a].comp[x]];
            let ok = match kind {
                WKind::Oplax => gt.seq(cells[u].comp[x], ga) == gt.seq(fa, cells[u2].comp[x]),
                _ => gt.seq(ga, cells[u2].comp[x]) == gt.seq(cells[u].comp[x], fa),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Enumerates the `kind`-transformations `f → g`. When `tight` is given,
/// components at tight 1-cells are forced to be identities (relative
/// transformations).
pub fn enumerate_w_transformations(
    f: &CatWeight,
    g: &CatWeight,
    kind: WKind,
    d: &TwoCat,
    tight: Option<&[bool]>,
) -> Vec<WNat> {
    let mut out = Vec::new();
    search_w_transformations(f, g, kind, d, tight, &mut |w| {
        out.push(w.clone());
        true
    });
    out
}

pub fn count_w_transformations(f: &CatWeight, g: &CatWeight, kind: WKind, d: &TwoCat, tight: Option<&[bool]>) -> usize {
    let mut n = 0;
    search_w_transformations(f, g, kind, d, tight, &mut |_| {
        n += 1;
        true
    });
    n
}

pub fn search_w_transformations(
    f: &CatWeight,
    g: &CatWeight,
    kind: WKind,
    d: &TwoCat,
    tight: Option<&[bool]>,
    visit: &mut dyn FnMut(&WNat) -> bool,
) {
    let n = d.n_obj();
    let fun_cands: Vec<Vec<Fun>> = (0..n).map(|o| enumerate_functors(&f.values[o], &g.values[o])).collect();
    let mut steps = Vec::new();
    for o in 0..n {
        steps.push((true, o));
        for u in 0..d.cells1.len() {
            if d.src1(u).max(d.tgt1(u)) == o {
                steps.push((false, u));
            }
        }
    }
    struct St<'a> {
        f: &'a CatWeight,
        g: &'a CatWeight,
        kind: WKind,
        d: &'a TwoCat,
        tight: Option<&'a [bool]>,
        fun_cands: Vec<Vec<Fun>>,
        steps: Vec<(bool, usize)>,
        comps: Vec<Fun>,
        cells: Vec<NatTrans>,
        assigned: Vec<bool>,
        stop: bool,
    }
    fn go(st: &mut St, k: usize, visit: &mut dyn FnMut(&WNat) -> bool) {
        if st.stop {
            return;
        }
        if k == st.steps.len() {
            let w = WNat { kind: st.kind, comps: st.comps.clone(), cells: st.cells.clone() };
            if !visit(&w) {
                st.stop = true;
            }
            return;
        }
        let (is_obj, i) = st.steps[k];
        if is_obj {
            for c in 0..st.fun_cands[i].len() {
                st.comps[i] = st.fun_cands[i][c].clone();
                go(st, k + 1, visit);
                if st.stop {
                    return;
                }
            }
            return;
        }
        let u = i;
        let (s, t) = (st.d.src1(u), st.d.tgt1(u));
        let (a, b) = w_cell_ends(st.kind, st.f, st.g, &st.comps, u, st.d);
        let (fs, gt) = (&st.f.values[s], &st.g.values[t]);
        let forced_identity =
            st.kind == WKind::Strict || st.d.id1(s) == u && s == t || st.tight.map(|tm| tm[u]).unwrap_or(false);
        let cands: Vec<NatTrans> = if forced_identity {
            if a == b {
                vec![NatTrans::identity(&a, gt)]
            } else {
                Vec::new()
            }
        } else {
            let all = enumerate_nat_trans(&a, &b, fs, gt);
            if st.kind == WKind::Pseudo {
                all.into_iter().filter(|t| t.comp.iter().all(|&c| gt.is_iso(c))).collect()
            } else {
                all
            }
        };
        for c in cands {
            st.cells[u] = c;
            st.assigned[u] = true;
            if w_axioms_hold(st.kind, st.f, st.g, &st.comps, &st.cells, st.d, Some((&st.assigned, u))) {
                go(st, k + 1, visit);
            }
            st.assigned[u] = false;
            if st.stop {
                return;
            }
        }
    }
    let mut st = St {
        f,
        g,
        kind,
        d,
        tight,
        fun_cands,
        steps,
        comps: vec![Fun { on_obj: vec![], on_mor: vec![] }; n],
        cells: vec![NatTrans { comp: vec![] }; d.cells1.len()],
        assigned: vec![false; d.cells1.len()],
        stop: false,
    };
    go(&mut st, 0, visit);
}

/// A modification between strict transformations: one natural
/// transformation per object.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modification {
    pub comps: Vec<NatTrans>,
}

/// The category `[D, Cat](phi, g)` of strict 2-natural transformations
/// and modifications, i.e. the `phi`-weighted limit of `g` in `Cat`.
#[derive(Debug, Clone)]
pub struct LimitCat {
    pub cat: FinCat,
    pub cones: Vec<Vec<Fun>>,
    pub mods: Vec<Modification>,
    index: HashMap<Vec<Fun>, usize>,
}

impl LimitCat {
    pub fn cone_index(&self, c: &[Fun]) -> Option<usize> {
        self.index.get(c).copied()
    }
}

/// Enumerates strict 2-natural transformations `phi → g`.
pub fn strict_transformations(phi: &CatWeight, g: &CatWeight, d: &TwoCat) -> Vec<Vec<Fun>> {
    let mut out = Vec::new();
    search_strict(phi, g, d, &mut |c| {
        out.push(c.to_vec());
        true
    });
    out
}

pub fn count_strict_transformations(phi: &CatWeight, g: &CatWeight, d: &TwoCat) -> usize {
    let mut n = 0;
    search_strict(phi, g, d, &mut |_| {
        n += 1;
        true
    });
    n
}

fn search_strict(phi: &CatWeight, g: &CatWeight, d: &TwoCat, visit: &mut dyn FnMut(&[Fun]) -> bool) {
    let n = d.n_obj();
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..d.cells1.len() {
        due[d.src1(u).max(d.tgt1(u))].push(u);
    }
    let mut due2: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in d.proper_cells2() {
        let u = d.cells2[a].src;
        due2[d.src1(u).max(d.tgt1(u))].push(a);
    }
    let mut comps: Vec<Fun> = Vec::with_capacity(n);
    let mut stop = false;
    fn rec(
        o: usize,
        phi: &CatWeight,
        g: &CatWeight,
        d: &TwoCat,
        due: &[Vec<usize>],
        due2: &[Vec<usize>],
        comps: &mut Vec<Fun>,
        stop: &mut bool,
        visit: &mut dyn FnMut(&[Fun]) -> bool,
    ) {
        if *stop {
            return;
        }
        if o == d.n_obj() {
            if !visit(comps) {
                *stop = true;
            }
            return;
        }
        // pin object images through 1-cells from already-placed objects
        let mut pinned: Vec<Option<usize>> = vec![None; phi.values[o].n_obj()];
        let mut clash = false;
        for &u in &due[o] {
            let (s, t) = (d.src1(u), d.tgt1(u));
            if t == o && s < o {
                for x in 0..phi.values[s].n_obj() {
                    let want = g.on1[u].on_obj[comps[s].on_obj[x]];
                    let y = phi.on1[u].on_obj[x];
                    match pinned[y] {
                        Some(p) if p != want => clash = true,
                        _ => pinned[y] = Some(want),
                    }
                }
            }
        }
        if clash {
            return;
        }
        crate::cat_core::enumerate_functors_with(&phi.values[o], &g.values[o], Some(&pinned), &mut |c| {
            comps.push(c.clone());
            let ok = due[o].iter().all(|&u| {
                let (s, t) = (d.src1(u), d.tgt1(u));
                comps[s].then(&g.on1[u]) == phi.on1[u].then(&comps[t])
            }) && due2[o].iter().all(|&a| {
                let u = d.cells2[a].src;
                let (s, t) = (d.src1(u), d.tgt1(u));
                (0..phi.values[s].n_obj())
                    .all(|x| g.on2[a].comp[comps[s].on_obj[x]] == comps[t].on_mor[phi.on2[a].comp[x]])
            });
            if ok {
                rec(o + 1, phi, g, d, due, due2, comps, stop, visit);
            }
            comps.pop();
            !*stop
        });
    }
    rec(0, phi, g, d, &due, &due2, &mut comps, &mut stop, visit);
}

/// The `phi`-weighted limit of `g` in `Cat`.
pub fn weighted_limit_cat(phi: &CatWeight, g: &CatWeight, d: &TwoCat) -> LimitCat {
    let cones = strict_transformations(phi, g, d);
    let mut index = HashMap::new();
    for (i, c) in cones.iter().enumerate() {
        index.insert(c.clone(), i);
    }
    let mut mods = Vec::new();
    let mut morphisms = Vec::new();
    let mut ids = vec![0; cones.len()];
    let mut mindex: HashMap<(usize, Modification), usize> = HashMap::new();
    for (i, a) in cones.iter().enumerate() {
        for (j, b) in cones.iter().enumerate() {
            for m in modifications(phi, g, d, a, b) {
                if i == j && m.comps.iter().enumerate().all(|(o, t)| t.is_identity(&g.values[o])) {
                    ids[i] = morphisms.len();
                }
                mindex.insert((i, m.clone()), morphisms.len());
                morphisms.push(Morphism { name: format!("m{}", morphisms.len()), src: i, tgt: j });
                mods.push(m);
            }
        }
    }
    let objects = (0..cones.len()).map(|i| format!("c{i}")).collect();
    let ms = morphisms.clone();
    let md = mods.clone();
    let cat = FinCat::from_fn(objects, morphisms, ids, |x, y| {
        let comps =
            md[x].comps.iter().zip(&md[y].comps).enumerate().map(|(o, (s, t))| s.then(t, &g.values[o])).collect();
        mindex.get(&(ms[x].src, Modification { comps })).copied()
    })
    .expect("limit category");
    LimitCat { cat, cones, mods, index }
}

/// Modifications between two strict transformations `a, b: phi → g`.
pub fn modifications(phi: &CatWeight, g: &CatWeight, d: &TwoCat, a: &[Fun], b: &[Fun]) -> Vec<Modification> {
    let n = d.n_obj();
    let per: Vec<Vec<NatTrans>> =
        (0..n).map(|o| enumerate_nat_trans(&a[o], &b[o], &phi.values[o], &g.values[o])).collect();
    let mut out = Vec::new();
    let mut cur: Vec<NatTrans> = Vec::with_capacity(n);
    fn rec(
        o: usize,
        phi: &CatWeight,
        g: &CatWeight,
        d: &TwoCat,
        per: &[Vec<NatTrans>],
        cur: &mut Vec<NatTrans>,
        out: &mut Vec<Modification>,
    ) {
        if o == d.n_obj() {
            out.push(Modification { comps: cur.clone() });
            return;
        }
        for t in &per[o] {
            cur.push(t.clone());
            let ok = (0..d.cells1.len()).all(|u| {
                let (s, tt) = (d.src1(u), d.tgt1(u));
                if s.max(tt) != o {
                    return true;
                }
                (0..phi.values[s].n_obj())
                    .all(|x| g.on1[u].on_mor[cur[s].comp[x]] == cur[tt].comp[phi.on1[u].on_obj[x]])
            });
            if ok {
                rec(o + 1, phi, g, d, per, cur, out);
            }
            cur.pop();
        }
    }
    rec(0, phi, g, d, &per, &mut cur, &mut out);
    out
}

/// A cone over `g: D → K` with apex `apex`: for each `d`, a functor
/// `phi(d) → K(apex, g d)` (hom-category local indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictCone {
    pub apex: usize,
    pub legs: Vec<Fun>,
}

/// Outcome of a 2-categorical limit check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCheck {
    pub ok: bool,
    pub failing_probe: Option<usize>,
}

/// Checks that `cone` exhibits its apex as the `phi`-weighted limit of
/// `g` in `k`, by comparing `K(x, apex)` with the cone category for every `x`.
pub fn check_limit_in_two_cat(
    k: &TwoCat,
    d: &TwoCat,
    phi: &CatWeight,
    g: &TwoFun,
    cone: &StrictCone,
) -> Result<LimitCheck> {
    if phi.values.len() != d.n_obj() || g.on0.len() != d.n_obj() || cone.legs.len() != d.n_obj() {
        return Err(TwoCatError::DiagramMismatch("weight, diagram and cone shapes differ".into()));
    }
    let own = CatWeight::hom_weight(k, cone.apex, d, g);
    for (o, leg) in cone.legs.iter().enumerate() {
        leg.validate(&phi.values[o], &own.values[o])
            .map_err(|e| TwoCatError::DiagramMismatch(format!("leg {o}: {e}")))?;
    }
    if !is_strict_cone(phi, &own, d, &cone.legs) {
        return Err(TwoCatError::DiagramMismatch("cone is not 2-natural".into()));
    }
    let lims = probe_limits(k, d, phi, g);
    Ok(check_limit_with(k, g, cone, &lims))
}

/// The cone categories `[D, Cat](phi, K(x, g-))` for every object `x`.
pub fn probe_limits(k: &TwoCat, d: &TwoCat, phi: &CatWeight, g: &TwoFun) -> Vec<LimitCat> {
    (0..k.n_obj()).map(|x| weighted_limit_cat(phi, &CatWeight::hom_weight(k, x, d, g), d)).collect()
}

/// As [`check_limit_in_two_cat`], reusing precomputed [`probe_limits`]
/// and assuming the cone is valid.
pub fn check_limit_with(k: &TwoCat, g: &TwoFun, cone: &StrictCone, lims: &[LimitCat]) -> LimitCheck {
    for (x, lim) in lims.iter().enumerate() {
        if !comparison_is_iso(k, g, cone, x, lim) {
            return LimitCheck { ok: false, failing_probe: Some(x) };
        }
    }
    LimitCheck { ok: true, failing_probe: None }
}

pub(crate) fn is_strict_cone(phi: &CatWeight, h: &CatWeight, d: &TwoCat, legs: &[Fun]) -> bool {
    (0..d.cells1.len()).all(|u| legs[d.src1(u)].then(&h.on1[u]) == phi.on1[u].then(&legs[d.tgt1(u)]))
        && d.proper_cells2().all(|a| {
            let u = d.cells2[a].src;
            let (s, t) = (d.src1(u), d.tgt1(u));
            (0..phi.values[s].n_obj()).all(|x| h.on2[a].comp[legs[s].on_obj[x]] == legs[t].on_mor[phi.on2[a].comp[x]])
        })
}

/// The cone `h^* c` for `h: x → apex`, as legs into `K(x, g-)`.
pub fn pull_cone(k: &TwoCat, g: &TwoFun, cone: &StrictCone, h: usize) -> Vec<Fun> {
    cone.legs
        .iter()
        .enumerate()
        .map(|(d, leg)| {
            let ha = k.hom(cone.apex, g.on0[d]);
            Fun {
                on_obj: leg.on_obj.iter().map(|&c| k.local1(k.comp1(h, ha.cells1[c]))).collect(),
                on_mor: leg.on_mor.iter().map(|&t| k.local2(k.whisker_before(h, ha.cells2[t]))).collect(),
            }
        })
        .collect()
}

/// The modification `θ^* c` for a 2-cell `θ: h ⇒ h'` into the apex.
pub fn pull_modification(k: &TwoCat, g: &TwoFun, cone: &StrictCone, theta: usize) -> Modification {
    Modification {
        comps: cone
            .legs
            .iter()
            .enumerate()
            .map(|(d, leg)| {
                let ha = k.hom(cone.apex, g.on0[d]);
                NatTrans { comp: leg.on_obj.iter().map(|&c| k.local2(k.whisker_after(theta, ha.cells1[c]))).collect() }
            })
            .collect(),
    }
}

fn comparison_is_iso(k: &TwoCat, g: &TwoFun, cone: &StrictCone, x: usize, lim: &LimitCat) -> bool {
    let hx = k.hom(x, cone.apex);
    if hx.cells1.len() != lim.cat.n_obj() || hx.cells2.len() != lim.cat.n_mor() {
        return false;
    }
    let mut seen = vec![false; lim.cat.n_obj()];
    for &h in &hx.cells1 {
        match lim.cone_index(&pull_cone(k, g, cone, h)) {
            Some(i) if !seen[i] => seen[i] = true,
            _ => return false,
        }
    }
    let mut seen2 = vec![false; lim.cat.n_mor()];
    let mut mod_index: HashMap<(usize, &Modification), usize> = HashMap::new();
    for (i, m) in lim.mods.iter().enumerate() {
        mod_index.insert((lim.cat.src(i), m), i);
    }
    for &t in &hx.cells2 {
        let src = lim.cone_index(&pull_cone(k, g, cone, k.cells2[t].src)).unwrap();
        let m = pull_modification(k, g, cone, t);
        match mod_index.get(&(src, &m)) {
            Some(&i) if !seen2[i] => seen2[i] = true,
            _ => return false,
        }
    }
    true
}

/// A monad in a 2-category: an endo-1-cell with multiplication and unit 2-cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monad2 {
    pub object: usize,
    pub t: usize,
    pub mu: usize,
    pub eta: usize,
}

impl Monad2 {
    pub fn validate(&self, k: &TwoCat) -> Result<()> {
        let (a, t) = (self.object, self.t);
        let tt = k.comp1(t, t);
        let ok = k.src1(t) == a
            && k.tgt1(t) == a
            && k.cells2[self.mu].src == tt
            && k.cells2[self.mu].tgt == t
            && k.cells2[self.eta].src == k.id1(a)
            && k.cells2[self.eta].tgt == t;
        if !ok {
            return Err(TwoCatError::Invalid("monad boundaries".into()));
        }
        // μ ∘ tμ = μ ∘ μt ; μ ∘ ηt = 1 = μ ∘ tη   (diagrammatic: first t then t)
        let mu_t = k.whisker_after(self.mu, t);
        let t_mu = k.whisker_before(t, self.mu);
        let assoc = k.vcomp(mu_t, self.mu) == k.vcomp(t_mu, self.mu);
        let eta_t = k.whisker_after(self.eta, t);
        let t_eta = k.whisker_before(t, self.eta);
        let unit = k.vcomp(eta_t, self.mu) == k.id2(t) && k.vcomp(t_eta, self.mu) == k.id2(t);
        if !(assoc && unit) {
            return Err(TwoCatError::Invalid("monad laws".into()));
        }
        Ok(())
    }
}

/// An Eilenberg-Moore object: `u: apex → A` with action `υ: u;t ⇒ u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmObject {
    pub apex: usize,
    pub u: usize,
    pub action: usize,
}

/// Algebras for the monad `K(x, t)` on `K(x, A)`: pairs `(h, ξ: h;t ⇒ h)`.
pub fn hom_algebras(k: &TwoCat, m: &Monad2, x: usize) -> Vec<(usize, usize)> {
    let hx = k.hom(x, m.object);
    let mut out = Vec::new();
    for &h in &hx.cells1 {
        let ht = k.comp1(h, m.t);
        for &xi in &hx.cells2 {
            if k.cells2[xi].src != ht || k.cells2[xi].tgt != h {
                continue;
            }
            if is_hom_algebra(k, m, h, xi) {
                out.push((h, xi));
            }
        }
    }
    out
}

fn is_hom_algebra(k: &TwoCat, m: &Monad2, h: usize, xi: usize) -> bool {
    // unit: (h η) ; ξ = 1_h ; assoc: (h μ) ; ξ = (ξ t) ; ξ
    let h_eta = k.whisker_before(h, m.eta);
    let h_mu = k.whisker_before(h, m.mu);
    let xi_t = k.whisker_after(xi, m.t);
    k.vcomp(h_eta, xi) == k.id2(h) && k.vcomp(h_mu, xi) == k.vcomp(xi_t, xi)
}

fn em_comparison_ok(k: &TwoCat, m: &Monad2, em: &EmObject) -> Option<usize> {
    for x in 0..k.n_obj() {
        let algs = hom_algebras(k, m, x);
        let hx = k.hom(x, em.apex);
        if hx.cells1.len() != algs.len() {
            return Some(x);
        }
        let mut seen = vec![false; algs.len()];
        for &h in &hx.cells1 {
            let img = (k.comp1(h, em.u), k.whisker_before(h, em.action));
            match algs.iter().position(|a| *a == img) {
                Some(i) if !seen[i] => seen[i] = true,
                _ => return Some(x),
            }
        }
        // algebra 2-cells θ: h ⇒ h' with (θ t) ; ξ' = ξ ; θ
        let mut alg2 = 0;
        for &(h, xi) in &algs {
            for &(h2, xi2) in &algs {
                for &th in &k.hom(x, m.object).cells2 {
                    if k.cells2[th].src == h
                        && k.cells2[th].tgt == h2
                        && k.vcomp(k.whisker_after(th, m.t), xi2) == k.vcomp(xi, th)
                    {
                        alg2 += 1;
                    }
                }
            }
        }
        if alg2 != hx.cells2.len() {
            return Some(x);
        }
        let mut imgs: Vec<usize> = hx.cells2.iter().map(|&th| k.whisker_after(th, em.u)).collect();
        imgs.sort_unstable();
        imgs.dedup();
        if imgs.len() != hx.cells2.len() {
            return Some(x);
        }
    }
    None
}

/// Searches for an Eilenberg-Moore object of `m` in `k`.
pub fn em_object(k: &TwoCat, m: &Monad2) -> Result<EmObject> {
    m.validate(k)?;
    for apex in 0..k.n_obj() {
        for (u, xi) in hom_algebras(k, m, apex) {
            let em = EmObject { apex, u, action: xi };
            if em_comparison_ok(k, m, &em).is_none() {
                return Ok(em);
            }
        }
    }
    Err(TwoCatError::NotFound("no Eilenberg-Moore object".into()))
}

/// Checks a candidate Eilenberg-Moore object, returning a failing probe.
pub fn check_em_object(k: &TwoCat, m: &Monad2, em: &EmObject) -> Option<usize> {
    em_comparison_ok(k, m, em)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow2() -> TwoCat {
        TwoCat::locally_discrete(&FinCat::arrow())
    }

    #[test]
    fn constant_terminal_strict_count() {
        let d = arrow2();
        let one = CatWeight::constant(&d, &FinCat::terminal());
        assert_eq!(count_w_transformations(&one, &one, WKind::Strict, &d, None), 1);
    }

    #[test]
    fn lax_at_least_strict() {
        let d = arrow2();
        let two = CatWeight::constant(&d, &FinCat::arrow());
        let s = count_w_transformations(&two, &two, WKind::Strict, &d, None);
        let l = count_w_transformations(&two, &two, WKind::Lax, &d, None);
        let p = count_w_transformations(&two, &two, WKind::Pseudo, &d, None);
        assert!(l >= s && p >= s);
        assert_eq!(s, 3);
        for w in enumerate_w_transformations(&two, &two, WKind::Lax, &d, None) {
            w.validate(&two, &two, &d).unwrap();
        }
    }

    #[test]
    fn pseudo_is_lax_with_invertible_cells() {
        let d = arrow2();
        let a = CatWeight::constant(&d, &FinCat::free_iso());
        let lax = enumerate_w_transformations(&a, &a, WKind::Lax, &d, None);
        let pseudo = count_w_transformations(&a, &a, WKind::Pseudo, &d, None);
        let inv = lax.iter().filter(|w| w.cells.iter().all(|t| t.comp.iter().all(|&c| a.values[0].is_iso(c)))).count();
        assert_eq!(pseudo, inv);
    }

    #[test]
    fn product_is_limit_in_cat() {
        let d = TwoCat::locally_discrete(&FinCat::discrete(&["x", "y"]));
        let phi = CatWeight::constant(&d, &FinCat::terminal());
        let g = CatWeight {
            values: vec![FinCat::arrow(), FinCat::free_iso()],
            on1: vec![Fun::identity(&FinCat::arrow()), Fun::identity(&FinCat::free_iso())],
            on2: vec![
                NatTrans::identity(&Fun::identity(&FinCat::arrow()), &FinCat::arrow()),
                NatTrans::identity(&Fun::identity(&FinCat::free_iso()), &FinCat::free_iso()),
            ],
        };
        g.validate(&d).unwrap();
        let lim = weighted_limit_cat(&phi, &g, &d);
        let prod = FinCat::product(&FinCat::arrow(), &FinCat::free_iso());
        assert!(crate::cat_core::isomorphic(&lim.cat, &prod));
    }

    #[test]
    fn sub_of_cat_is_valid() {
        let k = TwoCat::sub_of_cat(&[("1".into(), FinCat::terminal()), ("2".into(), FinCat::arrow())]);
        assert!(validate_two_cat(&k).is_valid());
        assert_eq!(k.hom(1, 1).cells1.len(), 3);
    }

    #[test]
    fn representable_limit_is_evaluation() {
        let k = TwoCat::sub_of_cat(&[("1".into(), FinCat::terminal()), ("2".into(), FinCat::arrow())]);
        let d = arrow2();
        let phi = CatWeight::representable(&d, 0);
        phi.validate(&d).unwrap();
        // the unique functor 2 → 1 as a diagram
        let u = (0..k.cells1.len()).find(|&f| k.src1(f) == 1 && k.tgt1(f) == 0).unwrap();
        let dg = TwoFun {
            on0: vec![1, 0],
            on1: d
                .cells1
                .iter()
                .map(|m| if m.src == m.tgt { k.id1(if m.src == 0 { 1 } else { 0 }) } else { u })
                .collect(),
            on2: vec![],
        };
        let dg = TwoFun { on2: dg.on1.iter().map(|&f| k.id2(f)).collect(), ..dg };
        dg.validate(&d, &k).unwrap();
        // apex g(0) = 2 with legs given by Yoneda: 1_d ↦ identity, the arrow ↦ u
        let legs: Vec<Fun> = (0..d.n_obj())
            .map(|e| {
                let rep = &phi.values[e];
                Fun {
                    on_obj: (0..rep.n_obj()).map(|c| k.local1(dg.on1[d.hom(0, e).cells1[c]])).collect(),
                    on_mor: (0..rep.n_mor()).map(|t| k.local2(dg.on2[d.hom(0, e).cells2[t]])).collect(),
                }
            })
            .collect();
        let cone = StrictCone { apex: 1, legs };
        let r = check_limit_in_two_cat(&k, &d, &phi, &dg, &cone).unwrap();
        assert!(r.ok);
    }

    #[test]
    fn identity_monad_em_object() {
        let k = TwoCat::locally_discrete(&FinCat::terminal());
        let m = Monad2 { object: 0, t: k.id1(0), mu: k.id2(k.id1(0)), eta: k.id2(k.id1(0)) };
        let em = em_object(&k, &m).unwrap();
        assert_eq!(em.apex, 0);
    }
}
