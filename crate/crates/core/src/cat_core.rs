//! Finite categories, functors and natural transformations.
//!
//! A [`FinCat`] stores its composition table as one row per morphism,
//! indexed by the morphisms leaving that morphism's target. Presentations
//! by generators and relations are realized by a coset enumeration over
//! the right Cayley graph of each `Hom(o, -)`; normal forms are the
//! shortlex-least generator words.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("missing composition of `{after}` then `{then}`")]
    MissingComposition { after: String, then: String },
    #[error("ill-typed composition entry: {0}")]
    IllTyped(String),
    #[error("identity for `{0}` is missing or not an endomorphism")]
    BadIdentity(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid natural transformation: {0}")]
    InvalidTransformation(String),
    #[error("relation `{0}` is not parallel")]
    BadRelation(String),
}

pub type Result<T> = std::result::Result<T, CatError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category with an explicit composition table.
#[derive(Debug, Clone)]
pub struct FinCat {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    ids: Vec<usize>,
    out: Vec<Vec<usize>>,
    pos: Vec<usize>,
    rows: Vec<Vec<u32>>,
    homs: HashMap<(usize, usize), Vec<usize>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.ids == other.ids
            && self.rows == other.rows
    }
}

impl FinCat {
    /// Builds a category from a composition oracle.
    ///
    /// `compose(f, g)` must return `f ; g` (first `f`, then `g`) for every
    /// composable pair. Laws are not checked here; see [`validate_category`].
    pub fn from_fn<F>(objects: Vec<String>, morphisms: Vec<Morphism>, ids: Vec<usize>, mut compose: F) -> Result<FinCat>
    where
        F: FnMut(usize, usize) -> Option<usize>,
    {
        let n = objects.len();
        if ids.len() != n {
            return Err(CatError::BadIdentity("identity list length".into()));
        }
        for (o, &i) in ids.iter().enumerate() {
            let ok = morphisms.get(i).map(|m| m.src == o && m.tgt == o).unwrap_or(false);
            if !ok {
                return Err(CatError::BadIdentity(objects[o].clone()));
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut pos = vec![0; morphisms.len()];
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= n || m.tgt >= n {
                return Err(CatError::UnknownObject(m.name.clone()));
            }
            pos[i] = out[m.src].len();
            out[m.src].push(i);
        }
        let mut rows = Vec::with_capacity(morphisms.len());
        for (f, m) in morphisms.iter().enumerate() {
            let mut row = Vec::with_capacity(out[m.tgt].len());
            for &g in &out[m.tgt] {
                let c = compose(f, g).ok_or_else(|| CatError::MissingComposition {
                    after: m.name.clone(),
                    then: morphisms[g].name.clone(),
                })?;
                let cm = morphisms.get(c).ok_or_else(|| {
                    CatError::IllTyped(format!("{} ; {} gives index {}", m.name, morphisms[g].name, c))
                })?;
                if cm.src != m.src || cm.tgt != morphisms[g].tgt {
                    return Err(CatError::IllTyped(format!(
                        "{} ; {} = {} has the wrong endpoints",
                        m.name, morphisms[g].name, cm.name
                    )));
                }
                row.push(c as u32);
            }
            rows.push(row);
        }
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            homs.entry((m.src, m.tgt)).or_default().push(i);
        }
        Ok(FinCat { objects, morphisms, ids, out, pos, rows, homs })
    }

    pub fn n_obj(&self) -> usize {
        self.objects.len()
    }

    pub fn n_mor(&self) -> usize {
        self.morphisms.len()
    }

    pub fn id(&self, o: usize) -> usize {
        self.ids[o]
    }

    pub fn identities(&self) -> &[usize] {
        &self.ids
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.ids[self.morphisms[f].src] == f
    }

    /// `f ; g`, i.e. `g ∘ f`. Panics if not composable.
    pub fn seq(&self, f: usize, g: usize) -> usize {
        let m = &self.morphisms[f];
        assert_eq!(m.tgt, self.morphisms[g].src, "non-composable pair");
        self.rows[f][self.pos[g]] as usize
    }

    /// `g ∘ f`.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.seq(f, g)
    }

    /// Composite of a path given in application order, starting at `o`.
    pub fn seq_path(&self, o: usize, path: &[usize]) -> usize {
        path.iter().fold(self.ids[o], |acc, &g| self.seq(acc, g))
    }

    pub fn out_of(&self, o: usize) -> &[usize] {
        &self.out[o]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn obj_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn mor_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let m = &self.morphisms[f];
        self.hom(m.tgt, m.src)
            .iter()
            .copied()
            .find(|&g| self.seq(f, g) == self.ids[m.src] && self.seq(g, f) == self.ids[m.tgt])
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    /// Discrete category on the given object names.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinCat {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let morphisms =
            objects.iter().enumerate().map(|(i, o)| Morphism { name: format!("1_{o}"), src: i, tgt: i }).collect();
        let ids = (0..objects.len()).collect();
        FinCat::from_fn(objects, morphisms, ids, |f, _| Some(f)).expect("discrete category")
    }

    pub fn empty() -> FinCat {
        FinCat::discrete::<&str>(&[])
    }

    pub fn terminal() -> FinCat {
        FinCat::discrete(&["*"])
    }

    /// The ordinal `[n]` as a category: objects `0..n`, one arrow `i→j` for `i ≤ j`.
    pub fn ordinal(n: usize) -> FinCat {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FinCat::poset(&names, |i, j| i <= j).expect("ordinal")
    }

    /// The preorder on `names` with an arrow `i→j` whenever `le(i, j)`.
    /// `le` must be reflexive and transitive.
    pub fn poset<S: AsRef<str>>(names: &[S], le: impl Fn(usize, usize) -> bool) -> Result<FinCat> {
        let n = names.len();
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let mut ids = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if le(i, j) {
                    let name = if i == j {
                        ids[i] = morphisms.len();
                        format!("1_{}", objects[i])
                    } else {
                        format!("{}<{}", objects[i], objects[j])
                    };
                    index.insert((i, j), morphisms.len());
                    morphisms.push(Morphism { name, src: i, tgt: j });
                }
            }
        }
        let ms = morphisms.clone();
        FinCat::from_fn(objects, morphisms, ids, |f, g| index.get(&(ms[f].src, ms[g].tgt)).copied())
    }

    /// The free-living arrow `𝟚`.
    pub fn arrow() -> FinCat {
        FinCat::ordinal(2)
    }

    /// The free-living isomorphism `0 ≅ 1`.
    pub fn free_iso() -> FinCat {
        FinCat::chaotic(&["0", "1"])
    }

    /// The chaotic (indiscrete) category: exactly one arrow between any two objects.
    pub fn chaotic<S: AsRef<str>>(names: &[S]) -> FinCat {
        FinCat::poset(names, |_, _| true).expect("chaotic category")
    }

    /// Cartesian product of two categories.
    pub fn product(a: &FinCat, b: &FinCat) -> FinCat {
        let nb = b.n_obj();
        let mb = b.n_mor();
        let objects = a.objects.iter().flat_map(|x| b.objects.iter().map(move |y| format!("({x},{y})"))).collect();
        let mut morphisms = Vec::with_capacity(a.n_mor() * mb);
        for f in &a.morphisms {
            for g in &b.morphisms {
                morphisms.push(Morphism {
                    name: format!("({},{})", f.name, g.name),
                    src: f.src * nb + g.src,
                    tgt: f.tgt * nb + g.tgt,
                });
            }
        }
        let ids =
            (0..a.n_obj()).flat_map(|x| (0..nb).map(move |y| (x, y))).map(|(x, y)| a.id(x) * mb + b.id(y)).collect();
        FinCat::from_fn(objects, morphisms, ids, |u, v| {
            let (f1, g1) = (u / mb, u % mb);
            let (f2, g2) = (v / mb, v % mb);
            Some(a.seq(f1, f2) * mb + b.seq(g1, g2))
        })
        .expect("product category")
    }

    /// Full subcategory on the given objects (in the given order), with the
    /// inclusion functor.
    pub fn full_subcategory(&self, objs: &[usize]) -> (FinCat, Fun) {
        let mut new_of = HashMap::new();
        for (i, &o) in objs.iter().enumerate() {
            new_of.insert(o, i);
        }
        let mut morphisms = Vec::new();
        let mut on_mor = Vec::new();
        let mut back = HashMap::new();
        for (f, m) in self.morphisms.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (new_of.get(&m.src), new_of.get(&m.tgt)) {
                back.insert(f, morphisms.len());
                on_mor.push(f);
                morphisms.push(Morphism { name: m.name.clone(), src: s, tgt: t });
            }
        }
        let ids = objs.iter().map(|&o| back[&self.id(o)]).collect();
        let objects = objs.iter().map(|&o| self.objects[o].clone()).collect();
        let cat = FinCat::from_fn(objects, morphisms, ids, |f, g| back.get(&self.seq(on_mor[f], on_mor[g])).copied())
            .expect("full subcategory");
        (cat, Fun { on_obj: objs.to_vec(), on_mor })
    }

    /// Opposite category.
    pub fn opposite(&self) -> FinCat {
        let morphisms =
            self.morphisms.iter().map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src }).collect();
        FinCat::from_fn(self.objects.clone(), morphisms, self.ids.clone(), |f, g| Some(self.seq(g, f)))
            .expect("opposite category")
    }

    /// Connected components of the underlying graph.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n_obj());
        for m in &self.morphisms {
            uf.union(m.src, m.tgt);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for o in 0..self.n_obj() {
            let r = uf.find(o);
            let k = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(o);
        }
        groups
    }
}

/// Result of checking category laws on a table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub unit_failures: Vec<String>,
    pub assoc_failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.unit_failures.is_empty() && self.assoc_failures.is_empty()
    }
}

/// Exhaustively checks the unit and associativity laws.
pub fn validate_category(c: &FinCat) -> ValidationReport {
    let mut rep = ValidationReport::default();
    for (f, m) in c.morphisms.iter().enumerate() {
        if c.seq(c.id(m.src), f) != f {
            rep.unit_failures.push(format!("1_{} ; {} != {}", c.objects[m.src], m.name, m.name));
        }
        if c.seq(f, c.id(m.tgt)) != f {
            rep.unit_failures.push(format!("{} ; 1_{} != {}", m.name, c.objects[m.tgt], m.name));
        }
    }
    for f in 0..c.n_mor() {
        for &g in c.out_of(c.tgt(f)) {
            let fg = c.seq(f, g);
            for &h in c.out_of(c.tgt(g)) {
                if c.seq(fg, h) != c.seq(f, c.seq(g, h)) {
                    rep.assoc_failures
                        .push(format!("({} ; {}) ; {}", c.morphisms[f].name, c.morphisms[g].name, c.morphisms[h].name));
                }
            }
        }
    }
    rep
}

/// A functor, given by its action on object and morphism indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fun {
    pub on_obj: Vec<usize>,
    pub on_mor: Vec<usize>,
}

impl Fun {
    pub fn identity(c: &FinCat) -> Fun {
        Fun { on_obj: (0..c.n_obj()).collect(), on_mor: (0..c.n_mor()).collect() }
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &Fun) -> Fun {
        Fun {
            on_obj: self.on_obj.iter().map(|&o| next.on_obj[o]).collect(),
            on_mor: self.on_mor.iter().map(|&f| next.on_mor[f]).collect(),
        }
    }

    /// Constant functor at object `o` of `tgt`.
    pub fn constant(src: &FinCat, tgt: &FinCat, o: usize) -> Fun {
        Fun { on_obj: vec![o; src.n_obj()], on_mor: vec![tgt.id(o); src.n_mor()] }
    }

    pub fn validate(&self, src: &FinCat, tgt: &FinCat) -> Result<()> {
        if self.on_obj.len() != src.n_obj() || self.on_mor.len() != src.n_mor() {
            return Err(CatError::InvalidFunctor("arity mismatch".into()));
        }
        if self.on_obj.iter().any(|&o| o >= tgt.n_obj()) || self.on_mor.iter().any(|&f| f >= tgt.n_mor()) {
            return Err(CatError::InvalidFunctor("index out of range".into()));
        }
        for (f, m) in src.morphisms.iter().enumerate() {
            let im = self.on_mor[f];
            if tgt.src(im) != self.on_obj[m.src] || tgt.tgt(im) != self.on_obj[m.tgt] {
                return Err(CatError::InvalidFunctor(format!("image of `{}` has wrong endpoints", m.name)));
            }
        }
        for o in 0..src.n_obj() {
            if self.on_mor[src.id(o)] != tgt.id(self.on_obj[o]) {
                return Err(CatError::InvalidFunctor(format!("identity of `{}` not preserved", src.objects[o])));
            }
        }
        for f in 0..src.n_mor() {
            for &g in src.out_of(src.tgt(f)) {
                if self.on_mor[src.seq(f, g)] != tgt.seq(self.on_mor[f], self.on_mor[g]) {
                    return Err(CatError::InvalidFunctor(format!(
                        "composite `{} ; {}` not preserved",
                        src.morphisms[f].name, src.morphisms[g].name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.on_obj.iter().all(|o| seen.insert(*o))
    }

    pub fn is_fully_faithful(&self, src: &FinCat, tgt: &FinCat) -> bool {
        for a in 0..src.n_obj() {
            for b in 0..src.n_obj() {
                let mut imgs: Vec<usize> = src.hom(a, b).iter().map(|&f| self.on_mor[f]).collect();
                imgs.sort_unstable();
                imgs.dedup();
                if imgs.len() != src.hom(a, b).len() || imgs.len() != tgt.hom(self.on_obj[a], self.on_obj[b]).len() {
                    return false;
                }
            }
        }
        true
    }

    /// Injective on objects and fully faithful.
    pub fn is_full_embedding(&self, src: &FinCat, tgt: &FinCat) -> bool {
        self.is_injective_on_objects() && self.is_fully_faithful(src, tgt)
    }
}

/// A natural transformation, given by one component per source object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatTrans {
    pub comp: Vec<usize>,
}

impl NatTrans {
    pub fn identity(f: &Fun, tgt: &FinCat) -> NatTrans {
        NatTrans { comp: f.on_obj.iter().map(|&o| tgt.id(o)).collect() }
    }

    /// Vertical composite: first `self`, then `next`.
    pub fn then(&self, next: &NatTrans, tgt: &FinCat) -> NatTrans {
        NatTrans { comp: self.comp.iter().zip(&next.comp).map(|(&a, &b)| tgt.seq(a, b)).collect() }
    }

    /// `H α` for `H: B → C`.
    pub fn whisker_post(&self, h: &Fun) -> NatTrans {
        NatTrans { comp: self.comp.iter().map(|&a| h.on_mor[a]).collect() }
    }

    /// `α K` for `K: A → B`.
    pub fn whisker_pre(&self, k: &Fun) -> NatTrans {
        NatTrans { comp: k.on_obj.iter().map(|&o| self.comp[o]).collect() }
    }

    /// Horizontal composite `β * α` where `α: F ⇒ F'` (A → B), `β: G ⇒ G'` (B → C).
    pub fn horizontal(alpha: &NatTrans, f_dom: &Fun, beta: &NatTrans, g_cod: &Fun, c: &FinCat) -> NatTrans {
        // (β * α)_a = β_{F a} ; G'(α_a)
        NatTrans {
            comp: (0..alpha.comp.len())
                .map(|a| c.seq(beta.comp[f_dom.on_obj[a]], g_cod.on_mor[alpha.comp[a]]))
                .collect(),
        }
    }

    pub fn is_identity(&self, tgt: &FinCat) -> bool {
        self.comp.iter().all(|&a| tgt.is_identity(a))
    }

    pub fn validate(&self, f: &Fun, g: &Fun, src: &FinCat, tgt: &FinCat) -> Result<()> {
        if self.comp.len() != src.n_obj() {
            return Err(CatError::InvalidTransformation("arity mismatch".into()));
        }
        for o in 0..src.n_obj() {
            let a = self.comp[o];
            if a >= tgt.n_mor() || tgt.src(a) != f.on_obj[o] || tgt.tgt(a) != g.on_obj[o] {
                return Err(CatError::InvalidTransformation(format!("component at `{}`", src.objects[o])));
            }
        }
        for (u, m) in src.morphisms.iter().enumerate() {
            if tgt.seq(self.comp[m.src], g.on_mor[u]) != tgt.seq(f.on_mor[u], self.comp[m.tgt]) {
                return Err(CatError::InvalidTransformation(format!("naturality at `{}`", m.name)));
            }
        }
        Ok(())
    }
}

/// Enumerates every functor `a → b`, in lexicographic order of object
/// images and then morphism images.
pub fn enumerate_functors(a: &FinCat, b: &FinCat) -> Vec<Fun> {
    let mut out = Vec::new();
    enumerate_functors_with(a, b, None, &mut |f| {
        out.push(f.clone());
        true
    });
    out
}

/// Counts functors `a → b` without storing them.
pub fn count_functors(a: &FinCat, b: &FinCat) -> usize {
    let mut n = 0;
    enumerate_functors_with(a, b, None, &mut |_| {
        n += 1;
        true
    });
    n
}

/// Backtracking functor search. `fixed_obj` optionally pins object images.
/// The callback returns `false` to stop the search.
pub fn enumerate_functors_with(
    a: &FinCat,
    b: &FinCat,
    fixed_obj: Option<&[Option<usize>]>,
    visit: &mut dyn FnMut(&Fun) -> bool,
) {
    let n = a.n_obj();
    // steps: object o, then the non-identity morphisms whose endpoints are now both placed
    let mut steps: Vec<Step> = Vec::new();
    for o in 0..n {
        steps.push(Step::Obj(o));
        for (f, m) in a.morphisms.iter().enumerate() {
            if !a.is_identity(f) && m.src.max(m.tgt) == o {
                steps.push(Step::Mor(f));
            }
        }
    }
    // triples (x, y, x;y) touching each morphism
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); a.n_mor()];
    for x in 0..a.n_mor() {
        for &y in a.out_of(a.tgt(x)) {
            let z = a.seq(x, y);
            checks[x].push((x, y, z));
            if y != x {
                checks[y].push((x, y, z));
            }
            if z != x && z != y {
                checks[z].push((x, y, z));
            }
        }
    }
    let mut st = FunSearch {
        a,
        b,
        steps,
        checks,
        obj: vec![usize::MAX; n],
        mor: vec![usize::MAX; a.n_mor()],
        fixed: fixed_obj,
        stop: false,
    };
    st.go(0, visit);
}

enum Step {
    Obj(usize),
    Mor(usize),
}

struct FunSearch<'a> {
    a: &'a FinCat,
    b: &'a FinCat,
    steps: Vec<Step>,
    checks: Vec<Vec<(usize, usize, usize)>>,
    obj: Vec<usize>,
    mor: Vec<usize>,
    fixed: Option<&'a [Option<usize>]>,
    stop: bool,
}

impl FunSearch<'_> {
    fn consistent(&self, f: usize) -> bool {
        for &(x, y, z) in &self.checks[f] {
            let (fx, fy, fz) = (self.mor[x], self.mor[y], self.mor[z]);
            if fx != usize::MAX && fy != usize::MAX && fz != usize::MAX && self.b.seq(fx, fy) != fz {
                return false;
            }
        }
        true
    }

    fn go(&mut self, k: usize, visit: &mut dyn FnMut(&Fun) -> bool) {
        if self.stop {
            return;
        }
        if k == self.steps.len() {
            let f = Fun { on_obj: self.obj.clone(), on_mor: self.mor.clone() };
            if !visit(&f) {
                self.stop = true;
            }
            return;
        }
        match self.steps[k] {
            Step::Obj(o) => {
                let cands: Vec<usize> = match self.fixed.and_then(|fx| fx[o]) {
                    Some(t) => vec![t],
                    None => (0..self.b.n_obj()).collect(),
                };
                let ido = self.a.id(o);
                for t in cands {
                    self.obj[o] = t;
                    self.mor[ido] = self.b.id(t);
                    if self.consistent(ido) {
                        self.go(k + 1, visit);
                    }
                    if self.stop {
                        break;
                    }
                }
                self.obj[o] = usize::MAX;
                self.mor[ido] = usize::MAX;
            }
            Step::Mor(f) => {
                let m = &self.a.morphisms[f];
                let cands: Vec<usize> = self.b.hom(self.obj[m.src], self.obj[m.tgt]).to_vec();
                for g in cands {
                    self.mor[f] = g;
                    if self.consistent(f) {
                        self.go(k + 1, visit);
                    }
                    if self.stop {
                        break;
                    }
                }
                self.mor[f] = usize::MAX;
            }
        }
    }
}

/// Enumerates natural transformations `f ⇒ g` between functors `a → b`.
pub fn enumerate_nat_trans(f: &Fun, g: &Fun, a: &FinCat, b: &FinCat) -> Vec<NatTrans> {
    let n = a.n_obj();
    let mut out = Vec::new();
    let mut comp = vec![usize::MAX; n];
    // morphisms checked once both endpoints are assigned
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, m) in a.morphisms.iter().enumerate() {
        due[m.src.max(m.tgt)].push(u);
    }
    fn rec(
        o: usize,
        f: &Fun,
        g: &Fun,
        a: &FinCat,
        b: &FinCat,
        due: &[Vec<usize>],
        comp: &mut Vec<usize>,
        out: &mut Vec<NatTrans>,
    ) {
        if o == a.n_obj() {
            out.push(NatTrans { comp: comp.clone() });
            return;
        }
        for &c in b.hom(f.on_obj[o], g.on_obj[o]) {
            comp[o] = c;
            let ok = due[o].iter().all(|&u| {
                let m = &a.morphisms[u];
                b.seq(comp[m.src], g.on_mor[u]) == b.seq(f.on_mor[u], comp[m.tgt])
            });
            if ok {
                rec(o + 1, f, g, a, b, due, comp, out);
            }
        }
        comp[o] = usize::MAX;
    }
    rec(0, f, g, a, b, &due, &mut comp, &mut out);
    out
}

/// The functor category `[a, b]` together with the functors and
/// transformations its objects and morphisms stand for.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub cat: FinCat,
    pub functors: Vec<Fun>,
    pub transformations: Vec<NatTrans>,
}

impl FunctorCategory {
    pub fn functor_index(&self, f: &Fun) -> Option<usize> {
        self.functors.iter().position(|x| x == f)
    }
}

pub fn functor_category(a: &FinCat, b: &FinCat) -> FunctorCategory {
    let functors = enumerate_functors(a, b);
    let mut transformations = Vec::new();
    let mut morphisms = Vec::new();
    let mut index: HashMap<(usize, NatTrans), usize> = HashMap::new();
    let mut ids = vec![0; functors.len()];
    for (i, fi) in functors.iter().enumerate() {
        for (j, fj) in functors.iter().enumerate() {
            for t in enumerate_nat_trans(fi, fj, a, b) {
                if i == j && t.is_identity(b) {
                    ids[i] = morphisms.len();
                }
                index.insert((i, t.clone()), morphisms.len());
                morphisms.push(Morphism { name: format!("t{}", morphisms.len()), src: i, tgt: j });
                transformations.push(t);
            }
        }
    }
    let objects = (0..functors.len()).map(|i| format!("F{i}")).collect();
    let tr = transformations.clone();
    let ms = morphisms.clone();
    let cat = FinCat::from_fn(objects, morphisms, ids, |x, y| {
        let t = tr[x].then(&tr[y], b);
        index.get(&(ms[x].src, t)).copied()
    })
    .expect("functor category");
    FunctorCategory { cat, functors, transformations }
}

/// A finite presentation of a category by generators and relations.
/// Words are in application order: `[g, h]` means `h ∘ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatPresentation {
    pub objects: Vec<String>,
    pub generators: Vec<Morphism>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub src: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionBudget {
    pub max_morphisms: usize,
    pub max_steps: usize,
}

impl CompletionBudget {
    /// `max_morphisms = 10 · n²` for `n` input morphisms, `max_steps = 10⁶`.
    pub fn for_size(n: usize) -> Self {
        let n = n.max(1);
        CompletionBudget { max_morphisms: 10 * n * n, max_steps: 1_000_000 }
    }
}

impl Default for CompletionBudget {
    fn default() -> Self {
        CompletionBudget { max_morphisms: 100_000, max_steps: 10_000_000 }
    }
}

/// A realized presentation: the category, the shortlex normal form of every
/// morphism, and the image of every generator.
#[derive(Debug, Clone)]
pub struct Realized {
    pub cat: FinCat,
    pub words: Vec<Vec<usize>>,
    pub gen_image: Vec<usize>,
}

impl Realized {
    /// Evaluates a word (application order) starting at object `o`.
    pub fn eval(&self, o: usize, word: &[usize]) -> usize {
        word.iter().fold(self.cat.id(o), |acc, &g| self.cat.seq(acc, self.gen_image[g]))
    }
}

impl CatPresentation {
    pub fn new(objects: Vec<String>) -> Self {
        CatPresentation { objects, generators: Vec::new(), relations: Vec::new() }
    }

    pub fn add_generator(&mut self, name: impl Into<String>, src: usize, tgt: usize) -> usize {
        self.generators.push(Morphism { name: name.into(), src, tgt });
        self.generators.len() - 1
    }

    pub fn add_relation(&mut self, src: usize, lhs: Vec<usize>, rhs: Vec<usize>) {
        self.relations.push(Relation { src, lhs, rhs });
    }

    fn word_target(&self, src: usize, w: &[usize]) -> Option<usize> {
        let mut cur = src;
        for &g in w {
            let m = self.generators.get(g)?;
            if m.src != cur {
                return None;
            }
            cur = m.tgt;
        }
        Some(cur)
    }

    pub fn check(&self) -> Result<()> {
        for (i, r) in self.relations.iter().enumerate() {
            let a = self.word_target(r.src, &r.lhs);
            let b = self.word_target(r.src, &r.rhs);
            if a.is_none() || a != b {
                return Err(CatError::BadRelation(format!("#{i}")));
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// Coset table for `Hom(o, -)` of a presented category.
struct Enumeration<'p> {
    p: &'p CatPresentation,
    gens_out: &'p [Vec<usize>],
    gpos: &'p [usize],
    rels_at: &'p [Vec<usize>],
    obj: Vec<usize>,
    table: Vec<Vec<u32>>,
    parent: Vec<usize>,
    live: usize,
    steps: usize,
}

impl<'p> Enumeration<'p> {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn new_state(&mut self, o: usize) -> usize {
        self.obj.push(o);
        self.table.push(vec![NONE; self.gens_out[o].len()]);
        self.parent.push(self.obj.len() - 1);
        self.live += 1;
        self.obj.len() - 1
    }

    fn step(&mut self, budget: &CompletionBudget, offset: usize) -> Result<()> {
        self.steps += 1;
        if self.steps > budget.max_steps {
            return Err(CatError::BudgetExceeded(format!("more than {} steps", budget.max_steps)));
        }
        if self.live + offset > budget.max_morphisms {
            return Err(CatError::BudgetExceeded(format!("more than {} morphisms", budget.max_morphisms)));
        }
        Ok(())
    }

    fn act_define(&mut self, s: usize, g: usize, budget: &CompletionBudget, offset: usize) -> Result<usize> {
        let s = self.find(s);
        let k = self.gpos[g];
        let t = self.table[s][k];
        if t != NONE {
            return Ok(self.find(t as usize));
        }
        self.step(budget, offset)?;
        let n = self.new_state(self.p.generators[g].tgt);
        self.table[s][k] = n as u32;
        Ok(n)
    }

    fn trace_define(&mut self, s: usize, w: &[usize], budget: &CompletionBudget, offset: usize) -> Result<usize> {
        let mut cur = s;
        for &g in w {
            cur = self.act_define(cur, g, budget, offset)?;
        }
        Ok(self.find(cur))
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((x, y)) = queue.pop() {
            let (x, y) = (self.find(x), self.find(y));
            if x == y {
                continue;
            }
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            self.parent[hi] = lo;
            self.live -= 1;
            let row = std::mem::take(&mut self.table[hi]);
            for (k, &t) in row.iter().enumerate() {
                if t == NONE {
                    continue;
                }
                let cur = self.table[lo][k];
                if cur == NONE {
                    self.table[lo][k] = t;
                } else {
                    queue.push((cur as usize, t as usize));
                }
            }
        }
    }

    fn run(&mut self, o: usize, budget: &CompletionBudget, offset: usize) -> Result<()> {
        self.new_state(o);
        let mut i = 0;
        while i < self.obj.len() {
            if self.find(i) == i {
                let oi = self.obj[i];
                for ri in 0..self.rels_at[oi].len() {
                    let r = &self.p.relations[self.rels_at[oi][ri]];
                    let (lhs, rhs) = (r.lhs.clone(), r.rhs.clone());
                    let a = self.trace_define(i, &lhs, budget, offset)?;
                    let b = self.trace_define(i, &rhs, budget, offset)?;
                    if a != b {
                        self.step(budget, offset)?;
                        self.coincidence(a, b);
                    }
                    if self.find(i) != i {
                        break;
                    }
                }
                if self.find(i) == i {
                    for k in 0..self.gens_out[oi].len() {
                        let g = self.gens_out[oi][k];
                        self.act_define(i, g, budget, offset)?;
                    }
                }
            }
            i += 1;
        }
        Ok(())
    }

    fn lookup(&mut self, s: usize, g: usize) -> usize {
        let s = self.find(s);
        let t = self.table[s][self.gpos[g]];
        debug_assert!(t != NONE);
        self.find(t as usize)
    }
}

/// Realizes a finite presentation, or reports `BudgetExceeded`.
pub fn realize_presentation(p: &CatPresentation, budget: &CompletionBudget) -> Result<Realized> {
    p.check()?;
    let n = p.objects.len();
    let mut gens_out = vec![Vec::new(); n];
    let mut gpos = vec![0; p.generators.len()];
    for (g, m) in p.generators.iter().enumerate() {
        if m.src >= n || m.tgt >= n {
            return Err(CatError::UnknownObject(m.name.clone()));
        }
        gpos[g] = gens_out[m.src].len();
        gens_out[m.src].push(g);
    }
    let mut rels_at = vec![Vec::new(); n];
    for (i, r) in p.relations.iter().enumerate() {
        rels_at[r.src].push(i);
    }

    // per source: states in shortlex order with their words and targets
    struct Done {
        order: Vec<usize>,
        words: Vec<Vec<usize>>,
        index_of_state: HashMap<usize, usize>,
    }
    let mut runs: Vec<(Enumeration, Done)> = Vec::with_capacity(n);
    let mut offset = 0;
    for o in 0..n {
        let mut e = Enumeration {
            p,
            gens_out: &gens_out,
            gpos: &gpos,
            rels_at: &rels_at,
            obj: Vec::new(),
            table: Vec::new(),
            parent: Vec::new(),
            live: 0,
            steps: 0,
        };
        e.run(o, budget, offset)?;
        // BFS for shortlex normal forms
        let mut order = Vec::new();
        let mut words = Vec::new();
        let mut index_of_state = HashMap::new();
        let start = e.find(0);
        index_of_state.insert(start, 0);
        order.push(start);
        words.push(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            let s = order[k];
            let so = e.obj[s];
            for gi in 0..gens_out[so].len() {
                let g = gens_out[so][gi];
                let t = e.lookup(s, g);
                if let std::collections::hash_map::Entry::Vacant(v) = index_of_state.entry(t) {
                    v.insert(order.len());
                    let mut w = words[k].clone();
                    w.push(g);
                    order.push(t);
                    words.push(w);
                    queue.push_back(order.len() - 1);
                }
            }
        }
        offset += order.len();
        runs.push((e, Done { order, words, index_of_state }));
    }

    // global numbering: by source object, then shortlex
    let mut base = vec![0; n];
    let count: Vec<usize> = runs.iter().map(|(_, d)| d.order.len()).collect();
    let mut total = 0;
    for o in 0..n {
        base[o] = total;
        total += count[o];
    }
    let mut morphisms = Vec::with_capacity(total);
    let mut words = Vec::with_capacity(total);
    for (o, (e, d)) in runs.iter().enumerate() {
        for (k, &s) in d.order.iter().enumerate() {
            let w = &d.words[k];
            let name = if w.is_empty() {
                format!("1_{}", p.objects[o])
            } else {
                w.iter().rev().map(|&g| p.generators[g].name.as_str()).collect::<Vec<_>>().join(".")
            };
            morphisms.push(Morphism { name, src: o, tgt: e.obj[s] });
            words.push(w.clone());
        }
    }
    let ids: Vec<usize> = base.clone();
    // composition: trace the word of the second morphism from the first
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for o in 0..n {
        let (e, d) = &mut runs[o];
        for (k, &s) in d.order.clone().iter().enumerate() {
            let t = e.obj[s];
            for k2 in 0..count[t] {
                let g_index = base[t] + k2;
                let mut cur = s;
                for &g in &words[g_index] {
                    cur = e.lookup(cur, g);
                }
                let r = d.index_of_state[&e.find(cur)];
                table.insert((base[o] + k, g_index), base[o] + r);
            }
        }
    }
    let mut gen_image = Vec::with_capacity(p.generators.len());
    for (g, m) in p.generators.iter().enumerate() {
        let (e, d) = &mut runs[m.src];
        let s0 = e.find(0);
        let t = e.lookup(s0, g);
        gen_image.push(base[m.src] + d.index_of_state[&t]);
    }
    // verify every relation at every state
    for o in 0..n {
        let (e, d) = &mut runs[o];
        for &s in &d.order.clone() {
            for &ri in &rels_at[e.obj[s]] {
                let r = &p.relations[ri];
                let mut a = s;
                for &g in &r.lhs {
                    a = e.lookup(a, g);
                }
                let mut b = s;
                for &g in &r.rhs {
                    b = e.lookup(b, g);
                }
                if e.find(a) != e.find(b) {
                    return Err(CatError::BudgetExceeded("enumeration did not close".into()));
                }
            }
        }
    }
    let cat = FinCat::from_fn(p.objects.clone(), morphisms, ids, |f, g| table.get(&(f, g)).copied())?;
    Ok(Realized { cat, words, gen_image })
}

/// A `Set`-valued functor on a finite category: a finite set at each object
/// and a function for each morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetWeight {
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

impl SetWeight {
    pub fn validate(&self, d: &FinCat) -> Result<()> {
        if self.sizes.len() != d.n_obj() || self.maps.len() != d.n_mor() {
            return Err(CatError::InvalidFunctor("set weight arity".into()));
        }
        for (u, m) in d.morphisms.iter().enumerate() {
            let f = &self.maps[u];
            if f.len() != self.sizes[m.src] || f.iter().any(|&y| y >= self.sizes[m.tgt]) {
                return Err(CatError::InvalidFunctor(format!("set map for `{}`", m.name)));
            }
            if d.is_identity(u) && f.iter().enumerate().any(|(i, &y)| i != y) {
                return Err(CatError::InvalidFunctor(format!("identity `{}`", m.name)));
            }
            for &v in d.out_of(m.tgt) {
                let uv = d.seq(u, v);
                if (0..self.sizes[m.src]).any(|x| self.maps[v][f[x]] != self.maps[uv][x]) {
                    return Err(CatError::InvalidFunctor("set weight not functorial".into()));
                }
            }
        }
        Ok(())
    }
}

/// The category of elements of a set-valued functor, its projection to the
/// base and the list of elements `(d, x)` in object order.
#[derive(Debug, Clone)]
pub struct Elements {
    pub cat: FinCat,
    pub projection: Fun,
    pub elements: Vec<(usize, usize)>,
}

pub fn category_of_elements(d: &FinCat, w: &SetWeight) -> Elements {
    let mut elements = Vec::new();
    let mut index = HashMap::new();
    for o in 0..d.n_obj() {
        for x in 0..w.sizes[o] {
            index.insert((o, x), elements.len());
            elements.push((o, x));
        }
    }
    let objects = elements.iter().map(|&(o, x)| format!("({},{})", d.objects[o], x)).collect();
    let mut morphisms = Vec::new();
    let mut mindex = HashMap::new();
    let mut on_mor = Vec::new();
    let mut ids = vec![0; elements.len()];
    for (e, &(o, x)) in elements.iter().enumerate() {
        for &u in d.out_of(o) {
            let y = w.maps[u][x];
            let t = index[&(d.tgt(u), y)];
            if d.is_identity(u) {
                ids[e] = morphisms.len();
            }
            mindex.insert((u, x), morphisms.len());
            on_mor.push(u);
            morphisms.push(Morphism { name: format!("({},{})", d.morphisms[u].name, x), src: e, tgt: t });
        }
    }
    let ms = morphisms.clone();
    let om = on_mor.clone();
    let els = elements.clone();
    let cat = FinCat::from_fn(objects, morphisms, ids, |f, g| {
        let x = els[ms[f].src].1;
        mindex.get(&(d.seq(om[f], om[g]), x)).copied()
    })
    .expect("category of elements");
    let projection = Fun { on_obj: elements.iter().map(|&(o, _)| o).collect(), on_mor };
    Elements { cat, projection, elements }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub objects: Vec<usize>,
    pub initial: Option<usize>,
}

/// Connected components, each with its least-indexed initial object if any.
pub fn components_with_initial(c: &FinCat) -> Vec<Component> {
    c.connected_components()
        .into_iter()
        .map(|objs| {
            let initial = objs.iter().copied().find(|&i| objs.iter().all(|&j| c.hom(i, j).len() == 1));
            Component { objects: objs, initial }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surjectivity {
    Bijective,
    Surjective,
    Neither,
}

pub fn objects_surjectivity(f: &Fun, tgt: &FinCat) -> Surjectivity {
    let mut hit = vec![0usize; tgt.n_obj()];
    for &o in &f.on_obj {
        hit[o] += 1;
    }
    if hit.iter().all(|&k| k == 1) {
        Surjectivity::Bijective
    } else if hit.iter().all(|&k| k >= 1) {
        Surjectivity::Surjective
    } else {
        Surjectivity::Neither
    }
}

/// Is there an isomorphism of categories `a ≅ b`? Exhaustive search.
pub fn isomorphic(a: &FinCat, b: &FinCat) -> bool {
    if a.n_obj() != b.n_obj() || a.n_mor() != b.n_mor() {
        return false;
    }
    let mut found = false;
    enumerate_functors_with(a, b, None, &mut |f| {
        let mut seen = vec![false; b.n_mor()];
        let bij = f.on_mor.iter().all(|&m| !std::mem::replace(&mut seen[m], true)) && f.is_injective_on_objects();
        if bij {
            found = true;
            return false;
        }
        true
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn not_rigged_presentation() -> CatPresentation {
        let mut p = CatPresentation::new(vec!["a".into(), "b".into()]);
        let r = p.add_generator("r", 0, 1);
        let s = p.add_generator("s", 0, 1);
        let g = p.add_generator("g", 1, 0);
        // s∘g = 1_b ; r∘g∘r = r∘g∘s
        p.add_relation(1, vec![g, s], vec![]);
        p.add_relation(0, vec![r, g, r], vec![s, g, r]);
        p
    }

    #[test]
    fn empty_category_is_valid() {
        assert!(validate_category(&FinCat::empty()).is_valid());
    }

    #[test]
    fn idempotent_monoid_is_valid() {
        let ms = vec![Morphism { name: "1".into(), src: 0, tgt: 0 }, Morphism { name: "e".into(), src: 0, tgt: 0 }];
        let c = FinCat::from_fn(vec!["*".into()], ms, vec![0], |f, g| Some(f.max(g))).unwrap();
        assert!(validate_category(&c).is_valid());
    }

    #[test]
    fn corrupted_unit_is_reported() {
        let ms = vec![Morphism { name: "1".into(), src: 0, tgt: 0 }, Morphism { name: "e".into(), src: 0, tgt: 0 }];
        // e;e = 1 and e;1 = 1
        let c = FinCat::from_fn(vec!["*".into()], ms, vec![0], |f, g| match (f, g) {
            (0, x) => Some(x),
            (1, 0) => Some(0),
            (1, 1) => Some(0),
            _ => None,
        })
        .unwrap();
        let rep = validate_category(&c);
        assert!(!rep.unit_failures.is_empty());
    }

    #[test]
    fn not_rigged_hom_sizes() {
        let r = realize_presentation(&not_rigged_presentation(), &CompletionBudget::for_size(3)).unwrap();
        let c = &r.cat;
        assert_eq!(c.hom(0, 0).len(), 4);
        assert_eq!(c.hom(1, 1).len(), 2);
        assert_eq!(c.hom(0, 1).len(), 3);
        assert_eq!(c.hom(1, 0).len(), 2);
        assert!(validate_category(c).is_valid());
    }

    #[test]
    fn idempotent_presentation_and_free_monoid() {
        let mut p = CatPresentation::new(vec!["*".into()]);
        let e = p.add_generator("e", 0, 0);
        let free = p.clone();
        p.add_relation(0, vec![e, e], vec![e]);
        let r = realize_presentation(&p, &CompletionBudget::for_size(1)).unwrap();
        assert_eq!(r.cat.n_mor(), 2);
        let err = realize_presentation(&free, &CompletionBudget::for_size(1)).unwrap_err();
        assert!(matches!(err, CatError::BudgetExceeded(_)));
    }

    #[test]
    fn functor_categories() {
        let two = FinCat::arrow();
        assert_eq!(functor_category(&two, &two).cat.n_obj(), 3);
        let one = FinCat::terminal();
        let fc = functor_category(&one, &two);
        assert!(isomorphic(&fc.cat, &two));
        let e = functor_category(&FinCat::empty(), &two);
        assert!(isomorphic(&e.cat, &one));
    }

    #[test]
    fn elements_of_inserter_ob_weight() {
        // a ⇉ b, value {•} at a and ob 𝟚 = {0,1} at b; the two arrows pick 0 and 1
        let mut p = CatPresentation::new(vec!["a".into(), "b".into()]);
        p.add_generator("f", 0, 1);
        p.add_generator("g", 0, 1);
        let d = realize_presentation(&p, &CompletionBudget::for_size(2)).unwrap().cat;
        let mut maps = vec![Vec::new(); d.n_mor()];
        for (u, m) in d.morphisms.iter().enumerate() {
            maps[u] = match m.name.as_str() {
                "f" => vec![0],
                "g" => vec![1],
                _ if m.src == 0 => vec![0],
                _ => vec![0, 1],
            };
        }
        let w = SetWeight { sizes: vec![1, 2], maps };
        w.validate(&d).unwrap();
        let el = category_of_elements(&d, &w);
        assert_eq!(el.cat.n_obj(), 3);
        let comps = components_with_initial(&el.cat);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].initial, Some(0));
    }

    #[test]
    fn idempotent_splitting_elements() {
        let mut p = CatPresentation::new(vec!["*".into()]);
        let e = p.add_generator("e", 0, 0);
        p.add_relation(0, vec![e, e], vec![e]);
        let d = realize_presentation(&p, &CompletionBudget::for_size(1)).unwrap().cat;
        let w = SetWeight { sizes: vec![1], maps: vec![vec![0]; d.n_mor()] };
        let el = category_of_elements(&d, &w);
        assert_eq!(el.cat.n_obj(), 1);
        assert_eq!(el.cat.hom(0, 0).len(), 2);
        let comps = components_with_initial(&el.cat);
        assert_eq!(comps[0].initial, None);
    }

    #[test]
    fn components_examples() {
        let d = FinCat::discrete(&["x", "y"]);
        let c = components_with_initial(&d);
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|k| k.initial.is_some()));
        let two = components_with_initial(&FinCat::arrow());
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].initial, Some(0));
    }

    #[test]
    fn surjectivity_examples() {
        let two = FinCat::arrow();
        assert_eq!(objects_surjectivity(&Fun::identity(&two), &two), Surjectivity::Bijective);
        let inc = Fun { on_obj: vec![0], on_mor: vec![two.id(0)] };
        assert_eq!(objects_surjectivity(&inc, &two), Surjectivity::Neither);
        let one = FinCat::terminal();
        let collapse = Fun { on_obj: vec![0, 0], on_mor: vec![0; two.n_mor()] };
        assert_eq!(objects_surjectivity(&collapse, &one), Surjectivity::Surjective);
    }

    #[test]
    fn product_and_subcategory() {
        let two = FinCat::arrow();
        let sq = FinCat::product(&two, &two);
        assert_eq!(sq.n_obj(), 4);
        assert_eq!(sq.n_mor(), 9);
        assert!(validate_category(&sq).is_valid());
        let (sub, inc) = sq.full_subcategory(&[0, 3]);
        assert_eq!(sub.n_mor(), 3);
        assert!(inc.is_full_embedding(&sub, &sq));
    }
}
