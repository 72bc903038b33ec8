//! F-weights, their hom F-objects, F-weighted limits in finite
//! F-categories, and a zoo of standard weights.
//!
//! A weight is `(Φ_τ, Φ_λ, φ)` with `Φ_τ` on the tight part `D_τ`, `Φ_λ` on
//! `D_λ` and `φ: Φ_τ → Φ_λ J` a pointwise full embedding.

use thiserror::Error;

use crate::cat_core::{realize_presentation, CatPresentation, CompletionBudget, FinCat, Fun, Morphism, NatTrans};
use crate::f_core::{FCat, FError, FFun, FObj, TauPart};
use crate::two_cat::{
    check_limit_with, is_strict_cone, probe_limits, weighted_limit_cat, CatWeight, Cell2, StrictCone, TwoCat,
    TwoCatError, TwoCatParts, WKind,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error(transparent)]
    F(#[from] FError),
    #[error(transparent)]
    Two(#[from] TwoCatError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid weight: {0}")]
    Invalid(String),
    #[error("unsupported kind {0:?} for this weight")]
    UnsupportedKind(WKind),
    #[error("no F-limit found{}", .loose_apex.map(|a| format!(" (object {a} is only a loose limit)")).unwrap_or_default())]
    NotFound { loose_apex: Option<usize> },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

impl From<crate::cat_core::CatError> for WeightError {
    fn from(e: crate::cat_core::CatError) -> Self {
        WeightError::Two(TwoCatError::Cat(e))
    }
}

pub type Result<T> = std::result::Result<T, WeightError>;

/// A plain 2-categorical weight `D → Cat`.
#[derive(Debug, Clone)]
pub struct TwoWeight {
    pub shape: TwoCat,
    pub phi: CatWeight,
}

/// An F-weight on the F-category `shape`.
#[derive(Debug, Clone)]
pub struct FWeight {
    pub shape: FCat,
    pub tau: TauPart,
    pub phi_tau: CatWeight,
    pub phi_lambda: CatWeight,
    pub phi: Vec<Fun>,
}

impl FWeight {
    pub fn new(shape: FCat, phi_tau: CatWeight, phi_lambda: CatWeight, phi: Vec<Fun>) -> Result<FWeight> {
        let tau = shape.tau();
        let w = FWeight { shape, tau, phi_tau, phi_lambda, phi };
        w.validate()?;
        Ok(w)
    }

    /// The weight whose tight part at `d` is the full subcategory of
    /// `Φ_λ(d)` on `tight_objects[d]`.
    pub fn from_tight_objects(shape: FCat, phi_lambda: CatWeight, tight_objects: Vec<Vec<usize>>) -> Result<FWeight> {
        let tau = shape.tau();
        let n = shape.base.n_obj();
        if tight_objects.len() != n {
            return Err(WeightError::ShapeMismatch("one object list per shape object".into()));
        }
        let mut values = Vec::with_capacity(n);
        let mut phi = Vec::with_capacity(n);
        let mut pos: Vec<Vec<Option<usize>>> = Vec::with_capacity(n);
        for (d, objs) in tight_objects.iter().enumerate() {
            let mut objs = objs.clone();
            objs.sort_unstable();
            objs.dedup();
            let (sub, inc) = phi_lambda.values[d].full_subcategory(&objs);
            let mut p = vec![None; phi_lambda.values[d].n_obj()];
            for (i, &o) in objs.iter().enumerate() {
                p[o] = Some(i);
            }
            pos.push(p);
            values.push(sub);
            phi.push(inc);
        }
        let mut on1 = Vec::with_capacity(tau.cells1.len());
        for &u in &tau.cells1 {
            let (s, t) = (shape.base.src1(u), shape.base.tgt1(u));
            let f = &phi_lambda.on1[u];
            let mut on_obj = Vec::new();
            for &x in &phi[s].on_obj {
                match pos[t][f.on_obj[x]] {
                    Some(y) => on_obj.push(y),
                    None => {
                        return Err(WeightError::Invalid(format!(
                            "tight objects not closed under `{}`",
                            shape.base.cells1[u].name
                        )))
                    }
                }
            }
            let on_mor = phi[s].on_mor.iter().map(|&m| restrict_mor(&phi[t], f.on_mor[m])).collect();
            on1.push(Fun { on_obj, on_mor });
        }
        let on2 = tau
            .cells2
            .iter()
            .map(|&a| {
                let c = &shape.base.cells2[a];
                let (s, t) = (shape.base.src1(c.src), shape.base.tgt1(c.src));
                NatTrans {
                    comp: phi[s].on_obj.iter().map(|&x| restrict_mor(&phi[t], phi_lambda.on2[a].comp[x])).collect(),
                }
            })
            .collect();
        let phi_tau = CatWeight { values, on1, on2 };
        let w = FWeight { shape, tau, phi_tau, phi_lambda, phi };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let d = &self.shape.base;
        self.phi_lambda.validate(d)?;
        self.phi_tau.validate(&self.tau.cat)?;
        if self.phi.len() != d.n_obj() {
            return Err(WeightError::ShapeMismatch("φ arity".into()));
        }
        for o in 0..d.n_obj() {
            let (t, l) = (&self.phi_tau.values[o], &self.phi_lambda.values[o]);
            self.phi[o].validate(t, l)?;
            if !self.phi[o].is_full_embedding(t, l) {
                return Err(WeightError::Invalid(format!("φ at `{}` is not a full embedding", d.objects[o])));
            }
        }
        let phi_j = self.phi_lambda.restrict(&(0..d.n_obj()).collect::<Vec<_>>(), &self.tau.cells1, &self.tau.cells2);
        if !is_strict_cone(&self.phi_tau, &phi_j, &self.tau.cat, &self.phi) {
            return Err(WeightError::Invalid("φ is not 2-natural on tight cells".into()));
        }
        Ok(())
    }

    /// Objects of `Φ_λ(d)` in the image of `φ_d`.
    pub fn tight_objects(&self) -> Vec<Vec<usize>> {
        self.phi.iter().map(|f| f.on_obj.clone()).collect()
    }

    /// `Φ_λ J` as a weight on `D_τ`.
    pub fn phi_lambda_j(&self) -> CatWeight {
        self.phi_lambda.restrict(&(0..self.shape.base.n_obj()).collect::<Vec<_>>(), &self.tau.cells1, &self.tau.cells2)
    }

    pub fn loose(&self) -> TwoWeight {
        TwoWeight { shape: self.shape.base.clone(), phi: self.phi_lambda.clone() }
    }
}

fn restrict_mor(inc: &Fun, m: usize) -> usize {
    inc.on_mor.iter().position(|&x| x == m).expect("morphism between tight objects")
}

/// `[D, F](a, b)`: loose part all strict 2-natural transformations
/// `a_λ → b_λ`, tight part those restricting to `a_τ → b_τ`.
pub fn fweight_hom(a: &FWeight, b: &FWeight) -> Result<FObj> {
    if a.shape.base.n_obj() != b.shape.base.n_obj() || a.shape.base.cells1.len() != b.shape.base.cells1.len() {
        return Err(WeightError::ShapeMismatch("weights on different shapes".into()));
    }
    let d = &a.shape.base;
    let lim = weighted_limit_cat(&a.phi_lambda, &b.phi_lambda, d);
    let btight: Vec<Vec<bool>> = (0..d.n_obj())
        .map(|o| {
            let mut t = vec![false; b.phi_lambda.values[o].n_obj()];
            for &x in &b.phi[o].on_obj {
                t[x] = true;
            }
            t
        })
        .collect();
    let objs: Vec<usize> = lim
        .cones
        .iter()
        .enumerate()
        .filter(|(_, c)| (0..d.n_obj()).all(|o| a.phi[o].on_obj.iter().all(|&x| btight[o][c[o].on_obj[x]])))
        .map(|(i, _)| i)
        .collect();
    Ok(FObj::full_sub(&lim.cat, &objs))
}

/// Counts the tight part of [`fweight_hom`] as pairs `(σ_τ, σ_λ)` with
/// `ψ σ_τ = σ_λ φ`.
pub fn count_tight_weight_maps(a: &FWeight, b: &FWeight) -> usize {
    let d = &a.shape.base;
    let lam = crate::two_cat::strict_transformations(&a.phi_lambda, &b.phi_lambda, d);
    let tau = crate::two_cat::strict_transformations(&a.phi_tau, &b.phi_tau, &a.tau.cat);
    let mut n = 0;
    for sl in &lam {
        for st in &tau {
            if (0..d.n_obj()).all(|o| st[o].then(&b.phi[o]) == a.phi[o].then(&sl[o])) {
                n += 1;
            }
        }
    }
    n
}

/// A cone for an F-weighted limit: the loose legs `Φ_λ(d) → K_λ(apex, S d)`.
pub type FCone = StrictCone;

/// Verdict of an F-limit check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FLimitVerdict {
    IsFLimit,
    /// A loose limit whose tightness conditions fail; carries the failure.
    LooseLimitOnly(Box<FLimitVerdict>),
    NotLooseLimit {
        probe: usize,
    },
    ProjectionNotTight {
        object: usize,
        element: usize,
        cell: usize,
    },
    DoesNotDetectTightness {
        morphism: usize,
    },
}

impl FLimitVerdict {
    pub fn is_limit(&self) -> bool {
        matches!(self, FLimitVerdict::IsFLimit)
    }
}

/// Precomputed data for checking F-limits of a fixed diagram.
pub struct FLimitContext<'a> {
    pub weight: &'a FWeight,
    pub k: &'a FCat,
    pub s: &'a FFun,
    lims: Vec<crate::two_cat::LimitCat>,
}

impl<'a> FLimitContext<'a> {
    pub fn new(weight: &'a FWeight, s: &'a FFun, k: &'a FCat) -> Result<FLimitContext<'a>> {
        s.validate(&weight.shape, k)?;
        let lims = probe_limits(&k.base, &weight.shape.base, &weight.phi_lambda, &s.fun);
        Ok(FLimitContext { weight, k, s, lims })
    }

    /// All cones with the given apex.
    pub fn cones_at(&self, apex: usize) -> Vec<FCone> {
        self.lims[apex].cones.iter().map(|legs| StrictCone { apex, legs: legs.clone() }).collect()
    }

    /// The global 1-cell of the leg at `d` on the object `x` of `Φ_λ(d)`.
    pub fn leg_cell(&self, cone: &FCone, d: usize, x: usize) -> usize {
        let h = self.k.base.hom(cone.apex, self.s.fun.on0[d]);
        h.cells1[cone.legs[d].on_obj[x]]
    }

    pub fn check(&self, cone: &FCone) -> FLimitVerdict {
        let k = &self.k.base;
        let r = check_limit_with(k, &self.s.fun, cone, &self.lims);
        if let Some(probe) = r.failing_probe {
            return FLimitVerdict::NotLooseLimit { probe };
        }
        self.tightness_verdict(cone)
    }

    fn tightness_verdict(&self, cone: &FCone) -> FLimitVerdict {
        let w = self.weight;
        let k = &self.k.base;
        let mut projections = Vec::new();
        for d in 0..w.shape.base.n_obj() {
            for (a, &x) in w.phi[d].on_obj.iter().enumerate() {
                let p = self.leg_cell(cone, d, x);
                if !self.k.tight[p] {
                    return FLimitVerdict::ProjectionNotTight { object: d, element: a, cell: p };
                }
                projections.push(p);
            }
        }
        for h in 0..k.cells1.len() {
            if k.tgt1(h) != cone.apex || self.k.tight[h] {
                continue;
            }
            if projections.iter().all(|&p| self.k.tight[k.comp1(h, p)]) {
                return FLimitVerdict::DoesNotDetectTightness { morphism: h };
            }
        }
        FLimitVerdict::IsFLimit
    }

    /// Best verdict over all cones at `apex`, with an F-limit cone if any.
    pub fn at_apex(&self, apex: usize) -> (FLimitVerdict, Option<FCone>) {
        let mut loose_failure = None;
        let mut probe = None;
        for cone in self.cones_at(apex) {
            match self.check(&cone) {
                FLimitVerdict::IsFLimit => return (FLimitVerdict::IsFLimit, Some(cone)),
                FLimitVerdict::NotLooseLimit { probe: p } => {
                    probe.get_or_insert(p);
                }
                v => {
                    loose_failure.get_or_insert(v);
                }
            }
        }
        match loose_failure {
            Some(v) => (FLimitVerdict::LooseLimitOnly(Box::new(v)), None),
            None => (FLimitVerdict::NotLooseLimit { probe: probe.unwrap_or(apex) }, None),
        }
    }

    /// The F-limit with the lowest-indexed apex.
    pub fn find(&self) -> Result<FCone> {
        let mut loose_apex = None;
        for apex in 0..self.k.base.n_obj() {
            match self.at_apex(apex) {
                (_, Some(c)) => return Ok(c),
                (FLimitVerdict::LooseLimitOnly(_), None) => {
                    loose_apex.get_or_insert(apex);
                }
                _ => {}
            }
        }
        Err(WeightError::NotFound { loose_apex })
    }
}

/// Checks whether `cone` exhibits an F-weighted limit of `s`.
pub fn check_f_limit(w: &FWeight, s: &FFun, k: &FCat, cone: &FCone) -> Result<FLimitVerdict> {
    let ctx = FLimitContext::new(w, s, k)?;
    if cone.legs.len() != w.shape.base.n_obj() {
        return Err(WeightError::ShapeMismatch("cone legs".into()));
    }
    let own = CatWeight::hom_weight(&k.base, cone.apex, &w.shape.base, &s.fun);
    for (o, leg) in cone.legs.iter().enumerate() {
        leg.validate(&w.phi_lambda.values[o], &own.values[o])
            .map_err(|e| WeightError::ShapeMismatch(format!("leg {o}: {e}")))?;
    }
    if !is_strict_cone(&w.phi_lambda, &own, &w.shape.base, &cone.legs) {
        return Err(WeightError::ShapeMismatch("cone is not 2-natural".into()));
    }
    Ok(ctx.check(cone))
}

/// Searches for an F-weighted limit of `s`, lowest-indexed apex first.
pub fn find_f_limit(w: &FWeight, s: &FFun, k: &FCat) -> Result<FCone> {
    FLimitContext::new(w, s, k)?.find()
}

// ---------------------------------------------------------------------------
// Shapes

fn fun(on_obj: Vec<usize>, on_mor: Vec<usize>) -> Fun {
    Fun { on_obj, on_mor }
}

/// A functor `1 → c` picking object `o`.
pub fn pick(c: &FinCat, o: usize) -> Fun {
    Fun::constant(&FinCat::terminal(), c, o)
}

/// Builds a weight on a locally discrete shape from its value on every
/// morphism.
pub fn locally_discrete_weight(d: &TwoCat, values: Vec<FinCat>, on1: Vec<Fun>) -> CatWeight {
    let on2 = (0..d.cells2.len())
        .map(|a| {
            let u = d.cells2[a].src;
            NatTrans::identity(&on1[u], &values[d.tgt1(u)])
        })
        .collect();
    CatWeight { values, on1, on2 }
}

/// The parallel pair `f, g: a ⇉ b` as a category.
pub fn parallel_pair() -> FinCat {
    let objects = vec!["a".to_string(), "b".to_string()];
    let morphisms = vec![
        Morphism { name: "1_a".into(), src: 0, tgt: 0 },
        Morphism { name: "1_b".into(), src: 1, tgt: 1 },
        Morphism { name: "f".into(), src: 0, tgt: 1 },
        Morphism { name: "g".into(), src: 0, tgt: 1 },
    ];
    FinCat::from_fn(objects, morphisms, vec![0, 1], |x, y| match (x, y) {
        (0, z) | (z, 1) => Some(z),
        _ => None,
    })
    .expect("parallel pair")
}

/// The parallel pair with two 2-cells `α, β: f ⇒ g`.
pub fn parallel_two_cells() -> TwoCat {
    let c = parallel_pair();
    let cells2 = vec![
        Cell2 { name: "1_1_a".into(), src: 0, tgt: 0 },
        Cell2 { name: "1_1_b".into(), src: 1, tgt: 1 },
        Cell2 { name: "1_f".into(), src: 2, tgt: 2 },
        Cell2 { name: "1_g".into(), src: 3, tgt: 3 },
        Cell2 { name: "alpha".into(), src: 2, tgt: 3 },
        Cell2 { name: "beta".into(), src: 2, tgt: 3 },
    ];
    let c2 = cells2.clone();
    let ids = [0usize, 1, 2, 3];
    TwoCat::from_parts(TwoCatParts {
        objects: c.objects.clone(),
        cells1: c.morphisms.clone(),
        id1: vec![0, 1],
        cells2,
        id2: ids.to_vec(),
        comp1: |x, y| Some(c.seq(x, y)),
        vcomp: |x, y| {
            if c2[x].tgt != c2[y].src {
                None
            } else if ids.contains(&x) {
                Some(y)
            } else if ids.contains(&y) {
                Some(x)
            } else {
                None
            }
        },
        hcomp: |x, y| {
            // one side is always an identity on an identity 1-cell
            if x < 2 {
                Some(y)
            } else if y < 2 {
                Some(x)
            } else {
                None
            }
        },
    })
    .expect("parallel 2-cells")
}

fn parallel_pair_weight(d: &TwoCat) -> CatWeight {
    let two = FinCat::arrow();
    let one = FinCat::terminal();
    let mut on1 = vec![Fun::identity(&one); d.cells1.len()];
    on1[1] = Fun::identity(&two);
    on1[2] = pick(&two, 0);
    on1[3] = pick(&two, 1);
    let values = vec![one.clone(), two.clone()];
    let up = two.hom(0, 1)[0];
    let on2 = (0..d.cells2.len())
        .map(|a| {
            let c = &d.cells2[a];
            if c.src == c.tgt {
                NatTrans::identity(&on1[c.src], &values[d.tgt1(c.src)])
            } else {
                NatTrans { comp: vec![up] }
            }
        })
        .collect();
    CatWeight { values, on1, on2 }
}

/// The tight weight on a chordate shape: `Φ_τ = Φ_λ = m`, `φ = 1`.
pub fn weight_tight(d: TwoCat, m: CatWeight) -> Result<FWeight> {
    let all = m.values.iter().map(|c| (0..c.n_obj()).collect()).collect();
    FWeight::from_tight_objects(FCat::chordate(d), m, all)
}

/// The weight for lax, oplax or pseudo limits of a loose arrow `s: d ⇝ c`.
/// The oplax cone has `σ: v ⇒ s u`; the tight projections are `u` and `v`.
pub fn weight_arrow(kind: WKind) -> Result<FWeight> {
    let d = TwoCat::locally_discrete(&FinCat::arrow());
    let (mid, su, v) = match kind {
        WKind::Oplax => (FinCat::arrow(), 1, 0),
        WKind::Lax => (FinCat::arrow(), 0, 1),
        WKind::Pseudo => (FinCat::free_iso(), 1, 0),
        WKind::Strict => return Err(WeightError::UnsupportedKind(kind)),
    };
    let one = FinCat::terminal();
    let s = d.cell1_index("0<1").expect("arrow");
    let mut on1 = vec![Fun::identity(&one); 3];
    on1[d.id1(1)] = Fun::identity(&mid);
    on1[s] = pick(&mid, su);
    let phi = locally_discrete_weight(&d, vec![one, mid], on1);
    FWeight::from_tight_objects(FCat::inchordate(d), phi, vec![vec![0], vec![v]])
}

/// Rigged inserters of `f, g: a ⇉ b`. For `p` only `a` has a tight
/// projection; for `l` (resp. `c`) `f` (resp. `g`) is tight as well.
pub fn weight_inserter(w: WKind) -> Result<FWeight> {
    let d = TwoCat::locally_discrete(&parallel_pair());
    let phi = parallel_pair_weight(&d);
    match w {
        WKind::Pseudo => FWeight::from_tight_objects(FCat::inchordate(d), phi, vec![vec![0], vec![]]),
        WKind::Lax => {
            let shape = FCat::with_tight_names(d, &["f"])?;
            FWeight::from_tight_objects(shape, phi, vec![vec![0], vec![0]])
        }
        WKind::Oplax => {
            let shape = FCat::with_tight_names(d, &["g"])?;
            FWeight::from_tight_objects(shape, phi, vec![vec![0], vec![1]])
        }
        WKind::Strict => Err(WeightError::UnsupportedKind(w)),
    }
}

/// Rigged equifiers of `α, β: f ⇒ g`.
pub fn weight_equifier(w: WKind) -> Result<FWeight> {
    let d = parallel_two_cells();
    let phi = parallel_pair_weight(&d);
    match w {
        WKind::Pseudo => FWeight::from_tight_objects(FCat::inchordate(d), phi, vec![vec![0], vec![]]),
        WKind::Lax => {
            let shape = FCat::with_tight_names(d, &["f"])?;
            FWeight::from_tight_objects(shape, phi, vec![vec![0], vec![0]])
        }
        WKind::Oplax => {
            let shape = FCat::with_tight_names(d, &["g"])?;
            FWeight::from_tight_objects(shape, phi, vec![vec![0], vec![1]])
        }
        WKind::Strict => Err(WeightError::UnsupportedKind(w)),
    }
}

/// The face and degeneracy maps between `1, 2, 3`: `δ_i` omits `i`.
fn descent_generators() -> Vec<(&'static str, usize, usize, Vec<usize>)> {
    vec![
        ("d0", 0, 1, vec![1]),
        ("d1", 0, 1, vec![0]),
        ("s", 1, 0, vec![0, 0]),
        ("d0'", 1, 2, vec![1, 2]),
        ("d1'", 1, 2, vec![0, 2]),
        ("d2'", 1, 2, vec![0, 1]),
    ]
}

/// The locally discrete sub-2-category of `Cat` on `1, 2, 3` generated by
/// the descent maps, with its inclusion weight.
fn descent_shape(order: impl Fn(usize) -> FinCat) -> (TwoCat, CatWeight) {
    let cats: Vec<FinCat> = (1..=3).map(&order).collect();
    // close the generating monotone maps under composition
    let mut maps: Vec<(usize, usize, Vec<usize>)> = (0..3).map(|o| (o, o, (0..=o).collect())).collect();
    for (_, s, t, m) in descent_generators() {
        maps.push((s, t, m));
    }
    let mut names: Vec<String> = (0..3).map(|o| format!("1_{}", o + 1)).collect();
    names.extend(descent_generators().iter().map(|g| g.0.to_string()));
    let mut i = 0;
    while i < maps.len() {
        for j in 0..maps.len() {
            let (s, m, ref f) = maps[i].clone();
            let (m2, t, ref g) = maps[j].clone();
            if m != m2 {
                continue;
            }
            let h: Vec<usize> = f.iter().map(|&x| g[x]).collect();
            if !maps.iter().any(|(a, b, k)| *a == s && *b == t && *k == h) {
                names.push(format!("{}.{}", names[j], names[i]));
                maps.push((s, t, h));
            }
        }
        i += 1;
    }
    let morphisms: Vec<Morphism> =
        maps.iter().zip(&names).map(|((s, t, _), n)| Morphism { name: n.clone(), src: *s, tgt: *t }).collect();
    let objects = vec!["1".to_string(), "2".to_string(), "3".to_string()];
    let cat = FinCat::from_fn(objects, morphisms, vec![0, 1, 2], |x, y| {
        let (s, m, f) = &maps[x];
        let (m2, t, g) = &maps[y];
        if m != m2 {
            return None;
        }
        let h: Vec<usize> = f.iter().map(|&z| g[z]).collect();
        maps.iter().position(|(a, b, k)| a == s && b == t && *k == h)
    })
    .expect("descent shape");
    let d = TwoCat::locally_discrete(&cat);
    let on1 = maps.iter().map(|(s, t, m)| monotone_functor(&cats[*s], &cats[*t], m)).collect();
    let phi = locally_discrete_weight(&d, cats, on1);
    (d, phi)
}

/// The functor between thin categories given on objects.
fn monotone_functor(a: &FinCat, b: &FinCat, on_obj: &[usize]) -> Fun {
    let on_mor = (0..a.n_mor()).map(|m| b.hom(on_obj[a.src(m)], on_obj[a.tgt(m)])[0]).collect();
    fun(on_obj.to_vec(), on_mor)
}

/// Rigged descent objects. In each case the tight maps are `δ_0`, `σ` and
/// `δ_0, δ_1: 2 → 3`, and `φ` picks the last object. The descent 2-cell
/// runs from the tight composite `δ_0 p` to the loose `δ_1 p` for `l`
/// (opposite ordinals), the other way for `c` (ordinals), and is
/// invertible for `p` (chaotic categories).
pub fn weight_descent(w: WKind) -> Result<FWeight> {
    let (d, phi) = match w {
        WKind::Lax => descent_shape(|n| FinCat::ordinal(n).opposite()),
        WKind::Oplax => descent_shape(FinCat::ordinal),
        WKind::Pseudo => descent_shape(|n| {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            FinCat::chaotic(&names)
        }),
        WKind::Strict => return Err(WeightError::UnsupportedKind(w)),
    };
    let shape = FCat::generated_by(d, &["d0", "s", "d0'", "d1'"])?;
    FWeight::from_tight_objects(shape, phi, vec![vec![0], vec![1], vec![2]])
}

/// The power by an object `x` of `F`, over the terminal shape.
pub fn weight_power(x: &FObj) -> Result<FWeight> {
    let d = TwoCat::locally_discrete(&FinCat::terminal());
    let shape = FCat::chordate(d);
    let tau = shape.tau();
    let phi_lambda = CatWeight {
        values: vec![x.lambda.clone()],
        on1: vec![Fun::identity(&x.lambda)],
        on2: vec![NatTrans::identity(&Fun::identity(&x.lambda), &x.lambda)],
    };
    let phi_tau = CatWeight {
        values: vec![x.tau.clone()],
        on1: vec![Fun::identity(&x.tau)],
        on2: vec![NatTrans::identity(&Fun::identity(&x.tau), &x.tau)],
    };
    let w = FWeight { shape, tau, phi_tau, phi_lambda, phi: vec![x.j.clone()] };
    w.validate()?;
    Ok(w)
}

/// The representable F-weight `K(x, -)`.
pub fn weight_representable(k: &FCat, x: usize) -> Result<FWeight> {
    let phi = CatWeight::representable(&k.base, x);
    let tight = (0..k.base.n_obj())
        .map(|e| {
            let h = k.base.hom(x, e);
            (0..h.cells1.len()).filter(|&i| k.tight[h.cells1[i]]).collect()
        })
        .collect();
    FWeight::from_tight_objects(k.clone(), phi, tight)
}

/// One object with an idempotent `e`, weighted by the terminal category:
/// limits of this weight are splittings of idempotents.
pub fn weight_idempotent_splitting() -> TwoWeight {
    let mut p = CatPresentation::new(vec!["*".into()]);
    let e = p.add_generator("e", 0, 0);
    p.add_relation(0, vec![e, e], vec![e]);
    let r = realize_presentation(&p, &CompletionBudget::default()).expect("idempotent");
    let shape = TwoCat::locally_discrete(&r.cat);
    let phi = CatWeight::constant(&shape, &FinCat::terminal());
    TwoWeight { shape, phi }
}

/// Named 2-categorical fixtures.
pub fn weight_pie_fixture(name: &str) -> Result<TwoWeight> {
    Ok(match name {
        "product" => {
            let shape = TwoCat::locally_discrete(&FinCat::discrete(&["x", "y"]));
            let phi = CatWeight::constant(&shape, &FinCat::terminal());
            TwoWeight { shape, phi }
        }
        "inserter" => weight_inserter(WKind::Pseudo)?.loose(),
        "equifier" => weight_equifier(WKind::Pseudo)?.loose(),
        "oplax_arrow" => weight_arrow(WKind::Oplax)?.loose(),
        "descent" => weight_descent(WKind::Lax)?.loose(),
        "idempotent_splitting" => weight_idempotent_splitting(),
        _ => {
            if let Some(rest) = name.strip_prefix("representable_") {
                let (shape_name, obj) = rest.split_once('_').ok_or_else(|| WeightError::UnknownFixture(name.into()))?;
                let shape = match shape_name {
                    "arrow" => TwoCat::locally_discrete(&FinCat::arrow()),
                    "pair" => TwoCat::locally_discrete(&parallel_pair()),
                    "equifier" => parallel_two_cells(),
                    "idempotent" => weight_idempotent_splitting().shape,
                    _ => return Err(WeightError::UnknownFixture(name.into())),
                };
                let o = shape.obj_index(obj).ok_or_else(|| WeightError::UnknownFixture(name.into()))?;
                let phi = CatWeight::representable(&shape, o);
                TwoWeight { shape, phi }
            } else {
                return Err(WeightError::UnknownFixture(name.into()));
            }
        }
    })
}

/// Names accepted by [`weight_pie_fixture`] that are PIE.
pub const PIE_FIXTURES: &[&str] = &[
    "product",
    "inserter",
    "equifier",
    "oplax_arrow",
    "descent",
    "representable_arrow_0",
    "representable_arrow_1",
    "representable_pair_a",
    "representable_pair_b",
    "representable_equifier_a",
    "representable_equifier_b",
    "representable_idempotent_*",
];

/// Shape with `r: b → a`, `i: a → b`, `r i = 1` and tight idempotent `f = i r`.
pub fn shape_two_qcoalg() -> FCat {
    let mut p = CatPresentation::new(vec!["a".into(), "b".into()]);
    let r = p.add_generator("r", 1, 0);
    let i = p.add_generator("i", 0, 1);
    p.add_relation(0, vec![i, r], vec![]);
    let real = realize_presentation(&p, &CompletionBudget::default()).expect("two-qcoalg shape");
    let f = real.eval(1, &[r, i]);
    let name = real.cat.morphisms[f].name.clone();
    FCat::with_tight_names(TwoCat::locally_discrete(&real.cat), &[&name]).expect("tight closure")
}

/// Shape with tight `r, s: a ⇉ b`, loose `g: b ⇝ a`, `s g = 1`, `r g r = r g s`.
pub fn shape_not_rigged() -> FCat {
    let mut p = CatPresentation::new(vec!["a".into(), "b".into()]);
    let r = p.add_generator("r", 0, 1);
    let s = p.add_generator("s", 0, 1);
    let g = p.add_generator("g", 1, 0);
    p.add_relation(1, vec![g, s], vec![]);
    p.add_relation(0, vec![r, g, r], vec![s, g, r]);
    let real = realize_presentation(&p, &CompletionBudget::default()).expect("not-rigged shape");
    FCat::with_tight_names(TwoCat::locally_discrete(&real.cat), &["r", "s"]).expect("tight closure")
}

/// `Δ1` on a shape with the given tight objects (each `vec![0]` or empty).
pub fn constant_one_weight(shape: FCat, tight_at: &[bool]) -> Result<FWeight> {
    let phi = CatWeight::constant(&shape.base, &FinCat::terminal());
    let objs = tight_at.iter().map(|&t| if t { vec![0] } else { vec![] }).collect();
    FWeight::from_tight_objects(shape, phi, objs)
}

/// Every zoo weight defined for `w`.
pub fn zoo(w: WKind) -> Vec<(String, FWeight)> {
    let mut out = Vec::new();
    let tag = match w {
        WKind::Pseudo => "p",
        WKind::Lax => "l",
        WKind::Oplax => "c",
        WKind::Strict => "s",
    };
    if let Ok(x) = weight_arrow(match w {
        WKind::Lax => WKind::Oplax,
        WKind::Oplax => WKind::Lax,
        k => k,
    }) {
        out.push((format!("arrow_{tag}"), x));
    }
    if let Ok(x) = weight_inserter(w) {
        out.push((format!("inserter_{tag}"), x));
    }
    if let Ok(x) = weight_equifier(w) {
        out.push((format!("equifier_{tag}"), x));
    }
    if let Ok(x) = weight_descent(w) {
        out.push((format!("descent_{tag}"), x));
    }
    let prod = weight_pie_fixture("product").expect("product");
    if let Ok(x) = weight_tight(prod.shape, prod.phi) {
        out.push(("tight_product".into(), x));
    }
    if let Ok(x) = weight_power(&FObj::chordate(FinCat::arrow())) {
        out.push(("power_arrow".into(), x));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::two_cat::TwoFun;

    #[test]
    fn zoo_weights_validate() {
        for w in [WKind::Pseudo, WKind::Lax, WKind::Oplax] {
            for (name, x) in zoo(w) {
                x.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
        assert!(matches!(weight_inserter(WKind::Strict), Err(WeightError::UnsupportedKind(_))));
    }

    #[test]
    fn inserter_p_data() {
        let w = weight_inserter(WKind::Pseudo).unwrap();
        assert_eq!(w.phi_tau.values[0].n_obj(), 1);
        assert_eq!(w.phi_tau.values[1].n_obj(), 0);
        assert_eq!(w.phi_lambda.on1[2].on_obj, vec![0]);
        assert_eq!(w.phi_lambda.on1[3].on_obj, vec![1]);
    }

    #[test]
    fn descent_l_data() {
        let w = weight_descent(WKind::Lax).unwrap();
        let d = &w.shape.base;
        assert_eq!(d.n_obj(), 3);
        assert_eq!(w.phi[1].on_obj, vec![1]);
        assert_eq!(w.phi[2].on_obj, vec![2]);
        // the generated shape is closed: |hom(1,3)| counts the monotone maps 1 → 3 reached
        assert!(d.hom(0, 2).cells1.len() >= 3);
    }

    #[test]
    fn power_empty_in_terminal() {
        let w = weight_power(&FObj::one_lambda()).unwrap();
        assert_eq!(w.phi_tau.values[0].n_obj(), 0);
        assert_eq!(w.phi_lambda.values[0].n_obj(), 1);
    }

    #[test]
    fn fweight_hom_cases() {
        let k = FCat::chordate(TwoCat::locally_discrete(&FinCat::arrow()));
        let r = weight_representable(&k, 0).unwrap();
        let h = fweight_hom(&r, &r).unwrap();
        assert!(h.tau.n_obj() >= 1);
        assert_eq!(h.tau.n_obj(), count_tight_weight_maps(&r, &r));
        let t = weight_tight(k.base.clone(), CatWeight::constant(&k.base, &FinCat::arrow())).unwrap();
        let h = fweight_hom(&t, &t).unwrap();
        assert_eq!(h.tau.n_obj(), h.lambda.n_obj());
        let e = weight_power(&FObj::one_lambda()).unwrap();
        let h = fweight_hom(&e, &e).unwrap();
        assert_eq!(h.tau.n_obj(), h.lambda.n_obj());
        for (_, a) in zoo(WKind::Lax) {
            let h = fweight_hom(&a, &a).unwrap();
            assert_eq!(h.tau.n_obj(), count_tight_weight_maps(&a, &a));
        }
    }

    #[test]
    fn representable_limit_is_value() {
        let k = FCat::chordate(TwoCat::sub_of_cat(&[("1".into(), FinCat::terminal()), ("2".into(), FinCat::arrow())]));
        let shape = FCat::chordate(TwoCat::locally_discrete(&FinCat::terminal()));
        let w = weight_representable(&shape, 0).unwrap();
        for x in 0..k.base.n_obj() {
            let s =
                FFun { fun: TwoFun { on0: vec![x], on1: vec![k.base.id1(x)], on2: vec![k.base.id2(k.base.id1(x))] } };
            let cone = find_f_limit(&w, &s, &k).unwrap();
            assert_eq!(cone.apex, x);
        }
    }

    #[test]
    fn inserter_missing_in_discrete() {
        let k = FCat::chordate(TwoCat::locally_discrete(&FinCat::discrete(&["x", "y"])));
        let w = weight_inserter(WKind::Pseudo).unwrap();
        // f = g = 1_x is impossible across objects; use the constant diagram at x
        let id = k.base.id1(0);
        let s = FFun { fun: TwoFun { on0: vec![0, 0], on1: vec![id, id, id, id], on2: vec![k.base.id2(id); 4] } };
        // the inserter of 1,1 is x itself in a locally discrete 2-category
        assert_eq!(find_f_limit(&w, &s, &k).unwrap().apex, 0);
        let w = weight_equifier(WKind::Pseudo).unwrap();
        let s = FFun { fun: TwoFun { on0: vec![0, 0], on1: vec![id; 4], on2: vec![k.base.id2(id); 6] } };
        assert_eq!(find_f_limit(&w, &s, &k).unwrap().apex, 0);
    }

    #[test]
    fn oplax_arrow_limit_is_comma() {
        let k = FCat::chordate(TwoCat::sub_of_cat(&[
            ("1".into(), FinCat::terminal()),
            ("2".into(), FinCat::arrow()),
            ("3".into(), FinCat::ordinal(3)),
        ]));
        let w = weight_arrow(WKind::Oplax).unwrap();
        let id = k.base.id1(1);
        let s = FFun { fun: TwoFun { on0: vec![1, 1], on1: vec![id; 3], on2: vec![k.base.id2(id); 3] } };
        let cone = find_f_limit(&w, &s, &k).unwrap();
        assert_eq!(cone.apex, 2);
        assert!(check_f_limit(&w, &s, &k, &cone).unwrap().is_limit());
    }

    #[test]
    fn example_shapes() {
        let s = shape_not_rigged();
        let c = s.base.underlying();
        let sizes: Vec<usize> = [(0, 0), (1, 1), (0, 1), (1, 0)].iter().map(|&(a, b)| c.hom(a, b).len()).collect();
        assert_eq!(sizes, vec![4, 2, 3, 2]);
        let t = shape_two_qcoalg();
        assert_eq!(t.tight.iter().filter(|&&x| x).count(), 3);
    }
}
