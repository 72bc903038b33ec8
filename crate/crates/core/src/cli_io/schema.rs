//! JSON schemas and conversions.
//!
//! Canonical form: objects and morphisms sorted by name; maps keyed by
//! name; composites listed only for pairs of non-identities; identity
//! images omitted from functor tables. Unknown fields are rejected.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::cat_core::{validate_category, CatError, FinCat, Fun, Morphism, NatTrans};
use crate::f_core::{FCat, FFun};
use crate::monad_alg::{FMonad, FiniteMonad, WriterMonad};
use crate::two_cat::{validate_two_cat, CatWeight, Cell2, Monad2, TwoCat, TwoCatParts, TwoFun};
use crate::weights::{FWeight, TwoWeight};

type Result<T> = std::result::Result<T, IoError>;

fn err<T>(path: impl Into<String>, msg: impl Into<String>) -> Result<T> {
    Err(IoError::Schema { path: path.into(), msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompJson {
    pub after: String,
    pub then: String,
    pub equals: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinCatJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<CompJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoCellsJson {
    pub cells: Vec<MorphismJson>,
    pub identities: BTreeMap<String, String>,
    pub vertical: Vec<CompJson>,
    pub horizontal: Vec<CompJson>,
}

/// A 2-category: its underlying category of 1-cells and, unless locally
/// discrete, its 2-cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoCatJson {
    pub category: FinCatJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_cells: Option<TwoCellsJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FCatJson {
    pub two_cat: TwoCatJson,
    /// Tight non-identity 1-cells.
    pub tight: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunJson {
    pub objects: BTreeMap<String, String>,
    /// Images of non-identity morphisms.
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatWeightJson {
    pub values: BTreeMap<String, FinCatJson>,
    /// Images of non-identity 1-cells.
    pub on1: BTreeMap<String, FunJson>,
    /// Components of the images of non-identity 2-cells.
    pub on2: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoWeightJson {
    pub shape: TwoCatJson,
    pub phi: CatWeightJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FWeightJson {
    pub shape: FCatJson,
    pub phi_lambda: CatWeightJson,
    /// Per shape object, the objects of `Φ_λ(d)` in the image of `φ`.
    pub tight_objects: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoFunJson {
    pub on0: BTreeMap<String, String>,
    pub on1: BTreeMap<String, String>,
    pub on2: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoMonadJson {
    pub base: FCatJson,
    pub t: TwoFunJson,
    pub eta: BTreeMap<String, String>,
    pub mu: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WriterMonadJson {
    pub base: FCatJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum MonadJson {
    Endo(EndoMonadJson),
    Writer(WriterMonadJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monad2Json {
    pub object: String,
    pub t: String,
    pub mu: String,
    pub eta: String,
}

// ---------------------------------------------------------------------------
// names

fn index_names(names: impl Iterator<Item = String>, path: &str) -> Result<HashMap<String, usize>> {
    let mut out = HashMap::new();
    for (i, n) in names.enumerate() {
        if out.insert(n.clone(), i).is_some() {
            return err(path, format!("duplicate name `{n}`"));
        }
    }
    Ok(out)
}

fn lookup(map: &HashMap<String, usize>, name: &str, path: &str) -> Result<usize> {
    map.get(name).copied().map_or_else(|| err(path, format!("unknown name `{name}`")), Ok)
}

fn check_unique<'a>(names: impl Iterator<Item = &'a String>, what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return err(what, format!("duplicate name `{n}` cannot be serialized"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// categories

pub fn fincat_to_json(c: &FinCat) -> Result<FinCatJson> {
    check_unique(c.objects.iter(), "objects")?;
    check_unique(c.morphisms.iter().map(|m| &m.name), "morphisms")?;
    let mut objects = c.objects.clone();
    objects.sort();
    let mut morphisms: Vec<MorphismJson> = c
        .morphisms
        .iter()
        .map(|m| MorphismJson { name: m.name.clone(), src: c.objects[m.src].clone(), tgt: c.objects[m.tgt].clone() })
        .collect();
    morphisms.sort_by(|a, b| a.name.cmp(&b.name));
    let identities = (0..c.n_obj()).map(|o| (c.objects[o].clone(), c.morphisms[c.id(o)].name.clone())).collect();
    let mut compose = Vec::new();
    for f in 0..c.n_mor() {
        if c.is_identity(f) {
            continue;
        }
        for &g in c.out_of(c.tgt(f)) {
            if !c.is_identity(g) {
                compose.push(CompJson {
                    after: c.morphisms[f].name.clone(),
                    then: c.morphisms[g].name.clone(),
                    equals: c.morphisms[c.seq(f, g)].name.clone(),
                });
            }
        }
    }
    compose.sort();
    Ok(FinCatJson { objects, morphisms, identities, compose })
}

pub fn fincat_from_json(j: &FinCatJson, path: &str) -> Result<FinCat> {
    let obj = index_names(j.objects.iter().cloned(), &format!("{path}.objects"))?;
    let mor = index_names(j.morphisms.iter().map(|m| m.name.clone()), &format!("{path}.morphisms"))?;
    let mut morphisms = Vec::with_capacity(j.morphisms.len());
    for (i, m) in j.morphisms.iter().enumerate() {
        let p = format!("{path}.morphisms[{i}]");
        morphisms.push(Morphism {
            name: m.name.clone(),
            src: lookup(&obj, &m.src, &format!("{p}.src"))?,
            tgt: lookup(&obj, &m.tgt, &format!("{p}.tgt"))?,
        });
    }
    let mut ids = vec![usize::MAX; j.objects.len()];
    for (o, f) in &j.identities {
        let p = format!("{path}.identities.{o}");
        let oi = lookup(&obj, o, &p)?;
        let fi = lookup(&mor, f, &p)?;
        if morphisms[fi].src != oi || morphisms[fi].tgt != oi {
            return err(p, format!("`{f}` is not an endomorphism of `{o}`"));
        }
        ids[oi] = fi;
    }
    if let Some(o) = ids.iter().position(|&i| i == usize::MAX) {
        return err(format!("{path}.identities"), format!("missing identity for `{}`", j.objects[o]));
    }
    let is_id: HashSet<usize> = ids.iter().copied().collect();
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, e) in j.compose.iter().enumerate() {
        let p = format!("{path}.compose[{i}]");
        let (f, g, h) = (lookup(&mor, &e.after, &p)?, lookup(&mor, &e.then, &p)?, lookup(&mor, &e.equals, &p)?);
        if is_id.contains(&f) || is_id.contains(&g) {
            return err(p, "composites with identities are implicit");
        }
        if table.insert((f, g), h).is_some_and(|old| old != h) {
            return err(p, format!("conflicting entries for `{}` then `{}`", e.after, e.then));
        }
    }
    let c = FinCat::from_fn(j.objects.clone(), morphisms, ids.clone(), |f, g| {
        if is_id.contains(&f) {
            Some(g)
        } else if is_id.contains(&g) {
            Some(f)
        } else {
            table.get(&(f, g)).copied()
        }
    })
    .or_else(|e| match e {
        CatError::MissingComposition { after, then } => {
            err(format!("{path}.compose"), format!("missing entry for `{after}` then `{then}`"))
        }
        e => err(path, e.to_string()),
    })?;
    let rep = validate_category(&c);
    if let Some(v) = rep.unit_failures.first().or(rep.assoc_failures.first()) {
        return err(path, format!("category axiom fails: {v}"));
    }
    Ok(c)
}

// ---------------------------------------------------------------------------
// 2-categories

fn is_plain_locally_discrete(k: &TwoCat) -> bool {
    k.is_locally_discrete()
        && k.cells2.iter().enumerate().all(|(a, c)| c.src == a && c.name == format!("1_{}", k.cells1[a].name))
}

pub fn two_cat_to_json(k: &TwoCat) -> Result<TwoCatJson> {
    let category = fincat_to_json(k.underlying())?;
    if is_plain_locally_discrete(k) {
        return Ok(TwoCatJson { category, two_cells: None });
    }
    check_unique(k.cells2.iter().map(|c| &c.name), "two_cells")?;
    let n1 = |f: usize| k.cells1[f].name.clone();
    let n2 = |a: usize| k.cells2[a].name.clone();
    let mut cells: Vec<MorphismJson> =
        k.cells2.iter().map(|c| MorphismJson { name: c.name.clone(), src: n1(c.src), tgt: n1(c.tgt) }).collect();
    cells.sort_by(|a, b| a.name.cmp(&b.name));
    let identities = (0..k.cells1.len()).map(|f| (n1(f), n2(k.id2(f)))).collect();
    let mut vertical = Vec::new();
    let mut horizontal = Vec::new();
    for x in 0..k.cells2.len() {
        for y in 0..k.cells2.len() {
            let (cx, cy) = (&k.cells2[x], &k.cells2[y]);
            let (ix, iy) = (k.is_identity2(x), k.is_identity2(y));
            if cx.tgt == cy.src && !ix && !iy {
                vertical.push(CompJson { after: n2(x), then: n2(y), equals: n2(k.vcomp(x, y)) });
            }
            if k.tgt1(cx.src) == k.src1(cy.src) && !(ix && iy) {
                horizontal.push(CompJson { after: n2(x), then: n2(y), equals: n2(k.hcomp(x, y)) });
            }
        }
    }
    vertical.sort();
    horizontal.sort();
    Ok(TwoCatJson { category, two_cells: Some(TwoCellsJson { cells, identities, vertical, horizontal }) })
}

pub fn two_cat_from_json(j: &TwoCatJson, path: &str) -> Result<TwoCat> {
    let cat = fincat_from_json(&j.category, &format!("{path}.category"))?;
    let Some(tc) = &j.two_cells else {
        return Ok(TwoCat::locally_discrete(&cat));
    };
    let p2 = format!("{path}.two_cells");
    let c1: HashMap<String, usize> = cat.morphisms.iter().enumerate().map(|(i, m)| (m.name.clone(), i)).collect();
    let c2 = index_names(tc.cells.iter().map(|c| c.name.clone()), &format!("{p2}.cells"))?;
    let mut cells2 = Vec::new();
    for (i, c) in tc.cells.iter().enumerate() {
        let p = format!("{p2}.cells[{i}]");
        cells2.push(Cell2 { name: c.name.clone(), src: lookup(&c1, &c.src, &p)?, tgt: lookup(&c1, &c.tgt, &p)? });
    }
    let mut id2 = vec![usize::MAX; cat.n_mor()];
    for (f, a) in &tc.identities {
        let p = format!("{p2}.identities.{f}");
        id2[lookup(&c1, f, &p)?] = lookup(&c2, a, &p)?;
    }
    if let Some(f) = id2.iter().position(|&a| a == usize::MAX) {
        return err(format!("{p2}.identities"), format!("missing identity 2-cell for `{}`", cat.morphisms[f].name));
    }
    let is_id: HashSet<usize> = id2.iter().copied().collect();
    let table = |entries: &[CompJson], what: &str| -> Result<HashMap<(usize, usize), usize>> {
        let mut t = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            let p = format!("{p2}.{what}[{i}]");
            let key = (lookup(&c2, &e.after, &p)?, lookup(&c2, &e.then, &p)?);
            if t.insert(key, lookup(&c2, &e.equals, &p)?).is_some() {
                return err(p, "duplicate entry");
            }
        }
        Ok(t)
    };
    let vt = table(&tc.vertical, "vertical")?;
    let ht = table(&tc.horizontal, "horizontal")?;
    let missing: RefCell<Option<String>> = RefCell::new(None);
    let k = TwoCat::from_parts(TwoCatParts {
        objects: cat.objects.clone(),
        cells1: cat.morphisms.clone(),
        id1: cat.identities().to_vec(),
        cells2: cells2.clone(),
        id2: id2.clone(),
        comp1: |f, g| Some(cat.seq(f, g)),
        vcomp: |x, y| {
            let r = if is_id.contains(&x) {
                Some(y)
            } else if is_id.contains(&y) {
                Some(x)
            } else {
                vt.get(&(x, y)).copied()
            };
            if r.is_none() {
                missing.borrow_mut().get_or_insert(format!(
                    "vertical: missing entry for `{}` then `{}`",
                    cells2[x].name, cells2[y].name
                ));
            }
            r
        },
        hcomp: |x, y| {
            let r = if is_id.contains(&x) && is_id.contains(&y) {
                Some(id2[cat.seq(cells2[x].src, cells2[y].src)])
            } else {
                ht.get(&(x, y)).copied()
            };
            if r.is_none() {
                missing.borrow_mut().get_or_insert(format!(
                    "horizontal: missing entry for `{}` then `{}`",
                    cells2[x].name, cells2[y].name
                ));
            }
            r
        },
    });
    let k = match (k, missing.into_inner()) {
        (Ok(k), _) => k,
        (Err(_), Some(m)) => return err(p2, m),
        (Err(e), None) => return err(path, e.to_string()),
    };
    let rep = validate_two_cat(&k);
    if let Some(v) = rep.failures.first() {
        return err(path, format!("2-category axiom fails: {v}"));
    }
    Ok(k)
}

pub fn fcat_to_json(f: &FCat) -> Result<FCatJson> {
    let k = &f.base;
    let mut tight: Vec<String> = (0..k.cells1.len())
        .filter(|&c| f.tight[c] && k.underlying().identities().iter().all(|&i| i != c))
        .map(|c| k.cells1[c].name.clone())
        .collect();
    tight.sort();
    Ok(FCatJson { two_cat: two_cat_to_json(k)?, tight })
}

pub fn fcat_from_json(j: &FCatJson, path: &str) -> Result<FCat> {
    let k = two_cat_from_json(&j.two_cat, &format!("{path}.two_cat"))?;
    let mut tight = vec![false; k.cells1.len()];
    for o in 0..k.n_obj() {
        tight[k.id1(o)] = true;
    }
    for (i, n) in j.tight.iter().enumerate() {
        match k.cell1_index(n) {
            Some(c) => tight[c] = true,
            None => return err(format!("{path}.tight[{i}]"), format!("unknown 1-cell `{n}`")),
        }
    }
    FCat::new(k, tight).or_else(|e| err(format!("{path}.tight"), e.to_string()))
}

// ---------------------------------------------------------------------------
// functors and weights

pub fn fun_to_json(f: &Fun, src: &FinCat, tgt: &FinCat) -> FunJson {
    FunJson {
        objects: (0..src.n_obj()).map(|o| (src.objects[o].clone(), tgt.objects[f.on_obj[o]].clone())).collect(),
        morphisms: (0..src.n_mor())
            .filter(|&m| !src.is_identity(m))
            .map(|m| (src.morphisms[m].name.clone(), tgt.morphisms[f.on_mor[m]].name.clone()))
            .collect(),
    }
}

fn names_of(c: &FinCat) -> (HashMap<String, usize>, HashMap<String, usize>) {
    (
        c.objects.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect(),
        c.morphisms.iter().enumerate().map(|(i, m)| (m.name.clone(), i)).collect(),
    )
}

pub fn fun_from_json(j: &FunJson, src: &FinCat, tgt: &FinCat, path: &str) -> Result<Fun> {
    let (to, tm) = names_of(tgt);
    let mut on_obj = vec![usize::MAX; src.n_obj()];
    for o in 0..src.n_obj() {
        let Some(n) = j.objects.get(&src.objects[o]) else {
            return err(format!("{path}.objects"), format!("missing image of `{}`", src.objects[o]));
        };
        on_obj[o] = lookup(&to, n, &format!("{path}.objects.{}", src.objects[o]))?;
    }
    if j.objects.len() != src.n_obj() {
        return err(format!("{path}.objects"), "entries for unknown objects");
    }
    let mut on_mor = vec![usize::MAX; src.n_mor()];
    let mut used = 0;
    for m in 0..src.n_mor() {
        if src.is_identity(m) {
            on_mor[m] = tgt.id(on_obj[src.src(m)]);
            continue;
        }
        let name = &src.morphisms[m].name;
        let Some(n) = j.morphisms.get(name) else {
            return err(format!("{path}.morphisms"), format!("missing image of `{name}`"));
        };
        used += 1;
        on_mor[m] = lookup(&tm, n, &format!("{path}.morphisms.{name}"))?;
    }
    if used != j.morphisms.len() {
        return err(format!("{path}.morphisms"), "entries for unknown or identity morphisms");
    }
    let f = Fun { on_obj, on_mor };
    f.validate(src, tgt).or_else(|e| err(path, e.to_string()))?;
    Ok(f)
}

pub fn cat_weight_to_json(w: &CatWeight, d: &TwoCat) -> Result<CatWeightJson> {
    let mut values = BTreeMap::new();
    for o in 0..d.n_obj() {
        values.insert(d.objects[o].clone(), fincat_to_json(&w.values[o])?);
    }
    let mut on1 = BTreeMap::new();
    for u in 0..d.cells1.len() {
        if d.underlying().is_identity(u) {
            continue;
        }
        let (s, t) = (&w.values[d.src1(u)], &w.values[d.tgt1(u)]);
        on1.insert(d.cells1[u].name.clone(), fun_to_json(&w.on1[u], s, t));
    }
    let mut on2 = BTreeMap::new();
    for a in d.proper_cells2() {
        let u = d.cells2[a].src;
        let (s, t) = (&w.values[d.src1(u)], &w.values[d.tgt1(u)]);
        let comps =
            (0..s.n_obj()).map(|x| (s.objects[x].clone(), t.morphisms[w.on2[a].comp[x]].name.clone())).collect();
        on2.insert(d.cells2[a].name.clone(), comps);
    }
    Ok(CatWeightJson { values, on1, on2 })
}

pub fn cat_weight_from_json(j: &CatWeightJson, d: &TwoCat, path: &str) -> Result<CatWeight> {
    let mut values = Vec::with_capacity(d.n_obj());
    for o in &d.objects {
        let Some(v) = j.values.get(o) else {
            return err(format!("{path}.values"), format!("missing value at `{o}`"));
        };
        values.push(fincat_from_json(v, &format!("{path}.values.{o}"))?);
    }
    if j.values.len() != d.n_obj() {
        return err(format!("{path}.values"), "entries for unknown objects");
    }
    let mut on1 = Vec::with_capacity(d.cells1.len());
    let mut used = 0;
    for u in 0..d.cells1.len() {
        let (s, t) = (&values[d.src1(u)], &values[d.tgt1(u)]);
        if d.underlying().is_identity(u) {
            on1.push(Fun::identity(s));
            continue;
        }
        let name = &d.cells1[u].name;
        let Some(f) = j.on1.get(name) else {
            return err(format!("{path}.on1"), format!("missing image of `{name}`"));
        };
        used += 1;
        on1.push(fun_from_json(f, s, t, &format!("{path}.on1.{name}"))?);
    }
    if used != j.on1.len() {
        return err(format!("{path}.on1"), "entries for unknown or identity 1-cells");
    }
    let mut on2 = Vec::with_capacity(d.cells2.len());
    used = 0;
    for a in 0..d.cells2.len() {
        let u = d.cells2[a].src;
        let (s, t) = (&values[d.src1(u)], &values[d.tgt1(u)]);
        if d.is_identity2(a) {
            on2.push(NatTrans::identity(&on1[u], t));
            continue;
        }
        let name = &d.cells2[a].name;
        let Some(c) = j.on2.get(name) else {
            return err(format!("{path}.on2"), format!("missing image of `{name}`"));
        };
        used += 1;
        let (_, tm) = names_of(t);
        let mut comp = Vec::with_capacity(s.n_obj());
        for x in &s.objects {
            let Some(m) = c.get(x) else {
                return err(format!("{path}.on2.{name}"), format!("missing component at `{x}`"));
            };
            comp.push(lookup(&tm, m, &format!("{path}.on2.{name}.{x}"))?);
        }
        on2.push(NatTrans { comp });
    }
    if used != j.on2.len() {
        return err(format!("{path}.on2"), "entries for unknown or identity 2-cells");
    }
    let w = CatWeight { values, on1, on2 };
    w.validate(d).or_else(|e| err(path, e.to_string()))?;
    Ok(w)
}

pub fn two_weight_to_json(w: &TwoWeight) -> Result<TwoWeightJson> {
    Ok(TwoWeightJson { shape: two_cat_to_json(&w.shape)?, phi: cat_weight_to_json(&w.phi, &w.shape)? })
}

pub fn two_weight_from_json(j: &TwoWeightJson, path: &str) -> Result<TwoWeight> {
    let shape = two_cat_from_json(&j.shape, &format!("{path}.shape"))?;
    let phi = cat_weight_from_json(&j.phi, &shape, &format!("{path}.phi"))?;
    Ok(TwoWeight { shape, phi })
}

pub fn fweight_to_json(w: &FWeight) -> Result<FWeightJson> {
    let d = &w.shape.base;
    let tight_objects = w
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
    Ok(FWeightJson { shape: fcat_to_json(&w.shape)?, phi_lambda: cat_weight_to_json(&w.phi_lambda, d)?, tight_objects })
}

pub fn fweight_from_json(j: &FWeightJson, path: &str) -> Result<FWeight> {
    let shape = fcat_from_json(&j.shape, &format!("{path}.shape"))?;
    let d = &shape.base;
    let phi = cat_weight_from_json(&j.phi_lambda, d, &format!("{path}.phi_lambda"))?;
    let mut tight = Vec::with_capacity(d.n_obj());
    for (o, name) in d.objects.iter().enumerate() {
        let p = format!("{path}.tight_objects.{name}");
        let Some(xs) = j.tight_objects.get(name) else {
            return err(format!("{path}.tight_objects"), format!("missing entry for `{name}`"));
        };
        let (on, _) = names_of(&phi.values[o]);
        let mut idx = xs.iter().map(|x| lookup(&on, x, &p)).collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        tight.push(idx);
    }
    if j.tight_objects.len() != d.n_obj() {
        return err(format!("{path}.tight_objects"), "entries for unknown objects");
    }
    FWeight::from_tight_objects(shape, phi, tight).or_else(|e| err(path, e.to_string()))
}

pub fn two_fun_to_json(f: &TwoFun, src: &TwoCat, tgt: &TwoCat) -> TwoFunJson {
    TwoFunJson {
        on0: (0..src.n_obj()).map(|o| (src.objects[o].clone(), tgt.objects[f.on0[o]].clone())).collect(),
        on1: (0..src.cells1.len())
            .filter(|&u| !src.underlying().is_identity(u))
            .map(|u| (src.cells1[u].name.clone(), tgt.cells1[f.on1[u]].name.clone()))
            .collect(),
        on2: src.proper_cells2().map(|a| (src.cells2[a].name.clone(), tgt.cells2[f.on2[a]].name.clone())).collect(),
    }
}

pub fn two_fun_from_json(j: &TwoFunJson, src: &TwoCat, tgt: &TwoCat, path: &str) -> Result<TwoFun> {
    let to: HashMap<String, usize> = tgt.objects.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    let t1: HashMap<String, usize> = tgt.cells1.iter().enumerate().map(|(i, m)| (m.name.clone(), i)).collect();
    let t2: HashMap<String, usize> = tgt.cells2.iter().enumerate().map(|(i, c)| (c.name.clone(), i)).collect();
    let mut on0 = Vec::with_capacity(src.n_obj());
    for o in &src.objects {
        let Some(n) = j.on0.get(o) else {
            return err(format!("{path}.on0"), format!("missing image of `{o}`"));
        };
        on0.push(lookup(&to, n, &format!("{path}.on0.{o}"))?);
    }
    let mut on1 = Vec::with_capacity(src.cells1.len());
    for u in 0..src.cells1.len() {
        if src.underlying().is_identity(u) {
            on1.push(tgt.id1(on0[src.src1(u)]));
            continue;
        }
        let name = &src.cells1[u].name;
        let Some(n) = j.on1.get(name) else {
            return err(format!("{path}.on1"), format!("missing image of `{name}`"));
        };
        on1.push(lookup(&t1, n, &format!("{path}.on1.{name}"))?);
    }
    let mut on2 = Vec::with_capacity(src.cells2.len());
    for a in 0..src.cells2.len() {
        if src.is_identity2(a) {
            on2.push(tgt.id2(on1[src.cells2[a].src]));
            continue;
        }
        let name = &src.cells2[a].name;
        let Some(n) = j.on2.get(name) else {
            return err(format!("{path}.on2"), format!("missing image of `{name}`"));
        };
        on2.push(lookup(&t2, n, &format!("{path}.on2.{name}"))?);
    }
    let n1 = src.cells1.len() - src.n_obj();
    let n2 = src.proper_cells2().count();
    if j.on0.len() != src.n_obj() || j.on1.len() != n1 || j.on2.len() != n2 {
        return err(path, "entries for unknown or identity cells");
    }
    let f = TwoFun { on0, on1, on2 };
    f.validate(src, tgt).or_else(|e| err(path, e.to_string()))?;
    Ok(f)
}

pub fn ffun_from_json(j: &TwoFunJson, src: &FCat, tgt: &FCat, path: &str) -> Result<FFun> {
    let f = FFun { fun: two_fun_from_json(j, &src.base, &tgt.base, path)? };
    f.validate(src, tgt).or_else(|e| err(path, e.to_string()))?;
    Ok(f)
}

// ---------------------------------------------------------------------------
// monads

pub fn monad_to_json(m: &FiniteMonad) -> Result<MonadJson> {
    Ok(match m {
        FiniteMonad::Endo(e) => {
            let k = &e.base.base;
            let per_obj =
                |v: &[usize]| (0..k.n_obj()).map(|o| (k.objects[o].clone(), k.cells1[v[o]].name.clone())).collect();
            MonadJson::Endo(EndoMonadJson {
                base: fcat_to_json(&e.base)?,
                t: two_fun_to_json(&e.t.fun, k, k),
                eta: per_obj(&e.eta),
                mu: per_obj(&e.mu),
            })
        }
        FiniteMonad::Writer(w) => MonadJson::Writer(WriterMonadJson { base: fcat_to_json(&w.base)? }),
    })
}

pub fn monad_from_json(j: &MonadJson, path: &str) -> Result<FiniteMonad> {
    match j {
        MonadJson::Endo(e) => {
            let p = format!("{path}.endo");
            let base = fcat_from_json(&e.base, &format!("{p}.base"))?;
            let t = ffun_from_json(&e.t, &base, &base, &format!("{p}.t"))?;
            let k = &base.base;
            let per_obj = |m: &BTreeMap<String, String>, what: &str| -> Result<Vec<usize>> {
                let mut out = Vec::with_capacity(k.n_obj());
                for o in &k.objects {
                    let q = format!("{p}.{what}.{o}");
                    let Some(n) = m.get(o) else {
                        return err(q, "missing component");
                    };
                    out.push(k.cell1_index(n).map_or_else(|| err(&q, format!("unknown 1-cell `{n}`")), Ok)?);
                }
                Ok(out)
            };
            let eta = per_obj(&e.eta, "eta")?;
            let mu = per_obj(&e.mu, "mu")?;
            let m = FMonad::new(base, t, eta, mu).or_else(|e| err(&p, e.to_string()))?;
            Ok(FiniteMonad::Endo(m))
        }
        MonadJson::Writer(w) => {
            Ok(FiniteMonad::Writer(WriterMonad { base: fcat_from_json(&w.base, &format!("{path}.writer.base"))? }))
        }
    }
}

pub fn monad2_to_json(m: &Monad2, k: &TwoCat) -> Monad2Json {
    Monad2Json {
        object: k.objects[m.object].clone(),
        t: k.cells1[m.t].name.clone(),
        mu: k.cells2[m.mu].name.clone(),
        eta: k.cells2[m.eta].name.clone(),
    }
}

pub fn monad2_from_json(j: &Monad2Json, k: &TwoCat, path: &str) -> Result<Monad2> {
    let m = Monad2 {
        object: k.obj_index(&j.object).map_or_else(|| err(format!("{path}.object"), "unknown object"), Ok)?,
        t: k.cell1_index(&j.t).map_or_else(|| err(format!("{path}.t"), "unknown 1-cell"), Ok)?,
        mu: k.cell2_index(&j.mu).map_or_else(|| err(format!("{path}.mu"), "unknown 2-cell"), Ok)?,
        eta: k.cell2_index(&j.eta).map_or_else(|| err(format!("{path}.eta"), "unknown 2-cell"), Ok)?,
    };
    m.validate(k).or_else(|e| err(path, e.to_string()))?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_json() -> FinCatJson {
        fincat_to_json(&FinCat::arrow()).unwrap()
    }

    #[test]
    fn fincat_round_trip_is_canonical() {
        let c = FinCat::free_iso();
        let j = fincat_to_json(&c).unwrap();
        let back = fincat_from_json(&j, "c").unwrap();
        assert_eq!(fincat_to_json(&back).unwrap(), j);
        assert!(j.objects.windows(2).all(|w| w[0] < w[1]));
        assert!(j.morphisms.windows(2).all(|w| w[0].name < w[1].name));
        assert_eq!(j.compose.len(), 2);
    }

    #[test]
    fn identity_composites_are_rejected() {
        let mut j = arrow_json();
        let id = j.identities.values().next().unwrap().clone();
        j.compose.push(CompJson { after: id.clone(), then: id.clone(), equals: id });
        let e = fincat_from_json(&j, "c").unwrap_err().to_string();
        assert!(e.starts_with("c.compose[0]"), "{e}");
    }

    #[test]
    fn unknown_object_is_reported_with_path() {
        let mut j = arrow_json();
        j.morphisms[0].src = "nowhere".into();
        let e = fincat_from_json(&j, "c").unwrap_err().to_string();
        assert!(e.starts_with("c.morphisms[0].src"), "{e}");
    }

    #[test]
    fn missing_identity_is_reported() {
        let mut j = arrow_json();
        j.identities.pop_first();
        let e = fincat_from_json(&j, "c").unwrap_err().to_string();
        assert!(e.contains("missing identity"), "{e}");
    }

    #[test]
    fn locally_discrete_two_cat_omits_cells() {
        let k = TwoCat::locally_discrete(&FinCat::arrow());
        let j = two_cat_to_json(&k).unwrap();
        assert!(j.two_cells.is_none());
        let back = two_cat_from_json(&j, "k").unwrap();
        assert_eq!(back.cells2.len(), k.cells2.len());
    }
}
