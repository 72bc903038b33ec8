//! Seeded generators of small shapes, weights and F-weights.

#![allow(dead_code)]

use std::collections::HashMap;

use fcat_core::cat_core::{
    enumerate_functors, functor_category, realize_presentation, CatPresentation, CompletionBudget, FinCat, Fun,
};
use fcat_core::f_core::FCat;
use fcat_core::two_cat::{CatWeight, TwoCat};
use fcat_core::weights::{locally_discrete_weight, FWeight};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random finitely presented category with at most 3 objects and
/// `max_mor` morphisms, or `None` when the presentation is too big.
pub fn random_shape(r: &mut TestRng, max_mor: usize) -> Option<FinCat> {
    let n = r.gen_range(1..=3);
    let mut p = CatPresentation::new((0..n).map(|i| ["a", "b", "c"][i].to_string()).collect());
    let k = r.gen_range(0..=4);
    let mut gens = Vec::new();
    for i in 0..k {
        let (s, t) = (r.gen_range(0..n), r.gen_range(0..n));
        gens.push((p.add_generator(format!("g{i}"), s, t), s, t));
    }
    for &(g, s, t) in &gens {
        if s == t {
            match r.gen_range(0..3) {
                0 => p.add_relation(s, vec![g, g], vec![g]),
                1 => p.add_relation(s, vec![g, g], vec![]),
                _ => {}
            }
        }
    }
    for &(g, s, t) in &gens {
        for &(h, s2, t2) in &gens {
            if g != h && t == s2 && t2 == s && r.gen_bool(0.5) {
                p.add_relation(s, vec![g, h], vec![]);
            }
        }
    }
    let budget = CompletionBudget { max_morphisms: 4 * max_mor, max_steps: 20_000 };
    let real = realize_presentation(&p, &budget).ok()?;
    (real.cat.n_mor() <= max_mor).then_some(real.cat)
}

/// Small categories used as weight values, with the functors between them.
pub struct Catalog {
    pub cats: Vec<(String, FinCat)>,
    pub k: TwoCat,
    funs: HashMap<(usize, usize), Vec<Fun>>,
}

impl Catalog {
    pub fn new() -> Catalog {
        let cats: Vec<(String, FinCat)> = vec![
            ("0".into(), FinCat::empty()),
            ("1".into(), FinCat::terminal()),
            ("1+1".into(), FinCat::discrete(&["x", "y"])),
            ("2".into(), FinCat::arrow()),
        ];
        let k = TwoCat::sub_of_cat(&cats);
        let mut funs = HashMap::new();
        for a in 0..cats.len() {
            for b in 0..cats.len() {
                funs.insert((a, b), functor_category(&cats[a].1, &cats[b].1).functors);
            }
        }
        Catalog { cats, k, funs }
    }

    /// The functor named by a 1-cell of `k`.
    pub fn functor(&self, cell: usize) -> Fun {
        let m = &self.k.cells1[cell];
        let i: usize = m.name.split(':').next().and_then(|s| s.parse().ok()).expect("cell name");
        self.funs[&(m.src, m.tgt)][i].clone()
    }

    /// A uniformly chosen functor `d → Cat` landing in the catalog.
    pub fn random_weight(&self, r: &mut TestRng, d: &TwoCat) -> CatWeight {
        let all = enumerate_functors(d.underlying(), self.k.underlying());
        let f = all.choose(r).expect("constant functors exist");
        let values = f.on_obj.iter().map(|&o| self.cats[o].1.clone()).collect();
        let on1 = f.on_mor.iter().map(|&c| self.functor(c)).collect();
        locally_discrete_weight(d, values, on1)
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::new()
    }
}

/// A random F-category on `c` whose tight part is generated by a random
/// set of morphisms.
pub fn random_fcat(r: &mut TestRng, c: &FinCat) -> FCat {
    let names: Vec<&str> = (0..c.n_mor())
        .filter(|&m| !c.is_identity(m) && r.gen_bool(0.5))
        .map(|m| c.morphisms[m].name.as_str())
        .collect();
    FCat::generated_by(TwoCat::locally_discrete(c), &names).expect("tight closure")
}

/// A random F-weight: random shape, values from the catalog and a
/// random tight subfunctor closed under the tight morphisms.
pub fn random_fweight(r: &mut TestRng, cat: &Catalog, max_mor: usize) -> Option<FWeight> {
    let c = random_shape(r, max_mor)?;
    let shape = random_fcat(r, &c);
    random_fweight_on(r, cat, shape)
}

/// A random F-weight on the given shape.
pub fn random_fweight_on(r: &mut TestRng, cat: &Catalog, shape: FCat) -> Option<FWeight> {
    let d = &shape.base;
    let phi = cat.random_weight(r, d);
    let mut tight: Vec<Vec<bool>> =
        phi.values.iter().map(|v| (0..v.n_obj()).map(|_| r.gen_bool(0.4)).collect()).collect();
    loop {
        let mut changed = false;
        for u in 0..d.cells1.len() {
            if !shape.tight[u] {
                continue;
            }
            let (s, t) = (d.src1(u), d.tgt1(u));
            for x in 0..tight[s].len() {
                let y = phi.on1[u].on_obj[x];
                if tight[s][x] && !tight[t][y] {
                    tight[t][y] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let objs = tight.iter().map(|t| (0..t.len()).filter(|&x| t[x]).collect()).collect();
    FWeight::from_tight_objects(shape, phi, objs).ok()
}
