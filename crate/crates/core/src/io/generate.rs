//! Seeded random categories and endofunctors.
//!
//! A category is the free category on a random DAG, quotiented by merging
//! random parallel paths and closing the relation under pre- and
//! post-composition. Objects and morphisms are then shuffled.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::category::{
    Category, CategoryError, Composite, Functor, MorphismId, MorphismRef, ObjectId,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generation failed for seed {seed} after {attempts} attempts")]
    GenerationFailed { seed: u64, attempts: usize },
}

const CATEGORY_ATTEMPTS: usize = 64;
const FUNCTOR_ATTEMPTS: usize = 32;
const PATH_CAP: usize = 400;

fn below(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.gen_range(0..n as u64) as usize
}

fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = below(rng, i + 1);
        v.swap(i, j);
    }
    v
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
        true
    }
}

/// Paths in a DAG whose generators go from lower to higher positions.
struct PathSpace {
    generators: Vec<(usize, usize)>,
    paths: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    ends: Vec<(usize, usize)>,
}

impl PathSpace {
    fn new(generators: Vec<(usize, usize)>) -> Option<PathSpace> {
        let mut paths: Vec<Vec<usize>> = (0..generators.len()).map(|g| vec![g]).collect();
        let mut frontier = 0;
        while frontier < paths.len() {
            let end = paths.len();
            for p in frontier..end {
                let t = generators[*paths[p].last().unwrap()].1;
                for (g, &(s, _)) in generators.iter().enumerate() {
                    if s == t {
                        let mut q = paths[p].clone();
                        q.push(g);
                        paths.push(q);
                    }
                }
                if paths.len() > PATH_CAP {
                    return None;
                }
            }
            frontier = end;
        }
        let ends = paths
            .iter()
            .map(|p| (generators[p[0]].0, generators[*p.last().unwrap()].1))
            .collect();
        let index = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Some(PathSpace {
            generators,
            paths,
            index,
            ends,
        })
    }

    /// Joins `a` and `b` and everything their extensions force.
    fn merge(&self, uf: &mut UnionFind, a: usize, b: usize) {
        let mut work = vec![(a, b)];
        while let Some((p, q)) = work.pop() {
            if !uf.union(p, q) {
                continue;
            }
            let (s, t) = self.ends[p];
            for (g, &(gs, gt)) in self.generators.iter().enumerate() {
                if gs == t {
                    work.push((self.extend(p, None, Some(g)), self.extend(q, None, Some(g))));
                }
                if gt == s {
                    work.push((self.extend(p, Some(g), None), self.extend(q, Some(g), None)));
                }
            }
        }
    }

    fn extend(&self, p: usize, before: Option<usize>, after: Option<usize>) -> usize {
        let mut path = Vec::with_capacity(self.paths[p].len() + 1);
        path.extend(before);
        path.extend_from_slice(&self.paths[p]);
        path.extend(after);
        self.index[&path]
    }

    fn concat(&self, f: usize, g: usize) -> usize {
        let mut path = self.paths[f].clone();
        path.extend_from_slice(&self.paths[g]);
        self.index[&path]
    }
}

/// A generated category in DAG positions, before shuffling.
struct Quotient {
    n_objects: usize,
    space: PathSpace,
    /// Representative path of each morphism.
    reps: Vec<usize>,
    class_of_path: Vec<usize>,
}

impl Quotient {
    fn category(&self) -> Result<Category, CategoryError> {
        let endpoints = self
            .reps
            .iter()
            .map(|&p| {
                let (s, t) = self.space.ends[p];
                (ObjectId(s), ObjectId(t))
            })
            .collect();
        let mut composites = Vec::new();
        for (fi, &fp) in self.reps.iter().enumerate() {
            for (gi, &gp) in self.reps.iter().enumerate() {
                if self.space.ends[fp].1 == self.space.ends[gp].0 {
                    composites.push(Composite {
                        g: MorphismId(gi),
                        f: MorphismId(fi),
                        h: MorphismId(self.class_of_path[self.space.concat(fp, gp)]),
                    });
                }
            }
        }
        Category::new(self.n_objects, endpoints, &composites)
    }
}

fn random_quotient(
    rng: &mut ChaCha8Rng,
    max_objects: usize,
    max_morphisms: usize,
) -> Option<Quotient> {
    let n = if rng.gen_bool(0.2) {
        1 + below(rng, max_objects)
    } else {
        let low = max_objects.div_ceil(2);
        low + below(rng, max_objects - low + 1)
    };
    let density = 0.2 + 0.7 * rng.gen::<f64>();
    let mut generators = Vec::new();
    'pairs: for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                let copies = if rng.gen_bool(0.25) { 2 } else { 1 };
                for _ in 0..copies {
                    if generators.len() == max_morphisms {
                        break 'pairs;
                    }
                    generators.push((i, j));
                }
            }
        }
    }
    let space = PathSpace::new(generators)?;
    let mut homs: Vec<(usize, usize)> = space.ends.clone();
    homs.sort_unstable();
    homs.dedup();
    if homs.len() > max_morphisms {
        return None;
    }
    let n_paths = space.paths.len();
    let target = homs.len() + below(rng, max_morphisms.min(n_paths) - homs.len() + 1);
    let mut uf = UnionFind((0..n_paths).collect());
    loop {
        let roots: Vec<usize> = (0..n_paths).filter(|&p| uf.find(p) == p).collect();
        if roots.len() <= target {
            break;
        }
        let mergeable: Vec<usize> = roots
            .iter()
            .copied()
            .filter(|&p| {
                roots
                    .iter()
                    .any(|&q| q != p && space.ends[q] == space.ends[p])
            })
            .collect();
        let p = mergeable[below(rng, mergeable.len())];
        let partners: Vec<usize> = roots
            .iter()
            .copied()
            .filter(|&q| q != p && space.ends[q] == space.ends[p])
            .collect();
        let q = partners[below(rng, partners.len())];
        space.merge(&mut uf, p, q);
    }
    let mut reps = Vec::new();
    let mut class_of_root = HashMap::new();
    let mut class_of_path = Vec::with_capacity(n_paths);
    for p in 0..n_paths {
        let r = uf.find(p);
        let class = *class_of_root.entry(r).or_insert_with(|| {
            reps.push(p);
            reps.len() - 1
        });
        class_of_path.push(class);
    }
    Some(Quotient {
        n_objects: n,
        space,
        reps,
        class_of_path,
    })
}

/// Random endofunctor of the quotient category, in positions.
fn random_functor(
    rng: &mut ChaCha8Rng,
    q: &Quotient,
    c: &Arc<Category>,
    collapse_probability: f64,
) -> Option<Functor> {
    let n = q.n_objects;
    let gens = &q.space.generators;
    let reachable = |x: usize, y: usize| x == y || !c.hom(ObjectId(x), ObjectId(y)).is_empty();
    let mut objects: Vec<usize> = Vec::with_capacity(n);
    for x in 0..n {
        let sources: Vec<usize> = gens
            .iter()
            .filter(|g| g.1 == x)
            .map(|g| objects[g.0])
            .collect();
        let feasible: Vec<usize> = (0..n)
            .filter(|&y| sources.iter().all(|&s| reachable(s, y)))
            .collect();
        let non_collapsing: Vec<usize> = feasible
            .iter()
            .copied()
            .filter(|y| !sources.contains(y))
            .collect();
        let collapsing: Vec<usize> = feasible
            .iter()
            .copied()
            .filter(|y| sources.contains(y))
            .collect();
        let y = if !collapsing.is_empty()
            && collapse_probability > 0.0
            && rng.gen_bool(collapse_probability)
        {
            collapsing[below(rng, collapsing.len())]
        } else if non_collapsing.contains(&x) && rng.gen_bool(0.5) {
            x
        } else if !non_collapsing.is_empty() {
            non_collapsing[below(rng, non_collapsing.len())]
        } else {
            return None;
        };
        objects.push(y);
    }
    let generator_images: Vec<MorphismRef> = gens
        .iter()
        .map(|&(s, t)| {
            let (fs, ft) = (objects[s], objects[t]);
            if fs == ft {
                MorphismRef::Identity(ObjectId(fs))
            } else {
                let hom = c.hom(ObjectId(fs), ObjectId(ft));
                MorphismRef::NonIdentity(hom[below(rng, hom.len())])
            }
        })
        .collect();
    let morphisms = q
        .reps
        .iter()
        .map(|&p| {
            let path = &q.space.paths[p];
            path[1..].iter().fold(generator_images[path[0]], |acc, &g| {
                c.compose_ref(generator_images[g], acc)
                    .expect("images of a path are composable")
            })
        })
        .collect();
    Functor::new(
        c.clone(),
        c.clone(),
        objects.into_iter().map(ObjectId).collect(),
        morphisms,
    )
    .ok()
}

/// Renames the objects and morphisms of an endofunctor's category:
/// old object `i` becomes `object_perm[i]`, old morphism `j` becomes `morphism_perm[j]`.
pub fn relabel_endofunctor(f: &Functor, object_perm: &[usize], morphism_perm: &[usize]) -> Functor {
    let c = Arc::new(
        f.source()
            .relabel(object_perm, morphism_perm)
            .expect("relabelling preserves validity"),
    );
    let mut objects = vec![ObjectId(0); c.n_objects()];
    for x in f.source().objects() {
        objects[object_perm[x.0]] = ObjectId(object_perm[f.object(x).0]);
    }
    let mut morphisms = vec![MorphismRef::Identity(ObjectId(0)); c.n_morphisms()];
    for m in f.source().morphism_ids() {
        morphisms[morphism_perm[m.0]] = match f.morphism(m) {
            MorphismRef::Identity(x) => MorphismRef::Identity(ObjectId(object_perm[x.0])),
            MorphismRef::NonIdentity(n) => MorphismRef::NonIdentity(MorphismId(morphism_perm[n.0])),
        };
    }
    Functor::new(c.clone(), c, objects, morphisms).expect("relabelling preserves functoriality")
}

/// A random category with at most `max_objects` objects and
/// `max_morphisms` non-identity morphisms, and a random endofunctor of it.
pub fn generate_random(
    seed: u64,
    max_objects: usize,
    max_morphisms: usize,
    collapse_probability: f64,
) -> Result<(Arc<Category>, Functor), GenerateError> {
    if max_objects == 0 {
        return Err(GenerateError::InvalidParameter(
            "max_objects must be at least 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&collapse_probability) {
        return Err(GenerateError::InvalidParameter(format!(
            "collapse probability {collapse_probability} is not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CATEGORY_ATTEMPTS {
        let Some(q) = random_quotient(&mut rng, max_objects, max_morphisms) else {
            continue;
        };
        let Ok(c) = q.category() else {
            continue;
        };
        let c = Arc::new(c);
        let f = (0..FUNCTOR_ATTEMPTS)
            .find_map(|_| random_functor(&mut rng, &q, &c, collapse_probability))
            .unwrap_or_else(|| Functor::identity(c.clone()));
        let object_perm = shuffled(&mut rng, c.n_objects());
        let morphism_perm = shuffled(&mut rng, c.n_morphisms());
        let f = relabel_endofunctor(&f, &object_perm, &morphism_perm);
        return Ok((f.source().clone(), f));
    }
    Err(GenerateError::GenerationFailed {
        seed,
        attempts: CATEGORY_ATTEMPTS,
    })
}
