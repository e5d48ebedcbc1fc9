//! Finite acyclic categories and functors between them.
//!
//! Identity morphisms are never stored. A [`Category`] keeps its non-identity
//! morphisms in a dense table indexed by [`MorphismId`]; an identity is
//! referred to through [`MorphismRef::Identity`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MorphismId(pub usize);

impl ObjectId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl MorphismId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for MorphismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

/// A morphism that may be an identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MorphismRef {
    Identity(ObjectId),
    NonIdentity(MorphismId),
}

impl MorphismRef {
    pub fn is_identity(self) -> bool {
        matches!(self, MorphismRef::Identity(_))
    }

    pub fn non_identity(self) -> Option<MorphismId> {
        match self {
            MorphismRef::NonIdentity(m) => Some(m),
            MorphismRef::Identity(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Endpoints {
    pub src: ObjectId,
    pub tgt: ObjectId,
}

/// One entry of a composition table: `g ∘ f = h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composite {
    pub g: MorphismId,
    pub f: MorphismId,
    pub h: MorphismId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error(
        "morphism {morphism} refers to object {object}, but there are only {n_objects} objects"
    )]
    ObjectOutOfRange {
        morphism: MorphismId,
        object: ObjectId,
        n_objects: usize,
    },
    #[error("composition table refers to unknown morphism {0}")]
    MorphismOutOfRange(MorphismId),
    #[error("morphism {morphism} is a non-identity endomorphism of object {object}")]
    EndoMorphism {
        morphism: MorphismId,
        object: ObjectId,
    },
    #[error("morphisms form a directed cycle through objects {objects:?}")]
    CycleDetected { objects: Vec<ObjectId> },
    #[error("bad composite {g} . {f} = {h}: {reason}")]
    BadComposite {
        g: MorphismId,
        f: MorphismId,
        h: MorphismId,
        reason: &'static str,
    },
    #[error("composite {g} . {f} is given twice with different values")]
    DuplicateComposite { g: MorphismId, f: MorphismId },
    #[error("composable pair {g} . {f} has no composite")]
    MissingComposite { g: MorphismId, f: MorphismId },
    #[error("composition is not associative on {h} . {g} . {f}")]
    NonAssociative {
        h: MorphismId,
        g: MorphismId,
        f: MorphismId,
    },
}

/// A validated finite acyclic category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Category {
    n_objects: usize,
    morphisms: Vec<Endpoints>,
    /// Morphisms leaving each object, sorted by id.
    outgoing: Vec<Vec<MorphismId>>,
    /// `after[f]` lists `(g, g ∘ f)` sorted by `g`.
    after: Vec<Vec<(MorphismId, MorphismId)>>,
}

impl Category {
    /// Validates raw data and builds a category.
    pub fn new(
        n_objects: usize,
        endpoints: Vec<(ObjectId, ObjectId)>,
        composites: &[Composite],
    ) -> Result<Category, CategoryError> {
        let morphisms: Vec<Endpoints> = endpoints
            .into_iter()
            .map(|(src, tgt)| Endpoints { src, tgt })
            .collect();
        for (i, e) in morphisms.iter().enumerate() {
            for object in [e.src, e.tgt] {
                if object.0 >= n_objects {
                    return Err(CategoryError::ObjectOutOfRange {
                        morphism: MorphismId(i),
                        object,
                        n_objects,
                    });
                }
            }
            if e.src == e.tgt {
                return Err(CategoryError::EndoMorphism {
                    morphism: MorphismId(i),
                    object: e.src,
                });
            }
        }

        let mut outgoing = vec![Vec::new(); n_objects];
        for (i, e) in morphisms.iter().enumerate() {
            outgoing[e.src.0].push(MorphismId(i));
        }
        if let Some(objects) = find_cycle(n_objects, &morphisms) {
            return Err(CategoryError::CycleDetected { objects });
        }

        let m = morphisms.len();
        let mut table: Vec<BTreeMap<MorphismId, MorphismId>> = vec![BTreeMap::new(); m];
        for c in composites {
            for id in [c.g, c.f, c.h] {
                if id.0 >= m {
                    return Err(CategoryError::MorphismOutOfRange(id));
                }
            }
            let (eg, ef, eh) = (morphisms[c.g.0], morphisms[c.f.0], morphisms[c.h.0]);
            if ef.tgt != eg.src {
                return Err(CategoryError::BadComposite {
                    g: c.g,
                    f: c.f,
                    h: c.h,
                    reason: "target of f is not the source of g",
                });
            }
            if eh.src != ef.src || eh.tgt != eg.tgt {
                return Err(CategoryError::BadComposite {
                    g: c.g,
                    f: c.f,
                    h: c.h,
                    reason: "endpoints of h do not match src(f) -> tgt(g)",
                });
            }
            if let Some(&old) = table[c.f.0].get(&c.g) {
                if old != c.h {
                    return Err(CategoryError::DuplicateComposite { g: c.g, f: c.f });
                }
            }
            table[c.f.0].insert(c.g, c.h);
        }

        for f in 0..m {
            let tgt = morphisms[f].tgt;
            for &g in &outgoing[tgt.0] {
                if !table[f].contains_key(&g) {
                    return Err(CategoryError::MissingComposite {
                        g,
                        f: MorphismId(f),
                    });
                }
            }
        }

        let after: Vec<Vec<(MorphismId, MorphismId)>> = table
            .into_iter()
            .map(|row| row.into_iter().collect())
            .collect();
        let category = Category {
            n_objects,
            morphisms,
            outgoing,
            after,
        };
        category.check_associativity()?;
        Ok(category)
    }

    /// The thin category of a strict order given as a list of pairs `x < y`.
    /// The list must already be transitively closed.
    pub fn thin(
        n_objects: usize,
        relations: &[(ObjectId, ObjectId)],
    ) -> Result<Category, CategoryError> {
        let ids: HashMap<(ObjectId, ObjectId), MorphismId> = relations
            .iter()
            .enumerate()
            .map(|(i, &pair)| (pair, MorphismId(i)))
            .collect();
        let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); n_objects];
        for (i, &(x, _)) in relations.iter().enumerate() {
            if x.0 < n_objects {
                by_src[x.0].push(i);
            }
        }
        let mut composites = Vec::new();
        for (fi, &(x, y)) in relations.iter().enumerate() {
            if y.0 >= n_objects {
                continue;
            }
            for &gi in &by_src[y.0] {
                let z = relations[gi].1;
                if let Some(&h) = ids.get(&(x, z)) {
                    composites.push(Composite {
                        g: MorphismId(gi),
                        f: MorphismId(fi),
                        h,
                    });
                }
            }
        }
        Category::new(n_objects, relations.to_vec(), &composites)
    }

    /// The discrete category with `n` objects and no morphisms.
    pub fn discrete(n: usize) -> Category {
        Category {
            n_objects: n,
            morphisms: Vec::new(),
            outgoing: vec![Vec::new(); n],
            after: Vec::new(),
        }
    }

    pub fn check_associativity(&self) -> Result<(), CategoryError> {
        for f in self.morphism_ids() {
            for &(g, gf) in &self.after[f.0] {
                for &(h, hg) in &self.after[g.0] {
                    let left = self.compose(h, gf);
                    let right = self.compose(hg, f);
                    if left.is_none() || left != right {
                        return Err(CategoryError::NonAssociative { h, g, f });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.n_objects).map(ObjectId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorphismId> + '_ {
        (0..self.morphisms.len()).map(MorphismId)
    }

    pub fn endpoints(&self, m: MorphismId) -> Endpoints {
        self.morphisms[m.0]
    }

    pub fn src(&self, m: MorphismId) -> ObjectId {
        self.morphisms[m.0].src
    }

    pub fn tgt(&self, m: MorphismId) -> ObjectId {
        self.morphisms[m.0].tgt
    }

    /// Non-identity morphisms with the given source, in increasing id order.
    pub fn outgoing(&self, x: ObjectId) -> &[MorphismId] {
        &self.outgoing[x.0]
    }

    /// `g ∘ f`, or `None` when the pair is not composable.
    pub fn compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        let row = &self.after[f.0];
        row.binary_search_by_key(&g, |&(g2, _)| g2)
            .ok()
            .map(|i| row[i].1)
    }

    /// Composition with identities acting neutrally.
    pub fn compose_ref(&self, g: MorphismRef, f: MorphismRef) -> Option<MorphismRef> {
        match (g, f) {
            (MorphismRef::Identity(x), MorphismRef::Identity(y)) => {
                (x == y).then_some(MorphismRef::Identity(x))
            }
            (MorphismRef::Identity(x), MorphismRef::NonIdentity(f)) => {
                (self.tgt(f) == x).then_some(MorphismRef::NonIdentity(f))
            }
            (MorphismRef::NonIdentity(g), MorphismRef::Identity(y)) => {
                (self.src(g) == y).then_some(MorphismRef::NonIdentity(g))
            }
            (MorphismRef::NonIdentity(g), MorphismRef::NonIdentity(f)) => {
                self.compose(g, f).map(MorphismRef::NonIdentity)
            }
        }
    }

    pub fn ref_src(&self, m: MorphismRef) -> ObjectId {
        match m {
            MorphismRef::Identity(x) => x,
            MorphismRef::NonIdentity(m) => self.src(m),
        }
    }

    pub fn ref_tgt(&self, m: MorphismRef) -> ObjectId {
        match m {
            MorphismRef::Identity(x) => x,
            MorphismRef::NonIdentity(m) => self.tgt(m),
        }
    }

    /// All composition table entries, ordered by `(f, g)`.
    pub fn composites(&self) -> Vec<Composite> {
        self.morphism_ids()
            .flat_map(|f| {
                self.after[f.0]
                    .iter()
                    .map(move |&(g, h)| Composite { g, f, h })
            })
            .collect()
    }

    /// Morphisms `x -> y`.
    pub fn hom(&self, x: ObjectId, y: ObjectId) -> Vec<MorphismId> {
        self.outgoing[x.0]
            .iter()
            .copied()
            .filter(|&m| self.tgt(m) == y)
            .collect()
    }

    /// True iff every hom-set has at most one element.
    pub fn is_poset(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.morphisms.iter().all(|e| seen.insert((e.src, e.tgt)))
    }

    /// The full subcategory on `objects` (listed in the new object order).
    pub fn full_subcategory(&self, objects: &[ObjectId]) -> Category {
        let mut new_index = vec![usize::MAX; self.n_objects];
        for (i, x) in objects.iter().enumerate() {
            new_index[x.0] = i;
        }
        let kept: Vec<MorphismId> = self
            .morphism_ids()
            .filter(|&m| {
                new_index[self.src(m).0] != usize::MAX && new_index[self.tgt(m).0] != usize::MAX
            })
            .collect();
        let mut morphism_index = vec![usize::MAX; self.n_morphisms()];
        for (i, m) in kept.iter().enumerate() {
            morphism_index[m.0] = i;
        }
        let endpoints = kept
            .iter()
            .map(|&m| {
                (
                    ObjectId(new_index[self.src(m).0]),
                    ObjectId(new_index[self.tgt(m).0]),
                )
            })
            .collect();
        let composites: Vec<Composite> = self
            .composites()
            .into_iter()
            .filter(|c| morphism_index[c.g.0] != usize::MAX && morphism_index[c.f.0] != usize::MAX)
            .map(|c| Composite {
                g: MorphismId(morphism_index[c.g.0]),
                f: MorphismId(morphism_index[c.f.0]),
                h: MorphismId(morphism_index[c.h.0]),
            })
            .collect();
        Category::new(objects.len(), endpoints, &composites)
            .expect("full subcategory of a valid category is valid")
    }

    /// The same category with objects and morphisms renamed:
    /// old object `i` becomes `object_perm[i]`, old morphism `j` becomes `morphism_perm[j]`.
    pub fn relabel(
        &self,
        object_perm: &[usize],
        morphism_perm: &[usize],
    ) -> Result<Category, CategoryError> {
        assert_eq!(object_perm.len(), self.n_objects);
        assert_eq!(morphism_perm.len(), self.n_morphisms());
        let mut endpoints = vec![(ObjectId(0), ObjectId(0)); self.n_morphisms()];
        for (old, e) in self.morphisms.iter().enumerate() {
            endpoints[morphism_perm[old]] = (
                ObjectId(object_perm[e.src.0]),
                ObjectId(object_perm[e.tgt.0]),
            );
        }
        let composites: Vec<Composite> = self
            .composites()
            .into_iter()
            .map(|c| Composite {
                g: MorphismId(morphism_perm[c.g.0]),
                f: MorphismId(morphism_perm[c.f.0]),
                h: MorphismId(morphism_perm[c.h.0]),
            })
            .collect();
        Category::new(self.n_objects, endpoints, &composites)
    }
}

/// Returns the objects of some directed cycle, if any.
fn find_cycle(n: usize, morphisms: &[Endpoints]) -> Option<Vec<ObjectId>> {
    let mut succ = vec![Vec::new(); n];
    for e in morphisms {
        succ[e.src.0].push(e.tgt.0);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < succ[v].len() {
                let w = succ[v][*next];
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![ObjectId(w)];
                        let mut u = v;
                        while u != w {
                            cycle.push(ObjectId(u));
                            u = parent[u];
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("object map has {got} entries, source has {expected} objects")]
    ObjectMapSize { expected: usize, got: usize },
    #[error("morphism map has {got} entries, source has {expected} morphisms")]
    MorphismMapSize { expected: usize, got: usize },
    #[error("image {0} is not an object of the target")]
    ObjectOutOfRange(ObjectId),
    #[error("image {0} is not a morphism of the target")]
    MorphismOutOfRange(MorphismId),
    #[error("image of {morphism} does not go from F(src) to F(tgt)")]
    EndpointMismatch { morphism: MorphismId },
    #[error("F({g} . {f}) differs from F({g}) . F({f})")]
    CompositionNotPreserved { g: MorphismId, f: MorphismId },
    #[error("target of the first functor is not the source of the second")]
    SourceTargetMismatch,
    #[error("functor is not an endofunctor")]
    NotEndofunctor,
}

/// A validated functor between finite acyclic categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: Arc<Category>,
    target: Arc<Category>,
    objects: Vec<ObjectId>,
    morphisms: Vec<MorphismRef>,
}

impl Functor {
    pub fn new(
        source: Arc<Category>,
        target: Arc<Category>,
        objects: Vec<ObjectId>,
        morphisms: Vec<MorphismRef>,
    ) -> Result<Functor, FunctorError> {
        if objects.len() != source.n_objects() {
            return Err(FunctorError::ObjectMapSize {
                expected: source.n_objects(),
                got: objects.len(),
            });
        }
        if morphisms.len() != source.n_morphisms() {
            return Err(FunctorError::MorphismMapSize {
                expected: source.n_morphisms(),
                got: morphisms.len(),
            });
        }
        for &y in &objects {
            if y.0 >= target.n_objects() {
                return Err(FunctorError::ObjectOutOfRange(y));
            }
        }
        for (i, &image) in morphisms.iter().enumerate() {
            let m = MorphismId(i);
            let (fx, fy) = (objects[source.src(m).0], objects[source.tgt(m).0]);
            let ok = match image {
                MorphismRef::Identity(x) => x == fx && x == fy,
                MorphismRef::NonIdentity(n) => {
                    if n.0 >= target.n_morphisms() {
                        return Err(FunctorError::MorphismOutOfRange(n));
                    }
                    target.src(n) == fx && target.tgt(n) == fy
                }
            };
            if !ok {
                return Err(FunctorError::EndpointMismatch { morphism: m });
            }
        }
        for c in source.composites() {
            let image = morphisms[c.h.0];
            let composed = target.compose_ref(morphisms[c.g.0], morphisms[c.f.0]);
            if composed != Some(image) {
                return Err(FunctorError::CompositionNotPreserved { g: c.g, f: c.f });
            }
        }
        Ok(Functor {
            source,
            target,
            objects,
            morphisms,
        })
    }

    pub fn identity(category: Arc<Category>) -> Functor {
        let objects = category.objects().collect();
        let morphisms = category
            .morphism_ids()
            .map(MorphismRef::NonIdentity)
            .collect();
        Functor {
            source: category.clone(),
            target: category,
            objects,
            morphisms,
        }
    }

    pub fn source(&self) -> &Arc<Category> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Category> {
        &self.target
    }

    pub fn object(&self, x: ObjectId) -> ObjectId {
        self.objects[x.0]
    }

    pub fn morphism(&self, m: MorphismId) -> MorphismRef {
        self.morphisms[m.0]
    }

    pub fn morphism_ref(&self, m: MorphismRef) -> MorphismRef {
        match m {
            MorphismRef::Identity(x) => MorphismRef::Identity(self.object(x)),
            MorphismRef::NonIdentity(m) => self.morphism(m),
        }
    }

    pub fn object_map(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[MorphismRef] {
        &self.morphisms
    }

    /// No non-identity morphism is sent to an identity.
    pub fn is_strict(&self) -> bool {
        self.morphisms.iter().all(|m| !m.is_identity())
    }

    pub fn is_endofunctor(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) || self.source == self.target
    }

    /// `G ∘ F`, written `g.after(f)`.
    pub fn after(&self, f: &Functor) -> Result<Functor, FunctorError> {
        if !(Arc::ptr_eq(&f.target, &self.source) || f.target == self.source) {
            return Err(FunctorError::SourceTargetMismatch);
        }
        let objects = f.objects.iter().map(|&x| self.object(x)).collect();
        let morphisms = f.morphisms.iter().map(|&m| self.morphism_ref(m)).collect();
        Ok(Functor {
            source: f.source.clone(),
            target: self.target.clone(),
            objects,
            morphisms,
        })
    }
}

/// Pointwise composition `G ∘ F`.
pub fn compose_functors(g: &Functor, f: &Functor) -> Result<Functor, FunctorError> {
    g.after(f)
}

/// Fixed objects, fixed non-identity morphisms and the fixed subcategory of an endofunctor.
#[derive(Clone, Debug)]
pub struct FixedData {
    pub fixed_objects: Vec<ObjectId>,
    pub fixed_morphisms: Vec<MorphismId>,
    pub subcategory: Arc<Category>,
    /// Subcategory object `i` is ambient object `object_embedding[i]`.
    pub object_embedding: Vec<ObjectId>,
    pub morphism_embedding: Vec<MorphismId>,
}

pub fn fixed_data(f: &Functor) -> Result<FixedData, FunctorError> {
    if !f.is_endofunctor() {
        return Err(FunctorError::NotEndofunctor);
    }
    let c = f.source();
    let fixed_objects: Vec<ObjectId> = c.objects().filter(|&x| f.object(x) == x).collect();
    let fixed_morphisms: Vec<MorphismId> = c
        .morphism_ids()
        .filter(|&m| f.morphism(m) == MorphismRef::NonIdentity(m))
        .collect();

    let mut object_index = vec![usize::MAX; c.n_objects()];
    for (i, x) in fixed_objects.iter().enumerate() {
        object_index[x.0] = i;
    }
    let mut morphism_index = vec![usize::MAX; c.n_morphisms()];
    for (i, m) in fixed_morphisms.iter().enumerate() {
        morphism_index[m.0] = i;
    }
    let endpoints = fixed_morphisms
        .iter()
        .map(|&m| {
            let e = c.endpoints(m);
            (
                ObjectId(object_index[e.src.0]),
                ObjectId(object_index[e.tgt.0]),
            )
        })
        .collect();
    let composites: Vec<Composite> = c
        .composites()
        .into_iter()
        .filter(|cp| morphism_index[cp.g.0] != usize::MAX && morphism_index[cp.f.0] != usize::MAX)
        .map(|cp| Composite {
            g: MorphismId(morphism_index[cp.g.0]),
            f: MorphismId(morphism_index[cp.f.0]),
            h: MorphismId(morphism_index[cp.h.0]),
        })
        .collect();
    let subcategory = Category::new(fixed_objects.len(), endpoints, &composites)
        .expect("fixed subcategory of a valid functor is a valid category");
    Ok(FixedData {
        object_embedding: fixed_objects.clone(),
        morphism_embedding: fixed_morphisms.clone(),
        fixed_objects,
        fixed_morphisms,
        subcategory: Arc::new(subcategory),
    })
}

/// The poset reflection `R(C)`: one morphism `x -> y` whenever `C` has at least one.
/// Morphisms are numbered in lexicographic order of `(src, tgt)`.
pub fn poset_reflection(c: &Category) -> Category {
    let mut relations: Vec<(ObjectId, ObjectId)> =
        c.morphisms.iter().map(|e| (e.src, e.tgt)).collect();
    relations.sort();
    relations.dedup();
    Category::thin(c.n_objects(), &relations).expect("reflection of a valid category is a poset")
}

/// `R(F)`, acting as `F` on objects.
pub fn poset_reflection_map(f: &Functor) -> Functor {
    let source = Arc::new(poset_reflection(f.source()));
    let target = if Arc::ptr_eq(f.source(), f.target()) || f.source() == f.target() {
        source.clone()
    } else {
        Arc::new(poset_reflection(f.target()))
    };
    let morphisms = source
        .morphism_ids()
        .map(|m| {
            let (x, y) = (f.object(source.src(m)), f.object(source.tgt(m)));
            if x == y {
                MorphismRef::Identity(x)
            } else {
                let hom = target.hom(x, y);
                MorphismRef::NonIdentity(hom[0])
            }
        })
        .collect();
    Functor::new(source, target, f.object_map().to_vec(), morphisms)
        .expect("reflection of a valid functor is a valid functor")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(i: usize) -> ObjectId {
        ObjectId(i)
    }

    fn m(i: usize) -> MorphismId {
        MorphismId(i)
    }

    fn parallel_pair() -> Arc<Category> {
        Arc::new(Category::new(2, vec![(o(0), o(1)), (o(0), o(1))], &[]).unwrap())
    }

    fn chain3() -> Arc<Category> {
        // a: 0->1, b: 1->2, ba: 0->2
        Arc::new(
            Category::new(
                3,
                vec![(o(0), o(1)), (o(1), o(2)), (o(0), o(2))],
                &[Composite {
                    g: m(1),
                    f: m(0),
                    h: m(2),
                }],
            )
            .unwrap(),
        )
    }

    #[test]
    fn terminal_category() {
        let c = Category::new(1, vec![], &[]).unwrap();
        assert_eq!(c.n_objects(), 1);
        assert_eq!(c.n_morphisms(), 0);
        assert!(c.is_poset());
    }

    #[test]
    fn parallel_pair_is_valid_but_not_a_poset() {
        let c = parallel_pair();
        assert_eq!(c.n_morphisms(), 2);
        assert!(!c.is_poset());
    }

    #[test]
    fn rejects_cycles() {
        let err = Category::new(2, vec![(o(0), o(1)), (o(1), o(0))], &[]).unwrap_err();
        assert!(matches!(err, CategoryError::CycleDetected { .. }));
    }

    #[test]
    fn rejects_endomorphisms() {
        let err = Category::new(1, vec![(o(0), o(0))], &[]).unwrap_err();
        assert_eq!(
            err,
            CategoryError::EndoMorphism {
                morphism: m(0),
                object: o(0)
            }
        );
    }

    #[test]
    fn rejects_missing_and_bad_composites() {
        let err =
            Category::new(3, vec![(o(0), o(1)), (o(1), o(2)), (o(0), o(2))], &[]).unwrap_err();
        assert_eq!(err, CategoryError::MissingComposite { g: m(1), f: m(0) });

        // f . g where tgt(g) != src(f)
        let err = Category::new(
            3,
            vec![(o(0), o(1)), (o(1), o(2)), (o(0), o(2))],
            &[Composite {
                g: m(0),
                f: m(1),
                h: m(2),
            }],
        )
        .unwrap_err();
        assert!(matches!(err, CategoryError::BadComposite { .. }));

        // composite with wrong endpoints
        let err = Category::new(
            3,
            vec![(o(0), o(1)), (o(1), o(2)), (o(1), o(2))],
            &[Composite {
                g: m(1),
                f: m(0),
                h: m(2),
            }],
        )
        .unwrap_err();
        assert!(matches!(err, CategoryError::BadComposite { .. }));

        let err = Category::new(
            3,
            vec![(o(0), o(1)), (o(1), o(2)), (o(0), o(2)), (o(0), o(2))],
            &[
                Composite {
                    g: m(1),
                    f: m(0),
                    h: m(2),
                },
                Composite {
                    g: m(1),
                    f: m(0),
                    h: m(3),
                },
            ],
        )
        .unwrap_err();
        assert_eq!(err, CategoryError::DuplicateComposite { g: m(1), f: m(0) });
    }

    #[test]
    fn rejects_non_associative_table() {
        // 0 -a-> 1 -b-> 2 -c-> 3 with two parallel 0->3 morphisms assigned inconsistently.
        let endpoints = vec![
            (o(0), o(1)), // 0 a
            (o(1), o(2)), // 1 b
            (o(2), o(3)), // 2 c
            (o(0), o(2)), // 3 ba
            (o(1), o(3)), // 4 cb
            (o(0), o(3)), // 5 p
            (o(0), o(3)), // 6 q
        ];
        let composites = [
            Composite {
                g: m(1),
                f: m(0),
                h: m(3),
            },
            Composite {
                g: m(2),
                f: m(1),
                h: m(4),
            },
            Composite {
                g: m(2),
                f: m(3),
                h: m(5),
            },
            Composite {
                g: m(4),
                f: m(0),
                h: m(6),
            },
        ];
        let err = Category::new(4, endpoints, &composites).unwrap_err();
        assert!(matches!(err, CategoryError::NonAssociative { .. }));
    }

    #[test]
    fn composition_is_closed() {
        let c = chain3();
        assert_eq!(c.compose(m(1), m(0)), Some(m(2)));
        assert_eq!(c.compose(m(0), m(1)), None);
        for cp in c.composites() {
            assert_eq!(c.src(cp.h), c.src(cp.f));
            assert_eq!(c.tgt(cp.h), c.tgt(cp.g));
        }
    }

    #[test]
    fn swap_functor_is_strict_and_involutive() {
        let c = parallel_pair();
        let swap = Functor::new(
            c.clone(),
            c.clone(),
            vec![o(0), o(1)],
            vec![
                MorphismRef::NonIdentity(m(1)),
                MorphismRef::NonIdentity(m(0)),
            ],
        )
        .unwrap();
        assert!(swap.is_strict());
        let twice = compose_functors(&swap, &swap).unwrap();
        assert_eq!(twice, Functor::identity(c.clone()));
        assert_eq!(
            compose_functors(&Functor::identity(c), &swap).unwrap(),
            swap
        );
    }

    #[test]
    fn collapsing_to_identity_requires_equal_endpoints() {
        let c = parallel_pair();
        let err = Functor::new(
            c.clone(),
            c.clone(),
            vec![o(0), o(1)],
            vec![MorphismRef::Identity(o(0)), MorphismRef::NonIdentity(m(1))],
        )
        .unwrap_err();
        assert_eq!(err, FunctorError::EndpointMismatch { morphism: m(0) });

        let collapse = Functor::new(
            c.clone(),
            c,
            vec![o(0), o(0)],
            vec![MorphismRef::Identity(o(0)), MorphismRef::Identity(o(0))],
        )
        .unwrap();
        assert!(!collapse.is_strict());
    }

    #[test]
    fn functor_must_preserve_composition() {
        // chain 0->1->2 plus a parallel 0->2; send ba to the parallel morphism.
        let c = Arc::new(
            Category::new(
                3,
                vec![(o(0), o(1)), (o(1), o(2)), (o(0), o(2)), (o(0), o(2))],
                &[Composite {
                    g: m(1),
                    f: m(0),
                    h: m(2),
                }],
            )
            .unwrap(),
        );
        let err = Functor::new(
            c.clone(),
            c.clone(),
            vec![o(0), o(1), o(2)],
            vec![
                MorphismRef::NonIdentity(m(0)),
                MorphismRef::NonIdentity(m(1)),
                MorphismRef::NonIdentity(m(3)),
                MorphismRef::NonIdentity(m(3)),
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            FunctorError::CompositionNotPreserved { g: m(1), f: m(0) }
        );
    }

    #[test]
    fn fixed_data_of_identity_and_swap() {
        let c = parallel_pair();
        let id = fixed_data(&Functor::identity(c.clone())).unwrap();
        assert_eq!(id.fixed_objects, vec![o(0), o(1)]);
        assert_eq!(id.fixed_morphisms, vec![m(0), m(1)]);

        let swap = Functor::new(
            c.clone(),
            c.clone(),
            vec![o(0), o(1)],
            vec![
                MorphismRef::NonIdentity(m(1)),
                MorphismRef::NonIdentity(m(0)),
            ],
        )
        .unwrap();
        let fd = fixed_data(&swap).unwrap();
        assert_eq!(fd.fixed_objects, vec![o(0), o(1)]);
        assert!(fd.fixed_morphisms.is_empty());
        assert_eq!(*fd.subcategory, Category::discrete(2));
    }

    #[test]
    fn fixed_data_requires_endofunctor() {
        let c = parallel_pair();
        let d = Arc::new(Category::discrete(1));
        let f = Functor::new(
            c,
            d,
            vec![o(0), o(0)],
            vec![MorphismRef::Identity(o(0)), MorphismRef::Identity(o(0))],
        )
        .unwrap();
        assert_eq!(fixed_data(&f).unwrap_err(), FunctorError::NotEndofunctor);
    }

    #[test]
    fn reflection_of_parallel_pair_is_a_chain() {
        let r = poset_reflection(&parallel_pair());
        assert_eq!(r.n_objects(), 2);
        assert_eq!(r.n_morphisms(), 1);
        assert!(r.is_poset());
        let chain = chain3();
        let r = poset_reflection(&chain);
        assert!(r.is_poset());
        assert_eq!(r.n_morphisms(), 3);
        assert_eq!(
            r.compose(MorphismId(2), MorphismId(0))
                .map(|h| r.endpoints(h)),
            Some(Endpoints {
                src: ObjectId(0),
                tgt: ObjectId(2)
            })
        );
    }

    #[test]
    fn reflection_map_matches_on_objects() {
        let c = parallel_pair();
        let rf = poset_reflection_map(&Functor::identity(c.clone()));
        assert_eq!(rf, Functor::identity(rf.source().clone()));
        let collapse = Functor::new(
            c.clone(),
            c,
            vec![o(1), o(1)],
            vec![MorphismRef::Identity(o(1)), MorphismRef::Identity(o(1))],
        )
        .unwrap();
        let rc = poset_reflection_map(&collapse);
        assert_eq!(rc.object_map(), collapse.object_map());
        assert!(!rc.is_strict());
    }
}
