//! Finite graded posets and order-preserving self-maps.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::category::{Category, Functor, MorphismRef, ObjectId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("cover {lower} < {upper} refers to an element outside 0..{n}")]
    OutOfRange {
        lower: usize,
        upper: usize,
        n: usize,
    },
    #[error("covering relations contain a cycle")]
    Cyclic,
    #[error("cover {lower} < {upper} does not raise the degree by one")]
    NotGraded { lower: usize, upper: usize },
    #[error("map image {image} of element {element} is not an element")]
    ImageOutOfRange { element: usize, image: usize },
    #[error("map is not order-preserving on {lower} < {upper}")]
    NotOrderPreserving { lower: usize, upper: usize },
}

/// A finite poset with a degree function that rises by exactly one along
/// every covering relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoset {
    degree: Vec<usize>,
    lower_covers: Vec<Vec<usize>>,
    /// `below[x]` is the set of `y < x`.
    below: Vec<FixedBitSet>,
}

impl GradedPoset {
    /// Builds a poset from its covering relation. Degrees are the length of
    /// the longest chain from a minimal element.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<GradedPoset, PosetError> {
        let mut lower_covers = vec![Vec::new(); n];
        for &(lower, upper) in covers {
            if lower >= n || upper >= n {
                return Err(PosetError::OutOfRange { lower, upper, n });
            }
            lower_covers[upper].push(lower);
        }
        for lc in &mut lower_covers {
            lc.sort_unstable();
            lc.dedup();
        }
        let order = topological_order(&lower_covers).ok_or(PosetError::Cyclic)?;
        let mut degree = vec![0usize; n];
        for &x in &order {
            degree[x] = lower_covers[x]
                .iter()
                .map(|&y| degree[y] + 1)
                .max()
                .unwrap_or(0);
        }
        Self::with_degrees(degree, lower_covers, &order)
    }

    fn with_degrees(
        degree: Vec<usize>,
        lower_covers: Vec<Vec<usize>>,
        order: &[usize],
    ) -> Result<GradedPoset, PosetError> {
        let n = degree.len();
        for (upper, lc) in lower_covers.iter().enumerate() {
            for &lower in lc {
                if degree[upper] != degree[lower] + 1 {
                    return Err(PosetError::NotGraded { lower, upper });
                }
            }
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &x in order {
            let mut set = FixedBitSet::with_capacity(n);
            for &y in &lower_covers[x] {
                set.insert(y);
                set.union_with(&below[y]);
            }
            below[x] = set;
        }
        Ok(GradedPoset {
            degree,
            lower_covers,
            below,
        })
    }

    pub fn len(&self) -> usize {
        self.degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree.is_empty()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.degree[x]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.degree.iter().copied().max()
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// `x < y`
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y)
    }

    /// All strict relations `x < y`, sorted lexicographically.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in 0..self.len() {
                if self.less(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The subposet on `elements` (in the given order), keeping original degrees.
    pub fn induced(&self, elements: &[usize]) -> GradedPoset {
        let k = elements.len();
        let mut below = vec![FixedBitSet::with_capacity(k); k];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if self.less(y, x) {
                    below[i].insert(j);
                }
            }
        }
        let lower_covers = (0..k)
            .map(|i| {
                below[i]
                    .ones()
                    .filter(|&j| !below[i].ones().any(|l| below[l].contains(j)))
                    .collect()
            })
            .collect();
        GradedPoset {
            degree: elements.iter().map(|&x| self.degree[x]).collect(),
            lower_covers,
            below,
        }
    }

    /// The poset as a thin acyclic category, one morphism per strict relation.
    pub fn to_category(&self) -> Category {
        let relations: Vec<(ObjectId, ObjectId)> = self
            .relations()
            .into_iter()
            .map(|(x, y)| (ObjectId(x), ObjectId(y)))
            .collect();
        Category::thin(self.len(), &relations).expect("a poset is a valid thin category")
    }

    /// Elements of degree exactly `i`.
    pub fn layer(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.degree[x] == i).collect()
    }
}

fn topological_order(lower_covers: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = lower_covers.len();
    let mut indegree: Vec<usize> = lower_covers.iter().map(Vec::len).collect();
    let mut upper_covers = vec![Vec::new(); n];
    for (upper, lc) in lower_covers.iter().enumerate() {
        for &lower in lc {
            upper_covers[lower].push(upper);
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).rev().collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = ready.pop() {
        order.push(x);
        for &y in &upper_covers[x] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                ready.push(y);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// An order-preserving self-map of a [`GradedPoset`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    images: Vec<usize>,
}

impl PosetMap {
    pub fn new(poset: &GradedPoset, images: Vec<usize>) -> Result<PosetMap, PosetError> {
        assert_eq!(images.len(), poset.len(), "map must be total");
        for (element, &image) in images.iter().enumerate() {
            if image >= poset.len() {
                return Err(PosetError::ImageOutOfRange { element, image });
            }
        }
        for (lower, upper) in poset.relations() {
            if !poset.leq(images[lower], images[upper]) {
                return Err(PosetError::NotOrderPreserving { lower, upper });
            }
        }
        Ok(PosetMap { images })
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&x| self.images[x] == x)
            .collect()
    }

    /// The map as an endofunctor of `poset.to_category()` (passed in as `thin`).
    pub fn to_functor(&self, thin: Arc<Category>) -> Functor {
        let morphisms = thin
            .morphism_ids()
            .map(|m| {
                let (x, y) = (self.images[thin.src(m).0], self.images[thin.tgt(m).0]);
                if x == y {
                    MorphismRef::Identity(ObjectId(x))
                } else {
                    MorphismRef::NonIdentity(thin.hom(ObjectId(x), ObjectId(y))[0])
                }
            })
            .collect();
        let objects = self.images.iter().map(|&x| ObjectId(x)).collect();
        Functor::new(thin.clone(), thin, objects, morphisms)
            .expect("an order-preserving map is a functor of thin categories")
    }
}
