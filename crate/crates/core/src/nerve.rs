//! Nerves of acyclic categories as regular trisps, induced trisp maps,
//! face posets and barycentric subdivision.
//!
//! A `k`-simplex of the nerve is a chain of `k` composable non-identity
//! morphisms `x_0 -> x_1 -> ... -> x_k`. Face `d_0` drops `x_0`, face `d_k`
//! drops `x_k` and an inner face `d_j` composes the two morphisms meeting at
//! `x_j`. Within each dimension simplices are numbered in lexicographic order
//! of their morphism ids.

use std::collections::HashMap;

use crate::category::{Category, Functor, MorphismId, ObjectId};
use crate::poset::{GradedPoset, PosetMap};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simplex {
    Vertex(ObjectId),
    Chain(Vec<MorphismId>),
}

impl Simplex {
    pub fn dim(&self) -> usize {
        match self {
            Simplex::Vertex(_) => 0,
            Simplex::Chain(ms) => ms.len(),
        }
    }

    /// The morphisms of the chain; empty for a vertex.
    pub fn morphisms(&self) -> &[MorphismId] {
        match self {
            Simplex::Vertex(_) => &[],
            Simplex::Chain(ms) => ms,
        }
    }

    pub fn vertices(&self, c: &Category) -> Vec<ObjectId> {
        match self {
            Simplex::Vertex(x) => vec![*x],
            Simplex::Chain(ms) => std::iter::once(c.src(ms[0]))
                .chain(ms.iter().map(|&m| c.tgt(m)))
                .collect(),
        }
    }

    /// Face `d_j` as a simplex of one dimension lower. Panics on a vertex.
    pub fn face(&self, c: &Category, j: usize) -> Simplex {
        let ms = match self {
            Simplex::Vertex(_) => panic!("a vertex has no faces"),
            Simplex::Chain(ms) => ms,
        };
        let k = ms.len();
        assert!(j <= k);
        if k == 1 {
            return if j == 0 {
                Simplex::Vertex(c.tgt(ms[0]))
            } else {
                Simplex::Vertex(c.src(ms[0]))
            };
        }
        if j == 0 {
            Simplex::Chain(ms[1..].to_vec())
        } else if j == k {
            Simplex::Chain(ms[..k - 1].to_vec())
        } else {
            let mut face = Vec::with_capacity(k - 1);
            face.extend_from_slice(&ms[..j - 1]);
            face.push(
                c.compose(ms[j], ms[j - 1])
                    .expect("consecutive morphisms compose"),
            );
            face.extend_from_slice(&ms[j + 1..]);
            Simplex::Chain(face)
        }
    }
}

/// A regular trisp: simplices by dimension with their face maps.
#[derive(Clone, Debug)]
pub struct Trisp {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    /// `faces[k][i][j]` is the index of `d_j` of simplex `i` in dimension `k - 1`.
    faces: Vec<Vec<Vec<usize>>>,
    offsets: Vec<usize>,
}

impl Trisp {
    fn from_simplices(c: &Category, simplices: Vec<Vec<Simplex>>) -> Trisp {
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|dim| {
                dim.iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, s)| (s, i))
                    .collect()
            })
            .collect();
        let faces = simplices
            .iter()
            .enumerate()
            .map(|(k, dim)| {
                dim.iter()
                    .map(|s| {
                        if k == 0 {
                            Vec::new()
                        } else {
                            (0..=k).map(|j| index[k - 1][&s.face(c, j)]).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut offsets = Vec::with_capacity(simplices.len() + 1);
        let mut total = 0;
        for dim in &simplices {
            offsets.push(total);
            total += dim.len();
        }
        offsets.push(total);
        Trisp {
            simplices,
            index,
            faces,
            offsets,
        }
    }

    /// Highest dimension with a simplex, or `None` for the empty trisp.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Number of simplices in dimension `k` (zero above the top).
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, k: usize, i: usize) -> &Simplex {
        &self.simplices[k][i]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    /// Indices of `d_0, ..., d_k` of simplex `i` of dimension `k >= 1`.
    pub fn faces(&self, k: usize, i: usize) -> &[usize] {
        &self.faces[k][i]
    }

    /// Position of `(k, i)` when all simplices are listed dimension by dimension.
    pub fn global_index(&self, k: usize, i: usize) -> usize {
        self.offsets[k] + i
    }

    pub fn locate(&self, global: usize) -> (usize, usize) {
        let k = self.offsets.partition_point(|&o| o <= global) - 1;
        (k, global - self.offsets[k])
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for all `i < j` on every simplex of dimension >= 2.
    pub fn check_simplicial_identities(&self) -> bool {
        (2..self.simplices.len()).all(|k| {
            (0..self.count(k)).all(|s| {
                let f = &self.faces[k][s];
                (0..=k).all(|j| {
                    (0..j).all(|i| self.faces[k - 1][f[j]][i] == self.faces[k - 1][f[i]][j - 1])
                })
            })
        })
    }
}

/// The nerve of `c`.
pub fn nerve(c: &Category) -> Trisp {
    let mut simplices: Vec<Vec<Simplex>> = Vec::new();
    if c.n_objects() > 0 {
        simplices.push(c.objects().map(Simplex::Vertex).collect());
        let mut chains: Vec<Vec<MorphismId>> = c.morphism_ids().map(|m| vec![m]).collect();
        while !chains.is_empty() {
            let next: Vec<Vec<MorphismId>> = chains
                .iter()
                .flat_map(|chain| {
                    let last = *chain.last().unwrap();
                    c.outgoing(c.tgt(last)).iter().map(move |&m| {
                        let mut longer = chain.clone();
                        longer.push(m);
                        longer
                    })
                })
                .collect();
            simplices.push(chains.into_iter().map(Simplex::Chain).collect());
            chains = next;
        }
    }
    Trisp::from_simplices(c, simplices)
}

/// Image of one simplex under an induced trisp map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimplexImage {
    /// A simplex of the same dimension, by index.
    Simplex(usize),
    /// Some morphism went to an identity; the reduced chain has lower dimension.
    Degenerate { dim: usize, index: usize },
}

/// The map on simplices induced by a functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrispMap {
    images: Vec<Vec<SimplexImage>>,
}

/// Image of `s` under `f` with identity morphisms removed.
pub fn reduced_image(f: &Functor, s: &Simplex) -> Simplex {
    match s {
        Simplex::Vertex(x) => Simplex::Vertex(f.object(*x)),
        Simplex::Chain(ms) => {
            let reduced: Vec<MorphismId> = ms
                .iter()
                .filter_map(|&m| f.morphism(m).non_identity())
                .collect();
            if reduced.is_empty() {
                Simplex::Vertex(f.object(f.source().src(ms[0])))
            } else {
                Simplex::Chain(reduced)
            }
        }
    }
}

impl TrispMap {
    /// The map `Δ(f): source -> target`, where the trisps are the nerves of
    /// `f.source()` and `f.target()`.
    pub fn induced(f: &Functor, source: &Trisp, target: &Trisp) -> TrispMap {
        let images = (0..source.simplices.len())
            .map(|k| {
                source.simplices[k]
                    .iter()
                    .map(|s| {
                        let image = reduced_image(f, s);
                        let dim = image.dim();
                        let index = target
                            .index_of(&image)
                            .expect("image chain is a simplex of the target nerve");
                        if dim == k {
                            SimplexImage::Simplex(index)
                        } else {
                            SimplexImage::Degenerate { dim, index }
                        }
                    })
                    .collect()
            })
            .collect();
        TrispMap { images }
    }

    pub fn image(&self, k: usize, i: usize) -> SimplexImage {
        self.images[k][i]
    }

    pub fn images(&self, k: usize) -> &[SimplexImage] {
        self.images.get(k).map_or(&[], Vec::as_slice)
    }

    /// `(dim, index)` of the reduced image.
    pub fn reduced(&self, k: usize, i: usize) -> (usize, usize) {
        match self.images[k][i] {
            SimplexImage::Simplex(j) => (k, j),
            SimplexImage::Degenerate { dim, index } => (dim, index),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().all(|dim| {
            dim.iter()
                .enumerate()
                .all(|(i, &img)| img == SimplexImage::Simplex(i))
        })
    }

    pub fn has_degenerate(&self) -> bool {
        self.images
            .iter()
            .flatten()
            .any(|img| matches!(img, SimplexImage::Degenerate { .. }))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &TrispMap) -> TrispMap {
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(k, dim)| {
                (0..dim.len())
                    .map(|i| {
                        let (d, j) = self.reduced(k, i);
                        let (d2, l) = next.reduced(d, j);
                        if d2 == k {
                            SimplexImage::Simplex(l)
                        } else {
                            SimplexImage::Degenerate { dim: d2, index: l }
                        }
                    })
                    .collect()
            })
            .collect();
        TrispMap { images }
    }
}

/// The face poset of `t`. Element numbering follows [`Trisp::global_index`];
/// the degree of a simplex is its dimension.
pub fn face_poset(t: &Trisp) -> GradedPoset {
    let mut covers = Vec::new();
    for k in 1..t.simplices.len() {
        for i in 0..t.count(k) {
            let upper = t.global_index(k, i);
            for &face in t.faces(k, i) {
                covers.push((t.global_index(k - 1, face), upper));
            }
        }
    }
    GradedPoset::from_covers(t.total(), &covers).expect("face relation of a trisp is graded")
}

/// The barycentric subdivision `sd(C)`: the face poset of the nerve.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub nerve: Trisp,
    pub poset: GradedPoset,
}

pub fn subdivision(c: &Category) -> Subdivision {
    let nerve = nerve(c);
    let poset = face_poset(&nerve);
    Subdivision { nerve, poset }
}

impl Subdivision {
    pub fn simplex(&self, element: usize) -> &Simplex {
        let (k, i) = self.nerve.locate(element);
        self.nerve.simplex(k, i)
    }

    pub fn element_of(&self, s: &Simplex) -> Option<usize> {
        self.nerve
            .index_of(s)
            .map(|i| self.nerve.global_index(s.dim(), i))
    }

    /// `sd(F)`: each simplex goes to its reduced image chain.
    pub fn map(&self, f: &Functor) -> PosetMap {
        let images = (0..self.poset.len())
            .map(|e| {
                let image = reduced_image(f, self.simplex(e));
                self.element_of(&image)
                    .expect("image is a simplex of the nerve")
            })
            .collect();
        PosetMap::new(&self.poset, images).expect("sd(F) is order-preserving")
    }
}

/// `sd(F)` on a previously built subdivision of `F`'s source.
pub fn subdivision_map(f: &Functor, sd: &Subdivision) -> PosetMap {
    sd.map(f)
}

/// The order complex of a poset: the nerve of its thin category.
pub fn order_complex(p: &GradedPoset) -> Trisp {
    nerve(&p.to_category())
}
