//! Small reference instances used by tests, examples and the CLI.

use std::sync::Arc;

use crate::category::{Category, Composite, Functor, MorphismId, MorphismRef, ObjectId};

fn o(i: usize) -> ObjectId {
    ObjectId(i)
}

fn m(i: usize) -> MorphismId {
    MorphismId(i)
}

/// Two objects with two parallel morphisms `α, β: 0 -> 1`.
pub fn parallel_pair() -> Arc<Category> {
    Arc::new(Category::new(2, vec![(o(0), o(1)), (o(0), o(1))], &[]).unwrap())
}

/// The endofunctor of [`parallel_pair`] exchanging `α` and `β`.
pub fn parallel_pair_swap() -> Functor {
    let c = parallel_pair();
    Functor::new(
        c.clone(),
        c,
        vec![o(0), o(1)],
        vec![
            MorphismRef::NonIdentity(m(1)),
            MorphismRef::NonIdentity(m(0)),
        ],
    )
    .unwrap()
}

/// Four objects `a, b, c, d` (0..4) with two parallel `a -> b` plus
/// `c -> d`, `c -> b`, `a -> d`. No pair of morphisms is composable and
/// the morphisms induce four distinct order relations.
pub fn d_category() -> Arc<Category> {
    Arc::new(
        Category::new(
            4,
            vec![
                (o(0), o(1)),
                (o(0), o(1)),
                (o(2), o(3)),
                (o(2), o(1)),
                (o(0), o(3)),
            ],
            &[],
        )
        .unwrap(),
    )
}

/// The chain `0 -a-> 1 -b-> 2` with composite `ba: 0 -> 2`.
pub fn chain3() -> Arc<Category> {
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

/// Objects `x, y, z, w` (0..4); morphisms `β: x -> y`, `γ: y -> z`,
/// `γ∘β: x -> z`, and two parallel `μ, ν: w -> z`.
pub fn fixed_arrow_category() -> Arc<Category> {
    Arc::new(
        Category::new(
            4,
            vec![
                (o(0), o(1)), // β
                (o(1), o(2)), // γ
                (o(0), o(2)), // γ∘β
                (o(3), o(2)), // μ
                (o(3), o(2)), // ν
            ],
            &[Composite {
                g: m(1),
                f: m(0),
                h: m(2),
            }],
        )
        .unwrap(),
    )
}

/// The strict endofunctor of [`fixed_arrow_category`] fixing every object,
/// `β`, `γ` and `γ∘β`, and exchanging `μ` and `ν`.
pub fn fixed_arrow_functor() -> Functor {
    let c = fixed_arrow_category();
    Functor::new(
        c.clone(),
        c,
        vec![o(0), o(1), o(2), o(3)],
        vec![
            MorphismRef::NonIdentity(m(0)),
            MorphismRef::NonIdentity(m(1)),
            MorphismRef::NonIdentity(m(2)),
            MorphismRef::NonIdentity(m(4)),
            MorphismRef::NonIdentity(m(3)),
        ],
    )
    .unwrap()
}
