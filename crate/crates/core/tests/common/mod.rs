//! Brute-force oracles that avoid the library's nerve, homology and
//! subdivision code. Only the validated composition table is shared.

#![allow(dead_code)]

use acyclic_lefschetz::{Category, Functor, MorphismId, MorphismRef, ObjectId};

/// Every chain of `k >= 1` composable non-identity morphisms, by DFS.
pub fn chains(c: &Category, k: usize) -> Vec<Vec<MorphismId>> {
    fn extend(
        c: &Category,
        prefix: &mut Vec<MorphismId>,
        k: usize,
        out: &mut Vec<Vec<MorphismId>>,
    ) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let next: Vec<MorphismId> = match prefix.last() {
            None => c.morphism_ids().collect(),
            Some(&m) => c.morphism_ids().filter(|&n| c.src(n) == c.tgt(m)).collect(),
        };
        for n in next {
            prefix.push(n);
            extend(c, prefix, k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(c, &mut Vec::new(), k, &mut out);
    out
}

pub fn chain_counts(c: &Category) -> Vec<usize> {
    let mut counts = vec![c.n_objects()];
    if c.n_objects() == 0 {
        return Vec::new();
    }
    for k in 1.. {
        let n = chains(c, k).len();
        if n == 0 {
            break;
        }
        counts.push(n);
    }
    counts
}

pub fn alternating(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// A simplex of the nerve as plain data: a vertex or a chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    V(ObjectId),
    C(Vec<MorphismId>),
}

pub fn faces(c: &Category, ms: &[MorphismId]) -> Vec<Cell> {
    let k = ms.len();
    if k == 1 {
        return vec![Cell::V(c.tgt(ms[0])), Cell::V(c.src(ms[0]))];
    }
    (0..=k)
        .map(|j| {
            if j == 0 {
                Cell::C(ms[1..].to_vec())
            } else if j == k {
                Cell::C(ms[..k - 1].to_vec())
            } else {
                let mut v = ms[..j - 1].to_vec();
                v.push(c.compose(ms[j], ms[j - 1]).unwrap());
                v.extend_from_slice(&ms[j + 1..]);
                Cell::C(v)
            }
        })
        .collect()
}

/// All cells of the nerve, grouped by dimension.
pub fn cells(c: &Category) -> Vec<Vec<Cell>> {
    let mut out = vec![c.objects().map(Cell::V).collect::<Vec<_>>()];
    for k in 1.. {
        let ch = chains(c, k);
        if ch.is_empty() {
            break;
        }
        out.push(ch.into_iter().map(Cell::C).collect());
    }
    out
}

const PRIMES: [u64; 2] = [(1 << 61) - 1, 4_294_967_291];

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow(rows[rank][col], p - 2);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = mul(row[col], inv);
                for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = (*x + p - mul(factor, y)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix, agreed on by two large primes.
pub fn rank(matrix: &[Vec<i64>]) -> usize {
    let ranks: Vec<usize> = PRIMES
        .iter()
        .map(|&p| {
            let rows = matrix
                .iter()
                .map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
                .collect();
            rank_mod(rows, p)
        })
        .collect();
    assert_eq!(ranks[0], ranks[1], "modular ranks disagree");
    ranks[0]
}

/// Betti numbers from cells graded by dimension and a face function.
pub fn betti_of<T, F>(cells: &[Vec<T>], faces: F) -> Vec<usize>
where
    T: PartialEq,
    F: Fn(&T) -> Vec<T>,
{
    let mut ranks = vec![0usize; cells.len() + 1];
    for k in 1..cells.len() {
        let mut m = vec![vec![0i64; cells[k].len()]; cells[k - 1].len()];
        for (j, cell) in cells[k].iter().enumerate() {
            for (i, face) in faces(cell).iter().enumerate() {
                let row = cells[k - 1].iter().position(|x| x == face).unwrap();
                m[row][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        ranks[k] = rank(&m);
    }
    (0..cells.len())
        .map(|k| cells[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

pub fn nerve_betti(c: &Category) -> Vec<usize> {
    betti_of(&cells(c), |cell| match cell {
        Cell::V(_) => Vec::new(),
        Cell::C(ms) => faces(c, ms),
    })
}

pub fn is_fixed(f: &Functor, m: MorphismId) -> bool {
    f.morphism(m) == MorphismRef::NonIdentity(m)
}

pub fn fixed_objects(f: &Functor) -> Vec<ObjectId> {
    f.source().objects().filter(|&x| f.object(x) == x).collect()
}

/// Chains of length `k` all of whose morphisms are fixed.
pub fn fixed_chains(f: &Functor, k: usize) -> Vec<Vec<MorphismId>> {
    chains(f.source(), k)
        .into_iter()
        .filter(|ch| ch.iter().all(|&m| is_fixed(f, m)))
        .collect()
}

/// Alternating count of fixed objects and fixed chains.
pub fn chi_fixed(f: &Functor) -> i64 {
    let mut counts = vec![fixed_objects(f).len()];
    for k in 1.. {
        let n = fixed_chains(f, k).len();
        if n == 0 {
            break;
        }
        counts.push(n);
    }
    alternating(&counts)
}

pub fn reachable(c: &Category, x: ObjectId, y: ObjectId) -> bool {
    let mut seen = vec![false; c.n_objects()];
    let mut stack = vec![x];
    while let Some(v) = stack.pop() {
        if v == y {
            return true;
        }
        for &m in c.outgoing(v) {
            let w = c.tgt(m);
            if !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Alternating count of strict chains in a finite order on `0..n`.
pub fn order_complex_euler(n: usize, less: impl Fn(usize, usize) -> bool) -> i64 {
    // ending[x][r]: chains of r+1 elements whose top is x
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| less(y, x)).count());
    let mut ending: Vec<Vec<i64>> = vec![Vec::new(); n];
    for &x in &order {
        let mut counts = vec![1i64];
        for (y, below) in ending.iter().enumerate() {
            if less(y, x) {
                for (r, &v) in below.iter().enumerate() {
                    if counts.len() <= r + 1 {
                        counts.resize(r + 2, 0);
                    }
                    counts[r + 1] += v;
                }
            }
        }
        ending[x] = counts;
    }
    ending
        .iter()
        .flat_map(|c| c.iter().enumerate())
        .map(|(r, &v)| if r % 2 == 0 { v } else { -v })
        .sum()
}

/// Euler characteristic of the order complex of the reflection restricted
/// to fixed objects.
pub fn chi_fixed_reflection(f: &Functor) -> i64 {
    let c = f.source();
    let fixed = fixed_objects(f);
    order_complex_euler(fixed.len(), |a, b| {
        a != b && reachable(c, fixed[a], fixed[b])
    })
}

/// Every iterated face of a cell, including itself.
pub fn closure(c: &Category, cell: &Cell) -> Vec<Cell> {
    let mut out = vec![cell.clone()];
    let mut i = 0;
    while i < out.len() {
        if let Cell::C(ms) = &out[i] {
            for face in faces(c, ms) {
                if !out.contains(&face) {
                    out.push(face);
                }
            }
        }
        i += 1;
    }
    out
}

/// For a strict endofunctor: `χ` of the order complex of the fixed cells of
/// dimension above `cutoff`, ordered by the face relation.
pub fn layered_lefschetz_strict(f: &Functor, cutoff: usize) -> i64 {
    assert!(f.is_strict());
    let c = f.source();
    let mut fixed: Vec<Cell> = Vec::new();
    for k in cutoff + 1.. {
        let ch = fixed_chains(f, k);
        if ch.is_empty() {
            break;
        }
        fixed.extend(ch.into_iter().map(Cell::C));
    }
    let closures: Vec<Vec<Cell>> = fixed.iter().map(|x| closure(c, x)).collect();
    order_complex_euler(fixed.len(), |a, b| {
        a != b && closures[b].contains(&fixed[a])
    })
}

/// Betti numbers of the order complex of the face poset of the nerve.
pub fn subdivision_betti(c: &Category) -> Vec<usize> {
    let all: Vec<Cell> = cells(c).into_iter().flatten().collect();
    let closures: Vec<Vec<Cell>> = all.iter().map(|x| closure(c, x)).collect();
    let less = |a: usize, b: usize| a != b && closures[b].contains(&all[a]);
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![(0..all.len()).map(|a| vec![a]).collect()];
    loop {
        let next: Vec<Vec<usize>> = by_dim
            .last()
            .unwrap()
            .iter()
            .flat_map(|ch| {
                let top = *ch.last().unwrap();
                (0..all.len()).filter(move |&b| less(top, b)).map(move |b| {
                    let mut v = ch.clone();
                    v.push(b);
                    v
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        by_dim.push(next);
    }
    betti_of(&by_dim, |ch: &Vec<usize>| {
        if ch.len() == 1 {
            return Vec::new();
        }
        (0..ch.len())
            .map(|i| {
                let mut v = ch.clone();
                v.remove(i);
                v
            })
            .collect()
    })
}
