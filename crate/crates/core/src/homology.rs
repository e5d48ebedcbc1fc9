//! Exact rational homology of trisps, induced chain maps and their traces.
//!
//! Matrices are stored column-wise as sparse vectors of exact rationals.
//! All elimination is left-to-right column reduction keyed on the lowest
//! nonzero row ("low"), so pivot choices are deterministic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::nerve::{SimplexImage, Trisp, TrispMap};

pub type Rational = BigRational;

/// Sparse column: `(row, value)` pairs sorted by row, no explicit zeros.
pub type SparseCol = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("chain map does not commute with the boundary in dimension {dim}")]
    NonCommuting { dim: usize },
    #[error("linear system has no solution")]
    InconsistentSystem,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("trace {value} is not an integer")]
    NonIntegral { value: String },
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `y + alpha * x`
fn axpy(y: &[(usize, Rational)], alpha: &Rational, x: &[(usize, Rational)]) -> SparseCol {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j == x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i == y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            out.push((x[j].0, alpha * &x[j].1));
            j += 1;
        } else {
            let v = &y[i].1 + alpha * &x[j].1;
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: Vec<SparseCol>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix {
            rows: n,
            cols: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    /// Builds a matrix from dense integer rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Matrix {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(n_rows, n_cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.cols[c].push((r, rational(v)));
                }
            }
        }
        m
    }

    /// Columns must be sorted by row with no zero entries.
    pub fn from_columns(rows: usize, cols: Vec<SparseCol>) -> Matrix {
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)
            && c.iter().all(|(r, v)| *r < rows && !v.is_zero())));
        Matrix { rows, cols }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.cols[j]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        let col = &self.cols[c];
        col.binary_search_by_key(&r, |(i, _)| *i)
            .map(|i| col[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.n_cols()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, v: &[(usize, Rational)]) -> SparseCol {
        let mut out = Vec::new();
        for (j, x) in v {
            out = axpy(&out, x, &self.cols[*j]);
        }
        out
    }

    /// `self * rhs`
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, HomologyError> {
        if self.n_cols() != rhs.rows {
            return Err(HomologyError::DimensionMismatch("inner dimensions differ"));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.n_cols()))
            .map(|i| self.get(i, i))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Column reduction `self * V = R` where the nonzero columns of `R` have
    /// pairwise distinct lows. `V` is only computed when `track` is set.
    pub fn reduce(&self, track: bool) -> ColumnReduction {
        let n = self.n_cols();
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; self.rows];
        let mut reduced: Vec<SparseCol> = Vec::with_capacity(n);
        let mut transform: Vec<SparseCol> = Vec::with_capacity(if track { n } else { 0 });
        for j in 0..n {
            let mut col = self.cols[j].clone();
            let mut v = if track {
                vec![(j, Rational::one())]
            } else {
                Vec::new()
            };
            while let Some((low, val)) = col.last() {
                let low = *low;
                match pivot_of_row[low] {
                    Some(p) => {
                        let pivot: &SparseCol = &reduced[p];
                        let factor = -(val / &pivot.last().unwrap().1);
                        col = axpy(&col, &factor, pivot);
                        if track {
                            v = axpy(&v, &factor, &transform[p]);
                        }
                    }
                    None => {
                        pivot_of_row[low] = Some(j);
                        break;
                    }
                }
            }
            reduced.push(col);
            if track {
                transform.push(v);
            }
        }
        ColumnReduction {
            reduced,
            transform,
            pivot_of_row,
        }
    }

    pub fn rank(&self) -> usize {
        self.reduce(false).rank()
    }

    /// A basis of the null space, as dense vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let red = self.reduce(true);
        red.reduced
            .iter()
            .zip(&red.transform)
            .filter(|(r, _)| r.is_empty())
            .map(|(_, v)| {
                let mut dense = vec![Rational::zero(); self.n_cols()];
                for (i, x) in v {
                    dense[*i] = x.clone();
                }
                dense
            })
            .collect()
    }

    /// Some `x` with `self * x = b`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, HomologyError> {
        if b.len() != self.rows {
            return Err(HomologyError::DimensionMismatch("right-hand side length"));
        }
        let red = self.reduce(true);
        let mut y: SparseCol = b
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        let mut x: SparseCol = Vec::new();
        while let Some((low, val)) = y.last() {
            let p = red.pivot_of_row[*low].ok_or(HomologyError::InconsistentSystem)?;
            let factor = val / &red.reduced[p].last().unwrap().1;
            y = axpy(&y, &-factor.clone(), &red.reduced[p]);
            x = axpy(&x, &factor, &red.transform[p]);
        }
        let mut dense = vec![Rational::zero(); self.n_cols()];
        for (i, v) in x {
            dense[i] = v;
        }
        Ok(dense)
    }
}

#[derive(Clone, Debug)]
pub struct ColumnReduction {
    pub reduced: Vec<SparseCol>,
    pub transform: Vec<SparseCol>,
    /// Row `r` is the low of reduced column `pivot_of_row[r]`.
    pub pivot_of_row: Vec<Option<usize>>,
}

impl ColumnReduction {
    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_empty()).count()
    }
}

/// Rational chain complex of a trisp in its simplex basis.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `boundaries[k]: C_k -> C_{k-1}`; `boundaries[0]` has zero rows.
    boundaries: Vec<Matrix>,
}

pub fn chain_complex(t: &Trisp) -> ChainComplex {
    let top = t.dim().map_or(0, |d| d + 1);
    let boundaries = (0..top)
        .map(|k| {
            if k == 0 {
                return Matrix::zeros(0, t.count(0));
            }
            let cols = (0..t.count(k))
                .map(|i| {
                    let mut col: SparseCol = Vec::new();
                    for (j, &face) in t.faces(k, i).iter().enumerate() {
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        col = axpy(&col, &rational(sign), &[(face, Rational::one())]);
                    }
                    col
                })
                .collect();
            Matrix::from_columns(t.count(k - 1), cols)
        })
        .collect();
    ChainComplex { boundaries }
}

impl ChainComplex {
    /// Number of chain groups (top dimension + 1).
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    pub fn rank_of_group(&self, k: usize) -> usize {
        self.boundaries.get(k).map_or(0, Matrix::n_cols)
    }

    pub fn boundary(&self, k: usize) -> &Matrix {
        &self.boundaries[k]
    }

    /// `∂_{k-1} ∘ ∂_k = 0` for every `k`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.len()).all(|k| {
            self.boundaries[k - 1]
                .mul(&self.boundaries[k])
                .map(|m| m.is_zero())
                .unwrap_or(false)
        })
    }

    pub fn reduce(&self) -> ReducedComplex {
        ReducedComplex {
            reductions: self.boundaries.iter().map(|b| b.reduce(true)).collect(),
        }
    }
}

/// Column reductions of every boundary map, enough to read off Betti
/// numbers and induced traces on homology.
#[derive(Clone, Debug)]
pub struct ReducedComplex {
    reductions: Vec<ColumnReduction>,
}

impl ReducedComplex {
    pub fn betti(&self) -> Vec<usize> {
        (0..self.reductions.len())
            .map(|k| {
                let n = self.reductions[k].reduced.len();
                let next = self.reductions.get(k + 1).map_or(0, ColumnReduction::rank);
                n - self.reductions[k].rank() - next
            })
            .collect()
    }

    /// Indices `j` such that the cycles `z_j` (column `j` of the transform of
    /// `∂_k`) span a complement of the boundaries in the cycles.
    fn essential(&self, k: usize) -> Vec<usize> {
        let red = &self.reductions[k];
        let next = self.reductions.get(k + 1);
        (0..red.reduced.len())
            .filter(|&j| red.reduced[j].is_empty())
            .filter(|&j| next.is_none_or(|n| n.pivot_of_row[j].is_none()))
            .collect()
    }

    /// Trace of the map induced on `H_k` by `f_k`.
    pub fn homology_trace(&self, k: usize, f_k: &Matrix) -> Result<Rational, HomologyError> {
        let red = &self.reductions[k];
        let next = self.reductions.get(k + 1);
        let essential = self.essential(k);
        let position: HashMap<usize, usize> =
            essential.iter().enumerate().map(|(i, &j)| (j, i)).collect();
        let mut trace = Rational::zero();
        for (slot, &h) in essential.iter().enumerate() {
            let mut y = f_k.apply(&red.transform[h]);
            let mut coefficient = Rational::zero();
            while let Some((low, val)) = y.last() {
                let low = *low;
                if let Some(&pos) = position.get(&low) {
                    // z_low has coefficient 1 at its low
                    let factor = val.clone();
                    if pos == slot {
                        coefficient += &factor;
                    }
                    y = axpy(&y, &-factor, &red.transform[low]);
                } else if let Some(p) = next.and_then(|n| n.pivot_of_row[low]) {
                    let b = &next.unwrap().reduced[p];
                    let factor = -(val / &b.last().unwrap().1);
                    y = axpy(&y, &factor, b);
                } else {
                    return Err(HomologyError::NonCommuting { dim: k });
                }
            }
            trace += coefficient;
        }
        Ok(trace)
    }
}

pub fn betti(t: &Trisp) -> Vec<usize> {
    chain_complex(t).reduce().betti()
}

/// `Σ (-1)^k n_k`
pub fn euler_char(t: &Trisp) -> i64 {
    t.counts()
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// `Σ (-1)^k dim H_k`
pub fn euler_from_homology(t: &Trisp) -> i64 {
    alternating_sum(&betti(t))
}

pub fn alternating_sum(values: &[usize]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// An endomorphism of a chain complex, one square matrix per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    maps: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(maps: Vec<Matrix>) -> ChainMap {
        ChainMap { maps }
    }

    pub fn map(&self, k: usize) -> &Matrix {
        &self.maps[k]
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn commutes_with(&self, cc: &ChainComplex) -> Result<(), HomologyError> {
        if self.maps.len() != cc.len() {
            return Err(HomologyError::DimensionMismatch(
                "chain map and complex lengths",
            ));
        }
        for k in 1..cc.len() {
            let left = cc.boundary(k).mul(&self.maps[k])?;
            let right = self.maps[k - 1].mul(cc.boundary(k))?;
            if left != right {
                return Err(HomologyError::NonCommuting { dim: k });
            }
        }
        Ok(())
    }
}

/// The chain map of a trisp self-map: a simplex goes to its image simplex,
/// or to zero when the image is degenerate.
pub fn chain_map(images: &TrispMap, t: &Trisp) -> Result<ChainMap, HomologyError> {
    let cc = chain_complex(t);
    let f = chain_map_unchecked(images, t);
    f.commutes_with(&cc)?;
    Ok(f)
}

pub(crate) fn chain_map_unchecked(images: &TrispMap, t: &Trisp) -> ChainMap {
    let top = t.dim().map_or(0, |d| d + 1);
    let maps = (0..top)
        .map(|k| {
            let cols = images
                .images(k)
                .iter()
                .map(|img| match img {
                    SimplexImage::Simplex(j) => vec![(*j, Rational::one())],
                    SimplexImage::Degenerate { .. } => Vec::new(),
                })
                .collect();
            Matrix::from_columns(t.count(k), cols)
        })
        .collect();
    ChainMap { maps }
}

pub fn to_integer(value: &Rational) -> Result<i64, HomologyError> {
    if !value.is_integer() {
        return Err(HomologyError::NonIntegral {
            value: value.to_string(),
        });
    }
    value
        .to_integer()
        .to_i64()
        .ok_or(HomologyError::NonIntegral {
            value: value.to_string(),
        })
}

/// `Σ (-1)^k trace(f_k)` at chain level.
pub fn hopf_lefschetz(f: &ChainMap) -> Result<i64, HomologyError> {
    let mut total = Rational::zero();
    for (k, m) in f.maps.iter().enumerate() {
        let t = m.trace();
        if k % 2 == 0 {
            total += t;
        } else {
            total -= t;
        }
    }
    to_integer(&total)
}

/// `Σ (-1)^k trace(H_k(f))` through explicit homology bases.
pub fn homology_lefschetz(cc: &ChainComplex, f: &ChainMap) -> Result<i64, HomologyError> {
    homology_lefschetz_reduced(&cc.reduce(), f)
}

pub fn homology_lefschetz_reduced(
    reduced: &ReducedComplex,
    f: &ChainMap,
) -> Result<i64, HomologyError> {
    if f.maps.len() != reduced.reductions.len() {
        return Err(HomologyError::DimensionMismatch(
            "chain map and complex lengths",
        ));
    }
    let mut total = Rational::zero();
    for (k, m) in f.maps.iter().enumerate() {
        let t = reduced.homology_trace(k, m)?;
        if k % 2 == 0 {
            total += t;
        } else {
            total -= t;
        }
    }
    to_integer(&total)
}
