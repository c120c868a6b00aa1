//! Exact integer linear algebra: the constraint matrix `(x~_i(r_j))` and its
//! left kernel `{v in Z^rows : vM = 0}` as a lattice.
//!
//! Elimination uses only unimodular row operations, so the kernel rows of the
//! transformed identity block form a basis of the full (saturated) kernel.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::module::tilde_eval;
use crate::relators::RelatorSet;
use crate::word::CanonicalDiagram;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let data = rows.iter().map(|r| r.iter().cloned().map(Into::into).collect()).collect();
        IntegerMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        echelon(&mut rows, self.cols, false).len()
    }

    /// `v M`.
    pub fn left_mul(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        Ok((0..self.cols)
            .map(|j| v.iter().zip(&self.data).map(|(a, row)| a * &row[j]).sum())
            .collect())
    }

    /// The same matrix with rows reordered: row `i` of the result is row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        IntegerMatrix { rows: self.rows, cols: self.cols, data: perm.iter().map(|&p| self.data[p].clone()).collect() }
    }

    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        self.data.iter().map(|r| to_i64_vec(r)).collect()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect()
}

/// Rows are basis diagrams, columns are relators, entries `x~_i(r_j)`.
pub fn build_matrix(basis: &[CanonicalDiagram], rels: &RelatorSet) -> IntegerMatrix {
    let cols = rels.len();
    let data = basis
        .par_iter()
        .map(|x| rels.elements().iter().map(|r| BigInt::from(tilde_eval(x, r))).collect())
        .collect();
    IntegerMatrix { rows: basis.len(), cols, data }
}

/// Integer row echelon form on the first `ncols` columns using unimodular
/// row operations. Rows are permuted so pivot rows come first; returns the
/// pivot columns. With `reduce_above`, entries above each pivot are reduced
/// into `[0, pivot)`, giving the Hermite normal form.
fn echelon(rows: &mut [Vec<BigInt>], ncols: usize, reduce_above: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            // smallest nonzero entry at or below row r becomes the pivot
            let best = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let (head, tail) = rows.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[r], &q);
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            rows[r].iter_mut().for_each(|v| *v = -&*v);
        }
        if reduce_above {
            for i in 0..r {
                let q = rows[i][col].div_floor(&rows[r][col]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(r);
                    sub_multiple(&mut head[i], &tail[0], &q);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn sub_multiple(target: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// Hermite normal form of the lattice spanned by `vectors` (zero rows dropped).
pub fn hermite_normal_form(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let ncols = vectors.first().map_or(0, Vec::len);
    let mut rows = vectors.to_vec();
    let rank = echelon(&mut rows, ncols, true).len();
    rows.truncate(rank);
    rows
}

/// A basis of an integer lattice in `Z^dim`, kept in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    dim: usize,
    vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(dim: usize, vectors: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
        }
        Ok(LatticeBasis { dim, vectors: hermite_normal_form(vectors) })
    }

    pub fn from_i64(dim: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        let big: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        LatticeBasis::new(dim, &big)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn vectors_i64(&self) -> Result<Vec<Vec<i64>>> {
        self.vectors.iter().map(|v| to_i64_vec(v)).collect()
    }

    /// Same lattice, irrespective of the basis presentation.
    pub fn same_lattice(&self, other: &LatticeBasis) -> bool {
        self.dim == other.dim && self.vectors == other.vectors
    }

    /// The sublattice of vectors vanishing on the first `k` coordinates.
    pub fn vanishing_prefix(&self, k: usize) -> LatticeBasis {
        self.vanishing_on(&(0..k.min(self.dim)).collect::<Vec<_>>())
    }

    /// The sublattice of vectors vanishing on the given coordinates.
    pub fn vanishing_on(&self, coords: &[usize]) -> LatticeBasis {
        // move the constrained coordinates to the front; in echelon form a
        // lattice vector vanishes there exactly when it only uses rows whose
        // pivot lies past them
        let mut order: Vec<usize> = coords.iter().copied().filter(|&c| c < self.dim).collect();
        order.sort_unstable();
        order.dedup();
        let k = order.len();
        order.extend((0..self.dim).filter(|c| !coords.contains(c)));
        let permuted: Vec<Vec<BigInt>> = self.vectors.iter().map(|v| order.iter().map(|&c| v[c].clone()).collect()).collect();
        let kept: Vec<Vec<BigInt>> = hermite_normal_form(&permuted)
            .into_iter()
            .filter(|v| v.iter().take(k).all(Zero::is_zero))
            .map(|v| {
                let mut back = vec![BigInt::zero(); self.dim];
                for (i, &c) in order.iter().enumerate() {
                    back[c] = v[i].clone();
                }
                back
            })
            .collect();
        LatticeBasis { dim: self.dim, vectors: hermite_normal_form(&kept) }
    }
}

pub fn left_kernel(m: &IntegerMatrix) -> LatticeBasis {
    let n = m.rows;
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = m.data[i].clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let rank = echelon(&mut rows, m.cols, false).len();
    let kernel: Vec<Vec<BigInt>> = rows[rank..].iter().map(|r| r[m.cols..].to_vec()).collect();
    LatticeBasis { dim: n, vectors: hermite_normal_form(&kernel) }
}

/// Whether `v` is an integer combination of the basis.
pub fn lattice_contains(basis: &LatticeBasis, v: &[BigInt]) -> Result<bool> {
    if v.len() != basis.dim {
        return Err(Error::DimensionMismatch { expected: basis.dim, got: v.len() });
    }
    let mut rest = v.to_vec();
    for row in &basis.vectors {
        let p = row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
        if rest[..p].iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
        let (q, r) = rest[p].div_mod_floor(&row[p]);
        if !r.is_zero() {
            return Ok(false);
        }
        sub_multiple(&mut rest, row, &q);
    }
    Ok(rest.iter().all(Zero::is_zero))
}

pub fn lattice_contains_i64(basis: &LatticeBasis, v: &[i64]) -> Result<bool> {
    let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    lattice_contains(basis, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let m = IntegerMatrix::zeros(3, 2);
        let k = left_kernel(&m);
        assert_eq!(k.vectors_i64().unwrap(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn zero_columns() {
        let m = IntegerMatrix::zeros(2, 0);
        assert_eq!(left_kernel(&m).rank(), 2);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn kernel_of_small_matrix() {
        // rows (1,2), (2,4), (0,1): kernel spanned by (2,-1,0)
        let m = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4], vec![0, 1]]);
        let k = left_kernel(&m);
        assert_eq!(k.vectors_i64().unwrap(), vec![vec![2, -1, 0]]);
        assert_eq!(m.rank() + k.rank(), 3);
    }

    #[test]
    fn saturation_not_just_rational() {
        // vM = 0 means 2a + 4b = 0 and 6b = 0 ... kernel of a column (2,4,6)^T
        // contains (2,-1,0) and (3,0,-1) and their combinations only.
        let m = IntegerMatrix::from_rows(&[vec![2], vec![4], vec![6]]);
        let k = left_kernel(&m);
        assert_eq!(k.rank(), 2);
        assert!(lattice_contains_i64(&k, &[2, -1, 0]).unwrap());
        assert!(lattice_contains_i64(&k, &[1, 1, -1]).unwrap());
        assert!(!lattice_contains_i64(&k, &[1, 0, 0]).unwrap());
    }

    #[test]
    fn membership_examples() {
        let b = LatticeBasis::from_i64(3, &[vec![1, -3, 3]]).unwrap();
        assert!(lattice_contains_i64(&b, &[2, -6, 6]).unwrap());
        assert!(!lattice_contains_i64(&b, &[1, -3, 2]).unwrap());
        assert!(lattice_contains_i64(&b, &[0, 0, 0]).unwrap());
        assert!(matches!(lattice_contains_i64(&b, &[1, 2]), Err(Error::DimensionMismatch { expected: 3, got: 2 })));
    }

    #[test]
    fn hnf_is_presentation_independent() {
        let a = LatticeBasis::from_i64(3, &[vec![1, 2, 3], vec![0, 1, 1]]).unwrap();
        let b = LatticeBasis::from_i64(3, &[vec![1, 3, 4], vec![2, 5, 7], vec![1, 2, 3]]).unwrap();
        assert!(a.same_lattice(&b));
        let c = LatticeBasis::from_i64(3, &[vec![1, 2, 3], vec![0, 2, 2]]).unwrap();
        assert!(!a.same_lattice(&c));
    }

    #[test]
    fn left_mul_checks_dims() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.left_mul(&big(&[1, 1])).unwrap(), big(&[4, 6]));
        assert!(m.left_mul(&big(&[1])).is_err());
    }

    #[test]
    fn vanishing_prefix_sublattice() {
        let b = LatticeBasis::from_i64(4, &[vec![1, -3, 3, 0], vec![0, 0, 2, 5]]).unwrap();
        let sub = b.vanishing_prefix(2);
        assert_eq!(sub.vectors_i64().unwrap(), vec![vec![0, 0, 2, 5]]);
        let b = LatticeBasis::from_i64(3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let sub = b.vanishing_on(&[1]);
        assert_eq!(sub.vectors_i64().unwrap(), vec![vec![1, 0, -1]]);
        assert_eq!(b.vanishing_on(&[0, 2]).rank(), 0);
    }
}
