//! Integer Hermite normal form and full-rank lattices in ℚ^k ⊂ ℝ^k.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::subspace::Subspace;
use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice not full rank: generators span rank {rank} in dimension {dim}")]
    NotFullRank { rank: usize, dim: usize },
    #[error("generator has length {got}, expected {dim}")]
    DimensionMismatch { dim: usize, got: usize },
}

/// Column-style Hermite normal form `H = A·U` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnHnf {
    /// `rows × cols`; the first `rank` columns are the echelon basis, the rest are zero.
    pub h: Vec<Vec<BigInt>>,
    /// Unimodular `cols × cols` transform.
    pub u: Vec<Vec<BigInt>>,
    pub rank: usize,
    /// Pivot row of each nonzero column, strictly increasing.
    pub pivot_rows: Vec<usize>,
}

impl ColumnHnf {
    /// ℤ-basis of `{x ∈ ℤ^cols : A x = 0}` (columns of `U` past the rank).
    pub fn integer_kernel(&self) -> Vec<Vec<BigInt>> {
        let cols = self.u.len();
        (self.rank..cols).map(|j| self.u.iter().map(|row| row[j].clone()).collect()).collect()
    }
}

fn col_sub_mul(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let t = &row[src] * q;
        row[dst] -= t;
    }
}

fn col_swap(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn col_neg(m: &mut [Vec<BigInt>], a: usize) {
    for row in m.iter_mut() {
        row[a] = -&row[a];
    }
}

/// Column HNF with pivots positive, entries above each pivot zero, and entries
/// left of each pivot reduced into `[0, pivot)`.
pub fn column_hnf(a: &[Vec<BigInt>], cols: usize) -> ColumnHnf {
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> =
        (0..cols).map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut c = 0;
    let mut pivot_rows = Vec::new();
    for r in 0..h.len() {
        if c == cols {
            break;
        }
        // Euclid on the entries h[r][c..] until a single nonzero remains.
        loop {
            let best = (c..cols).filter(|&j| !h[r][j].is_zero()).min_by_key(|&j| h[r][j].abs());
            let Some(best) = best else {
                break;
            };
            col_swap(&mut h, c, best);
            col_swap(&mut u, c, best);
            let mut done = true;
            for j in c + 1..cols {
                if h[r][j].is_zero() {
                    continue;
                }
                let q = h[r][j].div_floor(&h[r][c]);
                col_sub_mul(&mut h, j, c, &q);
                col_sub_mul(&mut u, j, c, &q);
                if !h[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            col_neg(&mut h, c);
            col_neg(&mut u, c);
        }
        for j in 0..c {
            let q = h[r][j].div_floor(&h[r][c]);
            col_sub_mul(&mut h, j, c, &q);
            col_sub_mul(&mut u, j, c, &q);
        }
        pivot_rows.push(r);
        c += 1;
    }
    ColumnHnf { h, u, rank: c, pivot_rows }
}

/// A full-rank lattice in ℝ^k with exact rational coordinates.
///
/// The basis vectors are the columns of a lower-triangular matrix with positive
/// diagonal whose sub-diagonal row entries are reduced modulo the diagonal; this
/// is a unique normal form for the ℤ-module.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntLattice {
    rank: usize,
    basis: Vec<Vec<Rational>>,
}

impl IntLattice {
    /// The standard lattice ℤ^k.
    pub fn standard(k: usize) -> Self {
        let basis =
            (0..k).map(|j| (0..k).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
        IntLattice { rank: k, basis }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Basis vectors (the HNF columns).
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_standard(&self) -> bool {
        *self == IntLattice::standard(self.rank)
    }

    /// Canonical representative of `x` modulo the lattice, each coordinate
    /// `x_i ∈ [0, b_ii)` after reduction.
    pub fn reduce(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.rank, "point outside ℝ^k");
        let mut r = x.to_vec();
        for (j, b) in self.basis.iter().enumerate() {
            let q = (&r[j] / &b[j]).floor();
            if q.is_zero() {
                continue;
            }
            for (ri, bi) in r.iter_mut().zip(b).skip(j) {
                *ri -= &q * bi;
            }
        }
        r
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }
}

/// HNF basis of the ℤ-module generated by rational vectors in ℝ^k.
pub fn hnf_lattice(dim: usize, generators: &[Vec<Rational>]) -> Result<IntLattice, LatticeError> {
    if let Some(g) = generators.iter().find(|g| g.len() != dim) {
        return Err(LatticeError::DimensionMismatch { dim, got: g.len() });
    }
    let d = generators.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| generators.iter().map(|g| (&g[i] * Rational::from_integer(d.clone())).to_integer()).collect())
        .collect();
    let hnf = column_hnf(&scaled, generators.len());
    if hnf.rank < dim {
        return Err(LatticeError::NotFullRank { rank: hnf.rank, dim });
    }
    let basis = (0..dim)
        .map(|j| (0..dim).map(|i| Rational::new(hnf.h[i][j].clone(), d.clone())).collect())
        .collect();
    Ok(IntLattice { rank: dim, basis })
}

/// Multiplies a rational vector by the lcm of its denominators.
pub fn clear_rational_denominators(v: &[Rational]) -> Vec<BigInt> {
    let d = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    v.iter().map(|q| (q * Rational::from_integer(d.clone())).to_integer()).collect()
}

/// ℤ-basis of `W ∩ ℤ^n` for a ℚ-subspace `W`, in row-style Hermite normal form.
pub fn saturated_integer_basis(w: &Subspace<Rational>) -> Vec<Vec<BigInt>> {
    let n = w.ambient_dim();
    let equations: Vec<Vec<BigInt>> =
        if w.is_full() { Vec::new() } else { w.annihilator().basis().iter().map(|r| clear_rational_denominators(r)).collect() };
    let kernel = column_hnf(&equations, n).integer_kernel();
    row_hnf(n, &kernel)
}

/// Row-style HNF of integer row vectors (zero rows dropped).
pub fn row_hnf(n: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let transposed: Vec<Vec<BigInt>> = (0..n).map(|i| rows.iter().map(|r| r[i].clone()).collect()).collect();
    let hnf = column_hnf(&transposed, rows.len());
    (0..hnf.rank).map(|j| (0..n).map(|i| hnf.h[i][j].clone()).collect()).collect()
}

/// Extends a primitive set of integer rows (a ℤ-basis of a saturated sublattice
/// of ℤ^m) to a basis of ℤ^m; the given rows come first. `None` when the rows
/// are not primitive.
pub fn complete_to_unimodular(m: usize, rows: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let k = rows.len();
    let hnf = column_hnf(rows, m);
    // rows · U = [I_k | 0] exactly when the rows are primitive
    for (i, row) in hnf.h.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { BigInt::one() } else { BigInt::zero() };
            if *x != want {
                return None;
            }
        }
    }
    debug_assert_eq!(hnf.rank, k);
    let u = super::Matrix::from_rows(m, hnf.u.iter().map(|r| r.iter().cloned().map(Rational::from_integer).collect()).collect());
    let inv = u.inverse().expect("unimodular transform is invertible");
    Some((0..m).map(|i| inv.row(i).iter().map(|q| q.to_integer()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn q(a: i64, b: i64) -> Rational {
        rat(a) / rat(b)
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn redundant_generator() {
        let l = hnf_lattice(2, &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert!(l.is_standard());
        assert_eq!(l.basis(), &[v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn one_dimensional_gcd() {
        let l = hnf_lattice(1, &[v(&[2]), v(&[3])]).unwrap();
        assert_eq!(l.basis(), &[v(&[1])]);
        let l = hnf_lattice(1, &[v(&[4]), v(&[-6])]).unwrap();
        assert_eq!(l.basis(), &[v(&[2])]);
    }

    #[test]
    fn half_integer_coordinate() {
        // oracle: scale by 2 to {(1,0),(0,2)}, already in HNF, divide by 2
        let l = hnf_lattice(2, &[vec![q(1, 2), q(0, 1)], v(&[0, 1])]).unwrap();
        assert_eq!(l.basis(), &[vec![q(1, 2), q(0, 1)], v(&[0, 1])]);
        assert!(l.contains(&[q(3, 2), q(-2, 1)]));
        assert!(!l.contains(&[q(1, 4), q(0, 1)]));
    }

    #[test]
    fn sub_diagonal_reduction() {
        // generators (2,1),(0,3): HNF columns (2,1),(0,3) with 1 in [0,3)
        let l = hnf_lattice(2, &[v(&[2, 1]), v(&[0, 3])]).unwrap();
        assert_eq!(l.basis(), &[v(&[2, 1]), v(&[0, 3])]);
        let l2 = hnf_lattice(2, &[v(&[2, 7]), v(&[0, 3])]).unwrap();
        assert_eq!(l, l2);
    }

    #[test]
    fn rank_deficient() {
        assert_eq!(
            hnf_lattice(2, &[v(&[1, 1]), v(&[2, 2])]),
            Err(LatticeError::NotFullRank { rank: 1, dim: 2 })
        );
        assert!(hnf_lattice(1, &[]).is_err());
        assert!(hnf_lattice(0, &[]).unwrap().basis().is_empty());
    }

    #[test]
    fn reduction_mod_lattice() {
        let l = IntLattice::standard(3);
        assert_eq!(l.reduce(&[q(5, 2), q(-1, 3), rat(1)]), vec![q(1, 2), q(2, 3), rat(0)]);
    }

    #[test]
    fn integer_kernel() {
        let a = vec![vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)]];
        let hnf = column_hnf(&a, 3);
        assert_eq!(hnf.rank, 1);
        assert_eq!(hnf.h[0][0], BigInt::from(2));
        for k in hnf.integer_kernel() {
            let s: BigInt = a[0].iter().zip(&k).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
        assert_eq!(hnf.integer_kernel().len(), 2);
    }

    #[test]
    fn saturation_of_rational_line() {
        // W = span{(2, 1)} over ℚ: W ∩ ℤ^2 = ℤ(2, 1)
        let w = Subspace::span(2, vec![vec![rat(1), q(1, 2)]]);
        assert_eq!(saturated_integer_basis(&w), vec![vec![BigInt::from(2), BigInt::from(1)]]);
        let full = Subspace::<Rational>::full(2);
        assert_eq!(saturated_integer_basis(&full).len(), 2);
    }

    #[test]
    fn unimodular_completion() {
        let rows = vec![vec![BigInt::from(2), BigInt::from(1), BigInt::from(0)]];
        let basis = complete_to_unimodular(3, &rows).unwrap();
        assert_eq!(basis[0], rows[0]);
        let m = crate::exactalg::Matrix::from_rows(
            3,
            basis.iter().map(|r| r.iter().cloned().map(Rational::from_integer).collect()).collect(),
        );
        assert!(m.det() == rat(1) || m.det() == rat(-1));
        assert!(complete_to_unimodular(2, &[vec![BigInt::from(2), BigInt::from(0)]]).is_none());
    }
}
