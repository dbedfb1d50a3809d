//! Dense matrices over an exact field with reduced row-echelon machinery.

use std::fmt;

use super::field::Field;
use super::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rref<F> {
    pub rank: usize,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
    pub reduced: Matrix<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Fallible entrywise map, e.g. specialization of `s`.
    pub fn try_map<G>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Matrix<G>> {
        let data = self.data.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::<F>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).filter(|&i| !m.get(i, c).is_zero()).min_by_key(|&i| m.get(i, c).weight()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = F::one().div_ref(m.get(r, c));
            if !inv.is_one() {
                for j in c..m.cols {
                    let v = m.get(r, j).mul_ref(&inv);
                    m.set(r, j, v);
                }
            }
            let pivot_row: Vec<F> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).sub_ref(&factor.mul_ref(pv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: r, pivots, reduced: m }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let Rref { pivots, reduced, .. } = self.rref();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for f in 0..self.cols {
            if pivot_iter.peek() == Some(&&f) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = reduced.get(i, f).neg_ref();
            }
            basis.push(v);
        }
        Subspace::span(self.cols, basis)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let rref = aug.rref();
        if rref.pivots.len() < n || rref.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| rref.reduced.get(i, n + j).clone()))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = det.neg_ref();
            }
            let piv = m.get(c, c).clone();
            det = det.mul_ref(&piv);
            for i in c + 1..m.rows {
                let factor = m.get(i, c).div_ref(&piv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).sub_ref(&factor.mul_ref(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Square submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Coefficients `c` with `Σ c_i basis_i = v`, or `None` when `v` is outside the span.
/// The basis rows must be linearly independent.
pub fn coordinates<F: Field>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    let k = basis.len();
    let n = v.len();
    let aug = Matrix::from_fn(n, k + 1, |i, j| if j < k { basis[j][i].clone() } else { v[i].clone() });
    let rref = aug.rref();
    if rref.pivots.last() == Some(&k) {
        return None;
    }
    assert_eq!(rref.rank, k, "coordinates need an independent basis");
    Some((0..k).map(|i| rref.reduced.get(i, k).clone()).collect())
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| if x.is_zero() || y.is_zero() { acc } else { acc.add_ref(&x.mul_ref(y)) })
}

pub fn axpy<F: Field>(acc: &mut [F], c: &F, x: &[F]) {
    if c.is_zero() {
        return;
    }
    for (a, xi) in acc.iter_mut().zip(x) {
        if !xi.is_zero() {
            *a = a.add_ref(&c.mul_ref(xi));
        }
    }
}

pub fn scale_vec<F: Field>(c: &F, x: &[F]) -> Vec<F> {
    x.iter().map(|xi| c.mul_ref(xi)).collect()
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Rational, Scalar};
    use num_traits::Zero;

    fn sm(rows: &[&[&str]]) -> Matrix<Scalar> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|t| t.parse().unwrap()).collect()).collect())
    }

    #[test]
    fn identity_has_full_rank() {
        let r = Matrix::<Scalar>::identity(3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        let r = sm(&[&["1", "s"], &["s", "s^2"]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, sm(&[&["1", "s"], &["0", "0"]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::<Scalar>::identity(3).kernel().dim(), 0);
        let k = sm(&[&["-s", "1"]]).kernel();
        assert_eq!(k.basis(), &[vec![Scalar::from(1), Scalar::s()]]);
        let z = Matrix::<Scalar>::zeros(3, 3).kernel();
        assert_eq!(z, Subspace::full(3));
    }

    #[test]
    fn inverse_and_det() {
        let m = sm(&[&["1", "s"], &["0", "2"]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(m.det(), Scalar::from(2));
        assert!(sm(&[&["1", "s"], &["s", "s^2"]]).inverse().is_none());
        assert!(sm(&[&["1", "s"], &["s", "s^2"]]).det().is_zero());
    }

    #[test]
    fn coordinates_in_basis() {
        let basis = vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]];
        assert_eq!(coordinates(&basis, &[rat(2), rat(5)]), Some(vec![rat(2), rat(3)]));
        let line = vec![vec![rat(1), rat(1)]];
        assert_eq!(coordinates(&line, &[rat(1), Rational::zero()]), None);
    }

    mod sampled {
        use super::*;
        use proptest::prelude::*;

        fn arb_entry() -> impl Strategy<Value = Scalar> {
            (-3i64..=3, -3i64..=3, -2i64..=2, 0usize..4).prop_map(|(a, b, c, kind)| match kind {
                0 => Scalar::from(a),
                1 => Scalar::from(a) + Scalar::from(b) * Scalar::s(),
                2 => Scalar::from(a) + Scalar::from(c) * Scalar::s() * Scalar::s(),
                _ => Scalar::from(a) / (Scalar::s() - Scalar::from(c)),
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            /// Sample points with large prime denominators cannot be roots of the
            /// small-coefficient minors these matrices produce.
            #[test]
            fn rank_matches_specialized_rank(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(arb_entry(), 16)) {
                let m = Matrix::from_fn(rows, cols, |i, j| entries[i * 4 + j].clone());
                let generic = m.rank();
                for sigma in [rat(1009) / rat(997), rat(-2003) / rat(991), rat(4001) / rat(983)] {
                    let numeric: Matrix<Rational> = m.try_map(|x| x.eval(&sigma)).unwrap();
                    prop_assert_eq!(numeric.rank(), generic);
                }
            }
        }
    }
}
