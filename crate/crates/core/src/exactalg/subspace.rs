use thiserror::Error;

use super::field::Field;
use super::matrix::{axpy, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ambient dimension mismatch: {left} vs {right}")]
pub struct AmbientMismatch {
    pub left: usize,
    pub right: usize,
}

/// A linear subspace of `F^n`, stored by its reduced row-echelon basis so that
/// equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

/// Sum, intersection and containment of two subspaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceOps<F> {
    pub sum: Subspace<F>,
    pub intersection: Subspace<F>,
    pub left_contains_right: bool,
    pub right_contains_left: bool,
}

impl<F: Field> Subspace<F> {
    pub fn span(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector outside the ambient space");
        }
        let rref = Matrix::from_rows(ambient, vectors).rref();
        let basis = (0..rref.rank).map(|i| rref.reduced.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots: rref.pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, Matrix::<F>::identity(ambient).to_rows())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// The reduced row-echelon basis.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.ambient, self.basis.clone())
    }

    /// Remainder of `v` after eliminating the pivot coordinates; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].neg_ref();
            axpy(&mut r, &c, row);
        }
        r
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector outside the ambient space");
        self.reduce(v).iter().all(F::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Vectors `y` with `⟨b, y⟩ = 0` for every basis vector `b`.
    pub fn annihilator(&self) -> Subspace<F> {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        self.basis_matrix().kernel()
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>, AmbientMismatch> {
        self.check(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::span(self.ambient, vectors))
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Result<Subspace<F>, AmbientMismatch> {
        self.check(other)?;
        let eqs = self.annihilator().sum(&other.annihilator())?;
        if eqs.is_zero() {
            return Ok(Subspace::full(self.ambient));
        }
        Ok(eqs.basis_matrix().kernel())
    }

    pub fn ops(&self, other: &Subspace<F>) -> Result<SubspaceOps<F>, AmbientMismatch> {
        Ok(SubspaceOps {
            sum: self.sum(other)?,
            intersection: self.intersection(other)?,
            left_contains_right: self.contains_subspace(other),
            right_contains_left: other.contains_subspace(self),
        })
    }

    /// Fallible coefficientwise map into another field (embedding or specialization).
    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Subspace<G>> {
        let vectors = self
            .basis
            .iter()
            .map(|v| v.iter().map(&f).collect::<Option<Vec<G>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(Subspace::span(self.ambient, vectors))
    }

    fn check(&self, other: &Subspace<F>) -> Result<(), AmbientMismatch> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(AmbientMismatch { left: self.ambient, right: other.ambient })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Scalar;
    use num_traits::{One, Zero};

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
    }

    #[test]
    fn coordinate_lines() {
        let a = Subspace::span(3, vec![e(3, 0)]);
        let b = Subspace::span(3, vec![e(3, 1)]);
        let ops = a.ops(&b).unwrap();
        assert_eq!(ops.sum.dim(), 2);
        assert_eq!(ops.intersection.dim(), 0);
        assert!(!ops.left_contains_right && !ops.right_contains_left);
    }

    #[test]
    fn equal_subspaces() {
        let a = Subspace::span(2, vec![vec![Scalar::from(2), Scalar::s()]]);
        let b = Subspace::span(2, vec![vec![Scalar::s() * Scalar::from(2), Scalar::s() * Scalar::s()]]);
        assert_eq!(a, b);
        let ops = a.ops(&b).unwrap();
        assert_eq!(ops.intersection, a);
        assert!(ops.left_contains_right);
    }

    #[test]
    fn slanted_line_in_plane() {
        let line = Subspace::span(3, vec![vec![Scalar::one(), Scalar::s(), Scalar::zero()]]);
        let plane = Subspace::span(3, vec![e(3, 0), e(3, 1)]);
        let ops = line.ops(&plane).unwrap();
        assert_eq!(ops.intersection.dim(), 1);
        assert_eq!(ops.intersection, line);
        assert!(ops.right_contains_left);
        assert_eq!(ops.sum.dim() + ops.intersection.dim(), line.dim() + plane.dim());
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::<Scalar>::zero(2);
        let b = Subspace::<Scalar>::zero(3);
        assert_eq!(a.sum(&b), Err(AmbientMismatch { left: 2, right: 3 }));
    }
}
