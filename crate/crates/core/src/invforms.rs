//! Left-invariant differential forms and the Chevalley–Eilenberg complex.
//!
//! Sign convention: on invariant 1-forms `dα(X, Y) = -α([X, Y])` (Maurer–Cartan),
//! extended to all degrees as an antiderivation. This is the sign obtained by
//! differentiating the coordinate expressions of the dual coframe; the opposite
//! convention negates `d` and changes no kernel, image, or cohomology.
//!
//! Forms are evaluated with the determinant convention `(e^1∧e^2)(e_1, e_2) = 1`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactalg::{Matrix, Scalar, Subspace};
use crate::liealg::{render_terms, LieAlgebra};

/// An invariant form with coefficients on strictly increasing multi-indices
/// (0-based covector indices). Missing indices have coefficient zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Scalar>,
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order: the basis of Λ^k.
pub fn multi_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn index_of(basis: &[Vec<usize>], idx: &[usize]) -> usize {
    basis.binary_search_by(|probe| probe.as_slice().cmp(idx)).expect("multi-index in basis")
}

/// Sign and sorted union of two increasing index lists; `None` when they overlap.
fn merge(a: &[usize], b: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut inversions = 0usize;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((inversions % 2 == 1, out))
}

impl InvForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        InvForm { dim, degree, coeffs: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut f = InvForm::zero(dim, 0);
        f.add_term(Vec::new(), c);
        f
    }

    /// `e^{i_1} ∧ … ∧ e^{i_k}` for arbitrary (possibly unsorted) indices.
    pub fn monomial(dim: usize, indices: &[usize]) -> Self {
        let mut f = InvForm::constant(dim, Scalar::one());
        for &i in indices {
            assert!(i < dim, "covector index out of range");
            f = f.wedge(&InvForm::covector(dim, i));
        }
        f
    }

    /// The dual basis covector `e^i`.
    pub fn covector(dim: usize, i: usize) -> Self {
        let mut f = InvForm::zero(dim, 1);
        f.add_term(vec![i], Scalar::one());
        f
    }

    /// The 1-form with the given coefficients on `e^1..e^n`.
    pub fn from_covector(v: &[Scalar]) -> Self {
        InvForm::from_coords(v.len(), 1, v)
    }

    /// Builds a form from coordinates in the lexicographic basis of Λ^k.
    pub fn from_coords(dim: usize, degree: usize, coords: &[Scalar]) -> Self {
        let basis = multi_indices(dim, degree);
        assert_eq!(basis.len(), coords.len(), "coordinate vector has wrong length");
        let mut f = InvForm::zero(dim, degree);
        for (idx, c) in basis.into_iter().zip(coords) {
            f.add_term(idx, c.clone());
        }
        f
    }

    pub fn to_coords(&self) -> Vec<Scalar> {
        multi_indices(self.dim, self.degree).iter().map(|idx| self.coeff(idx)).collect()
    }

    /// Coefficients on `e^1..e^n`; panics unless the degree is 1.
    pub fn covector_coords(&self) -> Vec<Scalar> {
        assert_eq!(self.degree, 1, "not a 1-form");
        self.to_coords()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        self.coeffs.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, idx: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        match self.coeffs.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &InvForm) -> InvForm {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "adding forms of different type");
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &InvForm) -> InvForm {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> InvForm {
        let mut out = InvForm::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        for (idx, v) in &self.coeffs {
            out.add_term(idx.clone(), v * c);
        }
        out
    }

    /// Graded-commutative exterior product.
    pub fn wedge(&self, other: &InvForm) -> InvForm {
        assert_eq!(self.dim, other.dim, "wedge of forms on different algebras");
        let mut out = InvForm::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if let Some((negative, idx)) = merge(a, b) {
                    let c = x * y;
                    out.add_term(idx, if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// Contraction `i_v α`, lowering the degree by one.
    pub fn interior(&self, v: &[Scalar]) -> InvForm {
        assert_eq!(v.len(), self.dim, "vector outside the algebra");
        if self.degree == 0 {
            return InvForm::zero(self.dim, 0);
        }
        let mut out = InvForm::zero(self.dim, self.degree - 1);
        for (idx, c) in &self.coeffs {
            for (m, &i) in idx.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(m);
                let t = c * &v[i];
                out.add_term(rest, if m % 2 == 1 { -t } else { t });
            }
        }
        out
    }

    /// Value on a list of vectors (determinant convention).
    pub fn evaluate(&self, vectors: &[Vec<Scalar>]) -> Scalar {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        let mut f = self.clone();
        for v in vectors {
            f = f.interior(v);
        }
        f.coeff(&[])
    }

    /// Renders with the given covector labels, e.g. `-e1^e4+e2^e5`.
    pub fn render(&self, names: &[String]) -> String {
        let labels: Vec<(Scalar, String)> = self
            .coeffs
            .iter()
            .map(|(idx, c)| (c.clone(), idx.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("^")))
            .collect();
        render_terms(labels.iter().map(|(c, l)| (c, l.as_str())))
    }
}

/// A closed-form cohomology computation in one degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim: usize,
    /// Closed representatives, independent modulo exact forms.
    pub basis: Vec<InvForm>,
}

/// The Chevalley–Eilenberg complex of an algebra, with `de^c` precomputed.
pub struct CeComplex<'a> {
    alg: &'a LieAlgebra,
    d_covectors: Vec<InvForm>,
}

impl<'a> CeComplex<'a> {
    pub fn new(alg: &'a LieAlgebra) -> Self {
        let n = alg.dim();
        let d_covectors = (0..n)
            .map(|c| {
                let mut f = InvForm::zero(n, 2);
                for a in 0..n {
                    for b in a + 1..n {
                        let k = &alg.structure(a, b)[c];
                        f.add_term(vec![a, b], -k);
                    }
                }
                f
            })
            .collect();
        CeComplex { alg, d_covectors }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.alg
    }

    /// Exterior derivative of an invariant form.
    pub fn d(&self, form: &InvForm) -> InvForm {
        let n = self.alg.dim();
        let mut out = InvForm::zero(n, form.degree + 1);
        for (idx, c) in &form.coeffs {
            for (m, &i) in idx.iter().enumerate() {
                let left = InvForm::monomial(n, &idx[..m]);
                let right = InvForm::monomial(n, &idx[m + 1..]);
                let term = left.wedge(&self.d_covectors[i]).wedge(&right);
                let sign = if m % 2 == 1 { -c.clone() } else { c.clone() };
                out = out.add(&term.scale(&sign));
            }
        }
        out
    }

    /// Matrix of `d: Λ^k → Λ^{k+1}` in the lexicographic bases (columns index Λ^k).
    pub fn d_matrix(&self, k: usize) -> Matrix<Scalar> {
        let n = self.alg.dim();
        let src = multi_indices(n, k);
        let dst = multi_indices(n, k + 1);
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (j, idx) in src.iter().enumerate() {
            let df = self.d(&InvForm::monomial(n, idx));
            for (t, c) in df.terms() {
                m.set(index_of(&dst, t), j, c.clone());
            }
        }
        m
    }

    /// Closed `k`-forms as a subspace of Λ^k coordinates.
    pub fn closed(&self, k: usize) -> Subspace<Scalar> {
        let n = self.alg.dim();
        if k >= n {
            return Subspace::full(multi_indices(n, k).len());
        }
        self.d_matrix(k).kernel()
    }

    /// Exact `k`-forms as a subspace of Λ^k coordinates.
    pub fn exact(&self, k: usize) -> Subspace<Scalar> {
        let n = self.alg.dim();
        let len = multi_indices(n, k).len();
        if k == 0 || k > n {
            return Subspace::zero(len);
        }
        Subspace::span(len, self.d_matrix(k - 1).transpose().to_rows())
    }

    /// All Betti numbers `b_0..b_n`, from one rank computation per differential.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let n = self.alg.dim();
        let ranks: Vec<usize> = (0..n).map(|k| self.d_matrix(k).rank()).collect();
        (0..=n)
            .map(|k| {
                let into = if k > 0 { ranks[k - 1] } else { 0 };
                let out = if k < n { ranks[k] } else { 0 };
                multi_indices(n, k).len() - into - out
            })
            .collect()
    }

    pub fn cohomology(&self, k: usize) -> CohomologyReport {
        let n = self.alg.dim();
        let closed = self.closed(k);
        let mut span = self.exact(k);
        let mut basis = Vec::new();
        for z in closed.basis() {
            if span.contains(z) {
                continue;
            }
            span = span.sum(&Subspace::span(span.ambient_dim(), vec![z.clone()])).expect("same ambient");
            basis.push(InvForm::from_coords(n, k, z));
        }
        CohomologyReport { degree: k, dim: basis.len(), basis }
    }

    /// Invariant `k`-forms `α` with `i_v α = 0` and `i_v dα = 0` for every `v ∈ h`.
    pub fn basic_forms(&self, h: &Subspace<Scalar>, k: usize) -> Subspace<Scalar> {
        let n = self.alg.dim();
        let src = multi_indices(n, k);
        let mut equations: Vec<Vec<Scalar>> = Vec::new();
        for v in h.basis() {
            let mut rows_lower = vec![vec![Scalar::zero(); src.len()]; multi_indices(n, k.saturating_sub(1)).len()];
            let mut rows_same = vec![vec![Scalar::zero(); src.len()]; src.len()];
            for (j, idx) in src.iter().enumerate() {
                let f = InvForm::monomial(n, idx);
                if k > 0 {
                    for (r, c) in f.interior(v).to_coords().into_iter().enumerate() {
                        rows_lower[r][j] = c;
                    }
                }
                for (r, c) in self.d(&f).interior(v).to_coords().into_iter().enumerate() {
                    rows_same[r][j] = c;
                }
            }
            if k > 0 {
                equations.extend(rows_lower);
            }
            equations.extend(rows_same);
        }
        equations.retain(|r| r.iter().any(|c| !c.is_zero()));
        if equations.is_empty() {
            return Subspace::full(src.len());
        }
        Matrix::from_rows(src.len(), equations).kernel()
    }

    /// Closed basic invariant 1-forms. In degree one the invariant complex has no
    /// nonzero exact forms (invariant functions are constant), so these are
    /// exactly the first basic cohomology.
    pub fn basic_h1(&self, h: &Subspace<Scalar>) -> CohomologyReport {
        let space = self.basic_forms(h, 1).intersection(&self.closed(1)).expect("same ambient");
        let basis: Vec<InvForm> = space.basis().iter().map(|v| InvForm::from_covector(v)).collect();
        CohomologyReport { degree: 1, dim: basis.len(), basis }
    }
}

/// Converts a subspace of Λ^k coordinates into forms.
pub fn forms_of(dim: usize, degree: usize, space: &Subspace<Scalar>) -> Vec<InvForm> {
    space.basis().iter().map(|v| InvForm::from_coords(dim, degree, v)).collect()
}
