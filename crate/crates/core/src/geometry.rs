//! Left-invariant metric geometry of an invariant foliation.
//!
//! No orthonormalization is performed anywhere: every formula goes through Gram
//! matrices and their inverses, so all results stay in ℚ(s). The Hodge star is
//! computed up to the constant factor `√det G`, which no zero test can see.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::{dot, Matrix, Rational, Scalar, Subspace};
use crate::invforms::{multi_indices, CeComplex, InvForm};
use crate::liealg::{LeafSubalgebra, LieAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("Gram matrix is not symmetric at entry ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("Gram matrix is {rows}x{cols}, expected {dim}x{dim}")]
    Shape { rows: usize, cols: usize, dim: usize },
    #[error("Gram matrix is singular")]
    Singular,
    #[error("metric restricted to the leaf directions is degenerate")]
    DegenerateLeafMetric,
    #[error("form is not basic for the foliation")]
    NotBasic,
}

/// An invariant metric given by the Gram matrix of the basis `e_1..e_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Metric {
    gram: Matrix<Scalar>,
    inverse: Matrix<Scalar>,
}

/// Signs of the leading principal minors at a rational value of `s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DefinitenessReport {
    pub minors: Vec<Scalar>,
    pub sample: Rational,
    /// `None` where the sample is a pole of the minor.
    pub values: Vec<Option<Rational>>,
    pub positive_definite: bool,
}

impl Metric {
    pub fn new(gram: Matrix<Scalar>) -> Result<Self, GeometryError> {
        if gram.rows() != gram.cols() {
            return Err(GeometryError::Shape { rows: gram.rows(), cols: gram.cols(), dim: gram.rows() });
        }
        for i in 0..gram.rows() {
            for j in i + 1..gram.cols() {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(GeometryError::NotSymmetric { i, j });
                }
            }
        }
        let inverse = gram.inverse().ok_or(GeometryError::Singular)?;
        Ok(Metric { gram, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Metric { gram: Matrix::identity(n), inverse: Matrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<Scalar> {
        &self.gram
    }

    pub fn inverse(&self) -> &Matrix<Scalar> {
        &self.inverse
    }

    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.gram.mul_vec(y))
    }

    /// `x ↦ g(x, ·)` as covector coordinates.
    pub fn flat(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.gram.mul_vec(x)
    }

    pub fn sharp(&self, alpha: &[Scalar]) -> Vec<Scalar> {
        self.inverse.mul_vec(alpha)
    }

    pub fn leading_minors(&self) -> Vec<Scalar> {
        (1..=self.dim())
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.gram.submatrix(&idx, &idx).det()
            })
            .collect()
    }

    /// Sylvester's criterion at `s = sample`.
    pub fn definiteness_at(&self, sample: &Rational) -> DefinitenessReport {
        let minors = self.leading_minors();
        let values: Vec<Option<Rational>> = minors.iter().map(|m| m.eval(sample)).collect();
        let positive_definite = values.iter().all(|v| v.as_ref().is_some_and(Signed::is_positive));
        DefinitenessReport { minors, sample: sample.clone(), values, positive_definite }
    }

    pub fn specialize(&self, x: &Rational) -> Option<Metric> {
        Metric::new(self.gram.try_map(|c| c.specialize(x))?).ok()
    }
}

/// Christoffel data of an invariant connection: `coeffs[i][j] = ∇_{e_i} e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connection {
    coeffs: Vec<Vec<Vec<Scalar>>>,
}

impl Connection {
    pub fn on_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.coeffs[i][j]
    }

    /// `∇_x y` for invariant fields `x`, `y`.
    pub fn covariant(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = x.len();
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, v) in out.iter_mut().zip(&self.coeffs[i][j]) {
                    if !v.is_zero() {
                        *o = &*o + &(&c * v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// First pair violating `∇_{e_i}e_j - ∇_{e_j}e_i = [e_i, e_j]`.
    pub fn torsion_defect(&self, alg: &LieAlgebra) -> Option<(usize, usize)> {
        let n = alg.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs: Vec<Scalar> = self.coeffs[i][j].iter().zip(&self.coeffs[j][i]).map(|(a, b)| a - b).collect();
                if lhs != alg.structure(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First triple violating `g(∇_{e_i}e_j, e_k) + g(e_j, ∇_{e_i}e_k) = 0`.
    pub fn metric_defect(&self, metric: &Metric) -> Option<(usize, usize, usize)> {
        let n = metric.dim();
        let unit = |i: usize| crate::liealg::unit(n, i);
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let a = metric.inner(&self.coeffs[i][j], &unit(k));
                    let b = metric.inner(&unit(j), &self.coeffs[i][k]);
                    if !(&a + &b).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Levi-Civita connection of an invariant metric from the Koszul formula
/// `2 g(∇_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)`.
pub fn levi_civita(alg: &LieAlgebra, metric: &Metric) -> Connection {
    let n = alg.dim();
    let half = Scalar::from_rational(Rational::new(1.into(), 2.into()));
    let g = |x: &[Scalar], y: &[Scalar]| metric.inner(x, y);
    let e: Vec<Vec<Scalar>> = (0..n).map(|i| alg.unit(i)).collect();
    let coeffs = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let rhs: Vec<Scalar> = (0..n)
                        .map(|k| {
                            let a = g(alg.structure(i, j), &e[k]);
                            let b = g(alg.structure(j, k), &e[i]);
                            let c = g(alg.structure(k, i), &e[j]);
                            &(&(&a - &b) + &c) * &half
                        })
                        .collect();
                    metric.sharp(&rhs)
                })
                .collect()
        })
        .collect();
    Connection { coeffs }
}

/// Metric data attached to the leaf directions.
#[derive(Clone, Debug)]
pub struct LeafFrame {
    basis: Vec<Vec<Scalar>>,
    gram_inverse: Matrix<Scalar>,
    /// `g`-orthogonal projection onto `h^⊥`, as a matrix acting on columns.
    perp: Matrix<Scalar>,
    complement: Subspace<Scalar>,
}

impl LeafFrame {
    pub fn new(h: &Subspace<Scalar>, metric: &Metric) -> Result<Self, GeometryError> {
        let n = metric.dim();
        let basis = h.basis().to_vec();
        let p = basis.len();
        if p == 0 {
            return Ok(LeafFrame {
                basis,
                gram_inverse: Matrix::zeros(0, 0),
                perp: Matrix::identity(n),
                complement: Subspace::full(n),
            });
        }
        let hm = Matrix::from_fn(n, p, |i, a| basis[a][i].clone());
        let ht_g = hm.transpose().mul(metric.gram());
        let gram_h = ht_g.mul(&hm);
        let gram_inverse = gram_h.inverse().ok_or(GeometryError::DegenerateLeafMetric)?;
        let proj = hm.mul(&gram_inverse).mul(&ht_g);
        let perp = Matrix::from_fn(n, n, |i, j| {
            let id = if i == j { Scalar::one() } else { Scalar::zero() };
            &id - proj.get(i, j)
        });
        let complement = ht_g.kernel();
        Ok(LeafFrame { basis, gram_inverse, perp, complement })
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn project_perp(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.perp.mul_vec(x)
    }

    /// The `g`-orthogonal complement `h^⊥`.
    pub fn complement(&self) -> &Subspace<Scalar> {
        &self.complement
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MeanCurvature {
    pub kappa: InvForm,
    /// `κ(v) = 0` for every leaf direction `v`.
    pub vanishes_on_leaf: bool,
    /// `κ` vanishes on the leaves and so does `i_v dκ`.
    pub is_basic: bool,
}

impl MeanCurvature {
    pub fn is_zero(&self) -> bool {
        self.kappa.is_zero()
    }
}

/// Mean curvature form `κ(X) = Σ_{a,b} (G_h⁻¹)^{ab} g(∇_{h_a} h_b, P⊥X)`.
pub fn mean_curvature(alg: &LieAlgebra, leaf: &LeafSubalgebra, metric: &Metric) -> Result<MeanCurvature, GeometryError> {
    let n = alg.dim();
    let frame = LeafFrame::new(leaf.space(), metric)?;
    let conn = levi_civita(alg, metric);
    let p = frame.basis.len();
    // H = Σ G_h^{ab} P⊥ ∇_{h_a} h_b is the mean curvature vector; κ = H♭.
    let mut mean_vec = vec![Scalar::zero(); n];
    for a in 0..p {
        for b in 0..p {
            let w = frame.gram_inverse.get(a, b);
            if w.is_zero() {
                continue;
            }
            let nab = conn.covariant(&frame.basis[a], &frame.basis[b]);
            for (m, x) in mean_vec.iter_mut().zip(nab) {
                *m = &*m + &(w * &x);
            }
        }
    }
    let mean_vec = frame.project_perp(&mean_vec);
    let kappa = InvForm::from_covector(&metric.flat(&mean_vec));
    let ce = CeComplex::new(alg);
    let dk = ce.d(&kappa);
    let vanishes_on_leaf = frame.basis.iter().all(|v| kappa.interior(v).is_zero());
    let is_basic = vanishes_on_leaf && frame.basis.iter().all(|v| dk.interior(v).is_zero());
    Ok(MeanCurvature { kappa, vanishes_on_leaf, is_basic })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BundleLikeWitness {
    pub v: Vec<Scalar>,
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    pub value: Scalar,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BundleLikeReport {
    pub holds: bool,
    pub witness: Option<BundleLikeWitness>,
}

/// `g(P⊥[v,X], Y) + g(X, P⊥[v,Y])`, the transverse Lie derivative `(L_v g)(X, Y)`
/// for invariant fields.
pub fn bundle_like_defect(
    alg: &LieAlgebra,
    frame: &LeafFrame,
    metric: &Metric,
    v: &[Scalar],
    x: &[Scalar],
    y: &[Scalar],
) -> Scalar {
    let a = metric.inner(&frame.project_perp(&alg.bracket(v, x)), y);
    let b = metric.inner(x, &frame.project_perp(&alg.bracket(v, y)));
    &a + &b
}

/// Checks `L_v g_⊥ = 0` on basis vectors of `h` and `h^⊥`.
pub fn bundle_like_check(alg: &LieAlgebra, leaf: &LeafSubalgebra, metric: &Metric) -> Result<BundleLikeReport, GeometryError> {
    let frame = LeafFrame::new(leaf.space(), metric)?;
    let perp = frame.complement().basis();
    for v in frame.basis() {
        for (i, x) in perp.iter().enumerate() {
            for y in &perp[i..] {
                let value = bundle_like_defect(alg, &frame, metric, v, x, y);
                if !value.is_zero() {
                    let witness = BundleLikeWitness { v: v.clone(), x: x.clone(), y: y.clone(), value };
                    return Ok(BundleLikeReport { holds: false, witness: Some(witness) });
                }
            }
        }
    }
    Ok(BundleLikeReport { holds: true, witness: None })
}

/// Sign of the permutation listing `first` then `second` (disjoint, each increasing).
fn shuffle_sign(first: &[usize], second: &[usize]) -> bool {
    let inversions: usize = first.iter().map(|a| second.iter().filter(|b| *b < a).count()).sum();
    inversions % 2 == 1
}

/// Hodge star up to the constant `√det G`: the unique form with
/// `γ ∧ ⋆′β = g̃(γ, β) e^1∧…∧e^n` for all `γ`.
pub fn hodge_star(metric: &Metric, beta: &InvForm) -> InvForm {
    let n = metric.dim();
    let k = beta.degree();
    let ginv = metric.inverse();
    let mut out = InvForm::zero(n, n - k);
    for idx in multi_indices(n, k) {
        // raised component (β♯)^I = Σ_J det(G⁻¹[I, J]) β_J
        let mut raised = Scalar::zero();
        for (j, c) in beta.terms() {
            let minor = if k == 0 { Scalar::one() } else { ginv.submatrix(&idx, j).det() };
            if !minor.is_zero() {
                raised = &raised + &(&minor * c);
            }
        }
        if raised.is_zero() {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
        let term = InvForm::monomial(n, &rest).scale(&raised);
        out = out.add(&if shuffle_sign(&idx, &rest) { term.scale(&-Scalar::one()) } else { term });
    }
    out
}

/// Wedge of the `♭`-images of the leaf basis, a constant multiple of the characteristic form.
pub fn characteristic_form(leaf: &Subspace<Scalar>, metric: &Metric) -> InvForm {
    let n = metric.dim();
    leaf.basis()
        .iter()
        .fold(InvForm::constant(n, Scalar::one()), |acc, v| acc.wedge(&InvForm::from_covector(&metric.flat(v))))
}

pub fn is_basic(alg: &LieAlgebra, leaf: &Subspace<Scalar>, form: &InvForm) -> bool {
    let d = CeComplex::new(alg).d(form);
    leaf.basis().iter().all(|v| form.interior(v).is_zero() && d.interior(v).is_zero())
}

/// Basic coclosedness of a basic 1-form: `d ⋆′(α ∧ χ′) = 0`.
pub fn coclosed_check(
    alpha: &InvForm,
    alg: &LieAlgebra,
    leaf: &LeafSubalgebra,
    metric: &Metric,
) -> Result<bool, GeometryError> {
    if !is_basic(alg, leaf.space(), alpha) {
        return Err(GeometryError::NotBasic);
    }
    let chi = characteristic_form(leaf.space(), metric);
    let star = hodge_star(metric, &alpha.wedge(&chi));
    Ok(CeComplex::new(alg).d(&star).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::liealg::{default_names, unit};

    fn sv(items: &[&str]) -> Vec<Scalar> {
        items.iter().map(|t| t.parse().unwrap()).collect()
    }

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets(default_names(3), [(0, 1, unit(3, 2))]).unwrap()
    }

    fn leaf(alg: &LieAlgebra, vs: Vec<Vec<Scalar>>) -> LeafSubalgebra {
        LeafSubalgebra::new(alg, Subspace::span(alg.dim(), vs)).unwrap()
    }

    #[test]
    fn abelian_connection_vanishes() {
        let ab = LieAlgebra::abelian(3);
        assert!(levi_civita(&ab, &Metric::identity(3)).is_zero());
        let h = leaf(&ab, vec![sv(&["1", "s", "0"])]);
        assert!(mean_curvature(&ab, &h, &Metric::identity(3)).unwrap().is_zero());
        assert!(bundle_like_check(&ab, &h, &Metric::identity(3)).unwrap().holds);
    }

    #[test]
    fn heisenberg_koszul_by_hand() {
        let heis = heisenberg();
        let conn = levi_civita(&heis, &Metric::identity(3));
        assert_eq!(conn.on_basis(0, 1), sv(&["0", "0", "1/2"]).as_slice());
        assert_eq!(conn.on_basis(1, 0), sv(&["0", "0", "-1/2"]).as_slice());
        assert_eq!(conn.torsion_defect(&heis), None);
        assert_eq!(conn.metric_defect(&Metric::identity(3)), None);
    }

    #[test]
    fn connection_identities_for_nonidentity_metric() {
        let heis = heisenberg();
        let g = Matrix::from_rows(3, vec![sv(&["2", "1", "0"]), sv(&["1", "s^2+1", "s"]), sv(&["0", "s", "3"])]);
        let metric = Metric::new(g).unwrap();
        let conn = levi_civita(&heis, &metric);
        assert_eq!(conn.torsion_defect(&heis), None);
        assert_eq!(conn.metric_defect(&metric), None);
    }

    #[test]
    fn heisenberg_bad_foliation() {
        let heis = heisenberg();
        let g = Metric::identity(3);
        let h = leaf(&heis, vec![sv(&["1", "0", "1"])]);
        let kappa = mean_curvature(&heis, &h, &g).unwrap();
        assert_eq!(kappa.kappa.covector_coords(), sv(&["0", "-1/2", "0"]));
        assert!(kappa.vanishes_on_leaf);

        let report = bundle_like_check(&heis, &h, &g).unwrap();
        assert!(!report.holds);
        let w = report.witness.unwrap();
        assert!(!w.value.is_zero());
        let frame = LeafFrame::new(h.space(), &g).unwrap();
        let v = sv(&["1", "0", "1"]);
        let value = bundle_like_defect(&heis, &frame, &g, &v, &unit(3, 1), &sv(&["1", "0", "-1"]));
        assert_eq!(value, Scalar::from(-1));
    }

    #[test]
    fn iwasawa_geometry() {
        let ex = corpus::get("iwasawa9").unwrap();
        let fnm = &ex.fnm;
        let conn = levi_civita(fnm.algebra(), fnm.metric());
        for v in fnm.leaf().space().basis() {
            assert!(conn.covariant(v, v).iter().all(Zero::is_zero));
        }
        let v1 = sv(&["0", "-s", "1", "0", "0", "0", "0", "0", "0"]);
        assert!(conn.covariant(&v1, &v1).iter().all(Zero::is_zero));
        let kappa = mean_curvature(fnm.algebra(), fnm.leaf(), fnm.metric()).unwrap();
        assert!(kappa.is_zero() && kappa.is_basic);
        assert!(bundle_like_check(fnm.algebra(), fnm.leaf(), fnm.metric()).unwrap().holds);
        for i in [0, 3, 4] {
            let alpha = InvForm::covector(9, i);
            assert!(coclosed_check(&alpha, fnm.algebra(), fnm.leaf(), fnm.metric()).unwrap());
        }
        assert_eq!(
            coclosed_check(&InvForm::covector(9, 1), fnm.algebra(), fnm.leaf(), fnm.metric()),
            Err(GeometryError::NotBasic)
        );
    }

    #[test]
    fn mean_curvature_ignores_leaf_basis_choice() {
        let heis = heisenberg();
        let g = Metric::new(Matrix::from_rows(3, vec![sv(&["1", "0", "0"]), sv(&["0", "2", "0"]), sv(&["0", "0", "s^2+1"])])).unwrap();
        let a = leaf(&heis, vec![sv(&["1", "0", "1"])]);
        let k1 = mean_curvature(&heis, &a, &g).unwrap();
        let ab = LieAlgebra::abelian(3);
        let plane = Subspace::span(3, vec![sv(&["1", "s", "0"]), sv(&["0", "1", "1"])]);
        let frame1 = LeafFrame::new(&plane, &g).unwrap();
        let frame2 = LeafFrame::new(&Subspace::span(3, vec![sv(&["1", "s+1", "1"]), sv(&["0", "s", "s"])]), &g).unwrap();
        assert_eq!(frame1.complement(), frame2.complement());
        assert!(k1.vanishes_on_leaf);
        assert!(mean_curvature(&ab, &LeafSubalgebra::new(&ab, plane).unwrap(), &g).unwrap().is_zero());
    }

    #[test]
    fn hodge_star_examples() {
        let g = Metric::identity(3);
        assert_eq!(hodge_star(&g, &InvForm::covector(3, 2)), InvForm::monomial(3, &[0, 1]));
        assert_eq!(hodge_star(&g, &InvForm::covector(3, 1)), InvForm::monomial(3, &[0, 2]).scale(&Scalar::from(-1)));
        assert_eq!(hodge_star(&g, &InvForm::constant(3, Scalar::one())), InvForm::monomial(3, &[0, 1, 2]));
        // defining identity γ ∧ ⋆′β = g̃(γ, β) vol′ with a non-diagonal metric
        let metric = Metric::new(Matrix::from_rows(3, vec![sv(&["2", "1", "0"]), sv(&["1", "1", "0"]), sv(&["0", "0", "s"])])).unwrap();
        for (a, b) in [(0, 0), (0, 1), (1, 2), (2, 2)] {
            let beta = InvForm::covector(3, a);
            let gamma = InvForm::covector(3, b);
            let lhs = gamma.wedge(&hodge_star(&metric, &beta));
            let expected = metric.inverse().get(b, a).clone();
            assert_eq!(lhs, InvForm::monomial(3, &[0, 1, 2]).scale(&expected));
        }
    }

    #[test]
    fn heisenberg_trivial_foliation_coclosed() {
        let heis = heisenberg();
        let h = leaf(&heis, vec![]);
        assert!(coclosed_check(&InvForm::covector(3, 2), &heis, &h, &Metric::identity(3)).unwrap());
    }

    #[test]
    fn metric_errors_and_definiteness() {
        let bad = Matrix::from_rows(2, vec![sv(&["1", "s"]), sv(&["0", "1"])]);
        assert_eq!(Metric::new(bad), Err(GeometryError::NotSymmetric { i: 0, j: 1 }));
        let singular = Matrix::from_rows(2, vec![sv(&["1", "1"]), sv(&["1", "1"])]);
        assert_eq!(Metric::new(singular), Err(GeometryError::Singular));
        let g = Metric::new(Matrix::from_rows(2, vec![sv(&["1", "s"]), sv(&["s", "2"])])).unwrap();
        let sample = crate::exactalg::parse_rational("17/12").unwrap();
        let rep = g.definiteness_at(&sample);
        assert_eq!(rep.minors, sv(&["1", "2-s^2"]));
        // 2 - (17/12)^2 = -1/144 < 0
        assert!(!rep.positive_definite);
        assert!(g.definiteness_at(&crate::exactalg::rat(1)).positive_definite);
    }
}
