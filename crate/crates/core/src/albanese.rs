//! Rational basic cohomology, the basic Albanese torus and map, and the
//! structural checks built on them.
//!
//! The lattice is always the one generated by `exp(e_1), …, exp(e_n)`. The loop
//! through `exp(t e_j)` has invariant tangent `e_j`, so the period of a closed
//! invariant 1-form over it is the form's `j`-th coefficient.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::{
    complete_to_unimodular, coordinates, embed_vector, hnf_lattice, parse_rational, rational_subspace,
    saturated_integer_basis, IntLattice, LatticeError, Matrix, Rational, Scalar, Subspace,
};
use crate::geometry::{GeometryError, LeafFrame, Metric};
use crate::invforms::{CeComplex, InvForm};
use crate::liealg::{LeafSubalgebra, LieAlgebra, LieError};

pub const LATTICE_MODE: &str = "exp-generated";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("Lie algebra check failed: {}", .0.join("; "))]
    InvalidAlgebra(Vec<String>),
    #[error(transparent)]
    Leaf(#[from] LieError),
    #[error("metric: {0}")]
    Metric(#[from] GeometryError),
}

/// A nilmanifold `N/Γ` with the invariant foliation tangent to `h` and an invariant metric.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FoliatedNilmanifold {
    name: String,
    algebra: LieAlgebra,
    leaf: LeafSubalgebra,
    metric: Metric,
    param_sample: Rational,
    lower_central_dims: Vec<usize>,
    nilpotency_class: usize,
}

impl FoliatedNilmanifold {
    pub fn new(
        name: &str,
        algebra: LieAlgebra,
        leaf: Subspace<Scalar>,
        gram: Matrix<Scalar>,
        param_sample: Rational,
    ) -> Result<Self, ModelError> {
        let report = algebra.validate();
        if !report.passes() {
            return Err(ModelError::InvalidAlgebra(report.describe(&algebra)));
        }
        let leaf = LeafSubalgebra::new(&algebra, leaf)?;
        if gram.rows() != algebra.dim() || gram.cols() != algebra.dim() {
            return Err(GeometryError::Shape { rows: gram.rows(), cols: gram.cols(), dim: algebra.dim() }.into());
        }
        let metric = Metric::new(gram)?;
        LeafFrame::new(leaf.space(), &metric)?;
        Ok(FoliatedNilmanifold {
            name: name.to_string(),
            algebra,
            leaf,
            metric,
            param_sample,
            lower_central_dims: report.lower_central_dims,
            nilpotency_class: report.nilpotency_class.unwrap_or(0),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn leaf(&self) -> &LeafSubalgebra {
        &self.leaf
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn param_sample(&self) -> &Rational {
        &self.param_sample
    }

    pub fn lattice_mode(&self) -> &'static str {
        LATTICE_MODE
    }

    pub fn lower_central_dims(&self) -> &[usize] {
        &self.lower_central_dims
    }

    pub fn nilpotency_class(&self) -> usize {
        self.nilpotency_class
    }

    pub fn with_param_sample(mut self, sample: Rational) -> Self {
        self.param_sample = sample;
        self
    }

    /// The model with `s = x` substituted everywhere; `None` when `x` is a pole of
    /// some entry or the specialized data fails validation.
    pub fn specialize(&self, x: &Rational) -> Option<FoliatedNilmanifold> {
        let algebra = self.algebra.specialize(x)?;
        let leaf: Vec<Vec<Scalar>> = self
            .leaf
            .space()
            .basis()
            .iter()
            .map(|v| v.iter().map(|c| c.specialize(x)).collect::<Option<Vec<_>>>())
            .collect::<Option<_>>()?;
        let gram = self.metric.gram().try_map(|c| c.specialize(x))?;
        FoliatedNilmanifold::new(&self.name, algebra, Subspace::span(self.dim(), leaf), gram, self.param_sample.clone())
            .ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlbaneseError {
    #[error("form {index} is not closed")]
    NotClosed { index: usize },
    #[error("form {index} has length {got}, expected {dim}")]
    FormLength { index: usize, got: usize, dim: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("word segment {segment}: generator {index} out of range 1..={dim}")]
    WordIndex { segment: usize, index: usize, dim: usize },
    #[error("the chosen forms are linearly dependent, so the Albanese map is not a submersion")]
    NotSubmersive,
    #[error("rational closed forms could not be extended to a lattice basis")]
    Extension,
}

/// ℚ-basis of the closed basic 1-forms with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalBasis {
    pub k: usize,
    /// Coefficient rows, a ℤ-basis of the integral forms in row Hermite normal form.
    pub forms: Vec<Vec<Rational>>,
    /// Dimension over ℚ(s) of the first basic cohomology.
    pub field_dim: usize,
}

pub fn closed_basic_space(fnm: &FoliatedNilmanifold) -> Subspace<Scalar> {
    let h1 = CeComplex::new(fnm.algebra()).basic_h1(fnm.leaf().space());
    Subspace::span(fnm.dim(), h1.basis.iter().map(InvForm::covector_coords).collect())
}

fn integer_rows(rows: Vec<Vec<BigInt>>) -> Vec<Vec<Rational>> {
    rows.into_iter().map(|r| r.into_iter().map(Rational::from_integer).collect()).collect()
}

/// Rational closed basic 1-forms. Degree-one classes have unique invariant
/// representatives, so rationality is a property of the coefficient vector.
pub fn basic_rational_basis(fnm: &FoliatedNilmanifold) -> RationalBasis {
    let space = closed_basic_space(fnm);
    let rational = rational_subspace(&space);
    let forms = integer_rows(saturated_integer_basis(&rational));
    RationalBasis { k: forms.len(), forms, field_dim: space.dim() }
}

pub fn form_of(coeffs: &[Rational]) -> InvForm {
    InvForm::from_covector(&embed_vector(coeffs))
}

/// Row `i` holds the periods of form `i` over the generator loops.
pub fn period_matrix(fnm: &FoliatedNilmanifold, forms: &[Vec<Rational>]) -> Result<Matrix<Rational>, AlbaneseError> {
    let n = fnm.dim();
    let ce = CeComplex::new(fnm.algebra());
    for (index, f) in forms.iter().enumerate() {
        if f.len() != n {
            return Err(AlbaneseError::FormLength { index, got: f.len(), dim: n });
        }
        if !ce.d(&form_of(f)).is_zero() {
            return Err(AlbaneseError::NotClosed { index });
        }
    }
    Ok(Matrix::from_rows(n, forms.to_vec()))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusDescriptor {
    pub rank: usize,
    pub lattice: IntLattice,
}

impl TorusDescriptor {
    pub fn is_point(&self) -> bool {
        self.rank == 0
    }
}

impl fmt::Display for TorusDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rank {
            0 => f.write_str("point"),
            k if self.lattice.is_standard() => write!(f, "T^{k}"),
            k => write!(f, "R^{k}/L"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlbaneseResult {
    pub k: usize,
    pub ambient: usize,
    pub forms: Vec<Vec<Rational>>,
    pub period_matrix: Matrix<Rational>,
    pub lattice: IntLattice,
    pub torus: TorusDescriptor,
}

/// Basic Albanese torus of the canonical rational basis.
pub fn albanese_lattice(fnm: &FoliatedNilmanifold) -> Result<AlbaneseResult, AlbaneseError> {
    albanese_lattice_for(fnm, &basic_rational_basis(fnm).forms)
}

/// Basic Albanese torus for an explicit list of closed rational forms.
pub fn albanese_lattice_for(fnm: &FoliatedNilmanifold, forms: &[Vec<Rational>]) -> Result<AlbaneseResult, AlbaneseError> {
    let n = fnm.dim();
    let k = forms.len();
    let period_matrix = period_matrix(fnm, forms)?;
    let lattice = if k == 0 {
        IntLattice::standard(0)
    } else {
        let columns: Vec<Vec<Rational>> = (0..n).map(|j| period_matrix.column(j)).collect();
        hnf_lattice(k, &columns)?
    };
    let torus = TorusDescriptor { rank: k, lattice: lattice.clone() };
    Ok(AlbaneseResult { k, ambient: n, forms: forms.to_vec(), period_matrix, lattice, torus })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad word {text:?}: {msg}")]
pub struct GroupWordError {
    pub text: String,
    pub msg: String,
}

/// Product `exp(t_1 e_{j_1}) ⋯ exp(t_m e_{j_m})`, read as a path made of
/// left-translated one-parameter arcs.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupWord {
    /// 0-based generator index and time.
    pub segments: Vec<(usize, Rational)>,
}

impl GroupWord {
    /// Parses `"j:t,j:t,..."` with 1-based `j` and rational `t`; blank text is the empty word.
    pub fn parse(text: &str) -> Result<Self, GroupWordError> {
        let err = |msg: String| GroupWordError { text: text.to_string(), msg };
        if text.trim().is_empty() {
            return Ok(GroupWord::default());
        }
        let mut segments = Vec::new();
        for part in text.split(',') {
            let (j, t) = part.split_once(':').ok_or_else(|| err(format!("segment {:?} is not of the form j:t", part.trim())))?;
            let j: usize = j.trim().parse().map_err(|_| err(format!("generator index {:?} is not a positive integer", j.trim())))?;
            if j == 0 {
                return Err(err("generator indices start at 1".into()));
            }
            let t = parse_rational(t.trim()).map_err(|e| err(e.to_string()))?;
            segments.push((j - 1, t));
        }
        Ok(GroupWord { segments })
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord { segments: self.segments.iter().chain(&other.segments).cloned().collect() }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.segments.iter().map(|(j, t)| format!("{}:{}", j + 1, t)).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MapPoint {
    /// `k = 0`: the torus is a point.
    Trivial,
    /// Canonical coordinates modulo the lattice.
    Point(Vec<Rational>),
}

impl fmt::Display for MapPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapPoint::Trivial => f.write_str("trivial Albanese (point torus)"),
            MapPoint::Point(x) => {
                let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

/// Unreduced lift of the map to ℝ^k: the sum of `t · (periods of generator j)`.
pub fn albanese_lift(result: &AlbaneseResult, word: &GroupWord) -> Result<Vec<Rational>, AlbaneseError> {
    let mut acc = vec![Rational::zero(); result.k];
    for (segment, (j, t)) in word.segments.iter().enumerate() {
        if *j >= result.ambient {
            return Err(AlbaneseError::WordIndex { segment, index: j + 1, dim: result.ambient });
        }
        for (a, row) in acc.iter_mut().zip(&result.forms) {
            *a += t * &row[*j];
        }
    }
    Ok(acc)
}

pub fn albanese_map(result: &AlbaneseResult, word: &GroupWord) -> Result<MapPoint, AlbaneseError> {
    let lift = albanese_lift(result, word)?;
    if result.k == 0 {
        return Ok(MapPoint::Trivial);
    }
    Ok(MapPoint::Point(result.lattice.reduce(&lift)))
}

/// Invariant forms have constant coefficients, so the wedge of the forms is
/// non-singular exactly when they are linearly independent.
pub fn submersion_check(forms: &[Vec<Rational>]) -> bool {
    match forms.first() {
        None => true,
        Some(f) => Matrix::from_rows(f.len(), forms.to_vec()).rank() == forms.len(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberReport {
    pub fiber: Subspace<Scalar>,
    pub is_subalgebra: bool,
    pub hull: Subspace<Scalar>,
    /// The foliation restricted to a fiber has dense leaves.
    pub restricted_dense: bool,
}

/// Fibers of the Albanese map: the joint kernel of the forms.
pub fn fiber_report(fnm: &FoliatedNilmanifold, result: &AlbaneseResult) -> Result<FiberReport, AlbaneseError> {
    if !submersion_check(&result.forms) {
        return Err(AlbaneseError::NotSubmersive);
    }
    let n = fnm.dim();
    let fiber = if result.k == 0 {
        Subspace::full(n)
    } else {
        Matrix::from_rows(n, result.forms.iter().map(|f| embed_vector(f)).collect()).kernel()
    };
    // The fiber is rational and bracket-closed and contains h, so the hull taken
    // inside the fiber is the hull taken in the whole algebra.
    let hull = fnm.algebra().rational_hull(fnm.leaf().space());
    let restricted_dense = hull == fiber;
    Ok(FiberReport { is_subalgebra: fnm.algebra().is_subalgebra(&fiber), fiber, hull, restricted_dense })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasicFoliationReport {
    pub hull: Subspace<Scalar>,
    /// Codimension of the basic foliation.
    pub q_b: usize,
    pub dim_h1_fb: usize,
    pub tprank_ok: bool,
}

pub fn basic_foliation_report(fnm: &FoliatedNilmanifold, k: usize) -> BasicFoliationReport {
    let hull = fnm.algebra().rational_hull(fnm.leaf().space());
    let dim_h1_fb = CeComplex::new(fnm.algebra()).basic_h1(&hull).dim;
    BasicFoliationReport { q_b: fnm.dim() - hull.dim(), hull, dim_h1_fb, tprank_ok: dim_h1_fb == k }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassicalAlbanese {
    pub b1: usize,
    /// Integral closed forms; the first `k` rows are the basic ones.
    pub forms: Vec<Vec<Rational>>,
    pub lattice: IntLattice,
    pub torus: TorusDescriptor,
    /// Projection to the first `k` coordinates maps the classical lattice into the basic one.
    pub projection_ok: bool,
}

/// Classical Albanese torus, with forms chosen to extend the rational basic basis.
pub fn classical_albanese(fnm: &FoliatedNilmanifold, basic: &AlbaneseResult) -> Result<ClassicalAlbanese, AlbaneseError> {
    let n = fnm.dim();
    let ce = CeComplex::new(fnm.algebra());
    let b1 = ce.cohomology(1).dim;
    let closed = rational_subspace(&ce.closed(1));
    let integral = integer_rows(saturated_integer_basis(&closed));
    let r = integral.len();
    let mut coords = Vec::with_capacity(basic.k);
    for f in &basic.forms {
        let c = coordinates(&integral, f).ok_or(AlbaneseError::Extension)?;
        if c.iter().any(|x| !x.is_integer()) {
            return Err(AlbaneseError::Extension);
        }
        coords.push(c.iter().map(|x| x.to_integer()).collect::<Vec<BigInt>>());
    }
    let unimodular = complete_to_unimodular(r, &coords).ok_or(AlbaneseError::Extension)?;
    let forms: Vec<Vec<Rational>> = unimodular
        .iter()
        .map(|row| {
            let mut v = vec![Rational::zero(); n];
            for (c, b) in row.iter().zip(&integral) {
                let c = Rational::from_integer(c.clone());
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += &c * bi;
                }
            }
            v
        })
        .collect();
    let classical = albanese_lattice_for(fnm, &forms)?;
    let projection_ok =
        classical.lattice.basis().iter().all(|b| basic.k == 0 || basic.lattice.contains(&b[..basic.k]))
            && forms[..basic.k] == basic.forms[..];
    Ok(ClassicalAlbanese { b1, forms, lattice: classical.lattice, torus: classical.torus, projection_ok })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StratumReport {
    /// Codimension of the foliation.
    pub q: usize,
    pub k: usize,
    pub passes: bool,
    /// `dim hull − dim h`, reported without any asserted bound.
    pub hull_excess: usize,
}

pub fn stratum_codim_check(fnm: &FoliatedNilmanifold, k: usize) -> StratumReport {
    let q = fnm.dim() - fnm.leaf().dim();
    let hull = fnm.algebra().rational_hull(fnm.leaf().space());
    StratumReport { q, k, passes: q >= k, hull_excess: hull.dim() - fnm.leaf().dim() }
}

/// Dimensions that are linear-algebra invariants over ℚ(s), keyed by name. They
/// must agree with the same dimensions at a generic rational value of `s`.
/// Rationality-dependent quantities (`k`, the hull, the fiber) are excluded.
pub fn field_dimensions(fnm: &FoliatedNilmanifold) -> BTreeMap<String, usize> {
    let ce = CeComplex::new(fnm.algebra());
    let h = fnm.leaf().space();
    let mut out = BTreeMap::new();
    for (i, d) in fnm.lower_central_dims().iter().enumerate() {
        out.insert(format!("lower_central.{i}"), *d);
    }
    for (k, b) in ce.betti_numbers().into_iter().enumerate() {
        out.insert(format!("betti.{k}"), b);
    }
    out.insert("leaf".into(), h.dim());
    out.insert("basic_forms.1".into(), ce.basic_forms(h, 1).dim());
    out.insert("basic_h1".into(), ce.basic_h1(h).dim);
    out.insert("closed.1".into(), ce.closed(1).dim());
    out.insert("d1_rank".into(), ce.d_matrix(1).rank());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactalg::rat;
    use crate::liealg::{default_names, unit};

    fn q(a: i64, b: i64) -> Rational {
        rat(a) / rat(b)
    }

    fn units(n: usize, idx: &[usize]) -> Vec<Vec<Rational>> {
        idx.iter().map(|&i| (0..n).map(|j| if j == i { rat(1) } else { rat(0) }).collect()).collect()
    }

    fn torus(n: usize, leaf: Vec<Vec<Scalar>>) -> FoliatedNilmanifold {
        FoliatedNilmanifold::new("torus", LieAlgebra::abelian(n), Subspace::span(n, leaf), Matrix::identity(n), q(17, 12))
            .unwrap()
    }

    #[test]
    fn iwasawa_albanese() {
        let fnm = corpus::get("iwasawa9").unwrap().fnm;
        let basis = basic_rational_basis(&fnm);
        assert_eq!(basis.k, 3);
        assert_eq!(basis.field_dim, 4);
        assert_eq!(basis.forms, units(9, &[0, 3, 4]));
        let result = albanese_lattice(&fnm).unwrap();
        assert!(result.lattice.is_standard());
        assert_eq!(result.torus.to_string(), "T^3");
        assert!(submersion_check(&result.forms));

        let fiber = fiber_report(&fnm, &result).unwrap();
        let expected = Subspace::span(9, [1, 2, 5, 6, 7, 8].iter().map(|&i| unit(9, i)).collect());
        assert_eq!(fiber.fiber, expected);
        assert!(fiber.is_subalgebra && fiber.restricted_dense);

        let bf = basic_foliation_report(&fnm, 3);
        assert_eq!((bf.hull.dim(), bf.q_b, bf.dim_h1_fb, bf.tprank_ok), (6, 3, 3, true));

        let classical = classical_albanese(&fnm, &result).unwrap();
        assert_eq!(classical.b1, 5);
        assert_eq!(classical.torus.to_string(), "T^5");
        assert!(classical.projection_ok);

        let st = stratum_codim_check(&fnm, 3);
        assert_eq!((st.q, st.k, st.passes, st.hull_excess), (6, 3, true, 3));
    }

    #[test]
    fn iwasawa_map() {
        let fnm = corpus::get("iwasawa9").unwrap().fnm;
        let result = albanese_lattice(&fnm).unwrap();
        let at = |w: &str| albanese_map(&result, &GroupWord::parse(w).unwrap()).unwrap();
        assert_eq!(at(""), MapPoint::Point(vec![rat(0); 3]));
        assert_eq!(at("1:1"), MapPoint::Point(vec![rat(0); 3]));
        assert_eq!(at("4:1/2"), MapPoint::Point(vec![rat(0), q(1, 2), rat(0)]));
        assert_eq!(at("4:1/2, 2:7, 5:-1/3").to_string(), "(0, 1/2, 2/3)");
        assert!(matches!(
            albanese_map(&result, &GroupWord::parse("10:1").unwrap()),
            Err(AlbaneseError::WordIndex { index: 10, .. })
        ));
    }

    #[test]
    fn word_syntax() {
        assert!(GroupWord::parse("  ").unwrap().segments.is_empty());
        assert_eq!(GroupWord::parse("4:1/2,1:-3").unwrap().to_string(), "4:1/2,1:-3");
        for bad in ["4", "0:1", "x:1", "1:s", "1:1,"] {
            assert!(GroupWord::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn period_examples() {
        let fnm = corpus::get("iwasawa9").unwrap().fnm;
        let doubled = vec![(0..9).map(|j| if j == 0 { rat(2) } else { rat(0) }).collect::<Vec<_>>()];
        let p = period_matrix(&fnm, &doubled).unwrap();
        assert_eq!(p.row(0)[0], rat(2));
        assert_eq!(period_matrix(&fnm, &units(9, &[5])), Err(AlbaneseError::NotClosed { index: 0 }));
    }

    #[test]
    fn scaled_forms_give_half_lattice() {
        let fnm = torus(2, vec![]);
        let forms = vec![vec![q(1, 2), rat(0)], vec![rat(0), rat(1)]];
        let result = albanese_lattice_for(&fnm, &forms).unwrap();
        assert_eq!(result.lattice.basis(), &[vec![q(1, 2), rat(0)], vec![rat(0), rat(1)]]);
        assert_eq!(result.torus.to_string(), "R^2/L");
        let point = albanese_map(&result, &GroupWord::parse("1:3/2").unwrap()).unwrap();
        assert_eq!(point, MapPoint::Point(vec![q(1, 4), rat(0)]));
    }

    #[test]
    fn trivial_foliation_on_torus() {
        let fnm = torus(3, vec![]);
        let result = albanese_lattice(&fnm).unwrap();
        assert_eq!(result.k, 3);
        assert!(result.lattice.is_standard());
        assert_eq!(fiber_report(&fnm, &result).unwrap().fiber.dim(), 0);
        let bf = basic_foliation_report(&fnm, 3);
        assert_eq!((bf.hull.dim(), bf.dim_h1_fb, bf.tprank_ok), (0, 3, true));
        let st = stratum_codim_check(&fnm, 3);
        assert_eq!((st.q, st.k, st.passes), (3, 3, true));
        let classical = classical_albanese(&fnm, &result).unwrap();
        assert_eq!((classical.b1, classical.torus.to_string(), classical.projection_ok), (3, "T^3".into(), true));
    }

    #[test]
    fn kronecker_is_trivial() {
        let fnm = corpus::get("kronecker").unwrap().fnm;
        let result = albanese_lattice(&fnm).unwrap();
        assert_eq!(result.k, 0);
        assert!(result.torus.is_point());
        assert_eq!(albanese_map(&result, &GroupWord::parse("1:1").unwrap()).unwrap(), MapPoint::Trivial);
        let fiber = fiber_report(&fnm, &result).unwrap();
        assert!(fiber.fiber.is_full() && fiber.restricted_dense);
        let st = stratum_codim_check(&fnm, 0);
        assert_eq!((st.q, st.k, st.passes), (1, 0, true));
        let bf = basic_foliation_report(&fnm, 0);
        assert!(bf.hull.is_full() && bf.tprank_ok);
    }

    #[test]
    fn duplicated_forms_are_not_submersive() {
        let forms = units(9, &[0, 0]);
        assert!(!submersion_check(&forms));
        assert!(submersion_check(&[]));
    }

    #[test]
    fn heisenberg_classical() {
        let heis = LieAlgebra::from_brackets(default_names(3), [(0, 1, unit(3, 2))]).unwrap();
        let fnm = FoliatedNilmanifold::new("heis", heis, Subspace::zero(3), Matrix::identity(3), rat(1)).unwrap();
        let result = albanese_lattice(&fnm).unwrap();
        assert_eq!(result.k, 2);
        assert_eq!(classical_albanese(&fnm, &result).unwrap().b1, 2);
    }

    #[test]
    fn model_rejects_bad_input() {
        let sl2 = LieAlgebra::from_brackets(
            default_names(3),
            [(0, 1, vec![Scalar::from(0), Scalar::from(2), Scalar::from(0)]),
             (0, 2, vec![Scalar::from(0), Scalar::from(0), Scalar::from(-2)]),
             (1, 2, unit(3, 0))],
        )
        .unwrap();
        let err = FoliatedNilmanifold::new("sl2", sl2, Subspace::zero(3), Matrix::identity(3), rat(1)).unwrap_err();
        assert!(err.to_string().contains("not nilpotent"), "{err}");
        let heis = LieAlgebra::from_brackets(default_names(3), [(0, 1, unit(3, 2))]).unwrap();
        let plane = Subspace::span(3, vec![unit(3, 0), unit(3, 1)]);
        assert!(matches!(
            FoliatedNilmanifold::new("h", heis, plane, Matrix::identity(3), rat(1)),
            Err(ModelError::Leaf(LieError::NotSubalgebra { .. }))
        ));
    }
}
