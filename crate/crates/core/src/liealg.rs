//! Finite-dimensional Lie algebras over ℚ(s) given by structure constants.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::{axpy, embed, q_decompose, Rational, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("structure table has wrong shape for dimension {dim}")]
    Shape { dim: usize },
    #[error("basis has {names} names but dimension is {dim}")]
    Names { names: usize, dim: usize },
    #[error("bracket index ({i}, {j}) out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },
    #[error("leaf space is not closed under the bracket: [{x}, {y}] leaves it")]
    NotSubalgebra { x: String, y: String },
    #[error("leaf space has ambient dimension {got}, algebra has dimension {dim}")]
    LeafDimension { got: usize, dim: usize },
}

/// A Lie algebra on the basis `e_1..e_n`; `table[i][j]` holds the coordinates of `[e_i, e_j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    names: Vec<String>,
    table: Vec<Vec<Vec<Scalar>>>,
}

/// One failed structural check of a [`LieAlgebra`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    NotNilpotent { stable_dim: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Dimensions of the lower central series terms.
    pub lower_central_dims: Vec<usize>,
    pub nilpotency_class: Option<usize>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, alg: &LieAlgebra) -> Vec<String> {
        self.violations.iter().map(|v| v.describe(alg)).collect()
    }
}

impl Violation {
    pub fn describe(&self, alg: &LieAlgebra) -> String {
        let n = |i: &usize| alg.names[*i].as_str();
        match self {
            Violation::Antisymmetry { i, j } if i == j => format!("antisymmetry fails: [{}, {}] != 0", n(i), n(i)),
            Violation::Antisymmetry { i, j } => {
                format!("antisymmetry fails: [{}, {}] != -[{}, {}]", n(i), n(j), n(j), n(i))
            }
            Violation::Jacobi { i, j, k } => format!("Jacobi identity fails on ({}, {}, {})", n(i), n(j), n(k)),
            Violation::NotNilpotent { stable_dim } => {
                format!("not nilpotent: lower central series stabilizes at dimension {stable_dim}")
            }
        }
    }
}

impl LieAlgebra {
    pub fn new(names: Vec<String>, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self, LieError> {
        let dim = names.len();
        let ok = table.len() == dim && table.iter().all(|r| r.len() == dim && r.iter().all(|v| v.len() == dim));
        if !ok {
            return Err(LieError::Shape { dim });
        }
        Ok(LieAlgebra { names, table })
    }

    /// Builds the table from `(i, j, [e_i, e_j])` entries (0-based). Pairs given only
    /// in one order are completed antisymmetrically; pairs given in both orders are
    /// kept as written so that [`LieAlgebra::validate`] can flag inconsistencies.
    pub fn from_brackets(
        names: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vec<Scalar>)>,
    ) -> Result<Self, LieError> {
        let dim = names.len();
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        let mut given = vec![vec![false; dim]; dim];
        for (i, j, v) in brackets {
            if i >= dim || j >= dim {
                return Err(LieError::IndexOutOfRange { i, j, dim });
            }
            if v.len() != dim {
                return Err(LieError::Shape { dim });
            }
            if !given[j][i] && i != j {
                table[j][i] = v.iter().map(|x| -x).collect();
            }
            table[i][j] = v;
            given[i][j] = true;
        }
        Ok(LieAlgebra { names, table })
    }

    pub fn abelian(dim: usize) -> Self {
        let names = default_names(dim);
        LieAlgebra::from_brackets(names, []).expect("empty bracket list")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        unit(self.dim(), i)
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.table[i][j]);
            }
        }
        out
    }

    /// Span of all brackets `[a, b]` with `a ∈ A`, `b ∈ B`.
    pub fn bracket_span(&self, a: &Subspace<Scalar>, b: &Subspace<Scalar>) -> Subspace<Scalar> {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vs.push(self.bracket(x, y));
            }
        }
        Subspace::span(self.dim(), vs)
    }

    pub fn lower_central_series(&self) -> Vec<Subspace<Scalar>> {
        let full = Subspace::full(self.dim());
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_zero() {
                return series;
            }
            let next = self.bracket_span(&full, last);
            if next.dim() == last.dim() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut violations = Vec::new();
        'anti: for i in 0..n {
            for j in i..n {
                let sum: Vec<Scalar> = self.table[i][j].iter().zip(&self.table[j][i]).map(|(a, b)| a + b).collect();
                if sum.iter().any(|x| !x.is_zero()) {
                    violations.push(Violation::Antisymmetry { i, j });
                    break 'anti;
                }
            }
        }
        'jac: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&self.bracket(&y, &z), &x);
                    let c = self.bracket(&self.bracket(&z, &x), &y);
                    if a.iter().zip(&b).zip(&c).any(|((p, q), r)| !(&(p + q) + r).is_zero()) {
                        violations.push(Violation::Jacobi { i, j, k });
                        break 'jac;
                    }
                }
            }
        }
        let series = self.lower_central_series();
        let lower_central_dims: Vec<usize> = series.iter().map(Subspace::dim).collect();
        let last = *lower_central_dims.last().expect("nonempty");
        let nilpotency_class = if last == 0 {
            Some(series.len() - 1)
        } else {
            violations.push(Violation::NotNilpotent { stable_dim: last });
            None
        };
        ValidationReport { violations, lower_central_dims, nilpotency_class }
    }

    pub fn is_subalgebra(&self, h: &Subspace<Scalar>) -> bool {
        self.subalgebra_defect(h).is_none()
    }

    pub fn is_ideal(&self, h: &Subspace<Scalar>) -> bool {
        let full = Subspace::full(self.dim());
        full.basis().iter().all(|x| h.basis().iter().all(|y| h.contains(&self.bracket(x, y))))
    }

    /// First basis pair whose bracket leaves `h`.
    pub fn subalgebra_defect(&self, h: &Subspace<Scalar>) -> Option<(usize, usize)> {
        let b = h.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !h.contains(&self.bracket(&b[i], &b[j])) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Smallest subalgebra containing `h`.
    pub fn subalgebra_closure(&self, h: &Subspace<Scalar>) -> Subspace<Scalar> {
        let mut cur = h.clone();
        loop {
            let next = cur.sum(&self.bracket_span(&cur, &cur)).expect("same ambient");
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    /// Smallest bracket-closed subspace defined over ℚ that contains `h`.
    ///
    /// Alternates rational decomposition and bracket closure; every pass either
    /// grows the dimension or reaches the fixed point, so at most `n` passes run.
    pub fn rational_hull(&self, h: &Subspace<Scalar>) -> Subspace<Scalar> {
        let mut cur = h.clone();
        loop {
            let decomposed = embed(&q_decompose(self.dim(), cur.basis()));
            let closed = self.subalgebra_closure(&decomposed);
            if closed == cur {
                return cur;
            }
            cur = closed;
        }
    }

    /// Substitutes `s = x` in every structure constant.
    pub fn specialize(&self, x: &Rational) -> Option<LieAlgebra> {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|c| c.specialize(x)).collect::<Option<Vec<_>>>()).collect())
            .collect::<Option<Vec<Vec<_>>>>()?;
        Some(LieAlgebra { names: self.names.clone(), table })
    }

    /// Central extension `g ⊕ ℝz` with `[x, y]' = [x, y] + ω(x, y) z`. The result
    /// is a Lie algebra iff the 2-form `ω` (given by `ω(e_i, e_j)` for `i < j`) is closed.
    pub fn central_extension(&self, omega: impl Fn(usize, usize) -> Scalar, name: &str) -> LieAlgebra {
        let n = self.dim();
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = self.table[i][j].clone();
                v.push(omega(i, j));
                if v.iter().any(|c| !c.is_zero()) {
                    brackets.push((i, j, v));
                }
            }
        }
        LieAlgebra::from_brackets(names, brackets).expect("indices in range")
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        write!(f, "{}-dimensional algebra", n)?;
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.table[i][j];
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                write!(f, "; [{}, {}] = {}", self.names[i], self.names[j], render_vector(v, &self.names))?;
            }
        }
        Ok(())
    }
}

/// The leaf directions of an invariant foliation: a subalgebra of the parent algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeafSubalgebra {
    space: Subspace<Scalar>,
    is_ideal: bool,
}

impl LeafSubalgebra {
    pub fn new(alg: &LieAlgebra, space: Subspace<Scalar>) -> Result<Self, LieError> {
        if space.ambient_dim() != alg.dim() {
            return Err(LieError::LeafDimension { got: space.ambient_dim(), dim: alg.dim() });
        }
        if let Some((i, j)) = alg.subalgebra_defect(&space) {
            let names = alg.names();
            return Err(LieError::NotSubalgebra {
                x: render_vector(&space.basis()[i], names),
                y: render_vector(&space.basis()[j], names),
            });
        }
        let is_ideal = alg.is_ideal(&space);
        Ok(LeafSubalgebra { space, is_ideal })
    }

    pub fn space(&self) -> &Subspace<Scalar> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_ideal(&self) -> bool {
        self.is_ideal
    }
}

pub fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|j| if i == j { Scalar::from(1) } else { Scalar::zero() }).collect()
}

fn wrap_coeff(t: String) -> String {
    if t.contains(['+', '-']) {
        format!("({t})")
    } else {
        t
    }
}

/// Renders a coordinate vector as a combination of labelled basis elements, e.g. `-s*e2+e3`.
pub fn render_vector(v: &[Scalar], names: &[String]) -> String {
    render_terms(v.iter().zip(names).map(|(c, n)| (c, n.as_str())))
}

pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (&'a Scalar, &'a str)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let negated = -c;
        let (neg, mag) = if c.to_string().starts_with('-') && !negated.to_string().contains(['+', '-']) {
            (true, negated)
        } else {
            (false, c.clone())
        };
        let body = if label.is_empty() {
            wrap_coeff(mag.to_string())
        } else if mag == Scalar::from(1) {
            label.to_string()
        } else {
            format!("{}*{label}", wrap_coeff(mag.to_string()))
        };
        let term = if neg { format!("-{body}") } else { body };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Matrix};

    fn sv(items: &[&str]) -> Vec<Scalar> {
        items.iter().map(|t| t.parse().unwrap()).collect()
    }

    pub(crate) fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets(default_names(3), [(0, 1, unit(3, 2))]).unwrap()
    }

    fn sl2() -> LieAlgebra {
        LieAlgebra::from_brackets(
            default_names(3),
            [(0, 1, sv(&["0", "2", "0"])), (0, 2, sv(&["0", "0", "-2"])), (1, 2, sv(&["1", "0", "0"]))],
        )
        .unwrap()
    }

    fn ad(alg: &LieAlgebra, x: &[Scalar]) -> Matrix<Scalar> {
        let n = alg.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| alg.bracket(x, &unit(n, j))).collect();
        Matrix::from_fn(n, n, |i, j| cols[j][i].clone())
    }

    #[test]
    fn validation_examples() {
        let ab = LieAlgebra::abelian(4).validate();
        assert!(ab.passes());
        assert_eq!(ab.nilpotency_class, Some(1));

        let h = heisenberg().validate();
        assert!(h.passes());
        assert_eq!(h.nilpotency_class, Some(2));
        assert_eq!(h.lower_central_dims, vec![3, 1, 0]);

        let s = sl2().validate();
        assert!(!s.passes());
        assert_eq!(s.violations, vec![Violation::NotNilpotent { stable_dim: 3 }]);
    }

    #[test]
    fn jacobi_via_adjoint_oracle() {
        // ad([x, y]) = ad(x) ad(y) - ad(y) ad(x) is equivalent to Jacobi
        for alg in [heisenberg(), sl2()] {
            for i in 0..3 {
                for j in 0..3 {
                    let (x, y) = (unit(3, i), unit(3, j));
                    let lhs = ad(&alg, &alg.bracket(&x, &y));
                    let (ax, ay) = (ad(&alg, &x), ad(&alg, &y));
                    let comm = Matrix::from_fn(3, 3, |a, b| ax.mul(&ay).get(a, b) - ay.mul(&ax).get(a, b));
                    assert_eq!(lhs, comm);
                }
            }
        }
    }

    #[test]
    fn broken_jacobi_is_named() {
        // [e1,e2]=e3, [e1,e3]=e1: the Jacobi sum on (e1,e2,e3) is -e3
        let alg = LieAlgebra::from_brackets(default_names(3), [(0, 1, unit(3, 2)), (0, 2, unit(3, 0))]).unwrap();
        let r = alg.validate();
        assert!(r.violations.contains(&Violation::Jacobi { i: 0, j: 1, k: 2 }));
        assert_eq!(r.describe(&alg)[0], "Jacobi identity fails on (e1, e2, e3)");
    }

    #[test]
    fn inconsistent_antisymmetry() {
        let alg = LieAlgebra::from_brackets(default_names(3), [(0, 1, unit(3, 2)), (1, 0, unit(3, 2))]).unwrap();
        assert_eq!(alg.validate().violations[0], Violation::Antisymmetry { i: 0, j: 1 });
        assert!(matches!(
            LieAlgebra::from_brackets(default_names(2), [(0, 2, unit(2, 0))]),
            Err(LieError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn bracket_basics() {
        let h = heisenberg();
        let x = sv(&["1", "s", "2"]);
        assert!(h.bracket(&x, &x).iter().all(Zero::is_zero));
        assert_eq!(h.bracket(&unit(3, 1), &unit(3, 0)), sv(&["0", "0", "-1"]));
    }

    #[test]
    fn subalgebra_and_ideal() {
        let h = heisenberg();
        let zero = Subspace::zero(3);
        assert!(h.is_subalgebra(&zero) && h.is_ideal(&zero));
        let line = Subspace::span(3, vec![unit(3, 0)]);
        assert!(h.is_subalgebra(&line));
        assert!(!h.is_ideal(&line));
        let plane = Subspace::span(3, vec![unit(3, 0), unit(3, 1)]);
        assert!(!h.is_subalgebra(&plane));
        assert!(matches!(LeafSubalgebra::new(&h, plane), Err(LieError::NotSubalgebra { .. })));
    }

    #[test]
    fn lower_central_series_heisenberg() {
        let lcs = heisenberg().lower_central_series();
        assert_eq!(lcs.len(), 3);
        assert_eq!(lcs[1], Subspace::span(3, vec![unit(3, 2)]));
        assert!(lcs[2].is_zero());
        assert_eq!(LieAlgebra::abelian(2).lower_central_series().len(), 2);
    }

    #[test]
    fn kronecker_hull_is_everything() {
        let ab = LieAlgebra::abelian(2);
        let h = Subspace::span(2, vec![sv(&["1", "s"])]);
        assert_eq!(ab.rational_hull(&h), Subspace::full(2));
        let r = Subspace::span(2, vec![sv(&["1", "3"])]);
        assert_eq!(ab.rational_hull(&r), r);
    }

    #[test]
    fn hull_needs_closure_after_decomposition() {
        // Heisenberg: span{e1 + s e2} decomposes to span{e1, e2}, whose closure adds e3
        let h = heisenberg();
        let leaf = Subspace::span(3, vec![sv(&["1", "s", "0"])]);
        assert_eq!(h.rational_hull(&leaf), Subspace::full(3));
    }

    #[test]
    fn specialization_and_extension() {
        let ab = LieAlgebra::abelian(2);
        let heis = ab.central_extension(|i, j| if (i, j) == (0, 1) { Scalar::from(1) } else { Scalar::zero() }, "e3");
        assert_eq!(heis, heisenberg());
        let tw = LieAlgebra::from_brackets(default_names(3), [(0, 1, sv(&["0", "0", "1/(s-2)"]))]).unwrap();
        assert!(tw.specialize(&rat(2)).is_none());
        assert_eq!(tw.specialize(&rat(3)).unwrap(), heisenberg());
    }

    #[test]
    fn render() {
        assert_eq!(render_vector(&sv(&["0", "-s", "1"]), &default_names(3)), "-s*e2+e3");
        assert_eq!(render_vector(&sv(&["s+1", "0", "-1/2"]), &default_names(3)), "(s+1)*e1-1/2*e3");
        assert_eq!(render_vector(&sv(&["0", "0", "0"]), &default_names(3)), "0");
        assert_eq!(heisenberg().to_string(), "3-dimensional algebra; [e1, e2] = e3");
    }
}
