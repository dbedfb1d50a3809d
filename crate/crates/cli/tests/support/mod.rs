//! Random inputs shared by the integration suites.
#![allow(dead_code)]

use nilalb_core::exactalg::{Matrix, Rational, Scalar, Subspace};
use nilalb_core::invforms::{CeComplex, InvForm};
use nilalb_core::liealg::LieAlgebra;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const CASES: u32 = 200;

/// Runner with a fixed ChaCha seed so every run sees the same cases.
pub fn runner(tag: u8) -> TestRunner {
    let mut seed = [7u8; 32];
    seed[0] = tag;
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &seed))
}

pub fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| q(a, b))
}

/// `(a + b s + c s^2) / (s + d)` or a polynomial; denominators never vanish identically.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational(), -2i64..=2, prop::option::of(-3i64..=3)).prop_map(|(a, b, c, den)| {
        let s = Scalar::s();
        let num = &(&Scalar::from_rational(a) + &(&Scalar::from_rational(b) * &s)) + &(&Scalar::from(c) * &(&s * &s));
        match den {
            Some(d) => &num / &(&s + &Scalar::from(d)),
            None => num,
        }
    })
}

pub fn sparse_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![2 => Just(Scalar::from(0)), 3 => scalar()]
}

pub fn vector(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(sparse_scalar(), n)
}

/// Recipe for a nilpotent algebra: an abelian start and central extensions by
/// combinations of closed 2-forms with the given coefficients.
#[derive(Clone, Debug)]
pub struct AlgebraRecipe {
    pub base: usize,
    pub extensions: Vec<Vec<(i64, i64)>>,
}

pub fn recipe() -> impl Strategy<Value = AlgebraRecipe> {
    (2usize..=3, prop::collection::vec(prop::collection::vec((-2i64..=2, -1i64..=1), 12), 1..=3))
        .prop_map(|(base, extensions)| AlgebraRecipe { base, extensions })
}

/// Iterated central extension; each 2-form is closed by construction, so the
/// result is a nilpotent Lie algebra whenever the construction is correct.
pub fn build_algebra(r: &AlgebraRecipe) -> LieAlgebra {
    let mut alg = LieAlgebra::abelian(r.base);
    for (step, coeffs) in r.extensions.iter().enumerate() {
        let n = alg.dim();
        let closed = CeComplex::new(&alg).closed(2);
        let mut omega = InvForm::zero(n, 2);
        for (z, (a, b)) in closed.basis().iter().zip(coeffs) {
            let c = &Scalar::from(*a) + &(&Scalar::from(*b) * &Scalar::s());
            omega = omega.add(&InvForm::from_coords(n, 2, z).scale(&c));
        }
        alg = alg.central_extension(|i, j| omega.coeff(&[i, j]), &format!("z{}", step + 1));
    }
    alg
}

pub fn algebra() -> impl Strategy<Value = LieAlgebra> {
    recipe().prop_map(|r| build_algebra(&r))
}

/// A random algebra with a random subalgebra (closure of a few random vectors).
pub fn algebra_with_subalgebra() -> impl Strategy<Value = (LieAlgebra, Subspace<Scalar>, Vec<Scalar>)> {
    algebra().prop_flat_map(|alg| {
        let n = alg.dim();
        (Just(alg), prop::collection::vec(vector(n), 0..=2), vector(n)).prop_map(|(alg, vs, extra)| {
            let h = alg.subalgebra_closure(&Subspace::span(alg.dim(), vs));
            (alg, h, extra)
        })
    })
}

pub fn random_form(n: usize, k: usize) -> impl Strategy<Value = InvForm> {
    let len = nilalb_core::invforms::multi_indices(n, k).len();
    prop::collection::vec(sparse_scalar(), len).prop_map(move |c| InvForm::from_coords(n, k, &c))
}

/// Diagonal metric with entries `a + b s^2`, `a > 0`, `b ≥ 0`.
pub fn diagonal_gram(n: usize) -> impl Strategy<Value = Matrix<Scalar>> {
    prop::collection::vec((1i64..=5, 0i64..=2), n).prop_map(move |d| {
        let s2 = &Scalar::s() * &Scalar::s();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                &Scalar::from(d[i].0) + &(&Scalar::from(d[i].1) * &s2)
            } else {
                Scalar::from(0)
            }
        })
    })
}
