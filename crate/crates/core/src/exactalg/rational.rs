//! Passing between ℚ(s)-subspaces and their rational structure.
//!
//! Because `s` is transcendental, a polynomial identity `Σ s^d w_d = 0` with
//! rational `w_d` holds iff every `w_d` vanishes. Both operations below reduce
//! to that fact after clearing denominators.

use num_traits::Zero;

use super::poly::Poly;
use super::subspace::Subspace;
use super::{Rational, Scalar};

/// Multiplies a vector by the lcm of its entries' denominators, leaving polynomials.
pub fn clear_denominators(v: &[Scalar]) -> Vec<Poly> {
    let l = v.iter().fold(Poly::one(), |acc, x| Poly::lcm(&acc, x.denom()));
    v.iter().map(|x| (x.numer() * &l).div_rem(x.denom()).0).collect()
}

/// Splits a cleared vector as `Σ_d s^d · w_d`, returning the nonzero `w_d`.
pub fn monomial_components(v: &[Scalar]) -> Vec<Vec<Rational>> {
    let polys = clear_denominators(v);
    let top = polys.iter().filter_map(Poly::degree).max();
    let Some(top) = top else {
        return Vec::new();
    };
    (0..=top)
        .map(|d| polys.iter().map(|p| p.coeff(d)).collect::<Vec<_>>())
        .filter(|w| w.iter().any(|c| !c.is_zero()))
        .collect()
}

/// ℚ-span of every monomial coefficient vector of the given ℚ(s)-vectors.
///
/// Its ℚ(s)-extension is the smallest subspace defined over ℚ containing them.
pub fn q_decompose(ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace<Rational> {
    let parts = vectors.iter().flat_map(|v| monomial_components(v)).collect();
    Subspace::span(ambient, parts)
}

/// Rational points `ℚ^n ∩ V` of a ℚ(s)-subspace, as a ℚ-subspace.
pub fn rational_subspace(v: &Subspace<Scalar>) -> Subspace<Rational> {
    let n = v.ambient_dim();
    let equations = v.annihilator();
    let rows: Vec<Vec<Rational>> = equations.basis().iter().flat_map(|r| monomial_components(r)).collect();
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Subspace::span(n, rows).annihilator()
}

pub fn embed_vector(v: &[Rational]) -> Vec<Scalar> {
    v.iter().cloned().map(Scalar::from_rational).collect()
}

/// The ℚ(s)-span of a ℚ-subspace.
pub fn embed(v: &Subspace<Rational>) -> Subspace<Scalar> {
    Subspace::span(v.ambient_dim(), v.basis().iter().map(|b| embed_vector(b)).collect())
}

/// True when `v` has a basis of rational vectors.
pub fn is_defined_over_q(v: &Subspace<Scalar>) -> bool {
    rational_subspace(v).dim() == v.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use num_traits::One;
    use proptest::prelude::*;

    fn sv(items: &[&str]) -> Vec<Scalar> {
        items.iter().map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(q_decompose(2, &[sv(&["-s", "1"])]), Subspace::full(2));
        let line = q_decompose(2, &[sv(&["1", "2"])]);
        assert_eq!(line, Subspace::span(2, vec![vec![rat(1), rat(2)]]));
        assert_eq!(q_decompose(2, &[sv(&["s^2", "0"])]), Subspace::span(2, vec![vec![rat(1), rat(0)]]));
        // denominators are cleared per vector before splitting
        assert_eq!(q_decompose(2, &[sv(&["1/(s+1)", "s/(s+1)"])]), Subspace::full(2));
        assert_eq!(q_decompose(2, &[sv(&["1/s", "2/s"])]), line);
    }

    #[test]
    fn rational_points_examples() {
        let v = Subspace::span(3, vec![sv(&["1", "0", "0"]), sv(&["0", "1", "s"])]);
        assert_eq!(rational_subspace(&v), Subspace::span(3, vec![vec![rat(1), rat(0), rat(0)]]));
        let r = Subspace::span(3, vec![sv(&["1", "2", "0"]), sv(&["0", "1", "3"])]);
        assert_eq!(rational_subspace(&r).dim(), 2);
        assert!(is_defined_over_q(&r));
        assert_eq!(rational_subspace(&Subspace::span(2, vec![sv(&["1", "s"])])).dim(), 0);
        assert_eq!(rational_subspace(&Subspace::<Scalar>::full(4)).dim(), 4);
        assert_eq!(rational_subspace(&Subspace::<Scalar>::zero(4)).dim(), 0);
    }

    #[test]
    fn rational_points_with_s_in_equations() {
        // every reported rational point must be a genuine member
        let v = Subspace::span(3, vec![sv(&["s", "1", "0"]), sv(&["1", "0", "s"])]);
        let q = rational_subspace(&v);
        for b in q.basis() {
            assert!(v.contains(&embed_vector(b)));
        }
    }

    fn arb_entry() -> impl Strategy<Value = Scalar> {
        (-2i64..=2, -2i64..=2, 0usize..3).prop_map(|(a, b, kind)| match kind {
            0 => Scalar::from(a),
            1 => Scalar::from(a) + Scalar::from(b) * Scalar::s(),
            _ => Scalar::from(a) / (Scalar::s() + Scalar::one()),
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rational_points_lie_in_decomposition(vs in prop::collection::vec(prop::collection::vec(arb_entry(), 3), 0..3)) {
            let v = Subspace::span(3, vs.clone());
            let rat_pts = rational_subspace(&v);
            let dec = q_decompose(3, v.basis());
            prop_assert!(dec.contains_subspace(&rat_pts));
            for b in rat_pts.basis() {
                prop_assert!(v.contains(&embed_vector(b)));
            }
            prop_assert!(embed(&dec).contains_subspace(&v));
        }
    }
}
