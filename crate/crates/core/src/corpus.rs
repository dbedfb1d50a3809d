//! Built-in examples, stored as input documents and parsed on demand.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::albanese::FoliatedNilmanifold;
use crate::document::InputDocument;

const FILES: &[(&str, &str)] = &[
    ("heis3_badfol", include_str!("../corpus/heis3_badfol.json")),
    ("iwasawa9", include_str!("../corpus/iwasawa9.json")),
    ("kronecker", include_str!("../corpus/kronecker.json")),
    ("torus2", include_str!("../corpus/torus2.json")),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown example {name:?}; available: {}", list().join(", "))]
pub struct UnknownExample {
    pub name: String,
}

#[derive(Clone, Debug)]
pub struct NamedExample {
    pub name: &'static str,
    pub source: &'static str,
    pub document: InputDocument,
    pub fnm: FoliatedNilmanifold,
    /// Report paths and the values they must take.
    pub expected: BTreeMap<&'static str, &'static str>,
}

pub fn list() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).collect()
}

pub fn source(name: &str) -> Result<&'static str, UnknownExample> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).ok_or_else(|| UnknownExample { name: name.to_string() })
}

pub fn get(name: &str) -> Result<NamedExample, UnknownExample> {
    let (name, source) =
        FILES.iter().find(|(n, _)| *n == name).copied().ok_or_else(|| UnknownExample { name: name.to_string() })?;
    let document = InputDocument::parse(source, name).expect("built-in example parses");
    let fnm = document.build().expect("built-in example validates");
    Ok(NamedExample { name, source, document, fnm, expected: expected(name).into_iter().collect() })
}

fn expected(name: &str) -> Vec<(&'static str, &'static str)> {
    match name {
        "iwasawa9" => vec![
            // brackets land in the centre span{e6..e9}
            ("validation.lower_central_dims[1]", "4"),
            ("validation.nilpotency_class", "2"),
            ("foliation.is_ideal", "true"),
            // e^1, e^4, e^5 and the three s-twisted forms
            ("cohomology.basic_forms_1", "6"),
            // e^2 + s e^3 together with e^1, e^4, e^5
            ("cohomology.basic_h1", "4"),
            ("cohomology.b1", "5"),
            ("albanese.k", "3"),
            ("albanese.forms[0]", "e1"),
            ("albanese.forms[1]", "e4"),
            ("albanese.forms[2]", "e5"),
            ("albanese.torus", "T^3"),
            ("albanese.submersion", "true"),
            ("albanese.fiber_dim", "6"),
            ("albanese.restricted_dense", "true"),
            ("albanese.dim_h1_fb", "3"),
            ("albanese.tprank_ok", "true"),
            ("albanese.stratum.q", "6"),
            ("albanese.stratum.passes", "true"),
            ("albanese.classical.b1", "5"),
            ("albanese.classical.projection_ok", "true"),
            ("geometry.kappa_zero", "true"),
            ("geometry.bundle_like", "true"),
            ("geometry.taut", "true"),
            ("geometry.coclosed[0].coclosed", "true"),
            ("geometry.coclosed[1].coclosed", "true"),
            ("geometry.coclosed[2].coclosed", "true"),
            ("foliation.hull_dim", "6"),
        ],
        "kronecker" => vec![
            ("foliation.dense_leaves", "true"),
            ("foliation.hull_dim", "2"),
            ("cohomology.basic_h1", "1"),
            ("albanese.k", "0"),
            ("albanese.status", "trivial"),
            ("albanese.torus", "point"),
            ("albanese.fiber_dim", "2"),
            ("albanese.restricted_dense", "true"),
            ("albanese.tprank_ok", "true"),
            ("albanese.stratum.q", "1"),
            ("albanese.stratum.passes", "true"),
            ("geometry.kappa_zero", "true"),
            ("geometry.bundle_like", "true"),
        ],
        "heis3_badfol" => vec![
            ("validation.nilpotency_class", "2"),
            ("foliation.is_ideal", "false"),
            ("geometry.bundle_like", "false"),
            ("geometry.bundle_like_witness.value", "-1"),
            ("geometry.bundle_like_witness.x", "e1-e3"),
            ("geometry.bundle_like_witness.y", "e2"),
            // 2 g(∇_v v, e2) = -2 g([v, e2], v) = -2, and |v|^2 = 2
            ("geometry.kappa", "-1/2*e2"),
            ("geometry.kappa_basic", "true"),
            ("geometry.taut", "false"),
            ("cohomology.b1", "2"),
        ],
        "torus2" => vec![
            ("albanese.k", "2"),
            ("albanese.torus", "T^2"),
            ("albanese.fiber_dim", "0"),
            ("albanese.classical.b1", "2"),
            ("albanese.tprank_ok", "true"),
            ("geometry.kappa_zero", "true"),
        ],
        _ => vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_loads() {
        for name in list() {
            let ex = get(name).unwrap();
            assert_eq!(ex.fnm.name(), name);
            assert!(!ex.expected.is_empty());
        }
        assert!(get("nope").unwrap_err().to_string().contains("iwasawa9"));
    }

    #[test]
    fn iwasawa_shape() {
        let ex = get("iwasawa9").unwrap();
        assert_eq!(ex.fnm.dim(), 9);
        assert_eq!(ex.fnm.leaf().dim(), 3);
        assert!(ex.fnm.leaf().is_ideal());
    }
}
