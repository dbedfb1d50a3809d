//! The full analysis report. The text rendering is generated from the JSON
//! value, so both formats always carry the same values.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::albanese::{
    albanese_lattice, basic_foliation_report, classical_albanese, fiber_report, form_of, stratum_codim_check,
    submersion_check, AlbaneseError, AlbaneseResult, FoliatedNilmanifold,
};
use crate::exactalg::{Rational, Scalar};
use crate::geometry::{bundle_like_check, coclosed_check, levi_civita, mean_curvature, GeometryError};
use crate::invforms::CeComplex;
use crate::liealg::render_vector;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Albanese(#[from] AlbaneseError),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format_version: u32,
    pub name: String,
    pub lattice_mode: String,
    pub validation: ValidationSection,
    pub foliation: FoliationSection,
    pub cohomology: CohomologySection,
    pub geometry: GeometrySection,
    pub albanese: AlbaneseSection,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidationSection {
    pub passes: bool,
    pub dim: usize,
    pub lower_central_dims: Vec<usize>,
    pub nilpotency_class: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FoliationSection {
    pub leaf_dim: usize,
    pub codim: usize,
    pub leaf_basis: Vec<String>,
    pub is_ideal: bool,
    pub hull: Vec<String>,
    pub hull_dim: usize,
    pub dense_leaves: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CohomologySection {
    pub betti: Vec<usize>,
    pub b1: usize,
    pub h1_basis: Vec<String>,
    pub basic_forms_1: usize,
    pub basic_h1: usize,
    pub basic_h1_basis: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub v: String,
    pub x: String,
    pub y: String,
    pub value: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoclosedEntry {
    pub form: String,
    pub coclosed: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GeometrySection {
    pub param_sample: String,
    pub leading_minors: Vec<String>,
    /// Minor values at the sample; `"pole"` where undefined.
    pub minors_at_sample: Vec<String>,
    pub positive_definite_at_sample: bool,
    pub levi_civita_checks: bool,
    pub kappa: String,
    pub kappa_zero: bool,
    pub kappa_vanishes_on_leaf: bool,
    pub kappa_basic: bool,
    pub bundle_like: bool,
    pub bundle_like_witness: Option<WitnessEntry>,
    /// Bundle-like with minimal leaves.
    pub taut: bool,
    pub coclosed: Vec<CoclosedEntry>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StratumEntry {
    pub q: usize,
    pub k: usize,
    pub passes: bool,
    pub hull_excess: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassicalEntry {
    pub b1: usize,
    pub rank: usize,
    pub torus: String,
    pub forms: Vec<String>,
    pub projection_ok: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AlbaneseSection {
    /// `"ok"`, or `"trivial"` when the torus is a point.
    pub status: String,
    pub k: usize,
    pub forms: Vec<String>,
    pub period_matrix: Vec<Vec<String>>,
    pub lattice_basis: Vec<Vec<String>>,
    pub torus: String,
    pub submersion: bool,
    pub fiber: Vec<String>,
    pub fiber_dim: usize,
    pub fiber_is_subalgebra: bool,
    pub restricted_dense: bool,
    pub basic_foliation_codim: usize,
    pub dim_h1_fb: usize,
    pub tprank_ok: bool,
    pub stratum: StratumEntry,
    pub classical: ClassicalEntry,
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn vectors(basis: &[Vec<Scalar>], names: &[String]) -> Vec<String> {
    basis.iter().map(|v| render_vector(v, names)).collect()
}

fn covectors(forms: &[Vec<Rational>], names: &[String]) -> Vec<String> {
    forms.iter().map(|f| form_of(f).render(names)).collect()
}

fn geometry_section(fnm: &FoliatedNilmanifold, forms: &[Vec<Rational>]) -> Result<GeometrySection, ReportError> {
    let (alg, leaf, metric) = (fnm.algebra(), fnm.leaf(), fnm.metric());
    let names = alg.names();
    let definiteness = metric.definiteness_at(fnm.param_sample());
    let conn = levi_civita(alg, metric);
    let kappa = mean_curvature(alg, leaf, metric)?;
    let bl = bundle_like_check(alg, leaf, metric)?;
    let mut coclosed = Vec::new();
    for f in forms {
        let form = form_of(f);
        coclosed.push(CoclosedEntry { form: form.render(names), coclosed: coclosed_check(&form, alg, leaf, metric)? });
    }
    Ok(GeometrySection {
        param_sample: fnm.param_sample().to_string(),
        leading_minors: definiteness.minors.iter().map(ToString::to_string).collect(),
        minors_at_sample: definiteness
            .values
            .iter()
            .map(|v| v.as_ref().map_or_else(|| "pole".to_string(), ToString::to_string))
            .collect(),
        positive_definite_at_sample: definiteness.positive_definite,
        levi_civita_checks: conn.torsion_defect(alg).is_none() && conn.metric_defect(metric).is_none(),
        kappa: kappa.kappa.render(names),
        kappa_zero: kappa.is_zero(),
        kappa_vanishes_on_leaf: kappa.vanishes_on_leaf,
        kappa_basic: kappa.is_basic,
        bundle_like: bl.holds,
        taut: bl.holds && kappa.is_zero(),
        bundle_like_witness: bl.witness.map(|w| WitnessEntry {
            v: render_vector(&w.v, names),
            x: render_vector(&w.x, names),
            y: render_vector(&w.y, names),
            value: w.value.to_string(),
        }),
        coclosed,
    })
}

fn albanese_section(fnm: &FoliatedNilmanifold, result: &AlbaneseResult) -> Result<AlbaneseSection, ReportError> {
    let names = fnm.algebra().names();
    let fiber = fiber_report(fnm, result)?;
    let bf = basic_foliation_report(fnm, result.k);
    let st = stratum_codim_check(fnm, result.k);
    let classical = classical_albanese(fnm, result)?;
    Ok(AlbaneseSection {
        status: if result.k == 0 { "trivial".into() } else { "ok".into() },
        k: result.k,
        forms: covectors(&result.forms, names),
        period_matrix: (0..result.k).map(|i| rationals(result.period_matrix.row(i))).collect(),
        lattice_basis: result.lattice.basis().iter().map(|b| rationals(b)).collect(),
        torus: result.torus.to_string(),
        submersion: submersion_check(&result.forms),
        fiber: vectors(fiber.fiber.basis(), names),
        fiber_dim: fiber.fiber.dim(),
        fiber_is_subalgebra: fiber.is_subalgebra,
        restricted_dense: fiber.restricted_dense,
        basic_foliation_codim: bf.q_b,
        dim_h1_fb: bf.dim_h1_fb,
        tprank_ok: bf.tprank_ok,
        stratum: StratumEntry { q: st.q, k: st.k, passes: st.passes, hull_excess: st.hull_excess },
        classical: ClassicalEntry {
            b1: classical.b1,
            rank: classical.torus.rank,
            torus: classical.torus.to_string(),
            forms: covectors(&classical.forms, names),
            projection_ok: classical.projection_ok,
        },
    })
}

/// Runs the whole pipeline. Geometry and Albanese sections are computed on
/// separate threads; the result does not depend on scheduling.
pub fn build_report(fnm: &FoliatedNilmanifold) -> Result<ReportDocument, ReportError> {
    let alg = fnm.algebra();
    let names = alg.names();
    let n = alg.dim();
    let h = fnm.leaf().space();
    let result = albanese_lattice(fnm)?;
    let (geometry, albanese, cohomology) = std::thread::scope(|scope| {
        let geometry = scope.spawn(|| geometry_section(fnm, &result.forms));
        let albanese = scope.spawn(|| albanese_section(fnm, &result));
        let ce = CeComplex::new(alg);
        let betti = ce.betti_numbers();
        let h1 = ce.cohomology(1);
        let basic = ce.basic_h1(h);
        let cohomology = CohomologySection {
            b1: betti[1],
            betti,
            h1_basis: h1.basis.iter().map(|f| f.render(names)).collect(),
            basic_forms_1: ce.basic_forms(h, 1).dim(),
            basic_h1: basic.dim,
            basic_h1_basis: basic.basis.iter().map(|f| f.render(names)).collect(),
        };
        (geometry.join().expect("geometry thread"), albanese.join().expect("albanese thread"), cohomology)
    });
    let hull = alg.rational_hull(h);
    Ok(ReportDocument {
        format_version: FORMAT_VERSION,
        name: fnm.name().to_string(),
        lattice_mode: fnm.lattice_mode().to_string(),
        validation: ValidationSection {
            passes: true,
            dim: n,
            lower_central_dims: fnm.lower_central_dims().to_vec(),
            nilpotency_class: fnm.nilpotency_class(),
        },
        foliation: FoliationSection {
            leaf_dim: h.dim(),
            codim: n - h.dim(),
            leaf_basis: vectors(h.basis(), names),
            is_ideal: fnm.leaf().is_ideal(),
            hull: vectors(hull.basis(), names),
            hull_dim: hull.dim(),
            dense_leaves: hull.is_full(),
        },
        cohomology,
        geometry: geometry?,
        albanese: albanese?,
    })
}

impl ReportDocument {
    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// `path = value` lines, one per leaf of the JSON value.
    pub fn flatten(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        flatten_into(&self.to_json_value(), String::new(), &mut out);
        out
    }

    pub fn to_text(&self) -> String {
        let mut text = String::new();
        for (path, value) in self.flatten() {
            text.push_str(&path);
            text.push_str(" = ");
            text.push_str(&value);
            text.push('\n');
        }
        text
    }

    /// Value at a dotted path such as `albanese.k` or `albanese.forms[0]`.
    pub fn lookup(&self, path: &str) -> Option<String> {
        self.flatten().into_iter().find(|(p, _)| p == path).map(|(_, v)| v)
    }
}

fn flatten_into(value: &Value, path: String, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten_into(v, p, out);
            }
        }
        Value::Array(items) if items.is_empty() => out.push((path, "[]".into())),
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_into(v, format!("{path}[{i}]"), out);
            }
        }
        Value::String(s) => out.push((path, s.clone())),
        Value::Null => out.push((path, "none".into())),
        other => out.push((path, other.to_string())),
    }
}
