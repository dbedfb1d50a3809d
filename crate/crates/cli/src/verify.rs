//! Claim-by-claim reproduction of the Iwasawa example.

use std::fmt::Write as _;

use nilalb_core::albanese::{
    albanese_lattice, basic_foliation_report, basic_rational_basis, fiber_report, stratum_codim_check,
    submersion_check, FoliatedNilmanifold,
};
use nilalb_core::document::InputDocument;
use nilalb_core::exactalg::{rat, Rational, Scalar, Subspace};
use nilalb_core::geometry::{bundle_like_check, coclosed_check, levi_civita, mean_curvature};
use nilalb_core::invforms::{CeComplex, InvForm};
use nilalb_core::liealg::unit;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: char,
    pub statement: &'static str,
    pub passed: bool,
    pub observed: String,
}

pub const STATEMENTS: [(char, &str); 12] = [
    ('a', "invariant basic 1-forms have dimension 6"),
    ('b', "H^1(M/F) has dimension 4 and contains e2+s*e3"),
    ('c', "k = 3 with rational forms e1, e4, e5"),
    ('d', "basic Albanese lattice is Z^3, torus T^3"),
    ('e', "b1 = 5 and the structure equations match the invariant coframe"),
    ('f', "kappa = 0 and nabla_{v_k} v_k = 0 for k = 1, 2, 3"),
    ('g', "metric is bundle-like and the foliation is taut"),
    ('h', "the Albanese map is a submersion"),
    ('i', "fiber = span{e2, e3, e6, e7, e8, e9} and the restricted foliation is dense"),
    ('j', "dim H^1(M/F_b) = 3 = k"),
    ('k', "e1, e4, e5 are basic coclosed"),
    ('l', "stratum codimension check gives (6, 3, true)"),
];

fn sv(items: &[&str]) -> Vec<Scalar> {
    items.iter().map(|t| t.parse().expect("literal scalar")).collect()
}

fn leaf_vectors() -> Vec<Vec<Scalar>> {
    vec![
        sv(&["0", "-s", "1", "0", "0", "0", "0", "0", "0"]),
        sv(&["0", "0", "0", "0", "0", "-s", "1", "0", "0"]),
        sv(&["0", "0", "0", "0", "0", "0", "0", "-s", "1"]),
    ]
}

/// `d e^c` for the coframe `w_1..w_9`: zero for `c ≤ 5`, and
/// `dw6 = -e14+e25`, `dw7 = e35`, `dw8 = -e24-e15`, `dw9 = -e34`.
fn coframe_differentials() -> Vec<InvForm> {
    let e = |i: usize, j: usize| InvForm::monomial(9, &[i - 1, j - 1]);
    let neg = |f: InvForm| f.scale(&Scalar::from(-1));
    let mut out = vec![InvForm::zero(9, 2); 5];
    out.push(neg(e(1, 4)).add(&e(2, 5)));
    out.push(e(3, 5));
    out.push(neg(e(2, 4)).add(&neg(e(1, 5))));
    out.push(neg(e(3, 4)));
    out
}

fn units(idx: &[usize]) -> Vec<Vec<Rational>> {
    idx.iter().map(|&i| (0..9).map(|j| if j == i { rat(1) } else { rat(0) }).collect()).collect()
}

fn claim(id: char, passed: bool, observed: String) -> Claim {
    let statement = STATEMENTS.iter().find(|(c, _)| *c == id).map(|(_, s)| *s).expect("known claim");
    Claim { id, statement, passed, observed }
}

/// Evaluates every claim against a model. Claims are independent; a failure in
/// one does not stop the others.
pub fn check_claims(fnm: &FoliatedNilmanifold) -> Vec<Claim> {
    let alg = fnm.algebra();
    let names = alg.names();
    let metric = fnm.metric();
    let leaf = fnm.leaf();
    let h = leaf.space();
    let ce = CeComplex::new(alg);
    let mut claims = Vec::new();

    if alg.dim() != 9 {
        return STATEMENTS.iter().map(|(id, _)| claim(*id, false, format!("dimension {} instead of 9", alg.dim()))).collect();
    }

    let basic_dim = ce.basic_forms(h, 1).dim();
    claims.push(claim('a', basic_dim == 6, format!("dimension {basic_dim}")));

    let h1 = ce.basic_h1(h);
    let h1_space = Subspace::span(9, h1.basis.iter().map(InvForm::covector_coords).collect());
    let has_omega = h1_space.contains(&sv(&["0", "1", "s", "0", "0", "0", "0", "0", "0"]));
    claims.push(claim('b', h1.dim == 4 && has_omega, format!("dimension {}, contains e2+s*e3: {has_omega}", h1.dim)));

    let basis = basic_rational_basis(fnm);
    let rendered: Vec<String> =
        basis.forms.iter().map(|f| nilalb_core::albanese::form_of(f).render(names)).collect();
    claims.push(claim('c', basis.k == 3 && basis.forms == units(&[0, 3, 4]), format!("k = {}, forms [{}]", basis.k, rendered.join(", "))));

    let albanese = albanese_lattice(fnm);
    match &albanese {
        Ok(r) => claims.push(claim(
            'd',
            r.k == 3 && r.lattice.is_standard(),
            format!("rank {}, standard {}, torus {}", r.k, r.lattice.is_standard(), r.torus),
        )),
        Err(e) => claims.push(claim('d', false, e.to_string())),
    }

    let b1 = ce.cohomology(1).dim;
    let expected_d = coframe_differentials();
    let mismatch = (0..9).find(|&c| ce.d(&InvForm::covector(9, c)) != expected_d[c]);
    let coframe = match mismatch {
        None => "structure equations match".to_string(),
        Some(c) => format!("d{} = {}", names[c], ce.d(&InvForm::covector(9, c)).render(names)),
    };
    claims.push(claim('e', b1 == 5 && mismatch.is_none(), format!("b1 = {b1}, {coframe}")));

    let conn = levi_civita(alg, metric);
    let geodesic = leaf_vectors().iter().all(|v| conn.covariant(v, v).iter().all(|c| *c == Scalar::from(0)));
    let kappa = mean_curvature(alg, leaf, metric);
    match &kappa {
        Ok(k) => claims.push(claim(
            'f',
            k.is_zero() && geodesic,
            format!("kappa = {}, nabla_v v = 0: {geodesic}", k.kappa.render(names)),
        )),
        Err(e) => claims.push(claim('f', false, e.to_string())),
    }

    match (&bundle_like_check(alg, leaf, metric), &kappa) {
        (Ok(bl), Ok(k)) => {
            let taut = bl.holds && k.is_zero();
            claims.push(claim('g', bl.holds && taut, format!("bundle-like {}, taut {taut}", bl.holds)));
        }
        (Err(e), _) | (_, Err(e)) => claims.push(claim('g', false, e.to_string())),
    }

    let forms = units(&[0, 3, 4]);
    let sub = basis.forms.len() == 3 && submersion_check(&basis.forms);
    claims.push(claim('h', sub, format!("submersion {sub}")));

    match &albanese {
        Ok(r) => match fiber_report(fnm, r) {
            Ok(fr) => {
                let expected = Subspace::span(9, [1, 2, 5, 6, 7, 8].iter().map(|&i| unit(9, i)).collect());
                let fiber: Vec<String> =
                    fr.fiber.basis().iter().map(|v| nilalb_core::liealg::render_vector(v, names)).collect();
                claims.push(claim(
                    'i',
                    fr.fiber == expected && fr.restricted_dense,
                    format!("fiber span{{{}}}, dense {}", fiber.join(", "), fr.restricted_dense),
                ));
            }
            Err(e) => claims.push(claim('i', false, e.to_string())),
        },
        Err(e) => claims.push(claim('i', false, e.to_string())),
    }

    let bf = basic_foliation_report(fnm, basis.k);
    claims.push(claim(
        'j',
        bf.dim_h1_fb == 3 && basis.k == 3 && bf.tprank_ok,
        format!("dim H^1(M/F_b) = {}, k = {}", bf.dim_h1_fb, basis.k),
    ));

    let mut cocl = Vec::new();
    let mut all = true;
    for f in &forms {
        let form = nilalb_core::albanese::form_of(f);
        let r = coclosed_check(&form, alg, leaf, metric);
        all &= matches!(r, Ok(true));
        cocl.push(match r {
            Ok(b) => format!("{}: {b}", form.render(names)),
            Err(e) => format!("{}: {e}", form.render(names)),
        });
    }
    claims.push(claim('k', all, cocl.join(", ")));

    let st = stratum_codim_check(fnm, basis.k);
    claims.push(claim(
        'l',
        (st.q, st.k, st.passes) == (6, 3, true),
        format!("({}, {}, {})", st.q, st.k, st.passes),
    ));
    claims
}

/// Claims for a document; a model that fails to build fails every claim.
pub fn check_document(doc: &InputDocument) -> Vec<Claim> {
    match doc.build() {
        Ok(fnm) => check_claims(&fnm),
        Err(e) => STATEMENTS.iter().map(|(id, _)| claim(*id, false, format!("model rejected: {e}"))).collect(),
    }
}

pub fn render_ledger(source: &str, claims: &[Claim]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verifying Iwasawa claims on {source}");
    for c in claims {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "({}) {tag}  {}  [{}]", c.id, c.statement, c.observed);
    }
    let passed = claims.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{passed}/{} claims passed", claims.len());
    if let Some(c) = claims.iter().find(|c| !c.passed) {
        let _ = writeln!(out, "first failed claim: ({}) {}", c.id, c.statement);
    }
    out
}
