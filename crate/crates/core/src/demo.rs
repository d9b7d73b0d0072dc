//! The quadric `ℚ[a,b,c]/(a² + bc − 1)` and the element `[[a,b],[c,−a]]` of
//! `sl₂` over it: diagonalizable and regular, yet not conjugate to a constant.

use serde_json::{json, Value};

use crate::chevalley::{algebra, Algebra, LieElement};
use crate::conjugacy::{conjugate_regular, eigenmodules, freeness_certificate, Status};
use crate::diagnostics::analyze;
use crate::error::Result;
use crate::rings::module::min_generators;
use crate::rings::{Rational, Ring, RingKind, RingSpec};
use crate::rootdata::CartanMatrix;

pub fn quadric_spec() -> RingSpec {
    RingSpec::new(RingKind::Quotient, &["a", "b", "c"])
        .with_relations(&["a^2+b*c-1"])
        .with_point(&[("a", "1"), ("b", "0"), ("c", "0")])
}

pub fn quadric_ring() -> Result<Ring> {
    Ring::new(quadric_spec())
}

pub fn sl2() -> Result<Algebra> {
    algebra(&CartanMatrix::of_type("A", 1)?)
}

/// `a·h + b·e + c·f`, whose defining matrix is `[[a,b],[c,−a]]`.
pub fn quadric_element(alg: &Algebra, ring: &Ring) -> Result<LieElement> {
    LieElement::parse_json(alg, ring, r#"{"h":{"1":"a"},"e":{"alpha1":"b"},"f":{"alpha1":"c"}}"#)
}

/// Full narrative report with every certificate inline.
pub fn quadric_demo() -> Result<Value> {
    let ring = quadric_ring()?;
    let alg = sl2()?;
    let p = quadric_element(&alg, &ring)?;
    let defining = alg.defining().expect("sl2 is type A").matrix_of(&p);
    let report = analyze(&p, 4)?;
    let mut modules = Vec::new();
    for em in eigenmodules(&p)? {
        let mg = min_generators(&em.module)?;
        modules.push(json!({
            "eigenvalue": em.eigenvalue.to_string(),
            "generators": em.module.to_strings(),
            "min_gens": mg.count,
        }));
    }
    let cert = freeness_certificate(&p, &Rational::from_int(2))?;
    let h = LieElement::parse_json(&alg, &ring, r#"{"h":{"1":"1"}}"#)?;
    let conj = conjugate_regular(&p, &h)?;
    let conclusion = match conj.status {
        Status::Obstructed => "the 2-eigenmodule is projective of rank one but needs two generators, so p is not conjugate to h over the quadric",
        Status::Solved => "p is conjugate to h",
        Status::Unsupported => "no conclusion",
    };
    Ok(json!({
        "ring": { "kind": "quotient", "vars": ["a", "b", "c"], "relations": ["a^2+b*c-1"], "point": {"a": "1", "b": "0", "c": "0"} },
        "element": p.to_json(),
        "defining_matrix": defining.to_strings(),
        "diagonalizable": report.diagonalizable,
        "eigenvalues": report.eigenvalues,
        "f_reg": report.f_reg,
        "regular": report.regular,
        "traces": report.traces,
        "trace_constant": report.trace_constant,
        "eigenmodules": modules,
        "certificate": serde_json::to_value(&cert).expect("certificate serializes"),
        "conjugation": conj.to_json(),
        "conclusion": conclusion,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_report() {
        let v = quadric_demo().unwrap();
        assert_eq!(v["eigenvalues"], json!(["0", "2", "-2"]));
        assert_eq!(v["f_reg"], "4");
        assert_eq!(v["regular"], true);
        assert_eq!(v["certificate"]["verdict"], "nonfree_rank1");
        assert_eq!(v["conjugation"]["status"], "obstructed");
        assert_eq!(v["defining_matrix"], json!([["a", "b"], ["c", "-a"]]));
    }
}
