//! Elements of `𝔤(R)` as coefficient vectors in the Chevalley basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Algebra;
use crate::error::{Error, Result};
use crate::rings::{Poly, Rational, Ring, RingMatrix};

#[derive(Clone, Debug)]
pub struct LieElement {
    algebra: Algebra,
    ring: Ring,
    coeffs: Vec<Poly>,
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.ring == other.ring && self.coeffs == other.coeffs
    }
}

pub(crate) fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || a.root_system().cartan() == b.root_system().cartan()
}

/// JSON form: `{"h":{"1":"1"},"e":{"alpha1":"t"},"f":{}}`.
///
/// `h` keys index the simple coroots `α_i^∨`; `coweights` keys index the
/// fundamental coweights `ω_i^∨`. `e` keys are root labels (negative roots
/// allowed), `f` keys are positive root labels standing for `v_{−α}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieElementJson {
    #[serde(default)]
    pub h: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coweights: BTreeMap<String, String>,
    #[serde(default)]
    pub e: BTreeMap<String, String>,
    #[serde(default)]
    pub f: BTreeMap<String, String>,
}

impl LieElement {
    pub fn zero(alg: &Algebra, ring: &Ring) -> Self {
        LieElement { algebra: alg.clone(), ring: ring.clone(), coeffs: vec![Poly::zero(); alg.dim()] }
    }

    pub fn from_coeffs(alg: &Algebra, ring: &Ring, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != alg.dim() {
            return Err(Error::Mismatch(format!("expected {} coefficients, got {}", alg.dim(), coeffs.len())));
        }
        let coeffs = coeffs.into_iter().map(|p| ring.normalize(p)).collect();
        Ok(LieElement { algebra: alg.clone(), ring: ring.clone(), coeffs })
    }

    /// `b_idx ⊗ r`.
    pub fn basis(alg: &Algebra, ring: &Ring, idx: usize, r: Poly) -> Self {
        let mut x = Self::zero(alg, ring);
        x.coeffs[idx] = ring.normalize(r);
        x
    }

    /// `h_i ⊗ r` with `h_i = α_i^∨` (0-based `i`).
    pub fn coroot(alg: &Algebra, ring: &Ring, i: usize, r: Poly) -> Self {
        Self::basis(alg, ring, i, r)
    }

    /// `v_α ⊗ r`.
    pub fn root_vector(alg: &Algebra, ring: &Ring, root: usize, r: Poly) -> Self {
        Self::basis(alg, ring, alg.root_index(root), r)
    }

    /// Cartan element `Σ c_i ω_i^∨` from coweight coordinates over ℚ.
    pub fn from_coweights(alg: &Algebra, ring: &Ring, c: &[Rational]) -> Self {
        let x = alg.root_system().coweight_to_coroot(c);
        let mut out = Self::zero(alg, ring);
        for (i, v) in x.into_iter().enumerate() {
            out.coeffs[i] = ring.constant_poly(v);
        }
        out
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: usize) -> &Poly {
        &self.coeffs[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// True when all root-vector coefficients vanish.
    pub fn in_cartan(&self) -> bool {
        self.coeffs[self.algebra.rank()..].iter().all(Poly::is_zero)
    }

    /// Coefficients in the coroot basis.
    pub fn cartan_part(&self) -> &[Poly] {
        &self.coeffs[..self.algebra.rank()]
    }

    /// Coweight coordinates `c_j = ⟨α_j, h⟩` of the Cartan part.
    pub fn coweight_coords(&self) -> Vec<Poly> {
        let l = self.algebra.rank();
        let c = self.algebra.root_system().cartan();
        (0..l)
            .map(|j| {
                let acc = (0..l).fold(Poly::zero(), |acc, i| acc.add(&self.coeffs[i].scale(&Rational::from_int(c.entry(i, j)))));
                self.ring.normalize(acc)
            })
            .collect()
    }

    /// All coefficients as rationals, when constant.
    pub fn as_rational(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|p| if p.is_zero() { Some(Rational::zero()) } else { p.as_constant() }).collect()
    }

    fn check(&self, other: &LieElement) -> Result<()> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::Mismatch("elements of different Lie algebras".into()));
        }
        if self.ring != other.ring {
            return Err(Error::Mismatch("elements over different rings".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(LieElement { coeffs, ..self.clone() })
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        Ok(LieElement { coeffs, ..self.clone() })
    }

    pub fn scale(&self, r: &Poly) -> LieElement {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, r)).collect();
        LieElement { coeffs, ..self.clone() }
    }

    pub fn scale_q(&self, r: &Rational) -> LieElement {
        let coeffs = self.coeffs.iter().map(|a| a.scale(r)).collect();
        LieElement { coeffs, ..self.clone() }
    }

    /// `[self, other]`.
    pub fn bracket(&self, other: &LieElement) -> Result<LieElement> {
        self.check(other)?;
        let d = self.algebra.dim();
        let mut acc = vec![Poly::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let entries = self.algebra.bracket_basis(i, j);
                if entries.is_empty() {
                    continue;
                }
                let ab = a.mul(b);
                for &(k, c) in entries {
                    acc[k] = acc[k].add(&ab.scale(&Rational::from_int(c)));
                }
            }
        }
        LieElement::from_coeffs(&self.algebra, &self.ring, acc)
    }

    /// Matrix of `v ↦ [self, v]` in the Chevalley basis.
    pub fn ad_matrix(&self) -> RingMatrix {
        let d = self.algebra.dim();
        let mut m = RingMatrix::zeros(&self.ring, d, d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..d {
                for &(k, c) in self.algebra.bracket_basis(i, j) {
                    let e = m.get(k, j).add(&a.scale(&Rational::from_int(c)));
                    m.set(k, j, e);
                }
            }
        }
        m
    }

    /// Coefficient-wise substitution of a rational point; the result lives over ℚ.
    pub fn eval(&self, pt: &[Rational]) -> Result<LieElement> {
        self.ring.check_point(pt)?;
        let q = Ring::rationals();
        let coeffs = self.coeffs.iter().map(|p| q.constant_poly(p.eval(pt))).collect();
        LieElement::from_coeffs(&self.algebra, &q, coeffs)
    }

    /// Image under a ring map given on polynomials.
    pub fn map_ring(&self, ring: &Ring, f: impl Fn(&Poly) -> Poly) -> Result<LieElement> {
        LieElement::from_coeffs(&self.algebra, ring, self.coeffs.iter().map(f).collect())
    }

    /// The same rational element over another ring.
    pub fn lift_constant(&self, ring: &Ring) -> Result<LieElement> {
        let q = self
            .as_rational()
            .ok_or_else(|| Error::InvalidInput("element has non-constant coefficients".into()))?;
        LieElement::from_coeffs(&self.algebra, ring, q.into_iter().map(|c| ring.constant_poly(c)).collect())
    }

    /// Killing form `Tr(ad x · ad y)`.
    pub fn killing(&self, other: &LieElement) -> Result<Poly> {
        self.check(other)?;
        Ok(self.ad_matrix().mul(&other.ad_matrix())?.trace())
    }

    pub fn to_json(&self) -> LieElementJson {
        let rs = self.algebra.root_system();
        let l = self.algebra.rank();
        let mut out = LieElementJson::default();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = self.ring.format(c);
            match self.algebra.root_of(i) {
                None => {
                    out.h.insert((i + 1).to_string(), s);
                }
                Some(r) if rs.is_positive(r) => {
                    out.e.insert(rs.label(r), s);
                }
                Some(r) => {
                    out.f.insert(rs.label(rs.negative(r)), s);
                }
            }
        }
        debug_assert!(out.h.len() <= l);
        out
    }

    pub fn from_json(alg: &Algebra, ring: &Ring, js: &LieElementJson) -> Result<LieElement> {
        let rs = alg.root_system();
        let l = alg.rank();
        let mut coeffs = vec![Poly::zero(); alg.dim()];
        let index = |k: &str| -> Result<usize> {
            let i: usize = k.trim().parse().map_err(|_| Error::Parse(format!("bad Cartan index {k:?}")))?;
            if i == 0 || i > l {
                return Err(Error::Parse(format!("Cartan index {i} out of range 1..={l}")));
            }
            Ok(i - 1)
        };
        for (k, v) in &js.h {
            let i = index(k)?;
            coeffs[i] = coeffs[i].add(&ring.parse_poly(v)?);
        }
        for (k, v) in &js.coweights {
            let i = index(k)?;
            let p = ring.parse_poly(v)?;
            for (j, w) in rs.coweights()[i].iter().enumerate() {
                coeffs[j] = coeffs[j].add(&p.scale(w));
            }
        }
        for (k, v) in &js.e {
            let r = rs.parse_label(k)?;
            let idx = alg.root_index(r);
            coeffs[idx] = coeffs[idx].add(&ring.parse_poly(v)?);
        }
        for (k, v) in &js.f {
            let r = rs.parse_label(k)?;
            if !rs.is_positive(r) {
                return Err(Error::Parse(format!("f keys name positive roots, got {k:?}")));
            }
            let idx = alg.root_index(rs.negative(r));
            coeffs[idx] = coeffs[idx].add(&ring.parse_poly(v)?);
        }
        LieElement::from_coeffs(alg, ring, coeffs)
    }

    /// Parses the JSON text form.
    pub fn parse_json(alg: &Algebra, ring: &Ring, text: &str) -> Result<LieElement> {
        let js: LieElementJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(alg, ring, &js)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::algebra;
    use crate::rootdata::CartanMatrix;

    fn a1() -> (Algebra, Ring) {
        (algebra(&CartanMatrix::of_type("A", 1).unwrap()).unwrap(), Ring::laurent(&["t"]).unwrap())
    }

    fn el(g: &Algebra, r: &Ring, js: &str) -> LieElement {
        LieElement::parse_json(g, r, js).unwrap()
    }

    #[test]
    fn brackets_over_laurent() {
        let (g, r) = a1();
        let h = el(&g, &r, r#"{"h":{"1":"1"}}"#);
        let et = el(&g, &r, r#"{"e":{"alpha1":"t"}}"#);
        assert_eq!(h.bracket(&et).unwrap(), el(&g, &r, r#"{"e":{"alpha1":"2*t"}}"#));
        let ft = el(&g, &r, r#"{"f":{"alpha1":"t^-1"}}"#);
        assert_eq!(et.bracket(&ft).unwrap(), h);
        let x = el(&g, &r, r#"{"h":{"1":"t+3"},"e":{"alpha1":"t^2"},"f":{"alpha1":"1-t"}}"#);
        assert!(x.bracket(&x).unwrap().is_zero());
    }

    #[test]
    fn ad_matrices() {
        let (g, r) = a1();
        let h = el(&g, &r, r#"{"h":{"1":"1"}}"#);
        let m = h.ad_matrix();
        let want = RingMatrix::parse(&r, &[&["0", "0", "0"], &["0", "2", "0"], &["0", "0", "-2"]]).unwrap();
        assert_eq!(m, want);
        let e = el(&g, &r, r#"{"e":{"alpha1":"1"}}"#);
        let ad = e.ad_matrix();
        assert!(!ad.pow(2).unwrap().is_zero());
        assert!(ad.pow(3).unwrap().is_zero());
        let p = el(&g, &r, r#"{"h":{"1":"1"},"e":{"alpha1":"t"}}"#);
        let want = RingMatrix::parse(&r, &[&["0", "0", "t"], &["-2*t", "2", "0"], &["0", "0", "-2"]]).unwrap();
        assert_eq!(p.ad_matrix(), want);
    }

    #[test]
    fn char_polys() {
        let (g, r) = a1();
        let cp = |js: &str| el(&g, &r, js).ad_matrix().char_poly().unwrap();
        let parse = |xs: &[&str]| xs.iter().map(|s| r.parse_poly(s).unwrap()).collect::<Vec<_>>();
        assert_eq!(cp(r#"{"h":{"1":"1"}}"#), parse(&["0", "-4", "0", "1"]));
        assert_eq!(cp(r#"{"e":{"alpha1":"1"}}"#), parse(&["0", "0", "0", "1"]));
        assert_eq!(cp(r#"{"h":{"1":"t"}}"#), parse(&["0", "-4*t^2", "0", "1"]));
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let g = algebra(&CartanMatrix::of_type("A", 2).unwrap()).unwrap();
        let r = Ring::laurent(&["t"]).unwrap();
        let x = el(&g, &r, r#"{"h":{"2":"t"},"e":{"alpha1+alpha2":"3","-alpha1":"t^-1"},"f":{"alpha2":"1"}}"#);
        let back = LieElement::from_json(&g, &r, &x.to_json()).unwrap();
        assert_eq!(x, back);
        assert!(LieElement::parse_json(&g, &r, r#"{"h":{"3":"1"}}"#).is_err());
        assert!(LieElement::parse_json(&g, &r, r#"{"e":{"alpha3":"1"}}"#).is_err());
        assert!(LieElement::parse_json(&g, &r, r#"{"f":{"-alpha1":"1"}}"#).is_err());
        assert!(LieElement::parse_json(&g, &r, r#"{"x":{}}"#).is_err());
        let w = el(&g, &r, r#"{"coweights":{"1":"1"}}"#);
        let cw: Vec<Poly> = w.coweight_coords();
        assert_eq!(cw, vec![r.one_poly(), Poly::zero()]);
    }
}
