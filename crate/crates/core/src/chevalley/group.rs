//! Elements of the adjoint Chevalley group `G(R)` acting on `𝔤(R)`.

use serde::Deserialize;

use super::element::same_algebra;
use super::{Algebra, LieElement};
use crate::error::{Error, Result};
use crate::rings::{Poly, Rational, Ring, RingMatrix};

/// Elementary generator of `G(R)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// `x_α(r)`.
    Root { root: usize, coeff: Poly },
    /// `h_i(u)` for a unit `u`; `index` is 0-based.
    Torus { index: usize, unit: Poly },
}

/// An element of `G(R)` stored through its adjoint matrix, plus its
/// defining-representation matrix in type A and a word when one is known.
#[derive(Clone, Debug)]
pub struct GroupElement {
    algebra: Algebra,
    ring: Ring,
    word: Option<Vec<Generator>>,
    adjoint: RingMatrix,
    defining: Option<RingMatrix>,
}

/// Wire form of a group element: a word, or a type-A defining matrix.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupElementJson {
    #[serde(default)]
    pub word: Option<Vec<GeneratorJson>>,
    #[serde(default)]
    pub defining_matrix: Option<Vec<Vec<String>>>,
}

/// `{"root": label, "coeff": r}` or `{"torus": i, "unit": u}` with 1-based `i`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GeneratorJson {
    Root { root: String, coeff: String },
    Torus { torus: usize, unit: String },
}

fn factorial_inv(k: u32) -> Rational {
    Rational::from_int((1..=k as i64).product::<i64>()).recip()
}

/// `Σ_k A^k / k!` for nilpotent `A`.
fn exp_nilpotent(a: &RingMatrix) -> Result<RingMatrix> {
    if !a.is_nilpotent()? {
        return Err(Error::NotNilpotent("matrix is not nilpotent".into()));
    }
    let n = a.rows();
    let mut acc = RingMatrix::identity(a.ring(), n);
    let mut term = acc.clone();
    let mut k = 1u32;
    loop {
        term = term.mul(a)?;
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term.scale_rational(&factorial_inv(k)))?;
        k += 1;
    }
    Ok(acc)
}

impl GroupElement {
    pub fn identity(alg: &Algebra, ring: &Ring) -> Self {
        GroupElement {
            algebra: alg.clone(),
            ring: ring.clone(),
            word: Some(Vec::new()),
            adjoint: RingMatrix::identity(ring, alg.dim()),
            defining: alg.defining().map(|d| RingMatrix::identity(ring, d.size())),
        }
    }

    /// `x_α(r) = exp(ad(v_α ⊗ r))`.
    pub fn root_elt(alg: &Algebra, ring: &Ring, root: usize, r: &Poly) -> Result<Self> {
        let x = LieElement::root_vector(alg, ring, root, r.clone());
        let adjoint = exp_nilpotent(&x.ad_matrix())?;
        Ok(GroupElement {
            algebra: alg.clone(),
            ring: ring.clone(),
            word: Some(vec![Generator::Root { root, coeff: ring.normalize(r.clone()) }]),
            adjoint,
            defining: alg.defining().map(|d| d.root_matrix(ring, root, r)),
        })
    }

    /// `h_i(u)`, acting on `v_β` by `u^{⟨β, α_i^∨⟩}` and trivially on the Cartan.
    pub fn torus_elt(alg: &Algebra, ring: &Ring, i: usize, u: &Poly) -> Result<Self> {
        if i >= alg.rank() {
            return Err(Error::InvalidInput(format!("torus index {} out of range", i + 1)));
        }
        let uinv = ring
            .inverse(u)?
            .ok_or_else(|| Error::InvalidInput(format!("{} is not a unit", ring.format(u))))?;
        let rs = alg.root_system();
        let mut diag = vec![ring.one_poly(); alg.dim()];
        for root in 0..rs.num_roots() {
            let k = rs.pairing_coroot(root, i);
            let base = if k >= 0 { u } else { &uinv };
            diag[alg.root_index(root)] = ring.pow(base, k.unsigned_abs() as u32);
        }
        Ok(GroupElement {
            algebra: alg.clone(),
            ring: ring.clone(),
            word: Some(vec![Generator::Torus { index: i, unit: ring.normalize(u.clone()) }]),
            adjoint: RingMatrix::diagonal(ring, diag),
            defining: alg.defining().map(|d| d.torus_matrix(ring, i, u, &uinv)),
        })
    }

    pub fn from_generator(alg: &Algebra, ring: &Ring, g: &Generator) -> Result<Self> {
        match g {
            Generator::Root { root, coeff } => Self::root_elt(alg, ring, *root, coeff),
            Generator::Torus { index, unit } => Self::torus_elt(alg, ring, *index, unit),
        }
    }

    pub fn from_word(alg: &Algebra, ring: &Ring, word: &[Generator]) -> Result<Self> {
        word.iter().try_fold(Self::identity(alg, ring), |acc, g| acc.product(&Self::from_generator(alg, ring, g)?))
    }

    /// Type A only: the element of `SL_{ℓ+1}(R)` given by `g`, acting by conjugation.
    pub fn from_defining(alg: &Algebra, g: &RingMatrix) -> Result<Self> {
        let rep = alg
            .defining()
            .ok_or_else(|| Error::Precondition("defining representation exists only in type A".into()))?;
        let ring = g.ring().clone();
        if g.rows() != rep.size() || g.cols() != rep.size() {
            return Err(Error::Mismatch(format!("expected a {0}x{0} matrix", rep.size())));
        }
        let det = g.det()?;
        if det != ring.one_poly() {
            return Err(Error::InvalidInput(format!("determinant is {}, not 1", ring.format(&det))));
        }
        let ginv = g.adjugate()?;
        let d = alg.dim();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let b = LieElement::basis(alg, &ring, j, ring.one_poly());
            let img = g.mul(&rep.matrix_of(&b))?.mul(&ginv)?;
            cols.push(rep.element_of(alg, &img)?.coeffs().to_vec());
        }
        Ok(GroupElement {
            algebra: alg.clone(),
            ring: ring.clone(),
            word: None,
            adjoint: RingMatrix::from_columns(&ring, d, &cols),
            defining: Some(g.clone()),
        })
    }

    pub fn from_json(alg: &Algebra, ring: &Ring, js: &GroupElementJson) -> Result<Self> {
        match (&js.word, &js.defining_matrix) {
            (Some(word), None) => {
                let rs = alg.root_system();
                let gens = word
                    .iter()
                    .map(|g| match g {
                        GeneratorJson::Root { root, coeff } => {
                            Ok(Generator::Root { root: rs.parse_label(root)?, coeff: ring.parse_poly(coeff)? })
                        }
                        GeneratorJson::Torus { torus, unit } => {
                            if *torus == 0 || *torus > alg.rank() {
                                return Err(Error::Parse(format!("torus index {torus} out of range 1..={}", alg.rank())));
                            }
                            Ok(Generator::Torus { index: torus - 1, unit: ring.parse_poly(unit)? })
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::from_word(alg, ring, &gens)
            }
            (None, Some(rows)) => {
                let strs: Vec<Vec<&str>> = rows.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
                let refs: Vec<&[&str]> = strs.iter().map(Vec::as_slice).collect();
                Self::from_defining(alg, &RingMatrix::parse(ring, &refs)?)
            }
            _ => Err(Error::Parse("group element needs exactly one of \"word\" or \"defining_matrix\"".into())),
        }
    }

    pub fn parse_json(alg: &Algebra, ring: &Ring, text: &str) -> Result<Self> {
        let js: GroupElementJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(alg, ring, &js)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn word(&self) -> Option<&[Generator]> {
        self.word.as_deref()
    }

    pub fn adjoint(&self) -> &RingMatrix {
        &self.adjoint
    }

    pub fn defining(&self) -> Option<&RingMatrix> {
        self.defining.as_ref()
    }

    fn check(&self, other: &GroupElement) -> Result<()> {
        if !same_algebra(&self.algebra, &other.algebra) || self.ring != other.ring {
            return Err(Error::Mismatch("group elements over different algebras or rings".into()));
        }
        Ok(())
    }

    pub fn product(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check(other)?;
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        let defining = match (&self.defining, &other.defining) {
            (Some(a), Some(b)) => Some(a.mul(b)?),
            _ => None,
        };
        Ok(GroupElement {
            algebra: self.algebra.clone(),
            ring: self.ring.clone(),
            word,
            adjoint: self.adjoint.mul(&other.adjoint)?,
            defining,
        })
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        if let Some(w) = &self.word {
            let mut acc = GroupElement::identity(&self.algebra, &self.ring);
            for g in w.iter().rev() {
                let inv = match g {
                    Generator::Root { root, coeff } => Generator::Root { root: *root, coeff: coeff.neg() },
                    Generator::Torus { index, unit } => Generator::Torus {
                        index: *index,
                        unit: self.ring.inverse(unit)?.ok_or_else(|| Error::Invariant("torus unit lost".into()))?,
                    },
                };
                acc = acc.product(&GroupElement::from_generator(&self.algebra, &self.ring, &inv)?)?;
            }
            return Ok(acc);
        }
        let adjoint = self
            .adjoint
            .inverse()?
            .ok_or_else(|| Error::Invariant("adjoint matrix is not invertible".into()))?;
        let defining = match &self.defining {
            Some(g) => Some(g.adjugate()?),
            None => None,
        };
        Ok(GroupElement { algebra: self.algebra.clone(), ring: self.ring.clone(), word: None, adjoint, defining })
    }

    /// `Ad(g)(x)`.
    pub fn act(&self, x: &LieElement) -> Result<LieElement> {
        if !same_algebra(&self.algebra, x.algebra()) || &self.ring != x.ring() {
            return Err(Error::Mismatch("group element and Lie element disagree on algebra or ring".into()));
        }
        let v = self.adjoint.mul_vec(x.coeffs())?;
        LieElement::from_coeffs(&self.algebra, &self.ring, v)
    }

    /// Checks that the adjoint matrix preserves all brackets of basis vectors.
    pub fn check_automorphism(&self) -> Result<()> {
        let d = self.algebra.dim();
        let img: Vec<LieElement> = (0..d)
            .map(|j| LieElement::from_coeffs(&self.algebra, &self.ring, self.adjoint.column(j)))
            .collect::<Result<_>>()?;
        for i in 0..d {
            for j in i + 1..d {
                let lhs = img[i].bracket(&img[j])?;
                let mut rhs = LieElement::zero(&self.algebra, &self.ring);
                for &(k, c) in self.algebra.bracket_basis(i, j) {
                    rhs = rhs.add(&img[k].scale_q(&Rational::from_int(c)))?;
                }
                if lhs != rhs {
                    return Err(Error::Invariant(format!(
                        "bracket of {} and {} not preserved",
                        self.algebra.basis_label(i),
                        self.algebra.basis_label(j)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `exp(ad x)` for `x` with nilpotent adjoint action.
pub fn exp_ad(x: &LieElement) -> Result<GroupElement> {
    let alg = x.algebra();
    let ring = x.ring();
    let support: Vec<usize> = (0..alg.dim()).filter(|&i| !x.coeff(i).is_zero()).collect();
    if let [idx] = support[..] {
        if let Some(root) = alg.root_of(idx) {
            return GroupElement::root_elt(alg, ring, root, x.coeff(idx));
        }
    }
    let adjoint = exp_nilpotent(&x.ad_matrix())
        .map_err(|_| Error::NotNilpotent("ad x is not nilpotent".into()))?;
    let defining = match alg.defining() {
        Some(rep) => Some(exp_nilpotent(&rep.matrix_of(x))?),
        None => None,
    };
    let g = GroupElement { algebra: alg.clone(), ring: ring.clone(), word: None, adjoint, defining };
    g.check_automorphism()?;
    Ok(g)
}

/// `Ad(P)(p)`.
pub fn group_act(g: &GroupElement, p: &LieElement) -> Result<LieElement> {
    g.act(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::algebra;
    use crate::rootdata::CartanMatrix;

    fn setup(kind: &str, n: usize) -> (Algebra, Ring) {
        (algebra(&CartanMatrix::of_type(kind, n).unwrap()).unwrap(), Ring::laurent(&["t"]).unwrap())
    }

    #[test]
    fn root_element_on_sl2() {
        let (g, r) = setup("A", 1);
        let t = r.parse_poly("t").unwrap();
        let x = GroupElement::root_elt(&g, &r, 0, &t).unwrap();
        assert_eq!(x.defining().unwrap(), &RingMatrix::parse(&r, &[&["1", "t"], &["0", "1"]]).unwrap());
        let h = LieElement::parse_json(&g, &r, r#"{"h":{"1":"1"}}"#).unwrap();
        let got = group_act(&x, &h).unwrap();
        assert_eq!(got, LieElement::parse_json(&g, &r, r#"{"h":{"1":"1"},"e":{"alpha1":"-2*t"}}"#).unwrap());
        x.check_automorphism().unwrap();
    }

    #[test]
    fn exp_of_nilpotent_and_rejection() {
        let (g, r) = setup("A", 2);
        let x = LieElement::parse_json(&g, &r, r#"{"e":{"alpha1":"t","alpha2":"1","alpha1+alpha2":"t^-1"}}"#).unwrap();
        let e = exp_ad(&x).unwrap();
        let f = GroupElement::from_defining(&g, e.defining().unwrap()).unwrap();
        assert_eq!(f.adjoint(), e.adjoint());
        let h = LieElement::parse_json(&g, &r, r#"{"h":{"1":"1"}}"#).unwrap();
        assert!(matches!(exp_ad(&h), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn adjoint_matches_defining_in_type_a() {
        let (g, r) = setup("A", 3);
        let t = r.parse_poly("t").unwrap();
        let mut w = GroupElement::identity(&g, &r);
        for root in 0..g.root_system().num_roots() {
            w = w.product(&GroupElement::root_elt(&g, &r, root, &t).unwrap()).unwrap();
        }
        w = w.product(&GroupElement::torus_elt(&g, &r, 1, &r.parse_poly("2*t^3").unwrap()).unwrap()).unwrap();
        let via = GroupElement::from_defining(&g, w.defining().unwrap()).unwrap();
        assert_eq!(via.adjoint(), w.adjoint());
        let inv = w.inverse().unwrap();
        assert!(w.product(&inv).unwrap().adjoint().is_identity());
    }

    #[test]
    fn torus_needs_unit_and_g2_automorphisms() {
        let (g, r) = setup("A", 1);
        assert!(GroupElement::torus_elt(&g, &r, 0, &r.parse_poly("1+t").unwrap()).is_err());
        let (g2, r) = setup("G", 2);
        let t = r.parse_poly("t").unwrap();
        for root in 0..g2.root_system().num_roots() {
            GroupElement::root_elt(&g2, &r, root, &t).unwrap().check_automorphism().unwrap();
        }
    }

    #[test]
    fn parses_words_and_matrices() {
        let g = algebra(&CartanMatrix::of_type("A", 1).unwrap()).unwrap();
        let r = Ring::laurent(&["t"]).unwrap();
        let w = GroupElement::parse_json(&g, &r, r#"{"word":[{"root":"alpha1","coeff":"t"},{"torus":1,"unit":"t^-1"}]}"#).unwrap();
        let m = GroupElement::parse_json(&g, &r, r#"{"defining_matrix":[["t^-1","t^2"],["0","t"]]}"#).unwrap();
        assert_eq!(w.adjoint(), m.adjoint());
        assert!(GroupElement::parse_json(&g, &r, r#"{"word":[{"torus":2,"unit":"1"}]}"#).is_err());
        assert!(GroupElement::parse_json(&g, &r, r#"{}"#).is_err());
    }

}
