//! Pointwise and global tests on elements of `𝔤(R)`: diagonalizability over ℚ,
//! regularity, trace invariants, evaluation at rational points and the MAD
//! dimension bound.

use serde::{Deserialize, Serialize};

use crate::chevalley::{Algebra, LieElement, LieElementJson};
use crate::error::{Error, Result};
use crate::rings::linalg::{self, QMatrix};
use crate::rings::qpoly::{self, QPoly};
use crate::rings::{Poly, Rational, Ring, RingMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    NonconstantCharpoly,
    NonsplitOverQ,
    MinpolyNotSquarefreeWitness,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagReport {
    pub is_diagonalizable: bool,
    /// Roots of the minimal polynomial, ordered `0, 1, -1, 2, -2, …`.
    pub eigenvalues: Vec<Rational>,
    /// Monic, constant term first.
    pub min_poly: QPoly,
    pub failure_reason: Option<FailureReason>,
    /// `det(T − ad p)` over `R`, constant term first.
    pub char_poly: Vec<Poly>,
}

impl DiagReport {
    fn failed(reason: FailureReason, char_poly: Vec<Poly>) -> Self {
        DiagReport { is_diagonalizable: false, eigenvalues: Vec::new(), min_poly: Vec::new(), failure_reason: Some(reason), char_poly }
    }
}

pub(crate) fn eigen_order(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs()).then(b.is_positive().cmp(&a.is_positive()))
}

/// `Σ_k c_k A^k` with rational coefficients, evaluated as `∏ (A − λ_i)` over the roots.
fn eval_split(a: &RingMatrix, roots: &[Rational]) -> Result<RingMatrix> {
    let mut acc = RingMatrix::identity(a.ring(), a.rows());
    for lambda in roots {
        acc = acc.mul(&a.shift_diagonal(lambda))?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Decides whether `ad p` is diagonalizable over ℚ.
///
/// The characteristic polynomial must have constant coefficients (modulo the
/// nilradical for truncated rings) and split over ℚ, and its squarefree part
/// must annihilate `ad p` exactly over `R`.
pub fn is_k_diagonalizable(p: &LieElement) -> Result<DiagReport> {
    let ring = p.ring();
    let ad = p.ad_matrix();
    let chi = ad.char_poly()?;
    let mut q: QPoly = Vec::with_capacity(chi.len());
    for c in &chi {
        let c = ring.reduce_nilradical(c);
        match c.as_constant() {
            Some(v) => q.push(v),
            None if c.is_zero() => q.push(Rational::zero()),
            None => return Ok(DiagReport::failed(FailureReason::NonconstantCharpoly, chi)),
        }
    }
    let Some(mut roots) = qpoly::split_roots(&q) else {
        return Ok(DiagReport::failed(FailureReason::NonsplitOverQ, chi));
    };
    if !eval_split(&ad, &roots)?.is_zero() {
        return Ok(DiagReport::failed(FailureReason::MinpolyNotSquarefreeWitness, chi));
    }
    let min_poly = roots.iter().fold(vec![Rational::one()], |acc, r| qpoly::mul(&acc, &[-r.clone(), Rational::one()]));
    roots.sort_by(eigen_order);
    Ok(DiagReport { is_diagonalizable: true, eigenvalues: roots, min_poly, failure_reason: None, char_poly: chi })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub f_reg_value: Poly,
    pub is_regular: bool,
}

/// `(−1)^{|Δ⁺|}` times the coefficient of `T^ℓ` in `det(T − ad p)`.
///
/// On a Cartan element `h` this is `∏_{α>0} α(h)²`, positive when `h` is regular.
pub fn f_reg(p: &LieElement) -> Result<Poly> {
    let chi = p.ad_matrix().char_poly()?;
    f_reg_from_charpoly(p.algebra(), &chi)
}

pub(crate) fn f_reg_from_charpoly(alg: &Algebra, chi: &[Poly]) -> Result<Poly> {
    let c = chi[alg.rank()].clone();
    Ok(if alg.root_system().num_positive() % 2 == 1 { c.neg() } else { c })
}

pub fn regularity(p: &LieElement) -> Result<RegularityReport> {
    let f = f_reg(p)?;
    let is_regular = p.ring().is_unit(&f)?;
    Ok(RegularityReport { f_reg_value: f, is_regular })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceReport {
    /// `Tr((ad p)^m)` for `m = 1..=m_max`.
    pub traces: Vec<Poly>,
    pub constant: bool,
}

pub fn trace_invariants(p: &LieElement, m_max: usize) -> Result<TraceReport> {
    if m_max == 0 {
        return Err(Error::InvalidInput("m_max must be at least 1".into()));
    }
    let traces = p.ad_matrix().power_traces(m_max)?;
    let ring = p.ring();
    let constant = traces.iter().all(|t| ring.reduce_nilradical(t).is_constant() || t.is_zero());
    Ok(TraceReport { traces, constant })
}

/// Coefficient-wise evaluation at a rational point.
pub fn evaluate_element(p: &LieElement, pt: &[Rational]) -> Result<LieElement> {
    p.eval(pt)
}

fn require_diagonalizable(p: &LieElement) -> Result<DiagReport> {
    let d = is_k_diagonalizable(p)?;
    if !d.is_diagonalizable {
        return Err(Error::Precondition(format!(
            "element is not k-diagonalizable ({:?})",
            d.failure_reason.expect("failed reports carry a reason")
        )));
    }
    Ok(d)
}

/// Vanishing at one point forces global vanishing for diagonalizable `p` over a
/// reduced connected ring. Returns whether the observed behaviour is consistent
/// with that.
pub fn vanishing_test(p: &LieElement, pt: &[Rational]) -> Result<bool> {
    let ring = p.ring();
    if !ring.is_reduced() {
        return Err(Error::Precondition("ring is not reduced".into()));
    }
    require_diagonalizable(p)?;
    let px = p.eval(pt)?;
    Ok(!px.is_zero() || p.is_zero())
}

/// Compares `Tr((ad p(x))^m)` for `m ≤ m_max` and the characteristic polynomial of
/// `ad p(x)` with those at `x0`, for every `x` in `points`.
///
/// In type A the defining representation is compared too; a disagreement with
/// the adjoint verdict is reported as an error.
pub fn residue_conjugacy_check(p: &LieElement, x0: &[Rational], points: &[Vec<Rational>], m_max: usize) -> Result<bool> {
    require_diagonalizable(p)?;
    let rep = p.algebra().defining();
    let p0 = p.eval(x0)?;
    let base = p0.ad_matrix();
    let base_tr = base.power_traces(m_max.max(1))?;
    let base_cp = base.char_poly()?;
    let base_def = rep.map(|r| r.matrix_of(&p0).char_poly()).transpose()?;
    for x in points {
        let px = p.eval(x)?;
        let ad = px.ad_matrix();
        if ad.power_traces(m_max.max(1))? != base_tr || ad.char_poly()? != base_cp {
            return Ok(false);
        }
        // type A: the defining representation must agree as well
        if let (Some(r), Some(b)) = (rep, &base_def) {
            if r.matrix_of(&px).char_poly()? != *b {
                return Err(Error::Invariant("adjoint and defining characteristic polynomials disagree on conjugacy".into()));
            }
        }
    }
    Ok(true)
}

/// A set of elements proposed as an abelian ℚ-diagonalizable subalgebra.
#[derive(Clone, Debug)]
pub struct MadCandidate {
    pub elements: Vec<LieElement>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MadCandidateJson {
    pub elements: Vec<LieElementJson>,
}

impl MadCandidate {
    pub fn new(elements: Vec<LieElement>) -> Self {
        MadCandidate { elements }
    }

    pub fn from_json(alg: &Algebra, ring: &Ring, js: &MadCandidateJson) -> Result<Self> {
        let elements = js.elements.iter().map(|e| LieElement::from_json(alg, ring, e)).collect::<Result<_>>()?;
        Ok(MadCandidate { elements })
    }

    pub fn to_json(&self) -> MadCandidateJson {
        MadCandidateJson { elements: self.elements.iter().map(LieElement::to_json).collect() }
    }

    /// Checks commutativity and diagonalizability, naming the first failure.
    pub fn validate(&self) -> Result<()> {
        for (i, x) in self.elements.iter().enumerate() {
            let d = is_k_diagonalizable(x)?;
            if !d.is_diagonalizable {
                return Err(Error::CandidateInvalid(format!("element {} is not k-diagonalizable", i + 1)));
            }
        }
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                if !self.elements[i].bracket(&self.elements[j])?.is_zero() {
                    return Err(Error::CandidateInvalid(format!("elements {} and {} do not commute", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MadReport {
    pub dim: usize,
    pub rank: usize,
    pub within_bound: bool,
    pub maximal_by_dimension: bool,
}

/// ℚ-rank of a family of elements computed on normal-form coefficients, which is
/// exact because normal forms are ℚ-linear and canonical.
pub fn rational_span_dim(elements: &[LieElement]) -> usize {
    let mut keys: Vec<(usize, Vec<i32>)> = Vec::new();
    for x in elements {
        for (i, c) in x.coeffs().iter().enumerate() {
            for (e, _) in c.terms() {
                keys.push((i, e.to_vec()));
            }
        }
    }
    keys.sort();
    keys.dedup();
    let rows: QMatrix = elements
        .iter()
        .map(|x| keys.iter().map(|(i, e)| x.coeff(*i).coeff(e)).collect())
        .collect();
    linalg::rank(&rows)
}

fn span_dim_at_point(elements: &[LieElement], pt: &[Rational]) -> Result<usize> {
    let rows: QMatrix = elements
        .iter()
        .map(|x| Ok(x.eval(pt)?.as_rational().expect("evaluated elements are constant")))
        .collect::<Result<_>>()?;
    Ok(linalg::rank(&rows))
}

/// Dimension of the candidate over ℚ compared with the rank of `𝔤`.
///
/// On reduced connected rings the dimension is read off at the designated point
/// and cross-checked against the exact normal-form rank.
pub fn mad_check(c: &MadCandidate) -> Result<MadReport> {
    c.validate()?;
    let Some(first) = c.elements.first() else {
        return Ok(MadReport { dim: 0, rank: 0, within_bound: true, maximal_by_dimension: false });
    };
    let ring = first.ring();
    let rank = first.algebra().rank();
    let dim = rational_span_dim(&c.elements);
    if ring.is_reduced() && ring.is_connected() {
        if let Some(pt) = ring.designated_point() {
            let at_point = span_dim_at_point(&c.elements, pt)?;
            if at_point != dim {
                return Err(Error::Invariant(format!("span dimension {dim} drops to {at_point} at the designated point")));
            }
        }
    }
    Ok(MadReport { dim, rank, within_bound: dim <= rank, maximal_by_dimension: dim == rank })
}

/// `h_1 ⊗ r` is diagonalizable over ℚ exactly when `r ∈ ℚ`.
pub fn cartan_uniqueness_probe(alg: &Algebra, ring: &Ring, r: &Poly) -> Result<bool> {
    let x = LieElement::coroot(alg, ring, 0, r.clone());
    let diag = is_k_diagonalizable(&x)?.is_diagonalizable;
    let r = ring.normalize(r.clone());
    let expected = r.is_zero() || r.is_constant();
    if diag != expected {
        return Err(Error::Invariant(format!("h1 ⊗ {} has diagonalizability {diag}", ring.format(&r))));
    }
    Ok(diag)
}

/// Combined report with the fields shared by the command-line tools.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub diagonalizable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_reason: Option<FailureReason>,
    pub eigenvalues: Vec<String>,
    pub min_poly: Vec<String>,
    pub char_poly: Vec<String>,
    pub f_reg: String,
    pub regular: bool,
    pub traces: Vec<String>,
    pub trace_constant: bool,
}

pub fn analyze(p: &LieElement, m_max: usize) -> Result<DiagnosticsReport> {
    let ring = p.ring();
    let d = is_k_diagonalizable(p)?;
    let f = f_reg_from_charpoly(p.algebra(), &d.char_poly)?;
    let regular = ring.is_unit(&f)?;
    let t = trace_invariants(p, m_max)?;
    Ok(DiagnosticsReport {
        diagonalizable: d.is_diagonalizable,
        failure_reason: d.failure_reason,
        eigenvalues: d.eigenvalues.iter().map(Rational::to_string).collect(),
        min_poly: d.min_poly.iter().map(Rational::to_string).collect(),
        char_poly: d.char_poly.iter().map(|c| ring.format(c)).collect(),
        f_reg: ring.format(&f),
        regular,
        traces: t.traces.iter().map(|c| ring.format(c)).collect(),
        trace_constant: t.constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::algebra;
    use crate::rootdata::CartanMatrix;

    fn a(n: usize) -> Algebra {
        algebra(&CartanMatrix::of_type("A", n).unwrap()).unwrap()
    }

    fn laurent() -> Ring {
        Ring::laurent(&["t"]).unwrap()
    }

    fn quadric() -> Ring {
        Ring::quotient(&["a", "b", "c"], &["a^2+b*c-1"]).unwrap()
    }

    fn el(g: &Algebra, r: &Ring, js: &str) -> LieElement {
        LieElement::parse_json(g, r, js).unwrap()
    }

    fn qs(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_int(x)).collect()
    }

    /// `[[a,b],[c,−a]] = a·h + b·e + c·f`.
    fn quadric_p(g: &Algebra, r: &Ring) -> LieElement {
        el(g, r, r#"{"h":{"1":"a"},"e":{"alpha1":"b"},"f":{"alpha1":"c"}}"#)
    }

    #[test]
    fn diagonalizability_examples() {
        let (g, r) = (a(1), laurent());
        let d = is_k_diagonalizable(&el(&g, &r, r#"{"h":{"1":"1"}}"#)).unwrap();
        assert!(d.is_diagonalizable);
        assert_eq!(d.eigenvalues, qs(&[0, 2, -2]));
        assert_eq!(d.min_poly, qs(&[0, -4, 0, 1]));
        let d = is_k_diagonalizable(&el(&g, &r, r#"{"e":{"alpha1":"1"}}"#)).unwrap();
        assert_eq!(d.failure_reason, Some(FailureReason::MinpolyNotSquarefreeWitness));
        let d = is_k_diagonalizable(&el(&g, &r, r#"{"h":{"1":"t"}}"#)).unwrap();
        assert_eq!(d.failure_reason, Some(FailureReason::NonconstantCharpoly));
        let q = quadric();
        let d = is_k_diagonalizable(&quadric_p(&g, &q)).unwrap();
        assert!(d.is_diagonalizable);
        assert_eq!(d.eigenvalues, qs(&[0, 2, -2]));
    }

    #[test]
    fn nonsplit_reason() {
        // e + 2f has ad-eigenvalues 0, ±2√2
        let (g, r) = (a(1), laurent());
        let d = is_k_diagonalizable(&el(&g, &r, r#"{"e":{"alpha1":"1"},"f":{"alpha1":"2"}}"#)).unwrap();
        assert_eq!(d.failure_reason, Some(FailureReason::NonsplitOverQ));
    }

    #[test]
    fn regularity_examples() {
        let (g, r) = (a(1), laurent());
        let rep = regularity(&el(&g, &r, r#"{"h":{"1":"1"}}"#)).unwrap();
        assert_eq!(rep.f_reg_value, r.constant_poly(Rational::from_int(4)));
        assert!(rep.is_regular);
        let rep = regularity(&el(&g, &r, r#"{"e":{"alpha1":"1"}}"#)).unwrap();
        assert!(rep.f_reg_value.is_zero() && !rep.is_regular);
        let q = quadric();
        let rep = regularity(&quadric_p(&g, &q)).unwrap();
        assert_eq!(rep.f_reg_value, q.constant_poly(Rational::from_int(4)));
        assert!(rep.is_regular);
        // ω1 in A2 is not regular
        let g2 = a(2);
        assert!(!regularity(&el(&g2, &r, r#"{"coweights":{"1":"1"}}"#)).unwrap().is_regular);
    }

    #[test]
    fn trace_examples() {
        let (g, r) = (a(1), laurent());
        let t = trace_invariants(&el(&g, &r, r#"{"h":{"1":"1"}}"#), 4).unwrap();
        assert_eq!(t.traces, ["0", "8", "0", "32"].map(|s| r.parse_poly(s).unwrap()));
        assert!(t.constant);
        let t = trace_invariants(&el(&g, &r, r#"{"h":{"1":"t"}}"#), 2).unwrap();
        assert_eq!(t.traces[1], r.parse_poly("8*t^2").unwrap());
        assert!(!t.constant);
        let q = quadric();
        let t = trace_invariants(&quadric_p(&g, &q), 2).unwrap();
        assert_eq!(t.traces[1], q.parse_poly("8").unwrap());
        assert!(t.constant);
    }

    #[test]
    fn evaluation_and_vanishing() {
        let (g, r) = (a(1), laurent());
        let p = el(&g, &r, r#"{"h":{"1":"1"},"e":{"alpha1":"t-1"}}"#);
        let one = r.parse_point("t=1").unwrap();
        let q = Ring::rationals();
        assert_eq!(evaluate_element(&p, &one).unwrap(), el(&g, &q, r#"{"h":{"1":"1"}}"#));
        assert!(vanishing_test(&el(&g, &r, r#"{"h":{"1":"1"}}"#), &one).unwrap());
        assert!(vanishing_test(&LieElement::zero(&g, &r), &one).unwrap());
        let bad = el(&g, &r, r#"{"h":{"1":"1-t"}}"#);
        assert!(matches!(vanishing_test(&bad, &one), Err(Error::Precondition(_))));
        let qr = quadric();
        let pt = qr.parse_point("a=1,b=0,c=0").unwrap();
        assert_eq!(evaluate_element(&quadric_p(&g, &qr), &pt).unwrap(), el(&g, &q, r#"{"h":{"1":"1"}}"#));
        assert!(matches!(qr.parse_point("a=1,b=1,c=1"), Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn residue_checks() {
        let (g, r) = (a(1), laurent());
        let p = el(&g, &r, r#"{"h":{"1":"1"},"e":{"alpha1":"-2*t"}}"#);
        let x0 = r.parse_point("t=1").unwrap();
        let pts: Vec<_> = ["t=2", "t=3", "t=5"].iter().map(|s| r.parse_point(s).unwrap()).collect();
        assert!(residue_conjugacy_check(&p, &x0, &pts, 6).unwrap());
        let bad = el(&g, &r, r#"{"h":{"1":"t"}}"#);
        assert!(residue_conjugacy_check(&bad, &x0, &pts, 6).is_err());
    }

    #[test]
    fn mad_examples() {
        let (g, r) = (a(1), laurent());
        let rep = mad_check(&MadCandidate::new(vec![el(&g, &r, r#"{"h":{"1":"1"}}"#)])).unwrap();
        assert_eq!(rep, MadReport { dim: 1, rank: 1, within_bound: true, maximal_by_dimension: true });
        let g2 = a(2);
        let c = MadCandidate::new(vec![
            el(&g2, &r, r#"{"coweights":{"1":"1"}}"#),
            el(&g2, &r, r#"{"coweights":{"2":"1"}}"#),
        ]);
        assert!(mad_check(&c).unwrap().maximal_by_dimension);
        let c = MadCandidate::new(vec![el(&g, &r, r#"{"h":{"1":"1"}}"#), el(&g, &r, r#"{"e":{"alpha1":"1"}}"#)]);
        assert!(matches!(mad_check(&c), Err(Error::CandidateInvalid(_))));
        // dependent elements count once
        let c = MadCandidate::new(vec![el(&g, &r, r#"{"h":{"1":"1"}}"#), el(&g, &r, r#"{"h":{"1":"-3"}}"#)]);
        assert_eq!(mad_check(&c).unwrap().dim, 1);
    }

    #[test]
    fn cartan_probe() {
        let (g, r) = (a(1), laurent());
        assert!(cartan_uniqueness_probe(&g, &r, &r.parse_poly("3").unwrap()).unwrap());
        assert!(!cartan_uniqueness_probe(&g, &r, &r.parse_poly("t").unwrap()).unwrap());
        assert!(!cartan_uniqueness_probe(&g, &r, &r.parse_poly("1+t^2").unwrap()).unwrap());
    }

    #[test]
    fn report_json() {
        let (g, r) = (a(1), laurent());
        let rep = analyze(&el(&g, &r, r#"{"h":{"1":"1"}}"#), 2).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["eigenvalues"], serde_json::json!(["0", "2", "-2"]));
        assert_eq!(v["f_reg"], "4");
        assert_eq!(v["regular"], true);
        assert_eq!(v["trace_constant"], true);
    }
}
