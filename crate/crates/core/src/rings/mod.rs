//! Exact commutative ℚ-algebras: Laurent and polynomial rings, quotients by
//! polynomial ideals, and truncated (nilpotent) rings.
//!
//! A [`Ring`] is a cheap-to-clone shared context; elements are sparse
//! [`Poly`] values kept in normal form with respect to that context.

pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod module;

pub mod parse;
pub mod poly;
pub mod qpoly;
pub mod rational;
pub mod snf;


use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use matrix::RingMatrix;
pub use module::Submodule;

pub use poly::{Exponents, MonomialOrder, Poly};
pub use rational::Rational;

/// Resource bounds for Gröbner and syzygy computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_terms: usize,
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_terms: 100_000, max_basis: 1_000 }
    }
}

impl Limits {
    pub(crate) fn unbounded() -> Self {
        Limits { max_terms: usize::MAX, max_basis: usize::MAX }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Laurent,
    Polynomial,
    Quotient,
    Truncated,
}

/// Serializable description of a ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub kind: RingKind,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    #[serde(default)]
    pub order: MonomialOrder,
    /// Designated rational point, variable name to rational literal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<BTreeMap<String, String>>,
    /// Caller-declared reducedness (quotient rings only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<bool>,
    /// Caller-declared connectedness of the spectrum (quotient rings only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Option<Limits>,
}

impl RingSpec {
    pub fn new(kind: RingKind, vars: &[&str]) -> Self {
        RingSpec {
            kind,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            relations: Vec::new(),
            order: MonomialOrder::default(),
            point: None,
            reduced: None,
            connected: None,
            limits: None,
        }
    }

    pub fn with_relations(mut self, rels: &[&str]) -> Self {
        self.relations = rels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_point(mut self, point: &[(&str, &str)]) -> Self {
        self.point = Some(point.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect());
        self
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }
}

#[derive(Debug)]
struct RingInner {
    spec: RingSpec,
    relations: Vec<Poly>,
    /// Reduced Gröbner basis of the relations (quotient) or minimal monomial generators (truncated).
    basis: Vec<Poly>,
    limits: Limits,
    point: Option<Vec<Rational>>,
    reduced: bool,
    connected: bool,
    /// Smallest `N` with `J^N = 0` for truncated rings.
    nilpotency: Option<u32>,
}

/// A commutative ℚ-algebra of one of the supported kinds.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.spec.kind == other.0.spec.kind
                && self.0.spec.vars == other.0.spec.vars
                && self.0.spec.order == other.0.spec.order
                && self.0.basis == other.0.basis)
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let n = spec.vars.len();
        for (i, v) in spec.vars.iter().enumerate() {
            if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') || v.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(Error::InvalidInput(format!("invalid variable name {v:?}")));
            }
            if spec.vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable {v:?}")));
            }
        }
        let limits = spec.limits.unwrap_or_default();
        let laurent = spec.kind == RingKind::Laurent;
        let relations: Vec<Poly> = spec
            .relations
            .iter()
            .map(|r| parse::Parser::new(r, &spec.vars, laurent).parse())
            .collect::<Result<_>>()?;
        let mut reduced = true;
        let mut connected = true;
        let mut nilpotency = None;
        let basis = match spec.kind {
            RingKind::Laurent | RingKind::Polynomial => {
                if !relations.is_empty() {
                    return Err(Error::InvalidInput(format!("{:?} rings take no relations", spec.kind)));
                }
                Vec::new()
            }
            RingKind::Quotient => {
                let gb = groebner::groebner_basis(&relations, spec.order, &limits)?;
                if gb.iter().any(|g| g.is_constant()) {
                    return Err(Error::InvalidInput("relations generate the unit ideal".into()));
                }
                reduced = spec.reduced.unwrap_or(true);
                connected = spec.connected.unwrap_or(true);
                gb
            }
            RingKind::Truncated => {
                if relations.iter().any(|r| r.len() != 1) {
                    return Err(Error::InvalidInput("truncated rings need pure monomial relations".into()));
                }
                let monos: Vec<Poly> = relations
                    .iter()
                    .map(|r| Poly::monomial(r.terms()[0].0.clone(), Rational::one()))
                    .collect();
                let mut powers = vec![None; n];
                for m in &monos {
                    let e = &m.terms()[0].0;
                    let support: Vec<usize> = (0..n).filter(|&i| e[i] != 0).collect();
                    if support.is_empty() {
                        return Err(Error::InvalidInput("relations generate the unit ideal".into()));
                    }
                    if let [i] = support[..] {
                        let k = e[i] as u32;
                        powers[i] = Some(powers[i].map_or(k, |p: u32| p.min(k)));
                    }
                }
                if let Some(i) = powers.iter().position(|p| p.is_none()) {
                    return Err(Error::InvalidInput(format!(
                        "variable {:?} is not nilpotent: add a relation {}^N",
                        spec.vars[i], spec.vars[i]
                    )));
                }
                let minimal: Vec<Poly> = monos
                    .iter()
                    .enumerate()
                    .filter(|(i, m)| {
                        let e = &m.terms()[0].0;
                        !monos.iter().enumerate().any(|(j, o)| {
                            let f = &o.terms()[0].0;
                            j != *i && poly::divides(f, e) && (f != e || j < *i)
                        })
                    })
                    .map(|(_, m)| m.clone())
                    .collect();
                let bounds: Vec<u32> = powers.iter().map(|p| p.unwrap()).collect();
                nilpotency = Some(truncated_nilpotency(&bounds, &minimal));
                reduced = n == 0;
                let mut minimal = minimal;
                minimal.sort_by(|a, b| a.terms()[0].0.cmp(&b.terms()[0].0));
                minimal
            }
        };
        let mut ring = RingInner { spec, relations, basis, limits, point: None, reduced, connected, nilpotency };
        let point = match &ring.spec.point {
            Some(map) => {
                let mut pt = Vec::with_capacity(n);
                for v in &ring.spec.vars {
                    let s = map.get(v).ok_or_else(|| Error::InvalidPoint(format!("point misses variable {v:?}")))?;
                    pt.push(s.parse::<Rational>().map_err(|e| Error::Parse(e.to_string()))?);
                }
                if let Some(extra) = map.keys().find(|k| !ring.spec.vars.contains(k)) {
                    return Err(Error::InvalidPoint(format!("point names unknown variable {extra:?}")));
                }
                Some(pt)
            }
            None => match ring.spec.kind {
                RingKind::Laurent => Some(vec![Rational::one(); n]),
                RingKind::Polynomial | RingKind::Truncated => Some(vec![Rational::zero(); n]),
                RingKind::Quotient => None,
            },
        };
        let tmp = Ring(Arc::new(ring));
        if let Some(pt) = &point {
            tmp.check_point(pt)?;
        }
        ring = Arc::try_unwrap(tmp.0).expect("unique");
        ring.point = point;
        Ok(Ring(Arc::new(ring)))
    }

    /// ℚ itself (the polynomial ring in no variables).
    pub fn rationals() -> Ring {
        Ring::new(RingSpec::new(RingKind::Polynomial, &[])).expect("valid")
    }

    pub fn laurent(vars: &[&str]) -> Result<Ring> {
        Ring::new(RingSpec::new(RingKind::Laurent, vars))
    }

    pub fn polynomial(vars: &[&str]) -> Result<Ring> {
        Ring::new(RingSpec::new(RingKind::Polynomial, vars))
    }

    pub fn quotient(vars: &[&str], relations: &[&str]) -> Result<Ring> {
        Ring::new(RingSpec::new(RingKind::Quotient, vars).with_relations(relations))
    }

    /// `ℚ[ε]/(ε^n)` in a single variable.
    pub fn truncated(var: &str, n: u32) -> Result<Ring> {
        let rel = format!("{var}^{n}");
        Ring::new(RingSpec::new(RingKind::Truncated, &[var]).with_relations(&[rel.as_str()]))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn kind(&self) -> RingKind {
        self.0.spec.kind
    }

    pub fn nvars(&self) -> usize {
        self.0.spec.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.spec.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.spec.order
    }

    pub fn limits(&self) -> &Limits {
        &self.0.limits
    }

    pub fn relations(&self) -> &[Poly] {
        &self.0.relations
    }

    /// Cached Gröbner basis of the relation ideal.
    pub fn relation_basis(&self) -> &[Poly] {
        &self.0.basis
    }

    pub fn designated_point(&self) -> Option<&[Rational]> {
        self.0.point.as_deref()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.reduced
    }

    pub fn is_connected(&self) -> bool {
        self.0.connected
    }

    /// `ℚ[t^±]`: the principal ideal domain case.
    pub fn is_univariate_laurent(&self) -> bool {
        self.kind() == RingKind::Laurent && self.nvars() == 1
    }

    pub fn nilpotency_index(&self) -> Option<u32> {
        self.0.nilpotency
    }

    /// Canonical representative.
    pub fn normalize(&self, p: Poly) -> Poly {
        match self.kind() {
            RingKind::Laurent | RingKind::Polynomial => p,
            RingKind::Quotient => {
                if p.is_zero() || self.0.basis.is_empty() {
                    return p;
                }
                groebner::reduce(&p, &self.0.basis, self.order(), &Limits::unbounded()).expect("unbounded")
            }
            RingKind::Truncated => {
                let basis = &self.0.basis;
                Poly::from_sorted_unchecked(
                    p.into_terms()
                        .into_iter()
                        .filter(|(e, _)| !basis.iter().any(|m| poly::divides(&m.terms()[0].0, e)))
                        .collect(),
                )
            }
        }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.normalize(a.mul(b))
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut acc = self.one_poly();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn one_poly(&self) -> Poly {
        Poly::one(self.nvars())
    }

    pub fn constant_poly(&self, c: Rational) -> Poly {
        Poly::constant(c, self.nvars())
    }

    pub fn element(&self, p: Poly) -> RingElement {
        RingElement { ring: self.clone(), poly: self.normalize(p) }
    }

    pub fn zero(&self) -> RingElement {
        RingElement { ring: self.clone(), poly: Poly::zero() }
    }

    pub fn one(&self) -> RingElement {
        self.element(self.one_poly())
    }

    pub fn constant(&self, c: Rational) -> RingElement {
        self.element(self.constant_poly(c))
    }

    pub fn var(&self, name: &str) -> Result<RingElement> {
        let i = self
            .var_names()
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name:?}")))?;
        Ok(self.element(Poly::var(i, self.nvars())))
    }

    /// Parses an element string such as `"3/2*t^-2 + 1"`.
    pub fn parse(&self, s: &str) -> Result<RingElement> {
        Ok(self.element(self.parse_poly(s)?))
    }

    pub fn parse_poly(&self, s: &str) -> Result<Poly> {
        let p = parse::Parser::new(s, self.var_names(), self.kind() == RingKind::Laurent).parse()?;
        Ok(self.normalize(p))
    }

    pub fn format(&self, p: &Poly) -> String {
        parse::format_poly(p, self.var_names(), self.order())
    }

    /// Inverse of `p` when it is a unit.
    pub fn inverse(&self, p: &Poly) -> Result<Option<Poly>> {
        let n = self.nvars();
        match self.kind() {
            RingKind::Laurent => Ok(match p.terms() {
                [(e, c)] => Some(Poly::monomial(e.iter().map(|&x| -x).collect(), c.recip())),
                _ => None,
            }),
            RingKind::Polynomial => Ok(p.as_constant().filter(|c| !c.is_zero()).map(|c| Poly::constant(c.recip(), n))),
            RingKind::Truncated => {
                let c = p.constant_term();
                if c.is_zero() {
                    return Ok(None);
                }
                // (c + x)^{-1} = c^{-1} Σ (-x/c)^k, finite since x is nilpotent
                let cinv = c.recip();
                let x = p.sub(&Poly::constant(c, n)).scale(&(-&cinv));
                let mut term = Poly::one(n);
                let mut acc = Poly::zero();
                while !term.is_zero() {
                    acc = acc.add(&term);
                    term = self.mul(&term, &x);
                }
                Ok(Some(acc.scale(&cinv)))
            }
            RingKind::Quotient => {
                if p.is_zero() {
                    return Ok(None);
                }
                let gens = vec![vec![p.clone()]];
                let cert = module::membership(self, &[self.one_poly()], &gens)?;
                Ok(cert.map(|mut c| c.pop().unwrap()))
            }
        }
    }

    pub fn is_unit(&self, p: &Poly) -> Result<bool> {
        Ok(self.inverse(p)?.is_some())
    }

    /// Checks that `pt` is a rational point of the spectrum.
    pub fn check_point(&self, pt: &[Rational]) -> Result<()> {
        if pt.len() != self.nvars() {
            return Err(Error::InvalidPoint(format!("expected {} coordinates, got {}", self.nvars(), pt.len())));
        }
        match self.kind() {
            RingKind::Laurent => {
                if let Some(i) = pt.iter().position(|x| x.is_zero()) {
                    return Err(Error::InvalidPoint(format!("Laurent variable {:?} sent to 0", self.var_names()[i])));
                }
            }
            RingKind::Polynomial => {}
            RingKind::Quotient | RingKind::Truncated => {
                for (r, src) in self.0.relations.iter().zip(&self.0.spec.relations) {
                    let v = r.eval(pt);
                    if !v.is_zero() {
                        return Err(Error::InvalidPoint(format!("relation {src:?} evaluates to {v}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses assignments such as `"t=1"` or `"a=1,b=0,c=0"`.
    pub fn parse_point(&self, s: &str) -> Result<Vec<Rational>> {
        let mut map = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected var=value in {part:?}")))?;
            let q: Rational = v.trim().parse().map_err(|e: rational::ParseRationalError| Error::Parse(e.to_string()))?;
            map.insert(k.trim().to_string(), q);
        }
        let mut pt = Vec::with_capacity(self.nvars());
        for v in self.var_names() {
            pt.push(map.remove(v).ok_or_else(|| Error::InvalidPoint(format!("point misses variable {v:?}")))?);
        }
        if let Some(k) = map.keys().next() {
            return Err(Error::InvalidPoint(format!("point names unknown variable {k:?}")));
        }
        self.check_point(&pt)?;
        Ok(pt)
    }

    /// Ring homomorphism to ℚ given by a rational point.
    pub fn eval_point(&self, p: &Poly, pt: &[Rational]) -> Result<Rational> {
        self.check_point(pt)?;
        Ok(p.eval(pt))
    }

    /// Image in the reduced ring `R/J`; only truncated rings have a nonzero nilradical here.
    pub fn reduce_nilradical(&self, p: &Poly) -> Poly {
        match self.kind() {
            RingKind::Truncated => Poly::constant(p.constant_term(), self.nvars()),
            _ => p.clone(),
        }
    }

    /// Number of variables of the polynomial presentation used by module computations.
    pub(crate) fn presentation_nvars(&self) -> usize {
        match self.kind() {
            RingKind::Laurent => 2 * self.nvars(),
            _ => self.nvars(),
        }
    }

    /// Generators of the ideal `I` in the presentation `ℚ[y]/I` of this ring.
    pub(crate) fn presentation_ideal(&self) -> Vec<Poly> {
        let n = self.nvars();
        match self.kind() {
            RingKind::Laurent => (0..n)
                .map(|i| {
                    let mut e = Exponents::from_elem(0, 2 * n);
                    e[i] = 1;
                    e[n + i] = 1;
                    Poly::monomial(e, Rational::one()).sub(&Poly::one(2 * n))
                })
                .collect(),
            RingKind::Polynomial => Vec::new(),
            _ => self.0.basis.clone(),
        }
    }

    pub(crate) fn to_presentation(&self, p: &Poly) -> Poly {
        match self.kind() {
            RingKind::Laurent => {
                let n = self.nvars();
                p.map_exponents(|e| {
                    let mut out = Exponents::from_elem(0, 2 * n);
                    for (i, &k) in e.iter().enumerate() {
                        if k >= 0 {
                            out[i] = k;
                        } else {
                            out[n + i] = -k;
                        }
                    }
                    out
                })
            }
            _ => p.clone(),
        }
    }

    pub(crate) fn from_presentation(&self, p: &Poly) -> Poly {
        match self.kind() {
            RingKind::Laurent => {
                let n = self.nvars();
                p.map_exponents(|e| (0..n).map(|i| e[i] - e[n + i]).collect())
            }
            _ => self.normalize(p.clone()),
        }
    }
}

fn truncated_nilpotency(bounds: &[u32], minimal: &[Poly]) -> u32 {
    // 1 + largest total degree of a standard monomial
    let n = bounds.len();
    let mut best = 0u32;
    let mut e = vec![0i32; n];
    loop {
        let standard = !minimal.iter().any(|m| poly::divides(&m.terms()[0].0, &e));
        if standard {
            best = best.max(e.iter().map(|&x| x as u32).sum());
        }
        let mut i = 0;
        loop {
            if i == n {
                return best + 1;
            }
            e[i] += 1;
            if (e[i] as u32) < bounds[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// An element of a [`Ring`], always in normal form.
#[derive(Clone, Debug)]
pub struct RingElement {
    ring: Ring,
    poly: Poly,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.ring == other.ring
    }
}

impl Eq for RingElement {}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.poly.as_constant()
    }

    /// Re-normalizes; a no-op on values built through the public API.
    pub fn normal_form(&self) -> RingElement {
        self.ring.element(self.poly.clone())
    }

    pub fn inverse(&self) -> Result<Option<RingElement>> {
        Ok(self.ring.inverse(&self.poly)?.map(|p| self.ring.element(p)))
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.ring.is_unit(&self.poly)
    }

    pub fn eval_point(&self, pt: &[Rational]) -> Result<Rational> {
        self.ring.eval_point(&self.poly, pt)
    }

    pub fn pow(&self, e: u32) -> RingElement {
        RingElement { ring: self.ring.clone(), poly: self.ring.pow(&self.poly, e) }
    }

    pub fn scale(&self, c: &Rational) -> RingElement {
        RingElement { ring: self.ring.clone(), poly: self.poly.scale(c) }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.poly))
    }
}

impl<'a> Add<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        debug_assert!(self.ring == rhs.ring);
        RingElement { ring: self.ring.clone(), poly: self.poly.add(&rhs.poly) }
    }
}

impl<'a> Sub<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        debug_assert!(self.ring == rhs.ring);
        RingElement { ring: self.ring.clone(), poly: self.poly.sub(&rhs.poly) }
    }
}

impl<'a> Mul<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        debug_assert!(self.ring == rhs.ring);
        RingElement { ring: self.ring.clone(), poly: self.ring.mul(&self.poly, &rhs.poly) }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { ring: self.ring.clone(), poly: self.poly.neg() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadric() -> Ring {
        Ring::new(
            RingSpec::new(RingKind::Quotient, &["a", "b", "c"])
                .with_relations(&["a^2+b*c-1"])
                .with_point(&[("a", "1"), ("b", "0"), ("c", "0")]),
        )
        .unwrap()
    }

    #[test]
    fn quadric_normal_forms() {
        let r = quadric();
        assert_eq!(r.parse("a^2").unwrap(), r.parse("1 - b*c").unwrap());
        assert_eq!(r.parse("a^3").unwrap(), r.parse("a - a*b*c").unwrap());
        let x = r.parse("a^5 + b").unwrap();
        assert_eq!(x.normal_form(), x);
    }

    #[test]
    fn laurent_cancellation_and_units() {
        let r = Ring::laurent(&["t"]).unwrap();
        assert_eq!(r.parse("t*t^-1").unwrap(), r.one());
        let u = r.parse("3*t^-2").unwrap();
        assert_eq!(u.inverse().unwrap().unwrap(), r.parse("1/3*t^2").unwrap());
        assert!(!r.parse("1+t").unwrap().is_unit().unwrap());
        assert!(r.parse("3/2*t^-2 + 1").is_ok());
    }

    #[test]
    fn quadric_units() {
        let r = quadric();
        assert!(!r.parse("a").unwrap().is_unit().unwrap());
        assert!(r.parse("-7/3").unwrap().is_unit().unwrap());
        assert!(!r.zero().is_unit().unwrap());
    }

    #[test]
    fn truncated_geometric_series() {
        let r = Ring::truncated("e", 2).unwrap();
        let x = r.parse("1+e").unwrap();
        assert_eq!(x.inverse().unwrap().unwrap(), r.parse("1-e").unwrap());
        assert!(!r.parse("e").unwrap().is_unit().unwrap());
        let r4 = Ring::truncated("e", 4).unwrap();
        let y = r4.parse("2+e+e^2").unwrap();
        let inv = y.inverse().unwrap().unwrap();
        assert_eq!(&y * &inv, r4.one());
        assert_eq!(r4.nilpotency_index(), Some(4));
    }

    #[test]
    fn polynomial_units() {
        let r = Ring::polynomial(&["x"]).unwrap();
        assert!(r.parse("5").unwrap().is_unit().unwrap());
        assert!(!r.parse("x+1").unwrap().is_unit().unwrap());
    }

    #[test]
    fn eval_points() {
        let r = Ring::laurent(&["t"]).unwrap();
        let e = r.parse("2*t + t^-1").unwrap();
        assert_eq!(e.eval_point(&[Rational::one()]).unwrap(), Rational::from_int(3));
        assert!(matches!(e.eval_point(&[Rational::zero()]), Err(Error::InvalidPoint(_))));
        let q = quadric();
        let a = q.parse("a").unwrap();
        assert_eq!(a.eval_point(&[Rational::one(), Rational::zero(), Rational::zero()]).unwrap(), Rational::one());
        assert!(matches!(a.eval_point(&[Rational::zero(), Rational::zero(), Rational::zero()]), Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn spec_validation() {
        assert!(Ring::new(RingSpec::new(RingKind::Laurent, &["t", "t"])).is_err());
        assert!(Ring::quotient(&["x"], &["x", "x-1"]).is_err());
        assert!(Ring::new(RingSpec::new(RingKind::Truncated, &["e", "f"]).with_relations(&["e^2"])).is_err());
        assert!(Ring::new(RingSpec::new(RingKind::Truncated, &["e"]).with_relations(&["e^2+e"])).is_err());
        let r = Ring::new(RingSpec::new(RingKind::Truncated, &["e", "f"]).with_relations(&["e^2", "f^3", "e*f"])).unwrap();
        assert_eq!(r.nilpotency_index(), Some(3));
    }

    #[test]
    fn parse_errors() {
        let r = Ring::polynomial(&["x"]).unwrap();
        assert!(r.parse("x^-1").is_err());
        assert!(r.parse("y").is_err());
        assert!(r.parse("x +").is_err());
        assert!(r.parse("").is_err());
        assert!(r.parse("x/x").is_err());
        assert_eq!(r.parse("(x+1)^2").unwrap(), r.parse("x^2+2*x+1").unwrap());
    }

    #[test]
    fn json_spec_roundtrip() {
        let js = r#"{"kind":"quotient","vars":["a","b","c"],"relations":["a^2+b*c-1"],"order":"degrevlex"}"#;
        let spec: RingSpec = serde_json::from_str(js).unwrap();
        assert_eq!(spec.kind, RingKind::Quotient);
        let r = Ring::new(spec).unwrap();
        assert_eq!(r.relation_basis().len(), 1);
    }
}
