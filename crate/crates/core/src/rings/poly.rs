//! Sparse multivariate Laurent polynomials over ℚ.
//!
//! Terms are kept sorted ascending by exponent vector (lexicographic on the raw
//! vector), which makes the representation canonical independently of any
//! monomial order used for division.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::rational::Rational;

pub type Exponents = SmallVec<[i32; 4]>;

/// Term orders used for division and Gröbner bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[default]
    Degrevlex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[i32], b: &[i32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Degrevlex => {
                let da: i64 = a.iter().map(|&e| e as i64).sum();
                let db: i64 = b.iter().map(|&e| e as i64).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

pub fn divides(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_sub(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_add(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Exponents, Rational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: Rational, nvars: usize) -> Self {
        Self::monomial(Exponents::from_elem(0, nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rational::one(), nvars)
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(exps, c)] }
        }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = Exponents::from_elem(0, nvars);
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    /// Collects arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, Rational)>>(terms: I) -> Self {
        let mut map: HashMap<Exponents, Rational> = HashMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            map.entry(e).and_modify(|x| *x += &c).or_insert(c);
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Poly { terms }
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<(Exponents, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Exponents, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exponents, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(e, c)] if e.iter().all(|&x| x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        match self.terms.binary_search_by(|t| t.0.as_slice().cmp(exps)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.iter().map(|(e, _)| e.iter().map(|&x| x as i64).sum()).max()
    }

    pub fn min_total_degree(&self) -> Option<i64> {
        self.terms.iter().map(|(e, _)| e.iter().map(|&x| x as i64).sum()).min()
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.iter().any(|(e, _)| e.iter().any(|&x| x < 0))
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: MonomialOrder) -> Option<&(Exponents, Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (e.clone(), if negate { -c } else { c.clone() })));
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    /// Multiplies by `c·x^exps`; exponent shifts preserve the term order.
    pub fn mul_term(&self, exps: &[i32], c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, d)| (mono_add(e, exps), d * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.mul_term(e, c);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.mul_term(e, c);
        }
        if self.terms[0].0.len() == 1 {
            return self.mul_univariate(other);
        }
        let mut map: HashMap<Exponents, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let c = c1 * c2;
                map.entry(mono_add(e1, e2)).and_modify(|x| *x += &c).or_insert(c);
            }
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Poly { terms }
    }

    fn mul_univariate(&self, other: &Poly) -> Poly {
        let lo = self.terms[0].0[0] + other.terms[0].0[0];
        let hi = self.terms.last().unwrap().0[0] + other.terms.last().unwrap().0[0];
        let mut dense = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let slot = &mut dense[(e1[0] + e2[0] - lo) as usize];
                *slot += &(c1 * c2);
            }
        }
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Exponents::from_elem(lo + i as i32, 1), c))
            .collect();
        Poly { terms }
    }

    pub fn pow(&self, e: u32, nvars: usize) -> Poly {
        let mut acc = Poly::one(nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluation at a point; negative exponents require nonzero coordinates.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    if k != 0 {
                        v *= &x.pow(k);
                    }
                }
                v
            })
            .sum()
    }

    /// Drops every term of total degree `>= d`.
    pub fn truncate_degree(&self, d: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|&x| x as i64).sum::<i64>() < d)
                .cloned()
                .collect(),
        }
    }

    /// Keeps only terms whose total degree lies in `lo..hi`.
    pub fn degree_band(&self, lo: i64, hi: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| {
                    let d = e.iter().map(|&x| x as i64).sum::<i64>();
                    lo <= d && d < hi
                })
                .cloned()
                .collect(),
        }
    }

    pub fn map_exponents<F: Fn(&[i32]) -> Exponents>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Substitutes a polynomial for each variable; exponents must be nonnegative.
    pub fn compose(&self, images: &[Poly], nvars_out: usize) -> Poly {
        let mut acc = Poly::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone(), nvars_out);
            for (img, &k) in images.iter().zip(e) {
                debug_assert!(k >= 0);
                if k > 0 {
                    t = t.mul(&img.pow(k as u32, nvars_out));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    fn p(terms: &[(&[i32], i64)]) -> Poly {
        Poly::from_terms(terms.iter().map(|(e, c)| (Exponents::from_slice(e), Rational::from_int(*c))))
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = p(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let prod = a.mul(&b);
        assert_eq!(prod, p(&[(&[2, 0], 1), (&[0, 2], -1)]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.add(&b), p(&[(&[1, 0], 2)]));
    }

    #[test]
    fn laurent_cancellation() {
        let t = p(&[(&[1], 1)]);
        let tinv = p(&[(&[-1], 1)]);
        assert_eq!(t.mul(&tinv), Poly::one(1));
    }

    #[test]
    fn orders() {
        let lex = MonomialOrder::Lex;
        let grl = MonomialOrder::Degrevlex;
        let x: Exponents = smallvec![1, 0, 0];
        let y2: Exponents = smallvec![0, 2, 0];
        assert_eq!(lex.cmp(&x, &y2), Ordering::Greater);
        assert_eq!(grl.cmp(&x, &y2), Ordering::Less);
        // degrevlex: x*z < y^2 since z is the smallest variable
        let xz: Exponents = smallvec![1, 0, 1];
        assert_eq!(grl.cmp(&xz, &y2), Ordering::Less);
    }

    #[test]
    fn eval_and_truncate() {
        let f = p(&[(&[2], 3), (&[1], 1), (&[-1], 2)]);
        assert_eq!(f.eval(&[Rational::from_int(2)]), Rational::from_int(12 + 2 + 1));
        let g = p(&[(&[0], 1), (&[1], 1), (&[2], 1), (&[3], 1)]);
        assert_eq!(g.truncate_degree(2), p(&[(&[0], 1), (&[1], 1)]));
        assert_eq!(g.degree_band(1, 3), p(&[(&[1], 1), (&[2], 1)]));
    }
}
