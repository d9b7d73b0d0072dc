//! Smith normal form over the Euclidean domain ℚ[t, t⁻¹].
//!
//! The Euclidean size of a nonzero Laurent polynomial is its span
//! `max exponent − min exponent`; units are exactly the elements of span 0.

use super::matrix::RingMatrix;
use super::{Exponents, Poly, Rational, Ring};
use crate::error::{Error, Result};

/// `U·M·V = D` with `U`, `V` invertible and `D` diagonal with `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: RingMatrix,
    pub d: RingMatrix,
    pub v: RingMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<Poly> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

fn span(p: &Poly) -> i32 {
    let t = p.terms();
    t.last().unwrap().0[0] - t[0].0[0]
}

fn low(p: &Poly) -> i32 {
    p.terms()[0].0[0]
}

fn mono(e: i32, c: Rational) -> Poly {
    Poly::monomial(Exponents::from_elem(e, 1), c)
}

/// Dense coefficients of `t^{-low(p)}·p`, constant term first.
fn dense(p: &Poly) -> Vec<Rational> {
    let lo = low(p);
    let mut v = vec![Rational::zero(); (span(p) + 1) as usize];
    for (e, c) in p.terms() {
        v[(e[0] - lo) as usize] = c.clone();
    }
    v
}

fn from_dense(v: &[Rational], shift: i32) -> Poly {
    Poly::from_terms(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Exponents::from_elem(shift + i as i32, 1), c.clone())),
    )
}

/// `a = q·b + r` with `r = 0` or `span(r) < span(b)`.
pub fn laurent_divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_zero(), "division by zero");
    if a.is_zero() {
        return (Poly::zero(), Poly::zero());
    }
    let (la, lb) = (low(a), low(b));
    let mut rem = dense(a);
    let den = dense(b);
    let db = den.len() - 1;
    if rem.len() <= db {
        return (Poly::zero(), a.clone());
    }
    let lead_inv = den[db].recip();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            if !d.is_zero() {
                let s = &c * d;
                rem[k + i] -= &s;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (from_dense(&quot, la - lb), from_dense(&rem, la))
}

/// Splits `p ≠ 0` as `unit · q` with `q` a polynomial whose constant term is 1.
pub fn unit_part(p: &Poly) -> (Poly, Poly) {
    let lo = low(p);
    let c = p.terms()[0].1.clone();
    let unit = mono(lo, c.clone());
    let q = p.mul_term(&[-lo], &c.recip());
    (unit, q)
}

struct State<'a> {
    ring: &'a Ring,
    m: Vec<Vec<Poly>>,
    u: Vec<Vec<Poly>>,
    v: Vec<Vec<Poly>>,
}

impl State<'_> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.m.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += f · row_j
    fn add_row(&mut self, i: usize, j: usize, f: &Poly) {
        for mat in [&mut self.m, &mut self.u] {
            for k in 0..mat[0].len() {
                if !mat[j][k].is_zero() {
                    let d = self.ring.mul(&mat[j][k], f);
                    mat[i][k] = mat[i][k].add(&d);
                }
            }
        }
    }

    /// col_i += f · col_j
    fn add_col(&mut self, i: usize, j: usize, f: &Poly) {
        for mat in [&mut self.m, &mut self.v] {
            for row in mat.iter_mut() {
                if !row[j].is_zero() {
                    let d = self.ring.mul(&row[j], f);
                    row[i] = row[i].add(&d);
                }
            }
        }
    }

    fn scale_row(&mut self, i: usize, f: &Poly) {
        for mat in [&mut self.m, &mut self.u] {
            for x in mat[i].iter_mut() {
                *x = self.ring.mul(x, f);
            }
        }
    }
}

/// Smith normal form of a matrix over ℚ[t^±] in one variable.
pub fn smith_normal_form(m: &RingMatrix) -> Result<Smith> {
    let ring = m.ring();
    if !ring.is_univariate_laurent() {
        return Err(Error::WrongRing("Smith normal form needs the Laurent ring in one variable".into()));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut st = State {
        ring,
        m: m.to_rows(),
        u: RingMatrix::identity(ring, rows).to_rows(),
        v: RingMatrix::identity(ring, cols).to_rows(),
    };
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest(&st.m, k) else { break };
        st.swap_rows(k, pi);
        st.swap_cols(k, pj);
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if st.m[i][k].is_zero() {
                    continue;
                }
                let (q, r) = laurent_divmod(&st.m[i][k], &st.m[k][k]);
                st.add_row(i, k, &q.neg());
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if st.m[k][j].is_zero() {
                    continue;
                }
                let (q, r) = laurent_divmod(&st.m[k][j], &st.m[k][k]);
                st.add_col(j, k, &q.neg());
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a nonzero remainder has smaller span than the pivot
                let (pi, pj) = smallest(&st.m, k).expect("nonzero entry remains");
                st.swap_rows(k, pi);
                st.swap_cols(k, pj);
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (k + 1..rows).find(|&i| {
                (k + 1..cols).any(|j| !st.m[i][j].is_zero() && !laurent_divmod(&st.m[i][j], &st.m[k][k]).1.is_zero())
            });
            match bad {
                Some(i) => st.add_row(k, i, &ring.one_poly()),
                None => break,
            }
        }
        let (unit, _) = unit_part(&st.m[k][k]);
        let inv = ring.inverse(&unit)?.expect("monomials are units");
        st.scale_row(k, &inv);
        rank += 1;
    }
    let u = RingMatrix::from_rows(ring, st.u)?;
    let d = RingMatrix::from_rows(ring, st.m)?;
    let v = RingMatrix::from_rows(ring, st.v)?;
    Ok(Smith { u, d, v, rank })
}

fn smallest(m: &[Vec<Poly>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i32, usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, x) in row.iter().enumerate().skip(k) {
            if !x.is_zero() {
                let s = span(x);
                if best.is_none_or(|(b, _, _)| s < b) {
                    best = Some((s, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Checks every postcondition of a Smith decomposition of `m`.
pub fn verify(m: &RingMatrix, s: &Smith) -> Result<()> {
    let ring = m.ring();
    if s.u.mul(m)?.mul(&s.v)? != s.d {
        return Err(Error::Invariant("U·M·V differs from D".into()));
    }
    for (i, j) in (0..s.d.rows()).flat_map(|i| (0..s.d.cols()).map(move |j| (i, j))) {
        if i != j && !s.d.get(i, j).is_zero() {
            return Err(Error::Invariant("D is not diagonal".into()));
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        if w[0].is_zero() && !w[1].is_zero() {
            return Err(Error::Invariant("zero diagonal entry before a nonzero one".into()));
        }
        if !w[0].is_zero() && !w[1].is_zero() && !laurent_divmod(&w[1], &w[0]).1.is_zero() {
            return Err(Error::Invariant("divisibility chain broken".into()));
        }
    }
    for d in diag.iter().filter(|d| !d.is_zero()) {
        if low(d) != 0 || !d.terms()[0].1.is_one() {
            return Err(Error::Invariant("diagonal entry not normalized".into()));
        }
    }
    for w in [&s.u, &s.v] {
        if !ring.is_unit(&w.det()?)? {
            return Err(Error::Invariant("transform is not invertible".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr() -> Ring {
        Ring::laurent(&["t"]).unwrap()
    }

    fn diag_of(rows: &[&[&str]]) -> Vec<Poly> {
        let r = lr();
        let m = RingMatrix::parse(&r, rows).unwrap();
        let s = smith_normal_form(&m).unwrap();
        verify(&m, &s).unwrap();
        s.diagonal()
    }

    fn polys(xs: &[&str]) -> Vec<Poly> {
        let r = lr();
        xs.iter().map(|s| r.parse_poly(s).unwrap()).collect()
    }

    #[test]
    fn unit_entry() {
        assert_eq!(diag_of(&[&["t", "0"], &["0", "1"]]), polys(&["1", "1"]));
    }

    #[test]
    fn already_diagonal() {
        assert_eq!(diag_of(&[&["1+t", "0"], &["0", "(1+t)^2"]]), polys(&["1+t", "1+2*t+t^2"]));
    }

    #[test]
    fn jordan_block() {
        assert_eq!(diag_of(&[&["1+t", "1"], &["0", "1+t"]]), polys(&["1", "1+2*t+t^2"]));
    }

    #[test]
    fn coprime_diagonal_mixes() {
        assert_eq!(diag_of(&[&["1+t", "0"], &["0", "1-t"]]), polys(&["1", "1-t^2"]));
    }

    #[test]
    fn rectangular_and_zero() {
        let d = diag_of(&[&["t^-1", "2", "t"], &["0", "0", "0"]]);
        assert_eq!(d, polys(&["1", "0"]));
    }

    #[test]
    fn divmod_laurent() {
        let r = lr();
        let a = r.parse_poly("t^-2 + 3 + t^3").unwrap();
        let b = r.parse_poly("t^-1 - t").unwrap();
        let (q, rem) = laurent_divmod(&a, &b);
        assert_eq!(q.mul(&b).add(&rem), a);
        assert!(rem.is_zero() || span(&rem) < span(&b));
    }

    #[test]
    fn rejects_other_rings() {
        let r = Ring::polynomial(&["x"]).unwrap();
        let m = RingMatrix::identity(&r, 2);
        assert!(matches!(smith_normal_form(&m), Err(Error::WrongRing(_))));
    }
}
