//! Dense matrices over a [`Ring`].

use std::fmt;

use super::linalg::QMatrix;
use super::{Poly, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl RingMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        RingMatrix { ring: ring.clone(), rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one_poly());
        }
        m
    }

    /// Entries are normalized on the way in.
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let entries = rows.into_iter().flatten().map(|p| ring.normalize(p)).collect();
        Ok(RingMatrix { ring: ring.clone(), rows: r, cols: c, entries })
    }

    pub fn parse(ring: &Ring, rows: &[&[&str]]) -> Result<Self> {
        let polys = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse_poly(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, polys)
    }

    pub fn from_rational(ring: &Ring, m: &QMatrix) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let entries = m.iter().flatten().map(|c| ring.constant_poly(c.clone())).collect();
        RingMatrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn diagonal(ring: &Ring, diag: Vec<Poly>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(ring, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, ring.normalize(d));
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    /// Stores `p` as given; callers pass normal forms.
    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn from_columns(ring: &Ring, rows: usize, cols: &[Vec<Poly>]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, p) in c.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    fn check_same_ring(&self, other: &RingMatrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Mismatch("matrices over different rings".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Mismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RingMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, self.ring.normalize(acc));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::Mismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let acc = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Poly::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
                self.ring.normalize(acc)
            })
            .collect())
    }

    fn zip_with(&self, other: &RingMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<RingMatrix> {
        self.check_same_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Mismatch("matrix shapes differ".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(RingMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: &Poly) -> RingMatrix {
        let entries = self.entries.iter().map(|a| self.ring.mul(a, s)).collect();
        RingMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale_rational(&self, s: &Rational) -> RingMatrix {
        let entries = self.entries.iter().map(|a| a.scale(s)).collect();
        RingMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    /// `self - λ·I`.
    pub fn shift_diagonal(&self, lambda: &Rational) -> RingMatrix {
        let mut m = self.clone();
        let c = self.ring.constant_poly(lambda.clone());
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i).sub(&c);
            m.set(i, i, v);
        }
        m
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut out = RingMatrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Poly {
        let acc = (0..self.rows.min(self.cols)).fold(Poly::zero(), |acc, i| acc.add(self.get(i, i)));
        self.ring.normalize(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.as_constant().is_some_and(|c| c.is_one())
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Decides nilpotency by powering; `A^n = 0` suffices over reduced rings, and
    /// nilpotent coefficients can raise the bound by the nilpotency index.
    pub fn is_nilpotent(&self) -> Result<bool> {
        let bound = self.rows * self.ring.nilpotency_index().unwrap_or(1).max(1) as usize;
        let mut p = self.clone();
        for _ in 1..bound.max(1) {
            if p.is_zero() {
                return Ok(true);
            }
            p = p.mul(self)?;
        }
        Ok(p.is_zero())
    }

    pub fn pow(&self, e: u32) -> Result<RingMatrix> {
        let mut acc = RingMatrix::identity(&self.ring, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Substitutes a rational point in every entry.
    pub fn eval(&self, pt: &[Rational]) -> Result<QMatrix> {
        self.ring.check_point(pt)?;
        Ok((0..self.rows).map(|i| self.row(i).iter().map(|p| p.eval(pt)).collect()).collect())
    }

    /// Rational matrix when every entry is a constant.
    pub fn as_rational(&self) -> Option<QMatrix> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| if p.is_zero() { Some(Rational::zero()) } else { p.as_constant() }).collect())
            .collect()
    }

    /// Entry-wise image under a map to another ring.
    pub fn map(&self, ring: &Ring, f: impl Fn(&Poly) -> Poly) -> RingMatrix {
        RingMatrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| ring.normalize(f(p))).collect(),
        }
    }

    /// `Tr(A^m)` for `m = 1..=m_max`.
    ///
    /// Uses `Tr(A^{a+b}) = Σ (A^a)_{ij} (A^b)_{ji}` so only powers up to `⌈m_max/2⌉` are formed.
    pub fn power_traces(&self, m_max: usize) -> Result<Vec<Poly>> {
        if !self.is_square() {
            return Err(Error::InvalidInput("trace of a non-square matrix".into()));
        }
        let half = m_max.div_ceil(2).max(1);
        let mut powers = vec![self.clone()];
        for _ in 1..half {
            let next = powers.last().unwrap().mul(self)?;
            powers.push(next);
        }
        let n = self.rows;
        let mut out = Vec::with_capacity(m_max);
        for m in 1..=m_max {
            if m <= half {
                out.push(powers[m - 1].trace());
                continue;
            }
            let (a, b) = (&powers[half - 1], &powers[m - half - 1]);
            let mut acc = Poly::zero();
            for i in 0..n {
                for j in 0..n {
                    let (x, y) = (a.get(i, j), b.get(j, i));
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&x.mul(y));
                    }
                }
            }
            out.push(self.ring.normalize(acc));
        }
        Ok(out)
    }

    /// Coefficients of `det(T·I − A)`, constant term first.
    ///
    /// Power sums and Newton's identities (the trace form of the Faddeev–LeVerrier
    /// recurrence); exact because ℚ ⊆ R.
    pub fn char_poly(&self) -> Result<Vec<Poly>> {
        let n = self.rows;
        let sums = if n == 0 { Vec::new() } else { self.power_traces(n)? };
        // e_k: elementary symmetric functions of the eigenvalues
        let mut e: Vec<Poly> = vec![self.ring.one_poly()];
        for k in 1..=n {
            let mut acc = Poly::zero();
            for i in 1..=k {
                let term = self.ring.mul(&e[k - i], &sums[i - 1]);
                acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
            }
            e.push(acc.scale(&Rational::new(1, k as i64)));
        }
        let mut coeffs = vec![Poly::zero(); n + 1];
        for (k, ek) in e.into_iter().enumerate() {
            coeffs[n - k] = if k % 2 == 0 { ek } else { ek.neg() };
        }
        Ok(coeffs)
    }

    pub fn det(&self) -> Result<Poly> {
        let cp = self.char_poly()?;
        Ok(if self.rows % 2 == 0 { cp[0].clone() } else { cp[0].neg() })
    }

    /// Classical adjoint via Cayley–Hamilton.
    pub fn adjugate(&self) -> Result<RingMatrix> {
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let cp = self.char_poly()?;
        // adj(A) = (-1)^{n-1} (A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I)
        let mut acc = RingMatrix::identity(&self.ring, n);
        for k in (1..n).rev() {
            acc = acc.mul(self)?;
            let id_c = RingMatrix::identity(&self.ring, n).scale(&cp[k]);
            acc = acc.add(&id_c)?;
        }
        Ok(if n % 2 == 1 { acc } else { acc.scale_rational(&Rational::from_int(-1)) })
    }

    /// Inverse when the determinant is a unit.
    pub fn inverse(&self) -> Result<Option<RingMatrix>> {
        if !self.is_square() {
            return Err(Error::InvalidInput("inverse of a non-square matrix".into()));
        }
        let d = self.det()?;
        match self.ring.inverse(&d)? {
            Some(dinv) => Ok(Some(self.adjugate()?.scale(&dinv))),
            None => Ok(None),
        }
    }

    /// Matrix of strings, for JSON output.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| self.ring.format(p)).collect()).collect()
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_small() {
        let r = Ring::laurent(&["t"]).unwrap();
        let m = RingMatrix::parse(&r, &[&["0", "0", "0"], &["0", "2*t", "0"], &["0", "0", "-2*t"]]).unwrap();
        let cp = m.char_poly().unwrap();
        let want: Vec<Poly> = ["0", "-4*t^2", "0", "1"].iter().map(|s| r.parse_poly(s).unwrap()).collect();
        assert_eq!(cp, want);
    }

    #[test]
    fn inverse_unimodular() {
        let r = Ring::laurent(&["t"]).unwrap();
        let m = RingMatrix::parse(&r, &[&["1", "t"], &["0", "1"]]).unwrap();
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(inv, RingMatrix::parse(&r, &[&["1", "-t"], &["0", "1"]]).unwrap());
        assert!(m.mul(&inv).unwrap().is_identity());
        let s = RingMatrix::parse(&r, &[&["1+t", "0"], &["0", "1"]]).unwrap();
        assert!(s.inverse().unwrap().is_none());
    }

    #[test]
    fn quadric_matrix_squares_to_one() {
        let r = Ring::quotient(&["a", "b", "c"], &["a^2+b*c-1"]).unwrap();
        let p = RingMatrix::parse(&r, &[&["a", "b"], &["c", "-a"]]).unwrap();
        assert!(p.mul(&p).unwrap().is_identity());
        assert_eq!(p.det().unwrap(), r.parse_poly("-1").unwrap());
    }

    #[test]
    fn power_traces_match_direct() {
        let r = Ring::polynomial(&["x", "y"]).unwrap();
        let m = RingMatrix::parse(&r, &[&["x", "1", "0"], &["y", "0", "x*y"], &["1", "x", "2"]]).unwrap();
        let tr = m.power_traces(7).unwrap();
        for k in 1..=7u32 {
            assert_eq!(tr[k as usize - 1], m.pow(k).unwrap().trace());
        }
        let adj = m.adjugate().unwrap();
        let d = m.det().unwrap();
        assert_eq!(m.mul(&adj).unwrap(), RingMatrix::identity(&r, 3).scale(&d));
    }
}
