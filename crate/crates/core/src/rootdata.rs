//! Root systems from Cartan matrices.
//!
//! Roots are integer vectors in the basis of simple roots. Elements of the
//! Cartan subalgebra are written either in the coroot basis `α_i^∨` or in the
//! fundamental coweight basis `ω_i^∨`; in the latter the pairing with a root is
//! the plain dot product.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::linalg;
use crate::rings::{Poly, Rational, Ring};

/// `a_ij = ⟨α_i^∨, α_j⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    #[serde(skip)]
    label: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum CartanJson {
    Named {
        #[serde(rename = "type")]
        kind: String,
        rank: usize,
    },
    Explicit {
        matrix: Vec<Vec<i64>>,
    },
}

impl<'de> Deserialize<'de> for CartanMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CartanJson::deserialize(d)?;
        let m = match raw {
            CartanJson::Named { kind, rank } => CartanMatrix::of_type(&kind, rank),
            CartanJson::Explicit { matrix } => CartanMatrix::new(matrix),
        };
        m.map_err(serde::de::Error::custom)
    }
}

impl PartialEq for CartanMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for CartanMatrix {}

impl CartanMatrix {
    /// Validates shape, sign pattern and finite type.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty Cartan matrix".into()));
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("Cartan matrix must be square".into()));
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(Error::NotFiniteType(format!("diagonal entry {} is {}", i + 1, entries[i][i])));
            }
            for j in 0..n {
                if i != j {
                    if entries[i][j] > 0 {
                        return Err(Error::NotFiniteType(format!("positive off-diagonal entry at ({},{})", i + 1, j + 1)));
                    }
                    if (entries[i][j] == 0) != (entries[j][i] == 0) {
                        return Err(Error::NotFiniteType(format!("zero pattern not symmetric at ({},{})", i + 1, j + 1)));
                    }
                }
            }
        }
        let m = CartanMatrix { entries, label: None };
        let d = m.symmetrizer()?;
        // Sylvester's criterion on D·A
        let b: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| &d[i] * &Rational::from_int(m.entries[i][j])).collect())
            .collect();
        for k in 1..=n {
            let minor: Vec<Vec<Rational>> = b[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !linalg::det(&minor).is_positive() {
                return Err(Error::NotFiniteType(format!("leading principal minor of order {k} is not positive")));
            }
        }
        Ok(m)
    }

    /// Standard matrices: A_ℓ, B_ℓ, C_ℓ, D_ℓ, E_6..8, F_4, G_2.
    pub fn of_type(kind: &str, rank: usize) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("no root system of type {kind}{rank}"));
        let kind_uc = kind.trim().to_ascii_uppercase();
        let n = rank;
        let mut a = vec![vec![0i64; n]; n];
        let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
            for i in 0..n {
                a[i][i] = 2;
            }
            for i in 0..upto.saturating_sub(1) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        };
        match kind_uc.as_str() {
            "A" if n >= 1 => chain(&mut a, n),
            "B" if n >= 2 => {
                chain(&mut a, n);
                a[n - 2][n - 1] = -2;
            }
            "C" if n >= 2 => {
                chain(&mut a, n);
                a[n - 1][n - 2] = -2;
            }
            "D" if n >= 4 => {
                chain(&mut a, n - 1);
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
            "E" if (6..=8).contains(&n) => {
                // Bourbaki numbering: 1-3-4-5-..., 2 attached to 4
                for i in 0..n {
                    a[i][i] = 2;
                }
                let mut link = |i: usize, j: usize| {
                    a[i - 1][j - 1] = -1;
                    a[j - 1][i - 1] = -1;
                };
                link(1, 3);
                link(2, 4);
                for i in 3..n {
                    link(i, i + 1);
                }
            }
            "F" if n == 4 => {
                chain(&mut a, 4);
                a[1][2] = -2;
            }
            "G" if n == 2 => {
                a = vec![vec![2, -1], vec![-3, 2]];
            }
            _ => return Err(bad()),
        }
        let mut m = CartanMatrix::new(a)?;
        m.label = Some(format!("{kind_uc}{n}"));
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Type label such as `"A2"` when built from a name or recognized.
    pub fn label(&self) -> Option<String> {
        self.label.clone().or_else(|| self.is_type_a().then(|| format!("A{}", self.rank())))
    }

    /// True for the standard A_ℓ matrix with the simple roots along a path in order.
    pub fn is_type_a(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let want = if i == j {
                    2
                } else if i.abs_diff(j) == 1 {
                    -1
                } else {
                    0
                };
                self.entries[i][j] == want
            })
        })
    }

    /// Positive `d_i` with `d_i a_ij = d_j a_ji`, so that `(α_i, α_j) = d_i a_ij`.
    pub fn symmetrizer(&self) -> Result<Vec<Rational>> {
        let n = self.rank();
        let mut d: Vec<Option<Rational>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(Rational::one());
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if i == j || self.entries[i][j] == 0 {
                        continue;
                    }
                    let dj = d[i].as_ref().unwrap() * &Rational::new(self.entries[i][j], self.entries[j][i]);
                    match &d[j] {
                        None => {
                            d[j] = Some(dj);
                            queue.push_back(j);
                        }
                        Some(x) if *x != dj => {
                            return Err(Error::NotFiniteType("matrix is not symmetrizable".into()));
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(d.into_iter().map(Option::unwrap).collect())
    }
}

/// Roots, coroots and coweights of a finite root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    /// Positive roots sorted by (height, lex descending), then their negatives in the same order.
    roots: Vec<Vec<i64>>,
    n_pos: usize,
    index: HashMap<Vec<i64>, usize>,
    /// Row `i` is `ω_i^∨` in the coroot basis.
    coweights: Vec<Vec<Rational>>,
    symmetrizer: Vec<Rational>,
}

const MAX_ROOTS: usize = 10_000;

impl RootSystem {
    pub fn new(cartan: CartanMatrix) -> Result<Self> {
        let n = cartan.rank();
        let symmetrizer = cartan.symmetrizer()?;
        let simple: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for s in &simple {
            seen.insert(s.clone(), ());
            queue.push_back(s.clone());
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let img = reflect(&cartan, i, &beta);
                if !seen.contains_key(&img) {
                    if seen.len() >= MAX_ROOTS {
                        return Err(Error::NotFiniteType("reflection closure does not terminate".into()));
                    }
                    seen.insert(img.clone(), ());
                    queue.push_back(img);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.keys().filter(|r| r.iter().all(|&c| c >= 0)).cloned().collect();
        if pos.len() * 2 != seen.len() {
            return Err(Error::Invariant("roots are not split into positive and negative".into()));
        }
        pos.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let a: Vec<Vec<Rational>> = cartan.entries.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        let coweights = linalg::inverse(&a).ok_or_else(|| Error::NotFiniteType("singular Cartan matrix".into()))?;
        Ok(RootSystem { cartan, roots, n_pos, index, coweights, symmetrizer })
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    pub fn positive_indices(&self) -> std::ops::Range<usize> {
        0..self.n_pos
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Index of a simple root `α_i` (0-based `i`).
    pub fn simple(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.index[&e]
    }

    pub fn negative(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    /// Index of `α + β` when it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.index_of(&s)
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    /// `ω_i^∨` in the coroot basis (rows of the inverse Cartan matrix).
    pub fn coweights(&self) -> &[Vec<Rational>] {
        &self.coweights
    }

    /// `(α_i, α_i)/2`, the symmetrizing factors.
    pub fn symmetrizer(&self) -> &[Rational] {
        &self.symmetrizer
    }

    /// Invariant form on the root lattice, `(α_i, α_j) = d_i a_ij`.
    pub fn form(&self, a: &[i64], b: &[i64]) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            let mut row = 0i64;
            for j in 0..n {
                row += self.cartan.entries[i][j] * b[j];
            }
            acc += &(&self.symmetrizer[i] * &Rational::from_int(a[i] * row));
        }
        acc
    }

    pub fn root_length2(&self, i: usize) -> Rational {
        self.form(&self.roots[i], &self.roots[i])
    }

    /// `⟨α, α_i^∨⟩ = Σ_j a_ij α_j`.
    pub fn pairing_coroot(&self, root: usize, i: usize) -> i64 {
        self.roots[root].iter().zip(&self.cartan.entries[i]).map(|(x, a)| x * a).sum()
    }

    /// `α^∨` in the coroot basis: `Σ_i c_i (α_i,α_i)/(α,α) α_i^∨`.
    pub fn coroot(&self, root: usize) -> Vec<i64> {
        let len = self.root_length2(root);
        self.roots[root]
            .iter()
            .zip(&self.symmetrizer)
            .map(|(&c, d)| {
                let q = &(&Rational::from_int(2 * c) * d) / &len;
                q.to_i64().expect("coroot coordinates are integers")
            })
            .collect()
    }

    /// Ring-linear pairing `⟨α, Σ c_i ω_i^∨⟩ = Σ c_i α_i` for coweight coordinates over a ring.
    pub fn pairing(&self, root: usize, h: &[Poly], ring: &Ring) -> Poly {
        let acc = self.roots[root]
            .iter()
            .zip(h)
            .filter(|(c, _)| **c != 0)
            .fold(Poly::zero(), |acc, (&c, p)| acc.add(&p.scale(&Rational::from_int(c))));
        ring.normalize(acc)
    }

    /// Rational pairing with coweight coordinates.
    pub fn pairing_q(&self, root: usize, h: &[Rational]) -> Rational {
        self.roots[root].iter().zip(h).map(|(&c, x)| x * &Rational::from_int(c)).sum()
    }

    /// Coweight coordinates of an element given in the coroot basis: `c_j = Σ_i x_i a_ij`.
    pub fn coroot_to_coweight(&self, x: &[Rational]) -> Vec<Rational> {
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).map(|i| &x[i] * &Rational::from_int(self.cartan.entries[i][j])).sum())
            .collect()
    }

    /// Coroot coordinates of an element given in the coweight basis.
    pub fn coweight_to_coroot(&self, c: &[Rational]) -> Vec<Rational> {
        let n = self.rank();
        (0..n).map(|k| (0..n).map(|i| &c[i] * &self.coweights[i][k]).sum()).collect()
    }

    /// Simple reflection `s_i` applied to root coordinates.
    pub fn reflect(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        reflect(&self.cartan, i, beta)
    }

    /// Label such as `"alpha1+2*alpha2"` or `"-alpha1-alpha2"`.
    pub fn label(&self, root: usize) -> String {
        let mut out = String::new();
        for (j, &c) in self.roots[root].iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&format!("{}*", c.abs()));
            }
            out.push_str(&format!("alpha{}", j + 1));
        }
        out
    }

    /// Parses a root label; accepts `"alpha1+2*alpha2"`, `"2alpha2"`, `"-alpha1"`.
    pub fn parse_label(&self, s: &str) -> Result<usize> {
        let bad = |m: &str| Error::Parse(format!("bad root label {s:?}: {m}"));
        let n = self.rank();
        let mut coords = vec![0i64; n];
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(bad("empty"));
        }
        let mut rest = src.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = 1;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if !first {
                return Err(bad("expected + or -"));
            }
            first = false;
            let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let coef: i64 = if digits == 0 { 1 } else { rest[..digits].parse().map_err(|_| bad("coefficient"))? };
            rest = &rest[digits..];
            if digits > 0 {
                rest = rest.strip_prefix('*').unwrap_or(rest);
            }
            rest = rest.strip_prefix("alpha").ok_or_else(|| bad("expected alpha<k>"))?;
            let kd = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let k: usize = rest[..kd].parse().map_err(|_| bad("simple root index"))?;
            rest = &rest[kd..];
            if k == 0 || k > n {
                return Err(bad("simple root index out of range"));
            }
            coords[k - 1] += sign * coef;
        }
        self.index_of(&coords).ok_or_else(|| bad("not a root"))
    }

    /// Checks the structural invariants (root count, closure, duality).
    pub fn verify(&self) -> Result<()> {
        for i in 0..self.rank() {
            for r in &self.roots {
                if self.index_of(&self.reflect(i, r)).is_none() {
                    return Err(Error::Invariant("roots not closed under reflections".into()));
                }
            }
        }
        for r in &self.roots {
            let neg: Vec<i64> = r.iter().map(|c| -c).collect();
            if self.index_of(&neg).is_none() {
                return Err(Error::Invariant("roots not closed under negation".into()));
            }
        }
        let n = self.rank();
        for i in 0..n {
            let wi = self.coroot_to_coweight(&self.coweights[i]);
            for (j, w) in wi.iter().enumerate() {
                if *w != Rational::from_int(i64::from(i == j)) {
                    return Err(Error::Invariant("coweights are not dual to the simple roots".into()));
                }
            }
        }
        if let Some(expected) = self.cartan.label().and_then(|l| expected_root_count(&l)) {
            if expected != self.roots.len() {
                return Err(Error::Invariant(format!("expected {expected} roots, found {}", self.roots.len())));
            }
        }
        Ok(())
    }
}

fn reflect(c: &CartanMatrix, i: usize, beta: &[i64]) -> Vec<i64> {
    let k: i64 = beta.iter().zip(&c.entries[i]).map(|(b, a)| b * a).sum();
    let mut out = beta.to_vec();
    out[i] -= k;
    out
}

/// Classified number of roots for a type label such as `"B3"`.
pub fn expected_root_count(label: &str) -> Option<usize> {
    let (kind, rank) = label.split_at(1);
    let l: usize = rank.parse().ok()?;
    Some(match kind {
        "A" => l * (l + 1),
        "B" | "C" => 2 * l * l,
        "D" => 2 * l * (l - 1),
        "E" => match l {
            6 => 72,
            7 => 126,
            8 => 240,
            _ => return None,
        },
        "F" => 48,
        "G" => 12,
        _ => return None,
    })
}

pub fn build_root_system(c: &CartanMatrix) -> Result<RootSystem> {
    let rs = RootSystem::new(c.clone())?;
    rs.verify()?;
    Ok(rs)
}

/// `Δ₀ = {α : ⟨α, p₀⟩ = 0}` with a base and the Levi index set.
#[derive(Clone, Debug, Serialize)]
pub struct SubsystemData {
    /// Root indices of `Δ₀`.
    pub zero_set: Vec<usize>,
    /// Simple-root indices (0-based) of a standard Levi conjugate to the one of `Δ₀`.
    pub levi_indices: Vec<usize>,
    /// Root indices forming a base `Π_I` of `Δ₀`.
    pub base: Vec<usize>,
    /// True when `Π_I ⊆ Π`, so that `levi_indices` names `Π_I` directly.
    pub standard: bool,
}

impl fmt::Display for SubsystemData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|Δ₀| = {}, base {:?}, I = {:?}", self.zero_set.len(), self.base, self.levi_indices)
    }
}

/// Zero set of `p0` (coweight coordinates), its base, and the Levi set `I`.
///
/// `Δ₀ = ∅` gives `I = ∅`.
pub fn subsystem_base(rs: &RootSystem, p0: &[Rational]) -> SubsystemData {
    let zero_set: Vec<usize> = (0..rs.num_roots()).filter(|&i| rs.pairing_q(i, p0).is_zero()).collect();
    // positive functional: weights prime^n + prime^i, positive on Δ⁺ and tie-free
    let prime: i64 = 1_000_003;
    let n = rs.rank();
    let big = |e: usize| Rational::from_bigint(num_bigint::BigInt::from(prime).pow(e as u32));
    let weights: Vec<Rational> = (0..n).map(|i| &big(n + 1) + &big(i)).collect();
    let phi = |r: usize| -> Rational {
        rs.root(r).iter().zip(&weights).map(|(&c, w)| w * &Rational::from_int(c)).sum()
    };
    let positives: Vec<usize> = zero_set.iter().copied().filter(|&r| phi(r).is_positive()).collect();
    let base: Vec<usize> = positives
        .iter()
        .copied()
        .filter(|&r| {
            !positives.iter().any(|&a| {
                a != r && {
                    let diff: Vec<i64> = rs.root(r).iter().zip(rs.root(a)).map(|(x, y)| x - y).collect();
                    rs.index_of(&diff).is_some_and(|b| positives.contains(&b))
                }
            })
        })
        .collect();
    let standard = base.iter().all(|&b| rs.height(b) == 1);
    // dominant representative of p0 under simple reflections
    let mut c = p0.to_vec();
    while let Some(i) = (0..n).find(|&i| c[i].is_negative()) {
        let ci = c[i].clone();
        for (j, cj) in c.iter_mut().enumerate() {
            *cj -= &(&ci * &Rational::from_int(rs.cartan().entry(i, j)));
        }
    }
    let levi_indices = if standard {
        base.iter().map(|&b| rs.root(b).iter().position(|&x| x == 1).unwrap()).collect()
    } else {
        (0..n).filter(|&i| c[i].is_zero()).collect()
    };
    SubsystemData { zero_set, levi_indices, base, standard }
}

/// Checks that every root of `Δ₀` is a sign-coherent integer combination of the base.
pub fn verify_subsystem(rs: &RootSystem, data: &SubsystemData) -> Result<()> {
    let n = rs.rank();
    let k = data.base.len();
    for &r in &data.zero_set {
        // solve Σ x_b β_b = α over ℚ
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = data.base.iter().map(|&b| Rational::from_int(rs.root(b)[i])).collect();
                row.push(Rational::from_int(rs.root(r)[i]));
                row
            })
            .collect();
        let pivots = linalg::rref(&mut aug);
        if pivots.contains(&k) {
            return Err(Error::Invariant(format!("root {} is outside the span of the base", rs.label(r))));
        }
        let mut x = vec![Rational::zero(); k];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug[row][k].clone();
        }
        if x.iter().any(|v| !v.is_integer()) {
            return Err(Error::Invariant(format!("root {} has non-integral coordinates", rs.label(r))));
        }
        let nonneg = x.iter().all(|v| !v.is_negative());
        let nonpos = x.iter().all(|v| !v.is_positive());
        if !(nonneg || nonpos) {
            return Err(Error::Invariant(format!("root {} has mixed signs", rs.label(r))));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(kind: &str, n: usize) -> RootSystem {
        build_root_system(&CartanMatrix::of_type(kind, n).unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (k, n) in [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("F", 4), ("G", 2), ("E", 6)] {
            let r = rs(k, n);
            assert_eq!(Some(r.num_roots()), expected_root_count(&format!("{k}{n}")), "{k}{n}");
        }
    }

    #[test]
    fn g2_from_matrix() {
        let c = CartanMatrix::new(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        let r = build_root_system(&c).unwrap();
        assert_eq!(r.num_roots(), 12);
        assert_eq!(r.label(r.num_positive() - 1), "2*alpha1+3*alpha2");
    }

    #[test]
    fn a2_positive_roots() {
        let r = rs("A", 2);
        let labels: Vec<String> = r.positive_indices().map(|i| r.label(i)).collect();
        assert_eq!(labels, ["alpha1", "alpha2", "alpha1+alpha2"]);
        assert_eq!(r.parse_label("-alpha1-alpha2").unwrap(), r.negative(2));
        assert_eq!(r.parse_label("alpha2 + alpha1").unwrap(), 2);
        assert!(r.parse_label("2alpha1").is_err());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]), Err(Error::NotFiniteType(_))));
        assert!(matches!(CartanMatrix::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]), Err(Error::NotFiniteType(_))));
        assert!(CartanMatrix::new(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).is_err());
    }

    #[test]
    fn pairing_with_coweights() {
        let r = rs("A", 2);
        let ring = Ring::laurent(&["t"]).unwrap();
        let w1 = vec![ring.one_poly(), Poly::zero()];
        assert_eq!(r.pairing(0, &w1, &ring), ring.one_poly());
        assert_eq!(r.pairing(2, &w1, &ring), ring.one_poly());
        assert!(r.pairing(1, &w1, &ring).is_zero());
    }

    #[test]
    fn subsystem_examples() {
        let r = rs("A", 2);
        let one = Rational::one();
        let zero = Rational::zero();
        let d = subsystem_base(&r, &[one.clone(), zero.clone()]);
        assert_eq!(d.zero_set, vec![1, r.negative(1)]);
        assert_eq!(d.base, vec![1]);
        assert_eq!(d.levi_indices, vec![1]);
        verify_subsystem(&r, &d).unwrap();
        let d0 = subsystem_base(&r, &[zero.clone(), zero.clone()]);
        assert_eq!(d0.zero_set.len(), 6);
        assert_eq!(d0.base, vec![0, 1]);
        let a1 = rs("A", 1);
        let d1 = subsystem_base(&a1, &[one.clone()]);
        assert!(d1.zero_set.is_empty() && d1.base.is_empty() && d1.levi_indices.is_empty());
    }

    #[test]
    fn nonstandard_base() {
        // p0 = ω1 - ω2 kills only ±(α1+α2)
        let r = rs("A", 2);
        let d = subsystem_base(&r, &[Rational::one(), Rational::from_int(-1)]);
        assert_eq!(d.base, vec![2]);
        assert!(!d.standard);
        assert_eq!(d.levi_indices.len(), 1);
        verify_subsystem(&r, &d).unwrap();
    }

    #[test]
    fn coroots_and_coweights() {
        let r = rs("G", 2);
        for i in 0..r.num_roots() {
            let cr = r.coroot(i);
            // ⟨α, α^∨⟩ = 2
            let x: Vec<Rational> = cr.iter().map(|&c| Rational::from_int(c)).collect();
            let cw = r.coroot_to_coweight(&x);
            assert_eq!(r.pairing_q(i, &cw), Rational::from_int(2));
        }
        let b = rs("B", 3);
        b.verify().unwrap();
    }

    #[test]
    fn json_forms() {
        let a: CartanMatrix = serde_json::from_str(r#"{"type":"A","rank":2}"#).unwrap();
        let b: CartanMatrix = serde_json::from_str(r#"{"matrix":[[2,-1],[-1,2]]}"#).unwrap();
        assert_eq!(a.entries(), b.entries());
        assert!(serde_json::from_str::<CartanMatrix>(r#"{"type":"Q","rank":2}"#).is_err());
    }
}
