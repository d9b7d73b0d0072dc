//! Dense univariate polynomials over ℚ, constant term first.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rational::int_lcm;
use super::Rational;

pub type QPoly = Vec<Rational>;

pub fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

/// Degree; `None` for the zero polynomial.
pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * x) + c)
}

pub fn derivative(p: &[Rational]) -> QPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * &Rational::from_int(i as i64)).collect())
}

pub fn monic(p: &[Rational]) -> QPoly {
    let p = trim(p.to_vec());
    match p.last() {
        Some(lead) => {
            let inv = lead.recip();
            p.iter().map(|c| c * &inv).collect()
        }
        None => p,
    }
}

pub fn mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

/// `(q, r)` with `a = q·b + r`, `deg r < deg b`.
pub fn divmod(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv;
        if c.is_zero() {
            continue;
        }
        for (i, d) in b.iter().enumerate() {
            r[k + i] -= &(&c * d);
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

/// Monic gcd.
pub fn gcd(a: &[Rational], b: &[Rational]) -> QPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Monic squarefree part `p / gcd(p, p')`.
pub fn squarefree_part(p: &[Rational]) -> QPoly {
    let g = gcd(p, &derivative(p));
    monic(&divmod(p, &g).0)
}

fn sign_changes(seq: &[QPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in seq {
        let v = eval(s, x);
        let sg = if v.is_zero() {
            continue;
        } else if v.is_negative() {
            -1
        } else {
            1
        };
        if last != 0 && sg != last {
            n += 1;
        }
        last = sg;
    }
    n
}

fn sturm(p: &[Rational]) -> Vec<QPoly> {
    let mut seq = vec![trim(p.to_vec()), derivative(p)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = divmod(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn floor(x: &Rational) -> BigInt {
    let (n, d) = (x.numer(), x.denom());
    let q = &n / &d;
    if n.is_negative() && !(&q * &d == n) {
        q - 1
    } else {
        q
    }
}

/// All rational roots when `p` splits into distinct linear factors over ℚ, else `None`.
///
/// The substitution `T = y/D` makes `p` monic with integer coefficients, so every
/// rational root is an integer `y`; roots are isolated with a Sturm sequence
/// until each interval holds at most one integer, which is then tested exactly.
pub fn split_roots(p: &[Rational]) -> Option<Vec<Rational>> {
    let m = squarefree_part(p);
    let d = degree(&m)?;
    if d == 0 {
        return Some(Vec::new());
    }
    let den = m.iter().fold(BigInt::from(1), |acc, c| int_lcm(&acc, &c.denom()));
    let dq = Rational::from_bigint(den.clone());
    // g(y) = D^d m(y/D)
    let mut scale = Rational::one();
    let mut g = vec![Rational::zero(); d + 1];
    for i in (0..=d).rev() {
        g[i] = &m[i] * &scale;
        scale = &scale * &dq;
    }
    let bound: BigInt = g[..d].iter().fold(BigInt::zero(), |acc, c| acc.max(c.numer().abs())) + 1;
    let seq = sturm(&g);
    let lo = Rational::from_bigint(-bound.clone());
    let hi = Rational::from_bigint(bound);
    let total = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
    if total < d {
        return None;
    }
    let mut roots = Vec::with_capacity(d);
    let mut stack = vec![(lo, hi, total)];
    let one = Rational::one();
    while let Some((a, b, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if &b - &a < one {
            // (a, b] holds at most one integer
            if count > 1 {
                return None;
            }
            let y = Rational::from_bigint(floor(&b));
            if y <= a || !eval(&g, &y).is_zero() {
                return None;
            }
            roots.push(&y / &dq);
            continue;
        }
        let mid = &(&a + &b) * &Rational::new(1, 2);
        let vm = sign_changes(&seq, &mid);
        let left = sign_changes(&seq, &a) - vm;
        stack.push((mid.clone(), b, count - left));
        stack.push((a, mid, left));
    }
    roots.sort();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(xs: &[i64]) -> QPoly {
        xs.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn gcd_and_squarefree() {
        // (T-1)^2 (T+2)
        let p = mul(&mul(&q(&[-1, 1]), &q(&[-1, 1])), &q(&[2, 1]));
        assert_eq!(squarefree_part(&p), mul(&q(&[-1, 1]), &q(&[2, 1])));
        assert_eq!(gcd(&p, &q(&[-1, 1])), q(&[-1, 1]));
    }

    #[test]
    fn roots_of_split_polynomials() {
        // T^3 - 4T
        assert_eq!(split_roots(&q(&[0, -4, 0, 1])).unwrap(), q(&[-2, 0, 2]));
        // (2T - 1)(3T + 2)
        let p = mul(&q(&[-1, 2]), &q(&[2, 3]));
        assert_eq!(split_roots(&p).unwrap(), vec![Rational::new(-2, 3), Rational::new(1, 2)]);
        // T^3 with multiplicity
        assert_eq!(split_roots(&q(&[0, 0, 0, 1])).unwrap(), q(&[0]));
        let wide = mul(&q(&[-1_000_003, 1]), &q(&[1_000_002, 1]));
        assert_eq!(split_roots(&wide).unwrap(), q(&[-1_000_002, 1_000_003]));
    }

    #[test]
    fn nonsplit_detected() {
        assert!(split_roots(&q(&[-2, 0, 1])).is_none());
        assert!(split_roots(&q(&[1, 0, 1])).is_none());
        // T (T^2 - 2) has one rational root only
        assert!(split_roots(&q(&[0, -2, 0, 1])).is_none());
    }
}
