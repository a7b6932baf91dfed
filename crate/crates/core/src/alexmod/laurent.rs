use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer Laurent polynomial in `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(c: BigInt, deg: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        LaurentPoly { coeffs }
    }

    /// Coefficients listed from `lowest` upward.
    pub fn from_coeffs<C: Into<BigInt>>(lowest: i64, cs: impl IntoIterator<Item = C>) -> Self {
        let mut p = Self::zero();
        for (i, c) in cs.into_iter().enumerate() {
            p.add_term(lowest + i as i64, c.into());
        }
        p
    }

    /// `t^k - 1` for any integer `k`.
    pub fn t_pow_minus_one(k: i64) -> Self {
        let mut p = Self::monomial(BigInt::one(), k);
        p.add_term(0, -BigInt::one());
        p
    }

    pub fn add_term(&mut self, deg: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(deg) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn coeff(&self, deg: i64) -> BigInt {
        self.coeffs.get(&deg).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_degree - min_degree`; zero for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Whether this is `±t^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.values().next().unwrap().magnitude().is_one()
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, c)| (d + k, c.clone()))
                .collect(),
        }
    }

    /// Substitute `t ↦ sign · t^k`.
    pub fn substitute(&self, sign: i64, k: i64) -> Self {
        let mut p = Self::zero();
        for (&d, c) in &self.coeffs {
            let c = if sign < 0 && d.rem_euclid(2) == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            p.add_term(d * k, c);
        }
        p
    }

    /// Canonical representative of the class `±t^k · self`: lowest degree 0
    /// and positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let Some(lo) = self.min_degree() else {
            return Self::zero();
        };
        let p = self.shift(-lo);
        if p.leading().unwrap().is_negative() {
            -p
        } else {
            p
        }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn associate(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn eval_int(&self, x: &BigInt) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if x.is_zero() && self.min_degree().unwrap() < 0 {
            return None;
        }
        let lo = self.min_degree().unwrap().min(0);
        let hi = self.max_degree().unwrap();
        // Horner on t^{-lo} p(t), then divide out
        let mut acc = BigInt::zero();
        for d in (lo..=hi).rev() {
            acc = acc * x + self.coeff(d);
        }
        if lo < 0 {
            let den = num_traits::pow(x.clone(), (-lo) as usize);
            let (q, r) = acc.div_rem(&den);
            if r.is_zero() {
                return Some(q);
            }
            return None;
        }
        Some(acc)
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&d, c)| z.powi(d as i32) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Dense coefficient vector of `t^{-min} self` (constant term first).
    pub fn dense(&self) -> (i64, Vec<BigInt>) {
        let Some(lo) = self.min_degree() else {
            return (0, Vec::new());
        };
        let hi = self.max_degree().unwrap();
        ((lo), (lo..=hi).map(|d| self.coeff(d)).collect())
    }

    fn from_dense(lo: i64, v: &[BigInt]) -> Self {
        Self::from_coeffs(lo, v.iter().cloned())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact quotient `self / d` when `d` divides `self` in `Z[t^{±1}]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (alo, a) = self.dense();
        let (blo, b) = d.dense();
        let (q, r) = dense_divrem(&a, &b)?;
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(alo - blo, &q))
    }

    /// Greatest common divisor in `Z[t^{±1}]`, normalized.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let c = self.content().gcd(&other.content());
        let mut a = primitive(self.dense().1);
        let mut b = primitive(other.dense().1);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = if r.iter().all(|x| x.is_zero()) {
                vec![]
            } else {
                primitive(r)
            };
        }
        (Self::from_dense(0, &a) * &Self::constant(c)).normalized()
    }

    /// Coefficients of `self mod (t^n - 1)` as a length-`n` vector indexed by
    /// exponent residue.
    pub fn mod_cyclic(&self, n: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        for (&d, c) in &self.coeffs {
            v[d.rem_euclid(n as i64) as usize] += c;
        }
        v
    }

    pub fn derivative(&self) -> Self {
        let mut p = Self::zero();
        for (&d, c) in &self.coeffs {
            p.add_term(d - 1, c * d);
        }
        p
    }

    /// Coefficients as `i64` lowest first, for display and JSON.
    pub fn to_i64_vec(&self) -> Option<(i64, Vec<i64>)> {
        let (lo, v) = self.dense();
        let v: Option<Vec<i64>> = v.iter().map(|c| c.to_i64()).collect();
        v.map(|v| (lo, v))
    }
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = trim(v);
    let c = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if c.is_zero() || c.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &c).collect()
}

fn dense_divrem(a: &[BigInt], b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lb = b.last().unwrap().clone();
    if r.len() < b.len() {
        return Some((vec![BigInt::zero()], r));
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let top = r[i + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    Some((q, trim(r)))
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let top = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &top * bj;
        }
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(BigInt::zero());
        }
    }
    r
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(d, c)| (d, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (&d, c) in &o.coeffs {
            p.add_term(d, c.clone());
        }
        p
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (&d, c) in &o.coeffs {
            p.add_term(d, -c.clone());
        }
        p
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&d1, c1) in &self.coeffs {
            for (&d2, c2) in &o.coeffs {
                p.add_term(d1 + d2, c1 * c2);
            }
        }
        p
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: &LaurentPoly) -> LaurentPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || d == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(lo: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(lo, c.iter().copied())
    }

    #[test]
    fn display() {
        assert_eq!(p(0, &[1, -3, 1]).to_string(), "t^2 - 3t + 1");
        assert_eq!(p(-1, &[-1, 0, 2]).to_string(), "2t - t^-1");
        assert_eq!(LaurentPoly::one().to_string(), "1");
    }

    #[test]
    fn normalization() {
        let a = p(-3, &[-1, 3, -1]);
        assert_eq!(a.normalized(), p(0, &[1, -3, 1]));
        assert!(a.associate(&p(5, &[1, -3, 1])));
    }

    #[test]
    fn exact_division() {
        let a = p(0, &[-1, 0, 0, 0, 0, 0, 1]); // t^6 - 1
        let b = p(0, &[1, -1, 1]);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(p(0, &[1, 1]).div_exact(&p(0, &[2, 1])).is_none());
        assert_eq!(
            p(-2, &[3, 3]).div_exact(&p(5, &[1, 1])).unwrap(),
            p(-7, &[3])
        );
    }

    #[test]
    fn gcd_of_products() {
        let f = p(0, &[1, -1, 1]);
        let g = p(0, &[1, -3, 1]);
        let h = p(0, &[2, 1]);
        let a = &(&f * &g) * &p(0, &[6]);
        let b = &(&f * &h) * &p(3, &[4]);
        assert_eq!(a.gcd(&b), f.shift(0) * p(0, &[2]));
        assert_eq!(g.gcd(&h), LaurentPoly::one());
    }

    #[test]
    fn cyclic_reduction_and_substitution() {
        let a = p(-1, &[1, 2, 3, 4]);
        assert_eq!(
            a.mod_cyclic(2),
            vec![BigInt::from(2 + 4), BigInt::from(1 + 3)]
        );
        assert_eq!(p(0, &[1, -3, 1]).substitute(-1, 1), p(0, &[1, 3, 1]));
        assert_eq!(p(0, &[1, 1]).substitute(1, -1), p(-1, &[1, 1]));
    }

    #[test]
    fn evaluation() {
        let a = p(0, &[1, -3, 1]);
        assert_eq!(a.eval_int(&BigInt::from(1)), Some(BigInt::from(-1)));
        assert_eq!(a.eval_int(&BigInt::from(-1)), Some(BigInt::from(5)));
        assert_eq!(
            p(-1, &[2, 2]).eval_int(&BigInt::from(2)),
            Some(BigInt::from(3))
        );
    }
}
