//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` with a
//! common positive denominator. Operands from different fields are lifted
//! to `Q(ζ_lcm)` automatically.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug)]
struct FieldTable {
    n: u64,
    phi: usize,
    /// Φ_N, monic, constant term first.
    cyclo: Vec<BigInt>,
    /// `ζ^k` reduced, for `0 ≤ k < max(N, 2φ - 1)`.
    powers: Vec<Vec<BigInt>>,
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lb;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for the proper divisors d
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn table(n: u64) -> Arc<FieldTable> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let cyclo = cyclotomic_poly(n);
    let phi = cyclo.len() - 1;
    let count = (n as usize).max(2 * phi).max(1);
    let mut powers = Vec::with_capacity(count);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..count {
        powers.push(cur.clone());
        // multiply by x and reduce by the monic Φ_N
        let top = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for i in 0..phi {
                cur[i] -= &top * &cyclo[i];
            }
        }
    }
    let t = Arc::new(FieldTable {
        n,
        phi,
        cyclo,
        powers,
    });
    cache.lock().unwrap().insert(n, t.clone());
    t
}

/// Element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<FieldTable>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        CycNum {
            field: table(1),
            num: vec![v.into()],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        CycNum {
            field: table(1),
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        }
        .normalized()
    }

    /// `ζ_N^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let f = table(n);
        let e = k.rem_euclid(n as i64) as usize;
        CycNum {
            num: f.powers[e].clone(),
            field: f,
            den: BigInt::one(),
        }
    }

    /// Build from power-basis coefficients over `Q(ζ_N)`.
    pub fn from_coeffs(n: u64, coeffs: &[BigRational]) -> Self {
        let f = table(n);
        assert_eq!(coeffs.len(), f.phi, "expected φ(N) coefficients");
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        CycNum { field: f, num, den }.normalized()
    }

    pub fn order(&self) -> u64 {
        self.field.n
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Rational value if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalized(mut self) -> Self {
        if self.is_zero() {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_negative() {
            self.den = -self.den;
            for c in self.num.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
        self
    }

    /// The same element viewed in `Q(ζ_m)`; `N` must divide `m`.
    pub fn lift(&self, m: u64) -> Self {
        let n = self.field.n;
        if n == m {
            return self.clone();
        }
        assert!(m.is_multiple_of(n), "cannot lift Q(ζ_{n}) into Q(ζ_{m})");
        let f = table(m);
        let step = (m / n) as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, y) in num.iter_mut().zip(&f.powers[(k * step) % m as usize]) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        CycNum {
            field: f,
            num,
            den: self.den.clone(),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.field.n == b.field.n {
            return (a.clone(), b.clone());
        }
        let m = a.field.n.lcm(&b.field.n);
        (a.lift(m), b.lift(m))
    }

    fn with_same_field<'a>(a: &'a Self, b: &'a Self) -> Option<(&'a Self, &'a Self)> {
        (a.field.n == b.field.n).then_some((a, b))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let (a, b);
        let (x, y) = match Self::with_same_field(self, o) {
            Some(p) => p,
            None => {
                (a, b) = Self::common(self, o);
                (&a, &b)
            }
        };
        let num = if x.den == y.den {
            x.num.iter().zip(&y.num).map(|(p, q)| p + q).collect()
        } else {
            x.num
                .iter()
                .zip(&y.num)
                .map(|(p, q)| p * &y.den + q * &x.den)
                .collect()
        };
        let den = if x.den == y.den {
            x.den.clone()
        } else {
            &x.den * &y.den
        };
        CycNum {
            field: x.field.clone(),
            num,
            den,
        }
        .normalized()
    }

    pub fn neg_ref(&self) -> Self {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.field.n == 1 {
            return o.scale_rational(&self.num[0], &self.den);
        }
        if o.field.n == 1 {
            return self.scale_rational(&o.num[0], &o.den);
        }
        let (a, b);
        let (x, y) = match Self::with_same_field(self, o) {
            Some(p) => p,
            None => {
                (a, b) = Self::common(self, o);
                (&a, &b)
            }
        };
        let f = &x.field;
        let phi = f.phi;
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, p) in x.num.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in y.num.iter().enumerate() {
                if !q.is_zero() {
                    conv[i + j] += p * q;
                }
            }
        }
        let mut num: Vec<BigInt> = conv[..phi].to_vec();
        for (k, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (r, pw) in num.iter_mut().zip(&f.powers[k]) {
                if !pw.is_zero() {
                    *r += c * pw;
                }
            }
        }
        CycNum {
            field: f.clone(),
            num,
            den: &x.den * &y.den,
        }
        .normalized()
    }

    fn scale_rational(&self, p: &BigInt, q: &BigInt) -> Self {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * p).collect(),
            den: &self.den * q,
        }
        .normalized()
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let f = &self.field;
        if f.phi == 1 || self.num[1..].iter().all(|c| c.is_zero()) {
            let c = &self.num[0];
            return CycNum {
                field: f.clone(),
                num: {
                    let mut v = vec![BigInt::zero(); f.phi];
                    v[0] = self.den.clone();
                    v
                },
                den: c.clone(),
            }
            .normalized();
        }
        // extended Euclid in Q[x] against Φ_N
        let q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        };
        let mut r0 = q(&f.cyclo);
        let mut r1 = trim_q(q(&self.num));
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (quo, rem) = divrem_q(&r0, &r1);
            let s2 = sub_q(&s0, &mul_q(&quo, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant
        let c = r0[0].clone();
        let mut coeffs: Vec<BigRational> = s0.iter().map(|x| x / &c).collect();
        coeffs.resize(f.phi, BigRational::zero());
        // multiply back by den: (num/den)^{-1} = den · num^{-1}
        let d = BigRational::from_integer(self.den.clone());
        let coeffs: Vec<BigRational> = coeffs.into_iter().map(|x| x * &d).collect();
        CycNum::from_coeffs(f.n, &coeffs)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let f = &self.field;
        let n = f.n as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, y) in num.iter_mut().zip(&f.powers[(n - k % n) % n]) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        CycNum {
            field: f.clone(),
            num,
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            b = b.mul_ref(&b);
            k >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        let n = self.field.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                z += Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n)
                    * c.to_f64().unwrap_or(f64::NAN);
            }
        }
        z / den
    }
}

fn trim_q(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    if v.is_empty() {
        v.push(BigRational::zero());
    }
    v
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_q(out)
}

fn sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim_q(out)
}

fn divrem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim_q(a.to_vec());
    let b = trim_q(b.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &b[db];
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let d = &c * bj;
            r[i + j] -= d;
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    (trim_q(q), trim_q(r))
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.field.n == other.field.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            terms.push(match k {
                0 => format!("{r}"),
                1 => format!("{r}*z{}", self.field.n),
                _ => format!("{r}*z{}^{k}", self.field.n),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            #[serde(rename = "N")]
            n: u64,
            coeffs: Vec<String>,
        }
        Repr {
            n: self.field.n,
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            #[serde(rename = "N")]
            n: u64,
            coeffs: Vec<String>,
        }
        let r = Repr::deserialize(d)?;
        if r.n == 0 {
            return Err(D::Error::custom("N must be positive"));
        }
        let coeffs: Vec<BigRational> = r
            .coeffs
            .iter()
            .map(|c| {
                c.trim()
                    .parse::<BigRational>()
                    .map_err(|_| D::Error::custom(format!("bad rational `{c}`")))
            })
            .collect::<Result<_, _>>()?;
        if coeffs.len() != table(r.n).phi {
            return Err(D::Error::custom("coefficient count must equal φ(N)"));
        }
        Ok(CycNum::from_coeffs(r.n, &coeffs))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, o: &CycNum) -> CycNum {
                self.$f(o)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                self.$f(&o)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Div<&CycNum> for &CycNum {
    type Output = CycNum;
    fn div(self, o: &CycNum) -> CycNum {
        self.mul_ref(&o.inv())
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    table(n).phi as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polys() {
        let as_i64 = |n| {
            cyclotomic_poly(n)
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(15), 8);
    }

    #[test]
    fn roots_of_unity_relations() {
        for n in [1u64, 2, 3, 4, 5, 6, 12, 15] {
            let w = z(n, 1);
            assert!(w.pow(n as i64).is_one());
            let s = (0..n as i64).fold(CycNum::zero(), |acc, k| acc + z(n, k));
            if n > 1 {
                assert!(s.is_zero(), "sum of {n}-th roots");
            }
        }
    }

    #[test]
    fn inverse_and_conjugate() {
        let a = &(&z(12, 1) + &CycNum::from_int(3)) - &z(12, 5);
        let b = a.inv();
        assert!((&a * &b).is_one());
        let c = a.conj();
        let norm = &a * &c;
        assert_eq!(norm.conj(), norm);
        let approx = a.to_c64() * a.to_c64().conj();
        assert!((norm.to_c64() - approx).norm() < 1e-12);
    }

    #[test]
    fn mixed_fields_lift() {
        // ζ_4 = ζ_12^3, ζ_3 = ζ_12^4
        assert_eq!(z(4, 1), z(12, 3));
        let s = &z(4, 1) * &z(3, 1);
        assert_eq!(s, z(12, 7));
        assert_eq!(s.order(), 12);
        assert_eq!(CycNum::from_int(2), CycNum::from_int(2).lift(10));
    }

    #[test]
    fn serde_round_trip() {
        let a = &(&z(5, 2) * &CycNum::from_rational(&BigRational::new(3.into(), 7.into())))
            - &CycNum::one();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with("{\"N\":5,\"coeffs\":["));
        let b: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert!(serde_json::from_str::<CycNum>("{\"N\":5,\"coeffs\":[\"1\"]}").is_err());
    }

    #[test]
    fn numeric_value() {
        let w = z(8, 1);
        let v = w.to_c64();
        assert!((v - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)).norm() < 1e-14);
    }
}
