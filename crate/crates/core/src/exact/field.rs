//! The cyclotomic field ℚ(ζ_N) with exact rational coefficients.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub const DEFAULT_ORDER: u32 = 6;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Integer coefficients of Φ_N, constant term first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic order must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic_poly(d));
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut q = vec![0i64; rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd] / lead;
        q[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// Element of ℚ(ζ_N), stored as a polynomial in ζ of degree < φ(N).
///
/// Trailing zero coefficients are trimmed, so the zero element has no
/// coefficients and rationals have at most one. Elements of different orders
/// combine in ℚ(ζ_lcm).
#[derive(Clone)]
pub struct FieldScalar {
    order: u32,
    coeffs: Vec<Rational>,
}

impl FieldScalar {
    pub fn zero() -> Self {
        FieldScalar { order: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let coeffs = if r.is_zero() { Vec::new() } else { vec![r] };
        FieldScalar { order: 1, coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rint(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// Builds a + bζ + cζ² + ... in ℚ(ζ_N), reducing modulo Φ_N.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        assert!(order >= 1);
        let mut s = FieldScalar { order, coeffs };
        s.reduce();
        s
    }

    /// ζ_N^k.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Self::from_coeffs(order, coeffs)
    }

    /// e^{2πi·phase}; the denominator of the phase must divide N.
    pub fn exp_phase(phase: &Rational, order: u32) -> Result<Self> {
        let den = phase.denom().clone();
        let n = BigInt::from(order);
        if !(&n % &den).is_zero() {
            let needed = u64::try_from(den).unwrap_or(u64::MAX);
            return Err(Error::FieldTooSmall { needed, order });
        }
        let k = phase.numer() * (&n / phase.denom());
        let k = k.mod_floor(&n);
        let k: i64 = i64::try_from(k).expect("small exponent");
        Ok(Self::root_of_unity(order, k))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn reduce(&mut self) {
        self.trim();
        if self.coeffs.len() <= 1 {
            return;
        }
        let phi = cyclotomic_poly(self.order);
        let d = phi.len() - 1;
        while self.coeffs.len() > d {
            let top = self.coeffs.len() - 1;
            let c = self.coeffs.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            // monic Φ_N: x^d = -Σ_{j<d} φ_j x^j
            for (j, &pj) in phi[..d].iter().enumerate() {
                if pj != 0 {
                    self.coeffs[top - d + j] -= &c * rint(pj);
                }
            }
        }
        self.trim();
    }

    /// Re-expresses the element in ℚ(ζ_M) for a multiple M of its order.
    pub fn lift(&self, order: u32) -> Self {
        if self.is_rational() {
            return FieldScalar { order, coeffs: self.coeffs.clone() };
        }
        assert!(order % self.order == 0, "cannot embed ℚ(ζ_{}) into ℚ(ζ_{})", self.order, order);
        if order == self.order {
            return self.clone();
        }
        let step = (order / self.order) as usize;
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Self::from_coeffs(order, coeffs)
    }

    fn common_order(a: &Self, b: &Self) -> u32 {
        match (a.is_rational(), b.is_rational()) {
            (true, true) => a.order.max(b.order),
            (true, false) => b.order,
            (false, true) => a.order,
            (false, false) => a.order.lcm(&b.order),
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let n = Self::common_order(a, b);
        (a.lift(n), b.lift(n))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        // extended Euclid: find u with u·a ≡ 1 mod Φ_N
        let phi: Vec<Rational> = cyclotomic_poly(self.order).into_iter().map(rint).collect();
        let (mut r0, mut r1) = (phi, self.coeffs.clone());
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
        while !(r1.len() == 1) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            debug_assert!(!r1.is_empty(), "Φ_N is irreducible, so gcd is a unit");
        }
        let c = r1[0].recip();
        let coeffs = s1.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_coeffs(self.order, coeffs))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Parses the `c0 + c1*z + c2*z^2` form; `z` is ζ_order.
    pub fn parse(s: &str, order: u32) -> Result<Self> {
        let err = || Error::ScalarParse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'/' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coef, power) = if let Some(zpos) = body.find('z') {
                let head = &body[..zpos];
                let tail = &body[zpos + 1..];
                let coef = if head.is_empty() {
                    Rational::one()
                } else {
                    parse_rational(head.strip_suffix('*').ok_or_else(err)?).ok_or_else(err)?
                };
                let power = if tail.is_empty() {
                    1usize
                } else {
                    tail.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                };
                (coef, power)
            } else {
                (parse_rational(body).ok_or_else(err)?, 0)
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Rational::zero());
            }
            coeffs[power] += if neg { -coef } else { coef };
        }
        Ok(Self::from_coeffs(order, coeffs))
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    poly_trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    (poly_trim(q), poly_trim(r))
}

impl PartialEq for FieldScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.is_rational() || other.is_rational() || self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::aligned(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for FieldScalar {}

impl Default for FieldScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for FieldScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for FieldScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = match k {
                0 => fmt_rational(&mag),
                _ => {
                    let z = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if mag.is_one() {
                        z
                    } else {
                        format!("{}*{}", fmt_rational(&mag), z)
                    }
                }
            };
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{self}")
        } else {
            write!(f, "[{self}]_{}", self.order)
        }
    }
}

impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&FieldScalar> for FieldScalar {
    fn add_assign(&mut self, rhs: &FieldScalar) {
        if rhs.is_zero() {
            return;
        }
        let n = Self::common_order(self, rhs);
        if self.order != n {
            *self = self.lift(n);
        }
        let r = if rhs.order == n || rhs.is_rational() { None } else { Some(rhs.lift(n)) };
        let r = r.as_ref().unwrap_or(rhs);
        if self.coeffs.len() < r.coeffs.len() {
            self.coeffs.resize(r.coeffs.len(), Rational::zero());
        }
        for (i, c) in r.coeffs.iter().enumerate() {
            self.coeffs[i] += c;
        }
        self.trim();
    }
}

impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&FieldScalar> for FieldScalar {
    fn sub_assign(&mut self, rhs: &FieldScalar) {
        *self += &(-rhs);
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        if self.is_zero() || rhs.is_zero() {
            return FieldScalar::zero();
        }
        if self.is_rational() {
            let c = &self.coeffs[0];
            return FieldScalar { order: rhs.order, coeffs: rhs.coeffs.iter().map(|x| x * c).collect() };
        }
        if rhs.is_rational() {
            let c = &rhs.coeffs[0];
            return FieldScalar { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() };
        }
        let (a, b) = FieldScalar::aligned(self, rhs);
        FieldScalar::from_coeffs(a.order, poly_mul(&a.coeffs, &b.coeffs))
    }
}

impl MulAssign<&FieldScalar> for FieldScalar {
    fn mul_assign(&mut self, rhs: &FieldScalar) {
        *self = &*self * rhs;
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: &FieldScalar) -> FieldScalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl std::iter::Sum for FieldScalar {
    fn sum<I: Iterator<Item = FieldScalar>>(iter: I) -> Self {
        let mut acc = FieldScalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl std::iter::Product for FieldScalar {
    fn product<I: Iterator<Item = FieldScalar>>(iter: I) -> Self {
        let mut acc = FieldScalar::one();
        for x in iter {
            acc *= &x;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn zeta6_plus_inverse_is_one() {
        let z = FieldScalar::root_of_unity(6, 1);
        let zi = FieldScalar::root_of_unity(6, 5);
        assert_eq!(&z + &zi, FieldScalar::one());
        assert_eq!(zi, z.inv().unwrap());
        assert!(z.pow(6).unwrap().is_one());
        assert!(!z.pow(3).unwrap().is_one());
    }

    #[test]
    fn minus_one_squared() {
        let m = FieldScalar::root_of_unity(2, 1);
        assert_eq!(m, FieldScalar::from_int(-1));
        assert!((&m * &m).is_one());
    }

    #[test]
    fn zero_absorbs_and_division_by_zero_errors() {
        let a = FieldScalar::parse("3/2 - 2*z", 6).unwrap();
        assert!((&a * &FieldScalar::zero()).is_zero());
        assert_eq!(a.checked_div(&FieldScalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn lifting_between_orders() {
        let w = FieldScalar::root_of_unity(3, 1);
        let z = FieldScalar::root_of_unity(6, 2);
        assert_eq!(w, z);
        let i = FieldScalar::root_of_unity(4, 1);
        let p = &w * &i;
        assert_eq!(p.order(), 12);
        assert_eq!(p, FieldScalar::root_of_unity(12, 7));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "1", "-1/2", "z", "1/2 - z", "-3 + 2/3*z", "-z"] {
            let x = FieldScalar::parse(s, 6).unwrap();
            assert_eq!(x.to_string(), s);
        }
        let x = FieldScalar::parse("1 + z^2", 6).unwrap();
        assert_eq!(x, FieldScalar::root_of_unity(6, 1));
        assert!(FieldScalar::parse("1 + ", 6).is_err());
        assert!(FieldScalar::parse("q", 6).is_err());
    }

    #[test]
    fn exp_phase_requires_divisibility() {
        assert_eq!(FieldScalar::exp_phase(&rat(1, 2), 6).unwrap(), FieldScalar::from_int(-1));
        assert!(matches!(FieldScalar::exp_phase(&rat(1, 4), 6), Err(Error::FieldTooSmall { needed: 4, order: 6 })));
    }
}
