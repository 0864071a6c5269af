//! Exact arithmetic in the cyclotomic field Q(ζ60).
//!
//! Elements are stored in the power basis 1, ζ, ..., ζ^15 modulo the
//! 60th cyclotomic polynomial, as integer numerators over one positive
//! common denominator. Every root of unity whose order divides 60 lives
//! here, which covers all character values of groups of exponent
//! dividing 60.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Conductor of the field.
pub const N: u64 = 60;
/// Degree of the field over Q.
pub const DEG: usize = 16;

/// Reduction of ζ^k for k in 0..60, as small integer vectors.
fn pow_table() -> &'static [[i64; DEG]; 60] {
    static TABLE: OnceLock<[[i64; DEG]; 60]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Φ60(x) = x^16 + x^14 - x^10 - x^8 - x^6 + x^2 + 1
        let mut tail = [0i64; DEG];
        tail[14] = -1;
        tail[10] = 1;
        tail[8] = 1;
        tail[6] = 1;
        tail[2] = -1;
        tail[0] = -1;
        let mut out = [[0i64; DEG]; 60];
        let mut cur = [0i64; DEG];
        cur[0] = 1;
        for row in out.iter_mut() {
            *row = cur;
            let top = cur[DEG - 1];
            let mut next = [0i64; DEG];
            next[1..DEG].copy_from_slice(&cur[..(DEG - 1)]);
            for (n, t) in next.iter_mut().zip(tail.iter()) {
                *n += top * t;
            }
            cur = next;
        }
        out
    })
}

/// Units of Z/60, the exponents of the Galois automorphisms.
pub fn galois_exponents() -> impl Iterator<Item = u64> {
    (1..N).filter(|j| j.gcd(&N) == 1)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum {
            num: vec![BigInt::zero(); DEG],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut c = Self::zero();
        c.num[0] = BigInt::from(n);
        c
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); DEG];
        num[0] = q.numer().clone();
        CycNum::normalized(num, q.denom().clone())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(n.into(), d.into()))
    }

    /// ζ_n^k. Fails unless n divides 60.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self> {
        if n == 0 || !N.is_multiple_of(n) {
            return Err(Error::BadOrder(n));
        }
        let e = (k.rem_euclid(n as i64) as u64) * (N / n);
        Ok(Self::zeta60(e as i64))
    }

    /// ζ60^k for any integer k.
    pub fn zeta60(k: i64) -> Self {
        let row = &pow_table()[k.rem_euclid(N as i64) as usize];
        CycNum {
            num: row.iter().map(|&v| BigInt::from(v)).collect(),
            den: BigInt::one(),
        }
    }

    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for n in num.iter_mut() {
                *n = -std::mem::take(n);
            }
        }
        let mut g = den.clone();
        for n in &num {
            if g.is_one() {
                break;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if num.iter().all(|n| n.is_zero()) {
            return CycNum {
                num,
                den: BigInt::one(),
            };
        }
        if !g.is_one() {
            for n in num.iter_mut() {
                *n = &*n / &g;
            }
            den /= g;
        }
        CycNum { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|n| n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|n| n.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|n| n.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Coefficient of ζ60^k in the power basis.
    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num[k].clone(), self.den.clone())
    }

    /// Multiply by an integer.
    pub fn scale_int(&self, s: i64) -> Self {
        let s = BigInt::from(s);
        CycNum::normalized(self.num.iter().map(|n| n * &s).collect(), self.den.clone())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNum::normalized(
            self.num.iter().map(|n| n * q.numer()).collect(),
            &self.den * q.denom(),
        )
    }

    /// Image under ζ ↦ ζ^j, for j a unit mod 60.
    pub fn galois(&self, j: u64) -> Self {
        assert!(j.gcd(&N) == 1, "galois exponent {j} is not a unit mod 60");
        let table = pow_table();
        let mut out = vec![BigInt::zero(); DEG];
        for (k, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = &table[((k as u64 * j) % N) as usize];
            for (o, &r) in out.iter_mut().zip(row.iter()) {
                if r != 0 {
                    *o += a * r;
                }
            }
        }
        CycNum::normalized(out, self.den.clone())
    }

    /// Complex conjugation, ζ ↦ ζ^-1.
    pub fn conj(&self) -> Self {
        self.galois(N - 1)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(CycNum::from_rational(&q.recip()));
        }
        let mut others = CycNum::one();
        for j in galois_exponents().filter(|&j| j != 1) {
            others = &others * &self.galois(j);
        }
        let norm = (self * &others)
            .to_rational()
            .expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one();
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

    /// The k with self = ζ60^k, if self is a root of unity.
    pub fn root_exponent(&self) -> Option<u64> {
        if !self.den.is_one() {
            return None;
        }
        let table = pow_table();
        (0..N).find(|&k| {
            table[k as usize]
                .iter()
                .zip(self.num.iter())
                .all(|(&t, n)| *n == BigInt::from(t))
        })
    }

    /// Numerical value, for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        let (mut re, mut im) = (0.0, 0.0);
        for (k, n) in self.num.iter().enumerate() {
            let a = n.to_f64().unwrap_or(f64::NAN) / d;
            let t = 2.0 * std::f64::consts::PI * k as f64 / N as f64;
            re += a * t.cos();
            im += a * t.sin();
        }
        (re, im)
    }

    /// If self = r·ζ60^k with r rational, return (r, k) with k in 0..30.
    fn as_scaled_root(&self) -> Option<(BigRational, u64)> {
        let table = pow_table();
        for k in 0..N / 2 {
            let row = &table[k as usize];
            let lead = row.iter().position(|&t| t != 0)?;
            let r = BigRational::new(self.num[lead].clone(), self.den.clone())
                / BigRational::from_integer(BigInt::from(row[lead]));
            if r.is_zero() {
                continue;
            }
            let ok = row.iter().zip(self.num.iter()).all(|(&t, n)| {
                BigRational::new(n.clone(), self.den.clone())
                    == &r * BigRational::from_integer(BigInt::from(t))
            });
            if ok {
                return Some((r, k));
            }
        }
        None
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { s, pos: 0 };
        p.skip_ws();
        if p.peek().is_none() {
            return Err(p.err("empty coefficient"));
        }
        let v = p.expr()?;
        p.skip_ws();
        if p.pos < s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

/// Parse a coefficient string such as `-z4`, `1/2*(1+z2)` or `z3^2`.
pub fn parse_coeff(s: &str) -> Result<CycNum> {
    CycNum::parse(s)
}

fn add_vec(a: &CycNum, b: &CycNum, sign: i64) -> CycNum {
    if a.den == b.den {
        let num = a
            .num
            .iter()
            .zip(b.num.iter())
            .map(|(x, y)| if sign > 0 { x + y } else { x - y })
            .collect();
        return CycNum::normalized(num, a.den.clone());
    }
    let l = a.den.lcm(&b.den);
    let fa = &l / &a.den;
    let fb = &l / &b.den;
    let num = a
        .num
        .iter()
        .zip(b.num.iter())
        .map(|(x, y)| {
            if sign > 0 {
                x * &fa + y * &fb
            } else {
                x * &fa - y * &fb
            }
        })
        .collect();
    CycNum::normalized(num, l)
}

fn mul_vec(a: &CycNum, b: &CycNum) -> CycNum {
    if a.is_zero() || b.is_zero() {
        return CycNum::zero();
    }
    let den = &a.den * &b.den;
    if a.is_rational() {
        let s = &a.num[0];
        return CycNum::normalized(b.num.iter().map(|n| n * s).collect(), den);
    }
    if b.is_rational() {
        let s = &b.num[0];
        return CycNum::normalized(a.num.iter().map(|n| n * s).collect(), den);
    }
    let mut raw = vec![BigInt::zero(); 2 * DEG - 1];
    for (i, x) in a.num.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.num.iter().enumerate() {
            if !y.is_zero() {
                raw[i + j] += x * y;
            }
        }
    }
    let table = pow_table();
    let mut out: Vec<BigInt> = raw[..DEG].to_vec();
    for (k, c) in raw.iter().enumerate().skip(DEG) {
        if c.is_zero() {
            continue;
        }
        for (o, &t) in out.iter_mut().zip(table[k].iter()) {
            if t != 0 {
                *o += c * t;
            }
        }
    }
    CycNum::normalized(out, den)
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        add_vec(self, o, 1)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        add_vec(self, o, -1)
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        mul_vec(self, o)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, o: CycNum) -> CycNum {
        &self + &o
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, o: CycNum) -> CycNum {
        &self - &o
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, o: CycNum) -> CycNum {
        &self * &o
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, o: &CycNum) {
        *self = &*self + o;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, o: &CycNum) {
        *self = &*self - o;
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::zero(), |a, b| &a + &b)
    }
}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

/// Lexicographic order on the power-basis coefficients.
impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.num.iter().zip(other.num.iter()) {
            let ord = (a * &other.den).cmp(&(b * &self.den));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_root(n: u64, j: u64) -> String {
    if j == 1 {
        format!("z{n}")
    } else {
        format!("z{n}^{j}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        if let Some((r, k)) = self.as_scaled_root() {
            // r·ζ60^k = -r·ζ60^(k+30); print the one with the smaller root order
            let cands = [(r.clone(), k), (-r, k + N / 2)];
            let (r, k) = cands
                .into_iter()
                .min_by_key(|(_, k)| {
                    let g = k.gcd(&N);
                    (N / g, k / g)
                })
                .unwrap();
            let g = k.gcd(&N);
            let root = fmt_root(N / g, k / g);
            return if r.is_one() {
                write!(f, "{root}")
            } else if (-&r).is_one() {
                write!(f, "-{root}")
            } else {
                write!(f, "{r}*{root}")
            };
        }
        let mut first = true;
        for k in 0..DEG {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", fmt_root(N, k as u64))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

impl FromStr for CycNum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CycNum::parse(s)
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CycNum::parse(&s).map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            input: self.s.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CycNum> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycNum> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.factor()?;
                acc = acc.checked_div(&d).map_err(|_| {
                    let mut e = self.err("division by zero");
                    if let Error::Parse { pos, .. } = &mut e {
                        *pos = at;
                    }
                    e
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<CycNum> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let neg = self.eat(b'-');
            let e = self.integer()?;
            let e = e.to_i64().ok_or_else(|| self.err("exponent too large"))?;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| self.err("zero to a negative power"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CycNum> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                let at = self.pos;
                let n = self.integer()?;
                match n.to_u64() {
                    Some(n) if n > 0 && N.is_multiple_of(n) => {
                        Ok(CycNum::root_of_unity(n, 1).expect("order divides 60"))
                    }
                    _ => {
                        self.pos = at;
                        Err(self.err("root order must divide 60"))
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => Ok(CycNum::from_rational(&BigRational::from_integer(
                self.integer()?,
            ))),
            Some(_) => Err(self.err("expected a number, 'z<n>' or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        self.s[start..self.pos]
            .parse()
            .map_err(|_| self.err("bad integer"))
    }
}
