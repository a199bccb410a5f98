//! Exact arithmetic in a real quadratic field `Q(√m)`.
//!
//! A [`Scalar`] is `rat + surd·√m` with both parts reduced fractions. The
//! radicand travels with the value instead of living in global state, so
//! independent computations over different fields can run side by side. A
//! scalar whose surd part is zero carries `m = 0` and mixes freely with any
//! field; combining two irrational scalars over different radicands is a
//! programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rat: Q,
    surd: Q,
    m: u64,
}

/// Returns true when `m` has no repeated prime factor. `0` and `1` count as
/// square-free (they select plain rational mode).
pub fn is_square_free(m: u64) -> bool {
    if m < 2 {
        return true;
    }
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn merge_radicand(a: u64, b: u64) -> u64 {
    match (a, b) {
        (0, x) | (x, 0) => x,
        (x, y) if x == y => x,
        (x, y) => panic!("mixing scalars from Q(√{x}) and Q(√{y})"),
    }
}


/// A rational number, kept in machine words while it fits.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Q {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Q {
    const ZERO: Q = Q::Small(0, 1);
    const ONE: Q = Q::Small(1, 1);

    fn from_i128(num: i128, den: i128) -> Q {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Q::Small(n, d),
            _ => Q::Big(BigRational::new_raw(BigInt::from(num), BigInt::from(den))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(n, d),
            _ => Q::Big(r),
        }
    }

    fn big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => r.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    fn is_negative(&self) -> bool {
        match self {
            Q::Small(n, _) => *n < 0,
            Q::Big(r) => r.is_negative(),
        }
    }

    fn add(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Q::from_i128(*a as i128 + *c as i128, 1);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g = gcd_u128(b as u128, d as u128) as i128;
                Q::from_i128(a * (d / g) + c * (b / g), b / g * d)
            }
            _ => Q::from_big(self.big() + o.big()),
        }
    }

    fn neg(&self) -> Q {
        match self {
            Q::Small(n, d) => Q::from_i128(-(*n as i128), *d as i128),
            Q::Big(r) => Q::from_big(-r.clone()),
        }
    }

    fn sub(&self, o: &Q) -> Q {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Q::from_i128(*a as i128 * *c as i128, 1);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g1 = gcd_u128(a.unsigned_abs(), d as u128).max(1) as i128;
                let g2 = gcd_u128(c.unsigned_abs(), b as u128).max(1) as i128;
                Q::from_i128((a / g1) * (c / g2), (b / g2) * (d / g1))
            }
            _ => Q::from_big(self.big() * o.big()),
        }
    }

    fn div(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => Q::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128),
            _ => Q::from_big(self.big() / o.big()),
        }
    }

    fn cmp_zero(&self) -> Ordering {
        match self {
            Q::Small(n, _) => n.cmp(&0),
            Q::Big(r) => r.cmp(&BigRational::zero()),
        }
    }
}

fn q_mod(q: &Q, p: u64) -> Option<u64> {
    let (n, d) = match q {
        Q::Small(n, d) => (n.rem_euclid(p as i64) as u64, (*d as u64) % p),
        Q::Big(r) => {
            let pb = BigInt::from(p);
            (r.numer().mod_floor(&pb).to_u64()?, r.denom().mod_floor(&pb).to_u64()?)
        }
    };
    if d == 0 {
        return None;
    }
    Some(crate::linalg::mulmod(n, crate::linalg::powmod(d, p - 2, p), p))
}

impl Scalar {
    /// Builds `rat + surd·√m`. For `m = 1` the surd folds into the rational
    /// part and for `m = 0` it vanishes.
    pub fn new(rat: BigRational, surd: BigRational, m: u64) -> Self {
        Scalar::from_parts(Q::from_big(rat), Q::from_big(surd), m)
    }

    fn from_parts(rat: Q, surd: Q, m: u64) -> Self {
        match m {
            0 => Scalar { rat, surd: Q::ZERO, m: 0 },
            1 => Scalar { rat: rat.add(&surd), surd: Q::ZERO, m: 0 },
            _ => {
                let m = if surd.is_zero() { 0 } else { m };
                Scalar { rat, surd, m }
            }
        }
    }

    pub fn rational(rat: BigRational) -> Self {
        Scalar { rat: Q::from_big(rat), surd: Q::ZERO, m: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar { rat: Q::Small(v, 1), surd: Q::ZERO, m: 0 }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar { rat: Q::from_i128(num as i128, den as i128), surd: Q::ZERO, m: 0 }
    }

    /// `√m` itself.
    pub fn sqrt_of(m: u64) -> Self {
        Scalar::from_parts(Q::ZERO, Q::ONE, m)
    }

    pub fn rat(&self) -> BigRational {
        self.rat.big()
    }

    pub fn surd(&self) -> BigRational {
        self.surd.big()
    }

    /// Radicand of the field this value needs; `0` for rationals.
    pub fn radicand(&self) -> u64 {
        self.m
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.surd.is_zero() && self.rat.is_one()
    }

    /// `rat` as an integer when the value is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.rat();
        if self.is_rational() && r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match (&self.rat, self.is_rational()) {
            (Q::Small(n, 1), true) => Some(*n),
            _ => None,
        }
    }

    pub fn conjugate(&self) -> Self {
        Scalar { rat: self.rat.clone(), surd: self.surd.neg(), m: self.m }
    }

    /// Field norm `a² − b²m`.
    pub fn norm(&self) -> BigRational {
        self.norm_q().big()
    }

    fn norm_q(&self) -> Q {
        let m = Q::Small(self.m as i64, 1);
        self.rat.mul(&self.rat).sub(&self.surd.mul(&self.surd).mul(&m))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.surd.is_zero() {
            return Ok(Scalar { rat: Q::ONE.div(&self.rat), surd: Q::ZERO, m: 0 });
        }
        let n = self.norm_q();
        assert!(!n.is_zero(), "zero norm for a nonzero element; radicand {} is a square", self.m);
        Ok(Scalar { rat: self.rat.div(&n), surd: self.surd.neg().div(&n), m: self.m })
    }

    /// Image in `F_p` under `√m ↦ root`; `None` when a denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64, root: u64) -> Option<u64> {
        let r = q_mod(&self.rat, p)?;
        if self.surd.is_zero() {
            return Some(r);
        }
        let s = q_mod(&self.surd, p)?;
        Some(((r as u128 + s as u128 * root as u128) % p as u128) as u64)
    }

    pub fn sign_of_rational_part(&self) -> Ordering {
        self.rat.cmp_zero()
    }

    /// Parses `rational ( ("+"|"-") rational? "s" )?` where `s` stands for √m.
    pub fn parse(text: &str, m: u64) -> Result<Self> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let rat = p.rational()?;
        if p.eof() {
            return Ok(Scalar::rational(rat));
        }
        let neg = match p.peek() {
            Some(b'+') => false,
            Some(b'-') => true,
            _ => return Err(Error::parse(p.pos, "expected '+', '-' or end of input")),
        };
        p.pos += 1;
        let mut coef = if p.peek() == Some(b's') {
            BigRational::one()
        } else {
            let start = p.pos;
            let c = p.rational()?;
            if c.is_negative() {
                return Err(Error::parse(start, "sign of the surd part given twice"));
            }
            c
        };
        if p.peek() != Some(b's') {
            return Err(Error::parse(p.pos, "expected 's'"));
        }
        p.pos += 1;
        if !p.eof() {
            return Err(Error::parse(p.pos, "trailing characters"));
        }
        if neg {
            coef = -coef;
        }
        Ok(Scalar::new(rat, coef, m))
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn eof(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digit"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse::<BigInt>().expect("digits parse"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = self.digits()?;
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(Error::parse(at, "zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        let r = BigRational::new(num, den);
        Ok(if neg { -r } else { r })
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return f.write_str(&fmt_rat(&self.rat()));
        }
        let sign = if self.surd.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}s", fmt_rat(&self.rat()), sign, fmt_rat(&self.surd().abs()))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m > 1 {
            write!(f, "{self}[s=√{}]", self.m)
        } else {
            write!(f, "{self}")
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { rat: Q::ZERO, surd: Q::ZERO, m: 0 }
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar { rat: Q::ONE, surd: Q::ZERO, m: 0 }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::rational(v)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let m = merge_radicand(self.m, rhs.m);
        Scalar::from_parts(self.rat.add(&rhs.rat), self.surd.add(&rhs.surd), m)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let m = merge_radicand(self.m, rhs.m);
        Scalar::from_parts(self.rat.sub(&rhs.rat), self.surd.sub(&rhs.surd), m)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.surd.is_zero() && rhs.surd.is_zero() {
            return Scalar { rat: self.rat.mul(&rhs.rat), surd: Q::ZERO, m: 0 };
        }
        let m = merge_radicand(self.m, rhs.m);
        let mq = Q::Small(m as i64, 1);
        let rat = self.rat.mul(&rhs.rat).add(&self.surd.mul(&rhs.surd).mul(&mq));
        let surd = self.rat.mul(&rhs.surd).add(&self.surd.mul(&rhs.rat));
        Scalar::from_parts(rat, surd, m)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { rat: self.rat.neg(), surd: self.surd.neg(), m: self.m }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar { (&self).$f(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        let m = merge_radicand(self.m, rhs.m);
        self.rat = self.rat.add(&rhs.rat);
        if !rhs.surd.is_zero() {
            self.surd = self.surd.add(&rhs.surd);
        }
        self.m = if self.surd.is_zero() { 0 } else { m };
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        let m = merge_radicand(self.m, rhs.m);
        self.rat = self.rat.sub(&rhs.rat);
        if !rhs.surd.is_zero() {
            self.surd = self.surd.sub(&rhs.surd);
        }
        self.m = if self.surd.is_zero() { 0 } else { m };
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Least common multiple of the denominators of both parts.
pub fn common_denominator(x: &Scalar) -> BigInt {
    x.rat().denom().lcm(x.surd().denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t, 2).unwrap()
    }

    #[test]
    fn conjugate_product() {
        assert_eq!(s("1+1s") * s("1-1s"), Scalar::from_int(-1));
    }

    #[test]
    fn inverse_of_root_two() {
        assert_eq!(s("0+1s").inv().unwrap(), s("0+1/2s"));
    }

    #[test]
    fn additive_inverse() {
        let z = s("3/2") + s("-3/2");
        assert!(z.is_zero());
        assert_eq!(z.radicand(), 0);
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn grammar_instances() {
        let x = s("3/2+1/2s");
        assert_eq!(x.rat(), BigRational::new(3.into(), 2.into()));
        assert_eq!(x.surd(), BigRational::new(1.into(), 2.into()));
        assert_eq!(s("-2"), Scalar::from_int(-2));
        assert_eq!(s("0-1s").surd(), BigRational::from_integer((-1).into()));
        assert_eq!(s("3/2+1/2s").render(), "3/2+1/2s");
        assert_eq!(s("0+s"), Scalar::sqrt_of(2));
        assert_eq!(s("4/6"), Scalar::from_frac(2, 3));
    }

    #[test]
    fn malformed_text_reports_position() {
        assert_eq!(Scalar::parse("1/0", 2), Err(Error::parse(2, "zero denominator")));
        assert!(matches!(Scalar::parse("1+2", 2), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(Scalar::parse("x", 2), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(Scalar::parse("1+-2s", 2), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(Scalar::parse("1+2sx", 2), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn rational_mode_folds_surd() {
        assert_eq!(Scalar::parse("1+2s", 1).unwrap(), Scalar::from_int(3));
        assert_eq!(Scalar::parse("1+2s", 0).unwrap(), Scalar::from_int(1));
    }

    #[test]
    fn square_free_check() {
        assert!(is_square_free(2));
        assert!(is_square_free(30));
        assert!(!is_square_free(12));
        assert!(!is_square_free(9));
        assert!(is_square_free(0));
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = Scalar::sqrt_of(2) + Scalar::sqrt_of(3);
    }
}
