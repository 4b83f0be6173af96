//! Exact scalar arithmetic over prime fields `F_p` and the rationals.
//!
//! Prime-field elements are canonical representatives `0 <= v < p` with
//! `u128`-widened reduction; rational elements are arbitrary-precision
//! fractions kept in lowest terms. Elements bundle their field so that
//! arithmetic can be written with ordinary operators; mixing fields is a
//! programming error and panics.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// 2^61 - 1, a Mersenne prime. Large enough that the characteristic
/// comfortably exceeds any desk-scale degree bound.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller-Rabin with a base set that is exact for all `u64` inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Which field scalars live in: a prime field `F_p` or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    /// Prime field `F_p`; checks primality of `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub const fn rational() -> Self {
        FieldSpec::Rational
    }

    /// `F_p` with the default modulus 2^61 - 1.
    pub const fn default_prime() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p),
            FieldSpec::Rational => None,
        }
    }

    /// The standing assumption `char(F) > d`.
    pub fn require_char_above(&self, d: u64) -> Result<()> {
        match self {
            FieldSpec::Prime(p) if *p <= d => Err(Error::CharacteristicTooSmall {
                modulus: *p,
                required: d,
            }),
            _ => Ok(()),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_u64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        match self {
            FieldSpec::Prime(p) => FieldElement::Prime {
                value: v % p,
                modulus: *p,
            },
            FieldSpec::Rational => FieldElement::Rational(BigRational::from_integer(v.into())),
        }
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match self {
            FieldSpec::Prime(p) => {
                let m = *p as i128;
                let r = ((v as i128 % m) + m) % m;
                FieldElement::Prime {
                    value: r as u64,
                    modulus: *p,
                }
            }
            FieldSpec::Rational => FieldElement::Rational(BigRational::from_integer(v.into())),
        }
    }

    /// Ratio `a/b`; over `F_p` computed as `a * b^{-1}`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Prime(_) => {
                let d = self.from_i64(den).inv()?;
                Ok(&self.from_i64(num) * &d)
            }
            FieldSpec::Rational => Ok(FieldElement::Rational(BigRational::new(
                num.into(),
                den.into(),
            ))),
        }
    }

    /// Parses the canonical textual form: decimal for `F_p` (sign allowed),
    /// `a/b` or a plain integer for rationals.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let err = || Error::Parse {
            pos: 0,
            message: alloc::format!("invalid field element `{s}`"),
        };
        match self {
            FieldSpec::Prime(p) => {
                let (neg, digits) = match s.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, s),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err());
                }
                // Reduce digit by digit so arbitrarily long literals work.
                let mut v: u64 = 0;
                for b in digits.bytes() {
                    v = mul_mod(v, 10, *p);
                    v = (v + (b - b'0') as u64) % p;
                }
                let value = if neg { (*p - v) % *p } else { v };
                Ok(FieldElement::Prime { value, modulus: *p })
            }
            FieldSpec::Rational => {
                let (num_str, den_str) = match s.split_once('/') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num_str.parse().map_err(|_| err())?;
                let den: BigInt = den_str.parse().map_err(|_| err())?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldElement::Rational(BigRational::new(num, den)))
            }
        }
    }

    /// Uniform element of the sampling set `T = {0, ..., set_size - 1}`
    /// embedded in the field.
    pub fn sample_uniform(&self, set_size: u64, rng: &mut SeededRng) -> Result<FieldElement> {
        assert!(set_size > 0, "sampling set must be nonempty");
        if let FieldSpec::Prime(p) = self {
            if set_size > *p {
                return Err(Error::SetTooLarge {
                    set_size,
                    field_size: *p,
                });
            }
        }
        Ok(self.from_u64(rng.below(set_size)))
    }

    /// Uniform point of `T^n`.
    pub fn sample_point(
        &self,
        n: usize,
        set_size: u64,
        rng: &mut SeededRng,
    ) -> Result<Vec<FieldElement>> {
        (0..n).map(|_| self.sample_uniform(set_size, rng)).collect()
    }

    /// Parses `p=<modulus>` or `rational`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(num) = s.strip_prefix("p=") {
            let p: u64 = num.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                message: alloc::format!("invalid modulus `{num}`"),
            })?;
            return FieldSpec::prime(p);
        }
        Err(Error::Parse {
            pos: 0,
            message: alloc::format!("invalid field spec `{s}` (expected `p=<prime>` or `rational`)"),
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "p={p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

/// An exact scalar: a canonical residue mod `p` or a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldElement {
    Prime { value: u64, modulus: u64 },
    Rational(BigRational),
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
            FieldElement::Rational(_) => FieldSpec::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Prime { value, .. } => *value == 0,
            FieldElement::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Prime { value, .. } => *value == 1,
            FieldElement::Rational(r) => r.is_one(),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: pow_mod(*value, *modulus - 2, *modulus),
                modulus: *modulus,
            },
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
        })
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        match self {
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: pow_mod(*value, exp, *modulus),
                modulus: *modulus,
            },
            FieldElement::Rational(r) => {
                let mut acc = BigRational::one();
                let mut base = r.clone();
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc *= &base;
                    }
                    base = &base * &base;
                    exp >>= 1;
                }
                FieldElement::Rational(acc)
            }
        }
    }

    /// Canonical textual form: decimal residue for `F_p`, `a/b` (or `a` when
    /// the denominator is 1) for rationals. `parse_element` inverts this.
    pub fn canonical_string(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn same_modulus(p: u64, q: u64) -> u64 {
    assert_eq!(p, q, "field elements from different prime fields");
    p
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (
                FieldElement::Prime { value: a, modulus: p },
                FieldElement::Prime { value: b, modulus: q },
            ) => {
                let m = same_modulus(*p, *q);
                let mut s = a + b; // < 2^63 since p < 2^62
                if s >= m {
                    s -= m;
                }
                FieldElement::Prime { value: s, modulus: m }
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            _ => panic!("cannot mix prime-field and rational elements"),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (
                FieldElement::Prime { value: a, modulus: p },
                FieldElement::Prime { value: b, modulus: q },
            ) => {
                let m = same_modulus(*p, *q);
                let s = if a >= b { a - b } else { a + m - b };
                FieldElement::Prime { value: s, modulus: m }
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a - b)
            }
            _ => panic!("cannot mix prime-field and rational elements"),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (
                FieldElement::Prime { value: a, modulus: p },
                FieldElement::Prime { value: b, modulus: q },
            ) => {
                let m = same_modulus(*p, *q);
                FieldElement::Prime {
                    value: mul_mod(*a, *b, m),
                    modulus: m,
                }
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            _ => panic!("cannot mix prime-field and rational elements"),
        }
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    /// Panics on a zero divisor; use [`FieldElement::inv`] for a checked path.
    fn div(self, rhs: &FieldElement) -> FieldElement {
        let inv = rhs.inv().expect("division by zero field element");
        self * &inv
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            FieldElement::Rational(r) => FieldElement::Rational(-r),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// `r!` as a field element.
pub fn factorial(spec: FieldSpec, r: u32) -> FieldElement {
    let mut acc = spec.one();
    for k in 2..=r as u64 {
        acc = &acc * &spec.from_u64(k);
    }
    acc
}

/// Table of inverse factorials `(r!)^{-1}` for `0 <= r <= d`, the scalars in
/// the Taylor expansion of a shifted polynomial.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    field: FieldSpec,
    inv_factorials: Vec<FieldElement>,
}

impl FactorialTable {
    pub fn build(spec: FieldSpec, d: u32) -> Result<FactorialTable> {
        if let FieldSpec::Prime(p) = spec {
            if p <= d as u64 {
                return Err(Error::CharacteristicTooSmall {
                    modulus: p,
                    required: d as u64,
                });
            }
        }
        let mut inv_factorials = Vec::with_capacity(d as usize + 1);
        let mut fact = spec.one();
        inv_factorials.push(spec.one());
        for r in 1..=d as u64 {
            fact = &fact * &spec.from_u64(r);
            inv_factorials.push(fact.inv()?);
        }
        Ok(FactorialTable {
            field: spec,
            inv_factorials,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `(r!)^{-1}`; panics if `r` exceeds the table degree.
    pub fn inv_factorial(&self, r: u32) -> &FieldElement {
        &self.inv_factorials[r as usize]
    }

    pub fn degree(&self) -> u32 {
        (self.inv_factorials.len() - 1) as u32
    }
}

/// Spec alias for [`FactorialTable::build`].
pub fn build_factorial_table(spec: FieldSpec, d: u32) -> Result<FactorialTable> {
    FactorialTable::build(spec, d)
}
