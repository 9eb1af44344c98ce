//! Exact rationals, p-adic valuations, and residue arithmetic in Z/p^k.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. `PadicContext` fixes an odd prime p and a precision
//! exponent k >= 1; `Residue` is an element of Z/p^k tied to its context, and
//! arithmetic between residues from distinct contexts is refused rather than
//! coerced.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::{BigInt, BigUint};
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced, denominator always positive.
pub type Rational = num::BigRational;

/// Shorthand constructor for small fractions.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand constructor for small integers.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Integer power of a rational, with negative exponents via reciprocal.
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// A p-adic valuation: either a finite integer or +infinity (valuation of 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    /// True when the valuation is >= `bound`.
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinity => true,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, _) => Ordering::Greater,
            (_, Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// Deterministic Miller-Rabin over the witness set that is exhaustive for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Modular exponentiation on u64 (square and multiply).
pub fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse_u64(a: u64, m: u64) -> Result<u64> {
    let inv = mod_inverse(&BigUint::from(a), &BigUint::from(m))?;
    Ok(inv.to_u64().expect("inverse fits the modulus"))
}

/// Inverse of `a` modulo `m`; fails with NotInvertible when gcd(a, m) > 1.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Result<BigUint> {
    let a_int = BigInt::from(a.clone());
    let m_int = BigInt::from(m.clone());
    let ext = a_int.extended_gcd(&m_int);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible {
            a: a.to_string(),
            m: m.to_string(),
        });
    }
    let inv = ext.x.mod_floor(&m_int);
    Ok(inv.to_biguint().expect("mod_floor of positive modulus"))
}

/// Modular exponentiation on big integers.
pub fn mod_pow(base: &BigUint, exp: &BigUint, m: &BigUint) -> BigUint {
    assert!(!m.is_zero(), "zero modulus");
    base.modpow(exp, m)
}

fn int_valuation(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinity;
    }
    let p_big = BigInt::from(p);
    let mut v = 0i64;
    let mut rest = n.abs();
    loop {
        let (q, r) = rest.div_rem(&p_big);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        v += 1;
        rest = q;
    }
}

/// p-adic valuation of a rational; `Infinity` for zero.
pub fn valuation(x: &Rational, p: u64) -> Valuation {
    assert!(is_prime(p), "valuation needs a prime, got {p}");
    if x.is_zero() {
        return Valuation::Infinity;
    }
    let vn = int_valuation(x.numer(), p)
        .finite()
        .expect("nonzero numerator");
    let vd = int_valuation(x.denom(), p)
        .finite()
        .expect("nonzero denominator");
    Valuation::Finite(vn - vd)
}

/// The ring Z/p^k for an odd prime p and exponent k >= 1.
#[derive(Debug, Clone)]
pub struct PadicContext {
    p: u64,
    k: u32,
    modulus: BigUint,
    modulus_u64: Option<u64>,
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for PadicContext {}

impl fmt::Display for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.k)
    }
}

impl PadicContext {
    /// Builds the context, verifying that p is an odd prime and k >= 1.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotAnOddPrime { p });
        }
        if k == 0 {
            return Err(Error::ZeroPrecision);
        }
        Ok(Self::trusted(p, k))
    }

    /// Same prime, different precision, skipping the primality re-check.
    pub fn with_precision(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroPrecision);
        }
        Ok(Self::trusted(self.p, k))
    }

    fn trusted(p: u64, k: u32) -> Self {
        let modulus = BigUint::from(p).pow(k);
        let modulus_u64 = modulus.to_u64();
        PadicContext {
            p,
            k,
            modulus,
            modulus_u64,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The precision exponent k.
    pub fn precision(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub(crate) fn modulus_u64(&self) -> Option<u64> {
        self.modulus_u64
    }

    pub fn zero(&self) -> Residue {
        Residue {
            value: BigUint::zero(),
            context: self.clone(),
        }
    }

    pub fn one(&self) -> Residue {
        Residue {
            value: BigUint::one(),
            context: self.clone(),
        }
    }

    /// Canonical residue of a signed integer.
    pub fn residue_from_int(&self, n: &BigInt) -> Residue {
        let m = BigInt::from(self.modulus.clone());
        let value = n
            .mod_floor(&m)
            .to_biguint()
            .expect("mod_floor is nonnegative");
        Residue {
            value,
            context: self.clone(),
        }
    }

    pub fn residue_from_u64(&self, n: u64) -> Residue {
        Residue {
            value: BigUint::from(n) % &self.modulus,
            context: self.clone(),
        }
    }

    pub(crate) fn residue_from_raw(&self, value: BigUint) -> Residue {
        debug_assert!(value < self.modulus);
        Residue {
            value,
            context: self.clone(),
        }
    }
}

/// An element of Z/p^k carrying its context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    value: BigUint,
    context: PadicContext,
}

impl Residue {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn context(&self) -> &PadicContext {
        &self.context
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn require_same_context(&self, other: &Residue) -> Result<()> {
        if self.context == other.context {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.context.to_string(),
                right: other.context.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Residue) -> Result<Residue> {
        self.require_same_context(other)?;
        let mut value = &self.value + &other.value;
        if value >= self.context.modulus {
            value -= &self.context.modulus;
        }
        Ok(self.context.residue_from_raw(value))
    }

    pub fn checked_sub(&self, other: &Residue) -> Result<Residue> {
        self.require_same_context(other)?;
        let value = if self.value >= other.value {
            &self.value - &other.value
        } else {
            &self.context.modulus - &other.value + &self.value
        };
        Ok(self.context.residue_from_raw(value))
    }

    pub fn checked_mul(&self, other: &Residue) -> Result<Residue> {
        self.require_same_context(other)?;
        let value = &self.value * &other.value % &self.context.modulus;
        Ok(self.context.residue_from_raw(value))
    }

    /// Multiplication by the inverse of `other`.
    pub fn checked_div(&self, other: &Residue) -> Result<Residue> {
        self.require_same_context(other)?;
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<Residue> {
        let value = mod_inverse(&self.value, &self.context.modulus)?;
        Ok(self.context.residue_from_raw(value))
    }

    pub fn pow(&self, exp: u64) -> Residue {
        let value = self
            .value
            .modpow(&BigUint::from(exp), &self.context.modulus);
        self.context.residue_from_raw(value)
    }

    pub fn negate(&self) -> Residue {
        if self.value.is_zero() {
            self.clone()
        } else {
            self.context
                .residue_from_raw(&self.context.modulus - &self.value)
        }
    }

    /// Projects to a coarser precision j <= k.
    pub fn project(&self, j: u32) -> Result<Residue> {
        if j > self.context.k {
            return Err(Error::ZeroPrecision);
        }
        let target = self.context.with_precision(j)?;
        let value = &self.value % target.modulus();
        Ok(target.residue_from_raw(value))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for &Residue {
    type Output = Residue;
    fn add(self, rhs: &Residue) -> Residue {
        self.checked_add(rhs).expect("residue context mismatch")
    }
}

impl Sub for &Residue {
    type Output = Residue;
    fn sub(self, rhs: &Residue) -> Residue {
        self.checked_sub(rhs).expect("residue context mismatch")
    }
}

impl Mul for &Residue {
    type Output = Residue;
    fn mul(self, rhs: &Residue) -> Residue {
        self.checked_mul(rhs).expect("residue context mismatch")
    }
}

impl Neg for &Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        self.negate()
    }
}

/// Canonical image of a p-integral rational in Z/p^k.
pub fn reduce(x: &Rational, ctx: &PadicContext) -> Result<Residue> {
    if !valuation(x, ctx.p()).at_least(0) {
        return Err(Error::NotPIntegral {
            p: ctx.p(),
            value: x.to_string(),
        });
    }
    let m = BigInt::from(ctx.modulus().clone());
    let numer = x
        .numer()
        .mod_floor(&m)
        .to_biguint()
        .expect("mod_floor is nonnegative");
    let denom = x
        .denom()
        .mod_floor(&m)
        .to_biguint()
        .expect("mod_floor is nonnegative");
    let inv = mod_inverse(&denom, ctx.modulus())?;
    Ok(ctx.residue_from_raw(numer * inv % ctx.modulus()))
}

/// True when v_p(a - b) >= k, i.e. a and b agree in Z/p^k.
///
/// Both arguments must be p-integral; a negative valuation on either side is
/// an error rather than a false.
pub fn congruent(a: &Rational, b: &Rational, p: u64, k: u32) -> Result<bool> {
    if k == 0 {
        return Err(Error::ZeroPrecision);
    }
    for side in [a, b] {
        if !valuation(side, p).at_least(0) {
            return Err(Error::NotPIntegral {
                p,
                value: side.to_string(),
            });
        }
    }
    Ok(valuation(&(a - b), p).at_least(k as i64))
}
