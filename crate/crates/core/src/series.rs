//! Exact evaluation of the truncated hypergeometric sums, the lemma
//! identities behind them, and the auxiliary sequences (central binomial
//! ratios, J_n, Chu-Vandermonde sums, harmonic weights).
//!
//! Sums run left to right over exact rationals with eager reduction. The two
//! main sums also have modular fast paths that accumulate directly in Z/p^k;
//! the verify module cross-checks the paths on every verdict.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{integer, rational, rational_pow, PadicContext, Rational, Residue};

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
pub fn pochhammer(a: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    for _ in 0..n {
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// Exact binomial coefficient, 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num::integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Central binomial ratio C(2k,k)/4^k = (1/2)_k / k!, stepped incrementally.
fn central_step(c: &mut Rational, k: u64) {
    debug_assert!(k >= 1);
    *c *= rational(2 * k as i64 - 1, 2 * k as i64);
}

/// Sum_{k=0}^{N} (-1)^k (4k+1) ((1/2)_k / k!)^5, exactly.
pub fn a2_sum(n: u64) -> Rational {
    let mut sum = Rational::zero();
    let mut c = Rational::one();
    for k in 0..=n {
        if k > 0 {
            central_step(&mut c, k);
        }
        let term = integer(4 * k as i64 + 1) * rational_pow(&c, 5);
        if k & 1 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Sum_{k=0}^{N} ((1/2)_k / k!)^3, exactly.
pub fn h2_sum(n: u64) -> Rational {
    let mut sum = Rational::zero();
    let mut c = Rational::one();
    for k in 0..=n {
        if k > 0 {
            central_step(&mut c, k);
        }
        sum += rational_pow(&c, 3);
    }
    sum
}

/// Modular fast path for `a2_sum`; needs every k <= n to be a unit mod p.
pub fn a2_sum_residue(n: u64, ctx: &PadicContext) -> Result<Residue> {
    let mut sum = ctx.zero();
    let mut c = ctx.one();
    for k in 0..=n {
        if k > 0 {
            let step = ctx
                .residue_from_u64(2 * k - 1)
                .checked_div(&ctx.residue_from_u64(2 * k))?;
            c = &c * &step;
        }
        let term = &ctx.residue_from_u64(4 * k + 1) * &c.pow(5);
        sum = if k & 1 == 0 {
            &sum + &term
        } else {
            &sum - &term
        };
    }
    Ok(sum)
}

/// Modular fast path for `h2_sum`; same unit requirement as `a2_sum_residue`.
pub fn h2_sum_residue(n: u64, ctx: &PadicContext) -> Result<Residue> {
    let mut sum = ctx.zero();
    let mut c = ctx.one();
    for k in 0..=n {
        if k > 0 {
            let step = ctx
                .residue_from_u64(2 * k - 1)
                .checked_div(&ctx.residue_from_u64(2 * k))?;
            c = &c * &step;
        }
        sum = &sum + &c.pow(3);
    }
    Ok(sum)
}

fn require_odd(n: u64) -> Result<i64> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::EvenParameter { n });
    }
    Ok(i64::try_from(n).expect("truncation order fits i64"))
}

/// Term ratio A_k / A_{k-1} for the septic-weight lemma sum.
fn cc_ratio(n: i64, k: i64) -> Result<Rational> {
    let num = rational_pow(&rational(2 * k - 1, 2), 3) * integer(k - 1 - n) * integer(n + k);
    let den = integer(k * k * k) * rational(2 * (n + k) + 1, 2) * rational(2 * (k - n) - 1, 2);
    if den.is_zero() {
        return Err(Error::DegenerateDenominator { k: k as u64 });
    }
    Ok(num / den)
}

/// Term ratio B_k / B_{k-1} for the cubic-weight lemma sum.
fn dd_ratio(n: i64, k: i64) -> Result<Rational> {
    let num = rational(2 * k - 1, 2) * integer(k - 1 - n) * integer(n + k);
    let den = integer(k * k * k);
    if den.is_zero() {
        return Err(Error::DegenerateDenominator { k: k as u64 });
    }
    Ok(num / den)
}

/// Sum_{k=0}^{n} (-1)^k (4k+1) (1/2)_k^3 (-n)_k (n+1)_k /
/// [(1)_k^3 (n+3/2)_k (-n+1/2)_k]; zero for every odd n.
pub fn cc1_sum(n: u64) -> Result<Rational> {
    let n = require_odd(n)?;
    let mut sum = Rational::zero();
    let mut a = Rational::one();
    for k in 0..=n {
        if k > 0 {
            a *= cc_ratio(n, k)?;
        }
        let term = integer(4 * k + 1) * &a;
        if k & 1 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// The same sum as `cc1_sum` with the inner weight
/// sum_{j=1}^{k} (1/(2j)^2 - 1/(2j-1)^2) attached to each term.
pub fn cc5_lhs(n: u64) -> Result<Rational> {
    let n = require_odd(n)?;
    let mut sum = Rational::zero();
    let mut a = Rational::one();
    let mut w = Rational::zero();
    for k in 0..=n {
        if k > 0 {
            a *= cc_ratio(n, k)?;
            w += rational(1, 4 * k * k) - rational(1, (2 * k - 1) * (2 * k - 1));
        }
        let term = integer(4 * k + 1) * &a * &w;
        if k & 1 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Closed form 4^{n-2} (2n+1) / (n^2 C(n-1, (n-1)/2)^2) for odd n.
pub fn cc5_rhs(n: u64) -> Result<Rational> {
    let ni = require_odd(n)?;
    let central = Rational::from_integer(binomial(n - 1, (n - 1) / 2));
    Ok(rational_pow(&integer(4), ni - 2) * integer(2 * ni + 1)
        / (integer(ni * ni) * rational_pow(&central, 2)))
}

/// Sum_{k=0}^{n} (1/2)_k (-n)_k (n+1)_k / (1)_k^3; zero for every odd n.
pub fn dd1_sum(n: u64) -> Result<Rational> {
    let n = require_odd(n)?;
    let mut sum = Rational::zero();
    let mut b = Rational::one();
    for k in 0..=n {
        if k > 0 {
            b *= dd_ratio(n, k)?;
        }
        sum += &b;
    }
    Ok(sum)
}

/// The same sum as `dd1_sum` with the inner weight sum_{j=1}^{k} 1/(2j-1)^2.
pub fn dd2_lhs(n: u64) -> Result<Rational> {
    let n = require_odd(n)?;
    let mut sum = Rational::zero();
    let mut b = Rational::one();
    let mut w = Rational::zero();
    for k in 0..=n {
        if k > 0 {
            b *= dd_ratio(n, k)?;
            w += rational(1, (2 * k - 1) * (2 * k - 1));
        }
        sum += &b * &w;
    }
    Ok(sum)
}

/// Closed form -4^{n-1} J_{(n-1)/2}^2 / (n^2 C(n-1, (n-1)/2)^2) for odd n.
pub fn dd2_rhs(n: u64) -> Result<Rational> {
    let ni = require_odd(n)?;
    let central = Rational::from_integer(binomial(n - 1, (n - 1) / 2));
    let j = j_n((n - 1) / 2);
    Ok(-rational_pow(&integer(4), ni - 1) * rational_pow(&j, 2)
        / (integer(ni * ni) * rational_pow(&central, 2)))
}

/// J_n = sum_{k=0}^{n} C(2k,k)^2 / 16^k, exactly.
pub fn j_n(n: u64) -> Rational {
    let mut sum = Rational::zero();
    let mut t = Rational::one();
    for k in 0..=n {
        if k > 0 {
            let odd = 2 * k as i64 - 1;
            t *= rational(odd * odd, 4 * (k * k) as i64);
        }
        sum += &t;
    }
    sum
}

/// Sum_{k=0}^{n} C(2n+1, k)^2, exactly.
pub fn chu_sum(n: u64) -> BigInt {
    let m = BigInt::from(2 * n + 1);
    let mut c = BigInt::one();
    let mut sum = BigInt::one();
    for k in 1..=n {
        c = c * (&m - BigInt::from(k - 1)) / BigInt::from(k);
        sum += &c * &c;
    }
    sum
}

/// True iff sum_{k=0}^{n} C(2n+1,k)^2 = C(4n+2, 2n+1)/2 exactly.
pub fn chu_vandermonde_check(n: u64) -> bool {
    let doubled = chu_sum(n) * BigInt::from(2);
    doubled == binomial(4 * n + 2, 2 * n + 1)
}

/// sum_{j=1}^{k} (1/(2j)^2 - 1/(2j-1)^2); 0 at k = 0.
pub fn harmonic_weight_even_odd(k: u64) -> Rational {
    let mut w = Rational::zero();
    for j in 1..=k as i64 {
        w += rational(1, 4 * j * j) - rational(1, (2 * j - 1) * (2 * j - 1));
    }
    w
}

/// sum_{j=1}^{k} 1/(2j-1)^2; 0 at k = 0.
pub fn harmonic_weight_odd(k: u64) -> Rational {
    let mut w = Rational::zero();
    for j in 1..=k as i64 {
        w += rational(1, (2 * j - 1) * (2 * j - 1));
    }
    w
}
