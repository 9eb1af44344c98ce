//! Morita's p-adic Gamma function evaluated in Z/p^k.
//!
//! For an integer m >= 0 the value is (-1)^m times the product of all j in
//! (0, m) coprime to p, and rational arguments go through the canonical lift
//! to [0, p^k). The product over any full window of p^k consecutive integers
//! restricted to units is -1 (Wilson, generalized), so `block_reduction`
//! folds the argument into a single partial window before looping.

use num::bigint::BigUint;
use num::{Integer, One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::padic::{
    integer, mod_pow_u64, mul_mod_u64, reduce, valuation, PadicContext, Rational, Residue,
    Valuation,
};

/// Which loop evaluates the unit product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaStrategy {
    /// One widening multiply-reduce per factor. Reference path.
    NaiveLoop,
    /// Chunked Montgomery products combined pairwise; chunks run in parallel.
    ProductTree,
}

/// Controls for a Gamma evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaEvalPlan {
    /// Forced strategy; `None` picks naive below 10^7 factors, tree above.
    pub strategy: Option<GammaStrategy>,
    /// Fold the argument into [0, p^k) before looping.
    pub block_reduction: bool,
}

impl Default for GammaEvalPlan {
    fn default() -> Self {
        GammaEvalPlan {
            strategy: None,
            block_reduction: true,
        }
    }
}

impl GammaEvalPlan {
    pub fn naive() -> Self {
        GammaEvalPlan {
            strategy: Some(GammaStrategy::NaiveLoop),
            ..Default::default()
        }
    }

    pub fn product_tree() -> Self {
        GammaEvalPlan {
            strategy: Some(GammaStrategy::ProductTree),
            ..Default::default()
        }
    }

    pub fn without_block_reduction(mut self) -> Self {
        self.block_reduction = false;
        self
    }
}

const PRODUCT_TREE_THRESHOLD: u64 = 10_000_000;
const TREE_CHUNK: u64 = 1 << 20;

/// Montgomery arithmetic for an odd modulus below 2^63.
struct Mont {
    q: u64,
    neg_qinv: u64,
    r_mod_q: u64,
}

impl Mont {
    fn new(q: u64) -> Self {
        debug_assert!(q & 1 == 1 && q < (1 << 63));
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(q.wrapping_mul(inv)));
        }
        debug_assert_eq!(q.wrapping_mul(inv), 1);
        Mont {
            q,
            neg_qinv: inv.wrapping_neg(),
            r_mod_q: ((1u128 << 64) % q as u128) as u64,
        }
    }

    /// REDC: for t < q*2^64 returns t * 2^{-64} mod q.
    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_qinv);
        let u = ((t + m as u128 * self.q as u128) >> 64) as u64;
        if u >= self.q {
            u - self.q
        } else {
            u
        }
    }

    /// a * b * 2^{-64} mod q.
    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }
}

/// Product of t over lo <= t < hi with p not dividing t, mod q.
/// Plain residue; the Montgomery scale factor is repaired at the end.
fn mont_range_product(lo: u64, hi: u64, p: u64, mont: &Mont) -> u64 {
    let q = mont.q;
    debug_assert!(hi <= q);
    let mut acc: u64 = 1;
    let mut count: u64 = 0;
    let mut t = lo;
    while t < hi {
        let rem = t % p;
        if rem == 0 {
            t += 1;
            continue;
        }
        let run_end = (t + (p - rem)).min(hi);
        count += run_end - t;
        while t < run_end {
            acc = mont.mul(acc, t);
            t += 1;
        }
    }
    mul_mod_u64(acc, mod_pow_u64(mont.r_mod_q, count, q), q)
}

fn naive_range_product_u64(lo: u64, hi: u64, p: u64, q: u64) -> u64 {
    let mut acc: u64 = 1;
    let mut t = lo;
    while t < hi {
        if !t.is_multiple_of(p) {
            acc = mul_mod_u64(acc, t % q, q);
        }
        t += 1;
    }
    acc
}

fn tree_range_product_u64(lo: u64, hi: u64, p: u64, q: u64) -> u64 {
    if hi <= lo {
        return 1;
    }
    let chunks = (hi - lo).div_ceil(TREE_CHUNK);
    if hi <= q && q < (1 << 63) {
        let mont = Mont::new(q);
        (0..chunks)
            .into_par_iter()
            .map(|i| {
                let a = lo + i * TREE_CHUNK;
                let b = (a + TREE_CHUNK).min(hi);
                mont_range_product(a, b, p, &mont)
            })
            .reduce(|| 1, |a, b| mul_mod_u64(a, b, q))
    } else {
        (0..chunks)
            .into_par_iter()
            .map(|i| {
                let a = lo + i * TREE_CHUNK;
                let b = (a + TREE_CHUNK).min(hi);
                naive_range_product_u64(a, b, p, q)
            })
            .reduce(|| 1, |a, b| mul_mod_u64(a, b, q))
    }
}

/// Big-modulus fallback: same product over 0 < t < hi.
fn range_product_big(hi: &BigUint, p: u64, q: &BigUint, strategy: GammaStrategy) -> BigUint {
    let mut acc = BigUint::one();
    let mut t = BigUint::one();
    let mut rem: u64 = 1 % p;
    // For the tree strategy, batch factors and reduce only when the
    // accumulator outgrows twice the modulus width.
    let reduce_bits = match strategy {
        GammaStrategy::NaiveLoop => 0,
        GammaStrategy::ProductTree => 2 * q.bits() + 64,
    };
    while &t < hi {
        if rem != 0 {
            acc *= &t;
            if reduce_bits == 0 || acc.bits() > reduce_bits {
                acc %= q;
            }
        }
        t += 1u32;
        rem += 1;
        if rem == p {
            rem = 0;
        }
    }
    acc % q
}

fn resolve_strategy(plan: &GammaEvalPlan, factor_count: &BigUint) -> GammaStrategy {
    plan.strategy.unwrap_or({
        if factor_count < &BigUint::from(PRODUCT_TREE_THRESHOLD) {
            GammaStrategy::NaiveLoop
        } else {
            GammaStrategy::ProductTree
        }
    })
}

/// Product of all t in (0, hi) coprime to p, mod the context modulus.
fn unit_range_product(hi: &BigUint, ctx: &PadicContext, strategy: GammaStrategy) -> BigUint {
    match (ctx.modulus_u64(), hi.to_u64()) {
        (Some(q), Some(h)) if q < (1 << 63) => {
            let v = match strategy {
                GammaStrategy::NaiveLoop => naive_range_product_u64(1, h, ctx.p(), q),
                GammaStrategy::ProductTree => tree_range_product_u64(1, h, ctx.p(), q),
            };
            BigUint::from(v)
        }
        _ => range_product_big(hi, ctx.p(), ctx.modulus(), strategy),
    }
}

/// Gamma at a nonnegative integer argument: (-1)^m * prod_{0<j<m, p∤j} j mod p^k.
pub fn gamma_p_int(m: &BigUint, ctx: &PadicContext) -> Residue {
    gamma_p_int_with(m, ctx, &GammaEvalPlan::default())
}

pub fn gamma_p_int_with(m: &BigUint, ctx: &PadicContext, plan: &GammaEvalPlan) -> Residue {
    let q = ctx.modulus();
    let (flip, bound) = if plan.block_reduction {
        let (blocks, tail) = m.div_rem(q);
        (m.bit(0) ^ blocks.bit(0), tail)
    } else {
        (m.bit(0), m.clone())
    };
    let strategy = resolve_strategy(plan, &bound);
    let tail = unit_range_product(&bound, ctx, strategy);
    let value = if flip && !tail.is_zero() {
        q - tail
    } else {
        tail
    };
    ctx.residue_from_raw(value)
}

/// Gamma at a p-integral rational via the canonical lift to [0, p^k).
pub fn gamma_p(x: &Rational, ctx: &PadicContext) -> Result<Residue> {
    gamma_p_with(x, ctx, &GammaEvalPlan::default())
}

pub fn gamma_p_with(x: &Rational, ctx: &PadicContext, plan: &GammaEvalPlan) -> Result<Residue> {
    let lift = reduce(x, ctx)?;
    Ok(gamma_p_int_with(lift.value(), ctx, plan))
}

/// Representative of x mod p in {1, ..., p}: residue 0 maps to p.
pub fn s_p(x: &Rational, p: u64) -> Result<u64> {
    let ctx = PadicContext::new(p, 1)?;
    let r = reduce(x, &ctx)?
        .value()
        .to_u64()
        .expect("mod-p residue fits u64");
    Ok(if r == 0 { p } else { r })
}

/// Checks the step rule Gamma(x+1)/Gamma(x): -x when x is a unit, -1 when
/// x lies in pZ_p.
pub fn functional_equation_check(x: &Rational, ctx: &PadicContext) -> Result<bool> {
    let v = valuation(x, ctx.p());
    if !v.at_least(0) {
        return Err(Error::NotPIntegral {
            p: ctx.p(),
            value: x.to_string(),
        });
    }
    let left = gamma_p(&(x + Rational::one()), ctx)?;
    let gx = gamma_p(x, ctx)?;
    let right = if v == Valuation::Finite(0) {
        (&reduce(x, ctx)? * &gx).negate()
    } else {
        gx.negate()
    };
    Ok(left == right)
}

/// (a)_n in Z/p^k through the Gamma quotient (-1)^n Gamma(a+n)/Gamma(a),
/// valid only while a, a+1, ..., a+n-1 all stay p-adic units.
pub fn pochhammer_gamma(a: &Rational, n: u64, ctx: &PadicContext) -> Result<Residue> {
    let p = ctx.p();
    if !valuation(a, p).at_least(0) {
        return Err(Error::NotPIntegral {
            p,
            value: a.to_string(),
        });
    }
    if n > 0 {
        let ctx1 = ctx.with_precision(1)?;
        let r = reduce(a, &ctx1)?
            .value()
            .to_u64()
            .expect("mod-p residue fits u64");
        let first_hit = (p - r) % p;
        if first_hit < n {
            return Err(Error::PochhammerHitsPZp {
                p,
                a: a.to_string(),
                offset: first_hit,
            });
        }
    }
    let ga = gamma_p(a, ctx)?;
    let gan = gamma_p(&(a + integer(n as i64)), ctx)?;
    let ratio = gan.checked_div(&ga)?;
    Ok(if n & 1 == 1 { ratio.negate() } else { ratio })
}

/// First Gamma increment coefficient mod p: Gamma(a+bp) = Gamma(a)(1 + G1(a) b p)
/// to order p^2. Computed from b = 1 with the divisibility of the linear term
/// checked explicitly.
pub fn g1(a: &Rational, p: u64) -> Result<Residue> {
    let ctx2 = PadicContext::new(p, 2)?;
    if !valuation(a, p).at_least(0) {
        return Err(Error::NotPIntegral {
            p,
            value: a.to_string(),
        });
    }
    let ga = gamma_p(a, &ctx2)?;
    let gap = gamma_p(&(a + integer(p as i64)), &ctx2)?;
    let u = gap.checked_div(&ga)?;
    let delta = u.checked_sub(&ctx2.one())?;
    let (linear, rem) = delta.value().div_rem(&BigUint::from(p));
    if !rem.is_zero() {
        return Err(Error::PrecisionFailure {
            p,
            a: a.to_string(),
        });
    }
    let ctx1 = ctx2.with_precision(1)?;
    Ok(ctx1.residue_from_raw(linear % BigUint::from(p)))
}

/// Product of all units of Z/p^k; always -1.
pub fn unit_block_product(ctx: &PadicContext) -> Residue {
    unit_block_product_with(ctx, &GammaEvalPlan::default())
}

pub fn unit_block_product_with(ctx: &PadicContext, plan: &GammaEvalPlan) -> Residue {
    let strategy = resolve_strategy(plan, ctx.modulus());
    ctx.residue_from_raw(unit_range_product(ctx.modulus(), ctx, strategy))
}
