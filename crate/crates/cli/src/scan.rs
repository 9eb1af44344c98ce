//! Prime enumeration and parallel family scans.

use std::time::{Duration, Instant};

use num::bigint::BigInt;
use rayon::prelude::*;

use supercong_core::verify::residue_agreement;
use supercong_core::{check_family, CongruenceVerdict, Error, Family};

/// Primes in [lo, hi] by a plain sieve; the scan caps keep hi small.
pub fn sieve_primes(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (lo.max(2)..=hi)
        .filter(|&p| !composite[p as usize])
        .collect()
}

pub struct ScanOutcome {
    pub family: Family,
    pub verdicts: Vec<CongruenceVerdict>,
    pub elapsed: Duration,
}

impl ScanOutcome {
    pub fn passed(&self) -> usize {
        self.verdicts.iter().filter(|v| v.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.verdicts.len() - self.passed()
    }
}

/// Check every qualifying prime in the range. Large primes are dispatched
/// first so the expensive Gamma products overlap the small tail; the
/// verdicts come back sorted by prime.
pub fn scan_family(
    family: Family,
    pmin: u64,
    pmax: u64,
    power: Option<u32>,
) -> Result<ScanOutcome, Error> {
    let start = Instant::now();
    let mut primes: Vec<u64> = sieve_primes(pmin, pmax)
        .into_iter()
        .filter(|&p| family.accepts(p))
        .collect();
    primes.sort_unstable_by(|a, b| b.cmp(a));
    let mut verdicts = primes
        .par_iter()
        .map(|&p| check_family(family, p, power))
        .collect::<Result<Vec<_>, _>>()?;
    verdicts.sort_by_key(|v| v.p);
    Ok(ScanOutcome {
        family,
        verdicts,
        elapsed: start.elapsed(),
    })
}

/// Families whose right-hand side is a Gamma product, the surface the
/// fault-injection hook perturbs.
const GAMMA_BACKED: [Family; 9] = [
    Family::A2VanHamme,
    Family::A2ModP4,
    Family::A2ConjectureP5,
    Family::A2SwisherP5,
    Family::H2VanHamme,
    Family::H2LrP3,
    Family::H2ModP4,
    Family::StepCc14,
    Family::StepDd7Dd8,
];

/// Test-only fault injection: bump the Gamma-derived side by p^(k-1) so the
/// verdict must flip to fail. Proves a corrupted right side cannot slip
/// through reproduction as a pass.
pub fn corrupt_gamma_side(v: &mut CongruenceVerdict, target_p: u64) {
    if v.p != target_p || !GAMMA_BACKED.contains(&v.family) {
        return;
    }
    let ctx = v.rhs.context().clone();
    let bump = BigInt::from(ctx.p()).pow(ctx.precision() - 1);
    v.rhs = v
        .rhs
        .checked_add(&ctx.residue_from_int(&bump))
        .expect("bump shares the verdict context");
    v.diff_valuation = residue_agreement(&v.lhs, &v.rhs);
    v.pass = v.diff_valuation.at_least(ctx.precision() as i64);
}

/// Every family at its published range, optionally capped. Returns one
/// outcome per family in canonical order.
pub fn reproduce_congruences(
    pmax_override: Option<u64>,
    corrupt_target: Option<u64>,
) -> Result<Vec<ScanOutcome>, Error> {
    let mut outcomes = Vec::new();
    for family in Family::ALL {
        let pmax = match pmax_override {
            Some(cap) => cap.min(family.default_pmax()),
            None => family.default_pmax(),
        };
        let mut outcome = scan_family(family, family.min_p(), pmax, None)?;
        if let Some(target) = corrupt_target {
            for v in &mut outcome.verdicts {
                corrupt_gamma_side(v, target);
            }
        }
        outcomes.push(outcome);
    }
    Ok(outcomes)
}
