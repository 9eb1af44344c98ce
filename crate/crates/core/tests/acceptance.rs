//! Acceptance gate: one line per criterion, nonzero exit on any failure.
//!
//! Runs every published check at its full range: the exact identity
//! battery, all seven congruence scans, the step-lemma checks, the Gamma
//! property suite, and the cross-path equivalence audit over every verdict
//! the scans produced.

use std::time::Instant;

use num::bigint::BigInt;
use num::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use supercong_core::gamma::{
    functional_equation_check, g1, gamma_p, gamma_p_int_with, pochhammer_gamma, s_p,
    unit_block_product, GammaEvalPlan,
};
use supercong_core::series::{a2_sum, a2_sum_residue, h2_sum, h2_sum_residue, pochhammer};
use supercong_core::verify::{
    check_cc10, check_cc13_cc14, check_cc8, check_dd4, check_dd7_dd8, check_family, check_j_remark,
    run_identity_suite, CongruenceVerdict, Family, IdentityName,
};
use supercong_core::{reduce, valuation, Error, PadicContext, Rational};

fn primes_upto(hi: u64) -> Vec<u64> {
    let n = hi as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut i = 2;
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
    (2..=hi).filter(|&p| !composite[p as usize]).collect()
}

struct Gate {
    failures: usize,
}

impl Gate {
    fn criterion<F>(&mut self, idx: u32, label: &str, budget_secs: Option<f64>, run: F)
    where
        F: FnOnce() -> Result<String, String>,
    {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed().as_secs_f64();
        let (verdict, detail) = match outcome {
            Ok(detail) => match budget_secs {
                Some(budget) if elapsed > budget => (
                    "FAIL",
                    format!("exceeded budget: {elapsed:.2} s > {budget:.0} s"),
                ),
                _ => ("PASS", detail),
            },
            Err(reason) => ("FAIL", reason),
        };
        if verdict == "FAIL" {
            self.failures += 1;
        }
        println!("criterion {idx:02} {verdict} {label} [{detail}, {elapsed:.2} s]");
    }
}

fn scan_all(
    ranges: &[(Family, u64, u64)],
    collected: &mut Vec<CongruenceVerdict>,
) -> Result<String, String> {
    let mut count = 0usize;
    for &(family, pmin, pmax) in ranges {
        for p in primes_upto(pmax) {
            if p < pmin || !family.accepts(p) {
                continue;
            }
            let v = check_family(family, p, None)
                .map_err(|e| format!("{family} errored at p = {p}: {e}"))?;
            if !v.pass {
                return Err(format!(
                    "{family} fails at p = {p}: v_diff = {} < {}",
                    v.diff_valuation, v.k
                ));
            }
            collected.push(v);
            count += 1;
        }
    }
    Ok(format!("{count} verdicts"))
}

fn identity_battery() -> Result<String, String> {
    let mut checked = 0usize;
    for (name, n_max) in [
        (IdentityName::Cc1, 99),
        (IdentityName::Cc5, 99),
        (IdentityName::Dd1, 99),
        (IdentityName::Dd2, 99),
        (IdentityName::Chu, 200),
    ] {
        let verdicts =
            run_identity_suite(name, n_max).map_err(|e| format!("{name} errored: {e}"))?;
        for v in &verdicts {
            if !v.pass {
                return Err(format!(
                    "{name} fails at n = {}: {} != {}",
                    v.n, v.lhs, v.rhs
                ));
            }
        }
        checked += verdicts.len();
    }
    Ok(format!("{checked} identities"))
}

fn step_battery() -> Result<String, String> {
    let mut parts = Vec::new();

    for p in [7u64, 11, 19, 23, 31] {
        let ks: Vec<u64> = (0..=(p - 1) / 2).collect();
        if !check_cc8(p, &ks).map_err(|e| format!("cc8 p = {p}: {e}"))? {
            return Err(format!("cc8 fails at p = {p}"));
        }
        if !check_dd4(p, &ks).map_err(|e| format!("dd4 p = {p}: {e}"))? {
            return Err(format!("dd4 fails at p = {p}"));
        }
    }
    parts.push("cc8/dd4 at 5 primes".to_string());

    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let one = BigRational::from_integer(BigInt::from(1));
    let zero = BigRational::from_integer(BigInt::from(0));
    let five_thirds = BigRational::new(BigInt::from(5), BigInt::from(3));
    for a in [&half, &one, &five_thirds] {
        if !check_cc10(a, &zero, 7, &(0..=6).collect::<Vec<_>>())
            .map_err(|e| format!("cc10 b = 0: {e}"))?
        {
            return Err(format!("cc10 fails for b = 0, a = {a}"));
        }
    }
    if !check_cc10(&half, &half, 7, &[0, 1, 2, 3]).map_err(|e| format!("cc10: {e}"))? {
        return Err("cc10 fails at a = b = 1/2, p = 7".to_string());
    }
    if !check_cc10(&one, &one, 11, &[0, 1, 2, 3, 4, 5]).map_err(|e| format!("cc10: {e}"))? {
        return Err("cc10 fails at a = b = 1, p = 11".to_string());
    }
    parts.push("cc10 samples".to_string());

    let mut class3_199 = 0usize;
    for p in primes_upto(199) {
        if p % 4 != 3 || p < 7 {
            continue;
        }
        if !check_cc13_cc14(p).map_err(|e| format!("cc13/cc14 p = {p}: {e}"))? {
            return Err(format!("cc13/cc14 fails at p = {p}"));
        }
        if !check_dd7_dd8(p).map_err(|e| format!("dd7/dd8 p = {p}: {e}"))? {
            return Err(format!("dd7/dd8 fails at p = {p}"));
        }
        class3_199 += 1;
    }
    parts.push(format!("cc13/cc14 and dd7/dd8 at {class3_199} primes"));

    let mut remark = 0usize;
    for p in primes_upto(499) {
        if p % 4 != 3 || p < 7 {
            continue;
        }
        if !check_j_remark(p).map_err(|e| format!("j-remark p = {p}: {e}"))? {
            return Err(format!("j-remark fails at p = {p}"));
        }
        remark += 1;
    }
    parts.push(format!("j-remark at {remark} primes"));

    Ok(parts.join(", "))
}

fn random_p_integral(rng: &mut StdRng, p: u64) -> Rational {
    let numer = rng.random_range(-1000i64..=1000);
    let denom = loop {
        let d = rng.random_range(1i64..=1000);
        if !(d as u64).is_multiple_of(p) {
            break d;
        }
    };
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

fn gamma_properties() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(0x5C0A << 8 | 0x97);
    let mut checked = 0usize;

    for p in [5u64, 7, 11, 13, 19, 23] {
        for k in 1..=4u32 {
            let ctx = PadicContext::new(p, k).map_err(|e| e.to_string())?;
            let minus_one = ctx.one().negate();
            if gamma_p(&BigRational::from_integer(BigInt::from(1)), &ctx)
                .map_err(|e| e.to_string())?
                != minus_one
            {
                return Err(format!("gamma(1) != -1 in {ctx}"));
            }

            for _ in 0..200 {
                let x = random_p_integral(&mut rng, p);

                let refl = &gamma_p(&x, &ctx).map_err(|e| e.to_string())?
                    * &gamma_p(&(BigRational::from_integer(BigInt::from(1)) - &x), &ctx)
                        .map_err(|e| e.to_string())?;
                let sign = s_p(&x, p).map_err(|e| e.to_string())?;
                let expected = if sign % 2 == 0 {
                    ctx.one()
                } else {
                    minus_one.clone()
                };
                if refl != expected {
                    return Err(format!("reflection fails at x = {x} in {ctx}"));
                }

                if !functional_equation_check(&x, &ctx).map_err(|e| e.to_string())? {
                    return Err(format!("step rule fails at x = {x} in {ctx}"));
                }

                let n = rng.random_range(0..10u64);
                match pochhammer_gamma(&x, n, &ctx) {
                    Ok(v) => {
                        let exact = reduce(&pochhammer(&x, n), &ctx).map_err(|e| e.to_string())?;
                        if v != exact {
                            return Err(format!(
                                "pochhammer mismatch at x = {x}, n = {n} in {ctx}"
                            ));
                        }
                    }
                    Err(Error::PochhammerHitsPZp { .. }) => {
                        let hit = (0..n).any(|j| {
                            valuation(&(&x + BigRational::from_integer(BigInt::from(j))), p)
                                .at_least(1)
                        });
                        if !hit {
                            return Err(format!(
                                "spurious pZp rejection at x = {x}, n = {n} in {ctx}"
                            ));
                        }
                    }
                    Err(e) => return Err(e.to_string()),
                }
                checked += 3;
            }
        }
    }

    // Shift consistency: gamma(a + bp) = gamma(a) (1 + g1(a) b p) mod p^2.
    for p in [7u64, 11, 19, 23] {
        let ctx2 = PadicContext::new(p, 2).map_err(|e| e.to_string())?;
        for _ in 0..40 {
            let a = random_p_integral(&mut rng, p);
            let b = rng.random_range(1..=4u64);
            let g = g1(&a, p).map_err(|e| e.to_string())?;
            let g_lift = ctx2.residue_from_int(&BigInt::from(g.value().clone()));
            let shift = BigRational::from_integer(BigInt::from(b * p));
            let lhs = gamma_p(&(&a + shift), &ctx2).map_err(|e| e.to_string())?;
            let correction = ctx2
                .one()
                .checked_add(&(&g_lift * &ctx2.residue_from_u64(b * p)))
                .map_err(|e| e.to_string())?;
            let rhs = &gamma_p(&a, &ctx2).map_err(|e| e.to_string())? * &correction;
            if lhs != rhs {
                return Err(format!(
                    "first-order shift fails at a = {a}, b = {b}, p = {p}"
                ));
            }
            checked += 1;
        }
    }

    // Projection coherence: the mod p^j image of a mod p^4 value matches a
    // direct mod p^j evaluation.
    for p in [5u64, 7, 11, 13, 19, 23] {
        let ctx4 = PadicContext::new(p, 4).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let x = random_p_integral(&mut rng, p);
            let top = gamma_p(&x, &ctx4).map_err(|e| e.to_string())?;
            for j in 1..=3u32 {
                let ctx_j = PadicContext::new(p, j).map_err(|e| e.to_string())?;
                let direct = gamma_p(&x, &ctx_j).map_err(|e| e.to_string())?;
                if top.project(j).map_err(|e| e.to_string())? != direct {
                    return Err(format!("projection to k = {j} fails at x = {x}, p = {p}"));
                }
            }
            checked += 3;
        }
    }

    // Strategy equivalence on the integer product.
    for p in [5u64, 7, 499] {
        let ctx = PadicContext::new(p, 3).map_err(|e| e.to_string())?;
        for _ in 0..25 {
            let m = num::BigUint::from(rng.random_range(0..1_000_000u64));
            let naive = gamma_p_int_with(&m, &ctx, &GammaEvalPlan::naive());
            let tree = gamma_p_int_with(&m, &ctx, &GammaEvalPlan::product_tree());
            if naive != tree {
                return Err(format!("strategies disagree at m = {m}, p = {p}"));
            }
            checked += 1;
        }
    }

    // Full unit blocks multiply to -1 at every scanned modulus.
    for p in primes_upto(199) {
        if p == 2 {
            continue;
        }
        for k in 1..=4u32 {
            let ctx = PadicContext::new(p, k).map_err(|e| e.to_string())?;
            if unit_block_product(&ctx) != ctx.one().negate() {
                return Err(format!("unit block product is not -1 in {ctx}"));
            }
            checked += 1;
        }
    }

    Ok(format!("{checked} property checks"))
}

fn cross_path_audit(verdicts: &[CongruenceVerdict]) -> Result<String, String> {
    if verdicts.is_empty() {
        return Err("no verdicts collected by the scans".to_string());
    }
    for v in verdicts {
        if !v.cross_checked {
            return Err(format!(
                "verdict {} p = {} was not dual-route checked",
                v.family, v.p
            ));
        }
    }

    // Independent re-derivation at the largest prime of each scanned family.
    let mut rederived = 0usize;
    for family in [
        Family::A2VanHamme,
        Family::A2ModP4,
        Family::A2ConjectureP5,
        Family::A2SwisherP5,
        Family::H2VanHamme,
        Family::H2LrP3,
        Family::H2ModP4,
    ] {
        let Some(v) = verdicts
            .iter()
            .filter(|v| v.family == family)
            .max_by_key(|v| v.p)
        else {
            return Err(format!("no verdicts for {family}"));
        };
        let ctx = PadicContext::new(v.p, v.k).map_err(|e| e.to_string())?;
        let n = (v.p - 1) / 2;
        let (fast, exact) = match family {
            Family::A2VanHamme | Family::A2ModP4 | Family::A2ConjectureP5 | Family::A2SwisherP5 => {
                (
                    a2_sum_residue(n, &ctx).map_err(|e| e.to_string())?,
                    reduce(&a2_sum(n), &ctx).map_err(|e| e.to_string())?,
                )
            }
            _ => (
                h2_sum_residue(n, &ctx).map_err(|e| e.to_string())?,
                reduce(&h2_sum(n), &ctx).map_err(|e| e.to_string())?,
            ),
        };
        if fast != exact {
            return Err(format!(
                "sum routes disagree for {family} at p = {}, k = {}",
                v.p, v.k
            ));
        }
        if fast != v.lhs {
            return Err(format!(
                "stored verdict side differs from re-derivation for {family} at p = {}",
                v.p
            ));
        }
        rederived += 1;
    }
    Ok(format!(
        "{} verdicts audited, {rederived} re-derived",
        verdicts.len()
    ))
}

fn main() {
    let mut gate = Gate { failures: 0 };
    let mut verdicts: Vec<CongruenceVerdict> = Vec::new();

    gate.criterion(
        1,
        "identity battery (cc1/cc5/dd1/dd2 odd n <= 99, chu n <= 200)",
        Some(30.0),
        identity_battery,
    );

    gate.criterion(2, "a2-vh scan, odd primes 3..=499 mod p^3", Some(120.0), {
        let v = &mut verdicts;
        move || scan_all(&[(Family::A2VanHamme, 3, 499)], v)
    });

    gate.criterion(3, "a2-thm12 scan, 7..=199 mod p^4", Some(180.0), {
        let v = &mut verdicts;
        move || scan_all(&[(Family::A2ModP4, 7, 199)], v)
    });

    gate.criterion(4, "a2-conj12 scan, 7..=59 mod p^5", Some(300.0), {
        let v = &mut verdicts;
        move || scan_all(&[(Family::A2ConjectureP5, 7, 59)], v)
    });

    gate.criterion(5, "a2-swisher scan, 5..=61 mod p^5", None, {
        let v = &mut verdicts;
        move || scan_all(&[(Family::A2SwisherP5, 5, 61)], v)
    });

    gate.criterion(
        6,
        "h2-vh scan 3..=499 mod p^2 and h2-lr scan 5..=499 mod p^3",
        None,
        {
            let v = &mut verdicts;
            move || scan_all(&[(Family::H2VanHamme, 3, 499), (Family::H2LrP3, 5, 499)], v)
        },
    );

    gate.criterion(7, "h2-thm15 scan, 7..=199 mod p^4", None, {
        let v = &mut verdicts;
        move || scan_all(&[(Family::H2ModP4, 7, 199)], v)
    });

    gate.criterion(
        8,
        "step checks (cc8/dd4, cc10, cc13/cc14, dd7/dd8, j-remark)",
        None,
        step_battery,
    );

    gate.criterion(
        9,
        "gamma property suite (reflection, step, pochhammer, shift, projection, strategies, unit blocks)",
        None,
        gamma_properties,
    );

    gate.criterion(
        10,
        "cross-path equivalence on every scan verdict",
        None,
        || cross_path_audit(&verdicts),
    );

    if gate.failures == 0 {
        println!("acceptance: all 10 criteria passed");
        std::process::exit(0);
    } else {
        println!("acceptance: {} criterion(s) failed", gate.failures);
        std::process::exit(1);
    }
}
