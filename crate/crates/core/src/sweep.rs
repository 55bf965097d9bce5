//! The dichotomy experiment: convergent-based approximation pairs for several
//! `(α, β)` instances, archimedean and 17-adic, checked against the gap principle.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algnum::padic::{hensel_root, PadicAlgNum};
use crate::algnum::AlgNum;
use crate::error::{Error, Result};
use crate::exact::{IntPoly, RatPoly};
use crate::gap::{self, derived_approx, normalize_fraction, GapInstance, Metric, Verdict};
use crate::thue::convergents;

/// Pairs checked per convergent of `α`.
const PARTNERS: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct InstanceSummary {
    pub name: String,
    pub metric: Metric,
    pub degree: usize,
    pub mu: String,
    pub mobius: bool,
    pub pair_r: usize,
    pub pairs: usize,
    pub verdicts: BTreeMap<String, usize>,
    /// `C1`/`C3` and `C2`/`C4`, rounded up.
    pub small: String,
    pub big: String,
    pub argmax: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub instances: Vec<InstanceSummary>,
    pub total: usize,
    pub violations: usize,
    pub abstentions: usize,
    pub abstention_rate: f64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.abstention_rate < 0.05
    }
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v).ok().and_then(|s| s.as_str().map(String::from)).unwrap_or_default()
}

fn real_root(f: &[i64], near: f64) -> Result<AlgNum> {
    let re = BigRational::from_float(near).ok_or_else(|| Error::invalid("bad float"))?;
    AlgNum::nearest(&IntPoly::from_high(f), &re, &BigRational::zero())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn summarize(name: &str, inst: &GapInstance, verdicts: &[Verdict]) -> InstanceSummary {
    let mut counts = BTreeMap::new();
    for v in verdicts {
        *counts.entry(verdict_name(*v)).or_insert(0) += 1;
    }
    let c = &inst.constants;
    InstanceSummary {
        name: name.to_string(),
        metric: inst.metric,
        degree: inst.degree(),
        mu: inst.mu.to_string(),
        mobius: inst.mobius.is_some(),
        pair_r: inst.pair.r,
        pairs: verdicts.len(),
        verdicts: counts,
        small: c.small.sci_up(6),
        big: c.big.sci_up(6),
        argmax: c.branches[c.argmax].name,
    }
}

type Frac = (BigInt, BigInt);

fn fractions(alpha: &AlgNum, count: usize) -> Result<Vec<Frac>> {
    Ok(convergents(alpha, count)?.into_iter().map(|c| (c.x, c.y)).collect())
}

/// Pair each approximation of `α` with the next few approximations of `β` of at least its height.
fn pairings(first: &[Frac], second: &[Frac]) -> Vec<(Frac, Frac)> {
    let h = |f: &Frac| f.0.abs().max(f.1.abs());
    let mut out = Vec::new();
    for a in first {
        let partners = second.iter().filter(|b| h(b) >= h(a)).take(PARTNERS);
        out.extend(partners.map(|b| (a.clone(), b.clone())));
    }
    out
}

fn run_pairs(inst: &GapInstance, pairs: &[(Frac, Frac)]) -> Result<Vec<Verdict>> {
    pairs.iter().map(|(a, b)| Ok(inst.check((&a.0, &a.1), (&b.0, &b.1))?.verdict)).collect()
}

/// Archimedean instance from convergents of both numbers, plus Möbius-transported pairs.
pub fn archimedean_instance(name: &str, alpha: &AlgNum, beta: &AlgNum, count: usize) -> Result<InstanceSummary> {
    let mu = gap::default_mu(&BigInt::from(alpha.degree()));
    let inst = GapInstance::archimedean(alpha, beta, &mu, &BigRational::one())?;
    let first = fractions(alpha, count)?;
    let second = fractions(beta, count + 8)?;
    let mut pairs = pairings(&first, &second);
    if let Some(rel) = &inst.mobius {
        for a in &first {
            if let Ok(b) = derived_approx(&a.0, &a.1, rel) {
                pairs.push((a.clone(), b));
            }
        }
    }
    let verdicts = run_pairs(&inst, &pairs)?;
    Ok(summarize(name, &inst, &verdicts))
}

/// `b mod p^k` for `b = elem(α)` with denominators prime to `p`.
pub fn padic_residue(xi: &PadicAlgNum, elem: &RatPoly, k: u32) -> Result<BigInt> {
    let m = xi.modulus(k);
    let a = xi.lift(k);
    let mut acc = BigInt::zero();
    for c in elem.coeffs().iter().rev() {
        let den = c.denom();
        let inv = den.extended_gcd(&m);
        if !inv.gcd.is_one() {
            return Err(Error::invalid("denominator divisible by p"));
        }
        let term = (c.numer() * inv.x).mod_floor(&m);
        acc = (acc * &a + term).mod_floor(&m);
    }
    Ok(acc)
}

/// Shortest nonzero `(x, y)` with `x ≡ b y (mod n)`, by Gauss reduction.
pub fn lattice_approximation(b: &BigInt, n: &BigInt) -> Frac {
    let norm = |v: &Frac| &v.0 * &v.0 + &v.1 * &v.1;
    let mut u: Frac = (n.clone(), BigInt::zero());
    let mut v: Frac = (b.mod_floor(n), BigInt::one());
    if norm(&u) < norm(&v) {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        // u is the longer vector
        let dot = &u.0 * &v.0 + &u.1 * &v.1;
        let nv = norm(&v);
        let q = BigRational::new(dot, nv.clone()).round().to_integer();
        let w = (&u.0 - &q * &v.0, &u.1 - &q * &v.1);
        if norm(&w) >= nv {
            break;
        }
        u = v;
        v = w;
    }
    if v.1.is_zero() {
        v = u;
    }
    normalize_fraction(v.0, v.1)
}

/// 17-adic instance for the root of `x³ - 3x - 1` congruent to 3 and `β = α² - 2`.
pub fn padic_instance(count: u32) -> Result<InstanceSummary> {
    let f = IntPoly::from_high(&[1, 0, -3, -1]);
    let xi = hensel_root(&f, &BigInt::from(17), &BigInt::from(3))?;
    let beta = RatPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)]);
    let mu = gap::default_mu(&BigInt::from(3));
    let inst = GapInstance::padic(&xi, &beta, &mu, &BigRational::one())?;
    let alpha_elem = RatPoly::monomial(BigRational::one(), 1);
    let mut first = Vec::new();
    let mut second = Vec::new();
    for k in 1..=count {
        let n = xi.modulus(k);
        first.push(lattice_approximation(&padic_residue(&xi, &alpha_elem, k)?, &n));
        second.push(lattice_approximation(&padic_residue(&xi, &beta, k)?, &n));
    }
    first.dedup();
    second.dedup();
    let mut pairs = pairings(&first, &second);
    if let Some(rel) = &inst.mobius {
        for a in &first {
            if let Ok(b) = derived_approx(&a.0, &a.1, rel) {
                pairs.push((a.clone(), b));
            }
        }
    }
    let verdicts = run_pairs(&inst, &pairs)?;
    Ok(summarize("cubic x^3-3x-1, 17-adic root 3, beta = a^2-2", &inst, &verdicts))
}

/// The full experiment suite.
pub fn run_sweep() -> Result<SweepReport> {
    let mut instances = Vec::new();

    let quartic = [1, -1, -4, 4, 1];
    let a = real_root(&quartic, 1.827)?;
    let b = real_root(&quartic, 0.618)?;
    instances.push(archimedean_instance("2cos(2pi/15), 2cos(4pi/15)", &a, &b, 20)?);

    let c = real_root(&[1, 0, 0, -2], 1.26)?;
    let k = c.field();
    let num = RatPoly::new(vec![rat(1, 1), rat(2, 1)]);
    let den = RatPoly::new(vec![rat(1, 1), rat(1, 1)]);
    let mob = c.from_element(&k.mul(&num, &k.inv(&den)?))?;
    instances.push(archimedean_instance("2^(1/3), (2a+1)/(a+1)", &c, &mob, 20)?);

    let g = real_root(&[1, 0, -3, -1], 1.879)?;
    let g2 = g.from_element(&RatPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)]))?;
    instances.push(archimedean_instance("x^3-3x-1, beta = a^2-2", &g, &g2, 20)?);

    let q = real_root(&[1, 0, 0, 0, -2], 1.189)?;
    let kq = q.field();
    let num = RatPoly::new(vec![rat(1, 1), rat(1, 1)]);
    let den = RatPoly::new(vec![rat(-1, 1), rat(1, 1)]);
    let qb = q.from_element(&kq.mul(&num, &kq.inv(&den)?))?;
    instances.push(archimedean_instance("2^(1/4), (a+1)/(a-1)", &q, &qb, 20)?);

    instances.push(padic_instance(40)?);

    let total: usize = instances.iter().map(|i| i.pairs).sum();
    let count = |v: Verdict| -> usize {
        let key = verdict_name(v);
        instances.iter().map(|i| i.verdicts.get(&key).copied().unwrap_or(0)).sum()
    };
    let violations = count(Verdict::Violation);
    let abstentions = count(Verdict::Abstain);
    let abstention_rate = if total == 0 { 1.0 } else { abstentions as f64 / total as f64 };
    Ok(SweepReport { instances, total, violations, abstentions, abstention_rate })
}
