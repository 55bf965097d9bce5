//! Irreducibility over `ℚ` by searching for a rational factor among products of
//! certified roots.
//!
//! A factor `h` of a primitive `f` in `ℤ[x]` has `lc(h) | lc(f)`, so for the set
//! `S` of its roots `lc(f) ∏_{α∈S} (x - α)` has integer coefficients. Sets `S`
//! are closed under complex conjugation; any set whose enclosed coefficients
//! miss every integer is discarded, and the survivors are checked by exact
//! division.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ball::{Ball, CBall};
use super::poly::IntPoly;
use super::roots::{isolate_roots, RootEnclosure};
use crate::error::{Error, Result};

enum Probe {
    Factor(IntPoly),
    NoFactor,
    Undecided,
}

/// The unique integer inside `b`, `None` if there is none, `Err` if the ball is too wide.
fn integer_in(b: &Ball) -> std::result::Result<Option<BigInt>, ()> {
    let lo = b.lower().ceil();
    let hi = b.upper().floor();
    if lo > hi {
        Ok(None)
    } else if lo == hi {
        Ok(Some(lo))
    } else {
        Err(())
    }
}

fn probe(f: &IntPoly, roots: &[CBall], chosen: &[usize], wp: u32) -> Probe {
    let lc = f.leading();
    // trace test first: lc * Σ α must be close to an integer
    let mut tr = Ball::zero(wp);
    for &i in chosen {
        tr = &tr + &roots[i].re;
    }
    let tr = &tr * &Ball::from_int(lc.clone(), wp);
    match integer_in(&tr) {
        Ok(None) => return Probe::NoFactor,
        Err(()) => return Probe::Undecided,
        Ok(Some(_)) => {}
    }
    let mut prod = vec![CBall::from_int(lc, wp)];
    for &i in chosen {
        let mut next = vec![CBall::zero(wp); prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &(c * &roots[i]);
        }
        prod = next;
    }
    let mut coeffs = Vec::with_capacity(prod.len());
    for c in &prod {
        match integer_in(&c.re) {
            Ok(Some(n)) => coeffs.push(n),
            Ok(None) => return Probe::NoFactor,
            Err(()) => return Probe::Undecided,
        }
    }
    let g = IntPoly::new(coeffs).primitive();
    if g.degree() > 0 && g.degree() < f.degree() && f.exact_div(&g).is_some() {
        Probe::Factor(g)
    } else {
        Probe::NoFactor
    }
}

/// Conjugation orbits of the roots as index groups.
fn orbits(roots: &[RootEnclosure], wp: u32) -> Vec<Vec<usize>> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        if roots[i].is_real() {
            out.push(vec![i]);
            continue;
        }
        let conj = roots[i].cball(wp).conj();
        let j = (0..roots.len())
            .find(|&j| !used[j] && !roots[j].is_real() && roots[j].cball(wp).overlaps(&conj))
            .expect("conjugate root present");
        used[j] = true;
        out.push(vec![i, j]);
    }
    out
}

fn search(
    f: &IntPoly,
    pts: &[CBall],
    groups: &[Vec<usize>],
    start: usize,
    chosen: &mut Vec<usize>,
    limit: usize,
    wp: u32,
    undecided: &mut bool,
) -> Option<IntPoly> {
    for g in start..groups.len() {
        if chosen.len() + groups[g].len() > limit {
            continue;
        }
        let mark = chosen.len();
        chosen.extend(&groups[g]);
        match probe(f, pts, chosen, wp) {
            Probe::Factor(h) => return Some(h),
            Probe::Undecided => *undecided = true,
            Probe::NoFactor => {}
        }
        if let Some(h) = search(f, pts, groups, g + 1, chosen, limit, wp, undecided) {
            return Some(h);
        }
        chosen.truncate(mark);
    }
    None
}

/// A proper factor of `f` in `ℤ[x]`, if one exists.
pub fn find_factor(f: &IntPoly) -> Result<Option<IntPoly>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree();
    if d <= 1 {
        return Ok(None);
    }
    let f = f.primitive();
    if !f.is_squarefree() {
        return Ok(Some(f.gcd(&f.derivative())));
    }
    let bits = f.height().bits() as u32 + 2 * d as u32 + f.leading().abs().bits() as u32;
    let mut wp = bits + 64;
    while wp < 1 << 16 {
        let roots = isolate_roots(&f, wp)?;
        let groups = orbits(&roots, wp);
        let pts: Vec<CBall> = roots.iter().map(|r| r.cball(wp)).collect();
        let mut undecided = false;
        let mut chosen = Vec::new();
        if let Some(h) = search(&f, &pts, &groups, 0, &mut chosen, d / 2, wp, &mut undecided) {
            return Ok(Some(h));
        }
        if !undecided {
            return Ok(None);
        }
        wp *= 2;
    }
    Err(Error::Precision("irreducibility test".into()))
}

/// True if `f` is irreducible over `ℚ` (a nonzero constant multiple of an irreducible polynomial).
pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Ok(false);
    }
    Ok(find_factor(f)?.is_none())
}

/// Rational roots of `f`, sorted.
pub fn rational_roots(f: &IntPoly) -> Result<Vec<num_rational::BigRational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if f.degree() == 0 {
        return Ok(out);
    }
    let g = f.squarefree_part();
    for r in isolate_roots(&g, 64)? {
        if !r.is_real() {
            continue;
        }
        let (lo, hi) = r.real_interval().expect("real");
        // candidate p/q with q | lc: find the single rational with small denominator in the interval
        let lc = g.leading().abs();
        let mut q = BigInt::from(1);
        while q <= lc {
            if (&lc % &q).is_zero() {
                let ql = lo.to_rational() * num_rational::BigRational::from_integer(q.clone());
                let qh = hi.to_rational() * num_rational::BigRational::from_integer(q.clone());
                let mut p = ql.ceil().to_integer();
                while num_rational::BigRational::from_integer(p.clone()) <= qh {
                    let cand = num_rational::BigRational::new(p.clone(), q.clone());
                    if g.eval_rational(&cand).is_zero() && !out.contains(&cand) {
                        out.push(cand);
                    }
                    p += 1;
                }
            }
            q += 1;
            if q > BigInt::from(1_000_000) {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}
