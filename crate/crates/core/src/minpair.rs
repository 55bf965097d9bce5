//! Minimal pairs `(P, Q)` with `P(α) + β Q(α) = 0`, their Wronskian and the
//! constants C12, C13, C14.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algnum::{c8, c9_with_house, denominator_scalar, AlgNum, PadicAlgNum, PowerBasisRep};
use crate::error::{Error, Result};
use crate::exact::linalg::{hermite_rows, kernel_int, kernel_rational, lll};
use crate::exact::roots::house;
use crate::exact::{Ball, IntPoly, QSqrt, RatPoly};

/// How the height of a pair was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Minimality {
    /// Height minimized by exhaustive lattice enumeration.
    Exact,
    /// A short kernel vector, compared against the Siegel bound.
    SiegelBounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPair {
    pub p: IntPoly,
    pub q: IntPoly,
    pub r: usize,
    /// `max{H(P), H(Q)}`.
    pub height: BigInt,
    pub minimality: Minimality,
    /// Siegel bound for the degree-`⌊d/2⌋` system and whether the pair respects it.
    pub siegel_bound: BigInt,
    pub within_siegel_bound: bool,
}

/// The `d` linear conditions on `(p_0..p_s, q_0..q_s)` expressing `P(α) + βQ(α) = 0`.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub s: usize,
    pub rational: Vec<Vec<BigRational>>,
    /// `denominator_scalar · c_α^s`.
    pub scale: BigInt,
    pub integer: Vec<Vec<BigInt>>,
}

impl LinearSystem {
    pub fn columns(&self) -> usize {
        2 * self.s + 2
    }

    /// `max |entry|` of the integer matrix.
    pub fn max_entry(&self) -> BigInt {
        self.integer.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

/// Build the system for polynomials of degree at most `s`.
pub fn build_system(alpha: &AlgNum, rep: &PowerBasisRep, s: usize) -> LinearSystem {
    let d = alpha.degree();
    let k = alpha.field();
    let b = rep.as_poly();
    let mut cols: Vec<RatPoly> = Vec::with_capacity(2 * s + 2);
    for i in 0..=s {
        cols.push(k.reduce(&RatPoly::monomial(BigRational::one(), i)));
    }
    for j in 0..=s {
        cols.push(k.reduce(&b.mul(&RatPoly::monomial(BigRational::one(), j))));
    }
    let rational: Vec<Vec<BigRational>> = (0..d).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect();
    let scale = denominator_scalar(rep) * num_traits::pow(alpha.leading().abs(), s);
    let sq = BigRational::from_integer(scale.clone());
    let integer = rational
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let v = x * &sq;
                    assert!(v.is_integer(), "scaled system must be integral");
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    LinearSystem { s, rational, scale, integer }
}

/// Split a kernel vector into `(P, Q)`.
pub fn pair_from_vector(v: &[BigInt], s: usize) -> (IntPoly, IntPoly) {
    (IntPoly::new(v[..=s].to_vec()), IntPoly::new(v[s + 1..].to_vec()))
}

fn siegel_bound(sys: &LinearSystem, d: usize) -> BigInt {
    let n = sys.columns();
    let m = d;
    let e = m / (n - m);
    num_traits::pow(BigInt::from(n as u64) * sys.max_entry(), e)
}

/// Sign-normalize so that `lc(Q) > 0`.
fn normalize(v: &[BigInt], s: usize) -> Vec<BigInt> {
    let q_lead = v[s + 1..].iter().rev().find(|x| !x.is_zero()).cloned().unwrap_or_else(BigInt::zero);
    if q_lead.is_negative() {
        v.iter().map(|x| -x).collect()
    } else {
        v.to_vec()
    }
}

struct Enumerator<'a> {
    rows: &'a [Vec<BigInt>],
    pivots: Vec<usize>,
    h: BigInt,
    budget: u64,
    found: Vec<Vec<BigInt>>,
    stop_at_first: bool,
}

impl Enumerator<'_> {
    fn run(&mut self, i: usize, acc: Vec<BigInt>) -> Result<bool> {
        if self.budget == 0 {
            return Err(Error::Precision("lattice enumeration budget exhausted".into()));
        }
        self.budget -= 1;
        let n = acc.len();
        let upto = if i < self.rows.len() { self.pivots[i] } else { n };
        let start = if i == 0 { 0 } else { self.pivots[i - 1] };
        if acc[start..upto].iter().any(|x| x.abs() > self.h) {
            return Ok(false);
        }
        if i == self.rows.len() {
            if acc.iter().any(|x| !x.is_zero()) {
                self.found.push(acc);
                return Ok(self.stop_at_first);
            }
            return Ok(false);
        }
        let c = self.pivots[i];
        let piv = &self.rows[i][c];
        let lo = (-&self.h - &acc[c]).div_ceil(piv);
        let hi = (&self.h - &acc[c]).div_floor(piv);
        let mut lam = lo;
        while lam <= hi {
            let next: Vec<BigInt> = acc.iter().zip(&self.rows[i]).map(|(a, r)| a + &lam * r).collect();
            if self.run(i + 1, next)? {
                return Ok(true);
            }
            lam += 1;
        }
        Ok(false)
    }
}

fn enumerate(rows: &[Vec<BigInt>], h: &BigInt, stop_at_first: bool, budget: u64) -> Result<Vec<Vec<BigInt>>> {
    let pivots = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
    let n = rows[0].len();
    let mut e = Enumerator { rows, pivots, h: h.clone(), budget, found: Vec::new(), stop_at_first };
    e.run(0, vec![BigInt::zero(); n])?;
    Ok(e.found)
}

const ENUMERATION_BUDGET: u64 = 5_000_000;

/// The minimal `r` and an integer basis of the degree-`r` kernel lattice.
fn minimal_degree(alpha: &AlgNum, rep: &PowerBasisRep) -> Result<(usize, LinearSystem, Vec<Vec<BigInt>>)> {
    let d = alpha.degree();
    for r in 1..=d / 2 {
        let sys = build_system(alpha, rep, r);
        if kernel_rational(&sys.rational, sys.columns()).is_empty() {
            continue;
        }
        let basis = kernel_int(&sys.integer, sys.columns());
        return Ok((r, sys, basis));
    }
    Err(Error::Invariant("no relation of degree at most d/2 (impossible for β in ℚ(α))".into()))
}

/// Minimal pair for `β = Σ b_i α^i`.
pub fn find_pair_rep(alpha: &AlgNum, rep: &PowerBasisRep, mode: Minimality) -> Result<MinimalPair> {
    let d = alpha.degree();
    if rep.coeffs().iter().skip(1).all(|c| c.is_zero()) {
        return Err(Error::Rational);
    }
    let (r, _sys, basis) = minimal_degree(alpha, rep)?;
    let s_sys = build_system(alpha, rep, d / 2);
    let bound = siegel_bound(&s_sys, d);
    let reduced = lll(basis.clone()).basis;
    let norm = |v: &Vec<BigInt>| v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero);
    let best = reduced.iter().min_by(|a, b| norm(a).cmp(&norm(b))).expect("nonzero kernel").clone();
    let vec = match mode {
        Minimality::SiegelBounded => normalize(&best, r),
        Minimality::Exact => {
            let echelon = hermite_rows(basis);
            let (mut lo, mut hi) = (BigInt::zero(), norm(&best));
            // smallest h admitting a nonzero vector of max-norm at most h
            while &hi - &lo > BigInt::one() {
                let mid: BigInt = (&lo + &hi) / 2;
                if enumerate(&echelon, &mid, true, ENUMERATION_BUDGET)?.is_empty() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let all = enumerate(&echelon, &hi, false, ENUMERATION_BUDGET)?;
            all.iter().map(|v| normalize(v, r)).min().expect("vector of height h exists")
        }
    };
    let (p, q) = pair_from_vector(&vec, r);
    let height = p.height().max(q.height());
    let within = height <= bound;
    Ok(MinimalPair { p, q, r, height, minimality: mode, siegel_bound: bound, within_siegel_bound: within })
}

/// Minimal pair for `(α, β)`; `β` must lie in `ℚ(α)` and be irrational.
pub fn find_pair(alpha: &AlgNum, beta: &AlgNum, mode: Minimality) -> Result<MinimalPair> {
    if beta.is_rational() {
        return Err(Error::Rational);
    }
    let rep = crate::algnum::power_rep(alpha, beta)?;
    find_pair_rep(alpha, &rep, mode)
}

/// Divisibility data for a second pair `(P̂, Q̂)` against a minimal pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part3 {
    /// `P̂ Q - Q̂ P = 0`.
    pub cross_vanishes: bool,
    /// `G` with `P̂ = G P` and `Q̂ = G Q`.
    pub factor: Option<RatPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairChecks {
    pub vanishing: bool,
    pub coprime: bool,
    pub degree: bool,
    pub part3: Option<Part3>,
}

impl PairChecks {
    pub fn all_pass(&self) -> bool {
        self.vanishing && self.coprime && self.degree && self.part3.as_ref().is_none_or(|p| p.factor.is_some())
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.vanishing {
            out.push("vanishing");
        }
        if !self.coprime {
            out.push("coprime");
        }
        if !self.degree {
            out.push("degree");
        }
        if self.part3.as_ref().is_some_and(|p| p.factor.is_none()) {
            out.push("part3");
        }
        out
    }
}

/// `P(α) + β Q(α)` reduced in `ℚ(α)`.
pub fn relation_value(alpha: &AlgNum, rep: &PowerBasisRep, p: &IntPoly, q: &IntPoly) -> RatPoly {
    let k = alpha.field();
    k.reduce(&p.to_rat().add(&rep.as_poly().mul(&q.to_rat())))
}

/// Check the defining properties of a candidate pair.
pub fn verify_pair_rep(alpha: &AlgNum, rep: &PowerBasisRep, p: &IntPoly, q: &IntPoly) -> PairChecks {
    let d = alpha.degree();
    let vanishing = !(p.is_zero() && q.is_zero()) && relation_value(alpha, rep, p, q).is_zero();
    let coprime = if p.is_zero() || q.is_zero() {
        p.add(q).degree() == 0
    } else {
        p.gcd(q).degree() == 0
    };
    let r = p.degree().max(q.degree());
    let degree = r >= 1 && r <= d / 2;
    PairChecks { vanishing, coprime, degree, part3: None }
}

/// [`verify_pair_rep`] with `β` given as an algebraic number.
pub fn verify_pair(alpha: &AlgNum, beta: &AlgNum, p: &IntPoly, q: &IntPoly) -> Result<PairChecks> {
    let rep = crate::algnum::power_rep(alpha, beta)?;
    Ok(verify_pair_rep(alpha, &rep, p, q))
}

/// Check that `(P̂, Q̂)` is a multiple `G (P, Q)` of the pair `(P, Q)` and extract `G`.
pub fn part3(p: &IntPoly, q: &IntPoly, p_hat: &IntPoly, q_hat: &IntPoly) -> Part3 {
    let cross = p_hat.mul(q).sub(&q_hat.mul(p));
    if !cross.is_zero() {
        return Part3 { cross_vanishes: false, factor: None };
    }
    let (num, den) = if !p.is_zero() { (p_hat, p) } else { (q_hat, q) };
    if den.is_zero() {
        return Part3 { cross_vanishes: true, factor: None };
    }
    let (g, rem) = num.to_rat().divrem(&den.to_rat());
    let ok = rem.is_zero() && g.mul(&q.to_rat()) == q_hat.to_rat() && g.mul(&p.to_rat()) == p_hat.to_rat();
    Part3 { cross_vanishes: true, factor: ok.then_some(g) }
}

/// `W = P Q' - Q P'`.
pub fn wronskian(p: &IntPoly, q: &IntPoly) -> IntPoly {
    p.mul(&q.derivative()).sub(&q.mul(&p.derivative()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C12 {
    /// Closed-form bound including the factor `2^{d/2}`, rounded up.
    pub closed_form: BigRational,
    /// `max{H(P), H(Q)}` of the computed pair.
    pub tautological: BigInt,
    pub value: BigRational,
}

/// `((2s+2) D c_α^s C9 (1 + s C8^s))^{d/(2s+2-d)} 2^{d/2}` against the pair's own height.
pub fn c12(alpha: &AlgNum, rep: &PowerBasisRep, pair: &MinimalPair) -> Result<C12> {
    let d = alpha.degree();
    let s = d / 2;
    let g = alpha.field().minpoly(&rep.as_poly());
    let hb = house(&g, 64)?;
    let c9v = c9_with_house(alpha, &hb, 64)?;
    let c8v = c8(alpha);
    let dd = BigRational::from_integer(denominator_scalar(rep));
    let ca = BigRational::from_integer(num_traits::pow(alpha.leading().abs(), s));
    let sq = BigRational::from_integer(BigInt::from(s as u64));
    let base = BigRational::from_integer(BigInt::from(2 * s as u64 + 2))
        * dd
        * ca
        * c9v
        * (BigRational::one() + sq * num_traits::pow(c8v, s));
    let e = d / (2 * s + 2 - d);
    let closed = QSqrt::half_power(&BigInt::from(2), d as i64).scale(&num_traits::pow(base, e)).round_up(64);
    let taut = pair.height.clone();
    let tq = BigRational::from_integer(taut.clone());
    let value = if tq < closed { tq } else { closed.clone() };
    Ok(C12 { closed_form: closed, tautological: taut, value })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianBound {
    /// Rounded-down value from the direct enclosure or exact valuation.
    pub direct: BigRational,
    /// Rounded-down closed-form bound.
    pub formula: BigRational,
    pub value: BigRational,
}

/// Lower bound for `|W(α)|`: the larger of a certified enclosure and the closed form.
pub fn c13(alpha: &AlgNum, pair: &MinimalPair, c12v: &BigRational, bits: u32) -> Result<WronskianBound> {
    let w = wronskian(&pair.p, &pair.q);
    let d = alpha.degree() as u64;
    let prec = bits.max(64) + 32;
    let mut b = bits.max(64);
    let direct = loop {
        let v = w.to_rat().eval_cball(&alpha.cball(b)?).abs();
        if v.is_positive() {
            break v.lower_rational();
        }
        b *= 2;
        if b > 1 << 14 {
            return Err(Error::Precision("W(α) not separated from zero".into()));
        }
    };
    let one = Ball::one(prec);
    let d3 = BigRational::new(BigInt::from(d * d * d), BigInt::from(2));
    let first = num_traits::pow(d3 * c12v * c12v, (d - 1) as usize);
    let mah = alpha.mahler(b)?;
    let ca = Ball::from_int(num_traits::pow(alpha.leading().abs(), (d - 1) as usize), prec);
    let m1 = alpha.abs(b)?.max(&one);
    let second = (&ca * &mah).div(&m1).expect("positive").pow_u(d - 1);
    let den = &Ball::from_rational(&first, prec) * &second;
    let formula = den.recip().expect("positive").lower_rational().max(BigRational::zero());
    let value = if direct > formula { direct.clone() } else { formula.clone() };
    Ok(WronskianBound { direct, formula, value })
}

/// Lower bound for `|W(α)|_p`: exact valuation when available, else the closed form.
pub fn c14(xi: &PadicAlgNum, pair: &MinimalPair, c12v: &BigRational) -> WronskianBound {
    let w = wronskian(&pair.p, &pair.q);
    let d = xi.degree() as u64;
    let direct = xi.abs_of_poly(&w, 64).value().unwrap_or_else(BigRational::zero);
    let half = QSqrt::half_power(&BigInt::from(d + 1), d as i64 - 1).mul(&QSqrt::half_power(&BigInt::from(d), d as i64));
    let h = BigRational::from_integer(num_traits::pow(xi.height(), 2 * d as usize - 2));
    let d2 = BigRational::new(BigInt::from(d * d), BigInt::from(2));
    let rest = h * num_traits::pow(d2 * c12v * c12v, d as usize);
    let den = half.scale(&rest).round_up(64);
    let formula = den.recip();
    let value = if direct > formula { direct.clone() } else { formula.clone() };
    WronskianBound { direct, formula, value }
}

/// `true` if `max{H(P), H(Q)}` respects the bound `(2r^2) H(P) H(Q)` for the Wronskian height.
pub fn wronskian_height_ok(pair: &MinimalPair) -> bool {
    let w = wronskian(&pair.p, &pair.q);
    let r = BigInt::from(pair.r as u64);
    w.height() <= BigInt::from(2) * &r * &r * pair.p.height() * pair.q.height()
}

/// Convenience: number of kernel dimensions of the degree-`s` system.
pub fn kernel_dimension(sys: &LinearSystem) -> usize {
    kernel_rational(&sys.rational, sys.columns()).len()
}

/// Denominator-free Siegel exponent check used in reports.
pub fn siegel_exponent(d: usize) -> BigRational {
    let s = d / 2;
    BigRational::new(BigInt::from(d as u64), BigInt::from((2 * s + 2 - d) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::power_rep;
    use num_traits::ToPrimitive;

    fn cos15_pair() -> (AlgNum, AlgNum) {
        let a = AlgNum::new(&IntPoly::from_high(&[1, -1, -4, 4, 1]), 3).unwrap();
        let k = a.field();
        let b2 = k.reduce(&RatPoly::new(vec![
            BigRational::from_integer((-2).into()),
            BigRational::zero(),
            BigRational::one(),
        ]));
        let b = a.from_element(&b2).unwrap();
        (a, b)
    }

    #[test]
    fn example_pair() {
        let (a, b) = cos15_pair();
        let pair = find_pair(&a, &b, Minimality::Exact).unwrap();
        assert_eq!(pair.r, 2);
        assert_eq!(pair.height, BigInt::from(2));
        assert_eq!(pair.p, IntPoly::from_high(&[-1, 2, -1]));
        assert_eq!(pair.q, IntPoly::from_high(&[1, -1, -1]));
        for (p, q) in [([-1, 0, 2], [0, 0, 1]), ([-1, 2, -1], [1, -1, -1])] {
            let checks = verify_pair(&a, &b, &IntPoly::from_high(&p), &IntPoly::from_high(&q)).unwrap();
            assert!(checks.all_pass(), "{checks:?}");
        }
        let bad = verify_pair(&a, &b, &IntPoly::constant(1), &IntPoly::constant(1)).unwrap();
        assert_eq!(bad.failures(), vec!["vanishing", "degree"]);
        let siegel = find_pair(&a, &b, Minimality::SiegelBounded).unwrap();
        assert_eq!(siegel.r, 2);
        assert!(siegel.within_siegel_bound);
    }

    #[test]
    fn mobius_and_degenerate_cases() {
        let f = IntPoly::from_high(&[1, 0, 0, -2]);
        let a = AlgNum::all_roots(&f).unwrap().into_iter().find(|x| x.is_real()).unwrap();
        let k = a.field();
        // β = (2α + 1)/(α + 1)
        let num = RatPoly::new(vec![BigRational::one(), BigRational::from_integer(2.into())]);
        let den = RatPoly::new(vec![BigRational::one(), BigRational::one()]);
        let b = a.from_element(&k.mul(&num, &k.inv(&den).unwrap())).unwrap();
        let pair = find_pair(&a, &b, Minimality::Exact).unwrap();
        assert_eq!(pair.r, 1);
        assert_eq!(pair.p, IntPoly::from_high(&[-2, -1]));
        assert_eq!(pair.q, IntPoly::from_high(&[1, 1]));
        let same = find_pair(&a, &a, Minimality::Exact).unwrap();
        assert_eq!((same.p, same.q), (IntPoly::from_high(&[-1, 0]), IntPoly::constant(1)));
        let t = AlgNum::new(&IntPoly::from_high(&[1, 0, -3, -1]), 2).unwrap();
        let rep = power_rep(&t, &t.from_element(&RatPoly::new(vec![
            BigRational::from_integer((-2).into()),
            BigRational::zero(),
            BigRational::one(),
        ])).unwrap()).unwrap();
        let p3 = find_pair_rep(&t, &rep, Minimality::Exact).unwrap();
        assert_eq!(p3.r, 1);
        assert!(verify_pair_rep(&t, &rep, &p3.p, &p3.q).all_pass());
    }

    #[test]
    fn part3_and_wronskian() {
        let p = IntPoly::from_high(&[-1, 0, 2]);
        let q = IntPoly::constant(1);
        let g = IntPoly::from_high(&[1, 1]);
        let res = part3(&p, &q, &g.mul(&p), &g.mul(&q));
        assert_eq!(res.factor, Some(g.to_rat()));
        assert_eq!(wronskian(&p, &q), IntPoly::from_high(&[2, 0]));
        assert_eq!(wronskian(&IntPoly::x(), &IntPoly::constant(1)), IntPoly::constant(-1));
        assert!(wronskian(&p, &p).is_zero());
    }

    #[test]
    fn constants_for_example() {
        let (a, b) = cos15_pair();
        let rep = power_rep(&a, &b).unwrap();
        let pair = find_pair_rep(&a, &rep, Minimality::Exact).unwrap();
        let c = c12(&a, &rep, &pair).unwrap();
        assert!(c.closed_form >= BigRational::from_integer(c.tautological.clone()));
        assert_eq!(c.value, BigRational::from_integer(2.into()));
        let p1 = MinimalPair { p: IntPoly::from_high(&[-1, 0, 2]), q: IntPoly::constant(1), ..pair.clone() };
        let w = c13(&a, &p1, &c.value, 64).unwrap();
        let direct = w.direct.to_f64().unwrap();
        assert!(direct <= 2.0 * a.approx().0 && direct > 3.65);
        assert!(w.formula < w.direct);
        assert_eq!(w.value, w.direct);
    }
}
