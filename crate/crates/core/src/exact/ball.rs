//! Midpoint-radius enclosures of real and complex numbers.
//!
//! A [`Ball`] `[m ± r]` always contains the exact value it stands for. Every
//! operation rounds the midpoint to the working precision and folds the
//! rounding error into the radius, so results remain rigorous enclosures.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::dyadic::{Dyadic, Round};

const RAD_BITS: u32 = 30;

fn rad_up(x: Dyadic) -> Dyadic {
    x.round(RAD_BITS, Round::Up)
}

/// A real interval `[mid - rad, mid + rad]` with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

impl Ball {
    fn finish(exact_mid: Dyadic, rad: Dyadic, prec: u32) -> Ball {
        let mid = exact_mid.round(prec, Round::Nearest);
        let err = exact_mid.sub(&mid).abs();
        Ball { mid, rad: rad_up(rad.add(&err)), prec }
    }

    pub fn exact(x: Dyadic, prec: u32) -> Ball {
        Ball::finish(x, Dyadic::zero(), prec)
    }

    pub fn with_radius(mid: Dyadic, rad: Dyadic, prec: u32) -> Ball {
        assert!(!rad.is_negative());
        Ball::finish(mid, rad, prec)
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Ball {
        Ball::exact(Dyadic::from_int(n), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Ball {
        Ball::from_int(n, prec)
    }

    pub fn zero(prec: u32) -> Ball {
        Ball::exact(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Ball {
        Ball::exact(Dyadic::one(), prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Ball {
        let lo = Dyadic::from_rational(r, prec + 2, Round::Down);
        let hi = Dyadic::from_rational(r, prec + 2, Round::Up);
        Ball::from_bounds(&lo, &hi, prec)
    }

    /// Smallest ball (up to rounding) containing `[lo, hi]`.
    pub fn from_bounds(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Ball {
        assert!(lo <= hi, "empty interval");
        let mid = lo.add(hi).mul_pow2(-1);
        let rad = hi.sub(lo).mul_pow2(-1);
        Ball::finish(mid, rad, prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn set_prec(&self, prec: u32) -> Ball {
        Ball::finish(self.mid.clone(), self.rad.clone(), prec)
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad).round(self.prec + 8, Round::Down)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad).round(self.prec + 8, Round::Up)
    }

    pub fn lower_rational(&self) -> BigRational {
        self.lower().to_rational()
    }

    pub fn upper_rational(&self) -> BigRational {
        self.upper().to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.mid.sub(x).abs() <= self.rad
    }

    pub fn contains_rational(&self, x: &BigRational) -> bool {
        let lo = self.mid.sub(&self.rad).to_rational();
        let hi = self.mid.add(&self.rad).to_rational();
        &lo <= x && x <= &hi
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        self.mid.sub(&other.mid).abs() <= self.rad.add(&other.rad)
    }

    /// True if `other` lies entirely inside `self`.
    pub fn encloses(&self, other: &Ball) -> bool {
        self.mid.sub(&other.mid).abs().add(&other.rad) <= self.rad
    }

    pub fn is_positive(&self) -> bool {
        self.mid > self.rad
    }

    pub fn is_negative(&self) -> bool {
        self.mid.neg() > self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Width `2 * rad`.
    pub fn width(&self) -> Dyadic {
        self.rad.mul_pow2(1)
    }

    /// Certified `self < other`: `Some(true)`, `Some(false)` or `None` when undecided.
    pub fn lt(&self, other: &Ball) -> Option<bool> {
        if self.upper() < other.lower() {
            Some(true)
        } else if self.lower() >= other.upper() {
            Some(false)
        } else {
            None
        }
    }

    /// Certified sign: `Some(1)`, `Some(-1)`, or `None` if the ball contains zero.
    pub fn sign(&self) -> Option<i32> {
        if self.is_positive() {
            Some(1)
        } else if self.is_negative() {
            Some(-1)
        } else if self.is_exact() && self.mid.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn abs(&self) -> Ball {
        if self.contains_zero() {
            let hi = self.mid.abs().add(&self.rad);
            Ball::from_bounds(&Dyadic::zero(), &hi, self.prec)
        } else {
            Ball { mid: self.mid.abs(), rad: self.rad.clone(), prec: self.prec }
        }
    }

    pub fn max(&self, other: &Ball) -> Ball {
        let prec = self.prec.max(other.prec);
        let lo = Dyadic::max(&self.lower(), &other.lower());
        let hi = Dyadic::max(&self.upper(), &other.upper());
        Ball::from_bounds(&lo, &hi, prec)
    }

    pub fn min(&self, other: &Ball) -> Ball {
        let prec = self.prec.max(other.prec);
        let lo = Dyadic::min(&self.lower(), &other.lower());
        let hi = Dyadic::min(&self.upper(), &other.upper());
        Ball::from_bounds(&lo, &hi, prec)
    }

    /// Convex hull of two balls.
    pub fn union(&self, other: &Ball) -> Ball {
        let prec = self.prec.max(other.prec);
        let lo = Dyadic::min(&self.lower(), &other.lower());
        let hi = Dyadic::max(&self.upper(), &other.upper());
        Ball::from_bounds(&lo, &hi, prec)
    }

    pub fn mul_pow2(&self, k: i64) -> Ball {
        Ball { mid: self.mid.mul_pow2(k), rad: self.rad.mul_pow2(k), prec: self.prec }
    }

    pub fn sqr(&self) -> Ball {
        if self.contains_zero() {
            let a = self.abs();
            return &a * &a;
        }
        self * self
    }

    pub fn pow_u(&self, mut n: u64) -> Ball {
        let mut base = self.clone();
        let mut acc = Ball::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn recip(&self) -> Option<Ball> {
        Ball::one(self.prec).div(self)
    }

    /// Quotient; `None` if the divisor contains zero.
    pub fn div(&self, other: &Ball) -> Option<Ball> {
        if other.contains_zero() {
            return None;
        }
        let prec = self.prec.max(other.prec);
        let wp = prec + 8;
        let am2 = other.mid.abs();
        let q = self.mid.div(&other.mid, wp, Round::Nearest);
        let q_err = if q.is_zero() { Dyadic::zero() } else { Dyadic::pow2(q.msb() - wp as i64 + 1) };
        let num = self.rad.mul(&am2).add(&self.mid.abs().mul(&other.rad));
        let den = am2.mul(&am2.sub(&other.rad));
        let prop = if num.is_zero() { Dyadic::zero() } else { num.div(&den, RAD_BITS, Round::Up) };
        Some(Ball::finish(q, prop.add(&q_err), prec))
    }

    pub fn div_int(&self, n: i64) -> Ball {
        self.div(&Ball::from_i64(n, self.prec)).expect("division by nonzero integer")
    }

    /// Square root; negative parts of the ball are clamped to zero.
    /// Returns `None` if the ball is entirely negative.
    pub fn sqrt(&self) -> Option<Ball> {
        let hi = self.upper();
        if hi.is_negative() {
            return None;
        }
        let lo = Dyadic::max(&self.lower(), &Dyadic::zero());
        let wp = self.prec + 4;
        let slo = lo.sqrt(wp, Round::Down);
        let shi = hi.sqrt(wp, Round::Up);
        Some(Ball::from_bounds(&slo, &shi, self.prec))
    }

    /// Natural logarithm; `None` unless the ball is strictly positive.
    pub fn ln(&self) -> Option<Ball> {
        if !self.is_positive() {
            return None;
        }
        if self.is_exact() {
            return Some(ln_point(&self.mid, self.prec));
        }
        let lo = ln_point(&self.lower(), self.prec).lower();
        let hi = ln_point(&self.upper(), self.prec).upper();
        Some(Ball::from_bounds(&lo, &hi, self.prec))
    }

    pub fn exp(&self) -> Ball {
        if self.is_exact() {
            return exp_point(&self.mid, self.prec);
        }
        let lo = exp_point(&self.lower(), self.prec).lower();
        let hi = exp_point(&self.upper(), self.prec).upper();
        Ball::from_bounds(&lo, &hi, self.prec)
    }

    /// `self^e` for a strictly positive base.
    pub fn pow(&self, e: &Ball) -> Option<Ball> {
        if e.is_exact() && e.mid.is_zero() {
            return Some(Ball::one(self.prec));
        }
        Some((&self.ln()? * e).exp())
    }

    pub fn pow_rational(&self, e: &BigRational) -> Option<Ball> {
        if e.is_integer() && !e.is_negative() {
            if let Some(n) = num_traits::ToPrimitive::to_u64(e.numer()) {
                return Some(self.pow_u(n));
            }
        }
        self.pow(&Ball::from_rational(e, self.prec + 16))
    }

    /// Certified floor, if the ball does not straddle an integer.
    pub fn floor(&self) -> Option<BigInt> {
        let a = self.lower().floor();
        let b = self.upper().floor();
        if a == b { Some(a) } else { None }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }
}

/// `ln 2` to working precision.
pub fn ln2(prec: u32) -> Ball {
    let third = Ball::one(prec + 16).div_int(3);
    atanh_series(&third, prec + 16).mul_pow2(1).set_prec(prec)
}

fn atanh_series(z: &Ball, wp: u32) -> Ball {
    let z2 = z.sqr();
    let mut term = z.clone();
    let mut sum = z.clone();
    let eps = Dyadic::pow2(-(wp as i64) - 4);
    let mut k: i64 = 1;
    loop {
        term = &term * &z2;
        sum = &sum + &term.div_int(2 * k + 1);
        k += 1;
        if term.mid().abs().add(term.rad()) < eps {
            break;
        }
    }
    let tail = term.mid().abs().add(term.rad()).mul_pow2(1);
    Ball::with_radius(sum.mid.clone(), sum.rad.add(&tail), wp)
}

fn ln_point(x: &Dyadic, prec: u32) -> Ball {
    assert!(x.is_positive());
    let e0 = x.msb();
    let mut m = x.mul_pow2(-e0);
    let mut e = e0;
    if m > Dyadic::new(3.into(), -1) {
        m = m.mul_pow2(-1);
        e += 1;
    }
    let ebits = 64 - (e.unsigned_abs()).leading_zeros();
    let wp = prec + 24 + ebits;
    let mb = Ball::exact(m, wp);
    let one = Ball::one(wp);
    let z = (&mb - &one).div(&(&mb + &one)).expect("positive denominator");
    let s = atanh_series(&z, wp).mul_pow2(1);
    let res = if e == 0 { s } else { &s + &(&ln2(wp) * &Ball::from_i64(e, wp)) };
    res.set_prec(prec)
}

fn exp_point(y: &Dyadic, prec: u32) -> Ball {
    if y.is_zero() {
        return Ball::one(prec);
    }
    let j = (y.msb() + 10).max(0);
    let wp = prec + 32 + j as u32 + (64 - (y.msb().unsigned_abs()).leading_zeros());
    let t = Ball::exact(y.mul_pow2(-j), wp);
    let mut sum = Ball::one(wp);
    let mut term = Ball::one(wp);
    let eps = Dyadic::pow2(-(wp as i64) - 4);
    let mut n = 1;
    loop {
        term = (&term * &t).div_int(n);
        sum = &sum + &term;
        n += 1;
        if term.mid().abs().add(term.rad()) < eps {
            break;
        }
    }
    let tail = term.mid().abs().add(term.rad()).mul_pow2(1);
    let mut r = Ball::with_radius(sum.mid.clone(), sum.rad.add(&tail), wp);
    for _ in 0..j {
        r = r.sqr();
    }
    r.set_prec(prec)
}

impl<'a> Add<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn add(self, o: &Ball) -> Ball {
        let prec = self.prec.max(o.prec);
        // absorb a negligible summand into the radius instead of aligning huge exponents
        if !self.mid.is_zero() && !o.mid.is_zero() {
            let gap = prec as i64 + 8;
            if o.mid.msb() < self.mid.msb() - gap && o.rad <= o.mid.abs() {
                let extra = Dyadic::pow2(o.mid.msb() + 2);
                return Ball::finish(self.mid.clone(), self.rad.add(&o.rad).add(&extra), prec);
            }
            if self.mid.msb() < o.mid.msb() - gap && self.rad <= self.mid.abs() {
                let extra = Dyadic::pow2(self.mid.msb() + 2);
                return Ball::finish(o.mid.clone(), o.rad.add(&self.rad).add(&extra), prec);
            }
        }
        Ball::finish(self.mid.add(&o.mid), self.rad.add(&o.rad), prec)
    }
}

impl<'a> Sub<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn sub(self, o: &Ball) -> Ball {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Ball> for &'a Ball {
    type Output = Ball;
    fn mul(self, o: &Ball) -> Ball {
        let prec = self.prec.max(o.prec);
        let exact = self.mid.mul(&o.mid);
        let rad = self.mid.abs().mul(&o.rad).add(&o.mid.abs().mul(&self.rad)).add(&self.rad.mul(&o.rad));
        Ball::finish(exact, rad, prec)
    }
}

impl<'a> Neg for &'a Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball { mid: self.mid.neg(), rad: self.rad.clone(), prec: self.prec }
    }
}

impl Add for Ball {
    type Output = Ball;
    fn add(self, o: Ball) -> Ball {
        &self + &o
    }
}

impl Sub for Ball {
    type Output = Ball;
    fn sub(self, o: Ball) -> Ball {
        &self - &o
    }
}

impl Mul for Ball {
    type Output = Ball;
    fn mul(self, o: Ball) -> Ball {
        &self * &o
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -&self
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e} +/- {:.3e}]", self.mid.to_f64(), self.rad.to_f64())
    }
}

/// A rectangular complex enclosure `re + i*im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> CBall {
        CBall { re, im }
    }

    pub fn real(re: Ball) -> CBall {
        let prec = re.prec();
        CBall { re, im: Ball::zero(prec) }
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> CBall {
        CBall::real(Ball::from_int(n, prec))
    }

    pub fn zero(prec: u32) -> CBall {
        CBall::real(Ball::zero(prec))
    }

    pub fn one(prec: u32) -> CBall {
        CBall::real(Ball::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn set_prec(&self, prec: u32) -> CBall {
        CBall { re: self.re.set_prec(prec), im: self.im.set_prec(prec) }
    }

    pub fn conj(&self) -> CBall {
        CBall { re: self.re.clone(), im: -&self.im }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_exact() && self.im.mid().is_zero()
    }

    pub fn abs_sqr(&self) -> Ball {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn abs(&self) -> Ball {
        if self.is_real() {
            return self.re.abs();
        }
        self.abs_sqr().sqrt().expect("nonnegative")
    }

    pub fn recip(&self) -> Option<CBall> {
        if self.is_real() {
            return self.re.recip().map(CBall::real);
        }
        let n = self.abs_sqr();
        let re = self.re.div(&n)?;
        let im = (-&self.im).div(&n)?;
        Some(CBall { re, im })
    }

    pub fn div(&self, other: &CBall) -> Option<CBall> {
        Some(self * &other.recip()?)
    }

    pub fn sqr(&self) -> CBall {
        self * self
    }

    pub fn pow_u(&self, mut n: u64) -> CBall {
        let mut base = self.clone();
        let mut acc = CBall::one(self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn scale(&self, k: &Ball) -> CBall {
        CBall { re: &self.re * k, im: &self.im * k }
    }

    /// Upper bound of the distance between the midpoints plus both radii.
    pub fn overlaps(&self, other: &CBall) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl<'a> Add<&'a CBall> for &'a CBall {
    type Output = CBall;
    fn add(self, o: &CBall) -> CBall {
        CBall { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a CBall> for &'a CBall {
    type Output = CBall;
    fn sub(self, o: &CBall) -> CBall {
        CBall { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a CBall> for &'a CBall {
    type Output = CBall;
    fn mul(self, o: &CBall) -> CBall {
        if self.is_real() && o.is_real() {
            return CBall::real(&self.re * &o.re);
        }
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        CBall { re, im }
    }
}

impl<'a> Neg for &'a CBall {
    type Output = CBall;
    fn neg(self) -> CBall {
        CBall { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

/// The ball enclosing `num / den`.
pub fn ratio(num: i64, den: i64, prec: u32) -> Ball {
    Ball::from_rational(&BigRational::new(num.into(), den.into()), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_and_exp_of_known_values() {
        let p = 200;
        let l2 = ln2(p);
        assert!((l2.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(l2.rad() < &Dyadic::pow2(-190));
        let e = Ball::one(p).exp();
        assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
        let back = e.ln().unwrap();
        assert!(back.contains(&Dyadic::one()));
        let x = Ball::from_i64(1000, p);
        let y = x.ln().unwrap().exp();
        assert!(y.contains(&Dyadic::from_int(1000)));
    }

    #[test]
    fn huge_exponentials_stay_finite() {
        let x = Ball::from_i64(400_000, 128);
        let y = x.exp();
        let l = y.ln().unwrap();
        assert!(l.contains(&Dyadic::from_int(400_000)));
        assert!(l.rad() < &Dyadic::pow2(-60));
    }

    #[test]
    fn sqrt_and_division() {
        let two = Ball::from_i64(2, 128);
        let s = two.sqrt().unwrap();
        let sq = s.sqr();
        assert!(sq.contains(&Dyadic::from_int(2)));
        let third = Ball::one(128).div_int(3);
        assert!(third.contains_rational(&BigRational::new(1.into(), 3.into())));
        assert!(Ball::zero(64).recip().is_none());
    }

    #[test]
    fn complex_division_roundtrip() {
        let z = CBall::new(Ball::from_i64(3, 128), Ball::from_i64(-4, 128));
        let w = CBall::new(Ball::from_i64(1, 128), Ball::from_i64(2, 128));
        let q = z.div(&w).unwrap();
        let back = &q * &w;
        assert!(back.re.contains(&Dyadic::from_int(3)));
        assert!(back.im.contains(&Dyadic::from_int(-4)));
        assert!(z.abs().contains(&Dyadic::from_int(5)));
    }
}
