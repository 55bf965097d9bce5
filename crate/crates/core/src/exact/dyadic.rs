//! Exact dyadic rationals `m * 2^e` with directed rounding.
//!
//! These are the endpoints of every certified enclosure in the crate. Exact
//! operations (`add`, `sub`, `mul`) never lose information; the rounding
//! operations take an explicit [`Round`] direction so that lower bounds are
//! always rounded down and upper bounds up.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    /// To nearest, ties away from zero.
    Nearest,
}

impl Round {
    fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
            Round::Nearest => Round::Nearest,
        }
    }
}

/// The number `man * 2^exp`, kept normalized (odd mantissa, or zero with `exp == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Dyadic { man, exp: 0 };
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { man, exp }
        } else {
            Dyadic { man: man >> tz, exp: exp + tz as i64 }
        }
    }

    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { man: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic { man: BigInt::one(), exp: k }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Self {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Position of the most significant bit: `2^msb <= |x| < 2^(msb+1)`.
    /// Returns `i64::MIN` for zero.
    pub fn msb(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.man.bits() as i64 - 1
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &other.man << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    /// Round to at most `prec` significant bits.
    pub fn round(&self, prec: u32, mode: Round) -> Self {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        Dyadic::new(shift_round(&self.man, shift, mode), self.exp + shift as i64)
    }

    /// Round to an integer multiple of `2^k`.
    pub fn round_to_exp(&self, k: i64, mode: Round) -> Self {
        if self.exp >= k || self.is_zero() {
            return self.clone();
        }
        let shift = (k - self.exp) as u64;
        Dyadic::new(shift_round(&self.man, shift, mode), k)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            shift_round(&self.man, (-self.exp) as u64, Round::Down)
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            shift_round(&self.man, (-self.exp) as u64, Round::Up)
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Exact quotient rounded to `prec` bits.
    pub fn div(&self, other: &Self, prec: u32, mode: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = prec as i64 + other.man.bits() as i64 - self.man.bits() as i64 + 2;
        let s = want.max(0) as u64;
        let num = &self.man << s;
        let q = div_round(&num, &other.man, mode);
        Dyadic::new(q, self.exp - other.exp - s as i64).round(prec, mode)
    }

    pub fn from_rational(r: &BigRational, prec: u32, mode: Round) -> Self {
        Dyadic::from_int(r.numer().clone()).div(&Dyadic::from_int(r.denom().clone()), prec, mode)
    }

    /// Square root of a nonnegative value rounded to `prec` bits.
    pub fn sqrt(&self, prec: u32, mode: Round) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut s = (2 * prec as i64 + 4 - self.man.bits() as i64).max(0);
        if (self.exp - s) % 2 != 0 {
            s += 1;
        }
        let n = self.man.magnitude() << s as u64;
        let mut r = n.sqrt();
        if mode == Round::Up && &r * &r != n {
            r += 1u32;
        }
        if mode == Round::Nearest {
            let r1 = &r + 1u32;
            // compare n with (r + 1/2)^2 = r^2 + r + 1/4
            if (&n << 2u32) >= ((&r * &r + &r) << 2u32) + 1u32 {
                r = r1;
            }
        }
        Dyadic::new(BigInt::from(r), (self.exp - s) / 2).round(prec, mode)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Nearest);
        let m = r.man.to_f64().unwrap_or(f64::NAN);
        let e = r.exp;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        let h = (e / 2) as i32;
        m * 2f64.powi(h) * 2f64.powi(e as i32 - h)
    }

    /// `log2 |x|` approximated as a float; useful for magnitude estimates only.
    pub fn log2_approx(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let r = self.round(53, Round::Nearest);
        r.man.abs().to_f64().unwrap().log2() + r.exp as f64
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
        Dyadic::new(BigInt::from(sign * m), e)
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a <= b { a.clone() } else { b.clone() }
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if a >= b { a.clone() } else { b.clone() }
    }
}

fn shift_round(man: &BigInt, shift: u64, mode: Round) -> BigInt {
    if shift == 0 {
        return man.clone();
    }
    let neg = man.is_negative();
    let mag: &BigUint = man.magnitude();
    let mode = if neg { mode.flip() } else { mode };
    let q = mag >> shift;
    let low_nonzero = mag.trailing_zeros().map_or(false, |t| t < shift);
    let q = match mode {
        Round::Down => q,
        Round::Up => {
            if low_nonzero {
                q + 1u32
            } else {
                q
            }
        }
        Round::Nearest => {
            let half_bit = mag.bit(shift - 1);
            if half_bit { q + 1u32 } else { q }
        }
    };
    let q = BigInt::from(q);
    if neg { -q } else { q }
}

fn div_round(a: &BigInt, b: &BigInt, mode: Round) -> BigInt {
    match mode {
        Round::Down => a.div_floor(b),
        Round::Up => -((-a).div_floor(b)),
        Round::Nearest => {
            let (a, b) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
            let (q, r) = a.div_mod_floor(&b);
            if (r << 1u32) >= b { q + 1 } else { q }
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ma, mb) = (self.msb(), other.msb());
        if ma != mb {
            return if sa > 0 { ma.cmp(&mb) } else { mb.cmp(&ma) };
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalization_and_order() {
        assert_eq!(d(4, 0), d(1, 2));
        assert!(d(3, -1) < d(2, 0));
        assert!(d(-3, 5) < d(-1, 0));
        assert_eq!(d(0, 7), Dyadic::zero());
    }

    #[test]
    fn directed_rounding() {
        let x = d(0b10111, 0);
        assert_eq!(x.round(3, Round::Down), d(0b101, 2));
        assert_eq!(x.round(3, Round::Up), d(0b110, 2));
        assert_eq!(x.neg().round(3, Round::Down), d(-0b110, 2));
        assert_eq!(x.neg().round(3, Round::Up), d(-0b101, 2));
    }

    #[test]
    fn division_brackets_quotient() {
        let one = Dyadic::one();
        let three = d(3, 0);
        let lo = one.div(&three, 64, Round::Down);
        let hi = one.div(&three, 64, Round::Up);
        let third = BigRational::new(1.into(), 3.into());
        assert!(lo.to_rational() < third && third < hi.to_rational());
    }

    #[test]
    fn sqrt_brackets_root() {
        let two = d(2, 0);
        let lo = two.sqrt(80, Round::Down);
        let hi = two.sqrt(80, Round::Up);
        assert!(lo.mul(&lo) < two && hi.mul(&hi) > two);
        assert_eq!(d(9, 4).sqrt(10, Round::Up), d(3, 2));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(d(-7, -1).floor(), BigInt::from(-4));
        assert_eq!(d(-7, -1).ceil(), BigInt::from(-3));
        assert_eq!(d(7, -1).floor(), BigInt::from(3));
    }

    #[test]
    fn f64_roundtrip() {
        for x in [1.5, -0.1, 3.0e10, 1.0e-300] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }
}
