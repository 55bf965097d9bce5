//! Positive reals carried as an enclosure of their natural logarithm.
//!
//! Many constants here have hundreds of thousands of decimal digits, so
//! products, powers and comparisons are done on `ln x` instead of `x`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::ball::Ball;
use super::dyadic::Round;

/// Working precision for logarithms.
pub const LOG_PREC: u32 = 160;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosReal {
    ln: Ball,
}

fn ln10(prec: u32) -> Ball {
    Ball::from_i64(10, prec).ln().expect("positive")
}

impl PosReal {
    pub fn from_ln(ln: Ball) -> PosReal {
        PosReal { ln }
    }

    /// `None` unless the ball is strictly positive.
    pub fn from_ball(b: &Ball) -> Option<PosReal> {
        Some(PosReal { ln: b.set_prec(b.prec().max(LOG_PREC)).ln()? })
    }

    pub fn from_rational(q: &BigRational) -> PosReal {
        assert!(q.is_positive(), "PosReal needs a positive value");
        let ln = &Ball::from_int(q.numer().clone(), LOG_PREC).ln().expect("positive")
            - &Ball::from_int(q.denom().clone(), LOG_PREC).ln().expect("positive");
        PosReal { ln }
    }

    pub fn from_int(n: impl Into<BigInt>) -> PosReal {
        PosReal::from_rational(&BigRational::from_integer(n.into()))
    }

    pub fn one() -> PosReal {
        PosReal { ln: Ball::zero(LOG_PREC) }
    }

    pub fn ln(&self) -> &Ball {
        &self.ln
    }

    pub fn mul(&self, o: &PosReal) -> PosReal {
        PosReal { ln: &self.ln + &o.ln }
    }

    pub fn div(&self, o: &PosReal) -> PosReal {
        PosReal { ln: &self.ln - &o.ln }
    }

    pub fn recip(&self) -> PosReal {
        PosReal { ln: -&self.ln }
    }

    pub fn pow(&self, e: &Ball) -> PosReal {
        PosReal { ln: &self.ln * e }
    }

    pub fn powr(&self, e: &BigRational) -> PosReal {
        self.pow(&Ball::from_rational(e, LOG_PREC))
    }

    /// Enclosure of `max(self, o)`.
    pub fn max(&self, o: &PosReal) -> PosReal {
        PosReal { ln: self.ln.max(&o.ln) }
    }

    /// Certified `self < o`, `None` when the enclosures overlap.
    pub fn lt(&self, o: &PosReal) -> Option<bool> {
        self.ln.lt(&o.ln)
    }

    /// Enclosure of the value itself, if it has at most `max_bits` binary digits.
    pub fn to_ball(&self, max_bits: u32) -> Option<Ball> {
        let lim = Ball::from_i64(max_bits as i64, LOG_PREC) * crate::exact::ball::ln2(LOG_PREC);
        if self.ln.abs().lt(&lim) != Some(true) {
            return None;
        }
        Some(self.ln.set_prec(LOG_PREC + max_bits).exp())
    }

    /// Rational upper bound, if the value is of moderate size.
    pub fn upper_rational(&self, max_bits: u32) -> Option<BigRational> {
        self.to_ball(max_bits).map(|b| b.upper_rational())
    }

    /// Rational lower bound, if the value is of moderate size.
    pub fn lower_rational(&self, max_bits: u32) -> Option<BigRational> {
        self.to_ball(max_bits).map(|b| b.lower_rational())
    }

    /// Upper bound of `log10` of the value.
    pub fn log10_upper(&self) -> f64 {
        self.ln.upper().to_f64() / std::f64::consts::LN_10
    }

    /// Scientific notation with `digits` significant digits, rounded up.
    pub fn sci_up(&self, digits: u32) -> String {
        self.sci(digits, Round::Up)
    }

    /// Scientific notation with `digits` significant digits, rounded down.
    pub fn sci_down(&self, digits: u32) -> String {
        self.sci(digits, Round::Down)
    }

    fn sci(&self, digits: u32, mode: Round) -> String {
        let prec = LOG_PREC;
        let end = if mode == Round::Up { self.ln.upper() } else { self.ln.lower() };
        let l10 = ln10(prec);
        let lg = Ball::exact(end, prec).div(&l10).expect("nonzero");
        // exponent from the certified endpoint of log10
        let lg_end = if mode == Round::Up { lg.upper() } else { lg.lower() };
        let mut e = lg_end.floor();
        let frac = &Ball::exact(lg_end.clone(), prec) - &Ball::from_int(e.clone(), prec);
        let mant = (&frac * &l10).exp();
        let scale = num_traits::pow(BigInt::from(10), digits as usize - 1);
        let scaled = &mant * &Ball::from_int(scale.clone(), prec);
        let mut m = if mode == Round::Up { scaled.upper().ceil() } else { scaled.lower().floor() };
        if m >= &scale * BigInt::from(10) {
            m /= 10;
            e += 1;
        }
        if m < scale && mode == Round::Down {
            m = m * BigInt::from(10) + BigInt::from(9);
            e -= 1;
        }
        let s = m.to_string();
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{e}")
        } else {
            format!("{head}.{tail}e{e}")
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.ln.to_f64().exp()
    }
}

impl fmt::Display for PosReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sci_up(6))
    }
}
