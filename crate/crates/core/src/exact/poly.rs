//! Univariate polynomials with integer and rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::{Ball, CBall};
use super::dyadic::Dyadic;
use super::linalg;
use crate::error::{Error, Result};

/// A polynomial in `ℤ[x]`, coefficients stored from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Build from small coefficients, constant term first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Build from coefficients listed from the leading term down.
    pub fn from_high(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![c.into()])
    }

    /// The monomial `c x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c.into();
        IntPoly::new(v)
    }

    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Naive height: the largest absolute value of a coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut acc = IntPoly::constant(1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    /// `f(g(x))`.
    pub fn compose(&self, g: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&IntPoly::constant(c.clone()));
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Homogenized value `Σ c_i p^i q^(n-i)` for a chosen formal degree `n >= deg`.
    pub fn eval_homogeneous(&self, p: &BigInt, q: &BigInt, n: usize) -> BigInt {
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        let mut pows = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            pows.push(qpow.clone());
            qpow *= q;
        }
        let mut ppow = BigInt::one();
        for i in 0..=n {
            let c = self.coeff(i);
            if !c.is_zero() {
                acc += c * &ppow * &pows[n - i];
            }
            ppow *= p;
        }
        acc
    }

    /// Exact sign of `f(x)` at a dyadic point.
    pub fn sign_at(&self, x: &Dyadic) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let n = self.degree();
        let e = x.exponent();
        let v = if e >= 0 {
            self.eval(&(x.mantissa() << e as u64))
        } else {
            let den = BigInt::one() << (-e) as u64;
            self.eval_homogeneous(x.mantissa(), &den, n)
        };
        match v.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn eval_ball(&self, x: &Ball) -> Ball {
        let prec = x.prec();
        let mut acc = Ball::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Ball::from_int(c.clone(), prec);
        }
        acc
    }

    pub fn eval_cball(&self, z: &CBall) -> CBall {
        let prec = z.prec();
        let mut acc = CBall::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &CBall::from_int(c.clone(), prec);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// `x^deg f(1/x)`.
    pub fn reciprocal(&self) -> IntPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::new(v)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Exact quotient in `ℤ[x]` when `d` divides `self`.
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.to_rat().divrem(&d.to_rat());
        if !r.is_zero() {
            return None;
        }
        q.to_int()
    }

    /// Pseudo-remainder `lc(d)^(deg f - deg d + 1) f mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let mut r = self.clone();
        let dd = d.degree();
        let lc = d.leading();
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let lr = r.leading();
            r = r.scale(&lc).sub(&d.mul(&IntPoly::monomial(lr, k)));
        }
        r
    }

    /// Greatest common divisor over `ℚ`, returned primitive with positive leading coefficient.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    /// Squarefree part, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").primitive()
    }

    /// The resultant `lc(Q)^deg(P) ∏_{Q(β)=0} P(β)`, i.e. the Sylvester determinant
    /// with the rows of `Q` placed first.
    pub fn resultant(&self, q: &IntPoly) -> Result<BigInt> {
        if self.is_zero() || q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(sylvester_det(q, self))
    }

    /// Textbook resultant `lc(P)^deg(Q) ∏_{P(α)=0} Q(α)`.
    pub fn resultant_standard(&self, q: &IntPoly) -> Result<BigInt> {
        if self.is_zero() || q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(sylvester_det(self, q))
    }

    /// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = self.degree();
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if n == 1 {
            return Ok(BigInt::one());
        }
        let r = sylvester_det(self, &self.derivative());
        let mut d = r / self.leading();
        if (n * (n - 1) / 2) % 2 == 1 {
            d = -d;
        }
        Ok(d)
    }
}

fn sylvester_det(p: &IntPoly, q: &IntPoly) -> BigInt {
    let m = p.degree();
    let n = q.degree();
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    if m == 0 {
        return p.leading().pow(n as u32);
    }
    if n == 0 {
        return q.leading().pow(m as u32);
    }
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            rows[i][i + j] = p.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            rows[n + i][i + j] = q.coeff(n - j);
        }
    }
    linalg::det_int(rows)
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().enumerate().rev().map(|(i, c)| (c.clone(), i, 0)), 'x', 'y')
    }
}

/// Shared pretty printer for univariate and bivariate integer polynomials.
/// Terms are `(coefficient, x-exponent, y-exponent)`.
pub(crate) fn write_poly(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (BigInt, usize, usize)>,
    xv: char,
    yv: char,
) -> fmt::Result {
    let mut first = true;
    for (c, i, j) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let mut parts = Vec::new();
        if !a.is_one() || (i == 0 && j == 0) {
            parts.push(a.to_string());
        }
        for (v, e) in [(xv, i), (yv, j)] {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        write!(f, "{}", parts.join("*"))?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// A polynomial in `ℚ[x]`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::new(vec![BigRational::one()])
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        RatPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, k: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RatPoly::new(v)
    }

    pub fn divrem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree();
        let lc = d.leading();
        let mut r = self.clone();
        if r.is_zero() || r.degree() < dd {
            return (RatPoly::zero(), r);
        }
        let mut q = vec![BigRational::zero(); r.degree() - dd + 1];
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let c = r.leading() / &lc;
            r = r.sub(&d.mul(&RatPoly::monomial(c.clone(), k)));
            q[k] = c;
        }
        (RatPoly::new(q), r)
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.divrem(d).1
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_cball(&self, z: &CBall) -> CBall {
        let prec = z.prec();
        let mut acc = CBall::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &CBall::real(Ball::from_rational(c, prec + 8));
        }
        acc
    }

    /// Lcm of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// `Some` if every coefficient is an integer.
    pub fn to_int(&self) -> Option<IntPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    /// Clear denominators: returns `(k, k * self)` with the positive integer `k` minimal.
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let k = self.denominator();
        let kq = BigRational::from_integer(k.clone());
        (k, (self.scale(&kq)).to_int().expect("denominators cleared"))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let coef = if a.is_one() && i > 0 { String::new() } else { format!("({a})") };
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let sep = if !coef.is_empty() && !mono.is_empty() { "*" } else { "" };
            write!(f, "{coef}{sep}{mono}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_high(c)
    }

    #[test]
    fn heights() {
        assert_eq!(p(&[1, -1, -4, 4, 1]).height(), BigInt::from(4));
        assert_eq!(p(&[7]).height(), BigInt::from(7));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(p(&[1, 0, -2]).resultant(&p(&[1, -1])).unwrap(), BigInt::from(-1));
        assert_eq!(p(&[1, 0, 0, -2]).resultant(&p(&[1, 0])).unwrap(), BigInt::from(-2));
        let f = p(&[1, 0, -3, -1]);
        assert!(f.resultant(&f).unwrap().is_zero());
        assert_eq!(f.resultant(&IntPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn discriminants() {
        assert_eq!(p(&[1, 0, -3, -1]).discriminant().unwrap(), BigInt::from(81));
        assert_eq!(p(&[1, 1, 1]).discriminant().unwrap(), BigInt::from(-3));
        assert_eq!(p(&[1, 0, 0, -2]).discriminant().unwrap(), BigInt::from(-108));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p(&[2, 0, 3, -1]).reciprocal(), p(&[-1, 3, 0, 2]));
        assert_eq!(p(&[1, 0]).reciprocal(), p(&[1]));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[1, 0, -1]);
        let b = p(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, -1]));
        assert!(!b.is_squarefree());
        assert!(a.is_squarefree());
        assert_eq!(b.squarefree_part(), p(&[1, -1]));
    }

    #[test]
    fn display_roundtrip_text() {
        assert_eq!(p(&[1, -1, -4, 4, 1]).to_string(), "x^4 - x^3 - 4*x^2 + 4*x + 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_sign_at_dyadic() {
        let f = p(&[1, 0, -2]);
        assert_eq!(f.sign_at(&Dyadic::new(3.into(), -1)), 1);
        assert_eq!(f.sign_at(&Dyadic::new(5.into(), -2)), -1);
    }
}
