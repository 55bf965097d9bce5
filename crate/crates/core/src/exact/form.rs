//! Binary forms and the action of integer 2×2 matrices on them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{write_poly, IntPoly};
use crate::error::{Error, Result};

/// A binary form `F(x, y) = Σ c_i x^i y^(d-i)` of formal degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinForm {
    /// `c_0, ..., c_d`: coefficient of `x^i y^(d-i)` at index `i`.
    coeffs: Vec<BigInt>,
}

impl BinForm {
    /// From coefficients `c_0..c_d` (index = power of `x`).
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a form needs at least one coefficient"));
        }
        Ok(BinForm { coeffs })
    }

    /// From coefficients listed `c_d, ..., c_0` (leading `x^d` first).
    pub fn from_high(coeffs: &[i64]) -> Self {
        BinForm { coeffs: coeffs.iter().rev().map(|&c| BigInt::from(c)).collect() }
    }

    /// Homogenize `f` to degree `deg f`.
    pub fn from_poly(f: &IntPoly) -> Self {
        let d = f.degree();
        BinForm { coeffs: (0..=d).map(|i| f.coeff(i)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i y^(d-i)`.
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `F(x, 1)`.
    pub fn dehomogenize(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.dehomogenize().eval_homogeneous(x, y, self.degree())
    }

    pub fn scale(&self, k: &BigInt) -> BinForm {
        BinForm { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Discriminant, defined for degree at least 2 and invariant under `GL₂(ℤ)`.
    pub fn discriminant(&self) -> Result<BigInt> {
        let d = self.degree();
        if d < 2 {
            return Err(Error::invalid("discriminant needs degree at least 2"));
        }
        if self.is_zero() {
            return Ok(BigInt::zero());
        }
        if !self.coeffs[d].is_zero() {
            return self.dehomogenize().discriminant();
        }
        // move a non-root to infinity with a unimodular shear, which leaves D unchanged
        for k in 1i64.. {
            for kk in [k, -k] {
                let m = IntMat2::new(1, 0, kk, 1);
                let g = form_action(self, &m);
                if !g.coeffs[d].is_zero() {
                    return g.dehomogenize().discriminant();
                }
            }
        }
        unreachable!()
    }

    /// `F(y, x)`.
    pub fn swap_variables(&self) -> BinForm {
        let mut c = self.coeffs.clone();
        c.reverse();
        BinForm { coeffs: c }
    }

    /// Irreducible over `ℚ` as a binary form.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = self.degree();
        if d == 0 {
            return Ok(false);
        }
        if d == 1 {
            return Ok(!self.is_zero());
        }
        if self.coeffs[d].is_zero() {
            return Ok(false);
        }
        super::irreducible::is_irreducible(&self.dehomogenize())
    }
}

impl fmt::Display for BinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        write_poly(f, self.coeffs.iter().enumerate().rev().map(|(i, c)| (c.clone(), i, d - i)), 'x', 'y')
    }
}

/// The integer matrix `(s u; t v)`, acting by `F_M(x, y) = F(s x + u y, t x + v y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat2 {
    pub s: BigInt,
    pub u: BigInt,
    pub t: BigInt,
    pub v: BigInt,
}

impl IntMat2 {
    pub fn new(s: i64, u: i64, t: i64, v: i64) -> Self {
        IntMat2 { s: s.into(), u: u.into(), t: t.into(), v: v.into() }
    }

    pub fn from_big(s: BigInt, u: BigInt, t: BigInt, v: BigInt) -> Self {
        IntMat2 { s, u, t, v }
    }

    pub fn identity() -> Self {
        IntMat2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.s * &self.v - &self.t * &self.u
    }

    pub fn mul(&self, o: &IntMat2) -> IntMat2 {
        IntMat2 {
            s: &self.s * &o.s + &self.u * &o.t,
            u: &self.s * &o.u + &self.u * &o.v,
            t: &self.t * &o.s + &self.v * &o.t,
            v: &self.t * &o.u + &self.v * &o.v,
        }
    }

    pub fn neg(&self) -> IntMat2 {
        IntMat2 { s: -&self.s, u: -&self.u, t: -&self.t, v: -&self.v }
    }

    pub fn content(&self) -> BigInt {
        self.s.gcd(&self.u).gcd(&self.t).gcd(&self.v)
    }

    /// Divide by the (positive) content.
    pub fn primitive(&self) -> IntMat2 {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntMat2 { s: &self.s / &g, u: &self.u / &g, t: &self.t / &g, v: &self.v / &g }
    }

    pub fn is_scalar(&self) -> bool {
        self.u.is_zero() && self.t.is_zero() && self.s == self.v
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.s, &self.u, &self.t, &self.v]
    }

    /// Image of the column vector `(x, y)`: `(s x + u y, t x + v y)`.
    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.s * x + &self.u * y, &self.t * x + &self.v * y)
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.s, self.u, self.t, self.v)
    }
}

/// `F(s x + u y, t x + v y)`.
pub fn form_action(f: &BinForm, m: &IntMat2) -> BinForm {
    let d = f.degree();
    // homogeneous linear forms as coefficient vectors indexed by the power of x
    let xl = vec![m.u.clone(), m.s.clone()];
    let yl = vec![m.v.clone(), m.t.clone()];
    let xp = powers(&xl, d);
    let yp = powers(&yl, d);
    let mut out = vec![BigInt::zero(); d + 1];
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = mul_vec(&xp[i], &yp[d - i]);
        for (k, t) in term.iter().enumerate() {
            out[k] += c * t;
        }
    }
    BinForm { coeffs: out }
}

fn mul_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

fn powers(l: &[BigInt], d: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::one()]];
    for k in 1..=d {
        let next = mul_vec(&out[k - 1], l);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        assert_eq!(BinForm::from_high(&[1, 0, -3, -1]).discriminant().unwrap(), BigInt::from(81));
        assert_eq!(BinForm::from_high(&[1, 1, 1]).discriminant().unwrap(), BigInt::from(-3));
        // x y (x + y) has three distinct projective roots
        let f = BinForm::from_high(&[0, 1, 1, 0]);
        assert_eq!(f.discriminant().unwrap(), BigInt::from(1));
        assert!(BinForm::from_high(&[1, 2]).discriminant().is_err());
    }

    #[test]
    fn action_examples() {
        let f = BinForm::from_high(&[1, 0, 0, 1]);
        assert_eq!(form_action(&f, &IntMat2::new(0, 1, 1, 0)), f);
        let g = BinForm::from_high(&[1, 0, 0, -2]);
        assert_eq!(form_action(&g, &IntMat2::identity()), g);
        assert_eq!(form_action(&g, &IntMat2::new(-1, 0, 0, -1)), BinForm::from_high(&[-1, 0, 0, 2]));
    }

    #[test]
    fn display_form() {
        assert_eq!(BinForm::from_high(&[3, 0, -5, 1]).to_string(), "3*x^3 - 5*x*y^2 + y^3");
    }
}
