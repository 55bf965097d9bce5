//! Arithmetic in `ℚ[x]/(f)` for an irreducible `f`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{IntPoly, RatPoly};

/// The number field `ℚ[x]/(f)` with elements stored as reduced rational polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: IntPoly,
    modulus_q: RatPoly,
}

impl NumberField {
    pub fn new(f: &IntPoly) -> Self {
        NumberField { modulus: f.clone(), modulus_q: f.to_rat() }
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn reduce(&self, p: &RatPoly) -> RatPoly {
        p.rem(&self.modulus_q)
    }

    pub fn reduce_int(&self, p: &IntPoly) -> RatPoly {
        self.reduce(&p.to_rat())
    }

    pub fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        self.reduce(&a.mul(b))
    }

    pub fn pow(&self, a: &RatPoly, mut n: u64) -> RatPoly {
        let mut base = self.reduce(a);
        let mut acc = RatPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm over `ℚ`.
    pub fn inv(&self, a: &RatPoly) -> Result<RatPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(Error::invalid("inverse of zero in a number field"));
        }
        let (mut r0, mut r1) = (self.modulus_q.clone(), a);
        let (mut s0, mut s1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != 0 {
            return Err(Error::Reducible);
        }
        let k = r0.coeff(0).recip();
        Ok(self.reduce(&s0.scale(&k)))
    }

    /// Substitute `x = elem` into `p` and reduce.
    pub fn eval_poly(&self, p: &IntPoly, elem: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, elem).add(&RatPoly::new(vec![BigRational::from_integer(c.clone())]));
        }
        acc
    }

    /// Matrix of multiplication by `elem` in the power basis (column `j` is `elem * x^j`).
    pub fn mul_matrix(&self, elem: &RatPoly) -> Vec<Vec<BigRational>> {
        let d = self.degree();
        let mut m = vec![vec![BigRational::zero(); d]; d];
        let mut col = self.reduce(elem);
        let x = RatPoly::monomial(BigRational::one(), 1);
        for j in 0..d {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.coeff(i);
            }
            col = self.mul(&col, &x);
        }
        m
    }

    /// Characteristic polynomial of `elem`, scaled to a primitive integer polynomial
    /// with positive leading coefficient.
    pub fn charpoly(&self, elem: &RatPoly) -> IntPoly {
        let a = self.mul_matrix(elem);
        let d = a.len();
        // Faddeev–LeVerrier
        let mut c = vec![BigRational::zero(); d + 1];
        c[d] = BigRational::one();
        let mut m = vec![vec![BigRational::zero(); d]; d];
        for k in 1..=d {
            let mut next = matmul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c[d - k + 1];
            }
            m = next;
            let am = matmul(&a, &m);
            let tr: BigRational = (0..d).map(|i| am[i][i].clone()).sum();
            c[d - k] = -tr / BigRational::from_integer(BigInt::from(k));
        }
        RatPoly::new(c).clear_denominators().1.primitive()
    }

    /// Minimal polynomial of `elem` over `ℚ` (primitive, positive leading coefficient).
    pub fn minpoly(&self, elem: &RatPoly) -> IntPoly {
        self.charpoly(elem).squarefree_part().primitive()
    }
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn inverse_and_minpoly() {
        let k = NumberField::new(&IntPoly::from_high(&[1, 0, 0, -2]));
        let a = RatPoly::new(vec![q(1), q(1)]);
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), RatPoly::one());
        // (1 + α) has minimal polynomial (x - 1)^3 - 2
        assert_eq!(k.minpoly(&a), IntPoly::from_high(&[1, -3, 3, -3]));
        let k4 = NumberField::new(&IntPoly::from_high(&[1, -1, -4, 4, 1]));
        let beta = RatPoly::new(vec![q(-2), q(0), q(1)]);
        assert_eq!(k4.minpoly(&beta), IntPoly::from_high(&[1, -1, -4, 4, 1]));
        let two = RatPoly::new(vec![q(2)]);
        assert_eq!(k4.minpoly(&two), IntPoly::from_high(&[1, -2]));
    }
}
